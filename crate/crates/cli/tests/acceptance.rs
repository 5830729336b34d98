//! One PASS/FAIL line per acceptance criterion.
//!
//! Runs without the libtest harness so the lines reach the terminal; exits
//! nonzero if any criterion fails other than the documented deviations.

use std::time::Instant;

use modvis_cli::emit_tables;
use modvis_core::counting::{count_reports, count_visible_mobius, mean_delta_diagnostic, Census};
use modvis_core::enumeration::trace_for_exp_radius;
use modvis_core::geometry::trace_product;
use modvis_core::orchard::{
    axis_adjacent_family, axis_distance_sinh, blocking_check, default_far_points, fibonacci_pair,
    min_eclipse_epsilon, Radius,
};
use modvis_core::visibility::{
    classify, is_even_place, is_visible_oracle, ray_decompose, v_map, visible_euclidean, RayIndex,
};
use modvis_core::{
    chebyshev_trace, enumerate, is_visible, EnumerationConfig, OrbitPoint, Ray, UnimodularMatrix,
    Visibility,
};
use num_rational::Ratio;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Expected rows `(x, visible, invisible, error, approx)`.
const TABLE: [(f64, u64, u64, f64, f64); 10] = [
    (1000.0, 1436, 60, -16.56, 63.66),
    (2000.0, 2904, 92, -28.91, 87.52),
    (3000.0, 4408, 100, -9.84, 105.53),
    (4000.0, 5960, 124, 54.86, 120.58),
    (5000.0, 7336, 140, -57.93, 133.75),
    (6000.0, 8844, 148, -39.81, 145.60),
    (7000.0, 10372, 160, -2.50, 156.45),
    (8000.0, 11792, 176, -73.83, 166.51),
    (9000.0, 13280, 176, -77.69, 175.93),
    (10000.0, 14880, 184, 30.00, 184.82),
];
const FLOAT_TOL: f64 = 0.02;
const ORACLE_TRACE: i128 = 20_000;
const PARITY_TRACE: i128 = 10_000;

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
    /// Set when the criterion states something that cannot hold; the failure
    /// is reported but does not fail the run.
    deviation: Option<&'static str>,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
        deviation: None,
    }
}

fn p(b: i128, d: i128) -> OrbitPoint {
    OrbitPoint::new(b, d).unwrap()
}

fn table_counts() -> Outcome {
    let xs: Vec<f64> = TABLE.iter().map(|r| r.0).collect();
    let reports = count_reports(&xs).unwrap();
    let bad: Vec<String> = TABLE
        .iter()
        .zip(&reports)
        .filter(|(t, r)| (r.visible, r.invisible) != (t.1, t.2))
        .map(|(t, r)| {
            format!(
                "x={} got {}/{} want {}/{}",
                t.0, r.visible, r.invisible, t.1, t.2
            )
        })
        .collect();
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "10/10 rows exact".into()
        } else {
            bad.join("; ")
        },
    )
}

fn table_floats() -> Outcome {
    let xs: Vec<f64> = TABLE.iter().map(|r| r.0).collect();
    let text = emit_tables(&xs).unwrap();
    let mut worst: f64 = 0.0;
    for (line, t) in text.lines().skip(1).zip(&TABLE) {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        worst = worst.max((cols[3] - t.3).abs()).max((cols[4] - t.4).abs());
    }
    outcome(
        worst <= FLOAT_TOL + 1e-9,
        format!("max deviation {worst:.4} (tolerance {FLOAT_TOL})"),
    )
}

fn oracle_equivalence() -> Outcome {
    let pts = enumerate(&EnumerationConfig::new(ORACLE_TRACE).unwrap()).unwrap();
    let mut disagree = 0usize;
    let mut checked = 0usize;
    for z in pts.iter().filter(|z| !z.is_origin()) {
        checked += 1;
        if is_visible(z).unwrap() != is_visible_oracle(z, &pts).unwrap() {
            disagree += 1;
        }
    }
    outcome(
        disagree == 0,
        format!("{checked} points with trace <= {ORACLE_TRACE}, {disagree} disagreements"),
    )
}

fn worked_examples() -> Outcome {
    let z = p(8, 13);
    let hidden = classify(&z).unwrap();
    let witness = match hidden {
        Visibility::Hidden(w) => Some((w.a, w.b, w.d)),
        Visibility::Visible => None,
    };
    let invisible = witness.is_some();
    let stated = (1, 1, 5);
    let stated_ok = (stated.0 * stated.2) == stated.1 * stated.1 + 1;
    let witness_matches = witness == Some(stated);
    let others = is_visible(&p(23, 53)).unwrap()
        && is_visible(&p(2, 5)).unwrap()
        && v_map(&p(2, 5)).unwrap() == (2, 4)
        && !visible_euclidean((2, 4)).unwrap();
    Outcome {
        pass: invisible && witness_matches && others,
        detail: format!(
            "(8+i)/13 invisible={invisible}, witness={witness:?} vs stated {stated:?} \
             (stated satisfies ad=b^2+1: {stated_ok}); (23+i)/53 and (2+i)/5 checks: {others}"
        ),
        deviation: (invisible && others && !stated_ok).then_some(
            "(a,b,d)=(1,1,5) has ad=5 != b^2+1=2, so no such point exists; the blocking point is (a,b,d)=(1,1,2), i.e. (1+i)/2",
        ),
    }
}

fn mobius_identity() -> Outcome {
    let census = Census::new(ORACLE_TRACE).unwrap();
    let ns: Vec<i128> = (0..50).map(|k| 3 + k * (ORACLE_TRACE - 3) / 49).collect();
    let bad: Vec<i128> = ns
        .iter()
        .copied()
        .filter(|&n| count_visible_mobius(n).unwrap() != census.visible_up_to(n).unwrap())
        .collect();
    outcome(
        bad.is_empty(),
        format!(
            "{} values of N in [{}, {}], mismatches {bad:?}",
            ns.len(),
            ns[0],
            ns[49]
        ),
    )
}

fn mat_pow_trace(s: [i128; 4], k: u32) -> i128 {
    let mul = |x: [i128; 4], y: [i128; 4]| {
        [
            x[0] * y[0] + x[1] * y[2],
            x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3],
        ]
    };
    let mut acc = [1, 0, 0, 1];
    for _ in 0..k {
        acc = mul(acc, s);
    }
    acc[0] + acc[3]
}

fn random_matrix(rng: &mut StdRng) -> UnimodularMatrix {
    let s = UnimodularMatrix::new(0, -1, 1, 0).unwrap();
    let mut g = UnimodularMatrix::IDENTITY;
    for _ in 0..rng.gen_range(1..=3) {
        let t = UnimodularMatrix::new(1, rng.gen_range(-3..=3), 0, 1).unwrap();
        g = g.checked_mul(&t).unwrap().checked_mul(&s).unwrap();
    }
    g
}

fn ray_structure() -> Outcome {
    // S^10 must stay within i128 and C_10(trace) within the matrix guard.
    const MAX_VISIBLE_TRACE: i128 = 73;
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut rays = 0;
    let mut failures = Vec::new();
    while rays < 100 {
        let z = random_matrix(&mut rng).apply_to_i();
        if z.is_origin() {
            continue;
        }
        let visible = ray_decompose(&z).unwrap().ray.visible_point();
        if visible.trace() > MAX_VISIBLE_TRACE {
            continue;
        }
        rays += 1;
        let ray = Ray::through(&visible).unwrap();
        let s = ray.translation();
        let s = [s.a(), s.b(), s.b(), s.d()];
        for k in 1..=10u32 {
            if mat_pow_trace(s, k) != chebyshev_trace(visible.trace(), k).unwrap() {
                failures.push(format!("Tr(S^{k}) on ray of {visible}"));
            }
            let point = ray.point(k).unwrap();
            let pos = ray_decompose(&point).unwrap();
            if pos.index != k || pos.ray.visible_point() != visible {
                failures.push(format!("index {k} on ray of {visible}"));
            }
        }
    }
    let pts = enumerate(
        &EnumerationConfig::new(PARITY_TRACE)
            .unwrap()
            .include_origin(false),
    )
    .unwrap();
    let index = RayIndex::new(&pts);
    let mut parity_bad = 0;
    for z in &pts {
        let (oracle_index, _) = index.position(z).unwrap();
        let pos = ray_decompose(z).unwrap();
        if pos.index != oracle_index || is_even_place(z).unwrap() != pos.index.is_multiple_of(2) {
            parity_bad += 1;
        }
    }
    outcome(
        failures.is_empty() && parity_bad == 0,
        format!(
            "{rays} random rays x k<=10: {} failures; parity on {} points with trace <= {PARITY_TRACE}: {parity_bad} mismatches",
            failures.len(),
            pts.len()
        ),
    )
}

fn orchard_bounds() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for x in [50.0, 200.0, 1000.0] {
        let n = trace_for_exp_radius(x).unwrap();
        let best = min_eclipse_epsilon(n).unwrap();
        let scaled = best.sinh2 * Ratio::from_integer(n * n - 4);
        let ok = scaled >= Ratio::from_integer(4);
        pass &= ok;
        parts.push(format!("N={n}: sinh^2*(N^2-4)={scaled}"));
    }
    for n in 1..=5 {
        let pair = fibonacci_pair(n).unwrap();
        let ok = pair.trace_product() == -2
            && is_visible(&pair.z()).unwrap()
            && is_visible(&pair.w()).unwrap()
            && pair.sinh2_product() == Ratio::from_integer(1);
        pass &= ok;
        if !ok {
            parts.push(format!("Fibonacci n={n} failed"));
        }
    }
    parts.push("Fibonacci n=1..5 checked".into());
    outcome(pass, parts.join("; "))
}

fn blocking() -> Outcome {
    let far = default_far_points(3).unwrap();
    let at_threshold = blocking_check(Radius::BLOCKING, 3, &far).unwrap();
    let below = blocking_check(Radius::Float(0.88), 3, &far).unwrap();
    let axis = axis_adjacent_family(1_000_000);
    let witness_on_axis = below.witness.is_some_and(|w| axis.contains(&w));
    let pts = enumerate(
        &EnumerationConfig::new(PARITY_TRACE)
            .unwrap()
            .include_origin(false),
    )
    .unwrap();
    let axis_ok = pts.iter().all(|z| {
        let s = axis_distance_sinh(z).unwrap();
        s >= 1 && s == z.b().abs()
    });
    outcome(
        at_threshold.is_blocked() && witness_on_axis && axis_ok,
        format!(
            "eps=log(1+sqrt2) blocked {} far points: {}; eps=0.88 witness {:?}; |ac+bd|>=1 on {} points: {axis_ok}",
            at_threshold.checked,
            at_threshold.is_blocked(),
            below.witness.map(|w| w.to_string()),
            pts.len()
        ),
    )
}

fn parity() -> Outcome {
    let pts = enumerate(&EnumerationConfig::new(200).unwrap()).unwrap();
    let mut odd = 0;
    for z in &pts {
        for w in &pts {
            if trace_product(z, w).unwrap() % 2 != 0 {
                odd += 1;
            }
        }
    }
    outcome(
        odd == 0,
        format!("{} pairs, {odd} odd", pts.len() * pts.len()),
    )
}

fn mean_delta() -> Outcome {
    let values: Vec<f64> = [100.0, 1000.0, 10000.0]
        .iter()
        .map(|&x| mean_delta_diagnostic(x).unwrap())
        .collect();
    let repeat = mean_delta_diagnostic(10000.0).unwrap();
    let ok = values.iter().all(|v| v.is_finite()) && repeat.to_bits() == values[2].to_bits();
    outcome(
        ok,
        format!("smoke only (asymptotic claims not checked): {values:?}"),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "table counts", table_counts),
        (2, "error and approx columns", table_floats),
        (3, "criterion vs oracle", oracle_equivalence),
        (4, "worked examples", worked_examples),
        (5, "Mobius identity", mobius_identity),
        (6, "ray structure", ray_structure),
        (7, "orchard bounds", orchard_bounds),
        (8, "blocking threshold", blocking),
        (9, "trace product parity", parity),
        (10, "mean Delta* diagnostic", mean_delta),
    ];
    let mut unexpected = 0;
    for (k, name, check) in criteria {
        let start = Instant::now();
        let o = check();
        let secs = start.elapsed().as_secs_f64();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {k:>2} {status} {name} [{secs:.2}s]: {}",
            o.detail
        );
        match (o.pass, o.deviation) {
            (false, Some(note)) => println!("             documented deviation: {note}"),
            (false, None) => unexpected += 1,
            _ => {}
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}
