//! Small exact-integer helpers shared by the geometry and sieve code.

use num_integer::Integer;

use crate::error::{Error, Result};

pub(crate) fn mul(x: i128, y: i128, what: &'static str) -> Result<i128> {
    x.checked_mul(y).ok_or(Error::Overflow(what))
}

pub(crate) fn add(x: i128, y: i128, what: &'static str) -> Result<i128> {
    x.checked_add(y).ok_or(Error::Overflow(what))
}

pub(crate) fn sub(x: i128, y: i128, what: &'static str) -> Result<i128> {
    x.checked_sub(y).ok_or(Error::Overflow(what))
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: i128) -> i128 {
    assert!(n >= 0, "isqrt of negative number");
    if n < 2 {
        return n;
    }
    let n = n as u128;
    let mut x = (n as f64).sqrt() as u128;
    // f64 is only accurate to ~2^53; correct in both directions.
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x as i128
}

/// Exact square root, if `n` is a perfect square.
pub fn exact_sqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

pub fn gcd(x: i128, y: i128) -> i128 {
    x.gcd(&y)
}

/// Prime factorization by trial division, as (prime, exponent) pairs in
/// ascending order. `n` must be positive.
pub fn factorize(mut n: i128) -> Vec<(i128, u32)> {
    assert!(n > 0);
    let mut out = Vec::new();
    let mut p = 2i128;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `n > 0`, ascending.
pub fn divisors(n: i128) -> Vec<i128> {
    let mut divs = vec![1i128];
    for (p, e) in factorize(n) {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// `C_k(t) = 2 T_k(t / 2)` with `T_k` the Chebyshev polynomial of the first
/// kind; integer-valued for integer `t`. If `t = 2 cosh l` then
/// `C_k(t) = 2 cosh(k l)`.
pub fn chebyshev_trace(t: i128, k: u32) -> Result<i128> {
    let (mut prev, mut cur) = (2i128, t);
    if k == 0 {
        return Ok(prev);
    }
    for _ in 1..k {
        let next = sub(
            mul(t, cur, "Chebyshev recurrence")?,
            prev,
            "Chebyshev recurrence",
        )?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Möbius function values `mu[0..=n]` by a linear sieve (`mu[0] = 0`).
pub fn mobius_sieve(n: usize) -> Vec<i8> {
    let mut mu = vec![0i8; n + 1];
    if n == 0 {
        return mu;
    }
    mu[1] = 1;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    mu
}
