//! Text forms of orbit points: `(B+i)/D`, `B/D` and `i`.

use crate::error::{Error, Result};
use crate::geometry::OrbitPoint;

fn bad(input: &str, reason: &'static str) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason,
    }
}

fn int(input: &str, s: &str) -> Result<i128> {
    s.trim()
        .parse()
        .map_err(|_| bad(input, "expected an integer"))
}

/// Parses `(B+i)/D`, the shorthand `B/D`, or
/// `i` for the base point. Whitespace is ignored.
pub fn parse_point(input: &str) -> Result<OrbitPoint> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s == "i" {
        return Ok(OrbitPoint::ORIGIN);
    }
    let (num, den) = s
        .rsplit_once('/')
        .ok_or_else(|| bad(input, "missing '/'"))?;
    let d = int(input, den)?;
    let b = match num.strip_prefix('(').and_then(|n| n.strip_suffix(')')) {
        Some(inner) => {
            let b = inner
                .strip_suffix("+i")
                .ok_or_else(|| bad(input, "expected (B+i)/D"))?;
            if b.is_empty() {
                0
            } else {
                int(input, b)?
            }
        }
        None => int(input, num)?,
    };
    OrbitPoint::new(b, d)
}
