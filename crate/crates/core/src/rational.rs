//! Exact rational scalars used by the interval state spaces.
//!
//! Everything downstream of a piecewise-linear map is decided by comparing
//! `Q` values; no floating point enters those code paths.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar.
pub type Q = BigRational;

/// Shorthand constructor from an integer pair, reduced on the spot.
pub fn q(num: i64, den: i64) -> Q {
    assert!(den != 0, "rational with zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn qi(num: i64) -> Q {
    BigRational::from(BigInt::from(num))
}

pub fn q_zero() -> Q {
    Q::zero()
}

pub fn q_one() -> Q {
    Q::one()
}

pub fn q_abs(x: &Q) -> Q {
    x.abs()
}

/// `1/(1 + 2^-n)`, the order-preserving embedding of line-space indices
/// into (0, 1). Exact for every integer `n`.
pub fn line_embedding(n: i64) -> Q {
    if n >= 0 {
        let p = BigInt::from(1) << (n as usize);
        BigRational::new(p.clone(), p + 1)
    } else {
        let p = BigInt::from(1) << ((-n) as usize);
        BigRational::new(BigInt::from(1), p + 1)
    }
}

/// Render as `num/den` (or just `num` when integral), for reports.
pub fn q_display(x: &Q) -> String {
    if x.denom() == &BigInt::from(1) {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `num/den` or `num`.
pub fn q_parse(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_is_increasing_with_correct_tails() {
        let mut prev = line_embedding(-20);
        for n in -19..=20 {
            let cur = line_embedding(n);
            assert!(cur > prev, "embedding must increase at {}", n);
            prev = cur;
        }
        assert!(line_embedding(-20) < q(1, 1000));
        assert!(line_embedding(20) > q(999, 1000));
        assert_eq!(line_embedding(0), q(1, 2));
    }

    #[test]
    fn display_and_parse_round_trip() {
        for x in [q(3, 4), qi(7), q(-5, 8), q_zero()] {
            assert_eq!(q_parse(&q_display(&x)).unwrap(), x);
        }
        assert!(q_parse("1/0").is_none());
    }
}
