//! Exact rational scalars and parsing helpers.
//!
//! All arithmetic in this crate happens over `Rat` (arbitrary-precision
//! rationals, always stored reduced with a positive denominator). Floating
//! point never enters a decision path.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// Arbitrary-precision rational number, reduced, denominator positive.
pub type Rat = BigRational;

/// `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a reduced rational. Panics on `d = 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer power with negative exponents allowed. Panics on `0^k` for `k < 0`.
pub fn rat_pow(base: &Rat, exp: i64) -> Rat {
    if exp == 0 {
        return Rat::one();
    }
    let mut acc = Rat::one();
    let positive = base.clone();
    let b = if exp < 0 {
        assert!(!base.is_zero(), "zero to a negative power");
        positive.recip()
    } else {
        positive
    };
    let mut e = exp.unsigned_abs();
    let mut sq = b;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

/// Parse a rational from `"a"` or `"a/b"` text. Decimal literals are
/// rejected so inputs stay exact.
pub fn parse_rat(src: &str) -> Result<Rat, Error> {
    let s = src.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    if s.contains('.') {
        return Err(Error::Parse(format!(
            "decimal literals not accepted; use a/b (got {s:?})"
        )));
    }
    let parse_int = |t: &str| -> Result<BigInt, Error> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("malformed integer {t:?}")))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(parse_int(n)?, den))
        }
    }
}

/// Canonical text form: integers bare, otherwise `a/b`.
pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Order of a rational as a root of unity: 1, 2 or none.
pub fn rational_unity_order(x: &Rat) -> Option<u64> {
    if x.is_one() {
        Some(1)
    } else if (-x.clone()).is_one() {
        Some(2)
    } else {
        None
    }
}

/// True if `x` is the square of a rational; returns the positive root.
pub fn rational_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some(Rat::zero());
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}
