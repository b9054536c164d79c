//! Small integer factorization utilities: Euler phi, primality, and
//! squarefree decomposition of rationals (used to canonicalize radicands).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rat::Rat;

/// Trial-division factorization of a nonzero integer into (prime, exponent)
/// pairs. Intended for desk-scale constants.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0);
    let mut out = Vec::new();
    let mut p = 2u64;
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

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factor_u64(n) == vec![(n, 1)]
}

/// Euler totient.
pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .into_iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .fold(1, |a, b| a * b)
}

/// Factor a positive BigInt by trial division.
pub fn factor_bigint(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(n.is_positive());
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            let mut e = 0;
            while (&n % &p).is_zero() {
                n /= &p;
                e += 1;
            }
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// Write a nonzero rational as `s * t^2` with `s` a squarefree integer
/// carrying the sign. Returns `(s, t)`.
pub fn squarefree_rational_part(x: &Rat) -> (BigInt, Rat) {
    assert!(!x.is_zero());
    // x = sign * num/den = sign * num*den / den^2
    let sign = if x.is_negative() {
        BigInt::from(-1)
    } else {
        BigInt::one()
    };
    let core = x.numer().abs() * x.denom();
    let mut s = BigInt::one();
    let mut t_num = BigInt::one();
    for (p, e) in factor_bigint(&core) {
        if e % 2 == 1 {
            s *= &p;
        }
        t_num *= p.pow(e / 2);
    }
    (sign * s, Rat::new(t_num, x.denom().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn phi_values() {
        let vals = [(1, 1), (2, 1), (6, 2), (12, 4), (36, 12), (97, 96)];
        for (n, f) in vals {
            assert_eq!(euler_phi(n), f, "phi({n})");
        }
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(97));
        assert!(!is_prime(1) && !is_prime(91));
    }

    #[test]
    fn squarefree_part() {
        // 8/9 = 2 * (2/3)^2
        let (s, t) = squarefree_rational_part(&rat(8, 9));
        assert_eq!(s, BigInt::from(2));
        assert_eq!(t, rat(2, 3));
        let (s, t) = squarefree_rational_part(&rat(-4, 1));
        assert_eq!(s, BigInt::from(-1));
        assert_eq!(t, rat(2, 1));
        // check reconstruction x = s * t^2
        for x in [rat(50, 27), rat(-75, 8), rat(1, 1)] {
            let (s, t) = squarefree_rational_part(&x);
            assert_eq!(Rat::from_integer(s) * &t * &t, x);
        }
    }
}
