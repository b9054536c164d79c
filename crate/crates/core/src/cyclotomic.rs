//! Cyclotomic polynomials and root-of-unity extraction.

use std::collections::BTreeMap;

use crate::intfactor::euler_phi;
use crate::unipoly::UniPoly;

/// The polynomials `Phi_1 .. Phi_n`, computed by dividing `x^k - 1` by the
/// lower cyclotomics.
pub fn cyclotomic_table(n: u64) -> Vec<UniPoly> {
    assert!(n >= 1);
    let mut table: Vec<UniPoly> = Vec::with_capacity(n as usize);
    for k in 1..=n {
        let mut cur = {
            // x^k - 1
            let mut c = UniPoly::monomial(num_traits::One::one(), k as usize);
            c = &c - &UniPoly::one();
            c
        };
        for d in 1..k {
            if k % d == 0 {
                cur = cur.div_exact(&table[(d - 1) as usize]);
            }
        }
        table.push(cur);
    }
    table
}

/// The `n`-th cyclotomic polynomial, monic of degree `phi(n)`.
pub fn cyclotomic_poly(n: u64) -> UniPoly {
    cyclotomic_table(n).pop().unwrap()
}

/// All conductors `n` with `phi(n) <= d`, in increasing order. Complete
/// because `phi(n) >= sqrt(n/2)` makes `n <= 2 d^2` a safe cutoff.
pub fn conductors_with_phi_le(d: u64) -> Vec<u64> {
    let bound = 2 * d * d;
    (1..=bound.max(2)).filter(|&n| euler_phi(n) <= d).collect()
}

/// Split off the cyclotomic part of a nonzero polynomial: returns the
/// multiplicity of every `Phi_n` dividing `p` together with the cofactor, so
/// that `prod Phi_n^mult * cofactor == p` exactly.
pub fn cyclotomic_part(p: &UniPoly) -> (BTreeMap<u64, u32>, UniPoly) {
    assert!(!p.is_zero(), "cyclotomic part of zero");
    let mut parts = BTreeMap::new();
    let mut cofactor = p.clone();
    let d = match p.degree() {
        None | Some(0) => return (parts, cofactor),
        Some(d) => d as u64,
    };
    for n in conductors_with_phi_le(d) {
        let phi = cyclotomic_poly(n);
        let mut mult = 0u32;
        loop {
            if cofactor.degree().unwrap_or(0) < phi.degree().unwrap() {
                break;
            }
            let (q, r) = cofactor.divrem(&phi);
            if !r.is_zero() {
                break;
            }
            cofactor = q;
            mult += 1;
        }
        if mult > 0 {
            parts.insert(n, mult);
        }
    }
    (parts, cofactor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1), UniPoly::from_i64s(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), UniPoly::from_i64s(&[1, 1]));
        assert_eq!(cyclotomic_poly(6), UniPoly::from_i64s(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), UniPoly::from_i64s(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_poly(5), UniPoly::from_i64s(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn degrees_are_phi() {
        for n in 1..=30u64 {
            assert_eq!(
                cyclotomic_poly(n).degree().unwrap() as u64,
                euler_phi(n),
                "n = {n}"
            );
        }
    }

    #[test]
    fn product_identity() {
        // prod over d | n of Phi_d = x^n - 1
        for n in [6u64, 12, 15] {
            let mut prod = UniPoly::one();
            for d in 1..=n {
                if n % d == 0 {
                    prod = &prod * &cyclotomic_poly(d);
                }
            }
            let expect = &UniPoly::monomial(rat_int(1), n as usize) - &UniPoly::one();
            assert_eq!(prod, expect);
        }
    }

    #[test]
    fn part_extraction() {
        // (x^2+x+1)(x-2) -> {3: 1}, cofactor x-2
        let f = &cyclotomic_poly(3) * &UniPoly::from_i64s(&[-2, 1]);
        let (parts, cof) = cyclotomic_part(&f);
        assert_eq!(parts, BTreeMap::from([(3, 1)]));
        assert_eq!(cof, UniPoly::from_i64s(&[-2, 1]));

        let (parts, cof) = cyclotomic_part(&cyclotomic_poly(12));
        assert_eq!(parts, BTreeMap::from([(12, 1)]));
        assert!(cof.is_one());

        let (parts, cof) = cyclotomic_part(&UniPoly::from_i64s(&[-2, 1]));
        assert!(parts.is_empty());
        assert_eq!(cof, UniPoly::from_i64s(&[-2, 1]));
    }

    #[test]
    fn part_reassembles() {
        let f = &(&cyclotomic_poly(4) * &cyclotomic_poly(4)) * &UniPoly::from_i64s(&[3, 0, 7]);
        let (parts, cof) = cyclotomic_part(&f);
        let mut back = cof;
        for (&n, &m) in &parts {
            back = &back * &cyclotomic_poly(n).pow(m as usize);
        }
        assert_eq!(back, f);
        assert_eq!(parts.get(&4), Some(&2));
    }
}
