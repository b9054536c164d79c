//! Coprime bases: refine a family of polynomials into a shared set of
//! pairwise-coprime monic factors and exact exponent vectors. This is the
//! backbone of the multiplicative-dependence kernels (no irreducible
//! factorization needed anywhere).

use crate::rat::Rat;
use crate::unipoly::UniPoly;

/// A family of inputs expressed over one shared pairwise-coprime base:
/// `input_i = units[i] * prod_k base[k]^exponents[i][k]`, exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub base: Vec<UniPoly>,
    pub exponents: Vec<Vec<u32>>,
    pub units: Vec<Rat>,
}

/// Insert a monic nonconstant polynomial into a pairwise-coprime base,
/// splitting existing elements as needed.
fn coprime_insert(base: &mut Vec<UniPoly>, mut q: UniPoly) {
    'outer: loop {
        if q.is_constant() {
            return;
        }
        for i in 0..base.len() {
            let g = q.gcd(&base[i]);
            if g.is_constant() {
                continue;
            }
            if g == base[i] {
                q = q.div_exact(&g);
                continue 'outer;
            }
            // proper split of base[i] into g and base[i]/g
            let b = base.remove(i);
            let rest = b.div_exact(&g);
            coprime_insert(base, g);
            coprime_insert(base, rest);
            continue 'outer;
        }
        base.push(q);
        return;
    }
}

/// Build the coprime basis of the inputs and factor each one over it.
/// All inputs must be nonzero.
pub fn coprime_basis(inputs: &[UniPoly]) -> Factorization {
    assert!(inputs.iter().all(|p| !p.is_zero()), "zero input");
    let mut base: Vec<UniPoly> = Vec::new();
    for p in inputs {
        let (monic, _) = p.monic();
        if !monic.is_constant() {
            coprime_insert(&mut base, monic);
        }
    }
    base.sort();
    let mut exponents = Vec::with_capacity(inputs.len());
    let mut units = Vec::with_capacity(inputs.len());
    for p in inputs {
        let (mut rem, unit) = p.monic();
        let mut exps = vec![0u32; base.len()];
        for (k, b) in base.iter().enumerate() {
            loop {
                if rem.degree().unwrap_or(0) < b.degree().unwrap() {
                    break;
                }
                let (q, r) = rem.divrem(b);
                if !r.is_zero() {
                    break;
                }
                rem = q;
                exps[k] += 1;
            }
        }
        assert!(rem.is_one(), "input did not factor over its own basis");
        exponents.push(exps);
        units.push(unit);
    }
    Factorization {
        base,
        exponents,
        units,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(c)
    }

    #[test]
    fn splits_shared_factors() {
        // {x^2-1, x^2-x} -> base {x-1, x, x+1} (sorted), exps (1,0,1) and (1,1,0)
        let f = coprime_basis(&[p(&[-1, 0, 1]), p(&[0, -1, 1])]);
        assert_eq!(f.base.len(), 3);
        for (i, a) in f.base.iter().enumerate() {
            for b in f.base.iter().skip(i + 1) {
                assert!(a.gcd(b).is_constant(), "base not coprime");
            }
        }
        reassemble_check(&f, &[p(&[-1, 0, 1]), p(&[0, -1, 1])]);
    }

    #[test]
    fn powers() {
        let f = coprime_basis(&[p(&[0, 0, 1]), p(&[0, 0, 0, 1])]);
        assert_eq!(f.base, vec![UniPoly::x()]);
        assert_eq!(f.exponents, vec![vec![2], vec![3]]);
    }

    #[test]
    fn identical_inputs_share_vectors() {
        // x^2(x^2-1) twice -> identical exponent vectors
        let q = &p(&[0, 0, 1]) * &p(&[-1, 0, 1]);
        let f = coprime_basis(&[q.clone(), q]);
        assert_eq!(f.exponents[0], f.exponents[1]);
    }

    #[test]
    fn units_track_leading_coefficients() {
        let f = coprime_basis(&[p(&[0, 3]), p(&[0, 0, -2])]);
        assert_eq!(f.units, vec![rat_int(3), rat_int(-2)]);
        reassemble_check(&f, &[p(&[0, 3]), p(&[0, 0, -2])]);
    }

    fn reassemble_check(f: &Factorization, inputs: &[UniPoly]) {
        for (i, input) in inputs.iter().enumerate() {
            let mut acc = UniPoly::constant(f.units[i].clone());
            for (k, b) in f.base.iter().enumerate() {
                acc = &acc * &b.pow(f.exponents[i][k] as usize);
            }
            assert_eq!(&acc, input);
        }
    }
}
