//! Polynomials with coefficients in Q[t]/(m(t)).
//!
//! Division needs invertible leading coefficients. Over a reducible modulus
//! an inversion may witness a zero divisor instead; the dynamic gcd then
//! splits the modulus and continues separately on each factor, so every
//! answer is exact on an explicitly named part of the original ring.

use crate::qring::{InvertFailure, QRing, RingElem};
use crate::unipoly::UniPoly;

/// Polynomial over a quotient ring; coefficient `k` is the coefficient of
/// `y^k`, stored reduced.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingPoly {
    ring: QRing,
    coeffs: Vec<RingElem>,
}

impl RingPoly {
    pub fn new(ring: QRing, mut coeffs: Vec<RingElem>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RingPoly { ring, coeffs }
    }

    pub fn zero(ring: QRing) -> Self {
        RingPoly {
            ring,
            coeffs: Vec::new(),
        }
    }

    /// Lift a rational-coefficient polynomial into the ring.
    pub fn lift(ring: &QRing, p: &UniPoly) -> Self {
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| ring.from_rat(c.clone()))
            .collect();
        RingPoly::new(ring.clone(), coeffs)
    }

    /// Substitute the ring generator's polynomial expressions: given
    /// coefficients as univariate values, build the poly. Convenience for
    /// callers assembling by hand.
    pub fn from_values(ring: &QRing, values: Vec<UniPoly>) -> Self {
        let coeffs = values.into_iter().map(|v| ring.elem(v)).collect();
        RingPoly::new(ring.clone(), coeffs)
    }

    pub fn ring(&self) -> &QRing {
        &self.ring
    }

    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> &RingElem {
        self.coeffs.last().expect("leading coefficient of zero")
    }

    pub fn coeff(&self, k: usize) -> RingElem {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn eval(&self, at: &RingElem) -> RingElem {
        let mut acc = self.ring.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at).add(c);
        }
        acc
    }

    pub fn add(&self, other: &RingPoly) -> RingPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.coeff(i).add(&other.coeff(i)))
            .collect();
        RingPoly::new(self.ring.clone(), coeffs)
    }

    pub fn sub(&self, other: &RingPoly) -> RingPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.coeff(i).sub(&other.coeff(i)))
            .collect();
        RingPoly::new(self.ring.clone(), coeffs)
    }

    pub fn mul(&self, other: &RingPoly) -> RingPoly {
        if self.is_zero() || other.is_zero() {
            return RingPoly::zero(self.ring.clone());
        }
        let mut coeffs = vec![self.ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        RingPoly::new(self.ring.clone(), coeffs)
    }

    pub fn scale(&self, c: &RingElem) -> RingPoly {
        RingPoly::new(
            self.ring.clone(),
            self.coeffs.iter().map(|a| a.mul(c)).collect(),
        )
    }

    /// Project every coefficient into a factor ring (modulus divides ours).
    pub fn project(&self, factor: &QRing) -> RingPoly {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| factor.elem(c.value().clone()))
            .collect();
        RingPoly::new(factor.clone(), coeffs)
    }

    /// Division with remainder; requires the divisor's leading coefficient to
    /// be a unit (caller splits otherwise).
    fn divrem_unit(&self, div: &RingPoly, lc_inv: &RingElem) -> (RingPoly, RingPoly) {
        let dd = div.degree().unwrap();
        if self.degree().map_or(true, |d| d < dd) {
            return (RingPoly::zero(self.ring.clone()), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dq = rem.len() - 1 - dd;
        let mut quot = vec![self.ring.zero(); dq + 1];
        for k in (0..=dq).rev() {
            let c = rem[k + dd].mul(lc_inv);
            if !c.is_zero() {
                for (i, dc) in div.coeffs.iter().enumerate() {
                    rem[k + i] = rem[k + i].sub(&dc.mul(&c));
                }
            }
            quot[k] = c;
        }
        (
            RingPoly::new(self.ring.clone(), quot),
            RingPoly::new(self.ring.clone(), rem),
        )
    }
}

/// Monic gcd over each factor of a (possibly split) modulus: returns pairwise
/// coprime rings covering the input ring, with the gcd on each.
pub fn gcd_dynamic(a: &RingPoly, b: &RingPoly) -> Vec<(QRing, RingPoly)> {
    let mut out = Vec::new();
    let mut work = vec![(a.ring().clone(), a.clone(), b.clone())];
    while let Some((ring, mut a, mut b)) = work.pop() {
        loop {
            if b.is_zero() {
                // monicize a (may itself split)
                if a.is_zero() {
                    out.push((ring, a));
                    break;
                }
                match a.lc().inverse() {
                    Ok(inv) => {
                        out.push((ring.clone(), a.scale(&inv)));
                        break;
                    }
                    Err(InvertFailure::Zero) => {
                        a = RingPoly::new(
                            ring.clone(),
                            a.coeffs[..a.coeffs.len() - 1].to_vec(),
                        );
                        continue;
                    }
                    Err(InvertFailure::ZeroDivisor { factor }) => {
                        split_into(&ring, &factor, &a, &b, &mut work);
                        break;
                    }
                }
            }
            match b.lc().inverse() {
                Ok(inv) => {
                    let (_, r) = a.divrem_unit(&b, &inv);
                    a = std::mem::replace(&mut b, r);
                }
                Err(InvertFailure::Zero) => {
                    b = RingPoly::new(ring.clone(), b.coeffs[..b.coeffs.len() - 1].to_vec());
                }
                Err(InvertFailure::ZeroDivisor { factor }) => {
                    split_into(&ring, &factor, &a, &b, &mut work);
                    break;
                }
            }
        }
    }
    out.sort_by(|(r1, _), (r2, _)| r1.modulus().cmp(r2.modulus()));
    out
}

fn split_into(
    ring: &QRing,
    factor: &UniPoly,
    a: &RingPoly,
    b: &RingPoly,
    work: &mut Vec<(QRing, RingPoly, RingPoly)>,
) {
    let m2 = ring.modulus().div_exact(factor);
    for m in [factor.clone(), m2] {
        let sub = QRing::new(m).expect("squarefree factor");
        work.push((sub.clone(), a.project(&sub), b.project(&sub)));
    }
}

/// Field-case gcd: panics if a zero divisor shows up (callers use this when
/// the modulus is irreducible, e.g. cyclotomic).
pub fn gcd_field(a: &RingPoly, b: &RingPoly) -> RingPoly {
    let branches = gcd_dynamic(a, b);
    assert_eq!(
        branches.len(),
        1,
        "modulus split during a field gcd; modulus was not irreducible"
    );
    branches.into_iter().next().unwrap().1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::cyclotomic_poly;
    use crate::unipoly::UniPoly;

    #[test]
    fn gcd_over_cyclotomic_field() {
        // over Q(zeta_6): gcd(y^2 - t*y, y - t) = y - t
        let r = QRing::cyclotomic(6);
        let t = r.generator();
        let a = RingPoly::new(
            r.clone(),
            vec![r.zero(), t.neg(), r.one()],
        );
        let b = RingPoly::new(r.clone(), vec![t.neg(), r.one()]);
        let g = gcd_field(&a, &b);
        assert_eq!(g, b);
    }

    #[test]
    fn dynamic_split_happens() {
        // modulus (t-1)(t-2); gcd(y - t, y - 1) is y-1 on t=1, constant on t=2
        let m = &UniPoly::from_i64s(&[-1, 1]) * &UniPoly::from_i64s(&[-2, 1]);
        let r = QRing::new(m).unwrap();
        let a = RingPoly::new(r.clone(), vec![r.generator().neg(), r.one()]);
        let b = RingPoly::lift(&r, &UniPoly::from_i64s(&[-1, 1]));
        let branches = gcd_dynamic(&a, &b);
        assert_eq!(branches.len(), 2);
        for (ring, g) in branches {
            if ring.modulus() == &UniPoly::from_i64s(&[-1, 1]) {
                assert_eq!(g.degree(), Some(1)); // common root y = 1
            } else {
                assert_eq!(g.degree(), Some(0)); // coprime
            }
        }
    }

    #[test]
    fn eval_and_arith() {
        let r = QRing::cyclotomic(4);
        let i = r.generator(); // i^2 = -1
        let p = RingPoly::lift(&r, &UniPoly::from_i64s(&[1, 0, 1])); // y^2 + 1
        assert!(p.eval(&i).is_zero());
        let q = p.mul(&p);
        assert_eq!(q.degree(), Some(4));
        assert!(q.eval(&i).is_zero());
        let _ = cyclotomic_poly(4);
    }
}
