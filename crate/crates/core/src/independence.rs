//! Multiplicative dependence of rational functions, degree-2 algebraic
//! functions, and the spectral independence test for pairs of 2x2 matrix
//! polynomials.
//!
//! The rational case is a complete decision: exponent vectors over a shared
//! coprime basis, integer kernel, constant recovered exactly. The quadratic
//! case reduces to rational kernels through conjugation and norms; the one
//! genuinely open corner (two mixed functions whose norms are both constant)
//! falls back to a bounded exact search and reports "undecided" rather than
//! guessing.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::factorization::coprime_basis;
use crate::intfactor::factor_bigint;
use crate::matpoly::{eigen_functions_2x2, scalar_profile, MatPoly};
use crate::rat::Rat;
use crate::ratfunc::{AlgebraicFunction2, QuadConstant, RationalFunction};
use crate::Error;

/// Default exponent radius for the bounded safety-net search.
pub const DEFAULT_SEARCH_RADIUS: i64 = 8;

/// A verified multiplicative relation `h1^k1 * h2^k2 = constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultRelation {
    pub k1: i64,
    pub k2: i64,
    pub constant: QuadConstant,
    /// Present exactly when the constant is a root of unity; only such
    /// relations certify multiplicative dependence in the strict sense
    /// (some power of the product is exactly 1).
    pub constant_order: Option<u64>,
}

impl MultRelation {
    fn new(k1: i64, k2: i64, constant: QuadConstant) -> Self {
        let constant_order = constant.unity_order();
        MultRelation {
            k1,
            k2,
            constant,
            constant_order,
        }
    }

    /// True when the relation certifies dependence (constant has finite order).
    pub fn certifies_dependence(&self) -> bool {
        self.constant_order.is_some()
    }
}

/// Outcome of a dependence query that may leave the supported theory.
#[derive(Clone, Debug)]
pub enum Decision {
    Relation(MultRelation),
    Independent,
    /// Outside the complete case analysis; a bounded exact search up to the
    /// stated radius found nothing.
    Undecided { radius: i64 },
}

impl Decision {
    pub fn relation(&self) -> Option<&MultRelation> {
        match self {
            Decision::Relation(r) => Some(r),
            _ => None,
        }
    }
}

// ---------------------------------------------------------------------------
// integer kernels

/// Kernel of the 2-column integer matrix [v1 v2].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kernel2 {
    Trivial,
    Rank1((i64, i64)),
    Rank2,
}

/// Primitive generator of {(k1,k2) : k1 v1 + k2 v2 = 0}, when the kernel has
/// rank one. Signs are normalized so k1 > 0, or k1 = 0 and k2 > 0.
pub fn int_kernel2(v1: &[i64], v2: &[i64]) -> Kernel2 {
    assert_eq!(v1.len(), v2.len());
    let z1 = v1.iter().all(|&x| x == 0);
    let z2 = v2.iter().all(|&x| x == 0);
    match (z1, z2) {
        (true, true) => return Kernel2::Rank2,
        (true, false) => return Kernel2::Rank1((1, 0)),
        (false, true) => return Kernel2::Rank1((0, 1)),
        _ => {}
    }
    // candidate from the first coordinate where not both vanish
    let i = (0..v1.len())
        .find(|&i| v1[i] != 0 || v2[i] != 0)
        .expect("nonzero vector");
    let (a, b) = (v2[i] as i128, -(v1[i] as i128));
    let g = gcd_i128(a.abs(), b.abs());
    let (mut k1, mut k2) = ((a / g) as i64, (b / g) as i64);
    if k1 < 0 || (k1 == 0 && k2 < 0) {
        k1 = -k1;
        k2 = -k2;
    }
    for j in 0..v1.len() {
        if (k1 as i128) * (v1[j] as i128) + (k2 as i128) * (v2[j] as i128) != 0 {
            return Kernel2::Trivial;
        }
    }
    Kernel2::Rank1((k1, k2))
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.max(1)
    } else {
        gcd_i128(b, a % b)
    }
}

// ---------------------------------------------------------------------------
// rational functions

/// Exponent vectors of two rational functions over their joint coprime basis,
/// with a final degree-balance coordinate for the place at infinity.
fn function_vectors(h1: &RationalFunction, h2: &RationalFunction) -> (Vec<i64>, Vec<i64>) {
    let inputs = [
        h1.num().clone(),
        h1.den().clone(),
        h2.num().clone(),
        h2.den().clone(),
    ];
    let f = coprime_basis(&inputs);
    let vec_of = |num_row: &[u32], den_row: &[u32], balance: i64| -> Vec<i64> {
        let mut v: Vec<i64> = num_row
            .iter()
            .zip(den_row)
            .map(|(&n, &d)| n as i64 - d as i64)
            .collect();
        v.push(balance);
        v
    };
    let v1 = vec_of(&f.exponents[0], &f.exponents[1], h1.degree_balance());
    let v2 = vec_of(&f.exponents[2], &f.exponents[3], h2.degree_balance());
    (v1, v2)
}

/// Kernel of the multiplicative map (k1,k2) -> divisor of h1^k1 h2^k2;
/// constants contribute zero vectors, so this also detects rank 2.
pub fn projective_kernel(h1: &RationalFunction, h2: &RationalFunction) -> Kernel2 {
    let (v1, v2) = function_vectors(h1, h2);
    int_kernel2(&v1, &v2)
}

/// Complete decision for nonconstant rational functions: the primitive
/// relation with its exactly computed constant, or `None`.
pub fn mult_relation_rational(
    h1: &RationalFunction,
    h2: &RationalFunction,
) -> Result<Option<MultRelation>, Error> {
    if h1.is_zero() || h2.is_zero() {
        return Err(Error::Domain("zero function".into()));
    }
    if h1.is_constant() || h2.is_constant() {
        return Err(Error::Domain(
            "constants are not in the function-dependence domain".into(),
        ));
    }
    match projective_kernel(h1, h2) {
        Kernel2::Trivial => Ok(None),
        Kernel2::Rank2 => unreachable!("nonconstant functions have nonzero divisors"),
        Kernel2::Rank1((k1, k2)) => {
            let value = h1.pow(k1).mul(&h2.pow(k2));
            let c = value
                .as_constant()
                .expect("kernel vector must produce a constant");
            Ok(Some(MultRelation::new(k1, k2, QuadConstant::rational(c))))
        }
    }
}

// ---------------------------------------------------------------------------
// quadratic functions

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Shape {
    Rational,
    Pure,
    Mixed,
}

fn shape(h: &AlgebraicFunction2) -> Shape {
    if h.is_rational() {
        Shape::Rational
    } else if h.is_pure() {
        Shape::Pure
    } else {
        Shape::Mixed
    }
}

/// Dependence decision for algebraic functions of degree <= 2 over Q(x).
///
/// Complete except when both inputs are mixed over the same extension and
/// both norms are constant (a Pell-type configuration); that corner runs the
/// bounded search and otherwise reports undecided.
pub fn mult_relation_quadratic(
    h1: &AlgebraicFunction2,
    h2: &AlgebraicFunction2,
    radius: i64,
) -> Result<Decision, Error> {
    if h1.is_zero() || h2.is_zero() {
        return Err(Error::Domain("zero function".into()));
    }
    if h1.is_constant() || h2.is_constant() {
        return Err(Error::Domain(
            "constants are not in the function-dependence domain".into(),
        ));
    }
    let (s1, s2) = (shape(h1), shape(h2));
    match (s1, s2) {
        (Shape::Rational, Shape::Rational) => {
            let r = mult_relation_rational(h1.as_rational().unwrap(), h2.as_rational().unwrap())?;
            Ok(match r {
                Some(rel) => Decision::Relation(rel),
                None => Decision::Independent,
            })
        }
        // A mixed function never satisfies a relation with anything outside
        // its own extension: conjugating kills the partner and leaves
        // q^k = const with q = h/conj(h) nonconstant, forcing k = 0.
        (Shape::Mixed, Shape::Rational)
        | (Shape::Rational, Shape::Mixed)
        | (Shape::Mixed, Shape::Pure)
        | (Shape::Pure, Shape::Mixed) => Ok(Decision::Independent),
        (Shape::Mixed, Shape::Mixed) => {
            if h1.radicand() != h2.radicand() {
                return Ok(Decision::Independent);
            }
            mixed_same_extension(h1, h2, radius)
        }
        (Shape::Pure, Shape::Pure) => {
            if h1.radicand() == h2.radicand() {
                pure_pure_same(h1, h2)
            } else {
                pure_pure_different(h1, h2)
            }
        }
        (Shape::Pure, Shape::Rational) => pure_rational(h1, h2, false),
        (Shape::Rational, Shape::Pure) => pure_rational(h2, h1, true),
    }
}

/// Exponents of a pure function must be even; decide on (h_pure^2, h_rat).
fn pure_rational(
    hp: &AlgebraicFunction2,
    hr: &AlgebraicFunction2,
    swapped: bool,
) -> Result<Decision, Error> {
    let hp2 = hp
        .pow(2)?
        .as_rational()
        .expect("square of a pure function is rational")
        .clone();
    let hr = hr.as_rational().unwrap();
    debug_assert!(!hp2.is_constant(), "nonconstant pure has nonconstant square");
    match mult_relation_rational(&hp2, hr)? {
        None => Ok(Decision::Independent),
        Some(rel) => {
            let (k1, k2) = if swapped {
                (rel.k2, 2 * rel.k1)
            } else {
                (2 * rel.k1, rel.k2)
            };
            Ok(Decision::Relation(MultRelation::new(k1, k2, rel.constant)))
        }
    }
}

fn pure_pure_different(
    h1: &AlgebraicFunction2,
    h2: &AlgebraicFunction2,
) -> Result<Decision, Error> {
    // sqrt(D1 D2) is irrational, so both exponents are even
    let a = h1.pow(2)?.as_rational().unwrap().clone();
    let b = h2.pow(2)?.as_rational().unwrap().clone();
    match mult_relation_rational(&a, &b)? {
        None => Ok(Decision::Independent),
        Some(rel) => Ok(Decision::Relation(MultRelation::new(
            2 * rel.k1,
            2 * rel.k2,
            rel.constant,
        ))),
    }
}

fn pure_pure_same(h1: &AlgebraicFunction2, h2: &AlgebraicFunction2) -> Result<Decision, Error> {
    // relations live in the even sublattice k1 + k2 = 2s, k1 - k2 = 2t... in
    // coordinates (s,t): h1^k1 h2^k2 = (h1 h2)^s (h1/h2)^t with both rational
    let u = h1.mul(h2)?.as_rational().expect("product is rational").clone();
    let v = h1
        .mul(&h2.recip()?)?
        .as_rational()
        .expect("quotient is rational")
        .clone();
    let (w1, w2) = function_vectors(&u, &v);
    match int_kernel2(&w1, &w2) {
        Kernel2::Trivial => Ok(Decision::Independent),
        Kernel2::Rank2 => {
            // would need h1^2 and h1/h2 both constant; impossible for
            // nonconstant inputs, but keep an honest fallback
            Ok(Decision::Undecided {
                radius: DEFAULT_SEARCH_RADIUS,
            })
        }
        Kernel2::Rank1((s, t)) => {
            let (k1, k2) = (s + t, s - t);
            let e = h1.pow(k1)?.mul(&h2.pow(k2)?)?;
            assert!(e.is_constant(), "kernel vector must produce a constant");
            let c = QuadConstant::from_function(&e).unwrap();
            Ok(Decision::Relation(MultRelation::new(k1, k2, c)))
        }
    }
}

fn mixed_same_extension(
    h1: &AlgebraicFunction2,
    h2: &AlgebraicFunction2,
    radius: i64,
) -> Result<Decision, Error> {
    let n1 = h1.norm();
    let n2 = h2.norm();
    assert!(!n1.is_zero() && !n2.is_zero(), "zero norm for nonzero input");
    let (w1, w2) = function_vectors(&n1, &n2);
    match int_kernel2(&w1, &w2) {
        Kernel2::Trivial => Ok(Decision::Independent),
        Kernel2::Rank1((g1, g2)) => {
            // relations form a subgroup of Z(g1,g2); e(g)^d constant forces
            // e(g) constant, so testing the generator decides completely
            let e = h1.pow(g1)?.mul(&h2.pow(g2)?)?;
            if e.is_constant() {
                let c = QuadConstant::from_function(&e).unwrap();
                Ok(Decision::Relation(MultRelation::new(g1, g2, c)))
            } else {
                Ok(Decision::Independent)
            }
        }
        Kernel2::Rank2 => bounded_search_same_extension(h1, h2, radius),
    }
}

/// Exact scan over primitive exponent pairs in the box; same-extension inputs.
/// Pairs are normalized (k1 > 0, or k1 = 0 and k2 > 0) and visited smallest
/// first, so the first hit is a lattice generator.
fn bounded_search_same_extension(
    h1: &AlgebraicFunction2,
    h2: &AlgebraicFunction2,
    radius: i64,
) -> Result<Decision, Error> {
    let mut candidates: Vec<(i64, i64)> = Vec::new();
    for k1 in 0..=radius {
        for k2 in -radius..=radius {
            let primitive =
                gcd_i128(k1.unsigned_abs() as i128, k2.unsigned_abs() as i128) == 1;
            let normalized = k1 > 0 || k2 > 0;
            if primitive && normalized {
                candidates.push((k1, k2));
            }
        }
    }
    candidates.sort_by_key(|&(a, b)| (a.abs() + b.abs(), -b));
    for (k1, k2) in candidates {
        let e = h1.pow(k1)?.mul(&h2.pow(k2)?)?;
        if e.is_constant() {
            let c = QuadConstant::from_function(&e).unwrap();
            return Ok(Decision::Relation(MultRelation::new(k1, k2, c)));
        }
    }
    Ok(Decision::Undecided { radius })
}

// ---------------------------------------------------------------------------
// constants

/// Dependence of two nonzero constants (rational or quadratic): complete for
/// rationals and for quadratics via norm descent, except the unit-norm
/// rank-2 corner which stays bounded.
pub fn constant_pair_decision(c1: &QuadConstant, c2: &QuadConstant, radius: i64) -> Decision {
    assert!(!c1.is_zero() && !c2.is_zero());
    // a root of unity on either side is already a relation
    if let Some(m) = c1.unity_order() {
        return Decision::Relation(MultRelation::new(m as i64, 0, QuadConstant::one()));
    }
    if let Some(m) = c2.unity_order() {
        return Decision::Relation(MultRelation::new(0, m as i64, QuadConstant::one()));
    }
    let rational_case = c1.b.is_zero() && c2.b.is_zero();
    if rational_case {
        let (v1, v2) = prime_vectors(&c1.a, &c2.a);
        return match int_kernel2(&v1, &v2) {
            Kernel2::Trivial => Decision::Independent,
            Kernel2::Rank2 => unreachable!("non-unity rationals have nonzero prime support"),
            Kernel2::Rank1((k1, k2)) => {
                let value = crate::rat::rat_pow(&c1.a, k1) * crate::rat::rat_pow(&c2.a, k2);
                Decision::Relation(MultRelation::new(
                    k1,
                    k2,
                    QuadConstant::rational(value),
                ))
            }
        };
    }
    // norm descent for quadratic constants
    let n1 = c1.norm();
    let n2 = c2.norm();
    let unity1 = crate::rat::rational_unity_order(&n1).is_some();
    let unity2 = crate::rat::rational_unity_order(&n2).is_some();
    if unity1 && unity2 {
        // unit-norm pair: bounded exact search
        for k1 in -radius..=radius {
            for k2 in -radius..=radius {
                if (k1, k2) == (0, 0) {
                    continue;
                }
                let e = match c1.pow(k1).and_then(|a| {
                    c2.pow(k2).and_then(|b| crate::ratfunc::quad_const_mul(&a, &b))
                }) {
                    Ok(e) => e,
                    Err(_) => continue,
                };
                if e.unity_order().is_some() {
                    return Decision::Relation(MultRelation::new(k1, k2, e));
                }
            }
        }
        return Decision::Undecided { radius };
    }
    let (v1, v2) = prime_vectors(&n1, &n2);
    match int_kernel2(&v1, &v2) {
        Kernel2::Trivial => Decision::Independent,
        Kernel2::Rank2 => unreachable!("norms handled above"),
        Kernel2::Rank1((g1, g2)) => {
            let same_field = c1.b.is_zero() || c2.b.is_zero() || c1.d == c2.d;
            if !same_field {
                // different quadratic fields: e(g) would have to be rational,
                // which the conjugation argument rules out unless trivial
                return Decision::Independent;
            }
            let e = c1
                .pow(g1)
                .and_then(|a| c2.pow(g2).and_then(|b| crate::ratfunc::quad_const_mul(&a, &b)));
            match e {
                Err(_) => Decision::Independent,
                Ok(e) => match e.unity_order() {
                    Some(_) => Decision::Relation(MultRelation::new(g1, g2, e)),
                    None => Decision::Independent,
                },
            }
        }
    }
}

fn prime_vectors(a: &Rat, b: &Rat) -> (Vec<i64>, Vec<i64>) {
    let support = |x: &Rat| -> Vec<(BigInt, i64)> {
        let mut v: Vec<(BigInt, i64)> = Vec::new();
        for (p, e) in factor_bigint(&x.numer().abs()) {
            v.push((p, e as i64));
        }
        for (p, e) in factor_bigint(x.denom()) {
            v.push((p, -(e as i64)));
        }
        v
    };
    let sa = support(a);
    let sb = support(b);
    let mut primes: Vec<BigInt> = sa.iter().chain(sb.iter()).map(|(p, _)| p.clone()).collect();
    primes.sort();
    primes.dedup();
    primes.retain(|p| p > &BigInt::one());
    // signs are not encoded here: a kernel vector makes the product +-1 and
    // the computed constant settles which
    let to_vec = |s: &[(BigInt, i64)]| -> Vec<i64> {
        primes
            .iter()
            .map(|p| s.iter().find(|(q, _)| q == p).map_or(0, |(_, e)| *e))
            .collect()
    };
    (to_vec(&sa), to_vec(&sb))
}

// ---------------------------------------------------------------------------
// spectral independence

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpectralVerdict {
    Independent,
    Dependent,
    Undecided,
}

#[derive(Clone, Debug)]
pub struct SpectralWitness {
    /// Index into the f-side list (0 = determinant, then eigenvalues).
    pub f_index: usize,
    pub g_index: usize,
    pub relation: MultRelation,
}

#[derive(Clone, Debug)]
pub struct SpectralReport {
    /// det(f(xI)) followed by the two eigenvalue functions.
    pub s_f: Vec<AlgebraicFunction2>,
    pub s_g: Vec<AlgebraicFunction2>,
    pub verdict: SpectralVerdict,
    pub witnesses: Vec<SpectralWitness>,
    pub undecided_pairs: Vec<(usize, usize)>,
}

/// The spectral multiplicative independence test for 2x2 matrix polynomials:
/// all nine pairs from {det, eigenvalues} x {det, eigenvalues}.
pub fn spectral_independence(
    f: &MatPoly,
    g: &MatPoly,
    radius: i64,
) -> Result<SpectralReport, Error> {
    if f.dim() != 2 || g.dim() != 2 {
        return Err(Error::Dimension(
            "spectral independence is defined for 2x2 matrix polynomials".into(),
        ));
    }
    let pf = scalar_profile(f);
    let pg = scalar_profile(g);
    if pf.det_curve.is_zero() || pg.det_curve.is_zero() {
        return Err(Error::Domain(
            "det(f(xI)) and det(g(xI)) must be nonzero for the independence test".into(),
        ));
    }
    let (mu1, mu2) = eigen_functions_2x2(&pf);
    let (eta1, eta2) = eigen_functions_2x2(&pg);
    let s_f = vec![
        AlgebraicFunction2::rational(RationalFunction::from_poly(pf.det_curve.clone())),
        mu1,
        mu2,
    ];
    let s_g = vec![
        AlgebraicFunction2::rational(RationalFunction::from_poly(pg.det_curve.clone())),
        eta1,
        eta2,
    ];
    let mut witnesses = Vec::new();
    let mut undecided_pairs = Vec::new();
    for (i, a) in s_f.iter().enumerate() {
        for (j, b) in s_g.iter().enumerate() {
            match decide_pair(a, b, radius)? {
                Decision::Relation(rel) if rel.certifies_dependence() => {
                    witnesses.push(SpectralWitness {
                        f_index: i,
                        g_index: j,
                        relation: rel,
                    });
                }
                Decision::Relation(_) => {}
                Decision::Independent => {}
                Decision::Undecided { .. } => undecided_pairs.push((i, j)),
            }
        }
    }
    let verdict = if !witnesses.is_empty() {
        SpectralVerdict::Dependent
    } else if !undecided_pairs.is_empty() {
        SpectralVerdict::Undecided
    } else {
        SpectralVerdict::Independent
    };
    Ok(SpectralReport {
        s_f,
        s_g,
        verdict,
        witnesses,
        undecided_pairs,
    })
}

/// Decide one pair, routing constants and functions appropriately.
pub fn decide_pair(
    a: &AlgebraicFunction2,
    b: &AlgebraicFunction2,
    radius: i64,
) -> Result<Decision, Error> {
    let ca = constant_of(a);
    let cb = constant_of(b);
    match (ca, cb) {
        (Some(x), Some(y)) => Ok(constant_pair_decision(&x, &y, radius)),
        (Some(x), None) => Ok(match x.unity_order() {
            // c^k * h^0 = 1
            Some(m) => Decision::Relation(MultRelation::new(m as i64, 0, QuadConstant::one())),
            None => Decision::Independent,
        }),
        (None, Some(y)) => Ok(match y.unity_order() {
            Some(m) => Decision::Relation(MultRelation::new(0, m as i64, QuadConstant::one())),
            None => Decision::Independent,
        }),
        (None, None) => mult_relation_quadratic(a, b, radius),
    }
}

fn constant_of(h: &AlgebraicFunction2) -> Option<QuadConstant> {
    if h.is_constant() {
        QuadConstant::from_function(h)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matpoly::RatMat;
    use crate::rat::{rat, rat_int};
    use crate::unipoly::UniPoly;

    fn poly(num: &[i64]) -> RationalFunction {
        RationalFunction::from_poly(UniPoly::from_i64s(num))
    }

    #[test]
    fn monomial_relation() {
        // (x^2, x^3) -> (3, -2), constant 1
        let r = mult_relation_rational(&poly(&[0, 0, 1]), &poly(&[0, 0, 0, 1]))
            .unwrap()
            .unwrap();
        assert_eq!((r.k1, r.k2), (3, -2));
        assert!(r.constant.is_one());
        assert_eq!(r.constant_order, Some(1));
    }

    #[test]
    fn identical_inputs() {
        // x^2(x^2-1) with itself -> (1, -1)
        let h = poly(&[0, 0, -1, 0, 1]);
        let r = mult_relation_rational(&h, &h).unwrap().unwrap();
        assert_eq!((r.k1, r.k2), (1, -1));
        assert!(r.constant.is_one());
    }

    #[test]
    fn disjoint_supports_independent() {
        // (x^2, x^2-5x+6): no relation
        let r = mult_relation_rational(&poly(&[0, 0, 1]), &poly(&[6, -5, 1])).unwrap();
        assert!(r.is_none());
    }

    #[test]
    fn constant_rejected() {
        assert!(mult_relation_rational(&poly(&[3]), &poly(&[0, 1])).is_err());
    }

    #[test]
    fn relation_with_non_unity_constant() {
        // 2x vs 3x: (1,-1) with constant 2/3, no order
        let r = mult_relation_rational(&poly(&[0, 2]), &poly(&[0, 3]))
            .unwrap()
            .unwrap();
        assert_eq!((r.k1, r.k2), (1, -1));
        assert_eq!(r.constant.a, rat(2, 3));
        assert_eq!(r.constant_order, None);
        assert!(!r.certifies_dependence());
    }

    #[test]
    fn symmetry_up_to_sign() {
        let h1 = poly(&[0, 0, 1]);
        let h2 = poly(&[0, 0, 0, 1]);
        let r12 = mult_relation_rational(&h1, &h2).unwrap().unwrap();
        let r21 = mult_relation_rational(&h2, &h1).unwrap().unwrap();
        // same line in Z^2 after swapping coordinates
        assert_eq!(
            (r12.k1 * r21.k1) as i128,
            (r12.k2 * r21.k2) as i128
        );
        assert_eq!(r12.k1.abs(), r21.k2.abs());
        assert_eq!(r12.k2.abs(), r21.k1.abs());
    }

    #[test]
    fn conjugate_pair_norm_one() {
        // (x + sqrt(x^2-1), x - sqrt(x^2-1)) -> (1,1), constant 1 (found in
        // the rank-2 bounded branch)
        let d = UniPoly::from_i64s(&[-1, 0, 1]);
        let h1 = AlgebraicFunction2::new(
            RationalFunction::x(),
            RationalFunction::one(),
            d.clone(),
        );
        let h2 = AlgebraicFunction2::new(RationalFunction::x(), RationalFunction::one().neg(), d);
        match mult_relation_quadratic(&h1, &h2, 8).unwrap() {
            Decision::Relation(r) => {
                assert_eq!((r.k1, r.k2), (1, 1));
                assert!(r.constant.is_one());
            }
            other => panic!("expected relation, got {other:?}"),
        }
    }

    #[test]
    fn identical_quadratic_inputs() {
        // (x + sqrt x, x + sqrt x) -> (1, -1)
        let h = AlgebraicFunction2::new(
            RationalFunction::x(),
            RationalFunction::one(),
            UniPoly::from_i64s(&[0, 1]),
        );
        match mult_relation_quadratic(&h, &h, 8).unwrap() {
            Decision::Relation(r) => {
                assert_eq!((r.k1, r.k2), (1, -1));
                assert!(r.constant.is_one());
            }
            other => panic!("expected relation, got {other:?}"),
        }
    }

    #[test]
    fn mixed_vs_rational_independent() {
        // x vs x + sqrt(x^2-1)
        let h1 = AlgebraicFunction2::rational(RationalFunction::x());
        let h2 = AlgebraicFunction2::new(
            RationalFunction::x(),
            RationalFunction::one(),
            UniPoly::from_i64s(&[-1, 0, 1]),
        );
        assert!(matches!(
            mult_relation_quadratic(&h1, &h2, 8).unwrap(),
            Decision::Independent
        ));
    }

    #[test]
    fn mixed_constant_radicand_norm_descent() {
        // x vs x - sqrt(2): norms x^2 and x^2 - 2 are independent
        let h1 = AlgebraicFunction2::rational(RationalFunction::x());
        let h2 = AlgebraicFunction2::new(
            RationalFunction::x(),
            RationalFunction::constant(rat_int(-1)),
            UniPoly::from_i64s(&[2]),
        );
        assert!(matches!(
            mult_relation_quadratic(&h2, &h1, 8).unwrap(),
            Decision::Independent
        ));
    }

    #[test]
    fn pure_functions() {
        // sqrt(x) vs x*sqrt(x): e = h1^3 h2^{-1} = x... check the relation
        let h1 = AlgebraicFunction2::new(
            RationalFunction::zero(),
            RationalFunction::one(),
            UniPoly::from_i64s(&[0, 1]),
        );
        let h2 = AlgebraicFunction2::new(
            RationalFunction::zero(),
            RationalFunction::x(),
            UniPoly::from_i64s(&[0, 1]),
        );
        match mult_relation_quadratic(&h1, &h2, 8).unwrap() {
            Decision::Relation(r) => {
                // h1^3 = x sqrt x = h2, so (3, -1)
                assert_eq!((r.k1, r.k2), (3, -1));
                assert!(r.constant.is_one());
            }
            other => panic!("expected relation, got {other:?}"),
        }
        // pure over different radicands: sqrt(x) vs sqrt(x-1): independent
        let h3 = AlgebraicFunction2::new(
            RationalFunction::zero(),
            RationalFunction::one(),
            UniPoly::from_i64s(&[-1, 1]),
        );
        assert!(matches!(
            mult_relation_quadratic(&h1, &h3, 8).unwrap(),
            Decision::Independent
        ));
    }

    #[test]
    fn constant_pairs() {
        // 2/3 and 4/9: (2, -1)
        let c1 = QuadConstant::rational(rat(2, 3));
        let c2 = QuadConstant::rational(rat(4, 9));
        match constant_pair_decision(&c1, &c2, 8) {
            Decision::Relation(r) => {
                assert_eq!((r.k1, r.k2), (2, -1));
                assert!(r.constant.is_one());
            }
            other => panic!("expected relation, got {other:?}"),
        }
        // 2 and 3: independent
        assert!(matches!(
            constant_pair_decision(
                &QuadConstant::rational(rat_int(2)),
                &QuadConstant::rational(rat_int(3)),
                8
            ),
            Decision::Independent
        ));
        // -1 is torsion
        match constant_pair_decision(
            &QuadConstant::rational(rat_int(-1)),
            &QuadConstant::rational(rat_int(7)),
            8,
        ) {
            Decision::Relation(r) => assert_eq!((r.k1, r.k2), (2, 0)),
            other => panic!("expected relation, got {other:?}"),
        }
    }

    fn remark_pair() -> (MatPoly, MatPoly) {
        let f = MatPoly::new(
            2,
            vec![
                RatMat::from_i64s(2, &[0, 1, 0, 0]),
                RatMat::from_i64s(2, &[1, 0, 0, -1]),
                RatMat::identity(2),
            ],
        )
        .unwrap();
        let g = MatPoly::new(
            2,
            vec![
                RatMat::from_i64s(2, &[0, 0, 1, -1]),
                RatMat::zero(2),
                RatMat::identity(2),
            ],
        )
        .unwrap();
        (f, g)
    }

    #[test]
    fn spectral_of_printed_example_is_dependent() {
        let (f, g) = remark_pair();
        let rep = spectral_independence(&f, &g, 8).unwrap();
        assert_eq!(rep.verdict, SpectralVerdict::Dependent);
        // first witness is the determinant pair with relation (1, -1)
        let w = &rep.witnesses[0];
        assert_eq!((w.f_index, w.g_index), (0, 0));
        assert_eq!((w.relation.k1, w.relation.k2), (1, -1));
        assert!(w.relation.constant.is_one());
    }

    #[test]
    fn spectral_independent_constant_shifts() {
        // f = Z + diag(2,3), g = Z + diag(5,7)
        let f = MatPoly::new(
            2,
            vec![RatMat::from_i64s(2, &[2, 0, 0, 3]), RatMat::identity(2)],
        )
        .unwrap();
        let g = MatPoly::new(
            2,
            vec![RatMat::from_i64s(2, &[5, 0, 0, 7]), RatMat::identity(2)],
        )
        .unwrap();
        let rep = spectral_independence(&f, &g, 8).unwrap();
        assert_eq!(rep.verdict, SpectralVerdict::Independent);
    }

    #[test]
    fn spectral_independent_z_and_shift() {
        // f = Z, g = Z - I
        let f = MatPoly::z(2);
        let g = MatPoly::z_minus(&RatMat::identity(2));
        let rep = spectral_independence(&f, &g, 8).unwrap();
        assert_eq!(rep.verdict, SpectralVerdict::Independent);
    }

    #[test]
    fn scaling_invariance() {
        let h1 = poly(&[0, 0, -1, 0, 1]);
        let h2 = poly(&[0, 0, 1]);
        let r1 = mult_relation_rational(&h1, &h2).unwrap();
        let h1sq = h1.mul(&h1);
        let r2 = mult_relation_rational(&h1sq, &h2).unwrap();
        assert_eq!(r1.is_some(), r2.is_some());
    }

    #[test]
    fn bounded_search_agrees_with_kernel_on_monomials() {
        // independent monomial-ish pairs: kernel says none; brute force in a
        // small box should also find none
        let pairs = [
            (poly(&[0, 1]), poly(&[1, 1])),
            (poly(&[0, 0, 1]), poly(&[6, -5, 1])),
        ];
        for (h1, h2) in pairs {
            assert!(mult_relation_rational(&h1, &h2).unwrap().is_none());
            for k1 in -4i64..=4 {
                for k2 in -4i64..=4 {
                    if (k1, k2) == (0, 0) {
                        continue;
                    }
                    let v = h1.pow(k1).mul(&h2.pow(k2));
                    assert!(v.as_constant().is_none(), "unexpected relation ({k1},{k2})");
                }
            }
        }
    }
}
