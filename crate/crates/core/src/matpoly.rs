//! Matrix polynomials f = sum C_i Z^i, their scalar-line profiles f(xI),
//! exact evaluation at matrices over quotient rings, and torsion decisions.

use std::fmt;

use num_traits::{One, Zero};

use crate::bipoly::{resultant_elim, BiPoly, Var};
use crate::cyclotomic::cyclotomic_part;
use crate::qring::{QRing, RingElem};
use crate::rat::{rat, Rat};
use crate::ratfunc::{AlgebraicFunction2, RationalFunction};
use crate::unipoly::UniPoly;
use crate::Error;

/// Square rational matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMat {
    dim: usize,
    data: Vec<Rat>,
}

impl fmt::Debug for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMat{:?}", self.rows_text())
    }
}

impl RatMat {
    pub fn new(dim: usize, data: Vec<Rat>) -> Result<Self, Error> {
        if data.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                data.len()
            )));
        }
        Ok(RatMat { dim, data })
    }

    pub fn from_i64s(dim: usize, entries: &[i64]) -> Self {
        RatMat::new(
            dim,
            entries.iter().map(|&e| crate::rat::rat_int(e)).collect(),
        )
        .unwrap()
    }

    pub fn zero(dim: usize) -> Self {
        RatMat {
            dim,
            data: vec![Rat::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = RatMat::zero(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Rat::one();
        }
        m
    }

    pub fn scalar(dim: usize, c: Rat) -> Self {
        let mut m = RatMat::zero(dim);
        for i in 0..dim {
            m.data[i * dim + i] = c.clone();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.dim + j]
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn is_scalar(&self) -> bool {
        let c = self.at(0, 0);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let want_zero = i != j;
                let e = self.at(i, j);
                if want_zero && !e.is_zero() {
                    return false;
                }
                if !want_zero && e != c {
                    return false;
                }
            }
        }
        true
    }

    pub fn add(&self, o: &RatMat) -> RatMat {
        assert_eq!(self.dim, o.dim);
        RatMat {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, o: &RatMat) -> RatMat {
        assert_eq!(self.dim, o.dim);
        RatMat {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, o: &RatMat) -> RatMat {
        assert_eq!(self.dim, o.dim);
        let n = self.dim;
        let mut out = RatMat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = a * o.at(k, j);
                    out.data[i * n + j] += t;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> RatMat {
        let n = self.dim;
        let mut out = RatMat::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.at(i, j).clone();
            }
        }
        out
    }

    pub fn trace(&self) -> Rat {
        (0..self.dim).map(|i| self.at(i, i).clone()).sum()
    }

    pub fn det(&self) -> Rat {
        ring_det(&self.lift(&QRing::rationals()))
            .as_rational()
            .unwrap()
    }

    pub fn lift(&self, ring: &QRing) -> RingMat {
        RingMat {
            ring: ring.clone(),
            dim: self.dim,
            data: self
                .data
                .iter()
                .map(|c| ring.from_rat(c.clone()))
                .collect(),
        }
    }

    pub fn rows_text(&self) -> Vec<Vec<String>> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| crate::rat::format_rat(self.at(i, j)))
                    .collect()
            })
            .collect()
    }
}

/// Square matrix over Q[t]/(m(t)).
#[derive(Clone, PartialEq, Eq)]
pub struct RingMat {
    ring: QRing,
    dim: usize,
    data: Vec<RingElem>,
}

impl fmt::Debug for RingMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.at(i, j).to_string()).collect())
            .collect();
        write!(f, "RingMat{rows:?} mod {}", self.ring.modulus().to_text("t"))
    }
}

impl RingMat {
    pub fn new(ring: QRing, dim: usize, data: Vec<RingElem>) -> Result<Self, Error> {
        if data.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "expected {} entries, got {}",
                dim * dim,
                data.len()
            )));
        }
        Ok(RingMat { ring, dim, data })
    }

    pub fn zero(ring: &QRing, dim: usize) -> Self {
        RingMat {
            ring: ring.clone(),
            dim,
            data: vec![ring.zero(); dim * dim],
        }
    }

    pub fn identity(ring: &QRing, dim: usize) -> Self {
        let mut m = RingMat::zero(ring, dim);
        for i in 0..dim {
            m.data[i * dim + i] = ring.one();
        }
        m
    }

    pub fn diagonal(ring: &QRing, entries: Vec<RingElem>) -> Self {
        let dim = entries.len();
        let mut m = RingMat::zero(ring, dim);
        for (i, e) in entries.into_iter().enumerate() {
            m.data[i * dim + i] = e;
        }
        m
    }

    /// Upper Jordan block with the given diagonal element.
    pub fn jordan_block(ring: &QRing, lambda: RingElem, dim: usize) -> Self {
        let mut m = RingMat::zero(ring, dim);
        for i in 0..dim {
            m.data[i * dim + i] = lambda.clone();
            if i + 1 < dim {
                m.data[i * dim + i + 1] = ring.one();
            }
        }
        m
    }

    pub fn ring(&self) -> &QRing {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, i: usize, j: usize) -> &RingElem {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElem) {
        self.data[i * self.dim + j] = v;
    }

    pub fn is_identity(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let e = self.at(i, j);
                if i == j {
                    if !e.is_one() {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn add(&self, o: &RingMat) -> RingMat {
        assert_eq!(self.dim, o.dim);
        RingMat {
            ring: self.ring.clone(),
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, o: &RingMat) -> RingMat {
        assert_eq!(self.dim, o.dim);
        RingMat {
            ring: self.ring.clone(),
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn mul(&self, o: &RingMat) -> RingMat {
        assert_eq!(self.dim, o.dim);
        let n = self.dim;
        let mut out = RingMat::zero(&self.ring, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = a.mul(o.at(k, j));
                    out.data[i * n + j] = out.data[i * n + j].add(&t);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> RingMat {
        let n = self.dim;
        let mut out = RingMat::zero(&self.ring, n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.at(i, j).clone();
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> RingMat {
        let mut acc = RingMat::identity(&self.ring, self.dim);
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    pub fn trace(&self) -> RingElem {
        let mut t = self.ring.zero();
        for i in 0..self.dim {
            t = t.add(self.at(i, i));
        }
        t
    }

    pub fn det(&self) -> RingElem {
        ring_det(self)
    }

    /// Inverse of a 2x2 via adjugate; errors if the determinant is not a unit.
    pub fn inverse2(&self) -> Result<RingMat, Error> {
        assert_eq!(self.dim, 2);
        let det = self.det();
        let inv = det.inverse().map_err(|_| {
            Error::Domain("matrix is singular over some factor of the modulus".into())
        })?;
        let mut out = RingMat::zero(&self.ring, 2);
        out.set(0, 0, self.at(1, 1).mul(&inv));
        out.set(1, 1, self.at(0, 0).mul(&inv));
        out.set(0, 1, self.at(0, 1).neg().mul(&inv));
        out.set(1, 0, self.at(1, 0).neg().mul(&inv));
        Ok(out)
    }

    /// Reduce all entries into a factor ring of the modulus.
    pub fn project(&self, factor: &QRing) -> RingMat {
        RingMat {
            ring: factor.clone(),
            dim: self.dim,
            data: self
                .data
                .iter()
                .map(|e| factor.elem(e.value().clone()))
                .collect(),
        }
    }

    pub fn is_scalar(&self) -> bool {
        let c = self.at(0, 0);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let e = self.at(i, j);
                if i == j {
                    if e != c {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

fn ring_det(m: &RingMat) -> RingElem {
    // cofactor expansion; dimensions here are small (r <= 4 in practice)
    fn det_rec(m: &RingMat, rows: &[usize], cols: &[usize]) -> RingElem {
        let ring = m.ring();
        if rows.is_empty() {
            return ring.one();
        }
        let r0 = rows[0];
        let mut acc = ring.zero();
        for (k, &c) in cols.iter().enumerate() {
            let e = m.at(r0, c);
            if e.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols
                .iter()
                .copied()
                .filter(|&cc| cc != c)
                .collect();
            let sub = det_rec(m, &rows[1..], &sub_cols);
            let term = e.mul(&sub);
            acc = if k % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        acc
    }
    let idx: Vec<usize> = (0..m.dim()).collect();
    det_rec(m, &idx, &idx)
}

/// Matrix polynomial with rational coefficient matrices, leading one nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatPoly {
    dim: usize,
    coeffs: Vec<RatMat>,
}

impl MatPoly {
    pub fn new(dim: usize, mut coeffs: Vec<RatMat>) -> Result<Self, Error> {
        for c in &coeffs {
            if c.dim() != dim {
                return Err(Error::Dimension(
                    "coefficient matrices must share the polynomial's dimension".into(),
                ));
            }
        }
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::Domain("zero matrix polynomial".into()));
        }
        Ok(MatPoly { dim, coeffs })
    }

    /// The identity polynomial Z.
    pub fn z(dim: usize) -> Self {
        MatPoly::new(dim, vec![RatMat::zero(dim), RatMat::identity(dim)]).unwrap()
    }

    /// Z - C.
    pub fn z_minus(c: &RatMat) -> Self {
        let dim = c.dim();
        MatPoly::new(
            dim,
            vec![RatMat::zero(dim).sub(c), RatMat::identity(dim)],
        )
        .unwrap()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RatMat] {
        &self.coeffs
    }

    /// True when every coefficient is a scalar matrix.
    pub fn has_scalar_coefficients(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_scalar())
    }

    /// f(xI) as an r x r array of univariate polynomials: entry (i,j) is
    /// sum_k (C_k)_{ij} x^k.
    pub fn entry_polys(&self) -> Vec<UniPoly> {
        let n = self.dim;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let coeffs: Vec<Rat> = self.coeffs.iter().map(|c| c.at(i, j).clone()).collect();
                out.push(UniPoly::new(coeffs));
            }
        }
        out
    }

    /// Exact evaluation sum C_i A^i with coefficients acting on the left.
    pub fn eval_at_matrix(&self, a: &RingMat) -> Result<RingMat, Error> {
        if a.dim() != self.dim {
            return Err(Error::Dimension(format!(
                "matrix dimension {} does not match polynomial dimension {}",
                a.dim(),
                self.dim
            )));
        }
        let ring = a.ring();
        let mut acc = self.coeffs.last().unwrap().lift(ring);
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul(a).add(&c.lift(ring));
        }
        Ok(acc)
    }
}

/// The scalar-line profile of f: f(xI), its characteristic surface
/// P(x, y) = det(yI - f(xI)) and determinant curve det(f(xI)).
#[derive(Clone, Debug)]
pub struct ScalarProfile {
    pub dim: usize,
    pub poly_matrix: Vec<UniPoly>,
    /// x in the first slot, y in the second; monic of degree r in y.
    pub char_surface: BiPoly,
    pub det_curve: UniPoly,
}

/// Build the profile; determinants of the polynomial matrix are expanded by
/// cofactors (r is small).
pub fn scalar_profile(f: &MatPoly) -> ScalarProfile {
    let n = f.dim();
    let entries = f.entry_polys();
    // char matrix: y*delta_ij - entry_ij as BiPoly (x = First, y = Second)
    let mut m: Vec<BiPoly> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut e = -&BiPoly::from_unipoly(&entries[i * n + j], Var::First);
            if i == j {
                e = &e + &BiPoly::var(Var::Second);
            }
            m.push(e);
        }
    }
    let char_surface = bipoly_det(&m, n);
    // det f(xI) = (-1)^r * P(x, 0)
    let mut det_curve = char_surface.specialize(Var::Second, &Rat::zero());
    if n % 2 == 1 {
        det_curve = -&det_curve;
    }
    ScalarProfile {
        dim: n,
        poly_matrix: entries,
        char_surface,
        det_curve,
    }
}

fn bipoly_det(m: &[BiPoly], n: usize) -> BiPoly {
    fn det_rec(m: &[BiPoly], n: usize, rows: &[usize], cols: &[usize]) -> BiPoly {
        if rows.is_empty() {
            return BiPoly::one();
        }
        let r0 = rows[0];
        let mut acc = BiPoly::zero();
        for (k, &c) in cols.iter().enumerate() {
            let e = &m[r0 * n + c];
            if e.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&cc| cc != c).collect();
            let sub = det_rec(m, n, &rows[1..], &sub_cols);
            let term = e * &sub;
            acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }
    let idx: Vec<usize> = (0..n).collect();
    det_rec(m, n, &idx, &idx)
}

impl ScalarProfile {
    /// Trace of f(xI).
    pub fn trace_poly(&self) -> UniPoly {
        let n = self.dim;
        let mut t = UniPoly::zero();
        for i in 0..n {
            t = &t + &self.poly_matrix[i * n + i];
        }
        t
    }
}

/// Eigenvalues of f(xI) for r = 2, as algebraic functions of degree <= 2:
/// roots of y^2 - t(x) y + d(x).
pub fn eigen_functions_2x2(profile: &ScalarProfile) -> (AlgebraicFunction2, AlgebraicFunction2) {
    assert_eq!(profile.dim, 2, "eigenvalue functions need r = 2");
    let t = profile.trace_poly();
    let d = &profile.det_curve;
    // discriminant t^2 - 4d
    let disc = &(&t * &t) - &d.scale(&rat(4, 1));
    let half_t = RationalFunction::from_poly(t.scale(&rat(1, 2)));
    if disc.is_zero() {
        let mu = AlgebraicFunction2::rational(half_t);
        return (mu.clone(), mu);
    }
    let half = RationalFunction::constant(rat(1, 2));
    let mu1 = AlgebraicFunction2::new(half_t.clone(), half.clone(), disc.clone());
    let mu2 = AlgebraicFunction2::new(half_t, half.neg(), disc);
    (mu1, mu2)
}

/// Why a matrix failed the torsion test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonTorsionReason {
    Singular,
    EigenvalueNotUnity,
    NotDiagonalizable,
    OrderLimitReached(u64),
}

#[derive(Clone, Debug)]
pub struct TorsionReport {
    pub is_torsion: bool,
    pub order: Option<u64>,
    /// Squarefree polynomial over Q whose roots are the eigenvalues of the
    /// matrix under every embedding of its ring.
    pub eigen_min_poly: UniPoly,
    pub diagonalizable: bool,
    pub reason: Option<NonTorsionReason>,
}

/// Complete torsion decision for r <= 2 over any squarefree modulus; bounded
/// fallback (powers up to `limit`) for r > 2.
pub fn torsion_report(a: &RingMat, limit: u64) -> TorsionReport {
    let eigen_poly = absolute_eigen_poly(a);
    let not = |reason: NonTorsionReason, diag: bool| TorsionReport {
        is_torsion: false,
        order: None,
        eigen_min_poly: eigen_poly.clone(),
        diagonalizable: diag,
        reason: Some(reason),
    };

    // invertibility over every factor of the modulus
    let det = a.det();
    if !det.is_unit() {
        return not(NonTorsionReason::Singular, false);
    }

    if a.dim() <= 2 {
        let (parts, cof) = cyclotomic_part(&eigen_poly);
        if !cof.is_constant() {
            return not(NonTorsionReason::EigenvalueNotUnity, false);
        }
        // diagonalizability: where the discriminant vanishes the matrix must
        // be scalar
        let diag_ok = if a.dim() == 1 {
            true
        } else {
            let tr = a.trace();
            let disc = tr.mul(&tr).sub(&det.scale(&rat(4, 1)));
            let h = disc.modulus_gcd();
            if h.is_constant() {
                true
            } else {
                let scalar_there = [
                    a.at(0, 1).clone(),
                    a.at(1, 0).clone(),
                    a.at(0, 0).sub(a.at(1, 1)),
                ]
                .iter()
                .all(|e| e.value().divrem(&h).1.is_zero());
                scalar_there
            }
        };
        if !diag_ok {
            return not(NonTorsionReason::NotDiagonalizable, false);
        }
        let mut order = 1u64;
        for &n in parts.keys() {
            order = num_integer::lcm(order, n);
        }
        let verified = a.pow(order).is_identity();
        assert!(verified, "torsion order verification failed");
        return TorsionReport {
            is_torsion: true,
            order: Some(order),
            eigen_min_poly: eigen_poly,
            diagonalizable: true,
            reason: None,
        };
    }

    // r > 2: bounded search by exact powering
    let mut p = RingMat::identity(a.ring(), a.dim());
    for k in 1..=limit {
        p = p.mul(a);
        if p.is_identity() {
            return TorsionReport {
                is_torsion: true,
                order: Some(k),
                eigen_min_poly: eigen_poly,
                diagonalizable: true,
                reason: None,
            };
        }
    }
    not(NonTorsionReason::OrderLimitReached(limit), false)
}

/// Default order limit for the r > 2 fallback.
pub const TORSION_ORDER_LIMIT: u64 = 360;

/// Squarefree polynomial over Q vanishing on all eigenvalues of `a` across
/// all embeddings of its ring: squarefree part of Res_t(m(t), charpoly).
pub fn absolute_eigen_poly(a: &RingMat) -> UniPoly {
    let ring = a.ring();
    let m = ring.modulus();
    let charpoly = ring_charpoly(a); // coefficients are ring elements
    // assemble as BiPoly in (t = First, y = Second)
    let mut surface = BiPoly::zero();
    for (k, c) in charpoly.iter().enumerate() {
        let part = BiPoly::from_unipoly(c.value(), Var::First);
        let yk = BiPoly::term(Rat::one(), (0, k as u32));
        surface = &surface + &(&part * &yk);
    }
    let p = BiPoly::from_unipoly(m, Var::First);
    let res = resultant_elim(&p, &surface, Var::First).expect("modulus and monic charpoly");
    res.expect_unipoly(Var::Second)
        .expect("eigen polynomial is univariate")
        .squarefree_part()
}

/// Characteristic polynomial det(yI - A) over the ring, ascending in y.
pub fn ring_charpoly(a: &RingMat) -> Vec<RingElem> {
    let ring = a.ring();
    match a.dim() {
        1 => vec![a.at(0, 0).neg(), ring.one()],
        2 => {
            let tr = a.trace();
            let det = a.det();
            vec![det, tr.neg(), ring.one()]
        }
        _ => {
            // Faddeev–LeVerrier over the ring (exact; uses small rational
            // divisions only)
            let n = a.dim();
            let mut coeffs = vec![ring.zero(); n + 1];
            coeffs[n] = ring.one();
            let mut m = RingMat::zero(ring, n);
            let mut c = ring.one();
            for k in 1..=n {
                let mut am = a.mul(&m);
                for i in 0..n {
                    let v = am.at(i, i).add(&c);
                    am.set(i, i, v);
                }
                m = am;
                let t = a.mul(&m).trace();
                c = t.scale(&rat(-1, k as i64));
                coeffs[n - k] = c.clone();
            }
            coeffs
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::cyclotomic_poly;
    use crate::rat::rat_int;

    fn pl(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(c)
    }

    fn remark_pair() -> (MatPoly, MatPoly) {
        // f(Z) = Z^2 + [[1,0],[0,-1]] Z + [[0,1],[0,0]]
        let f = MatPoly::new(
            2,
            vec![
                RatMat::from_i64s(2, &[0, 1, 0, 0]),
                RatMat::from_i64s(2, &[1, 0, 0, -1]),
                RatMat::identity(2),
            ],
        )
        .unwrap();
        // g(Z) = Z^2 + [[0,0],[1,-1]]
        let g = MatPoly::new(
            2,
            vec![RatMat::from_i64s(2, &[0, 0, 1, -1]), RatMat::zero(2), RatMat::identity(2)],
        )
        .unwrap();
        (f, g)
    }

    #[test]
    fn profile_of_printed_example() {
        let (f, _) = remark_pair();
        let p = scalar_profile(&f);
        // char surface = (y - x^2 - x)(y - x^2 + x)
        let x = BiPoly::var(Var::First);
        let y = BiPoly::var(Var::Second);
        let x2 = &x * &x;
        let m1 = &(&y - &x2) - &x;
        let m2 = &(&y - &x2) + &x;
        assert_eq!(p.char_surface, &m1 * &m2);
        // det curve = x^2 (x^2 - 1)
        assert_eq!(p.det_curve, &pl(&[0, 0, 1]) * &pl(&[-1, 0, 1]));
    }

    #[test]
    fn profile_of_identity_poly() {
        let f = MatPoly::z(2);
        let p = scalar_profile(&f);
        let x = BiPoly::var(Var::First);
        let y = BiPoly::var(Var::Second);
        let lin = &y - &x;
        assert_eq!(p.char_surface, &lin * &lin);
        assert_eq!(p.det_curve, pl(&[0, 0, 1]));
    }

    #[test]
    fn eigen_functions_of_printed_example() {
        let (f, _) = remark_pair();
        let p = scalar_profile(&f);
        let (m1, m2) = eigen_functions_2x2(&p);
        // x(x+1) and x(x-1)
        assert!(m1.is_rational() && m2.is_rational());
        let vals: Vec<&UniPoly> = vec![m1.as_rational().unwrap().num(), m2.as_rational().unwrap().num()];
        let want1 = pl(&[0, 1, 1]);
        let want2 = pl(&[0, -1, 1]);
        assert!(
            (vals[0] == &want1 && vals[1] == &want2)
                || (vals[0] == &want2 && vals[1] == &want1)
        );
    }

    #[test]
    fn eigen_functions_double_root() {
        let p = scalar_profile(&MatPoly::z(2));
        let (m1, m2) = eigen_functions_2x2(&p);
        assert_eq!(m1, m2);
        assert_eq!(m1.as_rational().unwrap(), &RationalFunction::x());
    }

    #[test]
    fn eigen_product_is_det_and_sum_is_trace() {
        let (f, g) = remark_pair();
        for fp in [f, g] {
            let p = scalar_profile(&fp);
            let (m1, m2) = eigen_functions_2x2(&p);
            let prod = m1.mul(&m2).unwrap();
            assert!(prod.is_rational());
            assert_eq!(
                prod.as_rational().unwrap(),
                &RationalFunction::from_poly(p.det_curve.clone())
            );
            let a_sum = m1.a().add(m2.a());
            assert_eq!(a_sum, RationalFunction::from_poly(p.trace_poly()));
        }
    }

    #[test]
    fn eval_at_matrix_cases() {
        // f(Z) = Z^2 at nilpotent -> zero
        let f = MatPoly::new(2, vec![RatMat::zero(2), RatMat::zero(2), RatMat::identity(2)]).unwrap();
        let q = QRing::rationals();
        let a = RatMat::from_i64s(2, &[0, 1, 0, 0]).lift(&q);
        let out = f.eval_at_matrix(&a).unwrap();
        assert!(out.sub(&RingMat::zero(&q, 2)) == RingMat::zero(&q, 2));

        // f(Z) = C Z with C = [[0,1],[0,0]], A = diag(1,2) -> [[0,2],[0,0]]
        let f = MatPoly::new(2, vec![RatMat::zero(2), RatMat::from_i64s(2, &[0, 1, 0, 0])]).unwrap();
        let a = RatMat::from_i64s(2, &[1, 0, 0, 2]).lift(&q);
        let out = f.eval_at_matrix(&a).unwrap();
        assert_eq!(out, RatMat::from_i64s(2, &[0, 2, 0, 0]).lift(&q));

        // f(Z) = Z - C over a cyclotomic ring: entrywise subtraction
        let c = RatMat::from_i64s(2, &[0, 1, 0, 0]);
        let f = MatPoly::z_minus(&c);
        let r5 = QRing::cyclotomic(5);
        let lam = r5.generator();
        let mut a = RingMat::zero(&r5, 2);
        a.set(0, 0, lam.clone());
        a.set(0, 1, r5.from_rat(rat_int(-1)));
        a.set(1, 1, r5.one());
        let out = f.eval_at_matrix(&a).unwrap();
        let mut want = RingMat::zero(&r5, 2);
        want.set(0, 0, lam);
        want.set(0, 1, r5.from_rat(rat_int(-2)));
        want.set(1, 1, r5.one());
        assert_eq!(out, want);

        // dimension mismatch errors
        let bad = RatMat::identity(3).lift(&q);
        assert!(f.eval_at_matrix(&bad).is_err());
    }

    #[test]
    fn torsion_rotation_matrix() {
        let q = QRing::rationals();
        let a = RatMat::from_i64s(2, &[0, -1, 1, 0]).lift(&q);
        let rep = torsion_report(&a, TORSION_ORDER_LIMIT);
        assert!(rep.is_torsion);
        assert_eq!(rep.order, Some(4));
        assert!(rep.diagonalizable);
    }

    #[test]
    fn torsion_rejects_unipotent() {
        let q = QRing::rationals();
        let a = RatMat::from_i64s(2, &[1, 1, 0, 1]).lift(&q);
        let rep = torsion_report(&a, TORSION_ORDER_LIMIT);
        assert!(!rep.is_torsion);
        assert_eq!(rep.reason, Some(NonTorsionReason::NotDiagonalizable));
    }

    #[test]
    fn torsion_rejects_singular() {
        let q = QRing::rationals();
        let a = RatMat::from_i64s(2, &[1, 0, 0, 0]).lift(&q);
        let rep = torsion_report(&a, TORSION_ORDER_LIMIT);
        assert!(!rep.is_torsion);
        assert_eq!(rep.reason, Some(NonTorsionReason::Singular));
    }

    #[test]
    fn torsion_order_5_over_cyclotomic() {
        // [[lam, -1], [0, 1]] over Q[lam]/Phi_5 has order 5
        let r5 = QRing::cyclotomic(5);
        let mut a = RingMat::zero(&r5, 2);
        a.set(0, 0, r5.generator());
        a.set(0, 1, r5.from_rat(rat_int(-1)));
        a.set(1, 1, r5.one());
        let rep = torsion_report(&a, TORSION_ORDER_LIMIT);
        assert!(rep.is_torsion);
        assert_eq!(rep.order, Some(5));
        // minimality: no proper divisor works
        assert!(!a.pow(1).is_identity());
        let _ = cyclotomic_poly(5);
    }

    #[test]
    fn torsion_order_is_minimal() {
        let q = QRing::rationals();
        // diag(-1, 1): order 2
        let a = RatMat::from_i64s(2, &[-1, 0, 0, 1]).lift(&q);
        let rep = torsion_report(&a, TORSION_ORDER_LIMIT);
        assert_eq!(rep.order, Some(2));
    }

    #[test]
    fn det_curve_matches_direct_det() {
        let (f, g) = remark_pair();
        for fp in [f, g] {
            let p = scalar_profile(&fp);
            for u in [-3i64, -1, 0, 1, 2, 5] {
                let uu = rat_int(u);
                // evaluate f(uI) and take its determinant directly
                let q = QRing::rationals();
                let a = RatMat::scalar(2, uu.clone()).lift(&q);
                let fu = fp.eval_at_matrix(&a).unwrap();
                assert_eq!(fu.det().as_rational().unwrap(), p.det_curve.eval(&uu));
            }
        }
    }

    #[test]
    fn charpoly_3x3_faddeev() {
        let q = QRing::rationals();
        let a = RatMat::from_i64s(3, &[1, 2, 0, 0, 3, 1, 1, 0, 1]).lift(&q);
        let cp = ring_charpoly(&a);
        // det(yI - A) expanded by hand: y^3 - 5y^2 + 7y - 5
        let want = [rat_int(-5), rat_int(7), rat_int(-5), rat_int(1)];
        for (c, w) in cp.iter().zip(want) {
            assert_eq!(c.as_rational().unwrap(), w);
        }
    }
}
