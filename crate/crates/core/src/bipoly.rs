//! Sparse bivariate polynomials and bivariate resultants.
//!
//! A `BiPoly` has two variable slots. Which letters they stand for is up to
//! the caller; resultant elimination reads its inputs as polynomials in the
//! eliminated slot with coefficients in the other one.
//!
//! `resultant_elim` is the production route (evaluation at integer points,
//! exact interpolation). `resultant_sylvester` expands the Sylvester
//! determinant directly and exists as the slow cross-check.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rat::{format_rat, rat_int, Rat};
use crate::unipoly::UniPoly;
use crate::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    First,
    Second,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::First => Var::Second,
            Var::Second => Var::First,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        BiPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        BiPoly::term(Rat::one(), if v == Var::First { (1, 0) } else { (0, 1) })
    }

    pub fn term(c: Rat, exps: (u32, u32)) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        BiPoly { terms }
    }

    /// Embed a univariate polynomial into the given slot.
    pub fn from_unipoly(p: &UniPoly, v: Var) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                let e = match v {
                    Var::First => (k as u32, 0),
                    Var::Second => (0, k as u32),
                };
                terms.insert(e, c.clone());
            }
        }
        BiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn insert_add(&mut self, exps: (u32, u32), c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn deg(&self, v: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(i, j)| if v == Var::First { i } else { j })
            .max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, v)| (e, v * c))
                .collect(),
        }
    }

    pub fn swap_vars(&self) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), v)| ((j, i), v.clone()))
                .collect(),
        }
    }

    /// Coefficients with respect to `v`: index `k` holds the (univariate in
    /// the other slot) coefficient of `v^k`.
    pub fn coeffs_wrt(&self, v: Var) -> Vec<UniPoly> {
        let d = match self.deg(v) {
            None => return Vec::new(),
            Some(d) => d as usize,
        };
        let mut rows: Vec<Vec<Rat>> = vec![Vec::new(); d + 1];
        for (&(i, j), c) in &self.terms {
            let (k, other) = match v {
                Var::First => (i as usize, j as usize),
                Var::Second => (j as usize, i as usize),
            };
            if rows[k].len() <= other {
                rows[k].resize(other + 1, Rat::zero());
            }
            rows[k][other] = c.clone();
        }
        rows.into_iter().map(UniPoly::new).collect()
    }

    /// Rebuild from `coeffs_wrt(v)` output.
    pub fn assemble(coeffs: &[UniPoly], v: Var) -> Self {
        let mut out = BiPoly::zero();
        for (k, p) in coeffs.iter().enumerate() {
            for (m, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let e = match v {
                    Var::First => (k as u32, m as u32),
                    Var::Second => (m as u32, k as u32),
                };
                out.insert_add(e, c.clone());
            }
        }
        out
    }

    /// Substitute a rational for `v`, leaving a univariate polynomial in the
    /// other slot.
    pub fn specialize(&self, v: Var, value: &Rat) -> UniPoly {
        let mut acc = UniPoly::zero();
        for (k, coeff) in self.coeffs_wrt(v).into_iter().enumerate() {
            acc = &acc + &coeff.scale(&crate::rat::rat_pow(value, k as i64));
        }
        acc
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (&(i, j), c) in &self.terms {
            acc += c
                * crate::rat::rat_pow(x, i as i64)
                * crate::rat::rat_pow(y, j as i64);
        }
        acc
    }

    /// If only the given slot occurs, extract the univariate polynomial.
    pub fn expect_unipoly(&self, v: Var) -> Option<UniPoly> {
        if self.deg(v.other()).unwrap_or(0) > 0 {
            return None;
        }
        let mut coeffs = Vec::new();
        for (&(i, j), c) in &self.terms {
            let k = if v == Var::First { i } else { j } as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rat::zero());
            }
            coeffs[k] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    /// Exact division (panics if not divisible): repeated lex leading-term
    /// elimination, valid because a single divisor is its own Groebner basis.
    pub fn div_exact(&self, div: &BiPoly) -> BiPoly {
        assert!(!div.is_zero(), "division by zero polynomial");
        let (&dlead, dcoeff) = div.terms.iter().next_back().expect("nonzero");
        let mut rem = self.clone();
        let mut quot = BiPoly::zero();
        while !rem.is_zero() {
            let (&(i, j), c) = rem.terms.iter().next_back().unwrap();
            assert!(
                i >= dlead.0 && j >= dlead.1,
                "inexact bivariate division"
            );
            let qexp = (i - dlead.0, j - dlead.1);
            let qc = c / dcoeff;
            let t = BiPoly::term(qc, qexp);
            rem = &rem - &(&t * div);
            quot = &quot + &t;
        }
        quot
    }

    pub fn pow(&self, mut e: usize) -> BiPoly {
        let mut acc = BiPoly::one();
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    pub fn to_text(&self, v1: &str, v2: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        use num_traits::Signed;
        let mut out = String::new();
        for (&(i, j), c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut vars = String::new();
            if i > 0 {
                vars.push_str(v1);
                if i > 1 {
                    vars.push_str(&format!("^{i}"));
                }
            }
            if j > 0 {
                if !vars.is_empty() {
                    vars.push('*');
                }
                vars.push_str(v2);
                if j > 1 {
                    vars.push_str(&format!("^{j}"));
                }
            }
            if vars.is_empty() {
                out.push_str(&format_rat(&mag));
            } else if mag.is_one() {
                out.push_str(&vars);
            } else {
                out.push_str(&format_rat(&mag));
                out.push('*');
                out.push_str(&vars);
            }
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text("y1", "y2"))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({})", self.to_text("y1", "y2"))
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.insert_add(e, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e, -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(d, e), f) in &rhs.terms {
                out.insert_add((a + d, b + e), c * f);
            }
        }
        out
    }
}

/// Resultant eliminating `elim` from both inputs. The result lives in a
/// `BiPoly` whose first slot is the surviving variable of `p` and whose
/// second slot is the surviving variable of `q`.
///
/// Computed by specializing the surviving variables at integer points where
/// neither leading coefficient vanishes, taking univariate resultants, and
/// interpolating exactly; the point count comes from the Sylvester degree
/// bound.
pub fn resultant_elim(p: &BiPoly, q: &BiPoly, elim: Var) -> Result<BiPoly, Error> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::Domain("zero polynomial has no resultant".into()));
    }
    let dp = p.deg(elim).unwrap_or(0) as usize;
    let dq = q.deg(elim).unwrap_or(0) as usize;
    if dp == 0 && dq == 0 {
        return Err(Error::Domain(
            "resultant needs positive degree in the eliminated variable".into(),
        ));
    }
    // Degenerate convention: res(p, c) = c^{deg p} when c is free of the
    // eliminated variable. Survivors keep their slots (p -> first, q -> second).
    if dq == 0 {
        let c = BiPoly::from_unipoly(&q.coeffs_wrt(elim)[0], Var::Second);
        return Ok(c.pow(dp));
    }
    if dp == 0 {
        let c = BiPoly::from_unipoly(&p.coeffs_wrt(elim)[0], Var::First);
        return Ok(c.pow(dq));
    }

    let pc = p.coeffs_wrt(elim);
    let qc = q.coeffs_wrt(elim);
    let p_other_deg = pc.iter().map(|c| c.deg_or0()).max().unwrap_or(0);
    let q_other_deg = qc.iter().map(|c| c.deg_or0()).max().unwrap_or(0);
    // Sylvester bound: p-rows appear dq times, q-rows dp times.
    let b1 = dq * p_other_deg; // degree bound in p's surviving variable
    let b2 = dp * q_other_deg; // degree bound in q's surviving variable

    let p_lc = &pc[dp];
    let q_lc = &qc[dq];
    let points1 = good_points(p_lc, b1 + 1);
    let points2 = good_points(q_lc, b2 + 1);

    // Specialize p at each a, q at each b, take scalar resultants, then
    // interpolate in the second variable and finally in the first.
    let spec_p: Vec<UniPoly> = points1
        .iter()
        .map(|a| specialize_coeffs(&pc, a))
        .collect();
    let spec_q: Vec<UniPoly> = points2
        .iter()
        .map(|b| specialize_coeffs(&qc, b))
        .collect();

    let mut rows: Vec<UniPoly> = Vec::with_capacity(points1.len());
    for pa in &spec_p {
        let vals: Vec<(Rat, Rat)> = points2
            .iter()
            .zip(&spec_q)
            .map(|(b, qb)| (b.clone(), pa.resultant(qb)))
            .collect();
        rows.push(UniPoly::interpolate(&vals));
    }
    // rows[i] is R(a_i, w2); interpolate each w2-coefficient across a.
    let mut cols: Vec<UniPoly> = Vec::with_capacity(b2 + 1);
    for j in 0..=b2 {
        let pts: Vec<(Rat, Rat)> = points1
            .iter()
            .zip(&rows)
            .map(|(a, r)| (a.clone(), r.coeff(j)))
            .collect();
        cols.push(UniPoly::interpolate(&pts));
    }
    // cols[j] is the coefficient (in w1) of w2^j.
    Ok(BiPoly::assemble(&cols, Var::Second))
}

fn specialize_coeffs(coeffs: &[UniPoly], at: &Rat) -> UniPoly {
    UniPoly::new(coeffs.iter().map(|c| c.eval(at)).collect())
}

fn good_points(lc: &UniPoly, count: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(count);
    let mut k = 0i64;
    while out.len() < count {
        let x = rat_int(k);
        if !lc.eval(&x).is_zero() {
            out.push(x);
        }
        k += 1;
    }
    out
}

/// Slow reference: expand the Sylvester determinant over `BiPoly` entries by
/// cofactor expansion. Used to cross-check `resultant_elim` on small inputs.
pub fn resultant_sylvester(p: &BiPoly, q: &BiPoly, elim: Var) -> Result<BiPoly, Error> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::Domain("zero polynomial has no resultant".into()));
    }
    let dp = p.deg(elim).unwrap_or(0) as usize;
    let dq = q.deg(elim).unwrap_or(0) as usize;
    if dp == 0 || dq == 0 {
        return resultant_elim(p, q, elim);
    }
    let pc: Vec<BiPoly> = p
        .coeffs_wrt(elim)
        .into_iter()
        .map(|u| BiPoly::from_unipoly(&u, Var::First))
        .collect();
    let qc: Vec<BiPoly> = q
        .coeffs_wrt(elim)
        .into_iter()
        .map(|u| BiPoly::from_unipoly(&u, Var::Second))
        .collect();
    let n = dp + dq;
    let mut m: Vec<Vec<BiPoly>> = vec![vec![BiPoly::zero(); n]; n];
    for row in 0..dq {
        for (k, c) in pc.iter().enumerate() {
            m[row][row + dp - k] = c.clone();
        }
    }
    for row in 0..dp {
        for (k, c) in qc.iter().enumerate() {
            m[dq + row][row + dq - k] = c.clone();
        }
    }
    Ok(det_cofactor(&m))
}

fn det_cofactor(m: &[Vec<BiPoly>]) -> BiPoly {
    let n = m.len();
    if n == 0 {
        return BiPoly::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = BiPoly::zero();
    for (col, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<BiPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != col)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let sub = det_cofactor(&minor);
        let signed = if col % 2 == 0 { sub } else { -&sub };
        acc = &acc + &(entry * &signed);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    fn y1() -> BiPoly {
        BiPoly::var(Var::First)
    }
    fn y2() -> BiPoly {
        BiPoly::var(Var::Second)
    }

    #[test]
    fn elimination_of_linear_root() {
        // Res_x(y1 - x, y2 - x^2) = y2 - y1^2: x sits in the first slot of
        // each input, the survivors land in (first, second) of the result.
        let x = BiPoly::var(Var::First);
        let w = BiPoly::var(Var::Second);
        let p = &w - &x;
        let q = &w - &(&x * &x);
        let r = resultant_elim(&p, &q, Var::First).unwrap();
        let expect = &y2() - &(&y1() * &y1());
        assert_eq!(r, expect);
        let r2 = resultant_sylvester(&p, &q, Var::First).unwrap();
        assert_eq!(r2, expect);
    }

    #[test]
    fn interp_matches_sylvester_randomish() {
        // a couple of fixed small cases with awkward leading coefficients
        let x = BiPoly::var(Var::First);
        let w = BiPoly::var(Var::Second);
        let p = &(&(&w * &x) * &x) + &(&x + &BiPoly::one()); // w*x^2 + x + 1 (lc vanishes at w=0)
        let q = &(&x * &x) - &w; // x^2 - w
        let a = resultant_elim(&p, &q, Var::First).unwrap();
        let b = resultant_sylvester(&p, &q, Var::First).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn swap_antisymmetry() {
        let x = BiPoly::var(Var::First);
        let w = BiPoly::var(Var::Second);
        let p = &(&x * &x) - &w; // deg 2
        let q = &x - &(&w * &w); // deg 1
        let r1 = resultant_elim(&p, &q, Var::First).unwrap();
        let r2 = resultant_elim(&q, &p, Var::First).unwrap();
        // sign (-1)^(2*1) = +1, but slots swap
        assert_eq!(r1, r2.swap_vars());
    }

    #[test]
    fn specialization_consistency() {
        // Res specialised at the survivor equals the univariate resultant of
        // the specialised inputs when leading coefficients survive.
        let x = BiPoly::var(Var::First);
        let w = BiPoly::var(Var::Second);
        let p = &(&(&x * &x) * &w) + &(&x - &BiPoly::one());
        let q = &(&x * &x) + &(&w - &BiPoly::constant(rat_int(3)));
        let r = resultant_elim(&p, &q, Var::First).unwrap();
        for (u, v) in [(1, 2), (2, 5), (-1, 3), (4, -7)] {
            let (u, v) = (rat_int(u), rat_int(v));
            let pu = p.specialize(Var::Second, &u);
            let qv = q.specialize(Var::Second, &v);
            if pu.degree() == p.deg(Var::First).map(|d| d as usize)
                && qv.degree() == q.deg(Var::First).map(|d| d as usize)
            {
                assert_eq!(r.eval(&u, &v), pu.resultant(&qv));
            }
        }
    }

    #[test]
    fn div_exact_roundtrip() {
        let a = &(&y1() * &y1()) - &(&y2() * &y2());
        let b = &y1() - &y2();
        let q = a.div_exact(&b);
        assert_eq!(&q * &b, a);
    }

    #[test]
    fn display_form() {
        let f = &(&(&y1() * &y1()) - &y2()) + &BiPoly::constant(rat_int(3));
        assert_eq!(f.to_text("y1", "y2"), "y1^2 - y2 + 3");
    }
}
