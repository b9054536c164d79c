//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored in ascending order of degree; the zero polynomial
//! is the empty vector. Gcds come back monic so equality tests are canonical.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rat::{format_rat, parse_rat, Rat};
use crate::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::new(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        UniPoly::new(vec![Rat::zero(), Rat::one()])
    }

    /// `c * x^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        UniPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| crate::rat::rat_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with zero mapped to 0 (handy in bound arithmetic).
    pub fn deg_or0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Leading coefficient. Panics on the zero polynomial.
    pub fn lc(&self) -> &Rat {
        self.coeffs.last().expect("leading coefficient of zero")
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    /// Make monic; returns `(monic, unit)` with `self = unit * monic`.
    pub fn monic(&self) -> (Self, Rat) {
        if self.is_zero() {
            return (UniPoly::zero(), Rat::one());
        }
        let unit = self.lc().clone();
        (self.scale(&unit.clone().recip()), unit)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Quotient and remainder; panics if `div` is zero.
    pub fn divrem(&self, div: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree().unwrap();
        if self.degree().map_or(true, |d| d < dd) {
            return (UniPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dq = rem.len() - 1 - dd;
        let mut quot = vec![Rat::zero(); dq + 1];
        let inv_lc = div.lc().clone().recip();
        for k in (0..=dq).rev() {
            let c = &rem[k + dd] * &inv_lc;
            if !c.is_zero() {
                for (i, dc) in div.coeffs.iter().enumerate() {
                    let t = dc * &c;
                    rem[k + i] -= t;
                }
            }
            quot[k] = c;
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, div: &UniPoly) -> UniPoly {
        let (q, r) = self.divrem(div);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn pow(&self, mut e: usize) -> UniPoly {
        let mut acc = UniPoly::one();
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

    /// Composition `self(inner)`.
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// Monic gcd. `gcd(0, 0)` is a precondition violation.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        assert!(
            !(self.is_zero() && other.is_zero()),
            "gcd(0, 0) is undefined"
        );
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic().0
    }

    /// Extended gcd: returns `(g, u, v)` with `u*self + v*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (UniPoly::zero(), s0, t0);
        }
        let (g, unit) = r0.monic();
        let inv = unit.recip();
        (g, s0.scale(&inv), t0.scale(&inv))
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_constant() {
            return true;
        }
        self.gcd(&self.derivative()).is_constant()
    }

    /// Squarefree part: product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> UniPoly {
        assert!(!self.is_zero());
        if self.is_constant() {
            return UniPoly::one();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g.scale(&self.lc().clone().recip()).monic().0)
            .monic()
            .0
    }

    /// Yun decomposition: write `self = unit * prod a_i^i` with the `a_i`
    /// monic, squarefree and pairwise coprime. Returns `(unit, [a_1, ...])`.
    pub fn squarefree_factors(&self) -> (Rat, Vec<UniPoly>) {
        assert!(!self.is_zero());
        let (p, unit) = self.monic();
        if p.is_constant() {
            return (unit, Vec::new());
        }
        let dp = p.derivative();
        let mut g = p.gcd(&dp);
        let mut c = p.div_exact(&g);
        let mut d = &dp.div_exact(&g) - &c.derivative();
        let mut out = Vec::new();
        loop {
            if c.is_constant() {
                break;
            }
            let a = c.gcd(&if d.is_zero() { c.clone() } else { d.clone() });
            out.push(a.clone());
            c = c.div_exact(&a);
            d = &d.div_exact(&a) - &c.derivative();
            let _ = &mut g;
        }
        (unit, out)
    }

    /// Write `self = unit * s * e^2` with `s`, `e` monic and `s` squarefree.
    pub fn square_decompose(&self) -> (Rat, UniPoly, UniPoly) {
        let (unit, factors) = self.squarefree_factors();
        let mut s = UniPoly::one();
        let mut e = UniPoly::one();
        for (i, a) in factors.iter().enumerate() {
            let m = i + 1;
            if m % 2 == 1 {
                s = &s * a;
            }
            e = &e * &a.pow(m / 2);
        }
        (unit, s, e)
    }

    /// Content as a rational: `self = content * primitive` with `primitive`
    /// having coprime integer coefficients and positive leading coefficient.
    pub fn content_primitive(&self) -> (Rat, UniPoly) {
        assert!(!self.is_zero());
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = num_integer::gcd(g, v.clone());
        }
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = UniPoly::new(ints.iter().map(|v| Rat::from_integer(v / &g)).collect());
        (Rat::new(g, den), prim)
    }

    /// Resultant of two univariate polynomials (Euclidean algorithm with
    /// leading-coefficient bookkeeping). Zero if either input is zero.
    pub fn resultant(&self, other: &UniPoly) -> Rat {
        if self.is_zero() || other.is_zero() {
            return Rat::zero();
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut res = Rat::one();
        let mut sign_flips = 0usize;
        loop {
            let da = a.degree().unwrap();
            let db = b.degree().unwrap();
            if db == 0 {
                res *= crate::rat::rat_pow(b.lc(), da as i64);
                break;
            }
            if da < db {
                std::mem::swap(&mut a, &mut b);
                sign_flips += da * db;
                continue;
            }
            let (_, r) = a.divrem(&b);
            if r.is_zero() {
                return Rat::zero();
            }
            let dr = r.degree().unwrap();
            res *= crate::rat::rat_pow(b.lc(), (da - dr) as i64);
            sign_flips += da * db;
            a = b;
            b = r;
        }
        if sign_flips % 2 == 1 {
            res = -res;
        }
        res
    }

    /// Exact Lagrange interpolation through distinct points.
    pub fn interpolate(points: &[(Rat, Rat)]) -> UniPoly {
        // Newton divided differences.
        let n = points.len();
        assert!(n > 0);
        let xs: Vec<&Rat> = points.iter().map(|(x, _)| x).collect();
        let mut coef: Vec<Rat> = points.iter().map(|(_, y)| y.clone()).collect();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = &coef[i] - &coef[i - 1];
                let den = xs[i] - xs[i - j];
                coef[i] = num / den;
            }
        }
        let mut poly = UniPoly::zero();
        for i in (0..n).rev() {
            let lin = UniPoly::new(vec![-xs[i].clone(), Rat::one()]);
            poly = &(&poly * &lin) + &UniPoly::constant(coef[i].clone());
        }
        poly
    }

    /// Parse the canonical text form, e.g. `"x^2 - 3/2*x + 1"`.
    pub fn parse(src: &str, var: &str) -> Result<UniPoly, Error> {
        let mut acc = UniPoly::zero();
        let s = src.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut rest = s;
        let mut sign = 1i64;
        // leading sign
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        }
        loop {
            // read one term up to the next top-level +/-
            let mut idx = rest.len();
            for (i, ch) in rest.char_indices() {
                if (ch == '+' || ch == '-') && i > 0 {
                    // not part of an exponent like ^-2 (we don't allow those anyway)
                    idx = i;
                    break;
                }
            }
            let (term, tail) = rest.split_at(idx);
            let term = term.trim();
            acc = &acc + &Self::parse_term(term, var, sign)?;
            if tail.is_empty() {
                break;
            }
            sign = if tail.starts_with('-') { -1 } else { 1 };
            rest = tail[1..].trim_start();
            if rest.is_empty() {
                return Err(Error::Parse(format!("dangling sign in {src:?}")));
            }
        }
        Ok(acc)
    }

    fn parse_term(term: &str, var: &str, sign: i64) -> Result<UniPoly, Error> {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::Parse("empty term".into()));
        }
        let (coeff_str, var_part) = match term.find(|c: char| c.is_alphabetic()) {
            None => (term, ""),
            Some(0) => ("", term),
            Some(i) => {
                let (c, v) = term.split_at(i);
                (c.trim().trim_end_matches('*').trim(), v.trim())
            }
        };
        let coeff = if coeff_str.is_empty() {
            Rat::one()
        } else {
            parse_rat(coeff_str)?
        };
        let exp = if var_part.is_empty() {
            0usize
        } else if var_part == var {
            1
        } else if let Some(e) = var_part.strip_prefix(var).and_then(|r| r.strip_prefix('^')) {
            e.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad exponent in term {term:?}")))?
        } else {
            return Err(Error::Parse(format!("unknown variable in term {term:?}")));
        };
        let signed = if sign < 0 { -coeff } else { coeff };
        Ok(UniPoly::monomial(signed, exp))
    }

    /// Canonical text form with the given variable name.
    pub fn to_text(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => out.push_str(&format_rat(&mag)),
                (_, false) => {
                    out.push_str(&format_rat(&mag));
                    out.push('*');
                }
                (_, true) => {}
            }
            if k >= 1 {
                out.push_str(var);
                if k > 1 {
                    out.push_str(&format!("^{k}"));
                }
            }
        }
        out
    }
}

/// Monic gcd per the library contract; exposed at module level because other
/// modules phrase their postconditions in terms of it.
pub fn uni_gcd(p: &UniPoly, q: &UniPoly) -> UniPoly {
    p.gcd(q)
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text("x"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({})", self.to_text("x"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
            if let Some(r) = rhs.coeffs.get(i) {
                c += r;
            }
            out.push(c);
        }
        UniPoly::new(out)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}
