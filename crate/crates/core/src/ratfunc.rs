//! Rational functions and algebraic functions of degree at most two.
//!
//! An `AlgebraicFunction2` is `a(x) + b(x) * sqrt(D(x))` with a canonical
//! radicand: an integer polynomial, primitive up to a squarefree integer
//! content that carries the sign. Two such functions generate the same
//! quadratic extension of Q(x) exactly when their canonical radicands are
//! equal, which is what the independence deciders key on.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::intfactor::squarefree_rational_part;
use crate::rat::{format_rat, rational_sqrt, Rat};
use crate::unipoly::UniPoly;
use crate::Error;

/// num/den with gcd(num, den) constant and den monic.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: UniPoly,
    den: UniPoly,
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num.to_text("x"), self.den.to_text("x"))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num.to_text("x"))
        } else {
            write!(f, "({}) / ({})", self.num.to_text("x"), self.den.to_text("x"))
        }
    }
}

impl RationalFunction {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RationalFunction {
                num,
                den: UniPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let (den, unit) = den.monic();
        RationalFunction {
            num: num.scale(&unit.recip()),
            den,
        }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RationalFunction {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }

    pub fn x() -> Self {
        Self::from_poly(UniPoly::x())
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// deg num - deg den: the order of vanishing at infinity, negated.
    pub fn degree_balance(&self) -> i64 {
        self.num.deg_or0() as i64 - self.den.deg_or0() as i64
    }

    pub fn add(&self, o: &Self) -> Self {
        RationalFunction::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        RationalFunction::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn div(&self, o: &Self) -> Self {
        assert!(!o.is_zero(), "division by zero function");
        RationalFunction::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero());
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> Self {
        if e == 0 {
            return Self::one();
        }
        let base = if e < 0 { self.recip() } else { self.clone() };
        let mut acc = Self::one();
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Self {
        RationalFunction::new(self.num.scale(c), self.den.clone())
    }
}

/// A canonical radicand together with the multiplier that was factored out:
/// `sqrt(D) = multiplier * sqrt(radicand)`.
pub struct CanonicalRadicand {
    pub radicand: UniPoly,
    pub multiplier: RationalFunction,
    /// True when D was a perfect square to begin with (radicand 1).
    pub is_square: bool,
}

/// Canonicalize a nonzero radicand: split off polynomial square factors and
/// the square part of the rational content, leaving a primitive integer
/// polynomial scaled by a squarefree (signed) integer.
pub fn canonical_radicand(d: &UniPoly) -> CanonicalRadicand {
    assert!(!d.is_zero(), "zero radicand");
    let (unit, s, e) = d.square_decompose(); // d = unit * s * e^2, s squarefree monic
    let (content, prim) = if s.is_one() {
        (Rat::one(), UniPoly::one())
    } else {
        s.content_primitive()
    };
    // d = (unit * content) * prim * e^2, prim primitive integer squarefree
    let c = unit * content;
    let (sf_int, t) = squarefree_rational_part(&c); // c = sf_int * t^2
    let radicand = prim.scale(&Rat::from_integer(sf_int.clone()));
    let multiplier = RationalFunction::from_poly(e.scale(&t));
    let is_square = radicand.is_one();
    CanonicalRadicand {
        radicand,
        multiplier,
        is_square,
    }
}

/// `a + b*sqrt(radicand)` over Q(x); radicand canonical (see module docs).
/// `b = 0` represents a plain rational function and the radicand is then 1.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraicFunction2 {
    a: RationalFunction,
    b: RationalFunction,
    radicand: UniPoly,
}

impl fmt::Debug for AlgebraicFunction2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgebraicFunction2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(
                f,
                "{} + ({}) * sqrt({})",
                self.a,
                self.b,
                self.radicand.to_text("x")
            )
        }
    }
}

impl AlgebraicFunction2 {
    /// Build from raw parts; the radicand is canonicalized and its square
    /// part absorbed into `b`.
    pub fn new(a: RationalFunction, b: RationalFunction, radicand: UniPoly) -> Self {
        if b.is_zero() {
            return Self::rational(a);
        }
        let canon = canonical_radicand(&radicand);
        let b = b.mul(&canon.multiplier);
        if canon.is_square {
            // sqrt collapsed to a rational function
            return Self::rational(a.add(&b));
        }
        AlgebraicFunction2 {
            a,
            b,
            radicand: canon.radicand,
        }
    }

    pub fn rational(a: RationalFunction) -> Self {
        AlgebraicFunction2 {
            a,
            b: RationalFunction::zero(),
            radicand: UniPoly::one(),
        }
    }

    pub fn a(&self) -> &RationalFunction {
        &self.a
    }

    pub fn b(&self) -> &RationalFunction {
        &self.b
    }

    pub fn radicand(&self) -> &UniPoly {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&RationalFunction> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Pure multiple of the square root (a = 0, b != 0).
    pub fn is_pure(&self) -> bool {
        self.a.is_zero() && !self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Constant means: rational constant, or (over a constant radicand) a
    /// quadratic number.
    pub fn is_constant(&self) -> bool {
        if self.b.is_zero() {
            return self.a.is_constant();
        }
        self.a.is_constant() && self.b.is_constant() && self.radicand.is_constant()
    }

    pub fn conjugate(&self) -> Self {
        AlgebraicFunction2 {
            a: self.a.clone(),
            b: self.b.neg(),
            radicand: self.radicand.clone(),
        }
    }

    /// Norm to Q(x): self * conjugate = a^2 - b^2 D.
    pub fn norm(&self) -> RationalFunction {
        let d = RationalFunction::from_poly(self.radicand.clone());
        self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul(&d))
    }

    fn same_field(&self, o: &Self) -> Result<(), Error> {
        if !self.b.is_zero() && !o.b.is_zero() && self.radicand != o.radicand {
            return Err(Error::Domain(format!(
                "mixed radicands {} and {}",
                self.radicand.to_text("x"),
                o.radicand.to_text("x")
            )));
        }
        Ok(())
    }

    pub fn mul(&self, o: &Self) -> Result<Self, Error> {
        self.same_field(o)?;
        let d = if self.b.is_zero() {
            o.radicand.clone()
        } else {
            self.radicand.clone()
        };
        let dpoly = RationalFunction::from_poly(d.clone());
        let a = self.a.mul(&o.a).add(&self.b.mul(&o.b).mul(&dpoly));
        let b = self.a.mul(&o.b).add(&self.b.mul(&o.a));
        Ok(AlgebraicFunction2 { a, b, radicand: d }.normalized())
    }

    fn normalized(self) -> Self {
        if self.b.is_zero() {
            Self::rational(self.a)
        } else {
            self
        }
    }

    pub fn recip(&self) -> Result<Self, Error> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::Domain("inverse of zero-norm element".into()));
        }
        let conj = self.conjugate();
        Ok(AlgebraicFunction2 {
            a: conj.a.div(&n),
            b: conj.b.div(&n),
            radicand: conj.radicand,
        }
        .normalized())
    }

    pub fn pow(&self, e: i64) -> Result<Self, Error> {
        if e == 0 {
            return Ok(Self::rational(RationalFunction::one()));
        }
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::rational(RationalFunction::one());
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }
}

/// A constant value in a (possibly trivial) quadratic extension of Q:
/// `a + b*sqrt(d)` with `d` a squarefree integer (not 0 or 1 when b != 0).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadConstant {
    pub a: Rat,
    pub b: Rat,
    pub d: BigInt,
}

impl fmt::Display for QuadConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", format_rat(&self.a))
        } else {
            write!(
                f,
                "{} + {}*sqrt({})",
                format_rat(&self.a),
                format_rat(&self.b),
                self.d
            )
        }
    }
}

impl QuadConstant {
    pub fn rational(a: Rat) -> Self {
        QuadConstant {
            a,
            b: Rat::zero(),
            d: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::rational(Rat::one())
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a.is_one()
    }

    /// Extract from a constant algebraic function.
    pub fn from_function(f: &AlgebraicFunction2) -> Option<Self> {
        if !f.is_constant() {
            return None;
        }
        let a = f.a().as_constant()?;
        if f.b().is_zero() {
            return Some(Self::rational(a));
        }
        let b = f.b().as_constant()?;
        let d = f.radicand().coeff(0);
        // canonical radicand has squarefree integer content
        debug_assert!(d.denom().is_one());
        Some(QuadConstant {
            a,
            b,
            d: d.numer().clone(),
        })
    }

    /// Order as a root of unity. Quadratic roots of unity have conductor in
    /// {1, 2, 3, 4, 6}, so the minimal polynomial settles it.
    pub fn unity_order(&self) -> Option<u64> {
        if self.b.is_zero() {
            return crate::rat::rational_unity_order(&self.a);
        }
        // min poly: y^2 - 2a y + (a^2 - b^2 d); quadratic cyclotomics only
        let tr = &self.a + &self.a;
        let nm = &self.a * &self.a - &self.b * &self.b * Rat::from_integer(self.d.clone());
        let phi3 = (-Rat::one(), Rat::one());
        let phi4 = (Rat::zero(), Rat::one());
        let phi6 = (Rat::one(), Rat::one());
        for (n, (t, d)) in [(3u64, phi3), (4, phi4), (6, phi6)] {
            if tr == t && nm == d {
                return Some(n);
            }
        }
        None
    }
}

/// Multiply two quadratic constants over the same squarefree integer d
/// (or with either rational).
pub fn quad_const_mul(x: &QuadConstant, y: &QuadConstant) -> Result<QuadConstant, Error> {
    let d = if x.b.is_zero() {
        y.d.clone()
    } else if y.b.is_zero() {
        x.d.clone()
    } else if x.d == y.d {
        x.d.clone()
    } else {
        return Err(Error::Domain("mixed quadratic constants".into()));
    };
    let dd = Rat::from_integer(d.clone());
    Ok(QuadConstant {
        a: &x.a * &y.a + &x.b * &y.b * &dd,
        b: &x.a * &y.b + &x.b * &y.a,
        d,
    })
}

impl QuadConstant {
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Norm to Q: a^2 - b^2 d.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - &self.b * &self.b * Rat::from_integer(self.d.clone())
    }

    pub fn recip(&self) -> Result<QuadConstant, Error> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::Domain("inverse of zero constant".into()));
        }
        Ok(QuadConstant {
            a: &self.a / &n,
            b: -&self.b / &n,
            d: self.d.clone(),
        })
    }

    pub fn pow(&self, e: i64) -> Result<QuadConstant, Error> {
        if e == 0 {
            return Ok(QuadConstant::one());
        }
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = QuadConstant::one();
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = quad_const_mul(&acc, &sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = quad_const_mul(&sq, &sq)?;
            }
        }
        Ok(acc)
    }
}

/// Rational square root of a perfect-square polynomial, if any.
pub fn poly_sqrt(p: &UniPoly) -> Option<UniPoly> {
    if p.is_zero() {
        return Some(UniPoly::zero());
    }
    let (unit, s, e) = p.square_decompose();
    if !s.is_one() {
        return None;
    }
    let root_unit = rational_sqrt(&unit)?;
    Some(e.scale(&root_unit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn pl(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(c)
    }

    #[test]
    fn rational_function_reduces() {
        // (x^2-1)/(x-1) = x+1
        let f = RationalFunction::new(pl(&[-1, 0, 1]), pl(&[-1, 1]));
        assert_eq!(f, RationalFunction::from_poly(pl(&[1, 1])));
        assert_eq!(f.degree_balance(), 1);
        // den made monic: x / (2x+2) = (1/2 x)/(x+1)
        let g = RationalFunction::new(pl(&[0, 1]), pl(&[2, 2]));
        assert_eq!(g.den(), &pl(&[1, 1]));
        assert_eq!(g.num(), &UniPoly::new(vec![rat_int(0), rat(1, 2)]));
    }

    #[test]
    fn canonical_radicand_normalizes() {
        // 4x -> radicand x, multiplier 2
        let c = canonical_radicand(&pl(&[0, 4]));
        assert_eq!(c.radicand, pl(&[0, 1]));
        assert_eq!(c.multiplier, RationalFunction::constant(rat_int(2)));
        // 8x -> 2x, multiplier 2
        let c = canonical_radicand(&pl(&[0, 8]));
        assert_eq!(c.radicand, pl(&[0, 2]));
        // x^2(x-1) -> x-1, multiplier x
        let c = canonical_radicand(&(&pl(&[0, 0, 1]) * &pl(&[-1, 1])));
        assert_eq!(c.radicand, pl(&[-1, 1]));
        assert_eq!(c.multiplier, RationalFunction::from_poly(pl(&[0, 1])));
        // perfect square 9x^2 collapses
        let c = canonical_radicand(&pl(&[0, 0, 9]));
        assert!(c.is_square);
    }

    #[test]
    fn norm_of_conjugate_pair_is_one() {
        // h = x + sqrt(x^2-1): norm = x^2 - (x^2-1) = 1
        let h = AlgebraicFunction2::new(
            RationalFunction::x(),
            RationalFunction::one(),
            pl(&[-1, 0, 1]),
        );
        assert_eq!(h.norm(), RationalFunction::one());
        let prod = h.mul(&h.conjugate()).unwrap();
        assert!(prod.is_rational());
        assert_eq!(prod.as_rational().unwrap(), &RationalFunction::one());
    }

    #[test]
    fn powers_and_inverse() {
        let h = AlgebraicFunction2::new(
            RationalFunction::x(),
            RationalFunction::one(),
            pl(&[0, 1]), // x + sqrt(x)
        );
        let h2 = h.pow(2).unwrap();
        // (x + sqrt x)^2 = x^2 + x + 2x sqrt(x)
        assert_eq!(h2.a(), &RationalFunction::from_poly(pl(&[0, 1, 1])));
        assert_eq!(h2.b(), &RationalFunction::from_poly(pl(&[0, 2])));
        let back = h2.mul(&h.pow(-2).unwrap()).unwrap();
        assert!(back.is_rational());
        assert_eq!(back.as_rational().unwrap(), &RationalFunction::one());
    }

    #[test]
    fn square_radicand_collapses_to_rational() {
        // sqrt(x^2) folds: 1 + 1*sqrt(x^2) = 1 + x
        let h = AlgebraicFunction2::new(
            RationalFunction::one(),
            RationalFunction::one(),
            pl(&[0, 0, 1]),
        );
        assert!(h.is_rational());
        assert_eq!(h.as_rational().unwrap(), &RationalFunction::from_poly(pl(&[1, 1])));
    }

    #[test]
    fn quad_constant_orders() {
        // (-1 + sqrt(-3))/2 is a primitive cube root of unity
        let w = QuadConstant {
            a: rat(-1, 2),
            b: rat(1, 2),
            d: BigInt::from(-3),
        };
        assert_eq!(w.unity_order(), Some(3));
        let i = QuadConstant {
            a: rat_int(0),
            b: rat_int(1),
            d: BigInt::from(-1),
        };
        assert_eq!(i.unity_order(), Some(4));
        let z6 = QuadConstant {
            a: rat(1, 2),
            b: rat(1, 2),
            d: BigInt::from(-3),
        };
        assert_eq!(z6.unity_order(), Some(6));
        let golden = QuadConstant {
            a: rat(1, 2),
            b: rat(1, 2),
            d: BigInt::from(5),
        };
        assert_eq!(golden.unity_order(), None);
        assert_eq!(QuadConstant::rational(rat_int(-1)).unity_order(), Some(2));
        assert_eq!(QuadConstant::rational(rat(1, 2)).unity_order(), None);
    }

    #[test]
    fn poly_sqrt_works() {
        assert_eq!(poly_sqrt(&pl(&[1, 2, 1])), Some(pl(&[1, 1])));
        assert_eq!(poly_sqrt(&pl(&[0, 1])), None);
        let p = pl(&[0, 0, 9]);
        assert_eq!(poly_sqrt(&p), Some(pl(&[0, 3])));
    }
}
