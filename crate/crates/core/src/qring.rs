//! Arithmetic in Q[t]/(m(t)) for a monic squarefree modulus.
//!
//! The modulus is not required to be irreducible. Inversion can therefore hit
//! zero divisors; callers either treat that as an error or split the ring
//! along the witnessed gcd (`ring_split`) and continue on each factor.

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::bipoly::{resultant_elim, BiPoly, Var};
use crate::cyclotomic::{cyclotomic_part, cyclotomic_poly};
use crate::rat::{rational_unity_order, Rat};
use crate::unipoly::UniPoly;
use crate::Error;

/// The quotient ring Q[t]/(m(t)); cheap to clone.
#[derive(Clone)]
pub struct QRing {
    modulus: Arc<UniPoly>,
}

impl PartialEq for QRing {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}
impl Eq for QRing {}

impl fmt::Debug for QRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRing({})", self.modulus.to_text("t"))
    }
}

impl QRing {
    /// Build from a monic squarefree nonconstant modulus.
    pub fn new(modulus: UniPoly) -> Result<Self, Error> {
        if modulus.degree().unwrap_or(0) == 0 {
            return Err(Error::Domain("modulus must be nonconstant".into()));
        }
        let (monic, _) = modulus.monic();
        if !monic.is_squarefree() {
            return Err(Error::Domain(format!(
                "modulus {} is not squarefree",
                monic.to_text("t")
            )));
        }
        Ok(QRing {
            modulus: Arc::new(monic),
        })
    }

    /// Q itself, presented as Q[t]/(t).
    pub fn rationals() -> Self {
        QRing {
            modulus: Arc::new(UniPoly::x()),
        }
    }

    /// Q[t]/(Phi_n(t)); the generator is a primitive n-th root of unity.
    pub fn cyclotomic(n: u64) -> Self {
        QRing {
            modulus: Arc::new(cyclotomic_poly(n)),
        }
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn is_rationals(&self) -> bool {
        *self.modulus == UniPoly::x()
    }

    pub fn elem(&self, value: UniPoly) -> RingElem {
        let (_, value) = value.divrem(&self.modulus);
        RingElem {
            ring: self.clone(),
            value,
        }
    }

    pub fn from_rat(&self, c: Rat) -> RingElem {
        self.elem(UniPoly::constant(c))
    }

    pub fn zero(&self) -> RingElem {
        self.elem(UniPoly::zero())
    }

    pub fn one(&self) -> RingElem {
        self.from_rat(Rat::one())
    }

    /// The class of `t`.
    pub fn generator(&self) -> RingElem {
        self.elem(UniPoly::x())
    }

    /// Reduce an element of this ring into a factor ring (modulus divides).
    pub fn project(&self, e: &RingElem, factor: &QRing) -> RingElem {
        debug_assert!(self
            .modulus
            .divrem(factor.modulus())
            .1
            .is_zero());
        let _ = e.ring.modulus(); // same-ring use expected but not enforced here
        factor.elem(e.value.clone())
    }
}

/// An element of Q[t]/(m(t)), stored reduced.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElem {
    ring: QRing,
    value: UniPoly,
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (mod {})",
            self.value.to_text("t"),
            self.ring.modulus().to_text("t")
        )
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value.to_text("t"))
    }
}

impl RingElem {
    pub fn ring(&self) -> &QRing {
        &self.ring
    }

    pub fn value(&self) -> &UniPoly {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.value.is_one()
    }

    /// The rational it represents, if constant.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.value.is_constant() {
            Some(self.value.coeff(0))
        } else {
            None
        }
    }

    fn same_ring(&self, other: &RingElem) -> Result<(), Error> {
        if self.ring != other.ring {
            return Err(Error::Domain(
                "ring elements over different moduli".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &RingElem) -> RingElem {
        self.same_ring(other).expect("mixed moduli");
        self.ring.elem(&self.value + &other.value)
    }

    pub fn sub(&self, other: &RingElem) -> RingElem {
        self.same_ring(other).expect("mixed moduli");
        self.ring.elem(&self.value - &other.value)
    }

    pub fn neg(&self) -> RingElem {
        self.ring.elem(-&self.value)
    }

    pub fn mul(&self, other: &RingElem) -> RingElem {
        self.same_ring(other).expect("mixed moduli");
        self.ring.elem(&self.value * &other.value)
    }

    pub fn scale(&self, c: &Rat) -> RingElem {
        self.ring.elem(self.value.scale(c))
    }

    pub fn pow(&self, mut e: u64) -> RingElem {
        let mut acc = self.ring.one();
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

    /// Inverse, or a structured failure: zero, or a zero divisor together
    /// with the proper gcd factor that witnesses it.
    pub fn inverse(&self) -> Result<RingElem, InvertFailure> {
        if self.is_zero() {
            return Err(InvertFailure::Zero);
        }
        let m = self.ring.modulus();
        let (g, u, _) = self.value.ext_gcd(m);
        if g.is_one() {
            return Ok(self.ring.elem(u));
        }
        Err(InvertFailure::ZeroDivisor { factor: g })
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.inverse(), Ok(_))
    }

    /// gcd(value, modulus): constant iff unit, modulus iff zero, proper
    /// otherwise (zero divisor).
    pub fn modulus_gcd(&self) -> UniPoly {
        if self.is_zero() {
            return self.ring.modulus().clone();
        }
        self.value.gcd(self.ring.modulus())
    }

    /// Characteristic polynomial of this element over Q: the monic degree-d
    /// polynomial whose roots are the images of the element under all d
    /// embeddings of the ring.
    pub fn char_poly(&self) -> UniPoly {
        let m = self.ring.modulus();
        if let Some(c) = self.as_rational() {
            // (y - c)^d
            let lin = UniPoly::new(vec![-c, Rat::one()]);
            return lin.pow(self.ring.degree());
        }
        // Res_t(m(t), y - v(t)) with t in the first slot, y in the second.
        let p = BiPoly::from_unipoly(m, Var::First);
        let q = &BiPoly::var(Var::Second) - &BiPoly::from_unipoly(&self.value, Var::First);
        let r = resultant_elim(&p, &q, Var::First).expect("nonzero inputs");
        let poly = r.expect_unipoly(Var::Second).expect("univariate in y");
        poly.monic().0
    }

    /// Least k with self^k = 1, when the element is a root of unity under
    /// every embedding of the ring; `None` otherwise. Errors on zero.
    pub fn unity_order(&self) -> Result<Option<u64>, Error> {
        if self.is_zero() {
            return Err(Error::Domain("unity order of zero".into()));
        }
        if let Some(c) = self.as_rational() {
            return Ok(rational_unity_order(&c));
        }
        let sf = self.char_poly().squarefree_part();
        let (parts, cof) = cyclotomic_part(&sf);
        if !cof.is_constant() {
            return Ok(None);
        }
        let mut order = 1u64;
        for &n in parts.keys() {
            order = num_integer::lcm(order, n);
        }
        debug_assert!(self.pow(order).is_one(), "unity order verification");
        Ok(Some(order))
    }
}

#[derive(Debug, Clone)]
pub enum InvertFailure {
    Zero,
    /// gcd(value, modulus) is proper; the factor is monic and splits the ring.
    ZeroDivisor {
        factor: UniPoly,
    },
}

/// Split an element along the proper gcd of its value with the modulus:
/// returns the images in Q[t]/(g) and Q[t]/(m/g). Errors when the gcd is
/// trivial (unit) or full (zero).
pub fn ring_split(e: &RingElem) -> Result<(RingElem, RingElem), Error> {
    let g = e.modulus_gcd();
    if g.is_constant() || &g == e.ring().modulus() {
        return Err(Error::Domain(
            "element is invertible or zero, no split".into(),
        ));
    }
    let m2 = e.ring().modulus().div_exact(&g);
    let r1 = QRing::new(g)?;
    let r2 = QRing::new(m2)?;
    Ok((r1.elem(e.value().clone()), r2.elem(e.value().clone())))
}

/// Order of a rational as a root of unity (1, 2 or none); errors on zero.
pub fn unity_order_rational(c: &Rat) -> Result<Option<u64>, Error> {
    if num_traits::Zero::is_zero(c) {
        return Err(Error::Domain("unity order of zero".into()));
    }
    Ok(rational_unity_order(c))
}
