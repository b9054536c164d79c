//! Exact computer algebra for torsion questions about matrix polynomials.
//!
//! The crate decides multiplicative independence of the spectral data of a
//! pair of matrix polynomials, builds the associated resultant curves, scans
//! them for cyclotomic (torsion) points, classifies 2x2 matrix pairs with
//! infinitely many singular power differences, and enumerates, up to
//! conjugacy, the matrices whose images under both polynomials are torsion.
//!
//! Everything is computed over exact rationals and quotient rings
//! Q[t]/(m(t)) with squarefree moduli; no floating point enters any decision.

pub mod bipoly;
pub mod curves;
pub mod cyclotomic;
pub mod engine;
pub mod factorization;
pub mod independence;
pub mod intfactor;
pub mod matpoly;
pub mod pairs;
pub mod qring;
pub mod rat;
pub mod ratfunc;
pub mod ringpoly;
pub mod unipoly;

pub use bipoly::{resultant_elim, resultant_sylvester, BiPoly, Var};
pub use curves::{build_curves, special_factor_scan, torsion_points_on_curve, unit_det_pair_scan, unit_eigen_det_scan, unit_eigen_pair_scan, CurvePair, ScanLocus, SpecialFactor, TorsionPointSet};
pub use cyclotomic::{cyclotomic_part, cyclotomic_poly};
pub use engine::{commuting_torsion_classes, difference_torsion_check, singular_shift_family, torsion_classes_2x2, BoundReport, EngineOptions, EngineOutcome, Refusal, RefusalReason, TorsionSolution};
pub use factorization::{coprime_basis, Factorization};
pub use independence::{mult_relation_quadratic, mult_relation_rational, spectral_independence, Decision, MultRelation, SpectralReport, SpectralVerdict};
pub use matpoly::{eigen_functions_2x2, scalar_profile, torsion_report, MatPoly, RatMat, RingMat, ScalarProfile, TorsionReport};
pub use pairs::{classify_pair, singular_power_set, verify_certificate, PairBox, PairCertificate, PairClass};
pub use qring::{ring_split, QRing, RingElem};
pub use ratfunc::{AlgebraicFunction2, RationalFunction};
pub use rat::Rat;
pub use unipoly::{uni_gcd, UniPoly};

use thiserror::Error as ThisError;

/// Errors for genuine misuse; hypothesis failures in the engines are
/// structured verdicts, not errors.
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
