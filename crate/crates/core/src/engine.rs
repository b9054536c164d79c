//! End-to-end enumeration pipelines: matrices A (up to conjugacy) with
//! f(A) and g(A) both torsion, for commuting coefficients in any dimension
//! and for arbitrary 2x2 inputs, plus the shifted-pair corollary and the
//! singular-shift counterexample family.
//!
//! Candidates are parametrized by quotient rings: scalars and Jordan blocks
//! over Q[w]/(piece), diagonal pairs over a primitive-element ring for a pair
//! of pieces. Verification is a single exact criterion: the locus where
//! B^n = I is the gcd of the modulus with the entries of B^n - I, with n the
//! lcm of the cyclotomic conductors present in the eigenvalue polynomial, so
//! the engine never over-claims.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::bipoly::{resultant_elim, BiPoly, Var};
use crate::curves::{
    build_curves, special_factor_scan, unit_det_pair_scan, unit_eigen_det_scan,
    unit_eigen_pair_scan, ScanLocus,
};
use crate::cyclotomic::cyclotomic_part;
use crate::independence::{
    decide_pair, spectral_independence, Decision, MultRelation, SpectralVerdict,
    DEFAULT_SEARCH_RADIUS,
};
use crate::matpoly::{
    absolute_eigen_poly, eigen_functions_2x2, scalar_profile, MatPoly, RatMat, RingMat,
};
use crate::qring::{QRing, RingElem};
use crate::rat::{rat_int, Rat};
use crate::ringpoly::{gcd_dynamic, RingPoly};
use crate::unipoly::UniPoly;
use crate::Error;

pub const DEFAULT_ENGINE_CONDUCTOR_BOUND: u64 = 24;

#[derive(Clone, Copy, Debug)]
pub struct EngineOptions {
    pub conductor_bound: u64,
    pub search_radius: i64,
    /// Number of worker threads for the four scans (1 = sequential).
    pub jobs: usize,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            conductor_bound: DEFAULT_ENGINE_CONDUCTOR_BOUND,
            search_radius: DEFAULT_SEARCH_RADIUS,
            jobs: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JordanShape {
    Scalar,
    DiagonalPair,
    JordanBlock,
    /// Diagonal matrices of dimension r with eigenvalues drawn as a multiset
    /// from the verified locus (commuting case, r > 2).
    DiagonalMultiset,
}

/// One family of verified solution classes, parametrized by a squarefree
/// modulus: each root of the modulus yields one conjugacy class (after the
/// stated weighting).
#[derive(Clone, Debug)]
pub struct TorsionSolution {
    pub shape: JordanShape,
    /// Squarefree monic modulus of the parameter ring.
    pub modulus: UniPoly,
    /// Diagonal entries of the representative as polynomials in the parameter.
    pub eigen_a: UniPoly,
    pub eigen_b: UniPoly,
    /// Verified orders: f(A)^n = I, g(A)^m = I on the whole family.
    pub orders: (u64, u64),
    pub class_count: u64,
    pub conjugacy_key: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HypothesisCheck {
    /// All eigenvalue pairs tested for multiplicative independence (r = 2).
    EigenvaluePairs,
    /// The nine-pair spectral test.
    SpectralNinePairs,
    /// Special-factor scan of the eigenvalue resultant curve (r > 2 surrogate).
    SpecialFactorSurrogate,
}

#[derive(Clone, Debug)]
pub struct BoundReport {
    /// Per-eigenvalue count bound from the scan layer.
    pub per_eigenvalue_bound: BigUint,
    /// Bound on the number of conjugacy classes from the theorem statement.
    pub theorem_bound: BigUint,
    pub found_count: u64,
    pub within_bound: bool,
    pub hypothesis_check: HypothesisCheck,
    pub conductor_bound: u64,
}

#[derive(Clone, Debug)]
pub enum RefusalReason {
    /// Two spectral elements admit a multiplicative relation.
    SpectralDependence {
        f_index: usize,
        g_index: usize,
        relation: MultRelation,
    },
    EigenPairDependence {
        f_index: usize,
        g_index: usize,
        relation: MultRelation,
    },
    IndependenceUndecided {
        pairs: Vec<(usize, usize)>,
    },
    SingularDetCurve {
        side: char,
    },
    SpecialFactor {
        description: String,
    },
    /// det(C) = 0 in the shifted-pair problem: torsion points form infinite
    /// families (see the counterexample construction).
    SingularShift,
}

#[derive(Clone, Debug)]
pub struct Refusal {
    pub reason: RefusalReason,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub enum EngineOutcome {
    Solutions {
        solutions: Vec<TorsionSolution>,
        bound: BoundReport,
    },
    Refused(Refusal),
}

// ---------------------------------------------------------------------------
// exact torsion locus

/// The sub-locus of the modulus where B is torsion, with the minimal uniform
/// order there. Complete for every dimension: n is the lcm of all cyclotomic
/// conductors among the eigenvalues, and B^n = I cuts out exactly the torsion
/// embeddings.
pub fn torsion_good_locus(b: &RingMat) -> Option<(UniPoly, u64)> {
    let modulus = b.ring().modulus().clone();
    let eigen = absolute_eigen_poly(b);
    let (parts, _) = cyclotomic_part(&eigen);
    if parts.is_empty() {
        return None;
    }
    let n0 = lcm_all(parts.keys().copied())?;
    let power = b.pow(n0);
    let mut h = modulus.clone();
    for i in 0..b.dim() {
        for j in 0..b.dim() {
            let want = if i == j { UniPoly::one() } else { UniPoly::zero() };
            let diff = &power.at(i, j).value().clone() - &want;
            if diff.is_zero() {
                continue;
            }
            h = h.gcd(&diff);
            if h.is_constant() {
                return None;
            }
        }
    }
    if h.is_constant() {
        return None;
    }
    // minimal uniform order on the good part
    let good_ring = QRing::new(h.clone()).expect("squarefree factor");
    let bg = b.project(&good_ring);
    let eigen_good = absolute_eigen_poly(&bg);
    let (parts_good, cof) = cyclotomic_part(&eigen_good);
    debug_assert!(cof.is_constant(), "good locus has non-unity eigenvalue");
    let n1 = lcm_all(parts_good.keys().copied())?;
    debug_assert!(bg.pow(n1).is_identity(), "torsion locus verification");
    Some((h, n1))
}

fn lcm_all<I: Iterator<Item = u64>>(it: I) -> Option<u64> {
    let mut acc: u128 = 1;
    for n in it {
        acc = num_integer::lcm(acc, n as u128);
        if acc > (1u128 << 50) {
            return None; // outside desk scale; treated as no uniform order
        }
    }
    Some(acc as u64)
}

// ---------------------------------------------------------------------------
// candidate construction

#[derive(Clone, Copy, Debug)]
struct CandidatePolicy {
    pairs: bool,
    jordan: bool,
}

/// A candidate family: a parametrized matrix plus how locus degrees convert
/// into class counts.
struct Candidate {
    shape: JordanShape,
    a: RingMat,
    sigma: RingElem,
    tau: RingElem,
    /// For same-piece diagonal pairs: the swap automorphism data (1+c, e1)
    /// used to discount double-counted orientations.
    swap: Option<SwapData>,
}

struct SwapData {
    /// w maps to scale * e1(w) - w.
    scale: Rat,
    e1: RingElem,
}

fn verify_candidate(
    f: &MatPoly,
    g: &MatPoly,
    cand: &Candidate,
) -> Result<Option<TorsionSolution>, Error> {
    let bf = f.eval_at_matrix(&cand.a)?;
    let (good_f, _) = match torsion_good_locus(&bf) {
        None => return Ok(None),
        Some(x) => x,
    };
    let bg = g.eval_at_matrix(&cand.a)?;
    let (good_g, _) = match torsion_good_locus(&bg) {
        None => return Ok(None),
        Some(x) => x,
    };
    let good = good_f.gcd(&good_g);
    if good.is_constant() {
        return Ok(None);
    }
    let good_ring = QRing::new(good.clone())?;
    // minimal orders on the joint locus, re-verified exactly
    let nf = match torsion_good_locus(&bf.project(&good_ring)) {
        Some((h, n)) if h == good => n,
        _ => return Err(Error::Internal("joint torsion locus lost f-torsion".into())),
    };
    let ng = match torsion_good_locus(&bg.project(&good_ring)) {
        Some((h, n)) if h == good => n,
        _ => return Err(Error::Internal("joint torsion locus lost g-torsion".into())),
    };
    // class count
    let deg = good.deg_or0() as u64;
    let class_count = match (&cand.swap, cand.shape) {
        (Some(swap), JordanShape::DiagonalPair) => {
            // unordered pairs: |G| - |G cap G*|/2
            let overlap = swap_overlap_degree(&good_ring, swap, &good)?;
            debug_assert!(overlap % 2 == 0, "swap-closed overlap has even degree");
            deg - (overlap as u64) / 2
        }
        _ => deg,
    };
    if class_count == 0 {
        return Ok(None);
    }
    let sigma_val = cand.sigma.value().divrem(&good).1;
    let tau_val = cand.tau.value().divrem(&good).1;
    let key = format!(
        "{:?}|{}|{}|{}",
        cand.shape,
        good.to_text("w"),
        sigma_val.to_text("w"),
        tau_val.to_text("w"),
    );
    Ok(Some(TorsionSolution {
        shape: cand.shape,
        modulus: good,
        eigen_a: sigma_val,
        eigen_b: tau_val,
        orders: (nf, ng),
        class_count,
        conjugacy_key: key,
    }))
}

/// Degree of gcd(G, G*) where G* is the image of the good locus under the
/// swap automorphism w -> scale*e1(w) - w.
fn swap_overlap_degree(good_ring: &QRing, swap: &SwapData, good: &UniPoly) -> Result<usize, Error> {
    // characteristic polynomial of the swapped parameter over the good locus
    let image = good_ring
        .elem(swap.e1.value().clone())
        .scale(&swap.scale)
        .sub(&good_ring.generator());
    let gstar = image.char_poly();
    let overlap = good.gcd(&gstar.squarefree_part());
    Ok(overlap.deg_or0())
}

/// Primitive-element ring for ordered pairs (alpha, beta) of roots of p and q
/// (p != q case): w = alpha + c*beta. Returns per-branch (ring, sigma, tau).
fn cross_pair_rings(p: &UniPoly, q: &UniPoly) -> Result<Vec<(QRing, RingElem, RingElem)>, Error> {
    for c in 1i64..=64 {
        let m = compose_sum_modulus(p, q, c)?;
        if !m.is_squarefree() {
            continue;
        }
        return recover_components(&m, p, q, c);
    }
    Err(Error::Internal(
        "no squarefree primitive element found".into(),
    ))
}

/// Same-piece ordered distinct pairs: roots (alpha, beta) of p with
/// alpha != beta; also returns swap data.
fn same_pair_rings(
    p: &UniPoly,
) -> Result<Vec<(QRing, RingElem, RingElem, SwapData)>, Error> {
    debug_assert!(p.deg_or0() >= 2);
    for c in 2i64..=64 {
        let m_ord = compose_sum_modulus(p, p, c)?;
        // remove the diagonal alpha = beta: roots (1+c) * alpha
        let scale = rat_int(1 + c);
        let diag: UniPoly = {
            // monic polynomial with roots (1+c)*alpha
            let inv = scale.clone().recip();
            let sub = UniPoly::new(vec![rat_int(0), inv]);
            p.compose(&sub).monic().0
        };
        let m_pairs = {
            let (qt, r) = m_ord.divrem(&diag);
            if !r.is_zero() {
                continue;
            }
            qt
        };
        if m_pairs.is_constant() || !m_pairs.is_squarefree() {
            continue;
        }
        let branches = recover_components(&m_pairs, p, p, c)?;
        let mut out = Vec::new();
        for (ring, sigma, tau) in branches {
            let e1 = sigma.add(&tau);
            out.push((
                ring,
                sigma,
                tau,
                SwapData {
                    scale: scale.clone(),
                    e1,
                },
            ));
        }
        return Ok(out);
    }
    Err(Error::Internal(
        "no squarefree pair modulus found".into(),
    ))
}

/// Res_t(q(t), p(w - c t)): the monic polynomial with roots alpha + c*beta.
fn compose_sum_modulus(p: &UniPoly, q: &UniPoly, c: i64) -> Result<UniPoly, Error> {
    // p(w - c t) as a bivariate polynomial, t first, w second
    let w = BiPoly::var(Var::Second);
    let t = BiPoly::var(Var::First);
    let arg = &w - &t.scale(&rat_int(c));
    let mut shifted = BiPoly::zero();
    for coeff in p.coeffs().iter().rev() {
        shifted = &(&shifted * &arg) + &BiPoly::constant(coeff.clone());
    }
    let qb = BiPoly::from_unipoly(q, Var::First);
    let res = resultant_elim(&qb, &shifted, Var::First)?;
    let poly = res
        .expect_unipoly(Var::Second)
        .ok_or_else(|| Error::Internal("pair modulus is not univariate".into()))?;
    Ok(poly.monic().0)
}

/// In Q[w]/m with w = alpha + c*beta, recover alpha as the unique common
/// root of p(y) and q((w - y)/c); the dynamic gcd splits the modulus as
/// needed.
fn recover_components(
    m: &UniPoly,
    p: &UniPoly,
    q: &UniPoly,
    c: i64,
) -> Result<Vec<(QRing, RingElem, RingElem)>, Error> {
    let ring = QRing::new(m.clone())?;
    let py = RingPoly::lift(&ring, p);
    // q((w - y)/c) via Horner in y
    let inv_c = rat_int(c).recip();
    let w_over_c = ring.generator().scale(&inv_c);
    let neg_inv_c = ring.from_rat(-inv_c.clone());
    let lin = RingPoly::new(ring.clone(), vec![w_over_c, neg_inv_c]);
    let mut qy = RingPoly::zero(ring.clone());
    for coeff in q.coeffs().iter().rev() {
        qy = qy.mul(&lin).add(&RingPoly::lift(&ring, &UniPoly::constant(coeff.clone())));
    }
    let mut out = Vec::new();
    for (branch, gcd) in gcd_dynamic(&py, &qy) {
        if gcd.degree() != Some(1) {
            return Err(Error::Internal(format!(
                "component recovery expected a linear gcd, got degree {:?}",
                gcd.degree()
            )));
        }
        // monic y + c0 -> sigma = -c0
        let sigma = gcd.coeff(0).neg();
        let tau = branch
            .generator()
            .sub(&sigma)
            .scale(&rat_int(c).recip());
        out.push((branch, sigma, tau));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// shared enumeration

struct EnumerationInput<'a> {
    f: &'a MatPoly,
    g: &'a MatPoly,
    bound: u64,
    policy: CandidatePolicy,
    jobs: usize,
}

fn run_scans(
    f: &MatPoly,
    g: &MatPoly,
    bound: u64,
    jobs: usize,
) -> Result<Vec<ScanLocus>, Error> {
    type ScanFn = fn(&MatPoly, &MatPoly, u64) -> Result<ScanLocus, Error>;
    let swapped_eigen_det: ScanFn = |f, g, n| unit_eigen_det_scan(g, f, n);
    let tasks: Vec<ScanFn> = vec![
        unit_eigen_pair_scan,
        unit_eigen_det_scan,
        swapped_eigen_det,
        unit_det_pair_scan,
    ];
    if jobs > 1 {
        std::thread::scope(|scope| {
            let handles: Vec<_> = tasks
                .iter()
                .map(|task| scope.spawn(move || task(f, g, bound)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("scan thread panicked"))
                .collect()
        })
    } else {
        tasks.into_iter().map(|task| task(f, g, bound)).collect()
    }
}

fn enumerate_candidates(input: &EnumerationInput) -> Result<Vec<TorsionSolution>, Error> {
    let f = input.f;
    let g = input.g;
    let pf = scalar_profile(f);
    let pg = scalar_profile(g);
    if pf.det_curve.is_zero() || pg.det_curve.is_zero() {
        return Ok(Vec::new());
    }
    let scans = run_scans(f, g, input.bound, input.jobs)?;

    // candidate eigenvalue locus: union of scan witnesses minus det roots
    let mut witness = UniPoly::one();
    for s in &scans {
        let common = witness.gcd(&s.witness);
        witness = &witness * &s.witness.div_exact(&common);
    }
    let dets = (&pf.det_curve * &pg.det_curve).squarefree_part();
    let killed = witness.gcd(&dets);
    if !killed.is_constant() {
        witness = witness.div_exact(&killed);
    }
    if witness.is_constant() {
        return Ok(Vec::new());
    }

    // refine into pairwise coprime pieces
    let mut inputs: Vec<UniPoly> = vec![witness.clone()];
    for s in &scans {
        for c in &s.certificates {
            inputs.push(c.gcd.clone());
        }
    }
    let basis = crate::factorization::coprime_basis(&inputs);
    let pieces: Vec<UniPoly> = basis
        .base
        .into_iter()
        .filter(|b| witness.divrem(b).1.is_zero())
        .collect();

    let mut solutions = Vec::new();
    let mut push = |sol: Option<TorsionSolution>| {
        if let Some(s) = sol {
            solutions.push(s);
        }
    };

    for piece in &pieces {
        let ring = QRing::new(piece.clone())?;
        let lam = ring.generator();
        // scalar candidate lambda I
        let a = RingMat::diagonal(&ring, vec![lam.clone(); f.dim()]);
        push(verify_candidate(
            f,
            g,
            &Candidate {
                shape: JordanShape::Scalar,
                a,
                sigma: lam.clone(),
                tau: lam.clone(),
                swap: None,
            },
        )?);
        if input.policy.jordan && f.dim() == 2 {
            let a = RingMat::jordan_block(&ring, lam.clone(), 2);
            push(verify_candidate(
                f,
                g,
                &Candidate {
                    shape: JordanShape::JordanBlock,
                    a,
                    sigma: lam.clone(),
                    tau: lam.clone(),
                    swap: None,
                },
            )?);
        }
    }

    if input.policy.pairs && f.dim() == 2 {
        // distinct pairs within one piece
        for piece in &pieces {
            if piece.deg_or0() < 2 {
                continue;
            }
            for (ring, sigma, tau, swap) in same_pair_rings(piece)? {
                let a = RingMat::diagonal(&ring, vec![sigma.clone(), tau.clone()]);
                push(verify_candidate(
                    f,
                    g,
                    &Candidate {
                        shape: JordanShape::DiagonalPair,
                        a,
                        sigma,
                        tau,
                        swap: Some(swap),
                    },
                )?);
            }
        }
        // cross-piece pairs, both orientations (f-coefficients need not be
        // symmetric in the diagonal entries)
        for i in 0..pieces.len() {
            for j in (i + 1)..pieces.len() {
                for (ring, sigma, tau) in cross_pair_rings(&pieces[i], &pieces[j])? {
                    for (s, t) in [(sigma.clone(), tau.clone()), (tau, sigma)] {
                        let a = RingMat::diagonal(&ring, vec![s.clone(), t.clone()]);
                        push(verify_candidate(
                            f,
                            g,
                            &Candidate {
                                shape: JordanShape::DiagonalPair,
                                a,
                                sigma: s,
                                tau: t,
                                swap: None,
                            },
                        )?);
                    }
                }
            }
        }
    }

    // cross-orientation dedup: a class {alpha, beta} may verify in both
    // orientations of a cross pair; drop the later duplicate by key overlap
    solutions = dedup_cross_orientations(solutions);
    solutions.sort_by(|a, b| a.conjugacy_key.cmp(&b.conjugacy_key));
    Ok(solutions)
}

/// Two cross-pair records over the same ring with swapped (eigen_a, eigen_b)
/// describe the same unordered classes; keep one and drop overlap.
fn dedup_cross_orientations(mut sols: Vec<TorsionSolution>) -> Vec<TorsionSolution> {
    let mut out: Vec<TorsionSolution> = Vec::new();
    sols.sort_by(|a, b| a.conjugacy_key.cmp(&b.conjugacy_key));
    for s in sols {
        let dup = out.iter().any(|t| {
            t.shape == JordanShape::DiagonalPair
                && s.shape == JordanShape::DiagonalPair
                && t.modulus == s.modulus
                && t.eigen_a == s.eigen_b
                && t.eigen_b == s.eigen_a
        });
        if !dup {
            out.push(s);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// commuting case

/// Enumerate, up to conjugacy, the matrices commuting with all coefficients
/// of f and g whose images under both are torsion.
pub fn commuting_torsion_classes(
    f: &MatPoly,
    g: &MatPoly,
    opt: &EngineOptions,
) -> Result<EngineOutcome, Error> {
    if f.dim() != g.dim() {
        return Err(Error::Dimension("dimension mismatch".into()));
    }
    let r = f.dim();

    // hypothesis: eigenvalue pairs multiplicatively independent
    let check = if r == 2 {
        if let Some(refusal) = eigen_pair_hypothesis(f, g, opt.search_radius)? {
            return Ok(EngineOutcome::Refused(refusal));
        }
        HypothesisCheck::EigenvaluePairs
    } else {
        let curves = build_curves(f, g)?;
        let special = special_factor_scan(&curves.r_curve);
        if let Some(s) = special.first() {
            return Ok(EngineOutcome::Refused(Refusal {
                reason: RefusalReason::SpecialFactor {
                    description: format!(
                        "{:?} (i,j)=({},{}) conductor {}",
                        s.form, s.i, s.j, s.conductor
                    ),
                },
                detail: "the eigenvalue resultant curve has a binomial factor; the \
                         independence surrogate fails"
                    .into(),
            }));
        }
        HypothesisCheck::SpecialFactorSurrogate
    };

    let all_scalar = f.has_scalar_coefficients() && g.has_scalar_coefficients();
    let solutions = if all_scalar {
        if r == 2 {
            enumerate_candidates(&EnumerationInput {
                f,
                g,
                bound: opt.conductor_bound,
                policy: CandidatePolicy {
                    pairs: true,
                    jordan: true,
                },
                jobs: opt.jobs,
            })?
        } else {
            classical_multiset_solutions(f, g, opt)?
        }
    } else if r == 2 {
        match common_rational_eigenbasis(f, g) {
            Some(v) => {
                let fv = conjugate_poly(f, &v)?;
                let gv = conjugate_poly(g, &v)?;
                enumerate_candidates(&EnumerationInput {
                    f: &fv,
                    g: &gv,
                    bound: opt.conductor_bound,
                    policy: CandidatePolicy {
                        pairs: true,
                        jordan: false,
                    },
                    jobs: opt.jobs,
                })?
            }
            None => enumerate_candidates(&EnumerationInput {
                f,
                g,
                bound: opt.conductor_bound,
                policy: CandidatePolicy {
                    pairs: false,
                    jordan: false,
                },
                jobs: opt.jobs,
            })?,
        }
    } else {
        // commutant beyond the scalar algebra is not searched for r > 2
        let scalar_only = EnumerationInput {
            f,
            g,
            bound: opt.conductor_bound,
            policy: CandidatePolicy {
                pairs: false,
                jordan: false,
            },
            jobs: opt.jobs,
        };
        enumerate_candidates(&scalar_only)?
    };

    let found: u64 = solutions.iter().map(|s| s.class_count).sum();
    let l = lemma_bound_l(f, g, 5);
    let theorem_bound = BigUint::from(2u32) * l.pow(r as u32);
    Ok(EngineOutcome::Solutions {
        bound: BoundReport {
            per_eigenvalue_bound: l,
            within_bound: BigUint::from(found) <= theorem_bound,
            theorem_bound,
            found_count: found,
            hypothesis_check: check,
            conductor_bound: opt.conductor_bound,
        },
        solutions,
    })
}

/// 22 r^e (deg f + deg g) deg f deg g.
fn lemma_bound_l(f: &MatPoly, g: &MatPoly, e: u32) -> BigUint {
    let r = BigUint::from(f.dim());
    let df = BigUint::from(f.degree());
    let dg = BigUint::from(g.degree());
    BigUint::from(22u32) * r.pow(e) * (&df + &dg) * &df * &dg
}

fn eigen_pair_hypothesis(
    f: &MatPoly,
    g: &MatPoly,
    radius: i64,
) -> Result<Option<Refusal>, Error> {
    let pf = scalar_profile(f);
    let pg = scalar_profile(g);
    let (m1, m2) = eigen_functions_2x2(&pf);
    let (e1, e2) = eigen_functions_2x2(&pg);
    let mut undecided = Vec::new();
    for (i, a) in [m1, m2].iter().enumerate() {
        for (j, b) in [e1.clone(), e2.clone()].iter().enumerate() {
            match decide_pair(a, b, radius)? {
                Decision::Relation(rel) if rel.certifies_dependence() => {
                    return Ok(Some(Refusal {
                        reason: RefusalReason::EigenPairDependence {
                            f_index: i,
                            g_index: j,
                            relation: rel,
                        },
                        detail: "eigenvalue functions are multiplicatively dependent".into(),
                    }));
                }
                Decision::Relation(_) | Decision::Independent => {}
                Decision::Undecided { .. } => undecided.push((i, j)),
            }
        }
    }
    if !undecided.is_empty() {
        return Ok(Some(Refusal {
            reason: RefusalReason::IndependenceUndecided { pairs: undecided },
            detail: "eigenvalue independence could not be decided".into(),
        }));
    }
    Ok(None)
}

/// Diagonal multiset solutions for scalar-coefficient inputs of dimension
/// r > 2: every multiset of size r drawn from the verified scalar locus.
fn classical_multiset_solutions(
    f: &MatPoly,
    g: &MatPoly,
    opt: &EngineOptions,
) -> Result<Vec<TorsionSolution>, Error> {
    let r = f.dim();
    let scans = run_scans(f, g, opt.conductor_bound, opt.jobs)?;
    let pf = scalar_profile(f);
    let pg = scalar_profile(g);
    if pf.det_curve.is_zero() || pg.det_curve.is_zero() {
        return Ok(Vec::new());
    }
    let mut witness = UniPoly::one();
    for s in &scans {
        let common = witness.gcd(&s.witness);
        witness = &witness * &s.witness.div_exact(&common);
    }
    let dets = (&pf.det_curve * &pg.det_curve).squarefree_part();
    let killed = witness.gcd(&dets);
    if !killed.is_constant() {
        witness = witness.div_exact(&killed);
    }
    if witness.is_constant() {
        return Ok(Vec::new());
    }
    // verify the scalar locus exactly: f(lambda I), g(lambda I) torsion
    let ring = QRing::new(witness.clone())?;
    let lam = ring.generator();
    let a = RingMat::diagonal(&ring, vec![lam; 1]);
    // scalar-coefficient f acts entrywise; use the 1x1 reduction
    let f1 = scalar_reduction(f)?;
    let g1 = scalar_reduction(g)?;
    let bf = f1.eval_at_matrix(&a)?;
    let bg = g1.eval_at_matrix(&a)?;
    let good_f = torsion_good_locus(&bf);
    let good_g = torsion_good_locus(&bg);
    let (gf, _) = match good_f {
        None => return Ok(Vec::new()),
        Some(x) => x,
    };
    let (gg, _) = match good_g {
        None => return Ok(Vec::new()),
        Some(x) => x,
    };
    let good = gf.gcd(&gg);
    if good.is_constant() {
        return Ok(Vec::new());
    }
    let good_ring = QRing::new(good.clone())?;
    let lam = good_ring.generator();
    let a = RingMat::diagonal(&good_ring, vec![lam; 1]);
    let (_, nf) = torsion_good_locus(&f1.eval_at_matrix(&a)?).expect("verified");
    let (_, ng) = torsion_good_locus(&g1.eval_at_matrix(&a)?).expect("verified");
    let l = good.deg_or0() as u64;
    let count = multiset_count(l, r as u64);
    let key = format!("DiagonalMultiset|{}|r={r}", good.to_text("w"));
    Ok(vec![TorsionSolution {
        shape: JordanShape::DiagonalMultiset,
        eigen_a: UniPoly::x(),
        eigen_b: UniPoly::x(),
        modulus: good,
        orders: (nf, ng),
        class_count: count,
        conjugacy_key: key,
    }])
}

/// C(l + r - 1, r): multisets of size r from l roots.
fn multiset_count(l: u64, r: u64) -> u64 {
    let mut num = 1u128;
    let mut den = 1u128;
    for k in 0..r {
        num *= (l + r - 1 - k) as u128;
        den *= (k + 1) as u128;
    }
    (num / den) as u64
}

/// The scalar polynomial hiding in a scalar-coefficient matrix polynomial,
/// as a 1x1 matrix polynomial.
fn scalar_reduction(f: &MatPoly) -> Result<MatPoly, Error> {
    let coeffs: Vec<RatMat> = f
        .coeffs()
        .iter()
        .map(|c| RatMat::new(1, vec![c.at(0, 0).clone()]).expect("1x1"))
        .collect();
    MatPoly::new(1, coeffs)
}

/// A rational basis of common eigenvectors for all coefficients, if the
/// coefficient family is simultaneously diagonalizable over Q.
fn common_rational_eigenbasis(f: &MatPoly, g: &MatPoly) -> Option<RatMat> {
    let mut nonscalar: Vec<&RatMat> = Vec::new();
    for c in f.coeffs().iter().chain(g.coeffs()) {
        if !c.is_scalar() {
            nonscalar.push(c);
        }
    }
    let b0 = nonscalar.first()?;
    // rational distinct eigenvalues of b0
    let tr = b0.trace();
    let det = b0.det();
    let disc = &tr * &tr - rat_int(4) * &det;
    let s = crate::rat::rational_sqrt(&disc)?;
    if num_traits::Zero::is_zero(&s) {
        return None;
    }
    let two = rat_int(2);
    let l1 = (&tr + &s) / &two;
    let l2 = (&tr - &s) / &two;
    let v1 = eigenvector2(b0, &l1)?;
    let v2 = eigenvector2(b0, &l2)?;
    let v = RatMat::new(2, vec![v1.0, v2.0, v1.1, v2.1]).ok()?;
    if num_traits::Zero::is_zero(&v.det()) {
        return None;
    }
    // all coefficients must be diagonal in this basis
    let vinv = inverse2_rat(&v)?;
    for c in nonscalar {
        let d = vinv.mul(c).mul(&v);
        if !d.at(0, 1).is_zero() || !d.at(1, 0).is_zero() {
            return None;
        }
    }
    Some(v)
}

fn eigenvector2(m: &RatMat, lambda: &Rat) -> Option<(Rat, Rat)> {
    let a = m.at(0, 0) - lambda;
    let b = m.at(0, 1).clone();
    let c = m.at(1, 0).clone();
    let d = m.at(1, 1) - lambda;
    if !a.is_zero() || !b.is_zero() {
        Some((b, -a))
    } else if !c.is_zero() || !d.is_zero() {
        Some((d, -c))
    } else {
        // the matrix is lambda I; any vector works
        Some((Rat::one(), Rat::zero()))
    }
}

fn inverse2_rat(m: &RatMat) -> Option<RatMat> {
    let det = m.det();
    if num_traits::Zero::is_zero(&det) {
        return None;
    }
    let inv = det.recip();
    RatMat::new(
        2,
        vec![
            m.at(1, 1) * &inv,
            -(m.at(0, 1) * &inv),
            -(m.at(1, 0) * &inv),
            m.at(0, 0) * &inv,
        ],
    )
    .ok()
}

fn conjugate_poly(f: &MatPoly, v: &RatMat) -> Result<MatPoly, Error> {
    let vinv = inverse2_rat(v).ok_or_else(|| Error::Internal("singular basis".into()))?;
    let coeffs: Vec<RatMat> = f.coeffs().iter().map(|c| vinv.mul(c).mul(v)).collect();
    MatPoly::new(f.dim(), coeffs)
}

// ---------------------------------------------------------------------------
// 2x2 case

/// Enumerate, up to conjugacy, 2x2 matrices A with (f(A), g(A)) torsion,
/// under the spectral multiplicative independence hypothesis.
pub fn torsion_classes_2x2(
    f: &MatPoly,
    g: &MatPoly,
    opt: &EngineOptions,
) -> Result<EngineOutcome, Error> {
    if f.dim() != 2 || g.dim() != 2 {
        return Err(Error::Dimension("the 2x2 pipeline needs r = 2".into()));
    }
    let pf = scalar_profile(f);
    let pg = scalar_profile(g);
    if pf.det_curve.is_zero() {
        return Ok(EngineOutcome::Refused(Refusal {
            reason: RefusalReason::SingularDetCurve { side: 'f' },
            detail: "det(f(xI)) vanishes identically".into(),
        }));
    }
    if pg.det_curve.is_zero() {
        return Ok(EngineOutcome::Refused(Refusal {
            reason: RefusalReason::SingularDetCurve { side: 'g' },
            detail: "det(g(xI)) vanishes identically".into(),
        }));
    }
    let spectral = spectral_independence(f, g, opt.search_radius)?;
    match spectral.verdict {
        SpectralVerdict::Dependent => {
            let w = spectral.witnesses.into_iter().next().expect("witnessed");
            return Ok(EngineOutcome::Refused(Refusal {
                reason: RefusalReason::SpectralDependence {
                    f_index: w.f_index,
                    g_index: w.g_index,
                    relation: w.relation,
                },
                detail: "the spectral sets admit a multiplicative relation".into(),
            }));
        }
        SpectralVerdict::Undecided => {
            return Ok(EngineOutcome::Refused(Refusal {
                reason: RefusalReason::IndependenceUndecided {
                    pairs: spectral.undecided_pairs,
                },
                detail: "spectral independence could not be decided".into(),
            }));
        }
        SpectralVerdict::Independent => {}
    }
    let solutions = enumerate_candidates(&EnumerationInput {
        f,
        g,
        bound: opt.conductor_bound,
        policy: CandidatePolicy {
            pairs: true,
            jordan: true,
        },
        jobs: opt.jobs,
    })?;
    let found: u64 = solutions.iter().map(|s| s.class_count).sum();
    let df = BigUint::from(f.degree());
    let dg = BigUint::from(g.degree());
    let sum = &df + &dg;
    let per_eig = BigUint::from(1u32 << 12) * &sum * &df * &dg;
    let theorem_bound = BigUint::from(2u32).pow(25) * &sum * &sum * (&df * &dg).pow(2);
    Ok(EngineOutcome::Solutions {
        bound: BoundReport {
            per_eigenvalue_bound: per_eig,
            within_bound: BigUint::from(found) <= theorem_bound,
            theorem_bound,
            found_count: found,
            hypothesis_check: HypothesisCheck::SpectralNinePairs,
            conductor_bound: opt.conductor_bound,
        },
        solutions,
    })
}

// ---------------------------------------------------------------------------
// shifted pairs and the counterexample family

/// Torsion pairs (A1, A2) with A1 - A2 = C, via f = Z and g = Z - C.
/// Refuses singular C, where infinite families exist.
pub fn difference_torsion_check(c: &RatMat, opt: &EngineOptions) -> Result<EngineOutcome, Error> {
    if c.dim() != 2 {
        return Err(Error::Dimension("the shifted-pair check needs a 2x2 C".into()));
    }
    if num_traits::Zero::is_zero(&c.det()) {
        return Ok(EngineOutcome::Refused(Refusal {
            reason: RefusalReason::SingularShift,
            detail: "det(C) = 0 admits infinite torsion families; see the \
                     counterexample subcommand"
                .into(),
        }));
    }
    let f = MatPoly::z(2);
    let g = MatPoly::z_minus(c);
    // determinant shapes that the shifted problem guarantees
    let pf2 = scalar_profile(&f);
    let expected_f = UniPoly::monomial(Rat::one(), 2);
    if pf2.det_curve != expected_f {
        return Err(Error::Internal("det(f(xI)) != x^2 for f = Z".into()));
    }
    let pg = scalar_profile(&g);
    let expected_g = UniPoly::new(vec![c.det(), -c.trace(), Rat::one()]);
    if pg.det_curve != expected_g {
        return Err(Error::Internal(
            "det(g(xI)) != x^2 - tr(C) x + det(C) for g = Z - C".into(),
        ));
    }
    torsion_classes_2x2(&f, &g, opt)
}

/// The singular-shift family: over Q[lambda]/Phi_p, the pair
/// (diag(lambda, 1), [[lambda, -1], [0, 1]]) differs by [[0,1],[0,0]] and
/// both members are torsion of order p.
#[derive(Clone, Debug)]
pub struct ShiftFamily {
    pub prime: u64,
    pub a1: RingMat,
    pub a2: RingMat,
    pub orders: (u64, u64),
    /// A1 - A2 equals [[0,1],[0,0]] exactly.
    pub difference_ok: bool,
    /// The closed form A2^n = [[lambda^n, -(1 + ... + lambda^{n-1})], [0, 1]]
    /// verified for n = 1..=p.
    pub power_identity_ok: bool,
}

pub fn singular_shift_family(p: u64) -> Result<ShiftFamily, Error> {
    if !crate::intfactor::is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let ring = QRing::cyclotomic(p);
    let lam = ring.generator();
    let a1 = RingMat::diagonal(&ring, vec![lam.clone(), ring.one()]);
    let mut a2 = RingMat::zero(&ring, 2);
    a2.set(0, 0, lam.clone());
    a2.set(0, 1, ring.from_rat(rat_int(-1)));
    a2.set(1, 1, ring.one());

    let c = RatMat::from_i64s(2, &[0, 1, 0, 0]).lift(&ring);
    let difference_ok = a1.sub(&a2) == c;

    let r1 = crate::matpoly::torsion_report(&a1, crate::matpoly::TORSION_ORDER_LIMIT);
    let r2 = crate::matpoly::torsion_report(&a2, crate::matpoly::TORSION_ORDER_LIMIT);
    let (o1, o2) = match (r1.order, r2.order) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(Error::Internal(
                "singular-shift members failed the torsion check".into(),
            ))
        }
    };

    // closed-form powers
    let mut power_identity_ok = true;
    let mut geom = ring.zero(); // 1 + lambda + ... + lambda^{n-1}
    for n in 1..=p {
        geom = geom.add(&lam.pow(n - 1));
        let pow = a2.pow(n);
        let mut want = RingMat::zero(&ring, 2);
        want.set(0, 0, lam.pow(n));
        want.set(0, 1, geom.neg());
        want.set(1, 1, ring.one());
        if pow != want {
            power_identity_ok = false;
            break;
        }
    }

    Ok(ShiftFamily {
        prime: p,
        a1,
        a2,
        orders: (o1, o2),
        difference_ok,
        power_identity_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(bound: u64) -> EngineOptions {
        EngineOptions {
            conductor_bound: bound,
            ..EngineOptions::default()
        }
    }

    fn z() -> MatPoly {
        MatPoly::z(2)
    }

    fn z_minus_i() -> MatPoly {
        MatPoly::z_minus(&RatMat::identity(2))
    }

    #[test]
    fn torsion_locus_of_scalar_over_phi6() {
        let ring = QRing::cyclotomic(6);
        let a = RingMat::diagonal(&ring, vec![ring.generator(); 2]);
        let (h, n) = torsion_good_locus(&a).unwrap();
        assert_eq!(h, crate::cyclotomic::cyclotomic_poly(6));
        assert_eq!(n, 6);
    }

    #[test]
    fn torsion_locus_rejects_jordan() {
        let ring = QRing::cyclotomic(6);
        let a = RingMat::jordan_block(&ring, ring.generator(), 2);
        assert!(torsion_good_locus(&a).is_none());
    }

    #[test]
    fn torsion_locus_splits_mixed_modulus() {
        // modulus Phi_6 * (x - 2): torsion only on the Phi_6 part
        let m = &crate::cyclotomic::cyclotomic_poly(6) * &UniPoly::from_i64s(&[-2, 1]);
        let ring = QRing::new(m).unwrap();
        let a = RingMat::diagonal(&ring, vec![ring.generator(); 2]);
        let (h, n) = torsion_good_locus(&a).unwrap();
        assert_eq!(h, crate::cyclotomic::cyclotomic_poly(6));
        assert_eq!(n, 6);
    }

    #[test]
    fn shift_pair_three_classes() {
        let out = torsion_classes_2x2(&z(), &z_minus_i(), &opts(6)).unwrap();
        match out {
            EngineOutcome::Solutions { solutions, bound } => {
                assert_eq!(bound.found_count, 3, "solutions: {solutions:?}");
                assert!(bound.within_bound);
                // one scalar family of two classes, one diagonal pair class
                let scalars: u64 = solutions
                    .iter()
                    .filter(|s| s.shape == JordanShape::Scalar)
                    .map(|s| s.class_count)
                    .sum();
                let pairs: u64 = solutions
                    .iter()
                    .filter(|s| s.shape == JordanShape::DiagonalPair)
                    .map(|s| s.class_count)
                    .sum();
                assert_eq!(scalars, 2);
                assert_eq!(pairs, 1);
                assert!(solutions.iter().all(|s| s.shape != JordanShape::JordanBlock));
                // orders: f(A) has order 6, g(A) order 3 on every family
                for s in &solutions {
                    assert_eq!(s.orders, (6, 3));
                }
            }
            EngineOutcome::Refused(r) => panic!("unexpected refusal: {r:?}"),
        }
    }

    #[test]
    fn shift_pair_monotone_in_bound() {
        let a = torsion_classes_2x2(&z(), &z_minus_i(), &opts(6)).unwrap();
        let b = torsion_classes_2x2(&z(), &z_minus_i(), &opts(12)).unwrap();
        match (a, b) {
            (
                EngineOutcome::Solutions { bound: ba, solutions: sa },
                EngineOutcome::Solutions { bound: bb, solutions: sb },
            ) => {
                assert_eq!(ba.found_count, 3);
                assert_eq!(bb.found_count, 3);
                let keys_a: Vec<_> = sa.iter().map(|s| &s.conjugacy_key).collect();
                let keys_b: Vec<_> = sb.iter().map(|s| &s.conjugacy_key).collect();
                assert_eq!(keys_a, keys_b);
            }
            _ => panic!("expected solutions"),
        }
    }

    #[test]
    fn commuting_case_same_three_classes() {
        let out = commuting_torsion_classes(&z(), &z_minus_i(), &opts(6)).unwrap();
        match out {
            EngineOutcome::Solutions { bound, .. } => {
                assert_eq!(bound.found_count, 3);
                assert_eq!(bound.hypothesis_check, HypothesisCheck::EigenvaluePairs);
                // 2 * (22 * 2^5 * 2 * 1 * 1)^2
                let l = BigUint::from(22u32 * 32 * 2);
                assert_eq!(bound.theorem_bound, BigUint::from(2u32) * (&l * &l));
            }
            EngineOutcome::Refused(r) => panic!("unexpected refusal: {r:?}"),
        }
    }

    #[test]
    fn printed_dependent_pair_is_refused() {
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
        match torsion_classes_2x2(&f, &g, &opts(6)).unwrap() {
            EngineOutcome::Refused(r) => match r.reason {
                RefusalReason::SpectralDependence { f_index, g_index, .. } => {
                    assert_eq!((f_index, g_index), (0, 0));
                }
                other => panic!("wrong refusal: {other:?}"),
            },
            EngineOutcome::Solutions { .. } => panic!("should refuse"),
        }
    }

    #[test]
    fn difference_check_refuses_singular_shift() {
        let c = RatMat::from_i64s(2, &[0, 1, 0, 0]);
        match difference_torsion_check(&c, &opts(6)).unwrap() {
            EngineOutcome::Refused(r) => {
                assert!(matches!(r.reason, RefusalReason::SingularShift));
            }
            _ => panic!("should refuse det(C) = 0"),
        }
    }

    #[test]
    fn difference_check_identity_shift() {
        match difference_torsion_check(&RatMat::identity(2), &opts(6)).unwrap() {
            EngineOutcome::Solutions { bound, .. } => {
                assert_eq!(bound.found_count, 3);
                assert_eq!(bound.theorem_bound, BigUint::from(2u32).pow(27));
            }
            EngineOutcome::Refused(r) => panic!("unexpected refusal: {r:?}"),
        }
    }

    #[test]
    fn singular_shift_family_orders() {
        for p in [2u64, 3, 5, 7] {
            let fam = singular_shift_family(p).unwrap();
            assert_eq!(fam.orders, (p, p));
            assert!(fam.difference_ok);
            assert!(fam.power_identity_ok);
        }
        assert!(singular_shift_family(6).is_err());
    }

    #[test]
    fn scalar_coefficient_multiset_case() {
        // r = 3, f = Z, g = Z - I with scalar coefficients: solutions are
        // diagonal matrices with entries among the Phi_6 roots: C(2+3-1, 3) = 4
        let f = MatPoly::z(3);
        let g = MatPoly::z_minus(&RatMat::identity(3));
        match commuting_torsion_classes(&f, &g, &opts(6)).unwrap() {
            EngineOutcome::Solutions { solutions, bound } => {
                assert_eq!(solutions.len(), 1);
                assert_eq!(solutions[0].shape, JordanShape::DiagonalMultiset);
                assert_eq!(solutions[0].class_count, 4);
                assert_eq!(bound.found_count, 4);
            }
            EngineOutcome::Refused(r) => panic!("unexpected refusal: {r:?}"),
        }
    }
}
