//! Resultant curves of a pair of matrix polynomials, binomial special-factor
//! detection, torsion (cyclotomic) points on plane curves, and the scalar
//! scans that feed the theorem engines.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::bipoly::{resultant_elim, BiPoly, Var};
use crate::cyclotomic::{cyclotomic_part, cyclotomic_poly, cyclotomic_table};
use crate::matpoly::{scalar_profile, MatPoly, ScalarProfile};
use crate::qring::QRing;
use crate::rat::Rat;
use crate::ringpoly::{gcd_field, RingPoly};
use crate::unipoly::UniPoly;
use crate::Error;

/// Default conductor bound for scans.
pub const DEFAULT_CONDUCTOR_BOUND: u64 = 24;

/// The two resultant curves attached to a pair (f, g), plus the swapped
/// eigen/determinant mix.
#[derive(Clone, Debug)]
pub struct CurvePair {
    /// Res_x(P_f(x, y1), P_g(x, y2)); y1 carries f's eigenvalues.
    pub r_curve: BiPoly,
    /// Res_x(P_f(x, y1), y2 - det g(xI)).
    pub t_fg: BiPoly,
    /// Res_x(P_g(x, y1), y2 - det f(xI)); roles swapped.
    pub t_gf: BiPoly,
    /// r (deg f + deg g), the common total-degree budget.
    pub degree_budget: u32,
    pub profile_f: ScalarProfile,
    pub profile_g: ScalarProfile,
}

pub fn build_curves(f: &MatPoly, g: &MatPoly) -> Result<CurvePair, Error> {
    if f.dim() != g.dim() {
        return Err(Error::Dimension(
            "matrix polynomials must share a dimension".into(),
        ));
    }
    let pf = scalar_profile(f);
    let pg = scalar_profile(g);
    let r_curve = resultant_elim(&pf.char_surface, &pg.char_surface, Var::First)?;
    let t_fg = resultant_elim(&pf.char_surface, &det_slice(&pg.det_curve), Var::First)?;
    let t_gf = resultant_elim(&pg.char_surface, &det_slice(&pf.det_curve), Var::First)?;
    for (name, c) in [("R", &r_curve), ("T_fg", &t_fg), ("T_gf", &t_gf)] {
        if c.is_zero() {
            return Err(Error::Internal(format!(
                "resultant curve {name} vanished; the inputs are not genuine matrix polynomials"
            )));
        }
    }
    let budget = (f.dim() * (f.degree() + g.degree())) as u32;
    Ok(CurvePair {
        r_curve,
        t_fg,
        t_gf,
        degree_budget: budget,
        profile_f: pf,
        profile_g: pg,
    })
}

/// y2 - d(x) as a bivariate polynomial (x first, y2 second).
fn det_slice(det: &UniPoly) -> BiPoly {
    &BiPoly::var(Var::Second) - &BiPoly::from_unipoly(det, Var::First)
}

// ---------------------------------------------------------------------------
// special (binomial) factors

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialFactorForm {
    /// y1^i * y2^j - rho
    MonomialType,
    /// y1^i - rho * y2^j
    RatioType,
}

/// A verified binomial factor with a root-of-unity constant of the given
/// conductor; `content` is the univariate polynomial whose cyclotomic part
/// produced the candidate.
#[derive(Clone, Debug)]
pub struct SpecialFactor {
    pub form: SpecialFactorForm,
    pub i: u32,
    pub j: u32,
    pub conductor: u64,
    pub content: UniPoly,
}

/// Complete scan for factors y1^i - rho y2^j and y1^i y2^j - rho over
/// coprime (i, j) within the degree box; every reported factor is verified
/// by exact division over the cyclotomic quotient ring.
pub fn special_factor_scan(curve: &BiPoly) -> Vec<SpecialFactor> {
    assert!(!curve.is_zero(), "special factor scan of zero");
    let d1 = curve.deg(Var::First).unwrap_or(0);
    let d2 = curve.deg(Var::Second).unwrap_or(0);
    let mut out: Vec<SpecialFactor> = Vec::new();

    // univariate factors: cyclotomic part of the content in either variable
    for (var, i, j) in [(Var::First, 1u32, 0u32), (Var::Second, 0, 1)] {
        let content = variable_content(curve, var);
        if content.is_constant() {
            continue;
        }
        let (parts, _) = cyclotomic_part(&content);
        for &n in parts.keys() {
            out.push(SpecialFactor {
                form: SpecialFactorForm::RatioType,
                i,
                j,
                conductor: n,
                content: content.clone(),
            });
        }
    }

    for i in 1..=d1 {
        for j in 1..=d2 {
            if num_integer::gcd(i, j) != 1 {
                continue;
            }
            for form in [SpecialFactorForm::RatioType, SpecialFactorForm::MonomialType] {
                let content = substitution_content(curve, i, j, form);
                if content.is_constant() {
                    continue;
                }
                let (parts, _) = cyclotomic_part(&content);
                for &n in parts.keys() {
                    if verify_binomial_division(curve, i, j, n, form) {
                        out.push(SpecialFactor {
                            form,
                            i,
                            j,
                            conductor: binomial_constant_conductor(i, n),
                            content: content.clone(),
                        });
                    }
                }
            }
        }
    }
    out
}

/// gcd of the coefficient polynomials of the curve grouped by the other
/// variable: the part of the curve that only involves `var`.
fn variable_content(curve: &BiPoly, var: Var) -> UniPoly {
    let coeffs = curve.coeffs_wrt(var.other());
    let mut g = UniPoly::zero();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() { c.monic().0 } else { g.gcd(&c) };
        if g.is_one() {
            break;
        }
    }
    g
}

/// Substitute (y1, y2) = (s t^j, t^i) for the ratio form, (s t^j, t^-i) with
/// Laurent clearing for the monomial form, and return the content in t: a
/// binomial factor forces s^i - rho to divide it.
fn substitution_content(curve: &BiPoly, i: u32, j: u32, form: SpecialFactorForm) -> UniPoly {
    let shift = match form {
        SpecialFactorForm::RatioType => 0i64,
        SpecialFactorForm::MonomialType => (i as i64) * (curve.deg(Var::Second).unwrap_or(0) as i64),
    };
    // rows[t-exponent] = polynomial in s
    let mut rows: std::collections::BTreeMap<i64, Vec<(usize, Rat)>> = Default::default();
    for (&(e1, e2), c) in curve.terms() {
        let t_exp = match form {
            SpecialFactorForm::RatioType => (j as i64) * e1 as i64 + (i as i64) * e2 as i64,
            SpecialFactorForm::MonomialType => {
                (j as i64) * e1 as i64 - (i as i64) * e2 as i64 + shift
            }
        };
        rows.entry(t_exp).or_default().push((e1 as usize, c.clone()));
    }
    let mut g = UniPoly::zero();
    for (_, terms) in rows {
        let mut coeffs: Vec<Rat> = Vec::new();
        for (s_exp, c) in terms {
            if coeffs.len() <= s_exp {
                coeffs.resize(s_exp + 1, Rat::zero());
            }
            coeffs[s_exp] = &coeffs[s_exp] + &c;
        }
        let poly = UniPoly::new(coeffs);
        if poly.is_zero() {
            continue;
        }
        g = if g.is_zero() { poly.monic().0 } else { g.gcd(&poly) };
        if g.is_one() {
            break;
        }
    }
    g
}

/// Conductor of rho = omega^i for omega a primitive n-th root.
fn binomial_constant_conductor(i: u32, n: u64) -> u64 {
    n / num_integer::gcd(n, i as u64)
}

/// Exact division test of the curve by y1^i - u^i y2^j (ratio) or
/// y1^i y2^j - u^i (monomial) over Q[u]/Phi_n: rewrite to normal form and
/// check the remainder vanishes.
fn verify_binomial_division(
    curve: &BiPoly,
    i: u32,
    j: u32,
    n: u64,
    form: SpecialFactorForm,
) -> bool {
    let ring = QRing::cyclotomic(n);
    let rho = ring.generator().pow(i as u64);
    let mut acc: std::collections::BTreeMap<(u32, u32), crate::qring::RingElem> =
        Default::default();
    for (&(e1, e2), c) in curve.terms() {
        // reduce the monomial
        let (mut a, mut b) = (e1, e2);
        let mut coeff = ring.from_rat(c.clone());
        match form {
            SpecialFactorForm::RatioType => {
                // y1^i -> rho y2^j
                while a >= i {
                    a -= i;
                    b += j;
                    coeff = coeff.mul(&rho);
                }
            }
            SpecialFactorForm::MonomialType => {
                // y1^i y2^j -> rho
                while a >= i && b >= j {
                    a -= i;
                    b -= j;
                    coeff = coeff.mul(&rho);
                }
            }
        }
        let slot = acc.entry((a, b)).or_insert_with(|| ring.zero());
        *slot = slot.add(&coeff);
    }
    acc.values().all(|v| v.is_zero())
}

// ---------------------------------------------------------------------------
// torsion points on curves

#[derive(Clone, Debug)]
pub struct TorsionPointGroup {
    /// Conductor of the y1 coordinate.
    pub n1: u64,
    /// Conductor of the y2 coordinate.
    pub n2: u64,
    /// Number of y2-roots above each embedding of zeta_{n1} (the degree of
    /// the gcd over Q(zeta_{n1})).
    pub per_embedding: usize,
    /// Total geometric points in this group: phi(n1) * per_embedding.
    pub count: u64,
}

#[derive(Clone, Debug)]
pub struct TorsionPointSet {
    pub points: Vec<TorsionPointGroup>,
    pub count: u64,
    pub scan_bound: u64,
    /// 11 (deg F)^2, the uniform count bound for curves without special factors.
    pub count_bound: u64,
}

/// All points on the curve whose coordinates are roots of unity of conductor
/// at most `bound`. Refuses curves with special binomial factors (their
/// torsion points form infinite families).
pub fn torsion_points_on_curve(curve: &BiPoly, bound: u64) -> Result<TorsionPointSet, Error> {
    if curve.is_zero() {
        return Err(Error::Domain("zero curve".into()));
    }
    let special = special_factor_scan(curve);
    if !special.is_empty() {
        let s = &special[0];
        return Err(Error::Domain(format!(
            "curve has special factor; torsion points are infinite (form {:?}, (i,j)=({},{}), conductor {})",
            s.form, s.i, s.j, s.conductor
        )));
    }
    let table = cyclotomic_table(bound.max(1));
    let mut points = Vec::new();
    let mut count = 0u64;
    let y2_coeffs = curve.coeffs_wrt(Var::Second);
    for n1 in 1..=bound {
        let ring = QRing::cyclotomic(n1);
        let zeta = ring.generator();
        // F(zeta, u) as a polynomial in u over Q(zeta_{n1})
        let values: Vec<crate::qring::RingElem> = y2_coeffs
            .iter()
            .map(|c| RingPoly::lift(&ring, c).eval(&zeta))
            .collect();
        let slice = RingPoly::new(ring.clone(), values);
        if slice.is_zero() {
            return Err(Error::Internal(
                "curve vanishes along a cyclotomic fiber despite passing the special-factor scan"
                    .into(),
            ));
        }
        for n2 in 1..=bound {
            let phi2 = RingPoly::lift(&ring, &table[(n2 - 1) as usize]);
            let g = gcd_field(&slice, &phi2);
            let deg = g.degree().unwrap_or(0);
            if deg == 0 {
                continue;
            }
            // verification: g divides both the slice and Phi_{n2} exactly
            debug_assert!(divides(&g, &slice) && divides(&g, &phi2));
            let total = crate::intfactor::euler_phi(n1) * deg as u64;
            points.push(TorsionPointGroup {
                n1,
                n2,
                per_embedding: deg,
                count: total,
            });
            count += total;
        }
    }
    let d = curve.total_degree().unwrap_or(0) as u64;
    Ok(TorsionPointSet {
        points,
        count,
        scan_bound: bound,
        count_bound: 11 * d * d,
    })
}

fn divides(g: &RingPoly, p: &RingPoly) -> bool {
    // g is monic here (field gcd); long division by hand
    let branches = crate::ringpoly::gcd_dynamic(p, g);
    branches.len() == 1 && branches[0].1 == *g
}

// ---------------------------------------------------------------------------
// scalar scans

#[derive(Clone, Debug)]
pub struct ScanCertificate {
    pub n: u64,
    pub m: u64,
    /// Monic squarefree gcd slice; divides the witness.
    pub gcd: UniPoly,
}

/// The locus of scalars produced by a conductor-stratified scan: the monic
/// squarefree polynomial vanishing exactly on the found lambdas, plus the
/// per-(n, m) certificates that produced them.
#[derive(Clone, Debug)]
pub struct ScanLocus {
    pub witness: UniPoly,
    pub certificates: Vec<ScanCertificate>,
    pub scan_bound: u64,
    /// A-priori count bound for this scan.
    pub count_bound: BigUint,
    pub root_count: usize,
}

/// Res_y(P(x, y), Phi_n(y)): the scalars where the profile has an eigenvalue
/// of conductor n (with multiplicity).
pub fn eigen_unity_slice(profile: &ScalarProfile, n: u64) -> UniPoly {
    let phi = BiPoly::from_unipoly(&cyclotomic_poly(n), Var::Second);
    let res = resultant_elim(&profile.char_surface, &phi, Var::Second)
        .expect("char surface is monic in y");
    res.expect_unipoly(Var::First)
        .expect("slice is univariate in x")
}

fn scan_grid<FU, FV>(bound: u64, u_slice: FU, v_slice: FV) -> Result<(UniPoly, Vec<ScanCertificate>), Error>
where
    FU: Fn(u64) -> UniPoly,
    FV: Fn(u64) -> UniPoly,
{
    let us: Vec<(u64, UniPoly)> = (1..=bound).map(|n| (n, u_slice(n))).collect();
    let vs: Vec<(u64, UniPoly)> = (1..=bound).map(|m| (m, v_slice(m))).collect();
    let mut witness = UniPoly::one();
    let mut certificates = Vec::new();
    for (n, u) in &us {
        for (m, v) in &vs {
            if u.is_zero() && v.is_zero() {
                return Err(Error::Domain(
                    "scan locus is the whole line; both slices vanish identically".into(),
                ));
            }
            let g = if u.is_zero() {
                v.clone().monic().0
            } else if v.is_zero() {
                u.clone().monic().0
            } else {
                u.gcd(v)
            };
            if g.is_constant() {
                continue;
            }
            let g = g.squarefree_part();
            certificates.push(ScanCertificate {
                n: *n,
                m: *m,
                gcd: g.clone(),
            });
            // witness := lcm(witness, g), staying squarefree
            let common = witness.gcd(&g);
            witness = &witness * &g.div_exact(&common);
        }
    }
    Ok((witness, certificates))
}

fn deg_bounds(f: &MatPoly, g: &MatPoly) -> (BigUint, BigUint, BigUint, BigUint) {
    let r = BigUint::from(f.dim());
    let df = BigUint::from(f.degree());
    let dg = BigUint::from(g.degree());
    let sum = &df + &dg;
    (r, df, dg, sum)
}

/// Scalars where f(lambda I) and g(lambda I) each have at least one
/// root-of-unity eigenvalue of conductor within the bound.
pub fn unit_eigen_pair_scan(f: &MatPoly, g: &MatPoly, bound: u64) -> Result<ScanLocus, Error> {
    let pf = scalar_profile(f);
    let pg = scalar_profile(g);
    let (witness, certificates) = scan_grid(
        bound,
        |n| eigen_unity_slice(&pf, n),
        |m| eigen_unity_slice(&pg, m),
    )?;
    let (r, df, dg, sum) = deg_bounds(f, g);
    let count_bound = BigUint::from(22u32) * r.pow(5) * &sum * &df * &dg;
    Ok(ScanLocus {
        root_count: witness.deg_or0(),
        witness,
        certificates,
        scan_bound: bound,
        count_bound,
    })
}

/// Scalars where f(lambda I) has a root-of-unity eigenvalue and
/// det(g(lambda I)) is a root of unity.
pub fn unit_eigen_det_scan(f: &MatPoly, g: &MatPoly, bound: u64) -> Result<ScanLocus, Error> {
    let pf = scalar_profile(f);
    let pg = scalar_profile(g);
    let (witness, certificates) = scan_grid(
        bound,
        |n| eigen_unity_slice(&pf, n),
        |m| cyclotomic_poly(m).compose(&pg.det_curve),
    )?;
    let (r, df, dg, sum) = deg_bounds(f, g);
    let count_bound = BigUint::from(22u32) * r.pow(4) * &sum * &df * &dg;
    Ok(ScanLocus {
        root_count: witness.deg_or0(),
        witness,
        certificates,
        scan_bound: bound,
        count_bound,
    })
}

/// Scalars where both determinants are roots of unity.
pub fn unit_det_pair_scan(f: &MatPoly, g: &MatPoly, bound: u64) -> Result<ScanLocus, Error> {
    let pf = scalar_profile(f);
    let pg = scalar_profile(g);
    let (witness, certificates) = scan_grid(
        bound,
        |n| cyclotomic_poly(n).compose(&pf.det_curve),
        |m| cyclotomic_poly(m).compose(&pg.det_curve),
    )?;
    let (r, _, _, sum) = deg_bounds(f, g);
    let count_bound = &r * &r * &sum * &sum;
    Ok(ScanLocus {
        root_count: witness.deg_or0(),
        witness,
        certificates,
        scan_bound: bound,
        count_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matpoly::RatMat;
    use crate::rat::rat_int;

    fn z2() -> MatPoly {
        MatPoly::z(2)
    }

    fn z_minus_i() -> MatPoly {
        MatPoly::z_minus(&RatMat::identity(2))
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
    fn curve_degrees_within_budget() {
        let (f, g) = remark_pair();
        let cp = build_curves(&f, &g).unwrap();
        assert_eq!(cp.degree_budget, 8);
        assert!(cp.r_curve.total_degree().unwrap() <= 8);
        assert!(cp.t_fg.total_degree().unwrap() <= 8);
        assert!(cp.t_gf.total_degree().unwrap() <= 8);
    }

    #[test]
    fn shift_pair_t_curve() {
        // f = Z, g = Z - C for C = [[2,0],[0,3]]: det g(xI) = x^2 - 5x + 6
        let c = RatMat::from_i64s(2, &[2, 0, 0, 3]);
        let f = z2();
        let g = MatPoly::z_minus(&c);
        let cp = build_curves(&f, &g).unwrap();
        let pg = scalar_profile(&g);
        assert_eq!(pg.det_curve, UniPoly::from_i64s(&[6, -5, 1]));
        assert!(!cp.t_fg.is_zero());
    }

    #[test]
    fn special_factor_monomial() {
        // y1 y2 - 1
        let y1 = BiPoly::var(Var::First);
        let y2 = BiPoly::var(Var::Second);
        let curve = &(&y1 * &y2) - &BiPoly::one();
        let found = special_factor_scan(&curve);
        assert!(found
            .iter()
            .any(|s| s.form == SpecialFactorForm::MonomialType
                && (s.i, s.j) == (1, 1)
                && s.conductor == 1));
    }

    #[test]
    fn special_factor_ratio() {
        // y1^2 - y2^3
        let y1 = BiPoly::var(Var::First);
        let y2 = BiPoly::var(Var::Second);
        let curve = &(&y1 * &y1) - &(&(&y2 * &y2) * &y2);
        let found = special_factor_scan(&curve);
        assert!(found
            .iter()
            .any(|s| s.form == SpecialFactorForm::RatioType
                && (s.i, s.j) == (2, 3)
                && s.conductor == 1));
    }

    #[test]
    fn no_special_factor_for_affine_line() {
        // y1 + y2 - 3
        let y1 = BiPoly::var(Var::First);
        let y2 = BiPoly::var(Var::Second);
        let curve = &(&y1 + &y2) - &BiPoly::constant(rat_int(3));
        assert!(special_factor_scan(&curve).is_empty());
    }

    #[test]
    fn planted_factor_with_rho_of_conductor_6() {
        // (y1 - rho y2) * (y1 + y2 - 3) over Q(zeta_6) is not rational; plant
        // instead the rational norm: (y1^2 - y1 y2 + y2^2) = prod over
        // primitive 6th roots (y1 - rho y2)
        let y1 = BiPoly::var(Var::First);
        let y2 = BiPoly::var(Var::Second);
        let norm = &(&(&y1 * &y1) - &(&y1 * &y2)) + &(&y2 * &y2);
        let cof = &(&y1 + &y2) - &BiPoly::constant(rat_int(3));
        let curve = &norm * &cof;
        let found = special_factor_scan(&curve);
        assert!(
            found
                .iter()
                .any(|s| s.form == SpecialFactorForm::RatioType
                    && (s.i, s.j) == (1, 1)
                    && s.conductor == 6),
            "found: {found:?}"
        );
    }

    #[test]
    fn torsion_points_on_line() {
        // y1 + y2 - 2 has exactly the point (1, 1)
        let y1 = BiPoly::var(Var::First);
        let y2 = BiPoly::var(Var::Second);
        let curve = &(&y1 + &y2) - &BiPoly::constant(rat_int(2));
        let pts = torsion_points_on_curve(&curve, 12).unwrap();
        assert_eq!(pts.count, 1);
        assert_eq!(pts.points.len(), 1);
        assert_eq!((pts.points[0].n1, pts.points[0].n2), (1, 1));
    }

    #[test]
    fn torsion_points_on_circle_like_curve() {
        // y1^2 + y2^2 - 2: the four points (+-1, +-1)
        let y1 = BiPoly::var(Var::First);
        let y2 = BiPoly::var(Var::Second);
        let curve = &(&(&y1 * &y1) + &(&y2 * &y2)) - &BiPoly::constant(rat_int(2));
        let pts = torsion_points_on_curve(&curve, 8).unwrap();
        assert_eq!(pts.count, 4);
        assert!(pts.count <= pts.count_bound);
    }

    #[test]
    fn torsion_scan_refuses_special_factor() {
        let y1 = BiPoly::var(Var::First);
        let y2 = BiPoly::var(Var::Second);
        let curve = &y1 - &y2;
        assert!(torsion_points_on_curve(&curve, 6).is_err());
    }

    #[test]
    fn eigen_scan_of_shift_pair_is_phi6() {
        // f = Z, g = Z - I, bound 6: witness x^2 - x + 1
        let locus = unit_eigen_pair_scan(&z2(), &z_minus_i(), 6).unwrap();
        assert_eq!(locus.witness, UniPoly::from_i64s(&[1, -1, 1]));
        assert_eq!(locus.root_count, 2);
        assert!(BigUint::from(locus.root_count) <= locus.count_bound);
    }

    #[test]
    fn eigen_det_scan_contains_phi6_roots() {
        let locus = unit_eigen_det_scan(&z2(), &z_minus_i(), 6).unwrap();
        let phi6 = UniPoly::from_i64s(&[1, -1, 1]);
        assert!(locus.witness.gcd(&phi6) == phi6);
    }

    #[test]
    fn det_scan_of_z_z() {
        // f = g = Z: dets are x^2; locus at bound 2: x^2 in {1, -1} ->
        // 4th roots of unity
        let locus = unit_det_pair_scan(&z2(), &z2(), 2).unwrap();
        // x^4 - 1 has the four 4th roots; witness may order factors differently
        let phi14 = &(&cyclotomic_poly(1) * &cyclotomic_poly(2)) * &cyclotomic_poly(4);
        assert_eq!(locus.witness, phi14);
    }

    #[test]
    fn certificates_divide_witness() {
        let locus = unit_eigen_pair_scan(&z2(), &z_minus_i(), 8).unwrap();
        for c in &locus.certificates {
            assert!(locus.witness.divrem(&c.gcd).1.is_zero());
            assert!(c.gcd.is_squarefree());
        }
        assert!(locus.witness.is_squarefree());
    }
}
