//! The candidate hyperKähler structure on the minimal orbit built from a
//! potential `rho(eta)`, and the checks that decide whether it is one.
//!
//! Only `rho'` and `rho''` ever enter: for tangent vectors `u, v` at `X`,
//!
//! ```text
//! g(u, v)   = 2 Re( rho' <u, sigma v> + rho'' <u, sigma X> <sigma v, X> )
//! w_I(u, v) = 2 Im( rho' <u, sigma v> + rho'' <u, sigma X> <sigma v, X> )
//! J u       = -2 rho' [X, sigma u] - 2 rho'' <sigma u, X> [X, sigma X]
//! K         = I J,  I u = i u
//! ```
//!
//! The potentials considered are `rho' = sqrt(lambda^2 eta + c) / (2 eta)`, with
//! `lambda^2 = eta(e_theta)`. The hyperKähler condition `J^2 = -1` holds for
//! every `c >= 0` on `sl(2)` and only for `c = 0` otherwise.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chevalley::{Element, LieAlgebra};
use crate::linalg;
use crate::orbit::{tangent_space, OrbitError, OrbitPoint, TangentSpace};
use crate::report::{CheckList, CheckRecord};
use crate::rootsystem::Series;
use crate::sampling::{random_element, stream_rng};

/// Tolerance for operator identities (largest singular value).
pub const OPERATOR_TOL: f64 = 1e-8;
/// Tolerance for scalar identities.
pub const SCALAR_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum HkError {
    #[error("eta must be positive, got {0}")]
    NonPositiveEta(f64),
    #[error("potential parameter c must be finite and >= 0, got {0}")]
    BadParameter(f64),
    #[error("uniqueness deviation is undefined for sl(2): the Killing complement of the triple is empty")]
    RankOneAlgebra,
    #[error(transparent)]
    Orbit(#[from] OrbitError),
}

/// First and second derivatives of a potential as a function of `eta`.
pub trait Potential: Sync {
    fn d1(&self, eta: f64) -> f64;
    fn d2(&self, eta: f64) -> f64;
}

/// `rho'(eta) = sqrt(lambda_sq * eta + c) / (2 eta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialFamily {
    pub lambda_sq: f64,
    pub c: f64,
}

impl PotentialFamily {
    pub fn new(lambda_sq: f64, c: f64) -> Result<Self, HkError> {
        if !(c.is_finite() && c >= 0.0) {
            return Err(HkError::BadParameter(c));
        }
        Ok(PotentialFamily { lambda_sq, c })
    }

    pub fn for_algebra(alg: &LieAlgebra, c: f64) -> Result<Self, HkError> {
        Self::new(lambda_squared(alg) as f64, c)
    }

    /// The sl(2) family `rho' = sqrt(eta + c_sl2) / eta`.
    pub fn sl2(c_sl2: f64) -> Result<Self, HkError> {
        Self::new(4.0, global_c_from_sl2(c_sl2))
    }
}

/// `sqrt(eta + c') / eta` equals `sqrt(4 eta + 4 c') / (2 eta)`, so with
/// `lambda^2 = 4` the global parameter is `c = 4 c'`.
pub fn global_c_from_sl2(c_sl2: f64) -> f64 {
    4.0 * c_sl2
}

pub fn sl2_c_from_global(c: f64) -> f64 {
    c / 4.0
}

impl Potential for PotentialFamily {
    fn d1(&self, eta: f64) -> f64 {
        (self.lambda_sq * eta + self.c).sqrt() / (2.0 * eta)
    }

    fn d2(&self, eta: f64) -> f64 {
        let s = self.lambda_sq * eta + self.c;
        (self.lambda_sq * eta - 2.0 * s) / (4.0 * eta * eta * s.sqrt())
    }
}

/// A potential given by explicit derivative functions.
#[derive(Clone, Copy)]
pub struct ExplicitPotential {
    pub d1: fn(f64) -> f64,
    pub d2: fn(f64) -> f64,
}

impl Potential for ExplicitPotential {
    fn d1(&self, eta: f64) -> f64 {
        (self.d1)(eta)
    }
    fn d2(&self, eta: f64) -> f64 {
        (self.d2)(eta)
    }
}

/// `lambda^2 = eta(e_theta) = kappa(e_theta, f_theta)`, exact.
pub fn lambda_squared(alg: &LieAlgebra) -> i64 {
    let th = alg.theta();
    alg.killing(alg.e_index(th), alg.f_index(th))
}

/// Values of `lambda^2` as listed in the literature table, indexed the way that
/// table indexes them, for comparison with [`lambda_squared`].
pub mod published {
    use super::*;

    /// `2n` for `Sl(n)`, `Sp(n-1)`, `so(n+2)`; 8, 18, 24, 36, 70 for the exceptional types.
    pub fn exceptional(series: Series, rank: usize) -> Option<i64> {
        match (series, rank) {
            (Series::G, 2) => Some(8),
            (Series::F, 4) => Some(18),
            (Series::E, 6) => Some(24),
            (Series::E, 7) => Some(36),
            (Series::E, 8) => Some(70),
            _ => None,
        }
    }

    /// `A_r = Sl(r+1)`: `2(r+1)`.
    pub fn special_linear(rank: usize) -> i64 {
        2 * (rank as i64 + 1)
    }

    /// Reading of the classical entries with `n` tied to the matrix size:
    /// `so(m)` with `m = n + 2`, and `Sp(n-1)` acting on `C^{n-1}`.
    pub fn classical_matrix_size(series: Series, rank: usize) -> Option<i64> {
        let r = rank as i64;
        match series {
            Series::A => Some(special_linear(rank)),
            Series::B => Some(2 * (2 * r + 1 - 2)),
            Series::D => Some(2 * (2 * r - 2)),
            Series::C => Some(2 * (2 * r + 1)),
            _ => None,
        }
    }

    /// Reading with `n` tied to the rank: `so(n+2)` of rank `n + 2`,
    /// `Sp(n-1)` of rank `n - 1`.
    pub fn classical_rank_index(series: Series, rank: usize) -> Option<i64> {
        let r = rank as i64;
        match series {
            Series::A => Some(special_linear(rank)),
            Series::B | Series::D => Some(2 * (r - 2)),
            Series::C => Some(2 * (r + 1)),
            _ => None,
        }
    }
}

/// `rho' > max(0, -eta rho'')`.
pub fn positivity_condition<P: Potential + ?Sized>(pot: &P, eta: f64) -> bool {
    let d1 = pot.d1(eta);
    d1 > 0.0f64.max(-eta * pot.d2(eta))
}

/// Metric, Kähler form and complex structures at one point.
pub struct HkStructure<'p, 'a, P: Potential + ?Sized> {
    point: &'p OrbitPoint<'a>,
    rho1: f64,
    rho2: f64,
    eta: f64,
    sigma_x: Element,
    x_sigma_x: Element,
    _pot: &'p P,
}

impl<'p, 'a, P: Potential + ?Sized> HkStructure<'p, 'a, P> {
    pub fn new(point: &'p OrbitPoint<'a>, pot: &'p P) -> Result<Self, HkError> {
        let eta = point.eta();
        if !(eta > 0.0) {
            return Err(HkError::NonPositiveEta(eta));
        }
        let alg = point.algebra();
        let sigma_x = alg.sigma(point.element());
        let x_sigma_x = alg.bracket_unchecked(point.element(), &sigma_x);
        Ok(HkStructure { point, rho1: pot.d1(eta), rho2: pot.d2(eta), eta, sigma_x, x_sigma_x, _pot: pot })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn rho1(&self) -> f64 {
        self.rho1
    }

    pub fn rho2(&self) -> f64 {
        self.rho2
    }

    fn alg(&self) -> &'a LieAlgebra {
        self.point.algebra()
    }

    /// `rho' <u, sigma v> + rho'' <u, sigma X> <sigma v, X>`.
    fn hermitian_kernel(&self, u: &Element, v: &Element) -> Complex64 {
        let alg = self.alg();
        let sv = alg.sigma(v);
        let a = alg.pairing_unchecked(u, &sv);
        let b = alg.pairing_unchecked(u, &self.sigma_x);
        let c = alg.pairing_unchecked(&sv, self.point.element());
        a * self.rho1 + b * c * self.rho2
    }

    /// `g(u, v)` on tangent vectors.
    pub fn metric(&self, u: &Element, v: &Element) -> f64 {
        2.0 * self.hermitian_kernel(u, v).re
    }

    /// `omega_I(u, v)` on tangent vectors.
    pub fn kahler_form_i(&self, u: &Element, v: &Element) -> f64 {
        2.0 * self.hermitian_kernel(u, v).im
    }

    pub fn metric_ab(&self, a: &Element, b: &Element) -> f64 {
        self.metric(&self.point.xi(a), &self.point.xi(b))
    }

    pub fn kahler_form_i_ab(&self, a: &Element, b: &Element) -> f64 {
        self.kahler_form_i(&self.point.xi(a), &self.point.xi(b))
    }

    pub fn apply_i(&self, u: &Element) -> Element {
        u.scale(Complex64::new(0.0, 1.0))
    }

    /// `J u = -2 rho' [X, sigma u] - 2 rho'' <sigma u, X> [X, sigma X]`.
    pub fn apply_j(&self, u: &Element) -> Element {
        let alg = self.alg();
        let su = alg.sigma(u);
        let first = alg.bracket_unchecked(self.point.element(), &su).scale_real(-2.0 * self.rho1);
        let coef = alg.pairing_unchecked(&su, self.point.element()) * (-2.0 * self.rho2);
        &first + &self.x_sigma_x.scale(coef)
    }

    /// `J xi_A` for `A` in the algebra.
    pub fn apply_j_ab(&self, a: &Element) -> Element {
        self.apply_j(&self.point.xi(a))
    }

    /// Preimage `B` with `xi_B = J xi_A`: `2 rho' sigma xi_A + 2 rho'' <sigma xi_A, X> sigma X`.
    pub fn j_preimage(&self, u: &Element) -> Element {
        let alg = self.alg();
        let su = alg.sigma(u);
        let coef = alg.pairing_unchecked(&su, self.point.element()) * (2.0 * self.rho2);
        &su.scale_real(2.0 * self.rho1) + &self.sigma_x.scale(coef)
    }

    /// `K = I J`.
    pub fn apply_k(&self, u: &Element) -> Element {
        self.apply_i(&self.apply_j(u))
    }

    pub fn omega_j(&self, u: &Element, v: &Element) -> f64 {
        self.metric(u, &self.apply_j(v))
    }

    pub fn omega_k(&self, u: &Element, v: &Element) -> f64 {
        self.metric(u, &self.apply_k(v))
    }

    /// The closed form for `c = 0` on algebras other than `sl(2)`:
    /// `J xi = -(lambda / (2 eta^{3/2})) (2 eta [X, sigma xi] - <sigma xi, X> [X, sigma X])`.
    pub fn apply_j_closed_form(&self, lambda_sq: f64, u: &Element) -> Element {
        let alg = self.alg();
        let su = alg.sigma(u);
        let pref = -lambda_sq.sqrt() / (2.0 * self.eta.powf(1.5));
        let a = alg.bracket_unchecked(self.point.element(), &su).scale_real(2.0 * self.eta);
        let b = self.x_sigma_x.scale(alg.pairing_unchecked(&su, self.point.element()));
        (&a - &b).scale_real(pref)
    }
}

/// Operator-level data on the real tangent space.
#[derive(Debug, Clone)]
pub struct RealOperators {
    pub i: DMatrix<f64>,
    pub j: DMatrix<f64>,
    pub k: DMatrix<f64>,
    pub gram: DMatrix<f64>,
}

pub fn real_operators<P: Potential + ?Sized>(hk: &HkStructure<'_, '_, P>, ts: &TangentSpace) -> RealOperators {
    let alg = hk.alg();
    let i = ts.real_operator(alg, |u| hk.apply_i(u));
    let j = ts.real_operator(alg, |u| hk.apply_j(u));
    let k = ts.real_operator(alg, |u| hk.apply_k(u));
    let basis = ts.real_basis();
    let n = basis.len();
    let gram = DMatrix::from_fn(n, n, |a, b| hk.metric(&basis[a], &basis[b]));
    RealOperators { i, j, k, gram }
}

/// Outcome of [`verify_quaternionic`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuaternionicReport {
    pub checks: CheckList,
    pub min_gram_eigenvalue: f64,
    pub tangent_complex_dim: usize,
    pub eta: f64,
}

impl QuaternionicReport {
    pub fn all_pass(&self) -> bool {
        self.checks.all_pass()
    }
}

#[derive(Default, Clone, Copy)]
struct TrialMax {
    tangency: f64,
    j_sq: f64,
    ji_k: f64,
    g_j: f64,
    omega: f64,
    g_sym: f64,
    omega_i_anti: f64,
    omega_i_inv: f64,
    g_from_omega_i: f64,
    j_preimage: f64,
}

impl TrialMax {
    fn merge(self, o: TrialMax) -> TrialMax {
        TrialMax {
            tangency: self.tangency.max(o.tangency),
            j_sq: self.j_sq.max(o.j_sq),
            ji_k: self.ji_k.max(o.ji_k),
            g_j: self.g_j.max(o.g_j),
            omega: self.omega.max(o.omega),
            g_sym: self.g_sym.max(o.g_sym),
            omega_i_anti: self.omega_i_anti.max(o.omega_i_anti),
            omega_i_inv: self.omega_i_inv.max(o.omega_i_inv),
            g_from_omega_i: self.g_from_omega_i.max(o.g_from_omega_i),
            j_preimage: self.j_preimage.max(o.j_preimage),
        }
    }
}

/// Checks the quaternionic identities and the compatibility with `omega_c`.
///
/// Operator identities are measured once on the real tangent space; scalar
/// identities are maxima over `trials` random pairs `(A, B)`, trial `k` drawing
/// from stream `k` of `seed`, so the report does not depend on scheduling.
pub fn verify_quaternionic<P: Potential + ?Sized>(
    point: &OrbitPoint,
    pot: &P,
    trials: usize,
    seed: u64,
) -> Result<QuaternionicReport, HkError> {
    let alg = point.algebra();
    let hk = HkStructure::new(point, pot)?;
    let ts = tangent_space(point)?;
    let ops = real_operators(&hk, &ts);
    let n = ts.real_dim();
    let id = DMatrix::<f64>::identity(n, n);

    let j_sq = linalg::operator_norm(&(&ops.j * &ops.j + &id));
    let ij_k = linalg::operator_norm(&(&ops.i * &ops.j - &ops.k));
    let ji_k = linalg::operator_norm(&(&ops.j * &ops.i + &ops.k));
    let min_gram = linalg::min_symmetric_eigenvalue(&ops.gram);

    let dim = alg.dim();
    let trial = |t: usize| -> TrialMax {
        let mut rng = stream_rng(seed, t as u64);
        let a = random_element(dim, &mut rng);
        let b = random_element(dim, &mut rng);
        let xa = point.xi(&a);
        let xb = point.xi(&b);
        let ja = hk.apply_j(&xa);
        let jb = hk.apply_j(&xb);
        let na = alg.norm(&xa).max(f64::MIN_POSITIVE);

        let jja = hk.apply_j(&ja);
        let j_sq = alg.norm(&(&jja + &xa)) / na;
        let ji = hk.apply_j(&hk.apply_i(&xa));
        let ji_k = alg.norm(&(&ji + &hk.apply_k(&xa))) / na;
        let g_j = (hk.metric(&ja, &jb) - hk.metric(&xa, &xb)).abs();
        let oc = point.omega_c(&a, &b).expect("dimensions agree");
        let lhs = Complex64::new(hk.omega_j(&xa, &xb), hk.omega_k(&xa, &xb));
        let omega = (lhs - oc).norm();
        let ia = hk.apply_i(&xa);
        let ib = hk.apply_i(&xb);
        let wi = hk.kahler_form_i(&xa, &xb);
        let pre = point.xi(&hk.j_preimage(&xa));
        TrialMax {
            tangency: ts.tangency_residual(alg, &ja),
            j_sq,
            ji_k,
            g_j,
            omega,
            g_sym: (hk.metric(&xa, &xb) - hk.metric(&xb, &xa)).abs(),
            omega_i_anti: (wi + hk.kahler_form_i(&xb, &xa)).abs(),
            omega_i_inv: (hk.kahler_form_i(&ia, &ib) - wi).abs(),
            g_from_omega_i: (hk.metric(&xa, &xb) - hk.kahler_form_i(&ia, &xb)).abs(),
            j_preimage: alg.norm(&(&pre - &ja)) / na,
        }
    };
    let m = (0..trials).into_par_iter().map(trial).reduce(TrialMax::default, TrialMax::merge);

    let mut checks = CheckList::default();
    checks.push(CheckRecord::numeric("j_tangent", m.tangency, SCALAR_TOL));
    checks.push(CheckRecord::numeric("j_preimage", m.j_preimage, SCALAR_TOL));
    checks.push(CheckRecord::numeric("j_squared_operator", j_sq, OPERATOR_TOL));
    checks.push(CheckRecord::numeric("j_squared_vectors", m.j_sq, OPERATOR_TOL));
    checks.push(CheckRecord::numeric("ij_minus_k", ij_k, OPERATOR_TOL));
    checks.push(CheckRecord::numeric("ji_plus_k_operator", ji_k, OPERATOR_TOL));
    checks.push(CheckRecord::numeric("ji_plus_k_vectors", m.ji_k, OPERATOR_TOL));
    checks.push(CheckRecord::numeric("g_j_invariant", m.g_j, SCALAR_TOL));
    checks.push(CheckRecord::numeric("omega_j_plus_i_omega_k_eq_omega_c", m.omega, SCALAR_TOL));
    checks.push(CheckRecord::numeric("g_symmetric", m.g_sym, SCALAR_TOL));
    checks.push(CheckRecord::numeric("omega_i_antisymmetric", m.omega_i_anti, SCALAR_TOL));
    checks.push(CheckRecord::numeric("omega_i_i_invariant", m.omega_i_inv, SCALAR_TOL));
    checks.push(CheckRecord::numeric("g_eq_omega_i_of_i", m.g_from_omega_i, SCALAR_TOL));
    checks.push(CheckRecord::flag("g_positive_definite", min_gram > 0.0));
    Ok(QuaternionicReport { checks, min_gram_eigenvalue: min_gram, tangent_complex_dim: ts.complex_dim(), eta: hk.eta() })
}

/// Directions `e_gamma` (and `i e_gamma`) with `theta - gamma` a positive root:
/// the tangent part of the summand `V (x) S^1`, Killing-orthogonal to the
/// highest-root triple.
pub fn complement_directions(alg: &LieAlgebra) -> Vec<Element> {
    let rs = alg.root_system();
    let theta = rs.root(alg.theta()).to_vec();
    let i = Complex64::new(0.0, 1.0);
    (0..rs.num_positive())
        .filter(|&g| {
            let d: Vec<i64> = theta.iter().zip(rs.root(g)).map(|(a, b)| a - b).collect();
            rs.positive_index(&d).is_some()
        })
        .flat_map(|g| [alg.e(g), alg.e(g).scale(i)])
        .collect()
}

/// `max |J^2 xi + xi| / |xi|` over the `V (x) S^1` directions for the family with
/// parameter `c` (expected `c / (lambda^2 eta)`).
pub fn uniqueness_deviation(point: &OrbitPoint, c: f64) -> Result<f64, HkError> {
    let alg = point.algebra();
    if alg.rank() == 1 {
        return Err(HkError::RankOneAlgebra);
    }
    let pot = PotentialFamily::for_algebra(alg, c)?;
    let hk = HkStructure::new(point, &pot)?;
    Ok(complement_directions(alg)
        .iter()
        .map(|xi| {
            let jj = hk.apply_j(&hk.apply_j(xi));
            alg.norm(&(&jj + xi)) / alg.norm(xi)
        })
        .fold(0.0, f64::max))
}

/// Residuals of the exterior-derivative identities at `X` for one pair `(A, B)`.
///
/// The left-hand sides are computed without the closed forms: `eta` and the
/// one-form `I d eta (xi_B) = 2 Im <[B, X], sigma X>` are real quadratic
/// polynomials in `X`, so their derivative along `Y` at `X` is exactly
/// `(f(X + Y) - f(X - Y)) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivativeResiduals {
    pub d_eta: f64,
    pub d_i_d_eta: f64,
    pub wedge: f64,
    /// Values of the oracle side, for the assembled Kähler form.
    pub d_i_d_eta_value: f64,
    pub wedge_value: f64,
}

fn central_derivative(f: impl Fn(&Element) -> f64, x: &Element, y: &Element) -> f64 {
    (f(&(x + y)) - f(&(x - y))) / 2.0
}

pub fn derivative_residuals(point: &OrbitPoint, a: &Element, b: &Element) -> DerivativeResiduals {
    let alg = point.algebra();
    let x = point.element();
    let xa = point.xi(a);
    let xb = point.xi(b);
    let eta = |p: &Element| alg.eta(p);
    // I d eta(xi_C) at the point p
    let id_eta = |c: &Element, p: &Element| 2.0 * alg.pairing_unchecked(&alg.bracket_unchecked(c, p), &alg.sigma(p)).im;

    let d_eta_a = central_derivative(eta, x, &xa);
    let d_eta_b = central_derivative(eta, x, &xb);
    let closed_d_eta = 2.0 * alg.hermitian(&xa, x).re;

    let ab = alg.bracket_unchecked(a, b);
    let neg_ab = ab.scale_real(-1.0);
    let d_i_d_eta = central_derivative(|p| id_eta(b, p), x, &xa) - central_derivative(|p| id_eta(a, p), x, &xb)
        - id_eta(&neg_ab, x);
    let closed_d_i_d_eta = -4.0 * alg.hermitian(&xa, &xb).im;

    let id_a = id_eta(a, x);
    let id_b = id_eta(b, x);
    let wedge = d_eta_a * id_b - d_eta_b * id_a;
    let sigma_x = alg.sigma(x);
    let closed_wedge =
        -4.0 * (alg.pairing_unchecked(&xa, &sigma_x) * alg.pairing_unchecked(&alg.sigma(&xb), x)).im;

    DerivativeResiduals {
        d_eta: (d_eta_a - closed_d_eta).abs(),
        d_i_d_eta: (d_i_d_eta - closed_d_i_d_eta).abs(),
        wedge: (wedge - closed_wedge).abs(),
        d_i_d_eta_value: d_i_d_eta,
        wedge_value: wedge,
    }
}

/// The three derivative identities as a check list for one pair.
pub fn derivative_identities(point: &OrbitPoint, a: &Element, b: &Element) -> Result<CheckList, HkError> {
    point.vector_field(a)?;
    point.vector_field(b)?;
    let r = derivative_residuals(point, a, b);
    let mut out = CheckList::default();
    out.push(CheckRecord::numeric("d_eta", r.d_eta, SCALAR_TOL));
    out.push(CheckRecord::numeric("d_i_d_eta", r.d_i_d_eta, SCALAR_TOL));
    out.push(CheckRecord::numeric("d_eta_wedge_i_d_eta", r.wedge, SCALAR_TOL));
    Ok(out)
}

/// `omega_I` assembled as `-rho'/2 dId eta - rho''/2 d eta ^ I d eta` from the
/// derivative oracle, minus the closed form.
pub fn kahler_assembly_residual<P: Potential + ?Sized>(point: &OrbitPoint, pot: &P, a: &Element, b: &Element) -> Result<f64, HkError> {
    let hk = HkStructure::new(point, pot)?;
    let r = derivative_residuals(point, a, b);
    let assembled = -0.5 * hk.rho1() * r.d_i_d_eta_value - 0.5 * hk.rho2() * r.wedge_value;
    Ok((assembled - hk.kahler_form_i_ab(a, b)).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(label: &str) -> LieAlgebra {
        LieAlgebra::of_type(label.parse().unwrap()).unwrap()
    }

    #[test]
    fn lambda_squared_values() {
        assert_eq!(lambda_squared(&alg("A1")), 4);
        assert_eq!(lambda_squared(&alg("A2")), 6);
        assert_eq!(lambda_squared(&alg("G2")), 8);
        assert_eq!(lambda_squared(&alg("F4")), 18);
        assert_eq!(lambda_squared(&alg("E6")), 24);
    }

    #[test]
    fn family_derivative_matches_closed_form() {
        let p = PotentialFamily::new(6.0, 2.5).unwrap();
        for eta in [0.1, 1.0, 7.3] {
            let h = 1e-5 * eta;
            let fd = (p.d1(eta + h) - p.d1(eta - h)) / (2.0 * h);
            assert!((fd - p.d2(eta)).abs() < 1e-6 * p.d2(eta).abs().max(1.0));
        }
        assert!(PotentialFamily::new(4.0, -1.0).is_err());
        assert_eq!(sl2_c_from_global(global_c_from_sl2(1.5)), 1.5);
    }

    #[test]
    fn positivity() {
        for c in [0.0, 0.5, 10.0] {
            let p = PotentialFamily::new(8.0, c).unwrap();
            for eta in [1e-3, 0.5, 4.0, 100.0] {
                assert!(positivity_condition(&p, eta));
            }
        }
        let bad = ExplicitPotential { d1: |e| 1.0 / (e * e), d2: |e| -2.0 / (e * e * e) };
        assert!(!positivity_condition(&bad, 1.0));
    }

    #[test]
    fn positivity_agrees_with_gram() {
        let a2 = alg("A2");
        let p = OrbitPoint::minimal_with_eta(&a2, 1.0).unwrap();
        let ts = tangent_space(&p).unwrap();
        let bad = ExplicitPotential { d1: |e| 1.0 / (e * e), d2: |e| -2.0 / (e * e * e) };
        let hk = HkStructure::new(&p, &bad).unwrap();
        let ops = real_operators(&hk, &ts);
        assert!(linalg::min_symmetric_eigenvalue(&ops.gram) < 0.0);
        let good = PotentialFamily::for_algebra(&a2, 3.0).unwrap();
        let hk = HkStructure::new(&p, &good).unwrap();
        assert!(linalg::min_symmetric_eigenvalue(&real_operators(&hk, &ts).gram) > 0.0);
    }

    #[test]
    fn sl2_j_on_h_and_e() {
        let a1 = alg("A1");
        for (t, c) in [(1.0, 0.0), (0.6, 4.0), (2.0, 1.0)] {
            let p = OrbitPoint::minimal(&a1, t).unwrap();
            let pot = PotentialFamily::for_algebra(&a1, c).unwrap();
            let hk = HkStructure::new(&p, &pot).unwrap();
            let (h, e) = (a1.basis(0), a1.e(0));
            let jh = hk.apply_j(&h);
            let want = e.scale_real(-4.0 * hk.rho1() * t);
            assert!((&jh - &want).coeff_norm() < 1e-12);
            let je = hk.apply_j(&e);
            let want = h.scale_real(2.0 * t * (hk.rho1() + hk.eta() * hk.rho2()));
            assert!((&je - &want).coeff_norm() < 1e-12);
        }
    }

    #[test]
    fn sl2_metric_on_s3_direction() {
        // g(xi_{s3}, xi_{s3}) = 1/rho' = 4 at t = 1, c = 0 (xi_{s3} = i t E)
        let a1 = alg("A1");
        let p = OrbitPoint::minimal(&a1, 1.0).unwrap();
        let pot = PotentialFamily::for_algebra(&a1, 0.0).unwrap();
        let hk = HkStructure::new(&p, &pot).unwrap();
        let s3 = a1.basis(0).scale(Complex64::new(0.0, 0.5));
        assert!((hk.metric_ab(&s3, &s3) - 2.0).abs() < 1e-12);
        assert!((hk.rho1() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn closed_form_j_at_c_zero() {
        for label in ["A2", "G2", "C3"] {
            let a = alg(label);
            let p = OrbitPoint::minimal(&a, 0.9).unwrap();
            let pot = PotentialFamily::for_algebra(&a, 0.0).unwrap();
            let hk = HkStructure::new(&p, &pot).unwrap();
            let mut rng = stream_rng(9, 0);
            for _ in 0..20 {
                let xi = p.xi(&random_element(a.dim(), &mut rng));
                let d = &hk.apply_j(&xi) - &hk.apply_j_closed_form(pot.lambda_sq, &xi);
                assert!(a.norm(&d) < 1e-10 * a.norm(&xi).max(1.0), "{label}");
            }
        }
    }

    #[test]
    fn j_is_i_antilinear() {
        let a = alg("B2");
        let p = OrbitPoint::minimal(&a, 1.1).unwrap();
        let pot = PotentialFamily::for_algebra(&a, 2.0).unwrap();
        let hk = HkStructure::new(&p, &pot).unwrap();
        let xi = p.xi(&random_element(a.dim(), &mut stream_rng(1, 0)));
        let lhs = hk.apply_j(&hk.apply_i(&xi));
        let rhs = hk.apply_i(&hk.apply_j(&xi)).scale_real(-1.0);
        assert!(a.norm(&(&lhs - &rhs)) < 1e-12);
    }

    #[test]
    fn quaternionic_small_cases() {
        let a1 = alg("A1");
        for c in [0.0, 4.0] {
            let p = OrbitPoint::minimal(&a1, 1.0).unwrap();
            let pot = PotentialFamily::for_algebra(&a1, c).unwrap();
            let rep = verify_quaternionic(&p, &pot, 50, 42).unwrap();
            for ch in &rep.checks.checks {
                assert!(ch.pass, "A1 c={c}: {ch:?}");
            }
        }
        let a2 = alg("A2");
        let p = OrbitPoint::minimal(&a2, 1.0).unwrap();
        let rep = verify_quaternionic(&p, &PotentialFamily::for_algebra(&a2, 0.0).unwrap(), 50, 42).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.checks.failures().collect::<Vec<_>>());
        assert_eq!(rep.tangent_complex_dim, 4);
        let rep = verify_quaternionic(&p, &PotentialFamily::for_algebra(&a2, 6.0).unwrap(), 10, 42).unwrap();
        assert!(!rep.checks.get("j_squared_operator").unwrap().pass);
        assert!(rep.checks.get("g_positive_definite").unwrap().pass);
    }

    #[test]
    fn report_is_schedule_independent() {
        let a = alg("B2");
        let p = OrbitPoint::minimal(&a, 1.0).unwrap();
        let pot = PotentialFamily::for_algebra(&a, 0.0).unwrap();
        let r1 = verify_quaternionic(&p, &pot, 30, 7).unwrap();
        let r2 = verify_quaternionic(&p, &pot, 30, 7).unwrap();
        assert_eq!(r1.checks, r2.checks);
    }

    #[test]
    fn uniqueness_values() {
        let a2 = alg("A2");
        let p = OrbitPoint::minimal_with_eta(&a2, 1.0).unwrap();
        assert!(uniqueness_deviation(&p, 0.0).unwrap() < 1e-10);
        assert!((uniqueness_deviation(&p, 6.0).unwrap() - 1.0).abs() < 1e-9);
        let g2 = alg("G2");
        let p = OrbitPoint::minimal_with_eta(&g2, 2.0).unwrap();
        assert!((uniqueness_deviation(&p, 8.0).unwrap() - 0.5).abs() < 1e-9);
        let a1 = alg("A1");
        let p = OrbitPoint::minimal(&a1, 1.0).unwrap();
        assert!(matches!(uniqueness_deviation(&p, 1.0), Err(HkError::RankOneAlgebra)));
    }

    #[test]
    fn derivative_examples() {
        let a1 = alg("A1");
        let p = OrbitPoint::minimal(&a1, 1.0).unwrap();
        let f = a1.f(0);
        // d eta(xi_F) = 2 Re <-H, sigma E> = 0
        let r = derivative_residuals(&p, &f, &f);
        assert!(r.d_eta < 1e-14);
        assert_eq!(r.d_i_d_eta_value, 0.0);
        let g2 = alg("G2");
        let p = OrbitPoint::minimal(&g2, 0.7).unwrap();
        let mut rng = stream_rng(3, 0);
        for _ in 0..50 {
            let a = random_element(g2.dim(), &mut rng);
            let b = random_element(g2.dim(), &mut rng);
            assert!(derivative_identities(&p, &a, &b).unwrap().all_pass());
            let pot = PotentialFamily::for_algebra(&g2, 1.0).unwrap();
            assert!(kahler_assembly_residual(&p, &pot, &a, &b).unwrap() < 1e-9);
        }
    }

    #[test]
    fn eta_must_be_positive() {
        let a2 = alg("A2");
        let p = OrbitPoint::minimal(&a2, 1e-200).unwrap();
        let pot = PotentialFamily::for_algebra(&a2, 0.0).unwrap();
        assert!(matches!(HkStructure::new(&p, &pot), Err(HkError::NonPositiveEta(_))));
    }
}
