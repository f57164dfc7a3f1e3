//! The `sl(2)` case: the irreducible modules `S^k`, the ODE that forces the
//! potential, and the Eguchi-Hanson form of the resulting metrics.
//!
//! The native parameter here is `c_sl2`, in `rho' = sqrt(eta + c_sl2) / eta`.

use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chevalley::{Element, LieAlgebra};
use crate::hyperkahler::{HkError, HkStructure, PotentialFamily};
use crate::intmat::{self, IntMatrix};
use crate::orbit::OrbitPoint;
use crate::rootsystem::{Series, SimpleType};

#[derive(Debug, Error)]
pub enum Sl2Error {
    #[error("t must be positive, got {0}")]
    NonPositiveScale(f64),
    #[error("eta must be positive, got {0}")]
    NonPositiveEta(f64),
    #[error("c_sl2 must be finite and >= 0, got {0}")]
    BadParameter(f64),
    #[error("r = {r} lies inside the bolt: eta = (r/2)^4 - c = {eta} <= 0")]
    InsideBolt { r: f64, eta: f64 },
    #[error(transparent)]
    Hk(#[from] HkError),
}

/// `S^k` in the basis of weights `k, k-2, ..., -k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkRep {
    pub k: usize,
    pub phi_e: IntMatrix,
    pub phi_h: IntMatrix,
    pub phi_f: IntMatrix,
}

pub fn sk_matrices(k: usize) -> SkRep {
    let n = k + 1;
    let mut phi_e = intmat::zeros(n, n);
    let mut phi_h = intmat::zeros(n, n);
    let mut phi_f = intmat::zeros(n, n);
    for j in 0..n {
        phi_h[j][j] = k as i64 - 2 * j as i64;
        if j < k {
            phi_e[j][j + 1] = j as i64 + 1;
            phi_f[j + 1][j] = (k - j) as i64;
        }
    }
    SkRep { k, phi_e, phi_h, phi_f }
}

/// Exact facts about one `S^k`; every field is zero or `true` when they hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkFacts {
    pub k: usize,
    /// Largest entry of `[H,E] - 2E`, `[H,F] + 2F`, `[E,F] - H`.
    pub bracket_defect: i64,
    pub e_power_nilpotent: bool,
    pub e_power_k_rank: usize,
    /// The image of `phi_E^k` is the `k`-eigenspace of `phi_H` (the first basis line).
    pub e_power_k_image_top: bool,
    pub ef_diagonal: Vec<i64>,
    pub ef_is_diagonal: bool,
    /// `ef_diagonal` equals `(j+1)(k-j)`, and as a multiset `{i(k+1-i)}`.
    pub ef_spectrum_ok: bool,
}

impl SkFacts {
    pub fn all_hold(&self) -> bool {
        self.bracket_defect == 0
            && self.e_power_nilpotent
            && self.e_power_k_rank == 1
            && self.e_power_k_image_top
            && self.ef_is_diagonal
            && self.ef_spectrum_ok
    }
}

impl SkRep {
    pub fn facts(&self) -> SkFacts {
        let k = self.k;
        let (e, h, f) = (&self.phi_e, &self.phi_h, &self.phi_f);
        let d1 = intmat::sub(&intmat::commutator(h, e), &intmat::scale(e, 2));
        let d2 = intmat::sub(&intmat::commutator(h, f), &intmat::scale(f, -2));
        let d3 = intmat::sub(&intmat::commutator(e, f), h);
        let bracket_defect = intmat::max_abs(&d1).max(intmat::max_abs(&d2)).max(intmat::max_abs(&d3));

        let ek = intmat::pow(e, k as u32);
        let image_top = ek.iter().skip(1).all(|r| r.iter().all(|&x| x == 0)) && ek[0].iter().any(|&x| x != 0);
        let ef = intmat::mul(e, f);
        let ef_diagonal: Vec<i64> = (0..=k).map(|j| ef[j][j]).collect();
        let expected: Vec<i64> = (0..=k as i64).map(|j| (j + 1) * (k as i64 - j)).collect();
        let mut sorted = ef_diagonal.clone();
        sorted.sort_unstable();
        let mut multiset: Vec<i64> = (0..=k as i64).map(|i| i * (k as i64 + 1 - i)).collect();
        multiset.sort_unstable();
        SkFacts {
            k,
            bracket_defect,
            e_power_nilpotent: intmat::is_zero(&intmat::pow(e, k as u32 + 1)),
            e_power_k_rank: intmat::rank(&ek),
            e_power_k_image_top: image_top,
            ef_is_diagonal: intmat::is_diagonal(&ef),
            ef_spectrum_ok: ef_diagonal == expected && sorted == multiset,
            ef_diagonal,
        }
    }
}

/// Forward-mode dual number `a + b epsilon`, `epsilon^2 = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual {
    pub re: f64,
    pub eps: f64,
}

impl Dual {
    pub fn constant(re: f64) -> Self {
        Dual { re, eps: 0.0 }
    }

    pub fn variable(re: f64) -> Self {
        Dual { re, eps: 1.0 }
    }

    pub fn sqrt(self) -> Self {
        let s = self.re.sqrt();
        Dual { re: s, eps: self.eps / (2.0 * s) }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual { re: self.re + o.re, eps: self.eps + o.eps }
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual { re: self.re - o.re, eps: self.eps - o.eps }
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual { re: self.re * o.re, eps: self.re * o.eps + self.eps * o.re }
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, o: Dual) -> Dual {
        Dual { re: self.re / o.re, eps: (self.eps * o.re - self.re * o.eps) / (o.re * o.re) }
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual { re: -self.re, eps: -self.eps }
    }
}

/// Residuals of the potential ODE `2(eta rho'^2 + eta^2 rho' rho'') = 1` at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OdeCheck {
    /// `2(eta rho'^2 + eta^2 rho' rho'') - 1`, with `rho''` from automatic differentiation.
    pub residual: f64,
    /// `(eta^2 rho'^2)' - 2(eta rho'^2 + eta^2 rho' rho'')`.
    pub first_integral: f64,
    /// `rho''` by differentiation minus `-(eta + 2c) / (2 eta^2 sqrt(eta + c))`.
    pub second_derivative: f64,
}

/// Evaluates the ODE for an arbitrary `rho'` given as a function of a dual number.
pub fn ode_residual_for(rho1: impl Fn(Dual) -> Dual, eta: f64) -> Result<(f64, f64), Sl2Error> {
    if !(eta > 0.0) {
        return Err(Sl2Error::NonPositiveEta(eta));
    }
    let x = Dual::variable(eta);
    let r = rho1(x);
    let (r1, r2) = (r.re, r.eps);
    let lhs = 2.0 * (eta * r1 * r1 + eta * eta * r1 * r2);
    let integral = x * x * r * r;
    Ok((lhs - 1.0, integral.eps - lhs))
}

pub fn sl2_rho1(c_sl2: f64) -> impl Fn(Dual) -> Dual {
    move |eta: Dual| (eta + Dual::constant(c_sl2)).sqrt() / eta
}

pub fn ode_residual(eta: f64, c_sl2: f64) -> Result<OdeCheck, Sl2Error> {
    if !(c_sl2.is_finite() && c_sl2 >= 0.0) {
        return Err(Sl2Error::BadParameter(c_sl2));
    }
    let (residual, first_integral) = ode_residual_for(sl2_rho1(c_sl2), eta)?;
    let ad = sl2_rho1(c_sl2)(Dual::variable(eta)).eps;
    let closed = -(eta + 2.0 * c_sl2) / (2.0 * eta * eta * (eta + c_sl2).sqrt());
    Ok(OdeCheck { residual, first_integral, second_derivative: ad - closed })
}

fn sl2_algebra() -> &'static LieAlgebra {
    static ALG: OnceLock<LieAlgebra> = OnceLock::new();
    ALG.get_or_init(|| {
        let ty = SimpleType::new(Series::A, 1).expect("A1 is valid");
        LieAlgebra::of_type(ty).expect("sl(2) builds")
    })
}

/// The elements `s1, s2, s3` of `su(2)`.
pub fn su2_basis(alg: &LieAlgebra) -> [Element; 3] {
    let (h, e, f) = (alg.basis(alg.h_index(0)), alg.e(0), alg.f(0));
    let half_i = Complex64::new(0.0, 0.5);
    [(&e - &f).scale_real(0.5), (&e + &f).scale(half_i), h.scale(half_i)]
}

/// The metric in the frame `{d/d eta, xi_s1, xi_s2, xi_s3}` at `X = tE`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EHFrame {
    pub t: f64,
    pub c_sl2: f64,
    pub eta: f64,
    /// `rho' = sqrt(eta + c_sl2) / eta`.
    pub rho1: f64,
    /// `g` on the frame, computed from the orbit metric.
    pub gram: [[f64; 4]; 4],
    /// `d eta (d/d eta) - 1`, checking the frame vector `E / (8t)`.
    pub d_eta_defect: f64,
}

impl EHFrame {
    pub fn diagonal(&self) -> [f64; 4] {
        std::array::from_fn(|i| self.gram[i][i])
    }

    /// `(1/(4 eta^2 rho'), eta rho', eta rho', 1/rho')`.
    pub fn expected_diagonal(&self) -> [f64; 4] {
        let (e, r) = (self.eta, self.rho1);
        [1.0 / (4.0 * e * e * r), e * r, e * r, 1.0 / r]
    }

    pub fn max_off_diagonal(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    m = m.max(self.gram[i][j].abs());
                }
            }
        }
        m
    }

    pub fn diagonal_mismatch(&self) -> f64 {
        let d = self.diagonal();
        let x = self.expected_diagonal();
        (0..4).map(|i| ((d[i] - x[i]) / x[i]).abs()).fold(0.0, f64::max)
    }
}

pub fn eh_metric_components(t: f64, c_sl2: f64) -> Result<EHFrame, Sl2Error> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Sl2Error::NonPositiveScale(t));
    }
    if !(c_sl2.is_finite() && c_sl2 >= 0.0) {
        return Err(Sl2Error::BadParameter(c_sl2));
    }
    let alg = sl2_algebra();
    let point = OrbitPoint::minimal(alg, t).map_err(HkError::from)?;
    let pot = PotentialFamily::sl2(c_sl2)?;
    let hk = HkStructure::new(&point, &pot)?;
    let d_eta = alg.e(0).scale_real(1.0 / (8.0 * t));
    let [s1, s2, s3] = su2_basis(alg);
    let frame = [d_eta.clone(), point.vector_field(&s1).unwrap(), point.vector_field(&s2).unwrap(), point.vector_field(&s3).unwrap()];
    let mut gram = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            gram[i][j] = hk.metric(&frame[i], &frame[j]);
        }
    }
    let d_eta_value = 2.0 * alg.hermitian(&d_eta, point.element()).re;
    Ok(EHFrame { t, c_sl2, eta: hk.eta(), rho1: hk.rho1(), gram, d_eta_defect: d_eta_value - 1.0 })
}

/// `W = 1 - 16 c / r^4`.
pub fn eh_w(r: f64, c_sl2: f64) -> f64 {
    1.0 - 16.0 * c_sl2 / r.powi(4)
}

/// The frame diagonal transported to `r` (with `eta = (r/2)^4 - c`, `d eta = (r^3/4) dr`).
pub fn eh_r_components(r: f64, c_sl2: f64) -> Result<[f64; 4], Sl2Error> {
    let eta = (r / 2.0).powi(4) - c_sl2;
    if !(eta > 0.0) {
        return Err(Sl2Error::InsideBolt { r, eta });
    }
    let frame = eh_metric_components(eta.sqrt() / 2.0, c_sl2)?;
    let d = frame.diagonal();
    let jac = r.powi(3) / 4.0;
    Ok([d[0] * jac * jac, d[1], d[2], d[3]])
}

/// Largest relative mismatch between the transported diagonal and
/// `(W^-1, r^2/4, r^2/4, r^2 W / 4)`.
pub fn eh_standard_form_check(r: f64, c_sl2: f64) -> Result<f64, Sl2Error> {
    let got = eh_r_components(r, c_sl2)?;
    let w = eh_w(r, c_sl2);
    let q = r * r / 4.0;
    let want = [1.0 / w, q, q, q * w];
    Ok((0..4).map(|i| ((got[i] - want[i]) / want[i]).abs()).fold(0.0, f64::max))
}

/// Behaviour just outside the bolt `r0 = (16 c)^{1/4}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoltLimit {
    pub r: f64,
    pub w: f64,
    /// `g(xi_s3, xi_s3)` from the orbit metric.
    pub sigma3: f64,
    /// `g(xi_s1, xi_s1)`, which stays near `r0^2 / 4`.
    pub sigma1: f64,
    pub mismatch: f64,
}

pub fn bolt_limit(c_sl2: f64, rel: f64) -> Result<BoltLimit, Sl2Error> {
    if !(c_sl2 > 0.0) {
        return Err(Sl2Error::BadParameter(c_sl2));
    }
    let r = (16.0 * c_sl2).powf(0.25) * (1.0 + rel);
    let comps = eh_r_components(r, c_sl2)?;
    Ok(BoltLimit { r, w: eh_w(r, c_sl2), sigma3: comps[3], sigma1: comps[1], mismatch: eh_standard_form_check(r, c_sl2)? })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sk() {
        let s0 = sk_matrices(0);
        assert_eq!(s0.phi_e, vec![vec![0]]);
        assert_eq!(s0.phi_h, vec![vec![0]]);
        let s1 = sk_matrices(1);
        assert_eq!(s1.phi_e, vec![vec![0, 1], vec![0, 0]]);
        assert_eq!(s1.phi_h, vec![vec![1, 0], vec![0, -1]]);
        assert_eq!(s1.phi_f, vec![vec![0, 0], vec![1, 0]]);
        assert_eq!(sk_matrices(4).facts().ef_diagonal, vec![4, 6, 6, 4, 0]);
        for k in 0..=12 {
            let f = sk_matrices(k).facts();
            assert!(f.all_hold(), "{f:?}");
        }
    }

    #[test]
    fn ode() {
        for (eta, c) in [(4.0, 0.0), (1.0, 5.0), (0.01, 100.0)] {
            let r = ode_residual(eta, c).unwrap();
            // roundoff scales with the size of eta rho'^2
            let scale = (eta + c) / eta;
            assert!(r.residual.abs() < 1e-14 * scale && r.first_integral.abs() < 1e-14 * scale, "{r:?}");
            assert!(r.second_derivative.abs() < 1e-14 * scale / eta);
        }
        let (bad, _) = ode_residual_for(|e| Dual::constant(1.0) / e, 1.0).unwrap();
        assert_eq!(bad, -1.0);
        assert!(ode_residual(0.0, 1.0).is_err());
    }

    #[test]
    fn frame_at_t1_c0() {
        let f = eh_metric_components(1.0, 0.0).unwrap();
        assert_eq!(f.eta, 4.0);
        let want = [1.0 / 32.0, 2.0, 2.0, 2.0];
        for (g, w) in f.diagonal().iter().zip(want) {
            assert!((g - w).abs() < 1e-12);
        }
        assert!(f.max_off_diagonal() < 1e-12);
        assert!(f.d_eta_defect.abs() < 1e-15);
    }

    #[test]
    fn frame_at_t1_c1() {
        let f = eh_metric_components(1.0, 1.0).unwrap();
        let s5 = 5f64.sqrt();
        let want = [1.0 / (16.0 * s5), s5, s5, 4.0 / s5];
        for (g, w) in f.diagonal().iter().zip(want) {
            assert!(((g - w) / w).abs() < 1e-12);
        }
    }

    #[test]
    fn standard_form() {
        assert!(eh_standard_form_check(1.3, 0.0).unwrap() < 1e-12);
        assert!((eh_w(2.5, 1.0) - 0.5904).abs() < 1e-12);
        assert!(eh_standard_form_check(2.5, 1.0).unwrap() < 1e-12);
        assert!(matches!(eh_standard_form_check(1.0, 1.0), Err(Sl2Error::InsideBolt { .. })));
        let b = bolt_limit(1.0, 1e-3).unwrap();
        assert!(b.w < 5e-3 && b.sigma3 < 5e-3 && b.sigma1 > 0.9);
        assert!(b.mismatch < 1e-9);
    }
}
