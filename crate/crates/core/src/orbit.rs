//! Points and tangent spaces of nilpotent orbits, the KKS form, and the
//! sl(2)-decomposition used to recognise the minimal orbit.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chevalley::{AlgebraError, Element, LieAlgebra};
use crate::intmat;
use crate::linalg::{self, RankInfo};

/// Below this singular-value gap a tangent-space rank is not trusted.
pub const MIN_RANK_GAP: f64 = 1e4;

/// Relative residual allowed in the sl(2) relations of a user-supplied triple.
pub const TRIPLE_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum OrbitError {
    #[error("orbit scale must be positive and finite, got {0}")]
    NonPositiveScale(f64),
    #[error("element is not nilpotent (residual {0:e})")]
    NotNilpotent(f64),
    #[error("the zero element is not on a nonzero orbit")]
    ZeroPoint,
    #[error("tangent-space rank is ill-conditioned: singular-value gap {gap:e} at rank {rank}")]
    IllConditioned { rank: usize, gap: f64 },
    #[error("not an sl(2)-triple: residuals [H,E]-2E {he:e}, [H,F]+2F {hf:e}, [E,F]-H {ef:e}")]
    BadTriple { he: f64, hf: f64, ef: f64 },
    #[error("ad_H restricted to ker ad_E has non-integral or non-semisimple spectrum")]
    BadSpectrum,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A point `X` of a nilpotent orbit. For the minimal orbit, `X = t e_theta`.
#[derive(Debug, Clone)]
pub struct OrbitPoint<'a> {
    alg: &'a LieAlgebra,
    x: Element,
    scale: Option<f64>,
}

impl<'a> OrbitPoint<'a> {
    /// `X = t e_theta`.
    pub fn minimal(alg: &'a LieAlgebra, t: f64) -> Result<Self, OrbitError> {
        if !(t.is_finite() && t > 0.0) {
            return Err(OrbitError::NonPositiveScale(t));
        }
        let x = alg.e(alg.theta()).scale_real(t);
        Ok(OrbitPoint { alg, x, scale: Some(t) })
    }

    /// The minimal-orbit point `t e_theta` with `eta(X) = eta`.
    pub fn minimal_with_eta(alg: &'a LieAlgebra, eta: f64) -> Result<Self, OrbitError> {
        let lambda_sq = alg.eta(&alg.e(alg.theta()));
        Self::minimal(alg, (eta / lambda_sq).sqrt())
    }

    /// An arbitrary nilpotent element.
    pub fn general(alg: &'a LieAlgebra, x: Element) -> Result<Self, OrbitError> {
        if x.dim() != alg.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: alg.dim(), got: x.dim() }.into());
        }
        if x.coeff_norm() == 0.0 {
            return Err(OrbitError::ZeroPoint);
        }
        let residual = nilpotency_residual(alg, &x);
        if residual > 1e-8 {
            return Err(OrbitError::NotNilpotent(residual));
        }
        Ok(OrbitPoint { alg, x, scale: None })
    }

    pub fn algebra(&self) -> &'a LieAlgebra {
        self.alg
    }

    pub fn element(&self) -> &Element {
        &self.x
    }

    pub fn scale(&self) -> Option<f64> {
        self.scale
    }

    pub fn eta(&self) -> f64 {
        self.alg.eta(&self.x)
    }

    /// `xi_A = [A, X]`.
    pub fn vector_field(&self, a: &Element) -> Result<Element, OrbitError> {
        Ok(self.alg.bracket(a, &self.x)?)
    }

    pub(crate) fn xi(&self, a: &Element) -> Element {
        self.alg.bracket_unchecked(a, &self.x)
    }

    /// KKS form `omega_c(xi_A, xi_B) = <X, [A, B]>`.
    pub fn omega_c(&self, a: &Element, b: &Element) -> Result<Complex64, OrbitError> {
        let ab = self.alg.bracket(a, b)?;
        Ok(self.alg.pairing_unchecked(&self.x, &ab))
    }

    /// The same form written as `-<xi_A, B>`.
    pub fn omega_c_via_field(&self, a: &Element, b: &Element) -> Result<Complex64, OrbitError> {
        let xa = self.vector_field(a)?;
        Ok(-self.alg.pairing(&xa, b)?)
    }
}

/// `|ad_X^dim| / |ad_X|^dim`, computed by repeated squaring.
fn nilpotency_residual(alg: &LieAlgebra, x: &Element) -> f64 {
    let ad = alg.ad_matrix(x);
    let n0 = ad.norm();
    let mut p = ad / Complex64::new(n0, 0.0);
    let mut power = 1;
    while power < alg.dim() {
        p = &p * &p;
        power *= 2;
    }
    p.norm()
}

/// Exact minimal-orbit signature of `e_theta`: `(ad)^3 = 0` and `rank (ad)^2 = 1`.
pub fn theta_nilpotency_exact(alg: &LieAlgebra) -> (bool, usize) {
    let ad = alg.ad_basis_exact(alg.e_index(alg.theta()));
    let sq = intmat::mul(&ad, &ad);
    let cube = intmat::mul(&sq, &ad);
    (intmat::is_zero(&cube), intmat::rank(&sq))
}

/// `im(ad_X)` with a basis orthonormal for the Hermitian form `<u, sigma v>`.
#[derive(Debug, Clone)]
pub struct TangentSpace {
    basis: Vec<Element>,
    pub rank_info: RankInfo,
}

impl TangentSpace {
    pub fn complex_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn real_dim(&self) -> usize {
        2 * self.basis.len()
    }

    pub fn complex_basis(&self) -> &[Element] {
        &self.basis
    }

    /// Real basis `v_1, i v_1, v_2, i v_2, ...`, orthonormal for `Re <u, sigma v>`.
    pub fn real_basis(&self) -> Vec<Element> {
        let i = Complex64::new(0.0, 1.0);
        self.basis.iter().flat_map(|v| [v.clone(), v.scale(i)]).collect()
    }

    /// Complex coordinates `<w, sigma v_k>`.
    pub fn coords(&self, alg: &LieAlgebra, w: &Element) -> Vec<Complex64> {
        self.basis.iter().map(|v| alg.hermitian(w, v)).collect()
    }

    /// Real coordinates in [`Self::real_basis`].
    pub fn real_coords(&self, alg: &LieAlgebra, w: &Element) -> DVector<f64> {
        let c = self.coords(alg, w);
        DVector::from_iterator(2 * c.len(), c.iter().flat_map(|z| [z.re, z.im]))
    }

    pub fn from_real_coords(&self, dim: usize, r: &DVector<f64>) -> Element {
        let mut out = Element::zeros(dim);
        for (k, v) in self.basis.iter().enumerate() {
            out += &v.scale(Complex64::new(r[2 * k], r[2 * k + 1]));
        }
        out
    }

    /// Orthogonal projection onto the tangent space.
    pub fn project(&self, alg: &LieAlgebra, w: &Element) -> Element {
        let c = self.coords(alg, w);
        let mut out = Element::zeros(w.dim());
        for (v, ck) in self.basis.iter().zip(c) {
            out += &v.scale(ck);
        }
        out
    }

    /// `|w - P w| / |w|` in the Hermitian norm.
    pub fn tangency_residual(&self, alg: &LieAlgebra, w: &Element) -> f64 {
        let nw = alg.norm(w);
        if nw == 0.0 {
            return 0.0;
        }
        alg.norm(&(w - &self.project(alg, w))) / nw
    }

    /// Matrix of a real-linear map of the tangent space in [`Self::real_basis`].
    pub fn real_operator(&self, alg: &LieAlgebra, f: impl Fn(&Element) -> Element) -> DMatrix<f64> {
        let basis = self.real_basis();
        let n = basis.len();
        let mut m = DMatrix::zeros(n, n);
        for (j, b) in basis.iter().enumerate() {
            m.set_column(j, &self.real_coords(alg, &f(b)));
        }
        m
    }
}

/// Orthonormal basis of `im(ad_X)`.
pub fn tangent_space(point: &OrbitPoint) -> Result<TangentSpace, OrbitError> {
    let alg = point.algebra();
    let ad = alg.ad_matrix(point.element());
    let (cols, info) = linalg::column_space(&ad);
    if info.rank == 0 {
        return Err(OrbitError::ZeroPoint);
    }
    if info.gap() < MIN_RANK_GAP {
        return Err(OrbitError::IllConditioned { rank: info.rank, gap: info.gap() });
    }
    let mut basis: Vec<Element> = Vec::with_capacity(cols.len());
    for c in cols {
        let mut v = Element::from_coeffs(c.iter().copied().collect());
        for _ in 0..2 {
            for b in &basis {
                let proj = alg.hermitian(&v, b);
                v = &v - &b.scale(proj);
            }
        }
        let n = alg.norm(&v);
        basis.push(v.scale_real(1.0 / n));
    }
    Ok(TangentSpace { basis, rank_info: info })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cohomogeneity {
    pub tangent_real_dim: usize,
    pub group_orbit_real_dim: usize,
    pub cohomogeneity: usize,
    /// `1 - |cos|` between the complement of the group-orbit directions and `X`.
    pub complement_residual: f64,
}

/// Codimension of the compact-group orbit inside the complex orbit at `X`.
pub fn cohomogeneity(point: &OrbitPoint) -> Result<Cohomogeneity, OrbitError> {
    let alg = point.algebra();
    let ts = tangent_space(point)?;
    let compact = alg.compact_basis();
    let n = ts.real_dim();
    let mut m = DMatrix::<f64>::zeros(n, compact.len());
    for (j, a) in compact.iter().enumerate() {
        m.set_column(j, &ts.real_coords(alg, &point.xi(a)));
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("requested U");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let info = linalg::real_rank(&m);
    if info.gap() < MIN_RANK_GAP {
        return Err(OrbitError::IllConditioned { rank: info.rank, gap: info.gap() });
    }

    // Orthogonal complement of the image, from the left singular vectors beyond
    // the rank (U is n x min(n, cols); pad with the completion when needed).
    let image: Vec<DVector<f64>> = order[..info.rank].iter().map(|&i| u.column(i).into_owned()).collect();
    let mut complement: Vec<DVector<f64>> = Vec::new();
    for k in 0..n {
        let mut v = DVector::<f64>::zeros(n);
        v[k] = 1.0;
        for _ in 0..2 {
            for b in image.iter().chain(&complement) {
                let c = b.dot(&v);
                v -= b * c;
            }
        }
        let nv = v.norm();
        if nv > 1e-6 {
            complement.push(v / nv);
        }
    }
    let xr = ts.real_coords(alg, point.element());
    let xr = &xr / xr.norm();
    let complement_residual = if complement.len() == 1 {
        1.0 - complement[0].dot(&xr).abs()
    } else {
        f64::INFINITY
    };
    Ok(Cohomogeneity {
        tangent_real_dim: n,
        group_orbit_real_dim: info.rank,
        cohomogeneity: n - info.rank,
        complement_residual,
    })
}

/// An sl(2)-triple `[H,E] = 2E`, `[H,F] = -2F`, `[E,F] = H`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sl2Triple {
    pub e: Element,
    pub h: Element,
    pub f: Element,
}

impl Sl2Triple {
    /// `(e_theta, h_theta, f_theta)`.
    pub fn theta(alg: &LieAlgebra) -> Self {
        let th = alg.theta();
        Sl2Triple { e: alg.e(th), h: alg.coroot(th), f: alg.f(th) }
    }

    /// Principal triple: `E = sum e_i`, `H = 2 rho^vee`, `F = sum c_i f_i` with
    /// `H = sum c_i h_i`. For `A_2` this is `(e1+e2, 2h1+2h2, 2f1+2f2)`.
    pub fn principal(alg: &LieAlgebra) -> Self {
        let rs = alg.root_system();
        let r = rs.rank();
        // alpha_j(H) = sum_i c_i a_ij = 2 for every j
        let a = DMatrix::from_fn(r, r, |j, i| rs.cartan_matrix()[i][j] as f64);
        let c = a.lu().solve(&DVector::from_element(r, 2.0)).expect("Cartan matrix is invertible");
        let mut e = Element::zeros(alg.dim());
        let mut h = Element::zeros(alg.dim());
        let mut f = Element::zeros(alg.dim());
        for i in 0..r {
            let ci = c[i].round();
            e.coeffs_mut()[alg.e_index(i)] = Complex64::new(1.0, 0.0);
            h.coeffs_mut()[alg.h_index(i)] = Complex64::new(ci, 0.0);
            f.coeffs_mut()[alg.f_index(i)] = Complex64::new(ci, 0.0);
        }
        Sl2Triple { e, h, f }
    }

    /// Relative residuals of the three relations.
    pub fn residuals(&self, alg: &LieAlgebra) -> Result<(f64, f64, f64), OrbitError> {
        let scale = self.e.coeff_norm().max(self.h.coeff_norm()).max(self.f.coeff_norm()).max(1.0);
        let he = &alg.bracket(&self.h, &self.e)? - &self.e.scale_real(2.0);
        let hf = &alg.bracket(&self.h, &self.f)? + &self.f.scale_real(2.0);
        let ef = &alg.bracket(&self.e, &self.f)? - &self.h;
        let s2 = scale * scale;
        Ok((he.coeff_norm() / s2, hf.coeff_norm() / s2, ef.coeff_norm() / s2))
    }

    pub fn validate(&self, alg: &LieAlgebra) -> Result<(), OrbitError> {
        let (he, hf, ef) = self.residuals(alg)?;
        if he < TRIPLE_TOL && hf < TRIPLE_TOL && ef < TRIPLE_TOL {
            Ok(())
        } else {
            Err(OrbitError::BadTriple { he, hf, ef })
        }
    }
}

/// Decomposition of the algebra under an sl(2)-triple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sl2Spectrum {
    /// Highest weight `k` of every irreducible summand `S^k`, descending.
    pub highest_weights: Vec<i64>,
    /// Diagonal of `ad_E ad_F` along one weight string of each distinct `k`,
    /// top weight first: `(j+1)(k-j)` for `j = 0..k`.
    pub ef_diagonals: BTreeMap<i64, Vec<f64>>,
    /// Worst relative failure of `ad_E ad_F` to act diagonally on those strings.
    pub ef_residual: f64,
    /// Every summand other than one copy of `S^2` has `k` in `{0, 1}`.
    pub minimal: bool,
}

impl Sl2Spectrum {
    /// Multiplicity of each `k`.
    pub fn multiplicities(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for &k in &self.highest_weights {
            *m.entry(k).or_insert(0) += 1;
        }
        m
    }

    /// Eigenvalues of `ad_H` on the whole algebra implied by the decomposition.
    pub fn ad_h_weights(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for &k in &self.highest_weights {
            let mut w = k;
            while w >= -k {
                *m.entry(w).or_insert(0) += 1;
                w -= 2;
            }
        }
        m
    }
}

/// Highest weights from the eigenvalues of `ad_H` on `ker(ad_E)`.
pub fn sl2_spectrum(alg: &LieAlgebra, triple: &Sl2Triple) -> Result<Sl2Spectrum, OrbitError> {
    triple.validate(alg)?;
    let ad_e = alg.ad_matrix(&triple.e);
    let ad_h = alg.ad_matrix(&triple.h);
    let ad_f = alg.ad_matrix(&triple.f);
    let (ker, _) = linalg::null_space(&ad_e);
    let d = ker.len();
    let q = DMatrix::from_columns(&ker);
    // ker(ad_E) is ad_H-stable, so Q^H ad_H Q is the restriction
    let restricted = q.adjoint() * &ad_h * &q;
    let bound = restricted.norm().ceil() as i64 + 1;
    let spec = linalg::integer_spectrum(&restricted, -bound, bound).ok_or(OrbitError::BadSpectrum)?;
    if spec.iter().any(|&(k, _)| k < 0) {
        return Err(OrbitError::BadSpectrum);
    }
    let mut highest_weights: Vec<i64> = spec.iter().flat_map(|&(k, m)| std::iter::repeat_n(k, m)).collect();
    highest_weights.sort_by(|a, b| b.cmp(a));
    debug_assert_eq!(highest_weights.len(), d);

    let ef = &ad_e * &ad_f;
    let mut ef_diagonals = BTreeMap::new();
    let mut ef_residual = 0.0f64;
    for &(k, _) in &spec {
        let shifted = &restricted - DMatrix::<Complex64>::identity(d, d) * Complex64::new(k as f64, 0.0);
        let (vecs, _) = linalg::null_space(&shifted);
        let mut v: DVector<Complex64> = &q * &vecs[0];
        let mut diag = Vec::with_capacity(k as usize + 1);
        for _ in 0..=k {
            let w = &ef * &v;
            let vv = v.dotc(&v);
            let mu = v.dotc(&w) / vv;
            ef_residual = ef_residual.max((&w - &v * mu).norm() / v.norm().max(1e-300) / (1.0 + mu.norm()));
            diag.push(mu.re);
            v = &ad_f * &v;
        }
        ef_diagonals.insert(k, diag);
    }

    let mut rest = highest_weights.clone();
    let minimal = match rest.iter().position(|&k| k == 2) {
        Some(pos) => {
            rest.remove(pos);
            rest.iter().all(|&k| k == 0 || k == 1)
        }
        None => false,
    };
    Ok(Sl2Spectrum { highest_weights, ef_diagonals, ef_residual, minimal })
}

/// `ad_H` spectrum test of the minimal-orbit signature: every eigenvalue lies in
/// `{-2,...,2}` and the `+-2` eigenspaces are lines. Returns the multiplicities
/// when the spectrum fits in that window.
pub fn minimality_signature(alg: &LieAlgebra, triple: &Sl2Triple) -> Option<Vec<(i64, usize)>> {
    let ad_h = alg.ad_matrix(&triple.h);
    linalg::integer_spectrum(&ad_h, -2, 2)
}

pub fn signature_is_minimal(sig: &Option<Vec<(i64, usize)>>) -> bool {
    match sig {
        Some(s) => {
            let mult = |v: i64| s.iter().find(|(k, _)| *k == v).map_or(0, |x| x.1);
            mult(2) == 1 && mult(-2) == 1
        }
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_element, stream_rng};

    fn alg(label: &str) -> LieAlgebra {
        LieAlgebra::of_type(label.parse().unwrap()).unwrap()
    }

    #[test]
    fn minimal_point_eta() {
        let a1 = alg("A1");
        let p = OrbitPoint::minimal(&a1, 1.0).unwrap();
        assert_eq!(p.element(), &a1.e(0));
        assert!((p.eta() - 4.0).abs() < 1e-14);
        let a2 = alg("A2");
        assert!((OrbitPoint::minimal(&a2, 1.0).unwrap().eta() - 6.0).abs() < 1e-14);
        let t = 0.37;
        assert!((OrbitPoint::minimal(&a2, t).unwrap().eta() - 6.0 * t * t).abs() < 1e-14);
        assert!(matches!(OrbitPoint::minimal(&a2, 0.0), Err(OrbitError::NonPositiveScale(_))));
        assert!(OrbitPoint::minimal(&a2, -1.0).is_err());
        assert!(OrbitPoint::minimal(&a2, f64::NAN).is_err());
    }

    #[test]
    fn general_points_must_be_nilpotent() {
        let a2 = alg("A2");
        assert!(OrbitPoint::general(&a2, a2.e(0)).is_ok());
        assert!(matches!(OrbitPoint::general(&a2, a2.coroot(0)), Err(OrbitError::NotNilpotent(_))));
        assert!(matches!(OrbitPoint::general(&a2, Element::zeros(8)), Err(OrbitError::ZeroPoint)));
    }

    #[test]
    fn sl2_vector_fields() {
        let a1 = alg("A1");
        let p = OrbitPoint::minimal(&a1, 1.0).unwrap();
        let (h, e, f) = (a1.basis(0), a1.e(0), a1.f(0));
        // [H, E] = 2E and [F, E] = -H
        assert_eq!(p.vector_field(&h).unwrap(), e.scale_real(2.0));
        assert_eq!(p.vector_field(&f).unwrap(), -&h);
        assert!(p.vector_field(&e).unwrap().is_zero());
    }

    #[test]
    fn omega_c_values() {
        let a1 = alg("A1");
        let p = OrbitPoint::minimal(&a1, 1.0).unwrap();
        let (h, f) = (a1.basis(0), a1.f(0));
        assert_eq!(p.omega_c(&f, &h).unwrap(), Complex64::new(-8.0, 0.0));
        assert_eq!(p.omega_c_via_field(&f, &h).unwrap(), Complex64::new(-8.0, 0.0));
        assert_eq!(p.omega_c(&f, &f).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn omega_c_two_routes_agree() {
        let g2 = alg("G2");
        let p = OrbitPoint::minimal(&g2, 0.8).unwrap();
        let mut rng = stream_rng(5, 0);
        for _ in 0..50 {
            let a = random_element(g2.dim(), &mut rng);
            let b = random_element(g2.dim(), &mut rng);
            let x = p.omega_c(&a, &b).unwrap();
            let y = p.omega_c_via_field(&a, &b).unwrap();
            assert!((x - y).norm() < 1e-10 * (1.0 + x.norm()));
            assert!((x + p.omega_c(&b, &a).unwrap()).norm() < 1e-10 * (1.0 + x.norm()));
        }
    }

    #[test]
    fn tangent_dimensions() {
        let a1 = alg("A1");
        let ts = tangent_space(&OrbitPoint::minimal(&a1, 1.0).unwrap()).unwrap();
        assert_eq!(ts.complex_dim(), 2);
        // spanned by E and H
        assert!(ts.tangency_residual(&a1, &a1.e(0)) < 1e-12);
        assert!(ts.tangency_residual(&a1, &a1.basis(0)) < 1e-12);
        assert!(ts.tangency_residual(&a1, &a1.f(0)) > 0.99);
        for (label, dim) in [("A2", 4), ("G2", 6)] {
            let a = alg(label);
            let ts = tangent_space(&OrbitPoint::minimal(&a, 1.0).unwrap()).unwrap();
            assert_eq!(ts.complex_dim(), dim, "{label}");
            let rs = a.root_system();
            let th = rs.root(a.theta()).to_vec();
            let count = rs
                .positive_roots()
                .iter()
                .filter(|b| rs.positive_index(&th.iter().zip(b.iter()).map(|(x, y)| x - y).collect::<Vec<_>>()).is_some())
                .count();
            assert_eq!(dim, 2 + count);
        }
    }

    #[test]
    fn tangent_basis_is_orthonormal() {
        let b3 = alg("B3");
        let ts = tangent_space(&OrbitPoint::minimal(&b3, 1.3).unwrap()).unwrap();
        for (i, u) in ts.complex_basis().iter().enumerate() {
            for (j, v) in ts.complex_basis().iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((b3.hermitian(u, v) - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn cohomogeneity_one() {
        let a1 = alg("A1");
        let c = cohomogeneity(&OrbitPoint::minimal(&a1, 1.0).unwrap()).unwrap();
        assert_eq!((c.tangent_real_dim, c.group_orbit_real_dim, c.cohomogeneity), (4, 3, 1));
        assert!(c.complement_residual < 1e-8);
        for label in ["A2", "C3", "G2"] {
            let a = alg(label);
            let c = cohomogeneity(&OrbitPoint::minimal(&a, 0.7).unwrap()).unwrap();
            assert_eq!(c.cohomogeneity, 1, "{label}");
            assert!(c.complement_residual < 1e-8, "{label}");
        }
    }

    #[test]
    fn exact_theta_nilpotency() {
        for label in ["A1", "A3", "B2", "D4", "G2", "F4"] {
            assert_eq!(theta_nilpotency_exact(&alg(label)), (true, 1), "{label}");
        }
    }

    #[test]
    fn spectra() {
        let a1 = alg("A1");
        let s = sl2_spectrum(&a1, &Sl2Triple::theta(&a1)).unwrap();
        assert_eq!(s.highest_weights, vec![2]);
        assert!(s.minimal);

        let a2 = alg("A2");
        let s = sl2_spectrum(&a2, &Sl2Triple::theta(&a2)).unwrap();
        assert_eq!(s.highest_weights, vec![2, 1, 1, 0]);
        assert!(s.minimal);

        let p = Sl2Triple::principal(&a2);
        assert_eq!(p.h, &a2.basis(0).scale_real(2.0) + &a2.basis(1).scale_real(2.0));
        let s = sl2_spectrum(&a2, &p).unwrap();
        assert_eq!(s.highest_weights, vec![4, 2]);
        assert!(!s.minimal);
        let d4: Vec<i64> = s.ef_diagonals[&4].iter().map(|x| x.round() as i64).collect();
        assert_eq!(d4, vec![4, 6, 6, 4, 0]);
        assert!(s.ef_residual < 1e-10);
    }

    #[test]
    fn bad_triple_is_rejected() {
        let a2 = alg("A2");
        let mut t = Sl2Triple::theta(&a2);
        t.f = t.f.scale_real(2.0);
        assert!(matches!(sl2_spectrum(&a2, &t), Err(OrbitError::BadTriple { .. })));
    }

    #[test]
    fn theta_signature() {
        for label in ["A2", "B3", "G2"] {
            let a = alg(label);
            let sig = minimality_signature(&a, &Sl2Triple::theta(&a));
            assert!(signature_is_minimal(&sig), "{label}: {sig:?}");
        }
        let a3 = alg("A3");
        assert!(!signature_is_minimal(&minimality_signature(&a3, &Sl2Triple::principal(&a3))));
    }
}
