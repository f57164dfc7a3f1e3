//! Simple complex Lie algebras in a Chevalley basis.
//!
//! The basis is ordered `h_1..h_r, e_1..e_N, f_1..f_N` where `e_k, f_k` belong
//! to the `k`-th positive root of the [`RootSystem`]. Structure constants are
//! exact integers:
//!
//! * `[h_i, e_b] = b(h_i) e_b`, `[h_i, f_b] = -b(h_i) f_b`
//! * `[e_b, f_b] = h_b`, the coroot written in the simple coroots
//! * `[e_a, e_b] = N(a, b) e_{a+b}` for any two roots with `a + b` a root
//!   (`f_b` plays the role of `e_{-b}`)
//!
//! Signs of `N` are fixed by declaring `N(a, b) = p + 1 > 0` on every
//! extraspecial pair and propagating with the standard relations. The result
//! satisfies `N(-a, -b) = -N(a, b)`, which makes `e_b -> -f_b, h -> -h`
//! an automorphism; composed with complex conjugation it is the compact real
//! structure `sigma`.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::path::{Path, PathBuf};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::intmat::{self, IntMatrix};
use crate::report::{CheckList, CheckRecord};
use crate::rootsystem::{RootSystem, RootSystemError, SimpleType};
use crate::sampling::{random_element, random_gaussian_integers, stream_rng};

/// Tag written into structure-constant cache files.
pub const CONVENTION_VERSION: &str = "chevalley-extraspecial-v1";

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    Jacobi(String, String, String),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error("cache file {path}: {reason}")]
    Cache { path: PathBuf, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Label of a Chevalley basis vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisLabel {
    H(usize),
    E(usize),
    F(usize),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::H(i) => write!(f, "h{}", i + 1),
            BasisLabel::E(k) => write!(f, "e{k}"),
            BasisLabel::F(k) => write!(f, "f{k}"),
        }
    }
}

/// Complex coefficient vector over the Chevalley basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    coeffs: Vec<Complex64>,
}

impl Element {
    pub fn zeros(dim: usize) -> Self {
        Element { coeffs: vec![Complex64::new(0.0, 0.0); dim] }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Self::zeros(dim);
        e.coeffs[i] = Complex64::new(1.0, 0.0);
        e
    }

    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Self {
        Element { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Element { coeffs: coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Element { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        Element { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Euclidean norm of the coefficient vector.
    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == Complex64::new(0.0, 0.0))
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        Element { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        Element { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Mul<Complex64> for &Element {
    type Output = Element;
    fn mul(self, rhs: Complex64) -> Element {
        self.scale(rhs)
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

type Sparse = Vec<(usize, i64)>;

/// A simple complex Lie algebra with exact Chevalley structure constants.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    rs: RootSystem,
    dim: usize,
    /// `table[i * dim + j]` lists the nonzero `(k, c_ij^k)`.
    table: Vec<Sparse>,
    killing: Vec<i64>,
    killing_nz: Vec<(usize, usize, i64)>,
}

impl LieAlgebra {
    /// Builds the algebra from scratch and checks the Jacobi identity on every
    /// basis triple.
    pub fn build(rs: RootSystem) -> Result<Self, AlgebraError> {
        let table = structure_constants(&rs);
        Self::from_table(rs, table)
    }

    pub fn of_type(ty: SimpleType) -> Result<Self, AlgebraError> {
        Self::build(RootSystem::from_type(ty))
    }

    fn from_table(rs: RootSystem, table: Vec<Sparse>) -> Result<Self, AlgebraError> {
        let dim = rs.rank() + 2 * rs.num_positive();
        let mut alg = LieAlgebra { rs, dim, table, killing: Vec::new(), killing_nz: Vec::new() };
        if let Some((i, j, k)) = alg.jacobi_violation() {
            return Err(AlgebraError::Jacobi(
                alg.label(i).to_string(),
                alg.label(j).to_string(),
                alg.label(k).to_string(),
            ));
        }
        alg.killing = alg.killing_by_trace();
        alg.killing_nz = (0..dim)
            .flat_map(|i| (0..dim).map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let v = alg.killing[i * dim + j];
                (v != 0).then_some((i, j, v))
            })
            .collect();
        Ok(alg)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn simple_type(&self) -> SimpleType {
        self.rs.simple_type()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn h_index(&self, i: usize) -> usize {
        i
    }

    pub fn e_index(&self, root: usize) -> usize {
        self.rs.rank() + root
    }

    pub fn f_index(&self, root: usize) -> usize {
        self.rs.rank() + self.rs.num_positive() + root
    }

    pub fn label(&self, i: usize) -> BasisLabel {
        let r = self.rs.rank();
        let n = self.rs.num_positive();
        if i < r {
            BasisLabel::H(i)
        } else if i < r + n {
            BasisLabel::E(i - r)
        } else {
            BasisLabel::F(i - r - n)
        }
    }

    /// Signed root of a basis vector, `None` on the Cartan subalgebra.
    pub fn basis_root(&self, i: usize) -> Option<Vec<i64>> {
        match self.label(i) {
            BasisLabel::H(_) => None,
            BasisLabel::E(k) => Some(self.rs.root(k).to_vec()),
            BasisLabel::F(k) => Some(self.rs.root(k).iter().map(|x| -x).collect()),
        }
    }

    pub fn basis(&self, i: usize) -> Element {
        Element::basis(self.dim, i)
    }

    pub fn e(&self, root: usize) -> Element {
        self.basis(self.e_index(root))
    }

    pub fn f(&self, root: usize) -> Element {
        self.basis(self.f_index(root))
    }

    /// Coroot `h_b = [e_b, f_b]` as an element.
    pub fn coroot(&self, root: usize) -> Element {
        let c = self.rs.coroot_coefficients(self.rs.root(root));
        let mut x = Element::zeros(self.dim);
        for (i, ci) in c.iter().enumerate() {
            x.coeffs[i] = Complex64::new(*ci as f64, 0.0);
        }
        x
    }

    /// Index of the highest root.
    pub fn theta(&self) -> usize {
        self.rs.highest_root_index()
    }

    /// Nonzero `(k, c_ij^k)` for the bracket of two basis vectors.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.table[i * self.dim + j]
    }

    /// Exact Killing form on basis vectors.
    pub fn killing(&self, i: usize, j: usize) -> i64 {
        self.killing[i * self.dim + j]
    }

    pub fn killing_matrix(&self) -> &[i64] {
        &self.killing
    }

    /// Nonzero structure constants as `(i, j, k, c)`, sorted.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, i64)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for &(k, c) in self.basis_bracket(i, j) {
                    out.push((i, j, k, c));
                }
            }
        }
        out
    }

    fn check_dim(&self, x: &Element) -> Result<(), AlgebraError> {
        if x.dim() == self.dim {
            Ok(())
        } else {
            Err(AlgebraError::DimensionMismatch { expected: self.dim, got: x.dim() })
        }
    }

    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    /// Bracket without the dimension check; panics on mismatched lengths.
    pub fn bracket_unchecked(&self, x: &Element, y: &Element) -> Element {
        let zero = Complex64::new(0.0, 0.0);
        let mut out = Element::zeros(self.dim);
        let ynz: Vec<usize> = (0..self.dim).filter(|&j| y.coeffs[j] != zero).collect();
        for i in 0..self.dim {
            let xi = x.coeffs[i];
            if xi == zero {
                continue;
            }
            for &j in &ynz {
                let xy = xi * y.coeffs[j];
                for &(k, c) in &self.table[i * self.dim + j] {
                    out.coeffs[k] += xy * c as f64;
                }
            }
        }
        out
    }

    /// `trace(ad_x ad_y)`.
    pub fn killing_form(&self, x: &Element, y: &Element) -> Complex64 {
        self.killing_nz
            .iter()
            .map(|&(i, j, v)| x.coeffs[i] * y.coeffs[j] * v as f64)
            .sum()
    }

    /// The pairing `<x, y> = -trace(ad_x ad_y)`: complex bilinear, not Hermitian.
    pub fn pairing(&self, x: &Element, y: &Element) -> Result<Complex64, AlgebraError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.pairing_unchecked(x, y))
    }

    pub fn pairing_unchecked(&self, x: &Element, y: &Element) -> Complex64 {
        -self.killing_form(x, y)
    }

    /// Compact real structure: antilinear, `e_b -> -f_b`, `f_b -> -e_b`, `h -> -h`.
    pub fn sigma(&self, x: &Element) -> Element {
        let r = self.rs.rank();
        let n = self.rs.num_positive();
        let mut out = Element::zeros(self.dim);
        for i in 0..r {
            out.coeffs[i] = -x.coeffs[i].conj();
        }
        for k in 0..n {
            out.coeffs[r + n + k] = -x.coeffs[r + k].conj();
            out.coeffs[r + k] = -x.coeffs[r + n + k].conj();
        }
        out
    }

    /// Hermitian form `<x, sigma y>`, positive definite.
    pub fn hermitian(&self, x: &Element, y: &Element) -> Complex64 {
        self.pairing_unchecked(x, &self.sigma(y))
    }

    /// `eta(x) = <x, sigma x>`.
    pub fn eta(&self, x: &Element) -> f64 {
        self.hermitian(x, x).re
    }

    /// Norm induced by [`Self::hermitian`].
    pub fn norm(&self, x: &Element) -> f64 {
        self.eta(x).max(0.0).sqrt()
    }

    /// Matrix of `ad_x` in the Chevalley basis (columns are images of basis vectors).
    pub fn ad_matrix(&self, x: &Element) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            let xi = x.coeffs[i];
            if xi == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..self.dim {
                for &(k, c) in &self.table[i * self.dim + j] {
                    m[(k, j)] += xi * c as f64;
                }
            }
        }
        m
    }

    /// Exact matrix of `ad` of a basis vector.
    pub fn ad_basis_exact(&self, i: usize) -> IntMatrix {
        let mut m = intmat::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for &(k, c) in self.basis_bracket(i, j) {
                m[k][j] += c;
            }
        }
        m
    }

    fn killing_by_trace(&self) -> Vec<i64> {
        let dim = self.dim;
        // kappa_ij = sum_k sum_l c_{jk}^l c_{il}^k
        (0..dim)
            .into_par_iter()
            .flat_map_iter(|i| {
                (0..dim).map(move |j| {
                    let mut s = 0i64;
                    for k in 0..dim {
                        for &(l, cjk) in &self.table[j * dim + k] {
                            for &(kk, cil) in &self.table[i * dim + l] {
                                if kk == k {
                                    s += cjk * cil;
                                }
                            }
                        }
                    }
                    s
                })
            })
            .collect()
    }

    /// Killing form from the closed rules for a Chevalley basis:
    /// `kappa(h_i, h_j) = 2 sum_{b>0} b(h_i) b(h_j)`,
    /// `kappa(e_b, f_b) = kappa(h_b, h_b) / 2`, everything else zero.
    pub fn killing_by_block_rules(&self) -> Vec<i64> {
        let r = self.rs.rank();
        let n = self.rs.num_positive();
        let dim = self.dim;
        let mut k = vec![0i64; dim * dim];
        let hh = |a: &[i64], b: &[i64]| -> i64 {
            2 * self
                .rs
                .positive_roots()
                .iter()
                .map(|beta| {
                    let ba: i64 = (0..r).map(|i| a[i] * self.rs.eval_on_coroot(beta, i)).sum();
                    let bb: i64 = (0..r).map(|i| b[i] * self.rs.eval_on_coroot(beta, i)).sum();
                    ba * bb
                })
                .sum::<i64>()
        };
        for i in 0..r {
            for j in 0..r {
                let mut a = vec![0; r];
                let mut b = vec![0; r];
                a[i] = 1;
                b[j] = 1;
                k[i * dim + j] = hh(&a, &b);
            }
        }
        for beta in 0..n {
            let c = self.rs.coroot_coefficients(self.rs.root(beta));
            let v = hh(&c, &c) / 2;
            k[(r + beta) * dim + r + n + beta] = v;
            k[(r + n + beta) * dim + r + beta] = v;
        }
        k
    }

    /// First basis triple violating Jacobi, if any.
    fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let dim = self.dim;
        (0..dim).into_par_iter().find_map_first(|i| {
            let mut acc = vec![0i64; dim];
            for j in i + 1..dim {
                for k in j + 1..dim {
                    if self.jacobi_residual(i, j, k, &mut acc) != 0 {
                        return Some((i, j, k));
                    }
                }
            }
            None
        })
    }

    /// Max absolute coefficient of the Jacobiator of basis vectors `i, j, k`.
    fn jacobi_residual(&self, i: usize, j: usize, k: usize, acc: &mut [i64]) -> i64 {
        let dim = self.dim;
        let mut touched: Vec<usize> = Vec::new();
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            // [a, [b, c]]
            for &(m, cbc) in &self.table[b * dim + c] {
                for &(o, cam) in &self.table[a * dim + m] {
                    acc[o] += cbc * cam;
                    touched.push(o);
                }
            }
        }
        let mut worst = 0;
        for o in touched {
            worst = worst.max(acc[o].abs());
            acc[o] = 0;
        }
        worst
    }

    fn bracket_exact(&self, x: &[(i64, i64)], y: &[(i64, i64)]) -> Vec<(i64, i64)> {
        let mut out = vec![(0i64, 0i64); self.dim];
        for i in 0..self.dim {
            let (xr, xi) = x[i];
            if xr == 0 && xi == 0 {
                continue;
            }
            for j in 0..self.dim {
                let (yr, yi) = y[j];
                if yr == 0 && yi == 0 {
                    continue;
                }
                let (pr, pi) = (xr * yr - xi * yi, xr * yi + xi * yr);
                for &(k, c) in &self.table[i * self.dim + j] {
                    out[k].0 += pr * c;
                    out[k].1 += pi * c;
                }
            }
        }
        out
    }

    fn sigma_exact(&self, x: &[(i64, i64)]) -> Vec<(i64, i64)> {
        let r = self.rs.rank();
        let n = self.rs.num_positive();
        let mut out = vec![(0i64, 0i64); self.dim];
        let neg_conj = |(a, b): (i64, i64)| (-a, b);
        for i in 0..r {
            out[i] = neg_conj(x[i]);
        }
        for k in 0..n {
            out[r + n + k] = neg_conj(x[r + k]);
            out[r + k] = neg_conj(x[r + n + k]);
        }
        out
    }

    /// Checks every structural invariant of the algebra.
    ///
    /// Exact checks run on all basis pairs or triples and on seeded
    /// Gaussian-integer vectors; positivity of `eta` and the antilinearity of
    /// `sigma` over `C` are checked numerically on seeded random elements.
    pub fn verify(&self, seed: u64) -> CheckList {
        let dim = self.dim;
        let r = self.rs.rank();
        let n = self.rs.num_positive();
        let mut out = CheckList::default();

        // Jacobi, exhaustive over basis triples.
        let jac = (0..dim)
            .into_par_iter()
            .map(|i| {
                let mut acc = vec![0i64; dim];
                let mut worst = 0;
                for j in i + 1..dim {
                    for k in j + 1..dim {
                        worst = worst.max(self.jacobi_residual(i, j, k, &mut acc));
                    }
                }
                worst
            })
            .max()
            .unwrap_or(0);
        out.push(CheckRecord::exact("jacobi", jac));

        // Antisymmetry.
        let mut anti = 0;
        for i in 0..dim {
            for j in 0..dim {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for &(k, c) in self.basis_bracket(i, j) {
                    *acc.entry(k).or_default() += c;
                }
                for &(k, c) in self.basis_bracket(j, i) {
                    *acc.entry(k).or_default() += c;
                }
                anti = anti.max(acc.values().map(|v| v.abs()).max().unwrap_or(0));
            }
        }
        out.push(CheckRecord::exact("antisymmetry", anti));

        // Chevalley relations: [e_b, f_b] = h_b, [h_i, e_b] = b(h_i) e_b, |N| = p + 1.
        let mut chev = 0;
        for b in 0..n {
            let coroot = self.rs.coroot_coefficients(self.rs.root(b));
            let mut got = vec![0i64; r];
            for &(k, c) in self.basis_bracket(self.e_index(b), self.f_index(b)) {
                if k < r {
                    got[k] += c;
                } else {
                    chev = chev.max(c.abs());
                }
            }
            for i in 0..r {
                chev = chev.max((got[i] - coroot[i]).abs());
                let want = self.rs.eval_on_coroot(self.rs.root(b), i);
                let br = self.basis_bracket(i, self.e_index(b));
                let val = br.iter().find(|(k, _)| *k == self.e_index(b)).map_or(0, |x| x.1);
                chev = chev.max((val - want).abs());
            }
        }
        for i in r..dim {
            for j in r..dim {
                let (a, b) = (self.basis_root(i).unwrap(), self.basis_root(j).unwrap());
                let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                if let Some(s) = self.rs.find(&sum) {
                    let (p, _) = self.rs.root_string(&a, &b).expect("a != +-b");
                    let target = if s.positive { self.e_index(s.index) } else { self.f_index(s.index) };
                    let br = self.basis_bracket(i, j);
                    let ok = br.len() == 1 && br[0].0 == target && br[0].1.abs() == p + 1;
                    if !ok {
                        chev = chev.max(1);
                    }
                }
            }
        }
        out.push(CheckRecord::exact("chevalley_relations", chev));

        // Killing form: ad-invariance over all basis triples, and block-rule cross-check.
        let kinv = (0..dim)
            .into_par_iter()
            .map(|z| {
                let mut worst = 0i64;
                for x in 0..dim {
                    for y in 0..dim {
                        let a: i64 = self.basis_bracket(z, x).iter().map(|&(k, c)| c * self.killing(k, y)).sum();
                        let b: i64 = self.basis_bracket(z, y).iter().map(|&(k, c)| c * self.killing(x, k)).sum();
                        worst = worst.max((a + b).abs());
                    }
                }
                worst
            })
            .max()
            .unwrap_or(0);
        out.push(CheckRecord::exact("killing_ad_invariance", kinv));
        let block = self.killing_by_block_rules();
        let kdiff = block.iter().zip(&self.killing).map(|(a, b)| (a - b).abs()).max().unwrap_or(0);
        out.push(CheckRecord::exact("killing_trace_vs_block_rules", kdiff));
        let ksym = (0..dim)
            .flat_map(|i| (0..dim).map(move |j| (i, j)))
            .map(|(i, j)| (self.killing(i, j) - self.killing(j, i)).abs())
            .max()
            .unwrap_or(0);
        out.push(CheckRecord::exact("killing_symmetry", ksym));

        // sigma: automorphism on basis pairs, involution and antilinearity on
        // Gaussian-integer vectors.
        let mut aut = 0;
        for i in 0..dim {
            for j in 0..dim {
                let mut bi = vec![(0, 0); dim];
                let mut bj = vec![(0, 0); dim];
                bi[i] = (1, 0);
                bj[j] = (1, 0);
                let lhs = self.sigma_exact(&self.bracket_exact(&bi, &bj));
                let rhs = self.bracket_exact(&self.sigma_exact(&bi), &self.sigma_exact(&bj));
                aut = aut.max(max_diff(&lhs, &rhs));
            }
        }
        out.push(CheckRecord::exact("sigma_automorphism_basis", aut));

        let trials = if dim > 150 { 4 } else { 20 };
        let mut inv = 0;
        let mut aut_rand = 0;
        let mut anti_lin = 0;
        let mut rng = stream_rng(seed, 0);
        for _ in 0..trials {
            let x = random_gaussian_integers(dim, 3, &mut rng);
            let y = random_gaussian_integers(dim, 3, &mut rng);
            inv = inv.max(max_diff(&self.sigma_exact(&self.sigma_exact(&x)), &x));
            let lhs = self.sigma_exact(&self.bracket_exact(&x, &y));
            let rhs = self.bracket_exact(&self.sigma_exact(&x), &self.sigma_exact(&y));
            aut_rand = aut_rand.max(max_diff(&lhs, &rhs));
            // sigma(lambda x) = conj(lambda) sigma(x), lambda = 2 + 3i
            let lam = (2i64, 3i64);
            let mul = |v: &[(i64, i64)], (a, b): (i64, i64)| -> Vec<(i64, i64)> {
                v.iter().map(|&(c, d)| (a * c - b * d, a * d + b * c)).collect()
            };
            let lhs = self.sigma_exact(&mul(&x, lam));
            let rhs = mul(&self.sigma_exact(&x), (lam.0, -lam.1));
            anti_lin = anti_lin.max(max_diff(&lhs, &rhs));
        }
        out.push(CheckRecord::exact("sigma_involution", inv));
        out.push(CheckRecord::exact("sigma_automorphism_random", aut_rand));
        out.push(CheckRecord::exact("sigma_antilinear", anti_lin));

        // Fixed points of sigma: the compact real basis.
        let mut fixed = 0.0f64;
        for x in self.compact_basis() {
            fixed = fixed.max((&self.sigma(&x) - &x).coeff_norm());
        }
        out.push(CheckRecord::numeric("sigma_fixes_compact_form", fixed, 1e-14));

        // Positivity of eta, and the floating-point sigma against the exact one.
        let mut min_ratio = f64::INFINITY;
        let mut float_aut = 0.0f64;
        let mut rng = stream_rng(seed, 1);
        for t in 0..1000 {
            let x = random_element(dim, &mut rng);
            let eta = self.eta(&x);
            let im = self.hermitian(&x, &x).im.abs();
            min_ratio = min_ratio.min(eta / x.coeff_norm().powi(2));
            float_aut = float_aut.max(im / eta.abs());
            if t < 10 {
                let y = random_element(dim, &mut rng);
                let lhs = self.sigma(&self.bracket_unchecked(&x, &y));
                let rhs = self.bracket_unchecked(&self.sigma(&x), &self.sigma(&y));
                float_aut = float_aut.max((&lhs - &rhs).coeff_norm() / lhs.coeff_norm());
            }
        }
        out.push(CheckRecord::flag("eta_positive", min_ratio > 0.0));
        out.push(CheckRecord::numeric("sigma_float_consistency", float_aut, 1e-12));
        out
    }

    /// Real basis of the compact form: `i h_j`, `e_b - f_b`, `i (e_b + f_b)`.
    pub fn compact_basis(&self) -> Vec<Element> {
        let r = self.rs.rank();
        let n = self.rs.num_positive();
        let i = Complex64::new(0.0, 1.0);
        let mut out = Vec::with_capacity(self.dim);
        for j in 0..r {
            out.push(self.basis(j).scale(i));
        }
        for b in 0..n {
            out.push(&self.e(b) - &self.f(b));
            out.push((&self.e(b) + &self.f(b)).scale(i));
        }
        out
    }

    /// Writes the structure-constant cache file.
    pub fn write_cache(&self, path: &Path) -> Result<(), AlgebraError> {
        let mut buf = String::new();
        let ty = self.simple_type();
        buf.push_str(&format!("{} {} {}\n", ty.series, ty.rank, CONVENTION_VERSION));
        for (i, j, k, c) in self.structure_constants() {
            buf.push_str(&format!("{i} {j} {k} {c}\n"));
        }
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        let mut f = fs::File::create(path)?;
        f.write_all(buf.as_bytes())?;
        Ok(())
    }

    /// Reads a cache file written by [`Self::write_cache`]; the Jacobi identity is
    /// re-checked on load.
    pub fn read_cache(path: &Path, ty: SimpleType) -> Result<Self, AlgebraError> {
        let bad = |reason: String| AlgebraError::Cache { path: path.to_path_buf(), reason };
        let f = fs::File::open(path)?;
        let mut lines = BufReader::new(f).lines();
        let header = lines.next().ok_or_else(|| bad("empty file".into()))??;
        let want = format!("{} {} {}", ty.series, ty.rank, CONVENTION_VERSION);
        if header.trim() != want {
            return Err(bad(format!("header {header:?}, expected {want:?}")));
        }
        let rs = RootSystem::from_type(ty);
        let dim = rs.rank() + 2 * rs.num_positive();
        let mut table: Vec<Sparse> = vec![Vec::new(); dim * dim];
        for (lineno, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let nums: Vec<i64> = line
                .split_whitespace()
                .map(|s| s.parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|e| bad(format!("line {}: {e}", lineno + 2)))?;
            if nums.len() != 4 || nums[..3].iter().any(|&v| v < 0 || v as usize >= dim) || nums[3] == 0 {
                return Err(bad(format!("line {}: malformed entry {line:?}", lineno + 2)));
            }
            table[nums[0] as usize * dim + nums[1] as usize].push((nums[2] as usize, nums[3]));
        }
        for i in 0..dim {
            for j in 0..dim {
                let mut a = table[i * dim + j].clone();
                let mut b: Sparse = table[j * dim + i].iter().map(|&(k, c)| (k, -c)).collect();
                a.sort();
                b.sort();
                if a != b {
                    return Err(bad(format!("antisymmetry fails for basis pair ({i}, {j})")));
                }
            }
        }
        let fresh = structure_constants(&rs);
        Self::from_table(rs, table).map_err(|e| bad(e.to_string())).and_then(|alg| {
            // the convention is deterministic, so any disagreement means a damaged file
            if alg.table != fresh {
                Err(bad("structure constants differ from the current convention".into()))
            } else {
                Ok(alg)
            }
        })
    }

    /// Loads `<dir>/<type>.sc` if present and valid, otherwise builds and writes it.
    /// Returns the algebra and any warnings raised along the way.
    pub fn load_or_build(ty: SimpleType, dir: Option<&Path>) -> Result<(Self, Vec<String>), AlgebraError> {
        let mut warnings = Vec::new();
        let Some(dir) = dir else {
            return Ok((Self::of_type(ty)?, warnings));
        };
        let path = cache_path(dir, ty);
        if path.exists() {
            match Self::read_cache(&path, ty) {
                Ok(alg) => return Ok((alg, warnings)),
                Err(e) => warnings.push(format!("rebuilding corrupt cache: {e}")),
            }
        }
        let alg = Self::of_type(ty)?;
        if let Err(e) = alg.write_cache(&path) {
            warnings.push(format!("could not write cache {}: {e}", path.display()));
        }
        Ok((alg, warnings))
    }
}

pub fn cache_path(dir: &Path, ty: SimpleType) -> PathBuf {
    dir.join(format!("{ty}.sc"))
}

fn max_diff(a: &[(i64, i64)], b: &[(i64, i64)]) -> i64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x.0 - y.0).abs().max((x.1 - y.1).abs()))
        .max()
        .unwrap_or(0)
}

/// Chevalley constants `N(a, b)` for arbitrary roots, memoised on positive pairs.
struct ConstantSolver<'a> {
    rs: &'a RootSystem,
    extraspecial: Vec<Option<(usize, usize)>>,
    memo: HashMap<(usize, usize), i64>,
}

impl<'a> ConstantSolver<'a> {
    fn new(rs: &'a RootSystem) -> Self {
        let n = rs.num_positive();
        let mut extraspecial = vec![None; n];
        for (xi, slot) in extraspecial.iter_mut().enumerate() {
            let target = rs.root(xi);
            'outer: for a in 0..n {
                for b in a + 1..n {
                    let s: Vec<i64> = rs.root(a).iter().zip(rs.root(b)).map(|(x, y)| x + y).collect();
                    if s == target {
                        *slot = Some((a, b));
                        break 'outer;
                    }
                }
            }
        }
        ConstantSolver { rs, extraspecial, memo: HashMap::new() }
    }

    fn norm(&self, v: &[i64]) -> i64 {
        self.rs.inner(v, v)
    }

    /// `N(a, b)`; `a + b` must be a root.
    fn n(&mut self, a: &[i64], b: &[i64]) -> i64 {
        let sa = self.rs.find(a).expect("a is a root");
        let sb = self.rs.find(b).expect("b is a root");
        match (sa.positive, sb.positive) {
            (true, true) => self.n_positive(sa.index, sb.index),
            (false, false) => -self.n_positive(sa.index, sb.index),
            (true, false) => self.n_mixed(a, b),
            (false, true) => -self.n_mixed(b, a),
        }
    }

    /// `a > 0 > b`. With `c = -(a + b)`:
    /// `N(a,b)/(c,c) = N(b,c)/(a,a) = N(c,a)/(b,b)`.
    fn n_mixed(&mut self, a: &[i64], b: &[i64]) -> i64 {
        let c: Vec<i64> = a.iter().zip(b).map(|(x, y)| -(x + y)).collect();
        let cc = self.norm(&c);
        let c_positive = self.rs.find(&c).expect("a + b is a root").positive;
        let (num, den) = if c_positive {
            (cc * self.n(&c, a), self.norm(b))
        } else {
            (cc * self.n(b, &c), self.norm(a))
        };
        assert_eq!(num % den, 0, "inexact Chevalley constant");
        num / den
    }

    fn n_positive(&mut self, a: usize, b: usize) -> i64 {
        if a > b {
            return -self.n_positive(b, a);
        }
        if let Some(&v) = self.memo.get(&(a, b)) {
            return v;
        }
        let ra = self.rs.root(a).to_vec();
        let rb = self.rs.root(b).to_vec();
        let xi: Vec<i64> = ra.iter().zip(&rb).map(|(x, y)| x + y).collect();
        let xi_idx = self.rs.positive_index(&xi).expect("a + b is a root");
        let (g, d) = self.extraspecial[xi_idx].expect("non-simple root has an extraspecial pair");
        let v = if g == a {
            let (p, _) = self.rs.root_string(&ra, &rb).expect("distinct roots");
            p + 1
        } else {
            // Four-root relation on (a, b, -g, -d):
            // N(a,b) = (xi,xi)/(p_gd + 1) * [N(b,-g)N(a,-d)/|b-g|^2 + N(-g,a)N(b,-d)/|a-g|^2]
            let rg = self.rs.root(g).to_vec();
            let rd = self.rs.root(d).to_vec();
            let (pgd, _) = self.rs.root_string(&rg, &rd).expect("distinct roots");
            let neg = |v: &[i64]| v.iter().map(|x| -x).collect::<Vec<i64>>();
            let diff = |x: &[i64], y: &[i64]| x.iter().zip(y).map(|(p, q)| p - q).collect::<Vec<i64>>();
            let b_g = diff(&rb, &rg);
            let a_g = diff(&ra, &rg);
            let (t1, l1) = if self.rs.is_root(&b_g) {
                (self.n(&rb, &neg(&rg)) * self.n(&ra, &neg(&rd)), self.norm(&b_g))
            } else {
                (0, 1)
            };
            let (t2, l2) = if self.rs.is_root(&a_g) {
                (self.n(&neg(&rg), &ra) * self.n(&rb, &neg(&rd)), self.norm(&a_g))
            } else {
                (0, 1)
            };
            let num = self.norm(&xi) * (t1 * l2 + t2 * l1);
            let den = l1 * l2 * (pgd + 1);
            assert_eq!(num % den, 0, "inexact Chevalley constant");
            num / den
        };
        self.memo.insert((a, b), v);
        v
    }
}

fn structure_constants(rs: &RootSystem) -> Vec<Sparse> {
    let r = rs.rank();
    let n = rs.num_positive();
    let dim = r + 2 * n;
    let mut solver = ConstantSolver::new(rs);
    let signed_root = |i: usize| -> Option<Vec<i64>> {
        if i < r {
            None
        } else if i < r + n {
            Some(rs.root(i - r).to_vec())
        } else {
            Some(rs.root(i - r - n).iter().map(|x| -x).collect())
        }
    };
    let index_of = |v: &[i64]| -> usize {
        let s = rs.find(v).expect("root");
        if s.positive {
            r + s.index
        } else {
            r + n + s.index
        }
    };
    let mut table: Vec<Sparse> = vec![Vec::new(); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let entry = match (signed_root(i), signed_root(j)) {
                (None, None) => Vec::new(),
                (None, Some(b)) => {
                    let v = rs.eval_on_coroot(&b, i);
                    if v == 0 {
                        Vec::new()
                    } else {
                        vec![(j, v)]
                    }
                }
                (Some(a), None) => {
                    let v = -rs.eval_on_coroot(&a, j);
                    if v == 0 {
                        Vec::new()
                    } else {
                        vec![(i, v)]
                    }
                }
                (Some(a), Some(b)) => {
                    let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                    if sum.iter().all(|&x| x == 0) {
                        // [e_a, e_{-a}] = h_a for a > 0, and -h_{-a} for a < 0
                        let positive = i < r + n;
                        let base = if positive { &a } else { &b };
                        let sign = if positive { 1 } else { -1 };
                        rs.coroot_coefficients(base)
                            .into_iter()
                            .enumerate()
                            .filter(|(_, c)| *c != 0)
                            .map(|(k, c)| (k, sign * c))
                            .collect()
                    } else if rs.is_root(&sum) {
                        vec![(index_of(&sum), solver.n(&a, &b))]
                    } else {
                        Vec::new()
                    }
                }
            };
            table[i * dim + j] = entry;
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(label: &str) -> LieAlgebra {
        LieAlgebra::of_type(label.parse().unwrap()).unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn sl2_relations() {
        let a = alg("A1");
        assert_eq!(a.dim(), 3);
        let (h, e, f) = (a.basis(0), a.e(0), a.f(0));
        assert_eq!(a.bracket(&e, &f).unwrap(), h);
        assert_eq!(a.bracket(&h, &e).unwrap(), e.scale(c(2.0)));
        assert_eq!(a.bracket(&h, &f).unwrap(), f.scale(c(-2.0)));
    }

    #[test]
    fn sl2_pairing_values() {
        let a = alg("A1");
        let (h, e, f) = (a.basis(0), a.e(0), a.f(0));
        assert_eq!(a.pairing(&e, &f).unwrap(), c(-4.0));
        assert_eq!(a.pairing(&h, &h).unwrap(), c(-8.0));
        assert_eq!(a.pairing(&e, &e).unwrap(), c(0.0));
    }

    #[test]
    fn a2_simple_bracket_has_unit_constant() {
        let a = alg("A2");
        assert_eq!(a.dim(), 8);
        let br = a.basis_bracket(a.e_index(0), a.e_index(1));
        assert_eq!(br.len(), 1);
        assert_eq!(br[0].0, a.e_index(2));
        assert_eq!(br[0].1.abs(), 1);
    }

    #[test]
    fn eta_values() {
        let a = alg("A1");
        assert!((a.eta(&a.e(0)) - 4.0).abs() < 1e-15);
        assert_eq!(a.eta(&Element::zeros(3)), 0.0);
        let t = 1.7;
        assert!((a.eta(&a.e(0).scale(c(t))) - 4.0 * t * t).abs() < 1e-12);
    }

    #[test]
    fn sigma_on_basis() {
        let a = alg("A2");
        for b in 0..3 {
            assert_eq!(a.sigma(&a.e(b)), -&a.f(b));
            let ih = a.coroot(b).scale(Complex64::new(0.0, 1.0));
            assert_eq!(a.sigma(&ih), ih);
        }
        let mut rng = stream_rng(3, 0);
        let x = random_element(8, &mut rng);
        assert_eq!(a.sigma(&a.sigma(&x)), x);
    }

    #[test]
    fn theta_is_isotropic() {
        for label in ["A3", "G2", "F4"] {
            let a = alg(label);
            let e = a.e(a.theta());
            assert_eq!(a.pairing(&e, &e).unwrap(), c(0.0));
        }
    }

    #[test]
    fn random_antisymmetry_and_jacobi() {
        let a = alg("B3");
        let mut rng = stream_rng(11, 0);
        for _ in 0..20 {
            let x = random_element(a.dim(), &mut rng);
            let y = random_element(a.dim(), &mut rng);
            let z = random_element(a.dim(), &mut rng);
            assert!(a.bracket(&x, &x).unwrap().coeff_norm() < 1e-12);
            let j = &(&a.bracket_unchecked(&x, &a.bracket_unchecked(&y, &z))
                + &a.bracket_unchecked(&y, &a.bracket_unchecked(&z, &x)))
                + &a.bracket_unchecked(&z, &a.bracket_unchecked(&x, &y));
            assert!(j.coeff_norm() < 1e-10);
        }
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let a = alg("A2");
        let x = Element::zeros(3);
        assert!(matches!(a.bracket(&x, &a.e(0)), Err(AlgebraError::DimensionMismatch { .. })));
        assert!(a.pairing(&a.e(0), &x).is_err());
    }

    #[test]
    fn verify_small_algebras() {
        for label in ["A1", "G2", "B2", "C3"] {
            let rep = alg(label).verify(42);
            for c in &rep.checks {
                assert!(c.pass, "{label}: {c:?}");
            }
        }
        assert_eq!(alg("G2").dim(), 14);
    }

    #[test]
    fn cache_round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let ty: SimpleType = "G2".parse().unwrap();
        let (a, w) = LieAlgebra::load_or_build(ty, Some(dir.path())).unwrap();
        assert!(w.is_empty());
        let path = cache_path(dir.path(), ty);
        let first = fs::read(&path).unwrap();
        let text = String::from_utf8(first.clone()).unwrap();
        assert!(text.starts_with("G 2 chevalley-extraspecial-v1\n"));
        let (b, w) = LieAlgebra::load_or_build(ty, Some(dir.path())).unwrap();
        assert!(w.is_empty());
        assert_eq!(a.structure_constants(), b.structure_constants());
        // rewrite is byte-identical
        b.write_cache(&path).unwrap();
        assert_eq!(fs::read(&path).unwrap(), first);

        // flip one sign
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        let last = lines.pop().unwrap();
        let mut parts: Vec<i64> = last.split(' ').map(|s| s.parse().unwrap()).collect();
        parts[3] = -parts[3];
        lines.push(parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" "));
        fs::write(&path, lines.join("\n")).unwrap();
        assert!(LieAlgebra::read_cache(&path, ty).is_err());
        let (_, w) = LieAlgebra::load_or_build(ty, Some(dir.path())).unwrap();
        assert_eq!(w.len(), 1, "{w:?}");
        assert_eq!(fs::read(&path).unwrap(), first);

        fs::write(&path, "garbage").unwrap();
        let (_, w) = LieAlgebra::load_or_build(ty, Some(dir.path())).unwrap();
        assert!(w[0].contains("rebuilding"));
    }
}
