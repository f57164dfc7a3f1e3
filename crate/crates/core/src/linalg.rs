//! Dense linear-algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Relative singular-value threshold used for every numerical rank decision.
pub const RANK_RTOL: f64 = 1e-8;

/// Numerical rank with the gap that decided it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankInfo {
    pub rank: usize,
    pub largest: f64,
    /// Smallest singular value counted as nonzero.
    pub last_kept: f64,
    /// Largest singular value counted as zero (0 if none).
    pub first_dropped: f64,
}

impl RankInfo {
    /// Ratio of the kept/dropped singular values around the cut.
    pub fn gap(&self) -> f64 {
        if self.first_dropped == 0.0 {
            f64::INFINITY
        } else {
            self.last_kept / self.first_dropped
        }
    }
}

fn rank_from_sorted(sv: &[f64]) -> RankInfo {
    let largest = sv.first().copied().unwrap_or(0.0);
    let cut = RANK_RTOL * largest;
    let rank = sv.iter().take_while(|&&s| s > cut && s > 0.0).count();
    RankInfo {
        rank,
        largest,
        last_kept: if rank > 0 { sv[rank - 1] } else { 0.0 },
        first_dropped: sv.get(rank).copied().unwrap_or(0.0),
    }
}

fn sorted_desc(v: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut s: Vec<f64> = v.collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn complex_rank(m: &DMatrix<Complex64>) -> RankInfo {
    if m.is_empty() {
        return rank_from_sorted(&[]);
    }
    let sv = m.clone().singular_values();
    rank_from_sorted(&sorted_desc(sv.iter().copied()))
}

pub fn real_rank(m: &DMatrix<f64>) -> RankInfo {
    if m.is_empty() {
        return rank_from_sorted(&[]);
    }
    let sv = m.clone().singular_values();
    rank_from_sorted(&sorted_desc(sv.iter().copied()))
}

/// Largest singular value.
pub fn operator_norm(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().singular_values().iter().copied().fold(0.0, f64::max)
}

/// Orthonormal (Euclidean) basis of the column space, with the rank decision.
pub fn column_space(m: &DMatrix<Complex64>) -> (Vec<DVector<Complex64>>, RankInfo) {
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("requested U");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let info = rank_from_sorted(&order.iter().map(|&i| svd.singular_values[i]).collect::<Vec<_>>());
    let cols = order[..info.rank].iter().map(|&i| u.column(i).into_owned()).collect();
    (cols, info)
}

/// Orthonormal (Euclidean) basis of the null space of a square matrix.
pub fn null_space(m: &DMatrix<Complex64>) -> (Vec<DVector<Complex64>>, RankInfo) {
    let n = m.ncols();
    if n == 0 {
        return (Vec::new(), rank_from_sorted(&[]));
    }
    // null space of M = orthogonal complement of the column space of M^H
    let mh = m.adjoint();
    let (range, info) = column_space(&mh);
    let mut basis: Vec<DVector<Complex64>> = range;
    let mut out = Vec::new();
    for i in 0..n {
        let mut v = DVector::<Complex64>::zeros(n);
        v[i] = Complex64::new(1.0, 0.0);
        for _ in 0..2 {
            for b in &basis {
                let c = b.dotc(&v);
                v -= b * c;
            }
        }
        let nv = v.norm();
        if nv > 1e-6 {
            v /= Complex64::new(nv, 0.0);
            basis.push(v.clone());
            out.push(v);
        }
        if out.len() == n - info.rank {
            break;
        }
    }
    (out, info)
}

/// Eigenvalue multiplicities of a diagonalisable operator whose spectrum is known
/// to be integral, by rank counting over the candidates `lo..=hi`. Returns
/// `(value, multiplicity)` for nonzero multiplicities, or `None` when the
/// multiplicities do not add up to the dimension.
pub fn integer_spectrum(m: &DMatrix<Complex64>, lo: i64, hi: i64) -> Option<Vec<(i64, usize)>> {
    let n = m.nrows();
    let mut out = Vec::new();
    let mut total = 0;
    for v in lo..=hi {
        let shifted = m - DMatrix::<Complex64>::identity(n, n) * Complex64::new(v as f64, 0.0);
        // absolute threshold scaled by the operator size, not by the shifted matrix
        let sv = shifted.singular_values();
        let scale = m.norm().max(1.0);
        let nullity = sv.iter().filter(|&&s| s < RANK_RTOL * scale).count();
        if nullity > 0 {
            out.push((v, nullity));
            total += nullity;
        }
    }
    (total == n).then_some(out)
}

/// Smallest eigenvalue of a real symmetric matrix.
pub fn min_symmetric_eigenvalue(m: &DMatrix<f64>) -> f64 {
    let sym = (m + m.transpose()) * 0.5;
    sym.symmetric_eigen().eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn rank_and_null_space() {
        let m = DMatrix::from_row_slice(3, 3, &[c(1.0), c(2.0), c(3.0), c(2.0), c(4.0), c(6.0), c(0.0), c(1.0), c(1.0)]);
        assert_eq!(complex_rank(&m).rank, 2);
        let (ns, _) = null_space(&m);
        assert_eq!(ns.len(), 1);
        assert!((&m * &ns[0]).norm() < 1e-12);
    }

    #[test]
    fn spectrum_by_rank_counting() {
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![c(2.0), c(0.0), c(-2.0), c(0.0)]));
        assert_eq!(integer_spectrum(&m, -3, 3).unwrap(), vec![(-2, 1), (0, 2), (2, 1)]);
        let bad = DMatrix::from_diagonal(&DVector::from_vec(vec![c(0.5)]));
        assert!(integer_spectrum(&bad, -1, 1).is_none());
    }
}
