//! Root systems of the simple complex Lie algebras.
//!
//! Cartan matrices follow Bourbaki numbering with the convention
//! `a[i][j] = <alpha_j, alpha_i^vee> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)`,
//! so that `[h_i, e_j] = a[i][j] e_j`. In `B_n` the last simple root is short,
//! in `C_n` it is long, in `F_4` roots 3 and 4 are short and in `G_2` the first
//! simple root is short. `E_n` uses the chain `1-3-4-5-6(-7-8)` with node 2
//! attached to node 4.
//!
//! Roots are integer coordinate vectors in the basis of simple roots. Positive
//! roots are ordered by height, and within one height by descending
//! lexicographic order of the coordinates, so the simple roots come out as
//! `alpha_1, ..., alpha_r` at indices `0..r`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error(
        "invalid simple type {series}{rank}: valid types are A_n (n>=1), B_n (n>=2), \
         C_n (n>=3), D_n (n>=4), E_6, E_7, E_8, F_4, G_2"
    )]
    InvalidType { series: Series, rank: usize },
    #[error("cannot parse algebra label {0:?} (expected e.g. A2, G2, E8)")]
    BadLabel(String),
    #[error("root string undefined for a = +-b")]
    ProportionalRoots,
    #[error("vector {0:?} is not a root")]
    NotARoot(Vec<i64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Series::A => "A",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
            Series::E => "E",
            Series::F => "F",
            Series::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for Series {
    type Err = RootSystemError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            "E" => Ok(Series::E),
            "F" => Ok(Series::F),
            "G" => Ok(Series::G),
            _ => Err(RootSystemError::BadLabel(s.to_string())),
        }
    }
}

/// A simple type such as `A2` or `E8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleType {
    pub series: Series,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(series: Series, rank: usize) -> Result<Self, RootSystemError> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B => rank >= 2,
            Series::C => rank >= 3,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { series, rank })
        } else {
            Err(RootSystemError::InvalidType { series, rank })
        }
    }

    /// Number of positive roots, from the classification.
    pub fn known_positive_count(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * (n + 1) / 2,
            Series::B | Series::C => n * n,
            Series::D => n * (n - 1),
            Series::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Series::F => 24,
            Series::G => 6,
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = RootSystemError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(|| RootSystemError::BadLabel(s.into()))?;
        let rest: String = chars.filter(|c| *c != '_').collect();
        let series: Series = head.to_string().parse().map_err(|_| RootSystemError::BadLabel(s.into()))?;
        let rank: usize = rest.parse().map_err(|_| RootSystemError::BadLabel(s.into()))?;
        SimpleType::new(series, rank)
    }
}

/// Cartan matrix in the convention documented at the module level.
pub fn cartan_matrix(ty: SimpleType) -> Vec<Vec<i64>> {
    let n = ty.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match ty.series {
        Series::A => {
            for i in 0..n.saturating_sub(1) {
                link(i, i + 1, -1, -1);
            }
        }
        Series::B => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            link(n - 2, n - 1, -1, -2);
        }
        Series::C => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            link(n - 2, n - 1, -2, -1);
        }
        Series::D => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            link(n - 3, n - 1, -1, -1);
        }
        Series::E => {
            link(0, 2, -1, -1);
            link(2, 3, -1, -1);
            link(1, 3, -1, -1);
            for i in 3..n - 1 {
                link(i, i + 1, -1, -1);
            }
        }
        Series::F => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        Series::G => {
            link(0, 1, -3, -1);
        }
    }
    a
}

/// Root data for one simple type.
#[derive(Debug, Clone)]
pub struct RootSystem {
    ty: SimpleType,
    cartan: Vec<Vec<i64>>,
    /// `(alpha_i, alpha_i)` in the smallest integer normalisation (short roots 2).
    simple_norms: Vec<i64>,
    positive: Vec<Vec<i64>>,
    lookup: HashMap<Vec<i64>, usize>,
    highest: usize,
}

/// A root given by a positive root index and a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedRoot {
    pub index: usize,
    pub positive: bool,
}

impl RootSystem {
    pub fn new(series: Series, rank: usize) -> Result<Self, RootSystemError> {
        Ok(Self::from_type(SimpleType::new(series, rank)?))
    }

    pub fn from_type(ty: SimpleType) -> Self {
        let cartan = cartan_matrix(ty);
        let simple_norms = symmetrizer(&cartan);
        let r = ty.rank;

        // Layer-by-layer closure with the string condition: for a root b and a
        // simple root a_i, b + a_i is a root iff q > 0 where q = p - <b, a_i^vee>
        // and p is read off the (already complete) lower layers.
        let mut lookup: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut positive: Vec<Vec<i64>> = Vec::new();
        let mut layer: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                let mut v = vec![0; r];
                v[i] = 1;
                v
            })
            .collect();
        while !layer.is_empty() {
            layer.sort_by(|a, b| b.cmp(a));
            layer.dedup();
            for root in &layer {
                lookup.insert(root.clone(), positive.len());
                positive.push(root.clone());
            }
            let mut next = Vec::new();
            for root in &layer {
                for i in 0..r {
                    let mut down = root.clone();
                    let mut p = 0i64;
                    loop {
                        down[i] -= 1;
                        if lookup.contains_key(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pair: i64 = (0..r).map(|j| root[j] * cartan[i][j]).sum();
                    if p - pair > 0 {
                        let mut up = root.clone();
                        up[i] += 1;
                        next.push(up);
                    }
                }
            }
            layer = next;
        }

        let highest = (0..positive.len())
            .filter(|&k| {
                (0..r).all(|i| {
                    let mut up = positive[k].clone();
                    up[i] += 1;
                    !lookup.contains_key(&up)
                })
            })
            .collect::<Vec<_>>();
        assert_eq!(highest.len(), 1, "simple root system must have a unique highest root");
        assert_eq!(positive.len(), ty.known_positive_count(), "root count mismatch for {ty}");

        RootSystem {
            ty,
            cartan,
            simple_norms,
            positive,
            lookup,
            highest: highest[0],
        }
    }

    pub fn simple_type(&self) -> SimpleType {
        self.ty
    }

    pub fn series(&self) -> Series {
        self.ty.series
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn root(&self, index: usize) -> &[i64] {
        &self.positive[index]
    }

    pub fn height(&self, index: usize) -> i64 {
        self.positive[index].iter().sum()
    }

    /// Index of the highest root, as found during construction.
    pub fn highest_root_index(&self) -> usize {
        self.highest
    }

    /// Looks up a (possibly negative) root.
    pub fn find(&self, v: &[i64]) -> Option<SignedRoot> {
        if let Some(&index) = self.lookup.get(v) {
            return Some(SignedRoot { index, positive: true });
        }
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        self.lookup.get(&neg).map(|&index| SignedRoot { index, positive: false })
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        self.find(v).is_some()
    }

    pub fn positive_index(&self, v: &[i64]) -> Option<usize> {
        self.lookup.get(v).copied()
    }

    /// Squared lengths of the simple roots.
    pub fn simple_norms(&self) -> &[i64] {
        &self.simple_norms
    }

    /// The invariant inner product `(a, b)`, normalised so the shortest roots have
    /// squared length 2.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let r = self.rank();
        let mut s = 0;
        for i in 0..r {
            if a[i] == 0 {
                continue;
            }
            for j in 0..r {
                // (alpha_i, alpha_j) = d_i a_ij with d_i = (alpha_i, alpha_i)/2
                s += a[i] * b[j] * self.simple_norms[i] * self.cartan[i][j];
            }
        }
        s / 2
    }

    /// `<b, a^vee> = 2 (b, a) / (a, a)`.
    pub fn cartan_pairing(&self, b: &[i64], a: &[i64]) -> i64 {
        let num = 2 * self.inner(b, a);
        let den = self.inner(a, a);
        debug_assert_eq!(num % den, 0);
        num / den
    }

    /// Value of the root `beta` on the simple coroot `h_i`.
    pub fn eval_on_coroot(&self, beta: &[i64], i: usize) -> i64 {
        (0..self.rank()).map(|j| beta[j] * self.cartan[i][j]).sum()
    }

    /// Coefficients of the coroot `beta^vee` in the basis of simple coroots.
    pub fn coroot_coefficients(&self, beta: &[i64]) -> Vec<i64> {
        let bb = self.inner(beta, beta);
        beta.iter()
            .zip(&self.simple_norms)
            .map(|(k, n)| {
                debug_assert_eq!((k * n) % bb, 0);
                k * n / bb
            })
            .collect()
    }

    /// `(p, q)` with `b - p a, ..., b + q a` the `a`-string through `b`.
    pub fn root_string(&self, a: &[i64], b: &[i64]) -> Result<(i64, i64), RootSystemError> {
        if !self.is_root(a) {
            return Err(RootSystemError::NotARoot(a.to_vec()));
        }
        if !self.is_root(b) {
            return Err(RootSystemError::NotARoot(b.to_vec()));
        }
        let neg: Vec<i64> = a.iter().map(|x| -x).collect();
        if a == b || neg == b {
            return Err(RootSystemError::ProportionalRoots);
        }
        let walk = |sign: i64| {
            let mut k = 0;
            loop {
                let v: Vec<i64> = b.iter().zip(a).map(|(bi, ai)| bi + sign * (k + 1) * ai).collect();
                if self.is_root(&v) {
                    k += 1;
                } else {
                    return k;
                }
            }
        };
        Ok((walk(-1), walk(1)))
    }

    /// Simple reflection `s_a(b) = b - <b, a^vee> a`.
    pub fn reflect(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let c = self.cartan_pairing(b, a);
        b.iter().zip(a).map(|(bi, ai)| bi - c * ai).collect()
    }

    /// All roots, positive first then their negatives.
    pub fn all_roots(&self) -> Vec<Vec<i64>> {
        let mut v = self.positive.clone();
        v.extend(self.positive.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        v
    }
}

/// Brute-force highest root: the unique positive root `theta` with `theta + beta`
/// not a root for every positive `beta`.
pub fn highest_root(rs: &RootSystem) -> usize {
    let found: Vec<usize> = (0..rs.num_positive())
        .filter(|&k| {
            rs.positive_roots().iter().all(|b| {
                let s: Vec<i64> = rs.root(k).iter().zip(b).map(|(x, y)| x + y).collect();
                !rs.is_root(&s)
            })
        })
        .collect();
    assert_eq!(found.len(), 1);
    debug_assert_eq!(found[0], rs.highest_root_index());
    found[0]
}

/// Squared lengths `(alpha_i, alpha_i)` making `d_i a_ij` symmetric, scaled to the
/// smallest positive integers.
fn symmetrizer(cartan: &[Vec<i64>]) -> Vec<i64> {
    let n = cartan.len();
    // rational d_i as (num, den), propagated along the (connected) Dynkin diagram
    let mut d: Vec<Option<(i64, i64)>> = vec![None; n];
    d[0] = Some((1, 1));
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        let (ni, di) = d[i].unwrap();
        for j in 0..n {
            if i != j && cartan[i][j] != 0 && d[j].is_none() {
                // d_j = d_i a_ij / a_ji
                let num = ni * cartan[i][j];
                let den = di * cartan[j][i];
                let g = gcd(num.abs(), den.abs());
                let (num, den) = if den < 0 { (-num / g, -den / g) } else { (num / g, den / g) };
                d[j] = Some((num, den));
                stack.push(j);
            }
        }
    }
    let d: Vec<(i64, i64)> = d.into_iter().map(|x| x.expect("Dynkin diagram is connected")).collect();
    let lcm_den = d.iter().fold(1, |acc, &(_, den)| acc / gcd(acc, den) * den);
    let ints: Vec<i64> = d.iter().map(|&(num, den)| num * lcm_den / den).collect();
    let g = ints.iter().fold(0, |acc, &x| gcd(acc, x));
    ints.iter().map(|x| 2 * x / g).collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}
