//! Small exact integer matrices (row-major `Vec<Vec<i64>>`).

pub type IntMatrix = Vec<Vec<i64>>;

pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
    vec![vec![0; cols]; rows]
}

pub fn identity(n: usize) -> IntMatrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

pub fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = zeros(n, m);
    for i in 0..n {
        for l in 0..k {
            let x = a[i][l];
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * b[l][j];
            }
        }
    }
    out
}

pub fn sub(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn scale(a: &IntMatrix, s: i64) -> IntMatrix {
    a.iter().map(|r| r.iter().map(|x| x * s).collect()).collect()
}

pub fn commutator(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    sub(&mul(a, b), &mul(b, a))
}

pub fn pow(a: &IntMatrix, e: u32) -> IntMatrix {
    let mut out = identity(a.len());
    for _ in 0..e {
        out = mul(&out, a);
    }
    out
}

/// Largest absolute entry.
pub fn max_abs(a: &IntMatrix) -> i64 {
    a.iter().flatten().map(|x| x.abs()).max().unwrap_or(0)
}

pub fn is_zero(a: &IntMatrix) -> bool {
    max_abs(a) == 0
}

pub fn is_diagonal(a: &IntMatrix) -> bool {
    a.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &x)| i == j || x == 0))
}

/// Exact rank by fraction-free (Bareiss) elimination in `i128`.
pub fn rank(a: &IntMatrix) -> usize {
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                m[r][c] = (m[rank][col] * m[r][c] - m[r][col] * m[rank][c]) / prev;
            }
            m[r][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        assert_eq!(rank(&identity(4)), 4);
        assert_eq!(rank(&zeros(3, 3)), 0);
        assert_eq!(rank(&vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]), 2);
        assert_eq!(rank(&vec![vec![0, 1], vec![0, 0]]), 1);
        assert_eq!(rank(&vec![vec![2, 4, 1], vec![6, 12, 3], vec![1, 1, 1]]), 2);
    }

    #[test]
    fn nilpotent_jordan_block() {
        let j = vec![vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]];
        assert_eq!(rank(&pow(&j, 2)), 1);
        assert!(is_zero(&pow(&j, 3)));
    }
}
