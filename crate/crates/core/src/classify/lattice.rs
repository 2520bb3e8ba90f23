//! Integer lattices (Hermite normal form) and subspace arithmetic over F_l.

use alloc::vec;
use alloc::vec::Vec;

/// Row-style Hermite normal form of the lattice spanned by `rows`: nonzero
/// rows only, strictly increasing pivot columns, positive pivots, and
/// entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let mut out_rows = 0;
    for col in 0..ncols {
        // Euclid down the column until a single nonzero entry remains.
        loop {
            let mut best: Option<usize> = None;
            for r in out_rows..m.len() {
                if m[r][col] != 0 && best.is_none_or(|b| m[r][col].abs() < m[b][col].abs()) {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            m.swap(out_rows, b);
            let mut done = true;
            for r in out_rows + 1..m.len() {
                if m[r][col] != 0 {
                    let q = m[r][col] / m[out_rows][col];
                    let (head, tail) = m.split_at_mut(r);
                    for (x, y) in tail[0][col..].iter_mut().zip(&head[out_rows][col..]) {
                        *x -= q * y;
                    }
                    if m[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if out_rows < m.len() && m[out_rows][col] != 0 {
            if m[out_rows][col] < 0 {
                m[out_rows].iter_mut().for_each(|v| *v = -*v);
            }
            let pivot = m[out_rows][col];
            let (above, rest) = m.split_at_mut(out_rows);
            for row in above {
                let q = row[col].div_euclid(pivot);
                if q != 0 {
                    for (x, y) in row[col..].iter_mut().zip(&rest[0][col..]) {
                        *x -= q * y;
                    }
                }
            }
            out_rows += 1;
        }
    }
    m.truncate(out_rows);
    m.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|v| i64::try_from(v).expect("HNF entry fits i64"))
                .collect()
        })
        .collect()
}

fn pivot_col(row: &[i64]) -> usize {
    row.iter().position(|&v| v != 0).expect("nonzero HNF row")
}

/// Membership of `v` in the lattice with Hermite basis `hnf`.
pub fn lattice_contains(hnf: &[Vec<i64>], v: &[i64]) -> bool {
    let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    for row in hnf {
        let p = pivot_col(row);
        let piv = row[p] as i128;
        if w[p] % piv != 0 {
            return false;
        }
        let q = w[p] / piv;
        for (wc, rc) in w.iter_mut().zip(row) {
            *wc -= q * *rc as i128;
        }
    }
    w.iter().all(|&x| x == 0)
}

/// Index `[Z^n : L]` when the lattice has full rank `n`.
pub fn lattice_index(hnf: &[Vec<i64>], n: usize) -> Option<u64> {
    if hnf.len() != n {
        return None;
    }
    hnf.iter().try_fold(1u64, |acc, row| {
        acc.checked_mul(row[pivot_col(row)].unsigned_abs())
    })
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime: a^(p-2)
    let (mut base, mut e, mut acc) = (a as u64 % p as u64, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

pub(crate) fn reduce_mod(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

/// A quotient `F_p^n / W` with a fixed complement: the coordinates at the
/// non-pivot columns of the reduced echelon basis of `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSpace {
    pub p: u32,
    pub n: usize,
    /// Reduced row echelon basis of `W`.
    pub echelon: Vec<Vec<u32>>,
    pub pivots: Vec<usize>,
    /// Columns that coordinatise the quotient.
    pub free_cols: Vec<usize>,
}

impl QuotientSpace {
    pub fn new(p: u32, n: usize, generators: &[Vec<u32>]) -> Self {
        let mut m: Vec<Vec<u32>> = generators
            .iter()
            .map(|r| r.iter().map(|&v| v % p).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(sel) = (row..m.len()).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(row, sel);
            let inv = inv_mod(m[row][col], p);
            m[row]
                .iter_mut()
                .for_each(|v| *v = (*v as u64 * inv as u64 % p as u64) as u32);
            let pivot_row = m[row].clone();
            for (r, other) in m.iter_mut().enumerate() {
                if r != row && other[col] != 0 {
                    let f = other[col] as u64;
                    for (x, &y) in other.iter_mut().zip(&pivot_row) {
                        let sub = f * y as u64 % p as u64;
                        *x = ((*x as u64 + p as u64 - sub) % p as u64) as u32;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        m.truncate(row);
        let free_cols = (0..n).filter(|c| !pivots.contains(c)).collect();
        QuotientSpace {
            p,
            n,
            echelon: m,
            pivots,
            free_cols,
        }
    }

    pub fn dim(&self) -> usize {
        self.free_cols.len()
    }

    /// Coordinates of the class of `v` in `F_p^dim`.
    pub fn project(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut w: Vec<u64> = v.iter().map(|&x| x as u64 % p).collect();
        for (row, &pc) in self.echelon.iter().zip(&self.pivots) {
            let f = w[pc];
            if f != 0 {
                for (wc, &rc) in w.iter_mut().zip(row) {
                    *wc = (*wc + p - f * rc as u64 % p) % p;
                }
            }
        }
        self.free_cols.iter().map(|&c| w[c] as u32).collect()
    }
}

/// Scales a nonzero vector so its first nonzero entry is 1: the canonical
/// generator of the line it spans.
pub fn normalize_line(v: &[u32], p: u32) -> Option<Vec<u32>> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = inv_mod(lead, p) as u64;
    Some(
        v.iter()
            .map(|&x| (x as u64 * inv % p as u64) as u32)
            .collect(),
    )
}

/// All `(p^k - 1)/(p - 1)` lines of `F_p^k`, by normalised generator, in
/// lexicographic order.
pub fn all_lines(p: u32, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for lead in 0..k {
        let tail = k - lead - 1;
        let count = (p as usize).pow(tail as u32);
        for idx in 0..count {
            let mut v = vec![0u32; k];
            v[lead] = 1;
            let mut rest = idx;
            for c in (lead + 1..k).rev() {
                v[c] = (rest % p as usize) as u32;
                rest /= p as usize;
            }
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_of_rank_two_image() {
        // rows (-1, 2), (2, 1) span <(1, 3), (0, 5)>
        let h = hermite_normal_form(&[vec![-1, 2], vec![2, 1]], 2);
        assert_eq!(h, vec![vec![1, 3], vec![0, 5]]);
        assert_eq!(lattice_index(&h, 2), Some(5));
        assert!(lattice_contains(&h, &[1, -2]));
        assert!(!lattice_contains(&h, &[1, 0]));
    }

    #[test]
    fn hnf_rank_deficient() {
        let h = hermite_normal_form(&[vec![2, 4], vec![1, 2], vec![0, 0]], 2);
        assert_eq!(h, vec![vec![1, 2]]);
        assert_eq!(lattice_index(&h, 2), None);
    }

    #[test]
    fn quotient_projection() {
        let q = QuotientSpace::new(5, 2, &[vec![1, 3]]);
        assert_eq!(q.dim(), 1);
        assert_eq!(q.project(&[1, 3]), vec![0]);
        assert_ne!(q.project(&[0, 1]), vec![0]);
    }

    #[test]
    fn line_counts() {
        assert_eq!(all_lines(5, 2).len(), 6);
        assert_eq!(all_lines(3, 3).len(), 13);
        assert_eq!(normalize_line(&[0, 2, 4], 5), Some(vec![0, 1, 2]));
        assert_eq!(normalize_line(&[0, 0], 5), None);
        assert_eq!(inv_mod(3, 7), 5);
    }
}
