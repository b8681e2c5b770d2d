//! Small dense linear algebra over a prime field.

use crate::error::{GroupError, Result};

/// Square or rectangular matrix over `F_p`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    // p prime, a != 0
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

impl FpMatrix {
    pub fn new(p: u64, rows: Vec<Vec<u64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(GroupError::InvalidArgument("ragged matrix".into()));
        }
        Ok(FpMatrix {
            p,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().map(|x| x % p).collect(),
        })
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        FpMatrix {
            p,
            rows: n,
            cols: n,
            data,
        }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.cols];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = (*o + vi * self.get(i, j)) % self.p;
            }
        }
        out
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        let mut data = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let d = &mut data[i * other.cols + j];
                    *d = (*d + a * other.get(k, j)) % self.p;
                }
            }
        }
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<u64>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        Subspace::span(self.p, self.cols, &rows).dim()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// A subspace of `F_p^n` in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub p: u64,
    pub n: usize,
    /// Echelon rows with pivot entry 1; pivots strictly increasing.
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u64, n: usize) -> Self {
        Subspace {
            p,
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn span(p: u64, n: usize, vectors: &[Vec<u64>]) -> Self {
        let mut s = Self::zero(p, n);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` modulo the subspace; the result has zeros in pivot columns.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut w: Vec<u64> = v.iter().map(|x| x % p).collect();
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = w[piv];
            if c != 0 {
                for (wi, ri) in w.iter_mut().zip(row) {
                    *wi = (*wi + (p - c) * ri) % p;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds a vector; returns true if the dimension grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let p = self.p;
        let mut w = self.reduce(v);
        let Some(piv) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(w[piv], p);
        for x in w.iter_mut() {
            *x = *x * inv % p;
        }
        // clear the new pivot column from existing rows
        for row in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                for (ri, wi) in row.iter_mut().zip(&w) {
                    *ri = (*ri + (p - c) * wi) % p;
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < piv);
        self.rows.insert(pos, w);
        self.pivots.insert(pos, piv);
        true
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Coordinates of the quotient `F_p^n / self`: the non-pivot columns.
    pub fn complement_columns(&self) -> Vec<usize> {
        (0..self.n).filter(|c| !self.pivots.contains(c)).collect()
    }
}

/// Enumerates every vector of `F_p^n` in lexicographic order (last coordinate fastest).
pub fn all_vectors(p: u64, n: usize) -> Vec<Vec<u64>> {
    let total = (p as usize).pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut v = vec![0u64; n];
            for i in (0..n).rev() {
                v[i] = (idx % p as usize) as u64;
                idx /= p as usize;
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_invertibility() {
        let m = FpMatrix::new(2, vec![vec![1, 1], vec![0, 1]]).unwrap();
        assert!(m.is_invertible());
        let s = FpMatrix::new(3, vec![vec![1, 2], vec![2, 1]]).unwrap();
        // rows are proportional mod 3
        assert!(!s.is_invertible());
    }

    #[test]
    fn subspace_reduce() {
        let mut s = Subspace::zero(3, 3);
        assert!(s.insert(&[1, 1, 0]));
        assert!(s.insert(&[0, 1, 1]));
        assert!(!s.insert(&[1, 2, 1]));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[2, 0, 1]));
        assert_eq!(s.complement_columns().len(), 1);
    }
}
