use super::fp::inv_mod;
use super::SparseMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Dense row-major matrix over F_p for small problems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseFp {
    pub p: u32,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u32>,
}

impl DenseFp {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        DenseFp { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v.rem_euclid(p as i64) as u32);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &DenseFp) -> DenseFp {
        assert_eq!(self.cols, other.rows);
        let p = self.p as u64;
        let mut out = DenseFp::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.get(k, j) as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> DenseFp {
        let mut t = DenseFp::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Appends the rows of `other` below `self`.
    pub fn stack(&mut self, other: &DenseFp) {
        assert_eq!(self.cols, other.cols);
        self.data.extend_from_slice(&other.data);
        self.rows += other.rows;
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p as u64;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(k) = (r..self.rows).find(|&k| self.get(k, c) != 0) else { continue };
            if k != r {
                for j in 0..self.cols {
                    self.data.swap(k * self.cols + j, r * self.cols + j);
                }
            }
            let s = inv_mod(self.get(r, c), self.p) as u64;
            for j in c..self.cols {
                let idx = r * self.cols + j;
                self.data[idx] = (self.data[idx] as u64 * s % p) as u32;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c) as u64;
                if f == 0 {
                    continue;
                }
                let neg = p - f;
                for j in c..self.cols {
                    let v = self.data[r * self.cols + j] as u64;
                    if v != 0 {
                        let idx = i * self.cols + j;
                        self.data[idx] = ((self.data[idx] as u64 + neg * v) % p) as u32;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : self x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        pivots.iter().for_each(|&c| is_pivot[c] = true);
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![0u32; self.cols];
            x[free] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                let v = m.get(r, free);
                x[c] = (p - v) % p;
            }
            out.push(x);
        }
        out
    }

    /// Some solution of `self x = b`, if one exists.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = DenseFp::zeros(self.p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols);
        }
        Some(x)
    }
}

/// Integral solution of `m x = b` by column Hermite reduction with a tracked transform.
pub(crate) fn solve_integral(m: &SparseMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let (nr, nc) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = (0..nc)
        .map(|c| {
            let mut col = vec![BigInt::zero(); nr];
            for &(r, v) in m.column(c) {
                col[r as usize] = BigInt::from(v);
            }
            col
        })
        .collect();
    let mut t: Vec<Vec<BigInt>> = (0..nc)
        .map(|c| {
            let mut col = vec![BigInt::zero(); nc];
            col[c] = BigInt::from(1);
            col
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut k = 0;
    for r in 0..nr {
        if k == nc {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for j in k..nc {
                if !a[j][r].is_zero() && best.is_none_or(|bj| a[j][r].abs() < a[bj][r].abs()) {
                    best = Some(j);
                }
            }
            let Some(bj) = best else { break };
            a.swap(k, bj);
            t.swap(k, bj);
            let mut clean = true;
            for j in k + 1..nc {
                if a[j][r].is_zero() {
                    continue;
                }
                let q = a[j][r].div_floor(&a[k][r]);
                let (lo, hi) = a.split_at_mut(j);
                for (x, y) in hi[0].iter_mut().zip(lo[k].iter()) {
                    *x -= &q * y;
                }
                let (lo, hi) = t.split_at_mut(j);
                for (x, y) in hi[0].iter_mut().zip(lo[k].iter()) {
                    *x -= &q * y;
                }
                if !a[j][r].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if k < nc && !a[k][r].is_zero() {
            pivots.push(r);
            k += 1;
        }
    }
    // a is now lower echelon: column c has pivot at row pivots[c] and zeros above it.
    let mut y = vec![BigInt::zero(); nc];
    for (c, &r) in pivots.iter().enumerate() {
        let mut rhs = b[r].clone();
        for (c2, yc) in y.iter().enumerate().take(c) {
            rhs -= &a[c2][r] * yc;
        }
        let (q, rem) = rhs.div_rem(&a[c][r]);
        if !rem.is_zero() {
            return None;
        }
        y[c] = q;
    }
    for r in 0..nr {
        let mut s = BigInt::zero();
        for c in 0..pivots.len() {
            s += &a[c][r] * &y[c];
        }
        if s != b[r] {
            return None;
        }
    }
    let mut x = vec![BigInt::zero(); nc];
    for c in 0..pivots.len() {
        if y[c].is_zero() {
            continue;
        }
        for (xi, ti) in x.iter_mut().zip(t[c].iter()) {
            *xi += ti * &y[c];
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Domain;

    #[test]
    fn kernel_and_solve() {
        let m = DenseFp::from_rows(3, &[vec![1, 2, 0], vec![2, 1, 0]]);
        // rows are proportional mod 3
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for x in &k {
            for i in 0..2 {
                let s: u64 = (0..3).map(|j| m.get(i, j) as u64 * x[j] as u64).sum();
                assert_eq!(s % 3, 0);
            }
        }
        assert!(m.solve(&[1, 2]).is_some());
        assert!(m.solve(&[1, 0]).is_none());
    }

    #[test]
    fn integral_solve_respects_lattice() {
        let m = SparseMatrix::from_dense(Domain::Integers, &[vec![2, 0], vec![0, 3]]).unwrap();
        let b = |v: [i64; 2]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(solve_integral(&m, &b([4, 9])), Some(b([2, 3])));
        assert_eq!(solve_integral(&m, &b([1, 0])), None);
        let m = SparseMatrix::from_dense(Domain::Integers, &[vec![2, 3]]).unwrap();
        let x = solve_integral(&m, &b([1, 0])[..1]).unwrap();
        assert_eq!(&x[0] * 2 + &x[1] * 3, BigInt::from(1));
    }
}
