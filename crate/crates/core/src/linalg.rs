//! Dense matrices over `F_p`: elimination, rank, kernels and powers.

use std::fmt;

use crate::error::{check_prime, Error, Result};
use crate::fppoly::{inv_mod, mul_mod, reduce_i64};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = FpMatrix::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing mod `p`.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        check_prime(p)?;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Argument("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&c| reduce_i64(c, p)).collect();
        Ok(FpMatrix { p, rows: rows.len(), cols, data })
    }

    /// Builds a `rows x cols` matrix from column vectors of residues.
    pub(crate) fn from_columns(p: u32, rows: usize, columns: &[Vec<u32>]) -> Self {
        let cols = columns.len();
        let mut m = FpMatrix::zeros(p, rows, cols);
        for (c, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (r, &v) in col.iter().enumerate() {
                m.data[r * cols + c] = v;
            }
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = reduce_i64(v, self.p);
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.p as u64;
        (0..self.rows)
            .map(|r| {
                let s = self.row(r).iter().zip(v).fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p);
                s as u32
            })
            .collect()
    }

    pub fn mul(&self, rhs: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != rhs.rows || self.p != rhs.p {
            return Err(Error::Argument(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let p = self.p as u64;
        let mut out = FpMatrix::zeros(self.p, self.rows, rhs.cols);
        let mut acc = vec![0u64; rhs.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for (k, &a) in self.row(r).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (slot, &b) in acc.iter_mut().zip(rhs.row(k)) {
                    *slot = (*slot + a as u64 * b as u64) % p;
                }
            }
            for (c, &v) in acc.iter().enumerate() {
                out.data[r * rhs.cols + c] = v as u32;
            }
        }
        Ok(out)
    }

    /// Row echelon form in place; returns the pivot columns. When `reduced`
    /// is set, entries above pivots are cleared as well.
    fn eliminate(&mut self, reduced: bool) -> Vec<usize> {
        let (p, cols) = (self.p, self.cols);
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..cols {
            if rank == self.rows {
                break;
            }
            let Some(piv) = (rank..self.rows).find(|&r| self.data[r * cols + c] != 0) else {
                continue;
            };
            if piv != rank {
                for k in c..cols {
                    self.data.swap(piv * cols + k, rank * cols + k);
                }
            }
            let inv = inv_mod(self.data[rank * cols + c], p);
            for v in &mut self.data[rank * cols + c..(rank + 1) * cols] {
                *v = mul_mod(*v, inv, p);
            }
            let (head, tail) = self.data.split_at_mut(rank * cols);
            let (pivot_row, below) = tail.split_at_mut(cols);
            let pivot_row = &pivot_row[c..];
            let clear = |row: &mut [u32]| {
                let factor = row[c];
                if factor != 0 {
                    let neg = p - factor;
                    for (v, &pv) in row[c..].iter_mut().zip(pivot_row) {
                        if pv != 0 {
                            *v = (*v + neg * pv) % p;
                        }
                    }
                }
            };
            below.chunks_mut(cols).for_each(clear);
            if reduced {
                head.chunks_mut(cols).for_each(clear);
            }
            pivots.push(c);
            rank += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate(false).len()
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(u32::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// `(rank, nullity)` with `rank + nullity = cols`.
pub fn rank_nullity(m: &FpMatrix) -> (usize, usize) {
    let rank = m.rank();
    (rank, m.cols - rank)
}

/// A basis of the right kernel `{v : m v = 0}`.
pub fn kernel_basis(m: &FpMatrix) -> Vec<Vec<u32>> {
    let mut e = m.clone();
    let pivots = e.eliminate(true);
    let p = m.p;
    let mut is_pivot = vec![false; m.cols];
    pivots.iter().for_each(|&c| is_pivot[c] = true);
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0u32; m.cols];
            v[free] = 1 % p;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - e.get(r, free)) % p;
            }
            v
        })
        .collect()
}

/// `m^e` by repeated squaring; `m^0` is the identity.
pub fn mat_pow(m: &FpMatrix, mut e: u64) -> Result<FpMatrix> {
    if m.rows != m.cols {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    let mut acc = FpMatrix::identity(m.p, m.rows);
    let mut base = m.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base)?;
        }
        e >>= 1;
        if e > 0 {
            if base.is_zero() {
                return Ok(FpMatrix::zeros(m.p, m.rows, m.cols));
            }
            base = base.mul(&base)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(p: u32, rows: &[&[i64]]) -> FpMatrix {
        FpMatrix::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_nullity(&FpMatrix::identity(5, 3)), (3, 0));
        assert_eq!(rank_nullity(&FpMatrix::zeros(3, 2, 4)), (0, 4));
        assert_eq!(rank_nullity(&mat(5, &[&[1, 2], &[2, 4]])), (1, 1));
        assert_eq!(rank_nullity(&FpMatrix::zeros(3, 0, 1)), (0, 1));
        assert_eq!(rank_nullity(&FpMatrix::zeros(3, 2, 0)), (0, 0));
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&FpMatrix::identity(3, 3)).is_empty());
        assert_eq!(kernel_basis(&FpMatrix::zeros(3, 1, 2)).len(), 2);
        let m = mat(5, &[&[1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert!(k[0].iter().any(|&v| v != 0));
        assert!(m.mul_vec(&k[0]).iter().all(|&v| v == 0));
    }

    #[test]
    fn power_examples() {
        let id = FpMatrix::identity(5, 4);
        assert_eq!(mat_pow(&id, 7).unwrap(), id);
        let m = mat(3, &[&[0, 1], &[0, 0]]);
        assert_eq!(mat_pow(&m, 0).unwrap(), FpMatrix::identity(3, 2));
        assert_eq!(mat_pow(&m, 2).unwrap(), FpMatrix::zeros(3, 2, 2));
        assert!(matches!(mat_pow(&FpMatrix::zeros(3, 2, 3), 2), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn rank_over_small_field_depends_on_p() {
        // determinant 3 vanishes mod 3 only
        let rows: &[&[i64]] = &[&[1, 1], &[1, 4]];
        assert_eq!(mat(3, rows).rank(), 1);
        assert_eq!(mat(5, rows).rank(), 2);
    }
}
