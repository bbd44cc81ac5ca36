//! Matrices over the prime field `F_q`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::field::uniform_below;
use crate::fq::{kernel_from_rref, FqMat};

const SAMPLE_CAP: usize = 10_000;

/// Dense row-major matrix over `F_q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BaseMatrix {
    q: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for BaseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BaseMatrix(q={}, {}x{})", self.q, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl BaseMatrix {
    pub fn zeros(q: u32, rows: usize, cols: usize) -> BaseMatrix {
        BaseMatrix { q, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(q: u32, n: usize) -> BaseMatrix {
        let mut out = BaseMatrix::zeros(q, n, n);
        for i in 0..n {
            out.data[i * n + i] = 1;
        }
        out
    }

    /// Builds from row-major data, reducing entries modulo `q`.
    pub fn from_vec(q: u32, rows: usize, cols: usize, data: Vec<u32>) -> Result<BaseMatrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch);
        }
        let data = data.into_iter().map(|v| v % q).collect();
        Ok(BaseMatrix { q, rows, cols, data })
    }

    pub fn from_rows(q: u32, cols: usize, rows: &[Vec<u32>]) -> Result<BaseMatrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch);
            }
            data.extend(r.iter().map(|&v| v % q));
        }
        Ok(BaseMatrix { q, rows: rows.len(), cols, data })
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.q;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> BaseMatrix {
        let mut out = BaseMatrix::zeros(self.q, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c);
            }
        }
        out
    }

    pub fn mul(&self, rhs: &BaseMatrix) -> Result<BaseMatrix> {
        if self.cols != rhs.rows || self.q != rhs.q {
            return Err(Error::DimensionMismatch);
        }
        let q = self.q as u64;
        let mut out = BaseMatrix::zeros(self.q, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    let e = &mut out.data[r * rhs.cols + c];
                    *e = ((*e as u64 + a * rhs.get(k, c) as u64) % q) as u32;
                }
            }
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &BaseMatrix) -> Result<BaseMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch);
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(BaseMatrix { q: self.q, rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Block-diagonal `diag(self, other)`.
    pub fn block_diag(&self, other: &BaseMatrix) -> BaseMatrix {
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let mut out = BaseMatrix::zeros(self.q, rows, cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[r * cols + c] = self.get(r, c);
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.data[(self.rows + r) * cols + self.cols + c] = other.get(r, c);
            }
        }
        out
    }

    fn workspace(&self, extra_cols: usize) -> FqMat {
        let mut w = FqMat::zeros(self.q, self.rows, self.cols + extra_cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if v != 0 {
                    w.set(r, c, v);
                }
            }
        }
        w
    }

    pub fn rank(&self) -> usize {
        self.workspace(0).reduce(self.cols).len()
    }

    /// Reduced row echelon form with zero rows dropped, and the pivot columns.
    pub fn rref(&self) -> (BaseMatrix, Vec<usize>) {
        let mut w = self.workspace(0);
        let pivots = w.reduce(self.cols);
        let mut out = BaseMatrix::zeros(self.q, pivots.len(), self.cols);
        for r in 0..pivots.len() {
            for c in 0..self.cols {
                out.data[r * self.cols + c] = w.get(r, c);
            }
        }
        (out, pivots)
    }

    /// Basis `K` of the right kernel: `self · Kᵀ = 0`, one row per free column.
    pub fn right_kernel(&self) -> BaseMatrix {
        let mut w = self.workspace(0);
        let pivots = w.reduce(self.cols);
        let rows = kernel_from_rref(&w, &pivots, self.cols, self.q);
        BaseMatrix::from_rows(self.q, self.cols, &rows).expect("kernel rows have full length")
    }

    pub fn inverse(&self) -> Result<BaseMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch);
        }
        let n = self.rows;
        let mut w = self.workspace(n);
        for i in 0..n {
            w.set(i, n + i, 1);
        }
        if w.reduce(n).len() < n {
            return Err(Error::Singular);
        }
        let mut out = BaseMatrix::zeros(self.q, n, n);
        for r in 0..n {
            for c in 0..n {
                out.data[r * n + c] = w.get(r, n + c);
            }
        }
        Ok(out)
    }

    pub fn random<R: RngCore + ?Sized>(rng: &mut R, q: u32, rows: usize, cols: usize) -> BaseMatrix {
        let data = (0..rows * cols).map(|_| uniform_below(rng, q as u64) as u32).collect();
        BaseMatrix { q, rows, cols, data }
    }

    /// Uniform `rows × cols` matrix of rank `min(rows, cols)`, by rejection.
    pub fn random_full_rank<R: RngCore + ?Sized>(rng: &mut R, q: u32, rows: usize, cols: usize) -> Result<BaseMatrix> {
        for _ in 0..SAMPLE_CAP {
            let m = BaseMatrix::random(rng, q, rows, cols);
            if m.rank() == rows.min(cols) {
                return Ok(m);
            }
        }
        Err(Error::SamplingFailure)
    }

    pub fn random_invertible<R: RngCore + ?Sized>(rng: &mut R, q: u32, n: usize) -> Result<BaseMatrix> {
        BaseMatrix::random_full_rank(rng, q, n, n)
    }
}
