//! Dense linear algebra over `F_{q^m}`, row spaces, and the `F_q`-expansion
//! machinery (column rank, expansion of vectors, `F_q`-valued linear systems).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_core::RngCore;

use crate::base::BaseMatrix;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::fq::{affine_solutions, FqMat};

const SAMPLE_CAP: usize = 10_000;

/// Dense row-major matrix over `F_{q^m}`.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl fmt::Debug for ExtMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExtMatrix({}x{} over {:?})", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl ExtMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> ExtMatrix {
        ExtMatrix { field: field.clone(), rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> ExtMatrix {
        let mut out = ExtMatrix::zeros(field, n, n);
        for i in 0..n {
            out.data[i * n + i] = Fe::ONE;
        }
        out
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<Fe>) -> Result<ExtMatrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch);
        }
        if data.iter().any(|x| x.raw() >= field.size()) {
            return Err(Error::BadParams("matrix entry is not a canonical field element"));
        }
        Ok(ExtMatrix { field: field.clone(), rows, cols, data })
    }

    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<Fe>]) -> Result<ExtMatrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch);
            }
            data.extend_from_slice(r);
        }
        ExtMatrix::from_vec(field, rows.len(), cols, data)
    }

    /// A `1 × n` matrix.
    pub fn row_vector(field: &Field, v: &[Fe]) -> ExtMatrix {
        ExtMatrix { field: field.clone(), rows: 1, cols: v.len(), data: v.to_vec() }
    }

    /// Embeds a matrix over `F_q`.
    pub fn lift(field: &Field, b: &BaseMatrix) -> ExtMatrix {
        let data = b.data().iter().map(|&v| field.from_base(v)).collect();
        ExtMatrix { field: field.clone(), rows: b.rows(), cols: b.cols(), data }
    }

    /// Entries all in `F_q`, or `None`.
    pub fn to_base(&self) -> Option<BaseMatrix> {
        let data = self.data.iter().map(|&x| self.field.to_base(x)).collect::<Option<Vec<_>>>()?;
        BaseMatrix::from_vec(self.field.q(), self.rows, self.cols, data).ok()
    }

    pub fn random<R: RngCore + ?Sized>(rng: &mut R, field: &Field, rows: usize, cols: usize) -> ExtMatrix {
        let data = (0..rows * cols).map(|_| field.random(rng)).collect();
        ExtMatrix { field: field.clone(), rows, cols, data }
    }

    /// Uniform matrix of rank `min(rows, cols)`, by rejection.
    pub fn random_full_rank<R: RngCore + ?Sized>(
        rng: &mut R,
        field: &Field,
        rows: usize,
        cols: usize,
    ) -> Result<ExtMatrix> {
        for _ in 0..SAMPLE_CAP {
            let m = ExtMatrix::random(rng, field, rows, cols);
            if m.rank() == rows.min(cols) {
                return Ok(m);
            }
        }
        Err(Error::SamplingFailure)
    }

    pub fn random_invertible<R: RngCore + ?Sized>(rng: &mut R, field: &Field, n: usize) -> Result<ExtMatrix> {
        ExtMatrix::random_full_rank(rng, field, n, n)
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
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
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[Fe] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn check_same_shape(&self, other: &ExtMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols || self.field != other.field {
            return Err(Error::DimensionMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &ExtMatrix) -> Result<ExtMatrix> {
        self.check_same_shape(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(ExtMatrix { field: f.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &ExtMatrix) -> Result<ExtMatrix> {
        self.check_same_shape(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(ExtMatrix { field: f.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn mul(&self, rhs: &ExtMatrix) -> Result<ExtMatrix> {
        if self.cols != rhs.rows || self.field != rhs.field {
            return Err(Error::DimensionMismatch);
        }
        let f = &self.field;
        let mut out = ExtMatrix::zeros(f, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                let src = rhs.row(k);
                let dst = &mut out.data[r * rhs.cols..(r + 1) * rhs.cols];
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d = f.add(*d, f.mul(a, s));
                }
            }
        }
        Ok(out)
    }

    /// `self · B` for `B` over `F_q`.
    pub fn mul_base(&self, b: &BaseMatrix) -> Result<ExtMatrix> {
        if self.cols != b.rows() {
            return Err(Error::DimensionMismatch);
        }
        let f = &self.field;
        let mut out = ExtMatrix::zeros(f, self.rows, b.cols());
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..b.cols() {
                    let s = b.get(k, c);
                    if s != 0 {
                        let e = &mut out.data[r * b.cols() + c];
                        *e = f.add(*e, f.scale_base(s, a));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self · Hᵀ` for `H` over `F_q`.
    pub fn mul_base_t(&self, h: &BaseMatrix) -> Result<ExtMatrix> {
        self.mul_base(&h.transpose())
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Fe]) -> Result<Vec<Fe>> {
        Ok(ExtMatrix::row_vector(&self.field, v).mul(self)?.data)
    }

    pub fn transpose(&self) -> ExtMatrix {
        let mut out = ExtMatrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c);
            }
        }
        out
    }

    /// Coordinate-wise `x ↦ x^{q^i}`.
    pub fn frobenius(&self, i: i64) -> ExtMatrix {
        let f = &self.field;
        let data = self.data.iter().map(|&x| f.frobenius(x, i)).collect();
        ExtMatrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn select_columns(&self, cols: &[usize]) -> ExtMatrix {
        let mut out = ExtMatrix::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = self.get(r, c);
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> ExtMatrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        ExtMatrix { field: self.field.clone(), rows: rows.len(), cols: self.cols, data }
    }

    pub fn vstack(&self, other: &ExtMatrix) -> Result<ExtMatrix> {
        if self.cols != other.cols || self.field != other.field {
            return Err(Error::DimensionMismatch);
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(ExtMatrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn hstack(&self, other: &ExtMatrix) -> Result<ExtMatrix> {
        if self.rows != other.rows || self.field != other.field {
            return Err(Error::DimensionMismatch);
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(ExtMatrix { field: self.field.clone(), rows: self.rows, cols, data })
    }

    /// Reduced row echelon form with zero rows dropped, the pivot columns and the rank.
    /// Pivoting takes the leftmost column and the first nonzero row.
    pub fn rref(&self) -> (ExtMatrix, Vec<usize>, usize) {
        let mut data = self.data.clone();
        let pivots = rref_in_place(&self.field, &mut data, self.rows, self.cols, self.cols);
        let rank = pivots.len();
        data.truncate(rank * self.cols);
        (ExtMatrix { field: self.field.clone(), rows: rank, cols: self.cols, data }, pivots, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().2
    }

    /// Basis `K` with `self · Kᵀ = 0`.
    pub fn right_kernel(&self) -> ExtMatrix {
        let (r, pivots, _) = self.rref();
        kernel_from_ext_rref(&r, &pivots)
    }

    pub fn inverse(&self) -> Result<ExtMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch);
        }
        let n = self.rows;
        let aug = self.hstack(&ExtMatrix::identity(&self.field, n))?;
        let mut data = aug.data;
        let pivots = rref_in_place(&self.field, &mut data, n, 2 * n, n);
        if pivots.len() < n {
            return Err(Error::Singular);
        }
        let mut out = ExtMatrix::zeros(&self.field, n, n);
        for r in 0..n {
            out.data[r * n..(r + 1) * n].copy_from_slice(&data[r * 2 * n + n..(r + 1) * 2 * n]);
        }
        Ok(out)
    }

    /// The `(m·rows) × cols` expansion over `F_q` in the polynomial basis.
    fn expansion(&self) -> FqMat {
        let f = &self.field;
        let m = f.m() as usize;
        let mut w = FqMat::zeros(f.q(), m * self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let x = self.get(r, c);
                if x.is_zero() {
                    continue;
                }
                for (d, coef) in f.coeffs(x).into_iter().enumerate() {
                    if coef != 0 {
                        w.set(r * m + d, c, coef);
                    }
                }
            }
        }
        w
    }

    /// Dimension over `F_q` of the span of the columns.
    pub fn column_rank_base(&self) -> usize {
        self.expansion().reduce(self.cols).len()
    }

    /// Leftmost maximal set of `F_q`-independent columns.
    pub fn independent_columns_base(&self) -> Vec<usize> {
        self.expansion().reduce(self.cols)
    }
}

fn rref_in_place(field: &Field, data: &mut [Fe], rows: usize, cols: usize, limit: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..limit {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !data[r * cols + col].is_zero()) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                data.swap(p * cols + j, rank * cols + j);
            }
        }
        let inv = field.inv(data[rank * cols + col]).expect("pivot is nonzero");
        for j in col..cols {
            data[rank * cols + j] = field.mul(data[rank * cols + j], inv);
        }
        let pivot_row: Vec<Fe> = data[rank * cols + col..(rank + 1) * cols].to_vec();
        for r in 0..rows {
            if r == rank {
                continue;
            }
            let factor = data[r * cols + col];
            if factor.is_zero() {
                continue;
            }
            let row = &mut data[r * cols + col..(r + 1) * cols];
            for (e, &p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *e = field.sub(*e, field.mul(factor, p));
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    pivots
}

fn kernel_from_ext_rref(r: &ExtMatrix, pivots: &[usize]) -> ExtMatrix {
    let f = r.field();
    let n = r.cols();
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut out = ExtMatrix::zeros(f, free.len(), n);
    for (k, &fc) in free.iter().enumerate() {
        out.set(k, fc, Fe::ONE);
        for (i, &p) in pivots.iter().enumerate() {
            out.set(k, p, f.neg(r.get(i, fc)));
        }
    }
    out
}

/// The `F_{q^m}`-row space of a matrix, kept as a canonical RREF basis.
#[derive(Clone, PartialEq, Eq)]
pub struct RowSpace {
    basis: ExtMatrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for RowSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RowSpace(dim {} in length {}) ", self.dim(), self.len())?;
        self.basis.fmt(f)
    }
}

impl RowSpace {
    pub fn of(m: &ExtMatrix) -> RowSpace {
        let (basis, pivots, _) = m.rref();
        RowSpace { basis, pivots }
    }

    pub fn zero(field: &Field, len: usize) -> RowSpace {
        RowSpace { basis: ExtMatrix::zeros(field, 0, len), pivots: Vec::new() }
    }

    pub fn full(field: &Field, len: usize) -> RowSpace {
        RowSpace { basis: ExtMatrix::identity(field, len), pivots: (0..len).collect() }
    }

    pub fn basis(&self) -> &ExtMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Ambient length.
    pub fn len(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.dim() == 0
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    /// `⟨M⟩^{([i])}`; the Frobenius image of an RREF basis is again in RREF.
    pub fn frobenius(&self, i: i64) -> RowSpace {
        RowSpace { basis: self.basis.frobenius(i), pivots: self.pivots.clone() }
    }

    /// Rows spanning the dual: `basis · Hᵀ = 0`.
    pub fn parity_check(&self) -> ExtMatrix {
        kernel_from_ext_rref(&self.basis, &self.pivots)
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        let h = self.parity_check();
        h.vec_mul_t(v).iter().all(|x| x.is_zero())
    }

    pub fn contains_space(&self, other: &RowSpace) -> bool {
        (0..other.dim()).all(|r| self.contains(other.basis.row(r)))
    }

    /// Whether the RREF basis lies in `F_q^n`, i.e. the space is fixed by Frobenius.
    pub fn is_rational(&self) -> bool {
        self.basis.to_base().is_some()
    }

    pub fn sum(&self, other: &RowSpace) -> Result<RowSpace> {
        Ok(RowSpace::of(&self.basis.vstack(&other.basis)?))
    }

    /// `A ∩ B`, computed as the annihilator of the stacked duals.
    pub fn intersect(&self, other: &RowSpace) -> Result<RowSpace> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch);
        }
        let duals = self.parity_check().vstack(&other.parity_check())?;
        Ok(RowSpace::of(&duals.right_kernel()))
    }
}

impl ExtMatrix {
    /// `M · vᵀ` as a vector.
    fn vec_mul_t(&self, v: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(Fe::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect()
    }
}

/// `Σ_i ⟨spaces_i⟩` as an RREF row space.
pub fn sum_rowspaces(spaces: &[RowSpace]) -> Result<RowSpace> {
    let first = spaces.first().ok_or(Error::DimensionMismatch)?;
    let mut stacked = first.basis().clone();
    for s in &spaces[1..] {
        stacked = stacked.vstack(s.basis())?;
    }
    Ok(RowSpace::of(&stacked))
}

pub fn intersect_rowspaces(a: &RowSpace, b: &RowSpace) -> Result<RowSpace> {
    a.intersect(b)
}

/// Expands `x ∈ F_{q^m}^n` into the `m × n` coordinate matrix over `F_q`:
/// column `j` holds the coordinates of `x_j` in `basis`. Without a basis the
/// polynomial basis of the field is used.
pub fn expand_vector(field: &Field, x: &[Fe], basis: Option<&[Fe]>) -> Result<BaseMatrix> {
    let m = field.m() as usize;
    let q = field.q();
    let poly_coords = |v: Fe| field.coeffs(v);
    let mut out = BaseMatrix::zeros(q, m, x.len());
    match basis {
        None => {
            for (j, &v) in x.iter().enumerate() {
                for (d, c) in poly_coords(v).into_iter().enumerate() {
                    out.set(d, j, c);
                }
            }
        }
        Some(b) => {
            if b.len() != m {
                return Err(Error::BadBasis);
            }
            // columns of `change` are the basis elements in polynomial coordinates
            let mut change = BaseMatrix::zeros(q, m, m);
            for (i, &bi) in b.iter().enumerate() {
                for (d, c) in poly_coords(bi).into_iter().enumerate() {
                    change.set(d, i, c);
                }
            }
            let inv = change.inverse().map_err(|_| Error::BadBasis)?;
            let mut raw = BaseMatrix::zeros(q, m, x.len());
            for (j, &v) in x.iter().enumerate() {
                for (d, c) in poly_coords(v).into_iter().enumerate() {
                    raw.set(d, j, c);
                }
            }
            out = inv.mul(&raw)?;
        }
    }
    Ok(out)
}

/// Affine solution set `{particular + Σ λ_i kernel_i}` over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<u32>,
    /// One kernel basis vector per row.
    pub kernel: BaseMatrix,
}

/// Solves `Σ_j a_j · columns[j] = rhs` for unknowns `a_j ∈ F_q`, where the
/// coefficient columns and right-hand side live in `F_{q^m}^E`. Each of the
/// `E` equations expands into `m` equations over `F_q`.
pub fn solve_base_linear(field: &Field, columns: &[Vec<Fe>], rhs: &[Fe]) -> Result<AffineSolution> {
    let m = field.m() as usize;
    let eqs = rhs.len();
    let nvars = columns.len();
    if columns.iter().any(|c| c.len() != eqs) {
        return Err(Error::DimensionMismatch);
    }
    let mut aug = FqMat::zeros(field.q(), eqs * m, nvars + 1);
    let put = |col: usize, vals: &[Fe], aug: &mut FqMat| {
        for (e, &v) in vals.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            if field.q() == 2 {
                let mut bits = v.raw();
                while bits != 0 {
                    let d = bits.trailing_zeros() as usize;
                    aug.set(e * m + d, col, 1);
                    bits &= bits - 1;
                }
            } else {
                for (d, c) in field.coeffs(v).into_iter().enumerate() {
                    if c != 0 {
                        aug.set(e * m + d, col, c);
                    }
                }
            }
        }
    };
    for (j, col) in columns.iter().enumerate() {
        put(j, col, &mut aug);
    }
    put(nvars, rhs, &mut aug);
    let (particular, kernel) = affine_solutions(aug, nvars).ok_or(Error::Inconsistent)?;
    let kernel = BaseMatrix::from_rows(field.q(), nvars, &kernel)?;
    Ok(AffineSolution { particular, kernel })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, SeedableRng};

    fn f8() -> Field {
        Field::new(2, 3, Some(&[1, 1, 0, 1])).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f = f8();
        let id = ExtMatrix::identity(&f, 3);
        let (r, p, k) = id.rref();
        assert_eq!((r, p, k), (id.clone(), vec![0, 1, 2], 3));
        let (r, p, k) = ExtMatrix::zeros(&f, 2, 4).rref();
        assert_eq!((r.rows(), p.len(), k), (0, 0, 0));
        let a = f.generator();
        let dup = ExtMatrix::from_rows(&f, 2, &[vec![a, Fe::ONE], vec![a, Fe::ONE]]).unwrap();
        assert_eq!(dup.rank(), 1);
    }

    #[test]
    fn column_rank_examples() {
        let f = f8();
        assert_eq!(ExtMatrix::zeros(&f, 3, 3).column_rank_base(), 0);
        let mut rng = StdRng::seed_from_u64(1);
        let b = BaseMatrix::random(&mut rng, 2, 4, 6);
        assert_eq!(ExtMatrix::lift(&f, &b).column_rank_base(), b.rank());
        let a = f.generator();
        let x = vec![Fe::ONE, a, f.mul(a, a)];
        assert_eq!(ExtMatrix::row_vector(&f, &x).column_rank_base(), 3);
        assert_eq!(expand_vector(&f, &x, None).unwrap(), BaseMatrix::identity(2, 3));
    }

    #[test]
    fn expansion_is_basis_independent() {
        let f = Field::new(2, 6, None).unwrap();
        let mut rng = StdRng::seed_from_u64(2);
        let g = f.generator();
        // a normal-ish alternative basis: powers of (g + 1)
        let h = f.add(g, Fe::ONE);
        let alt: Vec<Fe> = (0..6).map(|i| f.pow(h, i)).collect();
        for _ in 0..50 {
            let x: Vec<Fe> = (0..5).map(|_| f.random(&mut rng)).collect();
            let r1 = expand_vector(&f, &x, None).unwrap().rank();
            let r2 = expand_vector(&f, &x, Some(&alt)).unwrap().rank();
            assert_eq!(r1, r2);
        }
        let dependent = vec![Fe::ONE; 6];
        assert_eq!(expand_vector(&f, &[Fe::ONE], Some(&dependent)), Err(Error::BadBasis));
    }

    #[test]
    fn solve_examples() {
        let f = f8();
        let s = solve_base_linear(&f, &[vec![Fe::ONE]], &[Fe::ZERO]).unwrap();
        assert_eq!(s.particular, vec![0]);
        assert_eq!(s.kernel.rows(), 0);
        let s = solve_base_linear(&f, &[vec![], vec![], vec![]], &[]).unwrap();
        assert_eq!(s.kernel.rows(), 3);
        let a = f.generator();
        let coef = f.sub(f.mul(a, a), a);
        let s = solve_base_linear(&f, &[vec![coef]], &[Fe::ZERO]).unwrap();
        assert_eq!((s.particular, s.kernel.rows()), (vec![0], 0));
        // a·1 = α has no F_2 solution
        assert_eq!(solve_base_linear(&f, &[vec![Fe::ONE]], &[a]), Err(Error::Inconsistent));
    }

    #[test]
    fn inverse_and_frobenius_commute() {
        let f = Field::new(2, 8, None).unwrap();
        let mut rng = StdRng::seed_from_u64(4);
        for _ in 0..100 {
            let m = ExtMatrix::random_invertible(&mut rng, &f, 5).unwrap();
            let lhs = m.inverse().unwrap().frobenius(1);
            let rhs = m.frobenius(1).inverse().unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(m.mul(&m.inverse().unwrap()).unwrap(), ExtMatrix::identity(&f, 5));
        }
    }

    #[test]
    fn intersection_dimension_formula() {
        let f = Field::new(2, 6, None).unwrap();
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..50 {
            let a = RowSpace::of(&ExtMatrix::random(&mut rng, &f, 3, 7));
            let b = RowSpace::of(&ExtMatrix::random(&mut rng, &f, 5, 7));
            let s = a.sum(&b).unwrap();
            let i = a.intersect(&b).unwrap();
            assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
            assert!(a.contains_space(&i) && b.contains_space(&i));
        }
        let a = RowSpace::of(&ExtMatrix::random(&mut rng, &f, 3, 7));
        assert_eq!(a.intersect(&a).unwrap(), a);
        let e1 = RowSpace::of(
            &ExtMatrix::lift(&f, &BaseMatrix::identity(2, 2).vstack(&BaseMatrix::zeros(2, 0, 2)).unwrap())
                .select_rows(&[0]),
        );
        let e2 = RowSpace::of(&ExtMatrix::lift(&f, &BaseMatrix::identity(2, 2)).select_rows(&[1]));
        assert_eq!(e1.intersect(&e2).unwrap().dim(), 0);
        assert_eq!(sum_rowspaces(core::slice::from_ref(&a)).unwrap(), a);
    }

    #[test]
    fn rational_spaces_are_frobenius_fixed() {
        let f = Field::new(2, 8, None).unwrap();
        let mut rng = StdRng::seed_from_u64(12);
        for _ in 0..100 {
            let rational = RowSpace::of(&ExtMatrix::lift(&f, &BaseMatrix::random(&mut rng, 2, 3, 6)));
            assert!(rational.is_rational());
            assert_eq!(rational.frobenius(1), rational);
            let generic = RowSpace::of(&ExtMatrix::random(&mut rng, &f, 3, 6));
            assert_eq!(generic.is_rational(), generic.frobenius(1) == generic);
        }
    }
}
