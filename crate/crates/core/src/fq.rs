//! Row reduction over the prime field. `q = 2` systems are bit-packed, which is
//! what makes the large Loidreau key-recovery system cheap to eliminate.

use alloc::vec;
use alloc::vec::Vec;

pub(crate) fn inv_mod(a: u32, q: u32) -> u32 {
    debug_assert!(a % q != 0);
    let mut e = q as u64 - 2;
    let (mut base, mut acc) = (a as u64 % q as u64, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % q as u64;
        }
        base = base * base % q as u64;
        e >>= 1;
    }
    acc as u32
}

enum Store {
    Bits { words: usize, data: Vec<u64> },
    Dense(Vec<u32>),
}

/// Dense matrix over `F_q` used as an elimination workspace.
pub(crate) struct FqMat {
    q: u32,
    rows: usize,
    cols: usize,
    store: Store,
}

impl FqMat {
    pub fn zeros(q: u32, rows: usize, cols: usize) -> FqMat {
        let store = if q == 2 {
            let words = cols.div_ceil(64).max(1);
            Store::Bits { words, data: vec![0; rows * words] }
        } else {
            Store::Dense(vec![0; rows * cols])
        };
        FqMat { q, rows, cols, store }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        match &self.store {
            Store::Bits { words, data } => ((data[r * words + c / 64] >> (c % 64)) & 1) as u32,
            Store::Dense(d) => d[r * self.cols + c],
        }
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        let v = v % self.q;
        match &mut self.store {
            Store::Bits { words, data } => {
                let w = &mut data[r * *words + c / 64];
                let bit = 1u64 << (c % 64);
                if v == 1 {
                    *w |= bit;
                } else {
                    *w &= !bit;
                }
            }
            Store::Dense(d) => d[r * self.cols + c] = v,
        }
    }

    /// Reduced row echelon form, pivoting only in columns `< limit`.
    /// Rows are permuted in place so pivot row `i` sits at index `i`.
    pub fn reduce(&mut self, limit: usize) -> Vec<usize> {
        let limit = limit.min(self.cols);
        match &mut self.store {
            Store::Bits { words, data } => reduce_bits(data, self.rows, *words, limit),
            Store::Dense(d) => reduce_dense(d, self.rows, self.cols, self.q, limit),
        }
    }
}

fn reduce_bits(data: &mut [u64], rows: usize, words: usize, limit: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..limit {
        if rank == rows {
            break;
        }
        let w = col / 64;
        let bit = 1u64 << (col % 64);
        let Some(p) = (rank..rows).find(|&r| data[r * words + w] & bit != 0) else {
            continue;
        };
        if p != rank {
            for j in 0..words {
                data.swap(p * words + j, rank * words + j);
            }
        }
        let (head, tail) = data.split_at_mut(rank * words);
        let (pivot, rest) = tail.split_at_mut(words);
        let pivot = &pivot[w..];
        for r in 0..rank {
            let row = &mut head[r * words..(r + 1) * words];
            if row[w] & bit != 0 {
                row[w..].iter_mut().zip(pivot).for_each(|(a, b)| *a ^= b);
            }
        }
        for r in 0..rows - rank - 1 {
            let row = &mut rest[r * words..(r + 1) * words];
            if row[w] & bit != 0 {
                row[w..].iter_mut().zip(pivot).for_each(|(a, b)| *a ^= b);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    pivots
}

fn reduce_dense(d: &mut [u32], rows: usize, cols: usize, q: u32, limit: usize) -> Vec<usize> {
    let q64 = q as u64;
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..limit {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| d[r * cols + col] != 0) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                d.swap(p * cols + j, rank * cols + j);
            }
        }
        let inv = inv_mod(d[rank * cols + col], q) as u64;
        for j in col..cols {
            let e = &mut d[rank * cols + j];
            *e = (*e as u64 * inv % q64) as u32;
        }
        for r in 0..rows {
            if r == rank {
                continue;
            }
            let f = d[r * cols + col] as u64;
            if f == 0 {
                continue;
            }
            for j in col..cols {
                let sub = f * d[rank * cols + j] as u64 % q64;
                let e = &mut d[r * cols + j];
                *e = ((*e as u64 + q64 - sub) % q64) as u32;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    pivots
}

/// Solution set of an inhomogeneous system stored as `[A | b]` with `nvars`
/// unknown columns. Returns the particular solution (free variables zero)
/// and one kernel vector per free column, or `None` when inconsistent.
pub(crate) fn affine_solutions(mut aug: FqMat, nvars: usize) -> Option<(Vec<u32>, Vec<Vec<u32>>)> {
    let q = aug.q;
    let pivots = aug.reduce(nvars);
    let rank = pivots.len();
    for r in rank..aug.rows {
        if aug.get(r, nvars) != 0 {
            return None;
        }
    }
    let mut particular = vec![0u32; nvars];
    for (i, &p) in pivots.iter().enumerate() {
        particular[p] = aug.get(i, nvars);
    }
    let kernel = kernel_from_rref(&aug, &pivots, nvars, q);
    Some((particular, kernel))
}

/// Kernel basis of a matrix already in reduced row echelon form.
pub(crate) fn kernel_from_rref(mat: &FqMat, pivots: &[usize], nvars: usize, q: u32) -> Vec<Vec<u32>> {
    let mut is_pivot = vec![false; nvars];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..nvars)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![0u32; nvars];
            v[f] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                let c = mat.get(i, f);
                if c != 0 {
                    v[p] = (q - c) % q;
                }
            }
            v
        })
        .collect()
}
