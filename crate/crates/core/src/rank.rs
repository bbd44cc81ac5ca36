//! Rank weight, Moore matrices, Frobenius chains, Grassmann supports and the
//! rank-one codeword finder.

use alloc::vec::Vec;

use crate::base::BaseMatrix;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::matrix::{solve_base_linear, ExtMatrix, RowSpace};

/// Rank of the `m × n` expansion of `x` over `F_q`.
pub fn rank_weight(field: &Field, x: &[Fe]) -> usize {
    ExtMatrix::row_vector(field, x).column_rank_base()
}

/// Rank distance `rank_weight(x − y)`.
pub fn rank_distance(field: &Field, x: &[Fe], y: &[Fe]) -> usize {
    let diff: Vec<Fe> = x.iter().zip(y).map(|(&a, &b)| field.sub(a, b)).collect();
    rank_weight(field, &diff)
}

/// The `k × N` Moore matrix with rows `α^{[0]}, …, α^{[k−1]}`.
pub fn moore(field: &Field, alpha: &[Fe], k: usize) -> ExtMatrix {
    let n = alpha.len();
    let mut out = ExtMatrix::zeros(field, k, n);
    let mut row = alpha.to_vec();
    for i in 0..k {
        for (j, &v) in row.iter().enumerate() {
            out.set(i, j, v);
        }
        for v in row.iter_mut() {
            *v = field.frobenius(*v, 1);
        }
    }
    out
}

pub fn frobenius_shift(m: &ExtMatrix, i: i64) -> ExtMatrix {
    m.frobenius(i)
}

/// `Σ_{i<count} ⟨M⟩^{([i·step])}`.
///
/// Stops once a shift adds nothing: the partial sum is then invariant under
/// the `step`-th Frobenius power, so later shifts cannot enlarge it.
pub fn frobenius_sum_space(m: &ExtMatrix, count: usize, step: usize) -> RowSpace {
    let base = RowSpace::of(m);
    let mut acc = base.clone();
    for i in 1..count {
        let next = acc.sum(&base.frobenius((i * step) as i64)).expect("same ambient length");
        if next.dim() == acc.dim() {
            break;
        }
        acc = next;
    }
    acc
}

/// `supp_Gr(X)` as an RREF basis over `F_q`, with `s = colrk(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannSupport {
    pub u: BaseMatrix,
    pub s: usize,
}

pub fn grassmann_support(x: &ExtMatrix) -> Result<GrassmannSupport> {
    let q = x.field().q();
    let s = x.column_rank_base();
    if s == 0 {
        return Ok(GrassmannSupport { u: BaseMatrix::zeros(q, 0, x.cols()), s });
    }
    let space = frobenius_sum_space(x, s, 1);
    let u = space.basis().to_base().ok_or(Error::InternalInconsistency)?;
    if u.rows() != s {
        return Err(Error::InternalInconsistency);
    }
    Ok(GrassmannSupport { u, s })
}

/// `X = moore(X_1, k) + Z`, built from the first row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MooreDecomposition {
    pub generator: Vec<Fe>,
    pub moore_part: ExtMatrix,
    pub non_moore: ExtMatrix,
    /// Column rank of `non_moore`; an upper bound on the minimal one.
    pub s: usize,
}

pub fn moore_decompose_first_row(x: &ExtMatrix) -> Result<MooreDecomposition> {
    if x.rows() == 0 {
        return Err(Error::BadDims);
    }
    let generator = x.row(0).to_vec();
    let moore_part = moore(x.field(), &generator, x.rows());
    let non_moore = x.sub(&moore_part)?;
    let s = non_moore.column_rank_base();
    Ok(MooreDecomposition { generator, moore_part, non_moore, s })
}

/// `F_q`-rational codewords of `V`, as an RREF basis over `F_q`. Every rank-one
/// codeword is an `F_{q^m}`-multiple of an element of their span.
pub fn rank_one_span(v: &RowSpace) -> BaseMatrix {
    let field = v.field();
    let g = v.basis();
    let n = v.len();
    let columns: Vec<Vec<Fe>> =
        (0..g.rows()).map(|r| g.row(r).iter().map(|&x| field.sub(field.frobenius(x, 1), x)).collect()).collect();
    let rhs = alloc::vec![Fe::ZERO; n];
    let sol = solve_base_linear(field, &columns, &rhs).expect("homogeneous systems are consistent");
    let kernel = &sol.kernel;
    let mut words = BaseMatrix::zeros(field.q(), kernel.rows(), n);
    for i in 0..kernel.rows() {
        for j in 0..n {
            let mut acc = Fe::ZERO;
            for r in 0..g.rows() {
                let a = kernel.get(i, r);
                if a != 0 {
                    acc = field.add(acc, field.scale_base(a, g.get(r, j)));
                }
            }
            let c = field.to_base(acc).expect("kernel combinations are rational");
            words.set(i, j, c);
        }
    }
    words.rref().0
}
