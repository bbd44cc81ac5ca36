use rand_core::RngCore;

use crate::crypto::{loidreau_ell, sample_low_rank_matrix, sample_rank_vector};
use crate::error::Result;
use crate::field::Field;
use crate::matrix::ExtMatrix;
use crate::rank::{frobenius_sum_space, moore, rank_one_span};

/// One draw of the subcode-expansion event: for a random codimension-`a`
/// subcode `B = ⟨R·G⟩` of a random `Gab_{n,k}`, does
/// `Σ_{i<ℓ} B^{[i(k−a)]}` fill `F_{q^m}^n`?
pub fn assumption1_trial<R: RngCore + ?Sized>(
    rng: &mut R,
    field: &Field,
    n: usize,
    k: usize,
    a: usize,
) -> Result<bool> {
    let alpha = sample_rank_vector(rng, field, n, n)?;
    let g = moore(field, &alpha, k);
    let r = ExtMatrix::random_full_rank(rng, field, k - a, k)?;
    let b = r.mul(&g)?;
    let ell = loidreau_ell(n, k, a);
    Ok(frobenius_sum_space(&b, ell, k - a).dim() == n)
}

/// One draw of the no-rank-one event: for a random `X ∈ F_{q^m}^{k×t̂}` of rank
/// `a` and column rank `t̂`, is `Σ_{i<ℓ} ⟨X⟩^{[i(k−a)]}` free of rank-one elements?
pub fn assumption2_trial<R: RngCore + ?Sized>(
    rng: &mut R,
    field: &Field,
    n: usize,
    k: usize,
    a: usize,
    t_hat: usize,
) -> Result<bool> {
    let x = sample_low_rank_matrix(rng, field, k, t_hat, a)?;
    let ell = loidreau_ell(n, k, a);
    Ok(rank_one_span(&frobenius_sum_space(&x, ell, k - a)).rows() == 0)
}
