use alloc::string::String;
use alloc::vec::Vec;

use super::{decoder_through, frobenius_stack, transcript, AttackOutcome, FailureReason};
use crate::base::BaseMatrix;
use crate::crypto::PublicKey;
use crate::matrix::expand_vector;

/// Overbeck's attack on a GGPT key with extension depth `u`.
///
/// `G_ext` stacks `Ĝ_pub^{[0..=u]}`; its rank is `k + u + rank(X**)`. With
/// `X**` of full rank `t̂`, the right kernel of `G_ext` is `σ^{-1}`-supported on
/// the code coordinates, and the `F_q`-support of the kernel vectors cuts out
/// `S·G·B`.
pub fn overbeck_attack(public: &PublicKey, u: usize) -> AttackOutcome {
    if !public.scheme.is_ggpt() {
        return AttackOutcome::Failed(FailureReason::WrongScheme);
    }
    let field = public.field();
    let (n, k, t_hat) = (public.n, public.k, public.t);
    let len = public.length();
    if t_hat == 0 {
        let h = BaseMatrix::identity(field.q(), len);
        return match decoder_through(public, &h) {
            Ok(decoder) => transcript(public, 0, BaseMatrix::zeros(field.q(), 0, len), h, decoder, Vec::new()),
            Err(reason) => AttackOutcome::Failed(reason),
        };
    }
    if u == 0 || k + u > n {
        return AttackOutcome::Failed(FailureReason::ConditionViolated);
    }
    let g_ext = frobenius_stack(&public.g_pub, u + 1, 1);
    let rank = g_ext.rank();
    let x_star_star = rank.saturating_sub(k + u);
    let mut diagnostics =
        alloc::vec![(String::from("ext_rank"), rank), (String::from("x_star_star_rank"), x_star_star)];
    if x_star_star < t_hat {
        return AttackOutcome::Failed(FailureReason::XStarStarRankDeficient);
    }
    let kernel = g_ext.right_kernel();
    let mut support = BaseMatrix::zeros(field.q(), 0, len);
    for r in 0..kernel.rows() {
        let e = expand_vector(field, kernel.row(r), None).expect("polynomial basis");
        support = support.vstack(&e).expect("same width");
    }
    let support = support.rref().0;
    diagnostics.push((String::from("dual_support_dim"), support.rows()));
    if support.rows() != n {
        return AttackOutcome::Failed(FailureReason::ColumnSelectionFailed);
    }
    match decoder_through(public, &support) {
        Ok(decoder) => transcript(public, u, support.clone(), support, decoder, diagnostics),
        Err(reason) => AttackOutcome::Failed(reason),
    }
}
