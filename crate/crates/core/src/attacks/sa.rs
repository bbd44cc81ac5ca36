use alloc::format;
use alloc::vec::Vec;

use super::{decoder_through, decrypt_with, transcript, AttackOutcome, FailureReason};
use crate::base::BaseMatrix;
use crate::crypto::{Ciphertext, PublicKey};
use crate::field::Fe;
use crate::rank::{frobenius_sum_space, rank_one_span};

/// Smart Approach break: the rank-one codewords of `Σ_{i ≤ t̂−a} ⟨Ĝ_pub⟩^{[i]}`
/// span the support of `[Z | 0]σ`. With `a` unknown, depths `t̂ − a` are tried
/// from 0 upward.
pub fn sa_break(public: &PublicKey, a: Option<usize>) -> AttackOutcome {
    if !public.scheme.is_ggpt() {
        return AttackOutcome::Failed(FailureReason::WrongScheme);
    }
    let t_hat = public.t;
    let len = public.length();
    let depths: Vec<usize> = match a {
        Some(a) if a <= t_hat => alloc::vec![t_hat - a],
        Some(_) => return AttackOutcome::Failed(FailureReason::ConditionViolated),
        None => (0..=t_hat).collect(),
    };
    let mut diagnostics = Vec::new();
    let mut last = FailureReason::ConditionViolated;
    for depth in depths {
        let space = frobenius_sum_space(&public.g_pub, depth + 1, 1);
        let u = rank_one_span(&space);
        diagnostics.push((format!("sum_dim[{depth}]"), space.dim()));
        diagnostics.push((format!("rank_one_dim[{depth}]"), u.rows()));
        if u.rows() > depth {
            last = FailureReason::ConditionViolated;
            continue;
        }
        let h = if u.rows() == 0 { BaseMatrix::identity(public.field().q(), len) } else { u.right_kernel() };
        match decoder_through(public, &h) {
            Ok(decoder) => return transcript(public, depth, u, h, decoder, diagnostics),
            Err(reason) => last = reason,
        }
    }
    AttackOutcome::Failed(last)
}

pub fn sa_attack(public: &PublicKey, a: Option<usize>, ct: &Ciphertext) -> (Option<Vec<Fe>>, AttackOutcome) {
    decrypt_with(sa_break(public, a), ct)
}
