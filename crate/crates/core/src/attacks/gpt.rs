use alloc::format;
use alloc::vec::Vec;

use super::{decoder_through, decrypt_with, transcript, AttackOutcome, FailureReason};
use crate::base::BaseMatrix;
use crate::crypto::{t_prime, Ciphertext, PublicKey, Scheme};
use crate::field::Fe;
use crate::rank::{frobenius_sum_space, rank_one_span};

/// Recovers a decoder for a GPT public key `S·G + X`.
///
/// For `s = 0, 1, …, t` the rank-one codewords of `Σ_{i≤s} ⟨G_pub⟩^{[i]}` give
/// a space `U` containing the support of the non-Moore part of `X`; projecting
/// onto its dual leaves a scrambled Gabidulin code.
pub fn gpt_break(public: &PublicKey) -> AttackOutcome {
    if public.scheme != Scheme::Gpt {
        return AttackOutcome::Failed(FailureReason::WrongScheme);
    }
    let (n, k) = (public.n, public.k);
    let tp = t_prime(n, k);
    let t = tp - public.error_budget;
    // d_min(G) = n−k+1 ≥ 2t′+1 ≥ s+t+2 for every s ≤ t
    debug_assert!(n - k + 1 >= 2 * t + 2);
    let mut diagnostics = Vec::new();
    let mut last = FailureReason::RankOneSpanEmpty;
    for s in 0..=t {
        let space = frobenius_sum_space(&public.g_pub, s + 1, 1);
        let u = rank_one_span(&space);
        diagnostics.push((format!("sum_dim[{s}]"), space.dim()));
        diagnostics.push((format!("rank_one_dim[{s}]"), u.rows()));
        if u.rows() > t {
            last = FailureReason::RankOneSpanEmpty;
            continue;
        }
        let h = if u.rows() == 0 { BaseMatrix::identity(public.field().q(), n) } else { u.right_kernel() };
        match decoder_through(public, &h) {
            Ok(decoder) => {
                diagnostics.push((format!("columns[{s}]"), decoder.columns.len()));
                return transcript(public, s, u, h, decoder, diagnostics);
            }
            Err(reason) => last = reason,
        }
    }
    AttackOutcome::Failed(last)
}

pub fn gpt_attack(public: &PublicKey, ct: &Ciphertext) -> (Option<Vec<Fe>>, AttackOutcome) {
    decrypt_with(gpt_break(public), ct)
}
