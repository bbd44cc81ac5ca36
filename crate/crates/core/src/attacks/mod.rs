//! Structural attacks recovering a working decoder from a public key alone.

mod assumptions;
mod gpt;
mod loidreau;
mod overbeck;
mod sa;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::base::BaseMatrix;
use crate::crypto::{Ciphertext, PublicKey, Scheme};
use crate::error::{Error, Result};
use crate::field::Fe;
use crate::gabidulin::{recover_canonical, RecoveredDecoder};
use crate::matrix::ExtMatrix;

pub use assumptions::{assumption1_trial, assumption2_trial};
pub use gpt::{gpt_attack, gpt_break};
pub use loidreau::{loidreau_attack, loidreau_break};
pub use overbeck::overbeck_attack;
pub use sa::{sa_attack, sa_break};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FailureReason {
    RankOneSpanEmpty,
    ColumnSelectionFailed,
    AssumptionViolated,
    ConditionViolated,
    XStarStarRankDeficient,
    Inconsistent,
    CapacityTooSmall,
    DecodeFailure,
    WrongScheme,
}

impl FailureReason {
    pub fn tag(self) -> &'static str {
        match self {
            FailureReason::RankOneSpanEmpty => "RankOneSpanEmpty",
            FailureReason::ColumnSelectionFailed => "ColumnSelectionFailed",
            FailureReason::AssumptionViolated => "AssumptionViolated",
            FailureReason::ConditionViolated => "ConditionViolated",
            FailureReason::XStarStarRankDeficient => "XStarStarRankDeficient",
            FailureReason::Inconsistent => "Inconsistent",
            FailureReason::CapacityTooSmall => "CapacityTooSmall",
            FailureReason::DecodeFailure => "DecodeFailure",
            FailureReason::WrongScheme => "WrongScheme",
        }
    }
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Evidence chain of a successful break.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttackTranscript {
    pub scheme: Scheme,
    /// Frobenius depth (GPT, SA), `ℓ` (Loidreau) or `u` (Overbeck) that succeeded.
    pub s_used: usize,
    /// Recovered rank-one span, or the dual support for Overbeck's attack.
    pub u: BaseMatrix,
    /// Projection applied to ciphertexts before decoding: `y ↦ y·Hᵀ`.
    pub h: BaseMatrix,
    pub columns: Vec<usize>,
    pub decoder: RecoveredDecoder,
    pub diagnostics: Vec<(String, usize)>,
}

impl AttackTranscript {
    pub fn diagnostic(&self, key: &str) -> Option<usize> {
        self.diagnostics.iter().find(|(k, _)| k == key).map(|&(_, v)| v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AttackOutcome {
    Broken(alloc::boxed::Box<AttackTranscript>),
    Failed(FailureReason),
}

impl AttackOutcome {
    pub fn is_broken(&self) -> bool {
        matches!(self, AttackOutcome::Broken(_))
    }

    pub fn transcript(&self) -> Option<&AttackTranscript> {
        match self {
            AttackOutcome::Broken(t) => Some(t),
            AttackOutcome::Failed(_) => None,
        }
    }

    pub fn failure(&self) -> Option<FailureReason> {
        match self {
            AttackOutcome::Broken(_) => None,
            AttackOutcome::Failed(r) => Some(*r),
        }
    }
}

/// Decrypts with a recovered decoder, without redoing the structural work.
pub fn attack_decrypt(transcript: &AttackTranscript, ct: &Ciphertext) -> Result<Vec<Fe>> {
    if ct.y.len() != transcript.h.cols() {
        return Err(Error::DimensionMismatch);
    }
    let field = transcript.decoder.code.field();
    let projected = ExtMatrix::row_vector(field, &ct.y).mul_base_t(&transcript.h)?;
    transcript.decoder.decode(projected.row(0))
}

/// Message recovery for a broken key; decoding failures become `Failed`.
pub(crate) fn decrypt_with(outcome: AttackOutcome, ct: &Ciphertext) -> (Option<Vec<Fe>>, AttackOutcome) {
    match &outcome {
        AttackOutcome::Failed(_) => (None, outcome),
        AttackOutcome::Broken(t) => match attack_decrypt(t, ct) {
            Ok(msg) => (Some(msg), outcome),
            Err(_) => (None, AttackOutcome::Failed(FailureReason::DecodeFailure)),
        },
    }
}

/// Projects `G_pub` through `H`, recovers a decoder and checks it covers the
/// public error budget.
pub(crate) fn decoder_through(
    public: &PublicKey,
    h: &BaseMatrix,
) -> core::result::Result<RecoveredDecoder, FailureReason> {
    let projected = public.g_pub.mul_base_t(h).map_err(|_| FailureReason::ColumnSelectionFailed)?;
    let decoder = recover_canonical(&projected).map_err(|_| FailureReason::ColumnSelectionFailed)?;
    if decoder.error_capacity < public.error_budget {
        return Err(FailureReason::CapacityTooSmall);
    }
    Ok(decoder)
}

pub(crate) fn transcript(
    public: &PublicKey,
    s_used: usize,
    u: BaseMatrix,
    h: BaseMatrix,
    decoder: RecoveredDecoder,
    diagnostics: Vec<(String, usize)>,
) -> AttackOutcome {
    AttackOutcome::Broken(alloc::boxed::Box::new(AttackTranscript {
        scheme: public.scheme,
        s_used,
        u,
        h,
        columns: decoder.columns.clone(),
        decoder,
        diagnostics,
    }))
}

/// Rows `M, M^{[step]}, …, M^{[(count−1)·step]}` stacked.
pub(crate) fn frobenius_stack(m: &ExtMatrix, count: usize, step: usize) -> ExtMatrix {
    let mut out = m.clone();
    for i in 1..count {
        out = out.vstack(&m.frobenius((i * step) as i64)).expect("same width");
    }
    out
}
