use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{decoder_through, decrypt_with, frobenius_stack, transcript, AttackOutcome, FailureReason};
use crate::base::BaseMatrix;
use crate::crypto::{loidreau_ell, Ciphertext, PublicKey};
use crate::field::{Fe, Field};
use crate::matrix::{solve_base_linear, ExtMatrix, RowSpace};
use crate::rank::{moore, rank_one_span};

const EXTRA_ELL: usize = 2;

/// Break of Loidreau's GGPT variant `S[X | G]σ` with `rank(X) = a`.
///
/// 1. Rank-one codewords of `Σ_{i<ℓ} ⟨Ĝ⟩^{[i(k−a)]}` span `⟨[0 | I_n]σ⟩`; its
///    dual `H_U` gives `W = Ĝ·H_Uᵀ = S·X·A`.
/// 2. Messages with `mW = 0` encode into a codimension-`a` subcode of the hidden
///    Gabidulin code `C = ⟨[0 | G]σ⟩`, from which `C` itself is rebuilt.
/// 3. `V ∈ F_q^{t̂×(n+t̂)}` is solved from `(Ĝ − W·V)·H_Uᵀ = 0` together with
///    `(Ĝ − W·V)·Pᵀ = 0` for a parity check `P` of `C`. The first family alone
///    only pins down `V·H_Uᵀ = I`.
/// 4. The dual `H_V` of `V` maps `Ĝ` onto `S·G·B`.
pub fn loidreau_break(public: &PublicKey, a: Option<usize>) -> AttackOutcome {
    if !public.scheme.is_ggpt() {
        return AttackOutcome::Failed(FailureReason::WrongScheme);
    }
    let k = public.k;
    let candidates: Vec<usize> = match a {
        Some(a) if a >= 1 && a < k => alloc::vec![a],
        Some(_) => return AttackOutcome::Failed(FailureReason::ConditionViolated),
        None => (1..k).collect(),
    };
    let mut last = FailureReason::AssumptionViolated;
    for a in candidates {
        match break_with_rank(public, a) {
            Ok(outcome) => return outcome,
            Err(reason) => last = reason,
        }
    }
    AttackOutcome::Failed(last)
}

pub fn loidreau_attack(public: &PublicKey, a: Option<usize>, ct: &Ciphertext) -> (Option<Vec<Fe>>, AttackOutcome) {
    decrypt_with(loidreau_break(public, a), ct)
}

type Step<T> = core::result::Result<T, FailureReason>;

fn break_with_rank(public: &PublicKey, a: usize) -> Step<AttackOutcome> {
    let field = public.field();
    let (n, k, t_hat) = (public.n, public.k, public.t);
    let len = public.length();
    let m = field.m() as usize;
    if k * m < len {
        return Err(FailureReason::ConditionViolated);
    }
    let mut diagnostics: Vec<(String, usize)> = Vec::new();
    let ell0 = loidreau_ell(n, k, a);
    let mut found = None;
    for ell in ell0..=ell0 + EXTRA_ELL {
        let ext = frobenius_stack(&public.g_pub, ell, k - a);
        let u = rank_one_span(&RowSpace::of(&ext));
        diagnostics.push((format!("rank_one_dim[ell={ell}]"), u.rows()));
        if u.rows() == n {
            found = Some((ell, u));
            break;
        }
    }
    let (ell, u) = found.ok_or(FailureReason::AssumptionViolated)?;
    diagnostics.push((String::from("ell"), ell));
    let h_u = u.right_kernel();
    let w = public.g_pub.mul_base_t(&h_u).map_err(|_| FailureReason::Inconsistent)?;
    let w_rank = w.rank();
    diagnostics.push((String::from("w_rank"), w_rank));
    if w_rank != a {
        return Err(FailureReason::AssumptionViolated);
    }

    let full_code = hidden_code(public, &w, k)?;
    let parity = full_code.parity_check();
    diagnostics.push((String::from("v_system_variables"), t_hat * len));
    diagnostics.push((String::from("v_system_equations"), k * m * t_hat));
    diagnostics.push((String::from("v_system_membership_equations"), k * m * parity.rows()));

    let v = solve_v(field, &public.g_pub, &w, &h_u, &parity, &mut diagnostics)?;
    let h_v = v.right_kernel();
    if h_v.rows() != n {
        return Err(FailureReason::Inconsistent);
    }
    let decoder = decoder_through(public, &h_v)?;
    Ok(transcript(public, ell, u, h_v, decoder, diagnostics))
}

/// Rebuilds `⟨[0 | G]σ⟩` from the subcode `{mĜ : mW = 0}`.
fn hidden_code(public: &PublicKey, w: &ExtMatrix, k: usize) -> Step<RowSpace> {
    let field = public.field();
    let n = public.n;
    let m = field.m() as usize;
    let left = w.transpose().right_kernel();
    let sub = RowSpace::of(&left.mul(&public.g_pub).map_err(|_| FailureReason::Inconsistent)?);
    let mut j = 1;
    while k + j < n {
        let mut acc = sub.clone();
        for i in 1..=j {
            acc = acc.sum(&sub.frobenius(i as i64)).map_err(|_| FailureReason::Inconsistent)?;
        }
        let big = k + j;
        if acc.dim() == big {
            let mut c = acc;
            for step in 1..big {
                c = c.intersect(&c.frobenius(1)).map_err(|_| FailureReason::Inconsistent)?;
                if c.dim() != big - step {
                    return Err(FailureReason::AssumptionViolated);
                }
            }
            let gamma: Vec<Fe> = c.basis().row(0).iter().map(|&x| field.frobenius(x, (m - big + 1) as i64)).collect();
            let full = RowSpace::of(&moore(field, &gamma, k));
            if full.dim() != k || !full.contains_space(&sub) {
                return Err(FailureReason::AssumptionViolated);
            }
            return Ok(full);
        }
        j += 1;
    }
    Err(FailureReason::AssumptionViolated)
}

fn solve_v(
    field: &Field,
    g_pub: &ExtMatrix,
    w: &ExtMatrix,
    h_u: &BaseMatrix,
    parity: &ExtMatrix,
    diagnostics: &mut Vec<(String, usize)>,
) -> Step<BaseMatrix> {
    let (k, len) = (g_pub.rows(), g_pub.cols());
    let t_hat = h_u.rows();
    let np = parity.rows();
    let eqs = k * t_hat + k * np;
    let rhs_h = g_pub.mul_base_t(h_u).map_err(|_| FailureReason::Inconsistent)?;
    let rhs_p = g_pub.mul(&parity.transpose()).map_err(|_| FailureReason::Inconsistent)?;
    let mut rhs = Vec::with_capacity(eqs);
    for r in 0..k {
        rhs.extend((0..t_hat).map(|p| rhs_h.get(r, p)));
    }
    for r in 0..k {
        rhs.extend((0..np).map(|p| rhs_p.get(r, p)));
    }
    // unknown V_{j,c} has coefficient W_{r,j}·H_{p,c} in equation (r, p)
    let mut columns = Vec::with_capacity(t_hat * len);
    for j in 0..t_hat {
        for c in 0..len {
            let mut col = Vec::with_capacity(eqs);
            for r in 0..k {
                let wr = w.get(r, j);
                col.extend((0..t_hat).map(|p| field.scale_base(h_u.get(p, c), wr)));
            }
            for r in 0..k {
                let wr = w.get(r, j);
                col.extend((0..np).map(|p| field.mul(wr, parity.get(p, c))));
            }
            columns.push(col);
        }
    }
    let sol = solve_base_linear(field, &columns, &rhs).map_err(|_| FailureReason::Inconsistent)?;
    diagnostics.push((String::from("v_solution_kernel_dim"), sol.kernel.rows()));
    BaseMatrix::from_vec(field.q(), t_hat, len, sol.particular).map_err(|_| FailureReason::Inconsistent)
}
