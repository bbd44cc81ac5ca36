//! Randomized checks of the structural facts the attacks rely on.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rankbreak_core::{
    frobenius_sum_space, grassmann_support, min_rank_distance_exhaustive, moore, moore_decompose_first_row,
    rank_weight, sample_colrank_matrix, sample_rank_vector, BaseMatrix, ExtMatrix, Fe, Field, RowSpace,
};

pub type Check = fn(&mut StdRng) -> Result<(), String>;

pub const SUITE: &[(&str, Check)] = &[
    ("moore_intersection_and_sum", moore_intersection_and_sum),
    ("moore_sum_is_moore", moore_sum_is_moore),
    ("frobenius_sum_distance_drop", frobenius_sum_distance_drop),
    ("moore_times_base_matrix", moore_times_base_matrix),
    ("row_space_inside_support", row_space_inside_support),
    ("column_rank_invariance", column_rank_invariance),
    ("frobenius_preserves_rank", frobenius_preserves_rank),
    ("frobenius_commutes_with_inverse", frobenius_commutes_with_inverse),
    ("frobenius_fixed_iff_rational", frobenius_fixed_iff_rational),
    ("moore_decomposition_supports", moore_decomposition_supports),
    ("frobenius_chain_stabilizes", frobenius_chain_stabilizes),
    ("full_sum_splits", full_sum_splits),
    ("isometry_closure", isometry_closure),
];

/// Runs every check `instances` times; returns `(name, violations, first message)`.
pub fn run_suite(instances: usize, seed: u64) -> Vec<(&'static str, usize, Option<String>)> {
    SUITE
        .iter()
        .enumerate()
        .map(|(i, &(name, check))| {
            let mut rng = StdRng::seed_from_u64(seed ^ ((i as u64 + 1) << 32));
            let mut violations = 0;
            let mut first = None;
            for _ in 0..instances {
                if let Err(e) = check(&mut rng) {
                    violations += 1;
                    first.get_or_insert(e);
                }
            }
            (name, violations, first)
        })
        .collect()
}

fn field(m: u32) -> Field {
    Field::new(2, m, None).unwrap()
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn lifted(f: &Field, u: &BaseMatrix) -> RowSpace {
    RowSpace::of(&ExtMatrix::lift(f, u))
}

fn vec_add(f: &Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

fn vec_times_base(f: &Field, v: &[Fe], e: &BaseMatrix) -> Vec<Fe> {
    ExtMatrix::row_vector(f, v).mul_base(e).unwrap().row(0).to_vec()
}

/// `dim(⟨M⟩ ∩ ⟨M⟩^(q)) = k − 1` and `dim(⟨M⟩ + ⟨M⟩^(q)) = k + 1` for `k < rk(α)`.
fn moore_intersection_and_sum(rng: &mut StdRng) -> Result<(), String> {
    let f = field(8);
    let big_n = rng.gen_range(3..=8);
    let n = rng.gen_range(2..=big_n);
    let k = rng.gen_range(1..n);
    let alpha = sample_rank_vector(rng, &f, big_n, n).unwrap();
    let a = RowSpace::of(&moore(&f, &alpha, k));
    let b = a.frobenius(1);
    let (cap, sum) = (a.intersect(&b).unwrap().dim(), a.sum(&b).unwrap().dim());
    ensure(a.dim() == k && cap == k - 1 && sum == k + 1, || {
        format!("N={big_n} n={n} k={k}: dim {} cap {cap} sum {sum}", a.dim())
    })
}

/// `M + A` is Moore, and with `colrk(A) = r < n−k+1` has distance `≥ n−k+1−r`.
fn moore_sum_is_moore(rng: &mut StdRng) -> Result<(), String> {
    let f = field(6);
    let k = rng.gen_range(1..=2);
    let n = rng.gen_range(k + 1..=6);
    let r = rng.gen_range(0..=n - k);
    let alpha = sample_rank_vector(rng, &f, 6, n).unwrap();
    let beta = sample_rank_vector(rng, &f, 6, r).unwrap();
    let sum = moore(&f, &alpha, k).add(&moore(&f, &beta, k)).unwrap();
    ensure(sum == moore(&f, &vec_add(&f, &alpha, &beta), k), || "sum is not the Moore matrix of α+β".into())?;
    let d = min_rank_distance_exhaustive(&sum);
    ensure(d + r > n - k, || format!("n={n} k={k} r={r}: distance {d}"))
}

/// `d(⟨M⟩ + ⟨M^{[1]}⟩) = d(⟨M⟩) − 1` when `d > 1`.
fn frobenius_sum_distance_drop(rng: &mut StdRng) -> Result<(), String> {
    let f = field(5);
    let k = rng.gen_range(1..=2);
    let n = rng.gen_range(k + 1..=5);
    let alpha = sample_rank_vector(rng, &f, 5, n).unwrap();
    let m = moore(&f, &alpha, k);
    let d = min_rank_distance_exhaustive(&m);
    let sum = RowSpace::of(&m).sum(&RowSpace::of(&m.frobenius(1))).unwrap();
    let d_sum = min_rank_distance_exhaustive(sum.basis());
    ensure(d == n - k + 1 && d_sum == d - 1, || format!("n={n} k={k}: d {d} d_sum {d_sum}"))
}

/// `M·E` is Moore with distance `≥ d − s` for full-rank `E ∈ F_q^{N×(N−s)}`.
fn moore_times_base_matrix(rng: &mut StdRng) -> Result<(), String> {
    let f = field(6);
    let big_n = 6;
    let k = rng.gen_range(1..=2);
    let s = rng.gen_range(0..=big_n - k);
    let alpha = sample_rank_vector(rng, &f, big_n, big_n).unwrap();
    let m = moore(&f, &alpha, k);
    let e = BaseMatrix::random_full_rank(rng, 2, big_n, big_n - s).unwrap();
    let me = m.mul_base(&e).unwrap();
    ensure(me == moore(&f, &vec_times_base(&f, &alpha, &e), k), || "M·E is not Moore".into())?;
    let d = big_n - k + 1;
    let d_me = min_rank_distance_exhaustive(&me);
    ensure(d_me + s >= d, || format!("k={k} s={s}: distance {d_me}"))
}

/// `⟨X⟩ ⊆ supp_Gr(X)`, strictly iff `colrk(X) > rank(X)`.
fn row_space_inside_support(rng: &mut StdRng) -> Result<(), String> {
    let f = field(8);
    let k = rng.gen_range(1..=4);
    let n = rng.gen_range(k..=8);
    let t = rng.gen_range(k..=n);
    let x = loop {
        let x = sample_colrank_matrix(rng, &f, k, n, t).unwrap();
        if x.rank() == k {
            break x;
        }
    };
    let supp = lifted(&f, &grassmann_support(&x).map_err(|e| e.to_string())?.u);
    let row_space = RowSpace::of(&x);
    ensure(supp.contains_space(&row_space), || "row space escapes the support".into())?;
    ensure((supp.dim() > row_space.dim()) == (t > k), || format!("k={k} t={t}: strictness wrong"))
}

fn column_rank_invariance(rng: &mut StdRng) -> Result<(), String> {
    let f = field(6);
    let k = rng.gen_range(1..=4);
    let n = rng.gen_range(1..=8);
    let t = rng.gen_range(0..=n.min(6 * k));
    let x = sample_colrank_matrix(rng, &f, k, n, t).unwrap();
    let s = ExtMatrix::random_invertible(rng, &f, k).unwrap();
    let sx = s.mul(&x).unwrap().column_rank_base();
    ensure(sx == t, || format!("colrk {t} became {sx}"))
}

fn frobenius_preserves_rank(rng: &mut StdRng) -> Result<(), String> {
    let f = field(rng.gen_range(2..=8));
    let n = rng.gen_range(1..=f.m() as usize);
    let r = rng.gen_range(0..=n);
    let x = sample_rank_vector(rng, &f, n, r).unwrap();
    let i = rng.gen_range(-8..=8);
    let shifted: Vec<Fe> = x.iter().map(|&v| f.frobenius(v, i)).collect();
    ensure(rank_weight(&f, &shifted) == r, || format!("rank {r} changed under shift {i}"))
}

fn frobenius_commutes_with_inverse(rng: &mut StdRng) -> Result<(), String> {
    let f = field(rng.gen_range(2..=8));
    let n = rng.gen_range(1..=6);
    let m = ExtMatrix::random_invertible(rng, &f, n).unwrap();
    let lhs = m.inverse().unwrap().frobenius(1);
    let rhs = m.frobenius(1).inverse().map_err(|e| e.to_string())?;
    ensure(lhs == rhs, || format!("n={n}: mismatch"))
}

/// `S^(q) = S` iff `S` has a basis over `F_q`, on rational, generic and mixed spaces.
fn frobenius_fixed_iff_rational(rng: &mut StdRng) -> Result<(), String> {
    let f = field(rng.gen_range(2..=8));
    let n = rng.gen_range(1..=8);
    let d = rng.gen_range(1..=n);
    let kind = rng.gen_range(0..3);
    let base = ExtMatrix::lift(&f, &BaseMatrix::random(rng, 2, d, n));
    let gens = match kind {
        0 => base,
        1 => ExtMatrix::random(rng, &f, d, n),
        _ => base.vstack(&ExtMatrix::random(rng, &f, 1, n)).unwrap(),
    };
    let s = RowSpace::of(&gens);
    let fixed = s.frobenius(1) == s;
    ensure(fixed == s.is_rational(), || format!("fixed {fixed} but rational {}", s.is_rational()))?;
    ensure(kind != 0 || fixed, || "rational space moved".into())
}

/// Known `X = moore(x) + Z` with disjoint supports: the first-row split recovers
/// both parts, `supp(X_Moore) + supp(Z) = supp(X)` and `colrk(X_Moore) ≤ colrk(X)`.
fn moore_decomposition_supports(rng: &mut StdRng) -> Result<(), String> {
    let f = field(8);
    let n = 8;
    let k = rng.gen_range(2..=4);
    let r = rng.gen_range(0..=3);
    let s = rng.gen_range(1..=n - r);
    let x_moore = moore(&f, &sample_rank_vector(rng, &f, n, r).unwrap(), k);
    let z = loop {
        let v = ExtMatrix::zeros(&f, 1, s).vstack(&ExtMatrix::random(rng, &f, k - 1, s)).unwrap();
        let z = v.mul_base(&BaseMatrix::random_full_rank(rng, 2, s, n).unwrap()).unwrap();
        if z.column_rank_base() == s {
            break z;
        }
    };
    let x = x_moore.add(&z).unwrap();
    let dec = moore_decompose_first_row(&x).map_err(|e| e.to_string())?;
    ensure(dec.moore_part == x_moore && dec.non_moore == z && dec.s == s, || "first-row split differs".into())?;
    let supp = |m: &ExtMatrix| grassmann_support(m).map(|g| lifted(&f, &g.u)).map_err(|e| e.to_string());
    let (sm, sz, sx) = (supp(&x_moore)?, supp(&z)?, supp(&x)?);
    ensure(sm.sum(&sz).unwrap() == sx, || format!("k={k} r={r} s={s}: supports do not add up"))?;
    ensure(sz.dim() <= sx.dim() && sx.contains_space(&sz), || "non-Moore support escapes".into())?;
    ensure(x_moore.column_rank_base() <= x.column_rank_base(), || "Moore part has larger column rank".into())
}

/// `Σ_{i<s} ⟨X⟩^{[i]} = Σ_{i<s+j} ⟨X⟩^{[i]} = supp_Gr(X)` with dimension `s`.
fn frobenius_chain_stabilizes(rng: &mut StdRng) -> Result<(), String> {
    let f = field(8);
    let k = rng.gen_range(1..=4);
    let n = rng.gen_range(1..=8);
    let s = rng.gen_range(1..=n.min(4));
    let x = sample_colrank_matrix(rng, &f, k, n, s).unwrap();
    let base = frobenius_sum_space(&x, s, 1);
    ensure(base.dim() == s && base.is_rational(), || format!("k={k} n={n} s={s}: dim {}", base.dim()))?;
    for j in 1..=3 {
        ensure(frobenius_sum_space(&x, s + j, 1) == base, || format!("grew at s+{j}"))?;
    }
    ensure(lifted(&f, &grassmann_support(&x).unwrap().u) == base, || "support differs".into())
}

/// `Σ_{i≤s} ⟨M+X⟩^{[i]} = Σ_{i≤s} ⟨M⟩^{[i]} + supp_Gr(X)`.
fn full_sum_splits(rng: &mut StdRng) -> Result<(), String> {
    let f = field(8);
    let (n, k) = (8, 3);
    let s = rng.gen_range(1..=2);
    let m = moore(&f, &sample_rank_vector(rng, &f, n, n).unwrap(), k);
    let u = BaseMatrix::random_full_rank(rng, 2, s, n).unwrap();
    let x = loop {
        let x = ExtMatrix::random(rng, &f, k, s).mul_base(&u).unwrap();
        if x.column_rank_base() == s {
            break x;
        }
    };
    let lhs = frobenius_sum_space(&m.add(&x).unwrap(), s + 1, 1);
    let rhs = frobenius_sum_space(&m, s + 1, 1).sum(&lifted(&f, &u)).unwrap();
    ensure(lhs == rhs, || format!("s={s}: dims {} vs {}", lhs.dim(), rhs.dim()))
}

/// `β·Gab(α)·σ = Gab(β·α·σ)`.
fn isometry_closure(rng: &mut StdRng) -> Result<(), String> {
    let f = field(rng.gen_range(4..=8));
    let n = rng.gen_range(2..=f.m() as usize);
    let k = rng.gen_range(1..n);
    let alpha = sample_rank_vector(rng, &f, n, n).unwrap();
    let beta = f.random_nonzero(rng);
    let sigma = BaseMatrix::random_invertible(rng, 2, n).unwrap();
    let scaled: Vec<Fe> = alpha.iter().map(|&a| f.mul(beta, a)).collect();
    let image = moore(&f, &alpha, k);
    let image = ExtMatrix::from_vec(&f, k, n, image.data().iter().map(|&v| f.mul(beta, v)).collect())
        .unwrap()
        .mul_base(&sigma)
        .unwrap();
    let target = moore(&f, &vec_times_base(&f, &scaled, &sigma), k);
    ensure(RowSpace::of(&image) == RowSpace::of(&target), || format!("n={n} k={k}: codes differ"))
}
