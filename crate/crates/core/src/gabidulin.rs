//! Gabidulin codes: construction, encoding, Welch–Berlekamp style decoding,
//! and recovery of a decoder from a scrambled generator matrix.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::matrix::{ExtMatrix, RowSpace};
use crate::rank::{moore, rank_weight};

/// `Gab_{n,k}(α) = ⟨moore(α, k)⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GabidulinCode {
    field: Field,
    alpha: Vec<Fe>,
    k: usize,
    generator: ExtMatrix,
}

impl GabidulinCode {
    pub fn new(field: &Field, alpha: &[Fe], k: usize) -> Result<GabidulinCode> {
        let n = alpha.len();
        if k == 0 || k > n || n > field.m() as usize {
            return Err(Error::BadDims);
        }
        if rank_weight(field, alpha) < n {
            return Err(Error::DependentGenerator);
        }
        let generator = moore(field, alpha, k);
        Ok(GabidulinCode { field: field.clone(), alpha: alpha.to_vec(), k, generator })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn alpha(&self) -> &[Fe] {
        &self.alpha
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &ExtMatrix {
        &self.generator
    }

    pub fn min_distance(&self) -> usize {
        self.n() - self.k + 1
    }

    /// `⌊(n−k)/2⌋`.
    pub fn capacity(&self) -> usize {
        (self.n() - self.k) / 2
    }

    pub fn encode(&self, msg: &[Fe]) -> Result<Vec<Fe>> {
        if msg.len() != self.k {
            return Err(Error::DimensionMismatch);
        }
        self.generator.vec_mul(msg)
    }

    /// Returns `(msg, e)` with `y = encode(msg) + e` and `rank(e) ≤ tau`.
    pub fn decode(&self, y: &[Fe], tau: usize) -> Result<(Vec<Fe>, Vec<Fe>)> {
        let f = &self.field;
        let (n, k) = (self.n(), self.k);
        if y.len() != n {
            return Err(Error::DimensionMismatch);
        }
        if tau > self.capacity() {
            return Err(Error::BadParams("decoding radius exceeds the unique decoding bound"));
        }
        // unknowns: V_0..V_tau, then N_0..N_{tau+k-1}
        let nv = tau + 1;
        let nn = tau + k;
        let mut sys = ExtMatrix::zeros(f, n, nv + nn);
        for (j, &yj) in y.iter().enumerate() {
            let mut p = yj;
            for i in 0..nv {
                sys.set(j, i, p);
                p = f.frobenius(p, 1);
            }
            let mut p = self.alpha[j];
            for i in 0..nn {
                sys.set(j, nv + i, f.neg(p));
                p = f.frobenius(p, 1);
            }
        }
        let ker = sys.right_kernel();
        if ker.rows() == 0 {
            return Err(Error::DecodeFailure);
        }
        let sol = ker.row(0);
        let v = &sol[..nv];
        let nc = &sol[nv..];
        let msg = left_divide(f, v, nc, k).ok_or(Error::DecodeFailure)?;
        let c = self.encode(&msg)?;
        let e: Vec<Fe> = y.iter().zip(&c).map(|(&a, &b)| f.sub(a, b)).collect();
        if rank_weight(f, &e) > tau {
            return Err(Error::DecodeFailure);
        }
        Ok((msg, e))
    }
}

/// Solves `N = V ∘ f` for `f` of q-degree `< k`, or `None` when `V` does not
/// divide `N` on the left.
fn left_divide(f: &Field, v: &[Fe], n: &[Fe], k: usize) -> Option<Vec<Fe>> {
    let dv = v.iter().rposition(|x| !x.is_zero())?;
    let lead_inv = f.inv(v[dv]).ok()?;
    let mut out = vec![Fe::ZERO; k];
    // coefficient of x^{[d]} in V∘f is Σ_i V_i f_{d−i}^{[i]}
    for j in (0..k).rev() {
        let d = j + dv;
        let mut acc = n.get(d).copied().unwrap_or(Fe::ZERO);
        for (i, &vi) in v.iter().enumerate().take(dv) {
            let idx = d - i;
            if idx < k {
                acc = f.sub(acc, f.mul(vi, f.frobenius(out[idx], i as i64)));
            }
        }
        out[j] = f.frobenius(f.mul(acc, lead_inv), -(dv as i64));
    }
    // full check of every coefficient
    let total = n.len().max(dv + k);
    for d in 0..total {
        let mut acc = Fe::ZERO;
        for i in 0..=dv.min(d) {
            if d - i < k {
                acc = f.add(acc, f.mul(v[i], f.frobenius(out[d - i], i as i64)));
            }
        }
        if acc != n.get(d).copied().unwrap_or(Fe::ZERO) {
            return None;
        }
    }
    Some(out)
}

/// Exhaustive nearest-codeword search for cross-checking the decoder at tiny sizes.
pub fn decode_exhaustive(code: &GabidulinCode, y: &[Fe], tau: usize) -> Result<Vec<Fe>> {
    let f = code.field();
    let mut found = None;
    for_each_message(f, code.k(), |msg| {
        let c = code.encode(msg).expect("message length matches");
        let e: Vec<Fe> = y.iter().zip(&c).map(|(&a, &b)| f.sub(a, b)).collect();
        if rank_weight(f, &e) <= tau {
            found = Some(msg.to_vec());
            return false;
        }
        true
    });
    found.ok_or(Error::DecodeFailure)
}

/// Minimum rank weight over all nonzero codewords of `⟨generator⟩`, by enumeration.
pub fn min_rank_distance_exhaustive(generator: &ExtMatrix) -> usize {
    let f = generator.field();
    let mut best = usize::MAX;
    for_each_message(f, generator.rows(), |msg| {
        if msg.iter().all(|x| x.is_zero()) {
            return true;
        }
        let c = generator.vec_mul(msg).expect("message length matches");
        best = best.min(rank_weight(f, &c));
        true
    });
    best
}

fn for_each_message(f: &Field, k: usize, mut visit: impl FnMut(&[Fe]) -> bool) {
    let size = f.size();
    let mut digits = vec![0u64; k];
    let mut msg = vec![Fe::ZERO; k];
    loop {
        for (m, &d) in msg.iter_mut().zip(&digits) {
            *m = f.elem(d).expect("digit below field size");
        }
        if !visit(&msg) {
            return;
        }
        let mut i = 0;
        loop {
            if i == k {
                return;
            }
            digits[i] += 1;
            if digits[i] < size {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Decoder for an observed generator `G_obs` spanning a Gabidulin code after
/// restriction to `columns`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveredDecoder {
    pub columns: Vec<usize>,
    pub code: GabidulinCode,
    /// Maps decoded coordinates back to `G_obs` message coordinates.
    pub change_of_basis: ExtMatrix,
    pub error_capacity: usize,
}

impl RecoveredDecoder {
    pub fn canonical_generator(&self) -> &[Fe] {
        self.code.alpha()
    }

    pub fn decode(&self, y: &[Fe]) -> Result<Vec<Fe>> {
        self.decode_with(y, self.error_capacity)
    }

    pub fn decode_with(&self, y: &[Fe], tau: usize) -> Result<Vec<Fe>> {
        let restricted: Vec<Fe> =
            self.columns.iter().map(|&c| y.get(c).copied()).collect::<Option<_>>().ok_or(Error::DimensionMismatch)?;
        let (coords, _) = self.code.decode(&restricted, tau)?;
        self.change_of_basis.vec_mul(&coords)
    }
}

/// Recovers a decoder for `⟨G_obs⟩`, which must be a Gabidulin code once
/// restricted to a maximal set of `F_q`-independent columns.
pub fn recover_canonical(g_obs: &ExtMatrix) -> Result<RecoveredDecoder> {
    let f = g_obs.field();
    let k = g_obs.rows();
    if k == 0 || g_obs.rank() != k {
        return Err(Error::NotGabidulin);
    }
    let columns = g_obs.independent_columns_base();
    let n = columns.len();
    let m = f.m() as usize;
    if n < k || n > m {
        return Err(Error::NotGabidulin);
    }
    let g_sel = g_obs.select_columns(&columns);
    let g = if k == n {
        // every full-rank k × k matrix generates the whole space; use the polynomial basis
        (0..n as u32).map(|i| f.elem((f.q() as u64).pow(i))).collect::<Result<Vec<_>>>()?
    } else {
        let mut c = RowSpace::of(&g_sel);
        for step in 1..k {
            c = c.intersect(&c.frobenius(1))?;
            if c.dim() != k - step {
                return Err(Error::NotGabidulin);
            }
        }
        let v = c.basis().row(0);
        v.iter().map(|&x| f.frobenius(x, (m - k + 1) as i64)).collect()
    };
    let code = GabidulinCode::new(f, &g, k).map_err(|_| Error::NotGabidulin)?;
    let gen = code.generator();
    let (_, pivots, _) = gen.rref();
    let s_obs =
        g_sel.select_columns(&pivots).mul(&gen.select_columns(&pivots).inverse().map_err(|_| Error::NotGabidulin)?)?;
    if s_obs.mul(gen)? != g_sel {
        return Err(Error::NotGabidulin);
    }
    let change_of_basis = s_obs.inverse().map_err(|_| Error::NotGabidulin)?;
    let error_capacity = code.capacity();
    Ok(RecoveredDecoder { columns, code, change_of_basis, error_capacity })
}

pub fn decode_arbitrary(g_obs: &ExtMatrix, y: &[Fe], tau: usize) -> Result<Vec<Fe>> {
    recover_canonical(g_obs)?.decode_with(y, tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::BaseMatrix;
    use rand::{rngs::StdRng, SeedableRng};

    fn full_rank_vector(f: &Field, n: usize, rng: &mut StdRng) -> Vec<Fe> {
        loop {
            let a: Vec<Fe> = (0..n).map(|_| f.random(rng)).collect();
            if rank_weight(f, &a) == n {
                return a;
            }
        }
    }

    fn rank_error(f: &Field, n: usize, r: usize, rng: &mut StdRng) -> Vec<Fe> {
        loop {
            let v = ExtMatrix::random(rng, f, 1, r);
            let u = ExtMatrix::lift(f, &BaseMatrix::random(rng, f.q(), r, n));
            let e = v.mul(&u).unwrap().row(0).to_vec();
            if rank_weight(f, &e) == r {
                return e;
            }
        }
    }

    #[test]
    fn construction_errors() {
        let f = Field::new(2, 8, None).unwrap();
        assert_eq!(GabidulinCode::new(&f, &[Fe::ONE, Fe::ONE], 1), Err(Error::DependentGenerator));
        let mut rng = StdRng::seed_from_u64(0);
        let a = full_rank_vector(&f, 8, &mut rng);
        assert_eq!(GabidulinCode::new(&f, &a, 0), Err(Error::BadDims));
        assert_eq!(GabidulinCode::new(&f, &a, 9), Err(Error::BadDims));
        let code = GabidulinCode::new(&f, &a, 3).unwrap();
        assert_eq!((code.capacity(), code.min_distance()), (2, 6));
        assert_eq!(GabidulinCode::new(&f, &a, 8).unwrap().capacity(), 0);
        assert_eq!(GabidulinCode::new(&f, &a, 1).unwrap().min_distance(), 8);
    }

    #[test]
    fn encode_unit_messages() {
        let f = Field::new(2, 8, None).unwrap();
        let mut rng = StdRng::seed_from_u64(1);
        let a = full_rank_vector(&f, 6, &mut rng);
        let code = GabidulinCode::new(&f, &a, 3).unwrap();
        assert_eq!(code.encode(&[Fe::ZERO; 3]).unwrap(), vec![Fe::ZERO; 6]);
        assert_eq!(code.encode(&[Fe::ONE, Fe::ZERO, Fe::ZERO]).unwrap(), a);
        let a1: Vec<Fe> = a.iter().map(|&x| f.frobenius(x, 1)).collect();
        assert_eq!(code.encode(&[Fe::ZERO, Fe::ONE, Fe::ZERO]).unwrap(), a1);
    }

    #[test]
    fn decode_roundtrip() {
        let f = Field::new(2, 12, None).unwrap();
        let mut rng = StdRng::seed_from_u64(2);
        let a = full_rank_vector(&f, 12, &mut rng);
        let code = GabidulinCode::new(&f, &a, 4).unwrap();
        for r in 0..=4 {
            let msg: Vec<Fe> = (0..4).map(|_| f.random(&mut rng)).collect();
            let e = rank_error(&f, 12, r, &mut rng);
            let y: Vec<Fe> = code.encode(&msg).unwrap().iter().zip(&e).map(|(&c, &x)| f.add(c, x)).collect();
            let (m2, e2) = code.decode(&y, 4).unwrap();
            assert_eq!((m2, e2), (msg, e));
        }
    }

    #[test]
    fn recover_from_scrambled_generator() {
        let f = Field::new(2, 10, None).unwrap();
        let mut rng = StdRng::seed_from_u64(3);
        for k in 1..=6 {
            let a = full_rank_vector(&f, 6, &mut rng);
            let code = GabidulinCode::new(&f, &a, k).unwrap();
            let s = ExtMatrix::random_invertible(&mut rng, &f, k).unwrap();
            let g_obs = s.mul(code.generator()).unwrap();
            let dec = recover_canonical(&g_obs).unwrap();
            assert_eq!(dec.error_capacity, (6 - k) / 2);
            let msg: Vec<Fe> = (0..k).map(|_| f.random(&mut rng)).collect();
            let e = rank_error(&f, 6, dec.error_capacity, &mut rng);
            let y: Vec<Fe> = g_obs.vec_mul(&msg).unwrap().iter().zip(&e).map(|(&c, &x)| f.add(c, x)).collect();
            assert_eq!(dec.decode(&y).unwrap(), msg);
        }
    }

    #[test]
    fn random_generators_are_rejected() {
        let f = Field::new(2, 8, None).unwrap();
        let mut rng = StdRng::seed_from_u64(4);
        let mut rejected = 0;
        for _ in 0..20 {
            let g = ExtMatrix::random_full_rank(&mut rng, &f, 3, 8).unwrap();
            if recover_canonical(&g) == Err(Error::NotGabidulin) {
                rejected += 1;
            }
        }
        assert_eq!(rejected, 20);
    }
}
