//! GPT and GGPT key generation, encryption and legitimate decryption.

use alloc::vec::Vec;
use core::fmt;

use rand_core::RngCore;

use crate::base::BaseMatrix;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::gabidulin::GabidulinCode;
use crate::matrix::ExtMatrix;
use crate::rank::{moore, rank_weight};

const SAMPLE_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    Gpt,
    Ggpt,
    GgptSa,
    GgptLoidreau,
}

impl Scheme {
    pub fn tag(self) -> &'static str {
        match self {
            Scheme::Gpt => "gpt",
            Scheme::Ggpt => "ggpt",
            Scheme::GgptSa => "ggpt-sa",
            Scheme::GgptLoidreau => "ggpt-loidreau",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Scheme> {
        [Scheme::Gpt, Scheme::Ggpt, Scheme::GgptSa, Scheme::GgptLoidreau].into_iter().find(|s| s.tag() == tag)
    }

    pub fn is_ggpt(self) -> bool {
        self != Scheme::Gpt
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Distortion layout for GGPT keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GgptVariant {
    /// Random `X` of full column rank `t̂`.
    Generic,
    /// Moore block of column rank `a` next to a non-Moore block of column rank `t̂ − a`.
    SmartApproach { a: usize },
    /// Random `X` of rank `a` and column rank `t̂`.
    Loidreau { a: usize },
}

impl GgptVariant {
    pub fn scheme(self) -> Scheme {
        match self {
            GgptVariant::Generic => Scheme::Ggpt,
            GgptVariant::SmartApproach { .. } => Scheme::GgptSa,
            GgptVariant::Loidreau { .. } => Scheme::GgptLoidreau,
        }
    }

    pub fn a(self) -> usize {
        match self {
            GgptVariant::Generic => 0,
            GgptVariant::SmartApproach { a } | GgptVariant::Loidreau { a } => a,
        }
    }
}

/// `⌊(n−k)/2⌋`.
pub fn t_prime(n: usize, k: usize) -> usize {
    n.saturating_sub(k) / 2
}

/// `⌈n/(k−a)⌉`.
pub fn loidreau_ell(n: usize, k: usize, a: usize) -> usize {
    n.div_ceil(k - a)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublicKey {
    pub scheme: Scheme,
    pub n: usize,
    pub k: usize,
    /// GPT: column rank of the distortion; GGPT: `t̂`.
    pub t: usize,
    pub g_pub: ExtMatrix,
    pub error_budget: usize,
}

impl PublicKey {
    pub fn field(&self) -> &Field {
        self.g_pub.field()
    }

    pub fn length(&self) -> usize {
        self.g_pub.cols()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrivateKey {
    pub public: PublicKey,
    /// SA: Moore part column rank; Loidreau: rank of `X`.
    pub a: usize,
    pub s: ExtMatrix,
    pub code: GabidulinCode,
    pub x: ExtMatrix,
    pub sigma: Option<BaseMatrix>,
}

impl PrivateKey {
    /// `S·G + X` or `S[X | G]σ` from the private parts.
    pub fn reconstruct(&self) -> Result<ExtMatrix> {
        let sg = self.s.mul(self.code.generator())?;
        match &self.sigma {
            None => sg.add(&self.x),
            Some(sigma) => self.s.mul(&self.x.hstack(self.code.generator())?)?.mul_base(sigma),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ciphertext {
    pub scheme: Scheme,
    pub y: Vec<Fe>,
}

/// `x = v·U` with `rank(v) = r` and `U` of full rank, so `rank_weight(x) = r`.
pub fn sample_rank_vector<R: RngCore + ?Sized>(rng: &mut R, field: &Field, n: usize, r: usize) -> Result<Vec<Fe>> {
    if r > n.min(field.m() as usize) {
        return Err(Error::BadParams("rank exceeds min(n, m)"));
    }
    if r == 0 {
        return Ok(alloc::vec![Fe::ZERO; n]);
    }
    let v = (0..SAMPLE_CAP)
        .map(|_| (0..r).map(|_| field.random(rng)).collect::<Vec<_>>())
        .find(|v| rank_weight(field, v) == r)
        .ok_or(Error::SamplingFailure)?;
    let u = BaseMatrix::random_full_rank(rng, field.q(), r, n)?;
    ExtMatrix::row_vector(field, &v).mul_base(&u).map(|x| x.row(0).to_vec())
}

/// `X = V·U` with `V` over `F_{q^m}` and `U ∈ F_q^{t×n}` of full rank, resampled
/// until `colrk(X) = t`.
pub fn sample_colrank_matrix<R: RngCore + ?Sized>(
    rng: &mut R,
    field: &Field,
    k: usize,
    n: usize,
    t: usize,
) -> Result<ExtMatrix> {
    if t > n || t > field.m() as usize * k {
        return Err(Error::BadParams("column rank not realizable"));
    }
    if t == 0 {
        return Ok(ExtMatrix::zeros(field, k, n));
    }
    for _ in 0..SAMPLE_CAP {
        let v = ExtMatrix::random(rng, field, k, t);
        let u = BaseMatrix::random_full_rank(rng, field.q(), t, n)?;
        let x = v.mul_base(&u)?;
        if x.column_rank_base() == t {
            return Ok(x);
        }
    }
    Err(Error::SamplingFailure)
}

/// `X = L·R` with `L ∈ F_{q^m}^{k×a}`, `R ∈ F_{q^m}^{a×t}` of full rank, resampled
/// until `rank(X) = a` and `colrk(X) = t`.
pub fn sample_low_rank_matrix<R: RngCore + ?Sized>(
    rng: &mut R,
    field: &Field,
    k: usize,
    t: usize,
    a: usize,
) -> Result<ExtMatrix> {
    if a > k || a > t || t > a * field.m() as usize {
        return Err(Error::BadParams("rank and column rank not realizable together"));
    }
    for _ in 0..SAMPLE_CAP {
        let left = ExtMatrix::random_full_rank(rng, field, k, a)?;
        let right = ExtMatrix::random_full_rank(rng, field, a, t)?;
        let x = left.mul(&right)?;
        if x.rank() == a && x.column_rank_base() == t {
            return Ok(x);
        }
    }
    Err(Error::SamplingFailure)
}

fn full_rank_alpha<R: RngCore + ?Sized>(rng: &mut R, field: &Field, n: usize) -> Result<Vec<Fe>> {
    sample_rank_vector(rng, field, n, n)
}

fn check_code_dims(field: &Field, n: usize, k: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::BadParams("need 1 <= k < n"));
    }
    if n > field.m() as usize {
        return Err(Error::BadParams("need n <= m"));
    }
    Ok(())
}

/// GPT key with a random distortion of column rank `t < t′`.
pub fn gpt_keygen<R: RngCore + ?Sized>(
    rng: &mut R,
    field: &Field,
    n: usize,
    k: usize,
    t: usize,
) -> Result<(PublicKey, PrivateKey)> {
    check_code_dims(field, n, k)?;
    if t >= t_prime(n, k) {
        return Err(Error::BadParams("need t < (n-k)/2"));
    }
    let x = sample_colrank_matrix(rng, field, k, n, t)?;
    gpt_keygen_with_distortion(rng, field, n, k, x)
}

/// GPT key around a caller-chosen distortion `X`.
pub fn gpt_keygen_with_distortion<R: RngCore + ?Sized>(
    rng: &mut R,
    field: &Field,
    n: usize,
    k: usize,
    x: ExtMatrix,
) -> Result<(PublicKey, PrivateKey)> {
    gpt_assemble(rng, field, n, k, |_, _| Ok(x.clone()))
}

/// GPT key whose distortion `X = S·moore(x, k)` is a pure Moore term, with
/// `rank(x) = t`.
pub fn gpt_keygen_moore_distortion<R: RngCore + ?Sized>(
    rng: &mut R,
    field: &Field,
    n: usize,
    k: usize,
    t: usize,
) -> Result<(PublicKey, PrivateKey)> {
    gpt_assemble(rng, field, n, k, |rng, s| s.mul(&moore(field, &sample_rank_vector(rng, field, n, t)?, k)))
}

fn gpt_assemble<R: RngCore + ?Sized>(
    rng: &mut R,
    field: &Field,
    n: usize,
    k: usize,
    mut distortion: impl FnMut(&mut R, &ExtMatrix) -> Result<ExtMatrix>,
) -> Result<(PublicKey, PrivateKey)> {
    check_code_dims(field, n, k)?;
    for _ in 0..SAMPLE_CAP {
        let code = GabidulinCode::new(field, &full_rank_alpha(rng, field, n)?, k)?;
        let s = ExtMatrix::random_invertible(rng, field, k)?;
        let x = distortion(rng, &s)?;
        if x.rows() != k || x.cols() != n {
            return Err(Error::DimensionMismatch);
        }
        let t = x.column_rank_base();
        if t >= t_prime(n, k) {
            return Err(Error::BadParams("need t < (n-k)/2"));
        }
        let g_pub = s.mul(code.generator())?.add(&x)?;
        if g_pub.rank() < k {
            continue;
        }
        let public = PublicKey { scheme: Scheme::Gpt, n, k, t, g_pub, error_budget: t_prime(n, k) - t };
        return Ok((public.clone(), PrivateKey { public, a: 0, s, code, x, sigma: None }));
    }
    Err(Error::SamplingFailure)
}

fn sample_distortion<R: RngCore + ?Sized>(
    rng: &mut R,
    field: &Field,
    n: usize,
    k: usize,
    t_hat: usize,
    variant: GgptVariant,
) -> Result<ExtMatrix> {
    match variant {
        GgptVariant::Generic => sample_colrank_matrix(rng, field, k, t_hat, t_hat),
        GgptVariant::SmartApproach { a } => {
            if a > t_hat {
                return Err(Error::BadParams("need a <= t_hat"));
            }
            for _ in 0..SAMPLE_CAP {
                let x = sample_rank_vector(rng, field, a, a)?;
                let z = sample_colrank_matrix(rng, field, k, t_hat - a, t_hat - a)?;
                let out = moore(field, &x, k).hstack(&z)?;
                if out.column_rank_base() == t_hat {
                    return Ok(out);
                }
            }
            Err(Error::SamplingFailure)
        }
        GgptVariant::Loidreau { a } => {
            if a == 0 || a > k || a * (n - k) >= t_hat {
                return Err(Error::BadParams("need 0 < a < t_hat/(n-k)"));
            }
            sample_low_rank_matrix(rng, field, k, t_hat, a)
        }
    }
}

pub fn ggpt_keygen<R: RngCore + ?Sized>(
    rng: &mut R,
    field: &Field,
    n: usize,
    k: usize,
    t_hat: usize,
    variant: GgptVariant,
) -> Result<(PublicKey, PrivateKey)> {
    check_code_dims(field, n, k)?;
    let x = sample_distortion(rng, field, n, k, t_hat, variant)?;
    for _ in 0..SAMPLE_CAP {
        let code = GabidulinCode::new(field, &full_rank_alpha(rng, field, n)?, k)?;
        let s = ExtMatrix::random_invertible(rng, field, k)?;
        let sigma = BaseMatrix::random_invertible(rng, field.q(), n + t_hat)?;
        if let Some(keys) = assemble_ggpt(variant, x.clone(), s, code, sigma)? {
            return Ok(keys);
        }
    }
    Err(Error::SamplingFailure)
}

fn assemble_ggpt(
    variant: GgptVariant,
    x: ExtMatrix,
    s: ExtMatrix,
    code: GabidulinCode,
    sigma: BaseMatrix,
) -> Result<Option<(PublicKey, PrivateKey)>> {
    let (n, k, t_hat) = (code.n(), code.k(), x.cols());
    let g_pub = s.mul(&x.hstack(code.generator())?)?.mul_base(&sigma)?;
    if g_pub.rank() < k {
        return Ok(None);
    }
    let public = PublicKey { scheme: variant.scheme(), n, k, t: t_hat, g_pub, error_budget: t_prime(n, k) };
    let private = PrivateKey { public: public.clone(), a: variant.a(), s, code, x, sigma: Some(sigma) };
    Ok(Some((public, private)))
}

/// The worked Smart Approach key: `q = 2`, `n = 8`, `k = 3`, `t̂ = 3`, `a = 1`,
/// `S = I`, `σ = I`, `X = X_Moore + Z` with `X_Moore` carrying `x, x^{[1]}, x^{[2]}`
/// in its first column and `Z` the all-ones matrix minus the identity.
pub fn sa_example_key(field: &Field, g: &[Fe], x: Fe) -> Result<(PublicKey, PrivateKey)> {
    if field.q() != 2 || g.len() != 8 || field.to_base(x).is_some() {
        return Err(Error::BadParams("example needs q = 2, eight g_i and x outside F_2"));
    }
    let code = GabidulinCode::new(field, g, 3)?;
    let mut xm = ExtMatrix::zeros(field, 3, 3);
    let xs = moore(field, &[x], 3);
    for r in 0..3 {
        xm.set(r, 0, xs.get(r, 0));
    }
    let z = ExtMatrix::lift(
        field,
        &BaseMatrix::from_rows(2, 3, &[alloc::vec![0, 1, 1], alloc::vec![1, 0, 1], alloc::vec![1, 1, 0]])?,
    );
    let x = xm.add(&z)?;
    let s = ExtMatrix::identity(field, 3);
    let sigma = BaseMatrix::identity(2, 11);
    assemble_ggpt(GgptVariant::SmartApproach { a: 1 }, x, s, code, sigma)?.ok_or(Error::InternalInconsistency)
}

pub fn encrypt<R: RngCore + ?Sized>(rng: &mut R, public: &PublicKey, msg: &[Fe]) -> Result<Ciphertext> {
    encrypt_with_rank(rng, public, msg, public.error_budget)
}

/// Encryption with an error of rank exactly `r` (`r ≤` the budget for honest use).
pub fn encrypt_with_rank<R: RngCore + ?Sized>(
    rng: &mut R,
    public: &PublicKey,
    msg: &[Fe],
    r: usize,
) -> Result<Ciphertext> {
    if msg.len() != public.k {
        return Err(Error::DimensionMismatch);
    }
    let f = public.field();
    let c = public.g_pub.vec_mul(msg)?;
    let e = sample_rank_vector(rng, f, public.length(), r)?;
    let y = c.iter().zip(&e).map(|(&a, &b)| f.add(a, b)).collect();
    Ok(Ciphertext { scheme: public.scheme, y })
}

pub fn decrypt(private: &PrivateKey, ct: &Ciphertext) -> Result<Vec<Fe>> {
    let public = &private.public;
    if ct.scheme != public.scheme || ct.y.len() != public.length() {
        return Err(Error::DimensionMismatch);
    }
    let f = public.field();
    let codeword_part: Vec<Fe> = match &private.sigma {
        None => ct.y.clone(),
        Some(sigma) => {
            let unscrambled = ExtMatrix::row_vector(f, &ct.y).mul_base(&sigma.inverse()?)?;
            unscrambled.row(0)[public.t..].to_vec()
        }
    };
    let (coords, _) = private.code.decode(&codeword_part, private.code.capacity())?;
    private.s.inverse()?.vec_mul(&coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank::grassmann_support;
    use rand::{rngs::StdRng, SeedableRng};

    #[test]
    fn rank_vectors_have_exact_rank() {
        let f = Field::new(2, 8, None).unwrap();
        let mut rng = StdRng::seed_from_u64(1);
        assert_eq!(sample_rank_vector(&mut rng, &f, 5, 0).unwrap(), alloc::vec![Fe::ZERO; 5]);
        for _ in 0..1000 {
            let x = sample_rank_vector(&mut rng, &f, 8, 3).unwrap();
            assert_eq!(rank_weight(&f, &x), 3);
        }
        let x = sample_rank_vector(&mut rng, &f, 6, 1).unwrap();
        let lead = *x.iter().find(|v| !v.is_zero()).unwrap();
        let inv = f.inv(lead).unwrap();
        assert!(x.iter().all(|&v| f.to_base(f.mul(v, inv)).is_some()));
    }

    #[test]
    fn colrank_matrices() {
        let f = Field::new(2, 8, None).unwrap();
        let mut rng = StdRng::seed_from_u64(2);
        assert!(sample_colrank_matrix(&mut rng, &f, 3, 6, 0).unwrap().is_zero());
        for _ in 0..100 {
            let x = sample_colrank_matrix(&mut rng, &f, 3, 7, 4).unwrap();
            assert_eq!(x.column_rank_base(), 4);
            assert_eq!(grassmann_support(&x).unwrap().s, 4);
        }
    }

    #[test]
    fn gpt_parameters() {
        let f = Field::new(2, 12, None).unwrap();
        let mut rng = StdRng::seed_from_u64(3);
        let (public, private) = gpt_keygen(&mut rng, &f, 12, 4, 1).unwrap();
        assert_eq!(public.error_budget, 3);
        assert_eq!(private.reconstruct().unwrap(), public.g_pub);
        let (public, _) = gpt_keygen(&mut rng, &f, 12, 4, 0).unwrap();
        assert_eq!(public.error_budget, 4);
        assert!(matches!(gpt_keygen(&mut rng, &f, 12, 4, 4), Err(Error::BadParams(_))));
    }

    #[test]
    fn roundtrips() {
        let f = Field::new(2, 12, None).unwrap();
        let mut rng = StdRng::seed_from_u64(4);
        let keys = [
            gpt_keygen(&mut rng, &f, 12, 4, 2).unwrap(),
            ggpt_keygen(&mut rng, &f, 12, 4, 3, GgptVariant::Generic).unwrap(),
            ggpt_keygen(&mut rng, &f, 12, 4, 4, GgptVariant::SmartApproach { a: 2 }).unwrap(),
            ggpt_keygen(&mut rng, &f, 12, 4, 9, GgptVariant::Loidreau { a: 1 }).unwrap(),
            ggpt_keygen(&mut rng, &f, 12, 4, 0, GgptVariant::Generic).unwrap(),
        ];
        for (public, private) in &keys {
            assert_eq!(&private.reconstruct().unwrap(), &public.g_pub);
            for _ in 0..10 {
                let msg: Vec<Fe> = (0..4).map(|_| f.random(&mut rng)).collect();
                let ct = encrypt(&mut rng, public, &msg).unwrap();
                assert_eq!(decrypt(private, &ct).unwrap(), msg);
            }
        }
    }

    #[test]
    fn loidreau_shape() {
        let f = Field::new(2, 24, None).unwrap();
        let mut rng = StdRng::seed_from_u64(5);
        let (public, private) = ggpt_keygen(&mut rng, &f, 24, 12, 40, GgptVariant::Loidreau { a: 3 }).unwrap();
        assert_eq!((public.g_pub.rows(), public.g_pub.cols()), (12, 64));
        assert_eq!(private.x.rank(), 3);
        assert_eq!(private.x.column_rank_base(), 40);
        assert_eq!(loidreau_ell(24, 12, 3), 3);
        assert!(matches!(
            ggpt_keygen(&mut rng, &f, 24, 12, 36, GgptVariant::Loidreau { a: 3 }),
            Err(Error::BadParams(_))
        ));
    }

    #[test]
    fn example_key_layout() {
        let f = Field::new(2, 8, None).unwrap();
        let g: Vec<Fe> = (0..8).map(|i| f.elem(1 << i).unwrap()).collect();
        let x = f.generator();
        let (public, _) = sa_example_key(&f, &g, x).unwrap();
        let row0 = public.g_pub.row(0);
        assert_eq!(&row0[..3], &[x, Fe::ONE, Fe::ONE]);
        assert_eq!(public.g_pub.get(1, 0), f.add(f.frobenius(x, 1), Fe::ONE));
        assert_eq!(&row0[3..], &g[..]);
    }
}
