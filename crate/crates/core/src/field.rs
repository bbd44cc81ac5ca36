//! Arithmetic in the tower `F_q ⊂ F_{q^m}`.
//!
//! Elements of `F_{q^m}` are stored in the polynomial basis of the modulus and
//! packed into a single `u64` as `Σ c_i q^i`. For `q = 2` this is the usual
//! bitmask encoding. The Frobenius map `x ↦ x^q` is `F_q`-linear, so every power
//! of it is precomputed once as a linear map and applied without exponentiation.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::poly;

/// Largest extension degree that still gets full log/antilog tables for `q = 2`.
const LOG_TABLE_MAX_M: u32 = 20;

/// An element of `F_{q^m}`, packed as `Σ c_i q^i` over the polynomial basis.
///
/// The packing is only meaningful relative to a [`Field`]; the field checks
/// canonicity when elements enter through [`Field::elem`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(pub(crate) u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn raw(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.0)
    }
}

impl fmt::LowerHex for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

enum MulKernel {
    /// `q = 2`, small `m`: discrete log tables over a primitive element.
    Log { log: Vec<u32>, exp: Vec<u64>, order: u64 },
    /// `q = 2`: shift-and-add with interleaved reduction.
    Shift { reduce: u64 },
    /// Odd `q`: schoolbook on coefficient vectors.
    Generic,
}

struct Inner {
    q: u32,
    m: u32,
    size: u64,
    modulus: Vec<u32>,
    kernel: MulKernel,
    /// `frob[i][j] = (x^j)^{q^i}` for `0 ≤ i, j < m`.
    frob: Vec<Vec<Fe>>,
    /// `q = 2` only: `frob_bytes[(i * nbytes + b) * 256 + v]` is the image of the
    /// byte `v` in position `b` under the `i`-th Frobenius power.
    frob_bytes: Vec<u64>,
    nbytes: usize,
}

/// The field context `F_{q^m}` over the prime field `F_q`.
///
/// Cheap to clone; clones share the precomputed tables.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.q == other.0.q && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={} m={} modulus={:x}", self.q(), self.m(), self.modulus_int())
    }
}

pub(crate) fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= q as u64 {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Builds `F_{q^m}`. Without a modulus the smallest monic irreducible
    /// polynomial with nonzero constant term is chosen, ordering candidates by
    /// `Σ c_i q^i`. A supplied modulus is normalised to be monic.
    pub fn new(q: u32, m: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(q) || m == 0 {
            return Err(Error::UnsupportedField);
        }
        let size = (q as u64).checked_pow(m).ok_or(Error::UnsupportedField)?;
        if size > (1u64 << 63) {
            return Err(Error::UnsupportedField);
        }
        let modulus = match modulus {
            Some(coeffs) => {
                let mut f: Vec<u32> = coeffs.iter().map(|&c| c % q).collect();
                poly::trim(&mut f);
                if f.len() != m as usize + 1 {
                    return Err(Error::RejectedModulus);
                }
                poly::make_monic(&mut f, q);
                if !poly::is_irreducible(&f, q) {
                    return Err(Error::RejectedModulus);
                }
                f
            }
            None => default_modulus(q, m),
        };
        Ok(Field(Arc::new(Inner::build(q, m, size, modulus))))
    }

    /// Parses a modulus given as the packed integer `Σ c_i q^i` (leading term included).
    pub fn from_modulus_int(q: u32, m: u32, packed: u128) -> Result<Field> {
        if !is_prime(q) {
            return Err(Error::UnsupportedField);
        }
        let mut coeffs = Vec::new();
        let mut v = packed;
        while v > 0 {
            coeffs.push((v % q as u128) as u32);
            v /= q as u128;
        }
        Field::new(q, m, Some(&coeffs))
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.0.m
    }

    /// `q^m`.
    #[inline]
    pub fn size(&self) -> u64 {
        self.0.size
    }

    /// Modulus coefficients, constant term first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn modulus_int(&self) -> u128 {
        let q = self.q() as u128;
        self.0.modulus.iter().rev().fold(0u128, |acc, &c| acc * q + c as u128)
    }

    /// Checked conversion from the packed encoding.
    pub fn elem(&self, raw: u64) -> Result<Fe> {
        if raw < self.0.size {
            Ok(Fe(raw))
        } else {
            Err(Error::BadParams("field element out of range"))
        }
    }

    /// Embeds `c ∈ F_q`.
    #[inline]
    pub fn from_base(&self, c: u32) -> Fe {
        Fe((c % self.q()) as u64)
    }

    /// Returns `Some(c)` when `x` lies in the prime subfield.
    #[inline]
    pub fn to_base(&self, x: Fe) -> Option<u32> {
        if x.0 < self.q() as u64 {
            Some(x.0 as u32)
        } else {
            None
        }
    }

    /// The class of the indeterminate `x` (the element `1` when `m = 1`).
    pub fn generator(&self) -> Fe {
        if self.m() == 1 {
            // x ≡ -c_0 modulo a monic linear polynomial
            self.neg(Fe(self.0.modulus[0] as u64))
        } else {
            Fe(self.q() as u64)
        }
    }

    pub fn coeffs(&self, x: Fe) -> Vec<u32> {
        let q = self.q() as u64;
        let mut out = vec![0u32; self.m() as usize];
        let mut v = x.0;
        for c in out.iter_mut() {
            *c = (v % q) as u32;
            v /= q;
        }
        out
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fe> {
        if coeffs.len() > self.m() as usize || coeffs.iter().any(|&c| c >= self.q()) {
            return Err(Error::BadParams("coefficient vector is not canonical"));
        }
        Ok(self.pack(coeffs))
    }

    fn pack(&self, coeffs: &[u32]) -> Fe {
        let q = self.q() as u64;
        Fe(coeffs.iter().rev().fold(0u64, |acc, &c| acc * q + c as u64))
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.q() == 2 {
            return Fe(a.0 ^ b.0);
        }
        self.digitwise(a, b, |x, y, q| (x + y) % q)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        if self.q() == 2 {
            return Fe(a.0 ^ b.0);
        }
        self.digitwise(a, b, |x, y, q| (x + q - y) % q)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.sub(Fe::ZERO, a)
    }

    fn digitwise(&self, a: Fe, b: Fe, op: impl Fn(u64, u64, u64) -> u64) -> Fe {
        let q = self.q() as u64;
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.m() {
            out += op(x % q, y % q, q) * place;
            x /= q;
            y /= q;
            place = place.wrapping_mul(q);
        }
        Fe(out)
    }

    /// Multiplication by an element of the prime field.
    #[inline]
    pub fn scale_base(&self, c: u32, a: Fe) -> Fe {
        let c = c % self.q();
        match c {
            0 => Fe::ZERO,
            1 => a,
            _ => self.digitwise(a, a, |x, _, q| x * c as u64 % q),
        }
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        match &self.0.kernel {
            MulKernel::Log { log, exp, .. } => Fe(exp[(log[a.0 as usize] + log[b.0 as usize]) as usize]),
            MulKernel::Shift { reduce } => Fe(shift_mul(a.0, b.0, self.m(), *reduce)),
            MulKernel::Generic => self.generic_mul(a, b),
        }
    }

    fn generic_mul(&self, a: Fe, b: Fe) -> Fe {
        let q = self.q() as u64;
        let m = self.m() as usize;
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % q;
            }
        }
        let f = &self.0.modulus;
        for top in (m..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (j, &fj) in f.iter().enumerate().take(m) {
                let idx = top - m + j;
                prod[idx] = (prod[idx] + (q - c) * fj as u64) % q;
            }
        }
        let low: Vec<u32> = prod[..m].iter().map(|&c| c as u32).collect();
        self.pack(&low)
    }

    #[inline]
    pub fn square(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let MulKernel::Log { log, exp, order } = &self.0.kernel {
            let l = log[a.0 as usize] as u64;
            return Ok(Fe(exp[((order - l) % order) as usize]));
        }
        Ok(self.pow(a, self.size() - 2))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `x^{q^i}` with `i` reduced modulo `m`.
    #[inline]
    pub fn frobenius(&self, x: Fe, i: i64) -> Fe {
        let m = self.m() as i64;
        let i = i.rem_euclid(m) as usize;
        if i == 0 || x.0 < self.q() as u64 {
            return x;
        }
        let inner = &*self.0;
        if inner.q == 2 {
            let nb = inner.nbytes;
            let base = i * nb * 256;
            let mut v = x.0;
            let mut out = 0u64;
            let mut b = 0usize;
            while v != 0 {
                out ^= inner.frob_bytes[base + b * 256 + (v & 0xff) as usize];
                v >>= 8;
                b += 1;
            }
            return Fe(out);
        }
        let mut acc = Fe::ZERO;
        for (j, c) in self.coeffs(x).into_iter().enumerate() {
            if c != 0 {
                acc = self.add(acc, self.scale_base(c, inner.frob[i][j]));
            }
        }
        acc
    }

    /// Uniform element of `F_{q^m}`.
    pub fn random<R: RngCore + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(uniform_below(rng, self.size()))
    }

    /// Uniform nonzero element.
    pub fn random_nonzero<R: RngCore + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(1 + uniform_below(rng, self.size() - 1))
    }

    /// Uniform element of `F_q`.
    pub fn random_base<R: RngCore + ?Sized>(&self, rng: &mut R) -> u32 {
        uniform_below(rng, self.q() as u64) as u32
    }
}

/// Uniform integer in `[0, bound)` by rejection.
pub(crate) fn uniform_below<R: RngCore + ?Sized>(rng: &mut R, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    if bound.is_power_of_two() {
        return rng.next_u64() & (bound - 1);
    }
    let zone = u64::MAX - (u64::MAX % bound);
    loop {
        let v = rng.next_u64();
        if v < zone {
            return v % bound;
        }
    }
}

#[inline]
fn shift_mul(mut a: u64, mut b: u64, m: u32, reduce: u64) -> u64 {
    let top = 1u64 << (m - 1);
    let mask = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let mut acc = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        let carry = a & top != 0;
        a = (a << 1) & mask;
        if carry {
            a ^= reduce;
        }
    }
    acc
}

fn default_modulus(q: u32, m: u32) -> Vec<u32> {
    let mut tail = vec![0u32; m as usize];
    tail[0] = 1;
    loop {
        let mut f = tail.clone();
        f.push(1);
        if poly::is_irreducible(&f, q) {
            return f;
        }
        // increment tail as a base-q counter, keeping the constant term nonzero
        let mut i = 0;
        loop {
            tail[i] += 1;
            if tail[i] < q {
                break;
            }
            tail[i] = if i == 0 { 1 } else { 0 };
            i += 1;
            assert!(i < tail.len(), "an irreducible polynomial of every degree exists");
        }
    }
}

impl Inner {
    fn build(q: u32, m: u32, size: u64, modulus: Vec<u32>) -> Inner {
        let mut inner = Inner {
            q,
            m,
            size,
            modulus,
            kernel: MulKernel::Generic,
            frob: Vec::new(),
            frob_bytes: Vec::new(),
            nbytes: (m as usize).div_ceil(8),
        };
        if q == 2 {
            let reduce =
                inner.modulus[..m as usize].iter().enumerate().fold(0u64, |acc, (i, &c)| acc | ((c as u64) << i));
            inner.kernel = MulKernel::Shift { reduce };
            if m <= LOG_TABLE_MAX_M {
                inner.kernel = log_tables(m, reduce);
            }
        }
        let field = Field(Arc::new(inner));
        // The Frobenius tables are built with the field's own multiplication.
        let frob = frobenius_images(&field);
        let mut inner = Arc::try_unwrap(field.0).ok().expect("sole owner");
        if q == 2 {
            let nb = inner.nbytes;
            let mut bytes = vec![0u64; m as usize * nb * 256];
            for (i, images) in frob.iter().enumerate() {
                for b in 0..nb {
                    for v in 0..256usize {
                        let mut acc = 0u64;
                        for bit in 0..8 {
                            let j = b * 8 + bit;
                            if v >> bit & 1 == 1 && j < m as usize {
                                acc ^= images[j].0;
                            }
                        }
                        bytes[(i * nb + b) * 256 + v] = acc;
                    }
                }
            }
            inner.frob_bytes = bytes;
        }
        inner.frob = frob;
        inner
    }
}

fn frobenius_images(field: &Field) -> Vec<Vec<Fe>> {
    let m = field.m() as usize;
    let q = field.q() as u64;
    let basis: Vec<Fe> = (0..m)
        .map(|j| {
            let mut c = vec![0u32; m];
            c[j] = 1;
            field.pack(&c)
        })
        .collect();
    let mut out = Vec::with_capacity(m);
    let mut current = basis;
    for _ in 0..m {
        let next = current.iter().map(|&x| field.pow(x, q)).collect();
        out.push(current);
        current = next;
    }
    out
}

fn log_tables(m: u32, reduce: u64) -> MulKernel {
    let order = (1u64 << m) - 1;
    if order == 1 {
        return MulKernel::Log { log: vec![0, 0], exp: vec![1, 1], order: 1 };
    }
    let factors = poly::prime_factors(order);
    let is_primitive = |g: u64| {
        factors.iter().all(|&p| {
            let mut e = order / p;
            let (mut base, mut acc) = (g, 1u64);
            while e > 0 {
                if e & 1 == 1 {
                    acc = shift_mul(acc, base, m, reduce);
                }
                base = shift_mul(base, base, m, reduce);
                e >>= 1;
            }
            acc != 1
        })
    };
    let g = (2..=order).find(|&g| is_primitive(g)).expect("multiplicative group is cyclic");
    let mut log = vec![0u32; 1usize << m];
    let mut exp = vec![0u64; 2 * order as usize];
    let mut x = 1u64;
    for i in 0..order as usize {
        exp[i] = x;
        exp[i + order as usize] = x;
        log[x as usize] = i as u32;
        x = shift_mul(x, g, m, reduce);
    }
    MulKernel::Log { log, exp, order }
}
