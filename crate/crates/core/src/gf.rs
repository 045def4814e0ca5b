//! Finite fields `GF(p^f)`.
//!
//! A field is built once and shared through [`FieldRef`]. Elements are small
//! `Copy` handles; all arithmetic goes through the owning [`Field`], which keeps
//! log/antilog and Zech tables so that every operation is a few lookups.
//!
//! Elements are stored as their coefficient vector over `GF(p)` packed in base
//! `p` (constant coefficient least significant). `w` denotes the class of `t`
//! modulo the defining polynomial.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::grouporder::{factor_u128, is_prime};
use crate::poly::Poly;

/// Largest field order for which tables are built.
pub const MAX_ORDER: u64 = 1 << 22;

const NONE: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u64),
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("zero has no multiplicative order")]
    ZeroElement,
    #[error("GF({small}) does not embed in GF({big})")]
    NoEmbedding { small: u64, big: u64 },
    #[error("field order {0} is larger than supported")]
    TooLarge(u64),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type FieldRef = Arc<Field>;

/// Element handle. Only meaningful together with the field that made it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FieldElem {
    field: u64,
    raw: u32,
}

impl FieldElem {
    /// Packed coefficient index in `0..q`.
    #[inline]
    pub fn raw(self) -> u32 {
        self.raw
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.raw == 0
    }

    #[inline]
    pub fn field_id(self) -> u64 {
        self.field
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

pub struct Field {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u32>,
    id: u64,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "GF({})", self.spec())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.f == other.f && self.modulus == other.modulus
    }
}
impl Eq for Field {}

fn reduce_int(c: i64, p: u32) -> u32 {
    c.rem_euclid(p as i64) as u32
}

impl Field {
    /// The prime field `GF(p)`.
    pub fn prime(p: u64) -> Result<FieldRef, GfError> {
        Self::build(p, 1, &[0, 1])
    }

    /// `GF(p^f)`. With `modulus == None` the least monic irreducible of
    /// degree `f` is used (ordered by packed lower coefficients).
    pub fn new(p: u64, f: u32, modulus: Option<&[i64]>) -> Result<FieldRef, GfError> {
        if !is_prime(p as u128) {
            return Err(GfError::CompositeCharacteristic(p));
        }
        if f == 0 {
            return Err(GfError::Parse("degree must be positive".into()));
        }
        let q = (p as u128).checked_pow(f).unwrap_or(u128::MAX);
        if q > MAX_ORDER as u128 {
            return Err(GfError::TooLarge(q.min(u64::MAX as u128) as u64));
        }
        match modulus {
            None if f == 1 => Self::build(p, 1, &[0, 1]),
            None => {
                let m = least_irreducible(p, f)?;
                Self::build(p, f, &m)
            }
            Some(m) => {
                if m.len() != f as usize + 1 {
                    return Err(GfError::Parse(format!(
                        "modulus needs {} coefficients, got {}",
                        f + 1,
                        m.len()
                    )));
                }
                let m: Vec<u32> = m.iter().map(|&c| reduce_int(c, p as u32)).collect();
                if m[f as usize] != 1 {
                    return Err(GfError::Parse("modulus must be monic".into()));
                }
                if f > 1 {
                    let fp = Self::prime(p)?;
                    let poly = Poly::from_raw(&fp, m.clone());
                    if !poly.is_irreducible() {
                        return Err(GfError::ReducibleModulus(p));
                    }
                }
                Self::build(p, f, &m)
            }
        }
    }

    /// Parse `p`, `p^f` or `p^f/c0,c1,...,cf`.
    pub fn parse(spec: &str) -> Result<FieldRef, GfError> {
        let bad = || GfError::Parse(format!("bad field spec {spec:?}"));
        let (head, modulus) = match spec.split_once('/') {
            Some((h, m)) => (h.trim(), Some(m.trim())),
            None => (spec.trim(), None),
        };
        let (p, f) = match head.split_once('^') {
            Some((p, f)) => (
                p.trim().parse::<u64>().map_err(|_| bad())?,
                f.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => (head.parse::<u64>().map_err(|_| bad())?, 1),
        };
        match modulus {
            None => Self::new(p, f, None),
            Some(m) => {
                let cs: Vec<i64> = m
                    .split(',')
                    .map(|c| c.trim().parse::<i64>().map_err(|_| bad()))
                    .collect::<Result<_, _>>()?;
                if f == 1 {
                    // any monic linear modulus presents the same prime field
                    if cs.len() != 2 || reduce_int(cs[1], p as u32) != 1 {
                        return Err(bad());
                    }
                    return Self::new(p, 1, None);
                }
                Self::new(p, f, Some(&cs))
            }
        }
    }

    fn build(p: u64, f: u32, modulus: &[u32]) -> Result<FieldRef, GfError> {
        if !is_prime(p as u128) {
            return Err(GfError::CompositeCharacteristic(p));
        }
        let p32 = p as u32;
        let q = p32.pow(f);
        let mut ppow = vec![1u32; f as usize + 1];
        for i in 1..=f as usize {
            ppow[i] = ppow[i - 1] * p32;
        }
        let mut h = DefaultHasher::new();
        (p, f, modulus).hash(&mut h);
        let id = h.finish();

        let slow = Slow {
            p: p32,
            f: f as usize,
            modulus,
            ppow: &ppow,
        };
        let n = (q - 1) as usize;
        let generator = if q == 2 {
            1
        } else {
            let primes: Vec<u128> = factor_u128(n as u128).into_iter().map(|(r, _)| r).collect();
            let mut found = None;
            for c in 2..q {
                if primes
                    .iter()
                    .all(|&r| slow.pow(c, (n as u128 / r) as u64) != 1)
                {
                    found = Some(c);
                    break;
                }
            }
            match found {
                Some(g) => g,
                None => return Err(GfError::ReducibleModulus(p)),
            }
        };
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for i in 0..n {
            exp[i] = cur;
            log[cur as usize] = i as u32;
            cur = slow.mul(cur, generator);
        }
        if cur != 1 {
            return Err(GfError::ReducibleModulus(p));
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }
        let zech = if p32 != 2 && f > 1 {
            (0..n)
                .map(|k| {
                    let s = slow.add(1, exp[k]);
                    if s == 0 {
                        NONE
                    } else {
                        log[s as usize]
                    }
                })
                .collect()
        } else {
            Vec::new()
        };
        Ok(Arc::new(Field {
            p: p32,
            f,
            q,
            modulus: modulus.to_vec(),
            id,
            exp,
            log,
            zech,
        }))
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p as u64
    }
    #[inline]
    pub fn degree(&self) -> u32 {
        self.f
    }
    #[inline]
    pub fn order(&self) -> u64 {
        self.q as u64
    }
    pub fn id(&self) -> u64 {
        self.id
    }
    /// Defining polynomial, constant coefficient first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Textual description `p^f/c0,...,cf` accepted by [`Field::parse`].
    pub fn spec(&self) -> String {
        if self.f == 1 {
            return format!("{}", self.p);
        }
        let m: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        format!("{}^{}/{}", self.p, self.f, m.join(","))
    }

    // ---- raw arithmetic on packed indices ----

    #[inline]
    pub(crate) fn add_raw(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.f == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let la = self.log[a as usize];
        let lb = self.log[b as usize];
        let d = if lb >= la {
            lb - la
        } else {
            lb + self.q - 1 - la
        };
        let z = self.zech[d as usize];
        if z == NONE {
            0
        } else {
            self.exp[(la + z) as usize]
        }
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u32) -> u32 {
        if a == 0 || self.p == 2 {
            return a;
        }
        if self.f == 1 {
            return self.p - a;
        }
        self.exp[(self.log[a as usize] + (self.q - 1) / 2) as usize]
    }

    #[inline]
    pub(crate) fn sub_raw(&self, a: u32, b: u32) -> u32 {
        self.add_raw(a, self.neg_raw(b))
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    /// Caller guarantees `a != 0`.
    #[inline]
    pub(crate) fn inv_raw(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        let l = self.log[a as usize];
        if l == 0 {
            1
        } else {
            self.exp[(self.q - 1 - l) as usize]
        }
    }

    pub(crate) fn pow_raw(&self, a: u32, e: i128) -> Result<u32, GfError> {
        if a == 0 {
            return match e {
                0 => Ok(1),
                e if e > 0 => Ok(0),
                _ => Err(GfError::DivisionByZero),
            };
        }
        let n = (self.q - 1) as i128;
        let l = (self.log[a as usize] as i128 * e.rem_euclid(n)).rem_euclid(n);
        Ok(self.exp[l as usize])
    }

    #[inline]
    pub(crate) fn from_int_raw(&self, c: i64) -> u32 {
        reduce_int(c, self.p)
    }

    /// `a*b + c`, the inner step of every dot product.
    #[inline]
    pub(crate) fn mul_add_raw(&self, a: u32, b: u32, c: u32) -> u32 {
        self.add_raw(self.mul_raw(a, b), c)
    }

    /// `dst[j] += a * src[j]`, the kernel of matrix products and elimination.
    #[inline]
    pub(crate) fn axpy_raw(&self, a: u32, src: &[u32], dst: &mut [u32]) {
        if a == 0 {
            return;
        }
        let la = self.log[a as usize];
        if self.p == 2 {
            for (d, &s) in dst.iter_mut().zip(src) {
                if s != 0 {
                    *d ^= self.exp[(la + self.log[s as usize]) as usize];
                }
            }
        } else {
            for (d, &s) in dst.iter_mut().zip(src) {
                if s != 0 {
                    let m = self.exp[(la + self.log[s as usize]) as usize];
                    *d = self.add_raw(*d, m);
                }
            }
        }
    }

    // ---- element API ----

    #[inline]
    pub fn wrap(&self, raw: u32) -> FieldElem {
        debug_assert!(raw < self.q);
        FieldElem {
            field: self.id,
            raw,
        }
    }

    pub fn zero(&self) -> FieldElem {
        self.wrap(0)
    }
    pub fn one(&self) -> FieldElem {
        self.wrap(1)
    }
    /// The class `w` of `t` (zero in a prime field).
    pub fn gen(&self) -> FieldElem {
        if self.f == 1 {
            self.zero()
        } else {
            self.wrap(self.p)
        }
    }
    /// The generator of the multiplicative group used for the tables.
    pub fn primitive(&self) -> FieldElem {
        self.wrap(self.exp[if self.q == 2 { 0 } else { 1 }])
    }

    pub fn from_int(&self, c: i64) -> FieldElem {
        self.wrap(self.from_int_raw(c))
    }

    /// Element with the given coefficients on `1, w, w^2, ...`.
    pub fn from_coeffs(&self, cs: &[i64]) -> FieldElem {
        let mut w = self.one();
        let g = self.gen();
        let mut acc = self.zero();
        for (i, &c) in cs.iter().enumerate() {
            if i > 0 {
                w = self.mul(w, g);
            }
            acc = self.add(acc, self.mul(self.from_int(c), w));
        }
        if self.f == 1 && cs.len() > 1 {
            return self.from_int(cs[0]);
        }
        acc
    }

    pub fn coeffs(&self, a: FieldElem) -> Vec<u32> {
        let mut r = a.raw;
        (0..self.f)
            .map(|_| {
                let c = r % self.p;
                r /= self.p;
                c
            })
            .collect()
    }

    /// The element as an integer in `0..p` when it lies in the prime field.
    pub fn as_prime(&self, a: FieldElem) -> Option<u32> {
        (a.raw < self.p).then_some(a.raw)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.wrap(self.add_raw(a.raw, b.raw))
    }
    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.wrap(self.sub_raw(a.raw, b.raw))
    }
    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.wrap(self.mul_raw(a.raw, b.raw))
    }
    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        self.wrap(self.neg_raw(a.raw))
    }
    pub fn inv(&self, a: FieldElem) -> Result<FieldElem, GfError> {
        if a.raw == 0 {
            return Err(GfError::DivisionByZero);
        }
        Ok(self.wrap(self.inv_raw(a.raw)))
    }
    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }
    pub fn pow(&self, a: FieldElem, e: i64) -> Result<FieldElem, GfError> {
        Ok(self.wrap(self.pow_raw(a.raw, e as i128)?))
    }

    /// Checked binary operation; rejects elements of another field.
    pub fn arith(&self, op: Op, a: FieldElem, b: FieldElem) -> Result<FieldElem, GfError> {
        if a.field != self.id || b.field != self.id {
            return Err(GfError::MixedFields);
        }
        Ok(match op {
            Op::Add => self.add(a, b),
            Op::Sub => self.sub(a, b),
            Op::Mul => self.mul(a, b),
            Op::Div => self.div(a, b)?,
        })
    }

    pub fn owns(&self, a: FieldElem) -> bool {
        a.field == self.id && a.raw < self.q
    }

    pub fn frobenius(&self, a: FieldElem) -> FieldElem {
        self.wrap(self.pow_raw(a.raw, self.p as i128).unwrap())
    }

    /// Smallest `d | f` with `b^(p^d) = b`, i.e. `[GF(p)[b] : GF(p)]`.
    pub fn subfield_degree(&self, b: FieldElem) -> u32 {
        let mut c = b;
        for d in 1..=self.f {
            c = self.frobenius(c);
            if c == b {
                return d;
            }
        }
        unreachable!("Frobenius has order f")
    }

    pub fn mult_order(&self, b: FieldElem) -> Result<u64, GfError> {
        if b.raw == 0 {
            return Err(GfError::ZeroElement);
        }
        let n = (self.q - 1) as u64;
        let l = self.log[b.raw as usize] as u64;
        Ok(n / gcd(l, n))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        self.wrap(rng.gen_range(0..self.q))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        self.wrap(rng.gen_range(1..self.q))
    }

    /// All elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q).map(move |r| self.wrap(r))
    }

    /// Text form `c0+c1*w+...+c(f-1)*w^(f-1)`; a plain integer in a prime field.
    pub fn format(&self, a: FieldElem) -> String {
        if self.f == 1 {
            return a.raw.to_string();
        }
        let cs = self.coeffs(a);
        let mut parts = Vec::with_capacity(cs.len());
        for (i, c) in cs.iter().enumerate() {
            parts.push(match i {
                0 => c.to_string(),
                1 => format!("{c}*w"),
                _ => format!("{c}*w^{i}"),
            });
        }
        parts.join("+")
    }

    /// Inverse of [`Field::format`]; also accepts sparse sums such as `w^2+1`
    /// and signed integers.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem, GfError> {
        let bad = || GfError::Parse(format!("bad element {s:?}"));
        let s = s.trim();
        if s.is_empty() {
            return Err(bad());
        }
        if let Ok(c) = s.parse::<i64>() {
            return Ok(self.from_int(c));
        }
        let mut acc = self.zero();
        for term in s.split('+') {
            let term = term.trim();
            let (coef, power) = match term.find('w') {
                None => (term, 0u32),
                Some(i) => {
                    let c = term[..i].trim_end_matches('*').trim();
                    let rest = &term[i + 1..];
                    let k = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse::<u32>()
                            .map_err(|_| bad())?
                    };
                    (c, k)
                }
            };
            let c = if coef.is_empty() {
                1
            } else {
                coef.parse::<i64>().map_err(|_| bad())?
            };
            let wk = self.pow(self.gen(), power as i64)?;
            acc = self.add(acc, self.mul(self.from_int(c), wk));
        }
        Ok(acc)
    }

    /// The field of order `q^k` over the same prime, with its default
    /// modulus, and the embedding of `self` into it.
    pub fn extension(self: &FieldRef, k: u32) -> Result<(FieldRef, Embedding), GfError> {
        let big = Field::new(self.p as u64, self.f * k, None)?;
        let e = embed(self, &big)?;
        Ok((big, e))
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Slow polynomial-residue arithmetic, used only while building tables.
struct Slow<'a> {
    p: u32,
    f: usize,
    modulus: &'a [u32],
    ppow: &'a [u32],
}

impl Slow<'_> {
    fn unpack(&self, mut r: u32) -> Vec<u32> {
        (0..self.f)
            .map(|_| {
                let c = r % self.p;
                r /= self.p;
                c
            })
            .collect()
    }
    fn pack(&self, v: &[u32]) -> u32 {
        v.iter().zip(self.ppow).map(|(c, w)| c * w).sum()
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.unpack(a), self.unpack(b));
        let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.pack(&s)
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let (x, y) = (self.unpack(a), self.unpack(b));
        let mut prod = vec![0u64; 2 * self.f];
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u as u64 * v as u64) % p;
            }
        }
        for d in (self.f..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for k in 0..self.f {
                let m = self.modulus[k] as u64;
                prod[d - self.f + k] = (prod[d - self.f + k] + (p - c) * m) % p;
            }
        }
        let v: Vec<u32> = prod[..self.f].iter().map(|&c| c as u32).collect();
        self.pack(&v)
    }
    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

fn least_irreducible(p: u64, f: u32) -> Result<Vec<u32>, GfError> {
    let fp = Field::prime(p)?;
    let p32 = p as u32;
    let total = p.pow(f);
    for code in 0..total {
        let mut c = code;
        let mut m = Vec::with_capacity(f as usize + 1);
        for _ in 0..f {
            m.push((c % p) as u32);
            c /= p;
        }
        if m[0] == 0 {
            continue;
        }
        m.push(1);
        if Poly::from_raw(&fp, m.clone()).is_irreducible() {
            return Ok(m);
        }
    }
    Err(GfError::ReducibleModulus(p32 as u64))
}

/// Field homomorphism `small -> big`, sending `w` to the first root (in
/// packed order) of the small field's modulus.
#[derive(Clone)]
pub struct Embedding {
    small: FieldRef,
    big: FieldRef,
    table: Vec<u32>,
}

impl fmt::Debug for Embedding {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "Embedding({:?} -> {:?})", self.small, self.big)
    }
}

impl Embedding {
    pub fn source(&self) -> &FieldRef {
        &self.small
    }
    pub fn target(&self) -> &FieldRef {
        &self.big
    }
    pub fn apply(&self, a: FieldElem) -> FieldElem {
        self.big.wrap(self.table[a.raw as usize])
    }
    pub(crate) fn apply_raw(&self, r: u32) -> u32 {
        self.table[r as usize]
    }
}

pub fn embed(small: &FieldRef, big: &FieldRef) -> Result<Embedding, GfError> {
    let err = GfError::NoEmbedding {
        small: small.order(),
        big: big.order(),
    };
    if small.p != big.p || !big.f.is_multiple_of(small.f) {
        return Err(err);
    }
    let image_of_w = if small.f == 1 {
        0
    } else {
        let m = &small.modulus;
        (0..big.q)
            .find(|&r| {
                let mut acc = 0u32;
                for &c in m.iter().rev() {
                    acc = big.add_raw(big.mul_raw(acc, r), c);
                }
                acc == 0
            })
            .ok_or(err)?
    };
    let mut powers = vec![1u32; small.f as usize];
    for i in 1..powers.len() {
        powers[i] = big.mul_raw(powers[i - 1], image_of_w);
    }
    let table = (0..small.q)
        .map(|r| {
            let mut acc = 0;
            let mut rest = r;
            for &w in &powers {
                let c = rest % small.p;
                rest /= small.p;
                acc = big.add_raw(acc, big.mul_raw(c, w));
            }
            acc
        })
        .collect();
    Ok(Embedding {
        small: small.clone(),
        big: big.clone(),
        table,
    })
}

/// Upper bound on the number of `a` with `GF(p)[g(a)] != GF(p^f)` for a
/// polynomial `g` of degree `s` with `g(0) = 0`.
pub fn campo_n_bound(s: u64, p: u64, f: u32) -> u64 {
    s * p * (p.pow(f / 2) - 1) / (p - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf8_multiplication_matches_modulus() {
        let k = Field::new(2, 3, Some(&[1, 1, 0, 1])).unwrap();
        let w = k.gen();
        let w3 = k.pow(w, 3).unwrap();
        assert_eq!(w3, k.add(w, k.one()));
        assert_eq!(k.format(w3), "1+1*w+0*w^2");
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert_eq!(
            Field::new(2, 2, Some(&[1, 0, 1])).unwrap_err(),
            GfError::ReducibleModulus(2)
        );
        assert!(matches!(
            Field::prime(6),
            Err(GfError::CompositeCharacteristic(6))
        ));
    }

    #[test]
    fn inverse_in_gf9() {
        let k = Field::new(3, 2, Some(&[1, 0, 1])).unwrap();
        let x = k.from_coeffs(&[1, 1]);
        let y = k.inv(x).unwrap();
        assert_eq!(k.mul(x, y), k.one());
        assert_eq!(k.inv(k.zero()), Err(GfError::DivisionByZero));
    }

    #[test]
    fn mixed_fields_detected() {
        let a = Field::prime(5).unwrap();
        let b = Field::prime(7).unwrap();
        assert_eq!(
            a.arith(Op::Add, a.one(), b.one()),
            Err(GfError::MixedFields)
        );
    }

    #[test]
    fn subfield_degrees_in_gf16() {
        let k = Field::new(2, 4, None).unwrap();
        let mut counts = [0usize; 5];
        for e in k.elements() {
            counts[k.subfield_degree(e) as usize] += 1;
        }
        assert_eq!(counts, [0, 2, 2, 0, 12]);
    }

    #[test]
    fn campo_bound_small_cases() {
        assert_eq!(campo_n_bound(3, 3, 2), 9);
        assert_eq!(campo_n_bound(2, 2, 2), 4);
        assert_eq!(campo_n_bound(2, 3, 3), 6);
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let small = Field::new(2, 2, None).unwrap();
        let (big, e) = small.extension(3).unwrap();
        assert_eq!(big.order(), 64);
        for a in small.elements() {
            for b in small.elements() {
                assert_eq!(e.apply(small.mul(a, b)), big.mul(e.apply(a), e.apply(b)));
                assert_eq!(e.apply(small.add(a, b)), big.add(e.apply(a), e.apply(b)));
            }
        }
        let k8 = Field::new(2, 3, None).unwrap();
        assert!(embed(&small, &k8).is_err());
    }

    #[test]
    fn parse_roundtrip() {
        let k = Field::parse("3^2/2,2,1").unwrap();
        assert_eq!(k.spec(), "3^2/2,2,1");
        for a in k.elements() {
            assert_eq!(k.parse_elem(&k.format(a)).unwrap(), a);
        }
        assert_eq!(k.parse_elem("w^2").unwrap(), k.pow(k.gen(), 2).unwrap());
        assert_eq!(Field::parse("7").unwrap().order(), 7);
    }
}
