//! Integer factorization, orders of `Sp_2n(q)` and `SL_n(q)`, element orders,
//! prime sets, the prime-set generation certificate and a brute-force closure.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use thiserror::Error;

use crate::matrix::{Mat, MatError};
use crate::poly::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("integer overflow while evaluating {0}")]
    Overflow(String),
    #[error("closure exceeded the cap of {0} elements")]
    CapExceeded(u64),
    #[error("parameters outside the range where the certificate applies: {0}")]
    OutOfRange(String),
    #[error("order verification failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Matrix(#[from] MatError),
}

// ---------------------------------------------------------------------------
// integer arithmetic

fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    if a >= m - b {
        a - (m - b)
    } else {
        a + b
    }
}

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return (a % m) * (b % m) % m;
    }
    let (mut a, mut b) = (a % m, b % m);
    let mut r = 0;
    while b > 0 {
        if b & 1 == 1 {
            r = add_mod(r, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    r
}

fn pow_mod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

const SMALL_PRIMES: [u128; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Miller-Rabin. The first 12 prime bases are a proof below `3.3e24`, which
/// covers every value this crate produces; beyond that 20 bases are used.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'bases: for &a in &SMALL_PRIMES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u128) -> u128 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u128;
    loop {
        let f = |x: u128| add_mod(mul_mod(x, x, n), c, n);
        let (mut x, mut y, mut d) = (2u128, 2u128, 1u128);
        while d == 1 {
            // batch gcds over 64 steps
            let mut prod = 1u128;
            let (x0, y0) = (x, y);
            for _ in 0..64 {
                x = f(x);
                y = f(f(y));
                prod = mul_mod(prod, x.abs_diff(y), n);
            }
            d = gcd_u128(prod, n);
            if d == n {
                // backtrack one step at a time
                let (mut x, mut y) = (x0, y0);
                loop {
                    x = f(x);
                    y = f(f(y));
                    d = gcd_u128(x.abs_diff(y), n);
                    if d != 1 {
                        break;
                    }
                }
            }
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization as sorted `(prime, exponent)` pairs.
pub fn factor_u128(mut n: u128) -> Vec<(u128, u32)> {
    let mut out: BTreeMap<u128, u32> = BTreeMap::new();
    if n == 0 {
        return Vec::new();
    }
    let mut p = 2u128;
    while p < 10_000 && p * p <= n {
        while n.is_multiple_of(p) {
            *out.entry(p).or_default() += 1;
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            *out.entry(m).or_default() += 1;
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    out.into_iter().collect()
}

// ---------------------------------------------------------------------------
// factored integers

/// Positive integer as a prime -> exponent map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FactoredInt(pub BTreeMap<u128, u32>);

impl FactoredInt {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_u128(n: u128) -> Self {
        assert!(n > 0, "zero has no factorization");
        FactoredInt(factor_u128(n).into_iter().collect())
    }

    pub fn prime_power(p: u128, e: u32) -> Self {
        let mut m = BTreeMap::new();
        if e > 0 {
            m.insert(p, e);
        }
        FactoredInt(m)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut m = self.0.clone();
        for (&p, &e) in &o.0 {
            *m.entry(p).or_default() += e;
        }
        FactoredInt(m)
    }

    pub fn lcm(&self, o: &Self) -> Self {
        let mut m = self.0.clone();
        for (&p, &e) in &o.0 {
            let x = m.entry(p).or_default();
            *x = (*x).max(e);
        }
        FactoredInt(m)
    }

    pub fn divides(&self, o: &Self) -> bool {
        self.0
            .iter()
            .all(|(p, e)| o.0.get(p).is_some_and(|f| f >= e))
    }

    /// `self / p`, assuming `p` divides.
    pub fn div_prime(&self, p: u128) -> Self {
        let mut m = self.0.clone();
        let e = m.get_mut(&p).expect("prime must divide");
        *e -= 1;
        if *e == 0 {
            m.remove(&p);
        }
        FactoredInt(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn primes(&self) -> PrimeSet {
        PrimeSet(self.0.keys().copied().collect())
    }

    /// The value, if it fits in a `u128`.
    pub fn value(&self) -> Option<u128> {
        let mut v: u128 = 1;
        for (&p, &e) in &self.0 {
            for _ in 0..e {
                v = v.checked_mul(p)?;
            }
        }
        Some(v)
    }

    pub fn exponent(&self, p: u128) -> u32 {
        self.0.get(&p).copied().unwrap_or(0)
    }

    /// All prime factors with multiplicity, ascending.
    pub fn prime_sequence(&self) -> Vec<u128> {
        self.0
            .iter()
            .flat_map(|(&p, &e)| std::iter::repeat_n(p, e as usize))
            .collect()
    }
}

impl fmt::Display for FactoredInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(p, e)| {
                if *e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl Serialize for FactoredInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (p, e) in &self.0 {
            m.serialize_entry(&p.to_string(), e)?;
        }
        m.end()
    }
}

/// Sorted set of primes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PrimeSet(pub BTreeSet<u128>);

impl PrimeSet {
    pub fn union(&self, o: &Self) -> Self {
        PrimeSet(self.0.union(&o.0).copied().collect())
    }
    pub fn is_subset(&self, o: &Self) -> bool {
        self.0.is_subset(&o.0)
    }
    pub fn difference(&self, o: &Self) -> Self {
        PrimeSet(self.0.difference(&o.0).copied().collect())
    }
    pub fn contains(&self, p: u128) -> bool {
        self.0.contains(&p)
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn to_vec(&self) -> Vec<u128> {
        self.0.iter().copied().collect()
    }
}

impl<const N: usize> From<[u128; N]> for PrimeSet {
    fn from(a: [u128; N]) -> Self {
        PrimeSet(a.into_iter().collect())
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for PrimeSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        // primes beyond u64 are written as strings
        let v: Vec<serde_json::Value> = self
            .0
            .iter()
            .map(|&p| match u64::try_from(p) {
                Ok(x) => serde_json::Value::from(x),
                Err(_) => serde_json::Value::from(p.to_string()),
            })
            .collect();
        v.serialize(s)
    }
}

// ---------------------------------------------------------------------------
// cyclotomic values and group orders

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Integer coefficients of the cyclotomic polynomial, constant first.
fn cyclotomic_coeffs(d: u32) -> Vec<i128> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<i128>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().unwrap().get(&d) {
        return c.clone();
    }
    // t^d - 1 divided by the lower cyclotomic factors
    let mut num = vec![0i128; d as usize + 1];
    num[0] = -1;
    num[d as usize] = 1;
    for e in divisors(d) {
        if e == d {
            continue;
        }
        let den = cyclotomic_coeffs(e);
        let dl = den.len() - 1;
        let mut quot = vec![0i128; num.len() - dl];
        for i in (0..quot.len()).rev() {
            let c = num[i + dl];
            quot[i] = c;
            for j in 0..=dl {
                num[i + j] -= c * den[j];
            }
        }
        num = quot;
    }
    cache.lock().unwrap().insert(d, num.clone());
    num
}

/// `Phi_d(q)`.
pub fn cyclotomic_value(d: u32, q: u64) -> Result<u128, GroupError> {
    let c = cyclotomic_coeffs(d);
    let mut acc: i128 = 0;
    let ovf = || GroupError::Overflow(format!("Phi_{d}({q})"));
    for &a in c.iter().rev() {
        acc = acc
            .checked_mul(q as i128)
            .ok_or_else(ovf)?
            .checked_add(a)
            .ok_or_else(ovf)?;
    }
    u128::try_from(acc).map_err(|_| ovf())
}

/// `q^d - 1`, factored through its cyclotomic pieces.
pub fn factor_q_pow_minus_one(q: u64, d: u32) -> Result<FactoredInt, GroupError> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), FactoredInt>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&(q, d)) {
        return Ok(v.clone());
    }
    let mut acc = FactoredInt::one();
    for e in divisors(d) {
        let v = cyclotomic_value(e, q)?;
        acc = acc.mul(&FactoredInt::from_u128(v));
    }
    cache.lock().unwrap().insert((q, d), acc.clone());
    Ok(acc)
}

/// `(p, f)` with `q = p^f`.
pub fn prime_power_parts(q: u64) -> Result<(u64, u32), GroupError> {
    let fac = factor_u128(q as u128);
    match fac.as_slice() {
        [(p, f)] => Ok((*p as u64, *f)),
        _ => Err(GroupError::BadParam(format!("{q} is not a prime power"))),
    }
}

/// `|Sp_2n(q)| = q^(n^2) prod_{i=1..n} (q^(2i) - 1)`.
pub fn order_sp(n: u32, q: u64) -> Result<FactoredInt, GroupError> {
    if n == 0 {
        return Err(GroupError::BadParam("n must be positive".into()));
    }
    let (p, f) = prime_power_parts(q)?;
    let mut acc = FactoredInt::prime_power(p as u128, f * n * n);
    for i in 1..=n {
        acc = acc.mul(&factor_q_pow_minus_one(q, 2 * i)?);
    }
    Ok(acc)
}

/// `|SL_n(q)| = q^(n(n-1)/2) prod_{i=2..n} (q^i - 1)`.
pub fn order_sl(n: u32, q: u64) -> Result<FactoredInt, GroupError> {
    if n == 0 {
        return Err(GroupError::BadParam("n must be positive".into()));
    }
    let (p, f) = prime_power_parts(q)?;
    let mut acc = FactoredInt::prime_power(p as u128, f * n * (n - 1) / 2);
    for i in 2..=n {
        acc = acc.mul(&factor_q_pow_minus_one(q, i)?);
    }
    Ok(acc)
}

pub fn prime_set(order: &FactoredInt) -> PrimeSet {
    order.primes()
}

// ---------------------------------------------------------------------------
// element orders

/// `g^N` for a factored exponent.
pub fn mat_pow_factored(g: &Mat, n: &FactoredInt) -> Mat {
    let mut h = g.clone();
    for (&p, &e) in &n.0 {
        for _ in 0..e {
            h = h.pow_u128(p);
        }
    }
    h
}

fn poly_pow_factored(h: &Poly, n: &FactoredInt, m: &Poly) -> Poly {
    let mut acc = h.rem(m);
    for (&p, &e) in &n.0 {
        for _ in 0..e {
            acc = acc.powmod(p, m);
        }
    }
    acc
}

/// Multiplicative order of `t` modulo an irreducible `f != t`.
pub fn order_of_t_mod(f: &Poly) -> Result<FactoredInt, GroupError> {
    let k = f.field();
    let d = f.degree().unwrap_or(0) as u32;
    if d == 0 || f.coeff(0).is_zero() {
        return Err(GroupError::BadParam(
            "need an irreducible factor other than t".into(),
        ));
    }
    if d == 1 {
        let root = k.neg(f.monic().coeff(0));
        return Ok(FactoredInt::from_u128(k.mult_order(root).unwrap() as u128));
    }
    let big = factor_q_pow_minus_one(k.order(), d)?;
    let t = Poly::t(k);
    let one = Poly::one(k);
    let mut ord = FactoredInt::one();
    for (&l, &e) in &big.0 {
        let mut rest = big.clone();
        for _ in 0..e {
            rest = rest.div_prime(l);
        }
        let mut h = poly_pow_factored(&t, &rest, f);
        let mut k_exp = 0;
        while h != one {
            h = h.powmod(l, f);
            k_exp += 1;
            if k_exp > e {
                return Err(GroupError::Inconsistent("order of t exceeds q^d-1".into()));
            }
        }
        ord = ord.mul(&FactoredInt::prime_power(l, k_exp));
    }
    Ok(ord)
}

/// Exact order of an invertible matrix.
pub fn element_order(g: &Mat) -> Result<FactoredInt, GroupError> {
    if !g.is_square() {
        return Err(MatError::NotSquare.into());
    }
    let k = g.field().clone();
    let p = k.p() as u128;
    let chi = g.char_poly()?;
    if chi.coeff(0).is_zero() {
        return Err(MatError::Singular.into());
    }
    let fac = chi.factor().expect("char poly is nonzero");
    let mut semisimple = FactoredInt::one();
    let mut max_mult = 1;
    for (f, m) in &fac.factors {
        max_mult = max_mult.max(*m);
        semisimple = semisimple.lcm(&order_of_t_mod(f)?);
    }
    let mut bound = 0u32;
    while p.pow(bound) < max_mult as u128 {
        bound += 1;
    }
    let ident = Mat::identity(&k, g.rows());
    let mut h = mat_pow_factored(g, &semisimple);
    let mut j = 0;
    while h != ident {
        h = h.pow_u128(p);
        j += 1;
        if j > bound {
            return Err(GroupError::Inconsistent(
                "unipotent part exceeds the multiplicity bound".into(),
            ));
        }
    }
    let n = semisimple.mul(&FactoredInt::prime_power(p, j));
    for &l in n.0.keys() {
        if mat_pow_factored(g, &n.div_prime(l)) == ident {
            return Err(GroupError::Inconsistent(format!("g^(N/{l}) = I")));
        }
    }
    Ok(n)
}

/// Primes dividing the order of `g`.
pub fn varpi(g: &Mat) -> Result<PrimeSet, GroupError> {
    Ok(element_order(g)?.primes())
}

/// Order by repeated multiplication, giving up after `limit` steps.
pub fn naive_order(g: &Mat, limit: u64) -> Option<u64> {
    let ident = Mat::identity(g.field(), g.rows());
    let mut h = g.clone();
    for i in 1..=limit {
        if h == ident {
            return Some(i);
        }
        h = &h * g;
    }
    None
}

// ---------------------------------------------------------------------------
// generation certificate

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GroupKind {
    Sp,
    Sl,
}

/// Target group: `Sp_2n(q)` (with `n` the half-dimension) or `SL_n(q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Target {
    pub kind: GroupKind,
    pub n: u32,
    pub q: u64,
}

impl Target {
    pub fn sp(n: u32, q: u64) -> Self {
        Target {
            kind: GroupKind::Sp,
            n,
            q,
        }
    }
    pub fn sl(n: u32, q: u64) -> Self {
        Target {
            kind: GroupKind::Sl,
            n,
            q,
        }
    }
    pub fn dim(&self) -> usize {
        match self.kind {
            GroupKind::Sp => 2 * self.n as usize,
            GroupKind::Sl => self.n as usize,
        }
    }
    pub fn order(&self) -> Result<FactoredInt, GroupError> {
        match self.kind {
            GroupKind::Sp => order_sp(self.n, self.q),
            GroupKind::Sl => order_sl(self.n, self.q),
        }
    }
    pub fn name(&self) -> String {
        match self.kind {
            GroupKind::Sp => format!("Sp{}({})", 2 * self.n, self.q),
            GroupKind::Sl => format!("SL{}({})", self.n, self.q),
        }
    }
    /// Both `n` and `q` even in the symplectic case: a prime-set match alone
    /// leaves the minus-type orthogonal subgroup open.
    pub fn needs_form_obstruction(&self) -> bool {
        self.kind == GroupKind::Sp && self.n.is_multiple_of(2) && self.q.is_multiple_of(2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Certificate {
    Certified,
    /// Prime sets agree but the even/even orthogonal exception is not excluded.
    ExceptionPossible,
    /// Some primes of the target are not witnessed.
    Inconclusive {
        missing: PrimeSet,
    },
}

/// Decide generation from the prime sets of witnesses.
///
/// `form_obstructed` must be `Some(true)` in the even/even symplectic case
/// to reach [`Certificate::Certified`].
pub fn lps_certificate(
    target: Target,
    witnesses: &[Mat],
    form_obstructed: Option<bool>,
) -> Result<(Certificate, PrimeSet), GroupError> {
    match target.kind {
        GroupKind::Sl if target.n < 5 || (target.n == 6 && target.q == 2) => {
            return Err(GroupError::OutOfRange(target.name()))
        }
        GroupKind::Sp if target.n < 4 => return Err(GroupError::OutOfRange(target.name())),
        _ => {}
    }
    let mut seen = PrimeSet::default();
    for w in witnesses {
        if w.rows() != target.dim() || !w.is_square() {
            return Err(MatError::ShapeMismatch.into());
        }
        seen = seen.union(&varpi(w)?);
    }
    let full = target.order()?.primes();
    if !seen.is_subset(&full) {
        return Err(GroupError::Inconsistent(format!(
            "witness primes {seen} not inside {full}"
        )));
    }
    let cert = if seen != full {
        Certificate::Inconclusive {
            missing: full.difference(&seen),
        }
    } else if target.needs_form_obstruction() && form_obstructed != Some(true) {
        Certificate::ExceptionPossible
    } else {
        Certificate::Certified
    };
    Ok((cert, seen))
}

// ---------------------------------------------------------------------------
// brute-force closure

pub const DEFAULT_CAP: u64 = 5_000_000;

/// Order of the group generated by `gens`, by breadth-first search.
pub fn closure_bfs(gens: &[Mat], cap: u64) -> Result<u64, GroupError> {
    let first = match gens.first() {
        Some(g) => g,
        None => return Ok(1),
    };
    if gens
        .iter()
        .any(|g| !g.is_square() || g.rows() != first.rows())
    {
        return Err(MatError::ShapeMismatch.into());
    }
    let ident = Mat::identity(first.field(), first.rows());
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    seen.insert(ident.to_bytes());
    let mut frontier = vec![ident];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for g in gens {
                let m = h * g;
                if seen.insert(m.to_bytes()) {
                    if seen.len() as u64 > cap {
                        return Err(GroupError::CapExceeded(cap));
                    }
                    next.push(m);
                }
            }
        }
        frontier = next;
    }
    Ok(seen.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_and_factoring() {
        assert!(is_prime(2) && is_prime(97) && !is_prime(1) && !is_prime(91));
        assert!(is_prime(18446744073709551557));
        assert_eq!(factor_u128(360), vec![(2, 3), (3, 2), (5, 1)]);
        let big = 1_000_000_007u128 * 998_244_353u128;
        assert_eq!(factor_u128(big), vec![(998_244_353, 1), (1_000_000_007, 1)]);
    }

    #[test]
    fn cyclotomic_values() {
        assert_eq!(cyclotomic_value(1, 7).unwrap(), 6);
        assert_eq!(cyclotomic_value(6, 2).unwrap(), 3);
        assert_eq!(cyclotomic_value(12, 3).unwrap(), 73);
    }

    #[test]
    fn sp8_2_order() {
        let o = order_sp(4, 2).unwrap();
        assert_eq!(o.value(), Some(47_377_612_800));
        assert_eq!(o.to_string(), "2^16*3^5*5^2*7*17");
    }

    #[test]
    fn sl_orders() {
        assert!(order_sl(1, 9).unwrap().is_one());
        assert_eq!(order_sl(2, 3).unwrap().value(), Some(24));
        assert_eq!(order_sl(3, 5).unwrap().value(), Some(372_000));
    }

    #[test]
    fn sp12_2_primes() {
        let s = order_sp(6, 2).unwrap().primes();
        assert_eq!(s, PrimeSet::from([2, 3, 5, 7, 11, 13, 17, 31]));
    }

    #[test]
    fn large_symplectic_order_stays_factored() {
        let o = order_sp(14, 7).unwrap();
        assert_eq!(o.exponent(7), 196);
        assert!(o.value().is_none());
    }

    #[test]
    fn prime_set_json() {
        let s = PrimeSet::from([3, 2]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[2,3]");
        let f = FactoredInt::from_u128(12);
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"2":2,"3":1}"#);
    }
}
