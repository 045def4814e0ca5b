//! Univariate polynomials over a finite field.

use std::fmt;
use std::hash::{Hash, Hasher};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::gf::{FieldElem, FieldRef, GfError};
use crate::grouporder::factor_u128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomials over different fields")]
    MixedFields,
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Polynomial with coefficients stored constant-first, without trailing zeros.
#[derive(Clone)]
pub struct Poly {
    field: FieldRef,
    c: Vec<u32>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field.id() == other.field.id() && self.c == other.c
    }
}
impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.id().hash(state);
        self.c.hash(state);
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

fn trim(mut c: Vec<u32>) -> Vec<u32> {
    while c.last() == Some(&0) {
        c.pop();
    }
    c
}

impl Poly {
    pub fn from_raw(field: &FieldRef, c: Vec<u32>) -> Poly {
        Poly {
            field: field.clone(),
            c: trim(c),
        }
    }

    pub fn from_elems(field: &FieldRef, cs: &[FieldElem]) -> Poly {
        Self::from_raw(field, cs.iter().map(|e| e.raw()).collect())
    }

    /// Integer coefficients, constant first, reduced mod `p`.
    pub fn from_ints(field: &FieldRef, cs: &[i64]) -> Poly {
        Self::from_raw(field, cs.iter().map(|&c| field.from_int_raw(c)).collect())
    }

    pub fn zero(field: &FieldRef) -> Poly {
        Self::from_raw(field, Vec::new())
    }
    pub fn one(field: &FieldRef) -> Poly {
        Self::from_raw(field, vec![1])
    }
    /// The indeterminate `t`.
    pub fn t(field: &FieldRef) -> Poly {
        Self::from_raw(field, vec![0, 1])
    }
    pub fn constant(field: &FieldRef, e: FieldElem) -> Poly {
        Self::from_raw(field, vec![e.raw()])
    }
    /// `t - e`.
    pub fn linear(field: &FieldRef, e: FieldElem) -> Poly {
        Self::from_raw(field, vec![field.neg_raw(e.raw()), 1])
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.c == [1]
    }
    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }
    pub fn coeff(&self, i: usize) -> FieldElem {
        self.field.wrap(self.c.get(i).copied().unwrap_or(0))
    }
    pub fn coeffs(&self) -> Vec<FieldElem> {
        self.c.iter().map(|&r| self.field.wrap(r)).collect()
    }
    pub fn lead(&self) -> FieldElem {
        self.coeff(self.deg())
    }
    pub fn is_monic(&self) -> bool {
        self.c.last() == Some(&1)
    }

    fn same_field(&self, other: &Poly) -> Result<(), PolyError> {
        if self.field.id() == other.field.id() {
            Ok(())
        } else {
            Err(PolyError::MixedFields)
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        debug_assert_eq!(self.field.id(), o.field.id());
        let k = &self.field;
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| {
                k.add_raw(
                    self.c.get(i).copied().unwrap_or(0),
                    o.c.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        Self::from_raw(k, c)
    }

    pub fn neg(&self) -> Poly {
        let k = &self.field;
        Self::from_raw(k, self.c.iter().map(|&a| k.neg_raw(a)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        debug_assert_eq!(self.field.id(), o.field.id());
        let k = &self.field;
        if self.is_zero() || o.is_zero() {
            return Self::zero(k);
        }
        let mut c = vec![0u32; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = k.mul_add_raw(a, b, c[i + j]);
            }
        }
        Self::from_raw(k, c)
    }

    pub fn scale(&self, e: FieldElem) -> Poly {
        let k = &self.field;
        Self::from_raw(k, self.c.iter().map(|&a| k.mul_raw(a, e.raw())).collect())
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Quotient and remainder.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly), PolyError> {
        self.same_field(d)?;
        if d.is_zero() {
            return Err(GfError::DivisionByZero.into());
        }
        let k = &self.field;
        if self.c.len() < d.c.len() {
            return Ok((Self::zero(k), self.clone()));
        }
        let dl = d.c.len() - 1;
        let inv = k.inv_raw(d.c[dl]);
        let mut r = self.c.clone();
        let mut qt = vec![0u32; r.len() - dl];
        for i in (0..qt.len()).rev() {
            let coef = k.mul_raw(r[i + dl], inv);
            qt[i] = coef;
            if coef == 0 {
                continue;
            }
            let nc = k.neg_raw(coef);
            for j in 0..=dl {
                r[i + j] = k.mul_add_raw(nc, d.c[j], r[i + j]);
            }
        }
        r.truncate(dl);
        Ok((Self::from_raw(k, qt), Self::from_raw(k, r)))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).expect("nonzero divisor").1
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, o: &Poly) -> bool {
        o.rem(self).is_zero()
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead()).unwrap();
        self.scale(inv)
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let k = &self.field;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| k.mul_raw(a, k.from_int_raw(i as i64)))
            .collect();
        Self::from_raw(k, c)
    }

    pub fn eval(&self, b: FieldElem) -> FieldElem {
        let k = &self.field;
        debug_assert!(k.owns(b));
        let mut acc = 0;
        for &a in self.c.iter().rev() {
            acc = k.mul_add_raw(acc, b.raw(), a);
        }
        k.wrap(acc)
    }

    /// Checked evaluation: `b` must come from this polynomial's field.
    pub fn try_eval(&self, b: FieldElem) -> Result<FieldElem, GfError> {
        if !self.field.owns(b) {
            return Err(GfError::MixedFields);
        }
        Ok(self.eval(b))
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u128, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Self::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Map coefficients through a field embedding.
    pub fn lift(&self, e: &crate::gf::Embedding) -> Poly {
        Self::from_raw(e.target(), self.c.iter().map(|&r| e.apply_raw(r)).collect())
    }

    /// `t^d p(1/t)`.
    pub fn reciprocal(&self) -> Poly {
        let mut c = self.c.clone();
        c.reverse();
        Self::from_raw(&self.field, c)
    }

    /// True iff the reciprocal equals `self` up to a nonzero scalar.
    /// Odd degree or vanishing constant term give `false`.
    pub fn is_self_reciprocal(&self) -> bool {
        let d = match self.degree() {
            Some(d) => d,
            None => return false,
        };
        if d % 2 == 1 || self.c[0] == 0 {
            return false;
        }
        self.reciprocal().monic() == self.monic()
    }

    /// Coefficient-wise `p`-th root; valid when `self` is a `p`-th power.
    fn pth_root(&self) -> Poly {
        let k = &self.field;
        let p = k.p() as usize;
        let f = k.degree() as i128;
        let pf1 = (k.p() as i128).pow((f - 1) as u32);
        let c = self
            .c
            .iter()
            .step_by(p)
            .map(|&a| k.pow_raw(a, pf1).unwrap())
            .collect();
        Self::from_raw(k, c)
    }

    /// Squarefree decomposition of a monic polynomial: pairs `(g, m)` with
    /// `self = prod g^m`, the `g` squarefree and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, u32)> {
        let k = &self.field;
        let p = k.p() as u32;
        let mut out = Vec::new();
        let f = self.monic();
        if f.deg() == 0 {
            return out;
        }
        let mut c = f.gcd(&f.derivative());
        let mut w = f.div_exact(&c);
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let z = w.div_exact(&y);
            if !z.is_one() {
                out.push((z, i));
            }
            i += 1;
            w = y;
            c = c.div_exact(&w);
        }
        if !c.is_one() {
            for (g, m) in c.pth_root().squarefree_decomposition() {
                out.push((g, m * p));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    pub fn distinct_degree(&self) -> Vec<(Poly, usize)> {
        let k = &self.field;
        let q = k.order() as u128;
        let mut out = Vec::new();
        let mut f = self.monic();
        let t = Self::t(k);
        let mut h = t.rem(&f);
        let mut i = 1;
        while f.deg() >= 2 * i {
            h = h.powmod(q, &f);
            let g = h.sub(&t).gcd(&f);
            if !g.is_one() {
                f = f.div_exact(&g);
                h = h.rem(&f);
                out.push((g, i));
            }
            i += 1;
        }
        if f.deg() > 0 {
            let d = f.deg();
            out.push((f, d));
        }
        out
    }

    /// Split a monic squarefree product of irreducibles of degree `d`.
    pub fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
        let k = &self.field;
        let n = self.deg();
        if n == d {
            return vec![self.clone()];
        }
        let q = k.order() as u128;
        loop {
            let a = Self::from_raw(
                k,
                (0..n).map(|_| rng.gen_range(0..k.order() as u32)).collect(),
            );
            if a.deg() == 0 {
                continue;
            }
            let b = if k.p() == 2 {
                // absolute trace to GF(2) of a in F_q[t]/(f)
                let mut acc = a.clone();
                let mut cur = a.clone();
                for _ in 1..(k.degree() as usize * d) {
                    cur = cur.mul(&cur).rem(self);
                    acc = acc.add(&cur);
                }
                acc
            } else {
                // a^((q^d-1)/2) = (a^(1+q+...+q^(d-1)))^((q-1)/2)
                let mut norm = a.clone();
                let mut cur = a.clone();
                for _ in 1..d {
                    cur = cur.powmod(q, self);
                    norm = norm.mul(&cur).rem(self);
                }
                norm.powmod((q - 1) / 2, self).sub(&Self::one(k))
            };
            let g = b.gcd(self);
            if g.deg() > 0 && g.deg() < n {
                let h = self.div_exact(&g);
                let mut out = g.equal_degree(d, rng);
                out.extend(h.equal_degree(d, rng));
                return out;
            }
        }
    }

    fn seeded_rng(&self) -> ChaCha8Rng {
        let mut h = Sha256::new();
        h.update(self.field.spec().as_bytes());
        for c in &self.c {
            h.update(c.to_le_bytes());
        }
        let digest = h.finalize();
        let mut seed = [0u8; 32];
        seed.copy_from_slice(&digest[..32]);
        ChaCha8Rng::from_seed(seed)
    }

    /// Complete factorization into monic irreducibles.
    pub fn factor(&self) -> Result<Factorization, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let unit = self.lead();
        let mut rng = self.seeded_rng();
        let mut factors = Vec::new();
        for (g, m) in self.squarefree_decomposition() {
            for (h, d) in g.distinct_degree() {
                for irr in h.equal_degree(d, &mut rng) {
                    factors.push((irr, m));
                }
            }
        }
        factors.sort_by(|(a, ma), (b, mb)| {
            a.c.len()
                .cmp(&b.c.len())
                .then_with(|| a.c.iter().rev().cmp(b.c.iter().rev()))
                .then(ma.cmp(mb))
        });
        Ok(Factorization { unit, factors })
    }

    /// Rabin's test.
    pub fn is_irreducible(&self) -> bool {
        let d = match self.degree() {
            Some(0) | None => return false,
            Some(d) => d,
        };
        if d == 1 {
            return true;
        }
        let k = &self.field;
        let q = k.order() as u128;
        let f = self.monic();
        let t = Self::t(k);
        // frob[i] = t^(q^i) mod f
        let mut frob = vec![t.rem(&f)];
        for i in 1..=d {
            let next = frob[i - 1].powmod(q, &f);
            frob.push(next);
        }
        if frob[d] != t.rem(&f) {
            return false;
        }
        factor_u128(d as u128).into_iter().all(|(r, _)| {
            let e = d / r as usize;
            frob[e].sub(&t).gcd(&f).is_one()
        })
    }

    /// Coefficient list `c0,c1,...,cd` in field text form.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.c
            .iter()
            .map(|&r| self.field.format(self.field.wrap(r)))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Human-readable form, highest degree first, e.g. `t^2+2*t+1`.
    /// Coefficients outside the prime field are parenthesized.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let k = &self.field;
        let mut parts = Vec::new();
        for (i, &r) in self.c.iter().enumerate().rev() {
            if r == 0 {
                continue;
            }
            let e = k.wrap(r);
            let coef = match k.as_prime(e) {
                Some(v) => v.to_string(),
                None => format!("({})", k.format(e)),
            };
            let mon = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            parts.push(match (i, coef.as_str()) {
                (0, _) => coef,
                (_, "1") => mon,
                _ => format!("{coef}*{mon}"),
            });
        }
        parts.join("+")
    }
}

/// `unit * prod factor^mult`, factors monic irreducible in a canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElem,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self, field: &FieldRef) -> Poly {
        let mut acc = Poly::constant(field, self.unit);
        for (g, m) in &self.factors {
            acc = acc.mul(&g.pow(*m as u64));
        }
        acc
    }

    pub fn multiplicity_of(&self, g: &Poly) -> u32 {
        let g = g.monic();
        self.factors
            .iter()
            .find(|(h, _)| *h == g)
            .map_or(0, |(_, m)| *m)
    }

    pub fn pretty(&self) -> String {
        self.factors
            .iter()
            .map(|(g, m)| {
                if *m == 1 {
                    format!("({})", g.pretty())
                } else {
                    format!("({})^{m}", g.pretty())
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    fn fp(p: u64) -> FieldRef {
        Field::prime(p).unwrap()
    }

    #[test]
    fn eval_examples() {
        let f7 = fp(7);
        assert_eq!(
            Poly::from_ints(&f7, &[3, 0, 1]).eval(f7.one()),
            f7.from_int(4)
        );
        let f3 = fp(3);
        assert_eq!(
            Poly::from_ints(&f3, &[1, -1, 0, 1]).eval(f3.from_int(2)),
            f3.one()
        );
        assert!(Poly::zero(&f3).eval(f3.from_int(2)).is_zero());
    }

    #[test]
    fn factor_n4_commutator_polynomial_over_f7() {
        let f7 = fp(7);
        let chi = Poly::from_ints(&f7, &[1, 2, 1, 2, 4, 2, 1, 2, 1]);
        let fac = chi.factor().unwrap();
        // (t+1)^4 (t^2-t+1)^2, and t^2-t+1 = (t+2)(t+4) over GF(7)
        let lin = |c| Poly::from_ints(&f7, &[c, 1]);
        assert_eq!(fac.factors, vec![(lin(1), 4), (lin(2), 2), (lin(4), 2)]);
        assert_eq!(fac.expand(&f7), chi);
    }

    #[test]
    fn factor_two_binary_cubics() {
        let f2 = fp(2);
        let a = Poly::from_ints(&f2, &[1, 1, 0, 1]);
        let b = Poly::from_ints(&f2, &[1, 0, 1, 1]);
        let fac = a.mul(&b).factor().unwrap();
        assert_eq!(fac.factors, vec![(a, 1), (b, 1)]);
    }

    #[test]
    fn factor_handles_pth_powers() {
        let f3 = fp(3);
        let g = Poly::from_ints(&f3, &[1, 0, 1]);
        let h = Poly::from_ints(&f3, &[1, 1]);
        let f = g.pow(3).mul(&h.pow(4)).scale(f3.from_int(2));
        let fac = f.factor().unwrap();
        assert_eq!(fac.expand(&f3), f);
        assert_eq!(fac.multiplicity_of(&g), 3);
        assert_eq!(fac.multiplicity_of(&h), 4);
    }

    #[test]
    fn irreducibility_examples() {
        assert!(Poly::from_ints(&fp(2), &[1, 1, 0, 0, 1]).is_irreducible());
        assert!(!Poly::from_ints(&fp(3), &[-1, 0, 1]).is_irreducible());
        assert!(Poly::from_ints(&fp(3), &[2, 1, 1]).is_irreducible());
        // product of two quadratics has no roots but is reducible
        let f2 = fp(2);
        let q = Poly::from_ints(&f2, &[1, 1, 1]);
        assert!(!q.mul(&q).is_irreducible());
    }

    #[test]
    fn reciprocal_check() {
        let f5 = fp(5);
        let a = f5.from_int(2);
        let cs = [
            f5.one(),
            f5.neg(a),
            f5.zero(),
            a,
            f5.neg(f5.add(f5.mul(a, a), f5.one())),
            a,
            f5.zero(),
            f5.neg(a),
            f5.one(),
        ];
        assert!(Poly::from_elems(&f5, &cs).is_self_reciprocal());
        assert!(!Poly::from_ints(&f5, &[1, 1]).is_self_reciprocal());
        assert!(!Poly::from_ints(&f5, &[1, 2, 3]).is_self_reciprocal());
    }

    #[test]
    fn factor_over_extension_field() {
        let k = Field::new(2, 2, None).unwrap();
        // t^2 + t + 1 splits over GF(4)
        let f = Poly::from_ints(&k, &[1, 1, 1]);
        let fac = f.factor().unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert!(fac
            .factors
            .iter()
            .all(|(g, m)| g.degree() == Some(1) && *m == 1));
        assert_eq!(fac.expand(&k), f);
    }
}
