//! Parameter conditions on `a` and the search for admissible values.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Deserialize;

use crate::construct::{field_of_order, resolve_a};
use crate::expr::{Env, Expr};
use crate::gf::{campo_n_bound, FieldElem, FieldRef};

use super::ClaimError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Choice {
    pub q: Vec<u64>,
    pub a: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lemma {
    #[serde(skip)]
    pub id: String,
    pub label: String,
    #[serde(default)]
    pub char: Option<Parity>,
    #[serde(default)]
    pub exclude_q: Vec<u64>,
    #[serde(default)]
    pub nonzero: Vec<String>,
    #[serde(default)]
    pub generates: Vec<String>,
    #[serde(default)]
    pub include: Vec<String>,
    #[serde(default)]
    pub choices: Vec<Choice>,
    #[serde(default)]
    pub exists_for: Vec<u64>,
    #[serde(default)]
    pub none_for: Vec<u64>,
}

fn registry() -> &'static BTreeMap<String, Lemma> {
    static R: OnceLock<BTreeMap<String, Lemma>> = OnceLock::new();
    R.get_or_init(|| {
        let mut m: BTreeMap<String, Lemma> =
            toml::from_str(include_str!("../../data/lemmas.toml")).expect("bundled lemma table");
        for (k, v) in m.iter_mut() {
            v.id = k.clone();
        }
        m
    })
}

pub fn lemma_ids() -> Vec<&'static str> {
    registry().keys().map(|k| k.as_str()).collect()
}

pub fn lemma(id: &str) -> Result<&'static Lemma, ClaimError> {
    registry()
        .get(id)
        .ok_or_else(|| ClaimError::UnknownLemma(id.into()))
}

/// A lemma with its `include`s flattened.
#[derive(Clone, Debug)]
pub struct Conditions {
    pub parities: Vec<Parity>,
    pub exclude_q: Vec<u64>,
    pub nonzero: Vec<Expr>,
    pub generates: Vec<Expr>,
}

impl Lemma {
    pub fn conditions(&self) -> Result<Conditions, ClaimError> {
        let mut c = Conditions {
            parities: Vec::new(),
            exclude_q: Vec::new(),
            nonzero: Vec::new(),
            generates: Vec::new(),
        };
        self.collect(&mut c, 0)?;
        Ok(c)
    }

    fn collect(&self, c: &mut Conditions, depth: usize) -> Result<(), ClaimError> {
        if depth > 8 {
            return Err(ClaimError::Data(format!("include cycle at {}", self.id)));
        }
        for inc in &self.include {
            lemma(inc)?.collect(c, depth + 1)?;
        }
        c.parities.extend(self.char);
        c.exclude_q.extend(&self.exclude_q);
        let parse =
            |s: &String| Expr::parse(s).map_err(|e| ClaimError::Data(format!("{}: {e}", self.id)));
        for s in &self.nonzero {
            c.nonzero.push(parse(s)?);
        }
        for s in &self.generates {
            c.generates.push(parse(s)?);
        }
        Ok(())
    }
}

impl Conditions {
    /// Whether the lemma's standing assumptions cover `GF(q)`.
    pub fn applies(&self, field: &FieldRef) -> bool {
        let odd = field.p() > 2;
        !self.exclude_q.contains(&field.order())
            && self.parities.iter().all(|p| match p {
                Parity::Odd => odd,
                Parity::Even => !odd,
            })
    }

    pub fn admits(&self, field: &FieldRef, a: FieldElem) -> Result<bool, ClaimError> {
        if a.is_zero() {
            return Ok(false);
        }
        let env = Env::new(field).with("a", a);
        for e in &self.nonzero {
            if env.eval_elem(e)?.is_zero() {
                return Ok(false);
            }
        }
        for g in &self.generates {
            if field.subfield_degree(env.eval_elem(g)?) != field.degree() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `GF(q)^*` as powers of the least primitive element.
pub fn enumeration(field: &FieldRef) -> Vec<FieldElem> {
    let g = field.primitive();
    let mut out = Vec::with_capacity(field.order() as usize - 1);
    let mut b = field.one();
    for _ in 1..field.order() {
        out.push(b);
        b = field.mul(b, g);
    }
    out
}

/// All admissible `a` in `GF(q)^*`, in enumeration order.
pub fn search_parameter(lemma_id: &str, q: u64) -> Result<(FieldRef, Vec<FieldElem>), ClaimError> {
    let lem = lemma(lemma_id)?;
    let field = field_of_order(q)?;
    let c = lem.conditions()?;
    if !c.applies(&field) {
        return Err(ClaimError::NotApplicable(format!(
            "{} does not cover q = {q}",
            lem.id
        )));
    }
    let mut out = Vec::new();
    for b in enumeration(&field) {
        if c.admits(&field, b)? {
            out.push(b);
        }
    }
    Ok((field, out))
}

/// The elements a named choice stands for: every root of a minimal
/// polynomial, every primitive element, or a single value.
pub fn choice_values(field: &FieldRef, spec: &str) -> Result<Vec<FieldElem>, ClaimError> {
    if spec == "primitive" {
        let n = field.order() - 1;
        return Ok(enumeration(field)
            .into_iter()
            .filter(|&b| field.mult_order(b).map(|o| o == n).unwrap_or(false))
            .collect());
    }
    if let Some(rest) = spec.strip_prefix("minpoly:") {
        let cs: Vec<i64> = rest
            .split(',')
            .map(|c| c.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|_| ClaimError::Data(format!("bad minimal polynomial {spec}")))?;
        let prime = crate::gf::Field::prime(field.p())?;
        if !crate::poly::Poly::from_ints(&prime, &cs).is_irreducible() {
            return Err(ClaimError::Data(format!(
                "{spec} is reducible over GF({})",
                field.p()
            )));
        }
        let f = crate::poly::Poly::from_ints(field, &cs);
        let roots: Vec<FieldElem> = field.elements().filter(|&b| f.eval(b).is_zero()).collect();
        if roots.is_empty() {
            return Err(ClaimError::Data(format!(
                "{} has no root in GF({})",
                f.pretty(),
                field.order()
            )));
        }
        return Ok(roots);
    }
    Ok(vec![resolve_a(field, spec)?])
}

/// `N(q)`: the number of `b` in `GF(q)^*` with `GF(p)[g(b)] != GF(q)`.
pub fn campo_count(field: &FieldRef, g: &Expr) -> Result<u64, ClaimError> {
    let mut n = 0;
    let mut env = Env::new(field);
    for b in enumeration(field) {
        env.set("a", b);
        if field.subfield_degree(env.eval_elem(g)?) != field.degree() {
            n += 1;
        }
    }
    Ok(n)
}

/// Degree of `g` as a polynomial in `a` over the prime field, when `g` is
/// monic with `g(0) = 0`; `None` otherwise.
pub fn campo_degree(g: &Expr, p: u64) -> Result<Option<usize>, ClaimError> {
    let k = crate::gf::Field::prime(p)?;
    let poly = Env::new(&k).with_indeterminate("a").eval(g)?;
    let ok = poly.is_monic() && poly.coeff(0).is_zero();
    Ok(if ok { poly.degree() } else { None })
}

/// The bound of the counting lemma for `g` over `GF(q)`, if it applies.
pub fn campo_bound(g: &Expr, field: &FieldRef) -> Result<Option<u64>, ClaimError> {
    match campo_degree(g, field.p())? {
        Some(s) if s >= 2 && field.degree() > 1 => {
            Ok(Some(campo_n_bound(s as u64, field.p(), field.degree())))
        }
        _ => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_loads_and_includes_resolve() {
        for id in lemma_ids() {
            lemma(id).unwrap().conditions().unwrap();
        }
        assert!(matches!(lemma("nope"), Err(ClaimError::UnknownLemma(_))));
    }

    #[test]
    fn g9_has_no_solution_at_seven() {
        let (_, v) = search_parameter("G9", 7).unwrap();
        assert!(v.is_empty());
    }

    #[test]
    fn m_eq_h_admits_one_at_seven() {
        let (k, v) = search_parameter("M=H", 7).unwrap();
        assert!(v.contains(&k.one()));
    }

    #[test]
    fn parity_is_enforced() {
        assert!(matches!(
            search_parameter("G9", 8),
            Err(ClaimError::NotApplicable(_))
        ));
        assert!(matches!(
            search_parameter("G11", 9),
            Err(ClaimError::NotApplicable(_))
        ));
    }

    #[test]
    fn enumeration_covers_the_group() {
        let k = field_of_order(9).unwrap();
        let mut v: Vec<u32> = enumeration(&k).iter().map(|b| b.raw()).collect();
        v.sort();
        v.dedup();
        assert_eq!(v.len(), 8);
    }

    #[test]
    fn campo_degree_of_lemma_polynomials() {
        assert_eq!(
            campo_degree(&Expr::parse("a^3(a+2)").unwrap(), 3).unwrap(),
            Some(4)
        );
        assert_eq!(
            campo_degree(&Expr::parse("a^3+a").unwrap(), 2).unwrap(),
            Some(3)
        );
        assert_eq!(
            campo_degree(&Expr::parse("a^2+1").unwrap(), 3).unwrap(),
            None
        );
    }
}
