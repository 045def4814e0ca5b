//! Parameter conditions, trace identities and quadratic forms.

use crate::construct::{field_of_order, Recipe};

use super::super::lemmas::{
    campo_bound as bound_for, campo_count, choice_values, lemma, lemma_ids, search_parameter,
};
use super::super::quadform::{quadratic_form_obstruction, FormResult};
use super::super::{Checks, ClaimError};
use super::*;

/// `GF(2)` has no proper subfield, so the trace identities start at 3.
const SMALL_Q: [u64; 10] = [3, 4, 5, 7, 8, 9, 11, 13, 16, 25];

/// `tr(word) = want` on the pair built with the default recipe, over the
/// listed fields, for `a` spread over `GF(q)^*`.
fn trace_identity(
    c: &mut Checks,
    n: usize,
    qs: &[u64],
    word: &str,
    want: &str,
) -> Result<(), ClaimError> {
    for (k, a) in instances(qs, 4)? {
        let t = format!("n={n} {}", tag(&k, a));
        let Some(pr) = c.attempt(format!("{t}: construction"), pair(n, &k, a)) else {
            continue;
        };
        let mut sc = scope(&pr);
        sc.define("tau", &format!("[x,y]^{}", if n == 9 { 12 } else { 1 }))?;
        let got = sc.eval_str(word)?.trace();
        check_elem(
            c,
            format!("{t}: tr({word}) = {want}"),
            &k,
            elem(&k, a, want)?,
            got,
        );
    }
    Ok(())
}

fn odd(qs: &[u64]) -> Vec<u64> {
    qs.iter().copied().filter(|q| q % 2 == 1).collect()
}

fn even(qs: &[u64]) -> Vec<u64> {
    qs.iter().copied().filter(|q| q % 2 == 0).collect()
}

pub(super) fn subfield() -> Result<Checks, ClaimError> {
    let mut c = Checks::new();
    trace_identity(&mut c, 4, &SMALL_Q, "x y", "a")?;
    Ok(c)
}

pub(super) fn subfield5() -> Result<Checks, ClaimError> {
    let mut c = Checks::new();
    trace_identity(&mut c, 5, &SMALL_Q, "(x y)^5", "-5a^2-1")?;
    trace_identity(&mut c, 5, &SMALL_Q, "(x y)^8", "-8a^2-5")?;
    Ok(c)
}

pub(super) fn subfield6() -> Result<Checks, ClaimError> {
    let mut c = Checks::new();
    let qs: Vec<u64> = SMALL_Q.iter().copied().filter(|&q| q != 4).collect();
    trace_identity(&mut c, 6, &qs, "x y", "a")?;
    Ok(c)
}

pub(super) fn subfield7() -> Result<Checks, ClaimError> {
    let mut c = Checks::new();
    trace_identity(&mut c, 7, &even(&SMALL_Q), "x y", "a+1")?;
    trace_identity(&mut c, 7, &odd(&SMALL_Q), "x y", "a")?;
    Ok(c)
}

pub(super) fn subfield8() -> Result<Checks, ClaimError> {
    let mut c = Checks::new();
    trace_identity(&mut c, 8, &even(&SMALL_Q), "(x y)^9", "a^2")?;
    trace_identity(&mut c, 8, &odd(&SMALL_Q), "(x y)^8", "8a^2-1")?;
    Ok(c)
}

pub(super) fn subfield9_2() -> Result<Checks, ClaimError> {
    let mut c = Checks::new();
    trace_identity(&mut c, 9, &even(&SMALL_Q), "(x y)^3", "a^3+a+1")?;
    Ok(c)
}

pub(super) fn subfield9_odd() -> Result<Checks, ClaimError> {
    let mut c = Checks::new();
    trace_identity(&mut c, 9, &odd(&SMALL_Q), "tau tau^y", "-4a^4-8a^3+18")?;
    Ok(c)
}

pub(super) fn subfield11() -> Result<Checks, ClaimError> {
    let mut c = Checks::new();
    trace_identity(&mut c, 11, &even(&SMALL_Q), "x y", "a+1")?;
    trace_identity(&mut c, 11, &odd(&SMALL_Q), "x y", "a")?;
    Ok(c)
}

pub(super) fn quadform(n: usize) -> Result<Checks, ClaimError> {
    let cases: &[(Recipe, u64)] = match n {
        4 => &[(Recipe::General, 4), (Recipe::General, 8)],
        5 => &[(Recipe::N5, 4)],
        8 => &[(Recipe::General, 2), (Recipe::N8Alt, 4)],
        6 | 7 | 9 | 11 => &[(Recipe::General, 2), (Recipe::General, 4)],
        _ => {
            return Err(ClaimError::NotApplicable(format!(
                "no quadratic form claim for n = {n}"
            )))
        }
    };
    let mut c = Checks::new();
    for &(recipe, q) in cases {
        let k = field(q)?;
        for a in samples(&k, 3) {
            let t = format!("{recipe} {}", tag(&k, a));
            let Some(pr) = c.attempt(format!("{t}: construction"), pair_with(recipe, n, &k, a))
            else {
                continue;
            };
            let r = quadratic_form_obstruction(&pr)?;
            let got = match r {
                FormResult::Inconsistent => "inconsistent",
                FormResult::FormFound { .. } => "form found",
            };
            c.eq(
                format!("{t}: invariant quadratic form"),
                "inconsistent",
                got,
            );
        }
    }
    Ok(c)
}

/// Prime powers up to 49 that are not prime.
fn proper_prime_powers() -> Vec<u64> {
    vec![4, 8, 9, 16, 25, 27, 32, 49]
}

pub(super) fn campo_bound() -> Result<Checks, ClaimError> {
    let mut c = Checks::new();
    for id in lemma_ids() {
        let conds = lemma(id)?.conditions()?;
        for g in &conds.generates {
            for q in proper_prime_powers() {
                let k = field_of_order(q)?;
                if !conds.applies(&k) {
                    continue;
                }
                let Some(bound) = bound_for(g, &k)? else {
                    continue;
                };
                let count = campo_count(&k, g)?;
                c.push(
                    format!("{id} q={q}: non-generating values of {g:?}"),
                    format!("<= {bound}"),
                    count,
                    count <= bound,
                );
            }
        }
    }
    Ok(c)
}

pub(super) fn conditions(id: &str) -> Result<Checks, ClaimError> {
    let lem = lemma(id)?;
    let mut c = Checks::new();
    for ch in &lem.choices {
        for &q in &ch.q {
            let Some((k, found)) = c.attempt(format!("q={q}: search"), search_parameter(id, q))
            else {
                continue;
            };
            let Some(vals) = c.attempt(
                format!("q={q}: values of {}", ch.a),
                choice_values(&k, &ch.a),
            ) else {
                continue;
            };
            let missing: Vec<String> = vals
                .iter()
                .filter(|v| !found.contains(v))
                .map(|&v| k.format(v))
                .collect();
            c.push(
                format!("q={q}: a = {} is admissible", ch.a),
                "[]",
                format!("[{}]", missing.join(",")),
                missing.is_empty(),
            );
        }
    }
    for &q in &lem.exists_for {
        if let Some((_, found)) = c.attempt(format!("q={q}: search"), search_parameter(id, q)) {
            c.push(
                format!("q={q}: admissible a exists"),
                "at least one",
                found.len(),
                !found.is_empty(),
            );
        }
    }
    for &q in &lem.none_for {
        if let Some((k, found)) = c.attempt(format!("q={q}: search"), search_parameter(id, q)) {
            let got: Vec<String> = found.iter().map(|&v| k.format(v)).collect();
            c.push(
                format!("q={q}: no admissible a"),
                "[]",
                format!("[{}]", got.join(",")),
                found.is_empty(),
            );
        }
    }
    Ok(c)
}
