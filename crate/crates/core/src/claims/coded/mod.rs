//! Claims checked by code: identities of characteristic polynomials,
//! traces, eigenvectors, determinants, restrictions to invariant
//! subspaces, and the parameter conditions.

mod general;
mod odd;
mod params;
mod small;

use crate::construct::{
    build, default_recipe, env_for, field_of_order, pos, GeneratorPair, Recipe,
};
use crate::gf::{Embedding, FieldElem, FieldRef};
use crate::matrix::Mat;
use crate::poly::Poly;

use super::lemmas::enumeration;
use super::word::Scope;
use super::{Checks, ClaimError};

pub type CodedFn = Box<dyn Fn() -> Result<Checks, ClaimError> + Send + Sync>;

fn entry(
    id: &str,
    label: &str,
    f: fn() -> Result<Checks, ClaimError>,
) -> (String, String, CodedFn) {
    (id.to_string(), label.to_string(), Box::new(f))
}

pub fn all() -> Result<Vec<(String, String, CodedFn)>, ClaimError> {
    let mut v = vec![
        entry(
            "charpoly-n4",
            "n = 4: characteristic polynomials of [x,y] and x y",
            small::charpoly_n4,
        ),
        entry(
            "main4",
            "n = 4: eigenvectors, determinants, [x,y]^3 and the orders of C^i y",
            small::main4,
        ),
        entry(
            "main5",
            "n = 5: tau, y tau, independence of the w-vectors",
            small::main5,
        ),
        entry(
            "main6",
            "n = 6 (alternative pair): traces, [x,y]^5, determinants",
            small::main6,
        ),
        entry(
            "main7",
            "n = 7: eta, tau and the restrictions to V",
            odd::main7,
        ),
        entry(
            "main8",
            "n = 8 (alternative pair): eta, tau and the generators on E_3, E_5",
            odd::main8,
        ),
        entry(
            "main9",
            "n = 9: tau, y tau, eta and the restrictions to V",
            odd::main9,
        ),
        entry(
            "main11",
            "n = 11: eta, tau and the restrictions to V",
            odd::main11,
        ),
        entry(
            "g3-action",
            "Actions of G_3 on the 3-dimensional subspaces",
            general::g3_action,
        ),
        entry(
            "phat-centralizes",
            "P^ commutes with R_1(b) and R_2(b)",
            general::phat_centralizes,
        ),
        entry(
            "s-sigma",
            "Eigenvectors s and their transposed partners",
            general::s_sigma,
        ),
        entry(
            "theta-charpoly",
            "Characteristic polynomial of theta_2",
            general::theta_charpoly,
        ),
        entry(
            "des-tau",
            "Action of tau and its conjugates on the positive basis vectors",
            general::des_tau,
        ),
        entry(
            "campo-bound",
            "Exact counts of non-generating b against the counting bound",
            params::campo_bound,
        ),
        entry("subfield", "n = 4: tr(x y)", params::subfield),
        entry(
            "subfield5",
            "n = 5: tr((x y)^5) and tr((x y)^8)",
            params::subfield5,
        ),
        entry(
            "subfield6",
            "n = 6 (alternative pair): tr(x y)",
            params::subfield6,
        ),
        entry("subfield7", "n = 7: tr(x y)", params::subfield7),
        entry(
            "subfield8",
            "n = 8: tr((x y)^9) for p = 2, tr((x y)^8) for p > 2",
            params::subfield8,
        ),
        entry(
            "subfield9-2",
            "n = 9, p = 2: tr((x y)^3)",
            params::subfield9_2,
        ),
        entry(
            "subfield9-odd",
            "n = 9, p > 2: tr(tau tau^y)",
            params::subfield9_odd,
        ),
        entry("subfield11", "n = 11: tr(x y)", params::subfield11),
    ];
    for n in [10, 12, 13, 14, 15] {
        v.push((
            format!("block-orders-n{n}"),
            format!("n = {n}: invariant decomposition for [x,y] and block orders"),
            Box::new(move || general::block_orders(n)),
        ));
    }
    for n in [4, 5, 6, 7, 8, 9, 11] {
        v.push((
            format!("quadform-n{n}"),
            format!("n = {n}, q even: no invariant quadratic form polarizing to J"),
            Box::new(move || params::quadform(n)),
        ));
    }
    // condition sets that only feed other lemmas carry no data of their own
    for id in super::lemmas::lemma_ids() {
        let lem = super::lemmas::lemma(id)?;
        if lem.choices.is_empty() && lem.exists_for.is_empty() && lem.none_for.is_empty() {
            continue;
        }
        let label = lem.label.clone();
        v.push((
            format!("cond-{id}"),
            format!("Conditions on a: {label}"),
            Box::new(move || params::conditions(id)),
        ));
    }
    Ok(v)
}

// ---------------------------------------------------------------------------
// shared helpers

fn field(q: u64) -> Result<FieldRef, ClaimError> {
    Ok(field_of_order(q)?)
}

/// Up to `count` nonzero elements, spread through the enumeration.
fn samples(k: &FieldRef, count: usize) -> Vec<FieldElem> {
    let all = enumeration(k);
    let step = (all.len() / count.max(1)).max(1);
    let mut v: Vec<FieldElem> = all
        .iter()
        .copied()
        .skip(1)
        .step_by(step)
        .take(count)
        .collect();
    if v.is_empty() {
        v.push(k.one());
    }
    v
}

/// `(field, a)` instances over the listed orders.
fn instances(qs: &[u64], per_field: usize) -> Result<Vec<(FieldRef, FieldElem)>, ClaimError> {
    let mut out = Vec::new();
    for &q in qs {
        let k = field(q)?;
        for a in samples(&k, per_field) {
            out.push((k.clone(), a));
        }
    }
    Ok(out)
}

fn tag(k: &FieldRef, a: FieldElem) -> String {
    format!("q={} a={}", k.order(), k.format(a))
}

fn pair(n: usize, k: &FieldRef, a: FieldElem) -> Result<GeneratorPair, ClaimError> {
    Ok(build(default_recipe(n, k.order()), n, k, a)?)
}

fn pair_with(
    recipe: Recipe,
    n: usize,
    k: &FieldRef,
    a: FieldElem,
) -> Result<GeneratorPair, ClaimError> {
    Ok(build(recipe, n, k, a)?)
}

fn scope(p: &GeneratorPair) -> Scope {
    Scope::new().with("x", p.x.clone()).with("y", p.y.clone())
}

/// A polynomial in `t` (and `a`).
fn poly(k: &FieldRef, a: FieldElem, src: &str) -> Result<Poly, ClaimError> {
    Ok(env_for(k, a).eval_str(src)?)
}

fn elem(k: &FieldRef, a: FieldElem, src: &str) -> Result<FieldElem, ClaimError> {
    Ok(env_for(k, a).elem_str(src)?)
}

/// Characteristic polynomial by Hessenberg reduction, cross-checked by
/// Berkowitz; a disagreement is recorded as a failed check.
fn charpoly(c: &mut Checks, name: &str, m: &Mat) -> Result<Poly, ClaimError> {
    let h = m.char_poly()?;
    let b = m.char_poly_berkowitz()?;
    if h != b {
        c.push(format!("{name}: Hessenberg vs Berkowitz"), &h, &b, false);
    }
    Ok(h)
}

fn check_charpoly(c: &mut Checks, name: &str, m: &Mat, want: &Poly) -> Result<(), ClaimError> {
    let got = charpoly(c, name, m)?;
    c.eq(name.to_string(), want, &got);
    Ok(())
}

fn check_elem(
    c: &mut Checks,
    name: impl Into<String>,
    k: &FieldRef,
    want: FieldElem,
    got: FieldElem,
) {
    c.push(name, k.format(want), k.format(got), want == got);
}

/// A vector given by signed basis indices and coefficients.
fn vector(k: &FieldRef, n: usize, terms: &[(i32, FieldElem)]) -> Vec<FieldElem> {
    let mut v = vec![k.zero(); 2 * n];
    for &(i, e) in terms {
        let p = pos(n, i);
        v[p] = k.add(v[p], e);
    }
    v
}

fn fmt_vec(k: &FieldRef, v: &[FieldElem]) -> String {
    let parts: Vec<String> = v.iter().map(|&e| k.format(e)).collect();
    format!("({})", parts.join(","))
}

fn check_vec(
    c: &mut Checks,
    name: impl Into<String>,
    k: &FieldRef,
    want: &[FieldElem],
    got: &[FieldElem],
) {
    c.push(name, fmt_vec(k, want), fmt_vec(k, got), want == got);
}

fn scale_vec(k: &FieldRef, v: &[FieldElem], s: FieldElem) -> Vec<FieldElem> {
    v.iter().map(|&e| k.mul(e, s)).collect()
}

fn add_vecs(k: &FieldRef, v: &[FieldElem], w: &[FieldElem]) -> Vec<FieldElem> {
    v.iter().zip(w).map(|(&a, &b)| k.add(a, b)).collect()
}

/// Dimension of the `lambda`-eigenspace.
fn eig_dim(m: &Mat, lambda: FieldElem) -> Result<usize, ClaimError> {
    Ok(m.eigenspace(lambda, None)?.cols())
}

/// Whether `m v = lambda v` with `v != 0`.
fn is_eigvec(m: &Mat, v: &[FieldElem], lambda: FieldElem) -> bool {
    let k = m.field();
    v.iter().any(|e| !e.is_zero()) && m.mul_vec(v) == scale_vec(k, v, lambda)
}

/// Positions of the positive basis vectors `e_1, ..., e_n`.
fn positive(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// The smallest extension of `k` in which `f` has a root, with all roots
/// of `f` there.
fn roots_in_extension(
    k: &FieldRef,
    f: &Poly,
) -> Result<(FieldRef, Embedding, Vec<FieldElem>), ClaimError> {
    for d in 1..=6u32 {
        if k.order().checked_pow(d).is_none_or(|q| q > 1 << 22) {
            break;
        }
        let (big, e) = k.extension(d)?;
        let g = f.lift(&e);
        let roots: Vec<FieldElem> = big.elements().filter(|&b| g.eval(b).is_zero()).collect();
        if !roots.is_empty() {
            return Ok((big, e, roots));
        }
    }
    Err(ClaimError::Data(format!(
        "no root of {} in a small extension",
        f.pretty()
    )))
}

/// The primitive cube roots of unity, in `k` or its quadratic extension.
fn cube_roots(k: &FieldRef) -> Result<(FieldRef, Embedding, Vec<FieldElem>), ClaimError> {
    if k.p() == 3 {
        return Err(ClaimError::NotApplicable(
            "no primitive cube root of unity in characteristic 3".into(),
        ));
    }
    roots_in_extension(k, &Poly::from_ints(k, &[1, 1, 1]))
}

fn det_of_columns(k: &FieldRef, cols: &[Vec<FieldElem>]) -> Result<FieldElem, ClaimError> {
    Ok(Mat::from_columns(k, cols).det()?)
}

fn rank_of_columns(k: &FieldRef, cols: &[Vec<FieldElem>]) -> usize {
    Mat::from_columns(k, cols).rank()
}

/// Images of `v` under each word.
fn orbit(sc: &Scope, words: &[&str], v: &[FieldElem]) -> Result<Vec<Vec<FieldElem>>, ClaimError> {
    let mut out = Vec::with_capacity(words.len());
    for w in words {
        out.push(sc.eval_str(w)?.mul_vec(v));
    }
    Ok(out)
}

/// Whether two lists of matrices agree in order, or failing that up to
/// a permutation; returns a description of the match.
fn match_lists(got: &[Mat], want: &[Mat]) -> (bool, String) {
    if got == want {
        return (true, "in order".into());
    }
    if got.len() != want.len() {
        return (false, format!("{} vs {} matrices", got.len(), want.len()));
    }
    let mut used = vec![false; want.len()];
    let mut perm = Vec::new();
    for g in got {
        match (0..want.len()).find(|&j| !used[j] && &want[j] == g) {
            Some(j) => {
                used[j] = true;
                perm.push(j + 1);
            }
            None => return (false, "no match".into()),
        }
    }
    let p: Vec<String> = perm.iter().map(|i| i.to_string()).collect();
    (true, format!("as the permutation ({})", p.join(",")))
}
