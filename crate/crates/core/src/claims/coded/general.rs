//! The general pair: block decomposition, tau and its conjugates, the
//! 3-dimensional actions, `P^`, and eigenvectors over extension fields.

use crate::construct::{
    block_decomposition, g3_action as g3_templates, phat, r_hat, tau_of, theta_for, G3Family,
    SummandKind,
};
use crate::gf::FieldElem;
use crate::grouporder::{closure_bfs, naive_order, order_sl, DEFAULT_CAP};
use crate::matrix::Mat;

use super::super::word::Scope;
use super::super::{Checks, ClaimError};
use super::*;

pub(super) fn block_orders(n: usize) -> Result<Checks, ClaimError> {
    let mut c = Checks::new();
    for (k, a) in instances(&[3, 4, 5, 7, 8], 2)? {
        let t = tag(&k, a);
        let pr = pair(n, &k, a)?;
        let cm = pr.commutator();
        let d = block_decomposition(&pr)?;
        c.truth(
            format!("{t}: summands partition the basis"),
            d.check_partition().is_ok(),
        );
        for s in &d.summands {
            let Some(r) = c.attempt(
                format!("{t}: {} is invariant", s.label),
                d.restrict(&cm, s).map_err(Into::into),
            ) else {
                continue;
            };
            if let Some(disp) = &s.displayed {
                c.truth(
                    format!("{t}: [x,y] on {} is the displayed matrix", s.label),
                    &r == disp,
                );
            }
            match s.kind {
                SummandKind::A => {
                    let o = naive_order(&r, 64);
                    if n == 14 && k.p() > 2 {
                        c.eq_dbg(format!("{t}: order of [x,y] on {}", s.label), Some(16), o);
                    } else {
                        c.push(
                            format!("{t}: order of [x,y] on {} divides 24", s.label),
                            "divisor of 24",
                            format!("{o:?}"),
                            o.is_some_and(|o| 24 % o == 0),
                        );
                    }
                }
                SummandKind::B => c.truth(
                    format!("{t}: ([x,y] on {})^6 = I", s.label),
                    r.pow_u128(6).is_identity(),
                ),
                _ => {}
            }
        }
    }
    Ok(c)
}

pub(super) fn theta_charpoly() -> Result<Checks, ClaimError> {
    let mut c = Checks::new();
    for (k, a) in instances(&[4, 8, 16, 32], 3)? {
        let th = theta_for(&k, a)?;
        let want = poly(&k, a, "(t^2+1)(t^2+t+1)(t^2+a t+1)")?;
        check_charpoly(&mut c, &format!("{}: chi(theta_2)", tag(&k, a)), &th, &want)?;
    }
    Ok(c)
}

/// One conjugate of tau: its word, the vector `b` and the nontrivial
/// columns `e_j -> e_j + coef * b`; other positive basis vectors are fixed.
struct Action {
    word: String,
    b: Vec<(i32, &'static str)>,
    moves: Vec<(i32, &'static str)>,
}

fn general_actions(n: i32) -> Vec<Action> {
    vec![
        Action {
            word: "tau".into(),
            b: vec![(n - 4, "a"), (n - 1, "-2"), (n, "a")],
            moves: vec![(n - 7, "4a"), (n - 3, "-4a"), (n - 2, "-4a")],
        },
        Action {
            word: "tau^{y x}".into(),
            b: vec![(n - 6, "a"), (n - 3, "-2"), (n - 1, "-a"), (n, "a^2")],
            moves: vec![(n - 9, "4a"), (n - 4, "4a"), (n - 1, "-4a^2"), (n, "-4a")],
        },
        Action {
            word: "tau^{(y x)^2}".into(),
            b: vec![
                (n - 7, "a"),
                (n - 4, "2"),
                (n - 3, "-a"),
                (n - 1, "-a^2"),
                (n, "a^3"),
            ],
            moves: vec![
                (n - 10, "4a"),
                (n - 6, "4a"),
                (n - 1, "4a"),
                (n - 3, "-4a^2"),
            ],
        },
    ]
}

fn special_actions(n: usize) -> Vec<Action> {
    match n {
        10 => vec![
            Action {
                word: "tau^{y [x,y]^4}".into(),
                b: vec![(3, "2"), (5, "-a"), (6, "-2a^2"), (9, "3a")],
                moves: vec![
                    (2, "-4a"),
                    (6, "-4a"),
                    (10, "-4a"),
                    (3, "-4a^3"),
                    (8, "4a^3"),
                    (7, "8a^3"),
                ],
            },
            Action {
                word: "tau^{y^2 [x,y]^4}".into(),
                b: vec![
                    (3, "a"),
                    (6, "-a^3"),
                    (8, "-a"),
                    (9, "3a^2"),
                    (10, "-(a^3-2)"),
                ],
                moves: vec![
                    (3, "-4a^2"),
                    (8, "8a^2"),
                    (5, "-4a"),
                    (4, "4a"),
                    (9, "4a"),
                    (7, "4a^2"),
                ],
            },
        ],
        12 => vec![
            Action {
                word: "tau^{y [x,y]^3}".into(),
                b: vec![(4, "-a"), (10, "2"), (11, "-3a"), (12, "a^2")],
                moves: vec![
                    (5, "8a^3"),
                    (7, "4a"),
                    (8, "4a"),
                    (11, "-4a^2"),
                    (9, "-4a^3"),
                    (10, "-4a^3"),
                    (12, "-4a"),
                ],
            },
            Action {
                word: "tau^{y [x,y]^6}".into(),
                b: vec![(7, "a"), (8, "a^2"), (10, "2"), (11, "-5a"), (12, "3a^2")],
                moves: vec![
                    (4, "4a"),
                    (11, "-8a^2"),
                    (5, "12a^3"),
                    (8, "-4a"),
                    (12, "-4a"),
                    (9, "-4a^3"),
                    (10, "-12a^3"),
                ],
            },
        ],
        14 => vec![
            Action {
                word: "tau^{y [x,y]^8}".into(),
                b: vec![(9, "a"), (10, "4a^2"), (11, "2"), (13, "-5a"), (14, "2a^2")],
                moves: vec![
                    (7, "8a^3"),
                    (6, "4a"),
                    (10, "4a"),
                    (14, "4a"),
                    (11, "-12a^3"),
                    (12, "-12a^3"),
                ],
            },
            Action {
                word: "tau^{y^2 [x,y]^8}".into(),
                b: vec![
                    (7, "a"),
                    (10, "-3a^3"),
                    (11, "-a"),
                    (13, "5a^2"),
                    (14, "-(2a^3-2)"),
                ],
                moves: vec![
                    (9, "-4a"),
                    (11, "8a^2"),
                    (7, "-12a^2"),
                    (12, "12a^2"),
                    (8, "4a"),
                    (13, "4a"),
                ],
            },
        ],
        _ => Vec::new(),
    }
}

fn check_action(
    c: &mut Checks,
    t: &str,
    sc: &Scope,
    n: usize,
    act: &Action,
    a: FieldElem,
) -> Result<(), ClaimError> {
    let m = sc.eval_str(&act.word)?;
    let k = m.field().clone();
    let mut b = vec![k.zero(); 2 * n];
    for &(i, e) in &act.b {
        b[pos(n, i)] = elem(&k, a, e)?;
    }
    let mut bad = Vec::new();
    for j in 1..=n as i32 {
        let ej = vector(&k, n, &[(j, k.one())]);
        let want = match act.moves.iter().find(|(jj, _)| *jj == j) {
            Some((_, coef)) => add_vecs(&k, &ej, &scale_vec(&k, &b, elem(&k, a, coef)?)),
            None => ej.clone(),
        };
        if m.mul_vec(&ej) != want {
            bad.push(format!("e{j}"));
        }
    }
    c.eq(
        format!("{t}: {} on e_1..e_{n}, columns differing", act.word),
        "[]".to_string(),
        format!("[{}]", bad.join(",")),
    );
    Ok(())
}

pub(super) fn des_tau() -> Result<Checks, ClaimError> {
    let mut c = Checks::new();
    for n in [10usize, 12, 13, 14, 15] {
        for (k, a) in instances(&[5, 7, 11], 2)? {
            let t = format!("n={n} {}", tag(&k, a));
            let pr = pair(n, &k, a)?;
            let mut sc = scope(&pr);
            sc.insert("tau", tau_of(&pr)?);
            let mut acts = special_actions(n);
            if n == 13 || n == 15 {
                acts.extend(general_actions(n as i32));
            }
            for act in &acts {
                check_action(&mut c, &t, &sc, n, act, a)?;
            }
        }
    }
    Ok(c)
}

fn basis_of(k: &crate::gf::FieldRef, vs: &[Vec<FieldElem>]) -> Mat {
    Mat::from_columns(k, vs)
}

fn lin(k: &crate::gf::FieldRef, terms: &[(FieldElem, &[FieldElem])]) -> Vec<FieldElem> {
    let mut acc = vec![k.zero(); terms[0].1.len()];
    for (s, v) in terms {
        acc = add_vecs(k, &acc, &scale_vec(k, v, *s));
    }
    acc
}

fn compare_g3(c: &mut Checks, name: &str, got: Vec<Mat>, want: &[Mat]) {
    let (ok, how) = match_lists(&got, want);
    c.push(name.to_string(), "in order or permuted", how, ok);
}

pub(super) fn g3_action() -> Result<Checks, ClaimError> {
    let mut c = Checks::new();
    // general case, p > 2
    for n in [12usize, 13, 15] {
        for (k, a) in instances(&[5, 7, 11], 2)? {
            let t = format!("n={n} {}", tag(&k, a));
            let pr = pair(n, &k, a)?;
            let mut sc = scope(&pr);
            sc.insert("tau", tau_of(&pr)?);
            let n32 = n as i32;
            let u = vector(
                &k,
                n,
                &[
                    (n32 - 5, k.one()),
                    (n32 - 2, elem(&k, a, "-2/a")?),
                    (n32 - 1, k.one()),
                ],
            );
            let yu = pr.y.mul_vec(&u);
            let y2u = pr.y.mul_vec(&yu);
            let w3 = basis_of(
                &k,
                &[
                    scale_vec(&k, &yu, elem(&k, a, "8a")?),
                    u.clone(),
                    lin(
                        &k,
                        &[
                            (elem(&k, a, "a^3")?, &u),
                            (a, &yu),
                            (elem(&k, a, "a^2")?, &y2u),
                        ],
                    ),
                ],
            );
            let want = g3_templates(G3Family::General, &k, a)?;
            let gens = ["tau", "tau^y", "tau^{y^2}"];
            let mut got = Vec::new();
            for g in gens {
                if let Some(r) = c.attempt(
                    format!("{t}: {g} preserves W_3"),
                    sc.eval_str(g)
                        .map_err(Into::into)
                        .and_then(|m| Ok(m.restrict_to_basis(&w3)?)),
                ) {
                    got.push(r);
                }
            }
            compare_g3(&mut c, &format!("{t}: G_3 on W_3"), got, &want);
            let ub = vector(
                &k,
                n,
                &[
                    (n32 - 6, k.one()),
                    (n32 - 5, k.from_int(-1)),
                    (n32 - 1, k.from_int(-1)),
                ],
            );
            let yub = pr.y.mul_vec(&ub);
            let y2ub = pr.y.mul_vec(&yub);
            let wb3 = basis_of(
                &k,
                &[
                    scale_vec(&k, &y2ub, elem(&k, a, "8a")?),
                    ub.clone(),
                    lin(
                        &k,
                        &[
                            (elem(&k, a, "a^3")?, &ub),
                            (elem(&k, a, "a^2")?, &yub),
                            (a, &y2ub),
                        ],
                    ),
                ],
            );
            let mut got = Vec::new();
            for g in gens {
                if let Some(r) = c.attempt(
                    format!("{t}: ({g})' preserves Wbar_3"),
                    sc.eval_str(&format!("({g})'"))
                        .map_err(Into::into)
                        .and_then(|m| Ok(m.restrict_to_basis(&wb3)?)),
                ) {
                    got.push(r);
                }
            }
            compare_g3(
                &mut c,
                &format!("{t}: transposed G_3 on Wbar_3"),
                got,
                &want,
            );
            let s9 = crate::construct::s_indices(n, 9);
            let m = sc.eval_str("tau tau^y")?;
            if let Some(r) = c.attempt(
                format!("{t}: tau tau^y preserves S_9"),
                m.restrict(&s9).map_err(Into::into),
            ) {
                let want = poly(&k, a, "(t-1)^7 (t^2+(64a^3-2)t+1)")?;
                check_charpoly(&mut c, &format!("{t}: chi(tau tau^y|S_9)"), &r, &want)?;
            }
            let r = m.restrict_to_basis(&w3)?;
            let want = poly(&k, a, "(t-1)(t^2+(64a^3-2)t+1)")?;
            check_charpoly(&mut c, &format!("{t}: chi(tau tau^y|W_3)"), &r, &want)?;
        }
    }
    // n = 5
    for (k, a) in instances(&[3, 4, 5, 7, 8, 9], 2)? {
        let t = format!("n=5 {}", tag(&k, a));
        let pr = pair(5, &k, a)?;
        let mut sc = scope(&pr);
        sc.define("tau", "[x,y]^6")?;
        let w3 = basis_of(
            &k,
            &[
                vector(&k, 5, &[(2, elem(&k, a, "-a^2")?)]),
                vector(&k, 5, &[(3, k.one())]),
                vector(&k, 5, &[(4, k.one())]),
            ],
        );
        let mut got = Vec::new();
        for g in ["tau", "tau^y", "tau^{y^2}"] {
            got.push(sc.eval_str(g)?.restrict_to_basis(&w3)?);
        }
        compare_g3(
            &mut c,
            &format!("{t}: G_3 on W_3"),
            got,
            &g3_templates(G3Family::N5, &k, a)?,
        );
        let cm = sc.eval_str("[tau,tau^y]")?.restrict_to_basis(&w3)?;
        let mut want = Mat::identity(&k, 3);
        want.set(1, 0, elem(&k, a, "a^6")?);
        c.truth(
            format!("{t}: [tau,tau^y] on W_3 is I + a^6 E_21"),
            cm == want,
        );
    }
    // n = 7, 9, 11 with p > 2
    for (k, a) in instances(&[3, 5, 7, 9, 11, 13], 3)? {
        let cases: Vec<(usize, &str, G3Family)> = vec![
            (7, "[x,y]^8", G3Family::N7),
            (9, "[x,y]^12", G3Family::N9),
            (11, "[x,y]^16", G3Family::N11),
        ];
        for (n, tau, fam) in cases {
            if n != 7 && elem(&k, a, "a+2")?.is_zero() {
                continue;
            }
            let t = format!("n={n} {}", tag(&k, a));
            let pr = pair(n, &k, a)?;
            let mut sc = scope(&pr);
            sc.define("tau", tau)?;
            let one = k.one();
            let u = match n {
                7 => vector(&k, n, &[(3, one), (7, k.neg(one))]),
                9 => vector(&k, n, &[(5, one), (8, elem(&k, a, "-2/a")?), (9, one)]),
                _ => vector(&k, n, &[(7, one), (11, k.neg(one))]),
            };
            let yu = pr.y.mul_vec(&u);
            let y2u = pr.y.mul_vec(&yu);
            let e = |s: &str| elem(&k, a, s);
            let cols = match n {
                7 => vec![
                    scale_vec(&k, &u, e("4a^2")?),
                    scale_vec(&k, &yu, e("-1")?),
                    lin(&k, &[(e("a^2")?, &u), (one, &yu), (e("-a")?, &y2u)]),
                ],
                9 => vec![
                    scale_vec(&k, &u, e("-2a^2")?),
                    yu.clone(),
                    lin(
                        &k,
                        &[
                            (one, &u),
                            (e("(a+2)^2/(4a^2)")?, &yu),
                            (e("(a+2)/(2a)")?, &y2u),
                        ],
                    ),
                ],
                _ => vec![
                    u.clone(),
                    scale_vec(&k, &yu, e("-4a(a+2)")?),
                    lin(
                        &k,
                        &[(a, &u), (e("(a+2)^2/(4a)")?, &yu), (e("-(a+2)/2")?, &y2u)],
                    ),
                ],
            };
            let w3 = basis_of(&k, &cols);
            if w3.rank() < 3 {
                c.push(
                    format!("{t}: W_3 basis"),
                    "rank 3",
                    format!("rank {}", w3.rank()),
                    false,
                );
                continue;
            }
            let mut got = Vec::new();
            for g in ["tau", "tau^y", "tau^{y^2}"] {
                if let Some(r) = c.attempt(
                    format!("{t}: {g} preserves W_3"),
                    sc.eval_str(g)
                        .map_err(Into::into)
                        .and_then(|m| Ok(m.restrict_to_basis(&w3)?)),
                ) {
                    got.push(r);
                }
            }
            compare_g3(
                &mut c,
                &format!("{t}: G_3 on W_3"),
                got,
                &g3_templates(fam, &k, a)?,
            );
        }
    }
    // the displayed generators of SL_3(q), at the first admissible a
    for q in [3u64, 5] {
        let (k, found) = super::super::lemmas::search_parameter("G9", q)?;
        let Some(&a) = found.first() else {
            c.push(
                format!("q={q}: admissible a"),
                "at least one",
                "none",
                false,
            );
            continue;
        };
        let gens = g3_templates(G3Family::General, &k, a)?;
        let want = order_sl(3, q)?.value().map(|v| v as u64);
        let got = closure_bfs(&gens, DEFAULT_CAP).ok();
        c.eq_dbg(
            format!(
                "{}: order of the group generated by the displayed G_3 matrices",
                tag(&k, a)
            ),
            want,
            got,
        );
    }
    Ok(c)
}

pub(super) fn phat_centralizes() -> Result<Checks, ClaimError> {
    let mut c = Checks::new();
    for n in [12usize, 13] {
        for (k, a) in instances(&[5, 7, 11, 13], 3)? {
            if elem(&k, a, "a^6-27")?.is_zero() {
                continue;
            }
            let t = format!("n={n} {}", tag(&k, a));
            let ph = phat(n, &k, a)?;
            let mut bad = Vec::new();
            for b in k.elements() {
                for i in 1..=2 {
                    let r = r_hat(i, n, &k, a, b)?;
                    if &ph * &r != &r * &ph {
                        bad.push(format!("R{i}({})", k.format(b)));
                    }
                }
            }
            c.eq(
                format!("{t}: R_i(b) not commuting with P^"),
                "[]".to_string(),
                format!("[{}]", bad.join(",")),
            );
            c.truth(
                format!("{t}: P^ is symplectic"),
                pr_space(n, &k).is_isometry(&ph),
            );
        }
    }
    Ok(c)
}

fn pr_space(n: usize, k: &crate::gf::FieldRef) -> crate::construct::SympSpace {
    crate::construct::SympSpace::new(k, n)
}

pub(super) fn s_sigma() -> Result<Checks, ClaimError> {
    let mut c = Checks::new();
    // p = 2 < q: eigenvectors of [x,y] for sigma of order q+1, a = sigma + 1/sigma
    for n in [10usize, 12, 13] {
        for q in [4u64, 8] {
            let k = field(q)?;
            let (big, e) = k.extension(2)?;
            let sigmas: Vec<FieldElem> = big
                .elements()
                .filter(|&s| !s.is_zero() && big.mult_order(s).ok() == Some(q + 1))
                .take(2)
                .collect();
            for s in sigmas {
                let si = big.inv(s)?;
                let ab = big.add(s, si);
                let Some(a) = k.elements().find(|&b| e.apply(b) == ab) else {
                    c.push(
                        format!("n={n} q={q}: sigma + 1/sigma"),
                        "in GF(q)",
                        "outside",
                        false,
                    );
                    continue;
                };
                let t = format!("n={n} {} sigma={}", tag(&k, a), big.format(s));
                let pr = pair(n, &k, a)?;
                let cm = pr.commutator().lift(&e);
                let cmt = cm.transpose();
                let n32 = n as i32;
                let one = big.one();
                for (lam, li) in [(s, si), (si, s)] {
                    let v = vector(
                        &big,
                        n,
                        &[
                            (n32 - 7, one),
                            (n32 - 4, one),
                            (n32 - 1, one),
                            (n32 - 3, lam),
                            (n32, lam),
                            (n32 - 2, li),
                        ],
                    );
                    c.truth(
                        format!("{t}: [x,y] s = {} s", big.format(lam)),
                        is_eigvec(&cm, &v, lam),
                    );
                    let vb = vector(
                        &big,
                        n,
                        &[(n32 - 4, one), (n32 - 1, big.add(one, li)), (n32, one)],
                    );
                    c.truth(
                        format!("{t}: [x,y]' sbar = {} sbar", big.format(lam)),
                        is_eigvec(&cmt, &vb, lam),
                    );
                }
            }
        }
    }
    // n = 5: eigenvectors of y tau for the roots of t^3 + a^2 t^2 - 1
    for (k, a) in instances(&[3, 4, 5, 7], 2)? {
        let t = format!("n=5 {}", tag(&k, a));
        let pr = pair(5, &k, a)?;
        let f = poly(&k, a, "t^3+a^2 t^2-1")?;
        let (big, e, roots) = roots_in_extension(&k, &f)?;
        let tau = pr.commutator().pow_u128(6).lift(&e);
        let g = &pr.y.lift(&e) * &tau;
        let a2 = big.mul(e.apply(a), e.apply(a));
        for s in roots {
            let s2 = big.mul(s, s);
            let v = vector(&big, 5, &[(2, s2), (3, s), (4, big.one())]);
            c.truth(
                format!("{t}: y tau s = sigma s for sigma = {}", big.format(s)),
                is_eigvec(&g, &v, s),
            );
            let w: Vec<FieldElem> = v
                .iter()
                .zip(tau.mul_vec(&v))
                .map(|(&p, q)| big.sub(p, q))
                .collect();
            check_vec(
                &mut c,
                format!("{t}: s - tau s for sigma = {}", big.format(s)),
                &big,
                &vector(&big, 5, &[(4, big.mul(a2, s2))]),
                &w,
            );
        }
    }
    // n = 7, p = 2 < q: eigenvectors of tau on V
    for (k, a) in instances(&[4, 8, 16], 2)? {
        let t = format!("n=7 {}", tag(&k, a));
        let pr = pair(7, &k, a)?;
        let f = poly(&k, a, "t^2+a^8 t+1")?;
        let (big, e, roots) = roots_in_extension(&k, &f)?;
        let tv = pr.commutator().pow_u128(8).restrict(&positive(7))?.lift(&e);
        let ea = e.apply(a);
        for s in roots {
            let num = elem(&big, ea, "a^7+a^6+a^4+1")?;
            let coef = big.div(big.add(num, s), big.pow(ea, 7)?)?;
            let mut v = vec![big.zero(); 7];
            v[2] = big.one();
            v[5] = coef;
            v[6] = big.one();
            c.truth(
                format!("{t}: (tau|V) s = sigma s for sigma = {}", big.format(s)),
                is_eigvec(&tv, &v, s),
            );
        }
    }
    Ok(c)
}
