//! n = 7, 8, 9 and 11.

use crate::construct::{n8_phat, template, Recipe};
use crate::gf::{FieldElem, FieldRef};
use crate::matrix::Mat;
use crate::poly::Poly;

use super::super::{Checks, ClaimError};
use super::*;

/// Records that `factor` divides `chi` and returns the cofactor.
fn cofactor(
    c: &mut Checks,
    name: &str,
    chi: &Poly,
    factor: &Poly,
) -> Result<Option<Poly>, ClaimError> {
    let (quo, rem) = chi
        .divrem(factor)
        .map_err(|e| ClaimError::Data(e.to_string()))?;
    c.push(
        format!("{name}: divisible by {factor}"),
        "remainder 0",
        &rem,
        rem.is_zero(),
    );
    Ok(rem.is_zero().then_some(quo))
}

/// Checks, for every `a` in `GF(q)^*`, that the cofactor of `fixed` in
/// the characteristic polynomial of `word` vanishes at a primitive cube
/// root of unity exactly when `cond(a) = 0`.
fn omega_vanishing(
    c: &mut Checks,
    n: usize,
    qs: &[u64],
    word: &str,
    fixed: &str,
    cond: impl Fn(&FieldRef) -> &'static str,
) -> Result<(), ClaimError> {
    for &q in qs {
        let k = field(q)?;
        let cube = Poly::from_ints(&k, &[1, 1, 1]);
        let mut bad = Vec::new();
        for a in enumeration(&k) {
            let pr = pair(n, &k, a)?;
            let chi = charpoly(c, word, &scope(&pr).eval_str(word)?)?;
            let Some(f) = cofactor(
                c,
                &format!("{}: chi({word})", tag(&k, a)),
                &chi,
                &poly(&k, a, fixed)?,
            )?
            else {
                continue;
            };
            let vanishes = f.gcd(&cube).degree() != Some(0);
            if vanishes != elem(&k, a, cond(&k))?.is_zero() {
                bad.push(k.format(a));
            }
        }
        c.eq(
            format!("q={q}: a where f(omega) = 0 disagrees with {}", cond(&k)),
            "[]".to_string(),
            format!("[{}]", bad.join(",")),
        );
    }
    Ok(())
}

fn on_v(m: &Mat, n: usize) -> Result<Mat, ClaimError> {
    Ok(m.restrict(&positive(n))?)
}

fn lifted_scope(pr: &GeneratorPair, e: &crate::gf::Embedding) -> super::super::word::Scope {
    super::super::word::Scope::new()
        .with("x", pr.x.lift(e))
        .with("y", pr.y.lift(e))
}

pub(super) fn main7() -> Result<Checks, ClaimError> {
    let mut c = Checks::new();
    omega_vanishing(
        &mut c,
        7,
        &[4, 5, 7, 8, 11, 13, 16],
        "y (x y)^3",
        "t^2+t+1",
        |k| {
            if k.p() == 2 {
                "a^4+a^3+1"
            } else {
                "(a^2-a+1)(a^2+a+1)"
            }
        },
    )?;
    for (k, a) in instances(&[2, 4, 8, 3, 5, 7], 2)? {
        let t = tag(&k, a);
        let pr = pair(7, &k, a)?;
        let tau = pr.commutator().pow_u128(8);
        let want = if k.p() == 2 {
            "(t+1)^10 (t^2+a^8 t+1)^2"
        } else {
            "(t-1)^14"
        };
        check_charpoly(&mut c, &format!("{t}: chi(tau)"), &tau, &poly(&k, a, want)?)?;
    }
    // eigenvectors of eta for the cube roots of unity and the vectors u
    for (k, a) in instances(&[4, 5, 7, 8, 11, 13], 2)? {
        let t = tag(&k, a);
        let pr = pair(7, &k, a)?;
        let (big, e, roots) = cube_roots(&k)?;
        let sc = lifted_scope(&pr, &e);
        let eta = sc.eval_str("y (x y)^3")?;
        let etat = eta.transpose();
        let ea = e.apply(a);
        for &w in &roots {
            let s = vector(&big, 7, &[(4, big.one()), (-4, big.neg(w))]);
            let sb = vector(&big, 7, &[(4, big.one()), (-4, w)]);
            c.truth(
                format!("{t}: eta s = w s for w = {}", big.format(w)),
                is_eigvec(&eta, &s, w),
            );
            c.truth(
                format!("{t}: eta' sbar = w sbar for w = {}", big.format(w)),
                is_eigvec(&etat, &sb, w),
            );
            let (u, uw) = if k.p() == 2 {
                let u = sum_images(&sc, &["y x", "x", "y^2 x"], &s)?;
                (u, vector(&big, 7, &[(-6, w)]))
            } else {
                let u = sum_images(&sc, &["y^2 x", "(y x)^2"], &s)?;
                (u, vector(&big, 7, &[(5, ea)]))
            };
            check_vec(
                &mut c,
                format!("{t}: u for w = {}", big.format(w)),
                &big,
                &uw,
                &u,
            );
            let (ub, ubw) = if k.p() == 2 {
                let ub = sum_images(&sc, &["x'", "(x y)'", "(x y^2)'"], &sb)?;
                (ub, vector(&big, 7, &[(6, big.one())]))
            } else {
                let a1 = sc.eval_str("(x y x)'")?.mul_vec(&sb);
                let a2 = sc.eval_str("(x y)'")?.mul_vec(&sb);
                let d: Vec<FieldElem> = a1.iter().zip(&a2).map(|(&p, &q)| big.sub(p, q)).collect();
                (d, vector(&big, 7, &[(6, ea)]))
            };
            check_vec(
                &mut c,
                format!("{t}: ubar for w = {}", big.format(w)),
                &big,
                &ubw,
                &ub,
            );
        }
    }
    // restrictions to V
    for (k, a) in instances(&[4, 8, 16], 2)? {
        let t = tag(&k, a);
        let pr = pair(7, &k, a)?;
        let mut sc = scope(&pr);
        sc.define("tau", "[x,y]^8")?;
        let tv = on_v(sc.get("tau").unwrap(), 7)?;
        check_charpoly(
            &mut c,
            &format!("{t}: chi(tau|V)"),
            &tv,
            &poly(&k, a, "(t+1)^5 (t^2+a^8 t+1)")?,
        )?;
        check_elem(
            &mut c,
            format!("{t}: tr(tau|V)"),
            &k,
            elem(&k, a, "a^8+1")?,
            tv.trace(),
        );
        let tx = on_v(&sc.eval_str("[tau,x]")?, 7)?;
        check_elem(
            &mut c,
            format!("{t}: tr([tau,x]|V)"),
            &k,
            elem(&k, a, "(a+1)^16")?,
            tx.trace(),
        );
    }
    for (k, a) in instances(&[3, 5, 7, 9], 2)? {
        let t = tag(&k, a);
        let pr = pair(7, &k, a)?;
        let mut sc = scope(&pr);
        sc.define("tau", "[x,y]^8")?;
        let m = on_v(&sc.eval_str("tau tau^{y^2}")?, 7)?;
        let want = poly(&k, a, "(t-1)^5 (t^2-(16a^3+2)t+1)")?;
        check_charpoly(&mut c, &format!("{t}: chi(tau tau^(y^2)|V)"), &m, &want)?;
    }
    Ok(c)
}

fn sum_images(
    sc: &super::super::word::Scope,
    words: &[&str],
    v: &[FieldElem],
) -> Result<Vec<FieldElem>, ClaimError> {
    let imgs = orbit(sc, words, v)?;
    let k = sc.get("x").unwrap().field().clone();
    let mut acc = vec![k.zero(); v.len()];
    for w in imgs {
        acc = add_vecs(&k, &acc, &w);
    }
    Ok(acc)
}

pub(super) fn main8() -> Result<Checks, ClaimError> {
    let mut c = Checks::new();
    for (k, a) in instances(&[3, 4, 5, 7, 8, 9], 2)? {
        let t = tag(&k, a);
        let pr = pair_with(Recipe::N8Alt, 8, &k, a)?;
        let mut sc = scope(&pr);
        let eta = sc.eval_str("y^2 [x,y]^3 y^2")?;
        let want = poly(
            &k,
            a,
            "(t-1)^2 (t+1)^2 (t^2-t+1)^2 (t^2+t+1) (t^6+t^5+2(a^2+1)t^4+t^3+2(a^2+1)t^2+t+1)",
        )?;
        check_charpoly(&mut c, &format!("{t}: chi(eta)"), &eta, &want)?;
        let one = k.one();
        let m1 = k.neg(one);
        let s = vector(&k, 8, &[(2, one), (5, one), (7, m1)]);
        let sb = vector(&k, 8, &[(-2, one), (-5, one), (-7, m1)]);
        c.truth(format!("{t}: eta s = -s"), is_eigvec(&eta, &s, m1));
        c.truth(
            format!("{t}: eta' sbar = -sbar"),
            is_eigvec(&eta.transpose(), &sb, m1),
        );
        let e = if k.p() == 2 { 4 } else { 8 };
        sc.define("tau", &format!("[x,y]^{e}"))?;
        let tau = sc.get("tau").unwrap().clone();
        check_charpoly(
            &mut c,
            &format!("{t}: chi(tau)"),
            &tau,
            &poly(&k, a, "(t-1)^16")?,
        )?;
        if k.p() > 2 {
            let u = sum_images(&sc, &["y^2", "x y x y^2"], &s)?;
            check_vec(
                &mut c,
                format!("{t}: y^2 s + x y x y^2 s"),
                &k,
                &vector(&k, 8, &[(6, k.from_int(-2))]),
                &u,
            );
            let ub = sum_images(&sc, &["(y x y)'", "(y x)'"], &sb)?;
            check_vec(
                &mut c,
                format!("{t}: transposed partner"),
                &k,
                &vector(&k, 8, &[(-5, k.from_int(2))]),
                &ub,
            );
            c.eq(
                format!("{t}: dim of the fixed space of tau"),
                14,
                eig_dim(&tau, one)?,
            );
            let words = [
                "tau^{y x}",
                "tau^{y x y}",
                "tau^{y x y^2}",
                "tau^{(y x)^2}",
                "tau^{(y x)^2 y}",
                "tau^{(y x)^3}",
                "tau^{y^2 x y^2}",
            ];
            let env = env_for(&k, a);
            let mut got = Vec::new();
            for w in words {
                let Some(m) = c.attempt(format!("{t}: {w} preserves V"), on_v(&sc.eval_str(w)?, 8))
                else {
                    continue;
                };
                let Some(r) = c.attempt(
                    format!("{t}: {w} preserves E_5"),
                    m.restrict(&[0, 1, 2, 3, 4]).map_err(Into::into),
                ) else {
                    continue;
                };
                let rest = m.submatrix(&[5, 6, 7], &[5, 6, 7]);
                c.truth(
                    format!("{t}: {w} is the identity on V/E_5"),
                    rest.is_identity(),
                );
                got.push(r);
            }
            let want: Vec<Mat> = (1..=7)
                .map(|i| template(&format!("n8odd_tau{i}"), &env))
                .collect::<Result<_, _>>()?;
            let (ok, how) = match_lists(&got, &want);
            c.push(
                format!("{t}: restrictions to E_5 match the displayed tau_i"),
                "in order or permuted",
                how,
                ok,
            );
            let t56 = &want[4] * &want[5];
            let want56 = poly(&k, a, "(t-1)^3 (t^2-2(8a^4+1)t+1)")?;
            check_charpoly(&mut c, &format!("{t}: chi(tau_5 tau_6)"), &t56, &want56)?;
        }
    }
    // p = 2: conjugation by P^ and the quotient V/E_3
    for (k, a) in instances(&[4, 8, 16], 2)? {
        let t = tag(&k, a);
        let env = env_for(&k, a);
        let p = template("n8_p", &env)?;
        check_elem(
            &mut c,
            format!("{t}: det P"),
            &k,
            elem(&k, a, "a^4")?,
            p.det()?,
        );
        let ph = n8_phat(&k, a)?;
        let pr = pair_with(Recipe::N8Alt, 8, &k, a)?;
        let mut sc = scope(&pr);
        sc.define("tau", "[x,y]^4")?;
        let mut got = Vec::new();
        for w in [
            "tau^{y x y^2}",
            "tau^{y x y^2 x}",
            "tau^{(y x)^3}",
            "tau^{(y x)^2 y}",
        ] {
            let g = sc.eval_str(w)?.conj(&ph)?;
            let Some(m) = c.attempt(
                format!("{t}: {w} conjugated by P^ preserves V"),
                on_v(&g, 8),
            ) else {
                continue;
            };
            let Some(e3) = c.attempt(
                format!("{t}: {w} preserves E_3"),
                m.restrict(&[0, 1, 2]).map_err(Into::into),
            ) else {
                continue;
            };
            c.truth(format!("{t}: {w} is the identity on E_3"), e3.is_identity());
            got.push(m.submatrix(&[3, 4, 5, 6, 7], &[3, 4, 5, 6, 7]));
        }
        let want: Vec<Mat> = (1..=4)
            .map(|i| template(&format!("n8_tau{i}"), &env))
            .collect::<Result<_, _>>()?;
        let (ok, how) = match_lists(&got, &want);
        c.push(
            format!("{t}: actions on V/E_3 match the displayed tau_i"),
            "in order or permuted",
            how,
            ok,
        );
        let t14 = &want[0] * &want[3];
        check_charpoly(
            &mut c,
            &format!("{t}: chi(tau_1 tau_4)"),
            &t14,
            &poly(&k, a, "(t+1)^3 (t^2+a^4 t+1)")?,
        )?;
        check_elem(
            &mut c,
            format!("{t}: tr(tau_1 tau_4)"),
            &k,
            elem(&k, a, "a^4+1")?,
            t14.trace(),
        );
        let ts = super::super::word::Scope::new()
            .with("t1", want[0].clone())
            .with("t4", want[3].clone());
        check_elem(
            &mut c,
            format!("{t}: tr([tau_1,tau_4])"),
            &k,
            elem(&k, a, "(a+1)^8")?,
            ts.eval_str("[t1,t4]")?.trace(),
        );
    }
    Ok(c)
}

pub(super) fn main9() -> Result<Checks, ClaimError> {
    let mut c = Checks::new();
    for (k, a) in instances(&[2, 4, 8, 3, 5, 7], 2)? {
        let t = tag(&k, a);
        let pr = pair(9, &k, a)?;
        let tau = pr.commutator().pow_u128(12);
        let want = if k.p() == 2 {
            "(t+1)^14 (t^2+(a^12+a^4)t+1)^2"
        } else {
            "(t-1)^18"
        };
        check_charpoly(&mut c, &format!("{t}: chi(tau)"), &tau, &poly(&k, a, want)?)?;
    }
    // q = 2 is covered by the prime-set claims
    for (k, a) in instances(&[4, 8, 16], 2)? {
        let t = tag(&k, a);
        let pr = pair(9, &k, a)?;
        let mut sc = scope(&pr);
        sc.define("tau", "[x,y]^12")?;
        // eta = y^2 [x,y]^3 y^2 x
        let eta = sc.eval_str("y^2 [x,y]^3 y^2 x")?;
        let chi = charpoly(&mut c, "eta", &eta)?;
        cofactor(
            &mut c,
            &format!("{t}: chi(eta)"),
            &chi,
            &poly(&k, a, "(t+1)^2 (t^2+t+1)^2")?,
        )?;
        let one = k.one();
        let s1 = vector(&k, 9, &[(3, one), (-2, one), (-5, one)]);
        let sb1 = vector(&k, 9, &[(2, one), (5, one), (-3, one)]);
        c.truth(format!("{t}: eta s_1 = s_1"), is_eigvec(&eta, &s1, one));
        c.truth(
            format!("{t}: eta' sbar_1 = sbar_1"),
            is_eigvec(&eta.transpose(), &sb1, one),
        );
        // y tau on V
        let Some(yt) = c.attempt(
            format!("{t}: y tau preserves V"),
            on_v(&sc.eval_str("y tau")?, 9),
        ) else {
            continue;
        };
        let chi = charpoly(&mut c, "y tau", &yt)?;
        cofactor(
            &mut c,
            &format!("{t}: chi(y tau|V)"),
            &chi,
            &poly(&k, a, "(t+1)(t^2+t+1)")?,
        )?;
        let ia = k.inv(a)?;
        let mut terms = vec![(1, one), (2, one), (3, one)];
        terms.extend((4..=9).map(|i| (i, ia)));
        let s = vector(&k, 9, &terms)[..9].to_vec();
        let sb = vector(&k, 9, &[(1, one), (2, one), (3, one)])[..9].to_vec();
        c.truth(format!("{t}: (y tau|V) s_1 = s_1"), is_eigvec(&yt, &s, one));
        c.truth(
            format!("{t}: (y tau|V)' sbar_1 = sbar_1"),
            is_eigvec(&yt.transpose(), &sb, one),
        );
        let tv = on_v(sc.get("tau").unwrap(), 9)?;
        check_elem(
            &mut c,
            format!("{t}: tr(tau|V)"),
            &k,
            elem(&k, a, "(a^3+a+1)^4")?,
            tv.trace(),
        );
        let mut want = vec![poly(&k, a, "t+1")?; 6];
        want.push(poly(&k, a, "t^3+(a^3+a+1)^4 t^2+(a^3+a+1)^4 t+1")?);
        let got = tv.similarity_invariants()?;
        let fmt = |v: &[Poly]| {
            v.iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join("; ")
        };
        c.push(
            format!("{t}: similarity invariants of tau|V"),
            fmt(&want),
            fmt(&got),
            want == got,
        );
        if let Some(other) = c.attempt(
            format!("{t}: y tau^(y^2 [x,y]^6 y^2 x) preserves V"),
            sc.eval_str("y tau^{y^2 [x,y]^6 y^2 x}")
                .map_err(Into::into)
                .and_then(|m| on_v(&m, 9)),
        ) {
            let lhs = k.add(yt.trace(), k.mul(elem(&k, a, "a(a+1)")?, other.trace()));
            let want = elem(&k, a, "a^3 (a+1)^6 (a^2+a+1)(a^3+a+1)(a^5+a^4+a^3+a^2+1)")?;
            check_elem(&mut c, format!("{t}: trace combination"), &k, want, lhs);
        }
    }
    for (k, a) in instances(&[3, 5, 7, 9, 11], 2)? {
        let t = tag(&k, a);
        let pr = pair(9, &k, a)?;
        let mut sc = scope(&pr);
        let eta = sc.eval_str("[x,y]^2 y")?;
        let chi = charpoly(&mut c, "eta", &eta)?;
        cofactor(
            &mut c,
            &format!("{t}: chi(eta)"),
            &chi,
            &poly(&k, a, "(t-1)^2 (t+1)^2 (t^2+1)")?,
        )?;
        let one = k.one();
        let s1 = vector(&k, 9, &[(4, one), (5, k.neg(one))]);
        let sb = vector(&k, 9, &[(-4, one), (-5, k.neg(one))]);
        c.truth(format!("{t}: eta s_1 = s_1"), is_eigvec(&eta, &s1, one));
        c.truth(
            format!("{t}: eta' sbar_1 = sbar_1"),
            is_eigvec(&eta.transpose(), &sb, one),
        );
        let plus = sum_images(&sc, &["y", "x y", "x y x", "(x y)^2 y"], &s1)?;
        let minus = sc.eval_str("y x y")?.mul_vec(&s1);
        let u: Vec<FieldElem> = plus
            .iter()
            .zip(&minus)
            .map(|(&p, &q)| k.sub(p, q))
            .collect();
        check_vec(&mut c, format!("{t}: u"), &k, &vector(&k, 9, &[(9, a)]), &u);
        sc.define("tau", "[x,y]^12")?;
        let m = on_v(&sc.eval_str("tau tau^{y^2}")?, 9)?;
        let want = poly(&k, a, "(t-1)^7 (t^2+(2a^4+4a^3-2)t+1)")?;
        check_charpoly(&mut c, &format!("{t}: chi(tau tau^(y^2)|V)"), &m, &want)?;
    }
    Ok(c)
}

pub(super) fn main11() -> Result<Checks, ClaimError> {
    let mut c = Checks::new();
    omega_vanishing(
        &mut c,
        11,
        &[4, 5, 7, 8, 11, 13, 16],
        "[x,y]^2 y",
        "(t^2+1)^2 (t^2+t+1)",
        |k| {
            if k.p() == 2 {
                "(a+1)(a^3+a^2+1)"
            } else {
                "(a+1)(2a^2-a+2)"
            }
        },
    )?;
    for (k, a) in instances(&[4, 5, 7, 8, 11, 13], 2)? {
        let t = tag(&k, a);
        let pr = pair(11, &k, a)?;
        let (big, e, roots) = cube_roots(&k)?;
        let eta = lifted_scope(&pr, &e).eval_str("[x,y]^2 y")?;
        for &w in &roots {
            let wi = big.inv(w)?;
            let s = vector(&big, 11, &[(4, big.one()), (-4, big.neg(wi))]);
            let sb = vector(&big, 11, &[(4, big.one()), (-4, wi)]);
            c.truth(
                format!("{t}: eta s = w s for w = {}", big.format(w)),
                is_eigvec(&eta, &s, w),
            );
            c.truth(
                format!("{t}: eta' sbar = w sbar for w = {}", big.format(w)),
                is_eigvec(&eta.transpose(), &sb, w),
            );
        }
    }
    // p > 2: tau is a bireflection with the listed action
    for (k, a) in instances(&[3, 5, 7, 9], 2)? {
        let t = tag(&k, a);
        let pr = pair(11, &k, a)?;
        let mut sc = scope(&pr);
        sc.define("tau", "[x,y]^16")?;
        let tau = sc.get("tau").unwrap().clone();
        c.eq(
            format!("{t}: dim of the fixed space of tau"),
            20,
            eig_dim(&tau, k.one())?,
        );
        let u = vector(&k, 11, &[(7, k.one()), (11, k.from_int(-1))]);
        for j in 1..=11 {
            let coef = match j {
                10 => "8a",
                1 | 2 | 5 | 9 => "4a^2",
                3 | 4 | 6 | 8 => "-4a^2",
                _ => "0",
            };
            let ej = vector(&k, 11, &[(j, k.one())]);
            let want = add_vecs(&k, &ej, &scale_vec(&k, &u, elem(&k, a, coef)?));
            check_vec(
                &mut c,
                format!("{t}: tau e_{j}"),
                &k,
                &want,
                &tau.mul_vec(&ej),
            );
        }
        let m = on_v(&sc.eval_str("tau tau^{y^2}")?, 11)?;
        let want = poly(&k, a, "(t-1)^9 (t^2-2(16a^4+32a^3+1)t+1)")?;
        check_charpoly(&mut c, &format!("{t}: chi(tau tau^(y^2)|V)"), &m, &want)?;
    }
    for (k, a) in instances(&[4, 8, 16], 2)? {
        let t = tag(&k, a);
        let pr = pair(11, &k, a)?;
        let mut sc = scope(&pr);
        sc.define("tau", "[x,y]^8")?;
        let tv = on_v(sc.get("tau").unwrap(), 11)?;
        check_charpoly(
            &mut c,
            &format!("{t}: chi(tau|V)"),
            &tv,
            &poly(&k, a, "(t+1)^9 (t^2+a^8 t+1)")?,
        )?;
        check_charpoly(
            &mut c,
            &format!("{t}: chi(tau^2|V)"),
            &(&tv * &tv),
            &poly(&k, a, "(t+1)^9 (t^2+a^16 t+1)")?,
        )?;
        check_elem(
            &mut c,
            format!("{t}: tr(tau|V)"),
            &k,
            elem(&k, a, "a^8+1")?,
            tv.trace(),
        );
        let tx = on_v(&sc.eval_str("[tau,x]")?, 11)?;
        check_elem(
            &mut c,
            format!("{t}: tr([tau,x]|V)"),
            &k,
            elem(&k, a, "(a+1)^16")?,
            tx.trace(),
        );
        c.eq(
            format!("{t}: dim of the fixed space of tau|V"),
            8,
            eig_dim(&tv, k.one())?,
        );
    }
    Ok(c)
}
