//! n = 4, 5 and 6.

use crate::construct::Recipe;
use crate::grouporder::element_order;
use crate::matrix::Mat;

use super::super::{Checks, ClaimError};
use super::*;

pub(super) fn charpoly_n4() -> Result<Checks, ClaimError> {
    let mut c = Checks::new();
    for (k, a) in instances(&[3, 4, 5, 7, 8, 9, 11], 2)? {
        let t = tag(&k, a);
        let pr = pair(4, &k, a)?;
        let want = poly(&k, a, "t^8+2t^7+t^6+2t^5+4t^4+2t^3+t^2+2t+1")?;
        check_charpoly(&mut c, &format!("{t}: chi([x,y])"), &pr.commutator(), &want)?;
        c.eq(
            format!("{t}: chi([x,y]) factored"),
            &want,
            &poly(&k, a, "(t+1)^4 (t^2-t+1)^2")?,
        );
        let want = poly(&k, a, "t^8 - a t^7 + a t^5 - (a^2+1)t^4 + a t^3 - a t + 1")?;
        check_charpoly(&mut c, &format!("{t}: chi(x y)"), &(&pr.x * &pr.y), &want)?;
    }
    Ok(c)
}

pub(super) fn main4() -> Result<Checks, ClaimError> {
    let mut c = Checks::new();
    // the -1 eigenvectors of [x,y] and of its transpose
    for (k, a) in instances(&[5, 7, 11, 13, 25], 2)? {
        let t = tag(&k, a);
        let pr = pair(4, &k, a)?;
        let cm = pr.commutator();
        let cmt = cm.transpose();
        let m1 = k.from_int(-1);
        let ia = elem(&k, a, "1/a")?;
        let w1 = vector(&k, 4, &[(1, k.one()), (3, k.neg(ia)), (-3, k.neg(ia))]);
        let w2 = vector(&k, 4, &[(2, k.one()), (3, ia), (-3, ia), (-4, m1)]);
        let wb1 = vector(&k, 4, &[(3, k.one()), (-1, a), (-3, m1)]);
        let wb2 = vector(&k, 4, &[(3, m1), (4, a), (-2, a), (-3, k.one())]);
        check_vec(
            &mut c,
            format!("{t}: x w1 = w2"),
            &k,
            &w2,
            &pr.x.mul_vec(&w1),
        );
        check_vec(
            &mut c,
            format!("{t}: x' wbar1 = wbar2"),
            &k,
            &wb2,
            &pr.x.transpose().mul_vec(&wb1),
        );
        for (name, m, v) in [
            ("w1", &cm, &w1),
            ("w2", &cm, &w2),
            ("wbar1", &cmt, &wb1),
            ("wbar2", &cmt, &wb2),
        ] {
            c.truth(
                format!("{t}: {name} in the -1 eigenspace"),
                is_eigvec(m, v, m1),
            );
        }
        c.eq(
            format!("{t}: dim of the -1 eigenspace of [x,y]"),
            2,
            eig_dim(&cm, m1)?,
        );
        c.eq(
            format!("{t}: dim of the -1 eigenspace of [x,y]'"),
            2,
            eig_dim(&cmt, m1)?,
        );
    }
    // determinants of the vectors spanning V
    let words = [
        "y",
        "y^2",
        "(y^2 x)^2",
        "(y^2 x)^3",
        "(y^2 x)^4",
        "(y^2 x)^5",
        "(y^2 x)^6",
    ];
    let twords = [
        "y'",
        "(y^2)'",
        "((y^2 x)^2)'",
        "((y^2 x)^3)'",
        "((y^2 x)^4)'",
        "((y^2 x)^5)'",
        "((y^2 x)^6)'",
    ];
    for (k, a) in instances(&[3, 4, 5, 7, 8, 9], 3)? {
        let t = tag(&k, a);
        let pr = pair(4, &k, a)?;
        let sc = scope(&pr);
        let one = k.one();
        let cases: [(&str, Vec<_>, &[&str], &str); 3] = [
            (
                "v",
                vector(&k, 4, &[(1, one), (2, one), (-4, k.neg(one))]),
                &words,
                "(a^2+3)^4",
            ),
            (
                "vbar",
                vector(&k, 4, &[(4, one), (-1, one), (-2, one)]),
                &twords,
                "(a^2+3)^4",
            ),
            (
                "u",
                {
                    let m2a = elem(&k, a, "-2/a")?;
                    vector(
                        &k,
                        4,
                        &[(1, one), (2, k.neg(one)), (3, m2a), (-3, m2a), (-4, one)],
                    )
                },
                &words,
                "(a^4-a^2+4)^4/a^8",
            ),
        ];
        for (name, v, ws, want) in cases {
            let mut cols = vec![v.clone()];
            cols.extend(orbit(&sc, ws, &v)?);
            check_elem(
                &mut c,
                format!("{t}: det M({name})"),
                &k,
                elem(&k, a, want)?,
                det_of_columns(&k, &cols)?,
            );
        }
    }
    // [x,y]^3 is minus a bireflection
    for (k, a) in instances(&[3, 4, 5, 7, 8, 9], 2)? {
        let t = tag(&k, a);
        let pr = pair(4, &k, a)?;
        let c3 = pr.commutator().pow_u128(3);
        check_charpoly(
            &mut c,
            &format!("{t}: chi([x,y]^3)"),
            &c3,
            &poly(&k, a, "(t+1)^8")?,
        )?;
        c.eq(
            format!("{t}: dim of the -1 eigenspace of [x,y]^3"),
            6,
            eig_dim(&c3, k.from_int(-1))?,
        );
        c.truth(
            format!("{t}: [x,y]^(3p) = -I"),
            c3.pow_u128(k.p() as u128) == Mat::identity(&k, 8).neg(),
        );
    }
    // orders of C^i y with C = [x,y]
    for (q, a, i, want) in [
        (3, 1, 2, 78u128),
        (3, -1, 2, 78),
        (5, 1, 2, 186),
        (5, -1, 2, 186),
        (5, 2, 3, 186),
        (5, -2, 3, 186),
    ] {
        let k = field(q)?;
        let a = k.from_int(a);
        let pr = pair(4, &k, a)?;
        let g = &pr.commutator().pow_u128(i) * &pr.y;
        let o = element_order(&g)?.value();
        c.eq_dbg(format!("{}: order of C^{i} y", tag(&k, a)), Some(want), o);
    }
    c.resolve_open("C read as [x,y] reproduces the orders 6*13 and 6*31");
    Ok(c)
}

pub(super) fn main5() -> Result<Checks, ClaimError> {
    let mut c = Checks::new();
    for (k, a) in instances(&[3, 4, 5, 7, 8, 9], 2)? {
        let t = tag(&k, a);
        let pr = pair_with(Recipe::N5, 5, &k, a)?;
        let sc = scope(&pr);
        let tau = sc.eval_str("[x,y]^6")?;
        check_charpoly(
            &mut c,
            &format!("{t}: chi(tau)"),
            &tau,
            &poly(&k, a, "(t-1)^10")?,
        )?;
        c.eq(
            format!("{t}: dim of the fixed space of tau"),
            8,
            eig_dim(&tau, k.one())?,
        );
        c.eq_dbg(
            format!("{t}: order of tau"),
            Some(k.p() as u128),
            element_order(&tau)?.value(),
        );
        let want = poly(&k, a, "(t^2+t+1)^2 (t^3-a^2 t-1)(t^3+a^2 t^2-1)")?;
        check_charpoly(&mut c, &format!("{t}: chi(y tau)"), &(&pr.y * &tau), &want)?;
        check_elem(
            &mut c,
            format!("{t}: tr(x y)"),
            &k,
            k.from_int(-1),
            (&pr.x * &pr.y).trace(),
        );
    }
    // independence of the w-vectors and their transposed partners
    let words = [
        "y",
        "y^2",
        "x y^2",
        "y x y^2",
        "(x y)^2 y",
        "(y x)^2 y^2",
        "(x y)^3 y",
        "(y x)^3 y^2",
        "y^2 (x y)^3 y",
    ];
    let twords = [
        "y'",
        "(y^2)'",
        "(y x)'",
        "(y x y)'",
        "((y x)^2)'",
        "((y x)^2 y)'",
        "((y x)^2 y^2)'",
        "((y x)^3)'",
        "((y x)^3 y)'",
    ];
    for q in [3, 4, 5, 7, 8, 9, 11, 13] {
        let k = field(q)?;
        let (mut bad_w, mut bad_wb) = (Vec::new(), Vec::new());
        for a in enumeration(&k) {
            let pr = pair_with(Recipe::N5, 5, &k, a)?;
            let sc = scope(&pr);
            let cond = elem(&k, a, "(a^2-2)(a^2+3)(4a^6-27)")?;
            let w = vector(&k, 5, &[(4, k.one())]);
            let mut cols = vec![w.clone()];
            cols.extend(orbit(&sc, &words, &w)?);
            if !cond.is_zero() && rank_of_columns(&k, &cols) != 10 {
                bad_w.push(k.format(a));
            }
            let one = k.one();
            let wb = vector(&k, 5, &[(2, one), (-1, one), (-3, one)]);
            let mut cols = vec![wb.clone()];
            cols.extend(orbit(&sc, &twords, &wb)?);
            let independent = rank_of_columns(&k, &cols) == 10;
            if independent != !elem(&k, a, "a^2+3")?.is_zero() {
                bad_wb.push(k.format(a));
            }
        }
        c.eq(
            format!("q={q}: a with dependent w-vectors although the condition holds"),
            "[]".to_string(),
            format!("[{}]", bad_w.join(",")),
        );
        c.eq(
            format!("q={q}: a where wbar-independence differs from a^2+3 != 0"),
            "[]".to_string(),
            format!("[{}]", bad_wb.join(",")),
        );
    }
    Ok(c)
}

pub(super) fn main6() -> Result<Checks, ClaimError> {
    let mut c = Checks::new();
    let words1 = [
        "y",
        "y^2",
        "x y^2",
        "(x y)^2 y",
        "y x y^2",
        "y (x y^2)^2",
        "(x y)^3 y",
        "[x,y] x y^2",
        "y [x,y] x y^2",
        "x y [x,y] x y^2",
        "[x,y] (x y^2)^2",
    ];
    let words2 = [
        "y'",
        "(y^2)'",
        "(y x y)'",
        "(y x y^2)'",
        "((y x)^2)'",
        "((y x)^2 y)'",
        "((y x)^2 y^2)'",
        "((y x)^3)'",
        "((y x)^3 y)'",
        "((y x)^2 y^2 x)'",
        "(y x y [x,y])'",
    ];
    for (k, a) in instances(&[3, 5, 7, 8, 9, 11, 13], 2)? {
        let t = tag(&k, a);
        let pr = pair_with(Recipe::N6Alt, 6, &k, a)?;
        let sc = scope(&pr);
        let cm = pr.commutator();
        let xy = &pr.x * &pr.y;
        check_elem(
            &mut c,
            format!("{t}: tr(y)"),
            &k,
            k.from_int(-3),
            pr.y.trace(),
        );
        check_elem(&mut c, format!("{t}: tr(x y)"), &k, a, xy.trace());
        check_elem(
            &mut c,
            format!("{t}: tr([x,y])"),
            &k,
            k.from_int(-2),
            cm.trace(),
        );
        check_elem(
            &mut c,
            format!("{t}: tr([x,y] x y)"),
            &k,
            k.neg(a),
            (&cm * &xy).trace(),
        );
        let want = poly(&k, a, "(t+1)^4 (t^4-t^3+t^2-t+1)^2")?;
        check_charpoly(&mut c, &format!("{t}: chi([x,y])"), &cm, &want)?;
        let c5 = cm.pow_u128(5);
        check_charpoly(
            &mut c,
            &format!("{t}: chi([x,y]^5)"),
            &c5,
            &poly(&k, a, "(t+1)^12")?,
        )?;
        let m1 = k.from_int(-1);
        c.eq(
            format!("{t}: dim of the -1 eigenspace of [x,y]^5"),
            10,
            eig_dim(&c5, m1)?,
        );
        c.truth(
            format!("{t}: [x,y]^(5p) = -I"),
            c5.pow_u128(k.p() as u128) == Mat::identity(&k, 12).neg(),
        );
        let one = k.one();
        let na = k.neg(a);
        let w1 = vector(&k, 6, &[(1, a), (-3, a), (5, m1), (-5, m1)]);
        let w2 = vector(&k, 6, &[(2, a), (6, na), (-4, a), (5, one), (-5, one)]);
        let wb1 = vector(&k, 6, &[(3, a), (-1, na), (5, m1), (-5, one)]);
        let wb2 = vector(&k, 6, &[(4, a), (-2, na), (-6, a), (5, one), (-5, m1)]);
        let cmt = cm.transpose();
        check_vec(
            &mut c,
            format!("{t}: x w1 = w2"),
            &k,
            &w2,
            &pr.x.mul_vec(&w1),
        );
        check_vec(
            &mut c,
            format!("{t}: x' wbar1 = wbar2"),
            &k,
            &wb2,
            &pr.x.transpose().mul_vec(&wb1),
        );
        for (name, m, v) in [
            ("w1", &cm, &w1),
            ("w2", &cm, &w2),
            ("wbar1", &cmt, &wb1),
            ("wbar2", &cmt, &wb2),
        ] {
            c.truth(
                format!("{t}: {name} in the -1 eigenspace"),
                is_eigvec(m, v, m1),
            );
        }
        let v = add_vecs(&k, &w1, &w2);
        let mut cols = vec![v.clone()];
        cols.extend(orbit(&sc, &words1, &v)?);
        let want = elem(&k, a, "a^12 (a^2+1)^2 (a^4+5a^2+5)(a^5-a^4+3a^3-5a^2+3a-5)")?;
        check_elem(
            &mut c,
            format!("{t}: det M (first case)"),
            &k,
            want,
            det_of_columns(&k, &cols)?,
        );
        let vb = add_vecs(&k, &wb1, &wb2);
        let mut cols = vec![vb.clone()];
        cols.extend(orbit(&sc, &words2, &vb)?);
        let want = elem(&k, a, "a^12 (a^2+1)^3 (a^10+9a^8+45a^6+123a^4+159a^2+75)")?;
        check_elem(
            &mut c,
            format!("{t}: det M (second case)"),
            &k,
            want,
            det_of_columns(&k, &cols)?,
        );
    }
    Ok(c)
}
