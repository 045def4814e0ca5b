//! Property tests for the invariants of each module.

use proptest::prelude::*;

use sympgen::claims::quadform::{invariant_form, FormResult};
use sympgen::construct::{
    block_decomposition, build, default_recipe, field_of_order, gram, Recipe,
};
use sympgen::gf::{embed, Field, FieldRef};
use sympgen::grouporder::{
    closure_bfs, element_order, naive_order, order_sl, order_sp, prime_set, varpi, GroupError,
};
use sympgen::matrix::Mat;
use sympgen::poly::Poly;

const ORDERS: [u64; 18] = [
    2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 32, 49,
];

fn field(q: u64) -> FieldRef {
    field_of_order(q).unwrap()
}

fn any_field() -> impl Strategy<Value = FieldRef> {
    proptest::sample::select(ORDERS.to_vec()).prop_map(field)
}

fn field_and_elems(count: usize) -> impl Strategy<Value = (FieldRef, Vec<u32>)> {
    any_field().prop_flat_map(move |k| {
        let q = k.order() as u32;
        (Just(k), proptest::collection::vec(0..q, count))
    })
}

fn random_matrix(d: usize) -> impl Strategy<Value = (FieldRef, Mat)> {
    proptest::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]).prop_flat_map(move |q| {
        (
            Just(field(q)),
            proptest::collection::vec(0..q as u32, d * d),
        )
            .prop_map(move |(k, raw)| {
                let m = Mat::from_fn(&k, d, d, |i, j| k.wrap(raw[i * d + j]));
                (k, m)
            })
    })
}

/// A word in the generators of a pair, given as a list of letters.
fn word_of(x: &Mat, y: &Mat, letters: &[u8]) -> Mat {
    let mut m = Mat::identity(x.field(), x.rows());
    for &l in letters {
        m = if l == 0 { &m * x } else { &m * y };
    }
    m
}

fn small_pair() -> impl Strategy<Value = (usize, u64, Vec<u8>)> {
    (
        proptest::sample::select(vec![4usize, 5, 6, 7, 8]),
        proptest::sample::select(vec![3u64, 4, 5, 7, 8, 9]),
        proptest::collection::vec(0u8..2, 1..20),
    )
}

fn pair_for(n: usize, q: u64) -> sympgen::construct::GeneratorPair {
    let k = field(q);
    build(default_recipe(n, q), n, &k, k.primitive()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // ---- finite fields

    #[test]
    fn fermat_and_order_divides((k, raw) in field_and_elems(4)) {
        let q = k.order();
        for r in raw.into_iter().filter(|&r| r != 0) {
            let b = k.wrap(r);
            prop_assert_eq!(k.pow(b, q as i64 - 1).unwrap(), k.one());
            prop_assert_eq!((q - 1) % k.mult_order(b).unwrap(), 0);
        }
    }

    #[test]
    fn frobenius_is_a_ring_map((k, raw) in field_and_elems(2)) {
        let (a, b) = (k.wrap(raw[0]), k.wrap(raw[1]));
        prop_assert_eq!(k.frobenius(k.add(a, b)), k.add(k.frobenius(a), k.frobenius(b)));
        prop_assert_eq!(k.frobenius(k.mul(a, b)), k.mul(k.frobenius(a), k.frobenius(b)));
    }

    #[test]
    fn subfield_degree_is_least_fixing_power((k, raw) in field_and_elems(3)) {
        let p = k.p();
        for r in raw {
            let b = k.wrap(r);
            let d = k.subfield_degree(b);
            let fixed = |e: u32| k.pow(b, p.pow(e) as i64).unwrap() == b;
            prop_assert!(fixed(d));
            for e in 1..d {
                if d % e == 0 {
                    prop_assert!(!fixed(e));
                }
            }
        }
    }

    // ---- polynomials

    #[test]
    fn factorization_multiplies_back((k, raw) in field_and_elems(9)) {
        let f = Poly::from_elems(&k, &raw.iter().map(|&r| k.wrap(r)).collect::<Vec<_>>());
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let fac = f.factor().unwrap();
        prop_assert_eq!(fac.expand(&k), f.clone());
        for (g, _) in &fac.factors {
            prop_assert!(g.is_monic() && g.is_irreducible());
        }
        let squarefree = fac.factors.iter().all(|(_, m)| *m == 1);
        prop_assert_eq!(f.gcd(&f.derivative()).degree() == Some(0), squarefree);
    }

    // ---- matrices

    #[test]
    fn hessenberg_matches_berkowitz((_, m) in (1usize..=12).prop_flat_map(random_matrix)) {
        prop_assert_eq!(m.char_poly().unwrap(), m.char_poly_berkowitz().unwrap());
    }

    #[test]
    fn similarity_invariants_multiply_to_charpoly((k, m) in (1usize..=8).prop_flat_map(random_matrix)) {
        let mut acc = Poly::one(&k);
        for p in m.similarity_invariants().unwrap() {
            acc = acc.mul(&p);
        }
        prop_assert_eq!(acc, m.char_poly().unwrap());
    }

    #[test]
    fn eigenspace_dimension_is_bounded((k, m) in (1usize..=8).prop_flat_map(random_matrix), r in 0u32..9) {
        let lambda = k.wrap(r % k.order() as u32);
        let dim = m.eigenspace(lambda, None).unwrap().cols();
        let chi = m.char_poly().unwrap();
        let lin = Poly::linear(&k, lambda);
        let alg = chi.factor().unwrap().multiplicity_of(&lin) as usize;
        prop_assert!(dim <= alg);
        prop_assert_eq!(dim > 0, alg > 0);
    }

    #[test]
    fn symplectic_words_have_det_one_and_reciprocal_charpoly((n, q, w) in small_pair()) {
        let pr = pair_for(n, q);
        let g = word_of(&pr.x, &pr.y, &w);
        let j = gram(pr.field(), n);
        prop_assert_eq!(&(&g.transpose() * &j) * &g, j);
        prop_assert_eq!(g.det().unwrap(), pr.field().one());
        prop_assert!(g.char_poly().unwrap().is_self_reciprocal());
    }

    // ---- group orders

    #[test]
    fn element_order_agrees_with_iteration((n, q, w) in small_pair()) {
        let pr = pair_for(n, q);
        let g = word_of(&pr.x, &pr.y, &w);
        if let Some(o) = naive_order(&g, 10_000) {
            prop_assert_eq!(element_order(&g).unwrap().value(), Some(o as u128));
        }
        let ambient = prime_set(&order_sp(n as u32, q).unwrap());
        prop_assert!(varpi(&g).unwrap().is_subset(&ambient));
    }
}

#[test]
fn embeddings_are_injective_homomorphisms() {
    for (small, big) in [(2u64, 4u64), (2, 8), (2, 16), (4, 16), (3, 9)] {
        let (s, b) = (field(small), field(big));
        let e = embed(&s, &b).unwrap();
        let mut images: Vec<u32> = s.elements().map(|x| e.apply(x).raw()).collect();
        images.sort();
        images.dedup();
        assert_eq!(images.len() as u64, small);
        for x in s.elements() {
            for y in s.elements() {
                assert_eq!(e.apply(s.add(x, y)), b.add(e.apply(x), e.apply(y)));
                assert_eq!(e.apply(s.mul(x, y)), b.mul(e.apply(x), e.apply(y)));
            }
        }
    }
}

#[test]
fn field_moduli_are_irreducible_with_full_residue_order() {
    for q in ORDERS {
        let k = field(q);
        if k.degree() == 1 {
            continue;
        }
        let fp = Field::prime(k.p()).unwrap();
        let m = Poly::from_raw(&fp, k.modulus().to_vec());
        assert!(m.is_irreducible(), "modulus of GF({q})");
        // t^(q-1) = 1 modulo m, and the residue ring has q elements
        let t = Poly::t(&fp);
        assert!(t.powmod(q as u128 - 1, &m).is_one());
        assert_eq!(fp.order().pow(m.degree().unwrap() as u32), q);
    }
}

#[test]
fn sp_order_is_divisible_by_sl_order() {
    for n in 2..=14u32 {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let sp = order_sp(n, q).unwrap();
            let sl = order_sl(n, q).unwrap();
            assert!(sl.divides(&sp), "n={n} q={q}");
        }
    }
}

#[test]
fn generated_groups_are_not_small() {
    for (n, q) in [(4usize, 3u64), (5, 3), (6, 2), (7, 2), (8, 3)] {
        let pr = pair_for(n, q);
        let r = closure_bfs(&[pr.x.clone(), pr.y.clone()], 20_000);
        assert!(
            matches!(r, Err(GroupError::CapExceeded(_))),
            "n={n} q={q}: {r:?}"
        );
    }
}

#[test]
fn general_factors_commute() {
    for n in [4usize, 6, 7, 10, 12, 13, 14] {
        for q in [3u64, 4, 5] {
            let k = field(q);
            let pr = build(Recipe::General, n, &k, k.primitive()).unwrap();
            let f = pr.factors.as_ref().unwrap();
            assert_eq!(&f.x1 * &f.x2, &f.x2 * &f.x1, "n={n} q={q}");
            assert_eq!(&f.y1 * &f.y2, &f.y2 * &f.y1, "n={n} q={q}");
        }
    }
}

#[test]
fn decomposition_dimensions_sum_to_2n() {
    for n in [10usize, 12, 13, 14, 15, 16] {
        for q in [3u64, 4, 5] {
            let k = field(q);
            let pr = build(Recipe::General, n, &k, k.primitive()).unwrap();
            let d = block_decomposition(&pr).unwrap();
            let total: usize = d.summands.iter().map(|s| s.basis.len()).sum();
            assert_eq!(total, 2 * n);
            d.check_partition().unwrap();
            let c = pr.commutator();
            for s in &d.summands {
                d.restrict(&c, s).unwrap();
            }
        }
    }
}

#[test]
fn orthogonal_generators_admit_a_form() {
    // O+_4(2) with polar form J: Q = x1 x-1 + x2 x-2 is preserved by the
    // swaps e1 <-> e2, e-1 <-> e-2 and e1 <-> e-1
    let k = field(2);
    let swap12 = Mat::from_ints(
        &k,
        &[
            vec![0, 1, 0, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, 1, 0],
        ],
    );
    let swap_hyp = Mat::from_ints(
        &k,
        &[
            vec![0, 0, 1, 0],
            vec![0, 1, 0, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 0, 1],
        ],
    );
    assert!(matches!(
        invariant_form(&[swap12, swap_hyp]).unwrap(),
        FormResult::FormFound { .. }
    ));
}
