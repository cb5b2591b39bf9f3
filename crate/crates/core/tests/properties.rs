use std::sync::OnceLock;

use proptest::prelude::*;
use whitehead_core::catalog::{realize_seifert, seifert_flags};
use whitehead_core::pipeline::{verdict, Evidence};
use whitehead_core::snf::is_divisibility_chain;
use whitehead_core::steinberg::Sign;
use whitehead_core::*;

fn small_groups() -> &'static [(String, FiniteGroup)] {
    static GROUPS: OnceLock<Vec<(String, FiniteGroup)>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        builtin_groups(12)
            .into_iter()
            .map(|e| {
                let g =
                    realize_presentation(&e.construction.presentation().unwrap(), 10_000).unwrap();
                (e.name, g)
            })
            .collect()
    })
}

fn element(order: usize) -> impl Strategy<Value = GroupRingElement> {
    prop::collection::vec((0..order, -4i64..=4), 0..5).prop_map(GroupRingElement::from_terms)
}

fn group_and_triple() -> impl Strategy<Value = (usize, [GroupRingElement; 3])> {
    (0..small_groups().len()).prop_flat_map(|k| {
        let n = small_groups()[k].1.order();
        (Just(k), [element(n), element(n), element(n)])
    })
}

fn steinberg_word(order: usize, dim: usize) -> impl Strategy<Value = SteinbergWord> {
    prop::collection::vec((1..=dim, 1..dim, element(order)), 0..5).prop_map(move |letters| {
        letters
            .into_iter()
            .fold(SteinbergWord::empty(), |w, (i, shift, lam)| {
                // j ≠ i by construction
                let j = (i - 1 + shift) % dim + 1;
                w.concat(&SteinbergWord::symbol(i, j, lam).unwrap())
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_ring_is_a_ring((k, [a, b, c]) in group_and_triple()) {
        let g = &small_groups()[k].1;
        prop_assert_eq!(a.mul(&b, g).mul(&c, g), a.mul(&b.mul(&c, g), g));
        prop_assert_eq!(a.mul(&b.add(&c), g), a.mul(&b, g).add(&a.mul(&c, g)));
        prop_assert_eq!(a.add(&b).mul(&c, g), a.mul(&c, g).add(&b.mul(&c, g)));
        prop_assert_eq!(a.mul(&b, g).augmentation(), a.augmentation() * b.augmentation());
        // the involution reverses products
        prop_assert_eq!(a.mul(&b, g).conjugate(g), b.conjugate(g).mul(&a.conjugate(g), g));
    }

    #[test]
    fn evaluation_is_multiplicative(
        (k, u, v) in (0..small_groups().len()).prop_flat_map(|k| {
            let n = small_groups()[k].1.order();
            (Just(k), steinberg_word(n, 3), steinberg_word(n, 3))
        })
    ) {
        let g = &small_groups()[k].1;
        let uv = evaluate(&u.concat(&v), 3, g).unwrap();
        let prod = evaluate(&u, 3, g).unwrap().mul(&evaluate(&v, 3, g).unwrap(), g);
        prop_assert_eq!(uv, prod);
        prop_assert!(k2_membership(&u.concat(&u.inverse()), 3, g).unwrap());
    }

    #[test]
    fn w_elements_are_monomial(k in 0..small_groups().len(), i in 1usize..=4, shift in 1usize..4, x in 0usize..64, plus: bool) {
        let g = &small_groups()[k].1;
        let j = (i - 1 + shift) % 4 + 1;
        let sign = if plus { Sign::Plus } else { Sign::Minus };
        let w = w_element(i, j, x % g.order(), sign, g).unwrap();
        let m = evaluate(&w, 4, g).unwrap();
        let pd = is_pd_form(&m);
        prop_assert!(pd.is_some());
        prop_assert_eq!(pd.unwrap().to_matrix(), m);
    }

    #[test]
    fn smith_certificate(rows in 1usize..6, cols in 1usize..6, seed in prop::collection::vec(-9i64..=9, 36)) {
        let data: Vec<Vec<i64>> = (0..rows).map(|r| seed[r * 6..r * 6 + cols].to_vec()).collect();
        let m = IntMatrix::from_rows(&data);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(s.d.is_diagonal());
        prop_assert!(is_divisibility_chain(&s.diagonal));
    }

    #[test]
    fn lens_data_give_cyclic_groups(b in -4i64..=4, alpha in 2i64..=7, beta in -6i64..=6) {
        prop_assume!(num_integer::Integer::gcd(&alpha, &beta) == 1);
        let predicted = (b * alpha + beta).unsigned_abs() as usize;
        prop_assume!(predicted > 0);
        let s = SeifertInvariants::new(b, Epsilon::O1, 0, vec![(alpha, beta)]).unwrap();
        let (g, h) = realize_seifert(&s, 10_000).unwrap();
        prop_assert_eq!(g.order(), predicted);
        prop_assert!(g.is_abelian());
        prop_assert!(g.generator_images().iter().any(|&x| g.element_order(x) == predicted));
        prop_assert!(centre(&g).contains(&h));
    }

    #[test]
    fn central_fibre_check_agrees(
        b in -3i64..=3,
        n_type: bool,
        fibres in prop::collection::vec((2i64..=5, -4i64..=4), 0..=3),
    ) {
        let exceptional: Vec<(i64, i64)> =
            fibres.into_iter().filter(|&(a, b)| num_integer::Integer::gcd(&a, &b) == 1).collect();
        let (eps, genus) = if n_type { (Epsilon::N1, 1) } else { (Epsilon::O1, 0) };
        let s = SeifertInvariants::new(b, eps, genus, exceptional).unwrap();
        if let Ok((g, h)) = realize_seifert(&s, 20_000) {
            prop_assert!(centre(&g).contains(&h));
            if central_fibre_check(&s, 20_000) == FibreVerdict::NotAmbivalent {
                prop_assert!(!is_ambivalent(&g).ambivalent);
            }
            let (k1, good) = seifert_flags(&s);
            prop_assert!(k1);
            prop_assert_eq!(good, Goodness::Good);
        }
    }
}

#[test]
fn verdict_over_all_flag_combinations() {
    for k1 in [false, true] {
        for goodness in [Goodness::Good, Goodness::Unknown] {
            let ok = k1 && goodness == Goodness::Good;
            for p in 0..4 {
                let v = verdict(Evidence::Rank(p), k1, goodness);
                let expected = match (ok, p) {
                    (false, _) => Verdict::PreconditionsUnmet,
                    (true, 0) => Verdict::NotDetectableByTheta,
                    (true, _) => Verdict::Detectable,
                };
                assert_eq!(v, expected);
            }
            let v = verdict(Evidence::NotAmbivalentByFibre, k1, goodness);
            assert_eq!(v == Verdict::Detectable, ok);
        }
    }
}

#[test]
fn known_orders_reproduced() {
    for e in builtin_groups(60) {
        let g = realize_presentation(&e.construction.presentation().unwrap(), DEFAULT_MAX_COSETS)
            .unwrap();
        assert_eq!(Some(g.order()), e.known_order, "{}", e.name);
    }
}

#[test]
fn catalog_json_roundtrips_names() {
    let entries = builtin_groups(16);
    let json = catalog::catalog_json(&entries).unwrap();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let names: Vec<&str> = v["groups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["name"].as_str().unwrap())
        .collect();
    assert_eq!(names.len(), entries.len());
    for p in v["groups"].as_array().unwrap() {
        Presentation::parse(p["presentation"].as_str().unwrap()).unwrap();
    }
}
