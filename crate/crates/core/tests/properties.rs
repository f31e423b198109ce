use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qcone_core::expsolve::{generate_constraints, realization_targets, rref, Ansatz, Unknown};
use qcone_core::ncalg::{Element, GenId, Word};
use qcone_core::presets::{plane_automorphism, preset};
use qcone_core::{build_preset, GaussRat, OperatorAlgebra, Presentation, PresetName, QLaurent};

fn gauss() -> impl Strategy<Value = GaussRat> {
    (-5i64..=5, -5i64..=5, 1i64..=4).prop_map(|(re, im, den)| {
        GaussRat::new(
            BigRational::new(re.into(), den.into()),
            BigRational::new(im.into(), den.into()),
        )
    })
}

fn laurent() -> impl Strategy<Value = QLaurent> {
    prop::collection::vec((-6i32..=6, gauss()), 0..4).prop_map(|terms| {
        terms.into_iter().fold(QLaurent::zero(), |acc, (e, c)| {
            &acc + &QLaurent::q_half_pow(e).scale(&c)
        })
    })
}

/// Raw letters and coefficients; letters are reduced modulo the alphabet size.
fn raw_element(max_len: usize) -> impl Strategy<Value = Vec<(Vec<u16>, QLaurent)>> {
    prop::collection::vec(
        (prop::collection::vec(0u16..64, 0..=max_len), laurent()),
        0..4,
    )
}

fn element(p: &Presentation<QLaurent>, raw: &[(Vec<u16>, QLaurent)]) -> Element<QLaurent> {
    let n = p.alphabet().len() as u16;
    let mut e = Element::zero();
    for (letters, c) in raw {
        e.add_term(Word(letters.iter().map(|g| GenId(g % n)).collect()), c);
    }
    e
}

const CONFLUENT: [PresetName; 8] = [
    PresetName::QplaneA,
    PresetName::QplaneB,
    PresetName::QplaneShort,
    PresetName::Twistor,
    PresetName::Nullvector,
    PresetName::NullvectorDiff,
    PresetName::DerivOnly,
    PresetName::Momentum,
];

const STARRED: [PresetName; 3] = [
    PresetName::Twistor,
    PresetName::Nullvector,
    PresetName::NullvectorDiff,
];

/// Reduces by picking a random term and a random redex until nothing applies.
fn random_reduce(
    p: &Presentation<QLaurent>,
    e: &Element<QLaurent>,
    rng: &mut ChaCha8Rng,
) -> Element<QLaurent> {
    let mut cur = e.clone();
    loop {
        let reducible: Vec<(Word, QLaurent)> = cur
            .terms()
            .filter(|(w, _)| !p.is_normal(w))
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        if reducible.is_empty() {
            return cur;
        }
        let (w, c) = &reducible[rng.gen_range(0..reducible.len())];
        let positions = p.redexes(w);
        let pos = positions[rng.gen_range(0..positions.len())];
        let replacement = p.rewrite_at(w, pos).expect("redex");
        let mut next = cur.sub(&Element::term(w.clone(), c.clone()));
        next.add_scaled(&replacement, c);
        cur = next;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &QLaurent::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn star_is_an_involutive_ring_map(a in laurent(), b in laurent()) {
        prop_assert_eq!(a.star().star(), a.clone());
        prop_assert_eq!(a.invert_q().invert_q(), a.clone());
        prop_assert_eq!((&a * &b).star(), &a.star() * &b.star());
        prop_assert_eq!((&a + &b).star(), &a.star() + &b.star());
    }

    #[test]
    fn expansion_is_multiplicative(a in laurent(), b in laurent(), order in 0usize..5) {
        let lhs = (&a * &b).expand_h(order);
        let rhs = a.expand_h(order).mul(&b.expand_h(order));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normalize_is_idempotent_and_linear(idx in 0usize..9, x in raw_element(4), y in raw_element(4), c in laurent()) {
        let p = build_preset(PresetName::ALL[idx]);
        let (a, b) = (element(&p, &x), element(&p, &y));
        let na = p.normalize(&a);
        prop_assert_eq!(p.normalize(&na), na.clone());
        prop_assert!(na.terms().all(|(w, _)| p.is_normal(w)));
        let combo = a.add(&b.scale(&c));
        prop_assert_eq!(p.normalize(&combo), na.add(&p.normalize(&b).scale(&c)));
    }

    #[test]
    fn product_is_associative(idx in 0usize..8, x in raw_element(2), y in raw_element(2), z in raw_element(2)) {
        let p = build_preset(CONFLUENT[idx]);
        let (a, b, c) = (element(&p, &x), element(&p, &y), element(&p, &z));
        prop_assert_eq!(p.mul(&p.mul(&a, &b), &c), p.mul(&a, &p.mul(&b, &c)));
    }

    #[test]
    fn star_is_an_antimultiplicative_involution(idx in 0usize..3, x in raw_element(3), y in raw_element(3)) {
        let p = build_preset(STARRED[idx]);
        let (a, b) = (element(&p, &x), element(&p, &y));
        let sa = p.star_element(&a).unwrap();
        prop_assert_eq!(p.star_element(&sa).unwrap(), p.normalize(&a));
        let sb = p.star_element(&b).unwrap();
        prop_assert_eq!(p.star_element(&p.mul(&a, &b)).unwrap(), p.mul(&sb, &sa));
    }

    #[test]
    fn rewriting_decreases_deglex(idx in 0usize..9, letters in prop::collection::vec(0u16..64, 2..6)) {
        let p = build_preset(PresetName::ALL[idx]);
        let n = p.alphabet().len() as u16;
        let w = Word(letters.into_iter().map(|g| GenId(g % n)).collect());
        for pos in p.redexes(&w) {
            let rhs = p.rewrite_at(&w, pos).unwrap();
            prop_assert!(rhs.terms().all(|(v, _)| *v < w));
        }
    }

    #[test]
    fn reduction_order_does_not_matter(idx in 0usize..8, x in raw_element(4), seed in any::<u64>()) {
        let p = build_preset(CONFLUENT[idx]);
        let e = element(&p, &x);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(random_reduce(&p, &e, &mut rng), p.normalize(&e));
    }

    #[test]
    fn differential_squares_to_zero(idx in 0usize..5, x in raw_element(4)) {
        let names = [
            PresetName::QplaneA,
            PresetName::QplaneB,
            PresetName::QplaneShort,
            PresetName::Twistor,
            PresetName::NullvectorDiff,
        ];
        let pr = preset(names[idx]);
        let p = &pr.presentation;
        let d = pr.derivation.as_ref().unwrap();
        // δ acts on the normal-form basis.
        let e = p.normalize(&element(p, &x));
        let once = d.apply(&e, p).unwrap();
        prop_assert!(d.apply(&once, p).unwrap().is_zero());
    }

    #[test]
    fn plane_automorphism_is_an_involution(x in raw_element(4)) {
        let p = build_preset(PresetName::QplaneShort);
        let a = plane_automorphism();
        let e = element(&p, &x);
        let twice = a.apply(&a.apply(&e, &p, &p).unwrap(), &p, &p).unwrap();
        prop_assert_eq!(twice, p.normalize(&e));
    }

    #[test]
    fn operator_action_is_linear(x in raw_element(3), y in raw_element(3), c in laurent(), op in 0usize..5) {
        let ops = OperatorAlgebra::new();
        let coords = ops.coordinates();
        let (f, g) = (element(coords, &x), element(coords, &y));
        let op = match op {
            4 => ops.box_q(),
            k => ops.word(&[["D11", "D12", "D21", "D22"][k]]),
        };
        let lhs = ops.act(&op, &f.add(&g.scale(&c))).unwrap();
        let rhs = ops.act(&op, &f).unwrap().add(&ops.act(&op, &g).unwrap().scale(&c));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn row_reduction_is_deterministic() {
    let system = generate_constraints(&Ansatz::symbolic(), &realization_targets());
    let a = rref(&system.forms(), &Unknown::ALL);
    let again = generate_constraints(&Ansatz::symbolic(), &realization_targets());
    assert_eq!(system, again);
    assert_eq!(a, rref(&again.forms(), &Unknown::ALL));
}

#[test]
fn every_preset_validates() {
    for name in PresetName::ALL {
        let report = build_preset(name).validate();
        assert!(report.is_valid(), "{name}: {:?}", report.violations);
    }
}
