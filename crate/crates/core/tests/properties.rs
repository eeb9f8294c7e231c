use proptest::prelude::*;
use qsvir_core::relations::relation_instance;
use qsvir_core::{
    graded_bracket, lp_eval, lp_mul, multiply, normal_order, q_bracket, rat, DeformationMode, Element, FamilyId,
    GenSym, LaurentPoly, Parity, Rational, RewriteSystem, Strategy as Redex, Word,
};

const MODES: [DeformationMode; 3] = [DeformationMode::Classical, DeformationMode::Q, DeformationMode::PQ];

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, -3i64..=3, -3i64..=3), 0..4).prop_map(|terms| {
        terms.into_iter().fold(LaurentPoly::zero(), |acc, (c, eq, ep)| {
            acc.add(&LaurentPoly::monomial(rat(c, 1), eq, ep))
        })
    })
}

fn gen() -> impl Strategy<Value = GenSym> {
    prop_oneof![
        Just(GenSym::BosonRaise),
        Just(GenSym::BosonLower),
        Just(GenSym::FermiRaise),
        Just(GenSym::FermiLower),
    ]
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(gen(), 0..5).prop_map(Word::from)
}

/// Homogeneous element: words of one parity with small coefficients.
fn element(parity: Parity) -> impl Strategy<Value = Element> {
    prop::collection::vec((word(), -3i64..=3, -2i64..=2), 1..4).prop_map(move |terms| {
        let mut x = Element::zero();
        for (w, c, e) in terms {
            if qsvir_core::words::grade(&w) == parity {
                x.add_term(w, LaurentPoly::monomial(rat(c, 1), e, 0));
            }
        }
        x
    })
}

fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
}

fn graded() -> impl Strategy<Value = (Parity, Element)> {
    parity().prop_flat_map(|p| (Just(p), element(p)))
}

fn sample() -> (Rational, Rational) {
    (rat(3, 2), rat(5, 7))
}

proptest! {
    #[test]
    fn laurent_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(lp_mul(&a, &b), lp_mul(&b, &a));
        prop_assert_eq!(lp_mul(&lp_mul(&a, &b), &c), lp_mul(&a, &lp_mul(&b, &c)));
        prop_assert_eq!(lp_mul(&a, &b.add(&c)), lp_mul(&a, &b).add(&lp_mul(&a, &c)));
        prop_assert_eq!(lp_mul(&a, &LaurentPoly::one()), a.clone());
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly()) {
        let (q, p) = sample();
        let ea = lp_eval(&a, &q, &p).unwrap();
        let eb = lp_eval(&b, &q, &p).unwrap();
        prop_assert_eq!(lp_eval(&lp_mul(&a, &b), &q, &p).unwrap(), &ea * &eb);
        prop_assert_eq!(lp_eval(&a.add(&b), &q, &p).unwrap(), ea + eb);
    }

    #[test]
    fn q_bracket_at_one_is_the_integer(n in -12i64..=12) {
        prop_assert_eq!(lp_eval(&q_bracket(n), &rat(1, 1), &rat(1, 1)).unwrap(), rat(n, 1));
    }

    #[test]
    fn multiplication_is_associative(x in graded(), y in graded(), z in graded()) {
        let (x, y, z) = (x.1, y.1, z.1);
        prop_assert_eq!(multiply(&multiply(&x, &y), &z), multiply(&x, &multiply(&y, &z)));
    }

    #[test]
    fn bracket_is_graded_antisymmetric((px, x) in graded(), (py, y) in graded()) {
        let xy = graded_bracket(&x, &y).unwrap();
        let yx = graded_bracket(&y, &x).unwrap();
        prop_assert_eq!(xy, yx.scale(&LaurentPoly::from_int(-px.koszul_sign(py))));
    }

    #[test]
    fn normal_order_is_idempotent_and_preserves_degree(w in word(), m in 0usize..3) {
        let mode = MODES[m];
        let x = Element::basis(w.clone());
        let n = normal_order(&x, mode);
        prop_assert_eq!(normal_order(&n, mode), n.clone());
        if !n.is_zero() {
            prop_assert_eq!(n.degree(), Some(qsvir_core::words::grade(&w)));
        }
    }

    #[test]
    fn rewriting_is_confluent(w in prop::collection::vec(gen(), 0..7), seed in any::<u64>(), m in 0usize..3) {
        let mode = MODES[m];
        let x = Element::basis(Word::from(w));
        let sys = RewriteSystem::for_mode(mode);
        let left = sys.reduce(&x, &mut Redex::Leftmost).unwrap();
        let random = sys.reduce(&x, &mut Redex::random(seed)).unwrap();
        prop_assert_eq!(&left, &random);
        prop_assert_eq!(left, normal_order(&x, mode));
    }

    #[test]
    fn ll_is_antisymmetric_and_gg_symmetric(l in -4i64..=6, k in -4i64..=6, m in 0usize..3) {
        let mode = MODES[m];
        let a = relation_instance(FamilyId::LL, mode, l, k).difference();
        let b = relation_instance(FamilyId::LL, mode, k, l).difference();
        prop_assert_eq!(a, b.neg());
        let a = relation_instance(FamilyId::GG, mode, l, k).difference();
        let b = relation_instance(FamilyId::GG, mode, k, l).difference();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn two_hundred_random_confluence_checks() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    let gens = [GenSym::BosonRaise, GenSym::BosonLower, GenSym::FermiRaise, GenSym::FermiLower];
    for i in 0..200 {
        let mode = MODES[i % 3];
        let len = rng.gen_range(1..=8);
        let w: Vec<GenSym> = (0..len).map(|_| gens[rng.gen_range(0..4)]).collect();
        let x = Element::basis(Word::from(w));
        let sys = RewriteSystem::for_mode(mode);
        let a = sys.reduce(&x, &mut Redex::random(rng.gen())).unwrap();
        let b = sys.reduce(&x, &mut Redex::Leftmost).unwrap();
        assert_eq!(a, b, "{mode} {x}");
    }
}
