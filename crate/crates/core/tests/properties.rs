//! Randomized invariants.

mod common;

use common::*;
use grtab::characters::{Engine, QCharFormula};
use grtab::cluster::{g_vector, g_vector_of, initial_seed, Seed};
use grtab::monomials::{
    kr_monomial, monomial_to_multisegment, multisegment_to_monomial, phi_tilde, psi, zelevinsky_dual,
    DominantMonomial, Multisegment, Segment,
};
use grtab::plucker::{quotient_equal_sums, PluckerMonomial, PluckerPolynomial, RationalMatrix};
use grtab::symmetric::{KlCache, Permutation};
use grtab::tableaux::{Entry, Tableau};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;
use rand::Rng;
use std::sync::OnceLock;

fn engine() -> &'static Engine {
    static E: OnceLock<Engine> = OnceLock::new();
    E.get_or_init(Engine::default)
}

fn dims() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![Just((2, 5)), Just((3, 6)), Just((3, 8)), Just((4, 8)), Just((5, 9))]
}

fn tableaux(count: usize) -> impl Strategy<Value = Vec<Tableau>> {
    (dims(), any::<u64>()).prop_map(move |((n, m), s)| {
        let mut r = rng(s);
        (0..count).map(|_| random_tableau(&mut r, n, m, 4)).collect()
    })
}

fn multisegment() -> impl Strategy<Value = Multisegment> {
    prop::collection::vec((-8i32..=0, 0i32..=3), 0..=5).prop_filter_map("degree at most 12", |v| {
        let ms = Multisegment::new(v.into_iter().map(|(b, l)| Segment::new(b, b + l)).collect());
        (ms.degree() <= 12).then_some(ms)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn union_is_a_commutative_monoid(ts in tableaux(3)) {
        let (a, b, c) = (&ts[0], &ts[1], &ts[2]);
        let e = Tableau::empty(a.n(), a.m());
        prop_assert_eq!(a.union(b).unwrap(), b.union(a).unwrap());
        prop_assert_eq!(a.union(b).unwrap().union(c).unwrap(), a.union(&b.union(c).unwrap()).unwrap());
        prop_assert_eq!(&a.union(&e).unwrap(), a);
        prop_assert_eq!(&a.union(b).unwrap().divide(b).unwrap(), a);
    }

    #[test]
    fn weight_and_content_are_additive(ts in tableaux(2)) {
        let (a, b) = (&ts[0], &ts[1]);
        let ab = a.union(b).unwrap();
        prop_assert_eq!(ab.weight(), &a.weight() + &b.weight());
        prop_assert_eq!(ab.content(), &a.content() + &b.content());
        prop_assert_eq!(ab.gap_weight(), a.gap_weight() + b.gap_weight());
    }

    #[test]
    fn small_gaps_form_is_unique(ts in tableaux(1), lo in 1usize..=4) {
        let a = &ts[0];
        let (tp, frac) = a.small_gaps_form();
        prop_assert!(tp.has_small_gaps());
        prop_assert_eq!(&tp.small_gaps_form().0, &tp);
        prop_assert_eq!(a.union(&frac.den).unwrap(), tp.union(&frac.num).unwrap());
        prop_assert_eq!(tp.weight(), a.weight());
        let n = a.n();
        let lo = lo.min(a.m() - n + 1) as Entry;
        let triv: Vec<Entry> = (lo..lo + n as Entry).collect();
        prop_assert_eq!(a.union(&col_tab(&triv, a.m())).unwrap().small_gaps_form().0, tp);
    }

    #[test]
    fn text_and_json_round_trip(ts in tableaux(1)) {
        let t = &ts[0];
        prop_assert_eq!(&Tableau::parse_text(&t.to_text(), t.n(), t.m()).unwrap(), t);
        let j = serde_json::to_string(t).unwrap();
        prop_assert_eq!(&serde_json::from_str::<Tableau>(&j).unwrap(), t);
        let p = PluckerPolynomial::from_tableau(t);
        let q: PluckerPolynomial = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        prop_assert!(p.equals(&q));
    }

    #[test]
    fn zelevinsky_dual_is_an_involution(ms in multisegment()) {
        let d = zelevinsky_dual(&ms);
        prop_assert_eq!(d.degree(), ms.degree());
        prop_assert_eq!(zelevinsky_dual(&d), ms.clone());
        prop_assert_eq!(&Multisegment::parse_text(&ms.to_text()).unwrap(), &ms);
        let mono = multisegment_to_monomial(&ms);
        prop_assert_eq!(monomial_to_multisegment(&mono).unwrap(), ms);
        prop_assert_eq!(&DominantMonomial::parse_text(&mono.to_text()).unwrap(), &mono);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn straightening_agrees_with_evaluation(s in any::<u64>(), big in any::<bool>()) {
        let mut r = rng(s);
        let (n, m) = if big { (4, 8) } else { (3, 7) };
        let k = r.gen_range(1..=3);
        let columns: Vec<_> = (0..k).map(|_| random_column(&mut r, n, m)).collect();
        let p = PluckerPolynomial::straighten(n, m, &[(BigInt::one(), PluckerMonomial::new(columns.clone()))]).unwrap();
        for _ in 0..5 {
            let x = RationalMatrix::random(n, m, 4, &mut r);
            let raw = columns.iter().fold(BigRational::one(), |acc, c| acc * x.minor(c.entries()));
            prop_assert_eq!(p.evaluate(&x).unwrap(), raw);
        }
    }

    #[test]
    fn g_vectors_are_additive(ts in tableaux(2)) {
        let (a, b) = (&ts[0], &ts[1]);
        prop_assume!(a.n() >= 2 && a.m() > a.n() + 1);
        let (ga, gb) = (g_vector_of(a).unwrap(), g_vector_of(b).unwrap());
        let gab = g_vector_of(&a.union(b).unwrap()).unwrap();
        let l = a.m() - a.n() - 1;
        for i in 1..a.n() {
            for t in 0..=l {
                prop_assert_eq!(gab.get(i, t), ga.get(i, t) + gb.get(i, t));
            }
        }
        prop_assert_eq!(g_vector(&psi(a), a.n(), l).unwrap(), ga);
    }

    #[test]
    fn mutation_is_an_involution(path in prop::collection::vec(any::<prop::sample::Index>(), 1..=4)) {
        let mut seed = initial_seed(3, 7).unwrap();
        for ix in path {
            let vs = seed.mutable_vertices();
            let k = vs[ix.index(vs.len())];
            let next = seed.mutate(k).unwrap();
            prop_assert_eq!(&next.mutate(k).unwrap(), &seed);
            prop_assert!(next.exchange_check(engine(), k).unwrap());
            let j = serde_json::to_string(&next).unwrap();
            prop_assert_eq!(&serde_json::from_str::<Seed>(&j).unwrap(), &next);
            seed = next;
        }
    }

    #[test]
    fn reality_is_invariant_under_equivalence(s in any::<u64>()) {
        let mut r = rng(s);
        let k = r.gen_range(1..=2);
        let t = random_small_gaps(&mut r, 3, 7, k);
        let lo: Entry = r.gen_range(1..=5);
        let u = t.union(&col_tab(&[lo, lo + 1, lo + 2], 7)).unwrap();
        prop_assert!(u.equivalent(&t));
        prop_assert_eq!(engine().reality_test(&t).unwrap().real, engine().reality_test(&u).unwrap().real);
    }

    #[test]
    fn immanant_matches_character(s in any::<u64>()) {
        let mut r = rng(s);
        let k = r.gen_range(1..=3);
        let t = random_small_gaps(&mut r, 3, 7, k);
        let x = RationalMatrix::random_totally_positive(3, 7, &mut r).normalize_frozens().unwrap();
        prop_assert!(engine().immanant_check(&t, &x).unwrap());
    }
}

#[test]
fn kl_polynomials_match_r_polynomial_oracle() {
    let cache = KlCache::new(4);
    let mut brute = BruteKl::new(4);
    for x in permutations(4) {
        for w in permutations(4) {
            let got = cache.polynomial(&Permutation::from_one_line(&x).unwrap(), &Permutation::from_one_line(&w).unwrap());
            assert_eq!(got.unwrap().0, brute.p(&x, &w), "{x:?} {w:?}");
        }
    }
}

#[test]
fn qchar_json_round_trips() {
    let mono = DominantMonomial::from_factors([(1, -5), (1, -3), (2, -2), (2, 0)]);
    let q = engine().qchar_formula(&mono, None).unwrap();
    let back: QCharFormula = serde_json::from_str(&serde_json::to_string(&q).unwrap()).unwrap();
    assert_eq!(back, q);
}

#[test]
fn t_system_holds_in_gr38() {
    let (n, m) = (3usize, 8usize);
    let ch = |mono: &DominantMonomial| engine().ch(&phi_tilde(mono, n, m).unwrap()).unwrap().value;
    let kr = |j: i32, kk: usize, ss: i32| {
        if j <= 0 || j >= n as i32 || kk == 0 {
            DominantMonomial::unit()
        } else {
            kr_monomial(j, kk, ss)
        }
    };
    let fits = |mono: &DominantMonomial| mono.check_window(n, m).is_ok();
    let mut checked = 0;
    for i in 1..n as i32 {
        for k in 1..=3usize {
            for sh in (-14..=2).filter(|s: &i32| (i + s) % 2 == 0) {
                let (a, b) = (kr(i, k, sh), kr(i, k, sh + 2));
                let (c, d) = (kr(i, k + 1, sh), kr(i, k - 1, sh + 2));
                let (e1, e2) = (kr(i - 1, k, sh + 1), kr(i + 1, k, sh + 1));
                if ![&a, &b, &c, &d, &e1, &e2].iter().all(|x| fits(x)) {
                    continue;
                }
                let lhs = ch(&a).mul(&ch(&b)).unwrap();
                let r1 = ch(&c).mul(&ch(&d)).unwrap();
                let r2 = ch(&e1).mul(&ch(&e2)).unwrap();
                assert!(quotient_equal_sums(&[&lhs], &[&r1, &r2]).unwrap(), "i={i} k={k} s={sh}");
                checked += 1;
            }
        }
    }
    assert!(checked >= 6, "only {checked} relations in range");
}
