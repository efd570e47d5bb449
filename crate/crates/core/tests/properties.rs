use proptest::prelude::*;

use quadrics::monoid::{act_permutation, act_word, MonoidWord};
use quadrics::schubert::TermJson;
use quadrics::{
    build_poset, restriction_class, schubert, string_to_relative, Composition, ExponentMode,
    MuInvolution, Permutation, Polynomial,
};

fn permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|w| Permutation::new(w).unwrap())
}

fn composition(min_n: usize, max_n: usize) -> impl Strategy<Value = Composition> {
    (min_n..=max_n, any::<u32>()).prop_map(|(n, mask)| {
        let subset: Vec<usize> = (1..n).filter(|j| mask >> j & 1 == 1).collect();
        Composition::from_subset(n, &subset).unwrap()
    })
}

/// A composition, a μ-involution reached from the identity by a random word,
/// and a second word to act with.
fn mu_involution(max_n: usize) -> impl Strategy<Value = (MuInvolution, Vec<usize>)> {
    composition(2, max_n).prop_flat_map(|mu| {
        let n = mu.n();
        let word = prop::collection::vec(1..n, 0..20);
        let second = prop::collection::vec(1..n, 0..12);
        (Just(mu), word, second).prop_map(|(mu, word, second)| {
            let pi = act_word(&MonoidWord(word), &MuInvolution::identity(&mu)).unwrap();
            (pi, second)
        })
    })
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u16..4, 5), -9i64..=9), 0..6)
        .prop_map(|terms| terms.iter().map(|(e, c)| Polynomial::monomial(e, *c)).sum())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn inverse_is_an_involution_preserving_length(p in permutation(9)) {
        let q = p.inverse();
        prop_assert_eq!(q.inverse(), p.clone());
        prop_assert_eq!(q.length(), p.length());
        prop_assert_eq!(p.compose(&q).unwrap(), Permutation::identity(p.len()));
    }

    #[test]
    fn lex_min_reduced_word_evaluates_back(p in permutation(9)) {
        let word = p.lex_min_reduced_word();
        prop_assert_eq!(word.len(), p.length());
        prop_assert_eq!(word.evaluate(p.len()).unwrap(), p);
    }

    #[test]
    fn length_is_additive_exactly_on_descents(p in permutation(8), i in 1usize..8) {
        prop_assume!(i < p.len());
        let up = p.right_mul_simple(i);
        let grows = p.apply(i) < p.apply(i + 1);
        prop_assert_eq!(up.length(), if grows { p.length() + 1 } else { p.length() - 1 });
    }

    #[test]
    fn relative_pattern_ignores_monotone_relabeling(
        p in permutation(6),
        gaps in prop::collection::vec(1usize..4, 6),
    ) {
        let mut label = Vec::new();
        let mut next = 0;
        for g in gaps.iter().take(p.len()) {
            next += g;
            label.push(next);
        }
        let relabeled: Vec<usize> = p.to_vec().iter().map(|&v| label[v - 1]).collect();
        prop_assert_eq!(string_to_relative(&relabeled).unwrap(), p);
    }

    #[test]
    fn action_stays_in_the_orbit_set((pi, word) in mu_involution(7)) {
        let out = act_word(&MonoidWord(word.clone()), &pi).unwrap();
        let revalidated = MuInvolution::validate(out.perm().clone(), out.mu().clone());
        prop_assert!(revalidated.is_ok());
        prop_assert!(out.rank() <= pi.rank() + word.len());
        prop_assert!(out.rank() >= pi.rank());
    }

    #[test]
    fn action_by_a_permutation_ignores_the_reduced_word((pi, word) in mu_involution(5)) {
        let n = pi.n();
        let w = MonoidWord(word).0.iter().fold(Permutation::identity(n), |acc, &i| {
            if acc.apply(i) < acc.apply(i + 1) { acc.right_mul_simple(i) } else { acc }
        });
        let want = act_permutation(&w, &pi).unwrap();
        for reduced in w.reduced_words().iter().take(50) {
            let got = act_word(&MonoidWord(reduced.letters().to_vec()), &pi).unwrap();
            prop_assert_eq!(&got, &want);
        }
        prop_assert!(want.rank() <= pi.rank() + w.length());
    }

    #[test]
    fn mu_involution_text_and_json_round_trip((pi, _word) in mu_involution(7)) {
        let text = pi.to_string();
        let back: MuInvolution = text.parse().unwrap();
        prop_assert_eq!(&back, &pi);
        let json = serde_json::to_string(&pi).unwrap();
        let back: MuInvolution = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, pi);
    }

    #[test]
    fn divided_difference_obeys_leibniz(f in polynomial(), g in polynomial(), i in 1usize..5) {
        let lhs = (&f * &g).divided_difference(i);
        let rhs = &(&f.divided_difference(i) * &g) + &(&f.swap_vars(i) * &g.divided_difference(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn divided_difference_kills_symmetric_parts(f in polynomial(), i in 1usize..5) {
        let sym = &f + &f.swap_vars(i);
        prop_assert!(sym.divided_difference(i).is_zero());
    }

    #[test]
    fn ring_operations_are_consistent(f in polynomial(), g in polynomial(), h in polynomial()) {
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert!((&f - &f).is_zero());
        let terms: Vec<TermJson> = f.to_json_terms();
        prop_assert_eq!(Polynomial::from_json_terms(&terms), f.clone());
        let json = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<Polynomial>(&json).unwrap(), f);
    }
}

#[test]
fn schubert_polynomials_are_homogeneous_and_positive() {
    for n in 1..=5 {
        for w in Permutation::all(n) {
            let poly = schubert(&w).poly;
            assert!(poly.is_homogeneous(), "{w}");
            assert!(poly.is_nonnegative(), "{w}");
            assert_eq!(poly.degree(), Some(w.length()), "{w}");
        }
    }
}

#[test]
fn restriction_class_degree_is_the_top_rank() {
    for n in 1..=7 {
        let mu = Composition::single(n).unwrap();
        let class = restriction_class(&mu, ExponentMode::DoubleEdges);
        let top = MuInvolution::top(&mu);
        assert!(class.is_homogeneous());
        assert_eq!(class.degree(), Some(top.perm().involution_rank().unwrap()));
    }
    for mu in Composition::all(5) {
        let class = restriction_class(&mu, ExponentMode::DoubleEdges);
        assert_eq!(class.degree(), Some(MuInvolution::top(&mu).rank()), "{mu}");
    }
}

#[test]
fn reduced_words_act_alike_on_the_two_by_two_identity() {
    let mu: Composition = "2,2".parse().unwrap();
    let e = MuInvolution::identity(&mu);
    for w in Permutation::all(4) {
        let results: Vec<MuInvolution> = w
            .reduced_words()
            .iter()
            .map(|word| act_word(&MonoidWord(word.letters().to_vec()), &e).unwrap())
            .collect();
        assert!(results.windows(2).all(|p| p[0] == p[1]), "{w}");
    }
}

#[test]
fn every_node_is_reached_from_the_identity() {
    for mu in Composition::all(5) {
        let poset = build_poset(&mu).unwrap();
        let e = MuInvolution::identity(&mu);
        for id in 0..poset.len() {
            let pi = poset.node(id);
            let w = poset
                .w_set(&pi)
                .unwrap()
                .elements
                .into_iter()
                .next()
                .unwrap();
            assert_eq!(act_permutation(&w, &e).unwrap(), pi);
        }
    }
}
