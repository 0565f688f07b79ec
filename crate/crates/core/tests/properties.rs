use proptest::prelude::*;
use proptest::test_runner::RngSeed;

use profinite::closure::pro_g_closure;
use profinite::freegroup::{
    reduce, stallings_graph, subgroup_contains, GroupAutomaton, GroupWord, SignedLetter,
};
use profinite::language::{parse_regex, syntactic_semigroup, to_minimal_dfa, Alphabet, Nfa, Regex};
use profinite::semigroup::enumerate_semigroups;
use profinite::FiniteSemigroup;

fn letter() -> impl Strategy<Value = SignedLetter> {
    prop_oneof![
        Just(SignedLetter::pos('a')),
        Just(SignedLetter::neg('a')),
        Just(SignedLetter::pos('b')),
        Just(SignedLetter::neg('b')),
    ]
}

fn group_word(max: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec(letter(), 0..=max).prop_map(reduce)
}

fn regex() -> impl Strategy<Value = Regex> {
    let leaf = prop_oneof![
        Just(Regex::Letter('a')),
        Just(Regex::Letter('b')),
        Just(Regex::Epsilon)
    ];
    leaf.prop_recursive(3, 10, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Regex::union(x, y)),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Regex::concat(x, y)),
            inner.clone().prop_map(Regex::star),
            inner.prop_map(Regex::plus),
        ]
    })
}

/// Fixed seed unless `PROPTEST_RNG_SEED` overrides it.
fn config() -> ProptestConfig {
    let base = ProptestConfig::default();
    let rng_seed = match base.rng_seed {
        RngSeed::Random => RngSeed::Fixed(0x5eed),
        fixed => fixed,
    };
    ProptestConfig {
        cases: 64,
        rng_seed,
        ..base
    }
}

fn ab() -> Alphabet {
    Alphabet::parse("ab").unwrap()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn free_group_axioms(x in group_word(8), y in group_word(8), z in group_word(8)) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert!(x.mul(&x.inverse()).is_empty());
        prop_assert_eq!(x.inverse().inverse(), x.clone());
        let shown: GroupWord = x.to_string().parse().unwrap();
        prop_assert_eq!(shown, x);
    }

    #[test]
    fn minimal_dfa_matches_thompson(r in regex()) {
        let alphabet = ab();
        let nfa = Nfa::from_regex(&r, &alphabet);
        let dfa = to_minimal_dfa(&r, &alphabet);
        prop_assert!(dfa.num_states() <= nfa.determinize().reachable().num_states());
        for w in alphabet.words_up_to(6) {
            prop_assert_eq!(dfa.accepts(&w), nfa.accepts(&w));
        }
        let printed = parse_regex(&r.to_string(), &alphabet).unwrap();
        prop_assert!(to_minimal_dfa(&printed, &alphabet).equivalent(&dfa));
    }

    #[test]
    fn syntactic_morphism_recognizes(r in regex()) {
        let alphabet = ab();
        let syn = syntactic_semigroup(&r, &alphabet);
        let dfa = to_minimal_dfa(&r, &alphabet);
        for w in alphabet.words_up_to(6).into_iter().filter(|w| !w.is_empty()) {
            prop_assert_eq!(syn.recognizes(&alphabet.decode(&w)).unwrap(), dfa.accepts(&w));
        }
    }

    #[test]
    fn closure_contains_language_and_inverses_of_stars(r in regex()) {
        let alphabet = ab();
        let c = pro_g_closure(&r);
        let dfa = to_minimal_dfa(&r, &alphabet);
        for w in alphabet.words_up_to(5).into_iter().filter(|w| dfa.accepts(w)) {
            prop_assert!(c.contains_word(&alphabet.decode(&w)));
        }
        let star = pro_g_closure(&Regex::star(r.clone()));
        for w in alphabet.words_up_to(4).into_iter().filter(|w| dfa.accepts(w)) {
            let g = GroupWord::positive(&alphabet.decode(&w));
            prop_assert!(star.contains(&g.inverse()));
        }
    }

    #[test]
    fn stallings_contains_generated_products(
        gens in prop::collection::vec(group_word(5), 1..=3),
        picks in prop::collection::vec((0usize..3, any::<bool>()), 0..6),
    ) {
        let g = stallings_graph(&gens);
        let product = picks.iter().fold(GroupWord::identity(), |acc, &(i, inv)| {
            let x = &gens[i % gens.len()];
            acc.mul(&if inv { x.inverse() } else { x.clone() })
        });
        prop_assert!(subgroup_contains(&g, &product).unwrap());
        // the graph as a rational subset agrees with itself after saturation
        prop_assert!(g.contains(&product));
    }

    #[test]
    fn rational_operations(x in group_word(5), y in group_word(5)) {
        let mx = GroupAutomaton::word(&x);
        let my = GroupAutomaton::word(&y);
        prop_assert!(mx.union(&my).contains(&y));
        prop_assert!(mx.concat(&my).contains(&x.mul(&y)));
        prop_assert!(mx.invert().contains(&x.inverse()));
        prop_assert!(mx.star().contains(&x.pow(3)));
        prop_assert!(mx.generated_subgroup().contains(&x.pow(-2)));
    }
}

#[test]
fn semigroup_json_round_trip() {
    for n in 1..=3 {
        for s in enumerate_semigroups(n, true).unwrap() {
            let text = serde_json::to_string(&s).unwrap();
            assert_eq!(FiniteSemigroup::from_json_str(&text).unwrap(), s);
        }
    }
}
