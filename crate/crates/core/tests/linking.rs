mod common;

use common::*;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::Rng;
use symlink::catalog;
use symlink::linking::{
    enumerate_prime_orbits, link_full, link_full_with_order, link_staged, linking_function, linking_pairing,
    placements, return_word, BaseLinkTable,
};
use symlink::markov_model::BaseLinkEntry;
use symlink::measures::{homology_class, is_prime_word, reduce, SignedMeasure};
use symlink::rational::q;
use symlink::words::{primitive_cyclic_words, BiWord, CyclicWord, Letter};
use symlink::{Error, MarkovModel, Q};

fn eta(m: &MarkovModel, s: &str) -> SignedMeasure {
    SignedMeasure::orbit(&m.word(s).unwrap())
}

#[test]
fn return_word_examples() {
    let m = catalog::full2();
    let a = m.letter("A").unwrap();
    let p = |s: &str| BiWord::periodic(&m.word(s).unwrap());
    assert_eq!(return_word(&m, a, &p("ABABB")).unwrap(), Some(m.word("AB").unwrap()));
    assert_eq!(return_word(&m, a, &p("ABB")).unwrap(), Some(m.word("ABB").unwrap()));
    let tail = BiWord::new(m.word("A").unwrap(), vec![a], m.word("B").unwrap());
    assert_eq!(return_word(&m, a, &tail).unwrap(), None);
    assert!(matches!(return_word(&m, a, &p("B")), Err(Error::Precondition(_))));
}

#[test]
fn hand_values() {
    let m = catalog::full2();
    let a = m.letter("A").unwrap();
    let p = |s: &str| BiWord::periodic(&m.word(s).unwrap());
    // w = x = (ABABB)^inf: u = AB, the shifted word (ABBAB)^inf sits above w, so the minus region holds
    assert_eq!(linking_function(&m, a, &p("ABABB"), &p("ABABB")).unwrap(), -1);
    assert_eq!(linking_function(&m, a, &p("ABABB"), &p("AB")).unwrap(), 0);
    assert_eq!(linking_function(&m, a, &p("AB"), &p("ABB")).unwrap(), 0);
    assert_eq!(linking_pairing(&m, a, &eta(&m, "ABABB"), &eta(&m, "ABABB")).unwrap(), q(-1));
    assert_eq!(linking_pairing(&m, a, &eta(&m, "ABABB"), &eta(&m, "AB")).unwrap(), q(0));
    assert_eq!(oracle_pairing(&m, a, &eta(&m, "ABABB"), &eta(&m, "ABABB")), q(-1));
    let names: Vec<String> = enumerate_prime_orbits(&m, a, 3).iter().map(|w| m.format_word(w)).collect();
    assert_eq!(names, ["A", "AB", "ABB"]);
}

#[test]
fn linking_function_matches_oracle() {
    for m in [catalog::full2(), catalog::three()] {
        let words = primitive_cyclic_words(&m, 6);
        for r in m.letters() {
            let spots: Vec<BiWord> = words
                .iter()
                .flat_map(|u| u.positions(r).into_iter().map(move |k| BiWord::periodic(&u.rotate(k))))
                .collect();
            for w in &spots {
                for x in &spots {
                    assert_eq!(linking_function(&m, r, w, x).unwrap(), oracle_linking(&m, r, w, x));
                }
            }
        }
    }
}

#[test]
fn pairing_matches_oracle_on_random_measures() {
    let mut rng = rng(31);
    for m in [catalog::full2(), catalog::three()] {
        let words = primitive_cyclic_words(&m, 7);
        for _ in 0..60 {
            let mut pick = || {
                let mut s = SignedMeasure::zero();
                for _ in 0..2 {
                    s.add_orbit(&words[rng.gen_range(0..words.len())], &q(rng.gen_range(-3..4)));
                }
                s
            };
            let (nu, mu) = (pick(), pick());
            for r in m.letters() {
                assert_eq!(linking_pairing(&m, r, &nu, &mu).unwrap(), oracle_pairing(&m, r, &nu, &mu));
            }
        }
    }
}

#[test]
fn prime_placements_never_link() {
    for m in [catalog::full2(), catalog::three()] {
        let words = primitive_cyclic_words(&m, 8);
        for r in m.letters() {
            let xs: Vec<BiWord> =
                placements(&words.iter().fold(SignedMeasure::zero(), |acc, u| acc.add(&SignedMeasure::orbit(u))), r)
                    .into_iter()
                    .map(|(x, _)| x)
                    .collect();
            for u in words.iter().filter(|u| u.count(r) == 1) {
                let w = BiWord::periodic(&u.rotate(u.positions(r)[0]));
                for x in &xs {
                    assert_eq!(oracle_regions(&m, r, &w, x), (false, false));
                    assert_eq!(linking_function(&m, r, &w, x).unwrap(), 0);
                }
            }
        }
    }
}

#[test]
fn enumerate_prime_orbits_matches_filter() {
    for m in [catalog::full2(), catalog::three()] {
        for r in m.letters() {
            let got = enumerate_prime_orbits(&m, r, 7);
            let mut want: Vec<Vec<Letter>> = (1..=7)
                .flat_map(|n| closed_paths(&m, n))
                .filter(|w| w[0] == r && w[1..].iter().all(|&l| l != r))
                .collect();
            want.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
            assert_eq!(got.iter().map(|w| w.letters().to_vec()).collect::<Vec<_>>(), want);
        }
    }
}

/// Null-class combinations `|c(v)| η_u + |c(u)| η_v` with opposite one-dimensional classes.
fn null_pairs(m: &MarkovModel, max_len: usize) -> Vec<SignedMeasure> {
    let words = primitive_cyclic_words(m, max_len);
    let mut out = Vec::new();
    for u in &words {
        for v in &words {
            let (cu, cv) = (
                homology_class(m, &SignedMeasure::orbit(u)).0[0].clone(),
                homology_class(m, &SignedMeasure::orbit(v)).0[0].clone(),
            );
            if cu > Q::zero() && cv < Q::zero() {
                out.push(SignedMeasure::orbit(u).scale(&-cv).add(&SignedMeasure::orbit(v).scale(&cu)));
            } else if cu.is_zero() && u < v && cv.is_zero() {
                out.push(SignedMeasure::orbit(u).add(&SignedMeasure::orbit(v)));
            }
        }
    }
    out
}

#[test]
fn telescoping_holds_exactly() {
    let m = catalog::full2();
    let corpus = null_pairs(&m, 5);
    assert!(corpus.len() > 20);
    let zero = BaseLinkTable::zero();
    let mut spread = Vec::new();
    for nu in corpus.iter().step_by(3) {
        for mu in corpus.iter().step_by(5) {
            for r in m.letters() {
                let order: Vec<Letter> = std::iter::once(r).chain(m.letters().filter(|&l| l != r)).collect();
                let whole = link_full_with_order(&m, &order, nu, mu, &zero).unwrap();
                let rest = link_full_with_order(&m, &order, &reduce(&m, r, nu), mu, &zero).unwrap();
                let stage = linking_pairing(&m, r, nu, mu).unwrap();
                assert_eq!(whole.value, rest.value + stage);
            }
            let ab = link_full(&m, nu, mu, &zero).unwrap().value;
            let ba = link_full_with_order(&m, &[Letter(1), Letter(0)], nu, mu, &zero).unwrap().value;
            spread.push((ab - ba).abs());
        }
    }
    let worst = spread.iter().max().unwrap();
    let differing = spread.iter().filter(|d| !d.is_zero()).count();
    println!("stage-order spread: {differing}/{} pairs differ, max |diff| = {worst}", spread.len());
}

#[test]
fn prime_supported_link_is_zero_and_bilinear() {
    let m = catalog::full2_unlabelled();
    let zero = BaseLinkTable::zero();
    let primes: Vec<CyclicWord> = primitive_cyclic_words(&m, 8).into_iter().filter(is_prime_word).collect();
    let nu = primes.iter().fold(SignedMeasure::zero(), |acc, u| acc.add(&SignedMeasure::orbit(u)));
    let mu = eta(&m, "AABAB").add(&eta(&m, "ABBB"));
    let v = link_full(&m, &nu, &mu, &zero).unwrap();
    assert!(v.value.is_zero() && v.combinatorial_only);

    let nu = eta(&m, "AABAB").add(&eta(&m, "AABABB").scale(&ratio(1, 3)));
    let one = link_full(&m, &nu, &mu, &zero).unwrap();
    let two = link_full(&m, &nu.scale(&q(2)), &mu, &zero).unwrap();
    assert_eq!(two.value, &one.value * q(2));
    let stages: Q = one.stage_breakdown.iter().map(|s| s.value.clone()).sum();
    assert_eq!(one.value, stages + one.base_term);
}

#[test]
fn rejects_non_null_classes_and_missing_base_pairs() {
    let m = catalog::full2();
    let err = link_full(&m, &eta(&m, "A"), &eta(&m, "AB"), &BaseLinkTable::zero()).unwrap_err();
    assert!(matches!(err, Error::NonNullClass(_)));
    let entries = vec![BaseLinkEntry { u: vec!["A".into()], v: vec!["B".into()], value: "1".into() }];
    let table = BaseLinkTable::from_entries(&m, &entries).unwrap();
    let nu = eta(&m, "A").add(&eta(&m, "B"));
    assert!(matches!(link_full(&m, &nu, &nu, &table), Err(Error::MissingBasePair(..))));
    assert_eq!(table.get(&m.word("B").unwrap(), &m.word("A").unwrap()), Some(q(1)));
    let v = link_staged(&m, &[Letter(0), Letter(1)], &eta(&m, "A"), &eta(&m, "B"), &table).unwrap();
    assert_eq!(v.value, q(1));
    assert!(!v.combinatorial_only);
}

#[test]
fn nonorientable_orbits_are_refused() {
    let mut doc = catalog::full2().to_document();
    doc.nonorientable_boundary_orbits = vec![vec!["A".into()]];
    let m = MarkovModel::from_document(&doc).unwrap();
    let a = m.letter("A").unwrap();
    assert!(matches!(linking_pairing(&m, a, &eta(&m, "AA"), &eta(&m, "AB")), Err(Error::NonOrientable(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prop_pairing_is_bilinear(a in prop::collection::vec(0usize..2, 2..7), b in prop::collection::vec(0usize..2, 2..7),
                               c in prop::collection::vec(0usize..2, 2..7), s in -3i64..4) {
        let m = catalog::full2();
        let w = |v: &[usize]| SignedMeasure::orbit(&CyclicWord::from_indices(v).unwrap().canonical_root());
        let (x, y, z) = (w(&a), w(&b), w(&c));
        for r in m.letters() {
            let lhs = linking_pairing(&m, r, &x.add(&y.scale(&q(s))), &z).unwrap();
            let rhs = linking_pairing(&m, r, &x, &z).unwrap() + linking_pairing(&m, r, &y, &z).unwrap() * q(s);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn prop_prime_first_argument_pairs_to_zero(a in prop::collection::vec(0usize..3, 2..9), b in prop::collection::vec(0usize..3, 1..9)) {
        let m = catalog::three();
        let (Ok(u), Ok(v)) = (m.parse_word(&names(&a)), m.parse_word(&names(&b))) else { return Ok(()); };
        for r in m.letters() {
            let nu = reduce(&m, r, &SignedMeasure::orbit(&u));
            prop_assert!(linking_pairing(&m, r, &nu, &SignedMeasure::orbit(&v)).unwrap().is_zero());
        }
    }
}

fn names(ix: &[usize]) -> Vec<&'static str> {
    ix.iter().map(|&i| NAMES[i]).collect()
}
