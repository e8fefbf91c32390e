//! Linking function, staged linking pairing and the base table.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::markov_model::{BaseLinkEntry, MarkovModel};
use crate::measures::{homology_class, reduce, SignedMeasure};
use crate::rational::{format_q, parse_q, Q};
use crate::words::{compare_unchecked, realization_degree, Axis, BiWord, CyclicWord, Letter, WordOrdering};

/// A cyclic word carrying its distinguished cuboid exactly once, at index 0.
pub type PrimeOrbit = CyclicWord;

/// Symmetric rational pairing on pairs of cyclic words; the default is identically zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BaseLinkTable {
    entries: Option<BTreeMap<(CyclicWord, CyclicWord), Q>>,
}

impl BaseLinkTable {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_default(&self) -> bool {
        self.entries.is_none()
    }

    pub fn from_entries(model: &MarkovModel, entries: &[BaseLinkEntry]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for e in entries {
            let u = model.parse_word(&e.u)?.canonical();
            let v = model.parse_word(&e.v)?.canonical();
            let value = parse_q(&e.value)?;
            for key in [(u.clone(), v.clone()), (v.clone(), u.clone())] {
                if let Some(prev) = map.get(&key) {
                    if *prev != value {
                        return Err(Error::Validation(format!(
                            "base_link not symmetric at ({}, {})",
                            model.format_word(&u),
                            model.format_word(&v)
                        )));
                    }
                }
                map.insert(key, value.clone());
            }
        }
        Ok(BaseLinkTable { entries: Some(map) })
    }

    pub fn to_entries(&self, model: &MarkovModel) -> Vec<BaseLinkEntry> {
        self.entries
            .iter()
            .flatten()
            .filter(|((u, v), _)| u <= v)
            .map(|((u, v), value)| BaseLinkEntry {
                u: model.word_names(u),
                v: model.word_names(v),
                value: format_q(value),
            })
            .collect()
    }

    pub fn get(&self, u: &CyclicWord, v: &CyclicWord) -> Option<Q> {
        match &self.entries {
            None => Some(Q::zero()),
            Some(m) => m.get(&(u.canonical(), v.canonical())).cloned(),
        }
    }

    /// Bilinear extension over the supports of `nu` and `mu`.
    pub fn pair(&self, model: &MarkovModel, nu: &SignedMeasure, mu: &SignedMeasure) -> Result<Q> {
        if self.is_default() {
            return Ok(Q::zero());
        }
        let mut total = Q::zero();
        for (u, a) in nu.terms() {
            for (v, b) in mu.terms() {
                let value =
                    self.get(u, v).ok_or_else(|| Error::MissingBasePair(model.format_word(u), model.format_word(v)))?;
                total += a * b * value;
            }
        }
        Ok(total)
    }
}

/// Letters from index 0 up to (not including) the next visit to `r`.
pub fn return_word(model: &MarkovModel, r: Letter, w: &BiWord) -> Result<Option<CyclicWord>> {
    w.check_in(model)?;
    if w.letter(0) != r {
        return Err(Error::Precondition(format!("word does not start at {}", model.name(r))));
    }
    Ok(return_word_unchecked(r, w))
}

fn return_word_unchecked(r: Letter, w: &BiWord) -> Option<CyclicWord> {
    let bound = (w.start() + w.middle().len() as i64).max(0) + w.right().len() as i64 + 1;
    (1..=bound)
        .find(|&m| w.letter(m) == r)
        .map(|m| CyclicWord::new((0..m).map(|i| w.letter(i)).collect()).expect("return word is nonempty"))
}

/// Value in `{-1, 0, 1}` of the `r`-linking function at `(w, x)`.
pub fn linking_function(model: &MarkovModel, r: Letter, w: &BiWord, x: &BiWord) -> Result<i8> {
    w.check_in(model)?;
    x.check_in(model)?;
    if w.letter(0) != r || x.letter(0) != r {
        return Err(Error::Precondition(format!("both words must start at {}", model.name(r))));
    }
    Ok(linking_function_unchecked(model, r, w, x))
}

pub(crate) fn linking_function_unchecked(model: &MarkovModel, r: Letter, w: &BiWord, x: &BiWord) -> i8 {
    let Some(u) = return_word_unchecked(r, w) else {
        return 0;
    };
    let ubar = BiWord::periodic(&u);
    if compare_unchecked(model, &ubar, x, Axis::Horizontal) != WordOrdering::Less {
        return 0;
    }
    let s = w.shift(u.len() as i64);
    let le = |a: &BiWord, b: &BiWord| {
        matches!(compare_unchecked(model, a, b, Axis::Vertical), WordOrdering::Less | WordOrdering::Equal)
    };
    let lt = |a: &BiWord, b: &BiWord| compare_unchecked(model, a, b, Axis::Vertical) == WordOrdering::Less;
    let plus = le(&s, x) && lt(x, w);
    let minus = le(w, x) && lt(x, &s);
    assert!(!(plus && minus), "linking regions overlap");
    if plus {
        1
    } else if minus {
        -1
    } else {
        0
    }
}

/// Periodic points of the support of `nu` sitting in `r` at index 0, with coefficients.
pub fn placements(nu: &SignedMeasure, r: Letter) -> Vec<(BiWord, Q)> {
    nu.terms()
        .iter()
        .flat_map(|(u, a)| u.positions(r).into_iter().map(move |k| (BiWord::periodic(&u.rotate(k)), a.clone())))
        .collect()
}

fn refuse_nonorientable(model: &MarkovModel, m: &SignedMeasure) -> Result<()> {
    match m.terms().keys().find(|u| realization_degree(model, u) == 2) {
        Some(u) => Err(Error::NonOrientable(model.format_word(u))),
        None => Ok(()),
    }
}

/// Integral of the `r`-linking function against `nu ⊗ mu`.
pub fn linking_pairing(model: &MarkovModel, r: Letter, nu: &SignedMeasure, mu: &SignedMeasure) -> Result<Q> {
    refuse_nonorientable(model, nu)?;
    refuse_nonorientable(model, mu)?;
    Ok(pairing_unchecked(model, r, nu, mu))
}

fn pairing_unchecked(model: &MarkovModel, r: Letter, nu: &SignedMeasure, mu: &SignedMeasure) -> Q {
    let xs = placements(mu, r);
    let mut total = Q::zero();
    for (w, a) in placements(nu, r) {
        for (x, b) in &xs {
            match linking_function_unchecked(model, r, &w, x) {
                1 => total += &a * b,
                -1 => total -= &a * b,
                _ => {}
            }
        }
    }
    total
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageContribution {
    pub cuboid: Letter,
    pub value: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkValue {
    pub value: Q,
    pub base_term: Q,
    pub combinatorial_only: bool,
    pub stage_breakdown: Vec<StageContribution>,
}

/// Linking number with stages in alphabet order; both measures must be null-class.
pub fn link_full(
    model: &MarkovModel,
    nu: &SignedMeasure,
    mu: &SignedMeasure,
    base: &BaseLinkTable,
) -> Result<LinkValue> {
    let order: Vec<Letter> = model.letters().collect();
    link_full_with_order(model, &order, nu, mu, base)
}

pub fn link_full_with_order(
    model: &MarkovModel,
    order: &[Letter],
    nu: &SignedMeasure,
    mu: &SignedMeasure,
    base: &BaseLinkTable,
) -> Result<LinkValue> {
    for (label, m) in [("first", nu), ("second", mu)] {
        let c = homology_class(model, m);
        if !c.is_zero() {
            return Err(Error::NonNullClass(format!("{label} argument has class {:?}", c.to_strings())));
        }
    }
    link_staged(model, order, nu, mu, base)
}

/// The staged sum without the null-class precondition.
pub fn link_staged(
    model: &MarkovModel,
    order: &[Letter],
    nu: &SignedMeasure,
    mu: &SignedMeasure,
    base: &BaseLinkTable,
) -> Result<LinkValue> {
    refuse_nonorientable(model, nu)?;
    refuse_nonorientable(model, mu)?;
    let mut current = nu.clone();
    let mut stages = Vec::with_capacity(order.len());
    for &r in order {
        let value = pairing_unchecked(model, r, &current, mu);
        stages.push(StageContribution { cuboid: r, value });
        current = reduce(model, r, &current);
    }
    let base_term = base.pair(model, &current, mu)?;
    let value = stages.iter().fold(base_term.clone(), |acc, s| acc + &s.value);
    Ok(LinkValue { value, base_term, combinatorial_only: base.is_default(), stage_breakdown: stages })
}

/// Cyclic words through `r` exactly once, at index 0, ordered by length then letters.
pub fn enumerate_prime_orbits(model: &MarkovModel, r: Letter, max_len: usize) -> Vec<PrimeOrbit> {
    fn walk(model: &MarkovModel, r: Letter, max_len: usize, path: &mut Vec<Letter>, out: &mut Vec<CyclicWord>) {
        let last = *path.last().expect("nonempty");
        if model.edge_id(last, r).is_some() {
            out.push(CyclicWord::new(path.clone()).expect("nonempty"));
        }
        if path.len() == max_len {
            return;
        }
        for d in model.successors(last) {
            if d != r {
                path.push(d);
                walk(model, r, max_len, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    if max_len > 0 {
        walk(model, r, max_len, &mut vec![r], &mut out);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.letters().cmp(b.letters())));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::full2;
    use crate::rational::q;

    #[test]
    fn return_words() {
        let m = full2();
        let a = Letter(0);
        let w = BiWord::periodic(&m.word("ABABB").unwrap());
        assert_eq!(return_word(&m, a, &w).unwrap(), Some(m.word("AB").unwrap()));
        let w = BiWord::periodic(&m.word("ABB").unwrap());
        assert_eq!(return_word(&m, a, &w).unwrap(), Some(m.word("ABB").unwrap()));
        let w = BiWord::new(m.word("A").unwrap(), vec![a], m.word("B").unwrap());
        assert_eq!(return_word(&m, a, &w).unwrap(), None);
        assert!(return_word(&m, a, &w.shift(1)).is_err());
    }

    #[test]
    fn hand_values() {
        let m = full2();
        let a = Letter(0);
        let w = BiWord::periodic(&m.word("ABABB").unwrap());
        assert_eq!(linking_function(&m, a, &w, &w).unwrap(), -1);
        let ab = BiWord::periodic(&m.word("AB").unwrap());
        assert_eq!(linking_function(&m, a, &w, &ab).unwrap(), 0);
        assert_eq!(linking_function(&m, a, &ab, &w).unwrap(), 0);
        let nu = SignedMeasure::orbit(&m.word("ABABB").unwrap());
        assert_eq!(linking_pairing(&m, a, &nu, &nu).unwrap(), q(-1));
        let mu = SignedMeasure::orbit(&m.word("AB").unwrap());
        assert_eq!(linking_pairing(&m, a, &nu, &mu).unwrap(), q(0));
    }

    #[test]
    fn prime_orbits_full2() {
        let m = full2();
        let got = enumerate_prime_orbits(&m, Letter(0), 3);
        let want: Vec<_> = ["A", "AB", "ABB"].iter().map(|s| m.word(s).unwrap()).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn base_table_requires_entries() {
        let m = full2();
        let t = BaseLinkTable::from_entries(
            &m,
            &[BaseLinkEntry { u: vec!["A".into(), "B".into()], v: vec!["B".into(), "A".into()], value: "3".into() }],
        )
        .unwrap();
        let ab = SignedMeasure::orbit(&m.word("AB").unwrap());
        assert_eq!(t.pair(&m, &ab, &ab).unwrap(), q(3));
        let a = SignedMeasure::orbit(&m.word("A").unwrap());
        assert!(matches!(t.pair(&m, &a, &ab), Err(Error::MissingBasePair(..))));
    }
}
