//! Finitely supported invariant measures as rational combinations of orbit measures.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::markov_model::MarkovModel;
use crate::rational::{format_q, parse_q, q, Q};
use crate::words::{CyclicWord, Letter};

/// `Σ a_u η_u` keyed by canonical primitive words; coefficients are never zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignedMeasure {
    terms: BTreeMap<CyclicWord, Q>,
}

/// JSON term `{"word": [...], "coeff": "p/q"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureTerm {
    pub word: Vec<String>,
    pub coeff: String,
}

impl SignedMeasure {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Orbit measure `η_u`, one unit of mass per letter of `u`.
    pub fn orbit(u: &CyclicWord) -> Self {
        let (root, e) = u.primitive_decompose();
        let mut m = Self::zero();
        m.add_term(root.canonical(), q(e as i64));
        m
    }

    /// `η_u / |u|`, a probability measure.
    pub fn normalized_orbit(u: &CyclicWord) -> Self {
        Self::orbit(u).scale(&Q::new(1.into(), (u.len() as i64).into()))
    }

    pub fn terms(&self) -> &BTreeMap<CyclicWord, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &CyclicWord) -> Q {
        self.terms.get(&w.canonical_root()).cloned().unwrap_or_else(Q::zero)
    }

    /// Adds `c · η_root` where `root` must already be canonical and primitive.
    fn add_term(&mut self, root: CyclicWord, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(root.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&root);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&q(-1)))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero();
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a * c);
        }
        out
    }

    /// Adds `c · η_u` for any word `u`.
    pub fn add_orbit(&mut self, u: &CyclicWord, c: &Q) {
        let (root, e) = u.primitive_decompose();
        self.add_term(root.canonical(), c * q(e as i64));
    }

    /// Σ a_u |u|.
    pub fn total_mass(&self) -> Q {
        self.terms.iter().map(|(w, a)| a * q(w.len() as i64)).sum()
    }

    /// Σ |a_u| |u|.
    pub fn total_variation(&self) -> Q {
        self.terms.iter().map(|(w, a)| a.abs() * q(w.len() as i64)).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|a| a.is_positive())
    }

    pub fn from_terms(model: &MarkovModel, terms: &[MeasureTerm]) -> Result<Self> {
        let mut m = Self::zero();
        for t in terms {
            let w = model.parse_word(&t.word)?;
            m.add_orbit(&w, &parse_q(&t.coeff)?);
        }
        Ok(m)
    }

    pub fn to_terms(&self, model: &MarkovModel) -> Vec<MeasureTerm> {
        self.terms.iter().map(|(w, c)| MeasureTerm { word: model.word_names(w), coeff: format_q(c) }).collect()
    }
}

pub fn orbit_measure(u: &CyclicWord) -> SignedMeasure {
    SignedMeasure::orbit(u)
}

/// Mass of a measure on each edge cylinder, indexed by edge id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeFlow {
    pub mass: Vec<Q>,
}

impl EdgeFlow {
    pub fn total(&self) -> Q {
        self.mass.iter().cloned().sum()
    }

    /// Inflow equals outflow at every cuboid.
    pub fn is_conserved(&self, model: &MarkovModel) -> bool {
        model.letters().all(|c| {
            let (mut inflow, mut outflow) = (Q::zero(), Q::zero());
            for (id, e) in model.edges().iter().enumerate() {
                if e.to == c {
                    inflow += &self.mass[id];
                }
                if e.from == c {
                    outflow += &self.mass[id];
                }
            }
            inflow == outflow
        })
    }

    pub fn to_map(&self, model: &MarkovModel) -> BTreeMap<String, String> {
        self.mass.iter().enumerate().map(|(id, m)| (model.edge_key(id), format_q(m))).collect()
    }
}

pub fn edge_flow(model: &MarkovModel, nu: &SignedMeasure) -> EdgeFlow {
    let mut mass = vec![Q::zero(); model.edges().len()];
    for (w, a) in &nu.terms {
        for (x, y) in w.transitions() {
            let id = model.edge_id(x, y).expect("measure words are valid in the model");
            mass[id] += a;
        }
    }
    EdgeFlow { mass }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyClass(pub Vec<Q>);

impl HomologyClass {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_q).collect()
    }
}

pub fn homology_class(model: &MarkovModel, nu: &SignedMeasure) -> HomologyClass {
    let flow = edge_flow(model, nu);
    let mut class = vec![Q::zero(); model.homology_dim()];
    for (id, m) in flow.mass.iter().enumerate() {
        if m.is_zero() {
            continue;
        }
        for (c, h) in class.iter_mut().zip(&model.edges()[id].homology) {
            *c += m * h;
        }
    }
    HomologyClass(class)
}

/// Splits `u` at its occurrences of `r`, starting from occurrence `first`.
///
/// Each piece starts with `r` and holds no other `r`.
pub fn split_at(u: &CyclicWord, r: Letter, first: usize) -> Vec<CyclicWord> {
    let pos = u.positions(r);
    if pos.is_empty() {
        return vec![u.clone()];
    }
    let rot = u.rotate(pos[first % pos.len()]);
    let cuts = rot.positions(r);
    cuts.iter()
        .enumerate()
        .map(|(i, &s)| {
            let e = cuts.get(i + 1).copied().unwrap_or(rot.len());
            CyclicWord::new(rot.letters()[s..e].to_vec()).expect("piece is nonempty")
        })
        .collect()
}

/// The `r`-reduction: orbits through `r` at least twice are split at each visit.
pub fn reduce(model: &MarkovModel, r: Letter, nu: &SignedMeasure) -> SignedMeasure {
    debug_assert!(r.index() < model.size());
    let mut out = SignedMeasure::zero();
    for (w, a) in &nu.terms {
        if w.count(r) >= 2 {
            for piece in split_at(w, r, 0) {
                out.add_orbit(&piece, a);
            }
        } else {
            out.add_term(w.clone(), a.clone());
        }
    }
    out
}

/// Reductions applied in the given cuboid order.
pub fn reduce_in_order(model: &MarkovModel, order: &[Letter], nu: &SignedMeasure) -> SignedMeasure {
    order.iter().fold(nu.clone(), |acc, &r| reduce(model, r, &acc))
}

/// Reductions applied in alphabet order; the support ends up on prime words.
pub fn reduce_all(model: &MarkovModel, nu: &SignedMeasure) -> SignedMeasure {
    let order: Vec<Letter> = model.letters().collect();
    reduce_in_order(model, &order, nu)
}

/// True when every letter occurs at most once.
pub fn is_prime_word(u: &CyclicWord) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    u.letters().iter().all(|l| seen.insert(*l))
}

/// `(η_{v^k u} − η_u) / k`, a null-cohomologous perturbation direction.
pub fn cohomologous_shift(model: &MarkovModel, v: &CyclicWord, u: &CyclicWord, k: usize) -> Result<SignedMeasure> {
    v.check_in(model)?;
    u.check_in(model)?;
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    if u.first() != v.first() {
        return Err(Error::Precondition("u and v must start with the same cuboid".into()));
    }
    if let Some(missing) = model.letters().find(|&c| u.count(c) == 0) {
        return Err(Error::Precondition(format!("u misses cuboid {}", model.name(missing))));
    }
    if u.canonical_root() == v.canonical_root() {
        return Err(Error::Precondition("u and v share a primitive root".into()));
    }
    let mut letters = v.pow(k).letters().to_vec();
    letters.extend_from_slice(u.letters());
    let vku = CyclicWord::new(letters)?;
    let diff = SignedMeasure::orbit(&vku).sub(&SignedMeasure::orbit(u));
    Ok(diff.scale(&Q::new(1.into(), (k as i64).into())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::full2;

    #[test]
    fn orbit_of_power() {
        let m = full2();
        let e = orbit_measure(&m.word("ABAB").unwrap());
        assert_eq!(e.coeff(&m.word("AB").unwrap()), q(2));
        assert_eq!(e.total_mass(), q(4));
    }

    #[test]
    fn split_pieces() {
        let m = full2();
        let pieces = split_at(&m.word("ABABB").unwrap(), Letter(0), 0);
        assert_eq!(pieces, vec![m.word("AB").unwrap(), m.word("ABB").unwrap()]);
        let pieces = split_at(&m.word("BABAB").unwrap(), Letter(0), 1);
        assert_eq!(pieces, vec![m.word("ABB").unwrap(), m.word("AB").unwrap()]);
    }

    #[test]
    fn reduce_splits_and_keeps_flow() {
        let m = full2();
        let nu = orbit_measure(&m.word("ABABB").unwrap());
        let red = reduce(&m, Letter(0), &nu);
        let want = orbit_measure(&m.word("AB").unwrap()).add(&orbit_measure(&m.word("ABB").unwrap()));
        assert_eq!(red, want);
        assert_eq!(edge_flow(&m, &red), edge_flow(&m, &nu));
    }

    #[test]
    fn class_of_full2_orbits() {
        let m = full2();
        assert_eq!(homology_class(&m, &orbit_measure(&m.word("A").unwrap())).0, vec![q(1)]);
        assert!(homology_class(&m, &orbit_measure(&m.word("AB").unwrap())).is_zero());
        assert!(homology_class(&m, &orbit_measure(&m.word("AABB").unwrap())).is_zero());
    }

    #[test]
    fn shift_is_null_class_when_v_is() {
        let m = full2();
        let s = cohomologous_shift(&m, &m.word("AB").unwrap(), &m.word("AB").unwrap(), 1);
        assert!(s.is_err());
        let s = cohomologous_shift(&m, &m.word("AABB").unwrap(), &m.word("AB").unwrap(), 2).unwrap();
        assert!(homology_class(&m, &s).is_zero());
    }
}
