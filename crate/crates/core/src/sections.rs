//! Cycle-positivity certificates, minimum linking programs and boundary calculus.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linking::{link_staged, BaseLinkTable};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::markov_model::MarkovModel;
use crate::measures::{homology_class, HomologyClass, SignedMeasure};
use crate::rational::{format_q, parse_q, q, Q};
use crate::words::{
    compare, primitive_cyclic_words, realization_degree, Axis, BiWord, CyclicWord, Letter, WordOrdering,
};

/// A rational value on every edge, indexed by edge id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeWeighting {
    pub weight: Vec<Q>,
}

impl EdgeWeighting {
    pub fn constant(model: &MarkovModel, c: Q) -> Self {
        EdgeWeighting { weight: vec![c; model.edges().len()] }
    }

    pub fn neg(&self) -> Self {
        EdgeWeighting { weight: self.weight.iter().map(|w| -w.clone()).collect() }
    }

    /// Reads an `"A->B": "p/q"` map; every edge must be present.
    pub fn from_map(model: &MarkovModel, map: &BTreeMap<String, String>) -> Result<Self> {
        let mut weight: Vec<Option<Q>> = vec![None; model.edges().len()];
        for (k, v) in map {
            weight[model.edge_by_key(k)?] = Some(parse_q(v)?);
        }
        let weight = weight
            .into_iter()
            .enumerate()
            .map(|(id, w)| w.ok_or_else(|| Error::Parse(format!("weighting misses edge {}", model.edge_key(id)))))
            .collect::<Result<Vec<_>>>()?;
        Ok(EdgeWeighting { weight })
    }

    pub fn to_map(&self, model: &MarkovModel) -> BTreeMap<String, String> {
        self.weight.iter().enumerate().map(|(id, w)| (model.edge_key(id), format_q(w))).collect()
    }

    pub fn cycle_sum(&self, model: &MarkovModel, c: &CyclicWord) -> Q {
        c.transitions().map(|(a, b)| self.weight[model.edge_id(a, b).expect("cycle uses edges")].clone()).sum()
    }
}

/// Maximum cycle mean with an attaining simple cycle (canonical rotation).
pub fn max_mean_cycle(model: &MarkovModel, w: &EdgeWeighting) -> (Q, CyclicWord) {
    let n = model.size();
    let edges = model.edges();
    let mut d: Vec<Vec<Option<Q>>> = vec![vec![None; n]; n + 1];
    d[0][0] = Some(Q::zero());
    for k in 1..=n {
        for (id, e) in edges.iter().enumerate() {
            if let Some(prev) = &d[k - 1][e.from.0] {
                let cand = prev + &w.weight[id];
                let slot = &mut d[k][e.to.0];
                if slot.as_ref().is_none_or(|s| cand > *s) {
                    *slot = Some(cand);
                }
            }
        }
    }
    let mut best: Option<Q> = None;
    for (v, dn) in d[n].iter().enumerate() {
        let Some(dn) = dn else { continue };
        let worst = (0..n)
            .filter_map(|k| d[k][v].as_ref().map(|dk| (dn - dk) / q((n - k) as i64)))
            .min()
            .expect("some shorter walk reaches v in a strongly connected graph");
        if best.as_ref().is_none_or(|b| worst > *b) {
            best = Some(worst);
        }
    }
    let lambda = best.expect("strongly connected models have cycles");
    let cycle = tight_cycle(model, w, &lambda);
    (lambda, cycle)
}

/// A cycle of mean `lambda` found in the subgraph tight for longest-path potentials.
fn tight_cycle(model: &MarkovModel, w: &EdgeWeighting, lambda: &Q) -> CyclicWord {
    let n = model.size();
    let edges = model.edges();
    let reduced: Vec<Q> = w.weight.iter().map(|x| x - lambda).collect();
    let mut pot = vec![Q::zero(); n];
    for _ in 0..=n {
        let mut changed = false;
        for (id, e) in edges.iter().enumerate() {
            let cand = &pot[e.from.0] + &reduced[id];
            if cand > pot[e.to.0] {
                pot[e.to.0] = cand;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let tight: Vec<Vec<Letter>> = (0..n)
        .map(|a| {
            model
                .successors(Letter(a))
                .into_iter()
                .filter(|&b| {
                    let id = model.edge_id(Letter(a), b).expect("successor edge");
                    &pot[a] + &reduced[id] == pot[b.0]
                })
                .collect()
        })
        .collect();
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        state[root] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < tight[v].len() {
                let u = tight[v][*next].0;
                *next += 1;
                match state[u] {
                    0 => {
                        state[u] = 1;
                        stack.push((u, 0));
                    }
                    1 => {
                        let from = stack.iter().position(|&(x, _)| x == u).expect("u is on the stack");
                        let letters = stack[from..].iter().map(|&(x, _)| Letter(x)).collect();
                        return CyclicWord::new(letters).expect("nonempty cycle").canonical();
                    }
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    unreachable!("the tight subgraph of an optimal mean contains a cycle")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SectionCertificate {
    Potential { p: Vec<Q> },
    Obstruction { cycle: CyclicWord, weight_sum: Q },
}

/// A potential making every reduced edge weight positive, or a nonpositive cycle.
pub fn cross_section(model: &MarkovModel, w: &EdgeWeighting) -> SectionCertificate {
    let (neg_mean, cycle) = max_mean_cycle(model, &w.neg());
    let min_mean = -neg_mean;
    let cert = if min_mean.is_positive() {
        let n = model.size();
        let mut dist = vec![Q::zero(); n];
        for _ in 0..=n {
            let mut changed = false;
            for (id, e) in model.edges().iter().enumerate() {
                let cand = &dist[e.from.0] + &w.weight[id] - &min_mean;
                if cand < dist[e.to.0] {
                    dist[e.to.0] = cand;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        SectionCertificate::Potential { p: dist.into_iter().map(|d| -d).collect() }
    } else {
        let weight_sum = w.cycle_sum(model, &cycle);
        SectionCertificate::Obstruction { cycle, weight_sum }
    };
    if let Err(e) = verify_section(model, w, &cert) {
        panic!("cross_section produced an invalid certificate: {e}");
    }
    cert
}

pub fn verify_section(
    model: &MarkovModel,
    w: &EdgeWeighting,
    cert: &SectionCertificate,
) -> std::result::Result<(), String> {
    match cert {
        SectionCertificate::Potential { p } => {
            if p.len() != model.size() {
                return Err("potential has wrong length".into());
            }
            for (id, e) in model.edges().iter().enumerate() {
                let v = &w.weight[id] + &p[e.to.0] - &p[e.from.0];
                if !v.is_positive() {
                    return Err(format!("edge {} has reduced weight {}", model.edge_key(id), format_q(&v)));
                }
            }
            Ok(())
        }
        SectionCertificate::Obstruction { cycle, weight_sum } => {
            cycle.check_in(model).map_err(|e| e.to_string())?;
            let s = w.cycle_sum(model, cycle);
            if s != *weight_sum {
                return Err(format!("cycle sum is {} not {}", format_q(&s), format_q(weight_sum)));
            }
            if s.is_positive() {
                return Err("obstruction cycle has positive weight".into());
            }
            Ok(())
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum MinLinkStatus {
    OptimalAtHorizon,
    Infeasible,
}

impl MinLinkStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            MinLinkStatus::OptimalAtHorizon => "optimal-at-horizon",
            MinLinkStatus::Infeasible => "infeasible",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitLink {
    pub word: CyclicWord,
    /// Linking with the probability measure `η_u / |u|`.
    pub link: Q,
    pub class: HomologyClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinLinkResult {
    pub status: MinLinkStatus,
    pub value: Option<Q>,
    /// Convex weights on `orbits`, nonzero entries only.
    pub weights: Vec<(CyclicWord, Q)>,
    pub argmin: Option<SignedMeasure>,
    pub horizon: usize,
    pub orbits: Vec<OrbitLink>,
    /// Enumerated orbits left out because their realization has degree 2.
    pub excluded: Vec<CyclicWord>,
}

/// Minimum linking of `gamma` with null-class probability combinations of orbits up to `max_len`.
pub fn min_link(
    model: &MarkovModel,
    gamma: &SignedMeasure,
    base: &BaseLinkTable,
    max_len: usize,
) -> Result<MinLinkResult> {
    if max_len == 0 {
        return Err(Error::Precondition("max_len must be at least 1".into()));
    }
    let gc = homology_class(model, gamma);
    if !gc.is_zero() {
        return Err(Error::NonNullClass(format!("Gamma has class {:?}", gc.to_strings())));
    }
    let (words, excluded): (Vec<_>, Vec<_>) =
        primitive_cyclic_words(model, max_len).into_iter().partition(|u| realization_degree(model, u) == 1);
    let order: Vec<Letter> = model.letters().collect();
    let orbits = words
        .par_iter()
        .map(|u| {
            let eta = SignedMeasure::normalized_orbit(u);
            let link = link_staged(model, &order, gamma, &eta, base)?.value;
            Ok(OrbitLink { word: u.clone(), link, class: homology_class(model, &eta) })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut lp = LinearProgram::minimize(orbits.iter().map(|o| o.link.clone()).collect());
    lp.constraint(vec![q(1); orbits.len()], Relation::Eq, q(1));
    for j in 0..model.homology_dim() {
        lp.constraint(orbits.iter().map(|o| o.class.0[j].clone()).collect(), Relation::Eq, q(0));
    }
    let result = match lp.solve() {
        LpOutcome::Optimal { x, value, .. } => {
            let weights: Vec<(CyclicWord, Q)> =
                orbits.iter().zip(x).filter(|(_, c)| !c.is_zero()).map(|(o, c)| (o.word.clone(), c)).collect();
            let argmin = weights
                .iter()
                .fold(SignedMeasure::zero(), |acc, (u, c)| acc.add(&SignedMeasure::normalized_orbit(u).scale(c)));
            MinLinkResult {
                status: MinLinkStatus::OptimalAtHorizon,
                value: Some(value),
                weights,
                argmin: Some(argmin),
                horizon: max_len,
                orbits,
                excluded,
            }
        }
        LpOutcome::Infeasible => MinLinkResult {
            status: MinLinkStatus::Infeasible,
            value: None,
            weights: Vec::new(),
            argmin: None,
            horizon: max_len,
            orbits,
            excluded,
        },
        LpOutcome::Unbounded => unreachable!("the feasible set is a simplex slice"),
    };
    Ok(result)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    PositiveAtHorizon,
    Negative,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::PositiveAtHorizon => "POSITIVE-AT-HORIZON",
            Verdict::Negative => "NEGATIVE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictReport {
    pub verdict: Verdict,
    /// Set when no null-class probability measure exists at the horizon.
    pub vacuous: bool,
    pub horizon: usize,
    pub witness: Option<SignedMeasure>,
    pub min_link: MinLinkResult,
}

pub const VERDICT_NOTE: &str = "horizon-limited: only orbits up to the horizon length are enumerated; \
     a value of exactly 0 counts as NEGATIVE since strict positivity is required";

pub fn birkhoff_boundary_verdict(
    model: &MarkovModel,
    gamma: &SignedMeasure,
    base: &BaseLinkTable,
    max_len: usize,
) -> Result<VerdictReport> {
    let min_link = min_link(model, gamma, base, max_len)?;
    let (verdict, vacuous, witness) = match &min_link.value {
        None => (Verdict::PositiveAtHorizon, true, None),
        Some(v) if v.is_positive() => (Verdict::PositiveAtHorizon, false, None),
        Some(_) => (Verdict::Negative, false, min_link.argmin.clone()),
    };
    Ok(VerdictReport { verdict, vacuous, horizon: max_len, witness, min_link })
}

/// Signed integer multiplicities on cyclic words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Boundary1Cycle {
    pub terms: BTreeMap<CyclicWord, i64>,
}

impl Boundary1Cycle {
    /// Homology of the realized 1-cycle: each word counts as its orbit divided by its degree.
    pub fn homology_class(&self, model: &MarkovModel) -> HomologyClass {
        let m = self.terms.iter().fold(SignedMeasure::zero(), |acc, (u, &k)| {
            let deg = realization_degree(model, u) as i64;
            acc.add(&SignedMeasure::orbit(u).scale(&Q::new(k.into(), deg.into())))
        });
        homology_class(model, &m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FriedBoundary {
    pub sign: i8,
    pub w: CyclicWord,
    pub cycle: Boundary1Cycle,
}

/// Boundary of the partial section obtained by desingularising `k1 γ1 + k2 γ2` (even multiplicities).
pub fn fried_boundary(
    model: &MarkovModel,
    u1: &CyclicWord,
    u2: &CyclicWord,
    k1: usize,
    k2: usize,
) -> Result<FriedBoundary> {
    u1.check_in(model)?;
    u2.check_in(model)?;
    if k1 == 0 || k2 == 0 || k1 % 2 == 1 || k2 % 2 == 1 {
        return Err(Error::Precondition("multiplicities must be positive and even".into()));
    }
    if u1.first() != u2.first() {
        return Err(Error::Precondition("u1 and u2 must start with the same cuboid".into()));
    }
    if !u1.is_primitive() || !u2.is_primitive() {
        return Err(Error::Precondition("u1 and u2 must be primitive".into()));
    }
    if u1.canonical() == u2.canonical() {
        return Err(Error::Precondition("u1 and u2 have a common root".into()));
    }
    let (p1, p2) = (BiWord::periodic(u1), BiWord::periodic(u2));
    let v = compare(model, &p1, &p2, Axis::Vertical)?;
    let h = compare(model, &p1, &p2, Axis::Horizontal)?;
    let sign: i8 = match (v, h) {
        (WordOrdering::Less, WordOrdering::Less) => 1,
        (WordOrdering::Less, WordOrdering::Greater) => -1,
        _ => return Err(Error::Precondition(format!("order hypotheses fail (vertical {v}, horizontal {h})"))),
    };
    let mut letters = u1.pow(k1).letters().to_vec();
    letters.extend_from_slice(u2.pow(k2).letters());
    let w = CyclicWord::new(letters)?;
    assert!(w.is_primitive(), "x^(2n) y^(2m) is primitive for distinct roots");
    let s = sign as i64;
    let n1 = realization_degree(model, u1) as i64;
    let n2 = realization_degree(model, u2) as i64;
    let mut terms = BTreeMap::new();
    terms.insert(u1.canonical(), s * k1 as i64 * n1);
    terms.insert(u2.canonical(), s * k2 as i64 * n2);
    terms.insert(w.canonical(), -s);
    Ok(FriedBoundary { sign, w, cycle: Boundary1Cycle { terms } })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separation {
    /// `t ≥ f·x + eta` for every point, with `eta > 0`.
    Functional { f: Vec<Q>, eta: Q },
    /// Convex weights whose combination lies in `{0} × (−∞, 0]`.
    Rejected { weights: Vec<Q> },
}

pub fn separating_functional(points: &[(Vec<Q>, Q)]) -> Result<Separation> {
    let Some(first) = points.first() else {
        return Err(Error::Precondition("no points".into()));
    };
    let d = first.0.len();
    if points.iter().any(|p| p.0.len() != d) {
        return Err(Error::Precondition("points have different dimensions".into()));
    }
    let mut hit = LinearProgram::minimize(points.iter().map(|p| p.1.clone()).collect());
    hit.constraint(vec![q(1); points.len()], Relation::Eq, q(1));
    for i in 0..d {
        hit.constraint(points.iter().map(|p| p.0[i].clone()).collect(), Relation::Eq, q(0));
    }
    if let LpOutcome::Optimal { x, value, .. } = hit.solve() {
        if !value.is_positive() {
            return Ok(Separation::Rejected { weights: x });
        }
    }
    // Variables: f (free, d entries), eta.
    let mut objective = vec![q(0); d + 1];
    objective[d] = q(1);
    let mut lp = LinearProgram::maximize(objective);
    for i in 0..d {
        lp.set_free(i);
    }
    lp.set_free(d);
    for (x, t) in points {
        let mut row = x.clone();
        row.push(q(1));
        lp.constraint(row, Relation::Le, t.clone());
    }
    let mut cap = vec![q(0); d + 1];
    cap[d] = q(1);
    lp.constraint(cap, Relation::Le, q(1));
    match lp.solve() {
        LpOutcome::Optimal { mut x, .. } => {
            let eta = x.pop().expect("eta");
            let sep = Separation::Functional { f: x, eta };
            assert!(verify_separation(points, &sep), "separating functional failed verification");
            Ok(sep)
        }
        other => unreachable!("separation program is feasible and bounded: {other:?}"),
    }
}

pub fn verify_separation(points: &[(Vec<Q>, Q)], sep: &Separation) -> bool {
    match sep {
        Separation::Functional { f, eta } => {
            eta.is_positive()
                && points.iter().all(|(x, t)| {
                    let fx: Q = f.iter().zip(x).map(|(a, b)| a * b).sum();
                    *t >= fx + eta
                })
        }
        Separation::Rejected { weights } => {
            if weights.len() != points.len() || weights.iter().any(Signed::is_negative) {
                return false;
            }
            if weights.iter().cloned().sum::<Q>() != q(1) {
                return false;
            }
            let d = points[0].0.len();
            let t: Q = weights.iter().zip(points).map(|(l, p)| l * &p.1).sum();
            (0..d).all(|i| weights.iter().zip(points).map(|(l, p)| l * &p.0[i]).sum::<Q>().is_zero())
                && !t.is_positive()
        }
    }
}
