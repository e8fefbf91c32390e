//! Pressure, equilibrium states and null-class potentials for edge potentials.
//!
//! This is the only module using floating point.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use nalgebra::{DMatrix, DVector};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rank, row_reduce};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::markov_model::MarkovModel;
use crate::measures::{homology_class, SignedMeasure};
use crate::rational::{q, to_f64, Q};
use crate::words::{primitive_cyclic_words, CyclicWord};

/// A real value on every edge, indexed by edge id.
#[derive(Clone, Debug, PartialEq)]
pub struct Potential {
    pub weight: Vec<f64>,
}

impl Potential {
    pub fn constant(model: &MarkovModel, c: f64) -> Self {
        Potential { weight: vec![c; model.edges().len()] }
    }

    pub fn from_map(model: &MarkovModel, map: &BTreeMap<String, f64>) -> Result<Self> {
        let mut weight = vec![None; model.edges().len()];
        for (k, v) in map {
            if !v.is_finite() {
                return Err(Error::Parse(format!("potential value at {k} is not finite")));
            }
            weight[model.edge_by_key(k)?] = Some(*v);
        }
        let weight = weight
            .into_iter()
            .enumerate()
            .map(|(id, w)| w.ok_or_else(|| Error::Parse(format!("potential misses edge {}", model.edge_key(id)))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Potential { weight })
    }

    pub fn to_map(&self, model: &MarkovModel) -> BTreeMap<String, f64> {
        self.weight.iter().enumerate().map(|(id, w)| (model.edge_key(id), *w)).collect()
    }

    pub fn max(&self) -> f64 {
        self.weight.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct GibbsConfig {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for GibbsConfig {
    fn default() -> Self {
        GibbsConfig { tol: 1e-12, max_iter: 100_000 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PressureReport {
    pub pressure: f64,
    pub spectral_radius: f64,
    /// `‖M r − λ r‖∞ / (λ ‖r‖∞)`.
    pub right_residual: f64,
    pub left_residual: f64,
    pub iterations: usize,
}

struct Eigen {
    report: PressureReport,
    /// Eigenvalue of the matrix scaled by `e^{-max pot}`.
    lambda: f64,
    scaled: Vec<Vec<f64>>,
    right: Vec<f64>,
    left: Vec<f64>,
}

fn power_iterate(a: &[Vec<f64>], cfg: &GibbsConfig) -> Result<(Vec<f64>, usize)> {
    let n = a.len();
    let mut r = vec![1.0; n];
    let mut diff = f64::INFINITY;
    for it in 1..=cfg.max_iter {
        let mut y: Vec<f64> = (0..n).map(|i| (0..n).map(|j| a[i][j] * r[j]).sum()).collect();
        let norm = y.iter().cloned().fold(0.0, f64::max);
        for v in y.iter_mut() {
            *v /= norm;
        }
        diff = y.iter().zip(&r).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        r = y;
        if diff <= cfg.tol {
            return Ok((r, it));
        }
    }
    Err(Error::NonConvergence { iterations: cfg.max_iter, residual: diff })
}

fn eigen(model: &MarkovModel, pot: &Potential, cfg: &GibbsConfig) -> Result<Eigen> {
    let n = model.size();
    let shift = pot.max();
    let mut scaled = vec![vec![0.0; n]; n];
    for (id, e) in model.edges().iter().enumerate() {
        scaled[e.from.0][e.to.0] = (pot.weight[id] - shift).exp();
    }
    // Adding the identity makes the matrix primitive without moving eigenvectors.
    let plus_id = |m: &Vec<Vec<f64>>, transpose: bool| -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| {
                (0..n).map(|j| if transpose { m[j][i] } else { m[i][j] } + if i == j { 1.0 } else { 0.0 }).collect()
            })
            .collect()
    };
    let (right, it_r) = power_iterate(&plus_id(&scaled, false), cfg)?;
    let (left, it_l) = power_iterate(&plus_id(&scaled, true), cfg)?;
    let apply = |v: &[f64], transpose: bool| -> Vec<f64> {
        (0..n).map(|i| (0..n).map(|j| if transpose { scaled[j][i] } else { scaled[i][j] } * v[j]).sum()).collect()
    };
    let mr = apply(&right, false);
    let lambda = mr.iter().zip(&right).map(|(a, b)| a * b).sum::<f64>() / right.iter().map(|b| b * b).sum::<f64>();
    let residual = |mv: &[f64], v: &[f64]| {
        let top = mv.iter().zip(v).map(|(a, b)| (a - lambda * b).abs()).fold(0.0, f64::max);
        top / (lambda * v.iter().cloned().fold(0.0, f64::max))
    };
    let right_residual = residual(&mr, &right);
    let left_residual = residual(&apply(&left, true), &left);
    let report = PressureReport {
        pressure: lambda.ln() + shift,
        spectral_radius: lambda * shift.exp(),
        right_residual,
        left_residual,
        iterations: it_r.max(it_l),
    };
    Ok(Eigen { report, lambda, scaled, right, left })
}

pub fn pressure(model: &MarkovModel, pot: &Potential) -> Result<PressureReport> {
    pressure_with(model, pot, &GibbsConfig::default())
}

pub fn pressure_with(model: &MarkovModel, pot: &Potential, cfg: &GibbsConfig) -> Result<PressureReport> {
    Ok(eigen(model, pot, cfg)?.report)
}

/// Stationary Markov chain on the transition graph.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkovMeasure {
    pub stationary: Vec<f64>,
    /// Transition probability per edge id.
    pub edge_prob: Vec<f64>,
}

impl MarkovMeasure {
    /// Chain with transition probabilities proportional to positive `weights`.
    pub fn from_transition_weights(model: &MarkovModel, weights: &[f64]) -> Result<Self> {
        let n = model.size();
        let mut out = vec![0.0; n];
        for (id, e) in model.edges().iter().enumerate() {
            if weights[id] <= 0.0 {
                return Err(Error::Precondition("transition weights must be positive".into()));
            }
            out[e.from.0] += weights[id];
        }
        let edge_prob: Vec<f64> = model.edges().iter().enumerate().map(|(id, e)| weights[id] / out[e.from.0]).collect();
        // Solve π P = π with Σ π = 1 by replacing one balance row.
        let mut a = DMatrix::<f64>::zeros(n, n);
        for (id, e) in model.edges().iter().enumerate() {
            a[(e.to.0, e.from.0)] += edge_prob[id];
        }
        for i in 0..n {
            a[(i, i)] -= 1.0;
        }
        for j in 0..n {
            a[(n - 1, j)] = 1.0;
        }
        let mut b = DVector::<f64>::zeros(n);
        b[n - 1] = 1.0;
        let pi = a
            .lu()
            .solve(&b)
            .ok_or_else(|| Error::Precondition("transition matrix has no unique stationary law".into()))?;
        Ok(MarkovMeasure { stationary: pi.iter().cloned().collect(), edge_prob })
    }

    pub fn edge_mass(&self, model: &MarkovModel, id: usize) -> f64 {
        self.stationary[model.edges()[id].from.0] * self.edge_prob[id]
    }

    pub fn edge_masses(&self, model: &MarkovModel) -> Vec<f64> {
        (0..model.edges().len()).map(|id| self.edge_mass(model, id)).collect()
    }

    /// `−Σ q(e) log p(e)`.
    pub fn entropy(&self, model: &MarkovModel) -> f64 {
        (0..model.edges().len())
            .filter(|&id| self.edge_prob[id] > 0.0)
            .map(|id| -self.edge_mass(model, id) * self.edge_prob[id].ln())
            .sum()
    }

    pub fn integral(&self, model: &MarkovModel, pot: &Potential) -> f64 {
        (0..model.edges().len()).map(|id| self.edge_mass(model, id) * pot.weight[id]).sum()
    }

    pub fn homology_class(&self, model: &MarkovModel) -> Vec<f64> {
        let mut c = vec![0.0; model.homology_dim()];
        for (id, e) in model.edges().iter().enumerate() {
            let m = self.edge_mass(model, id);
            for (ci, h) in c.iter_mut().zip(&e.homology) {
                *ci += m * to_f64(h);
            }
        }
        c
    }

    /// Largest imbalance between inflow and outflow at a cuboid.
    pub fn conservation_defect(&self, model: &MarkovModel) -> f64 {
        let mut net = vec![0.0; model.size()];
        for (id, e) in model.edges().iter().enumerate() {
            let m = self.edge_mass(model, id);
            net[e.from.0] -= m;
            net[e.to.0] += m;
        }
        net.into_iter().map(f64::abs).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquilibriumState {
    pub measure: MarkovMeasure,
    /// `pressure − ∫ pot`.
    pub entropy: f64,
    pub report: PressureReport,
}

pub fn equilibrium_state(model: &MarkovModel, pot: &Potential) -> Result<EquilibriumState> {
    equilibrium_state_with(model, pot, &GibbsConfig::default())
}

pub fn equilibrium_state_with(model: &MarkovModel, pot: &Potential, cfg: &GibbsConfig) -> Result<EquilibriumState> {
    let eig = eigen(model, pot, cfg)?;
    let edge_prob = model
        .edges()
        .iter()
        .map(|e| eig.scaled[e.from.0][e.to.0] * eig.right[e.to.0] / (eig.lambda * eig.right[e.from.0]))
        .collect();
    let z: f64 = eig.left.iter().zip(&eig.right).map(|(l, r)| l * r).sum();
    let stationary = eig.left.iter().zip(&eig.right).map(|(l, r)| l * r / z).collect();
    let measure = MarkovMeasure { stationary, edge_prob };
    let entropy = eig.report.pressure - measure.integral(model, pot);
    Ok(EquilibriumState { measure, entropy, report: eig.report })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EscapeReport {
    pub escape_mass: f64,
    pub h_top: f64,
    pub bound: f64,
    pub passed: bool,
}

fn orbit_edges(model: &MarkovModel, u: &CyclicWord) -> BTreeSet<usize> {
    u.transitions().filter_map(|(a, b)| model.edge_id(a, b)).collect()
}

/// Checks that the equilibrium state of `pot` leaves `u_set` with mass at most `h_top / (c2 − c1)`.
pub fn escape_bound_check(
    model: &MarkovModel,
    pot: &Potential,
    gamma: &CyclicWord,
    u_set: &BTreeSet<usize>,
    c1: f64,
    c2: f64,
    cfg: &GibbsConfig,
) -> Result<EscapeReport> {
    gamma.check_in(model)?;
    if c2 <= c1 {
        return Err(Error::Precondition("C2 must exceed C1".into()));
    }
    let g = orbit_edges(model, gamma);
    for (id, &p) in pot.weight.iter().enumerate() {
        let key = model.edge_key(id);
        if p > c2 {
            return Err(Error::Precondition(format!("pot exceeds C2 at {key}")));
        }
        if g.contains(&id) && p != c2 {
            return Err(Error::Precondition(format!("pot differs from C2 on gamma at {key}")));
        }
        if !u_set.contains(&id) && p > c1 {
            return Err(Error::Precondition(format!("pot exceeds C1 off U at {key}")));
        }
    }
    if let Some(id) = g.iter().find(|id| !u_set.contains(id)) {
        return Err(Error::Precondition(format!("gamma edge {} is outside U", model.edge_key(*id))));
    }
    let state = equilibrium_state_with(model, pot, cfg)?;
    let escape_mass =
        (0..model.edges().len()).filter(|id| !u_set.contains(id)).map(|id| state.measure.edge_mass(model, id)).sum();
    let h_top = pressure_with(model, &Potential::constant(model, 0.0), cfg)?.pressure;
    let bound = h_top / (c2 - c1);
    Ok(EscapeReport { escape_mass, h_top, bound, passed: escape_mass <= bound + 1e-9 })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RootMethod {
    Newton,
    Bisection,
}

impl RootMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            RootMethod::Newton => "newton",
            RootMethod::Bisection => "bisection",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NullClassResult {
    pub x: Vec<f64>,
    /// `‖class(μ_pot(x))‖∞`.
    pub residual: f64,
    pub class: Vec<f64>,
    pub iterations: usize,
    pub method: RootMethod,
}

pub const NULL_CLASS_TOL: f64 = 1e-8;
const NEWTON_MAX_ITER: usize = 200;
const FD_STEP: f64 = 1e-6;
const DAMPING: f64 = 0.5;

/// Span of the classes of all cycles, via fundamental cycles of a spanning tree.
pub fn cycle_class_span(model: &MarkovModel) -> Vec<Vec<Q>> {
    let n = model.size();
    let b = model.homology_dim();
    let mut phi: Vec<Option<Vec<Q>>> = vec![None; n];
    phi[0] = Some(vec![Q::zero(); b]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for e in model.edges() {
            let (next, sign) = if e.from.0 == v {
                (e.to.0, 1)
            } else if e.to.0 == v {
                (e.from.0, -1)
            } else {
                continue;
            };
            if phi[next].is_none() {
                let base = phi[v].clone().expect("visited");
                phi[next] = Some(base.iter().zip(&e.homology).map(|(p, h)| p + h * q(sign)).collect());
                queue.push_back(next);
            }
        }
    }
    model
        .edges()
        .iter()
        .map(|e| {
            let (pa, pb) = (phi[e.from.0].as_ref().expect("connected"), phi[e.to.0].as_ref().expect("connected"));
            (0..b).map(|j| &e.homology[j] + &pa[j] - &pb[j]).collect()
        })
        .collect()
}

/// Finds `x` in `[−r, r]^n` whose bump potential has a null-class equilibrium state.
pub fn null_class_potential(
    model: &MarkovModel,
    plus: &[CyclicWord],
    minus: &[CyclicWord],
    base: &Potential,
    r: f64,
    cfg: &GibbsConfig,
) -> Result<NullClassResult> {
    let n = plus.len();
    if minus.len() != n {
        return Err(Error::Precondition("plus and minus orbit lists differ in length".into()));
    }
    if r.is_nan() || r <= 0.0 {
        return Err(Error::Precondition("r must be positive".into()));
    }
    for u in plus.iter().chain(minus) {
        u.check_in(model)?;
    }
    let class_of = |u: &CyclicWord| homology_class(model, &SignedMeasure::orbit(u)).0;
    let basis: Vec<Vec<Q>> = plus.iter().map(class_of).collect();
    for (i, u) in minus.iter().enumerate() {
        let neg: Vec<Q> = basis[i].iter().map(|v| -v.clone()).collect();
        if class_of(u) != neg {
            return Err(Error::Precondition(format!("minus orbit {i} is not opposite to plus orbit {i}")));
        }
    }
    let span_rank = rank(&cycle_class_span(model));
    if rank(&basis) != n || n != span_rank {
        return Err(Error::Precondition(format!(
            "plus orbit classes do not form a basis (rank {} of {n}, span has rank {span_rank})",
            rank(&basis)
        )));
    }
    let supports: Vec<BTreeSet<usize>> = plus.iter().chain(minus).map(|u| orbit_edges(model, u)).collect();
    for i in 0..supports.len() {
        for j in i + 1..supports.len() {
            if !supports[i].is_disjoint(&supports[j]) {
                return Err(Error::Precondition("chosen orbits must be edge-disjoint".into()));
            }
        }
    }
    let horizon = plus.iter().chain(minus).map(CyclicWord::len).max().unwrap_or(1);
    if !is_homologically_full(model, horizon).full {
        return Err(Error::Precondition(format!("model is not homologically full at horizon {horizon}")));
    }
    let pivots = row_reduce(&basis).1;
    let bmat = DMatrix::from_fn(n, n, |row, col| to_f64(&basis[col][pivots[row]]));
    let lu = bmat.lu();

    let pot_at = |x: &[f64]| -> Potential {
        let mut p = base.clone();
        for (i, &xi) in x.iter().enumerate() {
            let support = if xi > 0.0 { &supports[i] } else { &supports[n + i] };
            for &id in support {
                p.weight[id] += xi.abs();
            }
        }
        p
    };
    let eval = |x: &[f64]| -> Result<(Vec<f64>, f64, Vec<f64>)> {
        let class = equilibrium_state_with(model, &pot_at(x), cfg)?.measure.homology_class(model);
        let residual = class.iter().cloned().map(f64::abs).fold(0.0, f64::max);
        let rhs = DVector::from_fn(n, |row, _| class[pivots[row]]);
        let coords = lu.solve(&rhs).map(|v| v.iter().cloned().collect()).unwrap_or_else(|| vec![0.0; n]);
        Ok((coords, residual, class))
    };
    let clamp = |v: f64| v.clamp(-r, r);

    let mut x = vec![0.0; n];
    let (mut f, mut res, mut class) = eval(&x)?;
    let mut iterations = 0;
    while iterations < NEWTON_MAX_ITER && res > 1e-13 {
        iterations += 1;
        let mut jac = DMatrix::<f64>::zeros(n, n);
        for j in 0..n {
            let (mut xp, mut xm) = (x.clone(), x.clone());
            xp[j] += FD_STEP;
            xm[j] -= FD_STEP;
            let (fp, _, _) = eval(&xp)?;
            let (fm, _, _) = eval(&xm)?;
            for i in 0..n {
                jac[(i, j)] = (fp[i] - fm[i]) / (2.0 * FD_STEP);
            }
        }
        let rhs = DVector::from_fn(n, |i, _| -f[i]);
        let Some(step) = jac.lu().solve(&rhs) else { break };
        let mut t = 1.0;
        let mut accepted = false;
        while t > 1e-12 {
            let cand: Vec<f64> = (0..n).map(|i| clamp(x[i] + t * step[i])).collect();
            let (fc, rc, cc) = eval(&cand)?;
            if rc < res {
                x = cand;
                f = fc;
                res = rc;
                class = cc;
                accepted = true;
                break;
            }
            t *= DAMPING;
        }
        if !accepted {
            break;
        }
    }
    let mut method = RootMethod::Newton;
    if res > NULL_CLASS_TOL {
        method = RootMethod::Bisection;
        for _sweep in 0..50 {
            for i in 0..n {
                let (mut lo, mut hi) = (-r, r);
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    let mut probe = x.clone();
                    probe[i] = mid;
                    let (fc, _, _) = eval(&probe)?;
                    if fc[i] > 0.0 {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                x[i] = 0.5 * (lo + hi);
                iterations += 1;
            }
            let (_, rc, cc) = eval(&x)?;
            res = rc;
            class = cc;
            if res <= 1e-12 {
                break;
            }
        }
    }
    if res > NULL_CLASS_TOL {
        return Err(Error::NonConvergence { iterations, residual: res });
    }
    Ok(NullClassResult { x, residual: res, class, iterations, method })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FullnessCertificate {
    /// Coefficients `c_i ≥ 1` with `Σ c_i class_i = 0`.
    Combination(Vec<Q>),
    /// `y` with `y·class_i ≥ 0` for all `i` and `Σ y·class_i > 0`.
    Functional(Vec<Q>),
    /// No cycle exists up to the horizon.
    NoCycles,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullnessReport {
    pub full: bool,
    pub horizon: usize,
    pub cycles: Vec<CyclicWord>,
    pub certificate: FullnessCertificate,
}

/// Whether 0 lies in the relative interior of the hull of cycle classes up to `max_len`.
pub fn is_homologically_full(model: &MarkovModel, max_len: usize) -> FullnessReport {
    let cycles = primitive_cyclic_words(model, max_len);
    let classes: Vec<Vec<Q>> = cycles.iter().map(|u| homology_class(model, &SignedMeasure::orbit(u)).0).collect();
    let b = model.homology_dim();
    if cycles.is_empty() {
        return FullnessReport { full: false, horizon: max_len, cycles, certificate: FullnessCertificate::NoCycles };
    }
    let mut lp = LinearProgram::minimize(vec![q(0); cycles.len()]);
    for j in 0..b {
        let total: Q = classes.iter().map(|c| c[j].clone()).sum();
        lp.constraint(classes.iter().map(|c| c[j].clone()).collect(), Relation::Eq, -total);
    }
    if let LpOutcome::Optimal { x, .. } = lp.solve() {
        let coeffs = x.into_iter().map(|d| d + q(1)).collect();
        return FullnessReport {
            full: true,
            horizon: max_len,
            cycles,
            certificate: FullnessCertificate::Combination(coeffs),
        };
    }
    let total: Vec<Q> = (0..b).map(|j| classes.iter().map(|c| c[j].clone()).sum()).collect();
    let mut sep = LinearProgram::maximize(total);
    for j in 0..b {
        sep.set_free(j);
        let mut e = vec![q(0); b];
        e[j] = q(1);
        sep.constraint(e.clone(), Relation::Le, q(1)).constraint(e, Relation::Ge, q(-1));
    }
    for c in &classes {
        sep.constraint(c.clone(), Relation::Ge, q(0));
    }
    let y = match sep.solve() {
        LpOutcome::Optimal { x, .. } => x,
        other => unreachable!("bounded nonempty separation program: {other:?}"),
    };
    FullnessReport { full: false, horizon: max_len, cycles, certificate: FullnessCertificate::Functional(y) }
}

/// Exact replay of a fullness certificate.
pub fn verify_fullness(model: &MarkovModel, report: &FullnessReport) -> bool {
    let classes: Vec<Vec<Q>> =
        report.cycles.iter().map(|u| homology_class(model, &SignedMeasure::orbit(u)).0).collect();
    let b = model.homology_dim();
    match &report.certificate {
        FullnessCertificate::NoCycles => !report.full && report.cycles.is_empty(),
        FullnessCertificate::Combination(c) => {
            report.full
                && c.len() == classes.len()
                && c.iter().all(|v| *v >= q(1))
                && (0..b).all(|j| c.iter().zip(&classes).map(|(ci, v)| ci * &v[j]).sum::<Q>().is_zero())
        }
        FullnessCertificate::Functional(y) => {
            let dots: Vec<Q> = classes.iter().map(|v| y.iter().zip(v).map(|(a, b)| a * b).sum()).collect();
            !report.full
                && y.len() == b
                && dots.iter().all(|d| !d.is_negative())
                && dots.iter().cloned().sum::<Q>().is_positive()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::full2;

    #[test]
    fn full2_zero_potential() {
        let m = full2();
        let rep = pressure(&m, &Potential::constant(&m, 0.0)).unwrap();
        assert!((rep.pressure - 2f64.ln()).abs() < 1e-10);
        let st = equilibrium_state(&m, &Potential::constant(&m, 3.0)).unwrap();
        for id in 0..4 {
            assert!((st.measure.edge_mass(&m, id) - 0.25).abs() < 1e-12);
        }
        assert!((st.entropy - 2f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn quadratic_oracle() {
        let m = full2();
        let mut p = Potential::constant(&m, 0.0);
        p.weight[m.edge_by_key("A->A").unwrap()] = 1.0;
        let e = std::f64::consts::E;
        // eigenvalues of [[e,1],[1,1]]
        let lam = ((e + 1.0) + ((e - 1.0).powi(2) + 4.0).sqrt()) / 2.0;
        assert!((pressure(&m, &p).unwrap().pressure - lam.ln()).abs() < 1e-10);
    }

    #[test]
    fn fullness_examples() {
        let m = full2();
        let rep = is_homologically_full(&m, 1);
        assert!(rep.full);
        assert_eq!(rep.certificate, FullnessCertificate::Combination(vec![q(1), q(1)]));
        assert!(verify_fullness(&m, &rep));
        let plus = MarkovModel::with_default_orders(
            &["A", "B"],
            &[(0, 0, vec![q(1)]), (0, 1, vec![q(1)]), (1, 0, vec![q(1)]), (1, 1, vec![q(1)])],
            1,
        )
        .unwrap();
        let rep = is_homologically_full(&plus, 3);
        assert!(!rep.full);
        assert_eq!(rep.certificate, FullnessCertificate::Functional(vec![q(1)]));
        assert!(verify_fullness(&plus, &rep));
    }

    #[test]
    fn null_class_symmetric_and_shifted() {
        let m = full2();
        let (a, b) = (m.word("A").unwrap(), m.word("B").unwrap());
        let cfg = GibbsConfig::default();
        let res = null_class_potential(
            &m,
            std::slice::from_ref(&a),
            std::slice::from_ref(&b),
            &Potential::constant(&m, 0.0),
            5.0,
            &cfg,
        )
        .unwrap();
        assert_eq!(res.x, vec![0.0]);
        assert!(res.residual <= 1e-10);
        let mut base = Potential::constant(&m, 0.0);
        base.weight[m.edge_by_key("A->A").unwrap()] = 1.0;
        let res = null_class_potential(&m, &[a], &[b], &base, 5.0, &cfg).unwrap();
        assert!(res.x[0] < 0.0 && res.residual <= 1e-8, "{res:?}");
        assert!((res.x[0] + 1.0).abs() < 1e-6);
    }
}
