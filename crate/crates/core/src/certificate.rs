//! Self-contained JSON certificates and their exact replay.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gibbs::{
    escape_bound_check, is_homologically_full, null_class_potential, verify_fullness, FullnessCertificate,
    FullnessReport, GibbsConfig, Potential, NULL_CLASS_TOL,
};
use crate::linking::{link_staged, BaseLinkTable};
use crate::markov_model::{BaseLinkEntry, MarkovModel, ModelDocument};
use crate::measures::{homology_class, MeasureTerm, SignedMeasure};
use crate::rational::{format_q, parse_q, q, Q};
use crate::sections::{
    birkhoff_boundary_verdict, fried_boundary, min_link, verify_section, verify_separation, EdgeWeighting,
    MinLinkResult, MinLinkStatus, SectionCertificate, Separation, Verdict, VerdictReport,
};
use crate::words::{realization_degree, CyclicWord, Letter};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum SectionDoc {
    Potential { p: BTreeMap<String, String> },
    Obstruction { cycle: Vec<String>, weight_sum: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum SeparationDoc {
    Functional { f: Vec<String>, eta: String },
    Rejected { weights: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum FullnessDoc {
    Combination { coeffs: Vec<String> },
    Functional { y: Vec<String> },
    NoCycles,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointDoc {
    pub x: Vec<String>,
    pub t: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryTerm {
    pub word: Vec<String>,
    pub multiplicity: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinLinkDoc {
    pub gamma: Vec<MeasureTerm>,
    pub base: Option<Vec<BaseLinkEntry>>,
    pub horizon: usize,
    pub status: String,
    pub value: Option<String>,
    /// Convex weights on normalized orbit measures.
    pub weights: Vec<MeasureTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    CrossSection {
        model: ModelDocument,
        weights: BTreeMap<String, String>,
        section: SectionDoc,
    },
    MinLink {
        model: ModelDocument,
        #[serde(flatten)]
        body: MinLinkDoc,
    },
    Verdict {
        model: ModelDocument,
        #[serde(flatten)]
        body: MinLinkDoc,
        verdict: String,
        vacuous: bool,
    },
    FriedBoundary {
        model: ModelDocument,
        u1: Vec<String>,
        u2: Vec<String>,
        k1: usize,
        k2: usize,
        sign: i8,
        w: Vec<String>,
        boundary: Vec<BoundaryTerm>,
    },
    Separation {
        points: Vec<PointDoc>,
        result: SeparationDoc,
    },
    HomologicallyFull {
        model: ModelDocument,
        horizon: usize,
        full: bool,
        cycles: Vec<Vec<String>>,
        certificate: FullnessDoc,
    },
    NullClass {
        model: ModelDocument,
        plus: Vec<Vec<String>>,
        minus: Vec<Vec<String>>,
        base: BTreeMap<String, f64>,
        r: f64,
        tol: f64,
        x: Vec<f64>,
        residual: f64,
    },
    Escape {
        model: ModelDocument,
        potential: BTreeMap<String, f64>,
        gamma: Vec<String>,
        u: Vec<String>,
        c1: f64,
        c2: f64,
        tol: f64,
        escape_mass: f64,
        bound: f64,
        passed: bool,
    },
}

pub fn section_doc(model: &MarkovModel, cert: &SectionCertificate) -> SectionDoc {
    match cert {
        SectionCertificate::Potential { p } => SectionDoc::Potential {
            p: model.letters().map(|c| (model.name(c).to_string(), format_q(&p[c.0]))).collect(),
        },
        SectionCertificate::Obstruction { cycle, weight_sum } => {
            SectionDoc::Obstruction { cycle: model.word_names(cycle), weight_sum: format_q(weight_sum) }
        }
    }
}

pub fn section_from_doc(model: &MarkovModel, doc: &SectionDoc) -> Result<SectionCertificate> {
    Ok(match doc {
        SectionDoc::Potential { p } => {
            let mut v = vec![None; model.size()];
            for (k, s) in p {
                v[model.letter(k)?.0] = Some(parse_q(s)?);
            }
            SectionCertificate::Potential {
                p: v.into_iter()
                    .map(|x| x.ok_or_else(|| Error::Parse("potential misses a cuboid".into())))
                    .collect::<Result<_>>()?,
            }
        }
        SectionDoc::Obstruction { cycle, weight_sum } => {
            SectionCertificate::Obstruction { cycle: model.parse_word(cycle)?, weight_sum: parse_q(weight_sum)? }
        }
    })
}

pub fn separation_doc(sep: &Separation) -> SeparationDoc {
    match sep {
        Separation::Functional { f, eta } => {
            SeparationDoc::Functional { f: f.iter().map(format_q).collect(), eta: format_q(eta) }
        }
        Separation::Rejected { weights } => SeparationDoc::Rejected { weights: weights.iter().map(format_q).collect() },
    }
}

fn parse_all(v: &[String]) -> Result<Vec<Q>> {
    v.iter().map(|s| parse_q(s)).collect()
}

pub fn points_from_docs(points: &[PointDoc]) -> Result<Vec<(Vec<Q>, Q)>> {
    points.iter().map(|p| Ok((parse_all(&p.x)?, parse_q(&p.t)?))).collect()
}

pub fn fullness_doc(report: &FullnessReport) -> FullnessDoc {
    match &report.certificate {
        FullnessCertificate::Combination(c) => FullnessDoc::Combination { coeffs: c.iter().map(format_q).collect() },
        FullnessCertificate::Functional(y) => FullnessDoc::Functional { y: y.iter().map(format_q).collect() },
        FullnessCertificate::NoCycles => FullnessDoc::NoCycles,
    }
}

pub fn min_link_doc(
    model: &MarkovModel,
    gamma: &SignedMeasure,
    base: &BaseLinkTable,
    result: &MinLinkResult,
) -> MinLinkDoc {
    MinLinkDoc {
        gamma: gamma.to_terms(model),
        base: if base.is_default() { None } else { Some(base.to_entries(model)) },
        horizon: result.horizon,
        status: result.status.as_str().to_string(),
        value: result.value.as_ref().map(format_q),
        weights: result
            .weights
            .iter()
            .map(|(u, c)| MeasureTerm { word: model.word_names(u), coeff: format_q(c) })
            .collect(),
    }
}

pub fn verdict_certificate(
    model: &MarkovModel,
    gamma: &SignedMeasure,
    base: &BaseLinkTable,
    rep: &VerdictReport,
) -> Certificate {
    Certificate::Verdict {
        model: model.to_document(),
        body: min_link_doc(model, gamma, base, &rep.min_link),
        verdict: rep.verdict.as_str().to_string(),
        vacuous: rep.vacuous,
    }
}

/// Outcome of replaying a certificate.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Verification {
    pub valid: bool,
    pub failures: Vec<String>,
}

struct Checks(Vec<String>);

impl Checks {
    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.0.push(what.into());
        }
    }

    fn done(self) -> Verification {
        Verification { valid: self.0.is_empty(), failures: self.0 }
    }
}

fn load(doc: &ModelDocument) -> Result<MarkovModel> {
    MarkovModel::from_document(doc)
}

/// Replays every check of a certificate; malformed certificates yield an error.
pub fn verify(cert: &Certificate) -> Result<Verification> {
    let mut checks = Checks(Vec::new());
    match cert {
        Certificate::CrossSection { model, weights, section } => {
            let m = load(model)?;
            let w = EdgeWeighting::from_map(&m, weights)?;
            let c = section_from_doc(&m, section)?;
            if let Err(e) = verify_section(&m, &w, &c) {
                checks.require(false, e);
            }
        }
        Certificate::MinLink { model, body } => {
            let m = load(model)?;
            replay_min_link(&m, body, &mut checks)?;
        }
        Certificate::Verdict { model, body, verdict, vacuous } => {
            let m = load(model)?;
            let (gamma, base) = gamma_and_base(&m, body)?;
            replay_min_link(&m, body, &mut checks)?;
            let rep = birkhoff_boundary_verdict(&m, &gamma, &base, body.horizon)?;
            checks.require(rep.verdict.as_str() == verdict, "verdict does not match the recomputed one");
            checks.require(rep.vacuous == *vacuous, "vacuous flag does not match");
            let by_value = match &body.value {
                None => Verdict::PositiveAtHorizon,
                Some(v) if parse_q(v)?.is_positive() => Verdict::PositiveAtHorizon,
                Some(_) => Verdict::Negative,
            };
            checks.require(by_value.as_str() == verdict, "verdict is inconsistent with the value sign");
        }
        Certificate::FriedBoundary { model, u1, u2, k1, k2, sign, w, boundary } => {
            let m = load(model)?;
            let (a, b) = (m.parse_word(u1)?, m.parse_word(u2)?);
            let fb = fried_boundary(&m, &a, &b, *k1, *k2)?;
            let word = m.parse_word(w)?;
            checks.require(word.is_primitive(), "w is not primitive");
            checks.require(fb.w == word, "w is not u1^k1 u2^k2");
            checks.require(fb.sign == *sign, "sign does not match the order hypotheses");
            let mut terms = BTreeMap::new();
            for t in boundary {
                terms.insert(m.parse_word(&t.word)?.canonical(), t.multiplicity);
            }
            checks.require(terms == fb.cycle.terms, "boundary multiplicities differ");
            let cycle = crate::sections::Boundary1Cycle { terms };
            checks.require(cycle.homology_class(&m).is_zero(), "boundary is not null-class");
        }
        Certificate::Separation { points, result } => {
            let pts = points_from_docs(points)?;
            let sep = match result {
                SeparationDoc::Functional { f, eta } => Separation::Functional { f: parse_all(f)?, eta: parse_q(eta)? },
                SeparationDoc::Rejected { weights } => Separation::Rejected { weights: parse_all(weights)? },
            };
            checks.require(!pts.is_empty() && verify_separation(&pts, &sep), "separation inequalities fail");
            let functional_exists =
                matches!(crate::sections::separating_functional(&pts)?, Separation::Functional { .. });
            checks.require(
                functional_exists == matches!(sep, Separation::Functional { .. }),
                "certificate type disagrees with recomputation",
            );
        }
        Certificate::HomologicallyFull { model, horizon, full, cycles, certificate } => {
            let m = load(model)?;
            let words = cycles.iter().map(|c| m.parse_word(c)).collect::<Result<Vec<_>>>()?;
            let fresh = is_homologically_full(&m, *horizon);
            checks.require(fresh.cycles == words, "cycle list differs from the enumeration at this horizon");
            checks.require(fresh.full == *full, "verdict differs from recomputation");
            let certificate = match certificate {
                FullnessDoc::Combination { coeffs } => FullnessCertificate::Combination(parse_all(coeffs)?),
                FullnessDoc::Functional { y } => FullnessCertificate::Functional(parse_all(y)?),
                FullnessDoc::NoCycles => FullnessCertificate::NoCycles,
            };
            let rep = FullnessReport { full: *full, horizon: *horizon, cycles: words, certificate };
            checks.require(verify_fullness(&m, &rep), "fullness certificate fails exact replay");
        }
        Certificate::NullClass { model, plus, minus, base, r, tol, x, residual } => {
            let m = load(model)?;
            let p = plus.iter().map(|w| m.parse_word(w)).collect::<Result<Vec<_>>>()?;
            let q_ = minus.iter().map(|w| m.parse_word(w)).collect::<Result<Vec<_>>>()?;
            let base = Potential::from_map(&m, base)?;
            let cfg = GibbsConfig { tol: *tol, ..GibbsConfig::default() };
            let res = null_class_potential(&m, &p, &q_, &base, *r, &cfg)?;
            checks.require(res.x == *x, "root differs from recomputation");
            checks.require(res.residual == *residual, "residual differs from recomputation");
            checks.require(*residual <= NULL_CLASS_TOL, "residual above tolerance");
            checks.require(x.iter().all(|v| v.abs() <= *r), "root outside the box");
        }
        Certificate::Escape { model, potential, gamma, u, c1, c2, tol, escape_mass, bound, passed } => {
            let m = load(model)?;
            let pot = Potential::from_map(&m, potential)?;
            let g = m.parse_word(gamma)?;
            let set = u.iter().map(|k| m.edge_by_key(k)).collect::<Result<BTreeSet<_>>>()?;
            let cfg = GibbsConfig { tol: *tol, ..GibbsConfig::default() };
            let rep = escape_bound_check(&m, &pot, &g, &set, *c1, *c2, &cfg)?;
            checks.require(rep.escape_mass == *escape_mass, "escape mass differs from recomputation");
            checks.require(rep.bound == *bound, "bound differs from recomputation");
            checks.require(rep.passed == *passed, "pass flag differs from recomputation");
        }
    }
    Ok(checks.done())
}

fn gamma_and_base(m: &MarkovModel, body: &MinLinkDoc) -> Result<(SignedMeasure, BaseLinkTable)> {
    let gamma = SignedMeasure::from_terms(m, &body.gamma)?;
    let base = match &body.base {
        None => BaseLinkTable::zero(),
        Some(entries) => BaseLinkTable::from_entries(m, entries)?,
    };
    Ok((gamma, base))
}

fn replay_min_link(m: &MarkovModel, body: &MinLinkDoc, checks: &mut Checks) -> Result<()> {
    let (gamma, base) = gamma_and_base(m, body)?;
    checks.require(homology_class(m, &gamma).is_zero(), "Gamma is not null-class");
    let order: Vec<Letter> = m.letters().collect();
    let mut total = q(0);
    let mut class = vec![q(0); m.homology_dim()];
    let mut value = q(0);
    for t in &body.weights {
        let u = m.parse_word(&t.word)?;
        let c = parse_q(&t.coeff)?;
        checks.require(
            u.is_primitive() && u.is_canonical(),
            format!("{} is not a canonical primitive word", m.format_word(&u)),
        );
        checks.require(u.len() <= body.horizon, format!("{} exceeds the horizon", m.format_word(&u)));
        checks.require(realization_degree(m, &u) == 1, format!("{} has degree 2", m.format_word(&u)));
        checks.require(!c.is_negative(), "negative convex weight");
        let eta = SignedMeasure::normalized_orbit(&u);
        for (acc, v) in class.iter_mut().zip(homology_class(m, &eta).0) {
            *acc += &c * v;
        }
        value += &c * link_staged(m, &order, &gamma, &eta, &base)?.value;
        total += c;
    }
    let fresh = min_link(m, &gamma, &base, body.horizon)?;
    checks.require(fresh.status.as_str() == body.status, "status differs from recomputation");
    match (&body.value, fresh.status) {
        (Some(v), MinLinkStatus::OptimalAtHorizon) => {
            let v = parse_q(v)?;
            checks.require(total == q(1), "weights do not sum to 1");
            checks.require(class.iter().all(Zero::is_zero), "argmin is not null-class");
            checks.require(value == v, "value is not the linking number of the argmin");
            checks.require(fresh.value.as_ref() == Some(&v), "value is not the optimum at this horizon");
        }
        (None, MinLinkStatus::Infeasible) => {
            checks.require(body.weights.is_empty(), "infeasible result carries weights")
        }
        _ => checks.require(false, "value presence does not match the status"),
    }
    Ok(())
}

pub fn word_list(model: &MarkovModel, ws: &[CyclicWord]) -> Vec<Vec<String>> {
    ws.iter().map(|w| model.word_names(w)).collect()
}
