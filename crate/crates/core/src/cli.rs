//! Command-line front end: JSON in, one JSON report out, verdict-bearing exit codes.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::certificate::{
    fullness_doc, min_link_doc, points_from_docs, section_doc, separation_doc, verdict_certificate, verify, word_list,
    BoundaryTerm, Certificate, PointDoc,
};
use crate::error::{Error, Result};
use crate::gibbs::{
    equilibrium_state_with, escape_bound_check, is_homologically_full, null_class_potential, pressure_with,
    GibbsConfig, Potential, PressureReport,
};
use crate::linking::{enumerate_prime_orbits, link_full, linking_pairing, BaseLinkTable, LinkValue};
use crate::markov_model::{validate, BaseLinkEntry, MarkovModel, ModelDocument};
use crate::measures::{edge_flow, homology_class, reduce, reduce_all, MeasureTerm, SignedMeasure};
use crate::rational::format_q;
use crate::sections::{
    birkhoff_boundary_verdict, cross_section, fried_boundary, min_link, separating_functional, EdgeWeighting,
    MinLinkResult, SectionCertificate, Separation, Verdict, VERDICT_NOTE,
};
use crate::words::{compare, Axis, BiWord, CyclicWord, Letter};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const STAGING_NOTE: &str =
    "value = base(reduce_all(nu), mu) + sum over k = 0..p-1 of pairing(R_(k+1), N_k...N_1 nu, mu), N_0 = identity";

#[derive(Parser, Debug)]
#[command(
    name = "symlink",
    version,
    about = "Linking numbers, Gibbs measures and section certificates on Markov models"
)]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every model invariant.
    Validate { model: String },
    /// Compare two bi-infinite words in one order.
    Compare {
        model: String,
        w: String,
        x: String,
        #[arg(long, value_enum)]
        axis: AxisArg,
    },
    #[command(subcommand)]
    Word(WordCmd),
    #[command(subcommand)]
    Measure(MeasureCmd),
    #[command(subcommand)]
    Link(LinkCmd),
    #[command(subcommand)]
    Gibbs(GibbsCmd),
    #[command(subcommand)]
    Section(SectionCmd),
    /// Replay a certificate emitted by another subcommand.
    Verify { certificate: String },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum AxisArg {
    Vertical,
    Horizontal,
}

#[derive(Subcommand, Debug)]
enum WordCmd {
    /// Primitive root and exponent.
    Primitive {
        u: String,
        #[arg(long)]
        model: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum MeasureCmd {
    /// Reduce at one cuboid, or at every cuboid in alphabet order.
    Reduce {
        model: String,
        measure: String,
        #[arg(long)]
        cuboid: Option<String>,
    },
    Class {
        model: String,
        measure: String,
    },
    Flow {
        model: String,
        measure: String,
    },
}

#[derive(Subcommand, Debug)]
enum LinkCmd {
    Pair {
        model: String,
        nu: String,
        mu: String,
        #[arg(long)]
        cuboid: String,
    },
    Full {
        model: String,
        nu: String,
        mu: String,
        #[arg(long)]
        base: Option<String>,
    },
    /// Words through a cuboid exactly once.
    Primes {
        model: String,
        #[arg(long)]
        cuboid: String,
        #[arg(long = "max-len", alias = "horizon")]
        max_len: usize,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct TolArg {
    /// Power-iteration tolerance.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Subcommand, Debug)]
enum GibbsCmd {
    Pressure {
        model: String,
        potential: String,
        #[command(flatten)]
        tol: TolArg,
    },
    State {
        model: String,
        potential: String,
        #[command(flatten)]
        tol: TolArg,
    },
    Escape {
        model: String,
        scenario: String,
        #[command(flatten)]
        tol: TolArg,
    },
    Nullclass {
        model: String,
        scenario: String,
        #[command(flatten)]
        tol: TolArg,
    },
    /// Homological fullness at a horizon.
    Full {
        model: String,
        #[arg(long = "max-len", alias = "horizon")]
        max_len: usize,
    },
}

#[derive(Subcommand, Debug)]
enum SectionCmd {
    Check {
        model: String,
        weights: String,
    },
    Minlink {
        model: String,
        gamma: String,
        #[arg(long, alias = "max-len")]
        horizon: usize,
        #[arg(long)]
        base: Option<String>,
    },
    Verdict {
        model: String,
        gamma: String,
        #[arg(long, alias = "max-len")]
        horizon: usize,
        #[arg(long)]
        base: Option<String>,
    },
    Fried {
        model: String,
        u1: String,
        u2: String,
        k1: usize,
        k2: usize,
    },
    Separate {
        points: String,
    },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum BiWordDoc {
    Periodic(Vec<String>),
    Parts {
        left: Vec<String>,
        #[serde(default)]
        middle: Vec<String>,
        right: Vec<String>,
        #[serde(default)]
        start: i64,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EscapeScenario {
    potential: BTreeMap<String, f64>,
    gamma: Vec<String>,
    #[serde(rename = "U")]
    u: Vec<String>,
    #[serde(rename = "C1")]
    c1: f64,
    #[serde(rename = "C2")]
    c2: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NullClassScenario {
    plus: Vec<Vec<String>>,
    minus: Vec<Vec<String>>,
    base: BTreeMap<String, f64>,
    r: f64,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Caps the global thread pool from `SYMLINK_THREADS` when set.
pub fn configure_threads() {
    if let Some(n) = std::env::var("SYMLINK_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

pub fn run<I, T>(argv: I) -> CliOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    CliOutcome { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => CliOutcome { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    match dispatch(&cli.command) {
        Ok((code, report)) => {
            let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
            text.push('\n');
            match &cli.out {
                Some(path) => match std::fs::write(path, &text) {
                    Ok(()) => CliOutcome { code, stdout: String::new(), stderr: String::new() },
                    Err(e) => CliOutcome {
                        code: EXIT_USAGE,
                        stdout: String::new(),
                        stderr: format!("error: cannot write {}: {e}\n", path.display()),
                    },
                },
                None => CliOutcome { code, stdout: text, stderr: String::new() },
            }
        }
        Err(e) => CliOutcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn read_arg(arg: &str) -> Result<String> {
    let t = arg.trim_start();
    if t.starts_with('[') || t.starts_with('{') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("cannot read {arg}: {e}")))
    }
}

fn parse_arg<T: DeserializeOwned>(arg: &str) -> Result<T> {
    Ok(serde_json::from_str(&read_arg(arg)?)?)
}

fn load_doc(arg: &str) -> Result<ModelDocument> {
    parse_arg(arg)
}

fn load(arg: &str) -> Result<MarkovModel> {
    MarkovModel::from_document(&load_doc(arg)?)
}

/// A word as a JSON name list, a file holding one, or a compact string of one-character names.
fn word_names(arg: &str) -> Result<Vec<String>> {
    let t = arg.trim_start();
    if t.starts_with('[') || std::path::Path::new(arg).is_file() {
        parse_arg(arg)
    } else {
        Ok(arg.chars().map(String::from).collect())
    }
}

fn load_word(model: &MarkovModel, arg: &str) -> Result<CyclicWord> {
    model.parse_word(&word_names(arg)?)
}

fn load_biword(model: &MarkovModel, arg: &str) -> Result<BiWord> {
    let doc: BiWordDoc = if arg.trim_start().starts_with('{') || std::path::Path::new(arg).is_file() {
        parse_arg(arg)?
    } else {
        BiWordDoc::Periodic(word_names(arg)?)
    };
    let letters = |names: &[String]| names.iter().map(|n| model.letter(n)).collect::<Result<Vec<Letter>>>();
    let w = match doc {
        BiWordDoc::Periodic(names) => BiWord::periodic(&model.parse_word(&names)?),
        BiWordDoc::Parts { left, middle, right, start } => BiWord::with_start(
            CyclicWord::new(letters(&left)?)?,
            letters(&middle)?,
            CyclicWord::new(letters(&right)?)?,
            start,
        ),
    };
    w.check_in(model)?;
    Ok(w)
}

fn load_measure(model: &MarkovModel, arg: &str) -> Result<SignedMeasure> {
    let terms: Vec<MeasureTerm> = parse_arg(arg)?;
    SignedMeasure::from_terms(model, &terms)
}

fn load_base(model: &MarkovModel, arg: &Option<String>) -> Result<BaseLinkTable> {
    match arg {
        Some(path) => {
            let entries: Vec<BaseLinkEntry> = parse_arg(path)?;
            BaseLinkTable::from_entries(model, &entries)
        }
        None => Ok(model.base_link().cloned().unwrap_or_default()),
    }
}

fn measure_json(model: &MarkovModel, m: &SignedMeasure) -> Value {
    serde_json::to_value(m.to_terms(model)).expect("terms serialize")
}

fn report(command: &str, config: Value, result: Value) -> Value {
    json!({ "command": command, "config": config, "result": result })
}

fn with_certificate(mut r: Value, cert: &Certificate) -> Value {
    r["certificate"] = serde_json::to_value(cert).expect("certificate serializes");
    r
}

fn pressure_json(p: &PressureReport) -> Value {
    json!({
        "pressure": p.pressure,
        "spectral_radius": p.spectral_radius,
        "right_residual": p.right_residual,
        "left_residual": p.left_residual,
        "iterations": p.iterations,
    })
}

fn link_json(model: &MarkovModel, v: &LinkValue) -> Value {
    json!({
        "value": format_q(&v.value),
        "base_term": format_q(&v.base_term),
        "combinatorial_only": v.combinatorial_only,
        "stage_breakdown": v.stage_breakdown.iter().map(|s| json!({
            "cuboid": model.name(s.cuboid),
            "value": format_q(&s.value),
        })).collect::<Vec<_>>(),
        "staging": STAGING_NOTE,
    })
}

fn min_link_json(model: &MarkovModel, r: &MinLinkResult) -> Value {
    json!({
        "status": r.status.as_str(),
        "value": r.value.as_ref().map(format_q),
        "horizon": r.horizon,
        "argmin": r.argmin.as_ref().map(|m| measure_json(model, m)),
        "weights": r.weights.iter().map(|(u, c)| json!({"word": model.word_names(u), "coeff": format_q(c)})).collect::<Vec<_>>(),
        "orbits": r.orbits.iter().map(|o| json!({
            "word": model.word_names(&o.word),
            "link": format_q(&o.link),
            "class": o.class.to_strings(),
        })).collect::<Vec<_>>(),
        "excluded_nonorientable": word_list(model, &r.excluded),
    })
}

type Handled = Result<(i32, Value)>;

fn dispatch(cmd: &Command) -> Handled {
    match cmd {
        Command::Validate { model } => {
            let doc = load_doc(model)?;
            let rep = validate(&doc);
            let code = if rep.all_passed() { EXIT_OK } else { EXIT_USAGE };
            Ok((
                code,
                report(
                    "validate",
                    json!({"model": model}),
                    json!({"all_passed": rep.all_passed(), "checks": rep.checks}),
                ),
            ))
        }
        Command::Compare { model, w, x, axis } => {
            let m = load(model)?;
            let (a, b) = (load_biword(&m, w)?, load_biword(&m, x)?);
            let ax = match axis {
                AxisArg::Vertical => Axis::Vertical,
                AxisArg::Horizontal => Axis::Horizontal,
            };
            let ord = compare(&m, &a, &b, ax)?;
            let axis_name = match axis {
                AxisArg::Vertical => "vertical",
                AxisArg::Horizontal => "horizontal",
            };
            Ok((
                EXIT_OK,
                report(
                    "compare",
                    json!({"model": model, "w": w, "x": x, "axis": axis_name}),
                    json!({"ordering": ord.as_str()}),
                ),
            ))
        }
        Command::Word(WordCmd::Primitive { u, model }) => {
            let names = word_names(u)?;
            let (root, exponent) = match model {
                Some(path) => {
                    let m = load(path)?;
                    let (r, e) = m.parse_word(&names)?.primitive_decompose();
                    (m.word_names(&r), e)
                }
                None => {
                    let mut alphabet: Vec<&String> = names.iter().collect();
                    alphabet.sort();
                    alphabet.dedup();
                    let ix: Vec<usize> =
                        names.iter().map(|n| alphabet.binary_search(&n).expect("name is listed")).collect();
                    let (r, e) = CyclicWord::from_indices(&ix)?.primitive_decompose();
                    (r.letters().iter().map(|l| alphabet[l.0].clone()).collect(), e)
                }
            };
            Ok((
                EXIT_OK,
                report(
                    "word primitive",
                    json!({"u": u, "model": model}),
                    json!({"root": root, "exponent": exponent, "primitive": exponent == 1}),
                ),
            ))
        }
        Command::Measure(op) => measure(op),
        Command::Link(op) => link(op),
        Command::Gibbs(op) => gibbs(op),
        Command::Section(op) => section(op),
        Command::Verify { certificate } => {
            let v: Value = parse_arg(certificate)?;
            let body = match (v.get("kind"), v.get("certificate")) {
                (None, Some(inner)) => inner.clone(),
                _ => v,
            };
            let cert: Certificate = serde_json::from_value(body)?;
            let kind = serde_json::to_value(&cert).expect("certificate serializes")["kind"].clone();
            let out = verify(&cert)?;
            let code = if out.valid { EXIT_OK } else { EXIT_NEGATIVE };
            Ok((
                code,
                report(
                    "verify",
                    json!({"certificate": certificate}),
                    json!({"kind": kind, "valid": out.valid, "failures": out.failures}),
                ),
            ))
        }
    }
}

fn measure(op: &MeasureCmd) -> Handled {
    match op {
        MeasureCmd::Reduce { model, measure, cuboid } => {
            let m = load(model)?;
            let nu = load_measure(&m, measure)?;
            let out = match cuboid {
                Some(c) => reduce(&m, m.letter(c)?, &nu),
                None => reduce_all(&m, &nu),
            };
            Ok((
                EXIT_OK,
                report(
                    "measure reduce",
                    json!({"model": model, "measure": measure, "cuboid": cuboid}),
                    json!({"measure": measure_json(&m, &out), "total_mass": format_q(&out.total_mass())}),
                ),
            ))
        }
        MeasureCmd::Class { model, measure } => {
            let m = load(model)?;
            let nu = load_measure(&m, measure)?;
            let c = homology_class(&m, &nu);
            Ok((
                EXIT_OK,
                report(
                    "measure class",
                    json!({"model": model, "measure": measure}),
                    json!({"class": c.to_strings(), "null_class": c.is_zero()}),
                ),
            ))
        }
        MeasureCmd::Flow { model, measure } => {
            let m = load(model)?;
            let nu = load_measure(&m, measure)?;
            let f = edge_flow(&m, &nu);
            Ok((
                EXIT_OK,
                report(
                    "measure flow",
                    json!({"model": model, "measure": measure}),
                    json!({"flow": f.to_map(&m), "total": format_q(&f.total()), "conserved": f.is_conserved(&m)}),
                ),
            ))
        }
    }
}

fn link(op: &LinkCmd) -> Handled {
    match op {
        LinkCmd::Pair { model, nu, mu, cuboid } => {
            let m = load(model)?;
            let (a, b) = (load_measure(&m, nu)?, load_measure(&m, mu)?);
            let value = linking_pairing(&m, m.letter(cuboid)?, &a, &b)?;
            Ok((
                EXIT_OK,
                report(
                    "link pair",
                    json!({"model": model, "nu": nu, "mu": mu, "cuboid": cuboid}),
                    json!({"value": format_q(&value), "mu_null_class": homology_class(&m, &b).is_zero()}),
                ),
            ))
        }
        LinkCmd::Full { model, nu, mu, base } => {
            let m = load(model)?;
            let (a, b) = (load_measure(&m, nu)?, load_measure(&m, mu)?);
            let table = load_base(&m, base)?;
            let v = link_full(&m, &a, &b, &table)?;
            Ok((
                EXIT_OK,
                report("link full", json!({"model": model, "nu": nu, "mu": mu, "base": base}), link_json(&m, &v)),
            ))
        }
        LinkCmd::Primes { model, cuboid, max_len } => {
            let m = load(model)?;
            let words = enumerate_prime_orbits(&m, m.letter(cuboid)?, *max_len);
            Ok((
                EXIT_OK,
                report(
                    "link primes",
                    json!({"model": model, "cuboid": cuboid, "max_len": max_len}),
                    json!({"orbits": word_list(&m, &words)}),
                ),
            ))
        }
    }
}

fn cfg(t: &TolArg) -> Result<GibbsConfig> {
    if t.tol.is_nan() || t.tol <= 0.0 {
        return Err(Error::Parse("--tol must be positive".into()));
    }
    Ok(GibbsConfig { tol: t.tol, ..GibbsConfig::default() })
}

fn gibbs(op: &GibbsCmd) -> Handled {
    match op {
        GibbsCmd::Pressure { model, potential, tol } => {
            let m = load(model)?;
            let pot = Potential::from_map(&m, &parse_arg(potential)?)?;
            let c = cfg(tol)?;
            let p = pressure_with(&m, &pot, &c)?;
            Ok((
                EXIT_OK,
                report(
                    "gibbs pressure",
                    json!({"model": model, "potential": potential, "tol": c.tol, "max_iter": c.max_iter}),
                    pressure_json(&p),
                ),
            ))
        }
        GibbsCmd::State { model, potential, tol } => {
            let m = load(model)?;
            let pot = Potential::from_map(&m, &parse_arg(potential)?)?;
            let c = cfg(tol)?;
            let st = equilibrium_state_with(&m, &pot, &c)?;
            let stationary: BTreeMap<&str, f64> =
                m.letters().map(|l| (m.name(l), st.measure.stationary[l.0])).collect();
            let per_edge = |v: &[f64]| -> BTreeMap<String, f64> {
                v.iter().enumerate().map(|(id, x)| (m.edge_key(id), *x)).collect()
            };
            Ok((
                EXIT_OK,
                report(
                    "gibbs state",
                    json!({"model": model, "potential": potential, "tol": c.tol, "max_iter": c.max_iter}),
                    json!({
                        "stationary": stationary,
                        "edge_prob": per_edge(&st.measure.edge_prob),
                        "edge_mass": per_edge(&st.measure.edge_masses(&m)),
                        "entropy": st.entropy,
                        "integral": st.measure.integral(&m, &pot),
                        "class": st.measure.homology_class(&m),
                        "pressure": pressure_json(&st.report),
                    }),
                ),
            ))
        }
        GibbsCmd::Escape { model, scenario, tol } => {
            let m = load(model)?;
            let sc: EscapeScenario = parse_arg(scenario)?;
            let pot = Potential::from_map(&m, &sc.potential)?;
            let gamma = m.parse_word(&sc.gamma)?;
            let set = sc.u.iter().map(|k| m.edge_by_key(k)).collect::<Result<BTreeSet<_>>>()?;
            let c = cfg(tol)?;
            let rep = escape_bound_check(&m, &pot, &gamma, &set, sc.c1, sc.c2, &c)?;
            let cert = Certificate::Escape {
                model: m.to_document(),
                potential: sc.potential.clone(),
                gamma: sc.gamma.clone(),
                u: set.iter().map(|&id| m.edge_key(id)).collect(),
                c1: sc.c1,
                c2: sc.c2,
                tol: c.tol,
                escape_mass: rep.escape_mass,
                bound: rep.bound,
                passed: rep.passed,
            };
            let code = if rep.passed { EXIT_OK } else { EXIT_NEGATIVE };
            let r = report(
                "gibbs escape",
                json!({"model": model, "scenario": scenario, "tol": c.tol}),
                json!({"escape_mass": rep.escape_mass, "h_top": rep.h_top, "bound": rep.bound, "passed": rep.passed}),
            );
            Ok((code, with_certificate(r, &cert)))
        }
        GibbsCmd::Nullclass { model, scenario, tol } => {
            let m = load(model)?;
            let sc: NullClassScenario = parse_arg(scenario)?;
            let plus = sc.plus.iter().map(|w| m.parse_word(w)).collect::<Result<Vec<_>>>()?;
            let minus = sc.minus.iter().map(|w| m.parse_word(w)).collect::<Result<Vec<_>>>()?;
            let base = Potential::from_map(&m, &sc.base)?;
            let c = cfg(tol)?;
            let res = null_class_potential(&m, &plus, &minus, &base, sc.r, &c)?;
            let cert = Certificate::NullClass {
                model: m.to_document(),
                plus: sc.plus.clone(),
                minus: sc.minus.clone(),
                base: sc.base.clone(),
                r: sc.r,
                tol: c.tol,
                x: res.x.clone(),
                residual: res.residual,
            };
            let r = report(
                "gibbs nullclass",
                json!({"model": model, "scenario": scenario, "tol": c.tol, "newton_max_iter": 200, "fd_step": 1e-6, "damping": 0.5}),
                json!({"x": res.x, "residual": res.residual, "class": res.class, "iterations": res.iterations, "method": res.method.as_str()}),
            );
            Ok((EXIT_OK, with_certificate(r, &cert)))
        }
        GibbsCmd::Full { model, max_len } => {
            let m = load(model)?;
            if *max_len == 0 {
                return Err(Error::Parse("--max-len must be at least 1".into()));
            }
            let rep = is_homologically_full(&m, *max_len);
            let cert = Certificate::HomologicallyFull {
                model: m.to_document(),
                horizon: *max_len,
                full: rep.full,
                cycles: word_list(&m, &rep.cycles),
                certificate: fullness_doc(&rep),
            };
            let code = if rep.full { EXIT_OK } else { EXIT_NEGATIVE };
            let r = report(
                "gibbs full",
                json!({"model": model, "max_len": max_len}),
                json!({"full": rep.full, "horizon": rep.horizon, "cycles": rep.cycles.len()}),
            );
            Ok((code, with_certificate(r, &cert)))
        }
    }
}

fn section(op: &SectionCmd) -> Handled {
    match op {
        SectionCmd::Check { model, weights } => {
            let m = load(model)?;
            let map: BTreeMap<String, String> = parse_arg(weights)?;
            let w = EdgeWeighting::from_map(&m, &map)?;
            let cert = cross_section(&m, &w);
            let code = match cert {
                SectionCertificate::Potential { .. } => EXIT_OK,
                SectionCertificate::Obstruction { .. } => EXIT_NEGATIVE,
            };
            let doc = section_doc(&m, &cert);
            let full =
                Certificate::CrossSection { model: m.to_document(), weights: w.to_map(&m), section: doc.clone() };
            let r = report(
                "section check",
                json!({"model": model, "weights": weights}),
                serde_json::to_value(&doc).expect("doc"),
            );
            Ok((code, with_certificate(r, &full)))
        }
        SectionCmd::Minlink { model, gamma, horizon, base } => {
            let m = load(model)?;
            let g = load_measure(&m, gamma)?;
            let table = load_base(&m, base)?;
            let res = min_link(&m, &g, &table, *horizon)?;
            let cert = Certificate::MinLink { model: m.to_document(), body: min_link_doc(&m, &g, &table, &res) };
            let r = report(
                "section minlink",
                json!({"model": model, "gamma": gamma, "horizon": horizon, "base": base}),
                min_link_json(&m, &res),
            );
            Ok((EXIT_OK, with_certificate(r, &cert)))
        }
        SectionCmd::Verdict { model, gamma, horizon, base } => {
            let m = load(model)?;
            let g = load_measure(&m, gamma)?;
            let table = load_base(&m, base)?;
            let rep = birkhoff_boundary_verdict(&m, &g, &table, *horizon)?;
            let cert = verdict_certificate(&m, &g, &table, &rep);
            let code = match rep.verdict {
                Verdict::PositiveAtHorizon => EXIT_OK,
                Verdict::Negative => EXIT_NEGATIVE,
            };
            let r = report(
                "section verdict",
                json!({"model": model, "gamma": gamma, "horizon": horizon, "base": base}),
                json!({
                    "verdict": rep.verdict.as_str(),
                    "vacuous": rep.vacuous,
                    "horizon": rep.horizon,
                    "value": rep.min_link.value.as_ref().map(format_q),
                    "witness": rep.witness.as_ref().map(|w| measure_json(&m, w)),
                    "combinatorial_only": table.is_default(),
                    "note": VERDICT_NOTE,
                }),
            );
            Ok((code, with_certificate(r, &cert)))
        }
        SectionCmd::Fried { model, u1, u2, k1, k2 } => {
            let m = load(model)?;
            let (a, b) = (load_word(&m, u1)?, load_word(&m, u2)?);
            let fb = fried_boundary(&m, &a, &b, *k1, *k2)?;
            let boundary: Vec<BoundaryTerm> =
                fb.cycle.terms.iter().map(|(w, k)| BoundaryTerm { word: m.word_names(w), multiplicity: *k }).collect();
            let class = fb.cycle.homology_class(&m);
            let cert = Certificate::FriedBoundary {
                model: m.to_document(),
                u1: m.word_names(&a),
                u2: m.word_names(&b),
                k1: *k1,
                k2: *k2,
                sign: fb.sign,
                w: m.word_names(&fb.w),
                boundary: boundary.clone(),
            };
            let r = report(
                "section fried",
                json!({"model": model, "u1": u1, "u2": u2, "k1": k1, "k2": k2}),
                json!({
                    "sign": fb.sign,
                    "w": m.word_names(&fb.w),
                    "w_primitive": fb.w.is_primitive(),
                    "boundary": boundary,
                    "class": class.to_strings(),
                }),
            );
            Ok((EXIT_OK, with_certificate(r, &cert)))
        }
        SectionCmd::Separate { points } => {
            let docs: Vec<PointDoc> = parse_arg(points)?;
            let pts = points_from_docs(&docs)?;
            let sep = separating_functional(&pts)?;
            let code = match sep {
                Separation::Functional { .. } => EXIT_OK,
                Separation::Rejected { .. } => EXIT_NEGATIVE,
            };
            let doc = separation_doc(&sep);
            let cert = Certificate::Separation { points: docs, result: doc.clone() };
            let r = report("section separate", json!({"points": points}), serde_json::to_value(&doc).expect("doc"));
            Ok((code, with_certificate(r, &cert)))
        }
    }
}
