//! Transition models: alphabet, ordered edges, homology labels, orientability data.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linking::BaseLinkTable;
use crate::rational::{format_q, parse_q, Q};
use crate::words::{CyclicWord, Letter};

/// JSON form of a model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub alphabet: Vec<String>,
    pub edges: Vec<EdgeDocument>,
    pub out_order: BTreeMap<String, Vec<String>>,
    pub in_order: BTreeMap<String, Vec<String>>,
    pub homology_dim: usize,
    #[serde(default)]
    pub nonorientable_boundary_orbits: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_link: Option<Vec<BaseLinkEntry>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDocument {
    pub from: String,
    pub to: String,
    pub homology: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseLinkEntry {
    pub u: Vec<String>,
    pub v: Vec<String>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub from: Letter,
    pub to: Letter,
    pub homology: Vec<Q>,
}

/// A validated transition model.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkovModel {
    names: Vec<String>,
    edges: Vec<Edge>,
    edge_index: Vec<Vec<Option<usize>>>,
    out_order: Vec<Vec<Letter>>,
    in_order: Vec<Vec<Letter>>,
    out_rank: Vec<Vec<usize>>,
    in_rank: Vec<Vec<usize>>,
    homology_dim: usize,
    nonorientable: BTreeSet<CyclicWord>,
    base_link: Option<BaseLinkTable>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    fn push(&mut self, name: &'static str, failure: Option<String>) {
        self.checks.push(Check { name, passed: failure.is_none(), detail: failure });
    }
}

/// Runs every invariant check on a document; never fails.
pub fn validate(doc: &ModelDocument) -> ValidationReport {
    let mut report = ValidationReport { checks: Vec::new() };
    let blocked = || Some("skipped: an earlier check failed".to_string());

    let mut seen = BTreeSet::new();
    let alpha = if doc.alphabet.is_empty() {
        Some("alphabet is empty".to_string())
    } else {
        doc.alphabet.iter().find_map(|a| {
            if a.is_empty() {
                Some("empty cuboid name".to_string())
            } else if !seen.insert(a.as_str()) {
                Some(format!("duplicate cuboid {a}"))
            } else {
                None
            }
        })
    };
    let alpha_ok = alpha.is_none();
    report.push("alphabet", alpha);

    let known = |s: &str| seen.contains(s);
    let edges_known = if !alpha_ok {
        blocked()
    } else {
        doc.edges.iter().find_map(|e| {
            [&e.from, &e.to]
                .into_iter()
                .find(|n| !known(n))
                .map(|n| format!("unknown cuboid {n} in edge {}->{}", e.from, e.to))
        })
    };
    let edges_ok = edges_known.is_none();
    report.push("edges_known", edges_known);

    let mut pairs = BTreeSet::new();
    let unique = doc
        .edges
        .iter()
        .find(|e| !pairs.insert((e.from.as_str(), e.to.as_str())))
        .map(|e| format!("duplicate edge {}->{}", e.from, e.to));
    let unique_ok = unique.is_none();
    report.push("edges_unique", unique);

    let structural = alpha_ok && edges_ok && unique_ok;
    let mut succ: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    let mut pred: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for e in &doc.edges {
        succ.entry(e.from.as_str()).or_default().insert(e.to.as_str());
        pred.entry(e.to.as_str()).or_default().insert(e.from.as_str());
    }
    for (name, order, nbrs) in [("out_order", &doc.out_order, &succ), ("in_order", &doc.in_order, &pred)] {
        let failure = if !structural { blocked() } else { check_order(name, &doc.alphabet, order, nbrs, &known) };
        report.push(name, failure);
    }

    let labels = doc.edges.iter().find_map(|e| {
        if e.homology.len() != doc.homology_dim {
            return Some(format!(
                "edge {}->{} has label of length {} (expected {})",
                e.from,
                e.to,
                e.homology.len(),
                doc.homology_dim
            ));
        }
        e.homology
            .iter()
            .find(|s| parse_q(s).is_err())
            .map(|s| format!("edge {}->{} has non-rational label entry {s:?}", e.from, e.to))
    });
    report.push("homology_labels", labels);

    let index: HashMap<&str, usize> = doc.alphabet.iter().enumerate().map(|(i, a)| (a.as_str(), i)).collect();
    let n = doc.alphabet.len();
    let adj: Vec<Vec<usize>> = if structural {
        (0..n)
            .map(|i| doc.edges.iter().filter(|e| index[e.from.as_str()] == i).map(|e| index[e.to.as_str()]).collect())
            .collect()
    } else {
        Vec::new()
    };
    let connected = if !structural {
        blocked()
    } else if strongly_connected(&adj) {
        None
    } else {
        Some("not strongly connected".to_string())
    };
    let connected_ok = connected.is_none();
    report.push("strongly_connected", connected);

    // A strongly connected graph is a single cycle exactly when |E| = |V|.
    let cycles = if !connected_ok {
        blocked()
    } else if doc.edges.len() > n {
        None
    } else {
        Some("transition graph is a single cycle".to_string())
    };
    report.push("two_cycles", cycles);

    let is_edge = |a: &str, b: &str| pairs.contains(&(a, b));
    let word_ok = |w: &[String]| -> Option<String> {
        if w.is_empty() {
            return Some("empty word".into());
        }
        if let Some(bad) = w.iter().find(|c| !known(c)) {
            return Some(format!("unknown cuboid {bad}"));
        }
        (0..w.len())
            .find(|&i| !is_edge(&w[i], &w[(i + 1) % w.len()]))
            .map(|i| format!("no edge {}->{}", w[i], w[(i + 1) % w.len()]))
    };
    let orbits = if !structural {
        blocked()
    } else {
        doc.nonorientable_boundary_orbits
            .iter()
            .find_map(|w| word_ok(w).map(|why| format!("orbit {}: {why}", w.join(""))))
    };
    report.push("nonorientable_orbits", orbits);

    let base = if !structural {
        blocked()
    } else {
        doc.base_link.as_ref().and_then(|entries| {
            let mut table: BTreeMap<(Vec<String>, Vec<String>), Q> = BTreeMap::new();
            for e in entries {
                for w in [&e.u, &e.v] {
                    if let Some(why) = word_ok(w) {
                        return Some(format!("base_link word {}: {why}", w.join("")));
                    }
                }
                let v = match parse_q(&e.value) {
                    Ok(v) => v,
                    Err(_) => return Some(format!("base_link value {:?} is not rational", e.value)),
                };
                let key = |a: &[String], b: &[String]| {
                    (canonical_names(a, &doc.alphabet, &index), canonical_names(b, &doc.alphabet, &index))
                };
                for k in [key(&e.u, &e.v), key(&e.v, &e.u)] {
                    if let Some(prev) = table.get(&k) {
                        if *prev != v {
                            return Some(format!("base_link not symmetric at ({}, {})", e.u.join(""), e.v.join("")));
                        }
                    }
                    table.insert(k, v.clone());
                }
            }
            None
        })
    };
    report.push("base_link", base);
    report
}

fn canonical_names(w: &[String], alphabet: &[String], index: &HashMap<&str, usize>) -> Vec<String> {
    let ix: Vec<usize> = w.iter().map(|c| index[c.as_str()]).collect();
    let cw = CyclicWord::from_indices(&ix).expect("nonempty").canonical();
    cw.letters().iter().map(|l| alphabet[l.0].clone()).collect()
}

fn check_order(
    name: &str,
    alphabet: &[String],
    order: &BTreeMap<String, Vec<String>>,
    nbrs: &BTreeMap<&str, BTreeSet<&str>>,
    known: &dyn Fn(&str) -> bool,
) -> Option<String> {
    if let Some(k) = order.keys().find(|k| !known(k)) {
        return Some(format!("{name} has unknown cuboid {k}"));
    }
    for c in alphabet {
        let empty = BTreeSet::new();
        let expect = nbrs.get(c.as_str()).unwrap_or(&empty);
        let listed = order.get(c).map(Vec::as_slice).unwrap_or(&[]);
        let mut once = BTreeSet::new();
        for d in listed {
            if !expect.contains(d.as_str()) {
                return Some(format!("{name} lists non-edge at {c}"));
            }
            if !once.insert(d.as_str()) {
                return Some(format!("{name} repeats {d} at {c}"));
            }
        }
        if once.len() != expect.len() {
            return Some(format!("{name} incomplete at {c}"));
        }
    }
    None
}

fn strongly_connected(adj: &[Vec<usize>]) -> bool {
    let n = adj.len();
    if n == 0 {
        return false;
    }
    let mut radj = vec![Vec::new(); n];
    for (a, out) in adj.iter().enumerate() {
        for &b in out {
            radj[b].push(a);
        }
    }
    let reach = |g: &[Vec<usize>]| {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(a) = queue.pop_front() {
            for &b in &g[a] {
                if !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach(adj) && reach(&radj)
}

/// Parses and validates a JSON model document.
pub fn load_model(text: &str) -> Result<MarkovModel> {
    let doc: ModelDocument = serde_json::from_str(text)?;
    MarkovModel::from_document(&doc)
}

impl MarkovModel {
    pub fn from_document(doc: &ModelDocument) -> Result<Self> {
        let report = validate(doc);
        if let Some(c) = report.first_failure() {
            return Err(Error::Validation(c.detail.clone().unwrap_or_else(|| c.name.to_string())));
        }
        let n = doc.alphabet.len();
        let index: HashMap<&str, Letter> =
            doc.alphabet.iter().enumerate().map(|(i, a)| (a.as_str(), Letter(i))).collect();
        let mut edges = Vec::with_capacity(doc.edges.len());
        let mut edge_index = vec![vec![None; n]; n];
        for (id, e) in doc.edges.iter().enumerate() {
            let (from, to) = (index[e.from.as_str()], index[e.to.as_str()]);
            let homology = e.homology.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>()?;
            edge_index[from.0][to.0] = Some(id);
            edges.push(Edge { from, to, homology });
        }
        let order_of = |m: &BTreeMap<String, Vec<String>>| -> Vec<Vec<Letter>> {
            doc.alphabet
                .iter()
                .map(|c| m.get(c).map(|l| l.iter().map(|d| index[d.as_str()]).collect()).unwrap_or_default())
                .collect()
        };
        let out_order = order_of(&doc.out_order);
        let in_order = order_of(&doc.in_order);
        let rank_of = |orders: &[Vec<Letter>]| -> Vec<Vec<usize>> {
            orders
                .iter()
                .map(|o| {
                    let mut r = vec![usize::MAX; n];
                    for (pos, d) in o.iter().enumerate() {
                        r[d.0] = pos;
                    }
                    r
                })
                .collect()
        };
        let mut model = MarkovModel {
            names: doc.alphabet.clone(),
            out_rank: rank_of(&out_order),
            in_rank: rank_of(&in_order),
            edges,
            edge_index,
            out_order,
            in_order,
            homology_dim: doc.homology_dim,
            nonorientable: BTreeSet::new(),
            base_link: None,
        };
        for w in &doc.nonorientable_boundary_orbits {
            let cw = model.parse_word(w)?;
            model.nonorientable.insert(cw.canonical_root());
        }
        if let Some(entries) = &doc.base_link {
            model.base_link = Some(BaseLinkTable::from_entries(&model, entries)?);
        }
        Ok(model)
    }

    /// A model whose successor and predecessor orders follow the alphabet.
    pub fn with_default_orders(names: &[&str], edges: &[(usize, usize, Vec<Q>)], homology_dim: usize) -> Result<Self> {
        let mut out_order = BTreeMap::new();
        let mut in_order = BTreeMap::new();
        for (i, c) in names.iter().enumerate() {
            let mut succ: Vec<usize> = edges.iter().filter(|e| e.0 == i).map(|e| e.1).collect();
            let mut pred: Vec<usize> = edges.iter().filter(|e| e.1 == i).map(|e| e.0).collect();
            succ.sort_unstable();
            pred.sort_unstable();
            out_order.insert(c.to_string(), succ.iter().map(|&d| names[d].to_string()).collect());
            in_order.insert(c.to_string(), pred.iter().map(|&d| names[d].to_string()).collect());
        }
        let doc = ModelDocument {
            alphabet: names.iter().map(|s| s.to_string()).collect(),
            edges: edges
                .iter()
                .map(|(a, b, h)| EdgeDocument {
                    from: names[*a].to_string(),
                    to: names[*b].to_string(),
                    homology: h.iter().map(format_q).collect(),
                })
                .collect(),
            out_order,
            in_order,
            homology_dim,
            nonorientable_boundary_orbits: Vec::new(),
            base_link: None,
        };
        Self::from_document(&doc)
    }

    pub fn to_document(&self) -> ModelDocument {
        let order_map = |orders: &[Vec<Letter>]| -> BTreeMap<String, Vec<String>> {
            orders
                .iter()
                .enumerate()
                .map(|(c, o)| (self.names[c].clone(), o.iter().map(|&d| self.name(d).to_string()).collect()))
                .collect()
        };
        ModelDocument {
            alphabet: self.names.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDocument {
                    from: self.name(e.from).to_string(),
                    to: self.name(e.to).to_string(),
                    homology: e.homology.iter().map(format_q).collect(),
                })
                .collect(),
            out_order: order_map(&self.out_order),
            in_order: order_map(&self.in_order),
            homology_dim: self.homology_dim,
            nonorientable_boundary_orbits: self.nonorientable.iter().map(|w| self.word_names(w)).collect(),
            base_link: self.base_link.as_ref().map(|t| t.to_entries(self)),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("model serializes")
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.names.len()).map(Letter)
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.names[l.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(Letter)
            .ok_or_else(|| Error::InvalidWord(format!("unknown cuboid {name}")))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_id(&self, from: Letter, to: Letter) -> Option<usize> {
        self.edge_index[from.0][to.0]
    }

    /// Successors in alphabet order.
    pub fn successors(&self, c: Letter) -> Vec<Letter> {
        let mut s = self.out_order[c.0].clone();
        s.sort();
        s
    }

    pub fn out_order(&self, c: Letter) -> &[Letter] {
        &self.out_order[c.0]
    }

    pub fn in_order(&self, c: Letter) -> &[Letter] {
        &self.in_order[c.0]
    }

    /// Position of `d` in the successor order of `c`.
    pub fn out_rank(&self, c: Letter, d: Letter) -> usize {
        self.out_rank[c.0][d.0]
    }

    /// Position of `b` in the predecessor order of `c`.
    pub fn in_rank(&self, c: Letter, b: Letter) -> usize {
        self.in_rank[c.0][b.0]
    }

    pub fn homology_dim(&self) -> usize {
        self.homology_dim
    }

    pub fn nonorientable_orbits(&self) -> &BTreeSet<CyclicWord> {
        &self.nonorientable
    }

    pub fn base_link(&self) -> Option<&BaseLinkTable> {
        self.base_link.as_ref()
    }

    /// Parses a word given by cuboid names and checks it is a cyclic itinerary.
    pub fn parse_word<S: AsRef<str>>(&self, names: &[S]) -> Result<CyclicWord> {
        let letters = names.iter().map(|n| self.letter(n.as_ref())).collect::<Result<Vec<_>>>()?;
        let w = CyclicWord::new(letters)?;
        w.check_in(self)?;
        Ok(w)
    }

    /// Like [`parse_word`](Self::parse_word) but accepts a compact string when names are single characters.
    pub fn word(&self, compact: &str) -> Result<CyclicWord> {
        let names: Vec<String> = compact.chars().map(String::from).collect();
        self.parse_word(&names)
    }

    pub fn word_names(&self, w: &CyclicWord) -> Vec<String> {
        w.letters().iter().map(|&l| self.name(l).to_string()).collect()
    }

    pub fn format_word(&self, w: &CyclicWord) -> String {
        let sep = if self.names.iter().all(|n| n.chars().count() == 1) { "" } else { "." };
        self.word_names(w).join(sep)
    }

    pub fn edge_key(&self, id: usize) -> String {
        let e = &self.edges[id];
        format!("{}->{}", self.name(e.from), self.name(e.to))
    }

    pub fn edge_by_key(&self, key: &str) -> Result<usize> {
        let (a, b) =
            key.split_once("->").ok_or_else(|| Error::Parse(format!("edge key {key:?} is not of the form A->B")))?;
        let (a, b) = (self.letter(a.trim())?, self.letter(b.trim())?);
        self.edge_id(a, b).ok_or_else(|| Error::Parse(format!("{key} is not an edge")))
    }
}
