//! Independent oracles and random instance generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use symlink::linking::BaseLinkTable;
use symlink::markov_model::BaseLinkEntry;
use symlink::markov_model::{EdgeDocument, ModelDocument};
use symlink::measures::{homology_class, is_prime_word, SignedMeasure};
use symlink::words::primitive_cyclic_words;
use symlink::words::{Axis, BiWord, CyclicWord, Letter, WordOrdering};
use symlink::{MarkovModel, Q};

pub const NAMES: [&str; 8] = ["A", "B", "C", "D", "E", "F", "G", "H"];

pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

pub fn corpus(name: &str) -> String {
    format!("{}/corpus/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// Strongly connected model: a Hamiltonian cycle plus random extra edges, out-degree at most `max_out`.
pub fn random_model<R: Rng>(rng: &mut R, n: usize, max_out: usize, dim: usize) -> MarkovModel {
    assert!(n >= 2 && max_out >= 2);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for i in 0..n {
        succ[perm[i]].insert(perm[(i + 1) % n]);
    }
    let extra = rng.gen_range(1..=n.max(2));
    for _ in 0..extra * 2 {
        let a = rng.gen_range(0..n);
        if succ[a].len() < max_out {
            succ[a].insert(rng.gen_range(0..n));
        }
    }
    if succ.iter().map(|s| s.len()).sum::<usize>() == n {
        let a = rng.gen_range(0..n);
        let b = (0..n).find(|b| !succ[a].contains(b)).unwrap();
        succ[a].insert(b);
    }
    let mut edges = Vec::new();
    let mut out_order = BTreeMap::new();
    let mut preds: Vec<Vec<String>> = vec![Vec::new(); n];
    for (a, s) in succ.iter().enumerate() {
        let mut order: Vec<String> = s.iter().map(|&b| NAMES[b].to_string()).collect();
        order.shuffle(rng);
        out_order.insert(NAMES[a].to_string(), order);
        for &b in s {
            preds[b].push(NAMES[a].to_string());
            let homology = (0..dim).map(|_| rng.gen_range(-2i64..=2).to_string()).collect();
            edges.push(EdgeDocument { from: NAMES[a].into(), to: NAMES[b].into(), homology });
        }
    }
    let mut in_order = BTreeMap::new();
    for (b, mut p) in preds.into_iter().enumerate() {
        p.shuffle(rng);
        in_order.insert(NAMES[b].to_string(), p);
    }
    let doc = ModelDocument {
        alphabet: NAMES[..n].iter().map(|s| s.to_string()).collect(),
        edges,
        out_order,
        in_order,
        homology_dim: dim,
        nonorientable_boundary_orbits: Vec::new(),
        base_link: None,
    };
    MarkovModel::from_document(&doc).expect("generated model is valid")
}

/// Random admissible closed path of exactly `len` letters, if the walk closes up.
pub fn random_cycle<R: Rng>(rng: &mut R, m: &MarkovModel, len: usize, tries: usize) -> Option<CyclicWord> {
    for _ in 0..tries {
        let mut w = vec![Letter(rng.gen_range(0..m.size()))];
        while w.len() < len {
            let s = m.successors(*w.last().unwrap());
            w.push(*s.choose(rng).unwrap());
        }
        if m.edge_id(*w.last().unwrap(), w[0]).is_some() {
            return Some(CyclicWord::new(w).unwrap());
        }
    }
    None
}

// ---- words ----

/// Smallest period by trying every divisor.
pub fn brute_period(u: &[Letter]) -> usize {
    let n = u.len();
    (1..=n).find(|&d| n.is_multiple_of(d) && (0..n).all(|i| u[i] == u[i % d])).unwrap()
}

/// Lexicographically least rotation by listing all rotations.
pub fn brute_canonical(u: &[Letter]) -> Vec<Letter> {
    (0..u.len()).map(|k| [&u[k..], &u[..k]].concat()).min().unwrap()
}

/// Every letter sequence of exactly `len` over `k` letters (no admissibility check).
pub fn all_sequences(k: usize, len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|w| (0..k).map(move |l| [w.clone(), vec![Letter(l)]].concat())).collect();
    }
    out
}

/// Closed admissible sequences of length `len`, every rotation listed.
pub fn closed_paths(m: &MarkovModel, len: usize) -> Vec<Vec<Letter>> {
    all_sequences(m.size(), len)
        .into_iter()
        .filter(|w| (0..len).all(|i| m.edge_id(w[i], w[(i + 1) % len]).is_some()))
        .collect()
}

/// Distinct canonical primitive words of length at most `max_len`.
pub fn brute_primitive_words(m: &MarkovModel, max_len: usize) -> BTreeSet<Vec<Letter>> {
    (1..=max_len)
        .flat_map(|n| closed_paths(m, n))
        .filter(|w| brute_period(w) == w.len())
        .map(|w| brute_canonical(&w))
        .collect()
}

/// Letters of `w` at positions `lo..hi`, read straight from the window definition.
pub fn window(w: &BiWord, lo: i64, hi: i64) -> Vec<Letter> {
    let (l, mid, r, s) = (w.left().letters(), w.middle(), w.right().letters(), w.start());
    let e = s + mid.len() as i64;
    (lo..hi)
        .map(|i| {
            if i < s {
                l[(i - s).rem_euclid(l.len() as i64) as usize]
            } else if i < e {
                mid[(i - s) as usize]
            } else {
                r[(i - e).rem_euclid(r.len() as i64) as usize]
            }
        })
        .collect()
}

pub const REACH: i64 = 240;

/// First-disagreement scan over a long fixed window.
pub fn oracle_compare(m: &MarkovModel, w: &BiWord, x: &BiWord, axis: Axis) -> WordOrdering {
    let (a, b) = (window(w, -REACH, REACH + 1), window(x, -REACH, REACH + 1));
    let at = |v: &[Letter], i: i64| v[(i + REACH) as usize];
    if at(&a, 0) != at(&b, 0) {
        return WordOrdering::Incomparable;
    }
    let rank = |order: &[Letter], l: Letter| order.iter().position(|&o| o == l).unwrap();
    let indices: Vec<i64> = match axis {
        Axis::Vertical => (1..=REACH).collect(),
        Axis::Horizontal => (1..=REACH).map(|k| -k).collect(),
    };
    for k in indices {
        let (p, q) = (at(&a, k), at(&b, k));
        if p != q {
            let less = match axis {
                Axis::Vertical => {
                    let c = at(&a, k - 1);
                    rank(m.out_order(c), p) < rank(m.out_order(c), q)
                }
                Axis::Horizontal => {
                    let c = at(&a, k + 1);
                    rank(m.in_order(c), p) < rank(m.in_order(c), q)
                }
            };
            return if less { WordOrdering::Less } else { WordOrdering::Greater };
        }
    }
    WordOrdering::Equal
}

/// Both region memberships of the linking function, evaluated separately.
pub fn oracle_regions(m: &MarkovModel, r: Letter, w: &BiWord, x: &BiWord) -> (bool, bool) {
    let ahead = window(w, 0, REACH);
    let Some(n) = (1..ahead.len()).find(|&i| ahead[i] == r) else {
        return (false, false);
    };
    let u = CyclicWord::new(ahead[..n].to_vec()).unwrap();
    let ubar = BiWord::periodic(&u);
    if oracle_compare(m, &ubar, x, Axis::Horizontal) != WordOrdering::Less {
        return (false, false);
    }
    let s = w.shift(n as i64);
    let v = |a: &BiWord, b: &BiWord| oracle_compare(m, a, b, Axis::Vertical);
    let le = |a, b| matches!(v(a, b), WordOrdering::Less | WordOrdering::Equal);
    let lt = |a, b| v(a, b) == WordOrdering::Less;
    (le(&s, x) && lt(x, w), le(w, x) && lt(x, &s))
}

pub fn oracle_linking(m: &MarkovModel, r: Letter, w: &BiWord, x: &BiWord) -> i8 {
    match oracle_regions(m, r, w, x) {
        (true, false) => 1,
        (false, true) => -1,
        (false, false) => 0,
        (true, true) => panic!("regions overlap"),
    }
}

/// Sum of the linking function over every aligned rotation pair.
pub fn oracle_pairing(m: &MarkovModel, r: Letter, nu: &SignedMeasure, mu: &SignedMeasure) -> Q {
    let spots = |s: &SignedMeasure| -> Vec<(BiWord, Q)> {
        let mut out = Vec::new();
        for (u, c) in s.terms() {
            for k in 0..u.len() {
                if u.letters()[k] == r {
                    out.push((BiWord::periodic(&u.rotate(k)), c.clone()));
                }
            }
        }
        out
    };
    let xs = spots(mu);
    let mut total = Q::zero();
    for (w, a) in spots(nu) {
        for (x, b) in &xs {
            total += Q::from_integer(oracle_linking(m, r, &w, x).into()) * &a * b;
        }
    }
    total
}

// ---- measures ----

/// Cut a word before every visit to `r`; each piece gets the full coefficient.
pub fn oracle_split(u: &[Letter], r: Letter) -> Vec<Vec<Letter>> {
    let n = u.len();
    let hits: Vec<usize> = (0..n).filter(|&i| u[i] == r).collect();
    if hits.len() < 2 {
        return vec![u.to_vec()];
    }
    (0..hits.len())
        .map(|j| {
            let (a, b) = (hits[j], hits[(j + 1) % hits.len()]);
            let len = (b + n - a - 1) % n + 1;
            (0..len).map(|t| u[(a + t) % n]).collect()
        })
        .collect()
}

/// Transition counts weighted by coefficients.
pub fn oracle_flow(m: &MarkovModel, nu: &SignedMeasure) -> BTreeMap<(usize, usize), Q> {
    let mut f = BTreeMap::new();
    for (u, c) in nu.terms() {
        let l = u.letters();
        for i in 0..l.len() {
            *f.entry((l[i].0, l[(i + 1) % l.len()].0)).or_insert_with(Q::zero) += c;
        }
    }
    f.retain(|_, v| !v.is_zero());
    let _ = m;
    f
}

pub fn word_class(m: &MarkovModel, u: &[Letter]) -> Vec<Q> {
    let mut c = vec![Q::zero(); m.homology_dim()];
    for i in 0..u.len() {
        let id = m.edge_id(u[i], u[(i + 1) % u.len()]).unwrap();
        for (k, h) in m.edges()[id].homology.iter().enumerate() {
            c[k] += h;
        }
    }
    c
}

// ---- graphs ----

/// Simple directed cycles, each listed once starting from its least vertex.
pub fn simple_cycles(m: &MarkovModel) -> Vec<Vec<usize>> {
    fn go(m: &MarkovModel, s: usize, path: &mut Vec<usize>, seen: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let v = *path.last().unwrap();
        for t in m.successors(Letter(v)) {
            if t.0 == s {
                out.push(path.clone());
            } else if t.0 > s && !seen[t.0] {
                seen[t.0] = true;
                path.push(t.0);
                go(m, s, path, seen, out);
                path.pop();
                seen[t.0] = false;
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..m.size() {
        let mut seen = vec![false; m.size()];
        seen[s] = true;
        go(m, s, &mut vec![s], &mut seen, &mut out);
    }
    out
}

pub fn cycle_weight(m: &MarkovModel, w: &[Q], c: &[usize]) -> Q {
    (0..c.len()).map(|i| w[m.edge_id(Letter(c[i]), Letter(c[(i + 1) % c.len()])).unwrap()].clone()).sum()
}

// ---- exact linear algebra ----

/// Unique solution of `a x = b`, or None when singular or inconsistent.
pub fn solve_unique(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Q>> = a.iter().zip(b).map(|(r, v)| [r.clone(), vec![v.clone()]].concat()).collect();
    let mut piv_row = 0;
    for c in 0..cols {
        let p = (piv_row..rows).find(|&r| !m[r][c].is_zero())?;
        m.swap(piv_row, p);
        let inv = Q::one() / &m[piv_row][c];
        for v in m[piv_row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows {
            if r != piv_row && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pivot = m[piv_row].clone();
                for (v, p) in m[r].iter_mut().zip(&pivot) {
                    *v -= &f * p;
                }
            }
        }
        piv_row += 1;
    }
    if m[piv_row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    Some((0..cols).map(|c| m[c][cols].clone()).collect())
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Minimum of `Σ c_i cost_i` over `c ≥ 0, Σ c_i = 1, Σ c_i cls_i = 0` by visiting basic solutions.
pub fn vertex_min(cost: &[Q], cls: &[Vec<Q>]) -> Option<Q> {
    let n = cost.len();
    let d = cls.first().map_or(0, |c| c.len());
    let mut best: Option<Q> = None;
    for k in 1..=(d + 1).min(n) {
        for s in subsets(n, k) {
            let mut a: Vec<Vec<Q>> = vec![s.iter().map(|_| Q::one()).collect()];
            let mut b = vec![Q::one()];
            a.extend((0..d).map(|j| s.iter().map(|&i| cls[i][j].clone()).collect()));
            b.resize(d + 1, Q::zero());
            if let Some(x) = solve_unique(&a, &b) {
                if x.iter().all(|v| !v.is_negative()) {
                    let val: Q = s.iter().zip(&x).map(|(&i, v)| &cost[i] * v).sum();
                    if best.as_ref().is_none_or(|b| &val < b) {
                        best = Some(val);
                    }
                }
            }
        }
    }
    best
}

/// Whether the hull of `(x, t)` points meets `{0} × (−∞, 0]`.
pub fn hull_hits_negative_axis(points: &[(Vec<Q>, Q)]) -> bool {
    let n = points.len();
    let d = points[0].0.len();
    for k in 1..=(d + 1).min(n) {
        for s in subsets(n, k) {
            let mut a: Vec<Vec<Q>> = vec![s.iter().map(|_| Q::one()).collect()];
            let mut b = vec![Q::one()];
            for j in 0..d {
                a.push(s.iter().map(|&i| points[i].0[j].clone()).collect());
                b.push(Q::zero());
            }
            if let Some(lam) = solve_unique(&a, &b) {
                let t: Q = s.iter().zip(&lam).map(|(&i, l)| &points[i].1 * l).sum();
                if lam.iter().all(|v| !v.is_negative()) && !t.is_positive() {
                    return true;
                }
            }
        }
    }
    false
}

// ---- two-state transfer matrix in closed form ----

/// Leading eigenvalue of `[[a, b], [c, d]]` with positive entries.
pub fn perron_2x2(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let tr = a + d;
    let det = a * d - b * c;
    (tr + (tr * tr - 4.0 * det).sqrt()) / 2.0
}

/// Edge masses `[AA, AB, BA, BB]` of the Gibbs measure of a full two-shift potential.
pub fn gibbs_masses_2x2(p: [f64; 4]) -> [f64; 4] {
    let [a, b, c, d] = p.map(f64::exp);
    let lam = perron_2x2(a, b, c, d);
    let r = [b, lam - a];
    let l = [c, lam - a];
    let z = lam * (l[0] * r[0] + l[1] * r[1]);
    [l[0] * a * r[0] / z, l[0] * b * r[1] / z, l[1] * c * r[0] / z, l[1] * d * r[1] / z]
}

pub fn ratio(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

// ---- command-line corpus ----

/// Every subcommand over the shipped fixtures, with the exit code each must produce.
pub fn corpus_invocations() -> Vec<(Vec<String>, i32)> {
    let c = |f: &str| corpus(f);
    let raw: Vec<(Vec<String>, i32)> = vec![
        (vec!["validate".into(), c("FULL2.json")], 0),
        (vec!["validate".into(), c("THREE.json")], 0),
        (vec!["validate".into(), c("FULL2_broken.json")], 2),
        (vec!["compare".into(), c("FULL2.json"), "AB".into(), "ABB".into(), "--axis".into(), "vertical".into()], 0),
        (vec!["compare".into(), c("THREE.json"), "AB".into(), "ACB".into(), "--axis".into(), "horizontal".into()], 0),
        (vec!["word".into(), "primitive".into(), "ABABAB".into()], 0),
        (vec!["word".into(), "primitive".into(), "ABABB".into(), "--model".into(), c("FULL2.json")], 0),
        (
            vec!["measure".into(), "reduce".into(), c("FULL2.json"), c("nu_ABABB.json"), "--cuboid".into(), "A".into()],
            0,
        ),
        (vec!["measure".into(), "reduce".into(), c("FULL2.json"), c("nu_AABB.json")], 0),
        (vec!["measure".into(), "class".into(), c("FULL2.json"), c("null_A_B.json")], 0),
        (vec!["measure".into(), "flow".into(), c("FULL2.json"), c("nu_ABABB.json")], 0),
        (
            vec![
                "link".into(),
                "pair".into(),
                c("FULL2.json"),
                "--cuboid".into(),
                "A".into(),
                c("nu_ABABB.json"),
                c("nu_ABABB.json"),
            ],
            0,
        ),
        (
            vec![
                "link".into(),
                "pair".into(),
                c("FULL2.json"),
                "--cuboid".into(),
                "A".into(),
                c("nu_ABABB.json"),
                c("mu_AB.json"),
            ],
            0,
        ),
        (vec!["link".into(), "full".into(), c("FULL2_unlabelled.json"), c("nu_ABABB.json"), c("mu_AB.json")], 0),
        (
            vec![
                "link".into(),
                "full".into(),
                c("FULL2.json"),
                c("null_A_B.json"),
                c("null_A_B.json"),
                "--base".into(),
                c("base_full2.json"),
            ],
            0,
        ),
        (
            vec![
                "link".into(),
                "primes".into(),
                c("THREE.json"),
                "--cuboid".into(),
                "B".into(),
                "--max-len".into(),
                "4".into(),
            ],
            0,
        ),
        (vec!["gibbs".into(), "pressure".into(), c("FULL2.json"), c("pot_zero.json")], 0),
        (vec!["gibbs".into(), "pressure".into(), c("FULL2.json"), c("pot_AA.json"), "--tol".into(), "1e-13".into()], 0),
        (vec!["gibbs".into(), "state".into(), c("FULL2.json"), c("pot_AA.json")], 0),
        (vec!["gibbs".into(), "escape".into(), c("FULL2.json"), c("escape.json")], 0),
        (vec!["gibbs".into(), "escape".into(), c("FULL2.json"), c("escape_bad.json")], 2),
        (vec!["gibbs".into(), "nullclass".into(), c("FULL2.json"), c("nullclass_symmetric.json")], 0),
        (vec!["gibbs".into(), "nullclass".into(), c("FULL2.json"), c("nullclass_asymmetric.json")], 0),
        (vec!["gibbs".into(), "full".into(), c("THREE.json"), "--max-len".into(), "3".into()], 0),
        (vec!["section".into(), "check".into(), c("FULL2.json"), c("weights_positive.json")], 0),
        (vec!["section".into(), "check".into(), c("FULL2.json"), c("weights_obstruction.json")], 1),
        (
            vec![
                "section".into(),
                "minlink".into(),
                c("THREE.json"),
                c("gamma_three.json"),
                "--horizon".into(),
                "4".into(),
            ],
            0,
        ),
        (
            vec![
                "section".into(),
                "verdict".into(),
                c("FULL2.json"),
                c("gamma_AB.json"),
                "--horizon".into(),
                "3".into(),
            ],
            1,
        ),
        (
            vec![
                "section".into(),
                "verdict".into(),
                c("FULL2.json"),
                c("null_A_B.json"),
                "--horizon".into(),
                "2".into(),
                "--base".into(),
                c("base_full2.json"),
            ],
            0,
        ),
        (vec!["section".into(), "fried".into(), c("FULL2.json"), "AB".into(), "ABB".into(), "2".into(), "2".into()], 0),
        (vec!["section".into(), "separate".into(), c("points_separated.json")], 0),
        (vec!["section".into(), "separate".into(), c("points_rejected.json")], 1),
    ];
    raw
}

// ---- linking-LP instances ----

pub fn random_base<R: Rng>(rng: &mut R, m: &MarkovModel, horizon: usize) -> BaseLinkTable {
    let primes: Vec<CyclicWord> = primitive_cyclic_words(m, m.size()).into_iter().filter(is_prime_word).collect();
    let all = primitive_cyclic_words(m, horizon.max(m.size()));
    let mut entries = Vec::new();
    for (i, u) in all.iter().enumerate() {
        for v in &all[i..] {
            if primes.contains(u) || primes.contains(v) {
                entries.push(BaseLinkEntry {
                    u: m.word_names(u),
                    v: m.word_names(v),
                    value: rng.gen_range(-3..4).to_string(),
                });
            }
        }
    }
    BaseLinkTable::from_entries(m, &entries).unwrap()
}

pub fn random_null_gamma<R: Rng>(rng: &mut R, m: &MarkovModel, max_len: usize) -> SignedMeasure {
    let words = primitive_cyclic_words(m, max_len);
    for _ in 0..50 {
        let (u, v) = (words.choose(rng).unwrap(), words.choose(rng).unwrap());
        let (cu, cv) = (
            homology_class(m, &SignedMeasure::orbit(u)).0[0].clone(),
            homology_class(m, &SignedMeasure::orbit(v)).0[0].clone(),
        );
        if cu.is_positive() && cv.is_negative() {
            return SignedMeasure::orbit(u).scale(&-cv).add(&SignedMeasure::orbit(v).scale(&cu));
        }
    }
    SignedMeasure::zero()
}
