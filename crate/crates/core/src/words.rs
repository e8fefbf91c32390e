//! Cyclic words, eventually periodic bi-infinite words and their two orders.

use std::cmp::Ordering as CmpOrdering;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::markov_model::MarkovModel;

/// Index of a cuboid in the model alphabet.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub usize);

impl Letter {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A nonempty finite word read cyclically.
///
/// Equality is literal; use [`CyclicWord::canonical`] when rotation classes matter.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord(Vec<Letter>);

impl CyclicWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidWord("empty word".into()));
        }
        Ok(CyclicWord(letters))
    }

    pub fn from_indices(ix: &[usize]) -> Result<Self> {
        Self::new(ix.iter().map(|&i| Letter(i)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> Letter {
        self.0[0]
    }

    /// Letter at a cyclic index.
    pub fn at(&self, i: i64) -> Letter {
        self.0[i.rem_euclid(self.0.len() as i64) as usize]
    }

    /// The rotation starting at index `k`.
    pub fn rotate(&self, k: usize) -> Self {
        let n = self.0.len();
        CyclicWord((0..n).map(|i| self.0[(i + k) % n]).collect())
    }

    /// Lexicographically least rotation by alphabet index.
    pub fn canonical(&self) -> Self {
        let n = self.0.len();
        let best = (1..n).fold(0, |best, k| {
            let better =
                (0..n).map(|i| self.0[(k + i) % n].cmp(&self.0[(best + i) % n])).find(|c| *c != CmpOrdering::Equal)
                    == Some(CmpOrdering::Less);
            if better {
                k
            } else {
                best
            }
        });
        self.rotate(best)
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    /// Smallest cyclic period, always a divisor of the length.
    pub fn period(&self) -> usize {
        let n = self.0.len();
        (1..=n).find(|&p| n.is_multiple_of(p) && (0..n).all(|i| self.0[i] == self.0[(i + p) % n])).unwrap_or(n)
    }

    pub fn primitive_decompose(&self) -> (CyclicWord, usize) {
        let p = self.period();
        (CyclicWord(self.0[..p].to_vec()), self.0.len() / p)
    }

    pub fn is_primitive(&self) -> bool {
        self.period() == self.0.len()
    }

    /// Canonical rotation of the primitive root.
    pub fn canonical_root(&self) -> CyclicWord {
        self.primitive_decompose().0.canonical()
    }

    pub fn pow(&self, k: usize) -> Self {
        CyclicWord(self.0.repeat(k.max(1)))
    }

    pub fn count(&self, l: Letter) -> usize {
        self.0.iter().filter(|&&x| x == l).count()
    }

    pub fn positions(&self, l: Letter) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] == l).collect()
    }

    /// Consecutive pairs including the wrap-around pair.
    pub fn transitions(&self) -> impl Iterator<Item = (Letter, Letter)> + '_ {
        let n = self.0.len();
        (0..n).map(move |i| (self.0[i], self.0[(i + 1) % n]))
    }

    /// Errors unless every cyclic transition is an edge of the model.
    pub fn check_in(&self, model: &MarkovModel) -> Result<()> {
        for &l in &self.0 {
            if l.0 >= model.size() {
                return Err(Error::InvalidWord(format!("letter index {} out of range", l.0)));
            }
        }
        for (a, b) in self.transitions() {
            if model.edge_id(a, b).is_none() {
                return Err(Error::InvalidWord(format!(
                    "{} has no edge {}->{}",
                    model.format_word(self),
                    model.name(a),
                    model.name(b)
                )));
            }
        }
        Ok(())
    }
}

/// Word concatenation, defined when both words start with the same letter.
pub fn concat(u: &CyclicWord, v: &CyclicWord) -> Result<CyclicWord> {
    if u.first() != v.first() {
        return Err(Error::Precondition("concat needs words with the same first letter".into()));
    }
    let mut out = u.0.clone();
    out.extend_from_slice(&v.0);
    Ok(CyclicWord(out))
}

pub fn primitive_decompose(u: &CyclicWord) -> (CyclicWord, usize) {
    u.primitive_decompose()
}

/// An eventually periodic bi-infinite word.
///
/// Position `start + i` carries `middle[i]`; to the left the word repeats `left`
/// (its last letter sits at `start - 1`); to the right it repeats `right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiWord {
    left: CyclicWord,
    middle: Vec<Letter>,
    right: CyclicWord,
    start: i64,
}

impl BiWord {
    pub fn new(left: CyclicWord, middle: Vec<Letter>, right: CyclicWord) -> Self {
        Self::with_start(left, middle, right, 0)
    }

    pub fn with_start(left: CyclicWord, middle: Vec<Letter>, right: CyclicWord, start: i64) -> Self {
        BiWord { left, middle, right, start }
    }

    /// The periodic word `...uuu.uuu...` with `u_0` at index 0.
    pub fn periodic(u: &CyclicWord) -> Self {
        Self::new(u.clone(), Vec::new(), u.clone())
    }

    pub fn left(&self) -> &CyclicWord {
        &self.left
    }

    pub fn middle(&self) -> &[Letter] {
        &self.middle
    }

    pub fn right(&self) -> &CyclicWord {
        &self.right
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    fn end(&self) -> i64 {
        self.start + self.middle.len() as i64
    }

    pub fn letter(&self, i: i64) -> Letter {
        if i < self.start {
            self.left.at(i - self.start)
        } else if i < self.end() {
            self.middle[(i - self.start) as usize]
        } else {
            self.right.at(i - self.end())
        }
    }

    /// `shift(n)` reads position `i + n` of `self` at position `i`.
    pub fn shift(&self, n: i64) -> Self {
        BiWord { start: self.start - n, ..self.clone() }
    }

    pub fn check_in(&self, model: &MarkovModel) -> Result<()> {
        let lo = self.start - self.left.len() as i64 - 1;
        let hi = self.end() + self.right.len() as i64 + 1;
        for i in lo..hi {
            let (a, b) = (self.letter(i), self.letter(i + 1));
            if a.0 >= model.size() || b.0 >= model.size() || model.edge_id(a, b).is_none() {
                return Err(Error::InvalidWord(format!("bi-infinite word breaks at index {i}")));
            }
        }
        Ok(())
    }

    fn forward_bound(&self, other: &BiWord) -> i64 {
        let l = (self.right.len() as i64).lcm(&(other.right.len() as i64));
        self.end().max(other.end()).max(1) + l + 1
    }

    fn backward_bound(&self, other: &BiWord) -> i64 {
        let l = (self.left.len() as i64).lcm(&(other.left.len() as i64));
        self.start.min(other.start).min(0) - l - 1
    }
}

pub fn shift_word(w: &BiWord, n: i64) -> BiWord {
    w.shift(n)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Axis {
    Vertical,
    Horizontal,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum WordOrdering {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl WordOrdering {
    pub fn as_str(self) -> &'static str {
        match self {
            WordOrdering::Less => "Less",
            WordOrdering::Equal => "Equal",
            WordOrdering::Greater => "Greater",
            WordOrdering::Incomparable => "Incomparable",
        }
    }
}

impl fmt::Display for WordOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Compares two words along one axis; both must be valid in the model.
pub fn compare(model: &MarkovModel, w: &BiWord, x: &BiWord, axis: Axis) -> Result<WordOrdering> {
    w.check_in(model)?;
    x.check_in(model)?;
    Ok(compare_unchecked(model, w, x, axis))
}

pub(crate) fn compare_unchecked(model: &MarkovModel, w: &BiWord, x: &BiWord, axis: Axis) -> WordOrdering {
    if w.letter(0) != x.letter(0) {
        return WordOrdering::Incomparable;
    }
    let pick = |less: bool| if less { WordOrdering::Less } else { WordOrdering::Greater };
    match axis {
        Axis::Vertical => {
            for k in 1..=w.forward_bound(x) {
                let (a, b) = (w.letter(k), x.letter(k));
                if a != b {
                    let prev = w.letter(k - 1);
                    return pick(model.out_rank(prev, a) < model.out_rank(prev, b));
                }
            }
        }
        Axis::Horizontal => {
            let mut k = -1;
            while k >= w.backward_bound(x) {
                let (a, b) = (w.letter(k), x.letter(k));
                if a != b {
                    let next = w.letter(k + 1);
                    return pick(model.in_rank(next, a) < model.in_rank(next, b));
                }
                k -= 1;
            }
        }
    }
    WordOrdering::Equal
}

/// 2 when the orbit of `u` is declared to have non-orientable boundary leaves, else 1.
pub fn realization_degree(model: &MarkovModel, u: &CyclicWord) -> u8 {
    if model.nonorientable_orbits().contains(&u.canonical_root()) {
        2
    } else {
        1
    }
}

/// Every canonical cyclic word of length at most `max_len` (powers included),
/// ordered by length and then letters.
pub fn cyclic_words(model: &MarkovModel, max_len: usize) -> Vec<CyclicWord> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for s in 0..model.size() {
            let mut path = vec![Letter(s)];
            extend_paths(model, len, &mut path, &mut out);
        }
    }
    out
}

/// Canonical primitive cyclic words of length at most `max_len`.
pub fn primitive_cyclic_words(model: &MarkovModel, max_len: usize) -> Vec<CyclicWord> {
    cyclic_words(model, max_len).into_iter().filter(|w| w.is_primitive()).collect()
}

fn extend_paths(model: &MarkovModel, len: usize, path: &mut Vec<Letter>, out: &mut Vec<CyclicWord>) {
    let first = path[0];
    let last = *path.last().expect("nonempty path");
    if path.len() == len {
        if model.edge_id(last, first).is_some() {
            let w = CyclicWord(path.clone());
            if w.is_canonical() {
                out.push(w);
            }
        }
        return;
    }
    for d in model.successors(last) {
        if d >= first {
            path.push(d);
            extend_paths(model, len, path, out);
            path.pop();
        }
    }
}
