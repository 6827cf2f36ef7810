use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::spec::{DimensionTable, GeneratorSpec};
use crate::error::Result;

/// A word over the generator alphabet; letters are generator positions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn letter(l: u8) -> Self {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Strictly smaller than every proper suffix.
    pub fn is_lyndon(&self) -> bool {
        is_lyndon(&self.0)
    }

    /// `(u, v)` with `v` the longest proper Lyndon suffix. `None` for letters.
    pub fn standard_factorization(&self) -> Option<(Word, Word)> {
        (1..self.len())
            .find(|&i| is_lyndon(&self.0[i..]))
            .map(|i| (Word(self.0[..i].to_vec()), Word(self.0[i..].to_vec())))
    }

    /// Right factor of the standard factorization.
    pub fn right_factor(&self) -> Option<&[u8]> {
        (1..self.len())
            .find(|&i| is_lyndon(&self.0[i..]))
            .map(|i| &self.0[i..])
    }

    pub fn degree(&self, degrees: &[u32]) -> u32 {
        self.0.iter().map(|&l| degrees[l as usize]).sum()
    }

    /// Bracket expression of the standard bracketing, e.g. `[x,[x,y]]`.
    pub fn render(&self, spec: &GeneratorSpec) -> String {
        let mut out = String::new();
        self.render_into(spec, &mut out);
        out
    }

    fn render_into(&self, spec: &GeneratorSpec, out: &mut String) {
        match self.standard_factorization() {
            None => out.push_str(spec.label(self.0[0] as usize)),
            Some((u, v)) => {
                out.push('[');
                u.render_into(spec, out);
                out.push(',');
                v.render_into(spec, out);
                out.push(']');
            }
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "<{}>", s.join("."))
    }
}

pub(crate) fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Standard bracketing tree of a Lyndon word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bracketing {
    Letter(u8),
    Node(Box<Bracketing>, Box<Bracketing>),
}

/// A Lyndon word together with its signed weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LyndonBasisElement {
    pub word: Word,
    pub weight: i64,
}

impl LyndonBasisElement {
    pub fn bracketing(&self) -> Bracketing {
        fn build(w: &Word) -> Bracketing {
            match w.standard_factorization() {
                None => Bracketing::Letter(w.letters()[0]),
                Some((u, v)) => Bracketing::Node(Box::new(build(&u)), Box::new(build(&v))),
            }
        }
        build(&self.word)
    }
}

/// Lyndon words grouped by signed weight, lexicographic within each weight.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LyndonBasis {
    pub by_weight: BTreeMap<i64, Vec<LyndonBasisElement>>,
}

impl LyndonBasis {
    pub fn get(&self, weight: i64) -> &[LyndonBasisElement] {
        self.by_weight.get(&weight).map_or(&[], |v| v.as_slice())
    }

    pub fn len(&self) -> usize {
        self.by_weight.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dims(&self) -> DimensionTable {
        self.by_weight
            .iter()
            .map(|(&w, v)| (w, v.len() as u64))
            .collect()
    }
}

/// Depth-first walk over prenecklaces of bounded degree.
///
/// Every prefix of a Lyndon word is a prenecklace, and a prenecklace of
/// length `n` whose longest Lyndon prefix has length `p` extends by a letter
/// `c >= w[n - p]` (keeping `p` when equal, resetting it to `n + 1`
/// otherwise). Letters are sorted by degree, so the loop can stop at the
/// first letter that overshoots the bound. Visits happen in lexicographic
/// order.
struct PrenecklaceWalk<'a> {
    degrees: &'a [u32],
    bound: u32,
}

impl PrenecklaceWalk<'_> {
    fn walk<F: FnMut(&[u8], u32)>(&self, word: &mut Vec<u8>, degree: u32, p: usize, visit: &mut F) {
        let n = word.len();
        if p == n {
            visit(word, degree);
        }
        let start = word[n - p];
        for c in start..self.degrees.len() as u8 {
            let d = degree + self.degrees[c as usize];
            if d > self.bound {
                break;
            }
            word.push(c);
            let np = if c == start { p } else { n + 1 };
            self.walk(word, d, np, visit);
            word.pop();
        }
    }

    /// Like [`walk`](Self::walk) with a per-degree tally as the visitor, but
    /// children that cannot be extended are tallied without recursing: such a
    /// child `w c` is Lyndon exactly when `c` differs from the letter that
    /// continues the period of `w`.
    fn count(&self, word: &mut [u8], n: usize, degree: u32, p: usize, counts: &mut [u64]) {
        if p == n {
            counts[degree as usize] += 1;
        }
        let start = word[n - p];
        let min = self.degrees[0];
        for c in start..self.degrees.len() as u8 {
            let d = degree + self.degrees[c as usize];
            if d > self.bound {
                break;
            }
            if d + min > self.bound {
                if c != start {
                    counts[d as usize] += 1;
                }
                continue;
            }
            word[n] = c;
            let np = if c == start { p } else { n + 1 };
            self.count(word, n + 1, d, np, counts);
        }
    }

    fn walk_from<F: FnMut(&[u8], u32)>(&self, prefix: &[u8], visit: &mut F) {
        let degree: u32 = prefix.iter().map(|&l| self.degrees[l as usize]).sum();
        if degree > self.bound || !is_prenecklace(prefix) {
            return;
        }
        let mut word = prefix.to_vec();
        let p = longest_lyndon_prefix(prefix);
        self.walk(&mut word, degree, p, visit);
    }
}

fn longest_lyndon_prefix(w: &[u8]) -> usize {
    (1..=w.len()).rev().find(|&k| is_lyndon(&w[..k])).unwrap_or(0)
}

/// Duval's criterion: every prefix of a Lyndon word extends the periodic pattern.
fn is_prenecklace(w: &[u8]) -> bool {
    let mut p = 1;
    for i in 1..w.len() {
        if w[i] < w[i - p] {
            return false;
        }
        if w[i] > w[i - p] {
            p = i + 1;
        }
    }
    true
}

/// All Lyndon words of weight magnitude at most `|weight_bound|`.
pub fn lyndon_basis(spec: &GeneratorSpec, weight_bound: i64) -> Result<LyndonBasis> {
    let bound = spec.check_bound(weight_bound)?;
    let sign = spec.sign().unwrap_or(weight_bound.signum());
    let degrees = spec.degrees();
    let walker = PrenecklaceWalk {
        degrees: &degrees,
        bound,
    };
    let mut basis = LyndonBasis::default();
    for first in 0..degrees.len() as u8 {
        walker.walk_from(&[first], &mut |w: &[u8], d: u32| {
            let weight = sign * d as i64;
            basis
                .by_weight
                .entry(weight)
                .or_default()
                .push(LyndonBasisElement {
                    word: Word(w.to_vec()),
                    weight,
                });
        });
    }
    Ok(basis)
}

/// Lyndon words of exactly the given degree, in lexicographic order.
pub(crate) fn lyndon_words_of_degree(degrees: &[u32], degree: u32) -> Vec<Word> {
    let walker = PrenecklaceWalk {
        degrees,
        bound: degree,
    };
    let mut out = Vec::new();
    for first in 0..degrees.len() as u8 {
        walker.walk_from(&[first], &mut |w: &[u8], d: u32| {
            if d == degree {
                out.push(Word(w.to_vec()));
            }
        });
    }
    out
}

/// Per-weight number of Lyndon words, by exhaustive enumeration without
/// storing the words. Subtrees below two-letter prefixes run in parallel.
pub fn count_lyndon_words(spec: &GeneratorSpec, weight_bound: i64) -> Result<DimensionTable> {
    let bound = spec.check_bound(weight_bound)?;
    let sign = spec.sign().unwrap_or(weight_bound.signum());
    let degrees = spec.degrees();
    let k = degrees.len() as u8;
    let walker = PrenecklaceWalk {
        degrees: &degrees,
        bound,
    };
    // single letters are counted here; deeper words under their two-letter prefix
    let mut counts = vec![0u64; bound as usize + 1];
    for &d in &degrees {
        if d <= bound {
            counts[d as usize] += 1;
        }
    }
    let prefixes: Vec<[u8; 2]> = (0..k)
        .flat_map(|a| (a..k).map(move |b| [a, b]))
        .collect();
    let partial: Vec<Vec<u64>> = prefixes
        .par_iter()
        .map(|prefix| {
            let mut local = vec![0u64; bound as usize + 1];
            let degree: u32 = prefix.iter().map(|&l| degrees[l as usize]).sum();
            if degree <= bound && is_prenecklace(prefix) {
                let p = longest_lyndon_prefix(prefix);
                // a word of degree at most `bound` has at most `bound` letters
                let mut word = vec![0u8; bound as usize + 1];
                word[..2].copy_from_slice(prefix);
                walker.count(&mut word, 2, degree, p, &mut local);
            }
            local
        })
        .collect();
    for local in partial {
        for (c, x) in counts.iter_mut().zip(local) {
            *c += x;
        }
    }
    let mut table = DimensionTable::zeros(sign, 1, bound);
    for (d, &c) in counts.iter().enumerate().skip(1) {
        table.set(sign * d as i64, c);
    }
    Ok(table)
}
