use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use super::lyndon::{lyndon_words_of_degree, Word};
use super::spec::GeneratorSpec;
use crate::error::{Error, Result};
use crate::exactlin::Scalar;

/// Coefficients on Lyndon words.
pub type Terms = BTreeMap<Word, Scalar>;

pub(crate) fn add_scaled(out: &mut Terms, t: &Terms, c: &Scalar) {
    for (w, x) in t {
        let slot = out.entry(w.clone()).or_insert_with(Scalar::zero);
        *slot += c * x;
        if slot.is_zero() {
            out.remove(w);
        }
    }
}

/// An element of a free Lie algebra in the Lyndon basis.
#[derive(Clone, Debug)]
pub struct LieElement {
    spec: Arc<GeneratorSpec>,
    terms: Terms,
}

fn same_spec(a: &Arc<GeneratorSpec>, b: &Arc<GeneratorSpec>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl PartialEq for LieElement {
    fn eq(&self, other: &Self) -> bool {
        same_spec(&self.spec, &other.spec) && self.terms == other.terms
    }
}

impl Eq for LieElement {}

impl LieElement {
    pub fn zero(spec: &Arc<GeneratorSpec>) -> Self {
        LieElement {
            spec: spec.clone(),
            terms: Terms::new(),
        }
    }

    pub fn generator(spec: &Arc<GeneratorSpec>, letter: usize) -> Self {
        assert!(letter < spec.len(), "generator index {letter} out of range");
        Self::basis(spec, Word::letter(letter as u8))
    }

    /// The basis element of a Lyndon word. Panics if the word is not Lyndon.
    pub fn basis(spec: &Arc<GeneratorSpec>, word: Word) -> Self {
        assert!(word.is_lyndon(), "{word} is not a Lyndon word");
        let mut terms = Terms::new();
        terms.insert(word, Scalar::one());
        LieElement {
            spec: spec.clone(),
            terms,
        }
    }

    /// Checked constructor from arbitrary coefficients on Lyndon words.
    pub fn from_terms(
        spec: &Arc<GeneratorSpec>,
        terms: impl IntoIterator<Item = (Word, Scalar)>,
    ) -> Result<Self> {
        let mut out = Terms::new();
        for (w, c) in terms {
            if !w.is_lyndon() {
                return Err(Error::InvalidArgument(format!("{w} is not a Lyndon word")));
            }
            if w.letters().iter().any(|&l| l as usize >= spec.len()) {
                return Err(Error::InvalidArgument(format!(
                    "{w} uses a letter outside the {} generators",
                    spec.len()
                )));
            }
            add_scaled(&mut out, &BTreeMap::from([(w, Scalar::one())]), &c);
        }
        Ok(LieElement {
            spec: spec.clone(),
            terms: out,
        })
    }

    pub(crate) fn from_terms_unchecked(spec: &Arc<GeneratorSpec>, terms: Terms) -> Self {
        LieElement {
            spec: spec.clone(),
            terms,
        }
    }

    pub fn spec(&self) -> &Arc<GeneratorSpec> {
        &self.spec
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn same_algebra(&self, other: &LieElement) -> bool {
        same_spec(&self.spec, &other.spec)
    }

    fn signed(&self, degree: u32) -> i64 {
        self.spec.sign().unwrap_or(1) * degree as i64
    }

    /// Weight of a nonzero homogeneous element; `None` for zero or mixed weights.
    pub fn weight(&self) -> Option<i64> {
        let degrees = self.spec.degrees();
        let mut it = self.terms.keys().map(|w| w.degree(&degrees));
        let first = it.next()?;
        it.all(|d| d == first).then(|| self.signed(first))
    }

    /// Zero counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.weight().is_some()
    }

    /// Components by signed weight.
    pub fn homogeneous_components(&self) -> BTreeMap<i64, LieElement> {
        let degrees = self.spec.degrees();
        let mut out: BTreeMap<i64, LieElement> = BTreeMap::new();
        for (w, c) in &self.terms {
            let weight = self.signed(w.degree(&degrees));
            out.entry(weight)
                .or_insert_with(|| LieElement::zero(&self.spec))
                .terms
                .insert(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> LieElement {
        if c.is_zero() {
            return LieElement::zero(&self.spec);
        }
        LieElement {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    fn combine(&self, other: &LieElement, c: &Scalar) -> LieElement {
        assert!(
            self.same_algebra(other),
            "cannot combine elements of different algebras"
        );
        let mut terms = self.terms.clone();
        add_scaled(&mut terms, &other.terms, c);
        LieElement {
            spec: self.spec.clone(),
            terms,
        }
    }
}

impl Add for &LieElement {
    type Output = LieElement;
    fn add(self, rhs: &LieElement) -> LieElement {
        self.combine(rhs, &Scalar::one())
    }
}

impl Sub for &LieElement {
    type Output = LieElement;
    fn sub(self, rhs: &LieElement) -> LieElement {
        self.combine(rhs, &-Scalar::one())
    }
}

impl Neg for &LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        self.scale(&-Scalar::one())
    }
}

impl Add for LieElement {
    type Output = LieElement;
    fn add(self, rhs: LieElement) -> LieElement {
        &self + &rhs
    }
}

impl Sub for LieElement {
    type Output = LieElement;
    fn sub(self, rhs: LieElement) -> LieElement {
        &self - &rhs
    }
}

impl Neg for LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        -&self
    }
}

/// Renders as `coef bracket ; coef bracket`, the same syntax the element
/// parser reads back.
impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let degrees = self.spec.degrees();
        let mut terms: Vec<(&Word, &Scalar)> = self.terms.iter().collect();
        terms.sort_by_key(|(w, _)| (w.degree(&degrees), (*w).clone()));
        let parts: Vec<String> = terms
            .iter()
            .map(|(w, c)| format!("{} {}", c, w.render(&self.spec)))
            .collect();
        write!(f, "{}", parts.join(" ; "))
    }
}

/// A free Lie algebra with a memoized bracket on Lyndon basis elements.
///
/// The bracket of Lyndon words `u < v` is `P_{uv}` when `u` is a letter or
/// the right standard factor of `u` is at least `v`. Otherwise, with
/// `u = (u1, u2)` its standard factorization, Jacobi gives
/// `[[u1,u2],v] = [u1,[u2,v]] - [u2,[u1,v]]`, and the recursion terminates on
/// Lyndon words. Results for ordered pairs are cached; the cache is the only
/// interior state and is shared safely across threads.
pub struct FreeLieAlgebra {
    spec: Arc<GeneratorSpec>,
    degrees: Vec<u32>,
    bracket_cache: RwLock<HashMap<(Word, Word), Arc<Terms>>>,
    basis_cache: RwLock<BTreeMap<u32, Arc<Vec<Word>>>>,
}

impl fmt::Debug for FreeLieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FreeLieAlgebra")
            .field("spec", &self.spec)
            .finish_non_exhaustive()
    }
}

impl FreeLieAlgebra {
    pub fn new(spec: GeneratorSpec) -> Self {
        Self::from_shared(Arc::new(spec))
    }

    pub fn from_shared(spec: Arc<GeneratorSpec>) -> Self {
        let degrees = spec.degrees();
        FreeLieAlgebra {
            spec,
            degrees,
            bracket_cache: RwLock::new(HashMap::new()),
            basis_cache: RwLock::new(BTreeMap::new()),
        }
    }

    pub fn spec(&self) -> &Arc<GeneratorSpec> {
        &self.spec
    }

    pub fn sign(&self) -> i64 {
        self.spec.sign().unwrap_or(1)
    }

    pub fn generator(&self, letter: usize) -> LieElement {
        LieElement::generator(&self.spec, letter)
    }

    pub fn generator_by_label(&self, label: &str) -> Result<LieElement> {
        self.spec
            .index_of(label)
            .map(|i| self.generator(i))
            .ok_or_else(|| Error::UnknownGenerator(label.to_string()))
    }

    pub fn zero(&self) -> LieElement {
        LieElement::zero(&self.spec)
    }

    pub fn element(&self, word: Word) -> LieElement {
        LieElement::basis(&self.spec, word)
    }

    pub fn word_degree(&self, w: &Word) -> u32 {
        w.degree(&self.degrees)
    }

    /// Lyndon words of degree `|weight| = degree`, lexicographically ordered.
    pub fn basis_of_degree(&self, degree: u32) -> Arc<Vec<Word>> {
        if let Some(b) = self.basis_cache.read().expect("basis cache").get(&degree) {
            return b.clone();
        }
        let words = Arc::new(lyndon_words_of_degree(&self.degrees, degree));
        self.basis_cache
            .write()
            .expect("basis cache")
            .insert(degree, words.clone());
        words
    }

    pub fn dim_of_degree(&self, degree: u32) -> usize {
        self.basis_of_degree(degree).len()
    }

    fn check(&self, e: &LieElement) -> Result<()> {
        if same_spec(&self.spec, &e.spec) {
            Ok(())
        } else {
            Err(Error::MixedAlgebras)
        }
    }

    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> Result<LieElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(LieElement {
            spec: self.spec.clone(),
            terms: self.bracket_terms(&a.terms, &b.terms),
        })
    }

    /// Left-normed bracket `[e1,[e2,[...,en]]]`.
    pub fn bracket_all(&self, elems: &[LieElement]) -> Result<LieElement> {
        let (last, init) = elems
            .split_last()
            .ok_or_else(|| Error::InvalidArgument("empty bracket".into()))?;
        init.iter()
            .rev()
            .try_fold(last.clone(), |acc, e| self.bracket(e, &acc))
    }

    pub(crate) fn bracket_terms(&self, a: &Terms, b: &Terms) -> Terms {
        let mut out = Terms::new();
        for (u, cu) in a {
            for (v, cv) in b {
                if u == v {
                    continue;
                }
                let c = cu * cv;
                if u < v {
                    add_scaled(&mut out, &self.bracket_ordered(u, v), &c);
                } else {
                    add_scaled(&mut out, &self.bracket_ordered(v, u), &-c);
                }
            }
        }
        out
    }

    fn bracket_ordered(&self, u: &Word, v: &Word) -> Arc<Terms> {
        let key = (u.clone(), v.clone());
        if let Some(hit) = self.bracket_cache.read().expect("bracket cache").get(&key) {
            return hit.clone();
        }
        let direct = match u.right_factor() {
            None => true,
            Some(right) => right >= v.letters(),
        };
        let result = if direct {
            BTreeMap::from([(u.concat(v), Scalar::one())])
        } else {
            let (u1, u2) = u.standard_factorization().expect("u is not a letter");
            let single = |w: &Word| BTreeMap::from([(w.clone(), Scalar::one())]);
            let u2v = self.bracket_terms(&single(&u2), &single(v));
            let u1v = self.bracket_terms(&single(&u1), &single(v));
            let mut t = self.bracket_terms(&single(&u1), &u2v);
            add_scaled(&mut t, &self.bracket_terms(&single(&u2), &u1v), &-Scalar::one());
            t
        };
        let result = Arc::new(result);
        self.bracket_cache
            .write()
            .expect("bracket cache")
            .insert(key, result.clone());
        result
    }
}
