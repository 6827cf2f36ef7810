//! Derivations of the free Lie algebra on `x, y` (both of weight -2), the
//! Ihara bracket, and generation reports for families of Ihara derivations.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{rank, solve, Scalar, SparseMatrix, Vector};
use crate::freelie::{
    add_scaled, free_bound_report, generated_subalgebra, witt_dims, BracketOracle, DimensionTable,
    FreeLieAlgebra, GeneratorSpec, LieElement, Terms, Verdict, Word,
};

/// The free Lie algebra on `x` and `y`, both of weight -2.
pub struct RankTwoAlgebra {
    alg: FreeLieAlgebra,
}

impl RankTwoAlgebra {
    /// The shared instance; its bracket cache lives for the whole process.
    pub fn get() -> &'static RankTwoAlgebra {
        static INSTANCE: OnceLock<RankTwoAlgebra> = OnceLock::new();
        INSTANCE.get_or_init(|| RankTwoAlgebra {
            alg: FreeLieAlgebra::new(GeneratorSpec::new([("x", -2), ("y", -2)]).expect("valid spec")),
        })
    }

    pub fn algebra(&self) -> &FreeLieAlgebra {
        &self.alg
    }

    pub fn spec(&self) -> &Arc<GeneratorSpec> {
        self.alg.spec()
    }

    pub fn x(&self) -> LieElement {
        self.alg.generator(0)
    }

    pub fn y(&self) -> LieElement {
        self.alg.generator(1)
    }

    /// Lyndon words of weight `weight` (an even nonpositive integer).
    pub fn basis(&self, weight: i64) -> Arc<Vec<Word>> {
        if weight >= 0 || weight % 2 != 0 {
            return Arc::new(Vec::new());
        }
        self.alg.basis_of_degree((-weight) as u32)
    }

    pub fn dim(&self, weight: i64) -> usize {
        self.basis(weight).len()
    }

    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> Result<LieElement> {
        self.alg.bracket(a, b)
    }

    fn check(&self, e: &LieElement) -> Result<()> {
        if e.spec().as_ref() == self.spec().as_ref() {
            Ok(())
        } else {
            Err(Error::MixedAlgebras)
        }
    }
}

fn p() -> &'static RankTwoAlgebra {
    RankTwoAlgebra::get()
}

/// A derivation, determined by the images of `x` and `y`.
///
/// A derivation of weight `w` sends `x` and `y` to elements of weight
/// `w - 2`. The weight is `None` only for a zero derivation built without
/// one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub image_x: LieElement,
    pub image_y: LieElement,
    pub weight: Option<i64>,
}

impl Derivation {
    pub fn zero(weight: Option<i64>) -> Self {
        Derivation {
            image_x: p().algebra().zero(),
            image_y: p().algebra().zero(),
            weight,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.image_x.is_zero() && self.image_y.is_zero()
    }

    /// Weight of a nonzero derivation.
    pub fn nonzero_weight(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            self.weight
        }
    }

    pub fn scale(&self, c: &Scalar) -> Derivation {
        Derivation {
            image_x: self.image_x.scale(c),
            image_y: self.image_y.scale(c),
            weight: self.weight,
        }
    }

    pub fn sub(&self, other: &Derivation) -> Derivation {
        Derivation {
            image_x: &self.image_x - &other.image_x,
            image_y: &self.image_y - &other.image_y,
            weight: self.weight.or(other.weight),
        }
    }

    /// Coordinates keyed by `(0, word)` for the image of `x` and `(1, word)`
    /// for the image of `y`.
    pub fn coordinates(&self) -> BTreeMap<(u8, Word), Scalar> {
        let xs = self.image_x.terms().iter().map(|(w, c)| ((0u8, w.clone()), c.clone()));
        let ys = self.image_y.terms().iter().map(|(w, c)| ((1u8, w.clone()), c.clone()));
        xs.chain(ys).collect()
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x -> {} | y -> {}", self.image_x, self.image_y)
    }
}

/// Derivation with the given images, which must be homogeneous of one weight.
pub fn derivation_from_images(dx: LieElement, dy: LieElement) -> Result<Derivation> {
    p().check(&dx)?;
    p().check(&dy)?;
    for (name, e) in [("x", &dx), ("y", &dy)] {
        if !e.is_homogeneous() {
            return Err(Error::inhomogeneous_ctx(format!("image of {name}")));
        }
    }
    let weight = match (dx.weight(), dy.weight()) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::InvalidArgument(format!(
                "images of x and y have weights {a} and {b}"
            )))
        }
        (a, b) => a.or(b).map(|w| w + 2),
    };
    Ok(Derivation {
        image_x: dx,
        image_y: dy,
        weight,
    })
}

/// Leibniz extension along standard bracketings, memoized per word.
fn apply_terms(d: &Derivation, t: &Terms, memo: &mut HashMap<Word, Terms>) -> Terms {
    let mut out = Terms::new();
    for (w, c) in t {
        let dw = apply_word(d, w, memo);
        add_scaled(&mut out, &dw, c);
    }
    out
}

fn apply_word(d: &Derivation, w: &Word, memo: &mut HashMap<Word, Terms>) -> Terms {
    if let Some(t) = memo.get(w) {
        return t.clone();
    }
    let alg = p().algebra();
    let t = match w.standard_factorization() {
        None if w.letters()[0] == 0 => d.image_x.terms().clone(),
        None => d.image_y.terms().clone(),
        Some((u, v)) => {
            let pu = BTreeMap::from([(u.clone(), Scalar::one())]);
            let pv = BTreeMap::from([(v.clone(), Scalar::one())]);
            let du = apply_word(d, &u, memo);
            let dv = apply_word(d, &v, memo);
            let mut t = alg.bracket_terms(&du, &pv);
            add_scaled(&mut t, &alg.bracket_terms(&pu, &dv), &Scalar::one());
            t
        }
    };
    memo.insert(w.clone(), t.clone());
    t
}

/// `d(e)`, extended from the generators by the Leibniz rule.
pub fn apply(d: &Derivation, e: &LieElement) -> Result<LieElement> {
    p().check(e)?;
    let t = apply_terms(d, e.terms(), &mut HashMap::new());
    Ok(LieElement::from_terms_unchecked(p().spec(), t))
}

/// `[d1, d2] = d1 d2 - d2 d1`.
pub fn derivation_bracket(d1: &Derivation, d2: &Derivation) -> Derivation {
    let mut m1 = HashMap::new();
    let mut m2 = HashMap::new();
    let image = |g: fn(&Derivation) -> &LieElement, m1: &mut HashMap<Word, Terms>, m2: &mut HashMap<Word, Terms>| {
        let mut t = apply_terms(d1, g(d2).terms(), m1);
        add_scaled(&mut t, &apply_terms(d2, g(d1).terms(), m2), &-Scalar::one());
        LieElement::from_terms_unchecked(p().spec(), t)
    };
    let image_x = image(|d| &d.image_x, &mut m1, &mut m2);
    let image_y = image(|d| &d.image_y, &mut m1, &mut m2);
    let weight = match (d1.weight, d2.weight) {
        (Some(a), Some(b)) => Some(a + b),
        _ => None,
    };
    Derivation {
        image_x,
        image_y,
        weight,
    }
}

/// `ad(a): u -> [a, u]`, of weight `wt(a)`.
pub fn inner(a: &LieElement) -> Result<Derivation> {
    p().check(a)?;
    if !a.is_homogeneous() {
        return Err(Error::inhomogeneous());
    }
    Ok(Derivation {
        image_x: p().bracket(a, &p().x())?,
        image_y: p().bracket(a, &p().y())?,
        weight: a.weight(),
    })
}

/// Coordinates of `ad(b)` for the Lyndon basis `b` of weight `w`.
fn inner_span(weight: i64) -> Vec<BTreeMap<(u8, Word), Scalar>> {
    p().basis(weight)
        .iter()
        .map(|w| inner(&p().algebra().element(w.clone())).expect("basis element").coordinates())
        .collect()
}

/// Whether `d` is `ad(a)` for some `a`.
pub fn is_inner(d: &Derivation) -> bool {
    let Some(w) = d.nonzero_weight() else {
        return true;
    };
    let span = inner_span(w);
    let mut keys: Vec<(u8, Word)> = span.iter().flat_map(|v| v.keys().cloned()).collect();
    keys.extend(d.coordinates().into_keys());
    keys.sort();
    keys.dedup();
    let row: HashMap<&(u8, Word), usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut m = SparseMatrix::zeros(keys.len(), span.len());
    for (j, v) in span.iter().enumerate() {
        for (k, c) in v {
            m.set(row[k], j, c.clone());
        }
    }
    let rhs = Vector::from_entries(keys.len(), d.coordinates().iter().map(|(k, c)| (row[k], c.clone())));
    solve(&m, &rhs).expect("consistent shapes").is_some()
}

/// `(dim Der_w, dim ad(p)_w, dim OutDer_w)` for an even weight `w <= 0`.
///
/// `Der_w` is free on two images in `p_{w-2}`. The inner part is the rank of
/// `ad` on `p_w`, checked to equal `dim p_w`: the free Lie algebra on two
/// generators has no center.
pub fn outder_dim(weight: i64) -> Result<(u64, u64, u64)> {
    if weight % 2 != 0 {
        return Err(Error::OddWeight(weight));
    }
    if weight > 0 {
        return Err(Error::InvalidBound(format!("derivation weight {weight} is positive")));
    }
    let der = 2 * p().dim(weight - 2) as u64;
    let span = inner_span(weight);
    let mut keys: Vec<(u8, Word)> = span.iter().flat_map(|v| v.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    let col: HashMap<&(u8, Word), usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut m = SparseMatrix::zeros(span.len(), keys.len());
    for (i, v) in span.iter().enumerate() {
        for (k, c) in v {
            m.set(i, col[k], c.clone());
        }
    }
    let inner_dim = rank(&m) as u64;
    if inner_dim != span.len() as u64 {
        return Err(Error::Integrity(format!(
            "ad is not injective in weight {weight}: rank {inner_dim} of {}",
            span.len()
        )));
    }
    Ok((der, inner_dim, der - inner_dim))
}

/// Dimensions of outer derivations in weights `-2, -4, ..., weight_bound`.
pub fn outder_dims(weight_bound: i64) -> Result<DimensionTable> {
    if weight_bound % 2 != 0 {
        return Err(Error::OddWeight(weight_bound));
    }
    if weight_bound > 0 {
        return Err(Error::InvalidBound(format!("bound {weight_bound} is positive")));
    }
    let mut t = DimensionTable::new();
    let mut w = -2;
    while w >= weight_bound {
        t.set(w, outder_dim(w)?.2);
        w -= 2;
    }
    Ok(t)
}

/// `D_f`: `x -> 0`, `y -> [y, f]`, of weight `wt(f)`.
pub fn ihara_element(f: &LieElement) -> Result<Derivation> {
    p().check(f)?;
    if !f.is_homogeneous() {
        return Err(Error::inhomogeneous());
    }
    Ok(Derivation {
        image_x: p().algebra().zero(),
        image_y: p().bracket(&p().y(), f)?,
        weight: f.weight(),
    })
}

/// `{f, g} = D_f(g) - D_g(f) + [f, g]`.
///
/// With this convention `D_{f,g} = [D_f, D_g]`; debug builds check on every
/// call that the difference is inner.
pub fn ihara_bracket(f: &LieElement, g: &LieElement) -> Result<LieElement> {
    let df = ihara_element(f)?;
    let dg = ihara_element(g)?;
    let h = &(&apply(&df, g)? - &apply(&dg, f)?) + &p().bracket(f, g)?;
    #[cfg(debug_assertions)]
    {
        let lhs = derivation_bracket(&df, &dg);
        let rhs = ihara_element(&h)?;
        assert!(is_inner(&lhs.sub(&rhs)), "Ihara bracket incompatible with the derivation bracket");
    }
    Ok(h)
}

/// The depth-one model `f_{2m+1} = ad(x)^{2m}(y)` of weight `-2(2m+1)`.
/// A stand-in for the Galois generators, not their actual images.
pub fn model_sigma(m: u32) -> Result<LieElement> {
    if m == 0 {
        return Err(Error::InvalidArgument("model_sigma needs m >= 1".into()));
    }
    let x = p().x();
    (0..2 * m).try_fold(p().y(), |acc, _| p().bracket(&x, &acc))
}

/// Ihara degree `m`, i.e. weight `-2m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IharaDegree(u32);

impl IharaDegree {
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("Ihara degree must be at least 1".into()));
        }
        Ok(IharaDegree(m))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn weight(self) -> i64 {
        -2 * self.0 as i64
    }
}

/// Derivations as a bracket oracle for subalgebra saturation.
struct DerivationOracle;

impl BracketOracle for DerivationOracle {
    type Element = Derivation;
    type Key = (u8, Word);

    fn weight(&self, e: &Derivation) -> Option<i64> {
        e.nonzero_weight()
    }

    fn bracket(&self, a: &Derivation, b: &Derivation) -> Derivation {
        derivation_bracket(a, b)
    }

    fn coordinates(&self, e: &Derivation) -> BTreeMap<(u8, Word), Scalar> {
        e.coordinates()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementSummary {
    pub label: String,
    pub degree: u32,
    pub weight: i64,
    pub element: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationRow {
    pub degree: u32,
    pub weight: i64,
    pub observed: u64,
    pub free_bound: u64,
}

/// Basis brackets witnessing the observed dimension at one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub degree: u32,
    pub witnesses: Vec<String>,
}

/// Value of `{f_i, f_j}` for two inputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IharaCertificate {
    pub left: String,
    pub right: String,
    pub degree: u32,
    pub nonzero: bool,
    pub terms: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationReport {
    /// `Der` or `OutDer`.
    pub space: String,
    pub modulo_inner: bool,
    /// True when every input is the depth-one model of its degree.
    pub model: bool,
    pub degree_bound: u32,
    pub elements: Vec<ElementSummary>,
    pub rows: Vec<GenerationRow>,
    /// A relation is located by motivic weight, `-2` times the degree.
    pub verdict: Verdict,
    pub certificates: Vec<Certificate>,
    pub ihara_certificates: Vec<IharaCertificate>,
}

fn labels_for(degrees: &[u32]) -> Vec<String> {
    let mut seen: HashMap<u32, usize> = HashMap::new();
    degrees
        .iter()
        .map(|&m| {
            let k = seen.entry(m).or_default();
            *k += 1;
            if *k == 1 {
                format!("f{m}")
            } else {
                format!("f{m}_{k}")
            }
        })
        .collect()
}

/// Dimensions of the Lie algebra generated by the Ihara derivations `D_f`,
/// in `Der` or in `OutDer = Der / ad`, compared with the free Lie algebra on
/// the declared degrees.
///
/// Inputs are labelled `f{m}` by degree.
pub fn galois_image_report(
    elements: &[(LieElement, IharaDegree)],
    weight_bound: i64,
    modulo_inner: bool,
) -> Result<GenerationReport> {
    let degrees: Vec<u32> = elements.iter().map(|(_, m)| m.get()).collect();
    galois_image_report_labeled(elements, &labels_for(&degrees), weight_bound, modulo_inner)
}

/// [`galois_image_report`] with caller-chosen labels.
pub fn galois_image_report_labeled(
    elements: &[(LieElement, IharaDegree)],
    labels: &[String],
    weight_bound: i64,
    modulo_inner: bool,
) -> Result<GenerationReport> {
    if labels.len() != elements.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} labels for {} elements",
            labels.len(),
            elements.len()
        )));
    }
    if weight_bound % 2 != 0 {
        return Err(Error::OddWeight(weight_bound));
    }
    if weight_bound > -2 {
        return Err(Error::InvalidBound(format!("bound {weight_bound} must be at most -2")));
    }
    let top = (weight_bound / -2) as u32;
    let mut derivations = Vec::new();
    let mut degrees = Vec::new();
    let mut model = !elements.is_empty();
    for (i, (f, m)) in elements.iter().enumerate() {
        p().check(f)?;
        let w = f
            .weight()
            .ok_or_else(|| Error::inhomogeneous_ctx(format!("element {}", i + 1)))?;
        if w != m.weight() {
            return Err(Error::WeightMismatch {
                declared: m.get(),
                weight: w,
            });
        }
        model &= m.get() % 2 == 1 && m.get() >= 3 && *f == model_sigma((m.get() - 1) / 2)?;
        derivations.push(ihara_element(f)?);
        degrees.push(m.get());
    }

    let modulus = |w: i64| inner_span(w);
    let sub = generated_subalgebra(
        &DerivationOracle,
        &derivations,
        weight_bound,
        modulo_inner.then_some(&modulus as &(dyn Fn(i64) -> Vec<_> + Sync)),
    )?;
    let observed: DimensionTable = (1..=top).map(|m| (m as i64, sub.dims.get(-2 * m as i64))).collect();
    let in_range: Vec<i64> = degrees.iter().filter(|&&m| m <= top).map(|&m| m as i64).collect();
    let freeness = free_bound_report(&in_range, &observed)?;
    let free = witt_dims(&GeneratorSpec::from_weights(&in_range)?, top as i64)?;
    let rows: Vec<GenerationRow> = (1..=top)
        .map(|m| GenerationRow {
            degree: m,
            weight: -2 * m as i64,
            observed: observed.get(m as i64),
            free_bound: free.get(m as i64),
        })
        .collect();

    let certificates = rows
        .iter()
        .filter(|r| r.observed > 0 && r.observed == r.free_bound)
        .map(|r| Certificate {
            degree: r.degree,
            witnesses: sub.basis[&r.weight].iter().map(|(_, prov)| sub.render(prov, labels)).collect(),
        })
        .collect();

    let mut ihara_certificates = Vec::new();
    for i in 0..elements.len() {
        for j in i + 1..elements.len() {
            let degree = degrees[i] + degrees[j];
            if degree > top {
                continue;
            }
            let h = ihara_bracket(&elements[i].0, &elements[j].0)?;
            ihara_certificates.push(IharaCertificate {
                left: labels[i].clone(),
                right: labels[j].clone(),
                degree,
                nonzero: !h.is_zero(),
                terms: h.terms().len(),
                value: h.to_string(),
            });
        }
    }

    Ok(GenerationReport {
        space: if modulo_inner { "OutDer" } else { "Der" }.to_string(),
        modulo_inner,
        model,
        degree_bound: top,
        elements: elements
            .iter()
            .zip(labels)
            .map(|((f, m), label)| ElementSummary {
                label: label.clone(),
                degree: m.get(),
                weight: m.weight(),
                element: f.to_string(),
            })
            .collect(),
        rows,
        verdict: match freeness.verdict {
            Verdict::RelationAtWeight { weight } => Verdict::RelationAtWeight { weight: -2 * weight },
            v => v,
        },
        certificates,
        ihara_certificates,
    })
}

/// Depth-one models `f_3, f_5, ...` of every odd degree up to `max_degree`,
/// paired with their degrees.
pub fn model_elements(max_degree: u32) -> Result<Vec<(LieElement, IharaDegree)>> {
    (1..)
        .map(|m| 2 * m + 1)
        .take_while(|&d| d <= max_degree)
        .map(|d| Ok((model_sigma((d - 1) / 2)?, IharaDegree::new(d)?)))
        .collect()
}
