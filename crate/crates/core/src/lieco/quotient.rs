use std::collections::{BTreeMap, HashMap};
use std::ops::Range;
use std::sync::Arc;

use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{EchelonBasis, Scalar, Vector};
use crate::freelie::{DimensionTable, FreeLieAlgebra, GeneratorSpec, LieElement, Terms, Word};

/// Generators, homogeneous relations and a truncation weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLiePresentation {
    generators: Arc<GeneratorSpec>,
    relations: Vec<LieElement>,
    weight_bound: i64,
}

impl GradedLiePresentation {
    pub fn new(generators: GeneratorSpec, relations: Vec<LieElement>, weight_bound: i64) -> Result<Self> {
        Self::from_shared(Arc::new(generators), relations, weight_bound)
    }

    /// Relations must be elements over `generators` (compared by value).
    pub fn from_shared(
        generators: Arc<GeneratorSpec>,
        relations: Vec<LieElement>,
        weight_bound: i64,
    ) -> Result<Self> {
        generators.check_bound(weight_bound)?;
        let min = generators.min_degree().unwrap_or(0) as i64;
        for (i, r) in relations.iter().enumerate() {
            if r.spec().as_ref() != generators.as_ref() {
                return Err(Error::MixedAlgebras);
            }
            let w = r
                .weight()
                .ok_or_else(|| Error::inhomogeneous_ctx(format!("relation {}", i + 1)))?;
            if w.abs() < 2 * min {
                return Err(Error::InvalidArgument(format!(
                    "relation {} has weight {w}, below twice the smallest generator weight",
                    i + 1
                )));
            }
        }
        Ok(GradedLiePresentation {
            generators,
            relations,
            weight_bound,
        })
    }

    /// No relations.
    pub fn free(generators: GeneratorSpec, weight_bound: i64) -> Result<Self> {
        Self::new(generators, Vec::new(), weight_bound)
    }

    pub fn generators(&self) -> &Arc<GeneratorSpec> {
        &self.generators
    }

    pub fn relations(&self) -> &[LieElement] {
        &self.relations
    }

    pub fn weight_bound(&self) -> i64 {
        self.weight_bound
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_empty()
    }

    /// Same data with a different truncation.
    pub fn with_bound(&self, weight_bound: i64) -> Result<Self> {
        Self::from_shared(self.generators.clone(), self.relations.clone(), weight_bound)
    }

    /// Smallest relation weight magnitude.
    pub fn min_relation_degree(&self) -> Option<u32> {
        self.relations
            .iter()
            .filter_map(|r| r.weight())
            .map(|w| w.unsigned_abs() as u32)
            .min()
    }
}

impl Serialize for GradedLiePresentation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let relations: Vec<String> = self.relations.iter().map(|r| r.to_string()).collect();
        let mut st = serializer.serialize_struct("GradedLiePresentation", 3)?;
        st.serialize_field("generators", self.generators.as_ref())?;
        st.serialize_field("relations", &relations)?;
        st.serialize_field("weight_bound", &self.weight_bound)?;
        st.end()
    }
}

/// One coset representative: a Lyndon word that is not a pivot of the ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientBasisElement {
    pub word: Word,
    pub label: String,
    pub weight: i64,
}

/// `L/(I + L_{>B})` for `L` free on the generators, `I` the ideal generated by
/// the relations and `B` the weight bound.
///
/// The ideal is built degree by degree as `I_d = R_d + sum_g [g, I_{d-|g|}]`,
/// which spans the ideal because generators generate the adjoint action.
/// Cosets are represented by the Lyndon words that are not pivots of the
/// reduced echelon basis of `I_d`. Basis elements are ordered by
/// `(|weight|, word)`; structure constants are stored for index pairs `i < j`.
pub struct GradedQuotientAlgebra {
    presentation: GradedLiePresentation,
    free: FreeLieAlgebra,
    bound: u32,
    sign: i64,
    basis: Vec<QuotientBasisElement>,
    degrees: Vec<u32>,
    by_degree: BTreeMap<u32, Range<usize>>,
    index: HashMap<Word, usize>,
    ideal: BTreeMap<u32, EchelonBasis<Word>>,
    structure: HashMap<(usize, usize), Vec<(usize, Scalar)>>,
}

impl std::fmt::Debug for GradedQuotientAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedQuotientAlgebra")
            .field("generators", self.presentation.generators())
            .field("dims", &self.dims())
            .finish_non_exhaustive()
    }
}

/// Builds the truncated quotient and verifies antisymmetry and Jacobi on its
/// structure constants.
pub fn build_quotient(pres: &GradedLiePresentation) -> Result<GradedQuotientAlgebra> {
    let spec = pres.generators().clone();
    let bound = spec.check_bound(pres.weight_bound())?;
    let sign = spec.sign().unwrap_or(pres.weight_bound().signum());
    let free = FreeLieAlgebra::from_shared(spec.clone());
    let gen_degrees = spec.degrees();

    let mut ideal: BTreeMap<u32, EchelonBasis<Word>> = BTreeMap::new();
    for d in 1..=bound {
        let mut candidates: Vec<Terms> = pres
            .relations()
            .iter()
            .filter(|r| free.word_degree(r.terms().keys().next().expect("nonzero")) == d)
            .map(|r| r.terms().clone())
            .collect();
        let lifted: Vec<Terms> = gen_degrees
            .iter()
            .enumerate()
            .filter(|&(_, &e)| e < d)
            .flat_map(|(g, &e)| {
                ideal
                    .get(&(d - e))
                    .into_iter()
                    .flat_map(|b| b.rows().map(|(_, row)| row.clone()))
                    .map(move |row| (g, row))
            })
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(g, row)| {
                let gen: Terms = BTreeMap::from([(Word::letter(g as u8), Scalar::one())]);
                free.bracket_terms(&gen, &row)
            })
            .collect();
        candidates.extend(lifted);
        let mut echelon = EchelonBasis::new();
        for c in &candidates {
            echelon.insert(c);
        }
        if !echelon.is_empty() {
            ideal.insert(d, echelon);
        }
    }

    let mut basis = Vec::new();
    let mut degrees = Vec::new();
    let mut by_degree = BTreeMap::new();
    let mut index = HashMap::new();
    for d in 1..=bound {
        let start = basis.len();
        for w in free.basis_of_degree(d).iter() {
            if ideal.get(&d).is_some_and(|e| e.is_pivot(w)) {
                continue;
            }
            index.insert(w.clone(), basis.len());
            basis.push(QuotientBasisElement {
                word: w.clone(),
                label: w.render(&spec),
                weight: sign * d as i64,
            });
            degrees.push(d);
        }
        if basis.len() > start {
            by_degree.insert(d, start..basis.len());
        }
    }

    let mut alg = GradedQuotientAlgebra {
        presentation: pres.clone(),
        free,
        bound,
        sign,
        basis,
        degrees,
        by_degree,
        index,
        ideal,
        structure: HashMap::new(),
    };
    let n = alg.basis.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| alg.degrees[i] + alg.degrees[j] <= bound)
        .collect();
    let constants: Vec<((usize, usize), Vec<(usize, Scalar)>)> = pairs
        .into_par_iter()
        .map(|(i, j)| {
            let single = |k: usize| BTreeMap::from([(alg.basis[k].word.clone(), Scalar::one())]);
            let t = alg.free.bracket_terms(&single(i), &single(j));
            ((i, j), alg.normal_form(&t))
        })
        .filter(|(_, v)| !v.is_empty())
        .collect();
    alg.structure = constants.into_iter().collect();
    alg.verify_jacobi()?;
    Ok(alg)
}

impl GradedQuotientAlgebra {
    pub fn presentation(&self) -> &GradedLiePresentation {
        &self.presentation
    }

    pub fn generators(&self) -> &Arc<GeneratorSpec> {
        self.presentation.generators()
    }

    pub fn free_algebra(&self) -> &FreeLieAlgebra {
        &self.free
    }

    /// Truncation degree `|B|`.
    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn sign(&self) -> i64 {
        self.sign
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[QuotientBasisElement] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.basis[i].weight
    }

    /// Indices of basis elements of degree `d`.
    pub fn indices_of_degree(&self, d: u32) -> Range<usize> {
        self.by_degree.get(&d).cloned().unwrap_or(0..0)
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn dims(&self) -> DimensionTable {
        let mut t = DimensionTable::zeros(self.sign, 1, self.bound);
        for &d in &self.degrees {
            t.add(self.sign * d as i64, 1);
        }
        t
    }

    /// Dimensions of the ideal generated by the relations, per weight.
    pub fn ideal_dims(&self) -> DimensionTable {
        let mut t = DimensionTable::zeros(self.sign, 1, self.bound);
        for (&d, e) in &self.ideal {
            t.set(self.sign * d as i64, e.rank() as u64);
        }
        t
    }

    /// Coordinates of a free-algebra combination in the quotient basis; terms
    /// beyond the truncation are dropped.
    fn normal_form(&self, t: &Terms) -> Vec<(usize, Scalar)> {
        let mut by_degree: BTreeMap<u32, Terms> = BTreeMap::new();
        for (w, c) in t {
            let d = self.free.word_degree(w);
            if d <= self.bound {
                by_degree.entry(d).or_default().insert(w.clone(), c.clone());
            }
        }
        let mut out = Vec::new();
        for (d, part) in by_degree {
            let reduced = match self.ideal.get(&d) {
                Some(e) => e.reduce(&part),
                None => part,
            };
            for (w, c) in reduced {
                out.push((self.index[&w], c));
            }
        }
        out.sort_by_key(|(i, _)| *i);
        out
    }

    /// Image of a free-algebra element in the quotient.
    pub fn reduce(&self, e: &LieElement) -> Result<Vector> {
        if e.spec().as_ref() != self.generators().as_ref() {
            return Err(Error::MixedAlgebras);
        }
        Ok(Vector::from_entries(self.dim(), self.normal_form(e.terms())))
    }

    /// Structure constants of `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<(usize, Scalar)> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Vec::new(),
            Less => self.structure.get(&(i, j)).cloned().unwrap_or_default(),
            Greater => self
                .structure
                .get(&(j, i))
                .map(|v| v.iter().map(|(k, c)| (*k, -c)).collect())
                .unwrap_or_default(),
        }
    }

    pub fn bracket(&self, a: &Vector, b: &Vector) -> Result<Vector> {
        if a.len() != self.dim() || b.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vectors of length {} and {} in an algebra of dimension {}",
                a.len(),
                b.len(),
                self.dim()
            )));
        }
        let mut out = Vector::zeros(self.dim());
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                let c = x * y;
                for (k, s) in self.bracket_basis(i, j) {
                    out.add_to(k, &(&c * &s));
                }
            }
        }
        Ok(out)
    }

    fn unit(&self, i: usize) -> Vector {
        Vector::from_entries(self.dim(), [(i, Scalar::one())])
    }

    fn verify_jacobi(&self) -> Result<()> {
        let n = self.dim();
        let triples: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
            .filter(|&(i, j, k)| self.degrees[i] + self.degrees[j] + self.degrees[k] <= self.bound)
            .collect();
        let bad = triples.into_par_iter().find_any(|&(i, j, k)| {
            let (a, b, c) = (self.unit(i), self.unit(j), self.unit(k));
            let t = |x: &Vector, y: &Vector, z: &Vector| {
                self.bracket(x, &self.bracket(y, z).expect("dims")).expect("dims")
            };
            let mut sum = t(&a, &b, &c);
            for (idx, v) in t(&b, &c, &a).iter() {
                sum.add_to(idx, v);
            }
            for (idx, v) in t(&c, &a, &b).iter() {
                sum.add_to(idx, v);
            }
            !sum.is_zero()
        });
        match bad {
            Some((i, j, k)) => Err(Error::Integrity(format!(
                "Jacobi fails on {}, {}, {}",
                self.basis[i].label, self.basis[j].label, self.basis[k].label
            ))),
            None => Ok(()),
        }
    }
}
