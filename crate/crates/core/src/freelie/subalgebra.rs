use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::algebra::{FreeLieAlgebra, LieElement};
use super::lyndon::Word;
use super::spec::{DimensionTable, GeneratorSpec};
use super::witt::witt_dims;
use crate::error::{Error, Result};
use crate::exactlin::{EchelonBasis, Scalar};

/// A graded Lie algebra given only through its bracket and linear coordinates.
pub trait BracketOracle: Sync {
    type Element: Clone + Send + Sync;
    type Key: Ord + Clone + Send + Sync;

    /// Weight of a nonzero homogeneous element, `None` otherwise.
    fn weight(&self, e: &Self::Element) -> Option<i64>;
    fn bracket(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn coordinates(&self, e: &Self::Element) -> BTreeMap<Self::Key, Scalar>;
}

impl BracketOracle for FreeLieAlgebra {
    type Element = LieElement;
    type Key = Word;

    fn weight(&self, e: &LieElement) -> Option<i64> {
        e.weight()
    }

    fn bracket(&self, a: &LieElement, b: &LieElement) -> LieElement {
        FreeLieAlgebra::bracket(self, a, b).expect("elements of this algebra")
    }

    fn coordinates(&self, e: &LieElement) -> BTreeMap<Word, Scalar> {
        e.terms().clone()
    }
}

/// How a basis element of a generated subalgebra was produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// The i-th input element.
    Input(usize),
    /// `[input, basis element]`, the latter given by `(weight, index)`.
    Bracket { input: usize, weight: i64, index: usize },
}

/// Spanning vectors of a subspace to divide out at a given weight.
pub type Modulus<'a, K> = &'a (dyn Fn(i64) -> Vec<BTreeMap<K, Scalar>> + Sync);

/// Per-weight basis of a generated subalgebra together with how each basis
/// vector arose.
#[derive(Clone, Debug)]
pub struct GeneratedSubalgebra<E> {
    pub dims: DimensionTable,
    pub basis: BTreeMap<i64, Vec<(E, Provenance)>>,
}

impl<E> GeneratedSubalgebra<E> {
    /// Left-normed bracket expression of a basis element in terms of `labels`.
    pub fn render(&self, p: &Provenance, labels: &[String]) -> String {
        match p {
            Provenance::Input(i) => labels[*i].clone(),
            Provenance::Bracket {
                input,
                weight,
                index,
            } => {
                let inner = &self.basis[weight][*index].1;
                format!("[{},{}]", labels[*input], self.render(inner, labels))
            }
        }
    }
}

/// Saturates the Lie subalgebra generated by `elements` up to `|weight_bound|`.
///
/// Weights are processed by increasing magnitude. The span at weight `w` is
/// the span of the inputs of weight `w` and of `[g, b]` for inputs `g` and
/// basis vectors `b` of weight `w - wt(g)`; left-normed brackets of inputs
/// span the generated subalgebra. Brackets at one weight are evaluated in
/// parallel and inserted in a fixed order, so the chosen basis is
/// deterministic. With a `modulus`, dimensions are taken in the quotient by
/// the given subspaces, which must form an ideal.
pub fn generated_subalgebra<O: BracketOracle>(
    oracle: &O,
    elements: &[O::Element],
    weight_bound: i64,
    modulus: Option<Modulus<'_, O::Key>>,
) -> Result<GeneratedSubalgebra<O::Element>> {
    if weight_bound == 0 {
        return Err(Error::InvalidBound("weight bound must be nonzero".into()));
    }
    let sign = weight_bound.signum();
    let bound = weight_bound.unsigned_abs();
    let mut weights = Vec::with_capacity(elements.len());
    for (i, e) in elements.iter().enumerate() {
        let w = oracle
            .weight(e)
            .ok_or_else(|| Error::inhomogeneous_ctx(format!("element {}", i + 1)))?;
        if w == 0 || w.signum() != sign {
            return Err(Error::InvalidArgument(format!(
                "element {} has weight {w}, expected the sign of bound {weight_bound}",
                i + 1
            )));
        }
        weights.push(w);
    }

    let mut dims = DimensionTable::zeros(sign, 1, bound as u32);
    let mut basis: BTreeMap<i64, Vec<(O::Element, Provenance)>> = BTreeMap::new();
    for k in 1..=bound as i64 {
        let w = sign * k;
        let mut candidates: Vec<(usize, Provenance)> = Vec::new();
        for (i, &wi) in weights.iter().enumerate() {
            if wi == w {
                candidates.push((i, Provenance::Input(i)));
            }
        }
        for (i, &wi) in weights.iter().enumerate() {
            if let Some(lower) = basis.get(&(w - wi)) {
                for index in 0..lower.len() {
                    candidates.push((
                        i,
                        Provenance::Bracket {
                            input: i,
                            weight: w - wi,
                            index,
                        },
                    ));
                }
            }
        }
        if candidates.is_empty() {
            continue;
        }
        let evaluated: Vec<(O::Element, BTreeMap<O::Key, Scalar>)> = candidates
            .par_iter()
            .map(|(i, p)| {
                let e = match p {
                    Provenance::Input(_) => elements[*i].clone(),
                    Provenance::Bracket { weight, index, .. } => {
                        oracle.bracket(&elements[*i], &basis[weight][*index].0)
                    }
                };
                let c = oracle.coordinates(&e);
                (e, c)
            })
            .collect();
        let mut echelon = EchelonBasis::new();
        if let Some(m) = modulus {
            for v in m(w) {
                echelon.insert(&v);
            }
        }
        let mut level = Vec::new();
        for ((e, coords), (_, p)) in evaluated.into_iter().zip(candidates) {
            if echelon.insert(&coords).is_some() {
                level.push((e, p));
            }
        }
        dims.set(w, level.len() as u64);
        if !level.is_empty() {
            basis.insert(w, level);
        }
    }
    Ok(GeneratedSubalgebra { dims, basis })
}

/// Per-weight dimensions of the generated subalgebra.
pub fn generated_subalgebra_dims<O: BracketOracle>(
    oracle: &O,
    elements: &[O::Element],
    weight_bound: i64,
) -> Result<DimensionTable> {
    Ok(generated_subalgebra(oracle, elements, weight_bound, None)?.dims)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Verdict {
    FreeSoFar,
    RelationAtWeight { weight: i64 },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::FreeSoFar => write!(f, "FREE-SO-FAR"),
            Verdict::RelationAtWeight { weight } => write!(f, "RELATION-AT-WEIGHT {weight}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessRow {
    pub weight: i64,
    pub observed: u64,
    pub free_bound: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub rows: Vec<FreenessRow>,
    pub verdict: Verdict,
}

/// Compares observed dimensions with those of the free Lie algebra on
/// generators of the given weights, up to the largest observed weight.
pub fn free_bound_report(elements_weights: &[i64], observed: &DimensionTable) -> Result<FreenessReport> {
    let Some(extreme) = observed.extreme_weight() else {
        return Ok(FreenessReport {
            rows: Vec::new(),
            verdict: Verdict::FreeSoFar,
        });
    };
    let spec = GeneratorSpec::from_weights(elements_weights)?;
    let free = witt_dims(&spec, extreme)?;
    for (w, d) in observed.nonzero() {
        if !free.contains(w) {
            return Err(Error::Integrity(format!(
                "observed dimension {d} at weight {w} outside the free range"
            )));
        }
    }
    let mut rows = Vec::new();
    let mut verdict = Verdict::FreeSoFar;
    for (weight, free_bound) in free.iter() {
        let got = observed.get(weight);
        if got > free_bound {
            return Err(Error::Integrity(format!(
                "observed dimension {got} exceeds the free bound {free_bound} at weight {weight}"
            )));
        }
        if got < free_bound && verdict == Verdict::FreeSoFar {
            verdict = Verdict::RelationAtWeight { weight };
        }
        rows.push(FreenessRow {
            weight,
            observed: got,
            free_bound,
        });
    }
    Ok(FreenessReport { rows, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> FreeLieAlgebra {
        FreeLieAlgebra::new(GeneratorSpec::new([("x", 1), ("y", 1)]).unwrap())
    }

    #[test]
    fn single_generator() {
        let alg = xy();
        let d = generated_subalgebra_dims(&alg, &[alg.generator(0)], 4).unwrap();
        assert_eq!(d.nonzero().collect::<Vec<_>>(), [(1, 1)]);
    }

    #[test]
    fn generators_generate_everything() {
        let alg = xy();
        let d = generated_subalgebra_dims(&alg, &[alg.generator(0), alg.generator(1)], 6).unwrap();
        assert_eq!(d, witt_dims(alg.spec(), 6).unwrap());
    }

    #[test]
    fn x_and_xy() {
        // The span at weight n is ad(x)^{n-1} y alone, and [x,y] is reached
        // only as itself.
        let alg = xy();
        let xy_ = alg.bracket(&alg.generator(0), &alg.generator(1)).unwrap();
        let d = generated_subalgebra_dims(&alg, &[alg.generator(0), xy_], 4).unwrap();
        let got: Vec<(i64, u64)> = d.iter().collect();
        assert_eq!(got, [(1, 1), (2, 1), (3, 1), (4, 1)]);
    }

    #[test]
    fn rejects_zero_and_inhomogeneous() {
        let alg = xy();
        assert!(generated_subalgebra_dims(&alg, &[alg.zero()], 3).is_err());
        let mixed = &alg.generator(0) + &alg.bracket(&alg.generator(0), &alg.generator(1)).unwrap();
        assert!(generated_subalgebra_dims(&alg, &[mixed], 3).is_err());
    }

    #[test]
    fn provenance_renders_left_normed() {
        let alg = xy();
        let sub = generated_subalgebra(&alg, &[alg.generator(0), alg.generator(1)], 3, None).unwrap();
        let labels = vec!["x".to_string(), "y".to_string()];
        let rendered: Vec<String> = sub.basis[&3].iter().map(|(_, p)| sub.render(p, &labels)).collect();
        assert_eq!(rendered, ["[x,[x,y]]", "[y,[x,y]]"]);
    }

    #[test]
    fn freeness_verdicts() {
        let spec = GeneratorSpec::from_weights(&[3, 5]).unwrap();
        let alg = FreeLieAlgebra::new(spec.clone());
        let observed =
            generated_subalgebra_dims(&alg, &[alg.generator(0), alg.generator(1)], 16).unwrap();
        let r = free_bound_report(&[3, 5], &observed).unwrap();
        assert_eq!(r.verdict, Verdict::FreeSoFar);

        let mut short = witt_dims(&GeneratorSpec::from_weights(&[1, 1]).unwrap(), 12).unwrap();
        short.set(12, short.get(12) - 1);
        let r = free_bound_report(&[1, 1], &short).unwrap();
        assert_eq!(r.verdict, Verdict::RelationAtWeight { weight: 12 });

        let mut over = witt_dims(&spec, 8).unwrap();
        over.set(8, 2);
        assert!(matches!(free_bound_report(&[3, 5], &over), Err(Error::Integrity(_))));
    }
}
