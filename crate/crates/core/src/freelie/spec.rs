use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// One free generator: a label and a nonzero weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub label: String,
    pub weight: i64,
}

/// Ordered generator list of a weighted free Lie algebra.
///
/// Generators are sorted by `(|weight|, label)`; the position in that order is
/// the letter used in Lyndon words. All weights share one sign. The engine
/// works with the magnitudes ("degrees") and reapplies the sign on output.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GeneratorSpec {
    generators: Vec<Generator>,
}

impl GeneratorSpec {
    pub fn new<S: Into<String>>(generators: impl IntoIterator<Item = (S, i64)>) -> Result<Self> {
        let mut gens: Vec<Generator> = generators
            .into_iter()
            .map(|(label, weight)| Generator {
                label: label.into(),
                weight,
            })
            .collect();
        if gens.len() > u8::MAX as usize {
            return Err(Error::InvalidGeneratorSpec(format!(
                "at most {} generators are supported, got {}",
                u8::MAX,
                gens.len()
            )));
        }
        for g in &gens {
            if g.weight == 0 {
                return Err(Error::InvalidGeneratorSpec(format!(
                    "generator `{}` has weight 0",
                    g.label
                )));
            }
            if g.label.is_empty() {
                return Err(Error::InvalidGeneratorSpec("empty generator label".into()));
            }
        }
        if let Some(first) = gens.first() {
            let sign = first.weight.signum();
            if let Some(bad) = gens.iter().find(|g| g.weight.signum() != sign) {
                return Err(Error::InvalidGeneratorSpec(format!(
                    "generator `{}` has weight {} but `{}` has weight {}; weights must share one sign",
                    bad.label, bad.weight, first.label, first.weight
                )));
            }
        }
        gens.sort_by(|a, b| {
            (a.weight.unsigned_abs(), &a.label).cmp(&(b.weight.unsigned_abs(), &b.label))
        });
        let mut labels: Vec<&str> = gens.iter().map(|g| g.label.as_str()).collect();
        labels.sort_unstable();
        if let Some(dup) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGeneratorSpec(format!("duplicate label `{}`", dup[0])));
        }
        Ok(GeneratorSpec { generators: gens })
    }

    pub fn empty() -> Self {
        GeneratorSpec::default()
    }

    /// Generators with the given weights, labelled `g001, g002, ...` in input order.
    pub fn from_weights(weights: &[i64]) -> Result<Self> {
        GeneratorSpec::new(
            weights
                .iter()
                .enumerate()
                .map(|(i, &w)| (format!("g{:03}", i + 1), w)),
        )
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `Some(-1)` or `Some(1)`; `None` for the empty spec.
    pub fn sign(&self) -> Option<i64> {
        self.generators.first().map(|g| g.weight.signum())
    }

    pub fn degree(&self, letter: usize) -> u32 {
        self.generators[letter].weight.unsigned_abs() as u32
    }

    pub fn degrees(&self) -> Vec<u32> {
        (0..self.len()).map(|i| self.degree(i)).collect()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.generators.first().map(|g| g.weight.unsigned_abs() as u32)
    }

    pub fn label(&self, letter: usize) -> &str {
        &self.generators[letter].label
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.label == label)
    }

    /// Number of generators per signed weight.
    pub fn multiplicities(&self) -> BTreeMap<i64, u64> {
        let mut out = BTreeMap::new();
        for g in &self.generators {
            *out.entry(g.weight).or_insert(0) += 1;
        }
        out
    }

    /// Validates a weight bound against the generator sign and returns `|bound|`.
    pub fn check_bound(&self, bound: i64) -> Result<u32> {
        if bound == 0 {
            return Err(Error::InvalidBound("weight bound must be nonzero".into()));
        }
        if let Some(sign) = self.sign() {
            if bound.signum() != sign {
                return Err(Error::InvalidBound(format!(
                    "bound {bound} lies on the other side of zero from the generator weights"
                )));
            }
        }
        u32::try_from(bound.unsigned_abs())
            .map_err(|_| Error::InvalidBound(format!("bound {bound} is too large")))
    }
}

impl Serialize for GeneratorSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.generators.serialize(serializer)
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("{}:{}", g.label, g.weight))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Per-weight counts. Missing weights read as zero; iteration runs by
/// increasing `|weight|`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DimensionTable {
    dims: BTreeMap<i64, u64>,
}

impl DimensionTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every weight `sign * k` for `k` in `from..=to`, all set to zero.
    pub fn zeros(sign: i64, from: u32, to: u32) -> Self {
        let mut t = DimensionTable::new();
        for k in from..=to {
            t.set(sign * k as i64, 0);
        }
        t
    }

    pub fn set(&mut self, weight: i64, dim: u64) {
        self.dims.insert(weight, dim);
    }

    pub fn add(&mut self, weight: i64, dim: u64) {
        *self.dims.entry(weight).or_insert(0) += dim;
    }

    pub fn get(&self, weight: i64) -> u64 {
        self.dims.get(&weight).copied().unwrap_or(0)
    }

    pub fn contains(&self, weight: i64) -> bool {
        self.dims.contains_key(&weight)
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        let mut entries: Vec<(i64, u64)> = self.dims.iter().map(|(&w, &d)| (w, d)).collect();
        entries.sort_by_key(|&(w, _)| (w.unsigned_abs(), w));
        entries.into_iter()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.iter().filter(|&(_, d)| d > 0)
    }

    /// The entry of largest `|weight|`.
    pub fn extreme_weight(&self) -> Option<i64> {
        self.dims.keys().copied().max_by_key(|w| (w.unsigned_abs(), *w))
    }

    /// Equality ignoring explicit zero entries.
    pub fn same_nonzero(&self, other: &DimensionTable) -> bool {
        self.nonzero().eq(other.nonzero())
    }
}

impl FromIterator<(i64, u64)> for DimensionTable {
    fn from_iter<I: IntoIterator<Item = (i64, u64)>>(iter: I) -> Self {
        let mut t = DimensionTable::new();
        for (w, d) in iter {
            t.set(w, d);
        }
        t
    }
}

impl Serialize for DimensionTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Entry(i64, u64);
        impl Serialize for Entry {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("weight", &self.0)?;
                m.serialize_entry("dim", &self.1)?;
                m.end()
            }
        }
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for (w, d) in self.iter() {
            seq.serialize_element(&Entry(w, d))?;
        }
        seq.end()
    }
}

impl fmt::Display for DimensionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(w, d)| format!("{w}:{d}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_is_sorted_by_degree_then_label() {
        let s = GeneratorSpec::new([("b", -6), ("a", -10), ("c", -6)]).unwrap();
        let labels: Vec<&str> = s.generators().iter().map(|g| g.label.as_str()).collect();
        assert_eq!(labels, ["b", "c", "a"]);
        assert_eq!(s.sign(), Some(-1));
        assert_eq!(s.degrees(), vec![6, 6, 10]);
    }

    #[test]
    fn spec_rejects_mixed_signs_zero_and_duplicates() {
        assert!(GeneratorSpec::new([("x", 1), ("y", -1)]).is_err());
        assert!(GeneratorSpec::new([("x", 0)]).is_err());
        assert!(GeneratorSpec::new([("x", 1), ("x", 2)]).is_err());
    }

    #[test]
    fn bound_checks() {
        let s = GeneratorSpec::new([("x", -2)]).unwrap();
        assert_eq!(s.check_bound(-8).unwrap(), 8);
        assert!(s.check_bound(8).is_err());
        assert!(s.check_bound(0).is_err());
        assert_eq!(GeneratorSpec::empty().check_bound(5).unwrap(), 5);
    }

    #[test]
    fn table_iterates_by_magnitude() {
        let t: DimensionTable = [(-6, 1), (-2, 0), (-4, 3)].into_iter().collect();
        let order: Vec<i64> = t.iter().map(|(w, _)| w).collect();
        assert_eq!(order, [-2, -4, -6]);
        assert_eq!(t.get(-10), 0);
        assert_eq!(t.extreme_weight(), Some(-6));
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(
            json,
            r#"[{"weight":-2,"dim":0},{"weight":-4,"dim":3},{"weight":-6,"dim":1}]"#
        );
    }
}
