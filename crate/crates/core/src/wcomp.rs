//! Dimension bookkeeping for weighted completions of Galois groups of number
//! fields: orders of vanishing `d_n`, first cohomology dimensions, the
//! resulting free presentations, Ext groups and the polylogarithm quotient.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freelie::{DimensionTable, GeneratorSpec};
use crate::lieco::{completed_group_cohomology, GradedLiePresentation};

pub const DEFAULT_GAP: u32 = 2;
pub const DEFAULT_WEIGHT_BOUND: i64 = -24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `S` contains the primes above `l`.
    #[default]
    Soule,
    /// Finite-part cohomology.
    Crystalline,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Soule => "SOULE",
            Variant::Crystalline => "CRYSTALLINE",
        })
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "soule" => Ok(Variant::Soule),
            "crystalline" => Ok(Variant::Crystalline),
            _ => Err(Error::InvalidArgument(format!("unknown variant `{s}`"))),
        }
    }
}

/// Real places, complex places, number of removed primes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSignature {
    pub r1: u32,
    pub r2: u32,
    pub s_size: u32,
    #[serde(default)]
    pub variant: Variant,
}

impl FieldSignature {
    pub fn new(r1: u32, r2: u32, s_size: u32, variant: Variant) -> Result<Self> {
        let sig = FieldSignature {
            r1,
            r2,
            s_size,
            variant,
        };
        sig.validate()?;
        Ok(sig)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r1 as u64 + 2 * self.r2 as u64 == 0 {
            return Err(Error::InvalidArgument("r1 + 2 r2 must be at least 1".into()));
        }
        Ok(())
    }

    /// The rationals with `S` empty.
    pub fn is_spec_z(&self) -> bool {
        (self.r1, self.r2, self.s_size) == (1, 0, 0)
    }
}

impl fmt::Display for FieldSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "r1={} r2={} #S={} {}",
            self.r1, self.r2, self.s_size, self.variant
        )
    }
}

fn check_n(n: i64) -> Result<()> {
    if n <= 0 {
        return Err(Error::InvalidArgument(format!("n must be positive, got {n}")));
    }
    Ok(())
}

/// Order of vanishing of the Dedekind zeta function at `s = 1 - n`.
pub fn dn(sig: &FieldSignature, n: i64) -> Result<u64> {
    check_n(n)?;
    sig.validate()?;
    let (r1, r2) = (sig.r1 as u64, sig.r2 as u64);
    Ok(if n == 1 {
        r1 + r2 - 1
    } else if n % 2 == 1 {
        r1 + r2
    } else {
        r2
    })
}

/// Dimension of the first cohomology in twist `n`: `d_1 + #S` for `n = 1`,
/// `d_n` otherwise. Both variants share the formula.
pub fn h1_dim(sig: &FieldSignature, n: i64) -> Result<u64> {
    let d = dn(sig, n)?;
    Ok(if n == 1 { d + sig.s_size as u64 } else { d })
}

fn check_motivic_bound(weight_bound: i64) -> Result<u32> {
    if weight_bound % 2 != 0 {
        return Err(Error::OddWeight(weight_bound));
    }
    if weight_bound > -2 {
        return Err(Error::InvalidBound(format!(
            "motivic weight bound must be at most -2, got {weight_bound}"
        )));
    }
    Ok((weight_bound.unsigned_abs() / 2) as u32)
}

/// Generators of weight `-2n` with multiplicity `h1_dim(sig, n)` for
/// `1 <= n <= |weight_bound| / 2`. Labels are `z{n}_{i}`, or `sigma{n}` for
/// the rationals with `S` empty.
pub fn motivic_generator_spec(sig: &FieldSignature, weight_bound: i64) -> Result<GeneratorSpec> {
    let top = check_motivic_bound(weight_bound)?;
    let mut gens = Vec::new();
    for n in 1..=top as i64 {
        let mult = h1_dim(sig, n)?;
        for i in 1..=mult {
            let label = if sig.is_spec_z() && mult == 1 {
                format!("sigma{n}")
            } else {
                format!("z{n}_{i}")
            };
            gens.push((label, -2 * n));
        }
    }
    GeneratorSpec::new(gens)
}

/// Free presentation on [`motivic_generator_spec`].
pub fn motivic_presentation(sig: &FieldSignature, weight_bound: i64) -> Result<GradedLiePresentation> {
    let spec = motivic_generator_spec(sig, weight_bound)?;
    GradedLiePresentation::free(spec, weight_bound)
}

fn default_rep_dim() -> u64 {
    1
}

/// Cohomology of one irreducible of the reductive quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibleCohomologyDatum {
    pub n_alpha: i64,
    pub h1: u64,
    pub h2: u64,
    /// Isotypic component under a finite group; `None` is the trivial one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isotypic: Option<String>,
    #[serde(default = "default_rep_dim")]
    pub rep_dim: u64,
}

impl IrreducibleCohomologyDatum {
    pub fn new(n_alpha: i64, h1: u64, h2: u64) -> Self {
        IrreducibleCohomologyDatum {
            n_alpha,
            h1,
            h2,
            isotypic: None,
            rep_dim: 1,
        }
    }

    pub fn is_trivial_isotypic(&self) -> bool {
        self.isotypic.as_deref().is_none_or(|s| s == "trivial")
    }
}

fn default_gap() -> u32 {
    DEFAULT_GAP
}

fn default_bound() -> i64 {
    DEFAULT_WEIGHT_BOUND
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedCompletionInput {
    pub data: Vec<IrreducibleCohomologyDatum>,
    #[serde(default = "default_gap")]
    pub gap: u32,
    #[serde(default = "default_bound")]
    pub weight_bound: i64,
}

impl WeightedCompletionInput {
    pub fn new(data: Vec<IrreducibleCohomologyDatum>) -> Self {
        WeightedCompletionInput {
            data,
            gap: DEFAULT_GAP,
            weight_bound: DEFAULT_WEIGHT_BOUND,
        }
    }

    /// Soule data of a signature: `h1` from [`h1_dim`] at `n_alpha = -2n`,
    /// `h2 = 0` for `n >= 2`. The `h2` of the twist `n = 1` is not determined
    /// by the signature and is left at zero.
    pub fn from_signature(sig: &FieldSignature, weight_bound: i64) -> Result<Self> {
        let top = check_motivic_bound(weight_bound)?;
        let data = (1..=top as i64)
            .map(|n| Ok(IrreducibleCohomologyDatum::new(-2 * n, h1_dim(sig, n)?, 0)))
            .collect::<Result<_>>()?;
        Ok(WeightedCompletionInput {
            data,
            gap: DEFAULT_GAP,
            weight_bound,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.gap == 0 {
            return Err(Error::InvalidArgument("the gap N must be at least 1".into()));
        }
        if self.weight_bound >= 0 {
            return Err(Error::InvalidBound(format!(
                "weight bound must be negative, got {}",
                self.weight_bound
            )));
        }
        let mut seen = BTreeSet::new();
        for d in &self.data {
            if !seen.insert((d.n_alpha, d.isotypic.clone())) {
                return Err(Error::DuplicateWeight(d.n_alpha));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Freeness {
    CertifiedFree,
    Unknown {
        /// Obstructions may live at weights `<= window_top`.
        window_top: i64,
        /// Weights in the window with nonzero `h2`.
        obstructions: Vec<i64>,
        /// Weights strictly between `-N` and `0` with nonzero `h1`.
        gap_violations: Vec<i64>,
    },
}

impl fmt::Display for Freeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Freeness::CertifiedFree => write!(f, "CERTIFIED-FREE"),
            Freeness::Unknown { window_top, .. } => {
                write!(f, "UNKNOWN (obstruction window [{window_top}, -inf))")
            }
        }
    }
}

/// A vanishing statement `W_n H^m(u) = 0` for `n > vanishes_above`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingFact {
    pub degree: u32,
    pub vanishes_above: i64,
    /// Data whose cohomology falls in the vanishing range and was discarded.
    pub discarded: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationReport {
    pub presentation: GradedLiePresentation,
    pub freeness: Freeness,
    /// True when there are no generators.
    pub trivial: bool,
    pub audit: Vec<VanishingFact>,
}

/// Generators from `H^1` and the freeness certificate from `H^2`.
///
/// `u` has generators of weight `n_alpha` and multiplicity `h1 * rep_dim` for
/// each datum with `n_alpha < 0` within the weight bound. `H^m(u)` vanishes
/// in weights above `-N m`, so `h2` at `n_alpha > -2N` cannot obstruct;
/// freeness is certified when no `h1` falls in the gap `(-N, 0)` and every
/// `h2` at `n_alpha <= -2N` is zero.
pub fn weighted_completion_presentation(input: &WeightedCompletionInput) -> Result<PresentationReport> {
    input.validate()?;
    let n = input.gap as i64;
    let bound = input.weight_bound;
    let mut gens: Vec<(String, i64)> = Vec::new();
    let mut by_weight: BTreeMap<i64, u64> = BTreeMap::new();
    for d in &input.data {
        if d.n_alpha >= 0 || d.n_alpha < bound {
            continue;
        }
        let count = d.h1 * d.rep_dim;
        let tag = d.isotypic.as_deref().map(|s| format!("_{s}")).unwrap_or_default();
        for i in 1..=count {
            gens.push((format!("u{}{tag}_{i}", -d.n_alpha), d.n_alpha));
        }
        *by_weight.entry(d.n_alpha).or_default() += count;
    }
    let gap_violations: Vec<i64> = by_weight
        .iter()
        .filter(|&(&w, &c)| w > -n && c > 0)
        .map(|(&w, _)| w)
        .collect();
    let mut obstructions: Vec<i64> = input
        .data
        .iter()
        .filter(|d| d.n_alpha <= -2 * n && d.h2 > 0)
        .map(|d| d.n_alpha)
        .collect();
    obstructions.sort_unstable_by(|a, b| b.cmp(a));
    obstructions.dedup();
    let discarded = |m: i64| -> Vec<i64> {
        let mut v: Vec<i64> = input
            .data
            .iter()
            .filter(|d| d.n_alpha > -m * n && if m == 1 { d.h1 > 0 } else { d.h2 > 0 })
            .map(|d| d.n_alpha)
            .collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v.dedup();
        v
    };
    let audit = vec![
        VanishingFact {
            degree: 1,
            vanishes_above: -n,
            discarded: discarded(1),
        },
        VanishingFact {
            degree: 2,
            vanishes_above: -2 * n,
            discarded: discarded(2),
        },
    ];
    let freeness = if gap_violations.is_empty() && obstructions.is_empty() {
        Freeness::CertifiedFree
    } else {
        Freeness::Unknown {
            window_top: -2 * n,
            obstructions,
            gap_violations,
        }
    };
    let spec = GeneratorSpec::new(gens)?;
    let trivial = spec.is_empty();
    Ok(PresentationReport {
        presentation: GradedLiePresentation::free(spec, bound)?,
        freeness,
        trivial,
        audit,
    })
}

/// `dim Ext^m(Q, Q(n))`: `1` for `m = n = 0`, `h1_dim(sig, n)` for `m = 1`
/// and `n > 0`, zero otherwise. Cross-checked against the cohomology of the
/// free presentation built from `sig`.
pub fn ext_dims(sig: &FieldSignature, n: i64, m: usize, weight_bound: i64) -> Result<u64> {
    check_motivic_bound(weight_bound)?;
    if (2 * n).unsigned_abs() > weight_bound.unsigned_abs() {
        return Err(Error::InvalidBound(format!(
            "twist {n} lies beyond the weight bound {weight_bound}"
        )));
    }
    let formula = match (m, n) {
        (0, 0) => 1,
        (1, n) if n > 0 => h1_dim(sig, n)?,
        _ => 0,
    };
    let pres = motivic_presentation(sig, weight_bound)?;
    let computed = completed_group_cohomology(&pres, -2 * n, m)?;
    if computed != formula {
        return Err(Error::Integrity(format!(
            "Ext^{m}(Q, Q({n})) is {formula} by formula but {computed} from the presentation"
        )));
    }
    Ok(formula)
}

/// Abelianization of `u` next to the weight-zero part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolylogReport {
    /// Dimensions of `t / [u,u]`.
    pub quotient: DimensionTable,
    /// One copy of `Q(n)` in each weight `-2n`, as on the polylogarithm side.
    pub polylog_side: DimensionTable,
    /// Weights where the two disagree.
    pub discrepancies: Vec<i64>,
}

/// `t/[u,u]`: weight zero plus the generators of `u`.
pub fn polylog_quotient_dims(sig: &FieldSignature, weight_bound: i64) -> Result<DimensionTable> {
    let spec = motivic_generator_spec(sig, weight_bound)?;
    let mut t = DimensionTable::new();
    t.set(0, 1);
    for (w, c) in spec.multiplicities() {
        t.set(w, c);
    }
    Ok(t)
}

/// [`polylog_quotient_dims`] compared with one dimension per even negative
/// weight.
pub fn polylog_report(sig: &FieldSignature, weight_bound: i64) -> Result<PolylogReport> {
    let quotient = polylog_quotient_dims(sig, weight_bound)?;
    let top = check_motivic_bound(weight_bound)? as i64;
    let mut polylog_side = DimensionTable::new();
    polylog_side.set(0, 1);
    for n in 1..=top {
        polylog_side.set(-2 * n, 1);
    }
    let discrepancies = polylog_side
        .iter()
        .filter(|&(w, d)| quotient.get(w) != d)
        .map(|(w, _)| w)
        .collect();
    Ok(PolylogReport {
        quotient,
        polylog_side,
        discrepancies,
    })
}

/// Passes from data over an extension with Galois group `G` to the subfield:
/// cohomology in nontrivial isotypic components vanishes, because restriction
/// followed by transfer is multiplication by `|G|`, invertible here.
pub fn subfield_reduction(
    order_of_g: u64,
    data_over_f: &[IrreducibleCohomologyDatum],
) -> Result<Vec<IrreducibleCohomologyDatum>> {
    if order_of_g == 0 {
        return Err(Error::InvalidArgument("the group order must be positive".into()));
    }
    Ok(data_over_f
        .iter()
        .map(|d| {
            if d.is_trivial_isotypic() {
                d.clone()
            } else {
                IrreducibleCohomologyDatum { h1: 0, h2: 0, ..d.clone() }
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(r1: u32, r2: u32, s: u32) -> FieldSignature {
        FieldSignature::new(r1, r2, s, Variant::Soule).unwrap()
    }

    #[test]
    fn dn_cases() {
        let q = sig(1, 0, 0);
        assert_eq!((dn(&q, 1).unwrap(), dn(&q, 2).unwrap(), dn(&q, 3).unwrap()), (0, 0, 1));
        let k = sig(0, 1, 0);
        assert_eq!(dn(&k, 1).unwrap(), 0);
        assert!((2..10).all(|n| dn(&k, n).unwrap() == 1));
        let f = sig(2, 3, 0);
        assert_eq!((dn(&f, 1).unwrap(), dn(&f, 4).unwrap(), dn(&f, 5).unwrap()), (4, 3, 5));
        assert!(dn(&q, 0).is_err());
        assert!(FieldSignature::new(0, 0, 1, Variant::Soule).is_err());
    }

    #[test]
    fn h1_cases() {
        assert_eq!(h1_dim(&sig(1, 0, 1), 1).unwrap(), 1);
        assert_eq!(h1_dim(&sig(1, 0, 4), 3).unwrap(), 1);
        let crys = FieldSignature::new(1, 0, 0, Variant::Crystalline).unwrap();
        assert_eq!(h1_dim(&crys, 1).unwrap(), 0);
    }

    #[test]
    fn generator_specs() {
        let z = FieldSignature::new(1, 0, 0, Variant::Crystalline).unwrap();
        let spec = motivic_generator_spec(&z, -24).unwrap();
        let w: Vec<i64> = spec.generators().iter().map(|g| g.weight).collect();
        assert_eq!(w, [-6, -10, -14, -18, -22]);
        assert_eq!(spec.label(0), "sigma3");
        let s1 = motivic_generator_spec(&sig(1, 0, 1), -8).unwrap();
        assert_eq!(s1.generators()[0].weight, -2);
        let imag = motivic_generator_spec(&sig(0, 1, 0), -10).unwrap();
        let w: Vec<i64> = imag.generators().iter().map(|g| g.weight).collect();
        assert_eq!(w, [-4, -6, -8, -10]);
        assert_eq!(motivic_generator_spec(&z, -7).unwrap_err(), Error::OddWeight(-7));
        assert!(motivic_generator_spec(&z, 0).is_err());
    }

    #[test]
    fn presentations() {
        let zero = WeightedCompletionInput::new(vec![
            IrreducibleCohomologyDatum::new(-2, 0, 3),
            IrreducibleCohomologyDatum::new(-6, 0, 1),
        ]);
        let r = weighted_completion_presentation(&zero).unwrap();
        assert!(r.trivial);
        assert!(r.presentation.generators().is_empty());

        let soule = WeightedCompletionInput::from_signature(&sig(1, 0, 1), -24).unwrap();
        let r = weighted_completion_presentation(&soule).unwrap();
        assert_eq!(r.freeness, Freeness::CertifiedFree);
        assert_eq!(
            r.presentation.generators().multiplicities(),
            motivic_generator_spec(&sig(1, 0, 1), -24).unwrap().multiplicities()
        );

        let mut obstructed = soule.clone();
        obstructed.data[2].h2 = 1;
        let r = weighted_completion_presentation(&obstructed).unwrap();
        assert!(matches!(
            r.freeness,
            Freeness::Unknown { window_top: -4, ref obstructions, .. } if obstructions == &[-6]
        ));

        let mut dup = soule;
        dup.data.push(IrreducibleCohomologyDatum::new(-4, 0, 0));
        assert_eq!(weighted_completion_presentation(&dup).unwrap_err(), Error::DuplicateWeight(-4));
    }

    #[test]
    fn ext_groups() {
        let q = sig(1, 0, 0);
        assert_eq!(ext_dims(&q, 0, 0, -12).unwrap(), 1);
        assert_eq!(ext_dims(&q, 3, 1, -12).unwrap(), 1);
        assert_eq!(ext_dims(&q, 2, 1, -12).unwrap(), 0);
        assert_eq!(ext_dims(&q, 5, 2, -12).unwrap(), 0);
        assert!(ext_dims(&q, 7, 1, -12).is_err());
    }

    #[test]
    fn polylog() {
        let z = sig(1, 0, 0);
        let t = polylog_quotient_dims(&z, -14).unwrap();
        assert_eq!(t.iter().collect::<Vec<_>>(), [(0, 1), (-6, 1), (-10, 1), (-14, 1)]);
        let t = polylog_quotient_dims(&sig(1, 0, 1), -6).unwrap();
        assert_eq!(t.iter().collect::<Vec<_>>(), [(0, 1), (-2, 1), (-6, 1)]);
        let r = polylog_report(&z, -6).unwrap();
        assert_eq!(r.discrepancies, [-2, -4]);
    }

    #[test]
    fn subfield() {
        let mut nontrivial = IrreducibleCohomologyDatum::new(-6, 5, 1);
        nontrivial.isotypic = Some("sign".into());
        let trivial = IrreducibleCohomologyDatum::new(-6, 1, 0);
        let out = subfield_reduction(2, &[trivial.clone(), nontrivial]).unwrap();
        assert_eq!(out[0], trivial);
        assert_eq!((out[1].h1, out[1].h2), (0, 0));
        assert!(subfield_reduction(3, &[]).unwrap().is_empty());
    }
}
