use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::quotient::{build_quotient, GradedLiePresentation, GradedQuotientAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::{rank, Scalar, SparseMatrix};
use crate::freelie::DimensionTable;

pub const MAX_DEGREE: usize = 3;

/// Euler characteristic check on one cochain weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerAudit {
    pub weight: i64,
    /// Coefficient of `t^weight` in `prod (1 - t^{|w_i|})` over the basis.
    pub expected: i64,
    /// Alternating sum of enumerated cochain dimensions.
    pub cochains: i64,
    /// Alternating sum of cohomology dimensions, when every nonzero cochain
    /// degree at this weight was computed.
    pub cohomology: Option<i64>,
}

/// Cohomology with trivial coefficients of a truncated graded presentation.
///
/// Weights on the cochain side are reported as magnitudes: a cochain dual to
/// algebra elements of weights `w_1, ..., w_m` has weight `|w_1 + ... + w_m|`.
/// `algebra_sign` records the sign of the algebra weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub algebra_sign: i64,
    pub weight_bound: u32,
    pub max_degree: usize,
    pub min_generator_degree: Option<u32>,
    pub min_relation_degree: Option<u32>,
    pub algebra_dims: DimensionTable,
    /// `h[m]` is the table of `dim H^m` by cochain weight.
    pub h: Vec<DimensionTable>,
    pub cochains: Vec<DimensionTable>,
    pub euler: Vec<EulerAudit>,
}

impl CohomologyReport {
    pub fn h(&self, m: usize, weight: i64) -> u64 {
        self.h.get(m).map_or(0, |t| t.get(weight))
    }

    pub fn cochain_dim(&self, m: usize, weight: i64) -> u64 {
        self.cochains.get(m).map_or(0, |t| t.get(weight))
    }

    /// Checks `H^m = 0` in cochain weights below `n * m`, which holds when all
    /// generators have weight magnitude at least `n`.
    pub fn check_weight_vanishing(&self, n: u32) -> Result<()> {
        if let Some(min) = self.min_generator_degree {
            if min < n {
                return Err(Error::InvalidArgument(format!(
                    "generators of weight magnitude {min} are below the gap {n}"
                )));
            }
        }
        for (m, table) in self.h.iter().enumerate() {
            for (w, d) in table.nonzero() {
                if w < (n as i64) * m as i64 {
                    return Err(Error::Integrity(format!(
                        "H^{m} has dimension {d} in weight {w} below {n}*{m}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_relation_weights(&self) -> Result<()> {
        let Some(h2) = self.h.get(2) else { return Ok(()) };
        let floor = self.min_relation_degree.map_or(i64::MAX, |d| d as i64);
        match h2.nonzero().next() {
            Some((w, d)) if w < floor => Err(Error::Integrity(format!(
                "H^2 has dimension {d} in weight {w}, before the first relation"
            ))),
            _ => Ok(()),
        }
    }
}

/// Strictly increasing index tuples of length `m` with degree sum `w`.
fn cochain_basis(degrees: &[u32], m: usize, w: u32) -> Vec<Vec<usize>> {
    fn go(degrees: &[u32], start: usize, left: usize, w: u32, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            if w == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for i in start..degrees.len() {
            // degrees are sorted, so the remaining picks weigh at least left * degrees[i]
            if degrees[i] * left as u32 > w {
                break;
            }
            cur.push(i);
            go(degrees, i + 1, left - 1, w - degrees[i], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m == 0 {
        if w == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(degrees, 0, m, w, &mut Vec::new(), &mut out);
    out
}

/// Sign of the permutation sorting `v` (distinct entries), and the sorted tuple.
fn sort_with_sign(mut v: Vec<usize>) -> (Vec<usize>, bool) {
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    (v, odd)
}

/// The differential `C^m_w -> C^{m+1}_w`,
/// `(df)(x_0..x_m) = sum_{i<j} (-1)^{i+j} f([x_i,x_j], x_0, .., ^i, .., ^j, .., x_m)`.
fn differential(
    alg: &GradedQuotientAlgebra,
    source: &[Vec<usize>],
    target: &[Vec<usize>],
) -> SparseMatrix {
    let col: HashMap<&[usize], usize> = source.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
    for (r, t) in target.iter().enumerate() {
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                let br = alg.bracket_basis(t[i], t[j]);
                if br.is_empty() {
                    continue;
                }
                let rest: Vec<usize> = t
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i && k != j)
                    .map(|(_, &x)| x)
                    .collect();
                let base_odd = (i + j) % 2 == 1;
                for (k, c) in br {
                    if rest.contains(&k) {
                        continue;
                    }
                    let mut tuple = Vec::with_capacity(rest.len() + 1);
                    tuple.push(k);
                    tuple.extend_from_slice(&rest);
                    let (sorted, odd) = sort_with_sign(tuple);
                    let c = if odd != base_odd { -c } else { c };
                    let ci = col[sorted.as_slice()];
                    entries.push((r, ci, c));
                }
            }
        }
    }
    let mut m = SparseMatrix::zeros(target.len(), source.len());
    for (r, c, x) in entries {
        m.add_to(r, c, &x);
    }
    m
}

struct Slice {
    weight: u32,
    cochains: Vec<u64>,
    h: Vec<u64>,
}

/// Cohomology in cochain weight `w` and degrees `0..=max_degree`.
fn slice(alg: &GradedQuotientAlgebra, max_degree: usize, w: u32) -> Result<Slice> {
    let bases: Vec<Vec<Vec<usize>>> = (0..=max_degree + 1)
        .map(|m| cochain_basis(alg.degrees(), m, w))
        .collect();
    let diffs: Vec<SparseMatrix> = (0..=max_degree)
        .map(|m| differential(alg, &bases[m], &bases[m + 1]))
        .collect();
    for m in 0..max_degree {
        let dd = diffs[m + 1].mul(&diffs[m])?;
        if !dd.is_zero() {
            return Err(Error::Integrity(format!(
                "d^{} d^{m} is nonzero in weight {w}",
                m + 1
            )));
        }
    }
    let ranks: Vec<usize> = diffs.iter().map(rank).collect();
    let mut h = Vec::with_capacity(max_degree + 1);
    for m in 0..=max_degree {
        let below = if m == 0 { 0 } else { ranks[m - 1] };
        h.push((bases[m].len() - ranks[m] - below) as u64);
    }
    Ok(Slice {
        weight: w,
        cochains: bases[..=max_degree].iter().map(|b| b.len() as u64).collect(),
        h,
    })
}

/// Coefficients of `prod_i (1 - t^{d_i})` up to `t^bound`.
fn exterior_euler(degrees: &[u32], bound: u32) -> Result<Vec<i64>> {
    let mut poly = vec![0i64; bound as usize + 1];
    poly[0] = 1;
    for &d in degrees {
        for k in (d as usize..=bound as usize).rev() {
            poly[k] = poly[k]
                .checked_sub(poly[k - d as usize])
                .ok_or_else(|| Error::Overflow("exterior algebra Euler characteristic".into()))?;
        }
    }
    Ok(poly)
}

/// Chevalley-Eilenberg cohomology with trivial coefficients, degrees
/// `0..=max_degree`, cochain weights up to `|weight_bound|`.
///
/// Weight `w` uses the quotient by everything of weight magnitude above the
/// bound; the differential preserves weight and all generators have nonzero
/// weight, so deeper components never meet a weight-`w` cochain. Weight
/// slices are computed in parallel. `d^2 = 0`, the Euler characteristic, the
/// weight-vanishing bound and the relation-weight bound are checked on every
/// slice.
pub fn ce_cohomology(
    pres: &GradedLiePresentation,
    max_degree: usize,
    weight_bound: i64,
) -> Result<CohomologyReport> {
    let alg = build_quotient(&truncated(pres, weight_bound)?)?;
    cohomology_of(&alg, max_degree)
}

fn truncated(pres: &GradedLiePresentation, weight_bound: i64) -> Result<GradedLiePresentation> {
    let bound = pres.generators().check_bound(weight_bound)?;
    if bound as u64 > pres.weight_bound().unsigned_abs() {
        return Err(Error::InvalidBound(format!(
            "bound {weight_bound} lies beyond the presentation bound {}",
            pres.weight_bound()
        )));
    }
    pres.with_bound(weight_bound)
}

/// As [`ce_cohomology`] for an already built quotient.
pub fn cohomology_of(alg: &GradedQuotientAlgebra, max_degree: usize) -> Result<CohomologyReport> {
    if max_degree > MAX_DEGREE {
        return Err(Error::UnsupportedDegree(max_degree));
    }
    let bound = alg.bound();
    let slices: Vec<Slice> = (1..=bound)
        .into_par_iter()
        .map(|w| slice(alg, max_degree, w))
        .collect::<Result<_>>()?;
    let mut h = vec![DimensionTable::zeros(1, 1, bound); max_degree + 1];
    let mut cochains = h.clone();
    h[0] = DimensionTable::zeros(1, 0, bound);
    h[0].set(0, 1);
    cochains[0] = h[0].clone();
    for s in &slices {
        for m in 0..=max_degree {
            h[m].set(s.weight as i64, s.h[m]);
            cochains[m].set(s.weight as i64, s.cochains[m]);
        }
    }

    let expected = exterior_euler(alg.degrees(), bound)?;
    let lightest: Option<u32> = (alg.dim() > max_degree)
        .then(|| alg.degrees()[..=max_degree].iter().sum());
    let mut euler = Vec::new();
    for s in &slices {
        let w = s.weight;
        let alt = |v: &[u64]| -> i64 {
            v.iter()
                .enumerate()
                .map(|(m, &d)| if m % 2 == 0 { d as i64 } else { -(d as i64) })
                .sum()
        };
        // no cochains above max_degree: fewer basis elements than max_degree + 1,
        // or the max_degree + 1 lightest already exceed w
        let complete = lightest.map_or(true, |s| s > w);
        let audit = EulerAudit {
            weight: w as i64,
            expected: expected[w as usize],
            cochains: alt(&s.cochains),
            cohomology: complete.then(|| alt(&s.h)),
        };
        if complete && (audit.cochains != audit.expected || audit.cohomology != Some(audit.expected)) {
            return Err(Error::Integrity(format!(
                "Euler characteristic mismatch in weight {w}: {audit:?}"
            )));
        }
        euler.push(audit);
    }

    let pres = alg.presentation();
    let report = CohomologyReport {
        algebra_sign: alg.sign(),
        weight_bound: bound,
        max_degree,
        min_generator_degree: pres.generators().min_degree(),
        min_relation_degree: pres.min_relation_degree(),
        algebra_dims: alg.dims(),
        h,
        cochains,
        euler,
    };
    if let Some(n) = report.min_generator_degree {
        report.check_weight_vanishing(n)?;
    }
    report.check_relation_weights()?;
    Ok(report)
}

/// `dim H^m(G, Q(n))` for the group whose unipotent radical has Lie algebra
/// given by `pres`, where `V_weight = -2n` is the weight of `Q(n)`.
///
/// Only the reductive invariants of `H^m(u) (x) V` survive, and those are the
/// cochains of weight `-V_weight`: `Q(n)` pairs with the weight `2n` part of
/// `H^m(u)`.
pub fn completed_group_cohomology(pres: &GradedLiePresentation, v_weight: i64, m: usize) -> Result<u64> {
    if v_weight % 2 != 0 {
        return Err(Error::OddWeight(v_weight));
    }
    if m > MAX_DEGREE {
        return Err(Error::UnsupportedDegree(m));
    }
    let w = -v_weight;
    if w == 0 {
        return Ok(u64::from(m == 0));
    }
    if w < 0 || m == 0 {
        return Ok(0);
    }
    let sign = pres.generators().sign().unwrap_or(-1);
    let alg = build_quotient(&truncated(pres, sign * w)?)?;
    Ok(slice(&alg, m, w as u32)?.h[m])
}
