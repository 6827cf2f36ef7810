use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::quotient::GradedQuotientAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{kernel_basis, solve, Scalar, SparseMatrix, Vector};
use crate::freelie::Word;

/// A finite-dimensional weight-graded module over a truncated quotient.
///
/// Given by one action matrix per generator. A basis element of weight `a`
/// is sent by a generator of weight `g` into weight `a + g`. The action of a
/// Lyndon basis element is the iterated commutator along its standard
/// bracketing, so the module is valid once every relation acts as zero and
/// the module weights span at most the truncation bound (deeper elements then
/// act as zero for degree reasons).
#[derive(Clone, Debug)]
pub struct GradedModule {
    algebra: Arc<GradedQuotientAlgebra>,
    weights: Vec<i64>,
    generator_actions: Vec<SparseMatrix>,
    basis_actions: Vec<SparseMatrix>,
}

fn action_of_word(
    w: &Word,
    generators: &[SparseMatrix],
    memo: &mut HashMap<Word, SparseMatrix>,
) -> SparseMatrix {
    if let Some(m) = memo.get(w) {
        return m.clone();
    }
    let m = match w.standard_factorization() {
        None => generators[w.letters()[0] as usize].clone(),
        Some((u, v)) => {
            let a = action_of_word(&u, generators, memo);
            let b = action_of_word(&v, generators, memo);
            a.commutator(&b).expect("square matrices of one size")
        }
    };
    memo.insert(w.clone(), m.clone());
    m
}

impl GradedModule {
    /// Validated module from generator action matrices.
    pub fn from_generator_actions(
        algebra: Arc<GradedQuotientAlgebra>,
        weights: Vec<i64>,
        actions: Vec<SparseMatrix>,
    ) -> Result<Self> {
        let spec = algebra.generators().clone();
        let n = weights.len();
        if actions.len() != spec.len() {
            return Err(Error::InvalidAction(format!(
                "{} action matrices for {} generators",
                actions.len(),
                spec.len()
            )));
        }
        for (g, m) in actions.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(Error::InvalidAction(format!(
                    "action of `{}` is {}x{}, module has dimension {n}",
                    spec.label(g),
                    m.rows(),
                    m.cols()
                )));
            }
            let gw = spec.generators()[g].weight;
            if let Some(((r, c), _)) = m.iter().find(|((r, c), _)| weights[*r] != weights[*c] + gw) {
                return Err(Error::InvalidAction(format!(
                    "action of `{}` sends weight {} to weight {}",
                    spec.label(g),
                    weights[c],
                    weights[r]
                )));
            }
        }
        if let (Some(lo), Some(hi)) = (weights.iter().min(), weights.iter().max()) {
            if (hi - lo) as u64 > algebra.bound() as u64 {
                return Err(Error::InvalidAction(format!(
                    "module weights span {}, beyond the algebra truncation {}",
                    hi - lo,
                    algebra.bound()
                )));
            }
        }
        let mut memo = HashMap::new();
        for (i, r) in algebra.presentation().relations().iter().enumerate() {
            let mut total = SparseMatrix::zeros(n, n);
            for (w, c) in r.terms() {
                total = total.add(&action_of_word(w, &actions, &mut memo).scale(c))?;
            }
            if !total.is_zero() {
                return Err(Error::InvalidAction(format!("relation {} does not act as zero", i + 1)));
            }
        }
        let basis_actions = algebra
            .basis()
            .iter()
            .map(|b| action_of_word(&b.word, &actions, &mut memo))
            .collect();
        Ok(GradedModule {
            algebra,
            weights,
            generator_actions: actions,
            basis_actions,
        })
    }

    /// Trivial action on basis vectors of the given weights.
    pub fn trivial(algebra: Arc<GradedQuotientAlgebra>, weights: Vec<i64>) -> Result<Self> {
        let n = weights.len();
        let actions = vec![SparseMatrix::zeros(n, n); algebra.generators().len()];
        Self::from_generator_actions(algebra, weights, actions)
    }

    /// The algebra acting on itself by brackets.
    pub fn adjoint(algebra: Arc<GradedQuotientAlgebra>) -> Result<Self> {
        let n = algebra.dim();
        let weights: Vec<i64> = (0..n).map(|i| algebra.weight(i)).collect();
        let free = algebra.free_algebra();
        let mut actions = Vec::new();
        for g in 0..algebra.generators().len() {
            let image = algebra.reduce(&free.generator(g))?;
            let mut m = SparseMatrix::zeros(n, n);
            for j in 0..n {
                let unit = Vector::from_entries(n, [(j, Scalar::one())]);
                for (i, c) in algebra.bracket(&image, &unit)?.iter() {
                    m.set(i, j, c.clone());
                }
            }
            actions.push(m);
        }
        Self::from_generator_actions(algebra, weights, actions)
    }

    pub fn algebra(&self) -> &Arc<GradedQuotientAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn generator_actions(&self) -> &[SparseMatrix] {
        &self.generator_actions
    }

    /// Action matrix of the i-th quotient basis element.
    pub fn basis_action(&self, i: usize) -> &SparseMatrix {
        &self.basis_actions[i]
    }

    /// `u . a` for `u` in the algebra.
    pub fn act(&self, u: &Vector, a: &Vector) -> Result<Vector> {
        if u.len() != self.algebra.dim() || a.len() != self.dim() {
            return Err(Error::DimensionMismatch("action operands".into()));
        }
        let mut out = Vector::zeros(self.dim());
        for (i, c) in u.iter() {
            for (k, x) in self.basis_actions[i].mul_vec(a)?.iter() {
                out.add_to(k, &(c * x));
            }
        }
        Ok(out)
    }
}

/// A degree-one cochain with values in a module, shifting weights by `weight`.
///
/// Column `j` of `values` is the value on the j-th quotient basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    pub weight: i64,
    pub values: SparseMatrix,
}

impl Cocycle {
    pub fn zero(module: &GradedModule, weight: i64) -> Self {
        Cocycle {
            weight,
            values: SparseMatrix::zeros(module.dim(), module.algebra().dim()),
        }
    }

    pub fn value(&self, j: usize) -> Vector {
        self.values.column(j)
    }

    pub fn add(&self, other: &Cocycle) -> Result<Cocycle> {
        if self.weight != other.weight {
            return Err(Error::DimensionMismatch(format!(
                "cochains of weights {} and {}",
                self.weight, other.weight
            )));
        }
        Ok(Cocycle {
            weight: self.weight,
            values: self.values.add(&other.values)?,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Cocycle {
        Cocycle {
            weight: self.weight,
            values: self.values.scale(c),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_zero()
    }

    fn check_shape(&self, module: &GradedModule) -> Result<()> {
        let alg = module.algebra();
        if self.values.rows() != module.dim() || self.values.cols() != alg.dim() {
            return Err(Error::DimensionMismatch(format!(
                "cochain is {}x{}, expected {}x{}",
                self.values.rows(),
                self.values.cols(),
                module.dim(),
                alg.dim()
            )));
        }
        if let Some(((i, j), _)) = self
            .values
            .iter()
            .find(|((i, j), _)| module.weights()[*i] != alg.weight(*j) + self.weight)
        {
            return Err(Error::NotACocycle(format!(
                "value on `{}` has a component of weight {}, expected {}",
                alg.basis()[j].label,
                module.weights()[i],
                alg.weight(j) + self.weight
            )));
        }
        Ok(())
    }

    /// Checks `f([u,v]) = u.f(v) - v.f(u)` on all pairs of basis elements.
    pub fn check(&self, module: &GradedModule) -> Result<()> {
        self.check_shape(module)?;
        let alg = module.algebra();
        let n = alg.dim();
        for i in 0..n {
            for j in i + 1..n {
                let mut lhs = Vector::zeros(module.dim());
                for (k, c) in alg.bracket_basis(i, j) {
                    for (a, x) in self.value(k).iter() {
                        lhs.add_to(a, &(&c * x));
                    }
                }
                let ufv = module.basis_action(i).mul_vec(&self.value(j))?;
                let vfu = module.basis_action(j).mul_vec(&self.value(i))?;
                for (a, x) in ufv.iter() {
                    lhs.add_to(a, &-x);
                }
                for (a, x) in vfu.iter() {
                    lhs.add_to(a, x);
                }
                if !lhs.is_zero() {
                    return Err(Error::NotACocycle(format!(
                        "identity fails on `{}`, `{}`",
                        alg.basis()[i].label,
                        alg.basis()[j].label
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The coboundary `u -> u.a` of a module element `a` of weight `weight`.
pub fn coboundary(module: &GradedModule, a: &Vector, weight: i64) -> Result<Cocycle> {
    if a.len() != module.dim() {
        return Err(Error::DimensionMismatch("coboundary argument".into()));
    }
    if let Some((i, _)) = a.iter().find(|(i, _)| module.weights()[*i] != weight) {
        return Err(Error::InvalidArgument(format!(
            "component of weight {} in an element of weight {weight}",
            module.weights()[i]
        )));
    }
    let alg = module.algebra();
    let mut values = SparseMatrix::zeros(module.dim(), alg.dim());
    for j in 0..alg.dim() {
        for (i, x) in module.basis_action(j).mul_vec(a)?.iter() {
            values.set(i, j, x.clone());
        }
    }
    Ok(Cocycle { weight, values })
}

/// Unknowns of a weight-`weight` cochain: pairs (module index, basis index)
/// whose weights match.
fn cochain_slots(module: &GradedModule, weight: i64) -> Vec<(usize, usize)> {
    let alg = module.algebra();
    let mut slots = Vec::new();
    for j in 0..alg.dim() {
        for i in 0..module.dim() {
            if module.weights()[i] == alg.weight(j) + weight {
                slots.push((i, j));
            }
        }
    }
    slots
}

/// Basis of the weight-`weight` 1-cocycles, from the kernel of the cocycle
/// identity viewed as a linear system.
pub fn cocycle_space(module: &GradedModule, weight: i64) -> Result<Vec<Cocycle>> {
    let alg = module.algebra();
    let slots = cochain_slots(module, weight);
    let slot_index: HashMap<(usize, usize), usize> = slots.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let n = alg.dim();
    let da = module.dim();
    let mut rows: Vec<(usize, usize, Scalar)> = Vec::new();
    let mut row = 0;
    for i in 0..n {
        for j in i + 1..n {
            // f([e_i,e_j]) - e_i.f(e_j) + e_j.f(e_i), one row per module coordinate
            let mut eq: Vec<HashMap<usize, Scalar>> = vec![HashMap::new(); da];
            let mut push = |a: usize, slot: Option<&usize>, c: Scalar| {
                if let Some(&s) = slot {
                    let e = eq[a].entry(s).or_insert_with(Scalar::zero);
                    *e += c;
                }
            };
            for (k, c) in alg.bracket_basis(i, j) {
                for a in 0..da {
                    push(a, slot_index.get(&(a, k)), c.clone());
                }
            }
            for ((a, b), x) in module.basis_action(i).iter() {
                push(a, slot_index.get(&(b, j)), -x.clone());
            }
            for ((a, b), x) in module.basis_action(j).iter() {
                push(a, slot_index.get(&(b, i)), x.clone());
            }
            for coords in eq {
                if coords.values().any(|c| !c.is_zero()) {
                    for (s, c) in coords {
                        rows.push((row, s, c));
                    }
                    row += 1;
                }
            }
        }
    }
    let mut m = SparseMatrix::zeros(row, slots.len());
    for (r, c, x) in rows {
        m.add_to(r, c, &x);
    }
    Ok(kernel_basis(&m)
        .into_iter()
        .map(|v| {
            let mut values = SparseMatrix::zeros(da, n);
            for (k, x) in v.iter() {
                let (i, j) = slots[k];
                values.set(i, j, x.clone());
            }
            Cocycle { weight, values }
        })
        .collect())
}

/// Whether `f - g` is a coboundary.
pub fn cohomologous(module: &GradedModule, f: &Cocycle, g: &Cocycle) -> Result<bool> {
    f.check_shape(module)?;
    g.check_shape(module)?;
    if f.weight != g.weight {
        return Ok(f.is_zero() && g.is_zero());
    }
    let diff = f.add(&g.scale(&-Scalar::one()))?;
    let alg = module.algebra();
    let da = module.dim();
    let unknowns: Vec<usize> = (0..da).filter(|&i| module.weights()[i] == f.weight).collect();
    let mut m = SparseMatrix::zeros(da * alg.dim(), unknowns.len());
    for (col, &a) in unknowns.iter().enumerate() {
        for j in 0..alg.dim() {
            for ((i, b), x) in module.basis_action(j).iter() {
                if b == a {
                    m.add_to(j * da + i, col, x);
                }
            }
        }
    }
    let mut rhs = Vector::zeros(da * alg.dim());
    for ((i, j), x) in diff.values.iter() {
        rhs.set(j * da + i, x.clone());
    }
    Ok(solve(&m, &rhs)?.is_some())
}

/// `0 -> A -> E -> K -> 0` with `K` trivial of rank one in the last coordinate.
#[derive(Clone, Debug)]
pub struct ModuleExtensionDatum {
    extension: GradedModule,
    sub: GradedModule,
}

impl ModuleExtensionDatum {
    /// Validates `E` as a module, the last coordinate as the trivial quotient
    /// and the rest as a submodule.
    pub fn new(
        algebra: Arc<GradedQuotientAlgebra>,
        weights: Vec<i64>,
        actions: Vec<SparseMatrix>,
    ) -> Result<Self> {
        let n = weights.len();
        if n == 0 {
            return Err(Error::InvalidAction("an extension needs the quotient coordinate".into()));
        }
        let k = n - 1;
        for (g, m) in actions.iter().enumerate() {
            if m.iter().any(|((r, _), _)| r == k) {
                return Err(Error::InvalidAction(format!(
                    "generator {} moves the lift off the submodule; the quotient must be trivial",
                    g + 1
                )));
            }
        }
        let extension = GradedModule::from_generator_actions(algebra.clone(), weights.clone(), actions.clone())?;
        let sub_actions = actions
            .iter()
            .map(|m| {
                let inner = m.iter().filter(|((r, c), _)| *r < k && *c < k);
                SparseMatrix::from_triplets(k, k, inner.map(|((r, c), x)| (r, c, x.clone())))
            })
            .collect();
        let sub = GradedModule::from_generator_actions(algebra, weights[..k].to_vec(), sub_actions)?;
        Ok(ModuleExtensionDatum { extension, sub })
    }

    pub fn extension(&self) -> &GradedModule {
        &self.extension
    }

    pub fn submodule(&self) -> &GradedModule {
        &self.sub
    }

    /// Weight of the trivial quotient `K`.
    pub fn quotient_weight(&self) -> i64 {
        *self.extension.weights().last().expect("nonempty")
    }

    /// The split extension `A + K`.
    pub fn split(sub: &GradedModule, quotient_weight: i64) -> Result<Self> {
        let zero = Cocycle::zero(sub, quotient_weight);
        extension_from_cocycle(sub, &zero)
    }
}

/// `f(u) = u.e` for the lift `e = (0, ..., 0, 1)` of the generator of `K`.
pub fn cocycle_from_extension(ext: &ModuleExtensionDatum) -> Cocycle {
    cocycle_from_extension_with_lift(ext, &Vector::zeros(ext.sub.dim())).expect("valid lift")
}

/// As [`cocycle_from_extension`] with the lift `e = (a, 1)`.
pub fn cocycle_from_extension_with_lift(ext: &ModuleExtensionDatum, a: &Vector) -> Result<Cocycle> {
    let k = ext.sub.dim();
    if a.len() != k {
        return Err(Error::DimensionMismatch("lift".into()));
    }
    let mut e = Vector::zeros(k + 1);
    for (i, x) in a.iter() {
        e.set(i, x.clone());
    }
    e.set(k, Scalar::one());
    let alg = ext.extension.algebra();
    let mut values = SparseMatrix::zeros(k, alg.dim());
    for j in 0..alg.dim() {
        for (i, x) in ext.extension.basis_action(j).mul_vec(&e)?.iter() {
            values.set(i, j, x.clone());
        }
    }
    Ok(Cocycle {
        weight: ext.quotient_weight(),
        values,
    })
}

/// `u.(a, k) = (u.a + k f(u), 0)`.
pub fn extension_from_cocycle(sub: &GradedModule, f: &Cocycle) -> Result<ModuleExtensionDatum> {
    f.check(sub)?;
    let alg = sub.algebra().clone();
    let k = sub.dim();
    let free = alg.free_algebra();
    let mut actions = Vec::new();
    for (g, m) in sub.generator_actions().iter().enumerate() {
        let image = alg.reduce(&free.generator(g))?;
        let mut t: Vec<(usize, usize, Scalar)> = m.iter().map(|((r, c), x)| (r, c, x.clone())).collect();
        let mut column = Vector::zeros(k);
        for (j, c) in image.iter() {
            for (i, x) in f.value(j).iter() {
                column.add_to(i, &(c * x));
            }
        }
        t.extend(column.iter().map(|(i, x)| (i, k, x.clone())));
        actions.push(SparseMatrix::from_triplets(k + 1, k + 1, t));
    }
    let mut weights = sub.weights().to_vec();
    weights.push(f.weight);
    ModuleExtensionDatum::new(alg, weights, actions)
}

/// Whether the extension splits, i.e. its cocycle is a coboundary.
pub fn is_trivial_extension(ext: &ModuleExtensionDatum) -> bool {
    let f = cocycle_from_extension(ext);
    let zero = Cocycle::zero(&ext.sub, f.weight);
    cohomologous(&ext.sub, &f, &zero).expect("cocycle of this extension")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;
    use crate::freelie::GeneratorSpec;
    use crate::lieco::{build_quotient, GradedLiePresentation};

    fn rank_one() -> Arc<GradedQuotientAlgebra> {
        let p = GradedLiePresentation::free(GeneratorSpec::new([("x", -2)]).unwrap(), -4).unwrap();
        Arc::new(build_quotient(&p).unwrap())
    }

    fn rank_two(bound: i64) -> Arc<GradedQuotientAlgebra> {
        let p = GradedLiePresentation::free(GeneratorSpec::new([("x", -1), ("y", -1)]).unwrap(), bound).unwrap();
        Arc::new(build_quotient(&p).unwrap())
    }

    #[test]
    fn split_extension_has_zero_cocycle() {
        let alg = rank_one();
        let a = GradedModule::trivial(alg, vec![-2]).unwrap();
        let ext = ModuleExtensionDatum::split(&a, 0).unwrap();
        assert!(cocycle_from_extension(&ext).is_zero());
        assert!(is_trivial_extension(&ext));
    }

    #[test]
    fn off_diagonal_entry_is_the_cocycle() {
        let alg = rank_one();
        let c = int(7);
        let action = SparseMatrix::from_triplets(2, 2, [(0, 1, c.clone())]);
        let ext = ModuleExtensionDatum::new(alg, vec![-2, 0], vec![action]).unwrap();
        let f = cocycle_from_extension(&ext);
        assert_eq!(f.value(0).get(0), c);
        assert!(!is_trivial_extension(&ext));
    }

    #[test]
    fn changing_lift_adds_coboundary() {
        let alg = rank_two(-3);
        let adj = GradedModule::adjoint(alg.clone()).unwrap();
        let space = cocycle_space(&adj, -1).unwrap();
        assert!(!space.is_empty());
        let f = space.iter().fold(Cocycle::zero(&adj, -1), |acc, c| acc.add(c).unwrap());
        let ext = extension_from_cocycle(&adj, &f).unwrap();
        assert_eq!(cocycle_from_extension(&ext), f);
        let a = Vector::from_entries(adj.dim(), [(0, int(2)), (1, int(-3))]);
        let shifted = cocycle_from_extension_with_lift(&ext, &a).unwrap();
        let expected = f.add(&coboundary(&adj, &a, -1).unwrap()).unwrap();
        assert_eq!(shifted, expected);
        assert!(cohomologous(&adj, &shifted, &f).unwrap());
    }

    #[test]
    fn rejects_non_cocycles_and_bad_actions() {
        let alg = rank_two(-2);
        let triv = GradedModule::trivial(alg.clone(), vec![-2]).unwrap();
        // f([x,y]) = 1 with f(x) = f(y) = 0 breaks the identity
        let idx = alg.indices_of_degree(2).start;
        let bad = Cocycle {
            weight: 0,
            values: SparseMatrix::from_triplets(1, alg.dim(), [(0, idx, int(1))]),
        };
        assert!(matches!(extension_from_cocycle(&triv, &bad), Err(Error::NotACocycle(_))));
        let ungraded = SparseMatrix::from_triplets(2, 2, [(0, 0, int(1))]);
        assert!(GradedModule::from_generator_actions(alg, vec![0, -1], vec![ungraded.clone(), ungraded]).is_err());
    }

    #[test]
    fn trivial_coefficients_cocycles_kill_brackets() {
        let alg = rank_two(-2);
        let triv = GradedModule::trivial(alg.clone(), vec![-1]).unwrap();
        // H^1 with trivial coefficients is dual to the generators
        let space = cocycle_space(&triv, 0).unwrap();
        assert_eq!(space.len(), 2);
        for f in &space {
            f.check(&triv).unwrap();
        }
    }
}
