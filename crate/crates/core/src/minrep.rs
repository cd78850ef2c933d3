//! Minuscule modules with signed Chevalley operators.
//!
//! For a minuscule weight `ω` the weights of `V(ω)` form the single orbit
//! `Wω`, each with multiplicity one. Root vectors act by
//!
//! ```text
//! X_γ v_μ = ε(γ, μ - ω) v_{μ+γ}    when μ + γ ∈ Wω, else 0
//! ```
//!
//! where `ε` is a bimultiplicative sign on the root lattice with
//! `ε(a, b) ε(b, a) = (-1)^{(a, b)}` and `ε(a, a) = (-1)^{(a, a)/2}`. With this
//! choice `[X_γ, X_{-γ}]` acts as `-⟨μ, γ^∨⟩`, so the Chevalley generators
//! are `e_i = X_{α_i}`, `f_i = -X_{-α_i}` and `h_i = [e_i, f_i]`.

use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{q, RationalJson, Q};
use crate::rootlat::{self, Basis, LatticeVector, RootSystemData, Weight, WeylOrbitData};

/// Sign table on simple roots, extended bimultiplicatively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignCocycle {
    table: Vec<Vec<i8>>,
}

impl SignCocycle {
    /// `ε(α_i, α_j) = (-1)^{(α_i, α_j)}` for `i < j`, `+1` for `i > j`,
    /// `-1` on the diagonal.
    pub fn standard(rootsys: &RootSystemData) -> Self {
        let c = rootsys.cartan();
        let r = rootsys.rank();
        let table = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| match i.cmp(&j) {
                        std::cmp::Ordering::Equal => -1,
                        std::cmp::Ordering::Less => {
                            if c[i][j] % 2 == 0 {
                                1
                            } else {
                                -1
                            }
                        }
                        std::cmp::Ordering::Greater => 1,
                    })
                    .collect()
            })
            .collect();
        SignCocycle { table }
    }

    pub fn table(&self) -> &[Vec<i8>] {
        &self.table
    }

    /// `ε(a, b)` for root-lattice elements in simple-root coordinates.
    pub fn eval(&self, a: &[i64], b: &[i64]) -> i8 {
        let mut parity = 0i64;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if self.table[i][j] < 0 {
                    parity += x * y;
                }
            }
        }
        if parity.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// Checks the defining properties of the table against the Cartan matrix.
    pub fn is_valid_for(&self, rootsys: &RootSystemData) -> bool {
        let c = rootsys.cartan();
        let r = rootsys.rank();
        (0..r).all(|i| {
            self.table[i][i] == -1
                && (0..r).all(|j| {
                    let prod = self.table[i][j] * self.table[j][i];
                    let expected = if c[i][j] % 2 == 0 { 1 } else { -1 };
                    i == j || prod == expected
                })
        })
    }
}

/// Partial signed map on basis indices: `k ↦ sign · v_target`.
pub type SignedMap = Vec<Option<(usize, i8)>>;

/// A Lie algebra element acting on the module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    E(usize),
    F(usize),
    H(usize),
    /// Root vector `X_γ`, by index into [`MinusculeModule::roots`].
    Root(usize),
}

/// Finitely supported vector of the module, dense over the weight basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleVector(pub Vec<Q>);

impl ModuleVector {
    pub fn zeros(dim: usize) -> Self {
        ModuleVector(vec![Q::zero(); dim])
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[k] = q(1);
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i)
    }

    pub fn add(&self, other: &ModuleVector) -> ModuleVector {
        ModuleVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &ModuleVector) -> ModuleVector {
        ModuleVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Q) -> ModuleVector {
        ModuleVector(self.0.iter().map(|a| a * s).collect())
    }

    pub fn add_scaled(&mut self, other: &ModuleVector, s: &Q) {
        if s.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += b * s;
            }
        }
    }
}

/// The module `V(ω)` for a minuscule `ω = ω_node`, graded by `α_node`.
#[derive(Debug, Clone)]
pub struct MinusculeModule {
    rootsys: RootSystemData,
    node: usize,
    highest_weight: Weight,
    weights: WeylOrbitData,
    /// Simple-root coordinates of `ω - μ`.
    depth: Vec<Vec<i64>>,
    /// Positive roots, then negatives, in simple-root coordinates.
    roots: Vec<Vec<i64>>,
    root_index: HashMap<Vec<i64>, usize>,
    root_action: Vec<SignedMap>,
    raise: Vec<SignedMap>,
    lower: Vec<SignedMap>,
    grade: Vec<usize>,
    cocycle: SignCocycle,
}

impl MinusculeModule {
    /// Builds the module and verifies every Chevalley and Serre relation.
    pub fn build(rootsys: RootSystemData, omega: &Weight) -> Result<Self> {
        let module = Self::build_unchecked(rootsys, omega)?;
        let report = verify_module_relations(&module);
        if let Some(fail) = report.first_failure() {
            return Err(Error::RelationFailure(format!("{}: {}", fail.name, fail.witness.clone().unwrap_or_default())));
        }
        Ok(module)
    }

    pub(crate) fn build_unchecked(rootsys: RootSystemData, omega: &Weight) -> Result<Self> {
        let r = rootsys.rank();
        if omega.rank() != r {
            return Err(Error::RankMismatch { left: omega.rank(), right: r });
        }
        let theta_pairing: i64 = rootsys.highest_root().iter().zip(&omega.0).map(|(a, b)| a * b).sum();
        if !omega.is_dominant() || theta_pairing > 1 {
            return Err(Error::NotMinuscule(omega.0.clone()));
        }
        let Some(node) = omega.0.iter().position(|&x| x == 1) else {
            return Err(Error::InvalidWeight("the zero weight has no grading".into()));
        };
        let weights = rootsys.weyl_orbit(&omega.to_lattice())?;
        if let Some(bad) = weights.elements.iter().find(|w| !rootlat::is_minuscule_element(&rootsys, w)) {
            return Err(Error::NotMinuscule(bad.0.clone()));
        }
        let depth: Vec<Vec<i64>> = weights
            .elements
            .iter()
            .map(|mu| rootsys.weight_to_root(&omega.sub(mu)).expect("orbit lies in ω + Q(R)"))
            .collect();
        let grade = depth.iter().map(|d| d[node] as usize).collect();
        let roots = rootsys.roots();
        let root_index: HashMap<Vec<i64>, usize> = roots.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        let cocycle = SignCocycle::standard(&rootsys);
        let root_action: Vec<SignedMap> = roots
            .iter()
            .map(|gamma| {
                let gw = rootsys.root_to_weight(gamma);
                weights
                    .elements
                    .iter()
                    .enumerate()
                    .map(|(k, mu)| {
                        let target = weights.index_of(&mu.add(&gw))?;
                        // μ - ω = -depth; ε is bimultiplicative with values ±1,
                        // so the sign of the argument does not matter.
                        Some((target, cocycle.eval(gamma, &depth[k])))
                    })
                    .collect()
            })
            .collect();
        let simple = |i: usize, sign: i64| -> Vec<i64> { (0..r).map(|j| if i == j { sign } else { 0 }).collect() };
        let raise = (0..r).map(|i| root_action[root_index[&simple(i, 1)]].clone()).collect();
        let lower = (0..r)
            .map(|i| root_action[root_index[&simple(i, -1)]].iter().map(|e| e.map(|(t, s)| (t, -s))).collect())
            .collect();
        Ok(MinusculeModule {
            rootsys,
            node,
            highest_weight: omega.clone(),
            weights,
            depth,
            roots,
            root_index,
            root_action,
            raise,
            lower,
            grade,
            cocycle,
        })
    }

    pub fn rootsys(&self) -> &RootSystemData {
        &self.rootsys
    }

    /// The grading node `r`, with `ω = ω_r`.
    pub fn node(&self) -> usize {
        self.node
    }

    pub fn highest_weight(&self) -> &Weight {
        &self.highest_weight
    }

    pub fn weights(&self) -> &WeylOrbitData {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, k: usize) -> &Weight {
        &self.weights.elements[k]
    }

    pub fn cocycle(&self) -> &SignCocycle {
        &self.cocycle
    }

    /// Simple-root coordinates of `ω - μ_k`.
    pub fn depth(&self, k: usize) -> &[i64] {
        &self.depth[k]
    }

    pub fn grade_of(&self, k: usize) -> usize {
        self.grade[k]
    }

    pub fn max_grade(&self) -> usize {
        self.grade.iter().copied().max().unwrap_or(0)
    }

    /// Basis indices of `V_n`, in orbit order.
    pub fn grade_indices(&self, n: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.grade[k] == n).collect()
    }

    pub fn grade_dims(&self) -> Vec<usize> {
        (0..=self.max_grade()).map(|n| self.grade_indices(n).len()).collect()
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root_index(&self, gamma: &[i64]) -> Option<usize> {
        self.root_index.get(gamma).copied()
    }

    pub fn root_table(&self, idx: usize) -> &SignedMap {
        &self.root_action[idx]
    }

    pub fn raise_table(&self, i: usize) -> &SignedMap {
        &self.raise[i]
    }

    pub fn lower_table(&self, i: usize) -> &SignedMap {
        &self.lower[i]
    }

    /// `⟨μ_k, α_i^∨⟩`.
    pub fn coroot_pairing(&self, k: usize, i: usize) -> i64 {
        self.weights.elements[k].0[i]
    }

    /// The root `μ_k - ω` identified with the basis vector `v_{μ_k}` of `V_1`.
    pub fn v1_root(&self, k: usize) -> Option<usize> {
        if self.grade[k] != 1 {
            return None;
        }
        let gamma: Vec<i64> = self.depth[k].iter().map(|x| -x).collect();
        self.root_index(&gamma)
    }

    /// Applies a signed map to a vector.
    pub fn apply_map(map: &SignedMap, x: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zeros(x.dim());
        for (k, c) in x.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some((t, s)) = map[k] {
                if s > 0 {
                    out.0[t] += c;
                } else {
                    out.0[t] -= c;
                }
            }
        }
        out
    }

    pub fn act(&self, op: Op, x: &ModuleVector) -> ModuleVector {
        match op {
            Op::E(i) => Self::apply_map(&self.raise[i], x),
            Op::F(i) => Self::apply_map(&self.lower[i], x),
            Op::Root(g) => Self::apply_map(&self.root_action[g], x),
            Op::H(i) => ModuleVector(x.0.iter().enumerate().map(|(k, c)| c * q(self.coroot_pairing(k, i))).collect()),
        }
    }

    /// Dense integer matrix of an operator; column `k` is the image of `v_k`.
    pub fn op_matrix(&self, op: Op) -> IntMatrix {
        let n = self.dim();
        let mut m = IntMatrix::zeros(n);
        let from_map = |m: &mut IntMatrix, map: &SignedMap| {
            for (k, e) in map.iter().enumerate() {
                if let Some((t, s)) = e {
                    m.set(*t, k, i64::from(*s));
                }
            }
        };
        match op {
            Op::E(i) => from_map(&mut m, &self.raise[i]),
            Op::F(i) => from_map(&mut m, &self.lower[i]),
            Op::Root(g) => from_map(&mut m, &self.root_action[g]),
            Op::H(i) => {
                for k in 0..n {
                    m.set(k, k, self.coroot_pairing(k, i));
                }
            }
        }
        m
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct WeightDto {
            index: usize,
            fundamental: Vec<i64>,
            simple_root: Vec<RationalJson>,
            grade: usize,
        }
        let weights: Vec<WeightDto> = self
            .weights
            .elements
            .iter()
            .enumerate()
            .map(|(k, w)| {
                let rc = self
                    .rootsys
                    .to_root_basis(&LatticeVector::from_ints(&w.0, Basis::FundamentalWeight))
                    .expect("rank matches");
                WeightDto {
                    index: k,
                    fundamental: w.0.clone(),
                    simple_root: rc.coords.iter().map(RationalJson::from).collect(),
                    grade: self.grade[k],
                }
            })
            .collect();
        let tables = |maps: &[SignedMap]| -> Vec<Vec<Option<(usize, i8)>>> { maps.to_vec() };
        serde_json::json!({
            "type": self.rootsys.label().to_string(),
            "highest_weight": self.highest_weight.0,
            "grading_node": self.node,
            "weights": weights,
            "raise": tables(&self.raise),
            "lower": tables(&self.lower),
        })
    }
}

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, data: vec![0; n * n] }
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.n + j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = self.data[i * n + l];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.data[l * n + j];
                    if b != 0 {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn scaled(&self, s: i64) -> IntMatrix {
        IntMatrix { n: self.n, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        IntMatrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn bracket(&self, other: &IntMatrix) -> IntMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    /// First column on which the two matrices differ.
    pub fn first_difference(&self, other: &IntMatrix) -> Option<usize> {
        (0..self.n).find(|&j| (0..self.n).any(|i| self.get(i, j) != other.get(i, j)))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

/// Pass/fail per relation family.
#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub families: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.families.iter().all(|f| f.passed)
    }

    pub fn first_failure(&self) -> Option<&RelationCheck> {
        self.families.iter().find(|f| !f.passed)
    }
}

struct FamilyCheck {
    name: &'static str,
    checked: usize,
    witness: Option<String>,
}

impl FamilyCheck {
    fn new(name: &'static str) -> Self {
        FamilyCheck { name, checked: 0, witness: None }
    }

    fn expect_eq(&mut self, lhs: &IntMatrix, rhs: &IntMatrix, what: impl FnOnce() -> String) {
        self.checked += 1;
        if self.witness.is_some() {
            return;
        }
        if let Some(col) = lhs.first_difference(rhs) {
            self.witness = Some(format!("{} fails on basis vector {col}", what()));
        }
    }

    fn finish(self) -> RelationCheck {
        RelationCheck {
            name: self.name.to_string(),
            passed: self.witness.is_none(),
            checked: self.checked,
            witness: self.witness,
        }
    }
}

/// Checks the Chevalley relations, the Serre relations and `X_γ² = 0`
/// as exact operator identities on every basis vector.
pub fn verify_module_relations(m: &MinusculeModule) -> RelationReport {
    let r = m.rootsys.rank();
    let c = m.rootsys.cartan();
    let e: Vec<IntMatrix> = (0..r).map(|i| m.op_matrix(Op::E(i))).collect();
    let f: Vec<IntMatrix> = (0..r).map(|i| m.op_matrix(Op::F(i))).collect();
    let h: Vec<IntMatrix> = (0..r).map(|i| m.op_matrix(Op::H(i))).collect();
    let zero = IntMatrix::zeros(m.dim());

    let mut he = FamilyCheck::new("[h_i,e_j] = C_ji e_j");
    let mut hf = FamilyCheck::new("[h_i,f_j] = -C_ji f_j");
    let mut ef = FamilyCheck::new("[e_i,f_j] = delta_ij h_i");
    let mut serre_e = FamilyCheck::new("(ad e_i)^(1-C_ji) e_j = 0");
    let mut serre_f = FamilyCheck::new("(ad f_i)^(1-C_ji) f_j = 0");
    for i in 0..r {
        for j in 0..r {
            he.expect_eq(&h[i].bracket(&e[j]), &e[j].scaled(c[j][i]), || format!("[h_{i},e_{j}]"));
            hf.expect_eq(&h[i].bracket(&f[j]), &f[j].scaled(-c[j][i]), || format!("[h_{i},f_{j}]"));
            let rhs = if i == j { h[i].clone() } else { zero.clone() };
            ef.expect_eq(&e[i].bracket(&f[j]), &rhs, || format!("[e_{i},f_{j}]"));
            if i != j {
                let times = (1 - c[j][i]) as usize;
                let mut ade = e[j].clone();
                let mut adf = f[j].clone();
                for _ in 0..times {
                    ade = e[i].bracket(&ade);
                    adf = f[i].bracket(&adf);
                }
                serre_e.expect_eq(&ade, &zero, || format!("Serre(e_{i},e_{j})"));
                serre_f.expect_eq(&adf, &zero, || format!("Serre(f_{i},f_{j})"));
            }
        }
    }
    let mut squares = FamilyCheck::new("X_gamma^2 = 0");
    for g in 0..m.roots.len() {
        let x = m.op_matrix(Op::Root(g));
        squares.expect_eq(&x.mul(&x), &zero, || format!("X_{:?}^2", m.roots[g]));
    }
    RelationReport {
        families: vec![he.finish(), hf.finish(), ef.finish(), serre_e.finish(), serre_f.finish(), squares.finish()],
    }
}

/// Restriction of `V` to the Levi factor `g'` obtained by deleting the
/// grading node.
#[derive(Debug, Clone, Serialize)]
pub struct LeviSummary {
    pub grade_dims: Vec<usize>,
    /// Index of the basis vector of weight `ω - α_r`.
    pub v1_highest_index: usize,
    pub v1_highest_weight: Weight,
    /// Nodes of the Dynkin diagram adjacent to the grading node.
    pub adjacent_nodes: Vec<usize>,
    /// `⟨ω - α_r, α_i^∨⟩` for `i ≠ r` as `(node, coefficient)` pairs.
    pub levi_weight: Vec<(usize, i64)>,
    /// `e_i v = 0` for all `i ≠ r`.
    pub is_levi_highest: bool,
    /// The `f_i`, `i ≠ r`, generate all of `V_1` from the vector.
    pub generates_v1: bool,
    /// The weight is the sum of fundamental weights at the adjacent nodes.
    pub weight_is_adjacent_sum: bool,
}

impl LeviSummary {
    pub fn holds(&self) -> bool {
        self.is_levi_highest && self.generates_v1 && self.weight_is_adjacent_sum
    }
}

pub fn levi_decomposition(m: &MinusculeModule, cut: usize) -> Result<LeviSummary> {
    let r = m.rootsys.rank();
    if cut >= r {
        return Err(Error::IndexOutOfRange { index: cut, rank: r });
    }
    if cut != m.node {
        return Err(Error::InvalidWeight(format!(
            "grading node {cut} differs from the node {} of the highest weight",
            m.node
        )));
    }
    let target =
        m.highest_weight.sub(&m.rootsys.root_to_weight(&(0..r).map(|j| i64::from(j == cut)).collect::<Vec<_>>()));
    let idx = m.weights.index_of(&target).ok_or_else(|| Error::InvalidWeight("ω - α_r is not a weight".into()))?;
    let adjacent_nodes = m.rootsys.neighbors(cut);
    let levi_weight: Vec<(usize, i64)> =
        (0..r).filter(|&i| i != cut && target.0[i] != 0).map(|i| (i, target.0[i])).collect();
    let is_levi_highest = (0..r).filter(|&i| i != cut).all(|i| m.raise[i][idx].is_none());
    let mut reached = vec![false; m.dim()];
    reached[idx] = true;
    let mut stack = vec![idx];
    while let Some(k) = stack.pop() {
        for i in (0..r).filter(|&i| i != cut) {
            if let Some((t, _)) = m.lower[i][k] {
                if !reached[t] {
                    reached[t] = true;
                    stack.push(t);
                }
            }
        }
    }
    let v1 = m.grade_indices(1);
    let generates_v1 = v1.iter().all(|&k| reached[k]) && reached.iter().filter(|&&x| x).count() == v1.len();
    let weight_is_adjacent_sum = levi_weight.iter().map(|&(i, _)| i).eq(adjacent_nodes.iter().copied())
        && levi_weight.iter().all(|&(_, c)| c == 1);
    Ok(LeviSummary {
        grade_dims: m.grade_dims(),
        v1_highest_index: idx,
        v1_highest_weight: target,
        adjacent_nodes,
        levi_weight,
        is_levi_highest,
        generates_v1,
        weight_is_adjacent_sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::Case;
    use crate::rootlat::CartanType;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn dimensions_and_grades() {
        let expected = [
            (Case::A4, vec![1, 6, 3]),
            (Case::D5, vec![1, 10, 5]),
            (Case::E6, vec![1, 16, 10]),
            (Case::E7, vec![1, 27, 27, 1]),
        ];
        for (case, dims) in expected {
            let m = case.module().unwrap();
            assert_eq!(m.dim(), case.dim());
            assert_eq!(m.grade_dims(), dims, "{case}");
            assert_eq!(m.grade_of(0), 0);
        }
    }

    #[test]
    fn cocycle_properties() {
        for case in Case::ALL {
            let rs = case.root_system();
            let eps = SignCocycle::standard(&rs);
            assert!(eps.is_valid_for(&rs));
            for a in rs.roots() {
                assert_eq!(eps.eval(&a, &a), -1);
                for b in rs.roots().iter().take(12) {
                    let sym = eps.eval(&a, b) * eps.eval(b, &a);
                    let expected = if rs.root_pairing(&a, b) % 2 == 0 { 1 } else { -1 };
                    assert_eq!(sym, expected);
                }
            }
        }
    }

    #[test]
    fn relations_hold_for_all_cases() {
        for case in Case::ALL {
            let m = case.module().unwrap();
            let report = verify_module_relations(&m);
            assert!(report.all_passed(), "{case}: {:?}", report.first_failure());
        }
    }

    #[test]
    fn flipped_sign_is_detected() {
        let mut m = Case::E6.module().unwrap();
        let i = 2;
        let k = (0..m.dim()).find(|&k| m.lower[i][k].is_some()).unwrap();
        let (t, s) = m.lower[i][k].unwrap();
        m.lower[i][k] = Some((t, -s));
        let report = verify_module_relations(&m);
        assert!(!report.all_passed());
        assert!(report
            .families
            .iter()
            .filter(|f| !f.passed)
            .any(|f| f.name.contains("[e_i,f_j]") || f.name.contains("Serre") || f.name.contains("(ad")));
    }

    #[test]
    fn non_minuscule_rejected() {
        let e7 = RootSystemData::new(CartanType::E(7)).unwrap();
        let err = MinusculeModule::build(e7.clone(), &Weight::fundamental(7, 0)).unwrap_err();
        assert!(matches!(err, Error::NotMinuscule(_)));
        let err = MinusculeModule::build(e7.clone(), &Weight(vec![0, 0, 0, 0, 0, 0, 2])).unwrap_err();
        assert!(matches!(err, Error::NotMinuscule(_)));
        assert!(MinusculeModule::build(e7, &Weight::zero(7)).is_err());
    }

    #[test]
    fn other_minuscule_weights_build() {
        // D5 vector representation and the other spinor
        let d5 = RootSystemData::new(CartanType::D(5)).unwrap();
        assert_eq!(MinusculeModule::build(d5.clone(), &Weight::fundamental(5, 0)).unwrap().dim(), 10);
        assert_eq!(MinusculeModule::build(d5, &Weight::fundamental(5, 3)).unwrap().dim(), 16);
        let a6 = RootSystemData::new(CartanType::A(6)).unwrap();
        assert_eq!(MinusculeModule::build(a6, &Weight::fundamental(6, 2)).unwrap().dim(), 35);
    }

    #[test]
    fn highest_weight_vector() {
        for case in Case::ALL {
            let m = case.module().unwrap();
            let v = ModuleVector::basis(m.dim(), 0);
            for i in 0..case.rank() {
                assert!(m.act(Op::E(i), &v).is_zero());
            }
            let w = m.act(Op::F(case.cut()), &v);
            let support: Vec<usize> = w.support().collect();
            assert_eq!(support.len(), 1);
            let k = support[0];
            assert!(crate::rational::is_unit(&w.0[k]));
            let expected = m.highest_weight().sub(
                &m.rootsys().root_to_weight(&(0..case.rank()).map(|j| i64::from(j == case.cut())).collect::<Vec<_>>()),
            );
            assert_eq!(m.weight(k), &expected);
        }
    }

    #[test]
    fn ef_commutator_on_random_basis_vectors() {
        let m = Case::E7.module().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let i = rng.gen_range(0..7);
            let k = rng.gen_range(0..m.dim());
            let v = ModuleVector::basis(m.dim(), k);
            let lhs = m.act(Op::E(i), &m.act(Op::F(i), &v)).sub(&m.act(Op::F(i), &m.act(Op::E(i), &v)));
            assert_eq!(lhs, v.scale(&q(m.coroot_pairing(k, i))));
        }
    }

    #[test]
    fn root_vectors_agree_with_commutators() {
        // [X_γ, X_δ] = ε(γ, δ) X_{γ+δ} for 20 seeded pairs with γ + δ a root.
        let m = Case::E7.module().unwrap();
        let rs = m.rootsys();
        let roots = m.roots().to_vec();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut tested = 0;
        while tested < 20 {
            let a = rng.gen_range(0..roots.len());
            let b = rng.gen_range(0..roots.len());
            let sum: Vec<i64> = roots[a].iter().zip(&roots[b]).map(|(x, y)| x + y).collect();
            let Some(s) = m.root_index(&sum) else { continue };
            assert_eq!(rs.root_pairing(&roots[a], &roots[b]), -1);
            let xa = m.op_matrix(Op::Root(a));
            let xb = m.op_matrix(Op::Root(b));
            let eps = i64::from(m.cocycle().eval(&roots[a], &roots[b]));
            assert_eq!(xa.bracket(&xb), m.op_matrix(Op::Root(s)).scaled(eps));
            tested += 1;
        }
        // [X_γ, X_{-γ}] = -H_γ
        for (g, gamma) in roots.iter().enumerate().take(63) {
            let neg: Vec<i64> = gamma.iter().map(|x| -x).collect();
            let ng = m.root_index(&neg).unwrap();
            let br = m.op_matrix(Op::Root(g)).bracket(&m.op_matrix(Op::Root(ng)));
            for k in 0..m.dim() {
                let pairing: i64 = gamma.iter().zip(&m.weight(k).0).map(|(a, b)| a * b).sum();
                assert_eq!(br.get(k, k), -pairing);
            }
        }
    }

    #[test]
    fn grading_is_additive_and_levi_preserves_grades() {
        for case in Case::ALL {
            let m = case.module().unwrap();
            let r = case.cut();
            for i in (0..case.rank()).filter(|&i| i != r) {
                for k in 0..m.dim() {
                    for t in [m.raise_table(i)[k], m.lower_table(i)[k]].into_iter().flatten() {
                        assert_eq!(m.grade_of(t.0), m.grade_of(k));
                    }
                }
            }
            // grade = coefficient of α_r in ω - μ, which is linear in μ
            let n = m.dim();
            for a in 0..n.min(12) {
                for b in 0..n.min(12) {
                    for c in 0..n {
                        let s = m.weight(a).add(m.weight(b)).sub(m.weight(c));
                        if let Some(d) = m.weights().index_of(&s) {
                            assert_eq!(m.grade_of(a) + m.grade_of(b), m.grade_of(c) + m.grade_of(d));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn levi_lemma() {
        let expected_adjacent = [(Case::A4, vec![1, 3]), (Case::D5, vec![2]), (Case::E6, vec![4]), (Case::E7, vec![5])];
        for (case, adj) in expected_adjacent {
            let m = case.module().unwrap();
            let s = levi_decomposition(&m, case.cut()).unwrap();
            assert_eq!(s.adjacent_nodes, adj, "{case}");
            assert!(s.holds(), "{case}: {s:?}");
            assert_eq!(s.grade_dims, m.grade_dims());
        }
        let m = Case::E6.module().unwrap();
        assert!(levi_decomposition(&m, 0).is_err());
        assert!(levi_decomposition(&m, 9).is_err());
    }

    #[test]
    fn json_dump_has_both_bases() {
        let m = Case::A4.module().unwrap();
        let j = m.to_json();
        assert_eq!(j["weights"].as_array().unwrap().len(), 10);
        assert_eq!(j["weights"][0]["fundamental"], serde_json::json!([0, 0, 1, 0]));
        assert_eq!(j["weights"][0]["simple_root"][0]["num"], "2");
        assert_eq!(j["weights"][0]["simple_root"][0]["den"], "5");
    }
}
