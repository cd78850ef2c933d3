//! Simply-laced root systems, weight lattices and Weyl orbits.
//!
//! Nodes are numbered as in Bourbaki's plates, shifted to start at 0:
//! node `i` here is the simple root `α_{i+1}` of the tables.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::permgroup::{Perm, PermGroup};
use crate::rational::{self, q, RationalJson, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CartanType {
    A(usize),
    D(usize),
    E(usize),
    Custom,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::E(n) => write!(f, "E{n}"),
            CartanType::Custom => write!(f, "custom"),
        }
    }
}

impl CartanType {
    /// Edges of the Dynkin diagram.
    fn edges(self) -> Result<(usize, Vec<(usize, usize)>)> {
        match self {
            CartanType::A(n) if n >= 1 => Ok((n, (1..n).map(|i| (i - 1, i)).collect())),
            CartanType::D(n) if n >= 4 => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((n - 3, n - 1));
                Ok((n, e))
            }
            CartanType::E(n) if (6..=8).contains(&n) => {
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((3..n).map(|i| (i - 1, i)));
                Ok((n, e))
            }
            other => Err(Error::UnsupportedType(other.to_string())),
        }
    }

    pub fn cartan_matrix(self) -> Result<Vec<Vec<i64>>> {
        let (n, edges) = self.edges()?;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in edges {
            c[i][j] = -1;
            c[j][i] = -1;
        }
        Ok(c)
    }

    /// Order of the Weyl group from the classical closed forms.
    pub fn weyl_order(self) -> Option<u128> {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match self {
            CartanType::A(n) => Some(fact(n + 1)),
            CartanType::D(n) => Some((1u128 << (n - 1)) * fact(n)),
            CartanType::E(6) => Some(51_840),
            CartanType::E(7) => Some(2_903_040),
            CartanType::E(8) => Some(696_729_600),
            _ => None,
        }
    }
}

impl std::str::FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::UnsupportedType(s.to_string());
        let (head, tail) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
        let n: usize = tail.parse().map_err(|_| bad())?;
        let t = match head {
            "A" | "a" => CartanType::A(n),
            "D" | "d" => CartanType::D(n),
            "E" | "e" => CartanType::E(n),
            _ => return Err(bad()),
        };
        t.edges()?;
        Ok(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    SimpleRoot,
    FundamentalWeight,
}

/// A rational vector of the weight lattice tensored with `Q`, tagged by basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeVector {
    pub coords: Vec<Q>,
    pub basis: Basis,
}

impl LatticeVector {
    pub fn new(coords: Vec<Q>, basis: Basis) -> Self {
        LatticeVector { coords, basis }
    }

    pub fn from_ints(coords: &[i64], basis: Basis) -> Self {
        LatticeVector { coords: coords.iter().map(|&x| q(x)).collect(), basis }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn to_integers(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(rational::to_i64).collect()
    }
}

/// An integral weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn to_lattice(&self) -> LatticeVector {
        LatticeVector::from_ints(&self.0, Basis::FundamentalWeight)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// Cartan data and positive roots of a simply-laced root system.
#[derive(Debug, Clone)]
pub struct RootSystemData {
    label: CartanType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    cartan_inverse: Matrix,
    /// In simple-root coordinates, sorted by height then lexicographically.
    positive_roots: Vec<Vec<i64>>,
    highest_root: Vec<i64>,
}

impl RootSystemData {
    pub fn new(label: CartanType) -> Result<Self> {
        let c = label.cartan_matrix()?;
        Self::build(label, c)
    }

    /// Builds from an arbitrary Cartan matrix, which must be symmetric with
    /// diagonal 2, off-diagonal entries in {0, -1}, of finite type and
    /// connected.
    pub fn from_cartan(cartan: Vec<Vec<i64>>) -> Result<Self> {
        Self::build(CartanType::Custom, cartan)
    }

    fn build(label: CartanType, cartan: Vec<Vec<i64>>) -> Result<Self> {
        let rank = cartan.len();
        if rank == 0 {
            return Err(Error::InvalidCartan("empty matrix".into()));
        }
        if let Some(i) = cartan.iter().position(|row| row.len() != rank) {
            return Err(Error::InvalidCartan(format!("row {i} has length {}", cartan[i].len())));
        }
        for (i, row) in cartan.iter().enumerate() {
            if row[i] != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry ({i},{i}) is {}", row[i])));
            }
            for (j, &x) in row.iter().enumerate() {
                if i == j {
                    continue;
                }
                if x != cartan[j][i] {
                    return Err(Error::InvalidCartan(format!("not symmetric at ({i},{j})")));
                }
                if x != 0 && x != -1 {
                    return Err(Error::InvalidCartan(format!("entry ({i},{j}) = {x} is not simply laced")));
                }
            }
        }
        let cm = linalg::from_int(&cartan);
        if !linalg::is_positive_definite(&cm) {
            return Err(Error::InvalidCartan("not of finite type".into()));
        }
        if !is_connected(&cartan) {
            return Err(Error::InvalidCartan("Dynkin diagram is disconnected".into()));
        }
        let cartan_inverse = linalg::inverse(&cm).expect("positive definite matrix is invertible");
        let positive_roots = enumerate_positive_roots(&cartan);
        let highest_root =
            positive_roots.iter().max_by_key(|r| r.iter().sum::<i64>()).cloned().expect("nonempty root system");
        Ok(RootSystemData { label, rank, cartan, cartan_inverse, positive_roots, highest_root })
    }

    pub fn label(&self) -> CartanType {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_inverse(&self) -> &Matrix {
        &self.cartan_inverse
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn highest_root(&self) -> &[i64] {
        &self.highest_root
    }

    /// Positive roots followed by their negatives.
    pub fn roots(&self) -> Vec<Vec<i64>> {
        let mut all = self.positive_roots.clone();
        all.extend(self.positive_roots.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        all
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.rank).filter(|&j| j != i && self.cartan[i][j] != 0).collect()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, rank: self.rank })
        }
    }

    fn check_rank(&self, v: &LatticeVector) -> Result<()> {
        if v.rank() == self.rank {
            Ok(())
        } else {
            Err(Error::RankMismatch { left: v.rank(), right: self.rank })
        }
    }

    /// Coefficient of `α_i` in the highest root.
    pub fn root_label(&self, i: usize) -> Result<i64> {
        self.check_index(i)?;
        Ok(self.highest_root[i])
    }

    /// Root-lattice element (simple-root coordinates) as a weight.
    pub fn root_to_weight(&self, root: &[i64]) -> Weight {
        Weight((0..self.rank).map(|i| (0..self.rank).map(|j| root[j] * self.cartan[j][i]).sum()).collect())
    }

    /// Simple-root coordinates of a weight known to lie in the root lattice.
    pub fn weight_to_root(&self, w: &Weight) -> Option<Vec<i64>> {
        let v = self.to_root_basis(&w.to_lattice()).ok()?;
        v.to_integers()
    }

    pub fn to_weight_basis(&self, v: &LatticeVector) -> Result<LatticeVector> {
        self.check_rank(v)?;
        Ok(match v.basis {
            Basis::FundamentalWeight => v.clone(),
            Basis::SimpleRoot => LatticeVector::new(
                linalg::mat_vec(&linalg::from_int(&self.cartan), &v.coords),
                Basis::FundamentalWeight,
            ),
        })
    }

    pub fn to_root_basis(&self, v: &LatticeVector) -> Result<LatticeVector> {
        self.check_rank(v)?;
        Ok(match v.basis {
            Basis::SimpleRoot => v.clone(),
            Basis::FundamentalWeight => {
                LatticeVector::new(linalg::mat_vec(&self.cartan_inverse, &v.coords), Basis::SimpleRoot)
            }
        })
    }

    /// The invariant form normalized by `(α, α) = 2`.
    pub fn inner_product(&self, a: &LatticeVector, b: &LatticeVector) -> Result<Q> {
        let a = self.to_root_basis(a)?;
        let b = self.to_weight_basis(b)?;
        Ok(a.coords.iter().zip(&b.coords).map(|(x, y)| x * y).sum())
    }

    /// `(λ, μ)` for integral weights.
    pub fn weight_pairing(&self, a: &Weight, b: &Weight) -> Q {
        let mut acc = Q::zero();
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                if y != 0 {
                    acc += &self.cartan_inverse[i][j] * q(x * y);
                }
            }
        }
        acc
    }

    /// `(γ, δ)` for root-lattice elements in simple-root coordinates.
    pub fn root_pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut acc = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += a[i] * self.cartan[i][j] * b[j];
            }
        }
        acc
    }

    /// `s_i(λ) = λ - ⟨λ, α_i^∨⟩ α_i` in weight coordinates.
    pub fn reflect(&self, w: &Weight, i: usize) -> Weight {
        let k = w.0[i];
        if k == 0 {
            return w.clone();
        }
        Weight(w.0.iter().zip(&self.cartan[i]).map(|(x, c)| x - k * c).collect())
    }

    /// Orbit of a dominant integral weight under the Weyl group.
    ///
    /// Elements are ordered by depth below the base weight (the sum of the
    /// simple-root coordinates of `base - μ`), then lexicographically
    /// descending, so the base weight is element 0.
    pub fn weyl_orbit(&self, base: &LatticeVector) -> Result<WeylOrbitData> {
        let fw = self.to_weight_basis(base)?;
        let ints = fw.to_integers().ok_or_else(|| Error::InvalidWeight("weight is not integral".into()))?;
        let base = Weight(ints);
        if !base.is_dominant() {
            return Err(Error::InvalidWeight(format!("{base} is not dominant")));
        }
        let mut seen: HashSet<Weight> = HashSet::from([base.clone()]);
        let mut queue = VecDeque::from([base.clone()]);
        while let Some(w) = queue.pop_front() {
            for i in 0..self.rank {
                let s = self.reflect(&w, i);
                if seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
        let heights: Vec<Q> =
            (0..self.rank).map(|j| (0..self.rank).map(|i| self.cartan_inverse[i][j].clone()).sum()).collect();
        let depth = |w: &Weight| -> i64 {
            let d: Q = base.sub(w).0.iter().zip(&heights).map(|(&x, h)| h * q(x)).sum();
            rational::to_i64(&d).expect("orbit elements differ from the base by roots")
        };
        let mut elements: Vec<Weight> = seen.into_iter().collect();
        elements.sort_by(|a, b| depth(a).cmp(&depth(b)).then_with(|| b.cmp(a)));
        let index: HashMap<Weight, usize> = elements.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let reflection_tables =
            (0..self.rank).map(|i| elements.iter().map(|w| index[&self.reflect(w, i)]).collect()).collect();
        Ok(WeylOrbitData { base_weight: base, elements, reflection_tables, index })
    }

    /// Order of the Weyl group acting on the full root set (always faithful),
    /// cross-checked against the closed form when the type is known.
    pub fn weyl_group_order(&self) -> Result<u128> {
        let roots = self.roots();
        let index: HashMap<&Vec<i64>, usize> = roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let gens: Vec<Perm> = (0..self.rank)
            .map(|i| {
                Perm(
                    roots
                        .iter()
                        .map(|r| {
                            let w = self.reflect(&self.root_to_weight(r), i);
                            let back = self.weight_to_root(&w).expect("roots lie in the root lattice");
                            index[&back]
                        })
                        .collect(),
                )
            })
            .collect();
        self.checked_order(&gens, roots.len())
    }

    fn checked_order(&self, gens: &[Perm], degree: usize) -> Result<u128> {
        let found = PermGroup::new(degree, gens).order();
        let trivial_gen = gens.iter().any(Perm::is_identity);
        match self.label.weyl_order() {
            Some(expected) if expected != found || trivial_gen => Err(Error::NotFaithful { found, expected }),
            None if trivial_gen => Err(Error::NotFaithful { found, expected: 0 }),
            _ => Ok(found),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Dto<'a> {
            label: String,
            rank: usize,
            cartan: &'a [Vec<i64>],
            cartan_inverse: Vec<Vec<RationalJson>>,
            positive_roots: &'a [Vec<i64>],
            highest_root: &'a [i64],
        }
        serde_json::to_value(Dto {
            label: self.label.to_string(),
            rank: self.rank,
            cartan: &self.cartan,
            cartan_inverse: self
                .cartan_inverse
                .iter()
                .map(|row| row.iter().map(RationalJson::from).collect())
                .collect(),
            positive_roots: &self.positive_roots,
            highest_root: &self.highest_root,
        })
        .expect("serializable")
    }
}

fn is_connected(cartan: &[Vec<i64>]) -> bool {
    let n = cartan.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if cartan[i][j] != 0 && !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Closure of the simple roots under simple reflections, keeping the positive
/// images. Finite type is a precondition.
fn enumerate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let simple: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut seen: HashSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut queue: VecDeque<Vec<i64>> = simple.into_iter().collect();
    while let Some(r) = queue.pop_front() {
        for i in 0..n {
            // ⟨γ, α_i^∨⟩
            let pairing: i64 = (0..n).map(|j| r[j] * cartan[j][i]).sum();
            if pairing == 0 {
                continue;
            }
            let mut s = r.clone();
            s[i] -= pairing;
            if s.iter().all(|&x| x >= 0) && s.iter().any(|&x| x > 0) && seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
    roots.sort_by(|a, b| a.iter().sum::<i64>().cmp(&b.iter().sum::<i64>()).then_with(|| b.cmp(a)));
    roots
}

/// The Weyl orbit of a dominant weight with simple-reflection tables.
#[derive(Debug, Clone)]
pub struct WeylOrbitData {
    pub base_weight: Weight,
    pub elements: Vec<Weight>,
    /// `reflection_tables[i][k]` is the index of `s_i(elements[k])`.
    pub reflection_tables: Vec<Vec<usize>>,
    index: HashMap<Weight, usize>,
}

impl WeylOrbitData {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, w: &Weight) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn generators(&self) -> Vec<Perm> {
        self.reflection_tables.iter().map(|t| Perm(t.clone())).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "base_weight": self.base_weight.0,
            "elements": self.elements.iter().map(|w| &w.0).collect::<Vec<_>>(),
            "reflection_tables": self.reflection_tables,
        })
    }
}

/// Order of the permutation group generated by the simple reflections on an
/// orbit, by a stabilizer chain. Signals non-faithfulness when the order
/// disagrees with the closed form or a reflection acts trivially.
pub fn weyl_group_order(rootsys: &RootSystemData, orbit: &WeylOrbitData) -> Result<u128> {
    rootsys.checked_order(&orbit.generators(), orbit.len())
}

/// `(ω_i, ω_i)` for every fundamental weight: the diagonal of `C^{-1}`.
pub fn fundamental_norms(rootsys: &RootSystemData) -> Vec<Q> {
    (0..rootsys.rank).map(|i| rootsys.cartan_inverse[i][i].clone()).collect()
}

/// True when `w` pairs to within {-1, 0, 1} with every root.
pub fn is_minuscule_element(rootsys: &RootSystemData, w: &Weight) -> bool {
    rootsys.positive_roots.iter().all(|r| {
        let p: i64 = r.iter().zip(&w.0).map(|(a, b)| a * b).sum();
        p.abs() <= 1
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_frac;
    use proptest::prelude::*;

    fn sys(t: CartanType) -> RootSystemData {
        RootSystemData::new(t).unwrap()
    }

    #[test]
    fn positive_root_counts() {
        // (dim g - rank) / 2
        let cases = [
            (CartanType::A(4), 10),
            (CartanType::D(5), 20),
            (CartanType::E(6), 36),
            (CartanType::E(7), 63),
            (CartanType::E(8), 120),
        ];
        for (t, n) in cases {
            assert_eq!(sys(t).positive_roots().len(), n, "{t}");
        }
        for r in 1..8 {
            assert_eq!(sys(CartanType::A(r)).positive_roots().len(), r * (r + 1) / 2);
        }
        // dim E7 = 133 = 2 * 63 + 7
        assert_eq!(2 * 63 + 7, 133);
    }

    #[test]
    fn roots_have_norm_two_and_highest_dominates() {
        for t in [CartanType::A(4), CartanType::D(5), CartanType::E(6), CartanType::E(7)] {
            let s = sys(t);
            for r in s.positive_roots() {
                assert_eq!(s.root_pairing(r, r), 2);
                assert!(r.iter().zip(s.highest_root()).all(|(a, b)| a <= b));
            }
        }
    }

    #[test]
    fn reflections_permute_roots() {
        let s = sys(CartanType::E(6));
        let roots: HashSet<Vec<i64>> = s.roots().into_iter().collect();
        for r in &roots {
            for i in 0..s.rank() {
                let w = s.reflect(&s.root_to_weight(r), i);
                assert!(roots.contains(&s.weight_to_root(&w).unwrap()));
            }
        }
    }

    #[test]
    fn rejects_bad_cartan() {
        let plus_one = vec![vec![2, 1], vec![1, 2]];
        assert!(matches!(RootSystemData::from_cartan(plus_one), Err(Error::InvalidCartan(_))));
        let asym = vec![vec![2, -1], vec![0, 2]];
        assert!(RootSystemData::from_cartan(asym).is_err());
        // affine A2
        let affine = vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]];
        assert!(RootSystemData::from_cartan(affine).is_err());
        let b2 = vec![vec![2, -2], vec![-1, 2]];
        assert!(RootSystemData::from_cartan(b2).is_err());
        assert!(RootSystemData::new(CartanType::D(3)).is_err());
        assert!(RootSystemData::new(CartanType::E(9)).is_err());
    }

    #[test]
    fn custom_cartan_matches_catalog() {
        let d4 = CartanType::D(4).cartan_matrix().unwrap();
        let s = RootSystemData::from_cartan(d4).unwrap();
        assert_eq!(s.positive_roots().len(), 12);
        assert_eq!(s.label(), CartanType::Custom);
    }

    #[test]
    fn inner_products() {
        let e7 = sys(CartanType::E(7));
        let w7 = Weight::fundamental(7, 6).to_lattice();
        assert_eq!(e7.inner_product(&w7, &w7).unwrap(), q_frac(3, 2));
        let e6 = sys(CartanType::E(6));
        let w6 = Weight::fundamental(6, 5).to_lattice();
        assert_eq!(e6.inner_product(&w6, &w6).unwrap(), q_frac(4, 3));
        for i in 0..7 {
            let mut a = vec![0; 7];
            a[i] = 1;
            let a = LatticeVector::from_ints(&a, Basis::SimpleRoot);
            assert_eq!(e7.inner_product(&a, &a).unwrap(), q(2));
        }
        let short = LatticeVector::from_ints(&[1, 0], Basis::SimpleRoot);
        assert!(matches!(e7.inner_product(&short, &w7), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn orbit_sizes() {
        let cases = [
            (CartanType::A(4), 2, 10),
            (CartanType::D(5), 4, 16),
            (CartanType::E(6), 5, 27),
            (CartanType::E(7), 6, 56),
        ];
        for (t, node, n) in cases {
            let s = sys(t);
            let o = s.weyl_orbit(&Weight::fundamental(s.rank(), node).to_lattice()).unwrap();
            assert_eq!(o.len(), n, "{t}");
            assert_eq!(o.elements[0], Weight::fundamental(s.rank(), node));
            for table in &o.reflection_tables {
                for (k, &img) in table.iter().enumerate() {
                    assert_eq!(table[img], k);
                }
            }
        }
        let s = sys(CartanType::E(7));
        let o = s.weyl_orbit(&Weight::zero(7).to_lattice()).unwrap();
        assert_eq!(o.len(), 1);
        let bad = Weight(vec![0, 0, 0, 0, 0, 1, -1]).to_lattice();
        assert!(s.weyl_orbit(&bad).is_err());
    }

    #[test]
    fn labels() {
        let e7 = sys(CartanType::E(7));
        assert_eq!(e7.highest_root(), &[2, 2, 3, 4, 3, 2, 1]);
        assert_eq!(e7.root_label(6).unwrap(), 1);
        assert_eq!(e7.root_label(3).unwrap(), 4);
        let a4 = sys(CartanType::A(4));
        assert!((0..4).all(|i| a4.root_label(i).unwrap() == 1));
        assert!(a4.root_label(4).is_err());
    }

    #[test]
    fn weyl_orders() {
        assert_eq!(sys(CartanType::A(4)).weyl_group_order().unwrap(), 120);
        assert_eq!(sys(CartanType::D(5)).weyl_group_order().unwrap(), 1920);
        assert_eq!(sys(CartanType::E(6)).weyl_group_order().unwrap(), 51_840);
    }

    #[test]
    fn parse_labels() {
        assert_eq!("E7".parse::<CartanType>().unwrap(), CartanType::E(7));
        assert_eq!("a4".parse::<CartanType>().unwrap(), CartanType::A(4));
        assert!("B2".parse::<CartanType>().is_err());
        assert!("D2".parse::<CartanType>().is_err());
    }

    #[test]
    fn serializes() {
        let s = sys(CartanType::A(4));
        let j = s.to_json();
        assert_eq!(j["rank"], 4);
        assert_eq!(j["cartan_inverse"][0][0]["num"], "4");
        assert_eq!(j["cartan_inverse"][0][0]["den"], "5");
    }

    proptest! {
        #[test]
        fn basis_roundtrip(v in proptest::collection::vec(-20i64..20, 7)) {
            let s = sys(CartanType::E(7));
            let lv = LatticeVector::from_ints(&v, Basis::SimpleRoot);
            let back = s.to_root_basis(&s.to_weight_basis(&lv).unwrap()).unwrap();
            prop_assert_eq!(back, lv.clone());
            let wv = LatticeVector::from_ints(&v, Basis::FundamentalWeight);
            let back = s.to_weight_basis(&s.to_root_basis(&wv).unwrap()).unwrap();
            prop_assert_eq!(back, wv);
        }

        #[test]
        fn pairing_agrees_across_bases(
            a in proptest::collection::vec(-9i64..9, 6),
            b in proptest::collection::vec(-9i64..9, 6),
        ) {
            let s = sys(CartanType::E(6));
            let ra = LatticeVector::from_ints(&a, Basis::SimpleRoot);
            let rb = LatticeVector::from_ints(&b, Basis::SimpleRoot);
            let wa = s.to_weight_basis(&ra).unwrap();
            let wb = s.to_weight_basis(&rb).unwrap();
            let direct = q(s.root_pairing(&a, &b));
            prop_assert_eq!(s.inner_product(&ra, &rb).unwrap(), direct.clone());
            prop_assert_eq!(s.inner_product(&wa, &wb).unwrap(), direct.clone());
            prop_assert_eq!(s.inner_product(&ra, &wb).unwrap(), direct);
        }
    }
}
