//! Torus stability on the weight polytope `Conv(Wω)`.
//!
//! A point is stable for the maximal torus iff `0` lies in the interior of
//! the convex hull of its weights. Everything here is decided by exact
//! linear programs.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::lp::{maximize, LpOutcome};
use crate::rational::{q, Q};
use crate::rootlat::{CartanType, RootSystemData, Weight, WeylOrbitData};

/// The orbit `Wω` as points of `Q^r` (fundamental-weight coordinates).
#[derive(Debug, Clone)]
pub struct WeightPolytope {
    rootsys: RootSystemData,
    orbit: WeylOrbitData,
    points: Vec<Vec<Q>>,
    gram: Vec<Vec<Q>>,
}

impl WeightPolytope {
    pub fn new(rootsys: RootSystemData, omega: &Weight) -> Result<Self> {
        let orbit = rootsys.weyl_orbit(&omega.to_lattice())?;
        let points: Vec<Vec<Q>> = orbit.elements.iter().map(|w| w.0.iter().map(|&c| q(c)).collect()).collect();
        let gram = orbit
            .elements
            .iter()
            .map(|a| orbit.elements.iter().map(|b| rootsys.weight_pairing(a, b)).collect())
            .collect();
        Ok(WeightPolytope { rootsys, orbit, points, gram })
    }

    pub fn ambient_dim(&self) -> usize {
        self.rootsys.rank()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn orbit(&self) -> &WeylOrbitData {
        &self.orbit
    }

    pub fn weight(&self, i: usize) -> &Weight {
        &self.orbit.elements[i]
    }

    pub fn pairing(&self, i: usize, j: usize) -> &Q {
        &self.gram[i][j]
    }

    /// `Σ_{μ ∈ Wω} μ`.
    pub fn vertex_sum(&self) -> Vec<Q> {
        let mut s = vec![Q::zero(); self.ambient_dim()];
        for p in &self.points {
            for (a, b) in s.iter_mut().zip(p) {
                *a += b;
            }
        }
        s
    }

    /// Whether `0` is interior to the hull of the points indexed by `subset`.
    pub fn zero_in_interior(&self, subset: &[usize]) -> bool {
        let pts: Vec<&Vec<Q>> = subset.iter().map(|&i| &self.points[i]).collect();
        zero_in_interior(&pts, self.ambient_dim())
    }

    /// Whether point `i` is a convex combination of the others.
    pub fn is_vertex(&self, i: usize) -> bool {
        let others: Vec<usize> = (0..self.len()).filter(|&k| k != i).collect();
        let (a, b) = combination_system(&self.points, &others, &self.points[i]);
        maximize(&vec![Q::zero(); others.len()], &a, &b) == LpOutcome::Infeasible
    }

    /// Geometric edge test: `[μ, ν]` is an edge iff the midpoint admits no
    /// convex representation giving weight to a third vertex.
    pub fn polytope_adjacent(&self, i: usize, j: usize) -> Result<bool> {
        if i == j {
            return Err(Error::SameVertex);
        }
        let all: Vec<usize> = (0..self.len()).collect();
        let mid: Vec<Q> = self.points[i].iter().zip(&self.points[j]).map(|(a, b)| (a + b) / q(2)).collect();
        let (a, b) = combination_system(&self.points, &all, &mid);
        let c: Vec<Q> = all.iter().map(|&k| if k == i || k == j { Q::zero() } else { Q::one() }).collect();
        match maximize(&c, &a, &b) {
            LpOutcome::Optimal { value, .. } => Ok(value.is_zero()),
            other => unreachable!("midpoint of two vertices is in the hull: {other:?}"),
        }
    }

    /// Algebraic edge test `(μ, ν) = (ω, ω) - 1`.
    pub fn pairing_adjacent(&self, i: usize, j: usize) -> Result<bool> {
        if i == j {
            return Err(Error::SameVertex);
        }
        Ok(self.gram[i][j] == &self.gram[0][0] - Q::one())
    }

    /// All vertex pairs `i < j` with the geometric and algebraic verdicts.
    pub fn pair_table(&self) -> Vec<PairVerdict> {
        let pairs: Vec<(usize, usize)> =
            (0..self.len()).flat_map(|i| (i + 1..self.len()).map(move |j| (i, j))).collect();
        pairs
            .par_iter()
            .map(|&(i, j)| PairVerdict {
                i,
                j,
                lp_adjacent: self.polytope_adjacent(i, j).expect("distinct"),
                pairing_adjacent: self.pairing_adjacent(i, j).expect("distinct"),
            })
            .collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.pair_table().into_iter().filter(|p| p.lp_adjacent).map(|p| (p.i, p.j)).collect()
    }

    /// Stability of a point whose weights are the orbit minus `removed`.
    pub fn stable_after_removals(&self, removed: &[usize]) -> Result<bool> {
        let mut keep = vec![true; self.len()];
        for &r in removed {
            if r >= self.len() {
                return Err(Error::IndexOutOfRange { index: r, rank: self.len() });
            }
            keep[r] = false;
        }
        let subset: Vec<usize> = (0..self.len()).filter(|&k| keep[k]).collect();
        if subset.is_empty() {
            return Err(Error::RemovalTooLarge);
        }
        Ok(self.zero_in_interior(&subset))
    }

    /// Stability after removing each single vertex and each non-adjacent
    /// pair, using the pairing criterion for adjacency.
    pub fn removal_table(&self) -> RemovalTable {
        let n = self.len();
        let singles: Vec<bool> = (0..n).into_par_iter().map(|i| self.stable_after_removals(&[i]).unwrap()).collect();
        let candidates: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.pairing_adjacent(i, j).unwrap())
            .collect();
        let pairs = candidates
            .par_iter()
            .map(|&(i, j)| RemovedPair { i, j, stable: self.stable_after_removals(&[i, j]).unwrap() })
            .collect();
        RemovalTable { singles, pairs }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairVerdict {
    pub i: usize,
    pub j: usize,
    pub lp_adjacent: bool,
    pub pairing_adjacent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RemovedPair {
    pub i: usize,
    pub j: usize,
    pub stable: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RemovalTable {
    /// Stability after removing vertex `i`.
    pub singles: Vec<bool>,
    /// Every non-adjacent pair.
    pub pairs: Vec<RemovedPair>,
}

impl RemovalTable {
    pub fn all_stable(&self) -> bool {
        self.singles.iter().all(|&s| s) && self.pairs.iter().all(|p| p.stable)
    }
}

/// Rows `Σ λ_k p_k = target`, `Σ λ_k = 1`.
fn combination_system(points: &[Vec<Q>], cols: &[usize], target: &[Q]) -> (Matrix, Vec<Q>) {
    let d = target.len();
    let mut a: Matrix = (0..d).map(|row| cols.iter().map(|&k| points[k][row].clone()).collect()).collect();
    a.push(vec![Q::one(); cols.len()]);
    let mut b = target.to_vec();
    b.push(Q::one());
    (a, b)
}

/// `0 ∈ int Conv(points)` in `Q^d`: the points span `Q^d` and `0` is a
/// convex combination with every coefficient positive. With `λ_k = μ_k + s`
/// this is `max s` subject to `Σ μ_k p_k + s Σ p_k = 0`,
/// `Σ μ_k + n s = 1`, `μ, s ≥ 0`, and the optimum must be positive.
pub fn zero_in_interior(points: &[&Vec<Q>], d: usize) -> bool {
    let n = points.len();
    if n == 0 {
        return false;
    }
    let span: Matrix = points.iter().map(|p| p.to_vec()).collect();
    if linalg::rank(&span) < d {
        return false;
    }
    let mut a: Matrix = Vec::with_capacity(d + 1);
    for row in 0..d {
        let mut r: Vec<Q> = points.iter().map(|p| p[row].clone()).collect();
        let total = points.iter().fold(Q::zero(), |acc, p| acc + &p[row]);
        r.push(total);
        a.push(r);
    }
    let mut last = vec![Q::one(); n];
    last.push(q(n as i64));
    a.push(last);
    let mut b = vec![Q::zero(); d];
    b.push(Q::one());
    let mut c = vec![Q::zero(); n];
    c.push(Q::one());
    matches!(maximize(&c, &a, &b), LpOutcome::Optimal { value, .. } if value.is_positive())
}

/// `(ω_i, ω_i)` against `½(α, α) = 1` for a simply-laced Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityCheck {
    pub cartan_type: String,
    pub node: usize,
    #[serde(serialize_with = "crate::rational::serialize_q")]
    pub omega_norm: Q,
    #[serde(serialize_with = "crate::rational::serialize_q")]
    pub half_root_norm: Q,
    pub holds: bool,
}

pub fn fundamental_inequality(rootsys: &RootSystemData, node: usize) -> Result<InequalityCheck> {
    let r = rootsys.rank();
    if node >= r {
        return Err(Error::IndexOutOfRange { index: node, rank: r });
    }
    let omega_norm = rootsys.cartan_inverse()[node][node].clone();
    let half_root_norm = Q::one();
    Ok(InequalityCheck {
        cartan_type: rootsys.label().to_string(),
        node,
        holds: omega_norm > half_root_norm,
        omega_norm,
        half_root_norm,
    })
}

/// Simply-laced members of the excluded list up to rank `max_rank`:
/// `(A_r, ω_1)`, `(A_r, ω_r)`, `(D_r, ω_1)`, `(A_3, ω_2)`, `(D_4, ω_3)`,
/// `(D_4, ω_4)` (0-based nodes).
pub fn excluded_pairs(max_rank: usize) -> Vec<(CartanType, usize)> {
    let mut out = Vec::new();
    for r in 1..=max_rank {
        out.push((CartanType::A(r), 0));
        if r > 1 {
            out.push((CartanType::A(r), r - 1));
        }
    }
    for r in 4..=max_rank {
        out.push((CartanType::D(r), 0));
    }
    if max_rank >= 3 {
        out.push((CartanType::A(3), 1));
    }
    if max_rank >= 4 {
        out.push((CartanType::D(4), 2));
        out.push((CartanType::D(4), 3));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::Case;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn polytope(case: Case) -> WeightPolytope {
        WeightPolytope::new(case.root_system(), &case.highest_weight()).unwrap()
    }

    #[test]
    fn vertex_sum_vanishes() {
        for case in Case::ALL {
            assert!(polytope(case).vertex_sum().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn every_point_is_a_vertex() {
        let p = polytope(Case::D5);
        assert!((0..p.len()).all(|i| p.is_vertex(i)));
    }

    #[test]
    fn full_orbit_and_half_space() {
        let p = polytope(Case::E6);
        let all: Vec<usize> = (0..p.len()).collect();
        assert!(p.zero_in_interior(&all));
        assert!(p.stable_after_removals(&[0]).unwrap());
        let positive: Vec<usize> = (0..p.len()).filter(|&i| p.pairing(0, i).is_positive()).collect();
        assert!(!p.zero_in_interior(&positive));
        assert_eq!(p.stable_after_removals(&all), Err(Error::RemovalTooLarge));
    }

    #[test]
    fn lp_edges_agree_with_pairing() {
        for case in [Case::A4, Case::D5, Case::E6] {
            let p = polytope(case);
            assert!(p.pair_table().iter().all(|v| v.lp_adjacent == v.pairing_adjacent), "{case}");
        }
    }

    #[test]
    fn adjacency_examples() {
        let p = polytope(Case::E7);
        let rs = Case::E7.root_system();
        let omega = p.weight(0).clone();
        let lowered = Weight(omega.0.iter().zip(&rs.cartan()[6]).map(|(a, c)| a - c).collect());
        let j = p.orbit().index_of(&lowered).unwrap();
        assert!(p.polytope_adjacent(0, j).unwrap());
        let k = p.orbit().index_of(&omega.neg()).unwrap();
        assert!(!p.polytope_adjacent(0, k).unwrap());
        assert_eq!(p.pairing(0, k), &crate::rational::q_frac(-3, 2));
        assert_eq!(p.polytope_adjacent(3, 3), Err(Error::SameVertex));
    }

    #[test]
    fn adjacency_is_weyl_equivariant() {
        let p = polytope(Case::D5);
        let gens = p.orbit().generators();
        let edges: std::collections::HashSet<(usize, usize)> = p.edges().into_iter().collect();
        for &(i, j) in &edges {
            for g in &gens {
                let (a, b) = (g.apply(i), g.apply(j));
                assert!(edges.contains(&(a.min(b), a.max(b))));
            }
        }
    }

    #[test]
    fn interior_is_monotone() {
        let p = polytope(Case::D5);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut seen = 0;
        while seen < 50 {
            let small: Vec<usize> = (0..p.len()).filter(|_| rng.gen_bool(0.6)).collect();
            if !p.zero_in_interior(&small) {
                continue;
            }
            let big: Vec<usize> = (0..p.len()).filter(|i| small.contains(i) || rng.gen_bool(0.5)).collect();
            assert!(p.zero_in_interior(&big));
            seen += 1;
        }
    }

    #[test]
    fn inequality_values() {
        for (case, num, den) in [(Case::A4, 6, 5), (Case::D5, 5, 4), (Case::E6, 4, 3), (Case::E7, 3, 2)] {
            let c = fundamental_inequality(&case.root_system(), case.cut()).unwrap();
            assert_eq!(c.omega_norm, crate::rational::q_frac(num, den));
            assert!(c.holds);
        }
        let a4 = RootSystemData::new(CartanType::A(4)).unwrap();
        assert_eq!(fundamental_inequality(&a4, 0).unwrap().omega_norm, crate::rational::q_frac(4, 5));
        for (t, node) in excluded_pairs(8) {
            let rs = RootSystemData::new(t).unwrap();
            assert!(!fundamental_inequality(&rs, node).unwrap().holds, "{t} node {node}");
        }
    }
}
