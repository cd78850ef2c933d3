//! The lattice `N_r = Zℓ₀ ⊕ … ⊕ Zℓ_r` of a del Pezzo surface of degree
//! `d = 9 - r`, its exceptional, conic and root classes, and their
//! dictionary with the weights of the minuscule modules.
//!
//! A class `(a; b₁, …, b_r)` stands for `aℓ₀ - Σ b_i ℓ_i`, so that
//! `(x·y) = aa' - Σ b_i b'_i` and `K = (-3; -1, …, -1)`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_traits::One;
use serde::Serialize;

use crate::cases::Case;
use crate::error::{Error, Result};
use crate::rational::{q, Q};
use crate::rootlat::{RootSystemData, Weight, WeylOrbitData};
use crate::stability::PairVerdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    Exceptional,
    Conic,
    Root,
    Other,
}

impl ClassKind {
    pub fn name(self) -> &'static str {
        match self {
            ClassKind::Exceptional => "exceptional",
            ClassKind::Conic => "conic",
            ClassKind::Root => "root",
            ClassKind::Other => "other",
        }
    }

    /// Target `((x²), (x·K))`.
    fn invariants(self) -> Option<(i64, i64)> {
        match self {
            ClassKind::Exceptional => Some((-1, -1)),
            ClassKind::Conic => Some((0, -2)),
            ClassKind::Root => Some((-2, 0)),
            ClassKind::Other => None,
        }
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ClassKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exceptional" => Ok(ClassKind::Exceptional),
            "conic" => Ok(ClassKind::Conic),
            "root" | "roots" => Ok(ClassKind::Root),
            _ => Err(Error::WrongKind { expected: "exceptional|conic|roots".into(), found: s.into() }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DivisorClass {
    pub coords: Vec<i64>,
    pub kind: ClassKind,
}

impl DivisorClass {
    pub fn a(&self) -> i64 {
        self.coords[0]
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.coords[1..].iter().map(i64::to_string).collect();
        write!(f, "({}; {})", self.coords[0], b.join(","))
    }
}

/// `N_r` with its intersection form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PicardLattice {
    r: usize,
}

impl PicardLattice {
    pub fn new(r: usize) -> Result<Self> {
        if !(4..=7).contains(&r) {
            return Err(Error::UnsupportedPoints(r));
        }
        Ok(PicardLattice { r })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn degree(&self) -> i64 {
        9 - self.r as i64
    }

    pub fn case(&self) -> Case {
        Case::from_rank(self.r).expect("validated")
    }

    /// Diagonal of the intersection matrix.
    pub fn gram_diagonal(&self) -> Vec<i64> {
        std::iter::once(1).chain(std::iter::repeat_n(-1, self.r)).collect()
    }

    pub fn canonical(&self) -> Vec<i64> {
        std::iter::once(-3).chain(std::iter::repeat_n(-1, self.r)).collect()
    }

    pub fn dot(&self, x: &[i64], y: &[i64]) -> i64 {
        x[0] * y[0] - x[1..].iter().zip(&y[1..]).map(|(a, b)| a * b).sum::<i64>()
    }

    pub fn dot_k(&self, x: &[i64]) -> i64 {
        -3 * x[0] + x[1..].iter().sum::<i64>()
    }

    pub fn classify(&self, x: &[i64]) -> ClassKind {
        let inv = (self.dot(x, x), self.dot_k(x));
        [ClassKind::Exceptional, ClassKind::Conic, ClassKind::Root]
            .into_iter()
            .find(|k| k.invariants() == Some(inv))
            .unwrap_or(ClassKind::Other)
    }

    pub fn class(&self, coords: Vec<i64>) -> DivisorClass {
        let kind = self.classify(&coords);
        DivisorClass { coords, kind }
    }

    /// `ℓ_i`, `i ≥ 1`, is `(0; …, -1, …)`.
    pub fn ell(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.r + 1];
        if i == 0 {
            v[0] = 1;
        } else {
            v[i] = -1;
        }
        v
    }

    /// `s_β(x) = x + (x·β)β`.
    pub fn reflect(&self, x: &[i64], beta: &[i64]) -> Vec<i64> {
        let c = self.dot(x, beta);
        x.iter().zip(beta).map(|(a, b)| a + c * b).collect()
    }
}

/// Box `|a| ≤ a_max`, `|b_i| ≤ b_max` containing every class with the
/// given invariants, from Cauchy–Schwarz on `Σb_i` and `Σb_i²`.
pub fn search_bounds(r: usize, kind: ClassKind) -> (i64, i64) {
    let (sq, k) = kind.invariants().expect("classified kind");
    // Σb = 3a + k, Σb² = a² - sq; (3a + k)² ≤ r(a² - sq).
    let r = r as i64;
    let a_max = (-50i64..=50).filter(|&a| (3 * a + k).pow(2) <= r * (a * a - sq)).map(i64::abs).max().unwrap_or(0);
    let mut b_max = 0;
    while b_max * b_max <= a_max * a_max - sq {
        b_max += 1;
    }
    (a_max, b_max - 1)
}

/// All classes of the given kind, sorted. The search box is one step wider
/// than [`search_bounds`]; no class may reach its edge.
pub fn enumerate_classes(lattice: &PicardLattice, kind: ClassKind) -> Result<Vec<DivisorClass>> {
    let (sq, k) = kind
        .invariants()
        .ok_or_else(|| Error::WrongKind { expected: "exceptional|conic|root".into(), found: kind.to_string() })?;
    let r = lattice.r;
    let (a_max, b_max) = search_bounds(r, kind);
    let (a_box, b_box) = (a_max + 1, b_max + 1);
    let mut out = Vec::new();
    for a in -a_box..=a_box {
        let sum = 3 * a + k;
        let squares = a * a - sq;
        if squares < 0 {
            continue;
        }
        let mut b = Vec::with_capacity(r);
        fill(r, b_box, sum, squares, &mut b, &mut |b| {
            let mut coords = vec![a];
            coords.extend_from_slice(b);
            out.push(coords);
        });
    }
    for c in &out {
        assert!(
            c[0].abs() < a_box && c[1..].iter().all(|b| b.abs() < b_box),
            "class {c:?} reaches the search boundary"
        );
    }
    out.sort();
    Ok(out.into_iter().map(|coords| DivisorClass { coords, kind }).collect())
}

/// Extends `b` to length `r` with `Σ = sum`, `Σ² = squares`, `|b_i| ≤ bound`.
fn fill(r: usize, bound: i64, sum: i64, squares: i64, b: &mut Vec<i64>, emit: &mut impl FnMut(&[i64])) {
    let left = (r - b.len()) as i64;
    if left == 0 {
        if sum == 0 && squares == 0 {
            emit(b);
        }
        return;
    }
    if squares < 0 || sum * sum > left * squares {
        return;
    }
    for v in -bound..=bound {
        if v * v > squares {
            continue;
        }
        b.push(v);
        fill(r, bound, sum - v, squares - v * v, b, emit);
        b.pop();
    }
}

/// `β_i = -ℓ_i + ℓ_{i+1}` for `i < r` and `β_r = -ℓ₀ + ℓ₁ + ℓ₂ + ℓ₃`.
pub fn picard_simple_roots(lattice: &PicardLattice) -> Vec<DivisorClass> {
    let r = lattice.r;
    let mut roots = Vec::with_capacity(r);
    for i in 1..r {
        let mut v = vec![0; r + 1];
        v[i] = 1;
        v[i + 1] = -1;
        roots.push(lattice.class(v));
    }
    let mut v = vec![0; r + 1];
    v[0] = -1;
    v[1..4].iter_mut().for_each(|b| *b = -1);
    roots.push(lattice.class(v));
    roots
}

/// Node of the Dynkin diagram (0-based, Bourbaki) attached to each `β_i`.
pub fn root_dictionary(r: usize) -> Result<Vec<usize>> {
    match r {
        4 => Ok(vec![0, 1, 2, 3]),
        5 => Ok(vec![0, 1, 2, 4, 3]),
        6 => Ok(vec![0, 2, 3, 4, 5, 1]),
        7 => Ok(vec![0, 2, 3, 4, 5, 6, 1]),
        _ => Err(Error::UnsupportedPoints(r)),
    }
}

/// Whether `(β_i·β_j) = -C(σ(i), σ(j))` for the root dictionary `σ`.
pub fn simple_roots_match_cartan(lattice: &PicardLattice) -> bool {
    let betas = picard_simple_roots(lattice);
    let sigma = root_dictionary(lattice.r).expect("validated");
    let c = lattice.case().root_system();
    let cartan = c.cartan();
    betas.iter().enumerate().all(|(i, bi)| {
        lattice.dot_k(&bi.coords) == 0
            && betas
                .iter()
                .enumerate()
                .all(|(j, bj)| lattice.dot(&bi.coords, &bj.coords) == -cartan[sigma[i]][sigma[j]])
    })
}

/// The weight dictionary for one `r`: the root system, the two orbits and
/// the coordinates of every class.
#[derive(Debug, Clone)]
pub struct Dictionary {
    lattice: PicardLattice,
    rootsys: RootSystemData,
    betas: Vec<DivisorClass>,
    sigma: Vec<usize>,
    omega_orbit: WeylOrbitData,
    omega1_orbit: WeylOrbitData,
}

impl Dictionary {
    pub fn new(lattice: PicardLattice) -> Result<Self> {
        let case = lattice.case();
        let rootsys = case.root_system();
        let omega_orbit = rootsys.weyl_orbit(&case.highest_weight().to_lattice())?;
        let omega1_orbit = rootsys.weyl_orbit(&Weight::fundamental(lattice.r, 0).to_lattice())?;
        Ok(Dictionary {
            betas: picard_simple_roots(&lattice),
            sigma: root_dictionary(lattice.r)?,
            lattice,
            rootsys,
            omega_orbit,
            omega1_orbit,
        })
    }

    pub fn lattice(&self) -> &PicardLattice {
        &self.lattice
    }

    pub fn rootsys(&self) -> &RootSystemData {
        &self.rootsys
    }

    pub fn betas(&self) -> &[DivisorClass] {
        &self.betas
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn omega_orbit(&self) -> &WeylOrbitData {
        &self.omega_orbit
    }

    pub fn omega1_orbit(&self) -> &WeylOrbitData {
        &self.omega1_orbit
    }

    /// Fundamental-weight coordinates of `ℓ + (k/d)K`, `k = 1` for an
    /// exceptional class and `k = 2` for a conic class. Since every `β_i`
    /// is orthogonal to `K`, coordinate `σ(i)` is `-(ℓ·β_i)`.
    pub fn class_to_weight(&self, class: &DivisorClass) -> Result<Weight> {
        let orbit = match class.kind {
            ClassKind::Exceptional => &self.omega_orbit,
            ClassKind::Conic => &self.omega1_orbit,
            other => return Err(Error::WrongKind { expected: "exceptional|conic".into(), found: other.to_string() }),
        };
        let mut w = vec![0; self.lattice.r];
        for (beta, &node) in self.betas.iter().zip(&self.sigma) {
            w[node] = -self.lattice.dot(&class.coords, &beta.coords);
        }
        let w = Weight(w);
        if orbit.index_of(&w).is_none() {
            return Err(Error::Dictionary(format!("{class} maps to {w}, outside the orbit")));
        }
        Ok(w)
    }
}

/// Pair-level comparison of intersection numbers, weight pairings and
/// polytope adjacency over all exceptional classes.
#[derive(Debug, Clone, Serialize)]
pub struct IntersectionReport {
    pub r: usize,
    pub pairs: usize,
    pub formula_failures: Vec<(usize, usize)>,
    pub adjacency_failures: Vec<(usize, usize)>,
    pub intersection_values: BTreeMap<i64, usize>,
}

impl IntersectionReport {
    pub fn holds(&self) -> bool {
        let allowed: &[i64] = if self.r == 7 { &[0, 1, 2] } else { &[0, 1] };
        self.formula_failures.is_empty()
            && self.adjacency_failures.is_empty()
            && self.intersection_values.keys().all(|v| allowed.contains(v))
    }
}

/// For distinct exceptional classes checks `(ℓ·ℓ') = 1/d - (x, x')` and
/// `(ℓ·ℓ') = 0 ⟺` the weights are adjacent. `adjacency` is the LP edge
/// table of `Conv(Wω)`, indexed by orbit positions.
pub fn intersection_vs_adjacency(dict: &Dictionary, adjacency: &[PairVerdict]) -> Result<IntersectionReport> {
    let lattice = &dict.lattice;
    let classes = enumerate_classes(lattice, ClassKind::Exceptional)?;
    let weights: Vec<Weight> = classes.iter().map(|c| dict.class_to_weight(c)).collect::<Result<_>>()?;
    let index: Vec<usize> = weights.iter().map(|w| dict.omega_orbit.index_of(w).expect("checked")).collect();
    let edges: HashMap<(usize, usize), bool> = adjacency.iter().map(|p| ((p.i, p.j), p.lp_adjacent)).collect();
    let inv_d = Q::one() / q(lattice.degree());
    let mut report = IntersectionReport {
        r: lattice.r,
        pairs: 0,
        formula_failures: Vec::new(),
        adjacency_failures: Vec::new(),
        intersection_values: BTreeMap::new(),
    };
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            report.pairs += 1;
            let meet = lattice.dot(&classes[i].coords, &classes[j].coords);
            *report.intersection_values.entry(meet).or_default() += 1;
            if q(meet) != &inv_d - dict.rootsys.weight_pairing(&weights[i], &weights[j]) {
                report.formula_failures.push((i, j));
            }
            let key = (index[i].min(index[j]), index[i].max(index[j]));
            match edges.get(&key) {
                Some(&adjacent) if adjacent == (meet == 0) => {}
                _ => report.adjacency_failures.push((i, j)),
            }
        }
    }
    Ok(report)
}

/// Orbit of `start` under the simple reflections, as a sorted set.
pub fn reflection_orbit(lattice: &PicardLattice, start: &[i64]) -> BTreeSet<Vec<i64>> {
    let betas = picard_simple_roots(lattice);
    let mut seen = BTreeSet::from([start.to_vec()]);
    let mut queue = VecDeque::from([start.to_vec()]);
    while let Some(x) = queue.pop_front() {
        for b in &betas {
            let y = lattice.reflect(&x, &b.coords);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

#[derive(Debug, Clone, Serialize)]
pub struct TransitivityReport {
    pub r: usize,
    pub exceptional_orbit: usize,
    pub exceptional_total: usize,
    pub conic_orbit: usize,
    pub conic_total: usize,
    pub involutions: bool,
    pub preserves_intersections: bool,
    pub intertwines_weights: bool,
}

impl TransitivityReport {
    pub fn holds(&self) -> bool {
        self.exceptional_orbit == self.exceptional_total
            && self.conic_orbit == self.conic_total
            && self.involutions
            && self.preserves_intersections
            && self.intertwines_weights
    }
}

pub fn weyl_transitivity(dict: &Dictionary) -> Result<TransitivityReport> {
    let lattice = &dict.lattice;
    let r = lattice.r;
    let exceptional = enumerate_classes(lattice, ClassKind::Exceptional)?;
    let conic = enumerate_classes(lattice, ClassKind::Conic)?;
    let ex_set: BTreeSet<Vec<i64>> = exceptional.iter().map(|c| c.coords.clone()).collect();
    let co_set: BTreeSet<Vec<i64>> = conic.iter().map(|c| c.coords.clone()).collect();
    let ex_orbit = reflection_orbit(lattice, &lattice.ell(r));
    let mut conic_start = lattice.ell(0);
    conic_start[1] = 1;
    let co_orbit = reflection_orbit(lattice, &conic_start);

    let mut involutions = true;
    let mut preserves = true;
    let mut intertwines = true;
    for (beta, &node) in dict.betas.iter().zip(&dict.sigma) {
        for x in exceptional.iter().chain(&conic) {
            let y = lattice.reflect(&x.coords, &beta.coords);
            involutions &= lattice.reflect(&y, &beta.coords) == x.coords;
            if x.kind == ClassKind::Exceptional {
                let wy = dict.class_to_weight(&lattice.class(y.clone()))?;
                intertwines &= wy == dict.rootsys.reflect(&dict.class_to_weight(x)?, node);
            }
        }
        for x in &exceptional {
            let sx = lattice.reflect(&x.coords, &beta.coords);
            for y in &exceptional {
                let sy = lattice.reflect(&y.coords, &beta.coords);
                preserves &= lattice.dot(&sx, &sy) == lattice.dot(&x.coords, &y.coords);
            }
        }
    }
    Ok(TransitivityReport {
        r,
        exceptional_orbit: if ex_orbit == ex_set { ex_orbit.len() } else { 0 },
        exceptional_total: ex_set.len(),
        conic_orbit: if co_orbit == co_set { co_orbit.len() } else { 0 },
        conic_total: co_set.len(),
        involutions,
        preserves_intersections: preserves,
        intertwines_weights: intertwines,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub r: usize,
    pub pullbacks: usize,
    pub new_exceptional: usize,
    pub conic_transforms: usize,
    pub tangent_cubic: usize,
    pub all_exceptional: bool,
    pub matches_enumeration: bool,
}

impl CensusReport {
    pub fn total(&self) -> usize {
        self.pullbacks + self.new_exceptional + self.conic_transforms + self.tangent_cubic
    }

    pub fn holds(&self) -> bool {
        self.all_exceptional && self.matches_enumeration
    }
}

/// Rebuilds the exceptional classes of `N_r` from those of `N_{r-1}`: the
/// pullbacks, `ℓ_r`, the transforms `c - ℓ_r` of conic classes `c`, and for
/// `r = 7` the class `-K₆ - 2ℓ₇`.
pub fn blowup_census(r: usize) -> Result<CensusReport> {
    if !(5..=7).contains(&r) {
        return Err(Error::UnsupportedPoints(r));
    }
    let prev = PicardLattice::new(r - 1)?;
    let lattice = PicardLattice::new(r)?;
    let pull = |c: &DivisorClass, br: i64| {
        let mut v = c.coords.clone();
        v.push(br);
        v
    };
    let pullbacks: Vec<Vec<i64>> =
        enumerate_classes(&prev, ClassKind::Exceptional)?.iter().map(|c| pull(c, 0)).collect();
    let conics: Vec<Vec<i64>> = enumerate_classes(&prev, ClassKind::Conic)?.iter().map(|c| pull(c, 1)).collect();
    let mut built: Vec<Vec<i64>> = pullbacks.clone();
    built.push(lattice.ell(r));
    built.extend(conics.iter().cloned());
    let tangent = if r == 7 {
        let mut v: Vec<i64> = prev.canonical().iter().map(|x| -x).collect();
        v.push(2);
        built.push(v);
        1
    } else {
        0
    };
    let all_exceptional = built.iter().all(|c| lattice.classify(c) == ClassKind::Exceptional);
    let built_set: BTreeSet<Vec<i64>> = built.iter().cloned().collect();
    let enumerated: BTreeSet<Vec<i64>> =
        enumerate_classes(&lattice, ClassKind::Exceptional)?.into_iter().map(|c| c.coords).collect();
    Ok(CensusReport {
        r,
        pullbacks: pullbacks.len(),
        new_exceptional: 1,
        conic_transforms: conics.len(),
        tangent_cubic: tangent,
        all_exceptional,
        matches_enumeration: built_set.len() == built.len() && built_set == enumerated,
    })
}

/// Exceptional classes with their positive intersections.
#[derive(Debug, Clone, Serialize)]
pub struct IncidenceGraph {
    pub r: usize,
    pub vertices: Vec<DivisorClass>,
    /// `(i, j, (ℓ_i·ℓ_j))` for `i < j` and positive intersection.
    pub edges: Vec<(usize, usize, i64)>,
}

impl IncidenceGraph {
    pub fn new(lattice: &PicardLattice) -> Result<Self> {
        let vertices = enumerate_classes(lattice, ClassKind::Exceptional)?;
        let mut edges = Vec::new();
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                let m = lattice.dot(&vertices[i].coords, &vertices[j].coords);
                if m >= 1 {
                    edges.push((i, j, m));
                }
            }
        }
        Ok(IncidenceGraph { r: lattice.r, vertices, edges })
    }

    /// Whether every simple reflection permutes the vertices preserving
    /// edge labels, and the generated group is transitive.
    pub fn is_vertex_transitive(&self, lattice: &PicardLattice) -> bool {
        let index: HashMap<&[i64], usize> =
            self.vertices.iter().enumerate().map(|(i, v)| (v.coords.as_slice(), i)).collect();
        let labels: HashMap<(usize, usize), i64> = self.edges.iter().map(|&(i, j, m)| ((i, j), m)).collect();
        let label = |i: usize, j: usize| labels.get(&(i.min(j), i.max(j))).copied().unwrap_or(0);
        let mut perms = Vec::new();
        for beta in picard_simple_roots(lattice) {
            let Some(perm) = self
                .vertices
                .iter()
                .map(|v| index.get(lattice.reflect(&v.coords, &beta.coords).as_slice()).copied())
                .collect::<Option<Vec<usize>>>()
            else {
                return false;
            };
            if self.edges.iter().any(|&(i, j, m)| label(perm[i], perm[j]) != m) {
                return false;
            }
            perms.push(perm);
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for p in &perms {
                if !seen[p[v]] {
                    seen[p[v]] = true;
                    stack.push(p[v]);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Adjacency lists `{"vertex": [..], "neighbors": [{"index", "intersection"}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut adj: Vec<Vec<serde_json::Value>> = vec![Vec::new(); self.vertices.len()];
        for &(i, j, m) in &self.edges {
            adj[i].push(serde_json::json!({"index": j, "intersection": m}));
            adj[j].push(serde_json::json!({"index": i, "intersection": m}));
        }
        for list in &mut adj {
            list.sort_by_key(|v| v["index"].as_u64());
        }
        let vertices: Vec<_> = self
            .vertices
            .iter()
            .zip(adj)
            .enumerate()
            .map(|(i, (v, n))| serde_json::json!({"index": i, "class": v.coords, "neighbors": n}))
            .collect();
        serde_json::json!({"r": self.r, "vertices": vertices})
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(r: usize) -> PicardLattice {
        PicardLattice::new(r).unwrap()
    }

    #[test]
    fn canonical_square_is_degree() {
        for r in 4..=7 {
            let l = lattice(r);
            let k = l.canonical();
            assert_eq!(l.dot(&k, &k), l.degree());
            assert_eq!(l.dot_k(&k), l.degree());
            let diag = l.gram_diagonal();
            assert_eq!(diag.iter().filter(|&&x| x > 0).count(), 1);
            assert_eq!(diag.iter().filter(|&&x| x < 0).count(), r);
        }
        assert_eq!(PicardLattice::new(3), Err(Error::UnsupportedPoints(3)));
    }

    /// Counts by type: `ℓ_i`, `ℓ₀ - ℓ_i - ℓ_j`, `2ℓ₀ - five`, `3ℓ₀ - 2ℓ_i - six`.
    fn exceptional_by_type(r: u64) -> u64 {
        let c = |n: u64, k: u64| if k > n { 0 } else { (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1)) };
        r + c(r, 2) + c(r, 5) + if r == 7 { 7 } else { 0 }
    }

    /// `ℓ₀ - ℓ_i`, `2ℓ₀ - four`, `3ℓ₀ - 2ℓ_i - five`, `4ℓ₀ - 2·three - four`,
    /// `5ℓ₀ - 2·six - one`.
    fn conic_by_type(r: u64) -> u64 {
        let c = |n: u64, k: u64| if k > n { 0 } else { (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1)) };
        r + c(r, 4) + r * c(r - 1, 5) + c(r, 3) * c(r - 3, 4) + r * c(r - 1, 6)
    }

    #[test]
    fn class_counts() {
        for (r, ex, co, roots) in [(4, 10, 5, 20), (5, 16, 10, 40), (6, 27, 27, 72), (7, 56, 126, 126)] {
            let l = lattice(r);
            let e = enumerate_classes(&l, ClassKind::Exceptional).unwrap();
            let c = enumerate_classes(&l, ClassKind::Conic).unwrap();
            let ro = enumerate_classes(&l, ClassKind::Root).unwrap();
            assert_eq!(e.len(), ex);
            assert_eq!(e.len() as u64, exceptional_by_type(r as u64));
            assert_eq!(c.len(), co);
            assert_eq!(c.len() as u64, conic_by_type(r as u64));
            assert_eq!(ro.len(), roots);
            assert_eq!(ro.len(), 2 * l.case().root_system().positive_roots().len());
        }
    }

    #[test]
    fn simple_roots_give_cartan() {
        for r in 4..=7 {
            let l = lattice(r);
            assert!(simple_roots_match_cartan(&l), "r = {r}");
            assert!(picard_simple_roots(&l).iter().all(|b| b.kind == ClassKind::Root));
        }
    }

    #[test]
    fn anchors_of_the_dictionary() {
        for r in 4..=7 {
            let l = lattice(r);
            let d = Dictionary::new(l).unwrap();
            let lr = l.class(l.ell(r));
            assert_eq!(d.class_to_weight(&lr).unwrap(), l.case().highest_weight());
            let mut c = l.ell(0);
            c[1] = 1;
            assert_eq!(d.class_to_weight(&l.class(c)).unwrap(), Weight::fundamental(r, 0));
            let root = picard_simple_roots(&l).remove(0);
            assert!(matches!(d.class_to_weight(&root), Err(Error::WrongKind { .. })));
        }
    }

    #[test]
    fn dictionary_is_bijective() {
        for r in 4..=7 {
            let l = lattice(r);
            let d = Dictionary::new(l).unwrap();
            for (kind, orbit) in [(ClassKind::Exceptional, d.omega_orbit()), (ClassKind::Conic, d.omega1_orbit())] {
                let images: BTreeSet<Vec<i64>> =
                    enumerate_classes(&l, kind).unwrap().iter().map(|c| d.class_to_weight(c).unwrap().0).collect();
                let all: BTreeSet<Vec<i64>> = orbit.elements.iter().map(|w| w.0.clone()).collect();
                assert_eq!(images, all, "r = {r}, {kind}");
            }
        }
    }

    #[test]
    fn intersection_examples() {
        let l = lattice(6);
        assert_eq!(l.dot(&l.ell(5), &l.ell(6)), 0);
        let l = lattice(7);
        let cubic = vec![3, 2, 1, 1, 1, 1, 1, 1];
        assert_eq!(l.classify(&cubic), ClassKind::Exceptional);
        assert_eq!(l.dot(&l.ell(1), &cubic), 2);
    }

    #[test]
    fn transitivity() {
        for r in 4..=7 {
            let report = weyl_transitivity(&Dictionary::new(lattice(r)).unwrap()).unwrap();
            assert!(report.holds(), "{report:?}");
        }
    }

    #[test]
    fn census() {
        for (r, parts) in [(5, [10, 1, 5, 0]), (6, [16, 1, 10, 0]), (7, [27, 1, 27, 1])] {
            let c = blowup_census(r).unwrap();
            assert_eq!([c.pullbacks, c.new_exceptional, c.conic_transforms, c.tangent_cubic], parts);
            assert!(c.holds(), "r = {r}");
        }
    }

    #[test]
    fn incidence_graph() {
        let l = lattice(6);
        let g = IncidenceGraph::new(&l).unwrap();
        assert_eq!(g.vertices.len(), 27);
        assert_eq!(g.edges.len(), 27 * 10 / 2);
        assert!(g.is_vertex_transitive(&l));
    }
}
