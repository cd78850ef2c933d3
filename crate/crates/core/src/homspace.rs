//! The graded cone `V = V₀ ⊕ V₁ ⊕ V₂ ⊕ V₃` over a minuscule module.
//!
//! `V₁` is identified with the abelian nilradical `n` through
//! `x ↦ ρ(x) = Σ x_μ X_{μ-ω}`, so that `exp(x) v = (1, x, p(x), q(x))` with
//! `p(x) = ½ ρ(x)² v` and `q(x) = ⅙ ρ(x)³ v`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::minrep::{MinusculeModule, ModuleVector, Op, RelationCheck, RelationReport};
use crate::rational::{display, q, RationalJson, Q};

/// A point `(y₀, y₁, y₂, y₃)` of the graded space. `y₃` is present exactly
/// when the module has a degree-3 component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPoint {
    pub y0: Q,
    pub y1: ModuleVector,
    pub y2: ModuleVector,
    pub y3: Option<Q>,
}

/// The minuscule module together with its grade decomposition and the
/// identification of `V₁` with root vectors.
#[derive(Debug, Clone)]
pub struct ConeSpace {
    module: MinusculeModule,
    v1: Vec<usize>,
    v2: Vec<usize>,
    v3: Option<usize>,
    /// Root index of `X_{μ-ω}` for each `V₁` basis vector.
    v1_roots: Vec<usize>,
    /// `V₁` basis vector `v_{ω-α_r}`.
    v1_highest: usize,
}

impl ConeSpace {
    pub fn new(module: MinusculeModule) -> Self {
        let v1 = module.grade_indices(1);
        let v2 = module.grade_indices(2);
        let v3 = module.grade_indices(3).first().copied();
        let v1_roots = v1.iter().map(|&k| module.v1_root(k).expect("grade-1 weights are roots")).collect();
        let node = module.node();
        let v1_highest = *v1
            .iter()
            .find(|&&k| module.depth(k).iter().enumerate().all(|(i, &c)| c == i64::from(i == node)))
            .expect("ω - α_r is a weight");
        ConeSpace { module, v1, v2, v3, v1_roots, v1_highest }
    }

    pub fn module(&self) -> &MinusculeModule {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn v1(&self) -> &[usize] {
        &self.v1
    }

    pub fn v2(&self) -> &[usize] {
        &self.v2
    }

    pub fn v3(&self) -> Option<usize> {
        self.v3
    }

    pub fn v1_highest(&self) -> usize {
        self.v1_highest
    }

    /// Embeds local `V₁` coordinates into the module.
    pub fn v1_vector(&self, coords: &[Q]) -> ModuleVector {
        let mut v = ModuleVector::zeros(self.dim());
        for (&k, c) in self.v1.iter().zip(coords) {
            v.0[k] = c.clone();
        }
        v
    }

    /// Local `V₁` coordinates of a grade-1 vector.
    pub fn v1_coords(&self, x: &ModuleVector) -> Vec<Q> {
        self.v1.iter().map(|&k| x.0[k].clone()).collect()
    }

    fn check_grade(&self, x: &ModuleVector, n: usize) -> Result<()> {
        if x.dim() != self.dim() || x.support().any(|k| self.module.grade_of(k) != n) {
            return Err(Error::WrongGrade { expected: n });
        }
        Ok(())
    }

    /// `ρ(x) w = Σ x_μ X_{μ-ω} w`.
    pub fn rho(&self, x: &ModuleVector, w: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zeros(self.dim());
        for (local, &k) in self.v1.iter().enumerate() {
            let c = &x.0[k];
            if !c.is_zero() {
                out.add_scaled(&self.module.act(Op::Root(self.v1_roots[local]), w), c);
            }
        }
        out
    }

    fn highest(&self) -> ModuleVector {
        ModuleVector::basis(self.dim(), 0)
    }

    /// `p(x) = ½ ρ(x)² v`, a grade-2 vector.
    pub fn p_of(&self, x: &ModuleVector) -> Result<ModuleVector> {
        self.check_grade(x, 1)?;
        Ok(self.rho(x, x).scale(&q_half()))
    }

    /// `p(x, y) = ½ ρ(x) ρ(y) v`.
    pub fn p_bilinear(&self, x: &ModuleVector, y: &ModuleVector) -> Result<ModuleVector> {
        self.check_grade(x, 1)?;
        self.check_grade(y, 1)?;
        Ok(self.rho(x, y).scale(&q_half()))
    }

    /// `q(x) = ⅙ ρ(x)³ v` as a scalar on `V₃`.
    pub fn q_of(&self, x: &ModuleVector) -> Result<Q> {
        self.q_trilinear(x, x, x)
    }

    /// `q(x, y, z) = ⅙ ρ(x) ρ(y) ρ(z) v`.
    pub fn q_trilinear(&self, x: &ModuleVector, y: &ModuleVector, z: &ModuleVector) -> Result<Q> {
        let v3 = self.v3.ok_or(Error::NoCubic)?;
        for w in [x, y, z] {
            self.check_grade(w, 1)?;
        }
        let w = self.rho(x, &self.rho(y, z));
        Ok(&w.0[v3] / q(6))
    }

    /// The `V₃` component of `ρ(y)` applied to a grade-2 vector.
    pub fn product_to_top(&self, w: &ModuleVector, y: &ModuleVector) -> Result<Q> {
        let v3 = self.v3.ok_or(Error::NoCubic)?;
        self.check_grade(w, 2)?;
        self.check_grade(y, 1)?;
        Ok(self.rho(y, w).0[v3].clone())
    }

    pub fn split(&self, full: &ModuleVector) -> GradedPoint {
        let mut y1 = ModuleVector::zeros(self.dim());
        let mut y2 = ModuleVector::zeros(self.dim());
        for &k in &self.v1 {
            y1.0[k] = full.0[k].clone();
        }
        for &k in &self.v2 {
            y2.0[k] = full.0[k].clone();
        }
        GradedPoint { y0: full.0[0].clone(), y1, y2, y3: self.v3.map(|k| full.0[k].clone()) }
    }

    pub fn join(&self, pt: &GradedPoint) -> ModuleVector {
        let mut full = pt.y1.add(&pt.y2);
        full.0[0] += &pt.y0;
        if let (Some(k), Some(y3)) = (self.v3, &pt.y3) {
            full.0[k] += y3;
        }
        full
    }

    fn check_point(&self, pt: &GradedPoint) -> Result<()> {
        self.check_grade(&pt.y1, 1)?;
        self.check_grade(&pt.y2, 2)?;
        if pt.y3.is_some() != self.v3.is_some() {
            return Err(Error::WrongGrade { expected: 3 });
        }
        Ok(())
    }

    /// `exp(x) v = (1, x, p(x), q(x))`.
    pub fn exp_point(&self, x: &ModuleVector) -> Result<GradedPoint> {
        self.check_grade(x, 1)?;
        let y3 = match self.v3 {
            Some(_) => Some(self.q_of(x)?),
            None => None,
        };
        Ok(GradedPoint { y0: Q::one(), y1: x.clone(), y2: self.p_of(x)?, y3 })
    }

    /// `exp(ρ(u))` applied to the full vector; the series stops after at
    /// most three nonzero terms.
    pub fn act_unipotent(&self, u: &ModuleVector, pt: &GradedPoint) -> Result<GradedPoint> {
        self.check_grade(u, 1)?;
        self.check_point(pt)?;
        let mut term = self.join(pt);
        let mut acc = term.clone();
        for k in 1.. {
            term = self.rho(u, &term).scale(&(Q::one() / q(k)));
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        Ok(self.split(&acc))
    }

    /// `g_t = (t, 1, t⁻¹, t⁻²)` acting gradewise.
    pub fn act_gt(&self, t: &Q, pt: &GradedPoint) -> Result<GradedPoint> {
        if t.is_zero() {
            return Err(Error::ZeroScale);
        }
        self.check_point(pt)?;
        let inv = t.recip();
        Ok(GradedPoint {
            y0: &pt.y0 * t,
            y1: pt.y1.clone(),
            y2: pt.y2.scale(&inv),
            y3: pt.y3.as_ref().map(|y| y * &inv * &inv),
        })
    }

    /// `y₀ y₂ = p(y₁)` and, with a cubic, `y₀² y₃ = q(y₁)`.
    pub fn on_cone(&self, pt: &GradedPoint) -> Result<bool> {
        self.check_point(pt)?;
        if pt.y2.scale(&pt.y0) != self.p_of(&pt.y1)? {
            return Ok(false);
        }
        match &pt.y3 {
            Some(y3) => Ok(&pt.y0 * &pt.y0 * y3 == self.q_of(&pt.y1)?),
            None => Ok(true),
        }
    }

    /// Negative roots of the Levi factor `g'`, those with zero coefficient on
    /// the grading node.
    pub fn levi_negative_roots(&self) -> Vec<usize> {
        let node = self.module.node();
        let roots = self.module.roots();
        (0..roots.len()).filter(|&g| roots[g][node] == 0 && roots[g].iter().any(|&c| c < 0)).collect()
    }

    /// `exp(Σ c_γ X_γ) v_{ω-α_r}` over the negative Levi roots, in the
    /// order of [`ConeSpace::levi_negative_roots`].
    pub fn subcone_point(&self, coeffs: &[Q]) -> ModuleVector {
        let roots = self.levi_negative_roots();
        assert_eq!(roots.len(), coeffs.len(), "one coefficient per negative Levi root");
        let apply = |w: &ModuleVector| {
            let mut out = ModuleVector::zeros(self.dim());
            for (&g, c) in roots.iter().zip(coeffs) {
                if !c.is_zero() {
                    out.add_scaled(&self.module.act(Op::Root(g), w), c);
                }
            }
            out
        };
        let mut term = ModuleVector::basis(self.dim(), self.v1_highest);
        let mut acc = term.clone();
        for k in 1.. {
            term = apply(&term).scale(&(Q::one() / q(k)));
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// A seeded point of the cone over `G'/P'` inside `V₁`.
    pub fn subcone_sample<R: Rng>(&self, rng: &mut R) -> ModuleVector {
        let coeffs: Vec<Q> = (0..self.levi_negative_roots().len()).map(|_| q(rng.gen_range(-3..=3))).collect();
        self.subcone_point(&coeffs)
    }

    /// A seeded `V₁` vector with coordinates in `{-3, …, 3}`; with `generic`
    /// every coordinate is nonzero.
    pub fn random_v1<R: Rng>(&self, rng: &mut R, generic: bool) -> ModuleVector {
        let coords: Vec<Q> = (0..self.v1.len())
            .map(|_| loop {
                let c: i64 = rng.gen_range(-3..=3);
                if !(generic && c == 0) {
                    break q(c);
                }
            })
            .collect();
        self.v1_vector(&coords)
    }

    /// Reads off `p_{μν}` and, with a cubic, `q_{μνξ}`.
    pub fn extract_forms(&self) -> FormBundle {
        let n1 = self.v1.len();
        let v = self.highest();
        let single: Vec<ModuleVector> = self.v1_roots.iter().map(|&g| self.module.act(Op::Root(g), &v)).collect();
        let mut pairs: Vec<Vec<ModuleVector>> = Vec::with_capacity(n1);
        for a in 0..n1 {
            pairs.push((0..n1).map(|b| self.module.act(Op::Root(self.v1_roots[a]), &single[b])).collect());
        }
        let half = q_half();
        let p_forms = self
            .v2
            .iter()
            .map(|&lam| (0..n1).map(|a| (0..n1).map(|b| &pairs[a][b].0[lam] * &half).collect()).collect())
            .collect();
        let mut q_coeffs = BTreeMap::new();
        if let Some(top) = self.v3 {
            for a in 0..n1 {
                for b in a..n1 {
                    if pairs[a][b].is_zero() {
                        continue;
                    }
                    for c in b..n1 {
                        let w = self.module.act(Op::Root(self.v1_roots[c]), &pairs[a][b]);
                        let coeff = &w.0[top] / q(6);
                        if !coeff.is_zero() {
                            q_coeffs.insert([a, b, c], coeff);
                        }
                    }
                }
            }
        }
        FormBundle { v1: self.v1.clone(), v2: self.v2.clone(), v3: self.v3, p_forms, q_coeffs }
    }
}

fn q_half() -> Q {
    Q::new(1.into(), 2.into())
}

/// The quadratic forms `p_λ` and the cubic coefficients `q_{μνξ}`, indexed
/// by local positions in `V₁` and `V₂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormBundle {
    v1: Vec<usize>,
    v2: Vec<usize>,
    v3: Option<usize>,
    p_forms: Vec<Matrix>,
    /// Keys `a ≤ b ≤ c`; the symmetric coefficient of `x_a x_b x_c`.
    q_coeffs: BTreeMap<[usize; 3], Q>,
}

impl FormBundle {
    /// Module indices of the `V₁` basis.
    pub fn v1(&self) -> &[usize] {
        &self.v1
    }

    /// Module indices of the `V₂` basis, one per form.
    pub fn v2(&self) -> &[usize] {
        &self.v2
    }

    pub fn v3(&self) -> Option<usize> {
        self.v3
    }

    pub fn p_form(&self, lam: usize) -> &Matrix {
        &self.p_forms[lam]
    }

    pub fn p_forms(&self) -> &[Matrix] {
        &self.p_forms
    }

    pub fn q_coeffs(&self) -> &BTreeMap<[usize; 3], Q> {
        &self.q_coeffs
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.p_forms.iter().map(linalg::rank).collect()
    }

    /// `p_λ(x, y) = Σ p_{μν} x_μ y_ν` on local coordinates.
    pub fn p_eval(&self, lam: usize, x: &[Q], y: &[Q]) -> Q {
        let mut s = Q::zero();
        for (a, row) in self.p_forms[lam].iter().enumerate() {
            if x[a].is_zero() {
                continue;
            }
            for (b, c) in row.iter().enumerate() {
                if !c.is_zero() && !y[b].is_zero() {
                    s += c * &x[a] * &y[b];
                }
            }
        }
        s
    }

    /// `q(x, y, z)`, summing the symmetric coefficient over ordered triples.
    pub fn q_eval(&self, x: &[Q], y: &[Q], z: &[Q]) -> Q {
        let mut s = Q::zero();
        for (key, c) in &self.q_coeffs {
            for [i, j, k] in distinct_orderings(*key) {
                let t = &x[i] * &y[j] * &z[k];
                if !t.is_zero() {
                    s += c * t;
                }
            }
        }
        s
    }

    /// `∂q/∂x_m` as a symmetric matrix: entry `(b, c)` is `3 q_{mbc}`.
    pub fn q_gradient_form(&self, m: usize) -> Matrix {
        let n = self.v1.len();
        let mut g = vec![vec![Q::zero(); n]; n];
        for (key, c) in &self.q_coeffs {
            for [i, j, k] in distinct_orderings(*key) {
                if i == m {
                    g[j][k] += c * q(3);
                }
            }
        }
        g
    }

    pub fn to_json(&self, m: &MinusculeModule) -> serde_json::Value {
        let w = |k: usize| m.weight(k).0.clone();
        let p: Vec<_> = self
            .v2
            .iter()
            .zip(&self.p_forms)
            .map(|(&lam, mat)| {
                let terms: Vec<_> = upper_terms(mat)
                    .map(|(a, b, c)| json!({"x": w(self.v1[a]), "y": w(self.v1[b]), "coeff": RationalJson::from(&c)}))
                    .collect();
                json!({"weight": w(lam), "rank": linalg::rank(mat), "terms": terms})
            })
            .collect();
        let q: Vec<_> = self
            .q_coeffs
            .iter()
            .map(|(key, c)| {
                json!({"weights": key.iter().map(|&a| w(self.v1[a])).collect::<Vec<_>>(), "coeff": RationalJson::from(c)})
            })
            .collect();
        json!({
            "v1": self.v1.iter().map(|&k| w(k)).collect::<Vec<_>>(),
            "p_forms": p,
            "q_coeffs": if self.v3.is_some() { json!(q) } else { serde_json::Value::Null },
        })
    }

    /// One line per form, `p[λ]: c·x[μ]*x[ν] + …`, then the cubic if present.
    pub fn to_text(&self, m: &MinusculeModule) -> String {
        let w = |k: usize| m.weight(k).to_string();
        let mut out = String::new();
        for (&lam, mat) in self.v2.iter().zip(&self.p_forms) {
            let terms: Vec<(Q, String)> =
                upper_terms(mat).map(|(a, b, c)| (c, format!("x{}*x{}", w(self.v1[a]), w(self.v1[b])))).collect();
            let _ = writeln!(out, "p{}: {}", w(lam), join_terms(&terms));
        }
        if let Some(top) = self.v3 {
            let terms: Vec<(Q, String)> = self
                .q_coeffs
                .iter()
                .map(|(key, c)| {
                    let mult = q(distinct_orderings(*key).len() as i64);
                    let mono = key.iter().map(|&a| format!("x{}", w(self.v1[a]))).collect::<Vec<_>>().join("*");
                    (c * mult, mono)
                })
                .collect();
            let _ = writeln!(out, "q{}: {}", w(top), join_terms(&terms));
        }
        out
    }
}

/// Polynomial coefficients of `x^T M x` over `a ≤ b`.
fn upper_terms(mat: &Matrix) -> impl Iterator<Item = (usize, usize, Q)> + '_ {
    mat.iter().enumerate().flat_map(move |(a, row)| {
        row.iter().enumerate().skip(a).filter(|(_, c)| !c.is_zero()).map(move |(b, c)| {
            let coeff = if a == b { c.clone() } else { c * q(2) };
            (a, b, coeff)
        })
    })
}

fn join_terms(terms: &[(Q, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, (c, mono)) in terms.iter().enumerate() {
        let neg = c < &Q::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        let _ = write!(s, "{}·{}", display(&abs), mono);
    }
    s
}

fn distinct_orderings([a, b, c]: [usize; 3]) -> Vec<[usize; 3]> {
    let mut all = vec![[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]];
    all.sort_unstable();
    all.dedup();
    all
}

/// Checks that `p_{μν}` vanishes unless `μ + ν - ω = λ`, and that the
/// forms are symmetric.
pub fn forms_are_homogeneous(space: &ConeSpace, forms: &FormBundle) -> bool {
    let m = space.module();
    let omega = m.weight(0);
    forms.v2.iter().zip(&forms.p_forms).all(|(&lam, mat)| {
        (0..mat.len()).all(|a| {
            (0..mat.len()).all(|b| {
                let c = &mat[a][b];
                if *c != mat[b][a] {
                    return false;
                }
                c.is_zero() || m.weight(forms.v1[a]).add(m.weight(forms.v1[b])).sub(omega) == *m.weight(lam)
            })
        })
    }) && forms.q_coeffs.keys().all(|key| {
        let sum = key.iter().fold(omega.neg().add(&omega.neg()), |acc, &a| acc.add(m.weight(forms.v1[a])));
        Some(&sum) == forms.v3.map(|k| m.weight(k))
    })
}

/// For each `V₁` position `m`, the `V₂` position of `-μ_m` and the unit `s`
/// with `∂q/∂x_m = s·p_{-μ_m}`. `None` if some gradient is not a unit
/// multiple of the matching form.
pub fn gradient_matching(space: &ConeSpace, forms: &FormBundle) -> Option<Vec<(usize, Q)>> {
    let m = space.module();
    (0..forms.v1.len())
        .map(|a| {
            let neg = m.weight(forms.v1[a]).neg();
            let k = m.weights().index_of(&neg)?;
            let lam = forms.v2.iter().position(|&x| x == k)?;
            let grad = forms.q_gradient_form(a);
            for s in [q(1), q(-1)] {
                let scaled: Matrix = forms.p_forms[lam].iter().map(|r| r.iter().map(|c| c * &s).collect()).collect();
                if scaled == grad {
                    return Some((lam, s));
                }
            }
            None
        })
        .collect()
}

struct Tally {
    name: &'static str,
    checked: usize,
    witness: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, checked: 0, witness: None }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(what());
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

/// Exact checks of the polarization identity, the product identity, the
/// cone equations and the cubic-gradient identity on `samples` seeded
/// inputs each. The last two families apply only when `V₃ ≠ 0`.
pub fn verify_identities(space: &ConeSpace, forms: &FormBundle, seed: u64, samples: usize) -> Result<RelationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = space.highest();
    let mut polar = Tally::new("polarization 2p(x,y) = x·y");
    let mut cone = Tally::new("cone equations y0·y2 = p(y1), y0²·y3 = q(y1)");
    let mut product = Tally::new("product 3q(x,x,y) = p(x)·y");
    let mut gradient = Tally::new("gradient 3q(x,y,z) = Σ p_{-μ}(x,y) z_μ");
    let matching = if space.v3.is_some() { gradient_matching(space, forms) } else { None };
    if space.v3.is_some() {
        gradient.record(matching.is_some(), || "∂q/∂x_μ is not a unit multiple of p_{-μ}".into());
    }
    for i in 0..samples {
        let x = space.random_v1(&mut rng, false);
        let y = space.random_v1(&mut rng, false);
        let z = space.random_v1(&mut rng, false);
        let (xl, yl, zl) = (space.v1_coords(&x), space.v1_coords(&y), space.v1_coords(&z));

        let xy = space.rho(&x, &space.rho(&y, &v));
        let yx = space.rho(&y, &space.rho(&x, &v));
        let bundle: Vec<Q> = (0..forms.v2.len()).map(|l| forms.p_eval(l, &xl, &yl) * q(2)).collect();
        let from_action: Vec<Q> = forms.v2.iter().map(|&k| xy.0[k].clone()).collect();
        let px = space.p_of(&x)?;
        let py = space.p_of(&y)?;
        let pxy = space.p_of(&x.add(&y))?;
        let pxx: Vec<Q> = (0..forms.v2.len()).map(|l| forms.p_eval(l, &xl, &xl)).collect();
        polar.record(
            xy == yx
                && bundle == from_action
                && pxy == px.add(&py).add(&xy)
                && pxx == forms.v2.iter().map(|&k| px.0[k].clone()).collect::<Vec<_>>(),
            || format!("sample {i}"),
        );

        let t = loop {
            let t: i64 = rng.gen_range(-3..=3);
            if t != 0 {
                break q(t);
            }
        };
        let ex = space.exp_point(&x)?;
        let ey = space.exp_point(&y)?;
        let ok = space.on_cone(&ex)?
            && space.on_cone(&space.act_gt(&t, &ex)?)?
            && space.act_unipotent(&y, &ex)? == space.exp_point(&x.add(&y))?
            && space.act_unipotent(&y, &ex)? == space.act_unipotent(&x, &ey)?
            && space.on_cone(&space.act_unipotent(&z, &space.act_gt(&t, &ex)?)?)?
            && space.split(&space.join(&ex)) == ex;
        cone.record(ok, || format!("sample {i}"));

        if space.v3.is_some() {
            let lhs = forms.q_eval(&xl, &xl, &yl) * q(3);
            let rhs = space.product_to_top(&px, &y)?;
            product.record(lhs == rhs && space.q_of(&x)? == forms.q_eval(&xl, &xl, &xl), || {
                format!("sample {i}: {} vs {}", display(&lhs), display(&rhs))
            });
            if let Some(matching) = &matching {
                let lhs = forms.q_eval(&xl, &yl, &zl) * q(3);
                let rhs = matching
                    .iter()
                    .zip(&zl)
                    .fold(Q::zero(), |acc, ((lam, s), zm)| acc + forms.p_eval(*lam, &xl, &yl) * s * zm);
                gradient.record(lhs == rhs && forms.q_eval(&xl, &yl, &zl) == space.q_trilinear(&x, &y, &z)?, || {
                    format!("sample {i}")
                });
            }
        }
    }
    let mut families = vec![polar.finish(), cone.finish()];
    if space.v3.is_some() {
        families.push(product.finish());
        families.push(gradient.finish());
    }
    Ok(RelationReport { families })
}

/// Outcome of one fibre check.
#[derive(Debug, Clone, serde::Serialize)]
pub struct FibreSample {
    pub kind: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct FibreReport {
    pub seed: u64,
    pub samples: Vec<FibreSample>,
}

impl FibreReport {
    pub fn all_passed(&self) -> bool {
        self.samples.iter().all(|s| s.passed)
    }

    pub fn count(&self, kind: &str) -> usize {
        self.samples.iter().filter(|s| s.kind == kind).count()
    }
}

const TORUS: [i64; 3] = [1, 2, -3];

/// Fibre over `x` with `p(x) ≠ 0`: the cone points projecting to `x` are the
/// `g_t exp(x)`. Checks each translate for `t ∈ {1, 2, -3}`, that `y₂, y₃`
/// are forced by `y₀`, and that perturbed candidates and `y₀ = 0` fail.
pub fn fibre_off_subcone(space: &ConeSpace, x: &ModuleVector) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    let px = space.p_of(x)?;
    if px.is_zero() {
        return Ok(false);
    }
    let ex = space.exp_point(x)?;
    for t in TORUS.map(q) {
        let pt = space.act_gt(&t, &ex)?;
        if !space.on_cone(&pt)? || pt.y0 != t || pt.y1 != *x {
            return Ok(false);
        }
        if pt.y2 != px.scale(&t.recip()) {
            return Ok(false);
        }
        if let Some(y3) = &pt.y3 {
            if *y3 != space.q_of(x)? / (&t * &t) {
                return Ok(false);
            }
        }
        let mut bumped = pt.clone();
        let k = *px.support().collect::<Vec<_>>().first().expect("p(x) ≠ 0");
        bumped.y2.0[k] += q(1);
        if space.on_cone(&bumped)? {
            return Ok(false);
        }
        if let Some(y3) = &mut bumped.y3 {
            bumped.y2 = pt.y2.clone();
            *y3 += q(1);
            if space.on_cone(&bumped)? {
                return Ok(false);
            }
        }
    }
    let degenerate = GradedPoint { y0: Q::zero(), ..ex };
    Ok(!space.on_cone(&degenerate)?)
}

/// Fibre over `x` on the subcone: `(0, x, 2p(x,u), 3q(x,u,u))` built from the
/// extracted forms equals `exp(u)·(0, x, 0, 0)` and lies on the cone, and the
/// translates `(t, x, 0, 0)` lie on the cone.
pub fn fibre_on_subcone(space: &ConeSpace, forms: &FormBundle, x: &ModuleVector, u: &ModuleVector) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    if !space.p_of(x)?.is_zero() {
        return Ok(false);
    }
    let (xl, ul) = (space.v1_coords(x), space.v1_coords(u));
    let mut y2 = ModuleVector::zeros(space.dim());
    for (l, &k) in forms.v2.iter().enumerate() {
        y2.0[k] = forms.p_eval(l, &xl, &ul) * q(2);
    }
    let y3 = space.v3.map(|_| forms.q_eval(&xl, &ul, &ul) * q(3));
    let built = GradedPoint { y0: Q::zero(), y1: x.clone(), y2, y3 };
    let base = GradedPoint {
        y0: Q::zero(),
        y1: x.clone(),
        y2: ModuleVector::zeros(space.dim()),
        y3: space.v3.map(|_| Q::zero()),
    };
    let moved = space.act_unipotent(u, &base)?;
    if moved != built || !space.on_cone(&moved)? {
        return Ok(false);
    }
    for t in TORUS.map(q) {
        if !space.on_cone(&GradedPoint { y0: t, ..base.clone() })? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Runs both fibre descriptions on `samples` seeded inputs each, plus the
/// `u = 0` case.
pub fn verify_blowup_fibres(space: &ConeSpace, forms: &FormBundle, seed: u64, samples: usize) -> Result<FibreReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for i in 0..samples {
        let x = loop {
            let x = space.random_v1(&mut rng, true);
            if !space.p_of(&x)?.is_zero() {
                break x;
            }
        };
        out.push(FibreSample {
            kind: "off-subcone",
            passed: fibre_off_subcone(space, &x)?,
            detail: format!("sample {i}"),
        });
    }
    for i in 0..samples {
        let x = space.subcone_sample(&mut rng);
        let u = space.random_v1(&mut rng, false);
        out.push(FibreSample {
            kind: "on-subcone",
            passed: fibre_on_subcone(space, forms, &x, &u)?,
            detail: format!("sample {i}"),
        });
    }
    let x = space.subcone_sample(&mut rng);
    let zero = ModuleVector::zeros(space.dim());
    let base = GradedPoint { y0: Q::zero(), y1: x, y2: zero.clone(), y3: space.v3.map(|_| Q::zero()) };
    out.push(FibreSample {
        kind: "identity",
        passed: space.act_unipotent(&zero, &base)? == base,
        detail: "u = 0".into(),
    });
    Ok(FibreReport { seed, samples: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::Case;

    fn space(case: Case) -> ConeSpace {
        ConeSpace::new(case.module().unwrap())
    }

    #[test]
    fn form_ranks_and_counts() {
        for (case, rank, count) in [(Case::A4, 4, 3), (Case::D5, 6, 5), (Case::E6, 8, 10), (Case::E7, 10, 27)] {
            let s = space(case);
            let f = s.extract_forms();
            assert_eq!(f.p_forms().len(), count, "{case}");
            assert!(f.ranks().iter().all(|&r| r == rank), "{case}: {:?}", f.ranks());
            assert!(forms_are_homogeneous(&s, &f), "{case}");
        }
    }

    #[test]
    fn e7_cubic_coefficients() {
        let s = space(Case::E7);
        let f = s.extract_forms();
        assert_eq!(f.q_coeffs().len(), 45);
        assert!(f.q_coeffs().values().all(|c| !c.is_zero()));
        let matching = gradient_matching(&s, &f).expect("gradients match forms");
        let lams: std::collections::BTreeSet<usize> = matching.iter().map(|m| m.0).collect();
        assert_eq!(lams.len(), 27);
    }

    #[test]
    fn basis_vectors_square_to_zero() {
        for case in Case::ALL {
            let s = space(case);
            for &k in s.v1() {
                let e = ModuleVector::basis(s.dim(), k);
                assert!(s.p_of(&e).unwrap().is_zero());
                if case == Case::E7 {
                    assert!(s.q_of(&e).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn cubic_requires_top_grade() {
        let s = space(Case::E6);
        let x = ModuleVector::basis(s.dim(), s.v1()[0]);
        assert_eq!(s.q_of(&x), Err(Error::NoCubic));
    }

    #[test]
    fn grade_and_scale_errors() {
        let s = space(Case::D5);
        let v = ModuleVector::basis(s.dim(), 0);
        assert_eq!(s.p_of(&v), Err(Error::WrongGrade { expected: 1 }));
        let ex = s.exp_point(&ModuleVector::zeros(s.dim())).unwrap();
        assert_eq!(s.act_gt(&Q::zero(), &ex), Err(Error::ZeroScale));
        assert_eq!(s.act_gt(&q(1), &ex).unwrap(), ex);
        assert_eq!(ex.y0, q(1));
        assert!(ex.y1.is_zero() && ex.y2.is_zero());
    }

    #[test]
    fn origin_is_rejected() {
        let s = space(Case::A4);
        let f = s.extract_forms();
        let zero = ModuleVector::zeros(s.dim());
        assert_eq!(fibre_off_subcone(&s, &zero), Err(Error::ZeroVector));
        assert_eq!(fibre_on_subcone(&s, &f, &zero, &zero), Err(Error::ZeroVector));
    }

    #[test]
    fn subcone_samples_vanish() {
        for case in Case::ALL {
            let s = space(case);
            let zeros = vec![Q::zero(); s.levi_negative_roots().len()];
            assert_eq!(s.subcone_point(&zeros), ModuleVector::basis(s.dim(), s.v1_highest()));
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            for _ in 0..20 {
                let x = s.subcone_sample(&mut rng);
                assert!(!x.is_zero());
                assert!(s.p_of(&x).unwrap().is_zero(), "{case}");
            }
            for _ in 0..20 {
                let x = s.random_v1(&mut rng, true);
                assert!(!s.p_of(&x).unwrap().is_zero(), "{case}");
            }
        }
    }

    #[test]
    fn identities_hold() {
        for case in Case::ALL {
            let s = space(case);
            let f = s.extract_forms();
            let report = verify_identities(&s, &f, 17, 25).unwrap();
            assert!(report.all_passed(), "{case}: {:?}", report.first_failure());
        }
    }

    #[test]
    fn fibres_hold() {
        for case in Case::ALL {
            let s = space(case);
            let f = s.extract_forms();
            let report = verify_blowup_fibres(&s, &f, 5, 5).unwrap();
            assert!(report.all_passed(), "{case}");
        }
    }

    #[test]
    fn equation_text() {
        let s = space(Case::A4);
        let text = s.extract_forms().to_text(s.module());
        assert_eq!(text.lines().count(), 3);
        assert!(text.lines().all(|l| l.starts_with("p[") && l.contains("·x[")));
    }
}
