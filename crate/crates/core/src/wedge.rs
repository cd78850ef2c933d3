//! Hand-coded model of `V(ω3)` for `A4` as the exterior square `Λ²(k⁵)`.
//!
//! Node `i` of `A4` acts through the diagram automorphism `i ↦ 3 - i`, so
//! that `e_i = E_{3-i, 4-i}` and the highest weight vector is `e0 ∧ e1`.
//! The model is independent of the sign cocycle and is used to check the
//! constructed module and its quadratic forms.

use num_traits::Zero;

use crate::homspace::FormBundle;
use crate::minrep::{MinusculeModule, ModuleVector, Op};
use crate::rational::{q, Q};

/// Basis `e_a ∧ e_b`, `a < b`, of `Λ²(k⁵)`.
#[derive(Debug, Clone)]
pub struct WedgeModel {
    basis: Vec<(usize, usize)>,
}

impl Default for WedgeModel {
    fn default() -> Self {
        Self::new()
    }
}

impl WedgeModel {
    pub fn new() -> Self {
        let mut basis = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                basis.push((a, b));
            }
        }
        WedgeModel { basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[(usize, usize)] {
        &self.basis
    }

    pub fn index(&self, a: usize, b: usize) -> (usize, i64) {
        let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
        (self.basis.iter().position(|&p| p == (lo, hi)).expect("a != b"), sign)
    }

    /// Matrix unit `E_{pq}` (sending `e_q` to `e_p`) acting as a derivation.
    fn unit(&self, p: usize, q: usize, x: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.dim()];
        for (k, &(a, b)) in self.basis.iter().enumerate() {
            let c = x[k];
            if c == 0 {
                continue;
            }
            if a == q && p != b {
                let (t, s) = self.index(p, b);
                out[t] += s * c;
            }
            if b == q && p != a {
                let (t, s) = self.index(a, p);
                out[t] += s * c;
            }
        }
        out
    }

    pub fn act(&self, op: Op, x: &[i64]) -> Vec<i64> {
        match op {
            Op::E(i) => self.unit(3 - i, 4 - i, x),
            Op::F(i) => self.unit(4 - i, 3 - i, x),
            Op::H(i) => {
                let d1 = self.unit(3 - i, 3 - i, x);
                let d2 = self.unit(4 - i, 4 - i, x);
                d1.iter().zip(&d2).map(|(a, b)| a - b).collect()
            }
            Op::Root(_) => unimplemented!("the model only carries Chevalley generators"),
        }
    }

    fn unit_vector(&self, k: usize) -> Vec<i64> {
        let mut v = vec![0; self.dim()];
        v[k] = 1;
        v
    }

    /// Grade-2 component of `exp(X) (e0 ∧ e1)` where `X ∈ n` satisfies
    /// `X (e0 ∧ e1) = y`: the 2×2 minors `y_{0j} y_{1k} - y_{0k} y_{1j}`
    /// for `2 ≤ j < k ≤ 4`, keyed by the basis index of `e_j ∧ e_k`.
    pub fn plucker(&self, y: &[Q]) -> Vec<(usize, Q)> {
        let coord = |a: usize, b: usize| &y[self.index(a, b).0];
        let mut out = Vec::new();
        for j in 2..5 {
            for k in j + 1..5 {
                let v = coord(0, j) * coord(1, k) - coord(0, k) * coord(1, j);
                out.push((self.index(j, k).0, v));
            }
        }
        out
    }

    /// The five 4×4 Pfaffians of the skew matrix `(y_{ab})`, which cut out
    /// the cone over `G(2,5)`.
    pub fn pfaffians(&self, y: &[Q]) -> Vec<Q> {
        let c = |a: usize, b: usize| &y[self.index(a, b).0];
        (0..5)
            .map(|skip| {
                let idx: Vec<usize> = (0..5).filter(|&i| i != skip).collect();
                let (a, b, cc, d) = (idx[0], idx[1], idx[2], idx[3]);
                c(a, b) * c(cc, d) - c(a, cc) * c(b, d) + c(a, d) * c(b, cc)
            })
            .collect()
    }
}

/// A signed bijection from module basis vectors to model basis vectors
/// intertwining the Chevalley generators.
#[derive(Debug, Clone)]
pub struct ModelMatch {
    /// `v_k ↦ sign · b_target`.
    pub to_model: Vec<(usize, i64)>,
}

/// Matches the `A4` module to the wedge model by walking down from the
/// highest weight vectors, then checks `e_i`, `f_i`, `h_i` on every basis
/// vector. Returns `None` if the two do not agree up to signs.
pub fn match_module(m: &MinusculeModule, model: &WedgeModel) -> Option<ModelMatch> {
    if m.dim() != model.dim() || m.rootsys().rank() != 4 {
        return None;
    }
    let n = m.dim();
    let mut to_model: Vec<Option<(usize, i64)>> = vec![None; n];
    to_model[0] = Some((model.index(0, 1).0, 1));
    let mut stack = vec![0];
    while let Some(k) = stack.pop() {
        let (b, s) = to_model[k].unwrap();
        for i in 0..4 {
            let Some((t, sign)) = m.lower_table(i)[k] else { continue };
            if to_model[t].is_some() {
                continue;
            }
            let img = model.act(Op::F(i), &model.unit_vector(b));
            let nz: Vec<usize> = (0..n).filter(|&j| img[j] != 0).collect();
            if nz.len() != 1 || img[nz[0]].abs() != 1 {
                return None;
            }
            // f_i v_k = sign v_t  and  f_i b = img b'  ⇒  v_t ↦ s img / sign
            to_model[t] = Some((nz[0], s * img[nz[0]] * i64::from(sign)));
            stack.push(t);
        }
    }
    let to_model: Vec<(usize, i64)> = to_model.into_iter().collect::<Option<_>>()?;
    let transport = |v: &ModuleVector| -> Vec<i64> {
        let mut out = vec![0; n];
        for (k, c) in v.0.iter().enumerate() {
            if !c.is_zero() {
                let (t, s) = to_model[k];
                out[t] += s * crate::rational::to_i64(c).expect("integral");
            }
        }
        out
    };
    for k in 0..n {
        let v = ModuleVector::basis(n, k);
        let image = transport(&v);
        for i in 0..4 {
            for op in [Op::E(i), Op::F(i), Op::H(i)] {
                if transport(&m.act(op, &v)) != model.act(op, &image) {
                    return None;
                }
            }
        }
    }
    Some(ModelMatch { to_model })
}

impl ModelMatch {
    /// Model coordinates of a module vector.
    pub fn transport(&self, v: &ModuleVector) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.to_model.len()];
        for (k, c) in v.0.iter().enumerate() {
            let (t, s) = self.to_model[k];
            out[t] = c * q(s);
        }
        out
    }
}

/// Checks that every extracted `p_λ` equals the transported Plücker minor,
/// exactly, after the sign rescaling of coordinates given by the match.
pub fn plucker_agreement(forms: &FormBundle, matching: &ModelMatch) -> bool {
    let model = WedgeModel::new();
    let v1 = forms.v1();
    let v2 = forms.v2();
    // Model coordinate of e_a ∧ e_b -> (local V1 index, sign).
    let mut from_model: Vec<Option<(usize, i64)>> = vec![None; model.dim()];
    for (local, &k) in v1.iter().enumerate() {
        let (t, s) = matching.to_model[k];
        from_model[t] = Some((local, s));
    }
    let nloc = v1.len();
    for (lam_local, &lam) in v2.iter().enumerate() {
        let (target, s_lam) = matching.to_model[lam];
        let (a, b) = model.basis()[target];
        if a < 2 {
            return false;
        }
        // y_{0a} y_{1b} - y_{0b} y_{1a} with y_model = s x_local
        let mut expected = vec![vec![Q::zero(); nloc]; nloc];
        for (u, v, c) in [((0, a), (1, b), 1i64), ((0, b), (1, a), -1)] {
            let (iu, su) = model.index(u.0, u.1);
            let (iv, sv) = model.index(v.0, v.1);
            let (Some((lu, tu)), Some((lv, tv))) = (from_model[iu], from_model[iv]) else {
                return false;
            };
            let coeff = q(c * su * sv * tu * tv) / q(2);
            expected[lu][lv] += &coeff;
            expected[lv][lu] += &coeff;
        }
        let ours: Vec<Vec<Q>> =
            forms.p_form(lam_local).iter().map(|row| row.iter().map(|x| x * q(s_lam)).collect()).collect();
        if ours != expected {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::Case;

    #[test]
    fn model_highest_weight() {
        let model = WedgeModel::new();
        let (hw, _) = model.index(0, 1);
        let v = model.unit_vector(hw);
        for i in 0..4 {
            assert!(model.act(Op::E(i), &v).iter().all(|&x| x == 0));
        }
        let h: Vec<i64> = (0..4).map(|i| model.act(Op::H(i), &v)[hw]).collect();
        assert_eq!(h, vec![0, 0, 1, 0]);
    }

    #[test]
    fn a4_module_matches_model() {
        let m = Case::A4.module().unwrap();
        let matching = match_module(&m, &WedgeModel::new()).expect("isomorphic up to signs");
        let targets: std::collections::HashSet<usize> = matching.to_model.iter().map(|p| p.0).collect();
        assert_eq!(targets.len(), 10);
    }

    #[test]
    fn forms_are_plucker_relations() {
        let m = Case::A4.module().unwrap();
        let matching = match_module(&m, &WedgeModel::new()).unwrap();
        let space = crate::homspace::ConeSpace::new(m.clone());
        assert!(plucker_agreement(&space.extract_forms(), &matching));
    }

    #[test]
    fn cone_points_satisfy_pfaffians() {
        use rand::SeedableRng;
        let m = Case::A4.module().unwrap();
        let model = WedgeModel::new();
        let matching = match_module(&m, &model).unwrap();
        let space = crate::homspace::ConeSpace::new(m);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let x = space.random_v1(&mut rng, false);
            let pt = space.act_gt(&q(-2), &space.exp_point(&x).unwrap()).unwrap();
            let y = matching.transport(&space.join(&pt));
            assert!(model.pfaffians(&y).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn plucker_minors() {
        let model = WedgeModel::new();
        let mut y = vec![Q::zero(); 10];
        // rank-one 2x3 block: rows (1,2,3) and (2,4,6)
        for (j, (u, w)) in [(2, (1, 2)), (3, (2, 4)), (4, (3, 6))] {
            y[model.index(0, j).0] = q(u);
            y[model.index(1, j).0] = q(w);
        }
        assert!(model.plucker(&y).iter().all(|(_, v)| v.is_zero()));
    }
}
