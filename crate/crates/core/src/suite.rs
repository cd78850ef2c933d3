//! Verification driver: runs the checks of every module and collects
//! [`CheckReport`]s.

use std::cell::OnceCell;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cases::Case;
use crate::delpezzo::{self, ClassKind, Dictionary, IncidenceGraph, PicardLattice};
use crate::error::{Error, Result};
use crate::homspace::{self, ConeSpace, FormBundle};
use crate::minrep::{self, MinusculeModule, ModuleVector};
use crate::rational::{RationalJson, Q};
use crate::rootlat::{self, RootSystemData, Weight};
use crate::stability::{self, PairVerdict, WeightPolytope};
use crate::wedge::{self, WedgeModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Outcome of one named check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check_name: String,
    /// The claim the check exercises.
    pub anchor: String,
    pub case: Option<String>,
    pub status: Status,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(CheckReport::passed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Rep,
    Forms,
    Fibres,
    Stability,
    Delpezzo,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Rep, Suite::Forms, Suite::Fibres, Suite::Stability, Suite::Delpezzo];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Rep => "rep",
            Suite::Forms => "forms",
            Suite::Fibres => "fibres",
            Suite::Stability => "stability",
            Suite::Delpezzo => "delpezzo",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::UnsupportedType(format!("suite {s}")))
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub seed: u64,
    pub identity_samples: usize,
    pub fibre_samples: usize,
    pub timings: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 42, identity_samples: 100, fibre_samples: 20, timings: false }
    }
}

/// Lazily built objects shared by the checks of one case.
pub struct CaseContext {
    pub case: Case,
    module: OnceCell<Result<MinusculeModule>>,
    space: OnceCell<ConeSpace>,
    forms: OnceCell<FormBundle>,
    polytope: OnceCell<WeightPolytope>,
    pairs: OnceCell<Vec<PairVerdict>>,
}

impl CaseContext {
    pub fn new(case: Case) -> Self {
        CaseContext {
            case,
            module: OnceCell::new(),
            space: OnceCell::new(),
            forms: OnceCell::new(),
            polytope: OnceCell::new(),
            pairs: OnceCell::new(),
        }
    }

    pub fn module(&self) -> Result<&MinusculeModule> {
        self.module.get_or_init(|| self.case.module()).as_ref().map_err(Clone::clone)
    }

    pub fn space(&self) -> Result<&ConeSpace> {
        let m = self.module()?;
        Ok(self.space.get_or_init(|| ConeSpace::new(m.clone())))
    }

    pub fn forms(&self) -> Result<&FormBundle> {
        let s = self.space()?;
        Ok(self.forms.get_or_init(|| s.extract_forms()))
    }

    pub fn polytope(&self) -> Result<&WeightPolytope> {
        if let Some(p) = self.polytope.get() {
            return Ok(p);
        }
        let p = WeightPolytope::new(self.case.root_system(), &self.case.highest_weight())?;
        Ok(self.polytope.get_or_init(|| p))
    }

    pub fn pairs(&self) -> Result<&[PairVerdict]> {
        let p = self.polytope()?;
        Ok(self.pairs.get_or_init(|| p.pair_table()))
    }
}

struct Runner<'a> {
    opts: &'a SuiteOptions,
    out: Vec<CheckReport>,
}

impl Runner<'_> {
    fn check(&mut self, name: &str, anchor: &str, case: Option<Case>, f: impl FnOnce() -> Result<(bool, Value)>) {
        let start = Instant::now();
        let (status, details) = match f() {
            Ok((true, d)) => (Status::Pass, d),
            Ok((false, d)) => (Status::Fail, d),
            Err(e) => (Status::Fail, json!({"error": e.to_string()})),
        };
        self.out.push(CheckReport {
            check_name: name.to_string(),
            anchor: anchor.to_string(),
            case: case.map(|c| c.name().to_string()),
            status,
            details,
            elapsed_ms: self.opts.timings.then(|| start.elapsed().as_millis() as u64),
        });
    }

    fn skip(&mut self, name: &str, anchor: &str, case: Case, reason: &str) {
        self.out.push(CheckReport {
            check_name: name.to_string(),
            anchor: anchor.to_string(),
            case: Some(case.name().to_string()),
            status: Status::Skipped,
            details: json!({"reason": reason}),
            elapsed_ms: None,
        });
    }
}

/// Expected `(dim V₀, dim V₁, …)`.
pub fn expected_grades(case: Case) -> Vec<usize> {
    match case {
        Case::A4 => vec![1, 6, 3],
        Case::D5 => vec![1, 10, 5],
        Case::E6 => vec![1, 16, 10],
        Case::E7 => vec![1, 27, 27, 1],
    }
}

/// Common rank of the quadratic forms.
pub fn expected_form_rank(case: Case) -> usize {
    2 * case.rank() - 4
}

/// Exceptional, conic and root class counts.
pub fn expected_class_counts(case: Case) -> [usize; 3] {
    match case {
        Case::A4 => [10, 5, 20],
        Case::D5 => [16, 10, 40],
        Case::E6 => [27, 27, 72],
        Case::E7 => [56, 126, 126],
    }
}

/// Runs the requested suites over the requested cases. Reports are ordered
/// by check name, then case.
pub fn run_suite(cases: &[Case], suites: &[Suite], opts: &SuiteOptions) -> Vec<CheckReport> {
    let suites: BTreeSet<Suite> = suites.iter().copied().collect();
    let mut runner = Runner { opts, out: Vec::new() };
    for &case in cases {
        let ctx = CaseContext::new(case);
        for &suite in &suites {
            match suite {
                Suite::Rep => rep_checks(&mut runner, &ctx),
                Suite::Forms => form_checks(&mut runner, &ctx),
                Suite::Fibres => fibre_checks(&mut runner, &ctx),
                Suite::Stability => stability_checks(&mut runner, &ctx),
                Suite::Delpezzo => delpezzo_checks(&mut runner, &ctx),
            }
        }
    }
    if suites.contains(&Suite::Stability) {
        runner.check("excluded-list", "the excluded pairs violate (ω²) > ½(α²)", None, excluded_list);
    }
    let mut out = runner.out;
    out.sort_by(|a, b| (&a.check_name, &a.case).cmp(&(&b.check_name, &b.case)));
    out
}

fn rep_checks(run: &mut Runner, ctx: &CaseContext) {
    let case = Some(ctx.case);
    run.check("orbit-size", "|Wω| = dim V = 10, 16, 27, 56", case, || {
        let m = ctx.module()?;
        let ok = m.weights().len() == ctx.case.dim() && m.dim() == ctx.case.dim();
        Ok((ok, json!({"orbit": m.weights().len(), "dim": m.dim(), "expected": ctx.case.dim()})))
    });
    run.check("graded-dimensions", "V = V0 ⊕ V1 ⊕ V2 (⊕ V3) dimensions", case, || {
        let dims = ctx.module()?.grade_dims();
        let expected = expected_grades(ctx.case);
        Ok((dims == expected, json!({"dims": dims, "expected": expected})))
    });
    run.check("module-relations", "Chevalley and Serre relations on every basis vector", case, || {
        let report = minrep::verify_module_relations(ctx.module()?);
        Ok((report.all_passed(), serde_json::to_value(&report).expect("serializable")))
    });
    run.check(
        "levi-highest-weight",
        "V1 has highest g'-weight the fundamental weight at the adjacent node",
        case,
        || {
            let m = ctx.module()?;
            let summary = minrep::levi_decomposition(m, ctx.case.cut())?;
            Ok((summary.holds(), serde_json::to_value(&summary).expect("serializable")))
        },
    );
    run.check("weyl-order", "|W| = 120, 1920, 51840, 2903040 by stabilizer chain", case, || {
        let m = ctx.module()?;
        let rs = m.rootsys();
        let on_orbit = rootlat::weyl_group_order(rs, m.weights())?;
        let on_roots = rs.weyl_group_order()?;
        let closed = rs.label().weyl_order();
        let ok = Some(on_orbit) == closed && on_roots == on_orbit;
        Ok((ok, json!({"orbit_chain": on_orbit.to_string(), "root_chain": on_roots.to_string(), "closed_form": closed.map(|c| c.to_string())})))
    });
}

fn form_checks(run: &mut Runner, ctx: &CaseContext) {
    let case = Some(ctx.case);
    let seed = run.opts.seed;
    let samples = run.opts.identity_samples;
    run.check("form-ranks", "ranks of p_λ are 4, 6, 8, 10", case, || {
        let forms = ctx.forms()?;
        let ranks = forms.ranks();
        let expected = expected_form_rank(ctx.case);
        let ok = ranks.iter().all(|&r| r == expected) && ranks.len() == expected_grades(ctx.case)[2];
        Ok((ok, json!({"forms": ranks.len(), "ranks": ranks, "expected": expected})))
    });
    run.check("form-homogeneity", "p_{μν} = 0 unless μ + ν matches λ; forms symmetric", case, || {
        Ok((homspace::forms_are_homogeneous(ctx.space()?, ctx.forms()?), json!({})))
    });
    run.check("identities", "2p(x,y) = x·y, 3q(x,x,y) = p(x)·y, cone equations, ∂q ↔ p", case, || {
        let report = homspace::verify_identities(ctx.space()?, ctx.forms()?, seed, samples)?;
        let mut d = serde_json::to_value(&report).expect("serializable");
        d["seed"] = json!(seed);
        Ok((report.all_passed(), d))
    });
    if ctx.case == Case::A4 {
        run.check("plucker-model", "A4 forms are the Plücker relations of Λ²(k⁵)", case, || {
            let m = ctx.module()?;
            let space = ctx.space()?;
            let model = WedgeModel::new();
            let Some(matching) = wedge::match_module(m, &model) else {
                return Ok((false, json!({"error": "no signed isomorphism with the model"})));
            };
            let agree = wedge::plucker_agreement(ctx.forms()?, &matching);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pfaffian_ok = true;
            for _ in 0..samples {
                let x = space.random_v1(&mut rng, false);
                let pt = space.exp_point(&x)?;
                pfaffian_ok &= model.pfaffians(&matching.transport(&space.join(&pt))).iter().all(Zero::is_zero);
            }
            let signs: Vec<i64> = matching.to_model.iter().map(|p| p.1).collect();
            Ok((agree && pfaffian_ok, json!({"forms_match": agree, "pfaffians_vanish": pfaffian_ok, "signs": signs, "seed": seed, "samples": samples})))
        });
    } else {
        run.skip("plucker-model", "A4 forms are the Plücker relations of Λ²(k⁵)", ctx.case, "model exists for a4 only");
    }
    if ctx.case == Case::E7 {
        run.check("cubic-coefficients", "all q_{μνξ} nonzero; ∂q/∂x_μ = ±p_{-μ}", case, || {
            let space = ctx.space()?;
            let forms = ctx.forms()?;
            let coeffs = forms.q_coeffs();
            let nonzero = coeffs.values().all(|c| !c.is_zero());
            let matching = homspace::gradient_matching(space, forms);
            let distinct = matching.as_ref().map(|m| m.iter().map(|p| p.0).collect::<BTreeSet<_>>().len());
            let ok = nonzero && coeffs.len() == 45 && distinct == Some(forms.v2().len());
            Ok((ok, json!({"triples": coeffs.len(), "all_nonzero": nonzero, "gradients_matched": distinct})))
        });
    }
}

fn fibre_checks(run: &mut Runner, ctx: &CaseContext) {
    let case = Some(ctx.case);
    let seed = run.opts.seed;
    let samples = run.opts.fibre_samples;
    run.check("subcone-samples", "(G'/P')_a = p⁻¹(0); generic points have p(x) ≠ 0", case, || {
        let space = ctx.space()?;
        let zeros = vec![Q::zero(); space.levi_negative_roots().len()];
        let base = space.subcone_point(&zeros) == ModuleVector::basis(space.dim(), space.v1_highest());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut on = 0;
        let mut off = 0;
        for _ in 0..samples {
            let x = space.subcone_sample(&mut rng);
            on += usize::from(!x.is_zero() && space.p_of(&x)?.is_zero());
            off += usize::from(!space.p_of(&space.random_v1(&mut rng, true))?.is_zero());
        }
        let zero = ModuleVector::zeros(space.dim());
        let rejects = homspace::fibre_off_subcone(space, &zero) == Err(Error::ZeroVector);
        let ok = base && on == samples && off == samples && rejects;
        Ok((ok, json!({"seed": seed, "samples": samples, "on_subcone_vanish": on, "generic_nonvanishing": off, "origin_rejected": rejects})))
    });
    run.check("blowup-fibres", "fibres g_t·exp(x) off the subcone; exp(u)·(0,x,0,0) on it", case, || {
        let report = homspace::verify_blowup_fibres(ctx.space()?, ctx.forms()?, seed, samples)?;
        let failed: Vec<&str> = report.samples.iter().filter(|s| !s.passed).map(|s| s.detail.as_str()).collect();
        Ok((
            report.all_passed(),
            json!({"seed": seed, "off_subcone": report.count("off-subcone"), "on_subcone": report.count("on-subcone"), "failed": failed}),
        ))
    });
}

fn stability_checks(run: &mut Runner, ctx: &CaseContext) {
    let case = Some(ctx.case);
    run.check("polytope-vertices", "Σ_{w∈W} wω = 0 and every orbit point is a vertex", case, || {
        let p = ctx.polytope()?;
        let sum_zero = p.vertex_sum().iter().all(Zero::is_zero);
        let vertices = (0..p.len()).all(|i| p.is_vertex(i));
        Ok((sum_zero && vertices, json!({"sum_zero": sum_zero, "all_vertices": vertices, "points": p.len()})))
    });
    run.check("edge-agreement", "LP edges of Conv(Wω) ⟺ (μ,ν) = (ω,ω) - 1", case, || {
        let pairs = ctx.pairs()?;
        let mismatches: Vec<(usize, usize)> =
            pairs.iter().filter(|p| p.lp_adjacent != p.pairing_adjacent).map(|p| (p.i, p.j)).collect();
        let edges = pairs.iter().filter(|p| p.lp_adjacent).count();
        Ok((mismatches.is_empty(), json!({"pairs": pairs.len(), "edges": edges, "mismatches": mismatches})))
    });
    run.check("removals", "orbit minus one vertex or a non-adjacent pair is stable", case, || {
        let p = ctx.polytope()?;
        let full: Vec<usize> = (0..p.len()).collect();
        let table = p.removal_table();
        let unstable: Vec<(usize, usize)> = table.pairs.iter().filter(|x| !x.stable).map(|x| (x.i, x.j)).collect();
        let singles = table.singles.iter().filter(|&&s| s).count();
        let ok = p.zero_in_interior(&full) && table.all_stable();
        Ok((ok, json!({"singles_stable": singles, "pairs_checked": table.pairs.len(), "unstable_pairs": unstable})))
    });
    run.check("fundamental-inequality", "(ω²) > ½(α²)", case, || {
        let c = stability::fundamental_inequality(&ctx.case.root_system(), ctx.case.cut())?;
        Ok((c.holds, serde_json::to_value(&c).expect("serializable")))
    });
}

fn excluded_list() -> Result<(bool, Value)> {
    let mut rows = Vec::new();
    let mut ok = true;
    for (t, node) in stability::excluded_pairs(8) {
        let c = stability::fundamental_inequality(&RootSystemData::new(t)?, node)?;
        ok &= !c.holds;
        rows.push(json!({"type": t.to_string(), "node": node + 1, "omega_norm": RationalJson::from(&c.omega_norm), "holds": c.holds}));
    }
    Ok((ok, json!({"pairs": rows})))
}

fn delpezzo_checks(run: &mut Runner, ctx: &CaseContext) {
    let case = Some(ctx.case);
    let r = ctx.case.rank();
    run.check("class-counts", "exceptional, conic and root classes of N_r", case, || {
        let l = PicardLattice::new(r)?;
        let k = l.canonical();
        let counts = [ClassKind::Exceptional, ClassKind::Conic, ClassKind::Root]
            .map(|kind| delpezzo::enumerate_classes(&l, kind).map(|v| v.len()));
        let counts = [counts[0].clone()?, counts[1].clone()?, counts[2].clone()?];
        let positive = ctx.case.root_system().positive_roots().len();
        let ok = counts == expected_class_counts(ctx.case) && counts[2] == 2 * positive && l.dot(&k, &k) == l.degree();
        Ok((ok, json!({"exceptional": counts[0], "conic": counts[1], "roots": counts[2], "k_squared": l.dot(&k, &k)})))
    });
    run.check("simple-roots", "Gram matrix of the β_i is minus the Cartan matrix", case, || {
        let l = PicardLattice::new(r)?;
        let sigma: Vec<usize> = delpezzo::root_dictionary(r)?.iter().map(|s| s + 1).collect();
        Ok((delpezzo::simple_roots_match_cartan(&l), json!({"beta_to_alpha": sigma})))
    });
    run.check(
        "class-weight-dictionary",
        "ℓ + K/d ∈ Wω, c + 2K/d ∈ Wω₁; ℓ_r ↦ ω, ℓ₀ - ℓ₁ ↦ ω₁",
        case,
        || {
            let l = PicardLattice::new(r)?;
            let d = Dictionary::new(l)?;
            let mut ok = true;
            for (kind, orbit) in [(ClassKind::Exceptional, d.omega_orbit()), (ClassKind::Conic, d.omega1_orbit())] {
                let images: BTreeSet<Vec<i64>> = delpezzo::enumerate_classes(&l, kind)?
                    .iter()
                    .map(|c| d.class_to_weight(c).map(|w| w.0))
                    .collect::<Result<_>>()?;
                ok &=
                    images.len() == orbit.len() && images.iter().all(|w| orbit.index_of(&Weight(w.clone())).is_some());
            }
            let anchor_r = d.class_to_weight(&l.class(l.ell(r)))? == ctx.case.highest_weight();
            let mut c = l.ell(0);
            c[1] = 1;
            let anchor_1 = d.class_to_weight(&l.class(c))? == Weight::fundamental(r, 0);
            Ok((
                ok && anchor_r && anchor_1,
                json!({"bijective": ok, "ell_r_to_omega": anchor_r, "conic_to_omega1": anchor_1}),
            ))
        },
    );
    run.check(
        "intersection-adjacency",
        "(ℓ·ℓ') = 1/d - (x,x'); (ℓ·ℓ') = 0 ⟺ adjacent vertices",
        case,
        || {
            let d = Dictionary::new(PicardLattice::new(r)?)?;
            let report = delpezzo::intersection_vs_adjacency(&d, ctx.pairs()?)?;
            Ok((report.holds(), serde_json::to_value(&report).expect("serializable")))
        },
    );
    run.check("weyl-transitivity", "W(R_r) is transitive on exceptional and on conic classes", case, || {
        let report = delpezzo::weyl_transitivity(&Dictionary::new(PicardLattice::new(r)?)?)?;
        Ok((report.holds(), serde_json::to_value(&report).expect("serializable")))
    });
    if r >= 5 {
        run.check("blowup-census", "exceptional classes of N_r from those of N_{r-1}", case, || {
            let report = delpezzo::blowup_census(r)?;
            let mut d = serde_json::to_value(&report).expect("serializable");
            d["total"] = json!(report.total());
            Ok((report.holds() && report.total() == ctx.case.dim(), d))
        });
    } else {
        run.skip("blowup-census", "exceptional classes of N_r from those of N_{r-1}", ctx.case, "base case");
    }
    run.check("incidence-graph", "incidence graph of exceptional classes is vertex-transitive", case, || {
        let l = PicardLattice::new(r)?;
        let g = IncidenceGraph::new(&l)?;
        let ok = g.vertices.len() == ctx.case.dim() && g.is_vertex_transitive(&l);
        Ok((ok, json!({"vertices": g.vertices.len(), "edges": g.edges.len()})))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a4_runs_clean() {
        let opts = SuiteOptions { identity_samples: 10, fibre_samples: 3, ..SuiteOptions::default() };
        let reports = run_suite(&[Case::A4], &Suite::ALL, &opts);
        for r in &reports {
            assert!(r.passed(), "{} failed: {}", r.check_name, r.details);
        }
        let names: Vec<&str> = reports.iter().map(|r| r.check_name.as_str()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        assert!(reports.iter().all(|r| r.elapsed_ms.is_none()));
    }

    #[test]
    fn suite_names() {
        assert_eq!("fibres".parse::<Suite>().unwrap(), Suite::Fibres);
        assert!("bogus".parse::<Suite>().is_err());
        assert_eq!(expected_form_rank(Case::E7), 10);
    }
}
