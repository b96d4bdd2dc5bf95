//! Seeded property suites behind the `check` command.
//!
//! Every check draws case `i` from seeds derived from `(seed, check, i)`
//! only, and rows are sorted by case id, so a report is a pure function of
//! `(suite, seed, cases)`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use super::*;
use crate::distfn::levy_metric;
use crate::operator::{bound_check, norm_equivalence_constants, uniform_bound, verify_open_mapping};
use crate::pnspace::validate_pn_axioms;
use crate::triangle::{tau_inf_conv, tau_sup_conv};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Distfn,
    Triangle,
    Pnspace,
    Operator,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Distfn => "distfn",
            Suite::Triangle => "triangle",
            Suite::Pnspace => "pnspace",
            Suite::Operator => "operator",
            Suite::All => "all",
        }
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "distfn" => Ok(Suite::Distfn),
            "triangle" => Ok(Suite::Triangle),
            "pnspace" => Ok(Suite::Pnspace),
            "operator" => Ok(Suite::Operator),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRow {
    pub case_id: String,
    pub cases: usize,
    pub failures: usize,
    pub passed: bool,
    /// First failing case, if any.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub cases: usize,
    pub passed: bool,
    pub rows: Vec<CheckRow>,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("case_id,cases,failures,passed\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.case_id,
                r.cases,
                r.failures,
                if r.passed { "PASS" } else { "FAIL" }
            ));
        }
        out
    }
}

/// Seed of case `i` of check `check`; a splitmix64 finalizer over the triple.
fn case_seed(seed: u64, check: &str, i: usize) -> u64 {
    let mut z = seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    for b in check.bytes() {
        z = (z ^ b as u64).wrapping_mul(0x1000_0000_01B3);
    }
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct Runner {
    seed: u64,
    cases: usize,
    rows: Vec<CheckRow>,
}

impl Runner {
    /// Runs `body` on `count` cases; `body` returns `Err(witness)` on failure.
    fn check(&mut self, id: &str, count: usize, body: impl Fn(u64) -> Result<(), String>) {
        let mut failures = 0;
        let mut witness = None;
        for i in 0..count {
            if let Err(w) = body(case_seed(self.seed, id, i)) {
                failures += 1;
                witness.get_or_insert_with(|| format!("case {i}: {w}"));
            }
        }
        self.rows.push(CheckRow {
            case_id: id.to_string(),
            cases: count,
            failures,
            passed: failures == 0,
            witness,
        });
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pair(s: u64) -> (StepDF, StepDF) {
    (gen_stepdf(s, 5, true), gen_stepdf(s ^ 0xA5A5, 5, s % 3 != 0))
}

fn small_space(s: u64) -> PNSpace {
    gen_space(s, 1 + (s % 4) as usize, 5)
}

/// Runs the selected suite with `cases` cases per check. Checks backed by
/// slow brute-force oracles use a tenth of the cases, at least one.
pub fn run_suite(suite: Suite, seed: u64, cases: usize) -> SuiteReport {
    let mut r = Runner {
        seed,
        cases,
        rows: Vec::new(),
    };
    let few = (cases / 10).max(1).min(cases);
    if suite.includes(Suite::Distfn) {
        distfn_checks(&mut r, few);
    }
    if suite.includes(Suite::Triangle) {
        triangle_checks(&mut r, few);
    }
    if suite.includes(Suite::Pnspace) {
        pnspace_checks(&mut r);
    }
    if suite.includes(Suite::Operator) {
        operator_checks(&mut r, few);
    }
    r.rows.sort_by(|a, b| a.case_id.cmp(&b.case_id));
    SuiteReport {
        suite,
        seed,
        cases,
        passed: r.rows.iter().all(|row| row.passed),
        rows: r.rows,
    }
}

fn distfn_checks(r: &mut Runner, few: usize) {
    let n = r.cases;
    r.check("distfn/quantile_round_trip", n, |s| {
        let f = gen_stepdf(s, 6, s % 2 == 0);
        ensure(f.quasi_inverse().reconstruct() == f, || format!("{f:?}"))
    });
    r.check("distfn/hat_scaling", n, |s| {
        let f = gen_stepdf(s, 6, true);
        for h in [0.5, 2.0, 7.0] {
            let lhs = f.scale(h).unwrap().quasi_inverse();
            ensure(lhs == f.quasi_inverse().scale(h).unwrap(), || format!("h={h}, {f:?}"))?;
        }
        Ok(())
    });
    r.check("distfn/hat_order_reversal", n, |s| {
        let (f, g) = pair(s);
        let k = f.pointwise_max(&g);
        ensure(f.quasi_inverse().dominates(&k.quasi_inverse()), || format!("{f:?} {g:?}"))
    });
    r.check("distfn/hat_injective", n, |s| {
        let (f, g) = pair(s);
        ensure((f == g) == (f.quasi_inverse() == g.quasi_inverse()), || format!("{f:?} {g:?}"))
    });
    r.check("distfn/levy_identity_symmetry", n, |s| {
        let (f, g) = pair(s);
        ensure(levy_metric(&f, &f).value <= 1e-9, || format!("{f:?}"))?;
        let (a, b) = (levy_metric(&f, &g).value, levy_metric(&g, &f).value);
        ensure(a == b, || format!("{a} != {b}"))
    });
    r.check("distfn/levy_unit_steps", n, |s| {
        let a = sampling::rng(s, 0).gen_range(1..=40) as f64 * 0.05;
        let d = levy_metric(&StepDF::unit_step(0.0).unwrap(), &StepDF::unit_step(a).unwrap()).value;
        ensure((d - a.min(1.0)).abs() <= 1e-9, || format!("a={a}, d={d}"))
    });
    r.check("distfn/levy_vs_oracle", few, |s| {
        let (f, g) = pair(s);
        let (d, o) = (levy_metric(&f, &g).value, oracle_levy(&f, &g, &OracleConfig::default()));
        ensure((d - o).abs() <= 1.1e-5, || format!("bisection {d}, oracle {o}"))
    });
}

fn triangle_checks(r: &mut Runner, few: usize) {
    let n = r.cases;
    r.check("triangle/unit_steps", n, |s| {
        let mut rng = sampling::rng(s, 0);
        let a = rng.gen_range(0..=160) as f64 / 16.0;
        let b = rng.gen_range(0..=160) as f64 / 16.0;
        let (ha, hb) = (StepDF::unit_step(a).unwrap(), StepDF::unit_step(b).unwrap());
        let hab = StepDF::unit_step(a + b).unwrap();
        for k in TNormKind::ALL {
            ensure(tau_sup_conv(k, &ha, &hb) == hab, || format!("sup {k} a={a} b={b}"))?;
            ensure(tau_inf_conv(k, &ha, &hb) == hab, || format!("inf {k} a={a} b={b}"))?;
        }
        Ok(())
    });
    r.check("triangle/unit_law_commutativity", n, |s| {
        let (f, g) = pair(s);
        let h0 = StepDF::unit_step(0.0).unwrap();
        for k in TNormKind::ALL {
            ensure(tau_sup_conv(k, &f, &h0) == f, || format!("sup unit {k}"))?;
            ensure(tau_inf_conv(k, &f, &h0) == f, || format!("inf unit {k}"))?;
            ensure(tau_sup_conv(k, &f, &g) == tau_sup_conv(k, &g, &f), || format!("sup comm {k}"))?;
            ensure(tau_inf_conv(k, &f, &g) == tau_inf_conv(k, &g, &f), || format!("inf comm {k}"))?;
        }
        Ok(())
    });
    r.check("triangle/hat_additivity", n, |s| {
        let (f, g) = pair(s);
        let lhs = tau_sup_conv(TNormKind::Min, &f, &g).quasi_inverse();
        ensure(lhs == f.quasi_inverse().add(&g.quasi_inverse()), || format!("{f:?} {g:?}"))
    });
    r.check("triangle/conv_vs_oracle", few, |s| {
        let (f, g) = pair(s);
        let kind = TNormKind::ALL[(s % 3) as usize];
        let cfg = OracleConfig::with_step(1e-3);
        let (sup, inf) = (tau_sup_conv(kind, &f, &g), tau_inf_conv(kind, &f, &g));
        for x in off_breakpoint_points(s, 5, 21.0, &breakpoint_sums(&f, &g), 2e-3) {
            let o = oracle_sup_conv(kind, &f, &g, x, &cfg);
            ensure(sup.eval(x) == o, || format!("sup {kind} x={x}: {} vs {o}", sup.eval(x)))?;
            let o = oracle_inf_conv(kind, &f, &g, x, &cfg);
            ensure(inf.eval(x) == o, || format!("inf {kind} x={x}: {} vs {o}", inf.eval(x)))?;
        }
        Ok(())
    });
}

fn pnspace_checks(r: &mut Runner) {
    let n = r.cases;
    r.check("pnspace/axioms", n, |s| {
        let p = small_space(s);
        let rep = validate_pn_axioms(&p, 20, s);
        ensure(rep.all_passed(), || format!("{:?}", rep.checks.iter().find(|c| !c.passed)))
    });
    r.check("pnspace/single_band_unit_step", n, |s| {
        let dim = 1 + (s % 4) as usize;
        let p = gen_space(s, dim, 1);
        let x = gen_vector(s, dim);
        let expect = StepDF::unit_step(p.norm_at(&x, 0.5).unwrap()).unwrap();
        ensure(p.prob_norm(&x).unwrap() == expect, || format!("x={x:?}"))
    });
    r.check("pnspace/norm_axioms", n, |s| {
        let p = small_space(s);
        let dim = p.dimension();
        let (x, y) = (gen_vector(s, dim), gen_vector(s ^ 1, dim));
        let alpha = sampling::lattice_scalar(&mut sampling::rng(s, 0));
        let sum: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let ax: Vec<f64> = x.iter().map(|c| alpha * c).collect();
        for w in p.band_midpoints() {
            let nx = p.norm_at(&x, w).unwrap();
            ensure(nx > 0.0, || format!("‖x‖ = 0 for x={x:?}"))?;
            ensure(p.norm_at(&sum, w).unwrap() <= nx + p.norm_at(&y, w).unwrap(), || {
                format!("triangle fails at w={w}")
            })?;
            ensure(p.norm_at(&ax, w).unwrap() == alpha.abs() * nx, || {
                format!("homogeneity fails at w={w}")
            })?;
        }
        Ok(())
    });
    r.check("pnspace/product_hat", n, |s| {
        let (p, q) = (small_space(s), small_space(s ^ 7));
        let (x, y) = (gen_vector(s, p.dimension()), gen_vector(s ^ 3, q.dimension()));
        let xy: Vec<f64> = x.iter().chain(&y).copied().collect();
        let lhs = p.product(&q).prob_norm(&xy).unwrap().quasi_inverse();
        let rhs = p.prob_norm(&x).unwrap().quasi_inverse().add(&q.prob_norm(&y).unwrap().quasi_inverse());
        ensure(lhs == rhs, || format!("x={x:?} y={y:?}"))
    });
    r.check("pnspace/pm_axioms", n, |s| {
        let p = small_space(s);
        let dim = p.dimension();
        let (a, b, c) = (gen_vector(s, dim), gen_vector(s ^ 1, dim), gen_vector(s ^ 2, dim));
        let h0 = StepDF::unit_step(0.0).unwrap();
        let ab = p.pm_distance(&a, &b).unwrap();
        ensure(p.pm_distance(&a, &a).unwrap() == h0, || "F_pp ≠ H_0".into())?;
        ensure(ab != h0 || a == b, || "F_pq = H_0 for p ≠ q".into())?;
        ensure(ab == p.pm_distance(&b, &a).unwrap(), || "F_pq ≠ F_qp".into())?;
        let tau = tau_sup_conv(TNormKind::Min, &ab, &p.pm_distance(&b, &c).unwrap());
        ensure(tau.dominated_by(&p.pm_distance(&a, &c).unwrap()), || "PM4 fails".into())
    });
}

fn operator_checks(r: &mut Runner, few: usize) {
    let n = r.cases;
    let spaces = |s: u64| (small_space(s), small_space(s ^ 5));
    r.check("operator/mc_le_exact", n, |s| {
        let (v, w) = spaces(s);
        let t = gen_operator(s, &v, &w);
        let (a, b) = (v.band_midpoints()[0], w.band_midpoints()[0]);
        let (exact, mc) = (t.norm(a, b).unwrap(), t.norm_monte_carlo(a, b, 200, s).unwrap());
        ensure(mc <= exact, || format!("mc {mc} > exact {exact}"))
    });
    r.check("operator/bound_inequality", n, |s| {
        let (v, w) = spaces(s);
        let t = gen_operator(s, &v, &w);
        let rep = bound_check(&t, 0.5, 0.5, 100, s).unwrap();
        ensure(rep.passed, || format!("{rep:?}"))
    });
    r.check("operator/profile_submultiplicative", n, |s| {
        let (u, v) = spaces(s);
        let w = small_space(s ^ 9);
        let (t, sop) = (gen_operator(s, &u, &v), gen_operator(s ^ 1, &v, &w));
        let st = sop.compose(&t).unwrap();
        let prof = st.norm_profile().unwrap();
        ensure(prof.all_finite(), || "non-finite profile entry".into())?;
        for &a in &u.band_midpoints() {
            for &b in &v.band_midpoints() {
                for &c in &w.band_midpoints() {
                    let lhs = st.norm(a, c).unwrap();
                    let rhs = sop.norm(b, c).unwrap() * t.norm(a, b).unwrap();
                    ensure(lhs <= rhs + 1e-9 * rhs.max(1.0), || format!("{lhs} > {rhs}"))?;
                }
            }
        }
        Ok(())
    });
    r.check("operator/open_mapping", few, |s| {
        let v = gen_space(s, 1 + (s % 3) as usize, 3);
        let t = gen_invertible_operator(s, &v);
        for w in v.band_midpoints() {
            let ball = open_mapping_delta(&t, w).unwrap();
            let chk = verify_open_mapping(&t, &ball, 100, 1e-6, s).unwrap();
            ensure(chk.passed, || format!("w={w}: {chk:?}"))?;
        }
        Ok(())
    });
    r.check("operator/norm_equivalence", few, |s| {
        let dim = 1 + (s % 4) as usize;
        let rep = norm_equivalence_constants(&gen_space(s, dim, 4), &gen_space(s ^ 1, dim, 4), 50, s).unwrap();
        ensure(rep.passed, || format!("{} violations", rep.violations))
    });
    r.check("operator/uniform_bound", few, |s| {
        let (v, w) = spaces(s);
        let (family, limit) = gen_convergent_family(s, &v, &w, 10);
        let probes: Vec<Vec<f64>> = (0..5).map(|k| gen_vector(s + k, v.dimension())).collect();
        let ub = uniform_bound(&family, 0.5, &probes).unwrap();
        for t in family.iter().chain([&limit]) {
            let norm = t.norm(ub.w, 0.5).unwrap();
            ensure(norm <= ub.bound * (1.0 + 1e-12), || format!("{norm} > {}", ub.bound))?;
        }
        Ok(())
    });
}
