use std::fmt;

use serde::Serialize;

use super::PNSpace;
use crate::distfn::StepDF;
use crate::sampling;
use crate::triangle::{tau_sup_conv, TNormKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axiom {
    /// `p(x, ·)` nondecreasing in `w`.
    Monotone,
    /// `ν_θ = H_0` and `ν_x ≠ H_0` for `x ≠ θ`.
    N1,
    /// `ν_{-x} = ν_x`.
    N2,
    /// `ν_{x+y} ≥ τ_M(ν_x, ν_y)`.
    N3,
    /// `ν_{αx}(t) = ν_x(t / |α|)`.
    Serstnev,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Monotone => "monotone",
            Axiom::N1 => "N1",
            Axiom::N2 => "N2",
            Axiom::N3 => "N3",
            Axiom::Serstnev => "Serstnev",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    pub cases: usize,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks.iter().find(|c| c.axiom == axiom).expect("every axiom is checked")
    }
}

struct Tally {
    axiom: Axiom,
    cases: usize,
    witness: Option<String>,
}

impl Tally {
    fn new(axiom: Axiom) -> Self {
        Self {
            axiom,
            cases: 0,
            witness: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn finish(self) -> AxiomCheck {
        AxiomCheck {
            axiom: self.axiom,
            passed: self.witness.is_none(),
            cases: self.cases,
            witness: self.witness,
        }
    }
}

/// Sampled check of the PN-space axioms under `τ = τ_M`.
///
/// Vectors and scalars are drawn from a dyadic lattice, so for families with
/// dyadic weights every comparison below is exact. The scaling law is
/// compared with a `1e-12` relative slack to accommodate arbitrary weights.
pub fn validate_pn_axioms(space: &PNSpace, samples: usize, seed: u64) -> AxiomReport {
    let n = space.dimension();
    let fam = space.family();
    let mut rng = sampling::rng(seed, 0);
    let h0 = StepDF::unit_step(0.0).unwrap();

    let mut mono = Tally::new(Axiom::Monotone);
    let mut n1 = Tally::new(Axiom::N1);
    let mut n2 = Tally::new(Axiom::N2);
    let mut n3 = Tally::new(Axiom::N3);
    let mut sv = Tally::new(Axiom::Serstnev);

    if let Err(e) = fam.check_monotone() {
        mono.record(false, || e.to_string());
    }

    let zero = vec![0.0; n];
    let nu0 = space.prob_norm(&zero).unwrap();
    n1.record(nu0 == h0, || format!("ν_θ = {nu0:?}"));

    // coordinate probes first, then lattice samples
    let unit = |i: usize| {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        e
    };
    let probes: Vec<Vec<f64>> = (0..n)
        .map(unit)
        .chain((0..samples).map(|_| sampling::nonzero_lattice_vector(&mut rng, n)))
        .collect();

    for (idx, x) in probes.iter().enumerate() {
        let p = fam.band_values(x).unwrap();
        if let Some(k) = p.windows(2).position(|w| w[1] < w[0]) {
            mono.record(false, || {
                format!("x = {x:?}: p decreases from {} to {} at band {}", p[k], p[k + 1], k + 1)
            });
        } else {
            mono.record(true, String::new);
        }

        let nu = space.prob_norm(x).unwrap();
        n1.record(nu != h0, || format!("ν_x = H_0 for x = {x:?}"));

        let neg: Vec<f64> = x.iter().map(|c| -c).collect();
        let nu_neg = space.prob_norm(&neg).unwrap();
        n2.record(nu_neg == nu, || format!("ν_-x ≠ ν_x for x = {x:?}"));

        if idx < n {
            continue;
        }
        let y = sampling::lattice_vector(&mut rng, n);
        let sum: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let lhs = space.prob_norm(&sum).unwrap();
        let rhs = tau_sup_conv(TNormKind::Min, &nu, &space.prob_norm(&y).unwrap());
        n3.record(rhs.dominated_by(&lhs), || {
            format!("ν_(x+y) < τ_M(ν_x, ν_y) for x = {x:?}, y = {y:?}")
        });

        let alpha = sampling::lattice_scalar(&mut rng);
        let scaled: Vec<f64> = x.iter().map(|c| alpha * c).collect();
        let lhs = space.prob_norm(&scaled).unwrap();
        let rhs = nu.scale(alpha.abs()).unwrap();
        sv.record(lhs.approx_eq(&rhs, 1e-12), || {
            format!("ν_(αx) ≠ ν_x(·/|α|) for α = {alpha}, x = {x:?}")
        });
    }

    AxiomReport {
        checks: vec![mono.finish(), n1.finish(), n2.finish(), n3.finish(), sv.finish()],
    }
}
