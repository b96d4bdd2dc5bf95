//! Finite-dimensional instances of the bounded-operator results: the norm
//! inequality, functional norms, graph norms, open mapping radii, norm
//! equivalence constants and uniform bounds over operator families.

use serde::Serialize;

use super::LinearOperator;
use crate::error::{invalid, Error, Result};
use crate::pnspace::{check_open_unit, PNSpace};
use crate::sampling;

use rand::Rng;
use rand_distr::StandardNormal;

/// Random nonzero vector with a spread of magnitudes.
fn sample_vector(seed: u64, stream: u64, n: usize) -> Vec<f64> {
    let mut rng = sampling::rng(seed, stream);
    let g: f64 = rng.sample(StandardNormal);
    let scale = (2.0 * g).exp();
    sampling::direction(&mut rng, n, stream)
        .into_iter()
        .map(|c| c * scale)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub w: f64,
    pub wp: f64,
    pub norm: f64,
    /// Largest `‖Tx‖_{w'} / ‖x‖_w` over the nonzero trials.
    pub max_ratio: f64,
    /// The ratio at the maximizing vertex of the unit ball.
    pub witness_ratio: f64,
    pub trials: usize,
    pub passed: bool,
}

/// Checks `‖Tx‖_{w'} <= ‖T‖_{(w,w')} ‖x‖_w` on `θ` and `trials - 1` random vectors.
pub fn bound_check(t: &LinearOperator, w: f64, wp: f64, trials: usize, seed: u64) -> Result<BoundReport> {
    let (norm, witness) = t.norm_with_witness(w, wp)?;
    let n = t.domain().dimension();
    let (dom, cod) = (t.domain(), t.codomain());

    let zero = vec![0.0; n];
    let mut passed = cod.norm_at_unchecked(&t.apply_unchecked(&zero), wp) <= 0.0;
    let mut max_ratio: f64 = 0.0;
    for i in 1..trials as u64 {
        let x = sample_vector(seed, i, n);
        let ratio = cod.norm_at_unchecked(&t.apply_unchecked(&x), wp) / dom.norm_at_unchecked(&x, w);
        max_ratio = max_ratio.max(ratio);
    }
    passed &= max_ratio <= norm + 1e-9;

    let witness_ratio = if norm > 0.0 {
        cod.norm_at_unchecked(&t.apply_unchecked(&witness), wp) / dom.norm_at_unchecked(&witness, w)
    } else {
        0.0
    };
    Ok(BoundReport {
        w,
        wp,
        norm,
        max_ratio,
        witness_ratio,
        trials,
        passed,
    })
}

fn check_functional(f: &LinearOperator) -> Result<()> {
    let cod = f.codomain();
    let scalar = cod.dimension() == 1
        && cod.num_bands() == 1
        && cod.family().bands()[0].blocks[0].weights == [1.0];
    if scalar {
        Ok(())
    } else {
        Err(Error::Unsupported(
            "a functional needs the 1-dimensional single-band codomain with weight 1".into(),
        ))
    }
}

/// `‖f‖_w`: the limit as `w' ↓ w` of `sup{|f(x)| : ‖x‖_{w'} <= 1}`. For a
/// band-constant family this is the supremum over the unit ball of the band
/// containing `w` (the band to the right at a boundary).
pub fn functional_norm(f: &LinearOperator, w: f64) -> Result<f64> {
    check_functional(f)?;
    check_open_unit("w", w)?;
    let fam = f.domain().family();
    let mid = fam.band_midpoints()[fam.band_index(w)];
    f.norm(mid, 0.5)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Trend {
    Constant,
    Nonincreasing,
    Nondecreasing,
    Neither,
}

impl Trend {
    pub fn of(values: &[f64]) -> Trend {
        let up = values.windows(2).all(|p| p[0] <= p[1]);
        let down = values.windows(2).all(|p| p[0] >= p[1]);
        match (up, down) {
            (true, true) => Trend::Constant,
            (true, false) => Trend::Nondecreasing,
            (false, true) => Trend::Nonincreasing,
            (false, false) => Trend::Neither,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FunctionalNormProfile {
    /// `[lower, upper)` of each domain band.
    pub bands: Vec<(f64, f64)>,
    pub values: Vec<f64>,
    /// Observed direction of `w ↦ ‖f‖_w`.
    pub trend: Trend,
}

pub fn functional_norm_profile(f: &LinearOperator) -> Result<FunctionalNormProfile> {
    check_functional(f)?;
    let fam = f.domain().family();
    let bands: Vec<_> = (0..fam.bands().len()).map(|k| fam.band_bounds(k)).collect();
    let values = fam
        .band_midpoints()
        .into_iter()
        .map(|m| f.norm(m, 0.5))
        .collect::<Result<Vec<_>>>()?;
    let trend = Trend::of(&values);
    Ok(FunctionalNormProfile { bands, values, trend })
}

/// `‖x‖'_{V,w} = ‖x‖_{V,w} + ‖Tx‖_{W,w'}`.
pub fn graph_norm(t: &LinearOperator, x: &[f64], w: f64, wp: f64) -> Result<f64> {
    let tx = t.apply(x)?;
    Ok(t.domain().norm_at(x, w)? + t.codomain().norm_at(&tx, wp)?)
}

/// Radius `δ` with `B_{W,w}(0; δ) ⊂ T(B_{V,w}(0; 1))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OpenMappingBall {
    pub w: f64,
    pub delta: f64,
    /// `‖T⁻¹‖_{(w,w)}`.
    pub inverse_norm: f64,
    /// `‖T‖_{(w,w)} ‖T⁻¹‖_{(w,w)}`.
    pub condition: f64,
    #[serde(skip)]
    pub inverse: LinearOperator,
}

/// Condition numbers above this are treated as singular.
const MAX_CONDITION: f64 = 1e15;

pub fn open_mapping_delta(t: &LinearOperator, w: f64) -> Result<OpenMappingBall> {
    check_open_unit("w", w)?;
    let (n, m) = (t.domain().dimension(), t.codomain().dimension());
    if n != m {
        return Err(Error::DimensionMismatch { expected: n, found: m });
    }
    let inv = t
        .matrix()
        .clone()
        .try_inverse()
        .ok_or(Error::Singular { condition: f64::INFINITY })?;
    if inv.iter().any(|v| !v.is_finite()) {
        return Err(Error::Singular { condition: f64::INFINITY });
    }
    let inverse = LinearOperator::new(inv, t.codomain().clone(), t.domain().clone())?;
    let inverse_norm = inverse.norm(w, w)?;
    let condition = t.norm(w, w)? * inverse_norm;
    if !condition.is_finite() || condition > MAX_CONDITION || inverse_norm == 0.0 {
        return Err(Error::Singular { condition });
    }
    Ok(OpenMappingBall {
        w,
        delta: 1.0 / inverse_norm,
        inverse_norm,
        condition,
        inverse,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OpenMappingCheck {
    pub samples: usize,
    pub radius: f64,
    pub max_preimage_norm: f64,
    pub passed: bool,
}

/// Samples `y` with `‖y‖_{W,w} = δ(1 - shrink)`, solves `Tx = y`, and checks
/// `‖x‖_{V,w} < 1`.
pub fn verify_open_mapping(
    t: &LinearOperator,
    ball: &OpenMappingBall,
    samples: usize,
    shrink: f64,
    seed: u64,
) -> Result<OpenMappingCheck> {
    if !(0.0..1.0).contains(&shrink) {
        return Err(invalid("shrink", shrink, "must lie in [0, 1)"));
    }
    let w = ball.w;
    let radius = ball.delta * (1.0 - shrink.max(1e-9));
    let lu = t.matrix().clone().lu();
    let m = t.codomain().dimension();
    let mut max_preimage_norm: f64 = 0.0;
    for i in 0..samples as u64 {
        let mut rng = sampling::rng(seed, i);
        let d = sampling::direction(&mut rng, m, i);
        let r = t.codomain().norm_at_unchecked(&d, w);
        let y = nalgebra::DVector::from_iterator(m, d.iter().map(|c| c / r * radius));
        let x = lu.solve(&y).ok_or(Error::Singular { condition: ball.condition })?;
        let xs: Vec<f64> = x.iter().copied().collect();
        max_preimage_norm = max_preimage_norm.max(t.domain().norm_at_unchecked(&xs, w));
    }
    Ok(OpenMappingCheck {
        samples,
        radius,
        max_preimage_norm,
        passed: max_preimage_norm < 1.0,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    /// `C[i][j] = ‖id‖_{(w_i, w'_j)}` from the first space to the second.
    pub forward: Vec<Vec<f64>>,
    /// `c[j][i] = ‖id‖_{(w'_j, w_i)}` back from the second space.
    pub backward: Vec<Vec<f64>>,
    pub samples: usize,
    pub violations: usize,
    pub passed: bool,
}

/// Constants of the identity map in both directions, verified on samples:
/// `‖x‖'_{w'} <= C ‖x‖_w` and `‖x‖_w <= c ‖x‖'_{w'}`.
pub fn norm_equivalence_constants(
    p1: &PNSpace,
    p2: &PNSpace,
    trials: usize,
    seed: u64,
) -> Result<EquivalenceReport> {
    if p1.dimension() != p2.dimension() {
        return Err(Error::DimensionMismatch {
            expected: p1.dimension(),
            found: p2.dimension(),
        });
    }
    let there = LinearOperator::identity_between(p1.clone(), p2.clone())?;
    let back = LinearOperator::identity_between(p2.clone(), p1.clone())?;
    let (w1, w2) = (p1.band_midpoints(), p2.band_midpoints());
    let forward = w1
        .iter()
        .map(|&w| w2.iter().map(|&wp| there.norm(w, wp)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let backward = w2
        .iter()
        .map(|&wp| w1.iter().map(|&w| back.norm(wp, w)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;

    let slack = 1.0 + 1e-9;
    let mut violations = 0;
    for s in 0..trials as u64 {
        let x = sample_vector(seed, s, p1.dimension());
        for (i, &w) in w1.iter().enumerate() {
            let a = p1.norm_at_unchecked(&x, w);
            for (j, &wp) in w2.iter().enumerate() {
                let b = p2.norm_at_unchecked(&x, wp);
                if b > forward[i][j] * a * slack {
                    violations += 1;
                }
                if a > backward[j][i] * b * slack {
                    violations += 1;
                }
            }
        }
    }
    Ok(EquivalenceReport {
        forward,
        backward,
        samples: trials,
        violations,
        passed: violations == 0,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniformBound {
    /// Midpoint of the selected domain band.
    pub w: f64,
    pub band: usize,
    /// `sup_n ‖T_n‖_{(w,w')}` at the selected band.
    pub bound: f64,
    /// The same supremum for every domain band.
    pub band_sups: Vec<f64>,
    /// `sup_n ‖T_n x‖_{w'}` for each probe vector.
    pub probe_sups: Vec<f64>,
}

/// For a finite family sharing domain and codomain, finds the domain band
/// minimizing `sup_n ‖T_n‖_{(w,w')}`.
pub fn uniform_bound(family: &[LinearOperator], wp: f64, probes: &[Vec<f64>]) -> Result<UniformBound> {
    let first = family.first().ok_or(Error::EmptyFamily)?;
    check_open_unit("w'", wp)?;
    if let Some(t) = family
        .iter()
        .find(|t| t.domain() != first.domain() || t.codomain() != first.codomain())
    {
        return Err(Error::DimensionMismatch {
            expected: first.domain().dimension(),
            found: t.domain().dimension(),
        });
    }
    let mids = first.domain().band_midpoints();
    let mut band_sups = Vec::with_capacity(mids.len());
    for &w in &mids {
        let mut sup: f64 = 0.0;
        for t in family {
            sup = sup.max(t.norm(w, wp)?);
        }
        band_sups.push(sup);
    }
    let band = (0..band_sups.len())
        .min_by(|&a, &b| band_sups[a].total_cmp(&band_sups[b]))
        .unwrap();
    let probe_sups = probes
        .iter()
        .map(|x| {
            family.iter().try_fold(0.0_f64, |acc, t| {
                Ok(acc.max(t.codomain().norm_at(&t.apply(x)?, wp)?))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(UniformBound {
        w: mids[band],
        band,
        bound: band_sups[band],
        band_sups,
        probe_sups,
    })
}
