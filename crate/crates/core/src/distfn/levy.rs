//! The modified Lévy metric on Δ⁺, computed by bisection over an exact
//! feasibility test.

use serde::{Deserialize, Serialize};

use super::StepDF;
use crate::error::{invalid, Result};

/// Bracket width at which the bisection stops. The returned midpoint is
/// within half of this of the infimum.
pub const LEVY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevyDistance {
    pub value: f64,
    pub tolerance: f64,
}

/// Evaluates `F(x - h)` as the step function with breakpoints `t_k + shift`.
/// Comparing against the shifted breakpoints themselves keeps candidate
/// abscissae and evaluation consistent in floating point.
fn shifted_eval(shifted: &[f64], values: &[f64], x: f64) -> f64 {
    values[shifted.partition_point(|&t| t < x)]
}

/// Decides the condition `(F, G; h)`:
/// `F(x - h) - h <= G(x) <= F(x + h) + h` for all `x` in `(-1/h, 1/h)`.
///
/// All three functions of `x` are left-continuous steps, so they are
/// constant on every interval `(c_i, c_{i+1}]` between consecutive candidate
/// abscissae. Testing every candidate plus one point past the last one is
/// therefore exhaustive.
pub fn levy_condition(f: &StepDF, g: &StepDF, h: f64) -> Result<bool> {
    if !(h > 0.0 && h <= 1.0) {
        return Err(invalid("h", h, "Lévy parameter must lie in (0, 1]"));
    }
    Ok(condition_holds(f, g, h))
}

fn condition_holds(f: &StepDF, g: &StepDF, h: f64) -> bool {
    let bound = 1.0 / h;
    let right: Vec<f64> = f.breakpoints().iter().map(|t| t + h).collect();
    let left: Vec<f64> = f.breakpoints().iter().map(|t| t - h).collect();

    let mut cands: Vec<f64> = right
        .iter()
        .chain(&left)
        .chain(g.breakpoints())
        .copied()
        .filter(|&x| -bound < x && x < bound)
        .collect();
    cands.sort_by(f64::total_cmp);
    cands.dedup();

    let mut probes = Vec::with_capacity(2 * cands.len() + 2);
    match (cands.first(), cands.last()) {
        (Some(&first), Some(&last)) => {
            probes.push(0.5 * (-bound + first));
            for pair in cands.windows(2) {
                probes.push(pair[0]);
                probes.push(0.5 * (pair[0] + pair[1]));
            }
            probes.push(last);
            probes.push(0.5 * (last + bound));
        }
        _ => probes.push(0.0),
    }

    let fv = f.values();
    probes.into_iter().all(|x| {
        let gx = g.eval(x);
        shifted_eval(&right, fv, x) - h <= gx && gx <= shifted_eval(&left, fv, x) + h
    })
}

/// `d_L(F, G) = inf{h in (0, 1] : (F, G; h) and (G, F; h)}`.
///
/// The joint condition is monotone in `h` and always holds at `h = 1`.
pub fn levy_metric(f: &StepDF, g: &StepDF) -> LevyDistance {
    let joint = |h: f64| condition_holds(f, g, h) && condition_holds(g, f, h);
    assert!(joint(1.0), "Lévy condition must hold at h = 1");
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    while hi - lo > LEVY_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if joint(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    LevyDistance {
        value: 0.5 * (lo + hi),
        tolerance: LEVY_TOLERANCE,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(a: f64) -> StepDF {
        StepDF::unit_step(a).unwrap()
    }

    /// Dense x-grid check of the condition at resolution 1e-5, scanning the
    /// step semantics directly.
    fn grid_condition(f: &StepDF, g: &StepDF, hh: f64) -> bool {
        let bound = 1.0 / hh;
        let n = (2.0 * bound / 1e-5) as i64;
        (1..n).all(|k| {
            let x = -bound + k as f64 * 1e-5;
            f.eval(x - hh) - hh <= g.eval(x) && g.eval(x) <= f.eval(x + hh) + hh
        })
    }

    #[test]
    fn condition_is_reflexive() {
        let f = StepDF::new(vec![1.0, 2.0], vec![0.0, 0.5, 1.0]).unwrap();
        for &hh in &[1e-6, 0.01, 0.5, 1.0] {
            assert!(levy_condition(&f, &f, hh).unwrap());
        }
    }

    #[test]
    fn condition_against_unit_steps() {
        // expected values frozen from grid_condition
        let cases = [(0.3, 0.2, false), (0.3, 0.3, true), (0.3, 0.5, true), (0.7, 0.69, false), (0.7, 0.75, true)];
        for &(a, hh, expect) in &cases {
            assert_eq!(grid_condition(&h(0.0), &h(a), hh), expect, "grid a={a} h={hh}");
            assert_eq!(levy_condition(&h(0.0), &h(a), hh).unwrap(), expect, "exact a={a} h={hh}");
        }
        assert!(grid_condition(&h(0.0), &h(2.0), 1.0));
        assert!(levy_condition(&h(0.0), &h(2.0), 1.0).unwrap());
    }

    #[test]
    fn condition_rejects_bad_h() {
        assert!(levy_condition(&h(0.0), &h(1.0), 0.0).is_err());
        assert!(levy_condition(&h(0.0), &h(1.0), 1.5).is_err());
    }

    #[test]
    fn metric_of_unit_steps() {
        for &a in &[0.3, 0.7, 2.0] {
            let d = levy_metric(&h(0.0), &h(a));
            assert!((d.value - a.min(1.0)).abs() <= 1e-9, "a={a}: {}", d.value);
        }
        let f = StepDF::new(vec![1.0, 2.0], vec![0.0, 0.5, 1.0]).unwrap();
        assert!(levy_metric(&f, &f).value <= LEVY_TOLERANCE);
    }

    #[test]
    fn metric_is_symmetric() {
        let f = StepDF::new(vec![0.2, 1.5], vec![0.0, 0.3, 1.0]).unwrap();
        let g = StepDF::new(vec![0.4], vec![0.0, 0.8]).unwrap();
        assert_eq!(levy_metric(&f, &g).value, levy_metric(&g, &f).value);
    }
}
