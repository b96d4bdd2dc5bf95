//! Distance distribution functions with finitely many jumps.
//!
//! A [`StepDF`] is a left-continuous nondecreasing step function on the
//! extended reals with `F(x) = 0` for `x <= 0`. It is stored in canonical
//! form (strictly increasing breakpoints, a strict jump at every breakpoint),
//! so structural equality is equality of functions.

mod levy;
mod quantile;

pub use levy::{levy_condition, levy_metric, LevyDistance, LEVY_TOLERANCE};
pub use quantile::StepQuantile;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Left-continuous step distribution function in Δ⁺.
///
/// `F(x) = values[i]` where `i = #{k : breakpoints[k] < x}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawStepDf")]
pub struct StepDF {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

#[derive(Deserialize)]
struct RawStepDf {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl TryFrom<RawStepDf> for StepDF {
    type Error = Error;

    fn try_from(raw: RawStepDf) -> Result<Self> {
        StepDF::new(raw.breakpoints, raw.values)
    }
}

impl StepDF {
    /// Validates and canonicalizes a step d.f.
    ///
    /// Needs `values.len() == breakpoints.len() + 1`, at least one
    /// breakpoint, strictly increasing finite breakpoints `>= 0`, and
    /// nondecreasing values in `[0, 1]` starting at 0. Breakpoints without a
    /// jump are dropped.
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if breakpoints.is_empty() {
            return Err(Error::InvalidStepDf("at least one breakpoint is required".into()));
        }
        if values.len() != breakpoints.len() + 1 {
            return Err(Error::InvalidStepDf(format!(
                "expected {} values for {} breakpoints, got {}",
                breakpoints.len() + 1,
                breakpoints.len(),
                values.len()
            )));
        }
        if let Some(t) = breakpoints.iter().find(|t| !t.is_finite() || **t < 0.0) {
            return Err(Error::InvalidStepDf(format!(
                "breakpoints must be finite and nonnegative, got {t}"
            )));
        }
        if let Some(w) = breakpoints.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidStepDf(format!(
                "breakpoints must be strictly increasing, got {} then {}",
                w[0], w[1]
            )));
        }
        if values[0] != 0.0 {
            return Err(Error::InvalidStepDf(format!(
                "first value must be 0 (F(0) = 0), got {}",
                values[0]
            )));
        }
        if let Some(v) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InvalidStepDf(format!("values must lie in [0, 1], got {v}")));
        }
        if let Some(w) = values.windows(2).find(|w| w[0] > w[1]) {
            return Err(Error::InvalidStepDf(format!(
                "values must be nondecreasing, got {} then {}",
                w[0], w[1]
            )));
        }
        Ok(Self::canonical(breakpoints, values))
    }

    /// Builds the canonical form from sorted (possibly tied) breakpoints and
    /// nondecreasing values. Ties can appear after floating-point arithmetic
    /// on breakpoints; the empty interval between tied breakpoints is dropped.
    pub(crate) fn canonical(breakpoints: Vec<f64>, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), breakpoints.len() + 1);
        let mut bps = Vec::with_capacity(breakpoints.len());
        let mut vals = Vec::with_capacity(values.len());
        vals.push(0.0);
        for (k, &t) in breakpoints.iter().enumerate() {
            let v = values[k + 1];
            match bps.last() {
                Some(&last) if last == t => {
                    // the interval (last, t] is empty
                    *vals.last_mut().unwrap() = v;
                }
                _ => {
                    bps.push(t);
                    vals.push(v);
                }
            }
        }
        // drop breakpoints that carry no jump
        let mut out_b = Vec::with_capacity(bps.len());
        let mut out_v = vec![0.0];
        for (k, &t) in bps.iter().enumerate() {
            if vals[k + 1] != *out_v.last().unwrap() {
                out_b.push(t);
                out_v.push(vals[k + 1]);
            }
        }
        if out_b.is_empty() {
            // F vanishes on all of R: the whole mass sits at +inf
            return Self {
                breakpoints: vec![0.0],
                values: vec![0.0, 0.0],
            };
        }
        Self {
            breakpoints: out_b,
            values: out_v,
        }
    }

    /// The unit step `H_a`: 0 for `x <= a`, 1 for `x > a`.
    pub fn unit_step(a: f64) -> Result<Self> {
        if !a.is_finite() || a < 0.0 {
            return Err(invalid("a", a, "unit step location must be finite and >= 0"));
        }
        Ok(Self {
            breakpoints: vec![a],
            values: vec![0.0, 1.0],
        })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of (strict) jumps.
    pub fn len(&self) -> usize {
        self.breakpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `F(x)`; `F(-inf) = 0` and `F(+inf) = 1`.
    pub fn eval(&self, x: f64) -> f64 {
        if x == f64::INFINITY {
            return 1.0;
        }
        let i = self.breakpoints.partition_point(|&t| t < x);
        self.values[i]
    }

    /// Right limit `F(x+)`.
    pub fn eval_right(&self, x: f64) -> f64 {
        if x == f64::INFINITY {
            return 1.0;
        }
        let i = self.breakpoints.partition_point(|&t| t <= x);
        self.values[i]
    }

    /// Limit as `x -> +inf` along the reals.
    pub fn top(&self) -> f64 {
        *self.values.last().unwrap()
    }

    /// Member of D⁺.
    pub fn is_proper(&self) -> bool {
        self.top() == 1.0
    }

    /// `x -> F(x / h)`: breakpoints multiplied by `h`.
    pub fn scale(&self, h: f64) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(invalid("h", h, "scale factor must be finite and > 0"));
        }
        let bps = self.breakpoints.iter().map(|t| t * h).collect();
        Ok(Self::canonical(bps, self.values.clone()))
    }

    /// The exact quasi-inverse `F^(w) = sup{t : F(t) < w}` on (0, 1].
    pub fn quasi_inverse(&self) -> StepQuantile {
        let mut wbreaks = Vec::with_capacity(self.len() + 1);
        let mut qvalues = Vec::with_capacity(self.len() + 1);
        for (k, &t) in self.breakpoints.iter().enumerate() {
            let (lo, hi) = (self.values[k], self.values[k + 1]);
            if hi > lo {
                wbreaks.push(hi);
                qvalues.push(t);
            }
        }
        if self.top() < 1.0 {
            wbreaks.push(1.0);
            qvalues.push(f64::INFINITY);
        }
        StepQuantile::from_canonical_parts(wbreaks, qvalues)
    }

    /// Sorted union of both breakpoint sets.
    pub(crate) fn merged_breakpoints(&self, other: &Self) -> Vec<f64> {
        let mut all: Vec<f64> = self
            .breakpoints
            .iter()
            .chain(other.breakpoints.iter())
            .copied()
            .collect();
        all.sort_by(f64::total_cmp);
        all.dedup();
        all
    }

    fn combine(&self, other: &Self, op: impl Fn(f64, f64) -> f64) -> Self {
        let bps = self.merged_breakpoints(other);
        let mut values = Vec::with_capacity(bps.len() + 1);
        values.push(op(0.0, 0.0));
        for &c in &bps {
            values.push(op(self.eval_right(c), other.eval_right(c)));
        }
        Self::canonical(bps, values)
    }

    /// Pointwise maximum, again a step d.f.
    pub fn pointwise_max(&self, other: &Self) -> Self {
        self.combine(other, f64::max)
    }

    /// Pointwise minimum, again a step d.f.
    pub fn pointwise_min(&self, other: &Self) -> Self {
        self.combine(other, f64::min)
    }

    /// `self <= other` at every real `x`, decided exactly.
    pub fn dominated_by(&self, other: &Self) -> bool {
        let bps = self.merged_breakpoints(other);
        bps.iter().all(|&c| self.eval(c) <= other.eval(c)) && self.top() <= other.top()
    }

    /// Agreement within a relative tolerance on breakpoints and an absolute
    /// one on values, for d.f.'s produced through arithmetic chains.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.len() == other.len()
            && self
                .breakpoints
                .iter()
                .zip(&other.breakpoints)
                .all(|(a, b)| (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0))
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_step() -> StepDF {
        StepDF::new(vec![1.0, 2.0], vec![0.0, 0.5, 1.0]).unwrap()
    }

    #[test]
    fn unit_step_is_left_continuous() {
        let h2 = StepDF::unit_step(2.0).unwrap();
        assert_eq!(h2.eval(2.0), 0.0);
        assert_eq!(h2.eval(3.0), 1.0);
        assert_eq!(StepDF::unit_step(1.5).unwrap().eval(1.5), 0.0);
        assert_eq!(StepDF::unit_step(0.0).unwrap().breakpoints(), &[0.0]);
        assert_eq!(StepDF::unit_step(3.0).unwrap().values(), &[0.0, 1.0]);
    }

    #[test]
    fn unit_step_rejects_negative() {
        assert!(StepDF::unit_step(-0.5).is_err());
        assert!(StepDF::unit_step(f64::NAN).is_err());
    }

    #[test]
    fn eval_two_step() {
        let f = two_step();
        assert_eq!(f.eval(2.0), 0.5);
        assert_eq!(f.eval(2.001), 1.0);
        assert_eq!(f.eval(1.0), 0.0);
        assert_eq!(f.eval(f64::NEG_INFINITY), 0.0);
        assert_eq!(f.eval(f64::INFINITY), 1.0);
        assert_eq!(f.eval_right(1.0), 0.5);
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(StepDF::new(vec![], vec![0.0]).is_err());
        assert!(StepDF::new(vec![1.0], vec![0.0]).is_err());
        assert!(StepDF::new(vec![2.0, 1.0], vec![0.0, 0.5, 1.0]).is_err());
        assert!(StepDF::new(vec![1.0, 1.0], vec![0.0, 0.5, 1.0]).is_err());
        assert!(StepDF::new(vec![-1.0], vec![0.0, 1.0]).is_err());
        assert!(StepDF::new(vec![1.0], vec![0.2, 1.0]).is_err());
        assert!(StepDF::new(vec![1.0, 2.0], vec![0.0, 0.7, 0.5]).is_err());
        assert!(StepDF::new(vec![1.0], vec![0.0, 1.5]).is_err());
    }

    #[test]
    fn canonical_form_drops_flat_breakpoints() {
        let f = StepDF::new(vec![1.0, 2.0, 3.0], vec![0.0, 0.0, 1.0, 1.0]).unwrap();
        assert_eq!(f, StepDF::unit_step(2.0).unwrap());
        let zero = StepDF::new(vec![4.0], vec![0.0, 0.0]).unwrap();
        assert_eq!(zero.breakpoints(), &[0.0]);
        assert!(!zero.is_proper());
    }

    #[test]
    fn scale_moves_breakpoints() {
        let h1 = StepDF::unit_step(1.0).unwrap();
        assert_eq!(h1.scale(2.0).unwrap(), StepDF::unit_step(2.0).unwrap());
        assert_eq!(two_step().scale(1.0).unwrap(), two_step());
        assert!(h1.scale(0.0).is_err());
        assert!(h1.scale(-1.0).is_err());
    }

    #[test]
    fn properness() {
        assert!(StepDF::unit_step(4.0).unwrap().is_proper());
        assert!(!StepDF::new(vec![1.0], vec![0.0, 0.6]).unwrap().is_proper());
    }

    #[test]
    fn lattice_operations() {
        let f = two_step();
        let g = StepDF::unit_step(1.5).unwrap();
        let hi = f.pointwise_max(&g);
        let lo = f.pointwise_min(&g);
        assert!(f.dominated_by(&hi) && g.dominated_by(&hi));
        assert!(lo.dominated_by(&f) && lo.dominated_by(&g));
        assert!(!f.dominated_by(&g) && !g.dominated_by(&f));
        assert_eq!(hi.eval(1.2), 0.5);
        assert_eq!(hi.eval(1.7), 1.0);
        assert_eq!(lo.eval(1.7), 0.5);
    }

    #[test]
    fn json_shape() {
        let f = two_step();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"breakpoints":[1.0,2.0],"values":[0.0,0.5,1.0]}"#);
        let back: StepDF = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<StepDF>(r#"{"breakpoints":[1],"values":[0.5,1]}"#).is_err());
    }
}
