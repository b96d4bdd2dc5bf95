use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use super::StepDF;
use crate::error::{invalid, Error, Result};

/// Quasi-inverse of a step d.f.: a nondecreasing step function on (0, 1].
///
/// `Q(w) = qvalues[i]` on the band `(wbreaks[i-1], wbreaks[i]]`, with
/// `wbreaks[-1] = 0` and `wbreaks.last() == 1`. A band may carry `+inf` when
/// the source d.f. is improper.
#[derive(Debug, Clone, PartialEq)]
pub struct StepQuantile {
    wbreaks: Vec<f64>,
    qvalues: Vec<f64>,
}

impl StepQuantile {
    pub fn new(wbreaks: Vec<f64>, qvalues: Vec<f64>) -> Result<Self> {
        if wbreaks.is_empty() || wbreaks.len() != qvalues.len() {
            return Err(Error::InvalidQuantile(format!(
                "need equally many (>= 1) wbreaks and qvalues, got {} and {}",
                wbreaks.len(),
                qvalues.len()
            )));
        }
        if wbreaks.iter().any(|w| !(*w > 0.0 && *w <= 1.0)) {
            return Err(Error::InvalidQuantile("wbreaks must lie in (0, 1]".into()));
        }
        if wbreaks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidQuantile("wbreaks must be strictly increasing".into()));
        }
        if *wbreaks.last().unwrap() != 1.0 {
            return Err(Error::InvalidQuantile("the last wbreak must be 1".into()));
        }
        if qvalues.iter().any(|q| q.is_nan() || *q < 0.0) {
            return Err(Error::InvalidQuantile("qvalues must be >= 0 (or +inf)".into()));
        }
        if qvalues.windows(2).any(|q| q[0] > q[1]) {
            return Err(Error::InvalidQuantile("qvalues must be nondecreasing".into()));
        }
        Ok(Self::from_canonical_parts(wbreaks, qvalues))
    }

    /// Merges adjacent bands carrying equal values.
    pub(crate) fn from_canonical_parts(wbreaks: Vec<f64>, qvalues: Vec<f64>) -> Self {
        let mut wb: Vec<f64> = Vec::with_capacity(wbreaks.len());
        let mut qv: Vec<f64> = Vec::with_capacity(qvalues.len());
        for (w, q) in wbreaks.into_iter().zip(qvalues) {
            if qv.last() == Some(&q) {
                *wb.last_mut().unwrap() = w;
            } else {
                wb.push(w);
                qv.push(q);
            }
        }
        Self {
            wbreaks: wb,
            qvalues: qv,
        }
    }

    /// The quasi-inverse of `H_0`, neutral for [`StepQuantile::add`].
    pub fn zero() -> Self {
        Self {
            wbreaks: vec![1.0],
            qvalues: vec![0.0],
        }
    }

    pub fn wbreaks(&self) -> &[f64] {
        &self.wbreaks
    }

    pub fn qvalues(&self) -> &[f64] {
        &self.qvalues
    }

    /// Band lookup for `w` in (0, 1].
    pub fn eval(&self, w: f64) -> Result<f64> {
        if !(w > 0.0 && w <= 1.0) {
            return Err(invalid("w", w, "quantile argument must lie in (0, 1]"));
        }
        Ok(self.eval_unchecked(w))
    }

    fn eval_unchecked(&self, w: f64) -> f64 {
        let i = self.wbreaks.partition_point(|&b| b < w);
        self.qvalues[i.min(self.qvalues.len() - 1)]
    }

    /// True when every band value is finite, i.e. the element lies in R⁺.
    pub fn is_finite(&self) -> bool {
        self.qvalues.iter().all(|q| q.is_finite())
    }

    fn merged_wbreaks(&self, other: &Self) -> Vec<f64> {
        let mut all: Vec<f64> = self.wbreaks.iter().chain(&other.wbreaks).copied().collect();
        all.sort_by(f64::total_cmp);
        all.dedup();
        all
    }

    /// Exact pointwise sum, `+inf` absorbing.
    pub fn add(&self, other: &Self) -> Self {
        let wb = self.merged_wbreaks(other);
        let qv = wb
            .iter()
            .map(|&b| self.eval_unchecked(b) + other.eval_unchecked(b))
            .collect();
        Self::from_canonical_parts(wb, qv)
    }

    /// Pointwise `h * Q` for `h > 0`.
    pub fn scale(&self, h: f64) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(invalid("h", h, "scale factor must be finite and > 0"));
        }
        let qv = self.qvalues.iter().map(|q| q * h).collect();
        Ok(Self::from_canonical_parts(self.wbreaks.clone(), qv))
    }

    /// `self >= other` at every `w` in (0, 1].
    pub fn dominates(&self, other: &Self) -> bool {
        self.merged_wbreaks(other)
            .iter()
            .all(|&b| self.eval_unchecked(b) >= other.eval_unchecked(b))
    }

    /// Midpoints of the bands, where the band boundary convention is moot.
    pub fn band_midpoints(&self) -> Vec<f64> {
        let mut lo = 0.0;
        self.wbreaks
            .iter()
            .map(|&b| {
                let m = 0.5 * (lo + b);
                lo = b;
                m
            })
            .collect()
    }

    /// Recovers the left-continuous d.f. `F(x) = sup{w : Q(w) < x}`.
    pub fn reconstruct(&self) -> StepDF {
        let mut bps = Vec::new();
        let mut vals = vec![0.0];
        for (&b, &q) in self.wbreaks.iter().zip(&self.qvalues) {
            if q.is_finite() {
                bps.push(q);
                vals.push(b);
            }
        }
        if bps.is_empty() {
            return StepDF::canonical(vec![0.0], vec![0.0, 0.0]);
        }
        StepDF::canonical(bps, vals)
    }
}

impl Serialize for StepQuantile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let qvalues: Vec<ExtReal> = self.qvalues.iter().map(|&q| ExtReal(q)).collect();
        let mut st = serializer.serialize_struct("StepQuantile", 2)?;
        st.serialize_field("wbreaks", &self.wbreaks)?;
        st.serialize_field("qvalues", &qvalues)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for StepQuantile {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            wbreaks: Vec<f64>,
            qvalues: Vec<ExtReal>,
        }
        let raw = Raw::deserialize(deserializer)?;
        StepQuantile::new(raw.wbreaks, raw.qvalues.into_iter().map(|q| q.0).collect())
            .map_err(de::Error::custom)
    }
}

/// A real that serializes `+inf` as the string `"inf"`.
#[derive(Debug, Clone, Copy)]
struct ExtReal(f64);

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0 == f64::INFINITY {
            serializer.serialize_str("inf")
        } else {
            serializer.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Str(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Num(x) => Ok(ExtReal(x)),
            Repr::Str(s) if s == "inf" || s == "+inf" => Ok(ExtReal(f64::INFINITY)),
            Repr::Str(s) => Err(de::Error::custom(format!("expected a number or \"inf\", got {s:?}"))),
        }
    }
}
