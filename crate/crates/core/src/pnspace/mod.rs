//! Finite-dimensional PN-spaces generated by families of seminorms that are
//! piecewise constant in `w`.
//!
//! A family assigns to each band `[w_k, w_{k+1})` of a partition of (0, 1)
//! a weighted norm on `R^n`. The probabilistic norm is
//! `ν_x(t) = m{w : p(x, w) < t}` and the associated norms are the left
//! limits `‖x‖_w = sup_{w' < w} p(x, w')`.

mod axioms;

pub use axioms::{validate_pn_axioms, Axiom, AxiomCheck, AxiomReport};

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::distfn::StepDF;
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    /// `Σ w_i |x_i|`
    L1,
    /// `max w_i |x_i|`
    Linf,
}

/// A weighted L1 or Linf norm on a block of coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormSpec {
    pub kind: NormKind,
    pub weights: Vec<f64>,
}

impl NormSpec {
    pub fn new(kind: NormKind, weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidFamily("a norm needs at least one weight".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidFamily(format!(
                "weights must be finite and > 0, got {w}"
            )));
        }
        Ok(Self { kind, weights })
    }

    pub fn l1(weights: Vec<f64>) -> Result<Self> {
        Self::new(NormKind::L1, weights)
    }

    pub fn linf(weights: Vec<f64>) -> Result<Self> {
        Self::new(NormKind::Linf, weights)
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let terms = self.weights.iter().zip(x).map(|(w, c)| w * c.abs());
        match self.kind {
            NormKind::L1 => terms.sum(),
            NormKind::Linf => terms.fold(0.0, f64::max),
        }
    }
}

/// One band of a family: `[lower, upto)` carrying the sum of its block
/// norms, each block acting on consecutive coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Band {
    pub upto: f64,
    pub blocks: Vec<NormSpec>,
}

impl Band {
    pub fn new(upto: f64, norm: NormSpec) -> Self {
        Self {
            upto,
            blocks: vec![norm],
        }
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(NormSpec::dim).sum()
    }

    /// The band norm `p_k(x)`.
    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut offset = 0;
        let mut total = 0.0;
        for block in &self.blocks {
            total += block.eval(&x[offset..offset + block.dim()]);
            offset += block.dim();
        }
        total
    }

    /// Block structure: (kind, dimension) per block.
    fn shape(&self) -> Vec<(NormKind, usize)> {
        self.blocks.iter().map(|b| (b.kind, b.dim())).collect()
    }

    fn weights(&self) -> impl Iterator<Item = f64> + '_ {
        self.blocks.iter().flat_map(|b| b.weights.iter().copied())
    }
}

/// A band-constant family `p : R^n × (0, 1) → [0, ∞)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeminormFamily {
    dimension: usize,
    bands: Vec<Band>,
}

impl SeminormFamily {
    /// A family that is nondecreasing in `w` (same block structure in every
    /// band, coordinatewise nondecreasing weights) and separating.
    pub fn new(dimension: usize, bands: Vec<Band>) -> Result<Self> {
        let family = Self::new_unchecked(dimension, bands)?;
        family.check_monotone()?;
        Ok(family)
    }

    /// Checks the band partition and dimensions but not monotonicity in `w`.
    /// Meant for externally supplied families, which can then be examined
    /// with [`validate_pn_axioms`].
    pub fn new_unchecked(dimension: usize, bands: Vec<Band>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidFamily("dimension must be positive".into()));
        }
        if bands.is_empty() {
            return Err(Error::InvalidFamily("at least one band is required".into()));
        }
        let mut lower = 0.0;
        for (k, band) in bands.iter().enumerate() {
            if !(band.upto > lower && band.upto <= 1.0) {
                return Err(Error::InvalidFamily(format!(
                    "band {k}: upto {} must lie in ({lower}, 1]",
                    band.upto
                )));
            }
            if band.blocks.is_empty() {
                return Err(Error::InvalidFamily(format!("band {k} has no norm")));
            }
            if band.dim() != dimension {
                return Err(Error::InvalidFamily(format!(
                    "band {k} acts on {} coordinates, expected {dimension}",
                    band.dim()
                )));
            }
            lower = band.upto;
        }
        if lower != 1.0 {
            return Err(Error::InvalidFamily(format!(
                "bands must cover (0, 1), last upto is {lower}"
            )));
        }
        Ok(Self { dimension, bands })
    }

    /// Structural test for `p(x, ·)` nondecreasing for every `x`.
    pub fn check_monotone(&self) -> Result<()> {
        let shape = self.bands[0].shape();
        for (k, pair) in self.bands.windows(2).enumerate() {
            if pair[1].shape() != shape {
                return Err(Error::InvalidFamily(format!(
                    "band {} changes the norm kind or block layout",
                    k + 1
                )));
            }
            if let Some((i, (a, b))) = pair[0]
                .weights()
                .zip(pair[1].weights())
                .enumerate()
                .find(|(_, (a, b))| b < a)
            {
                return Err(Error::InvalidFamily(format!(
                    "weight of coordinate {i} decreases from {a} to {b} at band {}",
                    k + 1
                )));
            }
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn bands(&self) -> &[Band] {
        &self.bands
    }

    /// `[lower, upper)` of band `k`.
    pub fn band_bounds(&self, k: usize) -> (f64, f64) {
        let lower = if k == 0 { 0.0 } else { self.bands[k - 1].upto };
        (lower, self.bands[k].upto)
    }

    pub fn band_midpoints(&self) -> Vec<f64> {
        (0..self.bands.len())
            .map(|k| {
                let (lo, hi) = self.band_bounds(k);
                0.5 * (lo + hi)
            })
            .collect()
    }

    /// Index of the band `[w_k, w_{k+1})` containing `w`.
    pub fn band_index(&self, w: f64) -> usize {
        self.bands
            .partition_point(|b| b.upto <= w)
            .min(self.bands.len() - 1)
    }

    /// Index of the last band starting strictly below `w`; this band fixes
    /// the left limit at `w`.
    pub fn left_band_index(&self, w: f64) -> usize {
        // band k starts at bands[k-1].upto (band 0 at 0 < w)
        self.bands[..self.bands.len() - 1]
            .iter()
            .filter(|b| b.upto < w)
            .count()
    }

    pub(crate) fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// `p(x, w)`: the norm of the band containing `w`.
    pub fn eval(&self, x: &[f64], w: f64) -> Result<f64> {
        self.check_dim(x)?;
        check_open_unit("w", w)?;
        Ok(self.bands[self.band_index(w)].eval(x))
    }

    /// All band values `p_k(x)`.
    pub fn band_values(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x)?;
        Ok(self.bands.iter().map(|b| b.eval(x)).collect())
    }
}

pub(crate) fn check_open_unit(name: &'static str, w: f64) -> Result<()> {
    if w > 0.0 && w < 1.0 {
        Ok(())
    } else {
        Err(invalid(name, w, "must lie in (0, 1)"))
    }
}

/// A PN-space `(R^n, ν)` with `ν` induced by a band-constant family.
#[derive(Debug, Clone, PartialEq)]
pub struct PNSpace {
    family: SeminormFamily,
}

impl PNSpace {
    pub fn new(family: SeminormFamily) -> Self {
        Self { family }
    }

    /// `p(x, w) = ‖x‖` for every `w`.
    pub fn single_band(norm: NormSpec) -> Self {
        let n = norm.dim();
        Self::new(SeminormFamily::new(n, vec![Band::new(1.0, norm)]).expect("single band is valid"))
    }

    /// Bands given as `(upto, norm)` pairs in increasing order.
    pub fn from_bands(bands: Vec<(f64, NormSpec)>) -> Result<Self> {
        let n = bands
            .first()
            .map(|(_, b)| b.dim())
            .ok_or_else(|| Error::InvalidFamily("at least one band is required".into()))?;
        let bands = bands.into_iter().map(|(u, b)| Band::new(u, b)).collect();
        Ok(Self::new(SeminormFamily::new(n, bands)?))
    }

    pub fn family(&self) -> &SeminormFamily {
        &self.family
    }

    pub fn dimension(&self) -> usize {
        self.family.dimension
    }

    pub fn num_bands(&self) -> usize {
        self.family.bands.len()
    }

    pub fn band_midpoints(&self) -> Vec<f64> {
        self.family.band_midpoints()
    }

    pub fn seminorm(&self, x: &[f64], w: f64) -> Result<f64> {
        self.family.eval(x, w)
    }

    /// The probabilistic norm `ν_x(t) = m{w in (0,1) : p(x, w) < t}`.
    pub fn prob_norm(&self, x: &[f64]) -> Result<StepDF> {
        let p = self.family.band_values(x)?;
        let mut levels = p.clone();
        levels.sort_by(f64::total_cmp);
        levels.dedup();

        let monotone = p.windows(2).all(|w| w[0] <= w[1]);
        let values: Vec<f64> = std::iter::once(0.0)
            .chain(levels.iter().map(|&c| {
                if monotone {
                    // {w : p(x, w) <= c} is an initial segment [0, upto)
                    let last = p.iter().rposition(|&v| v <= c).unwrap();
                    self.family.bands[last].upto
                } else {
                    let m: f64 = (0..p.len())
                        .filter(|&k| p[k] <= c)
                        .map(|k| {
                            let (lo, hi) = self.family.band_bounds(k);
                            hi - lo
                        })
                        .sum();
                    m.min(1.0)
                }
            }))
            .collect();
        Ok(StepDF::canonical(levels, values))
    }

    /// `‖x‖_w`, the left limit of `p(x, ·)` at `w`.
    pub fn norm_at(&self, x: &[f64], w: f64) -> Result<f64> {
        self.family.check_dim(x)?;
        check_open_unit("w", w)?;
        Ok(self.norm_at_unchecked(x, w))
    }

    pub(crate) fn norm_at_unchecked(&self, x: &[f64], w: f64) -> f64 {
        let k = self.family.left_band_index(w);
        self.family.bands[..=k]
            .iter()
            .map(|b| b.eval(x))
            .fold(0.0, f64::max)
    }

    /// The band whose norm is `‖·‖_w`.
    pub fn band_for_norm(&self, w: f64) -> Result<&Band> {
        check_open_unit("w", w)?;
        Ok(&self.family.bands[self.family.left_band_index(w)])
    }

    /// Probabilistic distance `F(p, q) = ν_{p-q}` of the induced PM space.
    pub fn pm_distance(&self, p: &[f64], q: &[f64]) -> Result<StepDF> {
        self.family.check_dim(p)?;
        self.family.check_dim(q)?;
        let d: Vec<f64> = p.iter().zip(q).map(|(a, b)| a - b).collect();
        self.prob_norm(&d)
    }

    /// `q ∈ N_p(t)`, i.e. `ν_{p-q}(t) > 1 - t`.
    pub fn neighborhood_contains(&self, p: &[f64], t: f64, q: &[f64]) -> Result<bool> {
        if !(t > 0.0) {
            return Err(invalid("t", t, "neighborhood radius must be > 0"));
        }
        Ok(self.pm_distance(p, q)?.eval(t) > 1.0 - t)
    }

    /// `x ∈ B_w(center; r)`, i.e. `‖x - center‖_w < r`.
    pub fn in_ball(&self, center: &[f64], r: f64, w: f64, x: &[f64]) -> Result<bool> {
        if !(r > 0.0) {
            return Err(invalid("r", r, "ball radius must be > 0"));
        }
        self.family.check_dim(center)?;
        let d: Vec<f64> = x.iter().zip(center).map(|(a, b)| a - b).collect();
        Ok(self.norm_at(&d, w)? < r)
    }

    /// Per band, `sup_{x ∈ E} p_k(x)` over a finite set `E`.
    pub fn set_bound(&self, set: &[Vec<f64>]) -> Result<Vec<f64>> {
        let mut sup = vec![0.0; self.num_bands()];
        for x in set {
            for (s, v) in sup.iter_mut().zip(self.family.band_values(x)?) {
                *s = f64::max(*s, v);
            }
        }
        Ok(sup)
    }

    /// The space on `R^{n+m}` with `p((x, y), w) = p_V(x, w) + p_W(y, w)` on
    /// the merged band partition; its probabilistic norm is
    /// `τ_M(ν_x, μ_y)`.
    pub fn product(&self, other: &PNSpace) -> PNSpace {
        let mut cuts: Vec<f64> = self
            .family
            .bands
            .iter()
            .chain(&other.family.bands)
            .map(|b| b.upto)
            .collect();
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut lower = 0.0;
        let bands = cuts
            .into_iter()
            .map(|upto| {
                let a = &self.family.bands[self.family.band_index(lower)];
                let b = &other.family.bands[other.family.band_index(lower)];
                lower = upto;
                Band {
                    upto,
                    blocks: a.blocks.iter().chain(&b.blocks).cloned().collect(),
                }
            })
            .collect();
        let family = SeminormFamily::new_unchecked(self.dimension() + other.dimension(), bands)
            .expect("merged partition of two valid partitions is valid");
        PNSpace::new(family)
    }
}

/// `product_space(P, Q)`.
pub fn product_space(p: &PNSpace, q: &PNSpace) -> PNSpace {
    p.product(q)
}

#[derive(Serialize, Deserialize)]
struct RawBand {
    upto: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<NormKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    blocks: Option<Vec<NormSpec>>,
}

#[derive(Serialize, Deserialize)]
struct RawSpace {
    dimension: usize,
    bands: Vec<RawBand>,
}

impl TryFrom<RawSpace> for PNSpace {
    type Error = Error;

    fn try_from(raw: RawSpace) -> Result<Self> {
        let bands = raw
            .bands
            .into_iter()
            .enumerate()
            .map(|(k, b)| {
                let blocks = match (b.kind, b.weights, b.blocks) {
                    (Some(kind), Some(weights), None) => vec![NormSpec::new(kind, weights)?],
                    (None, None, Some(blocks)) => blocks
                        .into_iter()
                        .map(|s| NormSpec::new(s.kind, s.weights))
                        .collect::<Result<_>>()?,
                    _ => {
                        return Err(Error::InvalidFamily(format!(
                            "band {k}: give either `kind` and `weights` or `blocks`"
                        )))
                    }
                };
                Ok(Band {
                    upto: b.upto,
                    blocks,
                })
            })
            .collect::<Result<_>>()?;
        Ok(PNSpace::new(SeminormFamily::new(raw.dimension, bands)?))
    }
}

impl From<&PNSpace> for RawSpace {
    fn from(space: &PNSpace) -> Self {
        let bands = space
            .family
            .bands
            .iter()
            .map(|b| match b.blocks.as_slice() {
                [single] => RawBand {
                    upto: b.upto,
                    kind: Some(single.kind),
                    weights: Some(single.weights.clone()),
                    blocks: None,
                },
                many => RawBand {
                    upto: b.upto,
                    kind: None,
                    weights: None,
                    blocks: Some(many.to_vec()),
                },
            })
            .collect();
        RawSpace {
            dimension: space.dimension(),
            bands,
        }
    }
}

impl Serialize for PNSpace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RawSpace::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PNSpace {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        PNSpace::try_from(RawSpace::deserialize(deserializer)?).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// (0, 0.5): c1 |x|, [0.5, 1): c2 |x| on R.
    fn two_band(c1: f64, c2: f64) -> PNSpace {
        PNSpace::from_bands(vec![
            (0.5, NormSpec::l1(vec![c1]).unwrap()),
            (1.0, NormSpec::l1(vec![c2]).unwrap()),
        ])
        .unwrap()
    }

    /// m{w : p(x, w) < t} on a 1e-5 w-grid.
    fn grid_measure(space: &PNSpace, x: &[f64], t: f64) -> f64 {
        let n = 100_000;
        let hits = (0..n)
            .filter(|k| {
                let w = (*k as f64 + 0.5) / n as f64;
                space.seminorm(x, w).unwrap() < t
            })
            .count();
        hits as f64 / n as f64
    }

    #[test]
    fn seminorm_examples() {
        let s = PNSpace::single_band(NormSpec::linf(vec![1.0, 1.0]).unwrap());
        assert_eq!(s.seminorm(&[3.0, -4.0], 0.3).unwrap(), 4.0);
        let two = PNSpace::from_bands(vec![
            (0.5, NormSpec::l1(vec![1.0, 1.0]).unwrap()),
            (1.0, NormSpec::l1(vec![2.0, 2.0]).unwrap()),
        ])
        .unwrap();
        assert_eq!(two.seminorm(&[1.0, 1.0], 0.25).unwrap(), 2.0);
        assert_eq!(two.seminorm(&[1.0, 1.0], 0.75).unwrap(), 4.0);
        assert_eq!(two.seminorm(&[1.0, 1.0], 0.5).unwrap(), 4.0);
        assert!(two.seminorm(&[1.0], 0.25).is_err());
        assert!(two.seminorm(&[1.0, 1.0], 1.0).is_err());
    }

    #[test]
    fn prob_norm_single_band_is_unit_step() {
        let s = PNSpace::single_band(NormSpec::l1(vec![1.0, 3.0]).unwrap());
        assert_eq!(s.prob_norm(&[2.0, -1.0]).unwrap(), StepDF::unit_step(5.0).unwrap());
        assert_eq!(s.prob_norm(&[0.0, 0.0]).unwrap(), StepDF::unit_step(0.0).unwrap());
    }

    #[test]
    fn prob_norm_two_band_matches_grid_measure() {
        let s = two_band(1.0, 2.0);
        let nu = s.prob_norm(&[1.0]).unwrap();
        assert_eq!(nu, StepDF::new(vec![1.0, 2.0], vec![0.0, 0.5, 1.0]).unwrap());
        for &t in &[0.5, 1.0, 1.5, 2.0, 2.5] {
            assert!((grid_measure(&s, &[1.0], t) - nu.eval(t)).abs() < 1e-4, "t={t}");
        }
    }

    #[test]
    fn prob_norm_is_proper_with_awkward_cuts() {
        let s = PNSpace::from_bands(vec![
            (0.1, NormSpec::l1(vec![1.0]).unwrap()),
            (0.3, NormSpec::l1(vec![2.0]).unwrap()),
            (1.0, NormSpec::l1(vec![3.0]).unwrap()),
        ])
        .unwrap();
        assert!(s.prob_norm(&[1.0]).unwrap().is_proper());
    }

    #[test]
    fn norm_at_takes_left_limit() {
        let s = two_band(1.0, 2.0);
        assert_eq!(s.norm_at(&[1.0], 0.5).unwrap(), 1.0);
        assert_eq!(s.norm_at(&[1.0], 0.7).unwrap(), 2.0);
        assert_eq!(s.norm_at(&[0.0], 0.2).unwrap(), 0.0);
        let q = s.prob_norm(&[1.0]).unwrap().quasi_inverse();
        for &w in &[0.1, 0.5, 0.7, 0.99] {
            assert_eq!(s.norm_at(&[1.0], w).unwrap(), q.eval(w).unwrap());
        }
    }

    #[test]
    fn neighborhoods_and_balls() {
        let s = PNSpace::single_band(NormSpec::l1(vec![1.0]).unwrap());
        assert!(s.neighborhood_contains(&[0.0], 0.7, &[0.5]).unwrap());
        assert!(!s.neighborhood_contains(&[0.0], 0.4, &[0.5]).unwrap());
        assert!(s.neighborhood_contains(&[0.25], 1e-6, &[0.25]).unwrap());
        assert!(s.neighborhood_contains(&[0.0], 0.0, &[0.5]).is_err());

        let two = two_band(1.0, 2.0);
        assert!(!two.in_ball(&[0.0], 1.5, 0.7, &[1.0]).unwrap());
        assert!(two.in_ball(&[0.0], 2.5, 0.7, &[1.0]).unwrap());
        assert!(two.in_ball(&[3.0], 1e-9, 0.7, &[3.0]).unwrap());
        assert!(two.in_ball(&[0.0], -1.0, 0.7, &[1.0]).is_err());
    }

    #[test]
    fn product_of_unit_steps() {
        let s = PNSpace::single_band(NormSpec::l1(vec![1.0]).unwrap());
        let prod = s.product(&s);
        assert_eq!(prod.prob_norm(&[1.0, 2.0]).unwrap(), StepDF::unit_step(3.0).unwrap());
        let two = two_band(1.0, 2.0);
        let p2 = two.product(&s);
        assert_eq!(p2.prob_norm(&[4.0, 0.0]).unwrap(), two.prob_norm(&[4.0]).unwrap());
    }

    #[test]
    fn product_of_mixed_kinds_keeps_blocks() {
        let a = PNSpace::single_band(NormSpec::linf(vec![1.0, 1.0]).unwrap());
        let b = two_band(1.0, 2.0);
        let p = a.product(&b);
        assert_eq!(p.dimension(), 3);
        assert_eq!(p.num_bands(), 2);
        assert_eq!(p.seminorm(&[1.0, -2.0, 1.0], 0.75).unwrap(), 4.0);
    }

    #[test]
    fn set_bound_is_max_band_value() {
        let s = two_band(1.0, 2.0);
        let e = vec![vec![1.0], vec![-3.0], vec![0.5]];
        assert_eq!(s.set_bound(&e).unwrap(), vec![3.0, 6.0]);
    }

    #[test]
    fn family_validation() {
        let bad = SeminormFamily::new(
            1,
            vec![
                Band::new(0.5, NormSpec::l1(vec![2.0]).unwrap()),
                Band::new(1.0, NormSpec::l1(vec![1.0]).unwrap()),
            ],
        );
        assert!(bad.is_err());
        let mixed = SeminormFamily::new(
            1,
            vec![
                Band::new(0.5, NormSpec::l1(vec![1.0]).unwrap()),
                Band::new(1.0, NormSpec::linf(vec![1.0]).unwrap()),
            ],
        );
        assert!(mixed.is_err());
        let gap = SeminormFamily::new(1, vec![Band::new(0.5, NormSpec::l1(vec![1.0]).unwrap())]);
        assert!(gap.is_err());
        assert!(NormSpec::l1(vec![0.0]).is_err());
    }

    #[test]
    fn band_indices() {
        let s = two_band(1.0, 2.0);
        let f = s.family();
        assert_eq!(f.band_index(0.25), 0);
        assert_eq!(f.band_index(0.5), 1);
        assert_eq!(f.left_band_index(0.5), 0);
        assert_eq!(f.left_band_index(0.500001), 1);
    }

    #[test]
    fn json_schema() {
        let src = r#"{"dimension":1,"bands":[{"upto":0.5,"kind":"l1","weights":[1.0]},{"upto":1.0,"kind":"l1","weights":[2.0]}]}"#;
        let s: PNSpace = serde_json::from_str(src).unwrap();
        assert_eq!(s, two_band(1.0, 2.0));
        assert_eq!(serde_json::to_string(&s).unwrap(), src);
        let decreasing = r#"{"dimension":1,"bands":[{"upto":0.5,"kind":"l1","weights":[2.0]},{"upto":1.0,"kind":"l1","weights":[1.0]}]}"#;
        assert!(serde_json::from_str::<PNSpace>(decreasing).is_err());
        let p = PNSpace::single_band(NormSpec::linf(vec![1.0]).unwrap()).product(&two_band(1.0, 2.0));
        let back: PNSpace = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
    }
}
