//! Brute-force oracles and seeded generators for property tests and the
//! `check` command.
//!
//! Oracles evaluate step functions by linear scan and t-norms from their
//! textbook formulas, independently of the exact algorithms they validate.
//! Generators draw from dyadic lattices so that sums, scalings and t-norm
//! values of generated instances are exact in binary floating point.

mod suite;

pub use suite::{run_suite, CheckRow, Suite, SuiteReport};

use rand::seq::index::sample;
use rand::Rng;

use crate::distfn::{levy_condition, StepDF};
use crate::operator::{open_mapping_delta, LinearOperator};
use crate::pnspace::{Band, NormKind, NormSpec, PNSpace, SeminormFamily};
use crate::sampling;
use crate::triangle::TNormKind;

/// Breakpoints of generated d.f.'s are multiples of this, in `[0, 10]`.
pub const BREAK_QUANTUM: f64 = 1.0 / 128.0;
/// Values of generated d.f.'s are multiples of this.
pub const VALUE_QUANTUM: f64 = 1.0 / 1024.0;
/// Resolution of the Lévy oracle's `h` grid.
pub const LEVY_GRID: f64 = 1e-5;

// Streams of the generator RNGs; distinct so generated objects of
// different types from the same seed are unrelated.
const STREAM_STEPDF: u64 = 1 << 32;
const STREAM_SPACE: u64 = 2 << 32;
const STREAM_OPERATOR: u64 = 3 << 32;
const STREAM_VECTOR: u64 = 4 << 32;
const STREAM_FAMILY: u64 = 5 << 32;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleConfig {
    pub grid_step: f64,
    /// Half-width of the search window; `None` derives it from the inputs.
    pub domain_radius: Option<f64>,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            grid_step: 1e-4,
            domain_radius: None,
            seed: 0,
        }
    }
}

impl OracleConfig {
    pub fn with_step(grid_step: f64) -> Self {
        assert!(grid_step > 0.0, "grid_step must be > 0");
        Self {
            grid_step,
            ..Self::default()
        }
    }

    fn radius(&self, f: &StepDF, g: &StepDF) -> f64 {
        self.domain_radius.unwrap_or_else(|| {
            1.0 + f.breakpoints().last().unwrap() + g.breakpoints().last().unwrap()
        })
    }
}

/// `F(x)` by linear scan of the breakpoints.
pub fn scan_eval(f: &StepDF, x: f64) -> f64 {
    let mut v = 0.0;
    for (t, val) in f.breakpoints().iter().zip(&f.values()[1..]) {
        if *t < x {
            v = *val;
        } else {
            break;
        }
    }
    v
}

fn tnorm(kind: TNormKind, a: f64, b: f64) -> f64 {
    match kind {
        TNormKind::W => (a + b - 1.0).max(0.0),
        TNormKind::Prod => a * b,
        TNormKind::Min => a.min(b),
    }
}

fn tconorm(kind: TNormKind, a: f64, b: f64) -> f64 {
    match kind {
        TNormKind::W => (a + b).min(1.0),
        TNormKind::Prod => a + b - a * b,
        TNormKind::Min => a.max(b),
    }
}

/// Split points `s` (with `t = x - s`) visited by the convolution oracles.
///
/// Both d.f.'s vanish on `(-inf, 0]`, so splits with `s` or `t` outside
/// `[0, min(x, R)]` are dominated by a split inside it. The grid is
/// augmented with every breakpoint of `F`, every `x - b` for breakpoints `b`
/// of `G`, and their `±grid_step` neighbors.
fn split_points(f: &StepDF, g: &StepDF, x: f64, cfg: &OracleConfig) -> Vec<f64> {
    let step = cfg.grid_step;
    let hi = x.min(cfg.radius(f, g)) + step;
    let n = (hi / step).ceil().max(0.0) as usize + 1;
    let mut s = Vec::with_capacity(4 * n + 6 * (f.len() + g.len()) + 2);
    for k in 0..=n {
        let pos = -step + k as f64 * step;
        s.push(pos);
        s.push(x - pos);
    }
    for &a in f.breakpoints() {
        s.extend([a - step, a, a + step]);
    }
    for &b in g.breakpoints() {
        s.extend([x - b - step, x - b, x - b + step]);
    }
    s
}

/// `sup_{s + t = x} T(F(s), G(t))` over a fine grid of splits.
pub fn oracle_sup_conv(kind: TNormKind, f: &StepDF, g: &StepDF, x: f64, cfg: &OracleConfig) -> f64 {
    split_points(f, g, x, cfg)
        .into_iter()
        .map(|s| tnorm(kind, scan_eval(f, s), scan_eval(g, x - s)))
        .fold(0.0, f64::max)
}

/// `inf_{s + t = x} T*(F(s), G(t))` over a fine grid of splits.
pub fn oracle_inf_conv(kind: TNormKind, f: &StepDF, g: &StepDF, x: f64, cfg: &OracleConfig) -> f64 {
    split_points(f, g, x, cfg)
        .into_iter()
        .map(|s| tconorm(kind, scan_eval(f, s), scan_eval(g, x - s)))
        .fold(1.0, f64::min)
}

/// Smallest `h = k · 1e-5` in `(0, 1]` at which both Lévy conditions hold.
pub fn oracle_levy(f: &StepDF, g: &StepDF, _cfg: &OracleConfig) -> f64 {
    let steps = (1.0 / LEVY_GRID).round() as u64;
    (1..=steps)
        .map(|k| k as f64 / steps as f64)
        .find(|&h| levy_condition(f, g, h).unwrap() && levy_condition(g, f, h).unwrap())
        .unwrap_or(1.0)
}

/// Sorted distinct draws from `lo..=hi`.
fn distinct_sorted(rng: &mut impl Rng, lo: u32, hi: u32, k: usize) -> Vec<u32> {
    let span = (hi - lo + 1) as usize;
    let mut v: Vec<u32> = sample(rng, span, k.min(span))
        .into_iter()
        .map(|i| lo + i as u32)
        .collect();
    v.sort_unstable();
    v
}

/// A random step d.f. with `1..=max_breaks` jumps. Breakpoints are
/// multiples of [`BREAK_QUANTUM`] in `[0, 10]`, values multiples of
/// [`VALUE_QUANTUM`]; `proper` forces the last value to 1.
pub fn gen_stepdf(seed: u64, max_breaks: usize, proper: bool) -> StepDF {
    assert!(max_breaks >= 1, "max_breaks must be >= 1");
    let mut rng = sampling::rng(seed, STREAM_STEPDF);
    let k = rng.gen_range(1..=max_breaks);
    let bps: Vec<f64> = distinct_sorted(&mut rng, 0, 1280, k)
        .into_iter()
        .map(|i| i as f64 * BREAK_QUANTUM)
        .collect();
    let mut levels = if proper {
        let mut l = distinct_sorted(&mut rng, 1, 1023, k - 1);
        l.push(1024);
        l
    } else {
        distinct_sorted(&mut rng, 1, 1023, k)
    };
    levels.insert(0, 0);
    let vals = levels.into_iter().map(|i| i as f64 * VALUE_QUANTUM).collect();
    StepDF::new(bps, vals).expect("generated d.f. is valid")
}

/// A random monotone band-constant space on `R^n` with `1..=max_bands` bands.
///
/// Cuts are multiples of 1/64, weights multiples of 1/8 in `[1/8, 4]`,
/// nondecreasing from band to band. All bands share one randomly chosen kind.
pub fn gen_space(seed: u64, n: usize, max_bands: usize) -> PNSpace {
    let kind = if sampling::rng(seed, STREAM_SPACE + 1).gen::<bool>() {
        NormKind::L1
    } else {
        NormKind::Linf
    };
    gen_space_of_kind(seed, n, max_bands, kind)
}

/// [`gen_space`] with every band of the given kind.
pub fn gen_space_of_kind(seed: u64, n: usize, max_bands: usize, kind: NormKind) -> PNSpace {
    assert!(n >= 1 && max_bands >= 1, "n and max_bands must be >= 1");
    let mut rng = sampling::rng(seed, STREAM_SPACE);
    let bands = rng.gen_range(1..=max_bands.min(63));
    let mut cuts: Vec<f64> = distinct_sorted(&mut rng, 1, 63, bands - 1)
        .into_iter()
        .map(|i| i as f64 / 64.0)
        .collect();
    cuts.push(1.0);

    let mut weights: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=16)).collect();
    let mut out = Vec::with_capacity(bands);
    for &upto in &cuts {
        let spec = NormSpec::new(kind, weights.iter().map(|&j| j as f64 / 8.0).collect()).unwrap();
        out.push(Band::new(upto, spec));
        for w in weights.iter_mut() {
            *w = (*w + rng.gen_range(0..=8)).min(32);
        }
    }
    PNSpace::new(SeminormFamily::new(n, out).expect("generated family is valid"))
}

/// A random operator with entries on the lattice `k / 8`, `|k| <= 32`.
pub fn gen_operator(seed: u64, domain: &PNSpace, codomain: &PNSpace) -> LinearOperator {
    let mut rng = sampling::rng(seed, STREAM_OPERATOR);
    let rows: Vec<Vec<f64>> = (0..codomain.dimension())
        .map(|_| {
            (0..domain.dimension())
                .map(|_| rng.gen_range(-32i32..=32) as f64 / 8.0)
                .collect()
        })
        .collect();
    LinearOperator::from_rows(&rows, domain.clone(), codomain.clone()).unwrap()
}

/// A random invertible operator on `space` with condition number at most
/// `1e6` at every band midpoint.
pub fn gen_invertible_operator(seed: u64, space: &PNSpace) -> LinearOperator {
    let mids = space.band_midpoints();
    (0u64..)
        .map(|k| gen_operator(seed.wrapping_add(k << 40), space, space))
        .find(|t| {
            mids.iter()
                .all(|&w| open_mapping_delta(t, w).is_ok_and(|b| b.condition <= 1e6))
        })
        .unwrap()
}

/// A nonzero lattice vector (entries `k / 16`, `|k| <= 64`).
pub fn gen_vector(seed: u64, n: usize) -> Vec<f64> {
    sampling::nonzero_lattice_vector(&mut sampling::rng(seed, STREAM_VECTOR), n)
}

/// `size` operators `T_k = T + ((-1)^k / k) E` converging entrywise to `T`,
/// returned with the limit `T`.
pub fn gen_convergent_family(
    seed: u64,
    domain: &PNSpace,
    codomain: &PNSpace,
    size: usize,
) -> (Vec<LinearOperator>, LinearOperator) {
    let limit = gen_operator(seed, domain, codomain);
    let e = gen_operator(seed ^ STREAM_FAMILY, domain, codomain);
    let family = (1..=size)
        .map(|k| {
            let c = if k % 2 == 0 { 1.0 } else { -1.0 } / k as f64;
            LinearOperator::new(
                limit.matrix() + e.matrix() * c,
                domain.clone(),
                codomain.clone(),
            )
            .unwrap()
        })
        .collect();
    (family, limit)
}

/// Largest `|T_k x - T x|` in the codomain norm at `wp`, over the probes.
pub fn strong_convergence_gap(family: &[LinearOperator], limit: &LinearOperator, probes: &[Vec<f64>], wp: f64) -> Vec<f64> {
    family
        .iter()
        .map(|t| {
            probes
                .iter()
                .map(|x| {
                    let d: Vec<f64> = t
                        .apply(x)
                        .unwrap()
                        .iter()
                        .zip(limit.apply(x).unwrap())
                        .map(|(a, b)| a - b)
                        .collect();
                    limit.codomain().norm_at(&d, wp).unwrap()
                })
                .fold(0.0, f64::max)
        })
        .collect()
}

/// Random abscissae in `(0, hi)` at distance at least `margin` from every
/// entry of `avoid`.
pub fn off_breakpoint_points(seed: u64, count: usize, hi: f64, avoid: &[f64], margin: f64) -> Vec<f64> {
    let mut rng = sampling::rng(seed, STREAM_VECTOR + 1);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x = rng.gen_range(0.0..hi);
        if avoid.iter().all(|a| (a - x).abs() >= margin) {
            out.push(x);
        }
    }
    out
}

/// All sums `a + b` of breakpoints of `F` and `G`.
pub fn breakpoint_sums(f: &StepDF, g: &StepDF) -> Vec<f64> {
    f.breakpoints()
        .iter()
        .flat_map(|a| g.breakpoints().iter().map(move |b| a + b))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pnspace::validate_pn_axioms;
    use crate::triangle::tau_sup_conv;

    fn h(a: f64) -> StepDF {
        StepDF::unit_step(a).unwrap()
    }

    #[test]
    fn oracle_unit_step_examples() {
        let cfg = OracleConfig::default();
        assert_eq!(oracle_sup_conv(TNormKind::Min, &h(1.0), &h(2.0), 3.5, &cfg), 1.0);
        assert_eq!(oracle_sup_conv(TNormKind::Min, &h(1.0), &h(2.0), 3.0, &cfg), 0.0);
        assert_eq!(oracle_inf_conv(TNormKind::Min, &h(1.0), &h(2.0), 3.5, &cfg), 1.0);
        assert_eq!(oracle_inf_conv(TNormKind::Min, &h(1.0), &h(2.0), 2.5, &cfg), 0.0);
    }

    #[test]
    fn oracle_agrees_off_breakpoints() {
        let cfg = OracleConfig::with_step(1e-3);
        for seed in 0..5 {
            let f = gen_stepdf(seed, 4, true);
            let g = gen_stepdf(seed + 100, 4, seed % 2 == 0);
            let sums = breakpoint_sums(&f, &g);
            let conv = tau_sup_conv(TNormKind::Prod, &f, &g);
            for x in off_breakpoint_points(seed, 10, 21.0, &sums, 2e-3) {
                assert_eq!(conv.eval(x), oracle_sup_conv(TNormKind::Prod, &f, &g, x, &cfg), "x={x}");
            }
        }
    }

    #[test]
    fn oracle_levy_examples() {
        let cfg = OracleConfig::default();
        let f = gen_stepdf(3, 3, true);
        assert!(oracle_levy(&f, &f, &cfg) <= LEVY_GRID);
        assert!((oracle_levy(&h(0.0), &h(0.3), &cfg) - 0.3).abs() <= LEVY_GRID);
    }

    #[test]
    fn scan_matches_definition() {
        let f = StepDF::new(vec![1.0, 2.0], vec![0.0, 0.5, 1.0]).unwrap();
        for &(x, v) in &[(0.0, 0.0), (1.0, 0.0), (1.5, 0.5), (2.0, 0.5), (2.5, 1.0)] {
            assert_eq!(scan_eval(&f, x), v);
        }
    }

    #[test]
    fn generators_are_valid_and_deterministic() {
        let f = gen_stepdf(7, 5, true);
        assert!(f.is_proper());
        assert_eq!(f, gen_stepdf(7, 5, true));
        assert!(!gen_stepdf(8, 5, false).is_proper());
        let s = gen_space(7, 3, 4);
        assert!(validate_pn_axioms(&s, 100, 7).all_passed());
        assert_eq!(s, gen_space(7, 3, 4));
        let t = gen_operator(7, &s, &s);
        assert_eq!(t, gen_operator(7, &s, &s));
        assert_eq!(gen_vector(1, 3), gen_vector(1, 3));
    }

    #[test]
    fn generators_hold_invariants_many_seeds() {
        for seed in 0..10_000 {
            let f = gen_stepdf(seed, 6, seed % 2 == 0);
            assert!(StepDF::new(f.breakpoints().to_vec(), f.values().to_vec()).is_ok());
            let s = gen_space(seed, 1 + (seed % 4) as usize, 5);
            assert!(s.family().check_monotone().is_ok());
        }
    }

    #[test]
    fn invertible_generator_and_family() {
        let s = gen_space(2, 3, 3);
        let t = gen_invertible_operator(2, &s);
        assert!(open_mapping_delta(&t, s.band_midpoints()[0]).is_ok());
        let (fam, limit) = gen_convergent_family(2, &s, &s, 10);
        assert_eq!(fam.len(), 10);
        let gaps = strong_convergence_gap(&fam, &limit, &[gen_vector(0, 3)], 0.5);
        assert!(gaps[9] <= gaps[0]);
    }
}
