//! Linear operators between PN-spaces and their `(w, w')` norms.
//!
//! `‖T‖_{(w,w')} = sup{‖Tx‖_{w'} : ‖x‖_w <= 1}`. The unit ball of a band
//! norm is a polytope: the convex hull of the embedded unit balls of its
//! blocks, with vertices `±e_i / weight_i` for L1 blocks and
//! `(±1 / weight_i)_i` for Linf blocks. A convex function attains its
//! supremum over a polytope at a vertex, which makes the norm exact.

mod theorems;

pub use theorems::{
    bound_check, functional_norm, functional_norm_profile, graph_norm, norm_equivalence_constants,
    open_mapping_delta, uniform_bound, verify_open_mapping, BoundReport, EquivalenceReport,
    FunctionalNormProfile, OpenMappingBall, OpenMappingCheck, Trend, UniformBound,
};

use nalgebra::DMatrix;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pnspace::{check_open_unit, Band, NormKind, PNSpace};
use crate::sampling;

/// Largest Linf block for which the `2^n` cube vertices are enumerated.
pub const MAX_LINF_VERTEX_DIM: usize = 20;

/// A dense `m × n` matrix acting from `domain` (`R^n`) to `codomain` (`R^m`).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOperator {
    matrix: DMatrix<f64>,
    domain: PNSpace,
    codomain: PNSpace,
}

impl LinearOperator {
    pub fn new(matrix: DMatrix<f64>, domain: PNSpace, codomain: PNSpace) -> Result<Self> {
        if matrix.ncols() != domain.dimension() {
            return Err(Error::DimensionMismatch {
                expected: domain.dimension(),
                found: matrix.ncols(),
            });
        }
        if matrix.nrows() != codomain.dimension() {
            return Err(Error::DimensionMismatch {
                expected: codomain.dimension(),
                found: matrix.nrows(),
            });
        }
        if matrix.iter().any(|v| !v.is_finite()) {
            return Err(Error::Unsupported("matrix entries must be finite".into()));
        }
        Ok(Self {
            matrix,
            domain,
            codomain,
        })
    }

    pub fn from_rows(rows: &[Vec<f64>], domain: PNSpace, codomain: PNSpace) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: r.len(),
            });
        }
        let matrix = DMatrix::from_fn(m, n, |i, j| rows[i][j]);
        Self::new(matrix, domain, codomain)
    }

    pub fn identity(space: PNSpace) -> Self {
        let n = space.dimension();
        Self::new(DMatrix::identity(n, n), space.clone(), space).unwrap()
    }

    /// The identity matrix viewed as a map between two structures on `R^n`.
    pub fn identity_between(domain: PNSpace, codomain: PNSpace) -> Result<Self> {
        let n = domain.dimension();
        Self::new(DMatrix::identity(codomain.dimension(), n), domain, codomain)
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn domain(&self) -> &PNSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &PNSpace {
        &self.codomain
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.matrix.nrows())
            .map(|i| self.matrix.row(i).iter().copied().collect())
            .collect()
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.domain.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.domain.dimension(),
                found: x.len(),
            });
        }
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &[f64]) -> Vec<f64> {
        let m = &self.matrix;
        (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| m[(i, j)] * x[j]).sum())
            .collect()
    }

    /// `S ∘ T`, defined when `T`'s codomain is `S`'s domain.
    pub fn compose(&self, inner: &LinearOperator) -> Result<LinearOperator> {
        if inner.codomain.dimension() != self.domain.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.domain.dimension(),
                found: inner.codomain.dimension(),
            });
        }
        LinearOperator::new(
            &self.matrix * &inner.matrix,
            inner.domain.clone(),
            self.codomain.clone(),
        )
    }

    /// Exact `‖T‖_{(w,w')}`.
    pub fn norm(&self, w: f64, wp: f64) -> Result<f64> {
        self.norm_with_witness(w, wp).map(|(v, _)| v)
    }

    /// Exact `‖T‖_{(w,w')}` together with a maximizing vertex of the unit ball.
    pub fn norm_with_witness(&self, w: f64, wp: f64) -> Result<(f64, Vec<f64>)> {
        check_open_unit("w", w)?;
        check_open_unit("w'", wp)?;
        let band = self.domain.band_for_norm(w)?;
        let mut best = (0.0, vec![0.0; self.domain.dimension()]);
        for v in ball_vertices(band)? {
            let value = self.codomain.norm_at_unchecked(&self.apply_unchecked(&v), wp);
            if value > best.0 {
                best = (value, v);
            }
        }
        Ok(best)
    }

    /// Lower bound on `‖T‖_{(w,w')}` from `samples` points on the unit sphere
    /// of `‖·‖_w`. Sample `i` is drawn from its own stream of `seed`.
    pub fn norm_monte_carlo(&self, w: f64, wp: f64, samples: usize, seed: u64) -> Result<f64> {
        check_open_unit("w", w)?;
        check_open_unit("w'", wp)?;
        let n = self.domain.dimension();
        // both this estimate and the vertex value carry at most
        // (n + m + 2) ulps of relative rounding error
        let deflate = 1.0 - 2.0 * (n + self.codomain.dimension() + 2) as f64 * f64::EPSILON;
        let mut best: f64 = 0.0;
        for i in 0..samples as u64 {
            let mut rng = sampling::rng(seed, i);
            let mut x = sampling::direction(&mut rng, n, i);
            let r = self.domain.norm_at_unchecked(&x, w);
            x.iter_mut().for_each(|c| *c /= r);
            // pull rounding excess back inside the closed ball
            while self.domain.norm_at_unchecked(&x, w) > 1.0 {
                x.iter_mut().for_each(|c| *c *= 1.0 - f64::EPSILON);
            }
            best = best.max(self.codomain.norm_at_unchecked(&self.apply_unchecked(&x), wp));
        }
        Ok(best * deflate)
    }

    /// `‖T‖_{(w,w')}` over every (domain band, codomain band) pair, at band
    /// midpoints.
    pub fn norm_profile(&self) -> Result<NormProfile> {
        let dw = self.domain.band_midpoints();
        let cw = self.codomain.band_midpoints();
        let entries = dw
            .iter()
            .map(|&w| cw.iter().map(|&wp| self.norm(w, wp)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(NormProfile {
            domain_w: dw,
            codomain_w: cw,
            entries,
        })
    }
}

/// Vertices of the unit ball of a band norm, one from each `±v` pair.
pub fn ball_vertices(band: &Band) -> Result<Vec<Vec<f64>>> {
    let n = band.dim();
    let mut out = Vec::new();
    let mut offset = 0;
    for block in &band.blocks {
        let d = block.dim();
        match block.kind {
            NormKind::L1 => {
                for (i, wt) in block.weights.iter().enumerate() {
                    let mut v = vec![0.0; n];
                    v[offset + i] = 1.0 / wt;
                    out.push(v);
                }
            }
            NormKind::Linf => {
                if d > MAX_LINF_VERTEX_DIM {
                    return Err(Error::TooManyVertices {
                        dim: d,
                        limit: MAX_LINF_VERTEX_DIM,
                    });
                }
                // first coordinate fixed positive
                for mask in 0..(1u32 << (d - 1)) {
                    let mut v = vec![0.0; n];
                    for (i, wt) in block.weights.iter().enumerate() {
                        let negative = i > 0 && (mask >> (i - 1)) & 1 == 1;
                        v[offset + i] = if negative { -1.0 / wt } else { 1.0 / wt };
                    }
                    out.push(v);
                }
            }
        }
        offset += d;
    }
    Ok(out)
}

/// Table of `‖T‖_{(w,w')}`: rows are domain bands, columns codomain bands.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormProfile {
    pub domain_w: Vec<f64>,
    pub codomain_w: Vec<f64>,
    pub entries: Vec<Vec<f64>>,
}

impl NormProfile {
    pub fn all_finite(&self) -> bool {
        self.entries.iter().flatten().all(|v| v.is_finite())
    }

    /// Entries nonincreasing down each column, up to relative slack `tol`.
    pub fn nonincreasing_in_domain(&self, tol: f64) -> bool {
        self.entries
            .windows(2)
            .all(|r| r[0].iter().zip(&r[1]).all(|(a, b)| *b <= a * (1.0 + tol)))
    }

    /// Entries nondecreasing along each row, up to relative slack `tol`.
    pub fn nondecreasing_in_codomain(&self, tol: f64) -> bool {
        self.entries
            .iter()
            .all(|row| row.windows(2).all(|p| p[0] <= p[1] * (1.0 + tol)))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("w");
        for wp in &self.codomain_w {
            out.push_str(&format!(",{wp}"));
        }
        out.push('\n');
        for (w, row) in self.domain_w.iter().zip(&self.entries) {
            out.push_str(&w.to_string());
            for v in row {
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct RawOperator {
    matrix: Vec<Vec<f64>>,
    domain: PNSpace,
    codomain: PNSpace,
}

impl Serialize for LinearOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RawOperator {
            matrix: self.rows(),
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LinearOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawOperator::deserialize(deserializer)?;
        LinearOperator::from_rows(&raw.matrix, raw.domain, raw.codomain).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pnspace::NormSpec;

    fn linf(n: usize) -> PNSpace {
        PNSpace::single_band(NormSpec::linf(vec![1.0; n]).unwrap())
    }

    fn scaled_band(c1: f64, c2: f64) -> PNSpace {
        PNSpace::from_bands(vec![
            (0.5, NormSpec::l1(vec![c1]).unwrap()),
            (1.0, NormSpec::l1(vec![c2]).unwrap()),
        ])
        .unwrap()
    }

    fn diag23() -> LinearOperator {
        LinearOperator::from_rows(&[vec![2.0, 0.0], vec![0.0, 3.0]], linf(2), linf(2)).unwrap()
    }

    /// max over the four cube vertices, and the max-row-sum formula.
    #[test]
    fn diag_norm_by_vertices() {
        let t = diag23();
        let mut brute: f64 = 0.0;
        for sx in [-1.0, 1.0] {
            for sy in [-1.0, 1.0] {
                let y = t.apply(&[sx, sy]).unwrap();
                brute = brute.max(y[0].abs().max(y[1].abs()));
            }
        }
        let row_sum = t.rows().iter().map(|r| r.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max);
        assert_eq!(brute, 3.0);
        assert_eq!(row_sum, 3.0);
        assert_eq!(t.norm(0.25, 0.75).unwrap(), 3.0);
    }

    #[test]
    fn identity_has_norm_one() {
        let s = PNSpace::single_band(NormSpec::l1(vec![0.5, 2.0, 1.0]).unwrap());
        let id = LinearOperator::identity(s);
        assert_eq!(id.norm(0.3, 0.6).unwrap(), 1.0);
        assert_eq!(id.apply(&[1.0, 2.0, 3.0]).unwrap(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn scaled_band_formula() {
        // ‖T‖_{(w,w')} = d(w'⁻) / c(w⁻)
        let (c1, c2, d1, d2) = (1.0, 4.0, 2.0, 8.0);
        let t = LinearOperator::from_rows(&[vec![1.0]], scaled_band(c1, c2), scaled_band(d1, d2)).unwrap();
        assert_eq!(t.norm(0.25, 0.25).unwrap(), d1 / c1);
        assert_eq!(t.norm(0.25, 0.75).unwrap(), d2 / c1);
        assert_eq!(t.norm(0.75, 0.25).unwrap(), d1 / c2);
        assert_eq!(t.norm(0.5, 0.5).unwrap(), d1 / c1);
        assert_eq!(t.norm(0.75, 0.75).unwrap(), d2 / c2);
        let mc = t.norm_monte_carlo(0.75, 0.25, 2_000, 9).unwrap();
        assert!(mc <= d1 / c2 && mc >= d1 / c2 * (1.0 - 1e-12));
    }

    #[test]
    fn zero_matrix_profile() {
        let s = scaled_band(1.0, 2.0);
        let t = LinearOperator::from_rows(&[vec![0.0]], s.clone(), s).unwrap();
        let p = t.norm_profile().unwrap();
        assert!(p.entries.iter().flatten().all(|v| *v == 0.0));
    }

    #[test]
    fn identity_profile_on_two_bands() {
        let s = scaled_band(1.0, 2.0);
        let p = LinearOperator::identity(s).norm_profile().unwrap();
        assert_eq!(p.entries, vec![vec![1.0, 2.0], vec![0.5, 1.0]]);
        assert!(p.nonincreasing_in_domain(0.0) && p.nondecreasing_in_codomain(0.0));
        assert_eq!(p.to_csv(), "w,0.25,0.75\n0.25,1,2\n0.75,0.5,1\n");
    }

    #[test]
    fn monte_carlo_examples() {
        let id = LinearOperator::identity(linf(3));
        let mc = id.norm_monte_carlo(0.5, 0.5, 10_000, 1).unwrap();
        assert!((1.0 - 1e-9..=1.0).contains(&mc), "{mc}");
        let mc = diag23().norm_monte_carlo(0.5, 0.5, 100_000, 2).unwrap();
        assert!((2.99..=3.0).contains(&mc), "{mc}");
        assert_eq!(
            diag23().norm_monte_carlo(0.5, 0.5, 500, 77).unwrap(),
            diag23().norm_monte_carlo(0.5, 0.5, 500, 77).unwrap()
        );
    }

    #[test]
    fn linf_vertex_cap() {
        let big = PNSpace::single_band(NormSpec::linf(vec![1.0; 21]).unwrap());
        let id = LinearOperator::identity(big);
        assert!(matches!(id.norm(0.5, 0.5), Err(Error::TooManyVertices { dim: 21, .. })));
        assert!(id.norm_monte_carlo(0.5, 0.5, 10, 0).is_ok());
    }

    #[test]
    fn shape_and_argument_errors() {
        assert!(LinearOperator::from_rows(&[vec![1.0, 2.0]], linf(1), linf(1)).is_err());
        assert!(diag23().apply(&[1.0]).is_err());
        assert!(diag23().norm(0.0, 0.5).is_err());
        assert!(diag23().norm(0.5, 1.0).is_err());
    }

    #[test]
    fn linearity() {
        let t = LinearOperator::from_rows(&[vec![0.3, -1.7], vec![2.2, 0.9], vec![1.0, 1.0]], linf(2), linf(3)).unwrap();
        let (x, y, a, b) = ([0.7, -1.1], [2.5, 0.2], 1.3, -0.4);
        let combo: Vec<f64> = x.iter().zip(&y).map(|(p, q)| a * p + b * q).collect();
        let lhs = t.apply(&combo).unwrap();
        let (tx, ty) = (t.apply(&x).unwrap(), t.apply(&y).unwrap());
        for i in 0..3 {
            assert!((lhs[i] - (a * tx[i] + b * ty[i])).abs() < 1e-12);
        }
    }

    #[test]
    fn json_round_trip() {
        let t = diag23();
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.starts_with(r#"{"matrix":[[2.0,0.0],[0.0,3.0]],"domain":"#));
        let back: LinearOperator = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }
}
