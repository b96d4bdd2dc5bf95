//! t-norms, their dual t-conorms, and the triangle functions `τ_T`, `τ_{T*}`
//! evaluated exactly on step d.f.'s.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distfn::StepDF;
use crate::error::{invalid, Result};

/// One of the three basic continuous t-norms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TNormKind {
    /// Łukasiewicz: `max(a + b - 1, 0)`.
    #[serde(rename = "W", alias = "w")]
    W,
    /// Product: `a * b`.
    #[serde(rename = "prod")]
    Prod,
    /// Minimum: `min(a, b)`.
    #[serde(rename = "min")]
    Min,
}

impl TNormKind {
    pub const ALL: [TNormKind; 3] = [TNormKind::W, TNormKind::Prod, TNormKind::Min];

    /// `T(a, b)`, no range check.
    #[inline]
    pub fn apply(self, a: f64, b: f64) -> f64 {
        // the unit law is kept exact in floating point
        if a == 1.0 {
            return b;
        }
        if b == 1.0 {
            return a;
        }
        match self {
            TNormKind::W => (a + b - 1.0).max(0.0),
            TNormKind::Prod => a * b,
            TNormKind::Min => a.min(b),
        }
    }

    /// `T*(a, b) = 1 - T(1 - a, 1 - b)`, no range check.
    #[inline]
    pub fn apply_dual(self, a: f64, b: f64) -> f64 {
        let v = match self {
            TNormKind::W => (a + b).min(1.0),
            TNormKind::Prod => a + b - a * b,
            TNormKind::Min => a.max(b),
        };
        v.clamp(0.0, 1.0)
    }

    pub fn eval(self, a: f64, b: f64) -> Result<f64> {
        check_unit("a", a)?;
        check_unit("b", b)?;
        Ok(self.apply(a, b))
    }

    pub fn eval_dual(self, a: f64, b: f64) -> Result<f64> {
        check_unit("a", a)?;
        check_unit("b", b)?;
        Ok(self.apply_dual(a, b))
    }

    pub fn name(self) -> &'static str {
        match self {
            TNormKind::W => "W",
            TNormKind::Prod => "prod",
            TNormKind::Min => "min",
        }
    }
}

fn check_unit(name: &'static str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(invalid(name, v, "t-norm arguments must lie in [0, 1]"))
    }
}

impl fmt::Display for TNormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TNormKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "W" | "w" => Ok(TNormKind::W),
            "prod" => Ok(TNormKind::Prod),
            "min" => Ok(TNormKind::Min),
            other => Err(format!("unknown t-norm {other:?}, expected W | prod | min")),
        }
    }
}

/// Which extremum the convolution takes over the line `s + t = x`.
#[derive(Clone, Copy)]
enum Extremum {
    Sup,
    Inf,
}

/// Piece `i` of a step d.f. is `(lo_i, hi_i]` carrying `values[i]`, with
/// `lo_0 = -inf` and `hi_n = +inf`.
fn pieces(f: &StepDF) -> Vec<(f64, f64, f64)> {
    let b = f.breakpoints();
    let v = f.values();
    (0..v.len())
        .map(|i| {
            let lo = if i == 0 { f64::NEG_INFINITY } else { b[i - 1] };
            let hi = if i == b.len() { f64::INFINITY } else { b[i] };
            (lo, hi, v[i])
        })
        .collect()
}

fn convolve(kind: TNormKind, f: &StepDF, g: &StepDF, ext: Extremum) -> StepDF {
    let pf = pieces(f);
    let pg = pieces(g);

    // (s, t) with s in (a_i, a_{i+1}] and t in (b_j, b_{j+1}] reach exactly
    // the x in (a_i + b_j, a_{i+1} + b_{j+1}].
    struct Pair {
        lo: f64,
        hi: f64,
        value: f64,
    }
    let mut pairs = Vec::with_capacity(pf.len() * pg.len());
    for &(alo, ahi, v) in &pf {
        for &(blo, bhi, u) in &pg {
            let value = match ext {
                Extremum::Sup => kind.apply(v, u),
                Extremum::Inf => kind.apply_dual(v, u),
            };
            pairs.push(Pair {
                lo: alo + blo,
                hi: ahi + bhi,
                value,
            });
        }
    }

    let mut cands: Vec<f64> = f
        .breakpoints()
        .iter()
        .flat_map(|a| g.breakpoints().iter().map(move |b| a + b))
        .collect();
    cands.sort_by(f64::total_cmp);
    cands.dedup();

    // value on (left, right]; left = -inf for the first piece, right = +inf for the last
    let piece_value = |left: f64, right: f64| -> f64 {
        let achievable = pairs.iter().filter(|p| p.lo <= left && p.hi >= right);
        match ext {
            Extremum::Sup => achievable.map(|p| p.value).fold(0.0, f64::max),
            Extremum::Inf => achievable.map(|p| p.value).fold(1.0, f64::min),
        }
    };

    let mut values = Vec::with_capacity(cands.len() + 1);
    values.push(piece_value(f64::NEG_INFINITY, cands[0]));
    for k in 0..cands.len() {
        let right = cands.get(k + 1).copied().unwrap_or(f64::INFINITY);
        values.push(piece_value(cands[k], right));
    }
    StepDF::canonical(cands, values)
}

/// `τ_T(F, G)(x) = sup{T(F(s), G(t)) : s + t = x}`.
pub fn tau_sup_conv(kind: TNormKind, f: &StepDF, g: &StepDF) -> StepDF {
    convolve(kind, f, g, Extremum::Sup)
}

/// `τ_{T*}(F, G)(x) = inf{T*(F(s), G(t)) : s + t = x}`.
pub fn tau_inf_conv(kind: TNormKind, f: &StepDF, g: &StepDF) -> StepDF {
    convolve(kind, f, g, Extremum::Inf)
}
