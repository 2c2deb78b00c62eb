//! Closed-form operations on the Poincaré ball.
//!
//! The ball of curvature magnitude `c` is the set of points with
//! `c * ||x||^2 < 1`; its sectional curvature is `-c`. All arithmetic here
//! runs in `f64`: `atanh` near the boundary loses precision catastrophically
//! in single precision, and training pushes points there.
//!
//! Stored points keep a safety margin of [`BALL_EPS`] from the boundary.
//! Every ball-valued result is re-projected into that margin, so `atanh`
//! and the conformal factor stay finite.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Margin between any stored point and the ball boundary:
/// after construction or update, `sqrt(c) * ||x|| <= 1 - BALL_EPS`.
pub const BALL_EPS: f64 = 1e-5;

/// Curvature magnitude of a hyperbolic ball. Always strictly positive;
/// the Euclidean baseline is a separate [`Geometry`] mode, not `c = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Curvature(f64);

impl Curvature {
    pub fn new(c: f64) -> Result<Self> {
        if !c.is_finite() || c <= 0.0 {
            return Err(Error::usage(format!(
                "curvature must be finite and positive, got {c}"
            )));
        }
        Ok(Curvature(c))
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn sqrt_c(self) -> f64 {
        self.0.sqrt()
    }

    /// Euclidean radius of the ball, `1 / sqrt(c)`.
    pub fn radius(self) -> f64 {
        1.0 / self.0.sqrt()
    }
}

impl TryFrom<f64> for Curvature {
    type Error = Error;
    fn try_from(c: f64) -> Result<Self> {
        Curvature::new(c)
    }
}

impl From<Curvature> for f64 {
    fn from(c: Curvature) -> f64 {
        c.0
    }
}

/// Which space embeddings live in. Euclidean is a distinct tag rather than
/// the `c -> 0` limit because the distance and map formulas are undefined
/// at `c = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Geometry {
    Euclidean,
    Hyperbolic { c: Curvature },
}

impl Geometry {
    pub fn hyperbolic(c: f64) -> Result<Self> {
        Ok(Geometry::Hyperbolic {
            c: Curvature::new(c)?,
        })
    }

    pub fn curvature(&self) -> Option<Curvature> {
        match self {
            Geometry::Euclidean => None,
            Geometry::Hyperbolic { c } => Some(*c),
        }
    }
}

impl std::fmt::Display for Geometry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Geometry::Euclidean => write!(f, "euclidean"),
            Geometry::Hyperbolic { c } => write!(f, "hyperbolic(c={})", c.get()),
        }
    }
}

/// A point strictly inside the Poincaré ball of its curvature.
#[derive(Debug, Clone, PartialEq)]
pub struct BallPoint {
    coords: Vec<f64>,
    c: Curvature,
}

impl BallPoint {
    /// Validating constructor. Rejects non-finite coordinates and points
    /// on or outside the ball; points inside but within the safety margin
    /// are pulled back onto the margin.
    pub fn new(coords: Vec<f64>, c: Curvature) -> Result<Self> {
        if coords.iter().any(|v| !v.is_finite()) {
            return Err(Error::usage("ball point has non-finite coordinates"));
        }
        let n2 = norm_sq(&coords);
        if c.get() * n2 >= 1.0 {
            return Err(Error::usage(format!(
                "point lies on or outside the ball: c*||x||^2 = {}",
                c.get() * n2
            )));
        }
        Ok(Self::clamp(coords, c))
    }

    /// Safety projection: rescale anything at or beyond the margin to
    /// Euclidean norm `(1 - BALL_EPS) / sqrt(c)`, leave interior points
    /// untouched. Total on finite input.
    pub fn project(coords: Vec<f64>, c: Curvature) -> Result<Self> {
        if coords.iter().any(|v| !v.is_finite()) {
            return Err(Error::usage("cannot project non-finite coordinates"));
        }
        Ok(Self::clamp(coords, c))
    }

    fn clamp(mut coords: Vec<f64>, c: Curvature) -> Self {
        let max_norm = (1.0 - BALL_EPS) / c.sqrt_c();
        let norm = norm_sq(&coords).sqrt();
        if norm >= max_norm {
            let scale = max_norm / norm;
            for v in &mut coords {
                *v *= scale;
            }
        }
        BallPoint { coords, c }
    }

    pub fn origin(dim: usize, c: Curvature) -> Self {
        BallPoint {
            coords: vec![0.0; dim],
            c,
        }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn curvature(&self) -> Curvature {
        self.c
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn norm(&self) -> f64 {
        norm_sq(&self.coords).sqrt()
    }

    /// The antipode `-x`, also a valid ball point.
    pub fn neg(&self) -> BallPoint {
        BallPoint {
            coords: self.coords.iter().map(|v| -v).collect(),
            c: self.c,
        }
    }

    fn check_compatible(&self, other: &BallPoint) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::usage(format!(
                "dimension mismatch: {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        if self.c != other.c {
            return Err(Error::usage(format!(
                "curvature mismatch: {} vs {}",
                self.c.get(),
                other.c.get()
            )));
        }
        Ok(())
    }
}

/// A tangent vector anchored at a base point on the ball.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    coords: Vec<f64>,
    base: BallPoint,
}

impl TangentVector {
    pub fn at(base: BallPoint, coords: Vec<f64>) -> Result<Self> {
        if coords.len() != base.dim() {
            return Err(Error::usage(format!(
                "tangent dimension {} does not match base dimension {}",
                coords.len(),
                base.dim()
            )));
        }
        if coords.iter().any(|v| !v.is_finite()) {
            return Err(Error::usage("tangent vector has non-finite coordinates"));
        }
        Ok(TangentVector { coords, base })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn base(&self) -> &BallPoint {
        &self.base
    }

    /// Follow the geodesic from the base point for this vector's length.
    pub fn exp(&self) -> Result<BallPoint> {
        exp_at(&self.base, &self.coords)
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm_sq(a: &[f64]) -> f64 {
    dot(a, a)
}

/// Conformal factor `lambda = 2 / (1 - c * ||x||^2)`, always >= 2.
pub fn conformal_factor(x: &BallPoint) -> f64 {
    2.0 / (1.0 - x.c.get() * norm_sq(&x.coords))
}

/// `tanh(u) / u`, with the series expansion near zero.
fn tanh_over(u: f64) -> f64 {
    if u.abs() < 1e-8 {
        1.0 - u * u / 3.0
    } else {
        u.tanh() / u
    }
}

/// `atanh(u) / u`, with the series expansion near zero.
fn atanh_over(u: f64) -> f64 {
    if u.abs() < 1e-8 {
        1.0 + u * u / 3.0
    } else {
        u.atanh() / u
    }
}

/// Möbius addition `x (+) y`, the curvature-preserving generalization of
/// vector addition. Non-commutative. The result is safety-projected.
pub fn mobius_add(x: &BallPoint, y: &BallPoint) -> Result<BallPoint> {
    x.check_compatible(y)?;
    let coords = mobius_add_raw(x.c.get(), &x.coords, &y.coords);
    BallPoint::project(coords, x.c)
}

/// Möbius addition on raw coordinate slices. Callers guarantee both inputs
/// lie inside the ball of curvature `c`; the denominator is then positive.
pub(crate) fn mobius_add_raw(c: f64, x: &[f64], y: &[f64]) -> Vec<f64> {
    let xy = dot(x, y);
    let x2 = norm_sq(x);
    let y2 = norm_sq(y);
    let a = 1.0 + 2.0 * c * xy + c * y2;
    let b = 1.0 - c * x2;
    let den = 1.0 + 2.0 * c * xy + c * c * x2 * y2;
    x.iter()
        .zip(y)
        .map(|(&xi, &yi)| (a * xi + b * yi) / den)
        .collect()
}

/// Exponential map at the origin: `tanh(sqrt(c)||v||) / (sqrt(c)||v||) * v`.
/// The zero vector maps to the origin.
pub fn exp0(c: Curvature, v: &[f64]) -> Result<BallPoint> {
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::usage("exp0 requires finite input"));
    }
    BallPoint::project(exp0_raw(c.get(), v), c)
}

pub(crate) fn exp0_raw(c: f64, v: &[f64]) -> Vec<f64> {
    let u = c.sqrt() * norm_sq(v).sqrt();
    let factor = tanh_over(u);
    v.iter().map(|&x| factor * x).collect()
}

/// Logarithmic map at the origin, the exact inverse of [`exp0`].
/// The origin maps to the zero vector.
pub fn log0(y: &BallPoint) -> Vec<f64> {
    let u = y.c.sqrt_c() * y.norm();
    let factor = atanh_over(u);
    y.coords.iter().map(|&x| factor * x).collect()
}

/// Geodesic distance `(2/sqrt(c)) * atanh(sqrt(c) * ||(-x) (+) y||)`.
///
/// Computed through the algebraically equal symmetric form
/// `||x - y|| / sqrt(1 - 2c<x,y> + c^2 ||x||^2 ||y||^2)` so that
/// `distance(x, y) == distance(y, x)` bit-for-bit.
pub fn distance(x: &BallPoint, y: &BallPoint) -> Result<f64> {
    x.check_compatible(y)?;
    let c = x.c.get();
    let diff2: f64 = x
        .coords
        .iter()
        .zip(&y.coords)
        .map(|(&a, &b)| (a - b) * (a - b))
        .sum();
    let den = 1.0 - 2.0 * c * dot(&x.coords, &y.coords)
        + c * c * norm_sq(&x.coords) * norm_sq(&y.coords);
    let arg = (c * diff2 / den).sqrt().min(1.0 - 1e-15);
    Ok(2.0 / x.c.sqrt_c() * arg.atanh())
}

/// Exponential map at an arbitrary base point:
/// `x (+) ( tanh(sqrt(c) * lambda_x * ||v|| / 2) / (sqrt(c)||v||) * v )`.
/// Reduces to [`exp0`] at the origin; the zero vector returns `x`.
pub fn exp_at(x: &BallPoint, v: &[f64]) -> Result<BallPoint> {
    if v.len() != x.dim() {
        return Err(Error::usage(format!(
            "tangent dimension {} does not match point dimension {}",
            v.len(),
            x.dim()
        )));
    }
    if v.iter().any(|t| !t.is_finite()) {
        return Err(Error::usage("exp_at requires finite input"));
    }
    let c = x.c.get();
    let norm_v = norm_sq(v).sqrt();
    if norm_v == 0.0 {
        return Ok(x.clone());
    }
    let lambda = conformal_factor(x);
    let factor = (c.sqrt() * lambda * norm_v / 2.0).tanh() / (c.sqrt() * norm_v);
    let step: Vec<f64> = v.iter().map(|&t| factor * t).collect();
    let coords = mobius_add_raw(c, &x.coords, &step);
    BallPoint::project(coords, x.c)
}
