//! Fubini–Study geometry of CP^n with the real points RP^n: geodesics,
//! vertical half-circles, discrete paths and their minimum-energy
//! concatenation, and the Hopf vector fields on odd spheres.
//!
//! Distances are normalized so that complex lines are round spheres of
//! circumference π.

mod checks;
mod morse;

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use checks::{
    concat_check, geodesic_check, halfcircle_check, hopf_check, run_trials, yk_check, GeometryReport, NumericCheck,
};
pub use morse::{
    chart_independence, critical_index, critical_index_at, expected_index, BrokenGeodesicConfig, FrameChoice,
    IndexResult, Tolerances,
};

pub type CVec = DVector<Complex64>;

/// Threshold on `|<z,w>|` for two representatives to be the same point.
pub const POINT_EQ_TOL: f64 = 1e-12;
/// Distance below which a point counts as lying on RP^n.
pub const REAL_TOL: f64 = 1e-9;
const UNIT_TOL: f64 = 1e-12;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("zero or non-finite vector")]
    Degenerate,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("vector is not orthogonal to its base point (|<x,v>| = {0:e})")]
    NotTangent(f64),
    #[error("vector is not a unit vector (norm {0})")]
    NotUnit(f64),
    #[error("point is not on RP^n (distance {0:e})")]
    NotReal(f64),
    #[error("vector is not a unit normal i*u with u real")]
    NotNormal,
    #[error("invalid path parameters: {0}")]
    InvalidParams(String),
    #[error("paths do not share an endpoint (distance {0:e})")]
    EndpointMismatch(f64),
    #[error("angle {0} is not finite")]
    InvalidAngle(f64),
    #[error("{field:?} needs n {requirement}, got n = {n}")]
    Parity { n: usize, field: HopfField, requirement: &'static str },
    #[error("{segments} segments for k = {k}: need at least {required} (segment length <= pi/8)")]
    TooFewSegments { k: usize, segments: usize, required: usize },
    #[error("configuration is not critical: gradient norm {norm:e} exceeds {tol:e}")]
    NotCritical { norm: f64, tol: f64 },
    #[error("symmetric eigensolver did not converge")]
    Eigensolve,
}

/// Hermitian product `sum conj(a_i) b_i`.
pub fn inner(a: &CVec, b: &CVec) -> Complex64 {
    a.dotc(b)
}

/// A point of CP^n stored as a unit representative.
#[derive(Debug, Clone)]
pub struct ProjPoint {
    rep: CVec,
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        self.rep.len() == other.rep.len() && inner(&self.rep, &other.rep).norm() > 1.0 - POINT_EQ_TOL
    }
}

impl ProjPoint {
    /// Normalizes `rep`; fails on zero or non-finite input.
    pub fn new(rep: CVec) -> Result<Self, GeometryError> {
        let norm = rep.norm();
        if !norm.is_finite() || norm == 0.0 || rep.len() < 2 {
            return Err(GeometryError::Degenerate);
        }
        Ok(ProjPoint { rep: rep / Complex64::from(norm) })
    }

    pub fn from_real(coords: &[f64]) -> Result<Self, GeometryError> {
        ProjPoint::new(CVec::from_iterator(coords.len(), coords.iter().map(|&c| Complex64::from(c))))
    }

    /// Coordinate point `[e_i]` of CP^n.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut rep = CVec::zeros(n + 1);
        rep[i] = Complex64::from(1.0);
        ProjPoint { rep }
    }

    pub fn rep(&self) -> &CVec {
        &self.rep
    }

    /// Complex dimension `n` of the ambient CP^n.
    pub fn n(&self) -> usize {
        self.rep.len() - 1
    }

    /// Nearest real point: `(r, phase)` with `rep ≈ phase * r`, `r` a real unit vector.
    pub fn nearest_real(&self) -> (DVector<f64>, Complex64) {
        let s: Complex64 = self.rep.iter().map(|z| z * z).sum();
        let phase = if s.norm() > 1e-300 { Complex64::from_polar(1.0, s.arg() / 2.0) } else { Complex64::from(1.0) };
        let r = DVector::from_iterator(self.rep.len(), self.rep.iter().map(|z| (z * phase.conj()).re));
        let norm = r.norm();
        if norm == 0.0 {
            return (DVector::from_element(self.rep.len(), 0.0), phase);
        }
        (r / norm, phase)
    }

    /// Distance to RP^n.
    pub fn real_defect(&self) -> f64 {
        let (r, _) = self.nearest_real();
        if r.norm() == 0.0 {
            return std::f64::consts::FRAC_PI_4;
        }
        let real = ProjPoint { rep: r.map(Complex64::from) };
        fs_distance(self, &real)
    }

    pub fn is_real(&self) -> bool {
        self.real_defect() <= REAL_TOL
    }

    /// Real unit representative, if the point is on RP^n.
    pub fn real_rep(&self) -> Result<DVector<f64>, GeometryError> {
        let defect = self.real_defect();
        if defect > REAL_TOL {
            return Err(GeometryError::NotReal(defect));
        }
        Ok(self.nearest_real().0)
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        loop {
            let v = CVec::from_fn(n + 1, |_, _| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)));
            if let Ok(p) = ProjPoint::new(v) {
                return p;
            }
        }
    }

    pub fn random_real<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        loop {
            let v: Vec<f64> = (0..=n).map(|_| rng.sample(StandardNormal)).collect();
            if let Ok(p) = ProjPoint::from_real(&v) {
                return p;
            }
        }
    }
}

/// Horizontal tangent vector: `vec` is orthogonal to `base.rep()`.
#[derive(Debug, Clone)]
pub struct TangentVector {
    base: ProjPoint,
    vec: CVec,
}

impl TangentVector {
    pub fn new(base: ProjPoint, vec: CVec) -> Result<Self, GeometryError> {
        if vec.len() != base.rep.len() {
            return Err(GeometryError::DimensionMismatch(base.rep.len(), vec.len()));
        }
        let overlap = inner(&base.rep, &vec).norm();
        if overlap > UNIT_TOL * vec.norm().max(1.0) {
            return Err(GeometryError::NotTangent(overlap));
        }
        Ok(TangentVector { base, vec })
    }

    pub fn base(&self) -> &ProjPoint {
        &self.base
    }

    pub fn vec(&self) -> &CVec {
        &self.vec
    }

    pub fn norm(&self) -> f64 {
        self.vec.norm()
    }

    pub fn is_unit(&self) -> bool {
        (self.norm() - 1.0).abs() <= UNIT_TOL
    }

    fn require_unit(&self) -> Result<(), GeometryError> {
        if self.is_unit() {
            Ok(())
        } else {
            Err(GeometryError::NotUnit(self.norm()))
        }
    }

    /// The complex structure `I v = i v`.
    pub fn times_i(&self) -> TangentVector {
        TangentVector { base: self.base.clone(), vec: self.vec.map(|z| z * I) }
    }

    pub fn scaled(&self, s: f64) -> TangentVector {
        TangentVector { base: self.base.clone(), vec: self.vec.map(|z| z * s) }
    }

    /// Real tangent `u` of RP^n at a real point.
    pub fn real(x: &ProjPoint, u: &[f64]) -> Result<Self, GeometryError> {
        let r = x.real_rep()?;
        let base = ProjPoint { rep: r.map(Complex64::from) };
        TangentVector::new(base, CVec::from_iterator(u.len(), u.iter().map(|&c| Complex64::from(c))))
    }

    /// Unit normal `i u` to RP^n at a real point, for a real unit `u ⟂ x`.
    pub fn normal(x: &ProjPoint, u: &[f64]) -> Result<Self, GeometryError> {
        Ok(TangentVector::real(x, u)?.times_i())
    }

    /// Write `self = i u` over a real representative of the base; returns
    /// that representative and `u`.
    pub fn as_normal(&self) -> Result<(DVector<f64>, DVector<f64>), GeometryError> {
        let (x, phase) = (self.base.real_rep()?, self.base.nearest_real().1);
        let w = self.vec.map(|z| z * phase.conj() * -I);
        if w.iter().any(|z| z.im.abs() > 1e-9) {
            return Err(GeometryError::NotNormal);
        }
        Ok((x, w.map(|z| z.re)))
    }

    /// Random unit normal `i u` at a real point.
    pub fn random_normal<R: Rng + ?Sized>(x: &ProjPoint, rng: &mut R) -> Result<Self, GeometryError> {
        let r = x.real_rep()?;
        loop {
            let mut u = DVector::from_fn(r.len(), |_, _| rng.sample::<f64, _>(StandardNormal));
            u -= &r * r.dot(&u);
            let norm = u.norm();
            if norm > 1e-6 {
                u /= norm;
                return TangentVector::normal(x, u.as_slice());
            }
        }
    }
}

/// Fubini–Study distance in `[0, π/2]`, computed as the angle between `q`
/// and the complex line of `p`.
pub fn fs_distance(p: &ProjPoint, q: &ProjPoint) -> f64 {
    let c = inner(&p.rep, &q.rep);
    let perp = &q.rep - &p.rep * c;
    perp.norm().atan2(c.norm())
}

/// `exp_x(s v)`: representative `cos(s) x + sin(s) v`, periodic of period π
/// in CP^n. `v` must be a unit tangent vector.
pub fn geodesic(v: &TangentVector, s: f64) -> Result<ProjPoint, GeometryError> {
    v.require_unit()?;
    ProjPoint::new(&v.base.rep * Complex64::from(s.cos()) + &v.vec * Complex64::from(s.sin()))
}

/// A path sampled at strictly increasing parameters from 0 to 1, with both
/// endpoints on RP^n; consecutive samples are joined by minimal geodesics.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretePath {
    samples: Vec<ProjPoint>,
    params: Vec<f64>,
}

impl DiscretePath {
    pub fn new(samples: Vec<ProjPoint>, mut params: Vec<f64>) -> Result<Self, GeometryError> {
        if samples.len() < 2 || samples.len() != params.len() {
            return Err(GeometryError::InvalidParams(format!(
                "{} samples, {} params (need at least 2, equal counts)",
                samples.len(),
                params.len()
            )));
        }
        let n = samples[0].rep.len();
        if let Some(bad) = samples.iter().find(|p| p.rep.len() != n) {
            return Err(GeometryError::DimensionMismatch(n, bad.rep.len()));
        }
        let last = params.len() - 1;
        if params[0].abs() > 1e-12 || (params[last] - 1.0).abs() > 1e-12 {
            return Err(GeometryError::InvalidParams("parameters must run from 0 to 1".into()));
        }
        params[0] = 0.0;
        params[last] = 1.0;
        if params.windows(2).any(|w| w[1] <= w[0] || !w[1].is_finite()) {
            return Err(GeometryError::InvalidParams("parameters must be strictly increasing".into()));
        }
        for p in [&samples[0], &samples[last]] {
            let defect = p.real_defect();
            if defect > REAL_TOL {
                return Err(GeometryError::NotReal(defect));
            }
        }
        Ok(DiscretePath { samples, params })
    }

    /// Samples at evenly spaced parameters.
    pub fn uniform(samples: Vec<ProjPoint>) -> Result<Self, GeometryError> {
        let m = samples.len().max(2) - 1;
        let params = (0..samples.len()).map(|i| i as f64 / m as f64).collect();
        DiscretePath::new(samples, params)
    }

    pub fn constant(x: &ProjPoint, samples: usize) -> Result<Self, GeometryError> {
        DiscretePath::uniform(vec![x.clone(); samples.max(2)])
    }

    pub fn samples(&self) -> &[ProjPoint] {
        &self.samples
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn start(&self) -> &ProjPoint {
        &self.samples[0]
    }

    pub fn end(&self) -> &ProjPoint {
        &self.samples[self.samples.len() - 1]
    }

    pub fn n(&self) -> usize {
        self.samples[0].n()
    }

    fn steps(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.samples
            .windows(2)
            .zip(self.params.windows(2))
            .map(|(p, t)| (fs_distance(&p[0], &p[1]), t[1] - t[0]))
    }

    /// `sum d_i^2 / dt_i`, the energy of the piecewise geodesic.
    pub fn energy(&self) -> f64 {
        self.steps().map(|(d, dt)| d * d / dt).sum()
    }

    /// `F = sqrt(E)`, never smaller than the length.
    pub fn norm(&self) -> f64 {
        self.energy().sqrt()
    }

    pub fn length(&self) -> f64 {
        self.steps().map(|(d, _)| d).sum()
    }

    /// Time reversal `t -> 1 - t`.
    pub fn reversed(&self) -> DiscretePath {
        DiscretePath {
            samples: self.samples.iter().rev().cloned().collect(),
            params: self.params.iter().rev().map(|t| 1.0 - t).collect(),
        }
    }
}

/// Result of [`concat_min`]: the joined path and the junction parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct Concatenation {
    pub path: DiscretePath,
    pub split: f64,
    /// Both inputs were constant, so the split 1/2 is a convention.
    pub degenerate: bool,
}

/// Minimum-energy concatenation: `gamma` runs on `[0, s]`, `delta` on
/// `[s, 1]` with `s = F(gamma) / (F(gamma) + F(delta))`, so that norms add.
/// A constant factor next to a non-constant one is dropped.
pub fn concat_min(gamma: &DiscretePath, delta: &DiscretePath) -> Result<Concatenation, GeometryError> {
    if gamma.n() != delta.n() {
        return Err(GeometryError::DimensionMismatch(gamma.n(), delta.n()));
    }
    if gamma.end() != delta.start() {
        return Err(GeometryError::EndpointMismatch(fs_distance(gamma.end(), delta.start())));
    }
    let (fg, fd) = (gamma.norm(), delta.norm());
    if fg == 0.0 && fd > 0.0 {
        return Ok(Concatenation { path: delta.clone(), split: 0.0, degenerate: false });
    }
    if fd == 0.0 && fg > 0.0 {
        return Ok(Concatenation { path: gamma.clone(), split: 1.0, degenerate: false });
    }
    let degenerate = fg == 0.0 && fd == 0.0;
    let s = if degenerate { 0.5 } else { fg / (fg + fd) };
    let mut samples = gamma.samples.clone();
    samples.extend(delta.samples[1..].iter().cloned());
    let mut params: Vec<f64> = gamma.params.iter().map(|t| s * t).collect();
    let last = params.len() - 1;
    params[last] = s;
    params.extend(delta.params[1..].iter().map(|t| s + (1.0 - s) * t));
    let path = DiscretePath::new(samples, params)?;
    Ok(Concatenation { path, split: s, degenerate })
}

/// Vertical half-circle `C_{x,v,θ}` from a real point `x` to
/// `x' = exp_x(-θ I v)` in the upper hemisphere of the complex line through
/// `x` and `v`, sampled at `samples` points with constant speed.
///
/// The line `span(x, u)`, `v = i u`, is modelled as the sphere of radius 1/2
/// via `[a x + b u] -> (|a|^2 - |b|^2, 2 Re(conj(a) b), 2 Im(conj(a) b)) / 2`;
/// real points lie on the equator and the upper hemisphere is `z >= 0`.
pub fn half_circle(v: &TangentVector, theta: f64, samples: usize) -> Result<DiscretePath, GeometryError> {
    if !theta.is_finite() {
        return Err(GeometryError::InvalidAngle(theta));
    }
    v.require_unit()?;
    let (x, u) = v.as_normal()?;
    let theta = theta.rem_euclid(std::f64::consts::PI);
    let x_pt = ProjPoint { rep: x.map(Complex64::from) };
    let samples = samples.max(2);
    if theta.sin().abs() < 1e-15 {
        return DiscretePath::constant(&x_pt, samples);
    }
    let p0 = [0.5, 0.0, 0.0];
    let p1 = [0.5 * (2.0 * theta).cos(), 0.5 * (2.0 * theta).sin(), 0.0];
    let mid = [(p0[0] + p1[0]) / 2.0, (p0[1] + p1[1]) / 2.0, 0.0];
    let chord = ((p1[0] - p0[0]).powi(2) + (p1[1] - p0[1]).powi(2)).sqrt();
    let r = chord / 2.0;
    let e = [(p1[0] - p0[0]) / chord, (p1[1] - p0[1]) / chord];
    let xc = x.map(Complex64::from);
    let uc = u.map(Complex64::from);
    let mut pts = Vec::with_capacity(samples);
    for i in 0..samples {
        let t = i as f64 / (samples - 1) as f64;
        let (c, s) = ((std::f64::consts::PI * t).cos(), (std::f64::consts::PI * t).sin());
        let q = [mid[0] - r * c * e[0], mid[1] - r * c * e[1], r * s];
        // inverse Hopf map: 2q = (cos α, sin α cos β, sin α sin β)
        let alpha = (2.0 * q[0]).clamp(-1.0, 1.0).acos();
        let beta = q[2].atan2(q[1]);
        let a = Complex64::from((alpha / 2.0).cos());
        let b = Complex64::from_polar((alpha / 2.0).sin(), beta);
        pts.push(ProjPoint::new(&xc * a + &uc * b)?);
    }
    let last = pts.len() - 1;
    // pin the endpoints to their exact real representatives
    pts[0] = x_pt;
    pts[last] = ProjPoint::new((&x * theta.cos() + &u * theta.sin()).map(Complex64::from))?;
    DiscretePath::uniform(pts)
}

/// Number of real parameters of the sampler for `Y_k`: a point of RP^n and
/// `k` pairs (unit normal, angle).
pub fn yk_parameter_count(n: usize, k: usize) -> usize {
    n + k * ((n - 1) + 1)
}

/// Default sample count per half-circle.
pub const HALF_CIRCLE_SAMPLES: usize = 33;

/// Random point of `Y_k`: `k` vertical half-circles with matching endpoints,
/// joined by [`concat_min`].
pub fn sample_yk<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Result<DiscretePath, GeometryError> {
    let mut x = ProjPoint::random_real(n, rng);
    let mut acc: Option<DiscretePath> = None;
    for _ in 0..k.max(1) {
        let v = TangentVector::random_normal(&x, rng)?;
        let theta = rng.random_range(0.0..std::f64::consts::PI);
        let c = half_circle(&v, theta, HALF_CIRCLE_SAMPLES)?;
        x = c.end().clone();
        acc = Some(match acc {
            None => c,
            Some(a) => concat_min(&a, &c)?.path,
        });
    }
    Ok(acc.expect("at least one half-circle"))
}

/// The critical geodesic of length `kπ/2` as a point of `Y_k`: all angles
/// π/2, with `x_{j+1} = u_j` and `u_{j+1} = x_j`.
pub fn critical_yk(x: &[f64], u: &[f64], k: usize) -> Result<DiscretePath, GeometryError> {
    let (mut xj, mut uj) = (x.to_vec(), u.to_vec());
    let mut acc: Option<DiscretePath> = None;
    for _ in 0..k.max(1) {
        let v = TangentVector::normal(&ProjPoint::from_real(&xj)?, &uj)?;
        let c = half_circle(&v, std::f64::consts::FRAC_PI_2, HALF_CIRCLE_SAMPLES)?;
        acc = Some(match acc {
            None => c,
            Some(a) => concat_min(&a, &c)?.path,
        });
        std::mem::swap(&mut xj, &mut uj);
    }
    Ok(acc.expect("at least one half-circle"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HopfField {
    J,
    J1,
    J2,
    J3,
}

/// Hopf fields on `S^n ⊂ R^(n+1)`: `J` (n odd) pairs coordinates
/// `(x0, x1) -> (-x1, x0)`; for `n ≡ 3 mod 4`, `J1, J2, J3` are left
/// multiplication by `i, j, k` on blocks of four coordinates.
pub fn hopf_vector(x: &ProjPoint, field: HopfField) -> Result<TangentVector, GeometryError> {
    let n = x.n();
    let r = x.real_rep()?;
    let (ok, requirement) = match field {
        HopfField::J => (n % 2 == 1, "odd"),
        _ => (n % 4 == 3, "congruent to 3 mod 4"),
    };
    if !ok {
        return Err(GeometryError::Parity { n, field, requirement });
    }
    let mut u = DVector::zeros(n + 1);
    match field {
        HopfField::J => {
            for b in (0..=n).step_by(2) {
                u[b] = -r[b + 1];
                u[b + 1] = r[b];
            }
        }
        _ => {
            for b in (0..=n).step_by(4) {
                let q = [r[b], r[b + 1], r[b + 2], r[b + 3]];
                let out = match field {
                    HopfField::J1 => [-q[1], q[0], -q[3], q[2]],
                    HopfField::J2 => [-q[2], q[3], q[0], -q[1]],
                    _ => [-q[3], -q[2], q[1], q[0]],
                };
                u.rows_mut(b, 4).copy_from_slice(&out);
            }
        }
    }
    TangentVector::real(x, u.as_slice())
}

/// Normal section `x -> i J x`.
pub fn hopf_normal(x: &ProjPoint) -> Result<TangentVector, GeometryError> {
    Ok(hopf_vector(x, HopfField::J)?.times_i())
}
