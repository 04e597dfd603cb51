//! Seeded randomized checks of the geometric identities. Trials run in
//! parallel; trial `i` draws from its own ChaCha stream of the root seed, so
//! results do not depend on scheduling.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    concat_min, critical_yk, fs_distance, geodesic, half_circle, hopf_vector, inner, sample_yk, yk_parameter_count,
    DiscretePath, GeometryError, HopfField, ProjPoint, TangentVector, HALF_CIRCLE_SAMPLES,
};

/// Largest observed deviation against a strict bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericCheck {
    pub name: String,
    pub trials: usize,
    pub worst: f64,
    pub bound: f64,
    pub passed: bool,
}

impl NumericCheck {
    pub fn new(name: impl Into<String>, trials: usize, worst: f64, bound: f64) -> Self {
        NumericCheck { name: name.into(), trials, worst, bound, passed: worst < bound }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometryReport {
    pub name: String,
    pub seed: u64,
    pub checks: Vec<NumericCheck>,
}

impl GeometryReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Runs `f(trial, rng)` for each trial in parallel with a per-trial RNG.
pub fn run_trials<T, F>(trials: usize, seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, &mut ChaCha8Rng) -> T + Sync,
{
    (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            f(i, &mut rng)
        })
        .collect()
}

fn worst<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

fn collect<T>(results: Vec<Result<T, GeometryError>>) -> Result<Vec<T>, GeometryError> {
    results.into_iter().collect()
}

/// Period π, distances `arccos|cos s|` from the start, and the return to
/// RP^n at `s = jπ/2` (distance 0 for even `j`, π/2 for odd `j`).
pub fn geodesic_check(n: usize, trials: usize, seed: u64) -> Result<GeometryReport, GeometryError> {
    let rows = collect(run_trials(trials, seed, |_, rng| {
        let x = ProjPoint::random_real(n, rng);
        let v = TangentVector::random_normal(&x, rng)?;
        let s = rng.random_range(-2.0 * PI..2.0 * PI);
        let period = fs_distance(&geodesic(&v, s)?, &geodesic(&v, s + PI)?);
        let formula = (fs_distance(&x, &geodesic(&v, s)?) - s.cos().abs().acos()).abs();
        let mut antipode: f64 = 0.0;
        for j in 0..=4 {
            let expected = if j % 2 == 0 { 0.0 } else { FRAC_PI_2 };
            let p = geodesic(&v, j as f64 * FRAC_PI_2)?;
            antipode = antipode.max((fs_distance(&x, &p) - expected).abs());
            antipode = antipode.max(p.real_defect());
        }
        Ok([period, formula, antipode])
    }))?;
    Ok(GeometryReport {
        name: format!("geodesics in CP^{n}"),
        seed,
        checks: vec![
            NumericCheck::new("period pi", trials, worst(rows.iter().map(|r| r[0])), 1e-9),
            NumericCheck::new("distance arccos|cos s|", trials, worst(rows.iter().map(|r| r[1])), 1e-9),
            NumericCheck::new("antipodes at j*pi/2", trials, worst(rows.iter().map(|r| r[2])), 1e-9),
        ],
    })
}

fn off_line(p: &ProjPoint, x: &ProjPoint, u: &ProjPoint) -> f64 {
    let z = p.rep();
    (z - x.rep() * inner(x.rep(), z) - u.rep() * inner(u.rep(), z)).norm()
}

/// Vertical half-circles: endpoints against `exp_x(-θ I v)`, samples on the
/// complex line, and `F <= π/2` with equality at `θ = π/2`.
pub fn halfcircle_check(n: usize, trials: usize, seed: u64) -> Result<GeometryReport, GeometryError> {
    let rows = collect(run_trials(trials, seed, |_, rng| {
        let x = ProjPoint::random_real(n, rng);
        let v = TangentVector::random_normal(&x, rng)?;
        let theta = rng.random_range(0.0..PI);
        let c = half_circle(&v, theta, HALF_CIRCLE_SAMPLES)?;
        let target = geodesic(&v.times_i().scaled(-1.0), theta)?;
        let endpoints = fs_distance(c.start(), &x).max(fs_distance(c.end(), &target));
        let (_, u) = v.as_normal()?;
        let u_pt = ProjPoint::from_real(u.as_slice())?;
        let line = worst(c.samples().iter().map(|p| off_line(p, &x, &u_pt)));
        let excess = c.norm() - FRAC_PI_2;
        let critical = (half_circle(&v, FRAC_PI_2, HALF_CIRCLE_SAMPLES)?.norm() - FRAC_PI_2).abs();
        let flat = half_circle(&v, 0.0, HALF_CIRCLE_SAMPLES)?.norm();
        Ok([endpoints, line, excess, critical, flat])
    }))?;
    Ok(GeometryReport {
        name: format!("vertical half-circles in CP^{n}"),
        seed,
        checks: vec![
            NumericCheck::new("endpoints = x, exp_x(-theta I v)", trials, worst(rows.iter().map(|r| r[0])), 1e-9),
            NumericCheck::new("samples on the complex line", trials, worst(rows.iter().map(|r| r[1])), 1e-9),
            NumericCheck::new("F - pi/2", trials, worst(rows.iter().map(|r| r[2])), 1e-9),
            NumericCheck::new("|F - pi/2| at theta = pi/2", trials, worst(rows.iter().map(|r| r[3])), 1e-6),
            NumericCheck::new("F at theta = 0", trials, worst(rows.iter().map(|r| r[4])), 1e-12),
            theta_sweep(n)?,
        ],
    })
}

/// Grid search for the angle maximizing `F(C_{x,v,θ})`; reports the distance
/// of the argmax from π/2 against the grid spacing.
fn theta_sweep(n: usize) -> Result<NumericCheck, GeometryError> {
    const STEPS: usize = 180;
    let x = ProjPoint::basis(n, 0);
    let mut u = vec![0.0; n + 1];
    u[1] = 1.0;
    let v = TangentVector::normal(&x, &u)?;
    let mut best = (0.0, f64::NEG_INFINITY);
    for j in 0..STEPS {
        let theta = PI * j as f64 / STEPS as f64;
        let f = half_circle(&v, theta, HALF_CIRCLE_SAMPLES)?.norm();
        if f > best.1 {
            best = (theta, f);
        }
    }
    let spacing = PI / STEPS as f64;
    Ok(NumericCheck::new("argmax of F over theta - pi/2", STEPS, (best.0 - FRAC_PI_2).abs(), spacing))
}

/// Samples of `Y_k`: `F <= kπ/2`, equality on the critical geodesic, and the
/// parameter count `(k+1)n`.
pub fn yk_check(n: usize, k: usize, trials: usize, seed: u64) -> Result<GeometryReport, GeometryError> {
    let bound = k as f64 * FRAC_PI_2;
    let excess = worst(collect(run_trials(trials, seed, |_, rng| Ok(sample_yk(n, k, rng)?.norm() - bound)))?);
    let mut x = vec![0.0; n + 1];
    let mut u = vec![0.0; n + 1];
    x[0] = 1.0;
    u[n] = 1.0;
    let critical = (critical_yk(&x, &u, k)?.norm() - bound).abs();
    let dof = yk_parameter_count(n, k) as f64;
    Ok(GeometryReport {
        name: format!("Y_{k} in CP^{n}"),
        seed,
        checks: vec![
            NumericCheck::new(format!("F - {k}pi/2"), trials, excess, 1e-9),
            NumericCheck::new(format!("|F - {k}pi/2| on the critical geodesic"), 1, critical, 1e-6),
            NumericCheck::new("|parameter count - (k+1)n|", 1, (dof - ((k + 1) * n) as f64).abs(), 0.5),
        ],
    })
}

/// `Jx ⟂ x` with `|Jx| = 1` for odd `n`; for `n ≡ 3 mod 4`, the Gram matrix of
/// `(J1 x, J2 x, J3 x)` is the identity and each is orthogonal to `x`.
pub fn hopf_check(n: usize, trials: usize, seed: u64) -> Result<GeometryReport, GeometryError> {
    let quaternionic = n % 4 == 3;
    let rows = collect(run_trials(trials, seed, |_, rng| {
        let x = ProjPoint::random_real(n, rng);
        let j = hopf_vector(&x, HopfField::J)?;
        let single = inner(x.rep(), j.vec()).norm().max((j.norm() - 1.0).abs());
        let mut gram: f64 = 0.0;
        if quaternionic {
            let fields = [HopfField::J1, HopfField::J2, HopfField::J3].map(|f| hopf_vector(&x, f));
            let fields = fields.into_iter().collect::<Result<Vec<_>, _>>()?;
            for (a, fa) in fields.iter().enumerate() {
                gram = gram.max(inner(x.rep(), fa.vec()).norm());
                for (b, fb) in fields.iter().enumerate() {
                    let expected = if a == b { 1.0 } else { 0.0 };
                    gram = gram.max((inner(fa.vec(), fb.vec()) - expected).norm());
                }
            }
        }
        Ok([single, gram])
    }))?;
    let mut checks = vec![NumericCheck::new("|<x,Jx>|, |Jx| - 1", trials, worst(rows.iter().map(|r| r[0])), 1e-12)];
    if quaternionic {
        checks.push(NumericCheck::new("Gram(J1x, J2x, J3x) - I", trials, worst(rows.iter().map(|r| r[1])), 1e-10));
    }
    Ok(GeometryReport { name: format!("Hopf fields on S^{n}"), seed, checks })
}

fn random_path<R: Rng + ?Sized>(from: &ProjPoint, to: &ProjPoint, rng: &mut R) -> Result<DiscretePath, GeometryError> {
    let n = from.n();
    let interior = rng.random_range(0..5);
    let mut samples = vec![from.clone()];
    samples.extend((0..interior).map(|_| ProjPoint::random(n, rng)));
    samples.push(to.clone());
    let mut params: Vec<f64> = (0..interior).map(|_| rng.random_range(0.01..0.99)).collect();
    params.sort_by(f64::total_cmp);
    params.dedup();
    if params.len() < interior {
        return DiscretePath::uniform(samples);
    }
    params.insert(0, 0.0);
    params.push(1.0);
    DiscretePath::new(samples, params)
}

/// Norm additivity of [`concat_min`], agreement of the two bracketings of a
/// triple, and invariance of the norm under time reversal, for random paths
/// in CP^1, CP^2, CP^3.
pub fn concat_check(trials: usize, seed: u64) -> Result<GeometryReport, GeometryError> {
    let rows = collect(run_trials(trials, seed, |i, rng| {
        let n = 1 + i % 3;
        let pts: Vec<ProjPoint> = (0..4).map(|_| ProjPoint::random_real(n, rng)).collect();
        let a = random_path(&pts[0], &pts[1], rng)?;
        let b = random_path(&pts[1], &pts[2], rng)?;
        let c = random_path(&pts[2], &pts[3], rng)?;
        let ab = concat_min(&a, &b)?;
        let additivity = (ab.path.norm() - a.norm() - b.norm()).abs();
        let left = concat_min(&ab.path, &c)?.path;
        let right = concat_min(&a, &concat_min(&b, &c)?.path)?.path;
        let breakpoints = if left.params().len() == right.params().len() {
            worst(left.params().iter().zip(right.params()).map(|(s, t)| (s - t).abs()))
        } else {
            f64::INFINITY
        };
        let reversal = (a.reversed().norm() - a.norm()).abs();
        Ok([additivity, breakpoints, reversal])
    }))?;
    Ok(GeometryReport {
        name: "minimum-energy concatenation".into(),
        seed,
        checks: vec![
            NumericCheck::new("|F(c_min(a,b)) - F(a) - F(b)|", trials, worst(rows.iter().map(|r| r[0])), 1e-9),
            NumericCheck::new("associativity of breakpoints", trials, worst(rows.iter().map(|r| r[1])), 1e-9),
            NumericCheck::new("|F(reverse) - F|", trials, worst(rows.iter().map(|r| r[2])), 1e-10),
        ],
    })
}
