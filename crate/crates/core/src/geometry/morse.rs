//! Index and nullity of the critical geodesics of length `kπ/2` through the
//! discrete energy of broken geodesics with `N` segments.
//!
//! Interior points move in charts `ξ -> normalize(p + Σ ξ_j e_j)` built from a
//! complex orthonormal frame of `p^⊥` (2n real directions); the endpoints are
//! held on RP^n by real frames (n directions each).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::{fs_distance, inner, CVec, GeometryError, ProjPoint, I};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Step of the second-order differences for the Hessian.
    pub fd_step: f64,
    /// Step of the central differences for the gradient check.
    pub grad_step: f64,
    /// Largest accepted gradient norm at the critical configuration.
    pub grad_tol: f64,
    /// Eigenvalues with `|λ| <= zero_tol * max|λ|` count as null.
    pub zero_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { fd_step: 1e-4, grad_step: 1e-5, grad_tol: 1e-8, zero_tol: 1e-3 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FrameChoice {
    /// Gram–Schmidt on coordinate vectors.
    Standard,
    /// Gram–Schmidt on Gaussian vectors drawn from the seed.
    Random(u64),
}

/// Expected `(index, nullity)`: `(1 + (k-1)n, 2n-1)` for `k >= 1`, `(0, n)` for constant paths.
pub fn expected_index(n: usize, k: usize) -> (usize, usize) {
    if k == 0 {
        (0, n)
    } else {
        (1 + (k - 1) * n, 2 * n - 1)
    }
}

/// A broken geodesic `x_0, ..., x_N` together with chart frames at each vertex.
#[derive(Debug, Clone)]
pub struct BrokenGeodesicConfig {
    pub n: usize,
    pub k: usize,
    pub segments: usize,
    base: Vec<CVec>,
    frames: Vec<Vec<CVec>>,
}

fn orthonormalize(candidates: impl Iterator<Item = CVec>, against: &[CVec], want: usize) -> Vec<CVec> {
    let mut out: Vec<CVec> = Vec::with_capacity(want);
    for mut v in candidates {
        if out.len() == want {
            break;
        }
        for b in against.iter().chain(out.iter()) {
            let c = inner(b, &v);
            v -= b * c;
        }
        let norm = v.norm();
        if norm > 1e-8 {
            out.push(v / Complex64::from(norm));
        }
    }
    out
}

fn real_vec(v: &DVector<f64>) -> CVec {
    v.map(Complex64::from)
}

fn frame_at(p: &CVec, real: bool, choice: FrameChoice, rng: &mut ChaCha8Rng) -> Vec<CVec> {
    let dim = p.len();
    let n = dim - 1;
    let candidates: Box<dyn Iterator<Item = CVec> + '_> = match choice {
        FrameChoice::Standard => Box::new((0..dim).map(move |i| {
            let mut e = CVec::zeros(dim);
            e[i] = Complex64::from(1.0);
            e
        })),
        FrameChoice::Random(_) if real => {
            Box::new(std::iter::repeat_with(|| real_vec(&DVector::from_fn(dim, |_, _| rng.sample(StandardNormal)))))
        }
        FrameChoice::Random(_) => Box::new(std::iter::repeat_with(|| {
            CVec::from_fn(dim, |_, _| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        })),
    };
    let basis = orthonormalize(candidates, std::slice::from_ref(p), n);
    if real {
        basis
    } else {
        basis.iter().flat_map(|f| [f.clone(), f * I]).collect()
    }
}

impl BrokenGeodesicConfig {
    /// Vertices evenly spaced along `s -> cos(s) x + sin(s) i u`,
    /// `s ∈ [0, kπ/2]`, for real orthonormal `x, u`; constant at `x` when `k = 0`.
    pub fn critical(
        n: usize,
        k: usize,
        segments: usize,
        x: &[f64],
        u: &[f64],
        frames: FrameChoice,
    ) -> Result<Self, GeometryError> {
        let required = (4 * k).max(1);
        if segments < required {
            return Err(GeometryError::TooFewSegments { k, segments, required });
        }
        if x.len() != n + 1 || u.len() != n + 1 {
            return Err(GeometryError::DimensionMismatch(n + 1, x.len().max(u.len())));
        }
        let xv = DVector::from_column_slice(x).normalize();
        let mut uv = DVector::from_column_slice(u);
        uv -= &xv * xv.dot(&uv);
        if uv.norm() < 1e-12 {
            return Err(GeometryError::Degenerate);
        }
        let uv = uv.normalize();
        let length = k as f64 * std::f64::consts::FRAC_PI_2;
        let mut base = Vec::with_capacity(segments + 1);
        for i in 0..=segments {
            let s = length * i as f64 / segments as f64;
            let z = real_vec(&xv) * Complex64::from(s.cos()) + real_vec(&uv) * (I * s.sin());
            base.push(z);
        }
        // endpoints: real representatives
        for idx in [0, segments] {
            let r = ProjPoint::new(base[idx].clone())?.real_rep()?;
            base[idx] = real_vec(&r);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(match frames {
            FrameChoice::Standard => 0,
            FrameChoice::Random(seed) => seed,
        });
        let frames = base
            .iter()
            .enumerate()
            .map(|(i, p)| frame_at(p, i == 0 || i == segments, frames, &mut rng))
            .collect();
        Ok(BrokenGeodesicConfig { n, k, segments, base, frames })
    }

    /// The configuration moved to chart coordinates `xi`, keeping the frames.
    pub fn displaced(&self, xi: &[f64]) -> Self {
        let mut out = self.clone();
        let mut offset = 0;
        for i in 0..=self.segments {
            let m = self.frames[i].len();
            out.base[i] = self.point(i, &xi[offset..offset + m]).rep().clone();
            offset += m;
        }
        out
    }

    /// Number of real chart coordinates, `2nN`.
    pub fn dof(&self) -> usize {
        self.frames.iter().map(Vec::len).sum()
    }

    fn point(&self, i: usize, xi: &[f64]) -> ProjPoint {
        let mut z = self.base[i].clone();
        for (f, c) in self.frames[i].iter().zip(xi) {
            z += f * Complex64::from(*c);
        }
        ProjPoint::new(z).expect("chart image is nonzero near the base point")
    }

    /// `E = N Σ d(x_i, x_{i+1})^2` in chart coordinates.
    pub fn energy(&self, xi: &[f64]) -> f64 {
        let mut offset = 0;
        let mut prev: Option<ProjPoint> = None;
        let mut total = 0.0;
        for i in 0..=self.segments {
            let m = self.frames[i].len();
            let p = self.point(i, &xi[offset..offset + m]);
            offset += m;
            if let Some(q) = &prev {
                total += fs_distance(q, &p).powi(2);
            }
            prev = Some(p);
        }
        self.segments as f64 * total
    }

    pub fn gradient(&self, h: f64) -> DVector<f64> {
        let dof = self.dof();
        let mut xi = vec![0.0; dof];
        DVector::from_fn(dof, |j, _| {
            xi[j] = h;
            let plus = self.energy(&xi);
            xi[j] = -h;
            let minus = self.energy(&xi);
            xi[j] = 0.0;
            (plus - minus) / (2.0 * h)
        })
    }

    pub fn hessian(&self, h: f64) -> DMatrix<f64> {
        let dof = self.dof();
        let mut xi = vec![0.0; dof];
        let e0 = self.energy(&xi);
        let mut m = DMatrix::zeros(dof, dof);
        for a in 0..dof {
            xi[a] = h;
            let plus = self.energy(&xi);
            xi[a] = -h;
            let minus = self.energy(&xi);
            xi[a] = 0.0;
            m[(a, a)] = (plus - 2.0 * e0 + minus) / (h * h);
            for b in 0..a {
                let mut corner = |sa: f64, sb: f64| {
                    xi[a] = sa * h;
                    xi[b] = sb * h;
                    let e = self.energy(&xi);
                    xi[a] = 0.0;
                    xi[b] = 0.0;
                    e
                };
                let v = (corner(1.0, 1.0) - corner(1.0, -1.0) - corner(-1.0, 1.0) + corner(-1.0, -1.0)) / (4.0 * h * h);
                m[(a, b)] = v;
                m[(b, a)] = v;
            }
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexResult {
    pub n: usize,
    pub k: usize,
    pub segments: usize,
    pub index: usize,
    pub nullity: usize,
    pub gradient_norm: f64,
    /// Largest `|λ|`, the reference for the null threshold.
    pub scale: f64,
    /// Smallest `|λ|` outside the null band, to show the separation.
    pub gap: f64,
    pub eigenvalues: Vec<f64>,
}

impl IndexResult {
    pub fn matches_expected(&self) -> bool {
        (self.index, self.nullity) == expected_index(self.n, self.k)
    }
}

/// Refuses non-critical input, then counts negative and null Hessian eigenvalues.
pub fn critical_index_at(config: &BrokenGeodesicConfig, tol: &Tolerances) -> Result<IndexResult, GeometryError> {
    let gradient_norm = config.gradient(tol.grad_step).norm();
    if !(gradient_norm < tol.grad_tol) {
        return Err(GeometryError::NotCritical { norm: gradient_norm, tol: tol.grad_tol });
    }
    let hessian = config.hessian(tol.fd_step);
    let eig = nalgebra::SymmetricEigen::try_new(hessian, f64::EPSILON, 10_000).ok_or(GeometryError::Eigensolve)?;
    let mut eigenvalues: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(f64::total_cmp);
    let scale = eigenvalues.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    let threshold = tol.zero_tol * scale;
    let index = eigenvalues.iter().filter(|l| **l < -threshold).count();
    let nullity = eigenvalues.iter().filter(|l| l.abs() <= threshold).count();
    let gap = eigenvalues.iter().map(|l| l.abs()).filter(|l| *l > threshold).fold(f64::INFINITY, f64::min);
    Ok(IndexResult {
        n: config.n,
        k: config.k,
        segments: config.segments,
        index,
        nullity,
        gradient_norm,
        scale,
        gap,
        eigenvalues,
    })
}

/// Index and nullity at the critical geodesic from `e_0` in direction `i e_1`.
pub fn critical_index(n: usize, k: usize, segments: usize, tol: &Tolerances) -> Result<IndexResult, GeometryError> {
    if n == 0 {
        return Err(GeometryError::DimensionMismatch(2, 1));
    }
    let mut x = vec![0.0; n + 1];
    let mut u = vec![0.0; n + 1];
    x[0] = 1.0;
    u[1] = 1.0;
    let config = BrokenGeodesicConfig::critical(n, k, segments, &x, &u, FrameChoice::Standard)?;
    critical_index_at(&config, tol)
}

/// The same count at a random point of the critical manifold under two
/// independent random chart choices.
pub fn chart_independence(
    n: usize,
    k: usize,
    segments: usize,
    tol: &Tolerances,
    seed: u64,
) -> Result<(IndexResult, IndexResult), GeometryError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = ProjPoint::random_real(n, &mut rng).real_rep()?;
    let mut u = DVector::from_fn(n + 1, |_, _| rng.sample::<f64, _>(StandardNormal));
    u -= &x * x.dot(&u);
    let (s1, s2) = (rng.random(), rng.random());
    let a = BrokenGeodesicConfig::critical(n, k, segments, x.as_slice(), u.as_slice(), FrameChoice::Random(s1))?;
    let b = BrokenGeodesicConfig::critical(n, k, segments, x.as_slice(), u.as_slice(), FrameChoice::Random(s2))?;
    Ok((critical_index_at(&a, tol)?, critical_index_at(&b, tol)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_budget() {
        let tol = Tolerances::default();
        assert!(matches!(
            critical_index(1, 1, 2, &tol),
            Err(GeometryError::TooFewSegments { k: 1, segments: 2, required: 4 })
        ));
    }

    #[test]
    fn dof_count() {
        let c = BrokenGeodesicConfig::critical(2, 1, 8, &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], FrameChoice::Standard).unwrap();
        assert_eq!(c.dof(), 2 * 2 * 8);
        approx::assert_abs_diff_eq!(c.energy(&vec![0.0; c.dof()]), std::f64::consts::FRAC_PI_2.powi(2), epsilon = 1e-12);
    }

    #[test]
    fn circle_case() {
        let r = critical_index(1, 1, 8, &Tolerances::default()).unwrap();
        assert_eq!((r.index, r.nullity), (1, 1), "{r:?}");
    }

    #[test]
    fn constant_paths() {
        let r = critical_index(2, 0, 4, &Tolerances::default()).unwrap();
        assert_eq!((r.index, r.nullity), (0, 2), "{r:?}");
    }

    #[test]
    fn perturbed_configuration_is_refused() {
        let c = BrokenGeodesicConfig::critical(1, 1, 8, &[1.0, 0.0], &[0.0, 1.0], FrameChoice::Standard).unwrap();
        let mut xi = vec![0.0; c.dof()];
        xi[5] = 1e-3;
        let moved = c.displaced(&xi);
        assert!(matches!(critical_index_at(&moved, &Tolerances::default()), Err(GeometryError::NotCritical { .. })));
        assert!(critical_index_at(&c, &Tolerances::default()).is_ok());
    }
}
