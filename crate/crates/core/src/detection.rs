//! Detection functions λ₁..λ₄.
//!
//! For the perturbation of degree `n` the divergence is
//! `(n+2)(ux^n + vy^n) − 3(ux² + vy²) − 2λ`, and the value of λ at which
//! its integral over the region bounded by an orbit vanishes is
//!
//! ```text
//!          ∫ [R^{n+2} g(θ) − ¾ R⁴ g₁(θ)] dθ
//! λ(h) = ───────────────────────────────────,   g = u cos^nθ + v sin^nθ,
//!                     ∫ R² dθ                     g₁ = u cos²θ + v sin²θ,
//! ```
//!
//! with `R²` the squared radius of the bounding curve (or the difference
//! of the two branches for the annular families). Because λ is linear in
//! `(u, v)` a sample stores the two coefficients `(cu, cv)` once and
//! serves every `(u, v)`.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hamiltonian::{Family, Hamiltonian};
use crate::params::SystemParams;
use crate::poly::{Monomial, Polynomial};
use crate::quadrature::{integrate_sqrt_endpoints, SqrtEndpoints};

/// Default absolute/relative tolerance of every detection integral.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Energies closer than this to a critical level bounding a family are
/// refused.
pub const GUARD: f64 = 1e-6;

/// Offset of sampling-grid endpoints from the critical levels.
pub const GRID_EDGE: f64 = 2.0 * GUARD;

/// Closed-form divergence `(n+2)(ux^n + vy^n) − 3(ux² + vy²) − 2λ` of the
/// ε-part of the field.
pub fn divergence(x: f64, y: f64, params: &SystemParams) -> f64 {
    let n = params.n as i32;
    let (u, v) = (params.u, params.v);
    (params.n as f64 + 2.0) * (u * x.powi(n) + v * y.powi(n))
        - 3.0 * (u * x * x + v * y * y)
        - 2.0 * params.lambda0
}

/// The ε-parts `(P, Q)` of the field as polynomials, including the
/// `b·x^μ y^β` coupling terms and the `−λ` shift.
pub fn perturbation(params: &SystemParams) -> (Polynomial, Polynomial) {
    let SystemParams {
        b,
        u,
        v,
        lambda0,
        n,
        mu,
        beta,
        ..
    } = *params;
    let coupling = b * (beta as f64 + 1.0) / (mu as f64 + 1.0);
    let p = Polynomial::new(vec![
        Monomial::new(u, n + 1, 0),
        Monomial::new(v, 1, n),
        Monomial::new(-coupling, mu + 1, beta),
        Monomial::new(-u, 3, 0),
        Monomial::new(-lambda0, 1, 0),
    ]);
    let q = Polynomial::new(vec![
        Monomial::new(u, n, 1),
        Monomial::new(v, 0, n + 1),
        Monomial::new(b, mu, beta + 1),
        Monomial::new(-v, 0, 3),
        Monomial::new(-lambda0, 0, 1),
    ]);
    (p, q)
}

/// `∂P/∂x + ∂Q/∂y` by term-wise differentiation of [`perturbation`]. The
/// coupling terms cancel, so this agrees with [`divergence`].
pub fn divergence_by_differentiation(x: f64, y: f64, params: &SystemParams) -> f64 {
    let (p, q) = perturbation(params);
    (p.d_dx() + q.d_dy()).eval(x, y)
}

pub fn g_theta(theta: f64, n: u32, u: f64, v: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    u * c.powi(n as i32) + v * s.powi(n as i32)
}

pub fn g1_theta(theta: f64, u: f64, v: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    u * c * c + v * s * s
}

/// λ(h) = cu·u + cv·v at one energy, plus the area of one orbit's region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionSample {
    pub h: f64,
    pub cu: f64,
    pub cv: f64,
    pub area: f64,
}

impl DetectionSample {
    pub fn lambda(&self, u: f64, v: f64) -> f64 {
        self.cu * u + self.cv * v
    }
}

/// Evaluates detection samples for one `(a, b, n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Detector {
    pub ham: Hamiltonian,
    pub n: u32,
    pub tol: f64,
}

impl Detector {
    pub fn new(params: &SystemParams, tol: f64) -> Self {
        Self {
            ham: params.hamiltonian(),
            n: params.n,
            tol,
        }
    }

    /// Open interval of admissible energies: the family range shrunk by
    /// the guard band.
    pub fn admissible(&self, family: Family) -> (f64, f64) {
        let (lo, hi) = self.ham.family_range(family);
        (lo + GUARD, hi - GUARD)
    }

    pub fn check_range(&self, family: Family, h: f64) -> Result<()> {
        let (lo, hi) = self.ham.family_range(family);
        // tiny slack so that grid points placed exactly GUARD away pass
        let g = GUARD * (1.0 - 1e-6);
        if !h.is_finite() || h <= lo + g || h >= hi - g {
            return Err(Error::OutOfRange { family, h, lo, hi });
        }
        Ok(())
    }

    /// `(p(θ), r₊², r₋²)` with the discriminant clamped at zero.
    #[inline]
    fn radii(&self, theta: f64, h: f64) -> (f64, f64) {
        let p = self.ham.p(theta);
        let s = (1.0 - h * p).max(0.0).sqrt();
        ((1.0 + s) / p, h / (1.0 + s))
    }

    /// Numerator for `(u, v) = (1, 0)` and `(0, 1)`, and the denominator.
    fn moments(&self, family: Family, h: f64) -> Result<[f64; 3]> {
        let k = (self.n / 2 + 1) as i32;
        let n = self.n as i32;
        let integrand = |which: usize, r2: f64, theta: f64| -> f64 {
            match which {
                0 | 1 => {
                    let (s, c) = theta.sin_cos();
                    let (t, t2) = if which == 0 {
                        (c.powi(n), c * c)
                    } else {
                        (s.powi(n), s * s)
                    };
                    r2.powi(k) * t - 0.75 * r2 * r2 * t2
                }
                _ => r2,
            }
        };
        // annular families take the difference of the two branches
        let annular = |which: usize, theta: f64| -> f64 {
            let (outer, inner) = self.radii(theta, h);
            match which {
                0 | 1 => {
                    let (s, c) = theta.sin_cos();
                    let (t, t2) = if which == 0 {
                        (c.powi(n), c * c)
                    } else {
                        (s.powi(n), s * s)
                    };
                    (outer.powi(k) - inner.powi(k)) * t
                        - 0.75 * (outer * outer - inner * inner) * t2
                }
                _ => outer - inner,
            }
        };
        let pieces: Vec<(f64, f64, SqrtEndpoints)> = match family {
            Family::Gamma1 | Family::Gamma2 => (0..4)
                .map(|q| {
                    (
                        q as f64 * FRAC_PI_2,
                        (q + 1) as f64 * FRAC_PI_2,
                        SqrtEndpoints::NONE,
                    )
                })
                .collect(),
            Family::Gamma3 => {
                let t2 = self.ham.theta_bounds(h)?.theta2;
                vec![
                    (-t2, 0.0, SqrtEndpoints::LOWER),
                    (0.0, t2, SqrtEndpoints::UPPER),
                ]
            }
            Family::Gamma4 => {
                let b = self.ham.theta_bounds(h)?;
                vec![(b.theta1, b.theta2, SqrtEndpoints::BOTH)]
            }
        };
        let mut out = [0.0; 3];
        for (which, slot) in out.iter_mut().enumerate() {
            for &(lo, hi, ends) in &pieces {
                let r = match family {
                    Family::Gamma1 => integrate_sqrt_endpoints(
                        |t| integrand(which, self.radii(t, h).0, t),
                        lo,
                        hi,
                        ends,
                        self.tol,
                    )?,
                    Family::Gamma2 => integrate_sqrt_endpoints(
                        |t| integrand(which, self.radii(t, h).1, t),
                        lo,
                        hi,
                        ends,
                        self.tol,
                    )?,
                    Family::Gamma3 | Family::Gamma4 => {
                        integrate_sqrt_endpoints(|t| annular(which, t), lo, hi, ends, self.tol)?
                    }
                };
                *slot += r.value;
            }
        }
        Ok(out)
    }

    /// λ_j(h) as the coefficient pair `(cu, cv)`.
    pub fn sample(&self, family: Family, h: f64) -> Result<DetectionSample> {
        self.check_range(family, h)?;
        let [nu, nv, den] = self.moments(family, h)?;
        if !(den > 0.0) {
            return Err(Error::Domain(format!(
                "empty region for {family} at h = {h}"
            )));
        }
        Ok(DetectionSample {
            h,
            cu: nu / den,
            cv: nv / den,
            area: 0.5 * den,
        })
    }

    /// λ₄ integrated over the mirror sector `(−θ2, −θ1)` (orbit around A2).
    pub fn sample_gamma4_mirror(&self, h: f64) -> Result<DetectionSample> {
        self.check_range(Family::Gamma4, h)?;
        let b = self.ham.theta_bounds(h)?;
        let k = (self.n / 2 + 1) as i32;
        let n = self.n as i32;
        let mut out = [0.0; 3];
        for (which, slot) in out.iter_mut().enumerate() {
            let f = |theta: f64| {
                let (outer, inner) = self.radii(theta, h);
                let (s, c) = theta.sin_cos();
                match which {
                    0 => {
                        (outer.powi(k) - inner.powi(k)) * c.powi(n)
                            - 0.75 * (outer * outer - inner * inner) * c * c
                    }
                    1 => {
                        (outer.powi(k) - inner.powi(k)) * s.powi(n)
                            - 0.75 * (outer * outer - inner * inner) * s * s
                    }
                    _ => outer - inner,
                }
            };
            *slot =
                integrate_sqrt_endpoints(f, -b.theta2, -b.theta1, SqrtEndpoints::BOTH, self.tol)?
                    .value;
        }
        Ok(DetectionSample {
            h,
            cu: out[0] / out[2],
            cv: out[1] / out[2],
            area: 0.5 * out[2],
        })
    }
}

/// λ_j(h) at the default tolerance.
pub fn lambda_j(family: Family, h: f64, params: &SystemParams) -> Result<DetectionSample> {
    Detector::new(params, DEFAULT_TOL).sample(family, h)
}

/// `A(h) = ∫∫ div = 2·area·(λ(h) − λ0)` over one orbit's region.
pub fn abelian_integral(family: Family, h: f64, params: &SystemParams) -> Result<f64> {
    abelian_integral_with(&Detector::new(params, DEFAULT_TOL), family, h, params)
}

pub fn abelian_integral_with(
    det: &Detector,
    family: Family,
    h: f64,
    params: &SystemParams,
) -> Result<f64> {
    let s = det.sample(family, h)?;
    Ok(2.0 * s.area * (s.lambda(params.u, params.v) - params.lambda0))
}

/// Sampled detection curve with a piecewise-cubic Hermite interpolant.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionCurve {
    pub family: Family,
    pub detector: Detector,
    samples: Vec<DetectionSample>,
    /// Interpolant slopes of `(cu, cv)` at the samples.
    slopes: Vec<(f64, f64)>,
}

impl DetectionCurve {
    pub fn from_samples(
        family: Family,
        detector: Detector,
        samples: Vec<DetectionSample>,
    ) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Domain(
                "detection curve needs at least one sample".into(),
            ));
        }
        if samples.windows(2).any(|w| !(w[0].h < w[1].h)) {
            return Err(Error::Domain(
                "detection curve samples must be strictly increasing in h".into(),
            ));
        }
        let mut c = Self {
            family,
            detector,
            samples,
            slopes: Vec::new(),
        };
        c.update_slopes();
        Ok(c)
    }

    pub fn samples(&self) -> &[DetectionSample] {
        &self.samples
    }

    pub fn h_span(&self) -> (f64, f64) {
        (self.samples[0].h, self.samples[self.samples.len() - 1].h)
    }

    fn update_slopes(&mut self) {
        let s = &self.samples;
        let m = s.len();
        self.slopes = (0..m)
            .map(|i| {
                let d = |f: fn(&DetectionSample) -> f64| three_point_slope(s, i, f);
                (d(|x| x.cu), d(|x| x.cv))
            })
            .collect();
    }

    /// Inserts samples, keeping the order in `h`; duplicates are ignored.
    pub fn insert(&mut self, new: impl IntoIterator<Item = DetectionSample>) {
        for sample in new {
            match self.samples.binary_search_by(|s| s.h.total_cmp(&sample.h)) {
                Ok(_) => {}
                Err(pos) => self.samples.insert(pos, sample),
            }
        }
        self.update_slopes();
    }

    fn segment(&self, h: f64) -> usize {
        let i = self.samples.partition_point(|s| s.h <= h);
        i.clamp(1, self.samples.len() - 1) - 1
    }

    /// Interpolated `(cu, dcu/dh)` and `(cv, dcv/dh)`.
    pub fn interpolate(&self, h: f64) -> ((f64, f64), (f64, f64)) {
        if self.samples.len() == 1 {
            let s = self.samples[0];
            return ((s.cu, s.cv), (0.0, 0.0));
        }
        let i = self.segment(h);
        let (s0, s1) = (self.samples[i], self.samples[i + 1]);
        let (d0, d1) = (self.slopes[i], self.slopes[i + 1]);
        let w = s1.h - s0.h;
        let t = (h - s0.h) / w;
        (
            hermite(t, w, s0.cu, s1.cu, d0.0, d1.0),
            hermite(t, w, s0.cv, s1.cv, d0.1, d1.1),
        )
    }

    pub fn lambda_at(&self, h: f64, u: f64, v: f64) -> f64 {
        let ((cu, _), (cv, _)) = self.interpolate(h);
        cu * u + cv * v
    }

    pub fn slope_at(&self, h: f64, u: f64, v: f64) -> f64 {
        let ((_, du), (_, dv)) = self.interpolate(h);
        du * u + dv * v
    }

    /// λ at each sample for fixed `(u, v)`.
    pub fn lambdas(&self, u: f64, v: f64) -> Vec<f64> {
        self.samples.iter().map(|s| s.lambda(u, v)).collect()
    }
}

/// Cubic Hermite on one segment: value and derivative at `t ∈ [0, 1]`.
fn hermite(t: f64, w: f64, y0: f64, y1: f64, d0: f64, d1: f64) -> (f64, f64) {
    let t2 = t * t;
    let t3 = t2 * t;
    let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    let h10 = t3 - 2.0 * t2 + t;
    let h01 = -2.0 * t3 + 3.0 * t2;
    let h11 = t3 - t2;
    let value = h00 * y0 + h10 * w * d0 + h01 * y1 + h11 * w * d1;
    let dh00 = 6.0 * t2 - 6.0 * t;
    let dh10 = 3.0 * t2 - 4.0 * t + 1.0;
    let dh01 = -6.0 * t2 + 6.0 * t;
    let dh11 = 3.0 * t2 - 2.0 * t;
    let deriv = (dh00 * y0 + dh01 * y1) / w + dh10 * d0 + dh11 * d1;
    (value, deriv)
}

/// Second-order finite-difference slope on a non-uniform grid.
fn three_point_slope(s: &[DetectionSample], i: usize, f: fn(&DetectionSample) -> f64) -> f64 {
    let m = s.len();
    if m < 2 {
        return 0.0;
    }
    if m == 2 {
        return (f(&s[1]) - f(&s[0])) / (s[1].h - s[0].h);
    }
    let (a, b, c, at) = if i == 0 {
        (0, 1, 2, 0)
    } else if i == m - 1 {
        (m - 3, m - 2, m - 1, 2)
    } else {
        (i - 1, i, i + 1, 1)
    };
    let (x0, x1, x2) = (s[a].h, s[b].h, s[c].h);
    let (y0, y1, y2) = (f(&s[a]), f(&s[b]), f(&s[c]));
    let x = [x0, x1, x2][at];
    // derivative of the interpolating parabola at x
    y0 * (2.0 * x - x1 - x2) / ((x0 - x1) * (x0 - x2))
        + y1 * (2.0 * x - x0 - x2) / ((x1 - x0) * (x1 - x2))
        + y2 * (2.0 * x - x0 - x1) / ((x2 - x0) * (x2 - x1))
}

/// Samples λ_j on `grid` (evaluated in parallel, ordered by h).
pub fn detection_curve(
    family: Family,
    grid: &[f64],
    params: &SystemParams,
) -> Result<DetectionCurve> {
    detection_curve_with(Detector::new(params, DEFAULT_TOL), family, grid)
}

pub fn detection_curve_with(
    detector: Detector,
    family: Family,
    grid: &[f64],
) -> Result<DetectionCurve> {
    if grid.is_empty() {
        return Err(Error::Domain("empty energy grid".into()));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Domain(
            "energy grid must be strictly increasing".into(),
        ));
    }
    for &h in grid {
        detector.check_range(family, h)?;
    }
    let samples = grid
        .par_iter()
        .map(|&h| {
            detector.sample(family, h).map_err(|e| Error::AtEnergy {
                h,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    DetectionCurve::from_samples(family, detector, samples)
}

fn snap(h: f64) -> f64 {
    (h * 1e12).round() / 1e12
}

/// Grid of the printed tables, expressed through the critical energies so
/// that it carries over to any `(a, b)`. For `a = 1/3, b = 1/2` this gives
/// Γ1: −2(0.1)2, Γ2: 0.01(0.1)1.91, Γ3: 2(0.02)3, Γ4: 3(0.04)4 then
/// 4.2(0.2)8.2, with endpoints on critical levels moved inside by
/// [`GRID_EDGE`].
pub fn table_grid(family: Family, ham: &Hamiltonian) -> Vec<f64> {
    let e = ham.critical_energies();
    let (hb, ha, hc) = (e.heteroclinic, e.homoclinic, e.centers);
    let mut g: Vec<f64> = match family {
        Family::Gamma1 => (0..=40).map(|k| snap(-hb + k as f64 * hb / 20.0)).collect(),
        Family::Gamma2 => (0..20)
            .map(|k| snap((k as f64 + 0.1) * hb / 20.0))
            .collect(),
        Family::Gamma3 => (0..=50)
            .map(|k| snap(hb + k as f64 * (ha - hb) / 50.0))
            .collect(),
        Family::Gamma4 => {
            let span = hc - ha;
            let fine = (0..=25).map(|k| snap(ha + k as f64 * span / 135.0));
            let coarse = (1..=21).map(|j| snap(ha + 25.0 * span / 135.0 + j as f64 * span / 27.0));
            fine.chain(coarse).collect()
        }
    };
    let (lo, hi) = ham.family_range(family);
    for h in g.iter_mut() {
        if (*h - lo).abs() < GRID_EDGE {
            *h = lo + GRID_EDGE;
        }
        if (*h - hi).abs() < GRID_EDGE {
            *h = hi - GRID_EDGE;
        }
    }
    g
}

/// Table grid extended towards the ends of each family's range, used for
/// band enumeration.
pub fn band_grid(family: Family, ham: &Hamiltonian) -> Vec<f64> {
    let e = ham.critical_energies();
    let mut g = table_grid(family, ham);
    match family {
        Family::Gamma2 => {
            g.insert(0, e.origin + GRID_EDGE);
            g.push(e.heteroclinic - GRID_EDGE);
        }
        Family::Gamma4 => {
            let span = e.centers - e.homoclinic;
            g.push(snap(e.centers - span / 54.0));
            g.push(e.centers - GRID_EDGE);
        }
        _ => {}
    }
    g.dedup();
    g
}
