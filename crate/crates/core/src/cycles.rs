//! Limit-cycle predictions from the detection curves.
//!
//! A simple root `h0` of `λ_j(h) = λ0` predicts one limit cycle near each
//! orbit of family `j` at energy `h0`; the sign of `λ_j′(h0)` fixes its
//! stability.

use std::fmt;

use rayon::prelude::*;

use crate::detection::{
    band_grid, detection_curve_with, DetectionCurve, DetectionSample, Detector,
};
use crate::error::{Error, Result};
use crate::hamiltonian::{Family, OrbitFamily, Orientation};
use crate::params::SystemParams;
use crate::roots::{bisect, brent, golden_max};

/// Samples closer than this (relative to `max(1, |λ0|)`) to `λ0` count as
/// touching it.
pub const ZERO_TOL: f64 = 1e-9;

/// Roots closer than this to the edge of the admissible interval are
/// flagged as unreliable.
pub const NEAR_CRITICAL: f64 = 1e-6;

const ROOT_XTOL: f64 = 1e-8;
const POLISH_XTOL: f64 = 1e-11;
const EXTREMUM_XTOL: f64 = 1e-8;
/// Breakpoints closer than this (relative) are one breakpoint. Curve end
/// values sit a guard band away from the critical level, so two curves
/// meeting at the same level (λ3 and λ4 at the homoclinic energy) report
/// slightly different limits.
pub const BREAKPOINT_MERGE: f64 = 1e-5;

/// A refined extremum this close to an existing sample reuses that sample.
const MERGE_DIST: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Stable,
    Unstable,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stability::Stable => "stable",
            Stability::Unstable => "unstable",
        })
    }
}

/// Stability of the cycle born at a simple root with the given slope.
///
/// For the family that grows with `h` (Γ2) a decreasing detection
/// function gives a stable cycle; for the shrinking families the rule is
/// reversed. This orientation was fixed against direct integration of the
/// perturbed flow.
pub fn stability(family: Family, slope: f64) -> Result<Stability> {
    if slope == 0.0 || !slope.is_finite() {
        return Err(Error::Degenerate(format!(
            "slope {slope} at a root of {family}: stability undefined"
        )));
    }
    Ok(match (family.orientation(), slope > 0.0) {
        (Orientation::Extends, false) | (Orientation::Shrinks, true) => Stability::Stable,
        (Orientation::Extends, true) | (Orientation::Shrinks, false) => Stability::Unstable,
    })
}

/// A simple root of `λ(h) = λ0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub h: f64,
    /// dλ/dh of the interpolant at the root.
    pub slope: f64,
    pub near_critical: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RootScan {
    pub roots: Vec<Root>,
    /// Energies where the curve touches `λ0` without crossing it.
    pub tangencies: Vec<f64>,
}

/// Solves `cu(h)·u + cv(h)·v = λ0` along a sampled curve.
pub fn find_roots(curve: &DetectionCurve, lambda0: f64, u: f64, v: f64) -> Result<RootScan> {
    let samples = curve.samples();
    let ztol = ZERO_TOL * lambda0.abs().max(1.0);
    let s: Vec<f64> = samples.iter().map(|p| p.lambda(u, v) - lambda0).collect();
    let sign = |x: f64| -> i8 {
        if x.abs() <= ztol {
            0
        } else if x > 0.0 {
            1
        } else {
            -1
        }
    };
    let signs: Vec<i8> = s.iter().map(|&x| sign(x)).collect();
    let mut scan = RootScan::default();
    let mut i = 0;
    while i < samples.len() {
        if signs[i] == 0 {
            let start = i;
            while i + 1 < samples.len() && signs[i + 1] == 0 {
                i += 1;
            }
            let left = start.checked_sub(1).map(|k| signs[k]);
            let right = signs.get(i + 1).copied();
            let h = samples[(start + i) / 2].h;
            match (left, right) {
                (Some(l), Some(r)) if l != r => {
                    scan.roots.push(make_root(curve, h, u, v, (r - l) as f64))
                }
                _ => scan.tangencies.push(h),
            }
        } else if i + 1 < samples.len() && signs[i + 1] != 0 && signs[i + 1] != signs[i] {
            let h = polish(curve, i, lambda0, u, v, s[i], s[i + 1])?;
            scan.roots.push(make_root(curve, h, u, v, s[i + 1] - s[i]));
        }
        i += 1;
    }
    Ok(scan)
}

fn make_root(curve: &DetectionCurve, h: f64, u: f64, v: f64, rise: f64) -> Root {
    let mut slope = curve.slope_at(h, u, v);
    if slope * rise <= 0.0 {
        // the interpolant disagrees with the bracket; fall back to the secant
        let k = curve
            .samples()
            .partition_point(|p| p.h <= h)
            .clamp(1, curve.samples().len() - 1);
        let (p0, p1) = (curve.samples()[k - 1], curve.samples()[k]);
        slope = (p1.lambda(u, v) - p0.lambda(u, v)) / (p1.h - p0.h);
        if slope * rise <= 0.0 {
            slope = rise.signum() * f64::MIN_POSITIVE;
        }
    }
    let (lo, hi) = curve.detector.admissible(curve.family);
    Root {
        h,
        slope,
        near_critical: h - lo < NEAR_CRITICAL || hi - h < NEAR_CRITICAL,
    }
}

/// Bisection on the interpolant, then Brent on directly evaluated λ.
fn polish(
    curve: &DetectionCurve,
    i: usize,
    lambda0: f64,
    u: f64,
    v: f64,
    s0: f64,
    s1: f64,
) -> Result<f64> {
    let samples = curve.samples();
    let (a, b) = (samples[i].h, samples[i + 1].h);
    let direct = |h: f64| -> Result<f64> {
        Ok(curve.detector.sample(curve.family, h)?.lambda(u, v) - lambda0)
    };
    let guess = bisect(|h| curve.lambda_at(h, u, v) - lambda0, a, b, ROOT_XTOL);
    let delta = 1e-6 * (b - a);
    let (lo, hi) = ((guess - delta).max(a), (guess + delta).min(b));
    if lo > a && hi < b {
        let (flo, fhi) = (direct(lo)?, direct(hi)?);
        if (flo < 0.0) != (fhi < 0.0) {
            return brent(direct, lo, hi, flo, fhi, POLISH_XTOL);
        }
    }
    brent(direct, a, b, s0, s1, POLISH_XTOL)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Max,
    Min,
}

/// An interior extremum of λ_j for the curve set's `(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub family: Family,
    pub h: f64,
    pub lambda: f64,
    pub kind: ExtremumKind,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleFinding {
    pub family: OrbitFamily,
    pub h_root: f64,
    pub lambda0: f64,
    pub slope: f64,
    pub stability: Stability,
    /// Number of cycles: one per orbit of the family on the level set.
    pub count: usize,
    pub near_critical: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistributionReport {
    pub lambda0: f64,
    pub findings: Vec<CycleFinding>,
    pub tangencies: Vec<(Family, f64)>,
    pub total: usize,
    /// Interval of λ0 over which the pattern stays the same; collapses to
    /// a point when λ0 is itself a breakpoint.
    pub band: (f64, f64),
}

impl DistributionReport {
    /// Roots per family, in family order.
    pub fn pattern(&self) -> [usize; 4] {
        let mut p = [0; 4];
        for f in &self.findings {
            p[f.family.id.index() - 1] += 1;
        }
        p
    }
}

/// One λ0 interval of constant cycle pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct Band {
    pub lo: f64,
    pub hi: f64,
    pub pattern: [usize; 4],
    pub total: usize,
    /// Findings at the representative λ0 inside the band.
    pub report: DistributionReport,
}

/// The four detection curves for one parameter set, with the interior
/// extrema for its `(u, v)` located and inserted as samples.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSet {
    pub params: SystemParams,
    pub curves: Vec<DetectionCurve>,
    pub extrema: Vec<Extremum>,
}

impl CurveSet {
    /// Samples every family on its band grid.
    pub fn sample(params: &SystemParams, tol: f64) -> Result<Self> {
        let ham = params.hamiltonian();
        let grids = Family::ALL.map(|f| band_grid(f, &ham));
        Self::sample_on(params, tol, &grids)
    }

    /// Samples family `j` on `grids[j − 1]`.
    pub fn sample_on(params: &SystemParams, tol: f64, grids: &[Vec<f64>; 4]) -> Result<Self> {
        params.validate()?;
        let detector = Detector::new(params, tol);
        let curves = Family::ALL
            .par_iter()
            .map(|&f| detection_curve_with(detector, f, &grids[f.index() - 1]))
            .collect::<Result<Vec<_>>>()?;
        Self::from_curves(params, curves)
    }

    pub fn from_curves(params: &SystemParams, curves: Vec<DetectionCurve>) -> Result<Self> {
        if params.u == 0.0 && params.v == 0.0 {
            return Err(Error::Degenerate(
                "u = v = 0: every detection function vanishes identically".into(),
            ));
        }
        let (u, v) = (params.u, params.v);
        let refined = curves
            .into_par_iter()
            .map(|c| refine_extrema(c, u, v))
            .collect::<Result<Vec<_>>>()?;
        let mut set = CurveSet {
            params: *params,
            curves: Vec::new(),
            extrema: Vec::new(),
        };
        for (c, ex) in refined {
            set.curves.push(c);
            set.extrema.extend(ex);
        }
        Ok(set)
    }

    pub fn curve(&self, family: Family) -> Option<&DetectionCurve> {
        self.curves.iter().find(|c| c.family == family)
    }

    /// Curve end values and interior extrema, sorted, with near-coincident
    /// values merged to their mean.
    pub fn breakpoints(&self) -> Vec<f64> {
        let (u, v) = (self.params.u, self.params.v);
        let mut b: Vec<f64> = self
            .curves
            .iter()
            .flat_map(|c| {
                let s = c.samples();
                [s[0].lambda(u, v), s[s.len() - 1].lambda(u, v)]
            })
            .chain(self.extrema.iter().map(|e| e.lambda))
            .collect();
        b.sort_by(f64::total_cmp);
        let mut merged: Vec<(f64, usize)> = Vec::new();
        for x in b {
            match merged.last_mut() {
                Some((sum, k))
                    if (x - *sum / *k as f64).abs() <= BREAKPOINT_MERGE * x.abs().max(1.0) =>
                {
                    *sum += x;
                    *k += 1;
                }
                _ => merged.push((x, 1)),
            }
        }
        merged.into_iter().map(|(sum, k)| sum / k as f64).collect()
    }
}

fn discrete_extrema(lam: &[f64]) -> Vec<usize> {
    (1..lam.len().saturating_sub(1))
        .filter(|&i| (lam[i] - lam[i - 1]) * (lam[i + 1] - lam[i]) < 0.0)
        .collect()
}

fn refine_extrema(
    mut curve: DetectionCurve,
    u: f64,
    v: f64,
) -> Result<(DetectionCurve, Vec<Extremum>)> {
    let det = curve.detector;
    let family = curve.family;
    let eval = |h: f64| -> Result<DetectionSample> { det.sample(family, h) };

    // one round of grid halving around each discrete extremum
    let idx = discrete_extrema(&curve.lambdas(u, v));
    let mids: Vec<f64> = idx
        .iter()
        .flat_map(|&i| {
            let s = curve.samples();
            [0.5 * (s[i - 1].h + s[i].h), 0.5 * (s[i].h + s[i + 1].h)]
        })
        .collect();
    let new = mids.into_par_iter().map(eval).collect::<Result<Vec<_>>>()?;
    curve.insert(new);

    let lam = curve.lambdas(u, v);
    let idx = discrete_extrema(&lam);
    let found = idx
        .par_iter()
        .map(|&i| -> Result<(Extremum, Option<DetectionSample>)> {
            let s = curve.samples();
            let kind = if lam[i] > lam[i - 1] {
                ExtremumKind::Max
            } else {
                ExtremumKind::Min
            };
            let sign = if kind == ExtremumKind::Max { 1.0 } else { -1.0 };
            let (h, _) = golden_max(
                |h| Ok(sign * eval(h)?.lambda(u, v)),
                s[i - 1].h,
                s[i + 1].h,
                EXTREMUM_XTOL,
            )?;
            let best = eval(h)?;
            let better = |x: &DetectionSample, y: &DetectionSample| {
                sign * x.lambda(u, v) > sign * y.lambda(u, v)
            };
            let top = *s[i - 1..=i + 1]
                .iter()
                .fold(&s[i], |acc, x| if better(x, acc) { x } else { acc });
            let crowded = s.iter().any(|p| (p.h - best.h).abs() < MERGE_DIST);
            // a refined point crowding an existing sample would spoil the
            // interpolant slopes; keep the sample instead
            let (sample, insert) = if better(&best, &top) && !crowded {
                (best, Some(best))
            } else {
                (top, None)
            };
            Ok((
                Extremum {
                    family,
                    h: sample.h,
                    lambda: sample.lambda(u, v),
                    kind,
                },
                insert,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut extrema = Vec::with_capacity(found.len());
    let mut inserts = Vec::new();
    for (e, ins) in found {
        extrema.push(e);
        inserts.extend(ins);
    }
    curve.insert(inserts);
    Ok((curve, extrema))
}

/// Every predicted cycle at `λ0`.
pub fn distribution(lambda0: f64, set: &CurveSet) -> Result<DistributionReport> {
    let (u, v) = (set.params.u, set.params.v);
    let mut findings = Vec::new();
    let mut tangencies = Vec::new();
    for curve in &set.curves {
        let scan = find_roots(curve, lambda0, u, v)?;
        let family = curve.detector.ham.orbit_family(curve.family);
        for r in scan.roots {
            findings.push(CycleFinding {
                family,
                h_root: r.h,
                lambda0,
                slope: r.slope,
                stability: stability(curve.family, r.slope)?,
                count: curve.family.multiplicity(),
                near_critical: r.near_critical,
            });
        }
        tangencies.extend(scan.tangencies.into_iter().map(|h| (curve.family, h)));
    }
    let total = findings.iter().map(|f| f.count).sum();
    let bp = set.breakpoints();
    let k = bp.partition_point(|&b| b < lambda0);
    let band = if bp.get(k) == Some(&lambda0) {
        (lambda0, lambda0)
    } else {
        (
            k.checked_sub(1).map_or(f64::NEG_INFINITY, |j| bp[j]),
            bp.get(k).copied().unwrap_or(f64::INFINITY),
        )
    };
    Ok(DistributionReport {
        lambda0,
        findings,
        tangencies,
        total,
        band,
    })
}

/// Constant-pattern λ0 intervals, in increasing λ0.
pub fn lambda_bands(set: &CurveSet) -> Result<Vec<Band>> {
    let bp = set.breakpoints();
    let mut edges = vec![f64::NEG_INFINITY];
    edges.extend(bp.iter().copied());
    edges.push(f64::INFINITY);
    edges
        .windows(2)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|w| {
            let (lo, hi) = (w[0], w[1]);
            let mid = match (lo.is_finite(), hi.is_finite()) {
                (true, true) => 0.5 * (lo + hi),
                (false, true) => hi - hi.abs().max(1.0),
                (true, false) => lo + lo.abs().max(1.0),
                (false, false) => 0.0,
            };
            let report = distribution(mid, set)?;
            Ok(Band {
                lo,
                hi,
                pattern: report.pattern(),
                total: report.total,
                report,
            })
        })
        .collect()
}

/// Checks that `|λ(h) − λ0|` at a fresh evaluation is within
/// `1e−6·max(1, |λ0|)`.
pub fn root_residual(finding: &CycleFinding, params: &SystemParams, tol: f64) -> Result<f64> {
    let det = Detector::new(params, tol);
    let s = det.sample(finding.family.id, finding.h_root)?;
    Ok((s.lambda(params.u, params.v) - finding.lambda0).abs())
}
