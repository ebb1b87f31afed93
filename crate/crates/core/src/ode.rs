//! Direct integration of the perturbed system and Poincaré return maps.
//!
//! The integrator is the Dormand–Prince 5(4) pair with its 4th-order
//! continuous extension, used for locating section crossings.

use crate::cycles::{CycleFinding, Stability};
use crate::error::{Error, Result};
use crate::hamiltonian::{Family, Hamiltonian};
use crate::params::SystemParams;
use crate::roots::brent;

/// Default absolute and relative integrator tolerance.
pub const DEFAULT_ODE_TOL: f64 = 1e-10;

/// Crossing times are refined to this accuracy.
const CROSSING_TOL: f64 = 1e-10;

/// Relative offset of the second trajectory in the finite-difference
/// derivative of the return map.
const FD_STEP: f64 = 1e-5;

/// Return times are capped at this multiple of the unperturbed period.
const PERIOD_CAP: f64 = 100.0;

/// Hard limit for the unperturbed return used to estimate the period.
const UNPERTURBED_T_MAX: f64 = 1e4;

/// A trajectory leaving this multiple of the start distance has escaped.
const ESCAPE_FACTOR: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    /// Unperturbed energy at the point.
    pub h: f64,
}

/// Right-hand side of the perturbed system.
pub fn vector_field(x: f64, y: f64, p: &SystemParams) -> (f64, f64) {
    let (a, b) = (p.a, p.b);
    let mut dx = 4.0 * y * (a * b * x * x - b * y * y + 1.0);
    let mut dy = 4.0 * x * (a * x * x - a * b * y * y - 1.0);
    if p.epsilon != 0.0 {
        let n = p.n as i32;
        let common = p.u * x.powi(n) + p.v * y.powi(n) - p.lambda0;
        let mixed = b * x.powi(p.mu as i32) * y.powi(p.beta as i32);
        let coupling = (p.beta as f64 + 1.0) / (p.mu as f64 + 1.0);
        dx += p.epsilon * x * (common - coupling * mixed - p.u * x * x);
        dy += p.epsilon * y * (common + mixed - p.v * y * y);
    }
    (dx, dy)
}

fn rhs(z: [f64; 2], p: &SystemParams) -> [f64; 2] {
    let (dx, dy) = vector_field(z[0], z[1], p);
    [dx, dy]
}

// Dormand–Prince tableau; the field is autonomous so the nodes are not needed.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

/// One accepted step with its dense-output polynomial.
#[derive(Debug, Clone, Copy)]
struct Step {
    t0: f64,
    dt: f64,
    rcont: [[f64; 2]; 5],
}

impl Step {
    fn t1(&self) -> f64 {
        self.t0 + self.dt
    }

    fn at(&self, t: f64) -> [f64; 2] {
        let s = (t - self.t0) / self.dt;
        let s1 = 1.0 - s;
        let r = &self.rcont;
        std::array::from_fn(|i| {
            r[0][i] + s * (r[1][i] + s1 * (r[2][i] + s * (r[3][i] + s1 * r[4][i])))
        })
    }

    fn end(&self) -> [f64; 2] {
        std::array::from_fn(|i| self.rcont[0][i] + self.rcont[1][i])
    }
}

fn axpy(z: [f64; 2], dt: f64, terms: &[(f64, [f64; 2])]) -> [f64; 2] {
    std::array::from_fn(|i| z[i] + dt * terms.iter().map(|(c, k)| c * k[i]).sum::<f64>())
}

/// Integrates from `(t0, z0)` until `t_end` or until `on_step` returns
/// `true`. Returns the last state reached.
fn drive(
    z0: [f64; 2],
    t0: f64,
    t_end: f64,
    p: &SystemParams,
    tol: f64,
    mut on_step: impl FnMut(&Step) -> Result<bool>,
    mut partial: Option<&mut Vec<TrajectoryPoint>>,
) -> Result<(f64, [f64; 2])> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParams(format!(
            "integrator tolerance must be positive, got {tol}"
        )));
    }
    let (mut t, mut z) = (t0, z0);
    let mut k1 = rhs(z, p);
    let scale = z[0].hypot(z[1]).max(1e-3);
    let speed = k1[0].hypot(k1[1]);
    let mut dt = if speed > 0.0 {
        (0.01 * scale / speed).min(0.1)
    } else {
        0.01
    };
    dt = dt.min(t_end - t0);
    let mut last_err: f64 = 1e-4;
    while t < t_end {
        if dt < 16.0 * f64::EPSILON * t.abs().max(1.0) {
            return Err(Error::StepUnderflow {
                t,
                partial: partial.map(std::mem::take).unwrap_or_default(),
            });
        }
        let dt_try = dt.min(t_end - t);
        let k2 = rhs(axpy(z, dt_try, &[(A21, k1)]), p);
        let k3 = rhs(axpy(z, dt_try, &[(A31, k1), (A32, k2)]), p);
        let k4 = rhs(axpy(z, dt_try, &[(A41, k1), (A42, k2), (A43, k3)]), p);
        let k5 = rhs(
            axpy(z, dt_try, &[(A51, k1), (A52, k2), (A53, k3), (A54, k4)]),
            p,
        );
        let k6 = rhs(
            axpy(
                z,
                dt_try,
                &[(A61, k1), (A62, k2), (A63, k3), (A64, k4), (A65, k5)],
            ),
            p,
        );
        let z1 = axpy(
            z,
            dt_try,
            &[(A71, k1), (A73, k3), (A74, k4), (A75, k5), (A76, k6)],
        );
        let k7 = rhs(z1, p);
        let mut err = 0.0;
        for i in 0..2 {
            let e = dt_try
                * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sc = tol + tol * z[i].abs().max(z1[i].abs());
            err += (e / sc).powi(2);
        }
        let err = (err / 2.0).sqrt();
        if !err.is_finite() || !z1[0].is_finite() || !z1[1].is_finite() {
            dt = 0.1 * dt_try;
            continue;
        }
        if err <= 1.0 {
            let diff = [z1[0] - z[0], z1[1] - z[1]];
            let bspl: [f64; 2] = std::array::from_fn(|i| dt_try * k1[i] - diff[i]);
            let step = Step {
                t0: t,
                dt: dt_try,
                rcont: [
                    z,
                    diff,
                    bspl,
                    std::array::from_fn(|i| diff[i] - dt_try * k7[i] - bspl[i]),
                    std::array::from_fn(|i| {
                        dt_try
                            * (D1 * k1[i]
                                + D3 * k3[i]
                                + D4 * k4[i]
                                + D5 * k5[i]
                                + D6 * k6[i]
                                + D7 * k7[i])
                    }),
                ],
            };
            t = step.t1();
            z = z1;
            k1 = k7;
            if let Some(buf) = partial.as_deref_mut() {
                buf.push(point(t, z, p));
            }
            if on_step(&step)? {
                break;
            }
            // PI step-size control
            let fac = 0.9 * err.max(1e-10).powf(-0.7 / 5.0) * last_err.powf(0.4 / 5.0);
            dt = dt_try * fac.clamp(0.2, 10.0);
            last_err = err.max(1e-4);
        } else {
            dt = dt_try * (0.9 * err.powf(-0.2)).max(0.2);
        }
    }
    Ok((t, z))
}

fn point(t: f64, z: [f64; 2], p: &SystemParams) -> TrajectoryPoint {
    TrajectoryPoint {
        t,
        x: z[0],
        y: z[1],
        h: p.hamiltonian().value(z[0], z[1]),
    }
}

/// Integrates over `[0, t_span]`, returning the start and every accepted step.
pub fn integrate_orbit(
    start: (f64, f64),
    t_span: f64,
    params: &SystemParams,
    tol: f64,
) -> Result<Vec<TrajectoryPoint>> {
    if !(t_span >= 0.0) {
        return Err(Error::InvalidParams(format!(
            "time span must be non-negative, got {t_span}"
        )));
    }
    let z0 = [start.0, start.1];
    let mut out = vec![point(0.0, z0, params)];
    if t_span == 0.0 {
        return Ok(out);
    }
    drive(z0, 0.0, t_span, params, tol, |_| Ok(false), Some(&mut out))?;
    Ok(out)
}

/// Transversal ray `anchor + s·(cos angle, sin angle)`, `s > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Section {
    pub anchor: (f64, f64),
    pub angle: f64,
}

impl Section {
    pub fn point(&self, s: f64) -> (f64, f64) {
        (
            self.anchor.0 + s * self.angle.cos(),
            self.anchor.1 + s * self.angle.sin(),
        )
    }

    /// Distance along the ray and signed distance across it.
    fn coords(&self, z: [f64; 2]) -> (f64, f64) {
        let (dx, dy) = (z[0] - self.anchor.0, z[1] - self.anchor.1);
        let (s, c) = self.angle.sin_cos();
        (dx * c + dy * s, -dx * s + dy * c)
    }

    /// The section used for an orbit of `family` at energy `h`: the
    /// positive x axis for Γ1–Γ3, and for Γ4 the ray from the centre A1
    /// through the outer point of the orbit at the mid angle.
    pub fn for_family(family: Family, h: f64, ham: &Hamiltonian) -> Result<Section> {
        match family {
            Family::Gamma1 | Family::Gamma2 | Family::Gamma3 => Ok(Section {
                anchor: (0.0, 0.0),
                angle: 0.0,
            }),
            Family::Gamma4 => {
                let bounds = ham.theta_bounds(h)?;
                let mid = 0.5 * (bounds.theta1 + bounds.theta2);
                let r = ham.radial_branches(mid, h)?.outer.sqrt();
                let a1 = ham.center_a1();
                Ok(Section {
                    anchor: a1,
                    angle: (r * mid.sin() - a1.1).atan2(r * mid.cos() - a1.0),
                })
            }
        }
    }

    /// Distance along the ray to the unperturbed orbit of `family` at `h`.
    pub fn distance_at_energy(&self, family: Family, h: f64, ham: &Hamiltonian) -> Result<f64> {
        match family {
            Family::Gamma1 | Family::Gamma3 => Ok(ham.radial_branches(0.0, h)?.outer.sqrt()),
            Family::Gamma2 => ham
                .radial_branches(0.0, h)?
                .inner
                .map(f64::sqrt)
                .ok_or_else(|| Error::Domain(format!("no inner branch at h = {h}"))),
            Family::Gamma4 => {
                // H falls monotonically from H(A) along the ray until the
                // orbit is met; march out, then bisect
                let f = |s: f64| {
                    let (x, y) = self.point(s);
                    Ok(ham.value(x, y) - h)
                };
                let step = 1e-2;
                let mut s0 = 0.0;
                let mut f0 = f(s0)?;
                if f0 <= 0.0 {
                    return Err(Error::Domain(format!("h = {h} is above the centre energy")));
                }
                for _ in 0..10_000 {
                    let s1 = s0 + step;
                    let f1 = f(s1)?;
                    if f1 <= 0.0 {
                        return brent(f, s0, s1, f0, f1, 1e-15);
                    }
                    s0 = s1;
                    f0 = f1;
                }
                Err(Error::Domain(format!(
                    "level h = {h} not met along the section"
                )))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReturnMapResult {
    pub section: Section,
    pub r_in: f64,
    pub r_out: f64,
    pub period_estimate: f64,
    /// Finite-difference `d r_out / d r_in`.
    pub derivative_estimate: f64,
}

/// Return map on a section with a fixed time cap.
#[derive(Debug, Clone, Copy)]
pub struct ReturnMap {
    pub section: Section,
    pub params: SystemParams,
    pub tol: f64,
    pub t_cap: f64,
}

impl ReturnMap {
    /// Sets the time cap from the unperturbed period of the orbit through
    /// the section point at distance `r_ref`.
    pub fn new(section: Section, params: &SystemParams, tol: f64, r_ref: f64) -> Result<Self> {
        let free = ReturnMap {
            section,
            params: params.with_epsilon(0.0),
            tol,
            t_cap: UNPERTURBED_T_MAX,
        };
        let (_, period) = free.first_return(r_ref)?;
        Ok(ReturnMap {
            section,
            params: *params,
            tol,
            t_cap: PERIOD_CAP * period,
        })
    }

    /// Distance along the ray at the next same-direction crossing, and the
    /// time taken.
    pub fn first_return(&self, r_in: f64) -> Result<(f64, f64)> {
        if !(r_in > 0.0) {
            return Err(Error::Domain(format!(
                "section distance must be positive, got {r_in}"
            )));
        }
        let (x0, y0) = self.section.point(r_in);
        let z0 = [x0, y0];
        let v0 = rhs(z0, &self.params);
        let dir = {
            let (_, g) = self.section.coords([x0 + v0[0], y0 + v0[1]]);
            g.signum()
        };
        if dir == 0.0 {
            return Err(Error::Domain("flow is tangent to the section".into()));
        }
        let escape = ESCAPE_FACTOR * (r_in + self.section.anchor.0.hypot(self.section.anchor.1));
        let mut found: Option<(f64, f64)> = None;
        let mut g_prev = 0.0;
        let section = self.section;
        let result = drive(
            z0,
            0.0,
            self.t_cap,
            &self.params,
            self.tol,
            |step| {
                let end = step.end();
                if end[0].hypot(end[1]) > escape {
                    return Err(Error::NoReturn { t_cap: self.t_cap });
                }
                let (_, g) = section.coords(end);
                let crossed = dir * g_prev < 0.0 && dir * g >= 0.0;
                g_prev = g;
                if !crossed {
                    return Ok(false);
                }
                let gf = |t: f64| Ok(section.coords(step.at(t)).1);
                let (ga, gb) = (gf(step.t0)?, g);
                let tc = brent(gf, step.t0, step.t1(), ga, gb, CROSSING_TOL)?;
                let (sc, _) = section.coords(step.at(tc));
                if sc > 0.0 {
                    found = Some((sc, tc));
                    return Ok(true);
                }
                Ok(false)
            },
            None,
        );
        match result {
            Ok(_) => found.ok_or(Error::NoReturn { t_cap: self.t_cap }),
            Err(Error::StepUnderflow { .. }) => Err(Error::NoReturn { t_cap: self.t_cap }),
            Err(e) => Err(e),
        }
    }

    pub fn evaluate(&self, r_in: f64) -> Result<ReturnMapResult> {
        let (r_out, period) = self.first_return(r_in)?;
        let r2 = r_in * (1.0 + FD_STEP);
        let (r2_out, _) = self.first_return(r2)?;
        Ok(ReturnMapResult {
            section: self.section,
            r_in,
            r_out,
            period_estimate: period,
            derivative_estimate: (r2_out - r_out) / (r2 - r_in),
        })
    }
}

/// One return to `section` from distance `r_in`, with the time cap set
/// from the unperturbed period through the same point.
pub fn poincare_return(
    section: Section,
    r_in: f64,
    params: &SystemParams,
    tol: f64,
) -> Result<ReturnMapResult> {
    ReturnMap::new(section, params, tol, r_in)?.evaluate(r_in)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPoint {
    /// Distance along the section.
    pub r: f64,
    /// Unperturbed energy at the fixed point.
    pub h_star: f64,
    pub derivative: f64,
    pub period: f64,
    /// `|r_out − r_in|` at the fixed point.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    pub family: Family,
    pub h_root: f64,
    pub lambda0: f64,
    pub epsilon: f64,
    pub predicted: Stability,
    pub section: Section,
    pub fixed_point: Option<FixedPoint>,
    /// Stability read off the return-map derivative.
    pub observed: Option<Stability>,
    pub h_error: Option<f64>,
    pub verified: bool,
    pub failure: Option<String>,
}

/// Accepted distance between the predicted and the located energy.
pub fn energy_tolerance(h_root: f64) -> f64 {
    0.05 * h_root.abs() + 0.05
}

/// Looks for the cycle predicted by `finding` in the flow with the given
/// `ε`: brackets a sign change of `r_out − r_in` along the section, bisects
/// to the fixed point and compares its energy and stability with the
/// prediction. A missing fixed point gives an unverified record.
pub fn verify_prediction(
    finding: &CycleFinding,
    params: &SystemParams,
    epsilon: f64,
    tol: f64,
) -> Result<Verification> {
    if epsilon == 0.0 {
        return Err(Error::Degenerate("degenerate: ε=0".into()));
    }
    let p = params.with_epsilon(epsilon).with_lambda(finding.lambda0);
    p.validate()?;
    let family = finding.family.id;
    let ham = p.hamiltonian();
    let section = Section::for_family(family, finding.h_root, &ham)?;
    let mut record = Verification {
        family,
        h_root: finding.h_root,
        lambda0: finding.lambda0,
        epsilon,
        predicted: finding.stability,
        section,
        fixed_point: None,
        observed: None,
        h_error: None,
        verified: false,
        failure: None,
    };
    let r0 = section.distance_at_energy(family, finding.h_root, &ham)?;
    let map = ReturnMap::new(section, &p, tol, r0)?;
    let gap = |r: f64| -> Result<f64> { Ok(map.first_return(r)?.0 - r) };

    // widen an energy window around h_root until r_out − r_in changes sign
    let (lo, hi) = ham.family_range(family);
    let room = 0.9 * (finding.h_root - lo).min(hi - finding.h_root);
    let max_dh = energy_tolerance(finding.h_root).min(room);
    let mut dh = (1e-3 * max_dh).max(1e-12);
    let mut bracket = None;
    let g0 = match gap(r0) {
        Ok(g) => g,
        Err(e @ (Error::NoReturn { .. } | Error::StepUnderflow { .. })) => {
            record.failure = Some(format!("no return from the predicted orbit: {e}"));
            return Ok(record);
        }
        Err(e) => return Err(e),
    };
    if g0 == 0.0 {
        bracket = Some((r0, r0, g0, g0));
    }
    while bracket.is_none() && dh <= max_dh {
        let side = |h: f64| -> Result<Option<(f64, f64)>> {
            let r = section.distance_at_energy(family, h, &ham)?;
            match gap(r) {
                Ok(g) => Ok(Some((r, g))),
                Err(Error::NoReturn { .. } | Error::StepUnderflow { .. }) => Ok(None),
                Err(e) => Err(e),
            }
        };
        let below = side(finding.h_root - dh)?;
        let above = side(finding.h_root + dh)?;
        for (r, g) in [below, above].into_iter().flatten() {
            if (g < 0.0) != (g0 < 0.0) && bracket.is_none() {
                bracket = Some(if r < r0 {
                    (r, r0, g, g0)
                } else {
                    (r0, r, g0, g)
                });
            }
        }
        dh *= 2.0;
    }
    let Some((ra, rb, ga, gb)) = bracket else {
        record.failure = Some(format!(
            "no sign change of r_out - r_in within |h - h_root| <= {max_dh:.3e}"
        ));
        return Ok(record);
    };
    let r_star = if ra == rb {
        ra
    } else {
        brent(gap, ra, rb, ga, gb, 1e-13 * rb.abs().max(1.0))?
    };
    let res = map.evaluate(r_star)?;
    let (x, y) = section.point(r_star);
    let h_star = ham.value(x, y);
    let observed = if res.derivative_estimate.abs() < 1.0 {
        Stability::Stable
    } else {
        Stability::Unstable
    };
    let h_error = (h_star - finding.h_root).abs();
    record.fixed_point = Some(FixedPoint {
        r: r_star,
        h_star,
        derivative: res.derivative_estimate,
        period: res.period_estimate,
        residual: (res.r_out - r_star).abs(),
    });
    record.observed = Some(observed);
    record.h_error = Some(h_error);
    record.verified = h_error < energy_tolerance(finding.h_root) && observed == finding.stability;
    if !record.verified {
        record.failure = Some(if observed != finding.stability {
            format!(
                "stability mismatch: predicted {}, observed {observed}",
                finding.stability
            )
        } else {
            format!("located energy {h_star} too far from {}", finding.h_root)
        });
    }
    Ok(record)
}

/// Time for one loop of the unperturbed orbit through the section point.
pub fn unperturbed_period(
    section: Section,
    r: f64,
    params: &SystemParams,
    tol: f64,
) -> Result<f64> {
    let free = ReturnMap {
        section,
        params: params.with_epsilon(0.0),
        tol,
        t_cap: UNPERTURBED_T_MAX,
    };
    Ok(free.first_return(r)?.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn free() -> SystemParams {
        SystemParams::default().with_epsilon(0.0)
    }

    #[test]
    fn field_examples() {
        let p = SystemParams::default();
        assert_eq!(vector_field(0.0, 0.0, &p), (0.0, 0.0));
        let (dx, dy) = vector_field(0.0, 2f64.sqrt(), &free());
        assert_abs_diff_eq!(dx, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(dy, 0.0, epsilon = 1e-14);
        let (dx, dy) = vector_field(1.0, 1.0, &free());
        assert_abs_diff_eq!(dx, 8.0 / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(dy, -10.0 / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn field_is_hamiltonian_at_zero_epsilon() {
        let p = free();
        let ham = p.hamiltonian();
        for &(x, y) in &[(0.3, -1.2), (1.7, 0.4), (-2.0, 1.1)] {
            let (dx, dy) = vector_field(x, y, &p);
            let (hx, hy) = ham.gradient(x, y);
            assert_abs_diff_eq!(dx, hy, epsilon = 1e-12);
            assert_abs_diff_eq!(dy, -hx, epsilon = 1e-12);
        }
    }

    #[test]
    fn energy_is_conserved_on_gamma2() {
        let p = free();
        let ham = p.hamiltonian();
        let r = ham.radial_branches(0.0, 1.0).unwrap().inner.unwrap().sqrt();
        let traj = integrate_orbit((r, 0.0), 10.0 * 2.0, &p, 1e-10).unwrap();
        let drift = traj.iter().map(|q| (q.h - 1.0).abs()).fold(0.0, f64::max);
        assert!(drift < 1e-8, "drift {drift}");
    }

    #[test]
    fn small_orbit_returns_to_start() {
        let sec = Section {
            anchor: (0.0, 0.0),
            angle: 0.0,
        };
        let p = free();
        let (r_out, t) = ReturnMap {
            section: sec,
            params: p,
            tol: 1e-11,
            t_cap: 100.0,
        }
        .first_return(0.05)
        .unwrap();
        assert_abs_diff_eq!(r_out, 0.05, epsilon = 1e-9);
        // linear part x' = 4y, y' = −4x
        assert_abs_diff_eq!(t, PI / 2.0, epsilon = 1e-2);
    }

    #[test]
    fn gamma4_section_meets_the_orbit() {
        let ham = free().hamiltonian();
        for h in [3.5, 6.0, 8.0] {
            let sec = Section::for_family(Family::Gamma4, h, &ham).unwrap();
            let s = sec.distance_at_energy(Family::Gamma4, h, &ham).unwrap();
            let (x, y) = sec.point(s);
            assert_abs_diff_eq!(ham.value(x, y), h, epsilon = 1e-12);
            let r = sec.distance_at_energy(Family::Gamma4, h, &ham).unwrap();
            let out = poincare_return(sec, r, &free(), 1e-10).unwrap();
            assert_abs_diff_eq!(out.r_out, r, epsilon = 1e-7);
        }
    }

    #[test]
    fn zero_epsilon_is_degenerate() {
        let p = SystemParams::default();
        let finding = CycleFinding {
            family: p.hamiltonian().orbit_family(Family::Gamma2),
            h_root: 0.5,
            lambda0: -0.1,
            slope: -0.1,
            stability: Stability::Stable,
            count: 1,
            near_critical: false,
        };
        let e = verify_prediction(&finding, &p, 0.0, 1e-10).unwrap_err();
        assert!(matches!(e, Error::Degenerate(ref m) if m.contains("ε=0")));
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert!(integrate_orbit((0.1, 0.0), 1.0, &free(), 0.0).is_err());
        assert!(integrate_orbit((0.1, 0.0), -1.0, &free(), 1e-8).is_err());
    }
}
