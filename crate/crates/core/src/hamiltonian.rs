//! The unperturbed quartic Hamiltonian
//!
//! ```text
//! H(x, y) = −(ax⁴ + by⁴) + 2abx²y² + 2(x² + y²),   0 < a < b < 1
//! ```
//!
//! together with its singular points, critical energies, polar form
//! `H = −r⁴p(θ) + 2r²`, the two radial branches of a level set and the
//! angular limits of the annular families.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use crate::error::{Error, Result};

/// Slack allowed when a square-root or arccos argument spills past its
/// domain at an exact critical level.
pub const CLAMP_TOL: f64 = 1e-12;

/// Closed-orbit families of the level sets `H = h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Outer orbit surrounding every critical point, `h < 1/b`.
    Gamma1,
    /// Orbit around the origin only, `0 < h < 1/b`.
    Gamma2,
    /// Two mirror orbits not crossing the y axis, `1/b < h < 1/a`.
    Gamma3,
    /// Four orbits, one around each centre A_i, `1/a < h < H(A)`.
    Gamma4,
}

/// How the region bounded by an orbit changes as `h` increases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Shrinks,
    Extends,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Gamma1,
        Family::Gamma2,
        Family::Gamma3,
        Family::Gamma4,
    ];

    /// 1-based index as used on the command line.
    pub fn index(self) -> usize {
        match self {
            Family::Gamma1 => 1,
            Family::Gamma2 => 2,
            Family::Gamma3 => 3,
            Family::Gamma4 => 4,
        }
    }

    pub fn from_index(i: usize) -> Option<Family> {
        Family::ALL.get(i.checked_sub(1)?).copied()
    }

    /// Number of disjoint orbits of the family on one level set.
    pub fn multiplicity(self) -> usize {
        match self {
            Family::Gamma1 | Family::Gamma2 => 1,
            Family::Gamma3 => 2,
            Family::Gamma4 => 4,
        }
    }

    pub fn orientation(self) -> Orientation {
        match self {
            Family::Gamma2 => Orientation::Extends,
            _ => Orientation::Shrinks,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gamma{}", self.index())
    }
}

/// A family together with its open energy interval for a given `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitFamily {
    pub id: Family,
    pub h_range: (f64, f64),
    pub multiplicity: usize,
    pub orientation: Orientation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointKind {
    Center,
    Saddle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointLabel {
    O,
    A1,
    A2,
    A3,
    A4,
    B1,
    B2,
    C1,
    C2,
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Display for PointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PointKind::Center => "center",
            PointKind::Saddle => "saddle",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularPoint {
    pub label: PointLabel,
    pub x: f64,
    pub y: f64,
    pub kind: PointKind,
    pub energy: f64,
}

/// Critical energies, in increasing order: `0 < 1/b < 1/a < H(A)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalEnergies {
    pub origin: f64,
    /// `1/b`, the heteroclinic level through B1, B2.
    pub heteroclinic: f64,
    /// `1/a`, the homoclinic level through C1, C2.
    pub homoclinic: f64,
    /// `H(A_i) = (2ab + a + b) / (ab(1 − ab))`.
    pub centers: f64,
}

impl CriticalEnergies {
    pub fn as_array(&self) -> [f64; 4] {
        [
            self.origin,
            self.heteroclinic,
            self.homoclinic,
            self.centers,
        ]
    }
}

/// Special level sets separating the families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// `h = 0`: the inner family collapses onto O.
    Origin,
    /// `h = 1/b`: four heteroclinic orbits joining B1 and B2.
    Heteroclinic,
    /// `h = 1/a`: four homoclinic orbits, two at C1 and two at C2.
    Homoclinic,
    /// `h = H(A)`: the level set is just the four centres A_i.
    Centers,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelClass {
    pub families: Vec<Family>,
    pub boundary: Option<Boundary>,
}

/// Squared radii of the level set along one ray.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialBranches {
    /// `r₊² = (1 + √(1 − hp)) / p`.
    pub outer: f64,
    /// `r₋² = (1 − √(1 − hp)) / p`; `None` when `h < 0` (no inner curve).
    pub inner: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularBounds {
    pub theta1: f64,
    pub theta2: f64,
    /// Set when `h < 1/a`: the arccos argument for θ1 exceeds one and θ1
    /// is reported as 0.
    pub theta1_clamped: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hamiltonian {
    pub a: f64,
    pub b: f64,
}

impl Hamiltonian {
    pub fn new(a: f64, b: f64) -> Self {
        Self { a, b }
    }

    /// Angular factor of the quartic part, `a cos⁴θ + b sin⁴θ − 2ab cos²θ sin²θ`.
    pub fn p(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        let (c2, s2) = (c * c, s * s);
        self.a * c2 * c2 + self.b * s2 * s2 - 2.0 * self.a * self.b * c2 * s2
    }

    pub fn value(&self, x: f64, y: f64) -> f64 {
        let (x2, y2) = (x * x, y * y);
        -(self.a * x2 * x2 + self.b * y2 * y2) + 2.0 * self.a * self.b * x2 * y2 + 2.0 * (x2 + y2)
    }

    /// Polar form `−r⁴p(θ) + 2r²`.
    pub fn value_polar(&self, r: f64, theta: f64) -> f64 {
        let r2 = r * r;
        -r2 * r2 * self.p(theta) + 2.0 * r2
    }

    pub fn gradient(&self, x: f64, y: f64) -> (f64, f64) {
        let (a, b) = (self.a, self.b);
        let hx = 4.0 * x * (-a * x * x + a * b * y * y + 1.0);
        let hy = 4.0 * y * (-b * y * y + a * b * x * x + 1.0);
        (hx, hy)
    }

    /// `(H_xx, H_xy, H_yy)`.
    pub fn hessian(&self, x: f64, y: f64) -> (f64, f64, f64) {
        let (a, b) = (self.a, self.b);
        let hxx = -12.0 * a * x * x + 4.0 * a * b * y * y + 4.0;
        let hyy = -12.0 * b * y * y + 4.0 * a * b * x * x + 4.0;
        let hxy = 8.0 * a * b * x * y;
        (hxx, hxy, hyy)
    }

    pub fn critical_energies(&self) -> CriticalEnergies {
        let (a, b) = (self.a, self.b);
        CriticalEnergies {
            origin: 0.0,
            heteroclinic: 1.0 / b,
            homoclinic: 1.0 / a,
            centers: (2.0 * a * b + a + b) / (a * b * (1.0 - a * b)),
        }
    }

    /// Open energy interval of a family. Γ1 is unbounded below.
    pub fn family_range(&self, family: Family) -> (f64, f64) {
        let e = self.critical_energies();
        match family {
            Family::Gamma1 => (f64::NEG_INFINITY, e.heteroclinic),
            Family::Gamma2 => (e.origin, e.heteroclinic),
            Family::Gamma3 => (e.heteroclinic, e.homoclinic),
            Family::Gamma4 => (e.homoclinic, e.centers),
        }
    }

    pub fn orbit_family(&self, family: Family) -> OrbitFamily {
        OrbitFamily {
            id: family,
            h_range: self.family_range(family),
            multiplicity: family.multiplicity(),
            orientation: family.orientation(),
        }
    }

    /// Coordinates of the centre A1 in the first quadrant.
    pub fn center_a1(&self) -> (f64, f64) {
        let (a, b) = (self.a, self.b);
        let x = ((1.0 + a) / (a * (1.0 - a * b))).sqrt();
        let y = ((1.0 + b) / (b * (1.0 - a * b))).sqrt();
        (x, y)
    }

    /// Eigenvalue classification of the linearised unperturbed field
    /// `(x', y') = (H_y, −H_x)` at `(x, y)`.
    pub fn classify_point(&self, x: f64, y: f64) -> PointKind {
        let (hxx, hxy, hyy) = self.hessian(x, y);
        // Jacobian [[H_xy, H_yy], [−H_xx, −H_xy]]
        let trace = 0.0;
        let det = -hxy * hxy + hxx * hyy;
        let disc = trace * trace - 4.0 * det;
        if disc < 0.0 {
            PointKind::Center
        } else {
            PointKind::Saddle
        }
    }

    /// The nine finite singular points O, A1..A4, B1, B2, C1, C2.
    pub fn singular_points(&self) -> Vec<SingularPoint> {
        let (xa, ya) = self.center_a1();
        let yb = (1.0 / self.b).sqrt();
        let xc = (1.0 / self.a).sqrt();
        let coords = [
            (PointLabel::O, 0.0, 0.0),
            (PointLabel::A1, xa, ya),
            (PointLabel::A2, xa, -ya),
            (PointLabel::A3, -xa, ya),
            (PointLabel::A4, -xa, -ya),
            (PointLabel::B1, 0.0, yb),
            (PointLabel::B2, 0.0, -yb),
            (PointLabel::C1, xc, 0.0),
            (PointLabel::C2, -xc, 0.0),
        ];
        let e = self.critical_energies();
        coords
            .into_iter()
            .map(|(label, x, y)| {
                let energy = match label {
                    PointLabel::O => e.origin,
                    PointLabel::B1 | PointLabel::B2 => e.heteroclinic,
                    PointLabel::C1 | PointLabel::C2 => e.homoclinic,
                    _ => e.centers,
                };
                SingularPoint {
                    label,
                    x,
                    y,
                    kind: self.classify_point(x, y),
                    energy,
                }
            })
            .collect()
    }

    /// Which families are present on the level set `H = h`.
    ///
    /// At the separatrix levels the families valid just below are
    /// returned together with the boundary flag. At `H(A)` the level set
    /// is only the four centres, so no family is returned.
    pub fn classify(&self, h: f64) -> LevelClass {
        let e = self.critical_energies();
        let at = |c: f64| (h - c).abs() <= CLAMP_TOL * c.abs().max(1.0);
        let (families, boundary) = if at(e.origin) {
            (vec![Family::Gamma1], Some(Boundary::Origin))
        } else if at(e.heteroclinic) {
            (
                vec![Family::Gamma1, Family::Gamma2],
                Some(Boundary::Heteroclinic),
            )
        } else if at(e.homoclinic) {
            (vec![Family::Gamma3], Some(Boundary::Homoclinic))
        } else if at(e.centers) {
            (vec![], Some(Boundary::Centers))
        } else if h < e.origin {
            (vec![Family::Gamma1], None)
        } else if h < e.heteroclinic {
            (vec![Family::Gamma1, Family::Gamma2], None)
        } else if h < e.homoclinic {
            (vec![Family::Gamma3], None)
        } else if h < e.centers {
            (vec![Family::Gamma4], None)
        } else {
            (vec![], None)
        };
        LevelClass { families, boundary }
    }

    /// The two squared radii solving `−r⁴p(θ) + 2r² = h` along the ray θ.
    pub fn radial_branches(&self, theta: f64, h: f64) -> Result<RadialBranches> {
        let p = self.p(theta);
        let s = clamped_sqrt(1.0 - h * p).ok_or_else(|| {
            Error::Domain(format!(
                "level h = {h} does not meet the ray theta = {theta} (1 - h p(theta) < 0)"
            ))
        })?;
        // h/(1+s) avoids the cancellation in (1−s)/p for small h.
        let inner = (h >= 0.0).then(|| h / (1.0 + s));
        Ok(RadialBranches {
            outer: (1.0 + s) / p,
            inner,
        })
    }

    /// Angles in `[0, π/2]` where `1 − h p(θ) = 0`.
    pub fn theta_bounds(&self, h: f64) -> Result<AngularBounds> {
        if h <= 0.0 || !h.is_finite() {
            return Err(Error::Domain(format!("theta bounds need h > 0, got {h}")));
        }
        let (a, b) = (self.a, self.b);
        let k = a + b + 2.0 * a * b;
        let disc = clamped_sqrt(a * a * b * b - a * b + k / h).ok_or_else(|| {
            Error::Domain(format!(
                "h = {h} lies above H(A) = {}",
                self.critical_energies().centers
            ))
        })?;
        let arg2 = (b - a - 2.0 * disc) / k;
        if arg2 < -1.0 - CLAMP_TOL {
            return Err(Error::Domain(format!(
                "theta2 is undefined below h = 1/b = {} (got h = {h})",
                1.0 / b
            )));
        }
        let theta2 = 0.5 * arg2.clamp(-1.0, 1.0).acos();
        let arg1 = (b - a + 2.0 * disc) / k;
        let (theta1, theta1_clamped) = if arg1 > 1.0 + CLAMP_TOL {
            (0.0, true)
        } else {
            (0.5 * arg1.clamp(-1.0, 1.0).acos(), false)
        };
        debug_assert!(theta1 <= theta2 + 1e-12 && theta2 <= FRAC_PI_2 + 1e-12);
        Ok(AngularBounds {
            theta1,
            theta2,
            theta1_clamped,
        })
    }
}

/// `√x` for `x ≥ −CLAMP_TOL`, treating small negative spill as zero.
fn clamped_sqrt(x: f64) -> Option<f64> {
    if x >= 0.0 {
        Some(x.sqrt())
    } else if x >= -CLAMP_TOL {
        Some(0.0)
    } else {
        None
    }
}
