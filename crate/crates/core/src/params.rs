//! Model constants of the perturbed system.

use crate::error::{Error, Result};
use crate::hamiltonian::Hamiltonian;

/// All constants of the perturbed vector field
///
/// ```text
/// x' = 4y(abx² − by² + 1) + εx(ux^n + vy^n − b(β+1)/(μ+1)·x^μ y^β − ux² − λ)
/// y' = 4x(ax² − aby² − 1) + εy(ux^n + vy^n + b·x^μ y^β − vy² − λ)
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    pub a: f64,
    pub b: f64,
    pub u: f64,
    pub v: f64,
    /// The detection parameter λ.
    pub lambda0: f64,
    pub epsilon: f64,
    /// Perturbation degree, even and at least 4.
    pub n: u32,
    pub mu: u32,
    pub beta: u32,
}

impl Default for SystemParams {
    /// The case study: a = 1/3, b = 1/2, n = 12 split as μ = β = 6,
    /// u = 0.007, v = −0.028, ε = 10⁻³.
    fn default() -> Self {
        Self {
            a: 1.0 / 3.0,
            b: 0.5,
            u: 0.007,
            v: -0.028,
            lambda0: 0.0,
            epsilon: 1e-3,
            n: 12,
            mu: 6,
            beta: 6,
        }
    }
}

impl SystemParams {
    /// Parameters with the given `(a, b)` and every other field at its default.
    pub fn with_ab(a: f64, b: f64) -> Result<Self> {
        let p = Self {
            a,
            b,
            ..Self::default()
        };
        p.validate()?;
        Ok(p)
    }

    /// Sets the perturbation degree, splitting it evenly between μ and β.
    pub fn with_degree(mut self, n: u32) -> Self {
        self.n = n;
        self.mu = n / 2;
        self.beta = n - n / 2;
        self
    }

    pub fn with_uv(mut self, u: f64, v: f64) -> Self {
        self.u = u;
        self.v = v;
        self
    }

    pub fn with_lambda(mut self, lambda0: f64) -> Self {
        self.lambda0 = lambda0;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.a, self.b, self.u, self.v, self.lambda0, self.epsilon]
            .iter()
            .all(|x| x.is_finite());
        if !finite {
            return Err(Error::InvalidParams("all parameters must be finite".into()));
        }
        if !(0.0 < self.a && self.a < self.b && self.b < 1.0) {
            return Err(Error::InvalidParams(format!(
                "need 0 < a < b < 1, got a = {}, b = {}",
                self.a, self.b
            )));
        }
        if self.n < 4 || !self.n.is_multiple_of(2) {
            return Err(Error::InvalidParams(format!(
                "degree n must be even and at least 4, got {}",
                self.n
            )));
        }
        if self.mu + self.beta != self.n {
            return Err(Error::InvalidParams(format!(
                "need mu + beta = n, got {} + {} != {}",
                self.mu, self.beta, self.n
            )));
        }
        if self.epsilon < 0.0 {
            return Err(Error::InvalidParams(format!(
                "epsilon must be non-negative, got {}",
                self.epsilon
            )));
        }
        Ok(())
    }

    pub fn hamiltonian(&self) -> Hamiltonian {
        Hamiltonian::new(self.a, self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        SystemParams::default().validate().unwrap();
    }

    #[test]
    fn rejects_bad_ordering() {
        assert!(SystemParams::with_ab(0.5, 0.3).is_err());
        assert!(SystemParams::with_ab(0.0, 0.3).is_err());
        assert!(SystemParams::with_ab(0.3, 1.0).is_err());
    }

    #[test]
    fn rejects_bad_degree() {
        let p = SystemParams::default();
        assert!(SystemParams {
            n: 7,
            mu: 3,
            beta: 4,
            ..p
        }
        .validate()
        .is_err());
        assert!(SystemParams {
            n: 2,
            mu: 1,
            beta: 1,
            ..p
        }
        .validate()
        .is_err());
        assert!(SystemParams { mu: 5, ..p }.validate().is_err());
        assert!(p.with_degree(10).validate().is_ok());
    }

    #[test]
    fn rejects_negative_epsilon() {
        assert!(SystemParams::default()
            .with_epsilon(-1e-3)
            .validate()
            .is_err());
    }
}
