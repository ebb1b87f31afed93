//! Minimal bivariate polynomials, enough to differentiate the perturbation
//! terms symbolically.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monomial {
    pub coef: f64,
    pub px: u32,
    pub py: u32,
}

impl Monomial {
    pub fn new(coef: f64, px: u32, py: u32) -> Self {
        Self { coef, px, py }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.coef * x.powi(self.px as i32) * y.powi(self.py as i32)
    }

    fn d_dx(&self) -> Option<Monomial> {
        (self.px > 0).then(|| Monomial::new(self.coef * self.px as f64, self.px - 1, self.py))
    }

    fn d_dy(&self) -> Option<Monomial> {
        (self.py > 0).then(|| Monomial::new(self.coef * self.py as f64, self.px, self.py - 1))
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Polynomial {
    pub terms: Vec<Monomial>,
}

impl Polynomial {
    pub fn new(terms: Vec<Monomial>) -> Self {
        Self { terms }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.terms.iter().map(|m| m.eval(x, y)).sum()
    }

    /// Sum of the absolute values of the terms at `(x, y)`; the natural
    /// scale for rounding error in [`Polynomial::eval`].
    pub fn magnitude(&self, x: f64, y: f64) -> f64 {
        self.terms.iter().map(|m| m.eval(x, y).abs()).sum()
    }

    pub fn d_dx(&self) -> Polynomial {
        Polynomial::new(self.terms.iter().filter_map(Monomial::d_dx).collect())
    }

    pub fn d_dy(&self) -> Polynomial {
        Polynomial::new(self.terms.iter().filter_map(Monomial::d_dy).collect())
    }
}

impl std::ops::Add for Polynomial {
    type Output = Polynomial;

    fn add(mut self, other: Polynomial) -> Polynomial {
        self.terms.extend(other.terms);
        self
    }
}
