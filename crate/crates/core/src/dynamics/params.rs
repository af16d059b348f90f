use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical constants of one superconductor run.
///
/// The figure convention is `A = ε₀ = c = λ_L = ħ = 1`, which is what
/// [`SuperconductorParams::figure_units`] builds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuperconductorParams {
    /// Conductivity amplitude σ₀ (σ₀ = 0 is the LC limit).
    pub sigma0: f64,
    /// Decay rate A of the hyperbolic conductivity σ₀/(At + 1).
    pub rate: f64,
    pub eps0: f64,
    pub c: f64,
    /// London penetration depth λ_L.
    pub lambda_l: f64,
    pub hbar: f64,
}

impl SuperconductorParams {
    pub fn new(sigma0: f64, rate: f64, eps0: f64, c: f64, lambda_l: f64, hbar: f64) -> Result<Self> {
        let p = Self {
            sigma0,
            rate,
            eps0,
            c,
            lambda_l,
            hbar,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn figure_units(sigma0: f64) -> Result<Self> {
        Self::new(sigma0, 1.0, 1.0, 1.0, 1.0, 1.0)
    }

    /// Same constants with a different σ₀.
    pub fn with_sigma0(&self, sigma0: f64) -> Result<Self> {
        Self { sigma0, ..*self }.validated()
    }

    fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        let positive = [
            ("A", self.rate),
            ("eps0", self.eps0),
            ("c", self.c),
            ("lambdaL", self.lambda_l),
            ("hbar", self.hbar),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} = {v} must be positive")));
            }
        }
        if !(self.sigma0 >= 0.0 && self.sigma0.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "sigma0 = {} must be non-negative",
                self.sigma0
            )));
        }
        let radicand_beta = self.beta_radicand();
        let square_beta = self.beta();
        if ((radicand_beta - square_beta) / square_beta).abs() > 1e-14 {
            return Err(Error::InvalidParameter(format!(
                "Bessel order mismatch: {radicand_beta} vs {square_beta}"
            )));
        }
        Ok(())
    }

    /// s = σ₀/(Aε₀), the exponent of L(t) under the hyperbolic model.
    pub fn conductivity_ratio(&self) -> f64 {
        self.sigma0 / (self.rate * self.eps0)
    }

    /// Bessel order β = (1 + s)/2.
    pub fn beta(&self) -> f64 {
        0.5 * (1.0 + self.conductivity_ratio())
    }

    /// β written as ½√(1 + 2s + s²); equal to [`Self::beta`] since the radicand is a square.
    pub fn beta_radicand(&self) -> f64 {
        let s = self.conductivity_ratio();
        0.5 * (1.0 + 2.0 * s + s * s).sqrt()
    }

    /// k = c/(λ_L A).
    pub fn k(&self) -> f64 {
        self.c / (self.lambda_l * self.rate)
    }

    /// Asymptotic squared frequency c²/λ_L².
    pub fn omega0_sq(&self) -> f64 {
        (self.c / self.lambda_l).powi(2)
    }
}

impl Default for SuperconductorParams {
    fn default() -> Self {
        Self {
            sigma0: 2.0,
            rate: 1.0,
            eps0: 1.0,
            c: 1.0,
            lambda_l: 1.0,
            hbar: 1.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_and_k_in_figure_units() {
        let p = SuperconductorParams::figure_units(2.0).unwrap();
        assert_eq!(p.beta(), 1.5);
        assert_eq!(p.k(), 1.0);
        assert_eq!(p.omega0_sq(), 1.0);
    }

    #[test]
    fn beta_perfect_square_over_range() {
        let mut s0 = 0.0;
        while s0 <= 10.0 {
            let p = SuperconductorParams::new(s0, 0.7, 1.3, 1.0, 1.0, 1.0).unwrap();
            assert!(((p.beta_radicand() - p.beta()) / p.beta()).abs() < 1e-14);
            s0 += 0.01;
        }
    }

    #[test]
    fn rejects_non_physical() {
        assert!(SuperconductorParams::figure_units(-0.1).is_err());
        assert!(SuperconductorParams::new(1.0, 0.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(SuperconductorParams::new(1.0, 1.0, 1.0, 1.0, 1.0, f64::NAN).is_err());
        assert!(SuperconductorParams::figure_units(0.0).is_ok());
    }
}
