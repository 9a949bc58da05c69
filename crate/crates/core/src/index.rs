use crate::error::{Error, Result};

/// Stable index `γ ∈ (1, 2]` with the exponents derived from it.
///
/// `alpha_mass = γ/(γ-1)` is the mass-scaling exponent (balls of radius `r`
/// carry mass of order `r^{alpha_mass}`) and `alpha_inv = 1/(γ-1)` is the
/// exponent of the height tail `v(a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StableIndex {
    gamma: f64,
    alpha_mass: f64,
    alpha_inv: f64,
}

impl StableIndex {
    pub fn new(gamma: f64) -> Result<Self> {
        if !gamma.is_finite() || gamma <= 1.0 || gamma > 2.0 {
            return Err(Error::domain(
                "StableIndex::new",
                format!("gamma must lie in (1, 2], got {gamma}"),
            ));
        }
        Ok(Self {
            gamma,
            alpha_mass: gamma / (gamma - 1.0),
            alpha_inv: 1.0 / (gamma - 1.0),
        })
    }

    /// The Brownian index `γ = 2`.
    pub fn brownian() -> Self {
        Self::new(2.0).expect("2 is a valid index")
    }

    #[inline]
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    #[inline]
    pub fn alpha_mass(&self) -> f64 {
        self.alpha_mass
    }

    #[inline]
    pub fn alpha_inv(&self) -> f64 {
        self.alpha_inv
    }

    /// `(γ-1)/γ`, the exponent of `λ` in the large-`λ` behaviour of the transforms.
    #[inline]
    pub fn lambda_exponent(&self) -> f64 {
        (self.gamma - 1.0) / self.gamma
    }

    #[inline]
    pub fn is_brownian(&self) -> bool {
        self.gamma == 2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range() {
        for g in [1.0, 0.5, 2.0000001, f64::NAN, f64::INFINITY, -3.0] {
            assert!(StableIndex::new(g).is_err(), "{g}");
        }
    }

    #[test]
    fn derived_exponents() {
        let idx = StableIndex::new(1.5).unwrap();
        assert_eq!(idx.alpha_mass(), 3.0);
        assert_eq!(idx.alpha_inv(), 2.0);
        let b = StableIndex::brownian();
        assert_eq!(b.alpha_mass(), 2.0);
        assert_eq!(b.alpha_inv(), 1.0);
        assert!(b.is_brownian());
        assert_eq!(b.lambda_exponent(), 0.5);
    }
}
