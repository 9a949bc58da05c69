use crate::error::{Error, Result};
use crate::index::StableIndex;
use crate::kappa::{complex, phi_brownian, shell_brownian, Kappa};
use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

pub type RealEval = Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>;
pub type ComplexEval = Arc<dyn Fn(Complex64) -> Result<Complex64> + Send + Sync>;

/// A named Laplace transform `λ ↦ E[e^{-λX}]` with enough metadata for the
/// inversion routines to choose a method.
#[derive(Clone)]
pub struct TransformHandle {
    name: String,
    real: RealEval,
    complex: Option<ComplexEval>,
    domain: (f64, f64),
    closed_form: bool,
    law: bool,
}

impl fmt::Debug for TransformHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TransformHandle")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("closed_form", &self.closed_form)
            .field("law", &self.law)
            .field("continuation", &self.complex.is_some())
            .finish()
    }
}

impl TransformHandle {
    pub fn new(
        name: impl Into<String>,
        real: RealEval,
        complex: Option<ComplexEval>,
        closed_form: bool,
        law: bool,
    ) -> Self {
        Self {
            name: name.into(),
            real,
            complex,
            domain: (0.0, f64::INFINITY),
            closed_form,
            law,
        }
    }

    /// Law of `M*`: `1 - κ_1(λ,0)^γ/λ` (`sech²√λ` when `γ = 2`).
    pub fn mstar(idx: StableIndex) -> Self {
        Self::shell(idx, 1.0).renamed(format!("mstar(gamma={})", idx.gamma()))
    }

    /// Law of a shell mass `M*_{r',r}` of width `r - r'`.
    pub fn shell(idx: StableIndex, width: f64) -> Self {
        let name = format!("shell(gamma={}, width={width})", idx.gamma());
        let cx: ComplexEval = Arc::new(move |z| complex::shell(idx, width, z));
        if idx.is_brownian() {
            let real: RealEval = Arc::new(move |l| Ok(shell_brownian(width, l)));
            return Self::new(name, real, Some(cx), true, true);
        }
        let k = Kappa::new(idx);
        let real: RealEval = Arc::new(move |l| k.shell(width, l));
        Self::new(name, real, Some(cx), false, true)
    }

    /// `Φ_{a,b}`: law of `m(B(ρ, a+b))` under `N_a`.
    pub fn ball(idx: StableIndex, a: f64, b: f64) -> Self {
        let name = format!("ball(gamma={}, a={a}, b={b})", idx.gamma());
        let cx: ComplexEval = Arc::new(move |z| complex::phi(idx, a, b, z));
        if idx.is_brownian() {
            let real: RealEval = Arc::new(move |l| Ok(phi_brownian(a, b, l)));
            return Self::new(name, real, Some(cx), true, true);
        }
        let k = Kappa::new(idx);
        let real: RealEval = Arc::new(move |l| k.phi(a, b, l));
        Self::new(name, real, Some(cx), false, true)
    }

    /// Positive stable law with transform `exp(-γ λ^{(γ-1)/γ})`.
    pub fn stable(idx: StableIndex) -> Self {
        let g = idx.gamma();
        let p = idx.lambda_exponent();
        let real: RealEval = Arc::new(move |l: f64| Ok((-g * l.powf(p)).exp()));
        let cx: ComplexEval = Arc::new(move |z| Ok(complex::stable(idx, z)));
        Self::new(format!("stable(gamma={g})"), real, Some(cx), true, true)
    }

    /// Unit mass at 0.
    pub fn unit_mass() -> Self {
        let real: RealEval = Arc::new(|_| Ok(1.0));
        let cx: ComplexEval = Arc::new(|_| Ok(Complex64::new(1.0, 0.0)));
        Self::new("unit_mass", real, Some(cx), true, true)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_domain(mut self, lo: f64, hi: f64) -> Self {
        self.domain = (lo, hi);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn is_closed_form(&self) -> bool {
        self.closed_form
    }

    pub fn is_law(&self) -> bool {
        self.law
    }

    pub fn has_continuation(&self) -> bool {
        self.complex.is_some()
    }

    pub fn eval(&self, lambda: f64) -> Result<f64> {
        let (lo, hi) = self.domain;
        if !(lambda >= lo && lambda <= hi) {
            return Err(Error::domain(
                "TransformHandle::eval",
                format!("{}: λ={lambda} outside [{lo}, {hi}]", self.name),
            ));
        }
        (self.real)(lambda)
    }

    pub fn eval_complex(&self, lambda: Complex64) -> Result<Complex64> {
        match &self.complex {
            Some(f) => f(lambda),
            None => Err(Error::Config(format!("{} has no analytic continuation", self.name))),
        }
    }
}
