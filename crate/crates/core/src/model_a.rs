//! Exact reduced dynamics of a qubit dephased by an infinite bosonic
//! environment, from a correlated initial state.
//!
//! The environment couples through a super-ohmic spectral profile
//! `g_h^2(w) = alpha w^(mu-1) exp(-w/w_c)` and the correlated component of
//! the initial state is a coherent state with profile
//! `f^2(w) = gamma w^(nu-1) exp(-w/w_c)`. Everything is expressed in units
//! of the cutoff (`w_c = 1`), so the stored couplings are the dimensionless
//! products `alpha_eff = alpha w_c^mu` and `gamma_eff = gamma w_c^nu`.
//!
//! With these profiles the dephasing exponents have closed forms built on
//! one master function,
//!
//! `L(w, m, t) = w Gamma(m) { 1 - cos[m arctan t] / (1 + t^2)^(m/2) }`,
//!
//! namely `r(t) = 4 L(alpha_eff, mu, t)`,
//! `s(t) = 2 L(sqrt(alpha_eff gamma_eff), k, t) - gamma_eff Gamma(nu) / 2`
//! and `Phi(t) = sqrt(alpha_eff gamma_eff) Gamma(k) sin[k arctan t] /
//! (1 + t^2)^(k/2)` with `k = (mu + nu) / 2`. The full dephasing function is
//!
//! `A(t) = C^-1 exp(-2 i eps t - r(t)) [1 - lambda + lambda exp(-2 i Phi(t) + s(t))]`.
//!
//! The closed forms are cross-checked against adaptive quadrature of the
//! defining integrals in the acceptance suite.

use num_complex::Complex64;
use thiserror::Error;

use crate::numerics::{gamma, NumericsError};
use crate::qstate::{QubitState, StateError};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("invalid parameter {name}: {message}")]
    InvalidParameter { name: &'static str, message: String },
    #[error("model produced an invalid state at t = {t}: {source}")]
    InvalidState { t: f64, source: StateError },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("number-state index {n} exceeds the cap {cap}")]
    NumberStateCap { n: u32, cap: u32 },
}

pub(crate) fn check(
    ok: bool,
    name: &'static str,
    message: impl FnOnce() -> String,
) -> Result<(), ModelError> {
    if ok {
        Ok(())
    } else {
        Err(ModelError::InvalidParameter { name, message: message() })
    }
}

pub(crate) fn check_amplitudes(
    b_plus: Complex64,
    b_minus: Complex64,
) -> Result<(), ModelError> {
    let norm = b_plus.norm_sqr() + b_minus.norm_sqr();
    check(
        (norm - 1.0).abs() <= 1e-12,
        "b_plus/b_minus",
        || format!("|b+|^2 + |b-|^2 = {norm}, must be 1"),
    )?;
    check(b_plus.norm_sqr() > 0.0 && b_minus.norm_sqr() > 0.0, "b_plus/b_minus", || {
        "both amplitudes must be non-zero".into()
    })
}

/// The complex dephasing function value at one time; multiplies the initial
/// coherence. Positivity of the state requires `|a| <= 1`.
#[derive(Debug, Clone, Copy)]
pub struct DephasingValue {
    pub a: Complex64,
}

impl DephasingValue {
    pub fn modulus(&self) -> f64 {
        self.a.norm()
    }
}

/// Parameters of the infinite-environment model. Time and all rates are in
/// units of the cutoff frequency.
#[derive(Debug, Clone, Copy)]
pub struct ModelAParams {
    /// Dimensionless coupling `alpha w_c^mu`.
    pub alpha_eff: f64,
    /// Dimensionless coherent-profile weight `gamma w_c^nu`.
    pub gamma_eff: f64,
    /// Ohmicity exponent of the coupling profile; must be positive
    /// (super-ohmic), the closed forms have a Gamma-function pole at 0.
    pub mu: f64,
    /// Exponent of the coherent-state profile; must be positive.
    pub nu: f64,
    /// Qubit energy splitting.
    pub eps: f64,
    /// Correlation parameter in `[0, 1]`; 0 is the product state.
    pub lam: f64,
    pub b_plus: Complex64,
    pub b_minus: Complex64,
}

impl ModelAParams {
    /// The parameter set used throughout the infinite-environment figures:
    /// `alpha_eff = 0.01`, `gamma_eff = 0.05`, `mu = 0.01`, `nu = 0.2`,
    /// `eps = 1`, equal amplitudes.
    pub fn reference(lam: f64) -> Self {
        let amp = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self {
            alpha_eff: 0.01,
            gamma_eff: 0.05,
            mu: 0.01,
            nu: 0.2,
            eps: 1.0,
            lam,
            b_plus: amp,
            b_minus: amp,
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        for (name, v) in [
            ("alpha_eff", self.alpha_eff),
            ("gamma_eff", self.gamma_eff),
            ("mu", self.mu),
            ("nu", self.nu),
            ("eps", self.eps),
            ("lam", self.lam),
        ] {
            check(v.is_finite(), name, || "must be finite".into())?;
        }
        check(self.alpha_eff >= 0.0, "alpha_eff", || "must be >= 0".into())?;
        check(self.gamma_eff >= 0.0, "gamma_eff", || "must be >= 0".into())?;
        // mu <= 0 would need Gamma(mu) at or beyond its pole and the
        // closed forms stop representing the defining integrals.
        check(self.mu > 0.0, "mu", || {
            format!("must be > 0 (super-ohmic); got {}", self.mu)
        })?;
        check(self.nu > 0.0, "nu", || format!("must be > 0; got {}", self.nu))?;
        check((0.0..=1.0).contains(&self.lam), "lam", || {
            format!("out of [0,1]: {}", self.lam)
        })?;
        check_amplitudes(self.b_plus, self.b_minus)
    }
}

/// Master dephasing integral in closed form:
/// `w Gamma(m) { 1 - cos[m arctan t] / (1 + t^2)^(m/2) }`.
///
/// Vanishes at `t = 0` and tends to `w Gamma(m)` as `t -> inf`, though for
/// small `m` the approach is logarithmically slow.
pub fn l_func(w: f64, m: f64, t: f64) -> Result<f64, ModelError> {
    let g = gamma(m)?;
    let one_plus_t2 = 1.0 + t * t;
    let damped = (m * t.atan()).cos() / one_plus_t2.powf(0.5 * m);
    Ok(w * g * (1.0 - damped))
}

/// The three dephasing exponents `(r, s, phi)` at time `t`.
pub fn rst_phi(p: &ModelAParams, t: f64) -> Result<(f64, f64, f64), ModelError> {
    let kappa = 0.5 * (p.mu + p.nu);
    let cross = (p.alpha_eff * p.gamma_eff).sqrt();
    let r = 4.0 * l_func(p.alpha_eff, p.mu, t)?;
    let s = 2.0 * l_func(cross, kappa, t)? - 0.5 * p.gamma_eff * gamma(p.nu)?;
    let phi = cross * gamma(kappa)? * (kappa * t.atan()).sin()
        / (1.0 + t * t).powf(0.5 * kappa);
    Ok((r, s, phi))
}

/// Vacuum/coherent-state overlap `<Omega_0|Omega_f> = exp(-gamma_eff Gamma(nu) / 2)`.
pub fn env_overlap(p: &ModelAParams) -> Result<f64, ModelError> {
    Ok((-0.5 * p.gamma_eff * gamma(p.nu)?).exp())
}

/// Normalization `C` of the correlated initial state:
/// `C^2 = (1-lam)^2 + lam^2 + 2 lam (1-lam) <Omega_0|Omega_f>`.
pub fn c_lambda_a(p: &ModelAParams) -> Result<f64, ModelError> {
    let overlap = env_overlap(p)?;
    let c2 = (1.0 - p.lam).powi(2)
        + p.lam * p.lam
        + 2.0 * p.lam * (1.0 - p.lam) * overlap;
    Ok(c2.sqrt())
}

/// Dephasing function
/// `A(t) = C^-1 e^(-2 i eps t - r) [1 - lam + lam e^(-2 i Phi + s)]`.
pub fn dephasing_a(p: &ModelAParams, t: f64) -> Result<DephasingValue, ModelError> {
    let (r, s, phi) = rst_phi(p, t)?;
    let c = c_lambda_a(p)?;
    let envelope = Complex64::new(-r, -2.0 * p.eps * t).exp();
    let bracket = Complex64::new(1.0 - p.lam, 0.0)
        + p.lam * Complex64::new(s, -2.0 * phi).exp();
    Ok(DephasingValue { a: envelope * bracket / c })
}

/// Reduced qubit state at time `t`: populations `|b+|^2`, `|b-|^2` are
/// frozen, the coherence is `b+ conj(b-) A(t)`.
pub fn rho_a(p: &ModelAParams, t: f64) -> Result<QubitState, ModelError> {
    let a = dephasing_a(p, t)?;
    build_dephased_state(p.b_plus, p.b_minus, a.a, t)
}

pub(crate) fn build_dephased_state(
    b_plus: Complex64,
    b_minus: Complex64,
    a: Complex64,
    t: f64,
) -> Result<QubitState, ModelError> {
    let state = QubitState::from_parts_unchecked(b_plus.norm_sqr(), b_plus * b_minus.conj() * a);
    if !state.validate().is_valid() {
        return Err(ModelError::InvalidState {
            t,
            source: StateError::PositivityViolated(-state.validate().positivity_margin),
        });
    }
    Ok(state)
}
