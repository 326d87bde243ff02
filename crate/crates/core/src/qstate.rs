//! Qubit density matrices and Bloch vectors.
//!
//! A qubit state is stored by its two independent entries: the excited-state
//! population `p` (top-left) and the coherence `coh` (top-right). The trace
//! is one by construction and the bottom-right entry is `1 - p`.

use num_complex::Complex64;
use thiserror::Error;

use crate::numerics::Hermitian2;

/// Global numerical tolerance for state validity checks.
pub const VALIDITY_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum StateError {
    #[error("population out of range: p = {0}")]
    PopulationOutOfRange(f64),
    #[error("positivity violated: |coh|^2 - p(1-p) = {0:e}")]
    PositivityViolated(f64),
    #[error("Bloch vector outside the unit ball: |r|^2 = {0}")]
    BlochTooLong(f64),
    #[error("non-finite component")]
    NonFinite,
}

/// A qubit density matrix `[[p, coh], [conj(coh), 1-p]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    /// Excited-state population (top-left entry).
    pub p: f64,
    /// Coherence (top-right entry).
    pub coh: Complex64,
}

/// Real 3-vector `r` with `rho = (1 + r . sigma) / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Outcome of [`QubitState::validate`]. Reporting only: nothing here panics
/// or errors, so invalid states can be inspected.
#[derive(Debug, Clone, Copy)]
pub struct ValidityReport {
    /// Unit trace holds structurally; recorded for completeness.
    pub trace_one: bool,
    /// `0 <= p <= 1` within tolerance.
    pub population_in_range: bool,
    /// `p(1-p) - |coh|^2`; negative beyond tolerance means a non-physical
    /// matrix.
    pub positivity_margin: f64,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.population_in_range && self.positivity_margin >= -VALIDITY_TOL
    }
}

impl QubitState {
    /// Checked constructor.
    pub fn new(p: f64, coh: Complex64) -> Result<Self, StateError> {
        if !p.is_finite() || !coh.re.is_finite() || !coh.im.is_finite() {
            return Err(StateError::NonFinite);
        }
        let state = Self::from_parts_unchecked(p, coh);
        let report = state.validate();
        if !report.population_in_range {
            return Err(StateError::PopulationOutOfRange(p));
        }
        if report.positivity_margin < -VALIDITY_TOL {
            return Err(StateError::PositivityViolated(-report.positivity_margin));
        }
        Ok(state)
    }

    /// Builds a state without checking invariants; pair with [`Self::validate`].
    pub fn from_parts_unchecked(p: f64, coh: Complex64) -> Self {
        Self { p, coh }
    }

    /// The maximally mixed state.
    pub fn maximally_mixed() -> Self {
        Self { p: 0.5, coh: Complex64::new(0.0, 0.0) }
    }

    pub fn validate(&self) -> ValidityReport {
        ValidityReport {
            trace_one: true,
            population_in_range: (-VALIDITY_TOL..=1.0 + VALIDITY_TOL).contains(&self.p),
            positivity_margin: self.p * (1.0 - self.p) - self.coh.norm_sqr(),
        }
    }

    pub fn to_matrix(&self) -> Hermitian2 {
        Hermitian2::new(self.p, 1.0 - self.p, self.coh)
    }

    pub fn bloch(&self) -> BlochVector {
        BlochVector {
            x: 2.0 * self.coh.re,
            y: -2.0 * self.coh.im,
            z: 2.0 * self.p - 1.0,
        }
    }

    /// Bloch radius; 1 for pure states, 0 for the maximally mixed state.
    pub fn bloch_radius(&self) -> f64 {
        self.bloch().norm()
    }
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }
}

/// Builds the state `(1 + r . sigma) / 2` from a Bloch vector.
pub fn from_bloch(r: &BlochVector) -> Result<QubitState, StateError> {
    if ![r.x, r.y, r.z].iter().all(|v| v.is_finite()) {
        return Err(StateError::NonFinite);
    }
    let n2 = r.norm_sqr();
    if n2 > 1.0 + VALIDITY_TOL {
        return Err(StateError::BlochTooLong(n2));
    }
    Ok(QubitState {
        p: 0.5 * (1.0 + r.z),
        coh: Complex64::new(0.5 * r.x, -0.5 * r.y),
    })
}

/// Inverse of [`from_bloch`].
pub fn to_bloch(s: &QubitState) -> BlochVector {
    s.bloch()
}

/// Radius below which a state counts as pure and the entropy limit 0 is
/// returned directly; `ln(1 - r^2)` would overflow first.
const PURE_RADIUS_TOL: f64 = 1e-12;

/// Von Neumann entropy in nats, via the closed form in the Bloch radius.
///
/// `H = ln 2 - ln(1 - r^2)/2 - (r/2) ln((1+r)/(1-r))`, with the pure-state
/// limit 0 at `r = 1`.
pub fn von_neumann_entropy(s: &QubitState) -> f64 {
    entropy_from_radius(s.bloch_radius())
}

pub(crate) fn entropy_from_radius(r: f64) -> f64 {
    if 1.0 - r < PURE_RADIUS_TOL {
        return 0.0;
    }
    if r <= 0.0 {
        return std::f64::consts::LN_2;
    }
    std::f64::consts::LN_2 - 0.5 * (1.0 - r * r).ln() - 0.5 * r * ((1.0 + r) / (1.0 - r)).ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn from_bloch_examples() {
        let mixed = from_bloch(&BlochVector::new(0.0, 0.0, 0.0)).unwrap();
        assert_eq!(mixed.p, 0.5);
        assert_eq!(mixed.coh.norm(), 0.0);

        let excited = from_bloch(&BlochVector::new(0.0, 0.0, 1.0)).unwrap();
        assert_eq!(excited.p, 1.0);
        assert_eq!(excited.coh.norm(), 0.0);

        // (1,0,0) is (1 + sigma_x)/2 entrywise.
        let plus = from_bloch(&BlochVector::new(1.0, 0.0, 0.0)).unwrap();
        assert_eq!(plus.p, 0.5);
        assert_eq!(plus.coh, Complex64::new(0.5, 0.0));
    }

    #[test]
    fn to_bloch_examples() {
        let s = QubitState::maximally_mixed();
        let r = to_bloch(&s);
        assert_eq!((r.x, r.y, r.z), (0.0, 0.0, 0.0));

        let s = QubitState::from_parts_unchecked(1.0, Complex64::new(0.0, 0.0));
        let r = to_bloch(&s);
        assert_eq!((r.x, r.y, r.z), (0.0, 0.0, 1.0));

        // Invert x - i y = 2 coh.
        let s = QubitState::from_parts_unchecked(0.5, Complex64::new(0.3, -0.1));
        let r = to_bloch(&s);
        assert!((r.x - 0.6).abs() < 1e-15);
        assert!((r.y - 0.2).abs() < 1e-15);
        assert!(r.z.abs() < 1e-15);
    }

    #[test]
    fn from_bloch_rejects_long_vectors() {
        let r = BlochVector::new(0.8, 0.8, 0.0);
        assert!(matches!(from_bloch(&r), Err(StateError::BlochTooLong(_))));
    }

    #[test]
    fn entropy_limits_and_midpoint() {
        assert!((von_neumann_entropy(&QubitState::maximally_mixed()) - LN_2).abs() < 1e-15);

        let pure = from_bloch(&BlochVector::new(0.0, 0.0, 1.0)).unwrap();
        assert_eq!(von_neumann_entropy(&pure), 0.0);

        // Eigenvalue oracle at r = 0.5: -(0.75 ln 0.75 + 0.25 ln 0.25).
        let s = from_bloch(&BlochVector::new(0.5, 0.0, 0.0)).unwrap();
        assert!((von_neumann_entropy(&s) - 0.562_335_144_618_808_35).abs() < 1e-14);
    }

    #[test]
    fn validate_examples() {
        let bad = QubitState::from_parts_unchecked(0.5, Complex64::new(0.6, 0.0));
        assert!(!bad.validate().is_valid());

        let pure = QubitState::from_parts_unchecked(1.0, Complex64::new(0.0, 0.0));
        assert!(pure.validate().is_valid());

        // Boundary pure state on the equator.
        let boundary = QubitState::from_parts_unchecked(0.5, Complex64::new(0.5, 0.0));
        let report = boundary.validate();
        assert!(report.is_valid());
        assert!(report.positivity_margin.abs() <= VALIDITY_TOL);
    }

    #[test]
    fn checked_constructor_rejects_bad_states() {
        assert!(QubitState::new(1.2, Complex64::new(0.0, 0.0)).is_err());
        assert!(QubitState::new(0.5, Complex64::new(0.6, 0.0)).is_err());
        assert!(QubitState::new(f64::NAN, Complex64::new(0.0, 0.0)).is_err());
        assert!(QubitState::new(0.5, Complex64::new(0.3, -0.2)).is_ok());
    }
}
