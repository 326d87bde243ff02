//! Five distance measures between qubit states, in closed Bloch form.
//!
//! For qubits every measure reduces to an expression in the Bloch radii
//! `r1`, `r2` and the dot product `r1 . r2`:
//!
//! - trace distance `D_T = |r1 - r2| / 2`
//! - Hilbert-Schmidt distance `D_HS = |r1 - r2| / sqrt(2) = sqrt(2) D_T`
//! - fidelity `F = [1 + r1.r2 + sqrt((1-r1^2)(1-r2^2))] / 2`, Bures
//!   `D_B = sqrt(2 (1 - sqrt(F)))`
//! - affinity `A`, Hellinger `D_H = sqrt(2 (1 - A))`
//! - Jensen-Shannon `D_JS^2 = H((rho1+rho2)/2) - H(rho1)/2 - H(rho2)/2`
//!   with entropies in nats, so the attainable maximum is `sqrt(ln 2)`.
//!
//! Each closed form has an independent spectral-decomposition oracle in the
//! test suites, built on [`crate::numerics::eig_hermitian2`] and
//! [`crate::numerics::sqrt_psd2`].

use thiserror::Error;

use crate::qstate::{entropy_from_radius, BlochVector, QubitState};

#[derive(Debug, Error)]
pub enum DistanceError {
    #[error("Jensen-Shannon pre-root expression out of domain: {0:e}")]
    JensenShannonDomain(f64),
}

/// Tolerance for clamping tiny negative rounding residues before roots.
const ROOT_CLAMP: f64 = 1e-12;

/// The five distance values for one state pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceRecord {
    pub d_t: f64,
    pub d_hs: f64,
    pub d_b: f64,
    pub d_h: f64,
    pub d_js: f64,
}

impl DistanceRecord {
    pub fn as_array(&self) -> [f64; 5] {
        [self.d_t, self.d_hs, self.d_b, self.d_h, self.d_js]
    }

    pub const LABELS: [&'static str; 5] = ["D_T", "D_HS", "D_B", "D_H", "D_JS"];
}

fn bloch_pair(s1: &QubitState, s2: &QubitState) -> (BlochVector, BlochVector) {
    (s1.bloch(), s2.bloch())
}

/// Trace distance `Tr|rho1 - rho2| / 2`.
pub fn trace_distance(s1: &QubitState, s2: &QubitState) -> f64 {
    let (r1, r2) = bloch_pair(s1, s2);
    0.5 * BlochVector::new(r1.x - r2.x, r1.y - r2.y, r1.z - r2.z).norm()
}

/// Hilbert-Schmidt distance `sqrt(Tr (rho1 - rho2)^2)`.
pub fn hs_distance(s1: &QubitState, s2: &QubitState) -> f64 {
    std::f64::consts::SQRT_2 * trace_distance(s1, s2)
}

/// Uhlmann fidelity, via the qubit closed form
/// `Tr(rho1 rho2) + 2 sqrt(det rho1 det rho2)`.
pub fn fidelity(s1: &QubitState, s2: &QubitState) -> f64 {
    if s1 == s2 {
        return 1.0;
    }
    let (r1, r2) = bloch_pair(s1, s2);
    let purity_term = ((1.0 - r1.norm_sqr()).max(0.0) * (1.0 - r2.norm_sqr()).max(0.0)).sqrt();
    let f = 0.5 * (1.0 + r1.dot(&r2) + purity_term);
    f.clamp(0.0, 1.0)
}

/// Bures distance `sqrt(2 [1 - sqrt(F)])`.
pub fn bures_distance(s1: &QubitState, s2: &QubitState) -> f64 {
    (2.0 * (1.0 - fidelity(s1, s2).sqrt())).max(0.0).sqrt()
}

/// Quantum affinity `Tr(sqrt(rho1) sqrt(rho2))` in closed Bloch form.
pub fn affinity(s1: &QubitState, s2: &QubitState) -> f64 {
    if s1 == s2 {
        return 1.0;
    }
    let (r1, r2) = bloch_pair(s1, s2);
    let n1 = r1.norm().min(1.0);
    let n2 = r2.norm().min(1.0);
    let num = (1.0 + (1.0 - n1 * n1).max(0.0).sqrt()) * (1.0 + (1.0 - n2 * n2).max(0.0).sqrt())
        + r1.dot(&r2);
    // Each factor is at least sqrt(2), so the denominator never vanishes.
    let den = ((1.0 + n1).sqrt() + (1.0 - n1).sqrt()) * ((1.0 + n2).sqrt() + (1.0 - n2).sqrt());
    (num / den).clamp(0.0, 1.0)
}

/// Hellinger distance `sqrt(2 [1 - A])`.
pub fn hellinger_distance(s1: &QubitState, s2: &QubitState) -> f64 {
    (2.0 * (1.0 - affinity(s1, s2))).max(0.0).sqrt()
}

/// Jensen-Shannon distance: square root of
/// `H((rho1+rho2)/2) - H(rho1)/2 - H(rho2)/2` (entropies in nats).
pub fn js_distance(s1: &QubitState, s2: &QubitState) -> Result<f64, DistanceError> {
    let (r1, r2) = bloch_pair(s1, s2);
    let mid = BlochVector::new(
        0.5 * (r1.x + r2.x),
        0.5 * (r1.y + r2.y),
        0.5 * (r1.z + r2.z),
    );
    let sq = entropy_from_radius(mid.norm())
        - 0.5 * entropy_from_radius(r1.norm())
        - 0.5 * entropy_from_radius(r2.norm());
    if !sq.is_finite() || sq < -ROOT_CLAMP {
        return Err(DistanceError::JensenShannonDomain(sq));
    }
    Ok(sq.max(0.0).sqrt())
}

/// All five measures evaluated consistently on one pair.
pub fn all_distances(s1: &QubitState, s2: &QubitState) -> Result<DistanceRecord, DistanceError> {
    Ok(DistanceRecord {
        d_t: trace_distance(s1, s2),
        d_hs: hs_distance(s1, s2),
        d_b: bures_distance(s1, s2),
        d_h: hellinger_distance(s1, s2),
        d_js: js_distance(s1, s2)?,
    })
}
