//! Shared test support: spectral-decomposition oracles for the five
//! distance measures, quadrature oracles for the model-A exponents, and
//! seeded random-state samplers.
//!
//! The oracles deliberately avoid the closed Bloch forms used by the
//! production paths: distances go through `eig_hermitian2`/`sqrt_psd2` on
//! the dense 2x2 matrices, and the dephasing exponents go through adaptive
//! quadrature of their defining integrals.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qdlab_core::numerics::{eig_hermitian2, quad_semiinf, sqrt_psd2, Hermitian2};
use qdlab_core::qstate::{from_bloch, BlochVector, QubitState};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform sample from the closed unit ball, with a 10% chance of being
/// projected onto the sphere so pure states stay represented.
pub fn random_bloch(rng: &mut ChaCha8Rng) -> BlochVector {
    loop {
        let x = rng.gen_range(-1.0..1.0);
        let y = rng.gen_range(-1.0..1.0);
        let z = rng.gen_range(-1.0..1.0);
        let v = BlochVector::new(x, y, z);
        let n = v.norm();
        if n * n <= 1.0 && n > 1e-6 {
            if rng.gen_bool(0.1) {
                return BlochVector::new(x / n, y / n, z / n);
            }
            return v;
        }
    }
}

pub fn random_state(rng: &mut ChaCha8Rng) -> QubitState {
    from_bloch(&random_bloch(rng)).expect("sampled inside the ball")
}

/// Sample strictly inside the ball (radius <= 0.999). Useful where a check
/// would otherwise be dominated by the infinite radial derivative of
/// `sqrt(1 - r^2)` at the surface.
pub fn random_bloch_interior(rng: &mut ChaCha8Rng) -> BlochVector {
    loop {
        let x = rng.gen_range(-1.0..1.0);
        let y = rng.gen_range(-1.0..1.0);
        let z = rng.gen_range(-1.0..1.0);
        let v = BlochVector::new(x, y, z);
        if v.norm() <= 0.999 {
            return v;
        }
    }
}

/// Uniform rotation of a Bloch vector (unit quaternion via rejection).
pub fn random_rotation(rng: &mut ChaCha8Rng) -> [f64; 4] {
    loop {
        let q: [f64; 4] = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let n2: f64 = q.iter().map(|v| v * v).sum();
        if n2 > 1e-4 && n2 <= 1.0 {
            let n = n2.sqrt();
            return [q[0] / n, q[1] / n, q[2] / n, q[3] / n];
        }
    }
}

pub fn rotate(q: &[f64; 4], v: &BlochVector) -> BlochVector {
    let (w, x, y, z) = (q[0], q[1], q[2], q[3]);
    // Rotation matrix of the unit quaternion (w, x, y, z).
    let m = [
        [
            1.0 - 2.0 * (y * y + z * z),
            2.0 * (x * y - w * z),
            2.0 * (x * z + w * y),
        ],
        [
            2.0 * (x * y + w * z),
            1.0 - 2.0 * (x * x + z * z),
            2.0 * (y * z - w * x),
        ],
        [
            2.0 * (x * z - w * y),
            2.0 * (y * z + w * x),
            1.0 - 2.0 * (x * x + y * y),
        ],
    ];
    BlochVector::new(
        m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
        m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
        m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
    )
}

// ---------------------------------------------------------------------
// dense 2x2 complex helpers for the Uhlmann chain
// ---------------------------------------------------------------------

#[derive(Clone, Copy)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn from_hermitian(h: &Hermitian2) -> Self {
        Mat2([[Complex64::new(h.a, 0.0), h.c], [h.c.conj(), Complex64::new(h.d, 0.0)]])
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &other.0;
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }

    /// Interprets a numerically-Hermitian product as `Hermitian2`.
    pub fn to_hermitian(&self) -> Hermitian2 {
        let m = &self.0;
        assert!(m[0][0].im.abs() < 1e-10 && m[1][1].im.abs() < 1e-10);
        assert!((m[0][1] - m[1][0].conj()).norm() < 1e-10);
        Hermitian2::new(m[0][0].re, m[1][1].re, 0.5 * (m[0][1] + m[1][0].conj()))
    }
}

// ---------------------------------------------------------------------
// spectral-decomposition oracles for the five measures
// ---------------------------------------------------------------------

pub fn trace_oracle(s1: &QubitState, s2: &QubitState) -> f64 {
    let delta = s1.to_matrix().sub(&s2.to_matrix());
    let eig = eig_hermitian2(&delta);
    0.5 * (eig.values[0].abs() + eig.values[1].abs())
}

pub fn hs_oracle(s1: &QubitState, s2: &QubitState) -> f64 {
    let delta = s1.to_matrix().sub(&s2.to_matrix());
    let eig = eig_hermitian2(&delta);
    (eig.values[0].powi(2) + eig.values[1].powi(2)).sqrt()
}

/// Uhlmann fidelity `[Tr sqrt(sqrt(rho1) rho2 sqrt(rho1))]^2`.
pub fn fidelity_oracle(s1: &QubitState, s2: &QubitState) -> f64 {
    let root1 = sqrt_psd2(&s1.to_matrix()).expect("rho1 is PSD");
    let m = Mat2::from_hermitian(&root1)
        .mul(&Mat2::from_hermitian(&s2.to_matrix()))
        .mul(&Mat2::from_hermitian(&root1));
    let inner = sqrt_psd2(&m.to_hermitian()).expect("sandwich is PSD");
    inner.trace().powi(2)
}

pub fn bures_oracle(s1: &QubitState, s2: &QubitState) -> f64 {
    (2.0 * (1.0 - fidelity_oracle(s1, s2).sqrt())).max(0.0).sqrt()
}

/// Affinity `Tr(sqrt(rho1) sqrt(rho2))`.
pub fn affinity_oracle(s1: &QubitState, s2: &QubitState) -> f64 {
    let a = sqrt_psd2(&s1.to_matrix()).expect("rho1 is PSD");
    let b = sqrt_psd2(&s2.to_matrix()).expect("rho2 is PSD");
    a.a * b.a + a.d * b.d + 2.0 * (a.c * b.c.conj()).re
}

/// Hellinger distance `sqrt(Tr (sqrt(rho1) - sqrt(rho2))^2)`.
pub fn hellinger_oracle(s1: &QubitState, s2: &QubitState) -> f64 {
    let a = sqrt_psd2(&s1.to_matrix()).expect("rho1 is PSD");
    let b = sqrt_psd2(&s2.to_matrix()).expect("rho2 is PSD");
    let d = a.sub(&b);
    (d.a * d.a + d.d * d.d + 2.0 * d.c.norm_sqr()).max(0.0).sqrt()
}

/// Spectral von Neumann entropy `-sum lambda ln lambda` (0 ln 0 := 0).
pub fn entropy_oracle(s: &QubitState) -> f64 {
    let eig = eig_hermitian2(&s.to_matrix());
    let mut h = 0.0;
    for lam in eig.values {
        if lam > 1e-15 {
            h -= lam * lam.ln();
        }
    }
    h
}

pub fn js_oracle(s1: &QubitState, s2: &QubitState) -> f64 {
    let mid = QubitState::from_parts_unchecked(
        0.5 * (s1.p + s2.p),
        0.5 * (s1.coh + s2.coh),
    );
    let sq = entropy_oracle(&mid) - 0.5 * entropy_oracle(s1) - 0.5 * entropy_oracle(s2);
    sq.max(0.0).sqrt()
}

/// All five oracle values in the `DistanceRecord` order.
pub fn oracle_record(s1: &QubitState, s2: &QubitState) -> [f64; 5] {
    [
        trace_oracle(s1, s2),
        hs_oracle(s1, s2),
        bures_oracle(s1, s2),
        hellinger_oracle(s1, s2),
        js_oracle(s1, s2),
    ]
}

// ---------------------------------------------------------------------
// quadrature oracles for the model-A dephasing exponents
// ---------------------------------------------------------------------

pub struct EnvProfileA {
    pub alpha_eff: f64,
    pub gamma_eff: f64,
    pub mu: f64,
    pub nu: f64,
}

/// `r(t) = 4 integral g_h^2(w) [1 - cos(w t)] dw`.
pub fn r_quad(p: &EnvProfileA, t: f64, tol: f64) -> f64 {
    let (alpha, mu) = (p.alpha_eff, p.mu);
    quad_semiinf(
        move |w| 4.0 * alpha * w.powf(mu - 1.0) * (-w).exp() * (1.0 - (w * t).cos()),
        tol,
    )
    .expect("r integrand is tame")
}

/// `s(t) = 2 integral g_h f [1 - cos(w t)] dw - integral f^2 dw / 2`.
pub fn s_quad(p: &EnvProfileA, t: f64, tol: f64) -> f64 {
    let cross = (p.alpha_eff * p.gamma_eff).sqrt();
    let kappa = 0.5 * (p.mu + p.nu);
    let (gamma_eff, nu) = (p.gamma_eff, p.nu);
    let swing = quad_semiinf(
        move |w| 2.0 * cross * w.powf(kappa - 1.0) * (-w).exp() * (1.0 - (w * t).cos()),
        tol,
    )
    .expect("s integrand is tame");
    let constant = quad_semiinf(
        move |w| 0.5 * gamma_eff * w.powf(nu - 1.0) * (-w).exp(),
        tol,
    )
    .expect("f^2 integrand is tame");
    swing - constant
}

/// `Phi(t) = integral g_h f sin(w t) dw`.
pub fn phi_quad(p: &EnvProfileA, t: f64, tol: f64) -> f64 {
    let cross = (p.alpha_eff * p.gamma_eff).sqrt();
    let kappa = 0.5 * (p.mu + p.nu);
    quad_semiinf(
        move |w| cross * w.powf(kappa - 1.0) * (-w).exp() * (w * t).sin(),
        tol,
    )
    .expect("phi integrand is tame")
}
