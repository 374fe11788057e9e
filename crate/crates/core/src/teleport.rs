//! Two-qubit teleportation through a tt̄ resource state.
//!
//! The protocol acts as a generalized depolarizing channel: Bell
//! measurement outcome i on the top side and j on the antitop side occur
//! with probability p_ij = Tr[E_i ρ]·Tr[E_j ρ], and the input is corrected
//! by τ_i⊗τ_j. The outcome→correction assignment is
//!
//! | outcome | Bell state | τ   |
//! |---------|------------|-----|
//! | E0      | Φ⁻         | σy  |
//! | E1      | Ψ⁻         | σz  |
//! | E2      | Ψ⁺         | I   |
//! | E3      | Φ⁺         | σx  |
//!
//! with Φ± = (|01⟩ ± |10⟩)/√2 and Ψ± = (|00⟩ ± |11⟩)/√2. This is the map
//! under which the Pauli sum reproduces [`teleport_output_closed`].

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{kron, pauli, ComplexMatrix, ZERO};
use crate::quantifiers::{quantify_all, QuantifierSet};
use crate::spin_density::XState;

/// Amplitude angle φ ∈ [0, π] and relative phase ϕ ∈ [0, 2π].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InputStateParams {
    pub varphi: f64,
    pub phi: f64,
}

impl InputStateParams {
    pub fn new(varphi: f64, phi: f64) -> Result<Self> {
        let s = Self { varphi, phi };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.varphi.is_finite() || !(0.0..=PI).contains(&self.varphi) {
            return Err(Error::InvalidArgument(format!(
                "varphi = {} outside [0, pi]",
                self.varphi
            )));
        }
        if !self.phi.is_finite() || !(0.0..=2.0 * PI).contains(&self.phi) {
            return Err(Error::InvalidArgument(format!(
                "phi = {} outside [0, 2pi]",
                self.phi
            )));
        }
        Ok(())
    }

    /// Amplitudes in the |00⟩, |01⟩, |10⟩, |11⟩ basis.
    pub fn ket(&self) -> [Complex64; 4] {
        let (s, c) = (0.5 * self.varphi).sin_cos();
        [
            ZERO,
            Complex64::new(s, 0.0),
            Complex64::from_polar(c, -self.phi),
            ZERO,
        ]
    }
}

/// Projectors onto the four Bell states, indexed as the outcomes E0..E3.
#[derive(Debug, Clone, PartialEq)]
pub struct BellBasis {
    pub projectors: [ComplexMatrix; 4],
}

impl BellBasis {
    pub fn new() -> Self {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let kets = [
            [ZERO, h, -h, ZERO],
            [h, ZERO, ZERO, -h],
            [h, ZERO, ZERO, h],
            [ZERO, h, h, ZERO],
        ];
        Self {
            projectors: kets.map(|k| ComplexMatrix::outer(&k).expect("length 4")),
        }
    }

    /// Local correction applied after outcome `i`.
    pub fn correction(i: usize) -> ComplexMatrix {
        match i {
            0 => pauli(2),
            1 => pauli(3),
            2 => pauli(0),
            3 => pauli(1),
            _ => panic!("Bell outcome index {i} out of range"),
        }
    }
}

impl Default for BellBasis {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutcomeProbabilities {
    /// Tr[E_i ρ] for i = 0..3.
    pub single: [f64; 4],
    pub p: [[f64; 4]; 4],
}

impl OutcomeProbabilities {
    pub fn total(&self) -> f64 {
        self.p.iter().flatten().sum()
    }
}

/// |ψ_in⟩⟨ψ_in| with sin²(φ/2) at (2,2), cos²(φ/2) at (3,3) and
/// ½e^{iϕ} sin φ at (2,3).
pub fn input_density(s: &InputStateParams) -> Result<ComplexMatrix> {
    s.validate()?;
    ComplexMatrix::outer(&s.ket())
}

pub fn outcome_probabilities(resource: &XState) -> Result<OutcomeProbabilities> {
    resource.validate()?;
    let phi_mean = 0.5 * (resource.r22 + resource.r33);
    let psi_mean = 0.5 * (resource.r11 + resource.r44);
    let single = [
        phi_mean - resource.r23.re,
        psi_mean - resource.r14.re,
        psi_mean + resource.r14.re,
        phi_mean + resource.r23.re,
    ];
    let mut p = [[0.0; 4]; 4];
    for (i, row) in p.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = single[i] * single[j];
        }
    }
    Ok(OutcomeProbabilities { single, p })
}

/// Closed-form output state.
///
/// Only the real parts of the resource coherences enter, since the Bell
/// probabilities see nothing else. The two populations r22 and r33 enter
/// through their mean.
pub fn teleport_output_closed(resource: &XState, s: &InputStateParams) -> Result<XState> {
    resource.validate()?;
    s.validate()?;
    let psi = resource.r11 + resource.r44;
    let r22 = 0.5 * (resource.r22 + resource.r33);
    let r23 = resource.r23.re;
    let r14 = resource.r14.re;
    let (sh, ch) = (0.5 * s.varphi).sin_cos();
    let (sh2, ch2) = (sh * sh, ch * ch);
    let sin = s.varphi.sin();

    let corner = 2.0 * r22 * psi;
    let out = XState {
        r11: corner,
        r22: psi * psi * sh2 + 4.0 * r22 * r22 * ch2,
        r33: psi * psi * ch2 + 4.0 * r22 * r22 * sh2,
        r44: corner,
        r14: Complex64::new(4.0 * r23 * r14 * sin * s.phi.cos(), 0.0),
        r23: 2.0
            * sin
            * (Complex64::from_polar(r23 * r23, -s.phi) + Complex64::from_polar(r14 * r14, s.phi)),
    };
    out.validate().map_err(|e| {
        Error::InternalInconsistency(format!("teleported state is not physical: {e}"))
    })?;
    Ok(out)
}

/// Σ_ij p_ij (τ_i⊗τ_j) ρ_in (τ_i⊗τ_j)† as a dense matrix.
pub fn teleport_output_generic(resource: &XState, s: &InputStateParams) -> Result<ComplexMatrix> {
    let probs = outcome_probabilities(resource)?;
    let rho_in = input_density(s)?;
    let mut out = ComplexMatrix::zeros(4)?;
    for i in 0..4 {
        for j in 0..4 {
            let u = kron(&BellBasis::correction(i), &BellBasis::correction(j))?;
            let term = u.matmul(&rho_in)?.matmul(&u.adjoint())?;
            out = out + term.scale_real(probs.p[i][j]);
        }
    }
    Ok(out)
}

/// ⟨ψ_in|ρ_out|ψ_in⟩.
pub fn fidelity_direct(s: &InputStateParams, out: &XState) -> Result<f64> {
    s.validate()?;
    let (sh, ch) = (0.5 * s.varphi).sin_cos();
    let coherence = (Complex64::from_polar(1.0, -s.phi) * out.r23).re;
    let f = sh * sh * out.r22 + ch * ch * out.r33 + s.varphi.sin() * coherence;
    Ok(f.clamp(0.0, 1.0))
}

/// Shorter closed expression for the fidelity. It drops the sin φ weight on
/// the coherence term, so it agrees with [`fidelity_direct`] only at
/// φ = π/2. Not clamped.
pub fn fidelity_closed(out: &XState, s: &InputStateParams) -> Result<f64> {
    s.validate()?;
    let (sh, ch) = (0.5 * s.varphi).sin_cos();
    Ok(out.r22 * sh * sh + out.r33 * ch * ch + (out.r23 * Complex64::from_polar(1.0, -s.phi)).re)
}

pub fn teleported_quantifiers(resource: &XState, s: &InputStateParams) -> Result<QuantifierSet> {
    quantify_all(&teleport_output_closed(resource, s)?)
}

/// ⟨ψ|·|ψ⟩ on a dense matrix, used to cross-check the X-state formulas.
pub fn expectation(s: &InputStateParams, m: &ComplexMatrix) -> Result<Complex64> {
    s.validate()?;
    if m.dim() != 4 {
        return Err(Error::InvalidArgument("expectation needs a 4x4 matrix".into()));
    }
    let ket = s.ket();
    let mut acc = ZERO;
    for i in 0..4 {
        for j in 0..4 {
            acc += ket[i].conj() * m[(i, j)] * ket[j];
        }
    }
    Ok(acc)
}
