//! Normalized correlation measures of two-qubit X states.
//!
//! All measures are invariant under local unitaries, which for X states
//! means the complex phases of r14 and r23 can be rotated away. Every
//! function here works in that gauge and reads only the moduli |r14|,
//! |r23| together with the populations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{hermitian_eigen, is_density_matrix, kron, pauli, sqrt_psd, ComplexMatrix};
use crate::spin_density::XState;
use crate::tolerance;

const SQRT_2: f64 = std::f64::consts::SQRT_2;
const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Eigenvalues of CᵀC for the correlation matrix C_ij = Tr(ρ σ_i⊗σ_j).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChshEigenvalues {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
}

impl ChshEigenvalues {
    pub fn of(x: &XState) -> Self {
        let a = x.r14.norm();
        let b = x.r23.norm();
        let zz = x.r11 - x.r22 - x.r33 + x.r44;
        Self {
            t1: 4.0 * (a + b) * (a + b),
            t2: 4.0 * (a - b) * (a - b),
            t3: zz * zz,
        }
    }

    /// Horodecki value 2√(u1 + u2), u1 ≥ u2 the two largest eigenvalues.
    pub fn chsh_value(&self) -> f64 {
        2.0 * (self.t1 + self.t2.max(self.t3)).sqrt()
    }
}

/// Non-vanishing Fano–Bloch components of an X state in the real gauge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FanoBlochComponents {
    pub s11: f64,
    pub s22: f64,
    pub s33: f64,
    pub s30: f64,
}

impl FanoBlochComponents {
    pub fn of(x: &XState) -> Self {
        let a = x.r14.norm();
        let b = x.r23.norm();
        Self {
            s11: 2.0 * (b + a),
            s22: 2.0 * (b - a),
            s33: 1.0 - 2.0 * (x.r22 + x.r33),
            s30: 2.0 * (x.r11 + x.r22) - 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantifierSet {
    pub bell: f64,
    pub steering: f64,
    pub concurrence: f64,
    pub gqd: f64,
}

/// Clamps rounding noise into `[0, upper]`; anything further out is a bug.
fn clamp_unit(name: &str, value: f64, upper: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::InternalInconsistency(format!("{name} is {value}")));
    }
    if value < -tolerance::QUANTIFIER_CLAMP || value > upper + tolerance::QUANTIFIER_CLAMP {
        return Err(Error::InternalInconsistency(format!(
            "{name} = {value} outside [0, {upper}]"
        )));
    }
    Ok(value.clamp(0.0, upper))
}

/// (B − 2)/(2√2 − 2) where B is the maximal CHSH value; zero for local states.
pub fn bell_nonlocality(x: &XState) -> Result<f64> {
    x.validate()?;
    let b = ChshEigenvalues::of(x).chsh_value();
    clamp_unit("bell", ((b - 2.0) / (2.0 * SQRT_2 - 2.0)).max(0.0), 1.0)
}

/// Three-setting steering index (F3 − 1)/(√3 − 1), F3 = √(ℂ1² + ℂ2² + ℂ3²).
pub fn steering(x: &XState) -> Result<f64> {
    x.validate()?;
    let s = FanoBlochComponents::of(x);
    let f3 = (s.s11 * s.s11 + s.s22 * s.s22 + s.s33 * s.s33).sqrt();
    clamp_unit("steering", ((f3 - 1.0) / (SQRT_3 - 1.0)).max(0.0), 1.0)
}

pub fn concurrence_xstate(x: &XState) -> Result<f64> {
    x.validate()?;
    let outer = x.r23.norm() - (x.r11.max(0.0) * x.r44.max(0.0)).sqrt();
    let inner = x.r14.norm() - (x.r22.max(0.0) * x.r33.max(0.0)).sqrt();
    clamp_unit("concurrence", 2.0 * outer.max(inner).max(0.0), 1.0)
}

/// Wootters concurrence of an arbitrary two-qubit density matrix.
pub fn concurrence_general(rho: &ComplexMatrix) -> Result<f64> {
    if rho.dim() != 4 || !is_density_matrix(rho, tolerance::DENSITY) {
        return Err(Error::InvalidArgument(
            "concurrence needs a 4x4 density matrix".into(),
        ));
    }
    let yy = kron(&pauli(2), &pauli(2))?;
    let flipped = yy.matmul(&rho.conj())?.matmul(&yy)?;
    let root = sqrt_psd(rho)?;
    let r = root.matmul(&flipped)?.matmul(&root)?;
    // r is Hermitian only up to rounding.
    let r = (r + r.adjoint()).scale_real(0.5);
    let eig = hermitian_eigen(&r)?;
    let l: Vec<f64> = eig.values.iter().map(|v| v.max(0.0).sqrt()).collect();
    clamp_unit("concurrence", (l[0] - l[1] - l[2] - l[3]).max(0.0), 1.0)
}

/// Trace-norm geometric discord, measured on the first qubit.
pub fn geometric_discord(x: &XState) -> Result<f64> {
    x.validate()?;
    discord_from_components(&FanoBlochComponents::of(x))
}

/// The discord formula evaluated on raw components. Expects |s11| ≥ |s22|,
/// which [`FanoBlochComponents::of`] guarantees.
pub fn discord_from_components(s: &FanoBlochComponents) -> Result<f64> {
    let (a2, b2, c2) = (s.s11 * s.s11, s.s22 * s.s22, s.s33 * s.s33);
    let big = (b2 + s.s30 * s.s30).max(c2);
    let small = a2.min(c2);
    let den = big - small + a2 - b2;

    let value = if den.abs() > tolerance::DISCORD_DENOMINATOR {
        let ratio = (a2 * big - b2 * small) / den;
        if ratio < -tolerance::QUANTIFIER_CLAMP {
            return Err(Error::FormulaDomain(format!(
                "discord radicand {ratio} < 0 for {s:?}"
            )));
        }
        0.5 * ratio.max(0.0).sqrt()
    } else {
        let mut m = [s.s11.abs(), s.s22.abs(), s.s33.abs()];
        m.sort_by(f64::total_cmp);
        0.5 * m[1]
    };
    clamp_unit("gqd", value, 0.5)
}

pub fn quantify_all(x: &XState) -> Result<QuantifierSet> {
    Ok(QuantifierSet {
        bell: bell_nonlocality(x)?,
        steering: steering(x)?,
        concurrence: concurrence_xstate(x)?,
        gqd: geometric_discord(x)?,
    })
}
