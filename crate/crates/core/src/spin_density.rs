//! Spin density matrices of top–antitop pairs at leading order.
//!
//! Two independent routes produce the same X state:
//!
//! * [`correlation_coefficients`] → [`diagonalize`] → [`xstate_from_diagonal`]
//!   evaluates the helicity-basis correlations C_kk, C_kr, C_nn, C_rr,
//!   rotates the k–r block onto its principal axes and assembles
//!   ρ = ¼(I⊗I + Σ ℂ_i σ_i⊗σ_i);
//! * [`xstate_direct`] evaluates the closed-form matrix entries.
//!
//! The gluon-fusion coefficients exist in two variants, see
//! [`GluonFusionFormula`]. Only the corrected set agrees with the direct
//! closed form; the literal transcription is kept for comparison.
//!
//! The routes can disagree on the overall sign of ρ14 (the direct qq̄ form
//! carries |ρ14|). Every quantifier in this crate depends on |ρ14| and |ρ23|
//! only, so both signs describe the same physics.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{ComplexMatrix, ZERO};
use crate::tolerance;

/// Production channel of the tt̄ pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProductionChannel {
    #[serde(rename = "gg")]
    GluonFusion,
    #[serde(rename = "qq")]
    QuarkAnnihilation,
}

impl ProductionChannel {
    pub fn tag(self) -> &'static str {
        match self {
            ProductionChannel::GluonFusion => "gg",
            ProductionChannel::QuarkAnnihilation => "qq",
        }
    }
}

impl fmt::Display for ProductionChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ProductionChannel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gg" | "gluon-fusion" => Ok(ProductionChannel::GluonFusion),
            "qq" | "qqbar" | "quark-annihilation" => Ok(ProductionChannel::QuarkAnnihilation),
            other => Err(Error::InvalidArgument(format!(
                "unknown production channel `{other}` (expected gg or qq)"
            ))),
        }
    }
}

/// Which transcription of the gluon-fusion correlation coefficients to use.
///
/// `AsPrinted` carries four exponent slips relative to the closed-form
/// density matrix: the last denominator term reads β⁴(β²−1) instead of
/// β²(β²−1), C_kk has z⁴β⁴ for z⁴β², C_kr has β⁴ for β² in its z⁴ bracket
/// and C_rr has 4z⁶β⁶ for 4z⁶β⁴. `Corrected` fixes all four and reproduces
/// the direct density matrix exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum GluonFusionFormula {
    #[default]
    Corrected,
    AsPrinted,
}

/// Top velocity β and z = cos θ of the production angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KinematicPoint {
    beta: f64,
    z: f64,
}

impl KinematicPoint {
    pub fn new(beta: f64, z: f64) -> Result<Self> {
        if !beta.is_finite() || !(0.0..=1.0).contains(&beta) {
            return Err(Error::InvalidArgument(format!("beta = {beta} outside [0, 1]")));
        }
        if !z.is_finite() || !(-1.0..=1.0).contains(&z) {
            return Err(Error::InvalidArgument(format!("z = {z} outside [-1, 1]")));
        }
        Ok(Self { beta, z })
    }

    pub fn from_angle(beta: f64, theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::InvalidArgument(format!("theta = {theta} is not finite")));
        }
        Self::new(beta, theta.cos().clamp(-1.0, 1.0))
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn z(&self) -> f64 {
        self.z
    }
}

/// Non-zero helicity-basis correlations (no net polarization at leading order).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinCorrelationCoefficients {
    pub c_kk: f64,
    pub c_kr: f64,
    pub c_nn: f64,
    pub c_rr: f64,
}

/// Correlations along the principal axes; `c1 >= c2` by construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagonalCorrelations {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

/// Two-qubit X state in the basis |00⟩, |01⟩, |10⟩, |11⟩.
///
/// Only the diagonal and anti-diagonal are populated; ρ41 = ρ14* and
/// ρ32 = ρ23*.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XState {
    pub r11: f64,
    pub r22: f64,
    pub r33: f64,
    pub r44: f64,
    pub r14: Complex64,
    pub r23: Complex64,
}

impl XState {
    /// Validated constructor.
    pub fn new(r11: f64, r22: f64, r33: f64, r44: f64, r14: Complex64, r23: Complex64) -> Result<Self> {
        let x = Self {
            r11,
            r22,
            r33,
            r44,
            r14,
            r23,
        };
        x.validate()?;
        Ok(x)
    }

    pub fn real(r11: f64, r22: f64, r33: f64, r44: f64, r14: f64, r23: f64) -> Result<Self> {
        Self::new(r11, r22, r33, r44, Complex64::new(r14, 0.0), Complex64::new(r23, 0.0))
    }

    pub fn maximally_mixed() -> Self {
        Self {
            r11: 0.25,
            r22: 0.25,
            r33: 0.25,
            r44: 0.25,
            r14: ZERO,
            r23: ZERO,
        }
    }

    pub fn trace(&self) -> f64 {
        self.r11 + self.r22 + self.r33 + self.r44
    }

    /// Checks normalization, non-negative populations and the two 2×2 PSD
    /// conditions that make an X matrix a density matrix.
    pub fn validate(&self) -> Result<()> {
        let all = [
            self.r11, self.r22, self.r33, self.r44, self.r14.re, self.r14.im, self.r23.re, self.r23.im,
        ];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite X-state entry in {self:?}")));
        }
        let tr = self.trace();
        if (tr - 1.0).abs() > tolerance::XSTATE_TRACE {
            return Err(Error::UnphysicalCorrelations(format!("trace {tr} != 1")));
        }
        let diag = [self.r11, self.r22, self.r33, self.r44];
        if let Some(d) = diag.iter().find(|&&d| d < -tolerance::XSTATE_DIAGONAL) {
            return Err(Error::UnphysicalCorrelations(format!("negative population {d}")));
        }
        let bound14 = (self.r11.max(0.0) * self.r44.max(0.0)).sqrt();
        if self.r14.norm() > bound14 + tolerance::XSTATE_COHERENCE {
            return Err(Error::UnphysicalCorrelations(format!(
                "|r14| = {} exceeds sqrt(r11 r44) = {bound14}",
                self.r14.norm()
            )));
        }
        let bound23 = (self.r22.max(0.0) * self.r33.max(0.0)).sqrt();
        if self.r23.norm() > bound23 + tolerance::XSTATE_COHERENCE {
            return Err(Error::UnphysicalCorrelations(format!(
                "|r23| = {} exceeds sqrt(r22 r33) = {bound23}",
                self.r23.norm()
            )));
        }
        Ok(())
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(4).expect("valid dim");
        m[(0, 0)] = Complex64::new(self.r11, 0.0);
        m[(1, 1)] = Complex64::new(self.r22, 0.0);
        m[(2, 2)] = Complex64::new(self.r33, 0.0);
        m[(3, 3)] = Complex64::new(self.r44, 0.0);
        m[(0, 3)] = self.r14;
        m[(3, 0)] = self.r14.conj();
        m[(1, 2)] = self.r23;
        m[(2, 1)] = self.r23.conj();
        m
    }

    /// Reads an X state out of a dense 4×4 matrix. Entries off the X pattern
    /// must vanish to `tol`, and the result must pass [`XState::validate`].
    pub fn from_dense(m: &ComplexMatrix, tol: f64) -> Result<Self> {
        if m.dim() != 4 {
            return Err(Error::InvalidArgument("X state needs a 4x4 matrix".into()));
        }
        if !m.is_hermitian(tol) {
            return Err(Error::InvalidArgument("matrix is not Hermitian".into()));
        }
        for i in 0..4 {
            for j in 0..4 {
                let on_x = i == j || i + j == 3;
                if !on_x && m[(i, j)].norm() > tol {
                    return Err(Error::InvalidArgument(format!(
                        "entry ({i},{j}) = {} breaks the X pattern",
                        m[(i, j)]
                    )));
                }
            }
        }
        Self::new(
            m[(0, 0)].re,
            m[(1, 1)].re,
            m[(2, 2)].re,
            m[(3, 3)].re,
            m[(0, 3)],
            m[(1, 2)],
        )
    }

    /// Entries packed as `[r11, r22, r33, r44, |r14|, |r23|]`.
    pub fn moduli(&self) -> [f64; 6] {
        [
            self.r11,
            self.r22,
            self.r33,
            self.r44,
            self.r14.norm(),
            self.r23.norm(),
        ]
    }
}

/// β = √(1 − 4m_t²/M²) from the top mass and the pair invariant mass.
pub fn beta_from_masses(m_top: f64, m_inv: f64) -> Result<f64> {
    if !(m_top.is_finite() && m_top > 0.0 && m_inv.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "masses must be finite with m_top > 0 (got {m_top}, {m_inv})"
        )));
    }
    if m_inv < 2.0 * m_top {
        return Err(Error::BelowThreshold { m_top, m_inv });
    }
    let ratio = 2.0 * m_top / m_inv;
    Ok((1.0 - ratio * ratio).max(0.0).sqrt())
}

fn degenerate_guard(k: &KinematicPoint, denominator: f64) -> Result<()> {
    if denominator.abs() < tolerance::DEGENERATE_DENOMINATOR {
        Err(Error::DegenerateKinematics {
            beta: k.beta,
            z: k.z,
            denominator,
        })
    } else {
        Ok(())
    }
}

/// Helicity-basis correlation coefficients with the default (corrected)
/// gluon-fusion formula.
pub fn correlation_coefficients(
    channel: ProductionChannel,
    k: &KinematicPoint,
) -> Result<SpinCorrelationCoefficients> {
    correlation_coefficients_with(channel, k, GluonFusionFormula::default())
}

pub fn correlation_coefficients_with(
    channel: ProductionChannel,
    k: &KinematicPoint,
    formula: GluonFusionFormula,
) -> Result<SpinCorrelationCoefficients> {
    let b2 = k.beta * k.beta;
    let b4 = b2 * b2;
    let z = k.z;
    let z2 = z * z;
    let z4 = z2 * z2;
    let z6 = z4 * z2;
    let s = (1.0 - b2).max(0.0).sqrt();
    let sin = (1.0 - z2).max(0.0).sqrt();

    match channel {
        ProductionChannel::QuarkAnnihilation => {
            let d = 2.0 - b2 * (1.0 - z2);
            degenerate_guard(k, d)?;
            let c_kk = (-1.0 + z2) * (-b2 + 2.0 * z2 * (-2.0 + b2 + 2.0 * s)) / d;
            let c_kr = -2.0 * z * sin * (1.0 - b2 - s + z2 * (-2.0 + b2 + 2.0 * s)) / d;
            let c_nn = (-1.0 + z2) * b2 / d;
            let c_rr = (2.0 - b2 - 2.0 * z4 * (-2.0 + b2 + 2.0 * s)
                + z2 * (-4.0 + 3.0 * b2 + 4.0 * s))
                / d;
            Ok(SpinCorrelationCoefficients { c_kk, c_kr, c_nn, c_rr })
        }
        ProductionChannel::GluonFusion => {
            let printed = formula == GluonFusionFormula::AsPrinted;
            let d_tail = if printed { b4 } else { b2 };
            let d = 2.0 - 2.0 * z4 * b4 + 4.0 * (-1.0 + z2) * d_tail * (-1.0 + b2);
            degenerate_guard(k, d)?;
            let kk_inner = if printed { z4 * b4 } else { z4 * b2 };
            let kr_inner = if printed { b4 } else { b2 };
            let rr_cubic = if printed { z6 * b4 * b2 } else { z6 * b4 };

            let c_kk = (-2.0 + 4.0 * b2 - 2.0 * (2.0 - 2.0 * z2 + z4) * b4
                + 4.0 * (1.0 - z2)
                    * b2
                    * (-1.0 + kk_inner + 2.0 * z2 * (-1.0 + z2) * s
                        - 2.0 * (-1.0 + z2) * (z2 + b2)))
                / d;
            let c_kr = 4.0
                * z
                * sin
                * b2
                * (-2.0 + 2.0 * b2 + s + z2 * (3.0 - 2.0 * b2 - 3.0 * s) + z4 * (-2.0 + kr_inner + 2.0 * s))
                / d;
            let c_nn = (-2.0 + 4.0 * b2 - 2.0 * (2.0 - 2.0 * z2 + z4) * b4) / d;
            let c_rr = (-2.0 - 2.0 * (2.0 - 6.0 * z2 + 5.0 * z4) * b4
                + 4.0 * rr_cubic
                + 8.0 * (-1.0 + z2) * b2 * (-1.0 + z2 * (-1.0 + z2) * (-1.0 + s)))
                / d;
            Ok(SpinCorrelationCoefficients { c_kk, c_kr, c_nn, c_rr })
        }
    }
}

/// Eigenvalues of the k–r block, plus C_nn which is already diagonal.
pub fn diagonalize(c: &SpinCorrelationCoefficients) -> Result<DiagonalCorrelations> {
    let SpinCorrelationCoefficients { c_kk, c_kr, c_nn, c_rr } = *c;
    if ![c_kk, c_kr, c_nn, c_rr].iter().all(|x| x.is_finite()) {
        return Err(Error::InvalidArgument(format!("non-finite correlations {c:?}")));
    }
    let mean = 0.5 * (c_kk + c_rr);
    let half_gap = 0.5 * (c_kk - c_rr).hypot(2.0 * c_kr);
    Ok(DiagonalCorrelations {
        c1: mean + half_gap,
        c2: mean - half_gap,
        c3: c_nn,
    })
}

/// ρ = ¼(I⊗I + Σ ℂ_i σ_i⊗σ_i) written out in the σ_z basis.
pub fn xstate_from_diagonal(d: &DiagonalCorrelations) -> Result<XState> {
    let x = XState {
        r11: 0.25 * (1.0 + d.c3),
        r22: 0.25 * (1.0 - d.c3),
        r33: 0.25 * (1.0 - d.c3),
        r44: 0.25 * (1.0 + d.c3),
        r14: Complex64::new(0.25 * (d.c1 - d.c2), 0.0),
        r23: Complex64::new(0.25 * (d.c1 + d.c2), 0.0),
    };
    x.validate().map_err(|e| match e {
        Error::UnphysicalCorrelations(msg) => {
            Error::UnphysicalCorrelations(format!("correlations {d:?} give no density matrix: {msg}"))
        }
        other => other,
    })?;
    Ok(x)
}

/// Both routes chained: coefficients, principal axes, X state.
pub fn xstate_via_correlations(
    channel: ProductionChannel,
    k: &KinematicPoint,
    formula: GluonFusionFormula,
) -> Result<XState> {
    let c = correlation_coefficients_with(channel, k, formula)?;
    xstate_from_diagonal(&diagonalize(&c)?)
}

/// Closed-form density matrix entries.
pub fn xstate_direct(channel: ProductionChannel, k: &KinematicPoint) -> Result<XState> {
    let b2 = k.beta * k.beta;
    let z2 = k.z * k.z;

    let x = match channel {
        ProductionChannel::QuarkAnnihilation => {
            let num = 1.0 + (-1.0 + z2) * b2;
            let d = 4.0 + 2.0 * (-1.0 + z2) * b2;
            degenerate_guard(k, d)?;
            XState {
                r11: num / d,
                r22: 1.0 / d,
                r33: 1.0 / d,
                r44: num / d,
                r14: Complex64::new(num.abs() / d, 0.0),
                r23: Complex64::new(1.0 / d, 0.0),
            }
        }
        ProductionChannel::GluonFusion => {
            // Written in e = 1 − β² and w = 1 − z² so every sum below has
            // non-negative terms; the textbook form cancels catastrophically
            // as (β, |z|) → (1, 1).
            let e = (1.0 - k.beta) * (1.0 + k.beta);
            let w = (1.0 - k.z) * (1.0 + k.z);
            let wz2 = w * z2;
            let a = e + wz2 + e * w * w;
            let pop = e + w * (1.0 - e);
            let p = 2.0 * ((1.0 - e) * a + pop);
            degenerate_guard(k, -p)?;
            let radicand = (e - wz2) * (e - wz2) + 2.0 * e * w * w * (e + wz2) + e * e * w * w * w * w;
            let r11 = (1.0 - e) * a / p;
            let r22 = pop / p;
            XState {
                r11,
                r22,
                r33: r22,
                r44: r11,
                r14: Complex64::new((1.0 - e) * radicand.sqrt() / p, 0.0),
                r23: Complex64::new((w * (1.0 - e) - e) / p, 0.0),
            }
        }
    };
    x.validate()?;
    Ok(x)
}
