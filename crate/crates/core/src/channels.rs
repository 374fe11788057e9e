//! Local decoherence channels acting on the tt̄ spin state.
//!
//! A single-qubit Kraus set {K_k} acts on both qubits at once as
//! ε(ρ) = Σ_kl (K_k⊗K_l) ρ (K_k⊗K_l)†. The closed forms below are what
//! this two-sided action does to an X state; for phase damping it scales
//! the coherences by (1 − p), while acting on one qubit only would scale
//! them by √(1 − p). [`ChannelAction::FirstQubit`] keeps that variant
//! around for comparison.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{is_density_matrix, kron, pauli, ComplexMatrix};
use crate::spin_density::XState;
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NoiseKind {
    #[serde(rename = "AD")]
    AmplitudeDamping,
    #[serde(rename = "PD")]
    PhaseDamping,
    #[serde(rename = "PF")]
    PhaseFlip,
}

impl NoiseKind {
    pub const ALL: [NoiseKind; 3] = [
        NoiseKind::AmplitudeDamping,
        NoiseKind::PhaseDamping,
        NoiseKind::PhaseFlip,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            NoiseKind::AmplitudeDamping => "AD",
            NoiseKind::PhaseDamping => "PD",
            NoiseKind::PhaseFlip => "PF",
        }
    }
}

impl fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for NoiseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "AD" => Ok(NoiseKind::AmplitudeDamping),
            "PD" => Ok(NoiseKind::PhaseDamping),
            "PF" => Ok(NoiseKind::PhaseFlip),
            _ => Err(Error::InvalidArgument(format!(
                "unknown noise kind `{s}` (expected AD, PD or PF)"
            ))),
        }
    }
}

/// A channel together with its decoherence probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub kind: NoiseKind,
    pub p: f64,
}

impl NoiseSpec {
    pub fn new(kind: NoiseKind, p: f64) -> Result<Self> {
        let spec = Self { kind, p };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        check_probability(self.p)
    }
}

fn check_probability(p: f64) -> Result<()> {
    if p.is_finite() && (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("p = {p} outside [0, 1]")))
    }
}

/// Phase-flip Kraus set to build.
///
/// `AsPrinted` is {√p·I, √(1−p)·I}, which is the identity channel.
/// `Corrected` is {√p·I, √(1−p)·σz} and dephases with Γ = (1 − 2p)².
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PhaseFlipKraus {
    #[default]
    Corrected,
    AsPrinted,
}

/// Which qubits the single-qubit Kraus set acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ChannelAction {
    #[default]
    BothQubits,
    FirstQubit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    pub operators: Vec<ComplexMatrix>,
}

impl KrausSet {
    /// max |Σ K†K − I|.
    pub fn completeness_error(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(2).expect("valid dim");
        for k in &self.operators {
            sum = sum + k.adjoint() * *k;
        }
        sum.max_abs_diff(&ComplexMatrix::identity(2).expect("valid dim"))
    }
}

pub fn kraus_ops(spec: &NoiseSpec) -> Result<KrausSet> {
    kraus_ops_with(spec, PhaseFlipKraus::default())
}

pub fn kraus_ops_with(spec: &NoiseSpec, pf: PhaseFlipKraus) -> Result<KrausSet> {
    spec.validate()?;
    let p = spec.p;
    let keep = (1.0 - p).sqrt();
    let lose = p.sqrt();
    let real = |entries: [f64; 4]| ComplexMatrix::from_real_row_major(2, &entries);
    let operators = match spec.kind {
        NoiseKind::AmplitudeDamping => vec![real([1.0, 0.0, 0.0, keep])?, real([0.0, lose, 0.0, 0.0])?],
        NoiseKind::PhaseDamping => vec![real([1.0, 0.0, 0.0, keep])?, real([0.0, 0.0, 0.0, lose])?],
        NoiseKind::PhaseFlip => {
            let second = match pf {
                PhaseFlipKraus::Corrected => pauli(3),
                PhaseFlipKraus::AsPrinted => pauli(0),
            };
            vec![pauli(0).scale_real(lose), second.scale_real(keep)]
        }
    };
    let set = KrausSet { operators };
    let err = set.completeness_error();
    if err > tolerance::KRAUS_COMPLETENESS {
        return Err(Error::InternalInconsistency(format!(
            "Kraus set for {spec:?} violates completeness by {err}"
        )));
    }
    Ok(set)
}

/// Two-sided Kraus application with the default phase-flip set.
pub fn apply_channel(spec: &NoiseSpec, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    apply_channel_with(spec, rho, PhaseFlipKraus::default(), ChannelAction::BothQubits)
}

pub fn apply_channel_with(
    spec: &NoiseSpec,
    rho: &ComplexMatrix,
    pf: PhaseFlipKraus,
    action: ChannelAction,
) -> Result<ComplexMatrix> {
    if rho.dim() != 4 || !is_density_matrix(rho, tolerance::DENSITY) {
        return Err(Error::InvalidArgument(
            "channel input must be a 4x4 density matrix".into(),
        ));
    }
    let set = kraus_ops_with(spec, pf)?;
    let id = ComplexMatrix::identity(2)?;
    let mut locals = Vec::new();
    match action {
        ChannelAction::BothQubits => {
            for a in &set.operators {
                for b in &set.operators {
                    locals.push(kron(a, b)?);
                }
            }
        }
        ChannelAction::FirstQubit => {
            for a in &set.operators {
                locals.push(kron(a, &id)?);
            }
        }
    }
    let mut out = ComplexMatrix::zeros(4)?;
    for k in &locals {
        out = out + k.matmul(rho)?.matmul(&k.adjoint())?;
    }
    Ok(out)
}

/// Two-sided amplitude damping of an X state.
///
/// Populations flow towards |00⟩; with r22 = r33 this is
/// η11 = r11 + p(2r22 + p r44), η22 = η33 = (1 − p)(r22 + p r44),
/// η44 = (1 − p)² r44, and both coherences pick up a factor (1 − p).
pub fn ad_closed_form(x: &XState, p: f64) -> Result<XState> {
    check_probability(p)?;
    let q = 1.0 - p;
    Ok(XState {
        r11: x.r11 + p * (x.r22 + x.r33) + p * p * x.r44,
        r22: q * (x.r22 + p * x.r44),
        r33: q * (x.r33 + p * x.r44),
        r44: q * q * x.r44,
        r14: x.r14 * q,
        r23: x.r23 * q,
    })
}

/// Γ = (1 − 2p)² on both coherences; populations untouched.
pub fn pf_closed_form(x: &XState, p: f64) -> Result<XState> {
    check_probability(p)?;
    let g = (1.0 - 2.0 * p) * (1.0 - 2.0 * p);
    Ok(scale_coherences(x, g))
}

/// Γ = 1 − p on both coherences; populations untouched.
pub fn pd_closed_form(x: &XState, p: f64) -> Result<XState> {
    check_probability(p)?;
    Ok(scale_coherences(x, 1.0 - p))
}

fn scale_coherences(x: &XState, g: f64) -> XState {
    XState {
        r14: x.r14 * Complex64::new(g, 0.0),
        r23: x.r23 * Complex64::new(g, 0.0),
        ..*x
    }
}

pub fn closed_form(spec: &NoiseSpec, x: &XState) -> Result<XState> {
    match spec.kind {
        NoiseKind::AmplitudeDamping => ad_closed_form(x, spec.p),
        NoiseKind::PhaseDamping => pd_closed_form(x, spec.p),
        NoiseKind::PhaseFlip => pf_closed_form(x, spec.p),
    }
}
