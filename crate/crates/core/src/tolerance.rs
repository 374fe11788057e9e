//! Numerical tolerances shared by every module.

/// Maximum |m - m†| entry accepted as Hermitian.
pub const HERMITIAN: f64 = 1e-10;

/// Eigenvalues in `[-PSD_CLAMP, 0)` are treated as zero before square roots.
pub const PSD_CLAMP: f64 = 1e-10;

/// Jacobi sweeps stop once the off-diagonal Frobenius norm drops below this
/// fraction of the full norm.
pub const JACOBI_REL: f64 = 1e-15;

/// Hard cap on Jacobi sweeps. Dimension 4 converges in well under ten.
pub const JACOBI_MAX_SWEEPS: usize = 64;

/// Trace of an X state must be one to this accuracy.
pub const XSTATE_TRACE: f64 = 1e-12;

/// Diagonal entries of an X state may undershoot zero by this much.
pub const XSTATE_DIAGONAL: f64 = 1e-12;

/// Slack on the |r14| <= sqrt(r11 r44) and |r23| <= sqrt(r22 r33) conditions.
pub const XSTATE_COHERENCE: f64 = 1e-9;

/// Kinematic denominators smaller than this are rejected as degenerate.
pub const DEGENERATE_DENOMINATOR: f64 = 1e-14;

/// Normalized quantifiers may over/undershoot their range by this much
/// before an error is raised instead of clamping.
pub const QUANTIFIER_CLAMP: f64 = 1e-12;

/// Below this |denominator| the discord formula switches to its
/// Bell-diagonal limit.
pub const DISCORD_DENOMINATOR: f64 = 1e-12;

/// Accuracy demanded of generic density-matrix checks.
pub const DENSITY: f64 = 1e-9;

/// Completeness of a Kraus set.
pub const KRAUS_COMPLETENESS: f64 = 1e-12;
