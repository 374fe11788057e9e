//! Grid sweeps over kinematics, noise and teleportation inputs.
//!
//! A [`SweepConfig`] is a TOML document:
//!
//! ```toml
//! channel = "gg"                     # or "qq"
//! beta  = { min = 0.0, max = 0.999999, steps = 100 }
//! theta = { min = 0.0, max = 3.141592653589793, steps = 100 }
//!
//! [noise]                            # optional
//! kind = "AD"                        # AD, PD or PF
//! p = { min = 0.0, max = 1.0, steps = 101 }
//!
//! [teleport]                         # optional
//! varphi = { min = 1.5707963267948966, max = 1.5707963267948966, steps = 1 }
//! phi = { min = 0.0, max = 0.0, steps = 1 }
//!
//! [output]                           # optional
//! format = "csv"                     # or "json"
//! path = "surface.csv"               # stdout when absent
//! ```
//!
//! Grids include both endpoints. A one-point grid needs `min == max`.
//! Rows come out with β outermost, then θ, p, φ and ϕ, whatever order the
//! worker threads finish in. With a `[teleport]` section the quantifier
//! columns describe the teleported state rather than the resource.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::{closed_form, NoiseKind, NoiseSpec};
use crate::error::{Error, Result};
use crate::quantifiers::{quantify_all, QuantifierSet};
use crate::spin_density::{xstate_direct, KinematicPoint, ProductionChannel};
use crate::teleport::{fidelity_closed, fidelity_direct, teleport_output_closed, InputStateParams};

/// Largest β accepted other than an exact 1.
pub const BETA_CAP: f64 = 0.999_999;

/// How far θ must stay from 0 and π when β = 1 is on the grid.
pub const THETA_MARGIN_AT_UNIT_BETA: f64 = 1e-6;

/// θ endpoints used by the β = 1 presets.
pub const PRESET_THETA_MARGIN: f64 = 1e-3;

pub const CSV_HEADER: [&str; 15] = [
    "channel",
    "beta",
    "theta",
    "z",
    "kind",
    "p",
    "varphi",
    "phi",
    "bell",
    "steering",
    "concurrence",
    "gqd",
    "fidelity_direct",
    "fidelity_closed",
    "status",
];

pub const PRESET_NAMES: [&str; 30] = [
    "fig1a", "fig1b", "fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b",
    "figDe-ad", "figDe-pd", "figDe-pf",
    "figF1-a", "figF1-b", "figF1-c",
    "figF2-a", "figF2-b", "figF2-c",
    "figF3-ad", "figF3-pd", "figF3-pf",
    "figQCs1-a", "figQCs1-b", "figQCs2-a", "figQCs2-b",
    "figTe-ad", "figTe-pd", "figTe-pf",
    "figF4-ad", "figF4-pd", "figF4-pf",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Grid {
    pub fn new(min: f64, max: f64, steps: usize) -> Self {
        Self { min, max, steps }
    }

    pub fn fixed(value: f64) -> Self {
        Self::new(value, value, 1)
    }

    fn validate(&self, name: &str, lo: f64, hi: f64) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::Config(format!("{name}: steps must be at least 1")));
        }
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::Config(format!("{name}: bounds must be finite")));
        }
        if self.min > self.max {
            return Err(Error::Config(format!("{name}: min {} > max {}", self.min, self.max)));
        }
        if self.steps == 1 && self.min != self.max {
            return Err(Error::Config(format!("{name}: a one-point grid needs min == max")));
        }
        if self.min < lo || self.max > hi {
            return Err(Error::Config(format!(
                "{name}: [{}, {}] leaves the domain [{lo}, {hi}]",
                self.min, self.max
            )));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        if self.steps <= 1 {
            return vec![self.min];
        }
        let last = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == last {
                    self.max
                } else {
                    self.min + (self.max - self.min) * (i as f64) / (last as f64)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseGrid {
    pub kind: NoiseKind,
    pub p: Grid,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TeleportGrid {
    pub varphi: Grid,
    pub phi: Grid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Config(format!("unknown output format `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub channel: ProductionChannel,
    pub beta: Grid,
    pub theta: Grid,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise: Option<NoiseGrid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub teleport: Option<TeleportGrid>,
    #[serde(default)]
    pub output: OutputSpec,
}

impl SweepConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: SweepConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        self.beta.validate("beta", 0.0, 1.0)?;
        self.theta.validate("theta", 0.0, PI)?;
        let betas = self.beta.points();
        if let Some(b) = betas.iter().find(|&&b| b > BETA_CAP && b != 1.0) {
            return Err(Error::Config(format!(
                "beta {b} lies between {BETA_CAP} and 1; use the cap or exactly 1"
            )));
        }
        if betas.contains(&1.0) {
            let too_close = self
                .theta
                .points()
                .into_iter()
                .any(|t| t.min(PI - t) < THETA_MARGIN_AT_UNIT_BETA);
            if too_close {
                return Err(Error::Config(format!(
                    "beta = 1 needs theta at least {THETA_MARGIN_AT_UNIT_BETA} away from 0 and pi"
                )));
            }
        }
        if let Some(n) = &self.noise {
            n.p.validate("noise.p", 0.0, 1.0)?;
        }
        if let Some(t) = &self.teleport {
            t.varphi.validate("teleport.varphi", 0.0, PI)?;
            t.phi.validate("teleport.phi", 0.0, 2.0 * PI)?;
        }
        Ok(())
    }

    pub fn point_count(&self) -> usize {
        let noise = self.noise.map_or(1, |n| n.p.steps);
        let tele = self.teleport.map_or(1, |t| t.varphi.steps * t.phi.steps);
        self.beta.steps * self.theta.steps * noise * tele
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Ok,
    Degenerate,
}

impl RowStatus {
    pub fn tag(self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::Degenerate => "degenerate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub channel: ProductionChannel,
    pub beta: f64,
    pub theta: f64,
    pub z: f64,
    pub kind: Option<NoiseKind>,
    pub p: Option<f64>,
    pub varphi: Option<f64>,
    pub phi: Option<f64>,
    pub bell: Option<f64>,
    pub steering: Option<f64>,
    pub concurrence: Option<f64>,
    pub gqd: Option<f64>,
    pub fidelity_direct: Option<f64>,
    pub fidelity_closed: Option<f64>,
    pub status: RowStatus,
}

impl SweepRow {
    pub fn quantifiers(&self) -> Option<QuantifierSet> {
        Some(QuantifierSet {
            bell: self.bell?,
            steering: self.steering?,
            concurrence: self.concurrence?,
            gqd: self.gqd?,
        })
    }
}

#[derive(Debug, Clone, Copy)]
struct GridPoint {
    beta: f64,
    theta: f64,
    noise: Option<NoiseSpec>,
    input: Option<InputStateParams>,
}

fn grid_points(cfg: &SweepConfig) -> Vec<GridPoint> {
    let noise: Vec<Option<NoiseSpec>> = match cfg.noise {
        Some(n) => n.p.points().into_iter().map(|p| Some(NoiseSpec { kind: n.kind, p })).collect(),
        None => vec![None],
    };
    let inputs: Vec<Option<InputStateParams>> = match cfg.teleport {
        Some(t) => {
            let phis = t.phi.points();
            t.varphi
                .points()
                .into_iter()
                .flat_map(|varphi| phis.iter().map(move |&phi| Some(InputStateParams { varphi, phi })))
                .collect()
        }
        None => vec![None],
    };
    let thetas = cfg.theta.points();
    let mut out = Vec::with_capacity(cfg.point_count());
    for beta in cfg.beta.points() {
        for &theta in &thetas {
            for &noise in &noise {
                for &input in &inputs {
                    out.push(GridPoint { beta, theta, noise, input });
                }
            }
        }
    }
    out
}

fn evaluate(channel: ProductionChannel, pt: &GridPoint) -> Result<SweepRow> {
    let k = KinematicPoint::from_angle(pt.beta, pt.theta)?;
    let mut row = SweepRow {
        channel,
        beta: pt.beta,
        theta: pt.theta,
        z: k.z(),
        kind: pt.noise.map(|n| n.kind),
        p: pt.noise.map(|n| n.p),
        varphi: pt.input.map(|s| s.varphi),
        phi: pt.input.map(|s| s.phi),
        bell: None,
        steering: None,
        concurrence: None,
        gqd: None,
        fidelity_direct: None,
        fidelity_closed: None,
        status: RowStatus::Ok,
    };
    let mut x = match xstate_direct(channel, &k) {
        Ok(x) => x,
        Err(Error::DegenerateKinematics { .. }) => {
            row.status = RowStatus::Degenerate;
            return Ok(row);
        }
        Err(e) => return Err(e),
    };
    if let Some(n) = &pt.noise {
        x = closed_form(n, &x)?;
    }
    let q = match &pt.input {
        Some(s) => {
            let out = teleport_output_closed(&x, s)?;
            row.fidelity_direct = Some(fidelity_direct(s, &out)?);
            row.fidelity_closed = Some(fidelity_closed(&out, s)?);
            quantify_all(&out)?
        }
        None => quantify_all(&x)?,
    };
    row.bell = Some(q.bell);
    row.steering = Some(q.steering);
    row.concurrence = Some(q.concurrence);
    row.gqd = Some(q.gqd);
    Ok(row)
}

/// Evaluates every grid point in parallel and returns the rows in grid order.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    grid_points(cfg)
        .par_iter()
        .map(|pt| evaluate(cfg.channel, pt))
        .collect()
}

fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_float).unwrap_or_default()
}

fn csv_record(r: &SweepRow) -> [String; 15] {
    [
        r.channel.tag().to_string(),
        fmt_float(r.beta),
        fmt_float(r.theta),
        fmt_float(r.z),
        r.kind.map(|k| k.tag().to_string()).unwrap_or_default(),
        fmt_opt(r.p),
        fmt_opt(r.varphi),
        fmt_opt(r.phi),
        fmt_opt(r.bell),
        fmt_opt(r.steering),
        fmt_opt(r.concurrence),
        fmt_opt(r.gqd),
        fmt_opt(r.fidelity_direct),
        fmt_opt(r.fidelity_closed),
        r.status.tag().to_string(),
    ]
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in rows {
        w.write_record(csv_record(r)).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct JsonDocument<'a> {
    config: &'a SweepConfig,
    rows: &'a [SweepRow],
}

pub fn write_json<W: Write>(cfg: &SweepConfig, rows: &[SweepRow], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, &JsonDocument { config: cfg, rows })
        .map_err(|e| Error::Io(e.to_string()))?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn write_rows<W: Write>(cfg: &SweepConfig, rows: &[SweepRow], format: OutputFormat, out: W) -> Result<()> {
    match format {
        OutputFormat::Csv => write_csv(rows, out),
        OutputFormat::Json => write_json(cfg, rows, out),
    }
}

/// Largest difference between any quantifier or fidelity of a row and the
/// row at the mirrored angle π − θ, with the number of pairs compared.
/// Rows without a mirror partner on the grid are skipped.
pub fn theta_mirror_deviation(rows: &[SweepRow]) -> (f64, usize) {
    type Key = (u64, Option<u64>, Option<u64>, Option<u64>);
    let key = |r: &SweepRow| -> Key {
        (
            r.beta.to_bits(),
            r.p.map(f64::to_bits),
            r.varphi.map(f64::to_bits),
            r.phi.map(f64::to_bits),
        )
    };
    let cols = |r: &SweepRow| [r.bell, r.steering, r.concurrence, r.gqd, r.fidelity_direct, r.fidelity_closed];

    let mut groups: BTreeMap<Key, Vec<&SweepRow>> = BTreeMap::new();
    for r in rows {
        groups.entry(key(r)).or_default().push(r);
    }
    let mut worst = 0.0f64;
    let mut pairs = 0;
    for group in groups.values_mut() {
        group.sort_by(|a, b| a.theta.total_cmp(&b.theta));
        let n = group.len();
        for i in 0..n / 2 {
            let (a, b) = (group[i], group[n - 1 - i]);
            if (a.theta + b.theta - PI).abs() > 1e-12 {
                continue;
            }
            pairs += 1;
            for (u, v) in cols(a).into_iter().zip(cols(b)) {
                if let (Some(u), Some(v)) = (u, v) {
                    worst = worst.max((u - v).abs());
                }
            }
        }
    }
    (worst, pairs)
}

/// β reached at invariant mass `multiple · m_t`.
fn beta_at_mass_multiple(multiple: f64) -> f64 {
    (1.0 - 4.0 / (multiple * multiple)).sqrt()
}

const RES: usize = 100;

fn kinematic_plane(channel: ProductionChannel) -> SweepConfig {
    SweepConfig {
        channel,
        beta: Grid::new(0.0, BETA_CAP, RES),
        theta: Grid::new(0.0, PI, RES),
        noise: None,
        teleport: None,
        output: OutputSpec::default(),
    }
}

fn unit_beta_noise_plane(kind: NoiseKind) -> SweepConfig {
    SweepConfig {
        channel: ProductionChannel::GluonFusion,
        beta: Grid::fixed(1.0),
        theta: Grid::new(PRESET_THETA_MARGIN, PI - PRESET_THETA_MARGIN, RES),
        noise: Some(NoiseGrid { kind, p: Grid::new(0.0, 1.0, RES) }),
        teleport: None,
        output: OutputSpec::default(),
    }
}

fn teleport_fixed(varphi: f64, phi: f64) -> Option<TeleportGrid> {
    Some(TeleportGrid { varphi: Grid::fixed(varphi), phi: Grid::fixed(phi) })
}

/// Committed configuration for each named surface. All planes use
/// 100 × 100 points.
pub fn preset(name: &str) -> Result<SweepConfig> {
    use ProductionChannel::{GluonFusion as Gg, QuarkAnnihilation as Qq};

    let channel_of = |suffix: &str| match suffix {
        "a" => Some(Gg),
        "b" => Some(Qq),
        _ => None,
    };
    let kind_of = |suffix: &str| match suffix {
        "ad" => Some(NoiseKind::AmplitudeDamping),
        "pd" => Some(NoiseKind::PhaseDamping),
        "pf" => Some(NoiseKind::PhaseFlip),
        _ => None,
    };
    let unknown = || Error::UnknownPreset(name.to_string());

    let cfg = if let Some(rest) = name.strip_prefix("fig").filter(|r| r.len() == 2 && r.as_bytes()[0].is_ascii_digit()) {
        // fig1a .. fig4b: bare (β, θ) planes.
        if !(b'1'..=b'4').contains(&rest.as_bytes()[0]) {
            return Err(unknown());
        }
        kinematic_plane(channel_of(&rest[1..]).ok_or_else(unknown)?)
    } else if let Some(kind) = name.strip_prefix("figDe-").map(kind_of) {
        unit_beta_noise_plane(kind.ok_or_else(unknown)?)
    } else if let Some((channel, panel)) = name
        .strip_prefix("figF1-")
        .map(|p| (Gg, p))
        .or_else(|| name.strip_prefix("figF2-").map(|p| (Qq, p)))
    {
        let mut cfg = kinematic_plane(channel);
        match panel {
            "a" => cfg.teleport = teleport_fixed(FRAC_PI_2, 0.0),
            "b" => {
                cfg.theta = Grid::fixed(FRAC_PI_2);
                cfg.teleport = Some(TeleportGrid { varphi: Grid::new(0.0, PI, RES), phi: Grid::fixed(0.0) });
            }
            "c" => {
                cfg.theta = Grid::fixed(FRAC_PI_2);
                cfg.teleport = Some(TeleportGrid { varphi: Grid::fixed(FRAC_PI_2), phi: Grid::new(0.0, 2.0 * PI, RES) });
            }
            _ => return Err(unknown()),
        }
        cfg
    } else if let Some(kind) = name.strip_prefix("figF3-").map(kind_of) {
        let mut cfg = unit_beta_noise_plane(kind.ok_or_else(unknown)?);
        cfg.teleport = teleport_fixed(FRAC_PI_2, 0.0);
        cfg
    } else if let Some(kind) = name.strip_prefix("figF4-").map(kind_of) {
        // (φ, p) plane at θ = π/2 for ϕ = 0 and ϕ = π/2.
        let mut cfg = unit_beta_noise_plane(kind.ok_or_else(unknown)?);
        cfg.theta = Grid::fixed(FRAC_PI_2);
        cfg.teleport = Some(TeleportGrid { varphi: Grid::new(0.0, PI, RES), phi: Grid::new(0.0, FRAC_PI_2, 2) });
        cfg
    } else if let Some(kind) = name.strip_prefix("figTe-").map(kind_of) {
        let mut cfg = unit_beta_noise_plane(kind.ok_or_else(unknown)?);
        cfg.teleport = teleport_fixed(FRAC_PI_2, 0.0);
        cfg
    } else if let Some(panel) = name.strip_prefix("figQCs1-") {
        let channel = channel_of(panel).ok_or_else(unknown)?;
        SweepConfig {
            channel,
            beta: Grid::fixed(qcs_beta(channel)),
            theta: Grid::new(0.0, PI, RES),
            noise: None,
            teleport: teleport_fixed(FRAC_PI_2, 0.0),
            output: OutputSpec::default(),
        }
    } else if let Some(panel) = name.strip_prefix("figQCs2-") {
        let channel = channel_of(panel).ok_or_else(unknown)?;
        SweepConfig {
            channel,
            beta: Grid::fixed(qcs_beta(channel)),
            theta: Grid::fixed(FRAC_PI_2),
            noise: None,
            teleport: Some(TeleportGrid { varphi: Grid::new(0.0, PI, RES), phi: Grid::fixed(0.0) }),
            output: OutputSpec::default(),
        }
    } else {
        return Err(unknown());
    };
    cfg.validate()?;
    Ok(cfg)
}

/// β of the single-angle teleportation scans: M = 10 m_t for gg, 5 m_t for qq̄.
pub fn qcs_beta(channel: ProductionChannel) -> f64 {
    match channel {
        ProductionChannel::GluonFusion => beta_at_mass_multiple(10.0),
        ProductionChannel::QuarkAnnihilation => beta_at_mass_multiple(5.0),
    }
}

/// Human-readable one-line summary of a config, used by the CLI on stderr.
pub fn describe(cfg: &SweepConfig) -> String {
    let mut s = format!(
        "{} beta[{}..{}; {}] theta[{:.4}..{:.4}; {}]",
        cfg.channel, cfg.beta.min, cfg.beta.max, cfg.beta.steps, cfg.theta.min, cfg.theta.max, cfg.theta.steps
    );
    if let Some(n) = &cfg.noise {
        let _ = write!(s, " {} p[{}..{}; {}]", n.kind, n.p.min, n.p.max, n.p.steps);
    }
    if let Some(t) = &cfg.teleport {
        let _ = write!(s, " varphi[{:.4}..{:.4}; {}] phi[{:.4}..{:.4}; {}]",
            t.varphi.min, t.varphi.max, t.varphi.steps, t.phi.min, t.phi.max, t.phi.steps);
    }
    let _ = write!(s, " -> {} rows", cfg.point_count());
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(channel: ProductionChannel, beta: f64, theta: f64) -> SweepConfig {
        SweepConfig {
            channel,
            beta: Grid::fixed(beta),
            theta: Grid::fixed(theta),
            noise: None,
            teleport: None,
            output: OutputSpec::default(),
        }
    }

    #[test]
    fn grid_points_are_inclusive() {
        assert_eq!(Grid::new(0.0, 1.0, 5).points(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(Grid::fixed(0.3).points(), vec![0.3]);
        let g = Grid::new(0.0, PI, 7).points();
        assert_eq!(*g.last().unwrap(), PI);
    }

    #[test]
    fn gg_threshold_row() {
        let rows = run_sweep(&single(ProductionChannel::GluonFusion, 0.0, FRAC_PI_2)).unwrap();
        assert_eq!(rows.len(), 1);
        let q = rows[0].quantifiers().unwrap();
        assert!((q.bell - 1.0).abs() < 1e-12 && (q.steering - 1.0).abs() < 1e-12);
        assert!((q.concurrence - 1.0).abs() < 1e-12 && (q.gqd - 0.5).abs() < 1e-12);
    }

    #[test]
    fn qq_threshold_row() {
        let rows = run_sweep(&single(ProductionChannel::QuarkAnnihilation, 0.0, FRAC_PI_2)).unwrap();
        assert_eq!(rows[0].concurrence, Some(0.0));
    }

    #[test]
    fn phase_flip_restores_concurrence() {
        let mut cfg = single(ProductionChannel::GluonFusion, 1.0, FRAC_PI_2);
        cfg.noise = Some(NoiseGrid { kind: NoiseKind::PhaseFlip, p: Grid::new(0.0, 1.0, 3) });
        let c: Vec<f64> = run_sweep(&cfg).unwrap().iter().map(|r| r.concurrence.unwrap()).collect();
        assert!((c[0] - 1.0).abs() < 1e-12 && c[1].abs() < 1e-12 && (c[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn row_order_is_lexicographic() {
        let mut cfg = single(ProductionChannel::GluonFusion, 0.0, 0.0);
        cfg.beta = Grid::new(0.0, 0.5, 2);
        cfg.theta = Grid::new(0.0, 1.0, 2);
        cfg.noise = Some(NoiseGrid { kind: NoiseKind::AmplitudeDamping, p: Grid::new(0.0, 1.0, 2) });
        let rows = run_sweep(&cfg).unwrap();
        let keys: Vec<(f64, f64, f64)> = rows.iter().map(|r| (r.beta, r.theta, r.p.unwrap())).collect();
        let mut sorted = keys.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(keys, sorted);
        assert_eq!(rows.len(), 8);
    }

    #[test]
    fn beta_cap_enforced() {
        let mut cfg = single(ProductionChannel::GluonFusion, 0.9999995, 1.0);
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));
        cfg.beta = Grid::fixed(1.0);
        assert!(cfg.validate().is_ok());
        cfg.theta = Grid::new(0.0, 1.0, 3);
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));
    }

    #[test]
    fn bad_grids_rejected() {
        let mut cfg = single(ProductionChannel::GluonFusion, 0.5, 1.0);
        cfg.theta = Grid::new(0.0, 4.0, 3);
        assert!(cfg.validate().is_err());
        cfg.theta = Grid::new(1.0, 0.0, 3);
        assert!(cfg.validate().is_err());
        cfg.theta = Grid::new(0.0, 1.0, 0);
        assert!(cfg.validate().is_err());
        cfg.theta = Grid::new(0.0, 1.0, 1);
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn toml_roundtrip_and_typos() {
        let text = r#"
channel = "qq"
beta = { min = 0.0, max = 0.5, steps = 3 }
theta = { min = 0.0, max = 3.0, steps = 4 }

[noise]
kind = "PD"
p = { min = 0.0, max = 1.0, steps = 2 }

[output]
format = "json"
"#;
        let cfg = SweepConfig::from_toml_str(text).unwrap();
        assert_eq!(cfg.channel, ProductionChannel::QuarkAnnihilation);
        assert_eq!(cfg.output.format, OutputFormat::Json);
        let again = SweepConfig::from_toml_str(&cfg.to_toml_string().unwrap()).unwrap();
        assert_eq!(again, cfg);
        assert!(SweepConfig::from_toml_str(&text.replace("steps = 4", "stpes = 4")).is_err());
        assert!(SweepConfig::from_toml_str(&text.replace("\"PD\"", "\"XX\"")).is_err());
    }

    #[test]
    fn csv_layout() {
        let rows = run_sweep(&single(ProductionChannel::QuarkAnnihilation, 0.0, 0.0)).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER.join(","));
        assert_eq!(
            lines[1],
            "qq,0.0000000000000000e0,0.0000000000000000e0,1.0000000000000000e0,,,,,\
             0.0000000000000000e0,0.0000000000000000e0,0.0000000000000000e0,0.0000000000000000e0,,,ok"
        );
        assert!(!text.contains('\r'));
    }

    #[test]
    fn every_preset_is_valid() {
        for name in PRESET_NAMES {
            let cfg = preset(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(cfg.point_count() >= RES, "{name}");
        }
        assert!(matches!(preset("fig5a"), Err(Error::UnknownPreset(_))));
        assert!(matches!(preset("figDe-xx"), Err(Error::UnknownPreset(_))));
        assert!(matches!(preset("figF1-d"), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn preset_examples() {
        assert_eq!(preset("fig1a").unwrap().channel, ProductionChannel::GluonFusion);
        assert_eq!(preset("fig2b").unwrap().channel, ProductionChannel::QuarkAnnihilation);
        assert_eq!(preset("figF1-a").unwrap().teleport, teleport_fixed(FRAC_PI_2, 0.0));
        let de = preset("figDe-ad").unwrap();
        assert_eq!(de.noise.unwrap().kind, NoiseKind::AmplitudeDamping);
        assert_eq!(de.beta, Grid::fixed(1.0));
        assert!((qcs_beta(ProductionChannel::GluonFusion) - 0.96f64.sqrt()).abs() < 1e-15);
    }
}
