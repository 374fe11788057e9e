//! Teleporting a two-qubit state through two copies of a top-pair resource.
//!
//!     cargo run --example teleportation

use std::f64::consts::{FRAC_PI_2, PI};

use ttqc::channels::{closed_form, NoiseKind, NoiseSpec};
use ttqc::spin_density::{xstate_direct, KinematicPoint, ProductionChannel};
use ttqc::teleport::{
    fidelity_direct, outcome_probabilities, teleport_output_closed, teleport_output_generic,
    teleported_quantifiers, InputStateParams,
};

fn main() -> ttqc::Result<()> {
    let k = KinematicPoint::from_angle(0.6, FRAC_PI_2)?;
    let resource = xstate_direct(ProductionChannel::GluonFusion, &k)?;
    let probs = outcome_probabilities(&resource)?;
    println!("Bell weights of the resource: {:.4?}", probs.single);

    println!("\n{:>6} {:>6} {:>9} {:>8} {:>9}", "varphi", "phi", "fidelity", "conc", "vs dense");
    for varphi in [0.0, PI / 4.0, FRAC_PI_2, 3.0 * PI / 4.0, PI] {
        for phi in [0.0, FRAC_PI_2, PI] {
            let s = InputStateParams::new(varphi, phi)?;
            let out = teleport_output_closed(&resource, &s)?;
            let diff = teleport_output_generic(&resource, &s)?.max_abs_diff(&out.to_dense());
            let q = teleported_quantifiers(&resource, &s)?;
            println!(
                "{varphi:>6.3} {phi:>6.3} {:>9.5} {:>8.4} {diff:>9.1e}",
                fidelity_direct(&s, &out)?,
                q.concurrence
            );
        }
    }

    let s = InputStateParams::new(FRAC_PI_2, 0.0)?;
    println!("\nfidelity at varphi = pi/2 under noise");
    println!("{:>5} {:>8} {:>8} {:>8}", "p", "AD", "PD", "PF");
    for i in 0..=5 {
        let p = i as f64 / 5.0;
        let f = |kind| -> ttqc::Result<f64> {
            let noisy = closed_form(&NoiseSpec::new(kind, p)?, &resource)?;
            fidelity_direct(&s, &teleport_output_closed(&noisy, &s)?)
        };
        println!(
            "{p:>5.2} {:>8.4} {:>8.4} {:>8.4}",
            f(NoiseKind::AmplitudeDamping)?,
            f(NoiseKind::PhaseDamping)?,
            f(NoiseKind::PhaseFlip)?
        );
    }
    Ok(())
}
