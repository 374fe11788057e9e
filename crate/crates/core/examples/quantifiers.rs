//! Bell nonlocality, steering, concurrence and discord across the
//! production threshold, plus the Werner family for calibration.
//!
//!     cargo run --example quantifiers

use ttqc::quantifiers::quantify_all;
use ttqc::spin_density::{xstate_direct, KinematicPoint, ProductionChannel, XState};

fn main() -> ttqc::Result<()> {
    println!("Werner states p|Psi-><Psi-| + (1-p) I/4");
    println!("{:>6} {:>8} {:>8} {:>8} {:>8}", "p", "bell", "steer", "conc", "gqd");
    for p in [0.2, 1.0 / 3.0, 0.5, 0.6, 0.75, 1.0] {
        let w = XState::real((1.0 - p) / 4.0, (1.0 + p) / 4.0, (1.0 + p) / 4.0, (1.0 - p) / 4.0, 0.0, -p / 2.0)?;
        let q = quantify_all(&w)?;
        println!("{p:>6.3} {:>8.4} {:>8.4} {:>8.4} {:>8.4}", q.bell, q.steering, q.concurrence, q.gqd);
    }

    let theta = std::f64::consts::FRAC_PI_2;
    for channel in [ProductionChannel::GluonFusion, ProductionChannel::QuarkAnnihilation] {
        println!("\n{channel} at theta = pi/2");
        println!("{:>6} {:>8} {:>8} {:>8} {:>8}", "beta", "bell", "steer", "conc", "gqd");
        for i in 0..=10 {
            let beta = (i as f64 / 10.0).min(0.999);
            let x = xstate_direct(channel, &KinematicPoint::from_angle(beta, theta)?)?;
            let q = quantify_all(&x)?;
            println!("{beta:>6.3} {:>8.4} {:>8.4} {:>8.4} {:>8.4}", q.bell, q.steering, q.concurrence, q.gqd);
        }
    }
    Ok(())
}
