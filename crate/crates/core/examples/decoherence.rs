//! Local amplitude damping, phase damping and phase flip acting on the
//! gluon-fusion singlet, checked against the Kraus sums.
//!
//!     cargo run --example decoherence

use ttqc::channels::{apply_channel, closed_form, kraus_ops, NoiseKind, NoiseSpec};
use ttqc::quantifiers::quantify_all;
use ttqc::spin_density::{xstate_direct, KinematicPoint, ProductionChannel};

fn main() -> ttqc::Result<()> {
    let k = KinematicPoint::from_angle(0.0, 1.0)?;
    let x = xstate_direct(ProductionChannel::GluonFusion, &k)?;

    for kind in NoiseKind::ALL {
        let ops = kraus_ops(&NoiseSpec::new(kind, 0.3)?)?;
        println!("{kind:?}: {} Kraus operators, completeness error {:.1e}", ops.operators.len(), ops.completeness_error());
        println!("{:>5} {:>8} {:>8} {:>8} {:>8} {:>10}", "p", "bell", "steer", "conc", "gqd", "|kraus|");
        for i in 0..=10 {
            let spec = NoiseSpec::new(kind, i as f64 / 10.0)?;
            let noisy = closed_form(&spec, &x)?;
            let check = apply_channel(&spec, &x.to_dense())?.max_abs_diff(&noisy.to_dense());
            let q = quantify_all(&noisy)?;
            println!(
                "{:>5.2} {:>8.4} {:>8.4} {:>8.4} {:>8.4} {check:>10.1e}",
                spec.p, q.bell, q.steering, q.concurrence, q.gqd
            );
        }
        println!();
    }
    Ok(())
}
