//! Spin density matrices of top pairs at a few kinematic points, built both
//! from the helicity correlations and directly.
//!
//!     cargo run --example spin_density

use ttqc::spin_density::{
    beta_from_masses, correlation_coefficients, diagonalize, xstate_direct, xstate_via_correlations,
    GluonFusionFormula, KinematicPoint, ProductionChannel,
};

fn main() -> ttqc::Result<()> {
    let beta = beta_from_masses(173.0, 400.0)?;
    println!("m_tt = 400 GeV  ->  beta = {beta:.6}\n");

    for channel in [ProductionChannel::GluonFusion, ProductionChannel::QuarkAnnihilation] {
        for (b, theta) in [(0.0, 1.0), (beta, 0.3), (0.95, std::f64::consts::FRAC_PI_2)] {
            let k = KinematicPoint::from_angle(b, theta)?;
            let c = correlation_coefficients(channel, &k)?;
            let d = diagonalize(&c)?;
            let x = xstate_direct(channel, &k)?;
            let via = xstate_via_correlations(channel, &k, GluonFusionFormula::Corrected)?;

            println!("{channel}  beta={b:.3} theta={theta:.3}");
            println!(
                "  C_kk={:+.5} C_kr={:+.5} C_nn={:+.5} C_rr={:+.5}",
                c.c_kk, c.c_kr, c.c_nn, c.c_rr
            );
            println!("  principal c = ({:+.5}, {:+.5}, {:+.5})", d.c1, d.c2, d.c3);
            println!(
                "  r11={:.5} r22={:.5} r14={:+.5} r23={:+.5}   |direct - via| = {:.1e}",
                x.r11,
                x.r22,
                x.r14.re,
                x.r23.re,
                x.to_dense().max_abs_diff(&via.to_dense())
            );
        }
        println!();
    }
    Ok(())
}
