//! Runs a built-in preset and a hand-written config, printing a summary.
//!
//!     cargo run --release --example sweep_preset -- figF3-pd

use ttqc::sweep::{describe, preset, run_sweep, theta_mirror_deviation, write_csv, SweepConfig, PRESET_NAMES};

const CONFIG: &str = r#"
channel = "qq"
beta = { min = 0.0, max = 0.9, steps = 4 }
theta = { min = 0.0, max = 3.141592653589793, steps = 3 }
"#;

fn main() -> ttqc::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "fig1a".into());
    let cfg = preset(&name)?;
    println!("{}", describe(&cfg));
    let rows = run_sweep(&cfg)?;
    let degenerate = rows.iter().filter(|r| r.quantifiers().is_none()).count();
    let best = rows
        .iter()
        .filter_map(|r| Some((r.concurrence?, r)))
        .max_by(|a, b| a.0.total_cmp(&b.0));
    println!("{} rows, {degenerate} degenerate", rows.len());
    if let Some((c, r)) = best {
        println!("largest concurrence {c:.4} at beta={:.4} theta={:.4}", r.beta, r.theta);
    }
    let (dev, pairs) = theta_mirror_deviation(&rows);
    println!("theta -> pi - theta: max deviation {dev:.1e} over {pairs} pairs");

    let small = SweepConfig::from_toml_str(CONFIG)?;
    println!("\n{}", describe(&small));
    write_csv(&run_sweep(&small)?, std::io::stdout().lock())?;

    println!("\npresets: {}", PRESET_NAMES.join(" "));
    Ok(())
}
