//! Driving the batch runners from code instead of the CLI: run the spacing
//! study and the placement report into a scratch directory and read the
//! summary back.
//!
//! Run with `cargo run --release --example batch_runner`.

use planar_faa::experiments::{config_sha256, run_mc_spacing, run_place, ExperimentConfig};

fn main() {
    let cfg = ExperimentConfig { trials: 20_000, random_trials: 50, ..ExperimentConfig::default() };
    let out = std::env::temp_dir().join("planar-faa-batch-example");

    println!("config hash: {}", config_sha256(&cfg));
    let mut files = run_mc_spacing(&cfg, &out).expect("spacing study runs");
    files.extend(run_place(&cfg, &out).expect("placement runs"));
    for f in &files {
        println!("wrote {}", f.display());
    }

    let summary = std::fs::read_to_string(out.join("mc_spacing_summary.json")).expect("readable");
    let summary: serde_json::Value = serde_json::from_str(&summary).expect("valid JSON");
    println!(
        "\nspacing summary: mean {:.5} (law {:.5}), KS {:.4}",
        summary["mean_mc"].as_f64().expect("number"),
        summary["mean_theory"].as_f64().expect("number"),
        summary["ks"].as_f64().expect("number"),
    );

    let report = std::fs::read_to_string(out.join("place_report.json")).expect("readable");
    let report: serde_json::Value = serde_json::from_str(&report).expect("valid JSON");
    println!(
        "placement report: det {:.3} vs uniform {:.3}, random mean {:.3}",
        report["det"].as_f64().expect("number"),
        report["det_uniform"].as_f64().expect("number"),
        report["det_random_mean"].as_f64().expect("number"),
    );
}
