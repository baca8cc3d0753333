//! Minimum inter-port spacing statistics: the closed-form law against a
//! seeded Monte Carlo run, plus the exact 1-D law and the spacing guideline.
//!
//! Run with `cargo run --release --example spacing_statistics`.

use planar_faa::geometry::Aperture;
use planar_faa::spacing::{linear_exact_ccdf, sample_min_distances, Dimension, SpacingLaw};

fn main() {
    let aperture = Aperture::new(2.0, 2.0).expect("valid aperture");
    let m = 25;
    let law = SpacingLaw::new(m, aperture.area()).expect("valid law");

    println!("planar law for M = {m} ports in a {} x {} aperture", aperture.wx(), aperture.wy());
    println!("  alpha        = {:.6}", law.alpha());
    println!("  sigma        = {:.6}", law.sigma());
    println!("  mean         = {:.6}", law.mean());
    println!("  variance     = {:.6e}", law.variance());
    for epsilon in [0.01, 0.05, 0.10] {
        let d = law.dmin_guideline(epsilon).expect("valid epsilon");
        println!("  d_min for {:>4.0}% collision risk = {d:.4} wavelengths", 100.0 * epsilon);
    }

    let trials = 20_000;
    let sample = sample_min_distances(m, &aperture, trials, 1, Dimension::Planar)
        .expect("valid sampling request");
    println!("\nMonte Carlo, {trials} trials, seed 1");
    println!("  empirical mean     = {:.6}  (law {:.6})", sample.mean(), law.mean());
    println!("  empirical variance = {:.6e}  (law {:.6e})", sample.variance(), law.variance());
    println!("  KS distance        = {:.4}", sample.ks_distance(&law).expect("non-empty"));
    for r in [0.02, 0.05, 0.1] {
        println!(
            "  CCDF({r:.2}): empirical {:.4}, law {:.4}",
            sample.empirical_ccdf(r),
            law.ccdf(r).expect("non-negative radius"),
        );
    }

    println!("\n1-D aperture of length 2, same M");
    let linear = sample_min_distances(m, &aperture, trials, 1, Dimension::Linear)
        .expect("valid sampling request");
    for delta in [0.005, 0.01, 0.02] {
        println!(
            "  CCDF({delta}): empirical {:.4}, exact {:.4}",
            linear.empirical_ccdf(delta),
            linear_exact_ccdf(m, 2.0, delta).expect("valid spacing"),
        );
    }
}
