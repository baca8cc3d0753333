//! Closed-form estimation bounds from the geometric inertia matrix: a
//! hand-checkable corner layout, the effect of adding ports, and the exact
//! 1/SNR scaling.
//!
//! Run with `cargo run --release --example crb_closed_form`.

use std::f64::consts::PI;

use planar_faa::crb::{crb_closed_form, crb_1d_reduction, ObservationSpec, SourceDirection};
use planar_faa::geometry::{Aperture, Point, PortLayout};

fn main() {
    let aperture = Aperture::new(2.0, 2.0).expect("valid aperture");
    let dir = SourceDirection::from_degrees(45.0, 30.0).expect("angles in range");
    let obs = ObservationSpec::from_snr_db(100, 10.0).expect("valid observation");

    let corners = PortLayout::cornered(aperture, vec![]).expect("corners fit");
    let result = crb_closed_form(&corners, &dir, &obs).expect("well-conditioned layout");
    println!("corners-only layout, theta 45 deg, phi 30 deg, T = 100, SNR = 10 dB");
    println!("  inertia det  = {:.6}", result.det_inertia);
    println!("  FIM          = [{:.4e}, {:.4e}; ., {:.4e}]",
        result.fim.j_theta_theta, result.fim.j_theta_phi, result.fim.j_phi_phi);
    println!("  CRB(theta)   = {:.6e} rad^2", result.crb_theta);
    println!("  CRB(phi)     = {:.6e} rad^2", result.crb_phi);
    println!("  1/(16000 pi^2) = {:.6e} rad^2 (closed-form reference)", 1.0 / (16_000.0 * PI * PI));

    println!("\nadding an interior cross of ports tightens both bounds:");
    let cross = PortLayout::cornered(
        aperture,
        vec![
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
            Point::new(2.0, 1.0),
            Point::new(1.0, 2.0),
        ],
    )
    .expect("ports fit");
    let denser = crb_closed_form(&cross, &dir, &obs).expect("well-conditioned layout");
    println!(
        "  8 ports: CRB(theta) {:.6e} (x{:.3}), CRB(phi) {:.6e} (x{:.3})",
        denser.crb_theta,
        denser.crb_theta / result.crb_theta,
        denser.crb_phi,
        denser.crb_phi / result.crb_phi,
    );

    println!("\nbounds scale exactly as 1/SNR (snapshots x SNR is one factor):");
    for snr_db in [0.0, 10.0, 20.0] {
        let obs = ObservationSpec::from_snr_db(100, snr_db).expect("valid observation");
        let r = crb_closed_form(&corners, &dir, &obs).expect("well-conditioned layout");
        println!("  SNR {snr_db:>4} dB: CRB(theta) = {:.6e}", r.crb_theta);
    }

    println!("\n1-D reduction (ports on a line estimate elevation only):");
    let line = [0.0, 0.5, 1.0, 1.5, 2.0];
    let obs = ObservationSpec::from_snr_db(100, 10.0).expect("valid observation");
    let crb = crb_1d_reduction(&line, 45f64.to_radians(), &obs).expect("spread positions");
    println!("  positions {line:?}: CRB(theta) = {crb:.6e} rad^2");
}
