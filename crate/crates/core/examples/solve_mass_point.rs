//! The optimal mass point at -30 dB from the Lambert-W fixed point, checked
//! against a direct maximization of the mutual information.
//!
//! Run with an SNR in dB as the first argument to pick another point.

use noncoherent_capacity::analysis::capacity_low_snr;
use noncoherent_capacity::solver::{constants, maximize_mi, solve_x1};
use noncoherent_capacity::Snr;

fn main() -> noncoherent_capacity::Result<()> {
    let db: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(-30.0);
    let a = Snr::from_db(db)?;
    let c = constants();
    println!(
        "x0^2 = {:.6}  a0 = {:.6}  xi0 = {:.6}",
        c.x0_sq, c.a0, c.xi0
    );

    let s = solve_x1(a)?;
    let m = maximize_mi(a, true)?;
    let p = capacity_low_snr(a)?;
    println!("a = {a} ({db} dB), branch {}", s.branch.name());
    println!(
        "fixed point   x1^2 = {:.9}  ({} iterations)",
        s.value * s.value,
        s.iterations
    );
    println!("numeric max   x1^2 = {:.9}", m.x1 * m.x1);
    println!(
        "p1 = {:.6e}  C = {:.9e}  delta/a = {:.6}",
        p.p1, p.capacity, p.delta_over_a
    );
    println!(
        "energy per nat = {:.6} (first order {:.6}), {:.3} dB per bit",
        p.energy_per_nat,
        p.energy_per_nat_first_order(),
        p.energy_per_bit_db()
    );
    if p.order_limited {
        println!("warning: above the low-SNR order limit");
    }
    Ok(())
}
