//! Closed-form bounds on the mass point and the capacity at each bound.

use noncoherent_capacity::analysis::{capacity_bounds, capacity_low_snr, x1_lower_bound_first};
use noncoherent_capacity::Snr;

fn main() -> noncoherent_capacity::Result<()> {
    println!(
        "{:>8} {:>10} {:>10} {:>10} {:>10} {:>14} {:>14} {:>14}",
        "a", "lower(1)", "lower", "exact", "upper", "C(lower)", "C", "C(upper)"
    );
    for a in [1e-8, 1e-6, 1e-4, 1e-3, 1e-2, 3e-2, 5e-2] {
        let snr = Snr::new(a)?;
        let b = capacity_bounds(snr)?;
        let p = capacity_low_snr(snr)?;
        println!(
            "{a:>8.0e} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>14.8e} {:>14.8e} {:>14.8e}",
            x1_lower_bound_first(snr)?,
            b.x1_lower,
            p.x1,
            b.x1_upper,
            b.c_upper,
            p.capacity,
            b.c_lower
        );
    }
    Ok(())
}
