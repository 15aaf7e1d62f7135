//! `₂F₁(1, b; b+1; z)` across its evaluation routes, with the error estimate
//! each route reports.

use noncoherent_capacity::specfun::gauss_2f1_1b;

fn main() -> noncoherent_capacity::Result<()> {
    println!(
        "{:>6} {:>12} {:>24} {:>10} {:>6}",
        "b", "z", "value", "err", "evals"
    );
    for b in [0.2, 0.25, 1.0, 1.2] {
        for z in [-0.3, -1.5, -40.0, -1e6] {
            let r = gauss_2f1_1b(b, z)?;
            println!(
                "{b:>6} {z:>12.3e} {:>24.17e} {:>10.1e} {:>6}",
                r.value, r.abs_error_estimate, r.evaluations
            );
        }
    }
    Ok(())
}
