//! On-off mutual information three ways: closed form, direct quadrature of
//! the defining integral, and the low-SNR series.

use noncoherent_capacity::channel::{
    mi_closed, mi_derivative_x1, mi_quadrature, mi_series, OnOffInput,
};
use noncoherent_capacity::Snr;

fn main() -> noncoherent_capacity::Result<()> {
    println!(
        "{:>6} {:>8} {:>20} {:>20} {:>20} {:>12}",
        "x1^2", "a", "closed", "quadrature", "series", "dI/dx1"
    );
    for x_sq in [4.0f64, 5.0, 8.0, 16.0] {
        for a in [1e-4, 1e-2] {
            let x1 = x_sq.sqrt();
            let snr = Snr::new(a)?;
            let input = OnOffInput::for_snr(x1, snr)?;
            println!(
                "{x_sq:>6} {a:>8.0e} {:>20.14e} {:>20.14e} {:>20.14e} {:>12.4e}",
                mi_closed(x1, snr)?,
                mi_quadrature(&input)?.value,
                mi_series(x1, snr)?,
                mi_derivative_x1(&input)?.value
            );
        }
    }
    Ok(())
}
