//! Both real branches of the Lambert W function near the branch point and
//! toward zero, with the residual `w e^w - z`.

use noncoherent_capacity::specfun::{lambert_ladder_upper, lambert_w};
use noncoherent_capacity::BranchK;

fn main() -> noncoherent_capacity::Result<()> {
    println!(
        "{:>14} {:>22} {:>22} {:>10}",
        "z", "W0(z)", "W-1(z)", "residual"
    );
    for z in [-0.36787944117144, -0.3, -0.1, -1e-3, -1e-9] {
        let w0 = lambert_w(BranchK::Principal, z)?;
        let wm = lambert_w(BranchK::MinusOne, z)?;
        let res = (w0 * w0.exp() - z).abs().max((wm * wm.exp() - z).abs());
        println!("{z:>14.6e} {w0:>22.15} {wm:>22.15} {res:>10.2e}");
    }
    let z = -0.1;
    println!(
        "\nladder bound at z = {z}: ln(-z) - ln(-ln(-z)) = {:.15} >= W-1 = {:.15}",
        lambert_ladder_upper(z)?,
        lambert_w(BranchK::MinusOne, z)?
    );
    Ok(())
}
