//! Monte Carlo estimate of the mutual information from simulated channel
//! outputs, compared with the closed form.

use noncoherent_capacity::channel::{mi_closed, ChannelParams, OnOffInput};
use noncoherent_capacity::simulate::{estimate_mi, SamplePath, SimConfig};
use noncoherent_capacity::Snr;

fn main() -> noncoherent_capacity::Result<()> {
    let x1 = 5f64.sqrt();
    let a = Snr::new(1e-2)?;
    let exact = mi_closed(x1, a)?;
    let input = OnOffInput::for_snr(x1, a)?;
    let params = ChannelParams::new(1.0, 0.5, 0.005)?;
    println!("closed form: {exact:.6e}");
    for seed in 1..=5 {
        for (name, path) in [
            ("normalized", SamplePath::Normalized),
            ("physical", SamplePath::Physical(params)),
        ] {
            let cfg = SimConfig::new(seed, 1_000_000, input)?.with_path(path);
            let e = estimate_mi(&cfg);
            let z = (e.estimate - exact) / e.std_error;
            println!(
                "seed {seed} {name:>10}: {:.6e} ± {:.1e}  ({z:+.2} se)",
                e.estimate, e.std_error
            );
        }
    }
    Ok(())
}
