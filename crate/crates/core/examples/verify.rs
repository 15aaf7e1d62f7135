//! The fast invariant battery, as run by `ncap verify`.

use noncoherent_capacity::verify::{run, Level};

fn main() {
    let report = run(Level::Fast);
    print!("{report}");
    std::process::exit(if report.all_passed() { 0 } else { 1 });
}
