//! Capacity and penalty sweep over a log grid, written as CSV to stdout.

use noncoherent_capacity::cli::{sweep_table, Figure, Spacing, SweepGrid};
use noncoherent_capacity::solver::SolveOptions;

fn main() {
    let grid = SweepGrid::new(1e-6, 1e-2, 13, Spacing::Log).expect("valid grid");
    for figure in [Figure::Capacity, Figure::Penalty] {
        let (table, failures) = sweep_table(&grid, figure, &[], &SolveOptions::default());
        print!("{table}");
        for (a, why) in failures {
            eprintln!("a = {a}: {why}");
        }
        println!();
    }
}
