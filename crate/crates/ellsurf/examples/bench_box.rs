use ellsurf::family::{density_report, BoxSpec, Measure, Mode};
use ellsurf::poly::Rat;
use std::time::Instant;

fn main() {
    for h in [2i64, 5, 10, 20] {
        let spec = BoxSpec {
            m: 1, n: 1,
            bound: Rat::from_integer(h.into()),
            measure: Measure::Naive,
            mode: Mode::Exhaustive,
        };
        let start = Instant::now();
        let (report, _) = density_report(&spec, false, 2).unwrap();
        let frac = 1.0 - report.in_u as f64 / report.total as f64;
        println!(
            "H themselves={h}: total={} in_u={} not_u_frac={:.5} c={:.4} elapsed={:?}",
            report.total, report.in_u, frac, frac * h as f64, start.elapsed()
        );
    }
}
