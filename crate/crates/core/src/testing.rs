//! Independent reference computations used only by unit tests.

pub(crate) mod oracle {
    /// Plain bisection for a sign change of `f` on `[lo, hi]`.
    pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
        let mut flo = f(lo);
        assert!(flo * f(hi) <= 0.0, "no sign change on [{lo}, {hi}]");
        while hi - lo > tol * (1.0 + lo.abs().max(hi.abs())) {
            let mid = 0.5 * (lo + hi);
            let fm = f(mid);
            if fm == 0.0 {
                return mid;
            }
            if (fm > 0.0) == (flo > 0.0) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Recursive adaptive Simpson with Richardson correction.
    pub fn simpson<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, tol: f64) -> f64 {
        #[allow(clippy::too_many_arguments)]
        fn rec<F: Fn(f64) -> f64>(
            f: &F,
            a: f64,
            b: f64,
            fa: f64,
            fm: f64,
            fb: f64,
            whole: f64,
            tol: f64,
            depth: u32,
        ) -> f64 {
            let m = 0.5 * (a + b);
            let lm = 0.5 * (a + m);
            let rm = 0.5 * (m + b);
            let flm = f(lm);
            let frm = f(rm);
            let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            let delta = left + right - whole;
            if depth == 0 || delta.abs() <= 15.0 * tol {
                return left + right + delta / 15.0;
            }
            rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
        let fa = f(lo);
        let fb = f(hi);
        let fm = f(0.5 * (lo + hi));
        let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
        rec(f, lo, hi, fa, fm, fb, whole, tol, 48)
    }

    /// `b ∫₀¹ t^{b-1}/(1 - z t) dt` after `t = e^{-u}`:
    /// `∫₀^∞ b e^{-bu} / (1 - z e^{-u}) du`, truncated where the tail is below 1e-17.
    pub fn hyp2f1_1b_integral(b: f64, z: f64) -> f64 {
        let g = |u: f64| b * (-b * u).exp() / (1.0 - z * (-u).exp());
        let knee = (-z).max(1.0).ln();
        let end = knee + 40.0 / b;
        let mut total = 0.0;
        let mut lo = 0.0;
        for edge in [0.5 * knee, knee, knee + 2.0, knee + 10.0, end] {
            if edge > lo {
                total += simpson(&g, lo, edge, 1e-15);
                lo = edge;
            }
        }
        total
    }
}
