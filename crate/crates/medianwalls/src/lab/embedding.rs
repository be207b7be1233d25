//! The plane embeds isometrically into L¹ of the circle: the distance
//! between two points equals ∫₀^{2π} ¼ |Δx sin t + Δy cos t| dt.

use std::f64::consts::TAU;

/// Comparison of the quadrature value with the Euclidean distance.
#[derive(Clone, Copy, Debug)]
pub struct EmbeddingCheck {
    pub integral: f64,
    pub euclidean: f64,
    pub error: f64,
}

// the recursion threads both endpoints and their cached evaluations
#[allow(clippy::too_many_arguments)]
fn adaptive_simpson(
    f: &impl Fn(f64) -> f64,
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
    let split = left + right;
    if depth == 0 || (split - whole).abs() <= 15.0 * tol {
        return split + (split - whole) / 15.0;
    }
    adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson integration to absolute tolerance `tol`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    // start from a few panels so the kinks of |·| cannot hide in a
    // symmetric cancellation
    let panels = 8;
    let mut total = 0.0;
    for k in 0..panels {
        let lo = a + (b - a) * k as f64 / panels as f64;
        let hi = a + (b - a) * (k + 1) as f64 / panels as f64;
        let mid = 0.5 * (lo + hi);
        let (flo, fmid, fhi) = (f(lo), f(mid), f(hi));
        let whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        total += adaptive_simpson(&f, lo, hi, flo, fmid, fhi, whole, tol / panels as f64, 40);
    }
    total
}

/// Integrates the wall-measure expression for the pair (p, q) and compares
/// it to the Euclidean distance.
pub fn r2_l1_embedding_check(p: [f64; 2], q: [f64; 2]) -> EmbeddingCheck {
    let dx = p[0] - q[0];
    let dy = p[1] - q[1];
    let integral = integrate(
        |t| 0.25 * (dx * t.sin() + dy * t.cos()).abs(),
        0.0,
        TAU,
        1e-10,
    );
    let euclidean = dx.hypot(dy);
    EmbeddingCheck {
        integral,
        euclidean,
        error: (integral - euclidean).abs(),
    }
}
