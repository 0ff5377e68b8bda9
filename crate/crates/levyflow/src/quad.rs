//! Panel-based Gauss-Legendre quadrature.
//!
//! The characteristic-function inversions in [`crate::noise`] integrate
//! oscillatory-decaying functions; panels are split at the integrand's zeros
//! by the callers, and each panel is handled here with a fixed 15-point rule
//! or an adaptive bisection of it.

/// 15-point Gauss-Legendre nodes on [0, 1) paired with weights (symmetric
/// half; node 0 listed once with its full weight).
const GL15_NODES: [(f64, f64); 8] = [
    (0.0, 0.202_578_241_925_561_27),
    (0.201_194_093_997_434_53, 0.198_431_485_327_111_58),
    (0.394_151_347_077_563_37, 0.186_161_000_015_562_21),
    (0.570_972_172_608_538_8, 0.166_269_205_816_993_93),
    (0.724_417_731_360_170_0, 0.139_570_677_926_154_31),
    (0.848_206_583_410_427_2, 0.107_159_220_467_171_93),
    (0.937_273_392_400_705_9, 0.070_366_047_488_108_12),
    (0.987_992_518_020_485_4, 0.030_753_241_996_117_27),
];

/// 15-point Gauss-Legendre estimate of `∫_a^b f`.
pub fn gl15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = GL15_NODES[0].1 * f(mid);
    for &(x, w) in &GL15_NODES[1..] {
        sum += w * (f(mid + half * x) + f(mid - half * x));
    }
    sum * half
}

/// Adaptive integral of `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Bisects panels where the GL15 value disagrees with the sum of its halves.
pub fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let mid = 0.5 * (a + b);
        let left = gl15(f, a, mid);
        let right = gl15(f, mid, b);
        let delta = left + right - whole;
        if delta.abs() <= tol || depth >= 48 {
            return left + right + delta / 63.0;
        }
        recurse(f, a, mid, left, tol * 0.5, depth + 1)
            + recurse(f, mid, b, right, tol * 0.5, depth + 1)
    }
    let whole = gl15(f, a, b);
    recurse(f, a, b, whole, tol, 0)
}

/// Integral over consecutive panels `[edges[i], edges[i+1]]`, one GL15 rule
/// per panel. Edges must be increasing.
pub fn panels<F: Fn(f64) -> f64>(f: &F, edges: &[f64]) -> f64 {
    edges.windows(2).map(|w| gl15(f, w[0], w[1])).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gl15_is_exact_for_low_degree_polynomials() {
        // GL15 integrates degree <= 29 exactly.
        let f = |x: f64| x.powi(20) - 3.0 * x.powi(7) + 2.0;
        let exact = 1.0 / 21.0 - 3.0 / 8.0 + 2.0;
        assert!((gl15(&f, 0.0, 1.0) - exact).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_oscillation() {
        // ∫_0^{10π} sin(x)/(1+x) dx, reference from fine Simpson evaluation.
        let f = |x: f64| x.sin() / (1.0 + x);
        let got = adaptive(&f, 0.0, 10.0 * PI, 1e-12);
        let mut reference = 0.0;
        let n = 4_000_000;
        let h = 10.0 * PI / n as f64;
        for i in 0..n {
            let a = i as f64 * h;
            reference += h / 6.0 * (f(a) + 4.0 * f(a + 0.5 * h) + f(a + h));
        }
        assert!((got - reference).abs() < 1e-9, "got {got}, ref {reference}");
    }

    #[test]
    fn panels_match_adaptive_on_smooth_integrand() {
        let f = |x: f64| (-x).exp() * (3.0 * x).cos();
        let edges: Vec<f64> = (0..=40).map(|i| i as f64 * 0.25).collect();
        let a = panels(&f, &edges);
        let b = adaptive(&f, 0.0, 10.0, 1e-13);
        assert!((a - b).abs() < 1e-11);
    }
}
