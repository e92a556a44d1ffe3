//! Shared oracles and generators for unit tests.

use proptest::prelude::*;

use crate::diagrams::YoungDiagram;

/// Double-exponential quadrature on `[a, b]`; tolerant of integrable
/// endpoint singularities.
pub fn tanh_sinh(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let half = 0.5 * (b - a);
    let h = 1.0 / 64.0;
    let mut sum = 0.0;
    let limit = (4.0 / h) as i64;
    for k in -limit..=limit {
        let t = k as f64 * h;
        let s = std::f64::consts::FRAC_PI_2 * t.sinh();
        let w = std::f64::consts::FRAC_PI_2 * t.cosh() / s.cosh().powi(2);
        // distance to the nearer endpoint, computed without cancellation
        let point = if s < 0.0 { a + 2.0 * half / (1.0 + (-2.0 * s).exp()) } else { b - 2.0 * half / (1.0 + (2.0 * s).exp()) };
        if w == 0.0 || point <= a.min(b) || point >= a.max(b) {
            continue;
        }
        let v = f(point);
        if v.is_finite() {
            sum += w * v;
        }
    }
    sum * h * half
}

pub fn diagram_strategy(max_n: usize) -> impl Strategy<Value = YoungDiagram> {
    prop::collection::vec(1usize..=max_n, 0..=max_n).prop_map(move |mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        let mut total = 0;
        v.retain(|&p| {
            total += p;
            total <= max_n
        });
        YoungDiagram::from_parts(v).unwrap()
    })
}
