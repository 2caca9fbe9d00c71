use super::HoppingRate;

/// Exponent scale of the initial rate: `Γ(0) = 10^(2α)`.
pub const BEZIER_HIGH_EXP: f64 = 2.0;
/// Exponent scale of the final rate: `Γ(T) = 10^(-3β)`.
pub const BEZIER_LOW_EXP: f64 = -3.0;

const BISECTION_TOL: f64 = 1e-10;

/// Cubic Bézier hopping rate with control points `(0, 1), (x₁, y₁), (x₂, y₂),
/// (1, 0)` in normalized time, blended between `10^(2α)` and `10^(-3β)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BezierSchedule {
    theta: [f64; 6],
    total_time: f64,
}

impl BezierSchedule {
    /// Parameters `(x₁, y₁, x₂, y₂, α, β)` are clamped into `[0, 1]`.
    pub fn new(theta: [f64; 6], total_time: f64) -> Self {
        Self { theta: clamp_params(theta), total_time }
    }

    pub fn params(&self) -> [f64; 6] {
        self.theta
    }
}

impl HoppingRate for BezierSchedule {
    fn total_time(&self) -> f64 {
        self.total_time
    }

    fn gamma(&self, t: f64) -> f64 {
        let t_norm = if self.total_time > 0.0 { t / self.total_time } else { 0.0 };
        bezier_gamma(&self.theta, t_norm)
    }
}

fn clamp_params(theta: [f64; 6]) -> [f64; 6] {
    theta.map(|v| if v.is_nan() { 0.0 } else { v.clamp(0.0, 1.0) })
}

#[inline]
fn cubic(p1: f64, p2: f64, p0: f64, p3: f64, s: f64) -> f64 {
    let u = 1.0 - s;
    u * u * u * p0 + 3.0 * u * u * s * p1 + 3.0 * u * s * s * p2 + s * s * s * p3
}

/// `Γ` at normalized time `t_norm ∈ [0, 1]`.
///
/// With end abscissae 0 and 1 and inner abscissae in `[0, 1]`, `x(s)` is
/// non-decreasing, so `x(s) = t_norm` is solved by bisection.
pub fn bezier_gamma(theta: &[f64; 6], t_norm: f64) -> f64 {
    let [x1, y1, x2, y2, alpha, beta] = clamp_params(*theta);
    let t = t_norm.clamp(0.0, 1.0);
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if cubic(x1, x2, 0.0, 1.0, mid) < t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let s = match t {
        t if t <= 0.0 => 0.0,
        t if t >= 1.0 => 1.0,
        _ => 0.5 * (lo + hi),
    };
    let y = cubic(y1, y2, 1.0, 0.0, s);
    let high = libm::pow(10.0, BEZIER_HIGH_EXP * alpha);
    let low = libm::pow(10.0, BEZIER_LOW_EXP * beta);
    y * high + (1.0 - y) * low
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn endpoints() {
        let th = [0.3, 0.8, 0.6, 0.1, 0.5, 0.4];
        assert!((bezier_gamma(&th, 0.0) - 10.0).abs() < 1e-12);
        assert!((bezier_gamma(&th, 1.0) - libm::pow(10.0, -1.2)).abs() < 1e-12);
        let flat = [0.2, 0.9, 0.7, 0.3, 0.0, 0.0];
        for i in 0..=10 {
            assert!((bezier_gamma(&flat, i as f64 / 10.0) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn straight_line_is_linear() {
        // Control points on the diagonal make x(s) = s and y(s) = 1 - s.
        let th = [1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0, 0.5, 0.0];
        for i in 0..=8 {
            let t = i as f64 / 8.0;
            let want = (1.0 - t) * 10.0 + t * 1.0;
            assert!((bezier_gamma(&th, t) - want).abs() < 1e-8);
        }
    }

    #[test]
    fn clamps_parameters() {
        let s = BezierSchedule::new([-1.0, 2.0, 0.5, f64::NAN, 0.0, 3.0], 2.0);
        assert_eq!(s.params(), [0.0, 1.0, 0.5, 0.0, 0.0, 1.0]);
        assert!((s.gamma(0.0) - 1.0).abs() < 1e-12);
        assert!((s.gamma(2.0) - 1e-3).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn positive_and_monotone_when_y_decreases(
            x1 in 0.0f64..=1.0, x2 in 0.0f64..=1.0, y in 0.0f64..=1.0, dy in 0.0f64..=1.0,
            alpha in 0.0f64..=1.0, beta in 0.0f64..=1.0,
        ) {
            // y1 >= y2 keeps y(s) non-increasing.
            let th = [x1, y, x2, y * dy, alpha, beta];
            let mut prev = f64::INFINITY;
            for i in 0..=200 {
                let g = bezier_gamma(&th, i as f64 / 200.0);
                prop_assert!(g > 0.0);
                prop_assert!(g <= prev + 1e-6 * prev.min(1e6));
                prev = g;
            }
        }
    }
}
