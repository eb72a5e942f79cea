use crate::matcore::Mat;
use crate::rng::SplitMix64;

const MAX_STEPS: usize = 100;
const REL_CHANGE: f64 = 1e-6;
const MIN_STEPS: usize = 8;
const AGREEMENT: f64 = 0.05;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn apply(m: &Mat, v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; m.rows()];
    for (j, &x) in v.iter().enumerate() {
        for (o, &mij) in out.iter_mut().zip(m.col(j)) {
            *o += mij * x;
        }
    }
    out
}

/// Largest-magnitude root of the monic quadratic that best explains
/// `u ≈ a w + b v` over the two-step Krylov window `(v, w = Mv, u = Mw)`.
/// A plain Rayleigh ratio oscillates when the dominant eigenvalues are a
/// complex pair or a `±λ` pair; the two-term fit captures both.
fn two_step_estimate(v: &[f64], w: &[f64], u: &[f64]) -> f64 {
    let (vv, ww, wv) = (dot(v, v), dot(w, w), dot(w, v));
    let det = ww * vv - wv * wv;
    if det <= 1e-12 * ww * vv {
        return (dot(u, u) / ww).sqrt();
    }
    let (wu, vu) = (dot(w, u), dot(v, u));
    let a = (wu * vv - wv * vu) / det;
    let b = (ww * vu - wv * wu) / det;
    let disc = a * a + 4.0 * b;
    if disc >= 0.0 {
        let s = disc.sqrt();
        ((a + s).abs()).max((a - s).abs()) / 2.0
    } else {
        (-b).sqrt()
    }
}

/// Geometric-mean step growth `‖Mv‖/‖v‖` over the later half of the iterates.
fn growth_rate(log_growth: &[f64]) -> f64 {
    let tail = &log_growth[log_growth.len() / 2..];
    (tail.iter().sum::<f64>() / tail.len() as f64).exp()
}

/// Estimates the spectral radius of a square matrix by power iteration from a
/// fixed pseudo-random start: at most 100 steps, stopping once the estimate
/// changes by less than 1e-6 relative. This is an estimate, not a bound.
///
/// Several dominant eigenvalues of nearly equal modulus can make the Krylov
/// fit settle on a wrong value, so it is cross-checked against the observed
/// growth rate and the larger of the two is returned when they disagree.
pub fn spectral_radius_estimate(m_coef: &Mat) -> f64 {
    let n = m_coef.rows();
    if n == 0 || m_coef.max_abs() == 0.0 {
        return 0.0;
    }
    let mut rng = SplitMix64::new(0x5EED_CAFE);
    let mut v: Vec<f64> = (0..n).map(|_| rng.uniform(-1.0, 1.0)).collect();
    let nv = dot(&v, &v).sqrt();
    v.iter_mut().for_each(|x| *x /= nv);

    let mut est = f64::NAN;
    let mut log_growth = Vec::with_capacity(MAX_STEPS);
    for _ in 0..MAX_STEPS {
        let w = apply(m_coef, &v);
        let nw = dot(&w, &w).sqrt();
        if nw == 0.0 || !nw.is_finite() {
            return if nw == 0.0 { 0.0 } else { f64::INFINITY };
        }
        log_growth.push(nw.ln());
        let u = apply(m_coef, &w);
        let next = two_step_estimate(&v, &w, &u);
        let stable = (next - est).abs() <= REL_CHANGE * next;
        est = next;
        if stable && log_growth.len() >= MIN_STEPS && (growth_rate(&log_growth) - est).abs() <= AGREEMENT * est {
            return est;
        }
        v = w.into_iter().map(|x| x / nw).collect();
    }
    let growth = growth_rate(&log_growth);
    if (growth - est).abs() <= AGREEMENT * est {
        est
    } else {
        est.max(growth)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix() {
        assert_eq!(spectral_radius_estimate(&Mat::zeros(3, 3).unwrap()), 0.0);
        assert_eq!(spectral_radius_estimate(&Mat::zeros(0, 0).unwrap()), 0.0);
    }

    #[test]
    fn diagonal() {
        let r = spectral_radius_estimate(&Mat::diag(&[0.5, 1.0 / 3.0]).unwrap());
        assert!((r - 0.5).abs() <= 1e-6, "{r}");
    }

    #[test]
    fn nilpotent() {
        let m = Mat::from_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        assert!(spectral_radius_estimate(&m) < 1e-12);
    }

    #[test]
    fn rotation_and_sign_pairs() {
        let (c, s) = (0.8 * 0.3f64.cos(), 0.8 * 0.3f64.sin());
        let rot = Mat::from_rows(&[[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 0.2]]).unwrap();
        assert!((spectral_radius_estimate(&rot) - 0.8).abs() < 1e-6);
        let pm = Mat::diag(&[0.5, -0.5, 0.1]).unwrap();
        assert!((spectral_radius_estimate(&pm) - 0.5).abs() < 1e-6);
    }

    #[test]
    fn two_by_two_against_characteristic_polynomial() {
        let mut rng = SplitMix64::new(2024);
        for _ in 0..200 {
            let m = Mat::from_fn(2, 2, |_, _| rng.uniform(-1.0, 1.0)).unwrap();
            let tr = m[(0, 0)] + m[(1, 1)];
            let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
            let disc = tr * tr - 4.0 * det;
            let exact = if disc >= 0.0 {
                ((tr + disc.sqrt()).abs()).max((tr - disc.sqrt()).abs()) / 2.0
            } else {
                det.sqrt()
            };
            let est = spectral_radius_estimate(&m);
            assert!((est - exact).abs() <= 1e-4 * exact.max(1e-3), "{m:?} est={est} exact={exact}");
        }
    }

    #[test]
    fn competing_complex_pairs() {
        // eigenvalue moduli 2.775 (pair), 2.740 (pair), 2.435, 1.966
        let m = Mat::from_rows(&[
            [2.370950, -0.7191915, -0.8196237, -3.094555, 0.5746785, 1.341693],
            [8.153493, -7.610732, -3.136264, -8.160818, 3.972189, 0.7116277],
            [1.382984, -2.719401, -2.069350, -3.623674, 2.018542, 1.338594],
            [-4.847742, 3.880204, 3.912968, 1.858482, -0.08411401, 2.898676],
            [4.581709, -4.470517, -0.2692599, -6.904679, 2.724314, 3.933881],
            [-3.284572, 3.983196, 2.444692, 3.425652, -2.251464, -1.408285],
        ])
        .unwrap();
        let est = spectral_radius_estimate(&m);
        assert!((est - 2.77526424).abs() <= 0.1 * 2.77526424, "{est}");
    }
}
