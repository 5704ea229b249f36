//! Simultaneous complex root iteration (Aberth–Ehrlich) for small dense
//! polynomials with f64 coefficients.

use std::f64::consts::PI;

use num_complex::Complex64;

pub(crate) const MAX_ITERATIONS: usize = 200;
pub(crate) const UPDATE_TOL: f64 = 1e-13;
/// Accept a run that hit the iteration cap if its normwise backward error is
/// this small (double roots only converge linearly).
pub(crate) const ACCEPT_BACKWARD_ERROR: f64 = 1e-10;

#[derive(Debug, Clone)]
pub(crate) struct AberthOutcome {
    pub roots: Vec<Complex64>,
    pub iterations: usize,
    pub converged: bool,
    pub backward_error: f64,
}

/// `(p(x), p'(x))` by Horner, ascending coefficients.
pub(crate) fn horner_with_derivative(coeffs: &[f64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

pub(crate) fn horner(coeffs: &[f64], x: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

/// `|p(x)| / sum |c_i| |x|^i`
pub(crate) fn backward_error(coeffs: &[f64], x: Complex64) -> f64 {
    let r = x.norm();
    let scale = coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.abs());
    if scale == 0.0 {
        return 0.0;
    }
    horner(coeffs, x).norm() / scale
}

/// Starting points on the circles of the Newton polygon of `|c_i|`.
fn newton_polygon_guesses(coeffs: &[f64]) -> Vec<Complex64> {
    let pts: Vec<(usize, f64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0.0)
        .map(|(i, c)| (i, c.abs().ln()))
        .collect();
    // upper convex hull, left to right
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (i1, y1) = hull[hull.len() - 2];
            let (i2, y2) = hull[hull.len() - 1];
            let cross = (i2 as f64 - i1 as f64) * (p.1 - y1) - (y2 - y1) * (p.0 as f64 - i1 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(coeffs.len().saturating_sub(1));
    // roots at zero from vanishing low-order coefficients
    let lowest = pts.first().map_or(0, |p| p.0);
    out.extend(std::iter::repeat_n(Complex64::new(1e-300, 0.0), lowest));
    let mut offset = 0.4;
    for w in hull.windows(2) {
        let ((i, yi), (j, yj)) = (w[0], w[1]);
        let k = j - i;
        let radius = ((yi - yj) / k as f64).exp();
        for s in 0..k {
            let angle = 2.0 * PI * s as f64 / k as f64 + offset;
            out.push(Complex64::from_polar(radius, angle));
        }
        offset += 0.9;
    }
    out
}

/// All roots of the polynomial with ascending real coefficients `coeffs`.
/// `seeds` are known (approximate) roots used as their own starting points.
pub(crate) fn aberth(coeffs: &[f64], seeds: &[Complex64]) -> AberthOutcome {
    let degree = coeffs.len().saturating_sub(1);
    if degree == 0 {
        return AberthOutcome {
            roots: Vec::new(),
            iterations: 0,
            converged: true,
            backward_error: 0.0,
        };
    }
    let mut z = newton_polygon_guesses(coeffs);
    debug_assert_eq!(z.len(), degree);
    // each seed replaces the nearest remaining polygon guess
    let mut taken = vec![false; degree];
    for &s in seeds.iter().take(degree) {
        let idx = (0..degree)
            .filter(|&i| !taken[i])
            .min_by(|&a, &b| (z[a] - s).norm().total_cmp(&(z[b] - s).norm()))
            .expect("seed count below degree");
        z[idx] = s;
        taken[idx] = true;
    }

    let mut iterations = 0;
    let mut converged = false;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let mut max_update: f64 = 0.0;
        for i in 0..degree {
            let (p, dp) = horner_with_derivative(coeffs, z[i]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !w.is_finite() {
                continue;
            }
            z[i] -= w;
            max_update = max_update.max(w.norm() / z[i].norm().max(1.0));
        }
        if max_update < UPDATE_TOL {
            converged = true;
            break;
        }
    }

    // Newton polish, kept only when it lowers the residual
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner_with_derivative(coeffs, *zi);
            if dp.norm() == 0.0 {
                break;
            }
            let cand = *zi - p / dp;
            if cand.is_finite() && horner(coeffs, cand).norm() < p.norm() {
                *zi = cand;
            } else {
                break;
            }
        }
    }

    let backward_error = z
        .iter()
        .map(|&x| backward_error(coeffs, x))
        .fold(0.0, f64::max);
    AberthOutcome {
        roots: z,
        iterations,
        converged,
        backward_error,
    }
}
