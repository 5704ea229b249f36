//! The characteristic polynomial
//!
//! ```text
//! Q(zeta) = (sin(phi - theta)/sin(theta) - zeta sin(phi)/sin(theta))^n + zeta^r
//! ```
//!
//! whose roots are the zeros of `D(., z(theta))` rescaled by `t_0` and rotated
//! by `e^{-i theta}`, and the real function
//!
//! ```text
//! R_m(theta) = sum_k 1 / (zeta_k^{m+1} Q'(zeta_k))
//! ```
//!
//! which vanishes exactly when `z(theta)` is a zero of `P_m`. Two roots are
//! always `e^{-+i theta}`; every other root lies outside the closed unit disk.
//!
//! Root ordering is a convention of this crate: `e^{-i theta}`, `e^{i theta}`,
//! then the rest by ascending modulus, ties broken by argument.

use std::cell::OnceCell;
use std::cmp::Ordering;
use std::f64::consts::PI;

use num_bigint::Sign;
use num_complex::Complex64;
use serde::Serialize;

use crate::aberth;
use crate::curve::{self, theta_max};
use crate::error::{Error, Result};
use crate::exactpoly::{f64_to_rat, IntPoly};
use crate::family::{self, FamilyParams};

pub type CPoint = Complex64;

/// Distance from the unit circle below which a root counts as on it.
pub const CIRCLE_TOL: f64 = 1e-8;
/// Root separation below which two roots are treated as one double root.
pub const PAIR_TOL: f64 = 1e-6;
/// Relative size under which an f64 value of `R_m` is indistinguishable from
/// rounding noise.
pub const R_NOISE_FLOOR: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QSpectrum {
    pub theta: f64,
    #[serde(serialize_with = "serialize_points")]
    pub roots: Vec<CPoint>,
    pub on_circle_indices: Vec<usize>,
    pub double_root_pair: Option<(usize, usize)>,
    /// `min |zeta_k| - 1` over the roots off the unit circle (`inf` when there
    /// are none).
    pub margin: f64,
    pub iterations: usize,
}

fn serialize_points<S: serde::Serializer>(v: &[CPoint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|z| [z.re, z.im]))
}

fn check_domain(params: FamilyParams, theta: f64) -> Result<()> {
    let upper = theta_max(params);
    if theta > 0.0 && theta < upper {
        Ok(())
    } else {
        Err(Error::OutOfDomain { theta, upper })
    }
}

/// `Q` in factored form `(a + b zeta)^n + zeta^r`. Evaluating it this way
/// stays accurate where the expanded coefficients span many orders of
/// magnitude (`theta` near 0 with `n >= 2`).
#[derive(Clone, Copy, Debug)]
struct QForm {
    a: f64,
    b: f64,
    n: u32,
    r: u32,
}

impl QForm {
    fn new(params: FamilyParams, theta: f64) -> Result<Self> {
        check_domain(params, theta)?;
        let tr = curve::trig(params, theta);
        Ok(Self {
            a: tr.sin_phi_theta / tr.sin_theta,
            b: -tr.sin_phi / tr.sin_theta,
            n: params.n(),
            r: params.r(),
        })
    }

    fn pow(z: Complex64, k: u32, j: u32) -> Complex64 {
        if j > k {
            Complex64::new(0.0, 0.0)
        } else {
            z.powu(k - j)
        }
    }

    /// `(Q, Q', Q'')` at `z`.
    fn eval(&self, z: Complex64) -> [Complex64; 3] {
        let (n, r) = (self.n as f64, self.r as f64);
        let w = self.a + self.b * z;
        let b = self.b;
        [
            Self::pow(w, self.n, 0) + Self::pow(z, self.r, 0),
            n * b * Self::pow(w, self.n, 1) + r * Self::pow(z, self.r, 1),
            n * (n - 1.0) * b * b * Self::pow(w, self.n, 2) + r * (r - 1.0) * Self::pow(z, self.r, 2),
        ]
    }

    /// `|Q(z)|` relative to the size of its two parts.
    fn backward_error(&self, z: Complex64) -> f64 {
        let w = self.a.abs() + self.b.abs() * z.norm();
        let scale = w.powi(self.n as i32) + z.norm().powi(self.r as i32);
        self.eval(z)[0].norm() / scale
    }

    fn coeffs(&self) -> Vec<f64> {
        let (n, r) = (self.n as usize, self.r as usize);
        let mut c = vec![0.0; n.max(r) + 1];
        // (a + b zeta)^n, binomial coefficients accumulated in f64
        let mut binom = 1.0;
        for (j, cj) in c.iter_mut().enumerate().take(n + 1) {
            *cj = binom * self.a.powi((n - j) as i32) * self.b.powi(j as i32);
            binom = binom * (n - j) as f64 / (j + 1) as f64;
        }
        c[r] += 1.0;
        c
    }

    /// Newton steps on the factored form, each kept only if it lowers `|Q|`.
    fn polish(&self, z: &mut Complex64) {
        for _ in 0..6 {
            let [q, dq, _] = self.eval(*z);
            if q.norm() == 0.0 || dq.norm() == 0.0 {
                return;
            }
            let cand = *z - q / dq;
            if cand.is_finite() && self.eval(cand)[0].norm() < q.norm() {
                *z = cand;
            } else {
                return;
            }
        }
    }
}

/// Ascending real coefficients of `Q`, degree `max(n, r)`.
pub fn build_q(params: FamilyParams, theta: f64) -> Result<Vec<f64>> {
    Ok(QForm::new(params, theta)?.coeffs())
}

pub fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * i as f64)
        .collect()
}

fn cmp_modulus_then_arg(a: &Complex64, b: &Complex64) -> Ordering {
    let (ma, mb) = (a.norm(), b.norm());
    if (ma - mb).abs() <= 1e-10 * ma.max(mb) {
        a.arg().total_cmp(&b.arg())
    } else {
        ma.total_cmp(&mb)
    }
}

/// Roots of `Q` with the trivial pair moved to the front; no circle
/// classification.
struct RawRoots {
    form: QForm,
    roots: Vec<Complex64>,
    iterations: usize,
}

fn raw_roots(params: FamilyParams, theta: f64) -> Result<RawRoots> {
    let form = QForm::new(params, theta)?;
    let coeffs = form.coeffs();
    let seeds = [Complex64::from_polar(1.0, -theta), Complex64::from_polar(1.0, theta)];
    let out = aberth::aberth(&coeffs, &seeds);
    if !out.converged && !(out.backward_error < aberth::ACCEPT_BACKWARD_ERROR) {
        return Err(Error::NoConvergence {
            iterations: out.iterations,
            backward_error: out.backward_error,
        });
    }
    let mut rest = out.roots;
    rest.iter_mut().for_each(|z| form.polish(z));
    let mut front = Vec::with_capacity(rest.len());
    for s in seeds {
        let idx = (0..rest.len())
            .min_by(|&i, &j| (rest[i] - s).norm().total_cmp(&(rest[j] - s).norm()))
            .expect("Q has degree >= 2");
        front.push(rest.swap_remove(idx));
    }
    snap_double_root(&form, &mut rest);
    rest.sort_by(cmp_modulus_then_arg);
    front.extend(rest);
    Ok(RawRoots {
        form,
        roots: front,
        iterations: out.iterations,
    })
}

/// Separation (relative to modulus) under which a pair is tested as a
/// split double root.
const CLUSTER_TOL: f64 = 1e-4;
/// Backward error a common point must reach to replace a clustered pair.
const CLUSTER_BACKWARD_ERROR: f64 = 1e-13;

/// A double root comes out of f64 iteration split by about `sqrt(eps)`.
/// Refine the closest pair's midpoint as a root of `Q'` and merge the pair
/// onto it when `Q` also vanishes there to rounding precision.
fn snap_double_root(form: &QForm, roots: &mut [Complex64]) {
    let Some((i, j, d)) = closest_pair(roots, 0) else {
        return;
    };
    let mut c = 0.5 * (roots[i] + roots[j]);
    if d >= CLUSTER_TOL * c.norm().max(1.0) {
        return;
    }
    for _ in 0..8 {
        let [_, dq, ddq] = form.eval(c);
        if ddq.norm() == 0.0 {
            break;
        }
        let step = dq / ddq;
        c -= step;
        if step.norm() <= f64::EPSILON * c.norm() {
            break;
        }
    }
    if c.is_finite() && form.backward_error(c) < CLUSTER_BACKWARD_ERROR {
        // an isolated double root of a real polynomial is real
        if c.im.abs() < d {
            c.im = 0.0;
        }
        roots[i] = c;
        roots[j] = c;
    }
}

fn closest_pair(roots: &[Complex64], from: usize) -> Option<(usize, usize, f64)> {
    let mut best: Option<(usize, usize, f64)> = None;
    for i in from..roots.len() {
        for j in i + 1..roots.len() {
            let d = (roots[i] - roots[j]).norm();
            if best.is_none_or(|b| d < b.2) {
                best = Some((i, j, d));
            }
        }
    }
    best
}

/// All roots of `Q` at `theta`, checked against the unit-circle structure.
pub fn solve_q(params: FamilyParams, theta: f64, tol: f64) -> Result<QSpectrum> {
    let raw = raw_roots(params, theta)?;
    let roots = raw.roots;
    let expected = [Complex64::from_polar(1.0, -theta), Complex64::from_polar(1.0, theta)];
    let mut on_circle = Vec::new();
    for (k, z) in roots.iter().enumerate() {
        if (z.norm() - 1.0).abs() < CIRCLE_TOL {
            if k >= 2 || (z - expected[k]).norm() >= tol {
                return Err(Error::CircleClassificationAmbiguous { re: z.re, im: z.im });
            }
            on_circle.push(k);
        }
    }
    if on_circle.len() != 2 {
        let z = roots[on_circle.len().min(1)];
        return Err(Error::CircleClassificationAmbiguous { re: z.re, im: z.im });
    }
    let margin = roots[2..]
        .iter()
        .map(|z| z.norm() - 1.0)
        .fold(f64::INFINITY, f64::min);
    let double_root_pair = closest_pair(&roots, 2)
        .filter(|&(_, _, d)| d < PAIR_TOL)
        .map(|(i, j, _)| (i, j));
    Ok(QSpectrum {
        theta,
        roots,
        on_circle_indices: on_circle,
        double_root_pair,
        margin,
        iterations: raw.iterations,
    })
}

/// `R_m(theta)` together with the size of what was summed to get it, so
/// callers can tell a genuine sign from cancellation noise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RValue {
    pub value: f64,
    /// Same computation with every term replaced by its modulus.
    pub abs_sum: f64,
    pub imag_residue: f64,
}

impl RValue {
    pub fn sign_is_reliable(&self) -> bool {
        self.value.abs() > R_NOISE_FLOOR * self.abs_sum
    }
}

/// Complete homogeneous symmetric polynomial `h_m(w)` and `h_m(|w|)`.
fn complete_homogeneous(w: &[Complex64], m: usize) -> (Complex64, f64) {
    let mut h = vec![Complex64::new(0.0, 0.0); m + 1];
    let mut h_abs = vec![0.0; m + 1];
    h[0] = Complex64::new(1.0, 0.0);
    h_abs[0] = 1.0;
    for &wj in w {
        let aj = wj.norm();
        for k in 1..=m {
            h[k] = h[k] + wj * h[k - 1];
            h_abs[k] += aj * h_abs[k - 1];
        }
    }
    (h[m], h_abs[m])
}

/// `R_m` through partial fractions: `sum_k g(zeta_k) / Q'(zeta_k)` is the
/// divided difference of `g(zeta) = zeta^{-(m+1)}` over all roots divided by
/// the leading coefficient, which works out to
///
/// ```text
/// R_m = -h_m(1/zeta_0, ..., 1/zeta_d) / Q(0)
/// ```
///
/// No cancellation between nearby roots and no singularity at a double
/// root. The trivial pair enters as exactly `e^{-+i theta}`.
pub fn eval_r_detailed(params: FamilyParams, theta: f64, m: usize) -> Result<RValue> {
    let raw = raw_roots(params, theta)?;
    let mut w = Vec::with_capacity(raw.roots.len());
    w.push(Complex64::from_polar(1.0, theta));
    w.push(Complex64::from_polar(1.0, -theta));
    w.extend(raw.roots[2..].iter().map(|z| z.inv()));
    let (h, h_abs) = complete_homogeneous(&w, m);
    let q0 = raw.form.a.powi(params.n() as i32);
    let abs_sum = h_abs / q0.abs();
    let value = -h / q0;
    if value.im.abs() >= 1e-8 * abs_sum.max(1.0) {
        return Err(Error::NonRealResidue(value.im));
    }
    Ok(RValue {
        value: value.re,
        abs_sum,
        imag_residue: value.im,
    })
}

/// The same sum taken root by root, `sum_k 1 / (zeta_k^{m+1} Q'(zeta_k))`.
/// Loses accuracy when roots cluster; kept as a cross-check.
#[allow(non_snake_case)]
pub fn eval_R_termwise(params: FamilyParams, theta: f64, m: usize) -> Result<f64> {
    let raw = raw_roots(params, theta)?;
    let e = (m + 1) as i32;
    let total: Complex64 = raw
        .roots
        .iter()
        .map(|&z| z.powi(-e) / raw.form.eval(z)[1])
        .sum();
    Ok(total.re)
}

#[allow(non_snake_case)]
pub fn eval_R(params: FamilyParams, theta: f64, m: usize) -> Result<f64> {
    eval_r_detailed(params, theta, m).map(|v| v.value)
}

/// Closed form of `R_m` for `max(n, r) = 3` from the single extra root
/// `zeta_2 = -c_0 / c_3` (Vieta, since `zeta_0 zeta_1 = 1`):
///
/// ```text
/// lead N R_m = zeta_2^{-(m+1)} - (cos t - zeta_2) sin((m+1) t) / sin t - cos((m+1) t)
/// ```
///
/// with `N = zeta_2^2 - 2 zeta_2 cos t + 1 = (zeta_2 - cos t)^2 + sin^2 t` and
/// `lead = c_3`.
#[allow(non_snake_case)]
pub fn eval_R_cubic(params: FamilyParams, theta: f64, m: usize) -> Result<f64> {
    if params.order() != 3 {
        return Err(Error::WrongDegree(params.order()));
    }
    let c = build_q(params, theta)?;
    let lead = c[3];
    let zeta2 = -c[0] / lead;
    let (ct, st) = (theta.cos(), theta.sin());
    let k = (m + 1) as f64 * theta;
    let bracket = (ct - zeta2) * k.sin() / st + k.cos();
    let norm = (zeta2 - ct) * (zeta2 - ct) + st * st;
    let tail = zeta2.powi(-((m + 1) as i32));
    Ok((tail - bracket) / (lead * norm))
}

/// `-sgn P_m(z(theta))` with `P_m` evaluated exactly at the f64 value of
/// `z(theta)`. Equals `sgn R_m(theta)` because
/// `R_m(theta) = -kappa u^m P_m(z(theta))` with
/// `kappa = (sin t / sin(p - t))^n > 0` and `u = sin p / sin(p - t) > 0`.
pub fn sign_via_polynomial(params: FamilyParams, theta: f64, pm: &IntPoly) -> Result<i8> {
    let z = curve::z_of_theta(params, theta)?.z;
    if !z.is_finite() {
        return Err(Error::InvalidArgument(format!("z(theta) overflowed at theta = {theta}")));
    }
    Ok(match pm.sign_at(&f64_to_rat(z)) {
        Sign::Plus => -1,
        Sign::Minus => 1,
        Sign::NoSign => 0,
    })
}

/// Lazily generated `P_m`, only built when an f64 sign is unreliable.
pub struct LazyPoly {
    params: FamilyParams,
    m: usize,
    cell: OnceCell<IntPoly>,
}

impl LazyPoly {
    pub fn new(params: FamilyParams, m: usize) -> Self {
        Self {
            params,
            m,
            cell: OnceCell::new(),
        }
    }

    pub fn with(params: FamilyParams, m: usize, p: IntPoly) -> Self {
        let cell = OnceCell::new();
        let _ = cell.set(p);
        Self { params, m, cell }
    }

    pub fn get(&self) -> &IntPoly {
        self.cell
            .get_or_init(|| family::generate(self.params, self.m).pop().unwrap())
    }
}

/// How a sign of `R_m` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignSource {
    Float,
    ExactPolynomial,
}

/// Sign of `R_m(theta)`: from f64 when it clears the noise floor, otherwise
/// from the exact polynomial.
pub fn r_sign(params: FamilyParams, theta: f64, m: usize, pm: &LazyPoly) -> Result<(i8, SignSource)> {
    let v = eval_r_detailed(params, theta, m)?;
    if v.sign_is_reliable() {
        Ok((if v.value > 0.0 { 1 } else { -1 }, SignSource::Float))
    } else {
        Ok((sign_via_polynomial(params, theta, pm.get())?, SignSource::ExactPolynomial))
    }
}

/// Offset from `pi/r` of the terminal probe.
pub const TERMINAL_OFFSET: f64 = 1e-9;
pub const BISECTION_WIDTH: f64 = 1e-12;

/// Grid `theta_h = h pi / (m + r)`, `h = 1..=floor(m/r)`.
pub fn theta_h_grid(params: FamilyParams, m: usize) -> Vec<f64> {
    let r = params.r() as usize;
    (1..=m / r)
        .map(|h| h as f64 * PI / (m + r) as f64)
        .collect()
}

/// Zeros of `R_m` located by sign changes on the `theta_h` grid plus the
/// terminal subinterval up to `pi/r`, each refined by bisection.
#[allow(non_snake_case)]
pub fn find_R_roots(params: FamilyParams, m: usize) -> Result<Vec<f64>> {
    find_r_roots_with(params, m, &LazyPoly::new(params, m))
}

pub fn find_r_roots_with(params: FamilyParams, m: usize, pm: &LazyPoly) -> Result<Vec<f64>> {
    let mut grid = theta_h_grid(params, m);
    if grid.is_empty() {
        return Ok(Vec::new());
    }
    grid.push(theta_max(params) - TERMINAL_OFFSET);
    let signs = grid
        .iter()
        .map(|&t| r_sign(params, t, m, pm).map(|s| s.0))
        .collect::<Result<Vec<i8>>>()?;
    let mut roots = Vec::new();
    for k in 0..grid.len() - 1 {
        let (s_lo, s_hi) = (signs[k], signs[k + 1]);
        if s_lo == 0 {
            roots.push(grid[k]);
            continue;
        }
        if s_hi == 0 || s_lo == s_hi {
            continue;
        }
        let (mut lo, mut hi) = (grid[k], grid[k + 1]);
        while hi - lo > BISECTION_WIDTH {
            let mid = 0.5 * (lo + hi);
            let s = r_sign(params, mid, m, pm)?.0;
            if s == 0 {
                lo = mid;
                hi = mid;
                break;
            }
            if s == s_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    Ok(roots)
}
