//! Experiments over whole families: Sturm-certified location of the zeros
//! of `P_m`, the alternating signs of `R_m` on the `theta_h` grid, the
//! correspondence between zeros of `R_m` and of `P_m`, and the spread of the
//! zeros over `(0, pi/r)`.

use std::f64::consts::PI;

use num_bigint::Sign;
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::curve::{self, theta_max, IntervalI, UpperBound};
use crate::error::{Error, Result};
use crate::exactpoly::{f64_to_rat, isolate_with_chain, nudge_off_root, rat_to_f64, BigRat, IntPoly, SturmChain};
use crate::family::{self, FamilyParams};
use crate::qspec::{self, LazyPoly, SignSource};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MCheck {
    pub m: usize,
    pub degree: usize,
    pub real_roots_in_i: usize,
    pub total_real_roots: usize,
    pub hyperbolic: bool,
    pub containment: bool,
}

impl MCheck {
    pub fn passes(&self) -> bool {
        self.hyperbolic && self.containment
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub params: FamilyParams,
    pub interval: IntervalI,
    pub m_range: (usize, usize),
    pub per_m: Vec<MCheck>,
    /// Least `m` such that every `m' >= m` up to the end of the range passes.
    pub first_all_pass_m: Option<usize>,
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.first_all_pass_m == Some(self.m_range.0)
    }
}

fn check_one(params: FamilyParams, interval: &IntervalI, m: usize, pm: &IntPoly) -> Result<(MCheck, Option<String>)> {
    let degree = pm.degree().ok_or(Error::ZeroPolynomial)?;
    let note = (degree != params.expected_degree(m))
        .then(|| format!("m = {m}: degree {degree}, expected {}", params.expected_degree(m)));
    if degree == 0 {
        let check = MCheck {
            m,
            degree,
            real_roots_in_i: 0,
            total_real_roots: 0,
            hyperbolic: true,
            containment: true,
        };
        return Ok((check, note));
    }
    let chain = SturmChain::new(pm)?;
    let total = chain.count_all();
    let bound = pm.cauchy_bound();
    let mut endpoint_root = false;
    let mut lo = interval.lo.clone();
    if pm.sign_at(&lo) == Sign::NoSign {
        endpoint_root = true;
        lo = nudge_off_root(&chain, &lo, true);
    }
    let hi = match &interval.hi {
        UpperBound::Finite(h) => {
            if pm.sign_at(h) == Sign::NoSign {
                endpoint_root = true;
                nudge_off_root(&chain, h, false)
            } else {
                h.clone()
            }
        }
        UpperBound::Infinite => {
            if bound > lo {
                bound
            } else {
                &lo + BigRat::from_integer(1.into())
            }
        }
    };
    let in_i = if hi > lo { chain.count(&lo, &hi)? } else { 0 };
    let check = MCheck {
        m,
        degree,
        real_roots_in_i: in_i,
        total_real_roots: total,
        hyperbolic: in_i == degree,
        containment: !endpoint_root && total == in_i,
    };
    Ok((check, note))
}

/// Exact real-rootedness and containment in `I` of `P_0, ..., P_{m_max}`.
pub fn check_hyperbolicity(params: FamilyParams, m_max: usize) -> Result<VerifyReport> {
    let polys = family::generate(params, m_max);
    let interval = curve::interval_i(params);
    let results = polys
        .par_iter()
        .enumerate()
        .map(|(m, pm)| check_one(params, &interval, m, pm))
        .collect::<Result<Vec<_>>>()?;
    let mut per_m = Vec::with_capacity(results.len());
    let mut notes = Vec::new();
    for (check, note) in results {
        notes.extend(note);
        per_m.push(check);
    }
    let first_all_pass_m = match per_m.iter().rposition(|c| !c.passes()) {
        None => Some(0),
        Some(k) if k == m_max => None,
        Some(k) => Some(k + 1),
    };
    for c in per_m.iter().filter(|c| !c.passes()) {
        notes.push(format!(
            "m = {}: {} of degree {} real roots in I, {} real roots total",
            c.m, c.real_roots_in_i, c.degree, c.total_real_roots
        ));
    }
    Ok(VerifyReport {
        params,
        interval,
        m_range: (0, m_max),
        per_m,
        first_all_pass_m,
        notes,
    })
}

/// Offset from `pi/r` of the sensitivity probe next to the terminal one.
pub const TERMINAL_CHECK_OFFSET: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignPattern {
    pub params: FamilyParams,
    pub m: usize,
    /// `sgn R_m(theta_h)` for `h = 1..=floor(m/r)`.
    pub signs: Vec<i8>,
    /// `sgn R_m(pi/r - 1e-9)`.
    pub terminal_sign: i8,
    /// `sgn R_m(pi/r - 1e-7)`.
    pub terminal_check_sign: i8,
    /// Number of signs (including the terminal ones) that came from the
    /// exact polynomial because the f64 value of `R_m` was too small.
    pub exact_fallbacks: usize,
    pub matches_prediction: bool,
}

fn alternating(h: usize) -> i8 {
    if h % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Signs of `R_m` on the `theta_h` grid and next to `pi/r`, compared with
/// `(-1)^h` and `(-1)^{floor(m/r) + 1}`.
pub fn check_sign_pattern(params: FamilyParams, m: usize) -> Result<SignPattern> {
    let r = params.r() as usize;
    if m < r {
        return Err(Error::InvalidArgument(format!("sign pattern needs m >= r = {r}, got {m}")));
    }
    let pm = LazyPoly::new(params, m);
    let top = theta_max(params);
    let mut probes = qspec::theta_h_grid(params, m);
    probes.push(top - qspec::TERMINAL_OFFSET);
    probes.push(top - TERMINAL_CHECK_OFFSET);
    let mut signs = Vec::with_capacity(probes.len());
    let mut exact_fallbacks = 0;
    for &theta in &probes {
        let (s, source) = qspec::r_sign(params, theta, m, &pm)?;
        exact_fallbacks += usize::from(source == SignSource::ExactPolynomial);
        signs.push(s);
    }
    let terminal_check_sign = signs.pop().unwrap();
    let terminal_sign = signs.pop().unwrap();
    let matches_prediction = signs
        .iter()
        .enumerate()
        .all(|(k, &s)| s == alternating(k + 1))
        && terminal_sign == alternating(m / r + 1);
    Ok(SignPattern {
        params,
        m,
        signs,
        terminal_sign,
        terminal_check_sign,
        exact_fallbacks,
        matches_prediction,
    })
}

/// Residual bound for [`cross_check_roots`].
pub const RESIDUAL_LIMIT: f64 = 1e-6;
/// Width to which the Sturm intervals are refined before matching.
pub const ISOLATION_WIDTH: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossCheck {
    pub params: FamilyParams,
    pub m: usize,
    pub pass: bool,
    pub count: usize,
    /// Worst `|P_m(z(theta_j))| / sum |c_i| |z|^i`.
    pub max_residual: f64,
    /// Indices (in increasing order) whose `z(theta_j)` missed its interval.
    pub misplaced: Vec<usize>,
}

/// `|p(x)| / sum |c_i| |x|^i`, exactly at the rational value of `x`.
pub fn relative_residual(p: &IntPoly, x: f64) -> f64 {
    let xr = f64_to_rat(x);
    let ax = xr.abs();
    let mut scale = BigRat::zero();
    for c in p.coeffs().iter().rev() {
        scale = scale * &ax + BigRat::from_integer(c.abs());
    }
    if scale.is_zero() {
        return 0.0;
    }
    rat_to_f64(&(p.eval(&xr).abs() / scale))
}

/// Zeros of `R_m` mapped through `z(theta)` against the Sturm-isolated zeros
/// of `P_m` in `I`: equal counts, and each image inside its own interval
/// widened by `tol max(1, |z|)`.
pub fn cross_check_roots(params: FamilyParams, m: usize, tol: f64) -> Result<CrossCheck> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let pm = family::generate(params, m).pop().unwrap();
    let degree = pm.degree().ok_or(Error::ZeroPolynomial)?;
    let thetas = if degree == 0 {
        Vec::new()
    } else {
        qspec::find_r_roots_with(params, m, &LazyPoly::with(params, m, pm.clone()))?
    };
    let intervals = if degree == 0 {
        Vec::new()
    } else {
        let chain = SturmChain::new(&pm)?;
        let interval = curve::interval_i(params);
        let mut lo = interval.lo.clone();
        if pm.sign_at(&lo) == Sign::NoSign {
            lo = nudge_off_root(&chain, &lo, true);
        }
        let hi = match &interval.hi {
            UpperBound::Finite(h) if pm.sign_at(h) == Sign::NoSign => nudge_off_root(&chain, h, false),
            UpperBound::Finite(h) => h.clone(),
            UpperBound::Infinite => pm.cauchy_bound().max(&lo + BigRat::from_integer(1.into())),
        };
        isolate_with_chain(&chain, &lo, &hi, &f64_to_rat(ISOLATION_WIDTH))?
    };
    if thetas.len() != intervals.len() {
        return Err(Error::CountMismatch {
            theta_roots: thetas.len(),
            sturm_roots: intervals.len(),
        });
    }
    let mut zs = thetas
        .iter()
        .map(|&t| curve::z_of_theta(params, t).map(|s| s.z))
        .collect::<Result<Vec<f64>>>()?;
    zs.sort_by(f64::total_cmp);
    let mut misplaced = Vec::new();
    let mut max_residual: f64 = 0.0;
    for (k, (z, iv)) in zs.iter().zip(&intervals).enumerate() {
        let widen = tol * z.abs().max(1.0);
        let (lo, hi) = (rat_to_f64(&iv.lo), rat_to_f64(&iv.hi));
        if !(*z >= lo - widen && *z <= hi + widen) {
            misplaced.push(k);
        }
        max_residual = max_residual.max(relative_residual(&pm, *z));
    }
    Ok(CrossCheck {
        params,
        m,
        pass: misplaced.is_empty() && max_residual < RESIDUAL_LIMIT,
        count: zs.len(),
        max_residual,
        misplaced,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    pub params: FamilyParams,
    pub bins: usize,
    pub m_max: usize,
    pub covered: usize,
    pub coverage_fraction: f64,
}

/// Equal `theta`-bins of `(0, pi/r)` hit by a zero of some `R_m`,
/// `m <= m_max`.
pub fn density_scan(params: FamilyParams, m_max: usize, bins: usize) -> Result<DensityReport> {
    if bins == 0 {
        return Err(Error::InvalidArgument("bins must be at least 1".into()));
    }
    let top = theta_max(params);
    let hits = (0..=m_max)
        .into_par_iter()
        .map(|m| {
            let mut hit = vec![false; bins];
            for t in qspec::find_R_roots(params, m)? {
                let b = ((t / top) * bins as f64) as usize;
                hit[b.min(bins - 1)] = true;
            }
            Ok(hit)
        })
        .try_reduce(
            || vec![false; bins],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x |= y);
                Ok(a)
            },
        )?;
    let covered = hits.iter().filter(|&&h| h).count();
    Ok(DensityReport {
        params,
        bins,
        m_max,
        covered,
        coverage_fraction: covered as f64 / bins as f64,
    })
}

/// Terms below this are treated as underflowed.
const EXPSUM_FLOOR: f64 = 1e-300;

/// Sign of the real part of
/// `sum_{k=0}^{n-1} w_k exp(-(cos(pi/n) - w_k) h pi / sin(pi/n))`,
/// `w_k = e^{(2k-1) pi i / n}`. For `n = 2` the sum vanishes identically and
/// the sign of its leading pair, `2 (-1)^h cos(pi/n)`, read with the cosine
/// as positive, is returned.
pub fn expsum_sign(n: u32, h: u32) -> Result<i8> {
    if n < 2 || h < 1 {
        return Err(Error::InvalidArgument(format!("expsum needs n >= 2 and h >= 1, got n = {n}, h = {h}")));
    }
    if n == 2 {
        return Ok(alternating(h as usize));
    }
    let base = PI / n as f64;
    let scale = h as f64 * PI / base.sin();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    let mut any = false;
    for k in 0..n {
        let w = Complex64::from_polar(1.0, (2.0 * k as f64 - 1.0) * base);
        let term = w * (-(base.cos() - w) * scale).exp();
        if term.norm() >= EXPSUM_FLOOR {
            any = true;
        }
        magnitude += term.norm();
        sum += term;
    }
    if !any {
        return Err(Error::NumericUnderflow);
    }
    if sum.im.abs() >= 1e-9 * magnitude {
        return Err(Error::NonRealResidue(sum.im));
    }
    Ok(if sum.re > 0.0 { 1 } else { -1 })
}
