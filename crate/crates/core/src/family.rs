//! The polynomials `P_m(z)` defined by `sum_m P_m(z) t^m = 1 / D(t, z)` with
//! `D(t, z) = (1 - t)^n + z t^r`.
//!
//! Equating coefficients gives, for `m >= 1`,
//!
//! ```text
//! sum_{j=0}^{min(n,m)} (-1)^j C(n,j) P_{m-j}  +  z P_{m-r} [m >= r]  =  0
//! ```
//!
//! with `P_0 = 1`, so every `P_m` has integer coefficients.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::aberth;
use crate::error::{Error, Result};
use crate::exactpoly::{BigRat, IntPoly, Poly, RatPoly};

/// The pair `(n, r)` of the denominator `(1 - t)^n + z t^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FamilyParams {
    n: u32,
    r: u32,
}

impl FamilyParams {
    pub fn new(n: u32, r: u32) -> Result<Self> {
        if n == 0 || r == 0 || n.max(r) <= 1 {
            return Err(Error::InvalidParams { n, r });
        }
        Ok(Self { n, r })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Degree of `D` in `t`, i.e. `max(n, r)`.
    pub fn order(&self) -> u32 {
        self.n.max(self.r)
    }

    /// Expected degree `floor(m / r)` of `P_m`.
    pub fn expected_degree(&self, m: usize) -> usize {
        m / self.r as usize
    }

    /// Coefficients of `D(t, z0)` in `t`, ascending.
    pub fn denominator_coeffs(&self, z0: f64) -> Vec<f64> {
        let mut c = vec![0.0; self.order() as usize + 1];
        for (j, b) in binomials(self.n).iter().enumerate() {
            let v = b.to_string().parse::<f64>().unwrap();
            c[j] = if j % 2 == 0 { v } else { -v };
        }
        c[self.r as usize] += z0;
        c
    }

    pub fn denominator_at(&self, t: Complex64, z0: f64) -> Complex64 {
        (Complex64::new(1.0, 0.0) - t).powu(self.n) + t.powu(self.r) * z0
    }
}

impl std::fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(n={}, r={})", self.n, self.r)
    }
}

fn binomials(n: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = row.last().unwrap() * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// `P_0, ..., P_{m_max}` exactly.
pub fn generate(params: FamilyParams, m_max: usize) -> Vec<IntPoly> {
    let n = params.n as usize;
    let r = params.r as usize;
    let signed_binom: Vec<BigInt> = binomials(params.n)
        .into_iter()
        .enumerate()
        .map(|(j, b)| if j % 2 == 0 { b } else { -b })
        .collect();
    let mut out: Vec<IntPoly> = Vec::with_capacity(m_max + 1);
    out.push(IntPoly::constant(BigInt::one()));
    for m in 1..=m_max {
        // P_m = -sum_{j>=1} (-1)^j C(n,j) P_{m-j} - z P_{m-r}
        let mut acc = IntPoly::zero();
        for (j, b) in signed_binom.iter().enumerate().take(n.min(m) + 1).skip(1) {
            acc = &acc - &out[m - j].scale(b);
        }
        if m >= r {
            acc = &acc - &out[m - r].shift(1);
        }
        out.push(acc);
    }
    out
}

/// Denominator `Q(t) + z t^r` with arbitrary rational `Q`, `Q(0) > 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneralDenominator {
    #[serde(serialize_with = "serialize_rats")]
    qcoeffs: Vec<BigRat>,
    r: u32,
    /// Unchecked caller claim that `Q` has only positive real zeros.
    pub roots_claimed_positive_real: bool,
}

fn serialize_rats<S: serde::Serializer>(v: &[BigRat], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

impl GeneralDenominator {
    pub fn new(qcoeffs: Vec<BigRat>, r: u32, roots_claimed_positive_real: bool) -> Result<Self> {
        let q = RatPoly::new(qcoeffs);
        if r == 0 {
            return Err(Error::InvalidArgument("r must be positive".into()));
        }
        let c0 = q.coeff(0);
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        if c0.is_negative() {
            return Err(Error::InvalidArgument("Q(0) must be positive".into()));
        }
        Ok(Self {
            qcoeffs: q.into_coeffs(),
            r,
            roots_claimed_positive_real,
        })
    }

    /// `(1 - t)^n` as a general denominator.
    pub fn binomial(params: FamilyParams) -> Self {
        let q = binomials(params.n)
            .into_iter()
            .enumerate()
            .map(|(j, b)| BigRat::from_integer(if j % 2 == 0 { b } else { -b }))
            .collect();
        Self {
            qcoeffs: q,
            r: params.r,
            roots_claimed_positive_real: true,
        }
    }

    pub fn qcoeffs(&self) -> &[BigRat] {
        &self.qcoeffs
    }

    pub fn r(&self) -> u32 {
        self.r
    }
}

/// Power-series coefficients of `1 / (Q(t) + z t^r)`, each a polynomial in
/// `z` with rational coefficients.
pub fn generate_general(den: &GeneralDenominator, m_max: usize) -> Result<Vec<RatPoly>> {
    let q = &den.qcoeffs;
    let q0 = q.first().filter(|c| !c.is_zero()).ok_or(Error::ZeroConstantTerm)?;
    let inv_q0 = q0.recip();
    let r = den.r as usize;
    let mut out: Vec<RatPoly> = Vec::with_capacity(m_max + 1);
    out.push(Poly::constant(inv_q0.clone()));
    for m in 1..=m_max {
        let mut acc = RatPoly::zero();
        for (j, qj) in q.iter().enumerate().take(m + 1).skip(1) {
            if !qj.is_zero() {
                acc = &acc + &out[m - j].scale(qj);
            }
        }
        if m >= r {
            acc = &acc + &out[m - r].shift(1);
        }
        out.push(acc.scale(&-inv_q0.clone()));
    }
    Ok(out)
}

/// `P_m(z0)` from the Cauchy coefficient formula
/// `(1 / 2 pi i) \oint dt / (t^{m+1} D(t, z0))` over `|t| = radius`,
/// discretised by the trapezoidal rule on `nodes` equispaced points.
pub fn eval_series_oracle(
    params: FamilyParams,
    m: usize,
    z0: f64,
    radius: f64,
    nodes: usize,
) -> Result<Complex64> {
    if nodes < 4 * (m + 1) {
        return Err(Error::InvalidArgument(format!(
            "need at least {} nodes for m = {m}, got {nodes}",
            4 * (m + 1)
        )));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidArgument(format!("bad contour radius {radius}")));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..nodes {
        let angle = 2.0 * PI * j as f64 / nodes as f64;
        let t = Complex64::from_polar(radius, angle);
        let d = params.denominator_at(t, z0);
        if d.norm() < 1e-12 {
            return Err(Error::SingularOnContour(d.norm()));
        }
        // t^{-m} with t = radius e^{i angle}
        let t_pow = Complex64::from_polar(radius.powi(-(m as i32)), -(m as f64) * angle);
        sum += t_pow / d;
    }
    Ok(sum / nodes as f64)
}

/// Contour radius for [`eval_series_oracle`] balancing rounding error
/// (`~ c^-m eps`) against aliasing (`~ c^nodes`), with `c` the fraction of
/// the distance to the nearest zero of `D(., z0)`.
pub fn oracle_radius(params: FamilyParams, m: usize, z0: f64, nodes: usize) -> f64 {
    let coeffs = params.denominator_coeffs(z0);
    let nearest = aberth::aberth(&coeffs, &[])
        .roots
        .iter()
        .map(|t| t.norm())
        .fold(f64::INFINITY, f64::min);
    let c = f64::EPSILON
        .powf(1.0 / (m + nodes) as f64)
        .clamp(1e-3, 0.95);
    c * nearest.min(1e6)
}

/// `P_m(z0)` computed exactly and rounded once.
pub fn eval_exact_f64(p: &IntPoly, z0: f64) -> f64 {
    crate::exactpoly::rat_to_f64(&p.eval(&crate::exactpoly::f64_to_rat(z0)))
}

/// Residual of the defining recurrence at index `m >= 1`; zero for every
/// correctly generated family.
pub fn recurrence_residual(params: FamilyParams, polys: &[IntPoly], m: usize) -> IntPoly {
    let n = params.n as usize;
    let r = params.r as usize;
    let b = binomials(params.n);
    let mut acc = IntPoly::zero();
    for j in 0..=n.min(m) {
        let c = if j % 2 == 0 { b[j].clone() } else { -b[j].clone() };
        acc = &acc + &polys[m - j].scale(&c);
    }
    if m >= r {
        acc = &acc + &polys[m - r].shift(1);
    }
    acc
}
