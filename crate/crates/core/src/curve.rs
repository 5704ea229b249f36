//! Real-analytic quantities on `theta in (0, pi/r)`.
//!
//! With `phi = ((n-1) pi + r theta) / n`, the map
//!
//! ```text
//! z(theta) = sin^n(theta) / (sin^{n-r}(phi - theta) sin^r(phi))
//! ```
//!
//! is an increasing bijection of `(0, pi/r)` onto the interval `I` where the
//! zeros of `P_m` accumulate. Everything here is double precision.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactpoly::{rat_to_f64, BigRat};
use crate::family::FamilyParams;

/// Point on the curve with the quantities derived from it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThetaSample {
    pub theta: f64,
    pub phi: f64,
    pub z: f64,
    pub a_val: f64,
    pub b_val: f64,
    /// `|t_0| = sin(phi) / sin(phi - theta)`, modulus of the zero
    /// `t_0 = |t_0| e^{-i theta}` of `D(., z)`.
    pub t0_ratio: f64,
}

/// Upper end of [`IntervalI`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UpperBound {
    Finite(BigRat),
    Infinite,
}

impl Serialize for UpperBound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            UpperBound::Finite(x) => s.serialize_str(&x.to_string()),
            UpperBound::Infinite => s.serialize_none(),
        }
    }
}

/// The open interval containing the zeros of `P_m` for large `m`, with exact
/// rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalI {
    #[serde(serialize_with = "serialize_rat")]
    pub lo: BigRat,
    pub hi: UpperBound,
}

fn serialize_rat<S: Serializer>(x: &BigRat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl IntervalI {
    pub fn lo_f64(&self) -> f64 {
        rat_to_f64(&self.lo)
    }

    /// `None` when the interval is unbounded above.
    pub fn hi_f64(&self) -> Option<f64> {
        match &self.hi {
            UpperBound::Finite(x) => Some(rat_to_f64(x)),
            UpperBound::Infinite => None,
        }
    }

    pub fn contains(&self, z: f64) -> bool {
        z > self.lo_f64() && self.hi_f64().is_none_or(|h| z < h)
    }

    pub fn contains_rat(&self, z: &BigRat) -> bool {
        z > &self.lo
            && match &self.hi {
                UpperBound::Finite(h) => z < h,
                UpperBound::Infinite => true,
            }
    }

    fn hi_string(&self) -> String {
        match &self.hi {
            UpperBound::Finite(h) => h.to_string(),
            UpperBound::Infinite => "inf".into(),
        }
    }
}

fn int_pow(base: i64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// `(0, inf)` for `n, r >= 2`; `(0, n^n / (n-1)^(n-1))` for `r = 1`;
/// `((r-1)^(r-1) / r^r, inf)` for `n = 1`.
pub fn interval_i(params: FamilyParams) -> IntervalI {
    let (n, r) = (params.n(), params.r());
    if r == 1 {
        IntervalI {
            lo: BigRat::zero(),
            hi: UpperBound::Finite(BigRat::new(int_pow(n as i64, n), int_pow(n as i64 - 1, n - 1))),
        }
    } else if n == 1 {
        IntervalI {
            lo: BigRat::new(int_pow(r as i64 - 1, r - 1), int_pow(r as i64, r)),
            hi: UpperBound::Infinite,
        }
    } else {
        IntervalI {
            lo: BigRat::zero(),
            hi: UpperBound::Infinite,
        }
    }
}

/// Upper end `pi / r` of the theta domain.
pub fn theta_max(params: FamilyParams) -> f64 {
    PI / params.r() as f64
}

pub fn phi_of(params: FamilyParams, theta: f64) -> f64 {
    let n = params.n() as f64;
    ((n - 1.0) * PI + params.r() as f64 * theta) / n
}

/// `pi - PI`, the part of pi an f64 cannot hold.
const PI_LO: f64 = 1.2246467991473532e-16;

/// Sines and cosines of `theta`, `phi` and `phi - theta` computed from the
/// offsets `pi - r theta` and `pi - theta`, reduced without cancellation, so
/// that they stay accurate next to both ends of `(0, pi/r)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Trig {
    pub sin_theta: f64,
    pub cos_theta: f64,
    pub sin_phi: f64,
    pub sin_phi_theta: f64,
    pub cos_phi_theta: f64,
}

pub fn trig(params: FamilyParams, theta: f64) -> Trig {
    let (n, r) = (params.n() as f64, params.r() as f64);
    // pi - phi = (pi - r theta) / n and phi - theta = (pi - theta) - (pi - phi)
    let (sin_phi, phi_theta) = if params.n() == 1 {
        ((r * theta).sin(), (r - 1.0) * theta)
    } else {
        let e = (-r).mul_add(theta, PI) + PI_LO;
        let g = (PI - theta) + PI_LO;
        ((e / n).sin(), g - e / n)
    };
    Trig {
        sin_theta: theta.sin(),
        cos_theta: theta.cos(),
        sin_phi,
        sin_phi_theta: phi_theta.sin(),
        cos_phi_theta: phi_theta.cos(),
    }
}

pub fn sin_phi_minus_theta(params: FamilyParams, theta: f64) -> f64 {
    trig(params, theta).sin_phi_theta
}

fn check_domain(params: FamilyParams, theta: f64) -> Result<()> {
    let upper = theta_max(params);
    if theta > 0.0 && theta < upper {
        Ok(())
    } else {
        Err(Error::OutOfDomain { theta, upper })
    }
}

pub fn z_of_theta(params: FamilyParams, theta: f64) -> Result<ThetaSample> {
    check_domain(params, theta)?;
    let (n, r) = (params.n() as i32, params.r() as i32);
    let phi = phi_of(params, theta);
    let tr = trig(params, theta);
    let (s_t, s_p, s_pt, c_pt) = (tr.sin_theta, tr.sin_phi, tr.sin_phi_theta, tr.cos_phi_theta);
    // grouped so both factors stay O(1) near the ends of the domain
    let z = if n >= r {
        (s_t / s_pt).powi(n - r) * (s_t / s_p).powi(r)
    } else {
        (s_pt / s_p).powi(r - n) * (s_t / s_p).powi(n)
    };
    let ratio = s_p / s_t;
    Ok(ThetaSample {
        theta,
        phi,
        z,
        a_val: -(n as f64) * ratio * c_pt + r as f64,
        b_val: n as f64 * ratio * s_pt,
        t0_ratio: s_p / s_pt,
    })
}

/// Inverse of `z(theta)` by monotone bisection; stops once
/// `|z(theta) - z| < tol` or the bracket cannot shrink further.
pub fn theta_of_z(params: FamilyParams, z: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let interval = interval_i(params);
    if !interval.contains(z) {
        return Err(Error::OutOfInterval {
            z,
            lo: interval.lo_f64(),
            hi: interval.hi_string(),
        });
    }
    let mut lo = 0.0;
    let mut hi = theta_max(params);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let zm = z_of_theta(params, mid)?.z;
        if (zm - z).abs() < tol {
            return Ok(mid);
        }
        if zm < z {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Analytic endpoint limits of the quotients that make up `z(theta)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EndpointLimits {
    /// `r = 1`, `theta -> pi`: `(sin theta / sin(phi - theta), sin theta / sin phi) -> (n/(n-1), n)`.
    pub at_pi: Option<(f64, f64)>,
    /// `n = 1`, `theta -> 0`: `(sin theta / sin phi, sin(phi - theta) / sin phi) -> (1/r, (r-1)/r)`.
    pub at_zero: Option<(f64, f64)>,
}

pub fn endpoint_limits(params: FamilyParams) -> Result<EndpointLimits> {
    let (n, r) = (params.n() as f64, params.r() as f64);
    let at_pi = (params.r() == 1).then(|| (n / (n - 1.0), n));
    let at_zero = (params.n() == 1).then(|| (1.0 / r, (r - 1.0) / r));
    if at_pi.is_none() && at_zero.is_none() {
        return Err(Error::WrongCase {
            what: "the z(theta) quotients",
            case: "r = 1 or n = 1",
        });
    }
    Ok(EndpointLimits { at_pi, at_zero })
}

/// The quotients `(sin t / sin(p - t), sin t / sin p, sin(p - t) / sin p)`
/// evaluated at `theta`, for comparing against [`endpoint_limits`].
pub fn endpoint_quotients(params: FamilyParams, theta: f64) -> (f64, f64, f64) {
    let tr = trig(params, theta);
    (
        tr.sin_theta / tr.sin_phi_theta,
        tr.sin_theta / tr.sin_phi,
        tr.sin_phi_theta / tr.sin_phi,
    )
}

/// Location of the unique double zero of `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DoubleZero {
    pub theta_star: f64,
    pub z_star: f64,
    pub zeta_star: f64,
}

/// Exact `z* = (-1)^(r+1) n^n / (r^r (n-r)^(n-r))`, or `None` unless
/// `n > r > 1` with `r` odd or `r > n > 1` with `n` odd. `0^0 = 1`.
pub fn double_zero_z(params: FamilyParams) -> Option<BigRat> {
    let (n, r) = (params.n(), params.r());
    let applies = (n > r && r > 1 && r % 2 == 1) || (r > n && n > 1 && n % 2 == 1);
    if !applies {
        return None;
    }
    let d = n as i64 - r as i64;
    // (n - r)^(n - r), negative exponent allowed
    let dpow = if d >= 0 {
        BigRat::from_integer(num_traits::pow(BigInt::from(d), d as usize))
    } else {
        BigRat::from_integer(num_traits::pow(BigInt::from(d), (-d) as usize)).recip()
    };
    let sign = if r % 2 == 1 { BigInt::one() } else { -BigInt::one() };
    let z = BigRat::from_integer(sign * int_pow(n as i64, n))
        / (BigRat::from_integer(int_pow(r as i64, r)) * dpow);
    debug_assert!(z.is_positive());
    Some(z)
}

pub fn double_zero_theta(params: FamilyParams, tol: f64) -> Result<Option<DoubleZero>> {
    let Some(z_exact) = double_zero_z(params) else {
        return Ok(None);
    };
    let z_target = rat_to_f64(&z_exact);
    let theta = theta_of_z(params, z_target, tol)?;
    let sample = z_of_theta(params, theta)?;
    let (n, r) = (params.n() as f64, params.r() as f64);
    let tr = trig(params, theta);
    let zeta = -(r / (n - r)) * tr.sin_phi_theta / tr.sin_phi;
    Ok(Some(DoubleZero {
        theta_star: theta,
        z_star: sample.z,
        zeta_star: zeta,
    }))
}

/// `n_samples` equally spaced interior points of `(0, pi/r)`.
pub fn theta_grid(params: FamilyParams, n_samples: usize) -> Vec<f64> {
    let top = theta_max(params);
    (1..=n_samples)
        .map(|i| top * i as f64 / (n_samples + 1) as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn p(n: u32, r: u32) -> FamilyParams {
        FamilyParams::new(n, r).unwrap()
    }

    #[test]
    fn interval_cases() {
        let i = interval_i(p(3, 1));
        assert_eq!(i.lo, BigRat::zero());
        assert_eq!(i.hi, UpperBound::Finite(BigRat::new(27.into(), 4.into())));
        let i = interval_i(p(1, 3));
        assert_eq!(i.lo, BigRat::new(4.into(), 27.into()));
        assert_eq!(i.hi, UpperBound::Infinite);
        let i = interval_i(p(2, 2));
        assert_eq!(i.lo, BigRat::zero());
        assert_eq!(i.hi, UpperBound::Infinite);
        assert!(i.contains(1e300));
        assert!(!i.contains(0.0));
    }

    #[test]
    fn z_examples() {
        let s = z_of_theta(p(2, 2), PI / 4.0).unwrap();
        assert!((s.phi - 3.0 * PI / 4.0).abs() < 1e-15);
        assert!((s.z - 1.0).abs() < 1e-14);
        let s = z_of_theta(p(3, 1), PI / 2.0).unwrap();
        assert!((s.z - 8.0 / 3.0).abs() < 1e-14);
        assert!((s.a_val - 0.25).abs() < 1e-14);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(z_of_theta(p(3, 2), 0.0), Err(Error::OutOfDomain { .. })));
        assert!(matches!(z_of_theta(p(3, 2), PI / 2.0), Err(Error::OutOfDomain { .. })));
        assert!(matches!(
            theta_of_z(p(3, 1), 7.0, 1e-10),
            Err(Error::OutOfInterval { .. })
        ));
        assert!(matches!(
            theta_of_z(p(1, 3), 0.1, 1e-10),
            Err(Error::OutOfInterval { .. })
        ));
    }

    #[test]
    fn inverse_examples() {
        let t = theta_of_z(p(2, 2), 1.0, 1e-12).unwrap();
        assert!((t - PI / 4.0).abs() < 1e-10);
        let t = theta_of_z(p(3, 1), 8.0 / 3.0, 1e-12).unwrap();
        assert!((t - PI / 2.0).abs() < 1e-10);
        let mid = 27.0 / 8.0;
        let t = theta_of_z(p(3, 1), mid, 1e-10).unwrap();
        assert!((z_of_theta(p(3, 1), t).unwrap().z - mid).abs() < 1e-10);
    }

    #[test]
    fn limits() {
        let l = endpoint_limits(p(3, 1)).unwrap();
        assert_eq!(l.at_pi, Some((1.5, 3.0)));
        assert_eq!(l.at_zero, None);
        let l = endpoint_limits(p(1, 3)).unwrap();
        let (third, fourth) = l.at_zero.unwrap();
        assert!((third - 1.0 / 3.0).abs() < 1e-15 && (fourth - 2.0 / 3.0).abs() < 1e-15);
        assert!(matches!(endpoint_limits(p(2, 2)), Err(Error::WrongCase { .. })));
    }

    #[test]
    fn double_zero_cases() {
        assert_eq!(double_zero_z(p(4, 3)), Some(BigRat::new(256.into(), 27.into())));
        assert_eq!(double_zero_z(p(3, 3)), None);
        assert_eq!(double_zero_z(p(4, 2)), None);
        // r > n > 1, n odd: (n - r)^(n - r) = (-1)^(-1)
        assert_eq!(double_zero_z(p(3, 4)), Some(BigRat::new(27.into(), 256.into())));
        let dz = double_zero_theta(p(4, 3), 1e-13).unwrap().unwrap();
        assert!((dz.z_star - 256.0 / 27.0).abs() < 1e-10);
        assert!(dz.zeta_star < -1.0);
    }

    #[test]
    fn t0_is_a_zero_of_d() {
        for (n, r) in [(3, 1), (2, 3), (4, 3), (5, 5), (1, 2)] {
            let params = p(n, r);
            for theta in theta_grid(params, 17) {
                let s = z_of_theta(params, theta).unwrap();
                let t0 = Complex64::from_polar(s.t0_ratio, -theta);
                let d = params.denominator_at(t0, s.z);
                assert!(d.norm() < 1e-9 * (1.0 + s.z.abs()), "{params} theta={theta} |D|={}", d.norm());
            }
        }
    }
}
