//! Exact and numeric machinery for the polynomial families `P_m(z)` generated
//! by `1 / ((1 - t)^n + z t^r)`: exact generation, Sturm-certified root
//! location, the real parametrisation `z(theta)` of the limiting interval,
//! the characteristic polynomial `Q(zeta)` and the real function `R_m(theta)`
//! whose zeros map onto the zeros of `P_m`.

pub mod curve;
pub mod error;
pub mod exactpoly;
pub mod family;
pub mod qspec;
pub mod verify;

mod aberth;

pub use error::{Error, Result};
pub use curve::{IntervalI, ThetaSample};
pub use exactpoly::{BigRat, IntPoly, IsolatedRoot, Poly, RatPoly, SturmChain};
pub use family::{FamilyParams, GeneralDenominator};
pub use qspec::{CPoint, QSpectrum};
pub use verify::{CrossCheck, DensityReport, SignPattern, VerifyReport};
pub use num_bigint::BigInt;
