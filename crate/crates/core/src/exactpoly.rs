//! Dense univariate polynomials with exact coefficients, and real-root
//! counting/isolation by Sturm sequences.
//!
//! Coefficients are stored in ascending order (`coeffs[i]` multiplies `z^i`)
//! with no trailing zeros. The zero polynomial is the empty coefficient list
//! and has degree `None` (the `-inf` sentinel).
//!
//! Sturm chains are built as a primitive pseudo-remainder sequence over the
//! integers: every remainder is divided by its content and its sign is fixed
//! so that the chain agrees, up to positive factors, with the classical
//! `p, p', -rem(p, p'), ...` sequence. Sign variations are then evaluated at
//! rational points without ever leaving the integers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type BigRat = BigRational;

/// Dense polynomial over a coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type IntPoly = Poly<BigInt>;
pub type RatPoly = Poly<BigRat>;

impl<T: Zero> Default for Poly<T> {
    fn default() -> Self {
        Self { coeffs: Vec::new() }
    }
}

impl<T: Zero + Clone> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * z^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Coefficient of `z^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }
}

impl<T> Poly<T>
where
    T: Zero + Clone,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }
}

impl<T> Poly<T>
where
    T: Zero + Clone + From<u32>,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &T::from(i as u32))
                .collect(),
        )
    }
}

impl<'a, T> Add<&'a Poly<T>> for &'a Poly<T>
where
    T: Zero + Clone,
    for<'b> &'b T: Add<&'b T, Output = T>,
{
    type Output = Poly<T>;

    fn add(self, rhs: &'a Poly<T>) -> Poly<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = T::zero();
        Poly::new(
            (0..len)
                .map(|i| {
                    let a = self.coeffs.get(i).unwrap_or(&zero);
                    let b = rhs.coeffs.get(i).unwrap_or(&zero);
                    a + b
                })
                .collect(),
        )
    }
}

impl<'a, T> Sub<&'a Poly<T>> for &'a Poly<T>
where
    T: Zero + Clone,
    for<'b> &'b T: Sub<&'b T, Output = T>,
{
    type Output = Poly<T>;

    fn sub(self, rhs: &'a Poly<T>) -> Poly<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = T::zero();
        Poly::new(
            (0..len)
                .map(|i| {
                    let a = self.coeffs.get(i).unwrap_or(&zero);
                    let b = rhs.coeffs.get(i).unwrap_or(&zero);
                    a - b
                })
                .collect(),
        )
    }
}

impl<'a, T> Mul<&'a Poly<T>> for &'a Poly<T>
where
    T: Zero + Clone,
    for<'b> &'b T: Mul<&'b T, Output = T>,
{
    type Output = Poly<T>;

    fn mul(self, rhs: &'a Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = std::mem::replace(&mut out[i + j], T::zero()) + a * b;
            }
        }
        Poly::new(out)
    }
}

impl<T> Neg for &Poly<T>
where
    T: Zero + Clone,
    for<'b> &'b T: Neg<Output = T>,
{
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl<T> $tr<Poly<T>> for Poly<T>
        where
            for<'a> &'a Poly<T>: $tr<&'a Poly<T>, Output = Poly<T>>,
        {
            type Output = Poly<T>;

            fn $m(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

pub fn poly_add(a: &IntPoly, b: &IntPoly) -> IntPoly {
    a + b
}

pub fn poly_sub(a: &IntPoly, b: &IntPoly) -> IntPoly {
    a - b
}

pub fn poly_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    a * b
}

pub fn poly_scale(a: &IntPoly, c: &BigInt) -> IntPoly {
    a.scale(c)
}

impl IntPoly {
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_rat(&self) -> RatPoly {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| BigRat::from_integer(c.clone()))
                .collect(),
        }
    }

    /// Non-negative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the content, keeping the sign of every coefficient.
    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRat::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sign of `p(x)`, computed from the homogenised form so no rational
    /// arithmetic is needed.
    pub fn sign_at(&self, x: &BigRat) -> Sign {
        let d = match self.degree() {
            None => return Sign::NoSign,
            Some(d) => d,
        };
        // BigRational keeps the denominator positive.
        let (num, den) = (x.numer(), x.denom());
        let mut acc = self.coeffs[d].clone();
        let mut qpow = BigInt::one();
        for c in self.coeffs[..d].iter().rev() {
            qpow *= den;
            acc = acc * num + c * &qpow;
        }
        acc.sign()
    }

    /// Sign as `z -> +inf` (`at_neg = false`) or `z -> -inf`.
    pub fn sign_at_infinity(&self, at_neg: bool) -> Sign {
        match (self.leading(), self.degree()) {
            (Some(lc), Some(d)) => {
                if at_neg && d % 2 == 1 {
                    -lc.sign()
                } else {
                    lc.sign()
                }
            }
            _ => Sign::NoSign,
        }
    }

    /// Floating-point Horner evaluation. Coefficients beyond f64 range give
    /// infinities; use [`IntPoly::eval`] when exactness matters.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Cauchy bound `1 + max|c_i| / |lead|`: every real root lies strictly
    /// inside `(-B, B)`.
    pub fn cauchy_bound(&self) -> BigRat {
        match self.leading() {
            None => BigRat::one(),
            Some(lc) => {
                let max = self.coeffs[..self.coeffs.len() - 1]
                    .iter()
                    .map(|c| c.abs())
                    .max()
                    .unwrap_or_else(BigInt::zero);
                BigRat::one() + BigRat::new(max, lc.abs())
            }
        }
    }
}

impl RatPoly {
    pub fn from_ratios(coeffs: &[(i64, i64)]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&(p, q)| BigRat::new(p.into(), q.into()))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Positive multiple of `self` with coprime integer coefficients.
    pub fn to_int_primitive(&self) -> IntPoly {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| (c * BigRat::from_integer(lcm.clone())).to_integer())
                .collect(),
        )
        .primitive_part()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}z")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{mag}z^{i}")?,
            }
        }
        Ok(())
    }
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`, computed without division.
fn pseudo_remainder(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.degree().expect("pseudo-remainder by zero polynomial");
    let lc = b.leading().unwrap().clone();
    let mut r = a.clone();
    let mut e = match a.degree() {
        Some(da) if da >= db => da - db + 1,
        _ => return r,
    };
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let lr = r.leading().unwrap().clone();
        r = &r.scale(&lc) - &b.shift(dr - db).scale(&lr);
        e -= 1;
    }
    if e > 0 {
        r = r.scale(&num_traits::pow(lc, e));
    }
    r
}

/// Sturm sequence of a nonzero polynomial, stored as primitive integer
/// polynomials equal to the classical chain up to positive factors.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut chain = vec![p.primitive_part()];
        let dp = p.derivative();
        if !dp.is_zero() {
            chain.push(dp.primitive_part());
        }
        while chain.len() >= 2 {
            let a = &chain[chain.len() - 2];
            let b = &chain[chain.len() - 1];
            let prem = pseudo_remainder(a, b);
            if prem.is_zero() {
                break;
            }
            // prem = lc(b)^k * rem with k = deg a - deg b + 1; the chain needs -rem.
            let k = a.degree().unwrap() - b.degree().unwrap() + 1;
            let flip = !(b.leading().unwrap().is_negative() && k % 2 == 1);
            let next = prem.primitive_part();
            chain.push(if flip { -&next } else { next });
        }
        Ok(Self { chain })
    }

    pub fn poly(&self) -> &IntPoly {
        &self.chain[0]
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.chain
    }

    fn variations_of(signs: impl Iterator<Item = Sign>) -> usize {
        let mut last = Sign::NoSign;
        let mut count = 0;
        for s in signs {
            if s == Sign::NoSign {
                continue;
            }
            if last != Sign::NoSign && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations(&self, x: &BigRat) -> usize {
        Self::variations_of(self.chain.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_infinity(&self, at_neg: bool) -> usize {
        Self::variations_of(self.chain.iter().map(|p| p.sign_at_infinity(at_neg)))
    }

    /// Number of distinct real roots in the open interval `(lo, hi)`.
    pub fn count(&self, lo: &BigRat, hi: &BigRat) -> Result<usize> {
        if lo >= hi {
            return Err(Error::EmptyInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        for x in [lo, hi] {
            if self.chain[0].sign_at(x) == Sign::NoSign {
                return Err(Error::EndpointIsRoot(x.to_string()));
            }
        }
        Ok(self.variations(lo) - self.variations(hi))
    }

    /// Number of distinct real roots on the whole line.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(true) - self.variations_at_infinity(false)
    }
}

/// Exact number of distinct real roots of `p` in `(lo, hi)`.
pub fn sturm_count(p: &RatPoly, lo: &BigRat, hi: &BigRat) -> Result<usize> {
    SturmChain::new(&p.to_int_primitive())?.count(lo, hi)
}

/// An interval `[lo, hi]` holding exactly one root of the polynomial it was
/// isolated from. When the root was hit exactly, `lo == hi == exact`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub lo: BigRat,
    pub hi: BigRat,
    pub exact: Option<BigRat>,
}

impl IsolatedRoot {
    pub fn midpoint_f64(&self) -> f64 {
        rat_to_f64(&((&self.lo + &self.hi) / BigRat::from_integer(2.into())))
    }

    pub fn width(&self) -> BigRat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRat) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// Move `x` by the smallest tried `±2^-k` (k = 32, 33, ...) that avoids a root
/// of the chain's polynomial.
pub fn nudge_off_root(chain: &SturmChain, x: &BigRat, upward: bool) -> BigRat {
    if chain.poly().sign_at(x) != Sign::NoSign {
        return x.clone();
    }
    let mut k = 32u32;
    loop {
        let step = BigRat::new(BigInt::one(), num_traits::pow(BigInt::from(2), k as usize));
        let y = if upward { x + &step } else { x - &step };
        if chain.poly().sign_at(&y) != Sign::NoSign {
            return y;
        }
        k += 1;
    }
}

/// Isolate every real root of `p` in `(lo, hi)` into disjoint, sorted
/// intervals of width at most `width`, by Sturm-driven bisection.
pub fn isolate_roots(
    p: &RatPoly,
    lo: &BigRat,
    hi: &BigRat,
    width: &BigRat,
) -> Result<Vec<IsolatedRoot>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !width.is_positive() {
        return Err(Error::NonPositiveWidth);
    }
    let ip = p.to_int_primitive();
    if ip.degree() == Some(0) {
        if lo >= hi {
            return Err(Error::EmptyInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        return Ok(Vec::new());
    }
    let chain = SturmChain::new(&ip)?;
    isolate_with_chain(&chain, lo, hi, width)
}

pub fn isolate_with_chain(
    chain: &SturmChain,
    lo: &BigRat,
    hi: &BigRat,
    width: &BigRat,
) -> Result<Vec<IsolatedRoot>> {
    let total = chain.count(lo, hi)?;
    let mut out = Vec::with_capacity(total);
    // explicit stack; pushing the upper half first keeps output sorted
    let mut stack = vec![(lo.clone(), hi.clone(), total)];
    let two = BigRat::from_integer(2.into());
    while let Some((a, b, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == usize::MAX {
            // marker for an exact root
            out.push(IsolatedRoot {
                lo: a.clone(),
                hi: a.clone(),
                exact: Some(a),
            });
            continue;
        }
        if n == 1 && &(&b - &a) <= width {
            out.push(IsolatedRoot {
                lo: a,
                hi: b,
                exact: None,
            });
            continue;
        }
        let mid = (&a + &b) / &two;
        if chain.poly().sign_at(&mid) == Sign::NoSign {
            // Exact hit: carve a root-free neighbourhood around it.
            let (left, right) = isolate_exact_hit(chain, &mid, &a, &b);
            let n_left = chain.variations(&a) - chain.variations(&left);
            let n_right = chain.variations(&right) - chain.variations(&b);
            stack.push((right, b, n_right));
            stack.push((mid.clone(), mid.clone(), usize::MAX));
            stack.push((a, left, n_left));
            continue;
        }
        let n_left = chain.variations(&a) - chain.variations(&mid);
        stack.push((mid.clone(), b, n - n_left));
        stack.push((a, mid, n_left));
    }
    Ok(out)
}

/// Root-free punctured neighbourhood `(left, right)` of an exact root `mid`
/// inside `(a, b)`.
fn isolate_exact_hit(chain: &SturmChain, mid: &BigRat, a: &BigRat, b: &BigRat) -> (BigRat, BigRat) {
    let two = BigRat::from_integer(2.into());
    let mut step = (b - a) / BigRat::from_integer(4.into());
    loop {
        let left = mid - &step;
        let right = mid + &step;
        if chain.count(&left, &right).is_ok_and(|c| c == 1) {
            return (left, right);
        }
        step /= &two;
    }
}

/// Nearest f64 to a big rational (may round to ±inf or 0 outside range).
pub fn rat_to_f64(x: &BigRat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite f64.
pub fn f64_to_rat(x: f64) -> BigRat {
    BigRat::from_float(x).expect("finite float")
}

pub fn rat_cmp_f64(x: &BigRat, y: f64) -> Ordering {
    x.cmp(&f64_to_rat(y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRat {
        BigRat::new(p.into(), q.into())
    }

    #[test]
    fn difference_of_squares() {
        let a = IntPoly::from_i64s(&[1, 1]);
        let b = IntPoly::from_i64s(&[1, -1]);
        assert_eq!(poly_mul(&a, &b), IntPoly::from_i64s(&[1, 0, -1]));
    }

    #[test]
    fn product_with_zero_is_empty() {
        let a = IntPoly::from_i64s(&[3, 1, 4]);
        let z = poly_mul(&a, &IntPoly::zero());
        assert!(z.coeffs().is_empty());
        assert_eq!(z.degree(), None);
    }

    #[test]
    fn square_minus_one() {
        let a = IntPoly::from_i64s(&[2, -1]);
        let p = poly_sub(&poly_mul(&a, &a), &IntPoly::from_i64s(&[1]));
        assert_eq!(p, IntPoly::from_i64s(&[3, -4, 1]));
        assert_eq!(p.degree(), Some(2));
    }

    #[test]
    fn trailing_zeros_normalised() {
        let p = IntPoly::from_i64s(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        let q = poly_add(&IntPoly::from_i64s(&[0, 0, 1]), &IntPoly::from_i64s(&[0, 0, -1]));
        assert!(q.is_zero());
        assert_eq!(poly_scale(&p, &BigInt::zero()), IntPoly::zero());
    }

    #[test]
    fn sturm_examples() {
        let p = RatPoly::from_ratios(&[(3, 1), (-4, 1), (1, 1)]);
        assert_eq!(sturm_count(&p, &rat(0, 1), &rat(4, 1)).unwrap(), 2);
        assert_eq!(sturm_count(&p, &rat(2, 1), &rat(4, 1)).unwrap(), 1);
        let q = RatPoly::from_ratios(&[(1, 1), (0, 1), (1, 1)]);
        assert_eq!(sturm_count(&q, &rat(-10, 1), &rat(10, 1)).unwrap(), 0);
    }

    #[test]
    fn sturm_errors() {
        let p = RatPoly::from_ratios(&[(3, 1), (-4, 1), (1, 1)]);
        assert!(matches!(
            sturm_count(&p, &rat(1, 1), &rat(4, 1)),
            Err(Error::EndpointIsRoot(_))
        ));
        assert!(matches!(
            sturm_count(&RatPoly::zero(), &rat(0, 1), &rat(1, 1)),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn sturm_counts_distinct_roots_of_repeated_factor() {
        // (z-1)^3 (z+2)
        let p = IntPoly::from_i64s(&[-1, 1]);
        let p = &(&(&p * &p) * &p) * &IntPoly::from_i64s(&[2, 1]);
        let chain = SturmChain::new(&p).unwrap();
        assert_eq!(chain.count(&rat(-5, 1), &rat(5, 1)).unwrap(), 2);
        assert_eq!(chain.count_all(), 2);
    }

    #[test]
    fn isolate_quadratic() {
        let p = RatPoly::from_ratios(&[(3, 1), (-4, 1), (1, 1)]);
        let roots = isolate_roots(&p, &rat(0, 1), &rat(4, 1), &rat(1, 100)).unwrap();
        assert_eq!(roots.len(), 2);
        // bisection of (0,4) hits 1 exactly after two halvings
        assert!(roots[0].contains(&rat(1, 1)));
        assert!(roots[1].contains(&rat(3, 1)));
        for r in &roots {
            assert!(r.width() <= rat(1, 100));
        }
    }

    #[test]
    fn isolate_constant_is_empty() {
        let p = RatPoly::from_ratios(&[(5, 1)]);
        assert!(isolate_roots(&p, &rat(0, 1), &rat(1, 1), &rat(1, 10))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn isolate_golden_ratio_pair() {
        let p = RatPoly::from_ratios(&[(1, 1), (-3, 1), (1, 1)]);
        let roots = isolate_roots(&p, &rat(1, 4), &rat(10, 1), &rat(1, 1000)).unwrap();
        assert_eq!(roots.len(), 2);
        let s5 = 5f64.sqrt();
        let expect = [(3.0 - s5) / 2.0, (3.0 + s5) / 2.0];
        for (r, e) in roots.iter().zip(expect) {
            assert!(rat_to_f64(&r.lo) <= e && e <= rat_to_f64(&r.hi));
            assert!(r.width() <= rat(1, 1000));
        }
    }

    #[test]
    fn isolate_reports_exact_hits() {
        // roots at 0, 1/2 and 1 in (-1, 2): midpoint 1/2 is hit exactly
        let p = &(&IntPoly::from_i64s(&[0, 1]) * &IntPoly::from_i64s(&[-1, 2]))
            * &IntPoly::from_i64s(&[-1, 1]);
        let roots = isolate_roots(&p.to_rat(), &rat(-1, 1), &rat(2, 1), &rat(1, 8)).unwrap();
        assert_eq!(roots.len(), 3);
        assert_eq!(roots[1].exact, Some(rat(1, 2)));
        assert_eq!(roots[1].lo, roots[1].hi);
        assert!(roots.windows(2).all(|w| w[0].hi < w[1].lo));
    }

    #[test]
    fn nudge_moves_off_root() {
        let p = IntPoly::from_i64s(&[-1, 1]);
        let chain = SturmChain::new(&p).unwrap();
        let y = nudge_off_root(&chain, &rat(1, 1), true);
        assert!(y > rat(1, 1));
        assert_ne!(p.sign_at(&y), Sign::NoSign);
    }

    #[test]
    fn cauchy_bound_contains_roots() {
        let p = IntPoly::from_i64s(&[-6, 1, 1]); // roots 2, -3
        let b = p.cauchy_bound();
        assert_eq!(b, rat(7, 1));
    }

    #[test]
    fn rat_to_f64_handles_huge_parts() {
        let big = num_traits::pow(BigInt::from(10), 400);
        let x = BigRat::new(&big * 3, big.clone());
        assert_eq!(rat_to_f64(&x), 3.0);
        let y = BigRat::new(BigInt::from(1), big.clone());
        assert_eq!(rat_to_f64(&y), 0.0);
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::from_i64s(&[3, -4, 1]).to_string(), "3 - 4z + z^2");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }
}
