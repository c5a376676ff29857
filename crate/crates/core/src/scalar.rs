//! Scalar fields.
//!
//! Two concrete fields implement [`Scalar`]: [`Exact`], the real quadratic
//! field ℚ(√3) over arbitrary-precision rationals, and `f64`. ℚ(√3) is large
//! enough to hold cos and sin of every multiple of 30°, so the order-2, -3,
//! -4, -6 and -12 torus automorphisms of the classical algebras stay exact.
//! Algebras with purely rational structure constants report
//! [`Field::Rational`].

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Field marker carried into reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    /// ℚ(√3); only appears when some entry has a nonzero √3 component.
    RationalSqrt3,
    RealFloat,
}

impl Field {
    pub fn as_str(self) -> &'static str {
        match self {
            Field::Rational => "rational",
            Field::RationalSqrt3 => "rational-sqrt3",
            Field::RealFloat => "real-float",
        }
    }

    /// The smallest field containing both.
    pub fn join(self, other: Field) -> Field {
        self.max(other)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Arithmetic required by every algebraic routine in this crate.
///
/// Exact fields answer zero tests exactly; floating-point fields compare
/// against a caller-supplied relative tolerance (see [`negligible`]).
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    /// Whether zero tests are exact.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Exact test against zero (no tolerance).
    fn is_zero(&self) -> bool;
    /// Approximate absolute value, used for pivot selection and tolerances.
    fn magnitude(&self) -> f64;
    /// Sign of the value. Exact for [`Exact`]; for floats a raw sign.
    fn sign(&self) -> Ordering;
    fn to_f64(&self) -> f64;
    /// Smallest field marker describing this value.
    fn field(&self) -> Field;

    /// `(cos 2πp/q, sin 2πp/q)` if representable in this field.
    fn cos_sin_turn(p: i64, q: i64) -> Option<(Self, Self)>;

    /// Nonnegative square root, if it lies in this field.
    fn sqrt(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        (self.clone() - Self::one()).is_zero()
    }
}

/// `x` counts as zero relative to `scale`: exactly for exact fields, within
/// `tol * scale` otherwise.
#[inline]
pub fn negligible<S: Scalar>(x: &S, scale: f64, tol: f64) -> bool {
    if S::EXACT {
        x.is_zero()
    } else {
        x.magnitude() <= tol * scale.max(f64::MIN_POSITIVE)
    }
}

/// Element `a + b·√3` of ℚ(√3).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Exact {
    a: BigRational,
    b: BigRational,
}

impl Exact {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Exact { a, b }
    }

    pub fn rational(a: BigRational) -> Self {
        Exact {
            a,
            b: BigRational::zero(),
        }
    }

    /// `num/den + (snum/sden)·√3`.
    pub fn from_parts(num: i64, den: i64, snum: i64, sden: i64) -> Self {
        Exact {
            a: ratio(num, den),
            b: ratio(snum, sden),
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt3_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a − b√3`.
    pub fn conjugate(&self) -> Self {
        Exact {
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    /// Field norm `a² − 3b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(BigInt::from(3)) * &self.b * &self.b
    }

    fn recip(&self) -> Self {
        assert!(!Scalar::is_zero(self), "division by zero in Q(sqrt 3)");
        if self.b.is_zero() {
            return Exact::rational(self.a.recip());
        }
        let n = self.norm();
        Exact {
            a: &self.a / &n,
            b: -(&self.b / &n),
        }
    }
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn rational_sign(r: &BigRational) -> Ordering {
    if r.is_zero() {
        Ordering::Equal
    } else if r.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

fn rational_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator or denominator beyond f64 range
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

impl fmt::Debug for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Exact {
    /// Rationals print as `p/q` (or `p`); irrational values as `a+b*sqrt(3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let mut out = String::new();
        if !self.a.is_zero() {
            out.push_str(&alloc::format!("{}", self.a));
            if self.b.is_positive() {
                out.push('+');
            }
        }
        if self.b.is_one() {
            out.push_str("sqrt(3)");
        } else if (-self.b.clone()).is_one() {
            out.push_str("-sqrt(3)");
        } else {
            out.push_str(&alloc::format!("{}*sqrt(3)", self.b));
        }
        f.write_str(&out)
    }
}

impl Add for Exact {
    type Output = Exact;
    fn add(self, rhs: Exact) -> Exact {
        self + &rhs
    }
}

impl<'a> Add<&'a Exact> for Exact {
    type Output = Exact;
    fn add(self, rhs: &'a Exact) -> Exact {
        let b = if rhs.b.is_zero() {
            self.b
        } else {
            self.b + &rhs.b
        };
        Exact {
            a: self.a + &rhs.a,
            b,
        }
    }
}

impl Sub for Exact {
    type Output = Exact;
    fn sub(self, rhs: Exact) -> Exact {
        self - &rhs
    }
}

impl<'a> Sub<&'a Exact> for Exact {
    type Output = Exact;
    fn sub(self, rhs: &'a Exact) -> Exact {
        let b = if rhs.b.is_zero() {
            self.b
        } else {
            self.b - &rhs.b
        };
        Exact {
            a: self.a - &rhs.a,
            b,
        }
    }
}

impl Mul for Exact {
    type Output = Exact;
    fn mul(self, rhs: Exact) -> Exact {
        self * &rhs
    }
}

impl<'a> Mul<&'a Exact> for Exact {
    type Output = Exact;
    fn mul(self, rhs: &'a Exact) -> Exact {
        if self.b.is_zero() && rhs.b.is_zero() {
            return Exact::rational(self.a * &rhs.a);
        }
        let three = BigRational::from_integer(BigInt::from(3));
        let a = &self.a * &rhs.a + three * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Exact { a, b }
    }
}

impl Div for Exact {
    type Output = Exact;
    fn div(self, rhs: Exact) -> Exact {
        self / &rhs
    }
}

impl<'a> Div<&'a Exact> for Exact {
    type Output = Exact;
    fn div(self, rhs: &'a Exact) -> Exact {
        if rhs.b.is_zero() {
            assert!(!rhs.a.is_zero(), "division by zero in Q(sqrt 3)");
            let b = if self.b.is_zero() {
                self.b
            } else {
                self.b / &rhs.a
            };
            return Exact {
                a: self.a / &rhs.a,
                b,
            };
        }
        self * &rhs.recip()
    }
}

impl Neg for Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        Exact {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Scalar for Exact {
    const EXACT: bool = true;

    fn zero() -> Self {
        Exact::rational(BigRational::zero())
    }

    fn one() -> Self {
        Exact::rational(BigRational::one())
    }

    fn from_i64(n: i64) -> Self {
        Exact::rational(BigRational::from_integer(BigInt::from(n)))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Exact::rational(ratio(num, den))
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }

    fn sign(&self) -> Ordering {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        if sb == Ordering::Equal || sa == sb {
            return if sa == Ordering::Equal { sb } else { sa };
        }
        if sa == Ordering::Equal {
            return sb;
        }
        // opposite signs: compare a² against 3b²
        let three = BigRational::from_integer(BigInt::from(3));
        let lhs = &self.a * &self.a;
        let rhs = three * &self.b * &self.b;
        if lhs > rhs {
            sa
        } else {
            sb
        }
    }

    fn to_f64(&self) -> f64 {
        rational_f64(&self.a) + rational_f64(&self.b) * libm::sqrt(3.0)
    }

    fn field(&self) -> Field {
        if self.b.is_zero() {
            Field::Rational
        } else {
            Field::RationalSqrt3
        }
    }

    fn cos_sin_turn(p: i64, q: i64) -> Option<(Self, Self)> {
        if q == 0 || (12 * p).rem_euclid(q) != 0 {
            return None;
        }
        // angle in units of 30°
        let step = ((12 * p) / q).rem_euclid(12);
        let half = |n: i64| Exact::from_parts(n, 2, 0, 1);
        let half_root = |n: i64| Exact::from_parts(0, 1, n, 2);
        let (c, s) = match step {
            0 => (Exact::from_i64(1), Exact::zero()),
            1 => (half_root(1), half(1)),
            2 => (half(1), half_root(1)),
            3 => (Exact::zero(), Exact::from_i64(1)),
            4 => (half(-1), half_root(1)),
            5 => (half_root(-1), half(1)),
            6 => (Exact::from_i64(-1), Exact::zero()),
            7 => (half_root(-1), half(-1)),
            8 => (half(-1), half_root(-1)),
            9 => (Exact::zero(), Exact::from_i64(-1)),
            10 => (half(1), half_root(-1)),
            _ => (half_root(1), half(-1)),
        };
        Some((c, s))
    }

    fn sqrt(&self) -> Option<Self> {
        if !self.b.is_zero() {
            return None;
        }
        if let Some(r) = rational_sqrt(&self.a) {
            return Some(Exact::rational(r));
        }
        let three = BigRational::from_integer(BigInt::from(3));
        rational_sqrt(&(&self.a / &three)).map(|r| Exact::new(BigRational::zero(), r))
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }

    fn sign(&self) -> Ordering {
        self.partial_cmp(&0.0).unwrap_or(Ordering::Equal)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn field(&self) -> Field {
        Field::RealFloat
    }

    fn cos_sin_turn(p: i64, q: i64) -> Option<(Self, Self)> {
        if q == 0 {
            return None;
        }
        // reduce first so that quarter turns come out exact
        let p = p.rem_euclid(q);
        if 4 * p % q == 0 {
            return Some(match 4 * p / q {
                0 => (1.0, 0.0),
                1 => (0.0, 1.0),
                2 => (-1.0, 0.0),
                _ => (0.0, -1.0),
            });
        }
        let angle = 2.0 * core::f64::consts::PI * p as f64 / q as f64;
        Some((libm::cos(angle), libm::sin(angle)))
    }

    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| libm::sqrt(*self))
    }
}
