//! Scalar backends and combinatorial primitives.
//!
//! Every coefficient formula in the crate is written once against the
//! [`Field`] trait and evaluated either exactly over [`Rational`] (arbitrary
//! size integers, no overflow) or approximately over [`Float`] at a declared
//! binary precision. The two backends are distinct types, so mixing them in
//! generic code is a compile error; [`Scalar`] is the dynamically typed
//! wrapper used at I/O boundaries, where mixing is a reported error.

mod dynamic;
mod float;
mod special;

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use dynamic::Scalar;
pub use float::Float;
pub use special::{factorial, gamma_ratio, hyp_pfq_terminating, pochhammer, pochhammer_signed, PfqSpec};

/// Exact rational backend.
pub type Rational = BigRational;

/// Default working precision of the float backend, in bits.
pub const DEFAULT_FLOAT_PRECISION: usize = 256;
/// Smallest accepted float precision (IEEE double).
pub const MIN_FLOAT_PRECISION: usize = 53;

/// Arithmetic required by the coefficient formulas.
///
/// `Ctx` carries whatever a backend needs to materialise constants: nothing
/// for rationals, the working precision for floats.
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + AddAssign
    + for<'a> AddAssign<&'a Self>
    + SubAssign
    + for<'a> SubAssign<&'a Self>
    + MulAssign
    + for<'a> MulAssign<&'a Self>
    + 'static
{
    type Ctx: Clone + fmt::Debug + PartialEq + Send + Sync;

    /// Short backend name used in diagnostics.
    const BACKEND: &'static str;

    fn context(&self) -> Self::Ctx;
    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self;
    fn from_bigint(ctx: &Self::Ctx, v: &BigInt) -> Self;
    fn from_rational(ctx: &Self::Ctx, v: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    /// The value as an `i64` if it is exactly an integer in range.
    fn to_i64_exact(&self) -> Option<i64>;
    /// Like [`Field::to_i64_exact`], but tolerates rounding noise on inexact
    /// backends. Used to detect integer gaps between computed parameters.
    fn to_i64_near(&self) -> Option<i64> {
        self.to_i64_exact()
    }
    /// `log10 |x|`, `-inf` for zero. Never overflows for large magnitudes.
    fn log10_abs(&self) -> f64;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;

    fn zero_in(ctx: &Self::Ctx) -> Self {
        Self::from_i64(ctx, 0)
    }

    fn one_in(ctx: &Self::Ctx) -> Self {
        Self::from_i64(ctx, 1)
    }

    /// Rising factorial `(self)_n`. Backends may override with a faster product.
    fn rising(&self, n: usize) -> Self {
        let mut acc = Self::one_in(&self.context());
        let mut term = self.clone();
        let one = Self::one_in(&self.context());
        for _ in 0..n {
            acc *= &term;
            term += &one;
        }
        acc
    }
}

impl Field for Rational {
    type Ctx = ();

    const BACKEND: &'static str = "rational";

    fn context(&self) {}

    fn from_i64(_: &(), v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_bigint(_: &(), v: &BigInt) -> Self {
        Rational::from_integer(v.clone())
    }

    fn from_rational(_: &(), v: &Rational) -> Self {
        v.clone()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn to_i64_exact(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    fn log10_abs(&self) -> f64 {
        if Zero::is_zero(self) {
            return f64::NEG_INFINITY;
        }
        log10_bigint(self.numer()) - log10_bigint(self.denom())
    }

    fn to_f64(&self) -> f64 {
        if Zero::is_zero(self) {
            return 0.0;
        }
        let sign = if self.is_negative() { -1.0 } else { 1.0 };
        sign * 10f64.powf(self.log10_abs())
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn rising(&self, n: usize) -> Self {
        // (p/q)_n = Π (p + s q) / q^n, one normalisation at the end.
        let (p, q) = (self.numer(), self.denom());
        let mut num = BigInt::one();
        let mut term = p.clone();
        for _ in 0..n {
            if term.is_zero() {
                return Rational::zero();
            }
            num *= &term;
            term += q;
        }
        Rational::new(num, num_traits::pow(q.clone(), n))
    }
}

pub(crate) fn log10_bigint(v: &BigInt) -> f64 {
    let bits = v.bits();
    if bits <= 900 {
        return v.abs().to_f64().unwrap_or(f64::INFINITY).log10();
    }
    let shift = bits - 900;
    let top: BigInt = v.abs() >> shift;
    top.to_f64().unwrap_or(f64::INFINITY).log10() + shift as f64 * std::f64::consts::LOG10_2
}

/// Parses an exact rational from `"5/2"`, `"-3"`, `"2.5"`, `"1.25e-3"`.
///
/// Decimal notation is read exactly (`"0.1"` is `1/10`), so every finite
/// decimal parameter stays on the exact path.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let err = || Error::Parse(format!("not a rational number: {s:?}"));
    if s.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_rational(n)?;
        let d = parse_rational(d)?;
        if Zero::is_zero(&d) {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(n / d);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..].parse().map_err(|_| err())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut num = BigInt::from_str(&all_digits).map_err(|_| err())?;
    if negative {
        num = -num;
    }
    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let unsigned = scale.unsigned_abs();
    let power = num_traits::pow(ten, usize::try_from(unsigned).map_err(|_| err())?);
    Ok(if scale >= 0 {
        Rational::from_integer(num * power)
    } else {
        Rational::new(num, power)
    })
}

/// Formats a rational in lowest terms as `p/q` or `p`.
pub fn format_rational(v: &Rational) -> String {
    v.to_string()
}

/// Which backend a computation runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Backend {
    #[default]
    Rational,
    Float {
        precision: usize,
    },
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "rational" | "exact" => Ok(Backend::Rational),
            "float" => Ok(Backend::Float {
                precision: DEFAULT_FLOAT_PRECISION,
            }),
            other => {
                let bits = other
                    .strip_prefix("float:")
                    .ok_or_else(|| Error::Parse(format!("unknown backend {other:?}")))?;
                let precision: usize = bits
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad float precision {bits:?}")))?;
                if precision < MIN_FLOAT_PRECISION {
                    return Err(Error::InvalidParameter(format!(
                        "float precision {precision} is below {MIN_FLOAT_PRECISION} bits"
                    )));
                }
                Ok(Backend::Float { precision })
            }
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Rational => write!(f, "rational"),
            Backend::Float { precision } => write!(f, "float:{precision}"),
        }
    }
}

/// `(-1)^k` as a field element.
pub(crate) fn sign<F: Field>(ctx: &F::Ctx, k: i64) -> F {
    if k.is_even() {
        F::one_in(ctx)
    } else {
        -F::one_in(ctx)
    }
}

pub(crate) fn int<F: Field>(ctx: &F::Ctx, v: i64) -> F {
    F::from_i64(ctx, v)
}

pub(crate) fn half<F: Field>(ctx: &F::Ctx) -> F {
    F::one_in(ctx) / int::<F>(ctx, 2)
}

/// `2^e` for any integer `e`.
pub(crate) fn pow2<F: Field>(ctx: &F::Ctx, e: i64) -> F {
    let mut acc = F::one_in(ctx);
    let two = int::<F>(ctx, 2);
    for _ in 0..e.unsigned_abs() {
        acc *= &two;
    }
    if e < 0 {
        F::one_in(ctx) / acc
    } else {
        acc
    }
}

pub(crate) fn pow<F: Field>(base: &F, e: usize) -> F {
    let mut acc = F::one_in(&base.context());
    for _ in 0..e {
        acc *= base;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(q("5/2"), Rational::new(5.into(), 2.into()));
        assert_eq!(q("2.5"), q("5/2"));
        assert_eq!(q("-0.125"), q("-1/8"));
        assert_eq!(q("1.5e2"), q("150"));
        assert_eq!(q("25e-1"), q("5/2"));
        assert_eq!(q("+3"), q("3"));
        assert_eq!(q(".5"), q("1/2"));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("-").is_err());
    }

    #[test]
    fn backend_strings() {
        assert_eq!("rational".parse::<Backend>().unwrap(), Backend::Rational);
        assert_eq!(
            "float:128".parse::<Backend>().unwrap(),
            Backend::Float { precision: 128 }
        );
        assert_eq!("float".parse::<Backend>().unwrap(), Backend::Float { precision: 256 });
        assert!("float:20".parse::<Backend>().is_err());
        assert!("double".parse::<Backend>().is_err());
    }

    #[test]
    fn rational_rising_matches_loop() {
        for z in ["5/2", "-3", "0", "-1/2", "7/3"] {
            let z = q(z);
            for n in 0..10 {
                let mut slow = Rational::one();
                for s in 0..n {
                    slow *= &z + Rational::from_integer(s.into());
                }
                assert_eq!(z.rising(n), slow, "z={z} n={n}");
            }
        }
    }

    #[test]
    fn log10_of_huge_rationals() {
        let big = Rational::from_integer(num_traits::pow(BigInt::from(10), 500));
        assert!((big.log10_abs() - 500.0).abs() < 1e-9);
        let tiny = Rational::one() / big;
        assert!((tiny.log10_abs() + 500.0).abs() < 1e-9);
        assert_eq!(Rational::zero().log10_abs(), f64::NEG_INFINITY);
    }

    #[test]
    fn exact_arithmetic_is_closed() {
        let a = q("123456789/987654321");
        let b = q("-31/7");
        assert_eq!((a.clone() + &b) - &b, a);
    }
}
