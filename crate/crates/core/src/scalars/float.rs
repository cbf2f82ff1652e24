use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::Zero;

use super::{log10_bigint, Field, Rational};

type Inner = FBig<HalfEven, 2>;

/// Binary floating-point number with a fixed working precision in bits.
///
/// Every value remembers its precision; binary operations round to the
/// larger of the two operand precisions, so a computation seeded from one
/// context stays at that precision throughout.
#[derive(Clone, Debug, PartialEq)]
pub struct Float(Inner);

fn to_ibig(v: &BigInt) -> IBig {
    IBig::from_le_bytes(&v.to_signed_bytes_le())
}

fn to_bigint(v: &IBig) -> BigInt {
    BigInt::from_signed_bytes_le(&v.to_le_bytes())
}

/// `±(n/d)·2^exp2` rounded once to `p` bits: an integer quotient with
/// `p+2` bits plus a sticky bit, then a single rounding.
fn round_quotient(negative: bool, n: &BigUint, d: &BigUint, exp2: isize, p: usize) -> Float {
    if n.is_zero() {
        return Float(Inner::ZERO.with_precision(p).value());
    }
    let shift = p as i64 + 2 + d.bits() as i64 - n.bits() as i64;
    let (n, d) = if shift >= 0 {
        (n << shift as u64, d.clone())
    } else {
        (n.clone(), d << shift.unsigned_abs())
    };
    let (q, r) = n.div_rem(&d);
    let sticky = u8::from(!r.is_zero());
    let mut sig = BigInt::from((q << 1u8) + sticky);
    if negative {
        sig = -sig;
    }
    let exact = Inner::from_parts(to_ibig(&sig), exp2 - shift as isize - 1);
    Float(exact.with_precision(p).value())
}

/// Forces a result back to `p` bits. The library occasionally returns one
/// extra bit from `+`, `-` and `*`; left alone, such values do not survive
/// a decimal round trip at the declared precision.
fn fit(v: Inner, p: usize) -> Float {
    if v.repr().digits() <= p {
        return Float(v);
    }
    let repr = v.into_repr();
    Float(
        Inner::from_parts(repr.significand().clone(), repr.exponent())
            .with_precision(p)
            .value(),
    )
}

/// Correctly rounded quotient. The library division can return one bit
/// more than the working precision.
fn divide(a: &Inner, b: &Inner) -> Float {
    let p = a.precision().max(b.precision());
    let (sa, sb) = (to_bigint(a.repr().significand()), to_bigint(b.repr().significand()));
    if sb.is_zero() {
        return Float(a.clone() / b.clone());
    }
    let negative = (sa.sign() == Sign::Minus) != (sb.sign() == Sign::Minus);
    round_quotient(
        negative,
        sa.magnitude(),
        sb.magnitude(),
        a.repr().exponent() - b.repr().exponent(),
        p,
    )
}

impl Float {
    pub fn precision(&self) -> usize {
        self.0.precision()
    }

    pub fn from_f64(precision: usize, v: f64) -> Self {
        let inner = Inner::try_from(v).unwrap_or(Inner::ZERO);
        Float(inner.with_precision(precision).value())
    }

    /// Exact rational value of this float (every finite binary float is one).
    pub fn to_rational(&self) -> Rational {
        let sig = to_bigint(self.0.repr().significand());
        let exp = self.0.repr().exponent();
        let two = BigInt::from(2);
        if exp >= 0 {
            Rational::from_integer(sig * num_traits::pow(two, exp as usize))
        } else {
            Rational::new(sig, num_traits::pow(two, exp.unsigned_abs()))
        }
    }

    /// Decimal scientific notation with `digits` significant digits,
    /// correctly rounded (half to even) from the exact binary value.
    pub fn to_scientific(&self, digits: usize) -> String {
        let digits = digits.max(1);
        let value = self.to_rational();
        if Zero::is_zero(&value) {
            return "0".to_string();
        }
        let negative = value < Rational::zero();
        let value = value.abs();
        let ten = BigInt::from(10);
        // Decimal exponent estimate, corrected below if off by one.
        let mut exp = value.log10_abs().floor() as i64;
        let text = loop {
            let shift = digits as i64 - 1 - exp;
            let scaled = if shift >= 0 {
                &value * Rational::from_integer(num_traits::pow(ten.clone(), shift as usize))
            } else {
                &value / Rational::from_integer(num_traits::pow(ten.clone(), shift.unsigned_abs() as usize))
            };
            let (q, r) = scaled.numer().div_rem(scaled.denom());
            let twice = r * 2u32;
            let round_up = match twice.cmp(scaled.denom()) {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Equal => q.is_odd(),
                std::cmp::Ordering::Less => false,
            };
            let q = if round_up { q + 1u32 } else { q };
            let t = q.to_string();
            if t.len() > digits {
                exp += 1;
            } else if t.len() < digits {
                exp -= 1;
            } else {
                break t;
            }
        };
        let mut text = text;
        while text.len() > 1 && text.ends_with('0') {
            text.pop();
        }
        let (head, tail) = text.split_at(1);
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        out.push_str(head);
        if !tail.is_empty() {
            out.push('.');
            out.push_str(tail);
        }
        if exp != 0 {
            out.push_str(&format!("e{exp}"));
        }
        out
    }

    /// Significant decimal digits needed to round-trip this precision.
    pub fn round_trip_digits(precision: usize) -> usize {
        (precision as f64 * std::f64::consts::LOG10_2).ceil() as usize + 1
    }
}

impl fmt::Display for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_scientific(Float::round_trip_digits(self.precision())))
    }
}

macro_rules! float_binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign_method:ident, $op:tt) => {
        impl $trait for Float {
            type Output = Float;
            fn $method(self, rhs: Float) -> Float {
                let p = self.precision().max(rhs.precision());
                fit(self.0 $op rhs.0, p)
            }
        }
        impl<'a> $trait<&'a Float> for Float {
            type Output = Float;
            fn $method(self, rhs: &'a Float) -> Float {
                let p = self.precision().max(rhs.precision());
                fit(self.0 $op &rhs.0, p)
            }
        }
        impl<'a> $trait<&'a Float> for &'a Float {
            type Output = Float;
            fn $method(self, rhs: &'a Float) -> Float {
                let p = self.precision().max(rhs.precision());
                fit(&self.0 $op &rhs.0, p)
            }
        }
        impl $assign_trait for Float {
            fn $assign_method(&mut self, rhs: Float) {
                let lhs = std::mem::replace(self, Float(Inner::ZERO));
                *self = lhs $op rhs;
            }
        }
        impl<'a> $assign_trait<&'a Float> for Float {
            fn $assign_method(&mut self, rhs: &'a Float) {
                let lhs = std::mem::replace(self, Float(Inner::ZERO));
                *self = lhs $op rhs;
            }
        }
    };
}

float_binop!(Add, add, AddAssign, add_assign, +);
float_binop!(Sub, sub, SubAssign, sub_assign, -);
float_binop!(Mul, mul, MulAssign, mul_assign, *);

impl Div for Float {
    type Output = Float;
    fn div(self, rhs: Float) -> Float {
        divide(&self.0, &rhs.0)
    }
}

impl<'a> Div<&'a Float> for Float {
    type Output = Float;
    fn div(self, rhs: &'a Float) -> Float {
        divide(&self.0, &rhs.0)
    }
}

impl<'a> Div<&'a Float> for &'a Float {
    type Output = Float;
    fn div(self, rhs: &'a Float) -> Float {
        divide(&self.0, &rhs.0)
    }
}

impl Neg for Float {
    type Output = Float;
    fn neg(self) -> Float {
        Float(-self.0)
    }
}

impl Field for Float {
    type Ctx = usize;

    const BACKEND: &'static str = "float";

    fn context(&self) -> usize {
        self.precision()
    }

    fn from_i64(ctx: &usize, v: i64) -> Self {
        Float(Inner::from(v).with_precision(*ctx).value())
    }

    fn from_bigint(ctx: &usize, v: &BigInt) -> Self {
        Float(Inner::from(to_ibig(v)).with_precision(*ctx).value())
    }

    fn from_rational(ctx: &usize, v: &Rational) -> Self {
        if v.is_integer() {
            return Self::from_bigint(ctx, v.numer());
        }
        let negative = v.numer().sign() == Sign::Minus;
        round_quotient(negative, v.numer().magnitude(), v.denom().magnitude(), 0, *ctx)
    }

    fn is_zero(&self) -> bool {
        self.0.repr().is_zero()
    }

    fn to_i64_exact(&self) -> Option<i64> {
        if !self.0.repr().is_int() {
            return None;
        }
        i64::try_from(self.0.clone()).ok()
    }

    fn to_i64_near(&self) -> Option<i64> {
        if let Some(v) = self.to_i64_exact() {
            return Some(v);
        }
        let f = self.to_f64();
        let r = f.round();
        if !r.is_finite() || r.abs() > 1e15 {
            return None;
        }
        let tol = 2f64.powi(16 - self.precision().min(1000) as i32) * r.abs().max(1.0);
        ((f - r).abs() <= tol).then_some(r as i64)
    }

    fn log10_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let sig = to_bigint(self.0.repr().significand());
        log10_bigint(&sig) + self.0.repr().exponent() as f64 * std::f64::consts::LOG10_2
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    fn abs(&self) -> Self {
        if *self.0.repr().significand() < IBig::ZERO {
            Float(-self.0.clone())
        } else {
            self.clone()
        }
    }
}
