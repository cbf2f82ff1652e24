use std::fmt;

use super::{Backend, Field, Float, Rational};
use crate::error::{Error, Result};

/// A number tagged with its backend, for values crossing I/O boundaries.
///
/// Arithmetic between different backends (or floats of different
/// precisions) is rejected instead of coerced.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rational(Rational),
    Float(Float),
}

impl Scalar {
    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Rational(_) => Backend::Rational,
            Scalar::Float(x) => Backend::Float {
                precision: x.precision(),
            },
        }
    }

    /// Converts an exact value into the requested backend.
    pub fn from_rational(backend: Backend, v: &Rational) -> Scalar {
        match backend {
            Backend::Rational => Scalar::Rational(v.clone()),
            Backend::Float { precision } => Scalar::Float(Float::from_rational(&precision, v)),
        }
    }

    pub fn zero(backend: Backend) -> Scalar {
        Scalar::from_rational(backend, &Rational::from_integer(0.into()))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(x) => Field::is_zero(x),
            Scalar::Float(x) => x.is_zero(),
        }
    }

    pub fn log10_abs(&self) -> f64 {
        match self {
            Scalar::Rational(x) => x.log10_abs(),
            Scalar::Float(x) => x.log10_abs(),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(x) => Some(x),
            Scalar::Float(_) => None,
        }
    }

    fn mixed(&self, other: &Scalar) -> Error {
        Error::MixedBackend(self.backend().to_string(), other.backend().to_string())
    }

    fn zip<R, S>(&self, other: &Scalar, fr: R, ff: S) -> Result<Scalar>
    where
        R: FnOnce(&Rational, &Rational) -> Rational,
        S: FnOnce(&Float, &Float) -> Float,
    {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(fr(a, b))),
            (Scalar::Float(a), Scalar::Float(b)) if a.precision() == b.precision() => Ok(Scalar::Float(ff(a, b))),
            _ => Err(self.mixed(other)),
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.zip(other, |a, b| a + b, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.zip(other, |a, b| a - b, |a, b| a - b)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.zip(other, |a, b| a * b, |a, b| a * b)
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        if other.is_zero() {
            return Err(Error::InvalidParameter("division by zero".into()));
        }
        self.zip(other, |a, b| a / b, |a, b| a / b)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(x) => write!(f, "{x}"),
            Scalar::Float(x) => write!(f, "{x}"),
        }
    }
}

impl From<Rational> for Scalar {
    fn from(v: Rational) -> Self {
        Scalar::Rational(v)
    }
}

impl From<Float> for Scalar {
    fn from(v: Float) -> Self {
        Scalar::Float(v)
    }
}
