//! Polynomial families, their evaluation, and the connection data the
//! convolution formulas consume.

mod data;
mod eval;

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{parse_rational, Field, Rational};

pub use data::{gamma_from_b, GenericBasisData};
pub use eval::{connection_gamma, endpoint_derivative, eval_poly, monomial_expansion_b, normalization};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Jacobi,
    SymmetricJacobi,
    Gegenbauer,
    Legendre,
    /// `T_n`, stored as `P_n^{(-1/2,-1/2)} = (1/2)_n / n! * T_n`.
    Chebyshev,
    Laguerre,
    /// `P_n(x) = x^n` on an arbitrary offset; exercises the generic framework.
    GenericMonic,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Jacobi => "jacobi",
            Family::SymmetricJacobi => "symmetric_jacobi",
            Family::Gegenbauer => "gegenbauer",
            Family::Legendre => "legendre",
            Family::Chebyshev => "chebyshev",
            Family::Laguerre => "laguerre",
            Family::GenericMonic => "generic_monic",
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        let key = s.trim().to_ascii_lowercase().replace(['-', ' '], "_");
        Ok(match key.as_str() {
            "jacobi" => Family::Jacobi,
            "symmetric_jacobi" | "symjacobi" | "sym_jacobi" => Family::SymmetricJacobi,
            "gegenbauer" | "ultraspherical" => Family::Gegenbauer,
            "legendre" => Family::Legendre,
            "chebyshev" | "chebyshev_t" => Family::Chebyshev,
            "laguerre" => Family::Laguerre,
            "generic_monic" | "monic" => Family::GenericMonic,
            _ => return Err(Error::Parse(format!("unknown family {s:?}"))),
        })
    }

    /// Whether the family lives on `[-1, 1]` (offset `a = 1`).
    pub fn is_interval(self) -> bool {
        !matches!(self, Family::Laguerre | Family::GenericMonic)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A polynomial family with its parameters.
///
/// Parameters are stored exactly; the float backend converts them once per
/// evaluation. Unused parameters are zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FamilyRecord", into = "FamilyRecord")]
pub struct FamilySpec {
    family: Family,
    alpha: Rational,
    beta: Rational,
    lambda: Rational,
    offset: Rational,
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

impl FamilySpec {
    pub fn jacobi(alpha: Rational, beta: Rational) -> Result<Self> {
        let minus_one = -Rational::one();
        if alpha <= minus_one || beta <= minus_one {
            return Err(Error::InvalidParameter(format!(
                "jacobi needs alpha, beta > -1 (got {alpha}, {beta})"
            )));
        }
        Ok(Self::raw(Family::Jacobi, alpha, beta, Rational::zero()))
    }

    /// Symmetric Jacobi `α = β`. `α = 0` is the Legendre family.
    pub fn symmetric_jacobi(alpha: Rational) -> Result<Self> {
        if alpha <= -Rational::one() {
            return Err(Error::InvalidParameter(format!(
                "symmetric jacobi needs alpha > -1 (got {alpha})"
            )));
        }
        if Zero::is_zero(&alpha) {
            return Ok(Self::legendre());
        }
        Ok(Self::raw(
            Family::SymmetricJacobi,
            alpha.clone(),
            alpha,
            Rational::zero(),
        ))
    }

    /// Gegenbauer `C_n^{(λ)}`. `λ = 1/2` is the Legendre family.
    pub fn gegenbauer(lambda: Rational) -> Result<Self> {
        if lambda <= q(-1, 2) || Zero::is_zero(&lambda) {
            return Err(Error::InvalidParameter(format!(
                "gegenbauer needs lambda > -1/2 and nonzero (got {lambda})"
            )));
        }
        if lambda == q(1, 2) {
            return Ok(Self::legendre());
        }
        let a = &lambda - q(1, 2);
        Ok(Self::raw(Family::Gegenbauer, a.clone(), a, lambda))
    }

    pub fn legendre() -> Self {
        Self::raw(Family::Legendre, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn chebyshev() -> Self {
        Self::raw(Family::Chebyshev, q(-1, 2), q(-1, 2), Rational::zero())
    }

    pub fn laguerre(alpha: Rational) -> Result<Self> {
        if alpha <= -Rational::one() {
            return Err(Error::InvalidParameter(format!(
                "laguerre needs alpha > -1 (got {alpha})"
            )));
        }
        Ok(Self::raw(Family::Laguerre, alpha, Rational::zero(), Rational::zero()))
    }

    pub fn generic_monic(offset: Rational) -> Self {
        let mut s = Self::raw(
            Family::GenericMonic,
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        );
        s.offset = offset;
        s
    }

    /// Builds a family from loosely specified parameters, as given on a
    /// command line or in a record. Parameters a family does not use are
    /// ignored; missing required ones are an error.
    pub fn from_parts(
        family: Family,
        alpha: Option<Rational>,
        beta: Option<Rational>,
        lambda: Option<Rational>,
        offset: Option<Rational>,
    ) -> Result<Self> {
        let need = |v: Option<Rational>, name: &str| {
            v.ok_or_else(|| Error::InvalidParameter(format!("{family} needs --{name}")))
        };
        let spec = match family {
            Family::Jacobi => Self::jacobi(need(alpha, "alpha")?, need(beta, "beta")?)?,
            Family::SymmetricJacobi => Self::symmetric_jacobi(need(alpha, "alpha")?)?,
            Family::Gegenbauer => Self::gegenbauer(need(lambda, "lambda")?)?,
            Family::Legendre => Self::legendre(),
            Family::Chebyshev => Self::chebyshev(),
            Family::Laguerre => Self::laguerre(alpha.unwrap_or_else(Rational::zero))?,
            Family::GenericMonic => return Ok(Self::generic_monic(offset.unwrap_or_else(Rational::one))),
        };
        if let Some(a) = offset {
            if a != spec.offset {
                return Err(Error::InvalidParameter(format!(
                    "{family} has fixed domain offset {}, got {a}",
                    spec.offset
                )));
            }
        }
        Ok(spec)
    }

    fn raw(family: Family, alpha: Rational, beta: Rational, lambda: Rational) -> Self {
        let offset = if family == Family::Laguerre {
            Rational::zero()
        } else {
            Rational::one()
        };
        FamilySpec {
            family,
            alpha,
            beta,
            lambda,
            offset,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// `α` for the Jacobi types and Laguerre.
    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    /// Domain offset `a`: the convolution runs over `[-a, x + a]`.
    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    /// Constant `q` of the zero band: 1 for the Jacobi types, 0 for Laguerre.
    pub fn zero_region_q(&self) -> Option<i64> {
        match self.family {
            Family::Laguerre => Some(0),
            Family::GenericMonic => None,
            _ => Some(1),
        }
    }

    /// `(α, β)` of the underlying Jacobi polynomials, if any.
    pub fn jacobi_params(&self) -> Option<(&Rational, &Rational)> {
        self.family.is_interval().then_some((&self.alpha, &self.beta))
    }

    pub fn is_symmetric(&self) -> bool {
        self.family.is_interval() && self.alpha == self.beta
    }

    pub fn offset_in<F: Field>(&self, ctx: &F::Ctx) -> F {
        F::from_rational(ctx, &self.offset)
    }

    pub fn alpha_in<F: Field>(&self, ctx: &F::Ctx) -> F {
        F::from_rational(ctx, &self.alpha)
    }

    pub fn beta_in<F: Field>(&self, ctx: &F::Ctx) -> F {
        F::from_rational(ctx, &self.beta)
    }

    pub fn lambda_in<F: Field>(&self, ctx: &F::Ctx) -> F {
        F::from_rational(ctx, &self.lambda)
    }

    pub fn to_record(&self) -> FamilyRecord {
        FamilyRecord::from(self.clone())
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Jacobi => write!(f, "jacobi(alpha={}, beta={})", self.alpha, self.beta),
            Family::SymmetricJacobi => write!(f, "symmetric_jacobi(alpha={})", self.alpha),
            Family::Gegenbauer => write!(f, "gegenbauer(lambda={})", self.lambda),
            Family::Laguerre => write!(f, "laguerre(alpha={})", self.alpha),
            Family::GenericMonic => write!(f, "generic_monic(offset={})", self.offset),
            other => write!(f, "{other}"),
        }
    }
}

/// Serialized form of a [`FamilySpec`]: the family name plus exact
/// parameters as strings, e.g. `{"family":"jacobi","alpha":"5/2","beta":"3/2"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<String>,
}

impl From<FamilySpec> for FamilyRecord {
    fn from(s: FamilySpec) -> Self {
        let text = |v: &Rational| Some(v.to_string());
        let (alpha, beta, lambda, offset) = match s.family {
            Family::Jacobi => (text(&s.alpha), text(&s.beta), None, None),
            Family::SymmetricJacobi | Family::Laguerre => (text(&s.alpha), None, None, None),
            Family::Gegenbauer => (None, None, text(&s.lambda), None),
            Family::GenericMonic => (None, None, None, text(&s.offset)),
            Family::Legendre | Family::Chebyshev => (None, None, None, None),
        };
        FamilyRecord {
            family: s.family.name().to_string(),
            alpha,
            beta,
            lambda,
            offset,
        }
    }
}

impl TryFrom<FamilyRecord> for FamilySpec {
    type Error = Error;

    fn try_from(r: FamilyRecord) -> Result<Self> {
        let parse = |v: &Option<String>| v.as_deref().map(parse_rational).transpose();
        FamilySpec::from_parts(
            Family::parse(&r.family)?,
            parse(&r.alpha)?,
            parse(&r.beta)?,
            parse(&r.lambda)?,
            parse(&r.offset)?,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn constructors_validate() {
        assert!(FamilySpec::jacobi(r("-1"), r("0")).is_err());
        assert!(FamilySpec::jacobi(r("5/2"), r("3/2")).is_ok());
        assert_eq!(FamilySpec::symmetric_jacobi(r("0")).unwrap(), FamilySpec::legendre());
        assert_eq!(FamilySpec::gegenbauer(r("1/2")).unwrap(), FamilySpec::legendre());
        assert!(FamilySpec::gegenbauer(r("0")).is_err());
        assert!(FamilySpec::gegenbauer(r("-1/2")).is_err());
        assert!(FamilySpec::laguerre(r("-1")).is_err());
        assert_eq!(FamilySpec::laguerre(r("1")).unwrap().offset(), &r("0"));
        assert_eq!(FamilySpec::chebyshev().offset(), &r("1"));
        assert!(FamilySpec::from_parts(Family::Legendre, None, None, None, Some(r("0"))).is_err());
        assert!(FamilySpec::from_parts(Family::Jacobi, Some(r("1")), None, None, None).is_err());
    }

    #[test]
    fn zero_region_constant() {
        assert_eq!(FamilySpec::legendre().zero_region_q(), Some(1));
        assert_eq!(FamilySpec::laguerre(r("0")).unwrap().zero_region_q(), Some(0));
    }

    #[test]
    fn record_round_trip() {
        let specs = [
            FamilySpec::jacobi(r("5/2"), r("3/2")).unwrap(),
            FamilySpec::symmetric_jacobi(r("5/2")).unwrap(),
            FamilySpec::gegenbauer(r("3/2")).unwrap(),
            FamilySpec::legendre(),
            FamilySpec::chebyshev(),
            FamilySpec::laguerre(r("1")).unwrap(),
            FamilySpec::generic_monic(r("1/3")),
        ];
        for s in specs {
            let text = serde_json::to_string(&s).unwrap();
            let back: FamilySpec = serde_json::from_str(&text).unwrap();
            assert_eq!(back, s, "{text}");
        }
        let parsed: FamilySpec = serde_json::from_str(r#"{"family":"jacobi","alpha":"2.5","beta":"3/2"}"#).unwrap();
        assert_eq!(parsed, FamilySpec::jacobi(r("5/2"), r("3/2")).unwrap());
        assert!(serde_json::from_str::<FamilySpec>(r#"{"family":"hermite"}"#).is_err());
    }
}
