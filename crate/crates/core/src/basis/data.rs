use super::eval::{endpoint_derivative, monomial_expansion_b};
use super::FamilySpec;
use crate::error::{Error, Result};
use crate::scalars::{factorial, Field};

/// Tabulated basis data for the family-agnostic convolution formulas:
/// the monomial expansion coefficients `b_{n,k}` and the endpoint
/// derivatives `d^p P_n(-a)`, for all degrees up to `max_degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericBasisData<F: Field> {
    ctx: F::Ctx,
    b: Vec<Vec<F>>,
    derivs: Vec<Vec<F>>,
    /// `1 / n!`, cached because every formula divides by factorials.
    inv_fact: Vec<F>,
}

impl<F: Field> GenericBasisData<F> {
    /// Builds the tables from user data. `b[n]` holds `b_{n,0..=n}` and
    /// `derivs[n]` holds `d^p P_n(-a)` for `p = 0..=n`; shorter rows are
    /// treated as missing, longer derivative rows must be zero past `n`.
    pub fn new(ctx: F::Ctx, b: Vec<Vec<F>>, derivs: Vec<Vec<F>>) -> Result<Self> {
        for (n, row) in b.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(Error::MissingData(format!("b row {n} has {} entries", row.len())));
            }
            if row[n].is_zero() {
                return Err(Error::InvalidParameter(format!("b_{{{n},{n}}} vanishes")));
            }
        }
        let mut derivs = derivs;
        for (n, row) in derivs.iter_mut().enumerate() {
            if row.len() < n + 1 {
                return Err(Error::MissingData(format!(
                    "derivative row {n} has {} entries",
                    row.len()
                )));
            }
            if row[n + 1..].iter().any(|v| !v.is_zero()) {
                return Err(Error::InvalidParameter(format!(
                    "derivative of order > {n} of a degree-{n} polynomial must vanish"
                )));
            }
            row.truncate(n + 1);
        }
        let top = b.len().max(derivs.len());
        let inv_fact = (0..=2 * top + 2)
            .map(|k| F::one_in(&ctx) / factorial::<F>(&ctx, k))
            .collect();
        Ok(GenericBasisData {
            ctx,
            b,
            derivs,
            inv_fact,
        })
    }

    /// Tables for a named family up to degree `max_degree`.
    pub fn from_family(spec: &FamilySpec, max_degree: usize, ctx: &F::Ctx) -> Result<Self> {
        let b = (0..=max_degree)
            .map(|n| (0..=n).map(|k| monomial_expansion_b::<F>(spec, n, k, ctx)).collect())
            .collect::<Result<Vec<Vec<F>>>>()?;
        let derivs = (0..=max_degree)
            .map(|n| (0..=n).map(|p| endpoint_derivative::<F>(spec, n, p, ctx)).collect())
            .collect();
        Self::new(ctx.clone(), b, derivs)
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    /// Highest degree for which both tables are complete.
    pub fn max_degree(&self) -> Option<usize> {
        self.b.len().min(self.derivs.len()).checked_sub(1)
    }

    pub fn b(&self, n: usize, k: usize) -> Result<&F> {
        self.b
            .get(n)
            .and_then(|row| row.get(k))
            .ok_or_else(|| Error::MissingData(format!("b_{{{n},{k}}}")))
    }

    /// `d^p P_n(-a)`; zero for `p > n` whenever row `n` is present.
    pub fn deriv(&self, n: usize, p: usize) -> Result<F> {
        let row = self
            .derivs
            .get(n)
            .ok_or_else(|| Error::MissingData(format!("derivatives of P_{n}")))?;
        Ok(row.get(p).cloned().unwrap_or_else(|| F::zero_in(&self.ctx)))
    }

    pub fn inv_factorial(&self, n: usize) -> F {
        match self.inv_fact.get(n) {
            Some(v) => v.clone(),
            None => F::one_in(&self.ctx) / factorial::<F>(&self.ctx, n),
        }
    }
}

/// `γ_{n-r,k}^{(r,s)}` from the b-coefficients and endpoint derivatives:
/// `Σ_{σ=0}^{n-r-k} b_{σ+k+s,k+s} / (σ+k+s)! · d^{r+k+σ} P_n(-a)`.
pub fn gamma_from_b<F: Field>(data: &GenericBasisData<F>, n: usize, k: usize, r: usize, s: usize) -> Result<F> {
    if r > n || k > n - r {
        return Err(Error::IndexOutOfRange(format!(
            "gamma_from_b needs r <= n and k <= n - r (n={n}, k={k}, r={r})"
        )));
    }
    let mut acc = F::zero_in(data.ctx());
    for sigma in 0..=(n - r - k) {
        let deg = sigma + k + s;
        acc += data.b(deg, k + s)?.clone() * data.inv_factorial(deg) * data.deriv(n, r + k + sigma)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::connection_gamma;
    use crate::scalars::{parse_rational, Rational};

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn legendre_self_connection() {
        let data = GenericBasisData::<Rational>::from_family(&FamilySpec::legendre(), 4, &()).unwrap();
        assert_eq!(gamma_from_b(&data, 2, 2, 0, 0).unwrap(), r("1"));
    }

    #[test]
    fn matches_family_gamma() {
        let specs = [
            FamilySpec::jacobi(r("5/2"), r("3/2")).unwrap(),
            FamilySpec::symmetric_jacobi(r("5/2")).unwrap(),
            FamilySpec::chebyshev(),
            FamilySpec::gegenbauer(r("3/2")).unwrap(),
            FamilySpec::laguerre(r("1")).unwrap(),
            FamilySpec::generic_monic(r("2/7")),
        ];
        for spec in specs {
            let data = GenericBasisData::<Rational>::from_family(&spec, 10, &()).unwrap();
            for n in 0..=6usize {
                for k in 0..=n {
                    for p in 0..=2usize {
                        for q in 0..=2usize {
                            let direct = connection_gamma::<Rational>(&spec, n, k, p, q, &()).unwrap();
                            let via_b = gamma_from_b(&data, n + p, k, p, q).unwrap();
                            assert_eq!(direct, via_b, "{spec} n={n} k={k} p={p} q={q}");
                        }
                    }
                }
            }
        }
        let lag = FamilySpec::laguerre(r("1")).unwrap();
        let data = GenericBasisData::<Rational>::from_family(&lag, 8, &()).unwrap();
        assert_eq!(gamma_from_b(&data, 6, 1, 2, 1).unwrap(), r("-1"));
    }

    #[test]
    fn missing_and_invalid_data() {
        let data = GenericBasisData::<Rational>::from_family(&FamilySpec::legendre(), 2, &()).unwrap();
        assert!(matches!(gamma_from_b(&data, 2, 0, 0, 2), Err(Error::MissingData(_))));
        let zero_lead = GenericBasisData::<Rational>::new((), vec![vec![r("0")]], vec![vec![r("1")]]);
        assert!(zero_lead.is_err());
        let bad_deriv = GenericBasisData::<Rational>::new((), vec![vec![r("1")]], vec![vec![r("1"), r("2")]]);
        assert!(bad_deriv.is_err());
    }
}
