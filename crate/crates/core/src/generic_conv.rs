//! Family-agnostic convolution coefficients.
//!
//! Given only the b-coefficients and endpoint derivatives of a polynomial
//! sequence, `ρ_{j,n}^m` follows from a Taylor argument at `x = -a`. Three
//! equivalent expressions are provided: a universal one valid for every `j`
//! ([`rho_taylor`]) and two cheaper piecewise ones for `j > m`
//! ([`rho_highj`]) and `j <= m` ([`rho_lowj`]).

use rayon::prelude::*;

use crate::basis::{connection_gamma, gamma_from_b, FamilySpec, GenericBasisData};
use crate::error::{Error, Result};
use crate::scalars::Field;

/// Indices of a single coefficient `ρ_{j,n}^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RhoRequest {
    pub m: usize,
    pub n: usize,
    pub j: usize,
}

impl RhoRequest {
    pub fn new(m: usize, n: usize, j: usize) -> Self {
        RhoRequest { m, n, j }
    }

    pub fn degree(&self) -> usize {
        self.m + self.n + 1
    }
}

/// Source of the derivative connection coefficients `γ_{n,k}^{(p,q)}`.
pub trait ConnectionSource<F: Field>: Sync {
    fn gamma(&self, n: usize, k: usize, p: usize, q: usize) -> Result<F>;
}

/// γ recovered from the tabulated b-coefficients.
impl<F: Field> ConnectionSource<F> for GenericBasisData<F> {
    fn gamma(&self, n: usize, k: usize, p: usize, q: usize) -> Result<F> {
        gamma_from_b(self, n + p, k, p, q)
    }
}

/// γ from a named family's closed form.
pub struct FamilyConnection<'a, F: Field> {
    pub spec: &'a FamilySpec,
    pub ctx: F::Ctx,
}

impl<F: Field> ConnectionSource<F> for FamilyConnection<'_, F> {
    fn gamma(&self, n: usize, k: usize, p: usize, q: usize) -> Result<F> {
        connection_gamma::<F>(self.spec, n, k, p, q, &self.ctx)
    }
}

/// Universal expression:
/// `Σ_{p=j}^{m+n+1} b_{p,j}/p! Σ_{ν=1}^{p} d^{p-ν}P_m · d^{ν-1}P_n`.
pub fn rho_taylor<F: Field>(data: &GenericBasisData<F>, req: RhoRequest) -> Result<F> {
    let RhoRequest { m, n, j } = req;
    let mut acc = F::zero_in(data.ctx());
    for p in j..=m + n + 1 {
        if p == 0 {
            continue;
        }
        let mut inner = F::zero_in(data.ctx());
        // Only ν with p-ν <= m and ν-1 <= n contribute.
        for nu in p.saturating_sub(m).max(1)..=p.min(n + 1) {
            inner += data.deriv(m, p - nu)? * data.deriv(n, nu - 1)?;
        }
        acc += data.b(p, j)?.clone() * data.inv_factorial(p) * inner;
    }
    Ok(acc)
}

/// `j >= m+1`: `Σ_{ν=max(1,j-n)}^{m+1} γ_{n-j+ν,0}^{(j-ν,j)} d^{ν-1}P_m`,
/// with γ recovered from the b-coefficients.
pub fn rho_highj<F: Field>(data: &GenericBasisData<F>, req: RhoRequest) -> Result<F> {
    rho_highj_with(data, data, req)
}

/// [`rho_highj`] with an explicit source for the connection coefficients.
pub fn rho_highj_with<F: Field>(
    data: &GenericBasisData<F>,
    gammas: &dyn ConnectionSource<F>,
    req: RhoRequest,
) -> Result<F> {
    let RhoRequest { m, n, j } = req;
    if j <= m {
        return Err(Error::IndexContract(format!("rho_highj needs j > m (j={j}, m={m})")));
    }
    let mut acc = F::zero_in(data.ctx());
    if j > m + n + 1 {
        return Ok(acc);
    }
    for nu in j.saturating_sub(n).max(1)..=m + 1 {
        acc += gammas.gamma(n + nu - j, 0, j - nu, j)? * data.deriv(m, nu - 1)?;
    }
    Ok(acc)
}

/// `j <= m`: `Σ_{ν=1}^{j} γ_{m-j+ν,0}^{(j-ν,j)} d^{ν-1}P_n
///  + Σ_{ν=j+1}^{n+1} d^{ν-1}P_n Σ_{p=0}^{m} b_{p+ν,j}/(p+ν)! d^p P_m`.
pub fn rho_lowj<F: Field>(data: &GenericBasisData<F>, req: RhoRequest) -> Result<F> {
    rho_lowj_with(data, data, req)
}

/// [`rho_lowj`] with an explicit source for the connection coefficients.
pub fn rho_lowj_with<F: Field>(
    data: &GenericBasisData<F>,
    gammas: &dyn ConnectionSource<F>,
    req: RhoRequest,
) -> Result<F> {
    let RhoRequest { m, n, j } = req;
    if j > m {
        return Err(Error::IndexContract(format!("rho_lowj needs j <= m (j={j}, m={m})")));
    }
    let mut acc = F::zero_in(data.ctx());
    for nu in 1..=j {
        acc += gammas.gamma(m + nu - j, 0, j - nu, j)? * data.deriv(n, nu - 1)?;
    }
    for nu in j + 1..=n + 1 {
        let mut inner = F::zero_in(data.ctx());
        for p in 0..=m {
            inner += data.b(p + nu, j)?.clone() * data.inv_factorial(p + nu) * data.deriv(m, p)?;
        }
        acc += data.deriv(n, nu - 1)? * inner;
    }
    Ok(acc)
}

/// All `ρ_{j,n}^m`, `0 <= j <= m+n+1`, from the piecewise expressions.
/// Roles are swapped so that `m <= n`, which commutativity allows.
pub fn rho_vector<F: Field>(data: &GenericBasisData<F>, m: usize, n: usize) -> Result<Vec<F>> {
    rho_vector_with(data, data, m, n)
}

pub fn rho_vector_with<F: Field>(
    data: &GenericBasisData<F>,
    gammas: &dyn ConnectionSource<F>,
    m: usize,
    n: usize,
) -> Result<Vec<F>> {
    let (m, n) = if m > n { (n, m) } else { (m, n) };
    (0..=m + n + 1)
        .into_par_iter()
        .map(|j| {
            let req = RhoRequest::new(m, n, j);
            if j <= m {
                rho_lowj_with(data, gammas, req)
            } else {
                rho_highj_with(data, gammas, req)
            }
        })
        .collect()
}
