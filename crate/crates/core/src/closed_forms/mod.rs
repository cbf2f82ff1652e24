//! Family-specific closed forms for `ρ_{j,n}^m`, the guaranteed zero band,
//! the `j <-> n` symmetry scalings and the Bateman-type kernel expansion.

mod bateman;
mod jacobi;
mod laguerre;
mod table;

pub use bateman::{bateman_tensor, BatemanTensor};
pub use jacobi::{
    chebyshev_d, chebyshev_rho, chebyshev_varpi, jacobi_d, jacobi_rho, jacobi_varpi, legendre_d, legendre_rho,
    legendre_varpi, symmetric_rho, symmetric_varpi,
};
pub use laguerre::laguerre_rho;
pub use table::{figure_preset, FigurePreset, RhoTable, FIGURE_NAMES};

use std::ops::RangeInclusive;

use crate::basis::{normalization, Family, FamilySpec};
use crate::error::{Error, Result};
use crate::generic_conv::{rho_vector_with, FamilyConnection};
use crate::scalars::{int, pochhammer_signed, sign, Field};

/// Closed-form `ρ_{j,n}^m` in the family's own normalization.
///
/// Generic monic bases have no dedicated closed form and return
/// [`Error::NoClosedForm`]; [`rho_closed_vector`] handles them through the
/// family-agnostic expressions.
pub fn rho_closed<F: Field>(spec: &FamilySpec, m: usize, n: usize, j: usize, ctx: &F::Ctx) -> Result<F> {
    if j > m + n + 1 {
        return Ok(F::zero_in(ctx));
    }
    match spec.family() {
        Family::Jacobi => jacobi_rho(m, n, j, &spec.alpha_in::<F>(ctx), &spec.beta_in::<F>(ctx)),
        Family::SymmetricJacobi => symmetric_rho(m, n, j, &spec.alpha_in::<F>(ctx)),
        Family::Legendre => legendre_rho(ctx, m, n, j),
        Family::Chebyshev => chebyshev_rho(ctx, m, n, j),
        Family::Gegenbauer => {
            let base = symmetric_rho(m, n, j, &spec.alpha_in::<F>(ctx))?;
            Ok(
                base * normalization::<F>(spec, m, ctx) * normalization::<F>(spec, n, ctx)
                    / normalization::<F>(spec, j, ctx),
            )
        }
        Family::Laguerre => Ok(laguerre_rho(m, n, j, &spec.alpha_in::<F>(ctx))),
        Family::GenericMonic => Err(Error::NoClosedForm(spec.to_string())),
    }
}

/// `ρ_{j,n}^m` for `j = 0..=m+n+1`.
pub fn rho_closed_vector<F: Field>(spec: &FamilySpec, m: usize, n: usize, ctx: &F::Ctx) -> Result<Vec<F>> {
    if spec.family() == Family::GenericMonic {
        let data = crate::basis::GenericBasisData::from_family(spec, m + n + 1, ctx)?;
        let conn = FamilyConnection { spec, ctx: ctx.clone() };
        return rho_vector_with(&data, &conn, m, n);
    }
    (0..=m + n + 1).map(|j| rho_closed(spec, m, n, j, ctx)).collect()
}

/// The `j` interval on which `ρ_{j,n}^m` is guaranteed to vanish.
///
/// Jacobi types (`q = 1`): `[m+1, n-m-2]` once `n >= 2m+3`. Laguerre has
/// the sharper band `[m+1, n-1]` once `n >= m+2`, which contains the
/// `q = 0` interval `[m+1, n-m-1]`. Both are mirrored when `m > n`.
pub fn zero_region(spec: &FamilySpec, m: usize, n: usize) -> Option<RangeInclusive<usize>> {
    let q = spec.zero_region_q()?;
    let (lo, hi) = if m > n { (n, m) } else { (m, n) };
    let end = if spec.family() == Family::Laguerre {
        hi.checked_sub(1)?
    } else {
        (hi as i64 - lo as i64 - q - 1).try_into().ok()?
    };
    (end > lo).then(|| lo + 1..=end)
}

/// Factor `F` with `ρ_{n,j}^m = F ρ_{j,n}^m`.
///
/// Jacobi types need `j, n >= m+1`; Legendre holds for all indices.
pub fn symmetry_factor<F: Field>(spec: &FamilySpec, m: usize, n: usize, j: usize, ctx: &F::Ctx) -> Result<F> {
    let c = |v: i64| int::<F>(ctx, v);
    let (ji, ni) = (j as i64, n as i64);
    match spec.family() {
        Family::Legendre => Ok(sign::<F>(ctx, ji + ni) * c(2 * ni + 1) / c(2 * ji + 1)),
        Family::Laguerre | Family::GenericMonic => Err(Error::NoClosedForm(format!("symmetry factor for {spec}"))),
        _ => {
            if j <= m || n <= m {
                return Err(Error::IndexContract(format!(
                    "symmetry factor needs j, n >= m+1 (m={m}, j={j}, n={n})"
                )));
            }
            let a = spec.alpha_in::<F>(ctx);
            let b = spec.beta_in::<F>(ctx);
            let ab1 = a.clone() + &b + c(1);
            let one = F::one_in(ctx);
            // (α+β+1)_n / (α+β+1)_j as one signed Pochhammer symbol, which
            // stays finite at α+β+1 = 0.
            let lead = pochhammer_signed(&(ab1.clone() + c(ji)), ni - ji)?;
            let weight =
                pochhammer_signed(&(a + &one + c(ji)), ni - ji)? * pochhammer_signed(&(b + &one + c(ji)), ni - ji)?;
            let base = sign::<F>(ctx, ji + ni) * (ab1.clone() + c(2 * ni)) * lead.clone() * lead
                / ((ab1 + c(2 * ji)) * weight);
            let cj = normalization::<F>(spec, j, ctx);
            let cn = normalization::<F>(spec, n, ctx);
            Ok(base * cj.clone() * cj / (cn.clone() * cn))
        }
    }
}

#[cfg(test)]
mod tests;
