//! Jacobi-type closed forms: general Jacobi, symmetric Jacobi, Legendre and
//! Chebyshev. Gegenbauer values are rescaled symmetric-Jacobi values.

use crate::error::{Error, Result};
use crate::scalars::{factorial, gamma_ratio, half, hyp_pfq_terminating, int, pochhammer, pow2, sign, Field, PfqSpec};

/// ϖ-coefficient of the `j >= m+1` sum (and, with `m`, `n` exchanged, of the
/// first `j <= m` sum). Requires `1 <= ν <= m+1`, `ν <= j`, `j <= n+ν`.
pub fn jacobi_varpi<F: Field>(m: usize, n: usize, j: usize, nu: usize, a: &F, b: &F) -> Result<F> {
    check_varpi(m, n, j, nu)?;
    let ctx = a.context();
    let c = |v: i64| int::<F>(&ctx, v);
    let (mi, ni, ji, vi) = (m as i64, n as i64, j as i64, nu as i64);
    let ab = a.clone() + b;
    let num = c(2)
        * sign::<F>(&ctx, mi + vi - 1)
        * pochhammer(&(a.clone() + c(ji - vi + 1)), n + nu - j)
        * pochhammer(&(ab.clone() + c(ni + 1)), j - nu)
        * pochhammer(&(b.clone() + c(vi)), m + 1 - nu)
        * pochhammer(&(ab.clone() + c(mi + 1)), nu - 1);
    let den =
        pochhammer(&(ab.clone() + c(ji + 1)), j) * factorial::<F>(&ctx, m + 1 - nu) * factorial::<F>(&ctx, n + nu - j);
    let series = PfqSpec::unit(
        vec![c(ji - ni - vi), a.clone() + c(ji + 1), ab.clone() + c(ni + ji - vi + 1)],
        vec![a.clone() + c(ji - vi + 1), ab + c(2 * ji + 2)],
    );
    Ok(num / den * hyp_pfq_terminating(&series)?)
}

fn check_varpi(m: usize, n: usize, j: usize, nu: usize) -> Result<()> {
    if nu == 0 || nu > m + 1 || nu > j || j > n + nu {
        return Err(Error::IndexContract(format!(
            "varpi needs 1 <= nu <= min(m+1, j) and j <= n+nu (m={m}, n={n}, j={j}, nu={nu})"
        )));
    }
    Ok(())
}

fn check_d(nu: usize, j: usize, n: usize, m: usize) -> Result<()> {
    if nu <= j || nu > n + 1 || j > m {
        return Err(Error::IndexContract(format!(
            "d needs j+1 <= nu <= n+1 and j <= m (nu={nu}, j={j}, n={n}, m={m})"
        )));
    }
    Ok(())
}

/// d-coefficient of the second `j <= m` sum, with its terminating `4F3`.
pub fn jacobi_d<F: Field>(nu: usize, j: usize, n: usize, m: usize, a: &F, b: &F) -> Result<F> {
    check_d(nu, j, n, m)?;
    let ctx = a.context();
    let c = |v: i64| int::<F>(&ctx, v);
    let (mi, ni, ji, vi) = (m as i64, n as i64, j as i64, nu as i64);
    let ab = a.clone() + b;
    // At j = 0 the general ratio is 0/0 when α+β = -1; this is its limit.
    let ratio = if j == 0 {
        F::one_in(&ctx) / pochhammer(&(ab.clone() + c(2)), nu)
    } else {
        (ab.clone() + c(2 * ji + 1)) / pochhammer(&(ab.clone() + c(ji + 1)), nu + 1)
    };
    let num = c(2)
        * sign::<F>(&ctx, mi + ni + 1 + vi)
        * ratio
        * (b.clone() + c(vi))
        * pochhammer(&(b.clone() + c(ji + 1)), m - j)
        * pochhammer(&(b.clone() + c(1)), n)
        * pochhammer(&(ab.clone() + c(ni + 1)), nu - 1);
    let den = factorial::<F>(&ctx, m) * factorial::<F>(&ctx, n + 1 - nu) * factorial::<F>(&ctx, nu - j);
    let series = PfqSpec::unit(
        vec![c(1), c(-mi), b.clone() + c(vi + 1), ab.clone() + c(mi + 1)],
        vec![c(vi - ji + 1), b.clone() + c(1), ab + c(ji + vi + 2)],
    );
    Ok(num / den * hyp_pfq_terminating(&series)?)
}

/// The shared piecewise structure of every Jacobi-type closed form, for
/// `m <= n`:
///
/// * `j > m+n+1`: zero (degree bound),
/// * `j <= m`: `Σ_{ν=1}^{j} ϖ^{n,m}_{j,ν} + Σ_{ν=j+1}^{n+1} d_{ν,j,n}^m`,
/// * `j >= max(m+1, n-m-1)`: `Σ_{ν=max(1,|j-n|)}^{m+1} ϖ^{m,n}_{j,ν}`,
/// * otherwise zero (the band `m+1 <= j <= n-m-2`).
pub(crate) fn piecewise<F, V, D>(ctx: &F::Ctx, m: usize, n: usize, j: usize, varpi: V, d: D) -> Result<F>
where
    F: Field,
    V: Fn(usize, usize, usize, usize) -> Result<F>,
    D: Fn(usize, usize, usize, usize) -> Result<F>,
{
    let (m, n) = if m > n { (n, m) } else { (m, n) };
    let mut acc = F::zero_in(ctx);
    if j > m + n + 1 {
        return Ok(acc);
    }
    if j <= m {
        for nu in 1..=j {
            acc += varpi(n, m, j, nu)?;
        }
        for nu in j + 1..=n + 1 {
            acc += d(nu, j, n, m)?;
        }
    } else if j + m + 1 >= n {
        for nu in j.abs_diff(n).max(1)..=m + 1 {
            acc += varpi(m, n, j, nu)?;
        }
    }
    Ok(acc)
}

/// `ρ_{j,n}^{m;(α,β)}`.
pub fn jacobi_rho<F: Field>(m: usize, n: usize, j: usize, a: &F, b: &F) -> Result<F> {
    piecewise(
        &a.context(),
        m,
        n,
        j,
        |m, n, j, nu| jacobi_varpi(m, n, j, nu, a, b),
        |nu, j, n, m| jacobi_d(nu, j, n, m, a, b),
    )
}

/// Symmetric-Jacobi ϖ (`α = β`); vanishes when `n+ν-j` is odd. The
/// expression is singular at `α = -1/2`, where [`jacobi_varpi`] applies.
pub fn symmetric_varpi<F: Field>(m: usize, n: usize, j: usize, nu: usize, a: &F) -> Result<F> {
    check_varpi(m, n, j, nu)?;
    let ctx = a.context();
    if (n + nu - j) % 2 == 1 {
        return Ok(F::zero_in(&ctx));
    }
    let h = (n + nu - j) / 2;
    let c = |v: i64| int::<F>(&ctx, v);
    let (mi, ni, ji, vi) = (m as i64, n as i64, j as i64, nu as i64);
    let two_a = a.clone() * c(2);
    let num = c(2)
        * sign::<F>(&ctx, mi + vi + 1)
        * pochhammer(&(a.clone() + c(vi)), m + 1 - nu)
        * pochhammer(&(two_a.clone() + c(mi + 1)), nu - 1)
        * pochhammer(&(two_a.clone() + c(ni + 1)), j - nu)
        * pochhammer(&c(-vi), h)
        * pochhammer(&(a.clone() + c(ji - vi) + half::<F>(&ctx)), h)
        * pochhammer(&(a.clone() + c(ji - vi + 1)), n + nu - j);
    let den = factorial::<F>(&ctx, m + 1 - nu)
        * factorial::<F>(&ctx, h)
        * pochhammer(&(two_a.clone() + c(ji + 1)), j)
        * pochhammer(&(a.clone() + c(ji + 1) + half::<F>(&ctx)), h)
        * pochhammer(&(two_a + c(2 * ji - 2 * vi + 1)), n + nu - j);
    if den.is_zero() {
        return Err(Error::DenominatorPole { index: 0 });
    }
    Ok(num / den)
}

/// `ρ_{j,n}^{m;(α,α)}`, falling back to the general Jacobi form at `α = -1/2`.
pub fn symmetric_rho<F: Field>(m: usize, n: usize, j: usize, a: &F) -> Result<F> {
    let ctx = a.context();
    if (a.clone() + half::<F>(&ctx)).is_zero() {
        return jacobi_rho(m, n, j, a, a);
    }
    piecewise(
        &ctx,
        m,
        n,
        j,
        |m, n, j, nu| symmetric_varpi(m, n, j, nu, a),
        |nu, j, n, m| jacobi_d(nu, j, n, m, a, a),
    )
}

/// Legendre ϖ: a single Pochhammer ratio, zero for odd `n+ν-j`.
pub fn legendre_varpi<F: Field>(ctx: &F::Ctx, m: usize, n: usize, j: usize, nu: usize) -> Result<F> {
    check_varpi(m, n, j, nu)?;
    if (n + nu - j) % 2 == 1 {
        return Ok(F::zero_in(ctx));
    }
    let h = (n + nu - j) / 2;
    let c = |v: i64| int::<F>(ctx, v);
    let (mi, ni, ji, vi) = (m as i64, n as i64, j as i64, nu as i64);
    let num = sign::<F>(ctx, mi + vi + 1) * c(2 * ji + 1) * factorial::<F>(ctx, m + nu - 1) * pochhammer(&c(-vi), h);
    let den = pow2::<F>(ctx, 2 * vi)
        * factorial::<F>(ctx, nu - 1)
        * factorial::<F>(ctx, m + 1 - nu)
        * factorial::<F>(ctx, h)
        * pochhammer(&(c(ni + ji - vi + 1) * half::<F>(ctx)), nu + 1);
    Ok(num / den)
}

/// Legendre d: the `4F3` collapses to a Gamma quotient.
pub fn legendre_d<F: Field>(ctx: &F::Ctx, nu: usize, j: usize, n: usize, m: usize) -> Result<F> {
    check_d(nu, j, n, m)?;
    let c = |v: i64| int::<F>(ctx, v);
    let h = half::<F>(ctx);
    let (mi, ni, ji, vi) = (m as i64, n as i64, j as i64, nu as i64);
    let g = gamma_ratio(
        &[h.clone(), c(1)],
        &[c(mi + vi - ji + 2) * &h, c(ji + mi + vi + 3) * &h],
    )?;
    let num = g
        * c(2 * ji + 1)
        * c(vi)
        * pow2::<F>(ctx, ji + mi - vi)
        * sign::<F>(ctx, mi + vi + ni + 1)
        * factorial::<F>(ctx, n + nu - 1)
        * pochhammer(&(c(vi + 1 - ji - mi) * &h), j + m)
        * pochhammer(&(c(ji - mi + vi + 2) * &h), m);
    let den = factorial::<F>(ctx, n + 1 - nu) * factorial::<F>(ctx, j + m + nu);
    Ok(num / den)
}

pub fn legendre_rho<F: Field>(ctx: &F::Ctx, m: usize, n: usize, j: usize) -> Result<F> {
    piecewise(
        ctx,
        m,
        n,
        j,
        |m, n, j, nu| legendre_varpi(ctx, m, n, j, nu),
        |nu, j, n, m| legendre_d(ctx, nu, j, n, m),
    )
}

/// Chebyshev ϖ̃ in the `T_n` normalization.
///
/// The factor `n ((n+ν-j+2)/2)_{j-ν-1}` has a Pochhammer index of `-1` at
/// `ν = j`; its limit there is 2.
pub fn chebyshev_varpi<F: Field>(ctx: &F::Ctx, m: usize, n: usize, j: usize, nu: usize) -> Result<F> {
    check_varpi(m, n, j, nu)?;
    if (n + nu - j) % 2 == 1 {
        return Ok(F::zero_in(ctx));
    }
    let h = (n + nu - j) / 2;
    let c = |v: i64| int::<F>(ctx, v);
    let (mi, ni, ji, vi) = (m as i64, n as i64, j as i64, nu as i64);
    let nf = if j == nu {
        c(2)
    } else {
        c(ni) * pochhammer(&(c(ni + vi - ji + 2) * half::<F>(ctx)), j - nu - 1)
    };
    let num = sign::<F>(ctx, mi)
        * pow2::<F>(ctx, 1 - 2 * vi)
        * nf
        * pochhammer(&c(-mi), nu - 1)
        * pochhammer(&c(mi), nu - 1)
        * pochhammer(&c(-vi), h);
    let den = pochhammer(&half::<F>(ctx), nu - 1) * factorial::<F>(ctx, (n + nu + j) / 2);
    Ok(num / den)
}

/// Chebyshev d̃, including the `2^{2-δ_{0,j}}` factor of the `j = 0` limit.
pub fn chebyshev_d<F: Field>(ctx: &F::Ctx, nu: usize, j: usize, n: usize, m: usize) -> Result<F> {
    check_d(nu, j, n, m)?;
    let c = |v: i64| int::<F>(ctx, v);
    let h = half::<F>(ctx);
    let (mi, ni, ji, vi) = (m as i64, n as i64, j as i64, nu as i64);
    let two_pow = if j == 0 { 1 } else { 2 };
    let pre = pow2::<F>(ctx, two_pow)
        * sign::<F>(ctx, mi + ni)
        * pochhammer(&c(-ni), nu - 1)
        * pochhammer(&c(ni), nu - 1)
        * (c(vi) - &h)
        / (factorial::<F>(ctx, nu - j) * factorial::<F>(ctx, j + nu));
    let series = PfqSpec::unit(
        vec![c(1), c(-mi), c(mi), c(vi) + &h],
        vec![h.clone(), c(vi - ji + 1), c(ji + vi + 1)],
    );
    Ok(pre * hyp_pfq_terminating(&series)?)
}

pub fn chebyshev_rho<F: Field>(ctx: &F::Ctx, m: usize, n: usize, j: usize) -> Result<F> {
    piecewise(
        ctx,
        m,
        n,
        j,
        |m, n, j, nu| chebyshev_varpi(ctx, m, n, j, nu),
        |nu, j, n, m| chebyshev_d(ctx, nu, j, n, m),
    )
}
