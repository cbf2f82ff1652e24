use super::{Family, FamilySpec};
use crate::error::{Error, Result};
use crate::scalars::{
    factorial, gamma_ratio, half, hyp_pfq_terminating, int, pochhammer, pow, pow2, sign, Field, PfqSpec,
};

/// Ratio `c_k` with `Q_k = c_k P_k^{(α,β)}` between the family's
/// normalization and the standard Jacobi one: `(2λ)_k / (λ+1/2)_k` for
/// Gegenbauer, `k! / (1/2)_k` for Chebyshev, 1 otherwise.
pub fn normalization<F: Field>(spec: &FamilySpec, k: usize, ctx: &F::Ctx) -> F {
    match spec.family() {
        Family::Gegenbauer => {
            let lambda = spec.lambda_in::<F>(ctx);
            pochhammer(&(lambda.clone() * int::<F>(ctx, 2)), k) / pochhammer(&(lambda + half::<F>(ctx)), k)
        }
        Family::Chebyshev => factorial::<F>(ctx, k) / pochhammer(&half::<F>(ctx), k),
        _ => F::one_in(ctx),
    }
}

fn jacobi_eval<F: Field>(a: &F, b: &F, n: usize, x: &F) -> F {
    let ctx = x.context();
    let one = F::one_in(&ctx);
    let two = int::<F>(&ctx, 2);
    if n == 0 {
        return one;
    }
    let mut prev = one;
    let mut cur = (a.clone() - b) / &two + (a.clone() + b + &two) / &two * x;
    let ab = a.clone() + b;
    let sq = a.clone() * a - b.clone() * b;
    for k in 2..=n as i64 {
        let kk = int::<F>(&ctx, k);
        let s = ab.clone() + int::<F>(&ctx, 2 * k);
        let c0 = int::<F>(&ctx, 2 * k) * (kk.clone() + &ab) * (s.clone() - &two);
        let c1 = (s.clone() - int::<F>(&ctx, 1)) * &s * (s.clone() - &two);
        let c2 = (s.clone() - int::<F>(&ctx, 1)) * &sq;
        let c3 = two.clone() * (kk.clone() + a - int::<F>(&ctx, 1)) * (kk + b - int::<F>(&ctx, 1)) * &s;
        let next = ((c1 * x + c2) * &cur - c3 * &prev) / c0;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

fn laguerre_eval<F: Field>(a: &F, n: usize, x: &F) -> F {
    let ctx = x.context();
    let one = F::one_in(&ctx);
    if n == 0 {
        return one;
    }
    let mut prev = one.clone();
    let mut cur = one + a - x;
    for k in 2..=n as i64 {
        let kk = int::<F>(&ctx, k);
        let next = ((int::<F>(&ctx, 2 * k - 1) + a - x) * &cur - (int::<F>(&ctx, k - 1) + a) * &prev) / kk;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Value of the degree-`n` member of the family at `x`.
pub fn eval_poly<F: Field>(spec: &FamilySpec, n: usize, x: &F) -> F {
    let ctx = x.context();
    match spec.family() {
        Family::Laguerre => laguerre_eval(&spec.alpha_in::<F>(&ctx), n, x),
        Family::GenericMonic => pow(x, n),
        _ => {
            let p = jacobi_eval(&spec.alpha_in::<F>(&ctx), &spec.beta_in::<F>(&ctx), n, x);
            p * normalization::<F>(spec, n, &ctx)
        }
    }
}

/// `d^p P_n / dx^p` at the left endpoint `x = -a`.
pub fn endpoint_derivative<F: Field>(spec: &FamilySpec, n: usize, p: usize, ctx: &F::Ctx) -> F {
    if p > n {
        return F::zero_in(ctx);
    }
    let (ni, pi) = (n as i64, p as i64);
    match spec.family() {
        Family::Laguerre => {
            let a = spec.alpha_in::<F>(ctx);
            sign::<F>(ctx, pi) * pochhammer(&(a + int::<F>(ctx, 1 + pi)), n - p) / factorial::<F>(ctx, n - p)
        }
        Family::GenericMonic => {
            let minus_a = -spec.offset_in::<F>(ctx);
            factorial::<F>(ctx, n) / factorial::<F>(ctx, n - p) * pow(&minus_a, n - p)
        }
        _ => {
            let (a, b) = (spec.alpha_in::<F>(ctx), spec.beta_in::<F>(ctx));
            let v = pow2::<F>(ctx, -pi)
                * sign::<F>(ctx, ni + pi)
                * pochhammer(&(b + int::<F>(ctx, pi + 1)), n - p)
                * pochhammer(&(a.clone() + spec.beta_in::<F>(ctx) + int::<F>(ctx, ni + 1)), p)
                / factorial::<F>(ctx, n - p);
            v * normalization::<F>(spec, n, ctx)
        }
    }
}

/// `b_{n,k}` in `(x + a)^n = Σ_k b_{n,k} P_k(x)`.
pub fn monomial_expansion_b<F: Field>(spec: &FamilySpec, n: usize, k: usize, ctx: &F::Ctx) -> Result<F> {
    if k > n {
        return Err(Error::IndexOutOfRange(format!("b_{{{n},{k}}} needs k <= n")));
    }
    let (ni, ki) = (n as i64, k as i64);
    match spec.family() {
        Family::Laguerre => {
            let a = spec.alpha_in::<F>(ctx);
            let g = gamma_ratio(&[a.clone() + int::<F>(ctx, ni + 1)], &[a + int::<F>(ctx, ki + 1)])?;
            Ok(pochhammer(&int::<F>(ctx, -ni), k) * g)
        }
        Family::GenericMonic => {
            let a = spec.offset_in::<F>(ctx);
            let binom = factorial::<F>(ctx, n) / (factorial::<F>(ctx, k) * factorial::<F>(ctx, n - k));
            Ok(binom * pow(&a, n - k))
        }
        _ => {
            let (a, b) = (spec.alpha_in::<F>(ctx), spec.beta_in::<F>(ctx));
            let ab = a.clone() + &b;
            let common = pow2::<F>(ctx, ni) * pochhammer(&(b.clone() + int::<F>(ctx, 1)), n)
                / pochhammer(&(b + int::<F>(ctx, 1)), k);
            let v = if k == 0 {
                // The general form is 0/0 when α+β = -1; this is its limit.
                common / pochhammer(&(ab + int::<F>(ctx, 2)), n)
            } else {
                let g = gamma_ratio(
                    &[ab.clone() + int::<F>(ctx, ki + 1)],
                    &[ab.clone() + int::<F>(ctx, ni + ki + 2)],
                )?;
                common * factorial::<F>(ctx, n) * (ab + int::<F>(ctx, 2 * ki + 1)) * g / factorial::<F>(ctx, n - k)
            };
            Ok(v / normalization::<F>(spec, k, ctx))
        }
    }
}

/// `γ_{n,k}^{(p,q)}` in `d^p P_{n+p} = Σ_k γ_{n,k}^{(p,q)} d^q P_{k+q}`.
pub fn connection_gamma<F: Field>(
    spec: &FamilySpec,
    n: usize,
    k: usize,
    p: usize,
    q: usize,
    ctx: &F::Ctx,
) -> Result<F> {
    if k > n {
        return Ok(F::zero_in(ctx));
    }
    let (pi, qi) = (p as i64, q as i64);
    match spec.family() {
        Family::Laguerre => {
            Ok(sign::<F>(ctx, pi + qi) * pochhammer(&int::<F>(ctx, pi - qi), n - k) / factorial::<F>(ctx, n - k))
        }
        Family::GenericMonic => Ok(if n == k {
            factorial::<F>(ctx, n + p) / factorial::<F>(ctx, n + q)
        } else {
            F::zero_in(ctx)
        }),
        _ => {
            let (a, b) = (spec.alpha_in::<F>(ctx), spec.beta_in::<F>(ctx));
            let g = if spec.is_symmetric() {
                match symmetric_gamma(&a, n, k, p, q) {
                    Ok(v) => v,
                    Err(Error::PoleAtNonpositiveInteger(_)) => jacobi_gamma(&a, &b, n, k, p, q)?,
                    Err(e) => return Err(e),
                }
            } else {
                jacobi_gamma(&a, &b, n, k, p, q)?
            };
            Ok(g * normalization::<F>(spec, n + p, ctx) / normalization::<F>(spec, k + q, ctx))
        }
    }
}

/// General Jacobi connection coefficient, a terminating `3F2` at 1.
pub(crate) fn jacobi_gamma<F: Field>(a: &F, b: &F, n: usize, k: usize, p: usize, q: usize) -> Result<F> {
    let ctx = a.context();
    let (ni, ki, pi, qi) = (n as i64, k as i64, p as i64, q as i64);
    let ab = a.clone() + b;
    let c = |v: i64| int::<F>(&ctx, v);
    let pre = pochhammer(&(a.clone() + c(ki + pi + 1)), n - k)
        * pochhammer(&(ab.clone() + c(ni + pi + 1)), p)
        * pochhammer(&(ab.clone() + c(ni + 2 * pi + 1)), k)
        / (pow2::<F>(&ctx, pi - qi)
            * factorial::<F>(&ctx, n - k)
            * pochhammer(&(ab.clone() + c(ki + qi + 1)), q)
            * pochhammer(&(ab.clone() + c(ki + 2 * qi + 1)), k));
    let series = PfqSpec::unit(
        vec![
            c(ki - ni),
            a.clone() + c(ki + qi + 1),
            ab.clone() + c(ki + ni + 2 * pi + 1),
        ],
        vec![a.clone() + c(ki + pi + 1), ab + c(2 * ki + 2 * qi + 2)],
    );
    Ok(pre * hyp_pfq_terminating(&series)?)
}

/// Symmetric (`α = β`) connection coefficient; zero for odd `n - k`.
///
/// Fails with a pole error at `α = -1/2`, where the Gamma quotient has
/// removable singularities; callers fall back to [`jacobi_gamma`].
pub(crate) fn symmetric_gamma<F: Field>(a: &F, n: usize, k: usize, p: usize, q: usize) -> Result<F> {
    let ctx = a.context();
    if (n - k) % 2 == 1 {
        return Ok(F::zero_in(&ctx));
    }
    let h = (n - k) / 2;
    let (ni, ki, pi, qi) = (n as i64, k as i64, p as i64, q as i64);
    let c = |v: i64| int::<F>(&ctx, v);
    let two_a = a.clone() * c(2);
    let mid = (c(ki + ni) + c(1)) * half::<F>(&ctx);
    let num = [
        two_a.clone() + c(ki + qi + 1),
        a.clone() + c(ni + pi + 1),
        mid.clone() + c(pi) + a,
    ];
    let den = [a.clone() + c(ki + qi + 1), two_a + c(ni + pi + 1), mid + c(qi + 1) + a];
    let g = gamma_ratio(&num, &den)?;
    Ok(
        pochhammer(&c(pi - qi), h) * (a.clone() + c(ki + qi) + half::<F>(&ctx)) * pow2::<F>(&ctx, pi - qi)
            / factorial::<F>(&ctx, h)
            * g,
    )
}
