//! Pochhammer symbols, Gamma quotients and terminating `pFq` sums.

use super::Field;
use crate::error::{Error, Result};

/// Rising factorial `(z)_n = z (z+1) ... (z+n-1)`, with `(z)_0 = 1`.
pub fn pochhammer<F: Field>(z: &F, n: usize) -> F {
    z.rising(n)
}

/// `(z)_k` for any integer `k`, using `(z)_{-k} = 1 / (z-k)_k` for `k > 0`.
pub fn pochhammer_signed<F: Field>(z: &F, k: i64) -> Result<F> {
    if k >= 0 {
        return Ok(z.rising(k as usize));
    }
    let ctx = z.context();
    let shifted = z.clone() - F::from_i64(&ctx, -k);
    let den = shifted.rising(k.unsigned_abs() as usize);
    if den.is_zero() {
        return Err(Error::PoleAtNonpositiveInteger(shifted.to_string()));
    }
    Ok(F::one_in(&ctx) / den)
}

/// `n!` in the given backend.
pub fn factorial<F: Field>(ctx: &F::Ctx, n: usize) -> F {
    F::one_in(ctx).rising(n)
}

/// Parameters of a generalized hypergeometric series `pFq(a; b; x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PfqSpec<F> {
    pub numerator: Vec<F>,
    pub denominator: Vec<F>,
    pub argument: F,
}

impl<F: Field> PfqSpec<F> {
    pub fn new(numerator: Vec<F>, denominator: Vec<F>, argument: F) -> Self {
        PfqSpec {
            numerator,
            denominator,
            argument,
        }
    }

    /// Series at unit argument, the only case the coefficient formulas need.
    pub fn unit(numerator: Vec<F>, denominator: Vec<F>) -> Self {
        let ctx = numerator
            .first()
            .or(denominator.first())
            .map(Field::context)
            .expect("pFq needs at least one parameter");
        PfqSpec::new(numerator, denominator, F::one_in(&ctx))
    }

    /// Index of the last nonzero term: the smallest `t` with `-t` among the
    /// numerator parameters.
    pub fn terminating_index(&self) -> Option<usize> {
        self.numerator
            .iter()
            .filter_map(|a| a.to_i64_exact())
            .filter(|&v| v <= 0)
            .map(|v| v.unsigned_abs() as usize)
            .min()
    }
}

/// Sums a terminating `pFq` with the running-term recurrence
/// `t_{k+1} = t_k * Π(a_i + k) / Π(b_j + k) * x / (k + 1)`.
pub fn hyp_pfq_terminating<F: Field>(spec: &PfqSpec<F>) -> Result<F> {
    let t = spec.terminating_index().ok_or(Error::NotTerminating)?;
    let ctx = spec.argument.context();
    let mut sum = F::one_in(&ctx);
    let mut term = F::one_in(&ctx);
    for k in 0..t {
        let kk = F::from_i64(&ctx, k as i64);
        let mut den = F::from_i64(&ctx, k as i64 + 1);
        for b in &spec.denominator {
            let f = b.clone() + &kk;
            if f.is_zero() || f.to_i64_near() == Some(0) {
                return Err(Error::DenominatorPole { index: k + 1 });
            }
            den *= f;
        }
        for a in &spec.numerator {
            term *= a.clone() + &kk;
        }
        term *= &spec.argument;
        term = term / den;
        if term.is_zero() {
            break;
        }
        sum += &term;
    }
    Ok(sum)
}

/// Reduces `Π Γ(num_i) / Π Γ(den_i)` to a finite Pochhammer product.
///
/// Each numerator argument is paired with a denominator argument at an
/// integer distance. A pole in the numerator is an error; a pole in the
/// denominator makes the quotient vanish.
pub fn gamma_ratio<F: Field>(num: &[F], den: &[F]) -> Result<F> {
    if num.len() != den.len() {
        return Err(Error::NonIntegerGap);
    }
    let ctx = match num.first() {
        Some(z) => z.context(),
        None => return Err(Error::NonIntegerGap),
    };
    for a in num {
        if let Some(v) = a.to_i64_near() {
            if v <= 0 {
                return Err(Error::PoleAtNonpositiveInteger(v.to_string()));
            }
        }
    }
    let mut pool: Vec<&F> = den.iter().collect();
    let mut acc = F::one_in(&ctx);
    for a in num {
        let (idx, gap) = pool
            .iter()
            .enumerate()
            .find_map(|(i, b)| (a.clone() - *b).to_i64_near().map(|g| (i, g)))
            .ok_or(Error::NonIntegerGap)?;
        let b = pool.swap_remove(idx);
        // Γ(b + g) / Γ(b) = (b)_g for g >= 0, 1/(a)_{-g} otherwise.
        if gap >= 0 {
            acc *= b.rising(gap as usize);
        } else {
            acc = acc / a.rising(gap.unsigned_abs() as usize);
        }
    }
    Ok(acc)
}
