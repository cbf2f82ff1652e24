//! Independent ground truth for the convolution coefficients.
//!
//! Everything here is plain polynomial algebra: basis polynomials come from
//! their own three-term recurrences, the integral is taken term by term and
//! the result is re-expanded by peeling off leading terms. Nothing in this
//! module calls the connection coefficients, the hypergeometric sums or the
//! closed forms, so a bug there cannot hide behind a matching bug here.

use crate::basis::{Family, FamilySpec};
use crate::convmat::SeriesCoeffs;
use crate::error::{Error, Result};
use crate::scalars::Field;

/// `Σ_k coeffs[k] (x + shift)^k`, kept with a nonzero top coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialPoly<F: Field> {
    coeffs: Vec<F>,
    shift: F,
}

impl<F: Field> MonomialPoly<F> {
    /// Polynomial in powers of `x + shift`.
    pub fn with_shift(coeffs: Vec<F>, shift: F) -> Self {
        let mut p = MonomialPoly { coeffs, shift };
        p.trim();
        p
    }

    /// Polynomial in plain powers of `x`.
    pub fn new(coeffs: Vec<F>, ctx: &F::Ctx) -> Self {
        Self::with_shift(coeffs, F::zero_in(ctx))
    }

    pub fn zero(ctx: &F::Ctx) -> Self {
        Self::new(Vec::new(), ctx)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Field::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn shift(&self) -> &F {
        &self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    fn ctx(&self) -> F::Ctx {
        self.shift.context()
    }

    /// Value at `x`, by Horner's rule in `x + shift`.
    pub fn eval(&self, x: &F) -> F {
        let y = x.clone() + &self.shift;
        let mut acc = F::zero_in(&self.ctx());
        for c in self.coeffs.iter().rev() {
            acc = acc * &y + c;
        }
        acc
    }

    /// The same polynomial expanded in powers of `x + new_shift`.
    pub fn recenter(&self, new_shift: &F) -> Self {
        // With y = x + shift and z = x + new_shift, y = z + (shift - new_shift).
        let d = self.shift.clone() - new_shift;
        let mut out: Vec<F> = Vec::new();
        for c in self.coeffs.iter().rev() {
            // out <- out * (z + d) + c
            let mut next = vec![F::zero_in(&self.ctx()); out.len() + 1];
            for (k, v) in out.iter().enumerate() {
                next[k + 1] += v;
                next[k] += v.clone() * &d;
            }
            next[0] += c;
            out = next;
        }
        Self::with_shift(out, new_shift.clone())
    }

    fn aligned(&self, other: &Self) -> Self {
        if other.shift == self.shift {
            other.clone()
        } else {
            other.recenter(&self.shift)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let other = self.aligned(other);
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = F::zero_in(&self.ctx());
        let coeffs = (0..len)
            .map(|k| self.coeffs.get(k).unwrap_or(&zero).clone() + other.coeffs.get(k).unwrap_or(&zero))
            .collect();
        Self::with_shift(coeffs, self.shift.clone())
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::with_shift(self.coeffs.iter().map(|c| c.clone() * s).collect(), self.shift.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one_in(&self.ctx())))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let other = self.aligned(other);
        if self.is_zero() || other.is_zero() {
            return Self::with_shift(Vec::new(), self.shift.clone());
        }
        let mut out = vec![F::zero_in(&self.ctx()); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (k, b) in other.coeffs.iter().enumerate() {
                out[i + k] += a.clone() * b;
            }
        }
        Self::with_shift(out, self.shift.clone())
    }

    /// Multiplication by `x + shift`.
    fn mul_y(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(F::zero_in(&self.ctx()));
        coeffs.extend(self.coeffs.iter().cloned());
        Self::with_shift(coeffs, self.shift.clone())
    }
}

/// `k -> (A_k, B_k, C_k)` of a three-term recurrence.
type Recurrence<'a, F> = Box<dyn Fn(i64) -> (F, F, F) + 'a>;

/// Monomial coefficients of the degree-`n` basis member, in plain powers
/// of `x`, built from the family's three-term recurrence.
pub fn to_monomial<F: Field>(spec: &FamilySpec, n: usize, ctx: &F::Ctx) -> MonomialPoly<F> {
    basis_polys(spec, n, ctx).pop().expect("at least degree 0")
}

/// `P_0, ..., P_n` as monomial polynomials.
pub fn basis_polys<F: Field>(spec: &FamilySpec, n: usize, ctx: &F::Ctx) -> Vec<MonomialPoly<F>> {
    let q = |v: i64| F::from_i64(ctx, v);
    let one = F::one_in(ctx);
    let x = MonomialPoly::new(vec![F::zero_in(ctx), one.clone()], ctx);
    let constant = |c: F| MonomialPoly::new(vec![c], ctx);
    let mut out = vec![constant(one.clone())];
    if n == 0 {
        return out;
    }
    // Each family gives P_1 and a rule P_{k+1} = (A_k x + B_k) P_k - C_k P_{k-1}.
    let (p1, rule): (MonomialPoly<F>, Recurrence<'_, F>) = match spec.family() {
        Family::Legendre => (
            x.clone(),
            Box::new(move |k| {
                let k1 = q(k + 1);
                (q(2 * k + 1) / &k1, F::zero_in(ctx), q(k) / k1)
            }),
        ),
        Family::Chebyshev => (x.clone(), Box::new(move |_| (q(2), F::zero_in(ctx), q(1)))),
        Family::Gegenbauer => {
            let lam = F::from_rational(ctx, spec.lambda());
            let l2 = lam.clone();
            (
                x.scale(&(lam.clone() * q(2))),
                Box::new(move |k| {
                    let k1 = q(k + 1);
                    (
                        q(2) * (q(k) + &l2) / &k1,
                        F::zero_in(ctx),
                        (q(k - 1) + l2.clone() * q(2)) / k1,
                    )
                }),
            )
        }
        Family::Jacobi | Family::SymmetricJacobi => {
            let a = F::from_rational(ctx, spec.alpha());
            let b = F::from_rational(ctx, spec.beta());
            let half = one.clone() / q(2);
            let p1 = MonomialPoly::new(vec![(a.clone() - &b) * &half, (a.clone() + &b + q(2)) * &half], ctx);
            (
                p1,
                Box::new(move |k| {
                    // Standard recurrence for P_{k+1}, written with s = 2k + α + β.
                    let s = q(2 * k) + &a + &b;
                    let den = q(2 * (k + 1)) * (q(k + 1) + &a + &b) * &s;
                    let lin = (s.clone() + q(1)) * (s.clone() + q(2)) * &s / &den;
                    let cst = (s.clone() + q(1)) * (a.clone() * &a - b.clone() * &b) / &den;
                    let back = q(2) * (q(k) + &a) * (q(k) + &b) * (s + q(2)) / den;
                    (lin, cst, back)
                }),
            )
        }
        Family::Laguerre => {
            let a = F::from_rational(ctx, spec.alpha());
            let p1 = MonomialPoly::new(vec![one.clone() + &a, -one.clone()], ctx);
            (
                p1,
                Box::new(move |k| {
                    let k1 = q(k + 1);
                    (-one.clone() / &k1, (q(2 * k + 1) + &a) / &k1, (q(k) + &a) / k1)
                }),
            )
        }
        Family::GenericMonic => (x.clone(), Box::new(move |_| (q(1), F::zero_in(ctx), F::zero_in(ctx)))),
    };
    out.push(p1);
    for k in 1..n {
        let (lin, cst, back) = rule(k as i64);
        let cur = &out[k];
        let next = cur
            .mul_y()
            .scale(&lin)
            .add(&cur.scale(&cst))
            .sub(&out[k - 1].scale(&back));
        out.push(next);
    }
    out
}

/// `∫_{-a}^{x+a} P_m(x-t) P_n(t) dt`, returned in powers of `x + 2a`.
pub fn convolve_exact<F: Field>(spec: &FamilySpec, m: usize, n: usize, ctx: &F::Ctx) -> MonomialPoly<F> {
    let a = F::from_rational(ctx, spec.offset());
    let pm = to_monomial::<F>(spec, m, ctx);
    let pn = to_monomial::<F>(spec, n, ctx);
    let zero = MonomialPoly::zero(ctx);
    let x = MonomialPoly::new(vec![F::zero_in(ctx), F::one_in(ctx)], ctx);

    // P_m(x - t) as a polynomial in t whose coefficients are polynomials in x:
    // (x - t)^k = Σ_i C(k,i) x^{k-i} (-t)^i.
    let mut kernel = vec![zero.clone(); m + 1];
    for (k, c) in pm.coeffs().iter().enumerate() {
        let mut binom = F::one_in(ctx);
        for (i, slot) in kernel.iter_mut().enumerate().take(k + 1) {
            let mut xpow = MonomialPoly::new(vec![F::one_in(ctx)], ctx);
            for _ in 0..k - i {
                xpow = xpow.mul(&x);
            }
            let signed = if i % 2 == 0 { binom.clone() } else { -binom.clone() };
            *slot = slot.add(&xpow.scale(&(c.clone() * signed)));
            binom = binom * F::from_i64(ctx, (k - i) as i64) / F::from_i64(ctx, (i + 1) as i64);
        }
    }

    // Integrand times P_n(t), then the t-antiderivative.
    let mut integrand = vec![zero.clone(); m + n + 1];
    for (i, ki) in kernel.iter().enumerate() {
        for (l, c) in pn.coeffs().iter().enumerate() {
            integrand[i + l] = integrand[i + l].add(&ki.scale(c));
        }
    }
    let anti: Vec<MonomialPoly<F>> = integrand
        .iter()
        .enumerate()
        .map(|(i, p)| p.scale(&(F::one_in(ctx) / F::from_i64(ctx, i as i64 + 1))))
        .collect();

    // Evaluate at t = x + a and subtract t = -a; the antiderivative has
    // powers t^{i+1}.
    let upper_t = MonomialPoly::new(vec![a.clone(), F::one_in(ctx)], ctx);
    let lower_t = -a.clone();
    let mut up_pow = upper_t.clone();
    let mut low_pow = lower_t.clone();
    let mut total = zero;
    for p in &anti {
        total = total.add(&p.mul(&up_pow)).sub(&p.scale(&low_pow));
        up_pow = up_pow.mul(&upper_t);
        low_pow *= &lower_t;
    }
    total.recenter(&(a.clone() + &a))
}

/// Coefficients `c_j` with `poly = Σ c_j P_j(x + shift)`.
pub fn project_to_family<F: Field>(poly: &MonomialPoly<F>, spec: &FamilySpec, shift: &F) -> Result<SeriesCoeffs<F>> {
    let ctx = shift.context();
    let mut rest = if poly.shift() == shift {
        poly.clone()
    } else {
        poly.recenter(shift)
    };
    let Some(deg) = rest.degree() else {
        return SeriesCoeffs::new(spec.clone(), vec![F::zero_in(&ctx)]);
    };
    // Basis polynomials in the variable y = x + shift.
    let basis: Vec<MonomialPoly<F>> = basis_polys::<F>(spec, deg, &ctx)
        .into_iter()
        .map(|p| MonomialPoly::with_shift(p.coeffs().to_vec(), shift.clone()))
        .collect();
    let mut out = vec![F::zero_in(&ctx); deg + 1];
    while let Some(d) = rest.degree() {
        let lead = basis[d]
            .leading()
            .ok_or_else(|| Error::InvalidParameter(format!("{spec} has a vanishing degree-{d} member")))?;
        let c = rest.leading().cloned().unwrap_or_else(|| F::zero_in(&ctx)) / lead;
        let cut = rest.sub(&basis[d].scale(&c));
        // Drop the top coefficient explicitly; exact arithmetic already zeroes
        // it, rounding in the float backend may not.
        let mut coeffs = cut.coeffs().to_vec();
        coeffs.truncate(d);
        rest = MonomialPoly::with_shift(coeffs, shift.clone());
        out[d] = c;
    }
    SeriesCoeffs::new(spec.clone(), out)
}

/// `ρ_{j,n}^m` for `j = 0..=m+n+1` from exact integration and projection.
pub fn oracle_rho<F: Field>(spec: &FamilySpec, m: usize, n: usize, ctx: &F::Ctx) -> Result<SeriesCoeffs<F>> {
    let poly = convolve_exact::<F>(spec, m, n, ctx);
    let shift = F::from_rational(ctx, spec.offset());
    let mut series = project_to_family(&poly, spec, &shift)?;
    series.resize(m + n + 2);
    Ok(series)
}
