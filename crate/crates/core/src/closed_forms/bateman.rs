//! Separation of the difference kernel `P_m(x - t)` into products
//! `P_j(x+1) P_k(t)` of Jacobi polynomials.

use crate::basis::{eval_poly, FamilySpec};
use crate::error::{Error, Result};
use crate::scalars::{factorial, hyp_pfq_terminating, int, pochhammer, sign, Field, PfqSpec};

/// Coefficients `c_{m-k,j}`, stored as `coeffs[k][j]` for `j <= m-k`.
#[derive(Clone, Debug, PartialEq)]
pub struct BatemanTensor<F> {
    m: usize,
    coeffs: Vec<Vec<F>>,
}

impl<F: Field> BatemanTensor<F> {
    pub fn m(&self) -> usize {
        self.m
    }

    /// Coefficient of `P_j(x+1) P_k(t)`; `None` outside the triangle.
    pub fn get(&self, k: usize, j: usize) -> Option<&F> {
        self.coeffs.get(k).and_then(|row| row.get(j))
    }

    /// Rows `k = 0..=m`, row `k` holding `j = 0..=m-k`.
    pub fn rows(&self) -> &[Vec<F>] {
        &self.coeffs
    }

    /// The kernel rebuilt from the tensor at `(x, t)`. `spec` must be the
    /// Jacobi family the tensor was built for.
    pub fn reconstruct(&self, spec: &FamilySpec, x: &F, t: &F) -> F {
        let ctx = x.context();
        let xs = x.clone() + F::one_in(&ctx);
        let px: Vec<F> = (0..=self.m).map(|j| eval_poly(spec, j, &xs)).collect();
        let mut acc = F::zero_in(&ctx);
        for (k, row) in self.coeffs.iter().enumerate() {
            let pk = eval_poly(spec, k, t);
            for (j, c) in row.iter().enumerate() {
                acc += c.clone() * &px[j] * &pk;
            }
        }
        acc
    }
}

pub fn bateman_tensor<F: Field>(m: usize, a: &F, b: &F) -> Result<BatemanTensor<F>> {
    let ctx = a.context();
    let c = |v: i64| int::<F>(&ctx, v);
    let ab = a.clone() + b;
    let mut coeffs = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let mut row = Vec::with_capacity(m - k + 1);
        for j in 0..=m - k {
            let (ki, ji, mi) = (k as i64, j as i64, m as i64);
            let mut s = F::zero_in(&ctx);
            for nu in k..=m - j {
                let vi = nu as i64;
                let r = if k == 0 {
                    F::one_in(&ctx) / pochhammer(&(ab.clone() + c(2)), nu)
                } else {
                    (ab.clone() + c(2 * ki + 1)) / pochhammer(&(ab.clone() + c(ki + 1)), nu + 1)
                };
                // 1/(β+ν+1)_{k-ν} = (β+k+1)_{ν-k}, as k <= ν here.
                let inv = pochhammer(&(b.clone() + c(ki + 1)), nu - k);
                let num = sign::<F>(&ctx, vi)
                    * r
                    * inv
                    * pochhammer(&(a.clone() + c(ji + vi + 1)), m - nu - j)
                    * pochhammer(&(ab.clone() + c(mi + 1)), nu)
                    * pochhammer(&(ab.clone() + c(mi + vi + 1)), j);
                let den = factorial::<F>(&ctx, nu - k)
                    * factorial::<F>(&ctx, m - nu - j)
                    * pochhammer(&(ab.clone() + c(ji + 1)), j);
                if den.is_zero() {
                    return Err(Error::DenominatorPole { index: 0 });
                }
                let series = PfqSpec::unit(
                    vec![c(ji - mi + vi), a.clone() + c(ji + 1), ab.clone() + c(ji + mi + vi + 1)],
                    vec![a.clone() + c(ji + vi + 1), ab.clone() + c(2 * ji + 2)],
                );
                s += num / den * hyp_pfq_terminating(&series)?;
            }
            row.push(s);
        }
        coeffs.push(row);
    }
    Ok(BatemanTensor { m, coeffs })
}
