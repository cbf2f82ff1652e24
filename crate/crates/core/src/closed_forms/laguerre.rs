//! Laguerre closed form: every coefficient is a single Pochhammer ratio.

use crate::scalars::{factorial, pochhammer, Field};

/// `(z)_k / k!`.
fn binom_like<F: Field>(z: &F, k: usize) -> F {
    pochhammer(z, k) / factorial::<F>(&z.context(), k)
}

/// `ρ_{j,n}^{m;(α)}` on `[0, x]`, for any `j`.
pub fn laguerre_rho<F: Field>(m: usize, n: usize, j: usize, alpha: &F) -> F {
    let (m, n) = if m > n { (n, m) } else { (m, n) };
    let ctx = alpha.context();
    let one = F::one_in(&ctx);
    let am1 = alpha.clone() - &one;
    if j > m + n + 1 {
        return F::zero_in(&ctx);
    }
    let top = m + n + 1 - j;
    if n == m {
        return match j.cmp(&m) {
            std::cmp::Ordering::Greater => -binom_like(&am1, top),
            std::cmp::Ordering::Equal => binom_like(alpha, m + 1) + binom_like(alpha, m),
            std::cmp::Ordering::Less => binom_like(&am1, top),
        };
    }
    if j > n {
        -binom_like(&am1, top)
    } else if j == n {
        binom_like(alpha, m)
    } else if j > m {
        F::zero_in(&ctx)
    } else if j == m {
        binom_like(alpha, n + 1)
    } else {
        binom_like(&am1, top)
    }
}
