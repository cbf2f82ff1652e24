use std::fmt::Write as _;

use rayon::prelude::*;

use super::rho_closed_vector;
use crate::basis::FamilySpec;
use crate::error::Result;
use crate::scalars::{Field, Rational};

/// `ρ_{j,n}^m` for a fixed `m` over `0 <= j <= jmax`, `0 <= n <= nmax`.
#[derive(Clone, Debug, PartialEq)]
pub struct RhoTable<F> {
    family: FamilySpec,
    m: usize,
    jmax: usize,
    nmax: usize,
    /// Column-major: `columns[n][j]`.
    columns: Vec<Vec<F>>,
}

impl<F: Field> RhoTable<F> {
    /// Evaluates the grid, one column per task.
    pub fn build(family: &FamilySpec, m: usize, jmax: usize, nmax: usize, ctx: &F::Ctx) -> Result<Self> {
        let columns = (0..=nmax)
            .into_par_iter()
            .map(|n| {
                let mut col = rho_closed_vector::<F>(family, m, n, ctx)?;
                col.resize(jmax + 1, F::zero_in(ctx));
                Ok(col)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RhoTable {
            family: family.clone(),
            m,
            jmax,
            nmax,
            columns,
        })
    }

    pub fn family(&self) -> &FamilySpec {
        &self.family
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn jmax(&self) -> usize {
        self.jmax
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    pub fn get(&self, j: usize, n: usize) -> Option<&F> {
        self.columns.get(n).and_then(|c| c.get(j))
    }

    pub fn column(&self, n: usize) -> Option<&[F]> {
        self.columns.get(n).map(Vec::as_slice)
    }

    /// Cells that are exactly zero, as `(j, n)` pairs in CSV order.
    pub fn zeros(&self) -> Vec<(usize, usize)> {
        self.cells()
            .filter(|(_, _, v)| v.is_zero())
            .map(|(j, n, _)| (j, n))
            .collect()
    }

    /// `(j, n, value)` with `n` outer and `j` inner.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, &F)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(n, col)| col.iter().enumerate().map(move |(j, v)| (j, n, v)))
    }

    /// `j,n,value` CSV.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("j,n,value\n");
        for (j, n, v) in self.cells() {
            let _ = writeln!(out, "{j},{n},{v}");
        }
        out
    }

    /// `j,n,log10abs` CSV with exact zeros written as `-inf`.
    pub fn magnitude_csv(&self) -> String {
        let mut out = String::from("j,n,log10abs\n");
        for (j, n, v) in self.cells() {
            if v.is_zero() {
                let _ = writeln!(out, "{j},{n},-inf");
            } else {
                let _ = writeln!(out, "{j},{n},{:.6}", v.log10_abs());
            }
        }
        out
    }
}

/// A named parameter set for one of the magnitude plots.
#[derive(Clone, Debug, PartialEq)]
pub struct FigurePreset {
    pub name: &'static str,
    pub family: FamilySpec,
    pub m: usize,
    pub jmax: usize,
    pub nmax: usize,
}

pub const FIGURE_NAMES: [&str; 7] = [
    "jacobi",
    "symmetric-jacobi",
    "legendre",
    "chebyshev",
    "laguerre-0",
    "laguerre-1",
    "laguerre-2.5",
];

/// Looks up a preset by name; all use `m = 15` and `j <= 66`.
pub fn figure_preset(name: &str) -> Option<FigurePreset> {
    let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
    let (family, nmax) = match name {
        "jacobi" => (FamilySpec::jacobi(q(5, 2), q(3, 2)).ok()?, 66),
        "symmetric-jacobi" => (FamilySpec::symmetric_jacobi(q(5, 2)).ok()?, 66),
        "legendre" => (FamilySpec::legendre(), 66),
        "chebyshev" => (FamilySpec::chebyshev(), 66),
        "laguerre-0" => (FamilySpec::laguerre(q(0, 1)).ok()?, 50),
        "laguerre-1" => (FamilySpec::laguerre(q(1, 1)).ok()?, 50),
        "laguerre-2.5" => (FamilySpec::laguerre(q(5, 2)).ok()?, 50),
        _ => return None,
    };
    let name = FIGURE_NAMES.iter().find(|n| **n == name)?;
    Some(FigurePreset {
        name,
        family,
        m: 15,
        jmax: 66,
        nmax,
    })
}
