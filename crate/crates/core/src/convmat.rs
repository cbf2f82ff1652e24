//! Convolution matrices and the convolution of finite series.
//!
//! For `f = Σ_m a_m P_m` and `g = Σ_n b_n P_n`, the convolution
//! `∫_{-a}^{x+a} f(x-t) g(t) dt` is `Σ_k c_k P_k(x+a)` with `c = R b` and
//! `R_{j,n} = Σ_m a_m ρ_{j,n}^m`.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::basis::{eval_poly, FamilySpec};
use crate::closed_forms::rho_closed_vector;
use crate::error::{Error, Result};
use crate::scalars::{parse_rational, Field};

/// Coefficients of a finite series in one family.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesCoeffs<F> {
    family: FamilySpec,
    coeffs: Vec<F>,
}

impl<F: Field> SeriesCoeffs<F> {
    pub fn new(family: FamilySpec, coeffs: Vec<F>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter(
                "a series needs at least one coefficient".into(),
            ));
        }
        Ok(SeriesCoeffs { family, coeffs })
    }

    /// The single basis polynomial `P_n`.
    pub fn unit(family: FamilySpec, n: usize, ctx: &F::Ctx) -> Self {
        let mut coeffs = vec![F::zero_in(ctx); n + 1];
        coeffs[n] = F::one_in(ctx);
        SeriesCoeffs { family, coeffs }
    }

    pub fn family(&self) -> &FamilySpec {
        &self.family
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Highest stored index (trailing zeros included).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn ctx(&self) -> F::Ctx {
        self.coeffs[0].context()
    }

    /// Pads with zeros or drops trailing entries; never below length 1.
    pub fn resize(&mut self, len: usize) {
        let zero = F::zero_in(&self.ctx());
        self.coeffs.resize(len.max(1), zero);
    }

    /// `Σ_k c_k P_k(y)`.
    pub fn eval(&self, y: &F) -> F {
        let mut acc = F::zero_in(&y.context());
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += c.clone() * eval_poly(&self.family, k, y);
            }
        }
        acc
    }

    /// Series file: a `#` line with the family as JSON, an `index,value`
    /// header, then one row per coefficient.
    pub fn to_file_string(&self) -> String {
        let header = serde_json::to_string(&self.family).expect("family records serialize");
        let mut out = format!("# {header}\nindex,value\n");
        for (k, c) in self.coeffs.iter().enumerate() {
            let _ = writeln!(out, "{k},{c}");
        }
        out
    }

    /// Parses the series file format. Values may be rationals (`-3/7`) or
    /// decimals (`1.25e-3`); both are read exactly before conversion. Missing
    /// indices are zero.
    pub fn parse_file(text: &str, ctx: &F::Ctx) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let first = lines.next().ok_or_else(|| Error::Parse("empty series file".into()))?;
        let json = first
            .strip_prefix('#')
            .ok_or_else(|| Error::Parse("series file must start with a '# {family}' line".into()))?;
        let family: FamilySpec =
            serde_json::from_str(json.trim()).map_err(|e| Error::Parse(format!("family header: {e}")))?;
        let mut entries: Vec<Option<F>> = Vec::new();
        for line in lines {
            if line.starts_with('#') || line.eq_ignore_ascii_case("index,value") {
                continue;
            }
            let (idx, val) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected index,value in {line:?}")))?;
            let idx: usize = idx
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad index {idx:?}")))?;
            let val = F::from_rational(ctx, &parse_rational(val.trim())?);
            if entries.len() <= idx {
                entries.resize(idx + 1, None);
            }
            if entries[idx].replace(val).is_some() {
                return Err(Error::Parse(format!("index {idx} given twice")));
            }
        }
        let coeffs = entries
            .into_iter()
            .map(|v| v.unwrap_or_else(|| F::zero_in(ctx)))
            .collect();
        Self::new(family, coeffs)
    }
}

/// Dense `(M+N+2) x (N+1)` matrix taking `g`'s coefficients to those of
/// `f * g`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvMatrix<F> {
    f: SeriesCoeffs<F>,
    /// Column-major entries, each column of length `rows`.
    columns: Vec<Vec<F>>,
    rows: usize,
}

impl<F: Field> ConvMatrix<F> {
    pub fn family(&self) -> &FamilySpec {
        self.f.family()
    }

    pub fn f_coeffs(&self) -> &SeriesCoeffs<F> {
        &self.f
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn get(&self, j: usize, n: usize) -> Option<&F> {
        self.columns.get(n).and_then(|c| c.get(j))
    }

    /// `R b` for a coefficient vector of length at most `cols`.
    pub fn apply(&self, b: &[F]) -> Result<Vec<F>> {
        if b.len() > self.cols() {
            return Err(Error::IndexOutOfRange(format!(
                "vector of length {} against {} columns",
                b.len(),
                self.cols()
            )));
        }
        let ctx = self.f.ctx();
        let mut out = vec![F::zero_in(&ctx); self.rows];
        for (col, bn) in self.columns.iter().zip(b) {
            if bn.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(col) {
                *o += v.clone() * bn;
            }
        }
        Ok(out)
    }

    /// Row-major dense CSV; the first line holds `rows,cols`.
    pub fn to_dense_csv(&self) -> String {
        let mut out = format!("{},{}\n", self.rows, self.cols());
        for j in 0..self.rows {
            let row: Vec<String> = self.columns.iter().map(|c| c[j].to_string()).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// `j,n,value` rows for the nonzero entries only.
    pub fn to_triplet_csv(&self) -> String {
        let mut out = String::from("j,n,value\n");
        for (n, col) in self.columns.iter().enumerate() {
            for (j, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    let _ = writeln!(out, "{j},{n},{v}");
                }
            }
        }
        out
    }
}

/// Column `n` of R: `Σ_m a_m ρ_{·,n}^m`, of length `a.len() + n + 1`.
fn column<F: Field>(f: &SeriesCoeffs<F>, n: usize) -> Result<Vec<F>> {
    let ctx = f.ctx();
    let mut col = vec![F::zero_in(&ctx); f.coeffs.len() + n + 1];
    for (m, am) in f.coeffs.iter().enumerate() {
        if am.is_zero() {
            continue;
        }
        for (slot, rho) in col.iter_mut().zip(rho_closed_vector::<F>(&f.family, m, n, &ctx)?) {
            *slot += rho * am;
        }
    }
    Ok(col)
}

/// The convolution matrix of `f` with `n_cols` columns (`n_cols = N+1`).
pub fn build_matrix<F: Field>(f: &SeriesCoeffs<F>, n_cols: usize) -> Result<ConvMatrix<F>> {
    if n_cols == 0 {
        return Err(Error::InvalidParameter("matrix needs at least one column".into()));
    }
    let rows = f.coeffs.len() + n_cols;
    let columns = (0..n_cols)
        .into_par_iter()
        .map(|n| {
            let mut col = column(f, n)?;
            col.resize(rows, F::zero_in(&f.ctx()));
            Ok(col)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvMatrix {
        f: f.clone(),
        columns,
        rows,
    })
}

/// Coefficients of `f * g` in `P_k(x+a)`, length `M+N+2`.
pub fn convolve_series<F: Field>(f: &SeriesCoeffs<F>, g: &SeriesCoeffs<F>) -> Result<SeriesCoeffs<F>> {
    if f.family != g.family {
        return Err(Error::FamilyMismatch(f.family.to_string(), g.family.to_string()));
    }
    let ctx = f.ctx();
    let len = f.coeffs.len() + g.coeffs.len();
    let parts = g
        .coeffs
        .par_iter()
        .enumerate()
        .filter(|(_, bn)| !bn.is_zero())
        .map(|(n, bn)| Ok(column(f, n)?.into_iter().map(|v| v * bn).collect::<Vec<F>>()))
        .collect::<Result<Vec<_>>>()?;
    let mut out = vec![F::zero_in(&ctx); len];
    for part in parts {
        for (o, v) in out.iter_mut().zip(part) {
            *o += v;
        }
    }
    SeriesCoeffs::new(f.family.clone(), out)
}
