//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Built with `harness = false` so the lines always reach stdout.

use std::collections::{BTreeMap, HashSet};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use polyconv::basis::{eval_poly, Family, FamilySpec, GenericBasisData};
use polyconv::closed_forms::{
    bateman_tensor, figure_preset, rho_closed, rho_closed_vector, symmetry_factor, zero_region, RhoTable, FIGURE_NAMES,
};
use polyconv::convmat::{build_matrix, convolve_series, SeriesCoeffs};
use polyconv::generic_conv::{rho_highj, rho_lowj, rho_taylor, RhoRequest};
use polyconv::oracle::{oracle_rho, to_monomial};
use polyconv::verify::default_families;
use polyconv::{Field, Float, Rational};

type Outcome = std::result::Result<String, String>;

const MAX_DEGREE: usize = 8;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn zero() -> Rational {
    q(0, 1)
}

fn at(v: &[Rational], j: usize) -> Rational {
    v.get(j).cloned().unwrap_or_else(zero)
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn oracle_equivalence() -> Outcome {
    let mut checks = 0;
    for spec in default_families() {
        for m in 0..=MAX_DEGREE {
            for n in m..=MAX_DEGREE {
                let truth = ok(oracle_rho::<Rational>(&spec, m, n, &()))?;
                for j in 0..=m + n + 1 {
                    let got = ok(rho_closed::<Rational>(&spec, m, n, j, &()))?;
                    let want = at(truth.coeffs(), j);
                    ensure!(got == want, "{spec} m={m} n={n} j={j}: closed {got}, oracle {want}");
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} coefficients"))
}

fn framework_equivalence() -> Outcome {
    let mut checks = 0;
    for spec in default_families() {
        let data = ok(GenericBasisData::<Rational>::from_family(
            &spec,
            2 * MAX_DEGREE + 1,
            &(),
        ))?;
        for m in 0..=MAX_DEGREE {
            for n in m..=MAX_DEGREE {
                for j in 0..=m + n + 1 {
                    let req = RhoRequest::new(m, n, j);
                    let closed = ok(rho_closed::<Rational>(&spec, m, n, j, &()))?;
                    let taylor = ok(rho_taylor(&data, req))?;
                    let split = if j > m {
                        ok(rho_highj(&data, req))?
                    } else {
                        ok(rho_lowj(&data, req))?
                    };
                    ensure!(
                        taylor == closed && split == closed,
                        "{spec} m={m} n={n} j={j}: taylor {taylor}, piecewise {split}, closed {closed}"
                    );
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} coefficients"))
}

fn nonzeros(v: &[Rational]) -> BTreeMap<usize, Rational> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !Field::is_zero(*x))
        .map(|(j, x)| (j, x.clone()))
        .collect()
}

fn laguerre_sparsity() -> Outcome {
    let lag0 = ok(FamilySpec::laguerre(q(0, 1)))?;
    let lag1 = ok(FamilySpec::laguerre(q(1, 1)))?;
    for m in 0..=12usize {
        for n in 0..=12usize {
            let got = nonzeros(&ok(rho_closed_vector::<Rational>(&lag0, m, n, &()))?);
            let want = BTreeMap::from([(m + n, q(1, 1)), (m + n + 1, q(-1, 1))]);
            ensure!(got == want, "alpha=0 m={m} n={n}: {got:?}");

            let got = nonzeros(&ok(rho_closed_vector::<Rational>(&lag1, m, n, &()))?);
            let mut want = BTreeMap::from([(m + n + 1, q(-1, 1))]);
            *want.entry(n).or_insert_with(zero) += q(1, 1);
            *want.entry(m).or_insert_with(zero) += q(1, 1);
            ensure!(got == want, "alpha=1 m={m} n={n}: {got:?}");
        }
    }
    let diag = ok(rho_closed::<Rational>(&lag1, 5, 5, 5, &()))?;
    ensure!(diag == q(2, 1), "alpha=1 j=m=n=5 gives {diag}");
    Ok("alpha=0 and alpha=1, m,n <= 12".into())
}

fn zero_regions() -> Outcome {
    let mut checked = 0;
    for spec in default_families() {
        let mut sharp = None;
        for m in 0..=4usize {
            for n in 0..=24usize {
                let Some(band) = zero_region(&spec, m, n) else { continue };
                let values = ok(rho_closed_vector::<Rational>(&spec, m, n, &()))?;
                for j in band.clone() {
                    ensure!(Field::is_zero(&values[j]), "{spec} m={m} n={n} j={j} = {}", values[j]);
                    checked += 1;
                }
                let edge = band.end() + 1;
                if sharp.is_none() && !Field::is_zero(&at(&values, edge)) {
                    sharp = Some((m, n, edge));
                }
            }
        }
        ensure!(
            sharp.is_some(),
            "{spec}: the entry just past the band is zero for every probed (m, n)"
        );
    }
    Ok(format!("{checked} band entries, every band end sharp"))
}

fn symmetry_scalings() -> Outcome {
    let jacobi = ok(FamilySpec::jacobi(q(5, 2), q(3, 2)))?;
    let sym = ok(FamilySpec::symmetric_jacobi(q(5, 2)))?;
    let mut checks = 0;
    for (spec, mmax, legendre) in [(jacobi, 4, false), (sym, 4, false), (FamilySpec::legendre(), 6, true)] {
        for m in 0..=mmax {
            let top = if legendre { m + 12 + 1 } else { 12 };
            let cols = (0..=top)
                .map(|n| ok(rho_closed_vector::<Rational>(&spec, m, n, &())))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let lo = if legendre { 0 } else { m + 1 };
            for n in lo..=12 {
                let jmax = if legendre { m + n + 1 } else { 12 };
                for j in lo..=jmax {
                    let factor = ok(symmetry_factor::<Rational>(&spec, m, n, j, &()))?;
                    let want = factor * at(&cols[n], j);
                    let got = at(&cols[j], n);
                    ensure!(want == got, "{spec} m={m} j={j} n={n}: scaled {want}, mirrored {got}");
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} index pairs"))
}

fn zero_set(t: &RhoTable<Rational>) -> HashSet<(usize, usize)> {
    t.zeros().into_iter().collect()
}

/// The three generic zero regions of an m = 15 table: beyond the top
/// degree, the interior band, and the small-n corner.
fn generic_zero_regions(m: usize, j: usize, n: usize) -> bool {
    j > n + m + 1 || (n >= 2 * m + 3 && (m + 1..=n - m - 2).contains(&j)) || (n < j && j + n + 2 <= m)
}

fn check_figure(name: &str, t: &RhoTable<Rational>) -> std::result::Result<(), String> {
    let m = t.m();
    let zeros = zero_set(t);
    let cells = (0..=t.jmax()).flat_map(|j| (0..=t.nmax()).map(move |n| (j, n)));
    match t.family().family() {
        Family::Laguerre if t.family().alpha() == &zero() => {
            for (j, n) in cells {
                ensure!(
                    zeros.contains(&(j, n)) != (j == n + m || j == n + m + 1),
                    "{name}: j={j} n={n}"
                );
            }
        }
        Family::Laguerre if t.family().alpha() == &q(1, 1) => {
            for (j, n) in cells {
                ensure!(
                    zeros.contains(&(j, n)) != (j == m || j == n || j == n + m + 1),
                    "{name}: j={j} n={n}"
                );
            }
        }
        Family::Laguerre => {
            for (j, n) in cells {
                let want = j > n + m + 1 || (n >= m + 2 && (m + 1..n).contains(&j)) || (n + 2 <= m && n < j && j < m);
                ensure!(zeros.contains(&(j, n)) == want, "{name}: j={j} n={n}");
            }
        }
        Family::Legendre => {
            for (j, n) in cells {
                let z = zeros.contains(&(j, n));
                ensure!(!generic_zero_regions(m, j, n) || z, "{name}: j={j} n={n} should vanish");
                ensure!(
                    z || (j.abs_diff(n) <= m + 1 && j + n + 1 >= m),
                    "{name}: j={j} n={n} outside the support"
                );
                if n <= t.jmax() && j <= t.nmax() {
                    ensure!(
                        z == zeros.contains(&(n, j)),
                        "{name}: zero set not symmetric at ({j}, {n})"
                    );
                }
            }
        }
        _ => {
            // Symmetric families pick up one parity zero at (m, 0).
            let parity = t.family().family() != Family::Jacobi;
            for (j, n) in cells {
                let want = generic_zero_regions(m, j, n) || (parity && (j, n) == (m, 0));
                ensure!(zeros.contains(&(j, n)) == want, "{name}: j={j} n={n}");
            }
        }
    }
    Ok(())
}

fn figures() -> Outcome {
    let start = Instant::now();
    let mut bytes = 0;
    for name in FIGURE_NAMES {
        let preset = figure_preset(name).ok_or_else(|| format!("missing preset {name}"))?;
        let table = ok(RhoTable::<Rational>::build(
            &preset.family,
            preset.m,
            preset.jmax,
            preset.nmax,
            &(),
        ))?;
        bytes += table.magnitude_csv().len();
        check_figure(name, &table)?;
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(300), "took {elapsed:.1?}");
    Ok(format!(
        "{} tables, {bytes} bytes of CSV, {elapsed:.1?}",
        FIGURE_NAMES.len()
    ))
}

fn random_rational(rng: &mut StdRng) -> Rational {
    q(rng.gen_range(-40..=40), rng.gen_range(1..=9))
}

fn bateman_expansion() -> Outcome {
    let spec = ok(FamilySpec::jacobi(q(5, 2), q(3, 2)))?;
    let mut rng = StdRng::seed_from_u64(7);
    let points: Vec<(Rational, Rational)> = (0..25)
        .map(|_| (random_rational(&mut rng), random_rational(&mut rng)))
        .collect();
    for m in 0..=6 {
        let tensor = ok(bateman_tensor(m, &q(5, 2), &q(3, 2)))?;
        for (x, t) in &points {
            let got = tensor.reconstruct(&spec, x, t);
            let want = eval_poly(&spec, m, &(x.clone() - t));
            ensure!(got == want, "m={m} x={x} t={t}: {got} vs {want}");
        }
    }
    Ok("m <= 6 at 25 points".into())
}

/// Plain monomial coefficients of `Σ c_k P_k(x)`.
fn monomials(s: &SeriesCoeffs<Rational>) -> Vec<Rational> {
    let mut out = vec![zero(); s.coeffs().len()];
    for (k, c) in s.coeffs().iter().enumerate() {
        for (i, v) in to_monomial::<Rational>(s.family(), k, &()).coeffs().iter().enumerate() {
            out[i] += c.clone() * v;
        }
    }
    out
}

/// `∫_{-a}^{x+a} f(x-t) g(t) dt` by expanding the integrand in `t`.
fn integrate(f: &[Rational], g: &[Rational], a: &Rational, x: &Rational) -> Rational {
    // f(x - t) = Σ_k f_k (x - t)^k in powers of t.
    let mut ft = vec![zero(); f.len()];
    for (k, fk) in f.iter().enumerate() {
        let mut binom = q(1, 1);
        for (i, slot) in ft.iter_mut().enumerate().take(k + 1) {
            let mut term = fk.clone() * &binom;
            for _ in 0..k - i {
                term *= x;
            }
            if i % 2 == 1 {
                term = -term;
            }
            *slot += term;
            binom *= q((k - i) as i64, (i + 1) as i64);
        }
    }
    let mut h = vec![zero(); ft.len() + g.len()];
    for (i, u) in ft.iter().enumerate() {
        for (l, v) in g.iter().enumerate() {
            h[i + l] += u.clone() * v;
        }
    }
    let anti = |t: &Rational| {
        let mut acc = zero();
        for (i, c) in h.iter().enumerate().rev() {
            acc = (acc + c.clone() / q(i as i64 + 1, 1)) * t;
        }
        acc
    };
    anti(&(x.clone() + a)) - anti(&-a.clone())
}

fn series_engine() -> Outcome {
    let families = [
        FamilySpec::legendre(),
        ok(FamilySpec::jacobi(q(5, 2), q(3, 2)))?,
        FamilySpec::chebyshev(),
        ok(FamilySpec::laguerre(q(1, 1)))?,
    ];
    let mut rng = StdRng::seed_from_u64(11);
    for spec in families {
        let a = spec.offset().clone();
        for _ in 0..3 {
            let (deg_f, deg_g) = (rng.gen_range(0..=6usize), rng.gen_range(0..=6usize));
            let draw = |rng: &mut StdRng, d: usize| {
                SeriesCoeffs::new(spec.clone(), (0..=d).map(|_| random_rational(rng)).collect())
            };
            let f = ok(draw(&mut rng, deg_f))?;
            let g = ok(draw(&mut rng, deg_g))?;
            let h = ok(convolve_series(&f, &g))?;
            ensure!(
                h.coeffs().len() == deg_f + deg_g + 2,
                "{spec}: result length {}",
                h.coeffs().len()
            );

            let (fm, gm) = (monomials(&f), monomials(&g));
            for _ in 0..10 {
                let x = random_rational(&mut rng);
                let want = integrate(&fm, &gm, &a, &x);
                let got = h.eval(&(x.clone() + &a));
                ensure!(got == want, "{spec} x={x}: series {got}, integral {want}");
            }

            let mat = ok(build_matrix(&f, deg_g + 1))?;
            ensure!(
                (mat.rows(), mat.cols()) == (deg_f + deg_g + 2, deg_g + 1),
                "{spec}: shape {}x{} for M={deg_f} N={deg_g}",
                mat.rows(),
                mat.cols()
            );
            let applied = ok(mat.apply(g.coeffs()))?;
            ensure!(applied == h.coeffs(), "{spec}: R b differs from convolve_series");
        }
    }
    Ok("4 families, 12 random pairs".into())
}

fn backend_consistency() -> Outcome {
    const PRECISION: usize = 256;
    const TOL_LOG10: f64 = -60.0;
    let mut checks = 0;
    for spec in default_families() {
        for m in 0..=MAX_DEGREE {
            for n in m..=MAX_DEGREE {
                let exact = ok(rho_closed_vector::<Rational>(&spec, m, n, &()))?;
                let approx = ok(rho_closed_vector::<Float>(&spec, m, n, &PRECISION))?;
                let scale = exact.iter().map(Field::log10_abs).fold(f64::NEG_INFINITY, f64::max);
                for (j, (e, g)) in exact.iter().zip(&approx).enumerate() {
                    let diff = g.to_rational() - e;
                    let reference = if Field::is_zero(e) { scale } else { e.log10_abs() };
                    ensure!(
                        Field::is_zero(&diff) || diff.log10_abs() - reference <= TOL_LOG10,
                        "{spec} m={m} n={n} j={j}: exact {e}, float {g}"
                    );
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} coefficients at {PRECISION} bits"))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("oracle equivalence", oracle_equivalence),
        ("framework equivalence", framework_equivalence),
        ("laguerre sparsity", laguerre_sparsity),
        ("zero regions", zero_regions),
        ("symmetry scalings", symmetry_scalings),
        ("figures", figures),
        ("bateman expansion", bateman_expansion),
        ("series engine", series_engine),
        ("backend consistency", backend_consistency),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} ({name}): PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
