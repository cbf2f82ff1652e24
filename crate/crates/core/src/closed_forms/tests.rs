use super::*;
use crate::basis::GenericBasisData;
use crate::generic_conv::rho_vector;
use crate::scalars::{parse_rational, Float, Rational};
use proptest::prelude::*;

fn r(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn families() -> Vec<FamilySpec> {
    vec![
        FamilySpec::jacobi(r("5/2"), r("3/2")).unwrap(),
        FamilySpec::jacobi(r("0"), r("0")).unwrap(),
        FamilySpec::jacobi(r("-1/2"), r("1/2")).unwrap(),
        FamilySpec::jacobi(r("-1/3"), r("-2/3")).unwrap(),
        FamilySpec::symmetric_jacobi(r("5/2")).unwrap(),
        FamilySpec::symmetric_jacobi(r("-1/2")).unwrap(),
        FamilySpec::gegenbauer(r("3/2")).unwrap(),
        FamilySpec::legendre(),
        FamilySpec::chebyshev(),
        FamilySpec::laguerre(r("0")).unwrap(),
        FamilySpec::laguerre(r("5/2")).unwrap(),
        FamilySpec::generic_monic(r("1/3")),
    ]
}

#[test]
fn agrees_with_generic_framework() {
    for spec in families() {
        let data = GenericBasisData::<Rational>::from_family(&spec, 17, &()).unwrap();
        for m in 0..=8 {
            for n in 0..=8 {
                let closed = rho_closed_vector::<Rational>(&spec, m, n, &()).unwrap();
                assert_eq!(closed, rho_vector(&data, m, n).unwrap(), "{spec} m={m} n={n}");
            }
        }
    }
}

#[test]
fn single_term_examples() {
    let jac = FamilySpec::jacobi(r("5/2"), r("3/2")).unwrap();
    let a = r("5/2");
    let b = r("3/2");
    let sum: Rational = (2..=2).map(|nu| jacobi_varpi(1, 5, 7, nu, &a, &b).unwrap()).sum();
    assert_eq!(sum, rho_closed::<Rational>(&jac, 1, 5, 7, &()).unwrap());
    // m = 0 leaves the 4F3 at 1, so d reduces to its prefactor.
    assert!(jacobi_d(1, 0, 3, 0, &a, &b).is_ok());
    assert!(matches!(jacobi_varpi(1, 5, 7, 0, &a, &b), Err(Error::IndexContract(_))));
    assert!(matches!(jacobi_d(0, 0, 3, 1, &a, &b), Err(Error::IndexContract(_))));
    for nu in 1..=3 {
        for (n, j) in [(4, 4), (5, 3), (6, 5)] {
            let v = symmetric_varpi(2, n, j, nu, &a);
            if (n + nu - j) % 2 == 1 {
                assert_eq!(v.unwrap(), r("0"));
            }
        }
    }
    assert_eq!(
        rho_closed::<Rational>(&FamilySpec::generic_monic(r("0")), 1, 1, 1, &()),
        Err(Error::NoClosedForm("generic_monic(offset=0)".into()))
    );
}

#[test]
fn laguerre_examples() {
    let poch_over_fact = |a: &Rational, k: usize| {
        (0..k).fold(r("1"), |acc, i| {
            acc * (a + Rational::from_integer(i.into())) / Rational::from_integer((i + 1).into())
        })
    };
    for alpha in ["0", "1", "5/2", "-1/2"] {
        let a = r(alpha);
        let spec = FamilySpec::laguerre(a.clone()).unwrap();
        let rho = |m, n, j| rho_closed::<Rational>(&spec, m, n, j, &()).unwrap();
        assert_eq!(rho(2, 5, 5), poch_over_fact(&a, 2));
        assert_eq!(rho(2, 6, 4), r("0"));
        assert_eq!(rho(3, 3, 3), poch_over_fact(&a, 4) + poch_over_fact(&a, 3));
    }
    let zero = FamilySpec::laguerre(r("0")).unwrap();
    for m in 0..=5 {
        for n in 0..=5 {
            let v = rho_closed_vector::<Rational>(&zero, m, n, &()).unwrap();
            let mut expect = vec![r("0"); m + n + 2];
            expect[m + n] = r("1");
            expect[m + n + 1] = r("-1");
            assert_eq!(v, expect, "m={m} n={n}");
        }
    }
}

#[test]
fn chebyshev_j0_uses_limit_factor() {
    let spec = FamilySpec::chebyshev();
    // ρ̃_{0,n}^m against the rescaled Jacobi(-1/2,-1/2) value.
    let h = r("-1/2");
    for m in 0..=4 {
        for n in 0..=4 {
            let base = jacobi_rho(m, n, 0, &h, &h).unwrap();
            let scaled = base * normalization::<Rational>(&spec, m, &()) * normalization::<Rational>(&spec, n, &());
            assert_eq!(rho_closed::<Rational>(&spec, m, n, 0, &()).unwrap(), scaled);
        }
    }
}

#[test]
fn normalization_scalings() {
    let cheb = FamilySpec::chebyshev();
    let geg = FamilySpec::gegenbauer(r("3/2")).unwrap();
    let sym = r("1");
    let h = r("-1/2");
    for m in 0..=5 {
        for n in 0..=5 {
            for j in 0..=m + n + 1 {
                let cm = |s: &FamilySpec, k| normalization::<Rational>(s, k, &());
                let c = rho_closed::<Rational>(&cheb, m, n, j, &()).unwrap();
                assert_eq!(
                    c,
                    jacobi_rho(m, n, j, &h, &h).unwrap() * cm(&cheb, m) * cm(&cheb, n) / cm(&cheb, j)
                );
                let g = rho_closed::<Rational>(&geg, m, n, j, &()).unwrap();
                assert_eq!(
                    g,
                    symmetric_rho(m, n, j, &sym).unwrap() * cm(&geg, m) * cm(&geg, n) / cm(&geg, j)
                );
            }
        }
    }
}

#[test]
fn zero_region_examples() {
    let jac = FamilySpec::jacobi(r("5/2"), r("3/2")).unwrap();
    let lag = FamilySpec::laguerre(r("1")).unwrap();
    assert_eq!(zero_region(&jac, 2, 9), Some(3..=5));
    assert_eq!(zero_region(&jac, 9, 2), Some(3..=5));
    assert_eq!(zero_region(&jac, 2, 6), None);
    assert_eq!(zero_region(&jac, 2, 7), Some(3..=3));
    assert_eq!(zero_region(&lag, 2, 6), Some(3..=5));
    assert_eq!(zero_region(&lag, 2, 3), None);
    assert_eq!(zero_region(&FamilySpec::generic_monic(r("1")), 0, 9), None);
    for spec in families() {
        for m in 0..=4 {
            for n in 0..=20 {
                let Some(band) = zero_region(&spec, m, n) else { continue };
                for j in band {
                    assert_eq!(
                        rho_closed::<Rational>(&spec, m, n, j, &()).unwrap(),
                        r("0"),
                        "{spec} {m} {n} {j}"
                    );
                }
            }
        }
    }
}

#[test]
fn symmetry_relations() {
    let leg = FamilySpec::legendre();
    assert_eq!(symmetry_factor::<Rational>(&leg, 3, 4, 4, &()).unwrap(), r("1"));
    for m in 0..=6 {
        for j in 0..=2 * m + 7 {
            for n in 0..=2 * m + 7 {
                let f = symmetry_factor::<Rational>(&leg, m, n, j, &()).unwrap();
                let fwd = rho_closed::<Rational>(&leg, m, n, j, &()).unwrap();
                let back = rho_closed::<Rational>(&leg, m, j, n, &()).unwrap();
                assert_eq!(back, f * fwd, "m={m} j={j} n={n}");
            }
        }
    }
    for spec in [
        FamilySpec::jacobi(r("5/2"), r("3/2")).unwrap(),
        FamilySpec::symmetric_jacobi(r("5/2")).unwrap(),
        FamilySpec::gegenbauer(r("3/2")).unwrap(),
        FamilySpec::chebyshev(),
    ] {
        for m in 0..=3 {
            for j in m + 1..=10 {
                for n in m + 1..=10 {
                    let f = symmetry_factor::<Rational>(&spec, m, n, j, &()).unwrap();
                    let fwd = rho_closed::<Rational>(&spec, m, n, j, &()).unwrap();
                    let back = rho_closed::<Rational>(&spec, m, j, n, &()).unwrap();
                    assert_eq!(back, f * fwd, "{spec} m={m} j={j} n={n}");
                }
            }
        }
        assert!(matches!(
            symmetry_factor::<Rational>(&spec, 2, 2, 5, &()),
            Err(Error::IndexContract(_))
        ));
    }
    let lag = FamilySpec::laguerre(r("1")).unwrap();
    assert!(symmetry_factor::<Rational>(&lag, 0, 1, 1, &()).is_err());
}

#[test]
fn bateman_reconstruction() {
    let a = r("5/2");
    let b = r("3/2");
    let spec = FamilySpec::jacobi(a.clone(), b.clone()).unwrap();
    let t0 = bateman_tensor(0, &a, &b).unwrap();
    assert_eq!(t0.rows(), &[vec![r("1")]]);
    for m in 0..=4 {
        let t = bateman_tensor(m, &a, &b).unwrap();
        assert!(t.get(0, m + 1).is_none() && t.get(m + 1, 0).is_none());
        for (x, y) in [("1/3", "-2"), ("0", "0"), ("7/5", "3/4")] {
            let (x, y) = (r(x), r(y));
            let want = crate::basis::eval_poly(&spec, m, &(x.clone() - &y));
            assert_eq!(t.reconstruct(&spec, &x, &y), want, "m={m}");
        }
    }
}

#[test]
fn float_backend_tracks_rational() {
    let spec = FamilySpec::jacobi(r("5/2"), r("3/2")).unwrap();
    for (m, n) in [(3, 7), (5, 5), (0, 8)] {
        let exact = rho_closed_vector::<Rational>(&spec, m, n, &()).unwrap();
        let approx = rho_closed_vector::<Float>(&spec, m, n, &256).unwrap();
        for (e, f) in exact.iter().zip(&approx) {
            let err = (f.to_rational() - e).abs();
            assert!(err <= e.abs() * r("1/1000000000000000000000000000000000000000000000000000000000000"));
        }
    }
}

#[test]
fn table_layout_and_csv() {
    let table = RhoTable::<Rational>::build(&FamilySpec::legendre(), 0, 3, 1, &()).unwrap();
    assert_eq!(table.get(0, 1), Some(&r("-1/3")));
    assert_eq!(table.get(3, 1), Some(&r("0")));
    let csv = table.to_csv();
    assert!(csv.starts_with("j,n,value\n0,0,1\n1,0,1\n2,0,0\n"));
    assert!(csv.contains("\n0,1,-1/3\n"));
    let mag = table.magnitude_csv();
    assert!(mag.contains("\n2,0,-inf\n"));
    assert!(mag.contains("\n0,0,0.000000\n"));
    assert!(figure_preset("jacobi").is_some() && figure_preset("hermite").is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn zero_band_holds_for_random_jacobi(an in -9i64..30, bn in -9i64..30, d in 1i64..7, m in 0usize..4, extra in 0usize..5) {
        let a = Rational::new(an.into(), (10 * d).into());
        let b = Rational::new(bn.into(), (10 * d + 1).into());
        let spec = FamilySpec::jacobi(a, b).unwrap();
        let n = 2 * m + 3 + extra;
        for j in zero_region(&spec, m, n).unwrap() {
            prop_assert_eq!(rho_closed::<Rational>(&spec, m, n, j, &()).unwrap(), r("0"));
        }
    }
}

/// Prints the exact-zero structure of each figure preset.
#[test]
#[ignore]
fn print_figure_zero_structure() {
    for name in FIGURE_NAMES {
        let p = figure_preset(name).unwrap();
        let t = std::time::Instant::now();
        let table = RhoTable::<Rational>::build(&p.family, p.m, p.jmax, p.nmax, &()).unwrap();
        println!("== {name} ({:?})", t.elapsed());
        for j in (0..=p.jmax).rev() {
            let row: String = (0..=p.nmax)
                .map(|n| if table.get(j, n).unwrap().is_zero() { '.' } else { '#' })
                .collect();
            println!("{j:2} {row}");
        }
    }
}
