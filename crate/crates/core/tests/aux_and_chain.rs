//! Integration checks across the construction and the chain: dual assembly
//! of F's coefficients, finite-truncation linear independence, the route
//! exponent ordering, and the upper bound on a point grid.

use mahler_core::auxfn::{build_auxiliary, check_upper_bound, AuxFunction};
use mahler_core::chain::route_exponent_fit;
use mahler_core::modforms::estimate_hecke_constant;
use mahler_core::numerics::{Ball, Interval};
use mahler_core::qseries::{delta_expansion, j_expansion, IntSeries};
use mahler_core::report::Status;
use mahler_core::siegel::IntMatrix;
use rug::{Integer, Rational};

/// Oracle route: F = Delta^(2N) A(z, J(z)) assembled through full Laurent
/// products, independent of the cusp-table assembly in build_auxiliary.
fn f_by_direct_product(aux: &AuxFunction) -> IntSeries {
    let n = aux.n as i64;
    let trunc = aux.series.trunc();
    let head = trunc + n + 2;
    let j = j_expansion(head).unwrap();
    let delta = delta_expansion(head).unwrap();
    let mut a_of_zj = IntSeries::zero(head);
    for i in 0..aux.n {
        for l in 0..aux.n {
            let c = aux.poly.coeff(i, l);
            if *c == 0 {
                continue;
            }
            let term = j.pow(l as u64).shift(i as i64).scalar_mul(c);
            a_of_zj = a_of_zj.add(&term);
        }
    }
    delta.pow(2 * aux.n as u64).mul(&a_of_zj).truncate(trunc)
}

#[test]
fn dual_assembly_is_bit_exact() {
    for n in [2u32, 3, 4] {
        let aux = build_auxiliary(n, (n as i64 * n as i64) / 2 + 4 * n as i64 + 16).unwrap();
        let direct = f_by_direct_product(&aux);
        for e in aux.series.valuation()..aux.series.trunc() {
            assert_eq!(aux.series.coeff(e), direct.coeff(e), "N = {}, exponent {}", n, e);
        }
    }
}

#[test]
fn finite_truncation_linear_independence() {
    // the (2 d^2) x d^2 coefficient matrix of {z^i Delta^(2d) J^l} on
    // q^(2d) .. q^(2d + 2d^2 - 1) has full column rank: no nonzero A kills
    // all of them
    for d in [2u32, 3, 4] {
        let d2 = (d * d) as usize;
        let rows = 2 * d2;
        let lo = 2 * d as i64;
        let trunc = lo + rows as i64;
        let j = j_expansion(trunc + d as i64 + 2).unwrap();
        let delta = delta_expansion(trunc + d as i64 + 2).unwrap();
        let base = delta.pow(2 * d as u64);
        let mut mat = IntMatrix::zero(rows, d2);
        for i in 0..d {
            for l in 0..d {
                let s = base.mul(&j.pow(l as u64)).shift(i as i64);
                for (r, e) in (lo..trunc).enumerate() {
                    mat.set(r, (i * d + l) as usize, s.coeff(e));
                }
            }
        }
        let kernel = mat.kernel_basis();
        assert!(kernel.is_empty(), "d = {}: kernel dimension {}", d, kernel.len());
    }
}

#[test]
fn route_exponents_are_ordered() {
    let grid: Vec<u32> = vec![16, 32, 64, 128, 256, 512];
    let (s6, sj, sa) = route_exponent_fit(0.5, 1, 1.2551, &grid);
    // section-6 ~ 1/2, Jensen ~ 1, algebraic ~ 1
    assert!(s6 < sj - 0.2, "s6 = {}, sj = {}", s6, sj);
    assert!(s6 < sa - 0.2, "s6 = {}, sa = {}", s6, sa);
    assert!(s6 > 0.3 && s6 < 0.8, "s6 = {}", s6);
    assert!((sa - 1.0).abs() < 0.1, "sa = {}", sa);
}

#[test]
fn upper_bound_on_a_disk_grid() {
    // pre-simplified bound at certified sample points in the disk of
    // radius 3/4 minus margin 0.05
    let c1 = estimate_hecke_constant(3, 96).unwrap().c1;
    let aux = build_auxiliary(3, 224).unwrap();
    let prec = 192;
    let mut checked = 0;
    for ri in 1..=5 {
        let r = Rational::from((ri as i64 * 14, 100)); // up to 0.70
        for ti in 0..4 {
            let theta = Interval::pi(prec)
                .mul(&Interval::from_i64(ti as i64, prec))
                .div(&Interval::from_i64(2, prec))
                .unwrap();
            let rr = Interval::from_rational(&r, prec);
            let z = Ball::new(rr.mul(&theta.cos()), rr.mul(&theta.sin()));
            let rep = check_upper_bound(&aux, &z, &c1, prec).unwrap();
            assert_eq!(
                rep.presimplified.status,
                Status::Holds,
                "r = {}, theta index {}",
                r,
                ti
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 20);
    let _ = Integer::from(0);
}
