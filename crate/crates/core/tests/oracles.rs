//! Hand-derived values checked against the engine.

use qflag_core::braiding::{dual_braidings_checked, solve_braiding, BraidFamily, BraidTensor};
use qflag_core::hkcalc::{tbraid, Calculus};
use qflag_core::kahlercert::{build_phi_complex, compute_i1, kappa_coeffs, lefschetz_matrices, phi_kappa};
use qflag_core::rootdata::{RootSystem, Series};
use qflag_core::scalars::{Field, Laurent, Matrix, Scalar};
use qflag_core::uqrep::{build_irrep, contravariant_form, ModuleRep};

fn setup(series: Series, rank: usize) -> (RootSystem, ModuleRep<Scalar>, BraidFamily<Scalar>) {
    let rs = RootSystem::new(series, rank).unwrap();
    let v = build_irrep(&rs, 1).unwrap();
    let vv = solve_braiding(&rs, &v, &v).unwrap();
    let fam = dual_braidings_checked(&rs, &v, &v.dual(), &vv).unwrap();
    (rs, v, fam)
}

fn t(e: i64) -> Scalar {
    Scalar::t_pow(e)
}

/// `(R - a)(R - b) = 0` as matrices.
fn annihilated_by(r: &BraidTensor<Scalar>, a: Scalar, b: Scalar) -> bool {
    let m = r.to_matrix();
    let id = Matrix::identity(m.rows());
    let x = m.sub(&id.scale(&a)).unwrap();
    let y = m.sub(&id.scale(&b)).unwrap();
    x.mul(&y).unwrap().is_zero()
}

#[test]
fn hecke_relation_on_fundamental_modules() {
    // eigenvalues q^(w,w) and -q^((w,w) - (a,a)), written in t = q^(1/m)
    let (_, _, fam) = setup(Series::A, 1);
    assert!(annihilated_by(&fam.vv, t(1), t(-3).neg()));
    assert!(!annihilated_by(&fam.vv, t(1), t(-1).neg()));
    let (_, _, fam) = setup(Series::A, 2);
    assert!(annihilated_by(&fam.vv, t(2), t(-4).neg()));
}

#[test]
fn a1_braiding_components() {
    let (_, v, fam) = setup(Series::A, 1);
    let (hw, lw) = (v.hw, v.lw);
    assert_eq!(fam.vv.get(hw, hw, hw, hw), t(1));
    assert_eq!(fam.vv.get(hw, lw, lw, hw), t(-1));
    assert_eq!(fam.vv.get(lw, lw, lw, lw), t(1));
    // weight conservation
    assert!(fam.vv.get(hw, hw, lw, lw).is_zero());
}

#[test]
fn dual_braiding_is_reindexed_inverse() {
    let (rs, v, fam) = setup(Series::A, 1);
    let vd = v.dual();
    let direct = solve_braiding(&rs, &vd, &v).unwrap();
    let inv = fam.vv.inverse().unwrap();
    let n = v.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    assert_eq!(direct.get(i, j, k, l), inv.get(j, l, i, k), "{i}{j}{k}{l}");
                }
            }
        }
    }
}

#[test]
fn double_dual_rescaling() {
    let (rs, v, fam) = setup(Series::A, 1);
    let vdd = v.dual().dual();
    let direct = solve_braiding(&rs, &vdd, &v).unwrap();
    let two_rho = rs.two_rho();
    let n = v.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let e = rs.pair_t(&two_rho, &v.weights[l]) - rs.pair_t(&two_rho, &v.weights[i]);
                    assert_eq!(direct.get(i, j, k, l), fam.vv.get(i, j, k, l).mul(&t(e)));
                }
            }
        }
    }
}

#[test]
fn lowest_norm_is_one_at_q_one() {
    let (_, v, _) = setup(Series::A, 1);
    let norms = contravariant_form(&v).unwrap();
    assert!(norms[v.hw].is_one());
    let low = norms[v.lw].at_one().unwrap();
    assert!(low.is_one(), "{}", norms[v.lw]);
}

#[test]
fn t_tensor_corner_and_trace() {
    let (rs, v, fam) = setup(Series::A, 1);
    let calc = Calculus::new(&rs, &v, 1, &fam);
    let h = v.hw;
    let corner = fam.vd.get(h, h, h, h).mul(&fam.vv.get(h, h, h, h)).mul(&fam.dd_inv.get(h, h, h, h)).mul(&fam.vd_inv.get(h, h, h, h));
    assert_eq!(calc.t.get((h, h, h, h), (h, h, h, h)), corner);

    // sum_ij q^(2rho, wt_i) T^{ijji}_{abcd} at (a,b,c,d) = (hw, lw, lw, hw) is q^(2rho, w) = t^2
    let l = v.lw;
    let mut acc = Scalar::zero();
    for i in 0..2 {
        for j in 0..2 {
            acc = acc.add(&calc.t.get((h, l, l, h), (i, j, j, i)).mul(&t(calc.ex.two_rho[i])));
        }
    }
    assert_eq!(acc, t(2));
}

#[test]
fn invariant_pairing_braids_to_multiple_of_its_partner() {
    for r in [1, 2] {
        let (rs, v, fam) = setup(Series::A, r);
        let calc = Calculus::new(&rs, &v, 1, &fam);
        let rep = tbraid(&v, &v.dual(), &fam, &calc.ex);
        assert!(rep.pass(), "{rep:?}");
    }
}

#[test]
fn kahler_form_coefficients() {
    let (rs, v, _) = setup(Series::A, 1);
    let i1 = compute_i1(&rs, &v, 1).unwrap();
    let tr: Vec<i64> = v.weights.iter().map(|w| rs.pair_t(&rs.two_rho(), w)).collect();
    let c = kappa_coeffs(&i1, &tr);
    assert_eq!(c.len(), 1);
    assert_eq!(c[0].coeff, "i t^-2");

    let (rs, v, _) = setup(Series::A, 2);
    let i1 = compute_i1(&rs, &v, 1).unwrap();
    let tr: Vec<i64> = v.weights.iter().map(|w| rs.pair_t(&rs.two_rho(), w)).collect();
    let mut got: Vec<String> = kappa_coeffs(&i1, &tr).into_iter().map(|k| k.coeff).collect();
    got.sort();
    assert_eq!(got, vec!["i t^-6", "i t^0"]);
}

#[test]
fn a1_lefschetz_determinant_is_a_unit_times_q_inverse() {
    let (rs, v, fam) = setup(Series::A, 1);
    let calc = Calculus::new(&rs, &v, 1, &fam);
    let i1 = compute_i1(&rs, &v, 1).unwrap();
    let phi = build_phi_complex(&v, &calc, &i1).unwrap();
    let kappa = phi_kappa(&phi, &v, &calc.ex.two_rho).unwrap();
    let (mats, _) = lefschetz_matrices(&phi, &kappa).unwrap();
    let det = mats[0].determinant().unwrap();
    // q^-1 = t^-2; the quotient must be +-t^k
    let unit = det.mul(&t(2));
    let p: &Laurent = unit.as_laurent().unwrap();
    assert!(p.is_monomial());
    let c = p.leading();
    assert!(c.is_one() || c.neg().is_one(), "{det}");
}
