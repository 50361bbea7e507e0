use std::sync::Arc;

use proptest::prelude::*;
use qflag_core::braiding::{solve_braiding, yang_baxter};
use qflag_core::quantalg::CoordAlgebra;
use qflag_core::rootdata::{RootSystem, Series};
use qflag_core::scalars::{rat, Field, GaussRational, Laurent, Matrix, Radical, Sample, Scalar, Surd};
use qflag_core::uqrep::{build_irrep, specialize_surd};

fn laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-3i64..=3, -4i64..=4, -2i64..=2), 0..4).prop_map(|terms| {
        Laurent::from_terms(terms.into_iter().map(|(e, re, im)| (e, GaussRational::from_ints(re, im))))
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (laurent(), laurent()).prop_map(|(n, d)| {
        let d = if d.is_zero() { Laurent::one() } else { d };
        Scalar::new(n, d).unwrap()
    })
}

fn surd() -> impl Strategy<Value = Surd> {
    let ext = Arc::new(Radical::for_sample(&Sample::new(rat(2, 3), 3).unwrap()));
    prop::collection::vec((-5i64..=5, -3i64..=3), 0..4).prop_map(move |cs| {
        cs.iter().enumerate().fold(Surd::zero(), |acc, (k, &(re, im))| {
            let c = Surd::constant(GaussRational::from_ints(re, im));
            acc.add(&c.mul(&Surd::root_pow(&ext, k as i64)))
        })
    })
}

fn small_matrix() -> impl Strategy<Value = Matrix<GaussRational>> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec((-2i64..=2, -1i64..=1), n * n).prop_map(move |xs| {
            Matrix::from_fn(n, n, |i, j| {
                let (re, im) = xs[i * n + j];
                GaussRational::from_ints(re, im)
            })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn scalar_inverse(a in scalar()) {
        prop_assume!(!a.is_zero());
        prop_assert!(a.mul(&a.inv().unwrap()).is_one());
    }

    #[test]
    fn scalar_conjugation(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
        prop_assert_eq!(Scalar::t_pow(3).conj(), Scalar::t_pow(3));
    }

    #[test]
    fn scalar_display_round_trips(a in scalar()) {
        let back: Scalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn surd_field_axioms(a in surd(), b in surd()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
        let z = a.mul(&b).to_complex64() - a.to_complex64() * b.to_complex64();
        prop_assert!(z.norm() < 1e-9 * (1.0 + a.to_complex64().norm() * b.to_complex64().norm()));
    }

    #[test]
    fn determinant_detects_kernel(m in small_matrix()) {
        let det = m.determinant().unwrap();
        let kernel = m.nullspace().unwrap();
        prop_assert_eq!(det.is_zero(), !kernel.is_empty());
        for v in kernel {
            prop_assert!(m.apply(&v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn normal_form_is_idempotent(word in prop::collection::vec(0u16..4, 0..=3)) {
        let rs = RootSystem::new(Series::A, 1).unwrap();
        let v = build_irrep(&rs, 1).unwrap();
        let vv = solve_braiding(&rs, &v, &v).unwrap();
        let fam = qflag_core::braiding::dual_braidings_checked(&rs, &v, &v.dual(), &vv).unwrap();
        let alg = CoordAlgebra::new(&rs, &v, &fam, 3).unwrap();
        let x: qflag_core::quantalg::Element<Scalar> = [(word, Scalar::one())].into_iter().collect();
        let once = alg.normal_form(&x).unwrap();
        prop_assert_eq!(alg.normal_form(&once).unwrap(), once);
    }

    #[test]
    fn specializing_commutes_with_solving(p in 1i64..=9, r in 1i64..=9) {
        prop_assume!(p <= r);
        let rs = RootSystem::new(Series::A, 2).unwrap();
        let sym = build_irrep(&rs, 1).unwrap();
        let q = rat(p, r);
        let ext = Arc::new(Radical::for_sample(&Sample::new(q, rs.m as u32).unwrap()));
        let v = specialize_surd(&sym, &ext).unwrap();
        let direct = solve_braiding(&rs, &v, &v).unwrap();
        let mapped = solve_braiding(&rs, &sym, &sym).unwrap().map(|x| Surd::from_scalar(x, &ext)).unwrap();
        prop_assert_eq!(&direct, &mapped);
        prop_assert!(yang_baxter(&direct));
    }
}
