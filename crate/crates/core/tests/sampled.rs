use std::sync::Arc;

use qflag_core::braiding::{dual_braidings_checked, solve_braiding};
use qflag_core::hkcalc::{tbraid, verify_idt1, verify_idt2, Calculus};
use qflag_core::kahlercert::{build_phi_complex, compute_i1};
use qflag_core::rootdata::{RootSystem, Series};
use qflag_core::scalars::{rat, Radical, Sample};
use qflag_core::uqrep::{build_irrep, specialize_surd};

#[test]
fn b2_node1_sampled() {
    let rs = RootSystem::new(Series::B, 2).unwrap();
    let sym = build_irrep(&rs, 1).unwrap();
    for q in [rat(1, 3), rat(1, 2), rat(2, 3)] {
        let ext = Arc::new(Radical::for_sample(&Sample::new(q, sym.m as u32).unwrap()));
        let v = specialize_surd(&sym, &ext).unwrap();
        let vv = solve_braiding(&rs, &v, &v).unwrap();
        let fam = dual_braidings_checked(&rs, &v, &v.dual(), &vv).unwrap();
        let calc = Calculus::new(&rs, &v, 1, &fam);
        assert!(verify_idt1(&calc.t).pass);
        assert!(verify_idt2(&calc.t, &v, &calc.ex).pass);
        assert!(tbraid(&v, &v.dual(), &fam, &calc.ex).pass());
        let i1 = compute_i1(&rs, &v, 1).unwrap();
        let phi = build_phi_complex(&v, &calc, &i1).unwrap();
        assert_eq!(phi.dims[..7], [1, 6, 15, 20, 15, 6, 1]);
    }
}
