use cuspidal_core::genweight::{
    build_f, build_n, build_n_via_weyl, check_cuspidal, check_relations, check_weight_spaces,
    extension_report, extract_t, hom_space, is_weight_module, iso_check, self_extension_family,
    support_connected, u0_commutes, weight_of, weights_injective, BlockSource, GenModule,
    HomSolution, ModuleDoc, Params,
};
use cuspidal_core::linalg::{Matrix, NilpotentFamily, Scalar};
use cuspidal_core::random::{random_family, random_invertible, seeded_rng};
use cuspidal_core::weyl::Label;
use cuspidal_core::Error;

fn a2() -> Params {
    Params::default_for(2).unwrap()
}

#[test]
fn params_are_validated() {
    assert!(Params::new(vec![Scalar::new(1, 2), Scalar::new(1, 3)]).is_err());
    assert!(Params::new(vec![Scalar::new(1, 3), Scalar::new(2, 3)]).is_err());
    assert!(Params::new(vec![Scalar::from_int(1), Scalar::new(1, 3)]).is_err());
    assert!(Params::new(vec![Scalar::new(1, 3)]).is_err());
    assert!(Params::default_for(3).is_ok());
}

#[test]
fn weights() {
    let p = a2();
    assert_eq!(
        weight_of(&p, &[0, 0]),
        vec![Scalar::new(5, 6), Scalar::new(-2, 15)]
    );
    assert_eq!(
        weight_of(&p, &[1, 1]),
        vec![Scalar::new(11, 6), Scalar::new(-2, 15)]
    );
    let w0 = weight_of(&p, &[0, 2]);
    let w1 = weight_of(&p, &[2, 2]);
    assert_eq!(&w1[0] - &w0[0], Scalar::from_int(2));
    let m = build_n(&p, 4).unwrap();
    assert!(weights_injective(&p, m.layout().support()));
}

#[test]
fn n_for_ranks_two_and_three() {
    for (n, radius) in [(2, 4), (3, 2)] {
        let p = Params::default_for(n).unwrap();
        let m = build_n(&p, radius).unwrap();
        assert_eq!(m, build_n_via_weyl(&p, radius).unwrap());
        assert!(check_relations(&m).passed());
        assert!(check_cuspidal(&m).passed());
        assert!(check_weight_spaces(&m).passed());
        assert!(is_weight_module(&m));
        assert!(support_connected(&m));
    }
}

#[test]
fn random_families_give_modules() {
    for seed in 0..4 {
        let p = a2();
        let fam = random_family(&mut seeded_rng(seed), 2, 3);
        let m = build_f(&fam, &p, 3).unwrap();
        let rel = check_relations(&m);
        assert!(rel.passed(), "seed {seed}: {:?}", rel.violations.first());
        assert!(check_cuspidal(&m).passed());
        assert!(check_weight_spaces(&m).passed());
        assert_eq!(extract_t(&m).unwrap(), fam);
        assert_eq!(is_weight_module(&m), fam.is_zero());
    }
}

#[test]
fn invalid_families_are_rejected() {
    let bad = NilpotentFamily::new(vec![Matrix::identity(1), Matrix::zero(1, 1)]);
    assert!(matches!(bad, Err(Error::FamilyInvariant(_))));
}

#[test]
fn functoriality() {
    let p = a2();
    let fam = NilpotentFamily::jordan_direction(2, 0);
    let fv = build_f(&fam, &p, 2).unwrap();
    let ends = fam.intertwiners(&fam).unwrap();
    let npts = fv.layout().support().len();
    for f in &ends {
        for g in &ends {
            let composed = HomSolution::diagonal(&(f * g), npts);
            let separately =
                HomSolution::diagonal(f, npts).compose(&HomSolution::diagonal(g, npts));
            assert_eq!(composed, separately);
            assert!(composed.intertwines(&fv, &fv));
        }
    }
}

#[test]
fn hom_dimensions_match_family_intertwiners() {
    let p = a2();
    let mut rng = seeded_rng(11);
    for _ in 0..4 {
        let v = random_family(&mut rng, 2, 2);
        let w = random_family(&mut rng, 2, 3);
        let fv = build_f(&v, &p, 2).unwrap();
        let fw = build_f(&w, &p, 2).unwrap();
        let homs = hom_space(&fv, &fw).unwrap();
        assert_eq!(homs.len(), v.intertwiners(&w).unwrap().len());
        assert!(homs.iter().all(|h| h.intertwines(&fv, &fw)));
    }
    let n = build_n(&p, 2).unwrap();
    assert_eq!(hom_space(&n, &n).unwrap().len(), 1);
}

#[test]
fn isomorphisms() {
    let p = a2();
    let mut rng = seeded_rng(5);
    let v = random_family(&mut rng, 2, 3);
    let g = random_invertible(&mut rng, 3);
    let w = v.conjugate(&g).unwrap();
    let fv = build_f(&v, &p, 2).unwrap();
    let fw = build_f(&w, &p, 2).unwrap();
    let iso = iso_check(&fv, &fw)
        .unwrap()
        .expect("conjugate families give isomorphic modules");
    assert!(iso.intertwines(&fv, &fw) && iso.is_invertible());
    assert!(iso_check(&fv, &fv).unwrap().is_some());
    let small = build_f(&random_family(&mut rng, 2, 2), &p, 2).unwrap();
    assert!(iso_check(&fv, &small).unwrap().is_none());
}

#[test]
fn u0_on_rank_two() {
    let p = a2();
    assert!(u0_commutes(&build_n(&p, 3).unwrap(), 3).passed());
    let fam = random_family(&mut seeded_rng(2), 2, 3);
    let m = build_f(&fam, &p, 3).unwrap();
    let r = u0_commutes(&m, 3);
    assert!(r.passed() && r.checks > 0);
}

#[test]
fn self_extensions() {
    for n in 2..=3 {
        let p = Params::default_for(n).unwrap();
        let mods = self_extension_family(&p, 2).unwrap();
        assert_eq!(mods.len(), n);
        assert!(mods.iter().all(|m| !is_weight_module(m)));
        let report = extension_report(&p, 2, &[random_family(&mut seeded_rng(1), n, 2)]).unwrap();
        assert!(report.passed(), "{report:?}");
    }
}

#[test]
fn json_round_trip() {
    let p = a2();
    let m = build_f(&NilpotentFamily::jordan_direction(2, 1), &p, 2).unwrap();
    let text = serde_json::to_string(&m.to_doc()).unwrap();
    let doc: ModuleDoc = serde_json::from_str(&text).unwrap();
    assert_eq!(GenModule::from_doc(&doc).unwrap(), m);
    assert!(text.contains("\"R\":2"));
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["a"][0], "1/3");
    assert_eq!(value["dims"]["0,0"], 2);
}

#[test]
fn perturbed_blocks_are_reported_where_they_are() {
    let p = a2();
    let m = build_n(&p, 3).unwrap();
    let label = m.layout().basis().idx(&Label::x_sum(2, 0, 1));
    let point = m.layout().support().index_of(&[1, -1]).unwrap();
    let bad = m.perturbed(label, point).unwrap();
    let report = check_relations(&bad);
    assert!(!report.passed());
    assert!(report
        .violations
        .iter()
        .any(|v| v.b == [1, -1]
            && (v.label_u == "X[e1+e2]" || v.label_v.as_deref() == Some("X[e1+e2]"))));
    assert!(check_cuspidal(&bad).passed());
    assert_eq!(
        bad.block(label, point).unwrap().as_scalar(),
        Some(Scalar::from_int(2))
    );
}
