use qdeform::identities::{
    errata_registry, filter_registry, registry, summarize, verify, verify_all, verify_many, Status, VerificationConfig,
};

#[test]
fn every_entry_verifies_at_default_order() {
    let reports = verify_all(&VerificationConfig::new(), None, 0);
    let bad: Vec<_> = reports.iter().filter(|r| r.status != Status::Verified).map(|r| r.summary_line()).collect();
    assert!(bad.is_empty(), "failing entries:\n{}", bad.join("\n"));
}

#[test]
fn errata_entries_all_mismatch() {
    let specs: Vec<_> = errata_registry().iter().collect();
    let reports = verify_many(&specs, &VerificationConfig::new(), 0);
    for r in &reports {
        assert_eq!(r.status, Status::Mismatch, "{}", r.summary_line());
        assert!(r.first_mismatch.is_some(), "{}", r.id);
    }
}

#[test]
fn registry_shape() {
    let reg = registry();
    assert!(reg.len() >= 45, "only {} entries", reg.len());
    for s in reg {
        assert!(!s.anchor.trim().is_empty(), "{} has no anchor", s.id);
    }
    let mut ids: Vec<_> = reg.iter().chain(errata_registry()).map(|s| s.id).collect();
    let n = ids.len();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), n, "duplicate ids");
}

#[test]
fn prefix_filters() {
    let reg = registry();
    assert_eq!(filter_registry(reg, Some("mehler.")).len(), 4);
    let rn = filter_registry(reg, Some("rn."));
    assert!(rn.len() >= 10);
    assert!(rn.iter().all(|s| s.id.starts_with("rn.")));
    assert!(filter_registry(reg, Some("no.such.")).is_empty());
    assert_eq!(filter_registry(reg, None).len(), reg.len());
    assert_eq!(summarize(&[]).verified, 0);
}

#[test]
fn scale_two_entries_are_the_exton_family() {
    let mut got: Vec<_> = registry().iter().filter(|s| s.required_scale == 2).map(|s| s.id).collect();
    got.sort();
    let mut want = vec!["eq.exton_phi11", "rn.exton_def", "rn.hyper_rep.exton", "genfunc.specials.exton"];
    want.extend(filter_registry(registry(), Some("exton_op.")).iter().map(|s| s.id));
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn scale_one_skips_exton_entries_with_reason() {
    let cfg = VerificationConfig::new().with_scale(1);
    let specs = filter_registry(registry(), Some("exton_op."));
    for r in verify_many(&specs, &cfg, 0) {
        assert_eq!(r.status, Status::Skipped);
        assert!(r.reason.as_deref().is_some_and(|s| !s.is_empty()));
    }
    assert_eq!(verify("rn.exton_def", &cfg).unwrap().status, Status::Skipped);
    assert_eq!(verify("genfunc.qbinomial", &cfg).unwrap().status, Status::Verified);
}

#[test]
fn unknown_id_is_an_error() {
    assert!(verify("no.such.id", &VerificationConfig::new()).is_err());
}

#[test]
fn lower_order_still_verifies() {
    let cfg = VerificationConfig::new().with_order(3);
    for id in ["genfunc.qbinomial", "mehler.generalized", "heine.generalized"] {
        let r = verify(id, &cfg).unwrap();
        assert_eq!(r.status, Status::Verified, "{}", r.summary_line());
        assert_eq!(r.order, 3);
    }
}

#[test]
fn reports_are_in_registry_order() {
    let reports = verify_all(&VerificationConfig::new().with_order(2), Some("op."), 0);
    let ids: Vec<_> = reports.iter().map(|r| r.id.as_str()).collect();
    let want: Vec<_> = filter_registry(registry(), Some("op.")).iter().map(|s| s.id).collect();
    assert_eq!(ids, want);
}

#[test]
fn verification_is_monotone_in_order() {
    for id in ["qbinomial.theorem", "sokal.functional_eq", "op.on_exp", "heine.generalized", "rogers.generalized"] {
        let top = qdeform::identities::lookup(id).unwrap().default_order;
        for n in 1..=top {
            let r = verify(id, &VerificationConfig::new().with_order(n)).unwrap();
            assert_eq!(r.status, Status::Verified, "{id} at order {n}: {}", r.summary_line());
        }
    }
}

#[test]
fn printed_variants_fail_at_every_order_that_sees_them() {
    // a mismatch found at order N stays a mismatch at any higher order
    let cfg = VerificationConfig::new();
    for spec in errata_registry() {
        let base = verify(spec.id, &cfg).unwrap();
        let r = verify(spec.id, &cfg.clone().with_order(base.order + 1)).unwrap();
        assert_eq!(r.status, Status::Mismatch, "{}", r.summary_line());
    }
}

#[test]
fn reports_are_deterministic() {
    let cfg = VerificationConfig::new().with_order(4);
    let strip = |v: Vec<qdeform::identities::VerificationReport>| {
        v.into_iter()
            .map(|mut r| {
                r.elapsed_ms = 0;
                format!("{r:?}")
            })
            .collect::<Vec<_>>()
    };
    let a = strip(verify_all(&cfg, Some("mehler."), 0));
    let b = strip(verify_all(&cfg, Some("mehler."), 1));
    assert_eq!(a, b);
    let specs: Vec<_> = errata_registry().iter().collect();
    assert_eq!(strip(verify_many(&specs, &cfg, 0)), strip(verify_many(&specs, &cfg, 2)));
}
