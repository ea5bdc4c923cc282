//! The fourteen acceptance criteria, one pass/fail line each.
//!
//! Run with `cargo test -p qdeform-cli --test acceptance -- --nocapture` to
//! see the lines.

use std::process::Command;
use std::time::{Duration, Instant};

use qdeform::algebra::{LaurentPoly, Monomial, RationalExpr, SeriesCtx, SymbolTable, TruncatedSeries};
use qdeform::identities::{lookup, verify_spec, Built, IdentitySpec, Inst, Status, VerificationConfig};
use qdeform::qkernel::{binom2, inv_qfactorial};
use serde_json::Value;

/// Minimum family coverage required of an entry: (name, lo, hi).
type Cover = &'static [(&'static str, i64, i64)];

struct Req {
    id: &'static str,
    min_order: u32,
    cover: Cover,
}

const fn req(id: &'static str, min_order: u32, cover: Cover) -> Req {
    Req { id, min_order, cover }
}

/// Verifies every entry at its default order and scale 2, then checks the
/// order and family coverage the criterion asks for.
fn verify_set(reqs: &[Req]) -> Result<String, String> {
    let cfg = VerificationConfig::new();
    for r in reqs {
        let spec = lookup(r.id).ok_or_else(|| format!("{} is not registered", r.id))?;
        let rep = verify_spec(spec, &cfg);
        if rep.status != Status::Verified {
            return Err(rep.summary_line());
        }
        if rep.order < r.min_order {
            return Err(format!("{} ran at order {} < {}", r.id, rep.order, r.min_order));
        }
        for (name, lo, hi) in r.cover {
            match rep.family_ranges.get(*name) {
                Some([a, b]) if a <= lo && b >= hi => {}
                other => return Err(format!("{}: family {name} is {other:?}, needs {lo}..{hi}", r.id)),
            }
        }
    }
    Ok(format!("{} entries verified", reqs.len()))
}

fn criterion_1() -> Result<String, String> {
    verify_set(&[
        req("pochhammer.iden1", 1, &[("n", 0, 8)]),
        req("pochhammer.iden2", 0, &[("n", 0, 8), ("k", 0, 8)]),
        req("pochhammer.iden3", 0, &[("n", 0, 8)]),
        req("pochhammer.iden4", 0, &[("n", 0, 8)]),
        req("pascal.both", 0, &[("n", 0, 8), ("k", 0, 8)]),
        req("qbinomial.neg_n_rep", 0, &[("n", 0, 8), ("k", 0, 8)]),
        req("pochhammer.inverse_base", 0, &[("n", 0, 8)]),
        req("binomial.exponent_identities", 0, &[("n", 0, 20), ("k", 0, 20)]),
    ])
}

fn criterion_2() -> Result<String, String> {
    verify_set(&[req("qbinomial.theorem", 10, &[])])
}

fn criterion_3() -> Result<String, String> {
    verify_set(&[req("sokal.functional_eq", 10, &[]), req("dq.kder_basic", 1, &[("k", 0, 4)])])
}

fn criterion_4() -> Result<String, String> {
    // 25 seeded trials of random degree <= 4 pairs, n <= 4
    verify_set(&[req("dq.leibniz", 0, &[("trial", 0, 24)])])
}

fn criterion_5() -> Result<String, String> {
    verify_set(&[req("phi21.qdiff", 10, &[]), req("gauss2F1.limit_eq", 8, &[])])
}

fn criterion_6() -> Result<String, String> {
    verify_set(&[
        req("rn.recurrences", 0, &[("n", 0, 10)]),
        req("rn.shift", 0, &[("n", 0, 10), ("m", 0, 10)]),
        req("rn.qdiff", 0, &[("n", 1, 8)]),
        req("rn.hyper_rep", 0, &[("n", 0, 6)]),
        req("rn.hyper_rep.hn", 0, &[("n", 0, 6)]),
        req("rn.hyper_rep.inverse_hn", 0, &[("n", 0, 6)]),
        req("rn.hyper_rep.rn", 0, &[("n", 0, 6)]),
        req("rn.hyper_rep.pochhammer", 0, &[("n", 0, 6)]),
        req("rn.hyper_rep.stieltjes_wigert", 0, &[("n", 0, 6)]),
        req("rn.hyper_rep.exton", 0, &[("n", 0, 6)]),
        req("rn.limit", 0, &[("n", 8, 10), ("k", 0, 4)]),
    ])
}

fn criterion_7() -> Result<String, String> {
    verify_set(&[
        req("op.translation", 0, &[("n", 0, 6)]),
        req("op.on_exp", 6, &[]),
        req("op.on_exp.v1", 6, &[]),
        req("op.on_exp.vq", 6, &[]),
        req("op.on_product", 6, &[]),
        req("op.on_product.vw1", 6, &[]),
        req("op.on_product.chen_liu", 6, &[]),
        req("op.on_product.saad_sukhi", 6, &[]),
        req("op.on_product.v1_wq", 6, &[]),
        req("op.saad_sukhi_phi11", 6, &[]),
    ])
}

fn criterion_8() -> Result<String, String> {
    verify_set(&[
        req("genfunc.qbinomial", 8, &[]),
        req("genfunc.v", 6, &[]),
        req("genfunc.v_eq_q", 6, &[]),
        req("genfunc.v_q_u_qinv", 6, &[]),
        req("genfunc.specials.hn", 6, &[]),
        req("genfunc.specials.cauchy", 6, &[]),
        req("genfunc.specials.exton", 6, &[]),
        req("genfunc.specials.stieltjes_wigert", 6, &[]),
    ])
}

fn criterion_9() -> Result<String, String> {
    verify_set(&[req("genfunc.rr_products.first", 30, &[]), req("genfunc.rr_products.second", 30, &[])])
}

fn criterion_10() -> Result<String, String> {
    verify_set(&[
        req("heine.generalized", 6, &[]),
        req("heine.phi32", 6, &[]),
        req("heine.rr", 6, &[]),
        req("heine.rn_representation", 6, &[]),
    ])
}

fn criterion_11() -> Result<String, String> {
    verify_set(&[
        req("mehler.generalized", 6, &[]),
        req("mehler.srivastava_agarwal", 6, &[]),
        req("mehler.sa_hn", 6, &[]),
        req("mehler.phi12_transform", 6, &[]),
        req("rogers.generalized", 6, &[]),
        req("rogers.saad_rn", 6, &[]),
        req("rogers.corollaries.u_q", 6, &[]),
        req("rogers.corollaries.v1_wq", 6, &[]),
        req("rogers.corollaries.u1_sneg", 6, &[]),
        req("rogers.corollaries.uq_sneg", 6, &[]),
        req("rogers.corollaries.u_qinv", 6, &[]),
    ])
}

fn criterion_12() -> Result<String, String> {
    let ids = [
        "rr_op.on_exp",
        "rr_op.on_product",
        "rr_op.phi45",
        "rr_op.mehler_hn_sn",
        "rr_op.mehler_sa_sn",
        "rr_op.mehler_sn_sn",
        "rr_op.rogers_sn",
        "exton_op.on_exp",
        "exton_op.on_product",
        "exton_op.phi54",
        "exton_op.mehler_hn_en",
        "exton_op.mehler_poch_en",
        "exton_op.mehler_en_en",
        "exton_op.rogers_en",
    ];
    let reqs: Vec<Req> = ids.iter().map(|id| req(id, 5, &[])).collect();
    for id in &ids[7..] {
        if lookup(id).map(|s| s.required_scale) != Some(2) {
            return Err(format!("{id} should require base scale 2"));
        }
    }
    verify_set(&reqs)
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qdeform")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 stdout"))
}

/// Checks one report object against the documented field set and types.
fn check_report_schema(v: &Value) -> Result<(), String> {
    let o = v.as_object().ok_or("report is not an object")?;
    let id = o.get("id").and_then(Value::as_str).ok_or("id: string expected")?;
    let status = o.get("status").and_then(Value::as_str).ok_or("status: string expected")?;
    if !["verified", "mismatch", "error", "skipped"].contains(&status) {
        return Err(format!("{id}: bad status {status}"));
    }
    o.get("order").and_then(Value::as_u64).ok_or(format!("{id}: order: integer expected"))?;
    o.get("elapsed_ms").and_then(Value::as_u64).ok_or(format!("{id}: elapsed_ms: integer expected"))?;
    let anchor = o.get("anchor").and_then(Value::as_str).ok_or(format!("{id}: anchor: string expected"))?;
    if anchor.trim().is_empty() {
        return Err(format!("{id}: empty anchor"));
    }
    let ranges = o.get("family_ranges").and_then(Value::as_object).ok_or(format!("{id}: family_ranges: object expected"))?;
    for (k, r) in ranges {
        let pair = r.as_array().filter(|a| a.len() == 2 && a.iter().all(Value::is_i64));
        pair.ok_or(format!("{id}: family_ranges.{k}: [lo, hi] expected"))?;
    }
    match o.get("first_mismatch") {
        Some(Value::Null) => {}
        Some(Value::Object(m)) => {
            for f in ["monomial", "lhs", "rhs"] {
                m.get(f).and_then(Value::as_str).ok_or(format!("{id}: first_mismatch.{f}: string expected"))?;
            }
        }
        _ => return Err(format!("{id}: first_mismatch: object or null expected")),
    }
    Ok(())
}

fn strip_elapsed(mut v: Value) -> Value {
    if let Some(a) = v.as_array_mut() {
        for r in a {
            r["elapsed_ms"] = Value::Null;
        }
    }
    v
}

fn criterion_13() -> Result<String, String> {
    let (code, text) = run_cli(&["verify", "--all", "--order", "6"]);
    if code != 0 {
        return Err(format!("text run exited {code}"));
    }
    let args = ["verify", "--all", "--order", "6", "--json"];
    let (c1, out1) = run_cli(&args);
    let (c2, out2) = run_cli(&args);
    if c1 != 0 || c2 != 0 {
        return Err(format!("json runs exited {c1}, {c2}"));
    }
    let j1: Value = serde_json::from_str(&out1).map_err(|e| format!("invalid JSON: {e}"))?;
    let j2: Value = serde_json::from_str(&out2).map_err(|e| format!("invalid JSON: {e}"))?;
    let reports = j1.as_array().ok_or("top level is not an array")?;
    if reports.len() != qdeform::identities::registry().len() {
        return Err(format!("{} reports for {} entries", reports.len(), qdeform::identities::registry().len()));
    }
    let mut skipped = 0;
    for r in reports {
        check_report_schema(r)?;
        match r["status"].as_str() {
            Some("verified") => {}
            Some("skipped") if r["reason"].as_str().is_some_and(|s| !s.is_empty()) => skipped += 1,
            _ => return Err(format!("{} is {}", r["id"], r["status"])),
        }
    }
    let count = reports.len();
    if strip_elapsed(j1) != strip_elapsed(j2) {
        return Err("two runs differ beyond elapsed_ms".into());
    }
    let sub = ["verify", "--all", "--prefix", "rn.", "--order", "6"];
    if run_cli(&sub) != run_cli(&sub) {
        return Err("text output differs between runs".into());
    }
    if !text.contains("verified to order 6") {
        return Err("text report does not state the order".into());
    }
    Ok(format!("{count} reports, {skipped} skipped, deterministic"))
}

/// `e(w) = sum weight(n) w^n/(q;q)_n`, built term by term.
fn exp_with(t: &SymbolTable, ctx: &SeriesCtx, w: &LaurentPoly, weight: &dyn Fn(i64) -> LaurentPoly) -> TruncatedSeries {
    let parts: Vec<_> = (0..=ctx.order as i64)
        .map(|n| {
            let c = RationalExpr::from_poly(weight(n) * w.pow(n as u32)).mul_ref(&inv_qfactorial(t, n as u32));
            ctx.rat(&c).expect("small argument")
        })
        .collect();
    TruncatedSeries::sum(ctx.small, ctx.order, parts.iter())
}

/// Both sides of `e(z) - e(qz) = z e(uz)`.
fn functional_sides(inst: &Inst, perturbed: bool) -> qdeform::Result<Built> {
    let mut t = inst.table();
    let u = LaurentPoly::var(t.parameter("u"));
    let zv = t.small("z");
    let z = LaurentPoly::var(zv);
    let (lhs, rhs) = {
        let ctx = SeriesCtx::new(&t, inst.order);
        let weight = |n: i64| if perturbed { u.pow(n as u32) } else { u.pow_i(binom2(n)).expect("nonnegative") };
        let e = |w: &LaurentPoly| exp_with(&t, &ctx, w, &weight);
        let q = LaurentPoly::q_pow(&t, 1);
        let lhs = &e(&z) - &e(&(&q * &z));
        let rhs = e(&(&u * &z)).mul_poly(&z)?.truncate(inst.order);
        (lhs, rhs)
    };
    Ok(Built::new(t).series("functional equation", lhs, rhs))
}

fn perturbed(inst: &Inst) -> qdeform::Result<Built> {
    functional_sides(inst, true)
}

fn unperturbed(inst: &Inst) -> qdeform::Result<Built> {
    functional_sides(inst, false)
}

/// Brute force: coefficients of z^n on both sides of the perturbed
/// equation, `u^n (1-q^n)/(q;q)_n` and `u^(2n-2)/(q;q)_(n-1)`; returns the
/// first `n` where they differ.
fn first_difference_by_hand(order: u32) -> Option<(u32, RationalExpr, RationalExpr)> {
    let mut t = SymbolTable::new(1);
    let u = LaurentPoly::var(t.parameter("u"));
    for n in 0..=order {
        let lhs = RationalExpr::from_poly(u.pow(n) * (LaurentPoly::one() - LaurentPoly::q_pow(&t, n as i64)))
            .mul_ref(&inv_qfactorial(&t, n));
        let rhs = if n == 0 {
            RationalExpr::zero()
        } else {
            RationalExpr::from_poly(u.pow(2 * n - 2)).mul_ref(&inv_qfactorial(&t, n - 1))
        };
        if !lhs.equals(&rhs) {
            return Some((n, lhs, rhs));
        }
    }
    None
}

fn criterion_14() -> Result<String, String> {
    let cfg = VerificationConfig::new().with_order(6);
    let anchor = "e(z) - e(qz) = z e(uz) with e(z) = sum u^C(n,2) z^n/(q;q)_n";
    let control = IdentitySpec::new("fixture.control", anchor, unperturbed).small(&["z"]);
    let rep = verify_spec(&control, &cfg);
    if rep.status != Status::Verified {
        return Err(format!("unperturbed control failed: {}", rep.summary_line()));
    }
    let fixture = IdentitySpec::new("fixture.perturbed", anchor, perturbed).small(&["z"]);
    let rep = verify_spec(&fixture, &cfg);
    if rep.status != Status::Mismatch {
        return Err(format!("perturbed fixture came out {:?}", rep.status));
    }
    let m = rep.first_mismatch.as_ref().ok_or("mismatch without first_mismatch")?;
    if m.monomial.is_empty() || m.lhs.is_empty() || m.rhs.is_empty() {
        return Err("first_mismatch has empty fields".into());
    }
    let (n, lhs, rhs) = first_difference_by_hand(6).ok_or("brute force finds no difference")?;
    let mut t = SymbolTable::new(1);
    t.parameter("u");
    let z = t.small("z");
    let expect_mono = qdeform::algebra::render::monomial_text(&Monomial::var_pow(z, n as i32), &t, t.small_set());
    if Some(m.monomial.clone()) != expect_mono {
        return Err(format!("first mismatch at {} but brute force says z^{n}", m.monomial));
    }
    let (l, r) = (lhs.reduce().display(&t).to_string(), rhs.reduce().display(&t).to_string());
    if m.lhs != l || m.rhs != r {
        return Err(format!("coefficients {} vs {} differ from brute force {l} vs {r}", m.lhs, m.rhs));
    }
    Ok(format!("mismatch at {}: lhs {} vs rhs {}", m.monomial, m.lhs, m.rhs))
}

#[test]
fn acceptance() {
    type Crit = fn() -> Result<String, String>;
    let table: [(u32, &str, Crit, u64); 14] = [
        (1, "kernel identities", criterion_1, 5),
        (2, "q-binomial theorem, order 10", criterion_2, 5),
        (3, "functional equation and D_q^k e_q", criterion_3, 5),
        (4, "q-Leibniz rule, 25 trials", criterion_4, 10),
        (5, "2Phi1 q-difference and limit equation", criterion_5, 30),
        (6, "R_n suite", criterion_6, 60),
        (7, "operator suite, order 6", criterion_7, 120),
        (8, "generating functions", criterion_8, 60),
        (9, "Rogers-Ramanujan products, q-order 30", criterion_9, 10),
        (10, "generalized Heine, order 6", criterion_10, 120),
        (11, "Mehler and Rogers formulas, order 6", criterion_11, 300),
        (12, "Rogers-Ramanujan and Exton operators", criterion_12, 300),
        (13, "CLI verify --all, JSON schema, determinism", criterion_13, 600),
        (14, "perturbed builder is caught", criterion_14, 60),
    ];
    let mut failed = Vec::new();
    for (n, name, f, limit) in table {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > Duration::from_secs(limit) => Err(format!("{msg}, but took {took:.1?} > {limit}s")),
            other => other,
        };
        match &outcome {
            Ok(msg) => println!("criterion {n:>2} PASS  {name}: {msg} ({took:.2?})"),
            Err(msg) => {
                println!("criterion {n:>2} FAIL  {name}: {msg} ({took:.2?})");
                failed.push(n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
