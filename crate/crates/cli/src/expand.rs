//! `expand`: render named polynomials and series.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::ValueEnum;
use qdeform::algebra::render::{render_poly, render_series};
use qdeform::algebra::{LaurentPoly, SeriesCtx, SymbolTable};
use qdeform::special::{eq_deformed, named_poly, phi_series, r_poly, HyperSpec, NamedPoly};
use qdeform::{Error, Result};
use serde_json::json;

use crate::{exit_for, EXIT_USAGE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    /// R_n(x, y; u, v | q)
    Rn,
    /// Rogers-Szego h_n(x | q)
    Hn,
    /// Stieltjes-Wigert S_n(x; q)
    Sw,
    /// Cauchy P_n(x, y)
    Cauchy,
    /// Exton E_n(x, y); needs --scale 2
    Exton,
    /// e_q(z, u) truncated at --order
    #[value(name = "eq_deformed")]
    EqDeformed,
    /// rPhi_s(a_1..a_r; b_1..b_s; q, u, z) truncated at --order
    Phi,
}

impl What {
    fn keys(self) -> &'static [&'static str] {
        match self {
            What::Rn => &["n", "u", "v"],
            What::Hn | What::Sw | What::Cauchy | What::Exton => &["n"],
            What::EqDeformed => &["u"],
            What::Phi => &["r", "s", "u"],
        }
    }

    fn is_series(self) -> bool {
        matches!(self, What::EqDeformed | What::Phi)
    }
}

struct Usage(String);

fn parse_params(what: What, raw: &[String]) -> std::result::Result<BTreeMap<String, String>, Usage> {
    let mut out = BTreeMap::new();
    for p in raw {
        let (k, v) = p.split_once('=').ok_or_else(|| Usage(format!("expected key=value, got `{p}`")))?;
        if !what.keys().contains(&k) {
            return Err(Usage(format!("unknown parameter `{k}`; accepted: {}", what.keys().join(", "))));
        }
        out.insert(k.to_string(), v.to_string());
    }
    Ok(out)
}

fn nat(params: &BTreeMap<String, String>, key: &str, default: Option<u32>) -> std::result::Result<u32, Usage> {
    match params.get(key) {
        Some(v) => v.parse().map_err(|_| Usage(format!("`{key}` must be a nonnegative integer, got `{v}`"))),
        None => default.ok_or_else(|| Usage(format!("missing parameter `{key}`"))),
    }
}

/// A deformation value: a fresh symbol name, an integer, or `q^k` with `k`
/// an integer or a fraction `a/b`.
fn deformation(t: &mut SymbolTable, text: &str) -> std::result::Result<Result<LaurentPoly>, Usage> {
    if let Ok(c) = text.parse::<i64>() {
        return Ok(Ok(LaurentPoly::int(c)));
    }
    if text == "q" {
        return Ok(Ok(LaurentPoly::q_pow(t, 1)));
    }
    if let Some(e) = text.strip_prefix("q^") {
        let e = e.trim_start_matches('(').trim_end_matches(')');
        let bad = || Usage(format!("bad power of q `{text}`"));
        let (num, den) = match e.split_once('/') {
            Some((a, b)) => (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?),
            None => (e.parse().map_err(|_| bad())?, 1),
        };
        if den <= 0 {
            return Err(bad());
        }
        return Ok(LaurentPoly::q_frac(t, num, den));
    }
    if !text.is_empty() && text.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') && !text.starts_with(|c: char| c.is_ascii_digit()) {
        return Ok(t.declare(text, qdeform::algebra::SymbolKind::Parameter).map(LaurentPoly::var));
    }
    Err(Usage(format!("cannot read `{text}` as a deformation")))
}

enum Rendered {
    Poly(String),
    Series(String),
}

fn build(what: What, params: &BTreeMap<String, String>, order: u32, scale: u32) -> std::result::Result<Result<Rendered>, Usage> {
    let mut t = SymbolTable::new(scale);
    macro_rules! tri {
        ($e:expr) => {
            match $e {
                Ok(v) => v,
                Err(e) => return Ok(Err(e)),
            }
        };
    }
    if what.is_series() {
        let u_text = params.get("u").cloned().unwrap_or_else(|| "u".to_string());
        let u = tri!(deformation(&mut t, &u_text)?);
        let s = match what {
            What::EqDeformed => {
                let z = LaurentPoly::var(t.small("z"));
                let ctx = SeriesCtx::new(&t, order);
                tri!(eq_deformed(&ctx, &z, &u))
            }
            _ => {
                let r = nat(params, "r", Some(2))?;
                let s = nat(params, "s", Some(1))?;
                let upper: Vec<_> = (1..=r).map(|i| LaurentPoly::var(t.parameter(&format!("a{i}")))).collect();
                let lower: Vec<_> = (1..=s).map(|i| LaurentPoly::var(t.parameter(&format!("b{i}")))).collect();
                let z = LaurentPoly::var(t.small("z"));
                let ctx = SeriesCtx::new(&t, order);
                tri!(phi_series(&ctx, &HyperSpec::deformed(&t, upper, lower, u, z)))
            }
        };
        return Ok(Ok(Rendered::Series(render_series(&s, &t))));
    }
    let n = nat(params, "n", None)?;
    let x = LaurentPoly::var(t.small("x"));
    let p = match what {
        What::Rn => {
            let y = LaurentPoly::var(t.small("y"));
            let u = tri!(deformation(&mut t, params.get("u").map_or("u", |s| s.as_str()))?);
            let v = tri!(deformation(&mut t, params.get("v").map_or("v", |s| s.as_str()))?);
            r_poly(&t, n, &x, &y, &u, &v)
        }
        What::Hn => tri!(named_poly(&t, NamedPoly::RogersSzego, n, &x, &x)),
        What::Sw => tri!(named_poly(&t, NamedPoly::StieltjesWigert, n, &x, &x)),
        What::Cauchy | What::Exton => {
            let y = LaurentPoly::var(t.small("y"));
            let kind = if what == What::Cauchy { NamedPoly::Cauchy } else { NamedPoly::Exton };
            tri!(named_poly(&t, kind, n, &x, &y))
        }
        What::EqDeformed | What::Phi => unreachable!("series handled above"),
    };
    Ok(Ok(Rendered::Poly(render_poly(&p, &t))))
}

pub fn run(what: What, raw: &[String], order: u32, scale: u32, json: bool) -> ExitCode {
    let params = match parse_params(what, raw) {
        Ok(p) => p,
        Err(Usage(msg)) => return usage(&msg),
    };
    let rendered = match build(what, &params, order, scale) {
        Ok(Ok(r)) => r,
        Ok(Err(e)) => return library_error(&e),
        Err(Usage(msg)) => return usage(&msg),
    };
    let (kind, text) = match rendered {
        Rendered::Poly(s) => ("polynomial", s),
        Rendered::Series(s) => ("series", s),
    };
    if json {
        let name = what.to_possible_value().expect("no skipped variants").get_name().to_string();
        let mut out = json!({ "what": name, "params": params, "scale": scale, "kind": kind, "text": text });
        if kind == "series" {
            out["order"] = json!(order);
        }
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else {
        println!("{text}");
    }
    ExitCode::SUCCESS
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn library_error(e: &Error) -> ExitCode {
    match e {
        Error::ScaleUnavailable { .. } => eprintln!("error: {e}; rerun with --scale 2"),
        _ => eprintln!("error: {e}"),
    }
    exit_for(e)
}
