//! Statements in the form they are usually printed, kept apart from the
//! main registry because exact comparison refutes them. Each is expected to
//! report `mismatch`; the corrected statement lives in the main registry.

use super::catalog::{dq, exton_op, mehler, op, rn, rr_op};
use super::kit::*;
use super::{Built, IdentitySpec};
use crate::algebra::{LaurentPoly, SeriesCtx};
use crate::error::Result;
use crate::qkernel::{binom2, gauss_binomial};
use crate::special::{named_poly, NamedPoly};

pub fn all() -> Vec<IdentitySpec> {
    let z = &["z"];
    let xy = &["x", "y"];
    vec![
        IdentitySpec::new(
            "errata.dq_iden6_sign",
            "D^n (ax,bx;q)_inf = q^C(n,2) (ax, b q^n x;q)_inf sum_k [n k] q^(k(k-n)) a^k b^(n-k) / (ax;q)_k",
            |i| dq::iden6_with_sign(i, false),
        )
        .param("n", 0, 3)
        .small(&["x"])
        .order(6)
        .notes(&["corrected form: dq.product.iden6"]),
        IdentitySpec::new("errata.eq_phi10_sign", "e_q(z) = 1phi0(0; -; q, -z)", eq_phi10_sign)
            .small(z)
            .notes(&["corrected form: eq.classical"]),
        IdentitySpec::new(
            "errata.phi21_definition",
            "2Phi1(a,b;c;q,u,z) = sum u^C(n,2) (a,b;q)_n/((b;q)_n (q;q)_n) z^n",
            phi21_definition,
        )
        .small(z)
        .notes(&["corrected form: phi21.definition, with (c;q)_n downstairs"]),
        IdentitySpec::new("errata.rn_pochhammer_sum", "(x;q)_n = sum [n k] (-1)^n q^C(n,2) x^k", rn_pochhammer_sum)
            .param("n", 0, 6)
            .notes(&["corrected form: rn.specializations.pochhammer, with k in place of n"]),
        IdentitySpec::new(
            "errata.exton_def_exponent",
            "E_n(x,y) = sum [n k] q^(C(n,2)/2) x^(n-k) y^k",
            |i| rn::exton_def_with(i, |n, _| binom2(n)),
        )
        .param("n", 0, 6)
        .scale(2)
        .notes(&["corrected form: rn.exton_def, with exponent C(k,2)/2"]),
        IdentitySpec::new("errata.inverse_hn_normalization", "R_n(1,x;q,q) = h_n(x|q^-1)", inverse_hn_normalization)
            .param("n", 0, 6)
            .notes(&["corrected form: rn.specializations.inverse_hn, with the factor q^C(n,2)"]),
        IdentitySpec::new(
            "errata.stieltjes_wigert_phi11",
            "S_n(x;q) = 1phi1(q^-n; 0; q, -q^(n+1) x)",
            |i| rn::rep_sw_with(i, -1),
        )
        .param("n", 0, 6)
        .notes(&["corrected form: rn.hyper_rep.stieltjes_wigert"]),
        IdentitySpec::new(
            "errata.exton_phi42",
            "E_n(x,y) = x^n 4phi2(q^(-n/2), -q^(-n/2), q, 0; q^(1/2), -q^(1/2); q^(1/2), q^n y/x)",
            |i| rn::rep_exton_with(i, true),
        )
        .param("n", 0, 6)
        .scale(2)
        .notes(&["corrected form: rn.hyper_rep.exton"]),
        IdentitySpec::new(
            "errata.op_on_exp_vq",
            "T(yD_q|u){(ax;q)_inf} = (ax;q)_inf 2Phi1(0, 0; ax; q, qu, ay)",
            |i| op::on_exp_vq_with(i, 1),
        )
        .small(xy)
        .order(6)
        .notes(&["corrected form: op.on_exp.vq"]),
        IdentitySpec::new(
            "errata.saad_sukhi_phi11",
            "1phi1(b/a; ax; q, ay) = sum_k q^C(k,2) (ay)^k/((q;q)_k (bx;q)_k) 0phi1(-; bxq^k; q, q^k by)",
            |i| op::saad_sukhi_phi11_with(i, true),
        )
        .small(xy)
        .order(6)
        .notes(&["corrected form: op.saad_sukhi_phi11"]),
        IdentitySpec::new(
            "errata.mehler_srivastava_agarwal",
            "sum R_n(x,y;u) (a;q)_n t^n/(q;q)_n = (-ty;q)_inf/(tx;q)_inf sum_k (uq)^C(k,2) (-aty)^k (tx;q)_k/((-ty;q)_k (q;q)_k) e_q(-atxv^k,v)",
            |i| mehler::srivastava_agarwal(i, true),
        )
        .small(&["t"])
        .order(6)
        .notes(&["holds only at u = v = q; corrected form: mehler.srivastava_agarwal"]),
        IdentitySpec::new(
            "errata.phi12_transform_sign",
            "2phi1(x,y; 0; q, t) = (tx,ty;q)_inf/(t;q)_inf 1phi2(t; tx,ty; q, -txy)",
            |i| mehler::phi12_transform(i, -1),
        )
        .small(&["t"])
        .order(6)
        .notes(&["corrected form: mehler.phi12_transform"]),
        IdentitySpec::new(
            "errata.rogers_u_qinv",
            "sum_(n,m) R_(n+m)(x,y;q^-1) q^C(m,2) t^n s^m/((q;q)_n (q;q)_m) = (-sx;q)_inf/(tx;q)_inf sum_k q^-C(k,2) (ty)^k/((-sx;q)_k (q;q)_k) 2phi1(0,0; -sxq^k; q, q^k sy)",
            |i| mehler::cor_u_qinv(i, 1),
        )
        .small(&["t", "s"])
        .order(6)
        .notes(&["corrected form: rogers.corollaries.u_qinv"]),
        IdentitySpec::new(
            "errata.rr_phi45",
            "sum q^(n^2) R_n(x,y;1,q^-2) z^n/(q;q)_n = 1/(yz;q)_inf 4phi5(sqrt(yz), -sqrt(yz), sqrt(yzq), -sqrt(yzq); 0,0,0,0,0; q, q^2 xz)",
            |i| rr_op::phi45(i, true),
        )
        .small(z)
        .order(6)
        .notes(&["corrected form: rr_op.phi45"]),
        IdentitySpec::new(
            "errata.rr_rogers_sn",
            "sum_(n,m) S_(n+m)(x;q) t^n s^m/((q;q)_n (q;q)_m) = 1/(t,s;q)_inf sum_k q^(k^2) (s;q)_k (ty)^k/(q;q)_k R_q(q^(2k) sy)",
            |i| rr_op::rogers_sn(i, true),
        )
        .small(&["t", "s"])
        .order(6)
        .notes(&["corrected form: rr_op.rogers_sn"]),
        IdentitySpec::new(
            "errata.exton_on_exp",
            "E(yD_q){1/(ax;q)_inf} = 1/(ax;q)_inf 1phi1(0; -q^(1/2); q^(1/2), -ax)",
            |i| exton_op::on_exp(i, true),
        )
        .small(xy)
        .order(6)
        .scale(2)
        .notes(&["corrected form: exton_op.on_exp"]),
        IdentitySpec::new(
            "errata.exton_phi54",
            "sum q^(C(n,2)/2) R_n(x,y;1,q^(-1/2)) z^n/(q;q)_n = 1/(yz;q)_inf 5Phi4(0,0,0,0,0; q^(1/2),-q^(1/2),-q,yz; q, q^2, q^(1/2) x^2 z^2) + xz/((1-q)(q^(1/2) yz;q)_inf) 5Phi4(0,0,0,0,0; q^(3/2),-q^(3/2),-q,q^(1/2) yz; q, q^2, q^(3/2) x^2 z^2)",
            |i| exton_op::phi54(i, true),
        )
        .small(z)
        .order(6)
        .scale(2)
        .notes(&["corrected form: exton_op.phi54"]),
        IdentitySpec::new(
            "errata.exton_phi11_base",
            "sum h_n(x|q) E_n(y,z) t^n/(q;q)_n = 1/(ty,txy;q)_inf sum_k q^(C(k,2)/2) (ty;q)_k (tzx)^k/(q;q)_k 1phi1(0; -q^(1/2); q, -tzq^(k/2))",
            |i| exton_op::mehler_hn_en(i, true),
        )
        .small(&["t"])
        .order(6)
        .scale(2)
        .notes(&["corrected form: exton_op.mehler_hn_en, with base q^(1/2)"]),
    ]
}

fn eq_phi10_sign(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let z = var(t.small("z"));
    let ctx = SeriesCtx::new(&t, i.order);
    let lhs = eq(&ctx, &z, &one())?;
    let rhs = phic(&ctx, vec![LaurentPoly::zero()], vec![], z.neg_ref())?;
    Ok(Built::new(t.clone()).series("", lhs, rhs))
}

fn phi21_definition(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let z = var(t.small("z"));
    let [a, b, c, u] = ["a", "b", "c", "u"].map(|n| var(t.parameter(n)));
    let ctx = SeriesCtx::new(&t, i.order);
    let lhs = phi(&ctx, vec![a.clone(), b.clone()], vec![c], u.clone(), z.clone())?;
    let rhs = gen_sum(&ctx, &z, |n| {
        Ok(rat(tri(&u, n as i64)? * poch(&t, &a, n) * poch(&t, &b, n)).mul_ref(&inv_fact(&t, n)).mul_ref(&poch_inv(&t, &b, n)?))
    })?;
    Ok(Built::new(t.clone()).series("", lhs, rhs))
}

fn rn_pochhammer_sum(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let x = var(t.parameter("x"));
    let n = i.nat("n") as i64;
    let parts: Vec<LaurentPoly> =
        (0..=n).map(|k| gauss_binomial(&t, n, k) * int(sign(n)) * q(&t, binom2(n)) * x.pow(k as u32)).collect();
    Ok(Built::new(t.clone()).poly("", poch(&t, &x, n as u32), LaurentPoly::sum(parts.iter())))
}

fn inverse_hn_normalization(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let x = var(t.parameter("x"));
    let n = i.nat("n");
    let lhs = named_poly(&t, NamedPoly::InverseRogersSzego, n, &x, &LaurentPoly::zero())?;
    let p = t.base();
    let h = named_poly(&t, NamedPoly::RogersSzego, n, &x, &LaurentPoly::zero())?;
    let rhs = h.substitute(&[(p, LaurentPoly::var_pow(p, -1))])?;
    Ok(Built::new(t).poly("", lhs, rhs))
}
