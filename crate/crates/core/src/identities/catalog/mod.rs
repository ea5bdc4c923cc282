//! The registered identities, grouped by topic. Builders return both sides
//! from independent constructions; sums over an unbounded index stop once
//! every further term carries a small factor of degree above the order.

pub(super) mod dq;
pub(super) mod exton_op;
mod genfunc;
mod heine;
mod kernel;
pub(super) mod mehler;
pub(super) mod op;
mod phi;
pub(super) mod rn;
pub(super) mod rr_op;

use super::IdentitySpec;

pub fn all() -> Vec<IdentitySpec> {
    let mut v = Vec::new();
    v.extend(kernel::specs());
    v.extend(dq::specs());
    v.extend(phi::specs());
    v.extend(rn::specs());
    v.extend(op::specs());
    v.extend(genfunc::specs());
    v.extend(heine::specs());
    v.extend(mehler::specs());
    v.extend(rr_op::specs());
    v.extend(exton_op::specs());
    v
}
