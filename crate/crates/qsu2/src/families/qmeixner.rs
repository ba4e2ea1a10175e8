//! q-Meixner functions `phi_gamma` with complex-conjugate parameter pair,
//! self-dual in `gamma <-> x`, together with their orthogonality weight and
//! normalizing constant.

use super::require;
use crate::error::{CoreError, Result};
use crate::qkernel::{qpoch, rphis, theta, PochLen, SeriesSpec, TruncationPolicy};
use crate::scalar::{QBase, Scalar};

/// `phi_gamma(x; a, b; q) = 2phi2(-1/x, -1/gamma; a, b; q, a b gamma x)`.
pub fn qmeixner(
    gamma: &Scalar,
    x: &Scalar,
    a: &Scalar,
    b: &Scalar,
    q: &QBase,
) -> Result<Scalar> {
    require(
        !x.is_zero() && !gamma.is_zero(),
        "qmeixner: x and gamma must be nonzero",
    )?;
    let pol = TruncationPolicy::for_base(q);
    let upper = vec![-&x.recip(), -&gamma.recip()];
    let lower = vec![a.clone(), b.clone()];
    let z = &(a * b) * &(gamma * x);
    rphis(&SeriesSpec::new(upper, lower, z), q, &pol)
}

/// Orthogonality weight `w(x; a, b; q) = (-qx;q)_inf / ((-ax, -bx;q)_inf)`.
pub fn qmeixner_weight(x: &Scalar, a: &Scalar, b: &Scalar, q: &QBase) -> Result<Scalar> {
    let pol = TruncationPolicy::for_base(q);
    let num = qpoch(&-&(q.scalar() * x), q, PochLen::Infinite, &pol)?;
    let d1 = qpoch(&-&(a * x), q, PochLen::Infinite, &pol)?;
    let d2 = qpoch(&-&(b * x), q, PochLen::Infinite, &pol)?;
    let den = &d1 * &d2;
    if den.is_zero() {
        return Err(CoreError::Pole {
            ctx: "qmeixner_weight: weight denominator vanishes".into(),
        });
    }
    Ok(&num / &den)
}

/// Normalizing constant `K_t(a, b; q) = (q;q)_inf theta(-t;q) / ((a, b, -at, -bt;q)_inf)`.
pub fn qmeixner_k(t: &Scalar, a: &Scalar, b: &Scalar, q: &QBase) -> Result<Scalar> {
    let pol = TruncationPolicy::for_base(q);
    let mut v = qpoch(&q.scalar(), q, PochLen::Infinite, &pol)?;
    v = &v * &theta(&-t, q, &pol)?;
    for f in [a.clone(), b.clone(), -&(a * t), -&(b * t)] {
        let d = qpoch(&f, q, PochLen::Infinite, &pol)?;
        if d.is_zero() {
            return Err(CoreError::Pole {
                ctx: "qmeixner_k: denominator vanishes".into(),
            });
        }
        v = &v / &d;
    }
    Ok(v)
}
