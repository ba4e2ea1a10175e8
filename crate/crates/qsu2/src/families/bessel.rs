//! Big q-Bessel functions on the bilateral lattice and the Hahn-Exton
//! q-Bessel function they degenerate to.

use super::require;
use crate::error::Result;
use crate::qkernel::{rphis, SeriesSpec, TruncationPolicy};
use crate::scalar::{QBase, Scalar};

/// Big q-Bessel function
/// `J^c_{alpha,k}(-x; q) = 1phi1(-1/x; q^{alpha+1}; q, x q^{k+alpha+2}/c)`,
/// `k` in `Z`.
pub fn big_q_bessel(
    alpha: f64,
    k: i64,
    c: &Scalar,
    x: &Scalar,
    q: &QBase,
) -> Result<Scalar> {
    require(!x.is_zero() && !c.is_zero(), "big_q_bessel: x and c must be nonzero")?;
    let pol = TruncationPolicy::for_base(q);
    let upper = vec![-&x.recip()];
    let lower = vec![q.powf_scalar(alpha + 1.0)];
    let z = &(x * &q.powf_scalar(k as f64 + alpha + 2.0)) / c;
    rphis(&SeriesSpec::new(upper, lower, z), q, &pol)
}

/// Hahn-Exton q-Bessel function `J_alpha(y; q) = 1phi1(0; q^{alpha+1}; q, qy)`.
pub fn hahn_exton(alpha: f64, y: &Scalar, q: &QBase) -> Result<Scalar> {
    let pol = TruncationPolicy::for_base(q);
    let prec = q.precision();
    let upper = vec![Scalar::zero(prec)];
    let lower = vec![q.powf_scalar(alpha + 1.0)];
    let z = q.scalar() * y;
    rphis(&SeriesSpec::new(upper, lower, z), q, &pol)
}
