//! Wall polynomials and their orthonormal form on the lattice q^N.

use super::{require, terminating_phi, terminating_phi_with, widen, SeriesParts};
use crate::error::Result;
use crate::qkernel::{qpoch, PochLen, TruncationPolicy};
use crate::scalar::{QBase, Scalar};

/// Wall polynomial `p_n(y; a; q) = 2phi1(q^{-n}, 0; aq; q, qy)`.
pub fn wall(n: u32, y: &Scalar, a: &Scalar, q: &QBase) -> Result<Scalar> {
    let lower = [a * &q.scalar()];
    let z = y * &q.scalar();
    terminating_phi(&[], &lower, n as i64, 0, &z, q)
}

/// Orthonormalized Wall function at the lattice point `q^x`:
/// `(-1)^{n+x} sqrt[(aq)^{x-n} (aq;q)_inf (aq;q)_n / ((q;q)_n (q;q)_x)] p_n(q^x;a;q)`.
///
/// Defined for `0 < a < 1/q`; by convention the value at `n = -1` is zero.
pub fn wall_bar(n: i64, x: u32, a: &Scalar, q: &QBase) -> Result<Scalar> {
    let prec = q.precision();
    if n < 0 {
        return Ok(Scalar::zero(prec));
    }
    require(
        a.is_real() && a.re().is_sign_positive() && !a.is_zero() && (a * &q.scalar()).abs() < 1,
        "wall_bar: requires 0 < a < 1/q",
    )?;
    let pol = TruncationPolicy::for_base(q);
    let aq = a * &q.scalar();
    let qs = q.scalar();

    let mut rad = aq.powi(x as i64 - n);
    rad = &rad * &qpoch(&aq, q, PochLen::Infinite, &pol)?;
    rad = &rad * &qpoch(&aq, q, PochLen::Finite(n), &pol)?;
    rad = &rad / &qpoch(&qs, q, PochLen::Finite(n), &pol)?;
    rad = &rad / &qpoch(&qs, q, PochLen::Finite(x as i64), &pol)?;
    // lattice argument q^x rebuilt inside the series at each working
    // precision, where it is exact
    let series = terminating_phi_with(n, 0, q, &|qq: &QBase| {
        Ok(SeriesParts {
            upper: vec![],
            lower: vec![&widen(a, qq.precision().bits()) * &qq.scalar()],
            z: qq.powi_scalar(x as i64 + 1),
        })
    })?;
    let mut v = &rad.sqrt() * &series;
    if (n + x as i64) % 2 != 0 {
        v = -v;
    }
    Ok(v)
}
