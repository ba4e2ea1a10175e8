//! Big q-Laguerre polynomials and their orthonormal form on the lattice
//! `aq^{1+N} U bq^{1+N}`.

use super::{require, terminating_phi, terminating_phi_with, widen, SeriesParts};
use super::{Branch, SupportPoint};
use crate::error::Result;
use crate::qkernel::{qpoch, theta, PochLen, TruncationPolicy};
use crate::scalar::{QBase, Scalar};

/// `L_n(x; a, b; q) = 3phi2(q^{-n}, 0, x; aq, bq; q, q)`.
pub fn big_q_laguerre(n: u32, x: &Scalar, a: &Scalar, b: &Scalar, q: &QBase) -> Result<Scalar> {
    let qs = q.scalar();
    let upper = [x.clone()];
    let lower = [a * &qs, b * &qs];
    terminating_phi(&upper, &lower, n as i64, 0, &qs, q)
}

/// Orthonormal big q-Laguerre function at a lattice point `x` of
/// `aq^{1+N} U bq^{1+N}` (branches `First` and `Second`, both with the
/// extra power of q carried by the index, so index >= 1):
/// `(-abq^2)^{-n/2} q^{-n(n-1)/4}
///  sqrt[|x| (x/a, x/b, aq, bq;q)_inf (aq,bq;q)_n / (|aq| (q, x;q)_inf theta(b/a;q) (q;q)_n)] L_n`.
///
/// Parameter regime: `0 < a < 1/q` and `b < 0`, or the a <-> b swap.
pub fn bql_bar(n: u32, x: &SupportPoint, a: &Scalar, b: &Scalar, q: &QBase) -> Result<Scalar> {
    let regime = |u: &Scalar, v: &Scalar| {
        u.is_real()
            && v.is_real()
            && u.re().is_sign_positive()
            && !u.is_zero()
            && (u * &q.scalar()).abs() < 1
            && v.re().is_sign_negative()
    };
    require(regime(a, b) || regime(b, a), "bql_bar: requires 0<a<1/q, b<0 up to swap")?;
    require(
        x.stride() == 1
            && x.index() >= 1
            && ((x.branch() == Branch::First && x.anchor() == a)
                || (x.branch() == Branch::Second && x.anchor() == b)),
        "bql_bar: x must lie on aq^{1+N} or bq^{1+N}",
    )?;
    let pol = TruncationPolicy::for_base(q);
    let prec = q.precision();
    let nn = n as i64;
    let qs = q.scalar();
    let xv = x.value(q);
    let aq = a * &qs;
    let bq = b * &qs;

    let mut rad = Scalar::from_real(xv.abs());
    rad = &rad * &qpoch(&(&xv / a), q, PochLen::Infinite, &pol)?;
    rad = &rad * &qpoch(&(&xv / b), q, PochLen::Infinite, &pol)?;
    rad = &rad * &qpoch(&aq, q, PochLen::Infinite, &pol)?;
    rad = &rad * &qpoch(&bq, q, PochLen::Infinite, &pol)?;
    rad = &rad * &qpoch(&aq, q, PochLen::Finite(nn), &pol)?;
    rad = &rad * &qpoch(&bq, q, PochLen::Finite(nn), &pol)?;
    rad = &rad / &Scalar::from_real(aq.abs());
    rad = &rad / &qpoch(&qs, q, PochLen::Infinite, &pol)?;
    rad = &rad / &qpoch(&xv, q, PochLen::Infinite, &pol)?;
    rad = &rad / &theta(&(b / a), q, &pol)?;
    rad = &rad / &qpoch(&qs, q, PochLen::Finite(nn), &pol)?;

    // (-abq^2)^{-n/2} with -abq^2 > 0 in the admissible regime
    let mabq2 = -&(&(a * b) * &q.powi_scalar(2));
    let scale = Scalar::from_real(mabq2.abs()).sqrt().powi(-nn);
    let qpow = Scalar::from_real(q.powf(-(nn as f64) * ((nn as f64) - 1.0) / 4.0));

    // The polynomial value is rebuilt from the lattice data (anchor, index)
    // at each working precision: rounding x before the sum would perturb the
    // heavily cancelling series by far more than its final size.
    let anchor = x.anchor().clone();
    let idx = x.index();
    let series = terminating_phi_with(nn, 0, q, &|qq: &QBase| {
        let bw = qq.precision().bits();
        let qs = qq.scalar();
        let xw = &widen(&anchor, bw) * &qq.powi_scalar(idx);
        Ok(SeriesParts {
            upper: vec![xw],
            lower: vec![&widen(a, bw) * &qs, &widen(b, bw) * &qs],
            z: qs,
        })
    })?;

    let mut v = &rad.sqrt() * &series;
    v = &v * &scale;
    v = &v * &qpow;
    let _ = prec;
    Ok(v)
}
