//! Al-Salam-Carlitz polynomials `U_n^{(a)}` and their orthonormal form on
//! the two-sided lattice `aq^N U q^N` (a < 0).

use super::{neg_qpower_index as shared_lattice_index, require, terminating_phi};
use super::{terminating_phi_with, widen, Branch, SeriesParts, SupportPoint};
use crate::error::Result;
use crate::qkernel::{qpoch, theta, PochLen, TruncationPolicy};
use crate::scalar::{QBase, Scalar};

/// Loose-tolerance lattice detection. Used only to pick between two exactly
/// equal series representations, so a near miss cannot change the value,
/// only the evaluation path.
fn neg_qpower_index(v: &Scalar, q: &QBase) -> Option<i64> {
    shared_lattice_index(v, q, 1e-10)
}

fn asc1_series(n: u32, x: &Scalar, a: &Scalar, q: &QBase) -> Result<Scalar> {
    let upper = [x.recip()];
    let z = &(x * &q.scalar()) / a;
    let phi = terminating_phi(&upper, &[], n as i64, 0, &z, q)?;
    let nn = n as i64;
    let pre = &(-a).powi(nn) * &q.powi_scalar(nn * (nn - 1) / 2);
    Ok(&pre * &phi)
}

/// `U_n^{(a)}(x;q) = (-a)^n q^{n(n-1)/2} 2phi1(q^{-n}, 1/x; 0; q, qx/a)`.
///
/// The parameter-inversion symmetry `U_n^{(a)}(x) = a^n U_n^{(1/a)}(x/a)`
/// swaps which upper parameter lands on the terminating lattice `q^{-N}`;
/// evaluation goes through whichever form terminates sooner, which keeps
/// lattice points of both branches `q^N` and `a q^N` free of catastrophic
/// cancellation.
pub fn asc1(n: u32, x: &Scalar, a: &Scalar, q: &QBase) -> Result<Scalar> {
    require(!x.is_zero() && !a.is_zero(), "asc1: x and a must be nonzero")?;
    let direct = neg_qpower_index(&x.recip(), q);
    let swapped = neg_qpower_index(&(a / x), q);
    let use_swapped = match (direct, swapped) {
        (None, Some(_)) => true,
        (Some(jd), Some(js)) => js < jd,
        _ => false,
    };
    if use_swapped {
        let v = asc1_series(n, &(x / a), &a.recip(), q)?;
        return Ok(&a.powi(n as i64) * &v);
    }
    asc1_series(n, x, a, q)
}

/// Orthonormal Al-Salam-Carlitz function at a lattice point `x` of
/// `aq^N U q^N` (branches `First` and `One`):
/// `sqrt[q^{-n(n-1)/2} |x| (qx, qx/a;q)_inf / ((-a)^n (q;q)_n (q;q)_inf theta(a;q))] U_n`.
pub fn asc1_bar(n: u32, x: &SupportPoint, a: &Scalar, q: &QBase) -> Result<Scalar> {
    require(
        a.is_real() && a.re().is_sign_negative(),
        "asc1_bar: requires a < 0",
    )?;
    require(
        x.stride() == 1
            && ((x.branch() == Branch::First && x.anchor() == a)
                || (x.branch() == Branch::One && x.anchor() == &Scalar::one(q.precision())))
            && x.index() >= 0,
        "asc1_bar: x must lie on aq^N or q^N",
    )?;
    let pol = TruncationPolicy::for_base(q);
    let nn = n as i64;
    let xv = x.value(q);
    let qx = &xv * &q.scalar();

    let mut rad = q.powi_scalar(-nn * (nn - 1) / 2);
    rad = &rad * &Scalar::from_real(xv.abs());
    rad = &rad * &qpoch(&qx, q, PochLen::Infinite, &pol)?;
    rad = &rad * &qpoch(&(&qx / a), q, PochLen::Infinite, &pol)?;
    rad = &rad / &(-a).powi(nn);
    rad = &rad / &qpoch(&q.scalar(), q, PochLen::Finite(nn), &pol)?;
    rad = &rad / &qpoch(&q.scalar(), q, PochLen::Infinite, &pol)?;
    rad = &rad / &theta(a, q, &pol)?;

    // The branch tells us exactly which series form terminates at the
    // lattice index, so the upper parameter q^{-j} and the argument are
    // reconstructed exactly at each working precision. On the `aq^N` branch
    // the inversion symmetry U_n^(a)(aq^j) = a^n U_n^(1/a)(q^j) is applied
    // first; its prefactors combine to (-1)^n q^{n(n-1)/2}.
    let j = x.index();
    let on_one = x.branch() == Branch::One;
    let series = terminating_phi_with(nn, 0, q, &|qq: &QBase| {
        let aw = widen(a, qq.precision().bits());
        let zpow = qq.powi_scalar(j + 1);
        let z = if on_one { &zpow / &aw } else { &zpow * &aw };
        Ok(SeriesParts {
            upper: vec![qq.powi_scalar(-j)],
            lower: vec![],
            z,
        })
    })?;
    let pre = if on_one {
        &(-a).powi(nn) * &q.powi_scalar(nn * (nn - 1) / 2)
    } else {
        let s = q.powi_scalar(nn * (nn - 1) / 2);
        if nn % 2 != 0 {
            -s
        } else {
            s
        }
    };
    Ok(&(&rad.sqrt() * &pre) * &series)
}
