//! Second Al-Salam-Chihara family on the bilateral q-lattice
//! `z_- q^Z  union  z_+ q^Z`: the polynomial solutions `P_n` (n >= 0), the
//! non-polynomial solutions `Q_n` (n in Z), their weight and norm constants,
//! and the Stieltjes-Wigert / modified-Bessel limit functions.

use super::{require, terminating_phi};
use crate::error::{CoreError, Result};
use crate::qkernel::{qpoch, rphis, theta, PochLen, SeriesSpec, TruncationPolicy};
use crate::scalar::{QBase, Scalar};

/// `P_n(x; c, d; q) = (-c)^n q^{-n(n-1)/2} 2phi0(q^{-n}, cx; -; q, d q^n / c)`
/// for `n >= 0`; identically zero for `n < 0`.
pub fn asc2_p(n: i64, x: &Scalar, c: &Scalar, d: &Scalar, q: &QBase) -> Result<Scalar> {
    let prec = q.precision();
    if n < 0 {
        return Ok(Scalar::zero(prec));
    }
    if n == 0 {
        return Ok(Scalar::one(prec));
    }
    require(!c.is_zero(), "asc2_p: first parameter must be nonzero")?;
    let upper = [c * x];
    let z = &(d * &q.powi_scalar(n)) / c;
    let phi = terminating_phi(&upper, &[], n, -1, &z, q)?;
    let mc = -c;
    let pre = &mc.powi(n) * &q.powi_scalar(-n * (n - 1) / 2);
    Ok(&pre * &phi)
}

/// `Q_n(x; c, d; z_-, z_+; q)` for `n` in `Z`:
///
/// `(-d)^n q^{-n(n+1)/2} (cx;q)_inf theta(d z_-; q) theta(d z_+; q)
///  / ((q/(dx);q)_inf (q^{n+1} x/(d z_- z_+);q)_inf)
///  * 1phi1(q/(cx); d z_- z_+ q^{-n}/x; q, c z_- z_+ q^{-n}/x)`.
///
/// A vanishing denominator product is reported as a pole.
pub fn asc2_q(
    n: i64,
    x: &Scalar,
    c: &Scalar,
    d: &Scalar,
    zm: &Scalar,
    zp: &Scalar,
    q: &QBase,
) -> Result<Scalar> {
    require(
        !x.is_zero() && !c.is_zero() && !d.is_zero(),
        "asc2_q: x, c, d must be nonzero",
    )?;
    let pol = TruncationPolicy::for_base(q);
    let zz = zm * zp;
    let qn = q.powi_scalar(-n);

    let den1 = qpoch(&(&q.scalar() / &(d * x)), q, PochLen::Infinite, &pol)?;
    let den2 = qpoch(
        &(&(x * &q.powi_scalar(n + 1)) / &(d * &zz)),
        q,
        PochLen::Infinite,
        &pol,
    )?;
    if den1.is_zero() || den2.is_zero() {
        return Err(CoreError::Pole {
            ctx: "asc2_q: prefactor denominator vanishes".into(),
        });
    }

    let upper = vec![&q.scalar() / &(c * x)];
    let lower = vec![&(&(d * &zz) * &qn) / x];
    let z = &(&(c * &zz) * &qn) / x;
    let phi = rphis(&SeriesSpec::new(upper, lower, z), q, &pol)?;

    let md = -d;
    let mut v = &md.powi(n) * &q.powi_scalar(-n * (n + 1) / 2);
    v = &v * &qpoch(&(c * x), q, PochLen::Infinite, &pol)?;
    v = &v * &theta(&(d * zm), q, &pol)?;
    v = &v * &theta(&(d * zp), q, &pol)?;
    v = &v / &den1;
    v = &v / &den2;
    Ok(&v * &phi)
}

/// Orthogonality weight `1 / ((cx, dx;q)_inf)`.
pub fn asc2_weight(x: &Scalar, c: &Scalar, d: &Scalar, q: &QBase) -> Result<Scalar> {
    let pol = TruncationPolicy::for_base(q);
    let d1 = qpoch(&(c * x), q, PochLen::Infinite, &pol)?;
    let d2 = qpoch(&(d * x), q, PochLen::Infinite, &pol)?;
    let den = &d1 * &d2;
    if den.is_zero() {
        return Err(CoreError::Pole {
            ctx: "asc2_weight: weight denominator vanishes".into(),
        });
    }
    Ok(den.recip())
}

/// Squared norm of `P_n`:
/// `z_+ (q;q)_n (cd)^n q^{-n^2} (q;q)_inf theta(z_-/z_+, cd z_- z_+;q)
///  / theta(c z_-, d z_-, c z_+, d z_+;q)` for `n >= 0`, zero for `n < 0`.
pub fn asc2_h_p(
    n: i64,
    c: &Scalar,
    d: &Scalar,
    zm: &Scalar,
    zp: &Scalar,
    q: &QBase,
) -> Result<Scalar> {
    let prec = q.precision();
    if n < 0 {
        return Ok(Scalar::zero(prec));
    }
    let pol = TruncationPolicy::for_base(q);
    let cd = c * d;
    let mut v = zp * &qpoch(&q.scalar(), q, PochLen::Finite(n), &pol)?;
    v = &v * &cd.powi(n);
    v = &v * &q.powi_scalar(-n * n);
    v = &v * &qpoch(&q.scalar(), q, PochLen::Infinite, &pol)?;
    v = &v * &theta(&(zm / zp), q, &pol)?;
    v = &v * &theta(&(&cd * &(zm * zp)), q, &pol)?;
    for f in [c * zm, d * zm, c * zp, d * zp] {
        let t = theta(&f, q, &pol)?;
        if t.is_zero() {
            return Err(CoreError::Pole {
                ctx: "asc2_h_p: theta denominator vanishes".into(),
            });
        }
        v = &v / &t;
    }
    Ok(v)
}

/// Squared norm of `Q_n` for `n` in `Z`:
/// `z_+ (-z_- z_+)^{-n} q^{-n(n+1)/2} (cd z_- z_+ q^{-n-1};q)_inf
///  (q;q)_inf^2 theta(z_-/z_+;q)`.
pub fn asc2_h_q(
    n: i64,
    c: &Scalar,
    d: &Scalar,
    zm: &Scalar,
    zp: &Scalar,
    q: &QBase,
) -> Result<Scalar> {
    let pol = TruncationPolicy::for_base(q);
    let zz = zm * zp;
    let mzz = -&zz;
    let mut v = zp * &mzz.powi(-n);
    v = &v * &q.powi_scalar(-n * (n + 1) / 2);
    v = &v * &qpoch(&(&(c * d) * &(&zz * &q.powi_scalar(-n - 1))), q, PochLen::Infinite, &pol)?;
    let qq = qpoch(&q.scalar(), q, PochLen::Infinite, &pol)?;
    v = &v * &(&qq * &qq);
    Ok(&v * &theta(&(zm / zp), q, &pol)?)
}

/// Stieltjes-Wigert function `S_k(x;q) = 1phi1(q^{-k}; 0; q, -x q^{1+k}) / (q;q)_k`.
pub fn stieltjes_wigert(k: u32, x: &Scalar, q: &QBase) -> Result<Scalar> {
    let pol = TruncationPolicy::for_base(q);
    let kk = k as i64;
    let z = -&(x * &q.powi_scalar(1 + kk));
    let phi = terminating_phi(&[], &[], kk, 1, &z, q)?;
    Ok(&phi / &qpoch(&q.scalar(), q, PochLen::Finite(kk), &pol)?)
}

/// Modified-Bessel-type function
/// `M_k^{(t)}(x;q) = 1phi1(-t q^{-k}; 0; q, x q^{k+1}/t) / (q;q)_inf`, `k` in `Z`.
pub fn m_bessel(k: i64, x: &Scalar, t: &Scalar, q: &QBase) -> Result<Scalar> {
    require(!t.is_zero(), "m_bessel: t must be nonzero")?;
    let pol = TruncationPolicy::for_base(q);
    let prec = q.precision();
    let upper = vec![-&(t * &q.powi_scalar(-k))];
    let lower = vec![Scalar::zero(prec)];
    let z = &(x * &q.powi_scalar(k + 1)) / t;
    let phi = rphis(&SeriesSpec::new(upper, lower, z), q, &pol)?;
    Ok(&phi / &qpoch(&q.scalar(), q, PochLen::Infinite, &pol)?)
}
