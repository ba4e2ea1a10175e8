//! Continuous dual q-Hahn polynomials, their Al-Salam-Chihara subfamily
//! (third parameter zero), and the associated measure: continuous weight on
//! the unit circle plus finitely many mass points `alpha q^k` with
//! `|alpha q^k| > 1`.

use super::{require, terminating_phi, terminating_phi_with, widen, x_from_mu};
use super::{MeasurePoint, SeriesParts};
use crate::error::{CoreError, Result};
use crate::qkernel::{qpoch, PochLen, TruncationPolicy};
use crate::scalar::{QBase, Scalar};
use rug::Float;

/// Core series evaluation with the exponential coordinate supplied as a
/// builder, so measure points whose coordinate is a product of exact
/// primitives (`e^{i theta}`, `alpha q^k`) can be reconstructed at each
/// working precision instead of entering the heavily cancelling sum
/// pre-rounded.
fn cdqhahn_at_built(
    n: u32,
    coord: &dyn Fn(&QBase) -> Result<Scalar>,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    q: &QBase,
) -> Result<Scalar> {
    let prec = q.precision();
    if n == 0 {
        return Ok(Scalar::one(prec));
    }
    let x0 = coord(q)?;
    require(!x0.is_zero(), "cdqhahn: x must be nonzero")?;
    require(!a.is_zero(), "cdqhahn: first parameter must be nonzero for n >= 1")?;
    let pol = TruncationPolicy::for_base(q);
    let nn = n as i64;
    let ab = a * b;
    let ac = a * c;
    let phi = terminating_phi_with(nn, 0, q, &|qq: &QBase| {
        let bits = qq.precision().bits();
        let xw = coord(qq)?;
        let aw = widen(a, bits);
        Ok(SeriesParts {
            upper: vec![&aw * &xw, &aw / &xw],
            lower: vec![&aw * &widen(b, bits), &aw * &widen(c, bits)],
            z: qq.scalar(),
        })
    })?;
    let mut pre = a.powi(-nn);
    pre = &pre * &qpoch(&ab, q, PochLen::Finite(nn), &pol)?;
    pre = &pre * &qpoch(&ac, q, PochLen::Finite(nn), &pol)?;
    Ok(&pre * &phi)
}

/// `p_n(mu_x; a,b,c | q) = a^{-n} (ab,ac;q)_n 3phi2(q^{-n}, ax, a/x; ab, ac; q, q)`
/// evaluated at the exponential coordinate `x` (any nonzero `x`; the value
/// depends on `x` only through `mu_x = (x + 1/x)/2`).
pub fn cdqhahn_at(
    n: u32,
    x: &Scalar,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    q: &QBase,
) -> Result<Scalar> {
    cdqhahn_at_built(
        n,
        &|qq: &QBase| Ok(widen(x, qq.precision().bits())),
        a,
        b,
        c,
        q,
    )
}

/// `p_n` as a function of `mu_x` itself.
pub fn cdqhahn(
    n: u32,
    mu: &Scalar,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    q: &QBase,
) -> Result<Scalar> {
    cdqhahn_at(n, &x_from_mu(mu)?, a, b, c, q)
}

/// `p_n` with the third parameter pinned to `q^{1-p}/a`, evaluated through
/// the degree-lowering rewrite
/// `(-a)^{-p} q^{-p(p-1)/2} (ax;q)_p (a/x;q)_p p_{n-p}(mu_x; aq^p, b, q/a)`.
///
/// At these parameter values the lower factors of the defining series
/// vanish against the prefactor, so the lowered form is the stable
/// evaluation; for `p > n` the lowered degree is negative and the value is
/// zero, the reading required wherever these appear as expansion
/// coefficients with a vanishing-below-the-edge convention.
pub fn cdqhahn_shifted_at(
    n: i64,
    p: u32,
    x: &Scalar,
    a: &Scalar,
    b: &Scalar,
    q: &QBase,
) -> Result<Scalar> {
    let prec = q.precision();
    if n < p as i64 {
        return Ok(Scalar::zero(prec));
    }
    require(
        !x.is_zero() && !a.is_zero(),
        "cdqhahn_shifted_at: x and a must be nonzero",
    )?;
    let pol = TruncationPolicy::for_base(q);
    let pp = p as i64;
    let ax = a * x;
    let aox = a / x;
    let mut pre = (-a).powi(-pp);
    pre = &pre * &q.powi_scalar(-pp * (pp - 1) / 2);
    pre = &pre * &qpoch(&ax, q, PochLen::Finite(pp), &pol)?;
    pre = &pre * &qpoch(&aox, q, PochLen::Finite(pp), &pol)?;
    let ashift = a * &q.powi_scalar(pp);
    let cpar = &q.scalar() / a;
    let low = cdqhahn_at((n - pp) as u32, x, &ashift, b, &cpar, q)?;
    Ok(&pre * &low)
}

/// Continuous part of the orthogonality weight, in the circle variable:
/// `(1/2pi) (x^{+-2};q)_inf / ((a x^{+-1}, b x^{+-1}, c x^{+-1};q)_inf)`
/// at `x = e^{i theta}`. Integrating `p_n p_m` times this over
/// `theta in [0, pi]` gives the continuous piece of the orthogonality sum.
pub fn cdqhahn_weight_theta(
    theta: &Float,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    q: &QBase,
) -> Result<Scalar> {
    let pol = TruncationPolicy::for_base(q);
    let prec = q.precision();
    let x = Scalar::cis(&Float::with_val(prec.bits(), theta));
    let xi = x.recip();
    let x2 = &x * &x;
    let xi2 = &xi * &xi;
    let mut v = &qpoch(&x2, q, PochLen::Infinite, &pol)? * &qpoch(&xi2, q, PochLen::Infinite, &pol)?;
    for p in [a, b, c] {
        if p.is_zero() {
            continue;
        }
        let d = &qpoch(&(p * &x), q, PochLen::Infinite, &pol)?
            * &qpoch(&(p * &xi), q, PochLen::Infinite, &pol)?;
        if d.is_zero() {
            return Err(CoreError::Pole {
                ctx: "cdqhahn_weight_theta: weight denominator vanishes".into(),
            });
        }
        v = &v / &d;
    }
    let two_pi = Scalar::from_real(Scalar::pi(prec)) + Scalar::from_real(Scalar::pi(prec));
    Ok(&v / &two_pi)
}

/// Mass of the discrete orthogonality point `mu_{alpha q^k}` where `alpha`
/// is the parameter selected by `which` out of `(a, b, c)`; requires
/// `|alpha q^k| > 1` and real parameters.
pub fn cdqhahn_mass(
    k: u32,
    which: usize,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    q: &QBase,
) -> Result<Scalar> {
    let params = [a, b, c];
    require(which < 3, "cdqhahn_mass: parameter selector out of range")?;
    let al = params[which];
    let others: Vec<&Scalar> = (0..3).filter(|i| *i != which).map(|i| params[i]).collect();
    let (be, ga) = (others[0], others[1]);
    require(al.is_real(), "cdqhahn_mass: mass anchor must be real")?;
    require(
        (al * &q.powi_scalar(k as i64)).abs() > 1,
        "cdqhahn_mass: |alpha q^k| must exceed 1",
    )?;
    let pol = TruncationPolicy::for_base(q);
    let prec = q.precision();
    let one = Scalar::one(prec);
    let kk = k as i64;
    let al2 = al * al;

    let mut v = qpoch(&al2.recip(), q, PochLen::Infinite, &pol)?;
    for f in [
        q.scalar(),
        al * be,
        al * ga,
        be / al,
        ga / al,
    ] {
        v = &v / &qpoch(&f, q, PochLen::Infinite, &pol)?;
    }
    v = &v * &(&one - &(&al2 * &q.powi_scalar(2 * kk)));
    v = &v / &(&one - &al2);
    for f in [al2.clone(), al * be, al * ga] {
        v = &v * &qpoch(&f, q, PochLen::Finite(kk), &pol)?;
    }
    for f in [
        q.scalar(),
        &(al * &q.scalar()) / be,
        &(al * &q.scalar()) / ga,
    ] {
        v = &v / &qpoch(&f, q, PochLen::Finite(kk), &pol)?;
    }
    v = &v * &q.powi_scalar(-kk * (kk - 1) / 2);
    let base = -&(&al2 * &(be * ga));
    Ok(&v * &base.powi(-kk))
}

/// `1 / ((q^{n+1}, abq^n, acq^n, bcq^n;q)_inf)`: the squared norm attached
/// to degree `n` in the orthogonality relation.
pub fn cdqhahn_norm(n: u32, a: &Scalar, b: &Scalar, c: &Scalar, q: &QBase) -> Result<Scalar> {
    let pol = TruncationPolicy::for_base(q);
    let nn = n as i64;
    let qn = q.powi_scalar(nn);
    let mut d = qpoch(&q.powi_scalar(nn + 1), q, PochLen::Infinite, &pol)?;
    for pr in [a * b, a * c, b * c] {
        d = &d * &qpoch(&(&pr * &qn), q, PochLen::Infinite, &pol)?;
    }
    if d.is_zero() {
        return Err(CoreError::Pole {
            ctx: "cdqhahn_norm: norm denominator vanishes".into(),
        });
    }
    Ok(d.recip())
}

fn bar_at(
    n: u32,
    x: &MeasurePoint,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    q: &QBase,
) -> Result<Scalar> {
    for pr in [a * b, a * c, b * c] {
        require(
            pr.abs() < 1,
            "bar variant requires pairwise parameter products < 1",
        )?;
    }
    let norm = cdqhahn_norm(n, a, b, c, q)?;
    match x {
        MeasurePoint::Circle { theta } => {
            let prec = q.precision();
            let th = Float::with_val(prec.bits(), theta);
            let sin_th = Scalar::from_real(th.clone().sin());
            require(
                sin_th.re().is_sign_positive() && !sin_th.is_zero(),
                "bar variant: theta must lie in (0, pi)",
            )?;
            // density against sin(theta) d theta, so that the continuous
            // piece of the orthonormality sum is int_0^pi (..) sin dtheta
            let w = cdqhahn_weight_theta(&th, a, b, c, q)?;
            let p = cdqhahn_at_built(
                n,
                &|qq: &QBase| Ok(Scalar::cis(&Float::with_val(qq.precision().bits(), theta))),
                a,
                b,
                c,
                q,
            )?;
            Ok(&(&(&w / &sin_th) / &norm).sqrt() * &p)
        }
        MeasurePoint::Mass { which, k } => {
            let w = cdqhahn_mass(*k, *which, a, b, c, q)?;
            let params = [a, b, c];
            let al = params[*which];
            let kk = *k as i64;
            let p = cdqhahn_at_built(
                n,
                &|qq: &QBase| Ok(&widen(al, qq.precision().bits()) * &qq.powi_scalar(kk)),
                a,
                b,
                c,
                q,
            )?;
            Ok(&(&w / &norm).sqrt() * &p)
        }
    }
}

/// Orthonormalized continuous dual q-Hahn value at a measure point.
///
/// With `B_n` the value at the point `s`, the orthonormality reads
/// `int_0^pi B_n B_m sin(theta) dtheta + sum_masses B_n B_m = delta_{nm}`.
pub fn cdqhahn_bar(
    n: u32,
    x: &MeasurePoint,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    q: &QBase,
) -> Result<Scalar> {
    bar_at(n, x, a, b, c, q)
}

/// Al-Salam-Chihara polynomial `q_n(mu_x; a, b | q) = p_n(mu_x; a, b, 0 | q)`.
pub fn alsalam_chihara(n: u32, mu: &Scalar, a: &Scalar, b: &Scalar, q: &QBase) -> Result<Scalar> {
    let zero = Scalar::zero(q.precision());
    cdqhahn(n, mu, a, b, &zero, q)
}

/// The equivalent `2phi1` expression
/// `x^n (b/x;q)_n 2phi1(q^{-n}, ax; x q^{1-n}/b; q, q/(bx))`,
/// kept as an independent cross-check of [`alsalam_chihara`].
pub fn alsalam_chihara_second(
    n: u32,
    x: &Scalar,
    a: &Scalar,
    b: &Scalar,
    q: &QBase,
) -> Result<Scalar> {
    require(!x.is_zero() && !b.is_zero(), "requires x, b nonzero")?;
    let pol = TruncationPolicy::for_base(q);
    let nn = n as i64;
    let bx = b / x;
    let upper = [a * x];
    let lower = [&(x * &q.powi_scalar(1 - nn)) / b];
    let z = &q.scalar() / &(b * x);
    let phi = terminating_phi(&upper, &lower, nn, 0, &z, q)?;
    let pre = &x.powi(nn) * &qpoch(&bx, q, PochLen::Finite(nn), &pol)?;
    Ok(&pre * &phi)
}

/// Continuous weight for the Al-Salam-Chihara measure (third parameter zero).
pub fn alsalam_chihara_weight_theta(
    theta: &Float,
    a: &Scalar,
    b: &Scalar,
    q: &QBase,
) -> Result<Scalar> {
    let zero = Scalar::zero(q.precision());
    cdqhahn_weight_theta(theta, a, b, &zero, q)
}

/// Discrete mass at `mu_{alpha q^k}` for the Al-Salam-Chihara measure,
/// obtained from the three-parameter mass in the limit of vanishing third
/// parameter:
/// `(al^{-2};q)_inf / ((q, al be, be/al;q)_inf)
///  * (1 - al^2 q^{2k}) (al^2, al be;q)_k / ((1 - al^2)(q, al q/be;q)_k)
///  * al^{-3k} be^{-k} q^{-k^2}`.
pub fn alsalam_chihara_mass(
    k: u32,
    which: usize,
    a: &Scalar,
    b: &Scalar,
    q: &QBase,
) -> Result<Scalar> {
    let params = [a, b];
    require(which < 2, "alsalam_chihara_mass: selector out of range")?;
    let al = params[which];
    let be = params[1 - which];
    require(al.is_real(), "alsalam_chihara_mass: mass anchor must be real")?;
    require(
        (al * &q.powi_scalar(k as i64)).abs() > 1,
        "alsalam_chihara_mass: |alpha q^k| must exceed 1",
    )?;
    let pol = TruncationPolicy::for_base(q);
    let prec = q.precision();
    let one = Scalar::one(prec);
    let kk = k as i64;
    let al2 = al * al;

    let mut v = qpoch(&al2.recip(), q, PochLen::Infinite, &pol)?;
    for f in [q.scalar(), al * be, be / al] {
        v = &v / &qpoch(&f, q, PochLen::Infinite, &pol)?;
    }
    v = &v * &(&one - &(&al2 * &q.powi_scalar(2 * kk)));
    v = &v / &(&one - &al2);
    v = &v * &qpoch(&al2, q, PochLen::Finite(kk), &pol)?;
    v = &v * &qpoch(&(al * be), q, PochLen::Finite(kk), &pol)?;
    v = &v / &qpoch(&q.scalar(), q, PochLen::Finite(kk), &pol)?;
    v = &v / &qpoch(&(&(al * &q.scalar()) / be), q, PochLen::Finite(kk), &pol)?;
    v = &v * &al.powi(-3 * kk);
    v = &v * &be.powi(-kk);
    Ok(&v * &q.powi_scalar(-kk * kk))
}

/// Norm constant for Al-Salam-Chihara: `1/((q^{n+1}, abq^n;q)_inf)`.
pub fn alsalam_chihara_norm(n: u32, a: &Scalar, b: &Scalar, q: &QBase) -> Result<Scalar> {
    let zero = Scalar::zero(q.precision());
    cdqhahn_norm(n, a, b, &zero, q)
}

/// Orthonormalized Al-Salam-Chihara value at a measure point; same measure
/// convention as [`cdqhahn_bar`].
pub fn alsalam_chihara_bar(
    n: u32,
    x: &MeasurePoint,
    a: &Scalar,
    b: &Scalar,
    q: &QBase,
) -> Result<Scalar> {
    match x {
        MeasurePoint::Circle { .. } => {
            let zero = Scalar::zero(q.precision());
            bar_at(n, x, a, b, &zero, q)
        }
        MeasurePoint::Mass { which, k } => {
            require(*which < 2, "alsalam_chihara_bar: selector out of range")?;
            let w = alsalam_chihara_mass(*k, *which, a, b, q)?;
            let norm = alsalam_chihara_norm(n, a, b, q)?;
            let params = [a, b];
            let al = params[*which];
            let kk = *k as i64;
            let zero = Scalar::zero(q.precision());
            let p = cdqhahn_at_built(
                n,
                &|qq: &QBase| Ok(&widen(al, qq.precision().bits()) * &qq.powi_scalar(kk)),
                a,
                b,
                &zero,
                q,
            )?;
            Ok(&(&w / &norm).sqrt() * &p)
        }
    }
}
