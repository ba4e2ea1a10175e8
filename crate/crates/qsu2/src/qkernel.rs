//! q-shifted factorials, theta functions, basic hypergeometric series.
//!
//! All series share one stopping rule: a term (or product factor) counts as
//! negligible when it falls below `rel_tol * max(|partial|, 1)`, and
//! evaluation stops after `consecutive_small` negligible terms in a row.

use crate::error::{CoreError, Result};
use crate::scalar::{CompensatedSum, Precision, QBase, Scalar};
use rug::Float;

/// Order of a q-shifted factorial: `(a;q)_n` with `n` an integer or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PochLen {
    Finite(i64),
    Infinite,
}

/// Stopping rules for series, infinite products, and q-integral tails.
#[derive(Debug, Clone)]
pub struct TruncationPolicy {
    /// Relative tail tolerance (default: unit roundoff times 100).
    pub rel_tol: Float,
    /// Hard cap on the number of series/product terms.
    pub max_terms: usize,
    /// Consecutive negligible terms required before stopping.
    pub consecutive_small: usize,
    /// Cap on |k| for bilateral q-grids.
    pub bilateral_cap: i64,
}

impl TruncationPolicy {
    pub fn for_precision(prec: Precision) -> Self {
        let mut rel_tol = prec.eps();
        rel_tol *= 100u32;
        TruncationPolicy {
            rel_tol,
            max_terms: 1_000_000,
            consecutive_small: 5,
            bilateral_cap: 400,
        }
    }

    pub fn for_base(q: &QBase) -> Self {
        Self::for_precision(q.precision())
    }
}

/// `(a;q)_n` for `n` in `Z` or infinite.
///
/// Negative orders require `a q^{-1}, ..., a q^{n}` to stay away from 1; a
/// vanishing factor there is reported as a pole.
pub fn qpoch(a: &Scalar, q: &QBase, n: PochLen, pol: &TruncationPolicy) -> Result<Scalar> {
    if !a.is_finite() {
        return Err(CoreError::InvalidArgument {
            ctx: "qpoch: non-finite argument".into(),
        });
    }
    let prec = q.precision();
    let one = Scalar::one(prec);
    match n {
        PochLen::Finite(n) if n == 0 => Ok(one),
        PochLen::Finite(n) if n > 0 => {
            let mut acc = Scalar::one(prec);
            let mut aqj = a.clone();
            let qs = q.scalar();
            for _ in 0..n {
                acc = &acc * &(&one - &aqj);
                aqj = &aqj * &qs;
            }
            Ok(acc)
        }
        PochLen::Finite(n) => {
            // (a;q)_{-m} = 1 / prod_{j=1..m} (1 - a q^{-j})
            let m = (-n) as u64;
            let qinv = Scalar::from_real(Float::with_val(prec.bits(), 1u32) / q.q());
            let mut acc = Scalar::one(prec);
            let mut aqj = a.clone();
            for _ in 0..m {
                aqj = &aqj * &qinv;
                let f = &one - &aqj;
                if f.abs() <= pol.rel_tol {
                    return Err(CoreError::Pole {
                        ctx: "qpoch: negative order hits a vanishing factor".into(),
                    });
                }
                acc = &acc * &f;
            }
            Ok(Scalar::one(prec) / acc)
        }
        PochLen::Infinite => {
            let mut acc = Scalar::one(prec);
            let mut aqj = a.clone();
            let qs = q.scalar();
            let mut small = 0usize;
            for it in 0..pol.max_terms {
                let f = &one - &aqj;
                if f.is_zero() {
                    return Ok(Scalar::zero(prec));
                }
                acc = &acc * &f;
                if aqj.abs() <= pol.rel_tol {
                    small += 1;
                    if small >= pol.consecutive_small {
                        return Ok(acc);
                    }
                } else {
                    small = 0;
                }
                aqj = &aqj * &qs;
                let _ = it;
            }
            Err(CoreError::NonConvergent {
                ctx: "qpoch: infinite product exceeded max_terms".into(),
            })
        }
    }
}

/// One factor of a multi-argument q-shifted factorial; `PlusMinus(a, b)`
/// expands to the pair `(a b; q)_n (a/b; q)_n`.
#[derive(Debug, Clone)]
pub enum PochFactor {
    Single(Scalar),
    PlusMinus(Scalar, Scalar),
}

/// Product of q-shifted factorials over a list of arguments, all at order `n`.
pub fn qpoch_multi(
    factors: &[PochFactor],
    q: &QBase,
    n: PochLen,
    pol: &TruncationPolicy,
) -> Result<Scalar> {
    let mut acc = Scalar::one(q.precision());
    for f in factors {
        match f {
            PochFactor::Single(a) => acc = &acc * &qpoch(a, q, n, pol)?,
            PochFactor::PlusMinus(a, b) => {
                let ab = a * b;
                let adb = a / b;
                acc = &acc * &qpoch(&ab, q, n, pol)?;
                acc = &acc * &qpoch(&adb, q, n, pol)?;
            }
        }
    }
    Ok(acc)
}

/// Detects whether `v` is (numerically) the lattice point `q^{-m}` for some
/// integer `m >= 0`, by the relative test `|v q^m - 1| <= 1e-12`.
fn detect_neg_qpower(v: &Scalar, q: &QBase) -> Option<i64> {
    if !v.is_real() {
        return None;
    }
    let x = v.re().to_f64();
    if !(x >= 0.999_999_999_999) {
        return None;
    }
    let t = -x.ln() / q.q().to_f64().ln();
    let m = t.round();
    if m < -0.5 || (t - m).abs() > 1e-6 {
        return None;
    }
    let m = m as i64;
    let check = v * &q.powi_scalar(m);
    let one = Scalar::one(q.precision());
    let mut tol = q.float(1e-12);
    if tol < q.eps() {
        tol = q.eps();
    }
    if (&check - &one).abs() <= tol {
        Some(m)
    } else {
        None
    }
}

/// Theta function `theta(a;q) = (a;q)_inf (q/a;q)_inf`, for `a` off the
/// lattice `{0} U q^Z`.
pub fn theta(a: &Scalar, q: &QBase, pol: &TruncationPolicy) -> Result<Scalar> {
    if a.is_zero() {
        return Err(CoreError::InvalidArgument {
            ctx: "theta: argument must be nonzero".into(),
        });
    }
    if a.is_real() && a.re().is_sign_positive() {
        // lattice points q^m (m in Z) are excluded
        let t = a.re().to_f64().ln() / q.q().to_f64().ln();
        let m = t.round();
        if (t - m).abs() < 1e-6 {
            let chk = a * &q.powi_scalar(-(m as i64));
            if (&chk - &Scalar::one(q.precision())).abs() <= pol.rel_tol {
                return Err(CoreError::InvalidArgument {
                    ctx: "theta: argument lies on the q-power lattice".into(),
                });
            }
        }
    }
    let first = qpoch(a, q, PochLen::Infinite, pol)?;
    let qa = &q.scalar() / a;
    let second = qpoch(&qa, q, PochLen::Infinite, pol)?;
    Ok(&first * &second)
}

/// Product of theta functions over several arguments.
pub fn theta_multi(args: &[Scalar], q: &QBase, pol: &TruncationPolicy) -> Result<Scalar> {
    let mut acc = Scalar::one(q.precision());
    for a in args {
        acc = &acc * &theta(a, q, pol)?;
    }
    Ok(acc)
}

/// `mu(x) = (x + 1/x) / 2`.
pub fn mu(x: &Scalar) -> Result<Scalar> {
    if x.is_zero() {
        return Err(CoreError::InvalidArgument {
            ctx: "mu: x must be nonzero".into(),
        });
    }
    let prec = x.precision();
    let half = Scalar::from_f64(0.5, prec);
    let s = x + &x.recip();
    Ok(&s * &half)
}

/// Parameters of a basic hypergeometric series
/// `r phi s (a_1..a_r; b_1..b_s; q, z)`.
#[derive(Debug, Clone)]
pub struct SeriesSpec {
    pub upper: Vec<Scalar>,
    pub lower: Vec<Scalar>,
    pub z: Scalar,
}

impl SeriesSpec {
    pub fn new(upper: Vec<Scalar>, lower: Vec<Scalar>, z: Scalar) -> Self {
        SeriesSpec { upper, lower, z }
    }
}

/// Evaluates `r phi s` with the standard `((-1)^n q^(n(n-1)/2))^(1+s-r)`
/// factor.
///
/// Terminating series (some upper parameter on `q^{-N}`) are summed exactly;
/// otherwise `r <= s+1` is required, with `|z| < 1` when `r = s+1`. A lower
/// parameter on `q^{-N}` that vanishes before the series terminates is a pole.
pub fn rphis(spec: &SeriesSpec, q: &QBase, pol: &TruncationPolicy) -> Result<Scalar> {
    let prec = q.precision();
    for v in spec.upper.iter().chain(spec.lower.iter()).chain([&spec.z]) {
        if !v.is_finite() {
            return Err(CoreError::InvalidArgument {
                ctx: "rphis: non-finite parameter".into(),
            });
        }
    }
    let r = spec.upper.len() as i64;
    let s = spec.lower.len() as i64;

    let term_at = spec
        .upper
        .iter()
        .filter_map(|a| detect_neg_qpower(a, q))
        .min();
    for b in &spec.lower {
        if let Some(l) = detect_neg_qpower(b, q) {
            let bad = match term_at {
                Some(m) => l < m,
                None => true,
            };
            if bad {
                return Err(CoreError::Pole {
                    ctx: "rphis: lower parameter vanishes before the series terminates".into(),
                });
            }
        }
    }
    if term_at.is_none() {
        if r > s + 1 {
            return Err(CoreError::NonConvergent {
                ctx: "rphis: divergent (r > s+1 and non-terminating)".into(),
            });
        }
        if r == s + 1 && !(spec.z.abs() < 1) {
            return Err(CoreError::NonConvergent {
                ctx: "rphis: |z| >= 1 outside the radius of convergence".into(),
            });
        }
    }

    let e = 1 + s - r;
    let one = Scalar::one(prec);
    let qs = q.scalar();
    // sign and q-power pieces of ((-1)^k q^{k(k-1)/2})^e, updated via ratios
    let sign_e = if e.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let qe = q.powi_scalar(e);

    let mut sum = CompensatedSum::new(prec.bits());
    let mut term = Scalar::one(prec);
    sum.add(&term);
    let mut aq: Vec<Scalar> = spec.upper.clone();
    let mut bq: Vec<Scalar> = spec.lower.clone();
    let mut qk1 = qs.clone(); // q^{k+1}
    let mut qke = Scalar::one(prec); // q^{k e}
    let mut small = 0usize;

    for k in 0..pol.max_terms {
        if let Some(m) = term_at {
            if (k as i64) >= m {
                return Ok(sum.value());
            }
        }
        // ratio term_{k+1}/term_k
        let mut num = Scalar::one(prec);
        for a in &aq {
            num = &num * &(&one - a);
        }
        let mut den = &one - &qk1;
        for b in &bq {
            let f = &one - b;
            if f.is_zero() {
                return Err(CoreError::Pole {
                    ctx: "rphis: vanishing lower-parameter factor".into(),
                });
            }
            den = &den * &f;
        }
        let mut ratio = &num / &den;
        ratio = &ratio * &spec.z;
        if e != 0 {
            ratio = &ratio * &qke;
            if sign_e < 0.0 {
                ratio = -ratio;
            }
        }
        term = &term * &ratio;
        sum.add(&term);

        if term_at.is_none() {
            let partial = sum.value().abs();
            let mut bound = Float::with_val(prec.bits(), 1u32);
            if partial > bound {
                bound = partial;
            }
            bound *= &pol.rel_tol;
            if term.abs() <= bound {
                small += 1;
                if small >= pol.consecutive_small {
                    return Ok(sum.value());
                }
            } else {
                small = 0;
            }
        }

        for a in aq.iter_mut() {
            *a = &*a * &qs;
        }
        for b in bq.iter_mut() {
            *b = &*b * &qs;
        }
        qk1 = &qk1 * &qs;
        if e != 0 {
            qke = &qke * &qe;
        }
        let _ = k;
    }
    Err(CoreError::NonConvergent {
        ctx: "rphis: exceeded max_terms".into(),
    })
}

/// Shorthand for building a series parameter list out of scalars.
pub fn params(list: &[&Scalar]) -> Vec<Scalar> {
    list.iter().map(|s| (*s).clone()).collect()
}
