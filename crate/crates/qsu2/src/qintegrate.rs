//! Jackson q-integrals on q-geometric grids and adaptive Gauss quadrature
//! for integrals over the unit circle parameterized by `theta in [0, pi]`.

use crate::error::{CoreError, Result};
use crate::qkernel::TruncationPolicy;
use crate::scalar::{CompensatedSum, Precision, QBase, Scalar};
use rug::Float;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Lower endpoint of a q-integral.
#[derive(Debug, Clone)]
pub enum LowerBound {
    Zero,
    Point(Scalar),
    /// `infinity(beta)`: the bilateral grid `beta q^k, k in Z`.
    ScaledInfinity(Scalar),
}

/// Upper endpoint of a q-integral.
#[derive(Debug, Clone)]
pub enum UpperBound {
    Point(Scalar),
    ScaledInfinity(Scalar),
}

/// A q-integral between two grid anchors.
#[derive(Debug, Clone)]
pub struct QIntegralSpec {
    pub lower: LowerBound,
    pub upper: UpperBound,
}

impl QIntegralSpec {
    pub fn new(lower: LowerBound, upper: UpperBound) -> Self {
        QIntegralSpec { lower, upper }
    }
}

pub type Integrand<'a> = &'a dyn Fn(&Scalar) -> Result<Scalar>;

/// `(1-q) sum_{k>=0} f(alpha q^k) alpha q^k` with the shared tail criterion.
fn half_line(f: Integrand, alpha: &Scalar, q: &QBase, pol: &TruncationPolicy) -> Result<Scalar> {
    let prec = q.precision();
    if alpha.is_zero() {
        return Ok(Scalar::zero(prec));
    }
    let qs = q.scalar();
    let mut x = alpha.clone();
    let mut sum = CompensatedSum::new(prec.bits());
    let mut small = 0usize;
    for _ in 0..pol.max_terms {
        let fx = f(&x)?;
        if !fx.is_finite() {
            return Err(CoreError::Pole {
                ctx: "qint: integrand singular on a grid point".into(),
            });
        }
        let term = &fx * &x;
        sum.add(&term);
        let partial = sum.value().abs();
        let mut bound = Float::with_val(prec.bits(), 1u32);
        if partial > bound {
            bound = partial;
        }
        bound *= &pol.rel_tol;
        if term.abs() <= bound {
            small += 1;
            if small >= pol.consecutive_small {
                let one_minus_q = Scalar::from_real(Float::with_val(prec.bits(), 1u32) - q.q());
                return Ok(&sum.value() * &one_minus_q);
            }
        } else {
            small = 0;
        }
        x = &x * &qs;
    }
    Err(CoreError::NonConvergent {
        ctx: "qint: grid sum exceeded max_terms".into(),
    })
}

/// `(1-q) sum_{k in Z} f(alpha q^k) alpha q^k`; the `k -> -inf` side is
/// capped at `bilateral_cap` points and must meet the tail criterion there.
fn bilateral(f: Integrand, alpha: &Scalar, q: &QBase, pol: &TruncationPolicy) -> Result<Scalar> {
    let prec = q.precision();
    if alpha.is_zero() {
        return Ok(Scalar::zero(prec));
    }
    let descending = half_line(f, alpha, q, pol)?;

    let qinv = Scalar::from_real(Float::with_val(prec.bits(), 1u32) / q.q());
    let mut x = alpha.clone();
    let mut sum = CompensatedSum::new(prec.bits());
    let mut small = 0usize;
    let mut converged = false;
    for _ in 0..pol.bilateral_cap {
        x = &x * &qinv;
        let fx = f(&x)?;
        if !fx.is_finite() {
            return Err(CoreError::Pole {
                ctx: "qint: integrand singular on a grid point".into(),
            });
        }
        let term = &fx * &x;
        sum.add(&term);
        let partial = sum.value().abs();
        let mut bound = Float::with_val(prec.bits(), 1u32);
        if partial > bound {
            bound = partial;
        }
        bound *= &pol.rel_tol;
        if term.abs() <= bound {
            small += 1;
            if small >= pol.consecutive_small {
                converged = true;
                break;
            }
        } else {
            small = 0;
        }
    }
    if !converged {
        return Err(CoreError::NonConvergent {
            ctx: "qint: ascending bilateral tail did not settle within the grid cap".into(),
        });
    }
    let one_minus_q = Scalar::from_real(Float::with_val(prec.bits(), 1u32) - q.q());
    Ok(&descending + &(&sum.value() * &one_minus_q))
}

/// Jackson q-integral of `f` between the bounds described by `spec`.
///
/// The five bound combinations reduce to signed combinations of the one-sided
/// grid sum and the bilateral grid sum anchored at the endpoints.
pub fn qint(
    f: Integrand,
    spec: &QIntegralSpec,
    q: &QBase,
    pol: &TruncationPolicy,
) -> Result<Scalar> {
    match (&spec.lower, &spec.upper) {
        (LowerBound::Zero, UpperBound::Point(a)) => half_line(f, a, q, pol),
        (LowerBound::Point(b), UpperBound::Point(a)) => {
            Ok(&half_line(f, a, q, pol)? - &half_line(f, b, q, pol)?)
        }
        (LowerBound::Zero, UpperBound::ScaledInfinity(a)) => bilateral(f, a, q, pol),
        (LowerBound::Point(b), UpperBound::ScaledInfinity(a)) => {
            Ok(&bilateral(f, a, q, pol)? - &half_line(f, b, q, pol)?)
        }
        (LowerBound::ScaledInfinity(b), UpperBound::ScaledInfinity(a)) => {
            Ok(&bilateral(f, a, q, pol)? - &bilateral(f, b, q, pol)?)
        }
        (LowerBound::ScaledInfinity(_), UpperBound::Point(_)) => Err(CoreError::InvalidArgument {
            ctx: "qint: a bilateral lower bound requires a bilateral upper bound".into(),
        }),
    }
}

/// Controls for adaptive Gauss-Legendre quadrature over `[0, pi]`.
#[derive(Debug, Clone)]
pub struct QuadratureSpec {
    /// Relative accuracy target for the whole integral.
    pub rel_tol: Float,
    /// Maximum bisection depth per panel.
    pub max_depth: u32,
    /// Initial number of equal panels.
    pub base_panels: usize,
}

impl QuadratureSpec {
    pub fn new(prec: Precision) -> Self {
        QuadratureSpec {
            rel_tol: Float::with_val(prec.bits(), 1e-12f64),
            max_depth: 13,
            base_panels: 4,
        }
    }

    pub fn with_rel_tol(prec: Precision, tol: f64) -> Self {
        QuadratureSpec {
            rel_tol: Float::with_val(prec.bits(), tol),
            ..Self::new(prec)
        }
    }
}

const GL_ORDER: usize = 15;

fn legendre_nodes(prec: u32) -> std::sync::Arc<Vec<(Float, Float)>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, std::sync::Arc<Vec<(Float, Float)>>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(v) = guard.get(&prec) {
        return v.clone();
    }
    let n = GL_ORDER as u32;
    let pi = Float::with_val(prec, rug::float::Constant::Pi);
    let mut nodes = Vec::with_capacity(GL_ORDER);
    for i in 1..=GL_ORDER {
        // Newton iteration from the Chebyshev estimate
        let mut x = {
            let t = Float::with_val(prec, &pi * Float::with_val(prec, i as f64 - 0.25))
                / Float::with_val(prec, n as f64 + 0.5);
            -t.cos()
        };
        let mut dx_ok = 0;
        for _ in 0..200 {
            let (pn, pn1) = legendre_pair(&x, prec);
            // P'_n(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
            let x2m1 = Float::with_val(prec, &x * &x) - 1u32;
            let mut dp = Float::with_val(prec, &x * &pn);
            dp -= &pn1;
            dp *= n;
            dp /= &x2m1;
            let step = Float::with_val(prec, &pn / &dp);
            x -= &step;
            let mut thresh = Float::with_val(prec, 1u32);
            thresh >>= prec - 4;
            if step.abs() <= thresh {
                dx_ok += 1;
                if dx_ok >= 2 {
                    break;
                }
            }
        }
        let (pn, pn1) = legendre_pair(&x, prec);
        let x2m1 = Float::with_val(prec, &x * &x) - 1u32;
        let mut dp = Float::with_val(prec, &x * &pn);
        dp -= &pn1;
        dp *= n;
        dp /= &x2m1;
        // w = 2 / ((1 - x^2) P'_n(x)^2)
        let mut w = Float::with_val(prec, &dp * &dp);
        w *= Float::with_val(prec, 1u32) - Float::with_val(prec, &x * &x);
        let w = Float::with_val(prec, 2u32) / w;
        nodes.push((x, w));
    }
    let arc = std::sync::Arc::new(nodes);
    guard.insert(prec, arc.clone());
    arc
}

/// Returns `(P_n(x), P_{n-1}(x))` for `n = GL_ORDER`.
fn legendre_pair(x: &Float, prec: u32) -> (Float, Float) {
    let mut p0 = Float::with_val(prec, 1u32);
    let mut p1 = x.clone();
    for k in 1..GL_ORDER {
        // (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
        let mut t = Float::with_val(prec, x * &p1);
        t *= (2 * k + 1) as u32;
        let mut u = p0.clone();
        u *= k as u32;
        t -= &u;
        t /= (k + 1) as u32;
        p0 = p1;
        p1 = t;
    }
    (p1, p0)
}

type ThetaIntegrand<'a> = &'a dyn Fn(&Float) -> Result<Scalar>;

fn gl_panel(f: ThetaIntegrand, a: &Float, b: &Float, prec: u32) -> Result<Scalar> {
    let nodes = legendre_nodes(prec);
    let half = Float::with_val(prec, b - a) / 2u32;
    let mid = Float::with_val(prec, a + b) / 2u32;
    let mut acc = CompensatedSum::new(prec);
    for (x, w) in nodes.iter() {
        let t = Float::with_val(prec, &mid + Float::with_val(prec, &half * x));
        let fv = f(&t)?;
        if !fv.is_finite() {
            return Err(CoreError::Pole {
                ctx: "circle_quadrature: integrand singular at a node".into(),
            });
        }
        acc.add(&(&fv * &Scalar::from_real(w.clone())));
    }
    Ok(&acc.value() * &Scalar::from_real(half))
}

struct AdaptState<'a, 'b> {
    f: ThetaIntegrand<'a>,
    prec: u32,
    max_depth: u32,
    failed: &'b mut bool,
    err: Float,
}

fn adapt(st: &mut AdaptState, a: &Float, b: &Float, tol: &Float, depth: u32) -> Result<Scalar> {
    let whole = gl_panel(st.f, a, b, st.prec)?;
    let mid = Float::with_val(st.prec, a + b) / 2u32;
    let left = gl_panel(st.f, a, &mid, st.prec)?;
    let right = gl_panel(st.f, &mid, b, st.prec)?;
    let fine = &left + &right;
    let err = (&whole - &fine).abs();
    if err <= *tol || depth >= st.max_depth {
        if err > *tol {
            *st.failed = true;
        }
        st.err += err;
        return Ok(fine);
    }
    let half_tol = Float::with_val(st.prec, tol / 2u32);
    let l = adapt(st, a, &mid, &half_tol, depth + 1)?;
    let r = adapt(st, &mid, b, &half_tol, depth + 1)?;
    Ok(&l + &r)
}

/// Adaptive Gauss-Legendre integral of `f(theta)` over `theta in [0, pi]`.
///
/// Returns the value and an a-posteriori error estimate; fails with
/// `NonConvergent` when the requested tolerance is unreachable at the
/// permitted depth.
pub fn circle_quadrature(
    f: ThetaIntegrand,
    spec: &QuadratureSpec,
    prec: Precision,
) -> Result<(Scalar, Float)> {
    let p = prec.bits();
    let pi = Float::with_val(p, rug::float::Constant::Pi);
    let zero = Float::new(p);

    // first pass: coarse estimate to scale the absolute tolerance
    let coarse = gl_panel(f, &zero, &pi, p)?;
    let mut scale = coarse.abs();
    let one = Float::with_val(p, 1u32);
    if scale < one {
        scale = one;
    }
    let tol_abs = Float::with_val(p, &spec.rel_tol * &scale);

    let mut failed = false;
    let mut st = AdaptState {
        f,
        prec: p,
        max_depth: spec.max_depth,
        failed: &mut failed,
        err: Float::new(p),
    };
    let mut total = Scalar::zero(prec);
    let n = spec.base_panels.max(1);
    let panel_tol = Float::with_val(p, &tol_abs / Float::with_val(p, n as f64));
    for i in 0..n {
        let a = Float::with_val(p, &pi * Float::with_val(p, i as f64)) / Float::with_val(p, n as f64);
        let b = Float::with_val(p, &pi * Float::with_val(p, (i + 1) as f64))
            / Float::with_val(p, n as f64);
        let v = adapt(&mut st, &a, &b, &panel_tol, 0)?;
        total = &total + &v;
    }
    let err = st.err.clone();
    if failed {
        return Err(CoreError::NonConvergent {
            ctx: "circle_quadrature: tolerance not met at maximum depth".into(),
        });
    }
    Ok((total, err))
}
