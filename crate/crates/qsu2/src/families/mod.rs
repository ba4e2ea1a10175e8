//! Orthogonal polynomial and q-Bessel function families: series evaluation,
//! orthonormalized lattice variants, weights, and norm constants.
//!
//! Every value is computed from the family's defining series; three-term
//! recurrences are used only as independent oracles in the test suites.

mod asc1;
mod asc2;
mod bessel;
mod bigq_laguerre;
mod cdqhahn;
mod qmeixner;
mod wall;

pub use asc1::{asc1, asc1_bar};
pub use asc2::{asc2_h_p, asc2_h_q, asc2_p, asc2_q, asc2_weight, m_bessel, stieltjes_wigert};
pub use bessel::{big_q_bessel, hahn_exton};
pub use bigq_laguerre::{big_q_laguerre, bql_bar};
pub use cdqhahn::{
    alsalam_chihara, alsalam_chihara_bar, alsalam_chihara_mass, alsalam_chihara_norm,
    alsalam_chihara_second, alsalam_chihara_weight_theta, cdqhahn, cdqhahn_at, cdqhahn_bar,
    cdqhahn_mass, cdqhahn_norm, cdqhahn_shifted_at, cdqhahn_weight_theta,
};
pub use qmeixner::{qmeixner, qmeixner_k, qmeixner_weight};
pub use wall::{wall, wall_bar};

use crate::error::{CoreError, Result};
use crate::scalar::{CompensatedSum, Precision, QBase, Scalar};
use rug::Float;

/// Identifies which q-lattice a support point lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Branch {
    /// Anchor -1: points -q^{s k}.
    NegOne,
    /// Anchor 1: points q^{s k}.
    One,
    /// Anchor q^{2 tau}.
    Tau,
    /// Anchor q^{2 sigma}.
    Sigma,
    /// Anchored at the first parameter of the family in use (a, or z-).
    First,
    /// Anchored at the second parameter (b, or z+).
    Second,
    /// Anchored at a third parameter.
    Third,
}

/// A point `anchor * q^{stride * index}` on a q-lattice.
///
/// Equality is exact, on `(branch, index)` only; the stored anchor is the
/// numeric value used by [`SupportPoint::value`]. Two points from lattices
/// with different anchors must therefore never be mixed in one collection.
#[derive(Debug, Clone)]
pub struct SupportPoint {
    branch: Branch,
    index: i64,
    anchor: Scalar,
    stride: u8,
}

impl SupportPoint {
    pub fn new(branch: Branch, anchor: Scalar, stride: u8, index: i64) -> Self {
        assert!(stride == 1 || stride == 2, "stride must be 1 or 2");
        SupportPoint {
            branch,
            index,
            anchor,
            stride,
        }
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn index(&self) -> i64 {
        self.index
    }

    pub fn anchor(&self) -> &Scalar {
        &self.anchor
    }

    pub fn stride(&self) -> u8 {
        self.stride
    }

    /// Numeric value `anchor * q^{stride * index}`.
    pub fn value(&self, q: &QBase) -> Scalar {
        &self.anchor * &q.powi_scalar(self.stride as i64 * self.index)
    }

    /// Same lattice, index shifted by `dk`.
    pub fn shifted(&self, dk: i64) -> Self {
        SupportPoint {
            branch: self.branch,
            index: self.index + dk,
            anchor: self.anchor.clone(),
            stride: self.stride,
        }
    }
}

impl PartialEq for SupportPoint {
    fn eq(&self, other: &Self) -> bool {
        self.branch == other.branch && self.index == other.index
    }
}

impl Eq for SupportPoint {}

/// A point of an orthogonality measure on `[-1,1]` plus finitely many masses:
/// either `e^{i theta}` on the unit circle or a mass point `alpha q^k` where
/// `alpha` is the parameter selected by `which` (0, 1, 2 in parameter order).
#[derive(Debug, Clone)]
pub enum MeasurePoint {
    Circle { theta: Float },
    Mass { which: usize, k: u32 },
}

pub(crate) fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(CoreError::InvalidArgument { ctx: what.into() })
    }
}

/// `x` with `mu = (x + 1/x)/2`, picking `mu + sqrt(mu^2 - 1)`.
///
/// For real `mu` in `(-1,1)` this lands on the upper unit circle; both roots
/// give the same value for any function symmetric in `x <-> 1/x`.
pub(crate) fn x_from_mu(mu: &Scalar) -> Result<Scalar> {
    let one = Scalar::one(mu.precision());
    let d = &(mu * mu) - &one;
    let x = mu + &d.sqrt();
    if x.is_zero() {
        return Err(CoreError::InvalidArgument {
            ctx: "x_from_mu: degenerate point".into(),
        });
    }
    Ok(x)
}

/// Index `j >= 0` with `v = q^{-j}` within relative tolerance `tol`, if any.
///
/// Candidates are located in log space, then verified by the residual
/// `|v q^j - 1|` computed at full precision, so the gate is meaningful even
/// when `tol` is far below what `f64` logarithms can resolve.
pub(crate) fn neg_qpower_index(v: &Scalar, q: &QBase, tol: f64) -> Option<i64> {
    if !v.is_real() || !v.re().is_sign_positive() || v.is_zero() {
        return None;
    }
    let lj = -v.abs().ln().to_f64() / q.q().to_f64().ln();
    let j = lj.round();
    if j < -0.5 || (lj - j).abs() > 1e-6 {
        return None;
    }
    let j = j as i64;
    let resid = (&(v * &q.powi_scalar(j)) - &Scalar::one(v.precision())).abs();
    if resid.to_f64() > tol {
        return None;
    }
    Some(j)
}

pub(crate) fn widen(s: &Scalar, bits: u32) -> Scalar {
    Scalar::from_parts(
        Float::with_val(bits, s.re()),
        Float::with_val(bits, s.im()),
    )
}

fn round_to(s: &Scalar, prec: Precision) -> Scalar {
    Scalar::from_parts(
        Float::with_val(prec.bits(), s.re()),
        Float::with_val(prec.bits(), s.im()),
    )
}

/// Parameter lists for one terminating series evaluation, rebuilt by a
/// [`terminating_phi_with`] builder at every working precision.
pub(crate) struct SeriesParts {
    pub upper: Vec<Scalar>,
    pub lower: Vec<Scalar>,
    pub z: Scalar,
}

/// Terminating basic hypergeometric sum with self-correcting precision.
///
/// Computes
///
/// ```text
/// sum_{k=0}^{n} (q^{-n};q)_k prod_u (u;q)_k / ((q;q)_k prod_l (l;q)_k)
///               ((-1)^k q^{k(k-1)/2})^e z^k
/// ```
///
/// by the term-ratio recurrence. The alternating terms can exceed the final
/// value by a factor on the order of `q^{-n^2/2}`, and the same factor is
/// the condition number of the sum with respect to its inputs. Three
/// consequences are handled here so callers never see them:
///
/// * `build` is called again at every working precision, so arguments that
///   are products of exact primitives (lattice points `a q^k`, circle
///   points `e^{i theta}`) can be reconstructed accurately instead of being
///   widened from an already-rounded value that no amount of precision
///   could repair.
/// * Upper parameters within rounding distance of the inverse lattice
///   `q^{-j}` are snapped onto it and the sum cut off at `k = j`.
///   Mathematically the factor `(1 - q^{-j} q^j)` kills every later term;
///   numerically the leftover epsilon would be amplified by the growing
///   `(q^{-n};q)_k` factors into garbage that dominates the sum, so the
///   lattice reading is the backward-stable one.
/// * Each pass measures `max|term| / |sum|` and reruns at a widened
///   precision until the caller's precision survives the cancellation. The
///   result is rounded back to the precision of `q`.
pub(crate) fn terminating_phi_with(
    nterm: i64,
    e: i64,
    q: &QBase,
    build: &dyn Fn(&QBase) -> Result<SeriesParts>,
) -> Result<Scalar> {
    if nterm < 0 {
        return Err(CoreError::InvalidArgument {
            ctx: "terminating series: negative term count".into(),
        });
    }
    let prec0 = q.precision();
    let bits0 = prec0.bits();

    // snap tolerance halfway down the working precision: true lattice
    // entries carry only a few ulps of error, while anything a caller could
    // legitimately mean as an off-lattice value sits far above it
    let base = build(q)?;
    let snap_tol = (-(bits0 as f64) / 2.0).exp2();
    let mut cut = nterm;
    let mut snapped: Vec<Option<i64>> = Vec::with_capacity(base.upper.len());
    for u in &base.upper {
        let j = neg_qpower_index(u, q, snap_tol);
        if let Some(jj) = j {
            if jj < cut {
                cut = jj;
            }
        }
        snapped.push(j);
    }
    drop(base);

    let eval = |bits: u32| -> Result<(Scalar, Float)> {
        let qw = QBase::from_float(Float::with_val(bits, q.q()))?;
        let parts = build(&qw)?;
        let prec = Precision::from_bits(bits);
        let one = Scalar::one(prec);
        let zw = parts.z;
        let uw: Vec<Scalar> = parts
            .upper
            .iter()
            .zip(&snapped)
            .map(|(u, s)| match s {
                Some(j) => qw.powi_scalar(-j),
                None => u.clone(),
            })
            .collect();
        let lw = parts.lower;
        let mut term = one.clone();
        let mut sum = CompensatedSum::new(bits);
        sum.add(&term);
        let mut maxabs = term.abs();
        for k in 0..cut {
            // ratio of term k+1 to term k
            let mut num = &one - &qw.powi_scalar(k - nterm);
            for u in &uw {
                let f = &one - &(u * &qw.powi_scalar(k));
                num = &num * &f;
            }
            num = &num * &zw;
            if e != 0 {
                let f = (-&qw.powi_scalar(k)).powi(e);
                num = &num * &f;
            }
            let mut den = &one - &qw.powi_scalar(k + 1);
            for l in &lw {
                let f = &one - &(l * &qw.powi_scalar(k));
                den = &den * &f;
            }
            if den.is_zero() {
                return Err(CoreError::Pole {
                    ctx: "terminating series: lower parameter hits a pole".into(),
                });
            }
            term = &(&term * &num) / &den;
            if term.is_zero() {
                // an upper factor vanished; everything past it is zero
                break;
            }
            sum.add(&term);
            let ta = term.abs();
            if ta > maxabs {
                maxabs = ta;
            }
        }
        Ok((sum.value(), maxabs))
    };

    let mut bits = bits0;
    let mut zero_streak = 0;
    for _attempt in 0..12 {
        let (s, maxabs) = eval(bits)?;
        if maxabs.is_zero() {
            return Ok(round_to(&s, prec0));
        }
        let sa = s.abs();
        if sa.is_zero() {
            zero_streak += 1;
            // exact cancellation at two distinct precisions is a true zero
            if zero_streak >= 2 {
                return Ok(round_to(&s, prec0));
            }
        } else {
            zero_streak = 0;
        }
        let lost = if sa.is_zero() {
            // total cancellation at this precision: either a true zero or
            // we need head room at the scale of the largest term
            bits as u64
        } else {
            // log2 of max|term| / |sum|, computed without leaving the
            // MPFR exponent range
            let l2 = Float::with_val(64, &maxabs / &sa).log2().to_f64();
            if l2 <= 0.0 {
                0
            } else {
                l2.ceil() as u64
            }
        };
        let slack = 32 + (64 - (cut.max(1) as u64).leading_zeros()) as u64;
        let needed = ((bits0 as u64 + lost + slack).min(1 << 20)) as u32;
        if bits >= needed {
            return Ok(round_to(&s, prec0));
        }
        bits = needed.max(bits.saturating_mul(2).min(1 << 20));
    }
    let (s, _) = eval(bits)?;
    Ok(round_to(&s, prec0))
}

/// [`terminating_phi_with`] over fixed parameter values.
///
/// The given scalars are taken as exact and re-extended verbatim at each
/// working precision. Arguments formed by rounding a product of primitives
/// should go through the builder interface instead: once `a q^k` is rounded,
/// the difference from the exact lattice point is amplified by the full
/// condition number of the sum, which widening cannot undo.
pub(crate) fn terminating_phi(
    upper: &[Scalar],
    lower: &[Scalar],
    nterm: i64,
    e: i64,
    z: &Scalar,
    q: &QBase,
) -> Result<Scalar> {
    terminating_phi_with(nterm, e, q, &|qq: &QBase| {
        let b = qq.precision().bits();
        Ok(SeriesParts {
            upper: upper.iter().map(|u| widen(u, b)).collect(),
            lower: lower.iter().map(|l| widen(l, b)).collect(),
            z: widen(z, b),
        })
    })
}
