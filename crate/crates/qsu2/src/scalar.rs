//! Configurable-precision complex arithmetic.
//!
//! `Scalar` is a complex number stored as a pair of MPFR floats. Precision is
//! carried by the values themselves: a binary operation rounds at the larger
//! of its operand precisions, so the precision chosen at an entry point (via
//! [`Precision`] and [`QBase`]) propagates through the whole computation and
//! identical inputs always produce bit-identical outputs.

use crate::error::{CoreError, Result};
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

/// Working precision, constructed from a significant-decimal-digit count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    bits: u32,
}

impl Precision {
    /// Default precision: 30 significant decimal digits plus guard bits.
    pub const DEFAULT_DIGITS: u32 = 30;

    /// Precision for `digits` significant decimal digits, with guard bits so
    /// that accumulated rounding stays below the last requested digit.
    pub fn from_digits(digits: u32) -> Self {
        let digits = digits.clamp(10, 4000);
        // log2(10) = 3.3219...; 24 guard bits cover long accumulations.
        let bits = (digits as f64 * 3.321928094887362).ceil() as u32 + 24;
        Precision { bits }
    }

    pub fn default_precision() -> Self {
        Self::from_digits(Self::DEFAULT_DIGITS)
    }

    /// Exact bit count, for callers that widen temporarily and round back.
    pub fn from_bits(bits: u32) -> Self {
        Precision { bits: bits.clamp(24, 1 << 20) }
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    /// Unit roundoff at this precision, `2^(1-bits)`.
    pub fn eps(self) -> Float {
        let mut e = Float::with_val(self.bits, 1u32);
        e >>= self.bits - 1;
        e
    }
}

fn max_prec(a: &Scalar, b: &Scalar) -> u32 {
    a.prec().max(b.prec())
}

/// Complex number at a fixed working precision.
#[derive(Debug, Clone)]
pub struct Scalar {
    re: Float,
    im: Float,
}

impl Scalar {
    pub fn from_parts(re: Float, im: Float) -> Self {
        let p = re.prec().max(im.prec());
        Scalar {
            re: Float::with_val(p, re),
            im: Float::with_val(p, im),
        }
    }

    pub fn from_real(re: Float) -> Self {
        let p = re.prec();
        Scalar {
            re,
            im: Float::new(p),
        }
    }

    pub fn zero(prec: Precision) -> Self {
        Scalar {
            re: Float::new(prec.bits()),
            im: Float::new(prec.bits()),
        }
    }

    pub fn one(prec: Precision) -> Self {
        Scalar {
            re: Float::with_val(prec.bits(), 1u32),
            im: Float::new(prec.bits()),
        }
    }

    /// The imaginary unit.
    pub fn i(prec: Precision) -> Self {
        Scalar {
            re: Float::new(prec.bits()),
            im: Float::with_val(prec.bits(), 1u32),
        }
    }

    pub fn from_f64(v: f64, prec: Precision) -> Self {
        Scalar {
            re: Float::with_val(prec.bits(), v),
            im: Float::new(prec.bits()),
        }
    }

    pub fn from_int(v: i64, prec: Precision) -> Self {
        Scalar {
            re: Float::with_val(prec.bits(), v),
            im: Float::new(prec.bits()),
        }
    }

    pub fn complex(re: f64, im: f64, prec: Precision) -> Self {
        Scalar {
            re: Float::with_val(prec.bits(), re),
            im: Float::with_val(prec.bits(), im),
        }
    }

    /// `e^{i theta}` for a full-precision angle.
    pub fn cis(theta: &Float) -> Self {
        let p = theta.prec();
        let (s, c) = theta.clone().sin_cos(Float::new(p));
        Scalar { re: c, im: s }
    }

    /// Pi at the given precision.
    pub fn pi(prec: Precision) -> Float {
        Float::with_val(prec.bits(), Constant::Pi)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn precision(&self) -> Precision {
        Precision { bits: self.prec() }
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: Float::with_val(self.prec(), -&self.im),
        }
    }

    /// Multiplication by the imaginary unit: `(a+bi) i = -b + ai`.
    pub fn mul_i(&self) -> Self {
        Scalar {
            re: Float::with_val(self.prec(), -&self.im),
            im: self.re.clone(),
        }
    }

    pub fn abs(&self) -> Float {
        if self.im.is_zero() {
            self.re.clone().abs()
        } else if self.re.is_zero() {
            self.im.clone().abs()
        } else {
            self.re.clone().hypot(&self.im)
        }
    }

    pub fn abs2(&self) -> Float {
        let p = self.prec();
        let mut t = Float::with_val(p, &self.re * &self.re);
        t += Float::with_val(p, &self.im * &self.im);
        t
    }

    /// Principal-branch complex square root.
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.im.is_zero() {
            return if self.re.is_sign_negative() && !self.re.is_zero() {
                Scalar {
                    re: Float::new(p),
                    im: Float::with_val(p, (-self.re.clone()).sqrt()),
                }
            } else {
                Scalar {
                    re: self.re.clone().sqrt(),
                    im: Float::new(p),
                }
            };
        }
        let m = self.abs();
        let ax = self.re.clone().abs();
        let u = Float::with_val(p, Float::with_val(p, &m + &ax) / 2u32).sqrt();
        if self.re.is_sign_positive() {
            let v = Float::with_val(p, &self.im / &u) / 2u32;
            Scalar {
                re: u,
                im: Float::with_val(p, v),
            }
        } else {
            let mut v = Float::with_val(p, self.im.clone().abs() / &u) / 2u32;
            let mut u2 = u;
            if self.im.is_sign_negative() {
                u2 = -u2;
            }
            std::mem::swap(&mut v, &mut u2);
            // v currently holds +-sqrt((m+|x|)/2) signed by im, u2 holds |y|/(2u)
            Scalar { re: u2, im: v }
        }
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        let d = self.abs2();
        Scalar {
            re: Float::with_val(p, &self.re / &d),
            im: -Float::with_val(p, &self.im / &d),
        }
    }

    /// Integer power by binary exponentiation; negative exponents invert.
    pub fn powi(&self, n: i64) -> Self {
        let prec = self.precision();
        if n == 0 {
            return Scalar::one(prec);
        }
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Scalar::one(prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Relative difference `|a-b| / max(|a|, |b|, floor)`; zero when both vanish.
    pub fn rel_diff(&self, other: &Scalar) -> Float {
        let p = max_prec(self, other);
        let num = (self - other).abs();
        let mut den = self.abs().max(&other.abs());
        let floor = Float::with_val(p, 1e-60f64);
        if den < floor {
            den = floor;
        }
        Float::with_val(p, num / den)
    }

    pub fn to_f64s(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Decimal rendering with `digits` significant digits (deterministic).
    pub fn decimal(&self, digits: usize) -> String {
        if self.im.is_zero() {
            float_decimal(&self.re, digits)
        } else {
            format!(
                "{} {} {}i",
                float_decimal(&self.re, digits),
                if self.im.is_sign_negative() { "-" } else { "+" },
                float_decimal(&self.im.clone().abs(), digits)
            )
        }
    }
}

/// Deterministic decimal string for a float, `digits` significant digits.
pub fn float_decimal(f: &Float, digits: usize) -> String {
    if f.is_zero() {
        return "0".into();
    }
    if !f.is_finite() {
        return f.to_string();
    }
    let (sign, digs, exp) = f.to_sign_string_exp(10, Some(digits));
    let exp = exp.unwrap_or(0);
    let s = if sign { "-" } else { "" };
    // normalized form d.ddd e (exp-1)
    let mantissa = if digs.len() > 1 {
        format!("{}.{}", &digs[..1], &digs[1..])
    } else {
        digs.clone()
    };
    format!("{}{}e{}", s, mantissa, exp - 1)
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.re == other.re && self.im == other.im
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.decimal(17))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: Float::with_val(self.prec(), -&self.re),
            im: Float::with_val(self.prec(), -&self.im),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let p = max_prec(self, rhs);
        Scalar {
            re: Float::with_val(p, &self.re + &rhs.re),
            im: Float::with_val(p, &self.im + &rhs.im),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let p = max_prec(self, rhs);
        Scalar {
            re: Float::with_val(p, &self.re - &rhs.re),
            im: Float::with_val(p, &self.im - &rhs.im),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let p = max_prec(self, rhs);
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar {
                re: Float::with_val(p, &self.re * &rhs.re),
                im: Float::new(p),
            };
        }
        let mut re = Float::with_val(p, &self.re * &rhs.re);
        re -= Float::with_val(p, &self.im * &rhs.im);
        let mut im = Float::with_val(p, &self.re * &rhs.im);
        im += Float::with_val(p, &self.im * &rhs.re);
        Scalar { re, im }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let p = max_prec(self, rhs);
        if rhs.im.is_zero() {
            return Scalar {
                re: Float::with_val(p, &self.re / &rhs.re),
                im: Float::with_val(p, &self.im / &rhs.re),
            };
        }
        let d = rhs.abs2();
        let mut re = Float::with_val(p, &self.re * &rhs.re);
        re += Float::with_val(p, &self.im * &rhs.im);
        re /= &d;
        let mut im = Float::with_val(p, &self.im * &rhs.re);
        im -= Float::with_val(p, &self.re * &rhs.im);
        im /= &d;
        Scalar { re, im }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        let s = &*self + rhs;
        *self = s;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        let s = &*self - rhs;
        *self = s;
    }
}

/// Base of all q-series: a real `q` with `0 < q < 1`, at working precision.
#[derive(Debug, Clone, PartialEq)]
pub struct QBase {
    q: Float,
}

impl QBase {
    pub fn new(q: f64, prec: Precision) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(CoreError::InvalidBase { got: q.to_string() });
        }
        Ok(QBase {
            q: Float::with_val(prec.bits(), q),
        })
    }

    pub fn from_float(q: Float) -> Result<Self> {
        if !q.is_finite() || q.partial_cmp(&0.0) != Some(Ordering::Greater) || q >= 1.0 {
            return Err(CoreError::InvalidBase { got: q.to_string() });
        }
        Ok(QBase { q })
    }

    pub fn q(&self) -> &Float {
        &self.q
    }

    pub fn prec(&self) -> u32 {
        self.q.prec()
    }

    pub fn precision(&self) -> Precision {
        Precision { bits: self.prec() }
    }

    pub fn scalar(&self) -> Scalar {
        Scalar::from_real(self.q.clone())
    }

    /// `q^k` for integer `k` (negative allowed).
    pub fn powi(&self, k: i64) -> Float {
        Float::with_val(self.prec(), (&self.q).pow(k as i32))
    }

    /// `q^e` for a real exponent (twist parameters, half powers).
    pub fn powf(&self, e: f64) -> Float {
        let ef = Float::with_val(self.prec(), e);
        Float::with_val(self.prec(), (&self.q).pow(ef))
    }

    pub fn powi_scalar(&self, k: i64) -> Scalar {
        Scalar::from_real(self.powi(k))
    }

    pub fn powf_scalar(&self, e: f64) -> Scalar {
        Scalar::from_real(self.powf(e))
    }

    /// The base `q^2`, at the same precision.
    pub fn squared(&self) -> QBase {
        QBase {
            q: Float::with_val(self.prec(), &self.q * &self.q),
        }
    }

    /// Unit roundoff of the working precision.
    pub fn eps(&self) -> Float {
        self.precision().eps()
    }

    pub fn float(&self, v: f64) -> Float {
        Float::with_val(self.prec(), v)
    }
}

/// Neumaier-compensated accumulator for complex terms at working precision.
#[derive(Debug, Clone)]
pub struct CompensatedSum {
    sr: Float,
    cr: Float,
    si: Float,
    ci: Float,
}

impl CompensatedSum {
    pub fn new(prec: u32) -> Self {
        CompensatedSum {
            sr: Float::new(prec),
            cr: Float::new(prec),
            si: Float::new(prec),
            ci: Float::new(prec),
        }
    }

    fn add_part(s: &mut Float, c: &mut Float, v: &Float) {
        let p = s.prec();
        let t = Float::with_val(p, &*s + v);
        let corr = if s.clone().abs() >= v.clone().abs() {
            let mut d = Float::with_val(p, &*s - &t);
            d += v;
            d
        } else {
            let mut d = Float::with_val(p, v - &t);
            d += &*s;
            d
        };
        *c += corr;
        *s = t;
    }

    pub fn add(&mut self, v: &Scalar) {
        Self::add_part(&mut self.sr, &mut self.cr, v.re());
        Self::add_part(&mut self.si, &mut self.ci, v.im());
    }

    pub fn value(&self) -> Scalar {
        let p = self.sr.prec();
        Scalar {
            re: Float::with_val(p, &self.sr + &self.cr),
            im: Float::with_val(p, &self.si + &self.ci),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_principal_branch() {
        let p = Precision::from_digits(30);
        let z = Scalar::from_f64(-4.0, p);
        let r = z.sqrt();
        assert!(r.re().is_zero());
        assert!((r.im().to_f64() - 2.0).abs() < 1e-28);

        let z = Scalar::complex(0.0, 2.0, p);
        let r = z.sqrt();
        assert!((r.re().to_f64() - 1.0).abs() < 1e-15);
        assert!((r.im().to_f64() - 1.0).abs() < 1e-15);

        let z = Scalar::complex(-3.0, -4.0, p);
        let r = z.sqrt();
        let back = &r * &r;
        assert!(back.rel_diff(&z) < 1e-30);
        assert!(r.re().to_f64() >= 0.0);
    }

    #[test]
    fn powi_matches_repeated_multiplication() {
        let p = Precision::from_digits(30);
        let z = Scalar::complex(0.3, -0.7, p);
        let mut acc = Scalar::one(p);
        for _ in 0..7 {
            acc = &acc * &z;
        }
        assert!(acc.rel_diff(&z.powi(7)) < 1e-32);
        let inv = z.powi(-3);
        let direct = Scalar::one(p) / (&z * &z * &z);
        assert!(inv.rel_diff(&direct) < 1e-30);
    }

    #[test]
    fn qbase_rejects_bad_base() {
        let p = Precision::from_digits(30);
        assert!(QBase::new(0.0, p).is_err());
        assert!(QBase::new(1.0, p).is_err());
        assert!(QBase::new(-0.5, p).is_err());
        assert!(QBase::new(0.5, p).is_ok());
    }

    #[test]
    fn decimal_is_deterministic() {
        let p = Precision::from_digits(30);
        let z = Scalar::complex(1.0 / 3.0, -2.5, p);
        assert_eq!(z.decimal(20), z.decimal(20));
        let f = Float::with_val(p.bits(), 0.125f64);
        assert_eq!(float_decimal(&f, 10), "1.250000000e-1");
    }
}
