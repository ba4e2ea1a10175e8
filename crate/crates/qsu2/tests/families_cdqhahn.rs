//! Continuous dual q-Hahn polynomials and the Al-Salam-Chihara subfamily:
//! parameter symmetry, the degree-lowering shift identity, the three-term
//! recurrences, and orthonormality against the circle-plus-masses measure.

use qsu2::families::{
    alsalam_chihara, alsalam_chihara_mass, alsalam_chihara_second, cdqhahn_at, cdqhahn_bar,
    cdqhahn_mass, cdqhahn_shifted_at, MeasurePoint,
};
use qsu2::qintegrate::{circle_quadrature, QuadratureSpec};
use qsu2::qkernel::{qpoch, PochLen, TruncationPolicy};
use qsu2::{Precision, QBase, Scalar};
use rug::Float;

fn qb(q: f64) -> QBase {
    QBase::new(q, Precision::default_precision()).unwrap()
}

fn s(v: f64) -> Scalar {
    Scalar::from_f64(v, Precision::default_precision())
}

fn cis(theta: f64, prec: Precision) -> Scalar {
    Scalar::cis(&Float::with_val(prec.bits(), theta))
}

#[test]
fn degree_zero_is_one() {
    let q = qb(0.5);
    let one = Scalar::one(q.precision());
    let x = cis(0.9, q.precision());
    let got = cdqhahn_at(0, &x, &s(0.3), &s(-0.2), &s(0.4), &q).unwrap();
    assert!(got.rel_diff(&one).to_f64() < 1e-28, "p_0 = 1");
}

#[test]
fn parameter_symmetry_all_orderings() {
    let q = qb(0.5);
    let x = cis(1.0, q.precision());
    let (a, b, c) = (s(0.3), s(-0.2), s(0.4));
    let perms: [[&Scalar; 3]; 6] = [
        [&a, &b, &c],
        [&a, &c, &b],
        [&b, &a, &c],
        [&b, &c, &a],
        [&c, &a, &b],
        [&c, &b, &a],
    ];
    for n in 1..=5u32 {
        let base = cdqhahn_at(n, &x, &a, &b, &c, &q).unwrap();
        for p in &perms[1..] {
            let v = cdqhahn_at(n, &x, p[0], p[1], p[2], &q).unwrap();
            assert!(
                v.rel_diff(&base).to_f64() < 1e-22,
                "p_{} must not depend on parameter order",
                n
            );
        }
    }
}

/// Value of `p_n` at the pinned third parameter `c = q^{1-p}/a`, obtained as
/// the regularized limit of the defining series: the prefactor `(ac;q)_n`
/// vanishes against the `(ac;q)_k` poles of the terms, the terms below
/// `k = p` drop out, and the ratio `(ac;q)_n/(ac;q)_k` becomes
/// `(q^{1-p+k};q)_{n-k}`.
fn pinned_third_parameter_series(
    n: i64,
    p: i64,
    x: &Scalar,
    a: &Scalar,
    b: &Scalar,
    q: &QBase,
) -> Scalar {
    let pol = TruncationPolicy::for_base(q);
    let prec = q.precision();
    let ab = a * b;
    let ax = a * x;
    let aox = a / x;
    let qmn = q.powi_scalar(-n);
    let mut sum = Scalar::zero(prec);
    for k in p..=n {
        let mut t = qpoch(&qmn, q, PochLen::Finite(k), &pol).unwrap();
        t = &t * &qpoch(&ax, q, PochLen::Finite(k), &pol).unwrap();
        t = &t * &qpoch(&aox, q, PochLen::Finite(k), &pol).unwrap();
        t = &t * &q.powi_scalar(k);
        t = &t * &qpoch(&q.powi_scalar(1 - p + k), q, PochLen::Finite(n - k), &pol).unwrap();
        t = &t / &qpoch(&q.scalar(), q, PochLen::Finite(k), &pol).unwrap();
        t = &t / &qpoch(&ab, q, PochLen::Finite(k), &pol).unwrap();
        sum = &sum + &t;
    }
    let pre = &a.powi(-n) * &qpoch(&ab, q, PochLen::Finite(n), &pol).unwrap();
    &pre * &sum
}

#[test]
fn shift_identity_agrees_with_regularized_limit() {
    let q = qb(0.5);
    let a = s(0.3);
    let b = s(-0.2);
    for x in [s(0.7), cis(0.9, q.precision())] {
        let got = cdqhahn_shifted_at(4, 2, &x, &a, &b, &q).unwrap();
        let want = pinned_third_parameter_series(4, 2, &x, &a, &b, &q);
        assert!(
            got.rel_diff(&want).to_f64() < 1e-24,
            "degree-lowering rewrite must match the regularized series"
        );
    }
}

#[test]
fn shift_identity_vanishes_above_degree() {
    let q = qb(0.5);
    let v = cdqhahn_shifted_at(4, 5, &s(0.7), &s(0.3), &s(-0.2), &q).unwrap();
    assert!(v.is_zero(), "lowered degree below zero must give zero");
}

/// Middle coefficient of the three-term recurrence in the monic-in-`2mu`
/// normalization: `q^n(a+b+c) + abc q^{n-1}(1 - q^n - q^{n+1})`.
///
/// Obtained from the four-parameter recurrence with the fourth parameter
/// sent to zero and checked independently against the hand expansion
/// `p_1 = 2mu - (a+b+c) + abc`.
fn middle_coeff(n: i64, apbpc: &Scalar, abc: &Scalar, q: &QBase) -> Scalar {
    let one = Scalar::one(q.precision());
    let brace = &(&one - &q.powi_scalar(n)) - &q.powi_scalar(n + 1);
    &(&q.powi_scalar(n) * apbpc) + &(&(abc * &q.powi_scalar(n - 1)) * &brace)
}

#[test]
fn recurrence_matches_series() {
    let q = qb(0.5);
    let prec = q.precision();
    let one = Scalar::one(prec);
    let (a, b, c) = (s(0.3), s(-0.2), s(0.4));
    let abc = &(&a * &b) * &c;
    let apbpc = &(&a + &b) + &c;
    for x in [s(0.8), cis(1.1, prec)] {
        let two_mu = &x + &x.recip();
        for n in 1..=8i64 {
            let pm = cdqhahn_at(n as u32 - 1, &x, &a, &b, &c, &q).unwrap();
            let p0 = cdqhahn_at(n as u32, &x, &a, &b, &c, &q).unwrap();
            let pp = cdqhahn_at(n as u32 + 1, &x, &a, &b, &c, &q).unwrap();
            let bn = middle_coeff(n, &apbpc, &abc, &q);
            let mut cn = &one - &q.powi_scalar(n);
            for pr in [&a * &b, &a * &c, &b * &c] {
                cn = &cn * &(&one - &(&pr * &q.powi_scalar(n - 1)));
            }
            let lhs = &two_mu * &p0;
            let rhs = &(&pp + &(&bn * &p0)) + &(&cn * &pm);
            let scale = lhs.abs().max(&rhs.abs()).max(&pp.abs());
            let resid = (&lhs - &rhs).abs() / scale;
            assert!(
                resid.to_f64() < 1e-18,
                "recurrence residual {:e} at n={}",
                resid.to_f64(),
                n
            );
        }
    }
}

#[test]
fn orthonormal_recurrence() {
    let q = qb(0.5);
    let prec = q.precision();
    let one = Scalar::one(prec);
    // circle point with one parameter set, mass point with another that
    // actually carries a mass
    let cases = [
        (
            (s(0.3), s(-0.2), s(0.4)),
            MeasurePoint::Circle {
                theta: Float::with_val(prec.bits(), 1.1),
            },
        ),
        ((s(1.6), s(0.3), s(-0.4)), MeasurePoint::Mass { which: 0, k: 0 }),
    ];
    for ((a, b, c), pt) in &cases {
        let two_mu = match pt {
            MeasurePoint::Circle { theta } => {
                let mu = Scalar::from_real(Float::with_val(prec.bits(), theta).cos());
                &mu + &mu
            }
            MeasurePoint::Mass { which, k } => {
                let params = [a, b, c];
                let xv = params[*which] * &q.powi_scalar(*k as i64);
                &xv + &xv.recip()
            }
        };
        let abc = &(a * b) * c;
        let apbpc = &(a + b) + c;
        for n in 0..=8i64 {
            let f0 = cdqhahn_bar(n as u32, pt, a, b, c, &q).unwrap();
            let fm = if n == 0 {
                Scalar::zero(prec)
            } else {
                cdqhahn_bar(n as u32 - 1, pt, a, b, c, &q).unwrap()
            };
            let fp = cdqhahn_bar(n as u32 + 1, pt, a, b, c, &q).unwrap();
            let bn = middle_coeff(n, &apbpc, &abc, &q);
            let mut up = &one - &q.powi_scalar(n + 1);
            let mut dn = &one - &q.powi_scalar(n);
            for pr in [a * b, a * c, b * c] {
                up = &up * &(&one - &(&pr * &q.powi_scalar(n)));
                dn = &dn * &(&one - &(&pr * &q.powi_scalar(n - 1)));
            }
            let up = Scalar::from_real(up.abs()).sqrt();
            let dn = Scalar::from_real(dn.abs()).sqrt();
            let lhs = &two_mu * &f0;
            let rhs = &(&(&up * &fp) + &(&bn * &f0)) + &(&dn * &fm);
            let scale = lhs.abs().max(&rhs.abs()).max(&fp.abs());
            let resid = (&lhs - &rhs).abs() / scale;
            assert!(
                resid.to_f64() < 1e-18,
                "orthonormal recurrence residual {:e} at n={}",
                resid.to_f64(),
                n
            );
        }
    }
}

fn orthonormality_entry(
    n: u32,
    m: u32,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    masses: &[MeasurePoint],
    q: &QBase,
) -> Scalar {
    let prec = q.precision();
    let spec = QuadratureSpec::new(prec);
    let (mut total, _) = circle_quadrature(
        &|th: &Float| {
            let pt = MeasurePoint::Circle { theta: th.clone() };
            let fn_ = cdqhahn_bar(n, &pt, a, b, c, q)?;
            let fm_ = cdqhahn_bar(m, &pt, a, b, c, q)?;
            let si = Scalar::from_real(Float::with_val(th.prec(), th).sin());
            Ok(&(&fn_ * &fm_) * &si)
        },
        &spec,
        prec,
    )
    .unwrap();
    for pt in masses {
        let fn_ = cdqhahn_bar(n, pt, a, b, c, q).unwrap();
        let fm_ = cdqhahn_bar(m, pt, a, b, c, q).unwrap();
        total = &total + &(&fn_ * &fm_);
    }
    total
}

#[test]
fn circle_orthonormality_without_masses() {
    let q = qb(0.5);
    let (a, b, c) = (s(0.3), s(-0.2), s(0.4));
    for (n, m) in [(0u32, 0u32), (1, 1), (3, 3), (0, 1), (1, 3), (2, 4)] {
        let v = orthonormality_entry(n, m, &a, &b, &c, &[], &q);
        let want = if n == m { 1.0 } else { 0.0 };
        assert!(
            (v.re().to_f64() - want).abs() < 1e-8 && v.im().to_f64().abs() < 1e-8,
            "entry ({},{}) = {:?}",
            n,
            m,
            v.to_f64s()
        );
    }
}

#[test]
fn orthonormality_includes_mass_point() {
    let q = qb(0.5);
    // |a| > 1 puts one point of the a-lattice outside [-1,1]
    let (a, b, c) = (s(1.6), s(0.3), s(-0.4));
    let masses = [MeasurePoint::Mass { which: 0, k: 0 }];
    for (n, m) in [(0u32, 0u32), (1, 1), (2, 2), (2, 1), (0, 2), (3, 1)] {
        let with_mass = orthonormality_entry(n, m, &a, &b, &c, &masses, &q);
        let want = if n == m { 1.0 } else { 0.0 };
        assert!(
            (with_mass.re().to_f64() - want).abs() < 1e-8,
            "entry ({},{}) = {:?}",
            n,
            m,
            with_mass.to_f64s()
        );
        // the continuous part alone must miss the target, so the mass is
        // genuinely load-bearing
        if n == m {
            let without = orthonormality_entry(n, m, &a, &b, &c, &[], &q);
            assert!(
                (without.re().to_f64() - 1.0).abs() > 1e-4,
                "mass point must contribute at ({},{})",
                n,
                m
            );
        }
    }
}

#[test]
fn second_expression_agrees() {
    let q = qb(0.5);
    let prec = q.precision();
    let a = s(0.3);
    let b = s(-0.5);
    let theta = std::f64::consts::PI / 5.0;
    let x = cis(theta, prec);
    let mu = Scalar::from_real(Float::with_val(prec.bits(), theta).cos());
    for n in 0..=4u32 {
        let first = alsalam_chihara(n, &mu, &a, &b, &q).unwrap();
        let second = alsalam_chihara_second(n, &x, &a, &b, &q).unwrap();
        assert!(
            first.rel_diff(&second).to_f64() < 1e-24,
            "expressions disagree at n={}",
            n
        );
    }
}

#[test]
fn vanishing_third_parameter_limit() {
    let q = qb(0.5);
    let prec = q.precision();
    let x = cis(1.0, prec);
    let a = s(0.3);
    let b = s(-0.5);
    let tiny = s(1e-25);
    let mu = Scalar::from_real(Float::with_val(prec.bits(), 1.0).cos());
    let full = cdqhahn_at(5, &x, &a, &b, &tiny, &q).unwrap();
    let sub = alsalam_chihara(5, &mu, &a, &b, &q).unwrap();
    assert!(
        full.rel_diff(&sub).to_f64() < 1e-18,
        "three-parameter family must degenerate to the two-parameter one"
    );
}

#[test]
fn mass_degenerates_with_third_parameter() {
    let q = qb(0.5);
    // aq > 1 so the k = 1 mass point exists
    let a = s(2.5);
    let b = s(0.3);
    let tiny = s(1e-30);
    for k in [0u32, 1u32] {
        let full = cdqhahn_mass(k, 0, &a, &b, &tiny, &q).unwrap();
        let sub = alsalam_chihara_mass(k, 0, &a, &b, &q).unwrap();
        assert!(
            full.rel_diff(&sub).to_f64() < 1e-15,
            "mass mismatch at k={}: {:?} vs {:?}",
            k,
            full.to_f64s(),
            sub.to_f64s()
        );
    }
}
