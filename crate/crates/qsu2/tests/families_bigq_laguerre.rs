//! Big q-Laguerre polynomials: the regularized index-shift identity,
//! contiguous relations, and orthonormality of the lattice functions.

use qsu2::families::{big_q_laguerre, bql_bar, Branch, SupportPoint};
use qsu2::qkernel::{qpoch, PochLen, TruncationPolicy};
use qsu2::{Precision, QBase, Scalar};

fn qb(q: f64) -> QBase {
    QBase::new(q, Precision::default_precision()).unwrap()
}

fn s(v: f64) -> Scalar {
    Scalar::from_f64(v, Precision::default_precision())
}

#[test]
fn degree_zero_is_one() {
    let q = qb(0.5);
    let one = Scalar::one(q.precision());
    for x in [s(0.3), Scalar::complex(0.2, -0.4, q.precision())] {
        let got = big_q_laguerre(0, &x, &s(0.5), &s(-0.7), &q).unwrap();
        assert!(got.rel_diff(&one).to_f64() < 1e-28, "L_0 = 1");
    }
}

#[test]
fn parameter_swap_symmetry() {
    let q = qb(0.5);
    let a = s(0.5);
    let b = s(-0.7);
    for x in [s(0.3), Scalar::complex(0.25, 0.4, q.precision())] {
        for n in 0..=6u32 {
            let ab = big_q_laguerre(n, &x, &a, &b, &q).unwrap();
            let ba = big_q_laguerre(n, &x, &b, &a, &q).unwrap();
            assert!(
                ab.rel_diff(&ba).to_f64() < 1e-25,
                "a <-> b symmetry at n={n}"
            );
        }
    }
}

/// Sum form of `(q^{1-p};q)_inf L_n(x; q^{-p}, b; q)`: only the terms
/// `k >= p` survive against the vanishing infinite product, leaving
/// `sum_{k=p}^{n} (q^{-n};q)_k (x;q)_k q^k (q^{1-p+k};q)_inf
///  / ((q;q)_k (bq;q)_k)`.
fn regularized_shift_sum(n: i64, p: i64, x: &Scalar, b: &Scalar, q: &QBase) -> Scalar {
    let pol = TruncationPolicy::for_base(&q);
    let qs = q.scalar();
    let bq = b * &qs;
    let qmn = q.powi_scalar(-n);
    let mut acc = Scalar::zero(q.precision());
    for k in p..=n {
        let mut t = qpoch(&qmn, q, PochLen::Finite(k), &pol).unwrap();
        t = &t * &qpoch(x, q, PochLen::Finite(k), &pol).unwrap();
        t = &t * &q.powi_scalar(k);
        t = &t * &qpoch(&q.powi_scalar(1 - p + k), q, PochLen::Infinite, &pol).unwrap();
        t = &t / &qpoch(&qs, q, PochLen::Finite(k), &pol).unwrap();
        t = &t / &qpoch(&bq, q, PochLen::Finite(k), &pol).unwrap();
        acc = &acc + &t;
    }
    acc
}

#[test]
fn index_shift_collapses_degree() {
    let q = qb(0.5);
    let pol = TruncationPolicy::for_base(&q);
    let (n, p) = (5i64, 2i64);
    let x = s(0.3);
    let b = s(-0.7);
    let qs = q.scalar();

    let lhs = regularized_shift_sum(n, p, &x, &b, &q);

    let mut rhs = qpoch(&q.powi_scalar(1 + p), &q, PochLen::Infinite, &pol).unwrap();
    rhs = &rhs * &qpoch(&q.powi_scalar(-n), &q, PochLen::Finite(p), &pol).unwrap();
    rhs = &rhs * &qpoch(&x, &q, PochLen::Finite(p), &pol).unwrap();
    rhs = &rhs * &q.powi_scalar(p);
    rhs = &rhs / &qpoch(&(&b * &qs), &q, PochLen::Finite(p), &pol).unwrap();
    let shifted = big_q_laguerre(
        (n - p) as u32,
        &(&x * &q.powi_scalar(p)),
        &q.powi_scalar(p),
        &(&b * &q.powi_scalar(p)),
        &q,
    )
    .unwrap();
    rhs = &rhs * &shifted;

    assert!(
        lhs.rel_diff(&rhs).to_f64() < 1e-20,
        "degree-lowering identity at n={n}, p={p}"
    );
}

#[test]
fn index_shift_vanishes_above_degree() {
    // q = 1/2 makes q^{1-p} exact in binary, so the vanishing factor of the
    // infinite product is hit exactly
    let q = qb(0.5);
    let pol = TruncationPolicy::for_base(&q);
    let (n, p) = (5u32, 7i64);
    let reg = qpoch(&q.powi_scalar(1 - p), &q, PochLen::Infinite, &pol).unwrap();
    let ln = big_q_laguerre(n, &s(0.3), &q.powi_scalar(-p), &s(-0.7), &q).unwrap();
    let v = &reg * &ln;
    assert!(ln.is_finite());
    assert!(v.abs().to_f64() < 1e-30, "p > n regularized value is zero");
}

fn point_on_a(idx: i64, a: &Scalar) -> SupportPoint {
    SupportPoint::new(Branch::First, a.clone(), 1, idx)
}

fn point_on_b(idx: i64, b: &Scalar) -> SupportPoint {
    SupportPoint::new(Branch::Second, b.clone(), 1, idx)
}

#[test]
fn lattice_orthonormality() {
    let q = qb(0.5);
    let a = s(0.5);
    let b = s(-0.7);
    let mut cross = Scalar::zero(q.precision());
    let mut diag = Scalar::zero(q.precision());
    for k in 1..=200i64 {
        for x in [point_on_a(k, &a), point_on_b(k, &b)] {
            let l2 = bql_bar(2, &x, &a, &b, &q).unwrap();
            let l3 = bql_bar(3, &x, &a, &b, &q).unwrap();
            cross = &cross + &(&l2 * &l3);
            diag = &diag + &(&l2 * &l2);
        }
    }
    assert!(cross.abs().to_f64() < 1e-10, "off-diagonal sum");
    let d = diag.rel_diff(&Scalar::one(q.precision())).to_f64();
    assert!(d < 1e-10, "diagonal sum normalizes to 1, err {d}");
}

#[test]
fn dual_orthonormality() {
    let q = qb(0.6);
    let a = s(0.5);
    let b = s(-0.7);
    let x = point_on_a(3, &a);
    let y = point_on_b(2, &b);
    let mut cross = Scalar::zero(q.precision());
    let mut diag = Scalar::zero(q.precision());
    for n in 0..=120u32 {
        let fx = bql_bar(n, &x, &a, &b, &q).unwrap();
        let fy = bql_bar(n, &y, &a, &b, &q).unwrap();
        cross = &cross + &(&fx * &fy);
        diag = &diag + &(&fx * &fx);
    }
    assert!(cross.abs().to_f64() < 1e-10, "distinct points sum to zero");
    let d = diag.rel_diff(&Scalar::one(q.precision())).to_f64();
    assert!(d < 1e-10, "same point sums to 1, err {d}");
}

/// `(x/(bq)) barL_n = [q^n(a/b + a + 1) - aq^{2n}(1+q)] barL_n
///  - q^{n/2} sqrt(-a/b (1-q^{n+1})(1-aq^{n+1})(1-bq^{n+1})) barL_{n+1}
///  - q^{(n-1)/2} sqrt(-a/b (1-q^n)(1-aq^n)(1-bq^n)) barL_{n-1}`.
#[test]
fn orthonormal_recurrence() {
    let q = qb(0.5);
    let prec = q.precision();
    let one = Scalar::one(prec);
    let a = s(0.5);
    let b = s(-0.7);
    let mab = -&(&a / &b);
    for x in [point_on_a(3, &a), point_on_b(2, &b)] {
        let xv = x.value(&q);
        for n in 0..=8i64 {
            let fn0 = bql_bar(n as u32, &x, &a, &b, &q).unwrap();
            let fn1 = bql_bar(n as u32 + 1, &x, &a, &b, &q).unwrap();
            let fnm = if n == 0 {
                Scalar::zero(prec)
            } else {
                bql_bar(n as u32 - 1, &x, &a, &b, &q).unwrap()
            };
            let lhs = &(&xv / &(&b * &q.scalar())) * &fn0;

            let mid = &(&(&a / &b) + &(&a + &one)) * &q.powi_scalar(n);
            let mid2 = &(&a * &q.powi_scalar(2 * n)) * &(&one + &q.scalar());
            let c0 = &mid - &mid2;

            let up_f1 = &one - &q.powi_scalar(n + 1);
            let up_f2 = &one - &(&a * &q.powi_scalar(n + 1));
            let up_f3 = &one - &(&b * &q.powi_scalar(n + 1));
            let up_rad = &(&(&mab * &up_f1) * &up_f2) * &up_f3;
            let cu = &Scalar::from_real(q.powf(n as f64 / 2.0)) * &up_rad.sqrt();

            let dn_f1 = &one - &q.powi_scalar(n);
            let dn_f2 = &one - &(&a * &q.powi_scalar(n));
            let dn_f3 = &one - &(&b * &q.powi_scalar(n));
            let dn_rad = &(&(&mab * &dn_f1) * &dn_f2) * &dn_f3;
            let cd = &Scalar::from_real(q.powf((n as f64 - 1.0) / 2.0)) * &dn_rad.sqrt();

            let mut rhs = &c0 * &fn0;
            rhs = &rhs - &(&cu * &fn1);
            rhs = &rhs - &(&cd * &fnm);

            let scale = lhs
                .abs()
                .max(&rhs.abs())
                .max(&fn0.abs())
                .max(&Scalar::one(prec).abs());
            let resid = (&lhs - &rhs).abs() / scale;
            assert!(
                resid.to_f64() < 1e-18,
                "orthonormal recurrence residual {resid} at n={n}"
            );
        }
    }
}

/// `(1 - x/(bq)) L_n(x; a, bq; q)
///  = (1 - 1/(bq))(1 - aq^{n+1}) L_{n+1}(x; a, b; q)
///    - (a/b)(1 - bq) q^n L_n(x; a, b; q)`, and the a <-> b mirror.
#[test]
fn contiguous_parameter_raising() {
    let q = qb(0.5);
    let prec = q.precision();
    let one = Scalar::one(prec);
    let qs = q.scalar();
    let a = s(0.5);
    let b = s(-0.7);
    for x in [s(0.3), Scalar::complex(0.25, 0.4, prec)] {
        for n in 0..=6u32 {
            let nn = n as i64;

            let bq = &b * &qs;
            let lhs = &(&one - &(&x / &bq)) * &big_q_laguerre(n, &x, &a, &bq, &q).unwrap();
            let f1 = &(&one - &bq.recip()) * &(&one - &(&a * &q.powi_scalar(nn + 1)));
            let mut rhs = &f1 * &big_q_laguerre(n + 1, &x, &a, &b, &q).unwrap();
            let f2 = &(&(&a / &b) * &(&one - &bq)) * &q.powi_scalar(nn);
            rhs = &rhs - &(&f2 * &big_q_laguerre(n, &x, &a, &b, &q).unwrap());
            assert!(
                lhs.rel_diff(&rhs).to_f64() < 1e-18,
                "contiguous relation at n={n}"
            );

            let aq = &a * &qs;
            let lhs2 = &(&one - &(&x / &aq)) * &big_q_laguerre(n, &x, &aq, &b, &q).unwrap();
            let g1 = &(&one - &aq.recip()) * &(&one - &(&b * &q.powi_scalar(nn + 1)));
            let mut rhs2 = &g1 * &big_q_laguerre(n + 1, &x, &a, &b, &q).unwrap();
            let g2 = &(&(&b / &a) * &(&one - &aq)) * &q.powi_scalar(nn);
            rhs2 = &rhs2 - &(&g2 * &big_q_laguerre(n, &x, &a, &b, &q).unwrap());
            assert!(
                lhs2.rel_diff(&rhs2).to_f64() < 1e-18,
                "mirrored contiguous relation at n={n}"
            );
        }
    }
}
