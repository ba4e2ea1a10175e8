//! The twisted primitive combinations of the generators and the central
//! self-adjoint elements built from them. Either deformation parameter may
//! be `f64::INFINITY`, which collapses the corresponding exponential
//! factors to zero and yields the limit forms.

use crate::{QBase, Scalar};

use super::algebra::{AlgebraElement, Gen};

fn qe(q: &QBase, e: f64) -> Scalar {
    q.powf_scalar(e)
}

/// Twisted analogue of a single generator at parameters (tau, sigma).
pub fn build_twisted(g: Gen, tau: f64, sigma: f64, q: &QBase) -> AlgebraElement {
    use Gen::{Alpha, Beta, Delta, Gamma};
    let prec = q.precision();
    let i = Scalar::i(prec);
    let mi = -&i;
    let one = Scalar::one(prec);
    let mone = -&one;
    let rows: [(Scalar, f64, Gen); 4] = match g {
        Alpha => [
            (one.clone(), 0.5, Alpha),
            (mi.clone(), sigma - 0.5, Beta),
            (i.clone(), tau + 0.5, Gamma),
            (one.clone(), sigma + tau - 0.5, Delta),
        ],
        Beta => [
            (mone.clone(), sigma + 0.5, Alpha),
            (mi.clone(), -0.5, Beta),
            (mi.clone(), sigma + tau + 0.5, Gamma),
            (one.clone(), tau - 0.5, Delta),
        ],
        Gamma => [
            (mone.clone(), tau + 0.5, Alpha),
            (i.clone(), tau + sigma - 0.5, Beta),
            (i.clone(), 0.5, Gamma),
            (one.clone(), sigma - 0.5, Delta),
        ],
        Delta => [
            (one.clone(), tau + sigma + 0.5, Alpha),
            (i.clone(), tau - 0.5, Beta),
            (mi.clone(), sigma + 0.5, Gamma),
            (one.clone(), -0.5, Delta),
        ],
    };
    let mut out = AlgebraElement::zero(prec);
    for (pref, e, gen) in rows {
        let coeff = &pref * &qe(q, e);
        out = &out + &AlgebraElement::word(&[gen], &coeff, prec);
    }
    out
}

/// Self-adjoint quadratic element whose spectral decomposition underlies
/// the coupling analysis; limit forms via infinite parameters.
pub fn build_rho(tau: f64, sigma: f64, q: &QBase) -> AlgebraElement {
    use Gen::{Alpha, Beta, Delta, Gamma};
    let prec = q.precision();
    let i = Scalar::i(prec);
    let one = Scalar::one(prec);
    let qinv = q.powi_scalar(-1);
    let mut terms: Vec<(Vec<Gen>, Scalar)> = Vec::new();
    match (tau.is_finite(), sigma.is_finite()) {
        (true, true) => {
            let half = Scalar::from_f64(0.5, prec);
            let csig = &qe(q, -sigma) - &qe(q, sigma);
            let ctau = &qe(q, -tau) - &qe(q, tau);
            terms.push((vec![Alpha, Alpha], half.clone()));
            terms.push((vec![Delta, Delta], half.clone()));
            terms.push((vec![Gamma, Gamma], &half * &q.scalar()));
            terms.push((vec![Beta, Beta], &half * &qinv));
            let isig = &(&i * &csig) * &half;
            terms.push((vec![Delta, Gamma], &isig * &q.scalar()));
            terms.push((vec![Beta, Alpha], isig.clone()));
            let itau = &(&i * &ctau) * &half;
            terms.push((vec![Delta, Beta], -&itau));
            terms.push((vec![Gamma, Alpha], -&(&itau * &q.scalar())));
            // constant term rides on the central word gamma beta; the bare
            // unit fails the quadratic exchange relations at matrix level
            terms.push((vec![Gamma, Beta], &(&csig * &ctau) * &half));
        }
        (true, false) => {
            let front = &i * &qe(q, tau);
            terms.push((vec![Delta, Gamma], front.clone()));
            terms.push((vec![Beta, Alpha], &front * &qinv));
            let tail = &qinv * &(&one - &qe(q, 2.0 * tau));
            terms.push((vec![Gamma, Beta], tail));
        }
        (false, true) => {
            let front = &(-&i) * &qe(q, sigma);
            terms.push((vec![Delta, Beta], &front * &qinv));
            terms.push((vec![Gamma, Alpha], front.clone()));
            let tail = &qinv * &(&one - &qe(q, 2.0 * sigma));
            terms.push((vec![Gamma, Beta], tail));
        }
        (false, false) => {
            terms.push((vec![Gamma, Beta], qinv.clone()));
        }
    }
    let mut out = AlgebraElement::zero(prec);
    for (w, c) in terms {
        out = &out + &AlgebraElement::word(&w, &c, prec);
    }
    out
}
