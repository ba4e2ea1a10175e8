//! Truncated matrix realizations of algebra elements on the standard basis
//! ladder, with bookkeeping for which columns survive truncation exactly.
//!
//! A single generator word acts as a weighted shift: each basis column maps
//! to at most one basis row. A word of length d read off column k only ever
//! visits indices within d of k, so columns k <= N-1-d of the size-N
//! truncation agree with the untruncated operator. Comparisons restrict to
//! that exact block; everything nearer the boundary is projection artifact.

use nalgebra::DMatrix;
use rug::Float;

use crate::{CoreError, QBase, Result, Scalar};

use super::algebra::{AlgebraElement, Gen, Tensor3Element, TensorElement};

/// Sparse column-major truncation of an operator on a tensor power of the
/// basis ladder. `legs` holds the truncation size per tensor leg, `margins`
/// the per-leg word degrees that delimit the exact block.
#[derive(Debug, Clone)]
pub struct BandedOperator {
    legs: Vec<usize>,
    margins: Vec<usize>,
    prec: crate::Precision,
    cols: Vec<Vec<(usize, Scalar)>>,
}

fn phase(phi: f64, prec: crate::Precision) -> (Scalar, Scalar) {
    let angle = Float::with_val(prec.bits(), phi);
    let eip = Scalar::cis(&angle);
    let emip = eip.conj();
    (eip, emip)
}

/// Follow one word from basis index `col`, rightmost letter first.
/// Returns the landing index and accumulated factor, or None when the walk
/// annihilates the vector or leaves the size-n window.
fn walk_word(
    word: &[Gen],
    col: usize,
    n: usize,
    q: &QBase,
    eip: &Scalar,
    emip: &Scalar,
) -> Option<(usize, Scalar)> {
    let prec = q.precision();
    let mut idx = col as i64;
    let mut f = Scalar::one(prec);
    for g in word.iter().rev() {
        match g {
            Gen::Alpha => {
                if idx == 0 {
                    return None;
                }
                let w = Float::with_val(prec.bits(), 1u32) - q.powi(2 * idx);
                f = &f * &Scalar::from_real(w.sqrt());
                idx -= 1;
            }
            Gen::Beta => {
                let step = emip * &q.powi_scalar(idx + 1);
                f = &f * &-&step;
            }
            Gen::Gamma => {
                f = &f * &(eip * &q.powi_scalar(idx));
            }
            Gen::Delta => {
                let w = Float::with_val(prec.bits(), 1u32) - q.powi(2 * idx + 2);
                f = &f * &Scalar::from_real(w.sqrt());
                idx += 1;
                if idx >= n as i64 {
                    return None;
                }
            }
        }
    }
    Some((idx as usize, f))
}

fn freeze(builder: Vec<std::collections::BTreeMap<usize, Scalar>>) -> Vec<Vec<(usize, Scalar)>> {
    builder
        .into_iter()
        .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
        .collect()
}

/// Matrix of `e` on the size-n truncation, with the phase parameter of the
/// underlying family of representations.
pub fn represent(e: &AlgebraElement, phi: f64, n: usize, q: &QBase) -> BandedOperator {
    let prec = q.precision();
    let (eip, emip) = phase(phi, prec);
    let mut builder = vec![std::collections::BTreeMap::new(); n];
    for (word, coeff) in e.terms() {
        for col in 0..n {
            if let Some((row, f)) = walk_word(word, col, n, q, &eip, &emip) {
                let val = coeff * &f;
                accumulate_col(&mut builder[col], row, val);
            }
        }
    }
    BandedOperator {
        legs: vec![n],
        margins: vec![e.degree()],
        prec,
        cols: freeze(builder),
    }
}

/// Matrix of a twofold tensor element on the n x n truncation, legs carrying
/// phases phi and psi.
pub fn represent_tensor(
    t: &TensorElement,
    phi: f64,
    psi: f64,
    n: usize,
    q: &QBase,
) -> BandedOperator {
    let prec = q.precision();
    let (eip1, emip1) = phase(phi, prec);
    let (eip2, emip2) = phase(psi, prec);
    let dim = n * n;
    let mut builder = vec![std::collections::BTreeMap::new(); dim];
    for ((w1, w2), coeff) in t.terms() {
        for c1 in 0..n {
            let hop1 = walk_word(w1, c1, n, q, &eip1, &emip1);
            let Some((r1, f1)) = hop1 else { continue };
            let lead = coeff * &f1;
            for c2 in 0..n {
                if let Some((r2, f2)) = walk_word(w2, c2, n, q, &eip2, &emip2) {
                    let val = &lead * &f2;
                    accumulate_col(&mut builder[c1 * n + c2], r1 * n + r2, val);
                }
            }
        }
    }
    let degs = t.degrees();
    BandedOperator {
        legs: vec![n, n],
        margins: vec![degs.0, degs.1],
        prec,
        cols: freeze(builder),
    }
}

/// Matrix of a threefold tensor element on the n x n x n truncation.
pub fn represent3(
    t: &Tensor3Element,
    phases: (f64, f64, f64),
    n: usize,
    q: &QBase,
) -> BandedOperator {
    let prec = q.precision();
    let ph: Vec<(Scalar, Scalar)> = [phases.0, phases.1, phases.2]
        .iter()
        .map(|p| phase(*p, prec))
        .collect();
    let dim = n * n * n;
    let mut builder = vec![std::collections::BTreeMap::new(); dim];
    for ((w1, w2, w3), coeff) in t.terms() {
        for c1 in 0..n {
            let Some((r1, f1)) = walk_word(w1, c1, n, q, &ph[0].0, &ph[0].1) else {
                continue;
            };
            let lead1 = coeff * &f1;
            for c2 in 0..n {
                let Some((r2, f2)) = walk_word(w2, c2, n, q, &ph[1].0, &ph[1].1) else {
                    continue;
                };
                let lead2 = &lead1 * &f2;
                for c3 in 0..n {
                    if let Some((r3, f3)) = walk_word(w3, c3, n, q, &ph[2].0, &ph[2].1) {
                        let val = &lead2 * &f3;
                        accumulate_col(
                            &mut builder[(c1 * n + c2) * n + c3],
                            (r1 * n + r2) * n + r3,
                            val,
                        );
                    }
                }
            }
        }
    }
    let degs = t.degrees();
    BandedOperator {
        legs: vec![n, n, n],
        margins: vec![degs.0, degs.1, degs.2],
        prec,
        cols: freeze(builder),
    }
}

fn accumulate_col(col: &mut std::collections::BTreeMap<usize, Scalar>, row: usize, val: Scalar) {
    if let Some(existing) = col.get_mut(&row) {
        *existing = &*existing + &val;
    } else {
        col.insert(row, val);
    }
}

impl BandedOperator {
    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    pub fn margins(&self) -> &[usize] {
        &self.margins
    }

    pub fn dim(&self) -> usize {
        self.legs.iter().product()
    }

    /// Per-leg multi-index of a flat basis index, leftmost leg slowest.
    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.legs.len()];
        for (slot, n) in self.legs.iter().enumerate().rev() {
            out[slot] = flat % n;
            flat /= n;
        }
        out
    }

    fn column_exact(&self, flat: usize, margins: &[usize]) -> bool {
        let multi = self.multi_index(flat);
        multi
            .iter()
            .zip(self.legs.iter())
            .zip(margins.iter())
            .all(|((i, n), d)| *d < *n && *i <= n - 1 - d)
    }

    pub fn entry(&self, row: usize, col: usize) -> Scalar {
        for (r, v) in &self.cols[col] {
            if *r == row {
                return v.clone();
            }
        }
        Scalar::zero(self.prec)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.dim());
        let mut out = vec![Scalar::zero(self.prec); v.len()];
        for (col, entries) in self.cols.iter().enumerate() {
            if v[col].is_zero() {
                continue;
            }
            for (row, s) in entries {
                let add = s * &v[col];
                out[*row] = &out[*row] + &add;
            }
        }
        out
    }

    /// Largest entry deviation between `self` and `other` over the block of
    /// columns both operators computed exactly.
    pub fn difference_max(&self, other: &BandedOperator) -> Result<Float> {
        if self.legs != other.legs {
            return Err(CoreError::InvalidArgument {
                ctx: "difference_max: truncation shapes disagree".into(),
            });
        }
        let margins: Vec<usize> = self
            .margins
            .iter()
            .zip(other.margins.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        for (n, d) in self.legs.iter().zip(margins.iter()) {
            if *d >= *n {
                return Err(CoreError::DegreeOverflow { degree: *d, n: *n });
            }
        }
        let mut max = Float::with_val(self.prec.bits(), 0u32);
        for flat in 0..self.dim() {
            if !self.column_exact(flat, &margins) {
                continue;
            }
            let mut rows: std::collections::BTreeSet<usize> = std::collections::BTreeSet::new();
            for (r, _) in &self.cols[flat] {
                rows.insert(*r);
            }
            for (r, _) in &other.cols[flat] {
                rows.insert(*r);
            }
            for r in rows {
                let d = &self.entry(r, flat) - &other.entry(r, flat);
                let a = d.abs();
                if a > max {
                    max = a;
                }
            }
        }
        Ok(max)
    }

    /// Largest deviation from `other` being the conjugate transpose of
    /// `self`, over the exact block in both slots.
    pub fn adjoint_difference(&self, other: &BandedOperator) -> Result<Float> {
        if self.legs != other.legs {
            return Err(CoreError::InvalidArgument {
                ctx: "adjoint_difference: truncation shapes disagree".into(),
            });
        }
        let margins: Vec<usize> = self
            .margins
            .iter()
            .zip(other.margins.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        for (n, d) in self.legs.iter().zip(margins.iter()) {
            if *d >= *n {
                return Err(CoreError::DegreeOverflow { degree: *d, n: *n });
            }
        }
        let mut max = Float::with_val(self.prec.bits(), 0u32);
        for flat in 0..self.dim() {
            if !self.column_exact(flat, &margins) {
                continue;
            }
            for (row, v) in &self.cols[flat] {
                if !self.column_exact(*row, &margins) {
                    continue;
                }
                let d = v - &other.entry(flat, *row).conj();
                let a = d.abs();
                if a > max {
                    max = a;
                }
            }
            // entries of other* absent from self
            for (row, v) in &other.cols[flat] {
                if !self.column_exact(*row, &margins) {
                    continue;
                }
                let d = &self.entry(flat, *row) - &v.conj();
                let a = d.abs();
                if a > max {
                    max = a;
                }
            }
        }
        Ok(max)
    }
}

/// Max-norm residual of lhs = rhs as operators, measured on the exact block.
pub fn verify_relation(
    lhs: &AlgebraElement,
    rhs: &AlgebraElement,
    phi: f64,
    n: usize,
    q: &QBase,
) -> Result<Float> {
    represent(lhs, phi, n, q).difference_max(&represent(rhs, phi, n, q))
}

/// Twofold tensor variant of [`verify_relation`].
pub fn verify_relation_tensor(
    lhs: &TensorElement,
    rhs: &TensorElement,
    phi: f64,
    psi: f64,
    n: usize,
    q: &QBase,
) -> Result<Float> {
    represent_tensor(lhs, phi, psi, n, q).difference_max(&represent_tensor(rhs, phi, psi, n, q))
}

/// Threefold tensor variant of [`verify_relation`].
pub fn verify_relation3(
    lhs: &Tensor3Element,
    rhs: &Tensor3Element,
    phases: (f64, f64, f64),
    n: usize,
    q: &QBase,
) -> Result<Float> {
    represent3(lhs, phases, n, q).difference_max(&represent3(rhs, phases, n, q))
}

/// Euclidean norm of a coefficient vector.
pub fn norm2(v: &[Scalar]) -> Float {
    let bits = v
        .iter()
        .map(|s| s.prec())
        .max()
        .unwrap_or(crate::Precision::default_precision().bits());
    let mut acc = Float::with_val(bits, 0u32);
    for s in v {
        acc += s.abs2();
    }
    acc.sqrt()
}

/// Relative residual of op v = mu v for the candidate eigenvector whose
/// coefficients come from `coeff` at each multi-index of the truncation.
///
/// Truncating a genuine eigenvector only makes sense when its weight near
/// the boundary is negligible; otherwise the error reports TailTooFat.
pub fn eigen_residual(
    op: &BandedOperator,
    coeff: &dyn Fn(&[usize]) -> Result<Scalar>,
    eigenvalue: &Scalar,
    tail_tol: f64,
) -> Result<Float> {
    let dim = op.dim();
    let mut v = Vec::with_capacity(dim);
    for flat in 0..dim {
        let multi = op.multi_index(flat);
        v.push(coeff(&multi)?);
    }
    let norm = norm2(&v);
    if norm.is_zero() {
        return Err(CoreError::InvalidArgument {
            ctx: "eigen_residual: candidate vector vanishes on the truncation".into(),
        });
    }
    let cutoff = Float::with_val(norm.prec(), tail_tol) * &norm;
    let margins = op.margins().to_vec();
    for (flat, s) in v.iter().enumerate() {
        if op.column_exact(flat, &margins) {
            continue;
        }
        if s.abs() > cutoff {
            return Err(CoreError::TailTooFat {
                ctx: format!(
                    "index {:?} carries weight {:.2e} of the vector norm",
                    op.multi_index(flat),
                    (s.abs() / &norm).to_f64()
                ),
            });
        }
    }
    let image = op.apply(&v);
    let mut r = Vec::with_capacity(dim);
    for (iv, s) in image.iter().zip(v.iter()) {
        let shift = eigenvalue * s;
        r.push(iv - &shift);
    }
    Ok(norm2(&r) / &norm)
}

/// Eigenvalues of the symmetrized truncation, ascending.
///
/// The operator is compressed to P H P with no boundary correction, so only
/// eigenvalues separated from the essential accumulation are meaningful;
/// callers compare against model predictions with that in mind. Requires the
/// stored matrix to be Hermitian on the nose (self-adjoint elements).
pub fn truncated_spectrum(op: &BandedOperator) -> Result<Vec<f64>> {
    let d = op.dim();
    let mut a = DMatrix::<f64>::zeros(d, d);
    let mut b = DMatrix::<f64>::zeros(d, d);
    for (col, entries) in op.cols.iter().enumerate() {
        for (row, s) in entries {
            let (re, im) = s.to_f64s();
            if !re.is_finite() || !im.is_finite() {
                return Err(CoreError::InvalidArgument {
                    ctx: "truncated_spectrum: non-finite entry".into(),
                });
            }
            a[(*row, col)] = re;
            b[(*row, col)] = im;
        }
    }
    let herm = (&a - a.transpose()).abs().max() + (&b + b.transpose()).abs().max();
    let scale = a.abs().max() + b.abs().max();
    if herm > 1e-10 * (1.0 + scale) {
        return Err(CoreError::InvalidArgument {
            ctx: "truncated_spectrum: matrix is not Hermitian".into(),
        });
    }
    // Real embedding [[A, -B], [B, A]] of A + iB doubles each eigenvalue.
    let mut m = DMatrix::<f64>::zeros(2 * d, 2 * d);
    m.view_mut((0, 0), (d, d)).copy_from(&a);
    m.view_mut((d, d), (d, d)).copy_from(&a);
    m.view_mut((0, d), (d, d)).copy_from(&(-&b));
    m.view_mut((d, 0), (d, d)).copy_from(&b);
    let eig = nalgebra::SymmetricEigen::new(m);
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(vals.into_iter().step_by(2).collect())
}
