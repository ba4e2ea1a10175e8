//! Formal linear combinations of generator words, the star structure, and
//! the coproduct into two- and threefold tensor legs. No normal ordering is
//! performed: equality of elements is decided downstream at matrix level.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::{Precision, QBase, Scalar};

/// One of the four algebra generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    Alpha,
    Beta,
    Gamma,
    Delta,
}

/// A finite product of generators; the empty word is the unit.
pub type GeneratorWord = Vec<Gen>;

/// Finite Scalar-linear combination of generator words.
///
/// Zero coefficients are pruned eagerly, so `terms` only ever holds words
/// that actually contribute.
#[derive(Debug, Clone)]
pub struct AlgebraElement {
    prec: Precision,
    terms: BTreeMap<GeneratorWord, Scalar>,
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, Scalar>, key: K, val: Scalar) {
    if let Some(existing) = map.get_mut(&key) {
        let sum = &*existing + &val;
        if sum.is_zero() {
            map.remove(&key);
        } else {
            *existing = sum;
        }
    } else if !val.is_zero() {
        map.insert(key, val);
    }
}

impl AlgebraElement {
    pub fn zero(prec: Precision) -> Self {
        AlgebraElement {
            prec,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(prec: Precision) -> Self {
        Self::word(&[], &Scalar::one(prec), prec)
    }

    pub fn generator(g: Gen, prec: Precision) -> Self {
        Self::word(&[g], &Scalar::one(prec), prec)
    }

    pub fn word(w: &[Gen], coeff: &Scalar, prec: Precision) -> Self {
        let mut terms = BTreeMap::new();
        accumulate(&mut terms, w.to_vec(), coeff.clone());
        AlgebraElement { prec, terms }
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GeneratorWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Length of the longest word with a nonzero coefficient.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut terms = BTreeMap::new();
        for (w, v) in &self.terms {
            accumulate(&mut terms, w.clone(), c * v);
        }
        AlgebraElement {
            prec: self.prec,
            terms,
        }
    }

    /// Antilinear antihomomorphism generated by a* = d, b* = -q c,
    /// c* = -b/q, d* = a.
    pub fn star(&self, q: &QBase) -> Self {
        let minus_q = -&q.scalar();
        let minus_qinv = -&q.powi_scalar(-1);
        let mut terms = BTreeMap::new();
        for (w, v) in &self.terms {
            let mut coeff = v.conj();
            let mut word = Vec::with_capacity(w.len());
            for g in w.iter().rev() {
                let mapped = match g {
                    Gen::Alpha => Gen::Delta,
                    Gen::Beta => {
                        coeff = &coeff * &minus_q;
                        Gen::Gamma
                    }
                    Gen::Gamma => {
                        coeff = &coeff * &minus_qinv;
                        Gen::Beta
                    }
                    Gen::Delta => Gen::Alpha,
                };
                word.push(mapped);
            }
            accumulate(&mut terms, word, coeff);
        }
        AlgebraElement {
            prec: self.prec,
            terms,
        }
    }

    /// Homomorphism extension of the generator comultiplication rules.
    pub fn coproduct(&self) -> TensorElement {
        let prec = self.prec;
        let mut out = TensorElement::zero(prec);
        for (w, v) in &self.terms {
            let mut t = TensorElement::unit(prec);
            for g in w {
                t = &t * &generator_coproduct(*g, prec);
            }
            out = &out + &t.scale(v);
        }
        out
    }

    /// Both association orders of the twofold-iterated coproduct, in the
    /// order (delta x 1)delta, (1 x delta)delta.
    pub fn coproduct3(&self) -> (Tensor3Element, Tensor3Element) {
        let two = self.coproduct();
        (two.coproduct_first(), two.coproduct_second())
    }
}

fn generator_coproduct(g: Gen, prec: Precision) -> TensorElement {
    use Gen::{Alpha, Beta, Delta, Gamma};
    let one = Scalar::one(prec);
    let (first, second) = match g {
        Alpha => ((Alpha, Alpha), (Beta, Gamma)),
        Beta => ((Alpha, Beta), (Beta, Delta)),
        Gamma => ((Gamma, Alpha), (Delta, Gamma)),
        Delta => ((Delta, Delta), (Gamma, Beta)),
    };
    let mut t = TensorElement::zero(prec);
    t.insert(vec![first.0], vec![first.1], one.clone());
    t.insert(vec![second.0], vec![second.1], one);
    t
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut terms = self.terms.clone();
        for (w, v) in &rhs.terms {
            accumulate(&mut terms, w.clone(), v.clone());
        }
        AlgebraElement {
            prec: self.prec,
            terms,
        }
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self + &(-rhs)
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        let mut terms = BTreeMap::new();
        for (w, v) in &self.terms {
            terms.insert(w.clone(), -v);
        }
        AlgebraElement {
            prec: self.prec,
            terms,
        }
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut terms = BTreeMap::new();
        for (w1, v1) in &self.terms {
            for (w2, v2) in &rhs.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                accumulate(&mut terms, w, v1 * v2);
            }
        }
        AlgebraElement {
            prec: self.prec,
            terms,
        }
    }
}

/// Finite Scalar-linear combination of twofold tensor words.
#[derive(Debug, Clone)]
pub struct TensorElement {
    prec: Precision,
    terms: BTreeMap<(GeneratorWord, GeneratorWord), Scalar>,
}

impl TensorElement {
    pub fn zero(prec: Precision) -> Self {
        TensorElement {
            prec,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(prec: Precision) -> Self {
        let mut t = Self::zero(prec);
        t.insert(Vec::new(), Vec::new(), Scalar::one(prec));
        t
    }

    /// The simple tensor a x b, expanded bilinearly.
    pub fn product(a: &AlgebraElement, b: &AlgebraElement) -> Self {
        let prec = a.precision();
        let mut t = Self::zero(prec);
        for (w1, v1) in a.terms() {
            for (w2, v2) in b.terms() {
                t.insert(w1.clone(), w2.clone(), v1 * v2);
            }
        }
        t
    }

    fn insert(&mut self, w1: GeneratorWord, w2: GeneratorWord, val: Scalar) {
        accumulate(&mut self.terms, (w1, w2), val);
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(GeneratorWord, GeneratorWord), &Scalar)> {
        self.terms.iter()
    }

    /// Leg-wise maxima of word lengths.
    pub fn degrees(&self) -> (usize, usize) {
        let mut d = (0, 0);
        for (w1, w2) in self.terms.keys() {
            d.0 = d.0.max(w1.len());
            d.1 = d.1.max(w2.len());
        }
        d
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut t = Self::zero(self.prec);
        for (k, v) in &self.terms {
            t.insert(k.0.clone(), k.1.clone(), c * v);
        }
        t
    }

    /// Apply the comultiplication to the first leg.
    pub fn coproduct_first(&self) -> Tensor3Element {
        let mut out = Tensor3Element::zero(self.prec);
        for ((w1, w2), v) in &self.terms {
            let expanded = AlgebraElement::word(w1, &Scalar::one(self.prec), self.prec).coproduct();
            for ((u1, u2), d) in expanded.terms() {
                out.insert(u1.clone(), u2.clone(), w2.clone(), v * d);
            }
        }
        out
    }

    /// Apply the comultiplication to the second leg.
    pub fn coproduct_second(&self) -> Tensor3Element {
        let mut out = Tensor3Element::zero(self.prec);
        for ((w1, w2), v) in &self.terms {
            let expanded = AlgebraElement::word(w2, &Scalar::one(self.prec), self.prec).coproduct();
            for ((u1, u2), d) in expanded.terms() {
                out.insert(w1.clone(), u1.clone(), u2.clone(), v * d);
            }
        }
        out
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.insert(k.0.clone(), k.1.clone(), v.clone());
        }
        out
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        let minus_one = -&Scalar::one(self.prec);
        self + &rhs.scale(&minus_one)
    }
}

impl Mul for &TensorElement {
    type Output = TensorElement;
    fn mul(self, rhs: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(self.prec);
        for ((a1, a2), v1) in &self.terms {
            for ((b1, b2), v2) in &rhs.terms {
                let mut w1 = a1.clone();
                w1.extend_from_slice(b1);
                let mut w2 = a2.clone();
                w2.extend_from_slice(b2);
                out.insert(w1, w2, v1 * v2);
            }
        }
        out
    }
}

/// Finite Scalar-linear combination of threefold tensor words.
#[derive(Debug, Clone)]
pub struct Tensor3Element {
    prec: Precision,
    terms: BTreeMap<(GeneratorWord, GeneratorWord, GeneratorWord), Scalar>,
}

impl Tensor3Element {
    pub fn zero(prec: Precision) -> Self {
        Tensor3Element {
            prec,
            terms: BTreeMap::new(),
        }
    }

    fn insert(&mut self, w1: GeneratorWord, w2: GeneratorWord, w3: GeneratorWord, val: Scalar) {
        accumulate(&mut self.terms, (w1, w2, w3), val);
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn terms(
        &self,
    ) -> impl Iterator<Item = (&(GeneratorWord, GeneratorWord, GeneratorWord), &Scalar)> {
        self.terms.iter()
    }

    pub fn degrees(&self) -> (usize, usize, usize) {
        let mut d = (0, 0, 0);
        for (w1, w2, w3) in self.terms.keys() {
            d.0 = d.0.max(w1.len());
            d.1 = d.1.max(w2.len());
            d.2 = d.2.max(w3.len());
        }
        d
    }
}
