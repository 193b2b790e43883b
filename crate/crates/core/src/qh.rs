//! Small quantum cohomology of `P^r`, presented as `Z[q][h] / (h^{r+1} - q)`,
//! and the fixed-domain TQFT evaluation of genus-`g` Tevelev degrees.
//!
//! The genus-`g`, `n`-point fixed-domain invariant is the counit of
//! `pt^n * H^g`, where `pt = h^r` and `H = sum_i h^i * h^{r-i}` is the handle
//! element of the Frobenius algebra with pairing `<h^i, h^j> = [i + j = r]`.
//! The counit reads the `h^r` coefficient; the curve degree picks out a power
//! of `q`. Nothing here uses the closed form `(r+1)^g`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// `sum_i coeffs[i](q) * h^i` with `0 <= i <= r`; each polynomial in `q` is a
/// sparse map from exponent to a nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QElement {
    r: u32,
    coeffs: Vec<BTreeMap<u64, BigInt>>,
}

impl QElement {
    pub fn zero(r: u32) -> Self {
        assert!(r >= 1, "ring parameter r must be positive");
        QElement { r, coeffs: vec![BTreeMap::new(); r as usize + 1] }
    }

    pub fn one(r: u32) -> Self {
        Self::monomial(r, 0, 0, BigInt::from(1))
    }

    /// `c * q^k * h^i`, with `h^i` reduced for `i > r`.
    pub fn monomial(r: u32, i: u64, k: u64, c: BigInt) -> Self {
        let mut out = Self::zero(r);
        let period = u64::from(r) + 1;
        out.add_term((i % period) as usize, k + i / period, c);
        out
    }

    pub fn h(r: u32) -> Self {
        Self::monomial(r, 1, 0, BigInt::from(1))
    }

    /// The point class `h^r`.
    pub fn point(r: u32) -> Self {
        Self::monomial(r, u64::from(r), 0, BigInt::from(1))
    }

    pub fn rank(&self) -> u32 {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(BTreeMap::is_empty)
    }

    /// Coefficient of `q^k h^i`.
    pub fn coefficient(&self, i: u32, k: u64) -> BigInt {
        self.coeffs
            .get(i as usize)
            .and_then(|poly| poly.get(&k))
            .cloned()
            .unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(i, poly)| poly.iter().map(move |(k, c)| (i as u32, *k, c)))
    }

    /// Common degree of all terms with `deg h = 1`, `deg q = r + 1`. `None`
    /// for mixed degrees and for zero.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let period = u64::from(self.r) + 1;
        let mut degrees = self.terms().map(|(i, k, _)| u64::from(i) + k * period);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    fn add_term(&mut self, i: usize, k: u64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs[i].entry(k).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs[i].remove(&k);
        }
    }

    pub fn add(&self, other: &QElement) -> Result<QElement> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (i, k, c) in other.terms() {
            out.add_term(i as usize, k, c.clone());
        }
        Ok(out)
    }

    /// Product with `h^{r+1+j}` replaced by `q h^j`.
    pub fn mul(&self, other: &QElement) -> Result<QElement> {
        self.check_rank(other)?;
        let r = self.r as usize;
        let mut out = QElement::zero(self.r);
        for (i, ka, ca) in self.terms() {
            for (j, kb, cb) in other.terms() {
                let mut deg = i as usize + j as usize;
                let mut k = ka + kb;
                if deg > r {
                    deg -= r + 1;
                    k += 1;
                }
                out.add_term(deg, k, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut exp: u64) -> QElement {
        let mut acc = QElement::one(self.r);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same rank");
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base).expect("same rank");
            }
        }
        acc
    }

    /// Coefficient of `h^r`, as a polynomial in `q`.
    pub fn counit(&self) -> &BTreeMap<u64, BigInt> {
        &self.coeffs[self.r as usize]
    }

    fn check_rank(&self, other: &QElement) -> Result<()> {
        if self.r == other.r {
            Ok(())
        } else {
            Err(Error::MismatchedRank(self.r, other.r))
        }
    }
}

pub fn q_mul(a: &QElement, b: &QElement) -> Result<QElement> {
    a.mul(b)
}

/// `sum_{i=0}^{r} h^i * h^{r-i}` over the basis `h^i` and its dual `h^{r-i}`.
pub fn handle_element(r: u32) -> QElement {
    (0..=u64::from(r)).fold(QElement::zero(r), |acc, i| {
        let term = QElement::monomial(r, i, 0, BigInt::from(1))
            .mul(&QElement::monomial(r, u64::from(r) - i, 0, BigInt::from(1)))
            .expect("same rank");
        acc.add(&term).expect("same rank")
    })
}

/// Coefficient of `q^d` in the counit of `pt^n * H^g`. Vanishes whenever the
/// grading is off, i.e. unless `d (r + 1) = r (n + g - 1)`.
pub fn tqft_vtev(r: u32, g: u64, d: u64, n: u64) -> BigInt {
    let product = QElement::point(r)
        .pow(n)
        .mul(&handle_element(r).pow(g))
        .expect("same rank");
    product.counit().get(&d).cloned().unwrap_or_default()
}
