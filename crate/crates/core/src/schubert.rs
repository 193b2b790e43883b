//! Schubert calculus on `Gr(2, m)` and the two expressions for the geometric
//! Tevelev degrees of `P^1`.
//!
//! Classes are indexed by partitions `(a, b)` with `m - 2 >= a >= b >= 0`.
//! Everything needed reduces to the two-row Pieri rule.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{binom, pow};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchubertCombo {
    m: u32,
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl SchubertCombo {
    pub fn zero(m: u32) -> Self {
        assert!(m >= 2, "Gr(2, m) needs m >= 2");
        SchubertCombo { m, terms: BTreeMap::new() }
    }

    /// The fundamental class `sigma_0`.
    pub fn one(m: u32) -> Self {
        Self::class(m, 0, 0).expect("sigma_0 fits every box")
    }

    pub fn class(m: u32, a: u32, b: u32) -> Result<Self> {
        let mut out = Self::zero(m);
        let width = out.width();
        if a < b || a > width {
            return Err(Error::PartitionOutOfBox { a, b, width });
        }
        out.terms.insert((a, b), BigInt::from(1));
        Ok(out)
    }

    /// Special class `sigma_a`; zero when `a` exceeds the box.
    pub fn special(m: u32, a: u32) -> Self {
        Self::class(m, a, 0).unwrap_or_else(|_| Self::zero(m))
    }

    pub fn top_class(m: u32) -> Self {
        let w = m - 2;
        Self::class(m, w, w).expect("top class fits")
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Width `m - 2` of the partition box.
    pub fn width(&self) -> u32 {
        self.m - 2
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common `a + b` of every stored class, `None` for zero or mixed degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|(a, b)| a + b);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    fn add_term(&mut self, shape: (u32, u32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(shape).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&shape);
        }
    }

    pub fn add(&self, other: &SchubertCombo) -> SchubertCombo {
        assert_eq!(self.m, other.m);
        let mut out = self.clone();
        for (shape, c) in &other.terms {
            out.add_term(*shape, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SchubertCombo) -> SchubertCombo {
        assert_eq!(self.m, other.m);
        let mut out = self.clone();
        for (shape, c) in &other.terms {
            out.add_term(*shape, -c);
        }
        out
    }

    pub fn scale(&self, factor: &BigInt) -> SchubertCombo {
        let mut out = Self::zero(self.m);
        for (shape, c) in &self.terms {
            out.add_term(*shape, c * factor);
        }
        out
    }

    /// `sigma_a * self`: each `sigma_(x, y)` goes to the sum of
    /// `sigma_(x', y')` with `x' + y' = x + y + a` and `x' >= x >= y' >= y`,
    /// truncated to `x' <= m - 2`.
    pub fn pieri_special(&self, a: u32) -> Result<SchubertCombo> {
        let width = self.width();
        if a > width {
            return Err(Error::SpecialClassOutOfBox { a, m: self.m });
        }
        let mut out = Self::zero(self.m);
        for (&(x, y), c) in &self.terms {
            let total = x + y + a;
            // y' ranges over [y, x] and x' = total - y' must lie in [x, width]
            let lo = y.max(total.saturating_sub(width));
            let hi = x.min(total - x);
            for y_new in lo..=hi {
                out.add_term((total - y_new, y_new), c.clone());
            }
        }
        Ok(out)
    }

    /// `sigma_a * self`, treating `sigma_a` as zero outside the box.
    pub fn times_special(&self, a: u32) -> SchubertCombo {
        self.pieri_special(a).unwrap_or_else(|_| Self::zero(self.m))
    }

    /// `self * sigma_(a, b)` via `sigma_(a,b) = sigma_a sigma_b - sigma_{a+1} sigma_{b-1}`.
    pub fn times_class(&self, a: u32, b: u32) -> Result<SchubertCombo> {
        let width = self.width();
        if a < b || a > width {
            return Err(Error::PartitionOutOfBox { a, b, width });
        }
        let main = self.times_special(b).times_special(a);
        if b == 0 {
            return Ok(main);
        }
        let correction = self.times_special(b - 1).times_special(a + 1);
        Ok(main.sub(&correction))
    }

    pub fn mul(&self, other: &SchubertCombo) -> Result<SchubertCombo> {
        assert_eq!(self.m, other.m);
        let mut out = Self::zero(self.m);
        for (&(a, b), c) in &other.terms {
            out = out.add(&self.times_class(a, b)?.scale(c));
        }
        Ok(out)
    }

    /// Degree of the zero-cycle: the multiplicity of the top class.
    pub fn integral(&self) -> BigInt {
        let w = self.width();
        self.terms.get(&(w, w)).cloned().unwrap_or_default()
    }
}

/// `int_{Gr(2, d+1)} sigma_1^g * sum_{a+b = 2d-2-g} sigma_a sigma_b`.
pub fn tev_p1_schubert(g: u32, d: u64) -> Result<BigInt> {
    if d == 0 {
        return Err(Error::InvalidArgument("curve degree d must be >= 1".into()));
    }
    let top = 2 * i64::try_from(d).map_err(|_| Error::InvalidArgument("d too large".into()))? - 2 - i64::from(g);
    if top < 0 {
        return Err(Error::DegreeUnderflow(top));
    }
    let m = u32::try_from(d + 1).map_err(|_| Error::InvalidArgument("d too large".into()))?;
    let width = m - 2;
    let top = top as u32;

    let mut bracket = SchubertCombo::zero(m);
    for a in 0..=top {
        let b = top - a;
        if a > width || b > width {
            continue;
        }
        bracket = bracket.add(&SchubertCombo::special(m, b).times_special(a));
    }
    for _ in 0..g {
        bracket = bracket.times_special(1);
    }
    Ok(bracket.integral())
}

/// `2^g - 2 sum_{i=0}^{-l-2} C(g,i) + (-l-2) C(g,-l-1) + l C(g,-l)` with
/// `l = d - g - 1` and `C(n, k) = 0` outside `0 <= k <= n`.
pub fn tev_p1_binomial(g: u32, d: u64) -> BigInt {
    let g_i = i64::from(g);
    let l = d as i64 - g_i - 1;
    let c = |k: i64| binom(g_i, k).expect("g is nonnegative");
    let mut total = pow(2, u64::from(g));
    // terms with index above g vanish
    for i in 0..=(-l - 2).min(g_i) {
        total -= 2 * c(i);
    }
    total += (-l - 2) * c(-l - 1);
    total += l * c(-l);
    total
}
