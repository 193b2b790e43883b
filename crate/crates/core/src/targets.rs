//! Target varieties and well-posedness of a Tevelev count.
//!
//! Curve classes are a single degree `d` against the ample generator, so the
//! first Chern class pairs with a degree-`d` class as `d * I` where `I` is the
//! Fano index per unit degree.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TargetKind {
    ProjectiveSpace,
    Hypersurface,
    Quadric,
    Homogeneous,
    Custom,
}

impl TargetKind {
    pub fn name(self) -> &'static str {
        match self {
            TargetKind::ProjectiveSpace => "ProjectiveSpace",
            TargetKind::Hypersurface => "Hypersurface",
            TargetKind::Quadric => "Quadric",
            TargetKind::Homogeneous => "Homogeneous",
            TargetKind::Custom => "Custom",
        }
    }
}

/// A Picard-rank-one target `X` of dimension `r`.
///
/// `s_bound` and `t_bound` hold `s(X)` and `t(X)` (the minimal anticanonical
/// degrees of a covering, resp. arbitrary, effective curve class) or lower
/// bounds for them. For homogeneous and custom targets they are asserted by
/// the caller and never derived.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TargetSpec {
    kind: TargetKind,
    dim: u32,
    degree: u32,
    index: u32,
    s_bound: Option<u32>,
    t_bound: Option<u32>,
    ci_degrees: Vec<u32>,
    h1_bound: Option<u64>,
}

impl TargetSpec {
    pub fn projective(r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidArgument("projective space needs r >= 1".into()));
        }
        Ok(TargetSpec {
            kind: TargetKind::ProjectiveSpace,
            dim: r,
            degree: 1,
            index: r + 1,
            s_bound: Some(r + 1),
            t_bound: Some(r + 1),
            ci_degrees: Vec::new(),
            h1_bound: None,
        })
    }

    /// Degree-`e` hypersurface of dimension `r` in `P^{r+1}`. A hyperplane is
    /// returned as `P^r` and a quadric as [`TargetKind::Quadric`].
    pub fn hypersurface(e: u32, r: u32) -> Result<Self> {
        if e == 0 || r == 0 {
            return Err(Error::InvalidArgument("hypersurface needs e >= 1 and r >= 1".into()));
        }
        if e > r + 1 {
            return Err(Error::NonFano(format!(
                "degree {e} hypersurface of dimension {r} has index r + 2 - e = {}",
                r as i64 + 2 - e as i64
            )));
        }
        match e {
            1 => Self::projective(r),
            2 => Self::quadric(r),
            _ => {
                let index = r + 2 - e;
                Ok(TargetSpec {
                    kind: TargetKind::Hypersurface,
                    dim: r,
                    degree: e,
                    index,
                    s_bound: Some(index),
                    t_bound: Some(index),
                    ci_degrees: vec![e],
                    h1_bound: None,
                })
            }
        }
    }

    pub fn quadric(r: u32) -> Result<Self> {
        if r < 3 {
            return Err(Error::HypothesisViolation(format!(
                "quadrics need dimension r >= 3, got {r}"
            )));
        }
        Ok(TargetSpec {
            kind: TargetKind::Quadric,
            dim: r,
            degree: 2,
            index: r,
            s_bound: Some(r),
            t_bound: Some(r),
            ci_degrees: vec![2],
            h1_bound: None,
        })
    }

    pub fn homogeneous(r: u32, index: u32, bounds: Option<(u32, u32)>) -> Result<Self> {
        let mut spec = Self::asserted(TargetKind::Homogeneous, r, index, bounds)?;
        spec.degree = 1;
        Ok(spec)
    }

    pub fn custom(r: u32, index: u32, bounds: Option<(u32, u32)>, ci_degrees: Vec<u32>) -> Result<Self> {
        let mut spec = Self::asserted(TargetKind::Custom, r, index, bounds)?;
        if ci_degrees.contains(&0) {
            return Err(Error::InvalidArgument("complete-intersection degrees must be positive".into()));
        }
        spec.ci_degrees = ci_degrees;
        Ok(spec)
    }

    fn asserted(kind: TargetKind, r: u32, index: u32, bounds: Option<(u32, u32)>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        if index == 0 {
            return Err(Error::NonFano("index I must be positive".into()));
        }
        if let Some((s, t)) = bounds {
            if t == 0 || s < t {
                return Err(Error::InvalidArgument(format!("need s >= t >= 1, got s = {s}, t = {t}")));
            }
        }
        Ok(TargetSpec {
            kind,
            dim: r,
            degree: 1,
            index,
            s_bound: bounds.map(|b| b.0),
            t_bound: bounds.map(|b| b.1),
            ci_degrees: Vec::new(),
            h1_bound: None,
        })
    }

    /// Attach a uniform bound `K` with `h^1(C, f^*T_X) <= K` for all maps
    /// from genus-`g` curves. Only meaningful for custom targets.
    pub fn with_h1_bound(mut self, bound: u64) -> Self {
        self.h1_bound = Some(bound);
        self
    }

    pub fn kind(&self) -> TargetKind {
        self.kind
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Hypersurface degree `e`; 1 for projective space and asserted targets.
    pub fn hypersurface_degree(&self) -> u32 {
        self.degree
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn s_bound(&self) -> Option<u32> {
        self.s_bound
    }

    pub fn t_bound(&self) -> Option<u32> {
        self.t_bound
    }

    pub fn ci_degrees(&self) -> &[u32] {
        &self.ci_degrees
    }

    pub fn h1_bound(&self) -> Option<u64> {
        self.h1_bound
    }
}

impl fmt::Display for TargetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bounds = |f: &mut fmt::Formatter<'_>| match (self.s_bound, self.t_bound) {
            (Some(s), Some(t)) => write!(f, ":{s}:{t}"),
            _ => Ok(()),
        };
        match self.kind {
            TargetKind::ProjectiveSpace => write!(f, "p:{}", self.dim),
            TargetKind::Hypersurface => write!(f, "hyp:{}:{}", self.degree, self.dim),
            TargetKind::Quadric => write!(f, "quadric:{}", self.dim),
            TargetKind::Homogeneous => {
                write!(f, "gp:{}:{}", self.dim, self.index)?;
                bounds(f)
            }
            TargetKind::Custom => {
                write!(f, "custom:{}:{}", self.dim, self.index)?;
                bounds(f)?;
                if !self.ci_degrees.is_empty() {
                    let degrees: Vec<String> = self.ci_degrees.iter().map(u32::to_string).collect();
                    write!(f, ":{}", degrees.join(","))?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for TargetSpec {
    type Err = Error;

    /// `p:<r>` | `hyp:<e>:<r>` | `quadric:<r>` | `gp:<r>:<I>[:<s>:<t>]` |
    /// `custom:<r>:<I>[:<s>:<t>[:<e1,e2,...>]]`
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("target '{text}'"));
        let num = |field: &str| field.parse::<u32>().map_err(|_| bad());
        let fields: Vec<&str> = text.split(':').collect();
        match fields.as_slice() {
            ["p", r] => Self::projective(num(r)?),
            ["hyp", e, r] => Self::hypersurface(num(e)?, num(r)?),
            ["quadric", r] => Self::quadric(num(r)?),
            ["gp", r, i] => Self::homogeneous(num(r)?, num(i)?, None),
            ["gp", r, i, s, t] => Self::homogeneous(num(r)?, num(i)?, Some((num(s)?, num(t)?))),
            ["custom", r, i] => Self::custom(num(r)?, num(i)?, None, Vec::new()),
            ["custom", r, i, s, t] => Self::custom(num(r)?, num(i)?, Some((num(s)?, num(t)?)), Vec::new()),
            ["custom", r, i, s, t, degrees] => {
                let degrees = degrees.split(',').map(num).collect::<Result<Vec<_>>>()?;
                Self::custom(num(r)?, num(i)?, Some((num(s)?, num(t)?)), degrees)
            }
            _ => Err(bad()),
        }
    }
}

/// A well-posed triple `(X, g, d)` with its marking count `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TevProblem {
    target: TargetSpec,
    genus: u32,
    degree: u64,
    markings: u64,
}

impl TevProblem {
    pub fn target(&self) -> &TargetSpec {
        &self.target
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn markings(&self) -> u64 {
        self.markings
    }

    /// `d * I == r * (n + g - 1)`.
    pub fn dimension_constraint_holds(&self) -> bool {
        let lhs = c1_pairing(&self.target, self.degree);
        let rhs = BigInt::from(self.target.dim) * (BigInt::from(self.markings) + self.genus - 1);
        lhs == rhs
    }
}

/// `d * I`, the anticanonical degree of a degree-`d` class.
pub fn c1_pairing(target: &TargetSpec, d: u64) -> BigInt {
    BigInt::from(d) * target.index
}

/// The exact rational `1 - g + d * I / r`; integrality is not checked.
pub fn marking_count(target: &TargetSpec, g: u32, d: u64) -> BigRational {
    let r = BigInt::from(target.dim);
    let numerator = &r * (1 - i64::from(g)) + c1_pairing(target, d);
    BigRational::new(numerator, r)
}

pub fn make_problem(target: &TargetSpec, g: u32, d: u64) -> Result<TevProblem> {
    if d == 0 {
        return Err(Error::InvalidArgument("curve degree d must be >= 1".into()));
    }
    if target.index == 0 {
        return Err(Error::NonFano("index I must be positive".into()));
    }
    let n = marking_count(target, g, d);
    if !n.is_integer() {
        return Err(Error::NonIntegerN(n.to_string()));
    }
    let n = n.to_integer();
    if n.is_negative() {
        return Err(Error::NegativeN(n.to_i64().unwrap_or(i64::MIN)));
    }
    let markings = n
        .to_u64()
        .ok_or_else(|| Error::InvalidArgument("marking count exceeds u64".into()))?;
    let stability = 2 * i64::from(g) - 2 + markings as i64;
    if stability <= 0 {
        return Err(Error::UnstableRange(stability));
    }
    Ok(TevProblem { target: target.clone(), genus: g, degree: d, markings })
}
