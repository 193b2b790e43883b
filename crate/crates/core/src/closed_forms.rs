//! Closed-form virtual Tevelev degrees for projective spaces, hypersurfaces of
//! degree at least three, and quadrics.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{factorial, pow};
use crate::error::{Error, Result};
use crate::targets::{TargetKind, TevProblem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Formula {
    ProjectiveSpace,
    Hypersurface,
    Quadric,
}

impl Formula {
    pub fn tag(self) -> &'static str {
        match self {
            Formula::ProjectiveSpace => "ProjectiveSpaceEq3",
            Formula::Hypersurface => "HypersurfaceThm13",
            Formula::Quadric => "QuadricThm14",
        }
    }
}

/// A virtual Tevelev degree together with a factorisation `prod base^exp`
/// that reproduces it, so valuations never need the expanded value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VTevResult {
    pub value: BigInt,
    pub problem: TevProblem,
    pub formula: Formula,
    pub factors: Vec<(BigInt, u64)>,
}

impl VTevResult {
    pub fn factor_product(&self) -> BigInt {
        self.factors.iter().map(|(base, exp)| pow(base.clone(), *exp)).product()
    }
}

fn expect_kind(problem: &TevProblem, kind: TargetKind) -> Result<()> {
    let found = problem.target().kind();
    if found == kind {
        Ok(())
    } else {
        Err(Error::WrongTargetKind { expected: kind.name(), found: found.name() })
    }
}

/// `(r + 1)^g`.
pub fn vtev_projective(problem: &TevProblem) -> Result<VTevResult> {
    expect_kind(problem, TargetKind::ProjectiveSpace)?;
    let base = BigInt::from(problem.target().dim() + 1);
    let g = u64::from(problem.genus());
    Ok(VTevResult {
        value: pow(base.clone(), g),
        problem: problem.clone(),
        formula: Formula::ProjectiveSpace,
        factors: vec![(base, g)],
    })
}

/// `((e-1)!)^n * (r+2-e)^g * e^((d-n)e - g + 1)` for `e >= 3` and `r >= 2e - 3`.
pub fn vtev_hypersurface(problem: &TevProblem) -> Result<VTevResult> {
    expect_kind(problem, TargetKind::Hypersurface)?;
    let x = problem.target();
    let (e, r) = (x.hypersurface_degree(), x.dim());
    if e < 3 {
        return Err(Error::HypothesisViolation(format!("hypersurface formula needs e >= 3, got {e}")));
    }
    if r + 3 < 2 * e {
        return Err(Error::HypothesisViolation(format!("hypersurface formula needs r >= 2e - 3, got r = {r}, e = {e}")));
    }
    let (g, d, n) = (problem.genus(), problem.degree(), problem.markings());
    let exponent = (i128::from(d) - i128::from(n)) * i128::from(e) - i128::from(g) + 1;
    if exponent < 0 {
        return Err(Error::NegativeExponent(i64::try_from(exponent).unwrap_or(i64::MIN)));
    }
    let exponent = u64::try_from(exponent).map_err(|_| Error::InvalidArgument("exponent exceeds u64".into()))?;
    let factors = vec![
        (factorial(u64::from(e - 1)), n),
        (BigInt::from(r + 2 - e), u64::from(g)),
        (BigInt::from(e), exponent),
    ];
    let value = factors.iter().map(|(b, k)| pow(b.clone(), *k)).product();
    Ok(VTevResult { value, problem: problem.clone(), formula: Formula::Hypersurface, factors })
}

/// `((2r)^g + (-1)^d (2 delta)^g) / 2`, `delta = 1` for odd `r` and 2 for even.
pub fn vtev_quadric(problem: &TevProblem) -> Result<VTevResult> {
    expect_kind(problem, TargetKind::Quadric)?;
    let r = problem.target().dim();
    if r < 3 {
        return Err(Error::HypothesisViolation(format!("quadric formula needs r >= 3, got {r}")));
    }
    let g = u64::from(problem.genus());
    let delta = if r % 2 == 1 { 1 } else { 2 };
    let main = pow(2 * r, g);
    let correction = pow(2 * delta, g);
    let sum = if problem.degree() % 2 == 0 { main + correction } else { main - correction };
    // both summands are even for g >= 1 and equal to 1 for g = 0
    debug_assert!((&sum % 2u32).is_zero());
    let value = sum / 2u32;
    Ok(VTevResult {
        factors: vec![(value.clone(), 1)],
        value,
        problem: problem.clone(),
        formula: Formula::Quadric,
    })
}

pub fn vtev(problem: &TevProblem) -> Result<VTevResult> {
    match problem.target().kind() {
        TargetKind::ProjectiveSpace => vtev_projective(problem),
        TargetKind::Hypersurface => vtev_hypersurface(problem),
        TargetKind::Quadric => vtev_quadric(problem),
        other => Err(Error::NoKnownFormula(other.name())),
    }
}
