//! Nondecreasing concave penalties sampled at integer deviations, and the
//! disagreement potential built on them.

use crate::error::{Error, Result, ValidationKind};
use crate::label::{deviation, LabelVector};
use crate::Cost;

/// Absolute tolerance for monotonicity and concavity checks.
pub const VALIDATION_TOLERANCE: f64 = 1e-12;

/// The named function a [`ConcaveSpec`] was sampled from.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// `sqrt(t)`
    Sqrt,
    /// `ln(1 + t)`
    Log1p,
    /// `t^p`, `p` in `(0, 1]`
    Power { exponent: f64 },
    /// `slope * min(t, cap)`
    TruncLinear { slope: f64, cap: f64 },
    /// Explicit samples `g(0), ..., g(T)`.
    Table(Vec<f64>),
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Sqrt => "sqrt",
            Family::Log1p => "log1p",
            Family::Power { .. } => "power",
            Family::TruncLinear { .. } => "trunclin",
            Family::Table(_) => "table",
        }
    }

    fn check_parameters(&self) -> Result<()> {
        match *self {
            Family::Power { exponent } if !(exponent > 0.0 && exponent <= 1.0) => {
                Err(Error::Parameter(format!("power exponent {exponent} outside (0, 1]")))
            }
            Family::TruncLinear { slope, .. } if !(slope >= 0.0 && slope.is_finite()) => {
                Err(Error::Parameter(format!("trunclin slope {slope} must be >= 0")))
            }
            Family::TruncLinear { cap, .. } if !(cap >= 1.0 && cap.is_finite()) => {
                Err(Error::Parameter(format!("trunclin cap {cap} must be >= 1")))
            }
            Family::Table(ref values) if values.is_empty() => {
                Err(Error::Parameter("table must have at least one value".into()))
            }
            _ => Ok(()),
        }
    }

    /// Unscaled value at integer `t`.
    fn value(&self, t: usize) -> f64 {
        let x = t as f64;
        match *self {
            Family::Sqrt => x.sqrt(),
            Family::Log1p => x.ln_1p(),
            Family::Power { exponent } => x.powf(exponent),
            Family::TruncLinear { slope, cap } => slope * x.min(cap),
            Family::Table(ref values) => values[t],
        }
    }
}

/// Anything that maps an integer deviation to a cost.
///
/// Implemented by the validated [`ConcaveSpec`] and by the unvalidated
/// [`RawTable`] that the counterexample search runs on.
pub trait Penalty {
    /// `g(0), ..., g(T)`.
    fn samples(&self) -> &[f64];

    fn max_deviation(&self) -> usize {
        self.samples().len() - 1
    }

    fn eval(&self, t: usize) -> Result<Cost> {
        self.samples()
            .get(t)
            .copied()
            .ok_or(Error::Range { index: t, max: self.max_deviation() })
    }

    /// Fails unless deviations up to `max_dev` can be evaluated.
    fn require_cover(&self, max_dev: usize) -> Result<()> {
        if max_dev > self.max_deviation() {
            Err(Error::Range { index: max_dev, max: self.max_deviation() })
        } else {
            Ok(())
        }
    }
}

/// A validated nondecreasing, integer-concave penalty `g` on `0..=T`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConcaveSpec {
    family: Family,
    weight: f64,
    samples: Vec<f64>,
}

impl ConcaveSpec {
    /// Samples `family` at `0..=max_dev`, scales by `weight` and validates.
    ///
    /// For [`Family::Table`] `max_dev` must equal the table length minus one.
    pub fn new(family: Family, max_dev: usize, weight: f64) -> Result<Self> {
        if max_dev < 1 {
            return Err(Error::Parameter("T must be >= 1".into()));
        }
        if !(weight >= 0.0 && weight.is_finite()) {
            return Err(Error::Parameter(format!("weight {weight} must be finite and >= 0")));
        }
        family.check_parameters()?;
        if let Family::Table(values) = &family {
            if values.len() != max_dev + 1 {
                return Err(Error::Parameter(format!(
                    "table has {} values, expected T + 1 = {}",
                    values.len(),
                    max_dev + 1
                )));
            }
        }
        let samples: Vec<f64> = (0..=max_dev).map(|t| weight * family.value(t)).collect();
        validate_samples(&samples)?;
        Ok(ConcaveSpec { family, weight, samples })
    }

    /// Validated explicit table; `T` is its length minus one.
    pub fn table(values: Vec<f64>, weight: f64) -> Result<Self> {
        let max_dev = values.len().saturating_sub(1);
        Self::new(Family::Table(values), max_dev, weight)
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// Forward differences `g(i) - g(i-1)` for `i = 1..=T`.
    pub fn increments(&self) -> Vec<f64> {
        self.samples.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

impl Penalty for ConcaveSpec {
    fn samples(&self) -> &[f64] {
        &self.samples
    }
}

/// Convenience wrapper matching the free-function style of the other ops.
pub fn make_concave_spec(family: Family, max_dev: usize, weight: f64) -> Result<ConcaveSpec> {
    ConcaveSpec::new(family, max_dev, weight)
}

/// `g(t)`, exactly the stored sample.
pub fn eval_g(spec: &ConcaveSpec, t: usize) -> Result<Cost> {
    spec.eval(t)
}

/// Checks finiteness, nonnegativity, monotonicity and integer concavity.
/// The reported index is the sample at which the property first breaks.
pub fn validate_samples(samples: &[f64]) -> Result<()> {
    for (i, &v) in samples.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::Validation { index: i, kind: ValidationKind::NonFinite });
        }
        if v < 0.0 {
            return Err(Error::Validation { index: i, kind: ValidationKind::Negative });
        }
        if i >= 1 && v - samples[i - 1] < -VALIDATION_TOLERANCE {
            return Err(Error::Validation { index: i, kind: ValidationKind::Decreasing });
        }
        if i >= 2 && v - 2.0 * samples[i - 1] + samples[i - 2] > VALIDATION_TOLERANCE {
            return Err(Error::Validation { index: i, kind: ValidationKind::Convex });
        }
    }
    Ok(())
}

/// An unvalidated sample table. Only finiteness is enforced.
#[derive(Clone, Debug, PartialEq)]
pub struct RawTable {
    samples: Vec<f64>,
}

impl RawTable {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Parameter("table must have at least one value".into()));
        }
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::Validation { index: i, kind: ValidationKind::NonFinite });
        }
        Ok(RawTable { samples })
    }
}

impl Penalty for RawTable {
    fn samples(&self) -> &[f64] {
        &self.samples
    }
}

impl From<ConcaveSpec> for RawTable {
    fn from(spec: ConcaveSpec) -> Self {
        RawTable { samples: spec.samples }
    }
}

/// `d(x) = g(min(n0, n1))`.
pub fn disagreement<P: Penalty + ?Sized>(spec: &P, x: &LabelVector) -> Result<Cost> {
    spec.require_cover(x.len() / 2)?;
    spec.eval(deviation(x))
}
