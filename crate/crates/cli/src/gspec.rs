//! Penalty function records, shared by instance files and the `--g` flag.
//!
//! Command-line syntax: `sqrt`, `log1p`, `power:p`, `trunclin:slope,cap`,
//! `table:v0,v1,...`, each optionally followed by `*weight`.

use std::fmt;

use labelcut::{ConcaveSpec, Family, Penalty, RawTable};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Sqrt,
    Log1p,
    Power,
    Trunclin,
    Table,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionSpecRecord {
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slope: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
}

fn number(s: &str) -> Result<f64, String> {
    s.trim().parse::<f64>().map_err(|_| format!("invalid number {s:?}"))
}

fn numbers(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').map(number).collect()
}

impl FunctionSpecRecord {
    fn bare(kind: Kind) -> Self {
        FunctionSpecRecord { kind, p: None, slope: None, cap: None, values: None, weight: None }
    }

    /// Parses the command-line mini-syntax.
    pub fn parse_cli(text: &str) -> Result<Self, String> {
        let (body, weight) = match text.rsplit_once('*') {
            Some((body, w)) => (body, Some(number(w)?)),
            None => (text, None),
        };
        let (name, args) = match body.split_once(':') {
            Some((name, args)) => (name, Some(args)),
            None => (body, None),
        };
        let mut rec = match (name.trim(), args) {
            ("sqrt", None) => Self::bare(Kind::Sqrt),
            ("log1p", None) => Self::bare(Kind::Log1p),
            ("power", Some(a)) => FunctionSpecRecord { p: Some(number(a)?), ..Self::bare(Kind::Power) },
            ("trunclin", Some(a)) => match numbers(a)?.as_slice() {
                &[slope, cap] => FunctionSpecRecord {
                    slope: Some(slope),
                    cap: Some(cap),
                    ..Self::bare(Kind::Trunclin)
                },
                _ => return Err("trunclin expects slope,cap".into()),
            },
            ("table", Some(a)) => {
                FunctionSpecRecord { values: Some(numbers(a)?), ..Self::bare(Kind::Table) }
            }
            _ => return Err(format!("unrecognized penalty spec {text:?}")),
        };
        rec.weight = weight;
        Ok(rec)
    }

    pub fn weight(&self) -> f64 {
        self.weight.unwrap_or(1.0)
    }

    pub fn family(&self) -> Result<Family, String> {
        let need = |v: Option<f64>, field: &str| {
            v.ok_or_else(|| format!("kind {:?} requires field {field:?}", self.kind))
        };
        Ok(match self.kind {
            Kind::Sqrt => Family::Sqrt,
            Kind::Log1p => Family::Log1p,
            Kind::Power => Family::Power { exponent: need(self.p, "p")? },
            Kind::Trunclin => {
                Family::TruncLinear { slope: need(self.slope, "slope")?, cap: need(self.cap, "cap")? }
            }
            Kind::Table => Family::Table(
                self.values.clone().ok_or("kind \"table\" requires field \"values\"")?,
            ),
        })
    }

    /// Largest sampled deviation: the table length for tables, otherwise
    /// what a hyperedge of size `k` needs.
    pub fn max_dev(&self, k: usize) -> usize {
        match &self.values {
            Some(v) if self.kind == Kind::Table => v.len().saturating_sub(1),
            _ => (k / 2).max(1),
        }
    }

    /// Validated penalty covering hyperedges of size `k`.
    pub fn to_spec(&self, k: usize) -> Result<ConcaveSpec, labelcut::Error> {
        let family = self.family().map_err(labelcut::Error::Parameter)?;
        let spec = ConcaveSpec::new(family, self.max_dev(k), self.weight())?;
        spec.require_cover(k / 2)?;
        Ok(spec)
    }

    /// Like [`Self::to_spec`], but tables skip concavity validation.
    pub fn to_raw(&self, k: usize) -> Result<RawTable, labelcut::Error> {
        if self.kind != Kind::Table {
            return self.to_spec(k).map(RawTable::from);
        }
        let values = self.values.clone().unwrap_or_default();
        let w = self.weight();
        if !(w >= 0.0 && w.is_finite()) {
            return Err(labelcut::Error::Parameter(format!("weight {w} must be finite and >= 0")));
        }
        let table = RawTable::new(values.iter().map(|v| w * v).collect())?;
        table.require_cover(k / 2)?;
        Ok(table)
    }

    pub fn from_spec(spec: &ConcaveSpec) -> Self {
        let mut rec = match spec.family() {
            Family::Sqrt => Self::bare(Kind::Sqrt),
            Family::Log1p => Self::bare(Kind::Log1p),
            Family::Power { exponent } => {
                FunctionSpecRecord { p: Some(*exponent), ..Self::bare(Kind::Power) }
            }
            Family::TruncLinear { slope, cap } => FunctionSpecRecord {
                slope: Some(*slope),
                cap: Some(*cap),
                ..Self::bare(Kind::Trunclin)
            },
            Family::Table(values) => {
                FunctionSpecRecord { values: Some(values.clone()), ..Self::bare(Kind::Table) }
            }
        };
        rec.weight = Some(spec.weight());
        rec
    }
}

impl fmt::Display for FunctionSpecRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self.kind {
            Kind::Sqrt => write!(f, "sqrt")?,
            Kind::Log1p => write!(f, "log1p")?,
            Kind::Power => write!(f, "power:{}", self.p.unwrap_or(f64::NAN))?,
            Kind::Trunclin => write!(
                f,
                "trunclin:{},{}",
                self.slope.unwrap_or(f64::NAN),
                self.cap.unwrap_or(f64::NAN)
            )?,
            Kind::Table => write!(f, "table:{}", join(self.values.as_deref().unwrap_or(&[])))?,
        }
        if let Some(w) = self.weight {
            write!(f, "*{w}")?;
        }
        Ok(())
    }
}
