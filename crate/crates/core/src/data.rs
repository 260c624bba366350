//! Uncensored lifetime samples.
//!
//! Text input holds numbers separated by commas, semicolons or whitespace;
//! everything after a `#` on a line is ignored.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

const BLADDER_CANCER: &str = include_str!("../data/bladder_cancer.txt");
const GLASS_FIBERS: &str = include_str!("../data/glass_fibers.txt");

/// Names accepted by [`Dataset::bundled`].
pub const BUNDLED: [&str; 2] = ["bladder-cancer", "glass-fibers"];

/// A sample of strictly positive lifetimes, with a sorted copy kept alongside.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "DatasetRepr<T>",
    into = "DatasetRepr<T>",
    bound = "T: Scalar + Serialize + for<'a> Deserialize<'a>"
)]
pub struct Dataset<T> {
    label: String,
    values: Vec<T>,
    sorted: Vec<T>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct DatasetRepr<T> {
    label: String,
    values: Vec<T>,
}

impl<T: Scalar> TryFrom<DatasetRepr<T>> for Dataset<T> {
    type Error = Error;

    fn try_from(r: DatasetRepr<T>) -> Result<Self> {
        Dataset::new(r.label, r.values)
    }
}

impl<T: Scalar> From<Dataset<T>> for DatasetRepr<T> {
    fn from(d: Dataset<T>) -> Self {
        DatasetRepr {
            label: d.label,
            values: d.values,
        }
    }
}

impl<T: Scalar> Dataset<T> {
    /// Validates positivity and `n ≥ 2`. Errors name the 1-based position.
    pub fn new(label: impl Into<String>, values: Vec<T>) -> Result<Self> {
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("value {} is not finite", v.as_f64()),
                });
            }
            if v <= T::zero() {
                return Err(Error::NonPositive {
                    line: i + 1,
                    value: v.as_f64(),
                });
            }
        }
        Self::checked(label.into(), values)
    }

    fn checked(label: String, values: Vec<T>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::TooFewObservations {
                required: 2,
                found: values.len(),
            });
        }
        let mut sorted = values.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(Dataset {
            label,
            values,
            sorted,
        })
    }

    /// Parses text; errors carry the 1-based line number.
    pub fn parse(text: &str, label: impl Into<String>) -> Result<Self> {
        let mut values = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            for tok in line
                .split(|c: char| c == ',' || c == ';' || c.is_whitespace())
                .filter(|t| !t.is_empty())
            {
                let v: f64 = tok.parse().map_err(|_| Error::Parse {
                    line: i + 1,
                    message: format!("'{tok}' is not a number"),
                })?;
                if !v.is_finite() {
                    return Err(Error::Parse {
                        line: i + 1,
                        message: format!("'{tok}' is not finite"),
                    });
                }
                if v <= 0.0 {
                    return Err(Error::NonPositive { line: i + 1, value: v });
                }
                values.push(T::lit(v));
            }
        }
        Self::checked(label.into(), values)
    }

    /// Reads and parses a file, labelled with its file name.
    pub fn from_path(path: impl AsRef<Path>) -> std::io::Result<Result<Self>> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let label = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        Ok(Self::parse(&text, label))
    }

    /// Remission times of 128 bladder cancer patients (months).
    pub fn bladder_cancer() -> Self {
        Self::parse(BLADDER_CANCER, "bladder-cancer").expect("bundled data parses")
    }

    /// Strengths of 1.5 cm glass fibres.
    pub fn glass_fibers() -> Self {
        Self::parse(GLASS_FIBERS, "glass-fibers").expect("bundled data parses")
    }

    /// Looks up a bundled dataset by name (see [`BUNDLED`]).
    pub fn bundled(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().replace('_', "-").as_str() {
            "bladder-cancer" | "cancer" | "bladder" => Some(Self::bladder_cancer()),
            "glass-fibers" | "glass" | "glass-fibres" => Some(Self::glass_fibers()),
            _ => None,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Observations in input order.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Observations in ascending order.
    pub fn sorted(&self) -> &[T] {
        &self.sorted
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; a dataset holds at least two observations.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> T {
        self.values.iter().fold(T::zero(), |s, &v| s + v) / T::from_count(self.len())
    }

    /// Copy with every observation multiplied by `c > 0`.
    pub fn scaled(&self, c: T) -> Result<Self> {
        Self::new(
            self.label.clone(),
            self.values.iter().map(|&v| v * c).collect(),
        )
    }
}
