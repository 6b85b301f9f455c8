//! Per-attribute gradualness thresholds: how large a variation must be
//! before it counts as an increase or decrease at all.

use std::collections::BTreeMap;
use std::io::Read;
use std::str::FromStr;

use crate::dataset::Dataset;
use crate::error::{Error, Result};

/// How the per-attribute sigma values are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdMode {
    /// No thresholding: every sigma is zero.
    None,
    /// k1 * sample standard deviation + k2.
    Sd,
    /// k1 * coefficient of variation (sd / mean) + k2.
    Cv,
    /// k1 * mean of sorted consecutive gaps + k2.
    GapMean,
    /// k1 * sample standard deviation of sorted consecutive gaps + k2.
    GapSd,
    /// Sigmas supplied by the user, one per attribute.
    User,
}

impl ThresholdMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ThresholdMode::None => "none",
            ThresholdMode::Sd => "sd",
            ThresholdMode::Cv => "cv",
            ThresholdMode::GapMean => "gap-mean",
            ThresholdMode::GapSd => "gap-sd",
            ThresholdMode::User => "user",
        }
    }
}

impl FromStr for ThresholdMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(ThresholdMode::None),
            "sd" => Ok(ThresholdMode::Sd),
            "cv" => Ok(ThresholdMode::Cv),
            "gap-mean" | "gap" => Ok(ThresholdMode::GapMean),
            "gap-sd" => Ok(ThresholdMode::GapSd),
            "user" => Ok(ThresholdMode::User),
            other => Err(Error::InvalidParameter(format!(
                "unknown threshold mode '{other}'"
            ))),
        }
    }
}

/// Aggregator applied to the sorted consecutive gaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapAggregator {
    Mean,
    Sd,
}

/// One non-negative sigma per dataset attribute.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdVector {
    sigmas: Vec<f64>,
    mode: ThresholdMode,
    k1: f64,
    k2: f64,
}

impl ThresholdVector {
    pub fn zeros(len: usize) -> Self {
        ThresholdVector {
            sigmas: vec![0.0; len],
            mode: ThresholdMode::None,
            k1: 0.0,
            k2: 0.0,
        }
    }

    /// Wrap explicit sigma values (used for user files and in tests).
    pub fn explicit(sigmas: Vec<f64>) -> Result<Self> {
        if sigmas.iter().any(|s| s.is_nan() || *s < 0.0) {
            return Err(Error::NegativeSigma);
        }
        Ok(ThresholdVector {
            sigmas,
            mode: ThresholdMode::User,
            k1: 1.0,
            k2: 0.0,
        })
    }

    pub fn sigmas(&self) -> &[f64] {
        &self.sigmas
    }

    pub fn sigma(&self, j: usize) -> f64 {
        self.sigmas[j]
    }

    pub fn len(&self) -> usize {
        self.sigmas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigmas.is_empty()
    }

    pub fn mode(&self) -> ThresholdMode {
        self.mode
    }

    pub fn k1(&self) -> f64 {
        self.k1
    }

    pub fn k2(&self) -> f64 {
        self.k2
    }
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Sample standard deviation, divisor n-1.
fn sample_sd(values: &[f64]) -> f64 {
    let mu = mean(values);
    let ss: f64 = values.iter().map(|v| (v - mu) * (v - mu)).sum();
    (ss / (values.len() - 1) as f64).sqrt()
}

fn sorted_gaps(values: &[f64]) -> Vec<f64> {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    sorted.windows(2).map(|w| w[1] - w[0]).collect()
}

/// k1 * sd(values) + k2, sample deviation.
pub fn sd_threshold(values: &[f64], k1: f64, k2: f64) -> Result<f64> {
    if values.len() < 2 {
        return Err(Error::TooFewValues {
            needed: 2,
            got: values.len(),
        });
    }
    Ok(k1 * sample_sd(values) + k2)
}

/// k1 * (sd / mean) + k2; undefined on zero-mean attributes.
pub fn cv_threshold(values: &[f64], k1: f64, k2: f64) -> Result<f64> {
    if values.len() < 2 {
        return Err(Error::TooFewValues {
            needed: 2,
            got: values.len(),
        });
    }
    let mu = mean(values);
    if mu == 0.0 {
        return Err(Error::ZeroMean);
    }
    Ok(k1 * (sample_sd(values) / mu) + k2)
}

/// k1 * aggregate(consecutive gaps of the sorted values) + k2.
pub fn gap_threshold(values: &[f64], k1: f64, k2: f64, aggregator: GapAggregator) -> Result<f64> {
    let needed = match aggregator {
        GapAggregator::Mean => 2,
        GapAggregator::Sd => 3,
    };
    if values.len() < needed {
        return Err(Error::TooFewValues {
            needed,
            got: values.len(),
        });
    }
    let gaps = sorted_gaps(values);
    let agg = match aggregator {
        GapAggregator::Mean => mean(&gaps),
        GapAggregator::Sd => sample_sd(&gaps),
    };
    Ok(k1 * agg + k2)
}

/// User-supplied sigmas keyed by attribute name.
#[derive(Debug, Clone, Default)]
pub struct UserThresholds(BTreeMap<String, f64>);

impl UserThresholds {
    pub fn new(map: BTreeMap<String, f64>) -> Self {
        UserThresholds(map)
    }

    /// Parse a two-column CSV of `attribute,sigma` lines. A leading header
    /// line is tolerated (detected by its non-numeric second field).
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .flexible(true)
            .from_reader(reader);
        let mut map = BTreeMap::new();
        for (i, record) in rdr.records().enumerate() {
            let record = record?;
            if record.len() != 2 {
                return Err(Error::RaggedRow {
                    row: i + 1,
                    expected: 2,
                    got: record.len(),
                });
            }
            match record[1].parse::<f64>() {
                Ok(v) => {
                    map.insert(record[0].to_string(), v);
                }
                Err(_) if i == 0 => continue, // header line
                Err(_) => return Err(Error::ParseError { row: i + 1, col: 2 }),
            }
        }
        Ok(UserThresholds(map))
    }

    pub fn get(&self, attribute: &str) -> Option<f64> {
        self.0.get(attribute).copied()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(|s| s.as_str())
    }
}

/// Compute the threshold vector for a whole dataset under the given mode.
pub fn set_thresholds(
    dataset: &Dataset,
    mode: ThresholdMode,
    k1: f64,
    k2: f64,
    user: Option<&UserThresholds>,
) -> Result<ThresholdVector> {
    let m = dataset.n_attributes();
    let mut sigmas = Vec::with_capacity(m);

    if mode == ThresholdMode::User {
        let user = user.ok_or_else(|| {
            Error::InvalidParameter("mode 'user' requires a threshold file".into())
        })?;
        for name in user.names() {
            if !dataset.attribute_names().iter().any(|n| n == name) {
                return Err(Error::UnknownUserAttribute(name.to_string()));
            }
        }
        for name in dataset.attribute_names() {
            let sigma = user
                .get(name)
                .ok_or_else(|| Error::MissingUserThreshold(name.clone()))?;
            if sigma.is_nan() || sigma < 0.0 {
                return Err(Error::Column {
                    attribute: name.clone(),
                    source: Box::new(Error::NegativeSigma),
                });
            }
            sigmas.push(sigma);
        }
    } else {
        for j in 0..m {
            let sigma = match mode {
                ThresholdMode::None => Ok(0.0),
                ThresholdMode::Sd => sd_threshold(&dataset.column(j)?, k1, k2),
                ThresholdMode::Cv => cv_threshold(&dataset.column(j)?, k1, k2),
                ThresholdMode::GapMean => {
                    gap_threshold(&dataset.column(j)?, k1, k2, GapAggregator::Mean)
                }
                ThresholdMode::GapSd => {
                    gap_threshold(&dataset.column(j)?, k1, k2, GapAggregator::Sd)
                }
                ThresholdMode::User => unreachable!(),
            };
            let sigma = sigma.and_then(|s| {
                if s >= 0.0 {
                    Ok(s)
                } else {
                    Err(Error::NegativeSigma)
                }
            });
            match sigma {
                Ok(s) => sigmas.push(s),
                Err(e) => {
                    return Err(Error::Column {
                        attribute: dataset.attribute_name(j).to_string(),
                        source: Box::new(e),
                    })
                }
            }
        }
    }

    Ok(ThresholdVector {
        sigmas,
        mode,
        k1,
        k2,
    })
}
