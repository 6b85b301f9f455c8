//! Brute-force reference implementations used by the test suites to validate
//! the optimized mining core. Everything here recomputes supports from first
//! principles on tiny instances: adjacency as plain bool rows, longest path
//! by exhaustive simple-path enumeration, thresholds by direct formulas.
//! Only data types (Dataset, GradualPattern, Support) are shared with the
//! core; no algorithm code is.

use std::collections::BTreeMap;

use grapgt::{
    Dataset, Direction, GradualItem, GradualPattern, MiningConfig, Semantics, Support,
    ThresholdMode,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("instance too large for exhaustive checking (TooLarge)")]
    TooLarge,
    #[error("coefficient of variation undefined on zero-mean attribute")]
    ZeroMean,
    #[error("user thresholds missing for attribute '{0}'")]
    MissingUserThreshold(String),
}

pub type Result<T> = std::result::Result<T, OracleError>;

/// Longest path in node count over all simple directed paths, by depth-first
/// enumeration without memoization. Limited to n <= 12.
pub fn oracle_longest_path(adjacency: &[Vec<bool>]) -> Result<usize> {
    let n = adjacency.len();
    if n > 12 {
        return Err(OracleError::TooLarge);
    }
    if n == 0 {
        return Ok(0);
    }
    fn dfs(adj: &[Vec<bool>], node: usize, visited: &mut Vec<bool>, len: usize, best: &mut usize) {
        if len > *best {
            *best = len;
        }
        for next in 0..adj.len() {
            if adj[node][next] && !visited[next] {
                visited[next] = true;
                dfs(adj, next, visited, len + 1, best);
                visited[next] = false;
            }
        }
    }
    let mut best = 1;
    let mut visited = vec![false; n];
    for start in 0..n {
        visited[start] = true;
        dfs(adjacency, start, &mut visited, 1, &mut best);
        visited[start] = false;
    }
    Ok(best)
}

/// Exact support of every canonical pattern up to max_len.
#[derive(Debug, Clone)]
pub struct OracleResult {
    supports: BTreeMap<GradualPattern, Support>,
}

impl OracleResult {
    pub fn support(&self, g: &GradualPattern) -> Option<Support> {
        self.supports.get(g).copied()
    }

    pub fn all(&self) -> &BTreeMap<GradualPattern, Support> {
        &self.supports
    }

    /// Frequent patterns sorted by (size, items), the mining result order.
    pub fn frequent(&self, min_supp: f64) -> Vec<(GradualPattern, Support)> {
        let mut out: Vec<(GradualPattern, Support)> = self
            .supports
            .iter()
            .filter(|(_, s)| s.value() >= min_supp)
            .map(|(g, s)| (g.clone(), *s))
            .collect();
        out.sort_by(|a, b| (a.0.len(), a.0.items()).cmp(&(b.0.len(), b.0.items())));
        out
    }
}

fn naive_sigmas(d: &Dataset, cfg: &MiningConfig) -> Result<Vec<f64>> {
    let m = d.n_attributes();
    let column = |j: usize| -> Vec<f64> { (0..d.n_objects()).map(|i| d.value(i, j)).collect() };
    let sd = |v: &[f64]| -> f64 {
        let mu = v.iter().sum::<f64>() / v.len() as f64;
        (v.iter().map(|x| (x - mu) * (x - mu)).sum::<f64>() / (v.len() - 1) as f64).sqrt()
    };
    let mut sigmas = Vec::with_capacity(m);
    for j in 0..m {
        let v = column(j);
        let sigma = match cfg.threshold_mode {
            ThresholdMode::None => 0.0,
            ThresholdMode::Sd => cfg.k1 * sd(&v) + cfg.k2,
            ThresholdMode::Cv => {
                let mu = v.iter().sum::<f64>() / v.len() as f64;
                if mu == 0.0 {
                    return Err(OracleError::ZeroMean);
                }
                cfg.k1 * (sd(&v) / mu) + cfg.k2
            }
            ThresholdMode::GapMean | ThresholdMode::GapSd => {
                let mut sorted = v.clone();
                sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
                let gaps: Vec<f64> = sorted.windows(2).map(|w| w[1] - w[0]).collect();
                let agg = if cfg.threshold_mode == ThresholdMode::GapMean {
                    gaps.iter().sum::<f64>() / gaps.len() as f64
                } else {
                    sd(&gaps)
                };
                cfg.k1 * agg + cfg.k2
            }
            ThresholdMode::User => {
                let user = cfg
                    .user_thresholds
                    .as_ref()
                    .ok_or_else(|| OracleError::MissingUserThreshold("<no file>".into()))?;
                user.get(d.attribute_name(j)).ok_or_else(|| {
                    OracleError::MissingUserThreshold(d.attribute_name(j).to_string())
                })?
            }
        };
        sigmas.push(sigma);
    }
    Ok(sigmas)
}

fn item_holds(d: &Dataset, item: GradualItem, sigma: f64, from: usize, to: usize) -> bool {
    let diff = match item.direction {
        Direction::Geq => d.value(to, item.attribute) - d.value(from, item.attribute),
        Direction::Leq => d.value(from, item.attribute) - d.value(to, item.attribute),
    };
    if sigma > 0.0 {
        diff >= sigma
    } else {
        diff > 0.0
    }
}

fn graph_support(d: &Dataset, g: &GradualPattern, sigmas: &[f64]) -> Result<Support> {
    let n = d.n_objects();
    let mut adj = vec![vec![false; n]; n];
    for (i, row) in adj.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = i != j
                && g.items()
                    .iter()
                    .all(|it| item_holds(d, *it, sigmas[it.attribute], i, j));
        }
    }
    Ok(Support::new(oracle_longest_path(&adj)?, n))
}

fn temporal_support(d: &Dataset, g: &GradualPattern, sigmas: &[f64]) -> Support {
    let n = d.n_objects();
    let count = (0..n - 1)
        .filter(|&j| {
            g.items().iter().all(|it| {
                let prev = d.value(j, it.attribute);
                let next = d.value(j + 1, it.attribute);
                let sigma = sigmas[it.attribute];
                match it.direction {
                    Direction::Geq => next > prev + sigma,
                    Direction::Leq => next < prev - sigma,
                }
            })
        })
        .count();
    Support::new(count, n - 1)
}

fn canonical_patterns(m: usize, max_len: usize) -> Vec<GradualPattern> {
    let mut out = Vec::new();
    let subsets = 1usize << m;
    for mask in 1..subsets {
        let attrs: Vec<usize> = (0..m).filter(|j| mask >> j & 1 == 1).collect();
        if attrs.len() > max_len {
            continue;
        }
        let free = attrs.len() - 1;
        for dirs in 0..(1usize << free) {
            let mut items = vec![GradualItem::geq(attrs[0])];
            for (pos, &a) in attrs[1..].iter().enumerate() {
                items.push(if dirs >> pos & 1 == 1 {
                    GradualItem::leq(a)
                } else {
                    GradualItem::geq(a)
                });
            }
            out.push(GradualPattern::new(items).expect("distinct attributes"));
        }
    }
    out
}

/// Enumerate every canonical pattern up to cfg.max_len and compute its exact
/// support by direct definition. Limited to n <= 8, m <= 5.
pub fn oracle_mine(d: &Dataset, cfg: &MiningConfig) -> Result<OracleResult> {
    let n = d.n_objects();
    let m = d.n_attributes();
    let max_len = cfg.max_len.unwrap_or(m);
    if n > 8 || m > 5 || max_len > m {
        return Err(OracleError::TooLarge);
    }
    let sigmas = naive_sigmas(d, cfg)?;
    let mut supports = BTreeMap::new();
    for g in canonical_patterns(m, max_len) {
        let support = match cfg.semantics {
            Semantics::Graph => graph_support(d, &g, &sigmas)?,
            Semantics::Temporal => temporal_support(d, &g, &sigmas),
        };
        supports.insert(g, support);
    }
    Ok(OracleResult { supports })
}
