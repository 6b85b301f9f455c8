//! Level-wise mining of frequent gradual patterns under either support
//! semantics. The candidate space is canonical patterns only (lowest
//! attribute varies upward); complements are covered by symmetry under the
//! graph semantics and re-derived at report time under the temporal one.

use std::collections::HashSet;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::graph::{item_matrix, PrecedenceMatrix};
use crate::pattern::{Direction, GradualItem, GradualPattern};
use crate::support::Support;
use crate::temporal::{is_closed, num2cat, property1_prunable, SignTable};
use crate::thresholds::{set_thresholds, ThresholdMode, ThresholdVector, UserThresholds};

/// Which support definition to mine under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Semantics {
    /// Longest path in the precedence graph, over the object count.
    Graph,
    /// Matching consecutive transitions, over the transition count.
    Temporal,
}

impl Semantics {
    pub fn as_str(&self) -> &'static str {
        match self {
            Semantics::Graph => "graph",
            Semantics::Temporal => "temporal",
        }
    }
}

impl FromStr for Semantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph" => Ok(Semantics::Graph),
            "temporal" => Ok(Semantics::Temporal),
            other => Err(Error::InvalidParameter(format!(
                "unknown semantics '{other}'"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MiningConfig {
    pub min_supp: f64,
    pub semantics: Semantics,
    pub threshold_mode: ThresholdMode,
    pub k1: f64,
    pub k2: f64,
    pub user_thresholds: Option<UserThresholds>,
    pub max_len: Option<usize>,
    pub closed_only: bool,
    pub enable_property1_prune: bool,
    /// Worker pool size for per-level candidate evaluation; 1 = sequential.
    pub workers: usize,
}

impl MiningConfig {
    pub fn new(min_supp: f64, semantics: Semantics) -> Self {
        MiningConfig {
            min_supp,
            semantics,
            threshold_mode: ThresholdMode::None,
            k1: 1.0,
            k2: 0.0,
            user_thresholds: None,
            max_len: None,
            closed_only: false,
            enable_property1_prune: true,
            workers: 1,
        }
    }

    fn validate(&self, d: &Dataset) -> Result<()> {
        if !(self.min_supp > 0.0 && self.min_supp <= 1.0) {
            return Err(Error::InvalidMinSupp(self.min_supp));
        }
        if self.max_len == Some(0) {
            return Err(Error::InvalidMaxLen);
        }
        if self.closed_only && self.semantics == Semantics::Graph {
            return Err(Error::UnsupportedFilter {
                filter: "closed-only",
                semantics: "graph",
            });
        }
        if self.semantics == Semantics::Temporal && !d.temporal_order() {
            return Err(Error::NotTemporal);
        }
        Ok(())
    }
}

/// One reported pattern. `complement_support` is attached under the temporal
/// semantics when the complement's own support differs.
#[derive(Debug, Clone, PartialEq)]
pub struct MinedPattern {
    pub pattern: GradualPattern,
    pub support: Support,
    pub complement_support: Option<Support>,
}

#[derive(Debug, Clone, Default)]
pub struct MiningStats {
    pub candidates_per_level: Vec<usize>,
    pub wall_time_ms: f64,
    /// OS high-water RSS reading; coarse and monotone per process.
    pub peak_memory_bytes: Option<u64>,
    pub pruned_attributes: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct MiningResult {
    pub attribute_names: Vec<String>,
    pub semantics: Semantics,
    pub min_supp: f64,
    pub patterns: Vec<MinedPattern>,
    pub stats: MiningStats,
}

/// Compute thresholds per the config, then mine.
pub fn mine(d: &Dataset, cfg: &MiningConfig) -> Result<MiningResult> {
    cfg.validate(d)?;
    let t = set_thresholds(
        d,
        cfg.threshold_mode,
        cfg.k1,
        cfg.k2,
        cfg.user_thresholds.as_ref(),
    )?;
    mine_with_thresholds(d, &t, cfg)
}

/// Mine with an explicit threshold vector (bypasses SetThreshold).
pub fn mine_with_thresholds(
    d: &Dataset,
    t: &ThresholdVector,
    cfg: &MiningConfig,
) -> Result<MiningResult> {
    cfg.validate(d)?;
    if t.len() != d.n_attributes() {
        return Err(Error::DimensionMismatch(t.len(), d.n_attributes()));
    }
    let start = Instant::now();
    let (patterns, candidates_per_level, pruned_attributes) = match cfg.semantics {
        Semantics::Graph => mine_graph(d, t, cfg)?,
        Semantics::Temporal => mine_temporal(d, t, cfg)?,
    };
    let mut patterns = patterns;
    patterns.sort_by(|a, b| {
        (a.pattern.len(), a.pattern.items()).cmp(&(b.pattern.len(), b.pattern.items()))
    });
    Ok(MiningResult {
        attribute_names: d.attribute_names().to_vec(),
        semantics: cfg.semantics,
        min_supp: cfg.min_supp,
        patterns,
        stats: MiningStats {
            candidates_per_level,
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
            peak_memory_bytes: peak_memory_bytes(),
            pruned_attributes,
        },
    })
}

/// Generate level-(k+1) candidates from the sorted frequent k-patterns:
/// join entries sharing their first k-1 items, keep results whose checkable
/// k-subsets are all frequent. Returns (index of left parent, added item).
fn join_candidates(
    prev: &[GradualPattern],
    freq: &HashSet<GradualPattern>,
    complement_symmetric: bool,
) -> Vec<(usize, GradualItem)> {
    let mut out = Vec::new();
    for a in 0..prev.len() {
        let pa = &prev[a];
        if !pa.is_canonical() {
            continue;
        }
        let k = pa.len();
        for pb in &prev[a + 1..] {
            if pb.len() != k || pa.items()[..k - 1] != pb.items()[..k - 1] {
                break;
            }
            let added = pb.items()[k - 1];
            let candidate = match pa.with_item(added) {
                Ok(c) => c,
                Err(_) => continue, // same attribute, different direction
            };
            let all_subsets_ok = candidate.drop_one().into_iter().all(|sub| {
                if &sub == pa || sub == *pb {
                    return true;
                }
                if complement_symmetric {
                    freq.contains(&sub.canonicalize())
                } else if sub.is_canonical() || sub.len() == 1 {
                    // level-1 bookkeeping holds both directions
                    freq.contains(&sub)
                } else {
                    // support of a non-canonical temporal subset is unknown;
                    // the direct evaluation below still filters the candidate
                    true
                }
            });
            if all_subsets_ok {
                out.push((a, added));
            }
        }
    }
    out
}

fn run_level<I, O, F>(items: Vec<I>, workers: usize, eval: F) -> Result<Vec<O>>
where
    I: Send,
    O: Send,
    F: Fn(I) -> Result<O> + Sync + Send,
{
    if workers <= 1 {
        items.into_iter().map(eval).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;
        pool.install(|| items.into_par_iter().map(eval).collect())
    }
}

type LevelOutcome = (Vec<MinedPattern>, Vec<usize>, Vec<String>);

fn mine_graph(d: &Dataset, t: &ThresholdVector, cfg: &MiningConfig) -> Result<LevelOutcome> {
    let n = d.n_objects();
    let m = d.n_attributes();
    let max_len = cfg.max_len.unwrap_or(m).min(m);
    let mut candidates_per_level = Vec::new();
    let mut reported = Vec::new();

    // Level 1: one matrix per attribute; the mirrored direction shares its
    // support (transposition preserves path lengths).
    candidates_per_level.push(m);
    let level1 = run_level((0..m).collect(), cfg.workers, |j| {
        let geq = item_matrix(d, GradualItem::geq(j), t.sigma(j))?.prune_isolated();
        let leq = item_matrix(d, GradualItem::leq(j), t.sigma(j))?.prune_isolated();
        let support = Support::new(crate::graph::pattern_path_length(&geq)?, n);
        Ok((j, geq, leq, support))
    })?;

    let mut prev: Vec<(GradualPattern, Arc<PrecedenceMatrix>, Support)> = Vec::new();
    for (j, geq, leq, support) in level1 {
        if support.meets(cfg.min_supp) {
            reported.push(MinedPattern {
                pattern: GradualPattern::single(GradualItem::geq(j)),
                support,
                complement_support: None,
            });
            prev.push((
                GradualPattern::single(GradualItem::geq(j)),
                Arc::new(geq),
                support,
            ));
            prev.push((
                GradualPattern::single(GradualItem::leq(j)),
                Arc::new(leq),
                support,
            ));
        }
    }
    prev.sort_by(|a, b| a.0.cmp(&b.0));

    let mut item_cache: Vec<[Option<Arc<PrecedenceMatrix>>; 2]> = vec![[None, None]; m];
    for (p, mat, _) in &prev {
        let it = p.items()[0];
        let slot = usize::from(it.direction == Direction::Leq);
        item_cache[it.attribute][slot] = Some(Arc::clone(mat));
    }

    for _level in 2..=max_len {
        if prev.len() < 2 {
            break;
        }
        let freq: HashSet<GradualPattern> = prev.iter().map(|(p, _, _)| p.clone()).collect();
        let patterns: Vec<GradualPattern> = prev.iter().map(|(p, _, _)| p.clone()).collect();
        let candidates = join_candidates(&patterns, &freq, true);
        if candidates.is_empty() {
            break;
        }
        candidates_per_level.push(candidates.len());

        let evaluated = {
            let prev_ref = &prev;
            let cache_ref = &item_cache;
            run_level(candidates, cfg.workers, move |(a, added)| {
                let (pa, mat_a, _) = &prev_ref[a];
                let slot = usize::from(added.direction == Direction::Leq);
                let item_mat = cache_ref[added.attribute][slot]
                    .as_ref()
                    .expect("joined item is frequent, so its matrix is cached");
                let joined = mat_a.and_join(item_mat)?.prune_isolated();
                let support = Support::new(crate::graph::pattern_path_length(&joined)?, n);
                let pattern = pa.with_item(added)?;
                Ok((pattern, joined, support))
            })?
        };

        let mut next = Vec::new();
        for (pattern, matrix, support) in evaluated {
            if support.meets(cfg.min_supp) {
                reported.push(MinedPattern {
                    pattern: pattern.clone(),
                    support,
                    complement_support: None,
                });
                next.push((pattern, Arc::new(matrix), support));
            }
        }
        prev = next;
    }

    Ok((reported, candidates_per_level, Vec::new()))
}

/// Transition bitmask per gradual item.
fn transition_mask(s: &SignTable, item: GradualItem) -> Vec<u64> {
    let nt = s.n_transitions();
    let mut mask = vec![0u64; nt.div_ceil(64)];
    for j in 0..nt {
        let sign = s.sign(j, item.attribute);
        let hit = match item.direction {
            Direction::Geq => sign == crate::temporal::Sign::Plus,
            Direction::Leq => sign == crate::temporal::Sign::Minus,
        };
        if hit {
            mask[j / 64] |= 1 << (j % 64);
        }
    }
    mask
}

fn popcount(mask: &[u64]) -> usize {
    mask.iter().map(|w| w.count_ones() as usize).sum()
}

fn and_mask(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn mine_temporal(d: &Dataset, t: &ThresholdVector, cfg: &MiningConfig) -> Result<LevelOutcome> {
    let s = num2cat(d, t)?;
    let nt = s.n_transitions();
    let m = d.n_attributes();
    let max_len = cfg.max_len.unwrap_or(m).min(m);
    let min_count = (cfg.min_supp * nt as f64).ceil().max(1.0) as usize;

    let mut pruned_attributes = Vec::new();
    let mut live_attrs = Vec::new();
    for j in 0..m {
        if cfg.enable_property1_prune && property1_prunable(d, j, t.sigma(j), min_count) {
            pruned_attributes.push(d.attribute_name(j).to_string());
        } else {
            live_attrs.push(j);
        }
    }

    let mut candidates_per_level = vec![live_attrs.len()];
    let mut reported = Vec::new();

    let masks: Vec<[Vec<u64>; 2]> = (0..m)
        .map(|j| {
            [
                transition_mask(&s, GradualItem::geq(j)),
                transition_mask(&s, GradualItem::leq(j)),
            ]
        })
        .collect();

    let mut prev: Vec<(GradualPattern, Arc<Vec<u64>>, Support)> = Vec::new();
    for &j in &live_attrs {
        let supp_geq = Support::new(popcount(&masks[j][0]), nt);
        let supp_leq = Support::new(popcount(&masks[j][1]), nt);
        if supp_geq.meets(cfg.min_supp) {
            reported.push(MinedPattern {
                pattern: GradualPattern::single(GradualItem::geq(j)),
                support: supp_geq,
                complement_support: (supp_leq != supp_geq).then_some(supp_leq),
            });
            prev.push((
                GradualPattern::single(GradualItem::geq(j)),
                Arc::new(masks[j][0].clone()),
                supp_geq,
            ));
        }
        if supp_leq.meets(cfg.min_supp) {
            prev.push((
                GradualPattern::single(GradualItem::leq(j)),
                Arc::new(masks[j][1].clone()),
                supp_leq,
            ));
        }
    }
    prev.sort_by(|a, b| a.0.cmp(&b.0));

    for _level in 2..=max_len {
        if prev.len() < 2 {
            break;
        }
        let freq: HashSet<GradualPattern> = prev.iter().map(|(p, _, _)| p.clone()).collect();
        let patterns: Vec<GradualPattern> = prev.iter().map(|(p, _, _)| p.clone()).collect();
        let candidates = join_candidates(&patterns, &freq, false);
        if candidates.is_empty() {
            break;
        }
        candidates_per_level.push(candidates.len());

        let evaluated = {
            let prev_ref = &prev;
            let masks_ref = &masks;
            run_level(candidates, cfg.workers, move |(a, added)| {
                let (pa, mask_a, _) = &prev_ref[a];
                let slot = usize::from(added.direction == Direction::Leq);
                let joined = and_mask(mask_a, &masks_ref[added.attribute][slot]);
                let support = Support::new(popcount(&joined), nt);
                let pattern = pa.with_item(added)?;
                Ok((pattern, joined, support))
            })?
        };

        let mut next = Vec::new();
        for (pattern, mask, support) in evaluated {
            if support.meets(cfg.min_supp) {
                let complement = pattern.complement();
                let mut cmask: Option<Vec<u64>> = None;
                for it in complement.items() {
                    let slot = usize::from(it.direction == Direction::Leq);
                    let im = &masks[it.attribute][slot];
                    cmask = Some(match cmask {
                        None => im.clone(),
                        Some(acc) => and_mask(&acc, im),
                    });
                }
                let csupp = Support::new(popcount(&cmask.unwrap()), nt);
                reported.push(MinedPattern {
                    pattern: pattern.clone(),
                    support,
                    complement_support: (csupp != support).then_some(csupp),
                });
                next.push((pattern, Arc::new(mask), support));
            }
        }
        prev = next;
    }

    if cfg.closed_only {
        reported.retain(|mp| is_closed(&s, &mp.pattern));
    }

    Ok((reported, candidates_per_level, pruned_attributes))
}

/// Process high-water RSS via getrusage; ru_maxrss is in kilobytes on Linux.
#[cfg(unix)]
fn peak_memory_bytes() -> Option<u64> {
    let mut usage = std::mem::MaybeUninit::<libc::rusage>::uninit();
    let rc = unsafe { libc::getrusage(libc::RUSAGE_SELF, usage.as_mut_ptr()) };
    if rc != 0 {
        return None;
    }
    let usage = unsafe { usage.assume_init() };
    u64::try_from(usage.ru_maxrss).ok().map(|kb| kb * 1024)
}

#[cfg(not(unix))]
fn peak_memory_bytes() -> Option<u64> {
    None
}

#[derive(Serialize)]
struct JsonItem<'a> {
    attr: &'a str,
    dir: &'static str,
}

#[derive(Serialize)]
struct JsonPattern<'a> {
    items: Vec<JsonItem<'a>>,
    support: f64,
    size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    complement_support: Option<f64>,
}

#[derive(Serialize)]
struct JsonStats<'a> {
    semantics: &'static str,
    min_supp: f64,
    pattern_count: usize,
    candidates_per_level: &'a [usize],
    pruned_attributes: &'a [String],
}

#[derive(Serialize)]
struct JsonResult<'a> {
    patterns: Vec<JsonPattern<'a>>,
    stats: JsonStats<'a>,
}

impl MiningResult {
    fn selected(&self, min_size: usize) -> impl Iterator<Item = &MinedPattern> {
        self.patterns
            .iter()
            .filter(move |p| p.pattern.len() >= min_size)
    }

    /// Deterministic JSON: a pattern array plus a stats object. Volatile
    /// stats (wall time, memory) are intentionally not serialized.
    pub fn to_json(&self, min_size: usize) -> String {
        let patterns: Vec<JsonPattern> = self
            .selected(min_size)
            .map(|mp| JsonPattern {
                items: mp
                    .pattern
                    .items()
                    .iter()
                    .map(|it| JsonItem {
                        attr: &self.attribute_names[it.attribute],
                        dir: it.direction.symbol(),
                    })
                    .collect(),
                support: mp.support.value(),
                size: mp.pattern.len(),
                complement_support: mp.complement_support.map(|s| s.value()),
            })
            .collect();
        let count = patterns.len();
        let result = JsonResult {
            patterns,
            stats: JsonStats {
                semantics: self.semantics.as_str(),
                min_supp: self.min_supp,
                pattern_count: count,
                candidates_per_level: &self.stats.candidates_per_level,
                pruned_attributes: &self.stats.pruned_attributes,
            },
        };
        let mut out = serde_json::to_string_pretty(&result).expect("serializable");
        out.push('\n');
        out
    }

    /// CSV alternative: one pattern per row, items joined by ';'.
    pub fn to_csv(&self, min_size: usize) -> String {
        let mut out = String::from("items,support,size,complement_support\n");
        for mp in self.selected(min_size) {
            let items = mp
                .pattern
                .items()
                .iter()
                .map(|it| {
                    format!(
                        "{}{}",
                        self.attribute_names[it.attribute],
                        it.direction.symbol()
                    )
                })
                .collect::<Vec<_>>()
                .join(";");
            let complement = mp
                .complement_support
                .map(|s| s.value().to_string())
                .unwrap_or_default();
            out.push_str(&format!(
                "{items},{},{},{complement}\n",
                mp.support.value(),
                mp.pattern.len()
            ));
        }
        out
    }
}
