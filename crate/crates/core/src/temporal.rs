//! Temporal-transition support semantics: the dataset is recoded into an
//! (n-1)-row sign table over {+, -, o}, one row per consecutive-object
//! transition, and a pattern is supported by the transitions whose signs all
//! match. The extent/intent pair on this table yields the closure operator
//! for closed-pattern filtering.

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::pattern::{Direction, GradualItem, GradualPattern};
use crate::support::Support;
use crate::thresholds::ThresholdVector;

/// Transition symbol: value rose above sigma, fell below -sigma, or neither.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::Zero => 'o',
        }
    }

    fn matches(self, direction: Direction) -> bool {
        matches!(
            (self, direction),
            (Sign::Plus, Direction::Geq) | (Sign::Minus, Direction::Leq)
        )
    }
}

/// (n-1) x m table of transition signs.
#[derive(Debug, Clone, PartialEq)]
pub struct SignTable {
    attribute_names: Vec<String>,
    symbols: Vec<Vec<Sign>>,
}

impl SignTable {
    pub fn n_transitions(&self) -> usize {
        self.symbols.len()
    }

    pub fn n_attributes(&self) -> usize {
        self.attribute_names.len()
    }

    pub fn attribute_names(&self) -> &[String] {
        &self.attribute_names
    }

    /// Sign of attribute `k` over transition `j` (t_{j+1} vs t_j).
    pub fn sign(&self, j: usize, k: usize) -> Sign {
        self.symbols[j][k]
    }

    /// CSV of +/-/o cells under the attribute header.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.attribute_names.join(","));
        out.push('\n');
        for row in &self.symbols {
            let cells: Vec<String> = row.iter().map(|s| s.symbol().to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Recode a temporally ordered dataset into its sign table: `+` when the next
/// value exceeds the current by more than sigma, `-` when it falls below by
/// more than sigma, `o` otherwise.
pub fn num2cat(d: &Dataset, t: &ThresholdVector) -> Result<SignTable> {
    if !d.temporal_order() {
        return Err(Error::NotTemporal);
    }
    if t.len() != d.n_attributes() {
        return Err(Error::DimensionMismatch(t.len(), d.n_attributes()));
    }
    let n = d.n_objects();
    let m = d.n_attributes();
    let mut symbols = Vec::with_capacity(n - 1);
    for j in 0..n - 1 {
        let mut row = Vec::with_capacity(m);
        for k in 0..m {
            let prev = d.value(j, k);
            let next = d.value(j + 1, k);
            let sigma = t.sigma(k);
            row.push(if next > prev + sigma {
                Sign::Plus
            } else if next < prev - sigma {
                Sign::Minus
            } else {
                Sign::Zero
            });
        }
        symbols.push(row);
    }
    Ok(SignTable {
        attribute_names: d.attribute_names().to_vec(),
        symbols,
    })
}

/// Sorted set of transition indices supporting a pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionSet {
    indices: Vec<usize>,
}

impl TransitionSet {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        TransitionSet { indices }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

fn transition_matches(s: &SignTable, j: usize, g: &GradualPattern) -> bool {
    g.items()
        .iter()
        .all(|it| s.sign(j, it.attribute).matches(it.direction))
}

/// Transitions whose row matches every item's required sign.
pub fn g_extent(s: &SignTable, g: &GradualPattern) -> TransitionSet {
    TransitionSet::new(
        (0..s.n_transitions())
            .filter(|&j| transition_matches(s, j, g))
            .collect(),
    )
}

/// Fraction of transitions matching the pattern exactly (a `o` never
/// matches).
pub fn support_temporal(s: &SignTable, g: &GradualPattern) -> Support {
    let count = (0..s.n_transitions())
        .filter(|&j| transition_matches(s, j, g))
        .count();
    Support::new(count, s.n_transitions())
}

/// Every gradual item whose sign is constant and non-zero across the given
/// transitions. The empty set maps to all 2m items (the lattice top).
pub fn f_intent(s: &SignTable, t: &TransitionSet) -> Vec<GradualItem> {
    let m = s.n_attributes();
    let mut items = Vec::new();
    if t.is_empty() {
        for a in 0..m {
            items.push(GradualItem::geq(a));
            items.push(GradualItem::leq(a));
        }
        return items;
    }
    for a in 0..m {
        let first = s.sign(t.indices()[0], a);
        if first == Sign::Zero {
            continue;
        }
        if t.indices().iter().all(|&j| s.sign(j, a) == first) {
            items.push(match first {
                Sign::Plus => GradualItem::geq(a),
                Sign::Minus => GradualItem::leq(a),
                Sign::Zero => unreachable!(),
            });
        }
    }
    items
}

/// A pattern is closed when f(g(G)) gives back exactly G.
pub fn is_closed(s: &SignTable, g: &GradualPattern) -> bool {
    let closure = f_intent(s, &g_extent(s, g));
    closure.len() == g.len() && g.items().iter().all(|it| closure.contains(it))
}

/// Dataset-reduction test: when the total absolute consecutive variation of
/// an attribute cannot cover sigma on min_count transitions, no frequent
/// pattern can contain that attribute.
pub fn property1_prunable(d: &Dataset, attr: usize, sigma: f64, min_count: usize) -> bool {
    let total: f64 = (0..d.n_objects() - 1)
        .map(|i| (d.value(i + 1, attr) - d.value(i, attr)).abs())
        .sum();
    total < sigma * min_count as f64
}
