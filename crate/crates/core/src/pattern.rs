//! Gradual items and patterns: an attribute paired with a variation
//! direction, and sets of such items over distinct attributes.

use crate::error::{Error, Result};

/// Variation direction of a gradual item: `Geq` reads "the more", `Leq`
/// "the less".
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Geq,
    Leq,
}

impl Direction {
    pub fn flipped(self) -> Self {
        match self {
            Direction::Geq => Direction::Leq,
            Direction::Leq => Direction::Geq,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Direction::Geq => ">=",
            Direction::Leq => "<=",
        }
    }
}

/// One gradual item: attribute index plus direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradualItem {
    pub attribute: usize,
    pub direction: Direction,
}

impl GradualItem {
    pub fn geq(attribute: usize) -> Self {
        GradualItem {
            attribute,
            direction: Direction::Geq,
        }
    }

    pub fn leq(attribute: usize) -> Self {
        GradualItem {
            attribute,
            direction: Direction::Leq,
        }
    }

    pub fn flipped(self) -> Self {
        GradualItem {
            attribute: self.attribute,
            direction: self.direction.flipped(),
        }
    }
}

/// A non-empty set of gradual items, at most one per attribute, kept sorted
/// by attribute index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradualPattern {
    items: Vec<GradualItem>,
}

impl GradualPattern {
    pub fn new<I: IntoIterator<Item = GradualItem>>(items: I) -> Result<Self> {
        let mut items: Vec<GradualItem> = items.into_iter().collect();
        if items.is_empty() {
            return Err(Error::EmptyPattern);
        }
        items.sort();
        for w in items.windows(2) {
            if w[0].attribute == w[1].attribute {
                return Err(Error::DuplicatePatternAttribute(w[0].attribute));
            }
        }
        Ok(GradualPattern { items })
    }

    pub fn single(item: GradualItem) -> Self {
        GradualPattern { items: vec![item] }
    }

    pub fn items(&self) -> &[GradualItem] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The same pattern with every direction flipped.
    pub fn complement(&self) -> Self {
        GradualPattern {
            items: self.items.iter().map(|i| i.flipped()).collect(),
        }
    }

    /// A pattern is canonical when its lowest-indexed attribute varies
    /// upward; of a pattern and its complement exactly one is canonical.
    pub fn is_canonical(&self) -> bool {
        self.items[0].direction == Direction::Geq
    }

    pub fn canonicalize(&self) -> Self {
        if self.is_canonical() {
            self.clone()
        } else {
            self.complement()
        }
    }

    /// Extend by one more item (attribute must be new).
    pub fn with_item(&self, item: GradualItem) -> Result<Self> {
        GradualPattern::new(self.items.iter().copied().chain(std::iter::once(item)))
    }

    /// All subsets obtained by dropping one item; empty for singletons.
    pub fn drop_one(&self) -> Vec<GradualPattern> {
        if self.items.len() < 2 {
            return Vec::new();
        }
        (0..self.items.len())
            .map(|skip| GradualPattern {
                items: self
                    .items
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != skip)
                    .map(|(_, it)| *it)
                    .collect(),
            })
            .collect()
    }

    /// Render with attribute names, e.g. `a1>=,a2<=`.
    pub fn display(&self, names: &[String]) -> String {
        self.items
            .iter()
            .map(|it| format!("{}{}", names[it.attribute], it.direction.symbol()))
            .collect::<Vec<_>>()
            .join(",")
    }
}
