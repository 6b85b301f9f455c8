/// Exact support value: `count` objects (or transitions) out of `den`.
///
/// Kept as a rational so miner and oracle results can be compared without
/// float slack; `value()` converts for thresholds and serialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Support {
    pub count: usize,
    pub den: usize,
}

impl Support {
    pub fn new(count: usize, den: usize) -> Self {
        debug_assert!(den > 0 && count <= den);
        Support { count, den }
    }

    pub fn value(&self) -> f64 {
        self.count as f64 / self.den as f64
    }

    pub fn meets(&self, min_supp: f64) -> bool {
        self.value() >= min_supp
    }
}

impl std::fmt::Display for Support {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.count, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_fraction() {
        let s = Support::new(5, 8);
        assert_eq!(s.value(), 0.625);
        assert!(s.meets(0.625));
        assert!(!s.meets(0.626));
        assert_eq!(s.to_string(), "5/8");
    }
}
