//! Precedence-graph support semantics: one boolean object-by-object matrix
//! per gradual item, AND-joined across the items of a pattern. The support of
//! a pattern is the longest path in the resulting graph over the object
//! count. Rows are bit-packed in u64 words so joins and degree scans run
//! word-wise.

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::pattern::{Direction, GradualItem, GradualPattern};
use crate::support::Support;
use crate::thresholds::ThresholdVector;

/// Bit-packed n-by-n adjacency: `bit(i, j)` means object i may precede
/// object j under the pattern. Deleted objects keep all-zero rows/columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecedenceMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    alive: Vec<bool>,
}

impl PrecedenceMatrix {
    fn zeroed(n: usize) -> Self {
        let words = n.div_ceil(64);
        PrecedenceMatrix {
            n,
            words,
            bits: vec![0; n * words],
            alive: vec![true; n],
        }
    }

    /// Build from explicit boolean rows (tests and debugging).
    pub fn from_bool_rows(rows: &[Vec<bool>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeroed(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "adjacency must be square");
            for (j, &b) in row.iter().enumerate() {
                if b {
                    m.set_bit(i, j);
                }
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bit(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn set_bit(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1u64 << (j % 64);
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn alive(&self) -> &[bool] {
        &self.alive
    }

    pub fn alive_count(&self) -> usize {
        self.alive.iter().filter(|a| **a).count()
    }

    fn row_is_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(|w| *w == 0)
    }

    /// Bitwise conjunction of two matrices over the same objects.
    pub fn and_join(&self, other: &PrecedenceMatrix) -> Result<PrecedenceMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a & b)
            .collect();
        let alive = self
            .alive
            .iter()
            .zip(&other.alive)
            .map(|(a, b)| *a && *b)
            .collect();
        Ok(PrecedenceMatrix {
            n: self.n,
            words: self.words,
            bits,
            alive,
        })
    }

    /// Delete every object whose row and column are entirely zero. One pass
    /// reaches the fixpoint: such objects touch no edge, so deleting them
    /// never zeroes anything new.
    pub fn prune_isolated(&self) -> PrecedenceMatrix {
        let mut col_any = vec![0u64; self.words];
        for i in 0..self.n {
            if !self.row_is_zero(i) {
                for (w, acc) in self.row(i).iter().zip(col_any.iter_mut()) {
                    *acc |= w;
                }
            }
        }
        let mut out = self.clone();
        for i in 0..self.n {
            let has_in = col_any[i / 64] >> (i % 64) & 1 == 1;
            if !has_in && self.row_is_zero(i) {
                out.alive[i] = false;
            }
        }
        out
    }

    /// Longest path measured in nodes over the alive objects: peel
    /// zero-in-degree layers; the number of layers is the answer. A single
    /// alive node counts 1, no alive nodes 0.
    pub fn longest_path(&self) -> Result<usize> {
        let alive_count = self.alive_count();
        if alive_count == 0 {
            return Ok(0);
        }
        let mut indeg = vec![0usize; self.n];
        for i in 0..self.n {
            if !self.alive[i] {
                continue;
            }
            self.for_each_neighbor(i, |j| indeg[j] += 1);
        }
        let mut frontier: Vec<usize> = (0..self.n)
            .filter(|&i| self.alive[i] && indeg[i] == 0)
            .collect();
        let mut processed = 0usize;
        let mut layers = 0usize;
        while !frontier.is_empty() {
            layers += 1;
            processed += frontier.len();
            let mut next = Vec::new();
            for &i in &frontier {
                self.for_each_neighbor(i, |j| {
                    indeg[j] -= 1;
                    if indeg[j] == 0 {
                        next.push(j);
                    }
                });
            }
            frontier = next;
        }
        if processed < alive_count {
            return Err(Error::CycleDetected);
        }
        Ok(layers)
    }

    fn for_each_neighbor<F: FnMut(usize)>(&self, i: usize, mut f: F) {
        for (wi, &word) in self.row(i).iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let j = wi * 64 + w.trailing_zeros() as usize;
                f(j);
                w &= w - 1;
            }
        }
    }

    /// 0/1 grid with t-labels, alive objects only. Golden-tested.
    pub fn dump(&self) -> String {
        let idx: Vec<usize> = (0..self.n).filter(|&i| self.alive[i]).collect();
        let labels: Vec<String> = idx.iter().map(|i| format!("t{}", i + 1)).collect();
        let width = labels.iter().map(|l| l.len()).max().unwrap_or(1);
        let mut out = String::new();
        out.push_str(&" ".repeat(width));
        for l in &labels {
            out.push_str(&format!(" {l:>width$}"));
        }
        out.push('\n');
        for (pos, &i) in idx.iter().enumerate() {
            out.push_str(&format!("{:>width$}", labels[pos]));
            for &j in &idx {
                out.push_str(&format!(" {:>width$}", u8::from(self.bit(i, j))));
            }
            out.push('\n');
        }
        out
    }
}

/// Precedence matrix of one gradual item. With sigma = 0 only a strict value
/// increase makes an edge (ties give no edge in either direction); with
/// sigma > 0 the variation must reach sigma.
pub fn item_matrix(d: &Dataset, item: GradualItem, sigma: f64) -> Result<PrecedenceMatrix> {
    if sigma.is_nan() || sigma < 0.0 {
        return Err(Error::NegativeSigma);
    }
    if item.attribute >= d.n_attributes() {
        return Err(Error::IndexOutOfRange {
            index: item.attribute,
            len: d.n_attributes(),
        });
    }
    let values = d.column(item.attribute)?;
    let n = d.n_objects();
    let mut m = PrecedenceMatrix::zeroed(n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let diff = match item.direction {
                Direction::Geq => values[j] - values[i],
                Direction::Leq => values[i] - values[j],
            };
            let edge = if sigma > 0.0 {
                diff >= sigma
            } else {
                diff > 0.0
            };
            if edge {
                m.set_bit(i, j);
            }
        }
    }
    Ok(m)
}

/// Support of a pattern under the precedence-graph semantics: longest path
/// of the pruned AND-join of its item matrices, over the object count.
pub fn support_graph(d: &Dataset, g: &GradualPattern, t: &ThresholdVector) -> Result<Support> {
    if t.len() != d.n_attributes() {
        return Err(Error::DimensionMismatch(t.len(), d.n_attributes()));
    }
    let mut joined: Option<PrecedenceMatrix> = None;
    for item in g.items() {
        let m = item_matrix(d, *item, t.sigma(item.attribute))?;
        joined = Some(match joined {
            None => m,
            Some(acc) => acc.and_join(&m)?,
        });
    }
    let pruned = joined.expect("pattern is non-empty").prune_isolated();
    Ok(Support::new(pattern_path_length(&pruned)?, d.n_objects()))
}

/// Longest path of a pattern's pruned matrix, floored at 1: a single object
/// is a valid (trivial) sequence for any pattern, even when pruning deleted
/// every object of an edgeless graph.
pub(crate) fn pattern_path_length(pruned: &PrecedenceMatrix) -> Result<usize> {
    Ok(pruned.longest_path()?.max(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::CsvOptions;
    use crate::thresholds::{set_thresholds, ThresholdMode};
    use rand::{Rng, SeedableRng};

    const TABLE1: &str = include_str!("../tests/fixtures/table1.csv");
    const M_A1: &str = include_str!("../tests/fixtures/matrix_a1_geq.txt");
    const M_A1_S018: &str = include_str!("../tests/fixtures/matrix_a1_geq_s018.txt");
    const M_JOIN: &str = include_str!("../tests/fixtures/matrix_join.txt");
    const M_JOIN_SD: &str = include_str!("../tests/fixtures/matrix_join_sd.txt");
    const M_JOIN_SD_REDUCED: &str = include_str!("../tests/fixtures/matrix_join_sd_reduced.txt");

    fn table1() -> Dataset {
        Dataset::from_csv_reader(TABLE1.as_bytes(), &CsvOptions::default()).unwrap()
    }

    #[test]
    fn item_matrix_without_threshold_matches_golden() {
        let m = item_matrix(&table1(), GradualItem::geq(0), 0.0).unwrap();
        assert_eq!(m.dump(), M_A1);
        assert_eq!(
            (0..8).map(|j| u8::from(m.bit(0, j))).collect::<Vec<_>>(),
            [0, 1, 1, 1, 0, 1, 1, 1]
        );
        assert!((0..8).all(|j| !m.bit(6, j)), "t7 row must be zero");
    }

    #[test]
    fn item_matrix_with_threshold_matches_golden() {
        let m = item_matrix(&table1(), GradualItem::geq(0), 0.18).unwrap();
        assert_eq!(m.dump(), M_A1_S018);
        assert_eq!(
            (0..8).map(|j| u8::from(m.bit(0, j))).collect::<Vec<_>>(),
            [0, 0, 0, 0, 0, 1, 1, 0]
        );
    }

    #[test]
    fn leq_matrix_is_transpose_of_geq() {
        let d = table1();
        let geq = item_matrix(&d, GradualItem::geq(0), 0.18).unwrap();
        let leq = item_matrix(&d, GradualItem::leq(0), 0.18).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(leq.bit(i, j), geq.bit(j, i));
            }
        }
    }

    #[test]
    fn strictly_increasing_column_is_upper_triangular() {
        let d = Dataset::new(
            vec!["x".into()],
            (0..5).map(|i| vec![i as f64]).collect(),
            false,
        )
        .unwrap();
        let m = item_matrix(&d, GradualItem::geq(0), 0.0).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(m.bit(i, j), j > i);
            }
        }
    }

    #[test]
    fn ties_make_no_edge() {
        let d = Dataset::new(
            vec!["x".into()],
            vec![vec![2.0], vec![2.0], vec![3.0]],
            false,
        )
        .unwrap();
        let m = item_matrix(&d, GradualItem::geq(0), 0.0).unwrap();
        assert!(!m.bit(0, 1) && !m.bit(1, 0));
        assert!(m.bit(0, 2) && m.bit(1, 2));
    }

    #[test]
    fn negative_sigma_rejected() {
        assert!(matches!(
            item_matrix(&table1(), GradualItem::geq(0), -0.1),
            Err(Error::NegativeSigma)
        ));
    }

    #[test]
    fn and_join_matches_golden() {
        let d = table1();
        let a = item_matrix(&d, GradualItem::geq(0), 0.0).unwrap();
        let b = item_matrix(&d, GradualItem::geq(1), 0.0).unwrap();
        let joined = a.and_join(&b).unwrap();
        assert_eq!(joined.dump(), M_JOIN);
        assert_eq!(
            (0..8)
                .map(|j| u8::from(joined.bit(4, j)))
                .collect::<Vec<_>>(),
            [0, 1, 0, 1, 0, 1, 1, 1]
        );

        let dd = item_matrix(&d, GradualItem::geq(0), 0.18).unwrap();
        let e = item_matrix(&d, GradualItem::geq(1), 0.59).unwrap();
        assert_eq!(dd.and_join(&e).unwrap().dump(), M_JOIN_SD);
    }

    #[test]
    fn and_join_idempotent_and_checked() {
        let d = table1();
        let a = item_matrix(&d, GradualItem::geq(0), 0.0).unwrap();
        assert_eq!(a.and_join(&a).unwrap(), a);

        let small = PrecedenceMatrix::from_bool_rows(&vec![vec![false; 2]; 2]);
        assert!(matches!(
            a.and_join(&small),
            Err(Error::DimensionMismatch(8, 2))
        ));
    }

    #[test]
    fn prune_removes_isolated_object() {
        let d = table1();
        let dd = item_matrix(&d, GradualItem::geq(0), 0.18).unwrap();
        let e = item_matrix(&d, GradualItem::geq(1), 0.59).unwrap();
        let joined = dd.and_join(&e).unwrap();
        let pruned = joined.prune_isolated();
        assert_eq!(pruned.dump(), M_JOIN_SD_REDUCED);
        assert!(!pruned.alive()[3], "t4 is isolated");
        assert_eq!(pruned.alive_count(), 7);

        // no isolated object: unchanged
        let a = item_matrix(&d, GradualItem::geq(0), 0.0).unwrap();
        assert_eq!(a.prune_isolated(), a);

        // all-zero matrix: everything deleted
        let z = PrecedenceMatrix::from_bool_rows(&vec![vec![false; 3]; 3]);
        assert_eq!(z.prune_isolated().alive_count(), 0);
    }

    #[test]
    fn longest_path_examples() {
        let d = table1();
        let a = item_matrix(&d, GradualItem::geq(0), 0.0).unwrap();
        let b = item_matrix(&d, GradualItem::geq(1), 0.0).unwrap();
        let joined = a.and_join(&b).unwrap();
        assert_eq!(joined.longest_path().unwrap(), 5);

        let dd = item_matrix(&d, GradualItem::geq(0), 0.18).unwrap();
        let e = item_matrix(&d, GradualItem::geq(1), 0.59).unwrap();
        let reduced = dd.and_join(&e).unwrap().prune_isolated();
        assert_eq!(reduced.longest_path().unwrap(), 2);

        let zero = PrecedenceMatrix::from_bool_rows(&vec![vec![false; 4]; 4]);
        assert_eq!(zero.longest_path().unwrap(), 1);
        assert_eq!(zero.prune_isolated().longest_path().unwrap(), 0);
    }

    #[test]
    fn cycle_is_detected() {
        let m = PrecedenceMatrix::from_bool_rows(&[
            vec![false, true, false],
            vec![false, false, true],
            vec![true, false, false],
        ]);
        assert!(matches!(m.longest_path(), Err(Error::CycleDetected)));
    }

    #[test]
    fn support_graph_examples() {
        let d = table1();
        let zeros = ThresholdVector::zeros(4);
        let g12 = GradualPattern::new([GradualItem::geq(0), GradualItem::geq(1)]).unwrap();
        assert_eq!(support_graph(&d, &g12, &zeros).unwrap(), Support::new(5, 8));

        let sd = set_thresholds(&d, ThresholdMode::Sd, 1.0, 0.0, None).unwrap();
        assert_eq!(support_graph(&d, &g12, &sd).unwrap(), Support::new(2, 8));

        let g1 = GradualPattern::single(GradualItem::geq(0));
        assert_eq!(support_graph(&d, &g1, &zeros).unwrap(), Support::new(8, 8));
    }

    fn random_dataset(rng: &mut impl Rng, n: usize, m: usize) -> Dataset {
        let names = (0..m).map(|j| format!("a{}", j + 1)).collect();
        let rows = (0..n)
            .map(|_| (0..m).map(|_| rng.gen_range(0.5..10.0)).collect())
            .collect();
        Dataset::new(names, rows, true).unwrap()
    }

    fn random_pattern(rng: &mut impl Rng, m: usize) -> GradualPattern {
        let len = rng.gen_range(1..=m.min(3));
        let mut attrs: Vec<usize> = (0..m).collect();
        let mut items = Vec::new();
        for _ in 0..len {
            let k = rng.gen_range(0..attrs.len());
            let a = attrs.swap_remove(k);
            items.push(if rng.gen_bool(0.5) {
                GradualItem::geq(a)
            } else {
                GradualItem::leq(a)
            });
        }
        GradualPattern::new(items).unwrap()
    }

    #[test]
    fn complement_symmetry_and_antimonotonicity() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(31);
        for _ in 0..30 {
            let m = rng.gen_range(2..=4);
            let n = rng.gen_range(3..=8);
            let d = random_dataset(&mut rng, n, m);
            let sigmas: Vec<f64> = (0..m)
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        0.0
                    } else {
                        rng.gen_range(0.0..2.0)
                    }
                })
                .collect();
            let t = ThresholdVector::explicit(sigmas).unwrap();
            let g = random_pattern(&mut rng, m);

            let s = support_graph(&d, &g, &t).unwrap();
            let sc = support_graph(&d, &g.complement(), &t).unwrap();
            assert_eq!(s, sc, "complement symmetry violated for {g:?}");

            // adding an item can only lower support
            if g.len() < m {
                let free = (0..m)
                    .find(|a| g.items().iter().all(|it| it.attribute != *a))
                    .unwrap();
                let bigger = g.with_item(GradualItem::geq(free)).unwrap();
                let sb = support_graph(&d, &bigger, &t).unwrap();
                assert!(sb.count <= s.count);
            }
        }
    }

    #[test]
    fn prune_preserves_longest_path() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(37);
        for _ in 0..50 {
            let n = rng.gen_range(2..=9);
            // random DAG via random values (strict order, no cycles)
            let d = random_dataset(&mut rng, n, 2);
            let t = ThresholdVector::explicit(vec![rng.gen_range(0.0..3.0), 0.0]).unwrap();
            let a = item_matrix(&d, GradualItem::geq(0), t.sigma(0)).unwrap();
            let b = item_matrix(&d, GradualItem::geq(1), 0.0).unwrap();
            let joined = a.and_join(&b).unwrap();
            let has_edge = (0..n).any(|i| (0..n).any(|j| joined.bit(i, j)));
            let lp = joined.longest_path().unwrap();
            let lp_pruned = joined.prune_isolated().longest_path().unwrap();
            if has_edge {
                assert_eq!(lp, lp_pruned);
            } else {
                // the degenerate edgeless case: pruning deletes everything;
                // the single-object floor keeps the support definition intact
                assert_eq!((lp, lp_pruned), (1, 0));
            }
            assert_eq!(
                pattern_path_length(&joined.prune_isolated()).unwrap(),
                lp.max(1)
            );
        }
    }
}
