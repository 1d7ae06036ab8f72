//! Dense GF(2) matrices on bitset rows.

use fixedbitset::FixedBitSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<FixedBitSet>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![FixedBitSet::with_capacity(cols); rows],
        }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.rows[r].set(c, v);
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].contains(c)
    }

    pub fn row(&self, r: usize) -> &FixedBitSet {
        &self.rows[r]
    }

    /// `M · v` over GF(2).
    pub fn apply(&self, v: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            if row.intersection_count(v) % 2 == 1 {
                out.insert(r);
            }
        }
        out
    }

    /// Reduced row echelon form; returns the pivot column of each nonzero row.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows.len()).find(|&i| self.rows[i].contains(c)) else {
                continue;
            };
            self.rows.swap(r, p);
            let pivot_row = self.rows[r].clone();
            for (i, row) in self.rows.iter_mut().enumerate() {
                if i != r && row.contains(c) {
                    row.symmetric_difference_with(&pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows.len() {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of `{v : M v = 0}`, one vector per free column, each with its
    /// free column set and the other free columns clear.
    pub fn kernel_basis(&self) -> Vec<FixedBitSet> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = FixedBitSet::with_capacity(self.cols);
                v.insert(free);
                for (row, &p) in m.rows.iter().zip(&pivots) {
                    if row.contains(free) {
                        v.insert(p);
                    }
                }
                v
            })
            .collect()
    }
}

/// Binary reflected Gray code of `i`.
pub fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// Index of the bit that flips between `gray(i - 1)` and `gray(i)`.
pub fn gray_flip(i: u64) -> usize {
    i.trailing_zeros() as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn from_rows(rows: &[&[u8]]) -> BitMatrix {
        let mut m = BitMatrix::zeros(rows.len(), rows[0].len());
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v == 1);
            }
        }
        m
    }

    #[test]
    fn kernel_of_small_matrix() {
        let m = from_rows(&[&[1, 1, 0, 0], &[0, 1, 1, 0]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).is_clear());
        }
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn gray_walk_visits_everything_once() {
        let mut seen = std::collections::HashSet::new();
        let mut state = 0u64;
        seen.insert(state);
        for i in 1..64u64 {
            state ^= 1 << gray_flip(i);
            assert_eq!(state, gray(i));
            assert!(seen.insert(state));
        }
        assert_eq!(seen.len(), 64);
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in 1usize..8, cols in 1usize..12, bits in proptest::collection::vec(any::<bool>(), 96)) {
            let mut m = BitMatrix::zeros(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    m.set(r, c, bits[r * cols + c]);
                }
            }
            let k = m.kernel_basis();
            prop_assert_eq!(k.len() + m.rank(), cols);
            for v in &k {
                prop_assert!(m.apply(v).is_clear());
            }
            // brute-force kernel size
            let brute = (0u32..1 << cols).filter(|mask| {
                let mut v = FixedBitSet::with_capacity(cols);
                for c in 0..cols { if mask >> c & 1 == 1 { v.insert(c); } }
                m.apply(&v).is_clear()
            }).count();
            prop_assert_eq!(brute, 1usize << k.len());
        }
    }
}
