//! Dense square bit matrix, one row of `u64` words per element.

#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix { n, words, data: vec![0; n * words] }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.data[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    /// `row[dst] |= row[src]`; returns whether `dst` changed.
    pub fn union_rows(&mut self, src: usize, dst: usize) -> bool {
        let mut changed = false;
        for k in 0..self.words {
            let s = self.data[src * self.words + k];
            let d = &mut self.data[dst * self.words + k];
            let next = *d | s;
            changed |= next != *d;
            *d = next;
        }
        changed
    }

    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + t)
            })
        })
    }

    pub fn transpose(&self) -> Self {
        let mut t = BitMatrix::new(self.n);
        for i in 0..self.n {
            for j in self.row_ones(i) {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Warshall: for every k, rows that reach k absorb row k.
    pub fn close_transitively(&mut self) {
        for k in 0..self.n {
            for i in 0..self.n {
                if i != k && self.get(i, k) {
                    self.union_rows(k, i);
                }
            }
        }
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.n {
            let line: String = (0..self.n).map(|j| if self.get(i, j) { '1' } else { '.' }).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}
