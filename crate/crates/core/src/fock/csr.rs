use num_complex::Complex64 as C64;

/// Square complex matrix in compressed-sparse-row form.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    pub n: usize,
    pub indptr: Vec<usize>,
    pub indices: Vec<usize>,
    pub values: Vec<C64>,
}

impl CsrMatrix {
    /// Builds from (row, col, value) triplets, summing duplicates in input order.
    pub fn from_triplets(n: usize, mut t: Vec<(usize, usize, C64)>) -> Self {
        t.sort_by_key(|&(r, c, _)| (r, c));
        let mut indptr = vec![0; n + 1];
        let mut indices = Vec::with_capacity(t.len());
        let mut values: Vec<C64> = Vec::with_capacity(t.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in t {
            if last == Some((r, c)) {
                *values.last_mut().unwrap() += v;
            } else {
                indices.push(c);
                values.push(v);
                indptr[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for r in 0..n {
            indptr[r + 1] += indptr[r];
        }
        CsrMatrix {
            n,
            indptr,
            indices,
            values,
        }
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, C64)> + '_ {
        let (a, b) = (self.indptr[r], self.indptr[r + 1]);
        self.indices[a..b]
            .iter()
            .copied()
            .zip(self.values[a..b].iter().copied())
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        let (a, b) = (self.indptr[r], self.indptr[r + 1]);
        match self.indices[a..b].binary_search(&c) {
            Ok(k) => self.values[a + k],
            Err(_) => C64::new(0.0, 0.0),
        }
    }

    /// y = A x. Rows are independent, so the result does not depend on the
    /// number of threads.
    pub fn matvec(&self, x: &[C64], y: &mut [C64]) {
        let row = |r: usize| {
            let mut s = C64::new(0.0, 0.0);
            for k in self.indptr[r]..self.indptr[r + 1] {
                s += self.values[k] * x[self.indices[k]];
            }
            s
        };
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            y.par_chunks_mut(256).enumerate().for_each(|(chunk, ys)| {
                for (i, yi) in ys.iter_mut().enumerate() {
                    *yi = row(chunk * 256 + i);
                }
            });
        }
        #[cfg(not(feature = "parallel"))]
        for (r, yi) in y.iter_mut().enumerate() {
            *yi = row(r);
        }
    }

    /// Largest absolute row sum, an upper bound on the spectral radius.
    pub fn max_row_sum(&self) -> f64 {
        (0..self.n)
            .map(|r| self.row(r).map(|(_, v)| v.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest |A_ij - B_ij| over the union of both sparsity patterns.
    pub fn max_abs_diff(&self, other: &CsrMatrix) -> f64 {
        assert_eq!(self.n, other.n);
        let mut worst: f64 = 0.0;
        for r in 0..self.n {
            let mut a = self.row(r).peekable();
            let mut b = other.row(r).peekable();
            loop {
                let d = match (a.peek().copied(), b.peek().copied()) {
                    (None, None) => break,
                    (Some((_, va)), None) => {
                        a.next();
                        va
                    }
                    (None, Some((_, vb))) => {
                        b.next();
                        vb
                    }
                    (Some((ca, va)), Some((cb, vb))) => {
                        if ca == cb {
                            a.next();
                            b.next();
                            va - vb
                        } else if ca < cb {
                            a.next();
                            va
                        } else {
                            b.next();
                            vb
                        }
                    }
                };
                worst = worst.max(d.norm());
            }
        }
        worst
    }

    pub fn adjoint(&self) -> CsrMatrix {
        let mut t = Vec::with_capacity(self.nnz());
        for r in 0..self.n {
            for (c, v) in self.row(r) {
                t.push((c, r, v.conj()));
            }
        }
        CsrMatrix::from_triplets(self.n, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_summed() {
        let one = C64::new(1.0, 0.0);
        let m = CsrMatrix::from_triplets(
            3,
            vec![(2, 1, one), (0, 0, one), (2, 1, one * 2.0), (1, 2, -one)],
        );
        assert_eq!(m.nnz(), 3);
        assert_eq!(m.get(2, 1), one * 3.0);
        assert_eq!(m.get(1, 1), C64::new(0.0, 0.0));
        let mut y = vec![C64::new(0.0, 0.0); 3];
        m.matvec(&[one, one, one * 2.0], &mut y);
        assert_eq!(y, vec![one, -one * 2.0, one * 3.0]);
    }

    #[test]
    fn diff_over_union() {
        let one = C64::new(1.0, 0.0);
        let a = CsrMatrix::from_triplets(2, vec![(0, 0, one), (1, 0, one)]);
        let b = CsrMatrix::from_triplets(2, vec![(0, 0, one), (0, 1, one * 0.5)]);
        assert_eq!(a.max_abs_diff(&b), 1.0);
        assert_eq!(a.max_abs_diff(&a), 0.0);
    }
}
