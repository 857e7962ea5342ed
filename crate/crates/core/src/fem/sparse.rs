/// Compressed sparse row matrix with sorted, unique column indices per row.
#[derive(Clone, Debug, PartialEq)]
pub struct CsrMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    col: Vec<usize>,
    val: Vec<f64>,
}

impl CsrMatrix {
    /// Square matrix from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(n: usize, triplets: &[(usize, usize, f64)]) -> Self {
        let mut acc = RowAccumulator::new(n);
        for &(i, j, v) in triplets {
            acc.add(i, j, v);
        }
        acc.into_csr()
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            row_ptr: (0..=n).collect(),
            col: (0..n).collect(),
            val: vec![1.0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.val.len()
    }

    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        (&self.col[r.clone()], &self.val[r])
    }

    pub fn row_mut(&mut self, i: usize) -> (&[usize], &mut [f64]) {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        (&self.col[r.clone()], &mut self.val[r])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (c, v) = self.row(i);
        c.binary_search(&j).map(|k| v[k]).unwrap_or(0.0)
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| {
                let (c, v) = self.row(i);
                c.iter().zip(v).map(|(&j, a)| a * x[j]).sum()
            })
            .collect()
    }

    /// Lower and upper bandwidth of the stored pattern.
    pub fn bandwidths(&self) -> (usize, usize) {
        let (mut kl, mut ku) = (0, 0);
        for i in 0..self.n {
            let (c, _) = self.row(i);
            if let (Some(&first), Some(&last)) = (c.first(), c.last()) {
                kl = kl.max(i.saturating_sub(first));
                ku = ku.max(last.saturating_sub(i));
            }
        }
        (kl, ku)
    }

    /// Replaces row `i` by the unit row `e_i`, keeping the stored pattern.
    pub fn set_unit_row(&mut self, i: usize) {
        let (c, v) = self.row_mut(i);
        let diag = c.binary_search(&i).ok();
        for (k, x) in v.iter_mut().enumerate() {
            *x = if Some(k) == diag { 1.0 } else { 0.0 };
        }
        if diag.is_none() {
            self.insert(i, i, 1.0);
        }
    }

    fn insert(&mut self, i: usize, j: usize, v: f64) {
        let (c, _) = self.row(i);
        let pos = self.row_ptr[i] + c.partition_point(|&x| x < j);
        self.col.insert(pos, j);
        self.val.insert(pos, v);
        for p in &mut self.row_ptr[i + 1..] {
            *p += 1;
        }
    }

    pub fn is_finite(&self) -> bool {
        self.val.iter().all(|v| v.is_finite())
    }
}

/// Per-row buckets used during assembly. Contributions to the same entry are
/// summed in insertion order, so the result does not depend on anything but
/// the element loop order.
#[derive(Clone, Debug)]
pub struct RowAccumulator {
    rows: Vec<Vec<(usize, f64)>>,
}

impl RowAccumulator {
    pub fn new(n: usize) -> Self {
        Self { rows: vec![Vec::new(); n] }
    }

    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let row = &mut self.rows[i];
        match row.iter_mut().find(|(c, _)| *c == j) {
            Some((_, x)) => *x += v,
            None => row.push((j, v)),
        }
    }

    pub fn into_csr(self) -> CsrMatrix {
        let n = self.rows.len();
        let mut row_ptr = Vec::with_capacity(n + 1);
        let nnz = self.rows.iter().map(Vec::len).sum();
        let mut col = Vec::with_capacity(nnz);
        let mut val = Vec::with_capacity(nnz);
        row_ptr.push(0);
        for mut row in self.rows {
            row.sort_by_key(|&(c, _)| c);
            for (c, v) in row {
                col.push(c);
                val.push(v);
            }
            row_ptr.push(col.len());
        }
        CsrMatrix { n, row_ptr, col, val }
    }
}

/// Assembled linear system with the boundary/interior partition of its unknowns.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseSystem {
    pub matrix: CsrMatrix,
    pub rhs: Vec<f64>,
    pub boundary: Vec<usize>,
    pub interior: Vec<usize>,
}

impl SparseSystem {
    pub fn n(&self) -> usize {
        self.matrix.n()
    }
}
