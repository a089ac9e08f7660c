use super::echelon::Echelon;
use super::field::{Elem, Field};
use super::mat::Mat;

/// Row-compressed sparse matrix. Entries within a row are sorted by column
/// and contain no explicit zeros.
#[derive(Clone, Debug)]
pub struct SparseMat {
    field: Field,
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<u32>,
    vals: Vec<Elem>,
}

impl SparseMat {
    /// Builds from per-row entry lists; duplicate columns are summed.
    pub fn from_rows(field: &Field, cols: usize, rows: Vec<Vec<(usize, Elem)>>) -> Self {
        let mut row_ptr = Vec::with_capacity(rows.len() + 1);
        let mut col_idx = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        let nrows = rows.len();
        for mut r in rows {
            r.sort_unstable_by_key(|&(c, _)| c);
            let mut i = 0;
            while i < r.len() {
                let c = r[i].0;
                let mut acc = 0;
                while i < r.len() && r[i].0 == c {
                    acc = field.add(acc, r[i].1);
                    i += 1;
                }
                if acc != 0 {
                    debug_assert!(c < cols);
                    col_idx.push(c as u32);
                    vals.push(acc);
                }
            }
            row_ptr.push(col_idx.len());
        }
        SparseMat {
            field: field.clone(),
            rows: nrows,
            cols,
            row_ptr,
            col_idx,
            vals,
        }
    }

    /// Builds from per-column entry lists (`columns[c]` holds `(row, value)`).
    pub fn from_columns(field: &Field, rows: usize, columns: Vec<Vec<(usize, Elem)>>) -> Self {
        let ncols = columns.len();
        let mut by_row: Vec<Vec<(usize, Elem)>> = vec![Vec::new(); rows];
        for (c, col) in columns.into_iter().enumerate() {
            for (r, v) in col {
                by_row[r].push((c, v));
            }
        }
        SparseMat::from_rows(field, ncols, by_row)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, Elem)> + '_ {
        let (a, b) = (self.row_ptr[r], self.row_ptr[r + 1]);
        self.col_idx[a..b]
            .iter()
            .zip(&self.vals[a..b])
            .map(|(&c, &v)| (c as usize, v))
    }

    pub fn row_entries(&self, r: usize) -> Vec<(usize, Elem)> {
        self.row(r).collect()
    }

    pub fn transpose(&self) -> SparseMat {
        let mut by_row: Vec<Vec<(usize, Elem)>> = vec![Vec::new(); self.cols];
        for r in 0..self.rows {
            for (c, v) in self.row(r) {
                by_row[c].push((r, v));
            }
        }
        SparseMat::from_rows(&self.field, self.rows, by_row)
    }

    pub fn to_dense(&self) -> Mat {
        let mut m = Mat::zeros(&self.field, self.rows, self.cols);
        for r in 0..self.rows {
            for (c, v) in self.row(r) {
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|r| self.row(r).fold(0, |acc, (c, x)| f.mul_add(acc, x, v[c])))
            .collect()
    }

    /// `v^T M`, i.e. `M^T v`.
    pub fn mul_vec_transposed(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.rows);
        let f = &self.field;
        let mut out = vec![0; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (c, x) in self.row(r) {
                out[c] = f.mul_add(out[c], a, x);
            }
        }
        out
    }

    /// Sparse product `self * other`.
    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.cols, other.rows);
        let f = &self.field;
        let mut rows = Vec::with_capacity(self.rows);
        let mut acc = vec![0 as Elem; other.cols];
        let mut touched = Vec::new();
        for r in 0..self.rows {
            for (k, a) in self.row(r) {
                for (c, b) in other.row(k) {
                    if acc[c] == 0 {
                        touched.push(c);
                    }
                    acc[c] = f.mul_add(acc[c], a, b);
                }
            }
            let mut row = Vec::with_capacity(touched.len());
            for &c in &touched {
                if acc[c] != 0 {
                    row.push((c, acc[c]));
                    acc[c] = 0;
                }
            }
            touched.clear();
            rows.push(row);
        }
        SparseMat::from_rows(f, other.cols, rows)
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, other: &SparseMat, c: Elem) -> SparseMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let rows = (0..self.rows)
            .map(|r| {
                self.row(r)
                    .chain(other.row(r).map(|(j, x)| (j, f.mul(c, x))))
                    .collect()
            })
            .collect();
        SparseMat::from_rows(f, self.cols, rows)
    }

    pub fn scale(&self, c: Elem) -> SparseMat {
        let f = &self.field;
        let rows = (0..self.rows)
            .map(|r| self.row(r).map(|(j, x)| (j, f.mul(c, x))).collect())
            .collect();
        SparseMat::from_rows(f, self.cols, rows)
    }

    pub fn is_zero(&self) -> bool {
        self.vals.is_empty()
    }

    /// Echelon basis of the row space.
    pub fn row_echelon(&self) -> Echelon {
        let mut e = Echelon::new(&self.field, self.cols);
        for r in 0..self.rows {
            if e.is_full() {
                break;
            }
            e.insert_sparse(&self.row_entries(r));
        }
        e
    }

    pub fn rank(&self) -> usize {
        if self.rows <= self.cols {
            self.row_echelon().rank()
        } else {
            self.transpose().row_echelon().rank()
        }
    }
}

impl PartialEq for SparseMat {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.row_ptr == other.row_ptr
            && self.col_idx == other.col_idx
            && self.vals == other.vals
    }
}
