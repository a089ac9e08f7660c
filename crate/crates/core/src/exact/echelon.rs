//! Incremental reduced row-echelon basis.
//!
//! Rows are inserted one at a time and the stored basis is kept in reduced
//! row-echelon form after every insertion. Because every pivot column holds
//! a single non-zero among the stored rows, reducing a vector only touches
//! the pivot rows whose columns were non-zero in the *input*; sparse inputs
//! therefore reduce in time proportional to their support.
//!
//! Rows over GF(2) are bit-packed into `u64` words.

use super::field::{Elem, Field};
use super::mat::Mat;

const NONE: u32 = u32::MAX;

#[derive(Clone)]
enum Store {
    Bits { words: usize, rows: Vec<Vec<u64>> },
    Dense { rows: Vec<Vec<Elem>> },
}

#[derive(Clone)]
pub struct Echelon {
    field: Field,
    ncols: usize,
    store: Store,
    pivot_of_row: Vec<usize>,
    row_of_col: Vec<u32>,
}

impl std::fmt::Debug for Echelon {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Echelon(rank {} of {} columns over {})", self.rank(), self.ncols, self.field)
    }
}

impl Echelon {
    pub fn new(field: &Field, ncols: usize) -> Self {
        let store = if field.q() == 2 {
            Store::Bits {
                words: ncols.div_ceil(64),
                rows: Vec::new(),
            }
        } else {
            Store::Dense { rows: Vec::new() }
        };
        Echelon {
            field: field.clone(),
            ncols,
            store,
            pivot_of_row: Vec::new(),
            row_of_col: vec![NONE; ncols],
        }
    }

    pub fn from_dense_rows<I: Iterator<Item = Vec<Elem>>>(field: &Field, ncols: usize, rows: I) -> Self {
        let mut e = Echelon::new(field, ncols);
        for r in rows {
            e.insert_dense(&r);
        }
        e
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivot_of_row.len()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ncols
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.row_of_col[col] != NONE
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        let mut p = self.pivot_of_row.clone();
        p.sort_unstable();
        p
    }

    fn sorted_rows(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.rank()).collect();
        idx.sort_unstable_by_key(|&i| self.pivot_of_row[i]);
        idx
    }

    fn row_dense(&self, i: usize) -> Vec<Elem> {
        match &self.store {
            Store::Bits { rows, .. } => bits_to_dense(&rows[i], self.ncols),
            Store::Dense { rows } => rows[i].clone(),
        }
    }

    /// Basis rows in RREF order (sorted by pivot column).
    pub fn basis_rows(&self) -> Vec<Vec<Elem>> {
        self.sorted_rows().into_iter().map(|i| self.row_dense(i)).collect()
    }

    pub fn to_mat(&self) -> Mat {
        Mat::from_rows(&self.field, self.ncols, &self.basis_rows())
    }

    /// Entry of stored row `row` (insertion order) at column `col`.
    fn entry(&self, row: usize, col: usize) -> Elem {
        match &self.store {
            Store::Bits { rows, .. } => ((rows[row][col / 64] >> (col % 64)) & 1) as Elem,
            Store::Dense { rows } => rows[row][col],
        }
    }

    /// Inserts a dense vector; returns `true` if the rank grew.
    pub fn insert_dense(&mut self, v: &[Elem]) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        let support: Vec<usize> = v
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, _)| i)
            .collect();
        self.insert_work(Work::from_dense(self, v), &support)
    }

    /// Inserts a sparse vector given as `(column, value)` pairs (duplicates add).
    pub fn insert_sparse(&mut self, entries: &[(usize, Elem)]) -> bool {
        let work = Work::from_sparse(self, entries);
        let support: Vec<usize> = entries.iter().map(|&(c, _)| c).collect();
        self.insert_work(work, &support)
    }

    fn reduce_work(&self, work: &mut Work, support: &[usize]) {
        let f = &self.field;
        for &c in support {
            let r = self.row_of_col[c];
            if r == NONE {
                continue;
            }
            let r = r as usize;
            match (&self.store, &mut *work) {
                (Store::Bits { rows, .. }, Work::Bits(w)) => {
                    if (w[c / 64] >> (c % 64)) & 1 == 1 {
                        xor_from(w, &rows[r], c / 64);
                    }
                }
                (Store::Dense { rows }, Work::Dense(w)) => {
                    let coef = w[c];
                    if coef != 0 {
                        axpy_from(f, w, &rows[r], f.neg(coef), c);
                    }
                }
                _ => unreachable!(),
            }
        }
    }

    fn insert_work(&mut self, mut work: Work, support: &[usize]) -> bool {
        if self.is_full() {
            return false;
        }
        self.reduce_work(&mut work, support);
        let lead = match work.leading(self.ncols) {
            Some(c) => c,
            None => return false,
        };
        let f = self.field.clone();
        let new_index = self.pivot_of_row.len();
        match (&mut self.store, work) {
            (Store::Bits { rows, .. }, Work::Bits(w)) => {
                let word = lead / 64;
                let bit = 1u64 << (lead % 64);
                for row in rows.iter_mut() {
                    if row[word] & bit != 0 {
                        xor_from(row, &w, word);
                    }
                }
                rows.push(w);
            }
            (Store::Dense { rows }, Work::Dense(mut w)) => {
                let inv = f.inv(w[lead]).expect("non-zero leading entry");
                if inv != 1 {
                    for x in w[lead..].iter_mut() {
                        *x = f.mul(*x, inv);
                    }
                }
                for row in rows.iter_mut() {
                    let coef = row[lead];
                    if coef != 0 {
                        axpy_from(&f, row, &w, f.neg(coef), lead);
                    }
                }
                rows.push(w);
            }
            _ => unreachable!(),
        }
        self.pivot_of_row.push(lead);
        self.row_of_col[lead] = new_index as u32;
        true
    }

    /// Reduces `v` in place modulo the row space; the result is the
    /// canonical remainder (zero at every pivot column).
    pub fn reduce(&self, v: &mut [Elem]) {
        let support: Vec<usize> = (0..self.ncols).filter(|&i| v[i] != 0).collect();
        let mut work = Work::from_dense(self, v);
        self.reduce_work(&mut work, &support);
        work.write_dense(v, self.ncols);
    }

    pub fn reduce_sparse(&self, entries: &[(usize, Elem)]) -> Vec<Elem> {
        let mut work = Work::from_sparse(self, entries);
        let support: Vec<usize> = entries.iter().map(|&(c, _)| c).collect();
        self.reduce_work(&mut work, &support);
        let mut out = vec![0; self.ncols];
        work.write_dense(&mut out, self.ncols);
        out
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the basis rows (RREF order), if `v` lies in the
    /// row space.
    pub fn coordinates(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots().into_iter().map(|c| v[c]).collect())
    }

    /// Iterator over a basis of the right kernel `{x : M x = 0}` of the matrix
    /// whose rows span this echelon: one vector per free column.
    pub fn kernel_vectors(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        (0..self.ncols)
            .filter(move |&c| !self.is_pivot(c))
            .map(move |free| self.kernel_vector(free))
    }

    /// The kernel vector attached to the free column `free`.
    pub fn kernel_vector(&self, free: usize) -> Vec<Elem> {
        debug_assert!(!self.is_pivot(free));
        let f = &self.field;
        let mut v = vec![0; self.ncols];
        v[free] = 1;
        for (r, &pc) in self.pivot_of_row.iter().enumerate() {
            let x = self.entry(r, free);
            if x != 0 {
                v[pc] = f.neg(x);
            }
        }
        v
    }

    /// Non-pivot columns in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| !self.is_pivot(c)).collect()
    }

    pub fn kernel_dim(&self) -> usize {
        self.ncols - self.rank()
    }
}

enum Work {
    Bits(Vec<u64>),
    Dense(Vec<Elem>),
}

impl Work {
    fn from_dense(e: &Echelon, v: &[Elem]) -> Work {
        match &e.store {
            Store::Bits { words, .. } => {
                let mut w = vec![0u64; *words];
                for (i, &x) in v.iter().enumerate() {
                    if x & 1 == 1 {
                        w[i / 64] |= 1 << (i % 64);
                    }
                }
                Work::Bits(w)
            }
            Store::Dense { .. } => Work::Dense(v.to_vec()),
        }
    }

    fn from_sparse(e: &Echelon, entries: &[(usize, Elem)]) -> Work {
        match &e.store {
            Store::Bits { words, .. } => {
                let mut w = vec![0u64; *words];
                for &(c, x) in entries {
                    if x & 1 == 1 {
                        w[c / 64] ^= 1 << (c % 64);
                    }
                }
                Work::Bits(w)
            }
            Store::Dense { .. } => {
                let mut w = vec![0; e.ncols];
                for &(c, x) in entries {
                    w[c] = e.field.add(w[c], x);
                }
                Work::Dense(w)
            }
        }
    }

    fn leading(&self, ncols: usize) -> Option<usize> {
        match self {
            Work::Bits(w) => w
                .iter()
                .enumerate()
                .find(|(_, &x)| x != 0)
                .map(|(i, &x)| i * 64 + x.trailing_zeros() as usize)
                .filter(|&c| c < ncols),
            Work::Dense(w) => w.iter().position(|&x| x != 0),
        }
    }

    fn write_dense(&self, out: &mut [Elem], ncols: usize) {
        match self {
            Work::Bits(w) => {
                for (i, slot) in out.iter_mut().enumerate().take(ncols) {
                    *slot = ((w[i / 64] >> (i % 64)) & 1) as Elem;
                }
            }
            Work::Dense(w) => out.copy_from_slice(w),
        }
    }
}

fn bits_to_dense(w: &[u64], ncols: usize) -> Vec<Elem> {
    (0..ncols).map(|i| ((w[i / 64] >> (i % 64)) & 1) as Elem).collect()
}

#[inline]
fn xor_from(dst: &mut [u64], src: &[u64], from_word: usize) {
    for (d, s) in dst[from_word..].iter_mut().zip(&src[from_word..]) {
        *d ^= *s;
    }
}

/// `dst[i] += coef * src[i]` for `i >= from`.
#[inline]
fn axpy_from(f: &Field, dst: &mut [Elem], src: &[Elem], coef: Elem, from: usize) {
    let (dst, src) = (&mut dst[from..], &src[from..]);
    if f.is_prime_field() {
        match f.p() {
            3 => axpy_const::<3>(dst, src, coef),
            5 => axpy_const::<5>(dst, src, coef),
            7 => axpy_const::<7>(dst, src, coef),
            p => {
                let (p, c) = (p as u64, coef as u64);
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d = ((*d as u64 + c * s as u64) % p) as Elem;
                }
            }
        }
    } else {
        for (d, &s) in dst.iter_mut().zip(src) {
            if s != 0 {
                *d = f.mul_add(*d, coef, s);
            }
        }
    }
}

/// Branch-free small-prime kernel; the constant modulus lets the loop vectorize.
#[inline]
fn axpy_const<const P: u32>(dst: &mut [Elem], src: &[Elem], coef: Elem) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = (*d + coef * s) % P;
    }
}
