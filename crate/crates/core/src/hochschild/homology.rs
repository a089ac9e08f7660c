//! Bases of Hochschild homology and cohomology.
//!
//! Cycles are parametrized by the free columns of the echelon form of the
//! outgoing differential: a cycle is determined by its coordinates at those
//! columns. Boundaries are projected to the same coordinates and row reduced;
//! the representatives are the cycles whose free coordinates are the unit
//! vectors at the non-pivot positions of that reduction.

use super::complex::BarComplex;
use super::{ChainVector, Cochain};
use crate::error::Result;
use crate::exact::{Echelon, Elem, SparseMat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Homology,
    Cohomology,
}

/// Which end of the coordinate order is preferred when choosing
/// representatives.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum RepOrder {
    #[default]
    Forward,
    Reversed,
}

#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub side: Side,
    pub degree: usize,
    pub ambient: usize,
    pub dim_cycles: usize,
    pub dim_boundaries: usize,
    order: RepOrder,
    reps: Vec<Vec<Elem>>,
    cycles: Echelon,
    free: Vec<usize>,
    free_pos: Vec<u32>,
    boundaries: Echelon,
    rep_free: Vec<usize>,
}

const NOT_FREE: u32 = u32::MAX;

impl HomologyBasis {
    pub fn compute(cx: &BarComplex, side: Side, m: usize, order: RepOrder) -> Result<Self> {
        cx.check_degree(m)?;
        if m > 0 {
            cx.check_degree(m - 1)?;
        }
        let f = cx.field();
        let n = cx.chain_dim(m).unwrap();
        let perm = |i: usize| match order {
            RepOrder::Forward => i,
            RepOrder::Reversed => n - 1 - i,
        };
        let permuted = |v: Vec<(usize, Elem)>| -> Vec<(usize, Elem)> {
            v.into_iter().map(|(i, c)| (perm(i), c)).collect()
        };

        let mut cycles = Echelon::new(f, n);
        match side {
            Side::Homology => {
                if m > 0 {
                    let cols = (0..n).map(|t| cx.boundary_of_basis(m, t)).collect();
                    let bm = SparseMat::from_columns(f, cx.chain_dim(m - 1).unwrap(), cols);
                    for r in 0..bm.rows() {
                        if cycles.is_full() {
                            break;
                        }
                        cycles.insert_sparse(&permuted(bm.row_entries(r)));
                    }
                }
            }
            Side::Cohomology => {
                for row in 0..cx.chain_dim(m + 1).unwrap() {
                    if cycles.is_full() {
                        break;
                    }
                    cycles.insert_sparse(&permuted(cx.coboundary_row(m, row)));
                }
            }
        }
        let free = cycles.free_columns();
        let mut free_pos = vec![NOT_FREE; n];
        for (j, &c) in free.iter().enumerate() {
            free_pos[c] = j as u32;
        }
        let project = |v: Vec<(usize, Elem)>| -> Vec<(usize, Elem)> {
            v.into_iter()
                .filter_map(|(i, c)| {
                    let j = free_pos[perm(i)];
                    (j != NOT_FREE).then_some((j as usize, c))
                })
                .collect()
        };

        let mut boundaries = Echelon::new(f, free.len());
        match side {
            Side::Homology => {
                for t in 0..cx.chain_dim(m + 1).unwrap() {
                    if boundaries.is_full() {
                        break;
                    }
                    boundaries.insert_sparse(&project(cx.boundary_of_basis(m + 1, t)));
                }
            }
            Side::Cohomology => {
                if m > 0 {
                    let rows = (0..n).map(|row| cx.coboundary_row(m - 1, row)).collect();
                    let dt = SparseMat::from_rows(f, cx.chain_dim(m - 1).unwrap(), rows).transpose();
                    for c in 0..dt.rows() {
                        if boundaries.is_full() {
                            break;
                        }
                        boundaries.insert_sparse(&project(dt.row_entries(c)));
                    }
                }
            }
        }
        let rep_free = boundaries.free_columns();
        let reps = rep_free
            .iter()
            .map(|&j| {
                let v = cycles.kernel_vector(free[j]);
                (0..n).map(|i| v[perm(i)]).collect()
            })
            .collect();
        Ok(HomologyBasis {
            side,
            degree: m,
            ambient: n,
            dim_cycles: free.len(),
            dim_boundaries: boundaries.rank(),
            order,
            reps,
            cycles,
            free,
            free_pos,
            boundaries,
            rep_free,
        })
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn order(&self) -> RepOrder {
        self.order
    }

    /// Representatives as raw coordinate vectors.
    pub fn reps(&self) -> &[Vec<Elem>] {
        &self.reps
    }

    pub fn cycle_reps(&self) -> Vec<ChainVector> {
        self.reps
            .iter()
            .map(|v| ChainVector::new(self.degree, v.clone()))
            .collect()
    }

    pub fn cocycle_reps(&self, cx: &BarComplex) -> Vec<Cochain> {
        self.reps
            .iter()
            .map(|v| Cochain::from_data(cx, self.degree, v.clone()))
            .collect()
    }

    fn perm(&self, i: usize) -> usize {
        match self.order {
            RepOrder::Forward => i,
            RepOrder::Reversed => self.ambient - 1 - i,
        }
    }

    /// Whether `v` lies in the kernel of the outgoing differential.
    pub fn is_cycle(&self, v: &[Elem]) -> bool {
        // a cycle is determined by its free coordinates
        let mut w = vec![0; self.ambient];
        for (i, &x) in v.iter().enumerate() {
            w[self.perm(i)] = x;
        }
        let mut z = vec![0; self.ambient];
        for &c in &self.free {
            if w[c] != 0 {
                let k = self.cycles.kernel_vector(c);
                let f = self.cycles.field();
                for (zi, ki) in z.iter_mut().zip(k) {
                    *zi = f.mul_add(*zi, w[c], ki);
                }
            }
        }
        z == w
    }

    /// Coordinates of the class of the cycle `v` in the representative basis.
    pub fn class_coords(&self, v: &[Elem]) -> Vec<Elem> {
        let mut w = vec![0; self.free.len()];
        for (i, &x) in v.iter().enumerate() {
            let j = self.free_pos[self.perm(i)];
            if j != NOT_FREE {
                w[j as usize] = x;
            }
        }
        self.boundaries.reduce(&mut w);
        self.rep_free.iter().map(|&j| w[j]).collect()
    }

    /// Whether the cycle `v` is a boundary.
    pub fn is_boundary(&self, v: &[Elem]) -> bool {
        self.class_coords(v).iter().all(|&x| x == 0)
    }

    /// The cycle `Σ c_i rep_i`.
    pub fn combine(&self, coords: &[Elem]) -> Vec<Elem> {
        let f = self.cycles.field();
        let mut out = vec![0; self.ambient];
        for (rep, &c) in self.reps.iter().zip(coords) {
            if c != 0 {
                for (o, &x) in out.iter_mut().zip(rep) {
                    *o = f.mul_add(*o, c, x);
                }
            }
        }
        out
    }
}
