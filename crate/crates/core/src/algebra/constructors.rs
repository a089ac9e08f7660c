use super::{Algebra, Kind};
use crate::error::{Error, Result};
use crate::exact::{Elem, Field, Mat};

/// Cayley table of the cyclic group of order `n` (element `i` is `g^i`).
pub fn cyclic_group_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
}

/// Cayley table of `C2 × C2`, elements encoded as bit pairs.
pub fn klein_four_table() -> Vec<Vec<usize>> {
    (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect()
}

/// Cayley table of the symmetric group on `n` letters, elements in
/// lexicographic order of their one-line notation (identity first).
pub fn symmetric_group_table(n: usize) -> Vec<Vec<usize>> {
    let mut perms: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &perms {
            for x in (0..n).filter(|x| !p.contains(x)) {
                let mut q = p.clone();
                q.push(x);
                next.push(q);
            }
        }
        perms = next;
    }
    let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
    perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| {
                    // (a b)(x) = a(b(x))
                    let ab: Vec<usize> = (0..n).map(|x| a[b[x]]).collect();
                    index(&ab)
                })
                .collect()
        })
        .collect()
}

/// The group algebra `kG` with its standard form `(g, h) = δ_{gh,1}`.
pub fn group_algebra(field: &Field, table: &[Vec<usize>]) -> Result<Algebra> {
    let n = table.len();
    if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
        return Err(Error::NotAGroup("table is not a square table over its own elements".into()));
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
        .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::NotAGroup(format!("not associative at ({a}, {b}, {c})")));
                }
            }
        }
    }
    for g in 0..n {
        if !(0..n).any(|h| table[g][h] == identity && table[h][g] == identity) {
            return Err(Error::NotAGroup(format!("element {g} has no inverse")));
        }
    }
    let products = (0..n * n)
        .map(|ij| vec![(table[ij / n][ij % n], 1)])
        .collect();
    let mut unit = vec![0; n];
    unit[identity] = 1;
    let mut gram = Mat::zeros(field, n, n);
    for g in 0..n {
        for h in 0..n {
            if table[g][h] == identity {
                gram.set(g, h, 1);
            }
        }
    }
    let names = (0..n)
        .map(|g| if g == identity { "1".to_string() } else { format!("g{g}") })
        .collect();
    Algebra::new(field, names, unit, products, Some(gram))
}

/// `k[x]/(x^n)` with `(x^i, x^j) = δ_{i+j, n−1}`.
pub fn truncated_poly(field: &Field, n: usize) -> Result<Algebra> {
    if n == 0 {
        return Err(Error::DimensionMismatch("truncated polynomial ring needs n >= 1".into()));
    }
    let products = (0..n * n)
        .map(|ij| {
            let s = ij / n + ij % n;
            if s < n {
                vec![(s, 1)]
            } else {
                Vec::new()
            }
        })
        .collect();
    let mut unit = vec![0; n];
    unit[0] = 1;
    let mut gram = Mat::zeros(field, n, n);
    for i in 0..n {
        gram.set(i, n - 1 - i, 1);
    }
    let names = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    Ok(Algebra::new(field, names, unit, products, Some(gram))?.with_kind(Kind::TruncatedPoly { n }))
}

/// The trivial extension `A ⊕ A*`, basis `b_0..b_{d−1}, b_0*..b_{d−1}*`.
pub fn trivial_extension(a: &Algebra) -> Result<Algebra> {
    let d = a.dim();
    let f = a.field();
    let n = 2 * d;
    let mut products = vec![Vec::new(); n * n];
    for i in 0..d {
        for j in 0..d {
            products[i * n + j] = a.basis_product(i, j).to_vec();
        }
    }
    // (a·g)(x) = g(xa) and (f·b)(x) = f(bx)
    for l in 0..d {
        for i in 0..d {
            for &(j, c) in a.basis_product(l, i) {
                // b_i · b_j* has b_l* coefficient c(l, i; j)
                products[i * n + d + j].push((d + l, c));
            }
            for &(j, c) in a.basis_product(i, l) {
                // b_j* · b_i has b_l* coefficient c(i, l; j)
                products[(d + j) * n + i].push((d + l, c));
            }
        }
    }
    let mut unit = vec![0; n];
    unit[..d].copy_from_slice(a.unit());
    let mut gram = Mat::zeros(f, n, n);
    for i in 0..d {
        gram.set(i, d + i, 1);
        gram.set(d + i, i, 1);
    }
    let mut names: Vec<String> = a.names().to_vec();
    names.extend(a.names().iter().map(|s| format!("{s}*")));
    let kind = Kind::TrivialExtensionOf {
        base: a.kind().cloned().map(Box::new),
    };
    Ok(Algebra::new(f, names, unit, products, Some(gram))?.with_kind(kind))
}

/// `M_n(A)`, basis `b_k ⊗ e_ij` at index `(k·n + i)·n + j`, with form
/// `(x ⊗ e_ij, y ⊗ e_kl) = (x, y) δ_il δ_jk`.
pub fn matrix_algebra(a: &Algebra, n: usize) -> Result<Algebra> {
    let g = a.require_form()?;
    if n == 0 {
        return Err(Error::DimensionMismatch("matrix size must be >= 1".into()));
    }
    let d = a.dim();
    let f = a.field();
    let dim = d * n * n;
    let idx = |k: usize, i: usize, j: usize| (k * n + i) * n + j;
    let mut products = vec![Vec::new(); dim * dim];
    for x in 0..d {
        for y in 0..d {
            let xy = a.basis_product(x, y);
            for i in 0..n {
                for j in 0..n {
                    for l in 0..n {
                        products[idx(x, i, j) * dim + idx(y, j, l)] =
                            xy.iter().map(|&(t, c)| (idx(t, i, l), c)).collect();
                    }
                }
            }
        }
    }
    let mut unit = vec![0; dim];
    for (k, &u) in a.unit().iter().enumerate() {
        for i in 0..n {
            unit[idx(k, i, i)] = u;
        }
    }
    let mut gram = Mat::zeros(f, dim, dim);
    for x in 0..d {
        for y in 0..d {
            let v: Elem = g.get(x, y);
            if v == 0 {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    gram.set(idx(x, i, j), idx(y, j, i), v);
                }
            }
        }
    }
    let names = (0..dim)
        .map(|t| {
            let (k, i, j) = (t / (n * n), (t / n) % n, t % n);
            format!("{}e{}{}", a.names()[k], i + 1, j + 1)
        })
        .collect();
    let kind = Kind::MatrixOver {
        n,
        base: a.kind().cloned().map(Box::new),
    };
    Ok(Algebra::new(f, names, unit, products, Some(gram))?.with_kind(kind))
}

impl Algebra {
    /// The group algebra of the cyclic group of order `n`.
    pub fn group_cyclic(field: &Field, n: usize) -> Result<Algebra> {
        Ok(group_algebra(field, &cyclic_group_table(n))?.with_kind(Kind::GroupCyclic { order: n }))
    }

    /// The group algebra of the Klein four group.
    pub fn group_klein(field: &Field) -> Result<Algebra> {
        Ok(group_algebra(field, &klein_four_table())?.with_kind(Kind::GroupKlein))
    }

    /// The group algebra of the symmetric group `S_n`.
    pub fn group_symmetric(field: &Field, n: usize) -> Result<Algebra> {
        Ok(group_algebra(field, &symmetric_group_table(n))?
            .with_kind(Kind::Group { name: format!("S{n}") }))
    }
}
