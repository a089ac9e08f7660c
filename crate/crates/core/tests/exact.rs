use kk_core::exact::{
    kernel, orthogonal_complement, rref, semilinear_solve, solve, Elem, Field, Mat,
    SemilinearOperator, Subspace,
};
use kk_core::Error;
use proptest::prelude::*;

const FIELDS: [(u32, u32); 6] = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3)];

fn field(i: usize) -> Field {
    let (p, e) = FIELDS[i % FIELDS.len()];
    Field::new(p, e).unwrap()
}

fn mat(f: &Field, rows: usize, cols: usize, raw: &[u32]) -> Mat {
    let q = f.q();
    Mat::from_data(f, rows, cols, (0..rows * cols).map(|i| raw[i % raw.len()] % q).collect())
}

fn vector(f: &Field, n: usize, raw: &[u32]) -> Vec<Elem> {
    (0..n).map(|i| raw[i % raw.len()] % f.q()).collect()
}

fn invertible(f: &Field, n: usize, raw: &[u32]) -> Mat {
    // unit upper triangular times unit lower triangular
    let mut u = Mat::identity(f, n);
    let mut l = Mat::identity(f, n);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            u.set(i, j, raw[k % raw.len()] % f.q());
            l.set(j, i, raw[(k + 7) % raw.len()] % f.q());
            k += 1;
        }
    }
    u.mul(&l).unwrap()
}

fn span_of(f: &Field, n: usize, k: usize, raw: &[u32]) -> Subspace {
    Subspace::row_space(&mat(f, k, n, raw))
}

#[test]
fn documented_examples() {
    let gf2 = field(0);
    let gf3 = field(1);
    let gf4 = field(3);
    // GF(4) elements as digit strings: w = 2, w + 1 = 3
    assert_eq!(gf4.mul(2, 2), 3);
    assert_eq!(gf4.frobenius(2, 1), 3);
    assert_eq!(gf4.frobenius(2, -1), 3);
    assert_eq!(gf4.frobenius(0, 5), 0);
    assert_eq!(gf2.frobenius(1, 1), 1);
    for x in gf4.elements() {
        assert_eq!(gf4.frobenius(gf4.frobenius(x, 1), 1), x);
    }

    let (r, rank, piv) = rref(&Mat::from_ints(&gf2, &[&[1, 1], &[1, 1]]));
    assert_eq!(r, Mat::from_ints(&gf2, &[&[1, 1], &[0, 0]]));
    assert_eq!((rank, piv), (1, vec![0]));
    let (r, rank, _) = rref(&Mat::zeros(&gf2, 2, 4));
    assert!(r.is_zero() && rank == 0);

    let k = kernel(&Mat::from_ints(&gf2, &[&[1, 1, 0]]));
    assert_eq!(k, Subspace::span(&gf2, 3, [vec![1, 1, 0], vec![0, 0, 1]]));
    assert_eq!(kernel(&Mat::zeros(&gf2, 2, 3)), Subspace::full(&gf2, 3));

    assert_eq!(solve(&Mat::from_ints(&gf3, &[&[2]]), &[1]).unwrap(), vec![2]);
    assert_eq!(solve(&Mat::zeros(&gf3, 2, 2), &[1, 0]), Err(Error::NoSolution));

    let a = Subspace::span(&gf2, 3, [vec![1, 1, 0]]);
    let b = Subspace::span(&gf2, 3, [vec![0, 1, 1]]);
    let s = a.sum(&b).unwrap();
    assert_eq!(s.dim(), 2);
    assert!(s.contains(&[1, 0, 1]));

    // form of k[y]/y^4 is anti-diagonal; span(y^2, y^3) is its own orthogonal
    let anti = Mat::from_ints(&gf2, &[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]]);
    let u = Subspace::span(&gf2, 4, [vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
    assert_eq!(orthogonal_complement(&anti, &u).unwrap(), u);

    let swap = Mat::from_ints(&gf2, &[&[0, 1], &[1, 0]]);
    assert_eq!(semilinear_solve(&swap, &[0, 1], 1).unwrap(), vec![1, 0]);
    assert_eq!(semilinear_solve(&swap, &[0, 0], 1).unwrap(), vec![0, 0]);
    assert_eq!(
        semilinear_solve(&Mat::zeros(&gf2, 2, 2), &[1, 0], 0),
        Err(Error::SingularForm)
    );
}

#[test]
fn subspace_operations_reject_mismatched_ambients() {
    let f = field(0);
    let a = Subspace::full(&f, 3);
    let b = Subspace::full(&f, 4);
    assert!(matches!(a.sum(&b), Err(Error::DimensionMismatch(_))));
    assert!(matches!(a.intersection(&b), Err(Error::DimensionMismatch(_))));
    assert!(matches!(
        orthogonal_complement(&Mat::identity(&f, 4), &a),
        Err(Error::DimensionMismatch(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity_and_transpose(fi in 0usize..6, r in 1usize..10, c in 1usize..10,
                                  raw in prop::collection::vec(any::<u32>(), 1..100)) {
        let f = field(fi);
        let m = mat(&f, r, c, &raw);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        let k = kernel(&m);
        prop_assert_eq!(k.dim() + m.rank(), c);
        for v in k.basis_vectors() {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn rref_is_idempotent(fi in 0usize..6, r in 1usize..9, c in 1usize..9,
                          raw in prop::collection::vec(any::<u32>(), 1..81)) {
        let f = field(fi);
        let (once, rank, piv) = rref(&mat(&f, r, c, &raw));
        let (twice, rank2, piv2) = rref(&once);
        prop_assert_eq!(once, twice);
        prop_assert_eq!((rank, piv), (rank2, piv2));
    }

    #[test]
    fn solve_returns_solutions(fi in 0usize..6, r in 1usize..8, c in 1usize..8,
                               raw in prop::collection::vec(any::<u32>(), 1..64),
                               xr in prop::collection::vec(any::<u32>(), 8)) {
        let f = field(fi);
        let m = mat(&f, r, c, &raw);
        let x = vector(&f, c, &xr);
        let b = m.mul_vec(&x).unwrap();
        let y = solve(&m, &b).unwrap();
        prop_assert_eq!(m.mul_vec(&y).unwrap(), b);
    }

    #[test]
    fn orthogonal_complement_is_an_inclusion_reversing_involution(
        fi in 0usize..6, n in 1usize..9, k in 1usize..6,
        graw in prop::collection::vec(any::<u32>(), 1..40),
        uraw in prop::collection::vec(any::<u32>(), 1..40),
        vraw in prop::collection::vec(any::<u32>(), 1..40),
    ) {
        let f = field(fi);
        let g = invertible(&f, n, &graw);
        let u = span_of(&f, n, k, &uraw);
        let v = u.sum(&span_of(&f, n, 2, &vraw)).unwrap();
        let up = orthogonal_complement(&g, &u).unwrap();
        let vp = orthogonal_complement(&g, &v).unwrap();
        prop_assert_eq!(up.dim() + u.dim(), n);
        prop_assert!(vp.is_subspace_of(&up));
        // left orthogonal of the right orthogonal
        prop_assert_eq!(orthogonal_complement(&g.transpose(), &up).unwrap(), u);
    }

    #[test]
    fn sum_and_intersection_dimensions(fi in 0usize..6, n in 1usize..9,
                                       a in prop::collection::vec(any::<u32>(), 1..40),
                                       b in prop::collection::vec(any::<u32>(), 1..40)) {
        let f = field(fi);
        let u = span_of(&f, n, 3, &a);
        let v = span_of(&f, n, 3, &b);
        let s = u.sum(&v).unwrap();
        let i = u.intersection(&v).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        prop_assert!(i.is_subspace_of(&u) && i.is_subspace_of(&v));
        prop_assert!(u.is_subspace_of(&s) && v.is_subspace_of(&s));
    }

    #[test]
    fn frobenius_is_a_field_automorphism(fi in 0usize..6, n in -4i64..5, x in any::<u32>(), y in any::<u32>()) {
        let f = field(fi);
        let (x, y) = (x % f.q(), y % f.q());
        prop_assert_eq!(f.frobenius(f.add(x, y), n), f.add(f.frobenius(x, n), f.frobenius(y, n)));
        prop_assert_eq!(f.frobenius(f.mul(x, y), n), f.mul(f.frobenius(x, n), f.frobenius(y, n)));
        prop_assert_eq!(f.frobenius(f.frobenius(x, n), -n), x);
        prop_assert_eq!(f.frobenius(x, f.e() as i64), x);
        prop_assert_eq!(f.frobenius(x, 1), f.pow(x, f.p() as u64));
    }

    #[test]
    fn semilinear_operators_are_semilinear(fi in 0usize..6, twist in -3i64..4,
                                           r in 1usize..6, c in 1usize..6,
                                           raw in prop::collection::vec(any::<u32>(), 1..36),
                                           xr in prop::collection::vec(any::<u32>(), 6),
                                           yr in prop::collection::vec(any::<u32>(), 6),
                                           lam in any::<u32>()) {
        let f = field(fi);
        let op = SemilinearOperator::new(mat(&f, r, c, &raw), twist);
        let (x, y, lam) = (vector(&f, c, &xr), vector(&f, c, &yr), lam % f.q());
        let sum: Vec<Elem> = x.iter().zip(&y).map(|(&a, &b)| f.add(a, b)).collect();
        let fx = op.apply(&x).unwrap();
        let fy = op.apply(&y).unwrap();
        let expect: Vec<Elem> = fx.iter().zip(&fy).map(|(&a, &b)| f.add(a, b)).collect();
        prop_assert_eq!(op.apply(&sum).unwrap(), expect);
        let scaled: Vec<Elem> = x.iter().map(|&a| f.mul(lam, a)).collect();
        let tw = f.frobenius(lam, twist);
        let expect: Vec<Elem> = fx.iter().map(|&a| f.mul(tw, a)).collect();
        prop_assert_eq!(op.apply(&scaled).unwrap(), expect);
    }

    #[test]
    fn semilinear_solve_inverts_the_pairing(fi in 0usize..6, n in 1usize..7, twist in -2i64..3,
                                            graw in prop::collection::vec(any::<u32>(), 1..30),
                                            rraw in prop::collection::vec(any::<u32>(), 7)) {
        let f = field(fi);
        let g = invertible(&f, n, &graw);
        let rhs = vector(&f, n, &rraw);
        let w = semilinear_solve(&g, &rhs, twist).unwrap();
        for i in 0..n {
            let pair = (0..n).fold(0, |acc, j| f.add(acc, f.mul(w[j], g.get(j, i))));
            prop_assert_eq!(f.frobenius(pair, twist), rhs[i]);
        }
    }
}
