use super::field::{Elem, Field};
use super::mat::Mat;
use super::subspace::{kernel, solve, Subspace};
use crate::error::{Error, Result};

/// `x ↦ M · Fr^t(x)`: additive, and `f(λx) = Fr^t(λ) f(x)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemilinearOperator {
    pub matrix: Mat,
    pub twist: i64,
}

impl SemilinearOperator {
    pub fn new(matrix: Mat, twist: i64) -> Self {
        SemilinearOperator { matrix, twist }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        SemilinearOperator::new(Mat::identity(field, n), 0)
    }

    pub fn zero(field: &Field, dim_out: usize, dim_in: usize, twist: i64) -> Self {
        SemilinearOperator::new(Mat::zeros(field, dim_out, dim_in), twist)
    }

    pub fn field(&self) -> &Field {
        self.matrix.field()
    }

    pub fn dim_in(&self) -> usize {
        self.matrix.cols()
    }

    pub fn dim_out(&self) -> usize {
        self.matrix.rows()
    }

    /// Twist reduced into `0..e`.
    pub fn normalized_twist(&self) -> i64 {
        self.twist.rem_euclid(self.field().e() as i64)
    }

    pub fn apply(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        let fv = self.field().frobenius_vec(v, self.twist);
        self.matrix.mul_vec(&fv)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SemilinearOperator) -> Result<SemilinearOperator> {
        let m = self.matrix.mul(&other.matrix.frobenius(self.twist))?;
        Ok(SemilinearOperator::new(m, self.twist + other.twist))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn image(&self) -> Subspace {
        Subspace::column_space(&self.matrix)
    }

    pub fn kernel(&self) -> Subspace {
        kernel(&self.matrix).frobenius(-self.twist)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Equal as maps: same matrix and twist congruent modulo `e`.
    pub fn same_map(&self, other: &SemilinearOperator) -> bool {
        self.matrix == other.matrix && self.normalized_twist() == other.normalized_twist()
    }
}

/// The unique `w` with `Σ_j w_j gram[j][i] = Fr^{-twist}(rhs_i)` for every `i`.
pub fn semilinear_solve(gram: &Mat, rhs: &[Elem], twist: i64) -> Result<Vec<Elem>> {
    if gram.rows() != gram.cols() || rhs.len() != gram.rows() {
        return Err(Error::DimensionMismatch(format!(
            "gram {}x{} with {} values",
            gram.rows(),
            gram.cols(),
            rhs.len()
        )));
    }
    if !gram.is_invertible() {
        return Err(Error::SingularForm);
    }
    let target = gram.field().frobenius_vec(rhs, -twist);
    solve(&gram.transpose(), &target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn solve_examples() {
        let f = Field::prime(2).unwrap();
        let g = Mat::from_ints(&f, &[&[0, 1], &[1, 0]]);
        assert_eq!(semilinear_solve(&g, &[0, 0], 1).unwrap(), vec![0, 0]);
        assert_eq!(semilinear_solve(&Mat::identity(&f, 2), &[1, 0], 0).unwrap(), vec![1, 0]);
        assert_eq!(semilinear_solve(&g, &[0, 1], 1).unwrap(), vec![1, 0]);
        let s = Mat::from_ints(&f, &[&[1, 1], &[1, 1]]);
        assert_eq!(semilinear_solve(&s, &[0, 1], 0), Err(Error::SingularForm));
    }

    #[test]
    fn semilinear_solve_twist_over_gf4() {
        let f = Field::new(2, 2).unwrap();
        let g = Mat::identity(&f, 1);
        // Fr^{-1}(w) = w^2 = w + 1
        assert_eq!(semilinear_solve(&g, &[2], 1).unwrap(), vec![3]);
    }

    #[test]
    fn semilinearity_on_random_inputs() {
        let f = Field::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = Mat::from_data(&f, 3, 2, (0..6).map(|_| f.random(&mut rng)).collect());
        let op = SemilinearOperator::new(m, -1);
        for _ in 0..100 {
            let l = f.random(&mut rng);
            let x: Vec<Elem> = (0..2).map(|_| f.random(&mut rng)).collect();
            let y: Vec<Elem> = (0..2).map(|_| f.random(&mut rng)).collect();
            let xy: Vec<Elem> = x.iter().zip(&y).map(|(&a, &b)| f.add(a, b)).collect();
            let fx = op.apply(&x).unwrap();
            let fy = op.apply(&y).unwrap();
            let sum: Vec<Elem> = fx.iter().zip(&fy).map(|(&a, &b)| f.add(a, b)).collect();
            assert_eq!(op.apply(&xy).unwrap(), sum);
            let lx: Vec<Elem> = x.iter().map(|&a| f.mul(l, a)).collect();
            let scaled: Vec<Elem> = fx.iter().map(|&a| f.mul(f.frobenius(l, -1), a)).collect();
            assert_eq!(op.apply(&lx).unwrap(), scaled);
        }
    }

    #[test]
    fn composition_and_kernel() {
        let f = Field::new(2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rnd = |rng: &mut ChaCha8Rng, r, c| Mat::from_data(&f, r, c, (0..r * c).map(|_| f.random(rng)).collect());
        let a = SemilinearOperator::new(rnd(&mut rng, 2, 3), 1);
        let b = SemilinearOperator::new(rnd(&mut rng, 3, 3), 2);
        let ab = a.compose(&b).unwrap();
        assert_eq!(ab.twist, 3);
        for _ in 0..20 {
            let x: Vec<Elem> = (0..3).map(|_| f.random(&mut rng)).collect();
            assert_eq!(ab.apply(&x).unwrap(), a.apply(&b.apply(&x).unwrap()).unwrap());
        }
        for v in a.kernel().basis_vectors() {
            assert!(a.apply(&v).unwrap().iter().all(|&x| x == 0));
        }
        assert_eq!(a.kernel().dim() + a.rank(), 3);
    }
}
