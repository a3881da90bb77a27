use num_traits::{One, Zero};

use super::RatMatrix;
use crate::scalar::Rational;

/// Reduced row-echelon form with the pivot column of each nonzero row.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    pub reduced: RatMatrix,
    pub pivots: Vec<usize>,
}

/// Kernel basis, image basis (the pivot columns of the input) and rank.
#[derive(Clone, Debug)]
pub struct KernelImage {
    pub kernel: Vec<Vec<Rational>>,
    pub image: Vec<Vec<Rational>>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Outcome of [`solve_linear`]. Infeasibility is a value, not an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    /// Particular solution with every free variable set to zero.
    Solved(Vec<Rational>),
    /// `w` with `wᵀM = 0` and `wᵀ·rhs ≠ 0`.
    Infeasible { witness: Vec<Rational> },
}

impl LinearSolution {
    pub fn solution(&self) -> Option<&[Rational]> {
        match self {
            LinearSolution::Solved(x) => Some(x),
            LinearSolution::Infeasible { .. } => None,
        }
    }
}

/// Gauss–Jordan elimination restricted to pivots in the first
/// `pivot_limit` columns. Leftmost pivot; the first nonzero row at or below
/// the current one is taken, so the result is deterministic.
fn eliminate(m: &RatMatrix, pivot_limit: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let cols = m.cols();
    let mut rows: Vec<Vec<Rational>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_limit.min(cols) {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for v in rows[r].iter_mut().skip(c) {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
        }
        let support: Vec<usize> = (c..cols).filter(|&j| !rows[r][j].is_zero()).collect();
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &j in &support {
                let delta = &factor * &pivot_row[j];
                row[j] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (rows, pivots)
}

pub fn rref(m: &RatMatrix) -> RowEchelon {
    let (rows, pivots) = eliminate(m, m.cols());
    let reduced = if rows.is_empty() {
        RatMatrix::zeros(0, m.cols())
    } else {
        RatMatrix::from_rows(&rows)
    };
    RowEchelon { reduced, pivots }
}

/// Exact kernel and image bases with deterministic pivoting.
pub fn rref_kernel_image(m: &RatMatrix) -> KernelImage {
    let (rows, pivots) = eliminate(m, m.cols());
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let kernel = (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                if !rows[row][f].is_zero() {
                    v[p] = -&rows[row][f];
                }
            }
            v
        })
        .collect();
    let image = pivots.iter().map(|&p| m.column(p)).collect();
    KernelImage {
        kernel,
        image,
        rank: pivots.len(),
        pivots,
    }
}

pub fn rank(m: &RatMatrix) -> usize {
    eliminate(m, m.cols()).1.len()
}

/// Basis of `{w : wᵀ M = 0}`.
pub fn left_kernel(m: &RatMatrix) -> Vec<Vec<Rational>> {
    rref_kernel_image(&m.transpose()).kernel
}

/// Solves `M x = rhs` exactly.
pub fn solve_linear(m: &RatMatrix, rhs: &[Rational]) -> LinearSolution {
    solve_linear_ranked(m, rhs).0
}

/// [`solve_linear`] plus the rank of `M`, from the same elimination.
pub fn solve_linear_ranked(m: &RatMatrix, rhs: &[Rational]) -> (LinearSolution, usize) {
    assert_eq!(m.rows(), rhs.len(), "right-hand side length must equal row count");
    let cols = m.cols();
    let mut aug = RatMatrix::zeros(m.rows(), cols + 1);
    for i in 0..m.rows() {
        aug.row_mut(i)[..cols].clone_from_slice(m.row(i));
        aug[(i, cols)] = rhs[i].clone();
    }
    let (rows, pivots) = eliminate(&aug, cols);
    let inconsistent = rows[pivots.len()..].iter().any(|row| !row[cols].is_zero());
    if inconsistent {
        let witness = left_kernel(m)
            .into_iter()
            .find(|w| !dot(w, rhs).is_zero())
            .expect("inconsistent system must have a separating left-kernel vector");
        return (LinearSolution::Infeasible { witness }, pivots.len());
    }
    let mut x = vec![Rational::zero(); cols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = rows[row][cols].clone();
    }
    (LinearSolution::Solved(x), pivots.len())
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    assert!(m.is_square());
    let n = m.rows();
    let mut aug = RatMatrix::zeros(n, 2 * n);
    for i in 0..n {
        aug.row_mut(i)[..n].clone_from_slice(m.row(i));
        aug[(i, n + i)] = Rational::one();
    }
    let (rows, pivots) = eliminate(&aug, n);
    if pivots.len() < n {
        return None;
    }
    Some(RatMatrix::from_rows(
        &rows.into_iter().map(|r| r[n..].to_vec()).collect::<Vec<_>>(),
    ))
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}
