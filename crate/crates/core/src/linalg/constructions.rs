//! Structured matrices: Cauchy, Vandermonde and generalized Reed-Solomon.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

use super::Matrix;

fn check_points(field: &Field, pts: &[Elem]) -> Result<()> {
    let mut seen = HashSet::with_capacity(pts.len());
    for &p in pts {
        field.check(p)?;
        if !seen.insert(p) {
            return Err(Error::DuplicateEvaluationPoint);
        }
    }
    Ok(())
}

/// The first `count` field elements in integer order, the default choice of
/// distinct evaluation points.
pub fn default_points(field: &Field, count: usize) -> Result<Vec<Elem>> {
    if count as u64 > field.order() as u64 {
        return Err(Error::FieldTooSmall {
            required: count as u64,
            got: field.order() as u64,
        });
    }
    Ok((0..count as Elem).collect())
}

/// Entry `(i, j)` is `1 / (alpha_i - beta_j)`.
pub fn cauchy(field: &Field, alphas: &[Elem], betas: &[Elem]) -> Result<Matrix> {
    let all: Vec<Elem> = alphas.iter().chain(betas).copied().collect();
    check_points(field, &all)?;
    let mut m = Matrix::zeros(field, alphas.len(), betas.len());
    for (i, &a) in alphas.iter().enumerate() {
        for (j, &b) in betas.iter().enumerate() {
            m.set(i, j, field.inv(field.sub(a, b))?);
        }
    }
    Ok(m)
}

/// Square `n x n` Cauchy matrix on the default points `alpha = 0..n`,
/// `beta = n..2n`.
pub fn default_cauchy(field: &Field, rows: usize, cols: usize) -> Result<Matrix> {
    let pts = default_points(field, rows + cols)?;
    cauchy(field, &pts[..rows], &pts[rows..])
}

/// `k x N` matrix with entry `(i, j) = zeta_j^i`.
pub fn vandermonde(field: &Field, zetas: &[Elem], k: usize) -> Result<Matrix> {
    check_points(field, zetas)?;
    if k > zetas.len() {
        return Err(Error::DimensionMismatch(format!(
            "{k} rows requested from {} evaluation points",
            zetas.len()
        )));
    }
    let mut m = Matrix::zeros(field, k, zetas.len());
    for (j, &z) in zetas.iter().enumerate() {
        for i in 0..k {
            m.set(i, j, field.pow(z, i as u64));
        }
    }
    Ok(m)
}

/// First `rows` rows of the generalized Reed-Solomon matrix
/// `[v_j * alpha_j^i]`.
pub fn grs_rows(field: &Field, v: &[Elem], alphas: &[Elem], rows: usize) -> Result<Matrix> {
    if v.len() != alphas.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} multipliers for {} points",
            v.len(),
            alphas.len()
        )));
    }
    for &x in v {
        if field.check(x)? == 0 {
            return Err(Error::ZeroMultiplier);
        }
    }
    let van = vandermonde(field, alphas, rows)?;
    let mut m = van;
    for (j, &vj) in v.iter().enumerate() {
        for i in 0..rows {
            let e = field.mul(m.get(i, j), vj);
            m.set(i, j, e);
        }
    }
    Ok(m)
}

/// Full `N x N` GRS matrix.
pub fn grs(field: &Field, v: &[Elem], alphas: &[Elem]) -> Result<Matrix> {
    grs_rows(field, v, alphas, alphas.len())
}

/// Column multipliers of the dual code,
/// `u_n = (v_n * prod_{i != n} (alpha_n - alpha_i))^{-1}`.
pub fn dual_multipliers(field: &Field, v: &[Elem], alphas: &[Elem]) -> Result<Vec<Elem>> {
    check_points(field, alphas)?;
    v.iter()
        .zip(alphas)
        .enumerate()
        .map(|(n, (&vn, &an))| {
            let prod = alphas
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != n)
                .fold(vn, |acc, (_, &ai)| field.mul(acc, field.sub(an, ai)));
            field.inv(prod).map_err(|_| Error::ZeroMultiplier)
        })
        .collect()
}

/// `(N-K) x N` generator of the dual of the code spanned by the first `k`
/// rows of `grs(v, alphas)`.
pub fn grs_dual(field: &Field, v: &[Elem], alphas: &[Elem], k: usize) -> Result<Matrix> {
    let n = alphas.len();
    if k == 0 || k >= n {
        return Err(Error::InvalidParams(format!("dual needs 1 <= K < N, got K={k}, N={n}")));
    }
    grs_rows(field, v, alphas, n)?;
    let u = dual_multipliers(field, v, alphas)?;
    grs_rows(field, &u, alphas, n - k)
}

/// Splits `grs(v, alphas)` into `G` (first `k` rows) and `F` (the rest) and
/// reports whether `G_perp * F^T` has full rank `N - K`.
pub fn lemma3_check(field: &Field, v: &[Elem], alphas: &[Elem], k: usize) -> Result<bool> {
    let n = alphas.len();
    let full = grs(field, v, alphas)?;
    let f_rows: Vec<usize> = (k..n).collect();
    let f = full.select_rows(&f_rows)?;
    let g_perp = grs_dual(field, v, alphas, k)?;
    Ok(g_perp.mul(&f.transpose())?.rank() == n - k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn det_nonzero(m: &Matrix) -> bool {
        m.rank() == m.rows()
    }

    #[test]
    fn cauchy_hand_example() {
        let f = Field::new(7).unwrap();
        // 1/(0-2)=1/5=3, 1/(0-3)=1/4=2, 1/(1-2)=1/6=6, 1/(1-3)=1/5=3
        let brute_inv = |x: u32| (1..7).find(|&y| (x * y) % 7 == 1).unwrap();
        let expect = [
            [brute_inv(5), brute_inv(4)],
            [brute_inv(6), brute_inv(5)],
        ];
        let c = cauchy(&f, &[0, 1], &[2, 3]).unwrap();
        assert_eq!(c.to_rows(), vec![expect[0].to_vec(), expect[1].to_vec()]);
        assert_eq!(c.to_rows(), vec![vec![3, 2], vec![6, 3]]);
    }

    #[test]
    fn cauchy_one_by_one() {
        for q in [2u64, 5, 9, 16] {
            let f = Field::new(q).unwrap();
            let c = cauchy(&f, &[0], &[1]).unwrap();
            assert_eq!(c.get(0, 0), f.neg(1));
        }
        let f = Field::new(5).unwrap();
        assert_eq!(cauchy(&f, &[0], &[1]).unwrap().get(0, 0), 4);
    }

    #[test]
    fn cauchy_duplicates_rejected() {
        let f = Field::new(7).unwrap();
        assert_eq!(cauchy(&f, &[0, 1], &[1, 2]).unwrap_err(), Error::DuplicateEvaluationPoint);
    }

    #[test]
    fn cauchy_2x2_minors_f7() {
        let f = Field::new(7).unwrap();
        let c = cauchy(&f, &[0, 1, 2], &[3, 4, 5]).unwrap();
        let mut count = 0;
        for rows in (0..3).combinations(2) {
            for cols in (0..3).combinations(2) {
                let s = c.submatrix(&rows, &cols).unwrap();
                let det = f.sub(f.mul(s.get(0, 0), s.get(1, 1)), f.mul(s.get(0, 1), s.get(1, 0)));
                assert_ne!(det, 0);
                count += 1;
            }
        }
        assert_eq!(count, 9);
    }

    #[test]
    fn cauchy_every_square_minor_invertible() {
        for q in [7u64, 8, 9, 11, 13] {
            let f = Field::new(q).unwrap();
            for (r, c) in [(2, 3), (3, 3), (4, 5), (5, 5), (5, 4)] {
                if r + c > q as usize {
                    continue;
                }
                let m = default_cauchy(&f, r, c).unwrap();
                for k in 1..=r.min(c) {
                    for rows in (0..r).combinations(k) {
                        for cols in (0..c).combinations(k) {
                            assert!(det_nonzero(&m.submatrix(&rows, &cols).unwrap()));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn vandermonde_examples() {
        let f = Field::new(7).unwrap();
        let v = vandermonde(&f, &[1, 2, 3], 2).unwrap();
        assert_eq!(v.to_rows(), vec![vec![1, 1, 1], vec![1, 2, 3]]);
        for cols in (0..3).combinations(2) {
            assert!(det_nonzero(&v.select_cols(&cols).unwrap()));
        }
        let ones = vandermonde(&f, &[0, 3, 5], 1).unwrap();
        assert_eq!(ones.to_rows(), vec![vec![1, 1, 1]]);
    }

    #[test]
    fn vandermonde_column_mds() {
        for q in [5u64, 7, 8, 11, 13] {
            let f = Field::new(q).unwrap();
            for n in 1..=6usize.min(q as usize) {
                for k in 1..=4.min(n) {
                    let v = vandermonde(&f, &default_points(&f, n).unwrap(), k).unwrap();
                    for cols in (0..n).combinations(k) {
                        assert!(det_nonzero(&v.select_cols(&cols).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn grs_example() {
        let f = Field::new(7).unwrap();
        let g = grs(&f, &[1, 2, 3], &[1, 2, 3]).unwrap();
        assert_eq!(g.to_rows(), vec![vec![1, 2, 3], vec![1, 4, 2], vec![1, 1, 6]]);
        assert_eq!(g.rank(), 3);
        assert_eq!(grs(&f, &[1, 0, 3], &[1, 2, 3]).unwrap_err(), Error::ZeroMultiplier);
        let plain = grs(&f, &[1, 1, 1], &[1, 2, 3]).unwrap();
        assert_eq!(plain, vandermonde(&f, &[1, 2, 3], 3).unwrap());
    }

    #[test]
    fn grs_dual_hand_example() {
        let f = Field::new(7).unwrap();
        let d = grs_dual(&f, &[1, 1], &[0, 1], 1).unwrap();
        assert_eq!(d.to_rows(), vec![vec![6, 1]]);
        assert!(lemma3_check(&f, &[1, 1], &[0, 1], 1).unwrap());
        // F = (0, 1), so G_perp F^T = [1]
        let full = grs(&f, &[1, 1], &[0, 1]).unwrap();
        let prod = d.mul(&full.select_rows(&[1]).unwrap().transpose()).unwrap();
        assert_eq!(prod.to_rows(), vec![vec![1]]);
    }

    #[test]
    fn grs_dual_orthogonal() {
        let f = Field::new(13).unwrap();
        let v = [3, 1, 7, 2, 9, 11];
        let a = [0, 2, 4, 5, 8, 12];
        for k in 1..6 {
            let g = grs_rows(&f, &v, &a, k).unwrap();
            let d = grs_dual(&f, &v, &a, k).unwrap();
            assert_eq!(d.rank(), 6 - k);
            assert!(d.mul(&g.transpose()).unwrap().is_zero());
        }
    }
}
