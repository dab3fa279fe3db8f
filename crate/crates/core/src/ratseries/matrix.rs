use super::{LinRep, SeriesError};
use crate::field::Field;
use crate::linalg::{EchelonBasis, Matrix};

/// A square (or rectangular) matrix with rational-series entries.
pub type SeriesMatrix<F> = Vec<Vec<LinRep<F>>>;

/// A matrix-valued series `w ↦ Λ·μ(w)·Γ` with `Λ` of size `r×D` and `Γ`
/// of size `D×c`.
struct MatRep<F> {
    lambda: Matrix<F>,
    mu: Vec<Matrix<F>>,
    gamma: Matrix<F>,
}

impl<F: Field> MatRep<F> {
    /// Block-diagonal assembly: entry `(i, j)` gets its own block, wired to
    /// row `i` of `Λ` and column `j` of `Γ`.
    fn from_entries(m: &SeriesMatrix<F>) -> Self {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let total: usize = m.iter().flatten().map(LinRep::dim).sum();
        let letters = m.iter().flatten().map(LinRep::letters).max().unwrap_or(0);
        let mut lambda = Matrix::zeros(rows, total);
        let mut gamma = Matrix::zeros(total, cols);
        let mut mu = vec![Matrix::zeros(total, total); letters];
        let mut off = 0;
        for (i, row) in m.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                for k in 0..e.dim() {
                    lambda.set(i, off + k, e.lambda()[k].clone());
                    gamma.set(off + k, j, e.gamma()[k].clone());
                }
                for (l, ml) in mu.iter_mut().enumerate() {
                    if let Some(a) = e.mu(l as u32) {
                        for p in 0..e.dim() {
                            for q in 0..e.dim() {
                                ml.set(off + p, off + q, a.get(p, q).clone());
                            }
                        }
                    }
                }
                off += e.dim();
            }
        }
        MatRep { lambda, mu, gamma }
    }

    fn dim(&self) -> usize {
        self.lambda.cols()
    }

    fn transpose(&self) -> Self {
        MatRep {
            lambda: self.gamma.transpose(),
            mu: self.mu.iter().map(Matrix::transpose).collect(),
            gamma: self.lambda.transpose(),
        }
    }

    /// Restricts to the span of all rows of `Λ·μ(w)`.
    fn forward(&self) -> Self {
        let mut basis = EchelonBasis::new(self.dim());
        for i in 0..self.lambda.rows() {
            basis.insert(self.lambda.row(i).to_vec());
        }
        let mut next = 0;
        while next < basis.len() {
            let v = basis.row(next).to_vec();
            for m in &self.mu {
                basis.insert(m.left_apply(&v));
            }
            next += 1;
        }
        let k = basis.len();
        let rows = basis.reduced_rows();
        let coords = |v: &[F]| -> Vec<F> { rows.iter().map(|(p, _)| v[*p].clone()).collect() };
        let lambda = Matrix::from_rows(
            (0..self.lambda.rows())
                .map(|i| coords(self.lambda.row(i)))
                .collect(),
        );
        let mu = self
            .mu
            .iter()
            .map(|m| {
                if k == 0 {
                    return Matrix::zeros(0, 0);
                }
                Matrix::from_rows(
                    rows.iter()
                        .map(|(_, v)| coords(&m.left_apply(v)))
                        .collect(),
                )
            })
            .collect();
        let gamma = if k == 0 {
            Matrix::zeros(0, self.gamma.cols())
        } else {
            Matrix::from_rows(
                rows.iter()
                    .map(|(_, v)| self.gamma.transpose().right_apply(v))
                    .collect(),
            )
        };
        let lambda = if k == 0 {
            Matrix::zeros(self.lambda.rows(), 0)
        } else {
            lambda
        };
        MatRep { lambda, mu, gamma }
    }

    fn reduce(&self) -> Self {
        self.forward().transpose().forward().transpose()
    }

    /// `Σ_k P^k` for a square matrix series with `P(ε) = 0`, as the block
    /// representation `Λ' = [I, 0]`, `Γ' = [I; Γ]`,
    /// `μ'(x) = [[0, Λμ(x)], [0, μ(x) + ΓΛμ(x)]]`.
    fn star(&self) -> Self {
        let r = self.lambda.rows();
        let d = self.dim();
        let mut lambda = Matrix::zeros(r, r + d);
        let mut gamma = Matrix::zeros(r + d, r);
        for i in 0..r {
            lambda.set(i, i, F::one());
            gamma.set(i, i, F::one());
            for k in 0..d {
                gamma.set(r + k, i, self.gamma.get(k, i).clone());
            }
        }
        let mu = self
            .mu
            .iter()
            .map(|m| {
                let lm = self.lambda.mul(m);
                let inner = m.add(&self.gamma.mul(&lm));
                let mut out = Matrix::zeros(r + d, r + d);
                for j in 0..d {
                    for i in 0..r {
                        out.set(i, r + j, lm.get(i, j).clone());
                    }
                    for i in 0..d {
                        out.set(r + i, r + j, inner.get(i, j).clone());
                    }
                }
                out
            })
            .collect();
        MatRep { lambda, mu, gamma }
    }

    fn entry(&self, i: usize, j: usize) -> LinRep<F> {
        let gamma = (0..self.dim())
            .map(|k| self.gamma.get(k, j).clone())
            .collect();
        LinRep::new(self.lambda.row(i).to_vec(), self.mu.clone(), gamma)
            .expect("block sizes agree")
            .reduce()
    }
}

/// Entrywise augmentation.
pub fn augmentation<F: Field>(m: &SeriesMatrix<F>) -> Matrix<F> {
    Matrix::from_rows(
        m.iter()
            .map(|r| r.iter().map(LinRep::tau).collect())
            .collect(),
    )
}

pub fn series_identity<F: Field>(n: usize) -> SeriesMatrix<F> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        LinRep::one()
                    } else {
                        LinRep::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn series_mul<F: Field>(a: &SeriesMatrix<F>, b: &SeriesMatrix<F>) -> SeriesMatrix<F> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "dimension mismatch");
            (0..cols)
                .map(|j| (0..inner).fold(LinRep::zero(), |acc, k| acc.add(&row[k].mul(&b[k][j]))))
                .collect()
        })
        .collect()
}

pub fn series_equal<F: Field>(a: &SeriesMatrix<F>, b: &SeriesMatrix<F>) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(r, s)| r.len() == s.len() && r.iter().zip(s).all(|(x, y)| x.equals(y)))
}

/// Two-sided inverse of a square matrix over the rational series.
///
/// With `C = aug(M)` and `P = I - C⁻¹M` (entrywise proper), `M = C(I - P)`
/// and so `M⁻¹ = P*·C⁻¹`.
pub fn invert_matrix_series<F: Field>(m: &SeriesMatrix<F>) -> Result<SeriesMatrix<F>, SeriesError> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(SeriesError::Malformed("matrix is not square".into()));
    }
    let cinv = augmentation(m)
        .inverse()
        .ok_or(SeriesError::SingularAugmentation)?;
    let p: SeriesMatrix<F> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let cm = (0..n).fold(LinRep::zero(), |acc, k| {
                        acc.add(&m[k][j].scale(cinv.get(i, k)))
                    });
                    let delta = if i == j {
                        LinRep::one()
                    } else {
                        LinRep::zero()
                    };
                    delta.sub(&cm)
                })
                .collect()
        })
        .collect();
    let star = MatRep::from_entries(&p).reduce().star().reduce();
    let pstar: SeriesMatrix<F> = (0..n)
        .map(|i| (0..n).map(|j| star.entry(i, j)).collect())
        .collect();
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(LinRep::zero(), |acc, k| {
                        acc.add(&pstar[i][k].scale(cinv.get(k, j)))
                    })
                })
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    type R = LinRep<Q>;

    #[test]
    fn one_by_one_matches_scalar_inverse() {
        let a = R::one().sub(&R::letter(0));
        let inv = invert_matrix_series(&vec![vec![a.clone()]]).unwrap();
        assert!(inv[0][0].equals(&a.invert().unwrap()));
    }

    #[test]
    fn identity_inverts_to_identity() {
        let id = series_identity::<Q>(2);
        assert!(series_equal(&invert_matrix_series(&id).unwrap(), &id));
    }

    #[test]
    fn unipotent_upper_triangular() {
        let m = vec![vec![R::one(), R::letter(0)], vec![R::zero(), R::one()]];
        let inv = invert_matrix_series(&m).unwrap();
        let expected = vec![
            vec![R::one(), R::letter(0).neg()],
            vec![R::zero(), R::one()],
        ];
        assert!(series_equal(&inv, &expected));
        assert!(series_equal(&series_mul(&m, &inv), &series_identity(2)));
    }

    #[test]
    fn mixed_matrix_two_sided() {
        let x0 = R::letter(0);
        let x1 = R::letter(1);
        let m = vec![
            vec![R::constant(Q::from_int(2)).add(&x0), x1.clone()],
            vec![x0.mul(&x1), R::one().sub(&x1)],
        ];
        let inv = invert_matrix_series(&m).unwrap();
        assert!(series_equal(&series_mul(&m, &inv), &series_identity(2)));
        assert!(series_equal(&series_mul(&inv, &m), &series_identity(2)));
    }

    #[test]
    fn singular_augmentation_is_reported() {
        let m = vec![vec![R::letter(0)]];
        assert_eq!(
            invert_matrix_series(&m).unwrap_err(),
            SeriesError::SingularAugmentation
        );
    }
}
