use super::{EntryMatrix, GeneratorMatrices, Kt, RealizeError};
use crate::field::{Field, RatFunc};
use crate::freealg::FreeElem;
use crate::ratseries::{
    invert_matrix_series, series_equal, series_identity, series_mul, LinRep, SeriesMatrix,
};

/// An inverse of `I + p(A_0, …, A_n)` over `K(t)_rat<X>`, with both
/// products checked against the identity.
#[derive(Debug, Clone)]
pub struct SigmaCertificate<F: Field> {
    pub matrix: SeriesMatrix<Kt<F>>,
    pub inverse: SeriesMatrix<Kt<F>>,
    pub left_identity: bool,
    pub right_identity: bool,
}

impl<F: Field> SigmaCertificate<F> {
    pub fn verified(&self) -> bool {
        self.left_identity && self.right_identity
    }
}

fn as_series<F: Field>(m: &EntryMatrix<F>, case: u8) -> Result<SeriesMatrix<Kt<F>>, RealizeError> {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|e| e.as_coeff().ok_or(RealizeError::UnsupportedCase(case)))
                .collect()
        })
        .collect()
}

fn block_add<F: Field>(
    out: &mut SeriesMatrix<Kt<F>>,
    block: &SeriesMatrix<Kt<F>>,
    r: usize,
    c: usize,
) {
    for (i, row) in block.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            out[r + i][c + j] = out[r + i][c + j].add(e);
        }
    }
}

/// `p(A)` for one polynomial in the variables `Z_i ↦ A_i`.
fn evaluate<F: Field>(
    p: &FreeElem<F>,
    a: &[SeriesMatrix<Kt<F>>],
    size: usize,
) -> Result<SeriesMatrix<Kt<F>>, RealizeError> {
    let mut out = vec![vec![LinRep::zero(); size]; size];
    for (w, c) in p.terms() {
        let mut prod = series_identity(size);
        for &z in w.letters() {
            let az = a.get(z as usize).ok_or(RealizeError::UnknownVariable(z))?;
            prod = series_mul(&prod, az);
        }
        let c = RatFunc::constant(c.clone());
        for (o, r) in out.iter_mut().zip(prod) {
            for (x, y) in o.iter_mut().zip(r) {
                *x = x.add(&y.scale(&c));
            }
        }
    }
    Ok(out)
}

/// Inverts `I + p(A)` for an `r×r` matrix `p` of polynomials with zero
/// constant terms, viewed as an `ℓr×ℓr` matrix over the series. The
/// augmentation is invertible over `K(t)`, so the matrix star applies.
pub fn spot_check_sigma_prime<F: Field>(
    g: &GeneratorMatrices<F>,
    p: &[Vec<FreeElem<F>>],
) -> Result<SigmaCertificate<F>, RealizeError> {
    if g.case != 1 && g.case != 2 {
        return Err(RealizeError::UnsupportedCase(g.case));
    }
    let r = p.len();
    if r == 0 || p.iter().any(|row| row.len() != r) {
        return Err(RealizeError::BadShape);
    }
    let a: Vec<SeriesMatrix<Kt<F>>> =
        g.a.iter()
            .map(|m| as_series(m, g.case))
            .collect::<Result<_, _>>()?;
    let l = g.size;
    let mut matrix = series_identity(l * r);
    for (bi, row) in p.iter().enumerate() {
        for (bj, poly) in row.iter().enumerate() {
            if !poly.tau().is_zero() {
                return Err(RealizeError::ConstantTerm(bi, bj));
            }
            let block = evaluate(poly, &a, l)?;
            block_add(&mut matrix, &block, bi * l, bj * l);
        }
    }
    let inverse = invert_matrix_series(&matrix)?;
    let id = series_identity(l * r);
    Ok(SigmaCertificate {
        left_identity: series_equal(&series_mul(&inverse, &matrix), &id),
        right_identity: series_equal(&series_mul(&matrix, &inverse), &id),
        matrix,
        inverse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::realize::{build_generators, CyclicTag, HomSpec};
    use crate::word::Word;

    fn spec(n: u64, m: u64, l: i64) -> HomSpec {
        HomSpec::new(CyclicTag::new(n).unwrap(), CyclicTag::new(m).unwrap(), l).unwrap()
    }

    fn z(w: &[u32]) -> FreeElem<Q> {
        FreeElem::monomial(Word(w.to_vec()), Q::from_int(1))
    }

    #[test]
    fn one_plus_a0_in_case2() {
        let g = build_generators::<Q>(&spec(0, 2, 1));
        let c = spot_check_sigma_prime(&g, &[vec![z(&[0])]]).unwrap();
        assert!(c.verified());
        let expected = LinRep::one().add(&LinRep::letter(0)).invert().unwrap();
        assert!(c.inverse[0][0].equals(&expected));
    }

    #[test]
    fn zero_polynomial_gives_identity() {
        let g = build_generators::<Q>(&spec(0, 2, 1));
        let c = spot_check_sigma_prime(&g, &[vec![FreeElem::zero()]]).unwrap();
        assert!(series_equal(&c.inverse, &series_identity(1)));
    }

    #[test]
    fn product_in_case1() {
        let g = build_generators::<Q>(&spec(2, 2, 2));
        let c = spot_check_sigma_prime(&g, &[vec![z(&[1, 0])]]).unwrap();
        assert!(c.verified());
        let c = spot_check_sigma_prime(&g, &[vec![z(&[0]).scale(&Q::from_int(-1))]]).unwrap();
        assert!(c.verified());
    }

    #[test]
    fn rejects_bad_input() {
        let g = build_generators::<Q>(&spec(0, 2, 1));
        assert_eq!(
            spot_check_sigma_prime(&g, &[vec![FreeElem::one()]]).unwrap_err(),
            RealizeError::ConstantTerm(0, 0)
        );
        let g = build_generators::<Q>(&spec(0, 0, -1));
        assert_eq!(
            spot_check_sigma_prime(&g, &[vec![z(&[0])]]).unwrap_err(),
            RealizeError::UnsupportedCase(3)
        );
    }
}
