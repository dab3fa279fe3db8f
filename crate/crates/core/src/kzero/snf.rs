use super::KZeroError;

fn checked(v: Option<i128>) -> Result<i128, KZeroError> {
    v.ok_or(KZeroError::Overflow)
}

/// Diagonal form `D = A·V` up to row operations, with the column transform
/// `V` (unimodular) tracked.
pub(crate) struct Smith {
    pub diagonal: Vec<i128>,
    pub columns: Vec<Vec<i128>>,
}

/// `col_a += c·col_b` on both the working matrix and `V`.
fn add_col(
    a: &mut [Vec<i128>],
    v: &mut [Vec<i128>],
    dst: usize,
    src: usize,
    c: i128,
) -> Result<(), KZeroError> {
    for row in a.iter_mut().chain(v.iter_mut()) {
        row[dst] = checked(
            row[src]
                .checked_mul(c)
                .and_then(|p| row[dst].checked_add(p)),
        )?;
    }
    Ok(())
}

fn add_row(a: &mut [Vec<i128>], dst: usize, src: usize, c: i128) -> Result<(), KZeroError> {
    for j in 0..a[dst].len() {
        a[dst][j] = checked(
            a[src][j]
                .checked_mul(c)
                .and_then(|p| a[dst][j].checked_add(p)),
        )?;
    }
    Ok(())
}

fn swap_cols(a: &mut [Vec<i128>], v: &mut [Vec<i128>], i: usize, j: usize) {
    for row in a.iter_mut().chain(v.iter_mut()) {
        row.swap(i, j);
    }
}

/// Smith normal form of an `r×k` integer matrix.
pub(crate) fn smith(rows: &[Vec<i128>], k: usize) -> Result<Smith, KZeroError> {
    let mut a: Vec<Vec<i128>> = rows.to_vec();
    let mut v: Vec<Vec<i128>> = (0..k)
        .map(|i| (0..k).map(|j| i128::from(i == j)).collect())
        .collect();
    let r = a.len();
    let mut diagonal = Vec::new();
    for t in 0..r.min(k) {
        let pivot = (t..r)
            .flat_map(|i| (t..k).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].unsigned_abs());
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        swap_cols(&mut a, &mut v, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..r {
                let q = a[i][t] / a[t][t];
                if q != 0 {
                    add_row(&mut a, i, t, -q)?;
                }
                if a[i][t] != 0 {
                    a.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..k {
                let q = a[t][j] / a[t][t];
                if q != 0 {
                    add_col(&mut a, &mut v, j, t, -q)?;
                }
                if a[t][j] != 0 {
                    swap_cols(&mut a, &mut v, t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Enforce d_t | every remaining entry.
            let bad = (t + 1..r)
                .flat_map(|i| (t + 1..k).map(move |j| (i, j)))
                .find(|&(i, j)| a[i][j] % a[t][t] != 0);
            match bad {
                Some((i, _)) => add_row(&mut a, t, i, 1)?,
                None => break,
            }
        }
        if a[t][t] < 0 {
            for row in a.iter_mut() {
                row[t] = -row[t];
            }
            for row in v.iter_mut() {
                row[t] = -row[t];
            }
        }
        diagonal.push(a[t][t]);
    }
    Ok(Smith {
        diagonal,
        columns: v,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
        a.iter()
            .map(|row| {
                (0..b[0].len())
                    .map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn diagonal_divides_and_transform_is_unimodular() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith(&a, 3).unwrap();
        assert_eq!(s.diagonal, vec![2, 6, 12]);
        let av = mul(&a, &s.columns);
        let det = |m: &[Vec<i128>]| {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        };
        assert_eq!(det(&s.columns).abs(), 1);
        assert_eq!(det(&av).abs(), 144);
    }

    #[test]
    fn overflow_is_reported() {
        let a = vec![vec![3, i128::MAX], vec![i128::MAX, 3]];
        assert!(matches!(smith(&a, 2), Err(KZeroError::Overflow)));
    }
}
