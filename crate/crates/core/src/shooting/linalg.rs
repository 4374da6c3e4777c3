//! Small dense interval linear algebra.

use crate::interval::{Interval, IntervalError};

#[derive(Debug, Clone, PartialEq)]
pub enum SolveError {
    Singular,
    Interval(IntervalError),
}

impl From<IntervalError> for SolveError {
    fn from(e: IntervalError) -> Self {
        SolveError::Interval(e)
    }
}

/// Encloses the solutions of `A x = b` for all real `A ∈ a`, `b ∈ b` by
/// Gaussian elimination with partial pivoting on the pivot midpoints.
///
/// Fails with [`SolveError::Singular`] when a pivot contains zero.
pub fn solve(mut a: Vec<Vec<Interval>>, mut b: Vec<Interval>) -> Result<Vec<Interval>, SolveError> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|row| row.len() == n));
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                a[i][col]
                    .mid()
                    .abs()
                    .total_cmp(&a[j][col].mid().abs())
            })
            .expect("non-empty range");
        a.swap(col, pivot);
        b.swap(col, pivot);
        let p = a[col][col];
        if p.contains_zero() {
            return Err(SolveError::Singular);
        }
        for row in col + 1..n {
            let factor = a[row][col].div(p)?;
            a[row][col] = Interval::ZERO;
            for k in col + 1..n {
                a[row][k] = a[row][k].sub(factor.mul(a[col][k])?)?;
            }
            b[row] = b[row].sub(factor.mul(b[col])?)?;
        }
    }
    let mut x = vec![Interval::ZERO; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc = acc.sub(a[row][k].mul(x[k])?)?;
        }
        x[row] = acc.div(a[row][row])?;
    }
    Ok(x)
}

pub(crate) fn mat_vec<const D: usize>(
    m: &[[Interval; D]; D],
    v: &[Interval; D],
) -> Result<[Interval; D], IntervalError> {
    let mut out = [Interval::ZERO; D];
    for i in 0..D {
        let mut acc = Interval::ZERO;
        for j in 0..D {
            acc = acc.add(m[i][j].mul(v[j])?)?;
        }
        out[i] = acc;
    }
    Ok(out)
}

pub(crate) fn mat_mul<const D: usize>(
    a: &[[Interval; D]; D],
    b: &[[Interval; D]; D],
) -> Result<[[Interval; D]; D], IntervalError> {
    let mut out = [[Interval::ZERO; D]; D];
    for i in 0..D {
        for j in 0..D {
            let mut acc = Interval::ZERO;
            for k in 0..D {
                acc = acc.add(a[i][k].mul(b[k][j])?)?;
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

pub(crate) fn vec_add<const D: usize>(
    a: &[Interval; D],
    b: &[Interval; D],
) -> Result<[Interval; D], IntervalError> {
    let mut out = [Interval::ZERO; D];
    for i in 0..D {
        out[i] = a[i].add(b[i])?;
    }
    Ok(out)
}

pub(crate) fn identity<const D: usize>() -> [[Interval; D]; D] {
    let mut out = [[Interval::ZERO; D]; D];
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = Interval::ONE;
    }
    out
}
