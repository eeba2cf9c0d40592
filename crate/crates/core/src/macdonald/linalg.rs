//! Exact Gaussian elimination over the parameter field.

use crate::error::{Error, Result};
use crate::param::ParamScalar;

/// Solves `a x = rhs` for square `a` (row-major).
pub(crate) fn solve(mut a: Vec<Vec<ParamScalar>>, mut rhs: Vec<ParamScalar>) -> Result<Vec<ParamScalar>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularSystem)?;
        a.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = a[col][col].inv()?;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for c in col..n {
                let v = &factor * &a[col][c];
                a[r][c] -= &v;
            }
            let v = &factor * &rhs[col];
            rhs[r] -= &v;
        }
    }
    (0..n).map(|i| rhs[i].checked_div(&a[i][i])).collect()
}
