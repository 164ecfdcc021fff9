use num::Zero;

use crate::error::{Error, Result};
use crate::exact::Rational;

fn height(r: &Rational) -> u64 {
    r.numer().bits() + r.denom().bits()
}

/// Solves the square system `matrix · x = rhs` by exact Gaussian elimination,
/// pivoting on the entry of smallest bit height.
pub fn solve(mut matrix: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Result<Vec<Rational>> {
    let n = rhs.len();
    if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
        return Err(Error::Precondition(format!("system is not {n}×{n}")));
    }
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !matrix[r][col].is_zero())
            .min_by_key(|&r| height(&matrix[r][col]))
            .ok_or(Error::SingularSystem)?;
        matrix.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = matrix[col][col].recip();
        for r in col + 1..n {
            if matrix[r][col].is_zero() {
                continue;
            }
            let factor = &matrix[r][col] * &inv;
            let (upper, lower) = matrix.split_at_mut(r);
            for (target, source) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *target -= &factor * source;
            }
            let delta = &factor * &rhs[col];
            rhs[r] -= delta;
        }
    }
    let mut x = vec![Rational::zero(); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row].clone();
        for c in row + 1..n {
            acc -= &matrix[row][c] * &x[c];
        }
        x[row] = acc / &matrix[row][row];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn small_system() {
        let m = vec![vec![int(0), int(2)], vec![rat(1, 3), int(1)]];
        let x = solve(m, vec![int(4), int(3)]).unwrap();
        assert_eq!(x, vec![int(3), int(2)]);
    }

    #[test]
    fn singular() {
        let m = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(solve(m, vec![int(1), int(2)]), Err(Error::SingularSystem));
    }

    #[test]
    fn empty() {
        assert_eq!(solve(vec![], vec![]).unwrap(), Vec::<Rational>::new());
    }
}
