use num_traits::Zero;

use super::Vector;
use crate::scalar::Rational;

/// Solves the square system `rows * x = rhs`; `None` if singular.
#[allow(clippy::needless_range_loop)] // row operations read clearer with indices
pub fn solve(rows: &[Vector], rhs: &[Rational]) -> Option<Vector> {
    let n = rows.len();
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.0.clone();
            row.push(b.clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for j in col..=n {
            m[col][j] = &m[col][j] * &inv;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in col..=n {
                let delta = &f * &m[col][j];
                m[r][j] -= delta;
            }
        }
    }
    Some(Vector(m.into_iter().map(|row| row[n].clone()).collect()))
}

/// Indices of a maximal linearly independent subset, chosen greedily in order.
pub fn independent_subset(vectors: &[Vector]) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut w = v.0.clone();
        for (pc, b) in &basis {
            if !w[*pc].is_zero() {
                let f = &w[*pc] / &b[*pc];
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= &f * bi;
                }
            }
        }
        if let Some(pc) = w.iter().position(|c| !c.is_zero()) {
            basis.push((pc, w));
            chosen.push(idx);
        }
    }
    chosen
}

pub fn rank(vectors: &[Vector]) -> usize {
    independent_subset(vectors).len()
}

/// Affine dimension of a nonempty point set.
pub fn affine_rank(points: &[Vector]) -> usize {
    let base = &points[0];
    let diffs: Vec<Vector> = points[1..].iter().map(|p| p - base).collect();
    rank(&diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn solves_small_systems() {
        let rows = vec![Vector::from_ints(&[2, 1]), Vector::from_ints(&[1, 3])];
        let x = solve(&rows, &[int(3), int(5)]).unwrap();
        assert_eq!(x, Vector::new(vec![frac(4, 5), frac(7, 5)]));
        let singular = vec![Vector::from_ints(&[1, 2]), Vector::from_ints(&[2, 4])];
        assert!(solve(&singular, &[int(1), int(2)]).is_none());
    }

    #[test]
    fn ranks() {
        let pts = vec![
            Vector::from_ints(&[0, 0, 0]),
            Vector::from_ints(&[1, 1, 1]),
            Vector::from_ints(&[2, 2, 2]),
        ];
        assert_eq!(affine_rank(&pts), 1);
        assert_eq!(
            rank(&[Vector::from_ints(&[1, 0, 0]), Vector::from_ints(&[0, 1, 0])]),
            2
        );
    }
}
