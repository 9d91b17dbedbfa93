//! Exact integer and rational matrix routines for small dense matrices.
//!
//! Matrices are slices of rows; every row has the same length `ncols`.

#![allow(clippy::needless_range_loop)]

use num_rational::Ratio;
use num_traits::{One, Zero};

use super::LatticeScalar;

/// Divides out the content of `v` and makes the first nonzero entry positive
/// only when `normalize_sign` is set.
pub fn make_primitive<T: LatticeScalar>(mut v: Vec<T>, normalize_sign: bool) -> Vec<T> {
    let g = v.iter().fold(T::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    for x in &mut v {
        *x = x.clone() / g.clone();
    }
    if normalize_sign {
        if let Some(first) = v.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                for x in &mut v {
                    *x = -x.clone();
                }
            }
        }
    }
    v
}

/// Reduced row echelon form over the rationals; returns the nonzero rows and pivot columns.
pub fn rref<T: LatticeScalar>(rows: &[Vec<T>], ncols: usize) -> (Vec<Vec<Ratio<T>>>, Vec<usize>) {
    let mut m: Vec<Vec<Ratio<T>>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "row length mismatch");
            r.iter().cloned().map(Ratio::from_integer).collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        let Some(found) = (next..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(next, found);
        let inv = m[next][col].recip();
        for x in &mut m[next] {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = m[next].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != next && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        pivots.push(col);
        next += 1;
    }
    m.truncate(next);
    (m, pivots)
}

pub fn rank<T: LatticeScalar>(rows: &[Vec<T>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x in Z^ncols : r . x = 0 for every row r}`, each vector primitive.
///
/// This is a basis of the rational kernel; it spans the integer kernel only
/// up to finite index, which is all the callers need (directions).
pub fn integer_kernel<T: LatticeScalar>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let (reduced, pivots) = rref(rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|free| {
            let mut v: Vec<Ratio<T>> = vec![Ratio::zero(); ncols];
            v[free] = Ratio::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            let lcm = v.iter().fold(T::one(), |acc, x| acc.lcm(x.denom()));
            let ints = v
                .into_iter()
                .map(|x| (x * Ratio::from_integer(lcm.clone())).to_integer())
                .collect();
            make_primitive(ints, false)
        })
        .collect()
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant<T: LatticeScalar>(m: &[Vec<T>]) -> T {
    let n = m.len();
    match n {
        0 => T::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = T::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<T>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].clone() * determinant(&minor);
                if j % 2 == 0 {
                    acc = acc + term;
                } else {
                    acc = acc - term;
                }
            }
            acc
        }
    }
}

fn min_abs_position<T: LatticeScalar>(
    m: &[Vec<T>],
    rows: impl Iterator<Item = usize> + Clone,
    cols: impl Iterator<Item = usize> + Clone,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if m[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Nonzero invariant factors of the Smith normal form, in divisibility order.
pub fn smith_invariants<T: LatticeScalar>(rows: &[Vec<T>], ncols: usize) -> Vec<T> {
    let mut a: Vec<Vec<T>> = rows.to_vec();
    let nrows = a.len();
    let mut out = Vec::new();
    for t in 0..nrows.min(ncols) {
        let Some((i, j)) = min_abs_position(&a, t..nrows, t..ncols) else {
            break;
        };
        a.swap(t, i);
        for row in &mut a {
            row.swap(t, j);
        }
        loop {
            for i in t + 1..nrows {
                let q = a[i][t].div_floor(&a[t][t]);
                for k in t..ncols {
                    let v = a[t][k].clone() * q.clone();
                    a[i][k] = a[i][k].clone() - v;
                }
            }
            for j in t + 1..ncols {
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = row[t].clone() * q.clone();
                    row[j] = row[j].clone() - v;
                }
            }
            let line_dirty = (t + 1..nrows).any(|i| !a[i][t].is_zero())
                || (t + 1..ncols).any(|j| !a[t][j].is_zero());
            if line_dirty {
                // A remainder smaller than the pivot now sits in the pivot row or column.
                let in_col = (t + 1..nrows)
                    .filter(|&i| !a[i][t].is_zero())
                    .min_by_key(|&i| a[i][t].abs());
                let in_row = (t + 1..ncols)
                    .filter(|&j| !a[t][j].is_zero())
                    .min_by_key(|&j| a[t][j].abs());
                match (in_col, in_row) {
                    (Some(i), Some(j)) if a[t][j].abs() < a[i][t].abs() => {
                        for row in &mut a {
                            row.swap(t, j);
                        }
                    }
                    (Some(i), _) => a.swap(t, i),
                    (None, Some(j)) => {
                        for row in &mut a {
                            row.swap(t, j);
                        }
                    }
                    (None, None) => unreachable!("line is dirty"),
                }
                continue;
            }
            let bad = (t + 1..nrows)
                .find(|&i| (t + 1..ncols).any(|j| !(a[i][j].clone() % a[t][t].clone()).is_zero()));
            match bad {
                Some(i) => {
                    for k in t..ncols {
                        let v = a[i][k].clone();
                        a[t][k] = a[t][k].clone() + v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

/// Extends the rows to a square integer matrix of determinant +-1.
///
/// Returns `None` when the rows are linearly dependent or do not span a
/// saturated sublattice. The first `rows.len()` rows of the result are the
/// input rows.
pub fn unimodular_completion<T: LatticeScalar>(
    rows: &[Vec<T>],
    ncols: usize,
) -> Option<Vec<Vec<T>>> {
    let d = rows.len();
    if d > ncols {
        return None;
    }
    let mut a: Vec<Vec<T>> = rows.to_vec();
    // Invariant: rows == a * vinv.
    let mut vinv: Vec<Vec<T>> = (0..ncols)
        .map(|i| {
            (0..ncols)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect();
    for r in 0..d {
        loop {
            let (_, c) = min_abs_position(&a, r..r + 1, r..ncols)?;
            for row in &mut a {
                row.swap(r, c);
            }
            vinv.swap(r, c);
            let mut clean = true;
            for c2 in r + 1..ncols {
                if a[r][c2].is_zero() {
                    continue;
                }
                let q = a[r][c2].div_floor(&a[r][r]);
                for row in a.iter_mut() {
                    let v = row[r].clone() * q.clone();
                    row[c2] = row[c2].clone() - v;
                }
                for k in 0..ncols {
                    let v = vinv[c2][k].clone() * q.clone();
                    vinv[r][k] = vinv[r][k].clone() + v;
                }
                clean &= a[r][c2].is_zero();
            }
            if clean {
                break;
            }
        }
    }
    let index = (0..d).fold(T::one(), |acc, i| acc * a[i][i].clone());
    if !index.abs().is_one() {
        return None;
    }
    let mut out = rows.to_vec();
    out.extend(vinv.into_iter().skip(d));
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<i64>> {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn kernel_directions() {
        let k = integer_kernel(&m(&[&[1, 2, 0, 0]]), 4);
        assert_eq!(k.len(), 3);
        for v in &k {
            assert_eq!(v[0] + 2 * v[1], 0);
        }
        assert_eq!(k[0], vec![-2, 1, 0, 0]);
        assert!(integer_kernel(&m(&[&[1, 0], &[0, 1]]), 2).is_empty());
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&m(&[&[2, 0], &[0, 3]])), 6);
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), -1);
        assert_eq!(determinant(&m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])), -3);
    }

    #[test]
    fn smith_forms() {
        assert_eq!(
            smith_invariants(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), 3),
            vec![2, 6, 12]
        );
        assert_eq!(
            smith_invariants(&m(&[&[1, 0, 0, 0], &[1, 2, 0, 0]]), 4),
            vec![1, 2]
        );
        assert_eq!(smith_invariants(&m(&[&[2, 3]]), 2), vec![1]);
        assert!(smith_invariants(&m(&[&[0, 0]]), 2).is_empty());
    }

    #[test]
    fn completions() {
        let full = unimodular_completion(&m(&[&[2, 3]]), 2).unwrap();
        assert_eq!(full[0], vec![2, 3]);
        assert_eq!(determinant(&full).abs(), 1);

        let rows = m(&[&[1, 1, 1, 0], &[1, 0, 1, 0], &[0, 1, 0, 1]]);
        let full = unimodular_completion(&rows, 4).unwrap();
        assert_eq!(&full[..3], &rows[..]);
        assert_eq!(determinant(&full).abs(), 1);

        assert!(unimodular_completion(&m(&[&[1, 0, 0, 0], &[1, 2, 0, 0]]), 4).is_none());
        assert!(unimodular_completion(&m(&[&[1, 0], &[2, 0]]), 2).is_none());
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(make_primitive(vec![2i64, 2, 2, 0], false), vec![1, 1, 1, 0]);
        assert_eq!(
            make_primitive(vec![0i64, -4, 6, 0], true),
            vec![0, 2, -3, 0]
        );
        assert_eq!(make_primitive(vec![0i64, 0], true), vec![0, 0]);
    }
}
