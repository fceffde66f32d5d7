//! Integer matrix algorithms: row-style Hermite normal form (with optional
//! unimodular transform) and Smith normal form invariant factors.
//!
//! Conventions: matrices are `Vec<Vec<BigInt>>` in row-major order. The row
//! HNF is upper staircase with positive pivots; entries above each pivot are
//! reduced into `[0, pivot)`. For a full-rank square matrix this yields an
//! upper-triangular matrix with positive diagonal, and the form is unique.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

// operating on two rows of the same matrix keeps these as index loops
#[allow(clippy::needless_range_loop)]
fn row_combine(
    mat: &mut Matrix,
    i: usize,
    j: usize,
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
    d: &BigInt,
) {
    // rows (i, j) <- (a*row_i + b*row_j, c*row_i + d*row_j); caller guarantees ad - bc = ±1
    let cols = mat[i].len();
    for col in 0..cols {
        let x = mat[i][col].clone();
        let y = mat[j][col].clone();
        mat[i][col] = a * &x + b * &y;
        mat[j][col] = c * &x + d * &y;
    }
}

#[allow(clippy::needless_range_loop)]
fn row_sub_multiple(mat: &mut Matrix, target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let cols = mat[target].len();
    for col in 0..cols {
        let s = &mat[source][col] * q;
        mat[target][col] -= s;
    }
}

fn negate_row(mat: &mut Matrix, row: usize) {
    for e in mat[row].iter_mut() {
        *e = -(e.clone());
    }
}

/// Reduces `mat` to row Hermite normal form in place, mirroring every row
/// operation on `transform` when one is supplied. Returns the rank; zero rows
/// end up at the bottom.
pub fn row_hnf(mat: &mut Matrix, mut transform: Option<&mut Matrix>) -> usize {
    let rows = mat.len();
    if rows == 0 {
        return 0;
    }
    let cols = mat[0].len();
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row >= rows {
            break;
        }
        // gcd-eliminate every entry below pivot_row in this column
        for r in pivot_row + 1..rows {
            if mat[r][col].is_zero() {
                continue;
            }
            if mat[pivot_row][col].is_zero() {
                mat.swap(pivot_row, r);
                if let Some(t) = transform.as_deref_mut() {
                    t.swap(pivot_row, r);
                }
                continue;
            }
            let a = mat[pivot_row][col].clone();
            let b = mat[r][col].clone();
            let eg = a.extended_gcd(&b);
            // eg.x * a + eg.y * b = g; the complementary row (-b/g, a/g) keeps det = ±1
            let bg = &b / &eg.gcd;
            let ag = &a / &eg.gcd;
            row_combine(mat, pivot_row, r, &eg.x, &eg.y, &(-bg), &ag);
            if let Some(t) = transform.as_deref_mut() {
                let bg = &b / &eg.gcd;
                let ag = &a / &eg.gcd;
                row_combine(t, pivot_row, r, &eg.x, &eg.y, &(-bg), &ag);
            }
        }
        if mat[pivot_row][col].is_zero() {
            continue;
        }
        if mat[pivot_row][col].is_negative() {
            negate_row(mat, pivot_row);
            if let Some(t) = transform.as_deref_mut() {
                negate_row(t, pivot_row);
            }
        }
        // reduce the entries above the pivot into [0, pivot)
        let pivot = mat[pivot_row][col].clone();
        for r in 0..pivot_row {
            let q = mat[r][col].div_floor(&pivot);
            row_sub_multiple(mat, r, pivot_row, &q);
            if let Some(t) = transform.as_deref_mut() {
                row_sub_multiple(t, r, pivot_row, &q);
            }
        }
        pivot_row += 1;
    }
    pivot_row
}

/// Kernel of the row map `x -> x * mat`: basis vectors (as rows) of the
/// integer solutions, themselves in Hermite normal form.
pub fn kernel_basis(mat: &Matrix) -> Matrix {
    let rows = mat.len();
    let mut work = mat.clone();
    let mut u = identity(rows);
    let rank = row_hnf(&mut work, Some(&mut u));
    let mut ker: Matrix = u.drain(..).skip(rank).collect();
    row_hnf(&mut ker, None);
    ker
}

/// Product of the diagonal of an upper-triangular matrix.
pub fn diagonal_product(mat: &Matrix) -> BigInt {
    let mut det = BigInt::one();
    for (i, row) in mat.iter().enumerate() {
        det *= &row[i];
    }
    det
}

fn col_sub_multiple(mat: &mut Matrix, target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in mat.iter_mut() {
        let s = &row[source] * q;
        row[target] -= s;
    }
}

/// Invariant factors d_1 | d_2 | ... of the cokernel of `mat` (Smith normal
/// form diagonal, positive, including any 1 entries, excluding zeros).
pub fn smith_invariants(mut mat: Matrix) -> Vec<BigInt> {
    let rows = mat.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = mat[0].len();
    let steps = rows.min(cols);
    let mut diag = Vec::with_capacity(steps);
    for t in 0..steps {
        'pivot: loop {
            // locate the submatrix entry of least nonzero magnitude
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if mat[i][j].is_zero() {
                        continue;
                    }
                    match &best {
                        Some((bi, bj)) if mat[*bi][*bj].abs() <= mat[i][j].abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'pivot;
            };
            mat.swap(t, pi);
            for row in mat.iter_mut() {
                row.swap(t, pj);
            }
            let mut dirty = false;
            let pivot = mat[t][t].clone();
            for i in t + 1..rows {
                let q = mat[i][t].div_floor(&pivot);
                row_sub_multiple(&mut mat, i, t, &q);
                if !mat[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = mat[t][j].div_floor(&pivot);
                col_sub_multiple(&mut mat, j, t, &q);
                if !mat[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot;
            }
            // pivot must divide the remaining block; fold in any offender
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&mat[i][j] % &pivot).is_zero() {
                        let one = BigInt::one();
                        row_sub_multiple(&mut mat, t, i, &(-one));
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
        if mat[t][t].is_zero() {
            break;
        }
        diag.push(mat[t][t].abs());
    }
    // enforce the divisibility chain
    let n = diag.len();
    for i in 0..n {
        for j in i + 1..n {
            if !(&diag[j] % &diag[i]).is_zero() {
                let g = diag[i].gcd(&diag[j]);
                let l = &diag[i] / &g * &diag[j];
                diag[i] = g;
                diag[j] = l;
            }
        }
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn hnf_of_identity_like() {
        let mut a = m(&[&[3, 0], &[0, 6], &[2, 2]]);
        let rank = row_hnf(&mut a, None);
        assert_eq!(rank, 2);
        assert_eq!(a[0], vec![BigInt::from(1), BigInt::from(4)]);
        assert_eq!(a[1], vec![BigInt::from(0), BigInt::from(6)]);
        assert!(a[2].iter().all(|e| e.is_zero()));
    }

    #[test]
    fn hnf_transform_reproduces_result() {
        let orig = m(&[&[4, 6], &[6, 4], &[2, 8]]);
        let mut a = orig.clone();
        let mut u = identity(3);
        let rank = row_hnf(&mut a, Some(&mut u));
        assert_eq!(rank, 2);
        for i in 0..3 {
            for j in 0..2 {
                let mut acc = BigInt::zero();
                for k in 0..3 {
                    acc += &u[i][k] * &orig[k][j];
                }
                assert_eq!(acc, a[i][j]);
            }
        }
    }

    #[test]
    fn kernel_annihilates() {
        let mat = m(&[&[2], &[1], &[4]]);
        let ker = kernel_basis(&mat);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            let s: BigInt = v.iter().zip(&mat).map(|(c, row)| c * &row[0]).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn smith_invariants_chain() {
        let inv = smith_invariants(m(&[&[2, 0], &[0, 2]]));
        assert_eq!(inv, vec![BigInt::from(2), BigInt::from(2)]);
        let inv = smith_invariants(m(&[&[2, 1], &[0, 3]]));
        assert_eq!(inv, vec![BigInt::from(1), BigInt::from(6)]);
        let inv = smith_invariants(m(&[&[6]]));
        assert_eq!(inv, vec![BigInt::from(6)]);
    }
}
