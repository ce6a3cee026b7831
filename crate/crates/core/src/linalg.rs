//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Signed, Zero};

use crate::rational::Q;

/// Reduced row echelon form of a dense matrix.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<Vec<Q>>,
    /// Pivot column of each nonzero row, in order.
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Reduces `m` in place. Pivots are the first nonzero entry found in each
/// column, so the result does not depend on magnitudes.
pub fn rref(mut m: Vec<Vec<Q>>, ncols: usize) -> Rref {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = Q::one() / &m[row][col];
        for v in m[row].iter_mut().skip(col) {
            *v *= &inv;
        }
        let pivot_row = m[row].clone();
        for (i, r) in m.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (j, pv) in pivot_row.iter().enumerate().skip(col) {
                if !pv.is_zero() {
                    r[j] -= &f * pv;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    Rref { rows: m, pivots }
}

/// Rank of the first `ncols` columns of `m`.
pub fn rank(m: &[Vec<Q>], ncols: usize) -> usize {
    integer_rank(m, ncols).unwrap_or_else(|| rref(m.iter().map(|r| r[..ncols].to_vec()).collect(), ncols).rank())
}

/// Integer elimination for integer matrices: a row is cleared against the
/// pivot row by integer combinations and then divided by the gcd of its
/// entries, which keeps the sparse matrices of edge relations small. Rows
/// are only rescaled by nonzero integers, so the rank is exact. `None` on
/// overflow or a non-integer entry.
fn integer_rank(m: &[Vec<Q>], ncols: usize) -> Option<usize> {
    let mut a: Vec<Vec<i64>> = m
        .iter()
        .map(|r| {
            r[..ncols]
                .iter()
                .map(|q| if q.is_integer() { i64::try_from(q.numer()).ok() } else { None })
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<_>>()?;
    let mut row = 0;
    for col in 0..ncols {
        if row == a.len() {
            break;
        }
        let Some(p) = (row..a.len()).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(row, p);
        let (top, rest) = a.split_at_mut(row + 1);
        let pivot_row = &top[row];
        let pivot = pivot_row[col];
        for r in rest.iter_mut().filter(|r| r[col] != 0) {
            let f = r[col];
            let g = num_integer::gcd(pivot, f);
            let (sp, sf) = (pivot / g, f / g);
            let mut content = 0i64;
            for j in col..ncols {
                let v = sp.checked_mul(r[j])?.checked_sub(sf.checked_mul(pivot_row[j])?)?;
                r[j] = v;
                content = num_integer::gcd(content, v);
            }
            if content > 1 {
                r[col..].iter_mut().for_each(|v| *v /= content);
            }
        }
        row += 1;
    }
    Some(row)
}

/// Outcome of solving `A x = b`.
#[derive(Clone, Debug, PartialEq)]
pub enum LinearSolution {
    Inconsistent,
    Unique(Vec<Q>),
    /// Consistent with a solution set of the given dimension; carries one
    /// particular solution with all free variables set to zero.
    Family { dimension: usize, particular: Vec<Q> },
}

/// Solves the system whose rows are `[a_1 .. a_n | b]`.
pub fn solve_augmented(rows: Vec<Vec<Q>>, nvars: usize) -> LinearSolution {
    let r = rref(rows, nvars + 1);
    if r.pivots.last() == Some(&nvars) {
        return LinearSolution::Inconsistent;
    }
    let mut x = vec![Q::zero(); nvars];
    for (row, &c) in r.rows.iter().zip(&r.pivots) {
        x[c] = row[nvars].clone();
    }
    if r.rank() == nvars {
        LinearSolution::Unique(x)
    } else {
        LinearSolution::Family {
            dimension: nvars - r.rank(),
            particular: x,
        }
    }
}

/// Bound on a variable in [`find_feasible`].
#[derive(Clone, Debug, PartialEq)]
pub enum VarBound {
    Free,
    AtLeast(Q),
}

/// Finds a point of `{x : A x = b, x_j >= lo_j for bounded j}` or reports
/// that none exists. Rows are given augmented as `[a_1 .. a_n | b]`.
///
/// Exact phase-one simplex with Bland's rule, so it always terminates.
pub fn find_feasible(rows: &[Vec<Q>], bounds: &[VarBound]) -> Option<Vec<Q>> {
    let n = bounds.len();
    // Standard-form columns: each variable becomes lo + z (bounded) or
    // z_plus - z_minus (free).
    let mut cols: Vec<(usize, bool)> = Vec::new();
    for (j, b) in bounds.iter().enumerate() {
        cols.push((j, true));
        if *b == VarBound::Free {
            cols.push((j, false));
        }
    }
    let m = rows.len();
    let k = cols.len();
    // Tableau columns: k structural, m artificial, then the right-hand side.
    let width = k + m + 1;
    let mut tab: Vec<Vec<Q>> = Vec::with_capacity(m + 1);
    for (i, row) in rows.iter().enumerate() {
        let mut rhs = row[n].clone();
        for (j, b) in bounds.iter().enumerate() {
            if let VarBound::AtLeast(lo) = b {
                rhs -= &row[j] * lo;
            }
        }
        let sign = if rhs.is_negative() { -Q::one() } else { Q::one() };
        let mut t = vec![Q::zero(); width];
        for (c, &(j, plus)) in cols.iter().enumerate() {
            let v = &row[j] * &sign;
            t[c] = if plus { v } else { -v };
        }
        t[k + i] = Q::one();
        t[width - 1] = rhs * &sign;
        tab.push(t);
    }
    // Objective row: minimize the sum of artificials, written in reduced form.
    let mut obj = vec![Q::zero(); width];
    for t in &tab {
        for c in 0..width {
            if c < k || c == width - 1 {
                obj[c] -= &t[c];
            }
        }
    }
    tab.push(obj);
    let mut basis: Vec<usize> = (k..k + m).collect();
    loop {
        let last = tab.len() - 1;
        let Some(enter) = (0..k + m).find(|&c| tab[last][c].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..m {
            if tab[i][enter].is_positive() {
                let ratio = &tab[i][width - 1] / &tab[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((row, _)) = leave else {
            // Unbounded direction; the phase-one objective is bounded below,
            // so this cannot happen for a consistent tableau.
            break;
        };
        let inv = Q::one() / &tab[row][enter];
        for v in tab[row].iter_mut() {
            *v *= &inv;
        }
        let pivot = tab[row].clone();
        for (i, t) in tab.iter_mut().enumerate() {
            if i != row && !t[enter].is_zero() {
                let f = t[enter].clone();
                for c in 0..width {
                    if !pivot[c].is_zero() {
                        t[c] -= &f * &pivot[c];
                    }
                }
            }
        }
        basis[row] = enter;
    }
    if !tab[m][width - 1].is_zero() {
        return None;
    }
    let mut z = vec![Q::zero(); k];
    for (i, &b) in basis.iter().enumerate() {
        if b < k {
            z[b] = tab[i][width - 1].clone();
        }
    }
    let mut x: Vec<Q> = bounds
        .iter()
        .map(|b| match b {
            VarBound::Free => Q::zero(),
            VarBound::AtLeast(lo) => lo.clone(),
        })
        .collect();
    for (c, &(j, plus)) in cols.iter().enumerate() {
        if plus {
            x[j] += &z[c];
        } else {
            x[j] -= &z[c];
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q_frac, q_int};

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&v| q_int(v)).collect()).collect()
    }

    #[test]
    fn integer_rank_agrees_with_rational_elimination() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let (rows, cols) = (rng.gen_range(1..8), rng.gen_range(1..8));
            // Low-rank products and sparse entries exercise skipped columns.
            let inner = rng.gen_range(1..4);
            let left: Vec<Vec<i64>> = (0..rows).map(|_| (0..inner).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            let right: Vec<Vec<i64>> = (0..inner).map(|_| (0..cols).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            let m: Vec<Vec<Q>> = (0..rows)
                .map(|i| {
                    (0..cols)
                        .map(|j| {
                            let zeroed = rng.gen_bool(0.2);
                            let v: i64 = (0..inner).map(|k| left[i][k] * right[k][j]).sum();
                            q_int(if zeroed { 0 } else { v })
                        })
                        .collect()
                })
                .collect();
            assert_eq!(integer_rank(&m, cols), Some(rref(m.clone(), cols).rank()));
        }
        assert_eq!(integer_rank(&[vec![q_frac(1, 2)]], 1), None);
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&mat(&[&[1, 2], &[2, 4]]), 2), 1);
        assert_eq!(rank(&mat(&[&[0, 0], &[0, 0]]), 2), 0);
        assert_eq!(rank(&mat(&[&[0, 1, 2], &[1, 0, 3], &[1, 1, 5]]), 3), 2);
    }

    #[test]
    fn solves() {
        // x + y = 3, x - y = 1/2
        let s = solve_augmented(
            vec![
                vec![q_int(1), q_int(1), q_int(3)],
                vec![q_int(1), q_int(-1), q_frac(1, 2)],
            ],
            2,
        );
        assert_eq!(s, LinearSolution::Unique(vec![q_frac(7, 4), q_frac(5, 4)]));
        let s = solve_augmented(mat(&[&[1, 1, 1], &[2, 2, 3]]), 2);
        assert_eq!(s, LinearSolution::Inconsistent);
        match solve_augmented(mat(&[&[1, 1, 1]]), 2) {
            LinearSolution::Family { dimension, .. } => assert_eq!(dimension, 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn feasibility() {
        // x + y = 1 with x, y >= 1 is infeasible; with y free it is feasible.
        let rows = vec![vec![q_int(1), q_int(1), q_int(1)]];
        let one = VarBound::AtLeast(q_int(1));
        assert!(find_feasible(&rows, &[one.clone(), one.clone()]).is_none());
        let x = find_feasible(&rows, &[one.clone(), VarBound::Free]).unwrap();
        assert_eq!(&x[0] + &x[1], q_int(1));
        assert!(x[0] >= q_int(1));
        // a - b = 0, a - 2c = 0 with a, b, c >= 1/2.
        let rows = mat(&[&[1, -1, 0, 0], &[1, 0, -2, 0]]);
        let half = VarBound::AtLeast(q_frac(1, 2));
        let x = find_feasible(&rows, &[half.clone(), half.clone(), half]).unwrap();
        assert_eq!(x[0], x[1]);
        assert_eq!(x[0], &x[2] * q_int(2));
        assert!(x[2] >= q_frac(1, 2));
    }
}
