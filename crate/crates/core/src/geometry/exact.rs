//! Exact rational linear algebra: solving square systems, ranks, and
//! feasibility of `A x = b, x >= 0` by phase-one simplex with Bland's rule.

use num_traits::{One, Signed, Zero};

use super::Rat;

/// Unique solution of the square system `a x = b`, or `None` when singular.
pub fn solve_square(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let n = a.len();
    debug_assert!(a.iter().all(|r| r.len() == n) && b.len() == n);
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        b.swap(col, p);
        let inv = a[col][col].recip();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            let (lo, hi) = a.split_at_mut(r);
            let (pivot, target) = (&lo[col], &mut hi[0]);
            for (t, p) in target[col..n].iter_mut().zip(&pivot[col..n]) {
                *t -= &factor * p;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    let mut x = vec![Rat::zero(); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..n {
            acc -= &a[r][c] * &x[c];
        }
        x[r] = acc / &a[r][r];
    }
    Some(x)
}

/// Rank of a rational matrix given as rows.
pub fn rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for i in r + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = &rows[i][col] * &inv;
            let (lo, hi) = rows.split_at_mut(i);
            let (pivot, target) = (&lo[r], &mut hi[0]);
            for (t, p) in target[col..ncols].iter_mut().zip(&pivot[col..ncols]) {
                *t -= &factor * p;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Whether some `x >= 0` satisfies `a x = b` (rows of `a` are equations).
pub fn nonnegative_feasible(a: &[Vec<Rat>], b: &[Rat]) -> bool {
    let rows = a.len();
    if rows == 0 {
        return true;
    }
    let vars = a[0].len();
    let width = vars + rows + 1;
    // Tableau [A | I | b] with b >= 0; artificial variables start basic.
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(rows);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        let flip = rhs.is_negative();
        let mut r: Vec<Rat> = row.iter().map(|v| if flip { -v } else { v.clone() }).collect();
        r.extend((0..rows).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
        r.push(if flip { -rhs } else { rhs.clone() });
        t.push(r);
    }
    let mut basis: Vec<usize> = (vars..vars + rows).collect();
    loop {
        let is_art = |v: usize| v >= vars;
        // Reduced gain of each original column against the sum of basic artificials.
        let entering = (0..vars).filter(|j| !basis.contains(j)).find(|&j| {
            let gain: Rat = (0..rows).filter(|&i| is_art(basis[i])).map(|i| t[i][j].clone()).sum();
            gain.is_positive()
        });
        let Some(j) = entering else {
            break;
        };
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..rows {
            if !t[i][j].is_positive() {
                continue;
            }
            let ratio = &t[i][width - 1] / &t[i][j];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // The gain is a sum of column entries, so a positive gain has a positive entry.
        let (pi, _) = leave.expect("positive gain implies a bounded ratio test");
        let inv = t[pi][j].recip();
        for v in t[pi].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = t[pi].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == pi || row[j].is_zero() {
                continue;
            }
            let factor = row[j].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v -= &factor * p;
            }
        }
        basis[pi] = j;
    }
    (0..rows).filter(|&i| basis[i] >= vars).all(|i| t[i][width - 1].is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rat {
        Rat::from_integer(v.into())
    }

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|row| row.iter().map(|&v| r(v)).collect()).collect()
    }

    #[test]
    fn solves_small_system() {
        let x = solve_square(m(&[&[2, 1], &[1, 3]]), vec![r(3), r(5)]).unwrap();
        assert_eq!(x, vec![Rat::new(4.into(), 5.into()), Rat::new(7.into(), 5.into())]);
        assert!(solve_square(m(&[&[1, 2], &[2, 4]]), vec![r(1), r(2)]).is_none());
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(m(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]])), 2);
        assert_eq!(rank(m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(Vec::new()), 0);
    }

    #[test]
    fn feasibility() {
        // x + y = 1, x - y = 0  -> (1/2, 1/2)
        assert!(nonnegative_feasible(&m(&[&[1, 1], &[1, -1]]), &[r(1), r(0)]));
        // x + y = -1 has no nonnegative solution
        assert!(!nonnegative_feasible(&m(&[&[1, 1]]), &[r(-1)]));
        // x - y = 2, x + y = 1 -> x = 3/2, y = -1/2
        assert!(!nonnegative_feasible(&m(&[&[1, -1], &[1, 1]]), &[r(2), r(1)]));
        // redundant equations
        assert!(nonnegative_feasible(&m(&[&[1, 1, 1], &[2, 2, 2]]), &[r(1), r(2)]));
    }
}
