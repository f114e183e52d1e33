//! Exact rational simplex for small linear programs.
//!
//! Solves `maximize c.x subject to A.x <= b, x >= 0` with `b >= 0`, so
//! the slack basis is feasible from the start and no phase-one is
//! needed. Bland's rule picks pivots, which rules out cycling; with
//! exact rational arithmetic the optimum is exact.

use num::traits::Zero;

use crate::rat::{rat_int, Rat};

/// `maximize c.x subject to rows (a, b): a.x <= b, x >= 0`.
///
/// Every right-hand side must be non-negative. Returns the optimal
/// value and an optimal point, or `None` when the objective is
/// unbounded above.
pub(crate) fn maximize(objective: &[Rat], rows: &[(Vec<Rat>, Rat)]) -> Option<(Rat, Vec<Rat>)> {
    let n = objective.len();
    let m = rows.len();
    debug_assert!(rows.iter().all(|(a, b)| a.len() == n && *b >= rat_int(0)));

    // Tableau: m constraint rows over n variable + m slack columns plus
    // a right-hand side, and a cost row kept reduced throughout.
    let width = n + m + 1;
    let mut tab: Vec<Vec<Rat>> = Vec::with_capacity(m + 1);
    for (i, (a, b)) in rows.iter().enumerate() {
        let mut row = vec![rat_int(0); width];
        row[..n].clone_from_slice(a);
        row[n + i] = rat_int(1);
        row[width - 1] = b.clone();
        tab.push(row);
    }
    let mut cost = vec![rat_int(0); width];
    for (j, c) in objective.iter().enumerate() {
        cost[j] = -c.clone();
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        // Bland: entering column is the lowest index with negative cost.
        let Some(pivot_col) = (0..n + m).find(|&j| cost[j] < rat_int(0)) else {
            break;
        };
        // Ratio test; ties resolved toward the smallest basis variable.
        let mut pivot_row: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for r in 0..m {
            if tab[r][pivot_col] > rat_int(0) {
                let ratio = &tab[r][width - 1] / &tab[r][pivot_col];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && basis[r] < basis[pivot_row.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    pivot_row = Some(r);
                }
            }
        }
        let pivot_row = pivot_row?; // no positive entry: unbounded

        let scale = tab[pivot_row][pivot_col].clone();
        for v in tab[pivot_row].iter_mut() {
            *v = &*v / &scale;
        }
        for r in 0..m {
            if r != pivot_row && !tab[r][pivot_col].is_zero() {
                let factor = tab[r][pivot_col].clone();
                for j in 0..width {
                    let delta = &factor * &tab[pivot_row][j];
                    tab[r][j] = &tab[r][j] - &delta;
                }
            }
        }
        if !cost[pivot_col].is_zero() {
            let factor = cost[pivot_col].clone();
            for j in 0..width {
                let delta = &factor * &tab[pivot_row][j];
                cost[j] = &cost[j] - &delta;
            }
        }
        basis[pivot_row] = pivot_col;
    }

    let mut point = vec![rat_int(0); n];
    for (r, &var) in basis.iter().enumerate() {
        if var < n {
            point[var] = tab[r][width - 1].clone();
        }
    }
    let value = objective
        .iter()
        .zip(&point)
        .fold(rat_int(0), |acc, (c, x)| acc + c * x);
    Some((value, point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn simple_bounded_program() {
        // maximize x + y with x <= 2, y <= 3, x + y <= 4.
        let objective = vec![rat_int(1), rat_int(1)];
        let rows = vec![
            (vec![rat_int(1), rat_int(0)], rat_int(2)),
            (vec![rat_int(0), rat_int(1)], rat_int(3)),
            (vec![rat_int(1), rat_int(1)], rat_int(4)),
        ];
        let (value, point) = maximize(&objective, &rows).unwrap();
        assert_eq!(value, rat_int(4));
        assert_eq!(&point[0] + &point[1], rat_int(4));
    }

    #[test]
    fn fractional_optimum_is_exact() {
        // maximize 3x + 2y with 2x + y <= 3, x + 3y <= 4.
        let objective = vec![rat_int(3), rat_int(2)];
        let rows = vec![
            (vec![rat_int(2), rat_int(1)], rat_int(3)),
            (vec![rat_int(1), rat_int(3)], rat_int(4)),
        ];
        let (value, point) = maximize(&objective, &rows).unwrap();
        assert_eq!(point, vec![rat_int(1), rat_int(1)]);
        assert_eq!(value, rat_int(5));
    }

    #[test]
    fn unbounded_is_reported() {
        let objective = vec![rat_int(1)];
        let rows = vec![(vec![rat_int(-1)], rat_int(1))];
        assert!(maximize(&objective, &rows).is_none());
    }

    #[test]
    fn degenerate_ties_terminate() {
        // Degenerate vertex at the origin: several rows bind at once.
        let objective = vec![rat_int(1), rat(1, 2)];
        let rows = vec![
            (vec![rat_int(1), rat_int(-1)], rat_int(0)),
            (vec![rat_int(1), rat_int(1)], rat_int(0)),
            (vec![rat_int(1), rat_int(0)], rat_int(1)),
        ];
        let (value, _) = maximize(&objective, &rows).unwrap();
        assert_eq!(value, rat_int(0));
    }

    #[test]
    fn zero_variable_program() {
        let (value, point) = maximize(&[], &[]).unwrap();
        assert_eq!(value, rat_int(0));
        assert!(point.is_empty());
    }
}
