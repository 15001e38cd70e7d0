use crate::field_poly::Field;

/// Solves `A x = b` exactly. `rows` holds the augmented matrix `[A | b]`.
/// Free variables are set to zero. Returns `None` when the system is
/// inconsistent.
///
/// Elimination is fraction-free (Bareiss): every division is exact, so
/// integer input stays integral and entries are bounded by minors of `A`.
pub fn solve_augmented<F: Field>(mut rows: Vec<Vec<F>>, unknowns: usize) -> Option<Vec<F>> {
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut prev = F::one();
    let mut row = 0;
    for col in 0..unknowns {
        if row == rows.len() {
            break;
        }
        let Some(p) = (row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(row, p);
        let (top, rest) = rows.split_at_mut(row + 1);
        let pivot_row = &top[row];
        let pivot = pivot_row[col].clone();
        for r in rest.iter_mut() {
            let lead = std::mem::replace(&mut r[col], F::zero());
            for c in col + 1..=unknowns {
                let cross = pivot.mul(&r[c]).sub(&lead.mul(&pivot_row[c]));
                r[c] = cross.div(&prev).unwrap();
            }
        }
        prev = pivot;
        pivots.push((row, col));
        row += 1;
    }
    if rows[row..].iter().any(|r| !r[unknowns].is_zero()) {
        return None;
    }
    let mut x = vec![F::zero(); unknowns];
    for &(r, c) in pivots.iter().rev() {
        let mut acc = rows[r][unknowns].clone();
        for &(_, c2) in pivots.iter().filter(|&&(r2, _)| r2 > r) {
            acc = acc.sub(&rows[r][c2].mul(&x[c2]));
        }
        x[c] = acc.div(&rows[r][c]).unwrap();
    }
    Some(x)
}
