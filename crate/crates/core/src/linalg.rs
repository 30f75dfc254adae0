//! Exact Gaussian elimination over the rationals (internal helper).

use num_traits::Zero;

use crate::Rat;

/// Row rank of a rational matrix; consumes and destroys the rows.
pub(crate) fn rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = (rank..nrows).find(|&i| !rows[i][col].is_zero());
        let Some(pivot) = pivot else { continue };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].clone();
        for i in 0..nrows {
            if i == rank || rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone() / inv.clone();
            for j in col..ncols {
                let delta = factor.clone() * rows[rank][j].clone();
                rows[i][j] = rows[i][j].clone() - delta;
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}
