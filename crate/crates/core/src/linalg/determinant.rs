use crate::config::Guards;
use crate::error::{guard, Error, Result};
use crate::tracts::{FormalSum, TractElement, TractId};

use super::TractMatrix;

/// The formal sum `sum_sigma eps^sgn(sigma) a_{1 sigma(1)} ... a_{n sigma(n)}`,
/// with vanishing products dropped. Limited to the default size guard.
pub fn formal_determinant(a: &TractMatrix) -> Result<FormalSum> {
    formal_determinant_guarded(a, Guards::default().det)
}

pub fn formal_determinant_guarded(a: &TractMatrix, limit: usize) -> Result<FormalSum> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::Dimension(format!("determinant of a {}x{} matrix", n, a.ncols())));
    }
    guard("det", limit, n)?;
    let t = a.tract();
    let mut sum = FormalSum::new(t.clone());
    expand(a, t, 0, 0, t.one(), false, &mut sum)?;
    Ok(sum)
}

fn expand(
    a: &TractMatrix,
    t: &TractId,
    row: usize,
    used: u32,
    product: TractElement,
    odd: bool,
    sum: &mut FormalSum,
) -> Result<()> {
    let n = a.nrows();
    if row == n {
        let term = if odd { t.neg(&product)? } else { product };
        return sum.push(term);
    }
    for col in 0..n {
        if used >> col & 1 == 1 || t.is_zero(a.get(row, col)) {
            continue;
        }
        // Columns already used that are larger than `col` each add an inversion.
        let inversions = (used >> col).count_ones() % 2 == 1;
        let p = t.mul(&product, a.get(row, col))?;
        expand(a, t, row + 1, used | 1 << col, p, odd ^ inversions, sum)?;
    }
    Ok(())
}
