use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::Direction;
use crate::lp::{LinearProgram, Relation};

/// Null test for phases: is there `c_i >= 1` with `Σ c_i d_i = 0`?
///
/// Substituting `c_i = 1 + y_i` gives a feasibility problem in `y >= 0`.
pub(crate) fn phase_null_lp(dirs: &[&Direction]) -> bool {
    if dirs.is_empty() {
        return true;
    }
    let k = dirs.len();
    let mut lp = LinearProgram::new(k);
    let xs: Vec<BigRational> = dirs.iter().map(|d| BigRational::from_integer(d.x().clone())).collect();
    let ys: Vec<BigRational> = dirs.iter().map(|d| BigRational::from_integer(d.y().clone())).collect();
    let sx: BigRational = xs.iter().sum();
    let sy: BigRational = ys.iter().sum();
    lp.add(xs, Relation::Eq, -sx);
    lp.add(ys, Relation::Eq, -sy);
    lp.is_feasible()
}

fn cross(a: &Direction, b: &Direction) -> BigInt {
    a.x() * b.y() - a.y() * b.x()
}

/// Geometric characterization of phase nullity: the distinct directions
/// are empty, form a single antipodal pair, or fit in no closed half-plane
/// through the origin.
pub fn phase_null_geometric(dirs: &[&Direction]) -> bool {
    let mut distinct: Vec<&Direction> = dirs.to_vec();
    distinct.sort();
    distinct.dedup();
    match distinct.len() {
        0 => return true,
        1 => return false,
        2 => {
            let (a, b) = (distinct[0], distinct[1]);
            return a.x() == &-b.x() && a.y() == &-b.y();
        }
        _ => {}
    }
    // A closed half-plane containing all directions can be rotated until
    // its boundary passes through one of them.
    let contained = distinct.iter().any(|d| {
        distinct.iter().all(|e| !cross(d, e).is_negative()) || distinct.iter().all(|e| !cross(d, e).is_positive())
    });
    if !contained {
        return true;
    }
    // Directions on a common line: null iff both orientations occur.
    let on_line = distinct.iter().all(|e| cross(distinct[0], e).is_zero());
    on_line && distinct.len() == 2
}
