use crate::error::{Error, Result};
use crate::matroids::alternating_circuits;

/// Generalized number of sign changes: the most alternations over all
/// `±` completions of the zero entries.
pub fn sigma(v: &[i8]) -> usize {
    // best[0] ends in +, best[1] ends in -; None if that ending is impossible.
    let mut best: [Option<usize>; 2] = [None, None];
    for (k, &x) in v.iter().enumerate() {
        let mut next = [None, None];
        for (s, slot) in next.iter_mut().enumerate() {
            let want = if s == 0 { 1 } else { -1 };
            if x != 0 && x != want {
                continue;
            }
            *slot = if k == 0 {
                Some(0)
            } else {
                let stay = best[s];
                let flip = best[1 - s].map(|c| c + 1);
                stay.max(flip)
            };
        }
        best = next;
    }
    best.into_iter().flatten().max().unwrap_or(0)
}

fn sign_orthogonal(x: &[i8], y: &[i8]) -> bool {
    let (mut pos, mut neg) = (false, false);
    for (a, b) in x.iter().zip(y) {
        match a * b {
            1 => pos = true,
            -1 => neg = true,
            _ => {}
        }
    }
    pos == neg
}

/// Whether `v` is orthogonal to every circuit of the alternating oriented
/// matroid of rank `r` on `v.len()` points. Rank `0` has every singleton
/// as a circuit and rank `n` has none.
pub fn is_alt_covector(v: &[i8], r: usize) -> Result<bool> {
    if v.iter().any(|x| !(-1..=1).contains(x)) {
        return Err(Error::InvalidParameter("sign entries must be -1, 0 or 1".into()));
    }
    match r {
        _ if r > v.len() => return Err(Error::InvalidParameter(format!("rank {r} exceeds {}", v.len()))),
        0 => return Ok(v.iter().all(|&x| x == 0)),
        _ if r == v.len() => return Ok(true),
        _ => {}
    }
    let family = alternating_circuits(v.len(), r)?;
    Ok(family.entries.iter().all(|c| sign_orthogonal(c, v)))
}
