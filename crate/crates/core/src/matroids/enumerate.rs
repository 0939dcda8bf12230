use std::collections::HashSet;

use crate::config::Guards;
use crate::error::{guard, Error, Result};

use super::{flats_from_table, Matroid};

/// Hard limit from the 128-bit flat sets used while extending.
const HARD_LIMIT: usize = 8;

/// Every labelled matroid on `[n]` of rank at most `r_max`, each exactly once.
///
/// Matroids on `[k+1]` are generated from those on `[k]` as single-element
/// extensions, one for each modular cut of flats.
pub fn enumerate_matroids(n: usize, r_max: usize) -> Result<MatroidStream> {
    enumerate_matroids_guarded(n, r_max, Guards::default().enumerate)
}

pub fn enumerate_matroids_guarded(n: usize, r_max: usize, limit: usize) -> Result<MatroidStream> {
    guard("enumerate", limit, n)?;
    if n > HARD_LIMIT {
        return Err(Error::Guard {
            guard: "enumerate",
            limit: HARD_LIMIT,
            actual: n,
        });
    }
    Ok(MatroidStream {
        n,
        r_max,
        stack: vec![vec![0]],
    })
}

/// Depth-first stream of rank tables; see [`enumerate_matroids`].
pub struct MatroidStream {
    n: usize,
    r_max: usize,
    stack: Vec<Vec<u8>>,
}

impl MatroidStream {
    /// Next matroid as a rank table indexed by subset mask.
    pub fn next_table(&mut self) -> Option<Vec<u8>> {
        while let Some(table) = self.stack.pop() {
            let k = table.len().trailing_zeros() as usize;
            if k == self.n {
                return Some(table);
            }
            let mut children = extensions(k, &table);
            children.retain(|t| t[t.len() - 1] as usize <= self.r_max);
            children.reverse();
            self.stack.extend(children);
        }
        None
    }
}

impl Iterator for MatroidStream {
    type Item = Matroid;

    fn next(&mut self) -> Option<Matroid> {
        let table = self.next_table()?;
        Some(Matroid::from_rank_table(self.n, &table))
    }
}

fn closure(k: usize, rank: &[u8], x: usize) -> usize {
    (0..k).fold(x, |acc, e| {
        if x >> e & 1 == 0 && rank[x | 1 << e] == rank[x] {
            acc | 1 << e
        } else {
            acc
        }
    })
}

/// All single-element extensions of the matroid on `[k]` with rank table `rank`.
fn extensions(k: usize, rank: &[u8]) -> Vec<Vec<u8>> {
    let flats: Vec<usize> = flats_from_table(k, rank).into_iter().map(|f| f as usize).collect();
    let mut index = vec![usize::MAX; rank.len()];
    for (i, &f) in flats.iter().enumerate() {
        index[f] = i;
    }
    let bit = |i: usize| 1u128 << i;
    let up: Vec<u128> = flats
        .iter()
        .map(|&f| {
            flats
                .iter()
                .enumerate()
                .filter(|(_, &g)| g & f == f)
                .fold(0, |a, (j, _)| a | bit(j))
        })
        .collect();
    // Modular partners of each flat together with the meet.
    let mut partners: Vec<Vec<(usize, usize)>> = vec![Vec::new(); flats.len()];
    for (i, &f) in flats.iter().enumerate() {
        for (j, &g) in flats.iter().enumerate().skip(i + 1) {
            let meet = f & g;
            let join = closure(k, rank, f | g);
            if rank[f] + rank[g] == rank[meet] + rank[join] {
                let m = index[meet];
                partners[i].push((j, m));
                partners[j].push((i, m));
            }
        }
    }
    let close = |mut cut: u128, start: usize| -> u128 {
        let mut work = vec![start];
        while let Some(i) = work.pop() {
            if cut & bit(i) != 0 {
                continue;
            }
            cut |= bit(i);
            let mut above = up[i] & !cut;
            while above != 0 {
                work.push(above.trailing_zeros() as usize);
                above &= above - 1;
            }
            for &(j, m) in &partners[i] {
                if cut & bit(j) != 0 && cut & bit(m) == 0 {
                    work.push(m);
                }
            }
        }
        cut
    };
    let mut seen: HashSet<u128> = HashSet::new();
    let mut queue = vec![0u128];
    seen.insert(0);
    let mut head = 0;
    while head < queue.len() {
        let cut = queue[head];
        head += 1;
        for i in 0..flats.len() {
            if cut & bit(i) == 0 {
                let next = close(cut, i);
                if seen.insert(next) {
                    queue.push(next);
                }
            }
        }
    }
    queue.sort_unstable();
    let closures: Vec<usize> = (0..rank.len()).map(|x| index[closure(k, rank, x)]).collect();
    queue
        .into_iter()
        .map(|cut| {
            let mut t = Vec::with_capacity(rank.len() * 2);
            t.extend_from_slice(rank);
            for (x, &r) in rank.iter().enumerate() {
                t.push(if cut & bit(closures[x]) != 0 { r } else { r + 1 });
            }
            t
        })
        .collect()
}
