//! Matroids on `[n]` stored by their circuits, with subsets as bitmasks.

mod enumerate;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{guard, Error, Result};
use crate::linalg::{field, TractMatrix};

pub use enumerate::{enumerate_matroids, enumerate_matroids_guarded, MatroidStream};

/// Largest ground set supported by the bitmask representation.
pub const MAX_GROUND: usize = 24;

/// Bit `i` set means element `i` (zero-based) belongs to the subset.
pub type Subset = u32;

pub fn full(n: usize) -> Subset {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Elements of a subset in increasing order.
pub fn elements(s: Subset) -> Vec<usize> {
    (0..32).filter(|i| s >> i & 1 == 1).collect()
}

pub fn subset_of(items: &[usize]) -> Subset {
    items.iter().fold(0, |m, &i| m | 1 << i)
}

fn is_sub(a: Subset, b: Subset) -> bool {
    a & !b == 0
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matroid {
    n: usize,
    /// Sorted by (size, mask).
    circuits: Vec<Subset>,
}

fn sort_circuits(c: &mut Vec<Subset>) {
    c.sort_by_key(|&s| (s.count_ones(), s));
    c.dedup();
}

/// Clutter and circuit-elimination check for an arbitrary family.
pub fn check_axioms(n: usize, circuits: &[Subset]) -> bool {
    if n > MAX_GROUND || circuits.iter().any(|&c| c == 0 || !is_sub(c, full(n))) {
        return false;
    }
    for (i, &a) in circuits.iter().enumerate() {
        for &b in &circuits[i + 1..] {
            if a == b || is_sub(a, b) || is_sub(b, a) {
                return false;
            }
        }
    }
    for &a in circuits {
        for &b in circuits {
            if a == b {
                continue;
            }
            let union = a | b;
            for e in elements(a & b) {
                let target = union & !(1 << e);
                if !circuits.iter().any(|&c| is_sub(c, target)) {
                    return false;
                }
            }
        }
    }
    true
}

impl Matroid {
    /// Builds a matroid after verifying the circuit axioms.
    pub fn new(n: usize, circuits: Vec<Subset>) -> Result<Matroid> {
        if !check_axioms(n, &circuits) {
            return Err(Error::InvalidParameter(
                "circuit family violates the matroid axioms".into(),
            ));
        }
        Ok(Matroid::new_unchecked(n, circuits))
    }

    /// Builds a matroid without checking the axioms.
    pub fn new_unchecked(n: usize, mut circuits: Vec<Subset>) -> Matroid {
        sort_circuits(&mut circuits);
        Matroid { n, circuits }
    }

    /// Circuits given as lists of zero-based elements.
    pub fn from_circuit_lists(n: usize, circuits: &[Vec<usize>]) -> Result<Matroid> {
        if circuits.iter().flatten().any(|&i| i >= n) {
            return Err(Error::InvalidParameter(format!("circuit element outside [{n}]")));
        }
        Matroid::new(n, circuits.iter().map(|c| subset_of(c)).collect())
    }

    /// Matroid whose rank function is the given table indexed by subset masks.
    pub fn from_rank_table(n: usize, rank: &[u8]) -> Matroid {
        let mut circuits = Vec::new();
        for s in 1..rank.len() as Subset {
            let size = s.count_ones() as u8;
            if rank[s as usize] < size && elements(s).iter().all(|&e| rank[(s & !(1 << e)) as usize] == size - 1) {
                circuits.push(s);
            }
        }
        Matroid::new_unchecked(n, circuits)
    }

    pub fn check_axioms(&self) -> bool {
        check_axioms(self.n, &self.circuits)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn circuits(&self) -> &[Subset] {
        &self.circuits
    }

    pub fn circuit_lists(&self) -> Vec<Vec<usize>> {
        self.circuits.iter().map(|&c| elements(c)).collect()
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        !self.circuits.iter().any(|&c| is_sub(c, s))
    }

    /// Rank of `s` by greedy augmentation.
    pub fn rank_of(&self, s: Subset) -> usize {
        let mut basis: Subset = 0;
        for e in elements(s) {
            if self.is_independent(basis | 1 << e) {
                basis |= 1 << e;
            }
        }
        basis.count_ones() as usize
    }

    pub fn rank(&self) -> usize {
        self.rank_of(full(self.n))
    }

    /// Rank of every subset, indexed by mask.
    pub fn rank_table(&self) -> Vec<u8> {
        let size = 1usize << self.n;
        let circuits: BTreeSet<Subset> = self.circuits.iter().copied().collect();
        let mut indep = vec![true; size];
        let mut rank = vec![0u8; size];
        for s in 1..size {
            let sm = s as Subset;
            let mut best = 0u8;
            let mut all_indep = !circuits.contains(&sm);
            for e in elements(sm) {
                let t = (sm & !(1 << e)) as usize;
                all_indep &= indep[t];
                best = best.max(rank[t]);
            }
            indep[s] = all_indep;
            rank[s] = if all_indep { sm.count_ones() as u8 } else { best };
        }
        rank
    }

    pub fn bases(&self) -> Vec<Subset> {
        let r = self.rank();
        (0..=full(self.n))
            .filter(|s| s.count_ones() as usize == r && self.is_independent(*s))
            .collect()
    }

    pub fn closure(&self, s: Subset) -> Subset {
        let r = self.rank_of(s);
        (0..self.n).fold(s, |acc, e| {
            if s >> e & 1 == 0 && self.rank_of(s | 1 << e) == r {
                acc | 1 << e
            } else {
                acc
            }
        })
    }

    pub fn is_flat(&self, s: Subset) -> bool {
        self.closure(s) == s
    }

    /// All flats, in increasing mask order.
    pub fn flats(&self) -> Vec<Subset> {
        flats_from_table(self.n, &self.rank_table())
    }

    pub fn dual(&self) -> Matroid {
        let rank = self.rank_table();
        let all = full(self.n);
        let r = rank[all as usize];
        // Cocircuits are the minimal sets whose complement has lower rank.
        let mut cocircuits = Vec::new();
        for s in 1..=all {
            if rank[(all & !s) as usize] < r
                && elements(s)
                    .iter()
                    .all(|&e| rank[(all & !(s & !(1 << e))) as usize] == r)
            {
                cocircuits.push(s);
            }
        }
        Matroid::new_unchecked(self.n, cocircuits)
    }

    pub fn cocircuits(&self) -> Vec<Subset> {
        self.dual().circuits
    }

    /// Whether `s` is the support of a covector: its complement is a flat.
    pub fn is_covector_support(&self, s: Subset) -> bool {
        self.is_flat(full(self.n) & !s)
    }

    /// Whether `s` is a union of cocircuits.
    pub fn is_union_of_cocircuits(&self, s: Subset) -> bool {
        let covered = self
            .cocircuits()
            .into_iter()
            .filter(|&c| is_sub(c, s))
            .fold(0, |a, c| a | c);
        covered == s
    }

    /// Fast equivalent of [`Matroid::is_covector_support`]: no circuit meets `s` in one element.
    pub fn meets_no_circuit_once(&self, s: Subset) -> bool {
        self.circuits.iter().all(|&c| (c & s).count_ones() != 1)
    }

    /// Relabels element `i` as `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Matroid {
        let circuits = self
            .circuits
            .iter()
            .map(|&c| elements(c).iter().fold(0, |m, &i| m | 1 << perm[i]))
            .collect();
        Matroid::new_unchecked(self.n, circuits)
    }
}

pub(crate) fn flats_from_table(n: usize, rank: &[u8]) -> Vec<Subset> {
    (0..=full(n))
        .filter(|&s| (0..n).all(|e| s >> e & 1 == 1 || rank[(s | 1 << e) as usize] > rank[s as usize]))
        .collect()
}

impl fmt::Display for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for c in &self.circuits {
            let items: Vec<String> = elements(*c).iter().map(|i| (i + 1).to_string()).collect();
            writeln!(f, "{}", items.join(" "))?;
        }
        Ok(())
    }
}

/// The uniform matroid `U_{r,n}`.
pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
    if r > n || n > MAX_GROUND {
        return Err(Error::InvalidParameter(format!("no uniform matroid U({r},{n})")));
    }
    let circuits = (0..=full(n)).filter(|s| s.count_ones() as usize == r + 1).collect();
    Ok(Matroid::new_unchecked(n, circuits))
}

/// Columns of the standard 3x7 binary representation of the Fano plane.
pub const FANO_COLUMNS: [[u8; 3]; 7] = [
    [1, 0, 0],
    [0, 1, 0],
    [0, 0, 1],
    [1, 1, 0],
    [1, 0, 1],
    [0, 1, 1],
    [1, 1, 1],
];

pub fn fano_matrix() -> TractMatrix {
    let t = crate::tracts::TractId::FiniteField(2);
    TractMatrix::new(
        t,
        (0..3)
            .map(|i| {
                FANO_COLUMNS
                    .iter()
                    .map(|c| crate::tracts::TractElement::Finite(c[i]))
                    .collect()
            })
            .collect(),
    )
    .expect("static matrix")
}

pub fn fano() -> Matroid {
    linear_matroid(&fano_matrix()).expect("binary matrix")
}

/// Looks up `fano`, `free:n`, or `u:r:n`.
pub fn catalog(name: &str) -> Result<Matroid> {
    let parts: Vec<&str> = name.trim().split(':').collect();
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::InvalidParameter(format!("bad catalog name `{name}`")))
    };
    match parts.as_slice() {
        ["fano"] => Ok(fano()),
        ["u" | "uniform", r, n] => uniform(num(r)?, num(n)?),
        ["free", n] => uniform(num(n)?, num(n)?),
        _ => Err(Error::InvalidParameter(format!("unknown matroid `{name}`"))),
    }
}

/// Column matroid of a matrix over a field tract.
pub fn linear_matroid(a: &TractMatrix) -> Result<Matroid> {
    linear_matroid_guarded(a, crate::config::Guards::default().field_columns)
}

pub fn linear_matroid_guarded(a: &TractMatrix, limit: usize) -> Result<Matroid> {
    let n = a.ncols();
    guard("field columns", limit, n)?;
    if !a.tract().is_field() {
        return Err(Error::UnsupportedTract {
            tract: a.tract().to_string(),
            operation: "linear matroid",
        });
    }
    let size = 1usize << n;
    let mut dependent = vec![false; size];
    let mut circuits = Vec::new();
    for s in 1..size as Subset {
        let items = elements(s);
        if items.iter().any(|&e| dependent[(s & !(1 << e)) as usize]) {
            dependent[s as usize] = true;
            continue;
        }
        if field::column_subset_rank(a, &items)? < items.len() {
            dependent[s as usize] = true;
            circuits.push(s);
        }
    }
    Ok(Matroid::new_unchecked(n, circuits))
}

/// Sign vectors on `[n]`, such as the circuits of an oriented matroid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedSubsetFamily {
    pub n: usize,
    pub entries: Vec<Vec<i8>>,
}

impl SignedSubsetFamily {
    pub fn supports(&self) -> Vec<Subset> {
        self.entries
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .fold(0, |m, (i, _)| m | 1 << i)
            })
            .collect()
    }
}

/// Circuits of the alternating oriented matroid of rank `r` on `[n]`: each
/// `(r+1)`-subset with signs alternating along the ground order, starting at `+`.
pub fn alternating_circuits(n: usize, r: usize) -> Result<SignedSubsetFamily> {
    if r == 0 || r >= n || n > MAX_GROUND {
        return Err(Error::InvalidParameter(format!("need 0 < r < n, got r={r}, n={n}")));
    }
    let mut entries = Vec::new();
    for s in (0..=full(n)).filter(|s| s.count_ones() as usize == r + 1) {
        let mut v = vec![0i8; n];
        for (k, i) in elements(s).into_iter().enumerate() {
            v[i] = if k % 2 == 0 { 1 } else { -1 };
        }
        entries.push(v);
    }
    Ok(SignedSubsetFamily { n, entries })
}
