use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lp::{LinearProgram, Relation, Q};
use crate::tracts::{Elements, TractElement, TractId};

use super::{field, verify_dependence, DependenceCertificate, TractMatrix, TractVector};

/// Searches for a linear dependence among `vectors`.
///
/// Finite tracts are searched exhaustively with the first nonzero
/// coefficient fixed to one. Triangle uses a rational LP, Tropical a
/// spanning-tree search over coefficient differences, and the infinite
/// fields exact elimination. Phase is rejected.
pub fn find_dependence(vectors: &[TractVector]) -> Result<Option<DependenceCertificate>> {
    let Some(first) = vectors.first() else {
        return Ok(None);
    };
    let tract = first.tract().clone();
    for v in vectors {
        if *v.tract() != tract {
            return Err(Error::TractMismatch(tract.to_string(), v.tract().to_string()));
        }
        if v.len() != first.len() {
            return Err(Error::Dimension("vectors of different lengths".into()));
        }
    }
    let found = match &tract {
        TractId::Triangle => triangle(vectors)?,
        TractId::Tropical => tropical(vectors)?,
        TractId::Rational | TractId::GaussianRational => elimination(&tract, vectors)?,
        TractId::Phase => {
            return Err(Error::UnsupportedTract {
                tract: tract.to_string(),
                operation: "dependence search",
            })
        }
        _ => exhaustive(&tract, vectors)?,
    };
    if let Some(cert) = &found {
        if !verify_dependence(vectors, cert)? {
            return Err(Error::Internal(format!(
                "dependence search over {tract} produced an invalid certificate"
            )));
        }
    }
    Ok(found)
}

fn certificate(tract: &TractId, coefficients: Vec<TractElement>) -> DependenceCertificate {
    DependenceCertificate {
        coefficients: TractVector::new_unchecked(tract.clone(), coefficients),
    }
}

fn exhaustive(tract: &TractId, vectors: &[TractVector]) -> Result<Option<DependenceCertificate>> {
    let Elements::Finite(elems) = tract.elements() else {
        return Err(Error::UnsupportedTract {
            tract: tract.to_string(),
            operation: "dependence search",
        });
    };
    let k = vectors.len();
    let one = tract.one();
    // Lexicographic order over tuples: leading zeros sort first, so the
    // position of the first nonzero coefficient runs from the back.
    for lead in (0..k).rev() {
        let tail = (k - lead - 1) as u32;
        let count = elems.len().checked_pow(tail).ok_or(Error::Guard {
            guard: "dependence search space",
            limit: usize::MAX,
            actual: usize::MAX,
        })?;
        for code in 0..count {
            let mut coeffs = vec![tract.zero(); k];
            coeffs[lead] = one.clone();
            let mut rest = code;
            for slot in (lead + 1..k).rev() {
                coeffs[slot] = elems[rest % elems.len()].clone();
                rest /= elems.len();
            }
            let cert = certificate(tract, coeffs);
            if verify_dependence(vectors, &cert)? {
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

fn elimination(tract: &TractId, vectors: &[TractVector]) -> Result<Option<DependenceCertificate>> {
    let n = vectors[0].len();
    if n == 0 {
        return Ok(Some(certificate(tract, {
            let mut c = vec![tract.zero(); vectors.len()];
            c[0] = tract.one();
            c
        })));
    }
    let columns = TractMatrix::new(
        tract.clone(),
        (0..n)
            .map(|i| vectors.iter().map(|v| v.get(i).clone()).collect())
            .collect(),
    )?;
    Ok(field::kernel(&columns)?
        .into_iter()
        .next()
        .map(|v| DependenceCertificate { coefficients: v }))
}

fn triangle(vectors: &[TractVector]) -> Result<Option<DependenceCertificate>> {
    let k = vectors.len();
    let mag = |v: &TractVector, i: usize| match v.get(i) {
        TractElement::Triangle(x) => x.clone(),
        _ => unreachable!("checked by the tract"),
    };
    let mut lp = LinearProgram::new(k);
    lp.add(vec![Q::one(); k], Relation::Eq, Q::one());
    for i in 0..vectors[0].len() {
        let row: Vec<Q> = vectors.iter().map(|v| mag(v, i)).collect();
        for j in 0..k {
            if row[j].is_zero() {
                continue;
            }
            let mut coeffs: Vec<Q> = row.iter().map(|a| -a.clone()).collect();
            coeffs[j] += &row[j] * Q::from_integer(2.into());
            lp.add(coeffs, Relation::Le, Q::zero());
        }
    }
    Ok(lp
        .feasible_point()
        .map(|c| certificate(&TractId::Triangle, c.into_iter().map(TractElement::Triangle).collect())))
}

/// Tropical entries scaled to a common denominator.
struct ScaledTropical {
    /// `a[i][j]`: coordinate `i` of vector `j`.
    a: Vec<Vec<Option<i128>>>,
    denom: BigInt,
}

fn scale_tropical(vectors: &[TractVector]) -> Result<ScaledTropical> {
    let value = |e: &TractElement| match e {
        TractElement::Tropical(x) => x.clone(),
        _ => unreachable!("checked by the tract"),
    };
    let mut denom = BigInt::one();
    for v in vectors {
        for e in v.entries() {
            if let Some(x) = value(e) {
                denom = denom.lcm(x.denom());
            }
        }
    }
    let m = vectors[0].len();
    let mut a = vec![vec![None; vectors.len()]; m];
    for (j, v) in vectors.iter().enumerate() {
        for (i, e) in v.entries().iter().enumerate() {
            if let Some(x) = value(e) {
                let scaled = (x * BigRational::from_integer(denom.clone())).to_integer();
                let small = scaled
                    .to_i64()
                    .ok_or_else(|| Error::InvalidParameter("tropical entry out of range".into()))?;
                a[i][j] = Some(small as i128);
            }
        }
    }
    Ok(ScaledTropical { a, denom })
}

/// Every labelled tree on `s` vertices as an edge list, via Prufer codes.
/// Edge list of a spanning tree on `0..s`.
type Tree = Vec<(usize, usize)>;

fn labelled_trees(s: usize) -> Vec<Tree> {
    if s < 2 {
        return vec![Vec::new()];
    }
    if s == 2 {
        return vec![vec![(0, 1)]];
    }
    let len = s - 2;
    let mut out = Vec::new();
    let mut code = vec![0usize; len];
    loop {
        let mut degree = vec![1usize; s];
        for &c in &code {
            degree[c] += 1;
        }
        let mut edges = Vec::with_capacity(s - 1);
        for &c in &code {
            let leaf = (0..s).find(|&v| degree[v] == 1).unwrap();
            edges.push((leaf, c));
            degree[leaf] -= 1;
            degree[c] -= 1;
        }
        let rest: Vec<usize> = (0..s).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(edges);
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            code[pos] += 1;
            if code[pos] < s {
                break;
            }
            code[pos] = 0;
        }
    }
}

fn tropical_null_rows(a: &[Vec<Option<i128>>], support: &[usize], c: &[i128]) -> bool {
    a.iter().all(|row| {
        let mut best: Option<i128> = None;
        let mut count = 0;
        for (slot, &j) in support.iter().enumerate() {
            if let Some(x) = row[j] {
                let v = x + c[slot];
                match best {
                    Some(b) if v < b => {}
                    Some(b) if v == b => count += 1,
                    _ => {
                        best = Some(v);
                        count = 1;
                    }
                }
            }
        }
        best.is_none() || count >= 2
    })
}

fn tropical(vectors: &[TractVector]) -> Result<Option<DependenceCertificate>> {
    let k = vectors.len();
    if k > 20 {
        return Err(Error::Guard {
            guard: "tropical dependence vectors",
            limit: 20,
            actual: k,
        });
    }
    let scaled = scale_tropical(vectors)?;
    let a = &scaled.a;
    let mut trees_by_size: Vec<Option<Vec<Tree>>> = vec![None; k + 1];
    let mut masks: Vec<u32> = (1..1u32 << k).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        let support: Vec<usize> = (0..k).filter(|j| mask >> j & 1 == 1).collect();
        let s = support.len();
        let trees = trees_by_size[s].get_or_insert_with(|| labelled_trees(s));
        // Differences c_v - c_u = a_iu - a_iv available on each pair.
        let mut diffs = vec![vec![Vec::new(); s]; s];
        for u in 0..s {
            for v in 0..s {
                if u == v {
                    continue;
                }
                let mut d: Vec<i128> = a
                    .iter()
                    .filter_map(|row| Some(row[support[u]]? - row[support[v]]?))
                    .collect();
                d.sort_unstable();
                d.dedup();
                diffs[u][v] = d;
            }
        }
        for tree in trees.iter() {
            if tree.iter().any(|&(u, v)| diffs[u][v].is_empty()) {
                continue;
            }
            let mut choice = vec![0usize; tree.len()];
            loop {
                if let Some(c) = solve_tree(s, tree, &choice, &diffs) {
                    if tropical_null_rows(a, &support, &c) {
                        let mut coeffs = vec![TractElement::Tropical(None); k];
                        for (slot, &j) in support.iter().enumerate() {
                            let val = BigRational::new(BigInt::from(c[slot]), scaled.denom.clone());
                            coeffs[j] = TractElement::Tropical(Some(val));
                        }
                        return Ok(Some(certificate(&TractId::Tropical, coeffs)));
                    }
                }
                let mut pos = tree.len();
                let mut done = true;
                while pos > 0 {
                    pos -= 1;
                    let (u, v) = tree[pos];
                    choice[pos] += 1;
                    if choice[pos] < diffs[u][v].len() {
                        done = false;
                        break;
                    }
                    choice[pos] = 0;
                }
                if done {
                    break;
                }
            }
        }
    }
    Ok(None)
}

/// Coefficients with `c_0 = 0` and the chosen difference along every tree edge.
fn solve_tree(s: usize, tree: &[(usize, usize)], choice: &[usize], diffs: &[Vec<Vec<i128>>]) -> Option<Vec<i128>> {
    let mut c: Vec<Option<i128>> = vec![None; s];
    c[0] = Some(0);
    let mut assigned = 1;
    while assigned < s {
        let before = assigned;
        for (e, &(u, v)) in tree.iter().enumerate() {
            let d = diffs[u][v][choice[e]];
            match (c[u], c[v]) {
                (Some(cu), None) => {
                    c[v] = Some(cu + d);
                    assigned += 1;
                }
                (None, Some(cv)) => {
                    c[u] = Some(cv - d);
                    assigned += 1;
                }
                _ => {}
            }
        }
        if assigned == before {
            return None;
        }
    }
    c.into_iter().collect()
}

#[cfg(test)]
pub(super) fn trees_for_tests(s: usize) -> Vec<Vec<(usize, usize)>> {
    labelled_trees(s)
}
