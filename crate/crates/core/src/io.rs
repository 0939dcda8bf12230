//! Text formats for matrices, matroids and F-matroids.
//!
//! Blank lines and `#` comments are ignored. Element indices in matroid
//! files are one-based.

use crate::error::{Error, Result};
use crate::fmatroids::FMatroid;
use crate::linalg::{TractMatrix, TractVector};
use crate::matroids::{catalog, elements, Matroid};
use crate::tracts::{TractElement, TractId};

/// Non-empty lines with their one-based line numbers.
fn lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

fn at(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { message, .. } => Error::Parse { line, message },
        other => Error::Parse {
            line,
            message: other.to_string(),
        },
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses a matrix: tract tag, `m n`, then `m` rows of `n` literals.
pub fn parse_matrix(text: &str) -> Result<TractMatrix> {
    parse_matrix_with(text, None)
}

/// As [`parse_matrix`], reading the literals in `tract` instead of the header's tract.
pub fn parse_matrix_with(text: &str, tract: Option<&TractId>) -> Result<TractMatrix> {
    let ls = lines(text);
    let mut it = ls.iter();
    let &(l0, tag) = it.next().ok_or_else(|| parse_err(1, "empty matrix file"))?;
    let header: TractId = tag.parse().map_err(|e| at(l0, e))?;
    let t = tract.cloned().unwrap_or(header);
    let &(l1, dims) = it.next().ok_or_else(|| parse_err(l0 + 1, "missing `m n` line"))?;
    let dims: Vec<usize> = dims
        .split_whitespace()
        .map(|x| x.parse().map_err(|_| parse_err(l1, format!("bad dimension `{x}`"))))
        .collect::<Result<_>>()?;
    let [m, n] = dims[..] else {
        return Err(parse_err(l1, "expected `m n`"));
    };
    let mut rows = Vec::with_capacity(m);
    for &(l, row) in it.by_ref().take(m) {
        let parsed: Vec<TractElement> = row
            .split_whitespace()
            .map(|x| t.parse_element(x).map_err(|e| at(l, e)))
            .collect::<Result<_>>()?;
        if parsed.len() != n {
            return Err(parse_err(l, format!("expected {n} entries, found {}", parsed.len())));
        }
        rows.push(parsed);
    }
    if rows.len() != m {
        return Err(parse_err(
            ls.last().map_or(1, |x| x.0),
            format!("expected {m} rows, found {}", rows.len()),
        ));
    }
    if let Some(&(l, _)) = it.next() {
        return Err(parse_err(l, "trailing content after the matrix"));
    }
    TractMatrix::new(t, rows).map_err(|e| at(l1, e))
}

fn parse_indices(line: usize, s: &str, n: usize) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|x| match x.parse::<usize>() {
            Ok(i) if (1..=n).contains(&i) => Ok(i - 1),
            _ => Err(parse_err(line, format!("bad element `{x}` for ground set 1..{n}"))),
        })
        .collect()
}

fn parse_matroid_lines(ls: &[(usize, &str)]) -> Result<Matroid> {
    let &(l0, head) = ls.first().ok_or_else(|| parse_err(1, "empty matroid"))?;
    let Ok(n) = head.parse::<usize>() else {
        if ls.len() > 1 {
            return Err(parse_err(ls[1].0, "a catalog name stands alone"));
        }
        return catalog(head).map_err(|e| at(l0, e));
    };
    let mut circuits = Vec::new();
    for &(l, s) in &ls[1..] {
        circuits.push(parse_indices(l, s, n)?);
    }
    Matroid::from_circuit_lists(n, &circuits).map_err(|e| at(l0, e))
}

/// Parses a matroid: `n` then one circuit per line, or a catalog name.
pub fn parse_matroid(text: &str) -> Result<Matroid> {
    parse_matroid_lines(&lines(text))
}

pub fn format_matroid(m: &Matroid) -> String {
    m.to_string()
}

/// Parses an F-matroid: tract tag, matroid block, then
/// `circuit <indices> : <elements>` and `cocircuit ...` lines.
pub fn parse_fmatroid(text: &str) -> Result<FMatroid> {
    let ls = lines(text);
    let &(l0, tag) = ls.first().ok_or_else(|| parse_err(1, "empty F-matroid file"))?;
    let t: TractId = tag.parse().map_err(|e| at(l0, e))?;
    let split = ls
        .iter()
        .position(|(_, s)| s.starts_with("circuit") || s.starts_with("cocircuit"))
        .unwrap_or(ls.len());
    let m = parse_matroid_lines(&ls[1..split])?;
    let n = m.n();
    let (mut circuits, mut cocircuits) = (Vec::new(), Vec::new());
    for &(l, s) in &ls[split..] {
        let (kind, rest) = s.split_once(char::is_whitespace).unwrap_or((s, ""));
        let (idx, vals) = rest
            .split_once(':')
            .ok_or_else(|| parse_err(l, "expected `<indices> : <elements>`"))?;
        let idx = parse_indices(l, idx, n)?;
        let vals: Vec<TractElement> = vals
            .split_whitespace()
            .map(|x| t.parse_element(x).map_err(|e| at(l, e)))
            .collect::<Result<_>>()?;
        if idx.len() != vals.len() {
            return Err(parse_err(
                l,
                format!("{} indices but {} elements", idx.len(), vals.len()),
            ));
        }
        let mut entries = vec![t.zero(); n];
        for (i, v) in idx.into_iter().zip(vals) {
            entries[i] = v;
        }
        let v = TractVector::new(t.clone(), entries).map_err(|e| at(l, e))?;
        match kind {
            "circuit" => circuits.push(v),
            "cocircuit" => cocircuits.push(v),
            other => return Err(parse_err(l, format!("unknown signature kind `{other}`"))),
        }
    }
    FMatroid::new(t, m, circuits, cocircuits).map_err(|e| at(l0, e))
}

pub fn format_fmatroid(f: &FMatroid) -> String {
    let t = f.tract();
    let mut out = format!("{t}\n{}", f.underlying());
    let mut emit = |kind: &str, v: &TractVector| {
        let s = v.support_mask();
        let idx: Vec<String> = elements(s).iter().map(|i| (i + 1).to_string()).collect();
        let vals: Vec<String> = elements(s).iter().map(|&i| t.format_element(v.get(i))).collect();
        out.push_str(&format!("{kind} {} : {}\n", idx.join(" "), vals.join(" ")));
    };
    for v in f.circuit_signatures() {
        emit("circuit", v);
    }
    for v in f.cocircuit_signatures() {
        emit("cocircuit", v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fmatroids::from_field_matrix;
    use crate::golden;

    #[test]
    fn matrices_round_trip() {
        for a in [
            golden::sign_example(),
            golden::phase_example(),
            golden::fano_tropical(),
            golden::gaussian_example(),
        ] {
            assert_eq!(parse_matrix(&a.to_string()).unwrap(), a);
        }
        let q = parse_matrix("quotient:7:{1,2,4}\n1 2\n3 5\n").unwrap();
        assert_eq!(q.tract(), &TractId::quotient(7, &[1, 2, 4]).unwrap());
    }

    #[test]
    fn matrix_errors_carry_lines() {
        let e = parse_matrix("sign\n2 2\n+ -\n+ x\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }), "{e}");
        let e = parse_matrix("sign\n2 2\n+ -\n").unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
        let e = parse_matrix("nonsense\n1 1\n0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = parse_matrix("# header\nkrasner\n1 2\n1 1 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }));
    }

    #[test]
    fn override_tract() {
        let a = parse_matrix_with("krasner\n1 2\n1 -1\n", Some(&TractId::Sign)).unwrap();
        assert_eq!(a.tract(), &TractId::Sign);
    }

    #[test]
    fn matroids_round_trip() {
        let f = parse_matroid("fano").unwrap();
        assert_eq!(parse_matroid(&format_matroid(&f)).unwrap(), f);
        assert_eq!(parse_matroid("u:2:4").unwrap().rank(), 2);
        let m = parse_matroid("3\n1 2\n").unwrap();
        assert_eq!(m.circuits(), &[0b011]);
        assert!(matches!(parse_matroid("3\n1 4\n"), Err(Error::Parse { line: 2, .. })));
        assert!(parse_matroid("3\n1 2\n2 3\n").is_err());
    }

    #[test]
    fn fmatroids_round_trip() {
        let m = from_field_matrix(&TractMatrix::parse_rows(&TractId::FiniteField(3), &["1 0 1", "0 1 2"]).unwrap())
            .unwrap();
        let text = format_fmatroid(&m);
        assert_eq!(parse_fmatroid(&text).unwrap(), m);
        let s = "sign\nu:1:2\ncircuit 1 2 : + -\ncocircuit 1 2 : + +\n";
        let f = parse_fmatroid(s).unwrap();
        assert!(f.is_valid());
        assert!(matches!(
            parse_fmatroid("sign\nu:1:2\ncircuit 1 2 : +\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }
}
