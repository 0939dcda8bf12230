//! Worked examples with known answers, and a runner that checks them.

use serde::{Deserialize, Serialize};

use crate::config::Guards;
use crate::error::Result;
use crate::fmatroids::{from_field_matrix, pushforward, FMatroid};
use crate::linalg::{find_dependence, TractMatrix, TractVector};
use crate::matroids::{subset_of, Matroid};
use crate::ranks::{
    r_col, r_det, r_mat_krasner, r_mat_sign, r_mat_tropical, r_phi_mat, r_preimage, r_row, r_tri, rows_are_covectors,
    sigma, sign_circuit_options, solve_homogeneous, Mode, RankValue,
};
use crate::realize::{realize_sign_pattern, realize_zero_pattern};
use crate::tracts::{HomKind, TractHom, TractId};

fn parse(t: TractId, rows: &[&str]) -> TractMatrix {
    TractMatrix::parse_rows(&t, rows).expect("embedded example parses")
}

fn bits(t: TractId, rows: &[&str]) -> TractMatrix {
    let spaced: Vec<String> = rows
        .iter()
        .map(|r| r.chars().map(String::from).collect::<Vec<_>>().join(" "))
        .collect();
    let refs: Vec<&str> = spaced.iter().map(String::as_str).collect();
    parse(t, &refs)
}

/// Sign matrix with column rank 2, row rank 3 and matroidal rank 3.
pub fn sign_example() -> TractMatrix {
    parse(TractId::Sign, &["+ - + +", "+ + - +", "+ + + -"])
}

/// Regular partial field matrix whose column rank exceeds its row rank.
pub fn regular_example() -> TractMatrix {
    parse(TractId::RegularPartialField, &["1 -1 -1 -1", "1 0 1 -1", "1 1 1 1"])
}

/// Phase matrix with independent rows and matroidal rank 2.
pub fn phase_example() -> TractMatrix {
    parse(TractId::Phase, &["1,0 1,1 1,0 0", "2,1 1,4 1,0 1,0", "2,1 1,5 1,0 1,0"])
}

/// Gaussian rational matrix whose row space carries the phase witness.
pub fn gaussian_example() -> TractMatrix {
    parse(TractId::GaussianRational, &["1 1+i 1 0", "1+i 4i 0 1"])
}

/// Deaett's 8 x 7 zero/nonzero pattern.
pub fn deaett() -> TractMatrix {
    bits(
        TractId::Krasner,
        &[
            "1010101", "1001011", "1100110", "1111000", "1111001", "0100110", "0010101", "0001011",
        ],
    )
}

/// Krasner matrix whose unique binary lift has rank 4.
pub fn binary_pattern() -> TractMatrix {
    bits(TractId::Krasner, &["1000", "0101", "0011", "0111"])
}

/// Rank 3 binary matrix whose push-forward has every row of [`binary_pattern`] as a covector.
pub fn binary_witness() -> Vec<Vec<u8>> {
    vec![vec![1, 0, 0, 0], vec![0, 1, 0, 1], vec![0, 0, 1, 1]]
}

const FANO_ROWS: [&str; 7] = [
    "1110000", "1001001", "1000110", "0101010", "0100101", "0011100", "0010011",
];

/// Tropical matrix with entry `-1` on each line of the Fano plane and `0` elsewhere.
pub fn fano_tropical() -> TractMatrix {
    let rows: Vec<String> = FANO_ROWS
        .iter()
        .map(|r| {
            r.chars()
                .map(|c| if c == '1' { "-1" } else { "0" })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    let refs: Vec<&str> = rows.iter().map(String::as_str).collect();
    parse(TractId::Tropical, &refs)
}

/// The Fano matroid whose lines are the row supports of [`fano_tropical`].
pub fn fano_lines() -> Matroid {
    let lines: Vec<u32> = FANO_ROWS
        .iter()
        .map(|r| {
            subset_of(
                &r.char_indices()
                    .filter(|(_, c)| *c == '1')
                    .map(|(i, _)| i)
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let mut circuits = lines.clone();
    for s in 0u32..1 << 7 {
        if s.count_ones() == 4 && lines.iter().all(|l| l & !s != 0) {
            circuits.push(s);
        }
    }
    Matroid::new(7, circuits).expect("Fano plane")
}

/// Regular partial field system with only the trivial solution.
pub fn homogeneous_system() -> TractMatrix {
    regular_example()
}

/// One check of the golden suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenCheck {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

fn check(out: &mut Vec<GoldenCheck>, name: &str, expected: impl ToString, computed: Result<String>) {
    let expected = expected.to_string();
    let (computed, pass) = match computed {
        Ok(c) => {
            let pass = c == expected;
            (c, pass)
        }
        Err(e) => (format!("error: {e}"), false),
    };
    out.push(GoldenCheck {
        name: name.into(),
        expected,
        computed,
        pass,
    });
}

fn sign_rank_two_signatures() -> Result<String> {
    let opts = sign_circuit_options(&sign_example(), &crate::matroids::uniform(2, 4)?);
    let mut sigs = Vec::new();
    for o in opts {
        match o.as_slice() {
            [only] => sigs.push(only.to_string()),
            _ => return Ok(format!("{} options", o.len())),
        }
    }
    sigs.sort();
    Ok(sigs.join(" "))
}

fn sign_rank_two_blocked() -> Result<String> {
    // With the forced circuit signatures no cocircuit signature is orthogonal to all of them.
    let a = sign_example();
    let u = crate::matroids::uniform(2, 4)?;
    let circuits: Vec<TractVector> = sign_circuit_options(&a, &u).into_iter().flatten().collect();
    let blocked = u.cocircuits().into_iter().any(|d| {
        let items = crate::matroids::elements(d);
        (0..1u32 << (items.len() - 1)).all(|b| {
            let mut v = vec![crate::TractElement::Sign(0); 4];
            for (k, &i) in items.iter().enumerate() {
                v[i] = crate::TractElement::Sign(if k > 0 && b >> (k - 1) & 1 == 1 { -1 } else { 1 });
            }
            let y = TractVector::new(TractId::Sign, v).expect("sign vector");
            circuits
                .iter()
                .any(|x| !crate::linalg::orthogonal(x, &y).unwrap_or(false))
        })
    });
    Ok(if blocked {
        "no cocircuit signatures"
    } else {
        "cocircuit signatures exist"
    }
    .into())
}

fn phase_upper_witness() -> Result<String> {
    let m = from_field_matrix(&gaussian_example())?;
    let p = pushforward(&TractHom::new(HomKind::GaussianRationalToPhase)?, &m)?;
    Ok(format!(
        "rank {} covectors {}",
        p.rank(),
        rows_are_covectors(&phase_example(), &p)?
    ))
}

fn phase_covector_gain() -> Result<String> {
    let m = from_field_matrix(&gaussian_example())?;
    let p = pushforward(&TractHom::new(HomKind::GaussianRationalToPhase)?, &m)?;
    let x = TractVector::parse(&TractId::GaussianRational, &["2+i", "1+4i", "1", "1"])?;
    let y = x.map(&TractHom::new(HomKind::GaussianRationalToPhase)?)?;
    Ok(format!(
        "upstairs {} downstairs {}",
        m.is_covector(&x)?,
        p.is_covector(&y)?
    ))
}

fn fano_covectors() -> Result<String> {
    let f = FMatroid::tautological(&TractId::Tropical, &fano_lines())?;
    Ok(format!(
        "rank {} covectors {}",
        f.rank(),
        rows_are_covectors(&fano_tropical(), &f)?
    ))
}

fn fano_columns(which: &[usize]) -> Result<String> {
    let cols = fano_tropical().column_vectors();
    let picked: Vec<TractVector> = which.iter().map(|&j| cols[j].clone()).collect();
    Ok(if find_dependence(&picked)?.is_none() {
        "independent"
    } else {
        "dependent"
    }
    .into())
}

fn deaett_zero_pattern() -> Result<String> {
    let r = realize_zero_pattern(&deaett(), 3)?;
    let status = if r.verified { "verified" } else { "not verified" };
    Ok(format!("rank <= {} {status}", r.claimed_rank_bound))
}

fn sign_changes(a: &TractMatrix) -> Result<String> {
    let sig = a
        .row_vectors()
        .iter()
        .map(|r| crate::ranks::sign_entries(r).map(|v| sigma(&v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(format!("{sig:?}"))
}

fn value(v: RankValue) -> String {
    v.to_string()
}

/// Runs every embedded example.
pub fn run_golden(guards: &Guards) -> Vec<GoldenCheck> {
    let mut out = Vec::new();
    let s = sign_example();
    check(
        &mut out,
        "sign example: column rank",
        2,
        r_col(&s).map(|c| c.rank.to_string()),
    );
    check(
        &mut out,
        "sign example: row rank",
        3,
        r_row(&s).map(|c| c.rank.to_string()),
    );
    check(
        &mut out,
        "sign example: matroidal rank",
        3,
        r_mat_sign(&s, guards).map(|(r, _)| r.to_string()),
    );
    check(
        &mut out,
        "sign example: forced rank 2 circuit signatures",
        "(+, -, -, 0) (+, -, 0, -) (+, 0, -, -) (0, +, +, +)",
        sign_rank_two_signatures(),
    );
    check(
        &mut out,
        "sign example: rank 2 obstruction",
        "no cocircuit signatures",
        sign_rank_two_blocked(),
    );

    let rp = regular_example();
    check(
        &mut out,
        "regular example: column rank",
        4,
        r_col(&rp).map(|c| c.rank.to_string()),
    );
    check(
        &mut out,
        "regular example: row rank",
        3,
        r_row(&rp).map(|c| c.rank.to_string()),
    );
    check(
        &mut out,
        "regular system: nonzero solutions",
        0,
        solve_homogeneous(&homogeneous_system(), guards).map(|v| v.len().to_string()),
    );

    check(
        &mut out,
        "phase example: rank 2 witness",
        "rank 2 covectors true",
        phase_upper_witness(),
    );
    check(
        &mut out,
        "phase example: covector gain",
        "upstairs false downstairs true",
        phase_covector_gain(),
    );

    let bp = binary_pattern();
    let to_k = TractHom::new(HomKind::FqToKrasner(2));
    check(
        &mut out,
        "binary pattern: lift minimum over GF(2)",
        4,
        to_k.as_ref()
            .map_err(Clone::clone)
            .and_then(|h| r_preimage(h, &bp, guards, 0))
            .map(|p| value(p.value)),
    );
    check(
        &mut out,
        "binary pattern: phi-matroidal rank",
        format!("3 {:?}", binary_witness()),
        to_k.as_ref()
            .map_err(Clone::clone)
            .and_then(|h| r_phi_mat(h, &bp, guards))
            .map(|p| format!("{} {:?}", p.rank, p.witness)),
    );
    check(
        &mut out,
        "binary pattern: lift minimum over the rationals",
        3,
        TractHom::new(HomKind::RationalToKrasner)
            .and_then(|h| r_preimage(&h, &bp, guards, 0))
            .map(|p| value(p.value)),
    );

    check(
        &mut out,
        "Fano tropical: rows are covectors",
        "rank 3 covectors true",
        fano_covectors(),
    );
    // The first three columns form a line of the plane; a non-collinear triple is independent.
    check(
        &mut out,
        "Fano tropical: columns 1 2 3",
        "dependent",
        fano_columns(&[0, 1, 2]),
    );
    check(
        &mut out,
        "Fano tropical: columns 1 2 4",
        "independent",
        fano_columns(&[0, 1, 3]),
    );
    check(
        &mut out,
        "Fano tropical: matroidal rank bounds",
        3,
        r_mat_tropical(&fano_tropical(), guards).map(|m| value(m.value)),
    );

    let x = deaett();
    check(
        &mut out,
        "Deaett: triangular rank",
        4,
        r_tri(&x).map(|t| t.rank.to_string()),
    );
    check(
        &mut out,
        "Deaett: column rank",
        4,
        r_col(&x).map(|c| c.rank.to_string()),
    );
    check(&mut out, "Deaett: row rank", 4, r_row(&x).map(|c| c.rank.to_string()));
    check(
        &mut out,
        "Deaett: determinantal rank at most 4",
        true,
        r_det(&x, guards).map(|d| (d.rank <= 4).to_string()),
    );
    check(
        &mut out,
        "Deaett transpose: matroidal rank bounds",
        4,
        r_mat_krasner(&x.transpose(), Mode::Bounds, guards).map(|m| value(m.value)),
    );

    check(
        &mut out,
        "zero pattern construction on Deaett",
        "rank <= 5 verified",
        deaett_zero_pattern(),
    );
    check(
        &mut out,
        "sign pattern construction on the sign example",
        true,
        realize_sign_pattern(&s, 3).map(|r| (r.verified && r.actual_rank <= 3).to_string()),
    );
    check(
        &mut out,
        "sign example: generalized sign changes",
        "[2, 2, 1]",
        sign_changes(&s),
    );
    out
}
