use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::golden;
use crate::ranks::r_col;
use crate::tracts::{HomKind, TractHom};

fn mat(t: TractId, rows: &[&str]) -> TractMatrix {
    TractMatrix::parse_rows(&t, rows).unwrap()
}

fn random_pattern(rng: &mut ChaCha8Rng, m: usize, n: usize, t: usize) -> TractMatrix {
    let rows = (0..m)
        .map(|_| {
            let k = rng.gen_range(t..=n);
            let mut row = vec![false; n];
            let mut placed = 0;
            while placed < k {
                let j = rng.gen_range(0..n);
                if !row[j] {
                    row[j] = true;
                    placed += 1;
                }
            }
            row.into_iter().map(TractElement::Krasner).collect()
        })
        .collect();
    TractMatrix::new(TractId::Krasner, rows).unwrap()
}

fn random_sign_rows(rng: &mut ChaCha8Rng, m: usize, n: usize, k: usize) -> TractMatrix {
    let mut rows = Vec::new();
    while rows.len() < m {
        let v: Vec<i8> = (0..n).map(|_| rng.gen_range(-1..=1)).collect();
        if sigma(&v) < k {
            rows.push(v.into_iter().map(TractElement::Sign).collect());
        }
    }
    TractMatrix::new(TractId::Sign, rows).unwrap()
}

#[test]
fn zero_pattern_examples() {
    let ones = mat(TractId::Krasner, &["1 1 1", "1 1 1"]);
    let r = realize_zero_pattern(&ones, 3).unwrap();
    assert!(r.verified);
    assert_eq!(r.actual_rank, 1);
    let id = mat(TractId::Krasner, &["1 0 0", "0 1 0", "0 0 1"]);
    let r = realize_zero_pattern(&id, 1).unwrap();
    assert!(r.verified);
    assert_eq!((r.claimed_rank_bound, r.actual_rank), (3, 3));
    assert_eq!(
        r.matrix
            .map(&TractHom::new(HomKind::RationalToKrasner).unwrap())
            .unwrap(),
        id
    );
    assert!(matches!(realize_zero_pattern(&id, 2), Err(Error::Precondition(_))));
    assert!(realize_zero_pattern(&id, 0).is_err());
    let with_zero = mat(TractId::Krasner, &["1 1 0", "0 0 0"]);
    let r = realize_zero_pattern(&with_zero, 2).unwrap();
    assert!(r.verified);
    assert_eq!(r.actual_rank, 1);
}

#[test]
fn zero_pattern_bound_is_attained() {
    // A full row plus staggered rows with t nonzeros forces rank n - t + 1.
    let a = mat(TractId::Krasner, &["1 1 1 1 1", "1 1 1 0 0", "0 1 1 1 0", "0 0 1 1 1"]);
    let r = realize_zero_pattern(&a, 3).unwrap();
    assert!(r.verified);
    assert_eq!(r.actual_rank, 3);
    assert_eq!(r_col(&a).unwrap().rank, 3);
}

#[test]
fn zero_patterns_at_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..30 {
        let n = rng.gen_range(1..=7);
        let t = rng.gen_range(1..=n);
        let m = rng.gen_range(1..=7);
        let a = random_pattern(&mut rng, m, n, t);
        let r = realize_zero_pattern(&a, t).unwrap();
        assert!(r.verified, "{a}");
        assert!(r.actual_rank <= n - t + 1);
    }
}

#[test]
fn sign_pattern_examples() {
    let a = mat(TractId::Sign, &["+ 0 -"]);
    let r = realize_sign_pattern(&a, 2).unwrap();
    assert!(r.verified);
    assert_eq!(r.matrix, mat(TractId::Rational, &["1 0 -1"]));
    let b = mat(TractId::Sign, &["+ 0 +"]);
    let r = realize_sign_pattern(&b, 3).unwrap();
    assert!(r.verified);
    // Roots at x_2 and at the midpoint of x_1 and x_2.
    assert_eq!(r.matrix, mat(TractId::Rational, &["1/2 0 3/2"]));
    assert!(matches!(realize_sign_pattern(&b, 2), Err(Error::Precondition(_))));
    let zero = mat(TractId::Sign, &["0 0", "+ -"]);
    assert!(realize_sign_pattern(&zero, 2).unwrap().verified);
    // Rows with at most k sign changes and no zeros: rank at most k + 1.
    let full = mat(TractId::Sign, &["+ + - -", "- + + +", "+ - - +"]);
    let r = realize_sign_pattern(&full, 3).unwrap();
    assert!(r.verified && r.actual_rank <= 3);
}

#[test]
fn sign_constructions_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..20 {
        let a = random_sign_rows(&mut rng, 4, 5, 3);
        let p = realize_sign_pattern(&a, 3).unwrap();
        let q = realize_sign_low_rank_via_alt(&a, 3).unwrap();
        assert!(p.verified && q.verified, "{a}");
        assert!(p.actual_rank <= 3 && q.actual_rank <= 3);
        let h = TractHom::new(HomKind::RationalToSign).unwrap();
        assert_eq!(p.matrix.map(&h).unwrap(), q.matrix.map(&h).unwrap());
    }
    let a = mat(TractId::Sign, &["+ - +"]);
    assert!(matches!(
        realize_sign_low_rank_via_alt(&a, 2),
        Err(Error::Precondition(_))
    ));
}

fn vandermonde(rows: usize, n: usize) -> TractMatrix {
    let grid = (0..rows)
        .map(|d| {
            (0..n)
                .map(|j| TractElement::Rational(num_traits::pow(point(j), d)))
                .collect()
        })
        .collect();
    TractMatrix::new(TractId::Rational, grid).unwrap()
}

#[test]
fn epic_lift_examples() {
    // Rows that are cocircuit supports need no combination.
    let b = mat(TractId::Rational, &["1 0 1", "0 1 1"]);
    let p = mat(TractId::Krasner, &["1 0 1", "0 1 1", "1 1 0"]);
    let r = epic_lift(&p, &b, 0).unwrap();
    assert!(r.verified);
    assert_eq!(r.actual_rank, 2);
    let binary = TractMatrix::new(
        TractId::Rational,
        golden::binary_witness()
            .iter()
            .map(|row| row.iter().map(|&x| TractElement::Rational(int(x as i64))).collect())
            .collect(),
    )
    .unwrap();
    let r = epic_lift(&golden::binary_pattern(), &binary, 0).unwrap();
    assert!(r.verified);
    assert_eq!(r.actual_rank, 3);
    let bad = mat(TractId::Krasner, &["1 0 0"]);
    assert!(matches!(epic_lift(&bad, &b, 0), Err(Error::Precondition(_))));
}

#[test]
fn epic_lift_matches_vandermonde_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..15 {
        let n = rng.gen_range(2..=6);
        let t = rng.gen_range(1..=n);
        let a = random_pattern(&mut rng, 4, n, t);
        let v = vandermonde(n - t + 1, n);
        let e = epic_lift(&a, &v, 9).unwrap();
        let z = realize_zero_pattern(&a, t).unwrap();
        assert!(e.verified && z.verified);
        assert!(e.actual_rank <= n - t + 1 && z.actual_rank <= n - t + 1);
    }
}

#[test]
fn epic_lift_survives_row_permutation() {
    let a = golden::deaett();
    let v = vandermonde(5, 7);
    let rows: Vec<Vec<TractElement>> = a.grid().iter().rev().cloned().collect();
    let reversed = TractMatrix::new(TractId::Krasner, rows).unwrap();
    assert!(epic_lift(&a, &v, 3).unwrap().verified);
    assert!(epic_lift(&reversed, &v, 3).unwrap().verified);
}
