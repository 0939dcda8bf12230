use super::*;
use proptest::prelude::*;

fn sum(t: &TractId, terms: Vec<TractElement>) -> FormalSum {
    FormalSum::from_terms(t.clone(), terms).unwrap()
}

fn null(t: &TractId, terms: Vec<TractElement>) -> bool {
    t.is_null(&sum(t, terms)).unwrap()
}

fn dir(x: i64, y: i64) -> TractElement {
    TractElement::Phase(Direction::from_ints(x, y))
}

fn trop(n: i64) -> TractElement {
    TractElement::Tropical(Some(ratio(n, 1)))
}

fn tri(n: i64) -> TractElement {
    TractElement::Triangle(ratio(n, 1))
}

fn catalog() -> Vec<TractId> {
    vec![
        TractId::Krasner,
        TractId::Sign,
        TractId::Phase,
        TractId::Triangle,
        TractId::Tropical,
        TractId::FiniteField(2),
        TractId::FiniteField(3),
        TractId::FiniteField(4),
        TractId::FiniteField(9),
        TractId::Rational,
        TractId::GaussianRational,
        TractId::RegularPartialField,
        TractId::quotient(7, &[1, 2, 4]).unwrap(),
        TractId::quotient(5, &[1, 4]).unwrap(),
    ]
}

/// A handful of units of each tract, for sampling-based checks.
fn sample_units(t: &TractId) -> Vec<TractElement> {
    use TractElement as E;
    match t {
        TractId::Phase => vec![dir(1, 0), dir(-1, 0), dir(0, 1), dir(1, 1), dir(-1, 2), dir(-3, -1)],
        TractId::Triangle => vec![tri(1), tri(2), tri(3), E::Triangle(ratio(1, 2)), tri(5)],
        TractId::Tropical => vec![trop(0), trop(-1), trop(3), E::Tropical(Some(ratio(1, 2)))],
        TractId::Rational => vec![
            E::Rational(ratio(1, 1)),
            E::Rational(ratio(-1, 1)),
            E::Rational(ratio(2, 3)),
            E::Rational(ratio(-5, 2)),
        ],
        TractId::GaussianRational => vec![
            E::Gaussian(GaussRat::from_ints(1, 0)),
            E::Gaussian(GaussRat::from_ints(-1, 0)),
            E::Gaussian(GaussRat::from_ints(0, 1)),
            E::Gaussian(GaussRat::from_ints(2, -1)),
        ],
        _ => t.units().unwrap(),
    }
}

#[test]
fn multiplication_examples() {
    let s = TractId::Sign;
    assert_eq!(
        s.mul(&TractElement::Sign(-1), &TractElement::Sign(-1)).unwrap(),
        TractElement::Sign(1)
    );
    let t = TractId::Tropical;
    assert_eq!(t.mul(&trop(3), &trop(5)).unwrap(), trop(8));
    let p = TractId::Phase;
    assert_eq!(p.mul(&dir(1, 1), &dir(0, 1)).unwrap(), dir(-1, 1));
    assert_eq!(p.mul(&dir(2, 2), &dir(0, 3)).unwrap(), dir(-1, 1));
    assert_eq!(
        t.mul(&trop(3), &TractElement::Tropical(None)).unwrap(),
        TractElement::Tropical(None)
    );
}

#[test]
fn tag_mismatch_is_an_error() {
    let err = TractId::Sign.mul(&TractElement::Krasner(true), &TractElement::Sign(1));
    assert!(matches!(err, Err(Error::TagMismatch { .. })));
    assert!(TractId::Triangle.check(&TractElement::Triangle(ratio(-1, 1))).is_err());
    assert!(TractId::FiniteField(3).check(&TractElement::Finite(3)).is_err());
}

#[test]
fn negation_examples() {
    assert_eq!(
        TractId::Krasner.neg(&TractElement::Krasner(true)).unwrap(),
        TractElement::Krasner(true)
    );
    assert_eq!(
        TractId::Sign.neg(&TractElement::Sign(1)).unwrap(),
        TractElement::Sign(-1)
    );
    assert_eq!(TractId::Tropical.neg(&trop(4)).unwrap(), trop(4));
    assert_eq!(TractId::Phase.eps(), dir(-1, 0));
    assert_eq!(TractId::Triangle.eps(), tri(1));
    assert_eq!(TractId::FiniteField(3).eps(), TractElement::Finite(2));
}

#[test]
fn sign_null_examples() {
    let s = TractId::Sign;
    assert!(!null(&s, vec![TractElement::Sign(1), TractElement::Sign(1)]));
    assert!(null(
        &s,
        vec![TractElement::Sign(1), TractElement::Sign(-1), TractElement::Sign(-1)]
    ));
}

/// Smallest |Σ x_k e^{iθ_k}| over a grid of angles, first angle fixed at 0.
fn min_modulus_on_grid(mags: &[f64], steps: usize) -> f64 {
    let mut best = f64::INFINITY;
    let rest = mags.len() - 1;
    let mut idx = vec![0usize; rest];
    loop {
        let (mut re, mut im) = (mags[0], 0.0);
        for (k, &i) in idx.iter().enumerate() {
            let th = i as f64 * std::f64::consts::TAU / steps as f64;
            re += mags[k + 1] * th.cos();
            im += mags[k + 1] * th.sin();
        }
        best = best.min((re * re + im * im).sqrt());
        let mut k = 0;
        loop {
            if k == rest {
                return best;
            }
            idx[k] += 1;
            if idx[k] < steps {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn triangle_null_matches_angle_grid_oracle() {
    let t = TractId::Triangle;
    assert!(min_modulus_on_grid(&[3.0, 4.0, 5.0], 720) < 0.1);
    assert!(min_modulus_on_grid(&[1.0, 1.0, 3.0], 720) > 0.9);
    assert!(null(&t, vec![tri(3), tri(4), tri(5)]));
    assert!(!null(&t, vec![tri(1), tri(1), tri(3)]));
    for mags in [[1, 2, 3], [2, 2, 5], [1, 1, 1], [4, 1, 2], [2, 3, 6]] {
        let f: Vec<f64> = mags.iter().map(|&m| m as f64).collect();
        let oracle = min_modulus_on_grid(&f, 720) < 0.1;
        assert_eq!(null(&t, mags.iter().map(|&m| tri(m)).collect()), oracle, "{mags:?}");
    }
}

/// Searches integer multipliers 1..=6 with Σ c_i z_i = 0.
fn phase_multiplier_oracle(dirs: &[(i64, i64)]) -> bool {
    let k = dirs.len();
    let mut c = vec![1i64; k];
    loop {
        let sx: i64 = dirs.iter().zip(&c).map(|(d, c)| d.0 * c).sum();
        let sy: i64 = dirs.iter().zip(&c).map(|(d, c)| d.1 * c).sum();
        if sx == 0 && sy == 0 {
            return true;
        }
        let mut i = 0;
        loop {
            if i == k {
                return false;
            }
            c[i] += 1;
            if c[i] <= 6 {
                break;
            }
            c[i] = 1;
            i += 1;
        }
    }
}

#[test]
fn phase_null_examples() {
    let p = TractId::Phase;
    for (dirs, expected) in [
        (vec![(1, 0), (-1, 0)], true),
        (vec![(1, 0), (0, 1)], false),
        (vec![(1, 0), (-1, 2), (-1, -2)], true),
    ] {
        assert_eq!(phase_multiplier_oracle(&dirs), expected);
        assert_eq!(
            null(&p, dirs.iter().map(|d| dir(d.0, d.1)).collect()),
            expected,
            "{dirs:?}"
        );
    }
}

#[test]
fn phase_lp_agrees_with_half_plane_rule_exhaustively() {
    let pool = [
        (1, 0),
        (0, 1),
        (-1, 0),
        (0, -1),
        (1, 1),
        (-1, -1),
        (2, -1),
        (-1, 2),
        (-2, 1),
    ];
    let p = TractId::Phase;
    for size in 1..=4usize {
        let mut idx = vec![0usize; size];
        loop {
            if idx.windows(2).all(|w| w[0] <= w[1]) {
                let terms: Vec<TractElement> = idx.iter().map(|&i| dir(pool[i].0, pool[i].1)).collect();
                let dirs: Vec<&Direction> = terms
                    .iter()
                    .map(|t| match t {
                        TractElement::Phase(Some(d)) => d,
                        _ => unreachable!(),
                    })
                    .collect();
                let geometric = phase_null_geometric(&dirs);
                assert_eq!(null(&p, terms.clone()), geometric, "{idx:?}");
            }
            let mut k = 0;
            while k < size {
                idx[k] += 1;
                if idx[k] < pool.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == size {
                break;
            }
        }
    }
}

/// Does some choice of Laurent polynomials with the given top degrees sum
/// to zero? Leading coefficients range over ±1, ±2 and lower coefficients
/// over -2..=2 on exponents down to `low`.
fn laurent_oracle(degrees: &[i64], low: i64) -> bool {
    const LEAD: [i64; 4] = [-2, -1, 1, 2];
    const LOWER: [i64; 5] = [-2, -1, 0, 1, 2];
    // One slot per (polynomial, exponent); the first slot of each is its lead.
    let mut slots: Vec<(i64, bool)> = Vec::new();
    for &d in degrees {
        slots.push((d, true));
        for e in (low..d).rev() {
            slots.push((e, false));
        }
    }
    let mut digits = vec![0usize; slots.len()];
    loop {
        let mut acc = std::collections::BTreeMap::<i64, i64>::new();
        for ((e, lead), &dgt) in slots.iter().zip(&digits) {
            *acc.entry(*e).or_default() += if *lead { LEAD[dgt] } else { LOWER[dgt] };
        }
        if acc.values().all(|&c| c == 0) {
            return true;
        }
        let mut k = 0;
        loop {
            if k == slots.len() {
                return false;
            }
            digits[k] += 1;
            let limit = if slots[k].1 { LEAD.len() } else { LOWER.len() };
            if digits[k] < limit {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn tropical_null_examples_match_laurent_oracle() {
    let t = TractId::Tropical;
    assert!(laurent_oracle(&[0, 0, -1], -1));
    assert!(!laurent_oracle(&[0, -1], -1));
    assert!(null(&t, vec![trop(0), trop(0), trop(-1)]));
    assert!(!null(&t, vec![trop(0), trop(-1)]));
    assert!(null(&t, vec![trop(2), trop(2)]));
    assert!(!null(&t, vec![trop(2), trop(1), trop(1)]));
}

#[test]
fn hom_examples() {
    let sign = TractHom::new(HomKind::RationalToSign).unwrap();
    assert_eq!(
        sign.apply(&TractElement::Rational(ratio(-7, 2))).unwrap(),
        TractElement::Sign(-1)
    );
    let phase = TractHom::new(HomKind::GaussianRationalToPhase).unwrap();
    assert_eq!(
        phase.apply(&TractElement::Gaussian(GaussRat::from_ints(2, 1))).unwrap(),
        dir(2, 1)
    );
    let deg = TractHom::new(HomKind::LaurentDegreeToTropical).unwrap();
    let p = LaurentPoly::new([(3, ratio(1, 1)), (1, ratio(2, 1))]);
    assert_eq!(deg.apply_laurent(&p).unwrap(), trop(3));
    assert_eq!(
        deg.apply_laurent(&LaurentPoly::zero()).unwrap(),
        TractElement::Tropical(None)
    );
    assert!(deg.apply(&trop(1)).is_err());
    assert!(sign.apply(&TractElement::Sign(1)).is_err());
}

#[test]
fn laurent_degree_is_a_valuation() {
    let deg = TractHom::new(HomKind::LaurentDegreeToTropical).unwrap();
    let t = TractId::Tropical;
    let polys = [
        LaurentPoly::new([(3, ratio(1, 1)), (1, ratio(2, 1))]),
        LaurentPoly::new([(-1, ratio(1, 2))]),
        LaurentPoly::new([(2, ratio(-3, 1)), (0, ratio(1, 1)), (-2, ratio(5, 1))]),
    ];
    for a in &polys {
        for b in &polys {
            let va = deg.apply_laurent(a).unwrap();
            let vb = deg.apply_laurent(b).unwrap();
            assert_eq!(deg.apply_laurent(&a.mul(b)).unwrap(), t.mul(&va, &vb).unwrap());
            // a + b + (-(a+b)) = 0 must map to a null sum.
            let c = a.add(b).scale(&ratio(-1, 1));
            let image = vec![va.clone(), vb.clone(), deg.apply_laurent(&c).unwrap()];
            assert!(null(&t, image));
        }
    }
}

#[test]
fn elements_of_finite_tracts() {
    use TractElement as E;
    assert_eq!(
        TractId::Sign.elements(),
        Elements::Finite(vec![E::Sign(0), E::Sign(1), E::Sign(-1)])
    );
    assert_eq!(
        TractId::Krasner.elements(),
        Elements::Finite(vec![E::Krasner(false), E::Krasner(true)])
    );
    assert_eq!(TractId::Tropical.elements(), Elements::Infinite);
    let q = TractId::quotient(7, &[1, 2, 4]).unwrap();
    assert_eq!(
        q.elements(),
        Elements::Finite(vec![E::Quotient(0), E::Quotient(1), E::Quotient(3)])
    );
    assert_eq!(TractId::FiniteField(5).units().unwrap().len(), 4);
}

#[test]
fn quotient_requires_a_subgroup() {
    assert!(TractId::quotient(7, &[1, 2]).is_err());
    assert!(TractId::quotient(7, &[2, 4]).is_err());
    assert!(TractId::quotient(6, &[1]).is_err());
    assert!(TractId::quotient(9, &[1, 2]).is_ok());
}

#[test]
fn tract_axioms_for_every_catalog_tract() {
    for t in catalog() {
        // T1
        assert!(t.is_null(&FormalSum::new(t.clone())).unwrap(), "{t}");
        // T2: among the sampled units, only ε completes 1 to a null sum.
        let eps = t.eps();
        for x in sample_units(&t) {
            assert_eq!(null(&t, vec![t.one(), x.clone()]), x == eps, "{t}: {x:?}");
        }
        // T3 on every sum of up to three sampled units.
        let units = sample_units(&t);
        for a in &units {
            for b in &units {
                for c in &units {
                    let s = sum(&t, vec![a.clone(), b.clone(), c.clone()]);
                    let base = t.is_null(&s).unwrap();
                    for u in &units {
                        assert_eq!(t.is_null(&s.scale(u).unwrap()).unwrap(), base, "{t}");
                    }
                }
            }
        }
    }
}

#[test]
fn finite_tracts_have_unique_eps() {
    for t in catalog() {
        if let Some(units) = t.units() {
            let eps: Vec<_> = units.iter().filter(|x| null(&t, vec![t.one(), (*x).clone()])).collect();
            assert_eq!(eps, vec![&t.eps()], "{t}");
        }
    }
}

#[test]
fn quotient_by_full_group_is_krasner() {
    for q in [3u8, 4, 5, 7] {
        let full: Vec<u8> = (1..q).collect();
        let t = TractId::quotient(q, &full).unwrap();
        let one = TractElement::Quotient(1);
        for k in 0..=4 {
            assert_eq!(null(&t, vec![one.clone(); k]), k != 1, "q={q} k={k}");
        }
    }
}

#[test]
fn quotient_null_matches_exhaustive_multipliers() {
    let t = TractId::quotient(7, &[1, 2, 4]).unwrap();
    let f = gf::gf(7).unwrap();
    let h = [1u8, 2, 4];
    let reps = [1u8, 3];
    for k in 1..=4usize {
        for mask in 0..(1 << k) {
            let xs: Vec<u8> = (0..k).map(|i| reps[(mask >> i) & 1]).collect();
            let mut brute = false;
            for choice in 0..3usize.pow(k as u32) {
                let mut c = choice;
                let mut s = 0;
                for x in &xs {
                    s = f.add(s, f.mul(h[c % 3], *x));
                    c /= 3;
                }
                brute |= s == 0;
            }
            let terms = xs.iter().map(|&x| TractElement::Quotient(x)).collect();
            assert_eq!(null(&t, terms), brute, "{xs:?}");
        }
    }
}

#[test]
fn homs_preserve_null_sums() {
    let homs = [
        TractHom::new(HomKind::FqToKrasner(3)).unwrap(),
        TractHom::new(HomKind::RationalToKrasner).unwrap(),
        TractHom::new(HomKind::RationalToSign).unwrap(),
        TractHom::new(HomKind::RationalToTriangleAbs).unwrap(),
        TractHom::new(HomKind::GaussianRationalToPhase).unwrap(),
        TractHom::new(HomKind::QuotientMap {
            q: 7,
            subgroup: vec![1, 2, 4],
        })
        .unwrap(),
    ];
    for h in &homs {
        let src = h.source().unwrap().clone();
        let units = sample_units(&src);
        for a in &units {
            for b in &units {
                // a + b + (-(a+b)) when it is a genuine three-term null sum,
                // and a + ε·a.
                let mut sums = vec![vec![a.clone(), src.neg(a).unwrap()]];
                if src.is_field() {
                    let ab = src.field_add(a, b).unwrap();
                    sums.push(vec![a.clone(), b.clone(), src.neg(&ab).unwrap()]);
                }
                for terms in sums {
                    let s = sum(&src, terms.clone());
                    assert!(src.is_null(&s).unwrap());
                    let image: Vec<_> = terms.iter().map(|x| h.apply(x).unwrap()).collect();
                    assert!(null(h.target(), image), "{:?}", h.kind());
                }
                // multiplicativity
                let prod = h.apply(&src.mul(a, b).unwrap()).unwrap();
                let tgt = h.target();
                assert_eq!(prod, tgt.mul(&h.apply(a).unwrap(), &h.apply(b).unwrap()).unwrap());
            }
        }
        assert_eq!(h.apply(&src.zero()).unwrap(), h.target().zero());
    }
}

#[test]
fn element_text_round_trip() {
    let cases = [
        (TractId::Sign, vec!["0", "+", "-"]),
        (TractId::Krasner, vec!["0", "1"]),
        (TractId::Phase, vec!["0", "2,1", "-1,0"]),
        (TractId::Triangle, vec!["3/2", "0", "4"]),
        (TractId::Tropical, vec!["ninf", "-1/3", "0"]),
        (TractId::GaussianRational, vec!["1+4i", "2-i", "3/2i", "7"]),
        (TractId::RegularPartialField, vec!["-1", "0", "1"]),
    ];
    for (t, lits) in cases {
        for lit in lits {
            let e = t.parse_element(lit).unwrap();
            assert_eq!(t.parse_element(&t.format_element(&e)).unwrap(), e, "{lit}");
        }
    }
    assert_eq!(TractId::Phase.parse_element("2,2").unwrap(), dir(1, 1));
    assert_eq!(
        TractId::GaussianRational.parse_element("-i").unwrap(),
        TractElement::Gaussian(GaussRat::from_ints(0, -1))
    );
    assert!(TractId::Triangle.parse_element("-1").is_err());
    assert!(TractId::Sign.parse_element("2").is_err());
}

#[test]
fn tract_tags_round_trip() {
    for t in catalog() {
        assert_eq!(t.to_string().parse::<TractId>().unwrap(), t);
    }
    assert!("quotient:7:{1,2}".parse::<TractId>().is_err());
    assert!("fp:6".parse::<TractId>().is_err());
}

proptest! {
    #[test]
    fn tropical_null_is_shift_invariant(vals in prop::collection::vec(-4i64..4, 0..6), shift in -5i64..5) {
        let t = TractId::Tropical;
        let s = sum(&t, vals.iter().map(|&v| trop(v)).collect());
        prop_assert_eq!(t.is_null(&s).unwrap(), t.is_null(&s.scale(&trop(shift)).unwrap()).unwrap());
    }

    #[test]
    fn triangle_null_is_scale_invariant(vals in prop::collection::vec(1i64..9, 0..6), num in 1i64..7, den in 1i64..7) {
        let t = TractId::Triangle;
        let s = sum(&t, vals.iter().map(|&v| tri(v)).collect());
        let c = TractElement::Triangle(ratio(num, den));
        prop_assert_eq!(t.is_null(&s).unwrap(), t.is_null(&s.scale(&c).unwrap()).unwrap());
    }

    #[test]
    fn phase_product_matches_complex_product(a in -5i64..5, b in -5i64..5, c in -5i64..5, d in -5i64..5) {
        prop_assume!((a, b) != (0, 0) && (c, d) != (0, 0));
        let p = TractId::Phase;
        prop_assert_eq!(p.mul(&dir(a, b), &dir(c, d)).unwrap(), dir(a * c - b * d, a * d + b * c));
    }
}
