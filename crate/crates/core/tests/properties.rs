mod common;

use proptest::prelude::*;
use skewdg::classifier::rank2_from_q;
use skewdg::dg_core::check_differential;
use skewdg::frob_algebra::{sklyanin_e, truncated_polynomial};
use skewdg::qpl_action::{is_quasi_permutation, permutations};
use skewdg::resolution::SemifreeResolution;
use skewdg::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, 1i64..=3).prop_map(|(p, q)| Scalar::new(p, q).unwrap())
}

fn nonzero() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |x| !x.is_zero())
}

fn int_matrix(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Mat> {
    prop::collection::vec(lo..=hi, n * n).prop_map(move |v| {
        let rows: Vec<Vec<i64>> = v.chunks(n).map(|c| c.to_vec()).collect();
        Mat::from_ints(&rows)
    })
}

fn qpl(n: usize) -> impl Strategy<Value = QplMatrix> {
    let perms = permutations(n);
    (0..perms.len(), prop::collection::vec(nonzero(), n))
        .prop_map(move |(i, scales)| QplMatrix::new(perms[i].clone(), scales).unwrap())
}

fn element(n: usize, d: u32) -> impl Strategy<Value = SkewElement> {
    let len = graded_basis(n, d).len();
    prop::collection::vec(scalar(), len).prop_map(move |c| SkewElement::from_coords(n, d, &c))
}

fn monomial(n: usize) -> impl Strategy<Value = SkewMonomial> {
    prop::collection::vec(0u32..3, n).prop_map(SkewMonomial::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solve_returns_exact_solutions(rows in prop::collection::vec(prop::collection::vec(scalar(), 4), 3),
                                     x in prop::collection::vec(scalar(), 4)) {
        let a = Mat::from_rows(rows).unwrap();
        let b = a.mul_vec(&x).unwrap();
        let sol = solve_linear(&a, &b).unwrap();
        prop_assert_eq!(a.mul_vec(sol.particular.as_ref().unwrap()).unwrap(), b);
        prop_assert_eq!(sol.kernel_basis.len(), a.cols() - a.rank());
        for v in &sol.kernel_basis {
            prop_assert!(a.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
        let r = rref(&a);
        prop_assert_eq!(rref(&r.reduced).reduced, r.reduced);
    }

    #[test]
    fn product_is_associative((u, v, w) in (0u32..3, 0u32..3, 0u32..3)
        .prop_flat_map(|(a, b, c)| (element(3, a), element(3, b), element(3, c)))) {
        let left = elt_mul(&elt_mul(&u, &v).unwrap(), &w).unwrap();
        let right = elt_mul(&u, &elt_mul(&v, &w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn commutation_sign(a in monomial(3), b in monomial(3)) {
        let (sab, _) = mono_mul(&a, &b);
        let (sba, _) = mono_mul(&b, &a);
        let shared: u32 = a.exponents().iter().zip(b.exponents()).map(|(x, y)| x * y).sum();
        let expected = if (a.degree() * b.degree() - shared) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(sab * sba, expected);
    }

    #[test]
    fn boundary_squares_to_zero(n in 2usize..=4, entries in prop::collection::vec(-3i64..=3, 16), d in 0u32..5) {
        let rows: Vec<Vec<i64>> = entries[..n * n].chunks(n).map(|c| c.to_vec()).collect();
        let spec = DgSpec::from_ints(&rows).unwrap();
        let comp = boundary_matrix(&spec, d + 1).mul(&boundary_matrix(&spec, d)).unwrap();
        prop_assert!(comp.is_zero());
    }

    #[test]
    fn cohomology_bookkeeping(m in int_matrix(3, -2, 2)) {
        let spec = DgSpec::new(m.clone()).unwrap();
        let rep = cohomology(&spec, 4).unwrap();
        prop_assert_eq!(rep.dims[0], 1);
        prop_assert_eq!(rep.dims[1], 3 - m.rank());
        prop_assert_eq!(rep.h1_basis.len(), rep.dims[1]);
        prop_assert_eq!(rep.h2_cocycles.len(), rep.dims[2]);
        for d in 1..=4u32 {
            let lhs = graded_basis(3, d).len();
            let rhs = rep.dims[d as usize] + boundary_matrix(&spec, d).rank() + boundary_matrix(&spec, d - 1).rank();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn leibniz_rule(m in int_matrix(3, -3, 3), seed in any::<u64>()) {
        let check = check_differential(&DgSpec::new(m).unwrap(), 4, 20, seed).unwrap();
        prop_assert!(check.passed(), "{:?}", check.failures);
    }

    #[test]
    fn chi_is_a_right_action(m in int_matrix(3, -3, 3), c in qpl(3), c2 in qpl(3)) {
        prop_assert_eq!(chi(&m, &QplMatrix::identity(3)).unwrap(), m.clone());
        let lhs = chi(&m, &c.compose(&c2)).unwrap();
        let rhs = chi(&chi(&m, &c).unwrap(), &c2).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(chi(&m, &c).unwrap().rank(), m.rank());
    }

    #[test]
    fn quasi_permutations_form_a_group(c in qpl(4), c2 in qpl(4)) {
        let prod = c.compose(&c2);
        prop_assert!(is_quasi_permutation(&prod.to_mat()));
        prop_assert_eq!(prod.to_mat(), c.to_mat().mul(&c2.to_mat()).unwrap());
        prop_assert!(is_quasi_permutation(&c.inverse().to_mat()));
        prop_assert_eq!(c.to_mat().mul(&c.inverse().to_mat()).unwrap(), Mat::identity(4));
    }

    #[test]
    fn iso_solve_finds_orbit_members(m in int_matrix(3, -2, 2), c in qpl(3)) {
        let m2 = chi(&m, &c).unwrap();
        let res = iso_solve(&m, &m2).unwrap();
        prop_assert!(res.is_isomorphic());
        if let Some(w) = res.witness() {
            prop_assert!(is_quasi_permutation(&w.to_mat()));
            prop_assert_eq!(chi(&m, w).unwrap(), m2);
        }
    }

    #[test]
    fn iso_solve_is_symmetric(m in int_matrix(3, -1, 1), m2 in int_matrix(3, -1, 1)) {
        let ab = iso_solve(&m, &m2).unwrap();
        let ba = iso_solve(&m2, &m).unwrap();
        prop_assert_eq!(ab.is_isomorphic(), ba.is_isomorphic());
        if let Some(w) = ab.witness() {
            prop_assert_eq!(chi(&m, w).unwrap(), m2);
        }
    }

    #[test]
    fn classification_is_invariant(m in int_matrix(3, -2, 2), c in qpl(3)) {
        let m2 = chi(&m, &c).unwrap();
        let (a, b) = (classify(&m).unwrap(), classify(&m2).unwrap());
        prop_assert_eq!(a.rank, b.rank);
        prop_assert_eq!(a.subcase(), b.subcase());
        prop_assert_eq!(a.cohomology_case(), b.cohomology_case());
        let (va, vb) = (theorem_c(&m).unwrap(), theorem_c(&m2).unwrap());
        prop_assert_eq!((va.calabi_yau, va.homologically_smooth), (vb.calabi_yau, vb.homologically_smooth));
    }

    #[test]
    fn subcase_survives_orbit_and_shift(i in 0usize..27, c in qpl(3), alpha in scalar()) {
        let (sub, m) = common::worked_examples()[i].clone();
        let m = chi(&m, &c).unwrap();
        prop_assert_eq!(classify(&m).unwrap().subcase(), Some(sub));
        let data = skewdg::classifier::rank2_data(&m).unwrap();
        let t2: Vec<Scalar> = data.t.iter().map(|x| x * x).collect();
        let q = solve_linear(&m.transpose(), &t2).unwrap().particular.unwrap();
        let shifted: Vec<Scalar> = q.iter().zip(&data.t).map(|(a, b)| a + &(&alpha * b)).collect();
        let again = rank2_from_q(&m, data.s.clone(), data.t.clone(), shifted).unwrap();
        prop_assert_eq!(again.subcase, Some(sub));
    }

    #[test]
    fn presentation_matches_cohomology(m in int_matrix(3, -1, 2)) {
        let label = classify(&m).unwrap();
        let brute = cohomology(&DgSpec::new(m).unwrap(), 5).unwrap().dims;
        prop_assert_eq!(presented_dims(&presentation_of(&label), 5).unwrap(), brute);
    }

    #[test]
    fn frobenius_survives_basis_change(l in -2i64..=2, mu in -2i64..=2, v in -2i64..=2,
                                       upper in prop::collection::vec(scalar(), 6), diag in prop::collection::vec(nonzero(), 3)) {
        let e = sklyanin_e(&Scalar::from_int(l), &Scalar::from_int(mu), &Scalar::from_int(v));
        let p = unitriangular(&upper, &diag);
        let e2 = e.change_basis(&p).unwrap();
        prop_assert_eq!(frobenius(&e).frobenius, frobenius(&e2).frobenius);
        prop_assert_eq!(frobenius(&e).frobenius, l * mu - v * v != 0);
        prop_assert_eq!(socle_dim(&e).unwrap(), socle_dim(&e2).unwrap());
    }

    #[test]
    fn truncated_polynomials_are_recognized(m in 1usize..=8, seed in any::<u64>()) {
        let e = truncated_polynomial(m).unwrap();
        // an invertible change of basis fixing the unit
        let mut p = Mat::identity(m);
        let mut x = seed;
        for i in 1..m {
            for j in (i + 1)..m {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                p[(i, j)] = Scalar::from_int((x >> 60) as i64 - 8);
            }
        }
        let e = e.change_basis(&p).unwrap();
        prop_assert_eq!(recognize_truncated(&e), Some(m));
        prop_assert_eq!(socle_dim(&e).unwrap(), 1);
        prop_assert_eq!(radical_filtration(&e).unwrap(), vec![1; m]);
    }

    #[test]
    fn structure_constants_round_trip(l in -2i64..=2, mu in -2i64..=2, v in -2i64..=2) {
        let e = sklyanin_e(&Scalar::from_int(l), &Scalar::from_int(mu), &Scalar::from_int(v));
        let back: FinAlg = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
        prop_assert_eq!(back, e);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn resolutions_round_trip_as_text(i in 0usize..27, c in qpl(3)) {
        let m = chi(&common::worked_examples()[i].1, &c).unwrap();
        let BuildOutcome::Finite(res) = build_resolution(&m).unwrap() else { panic!("finite") };
        let back = SemifreeResolution::parse_text(&res.to_text()).unwrap();
        prop_assert_eq!(back, res.clone());
        let rec = verify_resolution(&DgSpec::new(res.base.clone()).unwrap(), &res, 4).unwrap();
        prop_assert!(rec.passed(), "{:?}", rec.failures);
    }
}

/// Fixes the unit b0 and mixes b1..b3 by an upper-triangular matrix with the given diagonal.
fn unitriangular(upper: &[Scalar], diag: &[Scalar]) -> Mat {
    let mut p = Mat::identity(4);
    let mut k = 0;
    for i in 1..4 {
        p[(i, i)] = diag[i - 1].clone();
        for j in (i + 1)..4 {
            p[(i, j)] = upper[k].clone();
            k += 1;
        }
    }
    p
}

#[test]
fn mono_mul_matches_word_normalization() {
    for n in 1..=3 {
        let monos: Vec<SkewMonomial> = (0..=4).flat_map(|d| graded_basis(n, d)).collect();
        for a in &monos {
            for b in &monos {
                if a.degree() + b.degree() > 4 {
                    continue;
                }
                let mut letters: Vec<usize> = a.letters();
                letters.extend(b.letters());
                let (sign, mono) = normalize_word(n, &letters).unwrap();
                assert_eq!(mono_mul(a, b), (sign, mono));
            }
        }
    }
}

#[test]
fn basis_counts_are_binomial() {
    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
    for n in 1..=4usize {
        for d in 0..=10u32 {
            assert_eq!(graded_basis(n, d).len() as u64, binom(d as u64 + n as u64 - 1, n as u64 - 1));
        }
    }
}
