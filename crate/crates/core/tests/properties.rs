use hankel_spectra::boundary::slice_norm_profile;
use hankel_spectra::galerkin::{assemble, assemble_toeplitz_identity, BasisTruncation};
use hankel_spectra::monomial::lambda_value;
use hankel_spectra::rational::{complex_real, rat};
use hankel_spectra::symbol::Coefficient;
use hankel_spectra::{MultiIndex, PolySymbol, Subset};
use num_complex::Complex;
use num_rational::BigRational;
use proptest::prelude::*;

fn index(dim: usize, max: u32) -> impl Strategy<Value = MultiIndex> {
    prop::collection::vec(0..=max, dim).prop_map(MultiIndex::from)
}

fn triple(max_dim: usize, max: u32) -> impl Strategy<Value = (MultiIndex, MultiIndex, MultiIndex)> {
    (1..=max_dim).prop_flat_map(move |d| (index(d, max), index(d, max), index(d, max)))
}

fn coefficient() -> impl Strategy<Value = Coefficient> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4)
        .prop_map(|(a, b, c, d)| Coefficient::Exact(Complex::new(rat(a, b), rat(c, d))))
}

fn symbol(dim: usize, max: u32, terms: usize) -> impl Strategy<Value = PolySymbol> {
    prop::collection::vec((coefficient(), index(dim, max), index(dim, max)), 1..=terms)
        .prop_map(move |t| PolySymbol::from_terms(dim, t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lambda_in_unit_interval_and_below_first_term((n, m, a) in triple(3, 4), mask in 1usize..8) {
        let dim = n.dim();
        let members: Vec<usize> = (0..dim).filter(|k| mask >> k & 1 == 1).collect();
        prop_assume!(!members.is_empty());
        let b = Subset::new(members.clone(), dim).unwrap();
        let l = lambda_value(&n, &m, &a, &b).unwrap();
        let first: BigRational = members
            .iter()
            .map(|&k| rat(a.get(k) as i64 + 1, (a.get(k) + n.get(k) + m.get(k)) as i64 + 1))
            .product();
        prop_assert!(*l.value() >= rat(0, 1) && *l.value() <= rat(1, 1));
        prop_assert!(*l.value() <= first);
    }

    #[test]
    fn lambda_symmetric_under_permutation((n, m, a) in triple(3, 4), mask in 1usize..8, rot in 0usize..3) {
        let dim = n.dim();
        let members: Vec<usize> = (0..dim).filter(|k| mask >> k & 1 == 1).collect();
        prop_assume!(!members.is_empty());
        let b = Subset::new(members, dim).unwrap();
        // perm[i] = source coordinate of new coordinate i
        let perm: Vec<usize> = (0..dim).map(|i| (i + rot) % dim).collect();
        let mut inverse = vec![0; dim];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        let l = lambda_value(&n, &m, &a, &b).unwrap();
        let lp = lambda_value(&n.permuted(&perm), &m.permuted(&perm), &a.permuted(&perm), &b.relabeled(&inverse)).unwrap();
        prop_assert_eq!(l, lp);
    }

    #[test]
    fn limit_point_law((n, m, a) in triple(3, 3), mask in 1usize..7) {
        let dim = n.dim();
        let members: Vec<usize> = (0..dim).filter(|k| mask >> k & 1 == 1).collect();
        prop_assume!(!members.is_empty() && members.len() < dim);
        let b = Subset::new(members.clone(), dim).unwrap();
        let limit = lambda_value(&n, &m, &a, &b).unwrap().to_f64();
        for j in [1u32, 10, 100, 1000, 10_000] {
            let aj: Vec<u32> = (0..dim).map(|k| if members.contains(&k) { a.get(k) } else { j }).collect();
            let l = lambda_value(&n, &m, &MultiIndex::from(aj), &Subset::full(dim)).unwrap().to_f64();
            prop_assert!((l - limit).abs() < 10.0 / j as f64, "j={} {} vs {}", j, l, limit);
        }
    }

    #[test]
    fn parse_print_round_trip(sym in (1usize..=3).prop_flat_map(|d| symbol(d, 3, 4))) {
        let text = sym.to_string();
        let back: PolySymbol = text.parse().unwrap();
        // parsing infers the dimension from the coordinates actually used
        let back = back.with_dim(sym.dim()).unwrap();
        prop_assert_eq!(back, sym);
    }

    #[test]
    fn galerkin_diagonal_matches_lambda((n, m, _a) in triple(2, 4)) {
        let dim = n.dim();
        let sym = PolySymbol::monomial(Coefficient::one(), n.clone(), m.clone());
        let trunc = BasisTruncation::new(dim, 4).unwrap();
        let mat = assemble(&sym, &trunc).unwrap();
        prop_assert!(mat.is_diagonal());
        let diag = mat.exact_diagonal().unwrap();
        for (i, alpha) in trunc.indices().iter().enumerate() {
            let l = lambda_value(&n, &m, alpha, &Subset::full(dim)).unwrap();
            prop_assert_eq!(&diag[i], &complex_real(l.value().clone()));
        }
    }

    #[test]
    fn toeplitz_identity_random_symbols(sym in (1usize..=2).prop_flat_map(|d| symbol(d, 2, 3))) {
        let trunc = BasisTruncation::new(sym.dim(), 3).unwrap();
        let a = assemble(&sym, &trunc).unwrap();
        let b = assemble_toeplitz_identity(&sym, &trunc).unwrap();
        prop_assert_eq!(a.entries(), b.entries());
        prop_assert_eq!(a.hermitian_deviation(), 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn slice_profile_scales_by_modulus_squared(sym in symbol(2, 2, 3), c in coefficient()) {
        prop_assume!(!c.is_zero());
        let scaled = sym.scale(&c);
        let a = slice_norm_profile(&sym, 2, 8, 4).unwrap();
        let b = slice_norm_profile(&scaled, 2, 8, 4).unwrap();
        let k = c.norm_sqr().to_c64().re;
        for (x, y) in a.samples.iter().zip(&b.samples) {
            prop_assert!((y.lambda - k * x.lambda).abs() <= 1e-10 * (1.0 + y.lambda));
        }
    }

    #[test]
    fn rotation_of_sliced_coordinate_shifts_profile(sym in symbol(2, 2, 3), shift in 1usize..16) {
        // rotating z_2 by 2 pi shift / 16 cyclically shifts the 16-sample profile
        let theta0 = 2.0 * std::f64::consts::PI * shift as f64 / 16.0;
        let rotated = sym.rotate_coordinate(1, theta0);
        let a = slice_norm_profile(&sym, 2, 16, 4).unwrap();
        let b = slice_norm_profile(&rotated, 2, 16, 4).unwrap();
        for j in 0..16 {
            let (x, y) = (b.samples[j].lambda, a.samples[(j + shift) % 16].lambda);
            prop_assert!((x - y).abs() <= 1e-10 * (1.0 + x.abs()), "j={} {} {}", j, x, y);
        }
    }
}
