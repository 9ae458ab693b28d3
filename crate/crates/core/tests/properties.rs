use num_rational::BigRational;
use proptest::prelude::*;
use qent_core::algebra::{builtin, ModuleRep, PathAlgebra};
use qent_core::complexes::{
    cohomology_dims, cohomology_module, hom_dims, projective_resolution, serre, serre_inv, ChainMap, PerfComplex,
};
use qent_core::entropy::{channel_profile, growth_series, Channel, Probes};
use qent_core::filtrations::{cot_filtration, delta_check, delta_hat, t_filtration, triangle_subadditivity_check};
use qent_core::functors::{iso_test, Functor};
use qent_core::random::{random_chain_map, random_complex, rng};
use qent_core::scalars::{split_invertible_block, verified_rank, Matrix, Zp};
use qent_core::DefaultField as F;

type G = Zp<998_244_353>;

fn algebra(i: usize) -> PathAlgebra {
    match i % 3 {
        0 => builtin::a2(),
        1 => builtin::a3(),
        _ => builtin::kronecker(),
    }
}

fn int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (0usize..=12, 0usize..=12).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-5i64..=5, c), r))
}

/// Reference rank by fraction-free elimination over the integers.
fn bareiss_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            let (a, b) = (m[rank][c], m[r][c]);
            for k in 0..cols {
                m[r][k] = m[r][k] * a - m[rank][k] * b;
            }
            let g = m[r].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
            if g > 1 {
                m[r].iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn shape(rows: &[Vec<i64>]) -> usize {
    rows.first().map_or(0, Vec::len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rank_agrees_across_primes(rows in int_matrix()) {
        let a = Matrix::<F>::from_i64_rows(&rows).rank();
        let b = Matrix::<G>::from_i64_rows(&rows).rank();
        prop_assert_eq!(a, b);
        prop_assert_eq!(verified_rank(&rows), bareiss_rank(&rows));
        prop_assert_eq!(a, bareiss_rank(&rows));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rank_nullity(rows in int_matrix()) {
        let m = Matrix::<F>::from_i64_rows(&rows);
        prop_assert_eq!(m.rank() + m.kernel_basis().len(), shape(&rows));
        let q = Matrix::<BigRational>::from_i64_rows(&rows);
        prop_assert_eq!(q.rank() + q.kernel_basis().len(), shape(&rows));
    }

    #[test]
    fn rank_invariant_under_permutation_and_elimination(rows in int_matrix(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let m = Matrix::<F>::from_i64_rows(&rows);
        let mut r = rng(seed);
        let mut rp: Vec<usize> = (0..m.rows()).collect();
        let mut cp: Vec<usize> = (0..m.cols()).collect();
        rp.shuffle(&mut r);
        cp.shuffle(&mut r);
        prop_assert_eq!(m.select(&rp, &cp).rank(), m.rank());
        let mask = Matrix::from_fn(m.rows(), m.cols(), |_, _| true);
        if let (Some(_), rest) = split_invertible_block(&m, &mask) {
            prop_assert_eq!(rest.rank() + 1, m.rank());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn minimize_preserves_hom_profiles(seed in any::<u64>(), which in 0usize..3) {
        let alg = algebra(which);
        let x: PerfComplex<F> = random_complex(&alg, &mut rng(seed));
        let m = x.minimize();
        prop_assert!(m.is_minimal());
        prop_assert!(m.check_d2().is_ok());
        let n = alg.num_vertices();
        let mut probes = vec![PerfComplex::stalk((0..n).collect(), 0)];
        probes.extend((0..n).map(|j| projective_resolution(&alg, &ModuleRep::simple(&alg, j))));
        for y in &probes {
            prop_assert_eq!(hom_dims(&alg, &x, y), hom_dims(&alg, &m, y));
            prop_assert_eq!(hom_dims(&alg, y, &x), hom_dims(&alg, y, &m));
        }
    }

    #[test]
    fn resolution_recovers_module(seed in any::<u64>(), which in 0usize..3) {
        // cohomology of random complexes gives a supply of modules
        let alg = algebra(which);
        let x: PerfComplex<F> = random_complex(&alg, &mut rng(seed));
        for (d, _) in cohomology_dims(&alg, &x) {
            let m = cohomology_module(&alg, &x, d);
            let r = projective_resolution(&alg, &m);
            let back = cohomology_module(&alg, &r, 0);
            prop_assert_eq!(&back.dims, &m.dims);
            prop_assert_eq!(back.arrow_ranks(), m.arrow_ranks());
            prop_assert!(cohomology_dims(&alg, &r).iter().all(|(k, dims)| *k == 0 || dims.iter().all(|&v| v == 0)));
        }
    }

    #[test]
    fn cone_triangles(seed in any::<u64>(), which in 0usize..3) {
        let alg = algebra(which);
        let mut r = rng(seed);
        let x: PerfComplex<F> = random_complex(&alg, &mut r);
        let y: PerfComplex<F> = random_complex(&alg, &mut r);
        let f = random_chain_map(&alg, &x, &y, &mut r);
        let c = f.cone();
        prop_assert!(c.check_d2().is_ok() && c.is_minimal());

        // Euler characteristic against [A]
        let a = PerfComplex::<F>::stalk((0..alg.num_vertices()).collect(), 0);
        let chi = |z: &PerfComplex<F>| hom_dims(&alg, &a, z).euler_characteristic();
        prop_assert_eq!(chi(&c), chi(&y) - chi(&x));

        // X -> Y -> C: every dim H^i_v(Y) <= H^i_v(X) + H^i_v(C)
        let dims = |z: &PerfComplex<F>| cohomology_dims(&alg, z).into_iter().collect::<std::collections::BTreeMap<_, _>>();
        let (hx, hy, hc) = (dims(&x), dims(&y), dims(&c));
        let zero = vec![0; alg.num_vertices()];
        for (i, ys) in &hy {
            let xs = hx.get(i).unwrap_or(&zero);
            let cs = hc.get(i).unwrap_or(&zero);
            for v in 0..ys.len() {
                prop_assert!(ys[v] <= xs[v] + cs[v]);
            }
        }
    }

    #[test]
    fn subadditivity(seed in any::<u64>(), which in 0usize..3) {
        let alg = algebra(which);
        let mut r = rng(seed);
        let d: PerfComplex<F> = random_complex(&alg, &mut r);
        let f: PerfComplex<F> = random_complex(&alg, &mut r);
        let g = random_chain_map(&alg, &f.shift(-1), &d, &mut r);
        for t in [-1.0, 0.0, 1.0] {
            prop_assert!(triangle_subadditivity_check(&alg, &d, &f, &g, t).unwrap());
        }
    }

    #[test]
    fn channel_identities_and_scaling(seed in any::<u64>(), which in 0usize..3, k in -3i32..=3) {
        let alg = algebra(which);
        let x: PerfComplex<F> = random_complex(&alg, &mut rng(seed));
        let probes = Probes::new(&alg);
        let prof = |c| channel_profile(&alg, c, &x, &probes).unwrap();
        prop_assert_eq!(prof(Channel::DeltaHat), prof(Channel::HomA));
        prop_assert_eq!(prof(Channel::DeltaCheck), prof(Channel::HomB));

        let m = x.minimize();
        prop_assert_eq!(t_filtration(&alg, &x.shift(k)), t_filtration(&alg, &x).shifted(k));
        prop_assert_eq!(cot_filtration(&m.shift(k)).unwrap(), cot_filtration(&m).unwrap().shifted(k));
        let n = alg.num_vertices() as f64;
        for t in [-0.7, 0.0, 1.3] {
            let e = (k as f64 * t).exp();
            let h = delta_hat(&alg, &x, t).value;
            prop_assert!((delta_hat(&alg, &x.shift(k), t).value - e * h).abs() <= 1e-9 * (1.0 + e * h));
            let c = delta_check(&m, t).unwrap().value;
            prop_assert!((delta_check(&m.shift(k), t).unwrap().value - e * c).abs() <= 1e-9 * (1.0 + e * c));
            // lower bound by the Hom(-, S) profile
            let b: f64 = prof(Channel::HomB).iter().map(|(&k, &w)| w as f64 * (k as f64 * t).exp()).sum();
            prop_assert!(c >= b / n - 1e-12);
        }
    }

    #[test]
    fn serre_round_trip(seed in any::<u64>(), which in 0usize..3) {
        let alg = algebra(which);
        let x: PerfComplex<F> = random_complex(&alg, &mut rng(seed)).minimize();
        prop_assert!(iso_test(&alg, &serre(&alg, &serre_inv(&alg, &x)), &x));
        prop_assert!(iso_test(&alg, &serre_inv(&alg, &serre(&alg, &x)), &x));
    }
}

const FUNCTORS: [&str; 8] = ["nu", "nu^-1", "Sigma^-2", "T[S1]", "Td[P2]", "T[P1+S2[1]]", "nu * Sigma", "id"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn composition(seed in any::<u64>(), which in 0usize..3, a in 0usize..8, b in 0usize..8) {
        let alg = algebra(which);
        let x: PerfComplex<F> = random_complex(&alg, &mut rng(seed));
        let (fa, fb) = (FUNCTORS[a], FUNCTORS[b]);
        let composite = Functor::<F>::parse(&format!("({fa}) * ({fb})"), &alg).unwrap();
        let f = Functor::<F>::parse(fa, &alg).unwrap();
        let g = Functor::<F>::parse(fb, &alg).unwrap();
        let lhs = composite.apply(&alg, &x).unwrap();
        let rhs = f.apply(&alg, &g.apply(&alg, &x).unwrap()).unwrap();
        prop_assert!(lhs.is_minimal() && lhs.check_d2().is_ok());
        prop_assert!(iso_test(&alg, &lhs, &rhs));
    }

    /// An exact functor sends the stupid filtration of `x` to a tower with
    /// factors `Φ(Σ^{-d} X^d)`, so complexity is bounded by the sum over them.
    #[test]
    fn functor_image_of_filtration(seed in any::<u64>(), which in 0usize..3, a in 0usize..8) {
        let alg = algebra(which);
        let x: PerfComplex<F> = random_complex(&alg, &mut rng(seed)).minimize();
        let f = Functor::<F>::parse(FUNCTORS[a], &alg).unwrap();
        let fx = f.apply(&alg, &x).unwrap();
        let pieces: Vec<PerfComplex<F>> = x
            .degrees()
            .filter(|&d| !x.term(d).is_empty())
            .map(|d| f.apply(&alg, &PerfComplex::stalk(x.term(d).to_vec(), d)).unwrap())
            .collect();
        for t in [-1.0, 0.0, 1.0] {
            let bound: f64 = pieces.iter().map(|p| delta_check(p, t).unwrap().value).sum();
            prop_assert!(delta_check(&fx, t).unwrap().value <= bound * (1.0 + 1e-12));
            let bound: f64 = pieces.iter().map(|p| delta_hat(&alg, p, t).value).sum();
            prop_assert!(delta_hat(&alg, &fx, t).value <= bound * (1.0 + 1e-12));
        }
    }
}

#[test]
fn serre_inverse_on_projectives() {
    for alg in [builtin::a2(), builtin::a3(), builtin::kronecker()] {
        for i in 0..alg.num_vertices() {
            let p = PerfComplex::<F>::stalk(vec![i], 0);
            assert!(iso_test(&alg, &serre(&alg, &serre_inv(&alg, &p)), &p));
        }
    }
}

#[test]
fn fekete_consistency_and_channel_agreement() {
    let cases = [(builtin::a2(), "nu", "P1+P2"), (builtin::a3(), "nu", "P1+P2+P3"), (builtin::kronecker(), "nu", "P1+P2")];
    for (alg, f, g) in &cases {
        let functor = Functor::<F>::parse(f, alg).unwrap();
        let g = qent_core::complexes::ObjExpr::parse(g).unwrap().resolve(alg).unwrap();
        for t in [-1.0, -0.5, 0.0, 0.5, 1.0] {
            let slopes: Vec<f64> = Channel::ALL
                .iter()
                .map(|&c| {
                    let s = growth_series(alg, &functor, &g, t, 30, c).unwrap();
                    if let Some(fk) = s.fekete_upper {
                        assert!(fk >= s.regression_slope - 0.05, "{f} {c} t={t}: {fk} vs {}", s.regression_slope);
                    }
                    s.regression_slope
                })
                .collect();
            let spread = slopes.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                - slopes.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(spread < 0.02, "{} vertices, t={t}: {slopes:?}", alg.num_vertices());
        }
    }
}

#[test]
fn chain_map_composition_is_associative_on_cocycles() {
    let alg = builtin::a3();
    let mut r = rng(11);
    for _ in 0..30 {
        let x: PerfComplex<F> = random_complex(&alg, &mut r).minimize();
        let y: PerfComplex<F> = random_complex(&alg, &mut r).minimize();
        let z: PerfComplex<F> = random_complex(&alg, &mut r).minimize();
        let f = random_chain_map(&alg, &x, &y, &mut r);
        let g = random_chain_map(&alg, &y, &z, &mut r);
        let h = ChainMap::identity(&z);
        assert_eq!(f.then(&g).then(&h), f.then(&g.then(&h)));
    }
}
