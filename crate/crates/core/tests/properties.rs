use cstar_core::ideals::{
    generate_right_ideal, is_maximal_right_ideal, maximal_ideal_containing, projection_generator,
    support_projection,
};
use cstar_core::matcore::{hermitian_eig, orthonormalize, projection_above};
use cstar_core::planted::{
    planted_algebra, planted_tro, random_algebra_blocks, random_ideal_instance, random_tro_blocks,
    random_unitary,
};
use cstar_core::star_algebra::{center, unit_of, StarAlgebra};
use cstar_core::structure::{corner_dimension, random_minimal_projection, socle_with, wedderburn_decompose};
use cstar_core::tro::{
    classify_tro, finite_generation_certificate, generate_submodule, ideal_submodule_roundtrip,
    is_maximal_submodule, sample_maximal_submodule, submodule_ideal_roundtrip, submodule_to_ideal, Tro,
};
use cstar_core::{ComplexMatrix, Tolerances, C64};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MEMBER: f64 = 1e-8;

fn hermitian(n: usize, raw: &[f64]) -> ComplexMatrix {
    let entries = (0..n * n).map(|k| C64::new(raw[2 * k], raw[2 * k + 1])).collect();
    ComplexMatrix::from_row_major(n, n, entries).unwrap().hermitian_part()
}

fn hermitian_strategy() -> impl Strategy<Value = ComplexMatrix> {
    (1usize..=16).prop_flat_map(|n| {
        proptest::collection::vec(-2.0f64..2.0, 2 * n * n).prop_map(move |raw| hermitian(n, &raw))
    })
}

/// Orthogonal projection onto the span of all columns of `xs`, by
/// Gram–Schmidt on the columns.
fn column_space_projection(n: usize, xs: &[ComplexMatrix]) -> ComplexMatrix {
    let mut q: Vec<Vec<C64>> = Vec::new();
    let scale = xs.iter().map(|x| x.hs_norm()).fold(0.0, f64::max).max(1e-300);
    for x in xs {
        for j in 0..n {
            let mut v = x.column(j);
            for _ in 0..2 {
                for b in &q {
                    let c: C64 = b.iter().zip(&v).map(|(p, w)| p.conj() * w).sum();
                    for (w, p) in v.iter_mut().zip(b) {
                        *w -= c * p;
                    }
                }
            }
            let norm = v.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-7 * scale {
                q.push(v.into_iter().map(|w| w / norm).collect());
            }
        }
    }
    let mut p = ComplexMatrix::zeros(n, n);
    for b in &q {
        for i in 0..n {
            for j in 0..n {
                p.set(i, j, p.get(i, j) + b[i] * b[j].conj());
            }
        }
    }
    p
}

fn planted(seed: u64) -> (cstar_core::planted::PlantedAlgebra, StarAlgebra) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blocks = random_algebra_blocks(&mut rng, 8, 3, 3);
    let used: usize = blocks.iter().map(|b| b.size * b.multiplicity).sum();
    let pad = usize::from(used < 8 && seed.is_multiple_of(3));
    let p = planted_algebra(&blocks, pad, seed).unwrap();
    let a = StarAlgebra::generate(p.ambient, &p.generators, false, Tolerances::default()).unwrap();
    (p, a)
}

fn planted_z(seed: u64) -> (cstar_core::planted::PlantedTro, Tro) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blocks = random_tro_blocks(&mut rng, 3, 3, 2);
    let p = planted_tro(&blocks, seed).unwrap();
    let z = Tro::generate(p.rows, p.cols, &p.generators, Tolerances::default()).unwrap();
    (p, z)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn eigendecomposition_roundtrip(m in hermitian_strategy()) {
        let d = hermitian_eig(&m, 1e-10).unwrap();
        prop_assert!(d.apply(|t| t).distance(&m) <= 1e-10 * m.hs_norm().max(1.0));
    }

    #[test]
    fn functional_calculus_is_multiplicative(
        m in hermitian_strategy(),
        f in proptest::collection::vec(-1.0f64..1.0, 4),
        g in proptest::collection::vec(-1.0f64..1.0, 4),
    ) {
        let poly = |c: &[f64], t: f64| c[0] + t * (c[1] + t * (c[2] + t * c[3]));
        let d = hermitian_eig(&m, 1e-10).unwrap();
        let fg = d.apply(|t| poly(&f, t) * poly(&g, t));
        let prod = &d.apply(|t| poly(&f, t)) * &d.apply(|t| poly(&g, t));
        prop_assert!(fg.distance(&prod) <= 1e-9 * fg.hs_norm().max(1.0));
    }

    #[test]
    fn spectral_projection_is_the_indicator(m in hermitian_strategy(), tau in -3.0f64..3.0) {
        let tol = Tolerances::default();
        let d = hermitian_eig(&m, tol.spec).unwrap();
        if let Ok(p) = projection_above(&d, tau, &tol) {
            prop_assert_eq!(p, d.apply(|t| if t > tau { 1.0 } else { 0.0 }));
        }
    }

    #[test]
    fn orthonormalize_is_idempotent(raw in proptest::collection::vec(-1.0f64..1.0, 2 * 9 * 5)) {
        let xs: Vec<_> = raw.chunks(18).map(|c| {
            ComplexMatrix::from_row_major(3, 3, (0..9).map(|k| C64::new(c[2 * k], c[2 * k + 1])).collect()).unwrap()
        }).collect();
        let s = orthonormalize(3, 3, &xs, 1e-9).unwrap();
        let again = orthonormalize(3, 3, s.basis(), 1e-9).unwrap();
        prop_assert_eq!(s.dim(), again.dim());
        for (x, y) in s.basis().iter().zip(again.basis()) {
            prop_assert!(x.distance(y) <= 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn algebra_generation_invariants(seed in any::<u64>()) {
        let (_, a) = planted(seed);
        let again = StarAlgebra::generate(a.ambient_dim(), a.basis_elements(), false, *a.tol()).unwrap();
        prop_assert!(again.basis().same_span(a.basis(), MEMBER).unwrap());
        prop_assert!(a.closure_residual().unwrap() <= MEMBER);
        let u = unit_of(&a).unwrap();
        let (idem, sa) = u.projection_defect();
        prop_assert!(idem <= MEMBER && sa <= MEMBER);
        let z = center(&a).unwrap();
        for c in z.basis_elements() {
            prop_assert!(a.residual(c).unwrap() <= MEMBER);
            prop_assert!(a.commutator_residual(c) <= MEMBER);
        }
    }

    #[test]
    fn projection_generator_matches_brute_force_support(seed in any::<u64>()) {
        let inst = random_ideal_instance(2..=12, 4, seed).unwrap();
        let n = inst.algebra.ambient;
        let a = StarAlgebra::generate(n, &inst.algebra.generators, false, Tolerances::default()).unwrap();
        let j = generate_right_ideal(&a, &inst.ideal_generators).unwrap();
        let cert = projection_generator(&a, &j).unwrap();

        let brute = column_space_projection(n, j.basis().basis());
        prop_assert!(cert.p.distance(&brute) <= MEMBER);
        prop_assert!(support_projection(&a, &j).unwrap().distance(&brute) <= MEMBER);

        if let Some(lowest) = cert.min_nonzero_eigenvalue {
            let threshold = (cert.n as f64 * cert.k).powi(-2);
            prop_assert!(lowest >= threshold - MEMBER);
        }
        let regenerated = generate_right_ideal(&a, std::slice::from_ref(&cert.p)).unwrap();
        prop_assert!(regenerated.basis().same_span(j.basis(), MEMBER).unwrap());
    }

    #[test]
    fn maximality_is_a_dimension_count(seed in any::<u64>()) {
        let (_, a) = planted(seed);
        let d = wedderburn_decompose(&a, seed).unwrap();
        let u = a.unit().unwrap().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = (seed % d.block_count() as u64) as usize;
        let e = random_minimal_projection(&a, &d, k, &u, &mut rng).unwrap();
        let j = generate_right_ideal(&a, &[&u - &e]).unwrap();
        let ea = generate_right_ideal(&a, std::slice::from_ref(&e)).unwrap();
        prop_assert!(is_maximal_right_ideal(&a, &j).unwrap());
        prop_assert_eq!(a.dim() - j.dim(), ea.dim());

        // A random proper ideal sits inside a maximal one.
        let x = cstar_core::star_algebra::random_element_with(&a, &mut rng);
        let small = generate_right_ideal(&a, &[&x * &(&u - &e)]).unwrap();
        let m = maximal_ideal_containing(&a, &small, &mut rng).unwrap();
        prop_assert!(is_maximal_right_ideal(&a, &m).unwrap());
        prop_assert!(m.basis().max_residual_of(small.basis()).unwrap() <= MEMBER);
    }

    #[test]
    fn wedderburn_invariants(seed in any::<u64>()) {
        let (p, a) = planted(seed);
        let d = wedderburn_decompose(&a, seed).unwrap();
        prop_assert_eq!(&d.block_sizes, &p.block_sizes());
        prop_assert_eq!(&d.multiplicities, &p.multiplicities());

        let units: Vec<_> = d.matrix_units.iter().flatten().flatten().cloned().collect();
        let rebuilt = StarAlgebra::generate(a.ambient_dim(), &units, false, *a.tol()).unwrap();
        prop_assert!(rebuilt.basis().same_span(a.basis(), MEMBER).unwrap());
        prop_assert!(d.full_relation_residual() <= MEMBER);
        socle_with(&a, &d).unwrap();
        let diag = d.diagonal_units();
        for e in &diag {
            for f in &diag {
                prop_assert!(corner_dimension(&a, e, f).unwrap() <= 1);
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(!seed);
        let w = random_unitary(a.ambient_dim(), &mut rng);
        let moved: Vec<_> = a.basis_elements().iter().map(|x| &(&w * x) * &w.adjoint()).collect();
        let b = StarAlgebra::generate(a.ambient_dim(), &moved, false, *a.tol()).unwrap();
        let db = wedderburn_decompose(&b, seed.wrapping_add(3)).unwrap();
        prop_assert_eq!(db.blocks(), d.blocks());
    }

    #[test]
    fn tro_classification_and_certificates(seed in any::<u64>()) {
        let (p, z) = planted_z(seed);
        let c = classify_tro(&z, seed).unwrap();
        prop_assert_eq!(&c.blocks, &p.shapes());
        prop_assert!(c.dims_consistent());

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens: Vec<_> = (0..(seed % 3) as usize + 1).map(|_| z.random_element(&mut rng)).collect();
        let w = generate_submodule(&z, &gens).unwrap();
        let cert = finite_generation_certificate(&w).unwrap();
        for x in w.basis().basis() {
            prop_assert!((&cert.e * x).distance(x) <= MEMBER);
        }
        let rt = submodule_ideal_roundtrip(&z, &w).unwrap();
        prop_assert!(rt.submodule_residual <= MEMBER && rt.ideal_residual <= MEMBER);
        let (_, back) = ideal_submodule_roundtrip(&z, &rt.ideal).unwrap();
        prop_assert!(back <= MEMBER);

        let u = random_unitary(z.rows(), &mut rng);
        let v = random_unitary(z.cols(), &mut rng);
        let moved = classify_tro(&z.conjugate(&u, &v).unwrap(), seed ^ 1).unwrap();
        prop_assert_eq!(&moved.blocks, &c.blocks);
        prop_assert_eq!(&moved.multiplicities, &c.multiplicities);
    }

    #[test]
    fn maximality_transfers_both_ways(seed in any::<u64>()) {
        let (_, z) = planted_z(seed);
        let left = wedderburn_decompose(z.left_algebra(), seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = (seed % left.block_count() as u64) as usize;
        let (j, w) = sample_maximal_submodule(&z, &left, k, &mut rng).unwrap();
        prop_assert!(is_maximal_right_ideal(z.left_algebra(), &j).unwrap());
        prop_assert!(is_maximal_submodule(&z, &w).unwrap());
        if !w.is_zero() {
            finite_generation_certificate(&w).unwrap();
        }

        let x = &z.random_element(&mut rng) * &z.right_algebra().basis_elements()[0];
        let small = generate_submodule(&z, &[x]).unwrap();
        if small.dim() < z.dim() {
            let ideal = submodule_to_ideal(&z, &small).unwrap();
            prop_assert_eq!(
                is_maximal_submodule(&z, &small).unwrap(),
                is_maximal_right_ideal(z.left_algebra(), &ideal).unwrap()
            );
        }
    }
}
