//! Seeded instances with known structure: `⊕ M_{n_k} ⊗ I_{m_k}` and
//! `⊕ B(ℂ^{n_k}, ℂ^{m_k}) ⊗ I_{r_k}`, hidden by random unitary conjugation.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{ComplexMatrix, C64};

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of `R`'s diagonal divided out.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = DMatrix::<C64>::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re, im)
    });
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    ComplexMatrix::from_nalgebra(q)
}

/// Block `M_n` repeated `multiplicity` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraBlock {
    pub size: usize,
    pub multiplicity: usize,
}

/// Block `B(ℂ^cols, ℂ^rows)` repeated `multiplicity` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TroBlock {
    pub rows: usize,
    pub cols: usize,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PlantedAlgebra {
    pub ambient: usize,
    pub generators: Vec<ComplexMatrix>,
    /// Blocks sorted by size, then multiplicity, both descending.
    pub blocks: Vec<AlgebraBlock>,
    pub unitary: ComplexMatrix,
}

#[derive(Debug, Clone, Serialize)]
pub struct PlantedTro {
    pub rows: usize,
    pub cols: usize,
    pub generators: Vec<ComplexMatrix>,
    /// Blocks sorted by rows, cols, then multiplicity, all descending.
    pub blocks: Vec<TroBlock>,
    pub left_unitary: ComplexMatrix,
    pub right_unitary: ComplexMatrix,
}

impl PlantedAlgebra {
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.size).collect()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.multiplicity).collect()
    }
}

impl PlantedTro {
    pub fn shapes(&self) -> Vec<(usize, usize)> {
        self.blocks.iter().map(|b| (b.rows, b.cols)).collect()
    }
}

/// Planted `⊕ₖ M_{n_k} ⊗ I_{m_k}` padded with `pad` zero dimensions, under a
/// random unitary. Generators are `e_11` and the `e_{i,i+1}` of each block.
pub fn planted_algebra(blocks: &[AlgebraBlock], pad: usize, seed: u64) -> Result<PlantedAlgebra> {
    if blocks.is_empty() {
        return Err(Error::InvalidParameters("at least one block".into()));
    }
    if blocks.iter().any(|b| b.size == 0 || b.multiplicity == 0) {
        return Err(Error::InvalidParameters(
            "block sizes and multiplicities must be positive".into(),
        ));
    }
    let ambient = blocks.iter().map(|b| b.size * b.multiplicity).sum::<usize>() + pad;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = random_unitary(ambient, &mut rng);
    let ut = u.adjoint();

    let mut generators = Vec::new();
    let mut offset = 0;
    for b in blocks {
        let copies = ComplexMatrix::identity(b.multiplicity);
        let mut local = vec![ComplexMatrix::unit(b.size, b.size, 0, 0)];
        local.extend((0..b.size - 1).map(|i| ComplexMatrix::unit(b.size, b.size, i, i + 1)));
        for x in local {
            let mut g = ComplexMatrix::zeros(ambient, ambient);
            g.place(offset, offset, &copies.kron(&x));
            generators.push(&(&u * &g) * &ut);
        }
        offset += b.size * b.multiplicity;
    }

    let mut sorted = blocks.to_vec();
    sorted.sort_by(|x, y| y.size.cmp(&x.size).then(y.multiplicity.cmp(&x.multiplicity)));
    Ok(PlantedAlgebra {
        ambient,
        generators,
        blocks: sorted,
        unitary: u,
    })
}

/// Planted `⊕ₖ B(ℂ^{n_k}, ℂ^{m_k}) ⊗ I_{r_k}` under independent random
/// unitaries on both sides. Generators are `E_11`, `E_i1`, `E_1j` per block.
pub fn planted_tro(blocks: &[TroBlock], seed: u64) -> Result<PlantedTro> {
    if blocks.is_empty() {
        return Err(Error::InvalidParameters("at least one block".into()));
    }
    if blocks
        .iter()
        .any(|b| b.rows == 0 || b.cols == 0 || b.multiplicity == 0)
    {
        return Err(Error::InvalidParameters(
            "block shapes and multiplicities must be positive".into(),
        ));
    }
    let rows: usize = blocks.iter().map(|b| b.rows * b.multiplicity).sum();
    let cols: usize = blocks.iter().map(|b| b.cols * b.multiplicity).sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = random_unitary(rows, &mut rng);
    let v = random_unitary(cols, &mut rng);
    let vt = v.adjoint();

    let mut generators = Vec::new();
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        let copies = ComplexMatrix::identity(b.multiplicity);
        let mut local = vec![ComplexMatrix::unit(b.rows, b.cols, 0, 0)];
        local.extend((1..b.rows).map(|i| ComplexMatrix::unit(b.rows, b.cols, i, 0)));
        local.extend((1..b.cols).map(|j| ComplexMatrix::unit(b.rows, b.cols, 0, j)));
        for x in local {
            let mut g = ComplexMatrix::zeros(rows, cols);
            g.place(r0, c0, &copies.kron(&x));
            generators.push(&(&u * &g) * &vt);
        }
        r0 += b.rows * b.multiplicity;
        c0 += b.cols * b.multiplicity;
    }

    let mut sorted = blocks.to_vec();
    sorted.sort_by(|x, y| {
        y.rows
            .cmp(&x.rows)
            .then(y.cols.cmp(&x.cols))
            .then(y.multiplicity.cmp(&x.multiplicity))
    });
    Ok(PlantedTro {
        rows,
        cols,
        generators,
        blocks: sorted,
        left_unitary: u,
        right_unitary: v,
    })
}

/// Random block list with `Σ size·multiplicity ≤ budget`, at most
/// `max_blocks` blocks and block sizes at most `max_size`.
pub fn random_algebra_blocks<R: Rng + ?Sized>(
    rng: &mut R,
    budget: usize,
    max_blocks: usize,
    max_size: usize,
) -> Vec<AlgebraBlock> {
    let mut remaining = budget.max(1);
    let mut blocks = Vec::new();
    while remaining > 0 && blocks.len() < max_blocks.max(1) {
        let size = rng.random_range(1..=max_size.min(remaining));
        let multiplicity = rng.random_range(1..=(remaining / size).min(2));
        blocks.push(AlgebraBlock { size, multiplicity });
        remaining -= size * multiplicity;
        if rng.random_bool(0.3) {
            break;
        }
    }
    blocks
}

/// Random TRO blocks with sides at most `max_side`, at most `max_blocks`
/// blocks, and multiplicities at most `max_multiplicity`.
pub fn random_tro_blocks<R: Rng + ?Sized>(
    rng: &mut R,
    max_side: usize,
    max_blocks: usize,
    max_multiplicity: usize,
) -> Vec<TroBlock> {
    let count = rng.random_range(1..=max_blocks.max(1));
    (0..count)
        .map(|_| TroBlock {
            rows: rng.random_range(1..=max_side),
            cols: rng.random_range(1..=max_side),
            multiplicity: rng.random_range(1..=max_multiplicity.max(1)),
        })
        .collect()
}

/// A planted algebra on `ℂ^N` together with generators of a right ideal.
#[derive(Debug, Clone, Serialize)]
pub struct IdealInstance {
    pub algebra: PlantedAlgebra,
    pub ideal_generators: Vec<ComplexMatrix>,
}

/// Random algebra in `M_N`, `N` uniform in `ambient`, and `1..=max_gens`
/// ideal generators `x_j e y_j` with `e` a random sum of planted diagonal
/// units and `x_j, y_j` random elements. Occasionally `e = 1`.
pub fn random_ideal_instance(
    ambient: std::ops::RangeInclusive<usize>,
    max_gens: usize,
    seed: u64,
) -> Result<IdealInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(ambient);
    let blocks = random_algebra_blocks(&mut rng, n, 3, 4);
    let used: usize = blocks.iter().map(|b| b.size * b.multiplicity).sum();
    let algebra = planted_algebra(&blocks, n - used, rng.random())?;
    let u = &algebra.unitary;
    let ut = u.adjoint();

    let full = rng.random_bool(0.1);
    let mut selector = Vec::new();
    for b in &blocks {
        let mut d = vec![0.0; b.size];
        for x in d.iter_mut() {
            *x = if full || rng.random_bool(0.5) { 1.0 } else { 0.0 };
        }
        selector.push(ComplexMatrix::identity(b.multiplicity).kron(&ComplexMatrix::from_diagonal(&d)));
    }
    selector.push(ComplexMatrix::zeros(n - used, n - used));
    let e = &(u * &block_diag(&selector)) * &ut;

    let random_in_a = |rng: &mut ChaCha8Rng| {
        let parts: Vec<_> = blocks
            .iter()
            .map(|b| ComplexMatrix::identity(b.multiplicity).kron(&gaussian(b.size, rng)))
            .chain(std::iter::once(ComplexMatrix::zeros(n - used, n - used)))
            .collect();
        &(u * &block_diag(&parts)) * &ut
    };
    let count = rng.random_range(1..=max_gens.max(1));
    let mut ideal_generators = Vec::with_capacity(count);
    for _ in 0..count {
        let x = random_in_a(&mut rng);
        let y = random_in_a(&mut rng);
        ideal_generators.push(&(&x * &e) * &y);
    }
    Ok(IdealInstance {
        algebra,
        ideal_generators,
    })
}

fn block_diag(parts: &[ComplexMatrix]) -> ComplexMatrix {
    let nonempty: Vec<_> = parts.iter().filter(|p| p.rows() > 0).cloned().collect();
    ComplexMatrix::direct_sum(&nonempty)
}

fn gaussian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let entries = (0..n * n)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            C64::new(re, im) / std::f64::consts::SQRT_2
        })
        .collect();
    ComplexMatrix::from_row_major(n, n, entries).expect("finite Gaussian entries")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [1, 2, 7] {
            let u = random_unitary(n, &mut rng);
            assert!((&u.adjoint() * &u).distance(&ComplexMatrix::identity(n)) < 1e-12);
        }
    }

    #[test]
    fn planted_shapes() {
        let p = planted_algebra(
            &[AlgebraBlock { size: 2, multiplicity: 2 }],
            0,
            1,
        )
        .unwrap();
        assert_eq!(p.ambient, 4);
        assert_eq!(p.generators.len(), 2);

        let t = planted_tro(
            &[TroBlock { rows: 2, cols: 3, multiplicity: 1 }],
            0,
        )
        .unwrap();
        assert_eq!((t.rows, t.cols), (2, 3));
        assert_eq!(t.generators.len(), 4);
    }

    #[test]
    fn same_seed_same_instance() {
        let blocks = [
            AlgebraBlock { size: 1, multiplicity: 1 },
            AlgebraBlock { size: 3, multiplicity: 1 },
        ];
        let a = planted_algebra(&blocks, 1, 9).unwrap();
        let b = planted_algebra(&blocks, 1, 9).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert_eq!(a.block_sizes(), vec![3, 1]);
    }

    #[test]
    fn samplers_respect_budgets() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let b = random_algebra_blocks(&mut rng, 7, 3, 4);
            assert!(b.iter().map(|x| x.size * x.multiplicity).sum::<usize>() <= 7);
            assert!(!b.is_empty() && b.len() <= 3);
            let t = random_tro_blocks(&mut rng, 4, 3, 2);
            assert!(t.iter().all(|x| x.rows <= 4 && x.cols <= 4 && x.multiplicity <= 2));
        }
        for seed in 0..20 {
            let inst = random_ideal_instance(2..=12, 4, seed).unwrap();
            let n = inst.algebra.ambient;
            assert!((2..=12).contains(&n));
            assert!(inst.ideal_generators.iter().all(|g| g.shape() == (n, n)));
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(planted_algebra(&[], 0, 0).is_err());
        assert!(planted_tro(&[TroBlock { rows: 0, cols: 1, multiplicity: 1 }], 0).is_err());
    }
}
