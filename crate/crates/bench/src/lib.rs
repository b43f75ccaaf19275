//! Fixed benchmark instances shared by the criterion benches.

use cstar_core::ideals::{generate_right_ideal, RightIdeal};
use cstar_core::planted::{planted_algebra, planted_tro, AlgebraBlock, TroBlock};
use cstar_core::tro::Tro;
use cstar_core::{StarAlgebra, Tolerances};

/// `⊕ M_{n_k} ⊗ 1_{m_k}` under a seeded unitary conjugation.
pub fn algebra(blocks: &[(usize, usize)], seed: u64) -> StarAlgebra {
    let blocks: Vec<_> = blocks
        .iter()
        .map(|&(size, multiplicity)| AlgebraBlock { size, multiplicity })
        .collect();
    let p = planted_algebra(&blocks, 0, seed).expect("planted algebra");
    StarAlgebra::generate(p.ambient, &p.generators, false, Tolerances::default()).expect("algebra")
}

/// The right ideal generated by the first `count` basis elements of `a`.
pub fn ideal(a: &StarAlgebra, count: usize) -> RightIdeal {
    let gens: Vec<_> = a.basis_elements().iter().take(count).cloned().collect();
    generate_right_ideal(a, &gens).expect("ideal")
}

/// `⊕ B(ℂ^{n_k}, ℂ^{m_k})` under seeded two-sided conjugation.
pub fn tro(blocks: &[(usize, usize)], seed: u64) -> Tro {
    let blocks: Vec<_> = blocks
        .iter()
        .map(|&(rows, cols)| TroBlock { rows, cols, multiplicity: 1 })
        .collect();
    let p = planted_tro(&blocks, seed).expect("planted tro");
    Tro::generate(p.rows, p.cols, &p.generators, Tolerances::default()).expect("tro")
}
