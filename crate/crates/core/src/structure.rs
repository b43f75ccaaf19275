//! Wedderburn decomposition `A ≅ ⊕ₖ M_{n_k}` of a unital matrix *-algebra,
//! with matrix units, and the witnesses derived from it: the socle, the
//! partition of the unit into minimal projections, and corner dimensions.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideals::{
    check_projection_in, generate_right_ideal, is_maximal_right_ideal, is_minimal_projection,
    maximal_ideal_minimality_certificate, minimal_subprojection, projection_generator,
    ProjectionCertificate, RightIdeal,
};
use crate::matcore::{hermitian_eig, orthonormalize, pinv_sqrt, ComplexMatrix, C64};
use crate::star_algebra::{
    center, random_element_with, random_self_adjoint, random_self_adjoint_with, StarAlgebra,
};

const SEED_ATTEMPTS: u64 = 3;
const UNIT_SEED_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

#[derive(Debug, Clone, Serialize)]
pub struct BlockDecomposition {
    pub central_projections: Vec<ComplexMatrix>,
    pub block_sizes: Vec<usize>,
    pub multiplicities: Vec<usize>,
    /// `matrix_units[k][i][j]` is `e^{(k)}_{ij}`.
    pub matrix_units: Vec<Vec<Vec<ComplexMatrix>>>,
    /// Unitary `W` with `W* a W = ⊕ₖ (I_{m_k} ⊗ aₖ) ⊕ 0` for every `a ∈ A`.
    pub basis_change: ComplexMatrix,
    /// Seed of the central element that separated the blocks.
    pub seed_used: u64,
    pub residuals: DecompositionResiduals,
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct DecompositionResiduals {
    pub central_sum: f64,
    pub central_orthogonality: f64,
    pub centrality: f64,
    pub matrix_unit_relations: f64,
    pub matrix_units_in_algebra: f64,
    pub span: f64,
    pub unitarity: f64,
}

impl DecompositionResiduals {
    pub fn max(&self) -> f64 {
        [
            self.central_sum,
            self.central_orthogonality,
            self.centrality,
            self.matrix_unit_relations,
            self.matrix_units_in_algebra,
            self.span,
            self.unitarity,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

impl BlockDecomposition {
    /// `(n_k, m_k)` pairs in block order.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        self.block_sizes
            .iter()
            .cloned()
            .zip(self.multiplicities.iter().cloned())
            .collect()
    }

    pub fn block_count(&self) -> usize {
        self.block_sizes.len()
    }

    /// Diagonal matrix units `e^{(k)}_{ii}` over all blocks.
    pub fn diagonal_units(&self) -> Vec<ComplexMatrix> {
        self.matrix_units
            .iter()
            .flat_map(|units| (0..units.len()).map(move |i| units[i][i].clone()))
            .collect()
    }

    /// `W* x W`.
    pub fn block_diagonalize(&self, x: &ComplexMatrix) -> ComplexMatrix {
        &(&self.basis_change.adjoint() * x) * &self.basis_change
    }

    /// Largest residual of the full relations `e_ij e_st = δ_js e_it`,
    /// `e_ij* = e_ji`, `Σᵢ e_ii = c_k`. Quartic in the block size.
    pub fn full_relation_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (k, units) in self.matrix_units.iter().enumerate() {
            let n = units.len();
            let mut diag_sum = ComplexMatrix::zeros(self.basis_change.rows(), self.basis_change.rows());
            for i in 0..n {
                diag_sum += &units[i][i];
                for j in 0..n {
                    worst = worst.max(units[i][j].adjoint().distance(&units[j][i]));
                    for s in 0..n {
                        for t in 0..n {
                            let prod = &units[i][j] * &units[s][t];
                            let err = if j == s {
                                prod.distance(&units[i][t])
                            } else {
                                prod.hs_norm()
                            };
                            worst = worst.max(err);
                        }
                    }
                }
            }
            worst = worst.max(diag_sum.distance(&self.central_projections[k]));
        }
        worst
    }
}

/// Decompose a unital `A` into full matrix blocks.
pub fn wedderburn_decompose(a: &StarAlgebra, seed: u64) -> Result<BlockDecomposition> {
    let tol = *a.tol();
    let u = a.unit().ok_or(Error::NotUnital)?.clone();
    let centre = center(a)?;

    let mut found = None;
    for attempt in 0..SEED_ATTEMPTS {
        let s = seed.wrapping_add(attempt);
        if let Some(c) = central_projections(a, &centre, &u, s)? {
            found = Some((c, s));
            break;
        }
    }
    let (central, seed_used) = found.ok_or(Error::DegenerateRandomness {
        attempts: SEED_ATTEMPTS as usize,
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed_used ^ UNIT_SEED_SALT);
    let mut blocks = Vec::with_capacity(central.len());
    for c in central {
        let units = block_matrix_units(a, &c, &mut rng)?;
        let rank = c.trace().re;
        let rounded = rank.round();
        let n_k = units.len();
        if (rank - rounded).abs() > 1e-6 || !(rounded as usize).is_multiple_of(n_k) {
            return Err(Error::verification(
                "multiplicity rank(c_k)/n_k is an integer",
                format!("rank {rank:.9}, block size {n_k}"),
            ));
        }
        let m_k = rounded as usize / n_k;
        blocks.push((c, n_k, m_k, units));
    }

    let sum_sq: usize = blocks.iter().map(|b| b.1 * b.1).sum();
    if sum_sq != a.dim() {
        return Err(Error::verification(
            "dim A = Σ n_k²",
            format!("dim A = {}, Σ n_k² = {sum_sq}", a.dim()),
        ));
    }

    let n = a.ambient_dim();
    let weights = ComplexMatrix::from_diagonal(&(0..n).map(|i| i as f64).collect::<Vec<_>>());
    let fingerprint = |c: &ComplexMatrix| (c * &weights).trace().re;
    blocks.sort_by(|x, y| {
        y.1.cmp(&x.1)
            .then(y.2.cmp(&x.2))
            .then(fingerprint(&x.0).total_cmp(&fingerprint(&y.0)))
    });

    let mut decomposition = BlockDecomposition {
        central_projections: Vec::new(),
        block_sizes: Vec::new(),
        multiplicities: Vec::new(),
        matrix_units: Vec::new(),
        basis_change: ComplexMatrix::identity(n),
        seed_used,
        residuals: DecompositionResiduals::default(),
    };
    for (c, n_k, m_k, units) in blocks {
        decomposition.central_projections.push(c);
        decomposition.block_sizes.push(n_k);
        decomposition.multiplicities.push(m_k);
        decomposition.matrix_units.push(units);
    }
    decomposition.basis_change = assemble_basis_change(&decomposition, &u, &tol)?;
    decomposition.residuals = decomposition_residuals(a, &decomposition, &u)?;
    if decomposition.residuals.max() > tol.member {
        return Err(Error::verification(
            "block decomposition",
            format!("{:?}", decomposition.residuals),
        ));
    }
    Ok(decomposition)
}

/// Spectral projections of one random central element, cut down by the unit.
/// `None` when the element fails to separate the blocks.
fn central_projections(
    a: &StarAlgebra,
    centre: &StarAlgebra,
    u: &ComplexMatrix,
    seed: u64,
) -> Result<Option<Vec<ComplexMatrix>>> {
    let tol = a.tol();
    let zdim = centre.dim();
    if zdim == 1 {
        return Ok(Some(vec![u.clone()]));
    }
    let z = random_self_adjoint(centre, seed);
    let spectrum = hermitian_eig(&z, tol.spec)?;
    let width = tol.gap * spectrum.spectral_radius();
    let mut out = Vec::new();
    for cluster in spectrum.clusters(width) {
        let p = spectrum.projection_onto(cluster);
        let c = (&p * u).hermitian_part();
        // A nonzero projection has HS norm at least one.
        if c.hs_norm() > 0.5 {
            out.push(c);
        }
    }
    if out.len() != zdim {
        return Ok(None);
    }
    for c in &out {
        let (idem, sa) = c.projection_defect();
        if a.residual(c)? > tol.member
            || idem > tol.member
            || sa > tol.member
            || a.commutator_residual(c) > tol.member
        {
            return Ok(None);
        }
    }
    Ok(Some(out))
}

/// Matrix units of the simple block `cAc`.
fn block_matrix_units(
    a: &StarAlgebra,
    c: &ComplexMatrix,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<ComplexMatrix>>> {
    let tol = *a.tol();
    let n = a.ambient_dim();

    let mut diagonal = Vec::new();
    let mut rest = c.clone();
    while rest.hs_norm() > 0.5 {
        if diagonal.len() >= n {
            return Err(Error::verification(
                "block splits into at most N minimal projections",
                format!("{} found", diagonal.len()),
            ));
        }
        let e = minimal_subprojection(a, &rest, rng)?;
        rest = (&rest - &e).hermitian_part();
        diagonal.push(e);
    }

    // Partial isometries v_i with v_i v_i* = e_i and v_i* v_i = e_1.
    let e1 = diagonal[0].clone();
    let mut partials = vec![e1.clone()];
    for ei in &diagonal[1..] {
        let mut isometry = None;
        for _ in 0..8 {
            let x = random_element_with(a, rng);
            let w = &(ei * &x) * &e1;
            if w.hs_norm() > 1e-3 * x.hs_norm() {
                let gram = &w.adjoint() * &w;
                isometry = Some(&w * &pinv_sqrt(&gram.hermitian_part(), &tol)?);
                break;
            }
        }
        partials.push(isometry.ok_or_else(|| {
            Error::Degenerate("no nonzero element found in e_i A e_1".into())
        })?);
    }

    let k = partials.len();
    let mut units = vec![vec![ComplexMatrix::zeros(n, n); k]; k];
    for i in 0..k {
        for j in 0..k {
            units[i][j] = &partials[i] * &partials[j].adjoint();
        }
    }
    Ok(units)
}

fn assemble_basis_change(
    d: &BlockDecomposition,
    u: &ComplexMatrix,
    tol: &crate::tol::Tolerances,
) -> Result<ComplexMatrix> {
    let n = u.rows();
    let mut columns: Vec<Vec<C64>> = Vec::with_capacity(n);
    for (k, units) in d.matrix_units.iter().enumerate() {
        let spectrum = hermitian_eig(&units[0][0], tol.spec)?;
        let range_start = spectrum.eigenvalues.partition_point(|&l| l < 0.5);
        let vectors = spectrum.eigenvectors(range_start..spectrum.dim());
        if vectors.len() != d.multiplicities[k] {
            return Err(Error::verification(
                "rank e_11 = m_k",
                format!("{} vs {}", vectors.len(), d.multiplicities[k]),
            ));
        }
        for v in &vectors {
            let col = ComplexMatrix::from_columns(n, std::slice::from_ref(v));
            for unit_row in units.iter() {
                columns.push((&unit_row[0] * &col).column(0));
            }
        }
    }
    let complement = &ComplexMatrix::identity(n) - u;
    let spectrum = hermitian_eig(&complement.hermitian_part(), tol.spec)?;
    let start = spectrum.eigenvalues.partition_point(|&l| l < 0.5);
    columns.extend(spectrum.eigenvectors(start..spectrum.dim()));
    if columns.len() != n {
        return Err(Error::verification(
            "basis change is square",
            format!("{} columns for ambient {n}", columns.len()),
        ));
    }
    Ok(ComplexMatrix::from_columns(n, &columns))
}

fn decomposition_residuals(
    a: &StarAlgebra,
    d: &BlockDecomposition,
    u: &ComplexMatrix,
) -> Result<DecompositionResiduals> {
    let n = a.ambient_dim();
    let mut r = DecompositionResiduals::default();

    let mut sum = ComplexMatrix::zeros(n, n);
    for (k, c) in d.central_projections.iter().enumerate() {
        sum += c;
        r.centrality = r.centrality.max(a.commutator_residual(c));
        for (l, other) in d.central_projections.iter().enumerate() {
            let prod = c * other;
            let err = if k == l { prod.distance(c) } else { prod.hs_norm() };
            r.central_orthogonality = r.central_orthogonality.max(err);
        }
    }
    r.central_sum = sum.distance(u);

    // With e_ij = v_i v_j*, the relations reduce to v_j* v_s = δ_js e_11.
    let mut all_units = Vec::new();
    for (k, units) in d.matrix_units.iter().enumerate() {
        let e11 = &units[0][0];
        let partials: Vec<&ComplexMatrix> = units.iter().map(|row| &row[0]).collect();
        let mut diag_sum = ComplexMatrix::zeros(n, n);
        for (j, vj) in partials.iter().enumerate() {
            diag_sum += &units[j][j];
            for (s, vs) in partials.iter().enumerate() {
                let prod = &vj.adjoint() * vs;
                let err = if j == s { prod.distance(e11) } else { prod.hs_norm() };
                r.matrix_unit_relations = r.matrix_unit_relations.max(err);
            }
            r.matrix_units_in_algebra = r.matrix_units_in_algebra.max(a.residual(vj)?);
        }
        r.matrix_unit_relations = r
            .matrix_unit_relations
            .max(diag_sum.distance(&d.central_projections[k]));
        for row in units {
            all_units.extend(row.iter().cloned());
        }
    }
    let span = orthonormalize(n, n, &all_units, a.tol().rank)?;
    r.span = span.span_distance(a.basis())?;
    if span.dim() != a.dim() {
        r.span = r.span.max(1.0);
    }

    let w = &d.basis_change;
    r.unitarity = (&w.adjoint() * w).distance(&ComplexMatrix::identity(n));
    Ok(r)
}

/// The right ideal generated by one minimal projection per diagonal matrix
/// unit. Equals `A`.
pub fn socle(a: &StarAlgebra) -> Result<RightIdeal> {
    let d = wedderburn_decompose(a, 0)?;
    socle_with(a, &d)
}

pub fn socle_with(a: &StarAlgebra, d: &BlockDecomposition) -> Result<RightIdeal> {
    let ideal = generate_right_ideal(a, &d.diagonal_units())?;
    let distance = ideal.basis().span_distance(a.basis())?;
    if ideal.dim() != a.dim() || distance > a.tol().member {
        return Err(Error::verification(
            "socle = A",
            format!("socle dim {} vs {}, residual {distance:.3e}", ideal.dim(), a.dim()),
        ));
    }
    Ok(ideal)
}

/// `1 = Σ e_k a_k` with minimal projections `e_k`.
#[derive(Debug, Clone, Serialize)]
pub struct UnitPartition {
    pub minimal_projections: Vec<ComplexMatrix>,
    pub coefficients: Vec<ComplexMatrix>,
    pub residual: f64,
}

pub fn unit_partition_certificate(a: &StarAlgebra) -> Result<UnitPartition> {
    let d = wedderburn_decompose(a, 0)?;
    unit_partition_with(a, &d)
}

pub fn unit_partition_with(a: &StarAlgebra, d: &BlockDecomposition) -> Result<UnitPartition> {
    let u = a.unit().ok_or(Error::NotUnital)?;
    let minimal_projections = d.diagonal_units();
    // Σ e_k = 1, so a_k = e_k works.
    let coefficients = minimal_projections.clone();
    let mut sum = ComplexMatrix::zeros(a.ambient_dim(), a.ambient_dim());
    for (e, c) in minimal_projections.iter().zip(&coefficients) {
        if !is_minimal_projection(a, e)? {
            return Err(Error::verification("e_k minimal", "diagonal unit is not minimal"));
        }
        sum += &(e * c);
    }
    let residual = sum.distance(u);
    if residual > a.tol().member {
        return Err(Error::verification(
            "1 = Σ e_k a_k",
            format!("residual {residual:.3e}"),
        ));
    }
    Ok(UnitPartition {
        minimal_projections,
        coefficients,
        residual,
    })
}

/// `dim eAf`; at most one when both projections are minimal.
pub fn corner_dimension(a: &StarAlgebra, e: &ComplexMatrix, f: &ComplexMatrix) -> Result<usize> {
    check_projection_in(a, e)?;
    check_projection_in(a, f)?;
    let dim = a.corner(e, f)?.dim();
    if dim > 1
        && e.hs_norm() > a.tol().member
        && f.hs_norm() > a.tol().member
        && is_minimal_projection(a, e)?
        && is_minimal_projection(a, f)?
    {
        return Err(Error::verification(
            "dim eAf ≤ 1 for minimal e, f",
            format!("dim eAf = {dim}"),
        ));
    }
    Ok(dim)
}

/// One sampled maximal right ideal and what was checked on it.
#[derive(Debug, Clone, Serialize)]
pub struct MaximalIdealTrial {
    pub block: usize,
    /// Rank in `M_N` of the minimal complement `1 − p`.
    pub complement_rank: usize,
    /// `‖p − (1 − e)‖` against the planted minimal projection `e`.
    pub generator_error: f64,
    pub is_maximal: bool,
    pub corner_dim: usize,
    pub certificate: ProjectionCertificate,
}

#[derive(Debug, Clone, Serialize)]
pub struct DalesZelazkoReport {
    pub dim: usize,
    pub block_sizes: Vec<usize>,
    pub multiplicities: Vec<usize>,
    pub sum_of_squares: usize,
    pub trials: Vec<MaximalIdealTrial>,
    pub passed: bool,
}

/// Sample maximal right ideals `(1 − e)A` for random minimal projections `e`
/// and check each is singly generated by its support.
pub fn verify_dales_zelazko(a: &StarAlgebra, trials: usize, seed: u64) -> Result<DalesZelazkoReport> {
    let d = wedderburn_decompose(a, seed)?;
    verify_dales_zelazko_with(a, &d, trials, seed)
}

pub fn verify_dales_zelazko_with(
    a: &StarAlgebra,
    d: &BlockDecomposition,
    trials: usize,
    seed: u64,
) -> Result<DalesZelazkoReport> {
    let tol = *a.tol();
    let u = a.unit().ok_or(Error::NotUnital)?.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut records = Vec::with_capacity(trials);
    for t in 0..trials {
        let k = t % d.block_count();
        let e = random_minimal_projection(a, d, k, &u, &mut rng)?;
        let complement = &u - &e;
        let ideal = generate_right_ideal(a, std::slice::from_ref(&complement))?;
        let certificate = projection_generator(a, &ideal)?;
        let is_maximal = is_maximal_right_ideal(a, &ideal)?;
        let corner_dim = if is_maximal {
            maximal_ideal_minimality_certificate(a, &ideal)?.corner_basis.dim()
        } else {
            0
        };
        let q = &u - &certificate.p;
        records.push(MaximalIdealTrial {
            block: k,
            complement_rank: q.trace().re.round() as usize,
            generator_error: certificate.p.distance(&complement),
            is_maximal,
            corner_dim,
            certificate,
        });
    }
    let sum_of_squares = d.block_sizes.iter().map(|n| n * n).sum();
    let passed = sum_of_squares == a.dim()
        && records
            .iter()
            .all(|r| r.is_maximal && r.corner_dim == 1 && r.generator_error <= tol.member);
    Ok(DalesZelazkoReport {
        dim: a.dim(),
        block_sizes: d.block_sizes.clone(),
        multiplicities: d.multiplicities.clone(),
        sum_of_squares,
        trials: records,
        passed,
    })
}

/// `w e^{(k)}_{11} w*` for a random unitary `w` of `A` supported on block `k`.
pub fn random_minimal_projection(
    a: &StarAlgebra,
    d: &BlockDecomposition,
    k: usize,
    u: &ComplexMatrix,
    rng: &mut ChaCha8Rng,
) -> Result<ComplexMatrix> {
    let tol = a.tol();
    let c = &d.central_projections[k];
    let x = random_self_adjoint_with(a, rng);
    let h = (&(c * &x) * c).hermitian_part();
    let spectrum = hermitian_eig(&h, tol.spec)?;
    let rotation = spectrum.apply_complex(|t| C64::new(t.cos(), t.sin()));
    let w = &(u - c) + &(&(c * &rotation) * c);
    let e = &(&w * &d.matrix_units[k][0][0]) * &w.adjoint();
    Ok(e.hermitian_part())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::star_algebra::generate_algebra;

    fn e(n: usize, i: usize, j: usize) -> ComplexMatrix {
        ComplexMatrix::unit(n, n, i, j)
    }

    fn full(n: usize) -> StarAlgebra {
        let gens: Vec<_> = (0..n - 1).map(|i| e(n, i, i + 1)).collect();
        generate_algebra(n, &gens, true).unwrap()
    }

    fn diag(n: usize) -> StarAlgebra {
        let gens: Vec<_> = (0..n).map(|i| e(n, i, i)).collect();
        generate_algebra(n, &gens, false).unwrap()
    }

    fn doubled_m2() -> StarAlgebra {
        let g = ComplexMatrix::direct_sum(&[e(2, 0, 1), e(2, 0, 1)]);
        generate_algebra(4, &[g], false).unwrap()
    }

    #[test]
    fn decomposition_examples() {
        let d = wedderburn_decompose(&diag(3), 0).unwrap();
        assert_eq!(d.block_sizes, vec![1, 1, 1]);
        assert_eq!(d.multiplicities, vec![1, 1, 1]);

        let d = wedderburn_decompose(&full(3), 0).unwrap();
        assert_eq!(d.block_sizes, vec![3]);
        assert_eq!(d.multiplicities, vec![1]);
        assert!(d.full_relation_residual() < 1e-10);

        let d = wedderburn_decompose(&doubled_m2(), 0).unwrap();
        assert_eq!(d.block_sizes, vec![2]);
        assert_eq!(d.multiplicities, vec![2]);
        assert!(d.full_relation_residual() < 1e-10);
    }

    #[test]
    fn corner_algebra_keeps_zero_complement() {
        // A = M_2 ⊕ 0 inside M_3: unit diag(1,1,0).
        let g = ComplexMatrix::direct_sum(&[e(2, 0, 1), ComplexMatrix::zeros(1, 1)]);
        let a = generate_algebra(3, &[g], false).unwrap();
        let d = wedderburn_decompose(&a, 4).unwrap();
        assert_eq!(d.blocks(), vec![(2, 1)]);
        let x = &a.basis_elements()[0].clone();
        let y = d.block_diagonalize(x);
        // Last row and column vanish.
        for i in 0..3 {
            assert!(y.get(2, i).norm() < 1e-12 && y.get(i, 2).norm() < 1e-12);
        }
    }

    #[test]
    fn socle_and_unit_partition() {
        for a in [full(2), diag(3), doubled_m2()] {
            let s = socle(&a).unwrap();
            assert_eq!(s.dim(), a.dim());
            let part = unit_partition_certificate(&a).unwrap();
            assert!(part.residual < 1e-10);
        }
        let scalars = generate_algebra(2, &[ComplexMatrix::identity(2)], false).unwrap();
        let part = unit_partition_certificate(&scalars).unwrap();
        assert_eq!(part.minimal_projections.len(), 1);
        assert!(part.minimal_projections[0].distance(&ComplexMatrix::identity(2)) < 1e-10);
        assert_eq!(unit_partition_certificate(&diag(3)).unwrap().minimal_projections.len(), 3);
    }

    #[test]
    fn corner_dimension_examples() {
        let m2 = full(2);
        assert_eq!(corner_dimension(&m2, &e(2, 0, 0), &e(2, 1, 1)).unwrap(), 1);
        let id = ComplexMatrix::identity(2);
        assert_eq!(corner_dimension(&m2, &id, &id).unwrap(), 4);
        assert_eq!(corner_dimension(&diag(3), &e(3, 0, 0), &e(3, 1, 1)).unwrap(), 0);
        assert!(matches!(
            corner_dimension(&m2, &e(2, 0, 1), &id),
            Err(Error::NotAProjection(_))
        ));
    }

    #[test]
    fn dales_zelazko_examples() {
        let r = verify_dales_zelazko(&full(2), 10, 3).unwrap();
        assert!(r.passed);
        assert_eq!(r.trials.len(), 10);
        assert!(r.trials.iter().all(|t| t.complement_rank == 1));

        let c = generate_algebra(1, &[ComplexMatrix::identity(1)], false).unwrap();
        let r = verify_dales_zelazko(&c, 1, 0).unwrap();
        assert!(r.passed);
        assert!(r.trials[0].certificate.p.hs_norm() < 1e-12);

        let r = verify_dales_zelazko(&diag(2), 2, 0).unwrap();
        assert!(r.passed);
        let mut ps: Vec<f64> = r.trials.iter().map(|t| t.certificate.p.get(0, 0).re).collect();
        ps.sort_by(f64::total_cmp);
        assert!((ps[0] - 0.0).abs() < 1e-10 && (ps[1] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn non_unital_zero_algebra_is_rejected() {
        let z = generate_algebra(2, &[], false).unwrap();
        assert!(matches!(wedderburn_decompose(&z, 0), Err(Error::NotUnital)));
    }
}
