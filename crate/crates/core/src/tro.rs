//! Ternary rings of operators `Z ⊆ M_{m×n}(ℂ)` viewed as right Hilbert
//! modules over `Z*Z`, their classification as `⊕ B(ℂ^{n_k}, ℂ^{m_k})`, and
//! the correspondence between submodules of `Z` and right ideals of `ZZ*`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideals::{generate_right_ideal, is_maximal_right_ideal, RightIdeal};
use crate::matcore::{hermitian_eig, orthonormalize, pinv_sqrt, ComplexMatrix, Subspace, C64};
use crate::star_algebra::StarAlgebra;
use crate::structure::{random_minimal_projection, wedderburn_decompose, BlockDecomposition};
use crate::tol::Tolerances;

/// Triples beyond this basis size are sampled rather than enumerated.
pub const EXHAUSTIVE_TRIPLE_DIM: usize = 12;
const SAMPLED_TRIPLES: usize = 512;

#[derive(Debug, Clone)]
pub struct Tro {
    rows: usize,
    cols: usize,
    basis: Subspace,
    left: StarAlgebra,
    right: StarAlgebra,
    tol: Tolerances,
}

pub fn generate_tro(m: usize, n: usize, gens: &[ComplexMatrix]) -> Result<Tro> {
    Tro::generate(m, n, gens, Tolerances::default())
}

fn products(
    lhs: &[ComplexMatrix],
    rhs: &[ComplexMatrix],
    f: impl Fn(&ComplexMatrix, &ComplexMatrix) -> ComplexMatrix,
) -> Vec<ComplexMatrix> {
    lhs.iter()
        .flat_map(|x| rhs.iter().map(|y| f(x, y)).collect::<Vec<_>>())
        .collect()
}

impl Tro {
    /// Ternary closure of `gens`. With `S = span gens` and `L` the *-algebra
    /// generated by `SS*`, the closure is `S + L·S`.
    pub fn generate(m: usize, n: usize, gens: &[ComplexMatrix], tol: Tolerances) -> Result<Tro> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParameters("TRO shape must be positive".into()));
        }
        for g in gens {
            if g.shape() != (m, n) {
                return Err(Error::ShapeMismatch {
                    expected: (m, n),
                    found: g.shape(),
                });
            }
            if !g.is_finite() {
                return Err(Error::InvalidMatrix("non-finite generator".into()));
            }
        }
        let span = orthonormalize(m, n, gens, tol.rank)?;
        let s = span.basis();
        let left = StarAlgebra::generate(m, &products(s, s, |x, y| x * &y.adjoint()), false, tol)?;
        let right = StarAlgebra::generate(n, &products(s, s, |x, y| &x.adjoint() * y), false, tol)?;

        let mut candidates = s.to_vec();
        candidates.extend(products(left.basis_elements(), s, |l, x| l * x));
        let basis = orthonormalize(m, n, &candidates, tol.rank)?;
        let tro = Tro {
            rows: m,
            cols: n,
            basis,
            left,
            right,
            tol,
        };
        tro.validate()?;
        Ok(tro)
    }

    fn validate(&self) -> Result<()> {
        let tol = self.tol.member;
        let z = self.basis.basis();
        let lz = products(self.left.basis_elements(), z, |l, x| l * x);
        let zr = products(z, self.right.basis_elements(), |x, r| x * r);

        let closure = lz
            .iter()
            .chain(&zr)
            .try_fold(0.0f64, |acc, x| Ok::<_, Error>(acc.max(self.basis.relative_residual(x)?)))?;
        if closure > tol {
            return Err(Error::verification(
                "ternary closure",
                format!("residual {closure:.3e}"),
            ));
        }
        // ZZ* and Z*Z must be spanned by the pairwise products of Z itself.
        let zz = orthonormalize(self.rows, self.rows, &products(z, z, |x, y| x * &y.adjoint()), self.tol.rank)?;
        let zsz = orthonormalize(self.cols, self.cols, &products(z, z, |x, y| &x.adjoint() * y), self.tol.rank)?;
        let left_gap = zz.span_distance(self.left.basis())?;
        let right_gap = zsz.span_distance(self.right.basis())?;
        if left_gap > tol || right_gap > tol {
            return Err(Error::verification(
                "ZZ* and Z*Z are spanned by products",
                format!("left {left_gap:.3e}, right {right_gap:.3e}"),
            ));
        }
        let lz_span = orthonormalize(self.rows, self.cols, &lz, self.tol.rank)?;
        let zr_span = orthonormalize(self.rows, self.cols, &zr, self.tol.rank)?;
        if lz_span.dim() != self.dim() || zr_span.dim() != self.dim() {
            return Err(Error::Degenerate(format!(
                "(ZZ*)Z has dim {}, Z(Z*Z) has dim {}, Z has dim {}",
                lz_span.dim(),
                zr_span.dim(),
                self.dim()
            )));
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn basis(&self) -> &Subspace {
        &self.basis
    }

    pub fn basis_elements(&self) -> &[ComplexMatrix] {
        self.basis.basis()
    }

    pub fn left_algebra(&self) -> &StarAlgebra {
        &self.left
    }

    pub fn right_algebra(&self) -> &StarAlgebra {
        &self.right
    }

    pub fn tol(&self) -> &Tolerances {
        &self.tol
    }

    pub fn contains(&self, x: &ComplexMatrix) -> Result<bool> {
        self.basis.contains(x, self.tol.member)
    }

    /// `max ‖xy*z − P(xy*z)‖` over every basis triple.
    pub fn triple_closure_residual(&self) -> Result<f64> {
        let z = self.basis.basis();
        let mut worst: f64 = 0.0;
        for x in z {
            for y in z {
                let xy = x * &y.adjoint();
                for w in z {
                    worst = worst.max(self.basis.relative_residual(&(&xy * w))?);
                }
            }
        }
        Ok(worst)
    }

    /// `{U z V* : z ∈ Z}`.
    pub fn conjugate(&self, u: &ComplexMatrix, v: &ComplexMatrix) -> Result<Tro> {
        let vt = v.adjoint();
        let gens: Vec<_> = self.basis.basis().iter().map(|z| &(u * z) * &vt).collect();
        Tro::generate(u.rows(), v.rows(), &gens, self.tol)
    }

    /// Random element with complex Gaussian coordinates.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> ComplexMatrix {
        let coefficients: Vec<C64> = (0..self.dim())
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                C64::new(re, im) / std::f64::consts::SQRT_2
            })
            .collect();
        self.basis.combine(&coefficients)
    }
}

/// `[[ZZ*, Z], [Z*, Z*Z]]` on `ℂ^{m+n}`.
pub fn linking_algebra(z: &Tro) -> Result<StarAlgebra> {
    let size = z.rows + z.cols;
    let gens: Vec<_> = z
        .basis_elements()
        .iter()
        .map(|x| {
            let mut g = ComplexMatrix::zeros(size, size);
            g.place(0, z.rows, x);
            g
        })
        .collect();
    let linking = StarAlgebra::generate(size, &gens, false, z.tol)?;
    let expected = z.left.dim() + z.right.dim() + 2 * z.dim();
    if linking.dim() != expected {
        return Err(Error::verification(
            "dim linking = dim ZZ* + dim Z*Z + 2 dim Z",
            format!("{} vs {expected}", linking.dim()),
        ));
    }
    Ok(linking)
}

#[derive(Debug, Clone, Serialize)]
pub struct TroClassification {
    /// `(m_k, n_k)`, sorted descending, ties broken by multiplicity.
    pub blocks: Vec<(usize, usize)>,
    /// How many times each block repeats in the given representation.
    pub multiplicities: Vec<usize>,
    /// `(V_k, W_k)` with `V_k* z W_k = I_{r_k} ⊗ T_k(z)`.
    pub block_isometries: Vec<(ComplexMatrix, ComplexMatrix)>,
    pub dims: ClassificationDims,
    pub residuals: ClassificationResiduals,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ClassificationDims {
    pub tro: usize,
    pub left: usize,
    pub right: usize,
    pub sum_mn: usize,
    pub sum_m_sq: usize,
    pub sum_n_sq: usize,
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct ClassificationResiduals {
    pub isometry: f64,
    pub reconstruction: f64,
    pub ternary: f64,
    pub triples_checked: usize,
}

impl TroClassification {
    /// `T(z) = ⊕ₖ T_k(z)`, of shape `Σ m_k × Σ n_k`.
    pub fn apply(&self, z: &ComplexMatrix) -> ComplexMatrix {
        let rows: usize = self.blocks.iter().map(|b| b.0).sum();
        let cols: usize = self.blocks.iter().map(|b| b.1).sum();
        let mut out = ComplexMatrix::zeros(rows.max(1), cols.max(1));
        let (mut r0, mut c0) = (0, 0);
        for (k, &(m, n)) in self.blocks.iter().enumerate() {
            out.place(r0, c0, &self.block_image(k, z));
            r0 += m;
            c0 += n;
        }
        out
    }

    /// `T_k(z)`.
    pub fn block_image(&self, k: usize, z: &ComplexMatrix) -> ComplexMatrix {
        let (m, n) = self.blocks[k];
        let (v, w) = &self.block_isometries[k];
        let v0 = v.submatrix(0, 0, v.rows(), m);
        let w0 = w.submatrix(0, 0, w.rows(), n);
        &(&v0.adjoint() * z) * &w0
    }

    pub fn dims_consistent(&self) -> bool {
        let d = &self.dims;
        d.tro == d.sum_mn && d.left == d.sum_m_sq && d.right == d.sum_n_sq
    }
}

/// Classify `Z` as `⊕ₖ B(ℂ^{n_k}, ℂ^{m_k})` with explicit isometries.
pub fn classify_tro(z: &Tro, seed: u64) -> Result<TroClassification> {
    let tol = z.tol;
    if z.dim() == 0 {
        return Ok(TroClassification {
            blocks: Vec::new(),
            multiplicities: Vec::new(),
            block_isometries: Vec::new(),
            dims: ClassificationDims::default(),
            residuals: ClassificationResiduals::default(),
        });
    }
    let left = wedderburn_decompose(&z.left, seed)?;
    let mut parts = Vec::with_capacity(left.block_count());
    for k in 0..left.block_count() {
        parts.push(classify_block(z, &left, k, seed.wrapping_add(k as u64 + 1))?);
    }
    parts.sort_by(|x, y| y.0.cmp(&x.0).then(y.1.cmp(&x.1)).then(y.2.cmp(&x.2)));

    let mut c = TroClassification {
        blocks: parts.iter().map(|p| (p.0, p.1)).collect(),
        multiplicities: parts.iter().map(|p| p.2).collect(),
        block_isometries: parts.into_iter().map(|p| (p.3, p.4)).collect(),
        dims: ClassificationDims::default(),
        residuals: ClassificationResiduals::default(),
    };
    c.dims = ClassificationDims {
        tro: z.dim(),
        left: z.left.dim(),
        right: z.right.dim(),
        sum_mn: c.blocks.iter().map(|b| b.0 * b.1).sum(),
        sum_m_sq: c.blocks.iter().map(|b| b.0 * b.0).sum(),
        sum_n_sq: c.blocks.iter().map(|b| b.1 * b.1).sum(),
    };
    if !c.dims_consistent() {
        return Err(Error::verification(
            "dim Z = Σ m_k n_k, dim ZZ* = Σ m_k², dim Z*Z = Σ n_k²",
            format!("{:?}", c.dims),
        ));
    }

    let mut isometry: f64 = 0.0;
    for (v, w) in &c.block_isometries {
        isometry = isometry.max((&v.adjoint() * v).distance(&ComplexMatrix::identity(v.cols())));
        isometry = isometry.max((&w.adjoint() * w).distance(&ComplexMatrix::identity(w.cols())));
    }
    let mut reconstruction: f64 = 0.0;
    for x in z.basis_elements() {
        let mut rebuilt = ComplexMatrix::zeros(z.rows, z.cols);
        for (k, (v, w)) in c.block_isometries.iter().enumerate() {
            let copies = ComplexMatrix::identity(c.multiplicities[k]);
            rebuilt += &(&(v * &copies.kron(&c.block_image(k, x))) * &w.adjoint());
        }
        reconstruction = reconstruction.max(rebuilt.distance(x));
    }
    let (ternary, triples_checked) = ternary_residual(z, &c, seed)?;
    c.residuals = ClassificationResiduals {
        isometry,
        reconstruction,
        ternary,
        triples_checked,
    };
    if isometry.max(reconstruction).max(ternary) > tol.member {
        return Err(Error::verification(
            "ternary isomorphism onto ⊕ B(ℂ^n_k, ℂ^m_k)",
            format!("{:?}", c.residuals),
        ));
    }
    Ok(c)
}

/// `(m_k, n_k, r_k, V_k, W_k)` for the block cut out by `c_k`.
#[allow(clippy::type_complexity)]
fn classify_block(
    z: &Tro,
    left: &BlockDecomposition,
    k: usize,
    seed: u64,
) -> Result<(usize, usize, usize, ComplexMatrix, ComplexMatrix)> {
    let tol = z.tol;
    let (m, n) = (z.rows, z.cols);
    let c = &left.central_projections[k];
    let a = left.block_sizes[k];
    let r = left.multiplicities[k];

    let cut: Vec<_> = z.basis_elements().iter().map(|x| c * x).collect();
    let zk = orthonormalize(m, n, &cut, tol.rank)?;
    let rk = StarAlgebra::generate(
        n,
        &products(zk.basis(), zk.basis(), |x, y| &x.adjoint() * y),
        false,
        tol,
    )?;
    let right = wedderburn_decompose(&rk, seed)?;
    if right.block_count() != 1 {
        return Err(Error::verification(
            "(c_k Z)*(c_k Z) is simple",
            format!("{} blocks", right.block_count()),
        ));
    }
    let b = right.block_sizes[0];
    if right.multiplicities[0] != r {
        return Err(Error::verification(
            "left and right multiplicities agree",
            format!("{r} vs {}", right.multiplicities[0]),
        ));
    }

    let e = &left.matrix_units[k];
    let f = &right.matrix_units[0];
    // e_11 Z f_11 is one-dimensional; its polar part links the two corners.
    let corner = zk
        .basis()
        .iter()
        .map(|x| &(&e[0][0] * x) * &f[0][0])
        .max_by(|p, q| p.hs_norm().total_cmp(&q.hs_norm()))
        .ok_or_else(|| Error::Degenerate("empty block".into()))?;
    let gram = (&corner.adjoint() * &corner).hermitian_part();
    let link = &corner * &pinv_sqrt(&gram, &tol)?;
    let link_defect = (&link * &link.adjoint())
        .distance(&e[0][0])
        .max((&link.adjoint() * &link).distance(&f[0][0]));
    if link_defect > tol.member {
        return Err(Error::verification(
            "e_11 Z f_11 is spanned by a partial isometry",
            format!("defect {link_defect:.3e}"),
        ));
    }

    let spectrum = hermitian_eig(&e[0][0], tol.spec)?;
    let start = spectrum.eigenvalues.partition_point(|&l| l < 0.5);
    let frame = spectrum.eigenvectors(start..spectrum.dim());
    let link_t = link.adjoint();
    let mut v_cols = Vec::with_capacity(a * r);
    let mut w_cols = Vec::with_capacity(b * r);
    for u in &frame {
        let u = ComplexMatrix::from_columns(m, std::slice::from_ref(u));
        for row in e {
            v_cols.push((&row[0] * &u).column(0));
        }
        let back = &link_t * &u;
        for row in f {
            w_cols.push((&row[0] * &back).column(0));
        }
    }
    Ok((
        a,
        b,
        r,
        ComplexMatrix::from_columns(m, &v_cols),
        ComplexMatrix::from_columns(n, &w_cols),
    ))
}

fn ternary_residual(z: &Tro, c: &TroClassification, seed: u64) -> Result<(f64, usize)> {
    let basis = z.basis_elements();
    let d = basis.len();
    let images: Vec<_> = basis.iter().map(|x| c.apply(x)).collect();
    let check = |i: usize, j: usize, l: usize| {
        let lhs = c.apply(&(&(&basis[i] * &basis[j].adjoint()) * &basis[l]));
        let rhs = &(&images[i] * &images[j].adjoint()) * &images[l];
        lhs.distance(&rhs)
    };
    let mut worst: f64 = 0.0;
    if d <= EXHAUSTIVE_TRIPLE_DIM {
        for i in 0..d {
            for j in 0..d {
                for l in 0..d {
                    worst = worst.max(check(i, j, l));
                }
            }
        }
        Ok((worst, d * d * d))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..SAMPLED_TRIPLES {
            worst = worst.max(check(
                rng.random_range(0..d),
                rng.random_range(0..d),
                rng.random_range(0..d),
            ));
        }
        Ok((worst, SAMPLED_TRIPLES))
    }
}

/// A right `Z*Z`-submodule of `Z`.
#[derive(Debug, Clone, Serialize)]
pub struct Submodule {
    generators: Vec<ComplexMatrix>,
    basis: Subspace,
    fg_certificate: Option<FgCertificate>,
}

/// `e = Σ z_k z_k*` with `z_k ∈ W` and `e w = w` on `W`.
#[derive(Debug, Clone, Serialize)]
pub struct FgCertificate {
    pub generators: Vec<ComplexMatrix>,
    pub e: ComplexMatrix,
    pub residuals: FgResiduals,
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct FgResiduals {
    /// `max ‖e w − w‖` over a basis of `W`.
    pub reproduction: f64,
    pub telescoping: f64,
    pub idempotent: f64,
    pub self_adjoint: f64,
    pub e_in_ww_star: f64,
    pub generators_in_submodule: f64,
}

impl FgResiduals {
    pub fn max(&self) -> f64 {
        [
            self.reproduction,
            self.telescoping,
            self.idempotent,
            self.self_adjoint,
            self.e_in_ww_star,
            self.generators_in_submodule,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

impl Submodule {
    pub fn zero(z: &Tro) -> Submodule {
        Submodule {
            generators: Vec::new(),
            basis: Subspace::zero(z.rows, z.cols),
            fg_certificate: None,
        }
    }

    /// Takes a spanning set already closed under `Z*Z` and checks that it is.
    pub fn spanned_by(z: &Tro, elements: &[ComplexMatrix]) -> Result<Submodule> {
        check_in_tro(z, elements)?;
        let basis = orthonormalize(z.rows, z.cols, elements, z.tol.rank)?;
        let w = Submodule {
            generators: basis.basis().to_vec(),
            basis,
            fg_certificate: None,
        };
        w.check_closure(z)?;
        Ok(w)
    }

    fn check_closure(&self, z: &Tro) -> Result<()> {
        let residual = self.closure_residual(z)?;
        if residual > z.tol.member {
            return Err(Error::verification(
                "right-module closure W·(Z*Z) ⊆ W",
                format!("residual {residual:.3e}"),
            ));
        }
        Ok(())
    }

    pub fn closure_residual(&self, z: &Tro) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for w in self.basis.basis() {
            for r in z.right.basis_elements() {
                worst = worst.max(self.basis.relative_residual(&(w * r))?);
            }
        }
        Ok(worst)
    }

    pub fn generators(&self) -> &[ComplexMatrix] {
        &self.generators
    }

    pub fn basis(&self) -> &Subspace {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_zero()
    }

    pub fn fg_certificate(&self) -> Option<&FgCertificate> {
        self.fg_certificate.as_ref()
    }

    pub fn certify(&mut self) -> Result<&FgCertificate> {
        let cert = finite_generation_certificate(self)?;
        Ok(self.fg_certificate.insert(cert))
    }
}

fn check_in_tro(z: &Tro, elements: &[ComplexMatrix]) -> Result<()> {
    for (index, g) in elements.iter().enumerate() {
        if g.shape() != (z.rows, z.cols) {
            return Err(Error::ShapeMismatch {
                expected: (z.rows, z.cols),
                found: g.shape(),
            });
        }
        let residual = z.basis.relative_residual(g)?;
        if residual > z.tol.member {
            return Err(Error::MembershipViolation { index, residual });
        }
    }
    Ok(())
}

/// `span gens·(Z*Z)¹`.
pub fn generate_submodule(z: &Tro, gens: &[ComplexMatrix]) -> Result<Submodule> {
    check_in_tro(z, gens)?;
    let kept: Vec<_> = gens
        .iter()
        .filter(|g| g.hs_norm() > z.tol.spec)
        .cloned()
        .collect();
    let mut spanning = kept.clone();
    spanning.extend(products(&kept, z.right.basis_elements(), |g, r| g * r));
    let basis = orthonormalize(z.rows, z.cols, &spanning, z.tol.rank)?;
    let w = Submodule {
        generators: gens.to_vec(),
        basis,
        fg_certificate: None,
    };
    w.check_closure(z)?;
    Ok(w)
}

/// `J·Z` for a right ideal `J` of `ZZ*`.
pub fn ideal_to_submodule(z: &Tro, j: &RightIdeal) -> Result<Submodule> {
    Submodule::spanned_by(z, &products(j.basis().basis(), z.basis_elements(), |x, y| x * y))
}

/// `W·Z*` as a right ideal of `ZZ*`.
pub fn submodule_to_ideal(z: &Tro, w: &Submodule) -> Result<RightIdeal> {
    RightIdeal::spanned_by(
        &z.left,
        &products(w.basis.basis(), z.basis_elements(), |x, y| x * &y.adjoint()),
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct BrownRoundtrip {
    pub ideal: RightIdeal,
    /// Distance between `W` and `(WZ*)Z`.
    pub submodule_residual: f64,
    /// Distance between `J` and `(JZ)Z*`.
    pub ideal_residual: f64,
}

/// `J = WZ*`, checking `W = JZ` and `J = (JZ)Z*`.
pub fn submodule_ideal_roundtrip(z: &Tro, w: &Submodule) -> Result<BrownRoundtrip> {
    let ideal = submodule_to_ideal(z, w)?;
    let back = ideal_to_submodule(z, &ideal)?;
    let again = submodule_to_ideal(z, &back)?;
    Ok(BrownRoundtrip {
        submodule_residual: span_gap(&back.basis, &w.basis)?,
        ideal_residual: span_gap(again.basis(), ideal.basis())?,
        ideal,
    })
}

/// `W = JZ` and the distance between `J` and `WZ*`.
pub fn ideal_submodule_roundtrip(z: &Tro, j: &RightIdeal) -> Result<(Submodule, f64)> {
    let w = ideal_to_submodule(z, j)?;
    let back = submodule_to_ideal(z, &w)?;
    let residual = span_gap(back.basis(), j.basis())?;
    Ok((w, residual))
}

fn span_gap(x: &Subspace, y: &Subspace) -> Result<f64> {
    let d = x.span_distance(y)?;
    Ok(if x.dim() == y.dim() { d } else { d.max(1.0) })
}

/// Whether the proper submodule `W` is maximal: `WZ*` is a maximal right
/// ideal of `ZZ*` and `W = (WZ*)Z`.
pub fn is_maximal_submodule(z: &Tro, w: &Submodule) -> Result<bool> {
    if w.dim() >= z.dim() {
        return Err(Error::NotProper);
    }
    let roundtrip = submodule_ideal_roundtrip(z, w)?;
    if roundtrip.submodule_residual > z.tol.member {
        return Ok(false);
    }
    is_maximal_right_ideal(&z.left, &roundtrip.ideal)
}

/// With `S = Σ wᵢwᵢ*` over a basis of `W`, `zᵢ = S^{+1/2} wᵢ` gives
/// `Σ zᵢzᵢ* = e`, the range projection of `S`.
pub fn finite_generation_certificate(w: &Submodule) -> Result<FgCertificate> {
    if w.is_zero() {
        return Err(Error::ZeroSubmodule);
    }
    let (m, _) = w.basis.shape();
    let tol = Tolerances::default();
    let basis = w.basis.basis();
    let mut s = ComplexMatrix::zeros(m, m);
    for x in basis {
        s += &(x * &x.adjoint());
    }
    let root = pinv_sqrt(&s.hermitian_part(), &tol)?;
    let generators: Vec<_> = basis.iter().map(|x| &root * x).collect();
    let mut e = ComplexMatrix::zeros(m, m);
    for g in &generators {
        e += &(g * &g.adjoint());
    }
    let telescoped = e.hermitian_part();

    let (idem, sa) = telescoped.projection_defect();
    let mut r = FgResiduals {
        telescoping: telescoped.distance(&e),
        idempotent: idem,
        self_adjoint: sa,
        ..Default::default()
    };
    let e = telescoped;
    for x in basis {
        r.reproduction = r.reproduction.max((&e * x).distance(x));
    }
    for g in &generators {
        r.generators_in_submodule = r.generators_in_submodule.max(w.basis.relative_residual(g)?);
    }
    let ww = orthonormalize(m, m, &products(basis, basis, |x, y| x * &y.adjoint()), tol.rank)?;
    r.e_in_ww_star = ww.relative_residual(&e)?;
    if r.max() > tol.member {
        return Err(Error::verification(
            "e = Σ z_k z_k* reproduces W",
            format!("{r:?}"),
        ));
    }
    Ok(FgCertificate {
        generators,
        e,
        residuals: r,
    })
}

/// A maximal submodule `(1 − e)ZZ*·Z` for a random minimal projection `e` of
/// block `k` of `ZZ*`, returned with its ideal.
pub fn sample_maximal_submodule(
    z: &Tro,
    left: &BlockDecomposition,
    k: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(RightIdeal, Submodule)> {
    let u = z.left.unit().ok_or(Error::NotUnital)?.clone();
    let e = random_minimal_projection(&z.left, left, k, &u, rng)?;
    let j = generate_right_ideal(&z.left, &[&u - &e])?;
    let w = ideal_to_submodule(z, &j)?;
    Ok((j, w))
}
