//! Finite-dimensional C*-algebras realized as *-closed, multiplicatively
//! closed subspaces of `M_N(ℂ)`.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::matcore::{checked_svd, orthonormalize, range_projection, ComplexMatrix, Subspace, C64};
use crate::tol::Tolerances;

#[derive(Debug, Clone)]
pub struct StarAlgebra {
    ambient_dim: usize,
    basis: Subspace,
    /// Orthonormal basis of a *-closed generating set; its words span `basis`.
    multipliers: Subspace,
    unit: Option<ComplexMatrix>,
    is_unitized: bool,
    tol: Tolerances,
}

/// A matrix checked to lie in a particular algebra.
#[derive(Debug, Clone)]
pub struct AlgebraElement<'a> {
    parent: &'a StarAlgebra,
    matrix: ComplexMatrix,
}

impl AlgebraElement<'_> {
    pub fn parent(&self) -> &StarAlgebra {
        self.parent
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }
}

/// Smallest *-subalgebra of `M_N(ℂ)` containing `gens` (and `I_N` if asked).
pub fn generate_algebra(
    n: usize,
    gens: &[ComplexMatrix],
    include_identity: bool,
) -> Result<StarAlgebra> {
    StarAlgebra::generate(n, gens, include_identity, Tolerances::default())
}

impl StarAlgebra {
    pub fn generate(
        n: usize,
        gens: &[ComplexMatrix],
        include_identity: bool,
        tol: Tolerances,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters("ambient dimension must be positive".into()));
        }
        let mut seeds = Vec::with_capacity(2 * gens.len() + 1);
        for g in gens {
            if g.shape() != (n, n) {
                return Err(Error::ShapeMismatch {
                    expected: (n, n),
                    found: g.shape(),
                });
            }
            seeds.push(g.clone());
            seeds.push(g.adjoint());
        }
        if include_identity {
            seeds.push(ComplexMatrix::identity(n));
        }
        let multipliers = orthonormalize(n, n, &seeds, tol.rank)?;
        let basis = close_under_products(n, &multipliers, &tol)?;
        Ok(Self::assemble(n, basis, multipliers, tol))
    }

    /// Wrap an explicit spanning set, rejecting it unless it is already a
    /// *-algebra.
    pub fn from_basis(n: usize, elements: &[ComplexMatrix], tol: Tolerances) -> Result<Self> {
        for e in elements {
            if e.shape() != (n, n) {
                return Err(Error::ShapeMismatch {
                    expected: (n, n),
                    found: e.shape(),
                });
            }
        }
        let basis = orthonormalize(n, n, elements, tol.rank)?;
        let algebra = Self::assemble(n, basis.clone(), basis, tol);
        let residual = algebra.closure_residual()?;
        if residual > tol.member {
            return Err(Error::verification(
                "closed under adjoint and product",
                format!("closure residual {residual:.3e}"),
            ));
        }
        Ok(algebra)
    }

    fn assemble(n: usize, basis: Subspace, multipliers: Subspace, tol: Tolerances) -> Self {
        let unit = detect_unit(&basis, &tol);
        let is_unitized = false;
        StarAlgebra {
            ambient_dim: n,
            basis,
            multipliers,
            unit,
            is_unitized,
            tol,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
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

    /// A generating set whose words span the algebra.
    pub fn generating_set(&self) -> &[ComplexMatrix] {
        self.multipliers.basis()
    }

    pub fn unit(&self) -> Option<&ComplexMatrix> {
        self.unit.as_ref()
    }

    pub fn is_unitized(&self) -> bool {
        self.is_unitized
    }

    pub fn tol(&self) -> &Tolerances {
        &self.tol
    }

    pub fn with_tolerances(mut self, tol: Tolerances) -> Self {
        self.tol = tol;
        self
    }

    pub fn residual(&self, x: &ComplexMatrix) -> Result<f64> {
        self.basis.relative_residual(x)
    }

    pub fn contains(&self, x: &ComplexMatrix) -> Result<bool> {
        Ok(self.residual(x)? <= self.tol.member)
    }

    pub fn element(&self, matrix: ComplexMatrix) -> Result<AlgebraElement<'_>> {
        let residual = self.residual(&matrix)?;
        if residual > self.tol.member {
            return Err(Error::NotInAlgebra { residual });
        }
        Ok(AlgebraElement {
            parent: self,
            matrix,
        })
    }

    /// Largest membership residual of `b*` and `b b′` over basis elements.
    pub fn closure_residual(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        let basis = self.basis.basis();
        for b in basis {
            worst = worst.max(self.residual(&b.adjoint())?);
            for c in basis {
                worst = worst.max(self.residual(&(b * c))?);
            }
        }
        Ok(worst)
    }

    /// Largest `‖[z, b]‖` over basis elements `b`.
    pub fn commutator_residual(&self, z: &ComplexMatrix) -> f64 {
        self.basis
            .basis()
            .iter()
            .map(|b| z.commutator(b).hs_norm())
            .fold(0.0, f64::max)
    }

    /// `span{x b y : b ∈ basis}`, e.g. the corner `eAe` or `eAf`.
    pub fn corner(&self, left: &ComplexMatrix, right: &ComplexMatrix) -> Result<Subspace> {
        let n = self.ambient_dim;
        let mut s = Subspace::zero(n, n);
        let scale = left.op_norm() * right.op_norm();
        for b in self.basis.basis() {
            s.try_push(&(&(left * b) * right), scale, self.tol.rank)?;
        }
        Ok(s)
    }
}

/// Extend `multipliers` to the span of all words in it.
fn close_under_products(n: usize, multipliers: &Subspace, tol: &Tolerances) -> Result<Subspace> {
    let mut basis = multipliers.clone();
    let mut frontier: Vec<usize> = (0..basis.dim()).collect();
    let mut rounds = 0;
    let cap = n * n;
    while !frontier.is_empty() {
        rounds += 1;
        if rounds > cap {
            return Err(Error::ClosureDidNotStabilize {
                rounds,
                dim: basis.dim(),
            });
        }
        let start = basis.dim();
        for &i in &frontier {
            let left = basis.basis()[i].clone();
            for g in multipliers.basis() {
                // Both factors have unit HS norm, so the product has HS norm ≤ 1.
                basis.try_push(&(&left * g), 1.0, tol.rank)?;
                if basis.dim() > cap {
                    return Err(Error::ClosureDidNotStabilize {
                        rounds,
                        dim: basis.dim(),
                    });
                }
            }
        }
        frontier = (start..basis.dim()).collect();
    }
    Ok(basis)
}

fn detect_unit(basis: &Subspace, tol: &Tolerances) -> Option<ComplexMatrix> {
    if basis.is_zero() {
        return None;
    }
    let (n, _) = basis.shape();
    let mut positive = ComplexMatrix::zeros(n, n);
    for b in basis.basis() {
        positive += &(&b.adjoint() * b);
    }
    let u = range_projection(&positive, tol).ok()?;
    if basis.relative_residual(&u).ok()? > tol.member {
        return None;
    }
    let acts_as_unit = basis
        .basis()
        .iter()
        .all(|b| (&u * b).distance(b) <= tol.member && (b * &u).distance(b) <= tol.member);
    acts_as_unit.then_some(u)
}

/// The identity of `A` (not necessarily `I_N`), when it exists.
pub fn unit_of(a: &StarAlgebra) -> Option<ComplexMatrix> {
    detect_unit(&a.basis, &a.tol)
}

/// `span(A ∪ {I_N})`; returns `A` unchanged when it already contains `I_N`.
pub fn unitize(a: &StarAlgebra) -> Result<StarAlgebra> {
    let n = a.ambient_dim;
    let id = ComplexMatrix::identity(n);
    if a.contains(&id)? {
        return Ok(a.clone());
    }
    let mut basis = a.basis.clone();
    basis.try_push(&id, id.hs_norm(), a.tol.rank)?;
    let mut multipliers = a.multipliers.clone();
    multipliers.try_push(&id, id.hs_norm(), a.tol.rank)?;
    Ok(StarAlgebra {
        ambient_dim: n,
        basis,
        multipliers,
        unit: Some(id),
        is_unitized: true,
        tol: a.tol,
    })
}

/// Center of `A`: the null space of `α ↦ ([Σ αᵢ bᵢ, g])_g` over a generating set.
pub fn center(a: &StarAlgebra) -> Result<StarAlgebra> {
    let n = a.ambient_dim;
    let d = a.dim();
    if d == 0 {
        return StarAlgebra::generate(n, &[], false, a.tol);
    }
    let gens = a.generating_set();
    let block = n * n;
    let rows = (gens.len() * block).max(d);
    let mut stacked = DMatrix::<C64>::zeros(rows, d);
    for (i, b) in a.basis_elements().iter().enumerate() {
        for (k, g) in gens.iter().enumerate() {
            let c = b.commutator(g);
            for (r, z) in c.storage().iter().enumerate() {
                stacked[(k * block + r, i)] = *z;
            }
        }
    }
    let svd = checked_svd(&stacked, true, true)?;
    let v_t = svd
        .v_t
        .ok_or_else(|| Error::NumericalFailure("SVD returned no right singular vectors".into()))?;
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cutoff = a.tol.rank * sigma_max.max(1.0);

    let mut central = Vec::new();
    for (j, &sigma) in svd.singular_values.iter().enumerate() {
        if sigma <= cutoff {
            let coefficients: Vec<C64> = (0..d).map(|i| v_t[(j, i)].conj()).collect();
            central.push(a.basis.combine(&coefficients));
        }
    }
    // The null vectors are already an orthonormal basis of a *-algebra.
    // Re-expanding them under products would turn rounding in nearly
    // parallel pairs {c, c*} into spurious directions.
    StarAlgebra::from_basis(n, &central, a.tol)
}

/// Seeded random self-adjoint element of `A`.
pub fn random_self_adjoint(a: &StarAlgebra, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_self_adjoint_with(a, &mut rng)
}

/// Real standard-normal combination of the Hermitian parts `(b + b*)/2` and
/// `(b − b*)/2i` of every basis element.
pub fn random_self_adjoint_with<R: Rng + ?Sized>(a: &StarAlgebra, rng: &mut R) -> ComplexMatrix {
    let n = a.ambient_dim;
    let mut out = ComplexMatrix::zeros(n, n);
    for b in a.basis_elements() {
        let g: f64 = rng.sample(StandardNormal);
        let h: f64 = rng.sample(StandardNormal);
        out.axpy(C64::new(g, 0.0), &b.hermitian_part());
        out.axpy(C64::new(h, 0.0), &b.skew_part());
    }
    out.hermitian_part()
}

/// Complex standard-normal combination of the basis.
pub fn random_element_with<R: Rng + ?Sized>(a: &StarAlgebra, rng: &mut R) -> ComplexMatrix {
    let n = a.ambient_dim;
    let mut out = ComplexMatrix::zeros(n, n);
    for b in a.basis_elements() {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        out.axpy(C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2, b);
    }
    out
}
