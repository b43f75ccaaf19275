//! Right ideals of a matrix *-algebra and their projection generators.
//!
//! A finitely generated right ideal `J = Σ aⱼ A¹` is singly generated by a
//! projection: with `b = Σ aⱼ aⱼ*`, the element `b^{1/4}` lies in `J`, so
//! `b^{1/4} = Σ aⱼ cⱼ`. Writing `K = maxⱼ ‖cⱼ‖²` one gets `b^{1/2} ≤ nKb`,
//! which forces every nonzero eigenvalue of `b` to be at least `(nK)⁻²`.
//! The spectral projection of `b` across that gap is the generator `p`,
//! and `J = pA`. [`projection_generator`] runs this construction and keeps
//! every intermediate quantity in a [`ProjectionCertificate`].

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{
    checked_svd, hermitian_eig, orthonormalize, projection_above, range_projection, ComplexMatrix, Subspace,
    C64,
};
use crate::star_algebra::{random_self_adjoint_with, unitize, StarAlgebra};
use crate::tol::Tolerances;

/// Right submodule `J ⊆ A` with `JA ⊆ J`.
#[derive(Debug, Clone, Serialize)]
pub struct RightIdeal {
    generators: Vec<ComplexMatrix>,
    basis: Subspace,
    certificate: Option<ProjectionCertificate>,
}

/// Every quantity produced while extracting the projection generator.
#[derive(Debug, Clone, Serialize)]
pub struct ProjectionCertificate {
    pub p: ComplexMatrix,
    pub b: ComplexMatrix,
    pub coefficients: Vec<ComplexMatrix>,
    #[serde(rename = "K")]
    pub k: f64,
    pub n: usize,
    /// `(nK)⁻²`; `0` for the zero ideal.
    pub threshold: f64,
    /// Smallest eigenvalue of `b` outside the zero cluster.
    pub min_nonzero_eigenvalue: Option<f64>,
    pub b_spectrum: Vec<f64>,
    /// Cut used for the spectral projection.
    pub tau: f64,
    pub residuals: CertificateResiduals,
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct CertificateResiduals {
    pub coefficient_solve: f64,
    pub idempotent: f64,
    pub self_adjoint: f64,
    pub p_in_ideal: f64,
    pub pb_minus_b: f64,
    pub bp_minus_b: f64,
    /// `max ‖px − x‖` over a basis of `J`.
    pub ideal_in_pa: f64,
    /// `max` membership residual of `p·a` in `J` over a basis of `A`.
    pub pa_in_ideal: f64,
}

impl CertificateResiduals {
    pub fn max(&self) -> f64 {
        [
            self.coefficient_solve,
            self.idempotent,
            self.self_adjoint,
            self.p_in_ideal,
            self.pb_minus_b,
            self.bp_minus_b,
            self.ideal_in_pa,
            self.pa_in_ideal,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

impl ProjectionCertificate {
    fn zero(n: usize) -> Self {
        ProjectionCertificate {
            p: ComplexMatrix::zeros(n, n),
            b: ComplexMatrix::zeros(n, n),
            coefficients: Vec::new(),
            k: 0.0,
            n: 0,
            threshold: 0.0,
            min_nonzero_eigenvalue: None,
            b_spectrum: vec![0.0; n],
            tau: 0.0,
            residuals: CertificateResiduals::default(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.n == 0
    }
}

impl RightIdeal {
    /// Takes a spanning set that is already closed under right
    /// multiplication by `A` and checks that it is.
    pub fn spanned_by(a: &StarAlgebra, elements: &[ComplexMatrix]) -> Result<Self> {
        check_members(a, elements)?;
        let n = a.ambient_dim();
        let basis = orthonormalize(n, n, elements, a.tol().rank)?;
        let ideal = RightIdeal {
            generators: basis.basis().to_vec(),
            basis,
            certificate: None,
        };
        let residual = ideal.closure_residual(a)?;
        if residual > a.tol().member {
            return Err(Error::verification(
                "right-module closure",
                format!("residual {residual:.3e}"),
            ));
        }
        Ok(ideal)
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

    pub fn certificate(&self) -> Option<&ProjectionCertificate> {
        self.certificate.as_ref()
    }

    /// Compute and attach the projection certificate.
    pub fn certify(&mut self, a: &StarAlgebra) -> Result<&ProjectionCertificate> {
        let cert = projection_generator(a, self)?;
        Ok(self.certificate.insert(cert))
    }

    pub fn contains(&self, x: &ComplexMatrix, tol_member: f64) -> Result<bool> {
        self.basis.contains(x, tol_member)
    }

    /// Largest residual of `x·a` in `J` over basis `x` of `J`, `a` of `A`.
    pub fn closure_residual(&self, a: &StarAlgebra) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for x in self.basis.basis() {
            for y in a.basis_elements() {
                worst = worst.max(self.basis.relative_residual(&(x * y))?);
            }
        }
        Ok(worst)
    }
}

fn check_members(a: &StarAlgebra, elements: &[ComplexMatrix]) -> Result<()> {
    let n = a.ambient_dim();
    for (index, g) in elements.iter().enumerate() {
        if g.shape() != (n, n) {
            return Err(Error::ShapeMismatch {
                expected: (n, n),
                found: g.shape(),
            });
        }
        let residual = a.residual(g)?;
        if residual > a.tol().member {
            return Err(Error::MembershipViolation { index, residual });
        }
    }
    Ok(())
}

fn is_negligible(x: &ComplexMatrix, tol: &Tolerances) -> bool {
    x.hs_norm() <= tol.spec
}

/// `span{g·a : g ∈ gens, a ∈ basis(A¹)}`.
pub fn generate_right_ideal(a: &StarAlgebra, gens: &[ComplexMatrix]) -> Result<RightIdeal> {
    check_members(a, gens)?;
    let tol = *a.tol();
    let unitization = unitize(a)?;
    let n = a.ambient_dim();
    let mut basis = Subspace::zero(n, n);
    for g in gens {
        if is_negligible(g, &tol) {
            continue;
        }
        let scale = g.hs_norm();
        for y in unitization.basis_elements() {
            basis.try_push(&(g * y), scale, tol.rank)?;
        }
    }
    Ok(RightIdeal {
        generators: gens.to_vec(),
        basis,
        certificate: None,
    })
}

/// Extract the projection `p` with `J = pA` from the generators of `J`.
pub fn projection_generator(a: &StarAlgebra, j: &RightIdeal) -> Result<ProjectionCertificate> {
    let tol = *a.tol();
    let n_ambient = a.ambient_dim();
    let gens: Vec<&ComplexMatrix> = j
        .generators
        .iter()
        .filter(|g| !is_negligible(g, &tol))
        .collect();
    if gens.is_empty() || j.is_zero() {
        return Ok(ProjectionCertificate::zero(n_ambient));
    }
    let n = gens.len();

    let mut b = ComplexMatrix::zeros(n_ambient, n_ambient);
    for g in &gens {
        b += &(*g * &g.adjoint());
    }
    let spectrum = hermitian_eig(&b, tol.spec)?;
    let split = spectrum.zero_split(&tol);
    let rest_min = split.rest_min.ok_or(Error::GapNotFound)?;
    let window = tol.gap * split.scale;
    let tau = (split.zero_max.max(tol.spec * split.scale) * rest_min).sqrt();
    if tau - split.zero_max <= window || rest_min - tau <= window {
        return Err(Error::GapNotFound);
    }
    // The zero cluster is sent to f(0) = 0.
    let quarter = spectrum.apply(|t| if t > tau { t.powf(0.25) } else { 0.0 });

    let unitization = unitize(a)?;
    let coefficients = solve_coefficients(&gens, unitization.basis(), &quarter, &tol)?;
    let mut reconstruction = ComplexMatrix::zeros(n_ambient, n_ambient);
    for (g, c) in gens.iter().zip(&coefficients) {
        reconstruction += &(*g * c);
    }
    let coefficient_solve = reconstruction.distance(&quarter) / quarter.hs_norm().max(1.0);
    if coefficient_solve > tol.member {
        return Err(Error::CoefficientSolveFailed {
            residual: coefficient_solve,
        });
    }

    let k = coefficients
        .iter()
        .map(|c| c.op_norm().powi(2))
        .fold(0.0, f64::max);
    let threshold = ((n as f64) * k).powi(-2);
    if rest_min < threshold - tol.member {
        return Err(Error::verification(
            "spectrum of b avoids (0, (nK)^-2)",
            format!("smallest nonzero eigenvalue {rest_min:.6e} below {threshold:.6e}"),
        ));
    }

    let p = projection_above(&spectrum, tau, &tol)?.hermitian_part();
    let (idempotent, self_adjoint) = p.projection_defect();
    let scale_p = p.hs_norm().max(1.0);
    let mut residuals = CertificateResiduals {
        coefficient_solve,
        idempotent: idempotent / scale_p,
        self_adjoint: self_adjoint / scale_p,
        p_in_ideal: j.basis.relative_residual(&p)?,
        pb_minus_b: (&p * &b).distance(&b) / b.hs_norm().max(1.0),
        bp_minus_b: (&b * &p).distance(&b) / b.hs_norm().max(1.0),
        ..Default::default()
    };
    for x in j.basis.basis() {
        residuals.ideal_in_pa = residuals.ideal_in_pa.max((&p * x).distance(x));
    }
    for y in a.basis_elements() {
        residuals.pa_in_ideal = residuals.pa_in_ideal.max(j.basis.relative_residual(&(&p * y))?);
    }
    if residuals.max() > tol.member {
        return Err(Error::verification(
            "projection certificate",
            format!("{residuals:?}"),
        ));
    }

    Ok(ProjectionCertificate {
        p,
        b,
        coefficients,
        k,
        n,
        threshold,
        min_nonzero_eigenvalue: Some(rest_min),
        b_spectrum: spectrum.eigenvalues.clone(),
        tau,
        residuals,
    })
}

/// Minimum-norm least-squares solution of `Σⱼ gⱼ cⱼ = target` with every
/// `cⱼ` in the span of `basis`, solved jointly in all `j`.
fn solve_coefficients(
    gens: &[&ComplexMatrix],
    basis: &Subspace,
    target: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<Vec<ComplexMatrix>> {
    let d = basis.dim();
    let (r, c) = target.shape();
    let rows = r * c;
    let cols = gens.len() * d;
    let mut system = DMatrix::<C64>::zeros(rows, cols);
    for (jdx, g) in gens.iter().enumerate() {
        for (idx, y) in basis.basis().iter().enumerate() {
            let column = *g * y;
            for (row, z) in column.storage().iter().enumerate() {
                system[(row, jdx * d + idx)] = *z;
            }
        }
    }
    let rhs = DVector::from_column_slice(target.storage());
    let svd = checked_svd(&system, true, true)?;
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let alpha = svd
        .solve(&rhs, tol.rank * sigma_max)
        .map_err(|e| Error::NumericalFailure(e.to_string()))?;
    Ok((0..gens.len())
        .map(|jdx| {
            let coefficients: Vec<C64> = (0..d).map(|idx| alpha[jdx * d + idx]).collect();
            basis.combine(&coefficients)
        })
        .collect())
}

/// Left-ideal mirror: the certificate of the right ideal generated by the
/// adjoints. Its `p` satisfies `A¹·gens = A p`.
pub fn left_ideal_projection(a: &StarAlgebra, gens: &[ComplexMatrix]) -> Result<ProjectionCertificate> {
    let adjoints: Vec<ComplexMatrix> = gens.iter().map(|g| g.adjoint()).collect();
    let mirror = generate_right_ideal(a, &adjoints)?;
    projection_generator(a, &mirror)
}

/// Smallest projection `q` with `qx = x` for all `x ∈ J`.
pub fn support_projection(a: &StarAlgebra, j: &RightIdeal) -> Result<ComplexMatrix> {
    let n = a.ambient_dim();
    let mut s = ComplexMatrix::zeros(n, n);
    for x in j.basis.basis() {
        s += &(x * &x.adjoint());
    }
    if j.is_zero() {
        return Ok(s);
    }
    Ok(range_projection(&s, a.tol())?.hermitian_part())
}

fn check_projection(e: &ComplexMatrix, tol: &Tolerances) -> Result<()> {
    let (idempotent, self_adjoint) = e.projection_defect();
    let scale = e.hs_norm().max(1.0);
    if idempotent > tol.member * scale || self_adjoint > tol.member * scale {
        return Err(Error::NotAProjection(format!(
            "‖e² − e‖ = {idempotent:.3e}, ‖e − e*‖ = {self_adjoint:.3e}"
        )));
    }
    Ok(())
}

/// Validates that `e` is a projection of `A`.
pub fn check_projection_in(a: &StarAlgebra, e: &ComplexMatrix) -> Result<()> {
    let n = a.ambient_dim();
    if e.shape() != (n, n) {
        return Err(Error::ShapeMismatch {
            expected: (n, n),
            found: e.shape(),
        });
    }
    check_projection(e, a.tol())?;
    let residual = a.residual(e)?;
    if residual > a.tol().member {
        return Err(Error::NotInAlgebra { residual });
    }
    Ok(())
}

/// `dim eAe = 1`.
pub fn is_minimal_projection(a: &StarAlgebra, e: &ComplexMatrix) -> Result<bool> {
    check_projection_in(a, e)?;
    if e.hs_norm() <= a.tol().member {
        return Err(Error::NotAProjection("zero projection".into()));
    }
    Ok(a.corner(e, e)?.dim() == 1)
}

fn unit_or_err(a: &StarAlgebra) -> Result<&ComplexMatrix> {
    a.unit().ok_or(Error::NotUnital)
}

/// Residual of `J = pA`: `p ∈ J`, `px = x` on `J`, and `pA ⊆ J`.
fn generated_by_residual(a: &StarAlgebra, j: &RightIdeal, p: &ComplexMatrix) -> Result<f64> {
    let mut worst = j.basis.relative_residual(p)?;
    for x in j.basis.basis() {
        worst = worst.max((p * x).distance(x));
    }
    for y in a.basis_elements() {
        worst = worst.max(j.basis.relative_residual(&(p * y))?);
    }
    Ok(worst)
}

/// `J` is maximal iff `J = pA` for its support `p` and `1 − p` is minimal.
pub fn is_maximal_right_ideal(a: &StarAlgebra, j: &RightIdeal) -> Result<bool> {
    let u = unit_or_err(a)?;
    if j.contains(u, a.tol().member)? {
        return Err(Error::NotProper);
    }
    let p = support_projection(a, j)?;
    if !j.is_zero() && generated_by_residual(a, j, &p)? > a.tol().member {
        return Ok(false);
    }
    let e = u - &p;
    if e.hs_norm() <= a.tol().member {
        return Ok(false);
    }
    is_minimal_projection(a, &e)
}

/// Witness that the complement of a maximal right ideal is minimal.
#[derive(Debug, Clone, Serialize)]
pub struct MinimalityCertificate {
    /// `1 − p` for the support `p` of the ideal.
    pub q: ComplexMatrix,
    pub support: ComplexMatrix,
    /// One-dimensional basis of `qAq`.
    pub corner_basis: Subspace,
    /// Residual of `q` in `qAq`, i.e. of `qAq = ℂq`.
    pub corner_residual: f64,
    pub q_in_algebra: f64,
    /// Residual of `1 − q` in the ideal.
    pub complement_in_ideal: f64,
}

pub fn maximal_ideal_minimality_certificate(
    a: &StarAlgebra,
    j: &RightIdeal,
) -> Result<MinimalityCertificate> {
    if !is_maximal_right_ideal(a, j)? {
        return Err(Error::NotMaximal);
    }
    let u = unit_or_err(a)?;
    let support = support_projection(a, j)?;
    let q = u - &support;
    let corner_basis = a.corner(&q, &q)?;
    let cert = MinimalityCertificate {
        corner_residual: corner_basis.relative_residual(&q)?,
        q_in_algebra: a.residual(&q)?,
        complement_in_ideal: if j.is_zero() {
            support.hs_norm()
        } else {
            j.basis.relative_residual(&support)?
        },
        q,
        support,
        corner_basis,
    };
    let worst = cert
        .corner_residual
        .max(cert.q_in_algebra)
        .max(cert.complement_in_ideal);
    if cert.corner_basis.dim() != 1 || worst > a.tol().member {
        return Err(Error::verification(
            "qAq = Cq with 1 - q in J",
            format!("corner dim {}, residual {worst:.3e}", cert.corner_basis.dim()),
        ));
    }
    Ok(cert)
}

/// Descend from `e` to a minimal projection `q ≤ e` of `A` through spectral
/// projections of random self-adjoint elements of the corner `eAe`.
pub fn minimal_subprojection<R: Rng + ?Sized>(
    a: &StarAlgebra,
    e: &ComplexMatrix,
    rng: &mut R,
) -> Result<ComplexMatrix> {
    let tol = *a.tol();
    let n = a.ambient_dim();
    let id = ComplexMatrix::identity(n);
    let mut r = e.clone();
    let max_steps = 4 * n + 16;
    for _ in 0..max_steps {
        let corner_dim = a.corner(&r, &r)?.dim();
        if corner_dim == 1 {
            return Ok(r);
        }
        if corner_dim == 0 {
            return Err(Error::Degenerate("descent reached the zero projection".into()));
        }
        let x = random_self_adjoint_with(a, rng);
        let y = &(&r * &x) * &r;
        // Park the complement of r far below the spectrum of rxr.
        let shift = -(y.hs_norm() + 1.0);
        let mut shifted = y.clone();
        shifted.axpy(C64::new(shift, 0.0), &(&id - &r));
        let spectrum = hermitian_eig(&shifted.hermitian_part(), tol.spec)?;
        let clusters = spectrum.clusters(tol.gap * spectrum.spectral_radius());
        // The lowest cluster is the parked complement, unless r = I.
        let offset = usize::from(n as f64 - r.trace().re > 0.5);
        if clusters.len() < offset + 2 {
            // rxr is scalar on the range of r; try another element.
            continue;
        }
        r = spectrum.projection_onto(clusters[offset].clone()).hermitian_part();
    }
    Err(Error::DegenerateRandomness { attempts: max_steps })
}

/// Some maximal right ideal containing the proper ideal `J`, built as
/// `(1 − q)A` for a minimal `q` below the complement of the support of `J`.
pub fn maximal_ideal_containing<R: Rng + ?Sized>(
    a: &StarAlgebra,
    j: &RightIdeal,
    rng: &mut R,
) -> Result<RightIdeal> {
    let u = unit_or_err(a)?.clone();
    if j.contains(&u, a.tol().member)? {
        return Err(Error::NotProper);
    }
    let p = support_projection(a, j)?;
    let q = minimal_subprojection(a, &(&u - &p), rng)?;
    generate_right_ideal(a, &[&u - &q])
}
