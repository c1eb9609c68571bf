//! Dense complex operator algebra on labeled tensor-product spaces.
//!
//! Operators are square matrices over `Complex<f64>` annotated with a
//! [`DimsProfile`] naming each tensor factor. The profile order is the
//! authoritative Kronecker order: the first label is the most significant
//! index, so for dims `a:2, b:3` the row index is `3*i_a + i_b`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

/// Hermiticity residual allowed by operator constructors.
pub const TOL_HERMITICITY: f64 = 1e-10;
/// Most negative eigenvalue allowed for positive operators.
pub const TOL_EIGEN: f64 = 1e-10;
/// Trace deviation allowed for density operators.
pub const TOL_TRACE: f64 = 1e-10;
/// Norm deviation allowed for pure-state amplitudes.
pub const TOL_NORM: f64 = 1e-10;
/// Eigenvalues in `[-EIG_CLIP, EIG_CLIP]` are treated as exact zeros.
pub const EIG_CLIP: f64 = 1e-12;

/// Ordered list of `(label, dim)` pairs naming the tensor factors of a space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimsProfile {
    parts: Vec<(String, usize)>,
}

impl DimsProfile {
    pub fn new(parts: &[(&str, usize)]) -> Result<Self> {
        Self::from_vec(
            parts
                .iter()
                .map(|(l, d)| (l.to_string(), *d))
                .collect::<Vec<_>>(),
        )
    }

    pub fn from_vec(parts: Vec<(String, usize)>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::BadParameter("empty dims profile".into()));
        }
        for (i, (label, dim)) in parts.iter().enumerate() {
            if *dim == 0 {
                return Err(Error::BadParameter(format!("zero dimension for `{label}`")));
            }
            if parts[..i].iter().any(|(l, _)| l == label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self { parts })
    }

    pub fn single(label: &str, dim: usize) -> Result<Self> {
        Self::new(&[(label, dim)])
    }

    pub fn parts(&self) -> &[(String, usize)] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Product of all factor dimensions.
    pub fn total(&self) -> usize {
        self.parts.iter().map(|(_, d)| d).product()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.parts.iter().map(|(l, _)| l.as_str())
    }

    pub fn dim(&self, label: &str) -> Option<usize> {
        self.parts.iter().find(|(l, _)| l == label).map(|(_, d)| *d)
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.parts.iter().position(|(l, _)| l == label)
    }

    /// Concatenation, preserving order; labels must stay unique.
    pub fn concat(&self, other: &DimsProfile) -> Result<DimsProfile> {
        let mut parts = self.parts.clone();
        parts.extend(other.parts.iter().cloned());
        DimsProfile::from_vec(parts)
    }

    /// Sub-profile of the given labels, in this profile's order.
    pub fn subset(&self, keep: &[&str]) -> Result<DimsProfile> {
        for l in keep {
            if self.position(l).is_none() {
                return Err(Error::UnknownLabel((*l).into()));
            }
        }
        DimsProfile::from_vec(
            self.parts
                .iter()
                .filter(|(l, _)| keep.contains(&l.as_str()))
                .cloned()
                .collect(),
        )
    }

    /// Row-major strides per factor.
    pub(crate) fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1usize; self.parts.len()];
        for i in (0..self.parts.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.parts[i + 1].1;
        }
        strides
    }

    /// A label not already present, built from `base` by appending primes.
    pub fn fresh_label(&self, base: &str) -> String {
        let mut candidate = base.to_string();
        while self.position(&candidate).is_some() {
            candidate.push('\'');
        }
        candidate
    }
}

impl std::fmt::Display for DimsProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self
            .parts
            .iter()
            .map(|(l, d)| format!("{l}:{d}"))
            .collect();
        write!(f, "{}", s.join(","))
    }
}

/// One violated invariant with its measured residual.
#[derive(Clone, Debug)]
pub struct Violation {
    pub invariant: &'static str,
    pub residual: f64,
    pub tolerance: f64,
}

/// Outcome of validating an operator against its type invariants.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, invariant: &'static str, residual: f64, tolerance: f64) {
        if residual.abs() > tolerance {
            self.violations.push(Violation {
                invariant,
                residual,
                tolerance,
            });
        }
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let items: Vec<String> = self
            .violations
            .iter()
            .map(|v| {
                format!(
                    "{} (residual {:.3e}, tolerance {:.0e})",
                    v.invariant, v.residual, v.tolerance
                )
            })
            .collect();
        write!(f, "{}", items.join("; "))
    }
}

/// Checks squareness, profile consistency, and hermiticity.
pub fn validate_hermitian(mat: &CMat, dims: &DimsProfile) -> ValidationReport {
    let mut report = ValidationReport::default();
    if mat.nrows() != mat.ncols() {
        report.push("square matrix", (mat.nrows() as f64) - (mat.ncols() as f64), 0.0);
        return report;
    }
    if mat.nrows() != dims.total() {
        report.push(
            "matrix dimension matches dims profile",
            (mat.nrows() as f64) - (dims.total() as f64),
            0.0,
        );
        return report;
    }
    let mut dev: f64 = 0.0;
    for i in 0..mat.nrows() {
        for j in 0..=i {
            dev = dev.max((mat[(i, j)] - mat[(j, i)].conj()).norm());
        }
    }
    report.push("hermiticity", dev, TOL_HERMITICITY);
    report
}

/// Checks the hermitian invariants plus positivity and unit trace.
pub fn validate_density(mat: &CMat, dims: &DimsProfile) -> ValidationReport {
    let mut report = validate_hermitian(mat, dims);
    if !report.is_valid() {
        return report;
    }
    let (eigs, _) = eigh(mat);
    let min_eig = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
    if min_eig < -TOL_EIGEN {
        report.push("positivity (minimum eigenvalue)", min_eig, TOL_EIGEN);
    }
    let trace: f64 = mat.trace().re;
    report.push("unit trace", trace - 1.0, TOL_TRACE);
    report
}

/// Checks amplitude-vector length and normalization.
pub fn validate_pure(amp: &CVec, dims: &DimsProfile) -> ValidationReport {
    let mut report = ValidationReport::default();
    if amp.len() != dims.total() {
        report.push(
            "vector dimension matches dims profile",
            (amp.len() as f64) - (dims.total() as f64),
            0.0,
        );
        return report;
    }
    report.push("unit norm", amp.norm() - 1.0, TOL_NORM);
    report
}

/// Square matrix certified Hermitian on a labeled space.
#[derive(Clone, Debug)]
pub struct HermitianOperator {
    mat: CMat,
    dims: DimsProfile,
}

impl HermitianOperator {
    pub fn new(mat: CMat, dims: DimsProfile) -> Result<Self> {
        let report = validate_hermitian(&mat, &dims);
        if !report.is_valid() {
            return Err(Error::Validation {
                what: "hermitian operator",
                report,
            });
        }
        Ok(Self { mat, dims })
    }

    /// Symmetrizes the matrix instead of checking it; for internally
    /// generated operators whose asymmetry is pure roundoff.
    pub(crate) fn new_symmetrized(mat: CMat, dims: DimsProfile) -> Self {
        debug_assert_eq!(mat.nrows(), dims.total());
        let herm = hermitize(&mat);
        Self { mat: herm, dims }
    }

    pub fn mat(&self) -> &CMat {
        &self.mat
    }

    pub fn dims(&self) -> &DimsProfile {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.mat.trace().re
    }

    /// Sorted eigendecomposition (ascending eigenvalues).
    pub fn eigh(&self) -> (Vec<f64>, CMat) {
        eigh(&self.mat)
    }

    pub fn identity(dims: DimsProfile) -> Self {
        let d = dims.total();
        Self {
            mat: CMat::identity(d, d),
            dims,
        }
    }
}

/// Positive unit-trace Hermitian operator; caches its spectrum.
#[derive(Clone, Debug)]
pub struct DensityOperator {
    op: HermitianOperator,
    spectrum: Vec<f64>,
}

impl DensityOperator {
    pub fn new(mat: CMat, dims: DimsProfile) -> Result<Self> {
        let report = validate_density(&mat, &dims);
        if !report.is_valid() {
            return Err(Error::Validation {
                what: "density operator",
                report,
            });
        }
        let (mut eigs, _) = eigh(&mat);
        eigs.reverse();
        Ok(Self {
            op: HermitianOperator { mat, dims },
            spectrum: eigs,
        })
    }

    pub fn from_hermitian(op: HermitianOperator) -> Result<Self> {
        Self::new(op.mat, op.dims)
    }

    /// Symmetrizes and wraps without validating positivity or trace; for
    /// states that are positive by construction (partial traces, channel
    /// outputs, convex mixtures of valid states).
    pub(crate) fn new_unvalidated(mat: CMat, dims: DimsProfile) -> Self {
        let op = HermitianOperator::new_symmetrized(mat, dims);
        let (mut eigs, _) = eigh(&op.mat);
        eigs.reverse();
        Self { op, spectrum: eigs }
    }

    pub fn op(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn mat(&self) -> &CMat {
        self.op.mat()
    }

    pub fn dims(&self) -> &DimsProfile {
        self.op.dims()
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    /// Eigenvalues in descending order.
    pub fn spectrum(&self) -> &[f64] {
        &self.spectrum
    }

    /// Partial trace down to `keep`, returned as a density operator.
    pub fn reduce(&self, keep: &[&str]) -> Result<DensityOperator> {
        let reduced = partial_trace(&self.op, keep)?;
        Ok(DensityOperator::new_unvalidated(
            reduced.mat,
            reduced.dims,
        ))
    }

    pub fn maximally_mixed(dims: DimsProfile) -> Self {
        let d = dims.total();
        let mat = CMat::identity(d, d) * C64::new(1.0 / d as f64, 0.0);
        Self::new_unvalidated(mat, dims)
    }
}

/// Unit vector on a labeled space.
#[derive(Clone, Debug)]
pub struct PureState {
    amp: CVec,
    dims: DimsProfile,
}

impl PureState {
    pub fn new(amp: CVec, dims: DimsProfile) -> Result<Self> {
        let report = validate_pure(&amp, &dims);
        if !report.is_valid() {
            return Err(Error::Validation {
                what: "pure state",
                report,
            });
        }
        Ok(Self { amp, dims })
    }

    pub fn amplitudes(&self) -> &CVec {
        &self.amp
    }

    pub fn dims(&self) -> &DimsProfile {
        &self.dims
    }

    pub fn to_density(&self) -> DensityOperator {
        let mat = &self.amp * self.amp.adjoint();
        let mut spectrum = vec![0.0; self.amp.len()];
        spectrum[0] = 1.0;
        DensityOperator {
            op: HermitianOperator::new_symmetrized(mat, self.dims.clone()),
            spectrum,
        }
    }

    /// Reduced density operator on `keep`.
    pub fn reduce(&self, keep: &[&str]) -> Result<DensityOperator> {
        self.to_density().reduce(keep)
    }
}

pub(crate) fn hermitize(m: &CMat) -> CMat {
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

/// Sorted Hermitian eigendecomposition; symmetrizes its input first.
pub(crate) fn eigh(mat: &CMat) -> (Vec<f64>, CMat) {
    let herm = hermitize(mat);
    let decomp = SymmetricEigen::new(herm);
    let mut order: Vec<usize> = (0..decomp.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| {
        decomp.eigenvalues[i]
            .partial_cmp(&decomp.eigenvalues[j])
            .unwrap()
    });
    let eigs: Vec<f64> = order.iter().map(|&i| decomp.eigenvalues[i]).collect();
    let n = mat.nrows();
    let mut vecs = CMat::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vecs.set_column(col, &decomp.eigenvectors.column(i));
    }
    (eigs, vecs)
}

/// Kronecker product with concatenated dims profiles.
pub fn tensor(a: &HermitianOperator, b: &HermitianOperator) -> Result<HermitianOperator> {
    let dims = a.dims().concat(b.dims())?;
    let mat = a.mat().kronecker(b.mat());
    Ok(HermitianOperator { mat, dims })
}

/// Partial trace keeping the named subsystems (in profile order).
pub fn partial_trace(op: &HermitianOperator, keep: &[&str]) -> Result<HermitianOperator> {
    let (mat, dims) = partial_trace_raw(op.mat(), op.dims(), keep)?;
    Ok(HermitianOperator { mat, dims })
}

/// Matrix-level partial trace; the input need not be Hermitian.
pub(crate) fn partial_trace_raw(
    mat: &CMat,
    dims: &DimsProfile,
    keep: &[&str],
) -> Result<(CMat, DimsProfile)> {
    let keep_profile = dims.subset(keep)?;
    let keep_pos: Vec<usize> = dims
        .parts()
        .iter()
        .enumerate()
        .filter(|(_, (l, _))| keep.contains(&l.as_str()))
        .map(|(i, _)| i)
        .collect();
    let tr_pos: Vec<usize> = (0..dims.len()).filter(|i| !keep_pos.contains(i)).collect();
    let strides = dims.strides();

    let offsets = |positions: &[usize]| -> Vec<usize> {
        let mut offs = vec![0usize];
        for &p in positions {
            let d = dims.parts()[p].1;
            let s = strides[p];
            let mut next = Vec::with_capacity(offs.len() * d);
            for &o in &offs {
                for k in 0..d {
                    next.push(o + k * s);
                }
            }
            offs = next;
        }
        offs
    };

    let keep_offs = offsets(&keep_pos);
    let tr_offs = offsets(&tr_pos);
    let dk = keep_offs.len();
    let mut out = CMat::zeros(dk, dk);
    for (i, &oi) in keep_offs.iter().enumerate() {
        for (j, &oj) in keep_offs.iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for &ot in &tr_offs {
                acc += mat[(oi + ot, oj + ot)];
            }
            out[(i, j)] = acc;
        }
    }
    Ok((out, keep_profile))
}

/// Purification: a pure state on (original ⊗ reference of equal dimension)
/// whose partial trace over the reference recovers the input. The dominant
/// eigenvector pairs with reference index 0.
pub fn purify(rho: &DensityOperator) -> PureState {
    let d = rho.dim();
    let (eigs, vecs) = rho.op().eigh();
    let ref_label = rho.dims().fresh_label("ref");
    let dims = rho
        .dims()
        .concat(&DimsProfile::single(&ref_label, d).expect("fresh label"))
        .expect("fresh label is unique");
    let mut amp = CVec::zeros(d * d);
    // eigh sorts ascending; walk from the top so k = 0 is the largest.
    for (k, idx) in (0..d).rev().enumerate() {
        let lambda = eigs[idx].max(0.0);
        if lambda <= EIG_CLIP {
            continue;
        }
        let root = lambda.sqrt();
        for i in 0..d {
            amp[i * d + k] += vecs[(i, idx)] * C64::new(root, 0.0);
        }
    }
    let norm = amp.norm();
    amp /= C64::new(norm, 0.0);
    PureState { amp, dims }
}

/// Seeded density-operator draw of the given rank: GG†/Tr(GG†) with G a
/// Gaussian matrix of `rank` columns, which is the distribution obtained by
/// tracing a rank-dimensional reference out of a Haar-random purification.
pub fn random_density_operator(dims: DimsProfile, rank: usize, seed: u64) -> DensityOperator {
    let mut rng = crate::rng::seeded(seed);
    crate::rng::random_density_ranked(&mut rng, rank, dims)
}

/// Seeded Haar-random pure state on the full space.
pub fn random_pure_state(dims: DimsProfile, seed: u64) -> PureState {
    let mut rng = crate::rng::seeded(seed);
    crate::rng::random_pure(&mut rng, dims)
}

/// How eigenvalues inside the clip band are treated by [`matrix_function`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroPolicy {
    /// Clipped eigenvalues map to zero regardless of `f` (support convention).
    Skip,
    /// Clipped eigenvalues are passed to `f`; a non-finite result is an error.
    Signal,
}

/// Applies `f` to the eigenvalues of `h`, preserving eigenvectors.
///
/// Eigenvalues in `[-EIG_CLIP, EIG_CLIP]` are treated as exact zeros and
/// handled per `policy`. A non-finite `f` value anywhere else is a domain
/// error.
pub fn matrix_function(
    h: &HermitianOperator,
    f: impl Fn(f64) -> f64,
    policy: ZeroPolicy,
) -> Result<HermitianOperator> {
    let (eigs, vecs) = h.eigh();
    let n = h.dim();
    let mut mapped = Vec::with_capacity(n);
    for &lambda in &eigs {
        let clipped = if lambda.abs() <= EIG_CLIP { 0.0 } else { lambda };
        let y = if clipped == 0.0 {
            match policy {
                ZeroPolicy::Skip => 0.0,
                ZeroPolicy::Signal => f(0.0),
            }
        } else {
            f(clipped)
        };
        if !y.is_finite() {
            return Err(Error::Domain { value: clipped });
        }
        mapped.push(y);
    }
    let mut out = CMat::zeros(n, n);
    for (k, &weight) in mapped.iter().enumerate() {
        if weight == 0.0 {
            continue;
        }
        let col = vecs.column(k);
        let scale = C64::new(weight, 0.0);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += col[i] * col[j].conj() * scale;
            }
        }
    }
    Ok(HermitianOperator::new_symmetrized(out, h.dims().clone()))
}

/// Positive square root, clipping negative eigenvalue noise to zero.
pub fn psd_sqrt(h: &HermitianOperator) -> HermitianOperator {
    matrix_function(h, |x| x.max(0.0).sqrt(), ZeroPolicy::Skip)
        .expect("sqrt of clipped nonnegative values is finite")
}

/// Largest singular value.
pub fn sup_norm(m: &CMat) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.clone()
        .singular_values()
        .iter()
        .cloned()
        .fold(0.0, f64::max)
}

/// `I ⊗ elem ⊗ I` placing `elem` at the named factor of `dims`.
pub fn embed(elem: &CMat, dims: &DimsProfile, label: &str) -> Result<CMat> {
    let pos = dims
        .position(label)
        .ok_or_else(|| Error::UnknownLabel(label.into()))?;
    let d = dims.parts()[pos].1;
    if elem.nrows() != d || elem.ncols() != d {
        return Err(Error::DimMismatch(format!(
            "element is {}x{} but `{label}` has dimension {d}",
            elem.nrows(),
            elem.ncols()
        )));
    }
    let before: usize = dims.parts()[..pos].iter().map(|(_, d)| d).product();
    let after: usize = dims.parts()[pos + 1..].iter().map(|(_, d)| d).product();
    let left = CMat::identity(before, before).kronecker(elem);
    Ok(left.kronecker(&CMat::identity(after, after)))
}
