//! POVMs, projective decompositions, bases, and Naimark dilations.

use nalgebra::DMatrix;

use crate::operator::{
    eigh, embed, hermitize, partial_trace_raw, psd_sqrt, sup_norm, validate_hermitian, CMat,
    CVec, DensityOperator, DimsProfile, HermitianOperator, C64, EIG_CLIP, TOL_EIGEN,
};
use crate::{Error, Result};

/// Deviation of the element sum from the identity allowed by POVM
/// constructors.
pub const TOL_COMPLETENESS: f64 = 1e-10;
/// Residual allowed when an element is factored as a rank-one outer product.
pub const TOL_RANK1: f64 = 1e-8;
/// Outcome probabilities below this are recorded as exact-zero markers.
pub const ZERO_PROB: f64 = 1e-12;

/// Positive-operator-valued measure on a single subsystem.
#[derive(Clone, Debug)]
pub struct Povm {
    label: String,
    dim: usize,
    elements: Vec<CMat>,
}

impl Povm {
    pub fn new(label: &str, dim: usize, elements: Vec<CMat>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::BadParameter("POVM with no elements".into()));
        }
        let profile = DimsProfile::single(label, dim)?;
        let mut sum = CMat::zeros(dim, dim);
        for (j, e) in elements.iter().enumerate() {
            let report = validate_hermitian(e, &profile);
            if !report.is_valid() {
                return Err(Error::Validation {
                    what: "POVM element",
                    report,
                });
            }
            let (eigs, _) = eigh(e);
            let min_eig = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
            if min_eig < -TOL_EIGEN {
                return Err(Error::BadParameter(format!(
                    "POVM element {j} has eigenvalue {min_eig:.3e}"
                )));
            }
            sum += e;
        }
        let dev = sup_norm(&(sum - CMat::identity(dim, dim)));
        if dev > TOL_COMPLETENESS {
            return Err(Error::BadParameter(format!(
                "POVM elements sum to identity only within {dev:.3e}"
            )));
        }
        Ok(Self {
            label: label.into(),
            dim,
            elements,
        })
    }

    pub(crate) fn new_unchecked(label: &str, dim: usize, elements: Vec<CMat>) -> Self {
        Self {
            label: label.into(),
            dim,
            elements,
        }
    }

    /// Single-element POVM that never learns anything.
    pub fn trivial(label: &str, dim: usize) -> Self {
        Self::new_unchecked(label, dim, vec![CMat::identity(dim, dim)])
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[CMat] {
        &self.elements
    }

    pub fn with_label(&self, label: &str) -> Self {
        Self {
            label: label.into(),
            dim: self.dim,
            elements: self.elements.clone(),
        }
    }

    /// Elementwise transpose; the dual measure appearing when operators are
    /// traded across a maximally entangled ket.
    pub fn transposed(&self) -> Self {
        Self {
            label: self.label.clone(),
            dim: self.dim,
            elements: self.elements.iter().map(|e| e.transpose()).collect(),
        }
    }

    /// Outcome probabilities on a state living on this POVM's subsystem
    /// alone.
    pub fn probs(&self, rho: &DensityOperator) -> Result<Vec<f64>> {
        if rho.dim() != self.dim {
            return Err(Error::DimMismatch(format!(
                "state dimension {} does not match POVM dimension {}",
                rho.dim(),
                self.dim
            )));
        }
        Ok(self
            .elements
            .iter()
            .map(|e| (e * rho.mat()).trace().re.max(0.0))
            .collect())
    }
}

/// POVM whose elements are mutually orthogonal projectors.
#[derive(Clone, Debug)]
pub struct ProjectiveDecomposition {
    povm: Povm,
}

impl ProjectiveDecomposition {
    pub fn new(povm: Povm) -> Result<Self> {
        for (j, p) in povm.elements().iter().enumerate() {
            let idem = sup_norm(&(p * p - p));
            if idem > TOL_COMPLETENESS {
                return Err(Error::BadParameter(format!(
                    "element {j} is not idempotent (residual {idem:.3e})"
                )));
            }
            for (k, q) in povm.elements().iter().enumerate().skip(j + 1) {
                let ortho = sup_norm(&(p * q));
                if ortho > TOL_COMPLETENESS {
                    return Err(Error::BadParameter(format!(
                        "elements {j} and {k} are not orthogonal (residual {ortho:.3e})"
                    )));
                }
            }
        }
        Ok(Self { povm })
    }

    pub fn povm(&self) -> &Povm {
        &self.povm
    }

    pub fn label(&self) -> &str {
        self.povm.label()
    }

    pub fn dim(&self) -> usize {
        self.povm.dim()
    }

    pub fn elements(&self) -> &[CMat] {
        self.povm.elements()
    }
}

/// Ordered orthonormal basis of a subsystem, stored as matrix columns.
#[derive(Clone, Debug)]
pub struct OrthonormalBasis {
    label: String,
    vectors: CMat,
}

impl OrthonormalBasis {
    pub fn new(label: &str, vectors: CMat) -> Result<Self> {
        let d = vectors.nrows();
        if vectors.ncols() != d {
            return Err(Error::ShapeMismatch(format!(
                "basis matrix is {}x{}",
                vectors.nrows(),
                vectors.ncols()
            )));
        }
        let gram = vectors.adjoint() * &vectors;
        let dev = sup_norm(&(gram - CMat::identity(d, d)));
        if dev > TOL_COMPLETENESS {
            return Err(Error::BadParameter(format!(
                "basis columns are orthonormal only within {dev:.3e}"
            )));
        }
        Ok(Self {
            label: label.into(),
            vectors,
        })
    }

    pub fn computational(label: &str, d: usize) -> Self {
        Self {
            label: label.into(),
            vectors: CMat::identity(d, d),
        }
    }

    /// Discrete-Fourier basis, mutually unbiased with the computational one.
    pub fn fourier(label: &str, d: usize) -> Self {
        let root = 1.0 / (d as f64).sqrt();
        let vectors = CMat::from_fn(d, d, |j, k| {
            let angle = 2.0 * std::f64::consts::PI * (j as f64) * (k as f64) / (d as f64);
            C64::new(angle.cos(), angle.sin()) * C64::new(root, 0.0)
        });
        Self {
            label: label.into(),
            vectors,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.vectors.nrows()
    }

    pub fn unitary(&self) -> &CMat {
        &self.vectors
    }

    pub fn vector(&self, j: usize) -> CVec {
        CVec::from_column_slice(self.vectors.column(j).as_slice())
    }

    pub fn projector(&self, j: usize) -> CMat {
        let v = self.vectors.column(j);
        CMat::from_fn(self.dim(), self.dim(), |i, k| v[i] * v[k].conj())
    }

    pub fn to_povm(&self) -> Povm {
        let elements = (0..self.dim()).map(|j| self.projector(j)).collect();
        Povm::new_unchecked(&self.label, self.dim(), elements)
    }

    pub fn to_projective(&self) -> ProjectiveDecomposition {
        ProjectiveDecomposition {
            povm: self.to_povm(),
        }
    }

    /// Reinterprets a POVM of rank-one unit-trace projectors as a basis.
    pub fn try_from_povm(povm: &Povm) -> Result<Self> {
        let d = povm.dim();
        if povm.len() != d {
            return Err(Error::BadParameter(format!(
                "{} elements cannot form a basis of dimension {d}",
                povm.len()
            )));
        }
        let mut vectors = CMat::zeros(d, d);
        for (j, e) in povm.elements().iter().enumerate() {
            let (v, residual) = dominant_column_vector(e);
            if residual > TOL_RANK1 {
                return Err(Error::NotRankOne { index: j, residual });
            }
            let norm = v.norm();
            if (norm - 1.0).abs() > TOL_RANK1 {
                return Err(Error::BadParameter(format!(
                    "element {j} has trace {:.6}, not a unit projector",
                    norm * norm
                )));
            }
            vectors.set_column(j, &v);
        }
        Self::new(povm.label(), vectors)
    }
}

/// Factors a positive matrix as `v v` + residual, taking `v` from the
/// column with the largest diagonal entry. A numerically zero matrix
/// yields the zero vector.
pub(crate) fn dominant_column_vector(mat: &CMat) -> (CVec, f64) {
    let d = mat.nrows();
    let mut best = 0usize;
    for i in 1..d {
        if mat[(i, i)].re > mat[(best, best)].re {
            best = i;
        }
    }
    let peak = mat[(best, best)].re;
    if peak <= EIG_CLIP {
        return (CVec::zeros(d), sup_norm(mat));
    }
    let scale = C64::new(1.0 / peak.sqrt(), 0.0);
    let v = CVec::from_fn(d, |i, _| mat[(i, best)] * scale);
    let outer = CMat::from_fn(d, d, |i, j| v[i] * v[j].conj());
    (v, sup_norm(&(mat - outer)))
}

/// Projective model of a rank-one POVM on an enlarged space.
///
/// The embedding `J` maps the original space isometrically into the
/// extension; measuring the standard basis there reproduces the POVM
/// statistics, and compressing the standard projectors back recovers the
/// elements.
#[derive(Clone, Debug)]
pub struct NaimarkExtension {
    extended_dim: usize,
    embedding: CMat,
    unitary: CMat,
    decomposition: ProjectiveDecomposition,
}

impl NaimarkExtension {
    pub fn extended_dim(&self) -> usize {
        self.extended_dim
    }

    /// Isometry from the original space into the extension (`n x d`).
    pub fn embedding(&self) -> &CMat {
        &self.embedding
    }

    /// Completion of the embedding to a full unitary on the extension.
    pub fn unitary(&self) -> &CMat {
        &self.unitary
    }

    /// Projector onto the embedded copy of the original space.
    pub fn range_projector(&self) -> CMat {
        &self.embedding * self.embedding.adjoint()
    }

    /// Standard-basis projective measurement on the extension.
    pub fn decomposition(&self) -> &ProjectiveDecomposition {
        &self.decomposition
    }

    /// Embeds a state of the original space into the extension.
    pub fn embed_state(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        if rho.dim() != self.embedding.ncols() {
            return Err(Error::DimMismatch(format!(
                "state dimension {} does not match embedding input {}",
                rho.dim(),
                self.embedding.ncols()
            )));
        }
        let big = &self.embedding * rho.mat() * self.embedding.adjoint();
        Ok(DensityOperator::new_unvalidated(
            big,
            DimsProfile::single(
                self.decomposition.label(),
                self.extended_dim,
            )?,
        ))
    }

    /// Compresses an extension-space projector back to the original space.
    pub fn compress(&self, p: &CMat) -> CMat {
        self.embedding.adjoint() * p * &self.embedding
    }
}

/// Builds the standard-basis projective model of a rank-one POVM.
///
/// Each element is factored as an outer product; the conjugated factors
/// become the rows of the embedding isometry, which is completed to a
/// unitary by Gram-Schmidt over the standard basis.
pub fn naimark_extend(povm: &Povm) -> Result<NaimarkExtension> {
    let d = povm.dim();
    let n = povm.len();
    if n < d {
        return Err(Error::BadParameter(format!(
            "{n} rank-one elements cannot span a space of dimension {d}"
        )));
    }
    let mut embedding = CMat::zeros(n, d);
    for (j, e) in povm.elements().iter().enumerate() {
        let (v, residual) = dominant_column_vector(e);
        if residual > TOL_RANK1 {
            return Err(Error::NotRankOne { index: j, residual });
        }
        for k in 0..d {
            embedding[(j, k)] = v[k].conj();
        }
    }
    let iso_dev = sup_norm(&(embedding.adjoint() * &embedding - CMat::identity(d, d)));
    if iso_dev > TOL_COMPLETENESS {
        return Err(Error::BadParameter(format!(
            "factored elements are complete only within {iso_dev:.3e}"
        )));
    }
    let unitary = complete_to_unitary(&embedding)?;
    let label = format!("{}~", povm.label());
    let basis = OrthonormalBasis::computational(&label, n);
    let decomposition = basis.to_projective();
    let extension = NaimarkExtension {
        extended_dim: n,
        embedding,
        unitary,
        decomposition,
    };
    for (j, e) in povm.elements().iter().enumerate() {
        let back = extension.compress(&extension.decomposition.elements()[j]);
        let dev = sup_norm(&(back - e));
        if dev > TOL_COMPLETENESS {
            return Err(Error::BadParameter(format!(
                "compressed projector {j} misses its element by {dev:.3e}"
            )));
        }
    }
    Ok(extension)
}

/// Extends an `n x d` isometry to an `n x n` unitary by Gram-Schmidt over
/// standard basis vectors.
fn complete_to_unitary(iso: &CMat) -> Result<CMat> {
    let n = iso.nrows();
    let d = iso.ncols();
    let mut cols: Vec<CVec> = (0..d)
        .map(|k| CVec::from_column_slice(iso.column(k).as_slice()))
        .collect();
    for j in 0..n {
        if cols.len() == n {
            break;
        }
        let mut v = CVec::zeros(n);
        v[j] = C64::new(1.0, 0.0);
        for c in &cols {
            let overlap = (c.adjoint() * &v)[(0, 0)];
            v -= c * overlap;
        }
        let norm = v.norm();
        if norm > 1e-6 {
            cols.push(v / C64::new(norm, 0.0));
        }
    }
    if cols.len() != n {
        return Err(Error::BadParameter(
            "failed to complete isometry to a unitary".into(),
        ));
    }
    let mut u = CMat::zeros(n, n);
    for (k, c) in cols.iter().enumerate() {
        u.set_column(k, c);
    }
    Ok(u)
}

/// Probability-weighted collection of states; zero-probability outcomes are
/// kept as explicit `None` markers so indices line up with POVM outcomes.
#[derive(Clone, Debug)]
pub struct Ensemble {
    probs: Vec<f64>,
    states: Vec<Option<DensityOperator>>,
    dims: DimsProfile,
}

impl Ensemble {
    pub fn new(
        probs: Vec<f64>,
        states: Vec<Option<DensityOperator>>,
        dims: DimsProfile,
    ) -> Result<Self> {
        if probs.len() != states.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} probabilities against {} states",
                probs.len(),
                states.len()
            )));
        }
        let total: f64 = probs.iter().sum();
        if probs.iter().any(|p| *p < -EIG_CLIP)
            || (total - 1.0).abs() > crate::entropy::TOL_SUPPORT
        {
            return Err(Error::BadParameter(format!(
                "ensemble weights sum to {total:.12}"
            )));
        }
        let mut canonical = Vec::with_capacity(states.len());
        for (p, s) in probs.iter().zip(states) {
            if *p < ZERO_PROB {
                canonical.push(None);
                continue;
            }
            match s {
                Some(rho) => {
                    if rho.dims() != &dims {
                        return Err(Error::DimMismatch(format!(
                            "ensemble member on {} inside an ensemble on {}",
                            rho.dims(),
                            dims
                        )));
                    }
                    canonical.push(Some(rho));
                }
                None => {
                    return Err(Error::BadParameter(format!(
                        "missing state for weight {p:.3e}"
                    )))
                }
            }
        }
        Ok(Self {
            probs,
            states: canonical,
            dims,
        })
    }

    pub fn from_parts(parts: Vec<(f64, DensityOperator)>, dims: DimsProfile) -> Result<Self> {
        let (probs, states): (Vec<f64>, Vec<Option<DensityOperator>>) = parts
            .into_iter()
            .map(|(p, s)| (p, Some(s)))
            .unzip();
        Self::new(probs, states, dims)
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn states(&self) -> &[Option<DensityOperator>] {
        &self.states
    }

    pub fn dims(&self) -> &DimsProfile {
        &self.dims
    }

    /// Members with nonzero probability.
    pub fn iter_present(&self) -> impl Iterator<Item = (f64, &DensityOperator)> {
        self.probs
            .iter()
            .zip(&self.states)
            .filter_map(|(p, s)| s.as_ref().map(|rho| (*p, rho)))
    }

    /// Probability-weighted average state.
    pub fn average(&self) -> DensityOperator {
        let d = self.dims.total();
        let mut acc = CMat::zeros(d, d);
        for (p, rho) in self.iter_present() {
            acc += rho.mat() * C64::new(p, 0.0);
        }
        DensityOperator::new_unvalidated(acc, self.dims.clone())
    }
}

/// Post-measurement ensemble on the unmeasured subsystems.
///
/// Measuring `povm` on factor `label` of `rho` leaves, for outcome `j`,
/// the normalized partial trace of `(A_j (x) I) rho` over that factor.
pub fn conditional_ensemble(
    rho: &DensityOperator,
    povm: &Povm,
    label: &str,
) -> Result<Ensemble> {
    let dims = rho.dims();
    let target = dims
        .dim(label)
        .ok_or_else(|| Error::UnknownLabel(label.into()))?;
    if povm.dim() != target {
        return Err(Error::DimMismatch(format!(
            "POVM of dimension {} measured on `{label}` of dimension {target}",
            povm.dim()
        )));
    }
    if dims.len() < 2 {
        return Err(Error::BadParameter(
            "conditional ensemble needs at least one unmeasured factor".into(),
        ));
    }
    let keep: Vec<&str> = dims.labels().filter(|l| *l != label).collect();
    let mut probs = Vec::with_capacity(povm.len());
    let mut states = Vec::with_capacity(povm.len());
    for elem in povm.elements() {
        let big = embed(elem, dims, label)?;
        let weighted = big * rho.mat();
        let p = weighted.trace().re.max(0.0);
        probs.push(p);
        if p < ZERO_PROB {
            states.push(None);
            continue;
        }
        let (reduced, keep_dims) = partial_trace_raw(&weighted, dims, &keep)?;
        let scaled = hermitize(&reduced) * C64::new(1.0 / p, 0.0);
        states.push(Some(DensityOperator::new_unvalidated(scaled, keep_dims)));
    }
    let reduced_dims = dims.subset(&keep)?;
    Ensemble::new(probs, states, reduced_dims)
}

/// Largest squared operator norm of a square-root product across two POVMs.
///
/// Equals `1/d` for a pair of mutually unbiased bases in dimension `d` and
/// `1` whenever the measures share an outcome direction.
pub fn overlap_r(p: &Povm, q: &Povm) -> Result<f64> {
    if p.dim() != q.dim() {
        return Err(Error::DimMismatch(format!(
            "overlap of POVMs with dimensions {} and {}",
            p.dim(),
            q.dim()
        )));
    }
    let profile = DimsProfile::single("x", p.dim())?;
    let roots = |povm: &Povm| -> Vec<CMat> {
        povm.elements()
            .iter()
            .map(|e| {
                let h = HermitianOperator::new_symmetrized(e.clone(), profile.clone());
                psd_sqrt(&h).mat().clone()
            })
            .collect()
    };
    let rp = roots(p);
    let rq = roots(q);
    let mut best: f64 = 0.0;
    for a in &rp {
        for b in &rq {
            best = best.max(sup_norm(&(a * b)).powi(2));
        }
    }
    Ok(best)
}

/// Sums POVM elements over the given index groups.
///
/// Groups must partition the outcome set exactly.
pub fn coarse_grain(povm: &Povm, groups: &[Vec<usize>]) -> Result<Povm> {
    let mut seen = vec![false; povm.len()];
    for g in groups {
        for &idx in g {
            if idx >= povm.len() {
                return Err(Error::BadParameter(format!(
                    "group index {idx} out of range for {} outcomes",
                    povm.len()
                )));
            }
            if seen[idx] {
                return Err(Error::BadParameter(format!(
                    "outcome {idx} assigned to two groups"
                )));
            }
            seen[idx] = true;
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::BadParameter(
            "coarse-graining groups must cover every outcome".into(),
        ));
    }
    let d = povm.dim();
    let elements = groups
        .iter()
        .map(|g| {
            let mut acc = CMat::zeros(d, d);
            for &idx in g {
                acc += &povm.elements()[idx];
            }
            acc
        })
        .collect();
    Ok(Povm::new_unchecked(povm.label(), d, elements))
}

/// Computational and Fourier bases: a mutually unbiased pair in any
/// dimension.
pub fn mub_pair(label: &str, d: usize) -> (OrthonormalBasis, OrthonormalBasis) {
    (
        OrthonormalBasis::computational(label, d),
        OrthonormalBasis::fourier(label, d),
    )
}

/// The three pairwise mutually unbiased qubit bases (x, y, z order).
pub fn qubit_mub_triple(label: &str) -> [OrthonormalBasis; 3] {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let x = CMat::from_fn(2, 2, |i, j| {
        let sign = if i == 1 && j == 1 { -1.0 } else { 1.0 };
        C64::new(sign * r, 0.0)
    });
    let mut y = CMat::zeros(2, 2);
    y[(0, 0)] = C64::new(r, 0.0);
    y[(1, 0)] = C64::new(0.0, r);
    y[(0, 1)] = C64::new(r, 0.0);
    y[(1, 1)] = C64::new(0.0, -r);
    [
        OrthonormalBasis::new(label, x).expect("hadamard columns"),
        OrthonormalBasis::new(label, y).expect("circular columns"),
        OrthonormalBasis::computational(label, 2),
    ]
}

/// Haar-random orthonormal basis.
pub fn random_basis(label: &str, d: usize, seed: u64) -> OrthonormalBasis {
    let mut rng = crate::rng::seeded(seed);
    random_basis_with(&mut rng, label, d)
}

pub(crate) fn random_basis_with(
    rng: &mut rand_chacha::ChaCha12Rng,
    label: &str,
    d: usize,
) -> OrthonormalBasis {
    OrthonormalBasis {
        label: label.into(),
        vectors: crate::rng::haar_unitary(rng, d),
    }
}

/// Rank-one POVM with `n >= d` outcomes, obtained by slicing `d` columns
/// of a Haar unitary on the extension into rows.
pub fn random_rank1_povm(label: &str, d: usize, n: usize, seed: u64) -> Result<Povm> {
    let mut rng = crate::rng::seeded(seed);
    random_rank1_povm_with(&mut rng, label, d, n)
}

pub(crate) fn random_rank1_povm_with(
    rng: &mut rand_chacha::ChaCha12Rng,
    label: &str,
    d: usize,
    n: usize,
) -> Result<Povm> {
    if n < d {
        return Err(Error::BadParameter(format!(
            "{n} outcomes cannot resolve dimension {d}"
        )));
    }
    let u = crate::rng::haar_unitary(rng, n);
    let iso = DMatrix::from_fn(n, d, |i, j| u[(i, j)]);
    let elements = (0..n)
        .map(|j| {
            let row = iso.row(j);
            CMat::from_fn(d, d, |a, b| row[a].conj() * row[b])
        })
        .collect();
    Ok(Povm::new_unchecked(label, d, elements))
}

/// Projective decomposition with Haar-random eigenvectors and a random
/// partition of the `d` directions into at least two blocks.
pub fn random_projective(label: &str, d: usize, seed: u64) -> Result<ProjectiveDecomposition> {
    let mut rng = crate::rng::seeded(seed);
    random_projective_with(&mut rng, label, d)
}

pub(crate) fn random_projective_with(
    rng: &mut rand_chacha::ChaCha12Rng,
    label: &str,
    d: usize,
) -> Result<ProjectiveDecomposition> {
    use rand::Rng;
    if d < 2 {
        return Err(Error::BadParameter(
            "projective decompositions need dimension at least 2".into(),
        ));
    }
    let u = crate::rng::haar_unitary(rng, d);
    let blocks = rng.random_range(2..=d);
    let mut cuts: Vec<usize> = Vec::new();
    while cuts.len() < blocks - 1 {
        let c = rng.random_range(1..d);
        if !cuts.contains(&c) {
            cuts.push(c);
        }
    }
    cuts.sort_unstable();
    cuts.push(d);
    let mut elements = Vec::with_capacity(blocks);
    let mut start = 0usize;
    for &end in &cuts {
        let mut p = CMat::zeros(d, d);
        for k in start..end {
            let col = u.column(k);
            for i in 0..d {
                for j in 0..d {
                    p[(i, j)] += col[i] * col[j].conj();
                }
            }
        }
        elements.push(p);
        start = end;
    }
    ProjectiveDecomposition::new(Povm::new_unchecked(label, d, elements))
}
