//! Isometric channel dilations and their kets, Kraus pairs, and averages.
//!
//! A channel from system `a` is represented by an isometry `V` into the
//! product of an output `b` and an environment `c`. Tracing the environment
//! gives the direct channel, tracing the output gives the complementary
//! one, and feeding half of a maximally entangled pair through `V` gives
//! the channel ket, whose input marginal is exactly maximally mixed.

use crate::entropy::{entropy, EntropyKind};
use crate::measurement::{Ensemble, Povm, ZERO_PROB};
use crate::operator::{
    hermitize, partial_trace, sup_norm, CMat, CVec, DensityOperator, DimsProfile,
    HermitianOperator, PureState, C64, EIG_CLIP,
};
use crate::{Error, Result};

/// Deviation from `V'V = I` allowed by isometry constructors.
pub const TOL_ISOMETRY: f64 = 1e-10;
/// Deviation of a channel ket's input marginal from maximally mixed.
pub const TOL_KET_MARGINAL: f64 = 1e-8;
/// Disagreement allowed between an output ensemble average and the
/// channel's maximally mixed response before evaluation aborts.
pub const TOL_AVG_CONSISTENCY: f64 = 1e-10;

/// Isometry from an input space `a` into output `b` tensor environment
/// `c`; rows are indexed by `i_b * d_c + i_c`.
#[derive(Clone, Debug)]
pub struct Isometry {
    mat: CMat,
    d_a: usize,
    d_b: usize,
    d_c: usize,
}

impl Isometry {
    pub fn new(mat: CMat, d_a: usize, d_b: usize, d_c: usize) -> Result<Self> {
        if mat.nrows() != d_b * d_c || mat.ncols() != d_a {
            return Err(Error::ShapeMismatch(format!(
                "isometry is {}x{} for dimensions a={d_a}, b={d_b}, c={d_c}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        if d_a > d_b * d_c {
            return Err(Error::DimMismatch(format!(
                "input dimension {d_a} exceeds output capacity {}",
                d_b * d_c
            )));
        }
        let gram = mat.adjoint() * &mat;
        let dev = sup_norm(&(gram - CMat::identity(d_a, d_a)));
        if dev > TOL_ISOMETRY {
            return Err(Error::BadParameter(format!(
                "columns are isometric only within {dev:.3e}"
            )));
        }
        Ok(Self { mat, d_a, d_b, d_c })
    }

    pub fn mat(&self) -> &CMat {
        &self.mat
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    pub fn d_c(&self) -> usize {
        self.d_c
    }

    pub fn input_profile(&self) -> DimsProfile {
        DimsProfile::single("a", self.d_a).expect("fixed label")
    }

    pub fn output_profile(&self) -> DimsProfile {
        DimsProfile::new(&[("b", self.d_b), ("c", self.d_c)]).expect("fixed labels")
    }

    pub fn full_profile(&self) -> DimsProfile {
        DimsProfile::new(&[("a", self.d_a), ("b", self.d_b), ("c", self.d_c)])
            .expect("fixed labels")
    }

    /// `V |psi>` as a state on output and environment.
    pub fn apply_pure(&self, psi: &CVec) -> Result<PureState> {
        if psi.len() != self.d_a {
            return Err(Error::DimMismatch(format!(
                "vector of length {} into an isometry with input {}",
                psi.len(),
                self.d_a
            )));
        }
        PureState::new(&self.mat * psi, self.output_profile())
    }

    /// `V rho V'` as a state on output and environment.
    pub fn apply(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        if rho.dim() != self.d_a {
            return Err(Error::DimMismatch(format!(
                "state of dimension {} into an isometry with input {}",
                rho.dim(),
                self.d_a
            )));
        }
        let out = &self.mat * rho.mat() * self.mat.adjoint();
        Ok(DensityOperator::new_unvalidated(out, self.output_profile()))
    }
}

/// Which marginal of the dilation a quantity refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChannelSide {
    Direct,
    Complementary,
}

impl ChannelSide {
    pub fn output_label(self) -> &'static str {
        match self {
            ChannelSide::Direct => "b",
            ChannelSide::Complementary => "c",
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            ChannelSide::Direct => ChannelSide::Complementary,
            ChannelSide::Complementary => ChannelSide::Direct,
        }
    }
}

/// Completely positive trace-preserving map in Kraus form.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    kraus: Vec<CMat>,
    dim_in: usize,
    dim_out: usize,
    out_label: String,
}

impl KrausChannel {
    pub fn new(kraus: Vec<CMat>, out_label: &str) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::BadParameter("channel with no Kraus operators".into()))?;
        let (dim_out, dim_in) = (first.nrows(), first.ncols());
        let mut gram = CMat::zeros(dim_in, dim_in);
        for (l, k) in kraus.iter().enumerate() {
            if k.nrows() != dim_out || k.ncols() != dim_in {
                return Err(Error::ShapeMismatch(format!(
                    "Kraus operator {l} is {}x{}, expected {}x{}",
                    k.nrows(),
                    k.ncols(),
                    dim_out,
                    dim_in
                )));
            }
            gram += k.adjoint() * k;
        }
        let dev = sup_norm(&(gram - CMat::identity(dim_in, dim_in)));
        if dev > TOL_ISOMETRY {
            return Err(Error::BadParameter(format!(
                "Kraus operators are trace preserving only within {dev:.3e}"
            )));
        }
        Ok(Self {
            kraus,
            dim_in,
            dim_out,
            out_label: out_label.into(),
        })
    }

    fn new_unchecked(kraus: Vec<CMat>, dim_in: usize, dim_out: usize, out_label: &str) -> Self {
        Self {
            kraus,
            dim_in,
            dim_out,
            out_label: out_label.into(),
        }
    }

    pub fn kraus(&self) -> &[CMat] {
        &self.kraus
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn out_label(&self) -> &str {
        &self.out_label
    }

    pub fn apply(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        if rho.dim() != self.dim_in {
            return Err(Error::DimMismatch(format!(
                "state of dimension {} into a channel with input {}",
                rho.dim(),
                self.dim_in
            )));
        }
        Ok(self.apply_mat(rho.mat()))
    }

    fn apply_mat(&self, mat: &CMat) -> DensityOperator {
        let mut out = CMat::zeros(self.dim_out, self.dim_out);
        for k in &self.kraus {
            out += k * mat * k.adjoint();
        }
        DensityOperator::new_unvalidated(
            out,
            DimsProfile::single(&self.out_label, self.dim_out).expect("valid label"),
        )
    }
}

/// Splits an isometry into its direct and complementary Kraus channels.
pub fn kraus_pair(iso: &Isometry) -> (KrausChannel, KrausChannel) {
    let (d_a, d_b, d_c) = (iso.d_a(), iso.d_b(), iso.d_c());
    let v = iso.mat();
    let direct = (0..d_c)
        .map(|l| CMat::from_fn(d_b, d_a, |i_b, i_a| v[(i_b * d_c + l, i_a)]))
        .collect();
    let complementary = (0..d_b)
        .map(|m| CMat::from_fn(d_c, d_a, |i_c, i_a| v[(m * d_c + i_c, i_a)]))
        .collect();
    (
        KrausChannel::new_unchecked(direct, d_a, d_b, "b"),
        KrausChannel::new_unchecked(complementary, d_a, d_c, "c"),
    )
}

/// Rebuilds the canonical isometry whose environment dimension is the
/// number of Kraus operators.
pub fn isometry_from_kraus(kraus: Vec<CMat>) -> Result<Isometry> {
    let checked = KrausChannel::new(kraus, "b")?;
    let d_c = checked.kraus().len();
    let (d_a, d_b) = (checked.dim_in(), checked.dim_out());
    let mut mat = CMat::zeros(d_b * d_c, d_a);
    for (l, k) in checked.kraus().iter().enumerate() {
        for i_b in 0..d_b {
            for i_a in 0..d_a {
                mat[(i_b * d_c + l, i_a)] = k[(i_b, i_a)];
            }
        }
    }
    Isometry::new(mat, d_a, d_b, d_c)
}

/// An isometry together with both of its marginal channels.
#[derive(Clone, Debug)]
pub struct ChannelPair {
    isometry: Isometry,
    direct: KrausChannel,
    complementary: KrausChannel,
}

impl ChannelPair {
    pub fn from_isometry(isometry: Isometry) -> Self {
        let (direct, complementary) = kraus_pair(&isometry);
        Self {
            isometry,
            direct,
            complementary,
        }
    }

    pub fn isometry(&self) -> &Isometry {
        &self.isometry
    }

    pub fn side(&self, side: ChannelSide) -> &KrausChannel {
        match side {
            ChannelSide::Direct => &self.direct,
            ChannelSide::Complementary => &self.complementary,
        }
    }

    /// Response to the maximally mixed input, computed from the dilation
    /// marginal rather than the Kraus sum.
    pub fn average_output(&self, side: ChannelSide) -> DensityOperator {
        let ups = upsilon(&self.isometry);
        let keep = [side.output_label()];
        let marginal = partial_trace(&ups, &keep).expect("fixed labels");
        DensityOperator::new_unvalidated(
            marginal.mat() * C64::new(1.0 / self.isometry.d_a() as f64, 0.0),
            marginal.dims().clone(),
        )
    }
}

/// `V V'`: the rank-`d_a` projector on output and environment whose
/// normalized marginals are the channel responses to the maximally mixed
/// input.
pub fn upsilon(iso: &Isometry) -> HermitianOperator {
    HermitianOperator::new_symmetrized(iso.mat() * iso.mat().adjoint(), iso.output_profile())
}

/// Ket of the channel: the dilation applied to half of a maximally
/// entangled pair, with amplitude `V[(i_b, i_c), i_a] / sqrt(d_a)` at
/// `(i_a, i_b, i_c)`.
pub fn channel_ket(iso: &Isometry) -> PureState {
    let (d_a, d_bc) = (iso.d_a(), iso.d_b() * iso.d_c());
    let root = 1.0 / (d_a as f64).sqrt();
    let mut amp = CVec::zeros(d_a * d_bc);
    for i_a in 0..d_a {
        for bc in 0..d_bc {
            amp[i_a * d_bc + bc] = iso.mat()[(bc, i_a)] * C64::new(root, 0.0);
        }
    }
    PureState::new(amp, iso.full_profile()).expect("isometry columns are unit vectors")
}

/// Inverts [`channel_ket`]: checks that the first marginal is maximally
/// mixed and extracts the isometry column by column, with a final polar
/// correction absorbing marginal-level noise.
pub fn isometry_from_channel_ket(ket: &PureState) -> Result<Isometry> {
    let dims = ket.dims();
    if dims.len() != 3 {
        return Err(Error::ShapeMismatch(format!(
            "channel kets live on three factors, got {}",
            dims.len()
        )));
    }
    let parts = dims.parts();
    let (d_a, d_b, d_c) = (parts[0].1, parts[1].1, parts[2].1);
    let first = parts[0].0.clone();
    let marginal = ket.reduce(&[first.as_str()])?;
    let flat = CMat::identity(d_a, d_a) * C64::new(1.0 / d_a as f64, 0.0);
    let residual = sup_norm(&(marginal.mat() - flat));
    if residual > TOL_KET_MARGINAL {
        return Err(Error::NotChannelKet { residual });
    }
    let d_bc = d_b * d_c;
    let root = (d_a as f64).sqrt();
    let mut mat = CMat::zeros(d_bc, d_a);
    for i_a in 0..d_a {
        for bc in 0..d_bc {
            mat[(bc, i_a)] = ket.amplitudes()[i_a * d_bc + bc] * C64::new(root, 0.0);
        }
    }
    let gram = HermitianOperator::new_symmetrized(
        mat.adjoint() * &mat,
        DimsProfile::single("a", d_a)?,
    );
    let correction = crate::operator::matrix_function(
        &gram,
        |x| 1.0 / x.max(EIG_CLIP).sqrt(),
        crate::operator::ZeroPolicy::Skip,
    )?;
    let corrected = mat * correction.mat();
    Isometry::new(corrected, d_a, d_b, d_c)
}

/// Ket with chosen input weights: the dilation applied to half of a
/// partially entangled pair `sum_k sqrt(pi_k) |k>|k>`.
pub fn partially_entangled_ket(iso: &Isometry, pi: &[f64]) -> Result<PureState> {
    let d_a = iso.d_a();
    if pi.len() != d_a {
        return Err(Error::ShapeMismatch(format!(
            "{} weights for input dimension {d_a}",
            pi.len()
        )));
    }
    let total: f64 = pi.iter().sum();
    if pi.iter().any(|p| *p < 0.0) || (total - 1.0).abs() > crate::entropy::TOL_SUPPORT {
        return Err(Error::BadParameter(format!(
            "input weights sum to {total:.12}"
        )));
    }
    let d_bc = iso.d_b() * iso.d_c();
    let mut amp = CVec::zeros(d_a * d_bc);
    for i_a in 0..d_a {
        let w = C64::new(pi[i_a].sqrt(), 0.0);
        for bc in 0..d_bc {
            amp[i_a * d_bc + bc] = iso.mat()[(bc, i_a)] * w;
        }
    }
    PureState::new(amp, iso.full_profile())
}

/// Holevo quantity of a POVM read through one side of a channel.
///
/// Outcome `j` occurs with probability `Tr(A_j)/d_a` and steers the
/// channel input to `A_j / Tr(A_j)`; outcomes below the zero-probability
/// threshold are skipped. The ensemble average must agree with the
/// channel's maximally mixed response, otherwise evaluation aborts.
pub fn chi_channel(
    povm: &Povm,
    pair: &ChannelPair,
    side: ChannelSide,
    kind: EntropyKind,
) -> Result<f64> {
    kind.validate()?;
    let d_a = pair.isometry().d_a();
    if povm.dim() != d_a {
        return Err(Error::DimMismatch(format!(
            "POVM of dimension {} against channel input {d_a}",
            povm.dim()
        )));
    }
    let channel = pair.side(side);
    let mut probs = Vec::with_capacity(povm.len());
    let mut members: Vec<Option<DensityOperator>> = Vec::with_capacity(povm.len());
    for elem in povm.elements() {
        let weight = elem.trace().re.max(0.0);
        let p = weight / d_a as f64;
        probs.push(p);
        if p < ZERO_PROB {
            members.push(None);
            continue;
        }
        let input = DensityOperator::new_unvalidated(
            elem * C64::new(1.0 / weight, 0.0),
            DimsProfile::single("a", d_a)?,
        );
        members.push(Some(channel.apply(&input)?));
    }
    let average = pair.average_output(side);
    let mut ensemble_avg = CMat::zeros(average.dim(), average.dim());
    for (p, rho) in probs.iter().zip(&members) {
        if let Some(rho) = rho {
            ensemble_avg += rho.mat() * C64::new(*p, 0.0);
        }
    }
    let residual = sup_norm(&(&ensemble_avg - average.mat()));
    if residual > TOL_AVG_CONSISTENCY {
        return Err(Error::Abort(format!(
            "channel ensemble average off by {residual:.3e}"
        )));
    }
    let mut chi = entropy(&average, kind);
    for (p, rho) in probs.iter().zip(&members) {
        if let Some(rho) = rho {
            chi -= p * entropy(rho, kind);
        }
    }
    Ok(chi)
}

/// Outcome probabilities a POVM induces through a channel: element traces
/// over the input dimension.
pub fn channel_outcome_probs(povm: &Povm, d_a: usize) -> Result<Vec<f64>> {
    if povm.dim() != d_a {
        return Err(Error::DimMismatch(format!(
            "POVM of dimension {} against channel input {d_a}",
            povm.dim()
        )));
    }
    Ok(povm
        .elements()
        .iter()
        .map(|e| (e.trace().re / d_a as f64).max(0.0))
        .collect())
}

/// Measurement on the input side of a ket that steers its far side through
/// the channel.
///
/// Given a ket whose input marginal is diagonal with weights `pi` and an
/// ensemble averaging to that marginal, returns the POVM whose outcome `j`
/// occurs with the ensemble probability and leaves the far side in the
/// channel image of member `j`. When the marginal is rank deficient, a
/// zero-probability kernel element completes the measure.
pub fn povm_from_input_ensemble(ket: &PureState, ensemble: &Ensemble) -> Result<Povm> {
    let dims = ket.dims();
    let parts = dims.parts();
    if parts.is_empty() {
        return Err(Error::ShapeMismatch("ket with no factors".into()));
    }
    let input_label = parts[0].0.clone();
    let d_a = parts[0].1;
    if ensemble.dims().len() != 1 || ensemble.dims().total() != d_a {
        return Err(Error::DimMismatch(format!(
            "ensemble on {} against ket input {input_label}:{d_a}",
            ensemble.dims()
        )));
    }
    let marginal = ket.reduce(&[input_label.as_str()])?;
    let off_diag = {
        let mut dev: f64 = 0.0;
        for i in 0..d_a {
            for j in 0..d_a {
                if i != j {
                    dev = dev.max(marginal.mat()[(i, j)].norm());
                }
            }
        }
        dev
    };
    if off_diag > TOL_KET_MARGINAL {
        return Err(Error::Unsupported(format!(
            "ket input marginal is not diagonal (residual {off_diag:.3e})"
        )));
    }
    let avg = ensemble.average();
    let residual = sup_norm(&(avg.mat() - marginal.mat()));
    if residual > TOL_KET_MARGINAL {
        return Err(Error::MarginalMismatch { residual });
    }
    let pi: Vec<f64> = (0..d_a).map(|k| marginal.mat()[(k, k)].re).collect();
    let scale: Vec<f64> = pi
        .iter()
        .map(|p| if *p > ZERO_PROB { 1.0 / p.sqrt() } else { 0.0 })
        .collect();
    let mut elements = Vec::with_capacity(ensemble.len() + 1);
    let mut support_total = CMat::zeros(d_a, d_a);
    for (idx, p) in ensemble.probs().iter().enumerate() {
        let elem = match &ensemble.states()[idx] {
            Some(rho) => {
                let whitened = CMat::from_fn(d_a, d_a, |i, j| {
                    rho.mat()[(i, j)] * C64::new(scale[i] * scale[j] * p, 0.0)
                });
                hermitize(&whitened.transpose())
            }
            None => CMat::zeros(d_a, d_a),
        };
        support_total += &elem;
        elements.push(elem);
    }
    let kernel = CMat::identity(d_a, d_a) - &support_total;
    if sup_norm(&kernel) > TOL_COMPLETION {
        elements.push(kernel);
    }
    Povm::new(&input_label, d_a, elements)
}

const TOL_COMPLETION: f64 = 1e-9;

/// Haar-random isometry.
pub fn random_isometry(d_a: usize, d_b: usize, d_c: usize, seed: u64) -> Result<Isometry> {
    let mut rng = crate::rng::seeded(seed);
    random_isometry_with(&mut rng, d_a, d_b, d_c)
}

pub(crate) fn random_isometry_with(
    rng: &mut rand_chacha::ChaCha12Rng,
    d_a: usize,
    d_b: usize,
    d_c: usize,
) -> Result<Isometry> {
    let d_bc = d_b * d_c;
    if d_a > d_bc {
        return Err(Error::DimMismatch(format!(
            "input dimension {d_a} exceeds output capacity {d_bc}"
        )));
    }
    let u = crate::rng::haar_unitary(rng, d_bc);
    let mat = CMat::from_fn(d_bc, d_a, |i, j| u[(i, j)]);
    Isometry::new(mat, d_a, d_b, d_c)
}
