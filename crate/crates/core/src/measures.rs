//! Information measures built from measurements: Holevo quantities,
//! missing information, pinching maps, and side-to-side biases.
//!
//! State-side quantities steer on actual outcome probabilities of the
//! measured marginal; channel-side quantities weigh outcomes by element
//! traces over the input dimension. The two conventions coincide exactly
//! when the state is a channel ket, and they are kept as separate code
//! paths so that agreement between them stays a meaningful check.

use crate::channel::{chi_channel, channel_outcome_probs, ChannelPair, ChannelSide};
use crate::entropy::{entropy, shannon, von_neumann, EntropyKind};
use crate::measurement::{conditional_ensemble, Ensemble, Povm, ProjectiveDecomposition};
use crate::operator::{
    embed, hermitize, partial_trace_raw, CMat, DensityOperator, DimsProfile, C64,
};
use crate::{Error, Result};

/// Holevo quantity of an ensemble: entropy of the average minus the
/// average entropy, in the chosen functional.
pub fn holevo_chi(ensemble: &Ensemble, kind: EntropyKind) -> Result<f64> {
    kind.validate()?;
    let mut chi = entropy(&ensemble.average(), kind);
    for (p, rho) in ensemble.iter_present() {
        chi -= p * entropy(rho, kind);
    }
    Ok(chi)
}

/// Holevo quantity a measurement acquires about the unmeasured remainder
/// of a joint state.
///
/// The POVM's label names the measured factor; the ensemble it steers
/// lives on everything else.
pub fn chi(rho: &DensityOperator, povm: &Povm, kind: EntropyKind) -> Result<f64> {
    let ensemble = conditional_ensemble(rho, povm, povm.label())?;
    holevo_chi(&ensemble, kind)
}

/// Outcome probabilities of a POVM measured on its factor of a joint state.
pub fn outcome_probs(rho: &DensityOperator, povm: &Povm) -> Result<Vec<f64>> {
    let label = povm.label();
    if rho.dims().len() == 1 {
        return povm.probs(rho);
    }
    let mut probs = Vec::with_capacity(povm.len());
    for elem in povm.elements() {
        let big = embed(elem, rho.dims(), label)?;
        probs.push((big * rho.mat()).trace().re.max(0.0));
    }
    Ok(probs)
}

/// Missing information about a measurement after observing the remainder:
/// outcome entropy minus the Holevo quantity.
pub fn missing_info(rho: &DensityOperator, povm: &Povm) -> Result<f64> {
    let h = shannon(&outcome_probs(rho, povm)?)?;
    Ok(h - chi(rho, povm, EntropyKind::VonNeumann)?)
}

/// Channel-side missing information, with outcomes weighed by element
/// traces over the input dimension.
pub fn missing_info_channel(
    povm: &Povm,
    pair: &ChannelPair,
    side: ChannelSide,
) -> Result<f64> {
    let probs = channel_outcome_probs(povm, pair.isometry().d_a())?;
    let h = shannon(&probs)?;
    Ok(h - chi_channel(povm, pair, side, EntropyKind::VonNeumann)?)
}

/// Records outcomes of a projective measurement coherently in a fresh
/// register: maps the state to a block-diagonal one whose register
/// conditional entropy reproduces the missing information of the
/// measurement.
pub fn pinch_channel(
    rho: &DensityOperator,
    decomposition: &ProjectiveDecomposition,
) -> Result<DensityOperator> {
    let dims = rho.dims();
    let label = decomposition.label();
    if dims.dim(label) != Some(decomposition.dim()) {
        return Err(Error::DimMismatch(format!(
            "decomposition on `{label}`:{} against state {}",
            decomposition.dim(),
            dims
        )));
    }
    if dims.len() < 2 {
        return Err(Error::BadParameter(
            "pinching needs at least one untouched factor".into(),
        ));
    }
    let keep: Vec<&str> = dims.labels().filter(|l| *l != label).collect();
    let n = decomposition.elements().len();
    let register = dims.fresh_label("e");
    let mut out_dims = DimsProfile::single(&register, n)?;
    out_dims = out_dims.concat(&dims.subset(&keep)?)?;
    let d_rest: usize = dims.subset(&keep)?.total();
    let mut out = CMat::zeros(n * d_rest, n * d_rest);
    for (j, p) in decomposition.elements().iter().enumerate() {
        let big = embed(p, dims, label)?;
        let weighted = big * rho.mat();
        let (block, _) = partial_trace_raw(&weighted, dims, &keep)?;
        let block = hermitize(&block);
        for r1 in 0..d_rest {
            for r2 in 0..d_rest {
                out[(j * d_rest + r1, j * d_rest + r2)] = block[(r1, r2)];
            }
        }
    }
    Ok(DensityOperator::new_unvalidated(out, out_dims))
}

/// Entropy and information imbalance between two receivers of the same
/// source.
#[derive(Clone, Copy, Debug)]
pub struct BiasReport {
    /// Marginal-entropy difference between the two receivers.
    pub entropy_bias: f64,
    /// Holevo-quantity difference for the given measurement.
    pub info_bias: f64,
}

/// Biases of a measurement on one factor of a three-party state, with the
/// two unmeasured factors (in profile order) as receivers.
pub fn biases(rho: &DensityOperator, povm: &Povm, kind: EntropyKind) -> Result<BiasReport> {
    kind.validate()?;
    let dims = rho.dims();
    if dims.len() != 3 {
        return Err(Error::BadParameter(format!(
            "biases need a three-party state, got {dims}"
        )));
    }
    let measured = povm.label();
    if dims.dim(measured) != Some(povm.dim()) {
        return Err(Error::DimMismatch(format!(
            "POVM on `{measured}`:{} against state {dims}",
            povm.dim()
        )));
    }
    let receivers: Vec<&str> = dims.labels().filter(|l| *l != measured).collect();
    let (first, second) = (receivers[0], receivers[1]);
    let chi_first = chi(&rho.reduce(&[measured, first])?, povm, kind)?;
    let chi_second = chi(&rho.reduce(&[measured, second])?, povm, kind)?;
    let s_first = entropy(&rho.reduce(&[first])?, kind);
    let s_second = entropy(&rho.reduce(&[second])?, kind);
    Ok(BiasReport {
        entropy_bias: s_first - s_second,
        info_bias: chi_first - chi_second,
    })
}

/// Biases of a channel input measurement, with the direct output and the
/// environment as receivers.
pub fn channel_biases(povm: &Povm, pair: &ChannelPair, kind: EntropyKind) -> Result<BiasReport> {
    kind.validate()?;
    let chi_direct = chi_channel(povm, pair, ChannelSide::Direct, kind)?;
    let chi_compl = chi_channel(povm, pair, ChannelSide::Complementary, kind)?;
    let s_direct = entropy(&pair.average_output(ChannelSide::Direct), kind);
    let s_compl = entropy(&pair.average_output(ChannelSide::Complementary), kind);
    Ok(BiasReport {
        entropy_bias: s_direct - s_compl,
        info_bias: chi_direct - chi_compl,
    })
}

/// Coherent information of the channel at maximally mixed input: entropy
/// of the direct average output minus entropy of the environment average.
pub fn coherent_info(pair: &ChannelPair) -> f64 {
    von_neumann(&pair.average_output(ChannelSide::Direct))
        - von_neumann(&pair.average_output(ChannelSide::Complementary))
}

/// The three-qubit state with two perfectly correlated branches shared
/// among all parties.
pub fn ghz() -> DensityOperator {
    let dims = DimsProfile::new(&[("a", 2), ("b", 2), ("c", 2)]).expect("fixed labels");
    let mut amp = crate::operator::CVec::zeros(8);
    amp[0] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amp[7] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    crate::operator::PureState::new(amp, dims)
        .expect("normalized")
        .to_density()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{channel_ket, random_isometry};
    use crate::measurement::{
        mub_pair, qubit_mub_triple, random_projective, random_rank1_povm, OrthonormalBasis,
    };
    use crate::operator::{sup_norm, PureState};

    fn qubit_dims() -> DimsProfile {
        DimsProfile::single("a", 2).unwrap()
    }

    #[test]
    fn holevo_chi_of_tilted_pure_pair() {
        let z = OrthonormalBasis::computational("a", 2);
        let plus = {
            let mut amp = crate::operator::CVec::zeros(2);
            amp[0] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            amp[1] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            PureState::new(amp, qubit_dims()).unwrap().to_density()
        };
        let ground = DensityOperator::new_unvalidated(z.projector(0), qubit_dims());
        let ens =
            Ensemble::from_parts(vec![(0.5, ground), (0.5, plus)], qubit_dims()).unwrap();
        let chi = holevo_chi(&ens, EntropyKind::VonNeumann).unwrap();
        assert!((chi - 0.6008760366928562).abs() < 1e-12);
        // Pure members leave only the average's entropy.
        let avg_entropy = von_neumann(&ens.average());
        assert!((chi - avg_entropy).abs() < 1e-12);
    }

    #[test]
    fn chi_of_bell_state_measurement() {
        let dims = DimsProfile::new(&[("a", 2), ("b", 2)]).unwrap();
        let mut amp = crate::operator::CVec::zeros(4);
        amp[0] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amp[3] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let bell = PureState::new(amp, dims).unwrap().to_density();
        let z = OrthonormalBasis::computational("a", 2).to_povm();
        let val = chi(&bell, &z, EntropyKind::VonNeumann).unwrap();
        assert!((val - 1.0).abs() < 1e-10);
        assert!(missing_info(&bell, &z).unwrap().abs() < 1e-10);
    }

    #[test]
    fn ghz_information_pattern() {
        let state = ghz();
        let [x, _, z] = qubit_mub_triple("a");
        let zb = chi(&state.reduce(&["a", "b"]).unwrap(), &z.to_povm(), EntropyKind::VonNeumann)
            .unwrap();
        let zc = chi(&state.reduce(&["a", "c"]).unwrap(), &z.to_povm(), EntropyKind::VonNeumann)
            .unwrap();
        let xb = chi(&state.reduce(&["a", "b"]).unwrap(), &x.to_povm(), EntropyKind::VonNeumann)
            .unwrap();
        let xc = chi(&state.reduce(&["a", "c"]).unwrap(), &x.to_povm(), EntropyKind::VonNeumann)
            .unwrap();
        assert!((zb - 1.0).abs() < 1e-10);
        assert!((zc - 1.0).abs() < 1e-10);
        assert!(xb.abs() < 1e-10);
        assert!(xc.abs() < 1e-10);
        let hx = missing_info(&state.reduce(&["a", "b"]).unwrap(), &x.to_povm()).unwrap();
        let hz = missing_info(&state.reduce(&["a", "c"]).unwrap(), &z.to_povm()).unwrap();
        assert!((hx - 1.0).abs() < 1e-10);
        assert!(hz.abs() < 1e-10);
        for basis in [&x, &z] {
            let report = biases(&state, &basis.to_povm(), EntropyKind::VonNeumann).unwrap();
            assert!(report.entropy_bias.abs() < 1e-10);
            assert!(report.info_bias.abs() < 1e-10);
        }
    }

    #[test]
    fn ghz_with_split_mub_povm() {
        let state = ghz().reduce(&["a", "b"]).unwrap();
        let [x, y, _] = qubit_mub_triple("a");
        let half = C64::new(0.5, 0.0);
        let povm = Povm::new(
            "a",
            2,
            vec![
                x.projector(0) * half,
                x.projector(1) * half,
                y.projector(0) * half,
                y.projector(1) * half,
            ],
        )
        .unwrap();
        let probs = outcome_probs(&state, &povm).unwrap();
        assert!((shannon(&probs).unwrap() - 2.0).abs() < 1e-10);
        assert!(chi(&state, &povm, EntropyKind::VonNeumann).unwrap().abs() < 1e-10);
        assert!((missing_info(&state, &povm).unwrap() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn bipartite_pure_chi_equals_marginal_entropy() {
        let mut rng = crate::rng::seeded(31);
        let dims = DimsProfile::new(&[("a", 2), ("b", 3)]).unwrap();
        let psi = crate::rng::random_pure(&mut rng, dims);
        let rho = psi.to_density();
        let s_a = von_neumann(&rho.reduce(&["a"]).unwrap());
        for kind in [
            EntropyKind::VonNeumann,
            EntropyKind::Renyi(0.5),
            EntropyKind::Tsallis(2.0),
            EntropyKind::Quadratic,
        ] {
            let s_k = entropy(&rho.reduce(&["a"]).unwrap(), kind);
            let basis = crate::measurement::random_basis("a", 2, 7);
            let val = chi(&rho, &basis.to_povm(), kind).unwrap();
            assert!((val - s_k).abs() < 1e-9, "{kind}: {val} vs {s_k}");
        }
        let _ = s_a;
    }

    #[test]
    fn pinched_register_entropy_matches_missing_info() {
        for seed in 0..5u64 {
            let mut rng = crate::rng::seeded(600 + seed);
            let dims = DimsProfile::new(&[("a", 3), ("b", 2)]).unwrap();
            let rho = crate::rng::random_density(&mut rng, dims);
            let proj = random_projective("a", 3, 70 + seed).unwrap();
            let pinched = pinch_channel(&rho, &proj).unwrap();
            let s_joint = von_neumann(&pinched);
            let s_b = von_neumann(&pinched.reduce(&["b"]).unwrap());
            let missing = missing_info(&rho, proj.povm()).unwrap();
            assert!(
                (missing - (s_joint - s_b)).abs() < 1e-9,
                "seed {seed}: {missing} vs {}",
                s_joint - s_b
            );
        }
    }

    #[test]
    fn pinching_preserves_unmeasured_marginal() {
        let mut rng = crate::rng::seeded(80);
        let dims = DimsProfile::new(&[("a", 2), ("b", 3)]).unwrap();
        let rho = crate::rng::random_density(&mut rng, dims);
        let proj = OrthonormalBasis::computational("a", 2).to_projective();
        let pinched = pinch_channel(&rho, &proj).unwrap();
        let before = rho.reduce(&["b"]).unwrap();
        let after = pinched.reduce(&["b"]).unwrap();
        assert!(sup_norm(&(before.mat() - after.mat())) < 1e-10);
    }

    #[test]
    fn channel_biases_match_state_biases_on_the_ket() {
        let iso = random_isometry(2, 2, 3, 51).unwrap();
        let ket = channel_ket(&iso);
        let pair = crate::channel::ChannelPair::from_isometry(iso);
        let povm = random_rank1_povm("a", 2, 3, 5).unwrap();
        for kind in [EntropyKind::VonNeumann, EntropyKind::Quadratic] {
            let state_side = biases(&ket.to_density(), &povm.transposed(), kind).unwrap();
            let channel_side = channel_biases(&povm, &pair, kind).unwrap();
            assert!((state_side.entropy_bias - channel_side.entropy_bias).abs() < 1e-9);
            assert!((state_side.info_bias - channel_side.info_bias).abs() < 1e-9);
        }
    }

    #[test]
    fn transposed_povm_reads_the_channel_through_the_ket() {
        let iso = random_isometry(3, 2, 3, 77).unwrap();
        let ket = channel_ket(&iso);
        let pair = crate::channel::ChannelPair::from_isometry(iso);
        let rho_ab = ket.reduce(&["a", "b"]).unwrap();
        let povm = random_rank1_povm("a", 3, 4, 9).unwrap();
        let via_state = chi(&rho_ab, &povm.transposed(), EntropyKind::VonNeumann).unwrap();
        let via_channel =
            chi_channel(&povm, &pair, ChannelSide::Direct, EntropyKind::VonNeumann).unwrap();
        assert!((via_state - via_channel).abs() < 1e-10);
        let h_state = missing_info(&rho_ab, &povm.transposed()).unwrap();
        let h_channel = missing_info_channel(&povm, &pair, ChannelSide::Direct).unwrap();
        assert!((h_state - h_channel).abs() < 1e-10);
    }

    #[test]
    fn coherent_info_equals_ket_entropy_bias() {
        let iso = random_isometry(2, 3, 2, 90).unwrap();
        let ket = channel_ket(&iso);
        let pair = crate::channel::ChannelPair::from_isometry(iso);
        let s_b = von_neumann(&ket.reduce(&["b"]).unwrap());
        let s_c = von_neumann(&ket.reduce(&["c"]).unwrap());
        assert!((coherent_info(&pair) - (s_b - s_c)).abs() < 1e-10);
    }

    #[test]
    fn mub_chi_splits_between_receivers() {
        // Measuring either member of a mutually unbiased pair on one half
        // of a maximally entangled state reads out fully.
        let d = 3usize;
        let dims = DimsProfile::new(&[("a", d), ("b", d)]).unwrap();
        let mut amp = crate::operator::CVec::zeros(d * d);
        let root = C64::new(1.0 / (d as f64).sqrt(), 0.0);
        for k in 0..d {
            amp[k * d + k] = root;
        }
        let phi = PureState::new(amp, dims).unwrap().to_density();
        let (z, f) = mub_pair("a", d);
        for basis in [&z, &f] {
            let val = chi(&phi, &basis.to_povm(), EntropyKind::VonNeumann).unwrap();
            assert!((val - (d as f64).log2()).abs() < 1e-10);
        }
    }
}
