//! Entropies of probability vectors and density operators.
//!
//! Spectrum entropies are computed from eigenvalues, never from matrix
//! logarithms, so rank-deficient states cost nothing extra. The logarithm
//! base is a process-wide setting (default: base 2) shared by every
//! logarithmic quantity in the crate; the Tsallis and quadratic entropies
//! contain no logarithm and ignore it.

use std::sync::atomic::{AtomicU8, Ordering};

use serde::{Deserialize, Serialize};

use crate::operator::{embed, DensityOperator, HermitianOperator, EIG_CLIP};
use crate::{Error, Result};

/// Weight a reference state may place outside the support of the second
/// argument of the relative entropy before the result is declared infinite.
pub const TOL_SUPPORT: f64 = 1e-8;

/// Base of every logarithm in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LogBase {
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "e")]
    E,
}

impl LogBase {
    fn ln_of_base(self) -> f64 {
        match self {
            LogBase::Two => std::f64::consts::LN_2,
            LogBase::E => 1.0,
        }
    }

    pub fn log(self, x: f64) -> f64 {
        x.ln() / self.ln_of_base()
    }
}

impl std::fmt::Display for LogBase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LogBase::Two => write!(f, "2"),
            LogBase::E => write!(f, "e"),
        }
    }
}

static LOG_BASE: AtomicU8 = AtomicU8::new(0);

/// Sets the process-wide logarithm base. Intended to be called once at
/// startup; computations in flight pick up the new base on their next call.
pub fn set_log_base(base: LogBase) {
    LOG_BASE.store(
        match base {
            LogBase::Two => 0,
            LogBase::E => 1,
        },
        Ordering::Relaxed,
    );
}

pub fn log_base() -> LogBase {
    match LOG_BASE.load(Ordering::Relaxed) {
        0 => LogBase::Two,
        _ => LogBase::E,
    }
}

/// Entropy functional selector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EntropyKind {
    VonNeumann,
    /// Order parameter in `(0, 1]`; `1` is the von Neumann limit.
    Renyi(f64),
    /// Order parameter in `(0, ∞)`; `1` is the von Neumann limit in nats.
    Tsallis(f64),
    /// `1 - Tr rho^2`; coincides with Tsallis of order 2.
    Quadratic,
}

impl EntropyKind {
    pub fn validate(&self) -> Result<()> {
        match self {
            EntropyKind::Renyi(q) => {
                if !q.is_finite() || *q <= 0.0 || *q > 1.0 {
                    return Err(Error::BadParameter(format!(
                        "Renyi order must lie in (0, 1], got {q}"
                    )));
                }
            }
            EntropyKind::Tsallis(q) => {
                if !q.is_finite() || *q <= 0.0 {
                    return Err(Error::BadParameter(format!(
                        "Tsallis order must be positive, got {q}"
                    )));
                }
            }
            EntropyKind::VonNeumann | EntropyKind::Quadratic => {}
        }
        Ok(())
    }

    /// Stable identifier used in reports.
    pub fn label(&self) -> String {
        match self {
            EntropyKind::VonNeumann => "von_neumann".into(),
            EntropyKind::Renyi(q) => format!("renyi({q})"),
            EntropyKind::Tsallis(q) => format!("tsallis({q})"),
            EntropyKind::Quadratic => "quadratic".into(),
        }
    }

    /// Whether the functional is concave in a way that guarantees the
    /// measurement-conditioned entropy gaps are nonnegative.
    pub fn is_logarithmic(&self) -> bool {
        matches!(self, EntropyKind::VonNeumann | EntropyKind::Renyi(_))
    }
}

impl std::fmt::Display for EntropyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Shannon entropy of a probability vector in the process log base.
///
/// Entries may carry eigenvalue-sized negative noise; anything below
/// `-EIG_CLIP` or a total off from one by more than `TOL_SUPPORT` is
/// rejected.
pub fn shannon(probs: &[f64]) -> Result<f64> {
    let total: f64 = probs.iter().sum();
    if probs.iter().any(|p| *p < -EIG_CLIP) || (total - 1.0).abs() > TOL_SUPPORT {
        return Err(Error::BadParameter(format!(
            "not a probability vector (sum {total:.12})"
        )));
    }
    Ok(spectrum_entropy(probs, EntropyKind::VonNeumann, log_base()))
}

/// Entropy of a nonnegative spectrum in an explicit base.
///
/// Values at or below the eigenvalue clip are treated as exact zeros.
pub fn spectrum_entropy(eigs: &[f64], kind: EntropyKind, base: LogBase) -> f64 {
    let support = eigs.iter().cloned().filter(|x| *x > EIG_CLIP);
    match kind {
        EntropyKind::VonNeumann => support.map(|p| -p * base.log(p)).sum(),
        EntropyKind::Renyi(q) => {
            if (q - 1.0).abs() < 1e-12 {
                return spectrum_entropy(eigs, EntropyKind::VonNeumann, base);
            }
            let power: f64 = support.map(|p| p.powf(q)).sum();
            base.log(power) / (1.0 - q)
        }
        EntropyKind::Tsallis(q) => {
            if (q - 1.0).abs() < 1e-12 {
                return support.map(|p| -p * p.ln()).sum();
            }
            let power: f64 = support.map(|p| p.powf(q)).sum();
            (1.0 - power) / (q - 1.0)
        }
        EntropyKind::Quadratic => 1.0 - support.map(|p| p * p).sum::<f64>(),
    }
}

/// Entropy of a density operator in the process log base.
pub fn entropy(rho: &DensityOperator, kind: EntropyKind) -> f64 {
    spectrum_entropy(rho.spectrum(), kind, log_base())
}

/// Von Neumann entropy in the process log base.
pub fn von_neumann(rho: &DensityOperator) -> f64 {
    entropy(rho, EntropyKind::VonNeumann)
}

/// Relative entropy value; infinite when the first argument has weight
/// outside the support of the second.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RelEntropy {
    Finite(f64),
    Infinite,
}

impl RelEntropy {
    pub fn finite(self) -> Option<f64> {
        match self {
            RelEntropy::Finite(x) => Some(x),
            RelEntropy::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, RelEntropy::Infinite)
    }
}

/// Relative entropy `Tr a (log a - log b)` in the process log base.
///
/// `a` must be positive with unit trace; `b` must be positive but may have
/// any positive trace. Support leakage beyond `TOL_SUPPORT` yields
/// [`RelEntropy::Infinite`].
pub fn relative_entropy(a: &DensityOperator, b: &HermitianOperator) -> Result<RelEntropy> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch(format!(
            "relative entropy of a {}-dim state against a {}-dim operator",
            a.dim(),
            b.dim()
        )));
    }
    let (betas, vecs) = b.eigh();
    if betas.iter().any(|x| *x < -crate::operator::TOL_EIGEN) {
        return Err(Error::BadParameter(
            "second argument of the relative entropy is not positive".into(),
        ));
    }
    let base = log_base();
    let amat = a.mat();
    let mut leakage = 0.0;
    let mut cross = 0.0;
    for (k, &beta) in betas.iter().enumerate() {
        let v = vecs.column(k);
        let weight = (v.adjoint() * amat * v)[(0, 0)].re.max(0.0);
        if beta <= EIG_CLIP {
            leakage += weight;
        } else {
            cross += weight * base.log(beta);
        }
    }
    if leakage > TOL_SUPPORT {
        return Ok(RelEntropy::Infinite);
    }
    let own: f64 = a
        .spectrum()
        .iter()
        .cloned()
        .filter(|x| *x > EIG_CLIP)
        .map(|p| p * base.log(p))
        .sum();
    Ok(RelEntropy::Finite(own - cross))
}

/// Von Neumann conditional entropy `S(first | second)` of a multipartite
/// state, with both label sets drawn from the state's profile.
pub fn conditional_entropy(
    rho: &DensityOperator,
    first: &[&str],
    second: &[&str],
) -> Result<f64> {
    let joint_labels: Vec<&str> = rho
        .dims()
        .labels()
        .filter(|l| first.contains(l) || second.contains(l))
        .collect();
    let joint = reduce_if_needed(rho, &joint_labels)?;
    let cond = rho.reduce(second)?;
    Ok(von_neumann(&joint) - von_neumann(&cond))
}

/// Von Neumann mutual information `S(first) + S(second) - S(first, second)`.
pub fn mutual_info(rho: &DensityOperator, first: &[&str], second: &[&str]) -> Result<f64> {
    for l in first {
        if second.contains(l) {
            return Err(Error::BadParameter(format!(
                "label `{l}` appears on both sides of the mutual information"
            )));
        }
    }
    let joint_labels: Vec<&str> = rho
        .dims()
        .labels()
        .filter(|l| first.contains(l) || second.contains(l))
        .collect();
    let joint = reduce_if_needed(rho, &joint_labels)?;
    let ra = rho.reduce(first)?;
    let rb = rho.reduce(second)?;
    Ok(von_neumann(&ra) + von_neumann(&rb) - von_neumann(&joint))
}

fn reduce_if_needed(rho: &DensityOperator, labels: &[&str]) -> Result<DensityOperator> {
    if labels.len() == rho.dims().len() {
        Ok(rho.clone())
    } else {
        rho.reduce(labels)
    }
}

/// Entropy of the post-measurement average under a complete projective
/// pinching on one factor, used to cross-check conditioned entropies.
pub fn pinched_entropy(
    rho: &DensityOperator,
    projectors: &[crate::operator::CMat],
    label: &str,
) -> Result<f64> {
    let mut acc = crate::operator::CMat::zeros(rho.dim(), rho.dim());
    for p in projectors {
        let big = embed(p, rho.dims(), label)?;
        acc += &big * rho.mat() * &big;
    }
    let pinched = DensityOperator::new_unvalidated(acc, rho.dims().clone());
    Ok(von_neumann(&pinched))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{CMat, CVec, DimsProfile, PureState, C64};

    fn qubit_diag(p: f64) -> DensityOperator {
        let mat = CMat::from_fn(2, 2, |i, j| {
            if i == j {
                C64::new(if i == 0 { p } else { 1.0 - p }, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        DensityOperator::new(mat, DimsProfile::single("a", 2).unwrap()).unwrap()
    }

    #[test]
    fn shannon_known_values() {
        assert!((shannon(&[0.5, 0.5]).unwrap() - 1.0).abs() < 1e-12);
        assert!((shannon(&[0.25, 0.75]).unwrap() - 0.8112781244591328).abs() < 1e-12);
        assert!(shannon(&[1.0, 0.0]).unwrap().abs() < 1e-12);
        assert!(shannon(&[0.5, 0.6]).is_err());
        assert!(shannon(&[1.2, -0.2]).is_err());
    }

    #[test]
    fn spectrum_entropy_known_values() {
        let p = [0.25, 0.75];
        let b2 = LogBase::Two;
        assert!(
            (spectrum_entropy(&p, EntropyKind::VonNeumann, b2) - 0.8112781244591328).abs()
                < 1e-12
        );
        assert!(
            (spectrum_entropy(&p, EntropyKind::Renyi(0.5), b2) - 0.8999686269529916).abs()
                < 1e-12
        );
        assert!(
            (spectrum_entropy(&p, EntropyKind::Renyi(0.3), b2) - 0.9389221672986376).abs()
                < 1e-12
        );
        assert!((spectrum_entropy(&p, EntropyKind::Tsallis(2.0), b2) - 0.375).abs() < 1e-12);
        assert!(
            (spectrum_entropy(&p, EntropyKind::Tsallis(0.5), b2) - 0.7320508075688772).abs()
                < 1e-12
        );
        assert!((spectrum_entropy(&p, EntropyKind::Quadratic, b2) - 0.375).abs() < 1e-12);
    }

    #[test]
    fn base_changes_only_logarithmic_kinds() {
        let p = [0.25, 0.75];
        let ratio = spectrum_entropy(&p, EntropyKind::VonNeumann, LogBase::Two)
            / spectrum_entropy(&p, EntropyKind::VonNeumann, LogBase::E);
        assert!((ratio - 1.0 / std::f64::consts::LN_2).abs() < 1e-12);
        for kind in [EntropyKind::Tsallis(2.0), EntropyKind::Tsallis(0.5), EntropyKind::Quadratic] {
            let two = spectrum_entropy(&p, kind, LogBase::Two);
            let nat = spectrum_entropy(&p, kind, LogBase::E);
            assert!((two - nat).abs() < 1e-15);
        }
    }

    #[test]
    fn order_one_limits() {
        let p = [0.25, 0.75];
        assert!(
            (spectrum_entropy(&p, EntropyKind::Renyi(1.0), LogBase::Two)
                - 0.8112781244591328)
                .abs()
                < 1e-12
        );
        assert!(
            (spectrum_entropy(&p, EntropyKind::Tsallis(1.0), LogBase::Two)
                - 0.5623351446188083)
                .abs()
                < 1e-12
        );
        // Continuity at the limit point.
        let near = spectrum_entropy(&p, EntropyKind::Renyi(0.999999), LogBase::Two);
        assert!((near - 0.8112781244591328).abs() < 1e-5);
    }

    #[test]
    fn kind_validation() {
        assert!(EntropyKind::Renyi(0.5).validate().is_ok());
        assert!(EntropyKind::Renyi(1.0).validate().is_ok());
        assert!(EntropyKind::Renyi(1.5).validate().is_err());
        assert!(EntropyKind::Renyi(0.0).validate().is_err());
        assert!(EntropyKind::Tsallis(3.0).validate().is_ok());
        assert!(EntropyKind::Tsallis(-1.0).validate().is_err());
        assert!(EntropyKind::Quadratic.validate().is_ok());
    }

    #[test]
    fn density_entropy_uses_cached_spectrum() {
        let rho = qubit_diag(0.25);
        assert!((von_neumann(&rho) - 0.8112781244591328).abs() < 1e-10);
        assert!((entropy(&rho, EntropyKind::Quadratic) - 0.375).abs() < 1e-10);
    }

    #[test]
    fn relative_entropy_known_value() {
        let a = qubit_diag(0.25);
        let b = qubit_diag(0.5);
        let val = relative_entropy(&a, b.op()).unwrap().finite().unwrap();
        assert!((val - 0.18872187554086717).abs() < 1e-10);
        // Identical states give zero.
        let zero = relative_entropy(&a, a.op()).unwrap().finite().unwrap();
        assert!(zero.abs() < 1e-10);
    }

    #[test]
    fn relative_entropy_nonnegative_on_random_pairs() {
        for seed in 0..20u64 {
            let mut rng = crate::rng::seeded(1000 + seed);
            let dims = DimsProfile::single("a", 3).unwrap();
            let a = crate::rng::random_density(&mut rng, dims.clone());
            let b = crate::rng::random_density(&mut rng, dims);
            let val = relative_entropy(&a, b.op()).unwrap().finite().unwrap();
            assert!(val > -1e-9, "seed {seed}: negative relative entropy {val}");
        }
    }

    #[test]
    fn relative_entropy_support_mismatch_is_infinite() {
        let plus = {
            let mut amp = CVec::zeros(2);
            amp[0] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            amp[1] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            PureState::new(amp, DimsProfile::single("a", 2).unwrap())
                .unwrap()
                .to_density()
        };
        let zero_proj = qubit_diag(1.0);
        let val = relative_entropy(&plus, zero_proj.op()).unwrap();
        assert!(val.is_infinite());
        // Contained support stays finite even when the reference is pure.
        let val = relative_entropy(&zero_proj, zero_proj.op()).unwrap();
        assert_eq!(val, RelEntropy::Finite(0.0));
    }

    #[test]
    fn relative_entropy_dominance_scaling() {
        // S(a || t a) = -log t for a trace-t reference.
        let a = qubit_diag(0.25);
        let scaled =
            HermitianOperator::new(a.mat() * C64::new(0.5, 0.0), a.dims().clone()).unwrap();
        let val = relative_entropy(&a, &scaled).unwrap().finite().unwrap();
        assert!((val - 1.0).abs() < 1e-10);
    }

    #[test]
    fn conditional_and_mutual_on_bell_state() {
        let dims = DimsProfile::new(&[("a", 2), ("b", 2)]).unwrap();
        let mut amp = CVec::zeros(4);
        amp[0] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amp[3] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let bell = PureState::new(amp, dims).unwrap().to_density();
        let cond = conditional_entropy(&bell, &["a"], &["b"]).unwrap();
        assert!((cond + 1.0).abs() < 1e-10);
        let mi = mutual_info(&bell, &["a"], &["b"]).unwrap();
        assert!((mi - 2.0).abs() < 1e-10);
        assert!(mutual_info(&bell, &["a"], &["a"]).is_err());
    }

    #[test]
    fn conditional_entropy_of_product_state_drops_conditioner() {
        let mut rng = crate::rng::seeded(17);
        let a = crate::rng::random_density(&mut rng, DimsProfile::single("a", 2).unwrap());
        let b = crate::rng::random_density(&mut rng, DimsProfile::single("b", 3).unwrap());
        let joint = crate::operator::tensor(a.op(), b.op()).unwrap();
        let rho = DensityOperator::new_unvalidated(joint.mat().clone(), joint.dims().clone());
        let cond = conditional_entropy(&rho, &["a"], &["b"]).unwrap();
        assert!((cond - von_neumann(&a)).abs() < 1e-10);
        let mi = mutual_info(&rho, &["a"], &["b"]).unwrap();
        assert!(mi.abs() < 1e-9);
    }

    #[test]
    fn strong_subadditivity_on_random_states() {
        for seed in 0..10u64 {
            let mut rng = crate::rng::seeded(2000 + seed);
            let dims = DimsProfile::new(&[("a", 2), ("b", 2), ("c", 2)]).unwrap();
            let rho = crate::rng::random_density(&mut rng, dims);
            let lhs = conditional_entropy(&rho, &["a"], &["b", "c"]).unwrap();
            let rhs = conditional_entropy(&rho, &["a"], &["b"]).unwrap();
            assert!(lhs <= rhs + 1e-9, "seed {seed}: {lhs} > {rhs}");
        }
    }
}
