//! Registry of the library's checkable relations, randomized verification
//! suites over them, and a counterexample search for the one monotonicity
//! that only holds for the von Neumann family.
//!
//! Every relation is evaluated as a set of oriented links computed through
//! two independent routes (measurement statistics on one side, spectral
//! quantities on the other); a result records the tightest link.

mod instance;
mod relations;

pub use instance::{assemble_instance, sample_instance, Instance};

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::entropy::{set_log_base, LogBase};
use crate::measurement::{qubit_mub_triple, Povm};
use crate::measures::{chi, ghz, missing_info, outcome_probs};
use crate::operator::{CMat, DensityOperator, DimsProfile, C64};
use crate::rng::{mix, random_density_ranked, seeded};
use crate::{EntropyKind, Error, Result};

/// Identifier of one checkable statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationId {
    Lemma1Chain,
    Thm2BasisInvariance,
    Thm3BiasInvariance,
    Lemma4TruncationEq,
    Lemma4TruncationIneq,
    Thm5Povm,
    Thm5Single,
    Thm5Bases,
    Thm5Mub,
    Cor6Channel,
    Cor7SingleSystem,
    Thm8Suppression,
    Thm8EqualPresence,
    Cor9NoSplitting,
    Thm10Presence,
    Thm11Decoupling,
    Thm11Pure,
    Thm11Channel,
    Eq33Ssa,
    Eq37Subsystem,
}

impl RelationId {
    pub const ALL: [RelationId; 20] = [
        RelationId::Lemma1Chain,
        RelationId::Thm2BasisInvariance,
        RelationId::Thm3BiasInvariance,
        RelationId::Lemma4TruncationEq,
        RelationId::Lemma4TruncationIneq,
        RelationId::Thm5Povm,
        RelationId::Thm5Single,
        RelationId::Thm5Bases,
        RelationId::Thm5Mub,
        RelationId::Cor6Channel,
        RelationId::Cor7SingleSystem,
        RelationId::Thm8Suppression,
        RelationId::Thm8EqualPresence,
        RelationId::Cor9NoSplitting,
        RelationId::Thm10Presence,
        RelationId::Thm11Decoupling,
        RelationId::Thm11Pure,
        RelationId::Thm11Channel,
        RelationId::Eq33Ssa,
        RelationId::Eq37Subsystem,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationId::Lemma1Chain => "lemma1_chain",
            RelationId::Thm2BasisInvariance => "thm2_basis_invariance",
            RelationId::Thm3BiasInvariance => "thm3_bias_invariance",
            RelationId::Lemma4TruncationEq => "lemma4_truncation_eq",
            RelationId::Lemma4TruncationIneq => "lemma4_truncation_ineq",
            RelationId::Thm5Povm => "thm5_povm",
            RelationId::Thm5Single => "thm5_single",
            RelationId::Thm5Bases => "thm5_bases",
            RelationId::Thm5Mub => "thm5_mub",
            RelationId::Cor6Channel => "cor6_channel",
            RelationId::Cor7SingleSystem => "cor7_single_system",
            RelationId::Thm8Suppression => "thm8_suppression",
            RelationId::Thm8EqualPresence => "thm8_equal_presence",
            RelationId::Cor9NoSplitting => "cor9_no_splitting",
            RelationId::Thm10Presence => "thm10_presence",
            RelationId::Thm11Decoupling => "thm11_decoupling",
            RelationId::Thm11Pure => "thm11_pure",
            RelationId::Thm11Channel => "thm11_channel",
            RelationId::Eq33Ssa => "eq33_ssa",
            RelationId::Eq37Subsystem => "eq37_subsystem",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.name() == name)
    }

    /// Whether the headline links are equalities rather than inequalities.
    pub fn is_equality(self) -> bool {
        matches!(
            self,
            RelationId::Thm2BasisInvariance
                | RelationId::Thm3BiasInvariance
                | RelationId::Lemma4TruncationEq
                | RelationId::Thm8EqualPresence
        )
    }

    /// Whether the statement is quantified over the whole concave entropy
    /// family rather than the von Neumann entropy alone.
    pub fn supports_kinds(self) -> bool {
        matches!(
            self,
            RelationId::Thm2BasisInvariance
                | RelationId::Thm3BiasInvariance
                | RelationId::Thm8EqualPresence
                | RelationId::Thm11Decoupling
        )
    }

    pub fn needs_channel(self) -> bool {
        matches!(
            self,
            RelationId::Thm3BiasInvariance
                | RelationId::Cor6Channel
                | RelationId::Cor9NoSplitting
                | RelationId::Thm10Presence
                | RelationId::Thm11Channel
        )
    }

    /// Whether the instance includes a constructed perfect-presence state,
    /// which needs the register at least as large as the source.
    pub fn needs_presence(self) -> bool {
        matches!(
            self,
            RelationId::Thm8EqualPresence | RelationId::Thm11Decoupling | RelationId::Thm11Pure
        )
    }

    fn index(self) -> u64 {
        Self::ALL.iter().position(|r| *r == self).expect("registered") as u64
    }
}

impl Serialize for RelationId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl std::fmt::Display for RelationId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Entropy kinds cycled through on the relations stated for the whole
/// concave family.
pub const KIND_CYCLE: [EntropyKind; 4] = [
    EntropyKind::VonNeumann,
    EntropyKind::Renyi(0.5),
    EntropyKind::Tsallis(2.0),
    EntropyKind::Quadratic,
];

/// Violation size required before the subsystem-monotonicity search reports
/// a witness.
pub const EQ37_VIOLATION_THRESHOLD: f64 = 1e-6;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Tolerances {
    pub equality: f64,
    pub inequality: f64,
}

impl Default for Tolerances {
    /// Equalities chain more eigensolver error than single inequalities, so
    /// they get the looser default.
    fn default() -> Self {
        Tolerances { equality: 1e-8, inequality: 1e-9 }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite_label: String,
    pub relations: Vec<RelationId>,
    pub dims: Vec<(usize, usize, usize)>,
    pub trials: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub log_base: LogBase,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite_label: "all".into(),
            relations: RelationId::ALL.to_vec(),
            dims: vec![(2, 2, 2), (2, 3, 4), (3, 3, 3)],
            trials: 100,
            seed: 42,
            tolerances: Tolerances::default(),
            log_base: LogBase::Two,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::BadParameter("trial count must be at least 1".into()));
        }
        if self.tolerances.equality <= 0.0 || self.tolerances.inequality < 0.0 {
            return Err(Error::BadParameter("tolerances must be positive".into()));
        }
        for &(da, db, dc) in &self.dims {
            if da < 2 || db < 1 || dc < 1 {
                return Err(Error::BadParameter(format!(
                    "dimension triple ({da},{db},{dc}) out of range: need d_a >= 2 and the rest >= 1"
                )));
            }
            for rel in &self.relations {
                if rel.needs_channel() && da > db * dc {
                    return Err(Error::BadParameter(format!(
                        "{} builds an isometry into the receiver pair, which needs d_a <= d_b*d_c; \
                         got ({da},{db},{dc})",
                        rel.name()
                    )));
                }
                if rel.needs_presence() && db < da {
                    return Err(Error::BadParameter(format!(
                        "{} constructs a perfect-presence state, which needs d_b >= d_a; \
                         got ({da},{db},{dc})",
                        rel.name()
                    )));
                }
            }
        }
        Ok(())
    }

    fn echo(&self) -> ReportConfig {
        ReportConfig {
            suite: self.suite_label.clone(),
            relations: self.relations.iter().map(|r| r.name().to_string()).collect(),
            dims: self.dims.iter().map(|&(a, b, c)| [a, b, c]).collect(),
            trials: self.trials,
            seed: self.seed,
            tolerance_eq: self.tolerances.equality,
            tolerance_ineq: self.tolerances.inequality,
            log_base: self.log_base.to_string(),
            samplers: SamplerNote,
        }
    }
}

/// Outcome of evaluating one relation on one instance; `lhs`, `rhs`, and
/// `slack = lhs - rhs` describe the tightest link, and `pass` covers all of
/// them.
#[derive(Clone, Debug, Serialize)]
pub struct RelationResult {
    pub relation: String,
    pub link: String,
    pub dims: [usize; 3],
    pub kind: String,
    pub seed: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub tolerance: f64,
    pub equality: bool,
    pub pass: bool,
}

impl RelationResult {
    /// Distance from the failure boundary; negative exactly when the
    /// reported link fails.
    pub fn margin(&self) -> f64 {
        if self.equality {
            self.tolerance - self.slack.abs()
        } else {
            self.slack + self.tolerance
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Aggregate {
    pub evaluations: usize,
    pub passes: usize,
    pub pass_rate: f64,
    pub min_slack: f64,
    pub worst_seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationBlock {
    pub relation: String,
    pub aggregate: Aggregate,
    pub results: Vec<RelationResult>,
}

impl RelationBlock {
    fn collect(relation: String, results: Vec<RelationResult>) -> Self {
        let evaluations = results.len();
        let passes = results.iter().filter(|r| r.pass).count();
        let mut min_slack = f64::INFINITY;
        let mut worst_seed = 0u64;
        let mut worst_margin = f64::INFINITY;
        for r in &results {
            if r.slack < min_slack {
                min_slack = r.slack;
            }
            if r.margin() < worst_margin {
                worst_margin = r.margin();
                worst_seed = r.seed;
            }
        }
        if !min_slack.is_finite() {
            min_slack = 0.0;
        }
        let pass_rate = if evaluations == 0 {
            1.0
        } else {
            passes as f64 / evaluations as f64
        };
        RelationBlock {
            relation,
            aggregate: Aggregate { evaluations, passes, pass_rate, min_slack, worst_seed },
            results,
        }
    }
}

/// Record of which samplers produced the randomized draws, embedded in every
/// report since the results are claimed only under these samplers.
#[derive(Clone, Copy, Debug)]
pub struct SamplerNote;

impl Serialize for SamplerNote {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SamplerNote", 4)?;
        s.serialize_field("mixed_state", "trace of a haar purification")?;
        s.serialize_field("povm", "inverse naimark of a haar frame")?;
        s.serialize_field("basis", "haar unitary columns")?;
        s.serialize_field("channel", "haar isometry")?;
        s.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportConfig {
    pub suite: String,
    pub relations: Vec<String>,
    pub dims: Vec<[usize; 3]>,
    pub trials: usize,
    pub seed: u64,
    pub tolerance_eq: f64,
    pub tolerance_ineq: f64,
    pub log_base: String,
    pub samplers: SamplerNote,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub version: String,
    pub config: ReportConfig,
    pub relations: Vec<RelationBlock>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.relations
            .iter()
            .all(|b| b.results.iter().all(|r| r.pass))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    /// One row per evaluation.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "relation,link,d_a,d_b,d_c,kind,seed,lhs,rhs,slack,tolerance,equality,pass\n",
        );
        for block in &self.relations {
            for r in &block.results {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                    r.relation,
                    r.link,
                    r.dims[0],
                    r.dims[1],
                    r.dims[2],
                    r.kind,
                    r.seed,
                    r.lhs,
                    r.rhs,
                    r.slack,
                    r.tolerance,
                    r.equality,
                    r.pass
                ));
            }
        }
        out
    }
}

/// Evaluates one relation on one instance.  All links must be finite; a
/// non-finite value can only come from an evaluator defect and aborts.
pub fn evaluate(relation: RelationId, inst: &Instance, tol: &Tolerances) -> Result<RelationResult> {
    let links = relations::links_for(relation, inst)?;
    let mut worst: Option<RelationResult> = None;
    let mut all_pass = true;
    for link in &links {
        if !link.lhs.is_finite() || !link.rhs.is_finite() {
            return Err(Error::Abort(format!(
                "non-finite value while evaluating {}/{}",
                relation.name(),
                link.name
            )));
        }
        let slack = link.lhs - link.rhs;
        let (tolerance, pass) = if link.equality {
            (tol.equality, slack.abs() <= tol.equality)
        } else {
            (tol.inequality, slack >= -tol.inequality)
        };
        all_pass &= pass;
        let candidate = RelationResult {
            relation: relation.name().into(),
            link: link.name.into(),
            dims: [inst.dims.0, inst.dims.1, inst.dims.2],
            kind: inst.kind.label(),
            seed: inst.seed,
            lhs: link.lhs,
            rhs: link.rhs,
            slack,
            tolerance,
            equality: link.equality,
            pass,
        };
        if worst
            .as_ref()
            .map(|w| candidate.margin() < w.margin())
            .unwrap_or(true)
        {
            worst = Some(candidate);
        }
    }
    let mut result = worst.expect("at least one link");
    result.pass = all_pass;
    Ok(result)
}

fn sub_seed(seed: u64, relation: RelationId, dims: (usize, usize, usize), trial: usize) -> u64 {
    let mut s = mix(seed, relation.index());
    s = mix(s, dims.0 as u64);
    s = mix(s, dims.1 as u64);
    s = mix(s, dims.2 as u64);
    mix(s, trial as u64)
}

/// Runs the randomized suite.  Trials are independent and evaluated in
/// parallel; every trial derives its seed from the suite seed and its own
/// coordinates, so the report does not depend on scheduling.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    set_log_base(config.log_base);
    let mut blocks = Vec::with_capacity(config.relations.len());
    for &rel in &config.relations {
        let mut results = Vec::with_capacity(config.dims.len() * config.trials);
        for &dims in &config.dims {
            let per_dims: Result<Vec<RelationResult>> = (0..config.trials)
                .into_par_iter()
                .map(|trial| {
                    let seed = sub_seed(config.seed, rel, dims, trial);
                    let kind = if rel.supports_kinds() {
                        KIND_CYCLE[trial % KIND_CYCLE.len()]
                    } else {
                        EntropyKind::VonNeumann
                    };
                    let inst = sample_instance(rel, dims, kind, seed)?;
                    evaluate(rel, &inst, &config.tolerances)
                })
                .collect();
            results.extend(per_dims?);
        }
        blocks.push(RelationBlock::collect(rel.name().into(), results));
    }
    Ok(SuiteReport {
        version: env!("CARGO_PKG_VERSION").into(),
        config: config.echo(),
        relations: blocks,
    })
}

/// Recorded witness of the subsystem monotonicity failing for a
/// non-logarithmic entropy kind.
#[derive(Clone, Debug, Serialize)]
pub struct Eq37Witness {
    pub kind: String,
    pub seed: u64,
    pub trial: usize,
    pub state_rank: usize,
    pub chi_subsystem: f64,
    pub chi_whole: f64,
    pub violation: f64,
}

/// Random search for a state and basis where discarding a receiver factor
/// *increases* the kinded information measure.  The von Neumann version is a
/// theorem, so requesting it is rejected; an empty-handed search reports
/// `None` rather than failing.
pub fn search_counterexample_eq37(
    kind: EntropyKind,
    budget: usize,
    seed: u64,
) -> Result<Option<Eq37Witness>> {
    kind.validate()?;
    if matches!(kind, EntropyKind::VonNeumann) {
        return Err(Error::BadParameter(
            "subsystem monotonicity is a theorem for the von Neumann entropy; \
             search over renyi, tsallis, or quadratic kinds"
                .into(),
        ));
    }
    let dims = DimsProfile::new(&[("a", 2), ("b", 2), ("c", 2)])?;
    for trial in 0..budget {
        let s = mix(mix(seed, u64::MAX), trial as u64);
        let mut rng = seeded(s);
        let rank = rand::Rng::random_range(&mut rng, 1..=8);
        let rho = random_density_ranked(&mut rng, rank, dims.clone());
        let basis = crate::measurement::random_basis(
            "a",
            2,
            mix(s, 1),
        );
        let p = basis.to_povm();
        let whole = chi(&rho, &p, kind)?;
        let sub = chi(&rho.reduce(&["a", "b"])?, &p, kind)?;
        let violation = sub - whole;
        if violation > EQ37_VIOLATION_THRESHOLD {
            return Ok(Some(Eq37Witness {
                kind: kind.label(),
                seed: s,
                trial,
                state_rank: rank,
                chi_subsystem: sub,
                chi_whole: whole,
                violation,
            }));
        }
    }
    Ok(None)
}

/// Fixed worked cases with frozen expected values, all in bits.
pub fn example_suite() -> Result<SuiteReport> {
    set_log_base(LogBase::Two);
    let tol = Tolerances { equality: 1e-9, inequality: 1e-9 };
    let ghz_block = ghz_examples(&tol)?;
    let split_block = split_mub_examples(&tol)?;
    let z_axis_block = z_axis_examples(&tol)?;
    let relations = vec![ghz_block, split_block, z_axis_block];
    Ok(SuiteReport {
        version: env!("CARGO_PKG_VERSION").into(),
        config: ReportConfig {
            suite: "examples".into(),
            relations: relations.iter().map(|b| b.relation.clone()).collect(),
            dims: vec![[2, 2, 2], [2, 1, 1]],
            trials: 1,
            seed: 0,
            tolerance_eq: tol.equality,
            tolerance_ineq: tol.inequality,
            log_base: "2".into(),
            samplers: SamplerNote,
        },
        relations,
    })
}

fn fixed_result(
    block: &str,
    link: &'static str,
    dims: [usize; 3],
    lhs: f64,
    rhs: f64,
    tol: &Tolerances,
) -> RelationResult {
    let slack = lhs - rhs;
    RelationResult {
        relation: block.into(),
        link: link.into(),
        dims,
        kind: EntropyKind::VonNeumann.label(),
        seed: 0,
        lhs,
        rhs,
        slack,
        tolerance: tol.equality,
        equality: true,
        pass: slack.abs() <= tol.equality,
    }
}

/// Three-party entangled state acting as a perfect classical channel for one
/// basis: full presence in either receiver, full absence of the conjugate
/// type, and a tight unbiased-pair sum.
fn ghz_examples(tol: &Tolerances) -> Result<RelationBlock> {
    let state = ghz();
    let z = crate::measurement::OrthonormalBasis::computational("a", 2).to_povm();
    let x = crate::measurement::OrthonormalBasis::fourier("a", 2).to_povm();
    let vn = EntropyKind::VonNeumann;
    let ab = state.reduce(&["a", "b"])?;
    let ac = state.reduce(&["a", "c"])?;
    let chi_z_b = chi(&ab, &z, vn)?;
    let chi_z_c = chi(&ac, &z, vn)?;
    let chi_x_b = chi(&ab, &x, vn)?;
    let chi_x_c = chi(&ac, &x, vn)?;
    let mub_sum = missing_info(&ab, &x)? + missing_info(&ac, &z)?;
    let dims = [2, 2, 2];
    let results = vec![
        fixed_result("ghz", "chi_z_b", dims, chi_z_b, 1.0, tol),
        fixed_result("ghz", "chi_x_c", dims, chi_x_c, 0.0, tol),
        fixed_result("ghz", "bias_z", dims, chi_z_b - chi_z_c, 0.0, tol),
        fixed_result("ghz", "bias_x", dims, chi_x_b - chi_x_c, 0.0, tol),
        fixed_result("ghz", "mub_sum_tight", dims, mub_sum, 1.0, tol),
    ];
    Ok(RelationBlock::collect("ghz".into(), results))
}

/// Four rank-1 elements of trace one half, all unbiased with respect to the
/// computational basis: equal channel-side outcome weights, a tight
/// four-outcome sum, and full suppression of the split type.
fn split_mub_examples(tol: &Tolerances) -> Result<RelationBlock> {
    let state = ghz();
    let povm = split_mub_povm()?;
    let z = crate::measurement::OrthonormalBasis::computational("a", 2).to_povm();
    let ab = state.reduce(&["a", "b"])?;
    let ac = state.reduce(&["a", "c"])?;
    let probs = crate::channel::channel_outcome_probs(&povm, 2)?;
    let h_p = crate::entropy::shannon(&probs)?;
    let r_self = crate::measurement::overlap_r(&povm, &povm)?;
    let self_overlap = 0.5 * LogBase::Two.log(1.0 / r_self);
    let sum = missing_info(&ab, &povm)? + missing_info(&ac, &z)?;
    let chi_p_b = chi(&ab, &povm, EntropyKind::VonNeumann)?;
    let dims = [2, 2, 2];
    let results = vec![
        fixed_result("split_mub_povm", "outcome_entropy", dims, h_p, 2.0, tol),
        fixed_result("split_mub_povm", "self_overlap", dims, self_overlap, 1.0, tol),
        fixed_result("split_mub_povm", "four_outcome_sum_tight", dims, sum, 2.0, tol),
        fixed_result("split_mub_povm", "chi_suppressed", dims, chi_p_b, 0.0, tol),
    ];
    Ok(RelationBlock::collect("split_mub_povm".into(), results))
}

/// Halved projectors onto the four equatorial directions.
fn split_mub_povm() -> Result<Povm> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let dirs: [[C64; 2]; 4] = [
        [C64::new(s, 0.0), C64::new(s, 0.0)],
        [C64::new(s, 0.0), C64::new(-s, 0.0)],
        [C64::new(s, 0.0), C64::new(0.0, s)],
        [C64::new(s, 0.0), C64::new(0.0, -s)],
    ];
    let elements = dirs
        .iter()
        .map(|d| {
            let v = crate::operator::CVec::from_row_slice(d);
            CMat::from_fn(2, 2, |i, j| v[i] * v[j].conj() * 0.5)
        })
        .collect();
    Povm::new("a", 2, elements)
}

/// Qubit triple sum on states diagonal in the third basis, where the bound
/// is attained exactly.
fn z_axis_examples(tol: &Tolerances) -> Result<RelationBlock> {
    let dims = DimsProfile::single("a", 2)?;
    let quarter = DensityOperator::new(
        CMat::from_diagonal(&crate::operator::CVec::from_row_slice(&[
            C64::new(0.25, 0.0),
            C64::new(0.75, 0.0),
        ])),
        dims.clone(),
    )?;
    let skewed = DensityOperator::new(
        CMat::from_diagonal(&crate::operator::CVec::from_row_slice(&[
            C64::new(0.9, 0.0),
            C64::new(0.1, 0.0),
        ])),
        dims,
    )?;
    let triple = qubit_mub_triple("a");
    let sum_on = |rho: &DensityOperator| -> Result<f64> {
        let mut total = 0.0;
        for basis in &triple {
            total += crate::entropy::shannon(&outcome_probs(rho, &basis.to_povm())?)?;
        }
        Ok(total)
    };
    let sum_quarter = sum_on(&quarter)?;
    let sum_skewed = sum_on(&skewed)?;
    let bound_quarter = 2.0 + crate::entropy::von_neumann(&quarter);
    let bound_skewed = 2.0 + crate::entropy::von_neumann(&skewed);
    let dims3 = [2, 1, 1];
    let results = vec![
        fixed_result("z_axis_tightness", "triple_tight", dims3, sum_quarter, bound_quarter, tol),
        fixed_result(
            "z_axis_tightness",
            "triple_value",
            dims3,
            sum_quarter,
            2.811_278_124_459_133,
            tol,
        ),
        fixed_result("z_axis_tightness", "triple_tight_skewed", dims3, sum_skewed, bound_skewed, tol),
    ];
    Ok(RelationBlock::collect("z_axis_tightness".into(), results))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config(relations: Vec<RelationId>, trials: usize, seed: u64) -> SuiteConfig {
        SuiteConfig {
            suite_label: "test".into(),
            relations,
            dims: vec![(2, 2, 2)],
            trials,
            seed,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn registry_names_round_trip() {
        for rel in RelationId::ALL {
            assert_eq!(RelationId::from_name(rel.name()), Some(rel));
        }
        assert_eq!(RelationId::from_name("nonsense"), None);
    }

    #[test]
    fn suite_reports_are_byte_identical() {
        let config = small_config(
            vec![RelationId::Thm5Povm, RelationId::Thm3BiasInvariance],
            5,
            7,
        );
        let a = run_suite(&config).unwrap().to_json();
        let b = run_suite(&config).unwrap().to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn trial_seeds_do_not_depend_on_the_relation_subset() {
        let solo = run_suite(&small_config(vec![RelationId::Thm5Single], 3, 11)).unwrap();
        let joint = run_suite(&small_config(
            vec![RelationId::Lemma1Chain, RelationId::Thm5Single],
            3,
            11,
        ))
        .unwrap();
        let solo_seeds: Vec<u64> = solo.relations[0].results.iter().map(|r| r.seed).collect();
        let joint_seeds: Vec<u64> = joint.relations[1].results.iter().map(|r| r.seed).collect();
        assert_eq!(solo_seeds, joint_seeds);
    }

    #[test]
    fn kinds_cycle_on_family_wide_relations() {
        let report = run_suite(&small_config(vec![RelationId::Thm3BiasInvariance], 4, 3)).unwrap();
        let kinds: Vec<&str> = report.relations[0]
            .results
            .iter()
            .map(|r| r.kind.as_str())
            .collect();
        assert_eq!(
            kinds,
            vec!["von_neumann", "renyi(0.5)", "tsallis(2)", "quadratic"]
        );
        let fixed = run_suite(&small_config(vec![RelationId::Thm5Povm], 4, 3)).unwrap();
        assert!(fixed.relations[0]
            .results
            .iter()
            .all(|r| r.kind == "von_neumann"));
    }

    #[test]
    fn config_validation_rejects_bad_shapes() {
        let mut c = SuiteConfig { trials: 0, ..SuiteConfig::default() };
        assert!(c.validate().is_err());
        c.trials = 1;
        c.dims = vec![(1, 2, 2)];
        assert!(c.validate().is_err());
        c.dims = vec![(5, 2, 2)];
        assert!(c.validate().is_err(), "channel capacity violated");
        c.relations = vec![RelationId::Eq33Ssa];
        assert!(c.validate().is_ok(), "no channel, capacity irrelevant");
        c.relations = vec![RelationId::Thm8EqualPresence];
        c.dims = vec![(3, 2, 2)];
        assert!(c.validate().is_err(), "presence register too small");
    }

    #[test]
    fn empty_relation_set_gives_an_empty_report() {
        let report = run_suite(&small_config(vec![], 5, 1)).unwrap();
        assert!(report.relations.is_empty());
        assert!(report.all_pass());
    }

    #[test]
    fn aggregates_match_results() {
        let report = run_suite(&small_config(vec![RelationId::Thm5Bases], 8, 5)).unwrap();
        let block = &report.relations[0];
        assert_eq!(block.aggregate.evaluations, 8);
        assert_eq!(block.aggregate.passes, 8);
        assert!((block.aggregate.pass_rate - 1.0).abs() < 1e-15);
        let min = block
            .results
            .iter()
            .map(|r| r.slack)
            .fold(f64::INFINITY, f64::min);
        assert_eq!(block.aggregate.min_slack, min);
        assert!(block.results.iter().any(|r| r.seed == block.aggregate.worst_seed));
    }

    #[test]
    fn csv_has_one_row_per_evaluation() {
        let report = run_suite(&small_config(vec![RelationId::Eq33Ssa], 6, 2)).unwrap();
        let csv = report.to_csv();
        assert_eq!(csv.lines().count(), 1 + 6);
        assert!(csv.starts_with("relation,link,"));
    }

    #[test]
    fn worked_examples_all_pass_tightly() {
        let report = example_suite().unwrap();
        assert!(report.all_pass());
        for block in &report.relations {
            for r in &block.results {
                assert!(
                    r.slack.abs() < 1e-9,
                    "{}/{} slack {}",
                    block.relation,
                    r.link,
                    r.slack
                );
            }
        }
        assert_eq!(report.relations.len(), 3);
    }

    #[test]
    fn monotonicity_search_rejects_the_theorem_case() {
        assert!(search_counterexample_eq37(EntropyKind::VonNeumann, 10, 1).is_err());
    }

    #[test]
    fn monotonicity_search_with_no_budget_finds_nothing() {
        let found = search_counterexample_eq37(EntropyKind::Quadratic, 0, 1).unwrap();
        assert!(found.is_none());
    }

    #[test]
    fn monotonicity_search_finds_a_quadratic_witness() {
        let found = search_counterexample_eq37(EntropyKind::Quadratic, 3000, 42)
            .unwrap()
            .expect("a witness within the budget");
        assert!(found.violation > EQ37_VIOLATION_THRESHOLD);
        assert!(found.chi_subsystem > found.chi_whole);
    }

    #[test]
    fn evaluate_flags_a_failing_instance() {
        let inst = sample_instance(
            RelationId::Eq37Subsystem,
            (2, 2, 2),
            EntropyKind::VonNeumann,
            9,
        )
        .unwrap();
        let strict = Tolerances { equality: 1e-8, inequality: 1e-9 };
        let result = evaluate(RelationId::Eq37Subsystem, &inst, &strict).unwrap();
        assert!(result.pass);
        let absurd = Tolerances { equality: 1e-30, inequality: 0.0 };
        let tight = evaluate(RelationId::Eq37Subsystem, &inst, &absurd).unwrap();
        assert_eq!(tight.slack, result.slack);
    }
}
