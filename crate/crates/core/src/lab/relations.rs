//! One link builder per registered relation.  Each link is an oriented
//! comparison `lhs >= rhs` (or `lhs == rhs` for equality links); the caller
//! applies tolerances and picks the tightest link for reporting.

use super::instance::Instance;
use super::RelationId;
use crate::channel::{channel_outcome_probs, chi_channel, ChannelSide};
use crate::entropy::{
    conditional_entropy, log_base, mutual_info, relative_entropy, shannon, von_neumann,
};
use crate::measurement::{mub_pair, overlap_r, qubit_mub_triple, Povm};
use crate::measures::{chi, coherent_info, missing_info, outcome_probs, pinch_channel};
use crate::operator::{embed, CMat, DensityOperator, HermitianOperator};
use crate::{EntropyKind, Error, Result};

pub(crate) struct Link {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub equality: bool,
}

impl Link {
    fn ge(name: &'static str, lhs: f64, rhs: f64) -> Self {
        Link { name, lhs, rhs, equality: false }
    }

    fn eq(name: &'static str, lhs: f64, rhs: f64) -> Self {
        Link { name, lhs, rhs, equality: true }
    }
}

pub(crate) fn links_for(relation: RelationId, inst: &Instance) -> Result<Vec<Link>> {
    let links = match relation {
        RelationId::Lemma1Chain => lemma1(inst)?,
        RelationId::Thm2BasisInvariance => thm2(inst)?,
        RelationId::Thm3BiasInvariance => thm3(inst)?,
        RelationId::Lemma4TruncationEq => lemma4(inst, true)?,
        RelationId::Lemma4TruncationIneq => lemma4(inst, false)?,
        RelationId::Thm5Povm => thm5_povm(inst)?,
        RelationId::Thm5Single => thm5_single(inst)?,
        RelationId::Thm5Bases => thm5_bases(inst, false)?,
        RelationId::Thm5Mub => thm5_bases(inst, true)?,
        RelationId::Cor6Channel => cor6(inst)?,
        RelationId::Cor7SingleSystem => cor7(inst)?,
        RelationId::Thm8Suppression => thm8_suppression(inst)?,
        RelationId::Thm8EqualPresence => thm8_equal_presence(inst)?,
        RelationId::Cor9NoSplitting => cor9(inst)?,
        RelationId::Thm10Presence => thm10(inst)?,
        RelationId::Thm11Decoupling => thm11_decoupling(inst)?,
        RelationId::Thm11Pure => thm11_pure(inst)?,
        RelationId::Thm11Channel => thm11_channel(inst)?,
        RelationId::Eq33Ssa => eq33(inst)?,
        RelationId::Eq37Subsystem => eq37(inst)?,
    };
    if links.is_empty() {
        return Err(Error::ShapeMismatch(format!(
            "instance carries none of the pieces {} can evaluate",
            relation.name()
        )));
    }
    Ok(links)
}

fn lg(x: f64) -> f64 {
    log_base().log(x)
}

fn missing(relation: &str, what: &str) -> Error {
    Error::ShapeMismatch(format!("{relation} needs {what}"))
}

fn part(rho: &DensityOperator, keep: &[&str]) -> Result<DensityOperator> {
    if rho.dims().len() == keep.len() {
        Ok(rho.clone())
    } else {
        rho.reduce(keep)
    }
}

fn vn() -> EntropyKind {
    EntropyKind::VonNeumann
}

/// Outcome entropy of a measurement on the source marginal.
fn outcome_entropy(rho: &DensityOperator, povm: &Povm) -> Result<f64> {
    shannon(&outcome_probs(rho, povm)?)
}

/// Joint outcome distribution of two commuting measurements on different
/// factors, with its marginals.
fn joint_distribution(
    rho: &DensityOperator,
    p: &Povm,
    q: &Povm,
) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let dims = rho.dims();
    let embedded_q: Vec<CMat> = q
        .elements()
        .iter()
        .map(|e| embed(e, dims, q.label()))
        .collect::<Result<_>>()?;
    let mut joint = Vec::with_capacity(p.len() * q.len());
    let mut pj = vec![0.0; p.len()];
    let mut qk = vec![0.0; q.len()];
    for (j, pe) in p.elements().iter().enumerate() {
        let pa = embed(pe, dims, p.label())?;
        let weighted = pa * rho.mat();
        for (k, qe) in embedded_q.iter().enumerate() {
            let pr = (qe * &weighted).trace().re.max(0.0);
            joint.push(pr);
            pj[j] += pr;
            qk[k] += pr;
        }
    }
    Ok((joint, pj, qk))
}

/// `sum_j E_j rho E_j` on the given factor, Hermitian by construction.
fn sandwich_sum(
    rho: &DensityOperator,
    elements: &[CMat],
    label: &str,
) -> Result<HermitianOperator> {
    let dims = rho.dims();
    let mut acc = CMat::zeros(rho.dim(), rho.dim());
    for e in elements {
        let big = embed(e, dims, label)?;
        acc += &big * rho.mat() * &big;
    }
    Ok(HermitianOperator::new_symmetrized(acc, dims.clone()))
}

fn lemma1(inst: &Instance) -> Result<Vec<Link>> {
    let rho = inst
        .state
        .as_ref()
        .ok_or_else(|| missing("lemma1_chain", "a state"))?;
    let p = inst
        .povms
        .first()
        .ok_or_else(|| missing("lemma1_chain", "a POVM on `a`"))?;
    let q = inst
        .povms
        .get(1)
        .ok_or_else(|| missing("lemma1_chain", "a POVM on `b`"))?;
    let rho_ab = part(rho, &["a", "b"])?;
    let chi_b = chi(&rho_ab, p, vn())?;
    let h_p = outcome_entropy(&rho_ab, p)?;
    let (joint, pj, qk) = joint_distribution(&rho_ab, p, q)?;
    let h_joint = shannon(&joint)?;
    let h_pc = shannon(&pj)?;
    let h_q = shannon(&qk)?;
    let s_a = von_neumann(&rho_ab.reduce(&["a"])?);
    let s_b = von_neumann(&rho_ab.reduce(&["b"])?);
    let s_ab = mutual_info(&rho_ab, &["a"], &["b"])?;
    Ok(vec![
        Link::ge("ensemble_entropy", h_p, chi_b),
        Link::ge("classical_readout", chi_b, h_pc + h_q - h_joint),
        Link::ge("source_entropy", s_a, chi_b),
        Link::ge("receiver_entropy", s_b, chi_b),
        Link::ge("mutual_information", s_ab, chi_b),
        Link::ge("conditioning", h_joint - h_q, h_p - chi_b),
    ])
}

fn thm2(inst: &Instance) -> Result<Vec<Link>> {
    let rho = inst
        .state
        .as_ref()
        .ok_or_else(|| missing("thm2_basis_invariance", "a bipartite pure state"))?;
    let kind = inst.kind;
    let target = crate::entropy::entropy(&rho.reduce(&["a"])?, kind);
    let mut links = Vec::new();
    for (i, w) in inst.bases.iter().enumerate() {
        let name = match i {
            0 => "basis_1",
            1 => "basis_2",
            _ => "basis_extra",
        };
        links.push(Link::eq(name, chi(rho, &w.to_povm(), kind)?, target));
    }
    if let Some(n) = inst.povms.first() {
        links.push(Link::eq("rank_one_povm", chi(rho, n, kind)?, target));
    }
    Ok(links)
}

fn thm3(inst: &Instance) -> Result<Vec<Link>> {
    let kind = inst.kind;
    let mut links = Vec::new();
    if let Some(rho) = &inst.state {
        let target = crate::entropy::entropy(&rho.reduce(&["b"])?, kind)
            - crate::entropy::entropy(&rho.reduce(&["c"])?, kind);
        let rho_ab = part(rho, &["a", "b"])?;
        let rho_ac = part(rho, &["a", "c"])?;
        if let Some(w) = inst.bases.first() {
            let pv = w.to_povm();
            let bias = chi(&rho_ab, &pv, kind)? - chi(&rho_ac, &pv, kind)?;
            links.push(Link::eq("basis_state", bias, target));
        }
        if let Some(n) = inst.povms.first() {
            let bias = chi(&rho_ab, n, kind)? - chi(&rho_ac, n, kind)?;
            links.push(Link::eq("povm_state", bias, target));
        }
    }
    if let Some(pair) = &inst.channel {
        let target = crate::entropy::entropy(&pair.average_output(ChannelSide::Direct), kind)
            - crate::entropy::entropy(&pair.average_output(ChannelSide::Complementary), kind);
        if let Some(w) = inst.bases.first() {
            let pv = w.to_povm();
            let bias = chi_channel(&pv, pair, ChannelSide::Direct, kind)?
                - chi_channel(&pv, pair, ChannelSide::Complementary, kind)?;
            links.push(Link::eq("basis_channel", bias, target));
        }
        if let Some(n) = inst.povms.first() {
            let bias = chi_channel(n, pair, ChannelSide::Direct, kind)?
                - chi_channel(n, pair, ChannelSide::Complementary, kind)?;
            links.push(Link::eq("povm_channel", bias, target));
        }
    }
    Ok(links)
}

fn lemma4(inst: &Instance, projective: bool) -> Result<Vec<Link>> {
    let name = if projective {
        "lemma4_truncation_eq"
    } else {
        "lemma4_truncation_ineq"
    };
    let rho = inst
        .state
        .as_ref()
        .ok_or_else(|| missing(name, "a tripartite state"))?;
    let povm = if projective {
        inst.decomposition
            .as_ref()
            .map(|d| d.povm().clone())
            .ok_or_else(|| missing(name, "a projective decomposition on `a`"))?
    } else {
        inst.povms
            .first()
            .cloned()
            .ok_or_else(|| missing(name, "a POVM on `a`"))?
    };
    let rho_ab = part(rho, &["a", "b"])?;
    let rho_ac = part(rho, &["a", "c"])?;
    let h_c = missing_info(&rho_ac, &povm)?;
    let pinched = sandwich_sum(&rho_ab, povm.elements(), povm.label())?;
    let rel = relative_entropy(&rho_ab, &pinched)?
        .finite()
        .ok_or_else(|| {
            Error::Abort(format!(
                "{name}: relative entropy to the truncated state diverged, which the \
                 statement rules out"
            ))
        })?;
    let mut links = vec![if projective {
        Link::eq("truncation", h_c, rel)
    } else {
        Link::ge("truncation", h_c, rel)
    }];
    if projective {
        let dec = inst.decomposition.as_ref().expect("checked above");
        let registered = pinch_channel(&rho_ab, dec)?;
        let s_e_b = conditional_entropy(&registered, &["e"], &["b"])?;
        let h_b = missing_info(&rho_ab, &povm)?;
        links.push(Link::eq("register_identity", h_b, s_e_b));
    }
    Ok(links)
}

fn thm5_povm(inst: &Instance) -> Result<Vec<Link>> {
    let rho = inst
        .state
        .as_ref()
        .ok_or_else(|| missing("thm5_povm", "a tripartite state"))?;
    let p = inst
        .povms
        .first()
        .ok_or_else(|| missing("thm5_povm", "two POVMs on `a`"))?;
    let q = inst
        .povms
        .get(1)
        .ok_or_else(|| missing("thm5_povm", "two POVMs on `a`"))?;
    let sum = missing_info(&part(rho, &["a", "b"])?, p)?
        + missing_info(&part(rho, &["a", "c"])?, q)?;
    let r = overlap_r(p, q)?;
    Ok(vec![Link::ge("sum_bound", sum, lg(1.0 / r))])
}

fn thm5_single(inst: &Instance) -> Result<Vec<Link>> {
    let rho = inst
        .state
        .as_ref()
        .ok_or_else(|| missing("thm5_single", "a state"))?;
    let p = inst
        .povms
        .first()
        .ok_or_else(|| missing("thm5_single", "a POVM on `a`"))?;
    let h = missing_info(&part(rho, &["a", "b"])?, p)?;
    let r = overlap_r(p, p)?;
    Ok(vec![Link::ge("single_bound", h, 0.5 * lg(1.0 / r))])
}

fn thm5_bases(inst: &Instance, unbiased: bool) -> Result<Vec<Link>> {
    let name = if unbiased { "thm5_mub" } else { "thm5_bases" };
    let rho = inst
        .state
        .as_ref()
        .ok_or_else(|| missing(name, "a tripartite state"))?;
    let v = inst
        .bases
        .first()
        .ok_or_else(|| missing(name, "two bases on `a`"))?;
    let w = inst
        .bases
        .get(1)
        .ok_or_else(|| missing(name, "two bases on `a`"))?;
    let sum = missing_info(&part(rho, &["a", "b"])?, &v.to_povm())?
        + missing_info(&part(rho, &["a", "c"])?, &w.to_povm())?;
    let bound = if unbiased {
        lg(v.dim() as f64)
    } else {
        lg(1.0 / overlap_r(&v.to_povm(), &w.to_povm())?)
    };
    let link_name = if unbiased { "mub_bound" } else { "bases_bound" };
    Ok(vec![Link::ge(link_name, sum, bound)])
}

fn cor6(inst: &Instance) -> Result<Vec<Link>> {
    let pair = inst
        .channel
        .as_ref()
        .ok_or_else(|| missing("cor6_channel", "a channel"))?;
    let da = pair.isometry().d_a();
    let p = inst
        .povms
        .first()
        .ok_or_else(|| missing("cor6_channel", "two POVMs on `a`"))?;
    let q = inst
        .povms
        .get(1)
        .ok_or_else(|| missing("cor6_channel", "two POVMs on `a`"))?;
    let v = inst
        .bases
        .first()
        .ok_or_else(|| missing("cor6_channel", "two bases on `a`"))?;
    let w = inst
        .bases
        .get(1)
        .ok_or_else(|| missing("cor6_channel", "two bases on `a`"))?;
    let h_p = shannon(&channel_outcome_probs(p, da)?)?;
    let h_q = shannon(&channel_outcome_probs(q, da)?)?;
    let chi_p = chi_channel(p, pair, ChannelSide::Direct, vn())?;
    let chi_q = chi_channel(q, pair, ChannelSide::Complementary, vn())?;
    let chi_v = chi_channel(&v.to_povm(), pair, ChannelSide::Direct, vn())?;
    let chi_w = chi_channel(&w.to_povm(), pair, ChannelSide::Complementary, vn())?;
    let (m1, m2) = mub_pair("a", da);
    let chi_m1 = chi_channel(&m1.to_povm(), pair, ChannelSide::Direct, vn())?;
    let chi_m2 = chi_channel(&m2.to_povm(), pair, ChannelSide::Complementary, vn())?;
    let d = da as f64;
    Ok(vec![
        Link::ge(
            "single_povm",
            h_p - 0.5 * lg(1.0 / overlap_r(p, p)?),
            chi_p,
        ),
        Link::ge(
            "povm_pair",
            h_p + h_q - lg(1.0 / overlap_r(p, q)?),
            chi_p + chi_q,
        ),
        Link::ge(
            "basis_pair",
            lg(d * d * overlap_r(&v.to_povm(), &w.to_povm())?),
            chi_v + chi_w,
        ),
        Link::ge("mub_pair", lg(d), chi_m1 + chi_m2),
    ])
}

fn cor7(inst: &Instance) -> Result<Vec<Link>> {
    let rho = inst
        .state
        .as_ref()
        .ok_or_else(|| missing("cor7_single_system", "a single-system state on `a`"))?;
    let n = inst
        .povms
        .first()
        .ok_or_else(|| missing("cor7_single_system", "a rank-1 POVM on `a`"))?;
    let p = inst
        .povms
        .get(1)
        .ok_or_else(|| missing("cor7_single_system", "a second POVM on `a`"))?;
    let s = von_neumann(rho);
    let h_n = outcome_entropy(rho, n)?;
    let h_p = outcome_entropy(rho, p)?;
    let mut links = vec![
        Link::ge("single_povm", h_n, 0.5 * lg(1.0 / overlap_r(n, n)?) + s),
        Link::ge("povm_pair", h_n + h_p, lg(1.0 / overlap_r(n, p)?) + s),
    ];
    if rho.dim() == 2 {
        let triple = qubit_mub_triple("a");
        let mut sum = 0.0;
        for basis in &triple {
            sum += outcome_entropy(rho, &basis.to_povm())?;
        }
        links.push(Link::ge("mub_triple", sum, 2.0 * lg(2.0) + s));
    }
    Ok(links)
}

fn thm8_suppression(inst: &Instance) -> Result<Vec<Link>> {
    let rho = inst
        .state
        .as_ref()
        .ok_or_else(|| missing("thm8_suppression", "a state"))?;
    let p = inst
        .povms
        .first()
        .ok_or_else(|| missing("thm8_suppression", "a POVM and two rank-1 POVMs on `a`"))?;
    let m = inst
        .povms
        .get(1)
        .ok_or_else(|| missing("thm8_suppression", "two rank-1 POVMs on `a`"))?;
    let n = inst
        .povms
        .get(2)
        .ok_or_else(|| missing("thm8_suppression", "two rank-1 POVMs on `a`"))?;
    let rho_ab = part(rho, &["a", "b"])?;
    let chi_m = chi(&rho_ab, m, vn())?;
    let chi_n = chi(&rho_ab, n, vn())?;
    let h_m = outcome_entropy(&rho_ab, m)?;
    let h_n = outcome_entropy(&rho_ab, n)?;
    let h_p_b = missing_info(&rho_ab, p)?;
    let log_pm = lg(1.0 / overlap_r(p, m)?);
    let log_pn = lg(1.0 / overlap_r(p, n)?);
    let mut links = vec![
        Link::ge(
            "chi_difference",
            h_p_b + (h_m - log_pm).max(h_n - log_pn),
            (chi_m - chi_n).abs(),
        ),
        Link::ge(
            "missing_difference",
            h_p_b + (h_m - log_pn).max(h_n - log_pm),
            ((h_m - chi_m) - (h_n - chi_n)).abs(),
        ),
    ];
    if inst.bases.len() >= 3 {
        let w = &inst.bases[0];
        let u = &inst.bases[1];
        let v = &inst.bases[2];
        let h_w_b = missing_info(&rho_ab, &w.to_povm())?;
        let chi_u = chi(&rho_ab, &u.to_povm(), vn())?;
        let chi_v = chi(&rho_ab, &v.to_povm(), vn())?;
        let miss_u = outcome_entropy(&rho_ab, &u.to_povm())? - chi_u;
        let miss_v = outcome_entropy(&rho_ab, &v.to_povm())? - chi_v;
        links.push(Link::ge("mu_chi_difference", h_w_b, (chi_u - chi_v).abs()));
        links.push(Link::ge(
            "mu_missing_difference",
            h_w_b,
            (miss_u - miss_v).abs(),
        ));
    }
    Ok(links)
}

fn thm8_equal_presence(inst: &Instance) -> Result<Vec<Link>> {
    let rho = inst
        .boundary_state
        .as_ref()
        .or(inst.state.as_ref())
        .ok_or_else(|| missing("thm8_equal_presence", "a bipartite state"))?;
    if inst.bases.len() < 3 {
        return Err(missing(
            "thm8_equal_presence",
            "a basis plus two partners unbiased with respect to it",
        ));
    }
    let w = &inst.bases[0];
    let u = &inst.bases[1];
    let v = &inst.bases[2];
    let kind = inst.kind;
    let rho_ab = part(rho, &["a", "b"])?;
    let da = w.dim() as f64;
    let chi_target = crate::entropy::entropy(&rho_ab.reduce(&["b"])?, kind)
        - crate::entropy::entropy(&rho_ab, kind);
    let miss_target = lg(da) + conditional_entropy(&rho_ab, &["a"], &["b"])?;
    Ok(vec![
        Link::eq(
            "perfect_presence",
            missing_info(&rho_ab, &w.to_povm())?,
            0.0,
        ),
        Link::eq("chi_mu_one", chi(&rho_ab, &u.to_povm(), kind)?, chi_target),
        Link::eq("chi_mu_two", chi(&rho_ab, &v.to_povm(), kind)?, chi_target),
        Link::eq(
            "missing_mu_one",
            missing_info(&rho_ab, &u.to_povm())?,
            miss_target,
        ),
        Link::eq(
            "missing_mu_two",
            missing_info(&rho_ab, &v.to_povm())?,
            miss_target,
        ),
    ])
}

fn cor9(inst: &Instance) -> Result<Vec<Link>> {
    let mut links = Vec::new();
    let w = inst
        .bases
        .first()
        .ok_or_else(|| missing("cor9_no_splitting", "a mutually unbiased basis pair"))?;
    let v = inst
        .bases
        .get(1)
        .ok_or_else(|| missing("cor9_no_splitting", "a mutually unbiased basis pair"))?;
    if let Some(rho) = &inst.state {
        let rho_ab = part(rho, &["a", "b"])?;
        let rho_ac = part(rho, &["a", "c"])?;
        links.push(Link::ge(
            "state",
            missing_info(&rho_ab, &v.to_povm())?,
            chi(&rho_ac, &w.to_povm(), vn())?,
        ));
        links.push(Link::ge(
            "state_swapped",
            missing_info(&rho_ab, &w.to_povm())?,
            chi(&rho_ac, &v.to_povm(), vn())?,
        ));
    }
    if let Some(pair) = &inst.channel {
        let da = pair.isometry().d_a() as f64;
        links.push(Link::ge(
            "channel",
            lg(da) - chi_channel(&v.to_povm(), pair, ChannelSide::Direct, vn())?,
            chi_channel(&w.to_povm(), pair, ChannelSide::Complementary, vn())?,
        ));
    }
    Ok(links)
}

fn thm10(inst: &Instance) -> Result<Vec<Link>> {
    let mut links = Vec::new();
    if let Some(rho) = &inst.state {
        let p = inst
            .povms
            .first()
            .ok_or_else(|| missing("thm10_presence", "a POVM and two rank-1 POVMs on `a`"))?;
        let m = inst
            .povms
            .get(1)
            .ok_or_else(|| missing("thm10_presence", "two rank-1 POVMs on `a`"))?;
        let n = inst
            .povms
            .get(2)
            .ok_or_else(|| missing("thm10_presence", "two rank-1 POVMs on `a`"))?;
        let rho_ab = part(rho, &["a", "b"])?;
        let rho_ac = part(rho, &["a", "c"])?;
        let s_a_b = conditional_entropy(&rho_ab, &["a"], &["b"])?;
        links.push(Link::ge(
            "povm_pair_conditional",
            missing_info(&rho_ab, n)? + missing_info(&rho_ab, p)?,
            lg(1.0 / overlap_r(n, p)?) + s_a_b,
        ));
        links.push(Link::ge("chi_floor", chi(&rho_ab, m, vn())?, -s_a_b));
        links.push(Link::ge("missing_floor", missing_info(&rho_ac, m)?, -s_a_b));
        let da = rho_ab.dims().dim("a").unwrap_or(2) as f64;
        let (m1, m2) = mub_pair("a", da as usize);
        let miss_sum = missing_info(&rho_ab, &m1.to_povm())?
            + missing_info(&rho_ab, &m2.to_povm())?;
        links.push(Link::ge(
            "mub_mutual_floor",
            mutual_info(&rho_ab, &["a"], &["b"])?,
            2.0 * lg(da) - 2.0 * miss_sum,
        ));
        links.push(Link::ge(
            "mub_leak_ceiling",
            miss_sum,
            mutual_info(&rho_ac, &["a"], &["c"])?,
        ));
    }
    if let Some(pair) = &inst.channel {
        let u = inst
            .bases
            .first()
            .ok_or_else(|| missing("thm10_presence", "three bases on `a`"))?;
        let v = inst
            .bases
            .get(1)
            .ok_or_else(|| missing("thm10_presence", "three bases on `a`"))?;
        let w = inst
            .bases
            .get(2)
            .ok_or_else(|| missing("thm10_presence", "three bases on `a`"))?;
        let da = pair.isometry().d_a() as f64;
        let delta = coherent_info(pair);
        let chi_u_e = chi_channel(&u.to_povm(), pair, ChannelSide::Direct, vn())?;
        let chi_u_f = chi_channel(&u.to_povm(), pair, ChannelSide::Complementary, vn())?;
        let chi_v_e = chi_channel(&v.to_povm(), pair, ChannelSide::Direct, vn())?;
        let chi_w_e = chi_channel(&w.to_povm(), pair, ChannelSide::Direct, vn())?;
        let r_vw = overlap_r(&v.to_povm(), &w.to_povm())?;
        links.push(Link::ge("channel_ceiling", chi_u_e, delta));
        links.push(Link::ge(
            "channel_floor",
            delta,
            chi_v_e + chi_w_e - lg(da * da * r_vw),
        ));
        links.push(Link::ge(
            "complement_ceiling",
            lg(da * da * da * r_vw) - (chi_v_e + chi_w_e),
            chi_u_f,
        ));
    }
    Ok(links)
}

fn thm11_decoupling(inst: &Instance) -> Result<Vec<Link>> {
    let mut links = Vec::new();
    if let Some(rho) = &inst.state {
        let n = inst
            .povms
            .first()
            .ok_or_else(|| missing("thm11_decoupling", "a rank-1 POVM on `a`"))?;
        let rho_ab = part(rho, &["a", "b"])?;
        let rho_ac = part(rho, &["a", "c"])?;
        links.push(Link::ge(
            "decoupling_ceiling",
            chi(&rho_ac, n, vn())? + missing_info(&rho_ab, n)?
                - 0.5 * lg(1.0 / overlap_r(n, n)?),
            mutual_info(&rho_ac, &["a"], &["c"])?,
        ));
    }
    if let Some(rho) = &inst.boundary_state {
        let w = inst
            .bases
            .first()
            .ok_or_else(|| missing("thm11_decoupling", "the basis held by the register"))?;
        let p = inst
            .povms
            .get(1)
            .or_else(|| inst.povms.first())
            .ok_or_else(|| missing("thm11_decoupling", "a POVM on `a`"))?;
        let kind = inst.kind;
        let rho_ab = part(rho, &["a", "b"])?;
        let rho_ac = part(rho, &["a", "c"])?;
        links.push(Link::eq(
            "perfect_presence",
            missing_info(&rho_ab, &w.to_povm())?,
            0.0,
        ));
        links.push(Link::ge(
            "presence_dominance",
            chi(&rho_ac, &w.to_povm(), kind)?,
            chi(&rho_ac, p, kind)?,
        ));
    }
    Ok(links)
}

fn thm11_pure(inst: &Instance) -> Result<Vec<Link>> {
    let mut links = Vec::new();
    if let Some(rho) = &inst.state {
        let l = inst
            .povms
            .first()
            .ok_or_else(|| missing("thm11_pure", "three rank-1 POVMs on `a`"))?;
        let m = inst
            .povms
            .get(1)
            .ok_or_else(|| missing("thm11_pure", "three rank-1 POVMs on `a`"))?;
        let n = inst
            .povms
            .get(2)
            .ok_or_else(|| missing("thm11_pure", "three rank-1 POVMs on `a`"))?;
        let rho_ab = part(rho, &["a", "b"])?;
        let rho_ac = part(rho, &["a", "c"])?;
        let bound = chi(&rho_ac, n, vn())? + missing_info(&rho_ab, n)?
            - 0.5 * lg(1.0 / overlap_r(n, n)?);
        let diff = (chi(&rho_ab, l, vn())? - chi(&rho_ab, m, vn())?).abs();
        links.push(Link::ge("chi_difference", bound, diff));
    }
    if let Some(rho) = &inst.boundary_state {
        if let (Some(l), Some(m)) = (inst.povms.get(3), inst.povms.get(4)) {
            let s_a = von_neumann(&rho.reduce(&["a"])?);
            let rho_ab = part(rho, &["a", "b"])?;
            links.push(Link::eq("present_absent_one", chi(&rho_ab, l, vn())?, s_a));
            links.push(Link::eq("present_absent_two", chi(&rho_ab, m, vn())?, s_a));
        }
    }
    Ok(links)
}

fn thm11_channel(inst: &Instance) -> Result<Vec<Link>> {
    let pair = inst
        .channel
        .as_ref()
        .ok_or_else(|| missing("thm11_channel", "a channel"))?;
    let v = inst
        .bases
        .first()
        .ok_or_else(|| missing("thm11_channel", "two bases on `a`"))?;
    let w = inst
        .bases
        .get(1)
        .ok_or_else(|| missing("thm11_channel", "two bases on `a`"))?;
    let da = pair.isometry().d_a() as f64;
    let chi_v_e = chi_channel(&v.to_povm(), pair, ChannelSide::Direct, vn())?;
    let chi_v_f = chi_channel(&v.to_povm(), pair, ChannelSide::Complementary, vn())?;
    let chi_w_e = chi_channel(&w.to_povm(), pair, ChannelSide::Direct, vn())?;
    let chi_w_f = chi_channel(&w.to_povm(), pair, ChannelSide::Complementary, vn())?;
    Ok(vec![
        Link::ge("forward", chi_w_f + lg(da) - chi_w_e, chi_v_f),
        Link::ge("reverse", chi_v_e, chi_w_e - chi_w_f),
    ])
}

fn eq33(inst: &Instance) -> Result<Vec<Link>> {
    let rho = inst
        .state
        .as_ref()
        .ok_or_else(|| missing("eq33_ssa", "a tripartite state"))?;
    let whole = mutual_info(rho, &["a"], &["b", "c"])?;
    let sub = mutual_info(&part(rho, &["a", "b"])?, &["a"], &["b"])?;
    Ok(vec![Link::ge("monotonicity", whole, sub)])
}

fn eq37(inst: &Instance) -> Result<Vec<Link>> {
    let rho = inst
        .state
        .as_ref()
        .ok_or_else(|| missing("eq37_subsystem", "a tripartite state"))?;
    let p = inst
        .povms
        .first()
        .ok_or_else(|| missing("eq37_subsystem", "a POVM on `a`"))?;
    let whole = chi(rho, p, vn())?;
    let sub = chi(&part(rho, &["a", "b"])?, p, vn())?;
    Ok(vec![Link::ge("subsystem", whole, sub)])
}
