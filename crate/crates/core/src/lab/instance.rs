//! Instance construction for relation checks: randomized draws for generic
//! hypotheses and explicit constructions for boundary cases that random
//! sampling would never hit exactly.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha12Rng;

use super::RelationId;
use crate::channel::{random_isometry_with, ChannelPair};
use crate::measurement::{
    coarse_grain, mub_pair, random_basis_with, random_projective_with, random_rank1_povm_with,
    OrthonormalBasis, Povm, ProjectiveDecomposition,
};
use crate::operator::{validate_density, CMat, DensityOperator, DimsProfile, PureState, C64};
use crate::rng::{ginibre, probability_vector, random_density, random_pure, seeded};
use crate::{EntropyKind, Error, Result};

/// Everything a relation evaluator may consume.  Which fields are populated
/// depends on the relation; the evaluators read only the pieces they need and
/// complain when an essential one is absent.
pub struct Instance {
    pub relation: RelationId,
    pub dims: (usize, usize, usize),
    pub kind: EntropyKind,
    pub seed: u64,
    /// Generic state drawn from the relation's hypothesis class.
    pub state: Option<DensityOperator>,
    /// Constructed state sitting exactly on the relation's boundary
    /// (perfect presence, perfect absence), where one is called for.
    pub boundary_state: Option<DensityOperator>,
    pub povms: Vec<Povm>,
    pub bases: Vec<OrthonormalBasis>,
    pub decomposition: Option<ProjectiveDecomposition>,
    pub channel: Option<ChannelPair>,
}

impl Instance {
    fn empty(relation: RelationId, dims: (usize, usize, usize), kind: EntropyKind, seed: u64) -> Self {
        Instance {
            relation,
            dims,
            kind,
            seed,
            state: None,
            boundary_state: None,
            povms: Vec::new(),
            bases: Vec::new(),
            decomposition: None,
            channel: None,
        }
    }
}

fn tripartite(d: (usize, usize, usize)) -> Result<DimsProfile> {
    DimsProfile::new(&[("a", d.0), ("b", d.1), ("c", d.2)])
}

fn rank1_povm(rng: &mut ChaCha12Rng, label: &str, d: usize) -> Result<Povm> {
    let n = rng.random_range(d + 1..=2 * d);
    random_rank1_povm_with(rng, label, d, n)
}

/// A POVM of unconstrained element rank: a fine rank-1 draw, a random
/// projective decomposition, or a coarse-grained rank-1 draw.
fn any_povm(rng: &mut ChaCha12Rng, label: &str, d: usize) -> Result<Povm> {
    match rng.random_range(0u8..3) {
        0 => rank1_povm(rng, label, d),
        1 => Ok(random_projective_with(rng, label, d)?.povm().clone()),
        _ => {
            let n = rng.random_range(d + 1..=2 * d);
            let fine = random_rank1_povm_with(rng, label, d, n)?;
            let mut idx: Vec<usize> = (0..n).collect();
            idx.shuffle(rng);
            let k = rng.random_range(2..=n - 1);
            let mut groups = vec![Vec::new(); k];
            for (pos, i) in idx.into_iter().enumerate() {
                groups[pos % k].push(i);
            }
            coarse_grain(&fine, &groups)
        }
    }
}

/// Partner basis mutually unbiased with `w`: the Fourier transform of `w`,
/// optionally twisted by random phases so repeated calls give distinct
/// partners.
fn mu_partner(
    w: &OrthonormalBasis,
    rng: Option<&mut ChaCha12Rng>,
) -> Result<OrthonormalBasis> {
    let d = w.dim();
    let f = OrthonormalBasis::fourier(w.label(), d);
    let mut mat = w.unitary() * f.unitary();
    if let Some(rng) = rng {
        let mut twist = CMat::identity(d, d);
        for k in 0..d {
            twist[(k, k)] = C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
        }
        mat = w.unitary() * twist * f.unitary();
    }
    OrthonormalBasis::new(w.label(), mat)
}

fn block_sizes(total: usize, parts: usize) -> Vec<usize> {
    let q = total / parts;
    let r = total % parts;
    (0..parts).map(|j| if j < r { q + 1 } else { q }).collect()
}

fn block_density(rng: &mut ChaCha12Rng, m: usize) -> CMat {
    let g = ginibre(rng, m, m);
    let s = &g * g.adjoint();
    let tr = s.trace().re;
    s * C64::new(1.0 / tr, 0.0)
}

/// `sum_j p_j |w_j><w_j| (x) sigma_j` with the `sigma_j` supported on
/// disjoint blocks of the second factor, so the `w` outcome is perfectly
/// readable there.
pub(crate) fn presence_bipartite(
    rng: &mut ChaCha12Rng,
    w: &OrthonormalBasis,
    d_b: usize,
) -> Result<DensityOperator> {
    let d_a = w.dim();
    if d_b < d_a {
        return Err(Error::BadParameter(format!(
            "perfect presence of a {d_a}-outcome basis needs a receiver of dimension >= {d_a}, got {d_b}"
        )));
    }
    let sizes = block_sizes(d_b, d_a);
    let p = probability_vector(rng, d_a);
    let mut acc = CMat::zeros(d_a * d_b, d_a * d_b);
    let mut offset = 0;
    for j in 0..d_a {
        let m = sizes[j];
        let sigma = block_density(rng, m);
        let mut big = CMat::zeros(d_b, d_b);
        big.view_mut((offset, offset), (m, m)).copy_from(&sigma);
        offset += m;
        acc += w.projector(j).kronecker(&big) * C64::new(p[j], 0.0);
    }
    let dims = DimsProfile::new(&[("a", d_a), ("b", d_b)])?;
    Ok(DensityOperator::new_unvalidated(acc, dims))
}

/// Tripartite extension: the `b` factor records the `w` outcome in its
/// computational basis while `c` carries an arbitrary conditional state.
pub(crate) fn presence_tripartite(
    rng: &mut ChaCha12Rng,
    w: &OrthonormalBasis,
    d_b: usize,
    d_c: usize,
) -> Result<DensityOperator> {
    let d_a = w.dim();
    if d_b < d_a {
        return Err(Error::BadParameter(format!(
            "perfect presence of a {d_a}-outcome basis needs a register of dimension >= {d_a}, got {d_b}"
        )));
    }
    let p = probability_vector(rng, d_a);
    let n = d_a * d_b * d_c;
    let mut acc = CMat::zeros(n, n);
    for j in 0..d_a {
        let mut reg = CMat::zeros(d_b, d_b);
        reg[(j, j)] = C64::new(1.0, 0.0);
        let sigma = block_density(rng, d_c);
        acc += w
            .projector(j)
            .kronecker(&reg)
            .kronecker(&sigma)
            * C64::new(p[j], 0.0);
    }
    Ok(DensityOperator::new_unvalidated(acc, tripartite((d_a, d_b, d_c))?))
}

/// Pure state with the `w` outcome copied into `b` and `c` left in a fixed
/// product state: the `w` information is perfectly present in `b` and absent
/// from `c`.
pub(crate) fn presence_pure(
    rng: &mut ChaCha12Rng,
    w: &OrthonormalBasis,
    d_b: usize,
    d_c: usize,
) -> Result<PureState> {
    let d_a = w.dim();
    if d_b < d_a {
        return Err(Error::BadParameter(format!(
            "perfect presence of a {d_a}-outcome basis needs a register of dimension >= {d_a}, got {d_b}"
        )));
    }
    let p = probability_vector(rng, d_a);
    let mut amp = crate::operator::CVec::zeros(d_a * d_b * d_c);
    for j in 0..d_a {
        let col = w.vector(j);
        let weight = C64::new(p[j].sqrt(), 0.0);
        for ia in 0..d_a {
            amp[(ia * d_b + j) * d_c] += col[ia] * weight;
        }
    }
    PureState::new(amp, tripartite((d_a, d_b, d_c))?)
}

/// Draws all the pieces a relation needs at the given dimensions, entropy
/// kind, and seed.  The draw is deterministic in the seed and independent of
/// evaluation order.
pub fn sample_instance(
    relation: RelationId,
    dims: (usize, usize, usize),
    kind: EntropyKind,
    seed: u64,
) -> Result<Instance> {
    kind.validate()?;
    let (da, db, dc) = dims;
    if da < 2 || db < 1 || dc < 1 {
        return Err(Error::BadParameter(format!(
            "dimensions ({da},{db},{dc}) out of range: need d_a >= 2 and the rest >= 1"
        )));
    }
    let mut rng = seeded(seed);
    let mut inst = Instance::empty(relation, dims, kind, seed);
    match relation {
        RelationId::Lemma1Chain => {
            inst.state = Some(random_density(&mut rng, tripartite(dims)?));
            inst.povms.push(any_povm(&mut rng, "a", da)?);
            inst.povms.push(rank1_povm(&mut rng, "b", db)?);
        }
        RelationId::Thm2BasisInvariance => {
            let pair_dims = DimsProfile::new(&[("a", da), ("b", db * dc)])?;
            inst.state = Some(random_pure(&mut rng, pair_dims).to_density());
            inst.bases.push(random_basis_with(&mut rng, "a", da));
            inst.bases.push(random_basis_with(&mut rng, "a", da));
            inst.povms.push(rank1_povm(&mut rng, "a", da)?);
        }
        RelationId::Thm3BiasInvariance => {
            inst.state = Some(random_pure(&mut rng, tripartite(dims)?).to_density());
            inst.bases.push(random_basis_with(&mut rng, "a", da));
            inst.povms.push(rank1_povm(&mut rng, "a", da)?);
            inst.channel = Some(ChannelPair::from_isometry(random_isometry_with(
                &mut rng, da, db, dc,
            )?));
        }
        RelationId::Lemma4TruncationEq => {
            inst.state = Some(random_pure(&mut rng, tripartite(dims)?).to_density());
            inst.decomposition = Some(random_projective_with(&mut rng, "a", da)?);
        }
        RelationId::Lemma4TruncationIneq => {
            inst.state = Some(random_density(&mut rng, tripartite(dims)?));
            inst.povms.push(any_povm(&mut rng, "a", da)?);
        }
        RelationId::Thm5Povm => {
            inst.state = Some(random_density(&mut rng, tripartite(dims)?));
            inst.povms.push(rank1_povm(&mut rng, "a", da)?);
            inst.povms.push(any_povm(&mut rng, "a", da)?);
            if rng.random() {
                inst.povms.swap(0, 1);
            }
        }
        RelationId::Thm5Single => {
            inst.state = Some(random_density(&mut rng, tripartite(dims)?));
            inst.povms.push(any_povm(&mut rng, "a", da)?);
        }
        RelationId::Thm5Bases => {
            inst.state = Some(random_density(&mut rng, tripartite(dims)?));
            inst.bases.push(random_basis_with(&mut rng, "a", da));
            inst.bases.push(random_basis_with(&mut rng, "a", da));
        }
        RelationId::Thm5Mub => {
            inst.state = Some(random_density(&mut rng, tripartite(dims)?));
            let (v, w) = mub_pair("a", da);
            inst.bases.push(v);
            inst.bases.push(w);
        }
        RelationId::Cor6Channel => {
            inst.channel = Some(ChannelPair::from_isometry(random_isometry_with(
                &mut rng, da, db, dc,
            )?));
            inst.povms.push(any_povm(&mut rng, "a", da)?);
            inst.povms.push(any_povm(&mut rng, "a", da)?);
            inst.bases.push(random_basis_with(&mut rng, "a", da));
            inst.bases.push(random_basis_with(&mut rng, "a", da));
        }
        RelationId::Cor7SingleSystem => {
            inst.state = Some(random_density(&mut rng, DimsProfile::single("a", da)?));
            inst.povms.push(rank1_povm(&mut rng, "a", da)?);
            inst.povms.push(any_povm(&mut rng, "a", da)?);
        }
        RelationId::Thm8Suppression => {
            inst.state = Some(random_density(&mut rng, tripartite(dims)?));
            inst.povms.push(any_povm(&mut rng, "a", da)?);
            inst.povms.push(rank1_povm(&mut rng, "a", da)?);
            inst.povms.push(rank1_povm(&mut rng, "a", da)?);
            let w = random_basis_with(&mut rng, "a", da);
            let u = mu_partner(&w, None)?;
            let v = mu_partner(&w, Some(&mut rng))?;
            inst.bases = vec![w, u, v];
        }
        RelationId::Thm8EqualPresence => {
            let w = random_basis_with(&mut rng, "a", da);
            let u = mu_partner(&w, None)?;
            let v = mu_partner(&w, Some(&mut rng))?;
            inst.boundary_state = Some(presence_bipartite(&mut rng, &w, db)?);
            inst.bases = vec![w, u, v];
        }
        RelationId::Cor9NoSplitting => {
            inst.state = Some(random_density(&mut rng, tripartite(dims)?));
            let w = random_basis_with(&mut rng, "a", da);
            let v = mu_partner(&w, Some(&mut rng))?;
            inst.bases = vec![w, v];
            inst.channel = Some(ChannelPair::from_isometry(random_isometry_with(
                &mut rng, da, db, dc,
            )?));
        }
        RelationId::Thm10Presence => {
            inst.state = Some(random_density(&mut rng, tripartite(dims)?));
            inst.povms.push(any_povm(&mut rng, "a", da)?);
            inst.povms.push(rank1_povm(&mut rng, "a", da)?);
            inst.povms.push(rank1_povm(&mut rng, "a", da)?);
            inst.bases.push(random_basis_with(&mut rng, "a", da));
            inst.bases.push(random_basis_with(&mut rng, "a", da));
            inst.bases.push(random_basis_with(&mut rng, "a", da));
            inst.channel = Some(ChannelPair::from_isometry(random_isometry_with(
                &mut rng, da, db, dc,
            )?));
        }
        RelationId::Thm11Decoupling => {
            inst.state = Some(random_density(&mut rng, tripartite(dims)?));
            inst.povms.push(rank1_povm(&mut rng, "a", da)?);
            inst.povms.push(any_povm(&mut rng, "a", da)?);
            let w = random_basis_with(&mut rng, "a", da);
            inst.boundary_state = Some(presence_tripartite(&mut rng, &w, db, dc)?);
            inst.bases.push(w);
        }
        RelationId::Thm11Pure => {
            inst.state = Some(random_pure(&mut rng, tripartite(dims)?).to_density());
            for _ in 0..5 {
                inst.povms.push(rank1_povm(&mut rng, "a", da)?);
            }
            let w = random_basis_with(&mut rng, "a", da);
            inst.boundary_state = Some(presence_pure(&mut rng, &w, db, dc)?.to_density());
            inst.bases.push(w);
        }
        RelationId::Thm11Channel => {
            inst.channel = Some(ChannelPair::from_isometry(random_isometry_with(
                &mut rng, da, db, dc,
            )?));
            inst.bases.push(random_basis_with(&mut rng, "a", da));
            inst.bases.push(random_basis_with(&mut rng, "a", da));
        }
        RelationId::Eq33Ssa => {
            inst.state = Some(random_density(&mut rng, tripartite(dims)?));
        }
        RelationId::Eq37Subsystem => {
            inst.state = Some(random_density(&mut rng, tripartite(dims)?));
            inst.povms.push(any_povm(&mut rng, "a", da)?);
        }
    }
    Ok(inst)
}

/// Builds an instance from externally supplied components, for one-off
/// evaluation of a relation on concrete inputs.
///
/// POVM files fill the relation's measurement roles in declaration order;
/// roles that expect a basis are converted and must be rank-1 with unit
/// normalization.  Mutually unbiased partners and qubit triples that a
/// relation fixes by construction are synthesized when not supplied.
pub fn assemble_instance(
    relation: RelationId,
    state: Option<DensityOperator>,
    channel: Option<ChannelPair>,
    povms: Vec<Povm>,
) -> Result<Instance> {
    let dims = infer_dims(relation, state.as_ref(), channel.as_ref())?;
    let mut inst = Instance::empty(relation, dims, EntropyKind::VonNeumann, 0);
    let da = dims.0;
    let needs_state = !matches!(
        relation,
        RelationId::Cor6Channel | RelationId::Thm11Channel
    );
    if needs_state && state.is_none() && channel.is_none() {
        return Err(Error::ShapeMismatch(format!(
            "{} needs a state file",
            relation.name()
        )));
    }
    if relation.needs_channel() && channel.is_none() && state.is_none() {
        return Err(Error::ShapeMismatch(format!(
            "{} needs a channel file",
            relation.name()
        )));
    }
    if matches!(
        relation,
        RelationId::Cor6Channel | RelationId::Thm11Channel
    ) && channel.is_none()
    {
        return Err(Error::ShapeMismatch(format!(
            "{} needs a channel file",
            relation.name()
        )));
    }
    inst.channel = channel;
    if relation.needs_presence() {
        inst.boundary_state = state.clone();
    }
    inst.state = state;
    let mut supplied = povms.into_iter();
    let roles = measurement_roles(relation);
    for role in roles {
        match role {
            Role::Povm(on) => {
                let p = supplied.next().ok_or_else(|| {
                    Error::ShapeMismatch(format!(
                        "{} needs a POVM on `{on}` (supply more POVM files)",
                        relation.name()
                    ))
                })?;
                if p.label() != on {
                    return Err(Error::ShapeMismatch(format!(
                        "{} expects this POVM on subsystem `{on}`, file says `{}`",
                        relation.name(),
                        p.label()
                    )));
                }
                inst.povms.push(p);
            }
            Role::Basis => match supplied.next() {
                Some(p) => inst.bases.push(OrthonormalBasis::try_from_povm(&p)?),
                None => break,
            },
            Role::Decomposition => {
                let p = supplied.next().ok_or_else(|| {
                    Error::ShapeMismatch(format!(
                        "{} needs a projective decomposition file",
                        relation.name()
                    ))
                })?;
                inst.decomposition = Some(ProjectiveDecomposition::new(p)?);
            }
        }
    }
    fill_default_bases(relation, da, &mut inst)?;
    Ok(inst)
}

enum Role {
    Povm(&'static str),
    Basis,
    Decomposition,
}

fn measurement_roles(relation: RelationId) -> Vec<Role> {
    use RelationId::*;
    match relation {
        Lemma1Chain => vec![Role::Povm("a"), Role::Povm("b")],
        Thm2BasisInvariance => vec![Role::Basis, Role::Basis, Role::Povm("a")],
        Thm3BiasInvariance => vec![Role::Basis, Role::Povm("a")],
        Lemma4TruncationEq => vec![Role::Decomposition],
        Lemma4TruncationIneq => vec![Role::Povm("a")],
        Thm5Povm => vec![Role::Povm("a"), Role::Povm("a")],
        Thm5Single => vec![Role::Povm("a")],
        Thm5Bases | Thm5Mub => vec![Role::Basis, Role::Basis],
        Cor6Channel => vec![Role::Povm("a"), Role::Povm("a"), Role::Basis, Role::Basis],
        Cor7SingleSystem => vec![Role::Povm("a"), Role::Povm("a")],
        Thm8Suppression => vec![
            Role::Povm("a"),
            Role::Povm("a"),
            Role::Povm("a"),
            Role::Basis,
            Role::Basis,
            Role::Basis,
        ],
        Thm8EqualPresence => vec![Role::Basis, Role::Basis, Role::Basis],
        Cor9NoSplitting => vec![Role::Basis, Role::Basis],
        Thm10Presence => vec![
            Role::Povm("a"),
            Role::Povm("a"),
            Role::Povm("a"),
            Role::Basis,
            Role::Basis,
            Role::Basis,
        ],
        Thm11Decoupling => vec![Role::Povm("a"), Role::Povm("a"), Role::Basis],
        Thm11Pure => vec![
            Role::Povm("a"),
            Role::Povm("a"),
            Role::Povm("a"),
            Role::Povm("a"),
            Role::Povm("a"),
            Role::Basis,
        ],
        Thm11Channel => vec![Role::Basis, Role::Basis],
        Eq33Ssa => vec![],
        Eq37Subsystem => vec![Role::Povm("a")],
    }
}

/// Completes basis roles that have canonical or derivable defaults: a
/// Fourier-conjugate pair for relations quantified over mutually unbiased
/// pairs, and partner bases derived from the first supplied one where the
/// statement fixes them relative to it.
fn fill_default_bases(relation: RelationId, da: usize, inst: &mut Instance) -> Result<()> {
    use RelationId::*;
    match relation {
        Thm5Mub | Cor9NoSplitting | Thm11Channel if inst.bases.is_empty() => {
            let (v, w) = mub_pair("a", da);
            inst.bases = vec![v, w];
        }
        Thm5Mub | Cor9NoSplitting | Thm11Channel if inst.bases.len() == 1 => {
            let partner = mu_partner(&inst.bases[0], None)?;
            inst.bases.push(partner);
        }
        Thm8Suppression | Thm8EqualPresence | Thm10Presence if inst.bases.len() < 3 => {
            if inst.bases.is_empty() {
                inst.bases.push(OrthonormalBasis::computational("a", da));
            }
            while inst.bases.len() < 3 {
                let twist = inst.bases.len() == 2;
                let w = &inst.bases[0];
                let partner = if twist {
                    let mut rng = seeded(0);
                    mu_partner(w, Some(&mut rng))?
                } else {
                    mu_partner(w, None)?
                };
                inst.bases.push(partner);
            }
        }
        Thm11Decoupling | Thm11Pure if inst.bases.is_empty() => {
            inst.bases.push(OrthonormalBasis::computational("a", da));
        }
        _ => {}
    }
    Ok(())
}

fn infer_dims(
    relation: RelationId,
    state: Option<&DensityOperator>,
    channel: Option<&ChannelPair>,
) -> Result<(usize, usize, usize)> {
    if let Some(pair) = channel {
        let iso = pair.isometry();
        return Ok((iso.d_a(), iso.d_b(), iso.d_c()));
    }
    let rho = state.ok_or_else(|| {
        Error::ShapeMismatch(format!(
            "{} needs a state or channel to fix dimensions",
            relation.name()
        ))
    })?;
    let dims = rho.dims();
    let da = dims.dim("a").ok_or_else(|| {
        Error::ShapeMismatch("the state file must name a subsystem `a`".into())
    })?;
    Ok((da, dims.dim("b").unwrap_or(1), dims.dim("c").unwrap_or(1)))
}

/// Loose validity check used by tests on constructed states.
#[allow(dead_code)]
pub(crate) fn is_valid_density(rho: &DensityOperator) -> bool {
    validate_density(rho.mat(), rho.dims()).is_valid()
}
