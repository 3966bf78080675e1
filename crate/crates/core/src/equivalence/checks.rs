//! Checkers for relative stable equivalences of Morita type, the gluing criterion over
//! centralizers, and the behaviour of simple modules under tensoring with a bimodule.

use serde::Serialize;

use super::bimodule::{
    apply_functor, split_block_summand, tensor_over_group, Bimodule, BlockBimodule,
};
use crate::block::{principal_block, Block, BlockDecomposition};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fusion::{fusion_equal, fusion_system};
use crate::group::{structure_label, CommonSylow, DirectProduct, GroupIso, Perm, PermGroup};
use crate::rep::{
    decompose, higman_certificate, is_indecomposable, is_irreducible, is_projective, vertex,
    Representation,
};
use crate::Rng;

/// Largest remainder that is decomposed for the summand inventory of a report.
const INVENTORY_CAP: usize = 64;

/// A block together with its bimodule, ready for splitting.
pub struct BlockContext {
    pub decomposition: BlockDecomposition,
    pub block: Block,
    pub bimodule: BlockBimodule,
}

impl BlockContext {
    pub fn new(decomposition: BlockDecomposition, index: usize) -> Result<BlockContext> {
        let block = decomposition
            .blocks
            .get(index)
            .cloned()
            .ok_or_else(|| Error::InvalidInput(format!("no block with index {index}")))?;
        let bimodule = BlockBimodule::new(&decomposition, &block)?;
        Ok(BlockContext {
            decomposition,
            block,
            bimodule,
        })
    }

    pub fn principal(group: &PermGroup, field: &Field) -> Result<BlockContext> {
        let (dec, b) = principal_block(group, field)?;
        BlockContext::new(dec, b)
    }

    pub fn group(&self) -> &PermGroup {
        self.decomposition.group()
    }

    pub fn dim(&self) -> usize {
        self.bimodule.dim()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Morita,
    RelativeStable,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummandInfo {
    pub dim: usize,
    pub vertex_order: u128,
}

/// One side of a tensor-product check: `M (x) N = B (+) X`.
#[derive(Clone, Debug, Serialize)]
pub struct RemainderReport {
    pub tensor_dim: usize,
    pub block_dim: usize,
    /// Whether a copy of the block was split off by explicit maps.
    pub block_split: bool,
    pub remainder_dim: Option<usize>,
    /// `Q x Q`-projectivity of the remainder.
    pub product_projective: Option<bool>,
    /// `Delta Q`-projectivity of the remainder.
    pub diagonal_projective: Option<bool>,
    pub summands: Vec<SummandInfo>,
}

impl RemainderReport {
    pub fn is_zero(&self) -> bool {
        self.remainder_dim == Some(0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub verdict: Verdict,
    pub relative_subgroup_order: u128,
    /// `M` and `N` are projective on each side.
    pub one_sided_projective: bool,
    pub bimodules_in_blocks: bool,
    /// `M (x)_{B'} N`.
    pub left: Option<RemainderReport>,
    /// `N (x)_B M`.
    pub right: Option<RemainderReport>,
}

fn one_sided_projective(m: &Bimodule) -> Result<bool> {
    Ok(is_projective(&m.restrict_left()?)? && is_projective(&m.restrict_right()?)?)
}

fn remainder_report(
    t: &Bimodule,
    b: &BlockContext,
    q: &PermGroup,
    rng: &mut Rng,
) -> Result<RemainderReport> {
    let mut rep = RemainderReport {
        tensor_dim: t.dim(),
        block_dim: b.dim(),
        block_split: false,
        remainder_dim: None,
        product_projective: None,
        diagonal_projective: None,
        summands: Vec::new(),
    };
    let Some(split) = split_block_summand(t, &b.bimodule, rng)? else {
        return Ok(rep);
    };
    let x = split.complement.representation();
    rep.block_split = true;
    rep.remainder_dim = Some(x.dim());
    let prod = t.product();
    let qq = prod.product_subgroup(q, q)?;
    let dq = prod.diagonal_of(q)?;
    rep.product_projective = Some(higman_certificate(x, &qq)?.is_some());
    rep.diagonal_projective = Some(higman_certificate(x, &dq)?.is_some());
    if x.dim() > 0 && x.dim() <= INVENTORY_CAP {
        let d = decompose(x, rng)?;
        for s in &d.summands {
            rep.summands.push(SummandInfo {
                dim: s.module.dim(),
                vertex_order: vertex(&s.module, rng)?.order(),
            });
        }
    }
    Ok(rep)
}

/// Whether `(M, N)` induces a relative `Q`-stable equivalence of Morita type between the
/// blocks `B` of `G` and `B'` of `G'`; `q` and `q2` are the same subgroup seen in `G` and `G'`.
/// The verdict is Morita when both remainders vanish.
pub fn check_relative_stable_equivalence(
    m: &Bimodule,
    n: &Bimodule,
    b: &BlockContext,
    b2: &BlockContext,
    (q, q2): (&PermGroup, &PermGroup),
    rng: &mut Rng,
) -> Result<EquivalenceReport> {
    if m.left_group() != b.group() || m.right_group() != b2.group() {
        return Err(Error::InvalidInput("M must be a (G, G')-bimodule".into()));
    }
    if n.left_group() != b2.group() || n.right_group() != b.group() {
        return Err(Error::InvalidInput("N must be a (G', G)-bimodule".into()));
    }
    let mut report = EquivalenceReport {
        verdict: Verdict::None,
        relative_subgroup_order: q.order(),
        one_sided_projective: one_sided_projective(m)? && one_sided_projective(n)?,
        bimodules_in_blocks: m.lies_in(
            (&b.decomposition, &b.block),
            (&b2.decomposition, &b2.block),
        )? && n.lies_in(
            (&b2.decomposition, &b2.block),
            (&b.decomposition, &b.block),
        )?,
        left: None,
        right: None,
    };
    if !report.one_sided_projective || !report.bimodules_in_blocks {
        return Ok(report);
    }
    // block membership was checked above, so the tensor products over the blocks are the
    // ones over the group algebras
    let t = tensor_over_group(m, n)?;
    let left = remainder_report(&t, b, q, rng)?;
    let t2 = tensor_over_group(n, m)?;
    let right = remainder_report(&t2, b2, q2, rng)?;
    report.verdict = if left.is_zero() && right.is_zero() {
        Verdict::Morita
    } else if left.product_projective == Some(true) && right.product_projective == Some(true) {
        Verdict::RelativeStable
    } else {
        Verdict::None
    };
    report.left = Some(left);
    report.right = Some(right);
    Ok(report)
}

/// `{(x, iso(x)) : x in Q}` in `G x G'` for a subgroup `Q` of the source of `iso`.
pub fn diagonal_of_iso(prod: &DirectProduct, iso: &GroupIso, q: &PermGroup) -> Result<PermGroup> {
    let gens = q
        .generators()
        .iter()
        .map(|x| {
            let y = iso
                .apply(x)
                .ok_or_else(|| Error::NotSubgroup("subgroup outside the identified Sylow".into()))?;
            Ok(prod.pair(x, &y))
        })
        .collect::<Result<Vec<Perm>>>()?;
    PermGroup::new(prod.group().degree(), gens)
}

/// The setting shared by the checkers: `G`, `G'` with a common Sylow subgroup and the Scott
/// bimodule `M = S(G x G', Delta P)`.
pub struct ScottSetting {
    pub field: Field,
    pub common: CommonSylow,
    pub product: DirectProduct,
    pub diagonal: PermGroup,
    pub scott: Bimodule,
}

impl ScottSetting {
    pub fn new(g: &PermGroup, g2: &PermGroup, common: CommonSylow, field: &Field, rng: &mut Rng) -> Result<ScottSetting> {
        let product = DirectProduct::new(g, g2);
        let diagonal = diagonal_of_iso(&product, &common.iso, &common.in_first)?;
        let scott = Bimodule::scott(&product, &diagonal, field, rng)?;
        Ok(ScottSetting {
            field: field.clone(),
            common,
            product,
            diagonal,
            scott,
        })
    }

    pub fn left(&self) -> &PermGroup {
        self.product.left()
    }

    pub fn right(&self) -> &PermGroup {
        self.product.right()
    }

    /// The image of a subgroup of `P` in `G'`.
    pub fn image(&self, q: &PermGroup) -> Result<PermGroup> {
        self.common
            .iso
            .image_of(q)
            .ok_or_else(|| Error::NotSubgroup("subgroup outside the identified Sylow".into()))
    }

    /// `Delta Q` in `G x G'` for a subgroup `Q` of `P`.
    pub fn diagonal_image(&self, q: &PermGroup) -> Result<PermGroup> {
        diagonal_of_iso(&self.product, &self.common.iso, q)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HypothesisReport {
    pub central_in_first: bool,
    pub central_in_second: bool,
    pub contained_in_sylow: bool,
    pub fusion_equal: bool,
}

impl HypothesisReport {
    pub fn holds(&self) -> bool {
        self.central_in_first && self.central_in_second && self.contained_in_sylow && self.fusion_equal
    }
}

/// Centrality of `Z` on both sides and equality of the fusion systems.
pub fn check_hypotheses(setting: &ScottSetting, z: &PermGroup) -> Result<HypothesisReport> {
    let p = &setting.common.in_first;
    let contained = p.contains_group(z);
    let central = |g: &PermGroup, z: &PermGroup| {
        g.generators().iter().all(|x| z.generators().iter().all(|y| x.commutes_with(y)))
    };
    let (c1, c2) = if contained {
        let z2 = setting.image(z)?;
        (central(setting.left(), z), central(setting.right(), &z2))
    } else {
        (false, false)
    };
    let f1 = fusion_system(setting.left(), p)?;
    let f2 = fusion_system(setting.right(), &setting.common.in_second)?;
    let eq = fusion_equal(&f1, &f2, &setting.common.iso)?.equal;
    Ok(HypothesisReport {
        central_in_first: c1,
        central_in_second: c2,
        contained_in_sylow: contained,
        fusion_equal: eq,
    })
}

/// The centralizer check at one subgroup `Q` of `P`.
#[derive(Clone, Debug, Serialize)]
pub struct CentralizerCheck {
    pub subgroup_order: u128,
    pub subgroup_structure: String,
    pub centralizer_first: String,
    pub centralizer_second: String,
    pub brauer_dim: usize,
    pub verdict: Verdict,
    pub report: EquivalenceReport,
}

/// `M(Delta Q)` as a `(C_G(Q), C_G'(Q))`-bimodule.
pub fn brauer_bimodule(setting: &ScottSetting, q: &PermGroup) -> Result<Bimodule> {
    let q2 = setting.image(q)?;
    let c1 = setting.left().centralizer(q)?;
    let c2 = setting.right().centralizer(&q2)?;
    let prod_q = DirectProduct::new(&c1, &c2);
    let dq = diagonal_of_iso(&setting.product, &setting.common.iso, q)?;
    let bq = setting
        .scott
        .representation()
        .brauer_construction_over(&dq, prod_q.group())?;
    Bimodule::new(&prod_q, bq.module)
}

/// Whether `(M(Delta Q), M(Delta Q)^*)` induces a Morita equivalence between the principal
/// blocks of the centralizers.
pub fn check_centralizer_morita(setting: &ScottSetting, q: &PermGroup, rng: &mut Rng) -> Result<CentralizerCheck> {
    let mq = brauer_bimodule(setting, q)?;
    let c1 = mq.left_group().clone();
    let c2 = mq.right_group().clone();
    let b1 = BlockContext::principal(&c1, &setting.field)?;
    let b2 = BlockContext::principal(&c2, &setting.field)?;
    let triv1 = PermGroup::trivial(c1.degree());
    let triv2 = PermGroup::trivial(c2.degree());
    let report = if mq.dim() == 0 {
        EquivalenceReport {
            verdict: Verdict::None,
            relative_subgroup_order: 1,
            one_sided_projective: false,
            bimodules_in_blocks: false,
            left: None,
            right: None,
        }
    } else {
        check_relative_stable_equivalence(&mq, &mq.dual(), &b1, &b2, (&triv1, &triv2), rng)?
    };
    Ok(CentralizerCheck {
        subgroup_order: q.order(),
        subgroup_structure: structure_label(q),
        centralizer_first: structure_label(&c1),
        centralizer_second: structure_label(&c2),
        brauer_dim: mq.dim(),
        verdict: report.verdict,
        report,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GluingReport {
    pub hypotheses: HypothesisReport,
    /// Fusion-class representatives `Q` with `Z < Q <= P` that were checked.
    pub centralizer_checks: Vec<CentralizerCheck>,
    pub centralizer_clause: bool,
    pub stable_equivalence: EquivalenceReport,
    pub stable_clause: bool,
    pub agree: bool,
}

/// The two sides of the gluing criterion for `M = S(G x G', Delta P)` and a subgroup `Z` of
/// `P` central in both groups: Morita equivalences between principal blocks of centralizers
/// of all `Q` with `Z < Q <= P` (checked on fusion-class representatives, which suffices
/// because conjugate subgroups give conjugate centralizer data), against a relative
/// `Z`-stable equivalence between the principal blocks.
pub fn check_gluing_theorem(
    setting: &ScottSetting,
    z: &PermGroup,
    b: &BlockContext,
    b2: &BlockContext,
    rng: &mut Rng,
) -> Result<GluingReport> {
    let hypotheses = check_hypotheses(setting, z)?;
    if !hypotheses.holds() {
        return Err(Error::Hypothesis(format!(
            "gluing needs Z central in both groups and equal fusion systems: {hypotheses:?}"
        )));
    }
    let p = &setting.common.in_first;
    let fs = fusion_system(setting.left(), p)?;
    let mut centralizer_checks = Vec::new();
    for i in fs.class_representatives(true)? {
        let q = fs.subgroup(i).clone();
        if q.order() == z.order() || !q.contains_group(z) {
            continue;
        }
        centralizer_checks.push(check_centralizer_morita(setting, &q, rng)?);
    }
    let centralizer_clause = centralizer_checks.iter().all(|c| c.verdict == Verdict::Morita);
    let z2 = setting.image(z)?;
    let m = &setting.scott;
    let stable_equivalence = check_relative_stable_equivalence(m, &m.dual(), b, b2, (z, &z2), rng)?;
    let stable_clause = matches!(stable_equivalence.verdict, Verdict::Morita | Verdict::RelativeStable);
    Ok(GluingReport {
        hypotheses,
        agree: centralizer_clause == stable_clause,
        centralizer_checks,
        centralizer_clause,
        stable_equivalence,
        stable_clause,
    })
}

/// The summand of `M` that is not `Q x Q'`-projective; an error unless there is exactly one.
pub fn unique_nonrelprojective_summand(
    m: &Bimodule,
    q: &PermGroup,
    q2: &PermGroup,
    rng: &mut Rng,
) -> Result<Representation> {
    let qq = m.product().product_subgroup(q, q2)?;
    let d = decompose(m.representation(), rng)?;
    let mut found = Vec::new();
    for s in d.summands {
        if higman_certificate(&s.module, &qq)?.is_none() {
            found.push(s.module);
        }
    }
    if found.len() != 1 {
        return Err(Error::TheoremViolation(format!(
            "{} summands are not relatively projective to the product subgroup",
            found.len()
        )));
    }
    Ok(found.pop().expect("one summand"))
}

/// What tensoring with `M` does to one simple module.
#[derive(Clone, Debug, Serialize)]
pub struct SimpleImage {
    pub simple_dim: usize,
    pub image_dim: usize,
    pub image_simple: bool,
    pub image_indecomposable: bool,
    /// Whether the image is relatively projective to `Z`.
    pub image_z_projective: bool,
    /// Number of summands of the image that are relatively projective to `Z`.
    pub z_projective_summands: usize,
}

/// `S (x)_B M` for each simple module `S` of the block `B` of `G`, with `z2` the central
/// subgroup on the `G'` side.
pub fn check_simple_images(
    m: &Bimodule,
    b: &BlockContext,
    z2: &PermGroup,
    rng: &mut Rng,
) -> Result<Vec<SimpleImage>> {
    let simples = b.decomposition.simples(&b.block, rng)?;
    let mut out = Vec::new();
    for s in &simples {
        let img = apply_functor(s, m)?;
        let d = decompose(&img, rng)?;
        let mut zp = 0;
        for su in &d.summands {
            if higman_certificate(&su.module, z2)?.is_some() {
                zp += 1;
            }
        }
        out.push(SimpleImage {
            simple_dim: s.dim(),
            image_dim: img.dim(),
            image_simple: is_irreducible(&img, rng)?,
            image_indecomposable: img.dim() > 0 && is_indecomposable(&img, rng)?,
            image_z_projective: higman_certificate(&img, z2)?.is_some(),
            z_projective_summands: zp,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct MoritaLiftReport {
    /// `(M, M^*)` induces a relative stable equivalence, the setting of the criterion.
    pub precondition: bool,
    pub images: Vec<SimpleImage>,
    pub all_images_simple: bool,
    pub stable_equivalence: EquivalenceReport,
    pub remainders_zero: bool,
    /// The two characterisations of a Morita equivalence agree.
    pub agree: bool,
    pub verdict: Verdict,
}

/// Morita lift: the images of all simple modules are simple exactly when both remainders of
/// the relative stable equivalence vanish. Both sides are computed independently.
pub fn check_morita_lift(
    m: &Bimodule,
    b: &BlockContext,
    b2: &BlockContext,
    (z, z2): (&PermGroup, &PermGroup),
    rng: &mut Rng,
) -> Result<MoritaLiftReport> {
    let stable_equivalence = check_relative_stable_equivalence(m, &m.dual(), b, b2, (z, z2), rng)?;
    let images = check_simple_images(m, b, z2, rng)?;
    let all_images_simple = images.iter().all(|i| i.image_simple);
    let remainders_zero = stable_equivalence.verdict == Verdict::Morita;
    Ok(MoritaLiftReport {
        precondition: stable_equivalence.verdict != Verdict::None,
        all_images_simple,
        remainders_zero,
        agree: all_images_simple == remainders_zero,
        verdict: if all_images_simple && remainders_zero {
            Verdict::Morita
        } else {
            stable_equivalence.verdict
        },
        images,
        stable_equivalence,
    })
}
