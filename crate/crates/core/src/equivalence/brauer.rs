//! Relative Brauer indecomposability of modules and the Scott-module criterion for it.
//! Also the shape of Brauer constructions of trivial source modules.

use serde::Serialize;

use super::bimodule::{apply_functor, Bimodule};
use super::checks::{diagonal_of_iso, ScottSetting};
use crate::error::{Error, Result};
use crate::fusion::{fusion_system, FusionSystem};
use crate::group::{conjugating_element, structure_label, subgroups_of_p_group, PermGroup};
use crate::rep::{
    decompose, is_direct_summand, is_indecomposable, isomorphism, scott_module, vertex, Representation,
};
use crate::Rng;

/// `Q C_G(Q)`.
pub fn q_centralizer_product(g: &PermGroup, q: &PermGroup) -> Result<PermGroup> {
    let c = g.centralizer(q)?;
    let mut gens = q.generators().to_vec();
    gens.extend(c.generators().iter().cloned());
    g.subgroup(gens)
}

#[derive(Clone, Debug, Serialize)]
pub struct BrauerEntry {
    pub subgroup_order: u128,
    pub subgroup_structure: String,
    pub brauer_dim: usize,
    /// Indecomposable or zero on restriction to `Q C_G(Q)`.
    pub indecomposable_or_zero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BrauerIndecReport {
    pub entries: Vec<BrauerEntry>,
    pub holds: bool,
    /// Index into `entries` of the first failure.
    pub witness: Option<usize>,
}

/// The subgroups `Q` of `P` (fusion-class representatives, fully normalized) containing an
/// `F`-conjugate of `R`. For an indecomposable module with vertex `P`, checking these is
/// enough: other `p`-subgroups give zero Brauer constructions or conjugate data.
fn subgroups_over(fs: &FusionSystem, r: &PermGroup, all_fully_normalized: bool) -> Result<Vec<usize>> {
    let ri = fs
        .index_of(r)
        .ok_or_else(|| Error::NotSubgroup("R must be a subgroup of P".into()))?;
    let r_class: Vec<usize> = fs.classes()[fs.class_of(ri)].clone();
    let candidates: Vec<usize> = if all_fully_normalized {
        let mut v = Vec::new();
        for i in 0..fs.subgroups().len() {
            if fs.is_fully_normalized(i)? {
                v.push(i);
            }
        }
        v.sort_by_key(|&i| std::cmp::Reverse(fs.subgroup(i).order()));
        v
    } else {
        fs.class_representatives(false)?
    };
    Ok(candidates
        .into_iter()
        .filter(|&q| r_class.iter().any(|&j| fs.mask(j) & !fs.mask(q) == 0))
        .collect())
}

/// Whether `M(Q)` restricted to `Q C_G(Q)` is indecomposable or zero for every `p`-subgroup
/// `Q` containing `R`, for an indecomposable module `m` with vertex `p`.
pub fn is_rel_brauer_indecomposable(
    m: &Representation,
    p: &PermGroup,
    r: &PermGroup,
    rng: &mut Rng,
) -> Result<BrauerIndecReport> {
    let fs = fusion_system(m.group(), p)?;
    rel_brauer_with(m, &fs, r, rng)
}

fn rel_brauer_with(m: &Representation, fs: &FusionSystem, r: &PermGroup, rng: &mut Rng) -> Result<BrauerIndecReport> {
    let g = m.group();
    let mut entries = Vec::new();
    for qi in subgroups_over(fs, r, false)? {
        let q = fs.subgroup(qi);
        let qc = q_centralizer_product(g, q)?;
        let bq = m.brauer_construction_over(q, &qc)?;
        let ok = bq.module.dim() == 0 || is_indecomposable(&bq.module, rng)?;
        entries.push(BrauerEntry {
            subgroup_order: q.order(),
            subgroup_structure: structure_label(q),
            brauer_dim: bq.module.dim(),
            indecomposable_or_zero: ok,
        });
    }
    let witness = entries.iter().position(|e| !e.indecomposable_or_zero);
    Ok(BrauerIndecReport {
        holds: witness.is_none(),
        witness,
        entries,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalizerScottEntry {
    pub subgroup_order: u128,
    pub subgroup_structure: String,
    pub normalizer_order: u128,
    pub scott_dim: usize,
    /// `S(N_G(Q), N_P(Q))` restricted to `Q C_G(Q)` is indecomposable.
    pub indecomposable: bool,
    /// `M(Q) = S(N_G(Q), N_P(Q))` by an explicit isomorphism (checked when both clauses hold).
    pub brauer_isomorphic: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BrauerCriterionReport {
    pub saturated: bool,
    pub scott_dim: usize,
    pub brauer_indecomposable: BrauerIndecReport,
    pub normalizer_scott: Vec<NormalizerScottEntry>,
    pub normalizer_clause: bool,
    pub agree: bool,
}

/// For `M = S(G, P)`: relative `R`-Brauer indecomposability against indecomposability of the
/// Scott modules `S(N_G(Q), N_P(Q))` on `Q C_G(Q)` for fully normalized `Q` over `R`; when both
/// hold, `M(Q)` is compared with `S(N_G(Q), N_P(Q))`.
pub fn theorem_brauer_criterion(
    g: &PermGroup,
    p: &PermGroup,
    r: &PermGroup,
    field: &crate::Field,
    rng: &mut Rng,
) -> Result<BrauerCriterionReport> {
    let m = scott_module(g, p, field, rng)?.module;
    theorem_brauer_criterion_for(&m, p, r, rng)
}

/// [`theorem_brauer_criterion`] with `m = S(G, P)` supplied by the caller.
pub fn theorem_brauer_criterion_for(
    m: &Representation,
    p: &PermGroup,
    r: &PermGroup,
    rng: &mut Rng,
) -> Result<BrauerCriterionReport> {
    let g = m.group();
    let field = m.field();
    let fs = fusion_system(g, p)?;
    if !fs.is_saturated()?.saturated() {
        return Err(Error::Hypothesis("the fusion system is not saturated".into()));
    }
    let brauer_indecomposable = rel_brauer_with(m, &fs, r, rng)?;
    let mut normalizer_scott = Vec::new();
    for qi in subgroups_over(&fs, r, true)? {
        let q = fs.subgroup(qi);
        let n = g.normalizer(q)?;
        let np = p.intersection(&n)?;
        let s = if q.order() == p.order() && n.order() == g.order() {
            m.clone()
        } else {
            scott_module(&n, &np, field, rng)?.module
        };
        let qc = q_centralizer_product(g, q)?;
        let indecomposable = is_indecomposable(&s.restrict(&qc)?, rng)?;
        normalizer_scott.push((q.clone(), n, s, NormalizerScottEntry {
            subgroup_order: q.order(),
            subgroup_structure: structure_label(q),
            normalizer_order: 0,
            scott_dim: 0,
            indecomposable,
            brauer_isomorphic: None,
        }));
    }
    let normalizer_clause = normalizer_scott.iter().all(|e| e.3.indecomposable);
    let both = normalizer_clause && brauer_indecomposable.holds;
    let mut entries = Vec::new();
    for (q, n, s, mut e) in normalizer_scott {
        e.normalizer_order = n.order();
        e.scott_dim = s.dim();
        if both {
            let bq = m.brauer_construction_over(&q, &n)?;
            e.brauer_isomorphic = Some(isomorphism(&bq.module, &s, rng)?.is_some());
        }
        entries.push(e);
    }
    Ok(BrauerCriterionReport {
        saturated: true,
        scott_dim: m.dim(),
        agree: normalizer_clause == brauer_indecomposable.holds,
        brauer_indecomposable,
        normalizer_scott: entries,
        normalizer_clause,
    })
}

/// Whether `S(N_G(Q), N_P(Q))` is a direct summand of `S(G, P)(Q)`.
pub fn brauer_of_scott_summand_check(
    g: &PermGroup,
    p: &PermGroup,
    q: &PermGroup,
    field: &crate::Field,
    rng: &mut Rng,
) -> Result<bool> {
    let fs = fusion_system(g, p)?;
    let qi = fs
        .index_of(q)
        .ok_or_else(|| Error::NotSubgroup("Q must be a subgroup of P".into()))?;
    if !fs.is_fully_normalized(qi)? {
        return Err(Error::Hypothesis("Q is not fully normalized".into()));
    }
    let m = scott_module(g, p, field, rng)?.module;
    let n = g.normalizer(q)?;
    let s = scott_module(&n, &p.intersection(&n)?, field, rng)?.module;
    let bq = m.brauer_construction_over(q, &n)?;
    Ok(is_direct_summand(&s, &bq.module, rng)?.is_some())
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexShapeEntry {
    pub dim: usize,
    pub vertex_order: u128,
    /// `Q` is a proper normal subgroup of the vertex.
    pub properly_normal: bool,
    /// The vertex is `N_G(Q)`-conjugate into `N_P(Q)`.
    pub within_normalizer_of_p: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexShapeReport {
    pub brauer_dim: usize,
    pub summands: Vec<VertexShapeEntry>,
    pub holds: bool,
}

/// Vertices of the summands of `M(Q)` for a trivial source module `m` with vertex `p` and a
/// proper subgroup `Q` of `p`.
pub fn vertex_shape_check(m: &Representation, p: &PermGroup, q: &PermGroup, rng: &mut Rng) -> Result<VertexShapeReport> {
    if !p.contains_group(q) || q.order() == p.order() {
        return Err(Error::Hypothesis("Q must be a proper subgroup of the vertex".into()));
    }
    let n = m.group().normalizer(q)?;
    let np = p.intersection(&n)?;
    let bq = m.brauer_construction_over(q, &n)?;
    let mut summands = Vec::new();
    if bq.module.dim() > 0 {
        let subs = subgroups_of_p_group(&np)?;
        for s in decompose(&bq.module, rng)?.summands {
            let v = vertex(&s.module, rng)?;
            let properly_normal = v.contains_group(q) && v.order() > q.order() && q.is_normal_in(&v);
            let mut within = false;
            for t in subs.iter().filter(|t| t.order() == v.order()) {
                if conjugating_element(&n, &v, t)?.is_some() {
                    within = true;
                    break;
                }
            }
            summands.push(VertexShapeEntry {
                dim: s.module.dim(),
                vertex_order: v.order(),
                properly_normal,
                within_normalizer_of_p: within,
            });
        }
    }
    Ok(VertexShapeReport {
        brauer_dim: bq.module.dim(),
        holds: summands.iter().all(|e| e.properly_normal && e.within_normalizer_of_p),
        summands,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ScottSummandReport {
    pub subgroup_order: u128,
    /// `S(G', Q)` is a summand of `k_G (x)_{kG} M`.
    pub in_functor_image: bool,
    /// `S(G x G', Delta Q)` is a summand of `M`.
    pub in_bimodule: bool,
    pub agree: bool,
}

/// Both sides of the criterion for a Scott module to appear in `k_G (x)_{kG} M`, for a
/// bimodule `m` between the groups of `setting` and a subgroup `q` of the common Sylow.
pub fn scott_summand_of_functor_image(
    setting: &ScottSetting,
    m: &Bimodule,
    q: &PermGroup,
    rng: &mut Rng,
) -> Result<ScottSummandReport> {
    let field = &setting.field;
    let q2 = setting.image(q)?;
    let triv = Representation::trivial(setting.left(), field);
    let img = apply_functor(&triv, m)?;
    let s1 = scott_module(setting.right(), &q2, field, rng)?.module;
    let in_functor_image = is_direct_summand(&s1, &img, rng)?.is_some();
    let dq = diagonal_of_iso(&setting.product, &setting.common.iso, q)?;
    let s2 = scott_module(setting.product.group(), &dq, field, rng)?.module;
    let in_bimodule = is_direct_summand(&s2, m.representation(), rng)?.is_some();
    Ok(ScottSummandReport {
        subgroup_order: q.order(),
        in_functor_image,
        in_bimodule,
        agree: in_functor_image == in_bimodule,
    })
}
