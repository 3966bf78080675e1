//! Relative projectivity (Higman's criterion), projectivity, vertices and trivial sources.

use super::decomp::{is_direct_summand, is_indecomposable};
use super::hom::hom_space;
use super::Representation;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::group::{p_part, CosetSpace, PermGroup};
use crate::linalg::Mat;
use crate::Rng;

/// `tr_Q^G(phi) = sum_{t in [Q\G]} rho(t^-1) phi rho(t)`.
pub fn relative_trace_endomorphism(m: &Representation, q: &PermGroup, phi: &Mat) -> Result<Mat> {
    let cs = CosetSpace::new(m.group(), q)?;
    let mut acc = Mat::zeros(m.field(), m.dim(), m.dim());
    for t in cs.reps() {
        let a = m.matrix_of(&t.inverse())?;
        let b = m.matrix_of(t)?;
        acc = acc.add(&a.mul(phi).mul(&b));
    }
    Ok(acc)
}

/// Result of Higman's criterion.
#[derive(Clone, Debug)]
pub struct Projectivity {
    pub projective: bool,
    /// A `kQ`-endomorphism `phi` with `tr_Q^G(phi) = id`, when one exists.
    pub certificate: Option<Mat>,
}

/// A `kQ`-endomorphism of `M` whose relative trace to `G` is the identity, if one exists.
pub fn higman_certificate(m: &Representation, q: &PermGroup) -> Result<Option<Mat>> {
    let g = m.group();
    if !g.contains_group(q) {
        return Err(Error::NotSubgroup("Higman's criterion needs Q <= G".into()));
    }
    let f = m.field();
    let n = m.dim();
    if n == 0 {
        return Ok(Some(Mat::zeros(f, 0, 0)));
    }
    let index = g.order() / q.order();
    let p = f.characteristic();
    if index % p as u128 != 0 {
        // tr(c * id) = [G:Q] c id
        let c = f.inv(f.from_int((index % p as u128) as i64));
        return Ok(Some(Mat::identity(f, n).scaled(c)));
    }
    let endo = hom_space(&m.restrict(q)?, &m.restrict(q)?)?;
    let traces = endo
        .iter()
        .map(|e| relative_trace_endomorphism(m, q, e))
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<Vec<Elem>> = traces.iter().map(|t| t.data().to_vec()).collect();
    let a = Mat::from_rows(f, n * n, &rows);
    let id = Mat::from_rows(f, n * n, &[Mat::identity(f, n).data().to_vec()]);
    let Some(c) = a.solve_left(&id)? else {
        return Ok(None);
    };
    let mut phi = Mat::zeros(f, n, n);
    for (i, e) in endo.iter().enumerate() {
        phi.add_scaled(c.get(0, i), e);
    }
    debug_assert!(relative_trace_endomorphism(m, q, &phi)?.is_identity());
    Ok(Some(phi))
}

pub fn is_relatively_projective(m: &Representation, q: &PermGroup) -> Result<Projectivity> {
    let certificate = higman_certificate(m, q)?;
    Ok(Projectivity {
        projective: certificate.is_some(),
        certificate,
    })
}

/// Projectivity by freeness over a Sylow subgroup: `rank rho(sum P) = dim / |P|`.
pub fn is_projective(m: &Representation) -> Result<bool> {
    let p = m.field().characteristic();
    let sylow = m.group().sylow_subgroup(p)?;
    let order = sylow.order() as usize;
    if m.dim() % order != 0 {
        return Ok(false);
    }
    let s = m.algebra_element(&sylow, |_| 1)?;
    Ok(s.rank() * order == m.dim())
}

/// The direct-definition oracle: is the indecomposable `M` a summand of `M|_Q` induced to `G`?
pub fn is_summand_of_induced(m: &Representation, q: &PermGroup, rng: &mut Rng) -> Result<bool> {
    if !is_indecomposable(m, rng)? {
        return Err(Error::Decomposable);
    }
    let ind = m.restrict(q)?.induce(m.group())?;
    Ok(is_direct_summand(m, &ind, rng)?.is_some())
}

/// A vertex of an indecomposable module, found by descending through maximal subgroups of a
/// Sylow subgroup while Higman's criterion holds.
pub fn vertex(m: &Representation, rng: &mut Rng) -> Result<PermGroup> {
    if !is_indecomposable(m, rng)? {
        return Err(Error::Decomposable);
    }
    vertex_of_indecomposable(m)
}

pub(crate) fn vertex_of_indecomposable(m: &Representation) -> Result<PermGroup> {
    let p = m.field().characteristic();
    let mut cur = m.group().sylow_subgroup(p)?;
    'descend: loop {
        if cur.is_trivial() {
            return Ok(cur);
        }
        for r in cur.maximal_subgroups_of_p_group(p)? {
            if higman_certificate(m, &r)?.is_some() {
                cur = r;
                continue 'descend;
            }
        }
        return Ok(cur);
    }
}

/// Indecomposable with a trivial source: a summand of the permutation module on a vertex.
pub fn is_trivial_source(m: &Representation, rng: &mut Rng) -> Result<bool> {
    let v = vertex(m, rng)?;
    let perm = Representation::permutation_module(m.group(), &v, m.field())?;
    Ok(is_direct_summand(m, &perm, rng)?.is_some())
}

/// The `p`-part of a group order, as used for defect bookkeeping.
pub fn sylow_order(g: &PermGroup, p: u32) -> u128 {
    p_part(g.order(), p)
}
