//! Larsen–Pink filtrations of finite groups: validation, lattice search
//! and the resulting bounded-length decomposition of subgroups of
//! `GL_n(Z/l^k)`.
//!
//! "Direct product of simple groups of Lie type in characteristic `l`" is
//! checked by a proxy: a direct product of nonabelian simple groups, each
//! of order divisible by `l`. Reports say so in [`LpReport::proxy`].

use crate::construct::quotient;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::matrix::{self, is_power_of};
use crate::normal::{all_normal_subgroups, intersect_all, nonabelian_maximals};
use crate::ring::{is_prime, RingKind};
use crate::series::{abelian_simple_length, quotient_invariants};
use crate::subgroup::Subgroup;

/// Normal subgroups `lambda3 <= lambda2 <= lambda1` of a group `Λ`.
#[derive(Clone, Debug)]
pub struct LPFiltration {
    pub lambda1: Subgroup,
    pub lambda2: Subgroup,
    pub lambda3: Subgroup,
    /// Filled in by [`search_lp`].
    pub certificates: Option<LpReport>,
}

impl LPFiltration {
    pub fn new(lambda1: Subgroup, lambda2: Subgroup, lambda3: Subgroup) -> LPFiltration {
        LPFiltration { lambda1, lambda2, lambda3, certificates: None }
    }

    pub fn orders(&self) -> [usize; 3] {
        [self.lambda1.order(), self.lambda2.order(), self.lambda3.order()]
    }
}

/// Outcome of each condition, with the data it was decided on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpReport {
    /// `[Λ : Λ1]`.
    pub index: usize,
    /// `[Λ : Λ1] <= J`.
    pub index_ok: bool,
    /// Orders of the simple factors of `Λ1/Λ2`, or `None` if it is not a
    /// direct product of nonabelian simple groups.
    pub simple_orders: Option<Vec<usize>>,
    /// `Λ1/Λ2` passes the proxy for condition (2).
    pub semisimple_ok: bool,
    /// Always true: condition (2) is checked by the proxy.
    pub proxy: bool,
    /// Invariant factors of `Λ2/Λ3` if abelian.
    pub abelian_invariants: Option<Vec<usize>>,
    /// `Λ2/Λ3` abelian of order prime to `l`.
    pub abelian_ok: bool,
    /// `|Λ3|`.
    pub lambda3_order: usize,
    /// `Λ3` is an `l`-group.
    pub l_group_ok: bool,
}

impl LpReport {
    pub fn valid(&self) -> bool {
        self.index_ok && self.semisimple_ok && self.abelian_ok && self.l_group_ok
    }
}

fn check_params(ell: u32, j: usize) -> Result<()> {
    if !is_prime(ell) {
        return Err(Error::InvalidInput(format!("{ell} is not prime")));
    }
    if j == 0 {
        return Err(Error::InvalidInput("J must be positive".into()));
    }
    Ok(())
}

/// Orders of the simple factors of `upper/lower` if it is a direct product
/// of nonabelian simple groups (empty for the trivial quotient).
fn semisimple_factors(upper: &Subgroup, lower: &Subgroup) -> Result<Option<Vec<usize>>> {
    if upper.order() == lower.order() {
        return Ok(Some(vec![]));
    }
    let (h, emb) = upper.to_group();
    let (q, _) = quotient(&h, &emb.preimage(lower))?;
    if q.is_abelian() {
        return Ok(None);
    }
    // Q embeds in the product of its simple quotients iff their kernels meet
    // trivially, and then Q is itself such a product.
    let kernels = nonabelian_maximals(&q)?;
    if kernels.is_empty() || !intersect_all(&q, &kernels).is_trivial() {
        return Ok(None);
    }
    let mut orders: Vec<usize> = kernels.iter().map(|k| k.index()).collect();
    orders.sort_unstable();
    Ok(Some(orders))
}

fn abelian_part(upper: &Subgroup, lower: &Subgroup) -> Option<Vec<usize>> {
    let g = upper.parent();
    let gens = upper.generators();
    let commute = gens.iter().all(|&x| gens.iter().all(|&y| lower.contains(g.commutator(x, y))));
    commute.then(|| quotient_invariants(upper, lower))
}

fn report(
    ell: u32,
    j: usize,
    filt: &LPFiltration,
    simple: Option<Vec<usize>>,
) -> LpReport {
    let index = filt.lambda1.index();
    let semisimple_ok = simple.as_ref().is_some_and(|s| s.iter().all(|&n| n % ell as usize == 0));
    let abelian_invariants = abelian_part(&filt.lambda2, &filt.lambda3);
    let abelian_ok =
        abelian_invariants.is_some() && (filt.lambda2.order() / filt.lambda3.order()) % ell as usize != 0;
    LpReport {
        index,
        index_ok: index <= j,
        simple_orders: simple,
        semisimple_ok,
        proxy: true,
        abelian_invariants,
        abelian_ok,
        lambda3_order: filt.lambda3.order(),
        l_group_ok: is_power_of(filt.lambda3.order(), ell),
    }
}

/// Checks the four conditions on `filt`.
pub fn validate_lp(lambda: &Group, ell: u32, j: usize, filt: &LPFiltration) -> Result<LpReport> {
    check_params(ell, j)?;
    for (name, s) in [("lambda1", &filt.lambda1), ("lambda2", &filt.lambda2), ("lambda3", &filt.lambda3)] {
        if !s.parent().same(lambda) {
            return Err(Error::InvalidInput(format!("{name} is not a subgroup of {}", lambda.name())));
        }
        if !s.is_normal() {
            return Err(Error::NotNormal);
        }
    }
    if !filt.lambda3.is_subset_of(&filt.lambda2) || !filt.lambda2.is_subset_of(&filt.lambda1) {
        return Err(Error::InvalidInput("filtration is not nested".into()));
    }
    let simple = semisimple_factors(&filt.lambda1, &filt.lambda2)?;
    Ok(report(ell, j, filt, simple))
}

/// Exhaustive search over the normal lattice. Among valid filtrations picks
/// the largest `Λ1`, then the smallest `Λ3`, then the smallest `Λ2`, ties
/// broken by lattice order.
pub fn search_lp(lambda: &Group, ell: u32, j: usize) -> Result<Option<LPFiltration>> {
    check_params(ell, j)?;
    let lattice = all_normal_subgroups(lambda)?;
    let subs = lattice.subgroups();
    let incl = lattice.inclusion();
    let n = subs.len();
    let mut by_size: Vec<usize> = (0..n).filter(|&i| subs[i].index() <= j).collect();
    by_size.sort_by_key(|&i| std::cmp::Reverse(subs[i].order()));
    // l-groups and (Λ2, Λ3) pairs do not depend on Λ1
    let l_group: Vec<bool> = subs.iter().map(|s| is_power_of(s.order(), ell)).collect();
    let mut abelian_ok = vec![vec![None; n]; n];
    let mut best: Option<(usize, usize, usize)> = None;
    let mut current_order = None;
    for &i1 in &by_size {
        if best.is_some() && current_order != Some(subs[i1].order()) {
            break;
        }
        current_order = Some(subs[i1].order());
        for i2 in (0..n).filter(|&i2| incl[i2][i1]) {
            let candidates: Vec<usize> = (0..n)
                .filter(|&i3| incl[i3][i2] && l_group[i3])
                .filter(|&i3| {
                    *abelian_ok[i2][i3].get_or_insert_with(|| {
                        abelian_part(&subs[i2], &subs[i3]).is_some()
                            && (subs[i2].order() / subs[i3].order()) % ell as usize != 0
                    })
                })
                .collect();
            let Some(&i3) = candidates.iter().min_by_key(|&&i3| subs[i3].order()) else { continue };
            let simple = semisimple_factors(&subs[i1], &subs[i2])?;
            if !simple.is_some_and(|s| s.iter().all(|&o| o % ell as usize == 0)) {
                continue;
            }
            let key = |(a, b, c): (usize, usize, usize)| (std::cmp::Reverse(subs[a].order()), subs[c].order(), subs[b].order());
            if best.is_none_or(|b| key((i1, i2, i3)) < key(b)) {
                best = Some((i1, i2, i3));
            }
        }
    }
    let Some((i1, i2, i3)) = best else { return Ok(None) };
    let mut filt = LPFiltration::new(subs[i1].clone(), subs[i2].clone(), subs[i3].clone());
    let rep = validate_lp(lambda, ell, j, &filt)?;
    debug_assert!(rep.valid());
    filt.certificates = Some(rep);
    Ok(Some(filt))
}

/// A normal `l`-subgroup `N` of `Λ` with `l(Λ/N) <= log2(J) + 2`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// Subgroup of the ambient matrix group.
    pub n: Subgroup,
    /// `Λ ∩ ker(GL_n(Z/l^k) -> GL_n(F_l))`.
    pub residue_kernel: Subgroup,
    /// Filtration of the residue image `Λ / Λ4`.
    pub filtration: LPFiltration,
    /// `l(Λ/N)`.
    pub length: usize,
    pub bound: f64,
}

/// `Λ` is a subgroup of `GL_n(Z/l^k)` or of `GL_n(F_q)` with `q` a power of
/// `l`. Takes `N` to be the preimage of `Λ3` under `Λ -> Λ/Λ4`, where `Λ4` is
/// the residue kernel and the filtration is searched on `Λ/Λ4`.
pub fn corollary_decomposition(lambda: &Subgroup, ell: u32, j: usize) -> Result<Decomposition> {
    check_params(ell, j)?;
    let g = lambda.parent();
    let (ring, _) = matrix::matrix_ring(g).ok_or_else(|| Error::InvalidInput("not a matrix group".into()))?;
    // a field of characteristic l is the level-one truncation of an
    // unramified extension of Z_l
    match ring.kind() {
        RingKind::Field { p, .. } | RingKind::Residue { ell: p, .. } if p == ell => {}
        _ => return Err(Error::InvalidInput(format!("{} has residue characteristic other than {ell}", ring.name()))),
    }
    let lambda4 = matrix::residue_kernel_of(g, lambda)?;
    let (h, emb) = lambda.to_group();
    let (q, pi) = quotient(&h, &emb.preimage(&lambda4))?;
    let filtration = search_lp(&q, ell, j)?
        .ok_or_else(|| Error::SearchFailed(format!("no filtration of the residue image with J = {j}")))?;
    let n_in_h = pi.preimage(&filtration.lambda3);
    let n = emb.image_of(&n_in_h);
    if !is_power_of(n.order(), ell) || !n_in_h.is_normal() {
        return Err(Error::PropositionViolated("N is not a normal l-subgroup".into()));
    }
    let length = abelian_simple_length(&quotient(&h, &n_in_h)?.0)?;
    let bound = (j as f64).log2() + 2.0;
    if length as f64 > bound + 1e-9 {
        return Err(Error::PropositionViolated(format!("l(Λ/N) = {length} exceeds {bound}")));
    }
    Ok(Decomposition { n, residue_kernel: lambda4, filtration, length, bound })
}
