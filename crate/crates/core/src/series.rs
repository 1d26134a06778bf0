//! `D0(G)`, `D(G)`, the generalized derived series and the abelian-simple
//! length.
//!
//! `D(G)` is the intersection of all normal `N` with `G/N` abelian or simple.
//! It is computed as `D0(G) ∩ G'`, where `D0(G)` intersects the maximal
//! normal subgroups with nonabelian quotient. For solvable `G` there are no
//! such subgroups and `D0(G) = G`, so the lattice is never built.

use std::fmt;

use crate::derived::{commutator_subgroup, derived_terms};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::hom::Homomorphism;
use crate::normal::{intersect_all, is_simple, nonabelian_maximals};
use crate::construct::quotient;
use crate::ring::is_prime;
use crate::subgroup::Subgroup;

/// Shape of one factor `G_i / G_{i+1}`: invariant factors of its abelian
/// part and the orders of its nonabelian simple direct factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorDescriptor {
    pub order: usize,
    /// Invariant factors `d_1 | d_2 | ...`, ascending; empty if trivial.
    pub abelian_invariants: Vec<usize>,
    /// Orders of the nonabelian simple factors, ascending.
    pub simple_orders: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    Trivial,
    Abelian,
    Semisimple,
    Mixed,
}

impl FactorDescriptor {
    pub fn kind(&self) -> FactorKind {
        match (self.abelian_invariants.is_empty(), self.simple_orders.is_empty()) {
            (true, true) => FactorKind::Trivial,
            (false, true) => FactorKind::Abelian,
            (true, false) => FactorKind::Semisimple,
            (false, false) => FactorKind::Mixed,
        }
    }

    /// Descriptor of an abelian factor `upper / lower`.
    pub(crate) fn abelian_step(upper: &Subgroup, lower: &Subgroup) -> Result<FactorDescriptor> {
        Ok(FactorDescriptor {
            order: upper.order() / lower.order(),
            abelian_invariants: quotient_invariants(upper, lower),
            simple_orders: vec![],
        })
    }

    /// e.g. `C2 x C6 x A5`; `1` for the trivial factor.
    pub fn label(&self) -> String {
        let mut parts: Vec<String> = self.abelian_invariants.iter().map(|d| format!("C{d}")).collect();
        parts.extend(self.simple_orders.iter().map(|&n| simple_name(n)));
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" x ")
        }
    }
}

impl fmt::Display for FactorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Name of the nonabelian simple group of order `n` for the orders below
/// 20160, where the order determines the group; `Simple(n)` otherwise.
pub fn simple_name(n: usize) -> String {
    let name = match n {
        60 => "A5",
        168 => "PSL(2,7)",
        360 => "A6",
        504 => "PSL(2,8)",
        660 => "PSL(2,11)",
        1092 => "PSL(2,13)",
        2448 => "PSL(2,17)",
        2520 => "A7",
        3420 => "PSL(2,19)",
        4080 => "PSL(2,16)",
        5616 => "PSL(3,3)",
        6048 => "PSU(3,3)",
        6072 => "PSL(2,23)",
        7800 => "PSL(2,25)",
        7920 => "M11",
        _ => return format!("Simple({n})"),
    };
    name.into()
}

/// A descending chain of subgroups of one parent group.
#[derive(Clone, Debug)]
pub struct SeriesReport {
    pub terms: Vec<Subgroup>,
    /// `factors[i]` describes `terms[i] / terms[i + 1]`.
    pub factors: Vec<FactorDescriptor>,
    /// Number of strict steps.
    pub length: usize,
    /// Whether the last term is trivial.
    pub terminates: bool,
}

impl SeriesReport {
    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.order()).collect()
    }
}

/// Pieces of `D(G)` for a group `G`.
#[derive(Clone, Debug)]
pub(crate) struct DParts {
    pub derived: Subgroup,
    /// Maximal normal subgroups with nonabelian quotient.
    pub kernels: Vec<Subgroup>,
    pub d0: Subgroup,
    pub d: Subgroup,
}

pub(crate) fn d_parts(g: &Group) -> Result<DParts> {
    let derived = commutator_subgroup(g);
    if g.is_trivial() || derived_terms(g).last().expect("nonempty").is_trivial() {
        return Ok(DParts { d: derived.clone(), derived, kernels: vec![], d0: g.whole() });
    }
    let kernels = nonabelian_maximals(g)?;
    let d0 = intersect_all(g, &kernels).with_flag(Some(true));
    let d = d0.intersect(&derived).with_flag(Some(true));
    Ok(DParts { derived, kernels, d0, d })
}

/// Intersection of the maximal normal subgroups `N` with `G/N` nonabelian;
/// `G` when there are none.
pub fn d0_subgroup(g: &Group) -> Result<Subgroup> {
    Ok(d_parts(g)?.d0)
}

/// `D(G) = D0(G) ∩ G'`.
pub fn generalized_derived_subgroup(g: &Group) -> Result<Subgroup> {
    Ok(d_parts(g)?.d)
}

fn descriptor(g: &Group, parts: &DParts) -> FactorDescriptor {
    let mut simple_orders: Vec<usize> = parts.kernels.iter().map(|k| k.index()).collect();
    simple_orders.sort_unstable();
    FactorDescriptor {
        order: g.order() / parts.d.order(),
        abelian_invariants: quotient_invariants(&g.whole(), &parts.derived),
        simple_orders,
    }
}

fn materialize(t: &Subgroup) -> (Group, Homomorphism) {
    if t.is_whole() {
        (t.parent().clone(), Homomorphism::identity(t.parent()))
    } else {
        t.to_group()
    }
}

fn series_steps(g: &Group, limit: usize) -> Result<(Vec<Subgroup>, Vec<FactorDescriptor>)> {
    let mut terms = vec![g.whole()];
    let mut factors = Vec::new();
    while factors.len() < limit {
        let cur = terms.last().expect("nonempty").clone();
        if cur.is_trivial() {
            break;
        }
        let (h, emb) = materialize(&cur);
        let parts = d_parts(&h)?;
        factors.push(descriptor(&h, &parts));
        let next = emb.image_of(&parts.d).verified();
        if next.order() == cur.order() {
            let i = terms.len() - 1;
            return Err(Error::PropositionViolated(format!("D(G^({i})) = G^({i}) for a nontrivial term")));
        }
        terms.push(next);
    }
    Ok((terms, factors))
}

/// `G = G^(0) >= G^(1) = D(G) >= G^(2) = D(G^(1)) >= ... >= 1`, as subgroups
/// of `G`. `length` is `l(G)`.
pub fn generalized_derived_series(g: &Group) -> Result<SeriesReport> {
    let (terms, factors) = series_steps(g, usize::MAX)?;
    Ok(SeriesReport { length: factors.len(), terms, factors, terminates: true })
}

/// `G^(i)`, computing only the first `i` steps. Trivial once `i >= l(G)`.
pub fn generalized_derived_term(g: &Group, i: usize) -> Result<Subgroup> {
    let (mut terms, _) = series_steps(g, i)?;
    Ok(terms.pop().expect("nonempty"))
}

/// `l(G)`: the least `l` with `G^(l) = 1`.
pub fn abelian_simple_length(g: &Group) -> Result<usize> {
    Ok(generalized_derived_series(g)?.length)
}

/// Why a refined factor is abelian or semisimple.
#[derive(Clone, Debug)]
pub enum Witness {
    /// Commutators of the upper generators lie in the lower term.
    Abelian { invariants: Vec<usize> },
    /// Normal subgroups `K_j` of the upper term with simple nonabelian
    /// quotients, intersecting in the lower term, with the product of the
    /// indices equal to the factor order. The upper term then embeds into
    /// `prod upper/K_j` with full image.
    Semisimple { kernels: Vec<Subgroup>, simple_orders: Vec<usize> },
}

/// The generalized derived series refined through `D0`: each step
/// `G_i >= D0(G_i) >= D(G_i)` contributes a semisimple factor and an
/// abelian factor, trivial ones omitted.
#[derive(Clone, Debug)]
pub struct SubnormalCertificate {
    pub series: SeriesReport,
    pub witnesses: Vec<Witness>,
}

impl SubnormalCertificate {
    /// Re-checks every witness from scratch.
    pub fn check(&self) -> bool {
        let terms = &self.series.terms;
        self.witnesses.iter().enumerate().all(|(i, w)| {
            let (upper, lower) = (&terms[i], &terms[i + 1]);
            lower.is_subset_of(upper) && normalizes(upper, lower) && check_witness(upper, lower, w)
        })
    }
}

fn normalizes(upper: &Subgroup, lower: &Subgroup) -> bool {
    let g = upper.parent();
    lower.generators().iter().all(|&s| upper.generators().iter().all(|&t| lower.contains(g.conj(s, t))))
}

fn check_witness(upper: &Subgroup, lower: &Subgroup, w: &Witness) -> bool {
    let g = upper.parent();
    let index = upper.order() / lower.order();
    match w {
        Witness::Abelian { invariants } => {
            let gens = upper.generators();
            gens.iter().all(|&a| gens.iter().all(|&b| lower.contains(g.commutator(a, b))))
                && invariants.iter().product::<usize>() == index
                && *invariants == quotient_invariants(upper, lower)
        }
        Witness::Semisimple { kernels, simple_orders } => {
            let (h, _) = materialize(upper);
            let meet = kernels.iter().fold(upper.clone(), |acc, k| acc.intersect(k));
            meet == *lower
                && simple_orders.iter().product::<usize>() == index
                && kernels.iter().zip(simple_orders).all(|(k, &o)| {
                    if !k.is_subset_of(upper) || !normalizes(upper, k) || upper.order() / k.order() != o {
                        return false;
                    }
                    let kk = if upper.is_whole() { k.clone() } else { upper.restrict(k).verified() };
                    match quotient(&h, &kk) {
                        Ok((q, _)) => !q.is_abelian() && is_simple(&q).unwrap_or(false),
                        Err(_) => false,
                    }
                })
        }
    }
}

pub fn subnormal_certificate(g: &Group) -> Result<SubnormalCertificate> {
    let mut terms = vec![g.whole()];
    let mut factors = Vec::new();
    let mut witnesses = Vec::new();
    loop {
        let cur = terms.last().expect("nonempty").clone();
        if cur.is_trivial() {
            break;
        }
        let (h, emb) = materialize(&cur);
        let parts = d_parts(&h)?;
        if !parts.kernels.is_empty() {
            let kernels: Vec<Subgroup> = parts.kernels.iter().map(|k| emb.image_of(k)).collect();
            let mut pairs: Vec<(usize, Subgroup)> = kernels.into_iter().map(|k| (cur.order() / k.order(), k)).collect();
            pairs.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.members().cmp(b.1.members())));
            let simple_orders: Vec<usize> = pairs.iter().map(|p| p.0).collect();
            let d0 = emb.image_of(&parts.d0);
            factors.push(FactorDescriptor {
                order: cur.order() / d0.order(),
                abelian_invariants: vec![],
                simple_orders: simple_orders.clone(),
            });
            witnesses.push(Witness::Semisimple { kernels: pairs.into_iter().map(|p| p.1).collect(), simple_orders });
            terms.push(d0);
        }
        let upper = terms.last().expect("nonempty").clone();
        let d = emb.image_of(&parts.d);
        if d.order() < upper.order() {
            let desc = FactorDescriptor::abelian_step(&upper, &d)?;
            witnesses.push(Witness::Abelian { invariants: desc.abelian_invariants.clone() });
            factors.push(desc);
            terms.push(d);
        }
    }
    let length = factors.len();
    Ok(SubnormalCertificate { series: SeriesReport { terms, factors, length, terminates: true }, witnesses })
}

/// `G/D(G) ≅ (G/G') x (G/D0(G))`: the abelian part and the semisimple part.
#[derive(Clone, Debug)]
pub struct FactorStructure {
    pub descriptor: FactorDescriptor,
    pub d: Subgroup,
    pub d0: Subgroup,
    pub derived: Subgroup,
}

/// Decomposes `G/D(G)` and verifies the internal direct product
/// `G/D = (D0/D) x (G'/D)`: the two factors are normal, meet in `D` and
/// together generate `G`; `D0/D ≅ G/G'` is abelian and
/// `G'/D ≅ G/D0` is the product of the nonabelian simple quotients.
pub fn factor_structure(g: &Group) -> Result<FactorStructure> {
    let parts = d_parts(g)?;
    let descriptor = descriptor(g, &parts);
    let fail = |msg: &str| Err(Error::DecompositionFailed(msg.into()));
    if parts.d0.order() * parts.derived.order() != g.order() * parts.d.order() {
        return fail("D0 and G' do not generate G");
    }
    if descriptor.simple_orders.iter().product::<usize>() != parts.d0.index() {
        return fail("G/D0 is not the product of its simple quotients");
    }
    if descriptor.abelian_invariants.iter().product::<usize>() != parts.derived.index() {
        return fail("abelian invariants do not multiply to |G/G'|");
    }
    Ok(FactorStructure { descriptor, d: parts.d, d0: parts.d0, derived: parts.derived })
}

/// Invariant factors of an abelian group, ascending.
pub fn abelian_invariants(g: &Group) -> Result<Vec<usize>> {
    if !g.is_abelian() {
        return Err(Error::InvalidInput(format!("{} is not abelian", g.name())));
    }
    Ok(quotient_invariants(&g.whole(), &g.trivial_subgroup()))
}

/// Invariant factors of the abelian quotient `upper / lower`, read off from
/// the number of cosets killed by each prime power: for a prime `p`, the
/// count for `p^k` over the count for `p^(k-1)` is `p^r` where `r` is the
/// number of cyclic `p`-factors of exponent at least `k`.
pub(crate) fn quotient_invariants(upper: &Subgroup, lower: &Subgroup) -> Vec<usize> {
    let g = upper.parent();
    let n = upper.order() / lower.order();
    let count = |e: u64| upper.members().iter().filter(|&&x| lower.contains(g.pow(x, e))).count() / lower.order();
    let mut per_prime: Vec<(usize, Vec<u32>)> = Vec::new();
    let mut rest = n;
    for p in 2..=n {
        if rest == 1 {
            break;
        }
        if rest % p != 0 || !is_prime(p as u32) {
            continue;
        }
        let mut ppart = 1;
        while rest % p == 0 {
            rest /= p;
            ppart *= p;
        }
        // ranks[k-1] = number of p-factors with exponent >= k
        let mut ranks = Vec::new();
        let (mut prev, mut q) = (1usize, p as u64);
        loop {
            let c = count(q);
            let mut ratio = c / prev;
            let mut r = 0;
            while ratio > 1 {
                ratio /= p;
                r += 1;
            }
            ranks.push(r);
            prev = c;
            if c == ppart {
                break;
            }
            q *= p as u64;
        }
        // exponent of the j-th largest factor = #{k : ranks[k] > j}
        let top = ranks[0];
        let exps: Vec<u32> = (0..top).map(|j| ranks.iter().filter(|&&r| r > j).count() as u32).collect();
        per_prime.push((p, exps));
    }
    let width = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    // largest invariant factor takes the largest exponent of every prime
    let mut out: Vec<usize> = (0..width)
        .map(|j| per_prime.iter().map(|(p, e)| e.get(j).map_or(1, |&x| p.pow(x))).product())
        .collect();
    out.reverse();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::construct::direct_product;

    fn prod(a: &Group, b: &Group) -> Group {
        direct_product(a, b).unwrap().group
    }

    #[test]
    fn d0_examples() {
        let s4 = catalog::symmetric(4).unwrap();
        assert!(d0_subgroup(&s4).unwrap().is_whole());
        let c6 = catalog::cyclic(6).unwrap();
        assert!(d0_subgroup(&c6).unwrap().is_whole());
        let a5 = catalog::alternating(5).unwrap();
        assert!(d0_subgroup(&prod(&a5, &a5)).unwrap().is_trivial());
        assert!(d0_subgroup(&Group::trivial()).unwrap().is_whole());
    }

    #[test]
    fn d_examples() {
        assert_eq!(generalized_derived_subgroup(&catalog::symmetric(3).unwrap()).unwrap().order(), 3);
        assert_eq!(generalized_derived_subgroup(&catalog::symmetric(4).unwrap()).unwrap().order(), 12);
        assert!(generalized_derived_subgroup(&catalog::alternating(5).unwrap()).unwrap().is_trivial());
        assert_eq!(generalized_derived_subgroup(&catalog::symmetric(5).unwrap()).unwrap().order(), 60);
    }

    #[test]
    fn series_examples() {
        let r = generalized_derived_series(&catalog::symmetric(4).unwrap()).unwrap();
        assert_eq!(r.orders(), vec![24, 12, 4, 1]);
        assert!(r.terms.iter().all(|t| t.normal_flag() == Some(true)));
        let r = generalized_derived_series(&Group::trivial()).unwrap();
        assert_eq!((r.orders(), r.length), (vec![1], 0));
        let r = generalized_derived_series(&catalog::dihedral(4).unwrap()).unwrap();
        assert_eq!((r.orders(), r.length), (vec![8, 2, 1], 2));
        let r = generalized_derived_series(&catalog::symmetric(3).unwrap()).unwrap();
        let labels: Vec<String> = r.factors.iter().map(|f| f.label()).collect();
        assert_eq!(labels, vec!["C2", "C3"]);
    }

    #[test]
    fn lengths() {
        assert_eq!(abelian_simple_length(&Group::trivial()).unwrap(), 0);
        assert_eq!(abelian_simple_length(&catalog::symmetric(4).unwrap()).unwrap(), 3);
        assert_eq!(abelian_simple_length(&catalog::symmetric(5).unwrap()).unwrap(), 2);
        assert_eq!(abelian_simple_length(&catalog::sl(2, 3).unwrap()).unwrap(), 3);
        let r = generalized_derived_series(&catalog::sl(2, 3).unwrap()).unwrap();
        assert_eq!(r.orders(), vec![24, 8, 2, 1]);
    }

    #[test]
    fn certificates() {
        let c = subnormal_certificate(&catalog::symmetric(4).unwrap()).unwrap();
        let labels: Vec<String> = c.series.factors.iter().map(|f| f.label()).collect();
        assert_eq!(labels, vec!["C2", "C3", "C2 x C2"]);
        assert!(c.check());

        let c = subnormal_certificate(&catalog::alternating(5).unwrap()).unwrap();
        assert_eq!(c.series.factors.len(), 1);
        assert_eq!(c.series.factors[0].kind(), FactorKind::Semisimple);
        assert!(c.check());

        let g = prod(&catalog::alternating(5).unwrap(), &catalog::cyclic(2).unwrap());
        let c = subnormal_certificate(&g).unwrap();
        let kinds: Vec<FactorKind> = c.series.factors.iter().map(|f| f.kind()).collect();
        assert_eq!(kinds, vec![FactorKind::Semisimple, FactorKind::Abelian]);
        assert_eq!(c.series.orders(), vec![120, 2, 1]);
        assert!(c.check());
    }

    #[test]
    fn tampered_certificate_fails() {
        let mut c = subnormal_certificate(&catalog::symmetric(4).unwrap()).unwrap();
        c.witnesses[0] = Witness::Abelian { invariants: vec![3] };
        assert!(!c.check());
    }

    #[test]
    fn factor_structures() {
        let f = factor_structure(&catalog::symmetric(3).unwrap()).unwrap();
        assert_eq!(f.descriptor.abelian_invariants, vec![2]);
        assert!(f.descriptor.simple_orders.is_empty());

        let g = prod(&catalog::alternating(5).unwrap(), &catalog::cyclic(6).unwrap());
        let f = factor_structure(&g).unwrap();
        assert!(f.d.is_trivial());
        assert_eq!(f.descriptor.abelian_invariants, vec![6]);
        assert_eq!(f.descriptor.simple_orders, vec![60]);
        assert_eq!(f.descriptor.label(), "C6 x A5");

        let v = catalog::klein_four().unwrap();
        let f = factor_structure(&v).unwrap();
        assert_eq!(f.descriptor.abelian_invariants, vec![2, 2]);
    }

    #[test]
    fn invariants() {
        let c = |n| catalog::cyclic(n).unwrap();
        assert_eq!(abelian_invariants(&c(1)).unwrap(), Vec::<usize>::new());
        assert_eq!(abelian_invariants(&c(12)).unwrap(), vec![12]);
        assert_eq!(abelian_invariants(&prod(&c(2), &c(6))).unwrap(), vec![2, 6]);
        assert_eq!(abelian_invariants(&prod(&c(4), &c(6))).unwrap(), vec![2, 12]);
        assert_eq!(abelian_invariants(&prod(&prod(&c(2), &c(2)), &c(8))).unwrap(), vec![2, 2, 8]);
        assert!(abelian_invariants(&catalog::symmetric(3).unwrap()).is_err());
    }
}
