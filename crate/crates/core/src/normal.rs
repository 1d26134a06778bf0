//! Normal subgroup lattices, simplicity, the Melnikov subgroup and
//! decompositions inside `A x S_1 x ... x S_k`.

use std::collections::HashMap;

use crate::construct::direct_product;
use crate::derived::commutator_subgroup;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::subgroup::Subgroup;

/// Smallest normal subgroup of `g` containing `seed`.
pub fn normal_closure(g: &Group, seed: &[u32]) -> Subgroup {
    g.normal_closure(seed)
}

/// All normal subgroups of a group, sorted by (order, member set).
#[derive(Clone, Debug)]
pub struct NormalLattice {
    parent: Group,
    subgroups: Vec<Subgroup>,
    class_sets: Vec<u64>,
    inclusion: Vec<Vec<bool>>,
}

impl NormalLattice {
    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    /// `inclusion[i][j]` is true iff subgroup `i` is contained in subgroup `j`.
    pub fn inclusion(&self) -> &[Vec<bool>] {
        &self.inclusion
    }

    /// Conjugacy classes making up subgroup `i`, as a bit set.
    pub fn class_set(&self, i: usize) -> u64 {
        self.class_sets[i]
    }

    pub fn position(&self, n: &Subgroup) -> Option<usize> {
        self.subgroups.iter().position(|s| s == n)
    }

    /// Proper members maximal under inclusion.
    pub fn maximal(&self) -> Vec<Subgroup> {
        let top = self.subgroups.len() - 1;
        (0..top)
            .filter(|&i| (0..top).all(|j| j == i || !self.inclusion[i][j]))
            .map(|i| self.subgroups[i].clone())
            .collect()
    }

    /// Nontrivial members minimal under inclusion.
    pub fn minimal(&self) -> Vec<Subgroup> {
        (1..self.subgroups.len())
            .filter(|&i| (1..self.subgroups.len()).all(|j| j == i || !self.inclusion[j][i]))
            .map(|i| self.subgroups[i].clone())
            .collect()
    }

    /// Checks the lattice axioms: contains 1 and G, closed under pairwise
    /// intersection and join, and every member is a union of classes.
    /// Quadratic in the lattice size; meant for tests.
    pub fn verify(&self) -> bool {
        let g = &self.parent;
        let index: HashMap<u64, usize> = self.class_sets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        if !self.subgroups[0].is_trivial() || !self.subgroups.last().expect("nonempty").is_whole() {
            return false;
        }
        for (i, n) in self.subgroups.iter().enumerate() {
            let set = self.class_sets[i];
            let size: usize = (0..g.class_count())
                .filter(|&c| set >> c & 1 == 1)
                .map(|c| g.conjugacy_classes()[c].len())
                .sum();
            if size != n.order() || !n.is_normal() {
                return false;
            }
        }
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let (a, b) = (&self.subgroups[i], &self.subgroups[j]);
                let meet = class_set_of(a.intersect(b).members(), g);
                let join = class_set_of(a.join(b).members(), g);
                if !index.contains_key(&meet) || !index.contains_key(&join) {
                    return false;
                }
            }
        }
        true
    }
}

fn class_set_of(members: &[u32], g: &Group) -> u64 {
    let mut s = 0u64;
    for &x in members {
        s |= 1 << g.class_of(x);
    }
    s
}

fn check_classes(g: &Group, limit: usize) -> Result<()> {
    let classes = g.class_count();
    if classes > limit || classes > 64 {
        return Err(Error::TooManyClasses { classes, limit: limit.min(64) });
    }
    Ok(())
}

/// Every normal subgroup is a join of normal closures of single classes, so
/// the lattice is the join-closure of those closures.
pub fn all_normal_subgroups(g: &Group) -> Result<NormalLattice> {
    check_classes(g, g.caps().lattice_classes)?;
    let classes = g.conjugacy_classes();
    let mut found: HashMap<u64, Subgroup> = HashMap::new();
    let trivial = g.trivial_subgroup();
    found.insert(1, trivial);

    let mut atoms: Vec<(u64, Subgroup)> = Vec::new();
    for c in classes.iter().skip(1) {
        let n = g.normal_closure(&[c[0]]);
        let set = class_set_of(n.members(), g);
        if !atoms.iter().any(|(s, _)| *s == set) {
            atoms.push((set, n.clone()));
        }
        found.entry(set).or_insert(n);
    }
    let mut queue: Vec<u64> = atoms.iter().map(|(s, _)| *s).collect();
    while let Some(set) = queue.pop() {
        let n = found[&set].clone();
        for (aset, a) in &atoms {
            if aset & !set == 0 {
                continue;
            }
            let j = n.join(a).with_flag(Some(true));
            let jset = class_set_of(j.members(), g);
            if let std::collections::hash_map::Entry::Vacant(e) = found.entry(jset) {
                e.insert(j);
                queue.push(jset);
            }
        }
    }
    let mut entries: Vec<(u64, Subgroup)> = found.into_iter().collect();
    entries.sort_by(|a, b| a.1.order().cmp(&b.1.order()).then_with(|| a.1.members().cmp(b.1.members())));
    let class_sets: Vec<u64> = entries.iter().map(|e| e.0).collect();
    let subgroups: Vec<Subgroup> = entries.into_iter().map(|e| e.1.with_flag(Some(true))).collect();
    let inclusion = class_sets
        .iter()
        .map(|&a| class_sets.iter().map(|&b| a & !b == 0).collect())
        .collect();
    Ok(NormalLattice { parent: g.clone(), subgroups, class_sets, inclusion })
}

/// Proper normal subgroups maximal under inclusion.
pub fn maximal_normal_subgroups(g: &Group) -> Result<Vec<Subgroup>> {
    if g.is_trivial() {
        return Err(Error::TrivialGroup);
    }
    Ok(all_normal_subgroups(g)?.maximal())
}

/// True iff the normal closure of every nonidentity class is the whole group.
pub fn is_simple(g: &Group) -> Result<bool> {
    if g.is_trivial() {
        return Err(Error::TrivialGroup);
    }
    if g.is_abelian() {
        return Ok(crate::ring::is_prime(g.order() as u32));
    }
    Ok(g.conjugacy_classes()
        .iter()
        .skip(1)
        .all(|c| g.normal_closure(&[c[0]]).order() == g.order()))
}

/// Intersection of the maximal normal subgroups.
pub fn melnikov_subgroup(g: &Group) -> Result<Subgroup> {
    let maxes = maximal_normal_subgroups(g)?;
    Ok(intersect_all(g, &maxes))
}

/// Intersection of a family of subgroups of `g`; `g` itself for the empty
/// family.
pub(crate) fn intersect_all(g: &Group, family: &[Subgroup]) -> Subgroup {
    let mut acc = g.whole();
    for n in family {
        acc = acc.intersect(n);
    }
    acc
}

/// `A x S_1 x ... x S_k` with `A` abelian and each `S_i` nonabelian simple.
/// Elements are indexed in mixed radix `(a, s_1, ..., s_k)`.
#[derive(Clone, Debug)]
pub struct SimpleProduct {
    pub group: Group,
    pub abelian: Group,
    pub simples: Vec<Group>,
}

impl SimpleProduct {
    pub fn new(abelian: &Group, simples: &[Group]) -> Result<SimpleProduct> {
        if !abelian.is_abelian() {
            return Err(Error::InvalidInput(format!("{} is not abelian", abelian.name())));
        }
        for (i, s) in simples.iter().enumerate() {
            if s.is_trivial() || s.is_abelian() || !is_simple(s)? {
                return Err(Error::NotSimpleFactor(i));
            }
        }
        let mut group = abelian.clone();
        for s in simples {
            group = direct_product(&group, s)?.group;
        }
        Ok(SimpleProduct { group, abelian: abelian.clone(), simples: simples.to_vec() })
    }

    /// Product of the orders of the factors after position `i`, where
    /// position 0 is `A` and position `i + 1` is `S_i`.
    fn stride(&self, pos: usize) -> u32 {
        self.simples[pos..].iter().map(|s| s.order() as u32).product()
    }

    /// Image of `A` in the product.
    pub fn abelian_factor(&self) -> Subgroup {
        let st = self.stride(0);
        let gens: Vec<u32> = self.abelian.generators().iter().map(|&a| a * st).collect();
        self.group.generate(&gens).with_flag(Some(true))
    }

    /// Image of `S_i` in the product.
    pub fn simple_factor(&self, i: usize) -> Subgroup {
        let st = self.stride(i + 1);
        let gens: Vec<u32> = self.simples[i].generators().iter().map(|&a| a * st).collect();
        self.group.generate(&gens).with_flag(Some(true))
    }
}

/// Writes a normal subgroup `N` of `A x S_1 x ... x S_k` as
/// `(N ∩ A) x prod_{i in J} S_i`, returning `N ∩ A` and `J`.
pub fn product_normal_decomposition(prod: &SimpleProduct, n: &Subgroup) -> Result<(Subgroup, Vec<usize>)> {
    if !n.parent().same(&prod.group) {
        return Err(Error::InvalidInput("subgroup of a different group".into()));
    }
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let na = n.intersect(&prod.abelian_factor()).with_flag(Some(true));
    let mut j = Vec::new();
    let mut acc = na.clone();
    for i in 0..prod.simples.len() {
        let s = prod.simple_factor(i);
        if s.is_subset_of(n) {
            j.push(i);
            acc = acc.join(&s);
        }
    }
    if acc != *n {
        return Err(Error::DecompositionFailed(format!(
            "N has order {} but (N ∩ A) x S_J has order {}",
            n.order(),
            acc.order()
        )));
    }
    Ok((na, j))
}

/// Maximal normal subgroups with nonabelian (hence nonabelian simple)
/// quotient, i.e. those not containing `G'`.
pub(crate) fn nonabelian_maximals(g: &Group) -> Result<Vec<Subgroup>> {
    let derived = commutator_subgroup(g);
    Ok(maximal_normal_subgroups(g)?.into_iter().filter(|n| !derived.is_subset_of(n)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::construct::quotient;

    fn orders(v: &[Subgroup]) -> Vec<usize> {
        v.iter().map(|s| s.order()).collect()
    }

    #[test]
    fn closures() {
        let s4 = catalog::symmetric(4).unwrap();
        let t = s4.find_label("(1 2)").unwrap();
        let c = s4.find_label("(1 2 3)").unwrap();
        assert_eq!(normal_closure(&s4, &[t]).order(), 24);
        assert_eq!(normal_closure(&s4, &[c]).order(), 12);
        assert!(normal_closure(&s4, &[0]).is_trivial());
        assert_eq!(normal_closure(&s4, &[c]).normal_flag(), Some(true));
    }

    #[test]
    fn lattices() {
        let s4 = catalog::symmetric(4).unwrap();
        let l = all_normal_subgroups(&s4).unwrap();
        assert_eq!(orders(l.subgroups()), vec![1, 4, 12, 24]);
        assert!(l.verify());
        let c6 = catalog::cyclic(6).unwrap();
        let l = all_normal_subgroups(&c6).unwrap();
        assert_eq!(orders(l.subgroups()), vec![1, 2, 3, 6]);
        let a5 = catalog::alternating(5).unwrap();
        assert_eq!(all_normal_subgroups(&a5).unwrap().len(), 2);
        let q8 = catalog::quaternion().unwrap();
        let l = all_normal_subgroups(&q8).unwrap();
        assert_eq!(orders(l.subgroups()), vec![1, 2, 4, 4, 4, 8]);
        assert!(l.verify());
    }

    #[test]
    fn too_many_classes() {
        let g = catalog::cyclic(30).unwrap();
        let caps = crate::group::Caps { lattice_classes: 16, ..g.caps() };
        let g = catalog::cyclic_with(30, caps).unwrap();
        assert!(matches!(all_normal_subgroups(&g), Err(Error::TooManyClasses { classes: 30, .. })));
    }

    #[test]
    fn maximal_normals() {
        let s4 = catalog::symmetric(4).unwrap();
        assert_eq!(orders(&maximal_normal_subgroups(&s4).unwrap()), vec![12]);
        let c6 = catalog::cyclic(6).unwrap();
        assert_eq!(orders(&maximal_normal_subgroups(&c6).unwrap()), vec![2, 3]);
        let a5 = catalog::alternating(5).unwrap();
        assert_eq!(orders(&maximal_normal_subgroups(&a5).unwrap()), vec![1]);
        assert_eq!(maximal_normal_subgroups(&Group::trivial()).unwrap_err(), Error::TrivialGroup);
    }

    #[test]
    fn maximal_iff_simple_quotient() {
        for g in [catalog::symmetric(4).unwrap(), catalog::dihedral(6).unwrap(), catalog::gl(2, 3).unwrap()] {
            let l = all_normal_subgroups(&g).unwrap();
            let maxes = l.maximal();
            for n in l.subgroups().iter().filter(|n| !n.is_whole()) {
                let (q, _) = quotient(&g, n).unwrap();
                assert_eq!(is_simple(&q).unwrap(), maxes.contains(n), "{} / {}", g.name(), n.order());
            }
        }
    }

    #[test]
    fn simplicity() {
        assert!(is_simple(&catalog::alternating(5).unwrap()).unwrap());
        assert!(!is_simple(&catalog::cyclic(4).unwrap()).unwrap());
        assert!(is_simple(&catalog::cyclic(7).unwrap()).unwrap());
        assert!(!is_simple(&catalog::symmetric(5).unwrap()).unwrap());
        assert_eq!(is_simple(&Group::trivial()).unwrap_err(), Error::TrivialGroup);
    }

    #[test]
    fn melnikov() {
        assert_eq!(melnikov_subgroup(&catalog::symmetric(4).unwrap()).unwrap().order(), 12);
        assert!(melnikov_subgroup(&catalog::cyclic(6).unwrap()).unwrap().is_trivial());
        assert!(melnikov_subgroup(&catalog::alternating(5).unwrap()).unwrap().is_trivial());
        assert_eq!(melnikov_subgroup(&catalog::cyclic(4).unwrap()).unwrap().order(), 2);
    }

    #[test]
    fn decomposition_examples() {
        let a5 = catalog::alternating(5).unwrap();
        let c6 = catalog::cyclic(6).unwrap();
        let p = SimpleProduct::new(&c6, &[a5.clone()]).unwrap();
        // N = C3 x A5
        let c3 = p.group.generate(&[2 * 60]);
        let n = c3.join(&p.simple_factor(0)).verified();
        assert_eq!(n.order(), 180);
        let (na, j) = product_normal_decomposition(&p, &n).unwrap();
        assert_eq!((na.order(), j), (3, vec![0]));

        let (na, j) = product_normal_decomposition(&p, &p.group.trivial_subgroup()).unwrap();
        assert!(na.is_trivial() && j.is_empty());

        let p = SimpleProduct::new(&Group::trivial(), &[a5.clone(), a5.clone()]).unwrap();
        let n = p.simple_factor(1);
        let (na, j) = product_normal_decomposition(&p, &n).unwrap();
        assert!(na.is_trivial());
        assert_eq!(j, vec![1]);
    }

    #[test]
    fn decomposition_errors() {
        let s3 = catalog::symmetric(3).unwrap();
        assert_eq!(SimpleProduct::new(&Group::trivial(), &[s3]).unwrap_err(), Error::NotSimpleFactor(0));
        let a5 = catalog::alternating(5).unwrap();
        let c = a5.find_label("(1 2 3)").unwrap();
        let p = SimpleProduct::new(&Group::trivial(), &[a5]).unwrap();
        let h = p.group.generate(&[c]);
        assert_eq!(product_normal_decomposition(&p, &h).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn every_lattice_member_decomposes() {
        let a5 = catalog::alternating(5).unwrap();
        let p = SimpleProduct::new(&catalog::cyclic(2).unwrap(), &[a5]).unwrap();
        let l = all_normal_subgroups(&p.group).unwrap();
        assert_eq!(l.len(), 4);
        for n in l.subgroups() {
            let (na, j) = product_normal_decomposition(&p, n).unwrap();
            let expected: usize = na.order() * j.iter().map(|&i| p.simples[i].order()).product::<usize>();
            assert_eq!(expected, n.order());
        }
    }
}
