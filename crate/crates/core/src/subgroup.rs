use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::group::{Closure, Group, Repr};
use crate::hom::Homomorphism;

/// A subgroup of a parent group, stored as a sorted index set.
#[derive(Clone)]
pub struct Subgroup {
    parent: Group,
    members: Arc<Vec<u32>>,
    generators: Vec<u32>,
    normal: Option<bool>,
    materialized: Arc<OnceLock<(Group, Homomorphism)>>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("parent", &self.parent.name())
            .field("order", &self.order())
            .field("normal", &self.normal)
            .finish()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub(crate) fn from_parts(
        parent: Group,
        members: Arc<Vec<u32>>,
        generators: Vec<u32>,
        normal: Option<bool>,
    ) -> Subgroup {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(members.first(), Some(&0));
        Subgroup { parent, members, generators, normal, materialized: Arc::new(OnceLock::new()) }
    }

    /// Checked constructor from an arbitrary element set.
    pub fn from_members(parent: &Group, members: &[u32]) -> Result<Subgroup> {
        let mut m = members.to_vec();
        m.sort_unstable();
        m.dedup();
        if m.first() != Some(&0) {
            return Err(Error::InvalidInput("subgroup must contain the identity".into()));
        }
        if m.iter().any(|&x| x as usize >= parent.order()) {
            return Err(Error::InvalidInput("subgroup member out of range".into()));
        }
        let s = parent.generate(&parent.small_generating_set(&m));
        if *s.members != m {
            return Err(Error::InvalidInput("element set is not closed under multiplication".into()));
        }
        Ok(s)
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn contains(&self, x: u32) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    /// Stored normality flag, if one has been established.
    pub fn normal_flag(&self) -> Option<bool> {
        self.normal
    }

    /// Checks normality in the parent: conjugates of the subgroup generators
    /// by the parent generators stay inside.
    pub fn is_normal(&self) -> bool {
        if let Some(b) = self.normal {
            return b;
        }
        self.compute_normal()
    }

    fn compute_normal(&self) -> bool {
        let g = &self.parent;
        self.generators
            .iter()
            .all(|&s| g.generators().iter().all(|&t| self.contains(g.conj(s, t))))
    }

    pub(crate) fn with_flag(mut self, normal: Option<bool>) -> Subgroup {
        self.normal = normal;
        self
    }

    /// Returns a copy with the normality flag computed and stored.
    pub fn verified(mut self) -> Subgroup {
        self.normal = Some(self.compute_normal());
        self
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.members.iter().all(|&x| other.contains(x))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.parent;
        let gens = &self.generators;
        gens.iter().all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let (a, b) = (&self.members, &other.members);
        let mut out = Vec::with_capacity(a.len().min(b.len()));
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        let gens = self.parent.small_generating_set(&out);
        let normal = match (self.normal, other.normal) {
            (Some(true), Some(true)) => Some(true),
            _ => None,
        };
        Subgroup::from_parts(self.parent.clone(), Arc::new(out), gens, normal)
    }

    /// Subgroup generated by both.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        if other.is_subset_of(self) {
            return self.clone();
        }
        if self.is_subset_of(other) {
            return other.clone();
        }
        let mut c = Closure::new(&self.parent);
        for &x in self.generators.iter().chain(other.generators.iter()) {
            c.add(x);
        }
        let normal = match (self.normal, other.normal) {
            (Some(true), Some(true)) => Some(true),
            _ => None,
        };
        c.into_subgroup(normal)
    }

    /// The subgroup as a group in its own right, with elements in increasing
    /// parent-index order, together with its embedding into the parent.
    pub fn to_group(&self) -> (Group, Homomorphism) {
        self.materialized
            .get_or_init(|| {
                let parent = self.parent.clone();
                let members = self.members.clone();
                let mut pos = vec![u32::MAX; parent.order()];
                for (i, &m) in members.iter().enumerate() {
                    pos[m as usize] = i as u32;
                }
                let inverses = members.iter().map(|&m| pos[parent.inv(m) as usize]).collect();
                let gens = self.generators.iter().map(|&x| pos[x as usize]).collect();
                let name = format!("sub({}, {})", parent.name(), members.len());
                let (p2, m2) = (parent.clone(), members.clone());
                let pos = Arc::new(pos);
                let group = Group::assemble(
                    name,
                    members.len(),
                    inverses,
                    gens,
                    move |a, b| pos[p2.mul(m2[a as usize], m2[b as usize]) as usize],
                    Repr::Sub { parent: parent.clone(), members: members.clone() },
                    parent.caps(),
                )
                .expect("a subgroup is never larger than its parent");
                let emb = Homomorphism::new_unchecked(group.clone(), parent, (*members).clone());
                (group, emb)
            })
            .clone()
    }

    /// Maps a subgroup of the materialized group back into the parent.
    pub fn lift(&self, inner: &Subgroup) -> Subgroup {
        let (_, emb) = self.to_group();
        emb.image_of(inner)
    }

    /// Re-expresses a subgroup of the parent contained in `self` as a
    /// subgroup of the materialized group.
    pub fn restrict(&self, sub: &Subgroup) -> Subgroup {
        let (g, _) = self.to_group();
        let mut out: Vec<u32> = sub
            .members()
            .iter()
            .map(|&x| self.members.binary_search(&x).expect("not contained") as u32)
            .collect();
        out.sort_unstable();
        let gens = sub
            .generators()
            .iter()
            .map(|&x| self.members.binary_search(&x).expect("not contained") as u32)
            .collect();
        Subgroup::from_parts(g, Arc::new(out), gens, None)
    }

    pub fn labels(&self) -> Vec<String> {
        self.members.iter().map(|&x| self.parent.label(x)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn intersection_and_join() {
        let s4 = catalog::symmetric(4).unwrap();
        let a = s4.generate(&[s4.find_label("(1 2)").unwrap()]);
        let b = s4.generate(&[s4.find_label("(3 4)").unwrap()]);
        assert_eq!(a.intersect(&b).order(), 1);
        assert_eq!(a.join(&b).order(), 4);
        assert!(!a.is_normal());
    }

    #[test]
    fn from_members_rejects_non_subgroup() {
        let s3 = catalog::symmetric(3).unwrap();
        let t = s3.find_label("(1 2)").unwrap();
        let u = s3.find_label("(1 3)").unwrap();
        assert!(Subgroup::from_members(&s3, &[0, t, u]).is_err());
        assert_eq!(Subgroup::from_members(&s3, &[0, t]).unwrap().order(), 2);
    }

    #[test]
    fn materialized_subgroup_is_a_group() {
        let s4 = catalog::symmetric(4).unwrap();
        let a4 = s4.generate(&[s4.find_label("(1 2 3)").unwrap(), s4.find_label("(2 3 4)").unwrap()]);
        let (g, emb) = a4.to_group();
        assert_eq!(g.order(), 12);
        g.check_axioms(3).unwrap();
        assert_eq!(emb.image().members(), a4.members());
        let back = a4.lift(&g.whole());
        assert_eq!(back, a4);
    }
}
