//! Brute-force reference implementations, used only to cross-check the
//! lattice and series code. Exponential in the number of classes.

use crate::construct::quotient;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::subgroup::Subgroup;

fn check(g: &Group) -> Result<()> {
    let (classes, limit) = (g.class_count(), g.caps().oracle_classes);
    if classes > limit {
        return Err(Error::TooManyClasses { classes, limit });
    }
    Ok(())
}

/// Every union of classes containing the identity whose size divides `|G|`
/// and which is closed under multiplication. Sorted by (order, members).
pub fn oracle_normal_subgroups(g: &Group) -> Result<Vec<Subgroup>> {
    check(g)?;
    let classes = g.conjugacy_classes();
    let k = classes.len() - 1;
    let mut out = Vec::new();
    let mut mask = vec![false; g.order()];
    for subset in 0u32..(1 << k) {
        let size: usize = 1 + (0..k).filter(|&i| subset >> i & 1 == 1).map(|i| classes[i + 1].len()).sum::<usize>();
        if g.order() % size != 0 {
            continue;
        }
        let mut members = vec![0u32];
        for i in (0..k).filter(|&i| subset >> i & 1 == 1) {
            members.extend_from_slice(&classes[i + 1]);
        }
        for &x in &members {
            mask[x as usize] = true;
        }
        let closed = members.iter().all(|&x| members.iter().all(|&y| mask[g.mul(x, y) as usize]));
        for &x in &members {
            mask[x as usize] = false;
        }
        if closed {
            out.push(Subgroup::from_members(g, &members)?.with_flag(Some(true)));
        }
    }
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members().cmp(b.members())));
    Ok(out)
}

fn commutes_pairwise(q: &Group) -> bool {
    q.elements().all(|x| q.elements().all(|y| q.mul(x, y) == q.mul(y, x)))
}

/// Intersection of the normal `N` whose explicitly built quotient is
/// abelian (all pairs commute) or simple (exactly two normal subgroups).
pub fn oracle_d(g: &Group) -> Result<Subgroup> {
    let mut acc: Vec<u32> = g.elements().collect();
    for n in oracle_normal_subgroups(g)? {
        let (q, _) = quotient(g, &n)?;
        let qualifies = commutes_pairwise(&q) || oracle_normal_subgroups(&q)?.len() == 2;
        if qualifies {
            acc.retain(|&x| n.contains(x));
        }
    }
    Ok(Subgroup::from_members(g, &acc)?.with_flag(Some(true)))
}

/// Number of `oracle_d` steps down to the trivial group.
pub fn oracle_length(g: &Group) -> Result<usize> {
    let mut cur = g.clone();
    let mut steps = 0;
    while !cur.is_trivial() {
        let d = oracle_d(&cur)?;
        if d.order() == cur.order() {
            return Err(Error::PropositionViolated("oracle D(G) = G for nontrivial G".into()));
        }
        cur = if d.is_trivial() { Group::trivial() } else { d.to_group().0 };
        steps += 1;
    }
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn normal_counts() {
        assert_eq!(oracle_normal_subgroups(&catalog::symmetric(4).unwrap()).unwrap().len(), 4);
        let q8: Vec<usize> = oracle_normal_subgroups(&catalog::quaternion().unwrap()).unwrap().iter().map(|n| n.order()).collect();
        assert_eq!(q8, vec![1, 2, 4, 4, 4, 8]);
        assert_eq!(oracle_normal_subgroups(&catalog::alternating(5).unwrap()).unwrap().len(), 2);
    }

    #[test]
    fn oracle_d_examples() {
        assert_eq!(oracle_d(&catalog::symmetric(3).unwrap()).unwrap().order(), 3);
        assert!(oracle_d(&catalog::cyclic(12).unwrap()).unwrap().is_trivial());
        assert_eq!(oracle_d(&catalog::symmetric(4).unwrap()).unwrap().order(), 12);
    }

    #[test]
    fn oracle_lengths() {
        assert_eq!(oracle_length(&Group::trivial()).unwrap(), 0);
        assert_eq!(oracle_length(&catalog::symmetric(4).unwrap()).unwrap(), 3);
        assert_eq!(oracle_length(&catalog::dihedral(4).unwrap()).unwrap(), 2);
    }

    #[test]
    fn class_cap() {
        let g = catalog::cyclic(17).unwrap();
        assert!(matches!(oracle_normal_subgroups(&g), Err(Error::TooManyClasses { classes: 17, limit: 16 })));
    }
}
