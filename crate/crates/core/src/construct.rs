//! Products and quotients.
//!
//! Semidirect products use right actions throughout:
//! `(n1, h1)(n2, h2) = (n1^h2 * n2, h1 h2)`, so conjugating `(n, 1)` by
//! `(1, h)` gives `(n^h, 1)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Group, Repr};
use crate::hom::Homomorphism;
use crate::subgroup::Subgroup;

/// `G x H` with its canonical embeddings and projections.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub group: Group,
    pub left: Group,
    pub right: Group,
}

impl DirectProduct {
    pub fn pair(&self, a: u32, b: u32) -> u32 {
        a * self.right.order() as u32 + b
    }

    pub fn embed_left(&self) -> Homomorphism {
        let map = self.left.elements().map(|a| self.pair(a, 0)).collect();
        Homomorphism::new_unchecked(self.left.clone(), self.group.clone(), map)
    }

    pub fn embed_right(&self) -> Homomorphism {
        let map = self.right.elements().map(|b| self.pair(0, b)).collect();
        Homomorphism::new_unchecked(self.right.clone(), self.group.clone(), map)
    }

    pub fn project_left(&self) -> Homomorphism {
        let r = self.right.order() as u32;
        let map = self.group.elements().map(|x| x / r).collect();
        Homomorphism::new_unchecked(self.group.clone(), self.left.clone(), map)
    }

    pub fn project_right(&self) -> Homomorphism {
        let r = self.right.order() as u32;
        let map = self.group.elements().map(|x| x % r).collect();
        Homomorphism::new_unchecked(self.group.clone(), self.right.clone(), map)
    }
}

fn product_order(a: usize, b: usize, cap: usize) -> Result<usize> {
    a.checked_mul(b).filter(|&n| n <= cap).ok_or_else(|| Error::cap("product order", cap))
}

pub fn direct_product(g: &Group, h: &Group) -> Result<DirectProduct> {
    let caps = g.caps();
    let order = product_order(g.order(), h.order(), caps.closure)?;
    let r = h.order() as u32;
    let inverses = (0..order as u32).map(|x| g.inv(x / r) * r + h.inv(x % r)).collect();
    let mut gens: Vec<u32> = g.generators().iter().map(|&a| a * r).collect();
    gens.extend(h.generators().iter().copied());
    let (g2, h2) = (g.clone(), h.clone());
    let group = Group::assemble(
        format!("{} x {}", g.name(), h.name()),
        order,
        inverses,
        gens,
        move |x, y| g2.mul(x / r, y / r) * r + h2.mul(x % r, y % r),
        Repr::Pair { left: g.clone(), right: h.clone(), explicit: None },
        caps,
    )?;
    Ok(DirectProduct { group, left: g.clone(), right: h.clone() })
}

/// Tabulates and validates a right action of `h` on `n` by automorphisms.
/// Returns the table indexed `h * |N| + n`.
pub(crate) fn action_table(
    n: &Group,
    h: &Group,
    act: impl Fn(u32, u32) -> u32,
) -> Result<Vec<u32>> {
    let nn = n.order();
    let mut table = Vec::with_capacity(nn * h.order());
    for y in h.elements() {
        let mut seen = vec![false; nn];
        for x in n.elements() {
            let v = act(x, y);
            if v as usize >= nn {
                return Err(Error::NotAnAction(format!("image of {x} under {y} out of range")));
            }
            if std::mem::replace(&mut seen[v as usize], true) {
                return Err(Error::NotAutomorphisms(format!("element {y} does not act bijectively")));
            }
            table.push(v);
        }
    }
    let at = |x: u32, y: u32| table[y as usize * nn + x as usize];
    for x in n.elements() {
        if at(x, 0) != x {
            return Err(Error::NotAnAction("identity does not act trivially".into()));
        }
    }
    // right action: (x^y)^s = x^(ys) for all y and generators s
    for y in h.elements() {
        for &s in h.generators() {
            let ys = h.mul(y, s);
            for x in n.elements() {
                if at(at(x, y), s) != at(x, ys) {
                    return Err(Error::NotAnAction(format!("(x^{y})^{s} != x^({y}*{s})")));
                }
            }
        }
    }
    for y in h.elements() {
        for x in n.elements() {
            for &t in n.generators() {
                if at(n.mul(x, t), y) != n.mul(at(x, y), at(t, y)) {
                    return Err(Error::NotAutomorphisms(format!("element {y} is not multiplicative")));
                }
            }
        }
    }
    Ok(table)
}

/// `N x| H` for a right action of `H` on `N` by automorphisms. Element
/// `(n, h)` has index `n * |H| + h`.
pub fn semidirect_product(
    n: &Group,
    h: &Group,
    act: impl Fn(u32, u32) -> u32,
) -> Result<Group> {
    let caps = n.caps();
    let order = product_order(n.order(), h.order(), caps.closure)?;
    let table = Arc::new(action_table(n, h, act)?);
    semidirect_from_table(n, h, table, format!("{} x| {}", n.name(), h.name()), order)
}

pub(crate) fn semidirect_from_table(
    n: &Group,
    h: &Group,
    table: Arc<Vec<u32>>,
    name: String,
    order: usize,
) -> Result<Group> {
    let nn = n.order() as u32;
    let r = h.order() as u32;
    let inverses = (0..order as u32)
        .map(|x| {
            let (a, b) = (x / r, x % r);
            let bi = h.inv(b);
            table[(bi * nn + n.inv(a)) as usize] * r + bi
        })
        .collect();
    let mut gens: Vec<u32> = n.generators().iter().map(|&a| a * r).collect();
    gens.extend(h.generators().iter().copied());
    let (n2, h2) = (n.clone(), h.clone());
    Group::assemble(
        name,
        order,
        inverses,
        gens,
        move |x, y| {
            let (a1, b1) = (x / r, x % r);
            let (a2, b2) = (y / r, y % r);
            let twisted = table[(b2 * nn + a1) as usize];
            n2.mul(twisted, a2) * r + h2.mul(b1, b2)
        },
        Repr::Pair { left: n.clone(), right: h.clone(), explicit: None },
        n.caps(),
    )
}

/// `G / N` with the coset map. Cosets are ordered by least member.
pub fn quotient(g: &Group, n: &Subgroup) -> Result<(Group, Homomorphism)> {
    if !n.parent().same(g) {
        return Err(Error::InvalidInput("subgroup of a different group".into()));
    }
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let mut coset_of = vec![u32::MAX; g.order()];
    let mut reps = Vec::with_capacity(g.order() / n.order());
    for x in g.elements() {
        if coset_of[x as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x);
        for &m in n.members() {
            coset_of[g.mul(x, m) as usize] = c;
        }
    }
    let order = reps.len();
    let inverses = reps.iter().map(|&r| coset_of[g.inv(r) as usize]).collect();
    let gens = g.generators().iter().map(|&x| coset_of[x as usize]).collect();
    let reps = Arc::new(reps);
    let coset_of = Arc::new(coset_of);
    let (g2, r2, c2) = (g.clone(), reps.clone(), coset_of.clone());
    let q = Group::assemble(
        format!("{} / N{}", g.name(), n.order()),
        order,
        inverses,
        gens,
        move |a, b| c2[g2.mul(r2[a as usize], r2[b as usize]) as usize],
        Repr::Coset { parent: g.clone(), reps },
        g.caps(),
    )?;
    let hom = Homomorphism::new_unchecked(g.clone(), q.clone(), (*coset_of).clone());
    Ok((q, hom))
}

/// `G x_K H` with its two projections.
#[derive(Clone, Debug)]
pub struct FiberProduct {
    pub group: Group,
    pub project_left: Homomorphism,
    pub project_right: Homomorphism,
}

/// `{(g, h) : alpha(g) = beta(h)}` ordered lexicographically.
pub fn fiber_product(alpha: &Homomorphism, beta: &Homomorphism) -> Result<FiberProduct> {
    if !alpha.target().same(beta.target()) {
        return Err(Error::InvalidInput("homomorphisms have different targets".into()));
    }
    if !alpha.is_surjective() || !beta.is_surjective() {
        return Err(Error::NotSurjective);
    }
    let (g, h, k) = (alpha.source().clone(), beta.source().clone(), alpha.target().clone());
    let caps = g.caps();
    let fibre = h.order() / k.order();
    let order = product_order(g.order(), fibre, caps.closure)?;
    let mut buckets: Vec<Vec<u32>> = vec![Vec::with_capacity(fibre); k.order()];
    let mut pos_in_bucket = vec![0u32; h.order()];
    for y in h.elements() {
        let b = &mut buckets[beta.apply(y) as usize];
        pos_in_bucket[y as usize] = b.len() as u32;
        b.push(y);
    }
    let mut pairs = Vec::with_capacity(order);
    for x in g.elements() {
        for &y in &buckets[alpha.apply(x) as usize] {
            pairs.push((x, y));
        }
    }
    let pairs = Arc::new(pairs);
    let fibre = fibre as u32;
    let index = {
        let pos = pos_in_bucket.clone();
        move |x: u32, y: u32| x * fibre + pos[y as usize]
    };
    let inverses = pairs.iter().map(|&(x, y)| index(g.inv(x), h.inv(y))).collect();
    let (g2, h2, p2) = (g.clone(), h.clone(), pairs.clone());
    let idx2 = index.clone();
    let group = Group::assemble(
        format!("{} x_{} {}", g.name(), k.name(), h.name()),
        order,
        inverses,
        vec![],
        move |a, b| {
            let (x1, y1) = p2[a as usize];
            let (x2, y2) = p2[b as usize];
            idx2(g2.mul(x1, x2), h2.mul(y1, y2))
        },
        Repr::Pair { left: g.clone(), right: h.clone(), explicit: Some(pairs.clone()) },
        caps,
    )?;
    let all: Vec<u32> = group.elements().collect();
    let group = group.with_generators(group.small_generating_set(&all));
    let left = pairs.iter().map(|p| p.0).collect();
    let right = pairs.iter().map(|p| p.1).collect();
    Ok(FiberProduct {
        project_left: Homomorphism::new_unchecked(group.clone(), g, left),
        project_right: Homomorphism::new_unchecked(group.clone(), h, right),
        group,
    })
}
