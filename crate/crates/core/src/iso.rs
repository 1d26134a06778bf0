//! Isomorphism testing by backtracking over generator images.
//!
//! Intended for small groups (order up to a few hundred); the search is
//! exponential in the number of generators in the worst case.

use crate::group::Group;
use crate::hom::Homomorphism;

/// Generating set chosen greedily from elements of largest order first.
fn greedy_generators(g: &Group) -> Vec<u32> {
    let mut elems: Vec<u32> = g.elements().collect();
    elems.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    g.small_generating_set(&elems)
}

/// Searches for an isomorphism `g -> h`, returned as the image of every
/// element of `g`.
pub fn find_isomorphism(g: &Group, h: &Group) -> Option<Vec<u32>> {
    if g.order() != h.order() || g.order_profile() != h.order_profile() {
        return None;
    }
    if g.is_abelian() != h.is_abelian() || g.class_count() != h.class_count() {
        return None;
    }
    let gens = greedy_generators(g);
    let h_orders: Vec<usize> = h.elements().map(|y| h.element_order(y)).collect();
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&x| {
            let o = g.element_order(x);
            h.elements().filter(|&y| h_orders[y as usize] == o).collect()
        })
        .collect();
    let mut imgs = Vec::with_capacity(gens.len());
    search(g, h, &gens, &candidates, &mut imgs)
}

fn search(
    g: &Group,
    h: &Group,
    gens: &[u32],
    candidates: &[Vec<u32>],
    imgs: &mut Vec<u32>,
) -> Option<Vec<u32>> {
    let depth = imgs.len();
    if depth == gens.len() {
        let map = extend(g, h, gens, imgs)?;
        return (map.len() == g.order() && !map.contains(&u32::MAX)).then_some(map);
    }
    for &c in &candidates[depth] {
        imgs.push(c);
        if extend(g, h, &gens[..=depth], imgs).is_some() {
            if let Some(m) = search(g, h, gens, candidates, imgs) {
                return Some(m);
            }
        }
        imgs.pop();
    }
    None
}

/// Extends generator images to the generated subgroup; `None` on any
/// inconsistency or collision.
fn extend(g: &Group, h: &Group, gens: &[u32], imgs: &[u32]) -> Option<Vec<u32>> {
    let mut map = vec![u32::MAX; g.order()];
    let mut used = vec![false; h.order()];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0u32];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (j, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            let v = h.mul(map[x as usize], imgs[j]);
            if map[y as usize] == u32::MAX {
                if used[v as usize] {
                    return None;
                }
                used[v as usize] = true;
                map[y as usize] = v;
                queue.push(y);
            } else if map[y as usize] != v {
                return None;
            }
        }
        i += 1;
    }
    Some(map)
}

pub fn is_isomorphic(g: &Group, h: &Group) -> bool {
    find_isomorphism(g, h).is_some()
}

/// The isomorphism as a checked [`Homomorphism`].
pub fn isomorphism(g: &Group, h: &Group) -> Option<Homomorphism> {
    let map = find_isomorphism(g, h)?;
    Homomorphism::new(g.clone(), h.clone(), map).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn distinguishes_order_eight() {
        let d4 = catalog::dihedral(4).unwrap();
        let q8 = catalog::quaternion().unwrap();
        let c8 = catalog::cyclic(8).unwrap();
        assert!(is_isomorphic(&d4, &d4));
        assert!(!is_isomorphic(&d4, &q8));
        assert!(!is_isomorphic(&q8, &c8));
    }

    #[test]
    fn gl22_is_s3() {
        let gl = catalog::gl(2, 2).unwrap();
        let s3 = catalog::symmetric(3).unwrap();
        let iso = isomorphism(&gl, &s3).unwrap();
        assert!(iso.is_surjective());
    }

    #[test]
    fn sl24_is_a5() {
        let sl = catalog::sl(2, 4).unwrap();
        assert!(is_isomorphic(&sl, &catalog::alternating(5).unwrap()));
    }
}
