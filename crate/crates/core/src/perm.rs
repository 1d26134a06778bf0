//! Permutations in disjoint-cycle notation on `{1..degree}`.
//!
//! Internally permutations are image vectors on `{0..degree}`. Products are
//! read left to right: `(pq)(x) = q(p(x))`, so the group acts on the right.

use crate::error::{Error, Result};
use crate::group::{Caps, Group};
use crate::keys::{self, KeyKind};

/// Parses a product of cycles such as `(1 2 3)(4 5)`; `()` is the identity.
/// Points within one cycle must be distinct; cycles are multiplied left to
/// right.
pub fn parse_cycles(degree: usize, text: &str) -> Result<Vec<u32>> {
    let mut perm: Vec<u32> = (0..degree as u32).collect();
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::MalformedCycle("empty permutation".into()));
    }
    let mut rest = t;
    while !rest.is_empty() {
        let body_start = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::MalformedCycle(format!("expected '(' in {text:?}")))?;
        let close = body_start
            .find(')')
            .ok_or_else(|| Error::MalformedCycle(format!("unclosed cycle in {text:?}")))?;
        let body = &body_start[..close];
        rest = body_start[close + 1..].trim_start();
        let mut points = Vec::new();
        for tok in body.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()) {
            let p: usize = tok
                .parse()
                .map_err(|_| Error::MalformedCycle(format!("bad point {tok:?} in {text:?}")))?;
            if p == 0 || p > degree {
                return Err(Error::MalformedCycle(format!("point {p} outside 1..{degree}")));
            }
            if points.contains(&(p - 1)) {
                return Err(Error::MalformedCycle(format!("repeated point {p} in {text:?}")));
            }
            points.push(p - 1);
        }
        if points.len() > 1 {
            let mut cyc: Vec<u32> = (0..degree as u32).collect();
            for i in 0..points.len() {
                cyc[points[i]] = points[(i + 1) % points.len()] as u32;
            }
            perm = perm.iter().map(|&x| cyc[x as usize]).collect();
        }
    }
    Ok(perm)
}

/// Disjoint-cycle notation, 1-based, smallest point first; `()` for the
/// identity.
pub fn to_cycles(perm: &[u32]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] as usize == start {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cyc.push((x + 1).to_string());
            x = perm[x] as usize;
        }
        out.push('(');
        out.push_str(&cyc.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// The permutation group on `{1..degree}` generated by the given cycle
/// words. Elements are ordered identity first, then breadth-first.
pub fn group_from_perm_generators(degree: usize, generators: &[&str], caps: Caps) -> Result<Group> {
    let gens: Vec<Box<[u32]>> = generators
        .iter()
        .map(|g| parse_cycles(degree, g).map(Vec::into_boxed_slice))
        .collect::<Result<_>>()?;
    let name = format!("perm({degree}; {})", generators.join(", "));
    keys::close(&name, KeyKind::Perm { degree }, &gens, caps)
}

/// Same as [`group_from_perm_generators`] with image vectors (0-based).
pub fn group_from_images(name: &str, degree: usize, gens: &[Vec<u32>], caps: Caps) -> Result<Group> {
    let gens: Vec<Box<[u32]>> = gens.iter().map(|g| g.clone().into_boxed_slice()).collect();
    for g in &gens {
        let mut seen = vec![false; degree];
        if g.len() != degree || g.iter().any(|&x| x as usize >= degree || std::mem::replace(&mut seen[x as usize], true)) {
            return Err(Error::MalformedCycle("image vector is not a permutation".into()));
        }
    }
    keys::close(name, KeyKind::Perm { degree }, &gens, caps)
}

/// Parity of a permutation given by its image vector.
pub fn is_odd(perm: &[u32]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for start in 0..perm.len() {
        let mut x = start;
        let mut len = 0;
        while !seen[x] {
            seen[x] = true;
            x = perm[x] as usize;
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 1
}

/// Permutation images of an element of a permutation group.
pub fn images(g: &Group, x: u32) -> Option<&[u32]> {
    let store = g.key_store()?;
    match store.kind {
        KeyKind::Perm { .. } => Some(store.key(x)),
        _ => None,
    }
}

/// Degree of a permutation group.
pub fn degree(g: &Group) -> Option<usize> {
    match g.key_store()?.kind {
        KeyKind::Perm { degree } => Some(degree),
        _ => None,
    }
}
