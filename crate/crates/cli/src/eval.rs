//! Evaluation of parsed specs and element texts.

use std::sync::Arc;

use asl_core::construct::{direct_product, quotient};
use asl_core::matrix::{self, MatrixGroupSpec};
use asl_core::perm::{self, group_from_images};
use asl_core::ring::Ring;
use asl_core::{catalog, Caps, Error, Group, Result, Subgroup};

use crate::parse::{unparse, GroupSpec, RingSpec};

pub fn eval(spec: &GroupSpec, caps: Caps) -> Result<Group> {
    let g = match spec {
        GroupSpec::Trivial => Group::trivial(),
        GroupSpec::Cyclic(n) => catalog::cyclic_with(*n, caps)?,
        GroupSpec::Dihedral(n) => catalog::dihedral_with(*n, caps)?,
        GroupSpec::Quaternion => catalog::quaternion_with(caps)?,
        GroupSpec::Klein => catalog::klein_four_with(caps)?,
        GroupSpec::Symmetric(n) => catalog::symmetric_with(*n, caps)?,
        GroupSpec::Alternating(n) => catalog::alternating_with(*n, caps)?,
        GroupSpec::Gl { n, q } => matrix::gl(*n, *q, caps)?,
        GroupSpec::Sl { n, q } => matrix::sl(*n, *q, caps)?,
        GroupSpec::Unitriangular { n, p } => matrix::unitriangular(*n, *p, caps)?,
        GroupSpec::Glz { n, ell, k } => matrix::gl_residue(*n, *ell, *k, caps)?,
        GroupSpec::Perm { degree, generators } => group_from_images(&unparse(spec), *degree, generators, caps)?,
        GroupSpec::Mat { ring, matrices } => {
            let ring = Arc::new(ring_of(ring)?);
            let n = matrices[0].len();
            let generators = matrices
                .iter()
                .map(|m| m.iter().flatten().map(|&x| ring.reduce_int(x)).collect::<Result<Vec<u32>>>())
                .collect::<Result<Vec<_>>>()?;
            matrix::matrix_group(&MatrixGroupSpec { name: unparse(spec), n, ring, generators }, caps)?
        }
        GroupSpec::Product(a, b) => direct_product(&eval(a, caps)?, &eval(b, caps)?)?.group,
        GroupSpec::Quotient(inner, elems) => {
            let g = eval(inner, caps)?;
            let seed = elements(&g, elems)?;
            let n = g.normal_closure(&seed);
            quotient(&g, &n)?.0
        }
    };
    Ok(g.renamed(unparse(spec)))
}

fn ring_of(ring: &RingSpec) -> Result<Ring> {
    match *ring {
        RingSpec::Field(q) => Ring::field(q),
        RingSpec::Residue(m) => {
            let ell = (2..=m).find(|d| m % d == 0).ok_or_else(|| Error::InvalidInput("Z/m needs m >= 2".into()))?;
            let mut k = 0;
            let mut r = m;
            while r % ell == 0 {
                r /= ell;
                k += 1;
            }
            if r != 1 {
                return Err(Error::InvalidInput(format!("Z/{m}: m must be a prime power")));
            }
            Ring::residue(ell, k)
        }
    }
}

/// Resolves one element of `g` from its label. Labels match exactly or up
/// to whitespace; permutation groups also accept any cycle word and matrix
/// groups any entry list (reduced into the ring). `1`, `e` and `id` name
/// the identity.
pub fn element(g: &Group, text: &str) -> Result<u32> {
    let t = text.trim();
    if matches!(t, "1" | "e" | "id") {
        return Ok(g.identity());
    }
    if let Some(x) = g.find_label(t) {
        return Ok(x);
    }
    if let Some(d) = perm::degree(g) {
        if let Ok(images) = perm::parse_cycles(d, t) {
            return g
                .find_key(&images)
                .ok_or_else(|| Error::InvalidInput(format!("{t} is not in {}", g.name())));
        }
    }
    if let Some((ring, n)) = matrix::matrix_ring(g) {
        if let Some(entries) = parse_matrix(t) {
            if entries.len() == n * n {
                let key = entries.iter().map(|&x| ring.reduce_int(x)).collect::<Result<Vec<u32>>>()?;
                return g
                    .find_key(&key)
                    .ok_or_else(|| Error::InvalidInput(format!("{t} is not in {}", g.name())));
            }
        }
    }
    let squeezed: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    g.elements()
        .find(|&i| g.label(i).chars().filter(|c| !c.is_whitespace()).eq(squeezed.chars()))
        .ok_or_else(|| Error::InvalidInput(format!("no element labelled {t:?} in {}", g.name())))
}

pub fn elements(g: &Group, texts: &[String]) -> Result<Vec<u32>> {
    texts.iter().map(|t| element(g, t)).collect()
}

/// Splits an element list on top-level `;`.
pub fn split_elements(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in text.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if c == ';' && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    out.push(cur);
    out.into_iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

/// The subgroup generated by an element list.
pub fn subgroup(g: &Group, text: &str) -> Result<Subgroup> {
    Ok(g.generate(&elements(g, &split_elements(text))?))
}

fn parse_matrix(t: &str) -> Option<Vec<i64>> {
    let inner = t.strip_prefix('[')?.strip_suffix(']')?;
    inner
        .split(|c: char| c == '[' || c == ']' || c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().ok())
        .collect()
}
