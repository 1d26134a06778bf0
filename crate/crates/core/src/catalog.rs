//! Named groups and the verification catalog.

use crate::construct::direct_product;
use crate::error::{Error, Result};
use crate::group::{Caps, Group};
use crate::matrix;
use crate::perm::group_from_images;

fn cycle_images(n: usize) -> Vec<u32> {
    (0..n as u32).map(|i| (i + 1) % n as u32).collect()
}

pub fn cyclic_with(n: usize, caps: Caps) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidInput("C0 is not a group".into()));
    }
    let gens = if n == 1 { vec![] } else { vec![cycle_images(n)] };
    group_from_images(&format!("C{n}"), n, &gens, caps)
}

pub fn cyclic(n: usize) -> Result<Group> {
    cyclic_with(n, Caps::default())
}

/// Dihedral group of order `2n`.
pub fn dihedral_with(n: usize, caps: Caps) -> Result<Group> {
    match n {
        0 => Err(Error::InvalidInput("D0 is not a group".into())),
        1 => Ok(cyclic_with(2, caps)?.renamed("D1")),
        2 => Ok(klein_four_with(caps)?.renamed("D2")),
        _ => {
            let refl: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
            group_from_images(&format!("D{n}"), n, &[cycle_images(n), refl], caps)
        }
    }
}

pub fn dihedral(n: usize) -> Result<Group> {
    dihedral_with(n, Caps::default())
}

pub fn klein_four_with(caps: Caps) -> Result<Group> {
    group_from_images("V4", 4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]], caps)
}

pub fn klein_four() -> Result<Group> {
    klein_four_with(Caps::default())
}

/// Quaternion group in its regular permutation representation.
pub fn quaternion_with(caps: Caps) -> Result<Group> {
    // i = (1 2 3 4)(5 6 7 8), j = (1 5 3 7)(2 8 4 6)
    let i = vec![1, 2, 3, 0, 5, 6, 7, 4];
    let j = vec![4, 7, 6, 5, 2, 1, 0, 3];
    group_from_images("Q8", 8, &[i, j], caps)
}

pub fn quaternion() -> Result<Group> {
    quaternion_with(Caps::default())
}

pub fn symmetric_with(n: usize, caps: Caps) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidInput("S0 is not supported".into()));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(cycle_images(n));
        let mut t: Vec<u32> = (0..n as u32).collect();
        t.swap(0, 1);
        gens.push(t);
    }
    group_from_images(&format!("S{n}"), n, &gens, caps)
}

pub fn symmetric(n: usize) -> Result<Group> {
    symmetric_with(n, Caps::default())
}

pub fn alternating_with(n: usize, caps: Caps) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidInput("A0 is not supported".into()));
    }
    // (1 2 k) for k = 3..n
    let gens: Vec<Vec<u32>> = (2..n)
        .map(|k| {
            let mut p: Vec<u32> = (0..n as u32).collect();
            p[0] = 1;
            p[1] = k as u32;
            p[k] = 0;
            p
        })
        .collect();
    group_from_images(&format!("A{n}"), n, &gens, caps)
}

pub fn alternating(n: usize) -> Result<Group> {
    alternating_with(n, Caps::default())
}

pub fn gl(n: usize, q: u32) -> Result<Group> {
    matrix::gl(n, q, Caps::default())
}

pub fn sl(n: usize, q: u32) -> Result<Group> {
    matrix::sl(n, q, Caps::default())
}

pub fn unitriangular(n: usize, p: u32) -> Result<Group> {
    matrix::unitriangular(n, p, Caps::default())
}

/// A named catalog group. `degree` is the degree of its natural
/// permutation representation, if it has one.
#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub group: Group,
    pub degree: Option<usize>,
}

fn entry(group: Group, degree: Option<usize>) -> Entry {
    Entry { name: group.name().to_string(), group, degree }
}

/// Base catalog: `C_n` (n <= 32), `D_n` (3 <= n <= 16), `Q8`, `S_n` and
/// `A_n` (n <= 7), `V4`, `GL(2,2)`, `GL(2,3)`, `SL(2,3)`, `SL(2,5)` and
/// `U(3,p)` for p in {2,3,5}. Entries above `max_order` are skipped.
pub fn base(max_order: usize) -> Result<Vec<Entry>> {
    base_with(max_order, Caps::default())
}

pub fn base_with(max_order: usize, caps: Caps) -> Result<Vec<Entry>> {
    let mut out = Vec::new();
    let mut push = |g: Result<Group>, deg: Option<usize>| -> Result<()> {
        let g = g?;
        if g.order() <= max_order {
            out.push(entry(g, deg));
        }
        Ok(())
    };
    for n in 1..=32 {
        push(cyclic_with(n, caps), Some(n))?;
    }
    for n in 3..=16 {
        push(dihedral_with(n, caps), Some(n))?;
    }
    push(quaternion_with(caps), Some(8))?;
    for n in 1..=7 {
        if factorial(n) <= max_order {
            push(symmetric_with(n, caps), Some(n))?;
        }
    }
    for n in 3..=7 {
        if factorial(n) / 2 <= max_order {
            push(alternating_with(n, caps), Some(n))?;
        }
    }
    push(klein_four_with(caps), Some(4))?;
    push(matrix::gl(2, 2, caps), None)?;
    push(matrix::gl(2, 3, caps), None)?;
    push(matrix::sl(2, 3, caps), None)?;
    if max_order >= 120 {
        push(matrix::sl(2, 5, caps), None)?;
    }
    for p in [2, 3, 5] {
        push(matrix::unitriangular(3, p, caps), None)?;
    }
    Ok(out)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Base catalog plus all pairwise direct products `G x H` of nontrivial
/// base groups (unordered, repetition allowed) with `|G||H| <= max_order`.
pub fn full(max_order: usize) -> Result<Vec<Entry>> {
    full_with(max_order, Caps::default())
}

pub fn full_with(max_order: usize, caps: Caps) -> Result<Vec<Entry>> {
    let base = base_with(max_order, caps)?;
    let mut out = base.clone();
    let nontrivial: Vec<&Entry> = base.iter().filter(|e| e.group.order() > 1).collect();
    for (i, a) in nontrivial.iter().enumerate() {
        for b in &nontrivial[i..] {
            if a.group.order() * b.group.order() <= max_order {
                let p = direct_product(&a.group, &b.group)?;
                out.push(Entry { name: format!("{} x {}", a.name, b.name), group: p.group, degree: None });
            }
        }
    }
    Ok(out)
}
