//! Matrix groups over finite fields and residue rings `Z/l^k`.
//!
//! Matrices are stored row-major with entries reduced to canonical codes
//! `0..|R|`; element labels are the row-major entry lists, e.g. `[[1,1],[0,1]]`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Caps, Group};
use crate::keys::{self, KeyKind};
use crate::ring::{Ring, RingKind};
use crate::subgroup::Subgroup;

#[derive(Debug, Clone)]
pub struct MatrixGroupSpec {
    pub name: String,
    pub n: usize,
    pub ring: Arc<Ring>,
    /// Row-major entry codes.
    pub generators: Vec<Vec<u32>>,
}

pub fn determinant(ring: &Ring, n: usize, m: &[u32]) -> u32 {
    if n == 1 {
        return m[0];
    }
    let mut det = 0;
    for col in 0..n {
        let a = m[col];
        if a == 0 {
            continue;
        }
        let minor: Vec<u32> = (1..n)
            .flat_map(|r| (0..n).filter(move |&c| c != col).map(move |c| (r, c)))
            .map(|(r, c)| m[r * n + c])
            .collect();
        let term = ring.mul(a, determinant(ring, n - 1, &minor));
        det = if col % 2 == 0 { ring.add(det, term) } else { ring.sub(det, term) };
    }
    det
}

/// Closure of the generators. Fails if any generator is not invertible.
pub fn matrix_group(spec: &MatrixGroupSpec, caps: Caps) -> Result<Group> {
    let n = spec.n;
    let mut gens = Vec::with_capacity(spec.generators.len());
    for g in &spec.generators {
        if g.len() != n * n || g.iter().any(|&x| x >= spec.ring.size()) {
            return Err(Error::InvalidInput(format!("matrix has wrong shape for {n}x{n}")));
        }
        if !spec.ring.is_unit(determinant(&spec.ring, n, g)) {
            let label = KeyKind::Matrix { ring: spec.ring.clone(), n }.label(g);
            return Err(Error::NotInvertible(label));
        }
        gens.push(g.clone().into_boxed_slice());
    }
    keys::close(&spec.name, KeyKind::Matrix { ring: spec.ring.clone(), n }, &gens, caps)
}

fn identity(n: usize) -> Vec<u32> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

/// Elementary transvections `I + c E_ij` for every `i != j` and every
/// additive generator `c` of the ring. These generate `SL_n` over fields and
/// over the local rings `Z/l^k`.
fn transvections(ring: &Ring, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                for &c in &ring.additive_basis() {
                    let mut m = identity(n);
                    m[i * n + j] = c;
                    out.push(m);
                }
            }
        }
    }
    out
}

fn diagonal(n: usize, u: u32) -> Vec<u32> {
    let mut m = identity(n);
    m[0] = u;
    m
}

fn ring_for(q: u32) -> Result<Arc<Ring>> {
    Ok(Arc::new(Ring::field(q)?))
}

pub fn gl(n: usize, q: u32, caps: Caps) -> Result<Group> {
    let ring = ring_for(q)?;
    let mut gens = transvections(&ring, n);
    let u = ring.primitive_unit();
    if u != 1 {
        gens.push(diagonal(n, u));
    }
    matrix_group(&MatrixGroupSpec { name: format!("GL({n},{q})"), n, ring, generators: gens }, caps)
}

pub fn sl(n: usize, q: u32, caps: Caps) -> Result<Group> {
    let ring = ring_for(q)?;
    let gens = transvections(&ring, n);
    matrix_group(&MatrixGroupSpec { name: format!("SL({n},{q})"), n, ring, generators: gens }, caps)
}

/// Upper unitriangular matrices over `F_p`.
pub fn unitriangular(n: usize, p: u32, caps: Caps) -> Result<Group> {
    let ring = ring_for(p)?;
    if ring.additive_basis().len() != 1 {
        return Err(Error::InvalidInput(format!("U(n,p) needs a prime p, got {p}")));
    }
    let gens: Vec<Vec<u32>> = (0..n.saturating_sub(1))
        .map(|i| {
            let mut m = identity(n);
            m[i * n + i + 1] = 1;
            m
        })
        .collect();
    matrix_group(&MatrixGroupSpec { name: format!("U({n},{p})"), n, ring, generators: gens }, caps)
}

/// `GL_n(Z/l^k)`.
pub fn gl_residue(n: usize, ell: u32, k: u32, caps: Caps) -> Result<Group> {
    let ring = Arc::new(Ring::residue(ell, k)?);
    let mut gens = transvections(&ring, n);
    for u in ring.units() {
        if u != 1 {
            gens.push(diagonal(n, u));
        }
    }
    matrix_group(&MatrixGroupSpec { name: format!("GLZ({n},{ell},{k})"), n, ring, generators: gens }, caps)
}

/// Ring and dimension of a matrix group built by [`matrix_group`].
pub fn matrix_ring(g: &Group) -> Option<(Arc<Ring>, usize)> {
    match &g.key_store()?.kind {
        KeyKind::Matrix { ring, n } => Some((ring.clone(), *n)),
        _ => None,
    }
}

/// Entries of a matrix group element.
pub fn entries(g: &Group, x: u32) -> Option<&[u32]> {
    let store = g.key_store()?;
    matches!(store.kind, KeyKind::Matrix { .. }).then(|| store.key(x))
}

/// Elements of `sub` whose entrywise reduction to the residue field is the
/// identity matrix.
pub fn residue_kernel_of(g: &Group, sub: &Subgroup) -> Result<Subgroup> {
    let (ring, n) = matrix_ring(g).ok_or_else(|| Error::InvalidInput("not a matrix group".into()))?;
    let id = identity(n);
    let members: Vec<u32> = sub
        .members()
        .iter()
        .copied()
        .filter(|&x| {
            let e = entries(g, x).expect("matrix group");
            e.iter().zip(&id).all(|(&a, &b)| ring.to_residue(a) == b)
        })
        .collect();
    Ok(g.generate(&g.small_generating_set(&members)).verified())
}

/// Kernel of `GL_n(Z/l^k) -> GL_n(Z/l)`, returned with the ambient group.
pub fn residue_kernel(n: usize, ell: u32, k: u32, caps: Caps) -> Result<(Group, Subgroup)> {
    let g = gl_residue(n, ell, k, caps)?;
    let ker = residue_kernel_of(&g, &g.whole())?;
    Ok((g, ker))
}

/// True iff `|G|` is a power of `ell` (order 1 included).
pub fn is_l_group(g: &Group, ell: u32) -> bool {
    is_power_of(g.order(), ell)
}

pub(crate) fn is_power_of(mut n: usize, ell: u32) -> bool {
    let ell = ell as usize;
    if ell < 2 {
        return n == 1;
    }
    while n % ell == 0 {
        n /= ell;
    }
    n == 1
}

pub fn ring_of_kind(kind: RingKind) -> Result<Ring> {
    match kind {
        RingKind::Field { p, e } => Ring::field(p.pow(e)),
        RingKind::Residue { ell, k } => Ring::residue(ell, k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_orders() {
        let c = Caps::default();
        assert_eq!(gl(2, 2, c).unwrap().order(), 6);
        assert_eq!(gl(2, 3, c).unwrap().order(), 48);
        assert_eq!(sl(2, 3, c).unwrap().order(), 24);
        assert_eq!(sl(2, 4, c).unwrap().order(), 60);
        assert_eq!(sl(2, 5, c).unwrap().order(), 120);
        assert_eq!(unitriangular(3, 2, c).unwrap().order(), 8);
        assert_eq!(unitriangular(3, 3, c).unwrap().order(), 27);
        assert_eq!(gl_residue(2, 2, 2, c).unwrap().order(), 96);
    }

    #[test]
    fn residue_kernels() {
        let c = Caps::default();
        let (_, k) = residue_kernel(2, 2, 2, c).unwrap();
        assert_eq!(k.order(), 16);
        let (_, k) = residue_kernel(2, 3, 2, c).unwrap();
        assert_eq!(k.order(), 81);
        let (g, k) = residue_kernel(2, 3, 1, c).unwrap();
        assert_eq!(g.order(), 48);
        assert!(k.is_trivial());
    }

    #[test]
    fn rejects_singular_generator() {
        let ring = Arc::new(Ring::residue(2, 2).unwrap());
        let spec = MatrixGroupSpec { name: "bad".into(), n: 2, ring, generators: vec![vec![2, 0, 0, 1]] };
        assert!(matches!(matrix_group(&spec, Caps::default()), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn l_groups() {
        assert!(is_power_of(8, 2));
        assert!(is_power_of(1, 7));
        assert!(!is_power_of(6, 3));
    }
}
