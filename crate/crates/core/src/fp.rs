//! Linear algebra over `F_p`: subspaces in reduced echelon form, linear
//! actions, coinvariants and the `V_i(G, X)` chain.

use std::collections::VecDeque;

use crate::derived::derived_terms;
use crate::error::{Error, Result};
use crate::group::{Caps, Group, Repr};
use crate::matrix;
use crate::ring::is_prime;
use crate::series::generalized_derived_term;
use crate::subgroup::Subgroup;
use crate::wreath::GroupAction;

/// Largest `p^k` the exhaustive irreducibility test accepts.
pub const MAX_VECTORS: u64 = 1 << 20;
/// Largest G-set `v_chain` accepts.
pub const MAX_POINTS: usize = 4096;

fn inv_mod(a: u32, p: u32) -> u32 {
    // a^(p-2)
    let (mut base, mut e, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

fn check_prime(p: u32) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{p} is not prime")))
    }
}

/// A subspace of `F_p^k` stored by its reduced row-echelon basis, so equal
/// subspaces have identical representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpSubspace {
    p: u32,
    dim: usize,
    basis: Vec<Vec<u32>>,
}

impl FpSubspace {
    /// Span of `vectors`.
    pub fn span(p: u32, dim: usize, vectors: &[Vec<u32>]) -> FpSubspace {
        let mut rows: Vec<Vec<u32>> = vectors.iter().map(|v| v.iter().map(|&x| x % p).collect()).collect();
        debug_assert!(rows.iter().all(|r| r.len() == dim));
        let mut rank = 0;
        for col in 0..dim {
            let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
            rows.swap(rank, piv);
            let inv = inv_mod(rows[rank][col], p);
            for x in rows[rank].iter_mut() {
                *x = *x * inv % p;
            }
            for r in 0..rows.len() {
                if r != rank && rows[r][col] != 0 {
                    let c = rows[r][col];
                    for j in 0..dim {
                        rows[r][j] = (rows[r][j] + (p - c) * rows[rank][j]) % p;
                    }
                }
            }
            rank += 1;
        }
        rows.truncate(rank);
        FpSubspace { p, dim, basis: rows }
    }

    pub fn zero(p: u32, dim: usize) -> FpSubspace {
        FpSubspace { p, dim, basis: vec![] }
    }

    pub fn full(p: u32, dim: usize) -> FpSubspace {
        let basis = (0..dim).map(|i| unit(dim, i)).collect();
        FpSubspace { p, dim, basis }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        FpSubspace::span(self.p, self.dim, &rows).dimension() == self.dimension()
    }

    pub fn is_subspace_of(&self, other: &FpSubspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &FpSubspace) -> FpSubspace {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        FpSubspace::span(self.p, self.dim, &rows)
    }
}

fn unit(dim: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

fn vec_mat(p: u32, v: &[u32], m: &[u32]) -> Vec<u32> {
    let k = v.len();
    (0..k).map(|j| (0..k).fold(0u64, |s, i| (s + v[i] as u64 * m[i * k + j] as u64) % p as u64) as u32).collect()
}

fn mat_mul(p: u32, k: usize, a: &[u32], b: &[u32]) -> Vec<u32> {
    (0..k * k)
        .map(|ij| {
            let (i, j) = (ij / k, ij % k);
            (0..k).fold(0u64, |s, l| (s + a[i * k + l] as u64 * b[l * k + j] as u64) % p as u64) as u32
        })
        .collect()
}

fn sub(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| (x + p - y) % p).collect()
}

/// `F_p^k` as an elementary abelian group; the vector `(c_0, ..., c_{k-1})`
/// has index `sum c_i p^i`.
pub fn vector_group(p: u32, dim: usize, caps: Caps) -> Result<Group> {
    check_prime(p)?;
    let order = (p as u64)
        .checked_pow(dim as u32)
        .filter(|&n| n <= caps.closure as u64)
        .ok_or_else(|| Error::cap("vector group order", caps.closure))? as usize;
    let dec = move |mut x: u32| -> Vec<u32> {
        (0..dim)
            .map(|_| {
                let c = x % p;
                x /= p;
                c
            })
            .collect()
    };
    let enc = move |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };
    let inverses = (0..order as u32).map(|x| enc(&dec(x).iter().map(|&c| (p - c) % p).collect::<Vec<_>>())).collect();
    let gens = (0..dim).map(|i| p.pow(i as u32)).collect();
    Group::assemble(
        format!("F{p}^{dim}"),
        order,
        inverses,
        gens,
        move |a, b| enc(&dec(a).iter().zip(dec(b)).map(|(x, y)| (x + y) % p).collect::<Vec<_>>()),
        Repr::Vector { p, dim },
        caps,
    )
}

/// Coordinates of an element of [`vector_group`].
pub fn coords(p: u32, dim: usize, mut x: u32) -> Vec<u32> {
    (0..dim)
        .map(|_| {
            let c = x % p;
            x /= p;
            c
        })
        .collect()
}

pub fn encode_vector(p: u32, v: &[u32]) -> u32 {
    v.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// A right linear action of a subgroup `G0` on row vectors:
/// `v^s = v M_s`, with `M_{st} = M_s M_t`.
#[derive(Clone, Debug)]
pub struct LinearAction {
    actor: Subgroup,
    p: u32,
    dim: usize,
    /// One matrix per member of `actor`, in member order.
    matrices: Vec<Vec<u32>>,
}

impl LinearAction {
    /// Extends matrices given on elements that generate `actor`.
    pub fn new(actor: &Subgroup, p: u32, dim: usize, gens: &[(u32, Vec<u32>)]) -> Result<LinearAction> {
        check_prime(p)?;
        let ring = crate::ring::Ring::field(p)?;
        for (s, m) in gens {
            if m.len() != dim * dim {
                return Err(Error::InvalidInput(format!("matrix for {} is not {dim}x{dim}", actor.parent().label(*s))));
            }
            let m: Vec<u32> = m.iter().map(|&x| x % p).collect();
            if matrix::determinant(&ring, dim, &m) == 0 {
                return Err(Error::NotInvertible(format!("{m:?}")));
            }
            if !actor.contains(*s) {
                return Err(Error::NotAnAction(format!("{} is not in G0", actor.parent().label(*s))));
            }
        }
        let g = actor.parent();
        let members = actor.members();
        let pos = |x: u32| members.binary_search(&x).expect("in actor");
        let mut mats: Vec<Option<Vec<u32>>> = vec![None; members.len()];
        mats[0] = Some(FpSubspace::full(p, dim).basis.concat());
        if dim == 0 {
            mats[0] = Some(vec![]);
        }
        let mut queue = VecDeque::from([0u32]);
        while let Some(t) = queue.pop_front() {
            let mt = mats[pos(t)].clone().expect("reached");
            for (s, ms) in gens {
                let ts = g.mul(t, *s);
                let prod = mat_mul(p, dim, &mt, &ms.iter().map(|&x| x % p).collect::<Vec<_>>());
                match &mats[pos(ts)] {
                    None => {
                        mats[pos(ts)] = Some(prod);
                        queue.push_back(ts);
                    }
                    Some(old) if *old == prod => {}
                    Some(_) => return Err(Error::NotAnAction("matrices do not define a representation".into())),
                }
            }
        }
        if mats.iter().any(Option::is_none) {
            return Err(Error::NotAnAction("listed elements do not generate G0".into()));
        }
        Ok(LinearAction { actor: actor.clone(), p, dim, matrices: mats.into_iter().flatten().collect() })
    }

    /// The natural action of a matrix group over a prime field on row vectors.
    pub fn natural(g: &Group) -> Result<LinearAction> {
        let (ring, n) = matrix::matrix_ring(g).ok_or_else(|| Error::InvalidInput("not a matrix group".into()))?;
        let p = ring.size();
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{} is not a prime field", ring.name())));
        }
        let matrices = g.elements().map(|x| matrix::entries(g, x).expect("matrix").to_vec()).collect();
        Ok(LinearAction { actor: g.whole(), p, dim: n, matrices })
    }

    pub fn trivial(actor: &Subgroup, p: u32, dim: usize) -> Result<LinearAction> {
        check_prime(p)?;
        let id = FpSubspace::full(p, dim).basis.concat();
        Ok(LinearAction { actor: actor.clone(), p, dim, matrices: vec![id; actor.order()] })
    }

    pub fn actor(&self) -> &Subgroup {
        &self.actor
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, s: u32) -> &[u32] {
        &self.matrices[self.actor.members().binary_search(&s).expect("in actor")]
    }

    pub fn apply(&self, v: &[u32], s: u32) -> Vec<u32> {
        vec_mat(self.p, v, self.matrix(s))
    }

    fn generator_matrices(&self) -> Vec<&[u32]> {
        self.actor.generators().iter().map(|&s| self.matrix(s)).collect()
    }

    pub fn is_trivial(&self) -> bool {
        let id = FpSubspace::full(self.p, self.dim).basis.concat();
        self.matrices.iter().all(|m| *m == id)
    }

    /// Smallest invariant subspace containing `v`.
    pub fn invariant_closure(&self, vectors: &[Vec<u32>]) -> FpSubspace {
        let gens = self.generator_matrices();
        let mut space = FpSubspace::span(self.p, self.dim, vectors);
        loop {
            let mut rows = space.basis.clone();
            for b in &space.basis {
                for m in &gens {
                    rows.push(vec_mat(self.p, b, m));
                }
            }
            let next = FpSubspace::span(self.p, self.dim, &rows);
            if next.dimension() == space.dimension() {
                return space;
            }
            space = next;
        }
    }

    pub fn is_invariant(&self, w: &FpSubspace) -> bool {
        let gens = self.generator_matrices();
        w.basis.iter().all(|b| gens.iter().all(|m| w.contains(&vec_mat(self.p, b, m))))
    }

    /// `F_p^k` as a group with this action, for building wreath products.
    pub fn to_group_action(&self) -> Result<GroupAction> {
        let caps = self.actor.parent().caps();
        let space = vector_group(self.p, self.dim, caps)?;
        let (p, dim) = (self.p, self.dim);
        GroupAction::new(&space, &self.actor, |a, s| encode_vector(p, &self.apply(&coords(p, dim, a), s)))
    }

    fn check_size(&self) -> Result<()> {
        match (self.p as u64).checked_pow(self.dim as u32) {
            Some(n) if n <= MAX_VECTORS => Ok(()),
            _ => Err(Error::DimensionTooLarge(format!("{}^{} exceeds 2^20 vectors", self.p, self.dim))),
        }
    }
}

/// True iff every nonzero vector generates the whole space as an invariant
/// subspace. Exhaustive; checks one vector per line.
pub fn is_irreducible(act: &LinearAction) -> Result<bool> {
    act.check_size()?;
    if act.dim == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    let (p, k) = (act.p, act.dim);
    let total = (p as u64).pow(k as u32);
    for x in 1..total {
        let v = coords(p, k, x as u32);
        // leading nonzero coordinate (highest index) equal to 1 picks one vector per line
        if v.iter().rev().find(|&&c| c != 0) != Some(&1) {
            continue;
        }
        if act.invariant_closure(&[v]).dimension() < k {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `A_0 = span{a^s - a}`. Spanning over basis vectors `a` and generators `s`
/// suffices: the expression is linear in `a`, and
/// `a^(st) - a = ((a^s)^t - a^s) + (a^s - a)`.
pub fn coinvariant_span(act: &LinearAction) -> Result<FpSubspace> {
    act.check_size()?;
    let mut rows = Vec::new();
    for b in FpSubspace::full(act.p, act.dim).basis {
        for m in act.generator_matrices() {
            rows.push(sub(act.p, &vec_mat(act.p, &b, m), &b));
        }
    }
    let span = FpSubspace::span(act.p, act.dim, &rows);
    if !act.is_invariant(&span) {
        return Err(Error::PropositionViolated("coinvariant span is not invariant".into()));
    }
    Ok(span)
}

/// A finite right `G`-set on points `0..n`.
#[derive(Clone, Debug)]
pub struct GSet {
    group: Group,
    size: usize,
    /// `table[g * n + x] = x.g`
    table: Vec<u32>,
}

impl GSet {
    /// Tabulates and validates `x.g = act(x, g)`.
    pub fn new(group: &Group, size: usize, act: impl Fn(u32, u32) -> u32) -> Result<GSet> {
        let mut table = Vec::with_capacity(size * group.order());
        for g in group.elements() {
            for x in 0..size as u32 {
                let y = act(x, g);
                if y as usize >= size {
                    return Err(Error::NotAnAction(format!("point {x} moved outside the set")));
                }
                table.push(y);
            }
        }
        let s = GSet { group: group.clone(), size, table };
        for x in 0..size as u32 {
            if s.apply(x, 0) != x {
                return Err(Error::NotAnAction("identity moves a point".into()));
            }
        }
        for g in group.elements() {
            for &t in group.generators() {
                let gt = group.mul(g, t);
                for x in 0..size as u32 {
                    if s.apply(s.apply(x, g), t) != s.apply(x, gt) {
                        return Err(Error::NotAnAction(format!("(x.{g}).{t} != x.({g}{t})")));
                    }
                }
            }
        }
        Ok(s)
    }

    /// Right cosets `G0 x`, ordered by least member, with `(G0 x).g = G0 xg`.
    pub fn right_cosets(g0: &Subgroup) -> Result<GSet> {
        let g = g0.parent();
        let mut coset_of = vec![u32::MAX; g.order()];
        let mut reps = Vec::new();
        for x in g.elements() {
            if coset_of[x as usize] == u32::MAX {
                for &t in g0.members() {
                    coset_of[g.mul(t, x) as usize] = reps.len() as u32;
                }
                reps.push(x);
            }
        }
        if reps.len() > MAX_POINTS {
            return Err(Error::DimensionTooLarge(format!("{} points exceed {MAX_POINTS}", reps.len())));
        }
        GSet::new(g, reps.len(), |c, s| coset_of[g.mul(reps[c as usize], s) as usize])
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn apply(&self, x: u32, g: u32) -> u32 {
        self.table[g as usize * self.size + x as usize]
    }

    /// Orbits of a subgroup, each sorted, ordered by least point.
    pub fn orbits(&self, sub: &Subgroup) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for start in 0..self.size as u32 {
            if seen[start as usize] {
                continue;
            }
            seen[start as usize] = true;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                for &s in sub.generators() {
                    let y = self.apply(orbit[i], s);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits(&self.group.whole()).len() <= 1
    }

    /// `f^g(x) = f(x.g^-1)`, a right action on functions `X -> F_p`.
    fn act_on_function(&self, f: &[u32], g: u32) -> Vec<u32> {
        let gi = self.group.inv(g);
        (0..self.size as u32).map(|x| f[self.apply(x, gi) as usize]).collect()
    }
}

/// `V_0 = F_p^X`, `V_{i+1} = span{f - f^g : f in V_i, g in G^(i)}`, for
/// `i < depth`.
///
/// Each `V_{i+1}` is spanned from a basis of `V_i` and generators of
/// `G^(i)` only. This gives the full span: `f -> f - f^g` is linear, and
/// `f - f^(gh) = (f - f^g) + (f^g - (f^g)^h)` with `f^g` in `V_i` because
/// `V_i` is `G`-invariant (each `G^(j)` is normal in `G`).
pub fn v_chain(x: &GSet, p: u32, depth: usize) -> Result<Vec<FpSubspace>> {
    check_prime(p)?;
    if x.len() > MAX_POINTS {
        return Err(Error::DimensionTooLarge(format!("{} points exceed {MAX_POINTS}", x.len())));
    }
    let g = x.group();
    let n = x.len();
    let mut chain = vec![FpSubspace::full(p, n)];
    let terms = series_terms(g, depth)?;
    for term in terms.iter().take(depth) {
        let cur = chain.last().expect("nonempty");
        let mut rows = Vec::new();
        for f in cur.basis() {
            for &s in term.generators() {
                rows.push(sub(p, f, &x.act_on_function(f, s)));
            }
        }
        chain.push(FpSubspace::span(p, n, &rows));
    }
    Ok(chain)
}

/// `G^(0), ..., G^(depth-1)`, padded with the trivial subgroup.
fn series_terms(g: &Group, depth: usize) -> Result<Vec<Subgroup>> {
    let mut out = Vec::with_capacity(depth);
    for i in 0..depth {
        let t = generalized_derived_term(g, i)?;
        let done = t.is_trivial();
        out.push(t);
        if done {
            break;
        }
    }
    while out.len() < depth {
        out.push(g.trivial_subgroup());
    }
    Ok(out)
}

/// Whether some point has a `G^(m)`-orbit larger than `2^m`.
pub fn orbit_hypothesis(x: &GSet, m: usize) -> Result<bool> {
    if m >= usize::BITS as usize - 1 {
        return Ok(false);
    }
    let gm = generalized_derived_term(x.group(), m)?;
    Ok(x.orbits(&gm).iter().any(|o| o.len() > 1 << m))
}

/// Derived length of `U(n, p)`, which is at most `n - 1`.
pub fn unipotent_derived_length(n: usize, p: u32, caps: Caps) -> Result<usize> {
    check_prime(p)?;
    if n < 2 {
        return Err(Error::InvalidInput("n must be at least 2".into()));
    }
    let e = (n * (n - 1) / 2) as u32;
    match (p as u64).checked_pow(e) {
        Some(order) if order <= caps.closure as u64 => {}
        _ => return Err(Error::cap("unitriangular group order", caps.closure)),
    }
    let u = matrix::unitriangular(n, p, caps)?;
    let len = derived_terms(&u).len() - 1;
    if len > n - 1 {
        return Err(Error::PropositionViolated(format!("U({n},{p}) has derived length {len} > {}", n - 1)));
    }
    Ok(len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn c3_in_gl22() -> LinearAction {
        let g = catalog::cyclic(3).unwrap();
        LinearAction::new(&g.whole(), 2, 2, &[(1, vec![0, 1, 1, 1])]).unwrap()
    }

    #[test]
    fn echelon_is_canonical() {
        let a = FpSubspace::span(3, 3, &[vec![1, 2, 0], vec![0, 1, 1]]);
        let b = FpSubspace::span(3, 3, &[vec![1, 0, 1], vec![1, 1, 2], vec![2, 1, 0]]);
        assert_eq!(a, b);
        assert_eq!(a.dimension(), 2);
        assert!(a.contains(&[1, 0, 1]));
        assert!(!a.contains(&[0, 0, 1]));
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&c3_in_gl22()).unwrap());
        let g = catalog::cyclic(3).unwrap();
        assert!(!is_irreducible(&LinearAction::trivial(&g.whole(), 5, 2).unwrap()).unwrap());
        let c2 = catalog::cyclic(2).unwrap();
        let inv = LinearAction::new(&c2.whole(), 3, 1, &[(1, vec![2])]).unwrap();
        assert!(is_irreducible(&inv).unwrap());
        let big = LinearAction::trivial(&g.whole(), 2, 21).unwrap();
        assert!(matches!(is_irreducible(&big), Err(Error::DimensionTooLarge(_))));
    }

    #[test]
    fn coinvariants() {
        let g = catalog::cyclic(3).unwrap();
        assert!(coinvariant_span(&LinearAction::trivial(&g.whole(), 2, 3).unwrap()).unwrap().is_zero());
        assert_eq!(coinvariant_span(&c3_in_gl22()).unwrap().dimension(), 2);
        let c2 = catalog::cyclic(2).unwrap();
        let inv = LinearAction::new(&c2.whole(), 3, 1, &[(1, vec![2])]).unwrap();
        assert_eq!(coinvariant_span(&inv).unwrap(), FpSubspace::full(3, 1));
    }

    #[test]
    fn representation_checks() {
        let c2 = catalog::cyclic(2).unwrap();
        // an order-3 matrix cannot represent C2
        let r = LinearAction::new(&c2.whole(), 2, 2, &[(1, vec![0, 1, 1, 1])]);
        assert!(matches!(r, Err(Error::NotAnAction(_))));
        let r = LinearAction::new(&c2.whole(), 2, 2, &[(1, vec![1, 1, 1, 1])]);
        assert!(matches!(r, Err(Error::NotInvertible(_))));
    }

    #[test]
    fn natural_action_of_gl22() {
        let g = catalog::gl(2, 2).unwrap();
        let act = LinearAction::natural(&g).unwrap();
        assert!(is_irreducible(&act).unwrap());
        let ga = act.to_group_action().unwrap();
        assert_eq!(ga.space().order(), 4);
    }

    #[test]
    fn v_chains() {
        let c2 = catalog::cyclic(2).unwrap();
        let x = GSet::right_cosets(&c2.trivial_subgroup()).unwrap();
        let dims: Vec<usize> = v_chain(&x, 2, 2).unwrap().iter().map(|v| v.dimension()).collect();
        assert_eq!(dims, vec![2, 1, 0]);
        assert_eq!(v_chain(&x, 2, 1).unwrap()[1], FpSubspace::span(2, 2, &[vec![1, 1]]));

        let t = Group::trivial();
        let x = GSet::new(&t, 5, |x, _| x).unwrap();
        assert!(v_chain(&x, 3, 1).unwrap()[1].is_zero());

        let a4 = catalog::alternating(4).unwrap();
        let c3 = a4.generate(&[a4.find_label("(1 2 3)").unwrap()]);
        let x = GSet::right_cosets(&c3).unwrap();
        assert_eq!(x.len(), 4);
        assert!(!v_chain(&x, 2, 2).unwrap()[2].is_zero());
    }

    #[test]
    fn chains_decrease() {
        let s4 = catalog::symmetric(4).unwrap();
        let x = GSet::right_cosets(&s4.generate(&[s4.find_label("(1 2)").unwrap()])).unwrap();
        for p in [2, 3] {
            let ch = v_chain(&x, p, 4).unwrap();
            for w in ch.windows(2) {
                assert!(w[1].is_subspace_of(&w[0]));
            }
        }
    }

    #[test]
    fn orbit_hypotheses() {
        let c2 = catalog::cyclic(2).unwrap();
        let x = GSet::right_cosets(&c2.trivial_subgroup()).unwrap();
        assert!(orbit_hypothesis(&x, 0).unwrap());
        let s3 = catalog::symmetric(3).unwrap();
        let single = GSet::right_cosets(&s3.whole()).unwrap();
        assert!((0..4).all(|m| !orbit_hypothesis(&single, m).unwrap()));
        let a4 = catalog::alternating(4).unwrap();
        let c3 = a4.generate(&[a4.find_label("(1 2 3)").unwrap()]);
        assert!(orbit_hypothesis(&GSet::right_cosets(&c3).unwrap(), 1).unwrap());
    }

    #[test]
    fn gset_validation() {
        let c3 = catalog::cyclic(3).unwrap();
        assert!(matches!(GSet::new(&c3, 2, |x, g| if g == 0 { x } else { 1 - x }), Err(Error::NotAnAction(_))));
    }

    #[test]
    fn unipotent() {
        let caps = Caps::default();
        assert_eq!(unipotent_derived_length(2, 5, caps).unwrap(), 1);
        assert_eq!(unipotent_derived_length(3, 2, caps).unwrap(), 2);
        assert!(unipotent_derived_length(4, 3, caps).unwrap() <= 3);
        let small = Caps { closure: 100, ..caps };
        assert!(matches!(unipotent_derived_length(4, 3, small), Err(Error::CapExceeded { .. })));
    }
}
