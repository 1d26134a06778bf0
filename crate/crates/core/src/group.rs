//! Finite groups with a uniform index-based multiplication interface.
//!
//! Every group stores its elements as indices `0..order`, with the identity at
//! index 0. Multiplication goes through either a dense Cayley table or an
//! on-the-fly oracle; which one is used depends on [`Caps::dense`].

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::keys::KeyStore;
use crate::subgroup::Subgroup;

/// Size limits shared by every construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest order for which a dense Cayley table is built.
    pub dense: usize,
    /// Largest order any construction may reach.
    pub closure: usize,
    /// Largest conjugacy class count the brute-force oracle accepts.
    pub oracle_classes: usize,
    /// Largest conjugacy class count for normal-lattice enumeration.
    pub lattice_classes: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { dense: 5_000, closure: 100_000, oracle_classes: 16, lattice_classes: 64 }
    }
}

/// Which multiplication backend a group uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    DenseTable,
    OnTheFly,
}

type MulFn = Arc<dyn Fn(u32, u32) -> u32 + Send + Sync>;

enum Mul {
    Small(Vec<u16>),
    Large(Vec<u32>),
    Oracle(MulFn),
}

/// How element labels are produced.
#[derive(Clone)]
pub(crate) enum Repr {
    Plain,
    Keyed(Arc<KeyStore>),
    /// Index `l * |right| + r`, or an explicit pair list for fiber products.
    Pair { left: Group, right: Group, explicit: Option<Arc<Vec<(u32, u32)>>> },
    Coset { parent: Group, reps: Arc<Vec<u32>> },
    Sub { parent: Group, members: Arc<Vec<u32>> },
    /// Functions on `slots` coset representatives with values in `values`,
    /// index `sum v_i |values|^i`.
    Functions { values: Group, slots: usize },
    Vector { p: u32, dim: usize },
}

pub(crate) struct Classes {
    pub classes: Vec<Vec<u32>>,
    pub class_of: Vec<u32>,
}

struct GroupInner {
    name: String,
    order: usize,
    inverses: Vec<u32>,
    generators: Vec<u32>,
    mul: Mul,
    repr: Repr,
    caps: Caps,
    classes: OnceLock<Arc<Classes>>,
}

/// A finite group. Cheap to clone; all clones share the same immutable data.
#[derive(Clone)]
pub struct Group {
    inner: Arc<GroupInner>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("name", &self.inner.name)
            .field("order", &self.inner.order)
            .field("backend", &self.backend())
            .finish()
    }
}

impl Group {
    /// Assembles a group from a multiplication function. Identity must be
    /// index 0. Builds a dense table when `order <= caps.dense`.
    pub(crate) fn assemble(
        name: impl Into<String>,
        order: usize,
        inverses: Vec<u32>,
        generators: Vec<u32>,
        mul: impl Fn(u32, u32) -> u32 + Send + Sync + 'static,
        repr: Repr,
        caps: Caps,
    ) -> Result<Group> {
        if order > caps.closure {
            return Err(Error::cap("group order", caps.closure));
        }
        debug_assert_eq!(inverses.len(), order);
        let mul = if order <= caps.dense {
            let n = order as u32;
            if order <= u16::MAX as usize {
                let mut t = Vec::with_capacity(order * order);
                for a in 0..n {
                    for b in 0..n {
                        t.push(mul(a, b) as u16);
                    }
                }
                Mul::Small(t)
            } else {
                let mut t = Vec::with_capacity(order * order);
                for a in 0..n {
                    for b in 0..n {
                        t.push(mul(a, b));
                    }
                }
                Mul::Large(t)
            }
        } else {
            Mul::Oracle(Arc::new(mul))
        };
        let mut generators: Vec<u32> = generators.into_iter().filter(|&g| g != 0).collect();
        generators.dedup();
        Ok(Group {
            inner: Arc::new(GroupInner {
                name: name.into(),
                order,
                inverses,
                generators,
                mul,
                repr,
                caps,
                classes: OnceLock::new(),
            }),
        })
    }

    /// The group of order 1.
    pub fn trivial() -> Group {
        Group::assemble("C1", 1, vec![0], vec![], |_, _| 0, Repr::Plain, Caps::default())
            .expect("trivial group fits every cap")
    }

    /// Builds a group from an explicit multiplication table (row-major,
    /// identity at index 0). The table is validated.
    pub fn from_table(name: &str, order: usize, table: Vec<u32>, caps: Caps) -> Result<Group> {
        if order == 0 || table.len() != order * order {
            return Err(Error::InvalidInput("table size does not match order".into()));
        }
        if table.iter().any(|&x| x as usize >= order) {
            return Err(Error::InvalidInput("table entry out of range".into()));
        }
        let mut inverses = vec![u32::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == 0 {
                    inverses[a] = b as u32;
                    break;
                }
            }
        }
        if inverses.contains(&u32::MAX) {
            return Err(Error::InvalidInput("table has an element without inverse".into()));
        }
        let gens = (1..order as u32).collect();
        let t = Arc::new(table);
        let g = Group::assemble(
            name,
            order,
            inverses,
            gens,
            move |a, b| t[a as usize * order + b as usize],
            Repr::Plain,
            caps,
        )?;
        g.check_axioms(0)?;
        let gens = g.small_generating_set(&(0..order as u32).collect::<Vec<_>>());
        Ok(g.with_generators(gens))
    }

    pub(crate) fn with_generators(&self, gens: Vec<u32>) -> Group {
        let inner = &self.inner;
        let mul = match &inner.mul {
            Mul::Small(t) => Mul::Small(t.clone()),
            Mul::Large(t) => Mul::Large(t.clone()),
            Mul::Oracle(f) => Mul::Oracle(f.clone()),
        };
        Group {
            inner: Arc::new(GroupInner {
                name: inner.name.clone(),
                order: inner.order,
                inverses: inner.inverses.clone(),
                generators: gens.into_iter().filter(|&g| g != 0).collect(),
                mul,
                repr: inner.repr.clone(),
                caps: inner.caps,
                classes: OnceLock::new(),
            }),
        }
    }

    /// Same group under a new display name.
    pub fn renamed(&self, name: impl Into<String>) -> Group {
        let g = self.with_generators(self.inner.generators.clone());
        let mut inner = Arc::try_unwrap(g.inner).ok().expect("fresh Arc");
        inner.name = name.into();
        Group { inner: Arc::new(inner) }
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn caps(&self) -> Caps {
        self.inner.caps
    }

    pub fn generators(&self) -> &[u32] {
        &self.inner.generators
    }

    pub fn backend(&self) -> Backend {
        match self.inner.mul {
            Mul::Oracle(_) => Backend::OnTheFly,
            _ => Backend::DenseTable,
        }
    }

    /// True if both handles refer to the same underlying group.
    pub fn same(&self, other: &Group) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.inner.mul {
            Mul::Small(t) => t[a as usize * self.inner.order + b as usize] as u32,
            Mul::Large(t) => t[a as usize * self.inner.order + b as usize],
            Mul::Oracle(f) => f(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inner.inverses[a as usize]
    }

    /// `g^-1 x g`
    #[inline]
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[x, y] = x^-1 y^-1 x y`
    #[inline]
    pub fn commutator(&self, x: u32, y: u32) -> u32 {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn pow(&self, x: u32, mut e: u64) -> u32 {
        let mut base = x;
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: u32) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.inner.order as u32
    }

    pub fn is_trivial(&self) -> bool {
        self.inner.order == 1
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Printable label of an element.
    pub fn label(&self, i: u32) -> String {
        match &self.inner.repr {
            Repr::Plain => format!("g{i}"),
            Repr::Keyed(store) => store.label(i),
            Repr::Pair { left, right, explicit } => {
                let (l, r) = match explicit {
                    Some(p) => p[i as usize],
                    None => (i / right.order() as u32, i % right.order() as u32),
                };
                format!("({}, {})", left.label(l), right.label(r))
            }
            Repr::Coset { parent, reps } => format!("[{}]", parent.label(reps[i as usize])),
            Repr::Sub { parent, members } => parent.label(members[i as usize]),
            Repr::Functions { values, slots } => {
                let base = values.order() as u64;
                let mut f = i as u64;
                let mut parts = Vec::with_capacity(*slots);
                for _ in 0..*slots {
                    parts.push(values.label((f % base) as u32));
                    f /= base;
                }
                format!("[{}]", parts.join(", "))
            }
            Repr::Vector { p, dim } => {
                let mut x = i;
                let mut coords = Vec::with_capacity(*dim);
                for _ in 0..*dim {
                    coords.push((x % p).to_string());
                    x /= p;
                }
                format!("v({})", coords.join(","))
            }
        }
    }

    /// Looks up an element by its exact label. Linear scan.
    pub fn find_label(&self, label: &str) -> Option<u32> {
        self.elements().find(|&i| self.label(i) == label)
    }

    /// Index of a concrete key (permutation images or matrix entries) for
    /// groups built by closure.
    pub fn find_key(&self, key: &[u32]) -> Option<u32> {
        match &self.inner.repr {
            Repr::Keyed(store) => store.find(key),
            _ => None,
        }
    }

    pub(crate) fn key_store(&self) -> Option<&Arc<KeyStore>> {
        match &self.inner.repr {
            Repr::Keyed(store) => Some(store),
            _ => None,
        }
    }

    /// Pair decomposition for direct and semidirect products.
    pub fn pair_of(&self, i: u32) -> Option<(u32, u32)> {
        match &self.inner.repr {
            Repr::Pair { right, explicit, .. } => Some(match explicit {
                Some(p) => p[i as usize],
                None => (i / right.order() as u32, i % right.order() as u32),
            }),
            _ => None,
        }
    }

    /// Conjugacy classes, identity class first, then sorted by
    /// (size, least member). Cached.
    pub fn conjugacy_classes(&self) -> &[Vec<u32>] {
        &self.class_data().classes
    }

    /// Index into [`Group::conjugacy_classes`] of the class containing `x`.
    pub fn class_of(&self, x: u32) -> usize {
        self.class_data().class_of[x as usize] as usize
    }

    pub fn class_count(&self) -> usize {
        self.conjugacy_classes().len()
    }

    pub(crate) fn class_data(&self) -> &Classes {
        self.inner.classes.get_or_init(|| Arc::new(compute_classes(self)))
    }

    /// Subgroup generated by `gens`.
    pub fn generate(&self, gens: &[u32]) -> Subgroup {
        let mut c = Closure::new(self);
        for &x in gens {
            c.add(x);
        }
        c.into_subgroup(None)
    }

    /// Smallest normal subgroup containing `seed`.
    pub fn normal_closure(&self, seed: &[u32]) -> Subgroup {
        let mut c = Closure::new(self);
        for &x in seed {
            c.add(x);
        }
        let mut i = 0;
        while i < c.gens.len() {
            let s = c.gens[i];
            for &t in self.generators() {
                let y = self.conj(s, t);
                c.add(y);
            }
            i += 1;
        }
        c.into_subgroup(Some(true))
    }

    /// The whole group as a subgroup of itself.
    pub fn whole(&self) -> Subgroup {
        Subgroup::from_parts(
            self.clone(),
            Arc::new(self.elements().collect()),
            self.generators().to_vec(),
            Some(true),
        )
    }

    /// The trivial subgroup.
    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_parts(self.clone(), Arc::new(vec![0]), vec![], Some(true))
    }

    /// Greedy generating set for the subgroup consisting of `members`
    /// (which must be a subgroup). Each chosen element at least doubles the
    /// generated subgroup, so the result has at most log2 |members| entries.
    pub fn small_generating_set(&self, members: &[u32]) -> Vec<u32> {
        let mut c = Closure::new(self);
        for &x in members {
            c.add(x);
            if c.elems.len() == members.len() {
                break;
            }
        }
        c.gens
    }

    /// Exhaustive axiom check when `order <= 512`, otherwise identity,
    /// inverse and closure on all elements and associativity on 10 000
    /// random triples drawn from a generator seeded by `seed`.
    pub fn check_axioms(&self, seed: u64) -> Result<()> {
        let n = self.order() as u32;
        for a in self.elements() {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(Error::InvalidInput(format!("identity law fails at {a}")));
            }
            let ai = self.inv(a);
            if ai >= n || self.mul(a, ai) != 0 || self.mul(ai, a) != 0 {
                return Err(Error::InvalidInput(format!("inverse law fails at {a}")));
            }
        }
        let assoc = |a: u32, b: u32, c: u32| -> Result<()> {
            let ab = self.mul(a, b);
            let bc = self.mul(b, c);
            if ab >= n || bc >= n {
                return Err(Error::InvalidInput("product out of range".into()));
            }
            if self.mul(ab, c) != self.mul(a, bc) {
                return Err(Error::InvalidInput(format!("associativity fails at ({a},{b},{c})")));
            }
            Ok(())
        };
        if n <= 512 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        assoc(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(seed);
            for _ in 0..10_000 {
                assoc(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        if self.generate(self.generators()).order() != self.order() {
            return Err(Error::InvalidInput("generators do not generate the group".into()));
        }
        Ok(())
    }

    /// Multiset of element orders, sorted.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.elements().map(|x| self.element_order(x)).collect();
        v.sort_unstable();
        v
    }
}

fn compute_classes(g: &Group) -> Classes {
    let n = g.order();
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(p: &mut [u32], mut x: u32) -> u32 {
        while p[x as usize] != x {
            p[x as usize] = p[p[x as usize] as usize];
            x = p[x as usize];
        }
        x
    }
    for x in g.elements() {
        for &t in g.generators() {
            let y = g.conj(x, t);
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx != ry {
                let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
                parent[hi as usize] = lo;
            }
        }
    }
    let mut buckets: HashMap<u32, Vec<u32>> = HashMap::new();
    for x in g.elements() {
        let r = find(&mut parent, x);
        buckets.entry(r).or_default().push(x);
    }
    let mut classes: Vec<Vec<u32>> = buckets.into_values().collect();
    classes.sort_by_key(|c| (c.len(), c[0]));
    let mut class_of = vec![0u32; n];
    for (i, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x as usize] = i as u32;
        }
    }
    Classes { classes, class_of }
}

/// Incremental subgroup closure inside a fixed parent group.
pub(crate) struct Closure<'a> {
    g: &'a Group,
    mask: Vec<bool>,
    pub elems: Vec<u32>,
    pub gens: Vec<u32>,
}

impl<'a> Closure<'a> {
    pub fn new(g: &'a Group) -> Self {
        let mut mask = vec![false; g.order()];
        mask[0] = true;
        Closure { g, mask, elems: vec![0], gens: Vec::new() }
    }

    /// Adds a generator; returns whether the subgroup grew.
    pub fn add(&mut self, x: u32) -> bool {
        if self.mask[x as usize] {
            return false;
        }
        self.gens.push(x);
        let g = self.g;
        let old = self.elems.len();
        for i in 0..old {
            let y = g.mul(self.elems[i], x);
            if !self.mask[y as usize] {
                self.mask[y as usize] = true;
                self.elems.push(y);
            }
        }
        let mut i = old;
        while i < self.elems.len() {
            let e = self.elems[i];
            for k in 0..self.gens.len() {
                let y = g.mul(e, self.gens[k]);
                if !self.mask[y as usize] {
                    self.mask[y as usize] = true;
                    self.elems.push(y);
                }
            }
            i += 1;
        }
        true
    }

    pub fn into_subgroup(mut self, normal: Option<bool>) -> Subgroup {
        self.elems.sort_unstable();
        Subgroup::from_parts(self.g.clone(), Arc::new(self.elems), self.gens, normal)
    }
}
