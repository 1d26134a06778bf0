//! Induced groups `Ind_{G0}^G(A)` and twisted wreath products
//! `A wr_{G0} G = Ind x| G`.
//!
//! An induced function `f: G -> A` with `f(st) = f(s)^t` for `t` in `G0` is
//! determined by its values on a fixed list of left coset representatives
//! `r_0 = 1, r_1, ...` of `G0` in `G`; the function with values `v_i` has
//! index `sum v_i |A|^i`. `G` acts by `f^s(t) = f(st)`: writing
//! `s r_i = r_j u` with `u` in `G0` gives `f^s(r_i) = f(r_j)^u`.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::construct::{action_table, quotient, semidirect_from_table};
use crate::error::{Error, Result};
use crate::group::{Group, Repr};
use crate::hom::Homomorphism;
use crate::series::generalized_derived_term;
use crate::subgroup::Subgroup;

/// A right action of a subgroup `G0` of `G` on a group `A` by automorphisms.
#[derive(Clone, Debug)]
pub struct GroupAction {
    actor: Subgroup,
    space: Group,
    /// `table[pos(s) * |A| + a] = a^s`, `pos` = position in `actor.members()`.
    table: Arc<Vec<u32>>,
}

impl GroupAction {
    /// Tabulates and validates `a^s = act(a, s)` for `s` in `actor` (given as
    /// elements of the parent group).
    pub fn new(space: &Group, actor: &Subgroup, act: impl Fn(u32, u32) -> u32) -> Result<GroupAction> {
        let (local, _) = actor.to_group();
        let members = actor.members();
        let table = action_table(space, &local, |a, y| act(a, members[y as usize]))?;
        Ok(GroupAction { actor: actor.clone(), space: space.clone(), table: Arc::new(table) })
    }

    pub fn trivial(space: &Group, actor: &Subgroup) -> GroupAction {
        let table = (0..actor.order()).flat_map(|_| space.elements()).collect();
        GroupAction { actor: actor.clone(), space: space.clone(), table: Arc::new(table) }
    }

    /// Builds an action from a partial table of entries `a^s = b`. For each
    /// listed `s` the images must determine an automorphism of `A` (the
    /// listed `a` generate `A`), and the listed `s` must generate `G0`.
    pub fn from_entries(space: &Group, actor: &Subgroup, entries: &[(u32, u32, u32)]) -> Result<GroupAction> {
        let n = space.order();
        let mut gens: Vec<(u32, Vec<u32>)> = Vec::new();
        let mut ss: Vec<u32> = entries.iter().map(|e| e.1).collect();
        ss.sort_unstable();
        ss.dedup();
        for &s in &ss {
            if !actor.contains(s) {
                return Err(Error::NotAnAction(format!("{} is not in G0", actor.parent().label(s))));
            }
            let listed: Vec<(u32, u32)> = entries.iter().filter(|e| e.1 == s).map(|e| (e.0, e.2)).collect();
            let mut img = vec![u32::MAX; n];
            img[0] = 0;
            let mut queue = VecDeque::from([0u32]);
            let set = |img: &mut Vec<u32>, x: u32, y: u32, queue: &mut VecDeque<u32>| -> Result<()> {
                match img[x as usize] {
                    u32::MAX => {
                        img[x as usize] = y;
                        queue.push_back(x);
                        Ok(())
                    }
                    old if old == y => Ok(()),
                    _ => Err(Error::NotAutomorphisms(format!(
                        "images under {} are not multiplicative",
                        actor.parent().label(s)
                    ))),
                }
            };
            for &(a, b) in &listed {
                set(&mut img, a, b, &mut queue)?;
            }
            while let Some(x) = queue.pop_front() {
                for &(a, b) in &listed {
                    let (xa, ya) = (space.mul(x, a), space.mul(img[x as usize], b));
                    set(&mut img, xa, ya, &mut queue)?;
                }
            }
            if img.contains(&u32::MAX) {
                return Err(Error::NotAnAction(format!(
                    "images under {} do not determine an automorphism",
                    actor.parent().label(s)
                )));
            }
            gens.push((s, img));
        }
        // extend over G0: a^(ts) = (a^t)^s
        let g = actor.parent();
        let members = actor.members();
        let pos = |x: u32| members.binary_search(&x).expect("in G0");
        let mut perms: Vec<Option<Vec<u32>>> = vec![None; members.len()];
        perms[0] = Some((0..n as u32).collect());
        let mut queue = VecDeque::from([0u32]);
        while let Some(t) = queue.pop_front() {
            let pt = perms[pos(t)].clone().expect("reached");
            for (s, q) in &gens {
                let ts = g.mul(t, *s);
                let img: Vec<u32> = pt.iter().map(|&y| q[y as usize]).collect();
                match &perms[pos(ts)] {
                    None => {
                        perms[pos(ts)] = Some(img);
                        queue.push_back(ts);
                    }
                    Some(old) if *old == img => {}
                    Some(_) => return Err(Error::NotAnAction("listed images are inconsistent with G0".into())),
                }
            }
        }
        if perms.iter().any(Option::is_none) {
            return Err(Error::NotAnAction("listed elements do not generate G0".into()));
        }
        let table: Vec<u32> = perms.into_iter().flatten().flatten().collect();
        GroupAction::new(space, actor, |a, s| table[pos(s) * n + a as usize])
    }

    pub fn actor(&self) -> &Subgroup {
        &self.actor
    }

    pub fn space(&self) -> &Group {
        &self.space
    }

    /// `G`, the parent of the actor.
    pub fn group(&self) -> &Group {
        self.actor.parent()
    }

    /// `a^s` for `s` in `G0` (an element of `G`).
    pub fn apply(&self, a: u32, s: u32) -> u32 {
        let p = self.actor.members().binary_search(&s).expect("acting element lies in G0");
        self.table[p * self.space.order() + a as usize]
    }

    pub fn is_trivial(&self) -> bool {
        self.table.chunks(self.space.order()).all(|row| row.iter().enumerate().all(|(a, &b)| a as u32 == b))
    }
}

/// `Ind_{G0}^G(A)` together with the action of `G` on it.
#[derive(Clone, Debug)]
pub struct InducedModule {
    pub group: Group,
    pub action: GroupAction,
    /// Left coset representatives of `G0` in `G`, identity first.
    pub reps: Vec<u32>,
    /// `shift[s * r + i] = (j, u)` with `s r_i = r_j u`.
    shift: Arc<Vec<(u32, u32)>>,
    /// `g_table[s * |Ind| + f] = f^s`.
    g_table: Arc<Vec<u32>>,
}

impl InducedModule {
    /// `[G : G0]`.
    pub fn rank(&self) -> usize {
        self.reps.len()
    }

    /// Values `f(r_0), f(r_1), ...`.
    pub fn values(&self, f: u32) -> Vec<u32> {
        let base = self.action.space.order() as u64;
        let mut x = f as u64;
        (0..self.rank())
            .map(|_| {
                let v = (x % base) as u32;
                x /= base;
                v
            })
            .collect()
    }

    pub fn from_values(&self, values: &[u32]) -> u32 {
        encode(values, self.action.space.order())
    }

    /// `f(t)` for any `t` in `G`.
    pub fn eval(&self, f: u32, t: u32) -> u32 {
        // t = t r_0 = r_j u
        let (j, u) = self.shift[t as usize * self.rank()];
        self.action.apply(self.values(f)[j as usize], u)
    }

    /// `f^s`.
    pub fn act(&self, f: u32, s: u32) -> u32 {
        self.g_table[s as usize * self.group.order() + f as usize]
    }
}

fn encode(values: &[u32], base: usize) -> u32 {
    values.iter().rev().fold(0u64, |acc, &v| acc * base as u64 + v as u64) as u32
}

/// Left coset representatives of `g0` in its parent, least member first.
fn left_coset_reps(g0: &Subgroup) -> (Vec<u32>, Vec<u32>) {
    let g = g0.parent();
    let mut coset_of = vec![u32::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset_of[x as usize] == u32::MAX {
            for &t in g0.members() {
                coset_of[g.mul(x, t) as usize] = reps.len() as u32;
            }
            reps.push(x);
        }
    }
    (reps, coset_of)
}

pub fn induced_group(act: &GroupAction) -> Result<InducedModule> {
    let a = &act.space;
    let g = act.group();
    let caps = g.caps();
    let (reps, coset_of) = left_coset_reps(&act.actor);
    let r = reps.len();
    let order = (a.order() as u64)
        .checked_pow(r as u32)
        .filter(|&n| n <= caps.closure as u64)
        .ok_or_else(|| Error::cap("induced group order", caps.closure))? as usize;

    let mut shift = Vec::with_capacity(g.order() * r);
    for s in g.elements() {
        for &ri in &reps {
            let x = g.mul(s, ri);
            let j = coset_of[x as usize];
            let u = g.mul(g.inv(reps[j as usize]), x);
            shift.push((j, u));
        }
    }
    let base = a.order() as u32;
    let decode = move |mut f: u32| -> Vec<u32> {
        (0..r)
            .map(|_| {
                let v = f % base;
                f /= base;
                v
            })
            .collect()
    };
    let inverses = (0..order as u32)
        .map(|f| encode(&decode(f).iter().map(|&v| a.inv(v)).collect::<Vec<_>>(), a.order()))
        .collect();
    let mut gens = Vec::new();
    for i in 0..r {
        for &x in a.generators() {
            gens.push(x * base.pow(i as u32));
        }
    }
    let a2 = a.clone();
    let group = Group::assemble(
        format!("Ind({})^{}", a.name(), r),
        order,
        inverses,
        gens,
        move |f1, f2| {
            let (v1, v2) = (decode(f1), decode(f2));
            let prod: Vec<u32> = v1.iter().zip(&v2).map(|(&x, &y)| a2.mul(x, y)).collect();
            encode(&prod, a2.order())
        },
        Repr::Functions { values: a.clone(), slots: r },
        caps,
    )?;

    let mut g_table = Vec::with_capacity(g.order() * order);
    let mut vals = vec![0u32; r];
    for s in g.elements() {
        let sh = &shift[s as usize * r..(s as usize + 1) * r];
        for f in 0..order as u32 {
            let v = decode(f);
            for i in 0..r {
                let (j, u) = sh[i];
                vals[i] = act.apply(v[j as usize], u);
            }
            g_table.push(encode(&vals, a.order()));
        }
    }
    Ok(InducedModule { group, action: act.clone(), reps, shift: Arc::new(shift), g_table: Arc::new(g_table) })
}

/// An element `(f, s)` of a twisted wreath product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathElement {
    pub index: u32,
    /// `f(r_0), f(r_1), ...` on the coset representatives.
    pub values: Vec<u32>,
    pub outer: u32,
    pub label: String,
}

/// `A wr_{G0} G` with its distinguished subgroups. Element `(f, s)` has
/// index `f * |G| + s`.
#[derive(Clone, Debug)]
pub struct TwistedWreath {
    pub group: Group,
    pub ind: InducedModule,
    /// `Ind` as a normal subgroup.
    pub base: Subgroup,
    /// `Ind x| G0`.
    pub base_g0: Subgroup,
    /// The complement `{(1, s)}`.
    pub top: Subgroup,
}

impl TwistedWreath {
    pub fn index_of(&self, f: u32, s: u32) -> u32 {
        f * self.ind.action.group().order() as u32 + s
    }

    pub fn element(&self, x: u32) -> WreathElement {
        let n = self.ind.action.group().order() as u32;
        WreathElement { index: x, values: self.ind.values(x / n), outer: x % n, label: self.group.label(x) }
    }

    /// `Ind` of the wreath product, materialized as a subgroup.
    fn embed_ind(&self, sub: &Subgroup) -> Subgroup {
        let gens: Vec<u32> = sub.generators().iter().map(|&f| self.index_of(f, 0)).collect();
        self.group.generate(&gens)
    }
}

pub fn twisted_wreath_product(act: &GroupAction) -> Result<TwistedWreath> {
    let ind = induced_group(act)?;
    let g = act.group();
    let caps = g.caps();
    let order = ind
        .group
        .order()
        .checked_mul(g.order())
        .filter(|&n| n <= caps.closure)
        .ok_or_else(|| Error::cap("wreath product order", caps.closure))?;
    let name = format!("{} wr_{} {}", act.space.name(), act.actor.order(), g.name());
    let group = semidirect_from_table(&ind.group, g, ind.g_table.clone(), name, order)?;
    let n = g.order() as u32;
    let base = group.generate(&ind.group.generators().iter().map(|&f| f * n).collect::<Vec<_>>()).with_flag(Some(true));
    let mut g0_gens: Vec<u32> = base.generators().to_vec();
    g0_gens.extend(act.actor.generators());
    let base_g0 = group.generate(&g0_gens);
    let top = group.generate(g.generators());
    Ok(TwistedWreath { group, ind, base, base_g0, top })
}

/// The map `(f, s) -> (f mod A0, s)` onto `(A/A0) wr_{G0} G`.
#[derive(Clone, Debug)]
pub struct WreathQuotient {
    pub source: TwistedWreath,
    pub target: TwistedWreath,
    pub map: Homomorphism,
    /// `A -> A/A0`.
    pub space_map: Homomorphism,
}

/// Quotient of `A wr_{G0} G` by `Ind(A0)` for a `G0`-invariant normal
/// subgroup `A0` of `A`.
pub fn wreath_quotient(act: &GroupAction, a0: &Subgroup) -> Result<WreathQuotient> {
    let a = &act.space;
    if !a0.parent().same(a) {
        return Err(Error::InvalidInput("A0 is not a subgroup of A".into()));
    }
    if !a0.is_normal() {
        return Err(Error::NotNormal);
    }
    for &s in act.actor.generators() {
        if a0.generators().iter().any(|&x| !a0.contains(act.apply(x, s))) {
            return Err(Error::NotInvariant);
        }
    }
    let (abar, pi) = quotient(a, a0)?;
    let reps: Vec<u32> = {
        let mut reps = vec![u32::MAX; abar.order()];
        for x in a.elements().rev() {
            reps[pi.apply(x) as usize] = x;
        }
        reps
    };
    let act_bar = GroupAction::new(&abar, &act.actor, |c, s| pi.apply(act.apply(reps[c as usize], s)))?;
    let source = twisted_wreath_product(act)?;
    let target = twisted_wreath_product(&act_bar)?;
    let n = act.group().order() as u32;
    let map: Vec<u32> = source
        .group
        .elements()
        .map(|x| {
            let vals: Vec<u32> = source.ind.values(x / n).iter().map(|&v| pi.apply(v)).collect();
            target.index_of(target.ind.from_values(&vals), x % n)
        })
        .collect();
    let map = Homomorphism::new(source.group.clone(), target.group.clone(), map)?;
    Ok(WreathQuotient { source, target, map, space_map: pi })
}

/// `W >= Ind x| G0 >= Ind >= {f : f(1) = 1} >= 1` with the successive
/// indices `[G:G0], |G0|, |A|, |A|^([G:G0]-1)`.
#[derive(Clone, Debug)]
pub struct RealizationChain {
    pub terms: Vec<Subgroup>,
    pub indices: Vec<usize>,
}

pub fn realization_chain(w: &TwistedWreath) -> RealizationChain {
    let a = w.ind.action.space();
    let base = a.order() as u32;
    // f(r_0) = 1 means the lowest digit of f is 0
    let fixed: Vec<u32> = w
        .ind
        .group
        .generators()
        .iter()
        .copied()
        .filter(|&f| f % base == 0)
        .collect();
    let kernel = w.ind.group.generate(&fixed);
    let terms = vec![
        w.group.whole(),
        w.base_g0.clone(),
        w.base.clone(),
        w.embed_ind(&kernel),
        w.group.trivial_subgroup(),
    ];
    let indices = terms.windows(2).map(|t| t[0].order() / t[1].order()).collect();
    RealizationChain { terms, indices }
}

/// Whether `[G^(m) G0 : G0] = |G^(m)| / |G^(m) ∩ G0|` exceeds `2^m`.
pub fn msigma_hypothesis(g: &Group, g0: &Subgroup, m: usize) -> Result<bool> {
    let gm = generalized_derived_term(g, m)?;
    let index = gm.order() / gm.intersect(g0).order();
    Ok(m < usize::BITS as usize - 1 && index > 1usize << m)
}

/// The least nontrivial element of `H^(m+1) ∩ Ind` for `H = A wr_{G0} G`,
/// or `None` if the intersection is trivial. When the hypothesis
/// `[G^(m) G0 : G0] > 2^m` holds a witness must exist.
pub fn msigma_witness(act: &GroupAction, m: usize) -> Result<Option<WreathElement>> {
    if act.space.is_trivial() {
        return Err(Error::InvalidInput("A must be nontrivial".into()));
    }
    let w = twisted_wreath_product(act)?;
    let hm = generalized_derived_term(&w.group, m + 1)?;
    let meet = hm.intersect(&w.base);
    let witness = meet.members().get(1).map(|&x| w.element(x));
    if witness.is_none() && msigma_hypothesis(act.group(), &act.actor, m)? {
        return Err(Error::PropositionViolated(format!(
            "[G^({m})G0:G0] > 2^{m} but H^({}) ∩ Ind is trivial",
            m + 1
        )));
    }
    Ok(witness)
}
