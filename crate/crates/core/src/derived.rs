//! Commutator subgroups and the ordinary derived series.

use crate::error::Result;
use crate::group::{Closure, Group};
use crate::series::{FactorDescriptor, SeriesReport};
use crate::subgroup::Subgroup;

/// `G'`: normal closure of the commutators of generator pairs.
pub fn commutator_subgroup(g: &Group) -> Subgroup {
    derived_subgroup_of(&g.whole()).with_flag(Some(true))
}

/// `H'` for a subgroup `H`, computed inside the parent without building
/// `H` as a group of its own. Normal flag is left unset (it is normal in
/// `H`, not necessarily in the parent).
pub fn derived_subgroup_of(h: &Subgroup) -> Subgroup {
    let g = h.parent();
    let gens = h.generators();
    let mut c = Closure::new(g);
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            c.add(g.commutator(a, b));
        }
    }
    let mut i = 0;
    while i < c.gens.len() {
        let s = c.gens[i];
        for &t in gens {
            c.add(g.conj(s, t));
        }
        i += 1;
    }
    c.into_subgroup(None)
}

/// Terms `G >= G' >= G'' >= ...` as subgroups of `G`, stopping once a term
/// repeats (so the last term is trivial or perfect).
pub(crate) fn derived_terms(g: &Group) -> Vec<Subgroup> {
    let mut terms = vec![g.whole()];
    loop {
        let last = terms.last().expect("nonempty");
        if last.is_trivial() {
            break;
        }
        let next = derived_subgroup_of(last).with_flag(Some(true));
        if next.order() == last.order() {
            break;
        }
        terms.push(next);
    }
    terms
}

pub fn is_solvable(g: &Group) -> bool {
    derived_terms(g).last().expect("nonempty").is_trivial()
}

/// The derived series. `length` is the derived length when the series
/// reaches 1; otherwise it counts the strict steps before stabilizing and
/// `terminates` is false.
pub fn derived_series(g: &Group) -> Result<SeriesReport> {
    let terms = derived_terms(g);
    let mut factors = Vec::with_capacity(terms.len().saturating_sub(1));
    for w in terms.windows(2) {
        factors.push(FactorDescriptor::abelian_step(&w[0], &w[1])?);
    }
    let terminates = terms.last().expect("nonempty").is_trivial();
    Ok(SeriesReport { length: factors.len(), terms, factors, terminates })
}
