//! Named verification suites. Each suite is a list of independent cases run
//! in parallel; results come back in case order, so a report never depends
//! on the thread count.

use std::fmt;

use rayon::prelude::*;

use crate::catalog::{self, Entry};
use crate::construct::{direct_product, fiber_product, quotient};
use crate::derived::{derived_series, is_solvable};
use crate::error::{Error, Result};
use crate::fp::{self, GSet, LinearAction};
use crate::group::{Caps, Group};
use crate::hom::Homomorphism;
use crate::iso;
use crate::lp::{corollary_decomposition, search_lp, validate_lp};
use crate::matrix;
use crate::normal::{all_normal_subgroups, intersect_all, product_normal_decomposition, SimpleProduct};
use crate::oracle;
use crate::series::{abelian_simple_length, generalized_derived_series, generalized_derived_subgroup, SeriesReport};
use crate::subgroup::Subgroup;
use crate::wreath::{self, GroupAction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    LogLength,
    SolvableCoincidence,
    QuotientLaw,
    NormalLaw,
    FiberLaw,
    ExtensionLaw,
    ProductDecomposition,
    ExactSequence,
    Msigma,
    SimpleNonabelian,
    NontrivialAction,
    Trvrep,
    Kernel,
    Lp,
    SnBound,
    Unipotent,
    OracleAgreement,
}

impl Suite {
    pub const ALL: [Suite; 17] = [
        Suite::LogLength,
        Suite::SolvableCoincidence,
        Suite::QuotientLaw,
        Suite::NormalLaw,
        Suite::FiberLaw,
        Suite::ExtensionLaw,
        Suite::ProductDecomposition,
        Suite::ExactSequence,
        Suite::Msigma,
        Suite::SimpleNonabelian,
        Suite::NontrivialAction,
        Suite::Trvrep,
        Suite::Kernel,
        Suite::Lp,
        Suite::SnBound,
        Suite::Unipotent,
        Suite::OracleAgreement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::LogLength => "log-length",
            Suite::SolvableCoincidence => "solvable-coincidence",
            Suite::QuotientLaw => "quotient-law",
            Suite::NormalLaw => "normal-law",
            Suite::FiberLaw => "fiber-law",
            Suite::ExtensionLaw => "extension-law",
            Suite::ProductDecomposition => "product-decomposition",
            Suite::ExactSequence => "exact-sequence",
            Suite::Msigma => "msigma",
            Suite::SimpleNonabelian => "simple-nonabelian",
            Suite::NontrivialAction => "nontrivial-action",
            Suite::Trvrep => "trvrep",
            Suite::Kernel => "kernel",
            Suite::Lp => "lp",
            Suite::SnBound => "sn-bound",
            Suite::Unipotent => "unipotent",
            Suite::OracleAgreement => "oracle-agreement",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    /// The statement the suite checks, used as its report header.
    pub fn claim(self) -> &'static str {
        match self {
            Suite::LogLength => "l(G) <= log2|G| for every catalog group",
            Suite::SolvableCoincidence => "for solvable G the generalized derived series is the derived series",
            Suite::QuotientLaw => {
                "pi(G^(i)) = (G/N)^(i) for every normal N, so l(G/N) <= l(G); \
                 l(G) = max l(G/N) over any family of normals with trivial intersection"
            }
            Suite::NormalLaw => "N^(i) <= G^(i) for every normal N",
            Suite::FiberLaw => "l(G x_K H) <= max(l(G), l(H))",
            Suite::ExtensionLaw => "l(G) <= l(N) + l(G/N) for every normal N",
            Suite::ProductDecomposition => {
                "a normal N of A x S_1 x ... x S_k is (N ∩ A) x prod_J S_i and G/N = AN/N x prod_{i not in J} S_i"
            }
            Suite::ExactSequence => "1 -> Ind(A0) -> A wr G -> (A/A0) wr G -> 1 is exact, and quotients compose",
            Suite::Msigma => "[G^(m)G0 : G0] > 2^m implies H^(m+1) ∩ Ind != 1 for H = A wr_G0 G",
            Suite::SimpleNonabelian => "for A nonabelian simple, H^(m+1) = Ind x| G^(m+1) under the index hypothesis",
            Suite::NontrivialAction => "for A a nontrivial irreducible F_p G0-module, H' = Ind x| G'",
            Suite::Trvrep => "some G^(m)-orbit on X larger than 2^m implies V_(m+1)(G, X) != 0",
            Suite::Kernel => "ker(GL_n(Z/l^k) -> GL_n(Z/l)) has order l^(n^2 (k-1))",
            Suite::Lp => "filtrations found by search_lp validate; the decomposition N is a normal l-group with l(Λ/N) <= log2 J + 2",
            Suite::SnBound => "l(S_n) <= 3, and l(G) <= log2(d!) for transitive G <= S_d",
            Suite::Unipotent => "U(n,p) has derived length at most n - 1",
            Suite::OracleAgreement => "lattice, D(G) and l(G) agree with brute-force enumeration",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Bound on catalog-driven cases; fixed instances always run.
    pub max_order: usize,
    pub caps: Caps,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Options { max_order: 200, caps: Caps::default(), threads: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    /// A cap was hit before the case could be decided.
    Skip,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    pub case: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub claim: String,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn count(&self, status: Status) -> usize {
        self.cases.iter().filter(|c| c.status == status).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0 && self.count(Status::Skip) == 0
    }
}

type Check = Result<(bool, String)>;

struct Case {
    name: String,
    run: Box<dyn Fn() -> Check + Send + Sync>,
}

fn case(name: impl Into<String>, run: impl Fn() -> Check + Send + Sync + 'static) -> Case {
    Case { name: name.into(), run: Box::new(run) }
}

fn execute(cases: Vec<Case>) -> Vec<CaseResult> {
    cases
        .par_iter()
        .map(|c| {
            let (status, detail) = match (c.run)() {
                Ok((true, d)) => (Status::Pass, d),
                Ok((false, d)) => (Status::Fail, d),
                Err(e) if e.is_cap() => (Status::Skip, e.to_string()),
                Err(e) => (Status::Fail, format!("error: {e}")),
            };
            CaseResult { case: c.name.clone(), status, detail }
        })
        .collect()
}

fn in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

pub fn run(suite: Suite, opts: &Options) -> Result<SuiteReport> {
    Ok(run_many(&[suite], opts)?.remove(0))
}

pub fn run_all(opts: &Options) -> Result<Vec<SuiteReport>> {
    run_many(&Suite::ALL, opts)
}

pub fn run_many(suites: &[Suite], opts: &Options) -> Result<Vec<SuiteReport>> {
    in_pool(opts.threads, || {
        suites
            .iter()
            .map(|&s| {
                let cases = build(s, opts)?;
                Ok(SuiteReport { suite: s, claim: s.claim().to_string(), cases: execute(cases) })
            })
            .collect()
    })?
}

fn build(suite: Suite, o: &Options) -> Result<Vec<Case>> {
    match suite {
        Suite::LogLength => log_length(o),
        Suite::SolvableCoincidence => solvable_coincidence(o),
        Suite::QuotientLaw => per_group(o, 48, quotient_law),
        Suite::NormalLaw => per_group(o, 48, normal_law),
        Suite::FiberLaw => fiber_law(o),
        Suite::ExtensionLaw => per_group(o, 48, extension_law),
        Suite::ProductDecomposition => product_decomposition(o),
        Suite::ExactSequence => exact_sequence(o),
        Suite::Msigma => msigma(o),
        Suite::SimpleNonabelian => simple_nonabelian(o),
        Suite::NontrivialAction => nontrivial_action(o),
        Suite::Trvrep => trvrep(o),
        Suite::Kernel => kernel(o),
        Suite::Lp => lp(o),
        Suite::SnBound => sn_bound(o),
        Suite::Unipotent => unipotent(o),
        Suite::OracleAgreement => oracle_agreement(o),
    }
}

fn catalog(o: &Options, bound: usize) -> Result<Vec<Entry>> {
    catalog::full_with(o.max_order.min(bound), o.caps)
}

fn per_group(o: &Options, bound: usize, check: fn(&Group) -> Check) -> Result<Vec<Case>> {
    Ok(catalog(o, bound)?
        .into_iter()
        .map(|e| {
            let g = e.group;
            case(e.name, move || check(&g))
        })
        .collect())
}

fn term(series: &SeriesReport, i: usize) -> Subgroup {
    series.terms.get(i).cloned().unwrap_or_else(|| series.terms[0].parent().trivial_subgroup())
}

/// `2^l <= n`, exactly.
fn pow2_le(l: usize, n: usize) -> bool {
    l < usize::BITS as usize && 1usize << l <= n
}

fn log_length(o: &Options) -> Result<Vec<Case>> {
    per_group(o, usize::MAX, |g| {
        let l = abelian_simple_length(g)?;
        Ok((pow2_le(l, g.order()), format!("l = {l}, |G| = {}", g.order())))
    })
}

fn solvable_coincidence(o: &Options) -> Result<Vec<Case>> {
    Ok(catalog(o, usize::MAX)?
        .into_iter()
        .filter(|e| is_solvable(&e.group))
        .map(|e| {
            let g = e.group;
            case(e.name, move || {
                let gen = generalized_derived_series(&g)?;
                let der = derived_series(&g)?;
                let same = gen.terms.len() == der.terms.len()
                    && gen.terms.iter().zip(&der.terms).all(|(a, b)| a.members() == b.members());
                Ok((same, format!("orders {:?}", gen.orders())))
            })
        })
        .collect())
}

fn quotient_law(g: &Group) -> Check {
    let series = generalized_derived_series(g)?;
    let lg = series.length;
    let lattice = all_normal_subgroups(g)?;
    let mut shorter = Vec::new();
    for n in lattice.subgroups() {
        let (q, pi) = quotient(g, n)?;
        let qs = generalized_derived_series(&q)?;
        for i in 0..=lg {
            if pi.image_of(&term(&series, i)).members() != term(&qs, i).members() {
                return Ok((false, format!("image of G^({i}) differs from (G/N)^({i}) for |N| = {}", n.order())));
            }
        }
        if qs.length > lg {
            return Ok((false, format!("l(G/N) = {} > l(G) = {lg}", qs.length)));
        }
        if qs.length < lg {
            shorter.push(n.clone());
        }
    }
    // A family with trivial intersection and sup l(G/N) < l(G) exists iff
    // the normals with l(G/N) < l(G) meet trivially.
    if !g.is_trivial() && intersect_all(g, &shorter).is_trivial() {
        return Ok((false, "normals with l(G/N) < l(G) intersect trivially".into()));
    }
    Ok((true, format!("{} normal subgroups, l = {lg}", lattice.len())))
}

fn normal_law(g: &Group) -> Check {
    let series = generalized_derived_series(g)?;
    let lattice = all_normal_subgroups(g)?;
    for n in lattice.subgroups() {
        let (h, emb) = n.to_group();
        let hs = generalized_derived_series(&h)?;
        for (i, t) in hs.terms.iter().enumerate() {
            if !emb.image_of(t).is_subset_of(&term(&series, i)) {
                return Ok((false, format!("N^({i}) not in G^({i}) for |N| = {}", n.order())));
            }
        }
    }
    Ok((true, format!("{} normal subgroups", lattice.len())))
}

fn extension_law(g: &Group) -> Check {
    let l = abelian_simple_length(g)?;
    let lattice = all_normal_subgroups(g)?;
    for n in lattice.subgroups() {
        let ln = abelian_simple_length(&n.to_group().0)?;
        let lq = abelian_simple_length(&quotient(g, n)?.0)?;
        if l > ln + lq {
            return Ok((false, format!("l(G) = {l} > {ln} + {lq} for |N| = {}", n.order())));
        }
    }
    Ok((true, format!("{} normal subgroups, l = {l}", lattice.len())))
}

/// A surjection `g -> k` through the first normal subgroup (in lattice
/// order) whose quotient is isomorphic to `k`.
fn onto(g: &Group, k: &Group) -> Result<Homomorphism> {
    for n in all_normal_subgroups(g)?.subgroups() {
        if n.index() != k.order() {
            continue;
        }
        let (q, pi) = quotient(g, n)?;
        if let Some(iso) = iso::isomorphism(&q, k) {
            return pi.then(&iso);
        }
    }
    Err(Error::InvalidInput(format!("{} has no quotient isomorphic to {}", g.name(), k.name())))
}

/// Small named groups used by fixed instances.
fn named(name: &str, caps: Caps) -> Result<Group> {
    if let Some((a, b)) = name.split_once(" x ") {
        return Ok(direct_product(&named(a, caps)?, &named(b, caps)?)?.group);
    }
    let (head, n) = name.split_at(name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len()));
    let num = || n.parse::<usize>().map_err(|_| Error::InvalidInput(name.into()));
    match (head, name) {
        (_, "1") => Ok(Group::trivial()),
        (_, "Q8") => catalog::quaternion_with(caps),
        (_, "V4") => catalog::klein_four_with(caps),
        (_, "GL(2,3)") => matrix::gl(2, 3, caps),
        (_, "SL(2,3)") => matrix::sl(2, 3, caps),
        (_, "SL(2,5)") => matrix::sl(2, 5, caps),
        (_, "U(3,3)") => matrix::unitriangular(3, 3, caps),
        ("C", _) => catalog::cyclic_with(num()?, caps),
        ("D", _) => catalog::dihedral_with(num()?, caps),
        ("S", _) => catalog::symmetric_with(num()?, caps),
        ("A", _) => catalog::alternating_with(num()?, caps),
        _ => Err(Error::InvalidInput(format!("unknown group {name}"))),
    }
}

/// `(G, H, K)` with surjections of `G` and `H` onto `K`.
pub const FIBER_TRIPLES: [(&str, &str, &str); 20] = [
    ("S3", "S3", "C2"),
    ("S4", "S3", "C2"),
    ("S4", "S4", "S3"),
    ("GL(2,3)", "S4", "S3"),
    ("D4", "Q8", "V4"),
    ("D4", "Q8", "C2"),
    ("A4", "C3", "C3"),
    ("SL(2,3)", "A4", "C3"),
    ("SL(2,5)", "A5", "A5"),
    ("A5 x C2", "SL(2,5)", "A5"),
    ("S5", "S4", "C2"),
    ("C6", "S3", "C2"),
    ("C4", "Q8", "C2"),
    ("D6", "S4", "S3"),
    ("D5", "C10", "C2"),
    ("S3", "A4", "1"),
    ("C8", "C4", "C4"),
    ("S3 x S3", "S3", "S3"),
    ("GL(2,3)", "D6", "C2"),
    ("U(3,3)", "C3 x C3", "C3 x C3"),
];

fn fiber_law(o: &Options) -> Result<Vec<Case>> {
    let caps = o.caps;
    Ok(FIBER_TRIPLES
        .iter()
        .map(|&(g, h, k)| {
            case(format!("{g} x_{k} {h}"), move || {
                let (g, h, k) = (named(g, caps)?, named(h, caps)?, named(k, caps)?);
                let f = fiber_product(&onto(&g, &k)?, &onto(&h, &k)?)?;
                let expected = g.order() * h.order() / k.order();
                let (lf, lg, lh) = (abelian_simple_length(&f.group)?, abelian_simple_length(&g)?, abelian_simple_length(&h)?);
                Ok((
                    f.group.order() == expected && lf <= lg.max(lh),
                    format!("|F| = {}, l(F) = {lf}, l(G) = {lg}, l(H) = {lh}", f.group.order()),
                ))
            })
        })
        .collect())
}

/// `(A, simple factors)`.
const PRODUCTS: [(&str, &[&str]); 6] = [
    ("1", &["A5"]),
    ("C2", &["A5"]),
    ("C3", &["A5"]),
    ("V4", &["A5"]),
    ("C6", &["A5"]),
    ("1", &["A5", "A5"]),
];

fn product_decomposition(o: &Options) -> Result<Vec<Case>> {
    let caps = o.caps;
    Ok(PRODUCTS
        .iter()
        .map(|&(a, simples)| {
            case(format!("{a} x {}", simples.join(" x ")), move || {
                let a = named(a, caps)?;
                let s = simples.iter().map(|s| named(s, caps)).collect::<Result<Vec<_>>>()?;
                check_product(&SimpleProduct::new(&a, &s)?)
            })
        })
        .collect())
}

fn check_product(prod: &SimpleProduct) -> Check {
    let lattice = all_normal_subgroups(&prod.group)?;
    let stride = prod.group.order() / prod.abelian.order();
    for n in lattice.subgroups() {
        let (na, j) = product_normal_decomposition(prod, n)?;
        let members: Vec<u32> = na.members().iter().map(|&x| x / stride as u32).collect();
        let a0 = Subgroup::from_members(&prod.abelian, &members)?;
        let mut expected = quotient(&prod.abelian, &a0)?.0;
        for (i, s) in prod.simples.iter().enumerate() {
            if !j.contains(&i) {
                expected = direct_product(&expected, s)?.group;
            }
        }
        let (q, _) = quotient(&prod.group, n)?;
        if !iso::is_isomorphic(&q, &expected) {
            return Ok((false, format!("G/N not isomorphic to the predicted product for |N| = {}", n.order())));
        }
    }
    Ok((true, format!("{} normal subgroups", lattice.len())))
}

fn perm_sub(g: &Group, cycles: &[&str]) -> Result<Subgroup> {
    let gens = cycles
        .iter()
        .map(|c| g.find_label(c).ok_or_else(|| Error::InvalidInput(format!("{c} not in {}", g.name()))))
        .collect::<Result<Vec<_>>>()?;
    Ok(g.generate(&gens))
}

fn inversion(a: &Group, g0: &Subgroup) -> Result<GroupAction> {
    let a2 = a.clone();
    GroupAction::new(a, g0, move |x, s| if s == 0 { x } else { a2.inv(x) })
}

fn exact_sequence(o: &Options) -> Result<Vec<Case>> {
    let caps = o.caps;
    let mut cases = Vec::new();
    for twisted in [false, true] {
        cases.push(case(format!("C4 wr_C2 S3, A0 = C2, {}", if twisted { "inversion" } else { "trivial action" }), move || {
            let a = catalog::cyclic_with(4, caps)?;
            let s3 = catalog::symmetric_with(3, caps)?;
            let g0 = perm_sub(&s3, &["(1 2)"])?;
            let act = if twisted { inversion(&a, &g0)? } else { GroupAction::trivial(&a, &g0) };
            check_exact(&act, &a.generate(&[2]), &a.whole())
        }));
    }
    cases.push(case("C8 wr_1 C3, C2 < C4", move || {
        let a = catalog::cyclic_with(8, caps)?;
        let c3 = catalog::cyclic_with(3, caps)?;
        let act = GroupAction::trivial(&a, &c3.trivial_subgroup());
        check_exact(&act, &a.generate(&[4]), &a.generate(&[2]))
    }));
    Ok(cases)
}

/// Exactness at `A0`, and `W -> W/Ind(A0) -> W/Ind(A1)` agreeing with
/// `W -> W/Ind(A1)` for `A0 <= A1`.
fn check_exact(act: &GroupAction, a0: &Subgroup, a1: &Subgroup) -> Check {
    let q = wreath::wreath_quotient(act, a0)?;
    let n = act.group().order() as u32;
    let rank = q.source.ind.rank() as u32;
    let kernel = q.map.kernel();
    // the kernel is Ind(A0): functions with values in A0, no G part
    let is_ind_a0 = kernel.order() == (a0.order() as u32).pow(rank) as usize
        && kernel.members().iter().all(|&x| x % n == 0 && q.source.ind.values(x / n).iter().all(|&v| a0.contains(v)));
    let exact = q.map.is_surjective() && is_ind_a0;
    let abar = q.space_map.image_of(a1);
    let act_bar = &q.target.ind.action;
    let q2 = wreath::wreath_quotient(act_bar, &abar)?;
    let direct = wreath::wreath_quotient(act, a1)?;
    // q2 is built on a fresh copy of q's target with identical indexing
    let composite: Vec<u32> = q.source.group.elements().filter(|&x| q2.map.apply(q.map.apply(x)) == 0).collect();
    let composes = composite == direct.map.kernel().members() && q2.target.group.order() == direct.target.group.order();
    Ok((
        exact && composes,
        format!("|W| = {}, |ker| = {}, composite kernel order {}", q.source.group.order(), kernel.order(), composite.len()),
    ))
}

fn msigma(o: &Options) -> Result<Vec<Case>> {
    let caps = o.caps;
    // (A, G, G0 generators, m, expect witness)
    let instances: Vec<(&str, &str, Vec<&'static str>, usize, bool)> = vec![
        ("C2", "C3", vec![], 0, true),
        ("C2", "C2", vec![], 0, true),
        ("C2", "A4", vec!["(1 2 3)"], 1, true),
        ("C2", "C2", vec!["self"], 0, false),
        ("C3", "S3", vec![], 0, true),
        ("V4", "C3", vec![], 0, true),
    ];
    Ok(instances
        .into_iter()
        .map(|(a, g, g0, m, expect)| {
            let label = if g0.is_empty() { "1".to_string() } else { g0.join(",") };
            case(format!("{a} wr_<{label}> {g}, m = {m}"), move || {
                let (a, g) = (named(a, caps)?, named(g, caps)?);
                let g0 = if g0 == ["self"] { g.whole() } else { perm_sub(&g, &g0)? };
                let act = GroupAction::trivial(&a, &g0);
                let hyp = wreath::msigma_hypothesis(&g, &g0, m)?;
                let w = wreath::msigma_witness(&act, m)?;
                let order = a.order().pow((g.order() / g0.order()) as u32) * g.order();
                let ok = w.is_some() == expect && (!hyp || w.is_some());
                let found = w.map_or("none".to_string(), |w| w.label);
                Ok((ok, format!("|H| = {order}, hypothesis {hyp}, witness {found}")))
            })
        })
        .collect())
}

fn simple_nonabelian(o: &Options) -> Result<Vec<Case>> {
    let caps = o.caps;
    Ok(vec![case("A5 wr_1 C2, m = 0", move || {
        let a = catalog::alternating_with(5, caps)?;
        let g = catalog::cyclic_with(2, caps)?;
        let act = GroupAction::trivial(&a, &g.trivial_subgroup());
        let hyp = wreath::msigma_hypothesis(&g, &g.trivial_subgroup(), 0)?;
        let w = wreath::twisted_wreath_product(&act)?;
        let h1 = crate::series::generalized_derived_term(&w.group, 1)?;
        // G^(1) = 1, so Ind x| G^(1) = Ind
        let ok = hyp && h1.members() == w.base.members() && h1.order() == 3600;
        Ok((ok, format!("|H| = {}, |H^(1)| = {}, backend {:?}", w.group.order(), h1.order(), w.group.backend())))
    })])
}

/// `A = F_2^2`, `G0 = A3 <= S3` acting through an element of order 3 of
/// `GL_2(F_2)`.
pub fn nontrivial_action_instance(caps: Caps) -> Result<(LinearAction, wreath::TwistedWreath)> {
    let s3 = catalog::symmetric_with(3, caps)?;
    let g0 = perm_sub(&s3, &["(1 2 3)"])?;
    let c = s3.find_label("(1 2 3)").expect("3-cycle");
    let lin = LinearAction::new(&g0, 2, 2, &[(c, vec![0, 1, 1, 1])])?;
    let w = wreath::twisted_wreath_product(&lin.to_group_action()?)?;
    Ok((lin, w))
}

fn nontrivial_action(o: &Options) -> Result<Vec<Case>> {
    let caps = o.caps;
    Ok(vec![case("F2^2 wr_C3 S3", move || {
        let (lin, w) = nontrivial_action_instance(caps)?;
        let irreducible = fp::is_irreducible(&lin)? && !lin.is_trivial();
        let derived = crate::derived::commutator_subgroup(&w.group);
        let g = w.ind.action.group();
        let g_derived = crate::derived::commutator_subgroup(g);
        let mut gens: Vec<u32> = w.base.generators().to_vec();
        gens.extend(g_derived.generators().iter().map(|&s| w.index_of(0, s)));
        let predicted = w.group.generate(&gens);
        let ok = irreducible && derived.members() == predicted.members();
        Ok((ok, format!("|H| = {}, |H'| = {}, |Ind x| G'| = {}", w.group.order(), derived.order(), predicted.order())))
    })])
}

/// Cyclic and normal subgroups, deduplicated, in order of first appearance.
fn some_subgroups(g: &Group) -> Result<Vec<Subgroup>> {
    let mut out: Vec<Subgroup> = Vec::new();
    let mut push = |s: Subgroup| {
        if !out.iter().any(|t| t.members() == s.members()) {
            out.push(s);
        }
    };
    for x in g.elements() {
        push(g.generate(&[x]));
    }
    for n in all_normal_subgroups(g)?.subgroups() {
        push(n.clone());
    }
    Ok(out)
}

fn trvrep(o: &Options) -> Result<Vec<Case>> {
    let mut cases = per_group(o, 48, |g| {
        let mut checked = 0;
        for g0 in some_subgroups(g)? {
            let x = GSet::right_cosets(&g0)?;
            for p in [2, 3] {
                let chain = fp::v_chain(&x, p, 2)?;
                for w in chain.windows(2) {
                    if !w[1].is_subspace_of(&w[0]) {
                        return Ok((false, "V chain not decreasing".into()));
                    }
                }
                for m in [0, 1] {
                    if fp::orbit_hypothesis(&x, m)? {
                        checked += 1;
                        if chain[m + 1].is_zero() {
                            return Ok((false, format!("V_{} = 0 for |G0| = {}, p = {p}", m + 1, g0.order())));
                        }
                    }
                }
            }
        }
        Ok((true, format!("{checked} instances with the orbit hypothesis")))
    })?;
    let caps = o.caps;
    cases.push(case("C2 on 2 points, p = 2", move || {
        let c2 = catalog::cyclic_with(2, caps)?;
        let dims: Vec<usize> = fp::v_chain(&GSet::right_cosets(&c2.trivial_subgroup())?, 2, 2)?.iter().map(|v| v.dimension()).collect();
        Ok((dims == [2, 1, 0], format!("dims {dims:?}")))
    }));
    cases.push(case("A4 on A4/C3, p = 2", move || {
        let a4 = catalog::alternating_with(4, caps)?;
        let x = GSet::right_cosets(&perm_sub(&a4, &["(1 2 3)"])?)?;
        let dims: Vec<usize> = fp::v_chain(&x, 2, 2)?.iter().map(|v| v.dimension()).collect();
        Ok((dims[2] > 0, format!("dims {dims:?}")))
    }));
    Ok(cases)
}

fn kernel(o: &Options) -> Result<Vec<Case>> {
    let caps = o.caps;
    let params: [(usize, u32, u32); 8] = [(2, 2, 1), (2, 3, 1), (2, 2, 2), (2, 3, 2), (2, 2, 3), (1, 2, 4), (1, 5, 2), (3, 2, 1)];
    Ok(params
        .into_iter()
        .map(|(n, ell, k)| {
            case(format!("GL({n}, Z/{}^{k})", ell), move || {
                let (_, ker) = matrix::residue_kernel(n, ell, k, caps)?;
                let expected = (ell as usize).pow((n * n) as u32 * (k - 1));
                let (h, _) = ker.to_group();
                Ok((ker.order() == expected && matrix::is_l_group(&h, ell) && ker.is_normal(), format!("|ker| = {}", ker.order())))
            })
        })
        .collect())
}

fn lp(o: &Options) -> Result<Vec<Case>> {
    let caps = o.caps;
    // (Λ, l, J)
    let instances: [(&str, u32, usize); 7] = [
        ("GL(2,2)", 2, 2),
        ("SL(2,4)", 2, 1),
        ("SL(2,3)", 3, 2),
        ("SL(2,3)", 3, 12),
        ("GL(2,3)", 3, 2),
        ("GL(2,Z/4)", 2, 6),
        ("GL(1,Z/9)", 3, 1),
    ];
    Ok(instances
        .into_iter()
        .map(|(name, ell, j)| {
            case(format!("{name}, l = {ell}, J = {j}"), move || {
                let g = match name {
                    "GL(2,2)" => matrix::gl(2, 2, caps)?,
                    "SL(2,4)" => matrix::sl(2, 4, caps)?,
                    "SL(2,3)" => matrix::sl(2, 3, caps)?,
                    "GL(2,3)" => matrix::gl(2, 3, caps)?,
                    "GL(2,Z/4)" => matrix::gl_residue(2, 2, 2, caps)?,
                    _ => matrix::gl_residue(1, 3, 2, caps)?,
                };
                check_lp(&g, ell, j)
            })
        })
        .collect())
}

/// The returned filtration (if any) validates; the decomposition (if any)
/// has the promised properties. Absence of a filtration is reported, not
/// failed: the search is exhaustive, so `None` is a fact about `J`.
fn check_lp(g: &Group, ell: u32, j: usize) -> Check {
    let (ring, _) = matrix::matrix_ring(g).expect("matrix group");
    let on_image = matches!(ring.kind(), crate::ring::RingKind::Field { .. });
    let found = if on_image { search_lp(g, ell, j)? } else { None };
    let mut detail = String::new();
    if let Some(f) = &found {
        if !validate_lp(g, ell, j, f)?.valid() {
            return Ok((false, format!("filtration {:?} does not validate", f.orders())));
        }
        detail = format!("filtration orders {:?}", f.orders());
    } else if on_image {
        detail = "no filtration".into();
    }
    match corollary_decomposition(&g.whole(), ell, j) {
        Ok(d) => {
            let (h, _) = d.n.to_group();
            let ok = matrix::is_l_group(&h, ell) && d.length as f64 <= d.bound + 1e-9;
            let sep = if detail.is_empty() { "" } else { "; " };
            Ok((ok, format!("{detail}{sep}|N| = {}, l(Λ/N) = {} <= {:.3}", d.n.order(), d.length, d.bound)))
        }
        Err(Error::SearchFailed(_)) => Ok((true, format!("{detail}; decomposition unavailable for this J"))),
        Err(e) => Err(e),
    }
}

fn sn_bound(o: &Options) -> Result<Vec<Case>> {
    let caps = o.caps;
    let mut cases: Vec<Case> = (1..=7)
        .map(|n| {
            case(format!("S{n}"), move || {
                let l = abelian_simple_length(&catalog::symmetric_with(n, caps)?)?;
                Ok((l <= 3, format!("l = {l}")))
            })
        })
        .collect();
    for e in catalog::base_with(720, caps)? {
        let Some(d) = e.degree.filter(|&d| d <= 6) else { continue };
        let g = e.group;
        cases.push(case(format!("{} on {d} points", e.name), move || {
            let l = abelian_simple_length(&g)?;
            let fact: usize = (1..=d).product();
            Ok((pow2_le(l, fact), format!("l = {l}, d! = {fact}")))
        }));
    }
    Ok(cases)
}

fn unipotent(o: &Options) -> Result<Vec<Case>> {
    let caps = o.caps;
    let mut cases = Vec::new();
    for n in [2, 3, 4] {
        for p in [2, 3, 5] {
            cases.push(case(format!("U({n},{p})"), move || {
                let l = fp::unipotent_derived_length(n, p, caps)?;
                Ok((l < n, format!("derived length {l}")))
            }));
        }
    }
    Ok(cases)
}

/// Regression constants, each first confirmed against the oracle.
pub const SPOT_VALUES: [(&str, usize); 11] = [
    ("S3", 2),
    ("S4", 3),
    ("S5", 2),
    ("S6", 2),
    ("S7", 2),
    ("D4", 2),
    ("Q8", 2),
    ("SL(2,3)", 3),
    ("A5", 1),
    ("A5 x A5", 1),
    ("1", 0),
];

fn oracle_agreement(o: &Options) -> Result<Vec<Case>> {
    // groups are selected by their own class count; later steps of the
    // oracle length may meet subgroups with more classes
    let deep = Caps { oracle_classes: o.caps.oracle_classes.max(25), ..o.caps };
    let mut cases: Vec<Case> = catalog::full_with(o.max_order.min(100), deep)?
        .into_iter()
        .filter(|e| e.group.class_count() <= o.caps.oracle_classes)
        .map(|e| {
            let g = e.group;
            case(e.name, move || {
                let lattice: Vec<Vec<u32>> = all_normal_subgroups(&g)?.subgroups().iter().map(|s| s.members().to_vec()).collect();
                let brute: Vec<Vec<u32>> = oracle::oracle_normal_subgroups(&g)?.iter().map(|s| s.members().to_vec()).collect();
                let d = generalized_derived_subgroup(&g)?;
                let od = oracle::oracle_d(&g)?;
                let (l, ol) = (abelian_simple_length(&g)?, oracle::oracle_length(&g)?);
                let ok = lattice == brute && d.members() == od.members() && l == ol;
                Ok((ok, format!("{} normals, |D| = {}, l = {l}", lattice.len(), d.order())))
            })
        })
        .collect();
    let caps = o.caps;
    for (name, frozen) in SPOT_VALUES {
        cases.push(case(format!("spot {name}"), move || {
            // A5 x A5 has 25 classes
            let g = named(name, Caps { oracle_classes: caps.oracle_classes.max(25), ..caps })?;
            let (l, ol) = (abelian_simple_length(&g)?, oracle::oracle_length(&g)?);
            Ok((l == ol && l == frozen, format!("l = {l}, oracle {ol}, frozen {frozen}")))
        }));
    }
    Ok(cases)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert_eq!(Suite::from_name("nope"), None);
    }

    #[test]
    fn named_groups() {
        let caps = Caps::default();
        assert_eq!(named("A5 x C2", caps).unwrap().order(), 120);
        assert_eq!(named("C3 x C3", caps).unwrap().order(), 9);
        assert_eq!(named("1", caps).unwrap().order(), 1);
        assert!(named("Z9", caps).is_err());
    }

    #[test]
    fn small_suites_pass() {
        let opts = Options { max_order: 24, ..Options::default() };
        for s in [Suite::LogLength, Suite::Kernel, Suite::Msigma, Suite::ExactSequence] {
            let r = run(s, &opts).unwrap();
            assert!(r.passed(), "{s}: {:?}", r.cases.iter().filter(|c| c.status != Status::Pass).collect::<Vec<_>>());
        }
    }
}
