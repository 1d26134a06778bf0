//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the lines show up in plain `cargo test` output.
//!
//! Values marked as derived are recomputed here by brute force rather than
//! read back from the library.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use asl_core::catalog;
use asl_core::construct::{direct_product, fiber_product};
use asl_core::fp::{self, GSet};
use asl_core::group::{Caps, Group};
use asl_core::lp::{corollary_decomposition, search_lp, validate_lp};
use asl_core::matrix;
use asl_core::oracle;
use asl_core::series::{abelian_simple_length, generalized_derived_subgroup, generalized_derived_term};
use asl_core::subgroup::Subgroup;
use asl_core::verify::{self, Options, Suite};
use asl_core::wreath::{self, GroupAction};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:?}, limit {limit:?}"))
}

fn e<T>(r: asl_core::Result<T>) -> Result<T, String> {
    r.map_err(|err| err.to_string())
}

fn sub(g: &Group, cycles: &[&str]) -> Subgroup {
    g.generate(&cycles.iter().map(|c| g.find_label(c).expect("element")).collect::<Vec<_>>())
}

// ---------------------------------------------------------------- oracles

/// `2^l <= n`.
fn log_bound(l: usize, n: usize) -> bool {
    l < 64 && (1u128 << l) <= n as u128
}

/// Closure of all commutators of `g` under multiplication.
fn brute_commutator(g: &Group) -> BTreeSet<u32> {
    let mut set: BTreeSet<u32> = BTreeSet::from([0]);
    for x in g.elements() {
        for y in g.elements() {
            set.insert(g.commutator(x, y));
        }
    }
    let gens: Vec<u32> = set.iter().copied().collect();
    let mut frontier: Vec<u32> = gens.clone();
    while let Some(x) = frontier.pop() {
        for &y in &gens {
            let z = g.mul(x, y);
            if set.insert(z) {
                frontier.push(z);
            }
        }
    }
    set
}

/// Rank over `F_p` by plain elimination.
fn rank_mod(p: u32, mut rows: Vec<Vec<u32>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] % p != 0) else { continue };
        rows.swap(rank, piv);
        let inv = (1..p).find(|&i| rows[rank][c] * i % p == 1).unwrap();
        let pivot: Vec<u32> = rows[rank].iter().map(|&x| x * inv % p).collect();
        for r in 0..rows.len() {
            if r != rank && rows[r][c] % p != 0 {
                let f = rows[r][c];
                for k in 0..cols {
                    rows[r][k] = (rows[r][k] + (p - f) * pivot[k] % p) % p;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// `dim V_0, ..., dim V_depth`, spanning over every element of each
/// `G^(i)` with `f^g(x) = f(x.g)`.
fn v_dims(g: &Group, x: &GSet, p: u32, depth: usize) -> Vec<usize> {
    let n = x.len();
    let mut basis: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u32).collect()).collect();
    let mut dims = vec![n];
    for i in 0..depth {
        let gi = generalized_derived_term(g, i).unwrap();
        let mut rows = Vec::new();
        for f in &basis {
            for &s in gi.members() {
                rows.push((0..n as u32).map(|y| (f[y as usize] + p - f[x.apply(y, s) as usize]) % p).collect());
            }
        }
        let r = rank_mod(p, rows.clone());
        // keep an explicit basis: greedy independent rows
        let mut kept: Vec<Vec<u32>> = Vec::new();
        for row in rows {
            let mut trial = kept.clone();
            trial.push(row.clone());
            if rank_mod(p, trial) > kept.len() {
                kept.push(row);
            }
            if kept.len() == r {
                break;
            }
        }
        basis = kept;
        dims.push(r);
    }
    dims
}

/// Every subgroup, as joins of cyclic subgroups.
fn all_subgroups(g: &Group) -> Vec<Subgroup> {
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut subs: Vec<Subgroup> = Vec::new();
    for x in g.elements() {
        let s = g.generate(&[x]);
        if seen.insert(s.members().to_vec()) {
            subs.push(s);
        }
    }
    let mut i = 0;
    while i < subs.len() {
        for j in 0..i {
            let s = subs[i].join(&subs[j]);
            if seen.insert(s.members().to_vec()) {
                subs.push(s);
            }
        }
        i += 1;
    }
    subs
}

// --------------------------------------------------------------- criteria

fn c1() -> Outcome {
    let start = Instant::now();
    let cat = e(catalog::full(200))?;
    for entry in &cat {
        let l = e(abelian_simple_length(&entry.group))?;
        ensure(log_bound(l, entry.group.order()), || format!("{}: l = {l}", entry.name))?;
    }
    within(start, Duration::from_secs(60), "length bound")?;
    Ok(format!("{} groups", cat.len()))
}

fn c2() -> Outcome {
    let start = Instant::now();
    let deep = Caps { oracle_classes: 25, ..Caps::default() };
    let mut n = 0;
    for entry in e(catalog::full_with(100, deep))? {
        let g = &entry.group;
        if g.class_count() > 16 {
            continue;
        }
        let d = e(generalized_derived_subgroup(g))?;
        let od = e(oracle::oracle_d(g))?;
        ensure(d.members() == od.members(), || format!("{}: D(G) differs from the oracle", entry.name))?;
        let (l, ol) = (e(abelian_simple_length(g))?, e(oracle::oracle_length(g))?);
        ensure(l == ol, || format!("{}: l = {l}, oracle {ol}", entry.name))?;
        n += 1;
    }
    within(start, Duration::from_secs(120), "oracle agreement")?;
    Ok(format!("{n} groups"))
}

fn c3() -> Outcome {
    let opts = Options { max_order: 48, ..Options::default() };
    let suites = [Suite::QuotientLaw, Suite::NormalLaw, Suite::ExtensionLaw, Suite::FiberLaw];
    let reports = e(verify::run_many(&suites, &opts))?;
    for r in &reports {
        let bad: Vec<_> = r.cases.iter().filter(|c| c.status != verify::Status::Pass).collect();
        ensure(bad.is_empty(), || format!("{}: {:?}", r.suite, bad))?;
    }
    // fiber product order against a direct count of agreeing pairs
    let s3 = e(catalog::symmetric(3))?;
    let c2 = e(catalog::cyclic(2))?;
    let sign: Vec<u32> = s3.elements().map(|x| u32::from(asl_core::perm::is_odd(asl_core::perm::images(&s3, x).unwrap()))).collect();
    let alpha = e(asl_core::hom::Homomorphism::new(s3.clone(), c2.clone(), sign))?;
    let f = e(fiber_product(&alpha, &alpha))?;
    let pairs = s3.elements().flat_map(|x| s3.elements().map(move |y| (x, y))).filter(|&(x, y)| alpha.apply(x) == alpha.apply(y)).count();
    ensure(f.group.order() == pairs && pairs == 18, || format!("S3 x_C2 S3 has order {}, {pairs} pairs", f.group.order()))?;
    let cases: usize = reports.iter().map(|r| r.cases.len()).sum();
    Ok(format!("{cases} cases"))
}

fn c4() -> Outcome {
    let deep = Caps { oracle_classes: 25, ..Caps::default() };
    let a5 = e(catalog::alternating_with(5, deep))?;
    let groups: Vec<(&str, Group, usize)> = vec![
        ("S3", e(catalog::symmetric(3))?, 2),
        ("S4", e(catalog::symmetric(4))?, 3),
        ("S5", e(catalog::symmetric(5))?, 2),
        ("S6", e(catalog::symmetric(6))?, 2),
        ("S7", e(catalog::symmetric(7))?, 2),
        ("D4", e(catalog::dihedral(4))?, 2),
        ("Q8", e(catalog::quaternion())?, 2),
        ("SL(2,3)", e(catalog::sl(2, 3))?, 3),
        ("A5", a5.clone(), 1),
        ("A5 x A5", e(direct_product(&a5, &a5))?.group, 1),
    ];
    for (name, g, frozen) in groups {
        let ol = e(oracle::oracle_length(&g))?;
        let l = e(abelian_simple_length(&g))?;
        ensure(l == ol, || format!("{name}: l = {l}, oracle {ol}"))?;
        ensure(l == frozen, || format!("{name}: l = {l}, frozen {frozen}"))?;
    }
    Ok("10 values".into())
}

fn c5() -> Outcome {
    let start = Instant::now();
    let c2 = e(catalog::cyclic(2))?;
    let c3 = e(catalog::cyclic(3))?;
    let a4 = e(catalog::alternating(4))?;
    let run = |g: &Group, g0: Subgroup, m: usize| e(wreath::msigma_witness(&GroupAction::trivial(&c2, &g0), m)).map(|w| (w, g.order()));
    ensure(run(&c3, c3.trivial_subgroup(), 0)?.0.is_some(), || "C2 wr C3: no witness".into())?;
    ensure(run(&c2, c2.trivial_subgroup(), 0)?.0.is_some(), || "C2 wr C2: no witness".into())?;
    let c3_in_a4 = sub(&a4, &["(1 2 3)"]);
    let act = GroupAction::trivial(&c2, &c3_in_a4);
    let h = e(wreath::twisted_wreath_product(&act))?;
    ensure(h.group.order() == 2usize.pow(4) * 12, || format!("|H| = {}", h.group.order()))?;
    ensure(e(wreath::msigma_witness(&act, 1))?.is_some(), || "C2 wr_C3 A4: no witness".into())?;
    ensure(run(&c2, c2.whole(), 0)?.0.is_none(), || "C2 wr_C2 C2: unexpected witness".into())?;
    within(start, Duration::from_secs(60), "msigma")?;
    Ok("4 instances, |H| = 192".into())
}

fn c6() -> Outcome {
    let a = e(catalog::cyclic(4))?;
    let s3 = e(catalog::symmetric(3))?;
    let g0 = sub(&s3, &["(1 2)"]);
    let act = GroupAction::trivial(&a, &g0);
    let a0 = a.generate(&[2]);
    let q = e(wreath::wreath_quotient(&act, &a0))?;
    ensure(q.map.is_surjective(), || "not surjective".into())?;
    let n = s3.order() as u32;
    let kernel: Vec<u32> = q.source.group.elements().filter(|&x| q.map.apply(x) == 0).collect();
    let in_ind_a0 = |x: u32| x % n == 0 && q.source.ind.values(x / n).iter().all(|&v| a0.contains(v));
    ensure(kernel.len() == 8 && kernel.iter().all(|&x| in_ind_a0(x)), || format!("kernel of order {}", kernel.len()))?;
    let ind_a0 = q.source.group.elements().filter(|&x| in_ind_a0(x)).count();
    ensure(ind_a0 == 8, || format!("Ind(A0) has {ind_a0} elements"))?;
    // composite: by A0, then by A/A0, equals by A
    let q2 = e(wreath::wreath_quotient(&q.target.ind.action, &q.space_map.image_of(&a.whole())))?;
    let direct = e(wreath::wreath_quotient(&act, &a.whole()))?;
    let composite: Vec<u32> = q.source.group.elements().filter(|&x| q2.map.apply(q.map.apply(x)) == 0).collect();
    let direct_kernel: Vec<u32> = q.source.group.elements().filter(|&x| direct.map.apply(x) == 0).collect();
    ensure(composite == direct_kernel, || "composite kernel differs".into())?;
    let r = e(verify::run(Suite::ExactSequence, &Options::default()))?;
    ensure(r.passed(), || format!("{:?}", r.cases))?;
    Ok(format!("|W| = {}, |ker| = 8", q.source.group.order()))
}

fn c7() -> Outcome {
    let start = Instant::now();
    let a5 = e(catalog::alternating(5))?;
    let c2 = e(catalog::cyclic(2))?;
    let act = GroupAction::trivial(&a5, &c2.trivial_subgroup());
    let w = e(wreath::twisted_wreath_product(&act))?;
    ensure(w.group.backend() == asl_core::Backend::OnTheFly, || format!("backend {:?}", w.group.backend()))?;
    let h1 = e(generalized_derived_term(&w.group, 1))?;
    let n = c2.order() as u32;
    ensure(h1.order() == 3600 && h1.members().iter().all(|&x| x % n == 0), || format!("|H^(1)| = {}", h1.order()))?;
    within(start, Duration::from_secs(600), "A5 wr C2")?;
    Ok(format!("|H| = {}, |H^(1)| = 3600", w.group.order()))
}

fn c8() -> Outcome {
    let (lin, w) = e(verify::nontrivial_action_instance(Caps::default()))?;
    ensure(e(fp::is_irreducible(&lin))? && !lin.is_trivial(), || "module not irreducible".into())?;
    ensure(w.group.order() == 96, || format!("|H| = {}", w.group.order()))?;
    let derived = brute_commutator(&w.group);
    let n = w.ind.action.group().order() as u32;
    let s3 = w.ind.action.group();
    let s3_derived = brute_commutator(s3);
    // Ind x| G' = {(f, s) : s in G'}
    let predicted: BTreeSet<u32> = w.group.elements().filter(|&x| s3_derived.contains(&(x % n))).collect();
    ensure(derived == predicted, || format!("|H'| = {}, |Ind x| G'| = {}", derived.len(), predicted.len()))?;
    ensure(derived.len() == 48, || format!("|H'| = {}", derived.len()))?;
    let main = asl_core::derived::commutator_subgroup(&w.group);
    ensure(main.members().iter().copied().collect::<BTreeSet<_>>() == derived, || "library H' differs".into())?;
    Ok("|H'| = 48 = 16 * 3".into())
}

fn c9() -> Outcome {
    let mut instances = 0;
    let mut hypothesis = 0;
    for entry in e(catalog::full(48))? {
        let g = &entry.group;
        for g0 in all_subgroups(g) {
            let x = e(GSet::right_cosets(&g0))?;
            for p in [2, 3] {
                let chain = e(fp::v_chain(&x, p, 2))?;
                let dims: Vec<usize> = chain.iter().map(|v| v.dimension()).collect();
                let oracle = v_dims(g, &x, p, 2);
                ensure(dims == oracle, || format!("{} / |G0| = {}, p = {p}: {dims:?} vs {oracle:?}", entry.name, g0.order()))?;
                for m in [0, 1] {
                    instances += 1;
                    if e(fp::orbit_hypothesis(&x, m))? {
                        hypothesis += 1;
                        ensure(oracle[m + 1] > 0, || format!("{} / |G0| = {}, p = {p}, m = {m}: V = 0", entry.name, g0.order()))?;
                    }
                }
            }
        }
    }
    let c2 = e(catalog::cyclic(2))?;
    let dims = v_dims(&c2, &e(GSet::right_cosets(&c2.trivial_subgroup()))?, 2, 2);
    ensure(dims == [2, 1, 0], || format!("C2 chain {dims:?}"))?;
    let a4 = e(catalog::alternating(4))?;
    let dims = v_dims(&a4, &e(GSet::right_cosets(&sub(&a4, &["(1 2 3)"])))?, 2, 2);
    ensure(dims[2] > 0, || format!("A4 chain {dims:?}"))?;
    Ok(format!("{instances} instances, {hypothesis} with the orbit hypothesis"))
}

fn c10() -> Outcome {
    for ell in [2u32, 3] {
        let (g, ker) = e(matrix::residue_kernel(2, ell, 2, Caps::default()))?;
        let brute = g
            .elements()
            .filter(|&x| {
                let m = matrix::entries(&g, x).unwrap();
                m.iter().enumerate().all(|(i, &v)| v % ell == u32::from(i % 3 == 0))
            })
            .count();
        ensure(ker.order() == brute && brute == (ell as usize).pow(4), || format!("l = {ell}: {} vs {brute}", ker.order()))?;
        ensure(matrix::is_l_group(&ker.to_group().0, ell), || format!("l = {ell}: not an l-group"))?;
        let (_, k1) = e(matrix::residue_kernel(2, ell, 1, Caps::default()))?;
        ensure(k1.is_trivial(), || format!("l = {ell}, k = 1: order {}", k1.order()))?;
    }
    Ok("orders 16 and 81".into())
}

/// The SL(2,3), l = 3, J = 2 instance admits no filtration: condition (1)
/// forces Λ1 = Λ, SL(2,3) has no nonabelian simple quotient so Λ2 = Λ,
/// and an abelian quotient of order prime to 3 forces Λ3 = Λ, which is not
/// a 3-group. Reported as a failure with that explanation.
fn c11() -> Outcome {
    let mut failures = Vec::new();
    let cases: Vec<(&str, Group, u32, usize)> = vec![
        ("GL(2,2)", e(catalog::gl(2, 2))?, 2, 2),
        ("SL(2,4)", e(catalog::sl(2, 4))?, 2, 1),
        ("SL(2,3)", e(catalog::sl(2, 3))?, 3, 2),
    ];
    let mut lines = Vec::new();
    for (name, g, ell, j) in cases {
        match e(search_lp(&g, ell, j))? {
            None => {
                let min_j = (1..=g.order()).find(|&jj| search_lp(&g, ell, jj).ok().flatten().is_some());
                failures.push(format!("{name} (l = {ell}, J = {j}): no filtration exists; least workable J is {min_j:?}"));
            }
            Some(f) => {
                let rep = e(validate_lp(&g, ell, j, &f))?;
                ensure(rep.valid() && rep.proxy, || format!("{name}: filtration does not validate"))?;
                let d = e(corollary_decomposition(&g.whole(), ell, j))?;
                ensure(d.length as f64 <= (j as f64).log2() + 2.0, || format!("{name}: l(Λ/N) = {}", d.length))?;
                lines.push(format!("{name} {:?} l(Λ/N) = {}", f.orders(), d.length));
            }
        }
    }
    if failures.is_empty() {
        Ok(lines.join("; "))
    } else {
        Err(failures.join("; "))
    }
}

fn c12() -> Outcome {
    for n in 1..=7 {
        let l = e(abelian_simple_length(&e(catalog::symmetric(n))?))?;
        ensure(l <= 3, || format!("l(S{n}) = {l}"))?;
    }
    let mut transitive = 0;
    for entry in e(catalog::base(720))? {
        let Some(d) = entry.degree.filter(|&d| d <= 6) else { continue };
        let g = &entry.group;
        // transitivity from the permutation images where available
        if let Some(deg) = asl_core::perm::degree(g) {
            let mut reached = BTreeSet::from([0u32]);
            for x in g.elements() {
                reached.insert(asl_core::perm::images(g, x).unwrap()[0]);
            }
            ensure(deg == d && reached.len() == d, || format!("{} is not transitive on {d} points", entry.name))?;
        }
        let l = e(abelian_simple_length(g))?;
        let fact: usize = (1..=d).product();
        ensure(log_bound(l, fact), || format!("{}: l = {l} > log2({d}!)", entry.name))?;
        transitive += 1;
    }
    for n in [2usize, 3, 4] {
        for p in [2u32, 3, 5] {
            let l = e(fp::unipotent_derived_length(n, p, Caps::default()))?;
            ensure(l < n, || format!("U({n},{p}) has derived length {l}"))?;
        }
    }
    Ok(format!("{transitive} transitive groups, 9 unipotent groups"))
}

fn c13() -> Outcome {
    let render = |threads| -> Result<String, String> {
        let opts = Options { threads: Some(threads), ..Options::default() };
        Ok(format!("{:?}", e(verify::run_all(&opts))?))
    };
    let a = render(1)?;
    let b = render(1)?;
    let c = render(4)?;
    ensure(a == b && a == c, || "verify all differs between runs".into())?;
    let reports = e(verify::run_all(&Options::default()))?;
    ensure(reports.iter().all(|r| r.passed()), || "verify all has failing cases".into())?;
    Ok(format!("{} bytes, identical across 1 and 4 threads", a.len()))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome); 13] = [
        (1, "length bound on the catalog", c1),
        (2, "oracle agreement", c2),
        (3, "structural laws", c3),
        (4, "spot values", c4),
        (5, "witnesses in twisted wreath products", c5),
        (6, "exact sequence of wreath quotients", c6),
        (7, "nonabelian simple A", c7),
        (8, "nontrivial irreducible action", c8),
        (9, "V_i chains on coset spaces", c9),
        (10, "residue kernels", c10),
        (11, "Larsen-Pink filtrations", c11),
        (12, "symmetric, transitive and unipotent bounds", c12),
        (13, "determinism of verify all", c13),
    ];
    // Criterion 11 contains an instance with no filtration at all; see c11.
    let known_infeasible = [11];
    let mut unexpected = 0;
    for (n, name, f) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail} ({t:.1?})"),
            Err(detail) => {
                println!("criterion {n:>2} FAIL  {name}: {detail} ({t:.1?})");
                if !known_infeasible.contains(&n) {
                    unexpected += 1;
                }
            }
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
