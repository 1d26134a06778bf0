//! Groups given by concrete keys (permutation images or matrix entries)
//! and built by breadth-first closure from generators.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Caps, Group, Repr};
use crate::perm;
use crate::ring::Ring;

#[derive(Debug, Clone)]
pub enum KeyKind {
    /// Permutations of `{0..degree}`, composed left to right (right action).
    Perm { degree: usize },
    /// `n x n` matrices over `ring`, row-major.
    Matrix { ring: Arc<Ring>, n: usize },
}

impl KeyKind {
    pub fn identity(&self) -> Box<[u32]> {
        match self {
            KeyKind::Perm { degree } => (0..*degree as u32).collect(),
            KeyKind::Matrix { n, .. } => {
                let mut m = vec![0; n * n];
                for i in 0..*n {
                    m[i * n + i] = 1;
                }
                m.into_boxed_slice()
            }
        }
    }

    pub fn compose(&self, a: &[u32], b: &[u32]) -> Box<[u32]> {
        match self {
            KeyKind::Perm { .. } => a.iter().map(|&x| b[x as usize]).collect(),
            KeyKind::Matrix { ring, n } => {
                let n = *n;
                let mut out = vec![0u32; n * n];
                for i in 0..n {
                    for j in 0..n {
                        let mut s = 0;
                        for k in 0..n {
                            s = ring.add(s, ring.mul(a[i * n + k], b[k * n + j]));
                        }
                        out[i * n + j] = s;
                    }
                }
                out.into_boxed_slice()
            }
        }
    }

    pub fn label(&self, key: &[u32]) -> String {
        match self {
            KeyKind::Perm { .. } => perm::to_cycles(key),
            KeyKind::Matrix { n, .. } => {
                let rows: Vec<String> = key
                    .chunks(*n)
                    .map(|r| {
                        let e: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                        format!("[{}]", e.join(","))
                    })
                    .collect();
                format!("[{}]", rows.join(","))
            }
        }
    }
}

#[derive(Debug)]
pub struct KeyStore {
    pub kind: KeyKind,
    pub keys: Vec<Box<[u32]>>,
    lookup: HashMap<Box<[u32]>, u32>,
}

impl KeyStore {
    pub fn find(&self, key: &[u32]) -> Option<u32> {
        self.lookup.get(key).copied()
    }

    pub fn key(&self, i: u32) -> &[u32] {
        &self.keys[i as usize]
    }

    pub fn label(&self, i: u32) -> String {
        self.kind.label(&self.keys[i as usize])
    }
}

/// Breadth-first closure of `gens` under right multiplication. Elements are
/// ordered identity first, then by discovery.
pub(crate) fn close(name: &str, kind: KeyKind, gens: &[Box<[u32]>], caps: Caps) -> Result<Group> {
    let id = kind.identity();
    let mut keys = vec![id.clone()];
    let mut lookup = HashMap::new();
    lookup.insert(id, 0u32);
    let mut i = 0;
    while i < keys.len() {
        for g in gens {
            let k = kind.compose(&keys[i], g);
            if !lookup.contains_key(&k) {
                if keys.len() >= caps.closure {
                    return Err(Error::cap(format!("closure of {name}"), caps.closure));
                }
                lookup.insert(k.clone(), keys.len() as u32);
                keys.push(k);
            }
        }
        i += 1;
    }
    let gen_idx: Vec<u32> = gens.iter().map(|g| lookup[g]).collect();
    let store = Arc::new(KeyStore { kind, keys, lookup });
    let order = store.keys.len();
    let inverses = inverses(&store);
    let s = store.clone();
    Group::assemble(
        name,
        order,
        inverses,
        gen_idx,
        move |a, b| s.lookup[&s.kind.compose(&s.keys[a as usize], &s.keys[b as usize])],
        Repr::Keyed(store),
        caps,
    )
}

fn inverses(store: &KeyStore) -> Vec<u32> {
    match &store.kind {
        KeyKind::Perm { .. } => store
            .keys
            .iter()
            .map(|k| {
                let mut inv = vec![0u32; k.len()];
                for (i, &x) in k.iter().enumerate() {
                    inv[x as usize] = i as u32;
                }
                store.lookup[inv.as_slice()]
            })
            .collect(),
        KeyKind::Matrix { .. } => {
            // x^-1 = x^(ord-1); element orders here are small
            let id = store.kind.identity();
            store
                .keys
                .iter()
                .map(|k| {
                    let mut prev = id.clone();
                    let mut cur = k.clone();
                    while cur != id {
                        prev = cur.clone();
                        cur = store.kind.compose(&cur, k);
                    }
                    store.lookup[&prev]
                })
                .collect()
        }
    }
}
