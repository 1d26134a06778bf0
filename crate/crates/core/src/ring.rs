//! Small finite commutative rings: prime fields, extension fields `F_{p^e}`
//! and residue rings `Z/l^k`. All arithmetic is table driven.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingKind {
    /// `F_{p^e}`; elements are encoded as base-`p` coefficient vectors.
    Field { p: u32, e: u32 },
    /// `Z/l^k`; elements are `0..l^k`.
    Residue { ell: u32, k: u32 },
}

#[derive(Clone, PartialEq, Eq)]
pub struct Ring {
    kind: RingKind,
    size: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    /// `u32::MAX` for non-units.
    inv: Vec<u32>,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.name())
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Writes `q = p^e` with `p` prime, if possible.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut e = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

const MAX_RING: u32 = 256;

impl Ring {
    /// The field with `q` elements.
    pub fn field(q: u32) -> Result<Ring> {
        let (p, e) = prime_power(q)
            .ok_or_else(|| Error::InvalidInput(format!("{q} is not a prime power")))?;
        if q > MAX_RING {
            return Err(Error::InvalidInput(format!("field of size {q} is too large")));
        }
        if e == 1 {
            return Ok(Ring::modular(RingKind::Field { p, e: 1 }, p));
        }
        let modulus = irreducible(p, e);
        let digits = |mut x: u32| -> Vec<u32> {
            let mut d = vec![0; e as usize];
            for c in d.iter_mut() {
                *c = x % p;
                x /= p;
            }
            d
        };
        let encode = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let n = q as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&s);
                // schoolbook product then reduction by the monic modulus
                let mut prod = vec![0u32; 2 * e as usize];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for deg in (e as usize..prod.len()).rev() {
                    let c = prod[deg];
                    if c != 0 {
                        for (i, &m) in modulus.iter().enumerate().take(e as usize) {
                            let idx = deg - e as usize + i;
                            prod[idx] = (prod[idx] + (p - c) * m) % p;
                        }
                        prod[deg] = 0;
                    }
                }
                mul[(a * q + b) as usize] = encode(&prod[..e as usize]);
            }
        }
        Ok(Ring::from_tables(RingKind::Field { p, e }, q, add, mul))
    }

    /// `Z/l^k`.
    pub fn residue(ell: u32, k: u32) -> Result<Ring> {
        if !is_prime(ell) || k == 0 {
            return Err(Error::InvalidInput(format!("Z/{ell}^{k} needs a prime and k >= 1")));
        }
        let m = ell
            .checked_pow(k)
            .filter(|&m| m <= MAX_RING)
            .ok_or_else(|| Error::InvalidInput(format!("Z/{ell}^{k} is too large")))?;
        Ok(Ring::modular(RingKind::Residue { ell, k }, m))
    }

    fn modular(kind: RingKind, m: u32) -> Ring {
        let n = m as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..m {
            for b in 0..m {
                add[(a * m + b) as usize] = (a + b) % m;
                mul[(a * m + b) as usize] = (a * b) % m;
            }
        }
        Ring::from_tables(kind, m, add, mul)
    }

    fn from_tables(kind: RingKind, size: u32, add: Vec<u32>, mul: Vec<u32>) -> Ring {
        let s = size as usize;
        let mut neg = vec![0; s];
        let mut inv = vec![u32::MAX; s];
        for a in 0..s {
            for b in 0..s {
                if add[a * s + b] == 0 {
                    neg[a] = b as u32;
                }
                if mul[a * s + b] == 1 {
                    inv[a] = b as u32;
                }
            }
        }
        Ring { kind, size, add, mul, neg, inv }
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Characteristic of the residue field.
    pub fn residue_char(&self) -> u32 {
        match self.kind {
            RingKind::Field { p, .. } => p,
            RingKind::Residue { ell, .. } => ell,
        }
    }

    pub fn name(&self) -> String {
        match self.kind {
            RingKind::Field { p, e } => format!("F{}", p.pow(e)),
            RingKind::Residue { ell, k: 1 } => format!("F{ell}"),
            RingKind::Residue { ell, k } => format!("Z/{}", ell.pow(k)),
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.size + b) as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.size + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        let i = self.inv[a as usize];
        (i != u32::MAX).then_some(i)
    }

    pub fn is_unit(&self, a: u32) -> bool {
        self.inv[a as usize] != u32::MAX
    }

    pub fn units(&self) -> Vec<u32> {
        (0..self.size).filter(|&a| self.is_unit(a)).collect()
    }

    /// Reduction to the residue field; the identity on fields.
    pub fn to_residue(&self, a: u32) -> u32 {
        match self.kind {
            RingKind::Field { .. } => a,
            RingKind::Residue { ell, .. } => a % ell,
        }
    }

    /// A unit of maximal multiplicative order (a primitive element for fields).
    pub fn primitive_unit(&self) -> u32 {
        let units = self.units();
        let order = |u: u32| {
            let mut x = u;
            let mut k = 1;
            while x != 1 {
                x = self.mul(x, u);
                k += 1;
            }
            k
        };
        units.iter().copied().max_by_key(|&u| (order(u), std::cmp::Reverse(u))).unwrap_or(1)
    }

    /// Additive generators as a group: `{1}` for residue rings, a
    /// polynomial basis for extension fields.
    pub fn additive_basis(&self) -> Vec<u32> {
        match self.kind {
            RingKind::Field { p, e } => (0..e).map(|i| p.pow(i)).collect(),
            RingKind::Residue { .. } => vec![1],
        }
    }

    pub fn reduce_int(&self, x: i64) -> Result<u32> {
        match self.kind {
            RingKind::Residue { .. } | RingKind::Field { e: 1, .. } => {
                Ok(x.rem_euclid(self.size as i64) as u32)
            }
            RingKind::Field { .. } => {
                if x >= 0 && x < self.size as i64 {
                    Ok(x as u32)
                } else {
                    Err(Error::InvalidInput(format!(
                        "entry {x} is not an element code of {}",
                        self.name()
                    )))
                }
            }
        }
    }
}

/// Monic irreducible polynomial of degree `e` over `F_p`, coefficients low
/// to high including the leading 1. Smallest in base-`p` order.
fn irreducible(p: u32, e: u32) -> Vec<u32> {
    let total = p.pow(e);
    for code in 0..total {
        let mut coeffs = Vec::with_capacity(e as usize + 1);
        let mut x = code;
        for _ in 0..e {
            coeffs.push(x % p);
            x /= p;
        }
        coeffs.push(1);
        if coeffs[0] == 0 {
            continue;
        }
        if !has_factor(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn has_factor(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let mut div = Vec::with_capacity(d + 1);
            let mut x = code;
            for _ in 0..d {
                div.push(x % p);
                x /= p;
            }
            div.push(1);
            if poly_rem(poly, &div, p).iter().all(|&c| c == 0) {
                return true;
            }
        }
    }
    false
}

fn poly_rem(a: &[u32], monic: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let d = monic.len() - 1;
    for deg in (d..r.len()).rev() {
        let c = r[deg];
        if c != 0 {
            for (i, &m) in monic.iter().enumerate() {
                let idx = deg - d + i;
                r[idx] = (r[idx] + (p - c) * m) % p;
            }
        }
    }
    r.truncate(d);
    r
}
