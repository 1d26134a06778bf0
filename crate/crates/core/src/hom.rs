use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::group::{Closure, Group};
use crate::subgroup::Subgroup;

/// A group homomorphism given by its values on every source element.
#[derive(Clone)]
pub struct Homomorphism {
    source: Group,
    target: Group,
    map: Arc<Vec<u32>>,
}

impl std::fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Homomorphism({} -> {})", self.source.name(), self.target.name())
    }
}

impl Homomorphism {
    /// Checked constructor. The multiplicative law is verified on all pairs
    /// when `|source| <= 512`, otherwise on all generator pairs plus 10 000
    /// random pairs.
    pub fn new(source: Group, target: Group, map: Vec<u32>) -> Result<Homomorphism> {
        if map.len() != source.order() || map.iter().any(|&y| y as usize >= target.order()) {
            return Err(Error::NotHomomorphism("map has the wrong shape".into()));
        }
        if map[0] != 0 {
            return Err(Error::NotHomomorphism("identity not preserved".into()));
        }
        let h = Homomorphism { source, target, map: Arc::new(map) };
        let check = |x: u32, y: u32| -> Result<()> {
            let s = &h.source;
            if h.apply(s.mul(x, y)) != h.target.mul(h.apply(x), h.apply(y)) {
                return Err(Error::NotHomomorphism(format!("fails on ({x}, {y})")));
            }
            Ok(())
        };
        let n = h.source.order() as u32;
        if n <= 512 {
            for x in 0..n {
                for y in 0..n {
                    check(x, y)?;
                }
            }
        } else {
            for &x in h.source.generators() {
                for &y in h.source.generators() {
                    check(x, y)?;
                }
            }
            let mut rng = StdRng::seed_from_u64(0x5eed);
            for _ in 0..10_000 {
                check(rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(h)
    }

    pub(crate) fn new_unchecked(source: Group, target: Group, map: Vec<u32>) -> Homomorphism {
        Homomorphism { source, target, map: Arc::new(map) }
    }

    pub fn identity(g: &Group) -> Homomorphism {
        Homomorphism::new_unchecked(g.clone(), g.clone(), g.elements().collect())
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.map[x as usize]
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }

    pub fn kernel(&self) -> Subgroup {
        let members: Vec<u32> = self.source.elements().filter(|&x| self.map[x as usize] == 0).collect();
        let gens = self.source.small_generating_set(&members);
        self.source.generate(&gens).with_flag(Some(true))
    }

    pub fn image(&self) -> Subgroup {
        let gens: Vec<u32> = self.source.generators().iter().map(|&x| self.apply(x)).collect();
        self.target.generate(&gens)
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.target.order()
    }

    pub fn image_of(&self, sub: &Subgroup) -> Subgroup {
        let mut c = Closure::new(&self.target);
        for &x in sub.generators() {
            c.add(self.apply(x));
        }
        c.into_subgroup(None)
    }

    pub fn preimage(&self, sub: &Subgroup) -> Subgroup {
        let members: Vec<u32> =
            self.source.elements().filter(|&x| sub.contains(self.map[x as usize])).collect();
        let gens = self.source.small_generating_set(&members);
        self.source.generate(&gens)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Homomorphism) -> Result<Homomorphism> {
        if !self.target.same(&next.source) {
            return Err(Error::InvalidInput("homomorphisms are not composable".into()));
        }
        let map = self.map.iter().map(|&y| next.apply(y)).collect();
        Ok(Homomorphism::new_unchecked(self.source.clone(), next.target.clone(), map))
    }
}
