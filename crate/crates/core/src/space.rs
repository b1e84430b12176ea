//! Hamming space parameters.

use crate::error::{Error, Result};
use crate::exact::{binom_rat, rat_pow, rat_u, Rat};

/// The space of length-`n` words over an alphabet of `q` symbols.
/// `q` is any integer >= 2, not necessarily a prime power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HammingSpace {
    n: usize,
    q: u64,
}

impl HammingSpace {
    pub fn new(n: usize, q: u64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidInput("length n must be >= 1".into()));
        }
        if q < 2 {
            return Err(Error::InvalidInput("alphabet size q must be >= 2".into()));
        }
        Ok(HammingSpace { n, q })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn q_rat(&self) -> Rat {
        rat_u(self.q)
    }

    /// Total number of words, q^n.
    pub fn size(&self) -> Rat {
        rat_pow(&rat_u(self.q), self.n as u32)
    }

    /// Weight of the counting measure at distance `u`: C(n,u)(q-1)^u.
    pub fn measure_weight(&self, u: usize) -> Rat {
        binom_rat(self.n as u64, u as u64) * rat_pow(&rat_u(self.q - 1), u as u32)
    }

    /// Same space with the length reduced by `delta` (used by bound recursions).
    pub fn shrink(&self, delta: usize) -> Result<Self> {
        if delta >= self.n {
            return Err(Error::InvalidInput(format!(
                "cannot shrink length {} by {}",
                self.n, delta
            )));
        }
        HammingSpace::new(self.n - delta, self.q)
    }
}

impl std::fmt::Display for HammingSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}^{}", self.q, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn validation() {
        assert!(HammingSpace::new(0, 2).is_err());
        assert!(HammingSpace::new(3, 1).is_err());
        let s = HammingSpace::new(3, 2).unwrap();
        assert_eq!(s.size(), rat(8));
        assert_eq!(s.measure_weight(2), rat(3));
    }
}
