//! Exponent vectors packed one byte per variable, variable 0 in the top byte so
//! that the integer order is the lexicographic order.

use crate::error::{Result, SeriesError};

pub const MAX_VARS: usize = 8;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono(pub u64);

#[inline]
fn shift(i: usize) -> u32 {
    56 - 8 * i as u32
}

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn from_exps(e: &[u32]) -> Result<Mono> {
        if e.len() > MAX_VARS {
            return Err(SeriesError::Shape(format!("at most {MAX_VARS} variables")));
        }
        let mut x = 0u64;
        for (i, &k) in e.iter().enumerate() {
            if k > 255 {
                return Err(SeriesError::ExponentOverflow);
            }
            x |= (k as u64) << shift(i);
        }
        Ok(Mono(x))
    }

    pub fn var(i: usize) -> Mono {
        Mono(1u64 << shift(i))
    }

    #[inline]
    pub fn exp(self, i: usize) -> u32 {
        ((self.0 >> shift(i)) & 0xff) as u32
    }

    pub fn degree(self) -> i64 {
        self.0.to_be_bytes().iter().map(|&b| b as i64).sum()
    }

    pub fn exps(self, m: usize) -> Vec<u32> {
        (0..m).map(|i| self.exp(i)).collect()
    }

    pub fn mul(self, o: Mono) -> Result<Mono> {
        let mut x = 0u64;
        for i in 0..MAX_VARS {
            let k = self.exp(i) + o.exp(i);
            if k > 255 {
                return Err(SeriesError::ExponentOverflow);
            }
            x |= (k as u64) << shift(i);
        }
        Ok(Mono(x))
    }

    /// x^self / x_i, if x_i divides.
    pub fn div_var(self, i: usize) -> Option<Mono> {
        (self.exp(i) > 0).then(|| Mono(self.0 - (1u64 << shift(i))))
    }

    pub fn with_exp(self, i: usize, k: u32) -> Mono {
        Mono((self.0 & !(0xffu64 << shift(i))) | ((k as u64) << shift(i)))
    }
}
