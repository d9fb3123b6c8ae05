use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest supported dimension `p + q`.
pub const MAX_DIM: usize = 8;

/// Metric signature of Cl(p,q): generators `e1..ep` square to +1, the
/// following `q` generators square to -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    p: u8,
    q: u8,
}

impl Signature {
    /// The conformal model of 3D Euclidean space, basis `e1, e2, e3, e+, e-`.
    pub const CGA: Signature = Signature { p: 4, q: 1 };

    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p + q > MAX_DIM {
            return Err(Error::InvalidSignature { p, q });
        }
        Ok(Signature {
            p: p as u8,
            q: q as u8,
        })
    }

    pub fn p(self) -> usize {
        self.p as usize
    }

    pub fn q(self) -> usize {
        self.q as usize
    }

    /// Number of generators.
    pub fn dim(self) -> usize {
        self.p() + self.q()
    }

    /// Number of basis blades, `2^n`.
    pub fn blade_count(self) -> usize {
        1 << self.dim()
    }

    /// Square of generator `i` (zero based).
    pub fn metric(self, i: usize) -> f64 {
        debug_assert!(i < self.dim());
        if i < self.p() {
            1.0
        } else {
            -1.0
        }
    }

    /// Bit mask of the generators squaring to -1.
    pub(crate) fn negative_mask(self) -> u32 {
        ((1u32 << self.dim()) - 1) & !((1u32 << self.p()) - 1)
    }

    /// Sign of the product of basis blades `a` and `b`; the blade is `a ^ b`.
    #[inline]
    pub(crate) fn product_sign(self, a: u32, b: u32) -> f64 {
        let table = self.sign_table();
        table[((a as usize) << self.dim()) | b as usize] as f64
    }

    /// Full `2^n x 2^n` table of product signs, built once per signature.
    pub(crate) fn sign_table(self) -> &'static [i8] {
        static TABLES: [OnceLock<Box<[i8]>>; (MAX_DIM + 1) * (MAX_DIM + 1)] =
            [const { OnceLock::new() }; (MAX_DIM + 1) * (MAX_DIM + 1)];
        TABLES[self.p() * (MAX_DIM + 1) + self.q()].get_or_init(|| build_sign_table(self))
    }
}

impl Default for Signature {
    fn default() -> Self {
        Signature::CGA
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl({},{})", self.p, self.q)
    }
}

/// Sign picked up by reordering the generators of `a * b` into ascending
/// order: one flip per pair (i in a, j in b) with i > j.
#[inline]
pub(crate) fn reorder_sign(a: u32, b: u32) -> i8 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps & 1 == 0 {
        1
    } else {
        -1
    }
}

fn build_sign_table(sig: Signature) -> Box<[i8]> {
    let size = sig.blade_count();
    let neg = sig.negative_mask();
    let mut table = vec![0i8; size * size].into_boxed_slice();
    for a in 0..size as u32 {
        for b in 0..size as u32 {
            let mut s = reorder_sign(a, b);
            if (a & b & neg).count_ones() & 1 == 1 {
                s = -s;
            }
            table[((a as usize) * size) + b as usize] = s;
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_oversized_signatures() {
        assert!(Signature::new(5, 4).is_err());
        assert!(Signature::new(8, 0).is_ok());
    }

    #[test]
    fn metric_follows_generator_order() {
        let s = Signature::CGA;
        assert_eq!(
            (0..5).map(|i| s.metric(i)).collect::<Vec<_>>(),
            [1.0, 1.0, 1.0, 1.0, -1.0]
        );
        assert_eq!(s.negative_mask(), 0b10000);
    }

    #[test]
    fn reorder_counts_inversions() {
        // e2 * e1 = -e12
        assert_eq!(reorder_sign(0b10, 0b01), -1);
        // e12 * e3 needs no swap
        assert_eq!(reorder_sign(0b011, 0b100), 1);
        // e3 * e12: e3 passes two generators
        assert_eq!(reorder_sign(0b100, 0b011), 1);
        // e23 * e1: two swaps
        assert_eq!(reorder_sign(0b110, 0b001), 1);
    }
}
