use std::fmt;

use super::Signature;

/// A basis blade as a bitset: bit `i` set means generator `e(i+1)` is a
/// factor, in ascending order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisBlade {
    pub bits: u32,
}

impl BasisBlade {
    pub const SCALAR: BasisBlade = BasisBlade { bits: 0 };

    pub fn new(bits: u32) -> Self {
        BasisBlade { bits }
    }

    /// Generator `e(i+1)`.
    pub fn generator(i: usize) -> Self {
        BasisBlade { bits: 1 << i }
    }

    pub fn grade(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn index(self) -> usize {
        self.bits as usize
    }

    /// Zero-based generator indices in ascending order.
    pub fn generators(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (0..32).filter(move |i| bits & (1 << i) != 0)
    }

    pub fn is_valid_for(self, sig: Signature) -> bool {
        (self.bits as usize) < sig.blade_count()
    }

    /// Parses `1` or `e` followed by strictly ascending generator digits
    /// (`e1`, `e13`, `e12345`). Digits `4`/`5` are `e+`/`e-` in Cl(4,1).
    pub fn parse(name: &str, sig: Signature) -> Option<Self> {
        if name == "1" {
            return Some(BasisBlade::SCALAR);
        }
        let digits = name.strip_prefix('e')?;
        if digits.is_empty() {
            return None;
        }
        let mut bits = 0u32;
        let mut last = 0u32;
        for ch in digits.chars() {
            let d = ch.to_digit(10)?;
            if d == 0 || d as usize > sig.dim() || d <= last {
                return None;
            }
            bits |= 1 << (d - 1);
            last = d;
        }
        Some(BasisBlade { bits })
    }
}

impl fmt::Display for BasisBlade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits == 0 {
            return f.write_str("1");
        }
        f.write_str("e")?;
        for g in self.generators() {
            write!(f, "{}", g + 1)?;
        }
        Ok(())
    }
}
