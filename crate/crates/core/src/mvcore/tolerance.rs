/// Scale-aware zero test: a coefficient `c` of a multivector with max-norm
/// `scale` is zero iff `|c| <= abs + rel * scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance {
        abs: 1e-12,
        rel: 1e-9,
    };

    pub fn with_rel(rel: f64) -> Self {
        Tolerance {
            rel,
            ..Self::DEFAULT
        }
    }

    #[inline]
    pub fn threshold(&self, scale: f64) -> f64 {
        self.abs + self.rel * scale
    }

    #[inline]
    pub fn is_zero(&self, c: f64, scale: f64) -> bool {
        c.abs() <= self.threshold(scale)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Bit set of grades `0..=8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GradeSet {
    pub mask: u16,
}

impl GradeSet {
    pub fn contains(self, k: usize) -> bool {
        self.mask & (1 << k) != 0
    }

    pub fn insert(&mut self, k: usize) {
        self.mask |= 1 << k;
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    /// The only grade present, if exactly one is.
    pub fn single(self) -> Option<usize> {
        (self.len() == 1).then(|| self.mask.trailing_zeros() as usize)
    }

    pub fn only_even(self) -> bool {
        self.mask & 0b1010_1010_1010_1010 == 0
    }

    pub fn only_odd(self) -> bool {
        self.mask & 0b0101_0101_0101_0101 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..16).filter(move |k| self.contains(*k))
    }
}
