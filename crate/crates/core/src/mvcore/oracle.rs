//! Reference blade product built from explicit generator lists. It shares
//! no code with the table-driven product and exists to cross-check it.

use super::{BasisBlade, Signature};

/// Product of two basis blades by list manipulation: concatenate the
/// generator indices, bubble-sort them flipping the sign on every swap,
/// then cancel adjacent equal generators with their metric square.
pub fn oracle_product(a: BasisBlade, b: BasisBlade, sig: Signature) -> (i32, BasisBlade) {
    let mut list: Vec<usize> = a.generators().chain(b.generators()).collect();
    let mut sign = 1i32;

    let len = list.len();
    for pass in 0..len {
        for j in 0..len.saturating_sub(pass + 1) {
            if list[j] > list[j + 1] {
                list.swap(j, j + 1);
                sign = -sign;
            }
        }
    }

    let mut out: Vec<usize> = Vec::with_capacity(len);
    for g in list {
        if out.last() == Some(&g) {
            out.pop();
            if sig.metric(g) < 0.0 {
                sign = -sign;
            }
        } else {
            out.push(g);
        }
    }

    let bits = out.iter().fold(0u32, |acc, g| acc | (1 << g));
    (sign, BasisBlade::new(bits))
}
