//! Matrix permanents by Ryser's inclusion–exclusion formula.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

/// Entries a permanent can be taken over: exact Gaussian integers or floats.
pub trait PermanentScalar:
    Copy + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> PermanentScalar for T where
    T: Copy + Zero + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// Permanent of the square row-major matrix `a` (`n × n`).
///
/// `perm(A) = (−1)^n Σ_{S ⊆ cols} (−1)^{|S|} Π_i Σ_{j∈S} a_ij`, with the
/// subsets walked in Gray-code order so each step updates the row sums by a
/// single column: `O(2^n · n)`.
pub fn ryser<T: PermanentScalar>(a: &[T], n: usize) -> T {
    debug_assert_eq!(a.len(), n * n);
    if n == 0 {
        return T::zero();
    }
    let mut row_sums = vec![T::zero(); n];
    let mut in_set = vec![false; n];
    let mut total = T::zero();
    for k in 1u64..(1u64 << n) {
        let col = k.trailing_zeros() as usize;
        let adding = !in_set[col];
        in_set[col] = adding;
        for (i, s) in row_sums.iter_mut().enumerate() {
            let v = a[i * n + col];
            *s = if adding { *s + v } else { *s - v };
        }
        let mut prod = row_sums[0];
        for &s in &row_sums[1..] {
            prod = prod * s;
        }
        // Gray code k ^ (k >> 1) has the parity of the current subset size.
        let odd = (k ^ (k >> 1)).count_ones() % 2 == 1;
        total = if odd { total - prod } else { total + prod };
    }
    if n % 2 == 1 {
        -total
    } else {
        total
    }
}
