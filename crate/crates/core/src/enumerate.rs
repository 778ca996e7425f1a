//! Exhaustive enumeration of all `sigma^n` strings, in lexicographic order,
//! cut into disjoint index ranges.

use std::ops::Range;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::parallel::{split_range, Workers};
use crate::strings::Symbol;

/// Default cap on the number of strings a sweep may visit.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

pub fn string_count(n: u32, sigma: u32) -> BigUint {
    BigUint::from(sigma).pow(n)
}

/// `sigma^n` as a `u64`, or a budget error naming the required count.
pub fn check_budget(n: u32, sigma: u32, budget: u64) -> Result<u64> {
    let total = string_count(n, sigma);
    match total.to_u64() {
        Some(t) if t <= budget => Ok(t),
        _ => Err(Error::BudgetExceeded {
            required: total.to_string(),
            budget,
        }),
    }
}

/// Calls `f` on every string whose lexicographic rank lies in `range`.
/// Rank 0 is `11..1`; `S[1]` is the most significant digit.
pub fn for_each_in_range(n: usize, sigma: u32, range: Range<u64>, mut f: impl FnMut(&[Symbol])) {
    if range.is_empty() {
        return;
    }
    let mut digits = vec![1 as Symbol; n];
    let mut rest = range.start;
    for d in digits.iter_mut().rev() {
        *d = (rest % sigma as u64) as Symbol + 1;
        rest /= sigma as u64;
    }
    for _ in range {
        f(&digits);
        // odometer step, least significant digit last
        for d in digits.iter_mut().rev() {
            if *d < sigma {
                *d += 1;
                break;
            }
            *d = 1;
        }
    }
}

/// Folds every string of length `n` into an accumulator per part, then
/// merges the parts in order.
pub fn fold_all<A, I, V, M>(n: u32, sigma: u32, budget: u64, workers: Workers, init: I, visit: V, merge: M) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    V: Fn(&mut A, &[Symbol]) + Sync + Send,
    M: Fn(A, A) -> A,
{
    let total = check_budget(n, sigma, budget)?;
    let parts = workers.parts();
    let folded = workers.map_reduce(
        parts,
        |p| {
            let mut acc = init();
            for_each_in_range(n as usize, sigma, split_range(total, parts, p), |s| visit(&mut acc, s));
            acc
        },
        merge,
    );
    Ok(folded.unwrap_or_else(init))
}
