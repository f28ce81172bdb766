//! Index-range map/reduce used by sweeps and trial batches.
//!
//! With the `parallel` feature (on by default) [`map_reduce`] runs on the
//! rayon pool; without it, it is [`map_reduce_seq`]. The reduction must be
//! associative with `identity` as its unit, so both routes agree.

use std::ops::Range;

/// Sequential map/reduce over `range`.
pub fn map_reduce_seq<T, I, M, R>(range: Range<u64>, identity: I, map: M, reduce: R) -> T
where
    I: Fn() -> T,
    M: Fn(u64) -> T,
    R: Fn(T, T) -> T,
{
    range.map(map).fold(identity(), reduce)
}

/// Rayon map/reduce over `range`.
#[cfg(feature = "parallel")]
pub fn map_reduce_par<T, I, M, R>(range: Range<u64>, identity: I, map: M, reduce: R) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    M: Fn(u64) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    use rayon::prelude::*;
    range.into_par_iter().map(map).reduce(identity, reduce)
}

#[cfg(feature = "parallel")]
pub fn map_reduce<T, I, M, R>(range: Range<u64>, identity: I, map: M, reduce: R) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    M: Fn(u64) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    map_reduce_par(range, identity, map, reduce)
}

#[cfg(not(feature = "parallel"))]
pub fn map_reduce<T, I, M, R>(range: Range<u64>, identity: I, map: M, reduce: R) -> T
where
    I: Fn() -> T,
    M: Fn(u64) -> T,
    R: Fn(T, T) -> T,
{
    map_reduce_seq(range, identity, map, reduce)
}
