//! Data-parallel helpers. With the `parallel` feature these dispatch to rayon
//! once the estimated work is large enough; otherwise they run sequentially.
//! Results never depend on the schedule.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Below this many elementary operations the sequential path is used.
pub const PAR_THRESHOLD: usize = 1 << 15;

/// Calls `f(i, row)` for each `width`-sized row of `data`; `cost` is the work per row.
pub fn rows_mut<F>(data: &mut [u32], width: usize, cost: usize, f: F)
where
    F: Fn(usize, &mut [u32]) + Sync + Send,
{
    if width == 0 {
        return;
    }
    #[cfg(feature = "parallel")]
    if data.len() / width * cost.max(1) * width >= PAR_THRESHOLD && data.len() > width {
        data.par_chunks_mut(width).enumerate().for_each(|(i, r)| f(i, r));
        return;
    }
    let _ = cost;
    data.chunks_mut(width).enumerate().for_each(|(i, r)| f(i, r));
}

/// Calls `f` on every item; `cost` is the work per item.
pub fn for_each_mut<T, F>(items: &mut [T], cost: usize, f: F)
where
    T: Send,
    F: Fn(&mut T) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if items.len() * cost.max(1) >= PAR_THRESHOLD && items.len() > 1 {
        items.par_iter_mut().for_each(f);
        return;
    }
    let _ = cost;
    items.iter_mut().for_each(f);
}

/// Order-preserving map over `0..n`; `cost` is the work per index.
pub fn map_range<R, F>(n: usize, cost: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if n * cost.max(1) >= PAR_THRESHOLD && n > 1 {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = cost;
    (0..n).map(f).collect()
}

/// Whether the parallel backend is compiled in.
pub fn enabled() -> bool {
    cfg!(feature = "parallel")
}

/// Fixes the size of the global pool; a no-op without the `parallel` feature.
/// Fails if the pool was already initialized.
pub fn set_threads(n: usize) -> Result<(), String> {
    #[cfg(feature = "parallel")]
    return rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string());
    #[cfg(not(feature = "parallel"))]
    {
        let _ = n;
        Ok(())
    }
}
