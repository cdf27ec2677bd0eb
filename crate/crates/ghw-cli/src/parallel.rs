//! Multi-threaded drivers for the two exhaustive searches.
//!
//! Both searches partition by RREF pivot pattern: each worker walks a chunk
//! of patterns and the partial results combine by max (intersection search)
//! or min (support search). The combined value is independent of the thread
//! count, so reports are reproducible across `--threads` settings.

use ghw_core::hierarchy::{intersection_max_over, search_guards, support_min_over};
use ghw_core::subspaces::pivot_patterns;
use ghw_core::{HierarchyError, OracleBudget, TraceCode};

fn chunk_len(total: usize, threads: usize) -> usize {
    total.div_ceil(threads.max(1)).max(1)
}

/// `d_r = n - max |D meet H|` over `(m-r)`-dimensional subspaces `H`,
/// searched on `threads` workers.
pub fn intersection_search(
    code: &TraceCode,
    r: usize,
    budget: &OracleBudget,
    threads: usize,
) -> Result<u64, HierarchyError> {
    let m = code.ctx().m();
    search_guards(code, r, m - r, budget)?;
    let patterns = pivot_patterns(m, m - r);
    let max = std::thread::scope(|scope| {
        let workers: Vec<_> = patterns
            .chunks(chunk_len(patterns.len(), threads))
            .map(|chunk| scope.spawn(move || intersection_max_over(code, chunk)))
            .collect();
        workers
            .into_iter()
            .filter_map(|w| w.join().expect("search worker panicked"))
            .max()
    })
    .expect("pattern list is never empty");
    Ok(code.len() as u64 - max)
}

/// `d_r = min |Supp(V)|` over `r`-dimensional subcodes, searched on
/// `threads` workers.
pub fn support_search(
    code: &TraceCode,
    r: usize,
    budget: &OracleBudget,
    threads: usize,
) -> Result<u64, HierarchyError> {
    let m = code.ctx().m();
    search_guards(code, r, r, budget)?;
    let patterns = pivot_patterns(m, r);
    let partials = std::thread::scope(|scope| {
        let workers: Vec<_> = patterns
            .chunks(chunk_len(patterns.len(), threads))
            .map(|chunk| scope.spawn(move || support_min_over(code, chunk)))
            .collect();
        workers
            .into_iter()
            .map(|w| w.join().expect("search worker panicked"))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(partials
        .into_iter()
        .flatten()
        .min()
        .expect("pattern list is never empty"))
}
