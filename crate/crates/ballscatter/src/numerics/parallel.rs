//! Deterministic fork-join map over slices with a process-wide worker cap.
//!
//! Work is split into contiguous chunks, one per worker, and results are
//! concatenated in input order, so the output is independent of scheduling.
//! The `--threads` CLI flag sets the cap; 0 means "use all available cores".

use std::sync::atomic::{AtomicUsize, Ordering};

static WORKER_CAP: AtomicUsize = AtomicUsize::new(0);

/// Caps the number of worker threads used by parallel scans and multistart
/// optimization. 0 restores the default (available parallelism).
pub fn set_worker_cap(n: usize) {
    WORKER_CAP.store(n, Ordering::Relaxed);
}

pub fn worker_cap() -> usize {
    let cap = WORKER_CAP.load(Ordering::Relaxed);
    if cap > 0 {
        return cap;
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// Applies `f` to every item, possibly across threads; the result order
/// matches the input order exactly.
pub fn parallel_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let workers = worker_cap().min(items.len()).max(1);
    if workers == 1 || items.len() <= 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    let mut out: Vec<Vec<R>> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|slice| scope.spawn(|| slice.iter().map(&f).collect::<Vec<R>>()))
            .collect();
        out = handles.into_iter().map(|h| h.join().unwrap()).collect();
    });
    out.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_order() {
        let items: Vec<usize> = (0..997).collect();
        let out = parallel_map(&items, |&i| i * 2);
        for (i, v) in out.iter().enumerate() {
            assert_eq!(*v, 2 * i);
        }
    }

    #[test]
    fn single_worker_path_matches() {
        let items: Vec<f64> = (0..50).map(|i| i as f64).collect();
        set_worker_cap(1);
        let serial = parallel_map(&items, |&x| x.sin());
        set_worker_cap(0);
        let parallel = parallel_map(&items, |&x| x.sin());
        assert_eq!(serial, parallel);
    }
}
