//! Per-block cohomology spread over worker threads.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clarke_core::poset::GradedSheaf;
use clarke_core::HodgeTable;

/// `f^{λ,μ}` of a sheaf, computing the blocks on `jobs` threads. The result
/// does not depend on `jobs`.
pub fn hodge_table(sheaf: &GradedSheaf, jobs: usize) -> HodgeTable {
    let n = sheaf.blocks().len();
    let jobs = jobs.clamp(1, n.max(1));
    let per_block: Vec<Vec<usize>> = if jobs == 1 {
        (0..n).map(|b| sheaf.block_cohomology(b)).collect()
    } else {
        let next = AtomicUsize::new(0);
        let slots: Mutex<Vec<Option<Vec<usize>>>> = Mutex::new(vec![None; n]);
        std::thread::scope(|s| {
            for _ in 0..jobs {
                s.spawn(|| loop {
                    let b = next.fetch_add(1, Ordering::Relaxed);
                    if b >= n {
                        break;
                    }
                    let h = sheaf.block_cohomology(b);
                    slots.lock().expect("no worker panicked")[b] = Some(h);
                });
            }
        });
        slots
            .into_inner()
            .expect("no worker panicked")
            .into_iter()
            .map(|h| h.expect("every block computed"))
            .collect()
    };
    sheaf.collect_ranks(&per_block).hodge_table()
}
