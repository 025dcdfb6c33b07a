//! Minimal ordered fan-out over a fixed number of worker threads.
//!
//! Verification checks are independent pure computations, so the pool needs
//! no coordination beyond a shared queue; results come back in task order
//! regardless of completion order.

use std::collections::VecDeque;
use std::sync::Mutex;

/// Run every task, at most `jobs` at a time, and return the results in the
/// order the tasks were given.
pub fn run_ordered<T, F>(jobs: usize, tasks: Vec<F>) -> Vec<T>
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    let jobs = jobs.max(1).min(tasks.len().max(1));
    if jobs <= 1 {
        return tasks.into_iter().map(|f| f()).collect();
    }
    let queue: Mutex<VecDeque<(usize, F)>> = Mutex::new(tasks.into_iter().enumerate().collect());
    let results: Mutex<Vec<(usize, T)>> = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let item = queue.lock().expect("queue poisoned").pop_front();
                match item {
                    Some((index, task)) => {
                        let value = task();
                        results.lock().expect("results poisoned").push((index, value));
                    }
                    None => break,
                }
            });
        }
    });
    let mut collected = results.into_inner().expect("results poisoned");
    collected.sort_by_key(|(index, _)| *index);
    collected.into_iter().map(|(_, value)| value).collect()
}
