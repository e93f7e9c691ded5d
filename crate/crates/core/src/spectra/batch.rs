//! Independent `(q, N)` jobs fanned out over worker threads.

use super::pipeline::{compute_spectrum, SecularReport, SpectrumOptions};
use super::SpectraError;
use crate::exec::{par_map, Execution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Job {
    pub q: usize,
    pub n: usize,
}

/// Every job with `1 <= q <= max_q`, `1 <= N <= max_n`.
pub fn grid(max_q: usize, max_n: usize) -> Vec<Job> {
    (1..=max_q).flat_map(|q| (1..=max_n).map(move |n| Job { q, n })).collect()
}

/// Runs each job's pipeline single-threaded; `exec` decides whether jobs
/// run concurrently. Results keep the job order.
pub fn run_batch(
    jobs: Vec<Job>,
    opts: &SpectrumOptions,
    exec: Execution,
) -> Vec<(Job, Result<SecularReport, SpectraError>)> {
    let per_job = SpectrumOptions {
        exec: Execution::Sequential,
        ..opts.clone()
    };
    par_map(exec, jobs, |job| (job, compute_spectrum(job.q, job.n, &per_job)))
}
