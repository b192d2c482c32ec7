use rayon::prelude::*;

use crate::error::{Error, Result};

/// Maps `f` over `items`, on a pool of `jobs` threads when `jobs > 1`.
/// Output order follows input order.
pub(crate) fn map<I, O, F>(jobs: usize, items: &[I], f: F) -> Result<Vec<O>>
where
    I: Sync,
    O: Send,
    F: Fn(&I) -> Result<O> + Sync,
{
    if jobs <= 1 {
        return items.iter().map(&f).collect();
    }
    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| Error::InvalidInput(e.to_string()))?;
    pool.install(|| items.par_iter().map(&f).collect())
}
