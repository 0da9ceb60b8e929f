//! Sequential or data-parallel evaluation of independent instances.
//!
//! Results are always returned in input order, so aggregation is identical
//! in both modes. Without the `parallel` feature, [`Execution::Parallel`]
//! falls back to the sequential path.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Sequential,
    Parallel,
}

impl Execution {
    /// `Parallel` when more than one worker is requested.
    pub fn from_workers(n: usize) -> Self {
        if n > 1 {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

pub fn parallel_available() -> bool {
    cfg!(feature = "parallel")
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(items: &[T], mode: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Maps `f` over `0..n`, preserving order.
pub fn map_range<R, F>(n: usize, mode: Execution, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        _ => (0..n).map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved_in_both_modes() {
        let xs: Vec<u64> = (0..200).collect();
        let seq = map(&xs, Execution::Sequential, |x| x * x);
        let par = map(&xs, Execution::Parallel, |x| x * x);
        assert_eq!(seq, par);
        assert_eq!(
            map_range(5, Execution::Parallel, |i| i + 1),
            vec![1, 2, 3, 4, 5]
        );
    }
}
