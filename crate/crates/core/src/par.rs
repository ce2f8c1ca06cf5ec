//! Data-parallel map with a sequential fallback.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecMode {
    /// Uses the rayon pool when the `parallel` feature is enabled; sequential otherwise.
    #[default]
    Parallel,
    Sequential,
}

/// `(0..n).map(f)` collected in index order, so results never depend on the mode.
pub fn map_range<T, F>(n: usize, mode: ExecMode, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
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
    fn modes_agree() {
        let f = |i: usize| i * i;
        assert_eq!(
            map_range(100, ExecMode::Parallel, f),
            map_range(100, ExecMode::Sequential, f)
        );
    }
}
