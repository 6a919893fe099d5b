//! Order-preserving map over a slice, on the rayon pool when the `parallel`
//! feature is on and the caller asks for it.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    #[default]
    Parallel,
    Sequential,
}

pub fn par_map<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_result_either_way() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = par_map(&xs, Execution::Parallel, |x| x * x);
        let b = par_map(&xs, Execution::Sequential, |x| x * x);
        assert_eq!(a, b);
    }
}
