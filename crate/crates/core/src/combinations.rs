use std::ops::ControlFlow;

/// Visits every `k`-subset of `[0, m)` as a sorted slice, in lexicographic order.
pub fn for_each_combination<F>(m: usize, k: usize, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if k > m {
        return ControlFlow::Continue(());
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        visit(&c)?;
        let Some(i) = (0..k).rev().find(|&i| c[i] != i + m - k) else {
            return ControlFlow::Continue(());
        };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

pub fn binomial(m: usize, k: usize) -> u128 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    (0..k).fold(1u128, |acc, i| acc * (m - i) as u128 / (i + 1) as u128)
}
