//! Small counting and subset-enumeration helpers shared by the modules.

use crate::error::{Error, Result};

/// `C(n, k)` with overflow detection.
pub fn binomial(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = acc
            .checked_mul(u128::from(n - i))
            .ok_or(Error::Overflow("binomial coefficient"))?
            / u128::from(i + 1);
    }
    Ok(acc)
}

/// Calls `f` on every `k`-subset of `items`, in lexicographic order of positions.
pub fn for_each_subset<T: Copy>(items: &[T], k: usize, mut f: impl FnMut(&[T])) {
    if k > items.len() {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf: Vec<T> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&buf);
        // Advance the rightmost index that still has room.
        let mut pos = k;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if idx[pos] < items.len() - k + pos {
                break;
            }
            if pos == 0 {
                return;
            }
        }
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
        for j in pos..k {
            buf[j] = items[idx[j]];
        }
    }
}

/// All `k`-subsets of `items` collected into vectors.
pub fn subsets<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    for_each_subset(items, k, |s| out.push(s.to_vec()));
    out
}

/// Integer square root of a non-negative value, if it is a perfect square.
pub fn exact_sqrt(value: i128) -> Option<i128> {
    if value < 0 {
        return None;
    }
    let mut root = (value as f64).sqrt() as i128;
    while root * root > value {
        root -= 1;
    }
    while (root + 1) * (root + 1) <= value {
        root += 1;
    }
    (root * root == value).then_some(root)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2).unwrap(), 10);
        assert_eq!(binomial(6, 2).unwrap(), 15);
        assert_eq!(binomial(7, 3).unwrap(), 35);
        assert_eq!(binomial(3, 5).unwrap(), 0);
        assert_eq!(binomial(10, 0).unwrap(), 1);
        assert_eq!(binomial(100, 50).unwrap(), 100891344545564193334812497256);
        assert!(binomial(1000, 500).is_err());
    }

    #[test]
    fn subset_enumeration_is_lexicographic() {
        let s = subsets(&[1, 2, 3, 4], 2);
        assert_eq!(
            s,
            vec![
                vec![1, 2],
                vec![1, 3],
                vec![1, 4],
                vec![2, 3],
                vec![2, 4],
                vec![3, 4]
            ]
        );
        assert_eq!(subsets(&[1, 2, 3], 0), vec![Vec::<i32>::new()]);
        assert!(subsets(&[1, 2], 3).is_empty());
        assert_eq!(subsets(&[7], 1), vec![vec![7]]);
    }

    #[test]
    fn perfect_squares() {
        assert_eq!(exact_sqrt(25), Some(5));
        assert_eq!(exact_sqrt(1), Some(1));
        assert_eq!(exact_sqrt(0), Some(0));
        assert_eq!(exact_sqrt(24), None);
        assert_eq!(exact_sqrt(-4), None);
    }
}
