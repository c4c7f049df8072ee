//! Small helpers over sorted, duplicate-free vectors used as vertex sets.

use std::cmp::Ordering;

pub(crate) fn contains<T: Ord>(set: &[T], x: &T) -> bool {
    set.binary_search(x).is_ok()
}

pub(crate) fn insert<T: Ord>(set: &mut Vec<T>, x: T) {
    if let Err(pos) = set.binary_search(&x) {
        set.insert(pos, x);
    }
}

pub(crate) fn remove<T: Ord>(set: &mut Vec<T>, x: &T) -> bool {
    match set.binary_search(x) {
        Ok(pos) => {
            set.remove(pos);
            true
        }
        Err(_) => false,
    }
}

pub(crate) fn union<T: Ord + Copy>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

pub(crate) fn intersection<T: Ord + Copy>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().copied().filter(|x| contains(b, x)).collect()
}

pub(crate) fn difference<T: Ord + Copy>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().copied().filter(|x| !contains(b, x)).collect()
}

pub(crate) fn is_subset<T: Ord>(a: &[T], b: &[T]) -> bool {
    a.iter().all(|x| contains(b, x))
}

/// All subsets of `items` with at most `max` elements, each sorted when `items` is.
pub(crate) fn subsets_up_to<T: Copy>(items: &[T], max: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for &x in items {
        let grown: Vec<Vec<T>> = out
            .iter()
            .filter(|s| s.len() < max)
            .map(|s| {
                let mut s = s.clone();
                s.push(x);
                s
            })
            .collect();
        out.extend(grown);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_counts() {
        assert_eq!(subsets_up_to(&[1, 2, 3, 4], 4).len(), 16);
        assert_eq!(subsets_up_to(&[1, 2, 3, 4], 1).len(), 5);
        assert_eq!(subsets_up_to(&[1, 2, 3], 0), vec![Vec::<i32>::new()]);
    }

    #[test]
    fn sorted_ops() {
        assert_eq!(union(&[1, 3, 5], &[2, 3, 6]), vec![1, 2, 3, 5, 6]);
        assert_eq!(difference(&[1, 3, 5], &[3]), vec![1, 5]);
        assert_eq!(intersection(&[1, 3, 5], &[1, 5, 7]), vec![1, 5]);
        let mut s = vec![1, 4];
        insert(&mut s, 2);
        insert(&mut s, 4);
        assert_eq!(s, vec![1, 2, 4]);
        assert!(remove(&mut s, &1));
        assert!(!remove(&mut s, &7));
    }
}
