//! Exact counting: binomials, partitions, Kostka numbers and contingency tables.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::lie::Partition;

/// `binomial(n, k)` in arbitrary precision.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Partitions of `total` with at most `max_parts` parts, in decreasing
/// lexicographic order (a linear extension of the dominance order).
pub fn partitions(total: u32, max_parts: usize) -> Vec<Partition> {
    fn rec(rest: u32, cap: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition::new(prefix.clone()).expect("built weakly decreasing"));
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=cap.min(rest)).rev() {
            prefix.push(p);
            rec(rest - p, p, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, total, max_parts, &mut Vec::new(), &mut out);
    out
}

/// `λ ⊵ μ` in the dominance order (partial sums, zero-padded).
pub fn dominates(lambda: &[u32], mu: &[u32]) -> bool {
    let len = lambda.len().max(mu.len());
    let (mut a, mut b) = (0u64, 0u64);
    for i in 0..len {
        a += *lambda.get(i).unwrap_or(&0) as u64;
        b += *mu.get(i).unwrap_or(&0) as u64;
        if a < b {
            return false;
        }
    }
    a == b
}

/// Kostka number: semistandard tableaux of shape `shape` with content `content`
/// (any composition; zero entries allowed). Counted by peeling horizontal strips.
pub fn kostka(shape: &[u32], content: &[u32]) -> BigUint {
    let mut memo = HashMap::new();
    kostka_rec(shape.to_vec(), content, &mut memo)
}

fn kostka_rec(
    shape: Vec<u32>,
    content: &[u32],
    memo: &mut HashMap<(Vec<u32>, usize), BigUint>,
) -> BigUint {
    let shape: Vec<u32> = shape.into_iter().filter(|&p| p > 0).collect();
    let size: u32 = shape.iter().sum();
    let total: u32 = content.iter().sum();
    if size != total {
        return BigUint::zero();
    }
    let Some((&last, rest)) = content.split_last() else {
        return BigUint::one();
    };
    let key = (shape.clone(), content.len());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    // the largest letter fills a horizontal strip of size `last`: choose ν
    // interlacing shape with |shape/ν| = last
    let mut result = BigUint::zero();
    let mut nu = vec![0u32; shape.len()];
    strips(&shape, 0, last, &mut nu, &mut |nu| {
        result += kostka_rec(nu.to_vec(), rest, memo);
    });
    memo.insert(key, result.clone());
    result
}

fn strips(shape: &[u32], i: usize, remove: u32, nu: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if i == shape.len() {
        if remove == 0 {
            f(nu);
        }
        return;
    }
    let lower = shape.get(i + 1).copied().unwrap_or(0);
    for take in 0..=(shape[i] - lower).min(remove) {
        nu[i] = shape[i] - take;
        strips(shape, i + 1, remove - take, nu, f);
    }
}

/// Nonnegative integer matrices with row sums `rows` and column sums `cols`.
pub fn contingency_count(rows: &[u32], cols: &[u32]) -> BigUint {
    if rows.iter().sum::<u32>() != cols.iter().sum::<u32>() {
        return BigUint::zero();
    }
    let mut memo = HashMap::new();
    contingency_rec(rows, cols.to_vec(), &mut memo)
}

fn contingency_rec(
    rows: &[u32],
    cols: Vec<u32>,
    memo: &mut HashMap<(usize, Vec<u32>), BigUint>,
) -> BigUint {
    let Some((&first, rest)) = rows.split_first() else {
        return if cols.iter().all(|&c| c == 0) {
            BigUint::one()
        } else {
            BigUint::zero()
        };
    };
    let key = (rows.len(), cols.clone());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut total = BigUint::zero();
    let mut row = vec![0u32; cols.len()];
    fill_row(&cols, 0, first, &mut row, &mut |row| {
        let remaining: Vec<u32> = cols.iter().zip(row).map(|(c, r)| c - r).collect();
        total += contingency_rec(rest, remaining, memo);
    });
    memo.insert(key, total.clone());
    total
}

fn fill_row(cols: &[u32], j: usize, left: u32, row: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if j == cols.len() {
        if left == 0 {
            f(row);
        }
        return;
    }
    for v in 0..=cols[j].min(left) {
        row[j] = v;
        fill_row(cols, j + 1, left - v, row, f);
    }
}
