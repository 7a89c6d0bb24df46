//! Brute-force oracles. Nothing here calls into the formulas under test.
#![allow(dead_code)]

/// Semistandard Young tableaux of shape `shape` with entries in `1..=n`,
/// counted by filling cells one at a time.
pub fn ssyt_count(shape: &[u32], n: u32) -> u64 {
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<u32>> = shape.iter().map(|&len| vec![0; len as usize]).collect();
    fn fill(cells: &[(usize, usize)], i: usize, n: u32, grid: &mut Vec<Vec<u32>>) -> u64 {
        if i == cells.len() {
            return 1;
        }
        let (r, c) = cells[i];
        let left = if c > 0 { grid[r][c - 1] } else { 1 };
        let above = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
        let lo = left.max(above);
        let mut total = 0;
        for v in lo..=n {
            grid[r][c] = v;
            total += fill(cells, i + 1, n, grid);
        }
        grid[r][c] = 0;
        total
    }
    fill(&cells, 0, n, &mut grid)
}

/// Every partition of `total` (any number of parts), by brute recursion.
pub fn all_partitions(total: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in 1..=cap.min(rest) {
            prefix.push(p);
            rec(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, total, &mut Vec::new(), &mut out);
    out
}

/// Monomials of degree `k` in `vars` variables, as weakly increasing index lists.
pub fn monomials(vars: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(vars: usize, k: usize, start: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for v in start..vars {
            prefix.push(v);
            rec(vars, k, v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if vars == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(vars, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Pascal-triangle binomial in u128, independent of the library's routine.
pub fn pascal(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[k]
}
