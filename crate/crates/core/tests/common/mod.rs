//! Independent oracles. Nothing here calls the dimension code under test.

#![allow(dead_code)]

use bratteli_core::{BigUint, GradedGraph, Label, VertexId};

/// Catalan numbers from `C_{n+1} = Σ C_i C_{n-i}`.
pub fn catalan(n: usize) -> BigUint {
    let mut c = vec![BigUint::from(1u32)];
    for m in 0..n {
        let next = (0..=m).map(|i| &c[i] * &c[m - i]).sum();
        c.push(next);
    }
    c.swap_remove(n)
}

/// Number of Dyck words of semilength `n`, by generating them.
pub fn dyck_count(n: usize) -> u64 {
    fn go(open: usize, close: usize, n: usize) -> u64 {
        if close == n {
            return 1;
        }
        let mut total = 0;
        if open < n {
            total += go(open + 1, close, n);
        }
        if close < open {
            total += go(open, close + 1, n);
        }
        total
    }
    go(0, 0, n)
}

/// `(2n-1)!! = 1·3·5···(2n-1)`, with `(-1)!! = 1`.
pub fn double_factorial_odd(n: usize) -> BigUint {
    (1..=n).map(|k| BigUint::from(2 * k - 1)).product()
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// Bell numbers from the Bell triangle.
pub fn bell(n: usize) -> BigUint {
    let mut row = vec![BigUint::from(1u32)];
    for _ in 0..n {
        let mut next = vec![row.last().unwrap().clone()];
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row.swap_remove(0)
}

/// Partition numbers from Euler's pentagonal recurrence.
pub fn partition_count(n: usize) -> u64 {
    let mut p = vec![1i64; n + 1];
    for m in 1..=n {
        let mut total = 0i64;
        for k in 1i64.. {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            total += sign * p[m - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                total += sign * p[m - g2];
            }
        }
        p[m] = total;
    }
    p[n] as u64
}

/// Path counts from the root to every vertex of level `n`, by walking every
/// path explicitly.
pub fn enumerate_paths<L: Label>(graph: &GradedGraph<L>, n: usize) -> Vec<u64> {
    enumerate_paths_from(graph, VertexId::ROOT, n)
}

/// Path counts from `v` to every vertex of level `n`.
pub fn enumerate_paths_from<L: Label>(graph: &GradedGraph<L>, v: VertexId, n: usize) -> Vec<u64> {
    fn go<L: Label>(g: &GradedGraph<L>, v: VertexId, n: usize, counts: &mut [u64]) {
        if v.level == n {
            counts[v.index] += 1;
            return;
        }
        for w in g.up(v) {
            go(g, w, n, counts);
        }
    }
    let mut counts = vec![0; graph.level_size(n)];
    go(graph, v, n, &mut counts);
    counts
}

/// Weighted walks on ℤ₊ from 0 to `l` in `n` steps; a down step from `h`
/// weighs `a[h-1]`. Every ±1 sequence is tried.
pub fn weighted_walks(a: &[u64], n: usize, l: usize) -> u64 {
    let mut total = 0;
    for mask in 0u32..(1 << n) {
        let mut h = 0i64;
        let mut weight = 1u64;
        let mut ok = true;
        for s in 0..n {
            if mask >> s & 1 == 1 {
                h += 1;
            } else {
                if h == 0 {
                    ok = false;
                    break;
                }
                weight *= a[(h - 1) as usize];
                h -= 1;
            }
        }
        if ok && h == l as i64 {
            total += weight;
        }
    }
    total
}
