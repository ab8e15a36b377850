//! Independent reference implementations used as test oracles.
//!
//! Nothing here calls into the library's math; each oracle recomputes its
//! quantity from first principles by enumeration or grid search.

#![allow(dead_code)]

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Mutual information in bits of the binary joint with `P(X=1, Y=1) = a`,
/// `P(X=1) = p`, `P(Y=1) = q`, via `H(X) + H(Y) - H(X,Y)` in nats.
pub fn joint_mi_bits(a: f64, p: f64, q: f64) -> f64 {
    let plogp = |v: f64| if v > 0.0 { -v * v.ln() } else { 0.0 };
    let cells = [a, p - a, q - a, 1.0 - p - q + a];
    let hx = plogp(p) + plogp(1.0 - p);
    let hy = plogp(q) + plogp(1.0 - q);
    let hxy: f64 = cells.iter().map(|&c| plogp(c.max(0.0))).sum();
    ((hx + hy - hxy) / std::f64::consts::LN_2).max(0.0)
}

/// Minimizes a unimodal `f` on `[lo, hi]`: a uniform grid of `grid` points,
/// then golden-section refinement around the best grid point.
pub fn grid_min(f: impl Fn(f64) -> f64, lo: f64, hi: f64, grid: usize) -> (f64, f64) {
    if hi <= lo {
        return (lo, f(lo));
    }
    let step = (hi - lo) / grid as f64;
    let mut best = (lo, f(lo));
    for i in 1..=grid {
        let x = lo + step * i as f64;
        let v = f(x);
        if v < best.1 {
            best = (x, v);
        }
    }
    let (mut a, mut b) = ((best.0 - step).max(lo), (best.0 + step).min(hi));
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        if b - a < 1e-15 {
            break;
        }
        let c = b - phi * (b - a);
        let d = a + phi * (b - a);
        if f(c) <= f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    let mid = (a + b) / 2.0;
    let v = f(mid);
    if v < best.1 {
        (mid, v)
    } else {
        best
    }
}

/// `I_m(q, p, D)` by grid search over the joint's free cell, or `None` when
/// no joint with these marginals has distortion at most `D`.
pub fn oracle_lower_mi(q: f64, p: f64, d: f64, grid: usize) -> Option<f64> {
    // distortion p + q - 2a <= D
    let lo = (p + q - 1.0).max(0.0).max((p + q - d) / 2.0);
    let hi = p.min(q);
    if lo > hi + 1e-12 {
        return None;
    }
    let hi = hi.max(lo);
    Some(grid_min(|a| joint_mi_bits(a, p, q), lo, hi, grid).1)
}

/// `(argmin_q, min_q) I_m(q, p, D)` over the feasible `q` interval.
pub fn oracle_rd(p: f64, d: f64, grid: usize) -> (f64, f64) {
    let lo = (p - d).max(0.0);
    let hi = (p + d).min(1.0);
    grid_min(|q| oracle_lower_mi(q, p, d, grid).unwrap_or(f64::INFINITY), lo, hi, grid)
}

/// Bits of `v`'s low `len` bits, MSB first.
pub fn bits_of(v: u64, len: usize) -> Vec<bool> {
    (0..len).map(|i| (v >> (len - 1 - i)) & 1 == 1).collect()
}

fn prob(x: &[bool], p: f64) -> f64 {
    x.iter().map(|&b| if b { p } else { 1.0 - p }).product()
}

/// `floor(num * len / den)` mismatches allowed over `len` symbols.
fn allowed(num: u64, den: u64, len: usize) -> usize {
    (num * len as u64 / den) as usize
}

/// `P(d(X, y) <= D |y|)` by enumerating all `2^|y|` inputs.
pub fn enum_ball(y: &[bool], num: u64, den: u64, p: f64) -> f64 {
    let len = y.len();
    let r = allowed(num, den, len);
    (0u64..1 << len)
        .map(|v| bits_of(v, len))
        .filter(|x| x.iter().zip(y).filter(|(a, b)| a != b).count() <= r)
        .map(|x| prob(&x, p))
        .sum()
}

/// Prefix-wise match, checked one prefix at a time.
pub fn naive_prefixwise(x: &[bool], y: &[bool], num: u64, den: u64) -> bool {
    let mut m = 0;
    for l in 1..=y.len() {
        if x[l - 1] != y[l - 1] {
            m += 1;
        }
        if m > allowed(num, den, l) {
            return false;
        }
    }
    true
}

/// `P(X ~ y)` under the prefix-wise relation by enumeration.
pub fn enum_match(y: &[bool], num: u64, den: u64, p: f64) -> f64 {
    let len = y.len();
    (0u64..1 << len)
        .map(|v| bits_of(v, len))
        .filter(|x| naive_prefixwise(x, y, num, den))
        .map(|x| prob(&x, p))
        .sum()
}

/// Length of the longest codelet in `codelets` matching `x[start..]`
/// prefix-wise; 0 when none does.
pub fn brute_longest_match(codelets: &[Vec<bool>], x: &[bool], start: usize, num: u64, den: u64) -> usize {
    codelets
        .iter()
        .filter(|y| start + y.len() <= x.len() && naive_prefixwise(&x[start..start + y.len()], y, num, den))
        .map(Vec::len)
        .max()
        .unwrap_or(0)
}

/// Textbook LZ78 parse: each phrase is the longest dictionary phrase plus
/// one new bit; a final incomplete phrase is kept as is. Returns phrase
/// lengths.
pub fn reference_lz78(x: &[bool]) -> Vec<usize> {
    let mut dict: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut lens = Vec::new();
    let mut cur = Vec::new();
    for &b in x {
        cur.push(b);
        if !dict.contains_key(&cur) {
            dict.insert(cur.clone(), dict.len() + 1);
            lens.push(cur.len());
            cur.clear();
        }
    }
    if !cur.is_empty() {
        lens.push(cur.len());
    }
    lens
}

/// Seeded generator for test inputs.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_bools(rng: &mut impl Rng, n: usize, p: f64) -> Vec<bool> {
    (0..n).map(|_| rng.gen_bool(p)).collect()
}
