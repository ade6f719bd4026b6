//! Symbolic rank of the commutator matrix by exact minor expansion.
//!
//! Entries are linear forms `sum_k c_ij^k x_k`. After clearing denominators
//! the minors are polynomials with integer coefficients; monomials are packed
//! into a `u64` with eight bits per variable, so the oracle handles up to
//! eight variables.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::Alg;

type Mono = u64;
type IPoly = HashMap<Mono, i128>;

const MAX_VARS: usize = 8;

fn var(k: usize) -> Mono {
    1 << (8 * k)
}

fn mul_linear(p: &IPoly, lin: &[(Mono, i128)], sign: i128, out: &mut IPoly) {
    for (m, c) in p {
        for (v, a) in lin {
            let t = c.checked_mul(*a).and_then(|t| t.checked_mul(sign)).expect("coefficient overflow");
            let slot = out.entry(m + v).or_insert(0);
            *slot = slot.checked_add(t).expect("coefficient overflow");
        }
    }
}

/// Determinant of the submatrix on `rows` x `cols`, expanded row by row over
/// subsets of used columns.
fn minor(entries: &[Vec<Vec<(Mono, i128)>>], rows: &[usize], cols: &[usize]) -> bool {
    let r = rows.len();
    let mut layer: HashMap<u32, IPoly> = HashMap::new();
    layer.insert(0, IPoly::from([(0, 1)]));
    for &row in rows {
        let mut next: HashMap<u32, IPoly> = HashMap::new();
        for (mask, poly) in &layer {
            for (ci, &col) in cols.iter().enumerate() {
                if mask & (1 << ci) != 0 || entries[row][col].is_empty() {
                    continue;
                }
                // Sign of placing column ci after the columns already used.
                let above = (mask >> ci).count_ones();
                let sign = if above % 2 == 0 { 1 } else { -1 };
                let slot = next.entry(mask | (1 << ci)).or_default();
                mul_linear(poly, &entries[row][col], sign, slot);
            }
        }
        for p in next.values_mut() {
            p.retain(|_, c| *c != 0);
        }
        next.retain(|_, p| !p.is_empty());
        if next.is_empty() {
            return false;
        }
        layer = next;
    }
    let full = (1u32 << r) - 1;
    layer.get(&full).is_some_and(|p| !p.is_empty())
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    go(0, n, r, &mut cur, &mut out);
    out
}

/// Rank over the field of rational functions: the size of the largest
/// nonvanishing minor.
pub fn symbolic_rank(alg: &Alg) -> usize {
    let n = alg.dim();
    assert!(n <= MAX_VARS, "the minor oracle handles at most {MAX_VARS} variables");
    let mut lcm = BigInt::from(1);
    for plane in &alg.c {
        for row in plane {
            for x in row {
                if !x.is_zero() {
                    lcm = lcm.lcm(x.denom());
                }
            }
        }
    }
    let entries: Vec<Vec<Vec<(Mono, i128)>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .filter(|&k| !alg.c[i][j][k].is_zero())
                        .map(|k| {
                            let scaled = &alg.c[i][j][k] * num_rational::BigRational::from_integer(lcm.clone());
                            (var(k), scaled.to_integer().to_i128().expect("small constants"))
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    for r in (1..=n).rev() {
        let sets = subsets(n, r);
        for rows in &sets {
            for cols in &sets {
                if minor(&entries, rows, cols) {
                    return r;
                }
            }
        }
    }
    0
}
