//! Sparse linear algebra over `F_p` for 61-bit primes, with rational
//! reconstruction back to `Q`.
//!
//! Used to find kernels of large sparse rational systems: the kernel is
//! computed modulo several primes, lifted by CRT and rational
//! reconstruction, and then checked exactly by the caller. A kernel over
//! `F_p` is never smaller than the kernel over `Q`, so a lifted basis of the
//! same size that verifies exactly is the full rational kernel.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

/// A sparse row: `(column, value)` pairs sorted by column, values nonzero.
pub type Row = Vec<(u32, u64)>;

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^61`, largest first (the first is `2^61 - 1`).
pub fn primes() -> impl Iterator<Item = u64> {
    let mut next = (1u64 << 61) - 1;
    std::iter::from_fn(move || {
        while !is_prime(next) {
            next -= 2;
        }
        let p = next;
        next -= 2;
        Some(p)
    })
}

/// Image of `q` in `F_p`, or `None` when `p` divides the denominator.
pub fn reduce(q: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = q.denom().mod_floor(&pb).to_u64().expect("below p");
    if den == 0 {
        return None;
    }
    let num = q.numer().mod_floor(&pb).to_u64().expect("below p");
    Some(mul_mod(num, inv_mod(den, p), p))
}

/// Reduced row echelon form over `F_p`, built incrementally.
pub struct Echelon {
    p: u64,
    ncols: usize,
    /// Pivot row for each column, normalized to a leading 1.
    pivots: Vec<Option<Row>>,
    rank: usize,
    scratch: Vec<u64>,
}

impl Echelon {
    pub fn new(ncols: usize, p: u64) -> Self {
        Self {
            p,
            ncols,
            pivots: vec![None; ncols],
            rank: 0,
            scratch: vec![0; ncols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_full(&self) -> bool {
        self.rank == self.ncols
    }

    /// Reduces `row` against the current pivots and keeps it if independent.
    pub fn insert(&mut self, row: &[(u32, u64)]) -> bool {
        if row.is_empty() || self.is_full() {
            return false;
        }
        let p = self.p;
        let acc = &mut self.scratch;
        let start = row[0].0 as usize;
        for &(c, v) in row {
            acc[c as usize] = v;
        }
        let mut lead: Option<usize> = None;
        for c in start..self.ncols {
            let v = acc[c];
            if v == 0 {
                continue;
            }
            match &self.pivots[c] {
                Some(prow) => {
                    for &(pc, pv) in prow {
                        let pc = pc as usize;
                        acc[pc] = sub_mod(acc[pc], mul_mod(v, pv, p), p);
                    }
                }
                None => {
                    if lead.is_none() {
                        lead = Some(c);
                    }
                }
            }
        }
        let Some(lead) = lead else {
            return false;
        };
        let inv = inv_mod(acc[lead], p);
        let mut out: Row = Vec::new();
        for (c, slot) in acc.iter_mut().enumerate().skip(lead) {
            if *slot != 0 {
                out.push((c as u32, mul_mod(*slot, inv, p)));
                *slot = 0;
            }
        }
        self.pivots[lead] = Some(out);
        self.rank += 1;
        true
    }

    /// Back-substitutes so every pivot row is zero in every other pivot column.
    pub fn reduce_fully(&mut self) {
        let p = self.p;
        let acc = &mut self.scratch;
        for c in (0..self.ncols).rev() {
            let Some(row) = self.pivots[c].take() else {
                continue;
            };
            if row.iter().skip(1).all(|&(k, _)| self.pivots[k as usize].is_none()) {
                self.pivots[c] = Some(row);
                continue;
            }
            for &(k, v) in &row {
                acc[k as usize] = v;
            }
            for k in c + 1..self.ncols {
                let v = acc[k];
                if v == 0 {
                    continue;
                }
                if let Some(prow) = &self.pivots[k] {
                    for &(pc, pv) in prow {
                        let pc = pc as usize;
                        acc[pc] = sub_mod(acc[pc], mul_mod(v, pv, p), p);
                    }
                }
            }
            let mut out: Row = Vec::new();
            for (k, slot) in acc.iter_mut().enumerate().skip(c) {
                if *slot != 0 {
                    out.push((k as u32, *slot));
                    *slot = 0;
                }
            }
            self.pivots[c] = Some(out);
        }
    }

    /// Kernel basis after [`Echelon::reduce_fully`]: one vector per free
    /// column `f`, equal to 1 at `f`, 0 at the other free columns.
    pub fn kernel(&self) -> Vec<(usize, Row)> {
        let p = self.p;
        let free: Vec<usize> = (0..self.ncols).filter(|&c| self.pivots[c].is_none()).collect();
        let mut vectors: Vec<(usize, Row)> = free.iter().map(|&f| (f, vec![(f as u32, 1)])).collect();
        let index: std::collections::HashMap<usize, usize> = free.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        for (c, row) in self.pivots.iter().enumerate() {
            let Some(row) = row else { continue };
            for &(k, v) in row.iter().skip(1) {
                if let Some(&i) = index.get(&(k as usize)) {
                    vectors[i].1.push((c as u32, sub_mod(0, v, p)));
                }
            }
        }
        for (_, v) in &mut vectors {
            v.sort_unstable_by_key(|&(c, _)| c);
        }
        vectors
    }
}

/// Accumulates residues of one integer quantity across primes.
#[derive(Clone, Debug)]
pub struct Crt {
    pub value: BigInt,
    pub modulus: BigInt,
}

impl Crt {
    pub fn new(residue: u64, p: u64) -> Self {
        Self {
            value: BigInt::from(residue),
            modulus: BigInt::from(p),
        }
    }

    pub fn push(&mut self, residue: u64, p: u64) {
        let pb = BigInt::from(p);
        let cur = self.value.mod_floor(&pb).to_u64().expect("below p");
        let m_inv = inv_mod(self.modulus.mod_floor(&pb).to_u64().expect("below p"), p);
        let t = mul_mod(sub_mod(residue % p, cur, p), m_inv, p);
        self.value += &self.modulus * BigInt::from(t);
        self.modulus *= pb;
    }
}

/// The unique `r/s` with `|r|, s < sqrt(m/2)` and `r ≡ a s (mod m)`, if any.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let a = a.mod_floor(m);
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    let (num, den) = if t1.sign() == Sign::Minus { (-r1, -t1) } else { (r1, t1) };
    Some(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn prime_sequence() {
        let ps: Vec<u64> = primes().take(3).collect();
        assert_eq!(ps[0], (1 << 61) - 1);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(ps.iter().all(|&p| is_prime(p)));
        assert!(!is_prime(1 << 40) && !is_prime(3_215_031_751));
    }

    #[test]
    fn reconstruct_fractions() {
        let p = (1u64 << 61) - 1;
        for q in [frac(-7, 3), frac(1, 2), frac(0, 1), frac(123_456, 789)] {
            let r = reduce(&q, p).unwrap();
            assert_eq!(rational_reconstruct(&BigInt::from(r), &BigInt::from(p)).unwrap(), q);
        }
        let mut crt = Crt::new(reduce(&frac(10_000_000_019, 3), p).unwrap(), p);
        let p2 = primes().nth(1).unwrap();
        crt.push(reduce(&frac(10_000_000_019, 3), p2).unwrap(), p2);
        assert_eq!(rational_reconstruct(&crt.value, &crt.modulus).unwrap(), frac(10_000_000_019, 3));
    }

    #[test]
    fn echelon_kernel() {
        let p = 101;
        // x0 + x1 + x2 = 0, x1 - x2 = 0  ->  kernel spanned by (-2, 1, 1)
        let mut e = Echelon::new(3, p);
        assert!(e.insert(&[(0, 1), (1, 1), (2, 1)]));
        assert!(e.insert(&[(1, 1), (2, 100)]));
        assert!(!e.insert(&[(0, 1), (1, 2)]));
        e.reduce_fully();
        let k = e.kernel();
        assert_eq!(k, vec![(2, vec![(0, 99), (1, 1), (2, 1)])]);
    }
}
