//! Test-side arithmetic that shares no code with the library: structure
//! constants read back from the algebra file, ranks over a prime field, a
//! symbolic minor-expansion rank, and a small polynomial type.

#![allow(dead_code)]

pub mod oracle;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                None
            } else {
                Some(Q::new(a, b))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

// ---------------------------------------------------------------- binary

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn json(&self) -> Value {
        serde_json::from_str(self.stdout.trim())
            .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}\nstderr: {}", self.stdout, self.stderr))
    }
}

pub fn casimir(args: &[&str]) -> Run {
    casimir_stdin(args, None)
}

pub fn casimir_stdin(args: &[&str], input: Option<&str>) -> Run {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_casimir"))
        .args(args)
        .stdin(if input.is_some() { Stdio::piped() } else { Stdio::null() })
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    if let Some(text) = input {
        child.stdin.take().expect("piped").write_all(text.as_bytes()).expect("write stdin");
    }
    let out = child.wait_with_output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

/// `N` as reported by `count --output json`.
pub fn count(source: &str, extra: &[&str]) -> (usize, usize) {
    let mut args = vec!["count", source, "--output", "json"];
    args.extend_from_slice(extra);
    let run = casimir(&args);
    assert_eq!(run.code, 0, "count {source} {extra:?} failed: {}", run.stderr);
    let v = run.json();
    (v["N"].as_u64().expect("N") as usize, v["generic_rank"].as_u64().expect("rank") as usize)
}

// ---------------------------------------------------------------- algebras

/// Dense structure constants, `c[i][j][k]` with 0-based indices.
#[derive(Clone, Debug)]
pub struct Alg {
    pub name: String,
    pub basis: Vec<String>,
    pub c: Vec<Vec<Vec<Q>>>,
}

impl Alg {
    pub fn zero(name: &str, n: usize) -> Self {
        Alg {
            name: name.to_string(),
            basis: (1..=n).map(|k| format!("X{k}")).collect(),
            c: vec![vec![vec![Q::zero(); n]; n]; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Sets `[e_i, e_j] += c e_k` and the antisymmetric partner; 1-based.
    pub fn add(&mut self, i: usize, j: usize, k: usize, c: Q) {
        let (i, j, k) = (i - 1, j - 1, k - 1);
        self.c[i][j][k] += c.clone();
        self.c[j][i][k] -= c;
    }

    pub fn from_json(v: &Value) -> Self {
        let basis: Vec<String> = v["basis"]
            .as_array()
            .expect("basis")
            .iter()
            .map(|b| b.as_str().expect("label").to_string())
            .collect();
        let mut alg = Alg::zero(v["name"].as_str().unwrap_or("unnamed"), basis.len());
        alg.basis = basis;
        for b in v["brackets"].as_array().expect("brackets") {
            let i = b["i"].as_u64().expect("i") as usize;
            let j = b["j"].as_u64().expect("j") as usize;
            for t in b["terms"].as_array().expect("terms") {
                let k = t["k"].as_u64().expect("k") as usize;
                let c = match &t["c"] {
                    Value::Number(n) => q(n.as_i64().expect("integer coefficient")),
                    Value::String(s) => parse_q(s).expect("rational coefficient"),
                    other => panic!("unexpected coefficient {other}"),
                };
                alg.add(i, j, k, c);
            }
        }
        alg
    }

    /// Reads a catalog entry through `catalog show --emit`.
    pub fn catalog(name: &str, params: &[&str]) -> Self {
        let mut args = vec!["catalog", "show", name, "--emit"];
        for p in params {
            args.push("--param");
            args.push(p);
        }
        let run = casimir(&args);
        assert_eq!(run.code, 0, "catalog show {name}: {}", run.stderr);
        Alg::from_json(&run.json())
    }

    pub fn to_json(&self) -> Value {
        let n = self.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let terms: Vec<Value> = (0..n)
                    .filter(|&k| !self.c[i][j][k].is_zero())
                    .map(|k| json!({"k": k + 1, "c": self.c[i][j][k].to_string()}))
                    .collect();
                if !terms.is_empty() {
                    brackets.push(json!({"i": i + 1, "j": j + 1, "terms": terms}));
                }
            }
        }
        json!({"version": 1, "name": self.name, "dim": n, "basis": self.basis, "brackets": brackets})
    }

    pub fn write_to(&self, dir: &Path) -> PathBuf {
        let path = dir.join(format!("{}.json", self.name.replace(['[', ']', '=', '/', ' '], "_")));
        std::fs::write(&path, self.to_json().to_string()).expect("write algebra file");
        path
    }

    pub fn direct_sum(&self, other: &Alg) -> Alg {
        let (n, m) = (self.dim(), other.dim());
        let mut out = Alg::zero(&format!("{}+{}", self.name, other.name), n + m);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out.c[i][j][k] = self.c[i][j][k].clone();
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    out.c[n + i][n + j][n + k] = other.c[i][j][k].clone();
                }
            }
        }
        out
    }

    /// New basis `f_a = sum_i p[i][a] e_i`.
    pub fn change_basis(&self, p: &[Vec<Q>]) -> Alg {
        let n = self.dim();
        let inv = invert(p).expect("invertible change of basis");
        let mut out = Alg::zero(&format!("{}'", self.name), n);
        // [f_a, f_b] = sum p_ia p_jb c_ij^k e_k, then e_k = sum inv[c][k] f_c.
        for a in 0..n {
            for b in a + 1..n {
                let mut image = vec![Q::zero(); n];
                for i in 0..n {
                    if p[i][a].is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        if p[j][b].is_zero() {
                            continue;
                        }
                        let w = &p[i][a] * &p[j][b];
                        for k in 0..n {
                            if !self.c[i][j][k].is_zero() {
                                image[k] += &w * &self.c[i][j][k];
                            }
                        }
                    }
                }
                for cc in 0..n {
                    let mut s = Q::zero();
                    for k in 0..n {
                        if !image[k].is_zero() {
                            s += &inv[cc][k] * &image[k];
                        }
                    }
                    out.c[a][b][cc] = s.clone();
                    out.c[b][a][cc] = -s;
                }
            }
        }
        out
    }

    pub fn jacobi_holds(&self) -> bool {
        let n = self.dim();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for m in 0..n {
                        let mut s = Q::zero();
                        for k in 0..n {
                            s += &self.c[b][c][k] * &self.c[a][k][m];
                            s += &self.c[c][a][k] * &self.c[b][k][m];
                            s += &self.c[a][b][k] * &self.c[c][k][m];
                        }
                        if !s.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Coordinate names used by the polynomial syntax.
    pub fn names(&self) -> Vec<String> {
        let lower: Vec<String> = self
            .basis
            .iter()
            .map(|b| {
                let mut ch = b.chars();
                match ch.next() {
                    Some(f) => f.to_lowercase().chain(ch).collect(),
                    None => String::new(),
                }
            })
            .collect();
        let mut seen = std::collections::BTreeSet::new();
        let ok = lower.iter().all(|s| {
            s.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                && seen.insert(s.clone())
        });
        if ok {
            lower
        } else {
            (1..=self.dim()).map(|k| format!("x{k}")).collect()
        }
    }

    /// Matrix `m` of the field `X_i`: component `j` is `sum_k m[j][k] x_k`,
    /// with `X_i = -sum c_ij^k x_k d/dx_j`.
    pub fn field_matrix(&self, i: usize) -> Vec<Vec<Q>> {
        let n = self.dim();
        (0..n).map(|j| (0..n).map(|k| -self.c[i][j][k].clone()).collect()).collect()
    }
}

pub fn invert(p: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = p.len();
    let mut a: Vec<Vec<Q>> = p
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut v = row.clone();
            v.extend((0..n).map(|c| if c == r { Q::one() } else { Q::zero() }));
            v
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn random_invertible(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Q>> {
    loop {
        let m: Vec<Vec<Q>> = (0..n).map(|_| (0..n).map(|_| q(rng.gen_range(-3..=3))).collect()).collect();
        if invert(&m).is_some() {
            return m;
        }
    }
}

pub fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    let m = b[0].len();
    let mut out = vec![vec![Q::zero(); m]; n];
    for i in 0..n {
        for k in 0..b.len() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------- prime field

pub const P: u64 = (1 << 61) - 1;

pub fn mulp(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

pub fn addp(a: u64, b: u64) -> u64 {
    (a + b) % P
}

pub fn subp(a: u64, b: u64) -> u64 {
    (a + P - b) % P
}

pub fn powp(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulp(r, a);
        }
        a = mulp(a, a);
        e >>= 1;
    }
    r
}

pub fn invp(a: u64) -> u64 {
    assert!(a != 0, "division by zero mod p");
    powp(a, P - 2)
}

pub fn reduce(x: &Q) -> u64 {
    let p = BigInt::from(P);
    let n = ((x.numer() % &p) + &p) % &p;
    let d = ((x.denom() % &p) + &p) % &p;
    let n: u64 = n.try_into().expect("fits");
    let d: u64 = d.try_into().expect("fits");
    mulp(n, invp(d))
}

pub fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = invp(rows[rank][col]);
        for r in rank + 1..rows.len() {
            if rows[r][col] != 0 {
                let f = mulp(rows[r][col], inv);
                for c in col..cols {
                    let t = mulp(f, rows[rank][c]);
                    rows[r][c] = subp(rows[r][c], t);
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn random_point(n: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
    (0..n).map(|_| rng.gen_range(1..P)).collect()
}

/// Largest rank of `sum_k c_ij^k x_k` over random points of the prime field.
pub fn modular_rank(alg: &Alg, seed: u64) -> usize {
    let n = alg.dim();
    let c: Vec<Vec<Vec<u64>>> = alg
        .c
        .iter()
        .map(|plane| plane.iter().map(|row| row.iter().map(reduce).collect()).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut best = 0;
    for _ in 0..3 {
        let x = random_point(n, &mut rng);
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(0, |acc, k| addp(acc, mulp(c[i][j][k], x[k]))))
                    .collect()
            })
            .collect();
        best = best.max(rank_mod_p(rows));
    }
    best
}

pub fn modular_n(alg: &Alg, seed: u64) -> usize {
    alg.dim() - modular_rank(alg, seed)
}

// ---------------------------------------------------------------- polynomials

/// Sparse polynomial, exponent vector to coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub n: usize,
    pub terms: BTreeMap<Vec<u32>, Q>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly { n, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Q) {
        let slot = self.terms.entry(e.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn derivative(&self, j: usize) -> Poly {
        let mut out = Poly::zero(self.n);
        for (e, c) in &self.terms {
            if e[j] > 0 {
                let mut f = e.clone();
                f[j] -= 1;
                out.add_term(f, c * q(e[j] as i64));
            }
        }
        out
    }

    pub fn variables(&self) -> Vec<usize> {
        (0..self.n).filter(|&j| self.terms.keys().any(|e| e[j] > 0)).collect()
    }

    /// Applies the linear field `sum_j (m x)_j d/dx_j`.
    pub fn apply_linear_field(&self, m: &[Vec<Q>]) -> Poly {
        let mut out = Poly::zero(self.n);
        for j in 0..self.n {
            let d = self.derivative(j);
            if d.is_zero() {
                continue;
            }
            for k in 0..self.n {
                if m[j][k].is_zero() {
                    continue;
                }
                for (e, c) in &d.terms {
                    let mut f = e.clone();
                    f[k] += 1;
                    out.add_term(f, c * &m[j][k]);
                }
            }
        }
        out
    }

    pub fn eval_mod_p(&self, x: &[u64]) -> u64 {
        let mut acc = 0;
        for (e, c) in &self.terms {
            let mut t = reduce(c);
            for (k, &p) in e.iter().enumerate() {
                if p > 0 {
                    t = mulp(t, powp(x[k], p as u64));
                }
            }
            acc = addp(acc, t);
        }
        acc
    }

    /// Parses the printed form `2*x1*x4^2 - 1/2*x3 + x5`.
    pub fn parse(text: &str, names: &[String]) -> Option<Poly> {
        let n = names.len();
        let mut out = Poly::zero(n);
        let normalized = text.trim().replace(" - ", " + -").replace(" + ", "\u{0}");
        for raw in normalized.split('\u{0}') {
            let raw = raw.trim();
            let (sign, body) = match raw.strip_prefix('-') {
                Some(rest) => (-1, rest.trim()),
                None => (1, raw),
            };
            if body.is_empty() {
                return None;
            }
            let mut coeff = q(sign);
            let mut e = vec![0u32; n];
            for factor in body.split('*') {
                let factor = factor.trim();
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coeff *= parse_q(factor)?;
                    continue;
                }
                let (name, power) = match factor.split_once('^') {
                    Some((a, b)) => (a, b.parse::<u32>().ok()?),
                    None => (factor, 1),
                };
                let idx = names.iter().position(|s| s == name)?;
                e[idx] += power;
            }
            out.add_term(e, coeff);
        }
        Some(out)
    }
}

/// Exact invariance under every coadjoint field.
pub fn annihilated(alg: &Alg, p: &Poly) -> bool {
    (0..alg.dim()).all(|i| p.apply_linear_field(&alg.field_matrix(i)).is_zero())
}

/// Rank of the Jacobian of `polys` at random points of the prime field.
pub fn jacobian_rank(polys: &[Poly], seed: u64) -> usize {
    let Some(first) = polys.first() else { return 0 };
    let n = first.n;
    let grads: Vec<Vec<Poly>> = polys.iter().map(|p| (0..n).map(|j| p.derivative(j)).collect()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9ac0b);
    let mut best = 0;
    for _ in 0..3 {
        let x = random_point(n, &mut rng);
        let rows = grads.iter().map(|g| g.iter().map(|d| d.eval_mod_p(&x)).collect()).collect();
        best = best.max(rank_mod_p(rows));
    }
    best
}

pub fn is_zero_matrix(m: &[Vec<Q>]) -> bool {
    m.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

pub fn abs_sign_key(v: &[Q]) -> Vec<Q> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) if lead.is_negative() => v.iter().map(|x| -x.clone()).collect(),
        _ => v.to_vec(),
    }
}
