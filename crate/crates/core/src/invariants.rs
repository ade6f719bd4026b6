//! Counting and finding generalized Casimir invariants.
//!
//! For an algebra with constants `C_ij^k` the coadjoint fields are
//! `X̂_i = -Σ C_ij^k x_k ∂/∂x_j`, and an invariant is a common solution of
//! `X̂_i F = 0`. The number of functionally independent solutions is
//! `dim g - rank A(g)`, where `A(g)` is the skew matrix of linear forms
//! `Σ_k C_ij^k x_k`; its rank is sampled at random integer points.
//!
//! Polynomial solutions are found degree by degree as the kernel of a sparse
//! linear system. The kernel is computed modulo 61-bit primes, lifted back
//! to `Q`, and every returned polynomial is verified exactly.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::format::emit_polynomial;
use crate::linalg::Matrix;
use crate::modular::{self, Crt, Echelon, Row};
use crate::poly::{monomials_of_degree, Monomial, Polynomial, VectorField};
use crate::rational::{int, Rational};
use crate::semidirect::{semidirect_sum, LeviPair};

pub const DEFAULT_TRIALS: usize = 5;
pub const DEFAULT_RANGE: i64 = 1000;
pub const PARANOID_RANGE: i64 = 1_000_000;
pub const DEFAULT_MAX_DEGREE: u32 = 4;
const INDEPENDENCE_ATTEMPTS: usize = 5;
const MAX_PRIMES: usize = 12;

/// How random evaluation points are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampling {
    pub trials: usize,
    pub seed: u64,
    /// Coordinates are uniform in `[-range, range]`.
    pub range: i64,
}

impl Sampling {
    pub fn new(trials: usize, seed: u64) -> Self {
        Self {
            trials: trials.max(1),
            seed,
            range: DEFAULT_RANGE,
        }
    }

    /// Twice the trials over a wider coordinate range.
    pub fn paranoid(self) -> Self {
        Self {
            trials: self.trials * 2,
            range: PARANOID_RANGE,
            ..self
        }
    }
}

impl Default for Sampling {
    fn default() -> Self {
        Self::new(DEFAULT_TRIALS, 0)
    }
}

/// The `index`-th integer point for `seed`, never the origin when `n > 0`.
/// Each index uses its own ChaCha stream, so points do not depend on the
/// order in which they are drawn.
pub fn sample_point(n: usize, seed: u64, index: usize, range: i64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    loop {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-range..=range)).collect();
        if n == 0 || v.iter().any(|&x| x != 0) {
            return v.into_iter().map(int).collect();
        }
    }
}

/// `A(g)`: entry `(i, j)` is the linear form `Σ_k C_ij^k x_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorMatrix {
    entries: Vec<Vec<Polynomial>>,
}

impl CommutatorMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn is_skew(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            self.entries[i][i].is_zero() && (0..n).all(|j| self.entries[i][j] == -&self.entries[j][i])
        })
    }

    pub fn evaluate(&self, point: &[Rational]) -> Matrix {
        evaluate_matrix(&self.entries, point)
    }
}

fn evaluate_matrix(entries: &[Vec<Polynomial>], point: &[Rational]) -> Matrix {
    let cols = entries.first().map_or(0, Vec::len);
    Matrix::from_fn(entries.len(), cols, |i, j| entries[i][j].evaluate(point))
}

pub fn commutator_matrix(alg: &LieAlgebra) -> CommutatorMatrix {
    let n = alg.dim();
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut coeffs = vec![Rational::zero(); n];
                    for (k, c) in alg.bracket_terms(i, j) {
                        coeffs[k] = c;
                    }
                    Polynomial::linear(&coeffs)
                })
                .collect()
        })
        .collect();
    CommutatorMatrix { entries }
}

/// Rank of a matrix of polynomials at each sampled point, and their maximum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankSample {
    pub rank: usize,
    pub trial_ranks: Vec<usize>,
}

/// Sampled generic rank of a matrix whose entries are polynomials in `num_vars` variables.
pub fn sampled_rank(entries: &[Vec<Polynomial>], num_vars: usize, sampling: &Sampling) -> RankSample {
    let trial_ranks: Vec<usize> = (0..sampling.trials)
        .into_par_iter()
        .map(|t| {
            let point = sample_point(num_vars, sampling.seed, t, sampling.range);
            evaluate_matrix(entries, &point).rank()
        })
        .collect();
    let rank = trial_ranks.iter().copied().max().unwrap_or(0);
    RankSample { rank, trial_ranks }
}

pub fn generic_rank_sampled(alg: &LieAlgebra, sampling: &Sampling) -> RankSample {
    sampled_rank(commutator_matrix(alg).rows(), alg.dim(), sampling)
}

pub fn generic_rank(alg: &LieAlgebra, trials: usize, seed: u64) -> usize {
    generic_rank_sampled(alg, &Sampling::new(trials, seed)).rank
}

/// `N(g) = dim g - rank A(g)`.
pub fn num_invariants(alg: &LieAlgebra, trials: usize, seed: u64) -> usize {
    alg.dim() - generic_rank(alg, trials, seed)
}

/// `X̂_i = -Σ_{j,k} C_ij^k x_k ∂/∂x_j`, one field per basis element.
pub fn coadjoint_fields(alg: &LieAlgebra) -> Vec<VectorField> {
    let n = alg.dim();
    (0..n)
        .map(|i| {
            let components = (0..n)
                .map(|j| {
                    let mut coeffs = vec![Rational::zero(); n];
                    for (k, c) in alg.bracket_terms(i, j) {
                        coeffs[k] = -c;
                    }
                    Polynomial::linear(&coeffs)
                })
                .collect();
            VectorField::new(components).expect("uniform arity")
        })
        .collect()
}

pub fn apply_field(field: &VectorField, p: &Polynomial) -> Result<Polynomial> {
    field.apply(p)
}

/// Whether every coadjoint field annihilates `p`.
pub fn is_invariant(alg: &LieAlgebra, p: &Polynomial) -> Result<bool> {
    annihilated_by(&coadjoint_fields(alg), p)
}

fn annihilated_by(fields: &[VectorField], p: &Polynomial) -> Result<bool> {
    for f in fields {
        if !f.apply(p)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A field as a list of terms `c x^β ∂/∂x_j`, keeping only `j` in the
/// variable set.
struct FieldTerms {
    terms: Vec<(usize, Monomial, Rational)>,
}

impl FieldTerms {
    fn new(field: &VectorField, vars: &BTreeSet<usize>) -> Self {
        let mut terms = Vec::new();
        for &j in vars {
            for (m, c) in field.component(j).terms() {
                terms.push((j, m.clone(), c.clone()));
            }
        }
        Self { terms }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the field is `Σ c_j x_j ∂/∂x_j`, so each monomial is an eigenvector.
    fn diagonal(&self, n: usize) -> Option<Vec<Rational>> {
        let mut c = vec![Rational::zero(); n];
        for (j, m, v) in &self.terms {
            if *m != Monomial::var(n, *j) {
                return None;
            }
            c[*j] = v.clone();
        }
        Some(c)
    }

    /// Exponent shift `β - e_j` of each term.
    fn shifts(&self) -> Vec<Vec<i64>> {
        self.terms
            .iter()
            .map(|(j, m, _)| {
                let mut s: Vec<i64> = m.exponents().iter().map(|&e| e as i64).collect();
                s[*j] -= 1;
                s
            })
            .collect()
    }

    /// Image of a monomial: `(target, coefficient)` pairs, possibly repeated.
    fn image(&self, m: &Monomial) -> Vec<(Monomial, Rational)> {
        let mut out = Vec::new();
        for (j, beta, c) in &self.terms {
            if let Some((e, dm)) = m.derivative(*j) {
                out.push((dm.mul(beta), c * int(e as i64)));
            }
        }
        out
    }
}

/// Integer weight vectors spanning the gradings every equation field
/// respects: each field shifts weight by the same amount in every term.
fn gradings(fields: &[FieldTerms], n: usize) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for f in fields {
        let shifts = f.shifts();
        let Some(first) = shifts.first() else { continue };
        for s in &shifts[1..] {
            if s != first {
                rows.push(s.iter().zip(first).map(|(a, b)| int(a - b)).collect());
            }
        }
    }
    let basis = if rows.is_empty() {
        let id = Matrix::identity(n);
        (0..n).map(|i| id.row(i).to_vec()).collect()
    } else {
        Matrix::from_rows(rows).nullspace()
    };
    basis
        .into_iter()
        .map(|w| {
            crate::rational::primitive(&w)
                .into_iter()
                .map(|q| num_traits::ToPrimitive::to_i64(q.numer()).expect("small weights"))
                .collect()
        })
        .collect()
}

/// Basis of the homogeneous degree-`degree` polynomials in `vars` that
/// every field annihilates, in reduced echelon form with respect to
/// descending graded-lex order, each scaled to coprime integers with a
/// positive leading coefficient. Results are sorted by leading monomial,
/// largest first.
pub fn polynomial_kernel(fields: &[VectorField], vars: &[usize], degree: u32) -> Vec<Polynomial> {
    let all: Vec<usize> = (0..fields.len()).collect();
    kernel_with(fields, &all, vars, degree)
}

/// As [`polynomial_kernel`], but only the fields in `equations` are imposed
/// as equations; diagonal fields are always used as filters. Callers use
/// this with fields of a generating set, which is enough because the
/// coadjoint fields close under commutators.
fn kernel_with(fields: &[VectorField], equations: &[usize], vars: &[usize], degree: u32) -> Vec<Polynomial> {
    let Some(n) = fields.first().map(VectorField::num_vars) else {
        return monomials_of_degree(0, vars, degree)
            .into_iter()
            .map(|m| Polynomial::monomial(0, m, int(1)))
            .collect();
    };
    let var_set: BTreeSet<usize> = vars.iter().copied().collect();
    let terms: Vec<FieldTerms> = fields.iter().map(|f| FieldTerms::new(f, &var_set)).collect();

    let mut monomials = monomials_of_degree(n, vars, degree);
    monomials.reverse();
    let mut eq: Vec<&FieldTerms> = Vec::new();
    for (i, t) in terms.iter().enumerate() {
        if t.is_zero() {
            continue;
        }
        if let Some(eigen) = t.diagonal(n) {
            monomials.retain(|m| {
                let mut s = Rational::zero();
                for (c, &a) in eigen.iter().zip(m.exponents()) {
                    if a > 0 {
                        s += c * int(a as i64);
                    }
                }
                s.is_zero()
            });
        } else if equations.contains(&i) {
            eq.push(t);
        }
    }
    if eq.is_empty() {
        let mut out: Vec<Polynomial> = monomials
            .into_iter()
            .map(|m| Polynomial::monomial(n, m, int(1)))
            .collect();
        out.reverse();
        return out;
    }

    let eq_owned: Vec<FieldTerms> = eq
        .iter()
        .map(|t| FieldTerms {
            terms: t.terms.clone(),
        })
        .collect();
    let weights = gradings(&eq_owned, n);
    let mut groups: BTreeMap<Vec<i64>, Vec<Monomial>> = BTreeMap::new();
    for m in monomials {
        let grade: Vec<i64> = weights
            .iter()
            .map(|w| w.iter().zip(m.exponents()).map(|(a, &e)| a * e as i64).sum())
            .collect();
        groups.entry(grade).or_default().push(m);
    }
    let groups: Vec<Vec<Monomial>> = groups.into_values().collect();
    let mut out: Vec<Polynomial> = groups
        .par_iter()
        .flat_map_iter(|cols| solve_group(&eq_owned, cols, n))
        .collect();
    out.sort_by(|a, b| b.leading_term().map(|t| t.0).cmp(&a.leading_term().map(|t| t.0)));
    out
}

type SparseRational = Vec<(u32, Rational)>;

/// Kernel of the equations restricted to one graded block of monomials
/// (`cols`, ascending graded-lex).
fn solve_group(fields: &[FieldTerms], cols: &[Monomial], n: usize) -> Vec<Polynomial> {
    let mut row_index: HashMap<(usize, Monomial), usize> = HashMap::new();
    let mut rows: Vec<BTreeMap<u32, Rational>> = Vec::new();
    for (c, m) in cols.iter().enumerate() {
        for (f, field) in fields.iter().enumerate() {
            for (target, v) in field.image(m) {
                let r = *row_index.entry((f, target)).or_insert_with(|| {
                    rows.push(BTreeMap::new());
                    rows.len() - 1
                });
                *rows[r].entry(c as u32).or_insert_with(Rational::zero) += v;
            }
        }
    }
    let mut rows: Vec<SparseRational> = rows
        .into_iter()
        .map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect::<Vec<_>>())
        .filter(|r: &SparseRational| !r.is_empty())
        .collect();
    rows.sort_by(|a, b| a[0].0.cmp(&b[0].0).then(a.len().cmp(&b.len())));

    let to_poly = |vector: &[(u32, Rational)]| {
        Polynomial::from_terms(n, vector.iter().map(|(c, v)| (cols[*c as usize].clone(), v.clone()))).normalized()
    };
    let verify = |p: &Polynomial| {
        fields.iter().all(|f| {
            let mut acc: HashMap<Monomial, Rational> = HashMap::new();
            for (m, c) in p.terms() {
                for (t, v) in f.image(m) {
                    *acc.entry(t).or_insert_with(Rational::zero) += c * v;
                }
            }
            acc.values().all(Zero::is_zero)
        })
    };

    match modular_kernel(&rows, cols.len()) {
        Some(vectors) => {
            let polys: Vec<Polynomial> = vectors.iter().map(|v| to_poly(v)).collect();
            if polys.iter().all(verify) {
                return polys;
            }
            exact_kernel(&rows, cols.len()).iter().map(|v| to_poly(v)).collect()
        }
        None => exact_kernel(&rows, cols.len()).iter().map(|v| to_poly(v)).collect(),
    }
}

/// Kernel candidates lifted from several primes; `None` when lifting does
/// not stabilize. An empty result is exact (full rank modulo a prime).
fn modular_kernel(rows: &[SparseRational], ncols: usize) -> Option<Vec<SparseRational>> {
    let mut free: Option<Vec<usize>> = None;
    let mut lifted: Vec<BTreeMap<u32, Crt>> = Vec::new();
    let mut modulus = num_bigint::BigInt::from(1);
    let mut last_guess: Option<Vec<SparseRational>> = None;
    for p in modular::primes().take(MAX_PRIMES) {
        let mut ech = Echelon::new(ncols, p);
        let mut usable = true;
        for r in rows {
            let mut row: Row = Vec::with_capacity(r.len());
            for (c, v) in r {
                match modular::reduce(v, p) {
                    Some(0) => {}
                    Some(x) => row.push((*c, x)),
                    None => usable = false,
                }
            }
            if !usable {
                break;
            }
            ech.insert(&row);
            if ech.is_full() {
                return Some(Vec::new());
            }
        }
        if !usable {
            continue;
        }
        ech.reduce_fully();
        let kernel = ech.kernel();
        let f: Vec<usize> = kernel.iter().map(|(c, _)| *c).collect();
        match &free {
            Some(old) if f.len() > old.len() => continue,
            Some(old) if *old == f => {
                for (acc, (_, vec)) in lifted.iter_mut().zip(&kernel) {
                    let residues: BTreeMap<u32, u64> = vec.iter().copied().collect();
                    let cols: BTreeSet<u32> = acc.keys().copied().chain(residues.keys().copied()).collect();
                    for c in cols {
                        let r = residues.get(&c).copied().unwrap_or(0);
                        acc.entry(c)
                            .or_insert_with(|| Crt {
                                value: num_bigint::BigInt::from(0),
                                modulus: modulus.clone(),
                            })
                            .push(r, p);
                    }
                }
                modulus *= p;
            }
            _ => {
                free = Some(f);
                modulus = num_bigint::BigInt::from(p);
                lifted = kernel
                    .iter()
                    .map(|(_, vec)| vec.iter().map(|&(c, r)| (c, Crt::new(r, p))).collect())
                    .collect();
            }
        }
        let guess: Option<Vec<SparseRational>> = lifted
            .iter()
            .map(|acc| {
                acc.iter()
                    .filter(|(_, crt)| !crt.value.is_zero())
                    .map(|(c, crt)| modular::rational_reconstruct(&crt.value, &crt.modulus).map(|q| (*c, q)))
                    .collect::<Option<Vec<_>>>()
            })
            .collect();
        if let Some(g) = guess {
            if last_guess.as_ref() == Some(&g) {
                return Some(g);
            }
            last_guess = Some(g);
        }
    }
    last_guess
}

/// Exact sparse elimination over `Q`; the reference path when lifting fails.
fn exact_kernel(rows: &[SparseRational], ncols: usize) -> Vec<SparseRational> {
    let mut pivots: Vec<Option<SparseRational>> = vec![None; ncols];
    let mut acc = vec![Rational::zero(); ncols];
    for r in rows {
        let Some(&(start, _)) = r.first() else { continue };
        for (c, v) in r {
            acc[*c as usize] = v.clone();
        }
        let mut lead = None;
        for c in start as usize..ncols {
            if acc[c].is_zero() {
                continue;
            }
            match &pivots[c] {
                Some(prow) => {
                    let v = acc[c].clone();
                    for (pc, pv) in prow {
                        acc[*pc as usize] -= &v * pv;
                    }
                }
                None => {
                    if lead.is_none() {
                        lead = Some(c);
                    }
                }
            }
        }
        if let Some(lead) = lead {
            let inv = Rational::from_integer(1.into()) / &acc[lead];
            let mut out = Vec::new();
            for (c, slot) in acc.iter_mut().enumerate().skip(lead) {
                if !slot.is_zero() {
                    out.push((c as u32, &*slot * &inv));
                    *slot = Rational::zero();
                }
            }
            pivots[lead] = Some(out);
        }
    }
    for c in (0..ncols).rev() {
        let Some(row) = pivots[c].take() else { continue };
        for (k, v) in &row {
            acc[*k as usize] = v.clone();
        }
        for k in c + 1..ncols {
            if acc[k].is_zero() {
                continue;
            }
            if let Some(prow) = &pivots[k] {
                let v = acc[k].clone();
                for (pc, pv) in prow {
                    acc[*pc as usize] -= &v * pv;
                }
            }
        }
        let mut out = Vec::new();
        for (k, slot) in acc.iter_mut().enumerate().skip(c) {
            if !slot.is_zero() {
                out.push((k as u32, std::mem::replace(slot, Rational::zero())));
            }
        }
        pivots[c] = Some(out);
    }
    let free: Vec<usize> = (0..ncols).filter(|&c| pivots[c].is_none()).collect();
    let index: HashMap<usize, usize> = free.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut vectors: Vec<SparseRational> = free.iter().map(|&f| vec![(f as u32, int(1))]).collect();
    for (c, row) in pivots.iter().enumerate() {
        let Some(row) = row else { continue };
        for (k, v) in row.iter().skip(1) {
            if let Some(&i) = index.get(&(*k as usize)) {
                vectors[i].push((c as u32, -v.clone()));
            }
        }
    }
    vectors
}

/// Same as [`polynomial_kernel`] but always by exact elimination over `Q`.
pub fn polynomial_kernel_exact(fields: &[VectorField], vars: &[usize], degree: u32) -> Vec<Polynomial> {
    let Some(n) = fields.first().map(VectorField::num_vars) else {
        return Vec::new();
    };
    let var_set: BTreeSet<usize> = vars.iter().copied().collect();
    let terms: Vec<FieldTerms> = fields
        .iter()
        .map(|f| FieldTerms::new(f, &var_set))
        .filter(|t| !t.is_zero())
        .collect();
    let mut cols = monomials_of_degree(n, vars, degree);
    cols.reverse();
    if terms.is_empty() {
        return cols.into_iter().rev().map(|m| Polynomial::monomial(n, m, int(1))).collect();
    }
    let mut row_index: HashMap<(usize, Monomial), usize> = HashMap::new();
    let mut rows: Vec<BTreeMap<u32, Rational>> = Vec::new();
    for (c, m) in cols.iter().enumerate() {
        for (f, field) in terms.iter().enumerate() {
            for (target, v) in field.image(m) {
                let r = *row_index.entry((f, target)).or_insert_with(|| {
                    rows.push(BTreeMap::new());
                    rows.len() - 1
                });
                *rows[r].entry(c as u32).or_insert_with(Rational::zero) += v;
            }
        }
    }
    let rows: Vec<SparseRational> = rows
        .into_iter()
        .map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect())
        .collect();
    let mut out: Vec<Polynomial> = exact_kernel(&rows, cols.len())
        .iter()
        .map(|v| Polynomial::from_terms(n, v.iter().map(|(c, q)| (cols[*c as usize].clone(), q.clone()))).normalized())
        .collect();
    out.sort_by(|a, b| b.leading_term().map(|t| t.0).cmp(&a.leading_term().map(|t| t.0)));
    out
}

/// Fields needed as equations: a generating set of the algebra. The rest
/// follow because the fields close under commutators.
fn equation_fields(alg: &LieAlgebra) -> Vec<usize> {
    alg.generating_subset()
}

/// Basis of the polynomial invariants of each degree `1..=max_degree`,
/// lowest degree first. Products of lower-degree invariants are included.
pub fn polynomial_invariants(alg: &LieAlgebra, max_degree: u32) -> Vec<Polynomial> {
    let fields = coadjoint_fields(alg);
    let vars: Vec<usize> = (0..alg.dim()).collect();
    let eqs = equation_fields(alg);
    let all: Vec<usize> = (0..alg.dim()).collect();
    let per_degree: Vec<Vec<Polynomial>> = (1..=max_degree)
        .into_par_iter()
        .map(|d| {
            let found = kernel_with(&fields, &eqs, &vars, d);
            if found.iter().all(|p| annihilated_by(&fields, p).unwrap_or(false)) {
                found
            } else {
                kernel_with(&fields, &all, &vars, d)
            }
        })
        .collect();
    per_degree.into_iter().flatten().collect()
}

struct Gradients {
    entries: Vec<Vec<Polynomial>>,
    num_vars: usize,
}

impl Gradients {
    fn new(polys: &[Polynomial]) -> Self {
        let num_vars = polys.first().map_or(0, Polynomial::num_vars);
        let entries = polys
            .iter()
            .map(|p| (0..num_vars).map(|j| p.derivative(j)).collect())
            .collect();
        Self { entries, num_vars }
    }

    fn jacobian(&self, attempt: usize, seed: u64) -> Matrix {
        let point = sample_point(self.num_vars, seed, attempt, DEFAULT_RANGE);
        evaluate_matrix(&self.entries, &point)
    }
}

/// Rank of the Jacobian at random integer points, maximized over up to
/// five points.
pub fn functional_independence_count(polys: &[Polynomial], seed: u64) -> usize {
    if polys.is_empty() {
        return 0;
    }
    let g = Gradients::new(polys);
    let ceiling = polys.len().min(g.num_vars);
    let mut best = 0;
    for attempt in 0..INDEPENDENCE_ATTEMPTS {
        best = best.max(g.jacobian(attempt, seed).rank());
        if best == ceiling {
            break;
        }
    }
    best
}

/// Indices of a maximal functionally independent subfamily, chosen greedily
/// in list order at the best sampled point.
pub fn independent_subset(polys: &[Polynomial], seed: u64) -> Vec<usize> {
    if polys.is_empty() {
        return Vec::new();
    }
    let g = Gradients::new(polys);
    let ceiling = polys.len().min(g.num_vars);
    let mut best: Option<(usize, Matrix)> = None;
    for attempt in 0..INDEPENDENCE_ATTEMPTS {
        let j = g.jacobian(attempt, seed);
        let r = j.rank();
        if best.as_ref().is_none_or(|(b, _)| r > *b) {
            best = Some((r, j));
        }
        if r == ceiling {
            break;
        }
    }
    let (_, j) = best.expect("at least one attempt");
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for i in 0..polys.len() {
        rows.push(j.row(i).to_vec());
        if crate::linalg::rank_of(&rows) > chosen.len() {
            chosen.push(i);
        } else {
            rows.pop();
        }
    }
    chosen
}

/// The part of the invariance system coming from the Levi generators,
/// restricted to radical variables.
#[derive(Clone, Debug)]
pub struct RadicalSubsystem {
    /// One field per Levi generator, over all `dim g` variables but with
    /// only radical components and radical coefficients.
    pub fields: Vec<VectorField>,
    /// 0-based radical variable indices.
    pub radical_vars: Vec<usize>,
    /// Levi × radical matrix of linear forms.
    pub coefficient_matrix: Vec<Vec<Polynomial>>,
    pub rank: RankSample,
    /// `dim r - rank` of the coefficient matrix.
    pub solution_count: usize,
    generators: Vec<usize>,
}

impl RadicalSubsystem {
    /// Polynomial solutions in the radical variables, degrees `1..=max_degree`.
    pub fn solutions(&self, max_degree: u32) -> Vec<Polynomial> {
        (1..=max_degree)
            .into_par_iter()
            .map(|d| kernel_with(&self.fields, &self.generators, &self.radical_vars, d))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    }
}

pub fn radical_subsystem(p: &LeviPair) -> Result<RadicalSubsystem> {
    radical_subsystem_with(p, &Sampling::default())
}

pub fn radical_subsystem_with(p: &LeviPair, sampling: &Sampling) -> Result<RadicalSubsystem> {
    if !p.r().is_abelian() {
        return Err(Error::NonAbelianRadical);
    }
    let g = semidirect_sum(p)?;
    let n = g.dim();
    let m = p.levi_dim();
    let radical_vars = p.radical_indices();
    let full = coadjoint_fields(&g);
    let fields: Vec<VectorField> = full[..m].iter().map(|f| f.restrict_to(&radical_vars)).collect();
    let coefficient_matrix: Vec<Vec<Polynomial>> = fields
        .iter()
        .map(|f| radical_vars.iter().map(|&j| f.component(j).clone()).collect())
        .collect();
    let rank = sampled_rank(&coefficient_matrix, n, sampling);
    let solution_count = radical_vars.len() - rank.rank;
    Ok(RadicalSubsystem {
        fields,
        radical_vars,
        coefficient_matrix,
        rank,
        solution_count,
        generators: p.s().generating_subset(),
    })
}

/// Everything the pipeline knows about the invariants of one algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub dim: usize,
    /// `N(g)`.
    pub n_invariants: usize,
    pub generic_rank: usize,
    pub trial_ranks: Vec<usize>,
    pub basis: Vec<String>,
    pub polynomial_invariants: Vec<Polynomial>,
    /// Indices into `polynomial_invariants` of a functionally independent subfamily.
    pub independent: Vec<usize>,
    pub independent_count: usize,
    pub degree_bound_used: u32,
    pub complete: bool,
    pub note: Option<String>,
}

impl Serialize for InvariantReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let polys: Vec<String> = self
            .polynomial_invariants
            .iter()
            .map(|p| emit_polynomial(p, &self.basis))
            .collect();
        let independent: Vec<&String> = self.independent.iter().map(|&i| &polys[i]).collect();
        let mut s = serializer.serialize_struct("InvariantReport", 10)?;
        s.serialize_field("N", &self.n_invariants)?;
        s.serialize_field("dim", &self.dim)?;
        s.serialize_field("generic_rank", &self.generic_rank)?;
        s.serialize_field("trial_ranks", &self.trial_ranks)?;
        s.serialize_field("polynomial_invariants", &polys)?;
        s.serialize_field("independent_invariants", &independent)?;
        s.serialize_field("independent_count", &self.independent_count)?;
        s.serialize_field("degree_bound_used", &self.degree_bound_used)?;
        s.serialize_field("complete", &self.complete)?;
        s.serialize_field("note", &self.note)?;
        s.end()
    }
}

pub fn full_report(alg: &LieAlgebra, max_degree: u32, trials: usize, seed: u64) -> InvariantReport {
    full_report_with(alg, max_degree, &Sampling::new(trials, seed))
}

pub fn full_report_with(alg: &LieAlgebra, max_degree: u32, sampling: &Sampling) -> InvariantReport {
    let rank = generic_rank_sampled(alg, sampling);
    let n_invariants = alg.dim() - rank.rank;
    let polys = if n_invariants == 0 {
        Vec::new()
    } else {
        polynomial_invariants(alg, max_degree)
    };
    let independent = independent_subset(&polys, sampling.seed);
    let independent_count = independent.len();
    let complete = independent_count == n_invariants;
    let note = (!complete).then(|| {
        format!(
            "{} of {} invariants found as polynomials of degree <= {}; the rest are non-polynomial or of higher degree",
            independent_count, n_invariants, max_degree
        )
    });
    InvariantReport {
        dim: alg.dim(),
        n_invariants,
        generic_rank: rank.rank,
        trial_ranks: rank.trial_ranks,
        basis: alg.basis().to_vec(),
        polynomial_invariants: polys,
        independent,
        independent_count,
        degree_bound_used: max_degree,
        complete,
        note,
    }
}
