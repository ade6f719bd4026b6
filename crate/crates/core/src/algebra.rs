//! Real Lie algebras given by exact structure constants.
//!
//! A [`LieAlgebra`] stores `[X_i, X_j] = Σ_k C_ij^k X_k` for `i < j` only,
//! with terms sorted by `k` and zero coefficients dropped, so two algebras
//! compare equal exactly when their stored constants agree. Indices are
//! 0-based in the Rust API; labels and file formats are 1-based.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{row_space_basis, Matrix};
use crate::rational::{int, Rational};

/// Sparse bracket expansion: `(k, C_ij^k)` sorted by `k`.
pub type Terms = Vec<(usize, Rational)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    basis: Vec<String>,
    brackets: BTreeMap<(usize, usize), Terms>,
}

/// Accumulates structure constants before freezing them into a [`LieAlgebra`].
#[derive(Clone, Debug)]
pub struct Builder {
    basis: Vec<String>,
    brackets: BTreeMap<(usize, usize), BTreeMap<usize, Rational>>,
}

impl Builder {
    pub fn new(basis: Vec<String>) -> Self {
        Self {
            basis,
            brackets: BTreeMap::new(),
        }
    }

    /// Builder with labels `X1..Xn`.
    pub fn with_dim(n: usize) -> Self {
        Self::new(default_labels(n))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Adds `c X_k` to `[X_i, X_j]` (0-based); `i > j` is stored as `-c` on `(j, i)`.
    pub fn add(&mut self, i: usize, j: usize, k: usize, c: Rational) -> Result<&mut Self> {
        let n = self.dim();
        for idx in [i, j, k] {
            if idx >= n {
                return Err(Error::IndexOutOfRange { index: idx + 1, dim: n });
            }
        }
        if i == j {
            return Err(Error::DiagonalBracket(i + 1));
        }
        let (key, c) = if i < j { ((i, j), c) } else { ((j, i), -c) };
        let entry = self.brackets.entry(key).or_default();
        *entry.entry(k).or_insert_with(Rational::zero) += c;
        Ok(self)
    }

    /// Chaining form of [`Builder::add`] taking the 1-based indices of `C_ij^k`.
    pub fn constant(mut self, i: usize, j: usize, k: usize, c: Rational) -> Result<Self> {
        if i == 0 || j == 0 || k == 0 {
            return Err(Error::IndexOutOfRange { index: 0, dim: self.dim() });
        }
        self.add(i - 1, j - 1, k - 1, c)?;
        Ok(self)
    }

    pub fn build(self) -> Result<LieAlgebra> {
        let mut seen = std::collections::BTreeSet::new();
        for label in &self.basis {
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        let brackets = self
            .brackets
            .into_iter()
            .filter_map(|(key, terms)| {
                let terms: Terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                (!terms.is_empty()).then_some((key, terms))
            })
            .collect();
        Ok(LieAlgebra {
            basis: self.basis,
            brackets,
        })
    }
}

pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("X{i}")).collect()
}

impl LieAlgebra {
    /// The abelian algebra `nL1`.
    pub fn abelian(n: usize) -> Self {
        Self {
            basis: default_labels(n),
            brackets: BTreeMap::new(),
        }
    }

    /// Builds from 1-based `(i, j, k, C_ij^k)` quadruples with labels `X1..Xn`.
    pub fn from_constants(n: usize, constants: &[(usize, usize, usize, Rational)]) -> Result<Self> {
        let mut b = Builder::with_dim(n);
        for (i, j, k, c) in constants {
            b = b.constant(*i, *j, *k, c.clone())?;
        }
        b.build()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    /// Same constants under new labels.
    pub fn relabeled(&self, basis: Vec<String>) -> Result<Self> {
        if basis.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: basis.len(),
            });
        }
        let mut b = Builder::new(basis);
        for (&(i, j), terms) in &self.brackets {
            for (k, c) in terms {
                b.add(i, j, *k, c.clone())?;
            }
        }
        b.build()
    }

    /// Stored brackets, keyed by `(i, j)` with `i < j`.
    pub fn brackets(&self) -> &BTreeMap<(usize, usize), Terms> {
        &self.brackets
    }

    /// `[X_i, X_j]` as sparse terms, antisymmetry applied.
    pub fn bracket_terms(&self, i: usize, j: usize) -> Terms {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Vec::new(),
            Less => self.brackets.get(&(i, j)).cloned().unwrap_or_default(),
            Greater => self
                .brackets
                .get(&(j, i))
                .map(|t| t.iter().map(|(k, c)| (*k, -c.clone())).collect())
                .unwrap_or_default(),
        }
    }

    /// `C_ij^k` with antisymmetry applied (0-based).
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.bracket_terms(i, j)
            .into_iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c)
            .unwrap_or_else(Rational::zero)
    }

    /// `[X_i, X_j]` as a dense coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        for (k, c) in self.bracket_terms(i, j) {
            v[k] = c;
        }
        v
    }

    /// Bilinear extension of the stored brackets.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(u)?;
        self.check_len(v)?;
        let mut out = vec![Rational::zero(); self.dim()];
        for (&(i, j), terms) in &self.brackets {
            let w = &u[i] * &v[j] - &u[j] * &v[i];
            if w.is_zero() {
                continue;
            }
            for (k, c) in terms {
                out[*k] += &w * c;
            }
        }
        Ok(out)
    }

    fn check_len(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Matrix of `ad X_i`: column `j` holds `[X_i, X_j]`.
    pub fn ad_matrix(&self, i: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            for (k, c) in self.bracket_terms(i, j) {
                m[(k, j)] = c;
            }
        }
        m
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// Every triple `i < j < k` (1-based) whose Jacobiator is nonzero, with the residual.
    pub fn jacobi_check(&self) -> Vec<JacobiFailure> {
        let n = self.dim();
        let basis = |i: usize| {
            let mut v = vec![Rational::zero(); n];
            v[i] = int(1);
            v
        };
        let mut failures = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let ij = self.bracket_basis(i, j);
                for k in j + 1..n {
                    let jk = self.bracket_basis(j, k);
                    let ki = self.bracket_basis(k, i);
                    let a = self.bracket(&ij, &basis(k)).expect("sized");
                    let b = self.bracket(&jk, &basis(i)).expect("sized");
                    let c = self.bracket(&ki, &basis(j)).expect("sized");
                    let residual: Vec<Rational> = (0..n).map(|t| &a[t] + &b[t] + &c[t]).collect();
                    if residual.iter().any(|x| !x.is_zero()) {
                        failures.push(JacobiFailure {
                            triple: (i + 1, j + 1, k + 1),
                            residual,
                        });
                    }
                }
            }
        }
        failures
    }

    pub fn satisfies_jacobi(&self) -> bool {
        self.jacobi_check().is_empty()
    }

    /// Block direct sum; labels are kept unless they collide, in which case
    /// the result is relabeled `X1..X(n+m)`.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let offset = self.dim();
        let mut labels: Vec<String> = self.basis.iter().chain(&other.basis).cloned().collect();
        let distinct: std::collections::BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            labels = default_labels(labels.len());
        }
        let mut brackets = self.brackets.clone();
        for (&(i, j), terms) in &other.brackets {
            brackets.insert(
                (i + offset, j + offset),
                terms.iter().map(|(k, c)| (k + offset, c.clone())).collect(),
            );
        }
        LieAlgebra {
            basis: labels,
            brackets,
        }
    }

    /// Rewrites the constants in the basis `Y_a = Σ_i P_ia X_i` (columns of `P`).
    pub fn change_basis(&self, p: &Matrix) -> Result<LieAlgebra> {
        let n = self.dim();
        if p.rows() != n || p.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.rows().max(p.cols()),
            });
        }
        let inv = p.inverse().ok_or(Error::SingularMatrix)?;
        let cols: Vec<Vec<Rational>> = (0..n).map(|a| p.column(a)).collect();
        let mut b = Builder::new(self.basis.clone());
        for a in 0..n {
            for c in a + 1..n {
                let br = self.bracket(&cols[a], &cols[c])?;
                let coords = inv.mul_vec(&br);
                for (k, v) in coords.into_iter().enumerate() {
                    if !v.is_zero() {
                        b.add(a, c, k, v)?;
                    }
                }
            }
        }
        b.build()
    }

    /// All `z` with `[z, X_i] = 0` for every `i`.
    pub fn centre(&self) -> Subspace {
        let n = self.dim();
        let mut rows = Vec::with_capacity(n * n);
        for i in 0..n {
            let ad = self.ad_matrix(i);
            for r in 0..n {
                rows.push(ad.row(r).to_vec());
            }
        }
        if rows.is_empty() {
            return Subspace::zero(n);
        }
        Subspace::span(n, &Matrix::from_rows(rows).nullspace())
    }

    /// Span of all brackets between elements of `a` and `b`.
    pub fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vectors = Vec::new();
        for u in a.basis() {
            for v in b.basis() {
                let w = self.bracket(u, v).expect("subspace in ambient algebra");
                if w.iter().any(|x| !x.is_zero()) {
                    vectors.push(w);
                }
            }
        }
        Subspace::span(self.dim(), &vectors)
    }

    /// `g, [g,g], [[g,g],[g,g]], …` up to and including the first repeated term.
    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut series = vec![Subspace::full(self.dim())];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.bracket_span(last, last);
            if next.dim() == last.dim() {
                return series;
            }
            series.push(next);
        }
    }

    /// `g, [g,g], [g,[g,g]], …` up to and including the first repeated term.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.dim());
        let mut series = vec![full.clone()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.bracket_span(&full, last);
            if next.dim() == last.dim() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().is_some_and(Subspace::is_zero)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().is_some_and(Subspace::is_zero)
    }

    /// Subalgebra generated by the given basis elements (0-based).
    pub fn generated_subalgebra(&self, generators: &[usize]) -> Subspace {
        let n = self.dim();
        let unit = |i: usize| {
            let mut v = vec![Rational::zero(); n];
            v[i] = int(1);
            v
        };
        let mut span = Subspace::span(n, &generators.iter().map(|&i| unit(i)).collect::<Vec<_>>());
        loop {
            let next = self.bracket_span(&span, &span);
            let mut vectors = span.basis().to_vec();
            vectors.extend(next.basis().iter().cloned());
            let grown = Subspace::span(n, &vectors);
            if grown.dim() == span.dim() {
                return span;
            }
            span = grown;
        }
    }

    /// A minimal set of basis elements generating the algebra, found by
    /// dropping elements in index order while the rest still generate.
    pub fn generating_subset(&self) -> Vec<usize> {
        let n = self.dim();
        let mut keep: Vec<usize> = (0..n).collect();
        for i in 0..n {
            let trial: Vec<usize> = keep.iter().copied().filter(|&k| k != i).collect();
            if self.generated_subalgebra(&trial).dim() == n {
                keep = trial;
            }
        }
        keep
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiFailure {
    /// 1-based indices.
    pub triple: (usize, usize, usize),
    pub residual: Vec<Rational>,
}

/// Linear subspace of `Q^n`, stored as a reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Self {
            ambient_dim: n,
            basis: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        Self {
            ambient_dim: n,
            basis: (0..n)
                .map(|i| {
                    let mut v = vec![Rational::zero(); n];
                    v[i] = int(1);
                    v
                })
                .collect(),
        }
    }

    pub fn span(n: usize, vectors: &[Vec<Rational>]) -> Self {
        Self {
            ambient_dim: n,
            basis: row_space_basis(vectors, n),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        crate::linalg::rank_of(&rows) == self.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn so3() -> LieAlgebra {
        LieAlgebra::from_constants(3, &[(1, 2, 3, int(1)), (1, 3, 2, int(-1)), (2, 3, 1, int(1))]).unwrap()
    }

    fn heisenberg() -> LieAlgebra {
        LieAlgebra::from_constants(3, &[(1, 2, 3, int(1))]).unwrap()
    }

    fn a33() -> LieAlgebra {
        LieAlgebra::from_constants(3, &[(1, 3, 1, int(1)), (2, 3, 2, int(1))]).unwrap()
    }

    fn e(n: usize, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); n];
        v[i] = int(1);
        v
    }

    #[test]
    fn builder_canonicalizes() {
        let mut b = Builder::with_dim(3);
        b.add(1, 0, 2, int(1)).unwrap();
        b.add(0, 1, 2, int(1)).unwrap();
        b.add(0, 2, 1, int(1)).unwrap();
        let alg = b.build().unwrap();
        // (2,1) and (1,2) cancel; only (1,3) survives.
        assert_eq!(alg.brackets().len(), 1);
        assert_eq!(alg.structure_constant(2, 0, 1), int(-1));
    }

    #[test]
    fn builder_errors() {
        assert_eq!(
            Builder::with_dim(2).constant(1, 1, 2, int(1)).unwrap_err(),
            Error::DiagonalBracket(1)
        );
        assert!(matches!(
            Builder::with_dim(2).constant(1, 3, 2, int(1)),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            Builder::new(vec!["A".into(), "A".into()]).build(),
            Err(Error::DuplicateLabel(_))
        ));
    }

    #[test]
    fn so3_brackets() {
        let g = so3();
        assert_eq!(g.bracket(&e(3, 0), &e(3, 1)).unwrap(), e(3, 2));
        assert!(g.bracket(&e(3, 1), &e(3, 1)).unwrap().iter().all(Zero::is_zero));
        assert!(g.satisfies_jacobi());
        assert!(matches!(g.bracket(&e(2, 0), &e(3, 0)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn perturbed_so3_violates_jacobi() {
        // Flipping the sign of one constant gives sl(2,R), still a Lie algebra.
        let flipped = LieAlgebra::from_constants(3, &[(1, 2, 3, int(-1)), (1, 3, 2, int(-1)), (2, 3, 1, int(1))]).unwrap();
        assert!(flipped.satisfies_jacobi());
        let bad = LieAlgebra::from_constants(
            3,
            &[(1, 2, 3, int(1)), (1, 2, 1, int(1)), (1, 3, 2, int(-1)), (2, 3, 1, int(1))],
        )
        .unwrap();
        let failures = bad.jacobi_check();
        assert_eq!(failures.len(), 1);
        assert_eq!(failures[0].triple, (1, 2, 3));
        assert_eq!(failures[0].residual, vec![int(0), int(-1), int(0)]);
    }

    #[test]
    fn generators() {
        let sl2 = LieAlgebra::from_constants(3, &[(1, 2, 2, int(2)), (1, 3, 3, int(-2)), (2, 3, 1, int(1))]).unwrap();
        assert_eq!(sl2.generating_subset(), vec![1, 2]);
        assert_eq!(LieAlgebra::abelian(3).generating_subset(), vec![0, 1, 2]);
        assert_eq!(heisenberg().generating_subset(), vec![0, 1]);
    }

    #[test]
    fn series_and_structure() {
        let h = heisenberg();
        assert!(h.is_nilpotent() && !h.is_abelian());
        let a = a33();
        assert!(a.is_solvable() && !a.is_nilpotent());
        assert_eq!(a.derived_series().iter().map(Subspace::dim).collect::<Vec<_>>(), vec![3, 2, 0]);
        assert!(!so3().is_solvable());
        assert_eq!(LieAlgebra::abelian(4).derived_series().len(), 2);
    }

    #[test]
    fn centres() {
        assert_eq!(so3().centre().dim(), 0);
        assert_eq!(LieAlgebra::abelian(3).centre().dim(), 3);
        let z = heisenberg().centre();
        assert_eq!(z.dim(), 1);
        assert!(z.contains(&e(3, 2)));
    }

    #[test]
    fn change_basis_round_trip() {
        let g = so3();
        let p = Matrix::diagonal(&[int(1), int(2), frac(1, 2)]);
        let h = g.change_basis(&p).unwrap();
        assert!(h.satisfies_jacobi());
        let back = h.change_basis(&p.inverse().unwrap()).unwrap();
        assert_eq!(back, g);
        assert_eq!(g.change_basis(&Matrix::identity(3)).unwrap(), g);
        assert_eq!(g.change_basis(&Matrix::zeros(3, 3)).unwrap_err(), Error::SingularMatrix);
    }

    #[test]
    fn direct_sum_blocks() {
        let s = so3().direct_sum(&LieAlgebra::abelian(3));
        assert_eq!(s.dim(), 6);
        assert_eq!(s.basis()[5], "X6");
        assert_eq!(s.centre().dim(), 3);
        assert_eq!(LieAlgebra::abelian(2).direct_sum(&LieAlgebra::abelian(3)), LieAlgebra::abelian(5));
    }
}
