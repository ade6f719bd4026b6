//! Representations of the rank-one simple algebras `sl(2,R)` and `so(3)`.
//!
//! Every representation carries one rational matrix per basis element of
//! the acting algebra; column `a` of `ρ(X_i)` is the image of the module
//! basis vector `e_a`.

use std::fmt;

use num_traits::Zero;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{frac, int, Rational};

/// `sl(2,R)` with `[X1,X2] = 2X2`, `[X1,X3] = -2X3`, `[X2,X3] = X1`.
pub fn sl2_standard() -> LieAlgebra {
    LieAlgebra::from_constants(3, &[(1, 2, 2, int(2)), (1, 3, 3, int(-2)), (2, 3, 1, int(1))])
        .expect("static constants")
}

/// `so(3)` with `[X1,X2] = X3`, `[X1,X3] = -X2`, `[X2,X3] = X1`.
pub fn so3_standard() -> LieAlgebra {
    LieAlgebra::from_constants(3, &[(1, 2, 3, int(1)), (1, 3, 2, int(-1)), (2, 3, 1, int(1))])
        .expect("static constants")
}

/// One irreducible (or trivial) summand of a representation label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Summand {
    /// `D_J` of `sl(2,R)` with highest weight `λ = 2J`.
    Sl2Irrep(u32),
    /// Real `so(3)` irrep of dimension `2j+1`.
    So3Odd(u32),
    /// The four-dimensional real `so(3)` irrep.
    So3R4,
    /// `k` copies of the trivial representation.
    Trivial(u32),
}

impl Summand {
    pub fn dim(&self) -> usize {
        match *self {
            Summand::Sl2Irrep(l) => l as usize + 1,
            Summand::So3Odd(j) => 2 * j as usize + 1,
            Summand::So3R4 => 4,
            Summand::Trivial(k) => k as usize,
        }
    }

    fn is_trivial(&self) -> bool {
        matches!(self, Summand::Trivial(_) | Summand::Sl2Irrep(0))
    }
}

/// Decomposition of a representation into named summands, e.g. `2D(1/2)+D0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RepLabel {
    pub summands: Vec<Summand>,
}

impl RepLabel {
    pub fn new(summands: Vec<Summand>) -> Self {
        Self { summands }
    }

    pub fn dim(&self) -> usize {
        self.summands.iter().map(Summand::dim).sum()
    }

    pub fn is_irreducible(&self) -> bool {
        match self.summands.as_slice() {
            [Summand::Trivial(k)] => *k == 1,
            [_] => true,
            _ => false,
        }
    }

    pub fn has_trivial_summand(&self) -> bool {
        self.summands.iter().any(|s| s.is_trivial() && s.dim() > 0)
    }

    /// Builds the representation over `sl(2,R)` or `so(3)` as the summands require.
    pub fn build(&self) -> Result<Representation> {
        let sl2 = self
            .summands
            .iter()
            .any(|s| matches!(s, Summand::Sl2Irrep(l) if *l > 0));
        let so3 = self
            .summands
            .iter()
            .any(|s| matches!(s, Summand::So3Odd(_) | Summand::So3R4));
        match (sl2, so3) {
            (true, true) => Err(Error::InvalidArgument(format!(
                "label {self} mixes sl(2,R) and so(3) summands"
            ))),
            (false, false) => Err(Error::InvalidArgument(format!(
                "label {self} does not determine the acting algebra"
            ))),
            (true, false) => self.build_for(&sl2_standard()),
            (false, true) => self.build_for(&so3_standard()),
        }
    }

    /// Builds the representation over the given acting algebra, which must be
    /// the standard `sl(2,R)` or `so(3)` when nontrivial summands occur.
    pub fn build_for(&self, s: &LieAlgebra) -> Result<Representation> {
        let mut rep = trivial_rep(s, 0);
        for summand in &self.summands {
            let part = match *summand {
                Summand::Trivial(k) => trivial_rep(s, k as usize),
                Summand::Sl2Irrep(0) => trivial_rep(s, 1),
                Summand::Sl2Irrep(l) => {
                    require_same(s, &sl2_standard(), "D(J)")?;
                    sl2_irrep(l)
                }
                Summand::So3Odd(j) => {
                    require_same(s, &so3_standard(), "R(2j+1)")?;
                    so3_odd_irrep(j)?
                }
                Summand::So3R4 => {
                    require_same(s, &so3_standard(), "R4")?;
                    so3_r4()
                }
            };
            rep = rep_direct_sum(&rep, &part)?;
        }
        rep.label = Some(self.clone());
        Ok(rep)
    }
}

fn require_same(s: &LieAlgebra, expected: &LieAlgebra, what: &str) -> Result<()> {
    if s.brackets() != expected.brackets() {
        return Err(Error::InvalidArgument(format!(
            "summand {what} needs the standard acting algebra"
        )));
    }
    Ok(())
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::replabel::emit_rep_label(self))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    algebra: LieAlgebra,
    module_dim: usize,
    matrices: Vec<Matrix>,
    label: Option<RepLabel>,
}

impl Representation {
    /// Wraps explicit matrices; the shape is checked, the homomorphism
    /// property is not (see [`rep_check`]).
    pub fn new(algebra: LieAlgebra, matrices: Vec<Matrix>) -> Result<Self> {
        if matrices.len() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim(),
                got: matrices.len(),
            });
        }
        let module_dim = matrices.first().map_or(0, Matrix::rows);
        for m in &matrices {
            if m.rows() != module_dim || m.cols() != module_dim {
                return Err(Error::DimensionMismatch {
                    expected: module_dim,
                    got: m.rows().max(m.cols()),
                });
            }
        }
        Ok(Self {
            algebra,
            module_dim,
            matrices,
            label: None,
        })
    }

    /// The adjoint representation.
    pub fn adjoint(algebra: &LieAlgebra) -> Self {
        let matrices = (0..algebra.dim()).map(|i| algebra.ad_matrix(i)).collect();
        Self {
            algebra: algebra.clone(),
            module_dim: algebra.dim(),
            matrices,
            label: None,
        }
    }

    pub fn with_label(mut self, label: RepLabel) -> Self {
        self.label = Some(label);
        self
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn matrix(&self, i: usize) -> &Matrix {
        &self.matrices[i]
    }

    pub fn label(&self) -> Option<&RepLabel> {
        self.label.as_ref()
    }

    /// `ρ(x)` for a coordinate vector `x` of the acting algebra.
    pub fn action(&self, x: &[Rational]) -> Matrix {
        let mut out = Matrix::zeros(self.module_dim, self.module_dim);
        for (c, m) in x.iter().zip(&self.matrices) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        out
    }

    /// Conjugates by a module change of basis: new basis vectors are the columns of `t`.
    pub fn change_module_basis(&self, t: &Matrix) -> Result<Representation> {
        if t.rows() != self.module_dim || t.cols() != self.module_dim {
            return Err(Error::DimensionMismatch {
                expected: self.module_dim,
                got: t.rows(),
            });
        }
        let inv = t.inverse().ok_or(Error::SingularMatrix)?;
        let matrices = self.matrices.iter().map(|m| inv.mul(m).mul(t)).collect();
        Ok(Representation {
            algebra: self.algebra.clone(),
            module_dim: self.module_dim,
            matrices,
            label: self.label.clone(),
        })
    }
}

/// `D_J` with `λ = 2J` on `e_0..e_λ`: `ρ(X1)e_i = (λ-2i)e_i`,
/// `ρ(X2)e_i = (λ-i+1)e_{i-1}`, `ρ(X3)e_i = (i+1)e_{i+1}`.
pub fn sl2_irrep(lambda: u32) -> Representation {
    let l = lambda as i64;
    let n = lambda as usize + 1;
    let mut h = Matrix::zeros(n, n);
    let mut e = Matrix::zeros(n, n);
    let mut f = Matrix::zeros(n, n);
    for i in 0..n {
        let ii = i as i64;
        h[(i, i)] = int(l - 2 * ii);
        if i >= 1 {
            e[(i - 1, i)] = int(l - ii + 1);
        }
        if i + 1 < n {
            f[(i + 1, i)] = int(ii + 1);
        }
    }
    Representation {
        algebra: sl2_standard(),
        module_dim: n,
        matrices: vec![h, e, f],
        label: Some(RepLabel::new(vec![if lambda == 0 {
            Summand::Trivial(1)
        } else {
            Summand::Sl2Irrep(lambda)
        }])),
    }
}

/// The four-dimensional real irrep of `so(3)` with the half-integer
/// constants of the `R4 ⊕ D0` radicals (module basis `e_1..e_4`).
pub fn so3_r4() -> Representation {
    let h = frac(1, 2);
    let mh = frac(-1, 2);
    // (generator, source, target, coefficient), 1-based module indices
    let entries = [
        (0, 1, 4, &h),
        (0, 2, 3, &h),
        (0, 3, 2, &mh),
        (0, 4, 1, &mh),
        (1, 1, 2, &h),
        (1, 2, 1, &mh),
        (1, 3, 4, &h),
        (1, 4, 3, &mh),
        (2, 1, 3, &h),
        (2, 2, 4, &mh),
        (2, 3, 1, &mh),
        (2, 4, 2, &h),
    ];
    let mut matrices = vec![Matrix::zeros(4, 4); 3];
    for (g, src, dst, c) in entries {
        matrices[g][(dst - 1, src - 1)] = c.clone();
    }
    Representation {
        algebra: so3_standard(),
        module_dim: 4,
        matrices,
        label: Some(RepLabel::new(vec![Summand::So3R4])),
    }
}

/// Real `(2j+1)`-dimensional irrep of `so(3)`.
///
/// Realification of the spin-`j` ladder module: with weight vectors `w_m`
/// the real basis is `a_m = w_m + (-1)^m w_{-m}`, `b_m = i(w_m - (-1)^m w_{-m})`
/// for `m = j..1` followed by `u_0 = w_0`, ordered `a_j, b_j, …, a_1, b_1, u_0`.
/// `X3` rotates each `(a_m, b_m)` plane by weight `m`; `X1`, `X2` move between
/// adjacent planes with rational coefficients. The matrices are skew-adjoint
/// for the diagonal form returned by [`so3_odd_invariant_form`].
pub fn so3_odd_irrep(j: u32) -> Result<Representation> {
    if j == 0 {
        return Err(Error::InvalidArgument("so3_odd_irrep needs j >= 1".into()));
    }
    let jj = j as i64;
    let n = 2 * j as usize + 1;
    let a = |m: i64| 2 * (jj - m) as usize;
    let b = |m: i64| 2 * (jj - m) as usize + 1;
    let u0 = n - 1;
    let mut x1 = Matrix::zeros(n, n);
    let mut x2 = Matrix::zeros(n, n);
    let mut x3 = Matrix::zeros(n, n);
    for m in 1..=jj {
        x3[(b(m), a(m))] = int(m);
        x3[(a(m), b(m))] = int(-m);
        let up = frac(jj - m, 2);
        let down = frac(jj + m, 2);
        if m < jj {
            x1[(a(m + 1), a(m))] += up.clone();
            x1[(b(m + 1), b(m))] += up.clone();
            x2[(b(m + 1), a(m))] += up.clone();
            x2[(a(m + 1), b(m))] -= up.clone();
        }
        if m > 1 {
            x1[(a(m - 1), a(m))] -= down.clone();
            x1[(b(m - 1), b(m))] -= down.clone();
            x2[(b(m - 1), a(m))] += down.clone();
            x2[(a(m - 1), b(m))] -= down.clone();
        } else {
            // a_0 = 2 u_0 and b_0 = 0
            x1[(u0, a(1))] -= int(jj + 1);
            x2[(u0, b(1))] -= int(jj + 1);
        }
    }
    x1[(a(1), u0)] = frac(jj, 2);
    x2[(b(1), u0)] = frac(jj, 2);
    Ok(Representation {
        algebra: so3_standard(),
        module_dim: n,
        matrices: vec![x1, x2, x3],
        label: Some(RepLabel::new(vec![Summand::So3Odd(j)])),
    })
}

/// Diagonal invariant inner product for [`so3_odd_irrep`]: `ρ^T G + G ρ = 0`.
pub fn so3_odd_invariant_form(j: u32) -> Matrix {
    fn fact(k: i64) -> Rational {
        (1..=k).fold(int(1), |acc, x| acc * int(x))
    }
    let jj = j as i64;
    let mut diag = Vec::with_capacity(2 * j as usize + 1);
    for m in (1..=jj).rev() {
        let g = int(2) * fact(jj - m) * fact(jj + m);
        diag.push(g.clone());
        diag.push(g);
    }
    diag.push(fact(jj) * fact(jj));
    Matrix::diagonal(&diag)
}

/// `k` copies of the trivial representation (zero matrices).
pub fn trivial_rep(s: &LieAlgebra, k: usize) -> Representation {
    Representation {
        algebra: s.clone(),
        module_dim: k,
        matrices: vec![Matrix::zeros(k, k); s.dim()],
        label: Some(RepLabel::new(if k == 0 {
            Vec::new()
        } else {
            vec![Summand::Trivial(k as u32)]
        })),
    }
}

/// Block-diagonal direct sum; labels concatenate when both are known.
pub fn rep_direct_sum(a: &Representation, b: &Representation) -> Result<Representation> {
    if a.algebra != b.algebra {
        return Err(Error::ActingAlgebraMismatch);
    }
    let matrices = a
        .matrices
        .iter()
        .zip(&b.matrices)
        .map(|(x, y)| x.block_diag(y))
        .collect();
    let label = match (&a.label, &b.label) {
        (Some(x), Some(y)) => {
            let mut summands = x.summands.clone();
            for s in &y.summands {
                match (summands.last_mut(), s) {
                    (Some(Summand::Trivial(k)), Summand::Trivial(l)) => *k += l,
                    _ => summands.push(*s),
                }
            }
            Some(RepLabel::new(summands))
        }
        _ => None,
    };
    Ok(Representation {
        algebra: a.algebra.clone(),
        module_dim: a.module_dim + b.module_dim,
        matrices,
        label,
    })
}

/// Pairs `(i, j)` (1-based) with `ρ([X_i, X_j]) ≠ [ρ(X_i), ρ(X_j)]`.
pub fn rep_check_failures(rep: &Representation) -> Vec<(usize, usize)> {
    let s = &rep.algebra;
    let mut bad = Vec::new();
    for i in 0..s.dim() {
        for j in i + 1..s.dim() {
            let lhs = rep.action(&s.bracket_basis(i, j));
            let rhs = rep.matrices[i].commutator(&rep.matrices[j]);
            if lhs != rhs {
                bad.push((i + 1, j + 1));
            }
        }
    }
    bad
}

pub fn rep_check(rep: &Representation) -> bool {
    rep_check_failures(rep).is_empty()
}

/// Whether every `ρ(X_i)` is a derivation of `r`:
/// `ρ(x)[y,z] = [ρ(x)y, z] + [y, ρ(x)z]` on all basis triples.
pub fn module_check(rep: &Representation, r: &LieAlgebra) -> Result<bool> {
    Ok(module_check_failures(rep, r)?.is_empty())
}

/// Failing `(generator, y, z)` triples, 1-based (generator indexes the acting algebra).
pub fn module_check_failures(rep: &Representation, r: &LieAlgebra) -> Result<Vec<(usize, usize, usize)>> {
    if rep.module_dim != r.dim() {
        return Err(Error::DimensionMismatch {
            expected: rep.module_dim,
            got: r.dim(),
        });
    }
    let n = r.dim();
    let mut bad = Vec::new();
    for (g, m) in rep.matrices.iter().enumerate() {
        let images: Vec<Vec<Rational>> = (0..n).map(|a| m.column(a)).collect();
        for y in 0..n {
            for z in y + 1..n {
                let lhs = m.mul_vec(&r.bracket_basis(y, z));
                let mut unit_y = vec![Rational::zero(); n];
                unit_y[y] = int(1);
                let mut unit_z = vec![Rational::zero(); n];
                unit_z[z] = int(1);
                let t1 = r.bracket(&images[y], &unit_z)?;
                let t2 = r.bracket(&unit_y, &images[z])?;
                let rhs: Vec<Rational> = t1.iter().zip(&t2).map(|(p, q)| p + q).collect();
                if lhs != rhs {
                    bad.push((g + 1, y + 1, z + 1));
                }
            }
        }
    }
    Ok(bad)
}

/// Basis of the space of module maps `T` with `T ρ_a(X) = ρ_b(X) T` for all `X`.
pub fn intertwiners(a: &Representation, b: &Representation) -> Result<Vec<Matrix>> {
    if a.algebra != b.algebra {
        return Err(Error::ActingAlgebraMismatch);
    }
    let (p, q) = (a.module_dim, b.module_dim);
    // unknown T is q x p, flattened row-major: index t*p + s
    let mut rows = Vec::new();
    for (ma, mb) in a.matrices.iter().zip(&b.matrices) {
        for t in 0..q {
            for s in 0..p {
                // (T ma)_{ts} - (mb T)_{ts} = Σ_k T_{tk} ma_{ks} - Σ_k mb_{tk} T_{ks}
                let mut row = vec![Rational::zero(); p * q];
                for k in 0..p {
                    row[t * p + k] += ma[(k, s)].clone();
                }
                for k in 0..q {
                    row[k * p + s] -= mb[(t, k)].clone();
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Ok(Vec::new());
    }
    Ok(Matrix::from_rows(rows)
        .nullspace()
        .into_iter()
        .map(|v| Matrix::from_fn(q, p, |t, s| v[t * p + s].clone()))
        .collect())
}
