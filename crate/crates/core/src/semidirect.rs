//! Semidirect sums `s ⋉_R r` and the affine extension that kills invariants.
//!
//! The Levi factor always comes first in the basis of a semidirect sum,
//! followed by the radical. Mixed brackets are `[X_i, Y_a] = ρ(X_i) Y_a`.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{default_labels, Builder, LieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{int, Rational};
use crate::reps::{module_check_failures, rep_check_failures, rep_direct_sum, trivial_rep, RepLabel, Representation};

/// A representation of `s` together with the radical it acts on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviPair {
    rep: Representation,
    r: LieAlgebra,
}

impl LeviPair {
    /// Checks only that the module and radical dimensions agree; the
    /// derivation property is checked by [`semidirect_sum`] and reported by
    /// [`validate_levi`].
    pub fn new(rep: Representation, r: LieAlgebra) -> Result<Self> {
        if rep.module_dim() != r.dim() {
            return Err(Error::DimensionMismatch {
                expected: rep.module_dim(),
                got: r.dim(),
            });
        }
        Ok(Self { rep, r })
    }

    pub fn s(&self) -> &LieAlgebra {
        self.rep.algebra()
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn r(&self) -> &LieAlgebra {
        &self.r
    }

    pub fn levi_dim(&self) -> usize {
        self.s().dim()
    }

    pub fn dim(&self) -> usize {
        self.levi_dim() + self.r.dim()
    }

    /// 0-based indices of the radical inside the semidirect sum.
    pub fn radical_indices(&self) -> Vec<usize> {
        (self.levi_dim()..self.dim()).collect()
    }
}

/// Labels of `s ⋉ r`: kept when distinct, otherwise `X1..Xn`.
fn joint_labels(s: &LieAlgebra, r: &LieAlgebra) -> Vec<String> {
    let labels: Vec<String> = s.basis().iter().chain(r.basis()).cloned().collect();
    let distinct: BTreeSet<&String> = labels.iter().collect();
    if distinct.len() == labels.len() {
        labels
    } else {
        default_labels(labels.len())
    }
}

/// Builds `s ⋉_R r`; fails when `R` is not a representation or does not act
/// by derivations of `r`.
pub fn semidirect_sum(p: &LeviPair) -> Result<LieAlgebra> {
    let bad = rep_check_failures(&p.rep);
    if let Some((i, j)) = bad.first() {
        return Err(Error::NotARepresentation(format!(
            "ρ([X{i},X{j}]) differs from [ρ(X{i}),ρ(X{j})]"
        )));
    }
    let bad = module_check_failures(&p.rep, &p.r)?;
    if let Some((g, y, z)) = bad.first() {
        return Err(Error::NotAModule(format!(
            "generator {g} is not a derivation on radical pair ({y}, {z})"
        )));
    }
    Ok(semidirect_sum_unchecked(p))
}

fn semidirect_sum_unchecked(p: &LeviPair) -> LieAlgebra {
    let s = p.s();
    let m = s.dim();
    let mut b = Builder::new(joint_labels(s, &p.r));
    for (&(i, j), terms) in s.brackets() {
        for (k, c) in terms {
            b.add(i, j, *k, c.clone()).expect("indices in range");
        }
    }
    for (&(a, c), terms) in p.r.brackets() {
        for (k, v) in terms {
            b.add(m + a, m + c, m + k, v.clone()).expect("indices in range");
        }
    }
    for i in 0..m {
        let rho = p.rep.matrix(i);
        for a in 0..p.r.dim() {
            for bb in 0..p.r.dim() {
                let v = &rho[(bb, a)];
                if !v.is_zero() {
                    b.add(i, m + a, m + bb, v.clone()).expect("indices in range");
                }
            }
        }
    }
    b.build().expect("labels checked distinct")
}

/// The affine algebra `r2`: `[Y, Z] = Z`.
pub fn affine_r2() -> LieAlgebra {
    LieAlgebra::from_constants(2, &[(1, 2, 2, int(1))]).expect("static constants")
}

/// Appends `2k` trivial summands to the representation and `k` copies of
/// `r2` to the radical, each copy ordered `Y` then `Z`.
pub fn extend_with_affine(p: &LeviPair, k: usize) -> LeviPair {
    if k == 0 {
        return p.clone();
    }
    let rep = rep_direct_sum(&p.rep, &trivial_rep(p.s(), 2 * k)).expect("same acting algebra");
    let mut r = p.r.clone();
    for _ in 0..k {
        r = r.direct_sum(&affine_r2());
    }
    LeviPair { rep, r }
}

/// Structural consistency of a Levi pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeviReport {
    /// `R` is a representation of `s`.
    pub rep_ok: bool,
    /// `R` acts by derivations of `r` (flag c when false).
    pub module_ok: bool,
    /// `R` irreducible yet `r` non-abelian (flag a); `None` when irreducibility is unknown.
    pub irreducible_nonabelian: Option<bool>,
    /// `R` without trivial summand yet `r` non-nilpotent (flag b).
    pub no_trivial_non_nilpotent: bool,
    pub notes: Vec<String>,
}

impl LeviReport {
    pub fn is_clean(&self) -> bool {
        self.rep_ok && self.module_ok && self.irreducible_nonabelian != Some(true) && !self.no_trivial_non_nilpotent
    }
}

/// Dimension of the joint kernel of all `ρ(X_i)`; for semisimple `s` this
/// is the multiplicity of the trivial representation.
pub fn trivial_multiplicity(rep: &Representation) -> usize {
    let n = rep.module_dim();
    if n == 0 {
        return 0;
    }
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for m in rep.matrices() {
        for i in 0..n {
            rows.push(m.row(i).to_vec());
        }
    }
    if rows.is_empty() {
        return n;
    }
    Matrix::from_rows(rows).nullspace().len()
}

pub fn validate_levi(p: &LeviPair) -> LeviReport {
    let mut notes = Vec::new();
    let rep_bad = rep_check_failures(&p.rep);
    for (i, j) in rep_bad.iter().take(3) {
        notes.push(format!("representation fails on ({i}, {j})"));
    }
    let module_bad = module_check_failures(&p.rep, &p.r).unwrap_or_default();
    for (g, y, z) in module_bad.iter().take(3) {
        notes.push(format!("generator {g} is not a derivation on radical pair ({y}, {z})"));
    }
    let abelian = p.r.is_abelian();
    let irreducible_nonabelian = match p.rep.label() {
        Some(label) if label.dim() == p.rep.module_dim() => Some(label.is_irreducible() && !abelian),
        Some(_) => {
            notes.push("representation label does not match the module dimension; irreducibility not checked".into());
            None
        }
        None => {
            notes.push("no representation label; irreducibility not checked".into());
            None
        }
    };
    if irreducible_nonabelian == Some(true) {
        notes.push("irreducible representation with a non-abelian radical".into());
    }
    let no_trivial_non_nilpotent = trivial_multiplicity(&p.rep) == 0 && !p.r.is_nilpotent();
    if no_trivial_non_nilpotent {
        notes.push("no trivial summand but the radical is not nilpotent".into());
    }
    LeviReport {
        rep_ok: rep_bad.is_empty(),
        module_ok: module_bad.is_empty(),
        irreducible_nonabelian,
        no_trivial_non_nilpotent,
        notes,
    }
}

/// Reads an algebra whose first `levi_dim` basis elements span a Levi
/// factor back into a pair. Fails when `s` is not a subalgebra or the rest
/// is not an ideal.
pub fn split_levi(alg: &LieAlgebra, levi_dim: usize, label: Option<&RepLabel>) -> Result<LeviPair> {
    let n = alg.dim();
    if levi_dim > n {
        return Err(Error::IndexOutOfRange { index: levi_dim, dim: n });
    }
    let labels = alg.basis();
    let mut s = Builder::new(labels[..levi_dim].to_vec());
    let mut r = Builder::new(labels[levi_dim..].to_vec());
    let mut matrices = vec![Matrix::zeros(n - levi_dim, n - levi_dim); levi_dim];
    for (&(i, j), terms) in alg.brackets() {
        for (k, c) in terms {
            match (i < levi_dim, j < levi_dim, *k < levi_dim) {
                (true, true, true) => {
                    s.add(i, j, *k, c.clone())?;
                }
                (true, false, false) => {
                    matrices[i][(k - levi_dim, j - levi_dim)] = c.clone();
                }
                (false, false, false) => {
                    r.add(i - levi_dim, j - levi_dim, k - levi_dim, c.clone())?;
                }
                (true, true, false) => {
                    return Err(Error::NotLeviSplit(format!(
                        "[{}, {}] leaves the Levi factor",
                        labels[i], labels[j]
                    )))
                }
                _ => {
                    return Err(Error::NotLeviSplit(format!(
                        "[{}, {}] leaves the radical",
                        labels[i], labels[j]
                    )))
                }
            }
        }
    }
    let mut rep = Representation::new(s.build()?, matrices)?;
    if let Some(l) = label {
        rep = rep.with_label(l.clone());
    }
    LeviPair::new(rep, r.build()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_rep_label;
    use crate::reps::{sl2_irrep, sl2_standard, so3_standard};

    fn heisenberg() -> LieAlgebra {
        LieAlgebra::from_constants(3, &[(1, 2, 3, int(1))]).unwrap()
    }

    fn a33() -> LieAlgebra {
        LieAlgebra::from_constants(3, &[(1, 3, 1, int(1)), (2, 3, 2, int(1))]).unwrap()
    }

    fn sl2_h1_pair() -> LeviPair {
        let rep = rep_direct_sum(&sl2_irrep(1), &trivial_rep(&sl2_standard(), 1)).unwrap();
        LeviPair::new(rep, heisenberg()).unwrap()
    }

    #[test]
    fn so3_adjoint_on_abelian() {
        let so3 = so3_standard();
        let p = LeviPair::new(Representation::adjoint(&so3), LieAlgebra::abelian(3)).unwrap();
        let g = semidirect_sum(&p).unwrap();
        assert_eq!(g.dim(), 6);
        assert!(g.satisfies_jacobi());
        // [X1, X5] = X6 mirrors [X1, X2] = X3
        assert_eq!(g.structure_constant(0, 4, 5), int(1));
        assert_eq!(g.structure_constant(0, 5, 4), int(-1));
    }

    #[test]
    fn sl2_heisenberg() {
        let g = semidirect_sum(&sl2_h1_pair()).unwrap();
        assert!(g.satisfies_jacobi());
        assert_eq!(g.structure_constant(3, 4, 5), int(1));
        assert_eq!(g.centre().dim(), 1);
        assert!(validate_levi(&sl2_h1_pair()).is_clean());
    }

    #[test]
    fn trivial_action_is_direct_sum() {
        let s = sl2_standard();
        let p = LeviPair::new(trivial_rep(&s, 3), heisenberg()).unwrap();
        assert_eq!(semidirect_sum(&p).unwrap(), s.direct_sum(&heisenberg()));
    }

    #[test]
    fn affine_extension() {
        let p = sl2_h1_pair();
        assert_eq!(extend_with_affine(&p, 0), p);
        let q = extend_with_affine(&p, 2);
        let g = semidirect_sum(&q).unwrap();
        assert_eq!(g.dim(), 10);
        assert!(g.satisfies_jacobi());
        assert_eq!(g.structure_constant(6, 7, 7), int(1));
        assert_eq!(g.structure_constant(8, 9, 9), int(1));
        assert_eq!(q.rep().label().unwrap().to_string(), "D(1/2)+5D0");
    }

    #[test]
    fn validation_flags() {
        let rep = sl2_irrep(2).with_label(parse_rep_label("D(1)").unwrap());
        let p = LeviPair::new(rep, a33()).unwrap();
        let report = validate_levi(&p);
        assert_eq!(report.irreducible_nonabelian, Some(true));
        assert!(report.no_trivial_non_nilpotent);
        assert!(semidirect_sum(&p).is_err());

        let rep = rep_direct_sum(&sl2_irrep(1), &sl2_irrep(1)).unwrap();
        let h = LieAlgebra::from_constants(4, &[(1, 2, 3, int(1))]).unwrap();
        let report = validate_levi(&LeviPair::new(rep, h).unwrap());
        assert!(!report.module_ok);
        assert!(!report.is_clean());
    }

    #[test]
    fn split_round_trip() {
        let p = sl2_h1_pair();
        let g = semidirect_sum(&p).unwrap();
        let q = split_levi(&g, 3, p.rep().label()).unwrap();
        assert_eq!(semidirect_sum(&q).unwrap(), g);
        assert_eq!(q.r().basis(), ["X4", "X5", "X6"]);
        assert!(matches!(split_levi(&g, 2, None), Err(Error::NotLeviSplit(_))));
    }
}
