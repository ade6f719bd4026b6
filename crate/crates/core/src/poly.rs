//! Sparse multivariate polynomials and first-order differential operators.
//!
//! Monomials are ordered graded-lexicographically with `x1 > x2 > …`; the
//! leading term of a [`Polynomial`] is its largest monomial in that order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{primitive, Rational};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `∂/∂x_j` of the monomial as `(coefficient, monomial)`, `None` if zero.
    pub fn derivative(&self, j: usize) -> Option<(u32, Monomial)> {
        let e = self.0[j];
        if e == 0 {
            return None;
        }
        let mut out = self.0.clone();
        out[j] -= 1;
        Some((e, Monomial(out)))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `degree` in the variables `vars`, largest first.
pub fn monomials_of_degree(num_vars: usize, vars: &[usize], degree: u32) -> Vec<Monomial> {
    fn rec(vars: &[usize], left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        match vars.split_first() {
            None => {
                if left == 0 {
                    out.push(Monomial(cur.clone()));
                }
            }
            Some((&v, rest)) => {
                let range = if rest.is_empty() { left..=left } else { 0..=left };
                for e in range.rev() {
                    cur[v] = e;
                    rec(rest, left - e, cur, out);
                }
                cur[v] = 0;
            }
        }
    }
    let mut sorted = vars.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut out = Vec::new();
    if sorted.is_empty() {
        if degree == 0 {
            out.push(Monomial::one(num_vars));
        }
        return out;
    }
    rec(&sorted, degree, &mut vec![0; num_vars], &mut out);
    out
}

/// Sparse polynomial in `x1..xn` with rational coefficients; never stores zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        Self {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        Self::monomial(num_vars, Monomial::one(num_vars), c)
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        Self::monomial(num_vars, Monomial::var(num_vars, i), Rational::one())
    }

    pub fn monomial(num_vars: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.num_vars(), num_vars, "monomial arity");
        let mut p = Self::zero(num_vars);
        p.add_term(m, c);
        p
    }

    /// Linear form `Σ c_k x_k`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, k), c.clone());
        }
        p
    }

    pub fn from_terms(num_vars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(num_vars);
        for (m, c) in terms {
            assert_eq!(m.num_vars(), num_vars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Indices of variables that actually occur.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.num_vars)
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        Self {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn derivative(&self, j: usize) -> Self {
        let mut out = Self::zero(self.num_vars);
        for (m, c) in &self.terms {
            if let Some((e, dm)) = m.derivative(j) {
                out.add_term(dm, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.num_vars, Rational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.num_vars, "evaluation point arity");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Content cleared to coprime integers with a positive leading coefficient.
    pub fn normalized(&self) -> Self {
        let coeffs: Vec<Rational> = self.terms.values().rev().cloned().collect();
        let prim = primitive(&coeffs);
        Self {
            num_vars: self.num_vars,
            terms: self.terms.keys().rev().cloned().zip(prim).collect(),
        }
    }

    /// Embeds into a ring with more variables, appending zero exponents.
    pub fn extend_vars(&self, num_vars: usize) -> Self {
        assert!(num_vars >= self.num_vars);
        Self {
            num_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(num_vars, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.num_vars, other.num_vars, "polynomial arity mismatch");
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_same(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.check_same(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_same(rhs);
        let mut out = Polynomial::zero(self.num_vars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

/// `Σ_j components[j] ∂/∂x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    num_vars: usize,
    components: Vec<Polynomial>,
}

impl VectorField {
    pub fn zero(num_vars: usize) -> Self {
        Self {
            num_vars,
            components: vec![Polynomial::zero(num_vars); num_vars],
        }
    }

    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let n = components.len();
        if let Some(bad) = components.iter().find(|p| p.num_vars() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.num_vars(),
            });
        }
        Ok(Self {
            num_vars: n,
            components,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, j: usize) -> &Polynomial {
        &self.components[j]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// `Σ_j f_j ∂P/∂x_j`.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.num_vars() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                got: p.num_vars(),
            });
        }
        let mut out = Polynomial::zero(self.num_vars);
        for (j, f) in self.components.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let d = p.derivative(j);
            if !d.is_zero() {
                out = &out + &(f * &d);
            }
        }
        Ok(out)
    }

    /// Operator commutator `A∘B − B∘A`, itself a vector field.
    pub fn commutator(&self, other: &VectorField) -> Result<VectorField> {
        let comps = (0..self.num_vars)
            .map(|m| {
                let a = self.apply(&other.components[m])?;
                let b = other.apply(&self.components[m])?;
                Ok(&a - &b)
            })
            .collect::<Result<Vec<_>>>()?;
        VectorField::new(comps)
    }

    pub fn scale(&self, c: &Rational) -> VectorField {
        VectorField {
            num_vars: self.num_vars,
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField {
            num_vars: self.num_vars,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Keeps only the `∂/∂x_j` components with `j` in `vars`.
    pub fn restrict_to(&self, vars: &[usize]) -> VectorField {
        let components = (0..self.num_vars)
            .map(|j| {
                if vars.contains(&j) {
                    self.components[j].clone()
                } else {
                    Polynomial::zero(self.num_vars)
                }
            })
            .collect();
        VectorField {
            num_vars: self.num_vars,
            components,
        }
    }

    /// Scalar multiple with a positive coefficient on the first nonzero
    /// component's leading term. Fields equal up to sign become equal.
    pub fn sign_normalized(&self) -> VectorField {
        let lead = self
            .components
            .iter()
            .find_map(|p| p.leading_term().map(|(_, c)| c.is_negative()));
        match lead {
            Some(true) => self.scale(&-Rational::one()),
            _ => self.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn grlex_order() {
        let a = Monomial(vec![1, 0, 1]);
        let b = Monomial(vec![0, 2, 0]);
        let c = Monomial(vec![2, 0, 0]);
        let d = Monomial(vec![0, 0, 3]);
        assert!(c > a && a > b && d > c);
    }

    #[test]
    fn monomial_enumeration() {
        let ms = monomials_of_degree(3, &[0, 1, 2], 2);
        assert_eq!(ms.len(), 6);
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
        let ms = monomials_of_degree(5, &[3, 4], 3);
        assert_eq!(ms.len(), 4);
        assert!(ms.iter().all(|m| m.exponents()[0] == 0));
        assert_eq!(monomials_of_degree(2, &[], 0).len(), 1);
        assert_eq!(monomials_of_degree(2, &[], 1).len(), 0);
    }

    #[test]
    fn arithmetic_and_derivative() {
        let n = 2;
        let p = &(&x(n, 0) + &x(n, 1)).pow(2) - &x(n, 0).pow(2);
        // 2 x1 x2 + x2^2
        assert_eq!(p.len(), 2);
        assert_eq!(p.derivative(0), x(n, 1).scale(&int(2)));
        assert_eq!(p.evaluate(&[int(1), int(3)]), int(15));
        assert_eq!(p.degree(), Some(2));
        assert!(p.is_homogeneous());
    }

    #[test]
    fn normalization() {
        let n = 2;
        let p = &x(n, 0).scale(&crate::rational::frac(-1, 2)) + &x(n, 1).scale(&int(3));
        let q = p.normalized();
        assert_eq!(q.leading_term().unwrap().1, &int(1));
        assert_eq!(q.coefficient(&Monomial::var(2, 1)), int(-6));
    }

    #[test]
    fn field_apply_and_commutator() {
        let n = 3;
        // rotation -x3 d2 + x2 d3 kills x2^2 + x3^2
        let f = VectorField::new(vec![Polynomial::zero(n), -&x(n, 2), x(n, 1)]).unwrap();
        let r = &x(n, 1).pow(2) + &x(n, 2).pow(2);
        assert!(f.apply(&r).unwrap().is_zero());
        assert!(f.apply(&Polynomial::constant(n, int(5))).unwrap().is_zero());
        let g = VectorField::new(vec![x(n, 2), Polynomial::zero(n), -&x(n, 0)]).unwrap();
        let c = f.commutator(&g).unwrap();
        // [A,B] x1 = A(x3) = x2
        assert_eq!(c.apply(&x(n, 0)).unwrap(), x(n, 1));
        assert!(f.apply(&Polynomial::zero(2)).is_err());
    }
}
