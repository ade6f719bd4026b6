//! Named algebras with their expected invariant counts.
//!
//! Every entry uses 1-based basis indices in its structure constants. Entries
//! with a Levi factor spanned by the first basis elements carry the Levi
//! dimension and, when the acting algebra is `sl(2,R)` or `so(3)`, the label
//! of the representation.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};

use crate::algebra::{Builder, LieAlgebra};
use crate::error::{Error, Result};
use crate::format::{parse_rep_label, AlgebraDoc, LeviMeta};
use crate::linalg::Matrix;
use crate::rational::{self, frac, int, Rational};
use crate::reps::{so3_standard, RepLabel, Representation};
use crate::semidirect::{semidirect_sum, split_levi, LeviPair};

pub type Params = BTreeMap<String, Rational>;

type BuildFn = fn(&Params) -> Result<LieAlgebra>;

/// A registered algebra.
#[derive(Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
    /// Parameters the entry accepts, with their default values.
    pub params: &'static [(&'static str, i64)],
    pub expected_n: Option<usize>,
    /// Invariants in the coordinates of the entry's basis.
    pub known_invariants: &'static [&'static str],
    pub levi_dim: Option<usize>,
    pub rep: Option<&'static str>,
    pub notes: &'static [&'static str],
    /// Integer parameter values at which `expected_n` fails, with an
    /// invariant that exists there.
    pub exceptional: &'static [(i64, &'static str)],
    build: BuildFn,
}

impl std::fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CatalogEntry")
            .field("name", &self.name)
            .field("expected_n", &self.expected_n)
            .finish_non_exhaustive()
    }
}

/// An entry evaluated at concrete parameter values.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub algebra: LieAlgebra,
    pub levi: Option<LeviMeta>,
    pub params: Params,
    pub warnings: Vec<String>,
}

impl Instance {
    /// The Levi pair, for entries that record a Levi dimension.
    pub fn levi_pair(&self) -> Option<Result<LeviPair>> {
        self.levi
            .as_ref()
            .map(|m| split_levi(&self.algebra, m.levi_dim, m.rep.as_ref()))
    }

    pub fn doc(&self) -> AlgebraDoc {
        AlgebraDoc {
            name: self.name.clone(),
            algebra: self.algebra.clone(),
            levi: self.levi.clone(),
        }
    }
}

impl CatalogEntry {
    pub fn is_parameterized(&self) -> bool {
        !self.params.is_empty()
    }

    pub fn default_params(&self) -> Params {
        self.params
            .iter()
            .map(|&(k, v)| (k.to_string(), int(v)))
            .collect()
    }

    pub fn rep_label(&self) -> Option<RepLabel> {
        self.rep.map(|s| parse_rep_label(s).expect("static label"))
    }

    /// Builds the entry. Missing parameters take their defaults; unknown
    /// names are rejected. Degenerate values are built but reported in
    /// [`Instance::warnings`].
    pub fn instantiate(&self, overrides: &Params) -> Result<Instance> {
        let mut params = self.default_params();
        let mut warnings = Vec::new();
        for (k, v) in overrides {
            if !params.contains_key(k) {
                if self.name.starts_with("T1_") && k == "p" {
                    warnings.push(format!("{} has no parameter p; the value is ignored", self.name));
                    continue;
                }
                return Err(Error::InvalidArgument(format!(
                    "{} has no parameter {k:?} (accepted: {})",
                    self.name,
                    self.param_names()
                )));
            }
            params.insert(k.clone(), v.clone());
        }
        if let Some(p) = params.get("p").filter(|_| self.is_parameterized()) {
            if p.is_zero() {
                warnings.push(format!("p = 0 lies outside the documented range for {}", self.name));
            }
            for (value, invariant) in self.exceptional {
                if *p == int(*value) {
                    warnings.push(format!(
                        "{} at p = {value} has the invariant {invariant}, so the expected count does not apply",
                        self.name
                    ));
                }
            }
        }
        let algebra = (self.build)(&params)?;
        let name = if self.is_parameterized() {
            let tail: Vec<String> = params
                .iter()
                .map(|(k, v)| format!("{k}={}", rational::format(v)))
                .collect();
            format!("{}[{}]", self.name, tail.join(","))
        } else {
            self.name.to_string()
        };
        Ok(Instance {
            name,
            algebra,
            levi: self.levi_dim.map(|levi_dim| LeviMeta {
                levi_dim,
                rep: self.rep_label(),
            }),
            params,
            warnings,
        })
    }

    /// The expected count at the given parameters, `None` when unknown or
    /// when the parameters hit an exceptional value.
    pub fn expected_n_at(&self, params: &Params) -> Option<usize> {
        let p = params.get("p");
        if self.exceptional.iter().any(|(v, _)| p == Some(&int(*v))) {
            return None;
        }
        self.expected_n
    }

    /// The algebra at default parameters.
    pub fn algebra(&self) -> LieAlgebra {
        self.instantiate(&Params::new())
            .expect("catalog defaults build")
            .algebra
    }

    fn param_names(&self) -> String {
        if self.params.is_empty() {
            "none".into()
        } else {
            self.params.iter().map(|(k, _)| *k).collect::<Vec<_>>().join(", ")
        }
    }
}

fn p_of(params: &Params) -> Rational {
    params.get("p").cloned().unwrap_or_else(|| int(1))
}

fn constants(n: usize, list: &[(usize, usize, usize, Rational)]) -> Result<LieAlgebra> {
    LieAlgebra::from_constants(n, list)
}

fn with_labels(n: usize, labels: &[&str], list: &[(usize, usize, usize, Rational)]) -> Result<LieAlgebra> {
    debug_assert_eq!(labels.len(), n);
    let mut b = Builder::new(labels.iter().map(|s| s.to_string()).collect());
    for (i, j, k, c) in list {
        b.add(i - 1, j - 1, k - 1, c.clone())?;
    }
    b.build()
}

/// `s ⋉_R r` for a labelled representation.
fn levi_sum(label: &str, r: LieAlgebra) -> Result<LieAlgebra> {
    let rep = parse_rep_label(label)
        .map_err(|e| Error::InvalidArgument(e.to_string()))?
        .build()?;
    semidirect_sum(&LeviPair::new(rep, r)?)
}

const SL2: [(usize, usize, usize, i64); 3] = [(1, 2, 2, 2), (1, 3, 3, -2), (2, 3, 1, 1)];
const SO3: [(usize, usize, usize, i64); 3] = [(1, 2, 3, 1), (1, 3, 2, -1), (2, 3, 1, 1)];

fn ints(list: &[(usize, usize, usize, i64)]) -> Vec<(usize, usize, usize, Rational)> {
    list.iter().map(|&(i, j, k, c)| (i, j, k, int(c))).collect()
}

/// `so(3)` on `X1..X3` and `R4` on `X4..X7`.
fn so3_r4_block() -> Vec<(usize, usize, usize, Rational)> {
    let mut v = ints(&SO3);
    let h = frac(1, 2);
    let m = frac(-1, 2);
    for (i, j, k, c) in [
        (1, 4, 7, &h),
        (1, 5, 6, &h),
        (1, 6, 5, &m),
        (1, 7, 4, &m),
        (2, 4, 5, &h),
        (2, 5, 4, &m),
        (2, 6, 7, &h),
        (2, 7, 6, &m),
        (3, 4, 6, &h),
        (3, 5, 7, &m),
        (3, 6, 4, &m),
        (3, 7, 5, &h),
    ] {
        v.push((i, j, k, c.clone()));
    }
    v
}

/// `sl(2,R)` on `X1..X3` and `2D(1/2)` on `X4..X7`.
fn sl2_two_doublets() -> Vec<(usize, usize, usize, Rational)> {
    let mut v = ints(&SL2);
    v.extend(ints(&[
        (1, 4, 4, 1),
        (1, 5, 5, -1),
        (1, 6, 6, 1),
        (1, 7, 7, -1),
        (2, 5, 4, 1),
        (2, 7, 6, 1),
        (3, 4, 5, 1),
        (3, 6, 7, 1),
    ]));
    v
}

/// Rotation-dilation of `X4..X7` by `X8`: `[X4,X8] = pX4 - X6` and so on.
fn rotation_dilation(p: &Rational) -> Vec<(usize, usize, usize, Rational)> {
    vec![
        (4, 8, 4, p.clone()),
        (4, 8, 6, int(-1)),
        (5, 8, 5, p.clone()),
        (5, 8, 7, int(-1)),
        (6, 8, 4, int(1)),
        (6, 8, 6, p.clone()),
        (7, 8, 5, int(1)),
        (7, 8, 7, p.clone()),
    ]
}

fn build_so3_ad_3l1(_: &Params) -> Result<LieAlgebra> {
    let rep = Representation::adjoint(&so3_standard()).with_label(parse_rep_label("R3").expect("static label"));
    semidirect_sum(&LeviPair::new(rep, LieAlgebra::abelian(3))?)
}

fn heisenberg() -> LieAlgebra {
    constants(3, &[(1, 2, 3, int(1))]).expect("static constants")
}

fn a33() -> LieAlgebra {
    constants(3, &[(1, 3, 1, int(1)), (2, 3, 2, int(1))]).expect("static constants")
}

fn build_sl2_h1(_: &Params) -> Result<LieAlgebra> {
    levi_sum("D(1/2)+D0", heisenberg())
}

fn build_sl2_a33(_: &Params) -> Result<LieAlgebra> {
    levi_sum("D(1/2)+D0", a33())
}

fn build_t1_1(_: &Params) -> Result<LieAlgebra> {
    let mut v = ints(&SL2);
    v.extend(ints(&[(1, 4, 4, 1), (1, 5, 5, -1), (2, 5, 4, 1), (3, 4, 5, 1), (4, 6, 4, 1), (5, 6, 5, 1)]));
    constants(6, &v)
}

fn build_t1_2(_: &Params) -> Result<LieAlgebra> {
    let mut v = so3_r4_block();
    v.extend(ints(&[(4, 8, 4, 1), (5, 8, 5, 1), (6, 8, 6, 1), (7, 8, 7, 1)]));
    constants(8, &v)
}

fn build_t1_3(params: &Params) -> Result<LieAlgebra> {
    let mut v = so3_r4_block();
    v.extend(rotation_dilation(&p_of(params)));
    constants(8, &v)
}

fn build_t1_4(_: &Params) -> Result<LieAlgebra> {
    let mut v = sl2_two_doublets();
    v.extend(ints(&[
        (4, 8, 4, 1),
        (5, 8, 5, 1),
        (6, 8, 4, 1),
        (6, 8, 6, 1),
        (7, 8, 5, 1),
        (7, 8, 7, 1),
    ]));
    constants(8, &v)
}

fn build_t1_5(params: &Params) -> Result<LieAlgebra> {
    let p = p_of(params);
    let mut v = sl2_two_doublets();
    v.extend(ints(&[(4, 8, 4, 1), (5, 8, 5, 1)]));
    v.push((6, 8, 6, p.clone()));
    v.push((7, 8, 7, p));
    constants(8, &v)
}

fn build_t1_6(params: &Params) -> Result<LieAlgebra> {
    let mut v = sl2_two_doublets();
    v.extend(rotation_dilation(&p_of(params)));
    constants(8, &v)
}

fn build_t1_7(_: &Params) -> Result<LieAlgebra> {
    let mut v = ints(&SL2);
    v.extend(ints(&[
        (1, 4, 4, 1),
        (1, 5, 5, -1),
        (2, 5, 4, 1),
        (3, 4, 5, 1),
        (4, 6, 4, 1),
        (5, 6, 5, 1),
        (7, 8, 8, 1),
    ]));
    constants(8, &v)
}

fn build_t1_8(_: &Params) -> Result<LieAlgebra> {
    let mut v = ints(&SL2);
    v.extend(ints(&[
        (1, 4, 4, 3),
        (1, 5, 5, 1),
        (1, 6, 6, -1),
        (1, 7, 7, -3),
        (2, 5, 4, 3),
        (2, 6, 5, 2),
        (2, 7, 6, 1),
        (3, 4, 5, 1),
        (3, 5, 6, 2),
        (3, 6, 7, 3),
        (4, 8, 4, 1),
        (5, 8, 5, 1),
        (6, 8, 6, 1),
        (7, 8, 7, 1),
    ]));
    constants(8, &v)
}

fn build_l10_14(_: &Params) -> Result<LieAlgebra> {
    levi_sum("R7", LieAlgebra::abelian(7))
}

fn build_l10_15(_: &Params) -> Result<LieAlgebra> {
    levi_sum("R4+R3", LieAlgebra::abelian(7))
}

fn build_l10_27(_: &Params) -> Result<LieAlgebra> {
    levi_sum("D(3)", LieAlgebra::abelian(7))
}

fn build_l10_28(_: &Params) -> Result<LieAlgebra> {
    levi_sum("D(2)+D(1/2)", LieAlgebra::abelian(7))
}

fn build_l10_29(_: &Params) -> Result<LieAlgebra> {
    levi_sum("D(3/2)+D(1)", LieAlgebra::abelian(7))
}

fn build_l10_30(_: &Params) -> Result<LieAlgebra> {
    levi_sum("D(1)+2D(1/2)", LieAlgebra::abelian(7))
}

fn build_so3_r4_3d0_r(_: &Params) -> Result<LieAlgebra> {
    // radical X4..X10 renumbered 1..7
    let r = constants(
        7,
        &ints(&[
            (1, 5, 1, 1),
            (2, 5, 2, 1),
            (3, 5, 3, 1),
            (4, 5, 4, 1),
            (1, 6, 3, 1),
            (2, 6, 4, 1),
            (3, 6, 1, -1),
            (4, 6, 2, -1),
            (6, 7, 7, 1),
        ]),
    )?;
    levi_sum("R4+3D0", r)
}

fn build_sl2_d1_d12_5l1(_: &Params) -> Result<LieAlgebra> {
    levi_sum("D(1)+D(1/2)", LieAlgebra::abelian(5))
}

/// `ε_ijk` brackets of a vector triple `base+1..base+3` under `J1..J3`.
fn rotations(out: &mut Vec<(usize, usize, usize, Rational)>, base: usize) {
    for (i, j, k) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
        out.push((i, base + j, base + k, int(1)));
        out.push((j, base + i, base + k, int(-1)));
    }
}

const SCHRODINGER_BASIS: [&str; 12] = ["J1", "J2", "J3", "K1", "K2", "K3", "P1", "P2", "P3", "P0", "C", "D"];

fn build_schrodinger(_: &Params) -> Result<LieAlgebra> {
    let mut v = Vec::new();
    rotations(&mut v, 0);
    rotations(&mut v, 3);
    rotations(&mut v, 6);
    // J1..J3, K1..K3, P1..P3, P0 = 10, C = 11, D = 12
    for i in 1..=3 {
        v.push((3 + i, 10, 6 + i, int(1)));
        v.push((6 + i, 12, 6 + i, int(1)));
        v.push((12, 3 + i, 3 + i, int(1)));
        v.push((11, 6 + i, 3 + i, int(1)));
    }
    v.push((12, 10, 10, int(-2)));
    v.push((11, 10, 12, int(-1)));
    v.push((11, 12, 11, int(-2)));
    dedup_rotations(&mut v);
    with_labels(12, &SCHRODINGER_BASIS, &v)
}

const GALILEI_BASIS: [&str; 10] = ["J1", "J2", "J3", "K1", "K2", "K3", "P1", "P2", "P3", "P0"];

fn build_galilei(_: &Params) -> Result<LieAlgebra> {
    let mut v = Vec::new();
    rotations(&mut v, 0);
    rotations(&mut v, 3);
    rotations(&mut v, 6);
    for i in 1..=3 {
        v.push((3 + i, 10, 6 + i, int(1)));
    }
    dedup_rotations(&mut v);
    with_labels(10, &GALILEI_BASIS, &v)
}

/// The rotation brackets of `J` with itself are produced twice (once per
/// orientation); keep the ones with `i < j`.
fn dedup_rotations(v: &mut Vec<(usize, usize, usize, Rational)>) {
    let mut seen = std::collections::BTreeSet::new();
    v.retain(|(i, j, k, _)| {
        let key = (*i.min(j), *i.max(j), *k);
        seen.insert(key)
    });
}

/// Basis of `sl(n,R)`: `E_ij` for `i ≠ j` in row-major order, then
/// `H_i = E_ii - E_{i+1,i+1}`.
pub fn sl_n_basis(n: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = Matrix::zeros(n, n);
                m[(i, j)] = int(1);
                out.push(m);
            }
        }
    }
    for i in 0..n - 1 {
        let mut m = Matrix::zeros(n, n);
        m[(i, i)] = int(1);
        m[(i + 1, i + 1)] = int(-1);
        out.push(m);
    }
    out
}

/// Coordinates of a traceless matrix in [`sl_n_basis`].
fn sl_n_coordinates(m: &Matrix, n: usize) -> Vec<Rational> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(m[(i, j)].clone());
            }
        }
    }
    let mut acc = Rational::zero();
    for i in 0..n - 1 {
        acc += &m[(i, i)];
        out.push(acc.clone());
    }
    out
}

/// `sl(n,R) ⋉ R^n` with the defining action on column vectors.
pub fn special_affine(n: usize) -> Result<LieAlgebra> {
    if n < 2 {
        return Err(Error::InvalidArgument("sa(n) needs n >= 2".into()));
    }
    let basis = sl_n_basis(n);
    let m = basis.len();
    let mut s = Builder::with_dim(m);
    for a in 0..m {
        for b in a + 1..m {
            let c = basis[a].commutator(&basis[b]);
            for (k, v) in sl_n_coordinates(&c, n).into_iter().enumerate() {
                if !v.is_zero() {
                    s.add(a, b, k, v)?;
                }
            }
        }
    }
    let rep = Representation::new(s.build()?, basis)?;
    semidirect_sum(&LeviPair::new(rep, LieAlgebra::abelian(n))?)
}

fn build_sa_n(params: &Params) -> Result<LieAlgebra> {
    let n = params.get("n").cloned().unwrap_or_else(|| int(2));
    let n = if n.is_integer() { n.to_integer().to_usize() } else { None };
    match n {
        Some(n @ 2..=6) => special_affine(n),
        _ => Err(Error::InvalidArgument("sa_n needs an integer n between 2 and 6".into())),
    }
}

const P_NOTE: &str = "p = 0 is accepted but flagged; its admissible range is not stated";
const MINUS_NOTE: &str = "the printed constant C_17^7 lacks its digit and is read as -1, the only value passing the Jacobi check";

static ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "so3_ad_3L1",
        summary: "so(3) acting on an abelian ideal by the adjoint representation",
        params: &[],
        expected_n: Some(2),
        known_invariants: &["x4^2 + x5^2 + x6^2", "x1*x4 + x2*x5 + x3*x6"],
        levi_dim: Some(3),
        rep: Some("R3"),
        notes: &[],
        exceptional: &[],
        build: build_so3_ad_3l1,
    },
    CatalogEntry {
        name: "sl2_h1",
        summary: "sl(2,R) acting on the Heisenberg algebra by D(1/2)+D0",
        params: &[],
        expected_n: Some(2),
        known_invariants: &["x6", "2*x1*x4*x5 + 4*x2*x3*x6 + 2*x2*x5^2 - 2*x3*x4^2 + x1^2*x6"],
        levi_dim: Some(3),
        rep: Some("D(1/2)+D0"),
        notes: &[],
        exceptional: &[],
        build: build_sl2_h1,
    },
    CatalogEntry {
        name: "sl2_A33",
        summary: "sl(2,R) acting on A_{3,3} by D(1/2)+D0; no invariants",
        params: &[],
        expected_n: Some(0),
        known_invariants: &[],
        levi_dim: Some(3),
        rep: Some("D(1/2)+D0"),
        notes: &["identical to T1_1"],
        exceptional: &[],
        build: build_sl2_a33,
    },
    CatalogEntry {
        name: "T1_1",
        summary: "6-dim, sl(2,R), D(1/2)+D0, no invariants",
        params: &[],
        expected_n: Some(0),
        known_invariants: &[],
        levi_dim: Some(3),
        rep: Some("D(1/2)+D0"),
        notes: &[],
        exceptional: &[],
        build: build_t1_1,
    },
    CatalogEntry {
        name: "T1_2",
        summary: "8-dim, so(3), R4+D0, radical dilated by X8, no invariants",
        params: &[],
        expected_n: Some(0),
        known_invariants: &[],
        levi_dim: Some(3),
        rep: Some("R4+D0"),
        notes: &["shares its representation label with T1_3"],
        exceptional: &[],
        build: build_t1_2,
    },
    CatalogEntry {
        name: "T1_3",
        summary: "8-dim, so(3), R4+D0, rotation-dilation by X8 with parameter p, no invariants",
        params: &[("p", 1)],
        expected_n: Some(0),
        known_invariants: &[],
        levi_dim: Some(3),
        rep: Some("R4+D0"),
        notes: &[P_NOTE],
        exceptional: &[(0, "x4^2 + x5^2 + x6^2 + x7^2")],
        build: build_t1_3,
    },
    CatalogEntry {
        name: "T1_4",
        summary: "8-dim, sl(2,R), 2D(1/2)+D0, Jordan block action of X8, no invariants",
        params: &[],
        expected_n: Some(0),
        known_invariants: &[],
        levi_dim: Some(3),
        rep: Some("2D(1/2)+D0"),
        notes: &[MINUS_NOTE],
        exceptional: &[],
        build: build_t1_4,
    },
    CatalogEntry {
        name: "T1_5",
        summary: "8-dim, sl(2,R), 2D(1/2)+D0, X8 scales the doublets by 1 and p, no invariants",
        params: &[("p", 1)],
        expected_n: Some(0),
        known_invariants: &[],
        levi_dim: Some(3),
        rep: Some("2D(1/2)+D0"),
        notes: &[MINUS_NOTE, P_NOTE, "at p = -1 the doublets pair to the invariant x4*x7 - x5*x6"],
        exceptional: &[(-1, "x4*x7 - x5*x6")],
        build: build_t1_5,
    },
    CatalogEntry {
        name: "T1_6",
        summary: "8-dim, sl(2,R), 2D(1/2)+D0, rotation-dilation by X8 with parameter p, no invariants",
        params: &[("p", 1)],
        expected_n: Some(0),
        known_invariants: &[],
        levi_dim: Some(3),
        rep: Some("2D(1/2)+D0"),
        notes: &[P_NOTE],
        exceptional: &[(0, "x4*x7 - x5*x6")],
        build: build_t1_6,
    },
    CatalogEntry {
        name: "T1_7",
        summary: "8-dim, sl(2,R), D(1/2)+3D0, A_{3,3} plus the affine algebra, no invariants",
        params: &[],
        expected_n: Some(0),
        known_invariants: &[],
        levi_dim: Some(3),
        rep: Some("D(1/2)+3D0"),
        notes: &[],
        exceptional: &[],
        build: build_t1_7,
    },
    CatalogEntry {
        name: "T1_8",
        summary: "8-dim, sl(2,R), D(3/2)+D0, radical dilated by X8, no invariants",
        params: &[],
        expected_n: Some(0),
        known_invariants: &[],
        levi_dim: Some(3),
        rep: Some("D(3/2)+D0"),
        notes: &[],
        exceptional: &[],
        build: build_t1_8,
    },
    CatalogEntry {
        name: "L10_14",
        summary: "so(3) acting on 7L1 by R7",
        params: &[],
        expected_n: Some(4),
        known_invariants: &[],
        levi_dim: Some(3),
        rep: Some("R7"),
        notes: &["R7 is realized with rational matrices that are skew for a diagonal invariant form"],
        exceptional: &[],
        build: build_l10_14,
    },
    CatalogEntry {
        name: "L10_15",
        summary: "so(3) acting on 7L1 by R4 plus the adjoint representation",
        params: &[],
        expected_n: Some(4),
        known_invariants: &[],
        levi_dim: Some(3),
        rep: Some("R4+R3"),
        notes: &[],
        exceptional: &[],
        build: build_l10_15,
    },
    CatalogEntry {
        name: "L10_27",
        summary: "sl(2,R) acting on 7L1 by D(3)",
        params: &[],
        expected_n: Some(4),
        known_invariants: &[],
        levi_dim: Some(3),
        rep: Some("D(3)"),
        notes: &[],
        exceptional: &[],
        build: build_l10_27,
    },
    CatalogEntry {
        name: "L10_28",
        summary: "sl(2,R) acting on 7L1 by D(2)+D(1/2)",
        params: &[],
        expected_n: Some(4),
        known_invariants: &[],
        levi_dim: Some(3),
        rep: Some("D(2)+D(1/2)"),
        notes: &[],
        exceptional: &[],
        build: build_l10_28,
    },
    CatalogEntry {
        name: "L10_29",
        summary: "sl(2,R) acting on 7L1 by D(3/2)+D(1)",
        params: &[],
        expected_n: Some(4),
        known_invariants: &[],
        levi_dim: Some(3),
        rep: Some("D(3/2)+D(1)"),
        notes: &[],
        exceptional: &[],
        build: build_l10_29,
    },
    CatalogEntry {
        name: "L10_30",
        summary: "sl(2,R) acting on 7L1 by D(1)+2D(1/2)",
        params: &[],
        expected_n: Some(4),
        known_invariants: &[],
        levi_dim: Some(3),
        rep: Some("D(1)+2D(1/2)"),
        notes: &[],
        exceptional: &[],
        build: build_l10_30,
    },
    CatalogEntry {
        name: "so3_R4_3D0_r",
        summary: "10-dim, so(3), R4+3D0 on an indecomposable solvable radical, no invariants",
        params: &[],
        expected_n: Some(0),
        known_invariants: &[],
        levi_dim: Some(3),
        rep: Some("R4+3D0"),
        notes: &[],
        exceptional: &[],
        build: build_so3_r4_3d0_r,
    },
    CatalogEntry {
        name: "sl2_D1_D12_5L1",
        summary: "sl(2,R) acting on 5L1 by D(1)+D(1/2)",
        params: &[],
        expected_n: Some(2),
        known_invariants: &["4*x4*x6 - x5^2", "x4*x8^2 - x5*x7*x8 + x6*x7^2"],
        levi_dim: Some(3),
        rep: Some("D(1)+D(1/2)"),
        notes: &[],
        exceptional: &[],
        build: build_sl2_d1_d12_5l1,
    },
    CatalogEntry {
        name: "schrodinger_3p1",
        summary: "Schrodinger algebra in 3+1 dimensions over J, K, P, P0, C, D",
        params: &[],
        expected_n: None,
        known_invariants: &[
            "k1^2*p2^2 + k1^2*p3^2 + k2^2*p1^2 + k2^2*p3^2 + k3^2*p1^2 + k3^2*p2^2 \
             - 2*p1*p2*k1*k2 - 2*p1*p3*k1*k3 - 2*p2*p3*k2*k3",
        ],
        levi_dim: None,
        rep: None,
        notes: &[
            "the bracket printed as [D,K_j] = D_j is read as [D,K_j] = K_j, the only reading passing the Jacobi check",
            "the basis has 12 elements",
        ],
        exceptional: &[],
        build: build_schrodinger,
    },
    CatalogEntry {
        name: "galilei_3p1",
        summary: "Galilei algebra in 3+1 dimensions without central extension",
        params: &[],
        expected_n: None,
        known_invariants: &[
            "p1^2 + p2^2 + p3^2",
            "k1^2*p2^2 + k1^2*p3^2 + k2^2*p1^2 + k2^2*p3^2 + k3^2*p1^2 + k3^2*p2^2 \
             - 2*p1*p2*k1*k2 - 2*p1*p3*k1*k3 - 2*p2*p3*k2*k3",
        ],
        levi_dim: Some(3),
        rep: Some("2R3+D0"),
        notes: &["brackets: rotations act on J, K, P as vectors and [K_i, P0] = P_i"],
        exceptional: &[],
        build: build_galilei,
    },
    CatalogEntry {
        name: "sa_n",
        summary: "special affine algebra sl(n,R) acting on R^n",
        params: &[("n", 2)],
        expected_n: Some(1),
        known_invariants: &[],
        levi_dim: None,
        rep: None,
        notes: &["n must be an integer between 2 and 6"],
        exceptional: &[],
        build: build_sa_n,
    },
];

pub fn catalog_entries() -> &'static [CatalogEntry] {
    ENTRIES
}

/// Looks up an entry by exact name; on failure the error lists close names.
pub fn catalog_lookup(name: &str) -> Result<&'static CatalogEntry> {
    if let Some(e) = ENTRIES.iter().find(|e| e.name == name) {
        return Ok(e);
    }
    let lower = name.to_lowercase();
    let mut scored: Vec<(usize, &str)> = ENTRIES
        .iter()
        .map(|e| {
            let candidate = e.name.to_lowercase();
            let mut d = edit_distance(&lower, &candidate);
            if !lower.is_empty() && (candidate.contains(&lower) || lower.contains(&candidate)) {
                d = d.min(1);
            }
            (d, e.name)
        })
        .filter(|&(d, _)| d <= 3)
        .collect();
    scored.sort();
    let near: Vec<&str> = scored.iter().take(5).map(|&(_, n)| n).collect();
    let hint = if near.is_empty() {
        String::new()
    } else {
        format!("; did you mean {}?", near.join(", "))
    };
    Err(Error::InvalidArgument(format!("unknown catalog entry {name:?}{hint}")))
}

fn edit_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    for (i, ca) in a.iter().enumerate() {
        let mut cur = vec![i + 1; b.len() + 1];
        for (j, cb) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(ca != cb);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        prev = cur;
    }
    prev[b.len()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_and_near_matches() {
        assert_eq!(catalog_lookup("sl2_h1").unwrap().expected_n, Some(2));
        let err = catalog_lookup("sl2_h2").unwrap_err().to_string();
        assert!(err.contains("sl2_h1"), "{err}");
        assert!(catalog_lookup("nope").is_err());
    }

    #[test]
    fn unknown_parameter_rejected() {
        let e = catalog_lookup("so3_ad_3L1").unwrap();
        let mut p = Params::new();
        p.insert("q".into(), int(1));
        assert!(e.instantiate(&p).is_err());
    }

    #[test]
    fn p_zero_is_flagged() {
        let e = catalog_lookup("T1_3").unwrap();
        let mut p = Params::new();
        p.insert("p".into(), int(0));
        let inst = e.instantiate(&p).unwrap();
        assert_eq!(inst.warnings.len(), 2);
        assert_eq!(inst.name, "T1_3[p=0]");
    }

    #[test]
    fn table_row_equals_semidirect_construction() {
        assert_eq!(catalog_lookup("T1_1").unwrap().algebra(), catalog_lookup("sl2_A33").unwrap().algebra());
        let t8 = catalog_lookup("T1_8").unwrap().algebra();
        let built = levi_sum("D(3/2)+D0", constants(5, &ints(&[(1, 5, 1, 1), (2, 5, 2, 1), (3, 5, 3, 1), (4, 5, 4, 1)])).unwrap()).unwrap();
        assert_eq!(t8, built);
    }

    #[test]
    fn special_affine_dimensions() {
        assert_eq!(special_affine(2).unwrap().dim(), 5);
        assert_eq!(special_affine(3).unwrap().dim(), 11);
        assert!(special_affine(3).unwrap().satisfies_jacobi());
    }
}
