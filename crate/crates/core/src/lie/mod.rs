//! Exact arithmetic in gl_n(R) and its contraction to R^n ⋊ m_n.
//!
//! The subalgebra is m_n (rows `1..n-1`), the complement is the last row.
//! The contraction map `t_ε` scales last-row coefficients by `ε`.

mod group;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::Rational;

pub use group::{exp_basis, exp_gl2, Gl2Element, GroupError, Matrix, MirabolicElement, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("basis index ({row},{col}) out of range for n = {n}")]
    IndexOutOfRange { row: usize, col: usize, n: usize },
    #[error("n must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("the contraction map is undefined at epsilon = 0")]
    ZeroEpsilon,
    #[error("unsupported basis label `{0}`")]
    UnsupportedLabel(String),
}

/// Matrix unit `e_{row,col}`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Basis {
    pub row: usize,
    pub col: usize,
}

impl Basis {
    pub const E11: Basis = Basis { row: 1, col: 1 };
    pub const E12: Basis = Basis { row: 1, col: 2 };
    pub const E21: Basis = Basis { row: 2, col: 1 };
    pub const E22: Basis = Basis { row: 2, col: 2 };

    /// The four matrix units of gl_2 in row-major order.
    pub const GL2: [Basis; 4] = [Basis::E11, Basis::E12, Basis::E21, Basis::E22];

    pub const fn new(row: usize, col: usize) -> Self {
        Basis { row, col }
    }

    /// Row-major position among the four gl_2 units, if this is one of them.
    pub fn gl2_slot(self) -> Option<usize> {
        match (self.row, self.col) {
            (1..=2, 1..=2) => Some((self.row - 1) * 2 + self.col - 1),
            _ => None,
        }
    }

    pub fn label(self) -> String {
        if self.row < 10 && self.col < 10 {
            format!("e_{}{}", self.row, self.col)
        } else {
            format!("e_{{{},{}}}", self.row, self.col)
        }
    }

    /// All `n²` matrix units, row-major.
    pub fn all(n: usize) -> impl Iterator<Item = Basis> {
        (1..=n).flat_map(move |row| (1..=n).map(move |col| Basis { row, col }))
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for Basis {
    type Err = LieError;

    /// Accepts `e_12`, `e12`, `e_{1,2}`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LieError::UnsupportedLabel(s.to_string());
        let body = s.trim().strip_prefix('e').ok_or_else(bad)?;
        let body = body.strip_prefix('_').unwrap_or(body);
        let (row, col) = if let Some(inner) = body.strip_prefix('{').and_then(|b| b.strip_suffix('}')) {
            let (r, c) = inner.split_once(',').ok_or_else(bad)?;
            (r.trim().parse().map_err(|_| bad())?, c.trim().parse().map_err(|_| bad())?)
        } else {
            let bytes = body.as_bytes();
            if bytes.len() != 2 || !bytes.iter().all(u8::is_ascii_digit) {
                return Err(bad());
            }
            ((bytes[0] - b'0') as usize, (bytes[1] - b'0') as usize)
        };
        if row == 0 || col == 0 {
            return Err(bad());
        }
        Ok(Basis { row, col })
    }
}

/// Element of gl_n(R) with exact rational coordinates in the matrix-unit basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieElement {
    n: usize,
    coeffs: BTreeMap<Basis, Rational>,
}

impl LieElement {
    pub fn zero(n: usize) -> Self {
        LieElement {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(n: usize, b: Basis) -> Result<Self, LieError> {
        Self::from_terms(n, [(b, Rational::one())])
    }

    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (Basis, Rational)>,
    ) -> Result<Self, LieError> {
        let mut out = LieElement::zero(n);
        for (b, c) in terms {
            if b.row == 0 || b.col == 0 || b.row > n || b.col > n {
                return Err(LieError::IndexOutOfRange {
                    row: b.row,
                    col: b.col,
                    n,
                });
            }
            out.add_term(b, c);
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, b: Basis) -> Rational {
        self.coeffs.get(&b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Basis, &Rational)> {
        self.coeffs.iter().map(|(b, c)| (*b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, b: Basis, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(b).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&b);
        }
    }

    fn check_same(&self, other: &LieElement) -> Result<(), LieError> {
        if self.n != other.n {
            return Err(LieError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &LieElement) -> Result<LieElement, LieError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (b, c) in other.terms() {
            out.add_term(b, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &LieElement) -> Result<LieElement, LieError> {
        self.try_add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, factor: &Rational) -> LieElement {
        if factor.is_zero() {
            return LieElement::zero(self.n);
        }
        LieElement {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .map(|(b, c)| (*b, c * factor))
                .collect(),
        }
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (b, c)) in self.terms().enumerate() {
            let negative = *c < Rational::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "({mag})·")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// The splitting `gl_n = m_n ⊕ s_n` used for the contraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContractionSplit {
    n: usize,
}

impl ContractionSplit {
    pub fn new(n: usize) -> Result<Self, LieError> {
        if n < 2 {
            return Err(LieError::DimensionTooSmall(n));
        }
        Ok(ContractionSplit { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn in_subalgebra(&self, b: Basis) -> bool {
        b.row < self.n
    }

    pub fn in_complement(&self, b: Basis) -> bool {
        b.row == self.n
    }

    pub fn subalgebra(&self) -> Vec<Basis> {
        Basis::all(self.n).filter(|b| self.in_subalgebra(*b)).collect()
    }

    pub fn complement(&self) -> Vec<Basis> {
        Basis::all(self.n).filter(|b| self.in_complement(*b)).collect()
    }
}

/// Contraction parameter; `0` selects the contracted algebra.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Epsilon(pub Rational);

impl Epsilon {
    pub fn zero() -> Self {
        Epsilon(Rational::zero())
    }

    pub fn one() -> Self {
        Epsilon(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }
}

impl From<Rational> for Epsilon {
    fn from(value: Rational) -> Self {
        Epsilon(value)
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn delta(a: usize, b: usize) -> bool {
    a == b
}

/// `[e_ij, e_kl] = δ_jk e_il − δ_li e_kj` as a list of signed units.
fn unit_bracket(x: Basis, y: Basis) -> Vec<(Basis, i64)> {
    let mut out = Vec::with_capacity(2);
    if delta(x.col, y.row) {
        out.push((Basis::new(x.row, y.col), 1));
    }
    if delta(y.col, x.row) {
        out.push((Basis::new(y.row, x.col), -1));
    }
    out
}

/// The ε-bracket of two matrix units read off the closed-form case table.
///
/// The `i = n` row also covers `e_nn` paired with a subalgebra unit, where
/// the `δ_jk` term vanishes.
fn unit_bracket_table(n: usize, eps: &Rational, x: Basis, y: Basis) -> Vec<(Basis, Rational)> {
    let (i, j, k, l) = (x.row, x.col, y.row, y.col);
    let one = Rational::one();
    let (first, second) = if i == n && k == n {
        (eps.clone(), eps.clone())
    } else if i == n {
        (one.clone(), eps.clone())
    } else if j == n {
        (eps.clone(), one.clone())
    } else {
        (one.clone(), one)
    };
    let mut out = Vec::with_capacity(2);
    if delta(j, k) {
        out.push((Basis::new(i, l), first));
    }
    if delta(l, i) {
        out.push((Basis::new(k, j), -second));
    }
    out
}

fn bilinear<F>(x: &LieElement, y: &LieElement, mut unit: F) -> Result<LieElement, LieError>
where
    F: FnMut(Basis, Basis) -> Vec<(Basis, Rational)>,
{
    x.check_same(y)?;
    let mut out = LieElement::zero(x.n);
    for (bx, cx) in x.terms() {
        for (by, cy) in y.terms() {
            let c = cx * cy;
            for (b, s) in unit(bx, by) {
                out.add_term(b, &c * s);
            }
        }
    }
    Ok(out)
}

/// The matrix commutator in gl_n.
pub fn standard_bracket(x: &LieElement, y: &LieElement) -> Result<LieElement, LieError> {
    bilinear(x, y, |a, b| {
        unit_bracket(a, b)
            .into_iter()
            .map(|(u, s)| (u, Rational::from_integer(s.into())))
            .collect()
    })
}

/// `t_ε`, or `t_ε^{-1}` when `inverse` is set.
pub fn contraction_map(eps: &Epsilon, x: &LieElement, inverse: bool) -> Result<LieElement, LieError> {
    if eps.is_zero() {
        return Err(LieError::ZeroEpsilon);
    }
    let factor = if inverse {
        Rational::one() / eps.value()
    } else {
        eps.value().clone()
    };
    let n = x.n;
    let mut out = LieElement::zero(n);
    for (b, c) in x.terms() {
        let c = if b.row == n { c * &factor } else { c.clone() };
        out.add_term(b, c);
    }
    Ok(out)
}

/// `[X, Y]_ε` from the closed-form table; valid for every ε including 0.
pub fn contracted_bracket(eps: &Epsilon, x: &LieElement, y: &LieElement) -> Result<LieElement, LieError> {
    let n = x.n;
    bilinear(x, y, |a, b| unit_bracket_table(n, eps.value(), a, b))
}

/// `t_ε^{-1} [t_ε X, t_ε Y]`, the defining formula of the deformed bracket.
pub fn deformed_bracket(eps: &Epsilon, x: &LieElement, y: &LieElement) -> Result<LieElement, LieError> {
    let tx = contraction_map(eps, x, false)?;
    let ty = contraction_map(eps, y, false)?;
    contraction_map(eps, &standard_bracket(&tx, &ty)?, true)
}

/// Full table of `[e_a, e_b]_ε` over all ordered unit pairs, row-major.
pub fn bracket_table(n: usize, eps: &Epsilon) -> Result<Vec<(Basis, Basis, LieElement)>, LieError> {
    ContractionSplit::new(n)?;
    let mut out = Vec::with_capacity(n.pow(4));
    for a in Basis::all(n) {
        for b in Basis::all(n) {
            let ea = LieElement::basis(n, a)?;
            let eb = LieElement::basis(n, b)?;
            out.push((a, b, contracted_bracket(eps, &ea, &eb)?));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityFailure {
    Antisymmetry { a: Basis, b: Basis, sum: LieElement },
    Jacobi { a: Basis, b: Basis, c: Basis, sum: LieElement },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiReport {
    pub n: usize,
    pub epsilon: Epsilon,
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub first_failure: Option<IdentityFailure>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Exhaustive exact check of antisymmetry and Jacobi for `[,]_ε` on all unit pairs and triples.
pub fn jacobi_check(n: usize, eps: &Epsilon) -> Result<JacobiReport, LieError> {
    let units: Vec<Basis> = Basis::all(n).collect();
    let dim = units.len();
    let table = bracket_table(n, eps)?;
    let idx = |b: Basis| (b.row - 1) * n + (b.col - 1);
    let unit_br = |a: Basis, b: Basis| &table[idx(a) * dim + idx(b)].2;
    // bracket of a unit with an arbitrary element, by linearity on the cached table
    let br_with = |a: Basis, y: &LieElement| {
        let mut out = LieElement::zero(n);
        for (b, c) in y.terms() {
            for (u, d) in unit_br(a, b).terms() {
                out.add_term(u, c * d);
            }
        }
        out
    };

    let mut report = JacobiReport {
        n,
        epsilon: eps.clone(),
        pairs_checked: 0,
        triples_checked: 0,
        first_failure: None,
    };
    for &a in &units {
        for &b in &units {
            report.pairs_checked += 1;
            let sum = unit_br(a, b).try_add(unit_br(b, a))?;
            if !sum.is_zero() {
                report.first_failure = Some(IdentityFailure::Antisymmetry { a, b, sum });
                return Ok(report);
            }
        }
    }
    for &a in &units {
        for &b in &units {
            for &c in &units {
                report.triples_checked += 1;
                let sum = br_with(a, unit_br(b, c))
                    .try_add(&br_with(b, unit_br(c, a)))?
                    .try_add(&br_with(c, unit_br(a, b)))?;
                if !sum.is_zero() {
                    report.first_failure = Some(IdentityFailure::Jacobi { a, b, c, sum });
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}
