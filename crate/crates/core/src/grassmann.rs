//! Truncated Grassmann algebra and graded operator matrices.
//!
//! Generators `E^α` are labelled by integers and anticommute. Products of
//! total degree above two are dropped, which is an algebra quotient, so
//! every degree-≤2 result is exact.
//!
//! A [`GradedOperator`] is an element of `Gr(V*) ⊗ End(H ⊗ ℂ²)`, where `ℂ²`
//! carries the form degree with grading `z = diag(1, −1)`. Matrices are laid
//! out as `index = form · modes + mode`, so a z-even matrix is block diagonal
//! and a z-odd matrix is block off-diagonal. Products follow the Koszul rule
//!
//! ```text
//! (ω ⊗ A)(η ⊗ B) = (−1)^{p(A)·p(η)} (ωη) ⊗ (AB)
//! ```
//!
//! with `p(A)` the z-parity of `A` and `p(η)` the Grassmann parity of `η`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub type Generator = i32;

/// A Grassmann monomial of degree at most two, in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Monomial {
    Unit,
    Single(Generator),
    /// `E^a E^b` with `a < b`.
    Pair(Generator, Generator),
}

impl Monomial {
    /// `E^a E^b` as `(sign, canonical monomial)`, `None` when `a == b`.
    pub fn ordered_pair(a: Generator, b: Generator) -> Option<(f64, Monomial)> {
        use std::cmp::Ordering::*;
        match a.cmp(&b) {
            Less => Some((1.0, Monomial::Pair(a, b))),
            Greater => Some((-1.0, Monomial::Pair(b, a))),
            Equal => None,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Monomial::Unit => 0,
            Monomial::Single(_) => 1,
            Monomial::Pair(..) => 2,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree() % 2 == 1
    }

    /// Product in the truncated algebra: `None` when it vanishes.
    pub fn mul(self, rhs: Monomial) -> Option<(f64, Monomial)> {
        match (self, rhs) {
            (Monomial::Unit, m) | (m, Monomial::Unit) => Some((1.0, m)),
            (Monomial::Single(a), Monomial::Single(b)) => Monomial::ordered_pair(a, b),
            _ => None,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monomial::Unit => write!(f, "1"),
            Monomial::Single(a) => write!(f, "E^{a}"),
            Monomial::Pair(a, b) => write!(f, "E^{a}E^{b}"),
        }
    }
}

/// Element of the Grassmann algebra truncated at degree two.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GrassmannPoly2 {
    terms: BTreeMap<Monomial, C64>,
}

impl GrassmannPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: C64) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::Unit, c);
        p
    }

    pub fn one() -> Self {
        Self::scalar(C64::new(1.0, 0.0))
    }

    pub fn generator(a: Generator) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::Single(a), C64::new(1.0, 0.0));
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: C64) {
        if c == C64::new(0.0, 0.0) {
            return;
        }
        let e = self.terms.entry(m).or_insert(C64::new(0.0, 0.0));
        *e += c;
        if *e == C64::new(0.0, 0.0) {
            self.terms.remove(&m);
        }
    }

    pub fn coeff(&self, m: Monomial) -> C64 {
        self.terms.get(&m).copied().unwrap_or_default()
    }

    pub fn deg0(&self) -> C64 {
        self.coeff(Monomial::Unit)
    }

    pub fn deg1(&self, a: Generator) -> C64 {
        self.coeff(Monomial::Single(a))
    }

    /// Coefficient of `E^a E^b` in that order; swapping the indices negates.
    pub fn deg2(&self, a: Generator, b: Generator) -> C64 {
        match Monomial::ordered_pair(a, b) {
            Some((s, m)) => self.coeff(m) * s,
            None => C64::new(0.0, 0.0),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, C64)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut out = Self::zero();
        for (m, v) in self.terms() {
            out.add_term(m, v * c);
        }
        out
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// Product in the truncated Grassmann algebra.
pub fn gr_mul(x: &GrassmannPoly2, y: &GrassmannPoly2) -> GrassmannPoly2 {
    let mut out = GrassmannPoly2::zero();
    for (mx, cx) in x.terms() {
        for (my, cy) in y.terms() {
            if let Some((s, m)) = mx.mul(my) {
                out.add_term(m, cx * cy * s);
            }
        }
    }
    out
}

impl Mul for &GrassmannPoly2 {
    type Output = GrassmannPoly2;
    fn mul(self, rhs: &GrassmannPoly2) -> GrassmannPoly2 {
        gr_mul(self, rhs)
    }
}

impl Add for &GrassmannPoly2 {
    type Output = GrassmannPoly2;
    fn add(self, rhs: &GrassmannPoly2) -> GrassmannPoly2 {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(m, c);
        }
        out
    }
}

impl Sub for &GrassmannPoly2 {
    type Output = GrassmannPoly2;
    fn sub(self, rhs: &GrassmannPoly2) -> GrassmannPoly2 {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(m, -c);
        }
        out
    }
}

impl Neg for &GrassmannPoly2 {
    type Output = GrassmannPoly2;
    fn neg(self) -> GrassmannPoly2 {
        self.scale(C64::new(-1.0, 0.0))
    }
}

/// Dimension record: `modes` Fourier modes times two form degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GradedDims {
    pub modes: usize,
}

impl GradedDims {
    pub fn new(modes: usize) -> Self {
        Self { modes }
    }

    /// Matrix size `2 · modes`.
    pub fn size(&self) -> usize {
        2 * self.modes
    }
}

/// A block stored as its z-even and z-odd parts.
#[derive(Clone, Debug, PartialEq)]
pub struct ParityBlock {
    pub even: Array2<C64>,
    pub odd: Array2<C64>,
}

impl ParityBlock {
    pub fn split(full: &Array2<C64>, modes: usize) -> Self {
        let n = full.nrows();
        let mut even = Array2::zeros((n, n));
        let mut odd = Array2::zeros((n, n));
        for ((i, j), v) in full.indexed_iter() {
            if (i < modes) == (j < modes) {
                even[[i, j]] = *v;
            } else {
                odd[[i, j]] = *v;
            }
        }
        Self { even, odd }
    }

    pub fn full(&self) -> Array2<C64> {
        &self.even + &self.odd
    }

    /// `z M z = M_even − M_odd`.
    pub fn twisted(&self) -> Array2<C64> {
        &self.even - &self.odd
    }
}

/// Element of `Gr(V*) ⊗ End(H ⊗ ℂ²)` truncated at Grassmann degree two.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedOperator {
    dims: GradedDims,
    blocks: BTreeMap<Monomial, ParityBlock>,
}

impl GradedOperator {
    pub fn zeros(dims: GradedDims) -> Self {
        Self {
            dims,
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(dims: GradedDims) -> Self {
        let mut op = Self::zeros(dims);
        op.blocks.insert(
            Monomial::Unit,
            ParityBlock::split(&Array2::eye(dims.size()), dims.modes),
        );
        op
    }

    /// `m ⊗ matrix`.
    pub fn from_block(dims: GradedDims, m: Monomial, matrix: Array2<C64>) -> Result<Self> {
        let mut op = Self::zeros(dims);
        op.add_block(m, &matrix)?;
        Ok(op)
    }

    /// Adds `m ⊗ matrix` in place.
    pub fn add_block(&mut self, m: Monomial, matrix: &Array2<C64>) -> Result<()> {
        let n = self.dims.size();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: matrix.nrows().max(matrix.ncols()),
            });
        }
        let modes = self.dims.modes;
        match self.blocks.get_mut(&m) {
            Some(b) => {
                let sum = b.full() + matrix;
                *b = ParityBlock::split(&sum, modes);
            }
            None => {
                self.blocks.insert(m, ParityBlock::split(matrix, modes));
            }
        }
        Ok(())
    }

    pub fn dims(&self) -> GradedDims {
        self.dims
    }

    pub fn block(&self, m: Monomial) -> Option<&ParityBlock> {
        self.blocks.get(&m)
    }

    /// Full matrix of a block, zero if absent.
    pub fn full_block(&self, m: Monomial) -> Array2<C64> {
        self.blocks
            .get(&m)
            .map(ParityBlock::full)
            .unwrap_or_else(|| Array2::zeros((self.dims.size(), self.dims.size())))
    }

    pub fn blocks(&self) -> impl Iterator<Item = (Monomial, &ParityBlock)> {
        self.blocks.iter().map(|(m, b)| (*m, b))
    }

    pub fn scale(&self, c: C64) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|(m, b)| {
                (
                    *m,
                    ParityBlock {
                        even: b.even.mapv(|v| v * c),
                        odd: b.odd.mapv(|v| v * c),
                    },
                )
            })
            .collect();
        Self {
            dims: self.dims,
            blocks,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (m, b) in &other.blocks {
            out.add_block(*m, &b.full())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    /// Maximum over blocks of the ∞-norm (max absolute row sum).
    pub fn max_block_norm(&self) -> f64 {
        self.blocks
            .values()
            .map(|b| inf_norm(&b.full()))
            .fold(0.0, f64::max)
    }

    /// Sum over blocks of the ∞-norm.
    pub fn total_norm(&self) -> f64 {
        self.blocks.values().map(|b| inf_norm(&b.full())).sum()
    }

    /// Grassmann-degree part of the element.
    pub fn degree_part(&self, degree: usize) -> Self {
        Self {
            dims: self.dims,
            blocks: self
                .blocks
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, b)| (*m, b.clone()))
                .collect(),
        }
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch {
                left: self.dims.size(),
                right: other.dims.size(),
            });
        }
        Ok(())
    }
}

fn inf_norm(m: &Array2<C64>) -> f64 {
    m.rows()
        .into_iter()
        .map(|r| r.iter().map(|v| v.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Dense product that skips zero entries of the left factor; the operators
/// built here are banded, so this is close to sparse cost.
pub fn matmul(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    let (n, k) = a.dim();
    let m = b.ncols();
    assert_eq!(k, b.nrows(), "matmul: inner dimensions differ");
    let mut c = Array2::<C64>::zeros((n, m));
    let zero = C64::new(0.0, 0.0);
    for i in 0..n {
        for l in 0..k {
            let a_il = a[[i, l]];
            if a_il == zero {
                continue;
            }
            let brow = b.row(l);
            let mut crow = c.row_mut(i);
            crow.zip_mut_with(&brow, |cv, bv| *cv += a_il * bv);
        }
    }
    c
}

/// Koszul-signed product of two graded operators.
pub fn graded_mul(x: &GradedOperator, y: &GradedOperator) -> Result<GradedOperator> {
    x.check_dims(y)?;
    let mut acc: BTreeMap<Monomial, Array2<C64>> = BTreeMap::new();
    for (mx, bx) in &x.blocks {
        let plain = bx.full();
        let twisted = bx.twisted();
        for (my, by) in &y.blocks {
            let Some((sign, m)) = mx.mul(*my) else {
                continue;
            };
            let left = if my.is_odd() { &twisted } else { &plain };
            let mut prod = matmul(left, &by.full());
            if sign < 0.0 {
                prod.mapv_inplace(|v| -v);
            }
            match acc.get_mut(&m) {
                Some(s) => *s += &prod,
                None => {
                    acc.insert(m, prod);
                }
            }
        }
    }
    let mut out = GradedOperator::zeros(x.dims);
    for (m, full) in acc {
        out.blocks
            .insert(m, ParityBlock::split(&full, x.dims.modes));
    }
    Ok(out)
}

impl Mul for &GradedOperator {
    type Output = GradedOperator;
    /// Panics on dimension mismatch; use [`graded_mul`] for a `Result`.
    fn mul(self, rhs: &GradedOperator) -> GradedOperator {
        graded_mul(self, rhs).expect("graded operator dimensions differ")
    }
}

/// Evaluation scheme for [`graded_exp`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpMethod {
    /// Spectral when the degree-0 block is diagonal, otherwise scaling and squaring.
    Auto,
    /// Divided differences of `exp` over the diagonal degree-0 block.
    Spectral,
    /// Taylor polynomial of `X / 2^s` in the truncated ring, squared `s` times.
    ScalingSquaring,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpControl {
    pub method: ExpMethod,
    pub taylor_order: usize,
    pub max_squarings: u32,
}

impl Default for ExpControl {
    fn default() -> Self {
        Self {
            method: ExpMethod::Auto,
            taylor_order: 30,
            max_squarings: 64,
        }
    }
}

impl ExpControl {
    pub fn with_method(method: ExpMethod) -> Self {
        Self {
            method,
            ..Self::default()
        }
    }
}

/// `e^X` in the truncated graded algebra.
pub fn graded_exp(x: &GradedOperator, control: ExpControl) -> Result<GradedOperator> {
    let diag = diagonal_degree0(x);
    match (control.method, diag) {
        (ExpMethod::Spectral, Some(d)) | (ExpMethod::Auto, Some(d)) => Ok(exp_spectral(x, &d)),
        (ExpMethod::Spectral, None) => Err(Error::InvalidArgument(
            "spectral exponential needs a diagonal degree-0 block".into(),
        )),
        (ExpMethod::ScalingSquaring, _) | (ExpMethod::Auto, None) => {
            exp_scaling_squaring(x, control)
        }
    }
}

fn diagonal_degree0(x: &GradedOperator) -> Option<Vec<C64>> {
    let n = x.dims.size();
    let zero = C64::new(0.0, 0.0);
    match x.blocks.get(&Monomial::Unit) {
        None => Some(vec![zero; n]),
        Some(b) => {
            if b.odd.iter().any(|v| *v != zero) {
                return None;
            }
            for ((i, j), v) in b.even.indexed_iter() {
                if i != j && *v != zero {
                    return None;
                }
            }
            Some((0..n).map(|i| b.even[[i, i]]).collect())
        }
    }
}

type SparseRows = Vec<Vec<(usize, C64)>>;

fn sparse_rows(m: &Array2<C64>) -> SparseRows {
    let zero = C64::new(0.0, 0.0);
    m.rows()
        .into_iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, v)| **v != zero)
                .map(|(j, v)| (j, *v))
                .collect()
        })
        .collect()
}

fn exp_spectral(x: &GradedOperator, lambda: &[C64]) -> GradedOperator {
    let dims = x.dims;
    let n = dims.size();
    let mut out = GradedOperator::zeros(dims);
    let d0 = Array2::from_shape_fn((n, n), |(i, j)| {
        if i == j {
            lambda[i].exp()
        } else {
            C64::new(0.0, 0.0)
        }
    });
    out.blocks
        .insert(Monomial::Unit, ParityBlock::split(&d0, dims.modes));

    let hadamard_phi1 = |m: &Array2<C64>| -> Array2<C64> {
        let mut r = Array2::<C64>::zeros((n, n));
        for (i, row) in sparse_rows(m).into_iter().enumerate() {
            for (j, v) in row {
                r[[i, j]] = v * divided::phi1(lambda[i], lambda[j]);
            }
        }
        r
    };

    let singles: Vec<(Generator, &ParityBlock)> = x
        .blocks
        .iter()
        .filter_map(|(m, b)| match m {
            Monomial::Single(g) => Some((*g, b)),
            _ => None,
        })
        .collect();

    for (g, b) in &singles {
        out.blocks.insert(
            Monomial::Single(*g),
            ParityBlock::split(&hadamard_phi1(&b.full()), dims.modes),
        );
    }

    let mut deg2: BTreeMap<Monomial, Array2<C64>> = BTreeMap::new();
    for (m, b) in &x.blocks {
        if let Monomial::Pair(..) = m {
            deg2.insert(*m, hadamard_phi1(&b.full()));
        }
    }

    // second-order Duhamel term: ∫_{Δ²} e^{σ₀Λ} X_g e^{σ₁Λ} X_h e^{σ₂Λ}
    let twisted_rows: Vec<SparseRows> = singles
        .iter()
        .map(|(_, b)| sparse_rows(&b.twisted()))
        .collect();
    let plain_rows: Vec<SparseRows> = singles
        .iter()
        .map(|(_, b)| sparse_rows(&b.full()))
        .collect();
    for (p, (g, _)) in singles.iter().enumerate() {
        for (q, (h, _)) in singles.iter().enumerate() {
            let Some((sign, m)) = Monomial::Single(*g).mul(Monomial::Single(*h)) else {
                continue;
            };
            let acc = deg2.entry(m).or_insert_with(|| Array2::zeros((n, n)));
            for i in 0..n {
                for &(k, a_ik) in &twisted_rows[p][i] {
                    for &(j, b_kj) in &plain_rows[q][k] {
                        acc[[i, j]] +=
                            a_ik * b_kj * divided::phi2(lambda[i], lambda[k], lambda[j]) * sign;
                    }
                }
            }
        }
    }
    for (m, full) in deg2 {
        out.blocks.insert(m, ParityBlock::split(&full, dims.modes));
    }
    out
}

fn exp_scaling_squaring(x: &GradedOperator, control: ExpControl) -> Result<GradedOperator> {
    let norm = x.total_norm();
    let mut s: u32 = 0;
    while norm / 2f64.powi(s as i32) > 0.5 {
        s += 1;
        if s > control.max_squarings {
            return Err(Error::ExpNonConvergence(format!(
                "norm {norm:e} needs more than {} squarings",
                control.max_squarings
            )));
        }
    }
    let y = x.scale(C64::new(2f64.powi(-(s as i32)), 0.0));
    let id = GradedOperator::identity(x.dims);
    // Horner: I + Y(I + Y/2(I + Y/3(…)))
    let mut acc = id.clone();
    for k in (1..=control.taylor_order).rev() {
        let term = graded_mul(&y, &acc)?.scale(C64::new(1.0 / k as f64, 0.0));
        acc = id.add(&term)?;
    }
    for _ in 0..s {
        acc = graded_mul(&acc, &acc)?;
    }
    Ok(acc)
}

/// `Tr_s(N · X)` per Grassmann monomial, with `N = diag(0, 1)` the form degree:
/// minus the trace of the Ω¹–Ω¹ sub-block.
pub fn supertrace_n(x: &GradedOperator) -> GrassmannPoly2 {
    let modes = x.dims.modes;
    let mut out = GrassmannPoly2::zero();
    for (m, b) in &x.blocks {
        let tr: C64 = (modes..2 * modes).map(|i| b.even[[i, i]]).sum();
        out.add_term(*m, -tr);
    }
    out
}

/// Plain supertrace `Tr|_{Ω⁰} − Tr|_{Ω¹}` per Grassmann monomial.
pub fn supertrace(x: &GradedOperator) -> GrassmannPoly2 {
    let modes = x.dims.modes;
    let mut out = GrassmannPoly2::zero();
    for (m, b) in &x.blocks {
        let t0: C64 = (0..modes).map(|i| b.even[[i, i]]).sum();
        let t1: C64 = (modes..2 * modes).map(|i| b.even[[i, i]]).sum();
        out.add_term(*m, t0 - t1);
    }
    out
}

/// Divided differences of `exp`, stable for clustered and widely spread points.
pub(crate) mod divided {
    use num_complex::Complex64 as C64;

    /// `e^z − 1` without cancellation for small `|z|`.
    fn expm1(z: C64) -> C64 {
        let s = (0.5 * z.im).sin();
        C64::new(
            z.re.exp_m1() * z.im.cos() - 2.0 * s * s,
            z.re.exp() * z.im.sin(),
        )
    }

    /// `(e^d − 1)/d`, continuous at zero.
    fn rel1(d: C64) -> C64 {
        if d == C64::new(0.0, 0.0) {
            C64::new(1.0, 0.0)
        } else {
            expm1(d) / d
        }
    }

    /// `exp[x, y] = ∫₀¹ e^{(1−s)x + sy} ds`.
    pub fn phi1(x: C64, y: C64) -> C64 {
        let (hi, lo) = if x.re >= y.re { (x, y) } else { (y, x) };
        hi.exp() * rel1(lo - hi)
    }

    /// `exp[x, y, z] = ∫_{Δ²} e^{σ₀x + σ₁y + σ₂z} dσ`.
    pub fn phi2(x: C64, y: C64, z: C64) -> C64 {
        let mut pts = [x, y, z];
        pts.sort_by(|a, b| b.re.total_cmp(&a.re));
        let p = pts[0];
        let u = pts[1] - p;
        let v = pts[2] - p;
        let (du, dv, duv) = (u.norm(), v.norm(), (u - v).norm());
        let spread = du.max(dv).max(duv);
        let zero = C64::new(0.0, 0.0);
        let shifted = if spread < 1.0 {
            taylor2(u, v)
        } else if duv >= du && duv >= dv {
            (phi1(u, zero) - phi1(zero, v)) / (u - v)
        } else if du >= dv {
            (phi1(zero, v) - phi1(v, u)) / (zero - u)
        } else {
            (phi1(zero, u) - phi1(u, v)) / (zero - v)
        };
        p.exp() * shifted
    }

    /// `exp[0, u, v] = Σ_n h_n(u, v)/(n+2)!` for small arguments.
    fn taylor2(u: C64, v: C64) -> C64 {
        let mut h = C64::new(1.0, 0.0);
        let mut u_pow = C64::new(1.0, 0.0);
        let mut fact = 2.0;
        let mut sum = h / fact;
        for n in 1..40 {
            u_pow *= u;
            h = h * v + u_pow;
            fact *= (n + 2) as f64;
            let term = h / fact;
            sum += term;
            if term.norm() < 1e-18 * sum.norm() {
                break;
            }
        }
        sum
    }

}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn generator_products() {
        let e1 = GrassmannPoly2::generator(1);
        let em1 = GrassmannPoly2::generator(-1);
        let p = gr_mul(&e1, &em1);
        assert_eq!(p.deg2(1, -1), c(1.0));
        assert_eq!(p.deg2(-1, 1), c(-1.0));
        assert_eq!(gr_mul(&e1, &e1), GrassmannPoly2::zero());
        let q = gr_mul(&em1, &e1);
        assert_eq!(q.deg2(1, -1), c(-1.0));
    }

    #[test]
    fn degree_three_truncates() {
        let e = |a| GrassmannPoly2::generator(a);
        let p = gr_mul(&gr_mul(&e(1), &e(2)), &e(3));
        assert_eq!(p, GrassmannPoly2::zero());
    }

    fn dims1() -> GradedDims {
        GradedDims::new(1)
    }

    fn c_hat() -> Array2<C64> {
        array![[c(0.0), c(1.0)], [c(1.0), c(0.0)]]
    }

    fn z_op() -> Array2<C64> {
        array![[c(1.0), c(0.0)], [c(0.0), c(-1.0)]]
    }

    #[test]
    fn koszul_sign_for_odd_matrix() {
        let ch = GradedOperator::from_block(dims1(), Monomial::Unit, c_hat()).unwrap();
        let e1 = GradedOperator::from_block(dims1(), Monomial::Single(1), Array2::eye(2)).unwrap();
        let prod = graded_mul(&ch, &e1).unwrap();
        assert_eq!(prod.full_block(Monomial::Single(1)), c_hat().mapv(|v| -v));
        let z = GradedOperator::from_block(dims1(), Monomial::Unit, z_op()).unwrap();
        let prod = graded_mul(&z, &e1).unwrap();
        assert_eq!(prod.full_block(Monomial::Single(1)), z_op());
    }

    #[test]
    fn mixed_parity_block_is_split() {
        let m = array![[c(1.0), c(2.0)], [c(3.0), c(4.0)]];
        let b = ParityBlock::split(&m, 1);
        assert_eq!(b.even, array![[c(1.0), c(0.0)], [c(0.0), c(4.0)]]);
        assert_eq!(b.odd, array![[c(0.0), c(2.0)], [c(3.0), c(0.0)]]);
        assert_eq!(b.full(), m);
        let zmz = matmul(&matmul(&z_op(), &m), &z_op());
        assert_eq!(b.twisted(), zmz);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = GradedOperator::identity(GradedDims::new(1));
        let b = GradedOperator::identity(GradedDims::new(2));
        assert!(matches!(
            graded_mul(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
        let mut x = GradedOperator::zeros(GradedDims::new(1));
        assert!(x.add_block(Monomial::Unit, &Array2::eye(3)).is_err());
    }

    #[test]
    fn exp_of_diagonal_degree0() {
        let dims = GradedDims::new(2);
        let lam = [-1.0, -2.0, 0.5, -0.25];
        let d = Array2::from_shape_fn((4, 4), |(i, j)| if i == j { c(lam[i]) } else { c(0.0) });
        let x = GradedOperator::from_block(dims, Monomial::Unit, d).unwrap();
        for method in [ExpMethod::Spectral, ExpMethod::ScalingSquaring] {
            let e = graded_exp(&x, ExpControl::with_method(method)).unwrap();
            let b = e.full_block(Monomial::Unit);
            for i in 0..4 {
                for j in 0..4 {
                    let want = if i == j { lam[i].exp() } else { 0.0 };
                    assert!((b[[i, j]] - c(want)).norm() < 1e-13);
                }
            }
            assert!(e.blocks().all(|(m, _)| m == Monomial::Unit));
        }
    }

    #[test]
    fn exp_of_nilpotent_degree1_terminates() {
        let dims = GradedDims::new(1);
        let a = array![[c(0.3), c(-1.0)], [c(2.0), c(0.1)]];
        let b = array![[c(0.0), c(0.5)], [c(-0.7), c(1.2)]];
        let mut x = GradedOperator::zeros(dims);
        x.add_block(Monomial::Single(1), &a).unwrap();
        x.add_block(Monomial::Single(-2), &b).unwrap();
        let x2 = graded_mul(&x, &x).unwrap();
        let want = GradedOperator::identity(dims)
            .add(&x)
            .unwrap()
            .add(&x2.scale(c(0.5)))
            .unwrap();
        for method in [ExpMethod::Spectral, ExpMethod::ScalingSquaring] {
            let e = graded_exp(&x, ExpControl::with_method(method)).unwrap();
            let diff = e.sub(&want).unwrap();
            assert!(diff.max_block_norm() < 1e-13, "{method:?}");
        }
    }

    #[test]
    fn spectral_rejects_non_diagonal() {
        let x = GradedOperator::from_block(dims1(), Monomial::Unit, c_hat()).unwrap();
        assert!(graded_exp(&x, ExpControl::with_method(ExpMethod::Spectral)).is_err());
        // auto falls back: e^{ĉ} = cosh 1 + ĉ sinh 1
        let e = graded_exp(&x, ExpControl::default()).unwrap();
        let b = e.full_block(Monomial::Unit);
        assert!((b[[0, 0]].re - 1f64.cosh()).abs() < 1e-14);
        assert!((b[[0, 1]].re - 1f64.sinh()).abs() < 1e-14);
    }

    #[test]
    fn squaring_budget_exhaustion() {
        let d = Array2::from_shape_fn((2, 2), |(i, j)| if i == j { c(-1e30) } else { c(0.0) });
        let x = GradedOperator::from_block(dims1(), Monomial::Unit, d).unwrap();
        let ctl = ExpControl {
            method: ExpMethod::ScalingSquaring,
            taylor_order: 10,
            max_squarings: 8,
        };
        assert!(matches!(
            graded_exp(&x, ctl),
            Err(Error::ExpNonConvergence(_))
        ));
    }

    #[test]
    fn supertraces_of_basic_operators() {
        let dims = GradedDims::new(3);
        let id = GradedOperator::identity(dims);
        assert_eq!(supertrace_n(&id).deg0(), c(-3.0));
        assert_eq!(supertrace(&id).deg0(), c(0.0));
        let z = Array2::from_shape_fn((6, 6), |(i, j)| {
            if i != j {
                c(0.0)
            } else if i < 3 {
                c(1.0)
            } else {
                c(-1.0)
            }
        });
        let zop = GradedOperator::from_block(dims, Monomial::Unit, z).unwrap();
        assert_eq!(supertrace_n(&zop).deg0(), c(3.0));
    }
}
