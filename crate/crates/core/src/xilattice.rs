//! The isosimple isocrystal of slope `s/r` in ξ-coordinates, its valuation,
//! the operators φ, ϑ, p, ξ, and lattices over `W(F_{p^m})`.
//!
//! An element is `ξ^t · Σ_{i<r} ξ^i ⊗ b_i`. The shift `t` is the element's
//! frame: the coordinates `b_i` are coordinates in the basis
//! `ξ^{t+i} ⊗ 1` of `Λ_t = {w ≥ t/r}`, and the element is known modulo
//! `Λ_{t+rN}`. Operators move the frame and never lose digits.
//!
//! A lattice is stored in a fixed frame `F` (the smallest generator shift) as
//! an `r × r` column-echelon matrix over `Z/p^N`. With `D` the sum of pivot
//! valuations, the lattice contains `p^D Λ_F`; reduction is exact iff `D < N`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use thiserror::Error;

use crate::bounds::{q_bound, IsosimpleProfile};
use crate::witt::{PAdicOrder, WittElement, WittError, WittRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum XiError {
    #[error("invalid xi-module spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Witt(#[from] WittError),
    #[error("elements or lattices belong to different xi-module specs")]
    SpecMismatch,
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("generators span a sublattice of rank {rank} < {r}")]
    RankDeficient { rank: usize, r: usize },
    #[error("lattice is not {operator}-stable")]
    NotStable { operator: &'static str },
    #[error("no m_alpha found up to the search bound {bound}")]
    SearchBoundExceeded { bound: u64 },
    #[error("containment violated: {0}")]
    Containment(String),
}

/// `K_{s/r} ⊗ B(F_{p^m})` with Verschiebung exponent `e`.
#[derive(Debug)]
pub struct XiModuleSpec {
    ring: Arc<WittRing>,
    r: usize,
    s: u64,
    e: u64,
    twist_m: i64,
    twist_n: u64,
}

impl PartialEq for XiModuleSpec {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.r == other.r && self.s == other.s && self.e == other.e
    }
}

impl Eq for XiModuleSpec {}

impl XiModuleSpec {
    pub fn new(ring: Arc<WittRing>, r: usize, s: u64, e: u64) -> Result<Arc<Self>, XiError> {
        if r == 0 {
            return Err(XiError::InvalidSpec("r must be positive".into()));
        }
        if e == 0 {
            return Err(XiError::InvalidSpec("e must be positive".into()));
        }
        if !ring.degree().is_multiple_of(r) {
            return Err(XiError::InvalidSpec(format!("r = {r} does not divide m = {}", ring.degree())));
        }
        if s.gcd(&(r as u64)) != 1 {
            return Err(XiError::InvalidSpec(format!("gcd(s, r) = {} is not 1", s.gcd(&(r as u64)))));
        }
        if (r as u64).checked_mul(e).is_none_or(|re| re < s) {
            return Err(XiError::InvalidSpec(format!("r e = {} is below s = {s}", r as u64 * e)));
        }
        let (twist_m, twist_n) = twist_pair(r as u64, s);
        Ok(Arc::new(XiModuleSpec { ring, r, s, e, twist_m, twist_n }))
    }

    pub fn ring(&self) -> &Arc<WittRing> {
        &self.ring
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    /// `(m, n)` with `m r − n s = 1` and `n ≥ 0` minimal.
    pub fn twist(&self) -> (i64, u64) {
        (self.twist_m, self.twist_n)
    }

    pub fn slope(&self) -> BigRational {
        BigRational::new(BigInt::from(self.s), BigInt::from(self.r as u64))
    }

    fn ri(&self) -> i64 {
        self.r as i64
    }

    fn n(&self) -> i64 {
        self.ring.precision() as i64
    }

    fn theta_shift(&self) -> i64 {
        (self.r as u64 * self.e - self.s) as i64
    }
}

/// `(m, n)` with `m r − n s = 1`, `n` the least non-negative solution.
pub fn twist_pair(r: u64, s: u64) -> (i64, u64) {
    if r == 1 {
        return (1, 0);
    }
    let (r_i, s_i) = (r as i128, s as i128);
    // n ≡ −s^{-1} (mod r)
    let ext = s_i.extended_gcd(&r_i);
    let n = (-ext.x).rem_euclid(r_i);
    let m = (1 + n * s_i) / r_i;
    debug_assert_eq!(m * r_i - n * s_i, 1);
    (m as i64, n as u64)
}

/// Valuation `n / r`, exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FValuation {
    Finite { num: i64, den: u64 },
    /// All coefficients vanish at the working precision.
    InfinityAtPrecision,
}

impl FValuation {
    pub fn numerator(self) -> Option<i64> {
        match self {
            FValuation::Finite { num, .. } => Some(num),
            FValuation::InfinityAtPrecision => None,
        }
    }

    pub fn as_ratio(self) -> Option<BigRational> {
        match self {
            FValuation::Finite { num, den } => Some(BigRational::new(BigInt::from(num), BigInt::from(den))),
            FValuation::InfinityAtPrecision => None,
        }
    }
}

impl PartialOrd for FValuation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FValuation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (self, other) {
            (FValuation::Finite { num: a, den: da }, FValuation::Finite { num: b, den: db }) => {
                (*a as i128 * *db as i128).cmp(&(*b as i128 * *da as i128))
            }
            (FValuation::Finite { .. }, FValuation::InfinityAtPrecision) => Less,
            (FValuation::InfinityAtPrecision, FValuation::Finite { .. }) => Greater,
            (FValuation::InfinityAtPrecision, FValuation::InfinityAtPrecision) => Equal,
        }
    }
}

impl fmt::Display for FValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_ratio() {
            Some(q) => write!(f, "{q}"),
            None => f.write_str("infinity"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum XiOperator {
    Phi,
    Theta,
    P,
    Xi,
}

impl XiOperator {
    pub const ALL: [XiOperator; 4] = [XiOperator::Phi, XiOperator::Theta, XiOperator::P, XiOperator::Xi];
}

/// Coordinates of an element in a given frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrameCoords {
    /// The element has a coordinate of known valuation below the frame.
    NotIntegral,
    /// Coordinates meaningful mod `p^precision`; `precision ≤ 0` carries no information.
    Coords { coords: Vec<WittElement>, precision: i64 },
}

#[derive(Clone)]
pub struct XiElement {
    spec: Arc<XiModuleSpec>,
    shift: i64,
    coeffs: Vec<WittElement>,
}

impl fmt::Debug for XiElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<&[u64]> = self.coeffs.iter().map(|c| c.coords()).collect();
        write!(f, "xi^{} * {:?}", self.shift, cs)
    }
}

fn same_spec(a: &Arc<XiModuleSpec>, b: &Arc<XiModuleSpec>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl XiElement {
    pub fn new(spec: &Arc<XiModuleSpec>, shift: i64, coeffs: Vec<WittElement>) -> Result<Self, XiError> {
        if coeffs.len() != spec.r {
            return Err(XiError::InvalidElement(format!("{} coefficients for r = {}", coeffs.len(), spec.r)));
        }
        if coeffs.iter().any(|c| *c.ring() != spec.ring) {
            return Err(XiError::SpecMismatch);
        }
        Ok(XiElement { spec: Arc::clone(spec), shift, coeffs })
    }

    /// `ξ^j ⊗ 1`.
    pub fn xi_power(spec: &Arc<XiModuleSpec>, j: i64) -> Self {
        let mut coeffs = vec![spec.ring.zero(); spec.r];
        coeffs[0] = spec.ring.one();
        XiElement { spec: Arc::clone(spec), shift: j, coeffs }
    }

    pub fn zero(spec: &Arc<XiModuleSpec>) -> Self {
        XiElement { spec: Arc::clone(spec), shift: 0, coeffs: vec![spec.ring.zero(); spec.r] }
    }

    pub fn spec(&self) -> &Arc<XiModuleSpec> {
        &self.spec
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn coeffs(&self) -> &[WittElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(WittElement::is_zero)
    }

    /// `min_i (t + i + r·ord_p(b_i)) / r`.
    pub fn valuation(&self) -> FValuation {
        let r = self.spec.ri();
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, b)| b.ord_p().finite().map(|o| self.shift + i as i64 + r * o as i64))
            .min()
            .map_or(FValuation::InfinityAtPrecision, |num| FValuation::Finite { num, den: self.spec.r as u64 })
    }

    pub fn apply(&self, op: XiOperator) -> XiElement {
        let spec = &self.spec;
        let (dt, power) = match op {
            XiOperator::Phi => (spec.s as i64, 1),
            XiOperator::Theta => (spec.theta_shift(), -1),
            XiOperator::P => (spec.ri(), 0),
            XiOperator::Xi => (1, 0),
        };
        let coeffs = if power == 0 { self.coeffs.clone() } else { self.coeffs.iter().map(|b| b.sigma(power)).collect() };
        XiElement { spec: Arc::clone(spec), shift: self.shift + dt, coeffs }
    }

    pub fn apply_word(&self, ops: &[XiOperator]) -> XiElement {
        ops.iter().fold(self.clone(), |x, &op| x.apply(op))
    }

    /// Coefficientwise scalar multiplication.
    pub fn scale(&self, a: &WittElement) -> XiElement {
        XiElement { spec: Arc::clone(&self.spec), shift: self.shift, coeffs: self.coeffs.iter().map(|b| a * b).collect() }
    }

    /// The same element in frame `f ≤ shift`.
    ///
    /// # Panics
    /// If `f > shift`.
    pub fn reframe_down(&self, f: i64) -> XiElement {
        assert!(f <= self.shift, "downward reframe only");
        match self.frame_coords(f) {
            FrameCoords::Coords { coords, .. } => XiElement { spec: Arc::clone(&self.spec), shift: f, coeffs: coords },
            FrameCoords::NotIntegral => unreachable!("lower frames contain the element"),
        }
    }

    /// Coordinates in the basis `ξ^{f+i} ⊗ 1` of `Λ_f`.
    pub fn frame_coords(&self, f: i64) -> FrameCoords {
        let ring = &self.spec.ring;
        let (r, n) = (self.spec.ri(), self.spec.n());
        let precision = if f <= self.shift { n } else { (self.shift + r * n - f).div_euclid(r) };
        let mut out = vec![ring.zero(); self.spec.r];
        for (i, b) in self.coeffs.iter().enumerate() {
            let j = self.shift + i as i64 - f;
            let (q, idx) = (j.div_euclid(r), j.rem_euclid(r) as usize);
            let term = if q >= 0 {
                b.mul_p_pow(q.min(n) as u32)
            } else {
                match b.div_p_pow((-q).min(n) as u32) {
                    Some(t) => t,
                    None => return FrameCoords::NotIntegral,
                }
            };
            out[idx] = &out[idx] + &term;
        }
        if precision < n {
            let keep = precision.max(0) as u32;
            out = out.iter().map(|c| c.truncate(keep)).collect();
        }
        FrameCoords::Coords { coords: out, precision }
    }

    pub fn try_add(&self, other: &XiElement) -> Result<XiElement, XiError> {
        if !same_spec(&self.spec, &other.spec) {
            return Err(XiError::SpecMismatch);
        }
        let f = self.shift.min(other.shift);
        let (a, b) = (self.reframe_down(f), other.reframe_down(f));
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Ok(XiElement { spec: Arc::clone(&self.spec), shift: f, coeffs })
    }
}

impl PartialEq for XiElement {
    /// Compared in the lower of the two frames.
    fn eq(&self, other: &Self) -> bool {
        if !same_spec(&self.spec, &other.spec) {
            return false;
        }
        let f = self.shift.min(other.shift);
        self.reframe_down(f).coeffs == other.reframe_down(f).coeffs
    }
}

pub fn valuation(x: &XiElement) -> FValuation {
    x.valuation()
}

pub fn apply(x: &XiElement, op: XiOperator) -> XiElement {
    x.apply(op)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pivot {
    row: usize,
    d: u32,
}

struct Echelon {
    pivots: Vec<Pivot>,
    /// Pivot columns in pivot order.
    columns: Vec<Vec<WittElement>>,
}

/// Greedy column echelon over `Z/p^prec`: each step takes the first entry of
/// least valuation among the remaining rows and columns, scales its column so
/// the entry is exactly `p^d`, and clears that row in the other columns.
/// The pivot valuations are the elementary divisors of the column span.
fn echelon(mut cols: Vec<Vec<WittElement>>, rows: usize, prec: u32) -> Echelon {
    for c in cols.iter_mut() {
        for x in c.iter_mut() {
            *x = x.truncate(prec);
        }
    }
    let mut free_rows: Vec<usize> = (0..rows).collect();
    let mut pivots = Vec::new();
    let mut columns = Vec::new();
    while !free_rows.is_empty() && !cols.is_empty() {
        let mut best: Option<(u32, usize, usize)> = None;
        for (ci, col) in cols.iter().enumerate() {
            for &row in &free_rows {
                if let PAdicOrder::Finite(d) = col[row].ord_p() {
                    if d < prec && best.is_none_or(|(bd, _, _)| d < bd) {
                        best = Some((d, ci, row));
                    }
                }
            }
        }
        let Some((d, ci, row)) = best else { break };
        let mut pivot_col = cols.swap_remove(ci);
        let unit = pivot_col[row].div_p_pow(d).expect("pivot divisible by p^d");
        let inv = unit.inverse().expect("pivot unit part is a unit");
        for x in pivot_col.iter_mut() {
            *x = (&*x * &inv).truncate(prec);
        }
        for col in cols.iter_mut() {
            if col[row].is_zero() {
                continue;
            }
            let c = col[row].div_p_pow(d).expect("pivot has least valuation");
            for (x, y) in col.iter_mut().zip(&pivot_col) {
                *x = (&*x - &(&c * y)).truncate(prec);
            }
            debug_assert!(col[row].is_zero());
        }
        free_rows.retain(|&r| r != row);
        pivots.push(Pivot { row, d });
        columns.push(pivot_col);
    }
    Echelon { pivots, columns }
}

/// Forward substitution of `v` (meaningful mod `p^prec`) against an echelon
/// basis; `None` when `v` is not in the span.
fn substitute(pivots: &[Pivot], columns: &[Vec<WittElement>], mut v: Vec<WittElement>, prec: u32) -> Option<Vec<WittElement>> {
    for x in v.iter_mut() {
        *x = x.truncate(prec);
    }
    let mut sol = Vec::with_capacity(pivots.len());
    for (pv, col) in pivots.iter().zip(columns) {
        let a = v[pv.row].div_p_pow(pv.d)?;
        for (x, y) in v.iter_mut().zip(col) {
            *x = (&*x - &(&a * y)).truncate(prec);
        }
        sol.push(a);
    }
    debug_assert!(v.iter().all(WittElement::is_zero));
    Some(sol)
}

#[derive(Clone)]
pub struct XiLattice {
    spec: Arc<XiModuleSpec>,
    generators: Vec<XiElement>,
    frame: i64,
    pivots: Vec<Pivot>,
    columns: Vec<Vec<WittElement>>,
    det_val: u32,
    n0: i64,
}

impl fmt::Debug for XiLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("XiLattice")
            .field("frame", &self.frame)
            .field("n0", &self.n0)
            .field("basis", &self.basis())
            .finish()
    }
}

/// Result of the minimal-height search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinimalHeight {
    pub n0: i64,
    pub m_alpha: u64,
    pub q: u64,
}

/// p-exponents of `M₊/M₋`, `L/M₋` and `M₊/L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuotientExponents {
    pub m_plus_over_m_minus: u64,
    pub lattice_over_m_minus: u64,
    pub m_plus_over_lattice: u64,
}

impl QuotientExponents {
    pub fn coincide(&self) -> bool {
        self.m_plus_over_m_minus == self.lattice_over_m_minus && self.lattice_over_m_minus == self.m_plus_over_lattice
    }
}

/// `⌈m_α / r⌉`.
pub fn height_from_m_alpha(m_alpha: u64, r: u64) -> u64 {
    m_alpha.div_ceil(r)
}

impl XiLattice {
    /// Reduces `generators` to an echelon basis.
    pub fn new(spec: &Arc<XiModuleSpec>, generators: Vec<XiElement>) -> Result<Self, XiError> {
        if generators.iter().any(|g| !same_spec(&g.spec, spec)) {
            return Err(XiError::SpecMismatch);
        }
        let r = spec.r;
        let frame = generators.iter().map(|g| g.shift).min().ok_or(XiError::RankDeficient { rank: 0, r })?;
        let n = spec.ring.precision();
        let cols: Vec<Vec<WittElement>> = generators.iter().map(|g| g.reframe_down(frame).coeffs).collect();
        let ech = echelon(cols, r, n);
        if ech.pivots.len() < r {
            return Err(XiError::RankDeficient { rank: ech.pivots.len(), r });
        }
        let det_val: u32 = ech.pivots.iter().map(|p| p.d).sum();
        if det_val >= n {
            return Err(XiError::PrecisionExhausted(format!(
                "lattice index exponent {det_val} in its frame is not below N = {n}"
            )));
        }
        let mut lat = XiLattice { spec: Arc::clone(spec), generators, frame, pivots: ech.pivots, columns: ech.columns, det_val, n0: 0 };
        lat.n0 = lat
            .basis()
            .iter()
            .filter_map(|b| b.valuation().numerator())
            .min()
            .expect("full-rank basis has non-zero elements");
        Ok(lat)
    }

    /// `Λ_t`, spanned by `ξ^{t+i} ⊗ 1`.
    pub fn standard(spec: &Arc<XiModuleSpec>, t: i64) -> Self {
        let gens = (0..spec.ri()).map(|i| XiElement::xi_power(spec, t + i)).collect();
        XiLattice::new(spec, gens).expect("standard lattice is full rank")
    }

    pub fn spec(&self) -> &Arc<XiModuleSpec> {
        &self.spec
    }

    pub fn generators(&self) -> &[XiElement] {
        &self.generators
    }

    /// `r·min w(L)`.
    pub fn n0(&self) -> i64 {
        self.n0
    }

    pub fn frame(&self) -> i64 {
        self.frame
    }

    /// Sum of the pivot valuations, so that `p^D Λ_frame ⊆ L`.
    pub fn index_exponent(&self) -> u32 {
        self.det_val
    }

    pub fn basis(&self) -> Vec<XiElement> {
        self.columns
            .iter()
            .map(|c| XiElement { spec: Arc::clone(&self.spec), shift: self.frame, coeffs: c.clone() })
            .collect()
    }

    /// The lattice with its echelon basis as generators.
    pub fn reduce_basis(&self) -> XiLattice {
        XiLattice::new(&self.spec, self.basis()).expect("echelon basis re-reduces")
    }

    /// Coefficients of `x` in [`Self::basis`], or `None` if `x ∉ L`.
    ///
    /// Coefficient `k` is meaningful mod `p^{prec − d_k}`, where `prec` is the
    /// precision of `x` in the lattice frame.
    pub fn solve(&self, x: &XiElement) -> Result<Option<Vec<WittElement>>, XiError> {
        if !same_spec(&self.spec, &x.spec) {
            return Err(XiError::SpecMismatch);
        }
        match x.frame_coords(self.frame) {
            FrameCoords::NotIntegral => Ok(None),
            FrameCoords::Coords { coords, precision } => {
                if precision < self.det_val as i64 {
                    return Err(XiError::PrecisionExhausted(format!(
                        "element known to p^{precision} in the lattice frame; p^{} needed",
                        self.det_val
                    )));
                }
                let prec = precision.min(self.spec.n()) as u32;
                Ok(substitute(&self.pivots, &self.columns, coords, prec))
            }
        }
    }

    pub fn member(&self, x: &XiElement) -> Result<bool, XiError> {
        Ok(self.solve(x)?.is_some())
    }

    pub fn contains_lattice(&self, other: &XiLattice) -> Result<bool, XiError> {
        for b in other.basis() {
            if !self.member(&b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_lattice(&self, other: &XiLattice) -> Result<bool, XiError> {
        Ok(self.contains_lattice(other)? && other.contains_lattice(self)?)
    }

    /// Applies `op` to every basis vector.
    pub fn map_basis(&self, op: XiOperator) -> Result<XiLattice, XiError> {
        XiLattice::new(&self.spec, self.basis().iter().map(|b| b.apply(op)).collect())
    }

    pub fn is_stable(&self, op: XiOperator) -> Result<bool, XiError> {
        for b in self.basis() {
            if !self.member(&b.apply(op))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn check_f_crystal(&self) -> Result<(), XiError> {
        if !self.is_stable(XiOperator::Phi)? {
            return Err(XiError::NotStable { operator: "phi" });
        }
        if !self.is_stable(XiOperator::Theta)? {
            return Err(XiError::NotStable { operator: "theta" });
        }
        Ok(())
    }

    /// `Λ_{n₀}`, the smallest standard lattice containing `L`.
    pub fn m_plus(&self) -> Result<XiLattice, XiError> {
        let plus = XiLattice::standard(&self.spec, self.n0);
        if !plus.contains_lattice(self)? {
            return Err(XiError::Containment("lattice not inside its M+".into()));
        }
        Ok(plus)
    }

    fn search_limit(&self) -> u64 {
        let r = self.spec.r as u64;
        let q = IsosimpleProfile::new(self.spec.s, r, self.spec.e).ok().and_then(|p| q_bound(&p).ok()).unwrap_or(1);
        r * q.max(1)
    }

    /// Least `m_α ≥ 0` with `Λ_{n₀+m_α} ⊆ L`, and `q = ⌈m_α/r⌉`.
    pub fn minimal_height(&self) -> Result<MinimalHeight, XiError> {
        let r = self.spec.r as u64;
        let limit = self.search_limit();
        let need = limit / r + 3;
        if (self.spec.n() as u64) < need {
            return Err(XiError::PrecisionExhausted(format!("N = {} is below the required {need}", self.spec.n())));
        }
        self.check_f_crystal()?;
        for t in 0..=limit {
            let inside = XiLattice::standard(&self.spec, self.n0 + t as i64);
            if self.contains_lattice(&inside)? {
                return Ok(MinimalHeight { n0: self.n0, m_alpha: t, q: height_from_m_alpha(t, r) });
            }
        }
        Err(XiError::SearchBoundExceeded { bound: limit })
    }

    /// `Λ_{n₀+m_α}`.
    pub fn m_minus(&self) -> Result<XiLattice, XiError> {
        let h = self.minimal_height()?;
        Ok(XiLattice::standard(&self.spec, self.n0 + h.m_alpha as i64))
    }

    /// Scales every basis vector by `p^k`.
    pub fn scaled_by_p(&self, k: u32) -> XiLattice {
        let word = vec![XiOperator::P; k as usize];
        XiLattice::new(&self.spec, self.basis().iter().map(|b| b.apply_word(&word)).collect()).expect("scaling keeps the rank")
    }

    /// Elementary divisors of `φ(L) ⊆ L`, ascending.
    pub fn hodge_slopes(&self) -> Result<Vec<u32>, XiError> {
        let n = self.spec.ring.precision();
        let max_d = self.pivots.iter().map(|p| p.d).max().unwrap_or(0);
        let prec = n - max_d;
        let mut cols = Vec::with_capacity(self.spec.r);
        for b in self.basis() {
            let sol = self.solve(&b.apply(XiOperator::Phi))?.ok_or(XiError::NotStable { operator: "phi" })?;
            cols.push(sol);
        }
        let ech = echelon(cols, self.spec.r, prec);
        let total: u32 = ech.pivots.iter().map(|p| p.d).sum();
        if ech.pivots.len() < self.spec.r || total >= prec {
            return Err(XiError::PrecisionExhausted(format!("Hodge slopes need more than {prec} digits")));
        }
        let mut slopes: Vec<u32> = ech.pivots.iter().map(|p| p.d).collect();
        slopes.sort_unstable();
        Ok(slopes)
    }

    /// p-exponents of the three quotients in `M₋ ⊆ L ⊆ M₊`.
    pub fn quotient_exponents(&self) -> Result<QuotientExponents, XiError> {
        let plus = self.m_plus()?;
        let minus = self.m_minus()?;
        Ok(QuotientExponents {
            m_plus_over_m_minus: p_exponent_quotient(&minus, &plus)?,
            lattice_over_m_minus: p_exponent_quotient(&minus, self)?,
            m_plus_over_lattice: p_exponent_quotient(self, &plus)?,
        })
    }

    /// Valuation numerators, relative to `n₀` and at most `limit`, of the
    /// elements obtained from a least-valuation basis vector by words in φ, ϑ, p.
    pub fn attained_valuations(&self, limit: u64) -> Result<BTreeSet<u64>, XiError> {
        self.check_f_crystal()?;
        let start = self
            .basis()
            .into_iter()
            .find(|b| b.valuation().numerator() == Some(self.n0))
            .expect("some basis vector attains n0");
        let mut seen = BTreeSet::from([0u64]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for op in [XiOperator::Phi, XiOperator::Theta, XiOperator::P] {
                let y = x.apply(op);
                let num = y.valuation().numerator().expect("operators preserve non-zero elements");
                let rel = (num - self.n0) as u64;
                if rel <= limit && seen.insert(rel) {
                    queue.push_back(y);
                }
            }
        }
        Ok(seen)
    }
}

/// Least `m` with `p^m B ⊆ A`; requires `A ⊆ B`.
pub fn p_exponent_quotient(a: &XiLattice, b: &XiLattice) -> Result<u64, XiError> {
    if !same_spec(&a.spec, &b.spec) {
        return Err(XiError::SpecMismatch);
    }
    if !b.contains_lattice(a)? {
        return Err(XiError::Containment("first lattice is not inside the second".into()));
    }
    let r = a.spec.ri();
    // p^m B ⊆ Λ_{n0_B + rm} ⊆ p^{D_A} Λ_{F_A} ⊆ A once n0_B + rm ≥ F_A + r D_A.
    let limit = (a.frame + r * a.det_val as i64 - b.n0).max(0).div_euclid(r) as u64 + 1;
    let basis = b.basis();
    for m in 0..=limit {
        let word = vec![XiOperator::P; m as usize];
        let mut all = true;
        for x in &basis {
            if !a.member(&x.apply_word(&word))? {
                all = false;
                break;
            }
        }
        if all {
            return Ok(m);
        }
    }
    Err(XiError::PrecisionExhausted("p-exponent search passed its a priori bound".into()))
}

/// Smallest lattice containing `generators` and stable under φ and ϑ.
pub fn stable_closure(spec: &Arc<XiModuleSpec>, generators: Vec<XiElement>) -> Result<XiLattice, XiError> {
    let mut lat = XiLattice::new(spec, generators)?;
    for _ in 0..=64 * spec.r * spec.ring.precision() as usize {
        let mut gens = lat.basis();
        let before = gens.len();
        for b in lat.basis() {
            for op in [XiOperator::Phi, XiOperator::Theta] {
                let y = b.apply(op);
                if !lat.member(&y)? {
                    gens.push(y);
                }
            }
        }
        if gens.len() == before {
            return Ok(lat);
        }
        lat = XiLattice::new(spec, gens)?;
    }
    Err(XiError::PrecisionExhausted("closure did not stabilise".into()))
}

/// Stable closure of `x, φx, …, φ^{r−1}x`.
pub fn phi_orbit_lattice(x: &XiElement) -> Result<XiLattice, XiError> {
    let mut gens = vec![x.clone()];
    for _ in 1..x.spec.r {
        let next = gens.last().expect("non-empty").apply(XiOperator::Phi);
        gens.push(next);
    }
    stable_closure(&x.spec, gens)
}
