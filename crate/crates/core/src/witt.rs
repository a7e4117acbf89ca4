//! Truncated unramified Witt vectors `W(F_{p^m}) / p^N`, realised as
//! `(Z/p^N)[x]/(f)` with `f` monic of degree `m` and irreducible mod `p`.
//!
//! Coordinates are residues in `[0, p^N)` with respect to the power basis
//! `1, θ, …, θ^{m-1}`, `θ = x mod f`. Products go through `u128`, which is
//! why `p^N < 2^62` is required.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

const DEFAULT_MODULI: &str = include_str!("../data/default_moduli.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WittError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid ring parameter: {0}")]
    InvalidParameter(String),
    #[error("p^N = {p}^{n} does not fit below 2^62")]
    PrecisionTooLarge { p: u64, n: u32 },
    #[error("no built-in modulus for p={p}, m={m}; supply one")]
    NoDefaultModulus { p: u64, m: usize },
    #[error("modulus is not a monic polynomial of degree {m}: {reason}")]
    MalformedModulus { m: usize, reason: String },
    #[error("modulus is reducible mod {p}")]
    ReducibleModulus { p: u64 },
    #[error("operands belong to different rings")]
    SpecMismatch,
    #[error("element is not a unit")]
    NotUnit,
}

/// p-adic order of an element at the ring's precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PAdicOrder {
    Finite(u32),
    /// All coordinates vanish mod `p^N`.
    InfinityAtPrecision,
}

impl PAdicOrder {
    pub fn finite(self) -> Option<u32> {
        match self {
            PAdicOrder::Finite(v) => Some(v),
            PAdicOrder::InfinityAtPrecision => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, PAdicOrder::InfinityAtPrecision)
    }
}

impl PartialOrd for PAdicOrder {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PAdicOrder {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use PAdicOrder::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), InfinityAtPrecision) => std::cmp::Ordering::Less,
            (InfinityAtPrecision, Finite(_)) => std::cmp::Ordering::Greater,
            (InfinityAtPrecision, InfinityAtPrecision) => std::cmp::Ordering::Equal,
        }
    }
}

impl fmt::Display for PAdicOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PAdicOrder::Finite(v) => write!(f, "{v}"),
            PAdicOrder::InfinityAtPrecision => f.write_str("infinity"),
        }
    }
}

/// Deterministic Miller–Rabin for `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn add_mod(a: u64, b: u64, n: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % n as u128) as u64
}

fn sub_mod(a: u64, b: u64, n: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        n - (b - a)
    }
}

fn pow_mod(mut a: u64, mut e: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    a %= n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, n);
        }
        a = mul_mod(a, a, n);
        e >>= 1;
    }
    acc
}

/// Polynomials over `F_p`, low degree first, trimmed.
mod fp_poly {
    use super::{add_mod, mul_mod, pow_mod, sub_mod};

    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| sub_mod(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0), p))
            .collect();
        trim(out)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
            }
        }
        trim(out)
    }

    /// Quotient and remainder; `b` non-zero.
    pub fn div_rem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let db = b.len() - 1;
        let inv_lead = pow_mod(b[db], p - 2, p);
        let mut rem = a.to_vec();
        if rem.len() <= db {
            return (Vec::new(), trim(rem));
        }
        let mut quot = vec![0; rem.len() - db];
        for k in (db..rem.len()).rev() {
            let c = mul_mod(rem[k], inv_lead, p);
            if c == 0 {
                continue;
            }
            quot[k - db] = c;
            for (j, &bj) in b.iter().enumerate() {
                rem[k - db + j] = sub_mod(rem[k - db + j], mul_mod(c, bj, p), p);
            }
        }
        rem.truncate(db);
        (trim(quot), trim(rem))
    }

    pub fn mul_rem(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        div_rem(&mul(a, b, p), f, p).1
    }

    pub fn pow_rem(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1];
        let mut b = div_rem(base, f, p).1;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_rem(&acc, &b, f, p);
            }
            b = mul_rem(&b, &b, f, p);
            e >>= 1;
        }
        div_rem(&acc, f, p).1
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
        while !y.is_empty() {
            let r = div_rem(&x, &y, p).1;
            x = y;
            y = r;
        }
        x
    }

    /// Inverse of `a` modulo `f`, if `gcd(a, f) = 1`.
    pub fn inverse(a: &[u64], f: &[u64], p: u64) -> Option<Vec<u64>> {
        let (mut r0, mut r1) = (trim(f.to_vec()), div_rem(a, f, p).1);
        let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = div_rem(&r0, &r1, p);
            let s2 = sub(&s0, &mul(&q, &s1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        if r0.len() != 1 {
            return None;
        }
        let c = pow_mod(r0[0], p - 2, p);
        Some(div_rem(&mul(&s0, &[c], p), f, p).1)
    }

    /// Rabin's test; `f` monic.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let m = f.len() - 1;
        if m == 0 {
            return false;
        }
        if m == 1 {
            return true;
        }
        let x = vec![0, 1];
        let mut powers = Vec::with_capacity(m);
        let mut h = x.clone();
        for _ in 0..m {
            h = pow_rem(&h, p, f, p);
            powers.push(h.clone());
        }
        if sub(&powers[m - 1], &x, p) != Vec::<u64>::new() {
            return false;
        }
        let mut rest = m;
        let mut q = 2;
        while rest > 1 {
            if rest.is_multiple_of(q) {
                while rest.is_multiple_of(q) {
                    rest /= q;
                }
                let g = gcd(&sub(&powers[m / q - 1], &x, p), f, p);
                if g.len() != 1 {
                    return false;
                }
            }
            q += 1;
        }
        true
    }
}

/// Parameters of `W(F_{p^m}) / p^N` plus the Frobenius lift in the power basis.
#[derive(Debug)]
pub struct WittRing {
    p: u64,
    m: usize,
    n: u32,
    pn: u64,
    /// `c_0, …, c_{m-1}`; the leading coefficient 1 is implicit.
    modulus: Vec<u64>,
    /// `sigma_tables[k][j]` = coordinates of `σ^k(θ^j)`, `0 ≤ k < m`.
    sigma_tables: Vec<Vec<Vec<u64>>>,
}

impl PartialEq for WittRing {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.n == other.n && self.modulus == other.modulus
    }
}

impl Eq for WittRing {}

fn default_modulus(p: u64, m: usize) -> Option<Vec<u64>> {
    DEFAULT_MODULI
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .find_map(|line| {
            let fields: Vec<u64> = line.split_whitespace().map(|t| t.parse().expect("numeric modulus table")).collect();
            (fields[0] == p && fields[1] as usize == m).then(|| fields[2..].to_vec())
        })
}

/// Builds the ring, validating `p`, `N` and the modulus.
///
/// `modulus`, when given, lists `c_0, …, c_m` with `c_m ≡ 1 (mod p^N)`.
pub fn make_ring(p: u64, m: usize, n: u32, modulus: Option<&[BigInt]>) -> Result<Arc<WittRing>, WittError> {
    if !is_prime(p) {
        return Err(WittError::NotPrime(p));
    }
    if m == 0 {
        return Err(WittError::InvalidParameter("extension degree m must be at least 1".into()));
    }
    if n == 0 {
        return Err(WittError::InvalidParameter("precision N must be at least 1".into()));
    }
    let pn = p.checked_pow(n).filter(|&v| v < 1 << 62).ok_or(WittError::PrecisionTooLarge { p, n })?;
    let coeffs = match modulus {
        None => default_modulus(p, m).ok_or(WittError::NoDefaultModulus { p, m })?,
        Some(c) => {
            if c.len() != m + 1 {
                return Err(WittError::MalformedModulus { m, reason: format!("expected {} coefficients, got {}", m + 1, c.len()) });
            }
            let big_pn = BigInt::from(pn);
            let reduced: Vec<u64> = c.iter().map(|v| v.mod_floor(&big_pn).to_u64().expect("residue below p^N")).collect();
            if reduced[m] != 1 % pn {
                return Err(WittError::MalformedModulus { m, reason: "leading coefficient is not 1".into() });
            }
            reduced[..m].to_vec()
        }
    };
    let mut f_mod_p: Vec<u64> = coeffs.iter().map(|c| c % p).collect();
    f_mod_p.push(1);
    if !fp_poly::is_irreducible(&f_mod_p, p) {
        return Err(WittError::ReducibleModulus { p });
    }
    let modulus: Vec<u64> = coeffs.iter().map(|c| c % pn).collect();
    let mut ring = WittRing { p, m, n, pn, modulus, sigma_tables: Vec::new() };
    ring.sigma_tables = ring.build_sigma_tables();
    Ok(Arc::new(ring))
}

impl WittRing {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    /// `p^N`.
    pub fn modulus_pn(&self) -> u64 {
        self.pn
    }

    /// `c_0, …, c_m` with `c_m = 1`.
    pub fn modulus(&self) -> Vec<u64> {
        let mut v = self.modulus.clone();
        v.push(1 % self.pn);
        v
    }

    /// Columns are the coordinates of `σ^k(θ^j)`; `k` is taken mod `m`.
    pub fn frobenius_table(&self, k: i64) -> &[Vec<u64>] {
        &self.sigma_tables[k.rem_euclid(self.m as i64) as usize]
    }

    fn reduce_poly(&self, mut prod: Vec<u64>) -> Vec<u64> {
        let (m, pn) = (self.m, self.pn);
        for k in (m..prod.len()).rev() {
            let c = prod[k];
            if c != 0 {
                for j in 0..m {
                    prod[k - m + j] = sub_mod(prod[k - m + j], mul_mod(c, self.modulus[j], pn), pn);
                }
                prod[k] = 0;
            }
        }
        prod.resize(m, 0);
        prod
    }

    fn mul_coords(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let pn = self.pn;
        let mut prod = vec![0u64; 2 * self.m - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = add_mod(prod[i + j], mul_mod(x, y, pn), pn);
            }
        }
        self.reduce_poly(prod)
    }

    fn pow_coords(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = self.unit_coords();
        let mut b = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_coords(&acc, &b);
            }
            b = self.mul_coords(&b, &b);
            e >>= 1;
        }
        acc
    }

    fn unit_coords(&self) -> Vec<u64> {
        let mut v = vec![0; self.m];
        v[0] = 1 % self.pn;
        v
    }

    fn theta_coords(&self) -> Vec<u64> {
        self.reduce_poly(vec![0, 1 % self.pn])
    }

    /// Evaluates `f` and `f'` at `rho` by Horner's rule.
    fn eval_modulus(&self, rho: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let pn = self.pn;
        let full = self.modulus();
        let mut val = vec![0; self.m];
        let mut der = vec![0; self.m];
        for k in (0..=self.m).rev() {
            der = self.mul_coords(&der, rho);
            der = add_coords(&der, &val, pn);
            val = self.mul_coords(&val, rho);
            val[0] = add_mod(val[0], full[k], pn);
        }
        (val, der)
    }

    fn unit_inverse_coords(&self, a: &[u64]) -> Option<Vec<u64>> {
        let p = self.p;
        let mut f_mod_p: Vec<u64> = self.modulus.iter().map(|c| c % p).collect();
        f_mod_p.push(1);
        let a_mod_p: Vec<u64> = fp_poly::trim(a.iter().map(|c| c % p).collect());
        let mut y = fp_poly::inverse(&a_mod_p, &f_mod_p, p)?;
        y.resize(self.m, 0);
        let one = self.unit_coords();
        let two = add_coords(&one, &one, self.pn);
        // Newton: y ← y (2 − a y) doubles the number of correct digits.
        for _ in 0..=64 {
            let ay = self.mul_coords(a, &y);
            if ay == one {
                return Some(y);
            }
            y = self.mul_coords(&y, &sub_coords(&two, &ay, self.pn));
        }
        unreachable!("Newton inversion converges for units")
    }

    fn build_sigma_tables(&self) -> Vec<Vec<Vec<u64>>> {
        let theta = self.theta_coords();
        let mut rho = self.pow_coords(&theta, self.p);
        let mut converged = false;
        for _ in 0..=64 {
            let (val, der) = self.eval_modulus(&rho);
            if val.iter().all(|&c| c == 0) {
                converged = true;
                break;
            }
            let inv = self.unit_inverse_coords(&der).expect("separable modulus has unit derivative at roots");
            rho = sub_coords(&rho, &self.mul_coords(&val, &inv), self.pn);
        }
        assert!(converged, "Hensel lifting of the Frobenius root failed");
        let mut powers = Vec::with_capacity(self.m);
        let mut acc = self.unit_coords();
        for _ in 0..self.m {
            powers.push(acc.clone());
            acc = self.mul_coords(&acc, &rho);
        }
        let apply = |table: &[Vec<u64>], v: &[u64]| -> Vec<u64> { apply_table(table, v, self.pn) };
        let identity: Vec<Vec<u64>> = (0..self.m)
            .map(|j| {
                let mut e = vec![0; self.m];
                e[j] = 1 % self.pn;
                e
            })
            .collect();
        let mut tables = vec![identity];
        for k in 1..self.m {
            let prev: &Vec<Vec<u64>> = &tables[k - 1];
            let next = prev.iter().map(|col| apply(&powers, col)).collect();
            tables.push(next);
        }
        tables
    }

    pub fn zero(self: &Arc<Self>) -> WittElement {
        WittElement { ring: Arc::clone(self), coords: vec![0; self.m] }
    }

    pub fn one(self: &Arc<Self>) -> WittElement {
        WittElement { ring: Arc::clone(self), coords: self.unit_coords() }
    }

    /// The power-basis generator `θ`.
    pub fn theta(self: &Arc<Self>) -> WittElement {
        WittElement { ring: Arc::clone(self), coords: self.theta_coords() }
    }

    pub fn from_int(self: &Arc<Self>, v: i64) -> WittElement {
        let mut coords = vec![0; self.m];
        coords[0] = (v as i128).rem_euclid(self.pn as i128) as u64;
        WittElement { ring: Arc::clone(self), coords }
    }

    /// Reduces integer coordinates mod `p^N`; missing trailing coordinates are 0.
    pub fn element(self: &Arc<Self>, coords: &[i64]) -> Result<WittElement, WittError> {
        let big: Vec<BigInt> = coords.iter().map(|&c| BigInt::from(c)).collect();
        self.element_big(&big)
    }

    pub fn element_big(self: &Arc<Self>, coords: &[BigInt]) -> Result<WittElement, WittError> {
        if coords.len() > self.m {
            return Err(WittError::InvalidParameter(format!("{} coordinates for degree {}", coords.len(), self.m)));
        }
        let pn = BigInt::from(self.pn);
        let mut out = vec![0; self.m];
        for (slot, c) in out.iter_mut().zip(coords) {
            *slot = c.mod_floor(&pn).to_u64().expect("residue below p^N");
        }
        Ok(WittElement { ring: Arc::clone(self), coords: out })
    }

    /// Coordinates taken as residues; each must lie in `[0, p^N)`.
    pub fn from_residues(self: &Arc<Self>, coords: Vec<u64>) -> WittElement {
        assert_eq!(coords.len(), self.m, "coordinate vector length");
        assert!(coords.iter().all(|&c| c < self.pn), "coordinates reduced mod p^N");
        WittElement { ring: Arc::clone(self), coords }
    }
}

fn add_coords(a: &[u64], b: &[u64], pn: u64) -> Vec<u64> {
    a.iter().zip(b).map(|(&x, &y)| add_mod(x, y, pn)).collect()
}

fn sub_coords(a: &[u64], b: &[u64], pn: u64) -> Vec<u64> {
    a.iter().zip(b).map(|(&x, &y)| sub_mod(x, y, pn)).collect()
}

fn apply_table(table: &[Vec<u64>], v: &[u64], pn: u64) -> Vec<u64> {
    let mut out = vec![0; v.len()];
    for (col, &c) in table.iter().zip(v) {
        if c == 0 {
            continue;
        }
        for (o, &t) in out.iter_mut().zip(col) {
            *o = add_mod(*o, mul_mod(c, t, pn), pn);
        }
    }
    out
}

fn ord_u64(mut c: u64, p: u64, cap: u32) -> Option<u32> {
    if c == 0 {
        return None;
    }
    let mut v = 0;
    while c.is_multiple_of(p) && v < cap {
        c /= p;
        v += 1;
    }
    Some(v)
}

#[derive(Clone)]
pub struct WittElement {
    ring: Arc<WittRing>,
    coords: Vec<u64>,
}

impl PartialEq for WittElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.coords == other.coords
    }
}

impl Eq for WittElement {}

impl fmt::Debug for WittElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} mod {}", self.coords, self.ring.pn)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn arith(a: &WittElement, b: &WittElement, op: ArithOp) -> Result<WittElement, WittError> {
    if !a.same_ring(b) {
        return Err(WittError::SpecMismatch);
    }
    let pn = a.ring.pn;
    let coords = match op {
        ArithOp::Add => add_coords(&a.coords, &b.coords, pn),
        ArithOp::Sub => sub_coords(&a.coords, &b.coords, pn),
        ArithOp::Mul => a.ring.mul_coords(&a.coords, &b.coords),
    };
    Ok(WittElement { ring: Arc::clone(&a.ring), coords })
}

impl WittElement {
    pub fn ring(&self) -> &Arc<WittRing> {
        &self.ring
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Minimum coordinate valuation.
    pub fn ord_p(&self) -> PAdicOrder {
        self.coords
            .iter()
            .filter_map(|&c| ord_u64(c, self.ring.p, self.ring.n))
            .min()
            .map_or(PAdicOrder::InfinityAtPrecision, PAdicOrder::Finite)
    }

    pub fn is_unit(&self) -> bool {
        self.ord_p() == PAdicOrder::Finite(0)
    }

    /// `σ^power`; negative powers use `σ^{-1} = σ^{m-1}`.
    pub fn sigma(&self, power: i64) -> WittElement {
        let table = self.ring.frobenius_table(power);
        WittElement { ring: Arc::clone(&self.ring), coords: apply_table(table, &self.coords, self.ring.pn) }
    }

    pub fn inverse(&self) -> Result<WittElement, WittError> {
        if !self.is_unit() {
            return Err(WittError::NotUnit);
        }
        let coords = self.ring.unit_inverse_coords(&self.coords).ok_or(WittError::NotUnit)?;
        Ok(WittElement { ring: Arc::clone(&self.ring), coords })
    }

    pub fn scale(&self, k: i64) -> WittElement {
        self * &self.ring.from_int(k)
    }

    pub fn mul_p_pow(&self, k: u32) -> WittElement {
        let pn = self.ring.pn;
        let factor = if k >= self.ring.n { 0 } else { self.ring.p.pow(k) };
        WittElement { ring: Arc::clone(&self.ring), coords: self.coords.iter().map(|&c| mul_mod(c, factor, pn)).collect() }
    }

    /// `self / p^k` when every coordinate is divisible by `p^k`.
    ///
    /// The quotient is determined mod `p^{N-k}` only; its representative has
    /// coordinates in `[0, p^{N-k})`.
    pub fn div_p_pow(&self, k: u32) -> Option<WittElement> {
        if k == 0 {
            return Some(self.clone());
        }
        if k >= self.ring.n {
            return self.is_zero().then(|| self.ring.zero());
        }
        let d = self.ring.p.pow(k);
        if self.coords.iter().any(|c| c % d != 0) {
            return None;
        }
        Some(WittElement { ring: Arc::clone(&self.ring), coords: self.coords.iter().map(|c| c / d).collect() })
    }

    /// Reduces coordinates mod `p^prec` (`prec ≤ N`).
    pub fn truncate(&self, prec: u32) -> WittElement {
        if prec >= self.ring.n {
            return self.clone();
        }
        let d = self.ring.p.pow(prec);
        WittElement { ring: Arc::clone(&self.ring), coords: self.coords.iter().map(|c| c % d).collect() }
    }

    /// Coordinates as signed integers in `(-p^N/2, p^N/2]`.
    pub fn balanced_coords(&self) -> Vec<i64> {
        let pn = self.ring.pn;
        self.coords.iter().map(|&c| if c > pn / 2 { c as i64 - pn as i64 } else { c as i64 }).collect()
    }

    pub fn to_bigints(&self) -> Vec<BigInt> {
        self.coords.iter().map(|&c| BigInt::from(c)).collect()
    }
}

impl Add for &WittElement {
    type Output = WittElement;

    /// # Panics
    /// If the operands belong to different rings.
    fn add(self, rhs: &WittElement) -> WittElement {
        arith(self, rhs, ArithOp::Add).expect("operands from the same ring")
    }
}

impl Sub for &WittElement {
    type Output = WittElement;

    fn sub(self, rhs: &WittElement) -> WittElement {
        arith(self, rhs, ArithOp::Sub).expect("operands from the same ring")
    }
}

impl Mul for &WittElement {
    type Output = WittElement;

    fn mul(self, rhs: &WittElement) -> WittElement {
        arith(self, rhs, ArithOp::Mul).expect("operands from the same ring")
    }
}

impl Neg for &WittElement {
    type Output = WittElement;

    fn neg(self) -> WittElement {
        &self.ring.zero() - self
    }
}

/// Parses a signed big integer list into a modulus argument for [`make_ring`].
pub fn modulus_from_i64(c: &[i64]) -> Vec<BigInt> {
    c.iter().map(|&v| BigInt::from(v)).collect()
}
