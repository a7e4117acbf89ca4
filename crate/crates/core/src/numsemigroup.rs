//! Frobenius numbers of numerical semigroups.
//!
//! The general path is the round-robin shortest-path algorithm on residues
//! modulo the smallest generator: it computes, for each residue class `c`, the
//! least representable integer `apery[c] ≡ c`. Then `n` is representable iff
//! `n >= apery[n mod a]`, and the Frobenius number is `max(apery) - a`.

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("need at least two generators, got {0}")]
    TooFewGenerators(usize),
    #[error("generators must be positive")]
    ZeroGenerator,
    #[error("generators {generators:?} have gcd {gcd}; the Frobenius number is undefined")]
    NotCoprime { generators: Vec<u64>, gcd: u64 },
    #[error("Brauer-Shockley hypothesis fails: {0}")]
    Hypothesis(String),
    #[error("precondition fails: {0}")]
    Precondition(String),
    #[error("closed formula gives {formula:?} but the residue search gives {search:?} for {generators:?}")]
    FormulaMismatch { generators: Vec<u64>, formula: Option<u64>, search: Option<u64> },
    #[error("arithmetic overflow for {0:?}")]
    Overflow(Vec<u64>),
}

/// Positive generators with gcd 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupGenerators {
    generators: Vec<u64>,
}

impl SemigroupGenerators {
    pub fn new(generators: Vec<u64>) -> Result<Self, SemigroupError> {
        if generators.len() < 2 {
            return Err(SemigroupError::TooFewGenerators(generators.len()));
        }
        if generators.contains(&0) {
            return Err(SemigroupError::ZeroGenerator);
        }
        let gcd = generators.iter().fold(0u64, |g, &x| g.gcd(&x));
        if gcd != 1 {
            return Err(SemigroupError::NotCoprime { generators, gcd });
        }
        Ok(SemigroupGenerators { generators })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Least representable integer in each residue class modulo the smallest
    /// generator.
    pub fn apery_table(&self) -> AperyTable {
        let modulus = *self.generators.iter().min().expect("non-empty");
        let a = modulus as usize;
        let mut least = vec![u64::MAX; a];
        least[0] = 0;
        for &b in &self.generators {
            if b == modulus {
                continue;
            }
            let d = a.gcd(&((b % modulus) as usize)).max(1);
            let step = (b % modulus) as usize;
            for class in 0..d {
                // start the walk at the smallest known value in this cycle
                let start = (class..a).step_by(d).min_by_key(|&c| least[c]).expect("class is non-empty");
                if least[start] == u64::MAX {
                    continue;
                }
                let mut cur = start;
                for _ in 1..a / d {
                    let next = (cur + step) % a;
                    let candidate = least[cur].saturating_add(b);
                    if candidate < least[next] {
                        least[next] = candidate;
                    }
                    cur = next;
                }
            }
        }
        debug_assert!(least.iter().all(|&v| v != u64::MAX), "gcd 1 reaches every residue");
        AperyTable { modulus, least }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AperyTable {
    modulus: u64,
    least: Vec<u64>,
}

impl AperyTable {
    pub fn contains(&self, n: u64) -> bool {
        n >= self.least[(n % self.modulus) as usize]
    }

    /// `None` when every positive integer is representable.
    pub fn frobenius(&self) -> Option<u64> {
        let max = *self.least.iter().max().expect("non-empty");
        max.checked_sub(self.modulus)
    }

    pub fn gaps(&self) -> Vec<u64> {
        match self.frobenius() {
            None => Vec::new(),
            Some(g) => (1..=g).filter(|&n| !self.contains(n)).collect(),
        }
    }
}

/// Largest non-representable positive integer, or `None` if there is none.
pub fn frobenius_dp(g: &SemigroupGenerators) -> Option<u64> {
    g.apery_table().frobenius()
}

pub fn is_representable(g: &SemigroupGenerators, n: u64) -> bool {
    g.apery_table().contains(n)
}

/// `max{floor(xz/(y+z)) y, floor(xy/(y+z)) z} - x` for pairwise coprime
/// `x, y, z` with `y + z ≡ 0 (mod x)`. Returns `None` when the value is
/// negative, i.e. every positive integer is representable.
pub fn brauer_shockley(x: u64, y: u64, z: u64) -> Result<Option<u64>, SemigroupError> {
    if x == 0 || y == 0 || z == 0 {
        return Err(SemigroupError::ZeroGenerator);
    }
    for (name, a, b) in [("x,y", x, y), ("x,z", x, z), ("y,z", y, z)] {
        if a.gcd(&b) != 1 {
            return Err(SemigroupError::Hypothesis(format!("gcd({name}) = gcd({a},{b}) = {}", a.gcd(&b))));
        }
    }
    let (x, y, z) = (x as u128, y as u128, z as u128);
    if (y + z) % x != 0 {
        return Err(SemigroupError::Hypothesis(format!("y + z = {} is not divisible by x = {x}", y + z)));
    }
    let first = (x * z / (y + z)) * y;
    let second = (x * y / (y + z)) * z;
    let value = first.max(second) as i128 - x as i128;
    to_frobenius(value, &[x as u64, y as u64, z as u64])
}

fn to_frobenius(value: i128, gens: &[u64]) -> Result<Option<u64>, SemigroupError> {
    if value < 0 {
        Ok(None)
    } else {
        u64::try_from(value).map(Some).map_err(|_| SemigroupError::Overflow(gens.to_vec()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrobeniusMethod {
    Formula,
    Dp,
}

impl FrobeniusMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            FrobeniusMethod::Formula => "formula",
            FrobeniusMethod::Dp => "dp",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrystalFrobenius {
    pub value: Option<u64>,
    pub method: FrobeniusMethod,
}

/// Generators at or below this size are always checked against the residue search.
pub const FORMULA_CROSSCHECK_LIMIT: u64 = 10_000;

/// The semigroup `<s, re - s, r>` attached to an isosimple crystal.
pub fn crystal_generators(s: u64, r: u64, e: u64) -> Result<[u64; 3], SemigroupError> {
    if s.gcd(&r) != 1 {
        return Err(SemigroupError::Precondition(format!("gcd(s, r) = gcd({s}, {r}) != 1")));
    }
    let re = r.checked_mul(e).ok_or(SemigroupError::Overflow(vec![s, r, e]))?;
    if re <= s {
        return Err(SemigroupError::Precondition(format!("r e - s = {re} - {s} must be at least 1")));
    }
    Ok([s, re - s, r])
}

/// `max{floor((re-s)/e) s, floor(s/e)(re-s)} - r` when `{r, s, re-s}` are
/// pairwise coprime, otherwise the residue search.
pub fn frobenius_for_crystal(s: u64, r: u64, e: u64) -> Result<CrystalFrobenius, SemigroupError> {
    let [s_gen, complement, r_gen] = crystal_generators(s, r, e)?;
    let pairwise = s_gen.gcd(&complement) == 1 && s_gen.gcd(&r_gen) == 1 && complement.gcd(&r_gen) == 1;
    if !pairwise {
        let gens = SemigroupGenerators::new(vec![s_gen, complement, r_gen])?;
        return Ok(CrystalFrobenius { value: frobenius_dp(&gens), method: FrobeniusMethod::Dp });
    }
    let value = crystal_formula(s, r, e, complement)?;
    let brauer = brauer_shockley(r, s, complement)?;
    if brauer != value {
        return Err(SemigroupError::FormulaMismatch { generators: vec![s, complement, r], formula: value, search: brauer });
    }
    if s.max(complement).max(r) <= FORMULA_CROSSCHECK_LIMIT {
        let search = frobenius_dp(&SemigroupGenerators::new(vec![s, complement, r])?);
        if search != value {
            return Err(SemigroupError::FormulaMismatch { generators: vec![s, complement, r], formula: value, search });
        }
    }
    Ok(CrystalFrobenius { value, method: FrobeniusMethod::Formula })
}

fn crystal_formula(s: u64, r: u64, e: u64, complement: u64) -> Result<Option<u64>, SemigroupError> {
    let (s128, r128, e128, c128) = (s as u128, r as u128, e as u128, complement as u128);
    let first = (c128 / e128) * s128;
    let second = (s128 / e128) * c128;
    to_frobenius(first.max(second) as i128 - r128 as i128, &[s, complement, r])
}

/// Residue-search Frobenius number of `<s, re - s, r>`, with no closed formula.
pub fn frobenius_for_crystal_dp(s: u64, r: u64, e: u64) -> Result<Option<u64>, SemigroupError> {
    let gens = crystal_generators(s, r, e)?;
    Ok(frobenius_dp(&SemigroupGenerators::new(gens.to_vec())?))
}
