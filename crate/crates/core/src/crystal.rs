//! Permutation-form F-crystals.
//!
//! A cyclic F-crystal is a direct sum of cycles. A cycle of length `r` with
//! exponents `(e_1, ..., e_r)` has basis `v_1, ..., v_r` and Frobenius
//! `phi(v_i) = p^{e_i} v_{i+1}`, indices read cyclically. Everything here is
//! exact integer arithmetic; exponents are arbitrary precision.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrystalError {
    #[error("an exponent cycle must have at least one entry")]
    EmptyCycle,
    #[error("a crystal must have at least one cycle")]
    NoCycles,
    #[error("exponent {value} at position {position} is negative")]
    NegativeExponent { position: usize, value: BigInt },
    #[error("index {i} is outside 1..={len}")]
    IndexOutOfRange { i: usize, len: usize },
    #[error("power q must be at least 1")]
    ZeroPower,
    #[error("slope {slope} has rank multiplicity {multiplicity}, which is not divisible by its denominator")]
    MultiplicityNotDivisible { slope: Slope, multiplicity: usize },
    #[error("invalid slope: {0}")]
    InvalidSlope(String),
    #[error("Newton polygon slopes must be strictly increasing with positive multiplicities")]
    MalformedPolygon,
    #[error("cycle {exponents:?} is not minimal")]
    NotMinimal { exponents: Vec<BigInt> },
}

/// A non-negative rational slope `num/den`, always reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Slope(BigRational);

impl Slope {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, CrystalError> {
        let num = num.into();
        let den = den.into();
        if den.is_zero() {
            return Err(CrystalError::InvalidSlope(format!("{num}/0")));
        }
        let ratio = BigRational::new(num, den);
        if ratio.is_negative() {
            return Err(CrystalError::InvalidSlope(ratio.to_string()));
        }
        Ok(Slope(ratio))
    }

    pub fn integer(n: impl Into<BigInt>) -> Result<Self, CrystalError> {
        Self::new(n, 1)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Denominator as a machine integer; cycle lengths never exceed `usize`.
    pub fn denom_usize(&self) -> usize {
        self.0.denom().to_usize().expect("slope denominator fits in usize")
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    /// `floor(q * self)`.
    pub fn floor_times(&self, q: &BigInt) -> BigInt {
        (q * self.numer()).div_floor(self.denom())
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

/// The exponent sequence `(e_1, ..., e_r)` of one cycle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentCycle {
    exponents: Vec<BigInt>,
}

impl ExponentCycle {
    pub fn new(exponents: Vec<BigInt>) -> Result<Self, CrystalError> {
        if exponents.is_empty() {
            return Err(CrystalError::EmptyCycle);
        }
        if let Some((position, value)) = exponents.iter().enumerate().find(|(_, e)| e.is_negative()) {
            return Err(CrystalError::NegativeExponent { position: position + 1, value: value.clone() });
        }
        Ok(ExponentCycle { exponents })
    }

    pub fn from_u64s(exponents: &[u64]) -> Result<Self, CrystalError> {
        Self::new(exponents.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn exponents(&self) -> &[BigInt] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sum(&self) -> BigInt {
        self.exponents.iter().sum()
    }

    /// Newton slope `sum / len`.
    pub fn slope(&self) -> Slope {
        Slope::new(self.sum(), BigInt::from(self.len())).expect("exponent sums are non-negative")
    }

    /// Cyclic window sum `e_{start} + ... + e_{start+q-1}` with a 0-based start.
    pub(crate) fn window(&self, start: usize, q: &BigUint) -> BigInt {
        let r = self.len();
        let r_big = BigUint::from(r);
        let (full, rem) = q.div_rem(&r_big);
        let rem = rem.to_usize().expect("remainder is below the cycle length");
        let partial: BigInt = (0..rem).map(|t| &self.exponents[(start + t) % r]).sum();
        BigInt::from(full) * self.sum() + partial
    }

    pub(crate) fn window_small(&self, start: usize, q: usize) -> BigInt {
        self.window(start, &BigUint::from(q))
    }

    /// Rotates the basis so that the new `v_1` is the old `v_{1+k}`.
    pub fn rotated(&self, k: usize) -> ExponentCycle {
        let r = self.len();
        let exponents = (0..r).map(|i| self.exponents[(i + k) % r].clone()).collect();
        ExponentCycle { exponents }
    }
}

/// A permutation-form F-crystal: a direct sum of exponent cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicFCrystal {
    cycles: Vec<ExponentCycle>,
}

impl CyclicFCrystal {
    pub fn new(cycles: Vec<ExponentCycle>) -> Result<Self, CrystalError> {
        if cycles.is_empty() {
            return Err(CrystalError::NoCycles);
        }
        Ok(CyclicFCrystal { cycles })
    }

    pub fn from_u64_cycles(cycles: &[&[u64]]) -> Result<Self, CrystalError> {
        Self::new(cycles.iter().map(|c| ExponentCycle::from_u64s(c)).collect::<Result<_, _>>()?)
    }

    pub fn cycles(&self) -> &[ExponentCycle] {
        &self.cycles
    }

    pub fn rank(&self) -> usize {
        self.cycles.iter().map(ExponentCycle::len).sum()
    }

    pub fn direct_sum(&self, other: &CyclicFCrystal) -> CyclicFCrystal {
        let mut cycles = self.cycles.clone();
        cycles.extend(other.cycles.iter().cloned());
        CyclicFCrystal { cycles }
    }

    /// Cycles ordered by (slope, length, exponents lexicographically).
    pub fn canonical(&self) -> CyclicFCrystal {
        let mut cycles = self.cycles.clone();
        cycles.sort_by(|a, b| {
            a.slope()
                .cmp(&b.slope())
                .then(a.len().cmp(&b.len()))
                .then_with(|| a.exponents.cmp(&b.exponents))
        });
        CyclicFCrystal { cycles }
    }

    /// Least common multiple of the cycle lengths.
    pub fn period(&self) -> usize {
        self.cycles.iter().fold(1usize, |acc, c| acc.lcm(&c.len()))
    }

    pub fn is_isoclinic(&self) -> bool {
        let first = self.cycles[0].slope();
        self.cycles.iter().all(|c| c.slope() == first)
    }
}

/// Newton polygon as slopes with rank multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    slopes: Vec<(Slope, usize)>,
}

impl NewtonPolygon {
    /// Requires strictly increasing slopes and positive multiplicities.
    pub fn new(slopes: Vec<(Slope, usize)>) -> Result<Self, CrystalError> {
        if slopes.is_empty()
            || slopes.iter().any(|(_, m)| *m == 0)
            || slopes.windows(2).any(|w| w[0].0 >= w[1].0)
        {
            return Err(CrystalError::MalformedPolygon);
        }
        Ok(NewtonPolygon { slopes })
    }

    /// Merges repeated slopes and sorts.
    pub fn from_unsorted(mut slopes: Vec<(Slope, usize)>) -> Result<Self, CrystalError> {
        slopes.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Slope, usize)> = Vec::with_capacity(slopes.len());
        for (slope, mult) in slopes {
            match merged.last_mut() {
                Some((last, m)) if *last == slope => *m += mult,
                _ => merged.push((slope, mult)),
            }
        }
        Self::new(merged)
    }

    pub fn slopes(&self) -> &[(Slope, usize)] {
        &self.slopes
    }

    pub fn rank(&self) -> usize {
        self.slopes.iter().map(|(_, m)| m).sum()
    }
}

/// Where condition (*) fails: cycle index (0-based), position `i` and power `q`
/// (both 1-based), and the offending `epsilon_q(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityWitness {
    pub cycle: usize,
    pub i: usize,
    pub q: usize,
    pub epsilon: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityReport {
    pub witness: Option<MinimalityWitness>,
}

impl MinimalityReport {
    pub fn is_minimal(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn newton_slopes(c: &CyclicFCrystal) -> NewtonPolygon {
    NewtonPolygon::from_unsorted(c.cycles.iter().map(|cy| (cy.slope(), cy.len())).collect())
        .expect("every cycle contributes a positive multiplicity")
}

pub fn hodge_slopes(c: &CyclicFCrystal) -> Vec<BigInt> {
    let mut all: Vec<BigInt> = c.cycles.iter().flat_map(|cy| cy.exponents.iter().cloned()).collect();
    all.sort();
    all
}

/// Exponent of `phi^q(v_i) = p^{?} v_{i+q}`: the cyclic window sum starting at `i` (1-based).
pub fn phi_power_exponent(cycle: &ExponentCycle, i: usize, q: &BigUint) -> Result<BigInt, CrystalError> {
    if i == 0 || i > cycle.len() {
        return Err(CrystalError::IndexOutOfRange { i, len: cycle.len() });
    }
    if q.is_zero() {
        return Err(CrystalError::ZeroPower);
    }
    Ok(cycle.window(i - 1, q))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaBetaDelta {
    pub alpha: BigInt,
    pub beta: BigInt,
    pub delta: BigInt,
}

/// `alpha(q)` is the largest power with `phi^q(M) ⊂ p^alpha M`, `beta(q)` the
/// smallest with `p^beta M ⊂ phi^q(M)`; for a permutation form these are the
/// extreme window sums.
pub fn alpha_beta_delta(c: &CyclicFCrystal, q: &BigUint) -> Result<AlphaBetaDelta, CrystalError> {
    if q.is_zero() {
        return Err(CrystalError::ZeroPower);
    }
    let mut sums = c.cycles.iter().flat_map(|cy| (0..cy.len()).map(move |a| cy.window(a, q)));
    let first = sums.next().expect("crystals have at least one basis vector");
    let (alpha, beta) = sums.fold((first.clone(), first), |(lo, hi), w| {
        let lo = if w < lo { w.clone() } else { lo };
        let hi = if w > hi { w } else { hi };
        (lo, hi)
    });
    let delta = &beta - &alpha;
    Ok(AlphaBetaDelta { alpha, beta, delta })
}

fn cycle_minimality(cycle: &ExponentCycle) -> Option<(usize, usize, BigInt)> {
    let slope = cycle.slope();
    let r = cycle.len();
    for q in 1..=r {
        let floor = slope.floor_times(&BigInt::from(q));
        for i in 1..=r {
            let epsilon = cycle.window_small(i - 1, q) - &floor;
            if !(epsilon.is_zero() || epsilon.is_one()) {
                return Some((i, q, epsilon));
            }
        }
    }
    None
}

/// Checks `phi^q(v_i) = p^{floor(q lambda) + eps} v_{i+q}` with `eps ∈ {0, 1}` for
/// all `1 <= i, q <= r` on every cycle, each with its own slope.
pub fn is_minimal(c: &CyclicFCrystal) -> MinimalityReport {
    let witness = c.cycles.iter().enumerate().find_map(|(index, cycle)| {
        cycle_minimality(cycle).map(|(i, q, epsilon)| MinimalityWitness { cycle: index, i, q, epsilon })
    });
    MinimalityReport { witness }
}

pub fn is_cycle_minimal(cycle: &ExponentCycle) -> bool {
    cycle_minimality(cycle).is_none()
}

/// The minimal exponent cycle of slope `s/r`: `e_i = floor(i s/r) - floor((i-1) s/r)`.
pub fn minimal_eta(lambda: &Slope) -> ExponentCycle {
    let r = lambda.denom_usize();
    let exponents = (1..=r)
        .map(|i| lambda.floor_times(&BigInt::from(i)) - lambda.floor_times(&BigInt::from(i - 1)))
        .collect();
    ExponentCycle { exponents }
}

/// The minimal crystal of a Newton polygon: `mult / den` copies of the minimal
/// cycle of each slope.
pub fn minimal_crystal(nu: &NewtonPolygon) -> Result<CyclicFCrystal, CrystalError> {
    let mut cycles = Vec::new();
    for (slope, mult) in &nu.slopes {
        let r = slope.denom_usize();
        if mult % r != 0 {
            return Err(CrystalError::MultiplicityNotDivisible { slope: slope.clone(), multiplicity: *mult });
        }
        let eta = minimal_eta(slope);
        cycles.extend(std::iter::repeat_n(eta, mult / r));
    }
    CyclicFCrystal::new(cycles)
}

/// For a minimal cycle of slope `s/r'` (reduced), checks that the exponents
/// repeat with period `r'`.
pub fn check_periodicity(cycle: &ExponentCycle) -> Result<bool, CrystalError> {
    if !is_cycle_minimal(cycle) {
        return Err(CrystalError::NotMinimal { exponents: cycle.exponents.clone() });
    }
    let period = cycle.slope().denom_usize();
    let r = cycle.len();
    Ok((0..r).all(|i| cycle.exponents[i] == cycle.exponents[(i + period) % r]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(e: &[u64]) -> ExponentCycle {
        ExponentCycle::from_u64s(e).unwrap()
    }

    fn crystal(cs: &[&[u64]]) -> CyclicFCrystal {
        CyclicFCrystal::from_u64_cycles(cs).unwrap()
    }

    fn slope(n: i64, d: i64) -> Slope {
        Slope::new(n, d).unwrap()
    }

    fn q(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn newton_slopes_examples() {
        assert_eq!(newton_slopes(&crystal(&[&[0, 1, 1]])).slopes(), &[(slope(2, 3), 3)]);
        assert_eq!(
            newton_slopes(&crystal(&[&[0, 1], &[1]])).slopes(),
            &[(slope(1, 2), 2), (slope(1, 1), 1)]
        );
        assert_eq!(newton_slopes(&crystal(&[&[0]])).slopes(), &[(slope(0, 1), 1)]);
    }

    #[test]
    fn newton_slopes_merges_equal_slopes() {
        let nu = newton_slopes(&crystal(&[&[0, 1], &[1, 0], &[1]]));
        assert_eq!(nu.slopes(), &[(slope(1, 2), 4), (slope(1, 1), 1)]);
        assert_eq!(nu.rank(), 5);
    }

    #[test]
    fn hodge_slopes_examples() {
        let h = |cs: &[&[u64]]| -> Vec<BigInt> { hodge_slopes(&crystal(cs)) };
        let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(h(&[&[0, 1, 3]]), ints(&[0, 1, 3]));
        assert_eq!(h(&[&[1, 2, 1]]), ints(&[1, 1, 2]));
        assert_eq!(h(&[&[0, 1], &[1]]), ints(&[0, 1, 1]));
    }

    #[test]
    fn phi_power_exponent_examples() {
        assert_eq!(phi_power_exponent(&cyc(&[0, 1, 1]), 1, &q(2)).unwrap(), BigInt::from(1));
        assert_eq!(phi_power_exponent(&cyc(&[0, 1, 1]), 3, &q(3)).unwrap(), BigInt::from(2));
        assert_eq!(phi_power_exponent(&cyc(&[5]), 1, &q(4)).unwrap(), BigInt::from(20));
    }

    #[test]
    fn phi_power_exponent_rejects_bad_arguments() {
        assert_eq!(
            phi_power_exponent(&cyc(&[0, 1]), 3, &q(1)),
            Err(CrystalError::IndexOutOfRange { i: 3, len: 2 })
        );
        assert_eq!(phi_power_exponent(&cyc(&[0, 1]), 0, &q(1)), Err(CrystalError::IndexOutOfRange { i: 0, len: 2 }));
        assert_eq!(phi_power_exponent(&cyc(&[0, 1]), 1, &q(0)), Err(CrystalError::ZeroPower));
    }

    #[test]
    fn huge_exponents_do_not_overflow() {
        let big = BigInt::from(u64::MAX) * BigInt::from(u64::MAX);
        let c = ExponentCycle::new(vec![big.clone(), BigInt::zero()]).unwrap();
        let w = phi_power_exponent(&c, 1, &(BigUint::from(u64::MAX) * 2u32)).unwrap();
        assert_eq!(w, big * BigInt::from(u64::MAX));
    }

    #[test]
    fn alpha_beta_delta_examples() {
        let abd = |cs: &[&[u64]], qq: u64| {
            let r = alpha_beta_delta(&crystal(cs), &q(qq)).unwrap();
            (r.alpha, r.beta, r.delta)
        };
        let t = |a: i64, b: i64, d: i64| (BigInt::from(a), BigInt::from(b), BigInt::from(d));
        assert_eq!(abd(&[&[0, 1, 1]], 2), t(1, 2, 1));
        assert_eq!(abd(&[&[0, 1, 1]], 3), t(2, 2, 0));
        assert_eq!(abd(&[&[3, 3]], 1), t(3, 3, 0));
    }

    #[test]
    fn is_minimal_examples() {
        assert!(is_minimal(&crystal(&[&[0, 1]])).is_minimal());
        let report = is_minimal(&crystal(&[&[0, 0, 1, 1]]));
        assert_eq!(
            report.witness,
            Some(MinimalityWitness { cycle: 0, i: 1, q: 2, epsilon: BigInt::from(-1) })
        );
        assert!(is_minimal(&crystal(&[&[3, 3, 3]])).is_minimal());
    }

    #[test]
    fn witness_names_the_failing_cycle() {
        let report = is_minimal(&crystal(&[&[0, 1], &[0, 0, 2]]));
        let w = report.witness.unwrap();
        assert_eq!(w.cycle, 1);
        assert!(w.epsilon != BigInt::zero() && w.epsilon != BigInt::one());
    }

    #[test]
    fn minimal_eta_examples() {
        assert_eq!(minimal_eta(&slope(4, 3)), cyc(&[1, 1, 2]));
        assert_eq!(minimal_eta(&slope(2, 5)), cyc(&[0, 0, 1, 0, 1]));
        assert_eq!(minimal_eta(&slope(0, 1)), cyc(&[0]));
    }

    #[test]
    fn minimal_crystal_examples() {
        let nu = NewtonPolygon::new(vec![(slope(1, 2), 4)]).unwrap();
        assert_eq!(minimal_crystal(&nu).unwrap(), crystal(&[&[0, 1], &[0, 1]]));
        let nu = NewtonPolygon::new(vec![(slope(0, 1), 1), (slope(1, 1), 1)]).unwrap();
        assert_eq!(minimal_crystal(&nu).unwrap(), crystal(&[&[0], &[1]]));
        let nu = NewtonPolygon::new(vec![(slope(1, 3), 2)]).unwrap();
        assert_eq!(
            minimal_crystal(&nu),
            Err(CrystalError::MultiplicityNotDivisible { slope: slope(1, 3), multiplicity: 2 })
        );
    }

    #[test]
    fn periodicity_examples() {
        assert_eq!(check_periodicity(&cyc(&[0, 1, 0, 1])), Ok(true));
        assert_eq!(check_periodicity(&cyc(&[0, 1])), Ok(true));
        let eta = minimal_eta(&slope(2, 5));
        let doubled: Vec<BigInt> = eta.exponents().iter().chain(eta.exponents()).cloned().collect();
        assert_eq!(check_periodicity(&ExponentCycle::new(doubled).unwrap()), Ok(true));
        assert!(matches!(check_periodicity(&cyc(&[0, 0, 1, 1])), Err(CrystalError::NotMinimal { .. })));
    }

    #[test]
    fn constructors_validate() {
        assert_eq!(ExponentCycle::new(vec![]), Err(CrystalError::EmptyCycle));
        assert!(matches!(
            ExponentCycle::new(vec![BigInt::from(1), BigInt::from(-2)]),
            Err(CrystalError::NegativeExponent { position: 2, .. })
        ));
        assert_eq!(CyclicFCrystal::new(vec![]), Err(CrystalError::NoCycles));
        assert!(Slope::new(1, 0).is_err());
        assert!(Slope::new(-1, 2).is_err());
        assert_eq!(slope(4, 6), slope(2, 3));
        assert!(NewtonPolygon::new(vec![(slope(1, 2), 2), (slope(1, 2), 2)]).is_err());
        assert!(NewtonPolygon::new(vec![(slope(1, 2), 0)]).is_err());
    }

    #[test]
    fn canonical_order() {
        let c = crystal(&[&[1], &[1, 0], &[0, 1], &[0]]).canonical();
        assert_eq!(c, crystal(&[&[0], &[0, 1], &[1, 0], &[1]]));
    }

    #[test]
    fn minimal_eta_is_minimal_for_small_slopes() {
        for r in 1..=12i64 {
            for s in 0..=3 * r {
                if s.gcd(&r) != 1 {
                    continue;
                }
                let eta = minimal_eta(&slope(s, r));
                assert_eq!(eta.len() as i64, r);
                assert_eq!(eta.sum(), BigInt::from(s));
                assert!(is_cycle_minimal(&eta), "{s}/{r}");
            }
        }
    }

    fn cycle_strategy() -> impl Strategy<Value = ExponentCycle> {
        prop::collection::vec(0u64..5, 1..=8).prop_map(|v| ExponentCycle::from_u64s(&v).unwrap())
    }

    fn minimal_cycle_strategy() -> impl Strategy<Value = ExponentCycle> {
        (1i64..=8, 0i64..=24)
            .prop_filter("reduced", |(r, s)| s.gcd(r) == 1)
            .prop_map(|(r, s)| minimal_eta(&slope(s, r)))
    }

    proptest! {
        #[test]
        fn minimality_matches_delta_criterion(c in cycle_strategy()) {
            let single = CyclicFCrystal::new(vec![c.clone()]).unwrap();
            let by_delta = (1..=c.len() as u64)
                .all(|qq| alpha_beta_delta(&single, &q(qq)).unwrap().delta <= BigInt::one());
            prop_assert_eq!(is_minimal(&single).is_minimal(), by_delta);
        }

        #[test]
        fn window_extremes_are_periodic(c in cycle_strategy()) {
            let single = CyclicFCrystal::new(vec![c.clone()]).unwrap();
            let r = c.len() as u64;
            let sum = c.sum();
            for qq in 1..=2 * r {
                let lo = alpha_beta_delta(&single, &q(qq)).unwrap();
                let hi = alpha_beta_delta(&single, &q(qq + r)).unwrap();
                prop_assert_eq!(&hi.alpha, &(&lo.alpha + &sum));
                prop_assert_eq!(&hi.beta, &(&lo.beta + &sum));
                prop_assert_eq!(&hi.delta, &lo.delta);
            }
        }

        #[test]
        fn rotation_invariance(c in cycle_strategy(), k in 0usize..8) {
            let a = CyclicFCrystal::new(vec![c.clone()]).unwrap();
            let b = CyclicFCrystal::new(vec![c.rotated(k % c.len())]).unwrap();
            prop_assert_eq!(newton_slopes(&a), newton_slopes(&b));
            prop_assert_eq!(is_minimal(&a).is_minimal(), is_minimal(&b).is_minimal());
        }

        #[test]
        fn direct_sums_of_minimal_cycles_are_minimal(a in minimal_cycle_strategy(), b in minimal_cycle_strategy()) {
            let sum = CyclicFCrystal::new(vec![a, b]).unwrap();
            prop_assert!(is_minimal(&sum).is_minimal());
        }

        #[test]
        fn minimal_cycles_are_periodic(c in cycle_strategy()) {
            if is_cycle_minimal(&c) {
                prop_assert_eq!(check_periodicity(&c), Ok(true));
            }
        }

        #[test]
        fn minimal_crystal_round_trips_newton(parts in prop::collection::vec((1i64..=6, 0i64..=12, 1usize..=2), 1..=3)) {
            let slopes: Vec<(Slope, usize)> = parts
                .iter()
                .map(|&(r, s, k)| {
                    let sl = slope(s, r);
                    let den = sl.denom_usize();
                    (sl, den * k)
                })
                .collect();
            let nu = NewtonPolygon::from_unsorted(slopes).unwrap();
            let c = minimal_crystal(&nu).unwrap();
            prop_assert!(is_minimal(&c).is_minimal());
            prop_assert_eq!(newton_slopes(&c), nu);
        }
    }
}
