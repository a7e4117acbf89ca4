//! Level torsion of permutation-form crystals.
//!
//! For an isoclinic crystal the level torsion is `max_q delta(q)`. For a
//! direct sum it is the maximum of the pairwise drifts `l(j1, j2)` over pairs
//! with `slope(j1) <= slope(j2)`, where `l(j1, j2)` is the least `l` with
//! `p^l phi^q(Hom(M_j1, M_j2)) ⊂ Hom(M_j1, M_j2)` for all `q >= 0`.
//!
//! On the elementary homomorphisms `E_{a,b}: v_a -> w_b`,
//! `phi^q(E_{a,b}) = p^{D_q(a,b)} E_{a+q,b+q}` with
//! `D_q(a,b) = sum_{t<q} (f_{b+t} - e_{a+t})`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::crystal::{alpha_beta_delta, CyclicFCrystal, ExponentCycle, Slope};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LevelTorsionError {
    #[error("crystal is not isoclinic: slopes {}", fmt_slopes(.slopes))]
    NotIsoclinic { slopes: Vec<Slope> },
    #[error("source slope {source_slope} exceeds target slope {target_slope}")]
    SlopeOrder { source_slope: Box<Slope>, target_slope: Box<Slope> },
    #[error("need at least two summands, got {0}")]
    TooFewSummands(usize),
}

fn fmt_slopes(slopes: &[Slope]) -> String {
    slopes.iter().map(Slope::to_string).collect::<Vec<_>>().join(", ")
}

/// The drift `l(j1, j2)` and a triple `(q, a, b)` (positions 1-based) attaining
/// the minimum of `D_q(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomDrift {
    pub source: usize,
    pub target: usize,
    pub value: BigInt,
    pub q: usize,
    pub a: usize,
    pub b: usize,
}

fn distinct_slopes(c: &CyclicFCrystal) -> Vec<Slope> {
    let mut slopes: Vec<Slope> = c.cycles().iter().map(ExponentCycle::slope).collect();
    slopes.sort();
    slopes.dedup();
    slopes
}

/// `max_{1 <= q <= L} delta(q)` with `L` the lcm of cycle lengths. For an
/// isoclinic crystal `delta` has period `L`, so this is the supremum.
pub fn level_torsion_isoclinic(c: &CyclicFCrystal) -> Result<BigInt, LevelTorsionError> {
    let slopes = distinct_slopes(c);
    if slopes.len() > 1 {
        return Err(LevelTorsionError::NotIsoclinic { slopes });
    }
    let period = c.period();
    Ok((1..=period)
        .map(|q| alpha_beta_delta(c, &BigUint::from(q)).expect("q >= 1").delta)
        .max()
        .expect("period >= 1"))
}

/// `D_q(a, b)` with 0-based start positions.
pub(crate) fn drift(source: &ExponentCycle, target: &ExponentCycle, q: usize, a: usize, b: usize) -> BigInt {
    target.window_small(b, q) - source.window_small(a, q)
}

fn hom_drift_unchecked(c1: &ExponentCycle, c2: &ExponentCycle) -> (BigInt, usize, usize, usize) {
    let period = c1.len().lcm(&c2.len());
    let mut best: Option<(BigInt, usize, usize, usize)> = None;
    for q in 1..=period {
        for a in 0..c1.len() {
            for b in 0..c2.len() {
                let d = drift(c1, c2, q, a, b);
                if best.as_ref().is_none_or(|(m, ..)| d < *m) {
                    best = Some((d, q, a + 1, b + 1));
                }
            }
        }
    }
    let (min, q, a, b) = best.expect("period >= 1");
    // q = 0 contributes D = 0
    if min.is_positive() {
        (BigInt::zero(), 0, 1, 1)
    } else {
        (-min, q, a, b)
    }
}

/// Drift between two cycles; requires `slope(c1) <= slope(c2)`. The search runs
/// over `0 <= q <= lcm(len1, len2)` since `D_{q+L} = D_q + L (slope2 - slope1)`.
pub fn hom_level(c1: &ExponentCycle, c2: &ExponentCycle) -> Result<HomDrift, LevelTorsionError> {
    let (l1, l2) = (c1.slope(), c2.slope());
    if l1 > l2 {
        return Err(LevelTorsionError::SlopeOrder { source_slope: Box::new(l1), target_slope: Box::new(l2) });
    }
    let (value, q, a, b) = hom_drift_unchecked(c1, c2);
    Ok(HomDrift { source: 0, target: 0, value, q, a, b })
}

/// Level torsion of a direct sum of cycles, each cycle treated as an
/// isoclinic summand.
pub fn level_torsion(c: &CyclicFCrystal) -> BigInt {
    if c.cycles().len() == 1 {
        return level_torsion_isoclinic(c).expect("a single cycle is isoclinic");
    }
    hom_drifts(c).into_iter().map(|d| d.value).max().expect("at least one pair")
}

/// All pairwise drifts over ordered cycle pairs with non-decreasing slope.
pub fn hom_drifts(c: &CyclicFCrystal) -> Vec<HomDrift> {
    let cycles = c.cycles();
    let mut out = Vec::new();
    for (j1, c1) in cycles.iter().enumerate() {
        for (j2, c2) in cycles.iter().enumerate() {
            if let Ok(mut d) = hom_level(c1, c2) {
                d.source = j1;
                d.target = j2;
                out.push(d);
            }
        }
    }
    out
}

/// Cross-check of [`level_torsion`]: merges equal-slope cycles into isoclinic
/// blocks, takes the isoclinic level torsion of each block and the drifts
/// between blocks of different slopes.
pub fn level_torsion_by_blocks(c: &CyclicFCrystal) -> BigInt {
    let slopes = distinct_slopes(c);
    let blocks: Vec<Vec<&ExponentCycle>> = slopes
        .iter()
        .map(|s| c.cycles().iter().filter(|cy| cy.slope() == *s).collect())
        .collect();
    let mut best = BigInt::zero();
    for (i, block) in blocks.iter().enumerate() {
        let merged = CyclicFCrystal::new(block.iter().map(|&cy| cy.clone()).collect()).expect("non-empty block");
        best = best.max(level_torsion_isoclinic(&merged).expect("block is isoclinic"));
        for later in &blocks[i + 1..] {
            for c1 in block {
                for c2 in later {
                    best = best.max(hom_drift_unchecked(c1, c2).0);
                }
            }
        }
    }
    best
}

/// `max{1, n_j, n_j1 + n_j2 - 1 : j1 != j2}`.
pub fn n_bound_direct_sum(n_values: &[u64]) -> Result<u64, LevelTorsionError> {
    if n_values.len() < 2 {
        return Err(LevelTorsionError::TooFewSummands(n_values.len()));
    }
    let mut best = 1u64;
    for (i, &a) in n_values.iter().enumerate() {
        best = best.max(a);
        for (j, &b) in n_values.iter().enumerate() {
            if i != j {
                best = best.max((a + b).saturating_sub(1));
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::{minimal_crystal, NewtonPolygon};
    use proptest::prelude::*;

    fn cyc(e: &[u64]) -> ExponentCycle {
        ExponentCycle::from_u64s(e).unwrap()
    }

    fn crystal(cs: &[&[u64]]) -> CyclicFCrystal {
        CyclicFCrystal::from_u64_cycles(cs).unwrap()
    }

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn isoclinic_examples() {
        assert_eq!(level_torsion_isoclinic(&crystal(&[&[0, 1]])), Ok(int(1)));
        assert_eq!(level_torsion_isoclinic(&crystal(&[&[2, 2, 2]])), Ok(int(0)));
        assert_eq!(level_torsion_isoclinic(&crystal(&[&[0, 1, 1]])), Ok(int(1)));
    }

    #[test]
    fn isoclinic_rejects_mixed_slopes() {
        let err = level_torsion_isoclinic(&crystal(&[&[0, 1], &[1]])).unwrap_err();
        assert_eq!(
            err,
            LevelTorsionError::NotIsoclinic { slopes: vec![Slope::new(1, 2).unwrap(), Slope::new(1, 1).unwrap()] }
        );
        assert!(err.to_string().contains("1/2, 1/1"));
    }

    #[test]
    fn hom_level_examples() {
        let d = hom_level(&cyc(&[0, 1]), &cyc(&[1])).unwrap();
        assert_eq!((d.value, d.q, d.a, d.b), (int(0), 1, 2, 1));
        assert_eq!(hom_level(&cyc(&[0, 1]), &cyc(&[0, 1])).unwrap().value, int(1));
        let d = hom_level(&cyc(&[0]), &cyc(&[0])).unwrap();
        assert_eq!(d.value, int(0));
    }

    #[test]
    fn hom_level_witness_attains_minimum() {
        let (c1, c2) = (cyc(&[0, 0, 3]), cyc(&[1, 2]));
        let d = hom_level(&c1, &c2).unwrap();
        assert!(d.q >= 1);
        assert_eq!(-drift(&c1, &c2, d.q, d.a - 1, d.b - 1), d.value);
    }

    #[test]
    fn hom_level_ordinary_pair_uses_q_zero() {
        let d = hom_level(&cyc(&[0]), &cyc(&[3])).unwrap();
        assert_eq!((d.value, d.q), (int(0), 0));
    }

    #[test]
    fn hom_level_slope_order() {
        assert!(matches!(hom_level(&cyc(&[1]), &cyc(&[0, 1])), Err(LevelTorsionError::SlopeOrder { .. })));
    }

    #[test]
    fn level_torsion_examples() {
        assert_eq!(level_torsion(&crystal(&[&[0, 1], &[1]])), int(1));
        assert_eq!(level_torsion(&crystal(&[&[0], &[5]])), int(0));
        let nu = NewtonPolygon::new(vec![
            (Slope::new(1, 2).unwrap(), 2),
            (Slope::new(2, 3).unwrap(), 3),
        ])
        .unwrap();
        assert!(level_torsion(&minimal_crystal(&nu).unwrap()) <= int(1));
    }

    #[test]
    fn n_bound_examples() {
        assert_eq!(n_bound_direct_sum(&[1, 1]), Ok(1));
        assert_eq!(n_bound_direct_sum(&[0, 0]), Ok(1));
        assert_eq!(n_bound_direct_sum(&[2, 3, 1]), Ok(4));
        assert_eq!(n_bound_direct_sum(&[7]), Err(LevelTorsionError::TooFewSummands(1)));
    }

    fn cycle_strategy() -> impl Strategy<Value = ExponentCycle> {
        prop::collection::vec(0u64..5, 1..=6).prop_map(|v| ExponentCycle::from_u64s(&v).unwrap())
    }

    proptest! {
        #[test]
        fn single_cycle_paths_agree(c in cycle_strategy()) {
            let single = CyclicFCrystal::new(vec![c.clone()]).unwrap();
            let by_delta = (1..=c.len() as u64)
                .map(|q| alpha_beta_delta(&single, &BigUint::from(q)).unwrap().delta)
                .max()
                .unwrap();
            prop_assert_eq!(level_torsion(&single), by_delta.clone());
            prop_assert_eq!(level_torsion_isoclinic(&single).unwrap(), by_delta.clone());
            prop_assert_eq!(hom_level(&c, &c).unwrap().value, by_delta);
        }

        #[test]
        fn hom_level_rotation_invariant(a in cycle_strategy(), b in cycle_strategy(), k1 in 0usize..6, k2 in 0usize..6) {
            let (a, b) = if a.slope() <= b.slope() { (a, b) } else { (b, a) };
            let base = hom_level(&a, &b).unwrap().value;
            let rot = hom_level(&a.rotated(k1 % a.len()), &b.rotated(k2 % b.len())).unwrap().value;
            prop_assert_eq!(base, rot);
        }

        #[test]
        fn drift_shift_by_period(a in cycle_strategy(), b in cycle_strategy()) {
            let (a, b) = if a.slope() <= b.slope() { (a, b) } else { (b, a) };
            let l = a.len().lcm(&b.len());
            // L (lambda2 - lambda1) = L/r2 * S2 - L/r1 * S1
            let expected = BigInt::from(l / b.len()) * b.sum() - BigInt::from(l / a.len()) * a.sum();
            prop_assert!(!expected.is_negative());
            for q in 0..=2 * l {
                for s in 0..a.len() {
                    for t in 0..b.len() {
                        prop_assert_eq!(drift(&a, &b, q + l, s, t) - drift(&a, &b, q, s, t), expected.clone());
                    }
                }
            }
        }

        #[test]
        fn merged_blocks_agree(cs in prop::collection::vec(cycle_strategy(), 2..=4)) {
            let c = CyclicFCrystal::new(cs).unwrap();
            prop_assert_eq!(level_torsion(&c), level_torsion_by_blocks(&c));
        }
    }
}
