//! Semi-regular singular infinitesimal characters and their orbits.
//!
//! A dominant integral `lambda + rho` is semi-regular when it is orthogonal
//! to exactly one simple root `alpha_k`. For `k < n` (first kind) the
//! shifted weight has two equal adjacent coordinates; for `k = n` (second
//! kind) it ends in 0. The strictly dominant part of the orbit is carved
//! out of the word encoding by a fixed bit pattern, and deleting that
//! pattern collapses everything to rank n-2.

use crate::lsword::{ls_act, LSWord};
use crate::weyl::Weight;
use crate::{Error, Result};
use num::Zero;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularKind {
    /// Orthogonal to a short simple root (`k < n`).
    First,
    /// Orthogonal to the long simple root (`k = n`).
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(count: usize) -> Parity {
        if count.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// A semi-regular singular infinitesimal character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularCharacter {
    n: usize,
    k: usize,
    lambda_plus_rho: Weight,
    kind: SingularKind,
}

impl SingularCharacter {
    /// The minimal semi-regular `lambda + rho` with `Sigma = {alpha_k}`:
    /// the value n-k is duplicated at positions k, k+1 for `k < n`, and the
    /// staircase ends in 0 for `k = n`.
    pub fn minimal(n: usize, k: usize) -> Result<SingularCharacter> {
        if n == 0 || k == 0 || k > n {
            return Err(Error::InvalidIndex { k, n });
        }
        let coords: Vec<i64> = (1..=n)
            .map(|i| {
                if i <= k {
                    (n - i) as i64
                } else {
                    (n + 1 - i) as i64
                }
            })
            .collect();
        SingularCharacter::from_shifted(Weight::from_ints(&coords, true))
    }

    /// Classify an arbitrary dominant integral shifted weight. Only the
    /// order pattern of the coordinates matters downstream, so any
    /// semi-regular value is accepted; more than one singular root is
    /// rejected as unsupported higher singularity.
    pub fn from_shifted(lambda_plus_rho: Weight) -> Result<SingularCharacter> {
        let singular = singular_simple_roots(&lambda_plus_rho)?;
        let n = lambda_plus_rho.rank();
        match singular.len() {
            1 => {
                let k = *singular.iter().next().unwrap();
                let kind = if k < n {
                    SingularKind::First
                } else {
                    SingularKind::Second
                };
                Ok(SingularCharacter {
                    n,
                    k,
                    lambda_plus_rho,
                    kind,
                })
            }
            0 => Err(Error::NotDominant(format!(
                "{lambda_plus_rho} is regular, not semi-regular"
            ))),
            _ => Err(Error::HigherSingularity {
                indices: singular.into_iter().collect(),
            }),
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn kind(&self) -> SingularKind {
        self.kind
    }

    pub fn lambda_plus_rho(&self) -> &Weight {
        &self.lambda_plus_rho
    }

    /// Whether this is the minimal character of its (n, k) class.
    pub fn is_minimal(&self) -> bool {
        SingularCharacter::minimal(self.n, self.k)
            .map(|m| m.lambda_plus_rho == self.lambda_plus_rho)
            .unwrap_or(false)
    }
}

/// The set of simple-root indices on which a dominant integral shifted
/// weight is singular: `k < n` where coordinates k and k+1 agree, plus n
/// when the last coordinate vanishes.
pub fn singular_simple_roots(
    lambda_plus_rho: &Weight,
) -> Result<std::collections::BTreeSet<usize>> {
    if !lambda_plus_rho.is_shifted() {
        return Err(Error::NotDominant(format!(
            "{lambda_plus_rho} must be given in the rho-shifted convention"
        )));
    }
    if !lambda_plus_rho.is_dominant() || !lambda_plus_rho.is_integral() {
        return Err(Error::NotDominant(lambda_plus_rho.to_string()));
    }
    let n = lambda_plus_rho.rank();
    let coords = lambda_plus_rho.coords();
    let mut out = std::collections::BTreeSet::new();
    for k in 1..n {
        if coords[k - 1] == coords[k] {
            out.insert(k);
        }
    }
    if n > 0 && coords[n - 1].is_zero() {
        out.insert(n);
    }
    Ok(out)
}

/// The singular Hasse diagram as a word set: first kind selects the words
/// with digits (k, k+1) equal to 01, second kind the words ending in 0.
pub fn singular_hasse(n: usize, k: usize) -> Result<Vec<LSWord>> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::InvalidIndex { k, n });
    }
    let mut words: Vec<LSWord> = LSWord::all(n)
        .into_iter()
        .filter(|w| {
            if k < n {
                w.bit(k) == 0 && w.bit(k + 1) == 1
            } else {
                w.bit(n) == 0
            }
        })
        .collect();
    words.sort_by_key(|w| (w.ls_length(), w.clone()));
    Ok(words)
}

/// Splits a second-kind singular Hasse set by the parity of the number of
/// ones. First-kind input (any word not ending in 0) is rejected: the
/// splitting is a second-kind notion.
pub fn parity_split(words: &[LSWord]) -> Result<(Vec<LSWord>, Vec<LSWord>)> {
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for w in words {
        if w.rank() == 0 || w.bit(w.rank()) != 0 {
            return Err(Error::ParityOnFirstKind);
        }
        match Parity::of(w.popcount()) {
            Parity::Even => even.push(w.clone()),
            Parity::Odd => odd.push(w.clone()),
        }
    }
    Ok((even, odd))
}

/// The rank-lowering collapse: first kind deletes the 01 pattern at
/// positions (k, k+1), second kind deletes the last two digits.
pub fn collapse(w: &LSWord, k: usize, kind: SingularKind) -> Result<LSWord> {
    let n = w.rank();
    if n < 2 {
        return Err(Error::InvalidIndex { k, n });
    }
    let member = match kind {
        SingularKind::First => k < n && w.bit(k) == 0 && w.bit(k + 1) == 1,
        SingularKind::Second => k == n && w.bit(n) == 0,
    };
    if !member {
        return Err(Error::NotSingularWord {
            word: w.to_string(),
            k,
        });
    }
    Ok(match kind {
        SingularKind::First => w.without_positions(&[k, k + 1]),
        SingularKind::Second => w.without_positions(&[n - 1, n]),
    })
}

/// The singular orbit: each Hasse word mapped to its strictly dominant
/// shifted weight.
pub fn orbit_weights(sc: &SingularCharacter) -> BTreeMap<LSWord, Weight> {
    let words = singular_hasse(sc.rank(), sc.k()).expect("character carries valid (n, k)");
    words
        .into_iter()
        .map(|w| {
            let weight = ls_act(&w, sc.lambda_plus_rho());
            debug_assert!(
                weight.is_strictly_decreasing(),
                "orbit weight {weight} not strict"
            );
            (w, weight)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lsword::ls_to_weyl;
    use crate::weyl::{min_coset_reps, RankCaps};
    use std::collections::BTreeSet;

    fn words(list: &[&str]) -> Vec<LSWord> {
        list.iter().map(|s| LSWord::parse(s).unwrap()).collect()
    }

    #[test]
    fn minimal_characters() {
        let sc = SingularCharacter::minimal(4, 3).unwrap();
        assert_eq!(
            sc.lambda_plus_rho(),
            &Weight::from_ints(&[3, 2, 1, 1], true)
        );
        assert_eq!(sc.kind(), SingularKind::First);
        assert!(sc.is_minimal());

        let sc = SingularCharacter::minimal(4, 4).unwrap();
        assert_eq!(
            sc.lambda_plus_rho(),
            &Weight::from_ints(&[3, 2, 1, 0], true)
        );
        assert_eq!(sc.kind(), SingularKind::Second);

        let sc = SingularCharacter::minimal(3, 3).unwrap();
        assert_eq!(sc.lambda_plus_rho(), &Weight::from_ints(&[2, 1, 0], true));

        assert!(SingularCharacter::minimal(4, 0).is_err());
        assert!(SingularCharacter::minimal(4, 5).is_err());
    }

    #[test]
    fn nonminimal_characters_accepted_by_order_pattern() {
        let sc =
            SingularCharacter::from_shifted(Weight::from_ints(&[7, 4, 2, 2, 1], true)).unwrap();
        assert_eq!(sc.k(), 3);
        assert_eq!(sc.kind(), SingularKind::First);
        assert!(!sc.is_minimal());
    }

    #[test]
    fn singular_roots_examples() {
        let s = |coords: &[i64]| singular_simple_roots(&Weight::from_ints(coords, true)).unwrap();
        assert_eq!(s(&[3, 2, 1, 1]), BTreeSet::from([3]));
        assert_eq!(s(&[4, 3, 2, 1]), BTreeSet::new());
        assert_eq!(s(&[3, 2, 1, 0]), BTreeSet::from([4]));
        assert_eq!(s(&[2, 1, 1, 0]), BTreeSet::from([2, 4]));
        assert!(singular_simple_roots(&Weight::from_ints(&[1, 2, 3, 4], true)).is_err());
    }

    #[test]
    fn higher_singularity_rejected() {
        let err = SingularCharacter::from_shifted(Weight::from_ints(&[2, 1, 1, 0], true));
        assert!(matches!(err, Err(Error::HigherSingularity { .. })));
    }

    #[test]
    fn singular_hasse_examples() {
        assert_eq!(
            singular_hasse(4, 3).unwrap(),
            words(&["0001", "0101", "1001", "1101"])
        );
        assert_eq!(singular_hasse(4, 4).unwrap().len(), 8);
        assert!(singular_hasse(4, 4).unwrap().iter().all(|w| w.bit(4) == 0));
        let h51 = singular_hasse(5, 1).unwrap();
        assert_eq!(h51.len(), 8);
        assert!(h51.iter().all(|w| w.bit(1) == 0 && w.bit(2) == 1));
    }

    #[test]
    fn singular_hasse_matches_coset_oracle() {
        let caps = RankCaps::default();
        for n in 1..=5 {
            for k in 1..=n {
                let via_words: BTreeSet<_> = singular_hasse(n, k)
                    .unwrap()
                    .iter()
                    .map(ls_to_weyl)
                    .collect();
                let via_cosets: BTreeSet<_> = min_coset_reps(n, &[k], &caps)
                    .unwrap()
                    .into_iter()
                    .collect();
                assert_eq!(via_words, via_cosets, "mismatch at n={n}, k={k}");
            }
        }
    }

    #[test]
    fn parity_split_examples() {
        let (even, odd) = parity_split(&singular_hasse(4, 4).unwrap()).unwrap();
        assert_eq!(even, words(&["0000", "0110", "1010", "1100"]));
        assert_eq!(odd, words(&["0010", "0100", "1000", "1110"]));

        let (even3, _) = parity_split(&singular_hasse(3, 3).unwrap()).unwrap();
        assert_eq!(even3, words(&["000", "110"]));

        assert!(matches!(
            parity_split(&singular_hasse(4, 3).unwrap()),
            Err(Error::ParityOnFirstKind)
        ));
    }

    #[test]
    fn collapse_examples() {
        let c = |w: &str, k, kind| collapse(&LSWord::parse(w).unwrap(), k, kind).unwrap();
        assert_eq!(
            c("0101", 3, SingularKind::First),
            LSWord::parse("01").unwrap()
        );
        assert_eq!(
            c("1100", 4, SingularKind::Second),
            LSWord::parse("11").unwrap()
        );
        assert_eq!(
            c("0001", 3, SingularKind::First),
            LSWord::parse("00").unwrap()
        );
        assert!(collapse(&LSWord::parse("0011").unwrap(), 3, SingularKind::First).is_err());
    }

    #[test]
    fn collapse_is_bijective_per_orbit_and_parity_class() {
        for n in 2..=6 {
            for k in 1..n {
                let images: BTreeSet<_> = singular_hasse(n, k)
                    .unwrap()
                    .iter()
                    .map(|w| collapse(w, k, SingularKind::First).unwrap())
                    .collect();
                let full: BTreeSet<_> = LSWord::all(n - 2).into_iter().collect();
                assert_eq!(images, full, "first kind collapse n={n} k={k}");
            }
            let (even, odd) = parity_split(&singular_hasse(n, n).unwrap()).unwrap();
            for class in [even, odd] {
                assert_eq!(class.len(), 1 << (n - 2), "class size at n={n}");
                let images: BTreeSet<_> = class
                    .iter()
                    .map(|w| collapse(w, n, SingularKind::Second).unwrap())
                    .collect();
                let full: BTreeSet<_> = LSWord::all(n - 2).into_iter().collect();
                assert_eq!(images, full, "second kind collapse n={n}");
            }
        }
    }

    #[test]
    fn orbit_weight_examples() {
        let ow = orbit_weights(&SingularCharacter::minimal(4, 3).unwrap());
        assert_eq!(
            ow[&LSWord::parse("1001").unwrap()],
            Weight::from_ints(&[2, 1, -1, -3], true)
        );

        let ow = orbit_weights(&SingularCharacter::minimal(4, 4).unwrap());
        assert_eq!(
            ow[&LSWord::parse("0110").unwrap()],
            Weight::from_ints(&[3, 0, -1, -2], true)
        );

        let ow = orbit_weights(&SingularCharacter::minimal(3, 3).unwrap());
        assert_eq!(
            ow[&LSWord::parse("000").unwrap()],
            Weight::from_ints(&[2, 1, 0], true)
        );
    }

    #[test]
    fn rank4_orbits_are_pinned() {
        // both rank-4 singular orbits in full, keyed by word
        let listed = |n: usize, k: usize| -> Vec<(String, String)> {
            let sc = SingularCharacter::minimal(n, k).unwrap();
            let ow = orbit_weights(&sc);
            ow.iter()
                .map(|(w, v)| (w.to_string(), v.to_string()))
                .collect()
        };
        assert_eq!(
            listed(4, 3),
            vec![
                ("0001".into(), "[3,2,1,-1]".into()),
                ("0101".into(), "[3,1,-1,-2]".into()),
                ("1001".into(), "[2,1,-1,-3]".into()),
                ("1101".into(), "[1,-1,-2,-3]".into()),
            ]
        );
        assert_eq!(
            listed(4, 4),
            vec![
                ("0000".into(), "[3,2,1,0]".into()),
                ("0010".into(), "[3,2,0,-1]".into()),
                ("0100".into(), "[3,1,0,-2]".into()),
                ("0110".into(), "[3,0,-1,-2]".into()),
                ("1000".into(), "[2,1,0,-3]".into()),
                ("1010".into(), "[2,0,-1,-3]".into()),
                ("1100".into(), "[1,0,-2,-3]".into()),
                ("1110".into(), "[0,-1,-2,-3]".into()),
            ]
        );
    }

    #[test]
    fn orbit_weights_strictly_decreasing_and_distinct() {
        for n in 1..=6 {
            for k in 1..=n {
                let ow = orbit_weights(&SingularCharacter::minimal(n, k).unwrap());
                let mut seen = BTreeSet::new();
                for w in ow.values() {
                    assert!(w.is_strictly_decreasing(), "{w} not strict (n={n}, k={k})");
                    assert!(seen.insert(w.to_string()), "duplicate orbit weight {w}");
                }
            }
        }
    }
}
