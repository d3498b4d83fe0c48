//! Relative BGG resolutions, direct-image bookkeeping, spectral-sequence
//! first pages, and assembled singular BGG complexes.
//!
//! For a semi-regular character the twistor-side resolution is indexed by
//! the leading-zero words; pushing each object down the other leg of the
//! double fibration either kills it (a repeated coordinate) or contributes
//! one orbit weight in a single cohomological degree, computed by sorting
//! the head coordinate into the tail. The surviving grid is the first page
//! of the transform's spectral sequence; its induced higher differentials
//! are the non-standard arrows, placed here by their bit patterns and
//! weighted by conformal-weight differences.

use crate::lsword::{
    added_box, ls_act, regular_hasse, ArrowKind, HasseArrow, HasseGraph, HasseNode, LSWord,
};
use crate::orbit::{
    collapse, orbit_weights, parity_split, singular_hasse, Parity, SingularCharacter, SingularKind,
};
use crate::weyl::Weight;
use crate::{Error, Rational, Result};
use num::Zero;
use std::collections::{BTreeMap, BTreeSet};

/// The generalized conformal weight of an unshifted weight, for the
/// parabolic crossing the long root: half the coordinate sum (the pairing
/// against the fundamental weight of the crossed node, normalized by the
/// long root).
pub fn conformal_weight(lambda: &Weight) -> Rational {
    assert!(
        !lambda.is_shifted(),
        "conformal weight takes an unshifted weight"
    );
    lambda.sum() / crate::rat(2)
}

/// Difference of generalized conformal weights between two weights in the
/// same shift convention; this is the order of the operator between the
/// two bundles, so anything but a positive integer signals a wiring bug.
pub fn operator_order(src: &Weight, dst: &Weight) -> Result<u32> {
    if src.is_shifted() != dst.is_shifted() {
        return Err(Error::BadOperatorOrder(format!(
            "mixed shift conventions: {src} vs {dst}"
        )));
    }
    let diff = (src.sum() - dst.sum()) / crate::rat(2);
    if !diff.is_integer() {
        return Err(Error::BadOperatorOrder(format!(
            "difference {diff} between {src} and {dst} is not an integer"
        )));
    }
    if !num::Signed::is_positive(&diff) {
        return Err(Error::BadOperatorOrder(format!(
            "difference {diff} between {src} and {dst} is not positive"
        )));
    }
    Ok(diff.to_integer().try_into().expect("order fits in u32"))
}

/// A weight for the intermediate parabolic, split as `[head | tail]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QWeight {
    pub head: Rational,
    /// Shifted weight of rank n-1, strictly decreasing on construction.
    pub tail: Weight,
}

impl QWeight {
    pub fn to_display(&self) -> String {
        let tail = self.tail.to_string();
        format!("[{} | {}", self.head, &tail[1..])
    }
}

/// One object of the relative BGG resolution.
#[derive(Debug, Clone)]
pub struct RelativeObject {
    /// Full word of rank n with leading digit 0.
    pub word: LSWord,
    /// The trailing n-1 digits, acting on the tail of the twistor weight.
    pub tail_word: LSWord,
    pub weight: QWeight,
}

/// The relative BGG resolution of a semi-regular character.
#[derive(Debug, Clone)]
pub struct RelativeBgg {
    pub n: usize,
    pub k: usize,
    pub head: Rational,
    pub objects: Vec<RelativeObject>,
    /// Arrows between full words, inherited from the rank n-1 diagram.
    pub arrows: Vec<(LSWord, LSWord)>,
}

/// Head and tail of the twistor-space weight `[head | tail]`: the head is
/// the coordinate value at the singular spot, the tail is the shifted
/// weight with one copy of it removed.
pub fn twistor_weight(sc: &SingularCharacter) -> QWeight {
    let n = sc.rank();
    let coords = sc.lambda_plus_rho().coords();
    let (head, drop) = match sc.kind() {
        SingularKind::First => (coords[sc.k() - 1].clone(), sc.k() + 1),
        SingularKind::Second => (Rational::zero(), n),
    };
    let tail: Vec<Rational> = (1..=n)
        .filter(|&i| i != drop)
        .map(|i| coords[i - 1].clone())
        .collect();
    QWeight {
        head,
        tail: Weight::new(tail, true),
    }
}

pub fn relative_bgg(sc: &SingularCharacter) -> RelativeBgg {
    let n = sc.rank();
    let base = twistor_weight(sc);
    let mut tails = LSWord::all(n - 1);
    tails.sort_by_key(|w| (w.ls_length(), w.clone()));
    let objects: Vec<RelativeObject> = tails
        .iter()
        .map(|t| RelativeObject {
            word: LSWord::concat(&[0], t),
            tail_word: t.clone(),
            weight: QWeight {
                head: base.head.clone(),
                tail: ls_act(t, &base.tail),
            },
        })
        .collect();
    let arrows = regular_hasse(n - 1)
        .arrow_pairs()
        .into_iter()
        .map(|(a, b)| (LSWord::concat(&[0], &a), LSWord::concat(&[0], &b)))
        .collect();
    RelativeBgg {
        n,
        k: sc.k(),
        head: base.head,
        objects,
        arrows,
    }
}

/// Bott-Borel-Weil pushdown of `[head | tail]`: `None` when the assembled
/// tuple has a repeated coordinate, otherwise the tuple sorted strictly
/// decreasing together with the degree, which counts the tail coordinates
/// strictly above the head (the adjacent transpositions needed to sink the
/// head into place).
pub fn direct_image(q: &QWeight) -> Option<(usize, Weight)> {
    let mut tuple = vec![q.head.clone()];
    tuple.extend(q.tail.coords().iter().cloned());
    for i in 0..tuple.len() {
        for j in (i + 1)..tuple.len() {
            if tuple[i] == tuple[j] {
                return None;
            }
        }
    }
    let degree = q.tail.coords().iter().filter(|t| **t > q.head).count();
    tuple.sort_by(|a, b| b.cmp(a));
    Some((degree, Weight::new(tuple, true)))
}

/// A relative-BGG object that survives the pushdown.
#[derive(Debug, Clone)]
pub struct Survivor {
    /// Source word in the relative resolution (leading digit 0).
    pub source: LSWord,
    pub tail_word: LSWord,
    /// Cohomological degree of the surviving direct image.
    pub degree: usize,
    pub weight: Weight,
    /// The singular-Hasse word whose orbit weight the image equals.
    pub target: LSWord,
}

/// Computes the surviving direct images and cross-checks them against the
/// closed-form description: first kind survives iff the k-th tail digit is
/// 1, with degree the number of zeros before it and target obtained by
/// widening that digit to 01; second kind always survives, with degree the
/// number of zero tail digits and target the tail word extended by 0.
pub fn survivors(sc: &SingularCharacter) -> Result<Vec<Survivor>> {
    let rel = relative_bgg(sc);
    let orbit = orbit_weights(sc);
    let k = sc.k();
    let mut out = Vec::new();
    for obj in &rel.objects {
        let image = direct_image(&obj.weight);
        let pattern_survives = match sc.kind() {
            SingularKind::First => obj.tail_word.bit(k) == 1,
            SingularKind::Second => true,
        };
        let Some((degree, weight)) = image else {
            if pattern_survives {
                return Err(Error::InvariantViolation(format!(
                    "object {} should survive but its direct image vanishes",
                    obj.word
                )));
            }
            continue;
        };
        if !pattern_survives {
            return Err(Error::InvariantViolation(format!(
                "object {} survives against the closed-form prediction",
                obj.word
            )));
        }
        let tail_bits = obj.tail_word.bits();
        let (expect_degree, target) = match sc.kind() {
            SingularKind::First => {
                let zeros = tail_bits[..k - 1].iter().filter(|&&b| b == 0).count();
                let mut bits = tail_bits[..k - 1].to_vec();
                bits.extend_from_slice(&[0, 1]);
                bits.extend_from_slice(&tail_bits[k..]);
                (zeros, LSWord::new(bits).expect("binary digits"))
            }
            SingularKind::Second => {
                let zeros = tail_bits.iter().filter(|&&b| b == 0).count();
                let mut bits = tail_bits.to_vec();
                bits.push(0);
                (zeros, LSWord::new(bits).expect("binary digits"))
            }
        };
        if degree != expect_degree {
            return Err(Error::InvariantViolation(format!(
                "object {}: direct-image degree {degree} != predicted {expect_degree}",
                obj.word
            )));
        }
        match orbit.get(&target) {
            Some(w) if *w == weight => {}
            other => {
                return Err(Error::InvariantViolation(format!(
                    "object {}: direct image {weight} does not match orbit weight {:?} at {target}",
                    obj.word, other
                )));
            }
        }
        out.push(Survivor {
            source: obj.word.clone(),
            tail_word: obj.tail_word.clone(),
            degree,
            weight,
            target,
        });
    }
    Ok(out)
}

/// One summand on the first page.
#[derive(Debug, Clone)]
pub struct PageEntry {
    /// Column: relative length of the source word.
    pub p: usize,
    /// Row: surviving degree.
    pub q: usize,
    pub weight: Weight,
    pub source: LSWord,
    pub target: LSWord,
}

impl PageEntry {
    /// The relative position of the entry: its source word without the
    /// leading zero.
    pub fn tail_of(&self) -> LSWord {
        LSWord::new(self.source.bits()[1..].to_vec()).expect("binary digits")
    }
}

/// A standard differential `(p, q) -> (p+1, q)` between two summands.
#[derive(Debug, Clone)]
pub struct PageArrow {
    pub p: usize,
    pub q: usize,
    pub src_source: LSWord,
    pub dst_source: LSWord,
}

/// The first page of the transform's spectral sequence. A grid slot may
/// carry several summands (their sources share relative length and degree),
/// so entries are kept as a list per slot.
#[derive(Debug, Clone)]
pub struct SpectralPage {
    pub n: usize,
    pub k: usize,
    pub entries: Vec<PageEntry>,
    pub arrows: Vec<PageArrow>,
}

impl SpectralPage {
    pub fn entries_at(&self, p: usize, q: usize) -> Vec<&PageEntry> {
        self.entries
            .iter()
            .filter(|e| e.p == p && e.q == q)
            .collect()
    }

    pub fn max_p(&self) -> usize {
        self.entries.iter().map(|e| e.p).max().unwrap_or(0)
    }

    pub fn max_q(&self) -> usize {
        self.entries.iter().map(|e| e.q).max().unwrap_or(0)
    }

    pub fn min_total(&self) -> usize {
        self.entries.iter().map(|e| e.p + e.q).min().unwrap_or(0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": 1,
            "rank": self.n,
            "k": self.k,
            "entries": self.entries.iter().map(|e| serde_json::json!({
                "p": e.p,
                "q": e.q,
                "weight": e.weight.to_string(),
                "source": e.source.to_string(),
                "target": e.target.to_string(),
            })).collect::<Vec<_>>(),
            "arrows": self.arrows.iter().map(|a| serde_json::json!({
                "from": [a.p, a.q],
                "to": [a.p + 1, a.q],
                "src_source": a.src_source.to_string(),
                "dst_source": a.dst_source.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Places the survivors on the grid and keeps the standard operators that
/// connect horizontally adjacent survivors of equal degree.
pub fn spectral_first_page(sc: &SingularCharacter) -> Result<SpectralPage> {
    let survivors = survivors(sc)?;
    let rel = relative_bgg(sc);
    let by_source: BTreeMap<LSWord, &Survivor> =
        survivors.iter().map(|s| (s.source.clone(), s)).collect();
    let mut entries: Vec<PageEntry> = survivors
        .iter()
        .map(|s| PageEntry {
            p: s.tail_word.ls_length(),
            q: s.degree,
            weight: s.weight.clone(),
            source: s.source.clone(),
            target: s.target.clone(),
        })
        .collect();
    entries.sort_by_key(|e| (e.q, e.p, e.source.clone()));
    let mut arrows = Vec::new();
    for (src, dst) in &rel.arrows {
        if let (Some(a), Some(b)) = (by_source.get(src), by_source.get(dst)) {
            if a.degree == b.degree {
                arrows.push(PageArrow {
                    p: a.tail_word.ls_length(),
                    q: a.degree,
                    src_source: src.clone(),
                    dst_source: dst.clone(),
                });
            }
        }
    }
    arrows.sort_by_key(|a| (a.q, a.p, a.src_source.clone()));
    Ok(SpectralPage {
        n: sc.rank(),
        k: sc.k(),
        entries,
        arrows,
    })
}

/// Endpoints of the non-standard operators, as singular-Hasse word pairs.
///
/// First kind, `2 <= k <= n-2`: the digit before the 01 block flips 0 -> 1
/// while the digit after flips 1 -> 0. First kind, `k = n-1`: the digit
/// before the trailing 01 flips 0 -> 1. Second kind: the two digits before
/// the trailing 0 flip 00 -> 11. For `k = 1` the pattern has no room on the
/// left and there are no non-standard operators.
pub fn nonstandard_arrows(sc: &SingularCharacter) -> Vec<(LSWord, LSWord)> {
    let n = sc.rank();
    let k = sc.k();
    let words = singular_hasse(n, k).expect("character carries valid (n, k)");
    let mut out = Vec::new();
    for u in &words {
        let pair = match sc.kind() {
            SingularKind::First if k == 1 => None,
            SingularKind::First if k <= n - 2 => {
                (u.bit(k - 1) == 0 && u.bit(k + 2) == 1).then(|| {
                    let mut bits = u.bits().to_vec();
                    bits[k - 2] = 1;
                    bits[k + 1] = 0;
                    LSWord::new(bits).expect("binary digits")
                })
            }
            SingularKind::First => {
                // k = n-1: trailing 01 block
                (u.bit(n - 2) == 0).then(|| {
                    let mut bits = u.bits().to_vec();
                    bits[n - 3] = 1;
                    LSWord::new(bits).expect("binary digits")
                })
            }
            SingularKind::Second => (n >= 3 && u.bit(n - 2) == 0 && u.bit(n - 1) == 0).then(|| {
                let mut bits = u.bits().to_vec();
                bits[n - 3] = 1;
                bits[n - 2] = 1;
                LSWord::new(bits).expect("binary digits")
            }),
        };
        if let Some(v) = pair {
            debug_assert!(words.contains(&v), "non-standard target {v} left the orbit");
            out.push((u.clone(), v));
        }
    }
    out.sort();
    out
}

/// A singular BGG complex: one singular orbit (or parity class), its
/// standard and non-standard arrows with operator orders, the collapse
/// grading, and the witnessed isomorphism onto the regular diagram of rank
/// n-2.
#[derive(Debug, Clone)]
pub struct SingularBGGComplex {
    pub n: usize,
    pub k: usize,
    pub kind: SingularKind,
    pub parity: Option<Parity>,
    pub graph: HasseGraph,
    pub grading: BTreeMap<LSWord, usize>,
    pub collapse_witness: BTreeMap<LSWord, LSWord>,
}

impl SingularBGGComplex {
    pub fn to_json(&self) -> serde_json::Value {
        let mut value = self.graph.to_json();
        let obj = value.as_object_mut().unwrap();
        obj.insert("rank".into(), self.n.into());
        obj.insert("k".into(), self.k.into());
        obj.insert(
            "parity".into(),
            match self.parity {
                Some(p) => p.as_str().into(),
                None => serde_json::Value::Null,
            },
        );
        obj.insert(
            "collapse".into(),
            serde_json::Value::Object(
                self.collapse_witness
                    .iter()
                    .map(|(w, c)| (w.to_string(), serde_json::Value::String(c.to_string())))
                    .collect(),
            ),
        );
        value
    }
}

/// Assembles the singular BGG complex for a semi-regular character; the
/// parity picks the class for the second kind and must be absent for the
/// first. Requires rank >= 2.
///
/// Standard arrows are the regular-Hasse arrows that stay inside the node
/// set; the spectral-page differentials are computed independently and the
/// two derivations are asserted equal. The collapse map is then checked to
/// be an arrow-preserving bijection onto the regular diagram of rank n-2,
/// with standard and non-standard arrows together matching its arrow set.
pub fn assemble_complex(
    sc: &SingularCharacter,
    parity: Option<Parity>,
) -> Result<SingularBGGComplex> {
    let n = sc.rank();
    let k = sc.k();
    assert!(n >= 2, "complex assembly needs rank >= 2");
    match (sc.kind(), parity) {
        (SingularKind::First, Some(_)) => return Err(Error::ParityOnFirstKind),
        (SingularKind::Second, None) => return Err(Error::MissingParity),
        _ => {}
    }

    let orbit = orbit_weights(sc);
    let node_words: Vec<LSWord> = match (sc.kind(), parity) {
        (SingularKind::First, _) => singular_hasse(n, k)?,
        (SingularKind::Second, Some(p)) => {
            let (even, odd) = parity_split(&singular_hasse(n, k)?)?;
            if p == Parity::Even {
                even
            } else {
                odd
            }
        }
        _ => unreachable!(),
    };
    let node_set: BTreeSet<LSWord> = node_words.iter().cloned().collect();

    // Standard arrows: regular arrows of the ambient diagram restricted to
    // the orbit (or class).
    let ambient = regular_hasse(n);
    let mut standard: Vec<(LSWord, LSWord)> = ambient
        .arrow_pairs()
        .into_iter()
        .filter(|(a, b)| node_set.contains(a) && node_set.contains(b))
        .collect();
    standard.sort();

    // Independent derivation via the first page.
    let page = spectral_first_page(sc)?;
    let target_of: BTreeMap<LSWord, LSWord> = page
        .entries
        .iter()
        .map(|e| (e.source.clone(), e.target.clone()))
        .collect();
    let mut from_page: Vec<(LSWord, LSWord)> = page
        .arrows
        .iter()
        .map(|a| {
            (
                target_of[&a.src_source].clone(),
                target_of[&a.dst_source].clone(),
            )
        })
        .filter(|(a, b)| node_set.contains(a) && node_set.contains(b))
        .collect();
    from_page.sort();
    if standard != from_page {
        return Err(Error::InvariantViolation(format!(
            "standard arrows disagree between the orbit restriction ({standard:?}) and the spectral page ({from_page:?})"
        )));
    }

    let nonstandard: Vec<(LSWord, LSWord)> = nonstandard_arrows(sc)
        .into_iter()
        .filter(|(a, b)| node_set.contains(a) && node_set.contains(b))
        .collect();

    // Collapse grading and the isomorphism witness.
    let mut grading = BTreeMap::new();
    let mut witness = BTreeMap::new();
    for w in &node_words {
        let c = collapse(w, k, sc.kind())?;
        grading.insert(w.clone(), c.ls_length());
        witness.insert(w.clone(), c);
    }
    let images: BTreeSet<LSWord> = witness.values().cloned().collect();
    let full: BTreeSet<LSWord> = LSWord::all(n - 2).into_iter().collect();
    if images != full || witness.len() != full.len() {
        return Err(Error::InvariantViolation(format!(
            "collapse is not a bijection onto the rank {} diagram",
            n - 2
        )));
    }
    let mut transported: Vec<(LSWord, LSWord)> = standard
        .iter()
        .chain(nonstandard.iter())
        .map(|(a, b)| (witness[a].clone(), witness[b].clone()))
        .collect();
    transported.sort();
    let mut lower: Vec<(LSWord, LSWord)> = regular_hasse(n - 2).arrow_pairs();
    lower.sort();
    if transported != lower {
        return Err(Error::InvariantViolation(format!(
            "transported arrows do not match the rank {} diagram",
            n - 2
        )));
    }

    // Build the graph with weights, grid positions and operator orders.
    let mut sorted_words = node_words.clone();
    sorted_words.sort_by_key(|w| (grading[w], w.clone()));
    let mut level_width: BTreeMap<usize, usize> = BTreeMap::new();
    let nodes: Vec<HasseNode> = sorted_words
        .iter()
        .map(|w| {
            let level = grading[w];
            let col = level_width.entry(level).or_insert(0);
            let pos = (level, *col);
            *col += 1;
            HasseNode {
                word: w.clone(),
                weight: Some(orbit[w].clone()),
                pos: Some(pos),
            }
        })
        .collect();
    let index: BTreeMap<LSWord, usize> = nodes
        .iter()
        .enumerate()
        .map(|(i, node)| (node.word.clone(), i))
        .collect();
    let mut arrows = Vec::new();
    for (src, dst) in &standard {
        debug_assert_eq!(grading[dst], grading[src] + 1);
        arrows.push(HasseArrow {
            src: index[src],
            dst: index[dst],
            label: Some(added_box(src, dst)),
            kind: ArrowKind::Standard,
            order: Some(operator_order(&orbit[src], &orbit[dst])?),
        });
    }
    for (src, dst) in &nonstandard {
        debug_assert_eq!(grading[dst], grading[src] + 1);
        arrows.push(HasseArrow {
            src: index[src],
            dst: index[dst],
            label: None,
            kind: ArrowKind::NonStandard,
            order: Some(operator_order(&orbit[src], &orbit[dst])?),
        });
    }
    arrows.sort_by_key(|a| (a.src, a.dst, a.kind));

    Ok(SingularBGGComplex {
        n,
        k,
        kind: sc.kind(),
        parity,
        graph: HasseGraph { nodes, arrows },
        grading,
        collapse_witness: witness,
    })
}

/// The combinatorial shadow of `d^2 = 0`: every arrow must raise the
/// grading by exactly one, and every two-step path must sit inside a
/// (possibly degenerate) square whose middle count matches the image
/// square in the regular diagram of rank n-2.
pub fn check_cochain(cx: &SingularBGGComplex) -> bool {
    for a in &cx.graph.arrows {
        let src = &cx.graph.nodes[a.src].word;
        let dst = &cx.graph.nodes[a.dst].word;
        if cx.grading[dst] != cx.grading[src] + 1 {
            return false;
        }
    }
    let succ = cx.graph.successors();
    let lower = regular_hasse(cx.n - 2);
    let lower_succ = lower.successors();
    for (u, vs) in &succ {
        for v in vs {
            for w in &succ[v] {
                let middles = succ[u].iter().filter(|m| succ[*m].contains(w)).count();
                let cu = &cx.collapse_witness[u];
                let cw = &cx.collapse_witness[w];
                let lower_middles = lower_succ[cu]
                    .iter()
                    .filter(|m| lower_succ[*m].contains(cw))
                    .count();
                if middles != lower_middles || !(middles == 1 || middles == 2) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn sc(n: usize, k: usize) -> SingularCharacter {
        SingularCharacter::minimal(n, k).unwrap()
    }

    fn w(s: &str) -> LSWord {
        LSWord::parse(s).unwrap()
    }

    fn wpairs(list: &[(&str, &str)]) -> Vec<(LSWord, LSWord)> {
        list.iter().map(|(a, b)| (w(a), w(b))).collect()
    }

    #[test]
    fn twistor_weight_examples() {
        let q = twistor_weight(&sc(4, 3));
        assert_eq!(q.head, rat(1));
        assert_eq!(q.tail, Weight::from_ints(&[3, 2, 1], true));
        assert_eq!(q.to_display(), "[1 | 3,2,1]");

        let q = twistor_weight(&sc(4, 4));
        assert_eq!(q.head, rat(0));
        assert_eq!(q.tail, Weight::from_ints(&[3, 2, 1], true));
    }

    #[test]
    fn relative_bgg_examples() {
        let rel = relative_bgg(&sc(4, 3));
        assert_eq!(rel.objects.len(), 8);
        assert_eq!(rel.objects[0].word, w("0000"));
        assert_eq!(
            rel.objects[0].weight.tail,
            Weight::from_ints(&[3, 2, 1], true)
        );
        let last = rel.objects.iter().find(|o| o.word == w("0111")).unwrap();
        assert_eq!(last.weight.head, rat(1));
        assert_eq!(last.weight.tail, Weight::from_ints(&[-1, -2, -3], true));

        // second kind only swaps the head for 0
        let rel = relative_bgg(&sc(4, 4));
        assert!(rel.objects.iter().all(|o| o.weight.head == rat(0)));
        // the tails are strictly decreasing by construction
        assert!(rel
            .objects
            .iter()
            .all(|o| o.weight.tail.is_strictly_decreasing()));
    }

    #[test]
    fn direct_image_examples() {
        let q = |head: i64, tail: &[i64]| QWeight {
            head: rat(head),
            tail: Weight::from_ints(tail, true),
        };
        // repeated coordinate dies
        assert_eq!(direct_image(&q(1, &[3, 2, 1])), None);
        // head sinks past 3 and 2: degree two
        assert_eq!(
            direct_image(&q(1, &[3, 2, -1])),
            Some((2, Weight::from_ints(&[3, 2, 1, -1], true)))
        );
        assert_eq!(
            direct_image(&q(0, &[3, 2, 1])),
            Some((3, Weight::from_ints(&[3, 2, 1, 0], true)))
        );
        assert_eq!(
            direct_image(&q(1, &[-1, -2, -3])),
            Some((0, Weight::from_ints(&[1, -1, -2, -3], true)))
        );
    }

    #[test]
    fn survivors_first_kind_rank4() {
        let survivors = survivors(&sc(4, 3)).unwrap();
        assert_eq!(survivors.len(), 4);
        let mut degrees: Vec<usize> = survivors.iter().map(|s| s.degree).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![0, 1, 1, 2]);
        let s = survivors.iter().find(|s| s.source == w("0001")).unwrap();
        assert_eq!(s.degree, 2);
        assert_eq!(s.target, w("0001"));
        assert_eq!(s.weight, Weight::from_ints(&[3, 2, 1, -1], true));
    }

    #[test]
    fn survivors_second_kind_rank4() {
        let survivors = survivors(&sc(4, 4)).unwrap();
        assert_eq!(survivors.len(), 8);
        let mut degrees: Vec<usize> = survivors.iter().map(|s| s.degree).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![0, 1, 1, 1, 2, 2, 2, 3]);
        for s in &survivors {
            assert_eq!(s.target.bits().last(), Some(&0));
        }
    }

    #[test]
    fn survivors_rank5_degree_multisets() {
        let mut degrees: Vec<usize> = survivors(&sc(5, 5))
            .unwrap()
            .iter()
            .map(|s| s.degree)
            .collect();
        degrees.sort_unstable();
        assert_eq!(
            degrees,
            vec![0, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 4]
        );
    }

    #[test]
    fn spectral_page_first_kind_rank4() {
        let page = spectral_first_page(&sc(4, 3)).unwrap();
        let cells: Vec<(usize, usize, String)> = page
            .entries
            .iter()
            .map(|e| (e.p, e.q, e.weight.to_string()))
            .collect();
        assert_eq!(
            cells,
            vec![
                (6, 0, "[1,-1,-2,-3]".to_string()),
                (3, 1, "[3,1,-1,-2]".to_string()),
                (4, 1, "[2,1,-1,-3]".to_string()),
                (1, 2, "[3,2,1,-1]".to_string()),
            ]
        );
        assert_eq!(page.arrows.len(), 1);
        assert_eq!(page.arrows[0].src_source, w("0011"));
        assert_eq!(page.arrows[0].dst_source, w("0101"));
        assert_eq!((page.arrows[0].p, page.arrows[0].q), (3, 1));
        assert_eq!(page.min_total(), 3);
    }

    #[test]
    fn spectral_page_second_kind_rank4() {
        let page = spectral_first_page(&sc(4, 4)).unwrap();
        let cells: Vec<(usize, usize, String)> = page
            .entries
            .iter()
            .map(|e| (e.p, e.q, e.weight.to_string()))
            .collect();
        assert_eq!(
            cells,
            vec![
                (6, 0, "[0,-1,-2,-3]".to_string()),
                (3, 1, "[3,0,-1,-2]".to_string()),
                (4, 1, "[2,0,-1,-3]".to_string()),
                (5, 1, "[1,0,-2,-3]".to_string()),
                (1, 2, "[3,2,0,-1]".to_string()),
                (2, 2, "[3,1,0,-2]".to_string()),
                (3, 2, "[2,1,0,-3]".to_string()),
                (0, 3, "[3,2,1,0]".to_string()),
            ]
        );
        let arrow_cells: Vec<(usize, usize)> = page.arrows.iter().map(|a| (a.p, a.q)).collect();
        assert_eq!(arrow_cells, vec![(3, 1), (4, 1), (1, 2), (2, 2)]);
        assert_eq!(page.min_total(), 3);
    }

    #[test]
    fn spectral_page_degenerate_and_multi_summand() {
        let page = spectral_first_page(&sc(2, 1)).unwrap();
        assert_eq!(page.entries.len(), 1);
        assert_eq!((page.entries[0].p, page.entries[0].q), (1, 0));

        // rank 5, k = 3: two summands share the slot (6, 1)
        let page = spectral_first_page(&sc(5, 3)).unwrap();
        let slot = page.entries_at(6, 1);
        assert_eq!(slot.len(), 2);
        let sources: BTreeSet<String> = slot.iter().map(|e| e.source.to_string()).collect();
        assert_eq!(
            sources,
            BTreeSet::from(["00111".to_string(), "01010".to_string()])
        );
    }

    #[test]
    fn minimal_total_degree_is_rank_minus_one() {
        for n in 2..=7 {
            for k in 1..=n {
                let page = spectral_first_page(&sc(n, k)).unwrap();
                assert_eq!(page.min_total(), n - 1, "min p+q at n={n}, k={k}");
            }
        }
    }

    #[test]
    fn nonstandard_arrow_examples() {
        assert_eq!(
            nonstandard_arrows(&sc(4, 3)),
            wpairs(&[("0001", "0101"), ("1001", "1101")])
        );
        assert_eq!(
            nonstandard_arrows(&sc(4, 4)),
            wpairs(&[("0000", "0110"), ("1000", "1110")])
        );
        assert!(nonstandard_arrows(&sc(4, 1)).is_empty());
        assert_eq!(nonstandard_arrows(&sc(3, 2)), wpairs(&[("001", "101")]));
        assert_eq!(nonstandard_arrows(&sc(3, 3)), wpairs(&[("000", "110")]));
    }

    #[test]
    fn nonstandard_arrows_rank5_match_known_sets() {
        assert!(nonstandard_arrows(&sc(5, 1)).is_empty());
        assert_eq!(
            nonstandard_arrows(&sc(5, 2)),
            wpairs(&[("00110", "10100"), ("00111", "10101")])
        );
        assert_eq!(
            nonstandard_arrows(&sc(5, 3)),
            wpairs(&[("00011", "01010"), ("10011", "11010")])
        );
        assert_eq!(
            nonstandard_arrows(&sc(5, 4)),
            wpairs(&[
                ("00001", "00101"),
                ("01001", "01101"),
                ("10001", "10101"),
                ("11001", "11101")
            ])
        );
        assert_eq!(
            nonstandard_arrows(&sc(5, 5)),
            wpairs(&[
                ("00000", "00110"),
                ("01000", "01110"),
                ("10000", "10110"),
                ("11000", "11110")
            ])
        );
    }

    #[test]
    fn nonstandard_preserves_parity() {
        for n in 3..=8 {
            for (a, b) in nonstandard_arrows(&sc(n, n)) {
                assert_eq!(a.popcount() % 2, b.popcount() % 2);
            }
        }
    }

    #[test]
    fn assemble_first_kind_rank4_is_a_chain() {
        let cx = assemble_complex(&sc(4, 3), None).unwrap();
        assert_eq!(cx.graph.nodes.len(), 4);
        let words: Vec<String> = cx.graph.nodes.iter().map(|n| n.word.to_string()).collect();
        assert_eq!(words, vec!["0001", "0101", "1001", "1101"]);
        let orders: Vec<(String, String, ArrowKind, u32)> = cx
            .graph
            .arrows
            .iter()
            .map(|a| {
                (
                    cx.graph.nodes[a.src].word.to_string(),
                    cx.graph.nodes[a.dst].word.to_string(),
                    a.kind,
                    a.order.unwrap(),
                )
            })
            .collect();
        assert!(orders.contains(&("0001".into(), "0101".into(), ArrowKind::NonStandard, 2)));
        assert!(orders.contains(&("0101".into(), "1001".into(), ArrowKind::Standard, 1)));
        assert!(orders.contains(&("1001".into(), "1101".into(), ArrowKind::NonStandard, 2)));
        assert_eq!(cx.graph.arrows.len(), 3);
    }

    #[test]
    fn assemble_second_kind_rank4_even_chain() {
        let cx = assemble_complex(&sc(4, 4), Some(Parity::Even)).unwrap();
        let words: Vec<String> = cx.graph.nodes.iter().map(|n| n.word.to_string()).collect();
        assert_eq!(words, vec!["0000", "0110", "1010", "1100"]);
        let ns: Vec<_> = cx
            .graph
            .arrows
            .iter()
            .filter(|a| a.kind == ArrowKind::NonStandard)
            .collect();
        assert_eq!(ns.len(), 1);
        assert_eq!(cx.graph.nodes[ns[0].src].word, w("0000"));
        assert_eq!(cx.graph.nodes[ns[0].dst].word, w("0110"));
        assert_eq!(ns[0].order, Some(3));
    }

    #[test]
    fn assemble_parity_validation() {
        assert!(matches!(
            assemble_complex(&sc(4, 4), None),
            Err(Error::MissingParity)
        ));
        assert!(matches!(
            assemble_complex(&sc(4, 3), Some(Parity::Even)),
            Err(Error::ParityOnFirstKind)
        ));
    }

    #[test]
    fn assemble_degenerate_rank2() {
        let cx = assemble_complex(&sc(2, 1), None).unwrap();
        assert_eq!(cx.graph.nodes.len(), 1);
        assert!(cx.graph.arrows.is_empty());
        for parity in [Parity::Even, Parity::Odd] {
            let cx = assemble_complex(&sc(2, 2), Some(parity)).unwrap();
            assert_eq!(cx.graph.nodes.len(), 1);
            assert!(cx.graph.arrows.is_empty());
        }
    }

    #[test]
    fn assembled_complexes_are_isomorphic_to_lower_rank() {
        for n in 2..=8 {
            for k in 1..=n {
                let character = sc(n, k);
                let parities: Vec<Option<Parity>> = if k == n {
                    vec![Some(Parity::Even), Some(Parity::Odd)]
                } else {
                    vec![None]
                };
                for parity in parities {
                    let cx = assemble_complex(&character, parity).unwrap();
                    assert_eq!(cx.graph.nodes.len(), 1 << (n - 2));
                    assert_eq!(cx.graph.arrows.len(), regular_hasse(n - 2).arrows.len());
                }
            }
        }
    }

    #[test]
    fn operator_orders_in_minimal_complexes() {
        for n in 2..=8 {
            for k in 1..=n {
                let character = sc(n, k);
                let parities: Vec<Option<Parity>> = if k == n {
                    vec![Some(Parity::Even), Some(Parity::Odd)]
                } else {
                    vec![None]
                };
                for parity in parities {
                    let cx = assemble_complex(&character, parity).unwrap();
                    for a in &cx.graph.arrows {
                        let expect = match a.kind {
                            ArrowKind::Standard => 1,
                            ArrowKind::NonStandard => {
                                if k == n {
                                    3
                                } else {
                                    2
                                }
                            }
                        };
                        assert_eq!(a.order, Some(expect), "n={n}, k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn cochain_property_holds_and_detects_corruption() {
        let cx = assemble_complex(&sc(4, 3), None).unwrap();
        assert!(check_cochain(&cx));

        let cx = assemble_complex(&sc(6, 3), None).unwrap();
        assert!(check_cochain(&cx));
        assert_eq!(cx.graph.square_count(), regular_hasse(4).square_count());

        // corrupt one arrow: reroute it two levels up
        let mut bad = assemble_complex(&sc(6, 3), None).unwrap();
        let target = bad
            .graph
            .nodes
            .iter()
            .position(|n| bad.grading[&n.word] == 3)
            .unwrap();
        let arrow = bad
            .graph
            .arrows
            .iter()
            .position(|a| bad.grading[&bad.graph.nodes[a.src].word] == 1)
            .unwrap();
        bad.graph.arrows[arrow].dst = target;
        assert!(!check_cochain(&bad));

        // corrupt a square: drop one of its two sides, leaving a 2-path
        // whose interval has a single middle where the regular diagram
        // has two
        let mut broken = assemble_complex(&sc(6, 3), None).unwrap();
        let succ = broken.graph.successors();
        let (u, v1) = succ
            .iter()
            .find_map(|(u, vs)| {
                for v1 in vs {
                    for w in &succ[v1] {
                        let middles = vs.iter().filter(|m| succ[*m].contains(w)).count();
                        if middles == 2 {
                            return Some((u.clone(), v1.clone()));
                        }
                    }
                }
                None
            })
            .expect("the rank 4 image contains a square");
        let side = broken
            .graph
            .arrows
            .iter()
            .position(|a| {
                broken.graph.nodes[a.src].word == u && broken.graph.nodes[a.dst].word == v1
            })
            .unwrap();
        broken.graph.arrows.remove(side);
        assert!(!check_cochain(&broken));
    }

    #[test]
    fn conformal_weight_examples() {
        assert_eq!(conformal_weight(&Weight::zero(3)), rat(0));
        assert_eq!(
            conformal_weight(&Weight::from_ints(&[-1, -1, -1], false)),
            Rational::new((-3).into(), 2.into())
        );
        assert_eq!(
            conformal_weight(&Weight::from_ints(&[-3, -3, -3], false)),
            Rational::new((-9).into(), 2.into())
        );
    }

    #[test]
    fn operator_order_examples() {
        let order = |a: &[i64], b: &[i64]| {
            operator_order(&Weight::from_ints(a, true), &Weight::from_ints(b, true))
        };
        assert_eq!(order(&[3, 2, 1, -1], &[3, 1, -1, -2]).unwrap(), 2);
        assert_eq!(order(&[2, 1, 0], &[0, -1, -2]).unwrap(), 3);
        assert_eq!(order(&[3, 1, -1, -2], &[2, 1, -1, -3]).unwrap(), 1);
        assert!(order(&[1, 0], &[2, 0]).is_err());
        assert!(order(&[2, 0], &[1, 0]).is_err());
    }

    #[test]
    fn nonminimal_characters_assemble_with_larger_orders() {
        // only the coordinate order pattern matters for the combinatorics;
        // the operator orders grow with the character
        let first =
            SingularCharacter::from_shifted(Weight::from_ints(&[7, 4, 4, 2, 1], true)).unwrap();
        assert_eq!(first.k(), 2);
        let cx = assemble_complex(&first, None).unwrap();
        assert_eq!(cx.graph.nodes.len(), 8);
        for a in &cx.graph.arrows {
            assert!(a.order.unwrap() >= 1);
        }
        let ns_orders: Vec<u32> = cx
            .graph
            .arrows
            .iter()
            .filter(|a| a.kind == ArrowKind::NonStandard)
            .map(|a| a.order.unwrap())
            .collect();
        assert!(!ns_orders.is_empty());
        assert!(
            ns_orders.iter().all(|&o| o > 2),
            "non-minimal orders grow: {ns_orders:?}"
        );
        assert!(check_cochain(&cx));

        let second =
            SingularCharacter::from_shifted(Weight::from_ints(&[9, 5, 2, 0], true)).unwrap();
        assert_eq!(second.kind(), SingularKind::Second);
        for parity in [Parity::Even, Parity::Odd] {
            let cx = assemble_complex(&second, Some(parity)).unwrap();
            assert_eq!(cx.graph.nodes.len(), 4);
            assert!(check_cochain(&cx));
        }
    }

    #[test]
    fn qweight_display() {
        let q = QWeight {
            head: rat(1),
            tail: Weight::from_ints(&[3, 2, -1], true),
        };
        assert_eq!(q.to_display(), "[1 | 3,2,-1]");
    }
}
