//! Cross-checking suite: every fast encoding is replayed against the
//! brute-force signed-permutation oracles, and every structural theorem
//! the crate relies on is executed rather than trusted.
//!
//! Each family reports pass/fail plus a counterexample dump on failure so
//! a regression pinpoints itself. The optional [`Fault`] hook corrupts one
//! comparison on purpose; it exists to prove the counterexample path works
//! and is reachable only through an explicit, hidden opt-in.

use crate::diffop::{det_operator, operator_d, surjectivity_rank};
use crate::lsword::{
    inductive_split, ls_act, ls_to_diagram, ls_to_weyl, regular_hasse, relative_hasse_eta,
    relative_hasse_tau, LSWord,
};
use crate::orbit::{
    orbit_weights, parity_split, singular_hasse, Parity, SingularCharacter, SingularKind,
};
use crate::penrose::{assemble_complex, check_cochain, spectral_first_page, survivors};
use crate::weyl::{
    enumerate_weyl, hasse_bruteforce, lengths_by_bfs, min_coset_reps, RankCaps, Weight, WeylElement,
};
use crate::{rat, ArrowKind};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::collections::{BTreeMap, BTreeSet};

/// Deliberate corruptions for exercising the failure path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Off-by-one on one word's length inside the Hasse bijection check.
    LsLength,
}

impl Fault {
    pub fn parse(name: &str) -> Option<Fault> {
        match name {
            "ls-length" => Some(Fault::LsLength),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub family: &'static str,
    pub passed: bool,
    pub detail: String,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub max_rank: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "schema": 1,
            "max_rank": self.max_rank,
            "passed": self.all_passed(),
            "checks": self.checks.iter().map(|c| json!({
                "family": c.family,
                "passed": c.passed,
                "detail": c.detail,
                "counterexample": c.counterexample,
            })).collect::<Vec<_>>(),
        })
    }
}

type Check = std::result::Result<String, String>;

fn record(report: &mut VerifyReport, family: &'static str, outcome: Check) {
    let check = match outcome {
        Ok(detail) => CheckResult {
            family,
            passed: true,
            detail,
            counterexample: None,
        },
        Err(ce) => CheckResult {
            family,
            passed: false,
            detail: "failed".to_string(),
            counterexample: Some(ce),
        },
    };
    report.checks.push(check);
}

/// Runs every family up to `max_rank` (each family also honors its own
/// brute-force cap from `caps`).
pub fn run_all(max_rank: usize, caps: &RankCaps, fault: Option<Fault>) -> VerifyReport {
    let mut report = VerifyReport {
        max_rank,
        checks: Vec::new(),
    };
    let enum_cap = max_rank.min(caps.enumeration);
    let coset_cap = max_rank.min(caps.coset_search);
    let complex_cap = max_rank.min(8);

    record(
        &mut report,
        "weyl-group-axioms",
        weyl_axioms(max_rank.min(5)),
    );
    record(
        &mut report,
        "weyl-enumeration",
        weyl_enumeration(enum_cap, caps),
    );
    record(&mut report, "length-vs-bfs", length_bfs(max_rank.min(3)));
    record(
        &mut report,
        "hasse-bijection",
        hasse_bijection(enum_cap.min(6), caps, fault),
    );
    record(&mut report, "ls-action-vs-weyl", ls_action(max_rank.min(6)));
    record(
        &mut report,
        "singular-vs-coset-reps",
        coset_reps(coset_cap, caps),
    );
    record(
        &mut report,
        "relative-hasse",
        relative_hasse(max_rank.min(8)),
    );
    record(
        &mut report,
        "inductive-split",
        inductive_split_check(max_rank.min(8)),
    );
    record(&mut report, "bbw-survivors", bbw_survivors(complex_cap));
    record(&mut report, "spectral-pages", spectral_pages(complex_cap));
    record(
        &mut report,
        "complex-isomorphism",
        complex_isomorphism(complex_cap),
    );
    record(&mut report, "operator-orders", operator_orders(complex_cap));
    record(&mut report, "cochain-squares", cochain_squares(complex_cap));
    record(
        &mut report,
        "parity-structure",
        parity_structure(complex_cap),
    );
    record(&mut report, "diffop-det-identity", diffop_identity());
    record(&mut report, "diffop-surjectivity", diffop_surjectivity());
    report
}

fn weyl_axioms(max: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut tried = 0;
    for n in 1..=max {
        let id = WeylElement::identity(n);
        for _ in 0..40 {
            tried += 1;
            let a = random_element(n, &mut rng);
            let b = random_element(n, &mut rng);
            let c = random_element(n, &mut rng);
            if a.compose(&b).compose(&c) != a.compose(&b.compose(&c)) {
                return Err(format!("associativity fails for {a}, {b}, {c}"));
            }
            if a.compose(&a.inverse()) != id || a.compose(&id) != a {
                return Err(format!("inverse/identity fails for {a}"));
            }
            if a.compose(&b).length() > a.length() + b.length() {
                return Err(format!("length subadditivity fails for {a}, {b}"));
            }
            if a.inverse().length() != a.length() {
                return Err(format!("length of inverse differs for {a}"));
            }
            let coords: Vec<i64> = (0..n).map(|_| rng.gen_range(-9..=9)).collect();
            let lam = Weight::from_ints(&coords, false);
            if a.act(&lam.negated()).unwrap() != a.act(&lam).unwrap().negated() {
                return Err(format!("linearity fails for {a} on {lam}"));
            }
        }
    }
    Ok(format!("{tried} random triples, ranks 1..={max}"))
}

fn random_element(n: usize, rng: &mut ChaCha8Rng) -> WeylElement {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let signs = (0..n)
        .map(|_| if rng.gen::<bool>() { 1 } else { -1 })
        .collect();
    WeylElement::new(perm, signs).expect("random signed permutation")
}

fn weyl_enumeration(max: usize, caps: &RankCaps) -> Check {
    for n in 1..=max {
        let all = enumerate_weyl(n, caps).map_err(|e| e.to_string())?;
        let expected = (1usize << n) * (1..=n).product::<usize>();
        if all.len() != expected {
            return Err(format!(
                "rank {n}: {} elements, expected {expected}",
                all.len()
            ));
        }
        let distinct: std::collections::HashSet<_> = all.iter().collect();
        if distinct.len() != expected {
            return Err(format!("rank {n}: duplicates in enumeration"));
        }
    }
    Ok(format!(
        "|W(C_n)| = 2^n n! with no duplicates, ranks 1..={max}"
    ))
}

fn length_bfs(max: usize) -> Check {
    for n in 1..=max {
        for (w, d) in lengths_by_bfs(n) {
            if w.length() != d {
                return Err(format!(
                    "rank {n}: {} has length {} but BFS distance {d}",
                    w,
                    w.length()
                ));
            }
        }
    }
    Ok(format!(
        "inversion-count length equals BFS distance, ranks 1..={max}"
    ))
}

fn hasse_bijection(max: usize, caps: &RankCaps, fault: Option<Fault>) -> Check {
    for n in 1..=max {
        let brute = hasse_bruteforce(n, caps).map_err(|e| e.to_string())?;
        let brute_set: BTreeSet<WeylElement> = brute.iter().cloned().collect();
        let mut image = BTreeSet::new();
        for w in LSWord::all(n) {
            let elem = ls_to_weyl(&w);
            let mut ls_len = w.ls_length();
            if fault == Some(Fault::LsLength) && w.popcount() == n && n > 0 {
                ls_len += 1;
            }
            if elem.length() != ls_len {
                return Err(format!(
                    "rank {n}, word {w}: ls_length {ls_len} != brute-force length {}",
                    elem.length()
                ));
            }
            if elem.phi_set() != ls_to_diagram(&w).boxes() {
                return Err(format!("rank {n}, word {w}: diagram boxes differ from Phi"));
            }
            image.insert(elem);
        }
        if image != brute_set {
            return Err(format!(
                "rank {n}: word image differs from brute-force Hasse set"
            ));
        }
        // arrows against the cover relation
        let graph = regular_hasse(n);
        let mut expected = BTreeSet::new();
        let words = LSWord::all(n);
        for u in &words {
            let pu: BTreeSet<_> = ls_to_diagram(u).boxes().into_iter().collect();
            for v in &words {
                if v.ls_length() == u.ls_length() + 1 {
                    let pv: BTreeSet<_> = ls_to_diagram(v).boxes().into_iter().collect();
                    if pu.is_subset(&pv) && pv.len() == pu.len() + 1 {
                        expected.insert((u.clone(), v.clone()));
                    }
                }
            }
        }
        let actual: BTreeSet<_> = graph.arrow_pairs().into_iter().collect();
        if actual != expected {
            return Err(format!(
                "rank {n}: arrow set differs from the cover relation"
            ));
        }
    }
    Ok(format!(
        "words = admissible sets = brute-force Hasse, with arrows, ranks 1..={max}"
    ))
}

fn ls_action(max: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for n in 1..=max {
        let words = LSWord::all(n);
        for _ in 0..200 {
            let w = words.choose(&mut rng).unwrap();
            let coords: Vec<i64> = (0..n).map(|_| rng.gen_range(-9..=9)).collect();
            let mu = Weight::from_ints(&coords, true);
            let fast = ls_act(w, &mu);
            let slow = ls_to_weyl(w).act(&mu).unwrap();
            if fast != slow {
                return Err(format!("rank {n}, word {w}, weight {mu}: {fast} != {slow}"));
            }
        }
    }
    Ok(format!("200 random weights per rank, ranks 1..={max}"))
}

fn coset_reps(max: usize, caps: &RankCaps) -> Check {
    for n in 1..=max {
        for k in 1..=n {
            let via_words: BTreeSet<WeylElement> = singular_hasse(n, k)
                .map_err(|e| e.to_string())?
                .iter()
                .map(ls_to_weyl)
                .collect();
            let via_cosets: BTreeSet<WeylElement> = min_coset_reps(n, &[k], caps)
                .map_err(|e| e.to_string())?
                .into_iter()
                .collect();
            if via_words != via_cosets {
                return Err(format!(
                    "n={n}, k={k}: word pattern differs from coset minima"
                ));
            }
        }
    }
    Ok(format!(
        "word pattern = minimal coset representatives, ranks 1..={max}, all k"
    ))
}

fn relative_hasse(max: usize) -> Check {
    for n in 2..=max {
        let words = relative_hasse_eta(n);
        if words.len() != 1 << (n - 1) {
            return Err(format!("rank {n}: eta diagram has {} words", words.len()));
        }
        let sub = regular_hasse(n).induced(&words);
        let stripped: BTreeSet<(LSWord, LSWord)> = sub
            .arrow_pairs()
            .into_iter()
            .map(|(a, b)| {
                (
                    LSWord::new(a.bits()[1..].to_vec()).unwrap(),
                    LSWord::new(b.bits()[1..].to_vec()).unwrap(),
                )
            })
            .collect();
        let lower: BTreeSet<(LSWord, LSWord)> =
            regular_hasse(n - 1).arrow_pairs().into_iter().collect();
        if stripped != lower {
            return Err(format!("rank {n}: prefix strip is not a graph isomorphism"));
        }
        let chain = relative_hasse_tau(n);
        for (m, w) in chain.elements.iter().enumerate() {
            if w.length() != m {
                return Err(format!(
                    "rank {n}: tau chain element {m} has length {}",
                    w.length()
                ));
            }
            // the inverse of the m-th element moves the head past m
            // positions; that insertion distance is the pushdown degree
            let coords: Vec<i64> = std::iter::once(100).chain((1..n as i64).rev()).collect();
            let probe = Weight::from_ints(&coords, true);
            let moved = w.inverse().act(&probe).unwrap();
            let expect_pos = m.min(n - 1);
            if moved.coords()[expect_pos] != rat(100) {
                return Err(format!(
                    "rank {n}: tau element {m} misplaces the head: {moved}"
                ));
            }
        }
    }
    Ok(format!(
        "eta strip isomorphism and tau insertion chain, ranks 2..={max}"
    ))
}

fn inductive_split_check(max: usize) -> Check {
    for n in 2..=max {
        let split = inductive_split(n).map_err(|e| e.to_string())?;
        for ((d1, d2), part) in &split.parts {
            if part.len() != 1 << (n - 2) {
                return Err(format!(
                    "rank {n}: part ({d1},{d2}) has {} words",
                    part.len()
                ));
            }
        }
        if split.cross_arrows.len() != 1 << (n - 2) {
            return Err(format!(
                "rank {n}: {} cross arrows, expected {}",
                split.cross_arrows.len(),
                1 << (n - 2)
            ));
        }
    }
    Ok(format!(
        "four-way split with 01->10 gluing only, ranks 2..={max}"
    ))
}

fn each_character(max: usize) -> Vec<SingularCharacter> {
    let mut out = Vec::new();
    for n in 2..=max {
        for k in 1..=n {
            out.push(SingularCharacter::minimal(n, k).expect("valid (n, k)"));
        }
    }
    out
}

fn parities_for(sc: &SingularCharacter) -> Vec<Option<Parity>> {
    match sc.kind() {
        SingularKind::First => vec![None],
        SingularKind::Second => vec![Some(Parity::Even), Some(Parity::Odd)],
    }
}

fn bbw_survivors(max: usize) -> Check {
    let mut total = 0;
    for sc in each_character(max) {
        // survivors() already cross-checks degree, target, and orbit weight
        let list = survivors(&sc).map_err(|e| format!("n={}, k={}: {e}", sc.rank(), sc.k()))?;
        let expected = match sc.kind() {
            SingularKind::First => 1 << (sc.rank() - 2),
            SingularKind::Second => 1 << (sc.rank() - 1),
        };
        if list.len() != expected {
            return Err(format!(
                "n={}, k={}: {} survivors, expected {expected}",
                sc.rank(),
                sc.k(),
                list.len()
            ));
        }
        total += list.len();
    }
    Ok(format!(
        "{total} surviving direct images match the closed form, ranks 2..={max}"
    ))
}

fn spectral_pages(max: usize) -> Check {
    for sc in each_character(max) {
        let page = spectral_first_page(&sc).map_err(|e| e.to_string())?;
        if page.min_total() != sc.rank() - 1 {
            return Err(format!(
                "n={}, k={}: minimal p+q is {}, expected {}",
                sc.rank(),
                sc.k(),
                page.min_total(),
                sc.rank() - 1
            ));
        }
        for a in &page.arrows {
            let src = page
                .entries
                .iter()
                .find(|e| e.source == a.src_source)
                .unwrap();
            let dst = page
                .entries
                .iter()
                .find(|e| e.source == a.dst_source)
                .unwrap();
            if dst.p != src.p + 1 || dst.q != src.q {
                return Err(format!(
                    "n={}, k={}: differential {} -> {} is not horizontal",
                    sc.rank(),
                    sc.k(),
                    a.src_source,
                    a.dst_source
                ));
            }
        }
    }
    Ok(format!(
        "grid placement and horizontal differentials, ranks 2..={max}"
    ))
}

fn complex_isomorphism(max: usize) -> Check {
    let mut count = 0;
    for sc in each_character(max) {
        for parity in parities_for(&sc) {
            // assembly hard-errors unless collapse is an arrow-preserving
            // bijection onto the rank n-2 diagram
            let cx = assemble_complex(&sc, parity)
                .map_err(|e| format!("n={}, k={}, parity={parity:?}: {e}", sc.rank(), sc.k()))?;
            let lower = regular_hasse(sc.rank() - 2);
            if cx.graph.nodes.len() != lower.nodes.len()
                || cx.graph.arrows.len() != lower.arrows.len()
            {
                return Err(format!(
                    "n={}, k={}: size mismatch against rank {}",
                    sc.rank(),
                    sc.k(),
                    sc.rank() - 2
                ));
            }
            count += 1;
        }
    }
    Ok(format!(
        "{count} complexes isomorphic to their rank n-2 diagrams, ranks 2..={max}"
    ))
}

fn operator_orders(max: usize) -> Check {
    for sc in each_character(max) {
        for parity in parities_for(&sc) {
            let cx = assemble_complex(&sc, parity).map_err(|e| e.to_string())?;
            for a in &cx.graph.arrows {
                let expect = match (a.kind, sc.kind()) {
                    (ArrowKind::Standard, _) => 1,
                    (ArrowKind::NonStandard, SingularKind::First) => 2,
                    (ArrowKind::NonStandard, SingularKind::Second) => 3,
                };
                if a.order != Some(expect) {
                    return Err(format!(
                        "n={}, k={}: {} -> {} has order {:?}, expected {expect}",
                        sc.rank(),
                        sc.k(),
                        cx.graph.nodes[a.src].word,
                        cx.graph.nodes[a.dst].word,
                        a.order
                    ));
                }
            }
        }
    }
    Ok(format!(
        "standard order 1, non-standard 2 (first kind) / 3 (second), ranks 2..={max}"
    ))
}

fn cochain_squares(max: usize) -> Check {
    for sc in each_character(max) {
        for parity in parities_for(&sc) {
            let cx = assemble_complex(&sc, parity).map_err(|e| e.to_string())?;
            if !check_cochain(&cx) {
                return Err(format!(
                    "n={}, k={}, parity={parity:?}: cochain shadow fails",
                    sc.rank(),
                    sc.k()
                ));
            }
            let lower = regular_hasse(sc.rank() - 2);
            if cx.graph.square_count() != lower.square_count() {
                return Err(format!(
                    "n={}, k={}: square count {} != {}",
                    sc.rank(),
                    sc.k(),
                    cx.graph.square_count(),
                    lower.square_count()
                ));
            }
        }
    }
    Ok(format!(
        "grading and square structure of d^2 = 0, ranks 2..={max}"
    ))
}

fn parity_structure(max: usize) -> Check {
    for n in 2..=max {
        let sc = SingularCharacter::minimal(n, n).expect("second kind");
        let words = singular_hasse(n, n).map_err(|e| e.to_string())?;
        let (even, odd) = parity_split(&words).map_err(|e| e.to_string())?;
        if even.len() != 1 << (n - 2) || odd.len() != 1 << (n - 2) {
            return Err(format!(
                "rank {n}: class sizes {} / {}",
                even.len(),
                odd.len()
            ));
        }
        let even_set: BTreeSet<_> = even.iter().cloned().collect();
        for (a, b) in crate::penrose::nonstandard_arrows(&sc) {
            if even_set.contains(&a) != even_set.contains(&b) {
                return Err(format!(
                    "rank {n}: non-standard arrow {a} -> {b} crosses parity"
                ));
            }
        }
        // orbit weights: number of ones = number of negative coordinates
        let ow = orbit_weights(&sc);
        for (w, weight) in &ow {
            let negatives = weight
                .coords()
                .iter()
                .filter(|c| **c < num::Zero::zero())
                .count();
            if negatives != w.popcount() {
                return Err(format!(
                    "rank {n}: {w} has {negatives} negative coordinates"
                ));
            }
        }
        // the parity classes are exactly the connected components of the
        // orbit under standard plus non-standard arrows
        let mut undirected: BTreeMap<LSWord, Vec<LSWord>> =
            words.iter().map(|w| (w.clone(), Vec::new())).collect();
        let word_set: BTreeSet<LSWord> = words.iter().cloned().collect();
        let mut edges: Vec<(LSWord, LSWord)> = regular_hasse(n)
            .arrow_pairs()
            .into_iter()
            .filter(|(a, b)| word_set.contains(a) && word_set.contains(b))
            .collect();
        edges.extend(crate::penrose::nonstandard_arrows(&sc));
        for (a, b) in edges {
            undirected.get_mut(&a).unwrap().push(b.clone());
            undirected.get_mut(&b).unwrap().push(a);
        }
        let mut component = BTreeMap::new();
        for start in &words {
            if component.contains_key(start) {
                continue;
            }
            let id = component.len();
            let mut stack = vec![start.clone()];
            while let Some(w) = stack.pop() {
                if component.insert(w.clone(), id).is_none() {
                    stack.extend(undirected[&w].iter().cloned());
                }
            }
        }
        for class in [&even, &odd] {
            let ids: BTreeSet<usize> = class.iter().map(|w| component[w]).collect();
            if ids.len() != 1 {
                return Err(format!(
                    "rank {n}: a parity class spans {} components",
                    ids.len()
                ));
            }
        }
        let all_ids: BTreeSet<usize> = component.values().copied().collect();
        if all_ids.len() != 2 {
            return Err(format!(
                "rank {n}: orbit has {} components, expected 2",
                all_ids.len()
            ));
        }
    }
    Ok(format!(
        "parity classes of size 2^(n-2) = connected components, never bridged, ranks 2..={max}"
    ))
}

fn diffop_identity() -> Check {
    let det = det_operator(3).map_err(|e| e.to_string())?;
    let scaled = det.scale(&rat(4));
    let d = operator_d();
    if scaled != d {
        return Err(format!("4*det = {scaled} but D = {d}"));
    }
    Ok("4 * det(symmetric operator matrix) equals the explicit third-order operator".to_string())
}

fn diffop_surjectivity() -> Check {
    let d = operator_d();
    let mut parts = Vec::new();
    for degree in 0..=3u32 {
        let (rank, dim) = surjectivity_rank(&d, degree).map_err(|e| e.to_string())?;
        if rank != dim {
            return Err(format!(
                "degree {degree}: rank {rank} < target dimension {dim}"
            ));
        }
        parts.push(format!("d={degree}: {rank}/{dim}"));
    }
    Ok(format!("full rank in each degree ({})", parts.join(", ")))
}

/// Spot summary used by tests: mapping family name to pass flag.
pub fn summary(report: &VerifyReport) -> BTreeMap<&'static str, bool> {
    report.checks.iter().map(|c| (c.family, c.passed)).collect()
}
