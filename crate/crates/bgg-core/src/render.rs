//! Deterministic text renderings of the combinatorial objects.
//!
//! These back the command-line output and the golden-file tests: identical
//! inputs must produce byte-identical text, so everything here iterates in
//! pinned orders.

use crate::lsword::{ls_to_diagram, regular_hasse, ArrowKind, HasseGraph, HasseNode, LSWord};
use crate::orbit::{orbit_weights, singular_hasse, SingularCharacter};
use crate::penrose::{SingularBGGComplex, SpectralPage};
use crate::verify::VerifyReport;
use crate::weyl::Weight;
use std::collections::BTreeMap;
use std::fmt::Write as _;

fn word_str(w: &LSWord) -> String {
    if w.rank() == 0 {
        "e".to_string()
    } else {
        w.to_string()
    }
}

fn diagram_str(w: &LSWord) -> String {
    let rows = ls_to_diagram(w).nonempty_rows();
    if rows.is_empty() {
        "{}".to_string()
    } else {
        format!(
            "{{{}}}",
            rows.iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

fn pad(s: &str, width: usize) -> String {
    format!("{s:<width$}")
}

/// The regular Hasse diagram in all three notations: words, generalized
/// Young diagrams (nonempty row lengths), and the rho-orbit weights.
pub fn hasse_text(n: usize) -> String {
    let graph = regular_hasse(n);
    let mut out = String::new();
    let _ = writeln!(out, "regular Hasse diagram: rank {n}");
    let _ = writeln!(
        out,
        "nodes: {}, arrows: {}",
        graph.nodes.len(),
        graph.arrows.len()
    );
    let _ = writeln!(out);
    let rows: Vec<(String, String, String, String)> = graph
        .nodes
        .iter()
        .map(|node| {
            (
                node.word.ls_length().to_string(),
                word_str(&node.word),
                diagram_str(&node.word),
                node.weight
                    .as_ref()
                    .expect("regular nodes carry weights")
                    .to_string(),
            )
        })
        .collect();
    let widths = column_widths(&rows, &["l", "word", "diagram", "rho-orbit"]);
    let _ = writeln!(
        out,
        "{}  {}  {}  rho-orbit",
        pad("l", widths[0]),
        pad("word", widths[1]),
        pad("diagram", widths[2]),
    );
    for (l, w, d, rho) in &rows {
        let _ = writeln!(
            out,
            "{}  {}  {}  {}",
            pad(l, widths[0]),
            pad(w, widths[1]),
            pad(d, widths[2]),
            rho
        );
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "arrows:");
    for a in &graph.arrows {
        let label = a.label.map(|r| r.name()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{} -> {}  {}",
            word_str(&graph.nodes[a.src].word),
            word_str(&graph.nodes[a.dst].word),
            label
        );
    }
    out
}

fn column_widths(rows: &[(String, String, String, String)], headers: &[&str; 4]) -> [usize; 4] {
    let mut widths = [
        headers[0].len(),
        headers[1].len(),
        headers[2].len(),
        headers[3].len(),
    ];
    for (a, b, c, d) in rows {
        widths[0] = widths[0].max(a.len());
        widths[1] = widths[1].max(b.len());
        widths[2] = widths[2].max(c.len());
        widths[3] = widths[3].max(d.len());
    }
    widths
}

/// The singular orbit as a graph: nodes carry the strictly dominant orbit
/// weights, arrows are the regular-Hasse arrows inside the orbit.
pub fn orbit_graph(sc: &SingularCharacter) -> HasseGraph {
    let words = singular_hasse(sc.rank(), sc.k()).expect("character carries valid (n, k)");
    let weights = orbit_weights(sc);
    let ambient = regular_hasse(sc.rank());
    let mut graph = ambient.induced(&words);
    for node in &mut graph.nodes {
        node.weight = Some(weights[&node.word].clone());
        node.pos = None;
    }
    graph
}

/// JSON dump of a singular orbit, keyed by LS word.
pub fn orbit_json(sc: &SingularCharacter) -> serde_json::Value {
    let graph = orbit_graph(sc);
    let weights: serde_json::Map<String, serde_json::Value> = graph
        .nodes
        .iter()
        .map(|n| {
            (
                n.word.to_string(),
                serde_json::Value::String(n.weight.as_ref().unwrap().to_string()),
            )
        })
        .collect();
    serde_json::json!({
        "schema": 1,
        "rank": sc.rank(),
        "k": sc.k(),
        "lambda_plus_rho": sc.lambda_plus_rho().to_string(),
        "weights": weights,
        "standard_arrows": graph.arrows.iter().map(|a| serde_json::json!({
            "src": graph.nodes[a.src].word.to_string(),
            "dst": graph.nodes[a.dst].word.to_string(),
            "label": a.label.map(|r| r.name()),
        })).collect::<Vec<_>>(),
    })
}

pub fn orbit_text(sc: &SingularCharacter) -> String {
    let graph = orbit_graph(sc);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "singular orbit: rank {}, k={}, lambda+rho={}",
        sc.rank(),
        sc.k(),
        sc.lambda_plus_rho()
    );
    let _ = writeln!(out, "objects: {}", graph.nodes.len());
    let _ = writeln!(out);
    let rows: Vec<(String, String, String, String)> = graph
        .nodes
        .iter()
        .map(|node| {
            (
                node.word.ls_length().to_string(),
                word_str(&node.word),
                node.weight.as_ref().unwrap().to_string(),
                String::new(),
            )
        })
        .collect();
    let widths = column_widths(&rows, &["l", "word", "weight", ""]);
    let _ = writeln!(
        out,
        "{}  {}  weight",
        pad("l", widths[0]),
        pad("word", widths[1])
    );
    for (l, w, weight, _) in &rows {
        let _ = writeln!(
            out,
            "{}  {}  {}",
            pad(l, widths[0]),
            pad(w, widths[1]),
            weight
        );
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "standard arrows:");
    for a in &graph.arrows {
        let label = a.label.map(|r| r.name()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{} -> {}  {}",
            word_str(&graph.nodes[a.src].word),
            word_str(&graph.nodes[a.dst].word),
            label
        );
    }
    out
}

/// The first page as an aligned grid, rows by descending q, columns by p;
/// `->` marks a standard differential between horizontally adjacent slots.
pub fn spectral_text(page: &SpectralPage, sc: &SingularCharacter) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "E1 page: rank {}, k={}, lambda+rho={}",
        page.n,
        page.k,
        sc.lambda_plus_rho()
    );
    let _ = writeln!(out);
    let max_p = page.max_p();
    let max_q = page.max_q();
    let mut cells: BTreeMap<(usize, usize), String> = BTreeMap::new();
    for e in &page.entries {
        let text = e.weight.to_string();
        cells
            .entry((e.p, e.q))
            .and_modify(|s| {
                s.push_str(" + ");
                s.push_str(&text);
            })
            .or_insert(text);
    }
    let mut arrow_slots: Vec<(usize, usize)> = page.arrows.iter().map(|a| (a.p, a.q)).collect();
    arrow_slots.sort_unstable();
    let mut width = "p=0".len();
    for text in cells.values() {
        width = width.max(text.len());
    }
    for p in 0..=max_p {
        width = width.max(format!("p={p}").len());
    }
    let q_label_width = format!("q={max_q}").len();
    for q in (0..=max_q).rev() {
        let mut line = format!("{} |", pad(&format!("q={q}"), q_label_width));
        for p in 0..=max_p {
            let cell = cells
                .get(&(p, q))
                .cloned()
                .unwrap_or_else(|| ".".to_string());
            line.push(' ');
            line.push_str(&pad(&cell, width));
            if p < max_p {
                line.push_str(if arrow_slots.contains(&(p, q)) {
                    " ->"
                } else {
                    "   "
                });
            }
        }
        let _ = writeln!(out, "{}", line.trim_end());
    }
    let mut footer = format!("{} |", pad("", q_label_width));
    for p in 0..=max_p {
        footer.push(' ');
        footer.push_str(&pad(&format!("p={p}"), width));
        if p < max_p {
            footer.push_str("   ");
        }
    }
    let _ = writeln!(out, "{}", footer.trim_end());
    out
}

/// The surviving-degree diagram: each relative position (the word acting on
/// the twistor tail) with its surviving degree or `x`, plus the standard
/// arrows that survive and the dashed non-standard arrows, all written on
/// relative positions.
pub fn spectral_degrees_text(sc: &SingularCharacter) -> String {
    let n = sc.rank();
    let page = crate::penrose::spectral_first_page(sc).expect("page for valid character");
    let degree_of: BTreeMap<LSWord, usize> =
        page.entries.iter().map(|e| (e.tail_of(), e.q)).collect();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "direct-image degrees: rank {}, k={}, lambda+rho={}",
        n,
        sc.k(),
        sc.lambda_plus_rho()
    );
    let _ = writeln!(out, "position = relative word; x = no surviving image");
    let _ = writeln!(out);
    let mut positions = LSWord::all(n - 1);
    positions.sort_by_key(|w| (w.ls_length(), w.clone()));
    for pos in &positions {
        match degree_of.get(pos) {
            Some(d) => {
                let _ = writeln!(out, "{}: {}", word_str(pos), d);
            }
            None => {
                let _ = writeln!(out, "{}: x", word_str(pos));
            }
        }
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "surviving standard arrows:");
    for a in &page.arrows {
        let src = LSWord::new(a.src_source.bits()[1..].to_vec()).unwrap();
        let dst = LSWord::new(a.dst_source.bits()[1..].to_vec()).unwrap();
        let _ = writeln!(out, "{} -> {}", word_str(&src), word_str(&dst));
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "non-standard (dashed) arrows:");
    for (u, v) in crate::penrose::nonstandard_arrows(sc) {
        let _ = writeln!(
            out,
            "{} -> {}",
            word_str(&orbit_position(sc, &u)),
            word_str(&orbit_position(sc, &v))
        );
    }
    out
}

/// The relative position whose surviving direct image is the given orbit
/// word: drop the widened 01 back to a single 1 (first kind) or drop the
/// trailing 0 (second kind).
fn orbit_position(sc: &SingularCharacter, orbit_word: &LSWord) -> LSWord {
    let k = sc.k();
    let n = sc.rank();
    match sc.kind() {
        crate::orbit::SingularKind::First => {
            let mut bits = orbit_word.bits()[..k - 1].to_vec();
            bits.push(1);
            bits.extend_from_slice(&orbit_word.bits()[k + 1..]);
            LSWord::new(bits).expect("binary digits")
        }
        crate::orbit::SingularKind::Second => {
            LSWord::new(orbit_word.bits()[..n - 1].to_vec()).expect("binary digits")
        }
    }
}

pub fn complex_text(cx: &SingularBGGComplex, sc: &SingularCharacter) -> String {
    let mut out = String::new();
    let parity = cx
        .parity
        .map(|p| format!(", parity={}", p.as_str()))
        .unwrap_or_default();
    let _ = writeln!(
        out,
        "singular BGG complex: rank {}, k={}{}, lambda+rho={}",
        cx.n,
        cx.k,
        parity,
        sc.lambda_plus_rho()
    );
    let _ = writeln!(
        out,
        "directed-graph isomorphic to the regular Hasse diagram of rank {} (collapse column)",
        cx.n - 2
    );
    let _ = writeln!(out);
    let rows: Vec<(String, String, String, String)> = cx
        .graph
        .nodes
        .iter()
        .map(|node: &HasseNode| {
            (
                cx.grading[&node.word].to_string(),
                word_str(&node.word),
                node.weight.as_ref().unwrap().to_string(),
                word_str(&cx.collapse_witness[&node.word]),
            )
        })
        .collect();
    let widths = column_widths(&rows, &["g", "word", "weight", "collapsed"]);
    let _ = writeln!(
        out,
        "{}  {}  {}  collapsed",
        pad("g", widths[0]),
        pad("word", widths[1]),
        pad("weight", widths[2])
    );
    for (g, w, weight, c) in &rows {
        let _ = writeln!(
            out,
            "{}  {}  {}  {}",
            pad(g, widths[0]),
            pad(w, widths[1]),
            pad(weight, widths[2]),
            c
        );
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "arrows:");
    for a in &cx.graph.arrows {
        let kind = match a.kind {
            ArrowKind::Standard => {
                format!("standard {}", a.label.map(|r| r.name()).unwrap_or_default())
            }
            ArrowKind::NonStandard => "non-standard".to_string(),
        };
        let _ = writeln!(
            out,
            "{} -> {}  {}  order={}",
            word_str(&cx.graph.nodes[a.src].word),
            word_str(&cx.graph.nodes[a.dst].word),
            kind,
            a.order.expect("assembled arrows carry orders")
        );
    }
    out
}

pub fn verify_text(report: &VerifyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "verification report (max rank {})", report.max_rank);
    for check in &report.checks {
        if check.passed {
            let _ = writeln!(out, "[PASS] {}: {}", check.family, check.detail);
        } else {
            let _ = writeln!(out, "[FAIL] {}", check.family);
            if let Some(ce) = &check.counterexample {
                let _ = writeln!(out, "       counterexample: {ce}");
            }
        }
    }
    let passed = report.checks.iter().filter(|c| c.passed).count();
    let _ = writeln!(out, "summary: {passed}/{} passed", report.checks.len());
    out
}

/// DOT rendering of a spectral page: one node per summand, differentials
/// as solid edges.
pub fn spectral_dot(page: &SpectralPage) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph spectral {{");
    let _ = writeln!(out, "  rankdir=LR;");
    for e in &page.entries {
        let _ = writeln!(
            out,
            "  \"{}\" [label=\"({},{})\\n{}\"];",
            e.source, e.p, e.q, e.weight
        );
    }
    for a in &page.arrows {
        let _ = writeln!(out, "  \"{}\" -> \"{}\";", a.src_source, a.dst_source);
    }
    let _ = writeln!(out, "}}");
    out
}

/// Weight shown in the bar notation used for the parabolic, e.g.
/// `[4,3,2,1 |]`.
pub fn barred(w: &Weight) -> String {
    let plain = w.to_string();
    format!("{} |]", &plain[..plain.len() - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::Parity;
    use crate::penrose::{assemble_complex, spectral_first_page};

    #[test]
    fn hasse_text_contains_all_three_notations() {
        let text = hasse_text(4);
        assert!(text.contains("nodes: 16, arrows: 20"));
        let row = text.lines().find(|l| l.contains("0101 ")).unwrap();
        assert!(
            row.contains("{1,2,1}") && row.ends_with("[4,2,-1,-3]"),
            "{row}"
        );
        assert!(text.contains("0000 -> 0001  b4"));
        assert!(text.contains("1111"));
    }

    #[test]
    fn orbit_text_matches_known_orbit() {
        let sc = SingularCharacter::minimal(4, 3).unwrap();
        let text = orbit_text(&sc);
        assert!(text.contains("objects: 4"));
        assert!(text.contains("[3,2,1,-1]"));
        assert!(text.contains("0101 -> 1001  c14"));
    }

    #[test]
    fn spectral_text_grid_shape() {
        let sc = SingularCharacter::minimal(4, 3).unwrap();
        let page = spectral_first_page(&sc).unwrap();
        let text = spectral_text(&page, &sc);
        assert!(text.contains("q=2"));
        assert!(text.contains("[3,1,-1,-2]"));
        assert!(text.contains("->"));
        let q1_line = text.lines().find(|l| l.starts_with("q=1")).unwrap();
        assert!(q1_line.contains("[3,1,-1,-2]"));
        assert!(q1_line.contains("-> [2,1,-1,-3]"));
    }

    #[test]
    fn degrees_text_for_second_kind() {
        let sc = SingularCharacter::minimal(4, 4).unwrap();
        let text = spectral_degrees_text(&sc);
        assert!(text.contains("000: 3"));
        assert!(text.contains("111: 0"));
        assert!(!text.contains(": x"));
        assert!(text.contains("non-standard (dashed) arrows:"));
        assert!(text.contains("000 -> 011"));
    }

    #[test]
    fn complex_text_shows_orders() {
        let sc = SingularCharacter::minimal(4, 4).unwrap();
        let cx = assemble_complex(&sc, Some(Parity::Even)).unwrap();
        let text = complex_text(&cx, &sc);
        assert!(text.contains("parity=even"));
        assert!(text.contains("0000 -> 0110  non-standard  order=3"));
        assert!(text.contains("rank 2"));
    }
}
