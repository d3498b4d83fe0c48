//! LS binary words, generalized Young diagrams, and Hasse diagrams.
//!
//! A word of length n encodes an element of the parabolic Hasse diagram
//! through the zig-zag boundary of its generalized Young diagram: reading
//! left to right, 1 is a step right and 0 a step down. If the ones sit at
//! positions `i_1 < ... < i_k` the Coxeter length is
//! `(n+1)k - (i_1 + ... + i_k)`, and the action on a rho-shifted weight
//! deletes the coordinates at the one-positions and appends their negatives
//! in reverse order.
//!
//! Arrows are generated by the two rewrite rules (swap an adjacent `01` to
//! `10`, or flip a trailing `0` to `1`); adding one box to the diagram is
//! the cross-check, not the generator.

use crate::weyl::{Root, Weight, WeylElement};
use crate::{Error, Result};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;

/// A binary word of length n, most significant digit first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LSWord {
    bits: Vec<u8>,
}

impl LSWord {
    pub fn new(bits: Vec<u8>) -> Result<LSWord> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidWord(format!("digits must be 0/1: {bits:?}")));
        }
        Ok(LSWord { bits })
    }

    pub fn parse(s: &str) -> Result<LSWord> {
        let bits: Result<Vec<u8>> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidWord(format!(
                    "unexpected digit {other:?} in {s:?}"
                ))),
            })
            .collect();
        Ok(LSWord { bits: bits? })
    }

    /// All 2^n words of length n, in binary order.
    pub fn all(n: usize) -> Vec<LSWord> {
        (0u64..(1 << n))
            .map(|mask| LSWord {
                bits: (0..n).map(|i| ((mask >> (n - 1 - i)) & 1) as u8).collect(),
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// 1-based digit access.
    pub fn bit(&self, i: usize) -> u8 {
        self.bits[i - 1]
    }

    /// 1-based positions of the digit 1, strictly increasing.
    pub fn ones_positions(&self) -> Vec<usize> {
        (1..=self.rank()).filter(|&i| self.bit(i) == 1).collect()
    }

    pub fn popcount(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    /// Coxeter length of the corresponding Hasse-diagram element:
    /// `(n+1)k - sum of one-positions`.
    pub fn ls_length(&self) -> usize {
        let n = self.rank();
        let ones = self.ones_positions();
        (n + 1) * ones.len() - ones.iter().sum::<usize>()
    }

    /// Arrow targets under the two rewrite rules.
    pub fn arrows_from(&self) -> Vec<LSWord> {
        let n = self.rank();
        let mut out = Vec::new();
        for i in 0..n.saturating_sub(1) {
            if self.bits[i] == 0 && self.bits[i + 1] == 1 {
                let mut bits = self.bits.clone();
                bits.swap(i, i + 1);
                out.push(LSWord { bits });
            }
        }
        if n > 0 && self.bits[n - 1] == 0 {
            let mut bits = self.bits.clone();
            bits[n - 1] = 1;
            out.push(LSWord { bits });
        }
        out
    }

    pub fn concat(prefix: &[u8], rest: &LSWord) -> LSWord {
        let mut bits = prefix.to_vec();
        bits.extend_from_slice(&rest.bits);
        LSWord { bits }
    }

    /// Subword with the 1-based positions in `drop` removed.
    pub fn without_positions(&self, drop: &[usize]) -> LSWord {
        let bits = (1..=self.rank())
            .filter(|i| !drop.contains(i))
            .map(|i| self.bit(i))
            .collect();
        LSWord { bits }
    }
}

impl fmt::Display for LSWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// A generalized Young diagram: a staircase-bounded box set recorded by row
/// lengths (row i may hold at most n+1-i boxes), closed under moving down
/// and left within the staircase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenYoungDiagram {
    rows: Vec<usize>,
}

impl GenYoungDiagram {
    pub fn new(rows: Vec<usize>) -> Result<GenYoungDiagram> {
        let n = rows.len();
        for (idx, &r) in rows.iter().enumerate() {
            let bound = n - idx;
            if r > bound {
                return Err(Error::InvalidDiagram(format!(
                    "row {} has {} boxes, staircase allows {}",
                    idx + 1,
                    r,
                    bound
                )));
            }
        }
        // Closure under the lower-left quadrant: a box in row i forces each
        // lower row i' to hold at least min(r_i, n+1-i') boxes.
        for i in 0..n {
            for i2 in (i + 1)..n {
                let need = rows[i].min(n - i2);
                if rows[i2] < need {
                    return Err(Error::InvalidDiagram(format!(
                        "row {} has {} boxes but row {} has only {}",
                        i + 1,
                        rows[i],
                        i2 + 1,
                        rows[i2]
                    )));
                }
            }
        }
        Ok(GenYoungDiagram { rows })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn box_count(&self) -> usize {
        self.rows.iter().sum()
    }

    /// The boxes as nilradical roots, sorted: the cell in row i, column c
    /// is `c_{i,n+1-c}` (with `b_i` on the diagonal).
    pub fn boxes(&self) -> Vec<Root> {
        let n = self.rank();
        let mut out = Vec::with_capacity(self.box_count());
        for (idx, &r) in self.rows.iter().enumerate() {
            let i = idx + 1;
            for c in 1..=r {
                let j = n + 1 - c;
                out.push(if i == j { Root::B(i) } else { Root::C(i, j) });
            }
        }
        out.sort();
        out
    }

    /// Nonempty row lengths, the classical partition-style notation.
    pub fn nonempty_rows(&self) -> Vec<usize> {
        self.rows.iter().copied().filter(|&r| r > 0).collect()
    }
}

/// Word to diagram: the t-th zero fixes row t at the number of ones seen so
/// far; rows never reached by the zig-zag are full.
pub fn ls_to_diagram(w: &LSWord) -> GenYoungDiagram {
    let n = w.rank();
    let mut rows = Vec::with_capacity(n);
    let mut ones = 0usize;
    for i in 1..=n {
        if w.bit(i) == 1 {
            ones += 1;
        } else {
            rows.push(ones);
        }
    }
    let fixed = rows.len();
    for i in (fixed + 1)..=n {
        rows.push(n + 1 - i);
    }
    GenYoungDiagram { rows }
}

/// Diagram to word: retrace the zig-zag boundary.
pub fn diagram_to_ls(d: &GenYoungDiagram) -> LSWord {
    let n = d.rank();
    let mut bits = Vec::with_capacity(n);
    let mut row = 1usize;
    let mut col = 0usize;
    for _ in 0..n {
        if row <= n && d.rows[row - 1] == col {
            bits.push(0);
            row += 1;
        } else {
            debug_assert!(row > n || d.rows[row - 1] > col);
            bits.push(1);
            col += 1;
        }
    }
    LSWord { bits }
}

/// The Hasse-diagram element of a word, built from the column decomposition
/// of its diagram: the j-th one (at position `i_j`) contributes the column
/// `sigma_{c_{i_j+1-j, n+1-j}} ∘ ... ∘ sigma_{c_{n-j, n+1-j}} ∘ sigma_{b_{n+1-j}}`,
/// and the columns compose right to left.
pub fn ls_to_weyl(w: &LSWord) -> WeylElement {
    let n = w.rank();
    let mut acc = WeylElement::identity(n);
    for (jm1, &ij) in w.ones_positions().iter().enumerate() {
        let j = jm1 + 1;
        let top = n + 1 - j;
        let mut column = WeylElement::reflection(&Root::B(top), n);
        let lo = ij + 1 - j;
        let hi = n - j;
        let mut m = hi;
        while m >= lo && m >= 1 {
            column = WeylElement::reflection(&Root::C(m, top), n).compose(&column);
            if m == lo {
                break;
            }
            m -= 1;
        }
        acc = column.compose(&acc);
    }
    acc
}

/// Direct coordinate action on a rho-shifted weight: delete the coordinates
/// at the one-positions and append their negatives in reverse order.
pub fn ls_act(w: &LSWord, mu: &Weight) -> Weight {
    assert!(mu.is_shifted(), "ls_act takes a rho-shifted weight");
    assert_eq!(w.rank(), mu.rank(), "rank mismatch in ls_act");
    let ones = w.ones_positions();
    let mut coords = Vec::with_capacity(mu.rank());
    for i in 1..=mu.rank() {
        if !ones.contains(&i) {
            coords.push(mu.coords()[i - 1].clone());
        }
    }
    for &i in ones.iter().rev() {
        coords.push(-mu.coords()[i - 1].clone());
    }
    Weight::new(coords, true)
}

/// Arrow kind in a Hasse graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ArrowKind {
    Standard,
    NonStandard,
}

impl ArrowKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ArrowKind::Standard => "standard",
            ArrowKind::NonStandard => "non-standard",
        }
    }
}

#[derive(Debug, Clone)]
pub struct HasseNode {
    pub word: LSWord,
    pub weight: Option<Weight>,
    /// Cosmetic grid position (row, column); row is the grading level.
    pub pos: Option<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct HasseArrow {
    pub src: usize,
    pub dst: usize,
    /// The added-box root for standard arrows; non-standard arrows are not
    /// reflection arrows and carry no root label.
    pub label: Option<Root>,
    pub kind: ArrowKind,
    pub order: Option<u32>,
}

/// A directed graph of words with labeled arrows.
#[derive(Debug, Clone)]
pub struct HasseGraph {
    pub nodes: Vec<HasseNode>,
    pub arrows: Vec<HasseArrow>,
}

impl HasseGraph {
    pub fn arrow_pairs(&self) -> Vec<(LSWord, LSWord)> {
        self.arrows
            .iter()
            .map(|a| {
                (
                    self.nodes[a.src].word.clone(),
                    self.nodes[a.dst].word.clone(),
                )
            })
            .collect()
    }

    /// Successor map by word.
    pub fn successors(&self) -> BTreeMap<LSWord, Vec<LSWord>> {
        let mut map: BTreeMap<LSWord, Vec<LSWord>> = self
            .nodes
            .iter()
            .map(|n| (n.word.clone(), Vec::new()))
            .collect();
        for a in &self.arrows {
            map.get_mut(&self.nodes[a.src].word)
                .unwrap()
                .push(self.nodes[a.dst].word.clone());
        }
        map
    }

    /// Number of length-2 intervals with exactly two middle elements.
    pub fn square_count(&self) -> usize {
        let succ = self.successors();
        let mut ends: BTreeMap<(LSWord, LSWord), usize> = BTreeMap::new();
        for (u, vs) in &succ {
            for v in vs {
                for w in &succ[v] {
                    *ends.entry((u.clone(), w.clone())).or_insert(0) += 1;
                }
            }
        }
        ends.values().filter(|&&m| m == 2).count()
    }

    /// Subgraph induced by a set of words (arrows with both ends kept).
    pub fn induced(&self, keep: &[LSWord]) -> HasseGraph {
        let nodes: Vec<HasseNode> = self
            .nodes
            .iter()
            .filter(|n| keep.contains(&n.word))
            .cloned()
            .collect();
        let index: BTreeMap<LSWord, usize> = nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.word.clone(), i))
            .collect();
        let arrows = self
            .arrows
            .iter()
            .filter_map(|a| {
                let src = index.get(&self.nodes[a.src].word)?;
                let dst = index.get(&self.nodes[a.dst].word)?;
                Some(HasseArrow {
                    src: *src,
                    dst: *dst,
                    ..a.clone()
                })
            })
            .collect();
        HasseGraph { nodes, arrows }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "nodes": self.nodes.iter().map(|n| json!({
                "word": n.word.to_string(),
                "weight": n.weight.as_ref().map(|w| w.to_string()),
                "pos": n.pos.map(|(r, c)| json!([r, c])),
            })).collect::<Vec<_>>(),
            "arrows": self.arrows.iter().map(|a| json!({
                "src": self.nodes[a.src].word.to_string(),
                "dst": self.nodes[a.dst].word.to_string(),
                "label": a.label.map(|r| r.name()),
                "kind": a.kind.as_str(),
                "order": a.order,
            })).collect::<Vec<_>>(),
        })
    }

    /// DOT rendering; non-standard arrows are dashed, matching the usual
    /// diagram convention, and carry their operator order as the label.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        out.push_str(&format!("digraph {name} {{\n"));
        out.push_str("  rankdir=TB;\n");
        for n in &self.nodes {
            let label = match &n.weight {
                Some(w) => format!("{}\\n{}", n.word, w),
                None => n.word.to_string(),
            };
            out.push_str(&format!("  \"{}\" [label=\"{}\"];\n", n.word, label));
        }
        for a in &self.arrows {
            let src = &self.nodes[a.src].word;
            let dst = &self.nodes[a.dst].word;
            let mut attrs: Vec<String> = Vec::new();
            let mut label_parts: Vec<String> = Vec::new();
            if let Some(root) = a.label {
                label_parts.push(root.name());
            }
            if let Some(order) = a.order {
                label_parts.push(format!("order={order}"));
            }
            if !label_parts.is_empty() {
                attrs.push(format!("label=\"{}\"", label_parts.join(" ")));
            }
            if a.kind == ArrowKind::NonStandard {
                attrs.push("style=dashed".to_string());
            }
            if attrs.is_empty() {
                out.push_str(&format!("  \"{src}\" -> \"{dst}\";\n"));
            } else {
                out.push_str(&format!(
                    "  \"{src}\" -> \"{dst}\" [{}];\n",
                    attrs.join(", ")
                ));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// The regular Hasse diagram of rank n: 2^n words, arrows from the rewrite
/// rules, each labeled by its added box, and node weights the rho-orbit.
///
/// Rank 0 is the single empty word with no arrows (it appears as the
/// collapse target of rank-2 singular complexes).
pub fn regular_hasse(n: usize) -> HasseGraph {
    let rho = Weight::rho(n);
    let mut words = LSWord::all(n);
    words.sort_by_key(|w| (w.ls_length(), w.clone()));
    let mut level_width: BTreeMap<usize, usize> = BTreeMap::new();
    let nodes: Vec<HasseNode> = words
        .iter()
        .map(|w| {
            let level = w.ls_length();
            let col = level_width.entry(level).or_insert(0);
            let pos = (level, *col);
            *col += 1;
            HasseNode {
                word: w.clone(),
                weight: Some(ls_act(w, &rho)),
                pos: Some(pos),
            }
        })
        .collect();
    let index: BTreeMap<LSWord, usize> = nodes
        .iter()
        .enumerate()
        .map(|(i, n)| (n.word.clone(), i))
        .collect();
    let mut arrows = Vec::new();
    for node in &nodes {
        for target in node.word.arrows_from() {
            let label = added_box(&node.word, &target);
            arrows.push(HasseArrow {
                src: index[&node.word],
                dst: index[&target],
                label: Some(label),
                kind: ArrowKind::Standard,
                order: None,
            });
        }
    }
    HasseGraph { nodes, arrows }
}

/// The single box gained along a standard arrow.
pub fn added_box(src: &LSWord, dst: &LSWord) -> Root {
    let before = ls_to_diagram(src).boxes();
    let after = ls_to_diagram(dst).boxes();
    let mut added: Vec<Root> = after.into_iter().filter(|r| !before.contains(r)).collect();
    assert_eq!(
        added.len(),
        1,
        "arrow {src} -> {dst} does not add exactly one box"
    );
    added.pop().unwrap()
}

/// The relative Hasse diagram of the twistor-side fibration: the words of
/// rank n with leading digit 0, which form a copy of the regular diagram of
/// rank n-1 under prefix stripping.
pub fn relative_hasse_eta(n: usize) -> Vec<LSWord> {
    assert!(n >= 1, "relative Hasse diagram needs rank >= 1");
    let mut words: Vec<LSWord> = LSWord::all(n)
        .into_iter()
        .filter(|w| w.bit(1) == 0)
        .collect();
    words.sort_by_key(|w| (w.ls_length(), w.clone()));
    words
}

/// The relative Hasse diagram of the projective-space fibration: the chain
/// `Id -> sigma_{a_12}· -> ... -> sigma_{a_1n}···`, whose m-th element moves
/// the first coordinate of a weight past m others.
#[derive(Debug, Clone)]
pub struct TauChain {
    pub elements: Vec<WeylElement>,
    pub labels: Vec<Root>,
}

pub fn relative_hasse_tau(n: usize) -> TauChain {
    assert!(n >= 1);
    let mut elements = vec![WeylElement::identity(n)];
    let mut labels = Vec::new();
    for j in 2..=n {
        let root = Root::A(1, j);
        labels.push(root);
        let prev = elements.last().unwrap();
        elements.push(WeylElement::reflection(&root, n).compose(prev));
    }
    TauChain { elements, labels }
}

/// The four-way split of the regular diagram by the first two digits.
#[derive(Debug, Clone)]
pub struct InductiveSplit {
    /// Parts keyed by (d1, d2), each a copy of the rank n-2 diagram.
    pub parts: BTreeMap<(u8, u8), Vec<LSWord>>,
    /// Arrows between the first-digit halves, all of the form 01.. -> 10..
    pub cross_arrows: Vec<(LSWord, LSWord)>,
}

/// Splits the regular diagram and verifies that the only arrows between the
/// two first-digit halves go from the 01-part to the 10-part.
pub fn inductive_split(n: usize) -> Result<InductiveSplit> {
    assert!(n >= 2, "inductive split needs rank >= 2");
    let graph = regular_hasse(n);
    let mut parts: BTreeMap<(u8, u8), Vec<LSWord>> = BTreeMap::new();
    for d1 in 0..2u8 {
        for d2 in 0..2u8 {
            parts.insert((d1, d2), Vec::new());
        }
    }
    for node in &graph.nodes {
        parts
            .get_mut(&(node.word.bit(1), node.word.bit(2)))
            .unwrap()
            .push(node.word.clone());
    }
    let mut cross = Vec::new();
    for (src, dst) in graph.arrow_pairs() {
        if src.bit(1) != dst.bit(1) {
            if (src.bit(1), src.bit(2), dst.bit(1), dst.bit(2)) != (0, 1, 1, 0) {
                return Err(Error::InvariantViolation(format!(
                    "unexpected cross arrow {src} -> {dst}"
                )));
            }
            if src.bits()[2..] != dst.bits()[2..] {
                return Err(Error::InvariantViolation(format!(
                    "cross arrow {src} -> {dst} moves more than the leading digits"
                )));
            }
            cross.push((src, dst));
        }
    }
    Ok(InductiveSplit {
        parts,
        cross_arrows: cross,
    })
}
