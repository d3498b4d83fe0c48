//! Type C_n root system and Weyl group as signed permutations.
//!
//! Positive roots are `a_{ij} = e_i - e_j`, `b_i = 2 e_i` and
//! `c_{ij} = e_i + e_j` for `1 <= i < j <= n`; the simple roots are
//! `alpha_i = a_{i,i+1}` for `i < n` and `alpha_n = b_n`. The Weyl group
//! acts by permutations and sign changes of the coordinates. Everything
//! here is written for brute force first: the faster binary-word encoding
//! in [`crate::lsword`] is always validated against this module.

use crate::{rat, Error, Rational, Result};
use num::{Signed, Zero};
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

/// Rank caps for the enumeration-based oracles, sized so the full
/// cross-check suite stays under a minute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankCaps {
    /// Largest rank for which the full Weyl group is enumerated (2^n n!).
    pub enumeration: usize,
    /// Largest rank for which coset representatives are searched.
    pub coset_search: usize,
}

impl Default for RankCaps {
    fn default() -> Self {
        RankCaps {
            enumeration: 7,
            coset_search: 6,
        }
    }
}

impl RankCaps {
    /// Default caps, overridden by the `BGG_MAX_RANK` environment variable
    /// when it parses as a positive integer.
    pub fn from_env() -> Self {
        let mut caps = RankCaps::default();
        if let Ok(v) = std::env::var("BGG_MAX_RANK") {
            if let Ok(m) = v.trim().parse::<usize>() {
                if m > 0 {
                    caps.enumeration = m;
                    caps.coset_search = m;
                }
            }
        }
        caps
    }
}

/// A positive root of type C_n.
///
/// The derived order (kind, then indices) is the pinned order used for all
/// deterministic set serializations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Root {
    /// `a_{ij} = e_i - e_j`, `i < j`.
    A(usize, usize),
    /// `b_i = 2 e_i`.
    B(usize),
    /// `c_{ij} = e_i + e_j`, `i < j`.
    C(usize, usize),
}

impl Root {
    pub fn is_valid(&self, n: usize) -> bool {
        match *self {
            Root::A(i, j) | Root::C(i, j) => 1 <= i && i < j && j <= n,
            Root::B(i) => 1 <= i && i <= n,
        }
    }

    /// Coefficients over the `e`-basis.
    pub fn vector(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0i64; n];
        match *self {
            Root::A(i, j) => {
                v[i - 1] = 1;
                v[j - 1] = -1;
            }
            Root::B(i) => v[i - 1] = 2,
            Root::C(i, j) => {
                v[i - 1] = 1;
                v[j - 1] = 1;
            }
        }
        v
    }

    /// Inverse of [`Root::vector`]; `None` if the vector is not a positive
    /// root of type C.
    pub fn from_vector(v: &[i64]) -> Option<Root> {
        let support: Vec<usize> = (0..v.len()).filter(|&i| v[i] != 0).collect();
        match support.as_slice() {
            [i] if v[*i] == 2 => Some(Root::B(i + 1)),
            [i, j] if v[*i] == 1 && v[*j] == -1 => Some(Root::A(i + 1, j + 1)),
            [i, j] if v[*i] == 1 && v[*j] == 1 => Some(Root::C(i + 1, j + 1)),
            _ => None,
        }
    }

    /// The simple root `alpha_i`: `a_{i,i+1}` for `i < n`, `b_n` for `i = n`.
    pub fn simple(i: usize, n: usize) -> Root {
        assert!(
            1 <= i && i <= n,
            "simple root index {i} out of range for rank {n}"
        );
        if i < n {
            Root::A(i, i + 1)
        } else {
            Root::B(n)
        }
    }

    /// Whether the root lies in the nilradical of the parabolic crossing
    /// `alpha_n` (kinds `b` and `c`).
    pub fn in_nilradical(&self) -> bool {
        !matches!(self, Root::A(_, _))
    }

    pub fn name(&self) -> String {
        match *self {
            Root::A(i, j) if j <= 9 => format!("a{i}{j}"),
            Root::A(i, j) => format!("a{i},{j}"),
            Root::B(i) => format!("b{i}"),
            Root::C(i, j) if j <= 9 => format!("c{i}{j}"),
            Root::C(i, j) => format!("c{i},{j}"),
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// All positive roots of C_n in the pinned (kind, i, j) order.
pub fn positive_roots(n: usize) -> Vec<Root> {
    let mut roots = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in (i + 1)..=n {
            roots.push(Root::A(i, j));
        }
    }
    for i in 1..=n {
        roots.push(Root::B(i));
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            roots.push(Root::C(i, j));
        }
    }
    roots
}

/// Roots of the abelian nilradical: `{b_i} ∪ {c_{ij}}`, n(n+1)/2 of them.
pub fn nilradical_roots(n: usize) -> Vec<Root> {
    positive_roots(n)
        .into_iter()
        .filter(Root::in_nilradical)
        .collect()
}

/// A weight, i.e. an n-tuple of exact rationals.
///
/// The `shifted` flag records whether the stored value is `lambda + rho`
/// (true) or `lambda` itself (false); the two conventions coexist in the
/// literature and mixing them silently is the classic bug, so the flag is
/// carried explicitly and checked at module boundaries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    coords: Vec<Rational>,
    shifted: bool,
}

impl Weight {
    pub fn new(coords: Vec<Rational>, shifted: bool) -> Weight {
        Weight { coords, shifted }
    }

    pub fn from_ints(coords: &[i64], shifted: bool) -> Weight {
        Weight::new(coords.iter().map(|&c| rat(c)).collect(), shifted)
    }

    /// The zero weight (unshifted).
    pub fn zero(n: usize) -> Weight {
        Weight::from_ints(&vec![0; n], false)
    }

    /// `rho = [n, n-1, ..., 1]`, stored as the shifted form of zero.
    pub fn rho(n: usize) -> Weight {
        Weight::new((1..=n).rev().map(|c| rat(c as i64)).collect(), true)
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_shifted(&self) -> bool {
        self.shifted
    }

    /// `lambda -> lambda + rho`. Requires an unshifted input.
    pub fn shift(&self) -> Weight {
        assert!(!self.shifted, "weight already rho-shifted");
        let n = self.rank();
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, c)| c + rat((n - i) as i64))
            .collect();
        Weight::new(coords, true)
    }

    /// `lambda + rho -> lambda`. Requires a shifted input.
    pub fn unshift(&self) -> Weight {
        assert!(self.shifted, "weight is not rho-shifted");
        let n = self.rank();
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, c)| c - rat((n - i) as i64))
            .collect();
        Weight::new(coords, false)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Weakly decreasing with last coordinate >= 0.
    pub fn is_dominant(&self) -> bool {
        self.coords.windows(2).all(|w| w[0] >= w[1])
            && self.coords.last().is_none_or(|c| !c.is_negative())
    }

    /// No two coordinates share an absolute value and none is zero.
    pub fn is_regular(&self) -> bool {
        let mut seen: Vec<Rational> = Vec::with_capacity(self.rank());
        for c in &self.coords {
            if c.is_zero() {
                return false;
            }
            let a = c.abs();
            if seen.contains(&a) {
                return false;
            }
            seen.push(a);
        }
        true
    }

    /// Strictly decreasing coordinates (strict p-dominance for the
    /// parabolic crossing `alpha_n`).
    pub fn is_strictly_decreasing(&self) -> bool {
        self.coords.windows(2).all(|w| w[0] > w[1])
    }

    pub fn sum(&self) -> Rational {
        self.coords.iter().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn negated(&self) -> Weight {
        Weight::new(self.coords.iter().map(|c| -c).collect(), self.shifted)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// An element of the Weyl group W(C_n) as a signed permutation.
///
/// Convention ("coordinates move"): `w(e_i) = signs[i] * e_{perm[i]}`, so on
/// coordinates `(w lambda)_{perm[i]} = signs[i] * lambda_i`. Slots are
/// 0-indexed internally; the window serialization is 1-indexed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylElement {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl WeylElement {
    pub fn identity(n: usize) -> WeylElement {
        WeylElement {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<WeylElement> {
        let n = perm.len();
        if signs.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: signs.len(),
            });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidWord(format!("not a permutation: {perm:?}")));
            }
            seen[p] = true;
        }
        if !signs.iter().all(|&s| s == 1 || s == -1) {
            return Err(Error::InvalidWord(format!("signs must be ±1: {signs:?}")));
        }
        Ok(WeylElement { perm, signs })
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    /// Group composition: `(self ∘ rhs)(x) = self(rhs(x))`.
    pub fn compose(&self, rhs: &WeylElement) -> WeylElement {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch in composition");
        let n = self.rank();
        let mut perm = vec![0; n];
        let mut signs = vec![1i8; n];
        for i in 0..n {
            perm[i] = self.perm[rhs.perm[i]];
            signs[i] = rhs.signs[i] * self.signs[rhs.perm[i]];
        }
        WeylElement { perm, signs }
    }

    pub fn inverse(&self) -> WeylElement {
        let n = self.rank();
        let mut perm = vec![0; n];
        let mut signs = vec![1i8; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        WeylElement { perm, signs }
    }

    /// Linear action on a weight; preserves the shifted flag.
    pub fn act(&self, w: &Weight) -> Result<Weight> {
        if w.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: w.rank(),
            });
        }
        let mut coords = vec![Rational::zero(); w.rank()];
        for i in 0..w.rank() {
            let c = &w.coords()[i];
            coords[self.perm[i]] = if self.signs[i] == 1 {
                c.clone()
            } else {
                -c.clone()
            };
        }
        Ok(Weight::new(coords, w.is_shifted()))
    }

    /// Same action on an integer vector (used for roots).
    pub(crate) fn act_ivec(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for i in 0..v.len() {
            out[self.perm[i]] = self.signs[i] as i64 * v[i];
        }
        out
    }

    /// The reflection through a positive root.
    pub fn reflection(root: &Root, n: usize) -> WeylElement {
        assert!(root.is_valid(n), "root {root} out of range for rank {n}");
        let mut w = WeylElement::identity(n);
        match *root {
            Root::A(i, j) => w.perm.swap(i - 1, j - 1),
            Root::B(i) => w.signs[i - 1] = -1,
            Root::C(i, j) => {
                w.perm.swap(i - 1, j - 1);
                w.signs[i - 1] = -1;
                w.signs[j - 1] = -1;
            }
        }
        w
    }

    pub fn simple_reflection(i: usize, n: usize) -> WeylElement {
        WeylElement::reflection(&Root::simple(i, n), n)
    }

    /// The inversion set `Phi_w = {alpha > 0 : w^{-1} alpha < 0}`, in the
    /// pinned root order.
    pub fn phi_set(&self) -> Vec<Root> {
        let n = self.rank();
        let inv = self.inverse();
        positive_roots(n)
            .into_iter()
            .filter(|r| {
                let img = inv.act_ivec(&r.vector(n));
                ivec_is_negative(&img)
            })
            .collect()
    }

    /// Coxeter length, computed as `|Phi_w|`.
    pub fn length(&self) -> usize {
        self.phi_set().len()
    }

    /// Whether `Phi_w` lies inside the nilradical roots, i.e. whether the
    /// element belongs to the parabolic Hasse diagram.
    pub fn is_hasse(&self) -> bool {
        self.phi_set().iter().all(Root::in_nilradical)
    }

    /// One-line signed window notation, e.g. `[-1, 2, -4, 3]`, listing
    /// `w(e_i)` as a signed index for `i = 1..n`.
    pub fn window(&self) -> String {
        let entries: Vec<String> = (0..self.rank())
            .map(|i| (self.signs[i] as i64 * (self.perm[i] as i64 + 1)).to_string())
            .collect();
        format!("[{}]", entries.join(", "))
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.window())
    }
}

fn ivec_is_negative(v: &[i64]) -> bool {
    match v.iter().find(|&&c| c != 0) {
        Some(&c) => c < 0,
        None => false,
    }
}

/// The longest element of W(C_n), which is `-id`.
pub fn longest_element(n: usize) -> WeylElement {
    WeylElement {
        perm: (0..n).collect(),
        signs: vec![-1; n],
    }
}

/// Affine action `w . lambda = w(lambda + rho) - rho` on an unshifted
/// weight; the result is unshifted.
pub fn affine_act(w: &WeylElement, lambda: &Weight) -> Result<Weight> {
    assert!(
        !lambda.is_shifted(),
        "affine action takes an unshifted weight"
    );
    Ok(w.act(&lambda.shift())?.unshift())
}

/// Every element of W(C_n), each exactly once, in a deterministic order
/// (permutations lexicographic, sign masks in binary order within each).
pub fn enumerate_weyl(n: usize, caps: &RankCaps) -> Result<Vec<WeylElement>> {
    if n == 0 || n > caps.enumeration {
        return Err(Error::RankOutOfRange {
            what: "Weyl group enumeration",
            rank: n,
            max: caps.enumeration,
        });
    }
    let mut perms = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    lex_perms(n, &mut current, &mut used, &mut perms);
    let mut out = Vec::with_capacity(perms.len() << n);
    for perm in perms {
        for mask in 0u32..(1 << n) {
            let signs: Vec<i8> = (0..n)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect();
            out.push(WeylElement {
                perm: perm.clone(),
                signs,
            });
        }
    }
    Ok(out)
}

fn lex_perms(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    if current.len() == n {
        out.push(current.clone());
        return;
    }
    for i in 0..n {
        if !used[i] {
            used[i] = true;
            current.push(i);
            lex_perms(n, current, used, out);
            current.pop();
            used[i] = false;
        }
    }
}

/// Brute-force parabolic Hasse diagram: all `w` with `Phi_w` inside the
/// nilradical roots, sorted by (length, window). Cardinality 2^n.
pub fn hasse_bruteforce(n: usize, caps: &RankCaps) -> Result<Vec<WeylElement>> {
    let mut hasse: Vec<WeylElement> = enumerate_weyl(n, caps)?
        .into_iter()
        .filter(WeylElement::is_hasse)
        .collect();
    hasse.sort_by_key(|w| (w.length(), w.perm.clone(), w.signs.clone()));
    Ok(hasse)
}

/// Minimal-length representatives of the left cosets `w W_Sigma` wholly
/// contained in the parabolic Hasse diagram, sorted by (length, window).
///
/// `sigma` holds 1-based simple-root indices; two adjacent indices make the
/// block empty and are rejected.
pub fn min_coset_reps(n: usize, sigma: &[usize], caps: &RankCaps) -> Result<Vec<WeylElement>> {
    if sigma.is_empty() {
        return Err(Error::InvalidIndex { k: 0, n });
    }
    let mut sorted: Vec<usize> = sigma.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for &k in &sorted {
        if k == 0 || k > n {
            return Err(Error::InvalidIndex { k, n });
        }
    }
    for pair in sorted.windows(2) {
        if pair[1] == pair[0] + 1 {
            return Err(Error::EmptyBlock {
                first: pair[0],
                second: pair[1],
            });
        }
    }
    if n > caps.coset_search {
        return Err(Error::RankOutOfRange {
            what: "coset search",
            rank: n,
            max: caps.coset_search,
        });
    }

    let subgroup = generated_subgroup(
        n,
        &sorted
            .iter()
            .map(|&k| WeylElement::simple_reflection(k, n))
            .collect::<Vec<_>>(),
    );
    let hasse = hasse_bruteforce(n, caps)?;
    let members: HashSet<&WeylElement> = hasse.iter().collect();

    let mut claimed: HashSet<WeylElement> = HashSet::new();
    let mut reps = Vec::new();
    for w in &hasse {
        if claimed.contains(w) {
            continue;
        }
        let coset: Vec<WeylElement> = subgroup.iter().map(|s| w.compose(s)).collect();
        if coset.iter().all(|e| members.contains(e)) {
            let rep = coset
                .iter()
                .min_by_key(|e| (e.length(), e.perm.clone(), e.signs.clone()));
            reps.push(rep.unwrap().clone());
            claimed.extend(coset);
        }
    }
    reps.sort_by_key(|w| (w.length(), w.perm.clone(), w.signs.clone()));
    Ok(reps)
}

fn generated_subgroup(n: usize, generators: &[WeylElement]) -> Vec<WeylElement> {
    let mut seen: HashSet<WeylElement> = HashSet::new();
    let mut queue: VecDeque<WeylElement> = VecDeque::new();
    let id = WeylElement::identity(n);
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(w) = queue.pop_front() {
        for g in generators {
            let next = w.compose(g);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<WeylElement> = seen.into_iter().collect();
    out.sort_by_key(|w| (w.length(), w.perm.clone(), w.signs.clone()));
    out
}

/// Coxeter lengths by breadth-first search over right multiplication by
/// simple reflections; the independent validation of [`WeylElement::length`]
/// at small rank.
pub fn lengths_by_bfs(n: usize) -> HashMap<WeylElement, usize> {
    let gens: Vec<WeylElement> = (1..=n)
        .map(|i| WeylElement::simple_reflection(i, n))
        .collect();
    let mut dist: HashMap<WeylElement, usize> = HashMap::new();
    let id = WeylElement::identity(n);
    dist.insert(id.clone(), 0);
    let mut queue = VecDeque::new();
    queue.push_back(id);
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        for g in &gens {
            let next = w.compose(g);
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    dist
}
