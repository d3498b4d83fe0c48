//! Constant-coefficient differential operators on the big affine cell.
//!
//! The cell carries coordinates from the symmetric matrices: diagonal
//! variables `b_1..b_n` and off-diagonal `c_ij` for `i < j`. Operators and
//! polynomials share one representation, a finite map from exponent
//! multi-indices to exact rational coefficients, kept in graded
//! lexicographic order (variables ordered b_1..b_n, c_12, c_13, ...,
//! c_{n-1,n}). Coefficients are exact: the quarter powers in the
//! determinant expansion do not survive floating point.

use crate::{rat, Error, Rational, Result};
use num::{One, Zero};
use serde_json::{json, Value};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// The variable set for rank n: `b_1..b_n` then `c_ij` by (i, j).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarSet {
    n: usize,
}

impl VarSet {
    pub fn new(n: usize) -> VarSet {
        VarSet { n }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn count(&self) -> usize {
        self.n + self.n * (self.n - 1) / 2
    }

    pub fn b(&self, i: usize) -> usize {
        assert!(1 <= i && i <= self.n);
        i - 1
    }

    pub fn c(&self, i: usize, j: usize) -> usize {
        assert!(1 <= i && i < j && j <= self.n);
        // c_12, c_13, ..., c_1n, c_23, ...
        let before: usize = (1..i).map(|r| self.n - r).sum();
        self.n + before + (j - i - 1)
    }

    pub fn name(&self, idx: usize) -> String {
        if idx < self.n {
            return format!("b{}", idx + 1);
        }
        let mut rest = idx - self.n;
        for i in 1..self.n {
            let row = self.n - i;
            if rest < row {
                return format!("c{}{}", i, i + 1 + rest);
            }
            rest -= row;
        }
        unreachable!("variable index {idx} out of range");
    }
}

/// Exponent vector with graded lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(nvars: usize) -> MultiIndex {
        MultiIndex(vec![0; nvars])
    }

    pub fn unit(nvars: usize, var: usize) -> MultiIndex {
        let mut v = vec![0; nvars];
        v[var] = 1;
        MultiIndex(v)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, `None` if any entry would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(MultiIndex)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn insert_term(map: &mut BTreeMap<MultiIndex, Rational>, mi: MultiIndex, coeff: Rational) {
    if coeff.is_zero() {
        return;
    }
    let entry = map.entry(mi);
    match entry {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let sum = o.get() + coeff;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

fn format_terms(
    f: &mut fmt::Formatter<'_>,
    vars: &VarSet,
    terms: &BTreeMap<MultiIndex, Rational>,
    var_prefix: &str,
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    // descending graded-lex puts the b-heavy leading terms first
    for (pos, (mi, coeff)) in terms.iter().rev().enumerate() {
        let negative = coeff < &Rational::zero();
        let abs = if negative {
            -coeff.clone()
        } else {
            coeff.clone()
        };
        if pos == 0 {
            if negative {
                write!(f, "-")?;
            }
        } else if negative {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let mut factors: Vec<String> = Vec::new();
        for (var, &e) in mi.0.iter().enumerate() {
            if e == 1 {
                factors.push(format!("{}{}", var_prefix, vars.name(var)));
            } else if e > 1 {
                factors.push(format!("{}{}^{}", var_prefix, vars.name(var), e));
            }
        }
        if factors.is_empty() {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            write!(f, "{}", factors.join("*"))?;
        } else {
            write!(f, "{}*{}", abs, factors.join("*"))?;
        }
    }
    Ok(())
}

fn terms_to_json(vars: &VarSet, terms: &BTreeMap<MultiIndex, Rational>) -> Value {
    json!({
        "schema": 1,
        "rank": vars.rank(),
        "variables": (0..vars.count()).map(|i| vars.name(i)).collect::<Vec<_>>(),
        "terms": terms.iter().rev().map(|(mi, c)| json!({
            "exponents": mi.0.clone(),
            "coeff": c.to_string(),
        })).collect::<Vec<_>>(),
    })
}

/// A constant-coefficient differential operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyDiffOp {
    vars: VarSet,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl PolyDiffOp {
    pub fn zero(n: usize) -> PolyDiffOp {
        PolyDiffOp {
            vars: VarSet::new(n),
            terms: BTreeMap::new(),
        }
    }

    /// The identity operator (empty multi-index, coefficient 1).
    pub fn one(n: usize) -> PolyDiffOp {
        let vars = VarSet::new(n);
        let mut terms = BTreeMap::new();
        terms.insert(MultiIndex::zero(vars.count()), Rational::one());
        PolyDiffOp { vars, terms }
    }

    pub fn partial(n: usize, var: usize) -> PolyDiffOp {
        let vars = VarSet::new(n);
        let mut terms = BTreeMap::new();
        terms.insert(MultiIndex::unit(vars.count(), var), Rational::one());
        PolyDiffOp { vars, terms }
    }

    pub fn d_b(n: usize, i: usize) -> PolyDiffOp {
        let vars = VarSet::new(n);
        PolyDiffOp::partial(n, vars.b(i))
    }

    pub fn d_c(n: usize, i: usize, j: usize) -> PolyDiffOp {
        let vars = VarSet::new(n);
        PolyDiffOp::partial(n, vars.c(i, j))
    }

    pub fn from_terms(n: usize, list: Vec<(MultiIndex, Rational)>) -> PolyDiffOp {
        let vars = VarSet::new(n);
        let mut terms = BTreeMap::new();
        for (mi, c) in list {
            assert_eq!(mi.0.len(), vars.count());
            insert_term(&mut terms, mi, c);
        }
        PolyDiffOp { vars, terms }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Rational> {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximal total degree of any multi-index (0 for the zero operator).
    pub fn order(&self) -> usize {
        self.terms
            .keys()
            .map(|mi| mi.total() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> PolyDiffOp {
        if c.is_zero() {
            return PolyDiffOp::zero(self.vars.rank());
        }
        PolyDiffOp {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(mi, v)| (mi.clone(), v * c))
                .collect(),
        }
    }

    pub fn add(&self, other: &PolyDiffOp) -> PolyDiffOp {
        assert_eq!(
            self.vars, other.vars,
            "operators over different variable sets"
        );
        let mut terms = self.terms.clone();
        for (mi, c) in &other.terms {
            insert_term(&mut terms, mi.clone(), c.clone());
        }
        PolyDiffOp {
            vars: self.vars,
            terms,
        }
    }

    /// Composition; with constant coefficients this is multi-index
    /// convolution and in particular commutative.
    pub fn compose(&self, other: &PolyDiffOp) -> PolyDiffOp {
        assert_eq!(
            self.vars, other.vars,
            "operators over different variable sets"
        );
        let mut terms = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                insert_term(&mut terms, a.add(b), ca * cb);
            }
        }
        PolyDiffOp {
            vars: self.vars,
            terms,
        }
    }

    /// Applies the operator to a polynomial; a partial derivative acts on a
    /// monomial by the falling-factorial rule.
    pub fn apply(&self, poly: &Polynomial) -> Polynomial {
        assert_eq!(
            self.vars, poly.vars,
            "operator and polynomial variable sets differ"
        );
        let mut terms = BTreeMap::new();
        for (mu, c_op) in &self.terms {
            for (nu, c_poly) in &poly.terms {
                let Some(rest) = nu.checked_sub(mu) else {
                    continue;
                };
                let mut coeff = c_op * c_poly;
                for (e_nu, e_mu) in nu.0.iter().zip(&mu.0) {
                    for f in (e_nu - e_mu + 1)..=*e_nu {
                        coeff *= rat(f as i64);
                    }
                }
                insert_term(&mut terms, rest, coeff);
            }
        }
        Polynomial {
            vars: self.vars,
            terms,
        }
    }

    pub fn to_json(&self) -> Value {
        terms_to_json(&self.vars, &self.terms)
    }
}

impl fmt::Display for PolyDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(f, &self.vars, &self.terms, "d")
    }
}

/// A polynomial in the cell coordinates, same representation as an
/// operator but displayed without the derivative prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: VarSet,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Polynomial {
        Polynomial {
            vars: VarSet::new(n),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(n: usize, mi: MultiIndex, coeff: Rational) -> Polynomial {
        let vars = VarSet::new(n);
        assert_eq!(mi.0.len(), vars.count());
        let mut terms = BTreeMap::new();
        insert_term(&mut terms, mi, coeff);
        Polynomial { vars, terms }
    }

    pub fn constant(n: usize, c: Rational) -> Polynomial {
        Polynomial::monomial(n, MultiIndex::zero(VarSet::new(n).count()), c)
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.vars, other.vars);
        let mut terms = self.terms.clone();
        for (mi, c) in &other.terms {
            insert_term(&mut terms, mi.clone(), c.clone());
        }
        Polynomial {
            vars: self.vars,
            terms,
        }
    }

    pub fn to_json(&self) -> Value {
        terms_to_json(&self.vars, &self.terms)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(f, &self.vars, &self.terms, "")
    }
}

/// All exponent vectors over `nvars` variables of total degree exactly `d`.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fn rec(out: &mut Vec<MultiIndex>, current: &mut Vec<u32>, var: usize, left: u32) {
        if var + 1 == current.len() {
            current[var] = left;
            out.push(MultiIndex(current.clone()));
            return;
        }
        for e in (0..=left).rev() {
            current[var] = e;
            rec(out, current, var + 1, left - e);
        }
        current[var] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return out;
    }
    rec(&mut out, &mut current, 0, d);
    out
}

/// The explicit third-order operator of the rank-3 even singular complex:
/// `4 db1 db2 db3 - db1 dc23^2 - db2 dc13^2 - db3 dc12^2 + dc12 dc13 dc23`.
pub fn operator_d() -> PolyDiffOp {
    let n = 3;
    let b = |i| PolyDiffOp::d_b(n, i);
    let c = |i, j| PolyDiffOp::d_c(n, i, j);
    b(1).compose(&b(2))
        .compose(&b(3))
        .scale(&rat(4))
        .add(&b(1).compose(&c(2, 3)).compose(&c(2, 3)).scale(&rat(-1)))
        .add(&b(2).compose(&c(1, 3)).compose(&c(1, 3)).scale(&rat(-1)))
        .add(&b(3).compose(&c(1, 2)).compose(&c(1, 2)).scale(&rat(-1)))
        .add(&c(1, 2).compose(&c(1, 3)).compose(&c(2, 3)))
}

const DET_RANK_CAP: usize = 5;

/// Determinant of the symmetric operator matrix with `d_{b_i}` on the
/// diagonal and `d_{c_ij}/2` off it, expanded over exact rationals.
pub fn det_operator(n: usize) -> Result<PolyDiffOp> {
    if n == 0 || n > DET_RANK_CAP {
        return Err(Error::RankOutOfRange {
            what: "operator determinant",
            rank: n,
            max: DET_RANK_CAP,
        });
    }
    let vars = VarSet::new(n);
    let half = Rational::new(1.into(), 2.into());
    let entry = |i: usize, j: usize| -> (MultiIndex, Rational) {
        if i == j {
            (MultiIndex::unit(vars.count(), vars.b(i)), Rational::one())
        } else {
            let (lo, hi) = if i < j { (i, j) } else { (j, i) };
            (MultiIndex::unit(vars.count(), vars.c(lo, hi)), half.clone())
        }
    };
    let mut perms = Vec::new();
    let mut used = vec![false; n];
    let mut current = Vec::new();
    permute(n, &mut current, &mut used, &mut perms);
    let mut result = PolyDiffOp::zero(n);
    for perm in perms {
        let mut mi = MultiIndex::zero(vars.count());
        let mut coeff = if parity(&perm) {
            -Rational::one()
        } else {
            Rational::one()
        };
        for (row, &col) in perm.iter().enumerate() {
            let (emi, ec) = entry(row + 1, col + 1);
            mi = mi.add(&emi);
            coeff *= ec;
        }
        result = result.add(&PolyDiffOp::from_terms(n, vec![(mi, coeff)]));
    }
    Ok(result)
}

fn permute(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    if current.len() == n {
        out.push(current.clone());
        return;
    }
    for i in 0..n {
        if !used[i] {
            used[i] = true;
            current.push(i);
            permute(n, current, used, out);
            current.pop();
            used[i] = false;
        }
    }
}

fn parity(perm: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

const MONOMIAL_CAP: usize = 10_000;

/// Exact rank of the linear map the operator induces from polynomials of
/// degree exactly `d + order` onto degree exactly `d`, together with the
/// target dimension. Full rank at `d` is surjectivity in that degree.
pub fn surjectivity_rank(op: &PolyDiffOp, d: u32) -> Result<(usize, usize)> {
    let nvars = op.vars().count();
    let source = monomials_of_degree(nvars, d + op.order() as u32);
    let target = monomials_of_degree(nvars, d);
    if source.len() > MONOMIAL_CAP || target.len() > MONOMIAL_CAP {
        return Err(Error::DimensionOverflow {
            needed: source.len().max(target.len()),
            cap: MONOMIAL_CAP,
        });
    }
    let target_index: BTreeMap<&MultiIndex, usize> =
        target.iter().enumerate().map(|(i, mi)| (mi, i)).collect();
    // columns = source monomials, rows = target monomials
    let mut matrix: Vec<Vec<Rational>> = vec![vec![Rational::zero(); source.len()]; target.len()];
    for (col, mi) in source.iter().enumerate() {
        let image = op.apply(&Polynomial::monomial(
            op.vars().rank(),
            mi.clone(),
            Rational::one(),
        ));
        for (out_mi, coeff) in image.terms() {
            // lower-order operator terms produce components of higher
            // degree; only the degree-d block is part of this map
            if let Some(&row) = target_index.get(out_mi) {
                matrix[row][col] = coeff.clone();
            }
        }
    }
    Ok((exact_rank(matrix), target.len()))
}

fn exact_rank(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(found) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, found);
        let inv = m[pivot_row][col].clone();
        for r in 0..rows {
            if r != pivot_row && !m[r][col].is_zero() {
                let factor = &m[r][col] / &inv;
                let pivot = m[pivot_row].clone();
                for (entry, lead) in m[r][col..].iter_mut().zip(&pivot[col..]) {
                    let delta = &factor * lead;
                    *entry = &*entry - delta;
                }
            }
        }
        rank += 1;
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    rank
}
