//! Sparse exact-integer polynomials in two variable families x and y, with
//! the isobaric divided difference operator.
//!
//! Terms are kept in a canonical order: ascending total degree, and within a
//! degree descending lexicographic on the concatenated (x, y) exponent
//! vector.  This is the order in which terms print and serialize, so output
//! is bit-exact across runs.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A variable identifier, 1-based within its family.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Var {
    X(usize),
    Y(usize),
}

/// Exponent record of a single term.  Trailing zero exponents are trimmed,
/// so monomials are ambient-independent values.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    xs: Vec<u16>,
    ys: Vec<u16>,
}

fn trim(mut v: Vec<u16>) -> Vec<u16> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial { xs: Vec::new(), ys: Vec::new() }
    }

    pub fn from_exponents(xs: Vec<u16>, ys: Vec<u16>) -> Self {
        Monomial { xs: trim(xs), ys: trim(ys) }
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::X(i) => {
                let mut xs = vec![0; i];
                xs[i - 1] = 1;
                Monomial { xs, ys: Vec::new() }
            }
            Var::Y(j) => {
                let mut ys = vec![0; j];
                ys[j - 1] = 1;
                Monomial { xs: Vec::new(), ys }
            }
        }
    }

    pub fn x_exp(&self, i: usize) -> u16 {
        self.xs.get(i - 1).copied().unwrap_or(0)
    }

    pub fn y_exp(&self, j: usize) -> u16 {
        self.ys.get(j - 1).copied().unwrap_or(0)
    }

    pub fn exp(&self, v: Var) -> u16 {
        match v {
            Var::X(i) => self.x_exp(i),
            Var::Y(j) => self.y_exp(j),
        }
    }

    pub fn degree(&self) -> usize {
        self.xs.iter().chain(self.ys.iter()).map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let join = |a: &[u16], b: &[u16]| -> Vec<u16> {
            (0..a.len().max(b.len()))
                .map(|k| a.get(k).copied().unwrap_or(0) + b.get(k).copied().unwrap_or(0))
                .collect()
        };
        Monomial {
            xs: join(&self.xs, &other.xs),
            ys: join(&self.ys, &other.ys),
        }
    }

    fn with_x_pair(&self, i: usize, p: u16, q: u16) -> Monomial {
        let mut xs = self.xs.clone();
        if xs.len() < i + 1 {
            xs.resize(i + 1, 0);
        }
        xs[i - 1] = p;
        xs[i] = q;
        Monomial { xs: trim(xs), ys: self.ys.clone() }
    }

    /// Largest x index with a positive exponent (0 if none).
    pub fn max_x(&self) -> usize {
        self.xs.len()
    }

    pub fn max_y(&self) -> usize {
        self.ys.len()
    }
}

/// Compares padded exponent streams so that the larger exponent sorts first.
fn cmp_desc(a: &[u16], b: &[u16]) -> Ordering {
    for k in 0..a.len().max(b.len()) {
        let av = a.get(k).copied().unwrap_or(0);
        let bv = b.get(k).copied().unwrap_or(0);
        if av != bv {
            return bv.cmp(&av);
        }
    }
    Ordering::Equal
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| cmp_desc(&self.xs, &other.xs))
            .then_with(|| cmp_desc(&self.ys, &other.ys))
    }
}

/// An integer polynomial in x_1..x_nx, y_1..y_ny.  Coefficients are
/// arbitrary-precision and never stored as zero.
///
/// Equality compares terms only; the declared family sizes (nx, ny) are
/// bookkeeping that widens automatically under arithmetic and is recorded by
/// the serializers.
#[derive(Clone, Debug)]
pub struct SparsePoly {
    nx: usize,
    ny: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl PartialEq for SparsePoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for SparsePoly {}

impl SparsePoly {
    pub fn zero(nx: usize, ny: usize) -> Self {
        SparsePoly { nx, ny, terms: BTreeMap::new() }
    }

    pub fn constant(c: impl Into<BigInt>, nx: usize, ny: usize) -> Self {
        let mut p = SparsePoly::zero(nx, ny);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(), c);
        }
        p
    }

    pub fn one() -> Self {
        SparsePoly::constant(1, 0, 0)
    }

    pub fn var(v: Var) -> Self {
        let (nx, ny) = match v {
            Var::X(i) => (i, 0),
            Var::Y(j) => (0, j),
        };
        let mut p = SparsePoly::zero(nx, ny);
        p.terms.insert(Monomial::var(v), BigInt::one());
        p
    }

    pub fn term(m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = SparsePoly::zero(m.max_x(), m.max_y());
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        self.nx = self.nx.max(m.max_x());
        self.ny = self.ny.max(m.max_y());
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        out.nx = out.nx.max(other.nx);
        out.ny = out.ny.max(other.ny);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> SparsePoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero(self.nx.max(other.nx), self.ny.max(other.ny));
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> SparsePoly {
        let c = c.into();
        let mut out = SparsePoly::zero(self.nx, self.ny);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.terms.insert(m.clone(), v * &c);
        }
        out
    }

    /// Drops every term with a positive exponent on any of the named
    /// variables (substitutes zero for them).
    pub fn substitute_zero(&self, vars: &[Var]) -> SparsePoly {
        let mut out = SparsePoly::zero(self.nx, self.ny);
        'term: for (m, c) in &self.terms {
            for &v in vars {
                if m.exp(v) > 0 {
                    continue 'term;
                }
            }
            out.terms.insert(m.clone(), c.clone());
        }
        out
    }

    /// Sets x_i = 0 for every i > k.
    pub fn kill_x_above(&self, k: usize) -> SparsePoly {
        let vars: Vec<Var> = (k + 1..=self.nx).map(Var::X).collect();
        let mut out = self.substitute_zero(&vars);
        out.nx = k.min(self.nx).max(out.terms.keys().map(Monomial::max_x).max().unwrap_or(0));
        out
    }

    /// Sets y_j = 0 for every j > k.
    pub fn kill_y_above(&self, k: usize) -> SparsePoly {
        let vars: Vec<Var> = (k + 1..=self.ny).map(Var::Y).collect();
        let mut out = self.substitute_zero(&vars);
        out.ny = k.min(self.ny).max(out.terms.keys().map(Monomial::max_y).max().unwrap_or(0));
        out
    }

    /// Transports exponents along an injective variable mapping.  Variables
    /// not named by the map stay put.
    pub fn rename_variables(&self, map: &BTreeMap<Var, Var>) -> Result<SparsePoly> {
        // injectivity on active variables
        let mut active: Vec<Var> = Vec::new();
        for i in 1..=self.nx {
            if self.terms.keys().any(|m| m.x_exp(i) > 0) {
                active.push(Var::X(i));
            }
        }
        for j in 1..=self.ny {
            if self.terms.keys().any(|m| m.y_exp(j) > 0) {
                active.push(Var::Y(j));
            }
        }
        let images: Vec<Var> = active
            .iter()
            .map(|v| map.get(v).copied().unwrap_or(*v))
            .collect();
        for a in 0..images.len() {
            for b in a + 1..images.len() {
                if images[a] == images[b] {
                    return Err(Error::NonInjectiveRename);
                }
            }
        }
        let mut out = SparsePoly::zero(self.nx, self.ny);
        for (m, c) in &self.terms {
            let mut xs: Vec<u16> = Vec::new();
            let mut ys: Vec<u16> = Vec::new();
            let mut put = |v: Var, e: u16| match v {
                Var::X(i) => {
                    if xs.len() < i {
                        xs.resize(i, 0);
                    }
                    xs[i - 1] += e;
                }
                Var::Y(j) => {
                    if ys.len() < j {
                        ys.resize(j, 0);
                    }
                    ys[j - 1] += e;
                }
            };
            for i in 1..=m.max_x() {
                let e = m.x_exp(i);
                if e > 0 {
                    put(map.get(&Var::X(i)).copied().unwrap_or(Var::X(i)), e);
                }
            }
            for j in 1..=m.max_y() {
                let e = m.y_exp(j);
                if e > 0 {
                    put(map.get(&Var::Y(j)).copied().unwrap_or(Var::Y(j)), e);
                }
            }
            out.add_term(Monomial::from_exponents(xs, ys), c.clone());
        }
        Ok(out)
    }

    /// Drops all terms of total degree above `d`.
    pub fn truncate(&self, d: usize) -> SparsePoly {
        let mut out = SparsePoly::zero(self.nx, self.ny);
        for (m, c) in &self.terms {
            if m.degree() <= d {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Exchanges the variables x_i and x_j in every term.
    pub fn swap_x(&self, i: usize, j: usize) -> SparsePoly {
        let mut out = SparsePoly::zero(self.nx.max(i).max(j), self.ny);
        for (m, c) in &self.terms {
            let (p, q) = (m.x_exp(i), m.x_exp(j));
            let mut xs: Vec<u16> = (1..=m.max_x().max(i).max(j)).map(|k| m.x_exp(k)).collect();
            xs[i - 1] = q;
            xs[j - 1] = p;
            out.terms.insert(
                Monomial { xs: trim(xs), ys: m.ys.clone() },
                c.clone(),
            );
        }
        out
    }

    pub fn swap_y(&self, i: usize, j: usize) -> SparsePoly {
        let mut out = SparsePoly::zero(self.nx, self.ny.max(i).max(j));
        for (m, c) in &self.terms {
            let (p, q) = (m.y_exp(i), m.y_exp(j));
            let mut ys: Vec<u16> = (1..=m.max_y().max(i).max(j)).map(|k| m.y_exp(k)).collect();
            ys[i - 1] = q;
            ys[j - 1] = p;
            out.terms.insert(
                Monomial { xs: m.xs.clone(), ys: trim(ys) },
                c.clone(),
            );
        }
        out
    }

    pub fn is_symmetric_in_x(&self, i: usize, j: usize) -> bool {
        self.swap_x(i, j) == *self
    }

    /// The isobaric divided difference
    /// π_i(f) = ((1 - x_{i+1}) f - (1 - x_i) s_i f) / (x_i - x_{i+1}),
    /// where s_i exchanges x_i and x_{i+1}.  The division is exact for every
    /// input; a remainder indicates an arithmetic bug and panics.
    pub fn isobaric_pi(&self, i: usize) -> SparsePoly {
        let swapped = self.swap_x(i, i + 1);
        let xi = SparsePoly::var(Var::X(i));
        let xi1 = SparsePoly::var(Var::X(i + 1));
        let numerator = self
            .sub(&xi1.mul(self))
            .sub(&swapped)
            .add(&xi.mul(&swapped));

        // Group terms by everything except (x_i, x_{i+1}); the numerator is
        // antisymmetric in that pair, so terms come in (p,q)/(q,p) pairs with
        // opposite coefficients and the quotient is a finite geometric sum.
        let mut groups: BTreeMap<Monomial, BTreeMap<(u16, u16), BigInt>> = BTreeMap::new();
        for (m, c) in &numerator.terms {
            let rest = m.with_x_pair(i, 0, 0);
            groups
                .entry(rest)
                .or_default()
                .insert((m.x_exp(i), m.x_exp(i + 1)), c.clone());
        }

        let mut out = SparsePoly::zero(
            self.nx.max(i + 1),
            self.ny,
        );
        for (rest, pairs) in &groups {
            for (&(p, q), c) in pairs {
                match p.cmp(&q) {
                    Ordering::Equal => panic!(
                        "isobaric divided difference: diagonal term survived; \
                         non-exact division is an internal arithmetic bug"
                    ),
                    Ordering::Less => continue, // handled by its mirror
                    Ordering::Greater => {
                        let mirror = pairs.get(&(q, p)).cloned().unwrap_or_else(BigInt::zero);
                        if mirror != -c.clone() {
                            panic!(
                                "isobaric divided difference: unpaired term; \
                                 non-exact division is an internal arithmetic bug"
                            );
                        }
                        for t in 0..(p - q) {
                            out.add_term(rest.with_x_pair(i, q + t, p - 1 - t), c.clone());
                        }
                    }
                }
            }
        }
        out
    }

    /// Canonical text form, e.g. `x1 + y1 - x1*y1`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    s.push('-');
                }
            } else if negative {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.degree() == 0 {
                factors.push(abs.to_string());
            }
            for i in 1..=m.max_x() {
                match m.x_exp(i) {
                    0 => {}
                    1 => factors.push(format!("x{i}")),
                    e => factors.push(format!("x{i}^{e}")),
                }
            }
            for j in 1..=m.max_y() {
                match m.y_exp(j) {
                    0 => {}
                    1 => factors.push(format!("y{j}")),
                    e => factors.push(format!("y{j}^{e}")),
                }
            }
            s.push_str(&factors.join("*"));
        }
        s
    }

    /// JSON form: family sizes plus the term list in canonical order, with
    /// exponent vectors padded to the declared sizes and coefficients as
    /// signed decimal strings.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let xs: Vec<u16> = (1..=self.nx).map(|i| m.x_exp(i)).collect();
                let ys: Vec<u16> = (1..=self.ny).map(|j| m.y_exp(j)).collect();
                json!({ "x": xs, "y": ys, "c": c.to_string() })
            })
            .collect();
        json!({ "nx": self.nx, "ny": self.ny, "terms": terms })
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}
