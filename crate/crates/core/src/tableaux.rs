//! Rectangular semistandard tableaux and the union monoid.
//!
//! A [`Tableau`] has `n` rows over the alphabet `[m]`. Rows are the canonical
//! storage; columns are computed on demand.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Entry = u16;

/// A strictly increasing list of entries. Doubles as a Plücker index set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Column(Vec<Entry>);

impl Column {
    pub fn new(entries: Vec<Entry>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::ColumnNotStrict { column: 0 });
        }
        Ok(Column(entries))
    }

    /// Unchecked constructor for internal use.
    pub(crate) fn from_sorted(entries: Vec<Entry>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0] < w[1]));
        Column(entries)
    }

    /// The solid column `{start, ..., start+n-1}`.
    pub fn trivial(start: Entry, n: usize) -> Self {
        Column((0..n as Entry).map(|k| start + k).collect())
    }

    /// `[lo, lo+n] \ {removed}`.
    pub fn interval_minus(lo: Entry, n: usize, removed: Entry) -> Self {
        Column((lo..=lo + n as Entry).filter(|&x| x != removed).collect())
    }

    pub fn entries(&self) -> &[Entry] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn gap_weight(&self) -> usize {
        self.0.windows(2).map(|w| (w[1] - w[0] - 1) as usize).sum()
    }

    /// Coefficients of ω_1..ω_{n-1}.
    pub fn weight(&self) -> WeightVector {
        let n = self.0.len();
        let mut w = vec![0i64; n.saturating_sub(1)];
        for j in 1..n {
            // gap between positions j-1 and j contributes to ω_{n-j}
            w[n - j - 1] += (self.0[j] - self.0[j - 1] - 1) as i64;
        }
        WeightVector(w)
    }

    pub fn is_trivial(&self) -> bool {
        self.gap_weight() == 0
    }

    pub fn is_fundamental(&self) -> bool {
        self.gap_weight() == 1
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Integer vector indexed by `[1,m]`; entries may be negative for fractions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ContentVector(pub Vec<i64>);

impl ContentVector {
    pub fn zero(m: usize) -> Self {
        ContentVector(vec![0; m])
    }

    pub fn of_column(c: &Column, m: usize) -> Self {
        let mut v = vec![0; m];
        for &x in c.entries() {
            v[x as usize - 1] += 1;
        }
        ContentVector(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl Add for &ContentVector {
    type Output = ContentVector;
    fn add(self, rhs: &ContentVector) -> ContentVector {
        ContentVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ContentVector {
    type Output = ContentVector;
    fn sub(self, rhs: &ContentVector) -> ContentVector {
        ContentVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

/// Weight in the basis of fundamental weights ω_1, …, ω_{n-1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn zero(n: usize) -> Self {
        WeightVector(vec![0; n.saturating_sub(1)])
    }

    /// Writes `self` in the basis of simple roots of sl_n, if the coefficients are integers.
    pub fn root_coefficients(&self) -> Option<Vec<i64>> {
        let r = self.0.len();
        let n = r as i64 + 1;
        let mut out = Vec::with_capacity(r);
        for j in 1..=r as i64 {
            let mut acc = 0i64;
            for k in 1..=r as i64 {
                acc += j.min(k) * (n - j.max(k)) * self.0[k as usize - 1];
            }
            if acc % n != 0 {
                return None;
            }
            out.push(acc / n);
        }
        Some(out)
    }

    /// Comparison in the root order: `a ≤ b` iff `b - a` is a nonnegative sum of simple roots.
    pub fn root_cmp(&self, other: &WeightVector) -> Option<Ordering> {
        if self == other {
            return Some(Ordering::Equal);
        }
        let c = (other - self).root_coefficients()?;
        if c.iter().all(|&x| x >= 0) {
            Some(Ordering::Less)
        } else if c.iter().all(|&x| x <= 0) {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    pub fn root_leq(&self, other: &WeightVector) -> bool {
        matches!(self.root_cmp(other), Some(Ordering::Less | Ordering::Equal))
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl Add for &WeightVector {
    type Output = WeightVector;
    fn add(self, rhs: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &WeightVector {
    type Output = WeightVector;
    fn sub(self, rhs: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for WeightVector {
    type Output = WeightVector;
    fn neg(self) -> WeightVector {
        WeightVector(self.0.into_iter().map(|x| -x).collect())
    }
}

/// Solves `diff = Σ a_i d_i` where `d_i = e_i + … + e_{i+n-1}`, `i ∈ [1, m-n+1]`.
pub fn frozen_lattice_solve(diff: &[i64], n: usize) -> Option<Vec<i64>> {
    let m = diff.len();
    if m < n {
        return None;
    }
    let count = m - n + 1;
    let mut a = vec![0i64; count];
    for i in 0..count {
        let lo = (i + 1).saturating_sub(n);
        let covered: i64 = a[lo..i].iter().sum();
        a[i] = diff[i] - covered;
    }
    for i in count..m {
        let lo = (i + 1).saturating_sub(n);
        let covered: i64 = a[lo..count].iter().sum();
        if covered != diff[i] {
            return None;
        }
    }
    Some(a)
}

#[derive(Deserialize)]
struct RawTableau {
    n: usize,
    m: usize,
    rows: Vec<Vec<i64>>,
}

impl TryFrom<RawTableau> for Tableau {
    type Error = Error;
    fn try_from(r: RawTableau) -> Result<Self> {
        Tableau::new(r.rows, r.n, r.m)
    }
}

/// A rectangular semistandard tableau with `n` rows over `[m]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawTableau")]
pub struct Tableau {
    n: usize,
    m: usize,
    rows: Vec<Vec<Entry>>,
}

impl Tableau {
    /// Validates and sorts the rows.
    pub fn new(rows: Vec<Vec<i64>>, n: usize, m: usize) -> Result<Self> {
        if n == 0 || m <= n {
            return Err(Error::BadDimensions(format!("n={n}, m={m}")));
        }
        if rows.len() != n {
            return Err(Error::WrongRowCount { expected: n, got: rows.len() });
        }
        let k = rows[0].len();
        if rows.iter().any(|r| r.len() != k) {
            return Err(Error::RaggedRows);
        }
        let mut out = Vec::with_capacity(n);
        for r in rows {
            let mut row = Vec::with_capacity(k);
            for x in r {
                if x < 1 || x > m as i64 {
                    return Err(Error::OutOfRange { entry: x, m });
                }
                row.push(x as Entry);
            }
            row.sort_unstable();
            out.push(row);
        }
        let t = Tableau { n, m, rows: out };
        t.check_columns()?;
        Ok(t)
    }

    fn check_columns(&self) -> Result<()> {
        for p in 0..self.num_columns() {
            for r in 1..self.n {
                if self.rows[r - 1][p] >= self.rows[r][p] {
                    return Err(Error::ColumnNotStrict { column: p + 1 });
                }
            }
        }
        Ok(())
    }

    fn from_sorted_rows(rows: Vec<Vec<Entry>>, n: usize, m: usize) -> Result<Self> {
        let t = Tableau { n, m, rows };
        t.check_columns()?;
        Ok(t)
    }

    /// The empty tableau 𝟙.
    pub fn empty(n: usize, m: usize) -> Self {
        Tableau { n, m, rows: vec![Vec::new(); n] }
    }

    pub fn from_column(c: &Column, m: usize) -> Result<Self> {
        let n = c.len();
        if let Some(&x) = c.entries().iter().find(|&&x| x < 1 || x as usize > m) {
            return Err(Error::OutOfRange { entry: x as i64, m });
        }
        Ok(Tableau { n, m, rows: c.entries().iter().map(|&x| vec![x]).collect() })
    }

    /// Union of single-column tableaux. Always semistandard.
    pub fn from_columns(cols: &[Column], n: usize, m: usize) -> Result<Self> {
        let mut rows = vec![Vec::with_capacity(cols.len()); n];
        for c in cols {
            if c.len() != n {
                return Err(Error::DimensionMismatch(format!("column of length {}", c.len()), format!("n={n}")));
            }
            for (r, &x) in c.entries().iter().enumerate() {
                if x < 1 || x as usize > m {
                    return Err(Error::OutOfRange { entry: x as i64, m });
                }
                rows[r].push(x);
            }
        }
        for r in &mut rows {
            r.sort_unstable();
        }
        Ok(Tableau { n, m, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rows(&self) -> &[Vec<Entry>] {
        &self.rows
    }

    pub fn num_columns(&self) -> usize {
        self.rows[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.num_columns() == 0
    }

    pub fn column(&self, p: usize) -> Column {
        Column::from_sorted(self.rows.iter().map(|r| r[p]).collect())
    }

    /// Columns left to right (lexicographically sorted).
    pub fn columns(&self) -> Vec<Column> {
        (0..self.num_columns()).map(|p| self.column(p)).collect()
    }

    fn check_dims(&self, other: &Tableau) -> Result<()> {
        if self.n != other.n || self.m != other.m {
            return Err(Error::DimensionMismatch(
                format!("{},{}", self.n, self.m),
                format!("{},{}", other.n, other.m),
            ));
        }
        Ok(())
    }

    pub fn union(&self, other: &Tableau) -> Result<Tableau> {
        self.check_dims(other)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| merge_sorted(a, b))
            .collect();
        Ok(Tableau { n: self.n, m: self.m, rows })
    }

    /// `T / S`, defined when `S` is a row-wise factor and the quotient is semistandard.
    pub fn divide(&self, s: &Tableau) -> Result<Tableau> {
        self.check_dims(s)?;
        let mut rows = Vec::with_capacity(self.n);
        for (a, b) in self.rows.iter().zip(&s.rows) {
            rows.push(remove_sorted(a, b).ok_or(Error::NotAFactor)?);
        }
        Tableau::from_sorted_rows(rows, self.n, self.m).map_err(|_| Error::NotAFactor)
    }

    pub fn content(&self) -> ContentVector {
        let mut v = vec![0i64; self.m];
        for r in &self.rows {
            for &x in r {
                v[x as usize - 1] += 1;
            }
        }
        ContentVector(v)
    }

    pub fn weight(&self) -> WeightVector {
        let mut w = WeightVector::zero(self.n);
        for c in self.columns() {
            w = &w + &c.weight();
        }
        w
    }

    pub fn gap_weight(&self) -> usize {
        self.columns().iter().map(Column::gap_weight).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.gap_weight() == 0
    }

    /// Every column has gap weight exactly 1.
    pub fn has_small_gaps(&self) -> bool {
        self.columns().iter().all(Column::is_fundamental)
    }

    /// Removes trivial column factors, smallest start first, until none is left.
    pub fn reduce(&self) -> Tableau {
        let mut t = self.clone();
        'outer: loop {
            for start in 1..=(self.m - self.n + 1) {
                let f = Tableau::from_column(&Column::trivial(start as Entry, self.n), self.m)
                    .expect("solid column in range");
                if let Ok(q) = t.divide(&f) {
                    t = q;
                    continue 'outer;
                }
            }
            return t;
        }
    }

    pub fn equivalent(&self, other: &Tableau) -> bool {
        self.n == other.n && self.m == other.m && self.reduce() == other.reduce()
    }

    /// The unique small-gaps tableau `T′ ~ T` and the fraction `T″` with `T = T″ ∪ T′`.
    pub fn small_gaps_form(&self) -> (Tableau, TableauFraction) {
        let n = self.n;
        let mut fundamentals = Vec::new();
        let mut num = Vec::new();
        let mut den = Vec::new();
        for c in self.columns() {
            if c.is_trivial() {
                num.push(c);
                continue;
            }
            let mut cur = c;
            while cur.gap_weight() > 1 {
                let (t1, t2, f) = split_column(&cur, n);
                fundamentals.push(t1);
                den.push(f);
                cur = t2;
            }
            fundamentals.push(cur);
        }
        let tp = Tableau::from_columns(&fundamentals, n, self.m).expect("columns in range");
        let frac = TableauFraction::new(
            Tableau::from_columns(&num, n, self.m).expect("columns in range"),
            Tableau::from_columns(&den, n, self.m).expect("columns in range"),
        );
        (tp, frac)
    }

    /// Restrict to entries `≤ i`; returns the row lengths.
    fn restricted_shape(&self, i: Entry) -> Vec<u32> {
        self.rows
            .iter()
            .map(|r| r.partition_point(|&x| x <= i) as u32)
            .collect()
    }

    /// Partial sums of the shapes `sh(T[i])` for `i = 1..m`, concatenated.
    ///
    /// Lexicographic order on these keys refines the dominance order and is
    /// additive under union.
    pub fn dominance_key(&self) -> Vec<u32> {
        let mut key = Vec::with_capacity(self.m * self.n);
        for i in 1..=self.m as Entry {
            let mut acc = 0;
            for l in self.restricted_shape(i) {
                acc += l;
                key.push(acc);
            }
        }
        key
    }

    pub fn dominance_leq(&self, other: &Tableau) -> Result<bool> {
        self.check_dims(other)?;
        if self.content() != other.content() {
            return Err(Error::ContentMismatch);
        }
        Ok(self
            .dominance_key()
            .iter()
            .zip(other.dominance_key())
            .all(|(a, b)| *a <= b))
    }

    /// Chooses the member of the `~`-class of `self` with the given content.
    pub fn content_lift(&self, target: &ContentVector) -> Result<ContentLift> {
        let base = self.reduce();
        let diff = target - &base.content();
        let a = frozen_lattice_solve(&diff.0, self.n).ok_or(Error::NotInLattice)?;
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (idx, &e) in a.iter().enumerate() {
            let c = Column::trivial(idx as Entry + 1, self.n);
            let bucket = if e >= 0 { &mut pos } else { &mut neg };
            for _ in 0..e.unsigned_abs() {
                bucket.push(c.clone());
            }
        }
        let num = base.union(&Tableau::from_columns(&pos, self.n, self.m)?)?;
        let lifted = if neg.is_empty() {
            Lifted::Tableau(num)
        } else {
            Lifted::Fraction(TableauFraction::new(num, Tableau::from_columns(&neg, self.n, self.m)?))
        };
        Ok(ContentLift { exponents: a, lifted })
    }

    /// Text form: columns separated by `|`, entries by `,`; `()` is the empty tableau.
    pub fn to_text(&self) -> String {
        if self.is_empty() {
            return "()".to_string();
        }
        let cols: Vec<String> = self.columns().iter().map(|c| c.to_string()).collect();
        cols.join("|")
    }

    pub fn parse_text(s: &str, n: usize, m: usize) -> Result<Tableau> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(Tableau::empty(n, m));
        }
        let mut cols = Vec::new();
        for part in s.split('|') {
            let entries = part
                .split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{x:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            if entries.len() != n {
                return Err(Error::Parse(format!("column {part:?} does not have {n} entries")));
            }
            cols.push(entries);
        }
        let rows = (0..n).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
        Tableau::new(rows, n, m)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// One step of the single-column split: `T ∪ F = T1 ∪ T2` with `T1` fundamental and `F` trivial.
fn split_column(c: &Column, n: usize) -> (Column, Column, Column) {
    let e = c.entries();
    let j1 = e[0] - 1;
    let mut run = 1;
    while run < n && e[run] == e[run - 1] + 1 {
        run += 1;
    }
    let cc = run as Entry;
    let t1 = Column::interval_minus(j1 + 1, n, j1 + cc + 1);
    let mut t2: Vec<Entry> = (j1 + 2..=j1 + cc + 1).collect();
    t2.extend_from_slice(&e[run..]);
    let f = Column::trivial(j1 + 2, n);
    (t1, Column::from_sorted(t2), f)
}

fn merge_sorted(a: &[Entry], b: &[Entry]) -> Vec<Entry> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn remove_sorted(a: &[Entry], b: &[Entry]) -> Option<Vec<Entry>> {
    let mut out = Vec::with_capacity(a.len());
    let mut j = 0;
    for &x in a {
        if j < b.len() && b[j] == x {
            j += 1;
        } else {
            if j < b.len() && b[j] < x {
                return None;
            }
            out.push(x);
        }
    }
    (j == b.len()).then_some(out)
}

/// `num / den` in the group of fractions of the tableau monoid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TableauFraction {
    pub num: Tableau,
    pub den: Tableau,
}

impl TableauFraction {
    /// Builds a reduced fraction by cancelling common column factors.
    pub fn new(num: Tableau, den: Tableau) -> Self {
        let mut num = num;
        let mut den = den;
        'outer: loop {
            for c in den.columns() {
                let ct = Tableau::from_column(&c, num.m).expect("in range");
                if let (Ok(a), Ok(b)) = (num.divide(&ct), den.divide(&ct)) {
                    num = a;
                    den = b;
                    continue 'outer;
                }
            }
            return TableauFraction { num, den };
        }
    }

    pub fn one(n: usize, m: usize) -> Self {
        TableauFraction { num: Tableau::empty(n, m), den: Tableau::empty(n, m) }
    }

    pub fn is_one(&self) -> bool {
        self.num.is_empty() && self.den.is_empty()
    }

    pub fn content(&self) -> ContentVector {
        &self.num.content() - &self.den.content()
    }

    /// Exponents of the solid frozens, when both parts are trivial.
    pub fn frozen_exponents(&self) -> Option<Vec<i64>> {
        if !self.num.is_trivial() || !self.den.is_trivial() {
            return None;
        }
        frozen_lattice_solve(&self.content().0, self.num.n())
    }
}

impl fmt::Display for TableauFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.num, self.den)
    }
}

/// Result of [`Tableau::content_lift`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContentLift {
    /// Exponents of the solid frozens `{i..i+n-1}`, `i = 1..m-n+1`.
    pub exponents: Vec<i64>,
    pub lifted: Lifted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lifted {
    Tableau(Tableau),
    /// Needs frozen denominators: only exists in the localization.
    Fraction(TableauFraction),
}

impl ContentLift {
    pub fn is_localized(&self) -> bool {
        matches!(self.lifted, Lifted::Fraction(_))
    }
}
