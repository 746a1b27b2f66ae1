//! The Plücker ring of `Gr(n,m)`: straightening, frozen prefactors, the quotient
//! by solid frozens and exact evaluation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tableaux::{frozen_lattice_solve, Column, ContentVector, Entry, Tableau};

/// A product of Plücker coordinates, columns kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PluckerMonomial {
    columns: Vec<Column>,
}

impl PluckerMonomial {
    pub fn new(mut columns: Vec<Column>) -> Self {
        columns.sort();
        PluckerMonomial { columns }
    }

    /// From index lists in any order; returns the sign from sorting, or `None` on a repeated index.
    pub fn from_unsorted(lists: &[Vec<Entry>]) -> Option<(i32, Self)> {
        let mut sign = 1;
        let mut cols = Vec::with_capacity(lists.len());
        for l in lists {
            let (s, c) = normalize(l.clone())?;
            sign *= s;
            cols.push(c);
        }
        Some((sign, PluckerMonomial::new(cols)))
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    /// True if the columns form a semistandard tableau.
    pub fn is_standard(&self) -> bool {
        first_violation(&self.columns).is_none()
    }
}

/// Sorts an index list, returning the sign of the sorting permutation.
fn normalize(mut v: Vec<Entry>) -> Option<(i32, Column)> {
    let mut sign = 1;
    // insertion sort keeps track of parity
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, Column::from_sorted(v)))
}

/// First adjacent pair `(p, r)` with `cols[p][r] > cols[p+1][r]`.
fn first_violation(cols: &[Column]) -> Option<(usize, usize)> {
    for p in 0..cols.len().saturating_sub(1) {
        let (a, b) = (cols[p].entries(), cols[p + 1].entries());
        if let Some(r) = (0..a.len()).find(|&r| a[r] > b[r]) {
            return Some((p, r));
        }
    }
    None
}

/// `P_a P_b = Σ coeff · P_{a'} P_{b'}` from the Garnir relation across row `r`.
fn garnir(a: &Column, b: &Column, r: usize) -> Vec<(i32, Column, Column)> {
    let n = a.len();
    let a = a.entries();
    let b = b.entries();
    // X = a_r..a_n followed by b_1..b_r (0-based: a[r..], b[..=r])
    let x: Vec<Entry> = a[r..].iter().chain(&b[..=r]).copied().collect();
    let size_s = n - r;
    let total = x.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << total) {
        if mask.count_ones() as usize != size_s {
            continue;
        }
        let identity = (0..size_s).all(|i| mask >> i & 1 == 1);
        if identity {
            continue;
        }
        let chosen: Vec<usize> = (0..total).filter(|&i| mask >> i & 1 == 1).collect();
        let rest: Vec<usize> = (0..total).filter(|&i| mask >> i & 1 == 0).collect();
        // sign of the shuffle (chosen, rest)
        let mut inv = 0;
        for &c in &chosen {
            inv += rest.iter().filter(|&&q| q < c).count();
        }
        let shuffle_sign = if inv % 2 == 0 { 1 } else { -1 };
        let mut c1: Vec<Entry> = a[..r].to_vec();
        c1.extend(chosen.iter().map(|&i| x[i]));
        let mut c2: Vec<Entry> = rest.iter().map(|&i| x[i]).collect();
        c2.extend_from_slice(&b[r + 1..]);
        let (Some((s1, c1)), Some((s2, c2))) = (normalize(c1), normalize(c2)) else {
            continue;
        };
        // move to the right-hand side: P_a P_b = −Σ_{others}
        out.push((-shuffle_sign * s1 * s2, c1, c2));
    }
    out
}

/// Rewrites products of Plücker coordinates in the standard monomial basis.
type PairKey = (Column, Column, usize);

#[derive(Default)]
pub struct Straightener {
    pairs: HashMap<PairKey, Vec<(i32, Column, Column)>>,
}

impl Straightener {
    pub fn new() -> Self {
        Straightener::default()
    }

    /// Straightens a linear combination of monomials.
    pub fn straighten_terms<I>(&mut self, input: I) -> BTreeMap<Vec<Column>, BigInt>
    where
        I: IntoIterator<Item = (Vec<Column>, BigInt)>,
    {
        let mut pending: BTreeMap<Vec<Column>, BigInt> = BTreeMap::new();
        for (mut cols, c) in input {
            cols.sort();
            *pending.entry(cols).or_insert_with(BigInt::zero) += c;
        }
        let mut done: BTreeMap<Vec<Column>, BigInt> = BTreeMap::new();
        // Garnir steps make the sorted column list lexicographically smaller,
        // so taking the largest pending key first expands each monomial once.
        while let Some((cols, c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            match first_violation(&cols) {
                None => {
                    *done.entry(cols).or_insert_with(BigInt::zero) += c;
                }
                Some((p, r)) => {
                    let key = (cols[p].clone(), cols[p + 1].clone(), r);
                    let exp = self
                        .pairs
                        .entry(key)
                        .or_insert_with(|| garnir(&cols[p], &cols[p + 1], r))
                        .clone();
                    for (s, c1, c2) in exp {
                        let mut next = cols.clone();
                        next[p] = c1;
                        next[p + 1] = c2;
                        next.sort();
                        debug_assert!(next < cols);
                        *pending.entry(next).or_insert_with(BigInt::zero) += &c * s;
                    }
                }
            }
        }
        done.retain(|_, c| !c.is_zero());
        done
    }
}

/// Element of `C[Gr(n,m)]` (or its localization at the solid frozens): a frozen
/// Laurent prefactor times an integer combination of standard monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluckerPolynomial {
    n: usize,
    m: usize,
    frozen: Vec<i64>,
    terms: BTreeMap<Tableau, BigInt>,
}

impl PluckerPolynomial {
    pub fn zero(n: usize, m: usize) -> Self {
        PluckerPolynomial { n, m, frozen: vec![0; m - n + 1], terms: BTreeMap::new() }
    }

    pub fn one(n: usize, m: usize) -> Self {
        PluckerPolynomial::from_tableau(&Tableau::empty(n, m))
    }

    /// The standard monomial `P_T`.
    pub fn from_tableau(t: &Tableau) -> Self {
        let mut p = PluckerPolynomial::zero(t.n(), t.m());
        p.terms.insert(t.clone(), BigInt::one());
        p
    }

    pub fn from_column(c: &Column, m: usize) -> Result<Self> {
        Ok(PluckerPolynomial::from_tableau(&Tableau::from_column(c, m)?))
    }

    /// Straightens an integer combination of Plücker monomials.
    pub fn straighten(n: usize, m: usize, input: &[(BigInt, PluckerMonomial)]) -> Result<Self> {
        for (_, mono) in input {
            for c in mono.columns() {
                if c.len() != n || c.entries().iter().any(|&x| x < 1 || x as usize > m) {
                    return Err(Error::DimensionMismatch(format!("column {c}"), format!("Gr({n},{m})")));
                }
            }
        }
        let mut st = Straightener::new();
        let done = st.straighten_terms(input.iter().map(|(c, mono)| (mono.columns.clone(), c.clone())));
        Ok(PluckerPolynomial::from_column_terms(n, m, vec![0; m - n + 1], done))
    }

    fn from_column_terms(n: usize, m: usize, frozen: Vec<i64>, done: BTreeMap<Vec<Column>, BigInt>) -> Self {
        let terms = done
            .into_iter()
            .map(|(cols, c)| (Tableau::from_columns(&cols, n, m).expect("valid columns"), c))
            .collect();
        PluckerPolynomial { n, m, frozen, terms }
    }

    /// Builds from parts without straightening; every tableau is already standard.
    pub fn from_parts(n: usize, m: usize, frozen: Vec<i64>, terms: BTreeMap<Tableau, BigInt>) -> Self {
        let mut p = PluckerPolynomial { n, m, frozen, terms };
        p.terms.retain(|_, c| !c.is_zero());
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Exponents of the solid frozens `{i..i+n-1}`, `i = 1..m-n+1`.
    pub fn frozen(&self) -> &[i64] {
        &self.frozen
    }

    pub fn terms(&self) -> &BTreeMap<Tableau, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn has_denominator(&self) -> bool {
        self.frozen.iter().any(|&e| e < 0)
    }

    pub fn coefficient(&self, t: &Tableau) -> BigInt {
        self.terms.get(t).cloned().unwrap_or_default()
    }

    /// Terms in printing order: dominance-descending, ties lexicographic.
    pub fn sorted_terms(&self) -> Vec<(&Tableau, &BigInt)> {
        let mut v: Vec<(Vec<u32>, &Tableau, &BigInt)> =
            self.terms.iter().map(|(t, c)| (t.dominance_key(), t, c)).collect();
        v.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(b.1)));
        v.into_iter().map(|(_, t, c)| (t, c)).collect()
    }

    /// The term whose tableau is largest in the dominance-refining order.
    pub fn leading_term(&self) -> Option<(&Tableau, &BigInt)> {
        self.terms.iter().max_by(|a, b| a.0.dominance_key().cmp(&b.0.dominance_key()))
    }

    /// Degree of the standard-monomial part (ignoring the prefactor).
    pub fn terms_degree(&self) -> Option<ContentVector> {
        self.terms.keys().next().map(Tableau::content)
    }

    /// Total Zᵐ-degree including the prefactor.
    pub fn degree(&self) -> Option<ContentVector> {
        let mut d = self.terms_degree()?;
        for (i, &e) in self.frozen.iter().enumerate() {
            for x in i..i + self.n {
                d.0[x] += e;
            }
        }
        Some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Tableau::content);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    fn check_same_ring(&self, other: &PluckerPolynomial) -> Result<()> {
        if self.n != other.n || self.m != other.m {
            return Err(Error::DimensionMismatch(
                format!("Gr({},{})", self.n, self.m),
                format!("Gr({},{})", other.n, other.m),
            ));
        }
        Ok(())
    }

    pub fn scale(&self, c: &BigInt) -> PluckerPolynomial {
        let mut p = self.clone();
        if c.is_zero() {
            p.terms.clear();
            return p;
        }
        for v in p.terms.values_mut() {
            *v *= c;
        }
        p
    }

    pub fn neg(&self) -> PluckerPolynomial {
        self.scale(&BigInt::from(-1))
    }

    /// Multiplies the standard-monomial part by `∏ F_i^{e_i}` with `e ≥ 0`.
    fn times_frozen_power(&self, e: &[i64], st: &mut Straightener) -> PluckerPolynomial {
        if e.iter().all(|&x| x == 0) {
            return self.clone();
        }
        let mut extra = Vec::new();
        for (i, &k) in e.iter().enumerate() {
            debug_assert!(k >= 0);
            for _ in 0..k {
                extra.push(Column::trivial(i as Entry + 1, self.n));
            }
        }
        let done = st.straighten_terms(self.terms.iter().map(|(t, c)| {
            let mut cols = t.columns();
            cols.extend(extra.iter().cloned());
            (cols, c.clone())
        }));
        PluckerPolynomial::from_column_terms(self.n, self.m, self.frozen.clone(), done)
    }

    /// Rewrites `self` with prefactor `target ≤ self.frozen`.
    fn with_prefactor(&self, target: &[i64], st: &mut Straightener) -> PluckerPolynomial {
        let e: Vec<i64> = self.frozen.iter().zip(target).map(|(a, b)| a - b).collect();
        let mut p = self.times_frozen_power(&e, st);
        p.frozen = target.to_vec();
        p
    }

    pub fn add(&self, other: &PluckerPolynomial) -> Result<PluckerPolynomial> {
        self.check_same_ring(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let target: Vec<i64> = self.frozen.iter().zip(&other.frozen).map(|(a, b)| *a.min(b)).collect();
        let mut st = Straightener::new();
        let mut a = self.with_prefactor(&target, &mut st);
        let b = other.with_prefactor(&target, &mut st);
        for (t, c) in b.terms {
            *a.terms.entry(t).or_insert_with(BigInt::zero) += c;
        }
        a.terms.retain(|_, c| !c.is_zero());
        if !a.is_homogeneous() {
            return Err(Error::IncomparableDegrees);
        }
        Ok(a)
    }

    pub fn sub(&self, other: &PluckerPolynomial) -> Result<PluckerPolynomial> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PluckerPolynomial) -> Result<PluckerPolynomial> {
        self.check_same_ring(other)?;
        let frozen: Vec<i64> = self.frozen.iter().zip(&other.frozen).map(|(a, b)| a + b).collect();
        let mut st = Straightener::new();
        let mut input = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (s, a) in &self.terms {
            let sc = s.columns();
            for (t, b) in &other.terms {
                let mut cols = sc.clone();
                cols.extend(t.columns());
                input.push((cols, a * b));
            }
        }
        let done = st.straighten_terms(input);
        Ok(PluckerPolynomial::from_column_terms(self.n, self.m, frozen, done))
    }

    pub fn pow(&self, k: u32) -> Result<PluckerPolynomial> {
        let mut acc = PluckerPolynomial::one(self.n, self.m);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Multiplies by a frozen Laurent monomial (only the prefactor changes).
    pub fn times_frozen(&self, e: &[i64]) -> PluckerPolynomial {
        let mut p = self.clone();
        for (a, b) in p.frozen.iter_mut().zip(e) {
            *a += b;
        }
        p
    }

    /// Exact equality as elements of the localization.
    pub fn equals(&self, other: &PluckerPolynomial) -> bool {
        match self.sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }

    /// Divides the standard-monomial part by the solid frozen `F_i` (1-based `i`).
    fn divide_terms_by_frozen(&self, i: usize, st: &mut Straightener) -> Option<BTreeMap<Tableau, BigInt>> {
        let f = Tableau::from_column(&Column::trivial(i as Entry, self.n), self.m).ok()?;
        let fcol = f.column(0);
        let mut rem = self.terms.clone();
        let mut quot: BTreeMap<Tableau, BigInt> = BTreeMap::new();
        while let Some((lead, c)) = rem.iter().max_by(|a, b| a.0.dominance_key().cmp(&b.0.dominance_key())) {
            let lead = lead.clone();
            let c = c.clone();
            let q = lead.divide(&f).ok()?;
            let mut cols = q.columns();
            cols.push(fcol.clone());
            let prod = st.straighten_terms([(cols, BigInt::one())]);
            for (cs, v) in prod {
                let t = Tableau::from_columns(&cs, self.n, self.m).expect("valid");
                let e = rem.entry(t).or_insert_with(BigInt::zero);
                *e -= &c * v;
            }
            rem.retain(|_, v| !v.is_zero());
            if rem.contains_key(&lead) {
                // product did not have the expected leading term
                return None;
            }
            *quot.entry(q).or_insert_with(BigInt::zero) += c;
        }
        Some(quot)
    }

    /// Tries to absorb negative prefactor exponents into the standard-monomial part.
    /// Returns the result and whether it lies in `C[Gr(n,m)]`.
    pub fn clear_denominators(&self) -> (PluckerPolynomial, bool) {
        let mut p = self.clone();
        if p.is_zero() {
            p.frozen.iter_mut().for_each(|e| *e = 0);
            return (p, true);
        }
        let mut st = Straightener::new();
        for i in 0..p.frozen.len() {
            while p.frozen[i] < 0 {
                match p.divide_terms_by_frozen(i + 1, &mut st) {
                    Some(q) => {
                        p.terms = q;
                        p.frozen[i] += 1;
                    }
                    None => break,
                }
            }
        }
        // fold any remaining positive prefactor into the terms
        let pos: Vec<i64> = p.frozen.iter().map(|&e| e.max(0)).collect();
        let target: Vec<i64> = p.frozen.iter().map(|&e| e.min(0)).collect();
        let mut q = p.times_frozen_power(&pos, &mut st);
        q.frozen = target;
        let ok = !q.has_denominator();
        (q, ok)
    }

    /// Evaluates at the row span of `x`.
    pub fn evaluate(&self, x: &RationalMatrix) -> Result<BigRational> {
        if x.n != self.n || x.m != self.m {
            return Err(Error::DimensionMismatch(format!("{}x{}", x.n, x.m), format!("Gr({},{})", self.n, self.m)));
        }
        let mut cache: HashMap<Column, BigRational> = HashMap::new();
        let mut minor = |c: &Column| -> BigRational {
            cache.entry(c.clone()).or_insert_with(|| x.minor(c.entries())).clone()
        };
        let mut total = BigRational::zero();
        for (t, c) in &self.terms {
            let mut v = BigRational::from_integer(c.clone());
            for col in t.columns() {
                v *= minor(&col);
            }
            total += v;
        }
        for (i, &e) in self.frozen.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let col = Column::trivial(i as Entry + 1, self.n);
            let f = minor(&col);
            if f.is_zero() {
                if e < 0 {
                    return Err(Error::SingularFrozen(col.entries().to_vec()));
                }
                return Ok(BigRational::zero());
            }
            let fe = if e > 0 { pow_rat(&f, e as u32) } else { pow_rat(&f.recip(), (-e) as u32) };
            total *= fe;
        }
        Ok(total)
    }

    /// The quotient image with every solid frozen factor divided out.
    ///
    /// Two homogeneous elements have equal images in `C[Gr(n,m,~)]` iff their
    /// reductions coincide.
    pub fn quotient_reduce(&self) -> PluckerPolynomial {
        let mut p = self.clone();
        p.frozen.iter_mut().for_each(|e| *e = 0);
        if p.is_zero() {
            return p;
        }
        let mut st = Straightener::new();
        loop {
            let mut progressed = false;
            for i in 1..=p.frozen.len() {
                if let Some(q) = p.divide_terms_by_frozen(i, &mut st) {
                    p.terms = q;
                    progressed = true;
                }
            }
            if !progressed {
                return p;
            }
        }
    }

    pub fn to_text(&self) -> String {
        let body = terms_text(&self.sorted_terms());
        let pre: Vec<String> = self
            .frozen
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| {
                let c = Column::trivial(i as Entry + 1, self.n);
                if e == 1 {
                    format!("P[{c}]")
                } else {
                    format!("P[{c}]^{e}")
                }
            })
            .collect();
        if pre.is_empty() || self.is_zero() {
            body
        } else {
            format!("{} * ({})", pre.join("*"), body)
        }
    }
}

fn pow_rat(x: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

fn terms_text(terms: &[(&Tableau, &BigInt)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (t, c)) in terms.iter().enumerate() {
        let mono = if t.is_empty() {
            String::new()
        } else {
            t.columns().iter().map(|c| format!("P[{c}]")).collect::<Vec<_>>().join("*")
        };
        let neg = c.is_negative();
        let abs = c.abs();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    out
}

impl fmt::Display for PluckerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    coeff: JsonInt,
    columns: Vec<Vec<Entry>>,
}

/// Integers are numbers when they fit in `i64`, otherwise decimal strings.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct JsonPoly {
    n: usize,
    m: usize,
    frozen: Vec<i64>,
    terms: Vec<JsonTerm>,
}

impl Serialize for PluckerPolynomial {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .sorted_terms()
            .into_iter()
            .map(|(t, c)| JsonTerm {
                coeff: i64::try_from(c).map(JsonInt::Small).unwrap_or_else(|_| JsonInt::Big(c.to_string())),
                columns: t.columns().iter().map(|c| c.entries().to_vec()).collect(),
            })
            .collect();
        JsonPoly { n: self.n, m: self.m, frozen: self.frozen.clone(), terms }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for PluckerPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = JsonPoly::deserialize(de)?;
        if j.m <= j.n || j.frozen.len() != j.m - j.n + 1 {
            return Err(D::Error::custom("bad dimensions or frozen vector length"));
        }
        let mut input = Vec::new();
        for t in j.terms {
            let c = match t.coeff {
                JsonInt::Small(x) => BigInt::from(x),
                JsonInt::Big(s) => s.parse().map_err(D::Error::custom)?,
            };
            let (s, mono) = PluckerMonomial::from_unsorted(&t.columns).ok_or_else(|| D::Error::custom("repeated index"))?;
            input.push((c * s, mono));
        }
        let mut p = PluckerPolynomial::straighten(j.n, j.m, &input).map_err(D::Error::custom)?;
        p.frozen = j.frozen;
        Ok(p)
    }
}

/// Lifts homogeneous pieces (prefactors ignored) to a common degree and sums them.
///
/// The result has the same image in `C[Gr(n,m,~)]` as the sum of the pieces.
pub fn quotient_lift(parts: &[&PluckerPolynomial]) -> Result<PluckerPolynomial> {
    let nonzero: Vec<&&PluckerPolynomial> = parts.iter().filter(|p| !p.is_zero()).collect();
    let Some(first) = nonzero.first() else {
        let p = parts.first().ok_or(Error::IncomparableDegrees)?;
        return Ok(PluckerPolynomial::zero(p.n, p.m));
    };
    let (n, m) = (first.n, first.m);
    let base = first.terms_degree().unwrap();
    let mut shifts = Vec::new();
    for p in &nonzero {
        first.check_same_ring(p)?;
        if !p.is_homogeneous() {
            return Err(Error::IncomparableDegrees);
        }
        let d = &p.terms_degree().unwrap() - &base;
        shifts.push(frozen_lattice_solve(&d.0, n).ok_or(Error::IncomparableDegrees)?);
    }
    let count = m - n + 1;
    let top: Vec<i64> = (0..count).map(|i| shifts.iter().map(|s| s[i]).max().unwrap().max(0)).collect();
    let mut st = Straightener::new();
    let mut acc: BTreeMap<Tableau, BigInt> = BTreeMap::new();
    for (p, s) in nonzero.iter().zip(&shifts) {
        let e: Vec<i64> = top.iter().zip(s).map(|(a, b)| a - b).collect();
        let mut bare = (**p).clone();
        bare.frozen = vec![0; count];
        let lifted = bare.times_frozen_power(&e, &mut st);
        for (t, c) in lifted.terms {
            *acc.entry(t).or_insert_with(BigInt::zero) += c;
        }
    }
    Ok(PluckerPolynomial::from_parts(n, m, vec![0; count], acc))
}

/// Equality of sums of homogeneous pieces in `C[Gr(n,m,~)]`.
pub fn quotient_equal_sums(lhs: &[&PluckerPolynomial], rhs: &[&PluckerPolynomial]) -> Result<bool> {
    let negs: Vec<PluckerPolynomial> = rhs.iter().map(|p| p.neg()).collect();
    let mut all: Vec<&PluckerPolynomial> = lhs.to_vec();
    all.extend(negs.iter());
    Ok(quotient_lift(&all)?.is_zero())
}

pub fn quotient_equal(p: &PluckerPolynomial, q: &PluckerPolynomial) -> Result<bool> {
    quotient_equal_sums(&[p], &[q])
}

/// The column with runs of sizes `a` and `n−a`: the first starts at `b`, and
/// `j_{a+1} − j_a = c`. For `a = 0` the single run starts at `b+c−1`.
pub fn plucker_abc(a: usize, b: i64, c: i64, n: usize, m: usize) -> Result<Column> {
    if a > n || c < 1 {
        return Err(Error::BadDimensions(format!("a={a}, c={c}, n={n}")));
    }
    let mut v: Vec<i64> = (0..a as i64).map(|k| b + k).collect();
    let start = if a == 0 { b + c - 1 } else { b + a as i64 - 1 + c };
    v.extend((0..(n - a) as i64).map(|k| start + k));
    if let Some(&x) = v.iter().find(|&&x| x < 1 || x > m as i64) {
        return Err(Error::OutOfRange { entry: x, m });
    }
    Ok(Column::from_sorted(v.into_iter().map(|x| x as Entry).collect()))
}

/// An `n × m` matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    m: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(n: usize, m: usize, data: Vec<BigRational>) -> Result<Self> {
        if data.len() != n * m {
            return Err(Error::BadDimensions(format!("{} entries for {n}x{m}", data.len())));
        }
        Ok(RationalMatrix { n, m, data })
    }

    pub fn from_integers(n: usize, m: usize, v: &[i64]) -> Result<Self> {
        RationalMatrix::new(n, m, v.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.m + c]
    }

    /// Maximal minor on 1-based columns `cols`.
    pub fn minor(&self, cols: &[Entry]) -> BigRational {
        let k = cols.len();
        let mut a: Vec<Vec<BigRational>> = (0..k)
            .map(|r| cols.iter().map(|&c| self.get(r, c as usize - 1).clone()).collect())
            .collect();
        let mut det = BigRational::one();
        for col in 0..k {
            let Some(piv) = (col..k).find(|&r| !a[r][col].is_zero()) else {
                return BigRational::zero();
            };
            if piv != col {
                a.swap(piv, col);
                det = -det;
            }
            let p = a[col][col].clone();
            det *= &p;
            for r in col + 1..k {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &p;
                for c in col..k {
                    let sub = &f * &a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
        det
    }

    /// Random integer entries in `[-range, range]`.
    pub fn random<R: Rng>(n: usize, m: usize, range: i64, rng: &mut R) -> Self {
        let data = (0..n * m).map(|_| BigRational::from_integer(rng.gen_range(-range..=range).into())).collect();
        RationalMatrix { n, m, data }
    }

    /// First `n` rows of a product of positive elementary bidiagonal matrices; all maximal minors are positive.
    pub fn random_totally_positive<R: Rng>(n: usize, m: usize, rng: &mut R) -> Self {
        let mut a: Vec<Vec<BigRational>> = (0..m)
            .map(|r| (0..m).map(|c| if r == c { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        let mut word = Vec::new();
        for top in (1..m).rev() {
            for i in 0..top {
                word.push(i);
            }
        }
        let rnd = |rng: &mut R| BigRational::new(rng.gen_range(1..=9i64).into(), rng.gen_range(1..=4i64).into());
        // lower factors: row i+1 += t·row i
        for &i in &word {
            let t = rnd(rng);
            for c in 0..m {
                let add = &t * &a[i][c];
                a[i + 1][c] += add;
            }
        }
        for r in 0..m {
            let d = rnd(rng);
            for c in 0..m {
                a[r][c] *= &d;
            }
        }
        // upper factors: column i+1 += t·column i
        for &i in &word {
            let t = rnd(rng);
            for r in 0..m {
                let add = &t * &a[r][i];
                a[r][i + 1] += add;
            }
        }
        let data = a.into_iter().take(n).flatten().collect();
        RationalMatrix { n, m, data }
    }

    /// Rescales columns so every solid frozen minor equals 1.
    pub fn normalize_frozens(&self) -> Result<Self> {
        let mut x = self.clone();
        for i in 0..=(self.m - self.n) {
            let col = Column::trivial(i as Entry + 1, self.n);
            let f = x.minor(col.entries());
            if f.is_zero() {
                return Err(Error::SingularFrozen(col.entries().to_vec()));
            }
            let last = i + self.n - 1;
            let inv = f.recip();
            for r in 0..self.n {
                let v = &x.data[r * self.m + last] * &inv;
                x.data[r * self.m + last] = v;
            }
        }
        Ok(x)
    }

    /// Entries as `"p/q"` strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.n).map(|r| (0..self.m).map(|c| self.get(r, c).to_string()).collect()).collect()
    }

    pub fn from_strings(rows: &[Vec<String>]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(n * m);
        for r in rows {
            if r.len() != m {
                return Err(Error::RaggedRows);
            }
            for s in r {
                let v: BigRational = s.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
                data.push(v);
            }
        }
        RationalMatrix::new(n, m, data)
    }
}
