//! Dominant monomials, multisegments and the dictionaries between them and tableaux.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symmetric::Permutation;
use crate::tableaux::{Column, Entry, Tableau, WeightVector};

/// A product of fundamental variables `Y_{i,s}` with positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominantMonomial {
    factors: BTreeMap<(i32, i32), u32>,
}

impl DominantMonomial {
    pub fn unit() -> Self {
        DominantMonomial::default()
    }

    pub fn y(i: i32, s: i32) -> Self {
        let mut m = DominantMonomial::unit();
        m.factors.insert((i, s), 1);
        m
    }

    pub fn from_factors<I: IntoIterator<Item = (i32, i32)>>(it: I) -> Self {
        let mut m = DominantMonomial::unit();
        for f in it {
            *m.factors.entry(f).or_insert(0) += 1;
        }
        m
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// `(i, s, multiplicity)` sorted by `(i, s)`.
    pub fn factors(&self) -> impl Iterator<Item = (i32, i32, u32)> + '_ {
        self.factors.iter().map(|(&(i, s), &e)| (i, s, e))
    }

    /// Factors with repetition.
    pub fn expanded(&self) -> Vec<(i32, i32)> {
        self.factors
            .iter()
            .flat_map(|(&f, &e)| std::iter::repeat(f).take(e as usize))
            .collect()
    }

    pub fn exponent(&self, i: i32, s: i32) -> u32 {
        self.factors.get(&(i, s)).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.factors.values().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &DominantMonomial) -> DominantMonomial {
        let mut m = self.clone();
        for (&f, &e) in &other.factors {
            *m.factors.entry(f).or_insert(0) += e;
        }
        m
    }

    /// `self / other` when the quotient is dominant.
    pub fn checked_div(&self, other: &DominantMonomial) -> Option<DominantMonomial> {
        let mut m = self.clone();
        for (&f, &e) in &other.factors {
            let have = m.factors.get_mut(&f)?;
            if *have < e {
                return None;
            }
            *have -= e;
            if *have == 0 {
                m.factors.remove(&f);
            }
        }
        Some(m)
    }

    /// Σ multiplicity · ω_i; factors with `i ∉ [1,n-1]` contribute nothing.
    pub fn weight(&self, n: usize) -> WeightVector {
        let mut w = WeightVector::zero(n);
        for (&(i, _), &e) in &self.factors {
            if i >= 1 && (i as usize) < n {
                w.0[i as usize - 1] += e as i64;
            }
        }
        w
    }

    /// Checks every factor against the window of `Gr(n, m)`.
    pub fn check_window(&self, n: usize, m: usize) -> Result<()> {
        for &(i, s) in self.factors.keys() {
            window_index(i, s, n, m)?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        if self.is_unit() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(&(i, s), &e)| if e == 1 { format!("Y[{i},{s}]") } else { format!("Y[{i},{s}]^{e}") })
            .collect();
        parts.join(" ")
    }

    /// Parses `"Y[1,-1]^2 Y[2,-4]"`; `"1"` is the unit.
    pub fn parse_text(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut m = DominantMonomial::unit();
        if s.is_empty() || s == "1" {
            return Ok(m);
        }
        let bad = || Error::Parse(format!("cannot read monomial {s:?}"));
        let mut rest = s;
        while !rest.trim_start().is_empty() {
            rest = rest.trim_start().trim_start_matches('*').trim_start();
            rest = rest.strip_prefix("Y[").ok_or_else(bad)?;
            let close = rest.find(']').ok_or_else(bad)?;
            let inside = &rest[..close];
            rest = &rest[close + 1..];
            let (a, b) = inside.split_once(',').ok_or_else(bad)?;
            let i: i32 = a.trim().parse().map_err(|_| bad())?;
            let sp: i32 = b.trim().parse().map_err(|_| bad())?;
            let mut e = 1u32;
            if let Some(r) = rest.strip_prefix('^') {
                let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
                e = r[..end].parse().map_err(|_| bad())?;
                rest = &r[end..];
            }
            if (i - sp).rem_euclid(2) != 0 {
                return Err(Error::ParityError { i, s: sp });
            }
            *m.factors.entry((i, sp)).or_insert(0) += e;
        }
        m.factors.retain(|_, e| *e > 0);
        Ok(m)
    }
}

impl fmt::Display for DominantMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Serialize for DominantMonomial {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(i32, i32, u32)> = self.factors().collect();
        v.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for DominantMonomial {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<(i32, i32, u32)> = Vec::deserialize(de)?;
        let mut m = DominantMonomial::unit();
        for (i, s, e) in v {
            if (i - s).rem_euclid(2) != 0 {
                return Err(serde::de::Error::custom(Error::ParityError { i, s }));
            }
            if e > 0 {
                *m.factors.entry((i, s)).or_insert(0) += e;
            }
        }
        Ok(m)
    }
}

/// The column index `k` with `s = i - 2k - 2`, checked against the window of `Gr(n,m)`.
pub fn window_index(i: i32, s: i32, n: usize, m: usize) -> Result<usize> {
    let ell = m as i32 - n as i32 - 1;
    let out = || Error::OutOfWindow { i, s, n, m };
    if i < 1 || i >= n as i32 {
        return Err(out());
    }
    if (i - s).rem_euclid(2) != 0 {
        return Err(Error::ParityError { i, s });
    }
    let k = (i - s - 2) / 2;
    if k < 0 || k > ell {
        return Err(out());
    }
    Ok(k as usize)
}

/// `Y_{i,s} ↦ [(i−s)/2, (i−s)/2+n] ∖ {(i−s)/2+n−i}`.
pub fn fundamental_column(i: i32, s: i32, n: usize) -> Result<Column> {
    if i < 1 || i >= n as i32 {
        return Err(Error::OutOfWindow { i, s, n, m: 0 });
    }
    if (i - s).rem_euclid(2) != 0 {
        return Err(Error::ParityError { i, s });
    }
    let lo = (i - s) / 2;
    if lo < 1 {
        return Err(Error::OutOfRange { entry: lo as i64, m: 0 });
    }
    let lo = lo as Entry;
    Ok(Column::interval_minus(lo, n, lo + (n as Entry) - i as Entry))
}

/// Inverse of [`fundamental_column`].
pub fn column_to_fundamental(c: &Column) -> Result<(i32, i32)> {
    if !c.is_fundamental() {
        return Err(Error::NotFundamental(c.entries().to_vec()));
    }
    let e = c.entries();
    let n = e.len() as i32;
    let lo = e[0] as i32;
    let r = e.windows(2).find(|w| w[1] - w[0] == 2).map(|w| w[0] + 1).unwrap() as i32;
    let i = n - (r - lo);
    Ok((i, i - 2 * lo))
}

/// The monomial of the `~`-class of `T`.
pub fn psi(t: &Tableau) -> DominantMonomial {
    let (tp, _) = t.small_gaps_form();
    DominantMonomial::from_factors(
        tp.columns().iter().map(|c| column_to_fundamental(c).expect("small gaps")),
    )
}

/// The small-gaps tableau with monomial `M` in `Gr(n, m)`.
pub fn phi_tilde(mono: &DominantMonomial, n: usize, m: usize) -> Result<Tableau> {
    mono.check_window(n, m)?;
    let cols: Vec<Column> = mono
        .expanded()
        .into_iter()
        .map(|(i, s)| fundamental_column(i, s, n))
        .collect::<Result<_>>()?;
    Tableau::from_columns(&cols, n, m)
}

/// `Y_{i,s} Y_{i,s+2} ⋯ Y_{i,s+2k−2}`.
pub fn kr_monomial(i: i32, k: usize, s: i32) -> DominantMonomial {
    DominantMonomial::from_factors((0..k as i32).map(|j| (i, s + 2 * j)))
}

/// The column of `P^{(n−i,1,t+2)}`: `[1, n−i] ∪ [n−i+t+2, n+t+1]`.
pub fn kr_plucker(i: usize, t: usize, n: usize) -> Column {
    let a = (n - i) as Entry;
    let mut v: Vec<Entry> = (1..=a).collect();
    v.extend(a + t as Entry + 2..=n as Entry + t as Entry + 1);
    Column::from_sorted(v)
}

/// An integer segment `[b, e]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "(i32, i32)", from = "(i32, i32)")]
pub struct Segment {
    pub b: i32,
    pub e: i32,
}

impl From<Segment> for (i32, i32) {
    fn from(s: Segment) -> Self {
        (s.b, s.e)
    }
}

impl From<(i32, i32)> for Segment {
    fn from((b, e): (i32, i32)) -> Self {
        Segment { b, e }
    }
}

impl Segment {
    pub fn new(b: i32, e: i32) -> Self {
        Segment { b, e }
    }

    pub fn len(&self) -> i32 {
        self.e - self.b + 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() <= 0
    }

    pub fn contains(&self, x: i32) -> bool {
        self.b <= x && x <= self.e
    }

    /// `self ≺ other`.
    pub fn precedes(&self, other: &Segment) -> bool {
        !other.contains(self.b) && self.contains(other.b - 1) && !self.contains(other.e)
    }

    /// `[b,e] ↦ Y_{e−b+1, b+e−1}`.
    pub fn to_fundamental(&self) -> (i32, i32) {
        (self.e - self.b + 1, self.b + self.e - 1)
    }

    pub fn from_fundamental(i: i32, s: i32) -> Result<Segment> {
        if (i - s).rem_euclid(2) != 0 {
            return Err(Error::ParityError { i, s });
        }
        Ok(Segment { b: (s - i + 2) / 2, e: (s + i) / 2 })
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.b, self.e)
    }
}

/// A multiset of segments, stored sorted by decreasing right endpoint, then decreasing left endpoint.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<Segment>", into = "Vec<Segment>")]
pub struct Multisegment(Vec<Segment>);

impl From<Vec<Segment>> for Multisegment {
    fn from(v: Vec<Segment>) -> Self {
        Multisegment::new(v)
    }
}

impl From<Multisegment> for Vec<Segment> {
    fn from(m: Multisegment) -> Self {
        m.0
    }
}

impl Multisegment {
    pub fn new(mut v: Vec<Segment>) -> Self {
        v.sort_by_key(|x| std::cmp::Reverse((x.e, x.b)));
        Multisegment(v)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|s| s.len() as i64).sum()
    }

    pub fn add(&self, other: &Multisegment) -> Multisegment {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Multisegment::new(v)
    }

    /// Left and right endpoints are each pairwise distinct.
    pub fn is_regular(&self) -> bool {
        let mut b: Vec<i32> = self.0.iter().map(|s| s.b).collect();
        let mut e: Vec<i32> = self.0.iter().map(|s| s.e).collect();
        b.sort_unstable();
        e.sort_unstable();
        b.windows(2).all(|w| w[0] != w[1]) && e.windows(2).all(|w| w[0] != w[1])
    }

    pub fn to_text(&self) -> String {
        segments_text(&self.0)
    }

    pub fn parse_text(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(Multisegment::default());
        }
        let bad = || Error::Parse(format!("cannot read multisegment {s:?}"));
        let mut v = Vec::new();
        for part in s.split('+') {
            let part = part.trim();
            let inner = part.strip_prefix('[').and_then(|p| p.strip_suffix(']')).ok_or_else(bad)?;
            let (a, b) = inner.split_once(',').ok_or_else(bad)?;
            let b0: i32 = a.trim().parse().map_err(|_| bad())?;
            let e0: i32 = b.trim().parse().map_err(|_| bad())?;
            if b0 > e0 {
                return Err(Error::Parse(format!("segment [{b0},{e0}] is empty")));
            }
            v.push(Segment::new(b0, e0));
        }
        Ok(Multisegment::new(v))
    }
}

pub fn segments_text(v: &[Segment]) -> String {
    if v.is_empty() {
        return "0".to_string();
    }
    v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("+")
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub fn monomial_to_multisegment(mono: &DominantMonomial) -> Result<Multisegment> {
    let v = mono
        .expanded()
        .into_iter()
        .map(|(i, s)| Segment::from_fundamental(i, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(Multisegment::new(v))
}

pub fn multisegment_to_monomial(ms: &Multisegment) -> DominantMonomial {
    DominantMonomial::from_factors(ms.0.iter().map(Segment::to_fundamental))
}

/// Index data `(μ, λ, w)`: position `a` carries the segment `[μ_{w(a)}, λ_a]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentProfile {
    pub mu: Vec<i32>,
    pub lambda: Vec<i32>,
    pub w: Permutation,
}

impl SegmentProfile {
    pub fn k(&self) -> usize {
        self.mu.len()
    }

    /// The multisegment `{[μ_{u(a)}, λ_a]}`; `None` if a segment is empty.
    pub fn realize(&self, u: &Permutation) -> Option<Multisegment> {
        let v: Vec<Segment> = (1..=self.k())
            .map(|a| Segment::new(self.mu[u.apply(a) - 1], self.lambda[a - 1]))
            .collect();
        v.iter().all(|s| !s.is_empty()).then(|| Multisegment::new(v))
    }
}

fn blocks(v: &[i32]) -> Vec<usize> {
    // block index of each position for a weakly decreasing vector
    let mut out = Vec::with_capacity(v.len());
    let mut b = 0;
    for i in 0..v.len() {
        if i > 0 && v[i] != v[i - 1] {
            b += 1;
        }
        out.push(b);
    }
    out
}

/// `(μ, λ, w)` with `w` the longest element of its double coset.
pub fn segment_profile(ms: &Multisegment) -> SegmentProfile {
    let k = ms.len();
    let mut mu: Vec<i32> = ms.0.iter().map(|s| s.b).collect();
    let mut lambda: Vec<i32> = ms.0.iter().map(|s| s.e).collect();
    mu.sort_unstable_by(|a, b| b.cmp(a));
    lambda.sort_unstable_by(|a, b| b.cmp(a));
    let mu_blocks = blocks(&mu);
    // last unused value (0-based) in each μ-block; values are handed out downwards
    let nb = mu_blocks.last().map_or(0, |&b| b + 1);
    let mut next = vec![0usize; nb];
    for (idx, &b) in mu_blocks.iter().enumerate() {
        next[b] = idx;
    }
    let block_of_mu = |x: i32| mu_blocks[mu.iter().position(|&y| y == x).unwrap()];

    let mut w = vec![0u8; k];
    let mut a = 0;
    while a < k {
        let e = lambda[a];
        // left endpoints of segments with right endpoint e, smallest first
        let mut lefts: Vec<i32> = ms.0.iter().filter(|s| s.e == e).map(|s| s.b).collect();
        lefts.sort_unstable();
        for b in lefts {
            let q = block_of_mu(b);
            w[a] = next[q] as u8;
            next[q] = next[q].wrapping_sub(1);
            a += 1;
        }
    }
    SegmentProfile { mu, lambda, w: Permutation::from_zero_based(w) }
}

/// Finitely supported integer combination of the roots `A_{i,s}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootExponent(pub BTreeMap<(i32, i32), i64>);

impl RootExponent {
    /// Y-exponents of `∏ A_{i,s}^{c_{i,s}}` for `sl_n`.
    pub fn to_y_exponents(&self, n: usize) -> BTreeMap<(i32, i32), i64> {
        let mut d = BTreeMap::new();
        for (&(i, s), &c) in &self.0 {
            add_root(&mut d, i, s, c, n);
        }
        d.retain(|_, v| *v != 0);
        d
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.values().all(|&c| c >= 0)
    }
}

fn add_root(d: &mut BTreeMap<(i32, i32), i64>, i: i32, s: i32, c: i64, n: usize) {
    *d.entry((i, s + 1)).or_insert(0) += c;
    *d.entry((i, s - 1)).or_insert(0) += c;
    for j in [i - 1, i + 1] {
        if j >= 1 && j < n as i32 {
            *d.entry((j, s)).or_insert(0) -= c;
        }
    }
}

/// Writes `M′ M⁻¹` in the root lattice, if possible.
pub fn root_decomposition(mono: &DominantMonomial, other: &DominantMonomial, n: usize) -> Option<RootExponent> {
    let mut d: BTreeMap<(i32, i32), i64> = BTreeMap::new();
    for (i, s, e) in other.factors() {
        *d.entry((i, s)).or_insert(0) += e as i64;
    }
    for (i, s, e) in mono.factors() {
        *d.entry((i, s)).or_insert(0) -= e as i64;
    }
    d.retain(|_, v| *v != 0);
    let smin = d.keys().map(|&(_, s)| s).min().unwrap_or(0);
    let mut out = RootExponent::default();
    loop {
        // entry with the largest spectral parameter
        let Some((&(i, s), &c)) = d.iter().max_by_key(|(&(i, s), _)| (s, -i)) else {
            return Some(out);
        };
        if s - 2 < smin {
            return None;
        }
        *out.0.entry((i, s - 1)).or_insert(0) += c;
        add_root(&mut d, i, s - 1, -c, n);
        d.retain(|_, v| *v != 0);
    }
}

/// `M ≤ M′` iff `M′M⁻¹` is a nonnegative product of the `A_{i,s}`.
pub fn monomial_leq(mono: &DominantMonomial, other: &DominantMonomial, n: usize) -> bool {
    root_decomposition(mono, other, n).is_some_and(|r| r.is_nonnegative())
}

/// Mœglin–Waldspurger: the segments of the dual in extraction order.
pub fn zelevinsky_dual_sequence(ms: &Multisegment) -> Vec<Segment> {
    let mut segs: Vec<Segment> = ms.0.clone();
    let mut out = Vec::new();
    while !segs.is_empty() {
        let e0 = segs.iter().map(|s| s.e).max().unwrap();
        let mut chain: Vec<usize> = Vec::new();
        let mut prev_b = i32::MAX;
        let mut e = e0;
        loop {
            let pick = segs
                .iter()
                .enumerate()
                .filter(|(_, s)| s.e == e && s.b < prev_b)
                .max_by_key(|(idx, s)| (s.b, std::cmp::Reverse(*idx)))
                .map(|(idx, _)| idx);
            let Some(idx) = pick else { break };
            prev_b = segs[idx].b;
            chain.push(idx);
            e -= 1;
        }
        let r = chain.len() as i32 - 1;
        out.push(Segment::new(e0 - r, e0));
        for &idx in &chain {
            segs[idx].e -= 1;
        }
        segs.retain(|s| !s.is_empty());
    }
    out
}

pub fn zelevinsky_dual(ms: &Multisegment) -> Multisegment {
    Multisegment::new(zelevinsky_dual_sequence(ms))
}

/// Outcome of the Lapid–Mínguez test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LmVerdict {
    Real,
    NonReal,
    /// The criterion only applies to regular multisegments.
    NotApplicable,
}

/// Which pattern a regular multisegment (sorted by decreasing right endpoint) realizes.
fn lm_pattern(d: &[Segment]) -> Option<&'static str> {
    let k = d.len();
    if k < 4 {
        return None;
    }
    let b = |i: usize| d[i - 1].b;
    let prec = |i: usize, j: usize| d[i - 1].precedes(&d[j - 1]);
    let t4231 = (3..k).all(|i| prec(i + 1, i)) && prec(3, 1) && b(k) < b(2) && b(2) < b(k - 1);
    if t4231 {
        return Some("4231");
    }
    let l = if k == 4 { 2 } else { k - 1 };
    let t3412 =
        (4..k).all(|i| prec(i + 1, i)) && prec(4, 2) && b(3) < b(k) && b(k) < b(1) && b(1) < b(l);
    t3412.then_some("3412")
}

/// The Lapid–Mínguez criterion, with the matching sub-multisegment when nonreal.
pub fn lm_reality_witness(ms: &Multisegment) -> (LmVerdict, Option<(Multisegment, &'static str)>) {
    if !ms.is_regular() {
        return (LmVerdict::NotApplicable, None);
    }
    let segs = &ms.0;
    let k = segs.len();
    assert!(k < 32, "multisegment too long for subset enumeration");
    for mask in 0u32..(1u32 << k) {
        if mask.count_ones() < 4 {
            continue;
        }
        let sub: Vec<Segment> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| segs[i]).collect();
        if let Some(p) = lm_pattern(&sub) {
            return (LmVerdict::NonReal, Some((Multisegment::new(sub), p)));
        }
    }
    (LmVerdict::Real, None)
}

pub fn lm_reality(ms: &Multisegment) -> LmVerdict {
    lm_reality_witness(ms).0
}
