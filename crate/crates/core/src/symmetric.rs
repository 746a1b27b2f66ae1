//! Permutations, Bruhat order and Kazhdan–Lusztig polynomials.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `k` the packed representation supports.
pub const MAX_PACKED_K: usize = 16;

/// Default refusal threshold for KL computations.
pub const DEFAULT_HARD_CAP: usize = 12;

/// A permutation of `[1,k]`, stored 0-based in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct Permutation(Vec<u8>);

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.one_line()
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::from_one_line(&v)
    }
}

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Permutation((0..k as u8).collect())
    }

    /// The longest element w₀ (reversal).
    pub fn longest(k: usize) -> Self {
        Permutation((0..k as u8).rev().collect())
    }

    /// Simple transposition `s_i` (1-based, swaps `i` and `i+1`).
    pub fn simple(i: usize, k: usize) -> Self {
        let mut v: Vec<u8> = (0..k as u8).collect();
        v.swap(i - 1, i);
        Permutation(v)
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(v: &[usize]) -> Result<Self> {
        let k = v.len();
        let mut seen = vec![false; k];
        for &x in v {
            if x == 0 || x > k || seen[x - 1] {
                return Err(Error::Parse(format!("{v:?} is not a permutation")));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation(v.iter().map(|&x| (x - 1) as u8).collect()))
    }

    pub(crate) fn from_zero_based(v: Vec<u8>) -> Self {
        Permutation(v)
    }

    /// 1-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    /// Image of `a` (1-based).
    pub fn apply(&self, a: usize) -> usize {
        self.0[a - 1] as usize + 1
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.0
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.0;
        let mut c = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    c += 1;
                }
            }
        }
        c
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut v = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            v[x as usize] = i as u8;
        }
        Permutation(v)
    }

    /// Bruhat order via the tableau criterion on initial segments.
    pub fn bruhat_leq(&self, other: &Permutation) -> bool {
        bruhat_leq_raw(&self.0, &other.0)
    }

    /// All permutations of `[1,k]` in lexicographic order.
    pub fn all(k: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..k as u8).collect();
        loop {
            out.push(Permutation(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.len() > 9 { "," } else { "" };
        let parts: Vec<String> = self.one_line().iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(sep))
    }
}

fn bruhat_leq_raw(u: &[u8], v: &[u8]) -> bool {
    let k = u.len();
    let mut a = Vec::with_capacity(k);
    let mut b = Vec::with_capacity(k);
    for i in 0..k {
        a.push(u[i]);
        b.push(v[i]);
        a.sort_unstable();
        b.sort_unstable();
        if a.iter().zip(&b).any(|(x, y)| x > y) {
            return false;
        }
    }
    true
}

// Packed form: 4 bits per letter.
type Code = u64;

fn pack(v: &[u8]) -> Code {
    v.iter().enumerate().fold(0, |acc, (i, &x)| acc | ((x as u64) << (4 * i)))
}

fn unpack(c: Code, k: usize) -> Vec<u8> {
    (0..k).map(|i| ((c >> (4 * i)) & 0xf) as u8).collect()
}

fn letter(c: Code, pos: usize) -> u8 {
    ((c >> (4 * pos)) & 0xf) as u8
}

fn position_of(c: Code, k: usize, value: u8) -> usize {
    (0..k).find(|&i| letter(c, i) == value).expect("value present")
}

/// Left multiplication by `s_i` (0-based i): swaps the values `i` and `i+1`.
fn left_simple(c: Code, k: usize, i: u8) -> Code {
    let p = position_of(c, k, i);
    let q = position_of(c, k, i + 1);
    let mut out = c & !(0xf << (4 * p)) & !(0xf << (4 * q));
    out |= ((i + 1) as u64) << (4 * p);
    out |= (i as u64) << (4 * q);
    out
}

/// `s_i` is a left descent iff `i+1` appears before `i`.
fn is_left_descent(c: Code, k: usize, i: u8) -> bool {
    position_of(c, k, i + 1) < position_of(c, k, i)
}

/// No right descent at any `s_i` with bit `i` of `mask` set.
fn is_min_coset_rep(c: Code, mask: u32) -> bool {
    (0..16).filter(|i| mask >> i & 1 == 1).all(|i| letter(c, i) < letter(c, i + 1))
}

fn code_length(c: Code, k: usize) -> usize {
    let v = unpack(c, k);
    Permutation(v).length()
}

/// A polynomial in `t` with integer coefficients, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KLPolynomial(pub Vec<i64>);

impl KLPolynomial {
    pub fn zero() -> Self {
        KLPolynomial(Vec::new())
    }

    pub fn one() -> Self {
        KLPolynomial(vec![1])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        (!self.0.is_empty()).then(|| self.0.len() - 1)
    }

    pub fn coeff(&self, d: usize) -> i64 {
        self.0.get(d).copied().unwrap_or(0)
    }

    pub fn at_one(&self) -> i64 {
        self.0.iter().sum()
    }

    fn trim(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    fn add_shifted(&mut self, other: &KLPolynomial, shift: usize, scale: i64) {
        if other.0.len() + shift > self.0.len() {
            self.0.resize(other.0.len() + shift, 0);
        }
        for (d, &c) in other.0.iter().enumerate() {
            self.0[d + shift] += scale * c;
        }
    }
}

impl fmt::Display for KLPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        for (d, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mono = match d {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{d}"),
            };
            let s = if mono.is_empty() {
                c.to_string()
            } else if c == 1 {
                mono
            } else {
                format!("{c}{mono}")
            };
            parts.push(s);
        }
        f.write_str(&parts.join("+").replace("+-", "-"))
    }
}

/// The lower Bruhat interval `[e, y]` with `p_{x,y}` for every `x` in it.
#[derive(Debug)]
pub struct KlColumn {
    k: usize,
    len_y: usize,
    values: HashMap<Code, KLPolynomial>,
}

impl KlColumn {
    pub fn get(&self, x: &Permutation) -> KLPolynomial {
        self.values.get(&pack(x.raw())).cloned().unwrap_or_default()
    }

    /// Elements of the interval, sorted.
    pub fn interval(&self) -> Vec<Permutation> {
        let mut v: Vec<Permutation> = self
            .values
            .keys()
            .map(|&c| Permutation(unpack(c, self.k)))
            .collect();
        v.sort();
        v
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn top_length(&self) -> usize {
        self.len_y
    }

    /// `(x, p_{x,y}(1))` for every `x ≤ y`, sorted by `x`.
    pub fn values_at_one(&self) -> Vec<(Permutation, i64)> {
        let mut v: Vec<(Permutation, i64)> = self
            .values
            .iter()
            .map(|(&c, p)| (Permutation(unpack(c, self.k)), p.at_one()))
            .collect();
        v.sort();
        v
    }
}

/// Memoized Kazhdan–Lusztig polynomials.
///
/// For each top element `y` the whole column `x ↦ p_{x,y}` over `[e,y]` is computed
/// once. Reads are concurrent; inserts are serialized.
#[derive(Debug)]
pub struct KlCache {
    cap: usize,
    columns: RwLock<HashMap<(usize, Code), Arc<KlColumn>>>,
    parabolic: RwLock<HashMap<(usize, u32, Code), Arc<KlColumn>>>,
}

impl Default for KlCache {
    fn default() -> Self {
        KlCache::new(DEFAULT_HARD_CAP)
    }
}

impl KlCache {
    pub fn new(cap: usize) -> Self {
        KlCache {
            cap: cap.min(MAX_PACKED_K),
            columns: RwLock::new(HashMap::new()),
            parabolic: RwLock::new(HashMap::new()),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check(&self, k: usize) -> Result<()> {
        if k > self.cap {
            return Err(Error::KTooLarge { k, cap: self.cap });
        }
        Ok(())
    }

    pub fn polynomial(&self, u: &Permutation, v: &Permutation) -> Result<KLPolynomial> {
        if u.k() != v.k() {
            return Err(Error::DimensionMismatch(u.to_string(), v.to_string()));
        }
        self.check(u.k())?;
        if !u.bruhat_leq(v) {
            return Ok(KLPolynomial::zero());
        }
        // p_{u,v} = p_{u⁻¹,v⁻¹}; use whichever top is already cached
        let vi = v.inverse();
        let key_inv = (v.k(), pack(vi.raw()));
        if self.columns.read().unwrap().contains_key(&key_inv) {
            return Ok(self.column(&vi)?.get(&u.inverse()));
        }
        Ok(self.column(v)?.get(u))
    }

    pub fn at_one(&self, u: &Permutation, v: &Permutation) -> Result<i64> {
        Ok(self.polynomial(u, v)?.at_one())
    }

    /// Total number of stored polynomials.
    pub fn stored(&self) -> usize {
        let a: usize = self.columns.read().unwrap().values().map(|c| c.len()).sum();
        let b: usize = self.parabolic.read().unwrap().values().map(|c| c.len()).sum();
        a + b
    }

    pub fn clear(&self) {
        self.columns.write().unwrap().clear();
        self.parabolic.write().unwrap().clear();
    }

    /// Parabolic polynomials `Σ_{z ∈ W_J} (−1)^{ℓ(z)} p_{σz,y}` for the minimal coset
    /// representatives `σ ≤ y`; `y` must itself be minimal in `y W_J`.
    ///
    /// `j` lists the simple reflections `s_j` (1-based) generating `W_J`. Only nonzero
    /// values are stored.
    pub fn parabolic_column(&self, y: &Permutation, j: &[usize]) -> Result<Arc<KlColumn>> {
        self.check(y.k())?;
        let k = y.k();
        let mut mask = 0u32;
        for &s in j {
            if s == 0 || s >= k {
                return Err(Error::BadDimensions(format!("s_{s} is not a simple reflection of S_{k}")));
            }
            mask |= 1 << (s - 1);
        }
        let code = pack(y.raw());
        if !is_min_coset_rep(code, mask) {
            return Err(Error::BadDimensions(format!("{y} is not a minimal coset representative")));
        }
        Ok(self.parabolic_code(k, mask, code))
    }

    fn parabolic_code(&self, k: usize, mask: u32, y: Code) -> Arc<KlColumn> {
        if mask == 0 {
            return self.column_code(k, y);
        }
        if let Some(c) = self.parabolic.read().unwrap().get(&(k, mask, y)) {
            return c.clone();
        }
        let col = Arc::new(self.compute_parabolic(k, mask, y));
        self.parabolic.write().unwrap().entry((k, mask, y)).or_insert(col).clone()
    }

    fn compute_parabolic(&self, k: usize, mask: u32, y: Code) -> KlColumn {
        let len_y = code_length(y, k);
        let Some(s) = (0..k.saturating_sub(1) as u8).find(|&i| is_left_descent(y, k, i)) else {
            let mut values = HashMap::new();
            values.insert(y, KLPolynomial::one());
            return KlColumn { k, len_y, values };
        };
        let v = left_simple(y, k, s);
        let col_v = self.parabolic_code(k, mask, v);
        let len_v = len_y - 1;

        // the top coefficient of a parabolic polynomial is the ordinary μ
        let mut mus: Vec<(Code, i64, usize)> = Vec::new();
        for (&z, p) in &col_v.values {
            if z == v || !is_left_descent(z, k, s) {
                continue;
            }
            let lz = code_length(z, k);
            let diff = len_v - lz;
            if diff % 2 == 1 {
                let mu = p.coeff((diff - 1) / 2);
                if mu != 0 {
                    mus.push((z, mu, lz));
                }
            }
        }
        mus.sort_unstable();
        let z_cols: Vec<(Arc<KlColumn>, i64, usize)> = mus
            .iter()
            .map(|&(z, mu, lz)| (self.parabolic_code(k, mask, z), mu, lz))
            .collect();

        let mut candidates: Vec<Code> = Vec::with_capacity(col_v.values.len() * 2);
        for &x in col_v.values.keys() {
            candidates.push(x);
            candidates.push(left_simple(x, k, s));
        }
        for (zc, _, _) in &z_cols {
            candidates.extend(zc.values.keys().copied());
        }
        candidates.sort_unstable();
        candidates.dedup();

        let mut values = HashMap::with_capacity(candidates.len());
        for x in candidates {
            if !is_min_coset_rep(x, mask) {
                continue;
            }
            let sx = left_simple(x, k, s);
            let descent = is_left_descent(x, k, s);
            if !descent && !is_min_coset_rep(sx, mask) {
                // s x = x t with t ∈ W_J: the alternating sum cancels
                continue;
            }
            let c = usize::from(descent);
            let mut p = KLPolynomial::zero();
            if let Some(a) = col_v.values.get(&sx) {
                p.add_shifted(a, 1 - c, 1);
            }
            if let Some(b) = col_v.values.get(&x) {
                p.add_shifted(b, c, 1);
            }
            for (zc, mu, lz) in &z_cols {
                if let Some(q) = zc.values.get(&x) {
                    p.add_shifted(q, (len_y - lz) / 2, -mu);
                }
            }
            let p = p.trim();
            if !p.is_zero() {
                values.insert(x, p);
            }
        }
        KlColumn { k, len_y, values }
    }

    /// The full column for the top element `y`.
    pub fn column(&self, y: &Permutation) -> Result<Arc<KlColumn>> {
        self.check(y.k())?;
        Ok(self.column_code(y.k(), pack(y.raw())))
    }

    fn column_code(&self, k: usize, y: Code) -> Arc<KlColumn> {
        if let Some(c) = self.columns.read().unwrap().get(&(k, y)) {
            return c.clone();
        }
        let col = Arc::new(self.compute(k, y));
        self.columns.write().unwrap().entry((k, y)).or_insert(col).clone()
    }

    fn compute(&self, k: usize, y: Code) -> KlColumn {
        let len_y = code_length(y, k);
        let Some(s) = (0..k.saturating_sub(1) as u8).find(|&i| is_left_descent(y, k, i)) else {
            let mut values = HashMap::new();
            values.insert(y, KLPolynomial::one());
            return KlColumn { k, len_y, values };
        };
        let v = left_simple(y, k, s);
        let col_v = self.column_code(k, v);
        let len_v = len_y - 1;

        // z < v with s z < z and μ(z,v) ≠ 0
        let mut mus: Vec<(Code, i64, usize)> = Vec::new();
        for (&z, p) in &col_v.values {
            if z == v || !is_left_descent(z, k, s) {
                continue;
            }
            let lz = code_length(z, k);
            let diff = len_v - lz;
            if diff % 2 == 1 {
                let mu = p.coeff((diff - 1) / 2);
                if mu != 0 {
                    mus.push((z, mu, lz));
                }
            }
        }
        mus.sort_unstable();
        let z_cols: Vec<(Arc<KlColumn>, i64, usize)> = mus
            .iter()
            .map(|&(z, mu, lz)| (self.column_code(k, z), mu, lz))
            .collect();

        let mut interval: Vec<Code> = Vec::with_capacity(col_v.values.len() * 2);
        for &x in col_v.values.keys() {
            interval.push(x);
            let sx = left_simple(x, k, s);
            if !col_v.values.contains_key(&sx) {
                interval.push(sx);
            }
        }

        let mut values = HashMap::with_capacity(interval.len());
        for x in interval {
            let sx = left_simple(x, k, s);
            let c = usize::from(is_left_descent(x, k, s));
            let mut p = KLPolynomial::zero();
            if let Some(a) = col_v.values.get(&sx) {
                p.add_shifted(a, 1 - c, 1);
            }
            if let Some(b) = col_v.values.get(&x) {
                p.add_shifted(b, c, 1);
            }
            for (zc, mu, lz) in &z_cols {
                if let Some(q) = zc.values.get(&x) {
                    p.add_shifted(q, (len_y - lz) / 2, -mu);
                }
            }
            let p = p.trim();
            debug_assert!(!p.is_zero());
            values.insert(x, p);
        }
        KlColumn { k, len_y, values }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::from_one_line(v).unwrap()
    }

    #[test]
    fn lengths() {
        assert_eq!(Permutation::identity(4).length(), 0);
        assert_eq!(Permutation::longest(4).length(), 6);
        assert_eq!(Permutation::simple(2, 4).length(), 1);
    }

    #[test]
    fn group_laws() {
        let all = Permutation::all(4);
        assert_eq!(all.len(), 24);
        for a in &all {
            assert_eq!(a.compose(&a.inverse()), Permutation::identity(4));
            for b in &all {
                assert_eq!(a.compose(b).inverse(), b.inverse().compose(&a.inverse()));
            }
        }
    }

    #[test]
    fn bruhat_basics() {
        let w0 = Permutation::longest(4);
        let e = Permutation::identity(4);
        for u in Permutation::all(4) {
            assert!(u.bruhat_leq(&w0));
            assert!(e.bruhat_leq(&u));
        }
        let a = p(&[3, 4, 1, 2]);
        let b = p(&[4, 2, 3, 1]);
        // both have length 4 and are distinct
        assert!(!a.bruhat_leq(&b) && !b.bruhat_leq(&a));
    }

    #[test]
    fn bruhat_agrees_with_subword_closure() {
        // downward closure by deleting one inversion-reducing transposition
        let all = Permutation::all(4);
        for v in &all {
            let mut below = std::collections::BTreeSet::new();
            let mut stack = vec![v.clone()];
            while let Some(w) = stack.pop() {
                if !below.insert(w.clone()) {
                    continue;
                }
                for i in 0..4 {
                    for j in i + 1..4 {
                        if w.0[i] > w.0[j] {
                            let mut x = w.0.clone();
                            x.swap(i, j);
                            stack.push(Permutation(x));
                        }
                    }
                }
            }
            for u in &all {
                assert_eq!(u.bruhat_leq(v), below.contains(u), "{u} {v}");
            }
        }
    }

    #[test]
    fn kl_s3_all_one() {
        let cache = KlCache::default();
        for u in Permutation::all(3) {
            for v in Permutation::all(3) {
                let q = cache.polynomial(&u, &v).unwrap();
                if u.bruhat_leq(&v) {
                    assert_eq!(q, KLPolynomial::one());
                } else {
                    assert!(q.is_zero());
                }
            }
        }
    }

    #[test]
    fn kl_values_in_s4() {
        let cache = KlCache::default();
        let w0 = Permutation::longest(4);
        let top = Permutation::simple(2, 4).compose(&w0);
        let mut seen = std::collections::BTreeSet::new();
        for u in Permutation::all(4) {
            seen.insert(cache.polynomial(&u.compose(&w0), &top).unwrap().to_string());
        }
        let expected: std::collections::BTreeSet<String> =
            ["0", "1", "1+t"].iter().map(|s| s.to_string()).collect();
        assert_eq!(seen, expected);
        // the classical example p_{e, 3412} = 1+t
        assert_eq!(cache.polynomial(&Permutation::identity(4), &p(&[3, 4, 1, 2])).unwrap(), KLPolynomial(vec![1, 1]));
    }

    #[test]
    fn inverse_symmetry() {
        let cache = KlCache::default();
        for u in Permutation::all(5).iter().step_by(7) {
            for v in Permutation::all(5).iter().step_by(5) {
                assert_eq!(
                    cache.polynomial(u, v).unwrap(),
                    cache.polynomial(&u.inverse(), &v.inverse()).unwrap()
                );
            }
        }
    }

    #[test]
    fn parabolic_matches_alternating_sums() {
        let cache = KlCache::new(6);
        for k in 3..=5usize {
            let all = Permutation::all(k);
            for mask in 1u32..(1 << (k - 1)) {
                let j: Vec<usize> = (0..k - 1).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
                let block = |a: usize| (0..a).filter(|c| mask >> c & 1 == 0).count();
                let w_j: Vec<Permutation> =
                    all.iter().filter(|z| (0..k).all(|a| block(z.apply(a + 1) - 1) == block(a))).cloned().collect();
                for y in all.iter().filter(|y| is_min_coset_rep(pack(y.raw()), mask)) {
                    let col = cache.parabolic_column(y, &j).unwrap();
                    for sigma in all.iter().filter(|x| is_min_coset_rep(pack(x.raw()), mask)) {
                        let mut expect = KLPolynomial::zero();
                        for z in &w_j {
                            let x = sigma.compose(z);
                            let sign = if z.length() % 2 == 0 { 1 } else { -1 };
                            expect.add_shifted(&cache.polynomial(&x, y).unwrap(), 0, sign);
                        }
                        assert_eq!(col.get(sigma), expect.trim(), "k={k} J={j:?} y={y} σ={sigma}");
                    }
                }
            }
        }
    }

    #[test]
    fn refuses_large_k() {
        let cache = KlCache::new(5);
        let e = Permutation::identity(6);
        assert_eq!(cache.polynomial(&e, &e), Err(Error::KTooLarge { k: 6, cap: 5 }));
    }

    #[test]
    fn display() {
        assert_eq!(KLPolynomial(vec![1, 1]).to_string(), "1+t");
        assert_eq!(KLPolynomial(vec![1, 0, 2]).to_string(), "1+2t^2");
        assert_eq!(p(&[2, 1, 6, 5, 4, 3, 7]).to_string(), "2165437");
    }
}
