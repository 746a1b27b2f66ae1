//! The Kazhdan–Lusztig character formulas: symbolic q-characters, `ch(T)`,
//! KL immanants of the MS matrix, and reality/primeness tests.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomials::{monomial_to_multisegment, psi, segment_profile, DominantMonomial, Segment};
use crate::plucker::{quotient_equal, PluckerPolynomial, RationalMatrix, Straightener};
use crate::symmetric::{KlCache, Permutation, MAX_PACKED_K};
use crate::tableaux::{Column, Entry, Tableau};

pub const DEFAULT_MAX_K: usize = 9;

/// A formal integer combination of products of fundamental classes `χ_q(Y_{i,s})`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QCharFormula {
    terms: BTreeMap<Vec<(i32, i32)>, i64>,
}

impl QCharFormula {
    pub fn terms(&self) -> &BTreeMap<Vec<(i32, i32)>, i64> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, factors: &[(i32, i32)]) -> i64 {
        let mut f = factors.to_vec();
        f.sort_unstable();
        self.terms.get(&f).copied().unwrap_or(0)
    }

    fn add(&mut self, mut factors: Vec<(i32, i32)>, c: i64) {
        factors.sort_unstable();
        let e = self.terms.entry(factors.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&factors);
        }
    }

    /// Terms with more factors first, then lexicographic.
    pub fn sorted_terms(&self) -> Vec<(&Vec<(i32, i32)>, i64)> {
        let mut v: Vec<_> = self.terms.iter().map(|(f, &c)| (f, c)).collect();
        v.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(b.0)));
        v
    }

    pub fn to_text(&self) -> String {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (f, c)) in terms.iter().enumerate() {
            let mono: Vec<String> = f.iter().map(|(i, s)| format!("chi(Y[{i},{s}])")).collect();
            let mono = mono.join("*");
            if idx == 0 {
                if *c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if *c < 0 { " - " } else { " + " });
            }
            let a = c.unsigned_abs();
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a == 1 {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for QCharFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Serialize, Deserialize)]
struct JsonQTerm {
    coeff: i64,
    factors: Vec<(i32, i32)>,
}

impl Serialize for QCharFormula {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<JsonQTerm> = self
            .sorted_terms()
            .into_iter()
            .map(|(f, c)| JsonQTerm { coeff: c, factors: f.clone() })
            .collect();
        v.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for QCharFormula {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<JsonQTerm>::deserialize(de)?;
        let mut q = QCharFormula::default();
        for t in v {
            q.add(t.factors, t.coeff);
        }
        Ok(q)
    }
}

/// A `k × k` matrix `A^{i,j}` with `(a,b)` entry `A_{i_a, j_b}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedSubmatrix {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    entries: Vec<Vec<BigRational>>,
}

impl GeneralizedSubmatrix {
    /// `host` is square and indexed from 1 by `rows` and `cols`.
    pub fn new(host: &[Vec<BigRational>], rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        if rows.len() != cols.len() {
            return Err(Error::BadDimensions(format!("{} rows vs {} columns", rows.len(), cols.len())));
        }
        let size = host.len();
        if rows.iter().chain(&cols).any(|&x| x == 0 || x > size) {
            return Err(Error::BadDimensions(format!("index outside [1,{size}]")));
        }
        let entries = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| host[r - 1][c - 1].clone()).collect())
            .collect();
        Ok(GeneralizedSubmatrix { rows, cols, entries })
    }

    /// A plain `k × k` matrix.
    pub fn from_square(entries: Vec<Vec<BigRational>>) -> Result<Self> {
        let k = entries.len();
        if entries.iter().any(|r| r.len() != k) {
            return Err(Error::RaggedRows);
        }
        Ok(GeneralizedSubmatrix { rows: (1..=k).collect(), cols: (1..=k).collect(), entries })
    }

    pub fn k(&self) -> usize {
        self.entries.len()
    }

    /// Entry `(a,b)`, 1-based.
    pub fn get(&self, a: usize, b: usize) -> &BigRational {
        &self.entries[a - 1][b - 1]
    }
}

/// The MS matrix entry `(i,j)`: column `[i,i+n]∖{j}` read mod `m`, or `None` off the band.
pub fn ms_entry(i: usize, j: usize, n: usize, m: usize) -> Option<Column> {
    if j < i || j > i + n {
        return None;
    }
    let mut v: Vec<Entry> = (i..=i + n)
        .filter(|&x| x != j)
        .map(|x| ((x - 1) % m + 1) as Entry)
        .collect();
    v.sort_unstable();
    Some(Column::new(v).expect("distinct entries"))
}

/// The symbolic `m × m` MS matrix.
pub fn ms_matrix(n: usize, m: usize) -> Vec<Vec<Option<Column>>> {
    (1..=m).map(|i| (1..=m).map(|j| ms_entry(i, j, n, m)).collect()).collect()
}

/// `MS(x)` evaluated at the row span of `x`.
pub fn ms_matrix_at(x: &RationalMatrix) -> Vec<Vec<BigRational>> {
    let (n, m) = (x.n(), x.m());
    ms_matrix(n, m)
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|e| e.map_or_else(BigRational::zero, |c| x.minor(c.entries())))
                .collect()
        })
        .collect()
}

/// The index data of a small-gaps tableau: first-row entries `i`, deleted entries `j`
/// (both weakly increasing) and the longest double-coset representative `w_T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallGapsData {
    pub n: usize,
    pub m: usize,
    pub i: Vec<usize>,
    pub j: Vec<usize>,
    pub w: Permutation,
}

impl SmallGapsData {
    pub fn of(t: &Tableau) -> Result<Self> {
        if !t.has_small_gaps() {
            return Err(Error::NotFundamental(
                t.columns().into_iter().find(|c| !c.is_fundamental()).map(|c| c.entries().to_vec()).unwrap_or_default(),
            ));
        }
        let ms = monomial_to_multisegment(&psi(t))?;
        let p = segment_profile(&ms);
        let n = t.n();
        Ok(SmallGapsData {
            n,
            m: t.m(),
            i: p.mu.iter().map(|&mu| (1 - mu) as usize).collect(),
            j: p.lambda.iter().map(|&l| (n as i32 - l) as usize).collect(),
            w: p.w,
        })
    }

    pub fn k(&self) -> usize {
        self.i.len()
    }

    /// Columns `[i_{u(a)}, i_{u(a)}+n]∖{j_a}`, or `None` when some `j_a` is outside.
    pub fn columns_for(&self, u: &Permutation) -> Option<Vec<Column>> {
        (1..=self.k())
            .map(|a| {
                let lo = self.i[u.apply(a) - 1];
                let r = self.j[a - 1];
                (lo..=lo + self.n).contains(&r).then(|| Column::interval_minus(lo as Entry, self.n, r as Entry))
            })
            .collect()
    }
}

/// The standard monomial `P_{u;T}` as a tableau, or `None` for zero.
pub fn p_u_t(u: &Permutation, t: &Tableau) -> Result<Option<Tableau>> {
    let d = SmallGapsData::of(t)?;
    if u.k() != d.k() {
        return Err(Error::DimensionMismatch(format!("S_{}", u.k()), format!("{} columns", d.k())));
    }
    Ok(d.columns_for(u).map(|cols| Tableau::from_columns(&cols, t.n(), t.m()).expect("in range")))
}

/// Result of [`Engine::ch`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChResult {
    pub value: PluckerPolynomial,
    /// True when the frozen denominator cleared.
    pub in_ring: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealityReport {
    pub real: bool,
    /// `ch(T)² − ch(T∪T)`.
    pub certificate: PluckerPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeReport {
    pub prime: bool,
    /// Small-gaps factors `(T′, T″)` with `ch(T′)ch(T″) = ch(T)` in the quotient.
    pub factors: Option<(Tableau, Tableau)>,
}

/// Stored KL polynomials kept between calls before the cache is dropped.
const KL_CACHE_BUDGET: usize = 6_000_000;

/// Holds the KL cache and the gap-weight cap.
#[derive(Debug)]
pub struct Engine {
    kl: KlCache,
    max_k: usize,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(DEFAULT_MAX_K)
    }
}

impl Engine {
    pub fn new(max_k: usize) -> Self {
        let max_k = max_k.min(MAX_PACKED_K);
        Engine { kl: KlCache::new(max_k), max_k }
    }

    pub fn max_k(&self) -> usize {
        self.max_k
    }

    pub fn kl(&self) -> &KlCache {
        &self.kl
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k > self.max_k {
            return Err(Error::KTooLarge { k, cap: self.max_k });
        }
        Ok(())
    }

    /// `(u, c_u)` with `Σ_u c_u f(u) = Σ_u (−1)^{ℓ(u)+ℓ(w)} p_{uw₀, ww₀}(1) f(u)` for every `f`
    /// invariant under permuting equal `values` (left) and equal `positions` (right).
    ///
    /// One `u` per coset of the larger of the two stabilizers, sorted.
    fn kl_coefficients<A: PartialEq, B: PartialEq>(
        &self,
        w: &Permutation,
        values: &[A],
        positions: &[B],
    ) -> Result<Vec<(Permutation, i64)>> {
        let k = w.k();
        self.check_k(k)?;
        let w0 = Permutation::longest(k);
        let y = w.compose(&w0);
        let lw = w.length();
        let runs = |v: &dyn Fn(usize) -> bool| -> (Vec<usize>, u64) {
            let gens: Vec<usize> = (1..k).filter(|&a| v(a)).collect();
            let mut size = 1u64;
            let mut run = 1u64;
            for a in 1..k {
                if v(a) {
                    run += 1;
                    size *= run;
                } else {
                    run = 1;
                }
            }
            (gens, size)
        };
        let (left, left_size) = runs(&|b| values[b - 1] == values[b]);
        let (right, right_size) = runs(&|a| positions[a - 1] == positions[a]);
        // x = u w₀ over [e, y]: right cosets of x carry s_{k−a}, left cosets s_b
        let right: Vec<usize> = right.iter().map(|&a| k - a).collect();
        let reps: Vec<(Permutation, i64)> = if left_size > right_size {
            match self.kl.parabolic_column(&y.inverse(), &left) {
                Ok(col) => col.values_at_one().into_iter().map(|(x, p)| (x.inverse(), p)).collect(),
                Err(_) => self.kl.column(&y)?.values_at_one(),
            }
        } else if right_size > 1 {
            match self.kl.parabolic_column(&y, &right) {
                Ok(col) => col.values_at_one(),
                Err(_) => self.kl.column(&y)?.values_at_one(),
            }
        } else {
            self.kl.column(&y)?.values_at_one()
        };
        let mut out: Vec<(Permutation, i64)> = reps
            .into_iter()
            .map(|(x, p)| {
                let u = x.compose(&w0);
                let sign = if (u.length() + lw) % 2 == 0 { 1 } else { -1 };
                (u, sign * p)
            })
            .collect();
        out.sort();
        Ok(out)
    }

    /// Symbolic q-character of `L(M)`; `n = None` keeps every fundamental factor.
    pub fn qchar_formula(&self, mono: &DominantMonomial, n: Option<usize>) -> Result<QCharFormula> {
        let mut q = QCharFormula::default();
        if mono.is_unit() {
            q.add(Vec::new(), 1);
            return Ok(q);
        }
        let ms = monomial_to_multisegment(mono)?;
        let p = segment_profile(&ms);
        for (u, c) in self.kl_coefficients(&p.w, &p.mu, &p.lambda)? {
            let mut factors = Vec::new();
            let mut zero = false;
            for a in 1..=p.k() {
                let seg = Segment::new(p.mu[u.apply(a) - 1], p.lambda[a - 1]);
                if seg.e == seg.b - 1 {
                    continue;
                }
                if seg.e < seg.b - 1 {
                    zero = true;
                    break;
                }
                let (i, s) = seg.to_fundamental();
                match n {
                    Some(n) if i as usize == n => continue,
                    Some(n) if i as usize > n => {
                        zero = true;
                        break;
                    }
                    _ => factors.push((i, s)),
                }
            }
            if !zero {
                q.add(factors, c);
            }
        }
        Ok(q)
    }

    /// `Σ_u (−1)^{ℓ(u w_T)} p_{uw₀, w_T w₀}(1) P_{u;T}` for a small-gaps `T`.
    pub fn ch_small_gaps(&self, t: &Tableau) -> Result<PluckerPolynomial> {
        let (n, m) = (t.n(), t.m());
        if t.is_empty() {
            return Ok(PluckerPolynomial::one(n, m));
        }
        let d = SmallGapsData::of(t)?;
        if self.kl.stored() > KL_CACHE_BUDGET {
            self.kl.clear();
        }
        let coeffs = self.kl_coefficients(&d.w, &d.i, &d.j)?;
        let terms: BTreeMap<Vec<Column>, BigInt> = coeffs
            .par_iter()
            .filter(|(_, c)| *c != 0)
            .filter_map(|(u, c)| {
                d.columns_for(u).map(|mut cols| {
                    cols.sort();
                    (cols, *c)
                })
            })
            .fold(BTreeMap::new, |mut acc: BTreeMap<Vec<Column>, BigInt>, (cols, c)| {
                *acc.entry(cols).or_insert_with(BigInt::zero) += c;
                acc
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert_with(BigInt::zero) += v;
                }
                a
            });
        // the columns already form standard monomials; straightening only merges
        let mut st = Straightener::new();
        let done = st.straighten_terms(terms);
        let terms = done
            .into_iter()
            .map(|(cols, c)| (Tableau::from_columns(&cols, n, m).expect("in range"), c))
            .collect();
        Ok(PluckerPolynomial::from_parts(n, m, vec![0; m - n + 1], terms))
    }

    /// `ch(T) = P_{T″} ch(T′)`, with the denominator cleared when possible.
    pub fn ch(&self, t: &Tableau) -> Result<ChResult> {
        let (tp, frac) = t.small_gaps_form();
        let base = self.ch_small_gaps(&tp)?;
        let e = frac.frozen_exponents().expect("trivial parts");
        let (value, in_ring) = base.times_frozen(&e).clear_denominators();
        Ok(ChResult { value, in_ring })
    }

    /// `Δ = ch(T)² − ch(T∪T)`; real iff `Δ = 0`.
    pub fn reality_test(&self, t: &Tableau) -> Result<RealityReport> {
        let tt = t.union(t)?;
        self.check_k(tt.gap_weight())?;
        let c = self.ch(t)?.value;
        let c2 = self.ch(&tt)?.value;
        let delta = c.mul(&c)?.sub(&c2)?;
        let (certificate, _) = delta.clear_denominators();
        Ok(RealityReport { real: certificate.is_zero(), certificate })
    }

    /// Searches bipartitions of the fundamental columns of `T′ ~ T` for a factorization.
    pub fn primeness_test(&self, t: &Tableau) -> Result<PrimeReport> {
        let (n, m) = (t.n(), t.m());
        let (tp, _) = t.small_gaps_form();
        self.check_k(tp.num_columns())?;
        let mut distinct: Vec<(Column, usize)> = Vec::new();
        for c in tp.columns() {
            match distinct.iter_mut().find(|(d, _)| *d == c) {
                Some(e) => e.1 += 1,
                None => distinct.push((c, 1)),
            }
        }
        let whole = self.ch_small_gaps(&tp)?;
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x9e37);
        let point = RationalMatrix::random_totally_positive(n, m, &mut rng).normalize_frozens()?;
        let whole_at = whole.evaluate(&point)?;

        // multiplicity vectors in increasing order; each unordered pair once
        let mut choice = vec![0usize; distinct.len()];
        loop {
            let mut carry = true;
            for (idx, c) in choice.iter_mut().enumerate() {
                if !carry {
                    break;
                }
                if *c < distinct[idx].1 {
                    *c += 1;
                    carry = false;
                } else {
                    *c = 0;
                }
            }
            if carry {
                break;
            }
            let complement: Vec<usize> = distinct.iter().zip(&choice).map(|((_, k), c)| k - c).collect();
            let total: usize = choice.iter().sum();
            if total == tp.num_columns() || choice > complement {
                continue;
            }
            let part = |mult: &[usize]| {
                let cols: Vec<Column> = distinct
                    .iter()
                    .zip(mult)
                    .flat_map(|((c, _), &k)| std::iter::repeat(c.clone()).take(k))
                    .collect();
                Tableau::from_columns(&cols, n, m).expect("in range")
            };
            let (a, b) = (part(&choice), part(&complement));
            let (ca, cb) = (self.ch_small_gaps(&a)?, self.ch_small_gaps(&b)?);
            if ca.evaluate(&point)? * cb.evaluate(&point)? != whole_at {
                continue;
            }
            if quotient_equal(&ca.mul(&cb)?, &whole)? {
                return Ok(PrimeReport { prime: false, factors: Some((a, b)) });
            }
        }
        Ok(PrimeReport { prime: true, factors: None })
    }

    /// `Σ_{u ≥ v} (−1)^{ℓ(u)−ℓ(v)} p_{w₀u, w₀v}(1) ∏ A_{a,u(a)}`.
    pub fn kl_immanant(&self, v: &Permutation, a: &GeneralizedSubmatrix) -> Result<BigRational> {
        let k = v.k();
        if a.k() != k {
            return Err(Error::DimensionMismatch(format!("S_{k}"), format!("{}x{}", a.k(), a.k())));
        }
        self.check_k(k)?;
        if k == 0 {
            return Ok(BigRational::one());
        }
        let w0 = Permutation::longest(k);
        let col = self.kl.column(&w0.compose(v))?;
        let lv = v.length();
        let vals = col.values_at_one();
        let total = vals
            .par_iter()
            .map(|(x, p)| {
                let u = w0.compose(x);
                let mut prod = BigRational::from_integer(BigInt::from(*p));
                if (u.length() + lv) % 2 == 1 {
                    prod = -prod;
                }
                for i in 1..=k {
                    prod *= a.get(i, u.apply(i));
                }
                prod
            })
            .reduce(BigRational::zero, |x, y| x + y);
        Ok(total)
    }

    /// Compares `Imm_{w_T⁻¹}(MS(X)^{i,j})` with `ch(T′)(X)`.
    pub fn immanant_check(&self, t: &Tableau, x: &RationalMatrix) -> Result<bool> {
        let lhs = self.ch_small_gaps(t)?.evaluate(x)?;
        if t.is_empty() {
            return Ok(lhs.is_one());
        }
        let d = SmallGapsData::of(t)?;
        let host = ms_matrix_at(x);
        let sub = GeneralizedSubmatrix::new(&host, d.i.clone(), d.j.clone())?;
        let rhs = self.kl_immanant(&d.w.inverse(), &sub)?;
        Ok(lhs == rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomials::{fundamental_column, phi_tilde};
    use crate::plucker::{quotient_equal_sums, PluckerMonomial};
    use rand_chacha::ChaCha8Rng;

    fn col(e: &[Entry]) -> Column {
        Column::new(e.to_vec()).unwrap()
    }

    fn tab_cols(cols: &[&[Entry]], n: usize, m: usize) -> Tableau {
        let cs: Vec<Column> = cols.iter().map(|c| col(c)).collect();
        Tableau::from_columns(&cs, n, m).unwrap()
    }

    fn poly(n: usize, m: usize, terms: &[(i64, &[&[Entry]])]) -> PluckerPolynomial {
        let input: Vec<(BigInt, PluckerMonomial)> = terms
            .iter()
            .map(|(k, cs)| (BigInt::from(*k), PluckerMonomial::new(cs.iter().map(|c| col(c)).collect())))
            .collect();
        PluckerPolynomial::straighten(n, m, &input).unwrap()
    }

    #[test]
    fn first_q_character() {
        let e = Engine::default();
        let mono = DominantMonomial::from_factors([(2, -4), (1, -1)]);
        let q = e.qchar_formula(&mono, None).unwrap();
        assert_eq!(q.to_text(), "chi(Y[1,-1])*chi(Y[2,-4]) - chi(Y[3,-3])");
        let q3 = e.qchar_formula(&mono, Some(3)).unwrap();
        assert_eq!(q3.to_text(), "chi(Y[1,-1])*chi(Y[2,-4]) - 1");
        let f = e.qchar_formula(&DominantMonomial::y(2, 0), None).unwrap();
        assert_eq!(f.to_text(), "chi(Y[2,0])");
    }

    #[test]
    fn six_term_q_character() {
        let e = Engine::default();
        let mono = DominantMonomial::from_factors([(1, -5), (1, -3), (2, -2), (2, 0)]);
        let q = e.qchar_formula(&mono, None).unwrap();
        let expect: [(i64, &[(i32, i32)]); 6] = [
            (1, &[(2, -2), (4, -2)]),
            (-1, &[(3, -1), (3, -3)]),
            (1, &[(1, -1), (3, -1), (2, -4)]),
            (-1, &[(2, 0), (2, -2), (2, -4)]),
            (-1, &[(1, -1), (1, -3), (3, -1), (1, -5)]),
            (1, &[(2, 0), (1, -3), (2, -2), (1, -5)]),
        ];
        assert_eq!(q.len(), 6);
        for (c, f) in expect {
            assert_eq!(q.coefficient(f), c, "{f:?}");
        }
        let q3 = e.qchar_formula(&mono, Some(3)).unwrap();
        assert_eq!(q3.len(), 5);
        assert_eq!(q3.coefficient(&[]), -1);
        assert_eq!(q3.coefficient(&[(1, -1), (2, -4)]), 1);
        assert_eq!(q3.coefficient(&[(1, -1), (1, -3), (1, -5)]), -1);
        let q4 = e.qchar_formula(&mono, Some(4)).unwrap();
        assert_eq!(q4.coefficient(&[(2, -2)]), 1);
    }

    #[test]
    fn p_u_t_examples() {
        let t = Tableau::new(
            vec![vec![1, 1, 2, 2, 3, 3, 4], vec![2, 2, 3, 3, 5, 5, 5], vec![4, 4, 4, 4, 6, 6, 6], vec![5, 5, 6, 6, 7, 7, 8]],
            4,
            8,
        )
        .unwrap();
        let d = SmallGapsData::of(&t).unwrap();
        assert_eq!(d.i, vec![1, 1, 2, 2, 3, 3, 4]);
        assert_eq!(d.j, vec![3, 3, 4, 4, 5, 5, 7]);
        assert_eq!(p_u_t(&d.w, &t).unwrap().unwrap(), t);
        let u = Permutation::from_one_line(&[3, 1, 2, 4, 5, 7, 6]).unwrap();
        let expect = tab_cols(
            &[&[2, 4, 5, 6], &[1, 2, 4, 5], &[1, 2, 3, 5], &[2, 3, 5, 6], &[3, 4, 6, 7], &[4, 6, 7, 8], &[3, 4, 5, 6]],
            4,
            8,
        );
        assert_eq!(p_u_t(&u, &t).unwrap().unwrap(), expect);
        for u in Permutation::all(7) {
            let nonzero = p_u_t(&u, &t).unwrap().is_some();
            if nonzero {
                assert!(u.apply(1) != 7 && u.apply(7) >= 5, "{u}");
            }
            // j_1 = j_2 = 3 also rules out u(2) = 7
            assert_eq!(nonzero, u.apply(1) != 7 && u.apply(2) != 7 && u.apply(7) >= 5, "{u}");
        }
    }

    #[test]
    fn ch_examples() {
        let e = Engine::default();
        let t = tab_cols(&[&[1, 2, 4], &[3, 5, 6]], 3, 6);
        let c = e.ch(&t).unwrap();
        assert_eq!(c.value.to_text(), "P[1,2,4]*P[3,5,6] - P[1,2,3]*P[4,5,6]");
        assert!(c.in_ring);

        let tp = tab_cols(&[&[1, 3, 4], &[2, 3, 5], &[2, 4, 5], &[3, 4, 6]], 3, 6);
        let expect = poly(
            3,
            6,
            &[
                (-1, &[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5], &[4, 5, 6]]),
                (1, &[&[1, 2, 4], &[2, 3, 4], &[3, 4, 5], &[3, 5, 6]]),
                (-1, &[&[1, 3, 4], &[2, 3, 4], &[2, 4, 5], &[3, 5, 6]]),
                (-1, &[&[1, 2, 4], &[2, 3, 5], &[3, 4, 5], &[3, 4, 6]]),
                (1, &[&[1, 3, 4], &[2, 3, 5], &[2, 4, 5], &[3, 4, 6]]),
            ],
        );
        assert_eq!(e.ch_small_gaps(&tp).unwrap(), expect);

        let t = Tableau::new(vec![vec![1, 2], vec![3, 4], vec![5, 6]], 3, 6).unwrap();
        let c = e.ch(&t).unwrap();
        assert!(c.in_ring);
        assert_eq!(c.value.frozen(), &[0, 0, 0, 0]);
        let lead = c.value.leading_term().unwrap();
        assert_eq!(lead.0, &t);
        assert!(lead.1.is_one());
    }

    #[test]
    fn gr47_quotient_expression() {
        let e = Engine::default();
        let t = tab_cols(&[&[1, 2, 4, 6], &[2, 3, 5, 7]], 4, 7);
        let c = e.ch(&t).unwrap().value;
        let terms: [(i64, &[&[Entry]]); 6] = [
            (1, &[&[2, 3, 5, 6]]),
            (-1, &[&[2, 4, 5, 6], &[3, 5, 6, 7]]),
            (1, &[&[1, 2, 3, 5], &[2, 4, 5, 6], &[3, 4, 6, 7]]),
            (-1, &[&[1, 2, 4, 5], &[2, 3, 5, 6], &[3, 4, 6, 7]]),
            (-1, &[&[1, 2, 3, 5], &[2, 3, 4, 6], &[2, 4, 5, 6], &[3, 4, 5, 7]]),
            (1, &[&[1, 2, 4, 5], &[2, 3, 4, 6], &[2, 3, 5, 6], &[3, 4, 5, 7]]),
        ];
        let parts: Vec<PluckerPolynomial> = terms.iter().map(|(k, cs)| poly(4, 7, &[(*k, cs)])).collect();
        let refs: Vec<&PluckerPolynomial> = parts.iter().collect();
        assert!(quotient_equal_sums(&[&c], &refs).unwrap());
    }

    #[test]
    fn empty_and_single_column() {
        let e = Engine::default();
        assert_eq!(e.ch(&Tableau::empty(3, 6)).unwrap().value.to_text(), "1");
        let t = tab_cols(&[&[1, 3, 6]], 3, 6);
        assert_eq!(e.ch(&t).unwrap().value, PluckerPolynomial::from_tableau(&t));
    }

    #[test]
    fn k_cap() {
        let e = Engine::new(3);
        let tp = tab_cols(&[&[1, 3, 4], &[2, 3, 5], &[2, 4, 5], &[3, 4, 6]], 3, 6);
        assert_eq!(e.ch(&tp).unwrap_err(), Error::KTooLarge { k: 4, cap: 3 });
    }

    #[test]
    fn ms_matrix_gr35() {
        let ms = ms_matrix(3, 5);
        let row: Vec<Option<Vec<Entry>>> = ms[0].iter().map(|c| c.as_ref().map(|c| c.entries().to_vec())).collect();
        assert_eq!(row, vec![Some(vec![2, 3, 4]), Some(vec![1, 3, 4]), Some(vec![1, 2, 4]), Some(vec![1, 2, 3]), None]);
        assert_eq!(ms[2][2].as_ref().unwrap().entries(), &[1, 4, 5]);
        assert_eq!(ms[4][4].as_ref().unwrap().entries(), &[1, 2, 3]);
        assert!(ms[0][4].is_none() && ms[1][0].is_none());
    }

    #[test]
    fn immanants() {
        let e = Engine::default();
        let q = |v: i64| BigRational::from_integer(v.into());
        let a = GeneralizedSubmatrix::from_square(vec![vec![q(2), q(3)], vec![q(5), q(7)]]).unwrap();
        assert_eq!(e.kl_immanant(&Permutation::identity(2), &a).unwrap(), q(2 * 7 - 3 * 5));
        assert_eq!(e.kl_immanant(&Permutation::longest(2), &a).unwrap(), q(3 * 5));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let t = tab_cols(&[&[1, 2, 4], &[3, 5, 6]], 3, 6);
        for _ in 0..10 {
            let x = RationalMatrix::random(3, 6, 5, &mut rng);
            assert!(e.immanant_check(&t, &x).unwrap());
        }
        let t = tab_cols(&[&[1, 3, 4], &[2, 3, 5], &[2, 4, 5], &[3, 4, 6]], 3, 6);
        let x = RationalMatrix::random(3, 6, 5, &mut rng);
        assert!(e.immanant_check(&t, &x).unwrap());
    }

    #[test]
    fn t_system_gr36() {
        let e = Engine::default();
        let (n, m) = (3usize, 6usize);
        let ch_mono = |mono: &DominantMonomial| e.ch(&phi_tilde(mono, n, m).unwrap()).unwrap().value;
        // (i,s) = (1,-3), (1,-5)
        let a = ch_mono(&DominantMonomial::y(1, -3));
        let b = ch_mono(&DominantMonomial::y(1, -5));
        let kr = ch_mono(&DominantMonomial::from_factors([(1, -3), (1, -5)]));
        let nb = ch_mono(&DominantMonomial::y(2, -4));
        assert!(quotient_equal_sums(&[&a.mul(&b).unwrap()], &[&kr, &nb]).unwrap());
        assert_eq!(fundamental_column(2, -4, 3).unwrap().entries(), &[3, 5, 6]);
    }

    #[test]
    fn reality_small() {
        let e = Engine::default();
        let t = Tableau::new(vec![vec![1, 2], vec![3, 4], vec![5, 6]], 3, 6).unwrap();
        assert!(e.reality_test(&t).unwrap().real);
        let c = tab_cols(&[&[2, 4, 6]], 3, 6);
        assert!(e.reality_test(&c).unwrap().real);
    }

    #[test]
    fn primeness_small() {
        let e = Engine::default();
        let t = tab_cols(&[&[1, 2, 4], &[3, 5, 6]], 3, 6);
        assert!(e.primeness_test(&t).unwrap().prime);
        let t = tab_cols(&[&[1, 2, 4], &[1, 2, 4]], 3, 6);
        let r = e.primeness_test(&t).unwrap();
        assert!(!r.prime);
        let (a, b) = r.factors.unwrap();
        assert_eq!(a, tab_cols(&[&[1, 2, 4]], 3, 6));
        assert_eq!(b, a);
        let single = tab_cols(&[&[1, 3, 4]], 3, 6);
        assert!(e.primeness_test(&single).unwrap().prime);
    }

    #[test]
    fn qchar_json_round_trip() {
        let e = Engine::default();
        let q = e.qchar_formula(&DominantMonomial::from_factors([(2, -4), (1, -1)]), None).unwrap();
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"[{"coeff":1,"factors":[[1,-1],[2,-4]]},{"coeff":-1,"factors":[[3,-3]]}]"#);
        assert_eq!(serde_json::from_str::<QCharFormula>(&s).unwrap(), q);
    }
}
