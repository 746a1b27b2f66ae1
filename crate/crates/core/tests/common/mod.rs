//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use grtab::plucker::{PluckerPolynomial, RationalMatrix};
use grtab::tableaux::{Column, Entry, Tableau};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn col(e: &[Entry]) -> Column {
    Column::new(e.to_vec()).unwrap()
}

pub fn col_tab(e: &[Entry], m: usize) -> Tableau {
    Tableau::from_column(&col(e), m).unwrap()
}

pub fn rows(r: &[&[i64]], m: usize) -> Tableau {
    Tableau::new(r.iter().map(|x| x.to_vec()).collect(), r.len(), m).unwrap()
}

pub fn cols(c: &[&[Entry]], n: usize, m: usize) -> Tableau {
    let v: Vec<Column> = c.iter().map(|x| col(x)).collect();
    Tableau::from_columns(&v, n, m).unwrap()
}

/// `Σ coeff · ∏ P_c`, straightened.
pub fn poly(n: usize, m: usize, terms: &[(i64, &[&[Entry]])]) -> PluckerPolynomial {
    let mut acc = PluckerPolynomial::zero(n, m);
    for (c, cs) in terms {
        let mut p = PluckerPolynomial::one(n, m);
        for x in cs.iter() {
            p = p.mul(&PluckerPolynomial::from_column(&col(x), m).unwrap()).unwrap();
        }
        acc = acc.add(&p.scale(&BigInt::from(*c))).unwrap();
    }
    acc
}

pub fn random_column<R: Rng>(rng: &mut R, n: usize, m: usize) -> Column {
    let mut all: Vec<Entry> = (1..=m as Entry).collect();
    for i in 0..n {
        let j = rng.gen_range(i..m);
        all.swap(i, j);
    }
    let mut e = all[..n].to_vec();
    e.sort_unstable();
    Column::new(e).unwrap()
}

pub fn random_tableau<R: Rng>(rng: &mut R, n: usize, m: usize, max_cols: usize) -> Tableau {
    let k = rng.gen_range(0..=max_cols);
    let cs: Vec<Column> = (0..k).map(|_| random_column(rng, n, m)).collect();
    Tableau::from_columns(&cs, n, m).unwrap()
}

/// A random column `[lo, lo+n] ∖ {r}` with `lo < r < lo+n`.
pub fn random_fundamental<R: Rng>(rng: &mut R, n: usize, m: usize) -> Column {
    let lo = rng.gen_range(1..=(m - n) as Entry);
    let r = rng.gen_range(lo + 1..lo + n as Entry);
    Column::interval_minus(lo, n, r)
}

pub fn random_small_gaps<R: Rng>(rng: &mut R, n: usize, m: usize, k: usize) -> Tableau {
    let cs: Vec<Column> = (0..k).map(|_| random_fundamental(rng, n, m)).collect();
    Tableau::from_columns(&cs, n, m).unwrap()
}

/// Every tableau in SSYT(n,[m]) with at most `max_cols` columns.
pub fn all_tableaux(n: usize, m: usize, max_cols: usize) -> Vec<Tableau> {
    let mut columns = Vec::new();
    let mut cur: Vec<Entry> = (1..=n as Entry).collect();
    loop {
        columns.push(Column::new(cur.clone()).unwrap());
        let Some(i) = (0..n).rev().find(|&i| cur[i] < (m - n + i + 1) as Entry) else { break };
        cur[i] += 1;
        for j in i + 1..n {
            cur[j] = cur[j - 1] + 1;
        }
    }
    let mut out = std::collections::BTreeSet::new();
    out.insert(Tableau::empty(n, m));
    let mut layer = vec![Tableau::empty(n, m)];
    for _ in 0..max_cols {
        let mut next = Vec::new();
        for t in &layer {
            for c in &columns {
                let u = t.union(&Tableau::from_column(c, m).unwrap()).unwrap();
                if out.insert(u.clone()) {
                    next.push(u);
                }
            }
        }
        layer = next;
    }
    out.into_iter().collect()
}

/// Every maximal minor of `x`, keyed by column set.
pub fn all_minors(x: &RationalMatrix) -> HashMap<Vec<Entry>, BigRational> {
    all_tableaux(x.n(), x.m(), 1)
        .into_iter()
        .filter(|t| !t.is_empty())
        .map(|t| {
            let c = t.column(0).entries().to_vec();
            let v = x.minor(&c);
            (c, v)
        })
        .collect()
}

/// Evaluates a polynomial with no frozen prefactor from a table of minors.
pub fn evaluate_with(p: &PluckerPolynomial, minors: &HashMap<Vec<Entry>, BigRational>) -> BigRational {
    assert!(p.frozen().iter().all(|&e| e == 0));
    let mut total = BigRational::zero();
    for (t, c) in p.terms() {
        let mut v = BigRational::from_integer(c.clone());
        for column in t.columns() {
            v *= &minors[column.entries()];
        }
        total += v;
    }
    total
}

/// Leibniz determinant, for cross-checking minors.
pub fn leibniz(a: &[Vec<BigRational>]) -> BigRational {
    let k = a.len();
    let mut total = BigRational::zero();
    for p in permutations(k) {
        let mut v = BigRational::one();
        for (r, &c) in p.iter().enumerate() {
            v *= &a[r][c - 1];
        }
        if inversions(&p) % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    total
}

// ---- permutations as 1-based one-line vectors ----

pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k);
            out.push(q);
        }
    }
    out.sort();
    out
}

pub fn inversions(p: &[usize]) -> usize {
    (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count()
}

/// Tableau criterion for the Bruhat order.
pub fn bruhat_leq(x: &[usize], w: &[usize]) -> bool {
    (1..=x.len()).all(|i| {
        let mut a = x[..i].to_vec();
        let mut b = w[..i].to_vec();
        a.sort_unstable();
        b.sort_unstable();
        a.iter().zip(&b).all(|(p, q)| p <= q)
    })
}

fn times_s(x: &[usize], i: usize) -> Vec<usize> {
    let mut y = x.to_vec();
    y.swap(i, i + 1);
    y
}

type Poly = Vec<i64>;

fn padd(a: &mut Poly, b: &[i64], shift: usize, scale: i64) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (d, &c) in b.iter().enumerate() {
        a[d + shift] += scale * c;
    }
}

fn pmul(a: &[i64], b: &[i64]) -> Poly {
    let mut out = vec![0; (a.len() + b.len()).saturating_sub(1)];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

/// Kazhdan–Lusztig polynomials from R-polynomials and the bar-involution identity.
pub struct BruteKl {
    k: usize,
    r: HashMap<(Vec<usize>, Vec<usize>), Poly>,
    p: HashMap<(Vec<usize>, Vec<usize>), Poly>,
    all: Vec<Vec<usize>>,
}

impl BruteKl {
    pub fn new(k: usize) -> Self {
        BruteKl { k, r: HashMap::new(), p: HashMap::new(), all: permutations(k) }
    }

    pub fn r(&mut self, x: &[usize], w: &[usize]) -> Poly {
        let key = (x.to_vec(), w.to_vec());
        if let Some(v) = self.r.get(&key) {
            return v.clone();
        }
        let v = if !bruhat_leq(x, w) {
            vec![]
        } else if x == w {
            vec![1]
        } else {
            let s = (0..self.k - 1).find(|&i| w[i] > w[i + 1]).unwrap();
            let ws = times_s(w, s);
            let xs = times_s(x, s);
            if x[s] > x[s + 1] {
                self.r(&xs, &ws)
            } else {
                let a = self.r(x, &ws);
                let b = self.r(&xs, &ws);
                let mut out = pmul(&[-1, 1], &a);
                padd(&mut out, &b, 1, 1);
                trim(out)
            }
        };
        self.r.insert(key, v.clone());
        v
    }

    pub fn p(&mut self, x: &[usize], w: &[usize]) -> Poly {
        let key = (x.to_vec(), w.to_vec());
        if let Some(v) = self.p.get(&key) {
            return v.clone();
        }
        let v = if !bruhat_leq(x, w) {
            vec![]
        } else if x == w {
            vec![1]
        } else {
            let d = inversions(w) - inversions(x);
            let mut rhs: Poly = Vec::new();
            let between: Vec<Vec<usize>> = self
                .all
                .iter()
                .filter(|y| y.as_slice() != x && bruhat_leq(x, y) && bruhat_leq(y, w))
                .cloned()
                .collect();
            for y in between {
                let r = self.r(x, &y);
                let p = self.p(&y, w);
                padd(&mut rhs, &pmul(&r, &p), 0, 1);
            }
            let top = (d - 1) / 2;
            trim((0..=top).map(|i| -rhs.get(i).copied().unwrap_or(0)).collect())
        };
        self.p.insert(key, v.clone());
        v
    }
}

pub fn to_bigint_map(p: &PluckerPolynomial) -> BTreeMap<String, BigInt> {
    p.terms().iter().map(|(t, c)| (t.to_text(), c.clone())).collect()
}
