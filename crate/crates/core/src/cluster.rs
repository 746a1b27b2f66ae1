//! Quivers, tableau-labelled seeds for `C[Gr(n,m)]`, mutation, g-vectors and c-vectors.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::Engine;
use crate::error::{Error, Result};
use crate::monomials::{kr_plucker, phi_tilde, psi, window_index, DominantMonomial};
use crate::plucker::{quotient_equal_sums, PluckerPolynomial};
use crate::tableaux::{frozen_lattice_solve, Column, Entry, Lifted, Tableau};

/// A quiver stored as its skew-symmetric exchange matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    ids: Vec<String>,
    frozen: Vec<bool>,
    b: Vec<Vec<i32>>,
}

impl Quiver {
    pub fn new(ids: Vec<String>, frozen: Vec<bool>) -> Self {
        let k = ids.len();
        Quiver { ids, frozen, b: vec![vec![0; k]; k] }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn is_frozen(&self, v: usize) -> bool {
        self.frozen[v]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        let key: String = id.chars().filter(|c| !c.is_whitespace()).collect();
        self.ids.iter().position(|x| *x == key).ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    /// Number of arrows `i → j` minus arrows `j → i`.
    pub fn b(&self, i: usize, j: usize) -> i32 {
        self.b[i][j]
    }

    pub fn add_arrow(&mut self, i: usize, j: usize) {
        if self.frozen[i] && self.frozen[j] {
            return;
        }
        self.b[i][j] += 1;
        self.b[j][i] -= 1;
    }

    /// Arrows `(i, j, multiplicity)` with `i → j`.
    pub fn arrows(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.b[i][j] > 0 {
                    out.push((i, j, self.b[i][j] as u32));
                }
            }
        }
        out
    }

    pub fn mutate(&self, k: usize) -> Result<Quiver> {
        if k >= self.len() {
            return Err(Error::UnknownVertex(k.to_string()));
        }
        if self.frozen[k] {
            return Err(Error::FrozenVertex(self.ids[k].clone()));
        }
        let n = self.len();
        let mut b = self.b.clone();
        for i in 0..n {
            for j in 0..n {
                if i == k || j == k {
                    b[i][j] = -self.b[i][j];
                } else if self.frozen[i] && self.frozen[j] {
                    b[i][j] = 0;
                } else {
                    let (bik, bkj) = (self.b[i][k], self.b[k][j]);
                    b[i][j] = self.b[i][j] + bik.signum() * (bik * bkj).max(0);
                }
            }
        }
        Ok(Quiver { ids: self.ids.clone(), frozen: self.frozen.clone(), b })
    }
}

/// A quiver with a tableau on every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    n: usize,
    m: usize,
    quiver: Quiver,
    labels: Vec<Tableau>,
}

/// The two sides of an exchange at a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exchange {
    pub vertex: String,
    pub old: Tableau,
    pub new: Tableau,
    /// `∪_{i→k} T_i` and `∪_{k→i} T_i`.
    pub incoming: Tableau,
    pub outgoing: Tableau,
    pub incoming_is_max: bool,
}

pub fn vertex_id(i: usize, t: usize) -> String {
    format!("({i},{t})")
}

/// The grid seed of `Gr(n,m)`, trivial frozens included.
pub fn initial_seed(n: usize, m: usize) -> Result<Seed> {
    if n < 2 || m <= n + 1 {
        return Err(Error::BadDimensions(format!("initial seed needs 2 <= n and n+1 < m, got ({n},{m})")));
    }
    let ell = m - n - 1;
    let mut ids = Vec::new();
    let mut frozen = Vec::new();
    let mut labels = Vec::new();
    let mut index = BTreeMap::new();
    let mut push = |i: usize, t: usize, fr: bool, c: Column| {
        index.insert((i, t), ids.len());
        ids.push(vertex_id(i, t));
        frozen.push(fr);
        labels.push(Tableau::from_column(&c, m).expect("in range"));
    };
    push(0, 0, true, Column::trivial(1, n));
    for i in 1..n {
        for t in 0..=ell {
            push(i, t, t == ell, kr_plucker(i, t, n));
        }
    }
    for t in 0..=ell {
        push(n, t, true, Column::trivial(t as Entry + 2, n));
    }
    let mut q = Quiver::new(ids, frozen);
    let v = |i: usize, t: usize| index[&(i, t)];
    for i in 1..n {
        for t in 0..=ell {
            if i + 1 < n && t < ell {
                q.add_arrow(v(i, t), v(i + 1, t + 1));
            }
            if t > 0 {
                q.add_arrow(v(i, t), v(i, t - 1));
            }
            if i > 1 {
                q.add_arrow(v(i, t), v(i - 1, t));
            }
        }
    }
    q.add_arrow(v(1, 0), v(0, 0));
    for t in 0..=ell {
        q.add_arrow(v(n, t), v(n - 1, t));
        if t < ell {
            q.add_arrow(v(n - 1, t), v(n, t + 1));
        }
    }
    Ok(Seed { n, m, quiver: q, labels })
}

impl Seed {
    pub fn new(n: usize, m: usize, quiver: Quiver, labels: Vec<Tableau>) -> Result<Self> {
        if labels.len() != quiver.len() {
            return Err(Error::BadDimensions(format!("{} labels for {} vertices", labels.len(), quiver.len())));
        }
        if let Some(t) = labels.iter().find(|t| t.n() != n || t.m() != m) {
            return Err(Error::DimensionMismatch(format!("Gr({},{})", t.n(), t.m()), format!("Gr({n},{m})")));
        }
        Ok(Seed { n, m, quiver, labels })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn labels(&self) -> &[Tableau] {
        &self.labels
    }

    pub fn label(&self, id: &str) -> Result<&Tableau> {
        Ok(&self.labels[self.quiver.index_of(id)?])
    }

    pub fn mutable_vertices(&self) -> Vec<usize> {
        (0..self.quiver.len()).filter(|&v| !self.quiver.is_frozen(v)).collect()
    }

    /// Mutable labels, sorted: the cluster up to vertex names.
    pub fn cluster_key(&self) -> Vec<Tableau> {
        let mut v: Vec<Tableau> = self.mutable_vertices().into_iter().map(|k| self.labels[k].clone()).collect();
        v.sort();
        v
    }

    fn side(&self, k: usize, incoming: bool) -> Tableau {
        let mut t = Tableau::empty(self.n, self.m);
        for j in 0..self.quiver.len() {
            let b = if incoming { self.quiver.b(j, k) } else { self.quiver.b(k, j) };
            for _ in 0..b.max(0) {
                t = t.union(&self.labels[j]).expect("same shape");
            }
        }
        t
    }

    /// The new label at `k`: `T_k⁻¹ max{∪_{i→k} T_i, ∪_{k→i} T_i}`.
    pub fn exchange(&self, k: usize) -> Result<Exchange> {
        if self.quiver.is_frozen(k) {
            return Err(Error::FrozenVertex(self.quiver.ids[k].clone()));
        }
        let incoming = self.side(k, true);
        let outgoing = self.side(k, false);
        let id = self.quiver.ids[k].clone();
        let incoming_is_max = match incoming.weight().root_cmp(&outgoing.weight()) {
            Some(Ordering::Greater) => true,
            Some(Ordering::Less) => false,
            _ => return Err(Error::AmbiguousMax(id)),
        };
        let top = if incoming_is_max { &incoming } else { &outgoing };
        let old = &self.labels[k];
        let quotient = psi(top).checked_div(&psi(old)).ok_or(Error::NotAFactor)?;
        let small = phi_tilde(&quotient, self.n, self.m)?;
        let target = &top.content() - &old.content();
        let new = match small.content_lift(&target)?.lifted {
            Lifted::Tableau(t) => t,
            Lifted::Fraction(_) => return Err(Error::NotInLattice),
        };
        Ok(Exchange { vertex: id, old: old.clone(), new, incoming, outgoing, incoming_is_max })
    }

    pub fn mutate(&self, k: usize) -> Result<Seed> {
        let ex = self.exchange(k)?;
        let mut labels = self.labels.clone();
        labels[k] = ex.new;
        Ok(Seed { n: self.n, m: self.m, quiver: self.quiver.mutate(k)?, labels })
    }

    pub fn mutate_at(&self, id: &str) -> Result<Seed> {
        self.mutate(self.quiver.index_of(id)?)
    }

    /// The three sides of the exchange relation at `k` as elements of `C[Gr(n,m)]`:
    /// `ch(T_k)ch(T′_k)`, `∏_{i→k} ch(T_i)` and `∏_{k→i} ch(T_i)`.
    pub fn exchange_relation(&self, engine: &Engine, k: usize) -> Result<[PluckerPolynomial; 3]> {
        let ex = self.exchange(k)?;
        let lhs = engine.ch(&ex.old)?.value.mul(&engine.ch(&ex.new)?.value)?;
        let product = |incoming: bool| -> Result<PluckerPolynomial> {
            let mut acc = PluckerPolynomial::one(self.n, self.m);
            for j in 0..self.quiver.len() {
                let b = if incoming { self.quiver.b(j, k) } else { self.quiver.b(k, j) };
                if b > 0 {
                    acc = acc.mul(&engine.ch(&self.labels[j])?.value.pow(b as u32)?)?;
                }
            }
            Ok(acc)
        };
        Ok([lhs, product(true)?, product(false)?])
    }

    /// Checks `ch(T_k)ch(T′_k) = ∏_{i→k} ch(T_i) + ∏_{k→i} ch(T_i)` in `C[Gr(n,m,~)]`.
    pub fn exchange_check(&self, engine: &Engine, k: usize) -> Result<bool> {
        let [lhs, a, b] = self.exchange_relation(engine, k)?;
        quotient_equal_sums(&[&lhs], &[&a, &b])
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, t) in self.labels.iter().enumerate() {
            let mark = if self.quiver.is_frozen(v) { " *" } else { "" };
            writeln!(f, "{} {}{}", self.quiver.ids[v], t.to_text(), mark)?;
        }
        for (i, j, k) in self.quiver.arrows() {
            for _ in 0..k {
                writeln!(f, "{} -> {}", self.quiver.ids[i], self.quiver.ids[j])?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct JsonVertex {
    id: String,
    frozen: bool,
    tableau: Tableau,
}

#[derive(Serialize, Deserialize)]
struct JsonSeed {
    n: usize,
    m: usize,
    vertices: Vec<JsonVertex>,
    arrows: Vec<(String, String)>,
}

impl Serialize for Seed {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let q = &self.quiver;
        let vertices = (0..q.len())
            .map(|v| JsonVertex { id: q.ids[v].clone(), frozen: q.frozen[v], tableau: self.labels[v].clone() })
            .collect();
        let mut arrows = Vec::new();
        for (i, j, k) in q.arrows() {
            for _ in 0..k {
                arrows.push((q.ids[i].clone(), q.ids[j].clone()));
            }
        }
        JsonSeed { n: self.n, m: self.m, vertices, arrows }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Seed {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = JsonSeed::deserialize(de)?;
        let ids: Vec<String> = j.vertices.iter().map(|v| v.id.chars().filter(|c| !c.is_whitespace()).collect()).collect();
        if ids.iter().collect::<BTreeSet<_>>().len() != ids.len() {
            return Err(D::Error::custom("duplicate vertex id"));
        }
        let mut q = Quiver::new(ids, j.vertices.iter().map(|v| v.frozen).collect());
        for (a, b) in &j.arrows {
            let (x, y) = (q.index_of(a).map_err(D::Error::custom)?, q.index_of(b).map_err(D::Error::custom)?);
            if x == y {
                return Err(D::Error::custom("loop"));
            }
            q.add_arrow(x, y);
        }
        Seed::new(j.n, j.m, q, j.vertices.into_iter().map(|v| v.tableau).collect()).map_err(D::Error::custom)
    }
}

/// Result of exhaustive mutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    /// Distinct mutable labels met, sorted.
    pub variables: Vec<Tableau>,
    pub seeds: usize,
    /// False if the depth limit stopped the search.
    pub complete: bool,
}

/// Breadth-first mutation from `seed`, deduplicating clusters.
pub fn closure(seed: &Seed, depth: Option<usize>) -> Result<Closure> {
    let mut seen: BTreeSet<Vec<Tableau>> = BTreeSet::new();
    let mut variables: BTreeSet<Tableau> = BTreeSet::new();
    seen.insert(seed.cluster_key());
    variables.extend(seed.cluster_key());
    let mut frontier = vec![seed.clone()];
    let mut level = 0;
    let mut complete = true;
    while !frontier.is_empty() {
        if depth.is_some_and(|d| level >= d) {
            complete = false;
            break;
        }
        let next: Vec<Vec<Seed>> = frontier
            .par_iter()
            .map(|s| s.mutable_vertices().into_iter().map(|k| s.mutate(k)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        frontier = Vec::new();
        for s in next.into_iter().flatten() {
            let key = s.cluster_key();
            if seen.insert(key.clone()) {
                variables.extend(key);
                frontier.push(s);
            }
        }
        level += 1;
    }
    Ok(Closure { variables: variables.into_iter().collect(), seeds: seen.len(), complete })
}

/// The g-vector grid over `(i,t) ∈ [1,n−1] × [0,ℓ]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GVector {
    pub n: usize,
    pub l: usize,
    /// `grid[i−1][t]`.
    pub grid: Vec<Vec<i64>>,
}

impl GVector {
    pub fn get(&self, i: usize, t: usize) -> i64 {
        self.grid[i - 1][t]
    }

    pub fn is_zero(&self) -> bool {
        self.grid.iter().flatten().all(|&x| x == 0)
    }

    pub fn to_text(&self) -> String {
        self.grid
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                format!("{}: {}", i + 1, r.join(" "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// `g_{i,t} = a_{i,t} − a_{i,t+1}` where `a_{i,t}` is the exponent of `Y_{i,i−2t−2}`.
pub fn g_vector(mono: &DominantMonomial, n: usize, l: usize) -> Result<GVector> {
    let m = n + l + 1;
    let mut a = vec![vec![0i64; l + 2]; n - 1];
    for (i, s, k) in mono.factors() {
        let t = window_index(i, s, n, m)?;
        a[i as usize - 1][t] += k as i64;
    }
    let grid = a.iter().map(|row| (0..=l).map(|t| row[t] - row[t + 1]).collect()).collect();
    Ok(GVector { n, l, grid })
}

pub fn g_vector_of(t: &Tableau) -> Result<GVector> {
    g_vector(&psi(t), t.n(), t.m() - t.n() - 1)
}

/// Exponents of `Ψ(T)` on the window, `(n−1)(ℓ+1)` entries.
fn psi_coordinates(t: &Tableau) -> Result<Vec<i64>> {
    let (n, m) = (t.n(), t.m());
    let l = m - n - 1;
    let mut v = vec![0i64; (n - 1) * (l + 1)];
    for (i, s, k) in psi(t).factors() {
        let idx = window_index(i, s, n, m)?;
        v[(i as usize - 1) * (l + 1) + idx] += k as i64;
    }
    Ok(v)
}

/// Solves `Σ_j x_j v_j = target` over the integers; `vs` must be a basis.
fn integer_solve(vs: &[Vec<i64>], target: &[i64]) -> Result<Vec<i64>> {
    let dim = target.len();
    if vs.len() != dim {
        return Err(Error::NotExpressible);
    }
    let q = |x: i64| BigRational::from_integer(x.into());
    // augmented matrix with columns v_j
    let mut a: Vec<Vec<BigRational>> = (0..dim)
        .map(|r| vs.iter().map(|v| q(v[r])).chain(std::iter::once(q(target[r]))).collect())
        .collect();
    for c in 0..dim {
        let piv = (c..dim).find(|&r| !a[r][c].is_zero()).ok_or(Error::NotExpressible)?;
        a.swap(c, piv);
        let p = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..dim {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for cc in c..=dim {
                    let sub = &f * &a[c][cc];
                    a[r][cc] -= sub;
                }
            }
        }
    }
    a.iter()
        .map(|row| {
            let x = &row[dim];
            if x.is_integer() {
                x.to_integer().to_i64().ok_or(Error::NotExpressible)
            } else {
                Err(Error::NotExpressible)
            }
        })
        .collect()
}

/// Writes `T` as a `∪`-Laurent monomial in the labels of `seed`, content-exact.
///
/// Labels that are trivial tableaux absorb the content correction; the rest are
/// matched through `Ψ`.
pub fn g_factorization(t: &Tableau, seed: &Seed) -> Result<Vec<(String, i64)>> {
    let (n, m) = (seed.n, seed.m);
    if t.n() != n || t.m() != m {
        return Err(Error::DimensionMismatch(format!("Gr({},{})", t.n(), t.m()), format!("Gr({n},{m})")));
    }
    let basis: Vec<usize> = (0..seed.labels.len()).filter(|&v| !seed.labels[v].is_trivial()).collect();
    let vs: Vec<Vec<i64>> = basis.iter().map(|&v| psi_coordinates(&seed.labels[v])).collect::<Result<_>>()?;
    let x = integer_solve(&vs, &psi_coordinates(t)?)?;
    let mut exps = vec![0i64; seed.labels.len()];
    let mut content = t.content();
    for (&v, &e) in basis.iter().zip(&x) {
        exps[v] = e;
        let c = seed.labels[v].content();
        for (a, b) in content.0.iter_mut().zip(&c.0) {
            *a -= e * b;
        }
    }
    let frozen = frozen_lattice_solve(&content.0, n).ok_or(Error::NotInLattice)?;
    for (idx, &e) in frozen.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let col = Tableau::from_column(&Column::trivial(idx as Entry + 1, n), m)?;
        let v = (0..seed.labels.len()).find(|&v| seed.labels[v] == col).ok_or(Error::NotExpressible)?;
        exps[v] += e;
    }
    Ok(seed.quiver.ids.iter().cloned().zip(exps).filter(|(_, e)| *e != 0).collect())
}

/// Multiplies out a `∪`-Laurent monomial as a reduced fraction.
pub fn laurent_product(seed: &Seed, exps: &[(String, i64)]) -> Result<(Tableau, Tableau)> {
    let mut num = Tableau::empty(seed.n, seed.m);
    let mut den = Tableau::empty(seed.n, seed.m);
    for (id, e) in exps {
        let t = seed.label(id)?;
        for _ in 0..e.unsigned_abs() {
            if *e > 0 {
                num = num.union(t)?;
            } else {
                den = den.union(t)?;
            }
        }
    }
    let f = crate::tableaux::TableauFraction::new(num, den);
    Ok((f.num, f.den))
}

/// Columns are the c-vectors of `distant` with respect to `initial`: entry `(i,j)` is the
/// exponent of `distant[j]` in `initial[i]`.
pub fn c_vectors(distant: &[Tableau], initial: &[Tableau]) -> Result<Vec<Vec<i64>>> {
    let vs: Vec<Vec<i64>> = distant.iter().map(psi_coordinates).collect::<Result<_>>()?;
    initial.iter().map(|t| integer_solve(&vs, &psi_coordinates(t)?)).collect()
}

/// Columns are the g-vectors of `distant`, flattened row by row over the grid.
pub fn g_matrix(distant: &[Tableau]) -> Result<Vec<Vec<i64>>> {
    let cols: Vec<Vec<i64>> = distant
        .iter()
        .map(|t| g_vector_of(t).map(|g| g.grid.into_iter().flatten().collect()))
        .collect::<Result<_>>()?;
    let dim = cols.len();
    Ok((0..cols.first().map_or(0, |c| c.len())).map(|r| (0..dim).map(|c| cols[c][r]).collect()).collect())
}

/// Non-trivial labels of a seed (mutable and non-trivial frozen), in vertex order.
pub fn cluster_tableaux(seed: &Seed) -> Vec<Tableau> {
    seed.labels.iter().filter(|t| !t.is_trivial()).cloned().collect()
}

/// Integer matrix inverse; `None` if not unimodular.
pub fn inverse_matrix(a: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let dim = a.len();
    let cols: Vec<Vec<i64>> = (0..dim).map(|c| (0..dim).map(|r| a[r][c]).collect()).collect();
    let mut inv = vec![vec![0i64; dim]; dim];
    for (j, row) in inv.iter_mut().enumerate().take(dim) {
        let e: Vec<i64> = (0..dim).map(|i| i64::from(i == j)).collect();
        let x = integer_solve(&cols, &e).ok()?;
        *row = x;
    }
    // inv currently holds columns of A⁻¹ as rows
    Some((0..dim).map(|r| (0..dim).map(|c| inv[c][r]).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(e: &[Entry], m: usize) -> Tableau {
        Tableau::from_column(&Column::new(e.to_vec()).unwrap(), m).unwrap()
    }

    fn rows(r: Vec<Vec<i64>>, n: usize, m: usize) -> Tableau {
        Tableau::new(r, n, m).unwrap()
    }

    #[test]
    fn initial_labels() {
        let s = initial_seed(5, 10).unwrap();
        assert_eq!(s.label("(1,0)").unwrap(), &col(&[1, 2, 3, 4, 6], 10));
        assert_eq!(s.label("(2,1)").unwrap(), &col(&[1, 2, 3, 6, 7], 10));
        assert_eq!(s.label("(4,3)").unwrap(), &col(&[1, 6, 7, 8, 9], 10));
        assert_eq!(s.label("(1,4)").unwrap(), &col(&[1, 2, 3, 4, 10], 10));
        assert_eq!(s.label("(5,0)").unwrap(), &col(&[2, 3, 4, 5, 6], 10));
        assert_eq!(s.label("(0,0)").unwrap(), &col(&[1, 2, 3, 4, 5], 10));
        assert_eq!(s.mutable_vertices().len(), 16);
        let s = initial_seed(3, 6).unwrap();
        assert_eq!(s.label("(1,0)").unwrap(), &col(&[1, 2, 4], 6));
        let s = initial_seed(2, 5).unwrap();
        assert_eq!(s.mutable_vertices().len(), 2);
        assert!(initial_seed(3, 4).is_err());
    }

    #[test]
    fn figure_arrows() {
        let s = initial_seed(5, 10).unwrap();
        let q = s.quiver();
        let ix = |id: &str| q.index_of(id).unwrap();
        assert_eq!(q.b(ix("(1,0)"), ix("(0,0)")), 1);
        assert_eq!(q.b(ix("(1,1)"), ix("(1,0)")), 1);
        assert_eq!(q.b(ix("(2,0)"), ix("(1,0)")), 1);
        assert_eq!(q.b(ix("(1,0)"), ix("(2,1)")), 1);
        assert_eq!(q.b(ix("(5,0)"), ix("(4,0)")), 1);
        assert_eq!(q.b(ix("(4,0)"), ix("(5,1)")), 1);
        assert_eq!(q.b(ix("(4,3)"), ix("(5,4)")), 1);
        // frozen–frozen pairs carry no arrows
        assert_eq!(q.b(ix("(2,4)"), ix("(1,4)")), 0);
    }

    #[test]
    fn quiver_mutation() {
        let mut q = Quiver::new(vec!["a".into(), "k".into(), "b".into()], vec![false; 3]);
        q.add_arrow(0, 1);
        q.add_arrow(1, 2);
        let r = q.mutate(1).unwrap();
        assert_eq!(r.b(0, 2), 1);
        assert_eq!(r.b(1, 0), 1);
        assert_eq!(r.mutate(1).unwrap(), q);
        // existing b → a cancels
        q.add_arrow(2, 0);
        let r = q.mutate(1).unwrap();
        assert_eq!(r.b(0, 2), 0);
        let mut f = Quiver::new(vec!["x".into(), "y".into()], vec![false, true]);
        f.add_arrow(0, 1);
        assert_eq!(f.mutate(1).unwrap_err(), Error::FrozenVertex("y".into()));
    }

    #[test]
    fn first_mutation_in_gr36() {
        let s = initial_seed(3, 6).unwrap();
        let k = s.quiver().index_of("(1,0)").unwrap();
        let ex = s.exchange(k).unwrap();
        assert!(ex.incoming_is_max);
        assert_eq!(ex.new, col(&[1, 3, 5], 6));
        let t = s.mutate(k).unwrap();
        assert_eq!(t.mutate(k).unwrap(), s);
        let e = Engine::default();
        let [lhs, a, b] = s.exchange_relation(&e, k).unwrap();
        assert!(lhs.equals(&a.add(&b).unwrap()));
    }

    #[test]
    fn initial_seed_all_green() {
        let s = initial_seed(5, 10).unwrap();
        for k in s.mutable_vertices() {
            assert!(s.exchange(k).unwrap().incoming_is_max, "{}", s.quiver().ids()[k]);
        }
    }

    #[test]
    fn gr36_closure() {
        let c = closure(&initial_seed(3, 6).unwrap(), None).unwrap();
        assert!(c.complete);
        assert_eq!(c.variables.len(), 16);
        let big: Vec<&Tableau> = c.variables.iter().filter(|t| t.num_columns() > 1).collect();
        assert_eq!(big.len(), 2);
        assert!(big.contains(&&rows(vec![vec![1, 2], vec![3, 4], vec![5, 6]], 3, 6)));
        assert!(big.contains(&&rows(vec![vec![1, 3], vec![2, 5], vec![4, 6]], 3, 6)));
        assert_eq!(c.seeds, 50);
    }

    #[test]
    fn g_vectors() {
        let mono = DominantMonomial::from_factors([(1, -3), (1, -5), (2, 0), (2, -2)]);
        let g = g_vector(&mono, 3, 2).unwrap();
        assert_eq!(g.grid, vec![vec![-1, 0, 1], vec![0, 1, 0]]);
        assert!(g_vector(&DominantMonomial::unit(), 3, 2).unwrap().is_zero());
        let kr = crate::monomials::kr_monomial(2, 2, -2);
        let g = g_vector(&kr, 3, 2).unwrap();
        assert_eq!(g.grid, vec![vec![0, 0, 0], vec![0, 1, 0]]);
    }

    #[test]
    fn factorization_display() {
        let s = initial_seed(3, 6).unwrap();
        let t = rows(vec![vec![1, 2], vec![3, 4], vec![5, 6]], 3, 6);
        let f = g_factorization(&t, &s).unwrap();
        let f: BTreeMap<String, i64> = f.into_iter().collect();
        let expect: BTreeMap<String, i64> =
            [("(1,2)", 1), ("(2,1)", 1), ("(3,0)", 1), ("(1,0)", -1)].into_iter().map(|(a, b)| (a.to_string(), b)).collect();
        assert_eq!(f, expect);
        assert_eq!(s.label("(1,2)").unwrap(), &col(&[1, 2, 6], 6));
        assert_eq!(s.label("(2,1)").unwrap(), &col(&[1, 4, 5], 6));
        assert_eq!(s.label("(3,0)").unwrap(), &col(&[2, 3, 4], 6));
        let exps: Vec<(String, i64)> = f.into_iter().collect();
        let (num, den) = laurent_product(&s, &exps).unwrap();
        assert_eq!(num, t.union(&den).unwrap());
    }

    #[test]
    fn c_vectors_one_step() {
        let s = initial_seed(3, 6).unwrap();
        let init = cluster_tableaux(&s);
        let id = c_vectors(&init, &init).unwrap();
        for (i, row) in id.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, i64::from(i == j));
            }
        }
        for k in s.mutable_vertices() {
            let d = cluster_tableaux(&s.mutate(k).unwrap());
            let c = c_vectors(&d, &init).unwrap();
            let g = g_matrix(&d).unwrap();
            let gi = inverse_matrix(&g).unwrap();
            for i in 0..c.len() {
                for j in 0..c.len() {
                    assert_eq!(c[i][j], gi[j][i]);
                }
            }
        }
    }

    fn star(centre: Tableau, incoming: Vec<Tableau>, outgoing: Vec<Tableau>) -> Seed {
        let (n, m) = (centre.n(), centre.m());
        let k = 1 + incoming.len() + outgoing.len();
        let ids = (0..k).map(|v| format!("v{v}")).collect();
        let mut q = Quiver::new(ids, (0..k).map(|v| v != 0).collect());
        for v in 1..=incoming.len() {
            q.add_arrow(v, 0);
        }
        for v in incoming.len() + 1..k {
            q.add_arrow(0, v);
        }
        let labels = std::iter::once(centre).chain(incoming).chain(outgoing).collect();
        Seed::new(n, m, q, labels).unwrap()
    }

    #[test]
    fn gr38_exchange_relations() {
        let e = Engine::default();
        let c = |x: &[Entry]| col(x, 8);
        let s = star(c(&[1, 3, 4]), vec![c(&[1, 3, 5]), c(&[2, 3, 4])], vec![c(&[1, 2, 3]), c(&[3, 4, 5])]);
        let ex = s.exchange(0).unwrap();
        assert!(ex.incoming_is_max);
        assert_eq!(ex.new, c(&[2, 3, 5]));
        assert!(s.exchange_check(&e, 0).unwrap());

        let s = star(
            c(&[2, 3, 8]),
            vec![c(&[1, 2, 8]), rows(vec![vec![3, 4], vec![5, 6], vec![7, 8]], 3, 8), c(&[2, 3, 4])],
            vec![c(&[3, 4, 8]), rows(vec![vec![2, 4], vec![5, 6], vec![7, 8]], 3, 8), c(&[1, 2, 3])],
        );
        let ex = s.exchange(0).unwrap();
        assert!(ex.incoming_is_max);
        assert_eq!(ex.new, rows(vec![vec![1, 3, 4], vec![2, 5, 6], vec![4, 7, 8]], 3, 8));
        assert!(s.exchange_check(&e, 0).unwrap());
        let [lhs, a, b] = s.exchange_relation(&e, 0).unwrap();
        assert!(lhs.equals(&a.add(&b).unwrap()));
    }

    #[test]
    fn seed_json_round_trip() {
        let s = initial_seed(3, 6).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert!(j.contains(r#"{"id":"(1,0)","frozen":false,"tableau":{"n":3,"m":6,"rows":[[1],[2],[4]]}}"#));
        let back: Seed = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
    }
}
