//! Points and subspaces of PG(n-1, q) with `N = n` homogeneous coordinates.
//!
//! Only `N = 3` (the plane PG(2,q)) and `N = 6` (the Veronese space PG(5,q))
//! are used by the engine, but nothing below depends on that. Subspaces are
//! always kept in reduced row-echelon form, which makes the stored rows a
//! canonical key for the row space.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, usage, Result};
use crate::gf::{Field, Gf};
use crate::par;

/// A normalized projective point: the first nonzero coordinate is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point<const N: usize>([Gf; N]);

impl<const N: usize> Point<N> {
    pub fn normalize(f: &Field, coords: [Gf; N]) -> Result<Self> {
        let lead = coords
            .iter()
            .copied()
            .find(|c| !c.is_zero())
            .ok_or_else(|| domain!("the zero vector is not a projective point"))?;
        Ok(Point(scale(f, &coords, f.inv_nonzero(lead))))
    }

    /// Wraps coordinates already known to be normalized.
    pub(crate) fn from_normalized(coords: [Gf; N]) -> Self {
        debug_assert!(coords.iter().find(|c| !c.is_zero()) == Some(&Gf::ONE));
        Point(coords)
    }

    pub fn coords(&self) -> &[Gf; N] {
        &self.0
    }
}

impl<const N: usize> fmt::Display for Point<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[inline]
pub(crate) fn scale<const N: usize>(f: &Field, v: &[Gf; N], s: Gf) -> [Gf; N] {
    let mut out = *v;
    for c in out.iter_mut() {
        *c = f.mul(*c, s);
    }
    out
}

/// `v += s * w`
#[inline]
pub(crate) fn axpy<const N: usize>(f: &Field, v: &mut [Gf; N], s: Gf, w: &[Gf; N]) {
    if s.is_zero() {
        return;
    }
    for (a, b) in v.iter_mut().zip(w) {
        *a += f.mul(s, *b);
    }
}

#[inline]
pub(crate) fn dot<const N: usize>(f: &Field, a: &[Gf; N], b: &[Gf; N]) -> Gf {
    a.iter().zip(b).fold(Gf::ZERO, |acc, (x, y)| acc + f.mul(*x, *y))
}

/// A subspace of PG(N-1, q) stored as the RREF of a basis. Rows beyond
/// `rank` are zero, so derived equality and hashing are canonical.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace<const N: usize> {
    rank: u8,
    rows: [[Gf; N]; N],
}

impl<const N: usize> Default for Subspace<N> {
    fn default() -> Self {
        Subspace::empty()
    }
}

impl<const N: usize> Subspace<N> {
    /// The zero vector space (no projective points).
    pub fn empty() -> Self {
        Subspace { rank: 0, rows: [[Gf::ZERO; N]; N] }
    }

    /// The whole space PG(N-1, q).
    pub fn full() -> Self {
        let mut rows = [[Gf::ZERO; N]; N];
        for (i, r) in rows.iter_mut().enumerate() {
            r[i] = Gf::ONE;
        }
        Subspace { rank: N as u8, rows }
    }

    /// Row space of arbitrary (possibly dependent) vectors.
    pub fn from_rows<'a, I>(f: &Field, rows: I) -> Self
    where
        I: IntoIterator<Item = &'a [Gf; N]>,
    {
        let mut s = Subspace::empty();
        for r in rows {
            s.insert(f, *r);
        }
        s
    }

    /// Adds a vector to the row space, keeping RREF. Returns whether the rank grew.
    pub fn insert(&mut self, f: &Field, mut v: [Gf; N]) -> bool {
        let r = self.rank as usize;
        for row in &self.rows[..r] {
            let p = pivot(row);
            let c = v[p];
            axpy(f, &mut v, c, row);
        }
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        v = scale(f, &v, f.inv_nonzero(v[p]));
        for row in self.rows[..r].iter_mut() {
            let c = row[p];
            axpy(f, row, c, &v);
        }
        let at = self.rows[..r].iter().position(|row| pivot(row) > p).unwrap_or(r);
        for i in (at..r).rev() {
            self.rows[i + 1] = self.rows[i];
        }
        self.rows[at] = v;
        self.rank += 1;
        true
    }

    /// Whether the stored basis is in reduced row echelon form.
    pub fn is_rref(&self) -> bool {
        let rows = self.rows();
        let pivots: Vec<usize> = rows.iter().map(pivot).collect();
        pivots.windows(2).all(|w| w[0] < w[1])
            && rows.iter().zip(&pivots).all(|(r, &p)| p < N && r[p] == Gf::ONE)
            && pivots.iter().enumerate().all(|(i, &p)| rows.iter().enumerate().all(|(j, r)| j == i || r[p].is_zero()))
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    /// Projective dimension (rank - 1); -1 for the zero space.
    pub fn dim(&self) -> i32 {
        self.rank as i32 - 1
    }

    #[inline]
    pub fn rows(&self) -> &[[Gf; N]] {
        &self.rows[..self.rank as usize]
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows().iter().map(pivot).collect()
    }

    /// Reduces `v` modulo the row space.
    #[inline]
    pub fn reduce(&self, f: &Field, v: &[Gf; N]) -> [Gf; N] {
        let mut v = *v;
        for row in self.rows() {
            let c = v[pivot(row)];
            axpy(f, &mut v, c, row);
        }
        v
    }

    #[inline]
    pub fn contains(&self, f: &Field, v: &[Gf; N]) -> bool {
        self.reduce(f, v).iter().all(|c| c.is_zero())
    }

    pub fn contains_subspace(&self, f: &Field, other: &Subspace<N>) -> bool {
        other.rows().iter().all(|r| self.contains(f, r))
    }

    /// Vectors `a` with `a . v = 0` for every `v` in the row space, in RREF.
    pub fn annihilator(&self, f: &Field) -> Subspace<N> {
        let pivots = self.pivots();
        let mut out = Subspace::empty();
        for j in (0..N).filter(|j| !pivots.contains(j)) {
            let mut a = [Gf::ZERO; N];
            a[j] = Gf::ONE;
            for (row, &p) in self.rows().iter().zip(&pivots) {
                a[p] = row[j];
            }
            out.insert(f, a);
        }
        out
    }

    pub fn join(&self, f: &Field, other: &Subspace<N>) -> Subspace<N> {
        let mut s = *self;
        for r in other.rows() {
            s.insert(f, *r);
        }
        s
    }

    /// Intersection of row spaces; `None` when it is the zero space.
    pub fn meet(&self, f: &Field, other: &Subspace<N>) -> Option<Subspace<N>> {
        let ann = self.annihilator(f).join(f, &other.annihilator(f));
        let m = ann.annihilator(f);
        (m.rank > 0).then_some(m)
    }

    /// Number of projective points, (q^r - 1)/(q - 1).
    pub fn point_count(&self, q: usize) -> u64 {
        projective_count(q as u64, self.rank as u32)
    }

    /// Calls `visit` on every normalized point of the subspace, in
    /// lexicographic order of the coefficient tuple over the RREF basis.
    #[inline]
    pub fn for_each_point(&self, f: &Field, mut visit: impl FnMut(&[Gf; N])) {
        let r = self.rank as usize;
        let q = f.order();
        let mut coeff = [Gf::ZERO; N];
        for lead in (0..r).rev() {
            // coefficient tuples (0,..,0,1,*,..,*) with the 1 at `lead`
            let tail = r - lead - 1;
            let count = q.pow(tail as u32);
            for idx in 0..count {
                coeff[..lead].fill(Gf::ZERO);
                coeff[lead] = Gf::ONE;
                let mut rest = idx;
                for slot in (lead + 1..r).rev() {
                    coeff[slot] = Gf((rest % q) as u8);
                    rest /= q;
                }
                let mut v = [Gf::ZERO; N];
                for (c, row) in coeff[..r].iter().zip(self.rows()) {
                    axpy(f, &mut v, *c, row);
                }
                visit(&v);
            }
        }
    }

    pub fn points(&self, f: &Field) -> Vec<Point<N>> {
        let mut out = Vec::with_capacity(self.point_count(f.order()) as usize);
        self.for_each_point(f, |v| out.push(Point::from_normalized(*v)));
        out
    }

    /// All hyperplanes containing this subspace.
    pub fn hyperplanes_through(&self, f: &Field) -> Vec<Subspace<N>> {
        self.annihilator(f).points(f).iter().map(|a| hyperplane(f, a.coords())).collect()
    }

    /// Packs the RREF rows into a `u64`, `e` bits per entry, row-major.
    /// `None` when `rank * N * e > 64`.
    #[inline]
    pub fn pack(&self, e: u32) -> Option<u64> {
        if self.rank as u32 * N as u32 * e > 64 {
            return None;
        }
        let mut k = 0u64;
        for row in self.rows() {
            for c in row {
                k = (k << e) | c.0 as u64;
            }
        }
        Some(k)
    }

    /// Inverse of [`Subspace::pack`]; trusts the key to encode an RREF matrix.
    #[inline]
    pub fn unpack(key: u64, rank: usize, e: u32) -> Self {
        let mut s = Subspace::empty();
        s.rank = rank as u8;
        let mask = (1u64 << e) - 1;
        let mut k = key;
        for i in (0..rank).rev() {
            for j in (0..N).rev() {
                s.rows[i][j] = Gf((k & mask) as u8);
                k >>= e;
            }
        }
        s
    }

    /// Stable text key: `"{N-1}.{rank}:"` followed by two hex digits per RREF
    /// entry, row-major.
    pub fn hex_key(&self) -> String {
        let mut s = format!("{}.{}:", N - 1, self.rank);
        for row in self.rows() {
            for c in row {
                s.push_str(&format!("{:02x}", c.0));
            }
        }
        s
    }

    pub fn from_hex_key(f: &Field, key: &str) -> Result<Self> {
        let bad = || usage!("malformed subspace key {key:?}");
        let (head, body) = key.split_once(':').ok_or_else(bad)?;
        let (n, r) = head.split_once('.').ok_or_else(bad)?;
        let n: usize = n.parse().map_err(|_| bad())?;
        let r: usize = r.parse().map_err(|_| bad())?;
        if n + 1 != N || r > N || body.len() != 2 * r * N {
            return Err(bad());
        }
        let mut rows = Vec::with_capacity(r);
        for i in 0..r {
            let mut row = [Gf::ZERO; N];
            for (j, c) in row.iter_mut().enumerate() {
                let at = 2 * (i * N + j);
                let v = u64::from_str_radix(&body[at..at + 2], 16).map_err(|_| bad())?;
                *c = f.element(v)?;
            }
            rows.push(row);
        }
        let s = Subspace::from_rows(f, &rows);
        if s.rows() != rows.as_slice() {
            return Err(usage!("key {key:?} is not in reduced row-echelon form"));
        }
        Ok(s)
    }

    pub fn to_json(&self) -> SubspaceJson {
        SubspaceJson { ambient_dim: N - 1, rows: self.rows().iter().map(|r| r.iter().map(|c| c.0).collect()).collect() }
    }

    pub fn from_json(f: &Field, j: &SubspaceJson) -> Result<Self> {
        if j.ambient_dim + 1 != N {
            return Err(usage!("expected ambient dimension {}, got {}", N - 1, j.ambient_dim));
        }
        let mut rows = Vec::with_capacity(j.rows.len());
        for r in &j.rows {
            if r.len() != N {
                return Err(usage!("row of length {} in PG({}, q)", r.len(), N - 1));
            }
            let mut row = [Gf::ZERO; N];
            for (c, &v) in row.iter_mut().zip(r) {
                *c = f.element(v as u64)?;
            }
            rows.push(row);
        }
        Ok(Subspace::from_rows(f, &rows))
    }
}

/// JSON form of a subspace: ambient projective dimension plus basis rows of
/// field-element integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub ambient_dim: usize,
    pub rows: Vec<Vec<u8>>,
}

#[inline]
fn pivot<const N: usize>(row: &[Gf; N]) -> usize {
    row.iter().position(|c| !c.is_zero()).unwrap_or(N)
}

/// The hyperplane `a . y = 0`.
pub fn hyperplane<const N: usize>(f: &Field, a: &[Gf; N]) -> Subspace<N> {
    Subspace::from_rows(f, std::iter::once(a)).annihilator(f)
}

/// Span of a list of points.
pub fn span<const N: usize>(f: &Field, points: &[Point<N>]) -> Subspace<N> {
    Subspace::from_rows(f, points.iter().map(|p| p.coords()))
}

/// (q^k - 1)/(q - 1)
pub fn projective_count(q: u64, k: u32) -> u64 {
    (0..k).map(|i| q.pow(i)).sum()
}

/// Number of k-dimensional vector subspaces of GF(q)^n, i.e. (k-1)-dimensional
/// projective subspaces of PG(n-1, q).
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// Index-addressable enumeration of all rank-`k` subspaces of GF(q)^N, one
/// RREF pivot pattern at a time. Patterns are in lexicographic order of their
/// pivot columns; within a pattern the free entries count up row-major with
/// the first free entry most significant.
#[derive(Clone, Debug)]
pub struct SubspaceEnumerator<const N: usize> {
    q: usize,
    rank: usize,
    patterns: Vec<PivotPattern>,
    total: u64,
}

#[derive(Clone, Debug)]
struct PivotPattern {
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    offset: u64,
}

impl<const N: usize> SubspaceEnumerator<N> {
    pub fn new(f: &Field, rank: usize) -> Result<Self> {
        if rank == 0 || rank > N {
            return Err(usage!("rank {rank} outside 1..={N}"));
        }
        let q = f.order();
        let mut patterns = Vec::new();
        let mut total = 0u64;
        for pivots in combinations(N, rank) {
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(i, &p)| {
                    let pivots = &pivots;
                    (p + 1..N).filter(move |j| !pivots.contains(j)).map(move |j| (i, j))
                })
                .collect();
            let size = (q as u64).pow(free.len() as u32);
            patterns.push(PivotPattern { pivots, free, offset: total });
            total += size;
        }
        Ok(SubspaceEnumerator { q, rank, patterns, total })
    }

    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// The subspace with the given index in enumeration order.
    pub fn get(&self, index: u64) -> Subspace<N> {
        debug_assert!(index < self.total);
        let at = self.patterns.partition_point(|p| p.offset <= index) - 1;
        let pat = &self.patterns[at];
        let mut rest = index - pat.offset;
        let mut s = Subspace::empty();
        s.rank = self.rank as u8;
        for (i, &p) in pat.pivots.iter().enumerate() {
            s.rows[i][p] = Gf::ONE;
        }
        let q = self.q as u64;
        for &(i, j) in pat.free.iter().rev() {
            s.rows[i][j] = Gf((rest % q) as u8);
            rest /= q;
        }
        s
    }

    pub fn iter(&self) -> impl Iterator<Item = Subspace<N>> + '_ {
        (0..self.total).map(move |i| self.get(i))
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every plane of PG(5, q) accepted by `filter`, in enumeration order.
/// Splits the index range into fixed chunks, so the output does not depend on
/// the worker count.
pub fn enumerate_planes<F>(f: &Field, filter: F) -> Vec<Subspace<6>>
where
    F: Fn(&Subspace<6>) -> bool + Sync + Send,
{
    let planes = SubspaceEnumerator::<6>::new(f, 3).expect("rank 3 is valid in PG(5,q)");
    const CHUNK: u64 = 1 << 14;
    let chunks = planes.len().div_ceil(CHUNK) as usize;
    let parts = par::map_range(chunks, |c| {
        let start = c as u64 * CHUNK;
        let end = (start + CHUNK).min(planes.len());
        (start..end).map(|i| planes.get(i)).filter(|p| filter(p)).collect::<Vec<_>>()
    });
    parts.concat()
}
