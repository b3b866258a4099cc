//! The group K = alpha(PGL(3, q)) acting on PG(5, q) by `M -> A M A^T`.
//!
//! Points of PG(2, q) are column vectors and `A` acts as `p -> A p`, so that
//! `nu(A p) = lift(A) nu(p)`.

use std::collections::HashSet;
use std::fmt;

use crate::error::{domain, internal, usage, Error, Result};
use crate::gf::{Field, Gf};
use crate::invariants::{nucleus_meet_dim, od0, signature};
use crate::par;
use crate::projgeom::{Point, Subspace};
use crate::veronese::{nu_inverse, Veronese, SYM_INDEX};

pub type Mat3 = [[Gf; 3]; 3];

/// An element of PGL(3, q): an invertible matrix whose first nonzero entry
/// (row-major) is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement(Mat3);

pub fn det3(f: &Field, m: &Mat3) -> Gf {
    let t = |a: Gf, b: Gf, c: Gf| f.mul(a, f.mul(b, c));
    t(m[0][0], m[1][1], m[2][2])
        + t(m[0][0], m[1][2], m[2][1])
        + t(m[0][1], m[1][0], m[2][2])
        + t(m[0][1], m[1][2], m[2][0])
        + t(m[0][2], m[1][0], m[2][1])
        + t(m[0][2], m[1][1], m[2][0])
}

pub fn mat_mul(f: &Field, a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[Gf::ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = Gf::ZERO;
            for k in 0..3 {
                acc += f.mul(a[i][k], b[k][j]);
            }
            out[i][j] = acc;
        }
    }
    out
}

impl GroupElement {
    pub fn new(f: &Field, m: Mat3) -> Result<Self> {
        if det3(f, &m).is_zero() {
            return Err(domain!("singular matrix {m:?}"));
        }
        Ok(Self::normalized(f, m))
    }

    fn normalized(f: &Field, mut m: Mat3) -> Self {
        let lead = m.iter().flatten().copied().find(|c| !c.is_zero()).expect("nonzero matrix");
        let s = f.inv_nonzero(lead);
        for c in m.iter_mut().flatten() {
            *c = f.mul(*c, s);
        }
        GroupElement(m)
    }

    pub fn identity() -> Self {
        let mut m = [[Gf::ZERO; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Gf::ONE;
        }
        GroupElement(m)
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.0
    }

    /// `self * other`.
    pub fn compose(&self, f: &Field, other: &GroupElement) -> GroupElement {
        Self::normalized(f, mat_mul(f, &self.0, &other.0))
    }

    pub fn apply_point(&self, f: &Field, p: &Point<3>) -> Point<3> {
        let mut out = [Gf::ZERO; 3];
        for (i, o) in out.iter_mut().enumerate() {
            for k in 0..3 {
                *o += f.mul(self.0[i][k], p.coords()[k]);
            }
        }
        Point::normalize(f, out).expect("invertible")
    }

    /// `A M A^T` on the coordinate vector of a symmetric matrix.
    #[inline]
    pub fn act_vector(&self, f: &Field, y: &[Gf; 6]) -> [Gf; 6] {
        let a = &self.0;
        let m = |i: usize, j: usize| y[SYM_INDEX[i][j]];
        // B = M A^T
        let mut b = [[Gf::ZERO; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                b[i][j] = f.mul(m(i, 0), a[j][0]) + f.mul(m(i, 1), a[j][1]) + f.mul(m(i, 2), a[j][2]);
            }
        }
        let mut out = [Gf::ZERO; 6];
        for (i, j) in [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)] {
            out[SYM_INDEX[i][j]] = f.mul(a[i][0], b[0][j]) + f.mul(a[i][1], b[1][j]) + f.mul(a[i][2], b[2][j]);
        }
        out
    }

    pub fn lift(&self, f: &Field) -> Lifted {
        let mut l = [[Gf::ZERO; 6]; 6];
        for s in 0..6 {
            let mut e = [Gf::ZERO; 6];
            e[s] = Gf::ONE;
            let img = self.act_vector(f, &e);
            for r in 0..6 {
                l[r][s] = img[r];
            }
        }
        Lifted(l)
    }

    /// Packs the 9 entries, `e` bits each.
    pub fn pack(&self, e: u32) -> u64 {
        self.0.iter().flatten().fold(0u64, |k, c| (k << e) | c.0 as u64)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.0.iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")).collect();
        write!(fm, "[{}]", rows.join(";"))
    }
}

/// A 6x6 matrix acting on coordinate vectors of PG(5, q).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lifted([[Gf; 6]; 6]);

impl Lifted {
    pub fn matrix(&self) -> &[[Gf; 6]; 6] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, f: &Field, v: &[Gf; 6]) -> [Gf; 6] {
        let mut out = [Gf::ZERO; 6];
        for (o, row) in out.iter_mut().zip(&self.0) {
            let mut acc = Gf::ZERO;
            for k in 0..6 {
                acc += f.mul(row[k], v[k]);
            }
            *o = acc;
        }
        out
    }

    pub fn compose(&self, f: &Field, other: &Lifted) -> Lifted {
        let mut out = [[Gf::ZERO; 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                let mut acc = Gf::ZERO;
                for k in 0..6 {
                    acc += f.mul(self.0[i][k], other.0[k][j]);
                }
                out[i][j] = acc;
            }
        }
        Lifted(out)
    }

    /// Image of a subspace, in RREF.
    #[inline]
    pub fn act_subspace(&self, f: &Field, s: &Subspace<6>) -> Subspace<6> {
        let mut out = Subspace::empty();
        for row in s.rows() {
            out.insert(f, self.apply(f, row));
        }
        out
    }

    /// Whether `self` and `other` agree up to a nonzero scalar.
    pub fn projectively_equal(&self, f: &Field, other: &Lifted) -> bool {
        let a: Vec<Gf> = self.0.iter().flatten().copied().collect();
        let b: Vec<Gf> = other.0.iter().flatten().copied().collect();
        let Some(k) = a.iter().position(|c| !c.is_zero()) else { return false };
        if b[k].is_zero() {
            return false;
        }
        let s = f.inv_nonzero(a[k]);
        let t = f.inv_nonzero(b[k]);
        a.iter().zip(&b).all(|(x, y)| f.mul(*x, s) == f.mul(*y, t))
    }
}

/// `|PGL(3, q)| = q^3 (q^3 - 1) (q^2 - 1)`.
pub fn group_order(q: u64) -> u64 {
    q.pow(3) * (q.pow(3) - 1) * (q * q - 1)
}

/// Two transvections, a diagonal matrix with a primitive entry and the
/// cyclic coordinate permutation.
pub fn generators(f: &Field) -> Vec<GroupElement> {
    let (o, z) = (Gf::ONE, Gf::ZERO);
    let w = f.primitive_element();
    let mats = [
        [[o, o, z], [z, o, z], [z, z, o]],
        [[o, z, z], [o, o, z], [z, z, o]],
        [[w, z, z], [z, o, z], [z, z, o]],
        [[z, o, z], [z, z, o], [o, z, z]],
    ];
    mats.into_iter().map(|m| GroupElement::new(f, m).expect("invertible generator")).collect()
}

/// Size of the closure of the generators under multiplication (BFS over
/// packed matrices). Only for q <= 8.
pub fn generated_group_order(f: &Field, gens: &[GroupElement]) -> Result<u64> {
    let e = f.degree();
    if e > 7 {
        return Err(usage!("group closure needs q <= 128"));
    }
    let mut seen = HashSet::new();
    let id = GroupElement::identity();
    seen.insert(id.pack(e));
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let next: Vec<GroupElement> =
            par::flat_map_slice(&frontier, |g| gens.iter().map(|h| h.compose(f, g)).collect());
        frontier = next.into_iter().filter(|g| seen.insert(g.pack(e))).collect();
    }
    Ok(seen.len() as u64)
}

/// Visits every element of PGL(3, q) row by row: normalized first row, then
/// any second row off its span, then any third row making the matrix
/// invertible. Returns the elements accepted by `keep`, in enumeration order.
pub fn filter_group(f: &Field, keep: impl Fn(&GroupElement) -> bool + Sync + Send) -> Vec<GroupElement> {
    let q = f.order();
    let firsts = Subspace::<3>::full().points(f);
    let vectors: Vec<[Gf; 3]> =
        (0..q * q * q).map(|k| [Gf((k / (q * q)) as u8), Gf((k / q % q) as u8), Gf((k % q) as u8)]).collect();
    par::flat_map_slice(&firsts, |r0| {
        let mut out = Vec::new();
        let r0 = *r0.coords();
        for r1 in &vectors {
            if Subspace::<3>::from_rows(f, [&r0, r1]).rank() < 2 {
                continue;
            }
            for r2 in &vectors {
                let m = [r0, *r1, *r2];
                if det3(f, &m).is_zero() {
                    continue;
                }
                let g = GroupElement(m);
                if keep(&g) {
                    out.push(g);
                }
            }
        }
        out
    })
}

/// Adjugate of a 3x3 matrix, a scalar multiple of its inverse.
fn adjugate(f: &Field, m: &Mat3) -> Mat3 {
    let mut out = [[Gf::ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1, c0, c1) = ((j + 1) % 3, (j + 2) % 3, (i + 1) % 3, (i + 2) % 3);
            out[i][j] = f.mul(m[r0][c0], m[r1][c1]) + f.mul(m[r0][c1], m[r1][c0]);
        }
    }
    out
}

/// Invertible matrix with columns `p`, `r` and a standard basis vector.
fn frame(f: &Field, p: &Point<3>, r: &Point<3>) -> Mat3 {
    (0..3)
        .map(|k| {
            let mut m = [[Gf::ZERO; 3]; 3];
            for i in 0..3 {
                m[i] = [p.coords()[i], r.coords()[i], if i == k { Gf::ONE } else { Gf::ZERO }];
            }
            m
        })
        .find(|m| !det3(f, m).is_zero())
        .expect("distinct points span a line")
}

/// Group-side data shared by orbit computations.
#[derive(Debug)]
pub struct Action<'v> {
    v: &'v Veronese,
    gens: Vec<GroupElement>,
    lifted: Vec<Lifted>,
}

/// Canonical keys of an orbit.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub rank: usize,
    pub keys: HashSet<u64>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn contains(&self, e: u32, s: &Subspace<6>) -> bool {
        s.rank() == self.rank && s.pack(e).is_some_and(|k| self.keys.contains(&k))
    }

    /// Keys in ascending order.
    pub fn sorted_keys(&self) -> Vec<u64> {
        let mut k: Vec<u64> = self.keys.iter().copied().collect();
        k.sort_unstable();
        k
    }
}

impl<'v> Action<'v> {
    pub fn new(v: &'v Veronese) -> Self {
        let f = v.field();
        let gens = generators(f);
        let lifted = gens.iter().map(|g| g.lift(f)).collect();
        Action { v, gens, lifted }
    }

    pub fn veronese(&self) -> &Veronese {
        self.v
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.gens
    }

    pub fn group_order(&self) -> u64 {
        group_order(self.v.q() as u64)
    }

    fn key_bits(&self, s: &Subspace<6>) -> Result<u32> {
        let e = self.v.field().degree();
        s.pack(e)
            .map(|_| e)
            .ok_or_else(|| usage!("rank-{} subspaces over GF({}) do not fit orbit keys", s.rank(), self.v.q()))
    }

    /// Orbit of `start` by breadth-first search over the generators. Fails
    /// with a resource error once more than `budget` keys are stored.
    pub fn orbit(&self, start: &Subspace<6>, budget: usize) -> Result<Orbit> {
        self.orbit_until(start, budget, |_| false).map(|(o, _)| o)
    }

    /// Like [`Action::orbit`], stopping early once `stop` accepts a key.
    fn orbit_until(&self, start: &Subspace<6>, budget: usize, stop: impl Fn(u64) -> bool) -> Result<(Orbit, bool)> {
        let f = self.v.field();
        let e = self.key_bits(start)?;
        let rank = start.rank();
        let k0 = start.pack(e).expect("checked");
        let mut keys = HashSet::new();
        keys.insert(k0);
        if stop(k0) {
            return Ok((Orbit { rank, keys }, true));
        }
        // Debug builds compare the signature of one image per level with the start.
        let spot = if cfg!(debug_assertions) && rank == 3 { Some(signature(self.v, start)?) } else { None };
        let mut frontier = vec![k0];
        while !frontier.is_empty() {
            let images: Vec<u64> = par::flat_map_slice(&frontier, |k| {
                let s = Subspace::<6>::unpack(*k, rank, e);
                self.lifted.iter().map(|g| g.act_subspace(f, &s).pack(e).expect("same rank")).collect()
            });
            if let (Some(sig), Some(&k)) = (&spot, images.first()) {
                let got = signature(self.v, &Subspace::unpack(k, rank, e))?;
                if got != *sig {
                    return Err(internal!("signature changed along an orbit: {sig:?} became {got:?}"));
                }
            }
            let mut next = Vec::new();
            for k in images {
                if keys.insert(k) {
                    if stop(k) {
                        return Ok((Orbit { rank, keys }, true));
                    }
                    next.push(k);
                }
            }
            if keys.len() > budget {
                return Err(Error::Resource(format!(
                    "orbit search stopped after {} keys (budget {budget}), {} still queued",
                    keys.len(),
                    next.len()
                )));
            }
            frontier = next;
        }
        Ok((Orbit { rank, keys }, false))
    }

    /// `|K| / |orbit|`.
    pub fn stabilizer_order(&self, s: &Subspace<6>, budget: usize) -> Result<u64> {
        let n = self.orbit(s, budget)?.len() as u64;
        Ok(self.group_order() / n)
    }

    /// Whether `b` lies in the orbit of `a`. Compares cheap invariants first.
    pub fn k_equivalent(&self, a: &Subspace<6>, b: &Subspace<6>, budget: usize) -> Result<bool> {
        let f = self.v.field();
        if a.rank() != b.rank() || nucleus_meet_dim(f, a) != nucleus_meet_dim(f, b) {
            return Ok(false);
        }
        if od0(self.v, a) != od0(self.v, b) {
            return Ok(false);
        }
        let e = match self.key_bits(b) {
            Ok(e) => e,
            Err(err) => return self.transporter_by_points(a, b)?.ok_or(err),
        };
        let target = b.pack(e).expect("checked");
        Ok(self.orbit_until(a, budget, |k| k == target)?.1)
    }

    /// Points of PG(2, q) whose Veronese images lie in `s`.
    fn veronese_preimages(&self, s: &Subspace<6>) -> Result<Vec<Point<3>>> {
        let f = self.v.field();
        s.points(f).iter().filter(|p| self.v.rank(p.coords()) == 1).map(|p| nu_inverse(f, p)).collect()
    }

    /// Whether some element of K maps `a` onto `b`, searching only the
    /// elements that carry two Veronese points of `a` onto two of `b`. Needs
    /// no orbit keys. `None` when `a` holds fewer than two Veronese points.
    pub fn transporter_by_points(&self, a: &Subspace<6>, b: &Subspace<6>) -> Result<Option<bool>> {
        let f = self.v.field();
        let (pa, pb) = (self.veronese_preimages(a)?, self.veronese_preimages(b)?);
        if pa.len() < 2 {
            return Ok(None);
        }
        if pa.len() != pb.len() || a.rank() != b.rank() {
            return Ok(Some(false));
        }
        let back = adjugate(f, &frame(f, &pa[0], &pa[1]));
        let q = f.order();
        let units = q - 1;
        // elements fixing the first two frame points: [[l,0,x],[0,m,y],[0,0,1]]
        let n = units * units * q * q;
        for (i, r1) in pb.iter().enumerate() {
            for (j, r2) in pb.iter().enumerate() {
                if i == j {
                    continue;
                }
                let to = frame(f, r1, r2);
                let hit = par::fold_chunks(
                    n,
                    4096,
                    || false,
                    |found, k| {
                        if found {
                            return true;
                        }
                        let (l, m) = (Gf((k % units + 1) as u8), Gf((k / units % units + 1) as u8));
                        let (x, y) = (Gf((k / (units * units) % q) as u8), Gf((k / (units * units * q)) as u8));
                        let d = [[l, Gf::ZERO, x], [Gf::ZERO, m, y], [Gf::ZERO, Gf::ZERO, Gf::ONE]];
                        let g = mat_mul(f, &mat_mul(f, &to, &d), &back);
                        GroupElement::new(f, g).is_ok_and(|g| g.lift(f).act_subspace(f, a) == *b)
                    },
                    |x, y| x || y,
                );
                if hit {
                    return Ok(Some(true));
                }
            }
        }
        Ok(Some(false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::veronese::{nu, nucleus_plane};

    #[test]
    fn group_orders() {
        assert_eq!(group_order(2), 168);
        assert_eq!(group_order(4), 60480);
    }

    #[test]
    fn generators_generate() {
        for q in [2, 4] {
            let f = Field::with_order(q).unwrap();
            let n = generated_group_order(&f, &generators(&f)).unwrap();
            assert_eq!(n, group_order(q as u64));
        }
    }

    #[test]
    fn point_transporter_agrees_with_orbit_search() {
        use crate::atlas::{Atlas, OrbitLabel, DEFAULT_BUDGET};
        for q in [4, 8] {
            let v = Veronese::with_order(q).unwrap();
            let f = v.field();
            let atlas = Atlas::new(&v).unwrap();
            let action = Action::new(&v);
            let s3 = &atlas.representative(OrbitLabel::Sigma3).plane;
            let s4 = &atlas.representative(OrbitLabel::Sigma4).plane;
            let w = f.primitive_element();
            let g = GroupElement::new(
                f,
                [[w, Gf::ONE, Gf::ZERO], [Gf::ZERO, Gf::ONE, Gf::ONE], [Gf::ONE, Gf::ZERO, Gf::ONE]],
            );
            let img = g.unwrap().lift(f).act_subspace(f, s4);
            for (a, b) in [(s3, &img), (s4, &img), (s3, s4), (s4, s4)] {
                let bfs = action.k_equivalent(a, b, DEFAULT_BUDGET).unwrap();
                assert_eq!(action.transporter_by_points(a, b).unwrap(), Some(bfs), "q = {q}");
            }
            let sn = &atlas.representative(OrbitLabel::SigmaN).plane;
            assert_eq!(action.transporter_by_points(sn, sn).unwrap(), None);
        }
    }

    #[test]
    fn full_enumeration_has_group_order() {
        let f = Field::with_order(4).unwrap();
        let all = filter_group(&f, |_| true);
        assert_eq!(all.len() as u64, group_order(4));
        let distinct: HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
    }

    #[test]
    fn lift_matches_the_worked_example() {
        let f = Field::with_order(2).unwrap();
        let (o, z) = (Gf::ONE, Gf::ZERO);
        let a = GroupElement::new(&f, [[o, o, z], [z, o, z], [z, z, o]]).unwrap();
        let p = Point::normalize(&f, [z, o, z]).unwrap();
        let img = a.lift(&f).apply(&f, nu(&f, &p).coords());
        assert_eq!(img, [1, 1, 0, 1, 0, 0].map(Gf));
        assert_eq!(nu(&f, &a.apply_point(&f, &p)).coords(), &img);
    }

    #[test]
    fn nucleus_plane_is_fixed() {
        let v = Veronese::with_order(4).unwrap();
        let act = Action::new(&v);
        let o = act.orbit(&nucleus_plane(v.field()), 10).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(act.stabilizer_order(&nucleus_plane(v.field()), 10).unwrap(), 60480);
    }

    #[test]
    fn orbit_budget_is_enforced() {
        let v = Veronese::with_order(4).unwrap();
        let f = v.field();
        let act = Action::new(&v);
        let s = Subspace::from_rows(f, &[[1, 0, 0, 0, 0, 0].map(Gf), [0, 0, 0, 0, 0, 1].map(Gf)]);
        assert!(matches!(act.orbit(&s, 5), Err(Error::Resource(_))));
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let f = Field::with_order(2).unwrap();
        assert!(GroupElement::new(&f, [[Gf::ONE; 3]; 3]).is_err());
    }
}
