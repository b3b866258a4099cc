//! The Veronese surface in PG(5, q), q even, and the conic/hyperplane
//! correspondence.
//!
//! A point `(y0, .., y5)` of PG(5, q) is identified with the symmetric matrix
//! `[[y0, y1, y2], [y1, y3, y4], [y2, y4, y5]]`. Its rank sorts the points into
//! four classes; the rank-2 points inside the nucleus plane `Z(Y0, Y3, Y5)`
//! form their own class because in characteristic 2 they are exactly the
//! nuclei of the conics on the surface.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{domain, internal, usage, Result};
use crate::expr::{parse_polynomial, Params};
use crate::gf::{Field, Gf};
use crate::projgeom::{dot, hyperplane, Point, Subspace, SubspaceEnumerator};

/// The symmetric 3x3 matrix attached to a point of PG(5, q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymMatrix3(pub [Gf; 6]);

/// Position of matrix entry `(i, j)` in the coordinate vector.
pub const SYM_INDEX: [[usize; 3]; 3] = [[0, 1, 2], [1, 3, 4], [2, 4, 5]];

impl SymMatrix3 {
    pub fn entry(&self, i: usize, j: usize) -> Gf {
        self.0[SYM_INDEX[i][j]]
    }

    pub fn to_matrix(&self) -> [[Gf; 3]; 3] {
        let mut m = [[Gf::ZERO; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                *c = self.entry(i, j);
            }
        }
        m
    }

    /// Reads the upper triangle of `m`.
    pub fn from_matrix(m: &[[Gf; 3]; 3]) -> Self {
        SymMatrix3([m[0][0], m[0][1], m[0][2], m[1][1], m[1][2], m[2][2]])
    }

    pub fn rank(&self, f: &Field) -> u8 {
        matrix_rank(f, self.to_matrix())
    }
}

/// Rank of a 3x3 matrix by Gaussian elimination.
pub fn matrix_rank(f: &Field, mut m: [[Gf; 3]; 3]) -> u8 {
    let mut rank = 0usize;
    for col in 0..3 {
        let Some(p) = (rank..3).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = f.inv_nonzero(m[rank][col]);
        let pivot_row = m[rank];
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let c = f.mul(row[col], inv);
                for k in 0..3 {
                    row[k] += f.mul(c, pivot_row[k]);
                }
            }
        }
        rank += 1;
    }
    rank as u8
}

/// Rank of the symmetric matrix of a coordinate vector (0 for the zero vector).
#[inline]
pub fn rank_of(f: &Field, v: &[Gf; 6]) -> u8 {
    SymMatrix3(*v).rank(f)
}

/// The Veronese map `(u0,u1,u2) -> (u0^2, u0u1, u0u2, u1^2, u1u2, u2^2)`.
pub fn nu(f: &Field, p: &Point<3>) -> Point<6> {
    let [u0, u1, u2] = *p.coords();
    let v = [f.mul(u0, u0), f.mul(u0, u1), f.mul(u0, u2), f.mul(u1, u1), f.mul(u1, u2), f.mul(u2, u2)];
    Point::normalize(f, v).expect("the Veronese image of a point is nonzero")
}

/// Inverse of [`nu`] on rank-1 points: the column space of the matrix.
pub fn nu_inverse(f: &Field, p: &Point<6>) -> Result<Point<3>> {
    if rank_of(f, p.coords()) != 1 {
        return Err(domain!("{p} is not a point of the Veronese surface"));
    }
    let m = SymMatrix3(*p.coords()).to_matrix();
    let row = m.iter().find(|r| r.iter().any(|c| !c.is_zero())).expect("rank 1");
    Point::normalize(f, *row)
}

#[inline]
pub fn in_nucleus_plane(v: &[Gf; 6]) -> bool {
    v[0].is_zero() && v[3].is_zero() && v[5].is_zero()
}

/// The plane `Z(Y0, Y3, Y5)`.
pub fn nucleus_plane(f: &Field) -> Subspace<6> {
    let mut rows = [[Gf::ZERO; 6]; 3];
    rows[0][1] = Gf::ONE;
    rows[1][2] = Gf::ONE;
    rows[2][4] = Gf::ONE;
    Subspace::from_rows(f, &rows)
}

/// The four K-orbits on points of PG(5, q), q even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PointClass {
    /// rank 1: the Veronese surface
    P1,
    /// rank 2 inside the nucleus plane
    P2N,
    /// rank 2 outside the nucleus plane
    P2S,
    /// rank 3
    P3,
}

impl PointClass {
    pub const ALL: [PointClass; 4] = [PointClass::P1, PointClass::P2N, PointClass::P2S, PointClass::P3];

    pub fn index(self) -> usize {
        self as usize
    }

    fn from_rank(rank: u8, v: &[Gf; 6]) -> Option<PointClass> {
        match rank {
            1 => Some(PointClass::P1),
            2 if in_nucleus_plane(v) => Some(PointClass::P2N),
            2 => Some(PointClass::P2S),
            3 => Some(PointClass::P3),
            _ => None,
        }
    }
}

/// A line of PG(2, q), stored as the normalized coefficient vector `a` of
/// `Z(a0 X0 + a1 X1 + a2 X2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line(pub Point<3>);

impl Line {
    pub fn coeffs(&self) -> &[Gf; 3] {
        self.0.coords()
    }

    pub fn contains(&self, f: &Field, p: &Point<3>) -> bool {
        dot(f, self.coeffs(), p.coords()).is_zero()
    }

    pub fn points(&self, f: &Field) -> Vec<Point<3>> {
        hyperplane(f, self.coeffs()).points(f)
    }
}

impl fmt::Display for Line {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        write!(fm, "Z(")?;
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(fm, " + ")?;
            }
            first = false;
            if *c != Gf::ONE {
                write!(fm, "{c}")?;
            }
            write!(fm, "X{i}")?;
        }
        write!(fm, ")")
    }
}

/// The plane spanned by the conic `nu(line)`.
pub fn conic_plane(f: &Field, line: &Line) -> Subspace<6> {
    let pts: Vec<_> = line.points(f).iter().map(|p| nu(f, p)).collect();
    crate::projgeom::span(f, &pts)
}

/// Nucleus of the conic `nu(line)`: the tangent lines at two distinct conic
/// points, each found by scanning the lines of the conic plane, meet in it.
pub fn conic_nucleus(f: &Field, line: &Line) -> Result<Point<6>> {
    let plane = conic_plane(f, line);
    let conic: Vec<Point<6>> = line.points(f).iter().map(|p| nu(f, p)).collect();
    let tangent_at = |c: &Point<6>| -> Result<Subspace<6>> {
        let mut found = None;
        for x in plane.points(f) {
            if x == *c {
                continue;
            }
            let l = Subspace::from_rows(f, [c.coords(), x.coords()]);
            let hits = conic.iter().filter(|p| l.contains(f, p.coords())).count();
            if hits == 1 {
                match found {
                    None => found = Some(l),
                    Some(prev) if prev == l => {}
                    Some(_) => return Err(internal!("two tangents at {c}")),
                }
            }
        }
        found.ok_or_else(|| internal!("no tangent at {c}"))
    };
    let t0 = tangent_at(&conic[0])?;
    let t1 = tangent_at(&conic[1])?;
    let m = t0.meet(f, &t1).ok_or_else(|| internal!("tangents do not meet"))?;
    if m.rank() != 1 {
        return Err(internal!("tangents coincide"));
    }
    Point::normalize(f, m.rows()[0])
}

/// A ternary quadratic form `sum a_ij X_i X_j`, coefficients in the order
/// `(a00, a01, a02, a11, a12, a22)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct QuadraticForm(pub [Gf; 6]);

const MONOMIALS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

impl QuadraticForm {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn coeffs(&self) -> &[Gf; 6] {
        &self.0
    }

    #[inline]
    pub fn eval(&self, f: &Field, p: &[Gf; 3]) -> Gf {
        let a = &self.0;
        let [x, y, z] = *p;
        f.mul(x, f.mul(a[0], x) + f.mul(a[1], y) + f.mul(a[2], z))
            + f.mul(y, f.mul(a[3], y) + f.mul(a[4], z))
            + f.mul(z, f.mul(a[5], z))
    }

    /// In characteristic 2 a form is a square exactly when its cross terms vanish.
    pub fn is_double_line(&self) -> bool {
        !self.is_zero() && self.0[1].is_zero() && self.0[2].is_zero() && self.0[4].is_zero()
    }

    /// Number of points of PG(2, q) on the conic.
    pub fn rational_points(&self, f: &Field) -> usize {
        let all = Subspace::<3>::full();
        let mut n = 0;
        all.for_each_point(f, |p| {
            if self.eval(f, p).is_zero() {
                n += 1;
            }
        });
        n
    }

    /// Reads a form such as `"c X0 X2 + X1^2"`; variables are `X0, X1, X2`.
    pub fn parse(f: &Field, s: &str, params: &Params) -> Result<Self> {
        let var = |name: &str| ["X0", "X1", "X2"].iter().position(|v| *v == name);
        let terms = parse_polynomial(f, s, 3, var, params)?;
        let mut a = [Gf::ZERO; 6];
        for (exps, c) in terms {
            if exps.iter().sum::<u8>() != 2 {
                return Err(usage!("{s:?} is not a homogeneous quadratic form"));
            }
            let mut idx = exps.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize));
            let (i, j) = (idx.next().unwrap(), idx.next().unwrap());
            let slot = MONOMIALS.iter().position(|&m| m == (i, j)).unwrap();
            a[slot] += c;
        }
        Ok(QuadraticForm(a))
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(fm, "0");
        }
        let mut first = true;
        for (c, &(i, j)) in self.0.iter().zip(&MONOMIALS) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(fm, " + ")?;
            }
            first = false;
            if *c != Gf::ONE {
                write!(fm, "{c}*")?;
            }
            if i == j {
                write!(fm, "X{i}^2")?;
            } else {
                write!(fm, "X{i}*X{j}")?;
            }
        }
        Ok(())
    }
}

/// The hyperplane `Z(a00 Y0 + a01 Y1 + a02 Y2 + a11 Y3 + a12 Y4 + a22 Y5)`.
pub fn delta(f: &Field, form: &QuadraticForm) -> Result<Subspace<6>> {
    if form.is_zero() {
        return Err(domain!("the zero form defines no conic"));
    }
    Ok(hyperplane(f, form.coeffs()))
}

/// Reads back the (normalized) coefficient vector of a hyperplane.
pub fn delta_inv(f: &Field, h: &Subspace<6>) -> Result<QuadraticForm> {
    if h.rank() != 5 {
        return Err(usage!("expected a hyperplane, got a subspace of rank {}", h.rank()));
    }
    Ok(QuadraticForm(h.annihilator(f).rows()[0]))
}

/// The four PGL(3, q)-orbits of conics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConicType {
    DoubleLine,
    RealPair,
    ImaginaryPair,
    Nonsingular,
}

impl ConicType {
    fn from_code(c: u8) -> Option<ConicType> {
        match c {
            1 => Some(ConicType::DoubleLine),
            2 => Some(ConicType::RealPair),
            3 => Some(ConicType::ImaginaryPair),
            4 => Some(ConicType::Nonsingular),
            _ => None,
        }
    }

    fn code(self) -> u8 {
        self as u8 + 1
    }
}

/// Classifies a conic: double lines by vanishing cross terms, the rest by
/// counting rational points.
pub fn classify_conic(f: &Field, form: &QuadraticForm) -> Result<ConicType> {
    if form.is_zero() {
        return Err(domain!("the zero form defines no conic"));
    }
    if form.is_double_line() {
        return Ok(ConicType::DoubleLine);
    }
    let q = f.order();
    match form.rational_points(f) {
        n if n == 2 * q + 1 => Ok(ConicType::RealPair),
        1 => Ok(ConicType::ImaginaryPair),
        n if n == q + 1 => Ok(ConicType::Nonsingular),
        n => Err(internal!("conic {form} has {n} points over GF({q})")),
    }
}

/// The four K-orbits on hyperplanes of PG(5, q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum HyperplaneClass {
    H1,
    H2r,
    H2i,
    H3,
}

impl HyperplaneClass {
    pub const ALL: [HyperplaneClass; 4] =
        [HyperplaneClass::H1, HyperplaneClass::H2r, HyperplaneClass::H2i, HyperplaneClass::H3];

    pub fn of_conic(t: ConicType) -> HyperplaneClass {
        match t {
            ConicType::DoubleLine => HyperplaneClass::H1,
            ConicType::RealPair => HyperplaneClass::H2r,
            ConicType::ImaginaryPair => HyperplaneClass::H2i,
            ConicType::Nonsingular => HyperplaneClass::H3,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Number of PG(2,q) points for which the table-driven lookups are built.
const TABLE_MAX_Q: usize = 8;

/// Per-field context: PG(2, q) points and lines with their conic planes,
/// and (for q <= 8) lookup tables for point ranks and conic types.
#[derive(Debug)]
pub struct Veronese {
    field: Field,
    plane_points: Vec<Point<3>>,
    lines: Vec<Line>,
    conic_planes: Vec<Subspace<6>>,
    rank_table: Option<Box<[u8]>>,
    conic_table: OnceLock<Option<Box<[u8]>>>,
}

impl Veronese {
    pub fn new(field: Field) -> Self {
        let f = &field;
        let plane_points = Subspace::<3>::full().points(f);
        let mut lines: Vec<Line> = plane_points.iter().map(|p| Line(*p)).collect();
        lines.sort();
        let conic_planes = lines.iter().map(|l| conic_plane(f, l)).collect();
        let q = f.order();
        let rank_table = (q <= TABLE_MAX_Q).then(|| {
            let e = f.degree();
            (0..q.pow(6)).map(|k| rank_of(f, &unpack_vector(k as u64, e))).collect::<Vec<u8>>().into_boxed_slice()
        });
        Veronese { field, plane_points, lines, conic_planes, rank_table, conic_table: OnceLock::new() }
    }

    pub fn with_order(q: usize) -> Result<Self> {
        Ok(Veronese::new(Field::with_order(q)?))
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.field.order()
    }

    /// Points of PG(2, q) in enumeration order.
    pub fn plane_points(&self) -> &[Point<3>] {
        &self.plane_points
    }

    /// Lines of PG(2, q), indexed like [`Veronese::plane_points`] by duality.
    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    #[inline]
    pub fn rank(&self, v: &[Gf; 6]) -> u8 {
        match &self.rank_table {
            Some(t) => t[pack_vector(v, self.field.degree()) as usize],
            None => rank_of(&self.field, v),
        }
    }

    #[inline]
    pub fn point_class_of(&self, v: &[Gf; 6]) -> Option<PointClass> {
        PointClass::from_rank(self.rank(v), v)
    }

    pub fn point_class(&self, p: &Point<6>) -> PointClass {
        self.point_class_of(p.coords()).expect("projective points are nonzero")
    }

    /// The line of PG(2, q) whose conic plane contains the rank-2 point `r`,
    /// found by scanning every line; errors unless exactly one matches.
    pub fn conic_plane_of(&self, r: &Point<6>) -> Result<(Line, Subspace<6>)> {
        let f = &self.field;
        if self.rank(r.coords()) != 2 {
            return Err(domain!("{r} does not have rank 2"));
        }
        let mut hits = self.lines.iter().zip(&self.conic_planes).filter(|(_, p)| p.contains(f, r.coords()));
        let first = hits.next().ok_or_else(|| internal!("no conic plane contains {r}"))?;
        if hits.next().is_some() {
            return Err(internal!("several conic planes contain {r}"));
        }
        Ok((*first.0, *first.1))
    }

    pub fn conic_plane_of_line(&self, line: &Line) -> Subspace<6> {
        let i = self.lines.binary_search(line).expect("normalized line");
        self.conic_planes[i]
    }

    /// Conic classification with a lookup table for q <= 8.
    pub fn conic_type(&self, form: &QuadraticForm) -> Result<ConicType> {
        let table = self.conic_table.get_or_init(|| {
            let f = &self.field;
            let q = f.order();
            (q <= TABLE_MAX_Q).then(|| {
                let e = f.degree();
                let all = (0..q.pow(6) as u64).map(|k| {
                    let form = QuadraticForm(unpack_vector(k, e));
                    classify_conic(f, &form).map_or(0, |t| t.code())
                });
                all.collect::<Vec<u8>>().into_boxed_slice()
            })
        });
        match table {
            Some(t) => ConicType::from_code(t[pack_vector(form.coeffs(), self.field.degree()) as usize])
                .ok_or_else(|| domain!("the zero form defines no conic")),
            None => classify_conic(&self.field, form),
        }
    }

    /// Hyperplane class via `delta_inv` and the conic type, cross-checked
    /// against the number of Veronese points on the hyperplane.
    pub fn classify_hyperplane(&self, h: &Subspace<6>) -> Result<HyperplaneClass> {
        let f = &self.field;
        let form = delta_inv(f, h)?;
        let class = HyperplaneClass::of_conic(self.conic_type(&form)?);
        let on_h = self.plane_points.iter().filter(|p| h.contains(f, nu(f, p).coords())).count();
        let q = self.q();
        let expected = match class {
            HyperplaneClass::H1 | HyperplaneClass::H3 => q + 1,
            HyperplaneClass::H2r => 2 * q + 1,
            HyperplaneClass::H2i => 1,
        };
        if on_h != expected {
            return Err(internal!("hyperplane of class {class:?} meets the surface in {on_h} points"));
        }
        Ok(class)
    }
}

#[inline]
pub(crate) fn pack_vector(v: &[Gf; 6], e: u32) -> u64 {
    v.iter().fold(0u64, |k, c| (k << e) | c.0 as u64)
}

#[inline]
pub(crate) fn unpack_vector(mut k: u64, e: u32) -> [Gf; 6] {
    let mask = (1u64 << e) - 1;
    let mut v = [Gf::ZERO; 6];
    for c in v.iter_mut().rev() {
        *c = Gf((k & mask) as u8);
        k >>= e;
    }
    v
}

/// All points of PG(5, q).
pub fn all_points(f: &Field) -> Vec<Point<6>> {
    Subspace::<6>::full().points(f)
}

/// Lines of PG(2, q) as rank-2 subspaces, for cross-checks.
pub fn line_subspaces(f: &Field) -> Vec<Subspace<3>> {
    SubspaceEnumerator::<3>::new(f, 2).expect("rank 2 in PG(2,q)").iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt6(f: &Field, v: [u8; 6]) -> Point<6> {
        Point::normalize(f, v.map(Gf)).unwrap()
    }

    fn pt3(f: &Field, v: [u8; 3]) -> Point<3> {
        Point::normalize(f, v.map(Gf)).unwrap()
    }

    #[test]
    fn nu_examples() {
        let f = Field::with_order(4).unwrap();
        assert_eq!(nu(&f, &pt3(&f, [1, 0, 0])), pt6(&f, [1, 0, 0, 0, 0, 0]));
        assert_eq!(nu(&f, &pt3(&f, [1, 1, 1])), pt6(&f, [1; 6]));
        assert_eq!(nu(&f, &pt3(&f, [0, 1, 2])), pt6(&f, [0, 0, 0, 1, 2, 3]));
    }

    #[test]
    fn rank_examples() {
        let f = Field::with_order(2).unwrap();
        assert_eq!(rank_of(&f, &[0, 1, 0, 0, 0, 0].map(Gf)), 2);
        assert_eq!(rank_of(&f, &[1, 0, 0, 1, 0, 1].map(Gf)), 3);
        assert_eq!(rank_of(&f, &nu(&f, &pt3(&f, [1, 1, 0])).coords().clone()), 1);
    }

    #[test]
    fn point_class_examples() {
        let v = Veronese::with_order(2).unwrap();
        let f = v.field();
        assert_eq!(v.point_class(&pt6(f, [0, 1, 0, 0, 1, 0])), PointClass::P2N);
        assert_eq!(v.point_class(&pt6(f, [1, 0, 0, 0, 0, 1])), PointClass::P2S);
    }

    #[test]
    fn nucleus_plane_is_all_rank_two() {
        let v = Veronese::with_order(4).unwrap();
        let pn = nucleus_plane(v.field());
        let pts = pn.points(v.field());
        assert_eq!(pts.len(), 21);
        assert!(pts.iter().all(|p| v.point_class(p) == PointClass::P2N));
    }

    #[test]
    fn conic_plane_examples() {
        let v = Veronese::with_order(4).unwrap();
        let f = v.field();
        let (line, plane) = v.conic_plane_of(&pt6(f, [0, 1, 0, 0, 0, 0])).unwrap();
        assert_eq!(line.coeffs(), &[0, 0, 1].map(Gf));
        let expected =
            Subspace::from_rows(f, &[[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0]].map(|r| r.map(Gf)));
        assert_eq!(plane, expected);
        let (line, _) = v.conic_plane_of(&pt6(f, [0, 1, 0, 0, 1, 0])).unwrap();
        assert_eq!(line.coeffs(), &[1, 0, 1].map(Gf));
        assert!(v.conic_plane_of(&pt6(f, [1, 0, 0, 0, 0, 0])).is_err());
    }

    #[test]
    fn conic_nucleus_examples() {
        let f = Field::with_order(4).unwrap();
        let z2 = Line(pt3(&f, [0, 0, 1]));
        assert_eq!(conic_nucleus(&f, &z2).unwrap(), pt6(&f, [0, 1, 0, 0, 0, 0]));
        let z0 = Line(pt3(&f, [1, 0, 0]));
        assert_eq!(conic_nucleus(&f, &z0).unwrap(), pt6(&f, [0, 0, 0, 0, 1, 0]));
    }

    #[test]
    fn delta_examples() {
        let f = Field::with_order(4).unwrap();
        let p = Params::new();
        let x0sq = QuadraticForm::parse(&f, "X0^2", &p).unwrap();
        assert_eq!(delta(&f, &x0sq).unwrap(), hyperplane(&f, &[1, 0, 0, 0, 0, 0].map(Gf)));
        let dl = QuadraticForm::parse(&f, "X0^2 + X2^2", &p).unwrap();
        assert_eq!(delta(&f, &dl).unwrap(), hyperplane(&f, &[1, 0, 0, 0, 0, 1].map(Gf)));
        assert_eq!(delta_inv(&f, &delta(&f, &dl).unwrap()).unwrap(), dl);
        assert!(delta(&f, &QuadraticForm::default()).is_err());
    }

    #[test]
    fn conic_type_examples() {
        let f = Field::with_order(4).unwrap();
        let p = Params::new();
        let c = |s: &str| classify_conic(&f, &QuadraticForm::parse(&f, s, &p).unwrap()).unwrap();
        assert_eq!(c("X0^2 + X0X2 + X1X2"), ConicType::Nonsingular);
        assert_eq!(c("X0X1"), ConicType::RealPair);
        assert_eq!(c("X2^2"), ConicType::DoubleLine);
        // x^2 + xy + w y^2 with Tr(w) = 1 is irreducible
        assert_eq!(c("X0^2 + X0X1 + 2X1^2"), ConicType::ImaginaryPair);
    }

    #[test]
    fn hyperplane_class_examples() {
        let v = Veronese::with_order(4).unwrap();
        let f = v.field();
        let h = |a: [u8; 6]| v.classify_hyperplane(&hyperplane(f, &a.map(Gf))).unwrap();
        assert_eq!(h([1, 0, 0, 0, 0, 0]), HyperplaneClass::H1);
        assert_eq!(h([0, 0, 0, 0, 0, 1]), HyperplaneClass::H1);
        assert_eq!(h([0, 1, 0, 0, 0, 0]), HyperplaneClass::H2r);
    }

    #[test]
    fn conic_table_matches_direct_classification() {
        let v = Veronese::with_order(4).unwrap();
        let f = v.field();
        for k in 1..4096u64 {
            let form = QuadraticForm(unpack_vector(k, 2));
            assert_eq!(v.conic_type(&form).unwrap(), classify_conic(f, &form).unwrap());
        }
    }

    #[test]
    fn form_display_round_trips() {
        let f = Field::with_order(8).unwrap();
        let form = QuadraticForm([3, 0, 1, 5, 1, 0].map(Gf));
        let back = QuadraticForm::parse(&f, &form.to_string(), &Params::new()).unwrap();
        assert_eq!(back, form);
    }
}
