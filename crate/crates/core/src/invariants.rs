//! K-invariants of planes: OD0, OD4, the determinantal cubic and its type.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{internal, usage, Result};
use crate::gf::{Field, Gf};
use crate::projgeom::{projective_count, Point, Subspace};
use crate::veronese::{ConicType, HyperplaneClass, PointClass, QuadraticForm, Veronese, SYM_INDEX};

/// Point-orbit distribution `[r1, r2n, r2s, r3]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Od0(pub [u64; 4]);

/// Hyperplane-orbit distribution `[h1, h2r, h2i, h3]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Od4(pub [u64; 4]);

impl Od0 {
    pub fn r1(&self) -> u64 {
        self.0[0]
    }
    pub fn r2n(&self) -> u64 {
        self.0[1]
    }
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl Od4 {
    pub fn h1(&self) -> u64 {
        self.0[0]
    }
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Od0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "[{a},{b},{c},{d}]")
    }
}

impl fmt::Display for Od4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "[{a},{b},{c},{d}]")
    }
}

fn require_plane(s: &Subspace<6>) -> Result<()> {
    if s.rank() != 3 {
        return Err(usage!("expected a plane, got a subspace of rank {}", s.rank()));
    }
    Ok(())
}

/// Counts the points of `s` in each point class.
pub fn od0(v: &Veronese, s: &Subspace<6>) -> Od0 {
    let mut out = [0u64; 4];
    s.for_each_point(v.field(), |p| {
        let c = v.point_class_of(p).expect("nonzero");
        out[c.index()] += 1;
    });
    Od0(out)
}

/// Rank of the `Y0, Y3, Y5` columns of the basis.
fn diagonal_rank(f: &Field, s: &Subspace<6>) -> usize {
    let rows: Vec<[Gf; 3]> = s.rows().iter().map(|r| [r[0], r[3], r[5]]).collect();
    Subspace::<3>::from_rows(f, &rows).rank()
}

/// Projective dimension of `s` meet the nucleus plane (-1 when disjoint).
pub fn nucleus_meet_dim(f: &Field, s: &Subspace<6>) -> i32 {
    (s.rank() - diagonal_rank(f, s)) as i32 - 1
}

/// `r2n` from the meet with the nucleus plane, without enumerating points.
pub fn r2n(f: &Field, s: &Subspace<6>) -> u64 {
    let k = s.rank() - diagonal_rank(f, s);
    projective_count(f.order() as u64, k as u32)
}

/// Number of double-line forms among those vanishing on `s`.
pub fn h1(f: &Field, s: &Subspace<6>) -> u64 {
    let ann = s.annihilator(f);
    let rows: Vec<[Gf; 3]> = ann.rows().iter().map(|r| [r[1], r[2], r[4]]).collect();
    let k = ann.rank() - Subspace::<3>::from_rows(f, &rows).rank();
    projective_count(f.order() as u64, k as u32)
}

/// Counts the hyperplanes through `s` in each hyperplane class.
pub fn od4(v: &Veronese, s: &Subspace<6>) -> Result<Od4> {
    let f = v.field();
    let mut out = [0u64; 4];
    let mut err = None;
    s.annihilator(f).for_each_point(f, |a| match v.conic_type(&QuadraticForm(*a)) {
        Ok(t) => out[HyperplaneClass::of_conic(t).index()] += 1,
        Err(e) => err = Some(e),
    });
    match err {
        Some(e) => Err(e),
        None => Ok(Od4(out)),
    }
}

/// A homogeneous polynomial in `x, y, z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TernaryForm {
    degree: u8,
    terms: BTreeMap<[u8; 3], Gf>,
}

/// A ternary form of degree 3.
pub type TernaryCubic = TernaryForm;

impl TernaryForm {
    pub fn zero(degree: u8) -> Self {
        TernaryForm { degree, terms: BTreeMap::new() }
    }

    pub fn constant(c: Gf) -> Self {
        let mut t = TernaryForm::zero(0);
        t.add_term([0, 0, 0], c);
        t
    }

    /// `a0 x + a1 y + a2 z`.
    pub fn linear(a: [Gf; 3]) -> Self {
        let mut t = TernaryForm::zero(1);
        for (i, c) in a.into_iter().enumerate() {
            let mut e = [0; 3];
            e[i] = 1;
            t.add_term(e, c);
        }
        t
    }

    /// Builds a form from a coefficient map; all monomials must share one degree.
    pub fn from_terms(degree: u8, terms: impl IntoIterator<Item = ([u8; 3], Gf)>) -> Result<Self> {
        let mut t = TernaryForm::zero(degree);
        for (e, c) in terms {
            if e.iter().sum::<u8>() != degree {
                return Err(usage!("monomial {e:?} does not have degree {degree}"));
            }
            t.add_term(e, c);
        }
        Ok(t)
    }

    fn add_term(&mut self, e: [u8; 3], c: Gf) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert(Gf::ZERO);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: [u8; 3]) -> Gf {
        self.terms.get(&e).copied().unwrap_or(Gf::ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = ([u8; 3], Gf)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    pub fn add(&self, other: &TernaryForm) -> TernaryForm {
        debug_assert!(self.is_zero() || other.is_zero() || self.degree == other.degree);
        let mut out = self.clone();
        if out.is_zero() {
            out.degree = other.degree;
        }
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn mul(&self, f: &Field, other: &TernaryForm) -> TernaryForm {
        let mut out = TernaryForm::zero(self.degree + other.degree);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], f.mul(ca, cb));
            }
        }
        out
    }

    pub fn scale(&self, f: &Field, s: Gf) -> TernaryForm {
        let mut out = TernaryForm::zero(self.degree);
        for (e, c) in self.terms() {
            out.add_term(e, f.mul(c, s));
        }
        out
    }

    pub fn eval(&self, f: &Field, p: &[Gf; 3]) -> Gf {
        let mut acc = Gf::ZERO;
        for (e, c) in self.terms() {
            let mut t = c;
            for i in 0..3 {
                t = f.mul(t, f.pow(p[i], e[i] as u64));
            }
            acc += t;
        }
        acc
    }

    /// The form `F(T (x, y, z)^T)`.
    pub fn substitute(&self, f: &Field, t: &[[Gf; 3]; 3]) -> TernaryForm {
        let images: Vec<TernaryForm> = t.iter().map(|row| TernaryForm::linear(*row)).collect();
        let mut out = TernaryForm::zero(self.degree);
        for (e, c) in self.terms() {
            let mut term = TernaryForm::constant(c);
            for (i, img) in images.iter().enumerate() {
                for _ in 0..e[i] {
                    term = term.mul(f, img);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Exact division by the linear form with coefficients `l`; `None` when
    /// `l` does not divide the form.
    pub fn div_linear(&self, f: &Field, l: &[Gf; 3]) -> Option<TernaryForm> {
        let v = l.iter().position(|c| !c.is_zero())?;
        if self.degree == 0 {
            return self.is_zero().then(|| TernaryForm::zero(0));
        }
        let lead_inv = f.inv_nonzero(l[v]);
        let mut rem = self.clone();
        let mut quot = TernaryForm::zero(self.degree - 1);
        loop {
            let top = rem.terms().filter(|(e, _)| e[v] > 0).max_by_key(|(e, _)| (e[v], *e));
            let Some((e, c)) = top else { break };
            let mut qe = e;
            qe[v] -= 1;
            let qc = f.mul(c, lead_inv);
            quot.add_term(qe, qc);
            for (i, li) in l.iter().enumerate() {
                let mut me = qe;
                me[i] += 1;
                rem.add_term(me, f.mul(qc, *li));
            }
        }
        rem.is_zero().then_some(quot)
    }

    /// Number of points of PG(2, q) on the curve.
    pub fn rational_points(&self, v: &Veronese) -> usize {
        let f = v.field();
        v.plane_points().iter().filter(|p| self.eval(f, p.coords()).is_zero()).count()
    }
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(fm, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(fm, " + ")?;
            }
            first = false;
            let mut parts = Vec::new();
            if *c != Gf::ONE || e.iter().all(|k| *k == 0) {
                parts.push(c.to_string());
            }
            for (name, k) in ["x", "y", "z"].iter().zip(e) {
                match k {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    k => parts.push(format!("{name}^{k}")),
                }
            }
            write!(fm, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// The symbolic matrix `x B1 + y B2 + z B3` of a plane with basis rows `B_i`,
/// as linear forms.
pub fn symbolic_matrix(s: &Subspace<6>) -> Result<[[[Gf; 3]; 3]; 3]> {
    require_plane(s)?;
    let mut m = [[[Gf::ZERO; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for (k, row) in s.rows().iter().enumerate() {
                m[i][j][k] = row[SYM_INDEX[i][j]];
            }
        }
    }
    Ok(m)
}

/// Determinant of the symbolic matrix of the plane, in the parameters of its
/// RREF basis. May be the zero form.
pub fn cubic_form(f: &Field, s: &Subspace<6>) -> Result<TernaryCubic> {
    let m = symbolic_matrix(s)?;
    let e = |i: usize, j: usize| TernaryForm::linear(m[i][j]);
    let prod =
        |a: (usize, usize), b: (usize, usize), c: (usize, usize)| e(a.0, a.1).mul(f, &e(b.0, b.1)).mul(f, &e(c.0, c.1));
    // characteristic 2: every permutation enters with sign +1
    let terms = [
        prod((0, 0), (1, 1), (2, 2)),
        prod((0, 0), (1, 2), (2, 1)),
        prod((0, 1), (1, 0), (2, 2)),
        prod((0, 1), (1, 2), (2, 0)),
        prod((0, 2), (1, 0), (2, 1)),
        prod((0, 2), (1, 1), (2, 0)),
    ];
    Ok(terms.iter().fold(TernaryForm::zero(3), |acc, t| acc.add(t)))
}

/// Geometric type of a nonzero plane cubic over GF(q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CubicType {
    TripleLine,
    LinePlusDoubleLine,
    ThreeConcurrentLines,
    ThreeNonConcurrentLines,
    LinePlusImaginaryPair,
    #[serde(rename = "LinePlusConic_Tangent")]
    LinePlusConicTangent,
    #[serde(rename = "LinePlusConic_Transversal")]
    LinePlusConicTransversal,
    IrreducibleCubic,
    NoRationalComponentPoint,
}

impl fmt::Display for CubicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CubicType::LinePlusConicTangent => "LinePlusConic_Tangent",
            CubicType::LinePlusConicTransversal => "LinePlusConic_Transversal",
            other => return write!(f, "{other:?}"),
        };
        f.write_str(s)
    }
}

/// Cubic type together with the number of rational points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CubicSummary {
    #[serde(rename = "type")]
    pub kind: CubicType,
    pub points: u64,
}

fn quadratic_of(t: &TernaryForm) -> QuadraticForm {
    let mut a = [Gf::ZERO; 6];
    for (e, c) in t.terms() {
        let mut idx = (0..3).flat_map(|i| std::iter::repeat_n(i, e[i] as usize));
        let (i, j) = (idx.next().unwrap(), idx.next().unwrap());
        a[SYM_INDEX[i][j]] += c;
    }
    QuadraticForm(a)
}

/// An invertible matrix whose last column is `p`.
fn frame_with_last_column(p: &[Gf; 3]) -> [[Gf; 3]; 3] {
    let k = p.iter().position(|c| !c.is_zero()).expect("nonzero");
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let mut t = [[Gf::ZERO; 3]; 3];
    t[others[0]][0] = Gf::ONE;
    t[others[1]][1] = Gf::ONE;
    for i in 0..3 {
        t[i][2] = p[i];
    }
    t
}

/// Classifies a nonzero cubic by extracting rational linear factors and
/// looking at what is left.
pub fn cubic_type(v: &Veronese, c: &TernaryCubic) -> Result<CubicSummary> {
    let f = v.field();
    if c.is_zero() || c.degree() != 3 {
        return Err(usage!("cubic_type needs a nonzero cubic"));
    }
    let points = c.rational_points(v) as u64;
    let mut factors: Vec<[Gf; 3]> = Vec::new();
    let mut rest = c.clone();
    'outer: while rest.degree() > 0 {
        for l in v.lines() {
            if let Some(qt) = rest.div_linear(f, l.coeffs()) {
                factors.push(*l.coeffs());
                rest = qt;
                continue 'outer;
            }
        }
        break;
    }
    let kind = match factors.len() {
        3 => {
            let (a, b, c3) = (factors[0], factors[1], factors[2]);
            if a == b && b == c3 {
                CubicType::TripleLine
            } else if a == b || b == c3 || a == c3 {
                CubicType::LinePlusDoubleLine
            } else if Subspace::<3>::from_rows(f, [&a, &b, &c3]).rank() == 2 {
                CubicType::ThreeConcurrentLines
            } else {
                CubicType::ThreeNonConcurrentLines
            }
        }
        1 => {
            let q = quadratic_of(&rest);
            match crate::veronese::classify_conic(f, &q)? {
                ConicType::ImaginaryPair => CubicType::LinePlusImaginaryPair,
                ConicType::Nonsingular => {
                    if conic_tangent_to(f, &q, &factors[0]) {
                        CubicType::LinePlusConicTangent
                    } else {
                        CubicType::LinePlusConicTransversal
                    }
                }
                t => return Err(internal!("residual conic {q} of type {t:?} has a rational linear factor")),
            }
        }
        0 => {
            let on_curve: Vec<&Point<3>> =
                v.plane_points().iter().filter(|p| c.eval(f, p.coords()).is_zero()).collect();
            let cone = on_curve.iter().any(|p| {
                let t = frame_with_last_column(p.coords());
                c.substitute(f, &t).terms().all(|(e, _)| e[2] == 0)
            });
            // no rational linear factor, so anything but a cone is irreducible,
            // possibly without rational points (q = 2)
            if cone {
                CubicType::NoRationalComponentPoint
            } else {
                CubicType::IrreducibleCubic
            }
        }
        _ => return Err(internal!("cubic {c} left a linear residual")),
    };
    Ok(CubicSummary { kind, points })
}

/// Whether the line `l` is tangent to the nonsingular conic `q`: the
/// restriction of `q` to `l` is a nonzero square.
fn conic_tangent_to(f: &Field, q: &QuadraticForm, l: &[Gf; 3]) -> bool {
    let line = crate::projgeom::hyperplane(f, l);
    let [p1, p2] = [line.rows()[0], line.rows()[1]];
    // q(s p1 + t p2) = q(p1) s^2 + B(p1, p2) s t + q(p2) t^2
    let mut sum = p1;
    for i in 0..3 {
        sum[i] += p2[i];
    }
    let cross = q.eval(f, &sum) + q.eval(f, &p1) + q.eval(f, &p2);
    cross.is_zero() && !(q.eval(f, &p1).is_zero() && q.eval(f, &p2).is_zero())
}

/// Composite invariant of a plane; constant along K-orbits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub meet_dim: i32,
    pub od0: Od0,
    /// `None` when the plane lies in the secant variety (zero cubic).
    pub cubic: Option<CubicSummary>,
    pub od4: Od4,
}

pub fn signature(v: &Veronese, s: &Subspace<6>) -> Result<Signature> {
    require_plane(s)?;
    let f = v.field();
    let cubic = cubic_form(f, s)?;
    let cubic = if cubic.is_zero() { None } else { Some(cubic_type(v, &cubic)?) };
    Ok(Signature { meet_dim: nucleus_meet_dim(f, s), od0: od0(v, s), cubic, od4: od4(v, s)? })
}

pub fn point_class_counts(v: &Veronese) -> [u64; 4] {
    let mut out = [0u64; 4];
    Subspace::<6>::full().for_each_point(v.field(), |p| {
        out[v.point_class_of(p).expect("nonzero").index()] += 1;
    });
    out
}

impl PointClass {
    /// Expected size of the class in PG(5, q).
    pub fn expected_count(self, q: u64) -> u64 {
        match self {
            PointClass::P1 | PointClass::P2N => q * q + q + 1,
            PointClass::P2S => (q * q - 1) * (q * q + q + 1),
            PointClass::P3 => q.pow(5) - q * q,
        }
    }
}
