//! The eighteen orbits of planes meeting the nucleus plane: representatives,
//! the plane classifier and the plane/net correspondence.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::action::{Action, Orbit};
use crate::error::{domain, internal, usage, Error, Result};
use crate::expr::{parse_polynomial, Params};
use crate::gf::{Field, Gf};
use crate::invariants::{
    cubic_form, cubic_type, h1, nucleus_meet_dim, signature, symbolic_matrix, CubicType, Od0, Signature,
};
use crate::projgeom::{Point, Subspace};
use crate::veronese::{nu_inverse, PointClass, QuadraticForm, Veronese, SYM_INDEX};

/// Default cap on the number of keys held by one orbit search.
pub const DEFAULT_BUDGET: usize = 40_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OrbitLabel {
    Sigma1,
    Sigma3,
    Sigma4,
    Sigma7,
    Sigma8,
    Sigma9,
    Sigma10,
    Sigma11,
    Sigma15,
    SigmaN,
    Sigma16,
    Sigma17,
    Sigma18,
    Sigma19,
    Sigma20,
    Sigma21,
    Sigma22,
    Sigma23,
}

use OrbitLabel::*;

impl OrbitLabel {
    pub const ALL: [OrbitLabel; 18] = [
        Sigma1, Sigma3, Sigma4, Sigma7, Sigma8, Sigma9, Sigma10, Sigma11, Sigma15, SigmaN, Sigma16, Sigma17, Sigma18,
        Sigma19, Sigma20, Sigma21, Sigma22, Sigma23,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// ASCII name, e.g. `Sigma18`.
    pub fn name(self) -> String {
        format!("{self:?}")
    }

    /// Name with the Greek letter, e.g. `Σ18`.
    pub fn symbol(self) -> String {
        self.name().replacen("Sigma", "Σ", 1)
    }

    /// Matrix pattern in `x, y, z` and the label's parameters; rows are
    /// separated by `;`, entries by whitespace.
    pub fn pattern(self) -> &'static str {
        match self {
            Sigma1 => "x y 0; y z 0; 0 0 0",
            Sigma3 => "x 0 z; 0 y 0; z 0 0",
            Sigma4 => "x 0 z; 0 y z; z z 0",
            Sigma7 => "x y z; y 0 0; z 0 0",
            Sigma8 => "x y 0; y 0 z; 0 z 0",
            Sigma9 => "x y 0; y z z; 0 z 0",
            Sigma10 => "x y 0; y z 0; 0 0 z",
            Sigma11 => "x y 0; y z z; 0 z x+z",
            Sigma15 => "x y z; y z 0; z 0 0",
            SigmaN => "0 x y; x 0 z; y z 0",
            Sigma16 => "0 x z; x z y; z y 0",
            Sigma17 => "0 x y; x z 0; y 0 z",
            Sigma18 => "x y z; y cz x+z; z x+z 0",
            Sigma19 => "x y 0; y y+z z; 0 z x",
            Sigma20 => "x y bx; y cx+y+z z; bx z x",
            Sigma21 => "x x+az 0; x+az z y; 0 y 0",
            Sigma22 => "x x+z z; x+z z y; z y 0",
            Sigma23 => "x az x; az z y; x y 0",
        }
    }

    /// The point-orbit distribution of the orbit as a function of q.
    pub fn expected_od0(self, q: u64) -> Od0 {
        let q2 = q * q;
        Od0(match self {
            Sigma1 => [q + 1, 1, q2 - 1, 0],
            SigmaN => [0, q2 + q + 1, 0, 0],
            Sigma3 | Sigma4 => [2, 1, 2 * q - 2, q2 - q],
            Sigma7 => [1, q + 1, q2 - 1, 0],
            Sigma8 => [1, q + 1, q - 1, q2 - q],
            Sigma9 | Sigma10 => [1, 1, 2 * q - 1, q2 - q],
            Sigma11 | Sigma15 => [1, 1, q - 1, q2],
            Sigma16 => [0, q + 1, 0, q2],
            Sigma17 => [0, q + 1, q, q2 - q],
            Sigma18 => [0, 1, 0, q2 + q],
            Sigma19 => [0, 1, 3 * q, q2 - 2 * q],
            Sigma20 | Sigma22 => [0, 1, q, q2],
            Sigma21 | Sigma23 => [0, 1, 2 * q, q2 - q],
        })
    }

    /// Cubic type stated for the orbit, where one is stated.
    pub fn expected_cubic(self) -> Option<CubicType> {
        match self {
            Sigma16 => Some(CubicType::TripleLine),
            Sigma17 | Sigma21 => Some(CubicType::LinePlusDoubleLine),
            Sigma18 => Some(CubicType::NoRationalComponentPoint),
            Sigma19 => Some(CubicType::ThreeConcurrentLines),
            Sigma20 => Some(CubicType::LinePlusImaginaryPair),
            Sigma22 => Some(CubicType::IrreducibleCubic),
            Sigma23 => Some(CubicType::LinePlusConicTangent),
            _ => None,
        }
    }

    /// Whether the corresponding net has no base points.
    pub fn empty_base(self) -> bool {
        self.expected_od0(4).r1() == 0
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for OrbitLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().replacen('Σ', "Sigma", 1).replace("_N", "N");
        OrbitLabel::ALL
            .into_iter()
            .find(|l| l.name().eq_ignore_ascii_case(&t))
            .ok_or_else(|| usage!("unknown orbit label {s:?}"))
    }
}

fn xyz(name: &str) -> Option<usize> {
    ["x", "y", "z"].iter().position(|v| *v == name)
}

/// Reads a symmetric 3x3 pattern of linear forms in `x, y, z` and returns
/// the plane spanned by the coefficient matrices of `x`, `y` and `z`.
pub fn plane_from_pattern(f: &Field, pattern: &str, params: &Params) -> Result<Subspace<6>> {
    let rows: Vec<Vec<&str>> = pattern.split(';').map(|r| r.split_whitespace().collect()).collect();
    if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
        return Err(usage!("pattern {pattern:?} is not a 3x3 matrix"));
    }
    let mut entries = [[[Gf::ZERO; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let terms = parse_polynomial(f, rows[i][j], 3, xyz, params)?;
            for (e, c) in terms {
                let k = match e.as_slice() {
                    [1, 0, 0] => 0,
                    [0, 1, 0] => 1,
                    [0, 0, 1] => 2,
                    _ => return Err(usage!("entry {:?} is not linear in x, y, z", rows[i][j])),
                };
                entries[i][j][k] = c;
            }
        }
    }
    for i in 0..3 {
        for j in 0..i {
            if entries[i][j] != entries[j][i] {
                return Err(usage!("pattern {pattern:?} is not symmetric"));
            }
        }
    }
    let mut basis = [[Gf::ZERO; 6]; 3];
    for (k, b) in basis.iter_mut().enumerate() {
        for (i, j) in [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)] {
            b[SYM_INDEX[i][j]] = entries[i][j][k];
        }
    }
    let s = Subspace::from_rows(f, &basis);
    if s.rank() != 3 {
        return Err(usage!("pattern {pattern:?} does not span a plane"));
    }
    Ok(s)
}

/// Pattern of a plane in its RREF parameters, entries as linear forms.
pub fn pattern_of_plane(s: &Subspace<6>) -> Result<[[String; 3]; 3]> {
    let m = symbolic_matrix(s)?;
    Ok(m.map(|row| row.map(|l| linear_string(&l))))
}

fn linear_string(l: &[Gf; 3]) -> String {
    let parts: Vec<String> = l
        .iter()
        .zip(["x", "y", "z"])
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, v)| if *c == Gf::ONE { v.to_string() } else { format!("{c}{v}") })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

/// First parameter assignment, in element order, satisfying the label's
/// constraints.
pub fn search_parameters(f: &Field, label: OrbitLabel) -> Result<Params> {
    let one_param = |name: &str, ok: &dyn Fn(Gf) -> bool| -> Result<Params> {
        f.elements()
            .find(|&a| ok(a))
            .map(|a| Params::from([(name.to_string(), a)]))
            .ok_or_else(|| Error::Configuration(format!("no admissible {name} for {label} over GF({})", f.order())))
    };
    match label {
        Sigma18 => one_param("c", &|c| {
            !c.is_zero()
                && f.univariate_roots(&[c, Gf::ONE, Gf::ZERO, Gf::ONE]).is_ok_and(|r| r.is_empty())
                && f.trace(f.inv_nonzero(c)) == f.trace(Gf::ONE)
        }),
        Sigma20 => {
            for b in f.elements().filter(|&b| b != Gf::ONE) {
                let d = f.inv_nonzero(Gf::ONE + f.square(b));
                if let Some(c) = f.elements().find(|&c| f.trace(f.mul(c, d)) == 1) {
                    return Ok(Params::from([("b".to_string(), b), ("c".to_string(), c)]));
                }
            }
            Err(Error::Configuration(format!("no admissible (b, c) for {label} over GF({})", f.order())))
        }
        Sigma21 | Sigma23 => one_param("a", &|a| f.trace(a) == 1),
        _ => Ok(Params::new()),
    }
}

/// An instantiated orbit representative.
#[derive(Clone, Debug)]
pub struct Representative {
    pub label: OrbitLabel,
    pub plane: Subspace<6>,
    pub params: Params,
    pub signature: Signature,
}

/// Instantiates and validates the representative of `label`.
pub fn representative(v: &Veronese, label: OrbitLabel) -> Result<Representative> {
    let f = v.field();
    let params = search_parameters(f, label)?;
    let plane = plane_from_pattern(f, label.pattern(), &params)?;
    let signature = signature(v, &plane)?;
    let expected = label.expected_od0(v.q() as u64);
    if signature.od0 != expected {
        return Err(Error::Verification(format!(
            "{label} representative has OD0 {} instead of {expected}",
            signature.od0
        )));
    }
    if let Some(kind) = label.expected_cubic() {
        let got = signature.cubic.map(|c| c.kind);
        if got != Some(kind) {
            return Err(Error::Verification(format!("{label} representative has cubic {got:?} instead of {kind}")));
        }
    }
    Ok(Representative { label, plane, params, signature })
}

/// Result of classifying one plane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub label: OrbitLabel,
    pub signature: Signature,
    /// Whether orbit membership had to decide between equal signatures.
    pub by_membership: bool,
}

/// Representatives, the signature table and (lazily) the orbit key sets.
pub struct Atlas<'v> {
    v: &'v Veronese,
    action: Action<'v>,
    reps: Vec<Representative>,
    table: BTreeMap<Signature, Vec<OrbitLabel>>,
    orbits: OnceLock<Result<Vec<Orbit>>>,
    budget: usize,
}

impl<'v> Atlas<'v> {
    pub fn new(v: &'v Veronese) -> Result<Self> {
        Self::with_budget(v, DEFAULT_BUDGET)
    }

    pub fn with_budget(v: &'v Veronese, budget: usize) -> Result<Self> {
        let reps = OrbitLabel::ALL.iter().map(|&l| representative(v, l)).collect::<Result<Vec<_>>>()?;
        let mut table: BTreeMap<Signature, Vec<OrbitLabel>> = BTreeMap::new();
        for r in &reps {
            table.entry(r.signature).or_default().push(r.label);
        }
        Ok(Atlas { v, action: Action::new(v), reps, table, orbits: OnceLock::new(), budget })
    }

    pub fn veronese(&self) -> &Veronese {
        self.v
    }

    pub fn action(&self) -> &Action<'v> {
        &self.action
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn representatives(&self) -> &[Representative] {
        &self.reps
    }

    pub fn representative(&self, label: OrbitLabel) -> &Representative {
        &self.reps[label.index()]
    }

    /// Groups of labels whose representatives share a signature.
    pub fn ambiguous_groups(&self) -> Vec<Vec<OrbitLabel>> {
        self.table.values().filter(|l| l.len() > 1).cloned().collect()
    }

    /// Orbit key sets of all eighteen representatives, computed once.
    pub fn orbits(&self) -> Result<&[Orbit]> {
        let r =
            self.orbits.get_or_init(|| self.reps.iter().map(|r| self.action.orbit(&r.plane, self.budget)).collect());
        r.as_deref().map_err(Clone::clone)
    }

    /// Assigns an orbit label to a plane meeting the nucleus plane.
    pub fn classify(&self, s: &Subspace<6>) -> Result<Classification> {
        let f = self.v.field();
        if s.rank() != 3 {
            return Err(usage!("expected a plane, got a subspace of rank {}", s.rank()));
        }
        if nucleus_meet_dim(f, s) < 0 {
            return Err(Error::OutOfFamily(s.hex_key()));
        }
        let sig = signature(self.v, s)?;
        let labels = self
            .table
            .get(&sig)
            .ok_or_else(|| internal!("plane {} has signature {sig:?} matching no orbit", s.hex_key()))?;
        if let [label] = labels.as_slice() {
            return Ok(Classification { label: *label, signature: sig, by_membership: false });
        }
        let label = self.resolve_by_membership(s, labels)?;
        Ok(Classification { label, signature: sig, by_membership: true })
    }

    fn resolve_by_membership(&self, s: &Subspace<6>, labels: &[OrbitLabel]) -> Result<OrbitLabel> {
        let hits: Vec<OrbitLabel> = if self.v.q() <= 4 {
            let orbits = self.orbits()?;
            let e = self.v.field().degree();
            labels.iter().copied().filter(|l| orbits[l.index()].contains(e, s)).collect()
        } else {
            let mut hits = Vec::new();
            for &l in labels {
                if self.action.k_equivalent(&self.reps[l.index()].plane, s, self.budget)? {
                    hits.push(l);
                }
            }
            hits
        };
        match hits.as_slice() {
            [l] => Ok(*l),
            [] => Err(internal!("plane {} lies in none of the orbits {labels:?}", s.hex_key())),
            _ => Err(internal!("plane {} lies in several orbits {hits:?}", s.hex_key())),
        }
    }
}

/// A net of conics, stored as an RREF basis of coefficient vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Net(pub [QuadraticForm; 3]);

impl Net {
    /// The net spanned by three forms; fails unless they are independent.
    pub fn new(f: &Field, forms: &[QuadraticForm; 3]) -> Result<Net> {
        let s = Subspace::<6>::from_rows(f, forms.iter().map(|q| q.coeffs()));
        if s.rank() != 3 {
            return Err(usage!("the forms span a space of dimension {}, not a net", s.rank()));
        }
        Ok(Net([0, 1, 2].map(|i| QuadraticForm(s.rows()[i]))))
    }

    pub fn forms(&self) -> &[QuadraticForm; 3] {
        &self.0
    }

    fn space(&self, f: &Field) -> Subspace<6> {
        Subspace::from_rows(f, self.0.iter().map(|q| q.coeffs()))
    }

    /// Number of double lines in the net (projectively).
    pub fn double_lines(&self, f: &Field) -> u64 {
        let mut n = 0;
        self.space(f).for_each_point(f, |a| {
            if QuadraticForm(*a).is_double_line() {
                n += 1;
            }
        });
        n
    }

    /// Common zeros of the forms.
    pub fn base_points(&self, v: &Veronese) -> Vec<Point<3>> {
        let f = v.field();
        v.plane_points().iter().filter(|p| self.0.iter().all(|q| q.eval(f, p.coords()).is_zero())).copied().collect()
    }
}

impl fmt::Display for Net {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}, {}>", self.0[0], self.0[1], self.0[2])
    }
}

/// The forms whose hyperplanes contain the plane.
pub fn net_of_plane(f: &Field, s: &Subspace<6>) -> Result<Net> {
    if s.rank() != 3 {
        return Err(usage!("expected a plane, got a subspace of rank {}", s.rank()));
    }
    let ann = s.annihilator(f);
    Ok(Net([0, 1, 2].map(|i| QuadraticForm(ann.rows()[i]))))
}

/// Meet of the three hyperplanes of the net.
pub fn plane_of_net(f: &Field, net: &Net) -> Subspace<6> {
    net.space(f).annihilator(f)
}

/// Preimages of the rank-1 points of the plane.
pub fn base_points_of_plane(v: &Veronese, s: &Subspace<6>) -> Result<Vec<Point<3>>> {
    let mut out = Vec::new();
    for p in s.points(v.field()) {
        if v.point_class(&p) == PointClass::P1 {
            out.push(nu_inverse(v.field(), &p)?);
        }
    }
    out.sort();
    Ok(out)
}

/// Number of double lines in the net of a plane.
pub fn double_line_count(f: &Field, s: &Subspace<6>) -> u64 {
    h1(f, s)
}

/// Reads a plane given as three basis rows of six field elements each.
pub fn plane_from_rows(f: &Field, rows: &[Vec<u64>]) -> Result<Subspace<6>> {
    if rows.len() != 3 || rows.iter().any(|r| r.len() != 6) {
        return Err(usage!("a plane needs 3 rows of 6 entries"));
    }
    let mut basis = [[Gf::ZERO; 6]; 3];
    for (b, r) in basis.iter_mut().zip(rows) {
        for (c, x) in b.iter_mut().zip(r) {
            *c = f.element(*x)?;
        }
    }
    let s = Subspace::from_rows(f, &basis);
    if s.rank() != 3 {
        return Err(domain!("the rows span a subspace of rank {}", s.rank()));
    }
    Ok(s)
}

/// Cubic summary of a plane, `None` for planes in the secant variety.
pub fn cubic_of_plane(v: &Veronese, s: &Subspace<6>) -> Result<Option<crate::invariants::CubicSummary>> {
    let c = cubic_form(v.field(), s)?;
    if c.is_zero() {
        Ok(None)
    } else {
        cubic_type(v, &c).map(Some)
    }
}
