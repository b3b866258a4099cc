//! Verification suites and their reports.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::action::{filter_group, group_order, GroupElement, Lifted};
use crate::atlas::{
    base_points_of_plane, net_of_plane, pattern_of_plane, plane_of_net, Atlas, Net, OrbitLabel, Representative,
};
use crate::error::{usage, Error, Result};
use crate::expr::Params;
use crate::gf::{Field, Gf};
use crate::invariants::{h1, nucleus_meet_dim, od0, od4, r2n, CubicType, Od0, Od4};
use crate::par;
use crate::projgeom::{gaussian_binomial, hyperplane, Point, Subspace, SubspaceEnumerator};
use crate::veronese::{QuadraticForm, Veronese};

pub const SCHEMA: &str = "veronese-nets/report/v1";

/// Sample size for the q = 8 rank/double-line check.
pub const RANK_IDENTITY_SAMPLES: u64 = 100_000;
pub const RANK_IDENTITY_SEED: u64 = 0x5eed_cafe;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, details: impl Into<String>) -> Self {
        Check { name: name.into(), pass, details: details.into() }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(name: impl Into<String>, got: T, want: T) -> Self {
        let pass = got == want;
        Check::new(name, pass, format!("got {got:?}, expected {want:?}"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitRecord {
    pub label: OrbitLabel,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilizer_order: Option<u64>,
    pub od0: Od0,
    pub od4: Od4,
    pub cubic_type: Option<CubicType>,
    pub cubic_points: Option<u64>,
    pub empty_base: bool,
    pub representative_matrix: [[String; 3]; 3],
    pub representative_key: String,
    pub parameters: BTreeMap<String, u8>,
}

impl OrbitRecord {
    fn of(r: &Representative, size: Option<u64>, group: u64) -> Result<Self> {
        Ok(OrbitRecord {
            label: r.label,
            size,
            stabilizer_order: size.map(|s| group / s),
            od0: r.signature.od0,
            od4: r.signature.od4,
            cubic_type: r.signature.cubic.map(|c| c.kind),
            cubic_points: r.signature.cubic.map(|c| c.points),
            empty_base: r.signature.od0.r1() == 0,
            representative_matrix: pattern_of_plane(&r.plane)?,
            representative_key: r.plane.hex_key(),
            parameters: params_json(&r.params),
        })
    }
}

fn params_json(p: &Params) -> BTreeMap<String, u8> {
    p.iter().map(|(k, v)| (k.clone(), v.0)).collect()
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Totals {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub planes_meeting_nucleus_plane: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_size_sum: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbits: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empty_base: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub planes_checked: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub suite: String,
    pub q: usize,
    pub modulus: String,
    pub orbits: Vec<OrbitRecord>,
    pub totals: Totals,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(suite: &str, f: &Field) -> Self {
        Report {
            schema: SCHEMA,
            suite: suite.into(),
            q: f.order(),
            modulus: format!("{:#x}", f.spec().modulus()),
            orbits: Vec::new(),
            totals: Totals::default(),
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Number of planes of PG(5, q) meeting a fixed plane.
pub fn planes_meeting_nucleus_plane(q: u64) -> u64 {
    gaussian_binomial(6, 3, q) as u64 - q.pow(9)
}

/// How the partition is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionMode {
    /// Classify every plane meeting the nucleus plane.
    Exhaustive,
    /// Orbit sizes, pairwise inequivalence of representatives, and the count.
    Representative,
}

impl PartitionMode {
    /// Exhaustive for q <= 4, representative-based above.
    pub fn default_for(q: usize) -> Self {
        if q <= 4 {
            PartitionMode::Exhaustive
        } else {
            PartitionMode::Representative
        }
    }
}

fn common_orbit_checks(report: &mut Report, atlas: &Atlas, sizes: &[u64]) {
    let q = atlas.veronese().q() as u64;
    let expected = planes_meeting_nucleus_plane(q);
    let sum: u64 = sizes.iter().sum();
    let group = group_order(q);
    report.totals.planes_meeting_nucleus_plane = Some(expected);
    report.totals.orbit_size_sum = Some(sum);
    report.totals.orbits = Some(sizes.len() as u64);
    report.checks.push(Check::eq("orbit sizes sum to the planes meeting the nucleus plane", sum, expected));
    let bad: Vec<String> = atlas
        .representatives()
        .iter()
        .zip(sizes)
        .filter(|(_, s)| !group.is_multiple_of(**s))
        .map(|(r, s)| format!("{}:{s}", r.label))
        .collect();
    report.checks.push(Check::new("orbit sizes divide |PGL(3,q)|", bad.is_empty(), bad.join(", ")));
    let od0_bad: Vec<String> = atlas
        .representatives()
        .iter()
        .filter(|r| r.signature.od0 != r.label.expected_od0(q))
        .map(|r| r.label.to_string())
        .collect();
    report.checks.push(Check::new("OD0 of every orbit matches its formula", od0_bad.is_empty(), od0_bad.join(", ")));
    let empty = atlas.representatives().iter().filter(|r| r.signature.od0.r1() == 0).count() as u64;
    report.totals.empty_base = Some(empty);
    report.checks.push(Check::eq("orbits with empty base", empty, 9));
}

/// Checks that the eighteen orbits partition the planes meeting the
/// nucleus plane.
pub fn verify_partition(atlas: &Atlas, mode: PartitionMode) -> Result<Report> {
    let v = atlas.veronese();
    let f = v.field();
    let q = v.q() as u64;
    let e = f.degree();
    let group = group_order(q);
    let mut report = Report::new("partition", f);
    match mode {
        PartitionMode::Exhaustive => {
            let orbits = atlas.orbits()?;
            let sizes: Vec<u64> = orbits.iter().map(|o| o.len() as u64).collect();
            let mut owner: HashMap<u64, u8> = HashMap::with_capacity(sizes.iter().sum::<u64>() as usize);
            let mut overlaps = Vec::new();
            for (i, o) in orbits.iter().enumerate() {
                for &k in &o.keys {
                    if let Some(prev) = owner.insert(k, i as u8) {
                        overlaps.push(format!(
                            "{} in {} and {}",
                            k,
                            OrbitLabel::ALL[prev as usize],
                            OrbitLabel::ALL[i]
                        ));
                    }
                }
            }
            overlaps.truncate(5);
            report.checks.push(Check::new("orbits are pairwise disjoint", overlaps.is_empty(), overlaps.join("; ")));

            let planes = SubspaceEnumerator::<6>::new(f, 3)?;
            #[derive(Default)]
            struct Tally {
                family: u64,
                per_label: [u64; 18],
                missing: Vec<String>,
                mismatched: Vec<String>,
                errors: Vec<String>,
            }
            let merge = |mut a: Tally, b: Tally| {
                a.family += b.family;
                for i in 0..18 {
                    a.per_label[i] += b.per_label[i];
                }
                for (x, y) in
                    [(&mut a.missing, b.missing), (&mut a.mismatched, b.mismatched), (&mut a.errors, b.errors)]
                {
                    x.extend(y);
                    x.truncate(5);
                }
                a
            };
            let tally = par::fold_chunks(
                planes.len() as usize,
                1 << 12,
                Tally::default,
                |mut t, i| {
                    let s = planes.get(i as u64);
                    if nucleus_meet_dim(f, &s) < 0 {
                        return t;
                    }
                    t.family += 1;
                    let key = s.pack(e).expect("planes fit for q <= 8");
                    let Some(&orbit) = owner.get(&key) else {
                        t.missing.push(s.hex_key());
                        return t;
                    };
                    match atlas.classify(&s) {
                        Ok(c) if c.label.index() == orbit as usize => t.per_label[orbit as usize] += 1,
                        Ok(c) => t.mismatched.push(format!(
                            "{} classified {} but lies in {}",
                            s.hex_key(),
                            c.label,
                            OrbitLabel::ALL[orbit as usize]
                        )),
                        Err(err) => t.errors.push(format!("{}: {err}", s.hex_key())),
                    }
                    t
                },
                merge,
            );
            let expected = planes_meeting_nucleus_plane(q);
            report.totals.planes_checked = Some(tally.family);
            report.checks.push(Check::eq("planes meeting the nucleus plane (enumerated)", tally.family, expected));
            report.checks.push(Check::new(
                "every plane lies in one of the orbits",
                tally.missing.is_empty(),
                tally.missing.join("; "),
            ));
            report.checks.push(Check::new(
                "classifier agrees with orbit membership",
                tally.mismatched.is_empty() && tally.errors.is_empty(),
                [tally.mismatched, tally.errors].concat().join("; "),
            ));
            report.checks.push(Check::eq(
                "classified counts equal orbit sizes",
                tally.per_label.to_vec(),
                sizes.clone(),
            ));
            common_orbit_checks(&mut report, atlas, &sizes);
            for (r, s) in atlas.representatives().iter().zip(&sizes) {
                report.orbits.push(OrbitRecord::of(r, Some(*s), group)?);
            }
        }
        PartitionMode::Representative => {
            let reps = atlas.representatives();
            let keys: Vec<u64> = reps
                .iter()
                .map(|r| r.plane.pack(e).ok_or_else(|| usage!("orbit keys need q <= 8")))
                .collect::<Result<_>>()?;
            let mut sizes = Vec::new();
            let mut clashes = Vec::new();
            for (i, r) in reps.iter().enumerate() {
                let orbit = atlas.action().orbit(&r.plane, atlas.budget())?;
                for (j, k) in keys.iter().enumerate() {
                    if j != i && orbit.keys.contains(k) {
                        clashes.push(format!("{} ~ {}", r.label, reps[j].label));
                    }
                }
                sizes.push(orbit.len() as u64);
            }
            report.checks.push(Check::new(
                "representatives are pairwise inequivalent",
                clashes.is_empty(),
                clashes.join("; "),
            ));
            common_orbit_checks(&mut report, atlas, &sizes);
            for (r, s) in reps.iter().zip(&sizes) {
                report.orbits.push(OrbitRecord::of(r, Some(*s), group)?);
            }
        }
    }
    Ok(report)
}

/// Representative OD0 rows, stated cubic types and the empty-base count.
pub fn verify_representatives(atlas: &Atlas) -> Result<Report> {
    let v = atlas.veronese();
    let f = v.field();
    let q = v.q() as u64;
    let mut report = Report::new("representatives", f);
    for r in atlas.representatives() {
        report.checks.push(Check::eq(format!("{} OD0", r.label), r.signature.od0, r.label.expected_od0(q)));
        if let Some(kind) = r.label.expected_cubic() {
            report.checks.push(Check::eq(
                format!("{} cubic type", r.label),
                r.signature.cubic.map(|c| c.kind),
                Some(kind),
            ));
        }
        report.checks.push(Check::eq(format!("{} OD4 total", r.label), r.signature.od4.total(), q * q + q + 1));
        report.orbits.push(OrbitRecord::of(r, None, group_order(q))?);
    }
    let c18 = atlas.representative(OrbitLabel::Sigma18).signature.cubic.map(|c| c.points);
    report.checks.push(Check::eq("Sigma18 cubic has one rational point", c18, Some(1)));
    let empty = atlas.representatives().iter().filter(|r| r.signature.od0.r1() == 0).count() as u64;
    report.totals.empty_base = Some(empty);
    report.checks.push(Check::eq("orbits with empty base", empty, 9));
    let ambiguous: Vec<String> = atlas
        .ambiguous_groups()
        .iter()
        .map(|g| g.iter().map(|l| l.to_string()).collect::<Vec<_>>().join("/"))
        .collect();
    report.checks.push(Check::new(
        "signature collisions (resolved by orbit membership)",
        true,
        if ambiguous.is_empty() { "none".into() } else { ambiguous.join(", ") },
    ));
    Ok(report)
}

/// `r2n = h1` over all planes (q <= 4) or a seeded uniform sample.
pub fn verify_rank_identity(v: &Veronese, samples: Option<u64>, seed: u64) -> Result<Report> {
    let f = v.field();
    let q = v.q();
    let mut report = Report::new("rank-identity", f);
    let planes = SubspaceEnumerator::<6>::new(f, 3)?;
    let indices: Option<Vec<u64>> = match samples {
        None if q <= 4 => None,
        None => Some(sample_indices(planes.len(), RANK_IDENTITY_SAMPLES, seed)),
        Some(n) => Some(sample_indices(planes.len(), n, seed)),
    };
    let n = indices.as_ref().map_or(planes.len(), |v| v.len() as u64) as usize;
    let (count, bad) = par::fold_chunks(
        n,
        1 << 12,
        || (0u64, Vec::new()),
        |(mut count, mut bad): (u64, Vec<String>), i| {
            let idx = indices.as_ref().map_or(i as u64, |v| v[i]);
            let s = planes.get(idx);
            let (a, b) = (r2n(f, &s), h1(f, &s));
            if a != b {
                count += 1;
                if bad.len() < 5 {
                    bad.push(format!("{} r2n={a} h1={b}", s.hex_key()));
                }
            }
            (count, bad)
        },
        |(c1, mut b1), (c2, b2)| {
            b1.extend(b2);
            b1.truncate(5);
            (c1 + c2, b1)
        },
    );
    report.totals.planes_checked = Some(n as u64);
    let how =
        if indices.is_some() { format!("{n} sampled planes (seed {seed:#x})") } else { format!("all {n} planes") };
    let details = if count == 0 {
        format!("{how}, no violations")
    } else {
        format!("{how}, {count} violations, e.g. {}", bad.join("; "))
    };
    if q < 4 {
        report.checks.push(Check::new("r2n = h1 (informational below q = 4)", true, details));
    } else {
        report.checks.push(Check::new("r2n = h1", count == 0, details));
    }
    Ok(report)
}

fn sample_indices(len: u64, n: u64, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(0..len)).collect()
}

/// Partition of `items` into orbits of the group generated by `elements`
/// (which must already be closed under composition, or generate the group).
pub fn orbits_on(f: &Field, elements: &[GroupElement], items: &[Subspace<6>]) -> Result<Vec<Vec<usize>>> {
    let lifted: Vec<Lifted> = elements.iter().map(|g| g.lift(f)).collect();
    let index: HashMap<Subspace<6>, usize> = items.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut seen = vec![false; items.len()];
    let mut out = Vec::new();
    for start in 0..items.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            let s = items[orbit[i]];
            for g in &lifted {
                let img = g.act_subspace(f, &s);
                let j = *index
                    .get(&img)
                    .ok_or_else(|| Error::Verification(format!("{} leaves the line set", img.hex_key())))?;
                if !seen[j] {
                    seen[j] = true;
                    orbit.push(j);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    Ok(out)
}

fn vec6(v: [u8; 6]) -> [Gf; 6] {
    v.map(Gf)
}

fn line(f: &Field, a: [u8; 6], b: [u8; 6]) -> Subspace<6> {
    Subspace::from_rows(f, &[vec6(a), vec6(b)])
}

/// Whether `g` maps the point `p` to itself.
fn fixes_point(f: &Field, g: &GroupElement, p: &[Gf; 6]) -> bool {
    let img = g.act_vector(f, p);
    Point::normalize(f, img).ok().map(|x| *x.coords()) == Some(*p)
}

fn fixes_subspace(f: &Field, g: &GroupElement, s: &Subspace<6>) -> bool {
    s.rows().iter().all(|r| s.contains(f, &g.act_vector(f, r)))
}

/// Lines through `p` inside `s`.
fn lines_through(f: &Field, p: &[Gf; 6], s: &Subspace<6>) -> Vec<Subspace<6>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in s.points(f) {
        if x.coords() == p {
            continue;
        }
        let l = Subspace::from_rows(f, [p, x.coords()]);
        if seen.insert(l) {
            out.push(l);
        }
    }
    out
}

/// Brute-force group checks: the three orbits on lines through a rank-2
/// point of a conic plane, the two orbits of lines through a nucleus-plane
/// point, and the line stabilizers behind the Sigma19/Sigma20 counts.
pub fn verify_lemmas(atlas: &Atlas) -> Result<Report> {
    let v = atlas.veronese();
    let f = v.field();
    let q = v.q() as u64;
    if q < 4 {
        return Err(usage!("the lemma suite needs q >= 4"));
    }
    let mut report = Report::new("lemmas", f);

    // stabilizer of the line M = [[0,x,0],[x,x+y,y],[0,y,0]] and R = (0,1,0,1,0,0)
    let ell = line(f, [0, 1, 0, 1, 0, 0], [0, 0, 0, 1, 1, 0]);
    let r = vec6([0, 1, 0, 1, 0, 0]);
    let k_lr = filter_group(f, |g| fixes_point(f, g, &r) && fixes_subspace(f, g, &ell));
    let (_, conic_plane) = v.conic_plane_of(&Point::normalize(f, r)?)?;
    let pencil = lines_through(f, &r, &conic_plane);
    let orbits = orbits_on(f, &k_lr, &pencil)?;
    let mut kinds: Vec<(usize, usize)> = Vec::new();
    let mut homogeneous = true;
    for o in &orbits {
        let rank1 = |i: usize| od0(v, &pencil[i]).r1() as usize;
        let k = rank1(o[0]);
        homogeneous &= o.iter().all(|&i| rank1(i) == k);
        kinds.push((k, o.len()));
    }
    kinds.sort();
    let half = (q / 2) as usize;
    report.checks.push(Check::eq("lines through R in its conic plane", pencil.len(), q as usize + 1));
    report.checks.push(Check::eq(
        "orbits of K_{l,R}: (conic points, size) for external, tangent, secant",
        kinds.clone(),
        vec![(0, half), (1, 1), (2, half)],
    ));
    report.checks.push(Check::new(
        "each orbit has one tangency type",
        homogeneous,
        format!("|K_(l,R)| = {}", k_lr.len()),
    ));

    // two orbits of lines through P in H = Z(Y5), not in H(P) = Z(Y0)
    let p = vec6([0, 0, 0, 0, 1, 0]);
    let hp = hyperplane(f, &vec6([1, 0, 0, 0, 0, 0]));
    let h = hyperplane(f, &vec6([0, 0, 0, 0, 0, 1]));
    let k_ph = filter_group(f, |g| fixes_point(f, g, &p) && fixes_subspace(f, g, &h));
    let want = Od0([0, 1, 1, q - 1]);
    let candidates: Vec<Subspace<6>> =
        lines_through(f, &p, &h).into_iter().filter(|l| !hp.contains_subspace(f, l) && od0(v, l) == want).collect();
    let orbits = orbits_on(f, &k_ph, &candidates)?;
    report.checks.push(Check::eq("orbits of K_{P,H} on the lines of type [0,1,1,q-1]", orbits.len(), 2));
    let l1 = line(f, [1, 1, 0, 0, 0, 0], [0, 0, 0, 0, 1, 0]);
    let l2 = line(f, [1, 0, 1, 0, 0, 0], [0, 0, 0, 0, 1, 0]);
    let which = |l: &Subspace<6>| {
        let i = candidates.iter().position(|c| c == l)?;
        orbits.iter().position(|o| o.contains(&i))
    };
    let (o1, o2) = (which(&l1), which(&l2));
    report.checks.push(Check::new(
        "the two listed lines represent different orbits",
        o1.is_some() && o2.is_some() && o1 != o2,
        format!("orbit indices {o1:?}, {o2:?}; |K_(P,H)| = {}; {} lines", k_ph.len(), candidates.len()),
    ));

    // stabilizers of the two lines in H(P) = Z(Y0 + Y5), P = (0,1,0,0,1,0)
    let act = atlas.action();
    let budget = atlas.budget();
    let group = group_order(q);
    let l14 = line(f, [1, 0, 0, 0, 0, 1], [0, 1, 0, 1, 0, 0]);
    let sigma20 = &atlas.representative(OrbitLabel::Sigma20).params;
    let (b, c) = (sigma20["b"].0, sigma20["c"].0);
    let l15 = line(f, [1, 0, b, c, 0, 1], [0, 1, 0, 1, 0, 0]);
    let hp = hyperplane(f, &vec6([1, 0, 0, 0, 0, 1]));
    let pn = vec6([0, 1, 0, 0, 1, 0]);
    let k_p = filter_group(f, |g| fixes_point(f, g, &pn));
    report.checks.push(Check::eq("|K_P|", k_p.len() as u64, q * q * q * (q - 1) * (q * q - 1)));
    for (name, l, stab) in [("l14", l14, 6u64), ("l15", l15, 2u64)] {
        let orbit = act.orbit(&l, budget)?;
        let by_orbit = group / orbit.len() as u64;
        let direct = k_p.iter().filter(|g| fixes_subspace(f, g, &l)).count() as u64;
        report.checks.push(Check::eq(format!("|K_{name}| by orbit-stabilizer"), by_orbit, stab));
        report.checks.push(Check::eq(format!("|K_{name}| by direct count inside K_P"), direct, stab));
        let e = f.degree();
        let in_h =
            orbit.keys.iter().filter(|k| hp.contains_subspace(f, &Subspace::<6>::unpack(**k, 2, e))).count() as u64;
        let formula = q.pow(3) * (q - 1) * (q * q - 1) / stab;
        report.checks.push(Check::eq(format!("{name}-type lines inside H(P)"), in_h, formula));
        report.checks.push(Check::eq(format!("K_P-orbit of {name}"), k_p.len() as u64 / direct.max(1), formula));
    }
    Ok(report)
}

/// The net `<c X0 X2 + X1^2, X0^2 + X0 X2 + X1 X2, X2^2>` lands in Sigma18.
pub fn verify_net(atlas: &Atlas) -> Result<Report> {
    let v = atlas.veronese();
    let f = v.field();
    let mut report = Report::new("net", f);
    let rep = atlas.representative(OrbitLabel::Sigma18);
    let params = rep.params.clone();
    let forms = ["c X0 X2 + X1^2", "X0^2 + X0 X2 + X1 X2", "X2^2"]
        .map(|s| QuadraticForm::parse(f, s, &params))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let net = Net::new(f, &[forms[0], forms[1], forms[2]])?;
    let plane = plane_of_net(f, &net);
    let class = atlas.classify(&plane)?;
    report.checks.push(Check::eq("classified label", class.label, OrbitLabel::Sigma18));
    report.checks.push(Check::eq("net of the Sigma18 representative", net_of_plane(f, &rep.plane)?, net));
    report.checks.push(Check::eq("base points", net.base_points(v).len(), 0));
    report.checks.push(Check::eq("double lines in the net", net.double_lines(f), 1));
    report.checks.push(Check::eq("OD4", od4(v, &plane)?, Od4([1, 0, 0, (v.q() * v.q() + v.q()) as u64])));
    report.checks.push(Check::new("parameter", true, format!("c = {}", params["c"])));
    report.checks.push(Check::eq("base points agree with rank-1 points", base_points_of_plane(v, &plane)?.len(), 0));
    Ok(report)
}
