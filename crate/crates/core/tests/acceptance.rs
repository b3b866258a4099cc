//! The ten acceptance criteria, one PASS/FAIL line each. Every comparison is
//! exact. Run with `cargo test -p veronese-nets --test acceptance -- --nocapture`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::*;
use veronese_nets::action::{filter_group, group_order, Action, GroupElement};
use veronese_nets::atlas::{plane_of_net, search_parameters, Atlas, Net, OrbitLabel, DEFAULT_BUDGET};
use veronese_nets::invariants::{point_class_counts, CubicType};
use veronese_nets::projgeom::SubspaceEnumerator;
use veronese_nets::verify::{
    verify_lemmas, verify_net, verify_partition, verify_rank_identity, PartitionMode, Report, RANK_IDENTITY_SEED,
};
use veronese_nets::veronese::{nu, PointClass, QuadraticForm, Veronese};
use veronese_nets::{Field, Gf, Point, Subspace};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passed_check(report: &Report, name: &str) -> Result<String, String> {
    let c = report
        .checks
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| format!("q={}: no check named {name:?}", report.q))?;
    ensure(c.pass, || format!("q={}: {name}: {}", report.q, c.details))?;
    Ok(c.details.clone())
}

fn all_passed(report: &Report) -> Result<(), String> {
    let bad: Vec<String> = report.failures().map(|c| format!("{} ({})", c.name, c.details)).collect();
    ensure(bad.is_empty(), || format!("{} q={}: {}", report.suite, report.q, bad.join("; ")))
}

fn orbit_count() -> Outcome {
    let mut out = Vec::new();
    for q in [2usize, 4] {
        let v = Veronese::with_order(q).unwrap();
        let atlas = Atlas::new(&v).unwrap();
        let report = verify_partition(&atlas, PartitionMode::Exhaustive).map_err(|e| e.to_string())?;
        all_passed(&report)?;
        ensure(report.orbits.len() == 18, || format!("q={q}: {} orbits", report.orbits.len()))?;
        let sum: u64 = report.orbits.iter().map(|o| o.size.unwrap()).sum();
        let expected = if q == 2 { planes_pg52_by_bits().1 } else { (gaussian(6, 3, 4) - 4u128.pow(9)) as u64 };
        ensure(sum == expected, || format!("q={q}: sizes sum to {sum}, expected {expected}"))?;
        out.push(format!("q={q}: 18 disjoint orbits covering {sum} planes"));
    }
    Ok(out.join("; "))
}

fn od0_rows() -> Outcome {
    for q in [4usize, 8, 16] {
        let v = Veronese::with_order(q).unwrap();
        let atlas = Atlas::new(&v).unwrap();
        ensure(atlas.representatives().len() == 18, || "missing representatives".into())?;
        for r in atlas.representatives() {
            let want = tabulated_od0(r.label, q as u64);
            ensure(r.signature.od0 == want, || format!("q={q} {}: OD0 {} vs {want}", r.label, r.signature.od0))?;
        }
    }
    Ok("18 OD0 rows exact at q = 4, 8, 16".into())
}

fn empty_base() -> Outcome {
    for q in [4usize, 8, 16] {
        let v = Veronese::with_order(q).unwrap();
        let atlas = Atlas::new(&v).unwrap();
        let empty: Vec<OrbitLabel> =
            atlas.representatives().iter().filter(|r| r.signature.od0.r1() == 0).map(|r| r.label).collect();
        ensure(empty.len() == 9, || format!("q={q}: {} orbits with empty base", empty.len()))?;
        ensure(empty.iter().all(|l| tabulated_od0(*l, q as u64).0[0] == 0), || format!("q={q}: {empty:?}"))?;
    }
    Ok("9 of 18 at q = 4, 8, 16".into())
}

fn rank_identity() -> Outcome {
    let v4 = Veronese::with_order(4).unwrap();
    let r4 = verify_rank_identity(&v4, None, RANK_IDENTITY_SEED).map_err(|e| e.to_string())?;
    all_passed(&r4)?;
    let n4 = r4.totals.planes_checked.unwrap_or(0);
    ensure(n4 as u128 == gaussian(6, 3, 4), || format!("q=4: checked {n4} planes"))?;
    let v8 = Veronese::with_order(8).unwrap();
    let r8 = verify_rank_identity(&v8, Some(100_000), RANK_IDENTITY_SEED).map_err(|e| e.to_string())?;
    all_passed(&r8)?;
    let n8 = r8.totals.planes_checked.unwrap_or(0);
    ensure(n8 >= 100_000, || format!("q=8: checked {n8} planes"))?;
    Ok(format!("q=4: {n4} planes, q=8: {n8} sampled planes, no violations"))
}

fn census() -> Outcome {
    for q in [2usize, 4, 8] {
        let v = Veronese::with_order(q).unwrap();
        let qq = q as u64;
        let formula = [qq * qq + qq + 1, qq * qq + qq + 1, (qq * qq - 1) * (qq * qq + qq + 1), qq.pow(5) - qq * qq];
        let got = point_class_counts(&v);
        ensure(got == formula, || format!("q={q}: {got:?} vs {formula:?}"))?;
        ensure(slow_census(v.field()) == formula, || format!("q={q}: oracle disagrees"))?;
        ensure(PointClass::ALL.map(|c| c.expected_count(qq)) == formula, || "class formula".into())?;
    }
    Ok("exact at q = 2, 4, 8".into())
}

fn cubic_types() -> Outcome {
    for q in [4usize, 8] {
        let v = Veronese::with_order(q).unwrap();
        let atlas = Atlas::new(&v).unwrap();
        for r in atlas.representatives() {
            let Some(want) = stated_cubic(r.label) else { continue };
            let got = r.signature.cubic.map(|c| c.kind);
            ensure(got == Some(want), || format!("q={q} {}: {got:?} vs {want}", r.label))?;
        }
        let c18 = atlas.representative(OrbitLabel::Sigma18).signature.cubic.unwrap();
        ensure(c18.kind == CubicType::NoRationalComponentPoint && c18.points == 1, || {
            format!("q={q} Sigma18: {c18:?}")
        })?;
    }
    Ok("Sigma16..Sigma23 as stated at q = 4, 8".into())
}

fn stabilizers() -> Outcome {
    let v = Veronese::with_order(4).unwrap();
    let f = v.field();
    let atlas = Atlas::new(&v).unwrap();
    let report = verify_lemmas(&atlas).map_err(|e| e.to_string())?;
    for name in [
        "|K_P|",
        "|K_l14| by orbit-stabilizer",
        "|K_l14| by direct count inside K_P",
        "|K_l15| by orbit-stabilizer",
        "|K_l15| by direct count inside K_P",
        "l14-type lines inside H(P)",
        "K_P-orbit of l14",
        "l15-type lines inside H(P)",
    ] {
        passed_check(&report, name)?;
    }
    // recount the l14 stabilizer inside the stabilizer of P without the suite helpers
    let vec = |a: [u8; 6]| a.map(Gf);
    let l14 = Subspace::from_rows(f, &[vec([1, 0, 0, 0, 0, 1]), vec([0, 1, 0, 1, 0, 0])]);
    let p = Point::normalize(f, vec([0, 1, 0, 0, 1, 0])).unwrap();
    let fixes_p = |g: &GroupElement| Point::normalize(f, g.lift(f).apply(f, p.coords())).unwrap() == p;
    let k_p = filter_group(f, fixes_p);
    let stab = k_p.iter().filter(|g| g.lift(f).act_subspace(f, &l14) == l14).count() as u64;
    ensure(stab == 6, || format!("|K_l14| = {stab}"))?;
    let lines = k_p.len() as u64 / stab;
    ensure(lines == 480, || format!("{lines} lines"))?;
    let l15 = passed_check(&report, "|K_l15| by direct count inside K_P")?;
    Ok(format!("|K_l14| = 6, |K_l15|: {l15}, 480 lines of the first type in H(P)"))
}

fn lemma_suites() -> Outcome {
    let mut out = Vec::new();
    for q in [4usize, 8] {
        let v = Veronese::with_order(q).unwrap();
        let atlas = Atlas::new(&v).unwrap();
        let report = verify_lemmas(&atlas).map_err(|e| e.to_string())?;
        let three = passed_check(&report, "orbits of K_{l,R}: (conic points, size) for external, tangent, secant")?;
        passed_check(&report, "each orbit has one tangency type")?;
        out.push(format!("q={q} three orbits {three}"));
        if q == 4 {
            passed_check(&report, "orbits of K_{P,H} on the lines of type [0,1,1,q-1]")?;
            passed_check(&report, "the two listed lines represent different orbits")?;
            out.push("q=4 two orbits".into());
        }
    }
    Ok(out.join("; "))
}

fn sigma18_net() -> Outcome {
    let mut out = Vec::new();
    for q in [4usize, 8] {
        let v = Veronese::with_order(q).unwrap();
        let f = v.field();
        let atlas = Atlas::new(&v).unwrap();
        all_passed(&verify_net(&atlas).map_err(|e| e.to_string())?)?;
        let params = search_parameters(f, OrbitLabel::Sigma18).map_err(|e| e.to_string())?;
        let forms =
            ["c*X0*X2 + X1^2", "X0^2 + X0*X2 + X1*X2", "X2^2"].map(|s| QuadraticForm::parse(f, s, &params).unwrap());
        let net = Net::new(f, &forms).map_err(|e| e.to_string())?;
        let label = atlas.classify(&plane_of_net(f, &net)).map_err(|e| e.to_string())?.label;
        ensure(label == OrbitLabel::Sigma18, || format!("q={q}: classified as {label}"))?;
        out.push(format!("q={q} c={} -> Sigma18", params["c"]));
    }
    Ok(out.join("; "))
}

fn property_suites() -> Outcome {
    for d in 1..=4u32 {
        let f = Field::with_order(1 << d).unwrap();
        for a in f.elements() {
            ensure(f.square(f.sqrt(a)) == a, || format!("sqrt {a}"))?;
            ensure(f.trace(f.square(a)) == f.trace(a), || format!("trace {a}"))?;
            match f.solve_artin_schreier(a) {
                Some(t) => ensure(f.trace(a) == 0 && f.square(t) + t == a, || format!("AS {a}"))?,
                None => ensure(f.trace(a) == 1, || format!("AS {a}"))?,
            }
            if !a.is_zero() {
                ensure(f.mul(a, f.inv(a).unwrap()) == Gf::ONE, || format!("inverse {a}"))?;
            }
            for b in f.elements() {
                ensure(f.square(a + b) == f.square(a) + f.square(b), || "Frobenius".into())?;
                ensure(f.trace(a + b) == f.trace(a) ^ f.trace(b), || "trace additivity".into())?;
                for c in f.elements() {
                    ensure(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)), || "associativity".into())?;
                    ensure(f.mul(a, b + c) == f.mul(a, b) + f.mul(a, c), || "distributivity".into())?;
                }
            }
        }
    }
    let v2 = Veronese::with_order(2).unwrap();
    let f2 = v2.field();
    let planes = SubspaceEnumerator::<6>::new(f2, 3).unwrap();
    for s in planes.iter() {
        ensure(s.is_rref() && Subspace::from_rows(f2, s.rows()) == s, || format!("RREF {}", s.hex_key()))?;
        ensure(Subspace::<6>::unpack(s.pack(1).unwrap(), 3, 1) == s, || "pack".into())?;
    }
    let pgl2 = filter_group(f2, |_| true);
    ensure(pgl2.len() as u64 == group_order(2), || format!("|PGL(3,2)| = {}", pgl2.len()))?;
    for g in &pgl2 {
        for p in v2.plane_points() {
            let image = Point::normalize(f2, g.lift(f2).apply(f2, nu(f2, p).coords())).unwrap();
            ensure(image == nu(f2, &g.apply_point(f2, p)), || "equivariance at q = 2".into())?;
        }
        for h in &pgl2 {
            let lhs = g.lift(f2).compose(f2, &h.lift(f2));
            ensure(lhs.projectively_equal(f2, &g.compose(f2, h).lift(f2)), || "homomorphism".into())?;
        }
    }
    for q in [2usize, 4] {
        let v = Veronese::with_order(q).unwrap();
        let f = v.field();
        let atlas = Atlas::new(&v).unwrap();
        let action = Action::new(&v);
        let group = filter_group(f, |_| true);
        for r in atlas.representatives() {
            let orbit = action.orbit(&r.plane, DEFAULT_BUDGET).map_err(|e| e.to_string())?.len() as u64;
            let stab = group.iter().filter(|g| g.lift(f).act_subspace(f, &r.plane) == r.plane).count() as u64;
            ensure(orbit * stab == group_order(q as u64), || format!("q={q} {}: {orbit} * {stab}", r.label))?;
        }
    }
    Ok(format!(
        "field laws q <= 16; {} planes round-trip; lift laws on PGL(3,2); orbit-stabilizer at q = 2, 4",
        planes.len()
    ))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("orbit count and partition", orbit_count),
        ("OD0 table regression", od0_rows),
        ("empty-base count", empty_base),
        ("r2n = h1 instance", rank_identity),
        ("point-class census", census),
        ("cubic invariants", cubic_types),
        ("line stabilizers", stabilizers),
        ("lemma suites", lemma_suites),
        ("net representative", sigma18_net),
        ("property suites", property_suites),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or(e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name} ({secs:.1}s): {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
