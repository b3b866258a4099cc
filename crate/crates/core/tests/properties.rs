//! Property suites over random field elements, planes and group elements.

use std::sync::OnceLock;

use proptest::prelude::*;
use veronese_nets::action::{filter_group, group_order, Action, GroupElement, Mat3};
use veronese_nets::atlas::{net_of_plane, plane_of_net, Atlas, DEFAULT_BUDGET};
use veronese_nets::invariants::{nucleus_meet_dim, signature};
use veronese_nets::veronese::{nu, Veronese};
use veronese_nets::{Field, Gf, Point, Subspace};

fn veronese(q: usize) -> &'static Veronese {
    static V: [OnceLock<Veronese>; 4] = [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let i = q.trailing_zeros() as usize - 1;
    V[i].get_or_init(|| Veronese::with_order(q).unwrap())
}

fn atlas4() -> &'static Atlas<'static> {
    static A: OnceLock<Atlas<'static>> = OnceLock::new();
    A.get_or_init(|| Atlas::new(veronese(4)).unwrap())
}

fn field(degree: u32) -> Field {
    Field::with_order(1 << degree).unwrap()
}

fn elems(q: usize, n: usize) -> impl Strategy<Value = Vec<Gf>> {
    prop::collection::vec((0..q as u8).prop_map(Gf), n)
}

fn rows3(v: &[Gf]) -> [[Gf; 6]; 3] {
    let mut r = [[Gf::ZERO; 6]; 3];
    for (i, x) in v.iter().enumerate() {
        r[i / 6][i % 6] = *x;
    }
    r
}

fn mat(v: &[Gf]) -> Mat3 {
    let mut m = [[Gf::ZERO; 3]; 3];
    for (i, x) in v.iter().enumerate() {
        m[i / 3][i % 3] = *x;
    }
    m
}

fn plane(f: &Field, v: &[Gf]) -> Option<Subspace<6>> {
    let s = Subspace::from_rows(f, &rows3(v));
    (s.rank() == 3).then_some(s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms(d in 1u32..=4, raw in prop::collection::vec(any::<u8>(), 3)) {
        let f = field(d);
        let q = f.order() as u8;
        let [a, b, c] = [0, 1, 2].map(|i| Gf(raw[i] % q));
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a + a, Gf::ZERO);
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, b + c), f.mul(a, b) + f.mul(a, c));
        prop_assert_eq!(f.mul(a, Gf::ONE), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Gf::ONE);
            prop_assert_eq!(f.pow(a, f.order() as u64 - 1), Gf::ONE);
        }
    }

    #[test]
    fn frobenius_and_trace(d in 1u32..=4, raw in prop::collection::vec(any::<u8>(), 2)) {
        let f = field(d);
        let q = f.order() as u8;
        let (a, b) = (Gf(raw[0] % q), Gf(raw[1] % q));
        prop_assert_eq!(f.square(a + b), f.square(a) + f.square(b));
        prop_assert_eq!(f.square(f.sqrt(a)), a);
        prop_assert!(f.trace(a) <= 1);
        prop_assert_eq!(f.trace(f.square(a)), f.trace(a));
        prop_assert_eq!(f.trace(a + b), f.trace(a) ^ f.trace(b));
    }

    #[test]
    fn artin_schreier(d in 1u32..=4, raw in any::<u8>()) {
        let f = field(d);
        let c = Gf(raw % f.order() as u8);
        match f.solve_artin_schreier(c) {
            Some(t) => {
                prop_assert_eq!(f.trace(c), 0);
                prop_assert_eq!(f.square(t) + t, c);
            }
            None => prop_assert_eq!(f.trace(c), 1),
        }
    }

    #[test]
    fn rref_round_trips(d in 1u32..=3, raw in prop::collection::vec(any::<u8>(), 18)) {
        let f = field(d);
        let q = f.order() as u8;
        let v: Vec<Gf> = raw.iter().map(|x| Gf(x % q)).collect();
        let input = rows3(&v);
        let s = Subspace::from_rows(&f, &input);
        prop_assert!(s.is_rref());
        prop_assert!(s.rank() <= 3);
        prop_assert_eq!(Subspace::from_rows(&f, s.rows()), s);
        for r in &input {
            prop_assert!(s.contains(&f, r));
        }
        let key = s.pack(d).unwrap();
        prop_assert_eq!(Subspace::<6>::unpack(key, s.rank(), d), s);
        prop_assert_eq!(Subspace::<6>::from_hex_key(&f, &s.hex_key()).unwrap(), s);
        let ann = s.annihilator(&f);
        prop_assert_eq!(ann.rank() + s.rank(), 6);
        prop_assert_eq!(ann.annihilator(&f), s);
    }

    #[test]
    fn lift_is_a_homomorphism(a in elems(4, 9), b in elems(4, 9)) {
        let f = veronese(4).field();
        let (Ok(a), Ok(b)) = (GroupElement::new(f, mat(&a)), GroupElement::new(f, mat(&b))) else {
            return Err(TestCaseError::reject("singular"));
        };
        let product = a.lift(f).compose(f, &b.lift(f));
        prop_assert!(product.projectively_equal(f, &a.compose(f, &b).lift(f)));
    }

    #[test]
    fn lift_is_equivariant(qi in 0usize..2, a in elems(8, 9), p in elems(8, 3)) {
        let q = [4, 8][qi];
        let f = veronese(q).field();
        let a: Vec<Gf> = a.iter().map(|x| Gf(x.0 % q as u8)).collect();
        let p: Vec<Gf> = p.iter().map(|x| Gf(x.0 % q as u8)).collect();
        let (Ok(g), Ok(p)) = (GroupElement::new(f, mat(&a)), Point::normalize(f, [p[0], p[1], p[2]])) else {
            return Err(TestCaseError::reject("degenerate"));
        };
        let image = g.lift(f).apply(f, nu(f, &p).coords());
        prop_assert_eq!(Point::normalize(f, image).unwrap(), nu(f, &g.apply_point(f, &p)));
    }

    #[test]
    fn net_round_trip(qi in 0usize..3, raw in elems(8, 18)) {
        let q = [2, 4, 8][qi];
        let f = veronese(q).field();
        let v: Vec<Gf> = raw.iter().map(|x| Gf(x.0 % q as u8)).collect();
        let Some(s) = plane(f, &v) else { return Err(TestCaseError::reject("rank")) };
        let net = net_of_plane(f, &s).unwrap();
        prop_assert_eq!(plane_of_net(f, &net), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn invariants_are_constant_on_orbits(raw in elems(4, 18), a in elems(4, 9)) {
        let v = veronese(4);
        let f = v.field();
        let Some(s) = plane(f, &raw) else { return Err(TestCaseError::reject("rank")) };
        let Ok(g) = GroupElement::new(f, mat(&a)) else { return Err(TestCaseError::reject("singular")) };
        let t = g.lift(f).act_subspace(f, &s);
        prop_assert_eq!(nucleus_meet_dim(f, &s), nucleus_meet_dim(f, &t));
        prop_assert_eq!(signature(v, &s).unwrap(), signature(v, &t).unwrap());
    }

    #[test]
    fn labels_are_constant_on_orbits(raw in elems(4, 18), a in elems(4, 9)) {
        let atlas = atlas4();
        let f = atlas.veronese().field();
        let Some(s) = plane(f, &raw) else { return Err(TestCaseError::reject("rank")) };
        prop_assume!(nucleus_meet_dim(f, &s) >= 0);
        let Ok(g) = GroupElement::new(f, mat(&a)) else { return Err(TestCaseError::reject("singular")) };
        let t = g.lift(f).act_subspace(f, &s);
        prop_assert_eq!(atlas.classify(&s).unwrap().label, atlas.classify(&t).unwrap().label);
    }

    #[test]
    fn orbit_stabilizer_at_q2(raw in elems(2, 18)) {
        let v = veronese(2);
        let f = v.field();
        let Some(s) = plane(f, &raw) else { return Err(TestCaseError::reject("rank")) };
        let orbit = Action::new(v).orbit(&s, DEFAULT_BUDGET).unwrap().len() as u64;
        let stab = filter_group(f, |g| g.lift(f).act_subspace(f, &s) == s).len() as u64;
        prop_assert_eq!(orbit * stab, group_order(2));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn orbit_stabilizer_at_q4(raw in elems(4, 18)) {
        let v = veronese(4);
        let f = v.field();
        let Some(s) = plane(f, &raw) else { return Err(TestCaseError::reject("rank")) };
        let orbit = Action::new(v).orbit(&s, DEFAULT_BUDGET).unwrap().len() as u64;
        let stab = filter_group(f, |g| g.lift(f).act_subspace(f, &s) == s).len() as u64;
        prop_assert_eq!(orbit * stab, group_order(4));
    }
}
