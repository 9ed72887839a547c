mod common;

use common::{datum, square, three_orbits, torus};
use floerq_core::floer::{build_cf, FloerData, Universe};
use floerq_core::graded::{tensor, LinearMap, Permutation};
use floerq_core::products::{diagonal_table, euler, identity_element};
use floerq_core::tqft::{
    act_permutation, box_ij, check_cycle, check_gluing, check_self_gluing, check_table, compose_keys, diamond,
    differential, element_from_chain, element_to_chain, q_of_table, slot_complex, CountTable, SlotKey, TensorElement,
    Term,
};
use floerq_core::Error;

fn fixtures() -> Vec<FloerData> {
    vec![torus(2).0, square(), three_orbits()]
}

fn el(minus: &[&str], plus: &[&str], c: i64) -> TensorElement {
    let mut x = TensorElement::zero(minus.len(), plus.len());
    x.add_term(Term::new(minus, plus), c).unwrap();
    x
}

/// `x ◊_ij y` as a linear map out of the tensor product of the two slot complexes.
fn diamond_is_chain_map(data: &FloerData, ax: (usize, usize), ay: (usize, usize), i: usize, j: usize) {
    let u = Universe::single(data);
    let sx = slot_complex(ax.0, ax.1, data).unwrap();
    let sy = slot_complex(ay.0, ay.1, data).unwrap();
    let target = slot_complex(ax.0 + ay.0 - 1, ax.1 + ay.1 - 1, data).unwrap();
    let source = tensor(sx.complex(), sy.complex()).unwrap();
    let n2 = sy.complex().dim();
    let images = (0..source.dim())
        .map(|idx| {
            let x = element_from_chain(&[(idx / n2, 1)].into(), ax.0, ax.1, &sx, data).unwrap();
            let y = element_from_chain(&[(idx % n2, 1)].into(), ay.0, ay.1, &sy, data).unwrap();
            element_to_chain(&diamond(&x, &y, i, j, &u).unwrap(), &target, data).unwrap()
        })
        .collect();
    let f = LinearMap::from_images(target.complex().dim(), 0, images);
    let check = f.is_chain_map(&source, target.complex());
    assert!(check.holds, "◊{i}{j} on {ax:?} x {ay:?}: {check:?}");
}

fn box_is_chain_map(data: &FloerData, a: (usize, usize), i: usize, j: usize) {
    let u = Universe::single(data);
    let s = slot_complex(a.0, a.1, data).unwrap();
    let target = slot_complex(a.0 - 1, a.1 - 1, data).unwrap();
    let images = (0..s.complex().dim())
        .map(|idx| {
            let x = element_from_chain(&[(idx, 1)].into(), a.0, a.1, &s, data).unwrap();
            element_to_chain(&box_ij(&x, i, j, &u).unwrap(), &target, data).unwrap()
        })
        .collect();
    let f = LinearMap::from_images(target.complex().dim(), 0, images);
    let check = f.is_chain_map(s.complex(), target.complex());
    assert!(check.holds, "¤{i}{j} on {a:?}: {check:?}");
}

#[test]
fn diamond_is_a_chain_map() {
    for data in fixtures() {
        diamond_is_chain_map(&data, (1, 1), (1, 1), 1, 1);
        diamond_is_chain_map(&data, (0, 1), (1, 0), 1, 1);
        diamond_is_chain_map(&data, (0, 2), (2, 0), 2, 1);
        diamond_is_chain_map(&data, (1, 2), (1, 1), 1, 1);
        diamond_is_chain_map(&data, (1, 1), (2, 1), 1, 2);
    }
}

#[test]
fn box_is_a_chain_map() {
    for data in fixtures() {
        box_is_chain_map(&data, (1, 1), 1, 1);
        box_is_chain_map(&data, (2, 2), 2, 1);
        box_is_chain_map(&data, (2, 2), 1, 2);
        box_is_chain_map(&data, (2, 1), 1, 2);
    }
}

fn all_permutations(k: usize) -> Vec<Permutation> {
    fn go(prefix: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
        if prefix.len() == k {
            out.push(Permutation::new(prefix.clone()).unwrap());
            return;
        }
        for i in 0..k {
            if !prefix.contains(&i) {
                prefix.push(i);
                go(prefix, k, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), k, &mut out);
    out
}

fn check_group_action(data: &FloerData, km: usize, kp: usize) {
    let u = Universe::single(data);
    let s = slot_complex(km, kp, data).unwrap();
    let elements: Vec<TensorElement> = (0..s.complex().dim())
        .map(|idx| element_from_chain(&[(idx, 1)].into(), km, kp, &s, data).unwrap())
        .collect();
    let (pm, pp) = (all_permutations(km), all_permutations(kp));
    for x in &elements {
        for r1 in &pm {
            for r2 in &pp {
                for s1 in &pm {
                    for s2 in &pp {
                        let twice = act_permutation(r1, r2, &act_permutation(s1, s2, x, &u).unwrap(), &u).unwrap();
                        let composite = act_permutation(&r1.compose(s1).unwrap(), &r2.compose(s2).unwrap(), x, &u).unwrap();
                        assert_eq!(twice, composite, "{x}");
                    }
                }
            }
        }
    }
}

#[test]
fn permutations_act_as_a_group() {
    for data in fixtures() {
        check_group_action(&data, 2, 2);
        check_group_action(&data, 3, 1);
    }
}

#[test]
fn permutation_examples() {
    let (data, _) = torus(2);
    let u = Universe::single(&data);
    let x = el(&["x11"], &["x10", "x01"], 3);
    let id1 = Permutation::identity(1);
    assert_eq!(act_permutation(&id1, &Permutation::identity(2), &x, &u).unwrap(), x);
    let swap = Permutation::new(vec![1, 0]).unwrap();
    let swapped = act_permutation(&id1, &swap, &x, &u).unwrap();
    assert_eq!(swapped, el(&["x11"], &["x01", "x10"], -3));
    assert_eq!(act_permutation(&id1, &swap, &swapped, &u).unwrap(), x);
    assert!(matches!(act_permutation(&swap, &swap, &x, &u), Err(Error::Shape(_))));
}

/// Sign of a reordering of source slots, counting inversions among odd entries by hand.
fn odd_inversions(order: &[usize], parity: &[u8]) -> i64 {
    let mut count = 0;
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            if parity[order[a]] == 1 && parity[order[b]] == 1 && order[a] > order[b] {
                count += 1;
            }
        }
    }
    if count % 2 == 0 {
        1
    } else {
        -1
    }
}

#[test]
fn diamond_sign_matches_explicit_reordering() {
    let (data, _) = torus(2);
    let u = Universe::single(&data);
    // Source slots: x⁺ = (p1, p2), y⁻ = (m1, m2). Contracting p1 with m1 leaves (m2; p2),
    // read off the reordering (m2, p2, p1, m1).
    let cases = [
        ("x10", "x01", "x10", "x11"),
        ("x10", "x01", "x10", "x01"),
        ("x11", "x01", "x11", "x10"),
        ("x00", "x10", "x00", "x01"),
    ];
    for (p1, p2, m1, m2) in cases {
        let parity: Vec<u8> = [p1, p2, m1, m2].iter().map(|s| (data.mu(s).unwrap() % 2) as u8).collect();
        let expected = odd_inversions(&[3, 1, 0, 2], &parity);
        let x = el(&[], &[p1, p2], 1);
        let y = el(&[m1, m2], &[], 1);
        let z = diamond(&x, &y, 1, 1, &u).unwrap();
        assert_eq!(z, el(&[m2], &[p2], expected), "{p1} {p2} {m1} {m2}");
    }
}

#[test]
fn diamond_examples() {
    for data in fixtures() {
        let u = Universe::single(&data);
        let id = identity_element(&data);
        for o in data.orbits() {
            let a = TensorElement::cochain(&o.name);
            assert_eq!(diamond(&id, &a, 1, 1, &u).unwrap(), a);
            let x = TensorElement::chain(&o.name);
            assert_eq!(diamond(&x, &id, 1, 1, &u).unwrap(), x);
        }
    }
    let (data, _) = torus(2);
    let u = Universe::single(&data);
    let z = diamond(&TensorElement::chain("x10"), &TensorElement::cochain("x01"), 1, 1, &u).unwrap();
    assert!(z.is_zero());
    assert_eq!(z.arity(), (0, 0));
    assert!(matches!(
        diamond(&TensorElement::chain("x10"), &TensorElement::cochain("x01"), 2, 1, &u),
        Err(Error::Shape(_))
    ));
}

#[test]
fn box_examples() {
    for data in fixtures() {
        let u = Universe::single(&data);
        let trace = box_ij(&identity_element(&data), 1, 1, &u).unwrap();
        assert_eq!(trace.scalar_value(), Some(euler(&data)));
    }
    let (data, _) = torus(2);
    let u = Universe::single(&data);
    assert_eq!(box_ij(&el(&["x10"], &["x10"], 1), 1, 1, &u).unwrap().scalar_value(), Some(-1));
    assert_eq!(box_ij(&el(&["x00"], &["x00"], 1), 1, 1, &u).unwrap().scalar_value(), Some(1));
    assert!(box_ij(&el(&["x10"], &["x01"], 1), 1, 1, &u).unwrap().is_zero());
    assert!(matches!(box_ij(&el(&["x10"], &["x01"], 1), 2, 1, &u), Err(Error::Shape(_))));
}

#[test]
fn q_signs() {
    let data = datum(1, &[("a", 0), ("b", 1), ("c", 2)], &[]);
    let u = Universe::single(&data);
    let mut t = CountTable::new(SlotKey::new(0, 0, 1), 0, "t");
    t.set_entry::<&str>(&[], &["c"], 5).unwrap();
    assert_eq!(q_of_table(&t, &u).unwrap(), el(&[], &["c"], 5));

    // Degree 2 + 2n(1 - 0 - 1) = 2 on the (0,1,1) slot.
    let mut t = CountTable::new(SlotKey::new(0, 1, 1), 2, "t2");
    t.set_entry(&["a"], &["c"], 1).unwrap();
    assert_eq!(q_of_table(&t, &u).unwrap(), el(&["a"], &["c"], -1));

    let mut bad = CountTable::new(SlotKey::new(0, 1, 1), 0, "bad");
    bad.set_entry(&["a"], &["b"], 1).unwrap();
    assert!(q_of_table(&bad, &u).is_err());

    let mut unknown = CountTable::new(SlotKey::new(0, 1, 1), 0, "unknown");
    unknown.set_entry(&["a"], &["z"], 1).unwrap();
    assert!(matches!(q_of_table(&unknown, &u), Err(Error::Lookup(_))));
}

#[test]
fn table_degree_checks() {
    for data in fixtures() {
        assert!(check_table(&diagonal_table(&data), &Universe::single(&data), true).ok());
    }
    let data = datum(1, &[("a", 0), ("b", 1)], &[]);
    let u = Universe::single(&data);
    let mut pants = CountTable::new(SlotKey::new(0, 1, 2), 0, "pants");
    pants.set_entry(&["a"], &["a", "b"], 1).unwrap();
    let r = check_table(&pants, &u, true);
    assert!(!r.ok());
    let witness = r.first_error().unwrap().witness.clone().unwrap();
    assert!(witness.contains('a') && witness.contains('b'), "{witness}");

    let mut missing = CountTable::new(SlotKey::new(0, 1, 1), 1, "h");
    missing.set_face(1, 0, "diag").unwrap();
    assert!(!check_table(&missing, &u, true).ok());
}

#[test]
fn cycle_checks() {
    for data in fixtures() {
        let u = Universe::single(&data);
        let r = check_cycle(&diagonal_table(&data), |_| None, &u).unwrap();
        assert!(r.ok(), "{r}");
    }
    let data = three_orbits();
    let u = Universe::single(&data);
    let id = identity_element(&data);
    assert!(differential(&id, &u).unwrap().is_zero());

    // d(q^ ⊗ r) = ±(p^ ⊗ r)
    let mut t = CountTable::new(SlotKey::new(0, 1, 1), 0, "off");
    t.set_entry(&["q"], &["r"], 1).unwrap();
    assert!(!check_cycle(&t, |_| None, &u).unwrap().ok());
}

#[test]
fn q1_boundary_relation() {
    let data = three_orbits();
    let u = Universe::single(&data);
    let diag = diagonal_table(&data);
    // An empty homotopy between a table and itself.
    let mut h = CountTable::new(SlotKey::new(0, 1, 1), 1, "h");
    h.set_face(1, 0, diag.label.clone()).unwrap();
    h.set_face(1, 1, diag.label.clone()).unwrap();
    let lookup = |l: &str| (l == diag.label).then_some(&diag);
    assert!(check_cycle(&h, lookup, &u).unwrap().ok());

    let mut off = CountTable::new(SlotKey::new(0, 1, 1), 0, "off");
    off.set_entry(&["q"], &["q"], 1).unwrap();
    let mut h2 = CountTable::new(SlotKey::new(0, 1, 1), 1, "h2");
    h2.set_face(1, 0, "off").unwrap();
    h2.set_face(1, 1, diag.label.clone()).unwrap();
    let tables = [diag.clone(), off.clone()];
    let lookup = |l: &str| tables.iter().find(|t| t.label == l);
    assert!(!check_cycle(&h2, lookup, &u).unwrap().ok());
    let mut dangling = h2.clone();
    dangling.set_face(1, 0, "absent").unwrap();
    assert!(matches!(check_cycle(&dangling, lookup, &u), Err(Error::MissingTable(_))));
    let mut one_sided = CountTable::new(SlotKey::new(0, 1, 1), 1, "h3");
    one_sided.set_face(1, 1, diag.label.clone()).unwrap();
    assert!(matches!(check_cycle(&one_sided, lookup, &u), Err(Error::MissingFace { .. })));
}

#[test]
fn gluing_checks() {
    for data in fixtures() {
        let u = Universe::single(&data);
        let d = diagonal_table(&data);
        assert!(check_gluing(&d, &d, &d, 1, 1, &u).unwrap().ok());
    }
    let (data, bundle) = torus(2);
    let u = Universe::single(&data);
    let pants = bundle.get(SlotKey::new(0, 1, 2)).unwrap();
    let unit = bundle.get(SlotKey::new(0, 1, 0)).unwrap();
    let d = diagonal_table(&data);
    assert!(check_gluing(pants, unit, &d, 2, 1, &u).unwrap().ok());
    assert!(matches!(check_gluing(pants, pants, &d, 2, 1, &u), Err(Error::Composition(_))));
    assert_eq!(
        compose_keys(SlotKey::new(0, 1, 2), SlotKey::new(0, 1, 2), 2, 1).unwrap(),
        SlotKey::new(0, 1, 3)
    );
    assert!(compose_keys(SlotKey::new(0, 1, 0), SlotKey::new(0, 1, 2), 1, 1).is_err());

    let mut wrong = d.clone();
    wrong.set_entry(&["x10"], &["x10"], 2).unwrap();
    let r = check_gluing(pants, unit, &wrong, 2, 1, &u).unwrap();
    assert!(!r.ok());
}

#[test]
fn self_gluing_checks() {
    for data in fixtures() {
        let u = Universe::single(&data);
        let mut trace = CountTable::new(SlotKey::new(1, 0, 0), 0, "trace");
        let chi = euler(&data);
        if chi != 0 {
            trace.set_entry::<&str>(&[], &[], chi).unwrap();
        }
        assert!(check_self_gluing(&diagonal_table(&data), &trace, 1, 1, &u).unwrap().ok());
    }
    let (data, _) = torus(2);
    let u = Universe::single(&data);
    let empty_in = CountTable::new(SlotKey::new(0, 2, 2), 0, "in");
    let empty_out = CountTable::new(SlotKey::new(1, 1, 1), 0, "out");
    assert!(check_self_gluing(&empty_in, &empty_out, 1, 1, &u).unwrap().ok());
    let zero_trace = CountTable::new(SlotKey::new(1, 0, 0), 0, "trace");
    assert!(check_self_gluing(&diagonal_table(&data), &zero_trace, 1, 1, &u).unwrap().ok());
    assert!(check_self_gluing(&diagonal_table(&data), &empty_out, 1, 1, &u).is_err());
}

#[test]
fn differential_matches_tensor_complex() {
    for data in fixtures() {
        let u = Universe::single(&data);
        let s = slot_complex(1, 2, &data).unwrap();
        for idx in 0..s.complex().dim() {
            let x = element_from_chain(&[(idx, 1)].into(), 1, 2, &s, &data).unwrap();
            let dx = element_to_chain(&differential(&x, &u).unwrap(), &s, &data).unwrap();
            assert_eq!(dx, s.complex().apply(&[(idx, 1)].into()));
        }
        assert!(build_cf(&data).unwrap().d_squared_witness().is_none());
    }
}
