use graycheck::diagram::{id1, Move, MoveCore, OneCell, Slice};
use graycheck::enriched::{ic_sides, obligations_vbicat, unit_vbicat, vbicat_presentation};
use graycheck::libs::std_library;
use graycheck::normalize::{eq_mod_commutation, nf};
use graycheck::rewrite::{audit_schema, Binding, MetaVal};
use graycheck::signature::ObjectWord;

fn w(s: &str) -> ObjectWord {
    ObjectWord(
        s.split_whitespace()
            .map(|a| graycheck::signature::ObjectExpr::Atom(a.to_string()))
            .collect(),
    )
}

#[test]
fn braided_library_beta_moves() {
    let sig = std_library("braided_semistrict").unwrap();
    let mut base = sig.clone();
    base.add_object("A").unwrap();
    base.add_object("B").unwrap();
    base.add_object("C").unwrap();
    base.validate().unwrap();

    // R[A,B,C] applied to beta[A, B C]
    let beta = Slice::gen1(w(""), "beta", vec![w("A"), w("B C")], w(""));
    let cell = OneCell::single(&base, beta).unwrap();
    let mv = Move::new(
        0,
        MoveCore::Gen2 {
            name: "R".into(),
            args: vec![w("A"), w("B"), w("C")],
            fwd: true,
        },
    );
    let tc = graycheck::diagram::TwoCell {
        source: cell,
        moves: vec![mv],
    };
    let target = tc.target(&base).unwrap();
    assert_eq!(target.slices.len(), 2);
}

#[test]
fn schema_audit_braiding() {
    let mut sig = std_library("braided_semistrict").unwrap();
    sig.add_object("A").unwrap();
    sig.add_object("B").unwrap();
    sig.add_object("C").unwrap();
    sig.add_object("D").unwrap();
    for name in ["ba1", "ba2", "ba3", "ba4", "s2a", "s3a", "s4a", "s4b"] {
        let schema = sig.schemas.get(name).unwrap().clone();
        let mut b = Binding::new();
        for (k, word) in [("a", "A"), ("b", "B"), ("c", "C"), ("d", "D")] {
            b.insert(k.to_string(), MetaVal::Word(w(word)));
        }
        b.insert("a1".into(), MetaVal::Word(w("A")));
        b.insert("a2".into(), MetaVal::Word(w("D")));
        b.insert("w".into(), MetaVal::Word(w("A B")));
        audit_schema(&sig, &schema, &b).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn vbicat_presentation_and_ic() {
    let p = vbicat_presentation("C", &["a", "b"]).unwrap();
    let sig = &p.sig;
    let (lhs, rhs) = ic_sides(sig, &p, "a", "b", "b").unwrap();
    let (ld, lc) = lhs.boundary_cells(sig).unwrap();
    let (rd, rc) = rhs.boundary_cells(sig).unwrap();
    assert_eq!(ld, rd);
    assert_eq!(lc, rc);
    // counts: IC n^2, AC n^4
    let obs = obligations_vbicat(sig, &p).unwrap();
    let ic = obs.iter().filter(|o| o.name.starts_with("ic.")).count();
    let ac = obs.iter().filter(|o| o.name.starts_with("ac.")).count();
    assert_eq!(ic, 4);
    assert_eq!(ac, 16);
    for o in &obs {
        o.validate(sig).unwrap();
    }
}

#[test]
fn unit_vbicat_discharges_trivially() {
    let p = unit_vbicat();
    let obs = obligations_vbicat(&p.sig, &p).unwrap();
    assert_eq!(obs.len(), 2);
    for o in &obs {
        assert!(o.discharged_by_empty_script(&p.sig).unwrap());
    }
}

#[test]
fn nf_idempotent_on_vbicat_cells() {
    let p = vbicat_presentation("C", &["a", "b", "c"]).unwrap();
    let sig = &p.sig;
    let (lhs, rhs) = graycheck::enriched::ac_sides(sig, &p, "a", "b", "c", "a", "b").unwrap();
    for cell in [&lhs, &rhs] {
        let n1 = nf(sig, cell).unwrap();
        let n2 = nf(sig, &n1).unwrap();
        assert_eq!(n1.moves, n2.moves);
    }
    // the two pentagon sides are NOT commutation-equal (they use different
    // generators), but each is commutation-equal to itself after shuffling
    assert!(!eq_mod_commutation(sig, &lhs, &rhs).unwrap());
}

#[test]
fn dsl_roundtrip_cells() {
    let p = vbicat_presentation("C", &["a", "b"]).unwrap();
    let sig = &p.sig;
    let (lhs, _) = ic_sides(sig, &p, "a", "b", "b").unwrap();
    let text = graycheck::dsl::print_twocell(&lhs);
    let src = format!("twocell t = {text} ;");
    let file = graycheck::dsl::parse_diagram(&src, Some(sig)).unwrap();
    match &file.items[0].1 {
        graycheck::dsl::DiagItem::Two(c) => assert_eq!(c, &lhs),
        _ => panic!("expected twocell"),
    }
}

#[test]
fn identity_laws() {
    let sig = std_library("gray_core").unwrap();
    let idc = id1(w(""));
    let c = graycheck::diagram::compose1(&sig, &idc, &idc).unwrap();
    assert_eq!(c, idc);
}

#[test]
fn cop_ic_replays() {
    let p = vbicat_presentation("C", &["a", "b", "c"]).unwrap();
    let sig = graycheck::constructions::braided_env(&p, false).unwrap();
    let op = graycheck::constructions::opposite(&sig, &p).unwrap();
    let q = op.bicat().unwrap();
    let script =
        graycheck::scripts::cop_ic_script(&sig, &p, q, "a", "b", "c", "cop_ic").unwrap();
    let report = graycheck::rewrite::replay(&sig, &script);
    assert!(report.success, "cop_ic failed: {:?}", report.failure);
    assert!(!script.steps.is_empty());
}
