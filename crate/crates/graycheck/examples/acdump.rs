use graycheck::diagram::{compose1, Move, MoveCore, OneCell};
use graycheck::enriched::{ac_sides, vbicat_presentation};
use graycheck::scripts::ScriptBuilder;
use graycheck::signature::ObjectWord;

fn e() -> ObjectWord { ObjectWord::empty() }
fn gm(at: usize, n: &str, fwd: bool) -> Move {
    Move::new(at, MoveCore::Gen2 { name: n.into(), args: vec![], fwd })
}

fn main() {
    let p = vbicat_presentation("C", &["a", "b", "c", "d", "e"]).unwrap();
    let sig = graycheck::constructions::braided_env(&p, false).unwrap();
    let op = graycheck::constructions::opposite(&sig, &p).unwrap();
    let q = op.bicat().unwrap();
    let (v, w, x, y, z) = ("a", "b", "c", "d", "e");
    let (lhs, _rhs) = ac_sides(&sig, q, v, w, x, y, z).unwrap();
    let cw = p.hom(x, w).unwrap();   // C'
    let d_ = p.hom(w, v).unwrap();   // D
    let a_ = p.hom(z, y).unwrap();   // A
    let b_ = p.hom(y, x).unwrap();   // B

    let mut sb = ScriptBuilder::new(&sig, lhs).unwrap();
    // phase 1: reorient alpha(z,y,x,w) across beta[-, D]
    let f1 = compose1(
        &sig,
        &p.m(z, y, x).unwrap().whisker(&cw, &e()),
        &p.m(z, x, w).unwrap(),
    )
    .unwrap();
    let th1 = gm(0, &format!("alpha.C.{z}.{y}.{x}.{w}"), false);
    let k1 = sb
        .nat_reorient(
            "naturality",
            "beta",
            2,
            &[cw.concat(&b_).concat(&a_), d_.clone()],
            0,
            &f1,
            &th1,
            e(),
        )
        .unwrap();
    eprintln!("phase1 leftovers: {k1}");
    // cancel the leftover cross(m(z,y,w)) against block 2's opening move
    sb.bubble_right(6, 9).unwrap();
    sb.cancel(9).unwrap();
    // leftover cross(m(y,x,w) lw C') vs block-3 opening (move 16->? now)
    // phase 3: reorient alpha(y,x,w,v) across beta[A, -]
    let f3 = compose1(
        &sig,
        &p.m(y, x, w).unwrap().whisker(&d_, &e()),
        &p.m(y, w, v).unwrap(),
    )
    .unwrap();
    let th3 = gm(0, &format!("alpha.C.{y}.{x}.{w}.{v}"), false);
    let k3 = sb
        .nat_reorient(
            "naturality",
            "beta",
            16,
            &[a_.clone(), d_.concat(&cw).concat(&b_)],
            1,
            &f3,
            &th3,
            e(),
        )
        .unwrap();
    eprintln!("phase3 leftovers: {k3}");
    // try to bring the three alphas together: 4, 10, 18
    for target in [(10usize, 5usize), (18, 6)] {
        let (from, to) = target;
        let mut at = from;
        while at > to {
            match sb.exchange(at - 1) {
                Ok(_) => at -= 1,
                Err(e) => {
                    eprintln!("blocked moving {from}-> {to} at {at}: {e}");
                    break;
                }
            }
        }
    }
    // insert the third pentagon leg and apply (AC) for the base, inverted
    {
        use graycheck::diagram::Move as Mv;
        let alpha3 = Mv::whiskered(
            4,
            e(),
            a_.clone(),
            graycheck::diagram::MoveCore::Gen2 {
                name: format!("alpha.C.{y}.{x}.{w}.{v}"),
                args: vec![],
                fwd: false,
            },
        );
        sb.insert_pair(6, alpha3).unwrap();
        sb.apply_inv(
            &format!("ac.C.{z}.{y}.{x}.{w}.{v}"),
            graycheck::rewrite::Direction::Fwd,
            4,
            3,
            4,
            e(),
            graycheck::rewrite::Binding::new(),
        )
        .unwrap();
    }
    sb.dump("after pentagon");
    // right walk step 1: alpha.dcba-bwd crosses beta[A, D C' B] leftward
    {
        use graycheck::rewrite::{Binding, MetaVal};
        let mut b = Binding::new();
        b.insert("arg0".into(), MetaVal::Word(a_.clone()));
        b.insert("arg1".into(), MetaVal::Word(d_.concat(&cw).concat(&b_)));
        b.insert("param".into(), MetaVal::Nat(1));
        let f = compose1(
            &sig,
            &p.m(y, x, w).unwrap().whisker(&d_, &e()),
            &p.m(y, w, v).unwrap(),
        )
        .unwrap();
        b.insert("f".into(), MetaVal::Cell(f));
        b.insert(
            "theta".into(),
            MetaVal::MoveV(gm(0, &format!("alpha.C.{y}.{x}.{w}.{v}"), false)),
        );
        sb.apply("naturality", graycheck::rewrite::Direction::Bwd, 18, 3, 3, e(), b)
            .unwrap();
    }
    // the fresh forward crossings cancel the original backward ones
    sb.cancel(20).unwrap();
    sb.cancel(19).unwrap();
    sb.dump("after right walk 1");
    // try the braid finisher on the remaining gap
    let fin = graycheck::scripts::Finisher {
        sig: &sig,
        schemas: [
            "modification_r",
            "modification_s",
            "ba1",
            "ba2",
            "ba3",
            "ba4",
            "s2a",
            "s2b",
            "s3a",
            "s3b",
            "s4a",
            "s4b",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect(),
        max_rounds: 3000,
    };
    let t0 = std::time::Instant::now();
    match fin.close(sb.state(), &_rhs).unwrap() {
        Some(steps) => {
            eprintln!("FINISHER SUCCESS: {} steps in {:?}", steps.len(), t0.elapsed());
            for s in &steps {
                sb.step(s.clone()).unwrap();
            }
            sb.glue_to(&_rhs).unwrap();
            eprintln!("TOTAL steps: {}", sb.state().moves.len());
        }
        None => eprintln!("finisher failed after {:?}", t0.elapsed()),
    }
}
