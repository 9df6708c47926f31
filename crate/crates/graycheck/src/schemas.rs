//! Instantiation of the built-in axiom schema families.
//!
//! Every schema side is assembled move by move against a running state, so
//! anchors come out right even when degenerate (empty-word) parameters make
//! slices vanish.

use crate::diagram::{
    embed_param_cell, embed_param_move, exchange_slices, id1, id2, param_site, Move, MoveCore,
    OneCell, Slice, SliceCore, TwoCell,
};
use crate::diagram::{apply_move, DResult, DiagramError};
use crate::rewrite::{AxiomSchema, Binding, MetaVal};
use crate::signature::{ObjectWord, Signature};

/// Incremental 2-cell builder validating each move against the state.
pub struct CellBuilder<'a> {
    sig: &'a Signature,
    source: OneCell,
    state: OneCell,
    moves: Vec<Move>,
}

impl<'a> CellBuilder<'a> {
    pub fn new(sig: &'a Signature, source: OneCell) -> DResult<Self> {
        source.boundary(sig)?;
        Ok(CellBuilder {
            sig,
            state: source.clone(),
            source,
            moves: Vec::new(),
        })
    }

    pub fn state(&self) -> &OneCell {
        &self.state
    }

    pub fn push(&mut self, mv: Move) -> DResult<&mut Self> {
        self.state = apply_move(self.sig, &self.state, &mv, self.moves.len())?;
        self.moves.push(mv);
        Ok(self)
    }

    /// Apply the move at the leftmost anchor where it fits.
    pub fn push_auto(
        &mut self,
        left: ObjectWord,
        right: ObjectWord,
        core: MoveCore,
    ) -> DResult<&mut Self> {
        for at in 0..=self.state.slices.len() {
            let mv = Move {
                at,
                left: left.clone(),
                right: right.clone(),
                core: core.clone(),
            };
            if let Ok(next) = apply_move(self.sig, &self.state, &mv, self.moves.len()) {
                self.state = next;
                self.moves.push(mv);
                return Ok(self);
            }
        }
        Err(DiagramError::Other(format!(
            "no anchor admits move {} on {:?}",
            core.label(),
            self.state
        )))
    }

    pub fn sig(&self) -> &'a Signature {
        self.sig
    }

    /// Append a whiskered 2-cell whose planted source matches the state at
    /// the given slice offset.
    pub fn splice(
        &mut self,
        u: &TwoCell,
        wl: &ObjectWord,
        wr: &ObjectWord,
        slice_at: usize,
    ) -> DResult<&mut Self> {
        let state = self.state.clone();
        let pre = OneCell {
            dom: state.dom.clone(),
            slices: state.slices[..slice_at].to_vec(),
        };
        let mid_len = u.source.slices.len();
        let words = state.words(self.sig)?;
        let post = OneCell {
            dom: words[slice_at + mid_len].clone(),
            slices: state.slices[slice_at + mid_len..].to_vec(),
        };
        let w = crate::diagram::whisker2(self.sig, wl, u, wr, &pre, &post)?;
        for mv in w.moves {
            self.push(mv)?;
        }
        Ok(self)
    }

    /// Interchange the adjacent slices at `at` and `at+1`.
    pub fn sigma(&mut self, at: usize) -> DResult<&mut Self> {
        let first = self.state.slices[at].clone();
        let second = self.state.slices[at + 1].clone();
        if exchange_slices(self.sig, &first, &second)?.is_none() {
            return Err(DiagramError::Other(format!(
                "slices at {at} do not interchange"
            )));
        }
        let mv = Move::new(
            at,
            MoveCore::Interchange {
                first,
                second,
                fwd: true,
            },
        );
        self.push(mv)
    }

    pub fn finish(self) -> TwoCell {
        TwoCell {
            source: self.source,
            moves: self.moves,
        }
    }
}

// binding accessors

pub fn bword(b: &Binding, k: &str) -> DResult<ObjectWord> {
    match b.get(k) {
        Some(MetaVal::Word(w)) => Ok(w.clone()),
        _ => Err(DiagramError::Other(format!("binding misses word `{k}`"))),
    }
}

pub fn bcell(b: &Binding, k: &str) -> DResult<OneCell> {
    match b.get(k) {
        Some(MetaVal::Cell(c)) => Ok(c.clone()),
        Some(MetaVal::SliceV(s)) => Ok(OneCell {
            dom: ObjectWord::empty(),
            slices: vec![s.clone()],
        }),
        _ => Err(DiagramError::Other(format!("binding misses cell `{k}`"))),
    }
}

pub fn bslice(b: &Binding, k: &str) -> DResult<Slice> {
    match b.get(k) {
        Some(MetaVal::SliceV(s)) => Ok(s.clone()),
        _ => Err(DiagramError::Other(format!("binding misses slice `{k}`"))),
    }
}

pub fn bmove(b: &Binding, k: &str) -> DResult<Move> {
    match b.get(k) {
        Some(MetaVal::MoveV(m)) => Ok(m.clone()),
        _ => Err(DiagramError::Other(format!("binding misses move `{k}`"))),
    }
}

pub fn bnat(b: &Binding, k: &str) -> DResult<usize> {
    match b.get(k) {
        Some(MetaVal::Nat(n)) => Ok(*n),
        _ => Err(DiagramError::Other(format!("binding misses index `{k}`"))),
    }
}

// slice/move constructors over the braided library names

pub fn beta_slice(x: &ObjectWord, y: &ObjectWord) -> Option<Slice> {
    if x.is_empty() || y.is_empty() {
        return None;
    }
    Some(Slice::gen1(
        ObjectWord::empty(),
        "beta",
        vec![x.clone(), y.clone()],
        ObjectWord::empty(),
    ))
}

pub fn gen2_move(at: usize, name: &str, args: Vec<ObjectWord>, fwd: bool) -> Move {
    Move::new(
        at,
        MoveCore::Gen2 {
            name: name.to_string(),
            args,
            fwd,
        },
    )
}

pub fn cross_core(
    gen: &str,
    args: Vec<ObjectWord>,
    param: usize,
    inner: OneCell,
    fwd: bool,
) -> MoveCore {
    MoveCore::Crossing {
        gen: gen.to_string(),
        args,
        param,
        inner,
        fwd,
    }
}

fn slice_cell(sig: &Signature, s: &Slice) -> DResult<OneCell> {
    OneCell::single(sig, s.clone())
}

/// Source 1-cell `[beta[x,y]]` (identity when degenerate).
fn beta_cell(x: &ObjectWord, y: &ObjectWord) -> OneCell {
    match beta_slice(x, y) {
        Some(s) => OneCell {
            dom: x.concat(y),
            slices: vec![s],
        },
        None => id1(x.concat(y)),
    }
}

pub fn instantiate_builtin(
    sig: &Signature,
    kind: &crate::rewrite::BuiltinSchema,
    b: &Binding,
) -> DResult<(TwoCell, TwoCell)> {
    use crate::rewrite::BuiltinSchema as K;
    match kind {
        K::InterchangeTrivial { .. } => {
            let s = bslice(b, "s")?;
            let cell = slice_cell(sig, &s)?;
            Ok((id2(cell.clone()), id2(cell)))
        }
        K::InterchangeNat => {
            let src = bcell(b, "src")?;
            let m1 = bmove(b, "m1")?;
            let m2 = bmove(b, "m2")?;
            let lhs = TwoCell {
                source: src.clone(),
                moves: vec![m1.clone(), m2.clone()],
            };
            lhs.target(sig)?;
            let sw = crate::normalize::exchange_pair(sig, &m1, &m2)?.ok_or_else(|| {
                DiagramError::Other("interchange naturality needs disjoint windows".into())
            })?;
            let rhs = TwoCell {
                source: src,
                moves: vec![sw.0, sw.1],
            };
            rhs.target(sig)?;
            Ok((lhs, rhs))
        }
        K::Ba1 => {
            let (a, bb, c, d) = (bword(b, "a")?, bword(b, "b")?, bword(b, "c")?, bword(b, "d")?);
            let src = beta_cell(&a, &bb.concat(&c).concat(&d));
            let mut l = CellBuilder::new(sig, src.clone())?;
            l.push_auto(
                ObjectWord::empty(),
                ObjectWord::empty(),
                MoveCore::Gen2 {
                    name: "R".into(),
                    args: vec![a.clone(), bb.clone(), c.concat(&d)],
                    fwd: true,
                },
            )?;
            l.push_auto(
                bb.clone(),
                ObjectWord::empty(),
                MoveCore::Gen2 {
                    name: "R".into(),
                    args: vec![a.clone(), c.clone(), d.clone()],
                    fwd: true,
                },
            )?;
            let mut r = CellBuilder::new(sig, src)?;
            r.push_auto(
                ObjectWord::empty(),
                ObjectWord::empty(),
                MoveCore::Gen2 {
                    name: "R".into(),
                    args: vec![a.clone(), bb.concat(&c), d.clone()],
                    fwd: true,
                },
            )?;
            r.push_auto(
                ObjectWord::empty(),
                d.clone(),
                MoveCore::Gen2 {
                    name: "R".into(),
                    args: vec![a, bb, c],
                    fwd: true,
                },
            )?;
            Ok((l.finish(), r.finish()))
        }
        K::Ba2 => {
            let (a, bb, c, d) = (bword(b, "a")?, bword(b, "b")?, bword(b, "c")?, bword(b, "d")?);
            let src = beta_cell(&a.concat(&bb).concat(&c), &d);
            let mut l = CellBuilder::new(sig, src.clone())?;
            l.push_auto(
                ObjectWord::empty(),
                ObjectWord::empty(),
                MoveCore::Gen2 {
                    name: "S".into(),
                    args: vec![a.concat(&bb), c.clone(), d.clone()],
                    fwd: true,
                },
            )?;
            l.push_auto(
                ObjectWord::empty(),
                c.clone(),
                MoveCore::Gen2 {
                    name: "S".into(),
                    args: vec![a.clone(), bb.clone(), d.clone()],
                    fwd: true,
                },
            )?;
            let mut r = CellBuilder::new(sig, src)?;
            r.push_auto(
                ObjectWord::empty(),
                ObjectWord::empty(),
                MoveCore::Gen2 {
                    name: "S".into(),
                    args: vec![a.clone(), bb.concat(&c), d.clone()],
                    fwd: true,
                },
            )?;
            r.push_auto(
                a.clone(),
                ObjectWord::empty(),
                MoveCore::Gen2 {
                    name: "S".into(),
                    args: vec![bb, c, d],
                    fwd: true,
                },
            )?;
            Ok((l.finish(), r.finish()))
        }
        K::Ba3 => {
            let (a1, a2, bb, c) =
                (bword(b, "a1")?, bword(b, "a2")?, bword(b, "b")?, bword(b, "c")?);
            let a = a1.concat(&a2);
            let s0 = beta_slice(&a, &bb)
                .ok_or_else(|| DiagramError::Other("ba3 needs nonempty words".into()))?
                .whisker(&ObjectWord::empty(), &c);
            let s1 = beta_slice(&a, &c)
                .ok_or_else(|| DiagramError::Other("ba3 needs nonempty words".into()))?
                .whisker(&bb, &ObjectWord::empty());
            let src = OneCell {
                dom: a.concat(&bb).concat(&c),
                slices: vec![s0, s1],
            };
            let mut l = CellBuilder::new(sig, src.clone())?;
            l.push(Move::whiskered(
                0,
                ObjectWord::empty(),
                c.clone(),
                MoveCore::Gen2 {
                    name: "S".into(),
                    args: vec![a1.clone(), a2.clone(), bb.clone()],
                    fwd: true,
                },
            ))?;
            l.push(Move::whiskered(
                2,
                bb.clone(),
                ObjectWord::empty(),
                MoveCore::Gen2 {
                    name: "S".into(),
                    args: vec![a1.clone(), a2.clone(), c.clone()],
                    fwd: true,
                },
            ))?;
            l.sigma(1)?;
            l.push(Move::whiskered(
                0,
                a1.clone(),
                ObjectWord::empty(),
                MoveCore::Gen2 {
                    name: "R".into(),
                    args: vec![a2.clone(), bb.clone(), c.clone()],
                    fwd: false,
                },
            ))?;
            l.push(Move::whiskered(
                1,
                ObjectWord::empty(),
                a2.clone(),
                MoveCore::Gen2 {
                    name: "R".into(),
                    args: vec![a1.clone(), bb.clone(), c.clone()],
                    fwd: false,
                },
            ))?;
            let mut r = CellBuilder::new(sig, src)?;
            r.push(gen2_move(
                0,
                "R",
                vec![a.clone(), bb.clone(), c.clone()],
                false,
            ))?;
            r.push(gen2_move(0, "S", vec![a1, a2, bb.concat(&c)], true))?;
            Ok((l.finish(), r.finish()))
        }
        K::Ba4 => {
            let (a, bb, c) = (bword(b, "a")?, bword(b, "b")?, bword(b, "c")?);
            let err = || DiagramError::Other("ba4 needs nonempty words".into());
            let s0 = beta_slice(&a, &bb).ok_or_else(err)?.whisker(&ObjectWord::empty(), &c);
            let s1 = beta_slice(&a, &c).ok_or_else(err)?.whisker(&bb, &ObjectWord::empty());
            let s2 = beta_slice(&bb, &c).ok_or_else(err)?.whisker(&ObjectWord::empty(), &a);
            let src = OneCell {
                dom: a.concat(&bb).concat(&c),
                slices: vec![s0, s1, s2],
            };
            let mut l = CellBuilder::new(sig, src.clone())?;
            l.push(gen2_move(0, "R", vec![a.clone(), bb.clone(), c.clone()], false))?;
            l.push(Move::new(
                0,
                cross_core(
                    "beta",
                    vec![a.clone(), bb.concat(&c)],
                    1,
                    beta_cell(&bb, &c),
                    false,
                ),
            ))?;
            l.push(gen2_move(1, "R", vec![a.clone(), c.clone(), bb.clone()], true))?;
            let mut r = CellBuilder::new(sig, src)?;
            r.push(gen2_move(1, "S", vec![bb.clone(), a.clone(), c.clone()], false))?;
            r.push(Move::new(
                0,
                cross_core(
                    "beta",
                    vec![a.concat(&bb), c.clone()],
                    0,
                    beta_cell(&a, &bb),
                    true,
                ),
            ))?;
            r.push(gen2_move(0, "S", vec![a, bb, c], true))?;
            Ok((l.finish(), r.finish()))
        }
        K::S1 => {
            let w = bword(b, "w")?;
            Ok((id2(id1(w.clone())), id2(id1(w))))
        }
        K::SDegenerate { gen, variant } => {
            let (a, bb) = (bword(b, "a")?, bword(b, "b")?);
            let e = ObjectWord::empty();
            let (args, src) = match (gen, variant) {
                ('R', 0) => (vec![a.clone(), bb.clone(), e], beta_cell(&a, &bb)),
                ('R', 1) => (vec![a.clone(), e, bb.clone()], beta_cell(&a, &bb)),
                ('R', _) => (vec![e, a.clone(), bb.clone()], id1(a.concat(&bb))),
                ('S', 0) => (vec![e, a.clone(), bb.clone()], beta_cell(&a, &bb)),
                ('S', 1) => (vec![a.clone(), e, bb.clone()], beta_cell(&a, &bb)),
                ('S', _) => (vec![a.clone(), bb.clone(), e], id1(a.concat(&bb))),
                _ => return Err(DiagramError::Other("bad degenerate schema".into())),
            };
            let name = gen.to_string();
            let mut l = CellBuilder::new(sig, src.clone())?;
            l.push_auto(e2(), e2(), MoveCore::Gen2 {
                name,
                args,
                fwd: true,
            })?;
            Ok((l.finish(), id2(src)))
        }
        K::NatCrossing { gen } => nat_crossing(sig, gen, b),
        K::ModRS { gen } => mod_rs(sig, *gen, b),
        K::ModTriangulator { gen } => mod_triangulator(sig, *gen, b),
        K::Triangle { gen, right } => triangle(sig, gen, *right, b),
        K::Swallowtail1 => swallowtail1(sig, b),
        K::Swallowtail2 => swallowtail2(sig, b),
        K::HomFunctoriality => hom_functoriality(sig, b),
    }
}

fn e2() -> ObjectWord {
    ObjectWord::empty()
}

/// Crossing naturality: a 2-cell on the parameter side commutes with the
/// pseudonaturality crossings of the family.
fn nat_crossing(sig: &Signature, gen: &str, b: &Binding) -> DResult<(TwoCell, TwoCell)> {
    let decl = sig.gen1(gen)?.clone();
    let param = bnat(b, "param")?;
    let f = bcell(b, "f")?;
    let theta = bmove(b, "theta")?;
    let mut args = Vec::new();
    for i in 0..decl.params {
        args.push(bword(b, &format!("arg{i}"))?);
    }
    let f = OneCell {
        dom: args[param].clone(),
        slices: f.slices,
    };
    let (fd, fc) = f.boundary(sig)?;
    if fd != args[param] {
        return Err(DiagramError::Other("nat: f does not start at param".into()));
    }
    let g_cell = TwoCell {
        source: f.clone(),
        moves: vec![theta.clone()],
    }
    .target(sig)?;
    let site_dom = param_site(&decl.dom, &args, param)
        .ok_or_else(|| DiagramError::Other("nat: no dom site".into()))?;
    let site_cod = param_site(&decl.cod, &args, param)
        .ok_or_else(|| DiagramError::Other("nat: no cod site".into()))?;
    let mut args_cod = args.clone();
    args_cod[param] = fc.clone();
    // source: f embedded in the dom site, then the generator at cod-params
    let mut src_slices = embed_param_cell(sig, &site_dom, &f)?;
    if !(decl.unit_degenerate && args_cod.iter().any(|w| w.is_empty())) {
        src_slices.push(Slice::gen1(e2(), gen, args_cod.clone(), e2()));
    }
    let src = OneCell {
        dom: decl.dom.subst(&args),
        slices: src_slices,
    };

    let mut l = CellBuilder::new(sig, src.clone())?;
    l.push(embed_param_move(sig, &site_dom, &f, &theta)?)?;
    cross_chain(sig, &mut l, gen, &args, param, &g_cell, &site_dom)?;

    let mut r = CellBuilder::new(sig, src)?;
    cross_chain(sig, &mut r, gen, &args, param, &f, &site_dom)?;
    let gen_present = !(decl.unit_degenerate && args.iter().any(|w| w.is_empty()));
    let off = usize::from(gen_present);
    let mut emb = embed_param_move(sig, &site_cod, &f, &theta)?;
    emb.at += off;
    r.push(emb)?;
    Ok((l.finish(), r.finish()))
}

/// Cross a parameter-side composite over the generator. Top-level sites
/// cross slice by slice (innermost first); hom sites cross the whole cell
/// in one move. Identity cells produce no moves.
pub fn cross_chain(
    sig: &Signature,
    b: &mut CellBuilder,
    gen: &str,
    args_dom: &[ObjectWord],
    param: usize,
    f: &OneCell,
    site_dom: &crate::diagram::ParamSite,
) -> DResult<()> {
    if f.slices.is_empty() {
        return Ok(());
    }
    if matches!(site_dom, crate::diagram::ParamSite::HomTarget { .. }) {
        b.push_auto(
            e2(),
            e2(),
            cross_core(gen, args_dom.to_vec(), param, f.clone(), true),
        )?;
        return Ok(());
    }
    let words = f.words(sig)?;
    for k in (0..f.slices.len()).rev() {
        let mut args_k = args_dom.to_vec();
        args_k[param] = words[k].clone();
        let single = OneCell {
            dom: words[k].clone(),
            slices: vec![f.slices[k].clone()],
        };
        b.push(Move::new(k, cross_core(gen, args_k, param, single, true)))?;
    }
    Ok(())
}

/// Modification property of R and S: a parameter slice slides across the
/// braiding cells.
fn mod_rs(sig: &Signature, gen: char, b: &Binding) -> DResult<(TwoCell, TwoCell)> {
    let (a, bb, c) = (bword(b, "a")?, bword(b, "b")?, bword(b, "c")?);
    let param = bnat(b, "param")?;
    let f = bslice(b, "f")?;
    let fd = f.dom(sig)?;
    let fc = f.cod(sig)?;
    let name = gen.to_string();
    let e = e2();
    // generator sides as word pairs for the big beta
    let (big_x, big_y) = match gen {
        'R' => (a.clone(), bb.concat(&c)),
        _ => (a.concat(&bb), c.clone()),
    };
    // where does f act inside (a,b,c)?
    let (exp, prime): (&ObjectWord, ObjectWord) = match param {
        0 => (&a, fc.clone()),
        1 => (&bb, fc.clone()),
        _ => (&c, fc.clone()),
    };
    if *exp != fd {
        return Err(DiagramError::Other(
            "mod: slice does not start at the parameter".into(),
        ));
    }
    let (a1, b1, c1) = match param {
        0 => (prime.clone(), bb.clone(), c.clone()),
        1 => (a.clone(), prime.clone(), c.clone()),
        _ => (a.clone(), bb.clone(), prime.clone()),
    };
    // the big crossing that both sides share
    let (big_param, big_inner) = match (gen, param) {
        ('R', 0) => (0usize, slice_cell(sig, &f)?),
        ('R', 1) => (1usize, slice_cell(sig, &f.whisker(&e, &c))?),
        ('R', _) => (1usize, slice_cell(sig, &f.whisker(&bb, &e))?),
        ('S', 0) => (0usize, slice_cell(sig, &f.whisker(&e, &bb))?),
        ('S', 1) => (0usize, slice_cell(sig, &f.whisker(&a, &e))?),
        (_, _) => (1usize, slice_cell(sig, &f)?),
    };
    let mut big_args = vec![big_x.clone(), big_y.clone()];
    big_args[big_param] = big_inner.dom.clone();
    // source: f embedded before the big beta at primed parameters
    let site = param_site(
        &sig.gen1("beta")?.dom.clone(),
        &{
            let mut aa = big_args.clone();
            aa[big_param] = big_inner.dom.clone();
            aa
        },
        big_param,
    )
    .ok_or_else(|| DiagramError::Other("mod: no site".into()))?;
    let mut src_slices = embed_param_cell(sig, &site, &big_inner)?;
    let (big_xp, big_yp) = match gen {
        'R' => (a1.clone(), b1.concat(&c1)),
        _ => (a1.concat(&b1), c1.clone()),
    };
    if let Some(s) = beta_slice(&big_xp, &big_yp) {
        src_slices.push(s);
    }
    let src = OneCell {
        dom: big_x.concat(&big_y),
        slices: src_slices,
    };

    // lhs: cross f over the whole beta, then the R/S at unprimed words
    let mut l = CellBuilder::new(sig, src.clone())?;
    l.push(Move::new(
        0,
        cross_core("beta", big_args.clone(), big_param, big_inner.clone(), true),
    ))?;
    l.push_auto(
        e.clone(),
        e.clone(),
        MoveCore::Gen2 {
            name: name.clone(),
            args: vec![a.clone(), bb.clone(), c.clone()],
            fwd: true,
        },
    )?;
    // rhs: R/S at primed words, then slide f across the small betas
    let mut r = CellBuilder::new(sig, src)?;
    r.push_auto(
        e.clone(),
        e.clone(),
        MoveCore::Gen2 {
            name,
            args: vec![a1, b1, c1],
            fwd: true,
        },
    )?;
    // slide f across the two rhs legs; the concrete sequence depends on
    // which parameter carries f
    match (gen, param) {
        ('R', 0) => {
            r.push_auto(
                e.clone(),
                c.clone(),
                cross_core("beta", vec![a.clone(), bb.clone()], 0, slice_cell(sig, &f)?, true),
            )?;
            r.push_auto(
                bb.clone(),
                e.clone(),
                cross_core("beta", vec![a.clone(), c.clone()], 0, slice_cell(sig, &f)?, true),
            )?;
        }
        ('R', 1) => {
            r.push_auto(
                e.clone(),
                c.clone(),
                cross_core("beta", vec![a.clone(), bb.clone()], 1, slice_cell(sig, &f)?, true),
            )?;
            sigma_with(&mut r, &f)?;
        }
        ('R', _) => {
            sigma_with(&mut r, &f)?;
            r.push_auto(
                bb.clone(),
                e.clone(),
                cross_core("beta", vec![a.clone(), c.clone()], 1, slice_cell(sig, &f)?, true),
            )?;
        }
        ('S', 0) => {
            sigma_with(&mut r, &f)?;
            r.push_auto(
                e.clone(),
                bb.clone(),
                cross_core("beta", vec![a.clone(), c.clone()], 0, slice_cell(sig, &f)?, true),
            )?;
        }
        ('S', 1) => {
            r.push_auto(
                a.clone(),
                e.clone(),
                cross_core("beta", vec![bb.clone(), c.clone()], 0, slice_cell(sig, &f)?, true),
            )?;
            sigma_with(&mut r, &f)?;
        }
        (_, _) => {
            r.push_auto(
                a.clone(),
                e.clone(),
                cross_core("beta", vec![bb.clone(), c.clone()], 1, slice_cell(sig, &f)?, true),
            )?;
            r.push_auto(
                e.clone(),
                bb.clone(),
                cross_core("beta", vec![a.clone(), c.clone()], 1, slice_cell(sig, &f)?, true),
            )?;
        }
    }
    Ok((l.finish(), r.finish()))
}

/// Interchange `f` with the adjacent slice it commutes with, searching for
/// the unique position where the state slice matches `f`'s core.
fn sigma_with(b: &mut CellBuilder, f: &Slice) -> DResult<()> {
    let n = b.state().slices.len();
    for at in 0..n.saturating_sub(1) {
        let s1 = &b.state().slices[at];
        let s2 = &b.state().slices[at + 1];
        if s1.core == f.core || s2.core == f.core {
            if b.sigma(at).is_ok() {
                return Ok(());
            }
        }
    }
    Err(DiagramError::Other("no interchange position for f".into()))
}

/// Modification property of the triangulators.
fn mod_triangulator(sig: &Signature, gen: char, b: &Binding) -> DResult<(TwoCell, TwoCell)> {
    let (a, bb) = (bword(b, "a")?, bword(b, "b")?);
    let f = bslice(b, "f")?;
    let fd = f.dom(sig)?;
    let fc = f.cod(sig)?;
    if fd != bb {
        return Err(DiagramError::Other("mod tri: f must start at b".into()));
    }
    let e = e2();
    if gen == 's' {
        // source: f ⊗ a  (from b·a to b'·a)
        let src = OneCell {
            dom: bb.concat(&a),
            slices: vec![f.whisker(&e, &a)],
        };
        let mut l = CellBuilder::new(sig, src.clone())?;
        l.push(gen2_move(1, "s_tri", vec![a.clone(), fc.clone()], true))?;
        let mut r = CellBuilder::new(sig, src)?;
        r.push(gen2_move(0, "s_tri", vec![a.clone(), bb.clone()], true))?;
        // slide f⊗a across epsilon[a, b·a] backwards
        r.push(Move::new(
            1,
            cross_core(
                "epsilon",
                vec![a.clone(), bb.concat(&a)],
                1,
                slice_cell(sig, &f.whisker(&e, &a))?,
                false,
            ),
        ))?;
        // slide f across eta[a, b] backwards
        r.push(Move::new(
            0,
            cross_core(
                "eta",
                vec![a.clone(), bb.clone()],
                1,
                slice_cell(sig, &f)?,
                false,
            ),
        ))?;
        Ok((l.finish(), r.finish()))
    } else {
        // t: the parameter is the hom letter [a,b]
        let homw = ObjectWord::ihom(a.clone(), bb.clone());
        let homw2 = ObjectWord::ihom(a.clone(), fc.clone());
        let fslice = Slice {
            left: e.clone(),
            core: SliceCore::HomAction {
                ctx: a.clone(),
                inner: Box::new(slice_cell(sig, &f)?),
            },
            right: e.clone(),
        };
        let src = OneCell {
            dom: homw.clone(),
            slices: vec![fslice.clone()],
        };
        let mut l = CellBuilder::new(sig, src.clone())?;
        l.push(gen2_move(1, "t_tri", vec![a.clone(), fc.clone()], true))?;
        let mut r = CellBuilder::new(sig, src)?;
        // cross [a;f] over eta[a, [a,b']]
        r.push(Move::new(
            0,
            cross_core(
                "eta",
                vec![a.clone(), homw.clone()],
                1,
                slice_cell(sig, &fslice)?,
                true,
            ),
        ))?;
        // merge the two hom actions, rewrite inside, split back
        let eps2 = Slice::gen1(e.clone(), "epsilon", vec![a.clone(), fc.clone()], e.clone());
        let emb = fslice.whisker(&e, &a);
        let first = slice_cell(sig, &emb)?;
        let second = slice_cell(sig, &eps2)?;
        r.push(Move::new(
            1,
            MoveCore::HomSplit {
                ctx: a.clone(),
                first: first.clone(),
                second: second.clone(),
                fwd: false,
            },
        ))?;
        let inner_cross = TwoCell {
            source: crate::diagram::compose1(sig, &first, &second)?,
            moves: vec![Move::new(
                0,
                cross_core(
                    "epsilon",
                    vec![a.clone(), bb.clone()],
                    1,
                    slice_cell(sig, &f)?,
                    true,
                ),
            )],
        };
        inner_cross.target(sig)?;
        r.push(Move::new(
            1,
            MoveCore::HomAction2 {
                ctx: a.clone(),
                inner: Box::new(inner_cross.clone()),
                fwd: true,
            },
        ))?;
        let eps1 = Slice::gen1(e.clone(), "epsilon", vec![a.clone(), bb.clone()], e.clone());
        r.push(Move::new(
            1,
            MoveCore::HomSplit {
                ctx: a.clone(),
                first: slice_cell(sig, &eps1)?,
                second: slice_cell(sig, &f)?,
                fwd: true,
            },
        ))?;
        r.push(gen2_move(0, "t_tri", vec![a.clone(), bb.clone()], true))?;
        let _ = homw2;
        Ok((l.finish(), r.finish()))
    }
}

/// Adjoint-equivalence triangle identities.
fn triangle(sig: &Signature, gen: &str, right: bool, b: &Binding) -> DResult<(TwoCell, TwoCell)> {
    let decl = sig.gen1(gen)?.clone();
    let mut args = Vec::new();
    for i in 0..decl.params {
        args.push(bword(b, &format!("arg{i}"))?);
    }
    let g = Slice::gen1(e2(), gen, args.clone(), e2());
    let degenerate = decl.unit_degenerate && args.iter().any(|w| w.is_empty());
    let base = if right { g.inverse() } else { g.clone() };
    let src = if degenerate {
        id1(if right {
            decl.cod.subst(&args)
        } else {
            decl.dom.subst(&args)
        })
    } else {
        slice_cell(sig, &base)?
    };
    let mut l = CellBuilder::new(sig, src.clone())?;
    let unit_at = usize::from(right && !degenerate);
    let counit_at = usize::from(!right && !degenerate);
    l.push(Move::new(
        unit_at,
        MoveCore::EquivUnit {
            gen: gen.to_string(),
            args: args.clone(),
            fwd: true,
        },
    ))?;
    l.push(Move::new(
        counit_at,
        MoveCore::EquivCounit {
            gen: gen.to_string(),
            args,
            fwd: true,
        },
    ))?;
    Ok((l.finish(), id2(src)))
}

fn swallowtail1(sig: &Signature, b: &Binding) -> DResult<(TwoCell, TwoCell)> {
    let (a, bb) = (bword(b, "a")?, bword(b, "b")?);
    let e = e2();
    let eta_b = Slice::gen1(e.clone(), "eta", vec![a.clone(), bb.clone()], e.clone());
    let src = slice_cell(sig, &eta_b)?;
    let mut l = CellBuilder::new(sig, src.clone())?;
    // [a, s]: insert the triangulator inside the hom
    let s_cell = TwoCell {
        source: id1(bb.concat(&a)),
        moves: vec![gen2_move(0, "s_tri", vec![a.clone(), bb.clone()], true)],
    };
    l.push(Move::new(
        1,
        MoveCore::HomAction2 {
            ctx: a.clone(),
            inner: Box::new(s_cell),
            fwd: true,
        },
    ))?;
    // split [a, η1 ; ε] into two letters
    let eta_w = eta_b.whisker(&e, &a);
    let eps = Slice::gen1(
        e.clone(),
        "epsilon",
        vec![a.clone(), bb.concat(&a)],
        e.clone(),
    );
    l.push(Move::new(
        1,
        MoveCore::HomSplit {
            ctx: a.clone(),
            first: slice_cell(sig, &eta_w)?,
            second: slice_cell(sig, &eps)?,
            fwd: true,
        },
    ))?;
    // recognise the η-crossing of η itself, backwards
    l.push(Move::new(
        0,
        cross_core(
            "eta",
            vec![a.clone(), bb.clone()],
            1,
            slice_cell(sig, &eta_b)?,
            false,
        ),
    ))?;
    // the triangulator t at b·a
    l.push(gen2_move(1, "t_tri", vec![a.clone(), bb.concat(&a)], true))?;
    Ok((l.finish(), id2(src)))
}

fn swallowtail2(sig: &Signature, b: &Binding) -> DResult<(TwoCell, TwoCell)> {
    let (a, bb) = (bword(b, "a")?, bword(b, "b")?);
    let e = e2();
    let homw = ObjectWord::ihom(a.clone(), bb.clone());
    let eps_b = Slice::gen1(e.clone(), "epsilon", vec![a.clone(), bb.clone()], e.clone());
    let src = slice_cell(sig, &eps_b)?;
    let mut l = CellBuilder::new(sig, src.clone())?;
    l.push(gen2_move(0, "s_tri", vec![a.clone(), homw.clone()], true))?;
    // cross ε over itself, backwards
    l.push(Move::new(
        1,
        cross_core(
            "epsilon",
            vec![a.clone(), homw.concat(&a)],
            1,
            slice_cell(sig, &eps_b)?,
            false,
        ),
    ))?;
    // t at [a,b], whiskered by a on the right
    l.push(Move::whiskered(
        0,
        e.clone(),
        a.clone(),
        MoveCore::Gen2 {
            name: "t_tri".into(),
            args: vec![a.clone(), bb.clone()],
            fwd: true,
        },
    ))?;
    Ok((l.finish(), id2(src)))
}

fn hom_functoriality(sig: &Signature, b: &Binding) -> DResult<(TwoCell, TwoCell)> {
    let ctx = bword(b, "ctx")?;
    let f = bcell(b, "f")?;
    let g = bcell(b, "g")?;
    let theta = bmove(b, "theta")?;
    let joined = crate::diagram::compose1(sig, &f, &g)?;
    let lifted = Move {
        at: theta.at + f.slices.len(),
        left: theta.left.clone(),
        right: theta.right.clone(),
        core: theta.core.clone(),
    };
    let inner_l = TwoCell {
        source: joined.clone(),
        moves: vec![lifted],
    };
    let g2 = TwoCell {
        source: g.clone(),
        moves: vec![theta.clone()],
    }
    .target(sig)?;
    let mk_hom2 = |cell: TwoCell| -> Move {
        Move::new(
            0,
            MoveCore::HomAction2 {
                ctx: ctx.clone(),
                inner: Box::new(cell),
                fwd: true,
            },
        )
    };
    let src = OneCell {
        dom: ObjectWord::ihom(ctx.clone(), joined.dom.clone()),
        slices: vec![Slice {
            left: e2(),
            core: SliceCore::HomAction {
                ctx: ctx.clone(),
                inner: Box::new(joined.clone()),
            },
            right: e2(),
        }],
    };
    let mut l = CellBuilder::new(sig, src.clone())?;
    l.push(mk_hom2(inner_l))?;
    let mut r = CellBuilder::new(sig, src)?;
    r.push(Move::new(
        0,
        MoveCore::HomSplit {
            ctx: ctx.clone(),
            first: f.clone(),
            second: g.clone(),
            fwd: true,
        },
    ))?;
    let inner_theta = TwoCell {
        source: g,
        moves: vec![theta],
    };
    let mut hom2_theta = mk_hom2(inner_theta);
    hom2_theta.at = 1;
    r.push(hom2_theta)?;
    r.push(Move::new(
        0,
        MoveCore::HomSplit {
            ctx,
            first: f,
            second: g2,
            fwd: false,
        },
    ))?;
    Ok((l.finish(), r.finish()))
}

/// Candidate bindings read off the subject window for `match_at`.
pub fn candidate_bindings(
    sig: &Signature,
    schema: &AxiomSchema,
    subject: &TwoCell,
    anchor: usize,
    dir: crate::rewrite::Direction,
) -> DResult<Vec<(Binding, crate::rewrite::ApplyCtx)>> {
    use crate::rewrite::{ApplyCtx, BuiltinSchema as K, SchemaPattern};
    let mut bindings: Vec<Binding> = Vec::new();
    match &schema.pattern {
        SchemaPattern::Closed { .. } => bindings.push(Binding::new()),
        SchemaPattern::Builtin(k) => {
            let Some(mv) = subject.moves.get(anchor) else {
                return Ok(Vec::new());
            };
            match k {
                K::SDegenerate { gen, variant } => {
                    if let MoveCore::Gen2 { name, args, .. } = &mv.core {
                        if name == &gen.to_string() && args.len() == 3 {
                            let (a, bb) = match (gen, variant) {
                                ('R', 0) => (&args[0], &args[1]),
                                ('R', 1) => (&args[0], &args[2]),
                                ('R', _) => (&args[1], &args[2]),
                                ('S', 0) => (&args[1], &args[2]),
                                ('S', 1) => (&args[0], &args[2]),
                                (_, _) => (&args[0], &args[1]),
                            };
                            let mut b = Binding::new();
                            b.insert("a".into(), MetaVal::Word(a.clone()));
                            b.insert("b".into(), MetaVal::Word(bb.clone()));
                            bindings.push(b);
                        }
                    }
                }
                K::Ba1 | K::Ba2 => {
                    // anchor must be the first R/S move; enumerate splits
                    if let MoveCore::Gen2 { name, args, .. } = &mv.core {
                        let want = if matches!(k, K::Ba1) { "R" } else { "S" };
                        if name == want && args.len() == 3 {
                            let splittable = if matches!(k, K::Ba1) { 2 } else { 1 };
                            let w = &args[splittable];
                            for cut in 0..=w.len() {
                                let mut b = Binding::new();
                                let (p, q) = (w.slice_range(0, cut), w.slice_range(cut, w.len()));
                                if matches!(k, K::Ba1) {
                                    b.insert("a".into(), MetaVal::Word(args[0].clone()));
                                    b.insert("b".into(), MetaVal::Word(args[1].clone()));
                                    b.insert("c".into(), MetaVal::Word(p));
                                    b.insert("d".into(), MetaVal::Word(q));
                                } else {
                                    b.insert("a".into(), MetaVal::Word(p));
                                    b.insert("b".into(), MetaVal::Word(q));
                                    b.insert("c".into(), MetaVal::Word(args[2].clone()));
                                    b.insert("d".into(), MetaVal::Word(args[1].clone()));
                                }
                                bindings.push(b);
                            }
                        }
                    }
                }
                K::NatCrossing { gen } => {
                    // read the crossing move in the window
                    let lim = subject.moves.len().min(anchor + 3);
                    for mv in &subject.moves[anchor..lim] {
                        if let MoveCore::Crossing {
                            gen: g,
                            args,
                            param,
                            inner,
                            ..
                        } = &mv.core
                        {
                            if g == gen {
                                // theta is the other move in the window
                                for other in &subject.moves[anchor..lim] {
                                    if std::ptr::eq(other, mv) {
                                        continue;
                                    }
                                    let mut b = Binding::new();
                                    for (i, w) in args.iter().enumerate() {
                                        b.insert(
                                            format!("arg{i}"),
                                            MetaVal::Word(w.clone()),
                                        );
                                    }
                                    b.insert("param".into(), MetaVal::Nat(*param));
                                    b.insert("f".into(), MetaVal::Cell(inner.clone()));
                                    // recover theta relative to the param word
                                    if let Some(t) = strip_embedding(other) {
                                        b.insert("theta".into(), MetaVal::MoveV(t));
                                        bindings.push(b);
                                    }
                                }
                            }
                        }
                    }
                }
                K::Ba3 => {
                    if let MoveCore::Gen2 { name, args, .. } = &mv.core {
                        if args.len() == 3 {
                            if name == "S" {
                                // S[a1, a2, b·c]: split the third argument
                                let w = &args[2];
                                for cut in 0..=w.len() {
                                    let mut b = Binding::new();
                                    b.insert("a1".into(), MetaVal::Word(args[0].clone()));
                                    b.insert("a2".into(), MetaVal::Word(args[1].clone()));
                                    b.insert(
                                        "b".into(),
                                        MetaVal::Word(w.slice_range(0, cut)),
                                    );
                                    b.insert(
                                        "c".into(),
                                        MetaVal::Word(w.slice_range(cut, w.len())),
                                    );
                                    bindings.push(b);
                                }
                            }
                            if name == "R" {
                                // R[a1·a2, b, c]: split the first argument
                                let w = &args[0];
                                for cut in 0..=w.len() {
                                    let mut b = Binding::new();
                                    b.insert(
                                        "a1".into(),
                                        MetaVal::Word(w.slice_range(0, cut)),
                                    );
                                    b.insert(
                                        "a2".into(),
                                        MetaVal::Word(w.slice_range(cut, w.len())),
                                    );
                                    b.insert("b".into(), MetaVal::Word(args[1].clone()));
                                    b.insert("c".into(), MetaVal::Word(args[2].clone()));
                                    bindings.push(b);
                                }
                            }
                        }
                    }
                }
                K::Ba4 => {
                    if let MoveCore::Gen2 { name, args, .. } = &mv.core {
                        if args.len() == 3 {
                            let mut b = Binding::new();
                            if name == "R" {
                                b.insert("a".into(), MetaVal::Word(args[0].clone()));
                                b.insert("b".into(), MetaVal::Word(args[1].clone()));
                                b.insert("c".into(), MetaVal::Word(args[2].clone()));
                            } else {
                                b.insert("b".into(), MetaVal::Word(args[0].clone()));
                                b.insert("a".into(), MetaVal::Word(args[1].clone()));
                                b.insert("c".into(), MetaVal::Word(args[2].clone()));
                            }
                            bindings.push(b);
                        }
                    }
                }
                K::ModRS { gen } => {
                    // anchor on the R/S move; nearby crossings supply the slice
                    let lo = anchor.saturating_sub(3);
                    let hi = subject.moves.len().min(anchor + 4);
                    let mut gen_moves: Vec<&Move> = Vec::new();
                    for m in &subject.moves[lo..hi] {
                        if let MoveCore::Gen2 { name, args, .. } = &m.core {
                            if *name == gen.to_string() && args.len() == 3 {
                                gen_moves.push(m);
                            }
                        }
                    }
                    let mut inners: Vec<Slice> = Vec::new();
                    for m in &subject.moves[lo..hi] {
                        if let MoveCore::Crossing { inner, .. } = &m.core {
                            if inner.slices.len() == 1 {
                                let mut s0 = inner.slices[0].clone();
                                // strip whiskers so the slice is parameter-relative
                                s0.left = crate::signature::ObjectWord::empty();
                                s0.right = crate::signature::ObjectWord::empty();
                                inners.push(inner.slices[0].clone());
                                inners.push(s0);
                            }
                        }
                    }
                    inners.dedup();
                    for m in gen_moves {
                        let MoveCore::Gen2 { args, .. } = &m.core else { continue };
                        for param in 0..3 {
                            for f in &inners {
                                let Ok(fd) = f.dom(sig) else { continue };
                                let Ok(fc) = f.cod(sig) else { continue };
                                // the move may be at primed or unprimed words
                                for base in [&fd, &fc] {
                                    if args[param] != *base && *base == fc {
                                        continue;
                                    }
                                    let mut words = args.clone();
                                    words[param] = fd.clone();
                                    let mut b = Binding::new();
                                    b.insert("a".into(), MetaVal::Word(words[0].clone()));
                                    b.insert("b".into(), MetaVal::Word(words[1].clone()));
                                    b.insert("c".into(), MetaVal::Word(words[2].clone()));
                                    b.insert("param".into(), MetaVal::Nat(param));
                                    b.insert("f".into(), MetaVal::SliceV(f.clone()));
                                    bindings.push(b);
                                }
                            }
                        }
                    }
                    bindings.dedup();
                }
                K::Triangle { gen, .. } => {
                    if let MoveCore::EquivUnit { gen: g, args, .. } = &mv.core {
                        if g == gen {
                            let mut b = Binding::new();
                            for (i, w) in args.iter().enumerate() {
                                b.insert(format!("arg{i}"), MetaVal::Word(w.clone()));
                            }
                            bindings.push(b);
                        }
                    }
                }
                _ => {}
            }
        }
    }
    // infer planting contexts by scanning offsets and whisker splits
    let mut out = Vec::new();
    for b in bindings {
        let Ok((l, r)) = schema.instantiate(sig, &b) else {
            continue;
        };
        let side = match dir {
            crate::rewrite::Direction::Fwd => l,
            crate::rewrite::Direction::Bwd => r,
        };
        let move_len = side.moves.len();
        if anchor + move_len > subject.moves.len() {
            continue;
        }
        let prefix = TwoCell {
            source: subject.source.clone(),
            moves: subject.moves[..anchor].to_vec(),
        };
        let Ok(mid) = prefix.target(sig) else { continue };
        let nslices = side.source.slices.len();
        if nslices > mid.slices.len() {
            continue;
        }
        for slice_at in 0..=mid.slices.len() - nslices {
            let Ok(words) = mid.words(sig) else { break };
            let w = &words[slice_at];
            let need = &side.source.dom;
            if need.len() > w.len() {
                continue;
            }
            for cut in 0..=w.len() - need.len() {
                if w.slice_range(cut, cut + need.len()) == *need {
                    out.push((
                        b.clone(),
                        ApplyCtx {
                            move_at: anchor,
                            move_len,
                            slice_at,
                            left: w.slice_range(0, cut),
                        },
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// Undo the whisker/hom embedding of a move, recovering the relative form.
fn strip_embedding(m: &Move) -> Option<Move> {
    match &m.core {
        MoveCore::HomAction2 { inner, .. } => inner.moves.first().cloned(),
        _ => Some(m.clone()),
    }
}
