//! The typed IR: 1-cells as slice sequences, 2-cells as move sequences.
//!
//! A slice is one whiskered generator application; a 1-cell is a composable
//! chain of slices read bottom to top. A move rewrites a window of adjacent
//! slices; a 2-cell is a chain of moves read left to right.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::signature::{Gen1Kind, Ident, LetterT, ObjectWord, SigError, Signature, WordT};

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("boundary mismatch: expected {expected:?}, found {found:?}")]
    BoundaryMismatch {
        expected: ObjectWord,
        found: ObjectWord,
    },
    #[error("ill-typed at slice {index}: slice domain {expected:?} does not thread {found:?}")]
    IllTyped {
        index: usize,
        expected: ObjectWord,
        found: ObjectWord,
    },
    #[error("move {index} does not match at slice {at}: {reason}")]
    MoveMismatch {
        index: usize,
        at: usize,
        reason: String,
    },
    #[error("signature error: {0}")]
    Sig(#[from] SigError),
    #[error("{0}")]
    Other(String),
}

pub type DResult<T> = Result<T, DiagramError>;

/// Core of a slice: a 1-generator instance, its formal inverse, or the
/// action of `[ctx, -]` on an inner 1-cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SliceCore {
    Gen1 {
        name: Ident,
        args: Vec<ObjectWord>,
        inv: bool,
    },
    HomAction {
        ctx: ObjectWord,
        inner: Box<OneCell>,
    },
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slice {
    pub left: ObjectWord,
    pub core: SliceCore,
    pub right: ObjectWord,
}

impl fmt::Debug for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::dsl::print_slice(self))
    }
}

impl Slice {
    pub fn gen1(left: ObjectWord, name: &str, args: Vec<ObjectWord>, right: ObjectWord) -> Slice {
        Slice {
            left,
            core: SliceCore::Gen1 {
                name: name.to_string(),
                args,
                inv: false,
            },
            right,
        }
    }

    pub fn core_dom(&self, sig: &Signature) -> DResult<ObjectWord> {
        match &self.core {
            SliceCore::Gen1 { name, args, inv } => {
                let d = sig.gen1(name)?;
                let t = if *inv { &d.cod } else { &d.dom };
                Ok(t.subst(args))
            }
            SliceCore::HomAction { ctx, inner } => {
                Ok(ObjectWord::ihom(ctx.clone(), inner.dom.clone()))
            }
        }
    }

    pub fn core_cod(&self, sig: &Signature) -> DResult<ObjectWord> {
        match &self.core {
            SliceCore::Gen1 { name, args, inv } => {
                let d = sig.gen1(name)?;
                let t = if *inv { &d.dom } else { &d.cod };
                Ok(t.subst(args))
            }
            SliceCore::HomAction { ctx, inner } => {
                let (_, cod) = inner.boundary(sig)?;
                Ok(ObjectWord::ihom(ctx.clone(), cod))
            }
        }
    }

    pub fn dom(&self, sig: &Signature) -> DResult<ObjectWord> {
        Ok(self.left.concat(&self.core_dom(sig)?).concat(&self.right))
    }

    pub fn cod(&self, sig: &Signature) -> DResult<ObjectWord> {
        Ok(self.left.concat(&self.core_cod(sig)?).concat(&self.right))
    }

    pub fn whisker(&self, l: &ObjectWord, r: &ObjectWord) -> Slice {
        Slice {
            left: l.concat(&self.left),
            core: self.core.clone(),
            right: self.right.concat(r),
        }
    }

    pub fn inverse(&self) -> Slice {
        let core = match &self.core {
            SliceCore::Gen1 { name, args, inv } => SliceCore::Gen1 {
                name: name.clone(),
                args: args.clone(),
                inv: !inv,
            },
            // inverse of a hom action is the hom action of the reversed
            // inner cell only when the inner cell is invertible slicewise;
            // callers in this kernel never need it, so keep it structural
            SliceCore::HomAction { .. } => {
                panic!("inverse of a hom-action slice is not defined")
            }
        };
        Slice {
            left: self.left.clone(),
            core,
            right: self.right.clone(),
        }
    }
}

/// A typed composite of 1-cells: slices threaded bottom to top.
/// The empty slice list is the identity on `dom`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OneCell {
    pub dom: ObjectWord,
    pub slices: Vec<Slice>,
}

impl fmt::Debug for OneCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::dsl::print_onecell(self))
    }
}

pub fn id1(w: ObjectWord) -> OneCell {
    OneCell {
        dom: w,
        slices: Vec::new(),
    }
}

impl OneCell {
    pub fn single(sig: &Signature, slice: Slice) -> DResult<OneCell> {
        let dom = slice.dom(sig)?;
        Ok(OneCell {
            dom,
            slices: vec![slice],
        })
    }

    /// Threading check; returns (dom, cod).
    pub fn boundary(&self, sig: &Signature) -> DResult<(ObjectWord, ObjectWord)> {
        let mut w = self.dom.clone();
        for (i, s) in self.slices.iter().enumerate() {
            let d = s.dom(sig)?;
            if d != w {
                return Err(DiagramError::IllTyped {
                    index: i,
                    expected: d,
                    found: w,
                });
            }
            w = s.cod(sig)?;
        }
        Ok((self.dom.clone(), w))
    }

    pub fn cod(&self, sig: &Signature) -> DResult<ObjectWord> {
        Ok(self.boundary(sig)?.1)
    }

    /// Words threaded through the cell: `n+1` entries for `n` slices.
    pub fn words(&self, sig: &Signature) -> DResult<Vec<ObjectWord>> {
        let mut out = vec![self.dom.clone()];
        let mut w = self.dom.clone();
        for (i, s) in self.slices.iter().enumerate() {
            let d = s.dom(sig)?;
            if d != w {
                return Err(DiagramError::IllTyped {
                    index: i,
                    expected: d,
                    found: w,
                });
            }
            w = s.cod(sig)?;
            out.push(w.clone());
        }
        Ok(out)
    }

    pub fn whisker(&self, l: &ObjectWord, r: &ObjectWord) -> OneCell {
        OneCell {
            dom: l.concat(&self.dom).concat(r),
            slices: self.slices.iter().map(|s| s.whisker(l, r)).collect(),
        }
    }
}

/// Strict composition: slice concatenation.
pub fn compose1(sig: &Signature, f: &OneCell, g: &OneCell) -> DResult<OneCell> {
    let (_, cf) = f.boundary(sig)?;
    if cf != g.dom {
        return Err(DiagramError::BoundaryMismatch {
            expected: cf,
            found: g.dom.clone(),
        });
    }
    let mut slices = f.slices.clone();
    slices.extend(g.slices.iter().cloned());
    Ok(OneCell {
        dom: f.dom.clone(),
        slices,
    })
}

/// Left-first tensor: `(f ⊗ dom g) ; (cod f ⊗ g)`.
pub fn tensor1(sig: &Signature, f: &OneCell, g: &OneCell) -> DResult<OneCell> {
    let (_, cf) = f.boundary(sig)?;
    let fw = f.whisker(&ObjectWord::empty(), &g.dom);
    let gw = g.whisker(&cf, &ObjectWord::empty());
    compose1(sig, &fw, &gw)
}

/// Core of a move. Every core is invertible; `fwd` selects the direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveCore {
    /// A 2-generator instance.
    Gen2 {
        name: Ident,
        args: Vec<ObjectWord>,
        fwd: bool,
    },
    /// Interchanger: exchange two adjacent slices acting on disjoint
    /// segments of the word. `fwd` goes from the stored order to the
    /// exchanged order.
    Interchange {
        first: Slice,
        second: Slice,
        fwd: bool,
    },
    /// Pseudonaturality of a 1-generator family in a declared parameter:
    /// slide `inner` (a 1-cell on the parameter word) across the generator.
    /// `args` hold the generator parameters with `param` at the *domain*
    /// side of `inner`. Forward:
    /// `[inner@dom-side, gen(args with param := cod inner)] => [gen(args), inner@cod-side]`.
    Crossing {
        gen: Ident,
        args: Vec<ObjectWord>,
        param: usize,
        inner: OneCell,
        fwd: bool,
    },
    /// Unit of an adjoint equivalence: `[] => [g, g⁻¹]` on `dom g`.
    EquivUnit {
        gen: Ident,
        args: Vec<ObjectWord>,
        fwd: bool,
    },
    /// Counit: `[g⁻¹, g] => []` on `cod g`.
    EquivCounit {
        gen: Ident,
        args: Vec<ObjectWord>,
        fwd: bool,
    },
    /// `[ctx, θ]`: the action of `[ctx, -]` on an inner 2-cell.
    HomAction2 {
        ctx: ObjectWord,
        inner: Box<TwoCell>,
        fwd: bool,
    },
    /// Hom functoriality: `[ctx, f;g] => [ctx,f] ; [ctx,g]`.
    HomSplit {
        ctx: ObjectWord,
        first: OneCell,
        second: OneCell,
        fwd: bool,
    },
}

impl MoveCore {
    pub fn is_structural(&self) -> bool {
        matches!(
            self,
            MoveCore::Interchange { .. } | MoveCore::Crossing { .. }
        )
    }

    /// Stable name used for normal-form tie-breaking and rendering labels.
    pub fn label(&self) -> String {
        match self {
            MoveCore::Gen2 { name, fwd, .. } => {
                if *fwd {
                    name.clone()
                } else {
                    format!("{name}~")
                }
            }
            MoveCore::Interchange { .. } => "sigma".into(),
            MoveCore::Crossing { gen, .. } => format!("cross.{gen}"),
            MoveCore::EquivUnit { gen, .. } => format!("unit.{gen}"),
            MoveCore::EquivCounit { gen, .. } => format!("counit.{gen}"),
            MoveCore::HomAction2 { .. } => "hom2".into(),
            MoveCore::HomSplit { .. } => "split".into(),
        }
    }
}

/// A typed move: a window rewrite at vertical position `at`, whiskered by
/// `left` and `right`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Move {
    pub at: usize,
    pub left: ObjectWord,
    pub right: ObjectWord,
    pub core: MoveCore,
}

impl fmt::Debug for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::dsl::print_move(self))
    }
}

/// Exchange two composable slices acting on disjoint word segments.
/// Returns the two slices in swapped application order.
pub fn exchange_slices(
    sig: &Signature,
    s1: &Slice,
    s2: &Slice,
) -> DResult<Option<(Slice, Slice)>> {
    let w0 = s1.dom(sig)?;
    let c1d = s1.core_dom(sig)?;
    let c1c = s1.core_cod(sig)?;
    let c2d = s2.core_dom(sig)?;
    let a1 = s1.left.len();
    let b1 = a1 + c1d.len();
    let b1_out = a1 + c1c.len();
    let a2 = s2.left.len();
    let b2 = a2 + c2d.len();
    if b2 <= a1 {
        // second acts strictly left of first's window
        let s2n = Slice {
            left: s2.left.clone(),
            core: s2.core.clone(),
            right: w0.slice_range(b2, w0.len()),
        };
        let w1 = s2n.cod(sig)?;
        let delta = s2n.core_cod(sig)?.len() as isize - c2d.len() as isize;
        let new_a1 = (a1 as isize + delta) as usize;
        let s1n = Slice {
            left: w1.slice_range(0, new_a1),
            core: s1.core.clone(),
            right: s1.right.clone(),
        };
        Ok(Some((s2n, s1n)))
    } else if a2 >= b1_out {
        // second acts strictly right of first's output window
        let off = a2 - b1_out;
        let new_a2 = b1 + off;
        let s2n = Slice {
            left: w0.slice_range(0, new_a2),
            core: s2.core.clone(),
            right: s2.right.clone(),
        };
        let w1 = s2n.cod(sig)?;
        let s1n = Slice {
            left: s1.left.clone(),
            core: s1.core.clone(),
            right: w1.slice_range(b1, w1.len()),
        };
        Ok(Some((s2n, s1n)))
    } else {
        Ok(None)
    }
}

/// How a pseudonatural parameter occurs in a boundary template: either as a
/// top-level word position or inside the target of one hom letter.
#[derive(Clone, Debug)]
pub enum ParamSite {
    Top {
        prefix: ObjectWord,
        suffix: ObjectWord,
    },
    HomTarget {
        prefix: ObjectWord,
        suffix: ObjectWord,
        ctx: ObjectWord,
        target_prefix: ObjectWord,
        target_suffix: ObjectWord,
    },
}

/// Locate the unique occurrence of `param` in a boundary template.
pub fn param_site(template: &WordT, args: &[ObjectWord], param: usize) -> Option<ParamSite> {
    for (k, l) in template.0.iter().enumerate() {
        if *l == LetterT::Param(param) {
            return Some(ParamSite::Top {
                prefix: WordT(template.0[..k].to_vec()).subst(args),
                suffix: WordT(template.0[k + 1..].to_vec()).subst(args),
            });
        }
        if let LetterT::IHom(src_t, tgt_t) = l {
            for (j, tl) in tgt_t.0.iter().enumerate() {
                if *tl == LetterT::Param(param) {
                    return Some(ParamSite::HomTarget {
                        prefix: WordT(template.0[..k].to_vec()).subst(args),
                        suffix: WordT(template.0[k + 1..].to_vec()).subst(args),
                        ctx: src_t.subst(args),
                        target_prefix: WordT(tgt_t.0[..j].to_vec()).subst(args),
                        target_suffix: WordT(tgt_t.0[j + 1..].to_vec()).subst(args),
                    });
                }
            }
        }
    }
    None
}

/// Embed a 1-cell on the parameter word into the instantiated template.
/// Top-level sites whisker the slices; hom sites wrap the whole cell as a
/// single hom-action slice (identity inner cells vanish).
pub fn embed_param_cell(
    sig: &Signature,
    site: &ParamSite,
    inner: &OneCell,
) -> DResult<Vec<Slice>> {
    match site {
        ParamSite::Top { prefix, suffix } => {
            Ok(inner.whisker(prefix, suffix).slices)
        }
        ParamSite::HomTarget {
            prefix,
            suffix,
            ctx,
            target_prefix,
            target_suffix,
        } => {
            if inner.slices.is_empty() {
                return Ok(Vec::new());
            }
            let w = inner.whisker(target_prefix, target_suffix);
            w.boundary(sig)?;
            Ok(vec![Slice {
                left: prefix.clone(),
                core: SliceCore::HomAction {
                    ctx: ctx.clone(),
                    inner: Box::new(w),
                },
                right: suffix.clone(),
            }])
        }
    }
}

/// Embed a move acting on the parameter-side cell `f` into the template
/// site: whisker for top-level sites, wrap as a hom action for hom sites.
pub fn embed_param_move(
    sig: &Signature,
    site: &ParamSite,
    f: &OneCell,
    theta: &Move,
) -> DResult<Move> {
    match site {
        ParamSite::Top { prefix, suffix } => Ok(Move {
            at: theta.at,
            left: prefix.concat(&theta.left),
            right: theta.right.concat(suffix),
            core: theta.core.clone(),
        }),
        ParamSite::HomTarget {
            prefix,
            suffix,
            ctx,
            target_prefix,
            target_suffix,
        } => {
            let inner_cell = TwoCell {
                source: f.whisker(target_prefix, target_suffix),
                moves: vec![Move {
                    at: theta.at,
                    left: target_prefix.concat(&theta.left),
                    right: theta.right.concat(target_suffix),
                    core: theta.core.clone(),
                }],
            };
            inner_cell.target(sig)?;
            Ok(Move {
                at: 0,
                left: prefix.clone(),
                right: suffix.clone(),
                core: MoveCore::HomAction2 {
                    ctx: ctx.clone(),
                    inner: Box::new(inner_cell),
                    fwd: true,
                },
            })
        }
    }
}

impl Move {
    pub fn new(at: usize, core: MoveCore) -> Move {
        Move {
            at,
            left: ObjectWord::empty(),
            right: ObjectWord::empty(),
            core,
        }
    }

    pub fn whiskered(at: usize, left: ObjectWord, right: ObjectWord, core: MoveCore) -> Move {
        Move {
            at,
            left,
            right,
            core,
        }
    }

    pub fn inverse(&self) -> Move {
        let core = match &self.core {
            MoveCore::Gen2 { name, args, fwd } => MoveCore::Gen2 {
                name: name.clone(),
                args: args.clone(),
                fwd: !fwd,
            },
            MoveCore::Interchange { first, second, fwd } => MoveCore::Interchange {
                first: first.clone(),
                second: second.clone(),
                fwd: !fwd,
            },
            MoveCore::Crossing {
                gen,
                args,
                param,
                inner,
                fwd,
            } => MoveCore::Crossing {
                gen: gen.clone(),
                args: args.clone(),
                param: *param,
                inner: inner.clone(),
                fwd: !fwd,
            },
            MoveCore::EquivUnit { gen, args, fwd } => MoveCore::EquivUnit {
                gen: gen.clone(),
                args: args.clone(),
                fwd: !fwd,
            },
            MoveCore::EquivCounit { gen, args, fwd } => MoveCore::EquivCounit {
                gen: gen.clone(),
                args: args.clone(),
                fwd: !fwd,
            },
            MoveCore::HomAction2 { ctx, inner, fwd } => MoveCore::HomAction2 {
                ctx: ctx.clone(),
                inner: inner.clone(),
                fwd: !fwd,
            },
            MoveCore::HomSplit {
                ctx,
                first,
                second,
                fwd,
            } => MoveCore::HomSplit {
                ctx: ctx.clone(),
                first: first.clone(),
                second: second.clone(),
                fwd: !fwd,
            },
        };
        Move {
            at: self.at,
            left: self.left.clone(),
            right: self.right.clone(),
            core,
        }
    }

    pub fn is_inverse_of(&self, other: &Move) -> bool {
        *self == other.inverse()
    }

    /// Raw (unwhiskered) window sides of the core, oriented by `fwd`.
    fn raw_sides(&self, sig: &Signature) -> DResult<(Vec<Slice>, Vec<Slice>, ObjectWord)> {
        let (lhs, rhs, dom) = match &self.core {
            MoveCore::Gen2 { name, args, fwd } => {
                let decl = sig.gen2(name)?.clone();
                if args.len() != decl.params {
                    return Err(DiagramError::Other(format!(
                        "gen2 {name} expects {} parameters, got {}",
                        decl.params,
                        args.len()
                    )));
                }
                let l = sig.subst_cell(&decl.lhs, args);
                let r = sig.subst_cell(&decl.rhs, args);
                let dom = l.dom.clone();
                if *fwd {
                    (l.slices, r.slices, dom)
                } else {
                    (r.slices, l.slices, dom)
                }
            }
            MoveCore::Interchange { first, second, fwd } => {
                let swapped = exchange_slices(sig, first, second)?.ok_or_else(|| {
                    DiagramError::Other("interchange of overlapping slices".into())
                })?;
                let dom = first.dom(sig)?;
                let a = vec![first.clone(), second.clone()];
                let b = vec![swapped.0, swapped.1];
                if *fwd {
                    (a, b, dom)
                } else {
                    let dom2 = dom;
                    (b, a, dom2)
                }
            }
            MoveCore::Crossing {
                gen,
                args,
                param,
                inner,
                fwd,
            } => {
                let decl = sig.gen1(gen)?.clone();
                if !decl.natural.contains(param) {
                    return Err(DiagramError::Other(format!(
                        "generator {gen} is not pseudonatural in parameter {param}"
                    )));
                }
                let (x_dom, x_cod) = inner.boundary(sig)?;
                if args[*param] != x_dom {
                    return Err(DiagramError::Other(format!(
                        "crossing parameter mismatch: {:?} vs {:?}",
                        args[*param], x_dom
                    )));
                }
                let mut args_cod = args.to_vec();
                args_cod[*param] = x_cod;
                let mk_gen = |a: &Vec<ObjectWord>| -> Option<Slice> {
                    if decl.unit_degenerate && a.iter().any(|w| w.is_empty()) {
                        return None;
                    }
                    Some(Slice {
                        left: ObjectWord::empty(),
                        core: SliceCore::Gen1 {
                            name: gen.clone(),
                            args: a.clone(),
                            inv: false,
                        },
                        right: ObjectWord::empty(),
                    })
                };
                let gen_dom = mk_gen(args);
                let gen_cod = mk_gen(&args_cod);
                let site_dom = param_site(&decl.dom, args, *param).ok_or_else(|| {
                    DiagramError::Other(format!(
                        "parameter {param} not embeddable in dom of {gen}"
                    ))
                })?;
                let site_cod = param_site(&decl.cod, args, *param).ok_or_else(|| {
                    DiagramError::Other(format!(
                        "parameter {param} not embeddable in cod of {gen}"
                    ))
                })?;
                let mut lhs = embed_param_cell(sig, &site_dom, inner)?;
                if let Some(g) = gen_cod {
                    lhs.push(g);
                }
                let mut rhs = Vec::new();
                if let Some(g) = gen_dom {
                    rhs.push(g);
                }
                rhs.extend(embed_param_cell(sig, &site_cod, inner)?);
                let dom = decl.dom.subst(args);
                if *fwd {
                    (lhs, rhs, dom)
                } else {
                    (rhs, lhs, dom)
                }
            }
            MoveCore::EquivUnit { gen, args, fwd } => {
                let decl = sig.gen1(gen)?;
                if decl.kind != Gen1Kind::Equivalence {
                    return Err(DiagramError::Other(format!("{gen} is not an equivalence")));
                }
                let dom = decl.dom.subst(args);
                let g = Slice {
                    left: ObjectWord::empty(),
                    core: SliceCore::Gen1 {
                        name: gen.clone(),
                        args: args.clone(),
                        inv: false,
                    },
                    right: ObjectWord::empty(),
                };
                let ginv = g.inverse();
                let degenerate = decl.unit_degenerate && args.iter().any(|w| w.is_empty());
                let pair = if degenerate {
                    Vec::new()
                } else {
                    vec![g, ginv]
                };
                if *fwd {
                    (Vec::new(), pair, dom)
                } else {
                    (pair, Vec::new(), dom)
                }
            }
            MoveCore::EquivCounit { gen, args, fwd } => {
                let decl = sig.gen1(gen)?;
                if decl.kind != Gen1Kind::Equivalence {
                    return Err(DiagramError::Other(format!("{gen} is not an equivalence")));
                }
                let dom = decl.cod.subst(args);
                let g = Slice {
                    left: ObjectWord::empty(),
                    core: SliceCore::Gen1 {
                        name: gen.clone(),
                        args: args.clone(),
                        inv: false,
                    },
                    right: ObjectWord::empty(),
                };
                let ginv = g.inverse();
                let degenerate = decl.unit_degenerate && args.iter().any(|w| w.is_empty());
                let pair = if degenerate {
                    Vec::new()
                } else {
                    vec![ginv, g]
                };
                if *fwd {
                    (pair, Vec::new(), dom)
                } else {
                    (Vec::new(), pair, dom)
                }
            }
            MoveCore::HomAction2 { ctx, inner, fwd } => {
                let (src, tgt) = inner.boundary_cells(sig)?;
                let dom = ObjectWord::ihom(ctx.clone(), src.dom.clone());
                let mk = |c: OneCell| -> Vec<Slice> {
                    if c.slices.is_empty() {
                        return Vec::new();
                    }
                    vec![Slice {
                        left: ObjectWord::empty(),
                        core: SliceCore::HomAction {
                            ctx: ctx.clone(),
                            inner: Box::new(c),
                        },
                        right: ObjectWord::empty(),
                    }]
                };
                let l = mk(src);
                let r = mk(tgt);
                if *fwd {
                    (l, r, dom)
                } else {
                    (r, l, dom)
                }
            }
            MoveCore::HomSplit {
                ctx,
                first,
                second,
                fwd,
            } => {
                let joined = compose1(sig, first, second)?;
                let mk = |c: &OneCell| -> Vec<Slice> {
                    if c.slices.is_empty() {
                        return Vec::new();
                    }
                    vec![Slice {
                        left: ObjectWord::empty(),
                        core: SliceCore::HomAction {
                            ctx: ctx.clone(),
                            inner: Box::new(c.clone()),
                        },
                        right: ObjectWord::empty(),
                    }]
                };
                let l = mk(&joined);
                let mut r = mk(first);
                r.extend(mk(second));
                let dom = ObjectWord::ihom(ctx.clone(), first.dom.clone());
                if *fwd {
                    (l, r, dom)
                } else {
                    (r, l, dom)
                }
            }
        };
        Ok((lhs, rhs, dom))
    }

    /// Whiskered window sides: (lhs slices, rhs slices, window dom word).
    pub fn sides(&self, sig: &Signature) -> DResult<(Vec<Slice>, Vec<Slice>, ObjectWord)> {
        let (l, r, d) = self.raw_sides(sig)?;
        let wl = |v: Vec<Slice>| -> Vec<Slice> {
            v.into_iter()
                .map(|s| s.whisker(&self.left, &self.right))
                .collect()
        };
        Ok((
            wl(l),
            wl(r),
            self.left.concat(&d).concat(&self.right),
        ))
    }

    pub fn lhs_len(&self, sig: &Signature) -> DResult<usize> {
        Ok(self.sides(sig)?.0.len())
    }

    pub fn rhs_len(&self, sig: &Signature) -> DResult<usize> {
        Ok(self.sides(sig)?.1.len())
    }
}

fn word_as_template(w: &ObjectWord) -> WordT {
    fn letter(e: &crate::signature::ObjectExpr) -> LetterT {
        match e {
            crate::signature::ObjectExpr::Atom(a) => LetterT::Atom(a.clone()),
            crate::signature::ObjectExpr::IHom(s, t) => {
                LetterT::IHom(word_as_template(s), word_as_template(t))
            }
        }
    }
    WordT(w.0.iter().map(letter).collect())
}

/// Apply one move to a 1-cell state.
pub fn apply_move(sig: &Signature, state: &OneCell, mv: &Move, index: usize) -> DResult<OneCell> {
    let (lhs, rhs, dom_word) = mv.sides(sig)?;
    let n = lhs.len();
    if mv.at + n > state.slices.len() {
        return Err(DiagramError::MoveMismatch {
            index,
            at: mv.at,
            reason: format!(
                "window [{},{}) exceeds {} slices",
                mv.at,
                mv.at + n,
                state.slices.len()
            ),
        });
    }
    let window = &state.slices[mv.at..mv.at + n];
    if window != lhs.as_slice() {
        return Err(DiagramError::MoveMismatch {
            index,
            at: mv.at,
            reason: format!("expected window {:?}, found {:?}", lhs, window),
        });
    }
    // for empty-lhs moves the insertion word must thread
    if n == 0 {
        let words = state.words(sig)?;
        if words[mv.at] != dom_word {
            return Err(DiagramError::MoveMismatch {
                index,
                at: mv.at,
                reason: format!(
                    "insertion at word {:?}, move expects {:?}",
                    words[mv.at], dom_word
                ),
            });
        }
    }
    let mut slices = state.slices[..mv.at].to_vec();
    slices.extend(rhs);
    slices.extend(state.slices[mv.at + n..].iter().cloned());
    let out = OneCell {
        dom: state.dom.clone(),
        slices,
    };
    out.boundary(sig)?;
    Ok(out)
}

/// A 2-cell: a source 1-cell and a chain of moves.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoCell {
    pub source: OneCell,
    pub moves: Vec<Move>,
}

impl fmt::Debug for TwoCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::dsl::print_twocell(self))
    }
}

pub fn id2(f: OneCell) -> TwoCell {
    TwoCell {
        source: f,
        moves: Vec::new(),
    }
}

/// Typeability report for a 2-cell.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum TypecheckReport {
    Ok {
        dom: OneCell,
        cod: OneCell,
    },
    Fail {
        move_index: usize,
        reason: String,
    },
}

impl TwoCell {
    pub fn single(source: OneCell, mv: Move) -> TwoCell {
        TwoCell {
            source,
            moves: vec![mv],
        }
    }

    /// Replay all moves; returns the target 1-cell.
    pub fn target(&self, sig: &Signature) -> DResult<OneCell> {
        let mut state = self.source.clone();
        state.boundary(sig)?;
        for (i, mv) in self.moves.iter().enumerate() {
            state = apply_move(sig, &state, mv, i)?;
        }
        Ok(state)
    }

    /// All intermediate states, `n+1` entries for `n` moves.
    pub fn states(&self, sig: &Signature) -> DResult<Vec<OneCell>> {
        let mut out = vec![self.source.clone()];
        let mut state = self.source.clone();
        state.boundary(sig)?;
        for (i, mv) in self.moves.iter().enumerate() {
            state = apply_move(sig, &state, mv, i)?;
            out.push(state.clone());
        }
        Ok(out)
    }

    pub fn boundary_cells(&self, sig: &Signature) -> DResult<(OneCell, OneCell)> {
        Ok((self.source.clone(), self.target(sig)?))
    }

    pub fn typecheck(&self, sig: &Signature) -> TypecheckReport {
        match self.target(sig) {
            Ok(cod) => TypecheckReport::Ok {
                dom: self.source.clone(),
                cod,
            },
            Err(e) => {
                let move_index = match &e {
                    DiagramError::MoveMismatch { index, .. } => *index,
                    _ => 0,
                };
                TypecheckReport::Fail {
                    move_index,
                    reason: e.to_string(),
                }
            }
        }
    }

    pub fn inverse(&self, sig: &Signature) -> DResult<TwoCell> {
        let target = self.target(sig)?;
        let moves = self.moves.iter().rev().map(|m| m.inverse()).collect();
        Ok(TwoCell {
            source: target,
            moves,
        })
    }
}

/// Vertical composition: move-list concatenation (exact boundary equality).
pub fn compose2(sig: &Signature, u: &TwoCell, v: &TwoCell) -> DResult<TwoCell> {
    let cu = u.target(sig)?;
    if cu != v.source {
        return Err(DiagramError::BoundaryMismatch {
            expected: cu.dom,
            found: v.source.dom.clone(),
        });
    }
    let mut moves = u.moves.clone();
    moves.extend(v.moves.iter().cloned());
    Ok(TwoCell {
        source: u.source.clone(),
        moves,
    })
}

pub fn compose2_all(sig: &Signature, cells: &[TwoCell]) -> DResult<TwoCell> {
    let mut it = cells.iter();
    let mut acc = it
        .next()
        .ok_or_else(|| DiagramError::Other("empty composite".into()))?
        .clone();
    for c in it {
        acc = compose2(sig, &acc, c)?;
    }
    Ok(acc)
}

/// Whisker a 2-cell horizontally by words and vertically by 1-cells:
/// source becomes `pre ; (wl · source · wr) ; post`, every move shifts by
/// `|pre|` and widens by `wl`/`wr`.
pub fn whisker2(
    sig: &Signature,
    wl: &ObjectWord,
    u: &TwoCell,
    wr: &ObjectWord,
    pre: &OneCell,
    post: &OneCell,
) -> DResult<TwoCell> {
    let mid = u.source.whisker(wl, wr);
    let source = compose1(sig, pre, &compose1(sig, &mid, post)?)?;
    let off = pre.slices.len();
    let moves = u
        .moves
        .iter()
        .map(|m| Move {
            at: m.at + off,
            left: wl.concat(&m.left),
            right: m.right.concat(wr),
            core: m.core.clone(),
        })
        .collect();
    let out = TwoCell { source, moves };
    out.target(sig)?;
    Ok(out)
}
