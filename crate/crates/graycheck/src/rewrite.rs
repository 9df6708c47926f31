//! Axiom schemas, single-step application, and proof-script replay.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diagram::{
    compose1, id1, whisker2, DResult, DiagramError, Move, OneCell, TwoCell,
};
use crate::normalize;
use crate::signature::{Ident, ObjectWord, Signature};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MetaVal {
    Word(ObjectWord),
    Cell(OneCell),
    SliceV(crate::diagram::Slice),
    MoveV(Move),
    Nat(usize),
}

pub type Binding = BTreeMap<Ident, MetaVal>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MetaKind {
    WordVar,
    OneCellVar,
    TwoCellVar,
    GenInstanceVar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Fwd,
    Bwd,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Fwd => Direction::Bwd,
            Direction::Bwd => Direction::Fwd,
        }
    }
}

/// Parameterized schema families with code-defined sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BuiltinSchema {
    /// (i) and (ii) and (iv): definitional in this IR (identity legs do not
    /// exist as slices, whiskers are words, composite legs cross slicewise);
    /// registered with equal sides so they remain auditable.
    InterchangeTrivial { which: u8 },
    /// (iii): two moves on disjoint windows commute.
    InterchangeNat,
    Ba1,
    Ba2,
    Ba3,
    Ba4,
    /// (s1): degenerate braiding legs are definitional identities.
    S1,
    /// degenerate R/S deletion; `gen` is "R" or "S", `variant` 0 or 1
    SDegenerate { gen: char, variant: u8 },
    /// crossing naturality for a pseudonatural family (beta/eta/epsilon)
    NatCrossing { gen: Ident },
    /// modification property of R or S against a parameter slice
    ModRS { gen: char },
    /// modification property of the triangulators s and t
    ModTriangulator { gen: char },
    /// adjoint-equivalence triangle identities, per equivalence generator
    Triangle { gen: Ident, right: bool },
    Swallowtail1,
    Swallowtail2,
    HomFunctoriality,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SchemaPattern {
    Closed { lhs: TwoCell, rhs: TwoCell },
    Builtin(BuiltinSchema),
}

/// A named pair of 2-cell patterns with metavariables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomSchema {
    pub name: Ident,
    pub metavars: Vec<(Ident, MetaKind)>,
    pub invertible: bool,
    pub pattern: SchemaPattern,
}

impl AxiomSchema {
    pub fn closed(name: &str, lhs: TwoCell, rhs: TwoCell) -> AxiomSchema {
        AxiomSchema {
            name: name.to_string(),
            metavars: Vec::new(),
            invertible: true,
            pattern: SchemaPattern::Closed { lhs, rhs },
        }
    }

    /// Concrete lhs/rhs 2-cells for a full binding.
    pub fn instantiate(&self, sig: &Signature, b: &Binding) -> DResult<(TwoCell, TwoCell)> {
        match &self.pattern {
            SchemaPattern::Closed { lhs, rhs } => Ok((lhs.clone(), rhs.clone())),
            SchemaPattern::Builtin(k) => crate::schemas::instantiate_builtin(sig, k, b),
        }
    }
}

/// Where in the ambient diagram a schema side is planted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApplyCtx {
    /// index of the first ambient move replaced
    pub move_at: usize,
    /// number of ambient moves replaced
    pub move_len: usize,
    /// vertical offset: ambient slice index where the pattern window starts
    pub slice_at: usize,
    /// horizontal whisker on the left of the pattern window
    pub left: ObjectWord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProofStep {
    /// exchange independent moves k, k+1
    Exchange { at: usize },
    /// delete the strict inverse pair at moves k, k+1
    Cancel { at: usize },
    /// insert a move/inverse pair producing an identity (reverse of cancel)
    Insert { at: usize, mv: Move },
    /// rewrite a window of moves by a schema; `inverted` rewrites the
    /// inverse of one side to the inverse of the other
    Apply {
        schema: Ident,
        dir: Direction,
        inverted: bool,
        ctx: ApplyCtx,
        binding: Binding,
    },
    /// apply steps inside the inner 2-cell of a HomAction2 move
    Inner { at: usize, steps: Vec<ProofStep> },
}

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
pub enum StepError {
    #[error("step {step}: invalid exchange at {at}")]
    InvalidExchange { step: usize, at: usize },
    #[error("step {step}: moves at {at} are not an inverse pair")]
    NotInversePair { step: usize, at: usize },
    #[error("step {step}: schema {schema} does not match at move {at}: {reason}")]
    NoMatch {
        step: usize,
        schema: Ident,
        at: usize,
        reason: String,
    },
    #[error("step {step}: unknown schema {schema}")]
    UnknownSchema { step: usize, schema: Ident },
    #[error("step {step}: {reason}")]
    Invalid { step: usize, reason: String },
    #[error("step {step}: {source}")]
    Diagram {
        step: usize,
        #[source]
        source: DiagramError,
    },
}

fn derr(step: usize, e: DiagramError) -> StepError {
    StepError::Diagram { step, source: e }
}

/// Instantiate a schema side inside an ambient context: whisker the side
/// horizontally and plant it at a vertical offset inside `state`.
pub fn plant_side(
    sig: &Signature,
    state: &OneCell,
    side: &TwoCell,
    ctx: &ApplyCtx,
) -> DResult<TwoCell> {
    let inner_dom = side.source.dom.clone();
    let planted_dom = ctx.left.concat(&inner_dom);
    // right whisker is the rest of the ambient word at that height
    let words = state.words(sig)?;
    let w = &words[ctx.slice_at];
    if planted_dom.len() > w.len()
        || w.slice_range(0, planted_dom.len()) != planted_dom
    {
        return Err(DiagramError::Other(format!(
            "pattern dom {:?} (after left whisker {:?}) does not sit at slice {} of {:?}",
            inner_dom, ctx.left, ctx.slice_at, w
        )));
    }
    let right = w.slice_range(planted_dom.len(), w.len());
    let pre = OneCell {
        dom: state.dom.clone(),
        slices: state.slices[..ctx.slice_at].to_vec(),
    };
    let side_src_len = side.source.slices.len();
    let post_slices = state.slices[ctx.slice_at + side_src_len..].to_vec();
    let post_dom = {
        let iw = side
            .source
            .boundary(sig)?
            .1;
        ctx.left.concat(&iw).concat(&right)
    };
    let post = OneCell {
        dom: post_dom,
        slices: post_slices,
    };
    whisker2(sig, &ctx.left, side, &right, &pre, &post)
}

/// Apply one step to the current 2-cell state.
pub fn apply_step(
    sig: &Signature,
    state: &TwoCell,
    step: &ProofStep,
    step_index: usize,
) -> Result<TwoCell, StepError> {
    match step {
        ProofStep::Exchange { at } => normalize::exchange(sig, state, *at)
            .map_err(|_| StepError::InvalidExchange {
                step: step_index,
                at: *at,
            }),
        ProofStep::Cancel { at } => {
            if *at + 1 >= state.moves.len() {
                return Err(StepError::NotInversePair {
                    step: step_index,
                    at: *at,
                });
            }
            if !state.moves[*at + 1].is_inverse_of(&state.moves[*at]) {
                return Err(StepError::NotInversePair {
                    step: step_index,
                    at: *at,
                });
            }
            let mut moves = state.moves.clone();
            moves.drain(*at..*at + 2);
            let out = TwoCell {
                source: state.source.clone(),
                moves,
            };
            out.target(sig).map_err(|e| derr(step_index, e))?;
            Ok(out)
        }
        ProofStep::Insert { at, mv } => {
            let mut moves = state.moves.clone();
            if *at > moves.len() {
                return Err(StepError::Invalid {
                    step: step_index,
                    reason: format!("insert position {at} out of range"),
                });
            }
            moves.insert(*at, mv.inverse());
            moves.insert(*at, mv.clone());
            let out = TwoCell {
                source: state.source.clone(),
                moves,
            };
            out.target(sig).map_err(|e| derr(step_index, e))?;
            Ok(out)
        }
        ProofStep::Apply {
            schema,
            dir,
            inverted,
            ctx,
            binding,
        } => {
            let sch = sig
                .schemas
                .get(schema)
                .ok_or_else(|| StepError::UnknownSchema {
                    step: step_index,
                    schema: schema.clone(),
                })?;
            let (l, r) = sch
                .instantiate(sig, binding)
                .map_err(|e| derr(step_index, e))?;
            let (mut from, mut to) = match dir {
                Direction::Fwd => (l, r),
                Direction::Bwd => (r, l),
            };
            if *inverted {
                from = from.inverse(sig).map_err(|e| derr(step_index, e))?;
                to = to.inverse(sig).map_err(|e| derr(step_index, e))?;
            }
            if ctx.move_at + ctx.move_len > state.moves.len() {
                return Err(StepError::NoMatch {
                    step: step_index,
                    schema: schema.clone(),
                    at: ctx.move_at,
                    reason: "move window out of range".into(),
                });
            }
            // state just before the window
            let prefix = TwoCell {
                source: state.source.clone(),
                moves: state.moves[..ctx.move_at].to_vec(),
            };
            let mid_state = prefix.target(sig).map_err(|e| derr(step_index, e))?;
            let from_planted =
                plant_side(sig, &mid_state, &from, ctx).map_err(|e| derr(step_index, e))?;
            let window = TwoCell {
                source: mid_state.clone(),
                moves: state.moves[ctx.move_at..ctx.move_at + ctx.move_len].to_vec(),
            };
            let ok = normalize::eq_mod_commutation(sig, &window, &from_planted)
                .map_err(|e| derr(step_index, e))?;
            if !ok {
                return Err(StepError::NoMatch {
                    step: step_index,
                    schema: schema.clone(),
                    at: ctx.move_at,
                    reason: format!(
                        "window is not commutation-equal to the instantiated side ({} moves vs {})",
                        ctx.move_len,
                        from_planted.moves.len()
                    ),
                });
            }
            let to_planted =
                plant_side(sig, &mid_state, &to, ctx).map_err(|e| derr(step_index, e))?;
            let mut moves = state.moves[..ctx.move_at].to_vec();
            moves.extend(to_planted.moves.iter().cloned());
            moves.extend(state.moves[ctx.move_at + ctx.move_len..].iter().cloned());
            let out = TwoCell {
                source: state.source.clone(),
                moves,
            };
            out.target(sig).map_err(|e| derr(step_index, e))?;
            Ok(out)
        }
        ProofStep::Inner { at, steps } => {
            let mv = state.moves.get(*at).cloned().ok_or(StepError::Invalid {
                step: step_index,
                reason: format!("no move at {at}"),
            })?;
            let crate::diagram::MoveCore::HomAction2 { ctx, inner, fwd } = &mv.core else {
                return Err(StepError::Invalid {
                    step: step_index,
                    reason: format!("move at {at} is not a hom action"),
                });
            };
            let mut cell = (**inner).clone();
            for (i, s) in steps.iter().enumerate() {
                cell = apply_step(sig, &cell, s, i).map_err(|e| StepError::Invalid {
                    step: step_index,
                    reason: format!("inner step failed: {e}"),
                })?;
            }
            let mut moves = state.moves.clone();
            moves[*at] = Move {
                at: mv.at,
                left: mv.left.clone(),
                right: mv.right.clone(),
                core: crate::diagram::MoveCore::HomAction2 {
                    ctx: ctx.clone(),
                    inner: Box::new(cell),
                    fwd: *fwd,
                },
            };
            let out = TwoCell {
                source: state.source.clone(),
                moves,
            };
            out.target(sig).map_err(|e| derr(step_index, e))?;
            Ok(out)
        }
    }
}

/// Deterministic 64-bit digest of a 1-cell, used in replay reports.
pub fn digest(cell: &OneCell) -> u64 {
    let s = crate::dsl::print_onecell(cell);
    let mut h: u64 = 0xcbf29ce484222325;
    for b in s.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProofScript {
    pub name: Ident,
    /// libraries whose signatures must be in scope
    pub uses: Vec<String>,
    pub start: TwoCell,
    pub goal: TwoCell,
    pub steps: Vec<ProofStep>,
    /// a script marked partial replays its steps but does not claim to
    /// reach the goal (used where the paper leaves a proof unfinished)
    pub partial: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepReport {
    pub index: usize,
    pub ok: bool,
    pub moves: usize,
    pub boundary_digest: u64,
    pub note: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub script: Ident,
    pub success: bool,
    pub steps: Vec<StepReport>,
    pub failure: Option<String>,
}

/// Replay a script: validate every step and check the final state equals
/// the goal modulo commutation.
pub fn replay(sig: &Signature, script: &ProofScript) -> Report {
    let mut steps = Vec::new();
    let mut state = script.start.clone();
    if let Err(e) = state.target(sig) {
        return Report {
            script: script.name.clone(),
            success: false,
            steps,
            failure: Some(format!("start does not typecheck: {e}")),
        };
    }
    for (i, step) in script.steps.iter().enumerate() {
        match apply_step(sig, &state, step, i) {
            Ok(next) => {
                let d = next
                    .target(sig)
                    .map(|c| digest(&c))
                    .unwrap_or_default();
                steps.push(StepReport {
                    index: i,
                    ok: true,
                    moves: next.moves.len(),
                    boundary_digest: d,
                    note: step_label(step),
                });
                state = next;
            }
            Err(e) => {
                steps.push(StepReport {
                    index: i,
                    ok: false,
                    moves: state.moves.len(),
                    boundary_digest: 0,
                    note: step_label(step),
                });
                return Report {
                    script: script.name.clone(),
                    success: false,
                    steps,
                    failure: Some(e.to_string()),
                };
            }
        }
    }
    if script.partial {
        return Report {
            script: script.name.clone(),
            success: true,
            steps,
            failure: None,
        };
    }
    match normalize::eq_mod_commutation(sig, &state, &script.goal) {
        Ok(true) => Report {
            script: script.name.clone(),
            success: true,
            steps,
            failure: None,
        },
        Ok(false) => Report {
            script: script.name.clone(),
            success: false,
            steps,
            failure: Some("final state differs from goal modulo commutation".into()),
        },
        Err(e) => Report {
            script: script.name.clone(),
            success: false,
            steps,
            failure: Some(format!("goal comparison failed: {e}")),
        },
    }
}

fn step_label(step: &ProofStep) -> String {
    match step {
        ProofStep::Exchange { at } => format!("exchange {at}"),
        ProofStep::Cancel { at } => format!("cancel {at}"),
        ProofStep::Insert { at, .. } => format!("insert {at}"),
        ProofStep::Apply {
            schema, dir, inverted, ctx, ..
        } => format!(
            "apply {schema} {}{} at {}",
            match dir {
                Direction::Fwd => "fwd",
                Direction::Bwd => "bwd",
            },
            if *inverted { " inv" } else { "" },
            ctx.move_at
        ),
        ProofStep::Inner { at, steps } => format!("inner {at} ({} steps)", steps.len()),
    }
}

/// All bindings for which the schema side matches the subject's move window
/// starting at `anchor`, after local normalization.
pub fn match_at(
    sig: &Signature,
    schema: &AxiomSchema,
    subject: &TwoCell,
    anchor: usize,
    dir: Direction,
) -> DResult<Vec<(Binding, ApplyCtx)>> {
    let candidates = crate::schemas::candidate_bindings(sig, schema, subject, anchor, dir)?;
    let mut out = Vec::new();
    for (b, ctx) in candidates {
        let (l, r) = match schema.instantiate(sig, &b) {
            Ok(x) => x,
            Err(_) => continue,
        };
        let side = match dir {
            Direction::Fwd => l,
            Direction::Bwd => r,
        };
        if ctx.move_at + ctx.move_len > subject.moves.len() {
            continue;
        }
        let prefix = TwoCell {
            source: subject.source.clone(),
            moves: subject.moves[..ctx.move_at].to_vec(),
        };
        let Ok(mid) = prefix.target(sig) else { continue };
        let Ok(planted) = plant_side(sig, &mid, &side, &ctx) else {
            continue;
        };
        let window = TwoCell {
            source: mid,
            moves: subject.moves[ctx.move_at..ctx.move_at + ctx.move_len].to_vec(),
        };
        if normalize::eq_mod_commutation(sig, &window, &planted).unwrap_or(false) {
            out.push((b, ctx));
        }
    }
    Ok(out)
}

/// Well-formedness audit: a schema instantiates to boundary-equal sides.
pub fn audit_schema(sig: &Signature, schema: &AxiomSchema, b: &Binding) -> DResult<()> {
    let (l, r) = schema.instantiate(sig, b)?;
    let (ld, lc) = l.boundary_cells(sig)?;
    let (rd, rc) = r.boundary_cells(sig)?;
    if ld != rd || lc != rc {
        return Err(DiagramError::Other(format!(
            "schema {}: sides have different boundaries",
            schema.name
        )));
    }
    Ok(())
}

/// Identity helpers used across the crate.
pub fn identity_cell(w: ObjectWord) -> TwoCell {
    crate::diagram::id2(id1(w))
}

pub fn seq_cell(sig: &Signature, source: OneCell, moves: Vec<Move>) -> DResult<TwoCell> {
    let c = TwoCell { source, moves };
    c.target(sig)?;
    Ok(c)
}

/// Compose 1-cells given as slice lists.
pub fn cell_of_slices(
    sig: &Signature,
    dom: ObjectWord,
    slices: Vec<crate::diagram::Slice>,
) -> DResult<OneCell> {
    let c = OneCell { dom, slices };
    c.boundary(sig)?;
    Ok(c)
}

pub fn compose_many(sig: &Signature, cells: &[OneCell]) -> DResult<OneCell> {
    let mut it = cells.iter();
    let mut acc = it
        .next()
        .ok_or_else(|| DiagramError::Other("empty composite".into()))?
        .clone();
    for c in it {
        acc = compose1(sig, &acc, c)?;
    }
    Ok(acc)
}
