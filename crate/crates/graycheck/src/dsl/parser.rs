//! Recursive-descent parser for the three file kinds.

use super::lexer::{lex, LexError, SourceSpan, Token, TokenKind};
use crate::diagram::{Move, MoveCore, OneCell, Slice, SliceCore, TwoCell};
use crate::rewrite::{ApplyCtx, Binding, Direction, MetaVal, ProofScript, ProofStep};
use crate::signature::{
    CoreT, Gen1Decl, Gen1Kind, Gen2Decl, LetterT, ObjectExpr, ObjectWord, OneCellT, Signature,
    SliceT, WordT,
};

#[derive(Clone, Debug, thiserror::Error)]
pub enum ParseError {
    #[error("{0}")]
    Lex(#[from] LexError),
    #[error("parse error at line {line}, column {column}: found {found}, expected {}", expected.join(" | "))]
    Unexpected {
        line: usize,
        column: usize,
        found: String,
        expected: Vec<String>,
    },
    #[error("validation error: {0}")]
    Validation(String),
}

struct P {
    toks: Vec<Token>,
    pos: usize,
}

impl P {
    fn new(text: &str) -> Result<P, ParseError> {
        Ok(P {
            toks: lex(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &TokenKind {
        &self.toks[self.pos].kind
    }

    fn peek2(&self) -> &TokenKind {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].kind
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].span.clone()
    }

    fn bump(&mut self) -> TokenKind {
        let t = self.toks[self.pos].kind.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        let s = self.span();
        Err(ParseError::Unexpected {
            line: s.line,
            column: s.column,
            found: format!("{:?}", self.peek()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn sym(&mut self, s: &'static str) -> Result<(), ParseError> {
        if *self.peek() == TokenKind::Sym(s) {
            self.bump();
            Ok(())
        } else {
            self.err(&[s])
        }
    }

    fn eat_sym(&mut self, s: &'static str) -> bool {
        if *self.peek() == TokenKind::Sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn kw(&mut self, k: &str) -> Result<(), ParseError> {
        match self.peek() {
            TokenKind::Ident(i) if i == k => {
                self.bump();
                Ok(())
            }
            _ => self.err(&[k]),
        }
    }

    fn is_kw(&self, k: &str) -> bool {
        matches!(self.peek(), TokenKind::Ident(i) if i == k)
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            TokenKind::Ident(i) => {
                self.bump();
                Ok(i)
            }
            TokenKind::Quoted(q) => {
                self.bump();
                Ok(q)
            }
            _ => self.err(&["identifier"]),
        }
    }

    fn num(&mut self) -> Result<usize, ParseError> {
        match self.peek().clone() {
            TokenKind::Num(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.err(&["number"]),
        }
    }

    fn dir(&mut self) -> Result<bool, ParseError> {
        if self.is_kw("fwd") {
            self.bump();
            Ok(true)
        } else if self.is_kw("bwd") {
            self.bump();
            Ok(false)
        } else {
            self.err(&["fwd", "bwd"])
        }
    }

    // words and cells -----------------------------------------------------

    fn word_letter_start(&self) -> bool {
        matches!(
            self.peek(),
            TokenKind::Ident(_) | TokenKind::Quoted(_) | TokenKind::Sym("[")
        ) && !self.is_kw("fwd")
            && !self.is_kw("bwd")
            && !self.is_kw("id")
    }

    fn word(&mut self) -> Result<ObjectWord, ParseError> {
        if let TokenKind::Num(1) = self.peek() {
            self.bump();
            return Ok(ObjectWord::empty());
        }
        let mut letters = Vec::new();
        while self.word_letter_start() {
            if self.eat_sym("[") {
                let s = self.word()?;
                self.sym(",")?;
                let t = self.word()?;
                self.sym("]")?;
                letters.push(ObjectExpr::IHom(s, t));
            } else {
                letters.push(ObjectExpr::Atom(self.ident()?));
            }
        }
        if letters.is_empty() {
            return self.err(&["word"]);
        }
        Ok(ObjectWord(letters))
    }

    fn onecell(&mut self) -> Result<OneCell, ParseError> {
        if self.is_kw("id") {
            self.bump();
            self.sym("(")?;
            let w = self.word()?;
            self.sym(")")?;
            return Ok(crate::diagram::id1(w));
        }
        let mut slices = vec![self.slice()?];
        while *self.peek() == TokenKind::Sym(";")
            && *self.peek2() == TokenKind::Sym("(")
        {
            self.sym(";")?;
            slices.push(self.slice()?);
        }
        // the domain comes from the first slice, filled in by the caller
        Ok(OneCell {
            dom: ObjectWord::empty(),
            slices,
        })
    }

    fn slice(&mut self) -> Result<Slice, ParseError> {
        self.sym("(")?;
        let left = self.word()?;
        self.sym("|")?;
        let core = if self.eat_sym("[") {
            let ctx = self.word()?;
            self.sym(";")?;
            let inner = self.onecell()?;
            self.sym("]")?;
            SliceCore::HomAction {
                ctx,
                inner: Box::new(inner),
            }
        } else {
            let name = self.ident()?;
            let mut args = Vec::new();
            if self.eat_sym("[") {
                if !self.eat_sym("]") {
                    args.push(self.word()?);
                    while self.eat_sym(",") {
                        args.push(self.word()?);
                    }
                    self.sym("]")?;
                }
            }
            let inv = self.eat_sym("~");
            SliceCore::Gen1 { name, args, inv }
        };
        self.sym("|")?;
        let right = self.word()?;
        self.sym(")")?;
        Ok(Slice { left, core, right })
    }

    fn move_(&mut self) -> Result<Move, ParseError> {
        self.sym("@")?;
        let at = self.num()?;
        self.sym("<")?;
        let left = self.word()?;
        self.sym(">")?;
        let right = self.word()?;
        let core = self.move_core()?;
        Ok(Move {
            at,
            left,
            right,
            core,
        })
    }

    fn gen_args(&mut self) -> Result<Vec<ObjectWord>, ParseError> {
        let mut args = Vec::new();
        if self.eat_sym("[") {
            if !self.eat_sym("]") {
                args.push(self.word()?);
                while self.eat_sym(",") {
                    args.push(self.word()?);
                }
                self.sym("]")?;
            }
        }
        Ok(args)
    }

    fn move_core(&mut self) -> Result<MoveCore, ParseError> {
        let kw = self.ident()?;
        match kw.as_str() {
            "gen" => {
                let name = self.ident()?;
                let args = self.gen_args()?;
                let fwd = self.dir()?;
                Ok(MoveCore::Gen2 { name, args, fwd })
            }
            "sigma" => {
                let first = self.slice()?;
                let second = self.slice()?;
                let fwd = self.dir()?;
                Ok(MoveCore::Interchange { first, second, fwd })
            }
            "cross" => {
                let gen = self.ident()?;
                let args = self.gen_args()?;
                self.sym("#")?;
                let param = self.num()?;
                self.sym("(")?;
                let inner = self.onecell_with_dom()?;
                self.sym(")")?;
                let fwd = self.dir()?;
                Ok(MoveCore::Crossing {
                    gen,
                    args,
                    param,
                    inner,
                    fwd,
                })
            }
            "unit" => {
                let gen = self.ident()?;
                let args = self.gen_args()?;
                let fwd = self.dir()?;
                Ok(MoveCore::EquivUnit { gen, args, fwd })
            }
            "counit" => {
                let gen = self.ident()?;
                let args = self.gen_args()?;
                let fwd = self.dir()?;
                Ok(MoveCore::EquivCounit { gen, args, fwd })
            }
            "hom2" => {
                self.sym("(")?;
                let ctx = self.word()?;
                self.sym(")")?;
                let inner = self.twocell()?;
                let fwd = self.dir()?;
                Ok(MoveCore::HomAction2 {
                    ctx,
                    inner: Box::new(inner),
                    fwd,
                })
            }
            "split" => {
                self.sym("(")?;
                let ctx = self.word()?;
                self.sym(")")?;
                self.sym("(")?;
                let first = self.onecell_with_dom()?;
                self.sym(")")?;
                self.sym("(")?;
                let second = self.onecell_with_dom()?;
                self.sym(")")?;
                let fwd = self.dir()?;
                Ok(MoveCore::HomSplit {
                    ctx,
                    first,
                    second,
                    fwd,
                })
            }
            _ => self.err(&["gen", "sigma", "cross", "unit", "counit", "hom2", "split"]),
        }
    }

    /// A one-cell whose domain is recovered from textual form alone
    /// (explicit `id(w)`) or later from its first slice by `resolve_cell`.
    fn onecell_with_dom(&mut self) -> Result<OneCell, ParseError> {
        self.onecell()
    }

    fn twocell(&mut self) -> Result<TwoCell, ParseError> {
        self.sym("{")?;
        self.kw("source")?;
        let source = self.onecell_with_dom()?;
        self.sym(";")?;
        let mut moves = Vec::new();
        while self.is_kw("move") {
            self.bump();
            moves.push(self.move_()?);
            self.sym(";")?;
        }
        self.sym("}")?;
        Ok(TwoCell { source, moves })
    }

    fn uses(&mut self) -> Result<Vec<String>, ParseError> {
        let mut uses = Vec::new();
        while self.is_kw("use") {
            self.bump();
            let mut name = self.ident()?;
            if self.eat_sym("(") {
                let n = self.num()?;
                self.sym(")")?;
                name = format!("{name}({n})");
            }
            self.sym(";")?;
            uses.push(name);
        }
        Ok(uses)
    }
}

/// Fill in the domain words of parsed cells using the signature.
fn resolve_cell(sig: &Signature, mut c: OneCell) -> Result<OneCell, ParseError> {
    for s in &mut c.slices {
        if let SliceCore::HomAction { inner, .. } = &mut s.core {
            let fixed = resolve_cell(sig, (**inner).clone())?;
            *inner = Box::new(fixed);
        }
    }
    if let Some(first) = c.slices.first() {
        c.dom = first
            .dom(sig)
            .map_err(|e| ParseError::Validation(e.to_string()))?;
    }
    c.boundary(sig)
        .map_err(|e| ParseError::Validation(e.to_string()))?;
    Ok(c)
}

fn resolve_twocell(sig: &Signature, mut c: TwoCell) -> Result<TwoCell, ParseError> {
    c.source = resolve_cell(sig, c.source)?;
    for m in &mut c.moves {
        resolve_move(sig, m)?;
    }
    c.target(sig)
        .map_err(|e| ParseError::Validation(e.to_string()))?;
    Ok(c)
}

fn resolve_move(sig: &Signature, m: &mut Move) -> Result<(), ParseError> {
    match &mut m.core {
        MoveCore::Crossing { inner, .. } => {
            *inner = resolve_cell(sig, inner.clone())?;
        }
        MoveCore::HomAction2 { inner, .. } => {
            let fixed = resolve_twocell(sig, (**inner).clone())?;
            *inner = Box::new(fixed);
        }
        MoveCore::HomSplit { first, second, .. } => {
            *first = resolve_cell(sig, first.clone())?;
            *second = resolve_cell(sig, second.clone())?;
        }
        _ => {}
    }
    Ok(())
}

/// Parse a `.gsig` file: `use` directives plus declarations, validated.
/// Returns the signature and a span for every declaration.
pub fn parse_signature(
    text: &str,
) -> Result<(Signature, Vec<(String, SourceSpan)>), ParseError> {
    let mut p = P::new(text)?;
    let mut spans = Vec::new();
    let uses = p.uses()?;
    let mut sig = Signature::new();
    for u in &uses {
        let lib = crate::libs::std_library(u)
            .map_err(|e| ParseError::Validation(e.to_string()))?;
        sig = sig
            .merge(&lib)
            .map_err(|e| ParseError::Validation(e.to_string()))?;
    }
    sig.uses = uses;
    loop {
        match p.peek().clone() {
            TokenKind::Eof => break,
            TokenKind::Ident(k) if k == "object" => {
                let sp = p.span();
                p.bump();
                loop {
                    let name = p.ident()?;
                    spans.push((name.clone(), sp.clone()));
                    sig.add_object(&name)
                        .map_err(|e| ParseError::Validation(e.to_string()))?;
                    if !p.eat_sym(",") {
                        break;
                    }
                }
                p.sym(";")?;
            }
            TokenKind::Ident(k) if k == "gen1" => {
                let sp = p.span();
                p.bump();
                let name = p.ident()?;
                let params = parse_params(&mut p)?;
                p.sym(":")?;
                let dom = word_template(&mut p, &params)?;
                p.sym("->")?;
                let cod = word_template(&mut p, &params)?;
                let mut kind = Gen1Kind::Plain;
                let mut natural = Vec::new();
                let mut unit_degenerate = false;
                loop {
                    if p.is_kw("equivalence") {
                        p.bump();
                        kind = Gen1Kind::Equivalence;
                    } else if p.is_kw("natural") {
                        p.bump();
                        p.sym("(")?;
                        natural.push(p.num()?);
                        while p.eat_sym(",") {
                            natural.push(p.num()?);
                        }
                        p.sym(")")?;
                    } else if p.is_kw("unit_degenerate") {
                        p.bump();
                        unit_degenerate = true;
                    } else {
                        break;
                    }
                }
                p.sym(";")?;
                spans.push((name.clone(), sp));
                sig.add_gen1(Gen1Decl {
                    name,
                    params: params.len(),
                    dom,
                    cod,
                    kind,
                    natural,
                    unit_degenerate,
                })
                .map_err(|e| ParseError::Validation(e.to_string()))?;
            }
            TokenKind::Ident(k) if k == "gen2" => {
                let sp = p.span();
                p.bump();
                let name = p.ident()?;
                let params = parse_params(&mut p)?;
                p.sym(":")?;
                let lhs = cell_template(&mut p, &params)?;
                p.sym("=>")?;
                let rhs = cell_template(&mut p, &params)?;
                p.sym(";")?;
                spans.push((name.clone(), sp));
                sig.add_gen2(Gen2Decl {
                    name,
                    params: params.len(),
                    lhs,
                    rhs,
                    invertible: true,
                })
                .map_err(|e| ParseError::Validation(e.to_string()))?;
            }
            _ => return p.err(&["object", "gen1", "gen2", "use", "end of file"]),
        }
    }
    sig.validate()
        .map_err(|e| ParseError::Validation(e.to_string()))?;
    Ok((sig, spans))
}

fn parse_params(p: &mut P) -> Result<Vec<String>, ParseError> {
    let mut params = Vec::new();
    if p.eat_sym("[") {
        if !p.eat_sym("]") {
            params.push(p.ident()?);
            while p.eat_sym(",") {
                params.push(p.ident()?);
            }
            p.sym("]")?;
        }
    }
    Ok(params)
}

fn word_template(p: &mut P, params: &[String]) -> Result<WordT, ParseError> {
    if let TokenKind::Num(1) = p.peek() {
        p.bump();
        return Ok(WordT::empty());
    }
    let mut letters = Vec::new();
    while p.word_letter_start() {
        if p.eat_sym("[") {
            let s = word_template(p, params)?;
            p.sym(",")?;
            let t = word_template(p, params)?;
            p.sym("]")?;
            letters.push(LetterT::IHom(s, t));
        } else {
            let id = p.ident()?;
            match params.iter().position(|q| *q == id) {
                Some(i) => letters.push(LetterT::Param(i)),
                None => letters.push(LetterT::Atom(id)),
            }
        }
    }
    if letters.is_empty() {
        return p.err(&["word template"]);
    }
    Ok(WordT(letters))
}

fn cell_template(p: &mut P, params: &[String]) -> Result<OneCellT, ParseError> {
    if p.is_kw("id") {
        p.bump();
        p.sym("(")?;
        let w = word_template(p, params)?;
        p.sym(")")?;
        return Ok(OneCellT {
            dom: w,
            slices: vec![],
        });
    }
    let mut slices = vec![slice_template(p, params)?];
    while *p.peek() == TokenKind::Sym(";") && *p.peek2() == TokenKind::Sym("(") {
        p.sym(";")?;
        slices.push(slice_template(p, params)?);
    }
    Ok(OneCellT {
        dom: WordT::empty(),
        slices,
    })
}

fn slice_template(p: &mut P, params: &[String]) -> Result<SliceT, ParseError> {
    p.sym("(")?;
    let left = word_template_or_unit(p, params)?;
    p.sym("|")?;
    let core = if p.eat_sym("[") {
        let ctx = word_template_or_unit(p, params)?;
        p.sym(";")?;
        let inner = cell_template(p, params)?;
        p.sym("]")?;
        CoreT::HomAction {
            ctx,
            inner: Box::new(inner),
        }
    } else {
        let name = p.ident()?;
        let mut args = Vec::new();
        if p.eat_sym("[") {
            if !p.eat_sym("]") {
                args.push(word_template_or_unit(p, params)?);
                while p.eat_sym(",") {
                    args.push(word_template_or_unit(p, params)?);
                }
                p.sym("]")?;
            }
        }
        let inv = p.eat_sym("~");
        CoreT::Gen1 { name, args, inv }
    };
    p.sym("|")?;
    let right = word_template_or_unit(p, params)?;
    p.sym(")")?;
    Ok(SliceT { left, core, right })
}

fn word_template_or_unit(p: &mut P, params: &[String]) -> Result<WordT, ParseError> {
    word_template(p, params)
}

#[derive(Clone, Debug)]
pub enum DiagItem {
    One(OneCell),
    Two(TwoCell),
}

#[derive(Clone, Debug)]
pub struct DiagramFile {
    pub uses: Vec<String>,
    pub sig: Signature,
    pub items: Vec<(String, DiagItem)>,
}

/// Parse a `.gdiag` file. Cells are validated against the merged libraries
/// plus `extra` (a signature already in scope, e.g. from the CLI libpath).
pub fn parse_diagram(text: &str, extra: Option<&Signature>) -> Result<DiagramFile, ParseError> {
    let mut p = P::new(text)?;
    let uses = p.uses()?;
    let mut sig = match extra {
        Some(s) => s.clone(),
        None => Signature::new(),
    };
    for u in &uses {
        let lib = crate::libs::std_library(u)
            .map_err(|e| ParseError::Validation(e.to_string()))?;
        sig = sig
            .merge(&lib)
            .map_err(|e| ParseError::Validation(e.to_string()))?;
    }
    let mut items = Vec::new();
    loop {
        match p.peek().clone() {
            TokenKind::Eof => break,
            TokenKind::Ident(k) if k == "onecell" => {
                p.bump();
                let name = p.ident()?;
                p.sym("=")?;
                let c = p.onecell_with_dom()?;
                p.sym(";")?;
                let c = resolve_cell(&sig, c)?;
                items.push((name, DiagItem::One(c)));
            }
            TokenKind::Ident(k) if k == "twocell" => {
                p.bump();
                let name = p.ident()?;
                p.sym("=")?;
                let c = p.twocell()?;
                p.sym(";")?;
                let c = resolve_twocell(&sig, c)?;
                items.push((name, DiagItem::Two(c)));
            }
            _ => return p.err(&["onecell", "twocell", "use", "end of file"]),
        }
    }
    Ok(DiagramFile { uses, sig, items })
}

/// Parse a single cell expression (used by tests and the CLI).
pub fn parse_cell_text(sig: &Signature, text: &str) -> Result<OneCell, ParseError> {
    let mut p = P::new(text)?;
    let c = p.onecell_with_dom()?;
    resolve_cell(sig, c)
}

fn parse_metaval(p: &mut P) -> Result<MetaVal, ParseError> {
    if p.is_kw("word") {
        p.bump();
        Ok(MetaVal::Word(p.word()?))
    } else if p.is_kw("cell") {
        p.bump();
        Ok(MetaVal::Cell(p.onecell_with_dom()?))
    } else if p.is_kw("slice") {
        p.bump();
        Ok(MetaVal::SliceV(p.slice()?))
    } else if p.is_kw("move") {
        p.bump();
        Ok(MetaVal::MoveV(p.move_()?))
    } else if p.is_kw("nat") {
        p.bump();
        Ok(MetaVal::Nat(p.num()?))
    } else {
        p.err(&["word", "cell", "slice", "move", "nat"])
    }
}

fn parse_step(p: &mut P) -> Result<ProofStep, ParseError> {
    if p.is_kw("exchange") {
        p.bump();
        let at = p.num()?;
        p.sym(";")?;
        Ok(ProofStep::Exchange { at })
    } else if p.is_kw("cancel") {
        p.bump();
        let at = p.num()?;
        p.sym(";")?;
        Ok(ProofStep::Cancel { at })
    } else if p.is_kw("insert") {
        p.bump();
        let at = p.num()?;
        let mv = p.move_()?;
        p.sym(";")?;
        Ok(ProofStep::Insert { at, mv })
    } else if p.is_kw("apply") {
        p.bump();
        let schema = p.ident()?;
        let dir = if p.dir()? {
            Direction::Fwd
        } else {
            Direction::Bwd
        };
        let inverted = if p.is_kw("inv") {
            p.bump();
            true
        } else {
            false
        };
        p.kw("at")?;
        let move_at = p.num()?;
        p.kw("len")?;
        let move_len = p.num()?;
        p.kw("slice")?;
        let slice_at = p.num()?;
        p.kw("left")?;
        p.sym("(")?;
        let left = p.word()?;
        p.sym(")")?;
        p.kw("bind")?;
        p.sym("{")?;
        let mut binding = Binding::new();
        while !p.eat_sym("}") {
            let k = p.ident()?;
            p.sym("=")?;
            let v = parse_metaval(p)?;
            p.sym(";")?;
            binding.insert(k, v);
        }
        p.sym(";")?;
        Ok(ProofStep::Apply {
            schema,
            dir,
            inverted,
            ctx: ApplyCtx {
                move_at,
                move_len,
                slice_at,
                left,
            },
            binding,
        })
    } else if p.is_kw("inner") {
        p.bump();
        let at = p.num()?;
        p.sym("{")?;
        let mut steps = Vec::new();
        while !p.eat_sym("}") {
            steps.push(parse_step(p)?);
        }
        Ok(ProofStep::Inner { at, steps })
    } else {
        p.err(&["exchange", "cancel", "insert", "apply", "inner"])
    }
}

/// Parse a `.gprf` proof-script file.
pub fn parse_script(text: &str) -> Result<ProofScript, ParseError> {
    let mut p = P::new(text)?;
    let uses = p.uses()?;
    let mut sig = Signature::new();
    for u in &uses {
        let lib = crate::libs::std_library(u)
            .map_err(|e| ParseError::Validation(e.to_string()))?;
        sig = sig
            .merge(&lib)
            .map_err(|e| ParseError::Validation(e.to_string()))?;
    }
    p.kw("script")?;
    let name = p.ident()?;
    let partial = if p.is_kw("partial") {
        p.bump();
        true
    } else {
        false
    };
    p.sym("{")?;
    p.kw("start")?;
    let start = p.twocell()?;
    p.sym(";")?;
    p.kw("goal")?;
    let goal = p.twocell()?;
    p.sym(";")?;
    p.kw("steps")?;
    p.sym("{")?;
    let mut steps = Vec::new();
    while !p.eat_sym("}") {
        steps.push(parse_step(&mut p)?);
    }
    p.sym("}")?;
    let start = resolve_twocell(&sig, start)?;
    let goal = resolve_twocell(&sig, goal)?;
    let mut steps_resolved = Vec::new();
    for mut s in steps {
        resolve_step(&sig, &mut s)?;
        steps_resolved.push(s);
    }
    Ok(ProofScript {
        name,
        uses,
        start,
        goal,
        steps: steps_resolved,
        partial,
    })
}

fn resolve_step(sig: &Signature, s: &mut ProofStep) -> Result<(), ParseError> {
    match s {
        ProofStep::Insert { mv, .. } => resolve_move(sig, mv),
        ProofStep::Apply { binding, .. } => {
            for v in binding.values_mut() {
                match v {
                    MetaVal::Cell(c) => *c = resolve_cell(sig, c.clone())?,
                    MetaVal::MoveV(m) => resolve_move(sig, m)?,
                    _ => {}
                }
            }
            Ok(())
        }
        ProofStep::Inner { steps, .. } => {
            for st in steps {
                resolve_step(sig, st)?;
            }
            Ok(())
        }
        _ => Ok(()),
    }
}
