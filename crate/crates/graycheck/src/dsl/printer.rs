//! Canonical printer. `parse(print(v)) == v` for every valid value, and
//! printing is deterministic, so golden files reprint byte-exactly.

use crate::diagram::{Move, MoveCore, OneCell, Slice, SliceCore, TwoCell};
use crate::rewrite::{ApplyCtx, Binding, Direction, MetaVal, ProofScript, ProofStep};
use crate::signature::{
    CoreT, Gen1Kind, LetterT, ObjectExpr, ObjectWord, OneCellT, Signature, SliceT, WordT,
};

fn ident_ok(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    s.chars()
        .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.' || c == '\'')
        && !matches!(s, "id" | "fwd" | "bwd")
}

fn atom(s: &str) -> String {
    if ident_ok(s) {
        s.to_string()
    } else {
        format!("\"{s}\"")
    }
}

pub fn print_word(w: &ObjectWord) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.0.iter()
        .map(|e| match e {
            ObjectExpr::Atom(a) => atom(a),
            ObjectExpr::IHom(s, t) => format!("[{}, {}]", print_word(s), print_word(t)),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn print_slice(s: &Slice) -> String {
    let core = match &s.core {
        SliceCore::Gen1 { name, args, inv } => {
            let mut out = atom(name);
            if !args.is_empty() {
                out.push('[');
                out.push_str(
                    &args
                        .iter()
                        .map(print_word)
                        .collect::<Vec<_>>()
                        .join(", "),
                );
                out.push(']');
            }
            if *inv {
                out.push('~');
            }
            out
        }
        SliceCore::HomAction { ctx, inner } => {
            format!("[{} ; {}]", print_word(ctx), print_onecell(inner))
        }
    };
    format!("({} | {} | {})", print_word(&s.left), core, print_word(&s.right))
}

pub fn print_onecell(c: &OneCell) -> String {
    if c.slices.is_empty() {
        return format!("id({})", print_word(&c.dom));
    }
    c.slices
        .iter()
        .map(print_slice)
        .collect::<Vec<_>>()
        .join(" ; ")
}

pub fn print_move(m: &Move) -> String {
    let core = match &m.core {
        MoveCore::Gen2 { name, args, fwd } => {
            let mut out = format!("gen {}", atom(name));
            if !args.is_empty() {
                out.push('[');
                out.push_str(
                    &args
                        .iter()
                        .map(print_word)
                        .collect::<Vec<_>>()
                        .join(", "),
                );
                out.push(']');
            }
            out.push_str(dir_str(*fwd));
            out
        }
        MoveCore::Interchange { first, second, fwd } => format!(
            "sigma {} {}{}",
            print_slice(first),
            print_slice(second),
            dir_str(*fwd)
        ),
        MoveCore::Crossing {
            gen,
            args,
            param,
            inner,
            fwd,
        } => format!(
            "cross {}[{}] #{} ({}){}",
            atom(gen),
            args.iter().map(print_word).collect::<Vec<_>>().join(", "),
            param,
            print_onecell(inner),
            dir_str(*fwd)
        ),
        MoveCore::EquivUnit { gen, args, fwd } => format!(
            "unit {}[{}]{}",
            atom(gen),
            args.iter().map(print_word).collect::<Vec<_>>().join(", "),
            dir_str(*fwd)
        ),
        MoveCore::EquivCounit { gen, args, fwd } => format!(
            "counit {}[{}]{}",
            atom(gen),
            args.iter().map(print_word).collect::<Vec<_>>().join(", "),
            dir_str(*fwd)
        ),
        MoveCore::HomAction2 { ctx, inner, fwd } => format!(
            "hom2 ({}) {}{}",
            print_word(ctx),
            print_twocell(inner),
            dir_str(*fwd)
        ),
        MoveCore::HomSplit {
            ctx,
            first,
            second,
            fwd,
        } => format!(
            "split ({}) ({}) ({}){}",
            print_word(ctx),
            print_onecell(first),
            print_onecell(second),
            dir_str(*fwd)
        ),
    };
    format!(
        "@{} <{} >{} {}",
        m.at,
        print_word(&m.left),
        print_word(&m.right),
        core
    )
}

fn dir_str(fwd: bool) -> &'static str {
    if fwd {
        " fwd"
    } else {
        " bwd"
    }
}

pub fn print_twocell(c: &TwoCell) -> String {
    let mut out = format!("{{ source {} ;", print_onecell(&c.source));
    for m in &c.moves {
        out.push_str(&format!(" move {} ;", print_move(m)));
    }
    out.push_str(" }");
    out
}

pub fn print_metaval(v: &MetaVal) -> String {
    match v {
        MetaVal::Word(w) => format!("word {}", print_word(w)),
        MetaVal::Cell(c) => format!("cell {}", print_onecell(c)),
        MetaVal::SliceV(s) => format!("slice {}", print_slice(s)),
        MetaVal::MoveV(m) => format!("move {}", print_move(m)),
        MetaVal::Nat(n) => format!("nat {n}"),
    }
}

pub fn print_binding(b: &Binding) -> String {
    let mut out = String::from("{");
    for (k, v) in b {
        out.push_str(&format!(" {} = {} ;", atom(k), print_metaval(v)));
    }
    out.push_str(" }");
    out
}

pub fn print_step(s: &ProofStep, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    match s {
        ProofStep::Exchange { at } => format!("{pad}exchange {at} ;"),
        ProofStep::Cancel { at } => format!("{pad}cancel {at} ;"),
        ProofStep::Insert { at, mv } => format!("{pad}insert {at} {} ;", print_move(mv)),
        ProofStep::Apply {
            schema,
            dir,
            inverted,
            ctx,
            binding,
        } => format!(
            "{pad}apply {} {}{} at {} len {} slice {} left ({}) bind {} ;",
            atom(schema),
            match dir {
                Direction::Fwd => "fwd",
                Direction::Bwd => "bwd",
            },
            if *inverted { " inv" } else { "" },
            ctx.move_at,
            ctx.move_len,
            ctx.slice_at,
            print_word(&ctx.left),
            print_binding(binding)
        ),
        ProofStep::Inner { at, steps } => {
            let mut out = format!("{pad}inner {at} {{\n");
            for st in steps {
                out.push_str(&print_step(st, indent + 1));
                out.push('\n');
            }
            out.push_str(&format!("{pad}}}"));
            out
        }
    }
}

pub fn print_schema_uses(uses: &[String]) -> String {
    let mut out = String::new();
    for u in uses {
        out.push_str(&format!("use {u} ;\n"));
    }
    out
}

pub fn print_script(s: &ProofScript) -> String {
    let mut out = print_schema_uses(&s.uses);
    out.push_str(&format!(
        "script {}{} {{\n",
        atom(&s.name),
        if s.partial { " partial" } else { "" }
    ));
    out.push_str(&format!("start {} ;\n", print_twocell(&s.start)));
    out.push_str(&format!("goal {} ;\n", print_twocell(&s.goal)));
    out.push_str("steps {\n");
    for st in &s.steps {
        out.push_str(&print_step(st, 1));
        out.push('\n');
    }
    out.push_str("}\n}\n");
    out
}

fn print_word_t(w: &WordT) -> String {
    if w.0.is_empty() {
        return "1".to_string();
    }
    w.0.iter()
        .map(|l| match l {
            LetterT::Param(i) => format!("X{i}"),
            LetterT::Atom(a) => atom(a),
            LetterT::IHom(s, t) => format!("[{}, {}]", print_word_t(s), print_word_t(t)),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn print_slice_t(s: &SliceT) -> String {
    let core = match &s.core {
        CoreT::Gen1 { name, args, inv } => {
            let mut out = atom(name);
            if !args.is_empty() {
                out.push('[');
                out.push_str(
                    &args
                        .iter()
                        .map(print_word_t)
                        .collect::<Vec<_>>()
                        .join(", "),
                );
                out.push(']');
            }
            if *inv {
                out.push('~');
            }
            out
        }
        CoreT::HomAction { ctx, inner } => {
            format!("[{} ; {}]", print_word_t(ctx), print_cell_t(inner))
        }
    };
    format!(
        "({} | {} | {})",
        print_word_t(&s.left),
        core,
        print_word_t(&s.right)
    )
}

fn print_cell_t(c: &OneCellT) -> String {
    if c.slices.is_empty() {
        return format!("id({})", print_word_t(&c.dom));
    }
    c.slices
        .iter()
        .map(print_slice_t)
        .collect::<Vec<_>>()
        .join(" ; ")
}

/// Print the user-declared part of a signature: `use` lines plus every
/// declaration not contributed by the used libraries.
pub fn print_signature(sig: &Signature) -> String {
    let mut base = Signature::new();
    for u in &sig.uses {
        if let Ok(lib) = crate::libs::std_library(u) {
            if let Ok(m) = base.merge(&lib) {
                base = m;
            }
        }
    }
    let mut out = print_schema_uses(&sig.uses);
    let own_objects: Vec<&String> = sig
        .objects
        .iter()
        .filter(|o| !base.objects.contains(*o))
        .collect();
    if !own_objects.is_empty() {
        out.push_str(&format!(
            "object {} ;\n",
            own_objects
                .iter()
                .map(|o| atom(o))
                .collect::<Vec<_>>()
                .join(", ")
        ));
    }
    for (name, d) in &sig.gen1s {
        if base.gen1s.contains_key(name) {
            continue;
        }
        let params = (0..d.params)
            .map(|i| format!("X{i}"))
            .collect::<Vec<_>>()
            .join(", ");
        let mut attrs = String::new();
        if d.kind == Gen1Kind::Equivalence {
            attrs.push_str(" equivalence");
        }
        if !d.natural.is_empty() {
            attrs.push_str(&format!(
                " natural({})",
                d.natural
                    .iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
        }
        if d.unit_degenerate {
            attrs.push_str(" unit_degenerate");
        }
        let head = if d.params == 0 {
            atom(name)
        } else {
            format!("{}[{}]", atom(name), params)
        };
        out.push_str(&format!(
            "gen1 {} : {} -> {}{} ;\n",
            head,
            print_word_t(&d.dom),
            print_word_t(&d.cod),
            attrs
        ));
    }
    for (name, d) in &sig.gen2s {
        if base.gen2s.contains_key(name) {
            continue;
        }
        let params = (0..d.params)
            .map(|i| format!("X{i}"))
            .collect::<Vec<_>>()
            .join(", ");
        let head = if d.params == 0 {
            atom(name)
        } else {
            format!("{}[{}]", atom(name), params)
        };
        out.push_str(&format!(
            "gen2 {} : {} => {} ;\n",
            head,
            print_cell_t(&d.lhs),
            print_cell_t(&d.rhs)
        ));
    }
    out
}

/// Print a diagram file: named one-cells and two-cells.
pub fn print_diagram(uses: &[String], items: &[(String, super::parser::DiagItem)]) -> String {
    let mut out = print_schema_uses(uses);
    for (name, item) in items {
        match item {
            super::parser::DiagItem::One(c) => {
                out.push_str(&format!("onecell {} = {} ;\n", atom(name), print_onecell(c)));
            }
            super::parser::DiagItem::Two(c) => {
                out.push_str(&format!("twocell {} = {} ;\n", atom(name), print_twocell(c)));
            }
        }
    }
    out
}

/// Context printing helper for reports.
pub fn print_ctx(ctx: &ApplyCtx) -> String {
    format!(
        "at {} len {} slice {} left ({})",
        ctx.move_at,
        ctx.move_len,
        ctx.slice_at,
        print_word(&ctx.left)
    )
}
