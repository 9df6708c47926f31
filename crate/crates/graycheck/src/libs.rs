//! The standard axiom environments: gray_core, braiding, braided_semistrict,
//! closed_structure, and the formal vbicat(n) presentations.

use crate::rewrite::{AxiomSchema, BuiltinSchema, MetaKind, SchemaPattern};
use crate::signature::{
    CoreT, Gen1Decl, Gen1Kind, Gen2Decl, LetterT, OneCellT, SigError, Signature, SliceT, WordT,
};

fn p(i: usize) -> WordT {
    WordT::param(i)
}

fn cat(parts: &[&WordT]) -> WordT {
    let mut out = WordT::empty();
    for x in parts {
        out = out.concat(x);
    }
    out
}

fn slice_t(left: WordT, name: &str, args: Vec<WordT>, right: WordT) -> SliceT {
    SliceT {
        left,
        core: CoreT::Gen1 {
            name: name.to_string(),
            args,
            inv: false,
        },
        right,
    }
}

fn builtin(name: &str, metavars: &[(&str, MetaKind)], kind: BuiltinSchema) -> AxiomSchema {
    AxiomSchema {
        name: name.to_string(),
        metavars: metavars
            .iter()
            .map(|(n, k)| (n.to_string(), *k))
            .collect(),
        invertible: true,
        pattern: SchemaPattern::Builtin(kind),
    }
}

fn gray_core() -> Signature {
    let mut sig = Signature::new();
    sig.uses.push("gray_core".into());
    use MetaKind::*;
    for (i, n) in ["interchange_i", "interchange_ii", "interchange_iv"]
        .iter()
        .enumerate()
    {
        sig.add_schema(builtin(
            n,
            &[("s", GenInstanceVar)],
            BuiltinSchema::InterchangeTrivial { which: i as u8 },
        ));
    }
    sig.add_schema(builtin(
        "interchange_iii",
        &[
            ("src", OneCellVar),
            ("m1", TwoCellVar),
            ("m2", TwoCellVar),
        ],
        BuiltinSchema::InterchangeNat,
    ));
    sig
}

fn braiding() -> Result<Signature, SigError> {
    let mut sig = gray_core();
    sig.uses.push("braiding".into());
    sig.add_gen1(Gen1Decl {
        name: "beta".into(),
        params: 2,
        dom: cat(&[&p(0), &p(1)]),
        cod: cat(&[&p(1), &p(0)]),
        kind: Gen1Kind::Equivalence,
        natural: vec![0, 1],
        unit_degenerate: true,
    })?;
    // R: beta[A, B C] => (beta[A,B] ⊗ C) ; (B ⊗ beta[A,C])
    sig.add_gen2(Gen2Decl {
        name: "R".into(),
        params: 3,
        lhs: OneCellT {
            dom: cat(&[&p(0), &p(1), &p(2)]),
            slices: vec![slice_t(
                WordT::empty(),
                "beta",
                vec![p(0), cat(&[&p(1), &p(2)])],
                WordT::empty(),
            )],
        },
        rhs: OneCellT {
            dom: cat(&[&p(0), &p(1), &p(2)]),
            slices: vec![
                slice_t(WordT::empty(), "beta", vec![p(0), p(1)], p(2)),
                slice_t(p(1), "beta", vec![p(0), p(2)], WordT::empty()),
            ],
        },
        invertible: true,
    })?;
    // S: beta[A B, C] => (A ⊗ beta[B,C]) ; (beta[A,C] ⊗ B)
    sig.add_gen2(Gen2Decl {
        name: "S".into(),
        params: 3,
        lhs: OneCellT {
            dom: cat(&[&p(0), &p(1), &p(2)]),
            slices: vec![slice_t(
                WordT::empty(),
                "beta",
                vec![cat(&[&p(0), &p(1)]), p(2)],
                WordT::empty(),
            )],
        },
        rhs: OneCellT {
            dom: cat(&[&p(0), &p(1), &p(2)]),
            slices: vec![
                slice_t(p(0), "beta", vec![p(1), p(2)], WordT::empty()),
                slice_t(WordT::empty(), "beta", vec![p(0), p(2)], p(1)),
            ],
        },
        invertible: true,
    })?;
    use MetaKind::*;
    let w = WordVar;
    sig.add_schema(builtin(
        "ba1",
        &[("a", w), ("b", w), ("c", w), ("d", w)],
        BuiltinSchema::Ba1,
    ));
    sig.add_schema(builtin(
        "ba2",
        &[("a", w), ("b", w), ("c", w), ("d", w)],
        BuiltinSchema::Ba2,
    ));
    sig.add_schema(builtin(
        "ba3",
        &[("a1", w), ("a2", w), ("b", w), ("c", w)],
        BuiltinSchema::Ba3,
    ));
    sig.add_schema(builtin(
        "ba4",
        &[("a", w), ("b", w), ("c", w)],
        BuiltinSchema::Ba4,
    ));
    sig.add_schema(builtin(
        "naturality",
        &[
            ("arg0", w),
            ("arg1", w),
            ("param", WordVar),
            ("f", OneCellVar),
            ("theta", TwoCellVar),
        ],
        BuiltinSchema::NatCrossing { gen: "beta".into() },
    ));
    sig.add_schema(builtin(
        "modification_r",
        &[
            ("a", w),
            ("b", w),
            ("c", w),
            ("param", WordVar),
            ("f", GenInstanceVar),
        ],
        BuiltinSchema::ModRS { gen: 'R' },
    ));
    sig.add_schema(builtin(
        "modification_s",
        &[
            ("a", w),
            ("b", w),
            ("c", w),
            ("param", WordVar),
            ("f", GenInstanceVar),
        ],
        BuiltinSchema::ModRS { gen: 'S' },
    ));
    sig.add_schema(builtin(
        "triangle_l_beta",
        &[("arg0", w), ("arg1", w)],
        BuiltinSchema::Triangle {
            gen: "beta".into(),
            right: false,
        },
    ));
    sig.add_schema(builtin(
        "triangle_r_beta",
        &[("arg0", w), ("arg1", w)],
        BuiltinSchema::Triangle {
            gen: "beta".into(),
            right: true,
        },
    ));
    Ok(sig)
}

fn braided_semistrict() -> Result<Signature, SigError> {
    let mut sig = braiding()?;
    sig.uses.push("braided_semistrict".into());
    use MetaKind::WordVar as W;
    sig.add_schema(builtin("s1", &[("w", W)], BuiltinSchema::S1));
    for (name, gen, variant) in [
        ("s2a", 'R', 0u8),
        ("s2b", 'R', 1),
        ("s4a", 'R', 2),
        ("s3a", 'S', 0),
        ("s3b", 'S', 1),
        ("s4b", 'S', 2),
    ] {
        sig.add_schema(builtin(
            name,
            &[("a", W), ("b", W)],
            BuiltinSchema::SDegenerate { gen, variant },
        ));
    }
    Ok(sig)
}

fn closed_structure() -> Result<Signature, SigError> {
    let mut sig = Signature::new();
    sig.uses.push("gray_core".into());
    sig.uses.push("closed_structure".into());
    // eta[A,B]: B -> [A, B A]
    sig.add_gen1(Gen1Decl {
        name: "eta".into(),
        params: 2,
        dom: p(1),
        cod: WordT(vec![LetterT::IHom(p(0), cat(&[&p(1), &p(0)]))]),
        kind: Gen1Kind::Plain,
        natural: vec![1],
        unit_degenerate: false,
    })?;
    // epsilon[A,B]: [A,B] A -> B
    sig.add_gen1(Gen1Decl {
        name: "epsilon".into(),
        params: 2,
        dom: WordT(vec![LetterT::IHom(p(0), p(1)), LetterT::Param(0)]),
        cod: p(1),
        kind: Gen1Kind::Plain,
        natural: vec![1],
        unit_degenerate: false,
    })?;
    // s[A,B]: id_{B A} => (eta[A,B] ⊗ A) ; epsilon[A, B A]
    sig.add_gen2(Gen2Decl {
        name: "s_tri".into(),
        params: 2,
        lhs: OneCellT {
            dom: cat(&[&p(1), &p(0)]),
            slices: vec![],
        },
        rhs: OneCellT {
            dom: cat(&[&p(1), &p(0)]),
            slices: vec![
                slice_t(WordT::empty(), "eta", vec![p(0), p(1)], p(0)),
                slice_t(
                    WordT::empty(),
                    "epsilon",
                    vec![p(0), cat(&[&p(1), &p(0)])],
                    WordT::empty(),
                ),
            ],
        },
        invertible: true,
    })?;
    // t[A,B]: eta[A,[A,B]] ; [A, epsilon[A,B]] => id_{[A,B]}
    let hom_ab = WordT(vec![LetterT::IHom(p(0), p(1))]);
    sig.add_gen2(Gen2Decl {
        name: "t_tri".into(),
        params: 2,
        lhs: OneCellT {
            dom: hom_ab.clone(),
            slices: vec![
                slice_t(WordT::empty(), "eta", vec![p(0), hom_ab.clone()], WordT::empty()),
                SliceT {
                    left: WordT::empty(),
                    core: CoreT::HomAction {
                        ctx: p(0),
                        inner: Box::new(OneCellT {
                            dom: cat(&[&hom_ab, &p(0)]),
                            slices: vec![slice_t(
                                WordT::empty(),
                                "epsilon",
                                vec![p(0), p(1)],
                                WordT::empty(),
                            )],
                        }),
                    },
                    right: WordT::empty(),
                },
            ],
        },
        rhs: OneCellT {
            dom: hom_ab,
            slices: vec![],
        },
        invertible: true,
    })?;
    use MetaKind::*;
    let w = WordVar;
    sig.add_schema(builtin(
        "nat_eta",
        &[
            ("arg0", w),
            ("arg1", w),
            ("param", w),
            ("f", OneCellVar),
            ("theta", TwoCellVar),
        ],
        BuiltinSchema::NatCrossing { gen: "eta".into() },
    ));
    sig.add_schema(builtin(
        "nat_epsilon",
        &[
            ("arg0", w),
            ("arg1", w),
            ("param", w),
            ("f", OneCellVar),
            ("theta", TwoCellVar),
        ],
        BuiltinSchema::NatCrossing {
            gen: "epsilon".into(),
        },
    ));
    sig.add_schema(builtin(
        "swallowtail1",
        &[("a", w), ("b", w)],
        BuiltinSchema::Swallowtail1,
    ));
    sig.add_schema(builtin(
        "swallowtail2",
        &[("a", w), ("b", w)],
        BuiltinSchema::Swallowtail2,
    ));
    sig.add_schema(builtin(
        "mod_tri_s",
        &[("a", w), ("b", w), ("f", GenInstanceVar)],
        BuiltinSchema::ModTriangulator { gen: 's' },
    ));
    sig.add_schema(builtin(
        "mod_tri_t",
        &[("a", w), ("b", w), ("f", GenInstanceVar)],
        BuiltinSchema::ModTriangulator { gen: 't' },
    ));
    sig.add_schema(builtin(
        "hom_functoriality",
        &[
            ("ctx", w),
            ("f", OneCellVar),
            ("g", OneCellVar),
            ("theta", TwoCellVar),
        ],
        BuiltinSchema::HomFunctoriality,
    ));
    Ok(sig)
}

/// Formal object names for a vbicat library: a, b, c, ...
pub fn formal_objects(n: usize) -> Vec<String> {
    assert!(n <= 26, "formal presentations support at most 26 objects");
    (0..n)
        .map(|i| {
            char::from(b'a' + i as u8).to_string()
        })
        .collect()
}

/// Load a named standard library.
pub fn std_library(name: &str) -> Result<Signature, SigError> {
    if let Some(rest) = name.strip_prefix("vbicat(") {
        let n: usize = rest
            .strip_suffix(')')
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| SigError::UnknownLibrary(name.to_string()))?;
        if n == 0 || n > 26 {
            return Err(SigError::UnknownLibrary(name.to_string()));
        }
        let objs = formal_objects(n);
        let refs: Vec<&str> = objs.iter().map(|s| s.as_str()).collect();
        let pres = crate::enriched::vbicat_presentation("C", &refs)
            .map_err(|e| SigError::BoundaryMismatch("vbicat".into(), e.to_string()))?;
        let mut sig = pres.sig;
        sig.uses.push(name.to_string());
        return Ok(sig);
    }
    let sig = match name {
        "gray_core" => gray_core(),
        "braiding" => braiding()?,
        "braided_semistrict" => braided_semistrict()?,
        "closed_structure" => closed_structure()?,
        _ => return Err(SigError::UnknownLibrary(name.to_string())),
    };
    sig.validate()?;
    Ok(sig)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn libraries_are_closed_under_self_validation() {
        for name in [
            "gray_core",
            "braiding",
            "braided_semistrict",
            "closed_structure",
        ] {
            let sig = std_library(name).unwrap();
            sig.validate().unwrap();
        }
    }

    #[test]
    fn unknown_library_is_rejected() {
        assert!(matches!(
            std_library("nope"),
            Err(SigError::UnknownLibrary(_))
        ));
    }

    #[test]
    fn merge_is_idempotent() {
        let sig = std_library("braided_semistrict").unwrap();
        let m = sig.merge(&sig).unwrap();
        assert_eq!(m.gen1s.len(), sig.gen1s.len());
        assert_eq!(m.gen2s.len(), sig.gen2s.len());
    }
}
