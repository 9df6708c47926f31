//! Enriched structures over a braided (optionally closed) base and the
//! generation of their proof obligations: V-bicategory presentations with
//! identity/associativity coherence, V-pseudofunctors, V-pseudonatural
//! transformations and modifications, extra-pseudonatural transformations,
//! and bi(co)end candidates.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diagram::{
    compose1, id1, id2, whisker2, DResult, DiagramError, Move, MoveCore, OneCell, Slice,
    SliceCore, TwoCell,
};
use crate::rewrite::AxiomSchema;
use crate::signature::{
    CoreT, Gen1Decl, Gen1Kind, Gen2Decl, Ident, ObjectWord, OneCellT, Signature, SliceT, WordT,
};

fn e() -> ObjectWord {
    ObjectWord::empty()
}

/// Presentation of a V-bicategory: finitely many formal objects with
/// hom-objects, composition, unit, and coherence cells.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VBicatPresentation {
    pub name: String,
    pub objects: Vec<Ident>,
    pub sig: Signature,
    pub hom: BTreeMap<(Ident, Ident), ObjectWord>,
    pub m: BTreeMap<(Ident, Ident, Ident), OneCell>,
    pub u: BTreeMap<Ident, OneCell>,
    pub alpha: BTreeMap<(Ident, Ident, Ident, Ident), TwoCell>,
    pub lambda: BTreeMap<(Ident, Ident), TwoCell>,
    pub rho: BTreeMap<(Ident, Ident), TwoCell>,
}

impl VBicatPresentation {
    pub fn hom(&self, a: &str, b: &str) -> DResult<ObjectWord> {
        self.hom
            .get(&(a.to_string(), b.to_string()))
            .cloned()
            .ok_or_else(|| DiagramError::Other(format!("{}: no hom({a},{b})", self.name)))
    }

    pub fn m(&self, a: &str, b: &str, c: &str) -> DResult<OneCell> {
        self.m
            .get(&(a.to_string(), b.to_string(), c.to_string()))
            .cloned()
            .ok_or_else(|| DiagramError::Other(format!("{}: no m({a},{b},{c})", self.name)))
    }

    pub fn u(&self, a: &str) -> DResult<OneCell> {
        self.u
            .get(a)
            .cloned()
            .ok_or_else(|| DiagramError::Other(format!("{}: no u({a})", self.name)))
    }

    pub fn alpha(&self, a: &str, b: &str, c: &str, d: &str) -> DResult<TwoCell> {
        self.alpha
            .get(&(a.to_string(), b.to_string(), c.to_string(), d.to_string()))
            .cloned()
            .ok_or_else(|| DiagramError::Other(format!("{}: no alpha", self.name)))
    }

    pub fn lambda(&self, a: &str, b: &str) -> DResult<TwoCell> {
        self.lambda
            .get(&(a.to_string(), b.to_string()))
            .cloned()
            .ok_or_else(|| DiagramError::Other(format!("{}: no lambda({a},{b})", self.name)))
    }

    pub fn rho(&self, a: &str, b: &str) -> DResult<TwoCell> {
        self.rho
            .get(&(a.to_string(), b.to_string()))
            .cloned()
            .ok_or_else(|| DiagramError::Other(format!("{}: no rho({a},{b})", self.name)))
    }

    /// Boundary conditions of Definition 3.1-style data.
    pub fn validate(&self, sig: &Signature) -> DResult<()> {
        for x in &self.objects {
            for y in &self.objects {
                self.hom(x, y)?;
            }
        }
        for ((a, b, c), m) in &self.m {
            let (d, cod) = m.boundary(sig)?;
            let want_dom = self.hom(b, c)?.concat(&self.hom(a, b)?);
            let want_cod = self.hom(a, c)?;
            if d != want_dom || cod != want_cod {
                return Err(DiagramError::Other(format!(
                    "{}: m({a},{b},{c}) has boundary {:?} -> {:?}",
                    self.name, d, cod
                )));
            }
        }
        for (a, u) in &self.u {
            let (d, cod) = u.boundary(sig)?;
            if !d.is_empty() || cod != self.hom(a, a)? {
                return Err(DiagramError::Other(format!(
                    "{}: u({a}) has boundary {:?} -> {:?}",
                    self.name, d, cod
                )));
            }
        }
        for ((a, b, c, d), al) in &self.alpha {
            let (lhs, rhs) = alpha_boundary(sig, self, a, b, c, d)?;
            let (ad, ac) = al.boundary_cells(sig)?;
            if ad != lhs || ac != rhs {
                return Err(DiagramError::Other(format!(
                    "{}: alpha({a},{b},{c},{d}) has wrong boundary",
                    self.name
                )));
            }
        }
        for ((a, b), la) in &self.lambda {
            let (ld, lc) = la.boundary_cells(sig)?;
            if ld != lambda_dom(sig, self, a, b)? || lc != id1(self.hom(a, b)?) {
                return Err(DiagramError::Other(format!(
                    "{}: lambda({a},{b}) has wrong boundary",
                    self.name
                )));
            }
        }
        for ((a, b), rh) in &self.rho {
            let (rd, rc) = rh.boundary_cells(sig)?;
            if rd != rho_dom(sig, self, a, b)? || rc != id1(self.hom(a, b)?) {
                return Err(DiagramError::Other(format!(
                    "{}: rho({a},{b}) has wrong boundary",
                    self.name
                )));
            }
        }
        Ok(())
    }
}

/// `m ∘ (m ⊗ 1)` and `m ∘ (1 ⊗ m)` on hom(c,d)·hom(b,c)·hom(a,b).
pub fn alpha_boundary(
    sig: &Signature,
    p: &VBicatPresentation,
    a: &str,
    b: &str,
    c: &str,
    d: &str,
) -> DResult<(OneCell, OneCell)> {
    let hab = p.hom(a, b)?;
    let hcd = p.hom(c, d)?;
    let lhs = compose1(
        sig,
        &p.m(b, c, d)?.whisker(&e(), &hab),
        &p.m(a, b, d)?,
    )?;
    let rhs = compose1(
        sig,
        &p.m(a, b, c)?.whisker(&hcd, &e()),
        &p.m(a, c, d)?,
    )?;
    Ok((lhs, rhs))
}

/// `m ∘ (u_b ⊗ 1)` on hom(a,b).
pub fn lambda_dom(
    sig: &Signature,
    p: &VBicatPresentation,
    a: &str,
    b: &str,
) -> DResult<OneCell> {
    let hab = p.hom(a, b)?;
    compose1(sig, &p.u(b)?.whisker(&e(), &hab), &p.m(a, b, b)?)
}

/// `m ∘ (1 ⊗ u_a)` on hom(a,b).
pub fn rho_dom(sig: &Signature, p: &VBicatPresentation, a: &str, b: &str) -> DResult<OneCell> {
    let hab = p.hom(a, b)?;
    compose1(sig, &p.u(a)?.whisker(&hab, &e()), &p.m(a, a, b)?)
}

/// Emit the interchanger sequence exchanging two adjacent slice blocks of
/// lengths `len1` and `len2` starting at `at`.
pub fn sigma_block(
    sig: &Signature,
    state: &OneCell,
    at: usize,
    len1: usize,
    len2: usize,
) -> DResult<(Vec<Move>, OneCell)> {
    let mut st = state.clone();
    let mut moves = Vec::new();
    // bubble each slice of the second block below the first block
    for k in 0..len2 {
        // second-block slice currently at position at+len1+k
        for step in 0..len1 {
            let pos = at + len1 + k - step - 1;
            let first = st.slices[pos].clone();
            let second = st.slices[pos + 1].clone();
            let mv = Move::new(
                pos,
                MoveCore::Interchange {
                    first,
                    second,
                    fwd: true,
                },
            );
            st = crate::diagram::apply_move(sig, &st, &mv, moves.len())?;
            moves.push(mv);
        }
    }
    Ok((moves, st))
}

/// Identity-and-associativity obligation sides for arbitrary presentations.
///
/// The (IC) instance at the composable pair hom(b,c)·hom(a,b) with the unit
/// inserted at `b`: `1λ ∘ α  =  ρ1`.
pub fn ic_sides(
    sig: &Signature,
    p: &VBicatPresentation,
    a: &str,
    b: &str,
    c: &str,
) -> DResult<(TwoCell, TwoCell)> {
    let hab = p.hom(a, b)?;
    let hbc = p.hom(b, c)?;
    let u_ins = p.u(b)?.whisker(&hbc, &hab);
    let m1 = p.m(b, b, c)?.whisker(&e(), &hab);
    let m_top = p.m(a, b, c)?;
    let dom = compose1(sig, &u_ins, &compose1(sig, &m1, &m_top)?)?;
    // lhs: alpha(a,b,b,c) under the unit insertion, then hbc ⊗ lambda(a,b)
    let alpha = p.alpha(a, b, b, c)?;
    let w1 = whisker2(sig, &e(), &alpha, &e(), &u_ins, &id1(p.hom(a, c)?))?;
    let lam = p.lambda(a, b)?;
    let w2 = whisker2(sig, &hbc, &lam, &e(), &id1(dom.dom.clone()), &m_top)?;
    let lhs = crate::diagram::compose2(sig, &w1, &w2)?;
    // rhs: rho(b,c) ⊗ hom(a,b)
    let rho = p.rho(b, c)?;
    let w3 = whisker2(sig, &e(), &rho, &hab, &id1(dom.dom.clone()), &m_top)?;
    let rhs = w3;
    debug_assert_eq!(lhs.source, dom);
    debug_assert_eq!(rhs.source, dom);
    Ok((lhs, rhs))
}

fn head_cell(c: &OneCell, keep: usize) -> OneCell {
    OneCell {
        dom: c.dom.clone(),
        slices: c.slices[..keep].to_vec(),
    }
}

pub fn tail_cell(sig: &Signature, c: &OneCell, skip: usize) -> DResult<OneCell> {
    let words = c.words(sig)?;
    Ok(OneCell {
        dom: words[skip].clone(),
        slices: c.slices[skip..].to_vec(),
    })
}

/// The (AC) pentagon instance on hom(y,z)·hom(x,y)·hom(w,x)·hom(v,w):
/// `(α⊗1) ; α ; (1⊗α)  =  α ; Σ ; α`.
pub fn ac_sides(
    sig: &Signature,
    p: &VBicatPresentation,
    v: &str,
    w: &str,
    x: &str,
    y: &str,
    z: &str,
) -> DResult<(TwoCell, TwoCell)> {
    let hvw = p.hom(v, w)?;
    let hwx = p.hom(w, x)?;
    let hyz = p.hom(y, z)?;
    let hvz = p.hom(v, z)?;
    let m3 = p.m(x, y, z)?.whisker(&e(), &hwx.concat(&hvw));
    let m2 = p.m(w, x, z)?.whisker(&e(), &hvw);
    let m1 = p.m(v, w, z)?;
    let dom = compose1(sig, &m3, &compose1(sig, &m2, &m1)?)?;
    let word = dom.dom.clone();

    // lhs: (alpha(w,x,y,z) ⊗ 1) ; alpha(v,w,y,z) ; (1 ⊗ alpha(v,w,x,y))
    let s1 = whisker2(
        sig,
        &e(),
        &p.alpha(w, x, y, z)?,
        &hvw,
        &id1(word.clone()),
        &m1,
    )?;
    let st1 = s1.target(sig)?;
    let k1 = p.m(w, x, y)?.slices.len();
    let s2 = whisker2(
        sig,
        &e(),
        &p.alpha(v, w, y, z)?,
        &e(),
        &head_cell(&st1, k1),
        &id1(hvz.clone()),
    )?;
    let st2 = s2.target(sig)?;
    let k2 = k1 + p.m(v, w, y)?.slices.len();
    let s3 = whisker2(
        sig,
        &hyz,
        &p.alpha(v, w, x, y)?,
        &e(),
        &id1(word.clone()),
        &tail_cell(sig, &st2, k2)?,
    )?;
    let lhs = crate::rewrite::seq_cell(
        sig,
        dom.clone(),
        [s1.moves, s2.moves, s3.moves].concat(),
    )?;

    // rhs: alpha(v,w,x,z) ; interchange block ; alpha(v,x,y,z)
    let l1 = m3.slices.len();
    let t1 = whisker2(
        sig,
        &e(),
        &p.alpha(v, w, x, z)?,
        &e(),
        &head_cell(&dom, l1),
        &id1(hvz.clone()),
    )?;
    let str1 = t1.target(sig)?;
    let l2 = p.m(v, w, x)?.slices.len();
    let (sblock, str2) = sigma_block(sig, &str1, 0, l1, l2)?;
    let t2 = whisker2(
        sig,
        &e(),
        &p.alpha(v, x, y, z)?,
        &e(),
        &head_cell(&str2, l2),
        &id1(hvz),
    )?;
    let rhs = crate::rewrite::seq_cell(sig, dom, [t1.moves, sblock, t2.moves].concat())?;
    Ok((lhs, rhs))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum ObligationKind {
    Equation { lhs: TwoCell, rhs: TwoCell },
    Uniqueness { statement: String },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Obligation {
    pub name: String,
    pub kind: ObligationKind,
    pub provenance: String,
}

impl Obligation {
    pub fn equation(name: String, provenance: &str, lhs: TwoCell, rhs: TwoCell) -> Obligation {
        Obligation {
            name,
            kind: ObligationKind::Equation { lhs, rhs },
            provenance: provenance.to_string(),
        }
    }

    /// Boundary-equal sides check for equation obligations.
    pub fn validate(&self, sig: &Signature) -> DResult<()> {
        if let ObligationKind::Equation { lhs, rhs } = &self.kind {
            let (ld, lc) = lhs.boundary_cells(sig)?;
            let (rd, rc) = rhs.boundary_cells(sig)?;
            if ld != rd || lc != rc {
                return Err(DiagramError::Other(format!(
                    "obligation {}: sides have different boundaries",
                    self.name
                )));
            }
        }
        Ok(())
    }

    /// Both sides equal modulo commutation (dischargeable by the empty
    /// script).
    pub fn discharged_by_empty_script(&self, sig: &Signature) -> DResult<bool> {
        match &self.kind {
            ObligationKind::Equation { lhs, rhs } => {
                crate::normalize::eq_mod_commutation(sig, lhs, rhs)
            }
            ObligationKind::Uniqueness { .. } => Ok(false),
        }
    }
}

/// One IC obligation per ordered pair (instance at the triple (a,b,b)) and
/// one AC obligation per ordered 4-tuple (instance at (a,b,c,d,d)).
pub fn obligations_vbicat(
    sig: &Signature,
    p: &VBicatPresentation,
) -> DResult<Vec<Obligation>> {
    let mut out = Vec::new();
    for a in &p.objects {
        for b in &p.objects {
            let (lhs, rhs) = ic_sides(sig, p, a, b, b)?;
            out.push(Obligation::equation(
                format!("ic.{}.{a}.{b}", p.name),
                "identity coherence (IC)",
                lhs,
                rhs,
            ));
        }
    }
    for a in &p.objects {
        for b in &p.objects {
            for c in &p.objects {
                for d in &p.objects {
                    let (lhs, rhs) = ac_sides(sig, p, a, b, c, d, d)?;
                    out.push(Obligation::equation(
                        format!("ac.{}.{a}.{b}.{c}.{d}", p.name),
                        "associativity coherence (AC)",
                        lhs,
                        rhs,
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// The formal vbicat presentation: enumerated hom-atoms and generators,
/// with IC/AC registered as closed schemas at every tuple.
pub fn vbicat_presentation(prefix: &str, objects: &[&str]) -> DResult<VBicatPresentation> {
    let mut sig = Signature::new();
    let hom_atom = |x: &str, y: &str| format!("{prefix}.{x}.{y}");
    for x in objects {
        for y in objects {
            sig.add_object(&hom_atom(x, y))?;
        }
    }
    let hom_t = |x: &str, y: &str| WordT::atom(&hom_atom(x, y));
    for x in objects {
        for y in objects {
            for z in objects {
                sig.add_gen1(Gen1Decl {
                    name: format!("m.{prefix}.{x}.{y}.{z}"),
                    params: 0,
                    dom: hom_t(y, z).concat(&hom_t(x, y)),
                    cod: hom_t(x, z),
                    kind: Gen1Kind::Plain,
                    natural: vec![],
                    unit_degenerate: false,
                })?;
            }
        }
    }
    for x in objects {
        sig.add_gen1(Gen1Decl {
            name: format!("u.{prefix}.{x}"),
            params: 0,
            dom: WordT::empty(),
            cod: hom_t(x, x),
            kind: Gen1Kind::Plain,
            natural: vec![],
            unit_degenerate: false,
        })?;
    }
    let m_slice_t = |x: &str, y: &str, z: &str, l: WordT, r: WordT| SliceT {
        left: l,
        core: CoreT::Gen1 {
            name: format!("m.{prefix}.{x}.{y}.{z}"),
            args: vec![],
            inv: false,
        },
        right: r,
    };
    let u_slice_t = |x: &str, l: WordT, r: WordT| SliceT {
        left: l,
        core: CoreT::Gen1 {
            name: format!("u.{prefix}.{x}"),
            args: vec![],
            inv: false,
        },
        right: r,
    };
    for w in objects {
        for x in objects {
            for y in objects {
                for z in objects {
                    let dom3 = hom_t(y, z).concat(&hom_t(x, y)).concat(&hom_t(w, x));
                    sig.add_gen2(Gen2Decl {
                        name: format!("alpha.{prefix}.{w}.{x}.{y}.{z}"),
                        params: 0,
                        lhs: OneCellT {
                            dom: dom3.clone(),
                            slices: vec![
                                m_slice_t(x, y, z, WordT::empty(), hom_t(w, x)),
                                m_slice_t(w, x, z, WordT::empty(), WordT::empty()),
                            ],
                        },
                        rhs: OneCellT {
                            dom: dom3,
                            slices: vec![
                                m_slice_t(w, x, y, hom_t(y, z), WordT::empty()),
                                m_slice_t(w, y, z, WordT::empty(), WordT::empty()),
                            ],
                        },
                        invertible: true,
                    })?;
                }
            }
        }
    }
    for x in objects {
        for y in objects {
            sig.add_gen2(Gen2Decl {
                name: format!("lambda.{prefix}.{x}.{y}"),
                params: 0,
                lhs: OneCellT {
                    dom: hom_t(x, y),
                    slices: vec![
                        u_slice_t(y, WordT::empty(), hom_t(x, y)),
                        m_slice_t(x, y, y, WordT::empty(), WordT::empty()),
                    ],
                },
                rhs: OneCellT {
                    dom: hom_t(x, y),
                    slices: vec![],
                },
                invertible: true,
            })?;
            sig.add_gen2(Gen2Decl {
                name: format!("rho.{prefix}.{x}.{y}"),
                params: 0,
                lhs: OneCellT {
                    dom: hom_t(x, y),
                    slices: vec![
                        u_slice_t(x, hom_t(x, y), WordT::empty()),
                        m_slice_t(x, x, y, WordT::empty(), WordT::empty()),
                    ],
                },
                rhs: OneCellT {
                    dom: hom_t(x, y),
                    slices: vec![],
                },
                invertible: true,
            })?;
        }
    }
    sig.validate()?;

    // presentation maps
    let hom_w = |x: &str, y: &str| ObjectWord::atom(&hom_atom(x, y));
    let mut p = VBicatPresentation {
        name: prefix.to_string(),
        objects: objects.iter().map(|s| s.to_string()).collect(),
        sig: sig.clone(),
        hom: BTreeMap::new(),
        m: BTreeMap::new(),
        u: BTreeMap::new(),
        alpha: BTreeMap::new(),
        lambda: BTreeMap::new(),
        rho: BTreeMap::new(),
    };
    for x in objects {
        for y in objects {
            p.hom
                .insert((x.to_string(), y.to_string()), hom_w(x, y));
        }
    }
    for x in objects {
        for y in objects {
            for z in objects {
                let s = Slice::gen1(e(), &format!("m.{prefix}.{x}.{y}.{z}"), vec![], e());
                p.m.insert(
                    (x.to_string(), y.to_string(), z.to_string()),
                    OneCell::single(&sig, s)?,
                );
            }
        }
    }
    for x in objects {
        let s = Slice::gen1(e(), &format!("u.{prefix}.{x}"), vec![], e());
        p.u.insert(x.to_string(), OneCell::single(&sig, s)?);
    }
    for w in objects {
        for x in objects {
            for y in objects {
                for z in objects {
                    let (dom, _) = alpha_boundary(&sig, &p, w, x, y, z)?;
                    let mv = Move::new(
                        0,
                        MoveCore::Gen2 {
                            name: format!("alpha.{prefix}.{w}.{x}.{y}.{z}"),
                            args: vec![],
                            fwd: true,
                        },
                    );
                    p.alpha.insert(
                        (w.to_string(), x.to_string(), y.to_string(), z.to_string()),
                        TwoCell {
                            source: dom,
                            moves: vec![mv],
                        },
                    );
                }
            }
        }
    }
    for x in objects {
        for y in objects {
            let la = TwoCell {
                source: lambda_dom(&sig, &p, x, y)?,
                moves: vec![Move::new(
                    0,
                    MoveCore::Gen2 {
                        name: format!("lambda.{prefix}.{x}.{y}"),
                        args: vec![],
                        fwd: true,
                    },
                )],
            };
            p.lambda.insert((x.to_string(), y.to_string()), la);
            let rh = TwoCell {
                source: rho_dom(&sig, &p, x, y)?,
                moves: vec![Move::new(
                    0,
                    MoveCore::Gen2 {
                        name: format!("rho.{prefix}.{x}.{y}"),
                        args: vec![],
                        fwd: true,
                    },
                )],
            };
            p.rho.insert((x.to_string(), y.to_string()), rh);
        }
    }
    p.validate(&sig)?;
    // register IC/AC as closed schemas at every tuple
    let mut sig2 = sig.clone();
    for a in objects {
        for b in objects {
            for c in objects {
                let (lhs, rhs) = ic_sides(&sig, &p, a, b, c)?;
                sig2.add_schema(AxiomSchema::closed(
                    &format!("ic.{prefix}.{a}.{b}.{c}"),
                    lhs,
                    rhs,
                ));
            }
        }
    }
    for v in objects {
        for w in objects {
            for x in objects {
                for y in objects {
                    for z in objects {
                        let (lhs, rhs) = ac_sides(&sig, &p, v, w, x, y, z)?;
                        sig2.add_schema(AxiomSchema::closed(
                            &format!("ac.{prefix}.{v}.{w}.{x}.{y}.{z}"),
                            lhs,
                            rhs,
                        ));
                    }
                }
            }
        }
    }
    p.sig = sig2;
    Ok(p)
}

/// The unit V-bicategory: one object, hom 𝟙, identity structure.
pub fn unit_vbicat() -> VBicatPresentation {
    let sig = Signature::new();
    let star = "*".to_string();
    let mut p = VBicatPresentation {
        name: "I".into(),
        objects: vec![star.clone()],
        sig,
        hom: BTreeMap::new(),
        m: BTreeMap::new(),
        u: BTreeMap::new(),
        alpha: BTreeMap::new(),
        lambda: BTreeMap::new(),
        rho: BTreeMap::new(),
    };
    p.hom.insert((star.clone(), star.clone()), e());
    p.m.insert(
        (star.clone(), star.clone(), star.clone()),
        id1(e()),
    );
    p.u.insert(star.clone(), id1(e()));
    p.alpha.insert(
        (star.clone(), star.clone(), star.clone(), star.clone()),
        id2(id1(e())),
    );
    p.lambda.insert((star.clone(), star.clone()), id2(id1(e())));
    p.rho.insert((star.clone(), star.clone()), id2(id1(e())));
    p
}

// ---------------------------------------------------------------------------
// derived cells of a presentation: f^*, f_*, u_f, m_f, and the m-crossings

/// `f_*` (side = false) or `f^*` (side = true) for `f : 𝟙 -> hom(x,y)`,
/// with spectator object `z`:
/// `f_* : hom(z,x) -> hom(z,y)` and `f^* : hom(y,z) -> hom(x,z)`.
pub fn star_cells(
    sig: &Signature,
    p: &VBicatPresentation,
    f: &OneCell,
    x: &str,
    y: &str,
    upper: bool,
    z: &str,
) -> DResult<OneCell> {
    let (fd, fc) = f.boundary(sig)?;
    if !fd.is_empty() || fc != p.hom(x, y)? {
        return Err(DiagramError::BoundaryMismatch {
            expected: p.hom(x, y)?,
            found: if fd.is_empty() { fc } else { fd },
        });
    }
    if upper {
        // m ∘ (1 ⊗ f) on hom(y,z)
        let ins = f.whisker(&p.hom(y, z)?, &e());
        compose1(sig, &ins, &p.m(x, y, z)?)
    } else {
        // m ∘ (f ⊗ 1) on hom(z,x)
        let ins = f.whisker(&e(), &p.hom(z, x)?);
        compose1(sig, &ins, &p.m(z, x, y)?)
    }
}

/// `u_f : f^* ∘ u_y ⇒ f_* ∘ u_x`, built from λ and ρ around the f wire.
pub fn u_f_cell(
    sig: &Signature,
    p: &VBicatPresentation,
    f: &OneCell,
    x: &str,
    y: &str,
) -> DResult<TwoCell> {
    let hxy = p.hom(x, y)?;
    let uy = p.u(y)?;
    let ux = p.u(x)?;
    let f_ins_r = f.whisker(&p.hom(y, y)?, &e());
    let dom = compose1(sig, &uy, &compose1(sig, &f_ins_r, &p.m(x, y, y)?)?)?;
    let mut moves = Vec::new();
    let mut st = dom.clone();
    // interchange the u_y block below the f block
    let (mv, s2) = sigma_block(sig, &st, 0, uy.slices.len(), f.slices.len())?;
    moves.extend(mv);
    st = s2;
    // lambda(x,y) after the f prefix
    let lam = whisker2(
        sig,
        &e(),
        &p.lambda(x, y)?,
        &e(),
        &head_cell(&st, f.slices.len()),
        &id1(hxy.clone()),
    )?;
    moves.extend(lam.moves.clone());
    st = crate::rewrite::seq_cell(sig, dom.clone(), moves.clone())?.target(sig)?;
    // rho(x,y) backwards after the f prefix
    let rho_inv = p.rho(x, y)?.inverse(sig)?;
    let rh = whisker2(
        sig,
        &e(),
        &rho_inv,
        &e(),
        &head_cell(&st, f.slices.len()),
        &id1(hxy.clone()),
    )?;
    moves.extend(rh.moves.clone());
    st = crate::rewrite::seq_cell(sig, dom.clone(), moves.clone())?.target(sig)?;
    // interchange f block below the u_x block
    let (mv2, _) = sigma_block(sig, &st, 0, f.slices.len(), ux.slices.len())?;
    moves.extend(mv2);
    crate::rewrite::seq_cell(sig, dom, moves)
}

/// `m_f : m ∘ (1 ⊗ f_*) ⇒ m ∘ (f^* ⊗ 1)`, one α around the f wire.
pub fn m_f_cell(
    sig: &Signature,
    p: &VBicatPresentation,
    f: &OneCell,
    w: &str,
    x: &str,
    y: &str,
    z: &str,
) -> DResult<TwoCell> {
    // dom: (hom(y,z) ⊗ f ⊗ hom(w,x)) ; (hom(y,z) ⊗ m(w,x,y)) ; m(w,y,z)
    let hyz = p.hom(y, z)?;
    let hwx = p.hom(w, x)?;
    let f_ins = f.whisker(&hyz, &hwx);
    let m_in = p.m(w, x, y)?.whisker(&hyz, &e());
    let dom = compose1(sig, &f_ins, &compose1(sig, &m_in, &p.m(w, y, z)?)?)?;
    let alpha_inv = p.alpha(w, x, y, z)?.inverse(sig)?;
    let wk = whisker2(
        sig,
        &e(),
        &alpha_inv,
        &e(),
        &head_cell(&dom, f.slices.len()),
        &id1(p.hom(w, z)?),
    )?;
    crate::rewrite::seq_cell(sig, dom, wk.moves)
}

/// Left m-crossing: `(1 ⊗ f^*) ; m ⇒ m ; f^*`, one α around the f wire.
pub fn cross_l_cell(
    sig: &Signature,
    p: &VBicatPresentation,
    f: &OneCell,
    x: &str,
    y: &str,
    c: &str,
    d: &str,
) -> DResult<TwoCell> {
    // dom: (hom(c,d)·hom(y,c) ⊗ f) ; (hom(c,d) ⊗ m(x,y,c)) ; m(x,c,d)
    let hcd = p.hom(c, d)?;
    let hyc = p.hom(y, c)?;
    let f_ins = f.whisker(&hcd.concat(&hyc), &e());
    let m_in = p.m(x, y, c)?.whisker(&hcd, &e());
    let dom = compose1(sig, &f_ins, &compose1(sig, &m_in, &p.m(x, c, d)?)?)?;
    let alpha_inv = p.alpha(x, y, c, d)?.inverse(sig)?;
    let wk = whisker2(
        sig,
        &e(),
        &alpha_inv,
        &e(),
        &head_cell(&dom, f.slices.len()),
        &id1(p.hom(x, d)?),
    )?;
    crate::rewrite::seq_cell(sig, dom, wk.moves)
}

/// Right m-crossing: `(f_* ⊗ 1) ; m ⇒ m ; f_*`, one α around the f wire.
pub fn cross_r_cell(
    sig: &Signature,
    p: &VBicatPresentation,
    f: &OneCell,
    x: &str,
    y: &str,
    w: &str,
    v: &str,
) -> DResult<TwoCell> {
    // dom: (f ⊗ hom(w,x)·hom(v,w)) ; (m(w,x,y) ⊗ hom(v,w)) ; m(v,w,y)
    let hwx = p.hom(w, x)?;
    let hvw = p.hom(v, w)?;
    let f_ins = f.whisker(&e(), &hwx.concat(&hvw));
    let m_in = p.m(w, x, y)?.whisker(&e(), &hvw);
    let dom = compose1(sig, &f_ins, &compose1(sig, &m_in, &p.m(v, w, y)?)?)?;
    let alpha = p.alpha(v, w, x, y)?;
    let wk = whisker2(
        sig,
        &e(),
        &alpha,
        &e(),
        &head_cell(&dom, f.slices.len()),
        &id1(p.hom(v, y)?),
    )?;
    crate::rewrite::seq_cell(sig, dom, wk.moves)
}

/// All four derived pseudonaturality cells for `f : 𝟙 -> hom(x,y)`.
pub fn derived_unit_mult_cells(
    sig: &Signature,
    p: &VBicatPresentation,
    f: &OneCell,
    x: &str,
    y: &str,
) -> DResult<(TwoCell, TwoCell, TwoCell, TwoCell)> {
    let obj = p
        .objects
        .first()
        .ok_or_else(|| DiagramError::Other("empty presentation".into()))?
        .clone();
    let u = u_f_cell(sig, p, f, x, y)?;
    let m = m_f_cell(sig, p, f, &obj, &obj, x, y)?;
    let cl = cross_l_cell(sig, p, f, x, y, &obj, &obj)?;
    let cr = cross_r_cell(sig, p, f, x, y, &obj, &obj)?;
    Ok((u, m, cl, cr))
}

// ---------------------------------------------------------------------------
// V-pseudofunctors

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VPseudofunctorData {
    pub name: String,
    pub objects: BTreeMap<Ident, Ident>,
    pub hom_map: BTreeMap<(Ident, Ident), OneCell>,
    /// φ(a,b,c): (F ⊗ F) ; m_D ⇒ m_C ; F
    pub functor_cell: BTreeMap<(Ident, Ident, Ident), TwoCell>,
    /// φ⁰(a): u_D ⇒ u_C ; F
    pub unit_cell: BTreeMap<Ident, TwoCell>,
}

impl VPseudofunctorData {
    pub fn ob(&self, a: &str) -> DResult<Ident> {
        self.objects
            .get(a)
            .cloned()
            .ok_or_else(|| DiagramError::Other(format!("{}: no object {a}", self.name)))
    }

    pub fn hom_map(&self, a: &str, b: &str) -> DResult<OneCell> {
        self.hom_map
            .get(&(a.to_string(), b.to_string()))
            .cloned()
            .ok_or_else(|| DiagramError::Other(format!("{}: no hom map ({a},{b})", self.name)))
    }

    pub fn functor_cell(&self, a: &str, b: &str, c: &str) -> DResult<TwoCell> {
        self.functor_cell
            .get(&(a.to_string(), b.to_string(), c.to_string()))
            .cloned()
            .ok_or_else(|| DiagramError::Other(format!("{}: no functor cell", self.name)))
    }

    pub fn unit_cell(&self, a: &str) -> DResult<TwoCell> {
        self.unit_cell
            .get(a)
            .cloned()
            .ok_or_else(|| DiagramError::Other(format!("{}: no unit cell {a}", self.name)))
    }

    /// Boundary conditions per the definition of a V-pseudofunctor.
    pub fn validate(
        &self,
        sig: &Signature,
        c: &VBicatPresentation,
        d: &VBicatPresentation,
    ) -> DResult<()> {
        for (a, b) in self.hom_map.keys() {
            let f = self.hom_map(a, b)?;
            let (fd, fc) = f.boundary(sig)?;
            if fd != c.hom(a, b)? || fc != d.hom(&self.ob(a)?, &self.ob(b)?)? {
                return Err(DiagramError::Other(format!(
                    "{}: hom map ({a},{b}) has wrong boundary",
                    self.name
                )));
            }
        }
        for ((a, b, cc), phi) in &self.functor_cell {
            let (want_l, want_r) = functor_cell_boundary(sig, self, c, d, a, b, cc)?;
            let (pd, pc) = phi.boundary_cells(sig)?;
            if pd != want_l || pc != want_r {
                return Err(DiagramError::Other(format!(
                    "{}: functor cell ({a},{b},{cc}) has wrong boundary",
                    self.name
                )));
            }
        }
        for (a, phi0) in &self.unit_cell {
            let (want_l, want_r) = unit_cell_boundary(sig, self, c, d, a)?;
            let (pd, pc) = phi0.boundary_cells(sig)?;
            if pd != want_l || pc != want_r {
                return Err(DiagramError::Other(format!(
                    "{}: unit cell ({a}) has wrong boundary",
                    self.name
                )));
            }
        }
        Ok(())
    }
}

pub fn functor_cell_boundary(
    sig: &Signature,
    f: &VPseudofunctorData,
    c: &VBicatPresentation,
    d: &VBicatPresentation,
    a: &str,
    b: &str,
    cc: &str,
) -> DResult<(OneCell, OneCell)> {
    let (fa, fb, fc) = (f.ob(a)?, f.ob(b)?, f.ob(cc)?);
    let ff = crate::diagram::tensor1(sig, &f.hom_map(b, cc)?, &f.hom_map(a, b)?)?;
    let lhs = compose1(sig, &ff, &d.m(&fa, &fb, &fc)?)?;
    let rhs = compose1(sig, &c.m(a, b, cc)?, &f.hom_map(a, cc)?)?;
    Ok((lhs, rhs))
}

pub fn unit_cell_boundary(
    sig: &Signature,
    f: &VPseudofunctorData,
    c: &VBicatPresentation,
    d: &VBicatPresentation,
    a: &str,
) -> DResult<(OneCell, OneCell)> {
    let fa = f.ob(a)?;
    let lhs = d.u(&fa)?;
    let rhs = compose1(sig, &c.u(a)?, &f.hom_map(a, a)?)?;
    Ok((lhs, rhs))
}

/// The identity pseudofunctor of a presentation.
pub fn identity_pseudofunctor(
    sig: &Signature,
    p: &VBicatPresentation,
) -> DResult<VPseudofunctorData> {
    let mut f = VPseudofunctorData {
        name: format!("id.{}", p.name),
        objects: BTreeMap::new(),
        hom_map: BTreeMap::new(),
        functor_cell: BTreeMap::new(),
        unit_cell: BTreeMap::new(),
    };
    for a in &p.objects {
        f.objects.insert(a.clone(), a.clone());
    }
    for a in &p.objects {
        for b in &p.objects {
            f.hom_map
                .insert((a.clone(), b.clone()), id1(p.hom(a, b)?));
        }
    }
    for a in &p.objects {
        for b in &p.objects {
            for c in &p.objects {
                let m = p.m(a, b, c)?;
                f.functor_cell
                    .insert((a.clone(), b.clone(), c.clone()), id2(m));
            }
        }
    }
    for a in &p.objects {
        f.unit_cell.insert(a.clone(), id2(p.u(a)?));
    }
    let _ = sig;
    Ok(f)
}

/// Pseudofunctor obligations: the α-compatibility hexagon per ordered
/// 4-tuple and the two unit axioms per ordered pair.
pub fn obligations_pseudofunctor(
    sig: &Signature,
    f: &VPseudofunctorData,
    c: &VBicatPresentation,
    d: &VBicatPresentation,
) -> DResult<Vec<Obligation>> {
    let mut out = Vec::new();
    for a in &c.objects {
        for b in &c.objects {
            for cc in &c.objects {
                for dd in &c.objects {
                    let (lhs, rhs) = psfun_ax1_sides(sig, f, c, d, a, b, cc, dd)?;
                    out.push(Obligation::equation(
                        format!("psfun_ax1.{}.{a}.{b}.{cc}.{dd}", f.name),
                        "pseudofunctor composition coherence",
                        lhs,
                        rhs,
                    ));
                }
            }
        }
    }
    for a in &c.objects {
        for b in &c.objects {
            let (l2, r2) = psfun_ax2_sides(sig, f, c, d, a, b)?;
            out.push(Obligation::equation(
                format!("psfun_ax2.{}.{a}.{b}", f.name),
                "pseudofunctor left unit coherence",
                l2,
                r2,
            ));
            let (l3, r3) = psfun_ax3_sides(sig, f, c, d, a, b)?;
            out.push(Obligation::equation(
                format!("psfun_ax3.{}.{a}.{b}", f.name),
                "pseudofunctor right unit coherence",
                l3,
                r3,
            ));
        }
    }
    Ok(out)
}

/// Hexagon sides for ax1 on hom(c,d)·hom(b,c)·hom(a,b).
pub fn psfun_ax1_sides(
    sig: &Signature,
    f: &VPseudofunctorData,
    c: &VBicatPresentation,
    d: &VBicatPresentation,
    a: &str,
    b: &str,
    cc: &str,
    dd: &str,
) -> DResult<(TwoCell, TwoCell)> {
    let (fa, fb, fc, fd) = (f.ob(a)?, f.ob(b)?, f.ob(cc)?, f.ob(dd)?);
    let hab = c.hom(a, b)?;
    let f_cd = f.hom_map(cc, dd)?;
    let f_bc = f.hom_map(b, cc)?;
    let f_ab = f.hom_map(a, b)?;
    // source: F⊗F⊗F ; m_D⊗1 ; m_D
    let fff = crate::diagram::tensor1(
        sig,
        &crate::diagram::tensor1(sig, &f_cd, &f_bc)?,
        &f_ab,
    )?;
    let dm1 = d.m(&fb, &fc, &fd)?.whisker(&e(), &d.hom(&fa, &fb)?);
    let dm2 = d.m(&fa, &fb, &fd)?;
    let dom = compose1(sig, &fff, &compose1(sig, &dm1, &dm2)?)?;
    let word = dom.dom.clone();
    let n_cd = f_cd.slices.len();
    let n_bc = f_bc.slices.len();
    let n_ab = f_ab.slices.len();

    // side L: Σ (push F_ab past m_D⊗1), φ(b,c,d)⊗hom(a,b), φ(a,b,d), α_C
    let mut moves = Vec::new();
    let mut st = dom.clone();
    let (mv, s) = sigma_block(
        sig,
        &st,
        n_cd + n_bc,
        n_ab,
        dm1.slices.len(),
    )?;
    moves.extend(mv);
    st = s;
    let phi_bcd = f.functor_cell(b, cc, dd)?;
    let w1 = whisker2(
        sig,
        &e(),
        &phi_bcd,
        &hab,
        &id1(word.clone()),
        &tail_cell(sig, &st, phi_bcd.source.slices.len())?,
    )?;
    moves.extend(w1.moves.clone());
    st = crate::rewrite::seq_cell(sig, dom.clone(), moves.clone())?.target(sig)?;
    let phi_abd = f.functor_cell(a, b, dd)?;
    let k = c.m(b, cc, dd)?.slices.len();
    let w2 = whisker2(
        sig,
        &e(),
        &phi_abd,
        &e(),
        &head_cell(&st, k),
        &id1(d.hom(&fa, &fd)?),
    )?;
    moves.extend(w2.moves.clone());
    st = crate::rewrite::seq_cell(sig, dom.clone(), moves.clone())?.target(sig)?;
    let alpha_c = c.alpha(a, b, cc, dd)?;
    let w3 = whisker2(
        sig,
        &e(),
        &alpha_c,
        &e(),
        &id1(word.clone()),
        &tail_cell(sig, &st, alpha_c.source.slices.len())?,
    )?;
    moves.extend(w3.moves);
    let lhs = crate::rewrite::seq_cell(sig, dom.clone(), moves)?;

    // side R: α_D, hom(Fc,Fd)⊗φ(a,b,c), Σ, φ(a,c,d)
    let mut moves = Vec::new();
    let mut st = dom.clone();
    let alpha_d = d.alpha(&fa, &fb, &fc, &fd)?;
    let pre = head_cell(&st, n_cd + n_bc + n_ab);
    let w1 = whisker2(sig, &e(), &alpha_d, &e(), &pre, &id1(d.hom(&fa, &fd)?))?;
    moves.extend(w1.moves.clone());
    st = crate::rewrite::seq_cell(sig, dom.clone(), moves.clone())?.target(sig)?;
    let phi_abc = f.functor_cell(a, b, cc)?;
    let hfc_fd = d.hom(&fc, &fd)?;
    let w2 = whisker2(
        sig,
        &hfc_fd,
        &phi_abc,
        &e(),
        &head_cell(&st, n_cd),
        &tail_cell(sig, &st, n_cd + phi_abc.source.slices.len())?,
    )?;
    moves.extend(w2.moves.clone());
    st = crate::rewrite::seq_cell(sig, dom.clone(), moves.clone())?.target(sig)?;
    let k_c = c.m(a, b, cc)?.slices.len();
    let (mv, s) = sigma_block(sig, &st, 0, n_cd, k_c)?;
    moves.extend(mv);
    st = s;
    let phi_acd = f.functor_cell(a, cc, dd)?;
    let w3 = whisker2(
        sig,
        &e(),
        &phi_acd,
        &e(),
        &head_cell(&st, k_c),
        &id1(d.hom(&fa, &fd)?),
    )?;
    moves.extend(w3.moves);
    let rhs = crate::rewrite::seq_cell(sig, dom, moves)?;
    Ok((lhs, rhs))
}

/// Left unit axiom sides on hom(a,b).
pub fn psfun_ax2_sides(
    sig: &Signature,
    f: &VPseudofunctorData,
    c: &VBicatPresentation,
    d: &VBicatPresentation,
    a: &str,
    b: &str,
) -> DResult<(TwoCell, TwoCell)> {
    let (fa, fb) = (f.ob(a)?, f.ob(b)?);
    let f_ab = f.hom_map(a, b)?;
    let u_ins = d.u(&fb)?.whisker(&e(), &d.hom(&fa, &fb)?);
    let dom = compose1(
        sig,
        &f_ab,
        &compose1(sig, &u_ins, &d.m(&fa, &fb, &fb)?)?,
    )?;
    let word = dom.dom.clone();
    // side L: φ⁰(b)⊗1, Σ, Σ-block, φ(a,b,b), λ_C
    let mut moves = Vec::new();
    let phi0 = f.unit_cell(b)?;
    let w1 = whisker2(
        sig,
        &e(),
        &phi0,
        &d.hom(&fa, &fb)?,
        &f_ab,
        &d.m(&fa, &fb, &fb)?,
    )?;
    moves.extend(w1.moves.clone());
    let mut st = crate::rewrite::seq_cell(sig, dom.clone(), moves.clone())?.target(sig)?;
    // interchange F_ab below u_b ; F_bb
    let (mv, s) = sigma_block(
        sig,
        &st,
        0,
        f_ab.slices.len(),
        c.u(b)?.slices.len() + f.hom_map(b, b)?.slices.len(),
    )?;
    moves.extend(mv);
    st = s;
    let phi = f.functor_cell(a, b, b)?;
    let k = c.u(b)?.slices.len();
    let w2 = whisker2(
        sig,
        &e(),
        &phi,
        &e(),
        &head_cell(&st, k),
        &id1(d.hom(&fa, &fb)?),
    )?;
    moves.extend(w2.moves.clone());
    st = crate::rewrite::seq_cell(sig, dom.clone(), moves.clone())?.target(sig)?;
    let lam = c.lambda(a, b)?;
    let w3 = whisker2(
        sig,
        &e(),
        &lam,
        &e(),
        &id1(word.clone()),
        &tail_cell(sig, &st, lam.source.slices.len())?,
    )?;
    moves.extend(w3.moves);
    let lhs = crate::rewrite::seq_cell(sig, dom.clone(), moves)?;
    // side R: λ_D after F
    let lam_d = d.lambda(&fa, &fb)?;
    let w = whisker2(
        sig,
        &e(),
        &lam_d,
        &e(),
        &f_ab,
        &id1(d.hom(&fa, &fb)?),
    )?;
    let rhs = crate::rewrite::seq_cell(sig, dom, w.moves)?;
    Ok((lhs, rhs))
}

/// Right unit axiom sides on hom(a,b).
pub fn psfun_ax3_sides(
    sig: &Signature,
    f: &VPseudofunctorData,
    c: &VBicatPresentation,
    d: &VBicatPresentation,
    a: &str,
    b: &str,
) -> DResult<(TwoCell, TwoCell)> {
    let (fa, fb) = (f.ob(a)?, f.ob(b)?);
    let f_ab = f.hom_map(a, b)?;
    let u_ins = d.u(&fa)?.whisker(&d.hom(&fa, &fb)?, &e());
    let dom = compose1(
        sig,
        &f_ab,
        &compose1(sig, &u_ins, &d.m(&fa, &fa, &fb)?)?,
    )?;
    let word = dom.dom.clone();
    let mut moves = Vec::new();
    let phi0 = f.unit_cell(a)?;
    let w1 = whisker2(
        sig,
        &d.hom(&fa, &fb)?,
        &phi0,
        &e(),
        &f_ab,
        &d.m(&fa, &fa, &fb)?,
    )?;
    moves.extend(w1.moves.clone());
    let mut st = crate::rewrite::seq_cell(sig, dom.clone(), moves.clone())?.target(sig)?;
    // F_ab and the inserted u_a ; F_aa act on disjoint parts already in
    // the right order (F first), so only the hom letters interleave:
    // exchange F_ab below u_a ; F_aa
    let (mv, s) = sigma_block(
        sig,
        &st,
        0,
        f_ab.slices.len(),
        c.u(a)?.slices.len() + f.hom_map(a, a)?.slices.len(),
    )?;
    moves.extend(mv);
    st = s;
    let phi = f.functor_cell(a, a, b)?;
    let k = c.u(a)?.slices.len();
    let w2 = whisker2(
        sig,
        &e(),
        &phi,
        &e(),
        &head_cell(&st, k),
        &id1(d.hom(&fa, &fb)?),
    )?;
    moves.extend(w2.moves.clone());
    st = crate::rewrite::seq_cell(sig, dom.clone(), moves.clone())?.target(sig)?;
    let rho = c.rho(a, b)?;
    let w3 = whisker2(
        sig,
        &e(),
        &rho,
        &e(),
        &id1(word.clone()),
        &tail_cell(sig, &st, rho.source.slices.len())?,
    )?;
    moves.extend(w3.moves);
    let lhs = crate::rewrite::seq_cell(sig, dom.clone(), moves)?;
    let rho_d = d.rho(&fa, &fb)?;
    let w = whisker2(sig, &e(), &rho_d, &e(), &f_ab, &id1(d.hom(&fa, &fb)?))?;
    let rhs = crate::rewrite::seq_cell(sig, dom, w.moves)?;
    Ok((lhs, rhs))
}
