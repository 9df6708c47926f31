//! Mechanical derivation of enriched constructions from input
//! presentations, paired with their obligations and bundled proof scripts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diagram::{
    compose1, id1, Move, MoveCore, OneCell, Slice, TwoCell,
};
use crate::enriched::{
    obligations_vbicat, tail_cell, Obligation, VBicatPresentation, VPseudofunctorData,
};
use crate::diagram::{DResult, DiagramError};
use crate::rewrite::ProofScript;
use crate::schemas::{beta_slice, cross_core, gen2_move, CellBuilder};
use crate::signature::{ObjectWord, Signature};

fn e() -> ObjectWord {
    ObjectWord::empty()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum DerivedResult {
    Bicat(VBicatPresentation),
    Pseudofunctor(VPseudofunctorData),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DerivedPresentation {
    pub result: DerivedResult,
    pub obligations: Vec<Obligation>,
    /// obligation name -> bundled script (where the paper proves it)
    pub bundled: BTreeMap<String, ProofScript>,
    /// obligations the paper leaves open, by name
    pub open: Vec<String>,
}

impl DerivedPresentation {
    pub fn bicat(&self) -> DResult<&VBicatPresentation> {
        match &self.result {
            DerivedResult::Bicat(p) => Ok(p),
            _ => Err(DiagramError::Other("expected a bicategory result".into())),
        }
    }
}

fn require_lib(sig: &Signature, lib: &str) -> DResult<()> {
    if !sig.uses.iter().any(|u| u == lib) {
        return Err(DiagramError::Other(format!(
            "construction requires the `{lib}` library"
        )));
    }
    Ok(())
}

/// The opposite multiplication `m̲ = m ∘ β` as a 1-cell.
pub fn op_m(
    sig: &Signature,
    p: &VBicatPresentation,
    x: &str,
    y: &str,
    z: &str,
) -> DResult<OneCell> {
    let hzy = p.hom(z, y)?;
    let hyx = p.hom(y, x)?;
    let mut slices = Vec::new();
    if let Some(b) = beta_slice(&hzy, &hyx) {
        slices.push(b);
    }
    let beta_cell = OneCell {
        dom: hzy.concat(&hyx),
        slices,
    };
    compose1(sig, &beta_cell, &p.m(z, y, x)?)
}

/// The opposite associator: the composite of a crossing of m, S, α⁻¹, R⁻¹,
/// and two β-crossings, as displayed.
pub fn op_alpha(
    sig: &Signature,
    p: &VBicatPresentation,
    w: &str,
    x: &str,
    y: &str,
    z: &str,
) -> DResult<TwoCell> {
    let bx = p.hom(z, y)?; // X
    let by = p.hom(y, x)?; // Y
    let bz = p.hom(x, w)?; // Z
    let m_zyx = p.m(z, y, x)?;
    let m_zxw = p.m(z, x, w)?;
    let m_yxw = p.m(y, x, w)?;
    let hzx = p.hom(z, x)?;
    // dom: m̲(w,x,z) ∘ (m̲(x,y,z) ⊗ 1)
    let dom = compose1(
        sig,
        &op_m(sig, p, x, y, z)?.whisker(&e(), &bz),
        &op_m(sig, p, w, x, z)?,
    )?;
    let mut b = CellBuilder::new(sig, dom)?;
    // slide m(z,y,x) into the second β
    b.push(Move::new(
        1,
        cross_core("beta", vec![by.concat(&bx), bz.clone()], 0, m_zyx.clone(), true),
    ))?;
    // S splits β[Y·X, Z]
    b.push(gen2_move(
        1,
        "S",
        vec![by.clone(), bx.clone(), bz.clone()],
        true,
    ))?;
    // α(z,y,x,w) backwards on the m-tail
    let alpha_inv = p.alpha(z, y, x, w)?.inverse(sig)?;
    b.splice(&alpha_inv, &e(), &e(), 3)?;
    // R⁻¹ joins β[X,Y]⊗Z ; Y⊗β[X,Z]
    b.push(gen2_move(
        0,
        "R",
        vec![bx.clone(), by.clone(), bz.clone()],
        false,
    ))?;
    // slide β[Y,Z] back across β[X,-]
    let byz_cell = OneCell {
        dom: by.concat(&bz),
        slices: beta_slice(&by, &bz).into_iter().collect(),
    };
    b.push(Move::new(
        0,
        cross_core(
            "beta",
            vec![bx.clone(), by.concat(&bz)],
            1,
            byz_cell,
            false,
        ),
    ))?;
    // slide m(y,x,w) back across β[X,-]
    b.push(Move::new(
        1,
        cross_core(
            "beta",
            vec![bx.clone(), bz.concat(&by)],
            1,
            m_yxw.clone(),
            false,
        ),
    ))?;
    let out = b.finish();
    // sanity: target is m̲(w,y,z) ∘ (1 ⊗ m̲(w,x,y))
    let want = compose1(
        sig,
        &op_m(sig, p, w, x, y)?.whisker(&bx, &e()),
        &op_m(sig, p, w, y, z)?,
    )?;
    let got = out.target(sig)?;
    if got != want {
        return Err(DiagramError::Other(format!(
            "op_alpha does not land on 1⊗m̲ ; m̲: {:?} vs {:?}",
            got, want
        )));
    }
    let _ = (m_zxw, hzx);
    Ok(out)
}

/// λ̲ = ρ after the (s1)-identity crossing of the unit.
pub fn op_lambda(
    sig: &Signature,
    p: &VBicatPresentation,
    x: &str,
    y: &str,
) -> DResult<TwoCell> {
    let q = p.hom(y, x)?;
    let uy = p.u(y)?;
    let dom = compose1(
        sig,
        &uy.whisker(&e(), &q),
        &op_m(sig, p, x, y, y)?,
    )?;
    let mut b = CellBuilder::new(sig, dom)?;
    b.push(Move::new(
        0,
        cross_core("beta", vec![e(), q.clone()], 0, uy.clone(), true),
    ))?;
    let rho = p.rho(y, x)?;
    b.splice(&rho, &e(), &e(), 0)?;
    Ok(b.finish())
}

/// ρ̲ = λ after the (s1)-identity crossing of the unit.
pub fn op_rho(sig: &Signature, p: &VBicatPresentation, x: &str, y: &str) -> DResult<TwoCell> {
    let q = p.hom(y, x)?;
    let ux = p.u(x)?;
    let dom = compose1(
        sig,
        &ux.whisker(&q, &e()),
        &op_m(sig, p, x, x, y)?,
    )?;
    let mut b = CellBuilder::new(sig, dom)?;
    b.push(Move::new(
        0,
        cross_core("beta", vec![q.clone(), e()], 1, ux.clone(), true),
    ))?;
    let lam = p.lambda(y, x)?;
    b.splice(&lam, &e(), &e(), 0)?;
    Ok(b.finish())
}

/// The opposite V-bicategory, with IC/AC obligations and bundled scripts.
pub fn opposite(sig: &Signature, p: &VBicatPresentation) -> DResult<DerivedPresentation> {
    require_lib(sig, "braided_semistrict")?;
    let mut q = VBicatPresentation {
        name: format!("{}op", p.name),
        objects: p.objects.clone(),
        sig: sig.clone(),
        hom: BTreeMap::new(),
        m: BTreeMap::new(),
        u: BTreeMap::new(),
        alpha: BTreeMap::new(),
        lambda: BTreeMap::new(),
        rho: BTreeMap::new(),
    };
    for a in &p.objects {
        for b in &p.objects {
            q.hom
                .insert((a.clone(), b.clone()), p.hom(b, a)?);
        }
    }
    for x in &p.objects {
        for y in &p.objects {
            for z in &p.objects {
                q.m.insert(
                    (x.clone(), y.clone(), z.clone()),
                    op_m(sig, p, x, y, z)?,
                );
            }
        }
    }
    for x in &p.objects {
        q.u.insert(x.clone(), p.u(x)?);
    }
    for w in &p.objects {
        for x in &p.objects {
            for y in &p.objects {
                for z in &p.objects {
                    q.alpha.insert(
                        (w.clone(), x.clone(), y.clone(), z.clone()),
                        op_alpha(sig, p, w, x, y, z)?,
                    );
                }
            }
        }
    }
    for x in &p.objects {
        for y in &p.objects {
            q.lambda
                .insert((x.clone(), y.clone()), op_lambda(sig, p, x, y)?);
            q.rho
                .insert((x.clone(), y.clone()), op_rho(sig, p, x, y)?);
        }
    }
    q.validate(sig)?;
    let obligations = obligations_vbicat(sig, &q)?;
    let mut bundled = BTreeMap::new();
    for a in &p.objects {
        for b in &p.objects {
            let name = format!("ic.{}.{a}.{b}", q.name);
            let script = crate::scripts::cop_ic_script(sig, p, &q, a, b, b, &name)?;
            bundled.insert(name, script);
        }
    }
    for a in &p.objects {
        for b in &p.objects {
            for c in &p.objects {
                for d in &p.objects {
                    let name = format!("ac.{}.{a}.{b}.{c}.{d}", q.name);
                    if let Ok(script) =
                        crate::scripts::cop_ac_script(sig, p, &q, a, b, c, d, d, &name)
                    {
                        bundled.insert(name, script);
                    }
                }
            }
        }
    }
    Ok(DerivedPresentation {
        result: DerivedResult::Bicat(q),
        obligations,
        bundled,
        open: Vec::new(),
    })
}

/// `(C^op)^op` multiplication for comparison in tests: `m ∘ β ∘ β`.
pub fn op_op_m(
    sig: &Signature,
    p: &VBicatPresentation,
    x: &str,
    y: &str,
    z: &str,
) -> DResult<OneCell> {
    let op = opposite(sig, p)?;
    let q = op.bicat()?;
    op_m(sig, q, x, y, z)
}

/// A formal braided environment for a vbicat presentation: the presentation
/// signature merged with braided_semistrict (and optionally closed).
pub fn braided_env(p: &VBicatPresentation, closed: bool) -> DResult<Signature> {
    let mut sig = crate::libs::std_library("braided_semistrict")
        .map_err(DiagramError::Sig)?;
    if closed {
        let c = crate::libs::std_library("closed_structure").map_err(DiagramError::Sig)?;
        sig = sig.merge(&c).map_err(DiagramError::Sig)?;
    }
    sig.merge(&p.sig).map_err(DiagramError::Sig)
}
