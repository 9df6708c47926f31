//! Generator declarations: objects, 1-generator and 2-generator families,
//! and the signature that collects them together with its axiom schemas.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{OneCell, Slice, SliceCore};
use crate::rewrite::AxiomSchema;

pub type Ident = String;

/// A letter of an object word: a declared atom or an internal hom of words.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ObjectExpr {
    Atom(Ident),
    IHom(ObjectWord, ObjectWord),
}

/// A word in the free monoid on object expressions. The empty word is the
/// monoidal unit; concatenation is strictly associative and unital.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ObjectWord(pub Vec<ObjectExpr>);

impl ObjectWord {
    pub fn empty() -> Self {
        ObjectWord(Vec::new())
    }

    pub fn atom(name: &str) -> Self {
        ObjectWord(vec![ObjectExpr::Atom(name.to_string())])
    }

    pub fn ihom(src: ObjectWord, tgt: ObjectWord) -> Self {
        ObjectWord(vec![ObjectExpr::IHom(src, tgt)])
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &ObjectWord) -> ObjectWord {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        ObjectWord(v)
    }

    pub fn slice_range(&self, lo: usize, hi: usize) -> ObjectWord {
        ObjectWord(self.0[lo..hi].to_vec())
    }
}

impl fmt::Debug for ObjectWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::dsl::print_word(self))
    }
}

/// Word template over positional word parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LetterT {
    Param(usize),
    Atom(Ident),
    IHom(WordT, WordT),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordT(pub Vec<LetterT>);

impl WordT {
    pub fn empty() -> Self {
        WordT(Vec::new())
    }

    pub fn param(i: usize) -> Self {
        WordT(vec![LetterT::Param(i)])
    }

    pub fn atom(name: &str) -> Self {
        WordT(vec![LetterT::Atom(name.to_string())])
    }

    pub fn concat(&self, other: &WordT) -> WordT {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        WordT(v)
    }

    pub fn subst(&self, args: &[ObjectWord]) -> ObjectWord {
        let mut out = Vec::new();
        for l in &self.0 {
            match l {
                LetterT::Param(i) => out.extend(args[*i].0.iter().cloned()),
                LetterT::Atom(a) => out.push(ObjectExpr::Atom(a.clone())),
                LetterT::IHom(s, t) => {
                    out.push(ObjectExpr::IHom(s.subst(args), t.subst(args)))
                }
            }
        }
        ObjectWord(out)
    }

    fn max_param(&self) -> Option<usize> {
        self.0
            .iter()
            .filter_map(|l| match l {
                LetterT::Param(i) => Some(*i),
                LetterT::IHom(s, t) => s.max_param().max(t.max_param()),
                _ => None,
            })
            .max()
    }

    fn atoms(&self, out: &mut BTreeSet<Ident>) {
        for l in &self.0 {
            match l {
                LetterT::Atom(a) => {
                    out.insert(a.clone());
                }
                LetterT::IHom(s, t) => {
                    s.atoms(out);
                    t.atoms(out);
                }
                LetterT::Param(_) => {}
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gen1Kind {
    Plain,
    /// Adjoint equivalence: a formal inverse plus invertible unit/counit
    /// 2-cells exist, and the triangle-identity schemas are registered.
    Equivalence,
}

/// A family of 1-generators parameterized by object words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gen1Decl {
    pub name: Ident,
    pub params: usize,
    pub dom: WordT,
    pub cod: WordT,
    pub kind: Gen1Kind,
    /// Parameter positions in which the family is pseudonatural; slices
    /// acting on such a parameter may be slid across the generator.
    pub natural: Vec<usize>,
    /// Encodes axiom (s1): an instance with any empty parameter is
    /// definitionally the identity slice and never appears in a cell.
    pub unit_degenerate: bool,
}

/// A family of 2-generators with equal-boundary one-cell templates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gen2Decl {
    pub name: Ident,
    pub params: usize,
    pub lhs: OneCellT,
    pub rhs: OneCellT,
    pub invertible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoreT {
    Gen1 {
        name: Ident,
        args: Vec<WordT>,
        inv: bool,
    },
    HomAction {
        ctx: WordT,
        inner: Box<OneCellT>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceT {
    pub left: WordT,
    pub core: CoreT,
    pub right: WordT,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneCellT {
    pub dom: WordT,
    pub slices: Vec<SliceT>,
}

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
pub enum SigError {
    #[error("name `{0}` declared more than once")]
    NameClash(Ident),
    #[error("name `{0}` is not declared")]
    Undeclared(Ident),
    #[error("template of `{name}` references parameter {param} beyond arity {arity}")]
    BadParam {
        name: Ident,
        param: usize,
        arity: usize,
    },
    #[error("2-generator `{0}` has mismatched boundaries: {1}")]
    BoundaryMismatch(Ident, String),
    #[error("internal homs require the closed_structure library (in `{0}`)")]
    HomWithoutClosed(Ident),
    #[error("unknown library `{0}`")]
    UnknownLibrary(String),
    #[error("merge clash: `{0}` declared with different templates")]
    MergeClash(Ident),
}

/// A validated collection of declarations plus the axiom schemas registered
/// alongside them.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Signature {
    pub uses: Vec<String>,
    pub objects: BTreeSet<Ident>,
    pub gen1s: BTreeMap<Ident, Gen1Decl>,
    pub gen2s: BTreeMap<Ident, Gen2Decl>,
    pub schemas: BTreeMap<Ident, AxiomSchema>,
}

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }

    pub fn gen1(&self, name: &str) -> Result<&Gen1Decl, SigError> {
        self.gen1s
            .get(name)
            .ok_or_else(|| SigError::Undeclared(name.to_string()))
    }

    pub fn gen2(&self, name: &str) -> Result<&Gen2Decl, SigError> {
        self.gen2s
            .get(name)
            .ok_or_else(|| SigError::Undeclared(name.to_string()))
    }

    pub fn closed_enabled(&self) -> bool {
        self.uses.iter().any(|u| u == "closed_structure")
    }

    pub fn add_object(&mut self, name: &str) -> Result<(), SigError> {
        if !self.objects.insert(name.to_string()) {
            return Err(SigError::NameClash(name.to_string()));
        }
        Ok(())
    }

    pub fn add_gen1(&mut self, decl: Gen1Decl) -> Result<(), SigError> {
        if self.gen1s.contains_key(&decl.name) || self.gen2s.contains_key(&decl.name) {
            return Err(SigError::NameClash(decl.name));
        }
        self.gen1s.insert(decl.name.clone(), decl);
        Ok(())
    }

    pub fn add_gen2(&mut self, decl: Gen2Decl) -> Result<(), SigError> {
        if self.gen2s.contains_key(&decl.name) || self.gen1s.contains_key(&decl.name) {
            return Err(SigError::NameClash(decl.name));
        }
        self.gen2s.insert(decl.name.clone(), decl);
        Ok(())
    }

    pub fn add_schema(&mut self, schema: AxiomSchema) {
        self.schemas.insert(schema.name.clone(), schema);
    }

    /// Distinct fresh atoms, one per parameter, for template validation.
    /// Boundary templates are concatenations, so equality at one generic
    /// instantiation is equality of templates.
    fn fresh_args(n: usize) -> Vec<ObjectWord> {
        (0..n).map(|i| ObjectWord::atom(&format!("?{i}"))).collect()
    }

    /// Check every declaration against the signature itself.
    pub fn validate(&self) -> Result<(), SigError> {
        for decl in self.gen1s.values() {
            for t in [&decl.dom, &decl.cod] {
                self.check_template(&decl.name, t, decl.params)?;
            }
        }
        for decl in self.gen2s.values() {
            let args = Self::fresh_args(decl.params);
            for side in [&decl.lhs, &decl.rhs] {
                self.check_cell_template(&decl.name, side, decl.params)?;
            }
            let lhs = self.subst_cell(&decl.lhs, &args);
            let rhs = self.subst_cell(&decl.rhs, &args);
            let lb = self.boundary_of(&decl.name, &lhs)?;
            let rb = self.boundary_of(&decl.name, &rhs)?;
            if lb != rb {
                return Err(SigError::BoundaryMismatch(
                    decl.name.clone(),
                    format!("{:?} vs {:?}", lb, rb),
                ));
            }
        }
        Ok(())
    }

    fn boundary_of(
        &self,
        name: &str,
        cell: &OneCell,
    ) -> Result<(ObjectWord, ObjectWord), SigError> {
        cell.boundary(self)
            .map_err(|e| SigError::BoundaryMismatch(name.to_string(), e.to_string()))
    }

    fn check_template(&self, name: &str, t: &WordT, arity: usize) -> Result<(), SigError> {
        if let Some(p) = t.max_param() {
            if p >= arity {
                return Err(SigError::BadParam {
                    name: name.to_string(),
                    param: p,
                    arity,
                });
            }
        }
        let mut atoms = BTreeSet::new();
        t.atoms(&mut atoms);
        for a in atoms {
            if !self.objects.contains(&a) && !a.starts_with('?') {
                return Err(SigError::Undeclared(a));
            }
        }
        let has_hom = t.0.iter().any(|l| matches!(l, LetterT::IHom(..)));
        if has_hom && !self.closed_enabled() {
            return Err(SigError::HomWithoutClosed(name.to_string()));
        }
        Ok(())
    }

    fn check_cell_template(
        &self,
        name: &str,
        c: &OneCellT,
        arity: usize,
    ) -> Result<(), SigError> {
        self.check_template(name, &c.dom, arity)?;
        for s in &c.slices {
            self.check_template(name, &s.left, arity)?;
            self.check_template(name, &s.right, arity)?;
            match &s.core {
                CoreT::Gen1 { name: g, args, .. } => {
                    let decl = self.gen1(g)?;
                    if args.len() != decl.params {
                        return Err(SigError::BadParam {
                            name: name.to_string(),
                            param: args.len(),
                            arity: decl.params,
                        });
                    }
                    for a in args {
                        self.check_template(name, a, arity)?;
                    }
                }
                CoreT::HomAction { ctx, inner } => {
                    if !self.closed_enabled() {
                        return Err(SigError::HomWithoutClosed(name.to_string()));
                    }
                    self.check_template(name, ctx, arity)?;
                    self.check_cell_template(name, inner, arity)?;
                }
            }
        }
        Ok(())
    }

    /// Instantiate a one-cell template. Degenerate slices (an s1-normalized
    /// generator on an empty parameter) vanish.
    pub fn subst_cell(&self, t: &OneCellT, args: &[ObjectWord]) -> OneCell {
        let dom = t.dom.subst(args);
        let mut slices = Vec::new();
        for s in &t.slices {
            if let Some(sl) = self.subst_slice(s, args) {
                slices.push(sl);
            }
        }
        OneCell { dom, slices }
    }

    pub fn subst_slice(&self, t: &SliceT, args: &[ObjectWord]) -> Option<Slice> {
        let left = t.left.subst(args);
        let right = t.right.subst(args);
        let core = match &t.core {
            CoreT::Gen1 { name, args: a, inv } => {
                let ca: Vec<ObjectWord> = a.iter().map(|w| w.subst(args)).collect();
                if let Ok(decl) = self.gen1(name) {
                    if decl.unit_degenerate && ca.iter().any(|w| w.is_empty()) {
                        return None;
                    }
                }
                SliceCore::Gen1 {
                    name: name.clone(),
                    args: ca,
                    inv: *inv,
                }
            }
            CoreT::HomAction { ctx, inner } => SliceCore::HomAction {
                ctx: ctx.subst(args),
                inner: Box::new(self.subst_cell(inner, args)),
            },
        };
        Some(Slice { left, core, right })
    }

    /// Union of declarations; identical redeclarations collapse.
    pub fn merge(&self, other: &Signature) -> Result<Signature, SigError> {
        let mut out = self.clone();
        for u in &other.uses {
            if !out.uses.contains(u) {
                out.uses.push(u.clone());
            }
        }
        out.objects.extend(other.objects.iter().cloned());
        for (k, v) in &other.gen1s {
            match out.gen1s.get(k) {
                None => {
                    out.gen1s.insert(k.clone(), v.clone());
                }
                Some(old) if old == v => {}
                Some(_) => return Err(SigError::MergeClash(k.clone())),
            }
        }
        for (k, v) in &other.gen2s {
            match out.gen2s.get(k) {
                None => {
                    out.gen2s.insert(k.clone(), v.clone());
                }
                Some(old) if old == v => {}
                Some(_) => return Err(SigError::MergeClash(k.clone())),
            }
        }
        for (k, v) in &other.schemas {
            out.schemas.insert(k.clone(), v.clone());
        }
        out.validate()?;
        Ok(out)
    }

    /// Canonical JSON export with stable key order.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("signature serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_concat_is_strictly_associative_and_unital() {
        let a = ObjectWord::atom("A");
        let b = ObjectWord::atom("B");
        let c = ObjectWord::atom("C");
        let e = ObjectWord::empty();
        assert_eq!(a.concat(&b).concat(&c), a.concat(&b.concat(&c)));
        assert_eq!(a.concat(&e), a);
        assert_eq!(e.concat(&a), a);
    }

    #[test]
    fn name_clash_detected() {
        let mut sig = Signature::new();
        sig.add_object("A").unwrap();
        assert_eq!(sig.add_object("A"), Err(SigError::NameClash("A".into())));
    }

    #[test]
    fn template_subst_flattens_params() {
        let t = WordT(vec![
            LetterT::Param(0),
            LetterT::Atom("A".into()),
            LetterT::Param(1),
        ]);
        let x = ObjectWord::atom("X").concat(&ObjectWord::atom("Y"));
        let got = t.subst(&[x, ObjectWord::empty()]);
        assert_eq!(got.len(), 3);
    }
}
