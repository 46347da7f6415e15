//! The regular-logic formula language over a model: truth, conjunction, the
//! existential quantifier along a morphism, and substitution along a
//! morphism.
//!
//! Grammar (left-assoc `&`; `EX` scopes right as far as possible;
//! substitution binds tightest):
//!
//! ```text
//! formula  :=  'EX' f '.' formula  |  conj
//! conj     :=  postfix ('&' postfix)*        -- the right operand may be EX
//! postfix  :=  primary ('[' f ']')*
//! primary  :=  'TOP@' OBJ  |  PREDICATE  |  '(' formula ')'
//! ```
//!
//! Universal quantification and implication are deliberately not part of the
//! grammar: substitution has no Beck-Chevalley-compatible right adjoint on
//! these lattices (they are orthomodular, not Heyting), so `ALL`/`FORALL`,
//! `->` and `=>` are rejected with an explanation rather than a bare syntax
//! error.
//!
//! Formulas are typed by the object they speak about; parsing against a
//! model checks the types and returns the object alongside the tree.

use prehilb_core::laws::exists_along;
use prehilb_core::{preimage, Subobject};
use thiserror::Error;

use crate::model::Model;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    /// The whole of the named object.
    Top(String),
    /// A named predicate of the model.
    Atom(String),
    And(Box<Formula>, Box<Formula>),
    /// `EX f . φ`: the direct image of `φ` along the named morphism.
    Exists(String, Box<Formula>),
    /// `φ[f]`: the preimage of `φ` along the named morphism.
    Subst(String, Box<Formula>),
}

/// A formula together with the object it is about.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedFormula {
    pub formula: Formula,
    pub object: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("{msg}")]
    Type { msg: String },
}

const NO_UNIVERSAL: &str = "universal quantification is not available: on these orthomodular \
subspace lattices substitution has no Beck-Chevalley-compatible right adjoint, so `ALL`/`FORALL` \
cannot be interpreted; the fragment is TOP, `&`, `EX f . φ` and `φ[f]`";

const NO_IMPLICATION: &str = "implication is not available: the subspace lattices are \
orthomodular, not Heyting, so `->`/`=>` has no sound interpretation; the fragment is TOP, `&`, \
`EX f . φ` and `φ[f]`";

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Amp,
    At,
    Dot,
    LPar,
    RPar,
    LBrack,
    RBrack,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, FormulaError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let col = pos + 1;
        match bytes[pos] {
            b if b.is_ascii_whitespace() => pos += 1,
            b'&' => {
                toks.push((Tok::Amp, col));
                pos += 1;
            }
            b'@' => {
                toks.push((Tok::At, col));
                pos += 1;
            }
            b'.' => {
                toks.push((Tok::Dot, col));
                pos += 1;
            }
            b'(' => {
                toks.push((Tok::LPar, col));
                pos += 1;
            }
            b')' => {
                toks.push((Tok::RPar, col));
                pos += 1;
            }
            b'[' => {
                toks.push((Tok::LBrack, col));
                pos += 1;
            }
            b']' => {
                toks.push((Tok::RBrack, col));
                pos += 1;
            }
            b'-' | b'=' if pos + 1 < bytes.len() && bytes[pos + 1] == b'>' => {
                return Err(FormulaError::Syntax { col, msg: NO_IMPLICATION.to_string() });
            }
            b if b.is_ascii_alphabetic() || b == b'_' => {
                let start = pos;
                while pos < bytes.len()
                    && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_')
                {
                    pos += 1;
                }
                toks.push((Tok::Ident(text[start..pos].to_string()), col));
            }
            other => {
                return Err(FormulaError::Syntax {
                    col,
                    msg: format!("unexpected character `{}`", other as char),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    model: &'a Model,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(usize::MAX, |(_, c)| *c)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn syntax(&self, msg: impl Into<String>) -> FormulaError {
        FormulaError::Syntax { col: self.col().min(usize::MAX - 1), msg: msg.into() }
    }

    fn ident(&mut self, what: &str) -> Result<String, FormulaError> {
        match self.bump() {
            Some(Tok::Ident(name)) => Ok(name),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.syntax(format!("expected {what}")))
            }
        }
    }

    fn morphism_profile(&self, name: &str, col: usize) -> Result<(String, String), FormulaError> {
        match self.model.morphism(name) {
            Some(m) => Ok((m.dom.clone(), m.cod.clone())),
            None => Err(FormulaError::Syntax {
                col,
                msg: format!("unknown morphism `{name}`"),
            }),
        }
    }

    fn conjunction(&mut self) -> Result<(Formula, String), FormulaError> {
        let (mut formula, object) = self.prefix()?;
        while self.eat(&Tok::Amp) {
            let (rhs, rhs_object) = self.prefix()?;
            if rhs_object != object {
                return Err(FormulaError::Type {
                    msg: format!(
                        "the sides of `&` are over different objects: expected `{object}`, found `{rhs_object}`"
                    ),
                });
            }
            formula = Formula::And(Box::new(formula), Box::new(rhs));
        }
        Ok((formula, object))
    }

    fn prefix(&mut self) -> Result<(Formula, String), FormulaError> {
        if let Some(Tok::Ident(name)) = self.peek() {
            if name == "EX" {
                self.bump();
                let col = self.col();
                let morphism = self.ident("a morphism name after `EX`")?;
                let (dom, cod) = self.morphism_profile(&morphism, col)?;
                if !self.eat(&Tok::Dot) {
                    return Err(self.syntax("expected `.` after the quantified morphism"));
                }
                let (body, body_object) = self.conjunction()?;
                if body_object != dom {
                    return Err(FormulaError::Type {
                        msg: format!(
                            "`EX {morphism}` needs a formula over `{dom}` (the domain of `{morphism}`), found one over `{body_object}`"
                        ),
                    });
                }
                return Ok((Formula::Exists(morphism, Box::new(body)), cod));
            }
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<(Formula, String), FormulaError> {
        let (mut formula, mut object) = self.primary()?;
        while self.eat(&Tok::LBrack) {
            let col = self.col();
            let morphism = self.ident("a morphism name inside `[...]`")?;
            let (dom, cod) = self.morphism_profile(&morphism, col)?;
            if !self.eat(&Tok::RBrack) {
                return Err(self.syntax("expected `]`"));
            }
            if object != cod {
                return Err(FormulaError::Type {
                    msg: format!(
                        "substitution along `{morphism}` needs a formula over `{cod}` (its codomain), found one over `{object}`"
                    ),
                });
            }
            formula = Formula::Subst(morphism, Box::new(formula));
            object = dom;
        }
        Ok((formula, object))
    }

    fn primary(&mut self) -> Result<(Formula, String), FormulaError> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Ident(name)) if name == "TOP" => {
                if !self.eat(&Tok::At) {
                    return Err(self.syntax("expected `@OBJECT` after `TOP`"));
                }
                let obj_col = self.col();
                let object = self.ident("an object name after `TOP@`")?;
                if self.model.object_dim(&object).is_none() {
                    return Err(FormulaError::Syntax {
                        col: obj_col,
                        msg: format!("unknown object `{object}`"),
                    });
                }
                Ok((Formula::Top(object.clone()), object))
            }
            Some(Tok::Ident(name)) if name == "ALL" || name == "FORALL" => {
                Err(FormulaError::Syntax { col, msg: NO_UNIVERSAL.to_string() })
            }
            Some(Tok::Ident(name)) => match self.model.predicate(&name) {
                Some(p) => Ok((Formula::Atom(name), p.object.clone())),
                None => {
                    let hint = if self.model.morphism(&name).is_some() {
                        format!(
                            "`{name}` names a morphism; morphisms appear as `EX {name} . φ` or `φ[{name}]`"
                        )
                    } else {
                        format!("unknown predicate `{name}`")
                    };
                    Err(FormulaError::Syntax { col, msg: hint })
                }
            },
            Some(Tok::LPar) => {
                let inner = self.conjunction()?;
                if !self.eat(&Tok::RPar) {
                    return Err(self.syntax("expected `)`"));
                }
                Ok(inner)
            }
            _ => Err(FormulaError::Syntax { col, msg: "expected a formula".to_string() }),
        }
    }
}

/// Parses and type-checks a formula against a model.
pub fn parse_formula(text: &str, model: &Model) -> Result<TypedFormula, FormulaError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, pos: 0, model };
    let (formula, object) = parser.conjunction()?;
    if parser.pos < parser.toks.len() {
        return Err(parser.syntax("unexpected trailing input"));
    }
    Ok(TypedFormula { formula, object })
}

/// Infers the object of a programmatically built formula, checking the same
/// typing rules the parser enforces.
pub fn typecheck(formula: &Formula, model: &Model) -> Result<String, FormulaError> {
    let type_err = |msg: String| FormulaError::Type { msg };
    match formula {
        Formula::Top(object) => model
            .object_dim(object)
            .map(|_| object.clone())
            .ok_or_else(|| type_err(format!("unknown object `{object}`"))),
        Formula::Atom(name) => model
            .predicate(name)
            .map(|p| p.object.clone())
            .ok_or_else(|| type_err(format!("unknown predicate `{name}`"))),
        Formula::And(a, b) => {
            let left = typecheck(a, model)?;
            let right = typecheck(b, model)?;
            if left != right {
                return Err(type_err(format!(
                    "the sides of `&` are over different objects: expected `{left}`, found `{right}`"
                )));
            }
            Ok(left)
        }
        Formula::Exists(name, body) => {
            let m = model
                .morphism(name)
                .ok_or_else(|| type_err(format!("unknown morphism `{name}`")))?;
            let body_object = typecheck(body, model)?;
            if body_object != m.dom {
                return Err(type_err(format!(
                    "`EX {name}` needs a formula over `{}` (the domain of `{name}`), found one over `{body_object}`",
                    m.dom
                )));
            }
            Ok(m.cod.clone())
        }
        Formula::Subst(name, body) => {
            let m = model
                .morphism(name)
                .ok_or_else(|| type_err(format!("unknown morphism `{name}`")))?;
            let body_object = typecheck(body, model)?;
            if body_object != m.cod {
                return Err(type_err(format!(
                    "substitution along `{name}` needs a formula over `{}` (its codomain), found one over `{body_object}`",
                    m.cod
                )));
            }
            Ok(m.dom.clone())
        }
    }
}

/// Evaluates a well-typed formula to the subobject it denotes. Panics on
/// ill-typed input; run [`typecheck`] (or use [`parse_formula`]) first.
pub fn eval_formula(model: &Model, formula: &Formula) -> Subobject {
    match formula {
        Formula::Top(object) => {
            Subobject::top(model.object_dim(object).expect("well-typed formula"))
        }
        Formula::Atom(name) => model.predicate(name).expect("well-typed formula").subobject.clone(),
        Formula::And(a, b) => eval_formula(model, a).meet(&eval_formula(model, b)),
        Formula::Exists(name, body) => {
            let m = model.morphism(name).expect("well-typed formula");
            exists_along(&m.morphism, &eval_formula(model, body))
        }
        Formula::Subst(name, body) => {
            let m = model.morphism(name).expect("well-typed formula");
            preimage(&m.morphism, &eval_formula(model, body))
        }
    }
}

/// Entailment: whether `⟦lhs⟧ ≤ ⟦rhs⟧`. The formulas must be over the same
/// object.
pub fn check_entailment(model: &Model, lhs: &Formula, rhs: &Formula) -> Result<bool, FormulaError> {
    let left = typecheck(lhs, model)?;
    let right = typecheck(rhs, model)?;
    if left != right {
        return Err(FormulaError::Type {
            msg: format!(
                "entailment needs both formulas over the same object: expected `{left}`, found `{right}`"
            ),
        });
    }
    Ok(eval_formula(model, lhs).leq(&eval_formula(model, rhs)))
}

// whether the printed form ends in a quantifier body, which would capture
// anything printed after it
fn ends_with_open_binder(formula: &Formula) -> bool {
    match formula {
        Formula::Exists(..) => true,
        Formula::And(_, rhs) => ends_with_open_binder(rhs),
        _ => false,
    }
}

/// The canonical text of a formula; parsing it back gives the same tree.
pub fn format_formula(formula: &Formula) -> String {
    match formula {
        Formula::Top(object) => format!("TOP@{object}"),
        Formula::Atom(name) => name.clone(),
        Formula::And(a, b) => {
            let lhs = if ends_with_open_binder(a) {
                format!("({})", format_formula(a))
            } else {
                format_formula(a)
            };
            let rhs = match **b {
                Formula::And(..) => format!("({})", format_formula(b)),
                _ => format_formula(b),
            };
            format!("{lhs} & {rhs}")
        }
        Formula::Exists(name, body) => format!("EX {name} . {}", format_formula(body)),
        Formula::Subst(name, body) => {
            let inner = match **body {
                Formula::Top(_) | Formula::Atom(_) | Formula::Subst(..) => format_formula(body),
                _ => format!("({})", format_formula(body)),
            };
            format!("{inner}[{name}]")
        }
    }
}
