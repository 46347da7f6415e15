//! Model files: a finite presentation of the semantic universe.
//!
//! The format is line-oriented UTF-8 with `#` comments. Three declaration
//! forms, one per line:
//!
//! ```text
//! object NAME: DIM
//! morphism NAME: A -> B = [[s, ...], ...]
//! predicate NAME on OBJ = span (v1), (v2), ...
//! predicate NAME on OBJ = proj [[...]]
//! ```
//!
//! Names share one namespace, every morphism matrix must match the declared
//! object dimensions (`B`-dim rows of `A`-dim entries), and `proj` predicates
//! are validated to be genuine projections on load. [`Model::to_text`]
//! prints the canonical form (predicates as `proj`), and parse ∘ print is
//! the identity.

use indexmap::IndexMap;
use prehilb_core::matrix::Matrix;
use prehilb_core::{Morphism, Subobject, SubobjectError};
use thiserror::Error;

use crate::scan::Scanner;

#[derive(Debug, Clone, PartialEq)]
pub struct NamedMorphism {
    pub dom: String,
    pub cod: String,
    pub morphism: Morphism,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedPredicate {
    pub object: String,
    pub subobject: Subobject,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Model {
    objects: IndexMap<String, usize>,
    morphisms: IndexMap<String, NamedMorphism>,
    predicates: IndexMap<String, NamedPredicate>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: duplicate name `{name}`")]
    Duplicate { line: usize, name: String },
    #[error("line {line}: unknown object `{name}`")]
    UnknownObject { line: usize, name: String },
    #[error("line {line}: {msg}")]
    Dimension { line: usize, msg: String },
    #[error("line {line}: predicate `{name}` is not a projection: {source}")]
    NotProjection { line: usize, name: String, source: SubobjectError },
}

impl Model {
    pub fn new() -> Self {
        Model::default()
    }

    fn check_fresh(&self, name: &str) -> Result<(), String> {
        if self.objects.contains_key(name)
            || self.morphisms.contains_key(name)
            || self.predicates.contains_key(name)
        {
            Err(name.to_string())
        } else {
            Ok(())
        }
    }

    /// Declares an object. Errors with the name on duplicates.
    pub fn add_object(&mut self, name: &str, dim: usize) -> Result<(), String> {
        self.check_fresh(name)?;
        self.objects.insert(name.to_string(), dim);
        Ok(())
    }

    /// Declares a morphism; its matrix must match the named objects.
    pub fn add_morphism(
        &mut self,
        name: &str,
        dom: &str,
        cod: &str,
        morphism: Morphism,
    ) -> Result<(), String> {
        self.check_fresh(name)?;
        let dom_dim = *self.objects.get(dom).ok_or(dom)?;
        let cod_dim = *self.objects.get(cod).ok_or(cod)?;
        if morphism.dom() != dom_dim || morphism.cod() != cod_dim {
            return Err(format!(
                "morphism `{name}` must be a {cod_dim}x{dom_dim} matrix ({dom} -> {cod}), got {}x{}",
                morphism.cod(),
                morphism.dom()
            ));
        }
        self.morphisms.insert(
            name.to_string(),
            NamedMorphism { dom: dom.to_string(), cod: cod.to_string(), morphism },
        );
        Ok(())
    }

    /// Declares a predicate; the subobject's ambient must match the object.
    pub fn add_predicate(
        &mut self,
        name: &str,
        object: &str,
        subobject: Subobject,
    ) -> Result<(), String> {
        self.check_fresh(name)?;
        let dim = *self.objects.get(object).ok_or(object)?;
        if subobject.ambient() != dim {
            return Err(format!(
                "predicate `{name}` lives in dimension {}, but `{object}` has dimension {dim}",
                subobject.ambient()
            ));
        }
        self.predicates.insert(
            name.to_string(),
            NamedPredicate { object: object.to_string(), subobject },
        );
        Ok(())
    }

    pub fn object_dim(&self, name: &str) -> Option<usize> {
        self.objects.get(name).copied()
    }

    pub fn morphism(&self, name: &str) -> Option<&NamedMorphism> {
        self.morphisms.get(name)
    }

    pub fn predicate(&self, name: &str) -> Option<&NamedPredicate> {
        self.predicates.get(name)
    }

    pub fn objects(&self) -> impl Iterator<Item = (&String, usize)> {
        self.objects.iter().map(|(n, d)| (n, *d))
    }

    pub fn morphisms(&self) -> impl Iterator<Item = (&String, &NamedMorphism)> {
        self.morphisms.iter()
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&String, &NamedPredicate)> {
        self.predicates.iter()
    }

    /// The canonical text form; parsing it back reproduces the model.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, dim) in &self.objects {
            out.push_str(&format!("object {name}: {dim}\n"));
        }
        if !self.morphisms.is_empty() {
            out.push('\n');
            for (name, m) in &self.morphisms {
                out.push_str(&format!("morphism {name}: {} -> {} = {}\n", m.dom, m.cod, m.morphism));
            }
        }
        if !self.predicates.is_empty() {
            out.push('\n');
            for (name, p) in &self.predicates {
                out.push_str(&format!("predicate {name} on {} = proj {}\n", p.object, p.subobject));
            }
        }
        out
    }
}

pub fn parse_model(text: &str) -> Result<Model, ModelError> {
    let mut model = Model::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut sc = Scanner::new(content);
        if sc.at_end() {
            continue;
        }
        let syntax = |e: crate::scan::ScanError| ModelError::Syntax { line, col: e.col, msg: e.msg };
        let keyword = sc.ident().map_err(syntax)?;
        match keyword.as_str() {
            "object" => {
                let name = sc.ident().map_err(syntax)?;
                sc.expect(":").map_err(syntax)?;
                let dim = sc.number().map_err(syntax)?;
                sc.expect_end().map_err(syntax)?;
                model
                    .add_object(&name, dim)
                    .map_err(|name| ModelError::Duplicate { line, name })?;
            }
            "morphism" => {
                let name = sc.ident().map_err(syntax)?;
                sc.expect(":").map_err(syntax)?;
                let dom = sc.ident().map_err(syntax)?;
                sc.expect("->").map_err(syntax)?;
                let cod = sc.ident().map_err(syntax)?;
                sc.expect("=").map_err(syntax)?;
                let rows = sc.matrix_rows().map_err(syntax)?;
                sc.expect_end().map_err(syntax)?;
                let dom_dim = model
                    .object_dim(&dom)
                    .ok_or_else(|| ModelError::UnknownObject { line, name: dom.clone() })?;
                let cod_dim = model
                    .object_dim(&cod)
                    .ok_or_else(|| ModelError::UnknownObject { line, name: cod.clone() })?;
                if rows.len() != cod_dim || rows.iter().any(|r| r.len() != dom_dim) {
                    return Err(ModelError::Dimension {
                        line,
                        msg: format!(
                            "morphism `{name}`: `{dom} -> {cod}` needs a {cod_dim}x{dom_dim} matrix, got {}x{}",
                            rows.len(),
                            rows.first().map_or(0, Vec::len)
                        ),
                    });
                }
                let mat = Matrix::new(cod_dim, dom_dim, rows.into_iter().flatten().collect());
                model
                    .add_morphism(&name, &dom, &cod, Morphism::new(mat))
                    .map_err(|name| ModelError::Duplicate { line, name })?;
            }
            "predicate" => {
                let name = sc.ident().map_err(syntax)?;
                sc.expect("on").map_err(syntax)?;
                let object = sc.ident().map_err(syntax)?;
                sc.expect("=").map_err(syntax)?;
                let dim = model
                    .object_dim(&object)
                    .ok_or_else(|| ModelError::UnknownObject { line, name: object.clone() })?;
                let kind_col = sc.col();
                let kind = sc.ident().map_err(syntax)?;
                let subobject = match kind.as_str() {
                    "span" => {
                        let mut vectors = vec![sc.vector().map_err(syntax)?];
                        while sc.eat(",") {
                            vectors.push(sc.vector().map_err(syntax)?);
                        }
                        sc.expect_end().map_err(syntax)?;
                        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
                            return Err(ModelError::Dimension {
                                line,
                                msg: format!(
                                    "predicate `{name}`: spanning vector of length {} in `{object}` of dimension {dim}",
                                    v.len()
                                ),
                            });
                        }
                        Subobject::from_span(dim, &vectors)
                    }
                    "proj" => {
                        let rows = sc.matrix_rows().map_err(syntax)?;
                        sc.expect_end().map_err(syntax)?;
                        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                            return Err(ModelError::Dimension {
                                line,
                                msg: format!(
                                    "predicate `{name}`: projection on `{object}` must be {dim}x{dim}"
                                ),
                            });
                        }
                        let mat = Matrix::new(dim, dim, rows.into_iter().flatten().collect());
                        Subobject::from_projection(mat)
                            .map_err(|source| ModelError::NotProjection { line, name: name.clone(), source })?
                    }
                    other => {
                        return Err(ModelError::Syntax {
                            line,
                            col: kind_col,
                            msg: format!("expected `span` or `proj`, found `{other}`"),
                        })
                    }
                };
                model
                    .add_predicate(&name, &object, subobject)
                    .map_err(|name| ModelError::Duplicate { line, name })?;
            }
            other => {
                return Err(ModelError::Syntax {
                    line,
                    col: 1,
                    msg: format!("unknown declaration `{other}` (expected object, morphism or predicate)"),
                })
            }
        }
    }
    Ok(model)
}
