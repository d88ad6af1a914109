//! Line-oriented functional-style ontology format.
//!
//! One axiom per line, `#` starts a comment. Supported statements:
//!
//! ```text
//! SubClassOf(C D)            EquivalentClasses(C D)      DisjointClasses(C D)
//! SubObjectPropertyOf(r s)   ObjectPropertyDomain(r C)   ObjectPropertyRange(r C)
//! ```
//!
//! with concept expressions built from names, `owl:Thing`, `owl:Nothing`,
//! `ObjectComplementOf`, `ObjectIntersectionOf`, `ObjectUnionOf`,
//! `ObjectSomeValuesFrom` and `ObjectAllValuesFrom`. Assertions are skipped
//! and reported; constructs outside ALCH are errors.

use core::fmt;

use crate::ontology::{Axiom, AxiomForm, Concept, Name, Ontology, OntologyError};
use crate::prelude::*;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// Result of parsing a whole file.
#[derive(Debug, Clone, Default)]
pub struct ParseOutcome {
    pub ontology: Ontology,
    /// Number of lines whose axiom was already present.
    pub duplicates: usize,
    /// Line numbers of skipped ABox assertions.
    pub skipped_assertions: Vec<usize>,
}

impl ParseOutcome {
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if self.duplicates > 0 {
            w.push(format!("{} duplicate axiom(s) ignored", self.duplicates));
        }
        for line in &self.skipped_assertions {
            w.push(format!("line {line}: assertion skipped (only TBox axioms are reasoned over)"));
        }
        w
    }
}

const ASSERTIONS: &[&str] = &[
    "ClassAssertion",
    "ObjectPropertyAssertion",
    "NegativeObjectPropertyAssertion",
    "DataPropertyAssertion",
    "NegativeDataPropertyAssertion",
    "SameIndividual",
    "DifferentIndividuals",
];

const UNSUPPORTED: &[&str] = &[
    "ObjectInverseOf",
    "InverseObjectProperties",
    "TransitiveObjectProperty",
    "FunctionalObjectProperty",
    "InverseFunctionalObjectProperty",
    "SymmetricObjectProperty",
    "AsymmetricObjectProperty",
    "ReflexiveObjectProperty",
    "IrreflexiveObjectProperty",
    "EquivalentObjectProperties",
    "DisjointObjectProperties",
    "SubPropertyChainOf",
    "ObjectMinCardinality",
    "ObjectMaxCardinality",
    "ObjectExactCardinality",
    "ObjectHasValue",
    "ObjectHasSelf",
    "ObjectOneOf",
    "DisjointUnion",
    "HasKey",
    "Declaration",
    "AnnotationAssertion",
    "DataSomeValuesFrom",
    "DataAllValuesFrom",
    "DataHasValue",
    "DataMinCardinality",
    "DataMaxCardinality",
    "DataExactCardinality",
    "DataPropertyDomain",
    "DataPropertyRange",
    "SubDataPropertyOf",
    "FunctionalDataProperty",
    "Import",
    "Prefix",
    "Ontology",
];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token<'a> {
    Open,
    Close,
    Word(&'a str),
}

impl fmt::Display for Token<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Open => f.write_str("'('"),
            Token::Close => f.write_str("')'"),
            Token::Word(w) => write!(f, "{w:?}"),
        }
    }
}

fn tokenize(line: &str) -> Result<Vec<Token<'_>>, String> {
    let mut out = Vec::new();
    let bytes = line.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b'(' => {
                out.push(Token::Open);
                i += 1;
            }
            b')' => {
                out.push(Token::Close);
                i += 1;
            }
            b if b.is_ascii_whitespace() => i += 1,
            b if b.is_ascii_alphanumeric() || b == b'_' || b == b'-' || b == b':' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || matches!(bytes[i], b'_' | b'-' | b':')) {
                    i += 1;
                }
                out.push(Token::Word(&line[start..i]));
            }
            _ => {
                let ch = line[i..].chars().next().unwrap_or('?');
                return Err(format!("unexpected character {ch:?}"));
            }
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    tokens: Vec<Token<'a>>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&Token<'a>> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token<'a>> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Token<'static>) -> Result<(), String> {
        match self.next() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(format!("expected {want}, found {t}")),
            None => Err(format!("expected {want}, found end of line")),
        }
    }

    fn followed_by_open(&self) -> bool {
        matches!(self.tokens.get(self.pos + 1), Some(Token::Open))
    }

    fn name(&mut self, what: &str) -> Result<Name, String> {
        match self.next() {
            Some(Token::Word(w)) => {
                if self.peek() == Some(&Token::Open) {
                    return Err(construct_error(w, what));
                }
                Name::new(w).map_err(|_| format!("invalid {what} name {w:?}"))
            }
            Some(t) => Err(format!("expected {what} name, found {t}")),
            None => Err(format!("expected {what} name, found end of line")),
        }
    }

    fn role(&mut self) -> Result<Name, String> {
        self.name("role")
    }

    fn concept(&mut self) -> Result<Concept, String> {
        let word = match self.peek() {
            Some(Token::Word(w)) => *w,
            Some(t) => return Err(format!("expected class expression, found {t}")),
            None => return Err("expected class expression, found end of line".into()),
        };
        if !self.followed_by_open() {
            self.pos += 1;
            return match word {
                "owl:Thing" => Ok(Concept::Top),
                "owl:Nothing" => Ok(Concept::Bottom),
                w if w.contains(':') => Err(format!("prefixed name {w:?} is not supported")),
                w => Name::new(w).map(Concept::Atomic).map_err(|_| format!("invalid class name {w:?}")),
            };
        }
        self.pos += 2;
        let c = match word {
            "ObjectComplementOf" => Concept::negation(self.concept()?),
            "ObjectIntersectionOf" | "ObjectUnionOf" => {
                let mut ops = Vec::new();
                while self.peek() != Some(&Token::Close) && self.peek().is_some() {
                    ops.push(self.concept()?);
                }
                if ops.len() < 2 {
                    return Err(format!("{word} needs at least two operands"));
                }
                if word == "ObjectIntersectionOf" {
                    Concept::And(ops)
                } else {
                    Concept::Or(ops)
                }
            }
            "ObjectSomeValuesFrom" => {
                let r = self.role()?;
                Concept::exists(r, self.concept()?)
            }
            "ObjectAllValuesFrom" => {
                let r = self.role()?;
                Concept::forall(r, self.concept()?)
            }
            other => return Err(construct_error(other, "class expression")),
        };
        self.expect(Token::Close)?;
        Ok(c)
    }
}

fn construct_error(word: &str, context: &str) -> String {
    if UNSUPPORTED.contains(&word) {
        format!("unsupported construct {word} (only ALCH with domain/range is accepted)")
    } else {
        format!("unknown {context} constructor {word}")
    }
}

enum Line {
    Blank,
    Assertion,
    Axiom(Axiom),
}

fn parse_line(raw: &str) -> Result<Line, String> {
    let text = match raw.find('#') {
        Some(i) => &raw[..i],
        None => raw,
    };
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Ok(Line::Blank);
    }
    let mut cur = Cursor { tokens, pos: 0 };
    let kw = match cur.next() {
        Some(Token::Word(w)) => w,
        Some(t) => return Err(format!("expected axiom keyword, found {t}")),
        None => unreachable!(),
    };
    if ASSERTIONS.contains(&kw) {
        return Ok(Line::Assertion);
    }
    cur.expect(Token::Open)?;
    let form = match kw {
        "SubClassOf" => {
            let sub = cur.concept()?;
            AxiomForm::SubClassOf { sub, sup: cur.concept()? }
        }
        "EquivalentClasses" | "DisjointClasses" => {
            let a = cur.concept()?;
            let b = cur.concept()?;
            if cur.peek() != Some(&Token::Close) {
                return Err(format!("{kw} takes exactly two class expressions"));
            }
            if kw == "EquivalentClasses" {
                AxiomForm::EquivalentClasses(a, b)
            } else {
                AxiomForm::DisjointClasses(a, b)
            }
        }
        "SubObjectPropertyOf" => {
            let sub = cur.role()?;
            AxiomForm::SubRoleOf { sub, sup: cur.role()? }
        }
        "ObjectPropertyDomain" => {
            let role = cur.role()?;
            AxiomForm::Domain { role, filler: cur.concept()? }
        }
        "ObjectPropertyRange" => {
            let role = cur.role()?;
            AxiomForm::Range { role, filler: cur.concept()? }
        }
        other => return Err(construct_error(other, "axiom")),
    };
    cur.expect(Token::Close)?;
    if let Some(t) = cur.next() {
        return Err(format!("trailing input after axiom: {t}"));
    }
    Axiom::new(form).map(Line::Axiom).map_err(|e: OntologyError| e.to_string())
}

/// Parses one axiom, ignoring a trailing comment.
pub fn parse_axiom(text: &str) -> Result<Axiom, ParseError> {
    let err = |message: String| ParseError { line: 1, message };
    match parse_line(text).map_err(err)? {
        Line::Axiom(a) => Ok(a),
        Line::Blank => Err(err("empty input".into())),
        Line::Assertion => Err(err("assertions are not TBox axioms".into())),
    }
}

pub fn parse_ontology(text: &str) -> Result<ParseOutcome, ParseError> {
    let mut out = ParseOutcome::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        match parse_line(raw).map_err(|message| ParseError { line, message })? {
            Line::Blank => {}
            Line::Assertion => out.skipped_assertions.push(line),
            Line::Axiom(a) => {
                if !out.ontology.insert(a) {
                    out.duplicates += 1;
                }
            }
        }
    }
    Ok(out)
}

/// One canonical line per axiom, each terminated by `\n`.
pub fn serialize_ontology(o: &Ontology) -> String {
    let mut s = String::new();
    for a in o {
        s.push_str(a.id().as_str());
        s.push('\n');
    }
    s
}
