//! Line-oriented scene files.
//!
//! ```text
//! field rational          # or: field prime 101
//! dim 2
//! sigma
//!   1 0 0
//!   0 2 0
//!   0 0 3
//! ideal
//!   x0 - x1
//!   x0 - x2
//! end
//! point [1:1:1]
//! horizon 12
//! ```
//!
//! Optional blocks: `component ... [prime ...] end` declares a primary
//! component (with its radical), `ambient ... end` a subvariety `X ⊂ P^d`
//! containing `Z`. Scalars: `maxdeg`, `oracle`, `gorenstein yes|no`.

use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::components::DeclaredComponent;
use crate::error::{Error, Result};
use crate::geometry::RationalPoint;
use crate::idealizer::IdealizerScene;
use crate::poly::{parse_poly, parse_rational, Field, HomIdeal, Poly};
use crate::twist::{pullback_ideal, ProjAutomorphism};

pub const DEFAULT_HORIZON: u32 = 12;
pub const DEFAULT_MAXDEG: u32 = 5;
pub const DEFAULT_ORACLE: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiagCode {
    Syntax,
    UnknownDirective,
    Missing,
    Duplicate,
    BadField,
    BadDim,
    BadRational,
    NonsquareSigma,
    SingularSigma,
    BadPoly,
    Inhomogeneous,
    BadPoint,
    AmbientNotContained,
    AmbientNotInvariant,
}

impl DiagCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagCode::Syntax => "SYNTAX",
            DiagCode::UnknownDirective => "UNKNOWN_DIRECTIVE",
            DiagCode::Missing => "MISSING",
            DiagCode::Duplicate => "DUPLICATE",
            DiagCode::BadField => "BAD_FIELD",
            DiagCode::BadDim => "BAD_DIM",
            DiagCode::BadRational => "BAD_RATIONAL",
            DiagCode::NonsquareSigma => "NONSQUARE_SIGMA",
            DiagCode::SingularSigma => "SINGULAR_SIGMA",
            DiagCode::BadPoly => "BAD_POLY",
            DiagCode::Inhomogeneous => "INHOMOGENEOUS",
            DiagCode::BadPoint => "BAD_POINT",
            DiagCode::AmbientNotContained => "AMBIENT_NOT_CONTAINED",
            DiagCode::AmbientNotInvariant => "AMBIENT_NOT_INVARIANT",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    /// 1-based line number; 0 for whole-file problems.
    pub line: usize,
    pub code: DiagCode,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}: {}", self.line, self.code.as_str(), self.message)
    }
}

#[derive(Clone, Debug)]
pub struct SceneFile {
    pub field: Field,
    pub dim: usize,
    pub sigma: ProjAutomorphism,
    pub ideal: HomIdeal,
    pub components: Vec<DeclaredComponent>,
    pub ambient: Option<HomIdeal>,
    pub points: Vec<RationalPoint>,
    pub horizon: u32,
    pub maxdeg: u32,
    pub oracle: u32,
    /// Declared Gorenstein property of `Z`, when given.
    pub gorenstein: Option<bool>,
}

impl SceneFile {
    pub fn nvars(&self) -> usize {
        self.dim + 1
    }

    /// The idealizer scene, with any declared decomposition verified.
    pub fn idealizer_scene(&self) -> Result<IdealizerScene> {
        let scene = IdealizerScene::new(self.sigma.clone(), &self.ideal)?;
        if self.components.is_empty() {
            Ok(scene)
        } else {
            scene.with_decomposition(self.components.clone())
        }
    }

    /// Parses a comma-separated generator list in this scene's ring.
    pub fn parse_ideal(&self, text: &str) -> Result<HomIdeal> {
        HomIdeal::parse(text, self.nvars(), self.field)
    }
}

type Lines = Vec<(usize, String)>;

#[derive(Default)]
struct RawComponent {
    line: usize,
    ideal: Lines,
    prime: Option<Lines>,
}

#[derive(Default)]
struct Raw {
    field: Option<(usize, Field)>,
    dim: Option<(usize, usize)>,
    sigma: Option<(usize, Vec<(usize, Vec<BigRational>)>)>,
    ideal: Option<(usize, Lines)>,
    components: Vec<RawComponent>,
    ambient: Option<(usize, Lines)>,
    points: Vec<(usize, String)>,
    horizon: Option<u32>,
    maxdeg: Option<u32>,
    oracle: Option<u32>,
    gorenstein: Option<bool>,
}

const DIRECTIVES: [&str; 13] = [
    "field",
    "dim",
    "sigma",
    "ideal",
    "component",
    "prime",
    "ambient",
    "end",
    "point",
    "horizon",
    "maxdeg",
    "oracle",
    "gorenstein",
];

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn diag(line: usize, code: DiagCode, message: impl Into<String>) -> Diagnostic {
    Diagnostic {
        line,
        code,
        message: message.into(),
    }
}

/// Parses and validates a scene, collecting every diagnostic found.
pub fn parse_scene(text: &str) -> std::result::Result<SceneFile, Vec<Diagnostic>> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let mut diags = Vec::new();
    let mut raw = Raw::default();
    let mut i = 0;
    let block = |i: &mut usize, stop_at_prime: bool| -> (Lines, Option<&'static str>) {
        let mut out = Vec::new();
        while *i < lines.len() {
            let (ln, l) = lines[*i];
            *i += 1;
            if l == "end" {
                return (out, Some("end"));
            }
            if stop_at_prime && l == "prime" {
                return (out, Some("prime"));
            }
            out.push((ln, l.to_string()));
        }
        (out, None)
    };
    while i < lines.len() {
        let (ln, line) = lines[i];
        i += 1;
        let mut words = line.split_whitespace();
        let head = words.next().unwrap_or("");
        let rest: Vec<&str> = words.collect();
        let number = |diags: &mut Vec<Diagnostic>| -> Option<u32> {
            match rest.as_slice() {
                [n] => n.parse::<u32>().ok().or_else(|| {
                    diags.push(diag(ln, DiagCode::Syntax, format!("{head} expects a nonnegative integer")));
                    None
                }),
                _ => {
                    diags.push(diag(ln, DiagCode::Syntax, format!("{head} expects one integer")));
                    None
                }
            }
        };
        match head {
            "field" => {
                let f = match rest.as_slice() {
                    ["rational"] => Some(Field::Rational),
                    ["prime", p] => match p.parse::<u64>().ok().map(Field::prime) {
                        Some(Ok(f)) => Some(f),
                        _ => {
                            diags.push(diag(ln, DiagCode::BadField, format!("{p} is not a usable prime")));
                            None
                        }
                    },
                    _ => {
                        diags.push(diag(ln, DiagCode::BadField, "expected `field rational` or `field prime <p>`"));
                        None
                    }
                };
                if let Some(f) = f {
                    if raw.field.is_some() {
                        diags.push(diag(ln, DiagCode::Duplicate, "field given twice"));
                    }
                    raw.field = Some((ln, f));
                }
            }
            "dim" => {
                if let Some(d) = number(&mut diags) {
                    if !(1..=9).contains(&d) {
                        diags.push(diag(ln, DiagCode::BadDim, format!("dimension {d} outside 1..=9")));
                    } else {
                        if raw.dim.is_some() {
                            diags.push(diag(ln, DiagCode::Duplicate, "dim given twice"));
                        }
                        raw.dim = Some((ln, d as usize));
                    }
                }
            }
            "sigma" => {
                let mut rows = Vec::new();
                while i < lines.len() {
                    let (rl, row) = lines[i];
                    let first = row.split_whitespace().next().unwrap_or("");
                    if DIRECTIVES.contains(&first) {
                        break;
                    }
                    i += 1;
                    let mut entries = Vec::new();
                    for tok in row.split_whitespace() {
                        match parse_rational(tok) {
                            Some(q) => entries.push(q),
                            None => diags.push(diag(rl, DiagCode::BadRational, format!("bad rational literal {tok:?}"))),
                        }
                    }
                    rows.push((rl, entries));
                }
                if raw.sigma.is_some() {
                    diags.push(diag(ln, DiagCode::Duplicate, "sigma given twice"));
                }
                raw.sigma = Some((ln, rows));
            }
            "ideal" => {
                let (gens, end) = block(&mut i, false);
                if end.is_none() {
                    diags.push(diag(ln, DiagCode::Syntax, "ideal block is not terminated by `end`"));
                }
                if raw.ideal.is_some() {
                    diags.push(diag(ln, DiagCode::Duplicate, "ideal given twice"));
                }
                raw.ideal = Some((ln, gens));
            }
            "component" => {
                let (gens, end) = block(&mut i, true);
                let mut comp = RawComponent {
                    line: ln,
                    ideal: gens,
                    prime: None,
                };
                let end = if end == Some("prime") {
                    let (p, end) = block(&mut i, false);
                    comp.prime = Some(p);
                    end
                } else {
                    end
                };
                if end.is_none() {
                    diags.push(diag(ln, DiagCode::Syntax, "component block is not terminated by `end`"));
                }
                raw.components.push(comp);
            }
            "ambient" => {
                let (gens, end) = block(&mut i, false);
                if end.is_none() {
                    diags.push(diag(ln, DiagCode::Syntax, "ambient block is not terminated by `end`"));
                }
                raw.ambient = Some((ln, gens));
            }
            "point" => raw.points.push((ln, rest.join(" "))),
            "horizon" => raw.horizon = number(&mut diags).or(raw.horizon),
            "maxdeg" => raw.maxdeg = number(&mut diags).or(raw.maxdeg),
            "oracle" => raw.oracle = number(&mut diags).or(raw.oracle),
            "gorenstein" => match rest.as_slice() {
                ["yes"] => raw.gorenstein = Some(true),
                ["no"] => raw.gorenstein = Some(false),
                _ => diags.push(diag(ln, DiagCode::Syntax, "expected `gorenstein yes` or `gorenstein no`")),
            },
            "end" | "prime" => diags.push(diag(ln, DiagCode::Syntax, format!("`{head}` outside a block"))),
            _ => diags.push(diag(ln, DiagCode::UnknownDirective, format!("unknown directive {head:?}"))),
        }
    }
    let field = raw.field.map(|(_, f)| f).unwrap_or(Field::Rational);
    let Some((_, dim)) = raw.dim else {
        diags.push(diag(0, DiagCode::Missing, "missing `dim`"));
        return Err(diags);
    };
    let nvars = dim + 1;

    let sigma = match raw.sigma {
        None => {
            diags.push(diag(0, DiagCode::Missing, "missing `sigma`"));
            None
        }
        Some((ln, rows)) => {
            let square = rows.len() == nvars && rows.iter().all(|(_, r)| r.len() == nvars);
            if !square {
                let shape: Vec<String> = rows.iter().map(|(_, r)| r.len().to_string()).collect();
                diags.push(diag(
                    ln,
                    DiagCode::NonsquareSigma,
                    format!(
                        "sigma must be {nvars}x{nvars}; got {} rows of lengths [{}]",
                        rows.len(),
                        shape.join(", ")
                    ),
                ));
                None
            } else {
                match ProjAutomorphism::new(rows.into_iter().map(|(_, r)| r).collect(), field) {
                    Ok(s) => Some(s),
                    Err(Error::SingularMatrix) => {
                        diags.push(diag(ln, DiagCode::SingularSigma, "sigma has zero determinant"));
                        None
                    }
                    Err(e) => {
                        diags.push(diag(ln, DiagCode::BadRational, e.to_string()));
                        None
                    }
                }
            }
        }
    };

    let gens = |diags: &mut Vec<Diagnostic>, lines: &Lines| -> Option<Vec<Poly>> {
        let mut out = Vec::new();
        let mut ok = true;
        for (ln, text) in lines {
            for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                match parse_poly(part, nvars, field) {
                    Ok(p) if !p.is_homogeneous() => {
                        diags.push(diag(*ln, DiagCode::Inhomogeneous, format!("{part} is not homogeneous")));
                        ok = false;
                    }
                    Ok(p) => out.push(p),
                    Err(e) => {
                        diags.push(diag(*ln, DiagCode::BadPoly, e.to_string()));
                        ok = false;
                    }
                }
            }
        }
        ok.then_some(out)
    };
    let ideal_of = |diags: &mut Vec<Diagnostic>, ln: usize, lines: &Lines| -> Option<HomIdeal> {
        let g = gens(diags, lines)?;
        match HomIdeal::new(nvars, field, g) {
            Ok(i) => Some(i),
            Err(e) => {
                diags.push(diag(ln, DiagCode::BadPoly, e.to_string()));
                None
            }
        }
    };

    let ideal = match &raw.ideal {
        None => {
            diags.push(diag(0, DiagCode::Missing, "missing `ideal` block"));
            None
        }
        Some((ln, lines)) => {
            let i = ideal_of(&mut diags, *ln, lines);
            if i.as_ref().is_some_and(|i| i.is_zero()) {
                diags.push(diag(*ln, DiagCode::BadPoly, "the ideal of Z has no nonzero generators"));
            }
            i
        }
    };
    let mut components = Vec::new();
    for c in &raw.components {
        let ideal = ideal_of(&mut diags, c.line, &c.ideal);
        let prime = c.prime.as_ref().map(|p| ideal_of(&mut diags, c.line, p));
        if let Some(ideal) = ideal {
            match prime {
                Some(None) => {}
                Some(Some(p)) => components.push(DeclaredComponent { ideal, prime: Some(p) }),
                None => components.push(DeclaredComponent { ideal, prime: None }),
            }
        }
    }
    let ambient = raw.ambient.as_ref().and_then(|(ln, lines)| {
        let a = ideal_of(&mut diags, *ln, lines)?;
        if let Some(i) = &ideal {
            if !i.contains_ideal(&a) {
                diags.push(diag(*ln, DiagCode::AmbientNotContained, "Z is not contained in the ambient variety"));
            }
        }
        if let Some(s) = &sigma {
            if pullback_ideal(&a, s, 1) != a {
                diags.push(diag(*ln, DiagCode::AmbientNotInvariant, "sigma does not preserve the ambient variety"));
            }
        }
        Some(a)
    });
    let mut points = Vec::new();
    for (ln, text) in &raw.points {
        match RationalPoint::parse(text) {
            Ok(p) if p.nvars() == nvars => points.push(p),
            Ok(p) => diags.push(diag(
                *ln,
                DiagCode::BadPoint,
                format!("point has {} coordinates; expected {nvars}", p.nvars()),
            )),
            Err(e) => diags.push(diag(*ln, DiagCode::BadPoint, e.to_string())),
        }
    }
    if !diags.is_empty() {
        diags.sort_by_key(|d| d.line);
        return Err(diags);
    }
    Ok(SceneFile {
        field,
        dim,
        sigma: sigma.expect("validated"),
        ideal: ideal.expect("validated"),
        components,
        ambient,
        points,
        horizon: raw.horizon.unwrap_or(DEFAULT_HORIZON).max(1),
        maxdeg: raw.maxdeg.unwrap_or(DEFAULT_MAXDEG),
        oracle: raw.oracle.unwrap_or(DEFAULT_ORACLE),
        gorenstein: raw.gorenstein,
    })
}
