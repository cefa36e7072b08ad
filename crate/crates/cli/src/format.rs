//! The line-oriented module file format.
//!
//! ```text
//! # CL5 fixture
//! field Q                  # or: field GF 7
//! ladder 5                 # or: vertices 1 2 3  plus  arrow <label> <source> <target>
//! dims 0 0 1 2 1/0 0 0 1 1 # ladders; otherwise: dims 1=1 2=0 ...
//! map a3' 1; 1             # rows separated by ';', entries integers or a/b
//! ```
//!
//! Maps that are left out are zero. Blank lines and `#` comments are ignored.

use std::fmt::Write as _;
use std::sync::Arc;

use relbetti::poset::Arrow;
use relbetti::{BoundQuiver, Field, Mat, ModRef, PersModule, Scalar};

/// A parse failure, with the 1-based line it was found on (0 when the whole
/// document is at fault).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// A parsed file before module validation.
#[derive(Debug, Clone)]
pub struct ModuleFile {
    pub field: Field,
    pub quiver: Arc<BoundQuiver>,
    pub dims: Vec<usize>,
    /// Indexed by arrow; `None` where the file gives no matrix.
    pub maps: Vec<Option<Mat>>,
}

pub fn parse_field(text: &str) -> Result<Field, String> {
    let words: Vec<&str> = text.split_whitespace().collect();
    match words.as_slice() {
        ["Q"] => Ok(Field::Rationals),
        ["GF", p] => {
            let p: u64 = p.parse().map_err(|_| format!("bad characteristic {p:?}"))?;
            Field::prime(p).map_err(|e| e.to_string())
        }
        _ => Err(format!("unknown field {text:?}; expected 'Q' or 'GF <p>'")),
    }
}

fn parse_scalar(field: Field, token: &str) -> Result<Scalar, String> {
    let x: Scalar = token.parse().map_err(|_| format!("bad matrix entry {token:?}"))?;
    field.reduce(x).map_err(|e| e.to_string())
}

fn parse_matrix(field: Field, text: &str) -> Result<Vec<Vec<Scalar>>, String> {
    text.split(';')
        .map(|row| {
            row.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| parse_scalar(field, t))
                .collect::<Result<Vec<_>, _>>()
        })
        .filter(|r| !matches!(r, Ok(v) if v.is_empty()))
        .collect()
}

impl ModuleFile {
    /// Parses a document. `field_override` replaces the file's field line.
    pub fn parse(text: &str, field_override: Option<Field>) -> Result<ModuleFile, ParseError> {
        let mut field = field_override;
        let mut ladder: Option<(usize, usize)> = None;
        let mut vertices: Option<(usize, Vec<String>)> = None;
        let mut arrows: Vec<(usize, String, String, String)> = Vec::new();
        let mut dims_line: Option<(usize, String)> = None;
        let mut map_lines: Vec<(usize, String, String)> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match key {
                "field" => {
                    let f = parse_field(rest).or_else(|m| err(line_no, m))?;
                    field.get_or_insert(f);
                }
                "ladder" => {
                    let n = rest.parse().or_else(|_| err(line_no, format!("bad ladder size {rest:?}")))?;
                    ladder = Some((line_no, n));
                }
                "vertices" => vertices = Some((line_no, rest.split_whitespace().map(str::to_string).collect())),
                "arrow" => {
                    let parts: Vec<&str> = rest.split_whitespace().collect();
                    let [label, s, t] = parts[..] else {
                        return err(line_no, "expected 'arrow <label> <source> <target>'");
                    };
                    arrows.push((line_no, label.into(), s.into(), t.into()));
                }
                "dims" => dims_line = Some((line_no, rest.to_string())),
                "map" => {
                    let (label, body) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                    map_lines.push((line_no, label.to_string(), body.to_string()));
                }
                other => return err(line_no, format!("unknown keyword {other:?}")),
            }
        }

        let field = field.unwrap_or(Field::Rationals);
        let quiver = match (ladder, vertices) {
            (Some((line, n)), None) => {
                if !arrows.is_empty() {
                    return err(arrows[0].0, "explicit arrows cannot be combined with 'ladder'");
                }
                BoundQuiver::commutative_ladder(n).or_else(|e| err(line, e.to_string()))?
            }
            (None, Some((line, names))) => {
                let index = |name: &str, at: usize| {
                    names.iter().position(|v| v == name).ok_or(ParseError { line: at, message: format!("unknown vertex {name:?}") })
                };
                let list = arrows
                    .iter()
                    .map(|(at, label, s, t)| Ok(Arrow { label: label.clone(), source: index(s, *at)?, target: index(t, *at)? }))
                    .collect::<Result<Vec<_>, ParseError>>()?;
                BoundQuiver::new(names, list).or_else(|e| err(line, e.to_string()))?
            }
            (Some((line, _)), Some(_)) => return err(line, "give either 'ladder' or 'vertices', not both"),
            (None, None) => return err(0, "missing quiver: expected 'ladder <n>' or 'vertices ...'"),
        };
        let quiver = Arc::new(quiver);

        let nv = quiver.num_vertices();
        let dims = match dims_line {
            None => vec![0; nv],
            Some((line, text)) if text.contains('/') => quiver.parse_ladder_dims(&text).or_else(|e| err(line, e.to_string()))?,
            Some((line, text)) => {
                let mut dims = vec![0; nv];
                for pair in text.split_whitespace() {
                    let Some((v, d)) = pair.split_once('=') else {
                        return err(line, format!("expected 'vertex=dim', got {pair:?}"));
                    };
                    let v = quiver.vertex_index(v).ok_or(ParseError { line, message: format!("unknown vertex {v:?}") })?;
                    dims[v] = d.parse().or_else(|_| err(line, format!("bad dimension {d:?}")))?;
                }
                dims
            }
        };

        let mut maps: Vec<Option<Mat>> = vec![None; quiver.arrows().len()];
        for (line, label, body) in map_lines {
            let a = quiver.arrow_index(&label).ok_or(ParseError { line, message: format!("unknown arrow {label:?}") })?;
            if maps[a].is_some() {
                return err(line, format!("arrow {label} given twice"));
            }
            let (s, t) = (quiver.arrows()[a].source, quiver.arrows()[a].target);
            let rows = parse_matrix(field, &body).or_else(|m| err(line, m))?;
            let (r, c) = (dims[t], dims[s]);
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                return err(line, format!("map {label} must be {r}×{c}"));
            }
            maps[a] = Some(Mat::from_rows(field, rows, c).or_else(|e| err(line, e.to_string()))?);
        }
        Ok(ModuleFile { field, quiver, dims, maps })
    }

    /// Builds and validates the module; failures here are validation errors,
    /// not parse errors.
    pub fn module(&self) -> relbetti::Result<ModRef> {
        let q = &self.quiver;
        let maps = q
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| m.clone().unwrap_or_else(|| Mat::zeros(self.field, self.dims[a.target], self.dims[a.source])))
            .collect();
        Ok(Arc::new(PersModule::new(q.clone(), self.field, self.dims.clone(), maps)?))
    }
}

/// Writes a module in normal form: every map between nonzero spaces is
/// written out, in arrow order.
pub fn serialize(m: &PersModule) -> String {
    let q = m.quiver();
    let mut out = String::new();
    match m.field() {
        Field::Rationals => out.push_str("field Q\n"),
        f => writeln!(out, "field GF {}", f.characteristic()).unwrap(),
    }
    match q.ladder_size() {
        Some(n) => {
            writeln!(out, "ladder {n}").unwrap();
            let dims = relbetti::poset::render_ladder_dims(n, m.dims());
            writeln!(out, "dims {}", dims.trim_start_matches('(').trim_end_matches(')')).unwrap();
        }
        None => {
            writeln!(out, "vertices {}", q.vertices().join(" ")).unwrap();
            for a in q.arrows() {
                writeln!(out, "arrow {} {} {}", a.label, q.vertex_label(a.source), q.vertex_label(a.target)).unwrap();
            }
            let dims: Vec<String> = (0..q.num_vertices()).map(|v| format!("{}={}", q.vertex_label(v), m.dim(v))).collect();
            writeln!(out, "dims {}", dims.join(" ")).unwrap();
        }
    }
    for (idx, a) in q.arrows().iter().enumerate() {
        let mat = m.map(idx);
        if mat.rows() == 0 || mat.cols() == 0 {
            continue;
        }
        let rows: Vec<String> = (0..mat.rows())
            .map(|r| mat.row(r).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        writeln!(out, "map {} {}", a.label, rows.join("; ")).unwrap();
    }
    out
}
