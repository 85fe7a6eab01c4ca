//! The line-oriented web script language.
//!
//! ```text
//! object 2,1,3      # bottom boundary
//! merge@1
//! split@1(1,2)
//! dot@2
//! ```
//!
//! Statements are read bottom to top. Besides the three generators there are
//! `cross@i`, `clasp@i`, `clasp@i(k)` and `sergeev <word>`. A script may hold
//! several summands, each introduced by `term <scalar>` and starting again
//! from the bottom boundary.

use std::fmt;

use qweb::combinat::Composition;
use qweb::scalar::GaussianRational;
use qweb::sergeev::SergeevElement;
use qweb::web::{crossing_stack, expand_clasp, sergeev_diagram, xi, Layer, WebCombination, WebExpr, WebStack};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("{line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{line}: `{statement}` does not fit: {message}")]
    Boundary { line: usize, statement: String, message: String },
    #[error("summands end on different boundaries ({first} and {other})")]
    Codomain { first: String, other: String },
}

/// One statement of a script.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Layer(Layer),
    Cross(usize),
    /// Clasp on the 1-strands starting at the given position; without a
    /// length it takes the whole run of consecutive 1-strands.
    Clasp(usize, Option<usize>),
    Sergeev(String),
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Layer(l) => write!(f, "{l}"),
            Statement::Cross(i) => write!(f, "cross@{i}"),
            Statement::Clasp(i, None) => write!(f, "clasp@{i}"),
            Statement::Clasp(i, Some(k)) => write!(f, "clasp@{i}({k})"),
            Statement::Sergeev(w) => write!(f, "sergeev {w}"),
        }
    }
}

/// A summand: a coefficient and its statements with their line numbers.
#[derive(Clone, Debug)]
pub struct Term {
    pub coefficient: GaussianRational,
    pub statements: Vec<(usize, Statement)>,
    pub stack: WebStack,
}

/// A parsed and boundary-checked script.
#[derive(Clone, Debug)]
pub struct WebScript {
    pub domain: Composition,
    pub codomain: Composition,
    pub terms: Vec<Term>,
}

impl WebScript {
    /// Each summand as an unexpanded product.
    pub fn stacks(&self) -> Vec<(GaussianRational, WebStack)> {
        self.terms.iter().map(|t| (t.coefficient.clone(), t.stack.clone())).collect()
    }

    /// The script as an expanded combination of webs.
    pub fn combination(&self) -> WebCombination {
        let mut out = WebCombination::zero(self.domain.clone(), self.codomain.clone());
        for t in &self.terms {
            let c = t.stack.expand().scale(&t.coefficient);
            out = out.add(&c).expect("common boundary");
        }
        out
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ScriptError {
    ScriptError::Syntax { line, column, message: message.into() }
}

/// Column (1-based) of `sub` inside `line`, assuming it is a subslice.
fn column_of(line: &str, sub: &str) -> usize {
    (sub.as_ptr() as usize).saturating_sub(line.as_ptr() as usize) + 1
}

fn parse_index(raw: &str, text: &str, line: usize) -> Result<usize, ScriptError> {
    match text.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(syntax(line, column_of(raw, text), format!("expected a positive integer, found `{text}`"))),
    }
}

fn parse_composition(raw: &str, text: &str, line: usize) -> Result<Composition, ScriptError> {
    let mut parts = Vec::new();
    for p in text.split(',') {
        let t = p.trim();
        parts.push(parse_index(raw, t, line)?);
    }
    Ok(Composition::new(parts))
}

/// `name@i` or `name@i(a)` or `name@i(a,b)`; returns the index and arguments.
fn parse_at<'a>(raw: &'a str, rest: &'a str, line: usize) -> Result<(usize, Vec<usize>), ScriptError> {
    let (idx, args) = match rest.find('(') {
        Some(k) => {
            let close = rest.rfind(')').filter(|&c| c == rest.len() - 1).ok_or_else(|| {
                syntax(line, column_of(raw, rest) + rest.len(), "missing `)`")
            })?;
            (&rest[..k], Some(&rest[k + 1..close]))
        }
        None => (rest, None),
    };
    let i = parse_index(raw, idx.trim(), line)?;
    let args = match args {
        None => Vec::new(),
        Some(a) => a.split(',').map(|t| parse_index(raw, t.trim(), line)).collect::<Result<_, _>>()?,
    };
    Ok((i, args))
}

fn parse_statement(raw: &str, body: &str, line: usize) -> Result<Statement, ScriptError> {
    if let Some(word) = body.strip_prefix("sergeev") {
        if word.is_empty() || word.starts_with(char::is_whitespace) {
            return Ok(Statement::Sergeev(word.split_whitespace().collect::<Vec<_>>().join(" ")));
        }
    }
    let Some((name, rest)) = body.split_once('@') else {
        return Err(syntax(line, column_of(raw, body), format!("unknown statement `{body}`")));
    };
    let (i, args) = parse_at(raw, rest, line)?;
    let col = column_of(raw, rest);
    let arity = |n: usize| -> Result<(), ScriptError> {
        if args.len() == n {
            Ok(())
        } else {
            Err(syntax(line, col, format!("`{name}` takes {n} argument(s), found {}", args.len())))
        }
    };
    match name.trim() {
        "merge" => arity(0).map(|_| Statement::Layer(Layer::Merge(i))),
        "split" => arity(2).map(|_| Statement::Layer(Layer::Split(i, args[0], args[1]))),
        "dot" => arity(0).map(|_| Statement::Layer(Layer::Dot(i))),
        "cross" => arity(0).map(|_| Statement::Cross(i)),
        "clasp" => match args.len() {
            0 => Ok(Statement::Clasp(i, None)),
            1 => Ok(Statement::Clasp(i, Some(args[0]))),
            n => Err(syntax(line, col, format!("`clasp` takes at most 1 argument, found {n}"))),
        },
        other => Err(syntax(line, column_of(raw, body), format!("unknown statement `{other}`"))),
    }
}

/// The factor contributed by one statement on top of `level`.
fn statement_factor(st: &Statement, level: &Composition) -> qweb::Result<WebStack> {
    match st {
        Statement::Layer(l) => {
            let w = WebExpr::new(level.clone(), vec![*l])?;
            Ok(WebStack::from_combination(WebCombination::from_expr(w)))
        }
        Statement::Cross(i) => crossing_stack(level, *i),
        Statement::Clasp(i, k) => {
            let k = match k {
                Some(k) => *k,
                None => level.parts.iter().skip(i.saturating_sub(1)).take_while(|&&x| x == 1).count(),
            };
            Ok(WebStack::from_combination(expand_clasp(level, *i, k)?))
        }
        Statement::Sergeev(word) => {
            let r = level.len();
            if level.parts.iter().any(|&x| x != 1) {
                return Err(qweb::Error::InvalidWeb(format!("sergeev needs 1-strands only, found ({level})")));
            }
            if SergeevElement::min_rank(word) > r {
                return Err(qweb::Error::InvalidWeb(format!("`{word}` does not act on {r} strands")));
            }
            let x = SergeevElement::parse_word(word, r)?;
            match x.terms().as_slice() {
                [(w, c)] => Ok(sergeev_diagram(w)?.scale(c)),
                _ => Ok(WebStack::from_combination(xi(&x)?)),
            }
        }
    }
}

/// Parses and boundary-checks a script.
pub fn parse_webscript(text: &str) -> Result<WebScript, ScriptError> {
    let mut domain: Option<Composition> = None;
    let mut terms: Vec<Term> = Vec::new();
    let mut last_line = 0;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        last_line = line;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix("object") {
            if domain.is_some() {
                return Err(syntax(line, column_of(raw, body), "a script has exactly one `object` line"));
            }
            let rest = rest.trim();
            if rest.is_empty() {
                return Err(syntax(line, column_of(raw, body) + 6, "`object` needs a composition"));
            }
            domain = Some(parse_composition(raw, rest, line)?);
            continue;
        }
        let Some(dom) = &domain else {
            return Err(syntax(line, column_of(raw, body), "expected `object` before any statement"));
        };
        if let Some(rest) = body.strip_prefix("term") {
            let rest = rest.trim();
            let c: GaussianRational =
                rest.parse().map_err(|_| syntax(line, column_of(raw, rest), format!("bad scalar `{rest}`")))?;
            terms.push(Term {
                coefficient: c,
                statements: Vec::new(),
                stack: WebStack::identity(dom.clone()).expect("positive parts"),
            });
            continue;
        }
        let st = parse_statement(raw, body, line)?;
        if terms.is_empty() {
            terms.push(Term {
                coefficient: GaussianRational::one(),
                statements: Vec::new(),
                stack: WebStack::identity(dom.clone()).expect("positive parts"),
            });
        }
        let term = terms.last_mut().expect("nonempty");
        let level = term.stack.codomain().clone();
        let factor = statement_factor(&st, &level).map_err(|e| ScriptError::Boundary {
            line,
            statement: st.to_string(),
            message: e.to_string(),
        })?;
        term.stack = term.stack.clone().then_stack(factor).expect("factor starts at the current level");
        term.statements.push((line, st));
    }
    let domain = domain.ok_or_else(|| syntax(last_line.max(1), 1, "missing `object` line"))?;
    if terms.is_empty() {
        terms.push(Term {
            coefficient: GaussianRational::one(),
            statements: Vec::new(),
            stack: WebStack::identity(domain.clone()).expect("positive parts"),
        });
    }
    let codomain = terms[0].stack.codomain().clone();
    for t in &terms[1..] {
        if t.stack.codomain() != &codomain {
            return Err(ScriptError::Codomain { first: codomain.to_string(), other: t.stack.codomain().to_string() });
        }
    }
    Ok(WebScript { domain, codomain, terms })
}

/// Script text for a combination of plain webs; `term` blocks are emitted
/// unless it is a single web with coefficient 1.
pub fn combination_script(c: &WebCombination) -> String {
    match c.terms() {
        [(k, w)] if k.is_one() => w.to_script(),
        terms => {
            let mut s = format!("object {}\n", c.domain());
            for (k, w) in terms {
                s.push_str(&format!("term {k}\n"));
                for l in w.layers() {
                    s.push_str(&format!("{l}\n"));
                }
            }
            s
        }
    }
}

/// A deterministic layer-by-layer listing: each statement with the boundary
/// below and above it, bottom first.
pub fn render(script: &WebScript) -> String {
    let mut out = format!("web ({}) -> ({})\n", script.domain, script.codomain);
    for (n, t) in script.terms.iter().enumerate() {
        out.push_str(&format!("term {} coefficient {}\n", n + 1, t.coefficient));
        let mut level = script.domain.clone();
        out.push_str(&format!("  | {level}\n"));
        let width = t.statements.iter().map(|(_, s)| s.to_string().len()).max().unwrap_or(0);
        for (k, (_, st)) in t.statements.iter().enumerate() {
            let next = statement_factor(st, &level).expect("checked when parsed").codomain().clone();
            out.push_str(&format!("{:>3} {:<width$}  ({level}) -> ({next})\n", k + 1, st.to_string()));
            level = next;
        }
        out.push_str(&format!("  | {level}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_example() {
        let s = parse_webscript("object 2,1,3\nmerge@1").unwrap();
        assert_eq!(s.codomain, Composition::new(vec![3, 3]));
    }

    #[test]
    fn split_then_dot() {
        let s = parse_webscript("object 6\nsplit@1(2,4)\ndot@2\n").unwrap();
        let c = s.combination();
        assert_eq!(c.terms()[0].1.layers().len(), 2);
        assert_eq!(s.codomain, Composition::new(vec![2, 4]));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_webscript("object 2\n  splat@1").unwrap_err();
        assert_eq!(e, ScriptError::Syntax { line: 2, column: 3, message: "unknown statement `splat`".into() });
        let e = parse_webscript("object 2\nsplit@1(1,1)\nmerge@2").unwrap_err();
        assert!(matches!(e, ScriptError::Boundary { line: 3, .. }), "{e}");
        let e = parse_webscript("object 2,x").unwrap_err();
        assert!(matches!(e, ScriptError::Syntax { line: 1, column: 10, .. }), "{e}");
        assert!(parse_webscript("merge@1").is_err());
        assert!(parse_webscript("object 2\nsplit@1(1,1").is_err());
    }

    #[test]
    fn comments_and_terms() {
        let s = parse_webscript("# digon minus two\nobject 2\nterm 1\nsplit@1(1,1) # down\nmerge@1\nterm -2\n").unwrap();
        assert_eq!(s.terms.len(), 2);
        assert_eq!(s.terms[1].coefficient, GaussianRational::from_int(-2));
    }

    #[test]
    fn derived_statements() {
        let s = parse_webscript("object 1,1,1\ncross@1\nclasp@2\nsergeev c1 s2").unwrap();
        assert_eq!(s.codomain, Composition::omega(3));
        assert!(parse_webscript("object 2,1\nsergeev s1").is_err());
        assert!(parse_webscript("object 1,1\nsergeev s2").is_err());
        assert!(parse_webscript("object 1,2\nclasp@1(2)").is_err());
    }
}
