//! Graph argument resolution.
//!
//! A graph argument is accepted in three forms, tried in this order:
//!
//! 1. family shorthand — `path:7`, `kb:2,6`, `petersen`, or nested
//!    combinators like `union(complete:3,complete:2)`,
//! 2. a path to an edge-list file,
//! 3. a graph6 string (`-` reads one graph6 line from standard input).
//!
//! The shorthand is committed to as soon as the leading identifier names a
//! known family or combinator, so malformed parameters surface as shorthand
//! errors instead of falling through to a confusing graph6 complaint.

use std::fmt;
use std::io::Read;
use std::path::Path;

use marcello_core::{generate, parse_edge_list, parse_graph6, pearl, Family, Graph};

/// Why a graph argument could not be resolved.
#[derive(Debug)]
pub enum InputError {
    /// The argument committed to the shorthand grammar but failed it.
    Shorthand { arg: String, detail: String },
    /// The argument named an existing file that could not be used.
    File { path: String, detail: String },
    /// Standard input could not be read or decoded.
    Stdin { detail: String },
    /// Nothing matched: not shorthand, not a file, not graph6.
    Unrecognized { arg: String, graph6_detail: String },
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Shorthand { arg, detail } => {
                write!(f, "bad family shorthand {arg:?}: {detail}")
            }
            InputError::File { path, detail } => {
                write!(f, "edge-list file {path:?}: {detail}")
            }
            InputError::Stdin { detail } => write!(f, "standard input: {detail}"),
            InputError::Unrecognized { arg, graph6_detail } => write!(
                f,
                "{arg:?} is not family shorthand, an existing edge-list file, or graph6 \
                 (graph6 read failed: {graph6_detail})"
            ),
        }
    }
}

impl std::error::Error for InputError {}

/// Resolves a command-line graph argument to a graph.
pub fn resolve_graph(arg: &str) -> Result<Graph, InputError> {
    if arg == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| InputError::Stdin { detail: e.to_string() })?;
        return parse_graph6(text.trim()).map_err(|e| InputError::Stdin { detail: e.to_string() });
    }
    if starts_with_known_name(arg) {
        return parse_shorthand(arg).map_err(|detail| InputError::Shorthand {
            arg: arg.to_string(),
            detail,
        });
    }
    if Path::new(arg).exists() {
        let text = std::fs::read_to_string(arg).map_err(|e| InputError::File {
            path: arg.to_string(),
            detail: e.to_string(),
        })?;
        return parse_edge_list(&text).map_err(|e| InputError::File {
            path: arg.to_string(),
            detail: e.to_string(),
        });
    }
    parse_graph6(arg).map_err(|e| InputError::Unrecognized {
        arg: arg.to_string(),
        graph6_detail: e.to_string(),
    })
}

const NAMES: [&str; 11] = [
    "path", "cycle", "complete", "null", "kb", "star", "wheel", "petersen", "union", "join",
    "pearl",
];

fn starts_with_known_name(arg: &str) -> bool {
    let ident: String =
        arg.trim_start().chars().take_while(|c| c.is_ascii_alphabetic()).collect();
    NAMES.contains(&ident.as_str())
}

// ============================================================================
// Shorthand grammar
// ============================================================================

/// Parses the family shorthand:
///
/// ```text
/// expr   := ("union" | "join" | "pearl") "(" expr ("," expr)+ ")"
///         | name (":" number ("," number)*)?
/// ```
///
/// `union` and `join` fold left over two or more operands; `pearl` chains
/// its operands with single linking edges.  `star:n` is the star with `n`
/// leaves and `wheel:n` the wheel with an `n`-cycle rim (orders `n + 1`).
pub fn parse_shorthand(text: &str) -> Result<Graph, String> {
    let mut scanner = Scanner { bytes: text.as_bytes(), pos: 0 };
    let g = scanner.expr()?;
    scanner.skip_spaces();
    if scanner.pos != scanner.bytes.len() {
        return Err(format!("unexpected trailing input at byte {}", scanner.pos));
    }
    Ok(g)
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Scanner<'_> {
    fn expr(&mut self) -> Result<Graph, String> {
        let name = self.ident()?;
        match name.as_str() {
            "union" | "join" | "pearl" => {
                let parts = self.operands(&name)?;
                combine(&name, &parts)
            }
            _ => {
                let params = self.params()?;
                family(&name, &params)
            }
        }
    }

    fn operands(&mut self, name: &str) -> Result<Vec<Graph>, String> {
        self.expect(b'(', &format!("{name} needs a parenthesized operand list"))?;
        let mut parts = vec![self.expr()?];
        while self.eat(b',') {
            parts.push(self.expr()?);
        }
        self.expect(b')', "missing closing parenthesis")?;
        if parts.len() < 2 {
            return Err(format!("{name} needs at least two operands"));
        }
        Ok(parts)
    }

    fn params(&mut self) -> Result<Vec<usize>, String> {
        if !self.eat(b':') {
            return Ok(Vec::new());
        }
        let mut params = vec![self.number()?];
        // Inside a combinator a comma may separate operands instead of
        // parameters, so only continue the list when a digit follows.
        while self.comma_before_digit() {
            params.push(self.number()?);
        }
        Ok(params)
    }

    fn comma_before_digit(&mut self) -> bool {
        let saved = self.pos;
        if self.eat(b',') {
            self.skip_spaces();
            if self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                return true;
            }
        }
        self.pos = saved;
        false
    }

    fn ident(&mut self) -> Result<String, String> {
        self.skip_spaces();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(format!("expected a family name at byte {start}"));
        }
        Ok(String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned())
    }

    fn number(&mut self) -> Result<usize, String> {
        self.skip_spaces();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(format!("expected a number at byte {start}"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("digits are ASCII")
            .parse()
            .map_err(|_| format!("number at byte {start} is out of range"))
    }

    fn eat(&mut self, byte: u8) -> bool {
        self.skip_spaces();
        if self.pos < self.bytes.len() && self.bytes[self.pos] == byte {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, byte: u8, message: &str) -> Result<(), String> {
        if self.eat(byte) {
            Ok(())
        } else {
            Err(format!("{message} at byte {}", self.pos))
        }
    }

    fn skip_spaces(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }
}

fn family(name: &str, params: &[usize]) -> Result<Graph, String> {
    let build = |family: Family| generate(&family).map_err(|e| e.to_string());
    match (name, params) {
        ("path", &[n]) => build(Family::Path(n)),
        ("cycle", &[n]) => build(Family::Cycle(n)),
        ("complete", &[n]) => build(Family::Complete(n)),
        ("null", &[n]) => build(Family::Null(n)),
        ("kb", &[m, n]) => build(Family::CompleteBipartite(m, n)),
        ("star", &[n]) => build(Family::Star(n)),
        ("wheel", &[n]) => build(Family::Wheel(n)),
        ("petersen", &[]) => build(Family::Petersen),
        ("petersen", _) => Err(String::from("petersen takes no parameters")),
        ("path" | "cycle" | "complete" | "null" | "star" | "wheel", _) => {
            Err(format!("{name} takes exactly one parameter, as in {name}:6"))
        }
        ("kb", _) => Err(String::from("kb takes two parameters, as in kb:2,6")),
        _ => Err(format!("unknown family {name:?}")),
    }
}

fn combine(op: &str, parts: &[Graph]) -> Result<Graph, String> {
    match op {
        "union" => fold(parts, Graph::disjoint_union),
        "join" => fold(parts, Graph::join),
        "pearl" => pearl(parts).map_err(|e| e.to_string()),
        _ => unreachable!("callers only pass combinator names"),
    }
}

fn fold(
    parts: &[Graph],
    op: impl Fn(&Graph, &Graph) -> Result<Graph, marcello_core::GraphError>,
) -> Result<Graph, String> {
    let mut acc = parts[0].clone();
    for part in &parts[1..] {
        acc = op(&acc, part).map_err(|e| e.to_string())?;
    }
    Ok(acc)
}

// ============================================================================
// Tests
// ============================================================================
