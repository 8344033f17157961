//! Line-oriented UTF-8 text formats for the objects that cross the CLI
//! boundary: k-partite graphs, pattern graphs, job instances (word or block
//! numerics), and reduction files (an instance plus threshold and provenance
//! trailers).
//!
//! Every writer/parser pair round-trips bit-exactly; parse errors carry the
//! 1-based line number of the offending line.

use std::sync::Arc;

use thiserror::Error;

use crate::blockint::{parse_bint, BlockInt, BlockLayout};
use crate::graphs::{KPartiteGraph, PatternGraph};
use crate::reduce::{ReductionOutput, VariantKind};
use crate::sched::Instance;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

fn bail<T>(line: usize, msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Parse {
        line,
        msg: msg.into(),
    })
}

/// Instance whose numeric realization was chosen by the file header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyInstance {
    Word(Instance<u64>),
    Block(Instance<BlockInt>),
}

impl AnyInstance {
    pub fn len(&self) -> usize {
        match self {
            AnyInstance::Word(inst) => inst.len(),
            AnyInstance::Block(inst) => inst.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn render(&self) -> String {
        match self {
            AnyInstance::Word(inst) => write_instance_word(inst),
            AnyInstance::Block(inst) => write_instance_block(inst),
        }
    }
}

/// The parts of a reduction file; gadget bookkeeping and the source graph are
/// not serialized, so a parsed reduction carries exactly what solving and
/// threshold comparison need.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedReduction {
    pub kind: VariantKind,
    pub pattern: Option<PatternGraph>,
    pub instance: Instance<BlockInt>,
    pub threshold: BlockInt,
}

impl ParsedReduction {
    pub fn render(&self) -> String {
        write_reduction_parts(self.kind, self.pattern.as_ref(), &self.instance, &self.threshold)
    }
}

/// Either file kind accepted by the solve command, distinguished by the
/// header keyword.
#[derive(Debug, Clone)]
pub enum SolveInput {
    Reduction(ParsedReduction),
    Instance(AnyInstance),
}

// ---------------------------------------------------------------------------
// Writers
// ---------------------------------------------------------------------------

pub fn write_graph(g: &KPartiteGraph) -> String {
    let sizes = join_u32(g.sizes().iter().copied());
    let mut out = format!("graph k={} sizes={}\n", g.classes(), sizes);
    for (i, j) in g.class_pairs() {
        for &(a, b) in g.pair_edges(i, j) {
            out.push_str(&format!("edge i={i} j={j} a={a} b={b}\n"));
        }
    }
    out
}

pub fn write_pattern(h: &PatternGraph) -> String {
    let mut out = format!("pattern l={}\n", h.classes());
    for &(i, j) in h.edges() {
        out.push_str(&format!("hedge i={i} j={j}\n"));
    }
    out
}

pub fn write_instance_word(inst: &Instance<u64>) -> String {
    let mut out = format!("instance jobs={} numeric=word\n", inst.len());
    for job in inst.jobs() {
        debug_assert!(!job.tag.chars().any(char::is_whitespace));
        out.push_str(&format!(
            "job id={} tag={} p={} w={} d={}\n",
            job.id, job.tag, job.p, job.w, job.d
        ));
    }
    out
}

pub fn write_instance_block(inst: &Instance<BlockInt>) -> String {
    let lay = inst.ctx();
    let pairs = join_pairs(lay.pairs());
    let mut out = format!(
        "instance jobs={} numeric=block layout k={} m={} N={} pairs={}\n",
        inst.len(),
        lay.classes(),
        lay.edges_per_pair(),
        lay.radix(),
        pairs
    );
    for job in inst.jobs() {
        debug_assert!(!job.tag.chars().any(char::is_whitespace));
        out.push_str(&format!(
            "job id={} tag={} p={} w={} d={}\n",
            job.id,
            job.tag,
            job.p.to_bint_string(),
            job.w.to_bint_string(),
            job.d.to_bint_string()
        ));
    }
    out
}

pub fn write_reduction(red: &ReductionOutput) -> String {
    write_reduction_parts(red.kind, red.pattern.as_ref(), &red.instance, &red.threshold)
}

pub fn write_reduction_parts(
    kind: VariantKind,
    pattern: Option<&PatternGraph>,
    instance: &Instance<BlockInt>,
    threshold: &BlockInt,
) -> String {
    let mut out = format!("reduction variant={}", kind.code());
    if let Some(h) = pattern {
        out.push_str(&format!(" pattern={}", join_pairs(h.edges())));
    }
    out.push('\n');
    out.push_str(&write_instance_block(instance));
    out.push_str(&format!("threshold {}\n", threshold.to_bint_string()));
    for job in instance.jobs() {
        out.push_str(&format!("provenance id={} tag={}\n", job.id, job.tag));
    }
    out
}

fn join_u32(values: impl Iterator<Item = u32>) -> String {
    values.map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn join_pairs(pairs: &[(u32, u32)]) -> String {
    pairs
        .iter()
        .map(|&(i, j)| format!("{i}-{j}"))
        .collect::<Vec<_>>()
        .join(",")
}

// ---------------------------------------------------------------------------
// Parsers
// ---------------------------------------------------------------------------

pub fn parse_graph(text: &str) -> Result<KPartiteGraph, FormatError> {
    let mut doc = Doc::new(text);
    let g = parse_graph_body(&mut doc)?;
    doc.finish()?;
    Ok(g)
}

pub fn parse_pattern(text: &str) -> Result<PatternGraph, FormatError> {
    let mut doc = Doc::new(text);
    let h = parse_pattern_body(&mut doc)?;
    doc.finish()?;
    Ok(h)
}

pub fn parse_instance(text: &str) -> Result<AnyInstance, FormatError> {
    let mut doc = Doc::new(text);
    let inst = parse_instance_body(&mut doc)?;
    doc.finish()?;
    Ok(inst)
}

pub fn parse_reduction(text: &str) -> Result<ParsedReduction, FormatError> {
    let mut doc = Doc::new(text);
    let red = parse_reduction_body(&mut doc)?;
    doc.finish()?;
    Ok(red)
}

/// Accepts either a reduction file or a bare instance file, keyed on the
/// first line's keyword.
pub fn parse_solve_input(text: &str) -> Result<SolveInput, FormatError> {
    let mut doc = Doc::new(text);
    let input = match doc.peek() {
        Some((_, line)) if has_keyword(line, "reduction") => {
            SolveInput::Reduction(parse_reduction_body(&mut doc)?)
        }
        Some((_, line)) if has_keyword(line, "instance") => {
            SolveInput::Instance(parse_instance_body(&mut doc)?)
        }
        Some((n, line)) => {
            return bail(n, format!("expected a 'reduction' or 'instance' header, got: {line}"))
        }
        None => return bail(1, "empty input"),
    };
    doc.finish()?;
    Ok(input)
}

fn parse_graph_body(doc: &mut Doc) -> Result<KPartiteGraph, FormatError> {
    let (line, text) = doc.expect("a 'graph' header")?;
    let mut f = Fields::open(line, text, "graph")?;
    let k = f.u32_field("k")?;
    let sizes = parse_u32_list(line, f.raw_field("sizes")?)?;
    f.done()?;
    if sizes.len() != k as usize {
        return bail(line, format!("k={} does not match {} class sizes", k, sizes.len()));
    }
    let mut g = KPartiteGraph::new(sizes).map_err(|e| lined(line, e))?;
    while let Some((eline, etext)) = doc.peek() {
        if !has_keyword(etext, "edge") {
            break;
        }
        doc.next();
        let mut f = Fields::open(eline, etext, "edge")?;
        let i = f.u32_field("i")?;
        let j = f.u32_field("j")?;
        let a = f.u32_field("a")?;
        let b = f.u32_field("b")?;
        f.done()?;
        g.add_edge(i, j, a, b).map_err(|e| lined(eline, e))?;
    }
    Ok(g)
}

fn parse_pattern_body(doc: &mut Doc) -> Result<PatternGraph, FormatError> {
    let (line, text) = doc.expect("a 'pattern' header")?;
    let mut f = Fields::open(line, text, "pattern")?;
    let classes = f.u32_field("l")?;
    f.done()?;
    let mut edges = Vec::new();
    while let Some((eline, etext)) = doc.peek() {
        if !has_keyword(etext, "hedge") {
            break;
        }
        doc.next();
        let mut f = Fields::open(eline, etext, "hedge")?;
        let i = f.u32_field("i")?;
        let j = f.u32_field("j")?;
        f.done()?;
        edges.push((i, j));
    }
    PatternGraph::new(classes, edges).map_err(|e| lined(line, e))
}

fn parse_instance_body(doc: &mut Doc) -> Result<AnyInstance, FormatError> {
    let (line, text) = doc.expect("an 'instance' header")?;
    let mut f = Fields::open(line, text, "instance")?;
    let expected = f.usize_field("jobs")?;
    let numeric = f.raw_field("numeric")?;
    match numeric {
        "word" => {
            f.done()?;
            let inst = parse_word_jobs(doc, line, expected)?;
            Ok(AnyInstance::Word(inst))
        }
        "block" => {
            if !f.literal("layout") {
                return bail(line, "block instances need a 'layout' clause");
            }
            let k = f.u32_field("k")?;
            let m = f.u32_field("m")?;
            let radix = f.u32_field("N")?;
            let pairs = parse_pair_list(line, f.raw_field("pairs")?)?;
            f.done()?;
            let layout = BlockLayout::new(k, m, radix, pairs).map_err(|e| lined(line, e))?;
            let inst = parse_block_jobs(doc, line, expected, &layout)?;
            Ok(AnyInstance::Block(inst))
        }
        other => bail(line, format!("numeric must be 'word' or 'block', got '{other}'")),
    }
}

fn parse_word_jobs(
    doc: &mut Doc,
    header_line: usize,
    expected: usize,
) -> Result<Instance<u64>, FormatError> {
    let mut inst = Instance::new(());
    while let Some((line, text)) = doc.peek() {
        if !has_keyword(text, "job") {
            break;
        }
        doc.next();
        let mut f = Fields::open(line, text, "job")?;
        let id = f.usize_field("id")?;
        if id != inst.len() {
            return bail(line, format!("job id {} out of order, expected {}", id, inst.len()));
        }
        let tag = f.raw_field("tag")?.to_string();
        let p = f.word_value("p")?;
        let w = f.word_value("w")?;
        let d = f.word_value("d")?;
        f.done()?;
        inst.push(tag, p, w, d);
    }
    if inst.len() != expected {
        return bail(
            header_line,
            format!("header says jobs={} but the file has {} job lines", expected, inst.len()),
        );
    }
    Ok(inst)
}

fn parse_block_jobs(
    doc: &mut Doc,
    header_line: usize,
    expected: usize,
    layout: &Arc<BlockLayout>,
) -> Result<Instance<BlockInt>, FormatError> {
    let mut inst = Instance::new(layout.clone());
    while let Some((line, text)) = doc.peek() {
        if !has_keyword(text, "job") {
            break;
        }
        doc.next();
        let mut f = Fields::open(line, text, "job")?;
        let id = f.usize_field("id")?;
        if id != inst.len() {
            return bail(line, format!("job id {} out of order, expected {}", id, inst.len()));
        }
        let tag = f.raw_field("tag")?.to_string();
        let p = f.bint_value("p", layout)?;
        let w = f.bint_value("w", layout)?;
        let d = f.bint_value("d", layout)?;
        f.done()?;
        inst.push(tag, p, w, d);
    }
    if inst.len() != expected {
        return bail(
            header_line,
            format!("header says jobs={} but the file has {} job lines", expected, inst.len()),
        );
    }
    Ok(inst)
}

fn parse_reduction_body(doc: &mut Doc) -> Result<ParsedReduction, FormatError> {
    let (line, text) = doc.expect("a 'reduction' header")?;
    let mut f = Fields::open(line, text, "reduction")?;
    let kind = match f.raw_field("variant")? {
        "p" => VariantKind::PSharp,
        "w" => VariantKind::WSharp,
        other => return bail(line, format!("variant must be 'p' or 'w', got '{other}'")),
    };
    let pattern_edges = match f.opt_raw_field("pattern") {
        Some(tok) => Some(parse_pair_list(line, tok)?),
        None => None,
    };
    f.done()?;

    let instance = match parse_instance_body(doc)? {
        AnyInstance::Block(inst) => inst,
        AnyInstance::Word(_) => return bail(line, "reduction instances use block numerics"),
    };
    let layout = instance.ctx().clone();
    let pattern = match pattern_edges {
        Some(edges) => {
            Some(PatternGraph::new(layout.classes(), edges).map_err(|e| lined(line, e))?)
        }
        None => None,
    };

    let (tline, ttext) = doc.expect("a 'threshold' trailer")?;
    let lit = match ttext.strip_prefix("threshold ") {
        Some(lit) => lit,
        None => return bail(tline, format!("expected a 'threshold' trailer, got: {ttext}")),
    };
    let threshold = parse_bint(lit)
        .and_then(|raw| raw.into_block_int(&layout))
        .map_err(|e| lined(tline, e))?;

    for job in instance.jobs() {
        let (pline, ptext) = doc.expect("a 'provenance' trailer")?;
        let mut f = Fields::open(pline, ptext, "provenance")?;
        let id = f.usize_field("id")?;
        let tag = f.raw_field("tag")?;
        f.done()?;
        if id != job.id || tag != job.tag {
            return bail(
                pline,
                format!(
                    "provenance id={} tag={} does not match job id={} tag={}",
                    id, tag, job.id, job.tag
                ),
            );
        }
    }

    Ok(ParsedReduction {
        kind,
        pattern,
        instance,
        threshold,
    })
}

// ---------------------------------------------------------------------------
// Low-level line scanning
// ---------------------------------------------------------------------------

/// Non-blank lines of the input with their 1-based numbers; trailing `\r` is
/// tolerated so CRLF files parse.
struct Doc<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Doc<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(idx, raw)| (idx + 1, raw.trim_end()))
            .filter(|&(_, s)| !s.is_empty())
            .collect();
        Doc { lines, pos: 0 }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.peek();
        if item.is_some() {
            self.pos += 1;
        }
        item
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str), FormatError> {
        let eof = self.lines.last().map_or(1, |&(n, _)| n + 1);
        match self.next() {
            Some(item) => Ok(item),
            None => bail(eof, format!("expected {what}, found end of file")),
        }
    }

    fn finish(&mut self) -> Result<(), FormatError> {
        match self.peek() {
            None => Ok(()),
            Some((line, text)) => bail(line, format!("unexpected trailing content: {text}")),
        }
    }
}

fn has_keyword(line: &str, keyword: &str) -> bool {
    line.strip_prefix(keyword)
        .is_some_and(|rest| rest.is_empty() || rest.starts_with(' '))
}

fn lined(line: usize, err: impl std::fmt::Display) -> FormatError {
    FormatError::Parse {
        line,
        msg: err.to_string(),
    }
}

/// Scans `key=value` fields left to right on one line.  Values normally run
/// to the next space; digit-vector literals are self-delimiting at their
/// closing `]` so a literal's embedded ` d=[...]` never collides with the
/// due-date field that may follow it.
struct Fields<'a> {
    line: usize,
    rest: &'a str,
}

enum RawValue<'a> {
    Word(u64),
    Bint(&'a str),
}

impl<'a> Fields<'a> {
    fn open(line: usize, text: &'a str, keyword: &str) -> Result<Self, FormatError> {
        match text.strip_prefix(keyword) {
            Some("") => Ok(Fields { line, rest: "" }),
            Some(rest) => match rest.strip_prefix(' ') {
                Some(rest) => Ok(Fields { line, rest }),
                None => bail(line, format!("expected a '{keyword}' line, got: {text}")),
            },
            None => bail(line, format!("expected a '{keyword}' line, got: {text}")),
        }
    }

    /// Consumes `key=<token>` where the token runs to the next space.
    fn raw_field(&mut self, key: &str) -> Result<&'a str, FormatError> {
        let rest = self.require_key(key)?;
        let (tok, rest) = match rest.split_once(' ') {
            Some((tok, rest)) => (tok, rest),
            None => (rest, ""),
        };
        if tok.is_empty() {
            return bail(self.line, format!("empty value for field '{key}'"));
        }
        self.rest = rest;
        Ok(tok)
    }

    /// Like `raw_field` but absent keys are not an error.
    fn opt_raw_field(&mut self, key: &str) -> Option<&'a str> {
        if self.peek_key(key) {
            self.raw_field(key).ok()
        } else {
            None
        }
    }

    /// Consumes a bare word (no `=`), e.g. the `layout` clause marker.
    fn literal(&mut self, word: &str) -> bool {
        if self.rest == word {
            self.rest = "";
            return true;
        }
        if let Some(rest) = self.rest.strip_prefix(word) {
            if let Some(rest) = rest.strip_prefix(' ') {
                self.rest = rest;
                return true;
            }
        }
        false
    }

    fn u32_field(&mut self, key: &str) -> Result<u32, FormatError> {
        let tok = self.raw_field(key)?;
        tok.parse::<u32>()
            .map_err(|_| lined(self.line, format!("field '{key}' is not an integer: {tok}")))
    }

    fn usize_field(&mut self, key: &str) -> Result<usize, FormatError> {
        let tok = self.raw_field(key)?;
        tok.parse::<usize>()
            .map_err(|_| lined(self.line, format!("field '{key}' is not an integer: {tok}")))
    }

    fn word_value(&mut self, key: &str) -> Result<u64, FormatError> {
        match self.value_field(key)? {
            RawValue::Word(v) => Ok(v),
            RawValue::Bint(_) => bail(
                self.line,
                format!("field '{key}' must be a plain integer in a word instance"),
            ),
        }
    }

    fn bint_value(&mut self, key: &str, layout: &Arc<BlockLayout>) -> Result<BlockInt, FormatError> {
        match self.value_field(key)? {
            RawValue::Bint(lit) => parse_bint(lit)
                .and_then(|raw| raw.into_block_int(layout))
                .map_err(|e| lined(self.line, e)),
            RawValue::Word(_) => bail(
                self.line,
                format!("field '{key}' must be a digit-vector literal in a block instance"),
            ),
        }
    }

    fn value_field(&mut self, key: &str) -> Result<RawValue<'a>, FormatError> {
        let rest = self.require_key(key)?;
        if rest.starts_with("bint ") {
            let Some(end) = rest.find(']') else {
                self.rest = rest;
                return bail(self.line, format!("unterminated digit list in field '{key}'"));
            };
            let lit = &rest[..=end];
            let tail = &rest[end + 1..];
            self.rest = match tail.strip_prefix(' ') {
                Some(t) => t,
                None if tail.is_empty() => "",
                None => {
                    return bail(
                        self.line,
                        format!("expected a space after the '{key}' literal, got: {tail}"),
                    )
                }
            };
            Ok(RawValue::Bint(lit))
        } else {
            self.rest = rest;
            let tok = {
                let (tok, rest) = match self.rest.split_once(' ') {
                    Some((tok, rest)) => (tok, rest),
                    None => (self.rest, ""),
                };
                self.rest = rest;
                tok
            };
            let v = tok.parse::<u64>().map_err(|_| {
                lined(self.line, format!("field '{key}' is not an integer: {tok}"))
            })?;
            Ok(RawValue::Word(v))
        }
    }

    fn require_key(&mut self, key: &str) -> Result<&'a str, FormatError> {
        let mut prefix = String::with_capacity(key.len() + 1);
        prefix.push_str(key);
        prefix.push('=');
        match self.rest.strip_prefix(&prefix) {
            Some(rest) => Ok(rest),
            None => bail(self.line, format!("expected field '{key}=', got: {}", self.rest)),
        }
    }

    fn peek_key(&self, key: &str) -> bool {
        self.rest.starts_with(key) && self.rest[key.len()..].starts_with('=')
    }

    fn done(self) -> Result<(), FormatError> {
        if self.rest.is_empty() {
            Ok(())
        } else {
            bail(self.line, format!("unexpected trailing fields: {}", self.rest))
        }
    }
}

fn parse_u32_list(line: usize, tok: &str) -> Result<Vec<u32>, FormatError> {
    tok.split(',')
        .map(|piece| {
            piece
                .parse::<u32>()
                .map_err(|_| lined(line, format!("bad integer list entry: {piece}")))
        })
        .collect()
}

fn parse_pair_list(line: usize, tok: &str) -> Result<Vec<(u32, u32)>, FormatError> {
    tok.split(',')
        .map(|piece| {
            let bad = || lined(line, format!("bad pair list entry: {piece}"));
            let (i, j) = piece.split_once('-').ok_or_else(bad)?;
            Ok((
                i.parse::<u32>().map_err(|_| bad())?,
                j.parse::<u32>().map_err(|_| bad())?,
            ))
        })
        .collect()
}
