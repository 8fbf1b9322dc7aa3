//! The scenario file format.
//!
//! A file is a list of sections, each a header line followed by
//! `key = value` lines. `#` starts a comment. Integer vectors are
//! whitespace-separated, rows and vectors in a list are separated by `;`,
//! and matrices given per group generator are separated by `|`.
//!
//! ```text
//! [group]
//! kind = cyclic
//! order = 2
//!
//! [module Z]
//! rank = 1
//! relations =
//! action = -1
//! ```

use std::fmt::Write as _;

use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic {
        order: usize,
    },
    /// Multiplication table; `generators` fixes the order in which
    /// per-generator data is read, otherwise a generating set is chosen.
    Table {
        table: Vec<Vec<usize>>,
        generators: Option<Vec<usize>>,
    },
    /// Permutations of `0..degree`, composed left to right.
    Permutations {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleBody {
    /// `Z^rank` modulo the span of `relations` (columns), with one action
    /// matrix per group generator.
    Presented {
        rank: usize,
        relations: Vec<Vec<i64>>,
        action: Vec<Vec<Vec<i64>>>,
    },
    /// A finite group given by its addition table, with one permutation of
    /// its elements per group generator.
    Tabulated {
        addition: Vec<Vec<u32>>,
        action: Vec<Vec<u32>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    pub name: String,
    pub body: ModuleBody,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSetSpec {
    pub name: String,
    pub size: usize,
    pub images: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScenarioSpec {
    pub points: String,
    pub ambient: String,
    pub target: String,
    /// Values of the family on the least point of each orbit.
    pub pointmap: Vec<Vec<i64>>,
    /// Generating columns of the submodule of trivial classes.
    pub triv: Vec<Vec<i64>>,
    /// Rows of the map from the submodule to the target.
    pub phi: Vec<Vec<i64>>,
    pub components: Option<Vec<usize>>,
    pub basepoint: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleSpec {
    pub module: String,
    /// Values on the group generators.
    pub values: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationsSpec {
    pub generators: Vec<String>,
    pub degree_one: Option<String>,
    /// Equations `lhs = rhs`.
    pub relations: Vec<String>,
    pub query: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    pub p: u64,
    pub n: u32,
    pub a: i64,
    pub b: i64,
    pub base_degree: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScenarioFile {
    pub group: Option<GroupSpec>,
    pub modules: Vec<ModuleSpec>,
    pub gsets: Vec<GSetSpec>,
    pub scenario: Option<ScenarioSpec>,
    pub cocycle: Option<CocycleSpec>,
    pub relations: Option<RelationsSpec>,
    pub curve: Option<CurveSpec>,
}

struct Entry {
    key: String,
    value: String,
    line: usize,
    /// Column of the first character of the value.
    col: usize,
}

struct Section {
    kind: String,
    name: Option<String>,
    line: usize,
    entries: Vec<Entry>,
}

impl Section {
    fn take(&mut self, key: &str) -> Option<Entry> {
        let i = self.entries.iter().position(|e| e.key == key)?;
        Some(self.entries.remove(i))
    }

    fn require(&mut self, key: &str) -> Result<Entry, ParseError> {
        self.take(key)
            .ok_or_else(|| ParseError::new(self.line, 1, format!("[{}] needs `{key}`", self.kind)))
    }

    fn finish(self) -> Result<(), ParseError> {
        match self.entries.first() {
            Some(e) => Err(ParseError::new(
                e.line,
                1,
                format!("unknown key `{}` in [{}]", e.key, self.kind),
            )),
            None => Ok(()),
        }
    }

    fn name(&self) -> Result<String, ParseError> {
        self.name
            .clone()
            .ok_or_else(|| ParseError::new(self.line, 1, format!("[{}] needs a name", self.kind)))
    }

    fn no_name(&self) -> Result<(), ParseError> {
        match &self.name {
            Some(_) => Err(ParseError::new(self.line, 1, format!("[{}] takes no name", self.kind))),
            None => Ok(()),
        }
    }
}

fn strip_comment(line: &str) -> &str {
    line.find('#').map_or(line, |i| &line[..i])
}

fn chars_before(s: &str, byte: usize) -> usize {
    s[..byte].chars().count()
}

fn sections(text: &str) -> Result<Vec<Section>, ParseError> {
    let mut out: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = strip_comment(raw);
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = chars_before(content, content.len() - content.trim_start().len()) + 1;
        if let Some(rest) = trimmed.strip_prefix('[') {
            let inner = rest
                .strip_suffix(']')
                .ok_or_else(|| ParseError::new(line, indent, "unterminated section header"))?;
            let mut words = inner.split_whitespace();
            let kind = words
                .next()
                .ok_or_else(|| ParseError::new(line, indent, "empty section header"))?
                .to_string();
            if !["group", "module", "gset", "scenario", "cocycle", "relations", "curve"].contains(&kind.as_str()) {
                return Err(ParseError::new(line, indent + 1, format!("unknown section [{kind}]")));
            }
            let name = words.next().map(str::to_string);
            if words.next().is_some() {
                return Err(ParseError::new(line, indent, "section header has extra words"));
            }
            out.push(Section {
                kind,
                name,
                line,
                entries: Vec::new(),
            });
            continue;
        }
        let section = out
            .last_mut()
            .ok_or_else(|| ParseError::new(line, indent, "expected a section header such as [group]"))?;
        let eq = content
            .find('=')
            .ok_or_else(|| ParseError::new(line, indent, "expected `key = value`"))?;
        let key = content[..eq].trim().to_string();
        if key.is_empty() {
            return Err(ParseError::new(line, indent, "missing key before `=`"));
        }
        if section.entries.iter().any(|e| e.key == key) {
            return Err(ParseError::new(line, indent, format!("duplicate key `{key}`")));
        }
        let after = &content[eq + 1..];
        let lead = after.len() - after.trim_start().len();
        out.last_mut().expect("checked").entries.push(Entry {
            key,
            value: after.trim().to_string(),
            line,
            col: chars_before(content, eq + 1 + lead) + 1,
        });
    }
    Ok(out)
}

/// Splits `s` at `sep`, trimming each piece and returning its column.
fn split_at_col(s: &str, col: usize, sep: char) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for piece in s.split(sep) {
        let lead = piece.len() - piece.trim_start().len();
        out.push((piece.trim(), col + chars_before(s, start + lead)));
        start += piece.len() + sep.len_utf8();
    }
    out
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, col: usize) -> Result<T, ParseError> {
    tok.parse()
        .map_err(|_| ParseError::new(line, col, format!("expected an integer, found `{tok}`")))
}

fn words_at(s: &str, col: usize) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices().chain(std::iter::once((s.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (true, Some(b)) => {
                out.push((&s[b..i], col + chars_before(s, b)));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

fn vector<T: std::str::FromStr>(s: &str, line: usize, col: usize) -> Result<Vec<T>, ParseError> {
    words_at(s, col)
        .into_iter()
        .map(|(w, c)| parse_num(w, line, c))
        .collect()
}

fn scalar<T: std::str::FromStr>(e: &Entry) -> Result<T, ParseError> {
    let words = words_at(&e.value, e.col);
    match words.as_slice() {
        [(w, c)] => parse_num(w, e.line, *c),
        _ => Err(ParseError::new(
            e.line,
            e.col,
            format!("`{}` takes a single integer", e.key),
        )),
    }
}

/// `;`-separated nonempty vectors; an empty value is the empty list.
fn vector_list<T: std::str::FromStr>(s: &str, line: usize, col: usize) -> Result<Vec<Vec<T>>, ParseError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_at_col(s, col, ';')
        .into_iter()
        .map(|(piece, c)| {
            if piece.is_empty() {
                return Err(ParseError::new(line, c, "empty row"));
            }
            vector(piece, line, c)
        })
        .collect()
}

fn rectangular<T>(rows: &[Vec<T>], width: Option<usize>, e: &Entry, what: &str) -> Result<(), ParseError> {
    let w = width.or_else(|| rows.first().map(Vec::len));
    if let Some(w) = w {
        if rows.iter().any(|r| r.len() != w) {
            return Err(ParseError::new(
                e.line,
                e.col,
                format!("{what}: every row needs {w} entries"),
            ));
        }
    }
    Ok(())
}

fn per_generator<T: std::str::FromStr>(e: &Entry) -> Result<Vec<Vec<Vec<T>>>, ParseError> {
    if e.value.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_at_col(&e.value, e.col, '|')
        .into_iter()
        .map(|(piece, c)| {
            if piece.is_empty() {
                return Err(ParseError::new(e.line, c, "empty entry between `|`"));
            }
            vector_list(piece, e.line, c)
        })
        .collect()
}

fn permutation_list<T: std::str::FromStr>(e: &Entry) -> Result<Vec<Vec<T>>, ParseError> {
    per_generator::<T>(e)?
        .into_iter()
        .map(|m| match <[Vec<T>; 1]>::try_from(m) {
            Ok([p]) => Ok(p),
            Err(_) => Err(ParseError::new(e.line, e.col, "a permutation is a single row")),
        })
        .collect()
}

fn parse_group(mut s: Section) -> Result<GroupSpec, ParseError> {
    s.no_name()?;
    let kind = s.require("kind")?;
    let spec = match kind.value.as_str() {
        "cyclic" => GroupSpec::Cyclic {
            order: scalar(&s.require("order")?)?,
        },
        "table" => {
            let e = s.require("table")?;
            let table = vector_list(&e.value, e.line, e.col)?;
            rectangular(&table, Some(table.len()), &e, "table")?;
            let generators = s
                .take("generators")
                .map(|e| vector(&e.value, e.line, e.col))
                .transpose()?;
            GroupSpec::Table { table, generators }
        }
        "permutations" => {
            let degree = scalar(&s.require("degree")?)?;
            let generators = permutation_list(&s.require("generators")?)?;
            GroupSpec::Permutations { degree, generators }
        }
        other => {
            return Err(ParseError::new(
                kind.line,
                kind.col,
                format!("unknown group kind `{other}` (cyclic, table, permutations)"),
            ))
        }
    };
    s.finish()?;
    Ok(spec)
}

fn parse_module(mut s: Section) -> Result<ModuleSpec, ParseError> {
    let name = s.name()?;
    let tabulated = match s.take("kind") {
        None => false,
        Some(e) if e.value == "presented" => false,
        Some(e) if e.value == "tabulated" => true,
        Some(e) => {
            return Err(ParseError::new(
                e.line,
                e.col,
                format!("unknown module kind `{}`", e.value),
            ))
        }
    };
    let body = if tabulated {
        let e = s.require("addition")?;
        let addition = vector_list(&e.value, e.line, e.col)?;
        rectangular(&addition, Some(addition.len()), &e, "addition table")?;
        let action = permutation_list(&s.require("action")?)?;
        ModuleBody::Tabulated { addition, action }
    } else {
        let e = s.require("rank")?;
        let rank: usize = scalar(&e)?;
        if rank == 0 {
            return Err(ParseError::new(e.line, e.col, "rank must be positive"));
        }
        let e = s.require("relations")?;
        let relations = vector_list(&e.value, e.line, e.col)?;
        rectangular(&relations, Some(rank), &e, "relations")?;
        let e = s.require("action")?;
        let action = per_generator(&e)?;
        for m in &action {
            if m.len() != rank {
                return Err(ParseError::new(
                    e.line,
                    e.col,
                    format!("action matrices must be {rank} x {rank}"),
                ));
            }
            rectangular(m, Some(rank), &e, "action matrix")?;
        }
        ModuleBody::Presented {
            rank,
            relations,
            action,
        }
    };
    s.finish()?;
    Ok(ModuleSpec { name, body })
}

fn parse_gset(mut s: Section) -> Result<GSetSpec, ParseError> {
    let name = s.name()?;
    let e = s.require("size")?;
    let size: usize = scalar(&e)?;
    if size == 0 {
        return Err(ParseError::new(e.line, e.col, "a G-set needs at least one point"));
    }
    let images = permutation_list(&s.require("images")?)?;
    s.finish()?;
    Ok(GSetSpec { name, size, images })
}

fn parse_scenario(mut s: Section) -> Result<ScenarioSpec, ParseError> {
    s.no_name()?;
    let points = s.require("points")?.value;
    let ambient = s.require("ambient")?.value;
    let target = s.require("target")?.value;
    let e = s.require("pointmap")?;
    let pointmap = vector_list(&e.value, e.line, e.col)?;
    let e = s.require("triv")?;
    let triv = vector_list(&e.value, e.line, e.col)?;
    rectangular(&triv, None, &e, "triv")?;
    let e = s.require("phi")?;
    let phi = vector_list(&e.value, e.line, e.col)?;
    rectangular(&phi, Some(triv.len()), &e, "phi")?;
    let components = s
        .take("components")
        .map(|e| vector(&e.value, e.line, e.col))
        .transpose()?;
    let basepoint = s.take("basepoint").map(|e| scalar(&e)).transpose()?.unwrap_or(0);
    s.finish()?;
    Ok(ScenarioSpec {
        points,
        ambient,
        target,
        pointmap,
        triv,
        phi,
        components,
        basepoint,
    })
}

fn parse_cocycle(mut s: Section) -> Result<CocycleSpec, ParseError> {
    s.no_name()?;
    let module = s.require("module")?.value;
    let e = s.require("values")?;
    let values = vector_list(&e.value, e.line, e.col)?;
    s.finish()?;
    Ok(CocycleSpec { module, values })
}

fn parse_relations(mut s: Section) -> Result<RelationsSpec, ParseError> {
    s.no_name()?;
    let generators = s
        .require("generators")?
        .value
        .split_whitespace()
        .map(str::to_string)
        .collect();
    let degree_one = s.take("degree_one").map(|e| e.value);
    let relations = match s.take("relations") {
        Some(e) if !e.value.is_empty() => e.value.split(';').map(|r| r.trim().to_string()).collect(),
        _ => Vec::new(),
    };
    let query = s.take("query").map(|e| e.value);
    s.finish()?;
    Ok(RelationsSpec {
        generators,
        degree_one,
        relations,
        query,
    })
}

fn parse_curve(mut s: Section) -> Result<CurveSpec, ParseError> {
    s.no_name()?;
    let spec = CurveSpec {
        p: scalar(&s.require("p")?)?,
        n: scalar(&s.require("n")?)?,
        a: scalar(&s.require("a")?)?,
        b: scalar(&s.require("b")?)?,
        base_degree: s.take("base_degree").map(|e| scalar(&e)).transpose()?.unwrap_or(1),
    };
    s.finish()?;
    Ok(spec)
}

fn once<T>(slot: &mut Option<T>, value: T, line: usize, kind: &str) -> Result<(), ParseError> {
    if slot.replace(value).is_some() {
        return Err(ParseError::new(line, 1, format!("[{kind}] appears twice")));
    }
    Ok(())
}

/// Parses a scenario file. Only the shape of the data is checked here;
/// the algebraic conditions are checked when the objects are built.
pub fn parse(text: &str) -> Result<ScenarioFile, ParseError> {
    let mut file = ScenarioFile::default();
    for s in sections(text)? {
        let line = s.line;
        match s.kind.as_str() {
            "group" => once(&mut file.group, parse_group(s)?, line, "group")?,
            "module" => {
                let m = parse_module(s)?;
                if file.modules.iter().any(|x| x.name == m.name) {
                    return Err(ParseError::new(line, 1, format!("module `{}` defined twice", m.name)));
                }
                file.modules.push(m);
            }
            "gset" => {
                let g = parse_gset(s)?;
                if file.gsets.iter().any(|x| x.name == g.name) {
                    return Err(ParseError::new(line, 1, format!("gset `{}` defined twice", g.name)));
                }
                file.gsets.push(g);
            }
            "scenario" => once(&mut file.scenario, parse_scenario(s)?, line, "scenario")?,
            "cocycle" => once(&mut file.cocycle, parse_cocycle(s)?, line, "cocycle")?,
            "relations" => once(&mut file.relations, parse_relations(s)?, line, "relations")?,
            "curve" => once(&mut file.curve, parse_curve(s)?, line, "curve")?,
            _ => unreachable!("section kinds are checked while reading headers"),
        }
    }
    let needs_group =
        !file.modules.is_empty() || !file.gsets.is_empty() || file.scenario.is_some() || file.cocycle.is_some();
    let standalone = file.relations.is_some() || file.curve.is_some();
    if file.group.is_none() && (needs_group || !standalone) {
        return Err(ParseError::new(1, 1, "missing [group]"));
    }
    Ok(file)
}

fn join_vec<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn join_rows<T: ToString>(rows: &[Vec<T>]) -> String {
    rows.iter().map(|r| join_vec(r)).collect::<Vec<_>>().join("; ")
}

fn join_matrices<T: ToString>(ms: &[Vec<Vec<T>>]) -> String {
    ms.iter().map(|m| join_rows(m)).collect::<Vec<_>>().join(" | ")
}

fn kv(out: &mut String, key: &str, value: &str) {
    if value.is_empty() {
        let _ = writeln!(out, "{key} =");
    } else {
        let _ = writeln!(out, "{key} = {value}");
    }
}

/// Writes a file that [`parse`] reads back to the same value.
pub fn print(file: &ScenarioFile) -> String {
    let mut out = String::new();
    let mut blocks: Vec<String> = Vec::new();
    if let Some(g) = &file.group {
        out.push_str("[group]\n");
        match g {
            GroupSpec::Cyclic { order } => {
                kv(&mut out, "kind", "cyclic");
                kv(&mut out, "order", &order.to_string());
            }
            GroupSpec::Table { table, generators } => {
                kv(&mut out, "kind", "table");
                kv(&mut out, "table", &join_rows(table));
                if let Some(gens) = generators {
                    kv(&mut out, "generators", &join_vec(gens));
                }
            }
            GroupSpec::Permutations { degree, generators } => {
                kv(&mut out, "kind", "permutations");
                kv(&mut out, "degree", &degree.to_string());
                kv(
                    &mut out,
                    "generators",
                    &generators.iter().map(|p| join_vec(p)).collect::<Vec<_>>().join(" | "),
                );
            }
        }
        blocks.push(std::mem::take(&mut out));
    }
    for m in &file.modules {
        let _ = writeln!(out, "[module {}]", m.name);
        match &m.body {
            ModuleBody::Presented {
                rank,
                relations,
                action,
            } => {
                kv(&mut out, "rank", &rank.to_string());
                kv(&mut out, "relations", &join_rows(relations));
                kv(&mut out, "action", &join_matrices(action));
            }
            ModuleBody::Tabulated { addition, action } => {
                kv(&mut out, "kind", "tabulated");
                kv(&mut out, "addition", &join_rows(addition));
                kv(
                    &mut out,
                    "action",
                    &action.iter().map(|p| join_vec(p)).collect::<Vec<_>>().join(" | "),
                );
            }
        }
        blocks.push(std::mem::take(&mut out));
    }
    for g in &file.gsets {
        let _ = writeln!(out, "[gset {}]", g.name);
        kv(&mut out, "size", &g.size.to_string());
        kv(
            &mut out,
            "images",
            &g.images.iter().map(|p| join_vec(p)).collect::<Vec<_>>().join(" | "),
        );
        blocks.push(std::mem::take(&mut out));
    }
    if let Some(s) = &file.scenario {
        out.push_str("[scenario]\n");
        kv(&mut out, "points", &s.points);
        kv(&mut out, "ambient", &s.ambient);
        kv(&mut out, "target", &s.target);
        kv(&mut out, "pointmap", &join_rows(&s.pointmap));
        kv(&mut out, "triv", &join_rows(&s.triv));
        kv(&mut out, "phi", &join_rows(&s.phi));
        if let Some(c) = &s.components {
            kv(&mut out, "components", &join_vec(c));
        }
        kv(&mut out, "basepoint", &s.basepoint.to_string());
        blocks.push(std::mem::take(&mut out));
    }
    if let Some(c) = &file.cocycle {
        out.push_str("[cocycle]\n");
        kv(&mut out, "module", &c.module);
        kv(&mut out, "values", &join_rows(&c.values));
        blocks.push(std::mem::take(&mut out));
    }
    if let Some(r) = &file.relations {
        out.push_str("[relations]\n");
        kv(&mut out, "generators", &r.generators.join(" "));
        if let Some(d) = &r.degree_one {
            kv(&mut out, "degree_one", d);
        }
        kv(&mut out, "relations", &r.relations.join("; "));
        if let Some(q) = &r.query {
            kv(&mut out, "query", q);
        }
        blocks.push(std::mem::take(&mut out));
    }
    if let Some(c) = &file.curve {
        out.push_str("[curve]\n");
        kv(&mut out, "p", &c.p.to_string());
        kv(&mut out, "n", &c.n.to_string());
        kv(&mut out, "a", &c.a.to_string());
        kv(&mut out, "b", &c.b.to_string());
        kv(&mut out, "base_degree", &c.base_degree.to_string());
        blocks.push(std::mem::take(&mut out));
    }
    blocks.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    const SWAP: &str = "\
[group]
kind = cyclic
order = 2

[module Z]   # the ambient
rank = 1
relations =
action = -1

[module A]
rank = 1
relations = 2
action = 1

[gset S]
size = 2
images = 1 0

[scenario]
points = S
ambient = Z
target = A
pointmap = 1
triv = 2
phi = 1
";

    #[test]
    fn parses_the_swap_model() {
        let f = parse(SWAP).unwrap();
        assert_eq!(f.group, Some(GroupSpec::Cyclic { order: 2 }));
        assert_eq!(
            f.modules[0].body,
            ModuleBody::Presented {
                rank: 1,
                relations: vec![],
                action: vec![vec![vec![-1]]]
            }
        );
        let s = f.scenario.as_ref().unwrap();
        assert_eq!(s.pointmap, vec![vec![1]]);
        assert_eq!(s.basepoint, 0);
        assert_eq!(parse(&print(&f)).unwrap(), f);
    }

    #[test]
    fn empty_file_needs_a_group() {
        let e = parse("").unwrap_err();
        assert_eq!(e.message, "missing [group]");
        assert!(parse("# only a comment\n\n").is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("[group]\nkind = cyclic\norder = two\n").unwrap_err();
        assert_eq!((e.line, e.col), (3, 9));
        let e = parse("[group]\nkind = cyclic\norder = 2\n[module M]\nrank = 2\nrelations =\naction = 1 0; 0 x\n")
            .unwrap_err();
        assert_eq!((e.line, e.col), (7, 17));
        let e = parse("[grup]\n").unwrap_err();
        assert_eq!((e.line, e.col), (1, 2));
        let e = parse("[group]\nkind = cyclic\norder = 2\ncolour = red\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("unknown key"));
    }

    #[test]
    fn arity_mismatches_are_rejected() {
        let e = parse("[group]\nkind = cyclic\norder = 2\n[module M]\nrank = 2\nrelations =\naction = 1 0; 0\n")
            .unwrap_err();
        assert!(e.message.contains("2 entries"), "{e}");
        let e = parse("[group]\nkind = table\ntable = 0 1; 1\n").unwrap_err();
        assert!(e.message.contains("table"), "{e}");
    }

    #[test]
    fn relations_and_curves_stand_alone() {
        let text = "[relations]\ngenerators = P Q\ndegree_one = Q\nrelations = 2Q = 0; 2P = Q\nquery = P\n\n[curve]\np = 7\nn = 2\na = 1\nb = 3\n";
        let f = parse(text).unwrap();
        assert!(f.group.is_none());
        assert_eq!(f.relations.as_ref().unwrap().relations, vec!["2Q = 0", "2P = Q"]);
        assert_eq!(f.curve.as_ref().unwrap().base_degree, 1);
        assert_eq!(parse(&print(&f)).unwrap(), f);
    }
}
