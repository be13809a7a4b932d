//! The line-oriented interchange format for categories, presheaves and
//! functors.
//!
//! A file is a sequence of sections, each opened by a header line such as
//! `[objects]`. Blank lines are ignored and `#` starts a comment. Names are
//! single tokens: no whitespace, no `#`, no braces, and nothing that reads
//! as a header (`[` lowercase letters `]`).

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use cathom::fincat::{CatError, FinCat, FinFunctor, FunctorViolation, Morphism, Violation};
use cathom::presheaf::{AbPresheaf, PresheafError, PresheafViolation, SetPresheaf};
use cathom::zlinalg::IntMatrix;
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("SyntaxError at line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("ValidationError{}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Validation { line: Option<usize>, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

fn invalid(line: Option<usize>, message: impl Into<String>) -> FormatError {
    FormatError::Validation { line, message: message.into() }
}

struct Section<'t> {
    name: &'static str,
    line: usize,
    entries: Vec<(usize, &'t str)>,
}

fn looks_like_header(s: &str) -> bool {
    let inner = s.strip_prefix('[').and_then(|c| c.strip_suffix(']'));
    inner.is_some_and(|w| !w.is_empty() && w.chars().all(|c| c.is_ascii_lowercase() || c == '_'))
}

struct Sections<'t> {
    list: Vec<Section<'t>>,
    /// Line number just past the end of the text.
    end: usize,
}

impl<'t> std::ops::Deref for Sections<'t> {
    type Target = [Section<'t>];
    fn deref(&self) -> &Self::Target {
        &self.list
    }
}

fn sections<'t>(text: &'t str, known: &[&'static str]) -> Result<Sections<'t>, FormatError> {
    let mut out: Vec<Section<'t>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(&name) =
            known.iter().find(|h| content.strip_prefix('[').and_then(|c| c.strip_suffix(']')) == Some(*h))
        {
            if out.iter().any(|s| s.name == name) {
                return Err(syntax(line, format!("section [{name}] appears twice")));
            }
            out.push(Section { name, line, entries: Vec::new() });
            continue;
        }
        // `[D1;pt]` is a name, `[objcts]` a misspelt header
        if looks_like_header(content) {
            return Err(syntax(line, format!("unknown section header {content}")));
        }
        match out.last_mut() {
            Some(s) => s.entries.push((line, content)),
            None => return Err(syntax(line, "content before the first section header")),
        }
    }
    Ok(Sections { list: out, end: text.lines().count() + 1 })
}

fn section<'a, 't>(all: &'a [Section<'t>], name: &str) -> &'a [(usize, &'t str)] {
    all.iter().find(|s| s.name == name).map_or(&[], |s| &s.entries)
}

fn require<'a, 't>(all: &'a Sections<'t>, name: &str) -> Result<&'a [(usize, &'t str)], FormatError> {
    if all.iter().any(|s| s.name == name) {
        Ok(section(all, name))
    } else {
        Err(syntax(all.end, format!("missing section [{name}] before the end of the file")))
    }
}

/// `lhs = rhs`, with `lhs` a single token.
fn assignment(line: usize, content: &str) -> Result<(&str, &str), FormatError> {
    let (lhs, rhs) = content.split_once('=').ok_or_else(|| syntax(line, "expected `name = value`"))?;
    let lhs = lhs.trim();
    if lhs.is_empty() || lhs.contains(char::is_whitespace) {
        return Err(syntax(line, "the left side must be a single name"));
    }
    Ok((lhs, rhs.trim()))
}

fn lookup(names: &HashMap<&str, usize>, name: &str, line: usize, what: &str) -> Result<usize, FormatError> {
    names.get(name).copied().ok_or_else(|| invalid(Some(line), format!("unknown {what} `{name}`")))
}

fn check_name(name: &str) -> Result<(), FormatError> {
    let bad = name.is_empty()
        || name.contains(|c: char| c.is_whitespace() || matches!(c, '#' | '{' | '}'))
        || name.contains("->")
        || name.ends_with(':')
        || looks_like_header(name);
    if bad {
        Err(invalid(None, format!("`{name}` cannot be written as a single token")))
    } else {
        Ok(())
    }
}

fn index_names<'a, I: IntoIterator<Item = &'a str>>(items: I) -> HashMap<&'a str, usize> {
    items.into_iter().enumerate().map(|(i, n)| (n, i)).collect()
}

// ---------------------------------------------------------------- categories

const CAT_SECTIONS: [&str; 4] = ["objects", "morphisms", "identity", "compose"];

pub fn parse_category(text: &str) -> Result<FinCat, FormatError> {
    let secs = sections(text, &CAT_SECTIONS)?;
    let mut objects: Vec<String> = Vec::new();
    let mut object_lines = Vec::new();
    for &(line, content) in require(&secs, "objects")? {
        if content.contains(char::is_whitespace) {
            return Err(syntax(line, "one object name per line"));
        }
        objects.push(content.to_string());
        object_lines.push(line);
    }
    let object_index = index_names(objects.iter().map(String::as_str));
    if object_index.len() != objects.len() {
        let dup = (0..objects.len()).find(|&i| object_index[objects[i].as_str()] != i).unwrap();
        return Err(syntax(object_lines[dup], format!("object `{}` listed twice", objects[dup])));
    }

    let mut morphisms: Vec<Morphism> = Vec::new();
    let mut morphism_lines = Vec::new();
    for &(line, content) in require(&secs, "morphisms")? {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let [name, src, "->", tgt] = tokens[..] else {
            return Err(syntax(line, "expected `name: src -> tgt`"));
        };
        let name = name
            .strip_suffix(':')
            .filter(|n| !n.is_empty())
            .ok_or_else(|| syntax(line, "expected `name: src -> tgt`"))?;
        let src = lookup(&object_index, src, line, "object")?;
        let tgt = lookup(&object_index, tgt, line, "object")?;
        morphisms.push(Morphism { name: name.to_string(), src, tgt });
        morphism_lines.push(line);
    }
    let mor_index = index_names(morphisms.iter().map(|m| m.name.as_str()));
    if mor_index.len() != morphisms.len() {
        let dup = (0..morphisms.len()).find(|&i| mor_index[morphisms[i].name.as_str()] != i).unwrap();
        return Err(syntax(morphism_lines[dup], format!("morphism `{}` listed twice", morphisms[dup].name)));
    }

    let mut identities = vec![usize::MAX; objects.len()];
    for &(line, content) in require(&secs, "identity")? {
        let (obj, name) = assignment(line, content)?;
        let a = lookup(&object_index, obj, line, "object")?;
        let f = lookup(&mor_index, name, line, "morphism")?;
        if identities[a] != usize::MAX {
            return Err(syntax(line, format!("second identity for `{obj}`")));
        }
        if morphisms[f].src != a || morphisms[f].tgt != a {
            return Err(invalid(Some(line), format!("identity `{name}` of `{obj}` is not an endomorphism of `{obj}`")));
        }
        identities[a] = f;
    }
    if let Some(a) = identities.iter().position(|&i| i == usize::MAX) {
        return Err(invalid(Some(object_lines[a]), format!("object `{}` has no identity", objects[a])));
    }

    let mut table = Vec::new();
    let mut table_lines: HashMap<(usize, usize), usize> = HashMap::new();
    for &(line, content) in section(&secs, "compose") {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let [g, "*", f, "=", h] = tokens[..] else {
            return Err(syntax(line, "expected `g * f = h`"));
        };
        let (gi, fi, hi) = (
            lookup(&mor_index, g, line, "morphism")?,
            lookup(&mor_index, f, line, "morphism")?,
            lookup(&mor_index, h, line, "morphism")?,
        );
        if morphisms[fi].tgt != morphisms[gi].src {
            return Err(invalid(
                Some(line),
                format!(
                    "`{g} * {f}`: {f} ends at {} but {g} starts at {}",
                    objects[morphisms[fi].tgt], objects[morphisms[gi].src]
                ),
            ));
        }
        if table_lines.insert((gi, fi), line).is_some() {
            return Err(invalid(Some(line), format!("composite `{g} * {f}` listed twice")));
        }
        table.push(((gi, fi), hi));
    }
    let cat = FinCat::from_table(objects, morphisms, identities, table).map_err(|e| match e {
        CatError::MissingComposite { g, f } => invalid(None, format!("composite `{g} * {f}` is missing")),
        other => invalid(None, other.to_string()),
    })?;
    if let Some(v) = cat.validate().into_iter().next() {
        let line = match v {
            Violation::CompositeTyping { g, f, .. } => table_lines.get(&(g, f)).copied(),
            _ => None,
        };
        return Err(invalid(line, describe_violation(&cat, &v)));
    }
    Ok(cat)
}

/// A category-law violation in terms of morphism names.
pub fn describe_violation(c: &FinCat, v: &Violation) -> String {
    let n = |f: usize| &c.morphism(f).name;
    match *v {
        Violation::CompositeTyping { g, f, h } => {
            format!(
                "composite {} * {} = {} does not go from the source of {} to the target of {}",
                n(g),
                n(f),
                n(h),
                n(f),
                n(g)
            )
        }
        Violation::IdentityLaw { f } => format!("identity law fails for {}", n(f)),
        Violation::Associativity { h, g, f } => {
            format!(
                "associativity fails for the triple ({}, {}, {}): ({0} * {1}) * {2} differs from {0} * ({1} * {2})",
                n(h),
                n(g),
                n(f)
            )
        }
    }
}

pub fn emit_category(c: &FinCat) -> Result<String, FormatError> {
    for name in c.objects() {
        check_name(name)?;
    }
    for m in c.morphisms() {
        check_name(&m.name)?;
    }
    let mut out = String::with_capacity(32 * c.composable_pair_count() + 1024);
    out.push_str("[objects]\n");
    for name in c.objects() {
        writeln!(out, "{name}").unwrap();
    }
    out.push_str("\n[morphisms]\n");
    for m in c.morphisms() {
        writeln!(out, "{}: {} -> {}", m.name, c.object_name(m.src), c.object_name(m.tgt)).unwrap();
    }
    out.push_str("\n[identity]\n");
    for a in 0..c.object_count() {
        writeln!(out, "{} = {}", c.object_name(a), c.morphism(c.identity(a)).name).unwrap();
    }
    out.push_str("\n[compose]\n");
    for ((g, f), h) in c.composition_entries() {
        if !c.is_identity(g) && !c.is_identity(f) {
            writeln!(out, "{} * {} = {}", c.morphism(g).name, c.morphism(f).name, c.morphism(h).name).unwrap();
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- presheaves

const PSH_SECTIONS: [&str; 2] = ["values", "action"];

fn braces(line: usize, value: &str) -> Result<Vec<&str>, FormatError> {
    let inner =
        value.strip_prefix('{').and_then(|v| v.strip_suffix('}')).ok_or_else(|| syntax(line, "expected `{...}`"))?;
    Ok(inner.split_whitespace().collect())
}

/// Assigns each object its entry, in any order; every object must appear.
fn per_object<'t>(c: &FinCat, entries: &[(usize, &'t str)]) -> Result<Vec<(usize, &'t str)>, FormatError> {
    let names = index_names(c.objects().iter().map(String::as_str));
    let mut out: Vec<Option<(usize, &str)>> = vec![None; c.object_count()];
    for &(line, content) in entries {
        let (obj, value) = assignment(line, content)?;
        let a = lookup(&names, obj, line, "object")?;
        if out[a].replace((line, value)).is_some() {
            return Err(syntax(line, format!("`{obj}` given twice")));
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(a, v)| v.ok_or_else(|| invalid(None, format!("no value given for object `{}`", c.object_name(a)))))
        .collect()
}

/// Non-identity morphisms must appear; identities may.
fn per_morphism<'t>(c: &FinCat, entries: &[(usize, &'t str)]) -> Result<Vec<Option<(usize, &'t str)>>, FormatError> {
    let names = index_names(c.morphisms().iter().map(|m| m.name.as_str()));
    let mut out: Vec<Option<(usize, &str)>> = vec![None; c.morphism_count()];
    for &(line, content) in entries {
        let (mor, value) = assignment(line, content)?;
        let f = lookup(&names, mor, line, "morphism")?;
        if out[f].replace((line, value)).is_some() {
            return Err(syntax(line, format!("`{mor}` given twice")));
        }
    }
    if let Some(f) = (0..c.morphism_count()).find(|&f| out[f].is_none() && !c.is_identity(f)) {
        return Err(invalid(None, format!("no action given for morphism `{}`", c.morphism(f).name)));
    }
    Ok(out)
}

fn presheaf_error(c: &FinCat, e: PresheafError) -> FormatError {
    match e {
        PresheafError::Invalid(v) => invalid(None, describe_presheaf_violation(c, &v)),
        other => invalid(None, other.to_string()),
    }
}

pub fn describe_presheaf_violation(c: &FinCat, v: &PresheafViolation) -> String {
    let n = |f: usize| &c.morphism(f).name;
    match *v {
        PresheafViolation::Identity { object } => {
            format!("the identity of `{}` acts nontrivially", c.object_name(object))
        }
        PresheafViolation::Composition { g, f } => {
            format!("X({} * {}) differs from X({}) X({}) for the pair ({0}, {1})", n(g), n(f), n(f), n(g))
        }
        PresheafViolation::Naturality { f } => format!("naturality fails at `{}`", n(f)),
    }
}

pub fn parse_presheaf(text: &str, base: &Arc<FinCat>) -> Result<SetPresheaf, FormatError> {
    let secs = sections(text, &PSH_SECTIONS)?;
    let c = base.as_ref();
    let mut labels: Vec<Vec<String>> = Vec::with_capacity(c.object_count());
    let mut label_index: Vec<HashMap<String, usize>> = Vec::with_capacity(c.object_count());
    for (line, value) in per_object(c, require(&secs, "values")?)? {
        let elems = braces(line, value)?;
        let index: HashMap<String, usize> = elems.iter().enumerate().map(|(i, e)| (e.to_string(), i)).collect();
        if index.len() != elems.len() {
            return Err(syntax(line, "an element is listed twice"));
        }
        labels.push(elems.iter().map(|e| e.to_string()).collect());
        label_index.push(index);
    }
    let mut actions = Vec::with_capacity(c.morphism_count());
    for (f, entry) in per_morphism(c, section(&secs, "action"))?.into_iter().enumerate() {
        let (a, a2) = (c.src(f), c.tgt(f));
        let Some((line, value)) = entry else {
            actions.push((0..labels[a].len()).collect());
            continue;
        };
        let mut act = vec![usize::MAX; labels[a2].len()];
        for pair in braces(line, value)? {
            let (s, t) =
                pair.split_once("->").ok_or_else(|| syntax(line, format!("expected `s->t`, found `{pair}`")))?;
            let si = *label_index[a2]
                .get(s)
                .ok_or_else(|| invalid(Some(line), format!("`{s}` is not an element of X({})", c.object_name(a2))))?;
            let ti = *label_index[a]
                .get(t)
                .ok_or_else(|| invalid(Some(line), format!("`{t}` is not an element of X({})", c.object_name(a))))?;
            if act[si] != usize::MAX {
                return Err(syntax(line, format!("`{s}` is mapped twice")));
            }
            act[si] = ti;
        }
        if let Some(s) = act.iter().position(|&t| t == usize::MAX) {
            return Err(invalid(Some(line), format!("`{}` has no image", labels[a2][s])));
        }
        actions.push(act);
    }
    SetPresheaf::new(base.clone(), labels, actions).map_err(|e| presheaf_error(c, e))
}

pub fn emit_presheaf(x: &SetPresheaf) -> Result<String, FormatError> {
    let c = x.base();
    let mut out = String::from("[values]\n");
    for a in 0..c.object_count() {
        let labels = x.labels(a);
        for l in labels {
            check_name(l)?;
        }
        if index_names(labels.iter().map(String::as_str)).len() != labels.len() {
            return Err(invalid(None, format!("elements of X({}) do not have distinct labels", c.object_name(a))));
        }
        writeln!(out, "{} = {{{}}}", c.object_name(a), labels.join(" ")).unwrap();
    }
    out.push_str("\n[action]\n");
    for f in (0..c.morphism_count()).filter(|&f| !c.is_identity(f)) {
        let (a, a2) = (c.src(f), c.tgt(f));
        let pairs: Vec<String> =
            (0..x.size(a2)).map(|s| format!("{}->{}", x.label(a2, s), x.label(a, x.act(f, s)))).collect();
        writeln!(out, "{} = {{{}}}", c.morphism(f).name, pairs.join(" ")).unwrap();
    }
    Ok(out)
}

fn parse_matrix(line: usize, value: &str, rows: usize, cols: usize) -> Result<IntMatrix, FormatError> {
    let inner = value
        .strip_prefix('[')
        .and_then(|v| v.strip_suffix(']'))
        .ok_or_else(|| syntax(line, "expected `[row; row; ...]`"))?
        .trim();
    if inner.is_empty() {
        if rows * cols != 0 {
            return Err(invalid(Some(line), format!("expected a {rows}x{cols} matrix, found `[]`")));
        }
        return Ok(IntMatrix::zeros(rows, cols));
    }
    let data: Vec<Vec<BigInt>> = inner
        .split(';')
        .map(|r| {
            r.split_whitespace()
                .map(|v| BigInt::from_str(v).map_err(|_| syntax(line, format!("`{v}` is not an integer"))))
                .collect()
        })
        .collect::<Result<_, _>>()?;
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(invalid(Some(line), format!("expected a {rows}x{cols} matrix")));
    }
    Ok(IntMatrix::from_big_rows(rows, cols, &data))
}

pub fn parse_ab_presheaf(text: &str, base: &Arc<FinCat>) -> Result<AbPresheaf, FormatError> {
    let secs = sections(text, &PSH_SECTIONS)?;
    let c = base.as_ref();
    let ranks: Vec<usize> = per_object(c, require(&secs, "values")?)?
        .into_iter()
        .map(|(line, v)| v.parse().map_err(|_| syntax(line, format!("`{v}` is not a rank"))))
        .collect::<Result<_, _>>()?;
    let mut actions = Vec::with_capacity(c.morphism_count());
    for (f, entry) in per_morphism(c, section(&secs, "action"))?.into_iter().enumerate() {
        let (r, r2) = (ranks[c.src(f)], ranks[c.tgt(f)]);
        actions.push(match entry {
            None => IntMatrix::identity(r),
            Some((line, value)) => parse_matrix(line, value, r, r2)?,
        });
    }
    AbPresheaf::new(base.clone(), ranks, actions).map_err(|e| presheaf_error(c, e))
}

fn write_matrix(out: &mut String, m: &IntMatrix) {
    out.push('[');
    if m.rows() * m.cols() != 0 {
        let rows: Vec<String> =
            m.to_dense().iter().map(|r| r.iter().map(BigInt::to_string).collect::<Vec<_>>().join(" ")).collect();
        out.push_str(&rows.join("; "));
    }
    out.push(']');
}

pub fn emit_ab_presheaf(x: &AbPresheaf) -> String {
    let c = x.base();
    let mut out = String::from("[values]\n");
    for a in 0..c.object_count() {
        writeln!(out, "{} = {}", c.object_name(a), x.rank(a)).unwrap();
    }
    out.push_str("\n[action]\n");
    for f in (0..c.morphism_count()).filter(|&f| !c.is_identity(f)) {
        write!(out, "{} = ", c.morphism(f).name).unwrap();
        write_matrix(&mut out, x.action(f));
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------- functors

const FUN_SECTIONS: [&str; 3] = ["functor", "objects", "morphisms"];

/// Paths of the categories a functor file refers to.
pub fn functor_paths(text: &str) -> Result<(String, String), FormatError> {
    let secs = sections(text, &FUN_SECTIONS)?;
    let (mut source, mut target) = (None, None);
    for &(line, content) in require(&secs, "functor")? {
        match assignment(line, content)? {
            ("source", p) => source = Some(p.to_string()),
            ("target", p) => target = Some(p.to_string()),
            (k, _) => return Err(syntax(line, format!("unknown key `{k}`"))),
        }
    }
    let line = secs.iter().find(|s| s.name == "functor").map_or(0, |s| s.line);
    Ok((
        source.ok_or_else(|| syntax(line, "missing `source = ...`"))?,
        target.ok_or_else(|| syntax(line, "missing `target = ...`"))?,
    ))
}

/// Parses the maps of a functor file between already loaded categories.
pub fn parse_functor(text: &str, source: &Arc<FinCat>, target: &Arc<FinCat>) -> Result<FinFunctor, FormatError> {
    let secs = sections(text, &FUN_SECTIONS)?;
    let (a, b) = (source.as_ref(), target.as_ref());
    let b_objects = index_names(b.objects().iter().map(String::as_str));
    let b_morphisms = index_names(b.morphisms().iter().map(|m| m.name.as_str()));
    let obj: Vec<usize> = per_object(a, require(&secs, "objects")?)?
        .into_iter()
        .map(|(line, v)| lookup(&b_objects, v, line, "target object"))
        .collect::<Result<_, _>>()?;
    let mut mor = Vec::with_capacity(a.morphism_count());
    for (f, entry) in per_morphism(a, section(&secs, "morphisms"))?.into_iter().enumerate() {
        mor.push(match entry {
            None => b.identity(obj[a.src(f)]),
            Some((line, v)) => lookup(&b_morphisms, v, line, "target morphism")?,
        });
    }
    FinFunctor::checked(source.clone(), target.clone(), obj, mor).map_err(|e| match e {
        CatError::InvalidFunctor(v) => invalid(None, describe_functor_violation(a, &v)),
        other => invalid(None, other.to_string()),
    })
}

pub fn describe_functor_violation(a: &FinCat, v: &FunctorViolation) -> String {
    let n = |f: usize| &a.morphism(f).name;
    match *v {
        FunctorViolation::Endpoints { f } => format!("`{}` is sent to an arrow with the wrong source or target", n(f)),
        FunctorViolation::Identity { object } => {
            format!("the identity of `{}` is not preserved", a.object_name(object))
        }
        FunctorViolation::Composition { g, f } => format!("the composite {} * {} is not preserved", n(g), n(f)),
    }
}

pub fn emit_functor(u: &FinFunctor, source_path: &str, target_path: &str) -> String {
    let (a, b) = (u.dom(), u.cod());
    let mut out = format!("[functor]\nsource = {source_path}\ntarget = {target_path}\n\n[objects]\n");
    for x in 0..a.object_count() {
        writeln!(out, "{} = {}", a.object_name(x), b.object_name(u.obj(x))).unwrap();
    }
    out.push_str("\n[morphisms]\n");
    for f in (0..a.morphism_count()).filter(|&f| !a.is_identity(f)) {
        writeln!(out, "{} = {}", a.morphism(f).name, b.morphism(u.mor(f)).name).unwrap();
    }
    out
}
