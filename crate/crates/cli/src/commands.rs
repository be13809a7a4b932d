//! Subcommands: argument parsing, input loading, and report assembly.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use cathom::fincat::{
    build_delta_trunc, category_of_elements, find_isomorphism, opposite, slice_over, CatError, FinCat, FinFunctor,
};
use cathom::homcore::{
    bk_generator_counts, check_wab_aspherical, induced_hom_map, lambda_representables, presheaf_homology,
    resolved_homology, tensor, tensor_symmetry, HomError,
};
use cathom::presheaf::{constant_z, whitehead, AbPresheaf, PresheafError};
use cathom::random::{self, chain_complex, simplicial_group, DEFAULT_SEED};
use cathom::simplicial::{gamma_roundtrip, moore_normalized, nerve_complex, unnormalized_complex};
use cathom::theta::{m_functor, theta_asphericity, theta_trunc, ThetaError, ThetaVerdict};
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::format::{
    self, describe_violation, emit_category, functor_paths, parse_ab_presheaf, parse_category, parse_functor,
    parse_presheaf, FormatError,
};
use crate::report::{InputDigest, Report, Status, Table};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("CatError: {0}")]
    Cat(#[from] CatError),
    #[error("HomError: {0}")]
    Hom(#[from] HomError),
    #[error("PresheafError: {0}")]
    Presheaf(#[from] PresheafError),
    #[error("ThetaError: {0}")]
    Theta(#[from] ThetaError),
    #[error("usage: {0}")]
    Usage(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "cathom", version, about = "Exact homology of presheaves on finite categories")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    /// Add wall-clock time to the report (makes output run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Bousfield-Kan within the budget, a computed resolution beyond it.
    Auto,
    Bk,
    Resolution,
}

#[derive(Debug, Args)]
pub struct Degrees {
    /// Truncation: homology is reported and certified in degrees below this.
    #[arg(long, default_value_t = 4)]
    pub max_degree: usize,
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub normalized: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and check a .cat, .psh, .apsh or .fun file.
    Validate {
        file: PathBuf,
        /// Base category for presheaf files.
        #[arg(long)]
        cat: Option<PathBuf>,
        /// Also look for an isomorphism with this category.
        #[arg(long)]
        iso: Option<PathBuf>,
        /// Also look for an isomorphism with Δ truncated at this bound.
        #[arg(long)]
        iso_delta: Option<usize>,
    },
    /// Homology of a presheaf of abelian groups.
    Hom {
        #[arg(long)]
        cat: PathBuf,
        /// const-z, whitehead:<file.psh> or file:<file.apsh>.
        #[arg(long, default_value = "const-z")]
        coeff: String,
        #[command(flatten)]
        degrees: Degrees,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Largest Bousfield-Kan degree size attempted.
        #[arg(long, default_value_t = 2_000_000)]
        budget: u128,
    },
    /// Homology of the nerve.
    NerveHom {
        #[arg(long)]
        cat: PathBuf,
        #[command(flatten)]
        degrees: Degrees,
    },
    /// X ⊙ Y for X over A and Y over A^op, with the symmetry check.
    Tensor {
        #[arg(long)]
        cat: PathBuf,
        #[arg(long)]
        left: String,
        /// Coefficient over the opposite category.
        #[arg(long)]
        right: String,
    },
    /// Γ followed by the Moore complex on seeded random complexes.
    DoldkanRoundtrip {
        #[arg(long, default_value_t = 4)]
        trunc: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        max_rank: usize,
    },
    /// Category of elements of a set presheaf, with the homology comparison.
    Elements {
        #[arg(long)]
        cat: PathBuf,
        #[arg(long)]
        presheaf: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Write the category of elements here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// The slice u/b of a functor and its nerve homology.
    Slice {
        #[arg(long)]
        functor: PathBuf,
        /// Object name in the target category.
        #[arg(long)]
        object: String,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Build Θ_n truncated at a width and check it.
    Theta {
        #[arg(long)]
        level: usize,
        #[arg(long)]
        width: usize,
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Skip the exhaustive law checks.
        #[arg(long)]
        no_validate: bool,
    },
    /// Slice-wise asphericity of a functor, or of m_n over truncated Θ_n.
    Aspherical {
        #[arg(long, conflicts_with = "theta_level")]
        functor: Option<PathBuf>,
        #[arg(long, requires = "width")]
        theta_level: Option<usize>,
        #[arg(long)]
        width: Option<usize>,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// The map H(A) → H(B) induced by a functor.
    Hmap {
        #[arg(long)]
        functor: PathBuf,
        #[command(flatten)]
        degrees: Degrees,
    },
}

/// Reads inputs once each and records their digests in order.
struct Inputs {
    digests: Vec<InputDigest>,
    categories: HashMap<PathBuf, Arc<FinCat>>,
}

impl Inputs {
    fn new() -> Self {
        Inputs { digests: Vec::new(), categories: HashMap::new() }
    }

    fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = std::fs::read(path)
            .map_err(|e| FormatError::Io { path: path.display().to_string(), message: e.to_string() })?;
        self.digests.push(InputDigest::of(&path.display().to_string(), &bytes));
        String::from_utf8(bytes)
            .map_err(|_| FormatError::Io { path: path.display().to_string(), message: "not UTF-8".into() }.into())
    }

    fn category(&mut self, path: &Path) -> Result<Arc<FinCat>, CliError> {
        if let Some(c) = self.categories.get(path) {
            return Ok(c.clone());
        }
        let text = self.read(path)?;
        let c = Arc::new(parse_category(&text).map_err(|e| in_file(path, e))?);
        self.categories.insert(path.to_path_buf(), c.clone());
        Ok(c)
    }

    fn functor(&mut self, path: &Path) -> Result<FinFunctor, CliError> {
        let text = self.read(path)?;
        let (src, tgt) = functor_paths(&text).map_err(|e| in_file(path, e))?;
        let dir = path.parent().unwrap_or(Path::new(""));
        let a = self.category(&dir.join(src))?;
        let b = self.category(&dir.join(tgt))?;
        Ok(parse_functor(&text, &a, &b).map_err(|e| in_file(path, e))?)
    }

    /// `const-z`, `whitehead:<file>` or `file:<file>` over `base`.
    fn coefficient(&mut self, spec: &str, base: &Arc<FinCat>) -> Result<AbPresheaf, CliError> {
        if spec == "const-z" {
            return Ok(constant_z(base.clone()));
        }
        if let Some(p) = spec.strip_prefix("whitehead:") {
            let path = Path::new(p);
            let text = self.read(path)?;
            return Ok(whitehead(&parse_presheaf(&text, base).map_err(|e| in_file(path, e))?));
        }
        if let Some(p) = spec.strip_prefix("file:") {
            let path = Path::new(p);
            let text = self.read(path)?;
            return Ok(parse_ab_presheaf(&text, base).map_err(|e| in_file(path, e))?);
        }
        Err(CliError::Usage(format!("unknown coefficient `{spec}`; expected const-z, whitehead:<file> or file:<file>")))
    }
}

/// Prefixes an I/O-free format error with the file it came from.
fn in_file(path: &Path, e: FormatError) -> FormatError {
    match e {
        FormatError::Io { .. } => e,
        FormatError::Syntax { line, message } => {
            FormatError::Syntax { line, message: format!("{}: {message}", path.display()) }
        }
        FormatError::Validation { line, message } => {
            FormatError::Validation { line, message: format!("{}: {message}", path.display()) }
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text)
        .map_err(|e| FormatError::Io { path: path.display().to_string(), message: e.to_string() }.into())
}

fn is_point(h: &[cathom::zlinalg::FgAbGroup]) -> bool {
    h.iter().enumerate().all(|(k, g)| if k == 0 { g.rank() == 1 && g.torsion().is_empty() } else { g.is_trivial() })
}

pub fn execute(cli: &Cli, command_line: Vec<String>) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut inputs = Inputs::new();
    let mut report = Report { command: command_line, ..Report::default() };
    match &cli.command {
        Command::Validate { file, cat, iso, iso_delta } => {
            validate(&mut inputs, &mut report, file, cat.as_deref(), iso.as_deref(), *iso_delta)?
        }
        Command::Hom { cat, coeff, degrees, method, budget } => {
            let c = inputs.category(cat)?;
            let x = inputs.coefficient(coeff, &c)?;
            let n = degrees.max_degree;
            let counts = bk_generator_counts(&x, n, degrees.normalized);
            let within = counts.iter().all(|&g| g <= *budget);
            let use_bk = match method {
                Method::Bk if !within => {
                    let (degree, &generators) = counts.iter().enumerate().find(|(_, &g)| g > *budget).unwrap();
                    return Err(HomError::TooLarge { degree, generators, budget: *budget }.into());
                }
                Method::Bk => true,
                Method::Auto => within,
                Method::Resolution => false,
            };
            let h = if use_bk { presheaf_homology(&x, n, degrees.normalized) } else { resolved_homology(&x, n)? };
            report.fact("method", if use_bk { "bousfield-kan" } else { "resolution" });
            report.fact("bk_generators", format!("{counts:?}"));
            report.tables.push(Table::new(format!("H_*({}; {coeff})", cat.display()), &h));
        }
        Command::NerveHom { cat, degrees } => {
            let c = inputs.category(cat)?;
            let h = nerve_complex(&c, degrees.max_degree, degrees.normalized).homology_all();
            report.tables.push(Table::new(format!("H_*(N {})", cat.display()), &h));
        }
        Command::Tensor { cat, left, right } => {
            let c = inputs.category(cat)?;
            let op = Arc::new(opposite(&c));
            let x = inputs.coefficient(left, &c)?;
            let y = inputs.coefficient(right, &op)?;
            let xy = tensor(&x, &y)?;
            let yx = tensor(&y, &x)?;
            report.fact("tensor", &xy.group);
            let iso = tensor_symmetry(&x, &y)?;
            let ok = iso.verify(&xy.presentation, &yx.presentation) && xy.group == yx.group;
            report.verdict("X ⊙ Y ≅ Y ⊙ X by the explicit presentation isomorphism", Status::from_bool(ok), None, "");
        }
        Command::DoldkanRoundtrip { trunc, seed, count, max_rank } => {
            let mut rng = random::rng(*seed);
            let mut failed = Vec::new();
            for i in 0..*count {
                let c = chain_complex(&mut rng, *trunc, *max_rank);
                if !gamma_roundtrip(&c).is_verified() {
                    failed.push(i);
                }
            }
            report.fact("complexes", count);
            report.verdict(
                "N Γ(c) ≅ c by the explicit chain isomorphism",
                Status::from_bool(failed.is_empty()),
                None,
                if failed.is_empty() { String::new() } else { format!("failed on samples {failed:?}") },
            );
            let mut differ = Vec::new();
            for i in 0..*count {
                let x = simplicial_group(&mut rng, *trunc, *max_rank);
                if moore_normalized(&x).complex.homology_all() != unnormalized_complex(&x).homology_all() {
                    differ.push(i);
                }
            }
            report.verdict(
                "Moore and unnormalized complexes have equal homology",
                Status::from_bool(differ.is_empty()),
                Some(*trunc),
                if differ.is_empty() { String::new() } else { format!("differ on samples {differ:?}") },
            );
        }
        Command::Elements { cat, presheaf, max_degree, emit } => {
            let c = inputs.category(cat)?;
            let text = inputs.read(presheaf)?;
            let x = parse_presheaf(&text, &c).map_err(|e| in_file(presheaf, e))?;
            let el = category_of_elements(&x);
            report.fact("objects", el.cat.object_count());
            report.fact("morphisms", el.cat.morphism_count());
            let h = presheaf_homology(&whitehead(&x), *max_degree, true);
            let hn = nerve_complex(&el.cat, *max_degree, true).homology_all();
            report.tables.push(Table::new("H_*(A; ℤ^(X))", &h));
            report.tables.push(Table::new("H_*(N(A/X))", &hn));
            report.verdict("H(A, ℤ^(X)) ≅ H(A/X)", Status::from_bool(h == hn), Some(*max_degree), "");
            if let Some(out) = emit {
                write_file(out, &emit_category(&el.cat)?)?;
            }
        }
        Command::Slice { functor, object, max_degree, emit } => {
            let u = inputs.functor(functor)?;
            let b = u
                .cod()
                .find_object(object)
                .ok_or_else(|| CliError::Usage(format!("no object `{object}` in the target")))?;
            let s = slice_over(&u, b);
            report.fact("objects", s.cat.object_count());
            report.fact("morphisms", s.cat.morphism_count());
            let h = nerve_complex(&s.cat, *max_degree, true).homology_all();
            report.fact("homology_of_a_point", is_point(&h));
            report.tables.push(Table::new(format!("H_*(N(A/{object}))"), &h));
            if let Some(out) = emit {
                write_file(out, &emit_category(&s.cat)?)?;
            }
        }
        Command::Theta { level, width, emit, no_validate } => {
            theta(&mut report, *level, *width, emit.as_deref(), *no_validate)?
        }
        Command::Aspherical { functor, theta_level, width, max_degree } => {
            let n = *max_degree;
            match (functor, theta_level, width) {
                (Some(path), None, _) => {
                    let u = inputs.functor(path)?;
                    let slices = check_wab_aspherical(&u, n);
                    let lambda = lambda_representables(&u, n)?;
                    let cod = u.cod();
                    for v in &slices.objects {
                        report.tables.push(Table::new(format!("H_*(A/{})", cod.object_name(v.object)), &v.homology));
                        report.verdict(
                            format!("A/{} is aspherical", cod.object_name(v.object)),
                            Status::from_bool(v.aspherical),
                            Some(n),
                            "",
                        );
                    }
                    let disagree: Vec<&str> = slices
                        .objects
                        .iter()
                        .filter(|v| v.aspherical != lambda[v.object])
                        .map(|v| cod.object_name(v.object))
                        .collect();
                    report.verdict(
                        "λ_{u,b} is a quasi-isomorphism exactly where A/b is aspherical",
                        Status::from_bool(disagree.is_empty()),
                        Some(n),
                        if disagree.is_empty() {
                            String::new()
                        } else {
                            format!("disagree at {}", disagree.join(", "))
                        },
                    );
                }
                (None, Some(level), Some(width)) => {
                    let tower = theta_trunc(*level, *width);
                    let m = m_functor(*level, *width);
                    let cat = tower.cat();
                    for r in theta_asphericity(&tower, &m, n) {
                        let name = cat.object_name(r.slice.object);
                        report.tables.push(Table::new(format!("H_*(m/{name})"), &r.slice.homology));
                        let status = match r.verdict {
                            ThetaVerdict::Pass => Status::Pass,
                            ThetaVerdict::Fail => Status::Fail,
                            ThetaVerdict::Uncertified => Status::Uncertified,
                        };
                        let detail = if r.certified { "" } else { "slice clipped by the width bound" };
                        report.verdict(format!("m/{name} is aspherical"), status, Some(n), detail);
                    }
                }
                _ => return Err(CliError::Usage("give --functor, or --theta-level with --width".into())),
            }
        }
        Command::Hmap { functor, degrees } => {
            let u = inputs.functor(functor)?;
            let lam = induced_hom_map(&u, degrees.max_degree, degrees.normalized)?;
            let n = degrees.max_degree;
            let src = lam.map.source().homology_all();
            let tgt = lam.map.target().homology_all();
            report.tables.push(Table::new("H_*(A)", &src));
            report.tables.push(Table::new("H_*(B)", &tgt));
            let bad: Vec<usize> = (0..lam.iso.len()).filter(|&k| !lam.iso[k]).collect();
            report.verdict(
                "H(u) is an isomorphism",
                Status::from_bool(bad.is_empty()),
                Some(lam.iso.len().min(n)),
                if bad.is_empty() { String::new() } else { format!("not an isomorphism in degrees {bad:?}") },
            );
        }
    }
    report.inputs = inputs.digests;
    if cli.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis());
    }
    Ok(report)
}

fn validate(
    inputs: &mut Inputs,
    report: &mut Report,
    file: &Path,
    cat: Option<&Path>,
    iso: Option<&Path>,
    iso_delta: Option<usize>,
) -> Result<(), CliError> {
    let ext = file.extension().and_then(|e| e.to_str()).unwrap_or("");
    let first = report.verdicts.len();
    let need_cat = |inputs: &mut Inputs| -> Result<Arc<FinCat>, CliError> {
        let p = cat.ok_or_else(|| CliError::Usage("presheaf files need --cat".into()))?;
        inputs.category(p)
    };
    // semantic failures become verdicts; syntax errors stay errors
    let outcome: Result<(), FormatError> = match ext {
        "cat" => {
            let text = inputs.read(file)?;
            match parse_category(&text) {
                Ok(c) => {
                    report.fact("objects", c.object_count());
                    report.fact("morphisms", c.morphism_count());
                    report.fact("composable_pairs", c.composable_pair_count());
                    let c = Arc::new(c);
                    if let Some(k) = iso_delta {
                        let d = Arc::new(build_delta_trunc(k));
                        let found = find_isomorphism(&c, &d).is_some();
                        report.verdict(format!("isomorphic to Δ_{{≤{k}}}"), Status::from_bool(found), None, "");
                    }
                    if let Some(p) = iso {
                        let other = inputs.category(p)?;
                        let found = find_isomorphism(&c, &other).is_some();
                        report.verdict(format!("isomorphic to {}", p.display()), Status::from_bool(found), None, "");
                    }
                    Ok(())
                }
                Err(e) => Err(e),
            }
        }
        "psh" => {
            let c = need_cat(inputs)?;
            let text = inputs.read(file)?;
            parse_presheaf(&text, &c)
                .map(|x| report.fact("elements", (0..c.object_count()).map(|a| x.size(a)).sum::<usize>()))
        }
        "apsh" => {
            let c = need_cat(inputs)?;
            let text = inputs.read(file)?;
            parse_ab_presheaf(&text, &c).map(|x| report.fact("ranks", format!("{:?}", x.ranks())))
        }
        "fun" => match inputs.functor(file) {
            Ok(u) => {
                report.fact("faithful", u.is_faithful());
                report.fact("fully_faithful", u.is_fully_faithful());
                Ok(())
            }
            Err(CliError::Format(e)) => Err(e),
            Err(e) => return Err(e),
        },
        _ => return Err(CliError::Usage(format!("cannot tell the kind of `{}` from its extension", file.display()))),
    };
    let laws = match ext {
        "cat" => "category laws, checked exhaustively",
        "fun" => "functor laws, checked exhaustively",
        _ => "presheaf laws, checked exhaustively",
    };
    match outcome {
        Ok(()) => report.verdict(laws, Status::Pass, None, ""),
        Err(e @ FormatError::Validation { .. }) => report.verdict(laws, Status::Fail, None, e.to_string()),
        Err(e) => return Err(e.into()),
    }
    // the laws come first
    report.verdicts[first..].rotate_right(1);
    Ok(())
}

fn theta(
    report: &mut Report,
    level: usize,
    width: usize,
    emit: Option<&Path>,
    no_validate: bool,
) -> Result<(), CliError> {
    let tower = theta_trunc(level, width);
    let cat = tower.cat();
    report.fact("objects", cat.object_count());
    report.fact("morphisms", cat.morphism_count());
    report.fact("composable_pairs", cat.composable_pair_count());
    if !no_validate {
        let violations = cat.validate();
        let detail = violations.first().map(|v| describe_violation(cat, v)).unwrap_or_default();
        report.verdict("category laws, checked exhaustively", Status::from_bool(violations.is_empty()), None, detail);
        let m = m_functor(level, width);
        let bad = m.validate();
        let detail = bad.first().map(|v| format::describe_functor_violation(m.dom(), v)).unwrap_or_default();
        report.verdict(format!("m_{level} is a functor"), Status::from_bool(bad.is_empty()), None, detail);
        for l in 0..level {
            let i = tower.inclusion(l);
            let ok = i.validate().is_empty() && i.is_fully_faithful();
            report.verdict(format!("Θ_{l} ↪ Θ_{} is a fully faithful functor", l + 1), Status::from_bool(ok), None, "");
        }
        if level == 1 {
            let found = find_isomorphism(cat, &Arc::new(build_delta_trunc(width))).is_some();
            report.verdict(format!("isomorphic to Δ_{{≤{width}}}"), Status::from_bool(found), None, "");
        }
    }
    if let Some(out) = emit {
        write_file(out, &emit_category(cat)?)?;
    }
    Ok(())
}
