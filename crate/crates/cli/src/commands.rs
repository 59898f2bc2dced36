//! Command implementations. Each returns its standard output and exit code;
//! printing is left to the binary.

use std::fmt::Write;
use std::io::Read;
use std::ops::RangeInclusive;
use std::path::Path;

use flatspin_core::{
    complex_isomorphic, diagonal_triangulation, double_ngon, equivalent_up_to, half_spingon, model_sphere,
    fixed_points, quotient_complex, regular_ngon, spingon, transport, translation_equivalent, unfold_right_triangle,
    AffineSymmetry, CanonicalDecomposition, CellComplex, ComplexMap, CycloNum, Family, FamilySpec, Mode,
    TranslationSurface, VertexLabel,
};
use serde::Serialize;

use crate::args::{BuildArgs, Command, VerifyArgs};
use crate::error::CliError;
use crate::svg::{render, SvgOptions};
use crate::verify::{family_cases, verify_cases, verify_surface};
use crate::{numeric, parse_root, precision, Cli};

/// Largest genus `verify` accepts.
pub const MAX_VERIFY_GENUS: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    /// 0 for success, 1 for a negative answer.
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { stdout, code: 0 }
    }
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Build(args) => build(&args),
        Command::Analyze { input, json, precision: p } => analyze(&load(&input)?, json, precision(p)?),
        Command::Verify(args) => verify(&args),
        Command::Equiv { a, b, mode, json, precision: p } => {
            equiv(&load(&a)?, &load(&b)?, mode.into(), json, precision(p)?)
        }
        Command::Symmetry { input, derivative, json, precision: p } => {
            let d = derivative.as_deref().map(parse_root).transpose()?;
            symmetry(&load(&input)?, d, json, precision(p)?)
        }
        Command::Triangulate { input, summary } => triangulate(&load(&input)?, summary),
        Command::Quotient { input, rotation, no_involution, json } => {
            let r = rotation.as_deref().map(parse_root).transpose()?;
            quotient(&load(&input)?, r, !no_involution, json)
        }
        Command::Svg { input, precision: p, labels, out } => {
            let doc = render(&load(&input)?, SvgOptions { bits: precision(p)?, labels });
            emit(doc, out.as_deref())
        }
    }
}

/// Reads a surface from a path, or from stdin when the path is `-`.
pub fn load(path: &str) -> Result<TranslationSurface, CliError> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|source| CliError::Read { path: path.into(), source })?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })?
    };
    TranslationSurface::from_json(&text).map_err(|e| CliError::load(path, e))
}

fn emit(text: String, out: Option<&Path>) -> Result<Outcome, CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|source| CliError::Write { path: path.into(), source })?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn pair(v: &[u32]) -> (u32, u32) {
    (v[0], v[1])
}

pub fn build_surface(args: &BuildArgs) -> Result<TranslationSurface, CliError> {
    if let Some(family) = args.family {
        let (genus, k) = (args.genus.unwrap_or(0), args.k.unwrap_or(0));
        return Ok(FamilySpec::new(family, genus, k)?.build()?);
    }
    let s = if let Some(v) = &args.spingon {
        let (n, k) = pair(v);
        spingon(n, k)
    } else if let Some(v) = &args.half_spingon {
        let (n, k) = pair(v);
        half_spingon(n, k)
    } else if let Some(n) = args.regular {
        regular_ngon(n)
    } else if let Some(n) = args.double {
        double_ngon(n)
    } else if let Some(v) = &args.unfold {
        unfold_right_triangle(v[0], v[1], v[2])
    } else {
        return Err(CliError::Usage("choose a surface to build".into()));
    };
    Ok(s?)
}

fn build(args: &BuildArgs) -> Result<Outcome, CliError> {
    let s = build_surface(args)?;
    let mut json = s.to_json();
    json.push('\n');
    emit(json, args.out.as_deref())
}

#[derive(Serialize)]
struct ConePointRow {
    angle_multiple: u32,
    zero_order: u32,
    corners: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct Analysis {
    stratum: String,
    orders: Vec<u32>,
    genus: u32,
    area: String,
    cone_points: Vec<ConePointRow>,
}

fn analyze(s: &TranslationSurface, json: bool, bits: u32) -> Result<Outcome, CliError> {
    let stratum = s.stratum();
    let rows: Vec<ConePointRow> = s
        .cone_points()
        .into_iter()
        .map(|c| ConePointRow { angle_multiple: c.angle_multiple, zero_order: c.zero_order(), corners: c.corners })
        .collect();
    if json {
        let doc = Analysis {
            stratum: stratum.to_string(),
            orders: stratum.orders.clone(),
            genus: stratum.genus,
            area: s.area().to_string(),
            cone_points: rows,
        };
        return Ok(Outcome::ok(serde_json::to_string_pretty(&doc).expect("analysis serializes") + "\n"));
    }
    let mut out = String::new();
    let _ = writeln!(out, "{}, genus {}", stratum, stratum.genus);
    let _ = writeln!(out, "with marked points: {}", stratum.with_marked_points());
    let _ = writeln!(out, "area: {}", numeric(&s.area(), bits));
    let _ = writeln!(out, "cone points:");
    let _ = writeln!(out, "  {:<6} {:<8} {:<6} corners", "point", "angle", "order");
    for (i, r) in rows.iter().enumerate() {
        let corners: Vec<String> = r.corners.iter().map(|(p, v)| format!("({p},{v})")).collect();
        let angle = format!("2π·{}", r.angle_multiple);
        let _ = writeln!(out, "  {:<6} {:<8} {:<6} {}", i, angle, r.zero_order, corners.join(" "));
    }
    Ok(Outcome::ok(out))
}

/// Parses `a..b`, `a..=b` or a single genus; both ends are included.
pub fn parse_genus_range(text: &str) -> Result<RangeInclusive<u32>, CliError> {
    let bad = || CliError::Usage(format!("genus range {text:?} should look like 2..5"));
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
        None => (text, text),
    };
    let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
    if lo < 2 || hi < lo || hi > MAX_VERIFY_GENUS {
        return Err(CliError::Usage(format!("genus range {text:?} must lie within 2..{MAX_VERIFY_GENUS}")));
    }
    Ok(lo..=hi)
}

fn verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let reports = if let Some(path) = &args.input {
        vec![verify_surface(path, &load(path)?)]
    } else {
        let genera = parse_genus_range(&args.genus_range)?;
        let families: Vec<Family> = match args.family {
            Some(f) => vec![f],
            None => Family::ALL.to_vec(),
        };
        verify_cases(&family_cases(&families, genera))
    };
    let passed = reports.iter().filter(|r| r.overall).count();
    let stdout = if args.json {
        serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n"
    } else {
        let mut out: String = reports.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{passed} of {} cases passed", reports.len());
        out
    };
    Ok(Outcome { stdout, code: u8::from(passed != reports.len()) })
}

#[derive(Serialize)]
struct EquivReport {
    mode: Mode,
    equivalent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    factor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    numeric: Option<(f64, f64)>,
    /// Cell i of the first canonical decomposition goes to `matching[i]` of
    /// the scaled second one.
    #[serde(skip_serializing_if = "Option::is_none")]
    matching: Option<Vec<(usize, usize)>>,
}

fn equiv(a: &TranslationSurface, b: &TranslationSurface, mode: Mode, json: bool, bits: u32) -> Result<Outcome, CliError> {
    let factor = equivalent_up_to(a, b, mode);
    let matching = factor
        .as_ref()
        .and_then(|c| b.transform(c).ok())
        .and_then(|scaled| translation_equivalent(a, &scaled))
        .map(|m| m.cell_map);
    let code = u8::from(factor.is_none());
    if json {
        let doc = EquivReport {
            mode,
            equivalent: factor.is_some(),
            factor: factor.as_ref().map(ToString::to_string),
            numeric: factor.as_ref().map(|c| c.to_f64_pair(bits)),
            matching,
        };
        return Ok(Outcome { stdout: serde_json::to_string_pretty(&doc).expect("report serializes") + "\n", code });
    }
    let stdout = match &factor {
        Some(c) => format!("equivalent up to {}\nfactor: {}\n", mode_name(mode), numeric(c, bits)),
        None => "inequivalent\n".to_owned(),
    };
    Ok(Outcome { stdout, code })
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Translation => "translation",
        Mode::Rotation => "rotation",
        Mode::Similarity => "similarity",
    }
}

#[derive(Serialize)]
struct SymmetryRow {
    derivative: String,
    numeric: (f64, f64),
    order: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fixed_points: Option<usize>,
}

fn symmetry_row(
    cd: &CanonicalDecomposition,
    sigma: &AffineSymmetry,
    group_size: u32,
    bits: u32,
) -> SymmetryRow {
    let order = (1..=group_size).find(|&d| sigma.power(d, cd).is_identity());
    let fixed_points = if order == Some(2) { fixed_points(cd, sigma).ok().map(|r| r.count) } else { None };
    SymmetryRow { derivative: sigma.derivative.to_string(), numeric: sigma.derivative.to_f64_pair(bits), order, fixed_points }
}

fn symmetry(s: &TranslationSurface, derivative: Option<CycloNum>, json: bool, bits: u32) -> Result<Outcome, CliError> {
    let cd = CanonicalDecomposition::of(s);
    let all = cd.symmetries();
    let chosen: Vec<AffineSymmetry> = match &derivative {
        Some(d) => cd.find_symmetry(d).into_iter().collect(),
        None => all.clone(),
    };
    let rows: Vec<SymmetryRow> = chosen.iter().map(|sigma| symmetry_row(&cd, sigma, all.len() as u32, bits)).collect();
    let code = u8::from(rows.is_empty());
    if json {
        return Ok(Outcome { stdout: serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n", code });
    }
    let mut out = String::new();
    match &derivative {
        Some(d) if rows.is_empty() => {
            let _ = writeln!(out, "no symmetry with derivative {}", numeric(d, bits));
            return Ok(Outcome { stdout: out, code });
        }
        Some(_) => {}
        None => {
            let _ = writeln!(out, "{} symmetries", rows.len());
        }
    }
    for (sigma, row) in chosen.iter().zip(&rows) {
        let order = row.order.map_or("?".to_owned(), |o| o.to_string());
        let _ = write!(out, "derivative {}  order {order}", numeric(&sigma.derivative, bits));
        if let Some(n) = row.fixed_points {
            let _ = write!(out, "  fixed points {n}");
        }
        out.push('\n');
    }
    if derivative.is_none() {
        let _ = match cd.hyperelliptic_involution() {
            Some((_, r)) => writeln!(out, "hyperelliptic involution: {} fixed points", r.count),
            None => writeln!(out, "hyperelliptic involution: none"),
        };
    }
    Ok(Outcome { stdout: out, code })
}

fn label_counts(x: &CellComplex) -> String {
    let count = |l| x.vertices.iter().filter(|v| **v == Some(l)).count();
    format!(
        "O {} A {} B {} C {} W {}",
        count(VertexLabel::O),
        count(VertexLabel::A),
        count(VertexLabel::B),
        count(VertexLabel::C),
        count(VertexLabel::W)
    )
}

fn complex_summary(x: &CellComplex) -> String {
    let folded = x.folded.iter().filter(|&&f| f).count();
    format!(
        "vertices {}, edges {} ({folded} folded), faces {}, χ = {}\nlabels: {}\n",
        x.vertex_count(),
        x.edge_count(),
        x.face_count(),
        x.euler_characteristic(),
        label_counts(x)
    )
}

fn triangulate(s: &TranslationSurface, summary: bool) -> Result<Outcome, CliError> {
    let t = diagonal_triangulation(s)?;
    if summary {
        return Ok(Outcome::ok(complex_summary(&t.complex)));
    }
    Ok(Outcome::ok(serde_json::to_string(&t.complex).expect("complex serializes") + "\n"))
}

fn quotient(
    s: &TranslationSurface,
    rotation: Option<CycloNum>,
    involution: bool,
    json: bool,
) -> Result<Outcome, CliError> {
    let cd = CanonicalDecomposition::of(s);
    let t = diagonal_triangulation(s)?;
    let mut generators: Vec<ComplexMap> = Vec::new();
    let missing = |what: String| Ok(Outcome { stdout: format!("{what}\n"), code: 1 });
    if involution {
        let Some((eta, _)) = cd.hyperelliptic_involution() else { return missing("no hyperelliptic involution".into()) };
        let Some(map) = transport(&t, &eta) else {
            return missing("the involution does not preserve the triangulation".into());
        };
        generators.push(map);
    }
    if let Some(d) = &rotation {
        let Some(rho) = cd.find_symmetry(d) else { return missing(format!("no symmetry with derivative {d}")) };
        let Some(map) = transport(&t, &rho) else {
            return missing("the rotation does not preserve the triangulation".into());
        };
        generators.push(map);
    }
    let q = quotient_complex(&t.complex, &generators)?;
    if json {
        return Ok(Outcome::ok(serde_json::to_string(&q).expect("complex serializes") + "\n"));
    }
    let mut out = complex_summary(&q);
    let w = q.vertices.iter().filter(|v| **v == Some(VertexLabel::W)).count();
    if involution && rotation.is_none() {
        let iso = complex_isomorphic(&q, &model_sphere(w)).is_some();
        let _ = writeln!(out, "model sphere {w}: {}", if iso { "isomorphic" } else { "not isomorphic" });
    }
    Ok(Outcome::ok(out))
}
