//! JSON front end. [`run`] takes the argument list and returns the exit code
//! with the text for stdout and stderr, so the binary only forwards them.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::induction::{bad_parity_decomposition, decompose_multi, decompose_speh_times, InducedDecomposition, DEFAULT_MARGIN};
use crate::oracle::{self, Report};
use crate::packets::{enumerate_constituents, jac_symbol_traced, ConstituentSymbol, JacOutcome};
use crate::params::{centralizer, enumerate_epschars, ArthurParam, EpsChar, GroupType, JordanBlock};
use crate::segment::{CuspidalLabel, HalfInt, Sign};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "arthur", about = "Arthur packets of p-adic classical groups, combinatorially")]
struct Cli {
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit aligned text tables.
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Blocks in both coordinates, parity and centralizer.
    Convert {
        #[arg(long)]
        input: Option<String>,
    },
    /// Constituents of the packet with certificates.
    Packet {
        #[arg(long)]
        input: Option<String>,
    },
    /// Decompose S(ρ,A,B,ζ)^copies × π for every constituent π of the packet.
    Induce {
        #[arg(long)]
        input: Option<String>,
        #[arg(long)]
        rho: String,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long, default_value_t = 1)]
        copies: u32,
        #[arg(long, default_value_t = DEFAULT_MARGIN)]
        margin: u32,
    },
    /// Symbolic Jacquet operator over a list of exponents.
    Jac {
        #[arg(long)]
        input: Option<String>,
        /// Comma separated exponents, e.g. "1,0,-1" or "3/2,1/2".
        #[arg(long, allow_hyphen_values = true)]
        cells: String,
        /// Cuspidal label; defaults to the only one declared.
        #[arg(long)]
        rho: Option<String>,
    },
    /// Run an oracle suite.
    Check {
        suite: Suite,
        #[arg(long, default_value_t = 8)]
        max_gap: i64,
        /// Size bound for ladder-jac, translation and signs.
        #[arg(long)]
        max: Option<i64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Counts,
    LadderJac,
    Translation,
    Signs,
    All,
}

/// The input document.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub version: u32,
    pub group: GroupSpec,
    pub cuspidals: Vec<CuspidalSpec>,
    pub blocks: Vec<BlockSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(rename = "type")]
    pub kind: GroupType,
    pub hasse: Option<Sign>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CuspidalSpec {
    pub name: String,
    pub d: u32,
    pub self_dual: bool,
    pub eta: Option<Sign>,
    pub dual: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockSpec {
    pub rho: String,
    pub a: u32,
    pub b: u32,
    pub multiplicity: Option<u32>,
    pub eps: Option<Sign>,
}

/// A validated document: the parameter, the declared labels, and ε if given.
#[derive(Debug)]
pub struct Model {
    pub group: GroupType,
    pub psi: ArthurParam,
    pub labels: BTreeMap<String, CuspidalLabel>,
    pub eps: Option<EpsChar>,
}

pub fn parse_document(text: &str) -> Result<InputDocument> {
    serde_json::from_str(text).map_err(|e| {
        let line = text.lines().nth(e.line().saturating_sub(1)).unwrap_or("").trim();
        Error::InvalidInput(format!("{e}; near: {line:?}"))
    })
}

pub fn build_model(doc: &InputDocument) -> Result<Model> {
    if doc.version != 1 {
        return Err(Error::InvalidInput(format!("unsupported version {}, expected 1", doc.version)));
    }
    let hasse = match (doc.group.kind, doc.group.hasse) {
        (GroupType::Symplectic, Some(_)) => {
            return Err(Error::InvalidInput("hasse applies to orthogonal groups only".into()))
        }
        (GroupType::Symplectic, None) => Sign::Plus,
        (_, h) => h.unwrap_or(Sign::Plus),
    };
    let mut labels = BTreeMap::new();
    for c in &doc.cuspidals {
        if c.d == 0 {
            return Err(Error::InvalidInput(format!("cuspidal {:?}: d must be positive", c.name)));
        }
        let label = match (c.self_dual, c.eta, &c.dual) {
            (true, Some(eta), None) => CuspidalLabel::self_dual(&c.name, c.d, eta),
            (true, None, _) => return Err(Error::InvalidInput(format!("cuspidal {:?}: self-dual labels need eta", c.name))),
            (true, _, Some(_)) => {
                return Err(Error::InvalidInput(format!("cuspidal {:?}: a self-dual label has no separate dual", c.name)))
            }
            (false, Some(_), _) => {
                return Err(Error::InvalidInput(format!("cuspidal {:?}: eta is defined only for self-dual labels", c.name)))
            }
            (false, None, dual) => {
                let dual = dual.clone().ok_or_else(|| {
                    Error::InvalidInput(format!("cuspidal {:?}: non-self-dual labels must name their dual", c.name))
                })?;
                CuspidalLabel::non_self_dual(&c.name, c.d, &dual)
            }
        };
        if labels.insert(c.name.clone(), label).is_some() {
            return Err(Error::InvalidInput(format!("cuspidal {:?} declared twice", c.name)));
        }
    }
    for label in labels.values().filter(|l| !l.is_self_dual()) {
        let dual = labels.get(label.dual_name());
        let ok = dual.is_some_and(|d| !d.is_self_dual() && d.dual_name() == label.name() && d.d() == label.d());
        if !ok {
            return Err(Error::InvalidInput(format!(
                "cuspidal {:?}: dual {:?} must be declared, non-self-dual, of the same d, and name it back",
                label.name(),
                label.dual_name()
            )));
        }
    }

    let mut blocks = Vec::new();
    let mut eps_given: BTreeMap<JordanBlock, Sign> = BTreeMap::new();
    let mut any_eps = false;
    for (i, spec) in doc.blocks.iter().enumerate() {
        let label = labels.get(&spec.rho).ok_or_else(|| {
            Error::InvalidInput(format!("block {i} (rho {:?}, a={}, b={}): undeclared cuspidal", spec.rho, spec.a, spec.b))
        })?;
        let block = JordanBlock::from_triple(label.clone(), spec.a, spec.b)
            .map_err(|e| Error::InvalidBlock(format!("block {i}: {e}")))?;
        let m = spec.multiplicity.unwrap_or(1);
        if m == 0 {
            return Err(Error::InvalidInput(format!("block {i}: multiplicity must be positive")));
        }
        if let Some(e) = spec.eps {
            any_eps = true;
            if let Some(prev) = eps_given.insert(block.clone(), e) {
                if prev != e {
                    return Err(Error::InvalidCharacter(format!("block {i}: eps on {block} given as both {prev} and {e}")));
                }
            }
        }
        blocks.extend(std::iter::repeat_n(block, m as usize));
    }
    let psi = ArthurParam::new(blocks, doc.group.kind.dual_type(), doc.group.kind.eta_g(hasse));
    centralizer(&psi)?;
    let eps = if any_eps {
        let eps = EpsChar::new(eps_given);
        eps.validate(&psi)?;
        Some(eps)
    } else {
        None
    };
    Ok(Model { group: doc.group.kind, psi, labels, eps })
}

fn characters(model: &Model) -> Vec<EpsChar> {
    match &model.eps {
        Some(e) => vec![e.clone()],
        None => enumerate_epschars(&model.psi),
    }
}

fn constituents(model: &Model) -> Result<Vec<ConstituentSymbol>> {
    let mut out = Vec::new();
    for eps in characters(model) {
        for levels in enumerate_constituents(&model.psi, &eps)? {
            out.push(ConstituentSymbol::new(model.psi.clone(), eps.clone(), levels)?);
        }
    }
    Ok(out)
}

/// Columns padded to a common width.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let n = header.len();
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate().take(n) {
            width[i] = width[i].max(c.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<String>| {
        let mut l = String::new();
        for (i, c) in cells.iter().enumerate() {
            if i + 1 < cells.len() {
                let pad = width[i] - c.chars().count();
                let _ = write!(l, "{c}{}  ", " ".repeat(pad));
            } else {
                l.push_str(c);
            }
        }
        out.push_str(l.trim_end());
        out.push('\n');
    };
    line(header.iter().map(|s| s.to_string()).collect());
    for r in rows {
        line(r.clone());
    }
    out
}

fn symbol_summary(sym: &ConstituentSymbol) -> String {
    let mut parts = Vec::new();
    for o in sym.param.occurrences() {
        let (a, b) = o.block.triple();
        match sym.levels.get(o.id) {
            Some(l) => parts.push(format!("{}[{a},{b}]{l}", o.block.rho())),
            None => parts.push(format!("{}[{a},{b}]", o.block.rho())),
        }
    }
    if parts.is_empty() {
        "-".into()
    } else {
        parts.join(" ")
    }
}

fn eps_summary(eps: &EpsChar) -> String {
    let parts: Vec<String> = eps
        .values()
        .iter()
        .map(|(b, s)| {
            let (a, bb) = b.triple();
            format!("{}[{a},{bb}]={s}", b.rho())
        })
        .collect();
    if parts.is_empty() {
        "-".into()
    } else {
        parts.join(" ")
    }
}

fn cmd_convert(model: &Model, text: bool) -> Result<String> {
    #[derive(Serialize)]
    struct Row {
        #[serde(flatten)]
        block: JordanBlock,
        multiplicity: usize,
        parity: bool,
    }
    let rows: Vec<Row> = model
        .psi
        .classes()
        .into_iter()
        .map(|(b, ids)| Row { parity: model.psi.good_parity(&b), block: b, multiplicity: ids.len() })
        .collect();
    let cent = centralizer(&model.psi)?;
    if text {
        let body: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                let (a, b) = r.block.triple();
                vec![
                    r.block.rho().to_string(),
                    a.to_string(),
                    b.to_string(),
                    r.block.upper().to_string(),
                    r.block.lower().to_string(),
                    r.block.zeta().to_string(),
                    if r.parity { "good" } else { "bad" }.to_string(),
                    r.multiplicity.to_string(),
                ]
            })
            .collect();
        let mut out = format!(
            "group {:?}  dual {:?}  eta_G {}  dimension {}\n",
            model.group,
            model.psi.lgroup(),
            model.psi.eta_g(),
            model.psi.dimension()
        );
        out.push_str(&table(&["rho", "a", "b", "A", "B", "zeta", "parity", "mult"], &body));
        let factors: Vec<String> = cent.factors.iter().map(|f| f.to_string()).collect();
        let _ = writeln!(out, "centralizer {}", if factors.is_empty() { "1".into() } else { factors.join(" x ") });
        return Ok(out);
    }
    let factors: Vec<_> = cent
        .factors
        .iter()
        .map(|f| json!({"class": f.class, "kind": f.kind, "m": f.m, "name": f.to_string()}))
        .collect();
    to_json(&json!({
        "group": model.group,
        "lgroup": model.psi.lgroup(),
        "eta_G": model.psi.eta_g(),
        "dimension": model.psi.dimension(),
        "blocks": rows,
        "centralizer": factors,
    }))
}

fn cmd_packet(model: &Model, text: bool) -> Result<String> {
    let mut groups = Vec::new();
    for eps in characters(model) {
        let syms: Vec<ConstituentSymbol> = enumerate_constituents(&model.psi, &eps)?
            .into_iter()
            .map(|l| ConstituentSymbol::new(model.psi.clone(), eps.clone(), l))
            .collect::<Result<_>>()?;
        groups.push((eps, syms));
    }
    if text {
        let mut out = String::new();
        for (eps, syms) in &groups {
            let _ = writeln!(out, "eps {}", eps_summary(eps));
            let rows: Vec<Vec<String>> = syms
                .iter()
                .enumerate()
                .map(|(i, s)| vec![(i + 1).to_string(), symbol_summary(s), s.zero_flag.to_string()])
                .collect();
            out.push_str(&table(&["#", "constituent", "flag"], &rows));
        }
        return Ok(out);
    }
    let chars: Vec<_> = groups.iter().map(|(eps, syms)| json!({"eps": eps, "constituents": syms})).collect();
    to_json(&json!({ "eta_G": model.psi.eta_g(), "characters": chars }))
}

fn find_label(model: &Model, name: Option<&str>) -> Result<CuspidalLabel> {
    match name {
        Some(n) => model
            .labels
            .get(n)
            .cloned()
            .ok_or_else(|| Error::InvalidInput(format!("undeclared cuspidal {n:?}"))),
        None if model.labels.len() == 1 => Ok(model.labels.values().next().expect("one label").clone()),
        None => Err(Error::InvalidInput("several cuspidals are declared; pass --rho".into())),
    }
}

fn cmd_induce(model: &Model, rho: &str, a: u32, b: u32, copies: u32, margin: u32, text: bool) -> Result<String> {
    let label = find_label(model, Some(rho))?;
    let block = JordanBlock::from_triple(label, a, b)?;
    if copies == 0 {
        return Err(Error::InvalidInput("copies must be positive".into()));
    }
    let good = model.psi.good_parity(&block);
    let route = if !good {
        "bad_parity"
    } else if copies == 1 && !model.psi.contains(&block) {
        "speh"
    } else {
        "multi"
    };
    let mut decomps: Vec<InducedDecomposition> = Vec::new();
    for base in constituents(model)? {
        if base.zero_flag == crate::packets::ZeroFlag::Zero {
            continue;
        }
        let d = match route {
            "bad_parity" => bad_parity_decomposition(&vec![block.clone(); copies as usize], &base)?,
            "speh" => decompose_speh_times(&block, &base, margin)?,
            _ => decompose_multi(&block, copies, &base, margin)?,
        };
        decomps.push(d);
    }
    if text {
        let mut out = String::new();
        let _ = writeln!(out, "induce {block} x{copies} ({route})");
        for d in &decomps {
            let _ = writeln!(out, "base {}  eps {}  length <= {}", symbol_summary(&d.base), eps_summary(&d.base.eps), d.length_bound);
            let rows: Vec<Vec<String>> = d
                .constituents
                .iter()
                .enumerate()
                .map(|(i, s)| vec![(i + 1).to_string(), symbol_summary(s), s.zero_flag.to_string()])
                .collect();
            out.push_str(&table(&["#", "constituent", "flag"], &rows));
        }
        return Ok(out);
    }
    let items: Vec<_> = decomps
        .iter()
        .map(|d| json!({"base": d.base, "length_bound": d.length_bound, "constituents": d.constituents}))
        .collect();
    to_json(&json!({"block": block, "copies": copies, "route": route, "decompositions": items}))
}

fn parse_cells(s: &str) -> Result<Vec<HalfInt>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.parse::<HalfInt>())
        .collect()
}

fn cmd_jac(model: &Model, cells: &str, rho: Option<&str>, text: bool) -> Result<String> {
    let cells = parse_cells(cells)?;
    let label = find_label(model, rho)?;
    let mut items = Vec::new();
    let mut rows = Vec::new();
    for (i, sym) in constituents(model)?.into_iter().enumerate() {
        if sym.zero_flag == crate::packets::ZeroFlag::Zero {
            continue;
        }
        let (outcome, rule) = jac_symbol_traced(&cells, &label, &sym)?;
        let shown = match &outcome {
            JacOutcome::Symbol(s) => format!("{} [{}]", symbol_summary(s), s.zero_flag),
            JacOutcome::Zero => "0".into(),
            JacOutcome::Unknown => "unknown".into(),
        };
        rows.push(vec![
            (i + 1).to_string(),
            symbol_summary(&sym),
            rule.map_or("-".into(), |r| format!("{r:?}")),
            shown,
        ]);
        items.push(json!({"input": sym, "rule": rule, "outcome": outcome}));
    }
    if text {
        return Ok(table(&["#", "constituent", "rule", "result"], &rows));
    }
    to_json(&json!({"cells": cells, "rho": label.name(), "results": items}))
}

fn run_suite(suite: Suite, max_gap: i64, max: Option<i64>) -> Result<Report> {
    let mut report = Report::default();
    if matches!(suite, Suite::Counts | Suite::All) {
        report.extend(oracle::check_counts(max_gap));
    }
    if matches!(suite, Suite::LadderJac | Suite::All) {
        let m = max.unwrap_or(4);
        report.extend(oracle::ladder_support_suite(m, m.max(1) as u32)?);
    }
    if matches!(suite, Suite::Translation | Suite::All) {
        let m = max.unwrap_or(3);
        report.extend(oracle::translation_suite(m, m.max(1) as u32)?);
    }
    if matches!(suite, Suite::Signs | Suite::All) {
        report.extend(oracle::check_signs(max.unwrap_or(8))?);
    }
    Ok(report)
}

fn cmd_check(suite: Suite, max_gap: i64, max: Option<i64>, text: bool) -> Result<(bool, String)> {
    if max_gap < 0 || max.is_some_and(|m| m < 0) {
        return Err(Error::InvalidInput("size bounds must be nonnegative".into()));
    }
    let report = run_suite(suite, max_gap, max)?;
    let name = suite.to_possible_value().expect("named").get_name().to_string();
    if text {
        let mut out = String::new();
        for r in &report.records {
            let _ = write!(out, "{} {} {}", if r.pass { "PASS" } else { "FAIL" }, r.check, r.params);
            if let Some(c) = &r.counterexample {
                let _ = write!(out, "  {c}");
            }
            out.push('\n');
        }
        let _ = writeln!(out, "{} {}: {} checks", if report.passed() { "PASS" } else { "FAIL" }, name, report.records.len());
        return Ok((report.passed(), out));
    }
    let out = to_json(&json!({"suite": name, "passed": report.passed(), "records": report.records}))?;
    Ok((report.passed(), out))
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::InvalidInput(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn error_object(kind: &str, message: &str) -> String {
    let mut s = json!({"error": {"kind": kind, "message": message}}).to_string();
    s.push('\n');
    s
}

fn load(input: Option<&str>) -> Result<Model> {
    let text = match input {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")))?,
        None => {
            let mut s = String::new();
            std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
                .map_err(|e| Error::InvalidInput(format!("cannot read stdin: {e}")))?;
            s
        }
    };
    build_model(&parse_document(&text)?)
}

/// Run the command line `args` (program name first). Returns the exit code,
/// stdout and stderr.
pub fn run<I, S>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (EXIT_OK, e.to_string(), String::new()),
                _ => (EXIT_INVALID, String::new(), error_object("usage", e.to_string().trim())),
            };
        }
    };
    let text = cli.text;
    let result: Result<(i32, String)> = (|| match &cli.command {
        Command::Convert { input } => Ok((EXIT_OK, cmd_convert(&load(input.as_deref())?, text)?)),
        Command::Packet { input } => Ok((EXIT_OK, cmd_packet(&load(input.as_deref())?, text)?)),
        Command::Induce { input, rho, a, b, copies, margin } => {
            Ok((EXIT_OK, cmd_induce(&load(input.as_deref())?, rho, *a, *b, *copies, *margin, text)?))
        }
        Command::Jac { input, cells, rho } => Ok((EXIT_OK, cmd_jac(&load(input.as_deref())?, cells, rho.as_deref(), text)?)),
        Command::Check { suite, max_gap, max } => {
            let (ok, out) = cmd_check(*suite, *max_gap, *max, text)?;
            Ok((if ok { EXIT_OK } else { EXIT_CHECK_FAILED }, out))
        }
    })();
    match result {
        Ok((code, out)) => (code, out, String::new()),
        Err(e) => (EXIT_INVALID, String::new(), error_object(e.kind(), &e.to_string())),
    }
}
