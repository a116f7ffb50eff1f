//! The serializable decomposition report, its JSON/Markdown/LaTeX renderings,
//! matrix tables of root and weight vectors, and golden-file comparison.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::basis::Signature;
use crate::eigen::{satisfies_eigen_identity, EigenSpace, Failure, FormKind, MultiplicityRow, SpaceSystem};
use crate::error::{Error, Result};
use crate::irreducibility::{
    generation_from_basis, invariant_closure_labeled, two_piece_decomposition, ClosureSummary, ClosureTrace,
    CommutantCertificate, GenerationSummary, LadderCertificate,
};
use crate::matrix::Matrix;
use crate::roots::{full_root_system, root_spaces};
use crate::scalar::ExactScalar;
use crate::so_pq::{abelian_a, is_member, LinearForm};
use crate::weights::{complement_basis, full_weight_system, is_in_s, weight_spaces, ZeroFamily};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Which verifications to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[cfg_attr(feature = "cli", derive(clap::ValueEnum))]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Roots,
    Weights,
    Irreducible,
    All,
}

impl Check {
    fn roots(self) -> bool {
        matches!(self, Check::Roots | Check::All)
    }

    fn weights(self) -> bool {
        matches!(self, Check::Weights | Check::All)
    }

    fn irreducible(self) -> bool {
        matches!(self, Check::Irreducible | Check::All)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub label: String,
    pub matrix: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceEntry {
    pub coeffs: LinearForm,
    pub label: String,
    pub kind: FormKind,
    pub multiplicity: usize,
    pub basis: Vec<BasisEntry>,
}

impl SpaceEntry {
    fn of(space: &EigenSpace) -> Self {
        SpaceEntry {
            coeffs: space.form.clone(),
            label: space.form.to_string(),
            kind: FormKind::classify(&space.form),
            multiplicity: space.dim(),
            basis: space
                .basis
                .iter()
                .map(|n| BasisEntry { label: n.label.clone(), matrix: n.matrix.clone() })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureCertificate {
    pub s: ClosureSummary,
    pub so: ClosureSummary,
    /// Full trace from the first basis seed of `s`.
    pub sample: Option<ClosureTrace>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutantPair {
    pub s: CommutantCertificate,
    pub so: CommutantCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionSummary {
    pub rank: usize,
    pub sl_dim: usize,
    pub direct_sum: bool,
    pub so_invariant: bool,
    pub s_invariant: bool,
    pub so_irreducible: bool,
    pub s_irreducible: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificates {
    pub closure: Option<ClosureCertificate>,
    pub ladder: Option<LadderCertificate>,
    pub commutant: Option<CommutantPair>,
    pub generation: Option<GenerationSummary>,
    pub decomposition: Option<DecompositionSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub signature: Signature,
    pub check: Check,
    pub dim_so: usize,
    pub dim_s: usize,
    pub roots: Vec<SpaceEntry>,
    pub root_table: Vec<MultiplicityRow>,
    pub root_total: usize,
    pub weights: Vec<SpaceEntry>,
    pub weight_table: Vec<MultiplicityRow>,
    pub weight_total: usize,
    pub certificates: Certificates,
    pub notes: Vec<String>,
    pub failures: Vec<Failure>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn entries(system: &SpaceSystem) -> Vec<SpaceEntry> {
    system.spaces.iter().map(SpaceEntry::of).collect()
}

/// Builds the root and weight systems and runs the requested checks.
pub fn build_report(sig: &Signature, check: Check) -> Result<DecompositionReport> {
    let roots = full_root_system(sig);
    let weights = full_weight_system(sig);
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    if check.roots() {
        failures.extend(roots.failures.iter().cloned());
    }
    if check.weights() {
        failures.extend(weights.failures.iter().cloned());
        let total = roots.total_dim() + weights.total_dim();
        let sl = sig.d() * sig.d() - 1;
        if total != sl {
            failures.push(Failure::new("grand-total", sig.to_string(), format!("{total} != d^2 - 1 = {sl}")));
        }
    }
    if sig.swapped() {
        notes.push(format!("signature normalized to p >= q: {sig}"));
    }
    let mut certificates = Certificates::default();
    if check.irreducible() {
        let two = two_piece_decomposition(sig)?;
        failures.extend(two.failures.iter().cloned());
        notes.extend(two.notes.iter().cloned());
        let sample = match complement_basis(sig).basis.first() {
            Some(n) => Some(invariant_closure_labeled(sig, &n.label, &n.matrix)?),
            None => None,
        };
        let generation = generation_from_basis(sig)?;
        if !generation.all_generate() {
            failures.push(Failure::new(
                "generation",
                sig.to_string(),
                format!(
                    "{} of {} seeds generate sl_d (smallest subalgebra dim {})",
                    generation.generating, generation.seeds, generation.min_generated_dim
                ),
            ));
        }
        certificates = Certificates {
            closure: Some(ClosureCertificate { s: two.s.closure.clone(), so: two.so.closure.clone(), sample }),
            decomposition: Some(DecompositionSummary {
                rank: two.rank,
                sl_dim: two.sl_dim,
                direct_sum: two.direct_sum,
                so_invariant: two.so.invariant,
                s_invariant: two.s.invariant,
                so_irreducible: two.so.irreducible,
                s_irreducible: two.s.irreducible,
            }),
            commutant: Some(CommutantPair { s: two.s.commutant, so: two.so.commutant }),
            ladder: Some(two.ladder),
            generation: Some(generation),
        };
    }
    Ok(DecompositionReport {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        signature: *sig,
        check,
        dim_so: sig.dim_so(),
        dim_s: sig.dim_s(),
        root_total: roots.total_dim(),
        weight_total: weights.total_dim(),
        roots: entries(&roots),
        root_table: roots.table,
        weights: entries(&weights),
        weight_table: weights.table,
        certificates,
        notes,
        failures,
    })
}

// ---------------------------------------------------------------------------
// Matrix tables

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Table {
    Roots,
    Weights,
    ZeroWeight,
}

impl Table {
    fn title(self) -> &'static str {
        match self {
            Table::Roots => "Restricted root spaces",
            Table::Weights => "Nonzero weight spaces of s",
            Table::ZeroWeight => "Zero weight space of s",
        }
    }
}

/// One displayed matrix: `Σ_k params[k] · generators[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixCell {
    pub table: Table,
    pub key: String,
    pub params: Vec<String>,
    pub generators: Vec<Matrix>,
}

impl MatrixCell {
    /// The matrix with every parameter set to 1.
    pub fn at_one(&self) -> Matrix {
        let mut m = self.generators[0].clone();
        for g in &self.generators[1..] {
            m = &m + g;
        }
        m
    }

    /// Entries as linear expressions in the parameters; zero entries are empty.
    pub fn symbolic(&self) -> Vec<Vec<String>> {
        let (rows, cols) = (self.generators[0].rows(), self.generators[0].cols());
        (0..rows)
            .map(|r| {
                (0..cols)
                    .map(|c| {
                        let terms = self
                            .params
                            .iter()
                            .zip(&self.generators)
                            .filter(|(_, g)| !g.get(r, c).is_zero())
                            .map(|(p, g)| (g.get(r, c).clone(), p.as_str()));
                        render_linear(terms)
                    })
                    .collect()
            })
            .collect()
    }
}

fn render_linear<'a>(terms: impl Iterator<Item = (ExactScalar, &'a str)>) -> String {
    let mut out = String::new();
    for (c, name) in terms {
        let mag = c.abs();
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        out.push_str(name);
    }
    out
}

/// Evaluates a rendered entry (`""`, `"x"`, `"-x_2-x_3"`, `"2x_2"`, `"3"`) with
/// every parameter set to 1.
pub fn evaluate_at_one(expr: &str) -> Result<ExactScalar> {
    let s: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let s = s.replace('−', "-");
    if s.is_empty() {
        return Ok(ExactScalar::ZERO);
    }
    let bad = || Error::Parse(format!("entry {expr:?}"));
    let mut starts: Vec<usize> =
        s.char_indices().filter(|&(i, ch)| i > 0 && (ch == '+' || ch == '-')).map(|(i, _)| i).collect();
    starts.insert(0, 0);
    starts.push(s.len());
    let mut total = ExactScalar::ZERO;
    for w in starts.windows(2) {
        let term = &s[w[0]..w[1]];
        let (neg, body) = match term.as_bytes().first() {
            Some(b'-') => (true, &term[1..]),
            Some(b'+') => (false, &term[1..]),
            _ => (false, term),
        };
        let split = body.find(|ch: char| !(ch.is_ascii_digit() || ch == '/')).unwrap_or(body.len());
        let (num, name) = body.split_at(split);
        if num.is_empty() && name.is_empty() {
            return Err(bad());
        }
        if !name.is_empty() && !name.starts_with(|ch: char| ch.is_ascii_alphabetic()) {
            return Err(bad());
        }
        let coef = if num.is_empty() { ExactScalar::ONE } else { num.parse::<ExactScalar>().map_err(|_| bad())? };
        total += &if neg { -coef } else { coef };
    }
    Ok(total)
}

fn params(prefix: &str, n: usize) -> Vec<String> {
    if n == 1 {
        vec![prefix.to_string()]
    } else {
        (1..=n).map(|k| format!("{prefix}_{k}")).collect()
    }
}

/// Display order: short, double, sum, difference; positive before negative.
fn display_key(form: &LinearForm) -> (FormKind, Vec<usize>, bool) {
    let nz: Vec<(usize, i64)> =
        form.coeffs.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (i, *c)).collect();
    let kind = FormKind::classify(form);
    match kind {
        FormKind::Short | FormKind::Double => (kind, vec![usize::from(nz[0].1 < 0), nz[0].0], false),
        _ => (kind, nz.iter().map(|(i, _)| *i).collect(), nz[0].1 < 0),
    }
}

/// The cells of the matrix tables for any signature: `a`, `m`, every
/// nonzero root space, every nonzero weight space, and `s_0` by family.
pub fn matrix_cells(sig: &Signature) -> Vec<MatrixCell> {
    let mut cells = Vec::new();
    let q = sig.q();
    let gens = abelian_a(sig).generators;
    if !gens.is_empty() {
        cells.push(MatrixCell {
            table: Table::Roots,
            key: "a".into(),
            params: (1..=q).map(|k| format!("a_{k}")).collect(),
            generators: gens,
        });
    }
    let roots = root_spaces(sig);
    if let Some(zero) = roots.iter().find(|s| s.form.is_zero()) {
        let m: Vec<Matrix> = zero.matrices().skip(q).cloned().collect();
        if !m.is_empty() {
            cells.push(MatrixCell {
                table: Table::Roots,
                key: "m".into(),
                params: params("x", m.len()),
                generators: m,
            });
        }
    }
    for (table, spaces) in [(Table::Roots, roots), (Table::Weights, weight_spaces(sig))] {
        let mut nonzero: Vec<&EigenSpace> = spaces.iter().filter(|s| !s.form.is_zero()).collect();
        nonzero.sort_by_key(|s| display_key(&s.form));
        for s in nonzero {
            cells.push(MatrixCell {
                table,
                key: s.form.to_string(),
                params: params("x", s.dim()),
                generators: s.matrices().cloned().collect(),
            });
        }
    }
    // s_0 by family, numbered in the reading order of the diagonal positions.
    let mut groups: BTreeMap<u8, Vec<ZeroFamily>> = BTreeMap::new();
    for z in ZeroFamily::all(sig) {
        let g = match z {
            ZeroFamily::OffDiagonal { .. } => 1,
            ZeroFamily::Diagonal { .. } | ZeroFamily::Compact { .. } => 2,
            ZeroFamily::Paired { .. } => 3,
        };
        groups.entry(g).or_default().push(z);
    }
    if let Some(diag) = groups.get_mut(&2) {
        if matches!(diag.first(), Some(ZeroFamily::Diagonal { .. })) {
            diag.reverse();
        }
    }
    let mut counter = 0;
    for (g, zs) in groups {
        let n = zs.len();
        cells.push(MatrixCell {
            table: Table::ZeroWeight,
            key: format!("s0[{g}]"),
            params: (counter + 1..=counter + n).map(|k| format!("x_{k}")).collect(),
            generators: zs.iter().map(|z| z.matrix(sig).expect("indices in range")).collect(),
        });
        counter += n;
    }
    cells
}

fn latex_matrix(sig: &Signature, rows: &[Vec<String>]) -> String {
    let p = sig.p();
    let colspec = format!("{}|{}", "c".repeat(p), "c".repeat(sig.q()));
    let mut out = format!("\\left(\\begin{{array}}{{{colspec}}}\n");
    for (r, row) in rows.iter().enumerate() {
        if r == p {
            out.push_str("\\hline\n");
        }
        out.push_str(&row.join("&"));
        out.push_str(if r + 1 < rows.len() { "\\\\\n" } else { "\n" });
    }
    out.push_str("\\end{array}\\right)");
    out
}

fn text_matrix(sig: &Signature, rows: &[Vec<String>]) -> String {
    let width = rows.iter().flatten().map(|e| e.chars().count().max(1)).max().unwrap_or(1);
    let mut out = String::new();
    for (r, row) in rows.iter().enumerate() {
        if r == sig.p() && r > 0 {
            let dashes = (width + 1) * row.len() + 1;
            out.push_str(&"-".repeat(dashes));
            out.push('\n');
        }
        for (c, e) in row.iter().enumerate() {
            if c == sig.p() && c > 0 {
                out.push_str(" |");
            }
            let e = if e.is_empty() { "." } else { e.as_str() };
            let _ = write!(out, " {e:>width$}");
        }
        out.push('\n');
    }
    out
}

/// Matrix tables in LaTeX, mirroring the bordered `p | q` block layout.
pub fn matrix_tables_latex(sig: &Signature) -> String {
    let mut out = String::new();
    for table in [Table::Roots, Table::Weights, Table::ZeroWeight] {
        let _ = writeln!(out, "% {}", table.title());
        let _ = writeln!(out, "\\begin{{tabular}}{{|c|c|}}\n\\hline");
        for cell in matrix_cells(sig).iter().filter(|c| c.table == table) {
            let label = match cell.key.as_str() {
                "a" => "$\\mathfrak{a}$".to_string(),
                "m" => "$\\mathfrak{m}$".to_string(),
                k if k.starts_with("s0") => format!("$\\mathfrak{{s}}_0$ {}", &k[2..]),
                k => format!("${}$", latex_form(k)),
            };
            let _ = writeln!(out, "{label} & ${}$\\\\\n\\hline", latex_matrix(sig, &cell.symbolic()));
        }
        let _ = writeln!(out, "\\end{{tabular}}\n");
    }
    out
}

fn latex_form(key: &str) -> String {
    let mut out = String::new();
    let mut chars = key.chars().peekable();
    while let Some(ch) = chars.next() {
        if ch == 'f' {
            let mut idx = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                idx.push(*d);
                chars.next();
            }
            let _ = write!(out, "f_{{{idx}}}");
        } else {
            out.push(ch);
        }
    }
    out
}

/// Matrix tables as Markdown with fenced plain-text matrices.
pub fn matrix_tables_markdown(sig: &Signature) -> String {
    let mut out = String::new();
    for table in [Table::Roots, Table::Weights, Table::ZeroWeight] {
        let _ = writeln!(out, "### {}\n", table.title());
        for cell in matrix_cells(sig).iter().filter(|c| c.table == table) {
            let _ = writeln!(out, "`{}` (parameters: {})\n", cell.key, cell.params.join(", "));
            let _ = writeln!(out, "```text\n{}```\n", text_matrix(sig, &cell.symbolic()));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Golden files

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenCell {
    pub table: Table,
    pub key: String,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenFile {
    pub signature: Signature,
    #[serde(default)]
    pub description: String,
    pub cells: Vec<GoldenCell>,
}

/// A documented correction of a transcribed cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenException {
    pub table: Table,
    pub key: String,
    /// Replacement rows for the golden cell.
    pub rows: Vec<Vec<String>>,
    /// The check that the printed form fails.
    pub check: String,
    pub justification: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenExceptions {
    pub exceptions: Vec<GoldenException>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Golden(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Golden(format!("{}: {e}", path.display())))
}

impl GoldenFile {
    pub fn load(path: &Path) -> Result<Self> {
        read_json(path)
    }
}

impl GoldenExceptions {
    pub fn load(path: &Path) -> Result<Self> {
        read_json(path)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryMismatch {
    pub table: Table,
    pub cell: String,
    /// One-based.
    pub row: usize,
    /// One-based.
    pub col: usize,
    pub expected: ExactScalar,
    pub found: ExactScalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenDiff {
    pub expected_signature: Signature,
    pub found_signature: Signature,
    pub mismatches: Vec<EntryMismatch>,
    /// Cells in the golden file that were not generated.
    pub missing_cells: Vec<String>,
    /// Generated cells absent from the golden file.
    pub unexpected_cells: Vec<String>,
    pub exceptions_applied: Vec<String>,
}

impl GoldenDiff {
    pub fn signature_match(&self) -> bool {
        self.expected_signature.p() == self.found_signature.p()
            && self.expected_signature.q() == self.found_signature.q()
    }

    pub fn passed(&self) -> bool {
        self.signature_match()
            && self.mismatches.is_empty()
            && self.missing_cells.is_empty()
            && self.unexpected_cells.is_empty()
    }

    /// Distinct `(table, cell)` pairs with at least one mismatched entry.
    pub fn mismatched_cells(&self) -> Vec<(Table, String)> {
        let mut v: Vec<(Table, String)> = self.mismatches.iter().map(|m| (m.table, m.cell.clone())).collect();
        v.dedup();
        v
    }
}

/// Compares `cells` (generated for `sig`) with a golden file entrywise at parameter value 1.
pub fn diff_golden(
    sig: &Signature,
    cells: &[MatrixCell],
    golden: &GoldenFile,
    exceptions: &GoldenExceptions,
) -> Result<GoldenDiff> {
    let mut diff = GoldenDiff {
        expected_signature: golden.signature,
        found_signature: *sig,
        mismatches: Vec::new(),
        missing_cells: Vec::new(),
        unexpected_cells: Vec::new(),
        exceptions_applied: Vec::new(),
    };
    if !diff.signature_match() {
        return Ok(diff);
    }
    let d = sig.d();
    let mut expected: BTreeMap<(Table, String), Vec<Vec<String>>> = BTreeMap::new();
    for c in &golden.cells {
        if expected.insert((c.table, c.key.clone()), c.rows.clone()).is_some() {
            return Err(Error::Golden(format!("duplicate cell {:?}/{}", c.table, c.key)));
        }
    }
    for e in &exceptions.exceptions {
        let slot = expected
            .get_mut(&(e.table, e.key.clone()))
            .ok_or_else(|| Error::Golden(format!("exception for unknown cell {:?}/{}", e.table, e.key)))?;
        *slot = e.rows.clone();
        diff.exceptions_applied.push(format!("{:?}/{}", e.table, e.key));
    }
    for rows in expected.values() {
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            return Err(Error::Golden(format!("cell is not {d} x {d}")));
        }
    }
    for cell in cells {
        let Some(rows) = expected.remove(&(cell.table, cell.key.clone())) else {
            diff.unexpected_cells.push(format!("{:?}/{}", cell.table, cell.key));
            continue;
        };
        let found = cell.at_one();
        for (r, row) in rows.iter().enumerate() {
            for (c, entry) in row.iter().enumerate() {
                let want = evaluate_at_one(entry)?;
                if &want != found.get(r, c) {
                    diff.mismatches.push(EntryMismatch {
                        table: cell.table,
                        cell: cell.key.clone(),
                        row: r + 1,
                        col: c + 1,
                        expected: want,
                        found: found.get(r, c).clone(),
                    });
                }
            }
        }
    }
    diff.missing_cells = expected.keys().map(|(t, k)| format!("{t:?}/{k}")).collect();
    Ok(diff)
}

/// How a documented correction stands up to the checks: the printed cell must fail
/// the named check, and the replacement must pass membership and the eigen-identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionAudit {
    pub cell: String,
    pub check: String,
    pub printed_member: bool,
    pub printed_eigen: bool,
    pub corrected_member: bool,
    pub corrected_eigen: bool,
    pub corrected_nonzero: bool,
}

impl ExceptionAudit {
    pub fn justified(&self) -> bool {
        let printed_fails = match self.check.as_str() {
            "membership" => !self.printed_member,
            "eigen-identity" => !self.printed_eigen,
            _ => false,
        };
        printed_fails && self.corrected_member && self.corrected_eigen && self.corrected_nonzero
    }
}

/// The weight or root a cell key names: `"a"`, `"m"` and `"s0[k]"` are zero,
/// otherwise a sum of terms such as `"-f1"`, `"+2f2"`.
pub fn form_of_key(key: &str, q: usize) -> Result<LinearForm> {
    if key == "a" || key == "m" || key.starts_with("s0") {
        return Ok(LinearForm::zero(q));
    }
    let bad = || Error::Parse(format!("cell key {key:?}"));
    let mut coeffs = vec![0i64; q];
    let mut rest = key;
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'-' => (-1, &rest[1..]),
            b'+' => (1, &rest[1..]),
            _ => (1, rest),
        };
        let f = body.find('f').ok_or_else(bad)?;
        let mult: i64 = if f == 0 { 1 } else { body[..f].parse().map_err(|_| bad())? };
        let digits = body[f + 1..].find(|c: char| !c.is_ascii_digit()).map_or(body.len(), |k| f + 1 + k);
        let i: usize = body[f + 1..digits].parse().map_err(|_| bad())?;
        if !(1..=q).contains(&i) {
            return Err(bad());
        }
        coeffs[i - 1] += sign * mult;
        rest = &body[digits..];
    }
    Ok(LinearForm::new(coeffs))
}

fn rows_at_one(rows: &[Vec<String>]) -> Result<Matrix> {
    let values = rows
        .iter()
        .map(|r| r.iter().map(|e| evaluate_at_one(e)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(values)
}

/// Checks each exception against the printed (golden) cell it replaces.
pub fn audit_exceptions(
    sig: &Signature,
    golden: &GoldenFile,
    exceptions: &GoldenExceptions,
) -> Result<Vec<ExceptionAudit>> {
    let gens = abelian_a(sig).generators;
    let d = sig.d();
    exceptions
        .exceptions
        .iter()
        .map(|e| {
            let printed = golden
                .cells
                .iter()
                .find(|c| c.table == e.table && c.key == e.key)
                .ok_or_else(|| Error::Golden(format!("exception for unknown cell {:?}/{}", e.table, e.key)))?;
            let form = form_of_key(&e.key, sig.q())?;
            let member = |m: &Matrix| {
                m.rows() == d
                    && m.cols() == d
                    && match e.table {
                        Table::Roots => is_member(sig, m),
                        Table::Weights | Table::ZeroWeight => is_in_s(sig, m),
                    }
            };
            let eigen = |m: &Matrix| satisfies_eigen_identity(&gens, &form, m);
            let before = rows_at_one(&printed.rows)?;
            let after = rows_at_one(&e.rows)?;
            Ok(ExceptionAudit {
                cell: format!("{:?}/{}", e.table, e.key),
                check: e.check.clone(),
                printed_member: member(&before),
                printed_eigen: eigen(&before),
                corrected_member: member(&after),
                corrected_eigen: eigen(&after),
                corrected_nonzero: !after.is_zero(),
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Emission

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[cfg_attr(feature = "cli", derive(clap::ValueEnum))]
#[serde(rename_all = "snake_case")]
pub enum Emit {
    Json,
    Markdown,
    Latex,
}

/// Largest `d` for which emissions include the matrix tables.
pub const MATRIX_TABLES_MAX_D: usize = 10;

pub fn emit(report: &DecompositionReport, format: Emit) -> String {
    match format {
        Emit::Json => report.to_json() + "\n",
        Emit::Markdown => to_markdown(report),
        Emit::Latex => to_latex(report),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn fmt_dim(d: Option<usize>) -> String {
    d.map_or_else(|| "-".to_string(), |d| d.to_string())
}

fn markdown_table(out: &mut String, rows: &[MultiplicityRow]) {
    out.push_str("| form | count | dim each | total | expected count | expected dim | expected total |\n");
    out.push_str("|---|---|---|---|---|---|---|\n");
    for r in rows {
        let _ = writeln!(
            out,
            "| `{}` | {} | {} | {} | {} | {} | {} |",
            r.label,
            r.count,
            fmt_dim(r.dim_each),
            r.total,
            r.expected_count,
            fmt_dim(r.expected_dim_each),
            r.expected_total
        );
    }
    out.push('\n');
}

fn to_markdown(r: &DecompositionReport) -> String {
    let sig = r.signature;
    let mut out = String::new();
    let _ = writeln!(out, "# so{sig} in sl_{}\n", sig.d());
    let _ = writeln!(
        out,
        "- dim so = {}\n- dim s = {}\n- root total = {}\n- weight total = {}\n- status: **{}**\n",
        r.dim_so,
        r.dim_s,
        r.root_total,
        r.weight_total,
        if r.passed() { "pass" } else { "FAIL" }
    );
    let _ = writeln!(out, "## Root multiplicities\n");
    markdown_table(&mut out, &r.root_table);
    let _ = writeln!(out, "## Weight multiplicities\n");
    markdown_table(&mut out, &r.weight_table);
    for (title, spaces) in [("Root spaces", &r.roots), ("Weight spaces", &r.weights)] {
        let _ = writeln!(out, "## {title}\n");
        for s in spaces {
            let labels: Vec<&str> = s.basis.iter().map(|b| b.label.as_str()).collect();
            let _ = writeln!(out, "- `{}` (dim {}): {}", s.label, s.multiplicity, labels.join(", "));
        }
        out.push('\n');
    }
    let c = &r.certificates;
    if c.decomposition.is_some() || c.commutant.is_some() {
        let _ = writeln!(out, "## Certificates\n");
    }
    if let Some(d) = &c.decomposition {
        let _ = writeln!(
            out,
            "- sl_d = so ⊕ s: rank {} of {} (direct sum: {})\n- so invariant: {}; s invariant: {}\n- so irreducible: {}; s irreducible: {}",
            d.rank,
            d.sl_dim,
            yes(d.direct_sum),
            yes(d.so_invariant),
            yes(d.s_invariant),
            yes(d.so_irreducible),
            yes(d.s_irreducible)
        );
    }
    if let Some(cm) = &c.commutant {
        for cert in [&cm.s, &cm.so] {
            let _ = writeln!(
                out,
                "- commutant on {} (dim {}): dim {}, {:?}; verdict {:?} ({}); hypothesis: {}",
                cert.space,
                cert.space_dim,
                cert.commutant_dim,
                cert.commutant_type,
                cert.verdict,
                cert.reason,
                cert.hypothesis
            );
        }
    }
    if let Some(cl) = &c.closure {
        let _ = writeln!(
            out,
            "- closure in s: {}/{} basis seeds reach dim {}",
            cl.s.reaching_target, cl.s.seeds, cl.s.target_dim
        );
        let _ = writeln!(
            out,
            "- closure in so: final dims {}..{} of {}",
            cl.so.min_final_dim, cl.so.max_final_dim, cl.so.target_dim
        );
    }
    if let Some(l) = &c.ladder {
        let _ = writeln!(
            out,
            "- weight ladder: {}/{} edges verified, connected: {}, s_0 reached {}/{}",
            l.edges.iter().filter(|e| e.verified_nonzero).count(),
            l.edges.len(),
            yes(l.connected),
            l.zero_reached_dim,
            l.zero_dim
        );
    }
    if let Some(g) = &c.generation {
        let _ = writeln!(out, "- generation: {}/{} seeds generate sl_d", g.generating, g.seeds);
    }
    if c.decomposition.is_some() {
        out.push('\n');
    }
    if !r.notes.is_empty() {
        let _ = writeln!(out, "## Notes\n");
        for n in &r.notes {
            let _ = writeln!(out, "- {n}");
        }
        out.push('\n');
    }
    if !r.failures.is_empty() {
        let _ = writeln!(out, "## Failures\n");
        for f in &r.failures {
            let _ = writeln!(out, "- {f}");
        }
        out.push('\n');
    }
    if sig.d() <= MATRIX_TABLES_MAX_D {
        let _ = writeln!(out, "## Matrix tables\n");
        out.push_str(&matrix_tables_markdown(&sig));
    }
    out
}

fn latex_escape(s: &str) -> String {
    s.replace('_', "\\_").replace('{', "\\{").replace('}', "\\}")
}

fn to_latex(r: &DecompositionReport) -> String {
    let sig = r.signature;
    let mut out = String::new();
    let _ = writeln!(out, "% so{sig}: generated by decomp {}", r.tool_version);
    let _ = writeln!(
        out,
        "$\\dim\\mathfrak{{so}}{sig} = {}$, $\\dim\\mathfrak{{s}} = {}$, root total ${}$, weight total ${}$.\n",
        r.dim_so, r.dim_s, r.root_total, r.weight_total
    );
    for (title, rows) in [("Root multiplicities", &r.root_table), ("Weight multiplicities", &r.weight_table)] {
        let _ = writeln!(
            out,
            "% {title}\n\\begin{{tabular}}{{|c|c|c|c|}}\n\\hline\nform & count & dim & total\\\\\n\\hline"
        );
        for row in rows {
            let _ = writeln!(
                out,
                "${}$ & {} & {} & {}\\\\",
                row.label.replace('±', "\\pm ").replace('∓', "\\mp "),
                row.count,
                fmt_dim(row.dim_each),
                row.total
            );
        }
        let _ = writeln!(out, "\\hline\n\\end{{tabular}}\n");
    }
    for n in &r.notes {
        let _ = writeln!(out, "% note: {}", latex_escape(n));
    }
    for f in &r.failures {
        let _ = writeln!(out, "% FAILURE: {}", latex_escape(&f.to_string()));
    }
    if sig.d() <= MATRIX_TABLES_MAX_D {
        out.push_str(&matrix_tables_latex(&sig));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    #[test]
    fn evaluation_of_entries() {
        let cases = [("", 0), ("x", 1), ("-x", -1), ("x_2", 1), ("-x_2-x_3", -2), ("2x_2", 2), ("3", 3), ("a_1", 1)];
        for (s, v) in cases {
            assert_eq!(evaluate_at_one(s).unwrap(), ExactScalar::from_int(v), "{s}");
        }
        assert_eq!(evaluate_at_one("1/2x").unwrap(), ExactScalar::new(1, 2).unwrap());
        assert!(evaluate_at_one("-").is_err());
        assert!(evaluate_at_one("x+_").is_err());
    }

    #[test]
    fn rendering() {
        let terms = [(ExactScalar::from_int(-1), "x_2"), (ExactScalar::from_int(-1), "x_3")];
        assert_eq!(render_linear(terms.into_iter()), "-x_2-x_3");
        let terms = [(ExactScalar::from_int(2), "x_2")];
        assert_eq!(render_linear(terms.into_iter()), "2x_2");
    }

    #[test]
    fn cells_for_so42() {
        let s = sig(4, 2);
        let cells = matrix_cells(&s);
        let keys: Vec<&str> = cells.iter().map(|c| c.key.as_str()).collect();
        assert_eq!(
            keys,
            [
                "a", "m", "f1", "f2", "-f1", "-f2", "f1+f2", "-f1-f2", "f1-f2", "-f1+f2", "f1", "f2", "-f1", "-f2",
                "2f1", "2f2", "-2f1", "-2f2", "f1+f2", "-f1-f2", "f1-f2", "-f1+f2", "s0[1]", "s0[2]", "s0[3]"
            ]
        );
        let f1 = &cells[2].symbolic();
        assert_eq!(f1[0][3], "x_2");
        assert_eq!(f1[1][4], "-x_1");
        let s0 = &cells[23].symbolic();
        assert_eq!(s0[0][0], "2x_2");
        assert_eq!(s0[1][1], "2x_3");
        assert_eq!(s0[3][3], "-x_2-x_3");
        assert_eq!(cells[24].symbolic()[2][2], "-x_4");
    }

    #[test]
    fn report_round_trip() {
        let r = build_report(&sig(3, 1), Check::All).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        let back = DecompositionReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(r.root_total + r.weight_total, 15);
    }

    #[test]
    fn emissions_are_deterministic() {
        let r = build_report(&sig(2, 1), Check::All).unwrap();
        for f in [Emit::Json, Emit::Markdown, Emit::Latex] {
            assert_eq!(emit(&r, f), emit(&build_report(&sig(2, 1), Check::All).unwrap(), f));
        }
        assert!(emit(&r, Emit::Latex).contains("\\begin{array}{cc|c}"));
    }
}
