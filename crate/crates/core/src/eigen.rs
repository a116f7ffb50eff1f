//! Shared machinery for simultaneous eigenspaces of `ad(a)`: root spaces in
//! so(p,q) and weight spaces in the complement s.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::basis::Signature;
use crate::linalg::VectorSpaceBasis;
use crate::matrix::Matrix;
use crate::so_pq::{abelian_a, bracket, LinearForm, Named};

/// A structured verification failure. These indicate a defect in a construction,
/// not bad user input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub subject: String,
    pub detail: String,
}

impl Failure {
    pub fn new(check: &str, subject: impl Into<String>, detail: impl Into<String>) -> Self {
        Failure { check: check.to_string(), subject: subject.into(), detail: detail.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", self.check, self.subject, self.detail)
    }
}

/// Shape of a root or weight, matching the rows of the multiplicity tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormKind {
    /// `±f_i`
    Short,
    /// `±2f_i`
    Double,
    /// `±(f_i + f_j)`
    Sum,
    /// `±(f_i − f_j)`
    Difference,
    Zero,
    Other,
}

impl FormKind {
    pub fn classify(form: &LinearForm) -> FormKind {
        let nz: Vec<i64> = form.coeffs.iter().copied().filter(|&c| c != 0).collect();
        match nz.as_slice() {
            [] => FormKind::Zero,
            [c] if c.abs() == 1 => FormKind::Short,
            [c] if c.abs() == 2 => FormKind::Double,
            [a, b] if a.abs() == 1 && b.abs() == 1 => {
                if a == b {
                    FormKind::Sum
                } else {
                    FormKind::Difference
                }
            }
            _ => FormKind::Other,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            FormKind::Short => "±f_i",
            FormKind::Double => "±2f_i",
            FormKind::Sum => "±f_i±f_j",
            FormKind::Difference => "±f_i∓f_j",
            FormKind::Zero => "0",
            FormKind::Other => "other",
        }
    }
}

/// A simultaneous eigenspace of `ad(F_1), …, ad(F_q)` with an explicit basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenSpace {
    pub form: LinearForm,
    pub basis: Vec<Named>,
}

impl EigenSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn matrices(&self) -> impl Iterator<Item = &Matrix> {
        self.basis.iter().map(|n| &n.matrix)
    }
}

/// One row of a multiplicity table, computed next to its closed-form value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityRow {
    pub kind: FormKind,
    pub label: String,
    pub count: usize,
    pub dim_each: Option<usize>,
    pub total: usize,
    pub expected_count: usize,
    pub expected_dim_each: Option<usize>,
    pub expected_total: usize,
}

impl MultiplicityRow {
    pub fn matches(&self) -> bool {
        self.count == self.expected_count
            && self.total == self.expected_total
            && (self.count == 0 || self.dim_each == self.expected_dim_each)
    }
}

/// The root system of so(p,q) or the weight system of s, plus verification results.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceSystem {
    pub sig: Signature,
    pub spaces: Vec<EigenSpace>,
    pub table: Vec<MultiplicityRow>,
    pub failures: Vec<Failure>,
}

impl SpaceSystem {
    pub fn total_dim(&self) -> usize {
        self.spaces.iter().map(EigenSpace::dim).sum()
    }

    pub fn is_verified(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn space(&self, form: &LinearForm) -> Option<&EigenSpace> {
        self.spaces.iter().find(|s| &s.form == form)
    }

    pub fn forms(&self) -> Vec<&LinearForm> {
        self.spaces.iter().map(|s| &s.form).collect()
    }
}

/// `[F_i, X] = form_i · X` for every generator `F_i` of `a`.
pub fn satisfies_eigen_identity(generators: &[Matrix], form: &LinearForm, x: &Matrix) -> bool {
    generators.len() == form.coeffs.len()
        && generators.iter().zip(&form.coeffs).all(|(f, &c)| bracket(f, x).is_ok_and(|b| b == x.scale(&c.into())))
}

/// `(count, dim_each)` expected for each kind.
pub(crate) type ExpectedRows = Vec<(FormKind, usize, usize)>;

/// Sorts spaces, builds the table, and runs the checks shared by roots and weights:
/// eigen-identities, membership, table rows, grand total, and independence of the union.
pub(crate) fn assemble(
    sig: Signature,
    mut spaces: Vec<EigenSpace>,
    expected: ExpectedRows,
    expected_total: usize,
    member: impl Fn(&Matrix) -> bool,
    member_name: &str,
    mut failures: Vec<Failure>,
) -> SpaceSystem {
    spaces.retain(|s| s.dim() > 0);
    spaces.sort_by(|a, b| a.form.report_cmp(&b.form));
    let gens = abelian_a(&sig).generators;

    for s in &spaces {
        for n in &s.basis {
            if !satisfies_eigen_identity(&gens, &s.form, &n.matrix) {
                failures.push(Failure::new("eigen-identity", &n.label, format!("[F_i, X] != ({}) X", s.form)));
            }
            if !member(&n.matrix) {
                failures.push(Failure::new("membership", &n.label, format!("not in {member_name}")));
            }
        }
    }

    let mut by_kind: BTreeMap<FormKind, Vec<usize>> = BTreeMap::new();
    for s in &spaces {
        by_kind.entry(FormKind::classify(&s.form)).or_default().push(s.dim());
    }
    let mut table = Vec::new();
    for (kind, exp_count, exp_dim) in expected {
        let dims = by_kind.remove(&kind).unwrap_or_default();
        let dim_each = match dims.first() {
            Some(&d0) if dims.iter().all(|&d| d == d0) => Some(d0),
            _ => None,
        };
        let row = MultiplicityRow {
            kind,
            label: kind.label().to_string(),
            count: dims.len(),
            dim_each,
            total: dims.iter().sum(),
            expected_count: exp_count,
            expected_dim_each: (exp_count > 0).then_some(exp_dim),
            expected_total: exp_count * exp_dim,
        };
        if !row.matches() {
            failures.push(Failure::new(
                "multiplicity-table",
                row.label.clone(),
                format!(
                    "count {} dim {:?} total {}, expected count {} dim {:?} total {}",
                    row.count, row.dim_each, row.total, row.expected_count, row.expected_dim_each, row.expected_total
                ),
            ));
        }
        table.push(row);
    }
    for (kind, dims) in by_kind {
        failures.push(Failure::new("unexpected-form", kind.label(), format!("{} spaces", dims.len())));
    }

    let system = SpaceSystem { sig, spaces, table, failures: Vec::new() };
    let total = system.total_dim();
    if total != expected_total {
        failures.push(Failure::new("total-dimension", member_name, format!("{total} != {expected_total}")));
    }
    let d2 = sig.d() * sig.d();
    let mut union = VectorSpaceBasis::new(d2);
    for m in system.spaces.iter().flat_map(EigenSpace::matrices) {
        union.insert_matrix(m).expect("d x d matrices");
    }
    if union.dim() != total {
        failures.push(Failure::new(
            "independence",
            member_name,
            format!("union of bases has rank {} < {total}", union.dim()),
        ));
    }
    SpaceSystem { failures, ..system }
}
