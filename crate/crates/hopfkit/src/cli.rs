//! Command line front end: parse structure-constant presentations, run the
//! named verification suites, and emit deterministic reports.
//!
//! A presentation document is a single JSON object declaring a field, a list
//! of named objects given by dense structure tensors (scalar entries are
//! strings so that exact rationals survive the trip), and an optional list
//! of tasks. The `run` task executes the document's own task list; every
//! other task name runs that one suite over the applicable objects. Reports
//! are byte-identical across runs; timing goes to stderr only.

use crate::algebra::{Algebra, Bimodule};
use crate::check::CheckReport;
use crate::coalg::{
    antipode, Bialgebra, Coalgebra, ComoduleAlgebra, ModuleCoalgebra,
};
use crate::coring::{conjugate_coring, dk_coring, sweedler_coring, trivial_coring, ExtensionData};
use crate::exactla::{ExactField, ExactMatrix};
use crate::hilbert90::{h1_classes, Cocycle, GroupAction, GroupPresentation, SemilinearModule};
use crate::hopfmod::{
    canonical_map, check_operator_identities, fthm_report, fusion_operator, is_bijective,
    regular_hopf_module, search_failing_hopf_module, BcBimodule, DkHopfModule,
};
use crate::library;
use clap::error::ErrorKind;
use clap::{Parser, ValueEnum};
use serde::Deserialize;
use serde::Serialize;
use std::fmt;

/// Errors that prevent a run from producing a report; they exit with code 2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CliError {
    /// The document is not valid JSON or a scalar does not parse in the
    /// declared field; carries the line/column or the offending path.
    Parse { path: String, message: String },
    /// A tensor does not have its declared shape.
    Shape { path: String, expected: String, got: String },
    /// A reference to an object that is not declared (or not of the
    /// expected kind).
    UnknownName { path: String, name: String },
    /// Command line misuse outside clap's own diagnostics.
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { path, message } => write!(f, "parse error at {}: {}", path, message),
            CliError::Shape { path, expected, got } => {
                write!(f, "shape error at {}: expected {}, got {}", path, expected, got)
            }
            CliError::UnknownName { path, name } => {
                write!(f, "unknown name at {}: {:?}", path, name)
            }
            CliError::Usage(msg) => write!(f, "usage error: {}", msg),
        }
    }
}

impl std::error::Error for CliError {}

/// The raw, untyped form of a presentation document as it appears on disk.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDocument {
    pub field: String,
    #[serde(default)]
    pub objects: Vec<RawObject>,
    #[serde(default)]
    pub tasks: Vec<String>,
}

/// One named object, tagged by kind; tensors are nested arrays of scalar
/// literals, rows outermost, flattened tensor legs within a row.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RawObject {
    Algebra {
        name: String,
        dim: usize,
        mult: Vec<Vec<String>>,
        unit: Vec<String>,
    },
    Coalgebra {
        name: String,
        dim: usize,
        comult: Vec<Vec<String>>,
        counit: Vec<String>,
    },
    Bialgebra {
        name: String,
        algebra: String,
        coalgebra: String,
    },
    ComoduleAlgebra {
        name: String,
        bialgebra: String,
        algebra: String,
        coaction: Vec<Vec<String>>,
    },
    ModuleCoalgebra {
        name: String,
        bialgebra: String,
        coalgebra: String,
        action: Vec<Vec<String>>,
    },
    Module {
        name: String,
        algebra: String,
        dim: usize,
        action: Vec<Vec<String>>,
    },
    HopfModule {
        name: String,
        #[serde(rename = "comodule-algebra")]
        comodule_algebra: String,
        dim: usize,
        action: Vec<Vec<String>>,
        coaction: Vec<Vec<String>>,
    },
    GroupAction {
        name: String,
        algebra: String,
        table: Vec<Vec<usize>>,
        maps: Vec<Vec<Vec<String>>>,
    },
    Cocycle {
        name: String,
        action: String,
        values: Vec<Vec<Vec<String>>>,
    },
}

impl RawObject {
    fn name(&self) -> &str {
        match self {
            RawObject::Algebra { name, .. }
            | RawObject::Coalgebra { name, .. }
            | RawObject::Bialgebra { name, .. }
            | RawObject::ComoduleAlgebra { name, .. }
            | RawObject::ModuleCoalgebra { name, .. }
            | RawObject::Module { name, .. }
            | RawObject::HopfModule { name, .. }
            | RawObject::GroupAction { name, .. }
            | RawObject::Cocycle { name, .. } => name,
        }
    }
}

/// Parses the raw document, reporting JSON syntax errors with their line
/// and column and validating the field descriptor.
pub fn parse_document(text: &str) -> Result<RawDocument, CliError> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    parse_field(&raw.field)?;
    Ok(raw)
}

/// Parses a field descriptor: "Q" or "GF(p)" for a prime p.
pub fn parse_field(descriptor: &str) -> Result<ExactField, CliError> {
    let s = descriptor.trim();
    if s == "Q" {
        return Ok(ExactField::Rationals);
    }
    if let Some(inner) = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
        let p: u64 = inner.trim().parse().map_err(|_| CliError::Parse {
            path: "field".into(),
            message: format!("{:?} is not a modulus", inner),
        })?;
        return ExactField::prime(p).map_err(|e| CliError::Parse {
            path: "field".into(),
            message: e.to_string(),
        });
    }
    Err(CliError::Parse {
        path: "field".into(),
        message: format!("unknown field descriptor {:?}; use \"Q\" or \"GF(p)\"", s),
    })
}

/// A fully resolved named object.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ResolvedObject {
    Algebra(Algebra),
    Coalgebra(Coalgebra),
    Bialgebra(Bialgebra),
    ComoduleAlgebra(ComoduleAlgebra),
    ModuleCoalgebra(ModuleCoalgebra),
    Module(Bimodule),
    HopfModule(DkHopfModule),
    GroupAction(GroupAction),
    Cocycle(Cocycle),
}

impl ResolvedObject {
    fn kind(&self) -> &'static str {
        match self {
            ResolvedObject::Algebra(_) => "algebra",
            ResolvedObject::Coalgebra(_) => "coalgebra",
            ResolvedObject::Bialgebra(_) => "bialgebra",
            ResolvedObject::ComoduleAlgebra(_) => "comodule-algebra",
            ResolvedObject::ModuleCoalgebra(_) => "module-coalgebra",
            ResolvedObject::Module(_) => "module",
            ResolvedObject::HopfModule(_) => "hopf-module",
            ResolvedObject::GroupAction(_) => "group-action",
            ResolvedObject::Cocycle(_) => "cocycle",
        }
    }
}

/// A validated document: the field, the objects in declaration order, and
/// the document's own task list.
#[derive(Clone, Debug)]
pub struct Document {
    pub field: ExactField,
    pub objects: Vec<(String, ResolvedObject)>,
    pub tasks: Vec<Task>,
}

impl Document {
    fn lookup(&self, name: &str) -> Option<&ResolvedObject> {
        self.objects.iter().find(|(n, _)| n == name).map(|(_, o)| o)
    }
}

fn matrix_from_rows(
    field: ExactField,
    rows: &[Vec<String>],
    expected_rows: usize,
    expected_cols: usize,
    path: &str,
) -> Result<ExactMatrix, CliError> {
    if rows.len() != expected_rows || rows.iter().any(|r| r.len() != expected_cols) {
        let got_cols = rows.first().map(|r| r.len()).unwrap_or(0);
        return Err(CliError::Shape {
            path: path.into(),
            expected: format!("{} x {}", expected_rows, expected_cols),
            got: format!("{} x {}", rows.len(), got_cols),
        });
    }
    let mut m = ExactMatrix::zeros(field, expected_rows, expected_cols);
    for (i, row) in rows.iter().enumerate() {
        for (j, literal) in row.iter().enumerate() {
            let s = field.parse(literal).map_err(|e| CliError::Parse {
                path: format!("{}[{}][{}]", path, i, j),
                message: e.to_string(),
            })?;
            m.set(i, j, s);
        }
    }
    Ok(m)
}

fn column_from_entries(
    field: ExactField,
    entries: &[String],
    expected: usize,
    path: &str,
) -> Result<ExactMatrix, CliError> {
    let rows: Vec<Vec<String>> = entries.iter().map(|e| vec![e.clone()]).collect();
    matrix_from_rows(field, &rows, expected, 1, path)
}

fn row_from_entries(
    field: ExactField,
    entries: &[String],
    expected: usize,
    path: &str,
) -> Result<ExactMatrix, CliError> {
    matrix_from_rows(field, &[entries.to_vec()], 1, expected, path).map_err(|e| match e {
        CliError::Shape { path, expected, .. } => CliError::Shape {
            path,
            expected,
            got: format!("1 x {}", entries.len()),
        },
        other => other,
    })
}

macro_rules! resolve_ref {
    ($doc:expr, $name:expr, $path:expr, $variant:ident) => {
        match $doc.lookup($name) {
            Some(ResolvedObject::$variant(x)) => x.clone(),
            _ => {
                return Err(CliError::UnknownName {
                    path: $path.to_string(),
                    name: $name.to_string(),
                })
            }
        }
    };
}

/// Resolves a raw document: parses every tensor in the declared field,
/// checks shapes, resolves references in declaration order, and validates
/// the task names.
pub fn resolve(raw: &RawDocument) -> Result<Document, CliError> {
    let field = parse_field(&raw.field)?;
    let mut doc = Document { field, objects: Vec::new(), tasks: Vec::new() };
    for (idx, obj) in raw.objects.iter().enumerate() {
        let path = format!("objects[{}]", idx);
        if doc.lookup(obj.name()).is_some() {
            return Err(CliError::Parse {
                path: format!("{}.name", path),
                message: format!("duplicate object name {:?}", obj.name()),
            });
        }
        let resolved = resolve_object(&doc, obj, &path)?;
        doc.objects.push((obj.name().to_string(), resolved));
    }
    for (idx, t) in raw.tasks.iter().enumerate() {
        let task = Task::from_name(t).ok_or_else(|| CliError::Parse {
            path: format!("tasks[{}]", idx),
            message: format!("unknown task {:?}", t),
        })?;
        if task == Task::Run {
            return Err(CliError::Parse {
                path: format!("tasks[{}]", idx),
                message: "a document task list cannot contain \"run\"".into(),
            });
        }
        doc.tasks.push(task);
    }
    Ok(doc)
}

fn resolve_object(
    doc: &Document,
    obj: &RawObject,
    path: &str,
) -> Result<ResolvedObject, CliError> {
    let f = doc.field;
    let fail = |e: &dyn fmt::Display| CliError::Parse {
        path: path.to_string(),
        message: e.to_string(),
    };
    match obj {
        RawObject::Algebra { dim, mult, unit, .. } => {
            let mult = matrix_from_rows(f, mult, *dim, dim * dim, &format!("{}.mult", path))?;
            let unit = column_from_entries(f, unit, *dim, &format!("{}.unit", path))?;
            let a = Algebra::new(f, *dim, mult, unit).map_err(|e| fail(&e))?;
            Ok(ResolvedObject::Algebra(a))
        }
        RawObject::Coalgebra { dim, comult, counit, .. } => {
            let comult = matrix_from_rows(f, comult, dim * dim, *dim, &format!("{}.comult", path))?;
            let counit = row_from_entries(f, counit, *dim, &format!("{}.counit", path))?;
            let c = Coalgebra::new(f, *dim, comult, counit).map_err(|e| fail(&e))?;
            Ok(ResolvedObject::Coalgebra(c))
        }
        RawObject::Bialgebra { algebra, coalgebra, .. } => {
            let a = resolve_ref!(doc, algebra, format!("{}.algebra", path), Algebra);
            let c = resolve_ref!(doc, coalgebra, format!("{}.coalgebra", path), Coalgebra);
            let b = Bialgebra::new(a, c).map_err(|e| fail(&e))?;
            Ok(ResolvedObject::Bialgebra(b))
        }
        RawObject::ComoduleAlgebra { bialgebra, algebra, coaction, .. } => {
            let h = resolve_ref!(doc, bialgebra, format!("{}.bialgebra", path), Bialgebra);
            let a = resolve_ref!(doc, algebra, format!("{}.algebra", path), Algebra);
            let nu = matrix_from_rows(
                f,
                coaction,
                h.dim() * a.dim,
                a.dim,
                &format!("{}.coaction", path),
            )?;
            let ca = crate::coalg::comodule_algebra_on_coinvariants(h, a, nu)
                .map_err(|e| fail(&e))?;
            Ok(ResolvedObject::ComoduleAlgebra(ca))
        }
        RawObject::ModuleCoalgebra { bialgebra, coalgebra, action, .. } => {
            let h = resolve_ref!(doc, bialgebra, format!("{}.bialgebra", path), Bialgebra);
            let z = resolve_ref!(doc, coalgebra, format!("{}.coalgebra", path), Coalgebra);
            let act = matrix_from_rows(
                f,
                action,
                z.dim,
                h.dim() * z.dim,
                &format!("{}.action", path),
            )?;
            let mc = ModuleCoalgebra::new(h, z, act).map_err(|e| fail(&e))?;
            Ok(ResolvedObject::ModuleCoalgebra(mc))
        }
        RawObject::Module { algebra, dim, action, .. } => {
            let a = resolve_ref!(doc, algebra, format!("{}.algebra", path), Algebra);
            let act =
                matrix_from_rows(f, action, *dim, a.dim * dim, &format!("{}.action", path))?;
            let m = Bimodule::left_module(&a, *dim, act).map_err(|e| fail(&e))?;
            Ok(ResolvedObject::Module(m))
        }
        RawObject::HopfModule { comodule_algebra, dim, action, coaction, .. } => {
            let ca = resolve_ref!(
                doc,
                comodule_algebra,
                format!("{}.comodule-algebra", path),
                ComoduleAlgebra
            );
            let act = matrix_from_rows(
                f,
                action,
                *dim,
                ca.a.dim * dim,
                &format!("{}.action", path),
            )?;
            let coact = matrix_from_rows(
                f,
                coaction,
                ca.h.dim() * dim,
                *dim,
                &format!("{}.coaction", path),
            )?;
            let z = crate::coalg::free_module_coalgebra(&ca.h, &Coalgebra::trivial(f));
            let n = DkHopfModule::new(ca, z, *dim, act, coact).map_err(|e| fail(&e))?;
            Ok(ResolvedObject::HopfModule(n))
        }
        RawObject::GroupAction { algebra, table, maps, .. } => {
            let a = resolve_ref!(doc, algebra, format!("{}.algebra", path), Algebra);
            let group = GroupPresentation::new(table.clone()).map_err(|e| fail(&e))?;
            let mut resolved_maps = Vec::new();
            for (g, m) in maps.iter().enumerate() {
                resolved_maps.push(matrix_from_rows(
                    f,
                    m,
                    a.dim,
                    a.dim,
                    &format!("{}.maps[{}]", path, g),
                )?);
            }
            let action = GroupAction::new(group, a, resolved_maps).map_err(|e| fail(&e))?;
            Ok(ResolvedObject::GroupAction(action))
        }
        RawObject::Cocycle { action, values, .. } => {
            let act = resolve_ref!(doc, action, format!("{}.action", path), GroupAction);
            let module = SemilinearModule::regular(&act);
            let mut resolved = Vec::new();
            for (g, v) in values.iter().enumerate() {
                resolved.push(matrix_from_rows(
                    f,
                    v,
                    module.dim,
                    module.dim,
                    &format!("{}.values[{}]", path, g),
                )?);
            }
            let phi = Cocycle::new(module, resolved).map_err(|e| fail(&e))?;
            Ok(ResolvedObject::Cocycle(phi))
        }
    }
}

/// The shipped example library, loadable with `--builtin <name>` or an
/// `--input builtin:<name>` path.
pub const BUILTIN_NAMES: [&str; 6] = [
    "kc2",
    "kc2-dual",
    "f4-galois",
    "f8-galois",
    "sweedler-h4",
    "idempotent-monoid",
];

/// Builds one of the shipped example documents.
pub fn builtin(name: &str) -> Result<Document, CliError> {
    let q = ExactField::Rationals;
    let gf2 = ExactField::prime(2).expect("2 is prime");
    let standard = vec![
        Task::Check,
        Task::Antipode,
        Task::Galois,
        Task::Fthm,
        Task::Operators,
        Task::Coring,
    ];
    let with_h1 = {
        let mut t = standard.clone();
        t.push(Task::H1);
        t
    };
    let doc = match name {
        "kc2" => {
            let b = library::kc2_bialgebra(q);
            Document {
                field: q,
                objects: vec![
                    ("algebra".into(), ResolvedObject::Algebra(b.alg.clone())),
                    ("coalgebra".into(), ResolvedObject::Coalgebra(b.coalg.clone())),
                    ("bialgebra".into(), ResolvedObject::Bialgebra(b)),
                    (
                        "comodule-algebra".into(),
                        ResolvedObject::ComoduleAlgebra(library::kc2_comodule_algebra(q)),
                    ),
                ],
                tasks: standard,
            }
        }
        "kc2-dual" => {
            let b = library::dual_c2_bialgebra(gf2);
            Document {
                field: gf2,
                objects: vec![
                    ("algebra".into(), ResolvedObject::Algebra(b.alg.clone())),
                    ("coalgebra".into(), ResolvedObject::Coalgebra(b.coalg.clone())),
                    ("bialgebra".into(), ResolvedObject::Bialgebra(b)),
                    (
                        "comodule-algebra".into(),
                        ResolvedObject::ComoduleAlgebra(library::dual_c2_comodule_algebra(gf2)),
                    ),
                ],
                tasks: standard,
            }
        }
        "f4-galois" => {
            let a = library::f4();
            let action = GroupAction::new(
                GroupPresentation::cyclic(2),
                a.clone(),
                vec![ExactMatrix::identity(gf2, 2), library::f4_frobenius()],
            )
            .expect("the frobenius action is well formed");
            let module = SemilinearModule::regular(&action);
            let norm_one = Cocycle::new(
                module,
                vec![ExactMatrix::identity(gf2, 2), a.left_mult_basis(1)],
            )
            .expect("cocycle shapes agree");
            Document {
                field: gf2,
                objects: vec![
                    ("field-algebra".into(), ResolvedObject::Algebra(a)),
                    (
                        "dual-group-bialgebra".into(),
                        ResolvedObject::Bialgebra(library::dual_c2_bialgebra(gf2)),
                    ),
                    (
                        "comodule-algebra".into(),
                        ResolvedObject::ComoduleAlgebra(library::f4_comodule_algebra()),
                    ),
                    ("frobenius-action".into(), ResolvedObject::GroupAction(action)),
                    ("norm-one-cocycle".into(), ResolvedObject::Cocycle(norm_one)),
                ],
                tasks: with_h1,
            }
        }
        "f8-galois" => {
            let a = library::f8();
            let frob = library::f8_frobenius();
            let action = GroupAction::new(
                GroupPresentation::cyclic(3),
                a.clone(),
                vec![ExactMatrix::identity(gf2, 3), frob.clone(), frob.mul(&frob)],
            )
            .expect("the frobenius action is well formed");
            let module = SemilinearModule::regular(&action);
            // The value at the generator determines the rest of the cocycle.
            let v1 = a.left_mult_basis(1);
            let v2 = v1.mul(&frob.mul(&v1).mul(&frob.mul(&frob)));
            let norm_one =
                Cocycle::new(module, vec![ExactMatrix::identity(gf2, 3), v1, v2])
                    .expect("cocycle shapes agree");
            Document {
                field: gf2,
                objects: vec![
                    ("field-algebra".into(), ResolvedObject::Algebra(a)),
                    (
                        "dual-group-bialgebra".into(),
                        ResolvedObject::Bialgebra(library::dual_cyclic_bialgebra(gf2, 3)),
                    ),
                    (
                        "comodule-algebra".into(),
                        ResolvedObject::ComoduleAlgebra(library::f8_comodule_algebra()),
                    ),
                    ("frobenius-action".into(), ResolvedObject::GroupAction(action)),
                    ("norm-one-cocycle".into(), ResolvedObject::Cocycle(norm_one)),
                ],
                tasks: with_h1,
            }
        }
        "sweedler-h4" => {
            let b = library::sweedler_bialgebra();
            Document {
                field: q,
                objects: vec![
                    ("algebra".into(), ResolvedObject::Algebra(b.alg.clone())),
                    ("coalgebra".into(), ResolvedObject::Coalgebra(b.coalg.clone())),
                    ("bialgebra".into(), ResolvedObject::Bialgebra(b)),
                    (
                        "comodule-algebra".into(),
                        ResolvedObject::ComoduleAlgebra(library::sweedler_comodule_algebra()),
                    ),
                ],
                tasks: standard,
            }
        }
        "idempotent-monoid" => {
            let b = library::idempotent_bialgebra(q);
            Document {
                field: q,
                objects: vec![
                    ("algebra".into(), ResolvedObject::Algebra(b.alg.clone())),
                    ("coalgebra".into(), ResolvedObject::Coalgebra(b.coalg.clone())),
                    ("bialgebra".into(), ResolvedObject::Bialgebra(b)),
                    (
                        "comodule-algebra".into(),
                        ResolvedObject::ComoduleAlgebra(library::idempotent_comodule_algebra(q)),
                    ),
                ],
                tasks: standard,
            }
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown builtin {:?}; available: {}",
                other,
                BUILTIN_NAMES.join(", ")
            )))
        }
    };
    Ok(doc)
}

/// The verification suites the CLI can run.
#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
#[value(rename_all = "kebab-case")]
pub enum Task {
    /// Run every invariant suite on every selected object.
    Check,
    /// Compute antipodes and cross-check against fusion invertibility.
    Antipode,
    /// Decide invertibility of the canonical map of each comodule algebra.
    Galois,
    /// Run the fundamental theorem verifier on each comodule algebra.
    Fthm,
    /// Enumerate first cohomology classes of each group action.
    H1,
    /// Verify the operator identities tying the Galois, Hopf, and
    /// auxiliary operators together.
    Operators,
    /// Build the associated corings and compare the conjugate of the
    /// trivial coring with the direct tensor-square construction.
    Coring,
    /// Execute the document's own task list in order.
    Run,
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::Check => "check",
            Task::Antipode => "antipode",
            Task::Galois => "galois",
            Task::Fthm => "fthm",
            Task::H1 => "h1",
            Task::Operators => "operators",
            Task::Coring => "coring",
            Task::Run => "run",
        }
    }

    pub fn from_name(name: &str) -> Option<Task> {
        match name {
            "check" => Some(Task::Check),
            "antipode" => Some(Task::Antipode),
            "galois" => Some(Task::Galois),
            "fthm" => Some(Task::Fthm),
            "h1" => Some(Task::H1),
            "operators" => Some(Task::Operators),
            "coring" => Some(Task::Coring),
            "run" => Some(Task::Run),
            _ => None,
        }
    }
}

/// One object's outcome within a task.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct EntryReport {
    pub object: String,
    pub verdict: String,
    pub details: Vec<String>,
}

/// One task's outcome.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TaskReport {
    pub task: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub entries: Vec<EntryReport>,
}

/// The whole run's outcome; the machine format serializes this struct.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Report {
    pub field: String,
    pub tasks: Vec<TaskReport>,
    pub verdict: String,
}

impl Report {
    /// 0 when everything passed (skips allowed), 1 on any failure.
    pub fn exit_code(&self) -> i32 {
        if self.tasks.iter().any(|t| t.verdict == "fail") {
            1
        } else {
            0
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("field: {}\n", self.field));
        for t in &self.tasks {
            out.push_str(&format!("task {}\n", t.task));
            if let Some(reason) = &t.reason {
                out.push_str(&format!("  reason: {}\n", reason));
            }
            for e in &t.entries {
                out.push_str(&format!("  {}: {}\n", e.object, e.verdict));
                for d in &e.details {
                    out.push_str(&format!("    {}\n", d));
                }
            }
            out.push_str(&format!("  verdict: {}\n", t.verdict));
        }
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out
    }

    pub fn render_machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

pub fn field_name(f: ExactField) -> String {
    match f {
        ExactField::Rationals => "Q".into(),
        ExactField::PrimeField(p) => format!("GF({})", p),
    }
}

fn entry_from_report(object: &str, report: &CheckReport) -> EntryReport {
    let mut details = Vec::new();
    for v in &report.violations {
        details.push(format!("violation: {} at {:?}", v.law, v.indices));
    }
    EntryReport {
        object: object.to_string(),
        verdict: if report.passed() { "pass".into() } else { "fail".into() },
        details,
    }
}

fn error_entry(object: &str, error: &dyn fmt::Display) -> EntryReport {
    EntryReport {
        object: object.to_string(),
        verdict: "fail".into(),
        details: vec![format!("error: {}", error)],
    }
}

fn finish_task(task: Task, entries: Vec<EntryReport>) -> TaskReport {
    if entries.is_empty() {
        return TaskReport {
            task: task.name().into(),
            verdict: "skipped".into(),
            reason: Some("no applicable objects".into()),
            entries,
        };
    }
    let verdict = if entries.iter().all(|e| e.verdict == "pass") {
        "pass"
    } else {
        "fail"
    };
    TaskReport {
        task: task.name().into(),
        verdict: verdict.into(),
        reason: None,
        entries,
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run_check(selection: &[(String, ResolvedObject)]) -> TaskReport {
    let entries = selection
        .iter()
        .map(|(name, obj)| {
            let report = match obj {
                ResolvedObject::Algebra(a) => a.check(),
                ResolvedObject::Coalgebra(c) => c.check(),
                ResolvedObject::Bialgebra(b) => b.check(),
                ResolvedObject::ComoduleAlgebra(ca) => ca.check(),
                ResolvedObject::ModuleCoalgebra(z) => z.check(),
                ResolvedObject::Module(m) => m.check(),
                ResolvedObject::HopfModule(n) => n.check(),
                ResolvedObject::GroupAction(g) => g.check(),
                ResolvedObject::Cocycle(phi) => {
                    let mut r = phi.module.check();
                    r.absorb("cocycle", phi.check());
                    r
                }
            };
            let mut entry = entry_from_report(name, &report);
            entry.details.insert(0, format!("kind: {}", obj.kind()));
            entry
        })
        .collect();
    finish_task(Task::Check, entries)
}

fn run_antipode(selection: &[(String, ResolvedObject)]) -> TaskReport {
    let mut entries = Vec::new();
    for (name, obj) in selection {
        let b = match obj {
            ResolvedObject::Bialgebra(b) => b,
            _ => continue,
        };
        let fusion_invertible = is_bijective(&fusion_operator(b, 1));
        let mut details = vec![format!("fusion operator invertible: {}", yes_no(fusion_invertible))];
        let verdict = match antipode(b) {
            Ok(hopf) => {
                details.push(format!("antipode: {}", hopf.antipode));
                let laws = hopf.check();
                details.push(format!("antipode laws hold: {}", yes_no(laws.passed())));
                laws.passed() && fusion_invertible
            }
            Err(_) => {
                details.push("no antipode exists".into());
                !fusion_invertible
            }
        };
        entries.push(EntryReport {
            object: name.clone(),
            verdict: if verdict { "pass".into() } else { "fail".into() },
            details,
        });
    }
    finish_task(Task::Antipode, entries)
}

fn run_galois(selection: &[(String, ResolvedObject)]) -> TaskReport {
    let mut entries = Vec::new();
    for (name, obj) in selection {
        let ca = match obj {
            ResolvedObject::ComoduleAlgebra(ca) => ca,
            _ => continue,
        };
        match canonical_map(ca) {
            Ok(cm) => {
                let invertible = is_bijective(&cm.matrix);
                let details = vec![
                    format!(
                        "canonical map: {} x {}, rank {}",
                        cm.matrix.rows,
                        cm.matrix.cols,
                        cm.matrix.rank()
                    ),
                    format!("invertible: {}", yes_no(invertible)),
                ];
                entries.push(EntryReport {
                    object: name.clone(),
                    verdict: if invertible { "pass".into() } else { "fail".into() },
                    details,
                });
            }
            Err(e) => entries.push(error_entry(name, &e)),
        }
    }
    finish_task(Task::Galois, entries)
}

fn run_fthm(doc: &Document, selection: &[(String, ResolvedObject)]) -> TaskReport {
    let mut entries = Vec::new();
    for (name, obj) in selection {
        let ca = match obj {
            ResolvedObject::ComoduleAlgebra(ca) => ca,
            _ => continue,
        };
        let entry = (|| -> Result<EntryReport, crate::hopfmod::HopfError> {
            let b = &ca.binc.sub;
            let c = Coalgebra::trivial(doc.field);
            let modules = vec![
                ("base".to_string(), BcBimodule::base_object(b)),
                ("free-rank-2".to_string(), BcBimodule::free_object(b, 2)),
            ];
            let mut hopf_modules = vec![("regular".to_string(), regular_hopf_module(ca)?)];
            for (other_name, other) in selection {
                if let ResolvedObject::HopfModule(n) = other {
                    if n.data == *ca {
                        hopf_modules.push((other_name.clone(), n.clone()));
                    }
                }
            }
            let report = fthm_report(ca, &c, &modules, &hopf_modules, None)?;
            let mut details = vec![
                format!("galois: {}", yes_no(report.galois)),
                format!("flatness: {}", report.flatness),
            ];
            for o in &report.objects {
                details.push(format!(
                    "object {}: unit bijective: {}, counit bijective: {}, dims ({}, {})",
                    o.name,
                    yes_no(o.unit_bijective),
                    yes_no(o.counit_bijective),
                    o.dims.0,
                    o.dims.1
                ));
            }
            details.push(format!("consistent: {}", yes_no(report.consistent)));
            let mut ok = report.consistent;
            if report.galois {
                ok = ok
                    && report
                        .objects
                        .iter()
                        .all(|o| o.unit_bijective && o.counit_bijective);
            } else {
                match search_failing_hopf_module(ca, 3)? {
                    Some(w) => {
                        ok = false;
                        details.push(format!(
                            "failing hopf module: dim {}, action {}, coaction {}",
                            w.dim, w.action, w.coaction
                        ));
                        details.push("counit fails bijectivity on the witness".into());
                    }
                    None => {
                        details.push("no failing hopf module found up to dim 3".into());
                    }
                }
            }
            Ok(EntryReport {
                object: name.clone(),
                verdict: if ok { "pass".into() } else { "fail".into() },
                details,
            })
        })();
        entries.push(entry.unwrap_or_else(|e| error_entry(name, &e)));
    }
    finish_task(Task::Fthm, entries)
}

fn run_h1(selection: &[(String, ResolvedObject)]) -> TaskReport {
    let mut entries = Vec::new();
    for (name, obj) in selection {
        let action = match obj {
            ResolvedObject::GroupAction(g) => g,
            _ => continue,
        };
        let module = SemilinearModule::regular(action);
        match h1_classes(&module) {
            Ok(report) => {
                let sizes: Vec<usize> = report.classes.iter().map(|(_, s)| *s).collect();
                let details = vec![
                    format!("cocycles: {}", report.cocycles),
                    format!("classes: {}", report.classes.len()),
                    format!("class sizes: {:?}", sizes),
                ];
                entries.push(EntryReport {
                    object: name.clone(),
                    verdict: "pass".into(),
                    details,
                });
            }
            Err(e) => entries.push(error_entry(name, &e)),
        }
    }
    finish_task(Task::H1, entries)
}

fn run_operators(selection: &[(String, ResolvedObject)]) -> TaskReport {
    let mut entries = Vec::new();
    for (name, obj) in selection {
        let ca = match obj {
            ResolvedObject::ComoduleAlgebra(ca) => ca,
            _ => continue,
        };
        let b = &ca.binc.sub;
        let mut details = Vec::new();
        let mut ok = true;
        for (mod_name, m) in [
            ("base", BcBimodule::base_object(b).carrier()),
            ("free-rank-2", BcBimodule::free_object(b, 2).carrier()),
        ] {
            for dx in [1usize, 2] {
                match check_operator_identities(ca, dx, &m) {
                    Ok(report) => {
                        let passed = report.passed();
                        ok = ok && passed;
                        details.push(format!(
                            "module {}, x-dim {}: {}",
                            mod_name,
                            dx,
                            if passed { "identities hold" } else { "identities fail" }
                        ));
                        for v in &report.violations {
                            details.push(format!("violation: {} at {:?}", v.law, v.indices));
                        }
                    }
                    Err(e) => {
                        ok = false;
                        details.push(format!("module {}, x-dim {}: error: {}", mod_name, dx, e));
                    }
                }
            }
        }
        entries.push(EntryReport {
            object: name.clone(),
            verdict: if ok { "pass".into() } else { "fail".into() },
            details,
        });
    }
    finish_task(Task::Operators, entries)
}

fn run_coring(doc: &Document, selection: &[(String, ResolvedObject)]) -> TaskReport {
    let mut entries = Vec::new();
    for (name, obj) in selection {
        let ca = match obj {
            ResolvedObject::ComoduleAlgebra(ca) => ca,
            _ => continue,
        };
        let entry = (|| -> Result<EntryReport, Box<dyn std::error::Error>> {
            let mut details = Vec::new();
            let mut ok = true;
            let z = crate::coalg::free_module_coalgebra(&ca.h, &Coalgebra::trivial(doc.field));
            let dk = dk_coring(ca, &z)?;
            let dk_ok = dk.check().passed();
            ok = ok && dk_ok;
            details.push(format!("hopf-module coring laws hold: {}", yes_no(dk_ok)));
            let ext = ExtensionData::new(ca.binc.clone())?;
            let sw = sweedler_coring(&ext);
            let sw_ok = sw.check().passed();
            ok = ok && sw_ok;
            details.push(format!("tensor-square coring laws hold: {}", yes_no(sw_ok)));
            let conj = conjugate_coring(&ext, &trivial_coring(&ca.binc.sub))?;
            let agree = conj.coring == sw;
            ok = ok && agree;
            details.push(format!(
                "conjugate of the trivial coring equals the tensor-square coring: {}",
                yes_no(agree)
            ));
            Ok(EntryReport {
                object: name.clone(),
                verdict: if ok { "pass".into() } else { "fail".into() },
                details,
            })
        })();
        entries.push(entry.unwrap_or_else(|e| error_entry(name, &*e)));
    }
    finish_task(Task::Coring, entries)
}

/// Runs one task over the named selection (all objects when the filter is
/// empty). The `run` pseudo-task is expanded by the caller.
pub fn run_task(doc: &Document, task: Task, filter: &[String]) -> Result<TaskReport, CliError> {
    let selection: Vec<(String, ResolvedObject)> = if filter.is_empty() {
        doc.objects.clone()
    } else {
        for want in filter {
            if doc.lookup(want).is_none() {
                return Err(CliError::UnknownName {
                    path: "--objects".into(),
                    name: want.clone(),
                });
            }
        }
        doc.objects
            .iter()
            .filter(|(n, _)| filter.iter().any(|w| w == n))
            .cloned()
            .collect()
    };
    Ok(match task {
        Task::Check => run_check(&selection),
        Task::Antipode => run_antipode(&selection),
        Task::Galois => run_galois(&selection),
        Task::Fthm => run_fthm(doc, &selection),
        Task::H1 => run_h1(&selection),
        Task::Operators => run_operators(&selection),
        Task::Coring => run_coring(doc, &selection),
        Task::Run => unreachable!("run is expanded before dispatch"),
    })
}

/// Executes a task selection against a document and assembles the report.
pub fn run(doc: &Document, task: Task, filter: &[String]) -> Result<Report, CliError> {
    let tasks: Vec<Task> = match task {
        Task::Run => {
            if doc.tasks.is_empty() {
                return Err(CliError::Usage(
                    "the document declares no tasks to run".into(),
                ));
            }
            doc.tasks.clone()
        }
        t => vec![t],
    };
    let mut reports = Vec::new();
    for t in tasks {
        let started = std::time::Instant::now();
        let report = run_task(doc, t, filter)?;
        eprintln!("task {}: {} ms", t.name(), started.elapsed().as_millis());
        reports.push(report);
    }
    let verdict = if reports.iter().any(|t| t.verdict == "fail") {
        "fail"
    } else {
        "pass"
    };
    Ok(Report {
        field: field_name(doc.field),
        tasks: reports,
        verdict: verdict.into(),
    })
}

/// Output encodings; both carry the same content.
#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
#[value(rename_all = "kebab-case")]
pub enum Format {
    Text,
    Machine,
}

#[derive(Parser, Debug)]
#[command(
    name = "hopfkit",
    version,
    about = "Exact verification suites for Hopf-type module algebra",
    long_about = None
)]
struct Cli {
    /// Which verification suite to run; `run` executes the document's list.
    #[arg(value_enum)]
    task: Task,
    /// Path to a presentation document (or builtin:<name>).
    #[arg(long, conflicts_with = "builtin")]
    input: Option<String>,
    /// Load a shipped example document by name.
    #[arg(long)]
    builtin: Option<String>,
    /// Restrict tasks to these named objects (comma separated).
    #[arg(long, value_delimiter = ',')]
    objects: Vec<String>,
    /// Report encoding.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn load_document(cli: &Cli) -> Result<Document, CliError> {
    match (&cli.input, &cli.builtin) {
        (Some(path), None) => {
            if let Some(name) = path.strip_prefix("builtin:") {
                return builtin(name);
            }
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse {
                path: path.clone(),
                message: e.to_string(),
            })?;
            let raw = parse_document(&text)?;
            resolve(&raw)
        }
        (None, Some(name)) => builtin(name),
        (None, None) => Err(CliError::Usage(
            "one of --input <file> or --builtin <name> is required".into(),
        )),
        (Some(_), Some(_)) => unreachable!("clap rejects conflicting flags"),
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    let doc = match load_document(&cli) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("{}", e);
            return 2;
        }
    };
    let report = match run(&doc, cli.task, &cli.objects) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("{}", e);
            return 2;
        }
    };
    match cli.format {
        Format::Text => print!("{}", report.render_text()),
        Format::Machine => print!("{}", report.render_machine()),
    }
    report.exit_code()
}
