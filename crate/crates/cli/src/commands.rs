use std::io::Write;
use std::path::PathBuf;

use ecgrowth::curve::Curve;
use ecgrowth::growth::{analyze, AnalysisReport};
use ecgrowth::Error;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::fixture::{load_fixture, parse_coeffs, parse_fixture, FixtureError, FixtureRow, BUNDLED_FIXTURE};
use crate::report::{CurveDoc, ReportDocument, TablesDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Where rows come from: a file, or the copy compiled into the binary.
#[derive(Clone, Debug, Default)]
pub struct FixtureSource {
    pub path: Option<PathBuf>,
}

impl FixtureSource {
    pub fn load(&self) -> Result<Vec<FixtureRow>, FixtureError> {
        match &self.path {
            Some(p) => load_fixture(p),
            None => parse_fixture(BUNDLED_FIXTURE),
        }
    }
}

pub struct Io<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

fn exit_for(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Singular | Error::Dependency(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

fn run_parallel<T: Send, R: Send>(items: Vec<T>, jobs: usize, f: impl Fn(T) -> R + Send + Sync) -> Vec<R> {
    if jobs <= 1 {
        return items.into_iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| items.into_par_iter().map(f).collect()),
        Err(_) => items.into_iter().map(f).collect(),
    }
}

fn emit_json(io: &mut Io, doc: &impl serde::Serialize) -> i32 {
    match serde_json::to_string_pretty(doc) {
        Ok(s) => {
            let _ = writeln!(io.out, "{s}");
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

pub enum CurveSource {
    Coeffs(String),
    Label(String, FixtureSource),
}

pub fn cmd_analyze(source: &CurveSource, json: bool, io: &mut Io) -> i32 {
    let (label, curve) = match source {
        CurveSource::Coeffs(s) => {
            let coeffs = match parse_coeffs(s) {
                Ok(c) => c,
                Err(m) => {
                    let _ = writeln!(io.err, "error: {m}");
                    return EXIT_USAGE;
                }
            };
            let c: Vec<BigRational> = coeffs.into_iter().map(BigRational::from_integer).collect();
            (None, Curve::from_coeffs(&c))
        }
        CurveSource::Label(l, src) => {
            let rows = match src.load() {
                Ok(r) => r,
                Err(e) => {
                    let _ = writeln!(io.err, "error: {e}");
                    return EXIT_USAGE;
                }
            };
            let Some(row) = rows.into_iter().find(|r| &r.label == l) else {
                let _ = writeln!(io.err, "error: unknown label {l}");
                return EXIT_USAGE;
            };
            (Some(l.clone()), row.curve())
        }
    };
    let report = match curve.and_then(|e| analyze(&e)) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            return exit_for(&e);
        }
    };
    let doc = CurveDoc::new(label.as_deref(), &report);
    let passed = doc.flags.all_pass();
    let code = if json {
        emit_json(io, &ReportDocument::new(vec![doc]))
    } else {
        let _ = write!(io.out, "{}", doc.render_text());
        EXIT_OK
    };
    if !passed {
        let _ = writeln!(io.err, "error: verification failed");
        return EXIT_FAILURE;
    }
    code
}

pub fn cmd_batch(src: &FixtureSource, json: bool, jobs: usize, io: &mut Io) -> i32 {
    let rows = match src.load() {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let results = run_parallel(rows, jobs, |row| {
        let r = row.curve().and_then(|e| analyze(&e));
        (row.label, r)
    });
    let mut docs = Vec::new();
    let mut code = EXIT_OK;
    for (label, r) in results {
        match r {
            Ok(r) => {
                let d = CurveDoc::new(Some(&label), &r);
                if !d.flags.all_pass() {
                    code = EXIT_FAILURE;
                }
                docs.push(d);
            }
            Err(e) => {
                let _ = writeln!(io.err, "error: {label}: {e}");
                code = EXIT_FAILURE;
            }
        }
    }
    if json {
        let c = emit_json(io, &ReportDocument::new(docs));
        return code.max(c);
    }
    for d in &docs {
        let _ = writeln!(io.out, "{}", d.render_text());
    }
    code
}

/// Differences between a row's expectations and a computed report.
pub fn compare_row(row: &FixtureRow, r: &AnalysisReport) -> Vec<String> {
    let mut diffs = Vec::new();
    if r.g != row.expected_g {
        diffs.push(format!("G: expected {}, computed {}", row.expected_g, r.g));
    }
    let computed: Vec<_> = r.s.records().iter().map(|x| (x.d.clone(), x.h)).collect();
    let expected = row.sorted_records();
    if computed != expected {
        let show = |v: &[(ecgrowth::exact_fields::SquarefreeLabel, ecgrowth::torsion::GroupStructure)]| {
            v.iter().map(|(d, h)| format!("{d}:{h}")).collect::<Vec<_>>().join(" ")
        };
        diffs.push(format!("S: expected [{}], computed [{}]", show(&expected), show(&computed)));
    }
    if r.tower_torsion != row.expected_tower_torsion {
        diffs.push(format!("E(F_S): expected {}, computed {}", row.expected_tower_torsion, r.tower_torsion));
    }
    if r.degree != row.expected_degree {
        diffs.push(format!("degree: expected {}, computed {}", row.expected_degree, r.degree));
    }
    if !r.flags.all_pass() {
        diffs.push(format!("verification flags failed: {:?}", r.flags));
    }
    diffs
}

pub fn cmd_verify_paper(src: &FixtureSource, jobs: usize, io: &mut Io) -> i32 {
    let rows = match src.load() {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    if rows.is_empty() {
        let _ = writeln!(io.out, "0 rows");
        let _ = writeln!(io.err, "warning: fixture has no rows");
        return EXIT_OK;
    }
    let total = rows.len();
    let results = run_parallel(rows, jobs, |row| {
        let diffs = match row.curve().and_then(|e| analyze(&e)) {
            Ok(r) => compare_row(&row, &r),
            Err(e) => vec![format!("analysis failed: {e}")],
        };
        (row.label, diffs)
    });
    let mut passed = 0;
    for (label, diffs) in &results {
        if diffs.is_empty() {
            passed += 1;
            let _ = writeln!(io.out, "PASS {label}");
        } else {
            let _ = writeln!(io.out, "FAIL {label}");
            for d in diffs {
                let _ = writeln!(io.out, "  {d}");
            }
        }
    }
    let _ = writeln!(io.out, "{passed}/{total} rows verified");
    if passed == total {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

pub fn cmd_tables(json: bool, io: &mut Io) -> i32 {
    let doc = TablesDocument::new(&ecgrowth::growth::ClassificationTables);
    if json {
        return emit_json(io, &doc);
    }
    let _ = write!(io.out, "{}", doc.render_text());
    EXIT_OK
}
