use std::fmt::Write as _;

use ecgrowth::growth::{AnalysisReport, ClassificationTables, VerificationFlags};
use ecgrowth::torsion::GroupStructure;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordDoc {
    pub d: String,
    pub h: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagsDoc {
    pub growth_allowed: bool,
    pub counts_allowed: bool,
    pub set_allowed: bool,
    pub at_most_four: bool,
    pub tower_allowed: bool,
    pub exceptional_shape: bool,
}

impl From<&VerificationFlags> for FlagsDoc {
    fn from(f: &VerificationFlags) -> Self {
        FlagsDoc {
            growth_allowed: f.growth_allowed,
            counts_allowed: f.counts_allowed,
            set_allowed: f.set_allowed,
            at_most_four: f.at_most_four,
            tower_allowed: f.tower_allowed,
            exceptional_shape: f.exceptional_shape,
        }
    }
}

impl FlagsDoc {
    pub fn all_pass(&self) -> bool {
        self.growth_allowed && self.counts_allowed && self.set_allowed && self.at_most_four && self.tower_allowed
    }
}

/// Serializable form of one analysis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub coefficients: Vec<String>,
    pub g: String,
    pub growth: Vec<RecordDoc>,
    /// Generators of the compositum of the growth fields.
    pub field: Vec<String>,
    pub tower_torsion: String,
    pub degree: usize,
    pub flags: FlagsDoc,
}

impl CurveDoc {
    pub fn new(label: Option<&str>, r: &AnalysisReport) -> CurveDoc {
        CurveDoc {
            label: label.map(str::to_string),
            coefficients: r.coefficients.iter().map(|c| c.to_string()).collect(),
            g: r.g.to_string(),
            growth: r.s.records().iter().map(|x| RecordDoc { d: x.d.to_string(), h: x.h.to_string() }).collect(),
            field: r.field.generators().iter().map(|d| d.to_string()).collect(),
            tower_torsion: r.tower_torsion.to_string(),
            degree: r.degree,
            flags: (&r.flags).into(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        if let Some(l) = &self.label {
            let _ = writeln!(s, "curve {l}");
        }
        let _ = writeln!(s, "coefficients: [{}]", self.coefficients.join(", "));
        let _ = writeln!(s, "G = {}", group_name(&self.g));
        if self.growth.is_empty() {
            let _ = writeln!(s, "growth: none");
        } else {
            let _ = writeln!(s, "growth ({} fields):", self.growth.len());
            for r in &self.growth {
                let _ = writeln!(s, "  Q(sqrt({})): {}", r.d, group_name(&r.h));
            }
        }
        let field = if self.field.is_empty() {
            "Q".to_string()
        } else {
            format!("Q({})", self.field.iter().map(|d| format!("sqrt({d})")).collect::<Vec<_>>().join(", "))
        };
        let _ = writeln!(s, "F_S = {field}, degree {}", self.degree);
        let _ = writeln!(s, "E(F_S)_tors = {}", group_name(&self.tower_torsion));
        let f = &self.flags;
        let _ = writeln!(
            s,
            "checks: growth {} counts {} set {} <=4 {} tower {}{}",
            ok(f.growth_allowed),
            ok(f.counts_allowed),
            ok(f.set_allowed),
            ok(f.at_most_four),
            ok(f.tower_allowed),
            if f.exceptional_shape { " (shape with two known compositum groups)" } else { "" }
        );
        s
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}

fn group_name(s: &str) -> String {
    s.parse::<GroupStructure>().map(|g| g.name()).unwrap_or_else(|_| s.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub reports: Vec<CurveDoc>,
}

impl ReportDocument {
    pub fn new(reports: Vec<CurveDoc>) -> Self {
        ReportDocument { schema_version: SCHEMA_VERSION, reports }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountsDoc {
    pub h: String,
    pub counts: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthTableDoc {
    pub g: String,
    pub phi_q2_of_g: Vec<String>,
    pub h_counts: Vec<CountsDoc>,
    pub h_sets: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablesDocument {
    pub schema_version: u32,
    pub phi1: Vec<String>,
    pub phi2: Vec<String>,
    pub phi_q2: Vec<String>,
    pub phi_q_2inf: Vec<String>,
    pub growth: Vec<GrowthTableDoc>,
}

fn names(gs: &[GroupStructure]) -> Vec<String> {
    gs.iter().map(|g| g.to_string()).collect()
}

impl TablesDocument {
    pub fn new(t: &ClassificationTables) -> Self {
        let growth = t
            .phi1()
            .iter()
            .map(|g| GrowthTableDoc {
                g: g.to_string(),
                phi_q2_of_g: names(t.phi_q2_of(g)),
                h_counts: t
                    .h_table(g)
                    .iter()
                    .map(|(h, c)| CountsDoc { h: h.to_string(), counts: c.to_vec() })
                    .collect(),
                h_sets: t.h_sets(g).iter().map(|s| names(s)).collect(),
            })
            .collect();
        TablesDocument {
            schema_version: SCHEMA_VERSION,
            phi1: names(t.phi1()),
            phi2: names(t.phi2()),
            phi_q2: names(t.phi_q2()),
            phi_q_2inf: names(t.phi_q_2inf()),
            growth,
        }
    }

    pub fn render_text(&self) -> String {
        let list = |v: &[String]| format!("{{{}}}", v.iter().map(|g| group_name(g)).collect::<Vec<_>>().join(", "));
        let mut s = String::new();
        let _ = writeln!(s, "Phi(1) = {}", list(&self.phi1));
        let _ = writeln!(s, "Phi(2) = {}", list(&self.phi2));
        let _ = writeln!(s, "Phi_Q(2) = {}", list(&self.phi_q2));
        let _ = writeln!(s, "Phi_Q(2^inf) = {}", list(&self.phi_q_2inf));
        for row in &self.growth {
            let g = group_name(&row.g);
            let _ = writeln!(s, "\nG = {g}");
            let _ = writeln!(s, "  Phi_Q(2, {g}) = {}", list(&row.phi_q2_of_g));
            for c in &row.h_counts {
                let counts: Vec<String> = c.counts.iter().map(u32::to_string).collect();
                let _ = writeln!(s, "  h({}) in {{{}}}", group_name(&c.h), counts.join(", "));
            }
            let sets: Vec<String> = row
                .h_sets
                .iter()
                .map(|set| format!("[{}]", set.iter().map(|h| group_name(h)).collect::<Vec<_>>().join(", ")))
                .collect();
            let _ = writeln!(s, "  H_Q(2, {g}) = {{{}}}", sets.join(", "));
        }
        s
    }
}
