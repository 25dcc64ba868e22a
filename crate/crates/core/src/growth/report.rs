use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use super::predict::candidates_from;
use super::tables::ClassificationTables;
use crate::curve::Curve;
use crate::error::{inconsistent, Error, Result};
use crate::exact_fields::{SquarefreeLabel, TowerField};
use crate::torsion::{GroupStructure, TorsionContext};

/// A quadratic field `Q(sqrt d)` where the torsion grows to `h`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GrowthRecord {
    pub d: SquarefreeLabel,
    pub h: GroupStructure,
}

impl fmt::Display for GrowthRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.d, self.h)
    }
}

/// Growth records ordered by label, one per field.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GrowthSet {
    records: Vec<GrowthRecord>,
}

impl GrowthSet {
    pub fn new(mut records: Vec<GrowthRecord>) -> Result<Self> {
        records.sort();
        if records.windows(2).any(|w| w[0].d == w[1].d) {
            return inconsistent("two growth records share a field");
        }
        Ok(GrowthSet { records })
    }

    pub fn records(&self) -> &[GrowthRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn labels(&self) -> Vec<SquarefreeLabel> {
        self.records.iter().map(|r| r.d.clone()).collect()
    }

    /// The groups `H` as a sorted multiset.
    pub fn groups(&self) -> Vec<GroupStructure> {
        let mut hs: Vec<_> = self.records.iter().map(|r| r.h).collect();
        hs.sort();
        hs
    }
}

impl fmt::Display for GrowthSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.records.iter().map(|r| r.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Outcome of checking a report against the classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VerificationFlags {
    /// Every `H` lies in the list of possible growths of `G`.
    pub growth_allowed: bool,
    /// Each `(G, H)` occurs an allowed number of times.
    pub counts_allowed: bool,
    /// The multiset of `H` is an allowed set for `G`.
    pub set_allowed: bool,
    pub at_most_four: bool,
    /// Torsion over the compositum embeds in a group over `Q(2^inf)`.
    pub tower_allowed: bool,
    /// Set shapes for which two compositum torsion groups are known.
    pub exceptional_shape: bool,
}

impl VerificationFlags {
    pub fn all_pass(&self) -> bool {
        self.growth_allowed && self.counts_allowed && self.set_allowed && self.at_most_four && self.tower_allowed
    }
}

/// Growth of the torsion of one curve over quadratic fields and their compositum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    pub coefficients: [BigRational; 5],
    pub g: GroupStructure,
    pub s: GrowthSet,
    pub field: Arc<TowerField>,
    pub tower_torsion: GroupStructure,
    pub degree: usize,
    pub flags: VerificationFlags,
}

pub fn verification_flags(r: &AnalysisReport, tables: &ClassificationTables) -> VerificationFlags {
    let g = &r.g;
    let hs = r.s.groups();
    let allowed = tables.phi_q2_of(g);
    let mut counts: BTreeMap<GroupStructure, u32> = BTreeMap::new();
    for h in &hs {
        *counts.entry(*h).or_default() += 1;
    }
    VerificationFlags {
        growth_allowed: hs.iter().all(|h| h != g && allowed.contains(h)),
        counts_allowed: counts.iter().all(|(h, k)| tables.h_counts(g, h).contains(k)),
        set_allowed: tables.is_h_set(g, &hs),
        at_most_four: hs.len() <= 4,
        tower_allowed: tables.embeds_in_phi_q_2inf(&r.tower_torsion),
        exceptional_shape: tables.is_exceptional_shape(g, &hs),
    }
}

/// Recomputes the flags, failing on the first violated constraint.
pub fn verify_report(r: &AnalysisReport, tables: &ClassificationTables) -> Result<VerificationFlags> {
    let f = verification_flags(r, tables);
    let fail = |what: &str| Err(Error::Verification(format!("{what} for G = {:?}, S = [{}]", r.g, r.s)));
    if !f.growth_allowed {
        return fail("growth outside the possible groups over quadratic fields");
    }
    if !f.counts_allowed {
        return fail("number of fields with a given growth not allowed");
    }
    if !f.set_allowed {
        return fail("growth set not among the allowed sets");
    }
    if !f.at_most_four {
        return fail("more than four growth fields");
    }
    if !f.tower_allowed {
        return fail(&format!("compositum torsion {:?} fits no group over Q(2^inf)", r.tower_torsion));
    }
    Ok(f)
}

/// Full growth analysis of `E`.
pub fn analyze(e: &Curve) -> Result<AnalysisReport> {
    let ctx = TorsionContext::new(e)?;
    let over_q = ctx.over_q()?;
    let g = over_q.structure;
    let mut records = Vec::new();
    for d in candidates_from(&ctx, &over_q)? {
        let h = ctx.over_quadratic(&d)?.structure;
        if !g.embeds_in(&h) {
            return inconsistent(format!("{g:?} does not embed in {h:?} over Q(sqrt {d})"));
        }
        if h != g {
            records.push(GrowthRecord { d, h });
        }
    }
    let s = GrowthSet::new(records)?;
    let field = TowerField::span(s.records().iter().map(|r| &r.d))?;
    let tower_torsion = ctx.over_tower(&field)?.structure;
    if !s.records().iter().all(|r| r.h.embeds_in(&tower_torsion)) {
        return inconsistent(format!("growth set [{s}] does not embed in {tower_torsion:?}"));
    }
    let degree = field.degree();
    let mut report = AnalysisReport {
        coefficients: e.coeffs().clone(),
        g,
        s,
        field,
        tower_torsion,
        degree,
        flags: VerificationFlags {
            growth_allowed: false,
            counts_allowed: false,
            set_allowed: false,
            at_most_four: false,
            tower_allowed: false,
            exceptional_shape: false,
        },
    };
    report.flags = verification_flags(&report, &ClassificationTables);
    Ok(report)
}
