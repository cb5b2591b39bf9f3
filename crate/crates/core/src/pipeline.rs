//! Input → realized group → classes → Whitehead data → verdict.

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{ambivalence, conjugacy_classes};
use crate::catalog::{
    builtin_groups, central_fibre_check, fiber_order_rule, realize_seifert, CatalogEntry,
    Construction, FiberOrder, FibreVerdict, Goodness,
};
use crate::coset::{realize_presentation, DEFAULT_MAX_COSETS};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::whitehead::{involution_space, wh1_z2_fast};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Detectable,
    NotDetectableByTheta,
    PreconditionsUnmet,
}

/// What is known about ambivalence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evidence {
    /// Detection rank of a realized finite group.
    Rank(usize),
    /// Non-ambivalence from a central fibre of order greater than two.
    NotAmbivalentByFibre,
}

pub fn verdict(evidence: Evidence, k1_trivial: bool, goodness: Goodness) -> Verdict {
    if !k1_trivial || goodness != Goodness::Good {
        return Verdict::PreconditionsUnmet;
    }
    match evidence {
        Evidence::Rank(0) => Verdict::NotDetectableByTheta,
        Evidence::Rank(_) | Evidence::NotAmbivalentByFibre => Verdict::Detectable,
    }
}

/// Fields tied to the conjugacy classes are `None` when the group was not
/// realized.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DetectionReport {
    pub schema: u32,
    pub name: String,
    pub source: String,
    pub order: Option<usize>,
    pub class_count: Option<usize>,
    pub ambivalent: Option<bool>,
    pub witness: Option<String>,
    pub witness_order: Option<usize>,
    pub detection_rank: Option<usize>,
    pub wh1_dim: Option<usize>,
    pub z4_dim: Option<usize>,
    /// One representative element per inversion-swapped class pair.
    pub quotient_basis: Option<Vec<String>>,
    pub fiber_order: Option<FiberOrder>,
    pub central_fibre: Option<FibreVerdict>,
    pub k1_trivial: bool,
    pub goodness: Goodness,
    pub verdict: Verdict,
}

impl DetectionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    fn skeleton(entry: &CatalogEntry, source: String) -> Self {
        DetectionReport {
            schema: SCHEMA_VERSION,
            name: entry.name.clone(),
            source,
            order: None,
            class_count: None,
            ambivalent: None,
            witness: None,
            witness_order: None,
            detection_rank: None,
            wh1_dim: None,
            z4_dim: None,
            quotient_basis: None,
            fiber_order: None,
            central_fibre: None,
            k1_trivial: entry.k1_trivial,
            goodness: entry.goodness,
            verdict: Verdict::PreconditionsUnmet,
        }
    }

    fn fill_finite(&mut self, g: &FiniteGroup) {
        let profile = conjugacy_classes(g);
        let amb = ambivalence(&profile);
        let inv = involution_space(&profile);
        self.order = Some(g.order());
        self.class_count = Some(profile.class_count());
        self.ambivalent = Some(amb.ambivalent);
        self.witness = amb.witness.map(|w| g.label(w));
        self.witness_order = amb.witness.map(|w| g.element_order(w));
        self.detection_rank = Some(inv.quotient_dim);
        self.wh1_dim = wh1_z2_fast(&profile).z2_dimension();
        self.z4_dim = Some(inv.z4_dim);
        self.quotient_basis = Some(
            profile
                .paired_representatives()
                .iter()
                .map(|&c| g.label(profile.classes[c][0]))
                .collect(),
        );
        self.verdict = verdict(
            Evidence::Rank(inv.quotient_dim),
            self.k1_trivial,
            self.goodness,
        );
    }
}

pub fn analyze(entry: &CatalogEntry, budget: usize) -> Result<DetectionReport> {
    match &entry.construction {
        Construction::Presentation(p) => {
            let mut report = DetectionReport::skeleton(entry, p.to_string());
            report.fill_finite(&realize_presentation(p, budget)?);
            Ok(report)
        }
        Construction::Seifert(s) => {
            let mut report = DetectionReport::skeleton(entry, s.to_string());
            let fiber = fiber_order_rule(s, budget);
            let fibre = central_fibre_check(s, budget);
            report.fiber_order = Some(fiber);
            report.central_fibre = Some(fibre);
            if let FiberOrder::Finite(_) = fiber {
                let (g, _) = realize_seifert(s, budget)?;
                report.fill_finite(&g);
                return Ok(report);
            }
            if fibre == FibreVerdict::Inconclusive {
                return Err(Error::Undecided(format!(
                    "{s}: group not realized within {budget} cosets and the fibre is not central of order > 2"
                )));
            }
            report.ambivalent = Some(false);
            report.verdict = verdict(
                Evidence::NotAmbivalentByFibre,
                report.k1_trivial,
                report.goodness,
            );
            Ok(report)
        }
    }
}

/// Analyzes entries in parallel; results come back sorted by name.
pub fn analyze_batch(
    entries: &[CatalogEntry],
    budget: usize,
) -> Vec<(String, Result<DetectionReport>)> {
    let mut out: Vec<_> = entries
        .par_iter()
        .map(|e| (e.name.clone(), analyze(e, budget)))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub name: String,
    pub order: usize,
    pub expected_ambivalent: bool,
    pub computed_ambivalent: bool,
    pub witness_order: Option<usize>,
}

impl TableRow {
    pub fn matches(&self) -> bool {
        self.expected_ambivalent == self.computed_ambivalent
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub rows: Vec<TableRow>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(TableRow::matches)
    }

    pub fn mismatches(&self) -> Vec<&TableRow> {
        self.rows.iter().filter(|r| !r.matches()).collect()
    }

    /// CSV of the offending rows, header included.
    pub fn diff_csv(&self) -> String {
        let mut out = String::from("name,order,expected_ambivalent,computed_ambivalent\n");
        for r in self.mismatches() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.name, r.order, r.expected_ambivalent, r.computed_ambivalent
            ));
        }
        out
    }
}

/// Ambivalence of every built-in finite 3-manifold group of order at most
/// `max_order`, computed from its presentation and compared with the
/// expected classification.
pub fn reproduce_classification(max_order: usize) -> Result<TableReport> {
    let entries: Vec<CatalogEntry> = builtin_groups(max_order)
        .into_iter()
        .filter(|e| e.manifold_group)
        .collect();
    let mut rows = entries
        .par_iter()
        .map(|e| {
            let p = e.construction.presentation()?;
            let g = realize_presentation(&p, DEFAULT_MAX_COSETS)?;
            let amb = ambivalence(&conjugacy_classes(&g));
            Ok(TableRow {
                name: e.name.clone(),
                order: g.order(),
                expected_ambivalent: e.expected_ambivalent.unwrap_or(false),
                computed_ambivalent: amb.ambivalent,
                witness_order: amb.witness.map(|w| g.element_order(w)),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(TableReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{preset, CatalogEntry, SeifertInvariants};

    #[test]
    fn verdict_table() {
        use Goodness::*;
        assert_eq!(verdict(Evidence::Rank(1), true, Good), Verdict::Detectable);
        assert_eq!(
            verdict(Evidence::Rank(0), true, Good),
            Verdict::NotDetectableByTheta
        );
        assert_eq!(
            verdict(Evidence::NotAmbivalentByFibre, true, Good),
            Verdict::Detectable
        );
        assert_eq!(
            verdict(Evidence::Rank(3), false, Good),
            Verdict::PreconditionsUnmet
        );
        assert_eq!(
            verdict(Evidence::Rank(0), true, Unknown),
            Verdict::PreconditionsUnmet
        );
    }

    #[test]
    fn z3_is_detectable() {
        let r = analyze(&preset("Z3").unwrap(), DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(r.verdict, Verdict::Detectable);
        assert_eq!(r.detection_rank, Some(1));
        assert_eq!(r.wh1_dim, Some(2));
        assert_eq!(r.z4_dim, Some(1));
        assert_eq!(r.quotient_basis, Some(vec!["a".to_string()]));
        assert_eq!(r.witness.as_deref(), Some("a"));
    }

    #[test]
    fn poincare_not_detectable() {
        for name in ["I120", "poincare"] {
            let r = analyze(&preset(name).unwrap(), DEFAULT_MAX_COSETS).unwrap();
            assert_eq!(r.verdict, Verdict::NotDetectableByTheta, "{name}");
            assert_eq!(r.order, Some(120));
            assert_eq!(r.class_count, Some(9));
        }
    }

    #[test]
    fn torus_by_central_fibre() {
        let r = analyze(&preset("T3").unwrap(), 2000).unwrap();
        assert_eq!(r.verdict, Verdict::Detectable);
        assert_eq!(r.central_fibre, Some(FibreVerdict::NotAmbivalent));
        assert_eq!(r.fiber_order, Some(FiberOrder::Infinite));
        assert_eq!(r.order, None);
        assert_eq!(r.ambivalent, Some(false));
    }

    #[test]
    fn undecided_seifert_errors() {
        let s = SeifertInvariants::parse("0,o2,1").unwrap();
        let e = CatalogEntry::from_seifert("klein", s);
        assert!(matches!(analyze(&e, 500), Err(Error::Undecided(_))));
    }

    #[test]
    fn presentation_budget_errors() {
        let p = crate::words::Presentation::parse("gens: a, b; rels: [a,b]").unwrap();
        let e = CatalogEntry::from_presentation("Z^2", p);
        assert!(matches!(
            analyze(&e, 500),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn json_is_deterministic() {
        let e = preset("Dic3").unwrap();
        let a = analyze(&e, DEFAULT_MAX_COSETS).unwrap().to_json();
        let b = analyze(&e, DEFAULT_MAX_COSETS).unwrap().to_json();
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["verdict"], "detectable");
        assert_eq!(v["witness_order"], 4);
    }

    #[test]
    fn batch_is_sorted() {
        let entries = vec![
            preset("Z5").unwrap(),
            preset("D3").unwrap(),
            preset("Q8").unwrap(),
        ];
        let names: Vec<String> = analyze_batch(&entries, 1000)
            .into_iter()
            .map(|(n, _)| n)
            .collect();
        assert_eq!(names, ["D3", "Q8", "Z5"]);
    }

    #[test]
    fn small_table_passes() {
        let t = reproduce_classification(24).unwrap();
        assert!(t.passed(), "{}", t.diff_csv());
        assert!(t
            .rows
            .iter()
            .any(|r| r.name == "T24" && !r.computed_ambivalent));
    }
}
