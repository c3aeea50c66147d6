//! Report shapes shared by the text and JSON output paths.

use serde::Serialize;

use heaps::verify::IdentityCheck;

#[derive(Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
}

#[derive(Serialize)]
pub struct OrientationsReport {
    pub graph: GraphSummary,
    pub orientations: u64,
    pub acyclic: u64,
    pub unique_source_counts: Vec<u64>,
}

#[derive(Serialize)]
pub struct RackEntry {
    pub index: usize,
    pub rack: String,
    pub image: usize,
    pub fixed: bool,
}

#[derive(Serialize)]
pub struct RacksReport {
    pub graph: GraphSummary,
    pub heap: String,
    pub count: u64,
    /// `beta[k]` = number of racks with k layers, k = 0..=|F|.
    pub beta: Vec<u64>,
    pub racks: Vec<RackEntry>,
}

#[derive(Serialize)]
pub struct TransferReport {
    pub vertex: usize,
    pub occurrence: usize,
    pub number: usize,
    pub lonely: bool,
    pub layer: usize,
}

#[derive(Serialize)]
pub struct InvoluteReport {
    pub graph: GraphSummary,
    pub heap: String,
    pub input_rack: String,
    pub fixed_point: bool,
    pub transfer_piece: Option<TransferReport>,
    pub output_rack: String,
}

#[derive(Serialize)]
pub struct CoeffRow {
    pub r: usize,
    /// Coefficient via the Stirling/partition formula.
    pub a: i128,
    /// Coefficient of the deletion–contraction polynomial.
    pub oracle: i128,
    /// Signed partition count, absent for r = 0.
    pub partition_count: Option<i128>,
}

#[derive(Serialize)]
pub struct CoeffsReport {
    pub graph: GraphSummary,
    pub chromatic: String,
    pub rows: Vec<CoeffRow>,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub graph: GraphSummary,
    pub lambda_max: u64,
    pub identities: Vec<IdentityCheck>,
    pub all_pass: bool,
}

pub fn render_verify_text(report: &VerifyReport) -> String {
    let mut out = format!("graph: n={} m={}\n", report.graph.n, report.graph.m);
    for check in &report.identities {
        if check.passed {
            match &check.info {
                Some(info) => out.push_str(&format!("PASS {} ({info})\n", check.name)),
                None => out.push_str(&format!("PASS {}\n", check.name)),
            }
        } else {
            let witness = check.witness.as_deref().unwrap_or("no witness");
            out.push_str(&format!("FAIL {}: {witness}\n", check.name));
        }
    }
    let failed = report.identities.iter().filter(|c| !c.passed).count();
    if failed == 0 {
        out.push_str(&format!(
            "result: ALL PASS ({} identities)\n",
            report.identities.len()
        ));
    } else {
        out.push_str(&format!(
            "result: FAIL ({failed} of {} identities failed)\n",
            report.identities.len()
        ));
    }
    out
}

pub fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string(value).expect("report serialization cannot fail");
    text.push('\n');
    text
}
