use serde::Serialize;
use vcert_core::diagram::{long_arcs, DiagramCode};
use vcert_core::invariants::ZetaReport;
use vcert_core::minimality::{CertificateKind, MinimalityCertificate};
use vcert_core::ring::{Degree, LaurentPoly2, TPoly};

#[derive(Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub input: String,
    pub properized: bool,
    pub n: usize,
    pub k: usize,
    pub writhe: i32,
    pub zeta: LaurentPoly2,
    pub deg_s: Degree,
    pub mdeg_s: Degree,
    pub lower_bound: u64,
    pub sides: Sides,
}

#[derive(Serialize)]
pub struct Sides {
    pub deg: SideReport,
    pub mdeg: SideReport,
}

#[derive(Serialize)]
pub struct SideReport {
    pub special: bool,
    pub critical_arcs: Option<Vec<usize>>,
    pub det_t: Option<TPoly>,
    pub per_m: Option<serde_json::Value>,
    /// Ids of cyclic crossings as written in the input.
    pub cyclic_crossings: Vec<u32>,
    pub certificate_kind: &'static str,
    pub epsilon: Option<i8>,
    pub beta: Option<u32>,
    pub alpha: Option<i32>,
    pub det_m: Option<i8>,
    pub x: Option<u32>,
    pub y: Option<u32>,
    pub reasons: Vec<String>,
}

pub fn kind_name(kind: CertificateKind) -> &'static str {
    match kind {
        CertificateKind::TDiagram => "TDiagram",
        CertificateKind::MDiagram => "MDiagram",
        CertificateKind::NoCertificate => "NoCertificate",
    }
}

fn side_report(cert: &MinimalityCertificate, crossing_ids: &[u32]) -> SideReport {
    let eb = cert.eps_beta.as_ref();
    SideReport {
        special: cert.special,
        critical_arcs: cert.critical_arcs.clone(),
        det_t: cert.det_t.clone(),
        per_m: cert.per_m.as_ref().map(|p| {
            let text = p.to_string();
            match text.parse::<u64>() {
                Ok(v) => serde_json::Value::from(v),
                Err(_) => serde_json::Value::from(text),
            }
        }),
        cyclic_crossings: cert.cyclic_crossings.iter().map(|&c| crossing_ids[c]).collect(),
        certificate_kind: kind_name(cert.kind),
        epsilon: eb.map(|e| e.epsilon),
        beta: eb.map(|e| e.beta),
        alpha: eb.map(|e| e.alpha),
        det_m: eb.map(|e| e.det_m),
        x: eb.map(|e| e.x),
        y: eb.map(|e| e.y),
        reasons: cert.reasons.clone(),
    }
}

pub fn build(code: &DiagramCode, zeta: &ZetaReport, certs: &[MinimalityCertificate; 2]) -> Report {
    let decomp = long_arcs(&code.properize()).expect("properized code is proper");
    Report {
        schema_version: "1",
        input: code.serialize(),
        properized: zeta.properized,
        n: zeta.n,
        k: zeta.k,
        writhe: zeta.writhe,
        zeta: zeta.zeta.clone(),
        deg_s: zeta.deg_s,
        mdeg_s: zeta.mdeg_s,
        lower_bound: zeta.lower_bound,
        sides: Sides {
            deg: side_report(&certs[0], decomp.crossing_ids()),
            mdeg: side_report(&certs[1], decomp.crossing_ids()),
        },
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

pub fn text(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!("input:       {}\n", report.input.replace('\n', " | ")));
    if report.properized {
        out.push_str("             (a curl was added to make the diagram proper)\n");
    }
    out.push_str(&format!("n = {}, k = {}, writhe = {}\n", report.n, report.k, report.writhe));
    out.push_str(&format!("zeta:        {}\n", report.zeta));
    out.push_str(&format!(
        "deg_s = {}, mdeg_s = {}, lower bound = {}\n",
        report.deg_s, report.mdeg_s, report.lower_bound
    ));
    for (name, side) in [("deg side", &report.sides.deg), ("mdeg side", &report.sides.mdeg)] {
        out.push_str(&format!("{name}: {}", side.certificate_kind));
        if let Some(d) = &side.det_t {
            out.push_str(&format!(", det T = {d}"));
        }
        if let Some(p) = &side.per_m {
            out.push_str(&format!(", per M = {p}"));
        }
        if side.epsilon.is_some() {
            out.push_str(&format!(
                ", epsilon = {}, alpha = {}, beta = {}",
                opt(&side.epsilon),
                opt(&side.alpha),
                opt(&side.beta)
            ));
        }
        if !side.reasons.is_empty() {
            out.push_str(&format!(" ({})", side.reasons.join("; ")));
        }
        out.push('\n');
    }
    out
}
