//! JSON documents for the `analyze`, `pair` and `scan` commands.
//!
//! Every document carries `schema_version`. Floats are written in shortest
//! round-trip form; exact integers that may exceed 64 bits are strings.

use serde::Serialize;

use crate::config::AnalysisConfig;
use crate::error::{Error, Result};
use crate::exact::ExactPoly;
use crate::graph::graph6::{encode_graph6, parse_graph6};
use crate::graph::Graph;
use crate::par::map_ordered;
use crate::partition::{delta_u, Partition};
use crate::pst::{
    analyze_pair_with, check_pair, check_periodicity, classify_support, exact_poly, rho_squared_integer, PstEvent,
    SupportClass, TransferReport, Verdict,
};
use crate::spectral::{decompose, eigenvalue_support, gap_report, GapReport, SpectralDecomposition};
use crate::walk::{deleted_char_poly, is_controllable};

pub const SCHEMA_VERSION: u32 = 1;

pub const WARN_DISCONNECTED: &str = "graph is disconnected: transfer analysis skipped";
pub const WARN_EXACT_CAP: &str = "graph exceeds the exact cap: exact checks skipped, cospectral pairs found numerically";

#[derive(Clone, Debug, Serialize)]
pub struct GraphInfo {
    pub n: usize,
    pub edge_count: usize,
    pub graph6: String,
}

impl GraphInfo {
    fn of(g: &Graph) -> Self {
        Self {
            n: g.n(),
            edge_count: g.edge_count(),
            graph6: encode_graph6(g),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Spectrum {
    /// Distinct eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
    pub multiplicities: Vec<usize>,
    pub spectral_radius: f64,
    pub grouping_tolerance: f64,
    pub char_poly: Option<ExactPoly>,
    pub rho_squared_integer: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexReport {
    pub vertex: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub support: Vec<f64>,
    pub support_class: Option<SupportClass>,
    pub delta_partition: Option<Partition>,
    pub controllable: Option<bool>,
    /// Earliest numeric period found for `u` within `t_max`.
    pub periodic_at: Option<f64>,
}

/// Condensed pair outcome used in `analyze` and `scan` output.
#[derive(Clone, Debug, Serialize)]
pub struct PairSummary {
    pub u: usize,
    pub v: usize,
    /// Names of the necessary conditions that failed.
    pub failed: Vec<&'static str>,
    pub pst: Option<PstEvent>,
    pub pst_verified: Option<bool>,
    pub consistent: bool,
}

impl PairSummary {
    fn of(r: &TransferReport) -> Self {
        Self {
            u: r.u,
            v: r.v,
            failed: r
                .verdicts()
                .iter()
                .filter(|(_, v)| *v == Verdict::Fail)
                .map(|(name, _)| *name)
                .collect(),
            pst: r.pst_found.clone(),
            pst_verified: r.pst_structure.as_ref().map(|s| s.passed),
            consistent: r.consistent(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub graph: GraphInfo,
    pub connected: bool,
    pub warnings: Vec<String>,
    pub config: AnalysisConfig,
    pub spectrum: Spectrum,
    pub gap: Option<GapReport>,
    pub vertices: Vec<VertexReport>,
    /// Cospectral pairs with the outcome of the transfer analysis.
    pub pairs: Vec<PairSummary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairDocument {
    pub schema_version: u32,
    pub command: &'static str,
    pub graph: GraphInfo,
    pub config: AnalysisConfig,
    pub report: TransferReport,
}

/// Shared per-graph state so each graph is decomposed once.
struct Prepared<'a> {
    g: &'a Graph,
    sd: SpectralDecomposition,
    phi: Option<ExactPoly>,
    connected: bool,
    warnings: Vec<String>,
}

fn prepare<'a>(g: &'a Graph, cfg: &AnalysisConfig) -> Result<Prepared<'a>> {
    cfg.validate()?;
    let sd = decompose(g, cfg.grouping_tolerance)?;
    let phi = exact_poly(g, cfg)?;
    let connected = g.is_connected();
    let mut warnings = Vec::new();
    if !connected {
        warnings.push(WARN_DISCONNECTED.to_string());
    }
    if phi.is_none() {
        warnings.push(WARN_EXACT_CAP.to_string());
    }
    Ok(Prepared {
        g,
        sd,
        phi,
        connected,
        warnings,
    })
}

/// Vertex pairs `u < v` that are cospectral: exactly via `phi(X \ u)` when
/// within the exact cap, otherwise by comparing `(E_r)[u][u]` numerically.
pub fn cospectral_pairs(g: &Graph, sd: &SpectralDecomposition, exact: bool, cfg: &AnalysisConfig) -> Result<Vec<(usize, usize)>> {
    let n = g.n();
    let mut pairs = Vec::new();
    if exact {
        let polys = (0..n)
            .map(|u| deleted_char_poly(g, u, cfg.exact_cap))
            .collect::<Result<Vec<_>>>()?;
        for u in 0..n {
            for v in u + 1..n {
                if polys[u] == polys[v] {
                    pairs.push((u, v));
                }
            }
        }
    } else {
        let diag: Vec<Vec<f64>> = (0..n)
            .map(|u| (0..sd.distinct_count()).map(|r| sd.idempotent_entry(r, u, u)).collect())
            .collect();
        for u in 0..n {
            for v in u + 1..n {
                if diag[u].iter().zip(&diag[v]).all(|(a, b)| (a - b).abs() <= 1e-8) {
                    pairs.push((u, v));
                }
            }
        }
    }
    Ok(pairs)
}

fn pair_summaries(p: &Prepared, cfg: &AnalysisConfig) -> Result<Vec<PairSummary>> {
    if !p.connected || p.g.n() < 2 {
        return Ok(Vec::new());
    }
    cospectral_pairs(p.g, &p.sd, p.phi.is_some(), cfg)?
        .into_iter()
        .map(|(u, v)| analyze_pair_with(p.g, &p.sd, p.phi.as_ref(), u, v, cfg).map(|r| PairSummary::of(&r)))
        .collect()
}

fn support_values(sd: &SpectralDecomposition, u: usize, tol: f64) -> Vec<f64> {
    eigenvalue_support(sd, u, tol)
        .into_iter()
        .map(|r| sd.eigenvalues()[r])
        .collect()
}

/// Whole-graph report: spectrum, per-vertex data and cospectral pairs.
/// Disconnected graphs get spectral facts only.
pub fn analyze_graph(g: &Graph, cfg: &AnalysisConfig) -> Result<AnalyzeReport> {
    let p = prepare(g, cfg)?;
    let sd = &p.sd;
    let spectrum = Spectrum {
        eigenvalues: sd.eigenvalues().to_vec(),
        multiplicities: sd.multiplicities(),
        spectral_radius: sd.spectral_radius(),
        grouping_tolerance: sd.grouping_tolerance(),
        char_poly: p.phi.clone(),
        rho_squared_integer: p.phi.as_ref().map(|phi| rho_squared_integer(sd, phi)),
    };
    let gap = if g.n() >= 2 { Some(gap_report(sd)?) } else { None };

    let mut vertices = Vec::with_capacity(g.n());
    for u in 0..g.n() {
        let support = support_values(sd, u, cfg.support_tolerance);
        let support_class = p.phi.as_ref().map(|phi| classify_support(&support, phi)).transpose()?;
        let (delta_partition, controllable) = if p.connected {
            let controllable = match p.phi {
                Some(_) => Some(is_controllable(g, u, cfg.exact_cap)?),
                None => None,
            };
            (Some(delta_u(g, u)?), controllable)
        } else {
            (None, None)
        };
        vertices.push(VertexReport {
            vertex: u,
            label: g.labels().map(|l| l[u].clone()),
            periodic_at: check_periodicity(sd, u, cfg.t_max, cfg.threshold, support_class.as_ref()),
            support,
            support_class,
            delta_partition,
            controllable,
        });
    }

    Ok(AnalyzeReport {
        schema_version: SCHEMA_VERSION,
        command: "analyze",
        graph: GraphInfo::of(g),
        connected: p.connected,
        pairs: pair_summaries(&p, cfg)?,
        warnings: p.warnings,
        config: cfg.clone(),
        spectrum,
        gap,
        vertices,
    })
}

pub fn pair_document(g: &Graph, u: usize, v: usize, cfg: &AnalysisConfig) -> Result<PairDocument> {
    cfg.validate()?;
    check_pair(g, u, v)?;
    let p = prepare(g, cfg)?;
    Ok(PairDocument {
        schema_version: SCHEMA_VERSION,
        command: "pair",
        graph: GraphInfo::of(g),
        config: cfg.clone(),
        report: analyze_pair_with(g, &p.sd, p.phi.as_ref(), u, v, cfg)?,
    })
}

/// One line of scan output.
#[derive(Clone, Debug, Serialize)]
pub struct ScanRecord {
    pub schema_version: u32,
    /// 1-based line number in the catalog.
    pub line: usize,
    pub id: String,
    pub n: usize,
    pub edge_count: usize,
    pub connected: bool,
    pub warnings: Vec<String>,
    pub gap: Option<GapReport>,
    pub cospectral_pairs: usize,
    pub pst_hits: usize,
    pub pairs: Vec<PairSummary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanError {
    pub schema_version: u32,
    pub line: usize,
    pub id: String,
    pub error: String,
}

pub fn scan_graph(g: &Graph, line: usize, id: &str, cfg: &AnalysisConfig) -> Result<ScanRecord> {
    let p = prepare(g, cfg)?;
    let pairs = pair_summaries(&p, cfg)?;
    Ok(ScanRecord {
        schema_version: SCHEMA_VERSION,
        line,
        id: id.to_string(),
        n: g.n(),
        edge_count: g.edge_count(),
        connected: p.connected,
        gap: if g.n() >= 2 { Some(gap_report(&p.sd)?) } else { None },
        cospectral_pairs: pairs.len(),
        pst_hits: pairs.iter().filter(|s| s.pst.is_some()).count(),
        pairs,
        warnings: p.warnings,
    })
}

#[derive(Clone, Debug, Default)]
pub struct ScanOutcome {
    /// JSON lines in catalog order.
    pub lines: Vec<String>,
    /// Graphs analyzed successfully.
    pub processed: usize,
    /// Lines reported as errors.
    pub errors: usize,
    /// Errors caused by internal invariant violations.
    pub internal_errors: usize,
}

impl ScanOutcome {
    pub fn write_to(&self, mut out: impl std::io::Write) -> std::io::Result<()> {
        for line in &self.lines {
            writeln!(out, "{line}")?;
        }
        Ok(())
    }
}

enum LineResult {
    Ok(String),
    Err(String, bool),
}

/// Scans a newline-delimited graph6 catalog. Blank lines are skipped; bad
/// lines become inline error records. Output order matches input order for
/// any worker count.
pub fn scan_catalog(text: &str, cfg: &AnalysisConfig) -> Result<ScanOutcome> {
    cfg.validate()?;
    let entries: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let results = map_ordered(&entries, cfg.workers(), |&(line, id)| {
        let outcome = parse_graph6(id)
            .map_err(Error::from)
            .and_then(|g| scan_graph(&g, line, id, cfg));
        match outcome {
            Ok(record) => LineResult::Ok(to_line(&record)),
            Err(e) => {
                let record = ScanError {
                    schema_version: SCHEMA_VERSION,
                    line,
                    id: id.to_string(),
                    error: e.to_string(),
                };
                LineResult::Err(to_line(&record), e.is_internal())
            }
        }
    });
    let mut outcome = ScanOutcome::default();
    for r in results {
        match r {
            LineResult::Ok(line) => {
                outcome.processed += 1;
                outcome.lines.push(line);
            }
            LineResult::Err(line, internal) => {
                outcome.errors += 1;
                outcome.internal_errors += usize::from(internal);
                outcome.lines.push(line);
            }
        }
    }
    Ok(outcome)
}

fn to_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report types serialize infallibly")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, hypercube, path};

    fn cfg() -> AnalysisConfig {
        AnalysisConfig {
            jobs: Some(1),
            ..AnalysisConfig::default()
        }
    }

    #[test]
    fn analyze_p4() {
        let r = analyze_graph(&path(4).unwrap(), &cfg()).unwrap();
        assert!(r.vertices.iter().all(|v| v.controllable == Some(true)));
        assert!(r.vertices.iter().all(|v| v.support_class == Some(SupportClass::Neither)));
        assert!((r.gap.as_ref().unwrap().sigma - 1.0).abs() < 1e-9);
        assert_eq!(r.pairs.len(), 2);
        assert!(r.pairs.iter().all(|p| p.pst.is_none()));
    }

    #[test]
    fn analyze_k1() {
        let r = analyze_graph(&path(1).unwrap(), &cfg()).unwrap();
        assert!(r.pairs.is_empty() && r.gap.is_none());
        assert_eq!(r.vertices.len(), 1);
    }

    #[test]
    fn analyze_q3_is_periodic() {
        let r = analyze_graph(&hypercube(3).unwrap(), &cfg()).unwrap();
        assert_eq!(r.spectrum.rho_squared_integer, Some(true));
        for v in &r.vertices {
            assert!((v.periodic_at.unwrap() - std::f64::consts::PI).abs() < 1e-8);
        }
        let hits: Vec<_> = r.pairs.iter().filter(|p| p.pst.is_some()).map(|p| (p.u, p.v)).collect();
        assert_eq!(hits, vec![(0, 7), (1, 6), (2, 5), (3, 4)]);
    }

    #[test]
    fn disconnected_graph_gets_warning() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let r = analyze_graph(&g, &cfg()).unwrap();
        assert!(!r.connected && r.pairs.is_empty());
        assert_eq!(r.warnings, vec![WARN_DISCONNECTED.to_string()]);
    }

    #[test]
    fn scan_is_ordered_with_inline_errors() {
        let text = format!("{}\n\nnot-graph6\n{}\n", encode_graph6(&path(3).unwrap()), encode_graph6(&complete(4).unwrap()));
        let out = scan_catalog(&text, &cfg()).unwrap();
        assert_eq!((out.processed, out.errors, out.lines.len()), (2, 1, 3));
        let lines: Vec<serde_json::Value> = out.lines.iter().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines[0]["line"], 1);
        assert_eq!(lines[0]["pst_hits"], 1);
        assert!(lines[1]["error"].is_string());
        assert_eq!(lines[2]["line"], 4);
        assert!(lines.iter().all(|l| l["schema_version"] == 1));
    }

    #[test]
    fn pair_document_has_report() {
        let doc = pair_document(&path(3).unwrap(), 0, 2, &cfg()).unwrap();
        let event = doc.report.pst_found.unwrap();
        assert!((event.tau - std::f64::consts::PI / 2f64.sqrt()).abs() < 1e-9);
    }
}
