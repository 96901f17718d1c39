use serde::Serialize;

use crate::config::AnalysisConfig;
use crate::error::{Error, Result};
use crate::exact::ExactPoly;
use crate::graph::Graph;
use crate::partition::{delta_u, stabilizer_orbits_bruteforce};
use crate::spectral::{char_poly_exact, decompose, eigenvalue_support, gap_report, GapReport, SpectralDecomposition};
use crate::walk::{cospectral_via_charpoly, cospectral_via_gram, is_controllable};

use super::ratio::ratio_condition;
use super::search::{search_pst, verify_pst_event, PstEvent, PstStructure, VERIFY_TOLERANCE};
use super::support::{classify_support, rho_squared_integer, SupportClass};

/// Sign test tolerance for `E_r e_u = +-E_r e_v`.
const SIGN_TOLERANCE: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Not evaluated: the graph is outside the size cap or too small for the condition.
    NotApplicable,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_fail(self) -> bool {
        self == Verdict::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransferReport {
    pub u: usize,
    pub v: usize,
    pub n: usize,
    pub cospectral: Verdict,
    pub equal_supports: Verdict,
    pub sign_condition: Verdict,
    pub ratio_condition: Verdict,
    pub ratio_witness: Option<[f64; 4]>,
    pub support: Vec<f64>,
    pub support_class: Option<SupportClass>,
    pub support_class_verdict: Verdict,
    pub rho_squared_integer: Verdict,
    pub delta_partition_equal: Verdict,
    /// Whether `{v}` is a cell of `Delta_u`.
    pub v_singleton_in_delta_u: bool,
    pub automorphism_stabilizer_equal: Verdict,
    pub controllable_u: Option<bool>,
    pub controllable_v: Option<bool>,
    pub non_controllability: Verdict,
    pub gap_report: GapReport,
    pub pst_found: Option<PstEvent>,
    pub pst_structure: Option<PstStructure>,
    /// Provenance of `pst_found`: a numeric search, never a proof of absence.
    pub evidence: &'static str,
}

impl TransferReport {
    pub fn verdicts(&self) -> [(&'static str, Verdict); 10] {
        [
            ("cospectral", self.cospectral),
            ("equal_supports", self.equal_supports),
            ("sign_condition", self.sign_condition),
            ("ratio_condition", self.ratio_condition),
            ("support_class", self.support_class_verdict),
            ("rho_squared_integer", self.rho_squared_integer),
            ("delta_partition_equal", self.delta_partition_equal),
            ("non_controllability", self.non_controllability),
            ("automorphism_stabilizer_equal", self.automorphism_stabilizer_equal),
            ("v_singleton_in_delta_u", Verdict::from_bool(self.v_singleton_in_delta_u)),
        ]
    }

    /// No necessary condition failed.
    pub fn all_necessary_pass(&self) -> bool {
        self.verdicts().iter().all(|(_, v)| !v.is_fail())
    }

    /// A found transfer comes with every necessary condition passing.
    pub fn consistent(&self) -> bool {
        self.pst_found.is_none() || self.all_necessary_pass()
    }
}

/// Evaluates every necessary condition for PST from `u` to `v`; no short-circuits.
pub fn necessary_conditions(g: &Graph, u: usize, v: usize, cfg: &AnalysisConfig) -> Result<TransferReport> {
    check_pair(g, u, v)?;
    let sd = decompose(g, cfg.grouping_tolerance)?;
    let phi = exact_poly(g, cfg)?;
    conditions_with(g, &sd, phi.as_ref(), u, v, cfg)
}

/// Necessary conditions, then the numeric search and, on a hit, the structural checks.
pub fn analyze_pair(g: &Graph, u: usize, v: usize, cfg: &AnalysisConfig) -> Result<TransferReport> {
    check_pair(g, u, v)?;
    let sd = decompose(g, cfg.grouping_tolerance)?;
    let phi = exact_poly(g, cfg)?;
    analyze_pair_with(g, &sd, phi.as_ref(), u, v, cfg)
}

pub(crate) fn analyze_pair_with(
    g: &Graph,
    sd: &SpectralDecomposition,
    phi: Option<&ExactPoly>,
    u: usize,
    v: usize,
    cfg: &AnalysisConfig,
) -> Result<TransferReport> {
    let mut report = conditions_with(g, sd, phi, u, v, cfg)?;
    if let Some(event) = search_pst(sd, u, v, cfg.t_max, cfg.threshold) {
        report.pst_structure = Some(verify_pst_event(sd, &event, cfg.threshold, cfg.support_tolerance, VERIFY_TOLERANCE)?);
        report.pst_found = Some(event);
    }
    Ok(report)
}

pub(crate) fn check_pair(g: &Graph, u: usize, v: usize) -> Result<()> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::InvalidArgument(format!("pair needs two distinct vertices, got {u} twice")));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// `phi(X)` when the graph is within the exact cap.
pub(crate) fn exact_poly(g: &Graph, cfg: &AnalysisConfig) -> Result<Option<ExactPoly>> {
    if g.n() > cfg.exact_cap {
        Ok(None)
    } else {
        char_poly_exact(g, cfg.exact_cap).map(Some)
    }
}

pub(crate) fn conditions_with(
    g: &Graph,
    sd: &SpectralDecomposition,
    phi: Option<&ExactPoly>,
    u: usize,
    v: usize,
    cfg: &AnalysisConfig,
) -> Result<TransferReport> {
    let n = g.n();
    let exact = phi.is_some();
    let cap = cfg.exact_cap;

    let cospectral = if exact {
        let by_poly = cospectral_via_charpoly(g, u, v, cap)?;
        let by_gram = cospectral_via_gram(g, u, v, cap)?;
        if by_poly != by_gram {
            return Err(Error::Internal(format!(
                "cospectrality of {u} and {v}: characteristic polynomials say {by_poly}, Gram matrices say {by_gram}"
            )));
        }
        Verdict::from_bool(by_poly)
    } else {
        Verdict::NotApplicable
    };

    let support_u = eigenvalue_support(sd, u, cfg.support_tolerance);
    let support_v = eigenvalue_support(sd, v, cfg.support_tolerance);
    let equal_supports = Verdict::from_bool(support_u == support_v);

    let sign_ok = (0..sd.distinct_count()).all(|r| {
        let (pu, pv) = (sd.projection(r, u), sd.projection(r, v));
        (&pu - &pv).amax().min((&pu + &pv).amax()) <= SIGN_TOLERANCE
    });
    let sign_condition = Verdict::from_bool(sign_ok);

    let support: Vec<f64> = support_u.iter().map(|&r| sd.eigenvalues()[r]).collect();
    let (ratio_condition, ratio_witness) = match ratio_condition_verdict(&support, cfg)? {
        Some((holds, witness)) => (Verdict::from_bool(holds), witness),
        None => (Verdict::NotApplicable, None),
    };

    let (support_class, support_class_verdict, rho_squared) = match phi {
        Some(phi) => {
            let class = classify_support(&support, phi)?;
            let verdict = Verdict::from_bool(!class.is_neither());
            (Some(class), verdict, Verdict::from_bool(rho_squared_integer(sd, phi)))
        }
        None => (None, Verdict::NotApplicable, Verdict::NotApplicable),
    };

    let du = delta_u(g, u)?;
    let dv = delta_u(g, v)?;
    let delta_partition_equal = Verdict::from_bool(du == dv);
    let v_singleton_in_delta_u = du.is_singleton(v);

    let automorphism_stabilizer_equal = if n <= cfg.brute_force_cap {
        let orbits_u = stabilizer_orbits_bruteforce(g, u, cfg.brute_force_cap)?;
        let orbits_v = stabilizer_orbits_bruteforce(g, v, cfg.brute_force_cap)?;
        Verdict::from_bool(orbits_u.is_singleton(v) && orbits_v.is_singleton(u))
    } else {
        Verdict::NotApplicable
    };

    let (controllable_u, controllable_v) = if exact {
        (Some(is_controllable(g, u, cap)?), Some(is_controllable(g, v, cap)?))
    } else {
        (None, None)
    };
    let non_controllability = match (controllable_u, controllable_v) {
        (Some(cu), Some(cv)) if n >= 4 => Verdict::from_bool(!cu && !cv),
        _ => Verdict::NotApplicable,
    };

    Ok(TransferReport {
        u,
        v,
        n,
        cospectral,
        equal_supports,
        sign_condition,
        ratio_condition,
        ratio_witness,
        support,
        support_class,
        support_class_verdict,
        rho_squared_integer: rho_squared,
        delta_partition_equal,
        v_singleton_in_delta_u,
        automorphism_stabilizer_equal,
        controllable_u,
        controllable_v,
        non_controllability,
        gap_report: gap_report(sd)?,
        pst_found: None,
        pst_structure: None,
        evidence: "numeric",
    })
}

fn ratio_condition_verdict(support: &[f64], cfg: &AnalysisConfig) -> Result<Option<(bool, Option<[f64; 4]>)>> {
    if support.len() < 2 {
        return Ok(None);
    }
    let r = ratio_condition(support, cfg.denominator_bound, cfg.ratio_residual)?;
    Ok(Some((r.holds, r.witness)))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_PI_2;

    use super::*;
    use crate::graph::{cycle, hypercube, path, petersen, Graph};

    fn cfg() -> AnalysisConfig {
        AnalysisConfig::default()
    }

    #[test]
    fn hypercube_antipodal_pair_passes_everything() {
        let q3 = hypercube(3).unwrap();
        let r = analyze_pair(&q3, 0, 7, &cfg()).unwrap();
        assert!(r.all_necessary_pass(), "{r:?}");
        assert_eq!(r.non_controllability, Verdict::Pass);
        assert_eq!(r.automorphism_stabilizer_equal, Verdict::Pass);
        let event = r.pst_found.as_ref().unwrap();
        assert!((event.tau - FRAC_PI_2).abs() < 1e-8);
        assert!(r.pst_structure.as_ref().unwrap().passed);
        assert!(r.consistent());
    }

    #[test]
    fn petersen_fails_delta() {
        let p = petersen();
        let r = analyze_pair(&p, 0, 1, &cfg()).unwrap();
        assert!(!r.v_singleton_in_delta_u);
        assert!(r.pst_found.is_none());
        assert!(!r.all_necessary_pass());
    }

    #[test]
    fn p4_ends() {
        let r = analyze_pair(&path(4).unwrap(), 0, 3, &cfg()).unwrap();
        assert_eq!(r.cospectral, Verdict::Pass);
        assert_eq!(r.support_class, Some(SupportClass::Neither));
        assert_eq!(r.support_class_verdict, Verdict::Fail);
        assert_eq!(r.ratio_condition, Verdict::Fail);
        assert_eq!(r.non_controllability, Verdict::Fail);
        assert_eq!((r.controllable_u, r.controllable_v), (Some(true), Some(true)));
        assert!(r.pst_found.is_none());
    }

    #[test]
    fn non_cospectral_pair() {
        let r = necessary_conditions(&path(4).unwrap(), 0, 1, &cfg()).unwrap();
        assert_eq!(r.cospectral, Verdict::Fail);
        assert_eq!(r.sign_condition, Verdict::Fail);
        assert_eq!(r.delta_partition_equal, Verdict::Pass);
        let r = necessary_conditions(&crate::graph::star(3).unwrap(), 0, 1, &cfg()).unwrap();
        assert_eq!(r.delta_partition_equal, Verdict::Fail);
        assert_eq!(r.equal_supports, Verdict::Fail);
    }

    #[test]
    fn caps_turn_checks_off() {
        let c = AnalysisConfig {
            exact_cap: 3,
            brute_force_cap: 3,
            ..cfg()
        };
        let r = necessary_conditions(&cycle(6).unwrap(), 0, 3, &c).unwrap();
        assert_eq!(r.cospectral, Verdict::NotApplicable);
        assert_eq!(r.support_class, None);
        assert_eq!(r.automorphism_stabilizer_equal, Verdict::NotApplicable);
        assert_eq!(r.controllable_u, None);
    }

    #[test]
    fn rejects_bad_pairs() {
        let p3 = path(3).unwrap();
        assert!(matches!(necessary_conditions(&p3, 1, 1, &cfg()), Err(Error::InvalidArgument(_))));
        assert!(matches!(necessary_conditions(&p3, 0, 3, &cfg()), Err(Error::VertexOutOfRange { .. })));
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(necessary_conditions(&split, 0, 1, &cfg()), Err(Error::Disconnected)));
    }
}
