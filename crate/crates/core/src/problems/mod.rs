//! One verifier per problem of the collection.
//!
//! [`verify`] dispatches an id to its verifier and wraps the outcome in a
//! [`VerificationReport`]. Verifiers are pure functions of `(id, seed)`; the
//! only nondeterministic field of a report is `elapsed_ms`.
//!
//! The per-problem operations are public so that their typed results can be
//! inspected directly; the verifiers built on them only add certificates.

mod algebra;
mod constructions;
mod functions;
mod hp;
mod lattice;
mod quadrilateral;
mod sphere;
mod triangle;

pub use algebra::{
    p01_certificate, p12_roots, p17_solutions, p38_certificate, p52_certificate, p61_digits,
    p65_identity_check, ExactInterval, P17Solutions,
};
pub use constructions::{
    p30_locus_check, random_instance, rescale, run_construction, ConstructionReport, LocusReport,
};
pub use functions::{p07_probe, p71_probe, Candidate, Classification, MonotoneFunction, P71Report};
pub use lattice::{apex_search, p42_points, p45_search, ApexSearch};
pub use quadrilateral::{p49_compare, P49Report};
pub use sphere::{p31_instance, P31Report};
pub use triangle::p26_angles;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::euclid::GeomError;
use crate::exactnum::NumError;
use crate::sketch::{ExecError, ParseError};

/// Geometric agreement of numerically reconstructed figures.
pub const GEOMETRY_TOL: f64 = 1e-9;
/// Agreement of high-precision evaluations.
pub const EVALUATION_TOL: f64 = 1e-12;
/// Absolute tolerance of adaptive quadrature.
pub const QUADRATURE_TOL: f64 = 1e-10;
/// Residual bound for numerically solved constraint systems.
pub const SOLVER_TOL: f64 = 1e-10;
/// Bisection tolerance of the cyclic circumradius.
pub const BISECTION_TOL: f64 = 1e-12;
/// Distance of a grid minimizer from the exact one.
pub const MINIMIZER_TOL: f64 = 1e-4;
/// A deliberately perturbed configuration must exceed this defect.
pub const PERTURBATION_FLOOR: f64 = 1e-6;
/// Angle agreement in degrees.
pub const ANGLE_TOL_DEG: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemId {
    P01,
    P07,
    P10,
    P12,
    P17,
    P19,
    P22,
    P26,
    P30,
    P31,
    P38,
    P42,
    P45,
    P48,
    P49,
    P50,
    P52,
    P61,
    P65,
    P68,
    P71,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifierKind {
    ExactCertificate,
    Construction,
    Oracle,
}

impl fmt::Display for VerifierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerifierKind::ExactCertificate => "exact-certificate",
            VerifierKind::Construction => "construction",
            VerifierKind::Oracle => "oracle",
        })
    }
}

impl ProblemId {
    pub const ALL: [ProblemId; 21] = [
        ProblemId::P01,
        ProblemId::P07,
        ProblemId::P10,
        ProblemId::P12,
        ProblemId::P17,
        ProblemId::P19,
        ProblemId::P22,
        ProblemId::P26,
        ProblemId::P30,
        ProblemId::P31,
        ProblemId::P38,
        ProblemId::P42,
        ProblemId::P45,
        ProblemId::P48,
        ProblemId::P49,
        ProblemId::P50,
        ProblemId::P52,
        ProblemId::P61,
        ProblemId::P65,
        ProblemId::P68,
        ProblemId::P71,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ProblemId::P01 => "p01",
            ProblemId::P07 => "p07",
            ProblemId::P10 => "p10",
            ProblemId::P12 => "p12",
            ProblemId::P17 => "p17",
            ProblemId::P19 => "p19",
            ProblemId::P22 => "p22",
            ProblemId::P26 => "p26",
            ProblemId::P30 => "p30",
            ProblemId::P31 => "p31",
            ProblemId::P38 => "p38",
            ProblemId::P42 => "p42",
            ProblemId::P45 => "p45",
            ProblemId::P48 => "p48",
            ProblemId::P49 => "p49",
            ProblemId::P50 => "p50",
            ProblemId::P52 => "p52",
            ProblemId::P61 => "p61",
            ProblemId::P65 => "p65",
            ProblemId::P68 => "p68",
            ProblemId::P71 => "p71",
        }
    }

    pub fn kind(self) -> VerifierKind {
        use ProblemId::*;
        match self {
            P01 | P12 | P17 | P38 | P42 | P45 | P52 | P61 | P65 => VerifierKind::ExactCertificate,
            P10 | P19 | P22 | P30 | P48 | P50 | P68 => VerifierKind::Construction,
            P07 | P26 | P31 | P49 | P71 => VerifierKind::Oracle,
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            ProblemId::P01 => "solve an inequality with square roots of 1 - x and 1 + x",
            ProblemId::P07 => "functions whose increments are bounded by the squared step",
            ProblemId::P10 => {
                "split a broken line A-K-M-C into three equal pieces inside a triangle"
            }
            ProblemId::P12 => "solve 2 cbrt(2y - 1) = y^3 + 1",
            ProblemId::P17 => "solve sin^7 x + 1/sin^3 x = cos^7 x + 1/cos^3 x",
            ProblemId::P19 => {
                "cut a triangle of given perimeter, or of least perimeter, from an angle"
            }
            ProblemId::P22 => "drop a perpendicular to a diameter with a straightedge only",
            ProblemId::P26 => {
                "angles of the triangle with sides OA, OB, OC in an equilateral triangle"
            }
            ProblemId::P30 => "locus of points with a fixed sum of distances to two lines",
            ProblemId::P31 => {
                "tangency points of a space quadrilateral around a sphere are coplanar"
            }
            ProblemId::P38 => "the roots of x^3 - 3x + 1 are irrational",
            ProblemId::P42 => "six points, no three collinear, with integer pairwise distances",
            ProblemId::P45 => "no equilateral triangle has all vertices on the square lattice",
            ProblemId::P48 => "build a quadrilateral from its four sides and a midline",
            ProblemId::P49 => "the quadrilateral of largest area with given sides is cyclic",
            ProblemId::P50 => {
                "divide a segment into six equal parts with a straightedge and a parallel"
            }
            ProblemId::P52 => "compare log_2 3 with log_3 5",
            ProblemId::P61 => "count the digits of 125^100",
            ProblemId::P65 => "rationalize a denominator with three cube roots",
            ProblemId::P68 => "build a square with one given point on each side",
            ProblemId::P71 => {
                "the horizontal line minimizing the area between it and a monotone graph"
            }
        }
    }

    /// Construction scripts exercised by this problem, in figure order.
    pub fn scripts(self) -> &'static [&'static str] {
        match self {
            ProblemId::P10 => &["p10"],
            ProblemId::P19 => &["p19a", "p19b"],
            ProblemId::P22 => &["p22"],
            ProblemId::P30 => &["p30"],
            ProblemId::P48 => &["p48"],
            ProblemId::P50 => &["p50"],
            ProblemId::P68 => &["p68"],
            _ => &[],
        }
    }

    fn index(self) -> u64 {
        self.as_str()[1..]
            .parse()
            .expect("ids are p followed by digits")
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProblemId {
    type Err = ProblemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ProblemId::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| ProblemError::UnknownProblem(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    Exact,
    Numeric,
}

/// One checked claim. `witness` carries the values that decided it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: String,
    pub kind: CertificateKind,
    pub witness: String,
    pub pass: bool,
}

impl Certificate {
    pub fn exact(claim: impl Into<String>, witness: impl Into<String>, pass: bool) -> Self {
        Certificate {
            claim: claim.into(),
            kind: CertificateKind::Exact,
            witness: witness.into(),
            pass,
        }
    }

    pub fn numeric(claim: impl Into<String>, witness: impl Into<String>, pass: bool) -> Self {
        Certificate {
            claim: claim.into(),
            kind: CertificateKind::Numeric,
            witness: witness.into(),
            pass,
        }
    }
}

/// Outcome of one verifier run. `status` is `Pass` iff every certificate
/// passes and no error occurred.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub problem: ProblemId,
    pub status: Status,
    pub certificates: Vec<Certificate>,
    pub figures: Vec<String>,
    pub seed: u64,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl VerificationReport {
    fn from_outcome(
        problem: ProblemId,
        seed: u64,
        outcome: Result<Vec<Certificate>, ProblemError>,
    ) -> Self {
        let (status, certificates, error) = match outcome {
            Ok(c) if !c.is_empty() && c.iter().all(|c| c.pass) => (Status::Pass, c, None),
            Ok(c) => (Status::Fail, c, None),
            Err(e) => (Status::Error, Vec::new(), Some(e.to_string())),
        };
        VerificationReport {
            problem,
            status,
            certificates,
            figures: Vec::new(),
            seed,
            elapsed_ms: 0,
            error,
        }
    }

    /// The first certificate, the one a one-line summary shows.
    pub fn headline(&self) -> Option<&Certificate> {
        self.certificates.first()
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ProblemError {
    #[error("unknown problem '{0}'")]
    UnknownProblem(String),
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("the two lines coincide or are parallel")]
    DegenerateLines,
    #[error("no exact cosine available for {0} degrees")]
    UnsupportedAngle(String),
    #[error("instance generation failed after {attempts} attempts from seed {seed}")]
    GenerationFailed { seed: u64, attempts: u32 },
    #[error("side {0} is not shorter than the sum of the others")]
    InfeasibleSides(String),
    #[error("levels {y1} and {y2} are not both attained by {function}")]
    LevelsNotAttained { function: String, y1: f64, y2: f64 },
    #[error("infeasible instance: {0}")]
    InfeasibleInstance(String),
    #[error("no construction script '{0}'")]
    NoScript(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Exec(#[from] ExecError),
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error(transparent)]
    Numeric(#[from] NumError),
}

/// Deterministic generator for a problem's random choices.
pub(crate) fn rng_for(id: ProblemId, seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (id.index() << 48))
}

/// Runs the verifier for `id` (e.g. `"p42"`).
pub fn verify(id: &str, seed: u64) -> Result<VerificationReport, ProblemError> {
    Ok(verify_id(id.parse()?, seed))
}

pub fn verify_id(id: ProblemId, seed: u64) -> VerificationReport {
    let start = Instant::now();
    let outcome = match id {
        ProblemId::P01 => algebra::verify_p01(),
        ProblemId::P07 => functions::verify_p07(),
        ProblemId::P10 => constructions::verify_p10(seed),
        ProblemId::P12 => algebra::verify_p12(),
        ProblemId::P17 => algebra::verify_p17(),
        ProblemId::P19 => constructions::verify_p19(seed),
        ProblemId::P22 => constructions::verify_p22(seed),
        ProblemId::P26 => triangle::verify_p26(seed),
        ProblemId::P30 => constructions::verify_p30(seed),
        ProblemId::P31 => sphere::verify_p31(seed),
        ProblemId::P38 => algebra::verify_p38(),
        ProblemId::P42 => lattice::verify_p42(),
        ProblemId::P45 => lattice::verify_p45(),
        ProblemId::P48 => constructions::verify_p48(seed),
        ProblemId::P49 => quadrilateral::verify_p49(seed),
        ProblemId::P50 => constructions::verify_p50(seed),
        ProblemId::P52 => algebra::verify_p52(),
        ProblemId::P61 => algebra::verify_p61(),
        ProblemId::P65 => algebra::verify_p65(),
        ProblemId::P68 => constructions::verify_p68(seed),
        ProblemId::P71 => functions::verify_p71(),
    };
    let mut report = VerificationReport::from_outcome(id, seed, outcome);
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

/// Renders an `f64` for a witness string at a fixed, platform-stable width.
pub(crate) fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip_and_partition_into_kinds() {
        for id in ProblemId::ALL {
            assert_eq!(id.as_str().parse::<ProblemId>().unwrap(), id);
            assert_eq!(
                id.kind() == VerifierKind::Construction,
                !id.scripts().is_empty()
            );
        }
        let count = |k| ProblemId::ALL.iter().filter(|p| p.kind() == k).count();
        assert_eq!(count(VerifierKind::ExactCertificate), 9);
        assert_eq!(count(VerifierKind::Construction), 7);
        assert_eq!(count(VerifierKind::Oracle), 5);
    }

    #[test]
    fn unknown_id_is_rejected() {
        assert_eq!(
            verify("p99", 0).unwrap_err(),
            ProblemError::UnknownProblem("p99".into())
        );
    }

    #[test]
    fn status_follows_certificates() {
        let pass = Certificate::exact("a", "", true);
        let fail = Certificate::numeric("b", "", false);
        let r = VerificationReport::from_outcome(ProblemId::P01, 0, Ok(vec![pass.clone()]));
        assert_eq!(r.status, Status::Pass);
        let r = VerificationReport::from_outcome(ProblemId::P01, 0, Ok(vec![pass, fail]));
        assert_eq!(r.status, Status::Fail);
        let r =
            VerificationReport::from_outcome(ProblemId::P01, 0, Err(ProblemError::DegenerateLines));
        assert_eq!(r.status, Status::Error);
        assert!(r.error.is_some());
    }

    #[test]
    fn report_json_round_trips() {
        let r = VerificationReport {
            problem: ProblemId::P42,
            status: Status::Pass,
            certificates: vec![Certificate::exact(
                "|PQ| is an integer",
                "|PQ|² = 900 = 30²",
                true,
            )],
            figures: vec!["p42.svg".into()],
            seed: 3,
            elapsed_ms: 12,
            error: None,
        };
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"problem\":\"p42\""));
        assert!(text.contains("\"kind\":\"exact\""));
        assert!(!text.contains("\"error\""));
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn every_verifier_passes() {
        for id in ProblemId::ALL {
            let r = verify_id(id, 0);
            let failed: Vec<_> = r.certificates.iter().filter(|c| !c.pass).collect();
            assert_eq!(r.status, Status::Pass, "{id}: {:?} {failed:?}", r.error);
        }
    }
}
