//! JSON report types.

use ksym_core::analysis::PairAnalysis;
use ksym_core::{Exact, Scalar};
use serde::{Deserialize, Serialize};

/// Flags for the properties of the constructed form. All false when no
/// injective element exists.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChecksReport {
    pub nondegenerate: bool,
    pub closed: bool,
    pub ad_h_invariant: bool,
    pub nu_invariant: bool,
    #[serde(rename = "nu_fixes_Z")]
    pub nu_fixes_z: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input: String,
    pub field: String,
    pub dim_h: usize,
    pub dim_m: usize,
    pub effective: bool,
    pub prime: bool,
    pub symplectic: bool,
    /// Coordinates of `Z` in the algebra basis, as exact strings (`3/2`,
    /// `1+sqrt(3)`) or shortest round-trip decimals on the float path.
    pub injective_element: Option<Vec<String>>,
    pub checks: ChecksReport,
    pub timing_ms: u64,
}

/// String form of a scalar for the report.
pub trait ReportScalar: Scalar {
    fn to_report_string(&self) -> String;
}

impl ReportScalar for Exact {
    fn to_report_string(&self) -> String {
        self.to_string()
    }
}

impl ReportScalar for f64 {
    fn to_report_string(&self) -> String {
        // `{:?}` is the shortest representation that parses back to the same value
        format!("{:?}", if *self == 0.0 { 0.0 } else { *self })
    }
}

impl AnalysisReport {
    pub fn from_analysis<S: ReportScalar>(
        input: String,
        a: &PairAnalysis<S>,
        timing_ms: u64,
    ) -> Self {
        let (dim_h, dim_m) = a.dims();
        let c = a.verdict.checks;
        AnalysisReport {
            input,
            field: a.field.as_str().to_string(),
            dim_h,
            dim_m,
            effective: a.effective,
            prime: a.prime,
            symplectic: a.verdict.is_symplectic,
            injective_element: a
                .verdict
                .z
                .as_ref()
                .map(|z| z.iter().map(ReportScalar::to_report_string).collect()),
            checks: ChecksReport {
                nondegenerate: c.nondegenerate,
                closed: c.closed,
                ad_h_invariant: c.ad_h_invariant,
                nu_invariant: c.nu_invariant,
                nu_fixes_z: c.nu_fixes_z,
            },
            timing_ms,
        }
    }

    /// Multi-line human summary.
    pub fn summary(&self) -> String {
        let yes = |b: bool| if b { "yes" } else { "no" };
        let mut out = format!(
            "input: {}\nfield: {}\ndim h = {}, dim m = {}\neffective: {}, prime: {}\nsymplectic: {}\n",
            self.input,
            self.field,
            self.dim_h,
            self.dim_m,
            yes(self.effective),
            yes(self.prime),
            yes(self.symplectic)
        );
        if let Some(z) = &self.injective_element {
            out.push_str(&format!("injective element: [{}]\n", z.join(", ")));
            let c = &self.checks;
            out.push_str(&format!(
                "checks: nondegenerate {}, closed {}, ad_h-invariant {}, nu-invariant {}, nu fixes Z {}\n",
                yes(c.nondegenerate),
                yes(c.closed),
                yes(c.ad_h_invariant),
                yes(c.nu_invariant),
                yes(c.nu_fixes_z)
            ));
        } else {
            out.push_str("injective element: none\n");
        }
        out.push_str(&format!("time: {} ms\n", self.timing_ms));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRow {
    pub name: String,
    pub short_name: String,
    pub dim: usize,
    pub simple: bool,
    pub involutions: Vec<String>,
}
