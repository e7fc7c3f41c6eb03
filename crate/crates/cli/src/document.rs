//! Machine-readable analysis report.
//!
//! Exact quantities are serialized as canonical "p/q" strings so the
//! document round-trips losslessly; float renderings sit alongside for
//! human consumption.

use gbed_core::mle::{CurveShape, MleResult};
use gbed_core::model::Dataset;
use gbed_core::poly::Poly;
use gbed_core::rational::{to_f64, to_ratio_string};
use gbed_core::roots::{complex_roots, ComplexRoot};
use gbed_core::MlDegreeReport;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct InputEcho {
    pub mode: String,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct CoeffEntry {
    pub c: String,
    pub c_float: f64,
    pub d: String,
    pub d_float: f64,
}

#[derive(Debug, Serialize)]
pub struct PolyDoc {
    pub degree: usize,
    pub coeffs_exact: Vec<String>,
    pub coeffs_float: Vec<f64>,
}

impl PolyDoc {
    fn from_poly(p: &Poly) -> Self {
        PolyDoc {
            degree: p.degree().unwrap_or(0),
            coeffs_exact: p.coeffs().iter().map(to_ratio_string).collect(),
            coeffs_float: p.coeffs().iter().map(to_f64).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RootDoc {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
}

impl RootDoc {
    fn from_root(r: &ComplexRoot) -> Self {
        RootDoc { re: r.value.re, im: r.value.im, multiplicity: r.multiplicity }
    }
}

#[derive(Debug, Serialize)]
pub struct CommonZeroDoc {
    pub root_exact: String,
    pub root_float: f64,
    pub mult_in_f: usize,
    pub mult_in_g: usize,
}

#[derive(Debug, Serialize)]
pub struct MlDegreeDoc {
    pub direct: usize,
    pub structural: usize,
    pub agreement: bool,
    pub configuration: String,
}

#[derive(Debug, Serialize)]
pub struct Diagnostics {
    pub tol: f64,
    pub curve_shape: CurveShape,
    pub real_score_roots_in_unit: usize,
}

/// Full analysis output of `gbed analyze`.
#[derive(Debug, Serialize)]
pub struct AnalysisDocument {
    pub n: usize,
    pub input: InputEcho,
    pub coefficients: Vec<CoeffEntry>,
    pub f: PolyDoc,
    pub g: PolyDoc,
    pub v_f: Vec<RootDoc>,
    pub v_g: Vec<RootDoc>,
    pub common_zeros: Vec<CommonZeroDoc>,
    pub ml_degree: MlDegreeDoc,
    pub mle: MleResult,
    pub diagnostics: Diagnostics,
}

impl AnalysisDocument {
    pub fn build(
        ds: &Dataset,
        report: &MlDegreeReport,
        mle: &MleResult,
        curve_shape: CurveShape,
        input: InputEcho,
        tol: f64,
    ) -> Self {
        let pair = ds.score_pair();
        let v_f = complex_roots(&pair.f, tol).expect("deg f ≥ 2");
        let v_g = complex_roots(&pair.g, tol).expect("deg g ≥ 2");
        AnalysisDocument {
            n: ds.n(),
            input,
            coefficients: ds
                .coeffs()
                .iter()
                .map(|s| CoeffEntry {
                    c: to_ratio_string(&s.c),
                    c_float: to_f64(&s.c),
                    d: to_ratio_string(&s.d),
                    d_float: to_f64(&s.d),
                })
                .collect(),
            f: PolyDoc::from_poly(&pair.f),
            g: PolyDoc::from_poly(&pair.g),
            v_f: v_f.iter().map(RootDoc::from_root).collect(),
            v_g: v_g.iter().map(RootDoc::from_root).collect(),
            common_zeros: report
                .common_zeros
                .iter()
                .map(|cz| CommonZeroDoc {
                    root_exact: to_ratio_string(&cz.root_exact),
                    root_float: to_f64(&cz.root_exact),
                    mult_in_f: cz.mult_in_f,
                    mult_in_g: cz.mult_in_g,
                })
                .collect(),
            ml_degree: MlDegreeDoc {
                direct: report.ml_degree_direct,
                structural: report.ml_degree_structural,
                agreement: report.agreement,
                configuration: report.config.case.label(),
            },
            mle: mle.clone(),
            diagnostics: Diagnostics {
                tol,
                curve_shape,
                real_score_roots_in_unit: mle.real_root_count_in_unit,
            },
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        use std::fmt::Write;
        writeln!(out, "samples: n = {}", self.n).unwrap();
        for (i, ce) in self.coefficients.iter().enumerate() {
            writeln!(out, "  c_{} = {} ({:.6}), d_{} = {} ({:.6})", i + 1, ce.c, ce.c_float, i + 1, ce.d, ce.d_float).unwrap();
        }
        writeln!(out, "f coefficients (θ^0..θ^{}): {:?}", self.f.degree, self.f.coeffs_float).unwrap();
        writeln!(out, "g coefficients (θ^0..θ^{}): {:?}", self.g.degree, self.g.coeffs_float).unwrap();
        writeln!(out, "V(f):").unwrap();
        for r in &self.v_f {
            writeln!(out, "  {:.6} {:+.6}i  (mult {})", r.re, r.im, r.multiplicity).unwrap();
        }
        writeln!(out, "V(g):").unwrap();
        for r in &self.v_g {
            writeln!(out, "  {:.6} {:+.6}i  (mult {})", r.re, r.im, r.multiplicity).unwrap();
        }
        if self.common_zeros.is_empty() {
            writeln!(out, "V(f,g): empty").unwrap();
        } else {
            writeln!(out, "V(f,g):").unwrap();
            for cz in &self.common_zeros {
                writeln!(out, "  {} (mult {} in f, {} in g)", cz.root_exact, cz.mult_in_f, cz.mult_in_g).unwrap();
            }
        }
        writeln!(out, "configuration: {}", self.ml_degree.configuration).unwrap();
        writeln!(
            out,
            "ML-degree: {} (direct) / {} (structural), agreement: {}",
            self.ml_degree.direct, self.ml_degree.structural, self.ml_degree.agreement
        )
        .unwrap();
        writeln!(
            out,
            "MLE: θ̂ = {:.6} ({}), ℓ(θ̂) = {:.6}",
            self.mle.theta_hat,
            if self.mle.at_boundary { "boundary" } else { "interior" },
            self.mle.loglik_at_hat
        )
        .unwrap();
        writeln!(out, "real score roots in (0,1): {}", self.mle.real_root_count_in_unit).unwrap();
        out
    }
}
