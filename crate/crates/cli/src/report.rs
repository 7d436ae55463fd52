//! The `analyze` report: every construction for one tetrahedron plus the
//! residuals of the identities that tie them together.

use std::fmt::{self, Write as _};

use altitude_core::geom::line_line_meet;
use altitude_core::{
    AltitudeQuadric, ClassKind, QuadricKind, TetraClass, Tetrahedron, Tolerance, Vec3,
};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassReport {
    Generic,
    SemiOrthocentric,
    Orthocentric,
}

impl From<ClassKind> for ClassReport {
    fn from(k: ClassKind) -> Self {
        match k {
            ClassKind::Generic => ClassReport::Generic,
            ClassKind::SemiOrthocentric => ClassReport::SemiOrthocentric,
            ClassKind::Orthocentric => ClassReport::Orthocentric,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadricKindReport {
    Hyperboloid,
    PlanePair,
    Trivial,
}

/// Dimensionless residuals; each is zero in exact arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    /// `|sum of opposite-edge products| / L^2`.
    pub pluecker: f64,
    /// Largest distance from the Monge point to a midplane, over `L`.
    pub monge_midplanes: f64,
    /// Largest `|lambda_il - lambda_jk|` over `L^2`.
    pub monge_identity: f64,
    /// `|G - (C + M) / 2| / L`.
    pub euler: f64,
    /// `|trace Q*|` over the size of the terms summed into `Q*`.
    pub q_star_trace: f64,
    /// Largest relative quadric residual along the four altitudes.
    pub altitude_incidence: f64,
    /// Largest gap between `n_l` and `h_i`, `i != l`, over `L`.
    pub perpendicular_meets: f64,
}

impl Residuals {
    /// `(name, value, limit)` for every residual. Limits scale with the
    /// relative tolerance; the two that compose several constructions get 10x.
    pub fn checks(&self, tol: &Tolerance) -> [(&'static str, f64, f64); 7] {
        let e = tol.rel_eps;
        [
            ("pluecker", self.pluecker, e),
            ("monge_midplanes", self.monge_midplanes, e),
            ("monge_identity", self.monge_identity, e),
            ("euler", self.euler, e),
            ("q_star_trace", self.q_star_trace, e),
            ("altitude_incidence", self.altitude_incidence, 10.0 * e),
            ("perpendicular_meets", self.perpendicular_meets, 10.0 * e),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub vertices: [[f64; 3]; 4],
    pub class: ClassReport,
    /// Label of the orthogonal opposite-edge pair, e.g. `"02-31"`.
    pub orthogonal_pair: Option<String>,
    pub monge: [f64; 3],
    pub centroid: [f64; 3],
    pub circumcenter: [f64; 3],
    pub orthocenter: Option<[f64; 3]>,
    pub euler_direction: Option<[f64; 3]>,
    pub lambdas: [f64; 3],
    /// `b01.b23`, `b02.b31`, `b03.b12`.
    pub opposite_edge_dots: [f64; 3],
    /// `Q*` as `s11, s22, s33, s12, s13, s23`, Monge-centered.
    pub q_star: [f64; 6],
    pub rhs: f64,
    pub quadric_kind: QuadricKindReport,
    pub residuals: Residuals,
    pub invariants_ok: bool,
    pub warnings: Vec<String>,
}

pub fn analyze(t: &Tetrahedron, tol: &Tolerance) -> Result<AnalysisReport, CliError> {
    let points = t.noteworthy(tol)?;
    let classification = t.classification(tol);
    let qd = AltitudeQuadric::build(t, tol)?;
    let s = t.scale();

    let monge_midplanes = t
        .midplanes()?
        .iter()
        .fold(0.0f64, |m, p| m.max(p.residual(points.monge).abs()))
        / s;
    let euler = (points.centroid - (points.circumcenter + points.monge) * 0.5).norm() / s;
    let q_star_trace = if qd.form_scale > 0.0 {
        qd.form.trace().abs() / qd.form_scale
    } else {
        0.0
    };

    let mut altitude_incidence = 0.0f64;
    let mut perpendicular_meets = 0.0f64;
    let mut warnings = Vec::new();
    let altitudes = (0..4)
        .map(|l| t.altitude(l))
        .collect::<Result<Vec<_>, _>>()?;
    for (l, h) in altitudes.iter().enumerate() {
        for k in -3..=3 {
            let p = h.point_at(f64::from(k) * s / 2.0);
            let scale = qd.value_scale(p);
            if scale > 0.0 {
                altitude_incidence = altitude_incidence.max(qd.value(p).abs() / scale);
            }
        }
        let n = t.ortho_perpendicular(l)?;
        for (i, hi) in altitudes.iter().enumerate().filter(|(i, _)| *i != l) {
            let meet = line_line_meet(&n, hi, tol);
            perpendicular_meets = perpendicular_meets.max(meet.gap / s);
            if !meet.intersects() {
                warnings.push(format!("perpendicular n{l} does not meet altitude h{i}"));
            }
        }
    }

    let residuals = Residuals {
        pluecker: t.pluecker_residual() / (s * s),
        monge_midplanes,
        monge_identity: t.monge_identity_residual()? / (s * s),
        euler,
        q_star_trace,
        altitude_incidence,
        perpendicular_meets,
    };
    for (name, value, limit) in residuals.checks(tol) {
        // NaN residuals count as violations
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(value <= limit) {
            warnings.push(format!("{name} residual {value:.3e} exceeds {limit:.1e}"));
        }
    }
    if classification.inconsistent {
        warnings.push("two opposite-edge pairs are orthogonal but the third is not".into());
    }

    let quadric_kind = match qd.kind {
        QuadricKind::Hyperboloid => QuadricKindReport::Hyperboloid,
        QuadricKind::PlanePair(..) => QuadricKindReport::PlanePair,
        QuadricKind::Trivial => QuadricKindReport::Trivial,
    };
    let lambdas = t.lambdas()?.as_array();
    let lambda_max = lambdas.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let rhs_zero = tol.is_zero(qd.rhs, lambda_max.powi(3));
    if (quadric_kind == QuadricKindReport::Hyperboloid) == rhs_zero {
        warnings.push("right-hand side does not match the quadric kind".into());
    }

    let orthogonal_pair = match classification.class {
        TetraClass::SemiOrthocentric(p) => Some(p.label().to_string()),
        _ => None,
    };
    let arr = |v: Vec3| v.to_array();
    Ok(AnalysisReport {
        vertices: t.vertices().map(arr),
        class: classification.class.kind().into(),
        orthogonal_pair,
        monge: arr(points.monge),
        centroid: arr(points.centroid),
        circumcenter: arr(points.circumcenter),
        orthocenter: points.orthocenter.map(arr),
        euler_direction: points.euler.map(|l| arr(l.dir)),
        lambdas,
        opposite_edge_dots: t.opposite_dots(),
        q_star: qd.form.coefficients(),
        rhs: qd.rhs,
        quadric_kind,
        residuals,
        invariants_ok: warnings.is_empty(),
        warnings,
    })
}

fn fmt_vec(v: &[f64; 3]) -> String {
    format!("({:.6}, {:.6}, {:.6})", v[0], v[1], v[2])
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let class = match self.class {
            ClassReport::Generic => "generic",
            ClassReport::SemiOrthocentric => "semi-orthocentric",
            ClassReport::Orthocentric => "orthocentric",
        };
        write!(out, "class          {class}")?;
        if let Some(p) = &self.orthogonal_pair {
            write!(out, " (orthogonal edges {p})")?;
        }
        writeln!(out)?;
        writeln!(out, "monge point    {}", fmt_vec(&self.monge))?;
        writeln!(out, "centroid       {}", fmt_vec(&self.centroid))?;
        writeln!(out, "circumcenter   {}", fmt_vec(&self.circumcenter))?;
        if let Some(h) = &self.orthocenter {
            writeln!(out, "orthocenter    {}", fmt_vec(h))?;
        }
        match &self.euler_direction {
            Some(d) => writeln!(out, "euler line dir {}", fmt_vec(d))?,
            None => writeln!(out, "euler line     undefined (C = M)")?,
        }
        writeln!(out, "lambdas        {}", fmt_vec(&self.lambdas))?;
        writeln!(out, "edge dots      {}", fmt_vec(&self.opposite_edge_dots))?;
        let q = &self.q_star;
        writeln!(
            out,
            "Q*             s11 {:.6}  s22 {:.6}  s33 {:.6}  s12 {:.6}  s13 {:.6}  s23 {:.6}",
            q[0], q[1], q[2], q[3], q[4], q[5]
        )?;
        writeln!(out, "rhs            {:.6}", self.rhs)?;
        writeln!(out, "quadric        {:?}", self.quadric_kind)?;
        let r = &self.residuals;
        for (name, value) in [
            ("pluecker", r.pluecker),
            ("monge_midplanes", r.monge_midplanes),
            ("monge_identity", r.monge_identity),
            ("euler", r.euler),
            ("q_star_trace", r.q_star_trace),
            ("altitude_incidence", r.altitude_incidence),
            ("perpendicular_meets", r.perpendicular_meets),
        ] {
            writeln!(out, "  {name:<20} {value:.3e}")?;
        }
        writeln!(
            out,
            "invariants     {}",
            if self.invariants_ok { "ok" } else { "VIOLATED" }
        )?;
        for w in &self.warnings {
            writeln!(out, "warning: {w}")?;
        }
        f.write_str(&out)
    }
}
