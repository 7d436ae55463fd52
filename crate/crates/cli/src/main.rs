use std::fs::{self, File};
use std::io::{self, BufWriter, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use altitude_cli::mesh::{quadric_mesh, write_obj};
use altitude_cli::report::ClassReport;
use altitude_cli::{
    analyze, emit_svg_porism, parse_tetrahedron, random_tetra, serialize_tetrahedron, CliError,
};
use altitude_core::porism::{ellipse_section, orthocenter2d, porism_family};
use altitude_core::{AltitudeQuadric, ClassKind, QuadForm3, TetraClass, Tetrahedron, Tolerance};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

/// Altitudes, Monge point and the altitude hyperboloid of a tetrahedron.
///
/// Exit status: 0 on success, 2 for unreadable, malformed or degenerate
/// input, 3 when a computed invariant fails its tolerance.
#[derive(Parser)]
#[command(version)]
struct Cli {
    /// Relative tolerance for all zero tests.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for a tetrahedron file (`-` reads stdin).
    Analyze { file: PathBuf },
    /// Generic, semi-orthocentric or orthocentric.
    Classify { file: PathBuf },
    /// Mesh of the altitude hyperboloid as OBJ.
    Quadric {
        file: PathBuf,
        #[arg(long)]
        obj: PathBuf,
        /// Half-length of the mesh along the hyperboloid axis.
        #[arg(long, default_value_t = 3.0)]
        extent: f64,
        /// Rings and segments per ring.
        #[arg(long, default_value_t = 32)]
        res: usize,
    },
    /// Acute triangles inscribed in a section of an equilateral cone.
    Porism {
        /// Traceless form as s11,s22,s33,s12,s13,s23.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        form: Vec<f64>,
        #[arg(long, allow_negative_numbers = true)]
        rho: f64,
        #[arg(long, default_value_t = 12)]
        count: usize,
        #[arg(long)]
        svg: PathBuf,
    },
    /// Random tetrahedron of a given class, printed as a tetrahedron file.
    Random {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Generic,
    Semi,
    Ortho,
}

impl From<ClassArg> for ClassKind {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Generic => ClassKind::Generic,
            ClassArg::Semi => ClassKind::SemiOrthocentric,
            ClassArg::Ortho => ClassKind::Orthocentric,
        }
    }
}

enum Failure {
    Input(CliError),
    Invariant(String),
}

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        Failure::Input(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("invariant violated: {msg}");
            ExitCode::from(3)
        }
    }
}

fn read_tetra(path: &Path, tol: &Tolerance) -> Result<Tetrahedron, Failure> {
    let mut text = String::new();
    if path == Path::new("-") {
        io::stdin().read_to_string(&mut text)?;
    } else {
        text = fs::read_to_string(path)?;
    }
    let t = parse_tetrahedron(&text)?;
    Tetrahedron::with_tolerance(*t.vertices(), *tol).map_err(|e| Failure::Input(e.into()))
}

fn print_json(value: &serde_json::Value, pretty: bool) {
    if pretty {
        println!("{}", serde_json::to_string_pretty(value).unwrap());
    } else {
        println!("{value}");
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let tol = Tolerance::default()
        .with_rel(cli.tol)
        .map_err(|e| Failure::Input(CliError::Parse(format!("--tol: {e}"))))?;
    match &cli.command {
        Command::Analyze { file } => {
            let t = read_tetra(file, &tol)?;
            let report = analyze(&t, &tol)?;
            if cli.pretty {
                print!("{report}");
            } else {
                println!("{}", serde_json::to_string(&report).unwrap());
            }
            if !report.invariants_ok {
                return Err(Failure::Invariant(report.warnings.join("; ")));
            }
        }
        Command::Classify { file } => {
            let t = read_tetra(file, &tol)?;
            let c = t.classification(&tol);
            let pair = match c.class {
                TetraClass::SemiOrthocentric(p) => Some(p.label()),
                _ => None,
            };
            let class = ClassReport::from(c.class.kind());
            if cli.pretty {
                let name = serde_json::to_value(class).unwrap();
                match pair {
                    Some(p) => println!("{} (orthogonal edges {p})", name.as_str().unwrap()),
                    None => println!("{}", name.as_str().unwrap()),
                }
            } else {
                print_json(
                    &json!({
                        "class": class,
                        "orthogonal_pair": pair,
                        "opposite_edge_dots": t.opposite_dots(),
                        "inconsistent": c.inconsistent,
                    }),
                    false,
                );
            }
            if c.inconsistent {
                return Err(Failure::Invariant(
                    "opposite-edge products violate their cyclic identity".into(),
                ));
            }
        }
        Command::Quadric {
            file,
            obj,
            extent,
            res,
        } => {
            let t = read_tetra(file, &tol)?;
            let qd = AltitudeQuadric::build(&t, &tol).map_err(CliError::from)?;
            let mesh = quadric_mesh(&qd, *extent, *res)?;
            write_obj(&mesh, BufWriter::new(File::create(obj)?))?;
            let worst = mesh.vertices.iter().fold(0.0f64, |m, v| {
                m.max((qd.form.evaluate(*v - qd.center) - qd.rhs).abs())
            }) / qd.rhs.abs();
            print_json(
                &json!({
                    "obj": obj,
                    "vertices": mesh.vertices.len(),
                    "triangles": mesh.triangles.len(),
                    "max_relative_residual": worst,
                }),
                cli.pretty,
            );
            #[allow(clippy::neg_cmp_op_on_partial_ord)]
            if !(worst <= 1e-6) {
                return Err(Failure::Invariant(format!("mesh residual {worst:.3e}")));
            }
        }
        Command::Porism {
            form,
            rho,
            count,
            svg,
        } => {
            let coeffs: [f64; 6] = form
                .as_slice()
                .try_into()
                .map_err(|_| CliError::Parse("--form needs six coefficients".into()))?;
            let q = QuadForm3::from_coefficients(coeffs);
            let family = porism_family(&q, *rho, *count, &tol).map_err(CliError::from)?;
            let ellipse = ellipse_section(&q, *rho, &tol).map_err(CliError::from)?;
            fs::write(svg, emit_svg_porism(&family, &ellipse)?)?;

            let scale = ellipse.scale();
            let mut offset = 0.0f64;
            let mut max_angle = 0.0f64;
            for tri in &family {
                let h = orthocenter2d(tri.vertices, &tol).map_err(CliError::from)?;
                offset = offset.max((h - ellipse.center).norm() / scale);
                max_angle = tri.angles.iter().fold(max_angle, |m, a| m.max(*a));
            }
            print_json(
                &json!({
                    "svg": svg,
                    "count": family.len(),
                    "center": ellipse.center.to_array(),
                    "max_orthocenter_offset": offset,
                    "max_angle_deg": max_angle.to_degrees(),
                }),
                cli.pretty,
            );
            #[allow(clippy::neg_cmp_op_on_partial_ord)]
            if !(offset <= 1e-8) || max_angle >= std::f64::consts::FRAC_PI_2 {
                return Err(Failure::Invariant(
                    "porism triangles are not acute with a common orthocenter".into(),
                ));
            }
        }
        Command::Random { class, seed } => {
            let t = random_tetra((*class).into(), *seed);
            if cli.pretty {
                let v: serde_json::Value =
                    serde_json::from_str(&serialize_tetrahedron(&t)).unwrap();
                print_json(&v, true);
            } else {
                println!("{}", serialize_tetrahedron(&t));
            }
        }
    }
    Ok(())
}
