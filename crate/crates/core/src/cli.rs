//! Implementation of the `crooked` command line tool. Results are printed as
//! one structured record per line with a stable key order; malformed input
//! exits 2, method disagreement or certification failure exits 3.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::crooked::CrookedHalfspace;
use crate::disjoint::{disjointness_report, OracleOutcome};
use crate::error::{GeomError, Result};
use crate::exact::{self, ExactHalfspace, RVec3};
use crate::foliation::{CoefficientPath, CrookedFoliation, DirectorPath};
use crate::mesh::{crooked_plane_mesh, mesh_obj, ClipBox};
use crate::scene::{CoeffExpr, SceneRecord};
use crate::tol::Tol;
use crate::vec::{Point, Vec3};
use crate::zigzag::{zigzag, zigzag_csv, zigzag_svg, DefinitePlane};

#[derive(Parser, Debug)]
#[command(
    name = "crooked",
    about = "Geometry kernel for crooked planes and halfspaces in 2+1 Minkowski space",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Tolerance for sign predicates.
    #[arg(long, default_value_t = crate::tol::DEFAULT_EPS, global = false)]
    eps: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ZigzagFormat {
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FoliateFormat {
    Csv,
    Obj,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Causal classification of a vector.
    Classify {
        /// Vector as x,y,z in the standard chart.
        #[arg(long)]
        vec: String,
        #[command(flatten)]
        common: Common,
        /// Evaluate signs in exact rational arithmetic.
        #[arg(long)]
        rational: bool,
    },
    /// Null frame of a spacelike director.
    Frame {
        /// Director as x,y,z in the standard chart.
        #[arg(long)]
        dir: String,
        #[command(flatten)]
        common: Common,
    },
    /// Crooked halfspace membership of a point.
    Contains {
        /// Halfspace record (defaults to the canonical halfspace).
        #[arg(long)]
        halfspace: Option<String>,
        /// Point as x,y,z.
        #[arg(long)]
        point: String,
        /// Closed membership instead of open.
        #[arg(long)]
        closed: bool,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        rational: bool,
    },
    /// Linearization of a crooked halfspace.
    Linearize {
        #[arg(long)]
        halfspace: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Disjointness of two crooked halfspaces, all methods cross-checked.
    Disjoint {
        #[arg(long)]
        h1: String,
        #[arg(long)]
        h2: String,
        /// Sampling oracle budget (0 skips the oracle).
        #[arg(long, default_value_t = 0)]
        oracle: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
        /// Also evaluate the cone membership in exact rational arithmetic.
        #[arg(long)]
        rational: bool,
    },
    /// Zigzag: intersection of the crooked plane with a definite plane.
    Zigzag {
        #[arg(long)]
        halfspace: Option<String>,
        /// Plane record {"type":"plane","origin":..,"u":..,"v":..}.
        #[arg(long)]
        plane: String,
        /// Output format.
        #[arg(long, value_enum)]
        out: ZigzagFormat,
        /// Plane-coordinate length of the emitted wing rays.
        #[arg(long, default_value_t = 5.0)]
        ray_length: f64,
        #[command(flatten)]
        common: Common,
    },
    /// OBJ mesh of a crooked plane clipped to a frame-coordinate box.
    Mesh {
        #[arg(long)]
        halfspace: Option<String>,
        /// Clip box a0,a1,b0,b1,c0,c1 in frame coordinates.
        #[arg(long, default_value = "-2,2,-2,2,-2,2")]
        clip: String,
        /// Grid resolution per patch.
        #[arg(long, default_value_t = 8)]
        res: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Integrate, certify and emit a crooked foliation.
    Foliate {
        /// Foliation record (inline JSON or @path to a scene file).
        #[arg(long)]
        spec: String,
        #[arg(long, value_enum)]
        emit: FoliateFormat,
        /// Clip box for --emit obj.
        #[arg(long, default_value = "-2,2,-2,2,-2,2")]
        clip: String,
        /// Grid resolution for --emit obj.
        #[arg(long, default_value_t = 4)]
        res: usize,
        /// Number of leaves meshed for --emit obj.
        #[arg(long, default_value_t = 5)]
        leaves: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_triple(s: &str) -> Result<[f64; 3]> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(GeomError::InvalidInput(format!("expected x,y,z, got '{s}'")));
    }
    let mut out = [0.0; 3];
    for (i, p) in parts.iter().enumerate() {
        out[i] = p
            .trim()
            .parse::<f64>()
            .map_err(|_| GeomError::InvalidInput(format!("bad number '{p}'")))?;
        if !out[i].is_finite() {
            return Err(GeomError::InvalidInput(format!("non-finite component '{p}'")));
        }
    }
    Ok(out)
}

fn parse_rational_triple(s: &str) -> Result<[exact::Rat; 3]> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(GeomError::InvalidInput(format!("expected x,y,z, got '{s}'")));
    }
    Ok([
        exact::parse_rat(parts[0])?,
        exact::parse_rat(parts[1])?,
        exact::parse_rat(parts[2])?,
    ])
}

fn parse_halfspace(json: Option<&str>, tol: Tol) -> Result<CrookedHalfspace> {
    match json {
        None => Ok(CrookedHalfspace::canonical(tol)),
        Some(j) => match SceneRecord::parse(j)? {
            SceneRecord::Halfspace(r) => r.to_halfspace(tol),
            _ => Err(GeomError::InvalidInput("expected a halfspace record".into())),
        },
    }
}

fn parse_halfspace_record(json: Option<&str>) -> Result<Option<crate::scene::HalfspaceRecord>> {
    match json {
        None => Ok(None),
        Some(j) => match SceneRecord::parse(j)? {
            SceneRecord::Halfspace(r) => Ok(Some(r)),
            _ => Err(GeomError::InvalidInput("expected a halfspace record".into())),
        },
    }
}

fn parse_plane(json: &str, tol: Tol) -> Result<DefinitePlane> {
    match SceneRecord::parse(json)? {
        SceneRecord::Plane(r) => DefinitePlane::new(
            Point::std(r.origin[0], r.origin[1], r.origin[2]),
            Vec3::std(r.u[0], r.u[1], r.u[2]),
            Vec3::std(r.v[0], r.v[1], r.v[2]),
            tol,
        ),
        _ => Err(GeomError::InvalidInput("expected a plane record".into())),
    }
}

fn parse_clip(s: &str) -> Result<ClipBox> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| GeomError::InvalidInput(format!("bad clip box '{s}'")))?;
    if parts.len() != 6 {
        return Err(GeomError::InvalidInput("clip box needs 6 numbers".into()));
    }
    ClipBox::new([parts[0], parts[1]], [parts[2], parts[3]], [parts[4], parts[5]])
}

fn fmt3(v: [f64; 3]) -> String {
    format!("[{},{},{}]", v[0], v[1], v[2])
}

/// Run the CLI; returns the process exit code and writes output/diagnostics.
pub fn run(cli: Cli, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32 {
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute(cli: Cli, out: &mut dyn std::io::Write) -> Result<i32> {
    let w = |out: &mut dyn std::io::Write, s: String| -> Result<()> {
        writeln!(out, "{s}").map_err(|e| GeomError::InvalidInput(format!("write failed: {e}")))
    };
    match cli.command {
        Command::Classify { vec, common, rational } => {
            let tol = Tol::new(common.eps);
            let class = if rational {
                let [x, y, z] = parse_rational_triple(&vec)?;
                let v = RVec3::new(x, y, z);
                exact_classify(&v)
            } else {
                let [x, y, z] = parse_triple(&vec)?;
                Vec3::std(x, y, z).classify(tol).as_str()
            };
            w(out, format!("{{\"class\":\"{class}\"}}"))?;
            Ok(0)
        }
        Command::Frame { dir, common } => {
            let tol = Tol::new(common.eps);
            let [x, y, z] = parse_triple(&dir)?;
            let f = crate::frame::NullFrame::new(&Vec3::std(x, y, z), tol)?;
            w(
                out,
                format!(
                    "{{\"s\":{},\"s_minus\":{},\"s_plus\":{}}}",
                    fmt3(f.s().comps()),
                    fmt3(f.s_minus().comps()),
                    fmt3(f.s_plus().comps())
                ),
            )?;
            Ok(0)
        }
        Command::Contains { halfspace, point, closed, common, rational } => {
            let tol = Tol::new(common.eps);
            let result = if rational {
                let rec = parse_halfspace_record(halfspace.as_deref())?;
                let (vertex, director) = match &rec {
                    None => (RVec3::from_i64(0, 0, 0), RVec3::from_i64(1, 0, 0)),
                    Some(r) => (
                        rvec_of_floats(r.vertex)?,
                        rvec_of_floats(r.director)?,
                    ),
                };
                let h = ExactHalfspace::new(vertex, &director)?;
                let [x, y, z] = parse_rational_triple(&point)?;
                let q = RVec3::new(x, y, z);
                let octant = h.contains_octant(&q, closed);
                let inner = h.contains_inner_form(&q, closed);
                debug_assert_eq!(octant, inner);
                octant
            } else {
                let h = parse_halfspace(halfspace.as_deref(), tol)?;
                let [x, y, z] = parse_triple(&point)?;
                h.contains(&Point::std(x, y, z), closed, tol)?
            };
            w(out, format!("{{\"contains\":{result},\"closed\":{closed}}}"))?;
            Ok(0)
        }
        Command::Linearize { halfspace, common } => {
            let tol = Tol::new(common.eps);
            let h = parse_halfspace(halfspace.as_deref(), tol)?;
            let hp = h.linearize(tol);
            w(out, format!("{{\"halfplane\":{}}}", fmt3(hp.s().comps())))?;
            Ok(0)
        }
        Command::Disjoint { h1, h2, oracle, seed, common, rational } => {
            let tol = Tol::new(common.eps);
            let a = parse_halfspace(Some(&h1), tol)?;
            let b = parse_halfspace(Some(&h2), tol)?;
            let report = disjointness_report(&a, &b, oracle, seed, tol)?;

            let mut agree = report.agree;
            let mut line = String::new();
            write!(
                line,
                "{{\"relation\":\"{}\",\"consistent\":{},\"disjoint_closed\":{},\"disjoint_open\":{}",
                report.relation, report.consistent, report.cone_closed, report.cone_open
            )
            .unwrap();
            match report.direct {
                Some(d) => write!(line, ",\"direct\":{d}").unwrap(),
                None => write!(line, ",\"direct\":null").unwrap(),
            }
            if rational {
                let ra = parse_halfspace_record(Some(&h1))?.expect("record parsed above");
                let rb = parse_halfspace_record(Some(&h2))?.expect("record parsed above");
                let ha = ExactHalfspace::new(rvec_of_floats(ra.vertex)?, &rvec_of_floats(ra.director)?)?;
                let hb = ExactHalfspace::new(rvec_of_floats(rb.vertex)?, &rvec_of_floats(rb.director)?)?;
                let ec = exact::halfspaces_disjoint_exact(&ha, &hb, true);
                let eo = exact::halfspaces_disjoint_exact(&ha, &hb, false);
                agree &= ec == report.cone_closed && eo == report.cone_open;
                write!(line, ",\"exact_closed\":{ec},\"exact_open\":{eo}").unwrap();
            }
            match &report.oracle {
                Some(OracleOutcome::Witness(p)) => {
                    write!(line, ",\"oracle\":\"witness\",\"witness\":{}", fmt3(p.comps())).unwrap()
                }
                Some(OracleOutcome::NoWitnessFound) => {
                    write!(line, ",\"oracle\":\"no_witness\",\"witness\":null").unwrap()
                }
                None => write!(line, ",\"oracle\":null,\"witness\":null").unwrap(),
            }
            write!(line, ",\"agree\":{agree}}}").unwrap();
            w(out, line)?;
            Ok(if agree { 0 } else { 3 })
        }
        Command::Zigzag { halfspace, plane, out: format, ray_length, common } => {
            let tol = Tol::new(common.eps);
            let h = parse_halfspace(halfspace.as_deref(), tol)?;
            let p = parse_plane(&plane, tol)?;
            let z = zigzag(&h, &p, ray_length, tol)?;
            let text = match format {
                ZigzagFormat::Csv => zigzag_csv(&z),
                ZigzagFormat::Svg => zigzag_svg(&z),
            };
            out.write_all(text.as_bytes())
                .map_err(|e| GeomError::InvalidInput(format!("write failed: {e}")))?;
            Ok(0)
        }
        Command::Mesh { halfspace, clip, res, common } => {
            let tol = Tol::new(common.eps);
            let h = parse_halfspace(halfspace.as_deref(), tol)?;
            let clip = parse_clip(&clip)?;
            let mesh = crooked_plane_mesh(&h, &clip, res)?;
            out.write_all(mesh_obj(&mesh).as_bytes())
                .map_err(|e| GeomError::InvalidInput(format!("write failed: {e}")))?;
            Ok(0)
        }
        Command::Foliate { spec, emit, clip, res, leaves, common } => {
            let tol = Tol::new(common.eps);
            let text = if let Some(path) = spec.strip_prefix('@') {
                std::fs::read_to_string(path)
                    .map_err(|e| GeomError::InvalidInput(format!("cannot read {path}: {e}")))?
            } else {
                spec.clone()
            };
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .ok_or_else(|| GeomError::InvalidInput("empty foliation spec".into()))?;
            let rec = match SceneRecord::parse(line)? {
                SceneRecord::Foliation(r) => r,
                _ => return Err(GeomError::InvalidInput("expected a foliation record".into())),
            };
            let a_expr = CoeffExpr::parse(&rec.coeffs.a)?;
            let b_expr = CoeffExpr::parse(&rec.coeffs.b)?;
            // Record coefficients weight the null generators scaled to unit
            // first component, i.e. √2·s_t^∓.
            let scale = std::f64::consts::SQRT_2;
            let cp = CoefficientPath::custom(
                move |t| scale * a_expr.eval(t),
                move |t| scale * b_expr.eval(t),
            );
            let f = CrookedFoliation::build(
                DirectorPath::orthogonal(),
                cp,
                Point::std(rec.p0[0], rec.p0[1], rec.p0[2]),
                rec.t_range[0],
                rec.t_range[1],
                rec.steps,
                tol,
            )?;
            let report = f.certify(tol);
            match emit {
                FoliateFormat::Csv => {
                    let mut csv = String::from("t,px,py,pz\r\n");
                    for (t, p) in f.vertex_samples() {
                        let [x, y, z] = p.comps();
                        csv.push_str(&format!("{t},{x},{y},{z}\r\n"));
                    }
                    out.write_all(csv.as_bytes())
                        .map_err(|e| GeomError::InvalidInput(format!("write failed: {e}")))?;
                }
                FoliateFormat::Obj => {
                    let clip = parse_clip(&clip)?;
                    let n = f.leaves().len();
                    let take = leaves.clamp(1, n);
                    let mut obj = String::new();
                    let mut offset = 0usize;
                    for k in 0..take {
                        let idx = if take == 1 { 0 } else { k * (n - 1) / (take - 1) };
                        let mesh = crooked_plane_mesh(&f.leaves()[idx].halfspace, &clip, res)?;
                        for p in &mesh.vertices {
                            let [x, y, z] = p.comps();
                            obj.push_str(&format!("v {x} {y} {z}\n"));
                        }
                        for tr in &mesh.triangles {
                            obj.push_str(&format!(
                                "f {} {} {}\n",
                                tr[0] + 1 + offset,
                                tr[1] + 1 + offset,
                                tr[2] + 1 + offset
                            ));
                        }
                        offset += mesh.vertices.len();
                    }
                    out.write_all(obj.as_bytes())
                        .map_err(|e| GeomError::InvalidInput(format!("write failed: {e}")))?;
                }
            }
            let status = format!(
                "{{\"certified\":{},\"velocity_failure\":{},\"disjoint_failure\":{}}}",
                report.certified,
                match report.velocity_failure {
                    Some(i) => i.to_string(),
                    None => "null".into(),
                },
                match report.disjoint_failure {
                    Some((i, j)) => format!("[{i},{j}]"),
                    None => "null".into(),
                }
            );
            eprintln!("{status}");
            Ok(if report.certified { 0 } else { 3 })
        }
    }
}

fn rvec_of_floats(v: [f64; 3]) -> Result<RVec3> {
    Ok(RVec3::new(
        exact::rat_of_f64(v[0])?,
        exact::rat_of_f64(v[1])?,
        exact::rat_of_f64(v[2])?,
    ))
}

fn exact_classify(v: &RVec3) -> &'static str {
    if v.is_zero() {
        return "zero";
    }
    let future = v.is_future();
    match v.causal_sign() {
        1 => "spacelike",
        -1 if future => "timelike_future",
        -1 => "timelike_past",
        _ if future => "null_future",
        _ => "null_past",
    }
}
