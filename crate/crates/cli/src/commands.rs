use crate::{Context, Outcome};
use anyhow::{bail, Context as _, Result};
use clap::{Args, Subcommand, ValueEnum};
use cohomolab::bar::{
    boundary_matrix, cohomology_dims_mod_p, integral_cohomology, massey as massey_product, BarError, Cochain,
};
use cohomolab::chern::pc;
use cohomolab::davis::{
    barycentric_subdivision, bestvina, davis_quotient, euler_report, homology, moore_complex, racg_from_complex,
    torsion_free_coloring, ComplexJson, SimplicialComplex,
};
use cohomolab::groups::{build_group, FiniteGroup, GroupSpec};
use cohomolab::invariants::{
    dickson_check, fixed_subspace, held_5_part_check, ExteriorCharacter, GradedAlgebra, GradedRing, MatrixAction,
    Monomial, Element,
};
use cohomolab::linalg::Domain;
use cohomolab::ringmodel::{
    describe_basis, fixed_subring, held_3_part_check, held_7_part_check, named_action, shear_check,
    NamedAction, RingAutomorphism, RingModel, ACTION_NAMES,
};
use serde::Deserialize;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::sync::Arc;

/// Largest degree for generic fixed-point computations.
const FIXED_MAX_DEGREE: usize = 120;

/// Reads inline JSON, or the contents of the named file.
fn json_arg<T: serde::de::DeserializeOwned>(arg: &str, what: &str) -> Result<T> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).with_context(|| format!("reading {what} from {arg}"))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing {what}"))
}

fn group_arg(arg: &str) -> Result<FiniteGroup> {
    let spec: GroupSpec = json_arg(arg, "group spec")?;
    Ok(build_group(&spec)?)
}

#[derive(Args, Debug)]
pub struct CohomologyArgs {
    /// Group spec as JSON, inline or a file path.
    #[arg(long)]
    pub group: String,
    /// Report dimensions of H^n(G; F_p).
    #[arg(long)]
    pub p: Option<u32>,
    /// Report H^n(G; Z).
    #[arg(long)]
    pub integral: bool,
    #[arg(long, default_value_t = 4)]
    pub max_degree: usize,
    /// Write the bar boundary d_{max-degree} in coordinate format.
    #[arg(long)]
    pub dump_matrix: Option<PathBuf>,
}

pub fn cohomology(ctx: &Context, a: &CohomologyArgs) -> Result<Outcome> {
    let g = group_arg(&a.group)?;
    if a.p.is_none() && !a.integral && a.dump_matrix.is_none() {
        bail!("give --p, --integral or --dump-matrix");
    }
    let mut report = json!({ "command": "cohomology", "group": g.name(), "order": g.order(), "max_degree": a.max_degree });
    if let Some(p) = a.p {
        report["p"] = p.into();
        report["dims_mod_p"] = json!(cohomology_dims_mod_p(&g, p, a.max_degree, &ctx.bar)?);
    }
    if a.integral {
        let groups = (1..=a.max_degree)
            .map(|n| {
                let h = integral_cohomology(&g, n, &ctx.bar)?;
                Ok(json!({ "degree": n, "rank": h.rank, "torsion": h.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(), "order": h.order().to_string() }))
            })
            .collect::<Result<Vec<_>, BarError>>()?;
        report["integral"] = Value::Array(groups);
    }
    if let Some(path) = &a.dump_matrix {
        let n = a.max_degree;
        let cells = (g.order() as u128 - 1).pow(n as u32);
        if cells > ctx.bar.max_cells {
            return Err(BarError::ResourceLimit { needed: cells, limit: ctx.bar.max_cells }.into());
        }
        let domain = a.p.map_or(Domain::Integers, Domain::Prime);
        let m = boundary_matrix(&g, n, domain);
        std::fs::write(path, m.to_coordinate()).with_context(|| format!("writing {}", path.display()))?;
        report["dumped"] = json!({ "degree": n, "rows": m.rows(), "cols": m.cols(), "nnz": m.nnz(), "domain": domain.tag() });
    }
    Ok(Outcome::info(report))
}

#[derive(Args, Debug)]
pub struct MasseyArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub p: u32,
    /// Presentation coordinates of the three degree-1 classes.
    #[arg(long, value_delimiter = ',', num_args = 3, default_values_t = [0usize, 0, 0])]
    pub coords: Vec<usize>,
}

pub fn massey(a: &MasseyArgs) -> Result<Outcome> {
    let g = Arc::new(group_arg(&a.group)?);
    let ring = Domain::Prime(a.p);
    let classes = a
        .coords
        .iter()
        .map(|&i| {
            if i >= g.coord_names().len() {
                bail!("coordinate {i} out of range");
            }
            let gg = g.clone();
            let c = Cochain::from_fn(&g, 1, ring, move |cell| gg.coords(cell[0])[i] as i64);
            if !c.is_cocycle() {
                bail!("coordinate {i} is not a homomorphism to F_{}", a.p);
            }
            Ok(c)
        })
        .collect::<Result<Vec<_>>>()?;
    let m = massey_product(&classes[0], &classes[1], &classes[2])?;
    let zero = Cochain::zero(&g, 2, ring);
    let report = json!({
        "command": "massey",
        "group": g.name(),
        "p": a.p,
        "coords": a.coords,
        "degree": m.degree(),
        "indeterminacy_dim": m.indeterminacy.len(),
        "is_zero": m.contains(&zero)?,
        "equals_bockstein": m.contains(&classes[0].bockstein()?)?,
    });
    Ok(Outcome::info(report))
}

#[derive(Subcommand, Debug)]
pub enum ChernCommand {
    /// pc(G): twice the lcm over order-p subgroup classes of the Chern-image generator degrees.
    Pc {
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: u64,
    },
}

pub fn chern(c: &ChernCommand) -> Result<Outcome> {
    let ChernCommand::Pc { group, p } = c;
    let g = Arc::new(group_arg(group)?);
    let r = pc(&g, *p)?;
    let per_class: Vec<Value> = r
        .per_class
        .iter()
        .map(|c| json!({ "generators": [g.label(c.generator)], "subgroup_order": c.subgroup.order(), "m": c.m, "exponents": c.exponents }))
        .collect();
    Ok(Outcome::info(json!({
        "command": "chern pc",
        "group": g.name(),
        "p": r.p,
        "pc": r.pc,
        "lcm_of_doubled": r.lcm_of_doubled,
        "per_class": per_class,
    })))
}

/// Matrix action input: `matrices` act on polynomial generators of the given degrees
/// (default 1) and exterior generators transform by powers of the determinant.
#[derive(Deserialize, Debug)]
struct ActionJson {
    p: u32,
    matrices: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    exterior: Vec<ExteriorCharacter>,
    #[serde(default)]
    poly_degrees: Option<Vec<usize>>,
    #[serde(default)]
    ext_degrees: Option<Vec<usize>>,
}

#[derive(Subcommand, Debug)]
pub enum InvariantsCommand {
    /// Fixed subspaces degree by degree.
    Fixed {
        #[arg(long)]
        p: u32,
        /// {"p", "matrices", "exterior", "poly_degrees", "ext_degrees"} inline or a file path.
        #[arg(long)]
        action: String,
        #[arg(long)]
        max_degree: usize,
    },
    /// Compare SL_2(p) and GL_2(p) invariants with the Dickson generators.
    Dickson {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        max_degree: usize,
    },
    /// The order-48 group on F_5[δ, δ′] ⊗ Λ[ε] against its presented invariant ring.
    Held5 {
        #[arg(long, default_value_t = 120)]
        max_degree: usize,
    },
}

/// `[[e_1, …, e_n, x_1, …, x_m], coef]`: polynomial exponents then exterior bits.
fn encode(e: &Element<Monomial>, ext_count: usize) -> Vec<Value> {
    e.terms()
        .iter()
        .map(|(m, &c)| {
            let mut exps: Vec<u32> = m.poly.clone();
            exps.extend((0..ext_count).map(|i| m.ext >> i & 1));
            json!([exps, c])
        })
        .collect()
}

fn fixed_rows(alg: &GradedAlgebra, act: &MatrixAction, max_degree: usize, ext_count: usize) -> Vec<Value> {
    let gens = act.generators();
    (0..=max_degree)
        .map(|d| {
            let f = fixed_subspace(alg, &gens, d);
            json!({ "degree": d, "dim": f.len(), "total": alg.basis(d).len(), "basis": f.iter().map(|e| encode(e, ext_count)).collect::<Vec<_>>() })
        })
        .collect()
}

pub fn invariants(c: &InvariantsCommand) -> Result<Outcome> {
    match c {
        InvariantsCommand::Fixed { p, action, max_degree } => {
            if *max_degree > FIXED_MAX_DEGREE {
                return Err(cohomolab::invariants::InvariantError::Infeasible { degree: *max_degree, limit: FIXED_MAX_DEGREE }.into());
            }
            let a: ActionJson = json_arg(action, "action")?;
            if a.p != *p {
                bail!("action is over F_{} but --p is {p}", a.p);
            }
            let n = a.matrices.first().map_or(0, Vec::len);
            let poly = a.poly_degrees.unwrap_or_else(|| vec![1; n]);
            let ext = a.ext_degrees.unwrap_or_else(|| vec![1; a.exterior.len()]);
            if poly.len() != n || ext.len() != a.exterior.len() {
                bail!("degree lists do not match the action");
            }
            let act = MatrixAction::new(*p, a.matrices, a.exterior)?;
            let alg = GradedAlgebra::new(*p, poly, ext.clone())?;
            Ok(Outcome::info(json!({
                "command": "invariants fixed",
                "p": p,
                "group_order": act.group_order(),
                "rows": fixed_rows(&alg, &act, *max_degree, ext.len()),
            })))
        }
        InvariantsCommand::Dickson { p, max_degree } => {
            let r = dickson_check(*p, *max_degree)?;
            let passed = r.passed;
            let mut report = serde_json::to_value(r)?;
            report["command"] = "invariants dickson".into();
            Ok(Outcome { report, passed })
        }
        InvariantsCommand::Held5 { max_degree } => {
            let r = held_5_part_check(*max_degree)?;
            let passed = r.passed;
            let mut report = serde_json::to_value(r)?;
            report["command"] = "invariants held5".into();
            Ok(Outcome { report, passed })
        }
    }
}

/// One ring automorphism: `α ↦ n₁α + n₂β`, `β ↦ n₃α + n₄β`, with optional `j` and `ζ` scalar.
#[derive(Deserialize, Debug)]
struct AutomorphismJson {
    matrix: [[i64; 2]; 2],
    #[serde(default)]
    j: Option<i64>,
    #[serde(default)]
    zeta: Option<i64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RingCheck {
    /// D_8 at p = 3.
    D8,
    /// S_3 × C_3 at p = 7, with the restriction to K.
    S3xc3,
    /// β ↦ α + β.
    Shear,
}

#[derive(Subcommand, Debug)]
pub enum RingmodelCommand {
    /// Fixed subring degree by degree.
    Fixed {
        #[arg(long)]
        p: u32,
        /// A built-in action name, or a JSON list of {"matrix", "j", "zeta"}.
        #[arg(long)]
        action: String,
        #[arg(long)]
        max_degree: usize,
        /// Structure constant in μν = λχ_3.
        #[arg(long, default_value_t = 1)]
        lambda: u32,
    },
    /// Compare a fixed subring with its stated generators.
    Check {
        #[arg(value_enum)]
        which: RingCheck,
        #[arg(long)]
        max_degree: usize,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, default_value_t = 1)]
        lambda: u32,
    },
    /// List the built-in actions.
    Actions,
}

pub fn ringmodel(c: &RingmodelCommand) -> Result<Outcome> {
    match c {
        RingmodelCommand::Fixed { p, action, max_degree, lambda } => {
            let named = if action.trim_start().starts_with('[') || std::path::Path::new(action).is_file() {
                let list: Vec<AutomorphismJson> = json_arg(action, "ring action")?;
                let generators = list
                    .into_iter()
                    .map(|a| {
                        let g = RingAutomorphism::new(*p, a.matrix, a.j)?;
                        Ok(match a.zeta {
                            Some(z) => g.with_zeta(*p, z),
                            None => g,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                NamedAction::Ring { p: *p, generators }
            } else {
                named_action(action, Some(*p))?
            };
            match named {
                NamedAction::Ring { p, generators } => {
                    let ring = RingModel::new(p, *lambda)?;
                    let fixed = fixed_subring(&ring, &generators, *max_degree)?;
                    let rows: Vec<Value> = fixed
                        .iter()
                        .enumerate()
                        .map(|(d, f)| json!({ "degree": d, "dim": f.len(), "total": ring.basis(d).len(), "basis": describe_basis(f) }))
                        .collect();
                    Ok(Outcome::info(json!({ "command": "ringmodel fixed", "p": p, "lambda": lambda, "rows": rows })))
                }
                NamedAction::Matrix(act) => {
                    if *max_degree > FIXED_MAX_DEGREE {
                        return Err(cohomolab::invariants::InvariantError::Infeasible { degree: *max_degree, limit: FIXED_MAX_DEGREE }.into());
                    }
                    let alg = GradedAlgebra::new(act.p, vec![2, 2], vec![3])?;
                    Ok(Outcome::info(json!({
                        "command": "ringmodel fixed",
                        "p": act.p,
                        "algebra": "F_p[d, d'] (x) L[e], degrees 2, 2, 3",
                        "group_order": act.group_order(),
                        "rows": fixed_rows(&alg, &act, *max_degree, 1),
                    })))
                }
            }
        }
        RingmodelCommand::Check { which, max_degree, p, lambda } => {
            let (mut report, passed) = match which {
                RingCheck::D8 => {
                    let r = held_3_part_check(*max_degree)?;
                    let passed = r.span_matches && r.generation_matches;
                    (serde_json::to_value(r)?, passed)
                }
                RingCheck::S3xc3 => {
                    let r = held_7_part_check(*max_degree, *lambda)?;
                    let passed = r.passed;
                    (serde_json::to_value(r)?, passed)
                }
                RingCheck::Shear => {
                    let r = shear_check(p.unwrap_or(3), *max_degree)?;
                    let passed = r.passed;
                    (serde_json::to_value(r)?, passed)
                }
            };
            report["command"] = "ringmodel check".into();
            Ok(Outcome { report, passed })
        }
        RingmodelCommand::Actions => {
            let list: Vec<Value> = ACTION_NAMES.iter().map(|(n, alias, d)| json!({ "name": n, "alias": alias, "description": d })).collect();
            Ok(Outcome::info(json!({ "command": "ringmodel actions", "actions": list })))
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Builtin {
    Point,
    Edge,
    TwoPoints,
    Triangle,
    /// ∂Δ³, a 2-sphere.
    Sphere2,
    /// ∂Δ⁴, a 3-sphere.
    Sphere3,
}

#[derive(Args, Debug)]
pub struct ComplexSource {
    /// Use the Moore complex for z ↦ z^n.
    #[arg(long, group = "source")]
    pub n: Option<usize>,
    /// Complex JSON {"vertices", "facets"} as a file path or inline.
    #[arg(long, group = "source")]
    pub k: Option<String>,
    #[arg(long, group = "source", value_enum)]
    pub builtin: Option<Builtin>,
    /// Take the barycentric subdivision first.
    #[arg(long)]
    pub subdivide: bool,
    /// Also write the report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl ComplexSource {
    fn load(&self) -> Result<SimplicialComplex> {
        let k = if let Some(n) = self.n {
            moore_complex(n)?
        } else if let Some(k) = &self.k {
            let j: ComplexJson = json_arg(k, "complex")?;
            SimplicialComplex::from_json(&j)?
        } else {
            match self.builtin {
                Some(Builtin::Point) => SimplicialComplex::point(),
                Some(Builtin::Edge) => SimplicialComplex::edge(),
                Some(Builtin::TwoPoints) => SimplicialComplex::two_points(),
                Some(Builtin::Triangle) => SimplicialComplex::full_simplex(3),
                Some(Builtin::Sphere2) => SimplicialComplex::simplex_boundary(3),
                Some(Builtin::Sphere3) => SimplicialComplex::simplex_boundary(4),
                None => bail!("give --n, --k or --builtin"),
            }
        };
        Ok(if self.subdivide { barycentric_subdivision(&k)? } else { k })
    }
}

#[derive(Subcommand, Debug)]
pub enum DavisCommand {
    /// Build the Coxeter group and the Davis quotient; report sizes and cross-checks.
    Build(ComplexSource),
    /// Integral homology of K, and of the quotient with --quotient.
    Homology {
        #[command(flatten)]
        source: ComplexSource,
        #[arg(long)]
        quotient: bool,
    },
    /// Euler characteristic of the Coxeter group three ways.
    Chi(ComplexSource),
    /// Quotient homology for the Moore complex nerve.
    Bestvina {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn homology_text(k: &SimplicialComplex) -> Vec<String> {
    homology(k).iter().map(ToString::to_string).collect()
}

fn write_out(out: &Option<PathBuf>, report: &Value) -> Result<()> {
    if let Some(path) = out {
        std::fs::write(path, serde_json::to_string_pretty(report)? + "\n")?;
    }
    Ok(())
}

pub fn davis(c: &DavisCommand) -> Result<Outcome> {
    let (report, passed, out) = match c {
        DavisCommand::Build(src) => {
            let k = src.load()?;
            let gp = racg_from_complex(&k)?;
            let coloring = torsion_free_coloring(&k);
            let q = davis_quotient(&gp, &coloring)?;
            let report = json!({
                "command": "davis build",
                "n": k.counts(),
                "full": k.is_full(),
                "generators": gp.generators(),
                "group_order": gp.order().map(|o| o.to_string()),
                "colors": coloring.k,
                "quotient_counts": q.complex.counts(),
                "quotient_chi": q.complex.euler_characteristic(),
                "euler": euler_report(&k, Some(&q)),
            });
            (report, true, &src.out)
        }
        DavisCommand::Homology { source, quotient } => {
            let k = source.load()?;
            let mut report = json!({ "command": "davis homology", "n": k.counts(), "homology": homology_text(&k) });
            if *quotient {
                let q = davis_quotient(&racg_from_complex(&k)?, &torsion_free_coloring(&k))?;
                report["quotient_counts"] = json!(q.complex.counts());
                report["quotient_homology"] = json!(homology_text(&q.complex));
            }
            (report, true, &source.out)
        }
        DavisCommand::Chi(src) => {
            let k = src.load()?;
            let q = davis_quotient(&racg_from_complex(&k)?, &torsion_free_coloring(&k))?;
            let e = euler_report(&k, Some(&q));
            let passed = e.consistent;
            (json!({ "command": "davis chi", "euler": e }), passed, &src.out)
        }
        DavisCommand::Bestvina { n, out } => {
            let r = bestvina(*n)?;
            let passed = r.passed;
            let mut report = serde_json::to_value(r)?;
            report["command"] = "davis bestvina".into();
            (report, passed, out)
        }
    };
    write_out(out, &report)?;
    Ok(Outcome { report, passed })
}
