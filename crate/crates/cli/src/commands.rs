//! One function per subcommand, each producing a JSON result.

use std::path::Path;

use k3_lattice::lattice::{binary_class, binary_equivalent, genus_equal, is_isotropic_rational, local_invariants, represents};
use k3_lattice::monodromy::{self, build_root_context, weyl_membership, AcampoVerdict, MonodromyMatrix};
use k3_lattice::mukai::{self, AlgebraicMukaiLattice, MukaiVector};
use k3_lattice::real_k3::{self, LatticeInvolution, RealInvariants, TopologicalType};
use k3_lattice::IntegralLattice;
use serde_json::{json, Map, Value};

use crate::doc::{self, invalid, load, load_lattice};
use crate::error::CliError;
use crate::render::{int, ints, matrix};
use crate::{render, suite, Command};

pub struct Output {
    pub command: &'static str,
    pub result: Value,
    /// Replaces the generic text rendering when present.
    pub text: Option<String>,
    pub success: bool,
}

impl Output {
    fn new(command: &'static str, result: Value) -> Self {
        Output { command, result, text: None, success: true }
    }
}

pub fn run(cmd: &Command) -> Result<Output, CliError> {
    Ok(match cmd {
        Command::LatticeInfo { lattice } => Output::new("lattice-info", lattice_info(&load_lattice(lattice)?)),
        Command::Represents { lattice, value } => {
            let l = load_lattice(lattice)?;
            let witness = represents(&l, value)?;
            let mut m = Map::new();
            m.insert("value".into(), int(value));
            m.insert("represented".into(), Value::Bool(witness.is_some()));
            m.insert("witness".into(), witness.as_deref().map_or(Value::Null, ints));
            Output::new("represents", Value::Object(m))
        }
        Command::Isotropic { lattice } => {
            let l = load_lattice(lattice)?;
            Output::new("isotropic", json!({ "isotropic": is_isotropic_rational(&l) }))
        }
        Command::GenusCompare { first, second } => {
            let (l, m) = (load_lattice(first)?, load_lattice(second)?);
            let result = json!({
                "determinants": [int(l.determinant()), int(m.determinant())],
                "genus_equal": genus_equal(&l, &m),
            });
            Output::new("genus-compare", result)
        }
        Command::BinaryEquiv { first, second } => {
            let (l, m) = (load_lattice(first)?, load_lattice(second)?);
            let result = json!({
                "equivalent": binary_equivalent(&l, &m)?,
                "reduced_forms": [reduced_forms(&l)?, reduced_forms(&m)?],
            });
            Output::new("binary-equiv", result)
        }
        Command::Mukai { pic, vector, with } => {
            let (ml, v) = (mukai_lattice(pic)?, load_vector(vector)?);
            let mut m = Map::new();
            m.insert("vector".into(), render::mukai(&v));
            m.insert("square".into(), int(&mukai::mukai_pairing(&ml, &v, &v)?));
            m.insert("spherical".into(), Value::Bool(mukai::is_spherical(&ml, &v)?));
            m.insert("isotropic".into(), Value::Bool(mukai::is_isotropic(&ml, &v)?));
            if let Some(w) = with {
                let w = load_vector(w)?;
                m.insert("other".into(), render::mukai(&w));
                m.insert("pairing".into(), int(&mukai::mukai_pairing(&ml, &v, &w)?));
            }
            Output::new("mukai", Value::Object(m))
        }
        Command::Twist { pic, vector, sphere } => {
            let ml = mukai_lattice(pic)?;
            let (v, s) = (load_vector(vector)?, load_vector(sphere)?);
            let image = mukai::spherical_twist(&ml, &v, &s)?;
            let result = json!({
                "vector": render::mukai(&v),
                "sphere": render::mukai(&s),
                "image": render::mukai(&image),
            });
            Output::new("twist", result)
        }
        Command::C2 { pic, vector } => {
            let (ml, v) = (mukai_lattice(pic)?, load_vector(vector)?);
            let result = json!({ "vector": render::mukai(&v), "c2": int(&mukai::c2_from_mukai(&ml, &v)?) });
            Output::new("c2", result)
        }
        Command::IndexBound { lattice } => {
            let l = load_lattice(lattice)?;
            let result = json!({
                "decomposable_index": int(&mukai::decomposable_index(&l)),
                "index_upper_bound": int(&mukai::index_upper_bound(&l)),
            });
            Output::new("index-bound", result)
        }
        Command::FmCount { n } => {
            let result = json!({ "n": int(n), "partners": int(&mukai::fm_partner_count(n)?) });
            Output::new("fm-count", result)
        }
        Command::RealType { r, a, delta } => {
            let ri = RealInvariants { r: *r, a: *a, delta: *delta };
            let t = real_k3::topological_type(&ri)?;
            Output::new("real-type", json!({ "invariants": invariants(&ri), "type": topology(&t) }))
        }
        Command::Involution { involution, mukai } => {
            let d: doc::InvolutionDoc = load(involution)?;
            let l = d.lattice.lattice().map_err(invalid(involution))?;
            let mut inv = LatticeInvolution::new(l, d.matrix.to_int_matrix()).map_err(invalid(involution))?;
            if *mukai {
                inv = real_k3::extend_to_mukai(&inv)?;
            }
            Output::new("involution", involution_report(&inv)?)
        }
        Command::Monodromy { matrix, compare } => {
            let t = load_monodromy(matrix)?;
            let result = match compare {
                None => report(&t)?,
                Some(other) => {
                    let u = load_monodromy(other)?;
                    let (first, second) = (monodromy::analyze(&t)?, monodromy::analyze(&u)?);
                    json!({
                        "first": report(&t)?,
                        "second": report(&u)?,
                        "char_poly_equal": first.char_poly == second.char_poly,
                        "indices_equal": (first.e, first.f) == (second.e, second.f),
                    })
                }
            };
            Output::new("monodromy", result)
        }
        Command::Weyl { document } => Output::new("weyl", weyl(document)?),
        Command::JacobianCheck { a, b, c, d } => {
            let pic = AlgebraicMukaiLattice::new(mukai::elliptic_pic());
            let (v, w) = mukai::jacobian_action_images(a, b, c, d)?;
            let result = json!({
                "images": [render::mukai(&v), render::mukai(&w)],
                "squares": [int(&mukai::mukai_pairing(&pic, &v, &v)?), int(&mukai::mukai_pairing(&pic, &w, &w)?)],
                "pairing": int(&mukai::mukai_pairing(&pic, &v, &w)?),
            });
            Output::new("jacobian-check", result)
        }
        Command::PaperSuite { fixtures } => {
            let claims = suite::run(fixtures)?;
            let failed = claims.iter().filter(|c| !c.passed()).count();
            let result = json!({
                "claims": claims.iter().map(suite::Claim::to_json).collect::<Vec<_>>(),
                "passed": claims.len() - failed,
                "failed": failed,
            });
            Output { command: "paper-suite", result, text: Some(suite::to_text(&claims)), success: failed == 0 }
        }
    })
}

fn load_vector(path: &Path) -> Result<MukaiVector, CliError> {
    Ok(load::<doc::MukaiDoc>(path)?.vector())
}

fn mukai_lattice(path: &Path) -> Result<AlgebraicMukaiLattice, CliError> {
    Ok(AlgebraicMukaiLattice::new(load_lattice(path)?))
}

fn load_monodromy(path: &Path) -> Result<MonodromyMatrix, CliError> {
    let d: doc::MonodromyDoc = load(path)?;
    MonodromyMatrix::new(d.matrix.to_int_matrix()).map_err(invalid(path))
}

fn reduced_forms(l: &IntegralLattice) -> Result<Value, CliError> {
    let class = binary_class(l)?;
    Ok(Value::Array(class.reduced_cycle.iter().map(|f| ints(&[f.a.clone(), f.b.clone(), f.c.clone()])).collect()))
}

fn lattice_info(l: &IntegralLattice) -> Value {
    let sig = l.signature();
    let dg = l.discriminant_group();
    let local = local_invariants(l);
    let mut m = Map::new();
    m.insert("gram".into(), matrix(l.gram()));
    if let Some(labels) = l.labels() {
        m.insert("labels".into(), json!(labels));
    }
    m.insert("rank".into(), json!(l.rank()));
    m.insert("determinant".into(), int(l.determinant()));
    m.insert("even".into(), json!(l.is_even()));
    m.insert("unimodular".into(), json!(l.is_unimodular()));
    m.insert("signature".into(), json!([sig.positive, sig.negative]));
    m.insert("discriminant_group".into(), ints(&dg.elementary_divisors));
    m.insert("discriminant_order".into(), int(&dg.order()));
    m.insert("isotropic".into(), json!(is_isotropic_rational(l)));
    let hasse: Map<String, Value> = local.hasse.iter().map(|(p, e)| (p.to_string(), json!(e))).collect();
    m.insert("hasse".into(), Value::Object(hasse));
    Value::Object(m)
}

fn invariants(ri: &RealInvariants) -> Value {
    json!({ "r": ri.r, "a": ri.a, "delta": ri.delta })
}

fn topology(t: &TopologicalType) -> Value {
    let mut m = Map::new();
    m.insert("display".into(), json!(t.to_string()));
    match t {
        TopologicalType::Empty => {
            m.insert("kind".into(), json!("empty"));
        }
        TopologicalType::TwoTori => {
            m.insert("kind".into(), json!("two_tori"));
        }
        TopologicalType::General { g, k } => {
            m.insert("kind".into(), json!("general"));
            m.insert("g".into(), json!(g));
            m.insert("k".into(), json!(k));
        }
    }
    Value::Object(m)
}

fn involution_report(inv: &LatticeInvolution) -> Result<Value, CliError> {
    let ri = real_k3::real_invariants(inv)?;
    let (plus, minus) = real_k3::eigenlattices(inv)?;
    Ok(json!({
        "invariants": invariants(&ri),
        "eigenlattice_ranks": [plus.rank(), minus.rank()],
        "type": real_k3::topological_type(&ri).map_or(Value::Null, |t| topology(&t)),
    }))
}

fn report(t: &MonodromyMatrix) -> Result<Value, CliError> {
    let r = monodromy::analyze(t)?;
    let mut m = Map::new();
    m.insert("e".into(), json!(r.e));
    m.insert("f".into(), json!(r.f));
    m.insert("trace".into(), int(&r.trace));
    m.insert("char_poly".into(), ints(&r.char_poly));
    m.insert("kulikov".into(), r.kulikov.map_or(Value::Null, |k| json!(k.to_string())));
    match &r.log {
        Some((q, n)) => {
            m.insert("m".into(), json!(format!("{}/{}", q.numer(), q.denom())));
            m.insert("N".into(), matrix(n));
        }
        None => {
            m.insert("m".into(), Value::Null);
            m.insert("N".into(), Value::Null);
        }
    }
    let euler = match monodromy::acampo_test(t)? {
        AcampoVerdict::SectionExists { euler } => int(&euler),
        AcampoVerdict::Inconclusive => Value::Null,
    };
    m.insert("acampo".into(), json!({ "section_exists": !euler.is_null(), "euler": euler }));
    Ok(Value::Object(m))
}

fn weyl(path: &Path) -> Result<Value, CliError> {
    let d: doc::WeylDoc = load(path)?;
    let l = d.lattice.lattice().map_err(invalid(path))?;
    let ctx = build_root_context(&l, &d.roots.0)?;
    let word = weyl_membership(&ctx, &d.matrix.to_int_matrix())?;
    let mut m = Map::new();
    m.insert("root_count".into(), json!(ctx.roots().len()));
    m.insert("simple_roots".into(), Value::Array(ctx.simple_roots().iter().map(|r| ints(r)).collect()));
    m.insert("member".into(), json!(word.is_some()));
    m.insert("word".into(), word.map_or(Value::Null, |w| json!(w)));
    Ok(Value::Object(m))
}
