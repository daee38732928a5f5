//! The worked examples, recomputed from the fixture documents.
//!
//! Each claim compares an expected rendering with the computed one, so a
//! failure shows both.

use std::fmt::Display;
use std::path::Path;

use k3_lattice::lattice::{binary_equivalent, genus_equal, represents};
use k3_lattice::monodromy::{self, AcampoVerdict, MonodromyMatrix};
use k3_lattice::mukai::{self, AlgebraicMukaiLattice, MukaiVector};
use k3_lattice::real_k3::{self, LatticeInvolution, RealInvariants};
use k3_lattice::{IntMatrix, IntegralLattice};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::doc::{self, invalid, load, load_lattice};
use crate::error::CliError;

pub struct Claim {
    pub id: &'static str,
    pub statement: &'static str,
    pub expected: String,
    pub actual: String,
}

impl Claim {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "claim": self.statement,
            "expected": self.expected,
            "actual": self.actual,
            "pass": self.passed(),
        })
    }
}

pub fn to_text(claims: &[Claim]) -> String {
    let mut out = String::new();
    for c in claims {
        if c.passed() {
            out.push_str(&format!("PASS  {:<22} {}\n", c.id, c.statement));
        } else {
            out.push_str(&format!(
                "FAIL  {:<22} {}\n      expected {}, got {}\n",
                c.id, c.statement, c.expected, c.actual
            ));
        }
    }
    let failed = claims.iter().filter(|c| !c.passed()).count();
    out.push_str(&format!("{} passed, {} failed\n", claims.len() - failed, failed));
    out
}

struct Suite(Vec<Claim>);

impl Suite {
    fn check<T: Display>(&mut self, id: &'static str, statement: &'static str, expected: &str, actual: k3_lattice::Result<T>) {
        let actual = match actual {
            Ok(v) => v.to_string(),
            Err(e) => format!("error: {e}"),
        };
        self.0.push(Claim { id, statement, expected: expected.into(), actual });
    }
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn join<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn show(m: &IntMatrix) -> String {
    let rows: Vec<String> = m.to_rows().iter().map(|r| format!("[{}]", join(r))).collect();
    format!("[{}]", rows.join(", "))
}

/// Gram matrix of the vectors `halves[i] / 2`, which must be integral.
fn half_gram(l: &IntegralLattice, halves: &[Vec<i64>]) -> k3_lattice::Result<IntMatrix> {
    let vs: Vec<Vec<BigInt>> = halves.iter().map(|v| big(v)).collect();
    let mut rows = Vec::new();
    for x in &vs {
        let mut row = Vec::new();
        for y in &vs {
            let p = l.pairing(x, y)?;
            if &p % 4 != BigInt::from(0) {
                return Err(k3_lattice::Error::Precondition(format!("pairing {p}/4 is not integral")));
            }
            row.push(p / 4);
        }
        rows.push(row);
    }
    IntMatrix::from_rows(&rows)
}

fn load_involution(path: &Path) -> Result<LatticeInvolution, CliError> {
    let d: doc::InvolutionDoc = load(path)?;
    let l = d.lattice.lattice().map_err(invalid(path))?;
    LatticeInvolution::new(l, d.matrix.to_int_matrix()).map_err(invalid(path))
}

fn load_monodromy(path: &Path) -> Result<MonodromyMatrix, CliError> {
    let d: doc::MonodromyDoc = load(path)?;
    MonodromyMatrix::new(d.matrix.to_int_matrix()).map_err(invalid(path))
}

pub fn run(dir: &Path) -> Result<Vec<Claim>, CliError> {
    let pix = load_lattice(&dir.join("pix.json"))?;
    let piy = load_lattice(&dir.join("piy.json"))?;
    let fsigma = load_lattice(&dir.join("fsigma.json"))?;
    let ex14 = load_lattice(&dir.join("ex14.json"))?;
    let twosummand = load_lattice(&dir.join("twosummand.json"))?;
    let swap_u = load_involution(&dir.join("swap_u.json"))?;
    let neg_u = load_involution(&dir.join("neg_u.json"))?;
    let identity = load_monodromy(&dir.join("identity.json"))?;
    let rot4 = load_monodromy(&dir.join("rot4.json"))?;
    let unip2 = load_monodromy(&dir.join("unip2.json"))?;
    let unip3 = load_monodromy(&dir.join("unip3.json"))?;

    let mut s = Suite(Vec::new());

    // Discriminant 145 pair.
    s.check(
        "discriminant-145",
        "ΠX and ΠY both have discriminant 145",
        "-145, -145",
        Ok(join([pix.determinant(), piy.determinant()])),
    );
    s.check("same-genus", "ΠX and ΠY are p-adically equivalent", "true", Ok(genus_equal(&pix, &piy)));
    s.check("not-isometric", "ΠX and ΠY are not equivalent over ℤ", "false", binary_equivalent(&pix, &piy));
    s.check(
        "pix-minus-two",
        "(2f−C)² = (25C−2f)² = −2 in ΠX",
        "-2, -2",
        pix.evaluate(&big(&[-1, 2])).and_then(|a| Ok(join([a, pix.evaluate(&big(&[25, -2]))?]))),
    );
    s.check(
        "pix-represents",
        "ΠX represents −2",
        "true",
        represents(&pix, &BigInt::from(-2)).map(|w| w.is_some()),
    );
    s.check(
        "piy-not-represents",
        "ΠY fails to represent −2",
        "false",
        represents(&piy, &BigInt::from(-2)).map(|w| w.is_some()),
    );
    let moduli_x = half_gram(&pix, &[vec![4, 0], vec![1, 1]]);
    s.check(
        "moduli-x-gram",
        "2C and (C+f)/2 span [[8,15],[15,10]]",
        "[[8, 15], [15, 10]]",
        moduli_x.as_ref().map(show).map_err(Clone::clone),
    );
    s.check(
        "moduli-x-is-piy",
        "Pic M(2,C+f,10)(X) ≃ ΠY",
        "true",
        moduli_x.and_then(|g| binary_equivalent(&IntegralLattice::new(g, None)?, &piy)),
    );
    let moduli_y = half_gram(&piy, &[vec![1, 0], vec![0, 4]]);
    s.check(
        "moduli-y-gram",
        "D/2 and 2g span [[2,15],[15,40]]",
        "[[2, 15], [15, 40]]",
        moduli_y.as_ref().map(show).map_err(Clone::clone),
    );
    s.check(
        "moduli-y-is-pix",
        "Pic M(2,D,2)(Y) ≃ ΠX",
        "true",
        moduli_y.and_then(|g| binary_equivalent(&IntegralLattice::new(g, None)?, &pix)),
    );
    let mx = AlgebraicMukaiLattice::new(pix.clone());
    let my = AlgebraicMukaiLattice::new(piy.clone());
    s.check(
        "mukai-x-isotropic",
        "(2, C+f, 10) is isotropic",
        "true",
        mukai::is_isotropic(&mx, &MukaiVector::from_i64(2, &[1, 1], 10)),
    );
    s.check(
        "mukai-y-isotropic",
        "(2, D, 2) is isotropic",
        "true",
        mukai::is_isotropic(&my, &MukaiVector::from_i64(2, &[1, 0], 2)),
    );

    // Chern numbers and partner counts.
    s.check(
        "c2-degree-12",
        "c₂(E) = 5 for v = (2, h, 3), h² = 12",
        "5",
        IntegralLattice::rank_one(12).and_then(|l| {
            mukai::c2_from_mukai(&AlgebraicMukaiLattice::new(l), &MukaiVector::from_i64(2, &[1], 3))
        }),
    );
    s.check("ex14-h-square", "h = 2g − C has h² = 14", "14", ex14.evaluate(&big(&[2, -1])));
    s.check(
        "c2-degree-14",
        "c₂(E) = 5 for v = (2, h, 4), h² = 14",
        "5",
        mukai::c2_from_mukai(&AlgebraicMukaiLattice::new(ex14.clone()), &MukaiVector::from_i64(2, &[2, -1], 4)),
    );
    s.check(
        "c2-tangent",
        "c₂(T_X) = 24",
        "24",
        mukai::c2_from_mukai(&AlgebraicMukaiLattice::new(fsigma.clone()), &MukaiVector::from_i64(2, &[0, 0], -22)),
    );
    s.check(
        "fm-degree-12",
        "degree twelve is the first with several partners",
        "1, 1, 1, 1, 1, 2",
        (1..=6).map(|n| mukai::fm_partner_count(&BigInt::from(n))).collect::<k3_lattice::Result<Vec<_>>>().map(join),
    );

    // Real K3 surfaces.
    let nikulin = |r, a, delta| real_k3::topological_type(&RealInvariants { r, a, delta });
    s.check("nikulin-empty", "(10, 10, 0) gives the empty real locus", "∅", nikulin(10, 10, 0));
    s.check("nikulin-two-tori", "(10, 8, 0) gives two tori", "T₁ ⊔ T₁", nikulin(10, 8, 0));
    s.check("involution-swap-u", "swapping the basis of U gives (1, 1, 1)", "(1, 1, 1)", real_k3::real_invariants(&swap_u));
    s.check("involution-neg-u", "−1 on U gives (2, 0, 0)", "(2, 0, 0)", real_k3::real_invariants(&neg_u));
    s.check(
        "involution-mukai",
        "extending by −1 on the Mukai plane keeps δ",
        "1, 0",
        real_k3::extend_to_mukai(&swap_u)
            .and_then(|a| real_k3::extend_to_mukai(&neg_u).map(|b| (a, b)))
            .and_then(|(a, b)| Ok(join([real_k3::real_invariants(&a)?.delta, real_k3::real_invariants(&b)?.delta]))),
    );

    // Degenerations.
    let trivial = MonodromyMatrix::new(IntMatrix::identity(22))?;
    s.check(
        "acampo-trivial",
        "trivial monodromy on H²: χ = 2 + trace(T) = 24",
        "24",
        monodromy::acampo_test(&trivial).map(|v| match v {
            AcampoVerdict::SectionExists { euler } => euler.to_string(),
            AcampoVerdict::Inconclusive => "inconclusive".into(),
        }),
    );
    let fixtures = [&identity, &rot4, &unip2, &unip3];
    s.check(
        "quasi-unipotency",
        "(e, f) of identity, rotation, 2×2 and 3×3 unipotents",
        "(1, 1), (4, 1), (1, 2), (1, 3)",
        fixtures
            .iter()
            .map(|t| monodromy::quasi_unipotency(t).map(|(e, f)| format!("({e}, {f})")))
            .collect::<k3_lattice::Result<Vec<_>>>()
            .map(join),
    );
    s.check(
        "kulikov-types",
        "f = 1, 2, 3 give Kulikov types I, II, III",
        "I, II, III",
        [&identity, &unip2, &unip3]
            .iter()
            .map(|t| monodromy::kulikov_type(t))
            .collect::<k3_lattice::Result<Vec<_>>>()
            .map(join),
    );
    s.check(
        "primitive-log",
        "log [[1,2],[0,1]] = 2·[[0,1],[0,0]]",
        "2, [[0, 1], [0, 0]]",
        monodromy::primitive_log(&unip2).map(|(m, n)| format!("{m}, {}", show(&n))),
    );

    // Jacobian elliptic K3 surfaces.
    let elliptic = AlgebraicMukaiLattice::new(fsigma);
    s.check(
        "twosummand-lattice",
        "the algebraic Mukai lattice of ⟨f, Σ⟩",
        "true",
        Ok(elliptic.full_lattice().gram() == twosummand.gram()),
    );
    let quadruples: [[i64; 4]; 4] = [[0, 1, 1, 0], [1, 1, 2, 1], [2, 1, 5, 2], [-3, 2, -7, 5]];
    s.check(
        "jacobian-images",
        "images of (1,0,0) and (0,0,1) are isotropic and pair to −1",
        "0, 0, -1; 0, 0, -1; 0, 0, -1; 0, 0, -1",
        quadruples
            .iter()
            .map(|q| {
                let [a, b, c, d] = q.map(BigInt::from);
                let (v, w) = mukai::jacobian_action_images(&a, &b, &c, &d)?;
                let (v, w) = (v.coordinates(), w.coordinates());
                Ok(join([twosummand.evaluate(&v)?, twosummand.evaluate(&w)?, twosummand.pairing(&v, &w)?]))
            })
            .collect::<k3_lattice::Result<Vec<_>>>()
            .map(|v| v.join("; ")),
    );

    Ok(s.0)
}
