//! Reproduction of the reference data: one pass/fail item per artefact.

use bsforge_core::arith::{MPoly, Mat, Rat, Scalar};
use bsforge_core::descent::{
    bs_smooth_model, check_splitting, closed_form_matrix, closed_form_phi, companion_matrix, lift_cocycle,
    sample_points, vanishes_on_rational, CyclicAlgebraInput, SmoothOptions, Solver,
};
use bsforge_core::golden::GoldenData;
use bsforge_core::numfield::make_cyclic_field;
use bsforge_core::veronese::{iota, monomial_basis, veronese_ideal};
use bsforge_core::Result;
use serde_json::{json, Value};

/// Number of sampled points for the vanishing check.
pub const SAMPLE_COUNT: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Item {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub seed: u64,
    pub items: Vec<Item>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.ok)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for i in &self.items {
            let verdict = if i.ok { "PASS" } else { "FAIL" };
            if i.detail.is_empty() {
                s += &format!("{verdict} {}\n", i.name);
            } else {
                s += &format!("{verdict} {}: {}\n", i.name, i.detail);
            }
        }
        s
    }

    pub fn to_json(&self) -> Value {
        let items: Vec<Value> =
            self.items.iter().map(|i| json!({"name": i.name, "ok": i.ok, "detail": i.detail})).collect();
        json!({"seed": self.seed, "passed": self.passed(), "items": items})
    }
}

fn item(name: &'static str, outcome: Result<std::result::Result<String, String>>) -> Item {
    match outcome {
        Ok(Ok(detail)) => Item { name, ok: true, detail },
        Ok(Err(detail)) => Item { name, ok: false, detail },
        Err(e) => Item { name, ok: false, detail: format!("error[{}]: {e}", e.code()) },
    }
}

type Verdict = Result<std::result::Result<String, String>>;

fn compare_matrices<C: Scalar + std::fmt::Display>(
    expected: &Mat<C>,
    computed: &Mat<C>,
) -> std::result::Result<String, String> {
    if (expected.nrows(), expected.ncols()) != (computed.nrows(), computed.ncols()) {
        return Err(format!(
            "shape: expected {}x{}, computed {}x{}",
            expected.nrows(),
            expected.ncols(),
            computed.nrows(),
            computed.ncols()
        ));
    }
    for i in 0..expected.nrows() {
        for j in 0..expected.ncols() {
            if expected.get(i, j) != computed.get(i, j) {
                return Err(format!(
                    "entry ({i},{j}): expected {}, computed {}",
                    expected.get(i, j),
                    computed.get(i, j)
                ));
            }
        }
    }
    Ok(String::new())
}

fn compare_sets(expected: &[MPoly<Rat>], computed: &[MPoly<Rat>]) -> std::result::Result<String, String> {
    let missing: Vec<&MPoly<Rat>> = expected.iter().filter(|e| !computed.contains(e)).collect();
    let extra: Vec<&MPoly<Rat>> = computed.iter().filter(|e| !expected.contains(e)).collect();
    match (missing.first(), extra.first()) {
        (None, None) if expected.len() == computed.len() => Ok(format!("{} equations", computed.len())),
        (None, None) => Err(format!("expected {} equations, computed {}", expected.len(), computed.len())),
        (m, x) => Err(format!(
            "{} missing (first: {}), {} unexpected (first: {})",
            missing.len(),
            m.map_or("-".into(), |p| p.to_text("w")),
            extra.len(),
            x.map_or("-".into(), |p| p.to_text("w")),
        )),
    }
}

/// Runs every item against `golden`; `seed` only affects sampling.
pub fn run(golden: &GoldenData, seed: u64) -> Report {
    let setup = (|| -> Result<_> {
        let field = make_cyclic_field(&golden.poly()?)?;
        let alpha = golden.alpha()?;
        let input = CyclicAlgebraInput::new(field.clone(), alpha.clone())?;
        Ok((field, alpha, input))
    })();
    let (field, alpha, input) = match setup {
        Ok(s) => s,
        Err(e) => return Report { seed, items: vec![item("setup", Err(e))] },
    };
    let mut items = Vec::new();

    items.push(item(
        "discriminant",
        (|| -> Verdict {
            let expected = golden.discriminant()?;
            let computed = field.discriminant();
            Ok(if &expected == computed {
                Ok(format!("{computed}"))
            } else {
                Err(format!("expected {expected}, computed {computed}"))
            })
        })(),
    ));

    items.push(item(
        "mobius",
        (|| -> Verdict {
            let expected = golden.mobius()?;
            let computed: Vec<Rat> = field.mobius().map(|m| m.as_rats().to_vec()).unwrap_or_default();
            let show = |v: &[Rat]| v.iter().map(Rat::to_string).collect::<Vec<_>>().join(", ");
            Ok(if expected == computed {
                Ok(format!("({})", show(&computed)))
            } else {
                Err(format!("expected ({}), computed ({})", show(&expected), show(&computed)))
            })
        })(),
    ));

    for n in [1usize, 2] {
        let name = if n == 1 { "veronese_n1" } else { "veronese_n2" };
        items.push(item(
            name,
            (|| -> Verdict {
                let computed = veronese_ideal(&monomial_basis(n)?).equations;
                Ok(compare_sets(&golden.veronese(n)?, &computed))
            })(),
        ));
    }

    items.push(item(
        "iota",
        (|| -> Verdict {
            let a = companion_matrix(field.degree(), &alpha)?;
            let computed = iota(&monomial_basis(field.degree() - 1)?, &a)?;
            Ok(compare_matrices(&golden.iota()?, &computed))
        })(),
    ));

    items.push(item(
        "phi",
        (|| -> Verdict { Ok(compare_matrices(&golden.phi(&field, &alpha)?, &closed_form_matrix(&input)?)) })(),
    ));

    items.push(item(
        "phi_splits",
        (|| -> Verdict {
            Ok(match closed_form_phi(&input) {
                Ok(s) => {
                    let c = check_splitting(&lift_cocycle(&input)?, &s);
                    if c.ok {
                        Ok(String::new())
                    } else {
                        Err(format!("cocycle condition fails at σ^{}", c.counterexample.unwrap_or(0)))
                    }
                }
                Err(e) => Err(format!("error[{}]: {e}", e.code())),
            })
        })(),
    ));

    let opts = SmoothOptions { solver: Solver::Closed, seed, sample_count: SAMPLE_COUNT, reduce: false };
    let pipeline = bs_smooth_model(&input, &opts);
    items.push(item(
        "pipeline",
        match &pipeline {
            Ok(bs) => Ok(Ok(format!(
                "{} rational equations vanish on {} points{}",
                bs.rational_equations.len(),
                bs.validation.points,
                if bs.closed_form_fallback { " (closed form singular, averaged φ used)" } else { "" }
            ))),
            Err(e) => Err(e.clone()),
        },
    ));

    items.push(item(
        "families_vanish",
        (|| -> Verdict {
            let bs = match &pipeline {
                Ok(bs) => bs,
                Err(e) => return Err(e.clone()),
            };
            let families: Vec<MPoly<Rat>> = golden.families()?.into_iter().flatten().collect();
            let points = sample_points(&bs.space, &bs.phi, SAMPLE_COUNT, seed)?;
            let failing: Vec<usize> =
                (0..families.len()).filter(|&k| !vanishes_on_rational(&families[k..=k], &points)).collect();
            Ok(if failing.is_empty() {
                Ok(format!("{} polynomials vanish on {} points", families.len(), points.len()))
            } else {
                Err(format!(
                    "{} of {} reference polynomials do not vanish on the sampled points (first: family {}, slice t^{})",
                    failing.len(),
                    families.len(),
                    failing[0] / 3 + 1,
                    2 - failing[0] % 3
                ))
            })
        })(),
    ));

    Report { seed, items }
}
