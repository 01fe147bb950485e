//! Seeded random instances for property tests and the acceptance harness.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{build_algebra, AlgebraSpec, GradedAlgebra};
use crate::error::{Error, Result};
use crate::extension::{build_dual_extension, valid_g_space, ExtensionTriple};
use crate::field::Field;
use crate::poly::{monomials_of_degree, DividedPolynomial, Polynomial, VariableTable};

const NAMES: [&str; 6] = ["x", "y", "z", "w", "u", "v"];
const RETRIES: usize = 64;

fn table(n: usize) -> Arc<VariableTable> {
    Arc::new(VariableTable::standard(&NAMES[..n]).expect("distinct names"))
}

/// A homogeneous dual generator in `1..=max_vars` variables of degree
/// `1..=max_degree` with a few small integer terms.
pub fn random_dual_generator<R: Rng + ?Sized>(
    rng: &mut R,
    field: Field,
    max_vars: usize,
    max_degree: u32,
) -> DividedPolynomial {
    let n = rng.gen_range(1..=max_vars.clamp(1, NAMES.len()));
    let j = rng.gen_range(1..=max_degree.max(1));
    let t = table(n);
    let mut mons = monomials_of_degree(&t, j);
    mons.shuffle(rng);
    let k = rng.gen_range(1..=mons.len().min(6));
    let terms = mons.into_iter().take(k).map(|m| {
        let c = loop {
            let c = field.random_small(rng, 5);
            if !c.is_zero() {
                break c;
            }
        };
        (m, c)
    });
    DividedPolynomial::from_terms(t, field, terms)
}

pub fn random_gorenstein<R: Rng + ?Sized>(
    rng: &mut R,
    field: Field,
    max_vars: usize,
    max_degree: u32,
) -> Result<GradedAlgebra> {
    build_algebra(AlgebraSpec::dual(random_dual_generator(rng, field, max_vars, max_degree)))
}

fn random_form<R: Rng + ?Sized>(rng: &mut R, t: &Arc<VariableTable>, field: Field, d: u32) -> Polynomial {
    let terms = monomials_of_degree(t, d)
        .into_iter()
        .map(|m| (m, field.random_small(rng, 5)));
    Polynomial::from_terms(t.clone(), field, terms)
}

/// A standard-graded Artinian quotient of `k[x,y]` with `h_1 = 2`: two forms
/// of degrees `2 <= d1 <= d2 <= max_degree`, sometimes a third.
pub fn random_height_two<R: Rng + ?Sized>(rng: &mut R, field: Field, max_degree: u32) -> Result<GradedAlgebra> {
    let t = table(2);
    let top = max_degree.max(2);
    for _ in 0..RETRIES {
        let d1 = rng.gen_range(2..=top);
        let d2 = rng.gen_range(d1..=top);
        let mut gens = vec![random_form(rng, &t, field, d1), random_form(rng, &t, field, d2)];
        if rng.gen_bool(0.5) {
            let d3 = rng.gen_range(d1..=top);
            gens.push(random_form(rng, &t, field, d3));
        }
        let cap = (d1 + d2) as usize + 2;
        match build_algebra(AlgebraSpec::ideal(t.clone(), field, gens).with_degree_cap(cap)) {
            Ok(a) => return Ok(a),
            Err(Error::NotArtinian { .. } | Error::InvalidArgument(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::InvalidArgument("no Artinian height-two sample found".into()))
}

/// A random free extension over a random Gorenstein fibre.
#[derive(Clone, Debug)]
pub struct RandomExtension {
    pub fibre: DividedPolynomial,
    pub m: u32,
    pub g: DividedPolynomial,
    pub triple: ExtensionTriple,
}

/// Fibre from [`random_dual_generator`], `m` in `1..=max_m`, and `G` a small
/// integer combination of a basis of the admissible space.
pub fn random_free_extension<R: Rng + ?Sized>(
    rng: &mut R,
    field: Field,
    max_vars: usize,
    max_degree: u32,
    max_m: u32,
) -> Result<RandomExtension> {
    let fibre = random_dual_generator(rng, field, max_vars, max_degree);
    let b = build_algebra(AlgebraSpec::dual(fibre.clone()))?;
    let m = rng.gen_range(1..=max_m.max(1));
    let mut g = DividedPolynomial::zero(b.table().clone(), field);
    for v in valid_g_space(&b, m)? {
        g = g.add(&v.scale(&field.random_small(rng, 2)))?;
    }
    let triple = build_dual_extension(&b, m, &g)?;
    Ok(RandomExtension { fibre, m, g, triple })
}
