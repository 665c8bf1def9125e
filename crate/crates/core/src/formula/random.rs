//! Seeded random formula generation for sampled test suites.

use rand::Rng;

use super::Formula;

/// A random formula over `vars` whose depth does not exceed `max_depth`.
///
/// Every connective, both constants and every variable can occur.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, vars: &[&str], max_depth: usize) -> Formula {
    if max_depth == 0 || rng.gen_ratio(1, 4) {
        return random_atom(rng, vars);
    }
    let d = max_depth - 1;
    match rng.gen_range(0..8) {
        0 => random_formula(rng, vars, d).not(),
        1 => random_formula(rng, vars, d).boxed(),
        2 => random_formula(rng, vars, d).diamond(),
        3 => random_formula(rng, vars, d).and(random_formula(rng, vars, d)),
        4 => random_formula(rng, vars, d).or(random_formula(rng, vars, d)),
        5 => random_formula(rng, vars, d).implies(random_formula(rng, vars, d)),
        6 => random_formula(rng, vars, d).iff(random_formula(rng, vars, d)),
        _ => random_atom(rng, vars),
    }
}

fn random_atom<R: Rng + ?Sized>(rng: &mut R, vars: &[&str]) -> Formula {
    if vars.is_empty() || rng.gen_ratio(1, 8) {
        Formula::Const(rng.gen())
    } else {
        Formula::var(vars[rng.gen_range(0..vars.len())])
    }
}
