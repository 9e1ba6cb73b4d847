//! Solving 2-CNF formulas through the implication graph.

use matchcut::twosat::{solve_2sat, Lit, TwoSatInstance, TwoSatOutcome};

fn main() -> matchcut::Result<()> {
    // x0 xor x1, x1 -> x2, not x2 or not x0
    let mut inst = TwoSatInstance::new(3);
    inst.add_clause(Lit::pos(0), Lit::pos(1))?;
    inst.add_clause(Lit::neg(0), Lit::neg(1))?;
    inst.add_clause(Lit::neg(1), Lit::pos(2))?;
    inst.add_clause(Lit::neg(2), Lit::neg(0))?;
    match solve_2sat(&inst) {
        TwoSatOutcome::Sat(a) => println!("sat, true variables {:?}", a.true_vars()),
        TwoSatOutcome::Unsat { var } => println!("unsat, v{var} and its negation are equivalent"),
    }

    inst.add_unit(Lit::pos(0))?;
    inst.add_unit(Lit::pos(1))?;
    println!("with units x0, x1: sat = {}", solve_2sat(&inst).is_sat());
    Ok(())
}
