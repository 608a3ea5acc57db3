//! 3-CNF formulas, DIMACS I/O, brute-force oracles and the final-stage
//! truth assignment (random rounding and its derandomization).

mod assignment;
mod cnf;
mod completion;
pub mod generate;
mod oracle;

pub use assignment::{point_to_assignment, Assignment, AssignmentError, Truth};
pub use cnf::{emit_dimacs, parse_dimacs, Clause, CnfError, CnfFormula, DimacsError, Literal};
pub use completion::{derandomize_completion, expected_satisfied, randomized_completion};
pub use oracle::{
    brute_force_max_sat, brute_force_sat, clause_satisfied, count_satisfied, OracleError, SatResult, UndecidedPolicy,
    DEFAULT_SAT_LIMIT,
};
