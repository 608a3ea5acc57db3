use super::point::{extract_point, VarietyPoint};
use super::solution::FractionalSolution;
use super::ExtractionError;
use crate::polyring::Field;
use crate::satcore::{count_satisfied, derandomize_completion, Assignment, CnfFormula, UndecidedPolicy};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineOutcome<F: Field> {
    pub point: VarietyPoint<F>,
    /// Assignment read off the point, before any completion.
    pub partial: Assignment,
    pub assignment: Assignment,
    pub satisfied: usize,
}

/// Turns a solved selection of an encoded formula into a truth assignment.
///
/// The basis ring must be the encoder's (`x_j` stands for `y_j`). With
/// `final_stage` off, undecided variables are set false; with it on they
/// are fixed by the method of conditional expectations.
pub fn assign_from_solution<F: Field>(
    phi: &CnfFormula,
    sol: &FractionalSolution<F>,
    final_stage: bool,
) -> Result<PipelineOutcome<F>, ExtractionError> {
    let basis = sol.basis.as_ref().ok_or(ExtractionError::MissingBasis)?;
    let n = basis.ring().num_vars();
    if n != phi.num_vars() {
        return Err(ExtractionError::VariableCount { ring: n, formula: phi.num_vars() });
    }
    let point = extract_point(basis)?;
    let var_map: Vec<usize> = (1..=n).collect();
    let partial = point.to_assignment(&var_map, n);
    let assignment = if final_stage { derandomize_completion(phi, &partial) } else { partial.filled(false) };
    let satisfied = count_satisfied(phi, &assignment, UndecidedPolicy::CountUnsat);
    Ok(PipelineOutcome { point, partial, assignment, satisfied })
}
