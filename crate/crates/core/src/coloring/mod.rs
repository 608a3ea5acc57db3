//! Fractional graph colouring: the greedy edge colourer, oracle
//! combinators, and the colouring decision from a Strong c-Partial answer.

mod brute;
mod decide;
mod graph;
mod greedy;
mod iterate;
mod result;

pub use brute::{chromatic_number, find_k_coloring, is_k_colorable, partial_three_coloring};
pub use decide::{cpartial_color_decide, ColorDecision, DecideError};
pub use graph::{Graph, GraphError};
pub use greedy::{greedy_fractional_color, greedy_with_trace, project_to_three_colors, shuffled_order};
pub use iterate::{iterate_vertex_oracle, subset_oracle, IterateError, IterationReport};
pub use result::ColoringResult;
