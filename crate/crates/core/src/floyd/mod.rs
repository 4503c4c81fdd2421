//! Floyd functions, certified tail sums and the Floyd metric on the
//! compactified tree.

mod enclosure;
mod function;
mod metric;
mod reconstruct;
mod sum;

pub use enclosure::Enclosure;
pub use function::{
    comparability, eta_inf, is_lipschitz_compactification, Comparison, EtaInf, EtaWitness,
    FloydFunction, Tail,
};
pub use metric::{floyd_distance, radial, FloydMetric, MetricSpec};
pub use reconstruct::{reconstruct_floyd, EdgeLengthAssignment};
pub use sum::{tail_sum, tail_sum_with, SumMode, TERM_BUDGET};
