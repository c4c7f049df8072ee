//! Counting logic: sentences, templates, virtual profiles and the model checker.

pub mod formula;
pub mod model_check;
pub mod template;
pub mod virtual_profile;

pub use formula::{encode_pds, encode_pvc, eval_qf, parse_formula, parse_sentence, CountingSentence, QFFormula, Term};
pub use model_check::{count_in_graph, model_check, model_check_repeats, model_check_with, realizes, ModelCheckResult};
pub use template::{enumerate_templates, set_partitions, TemplateGraph};
pub use virtual_profile::{VirtualProfile, VirtualSolution};
