//! Count tables, the Q map, the contractions ◊ and ¤, and the gluing checks.

mod checks;
mod element;
mod ops;

pub use checks::{check_cycle, check_gluing, check_self_gluing, check_table, compose_keys};
pub use element::{CountTable, SlotKey, TensorElement, Term};
pub use ops::{
    act_permutation, box_ij, diamond, differential, element_from_chain, element_to_chain, q_of_table, q_sign,
    slot_complex,
};
