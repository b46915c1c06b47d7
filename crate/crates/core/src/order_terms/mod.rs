//! Regular scattered linear orders as terms: syntax, end flags,
//! condensation, rank, canonical forms, isomorphism and completion.

pub mod canon;
pub mod cond;
pub mod parse;
pub mod rules;
pub mod term;

pub use canon::{
    canonicalize, complete_hull, derivative, derivative_chain, is_complete, iso_terms, rank,
    singleton_marks, Certificate, IsoVerdict,
};
pub use cond::{condense, expand_key, key_of, lift, Key, Word};
pub use parse::{parse_term, render_term, render_with, Parser};
pub use rules::{apply_at_root, apply_rule, redexes, Rule, ALL_RULES};
pub use term::{EndFlags, Label, Letter, OrderTerm, Term};

pub fn end_flags<A: Letter>(t: &Term<A>) -> EndFlags {
    t.end_flags()
}

pub fn drop_min<A: Letter>(t: &Term<A>) -> crate::Result<Term<A>> {
    t.drop_min()
}
