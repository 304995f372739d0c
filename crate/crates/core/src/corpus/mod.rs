//! The example corpus: input language, family generators, apolar ideals and
//! the end-to-end verification run.

mod families;

pub use families::{
    gen_ci_family, gen_extrasymmetric, gen_generic_minors, gen_sally, gen_small_pair, generic_matrix, sally_ideal, sylvester_identity,
    CiFamily, Extrasymmetric, FChoice, Family, EXTRASYMMETRIC_VARS,
};

mod apolar;

pub use apolar::{apolar_annihilator, random_form};

mod parse;

pub use parse::{parse_field, parse_input, parse_polynomial, parse_polynomial_list, InputDocument, DEFAULT_PRIME};

mod verify;

pub use verify::{
    apolar_cubic, example_names, pure_apolar_table, run_corpus_verification, run_selected, sally_units, verify_family,
    Check, CorpusConfig, ExampleReport, RunReport, DEFAULT_SEED,
};
