pub mod lemmas;
