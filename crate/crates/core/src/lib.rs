//! Rank-metric codes over `F_{q^m}`, GPT-family public-key schemes and the
//! structural attacks that recover their private decoders.

#![no_std]

extern crate alloc;

pub mod attacks;
mod base;
mod crypto;
mod error;
mod field;
mod fq;
mod gabidulin;
mod matrix;
mod poly;
mod rank;

pub use base::BaseMatrix;
pub use crypto::{
    decrypt, encrypt, encrypt_with_rank, ggpt_keygen, gpt_keygen, gpt_keygen_moore_distortion,
    gpt_keygen_with_distortion, loidreau_ell, sa_example_key, sample_colrank_matrix, sample_low_rank_matrix,
    sample_rank_vector, t_prime, Ciphertext, GgptVariant, PrivateKey, PublicKey, Scheme,
};
pub use error::{Error, Result};
pub use field::{Fe, Field};
pub use gabidulin::{
    decode_arbitrary, decode_exhaustive, min_rank_distance_exhaustive, recover_canonical, GabidulinCode,
    RecoveredDecoder,
};
pub use matrix::{
    expand_vector, intersect_rowspaces, solve_base_linear, sum_rowspaces, AffineSolution, ExtMatrix, RowSpace,
};
pub use rank::{
    frobenius_shift, frobenius_sum_space, grassmann_support, moore, moore_decompose_first_row, rank_distance,
    rank_one_span, rank_weight, GrassmannSupport, MooreDecomposition,
};
