//! Dyck paths of bounded height that avoid valleys at height `h - 1`, their
//! images among 312-avoiding permutations, and the generating trees,
//! production matrices and rational generating functions that count them.
//!
//! The counting code is generic over [`Scalar`]; the aliases below fix it to
//! [`BigInt`], which is what the command-line tool uses.

pub mod bijection;
pub mod dyck;
pub mod eco;
pub mod genfunc;
pub mod perm;
pub mod poly;
pub mod prodmat;
pub mod scalar;
pub mod verify;

pub use num_bigint::BigInt;

pub use bijection::{lrm_heights, path_to_perm, perm_to_path, BijectionError};
pub use dyck::{count_brute, enumerate_dyck, parse_path, CapExceeded, DyckPath, PathError, Step, ValleyOccurrence};
pub use eco::{
    generate_level, generate_level_perms, label_of, omega, omega2, symbolic_counts, symbolic_totals, theta, theta_perm, EcoError,
    Label, SuccessionRule, TreeNode,
};
pub use genfunc::{a_coeff, catalan_identity, count_recurrence, count_sequence, gf, q_poly, series, GfError};
pub use perm::{parse_perm, LrMaximum, PermError, Permutation};
pub use poly::IntPolynomial;
pub use prodmat::{build_block, build_from_rule, level_count, ProdMatError};
pub use scalar::{binomial, catalan, Scalar};

pub type BigPolynomial = IntPolynomial<BigInt>;
pub type BigRationalGF = genfunc::RationalGF<BigInt>;
pub type BigProductionMatrix = prodmat::ProductionMatrix<BigInt>;
pub type BigLevelVector = prodmat::LevelVector<BigInt>;

pub type Polynomial64 = IntPolynomial<i64>;
pub type ProductionMatrix64 = prodmat::ProductionMatrix<i64>;
