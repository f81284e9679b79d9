//! Exact integer and rational arithmetic.

pub mod arith;
pub mod cyclotomic;
pub mod exact;
pub mod partitions;

pub use arith::{
    divisors, euler_phi, factorize, gcd, is_prime, lcm, mobius, mod_inverse, multiplicative_order,
    pow_mod, prime_power, primes_up_to, primitive_root, split_p_part, Factorization,
};
pub use cyclotomic::{
    cyclotomic_u64, cyclotomic_value, is_primitive_prime_divisor, twisted_cyclotomic, Sign,
    TwistKind,
};
pub use exact::{
    cmp_threshold, compare_exprs, Comparison, Enclosure, Expr, Rational, RootExponent, Verdict,
};
pub use partitions::{odd_partition_count, partition_count};
