//! Algebra definition files bundled into the binary.

pub const CLASSICAL: &str = include_str!("../corpus/classical.alg");
pub const Q: &str = include_str!("../corpus/q.alg");
pub const PQ: &str = include_str!("../corpus/pq.alg");
pub const Q_SIGN_FLIPPED: &str = include_str!("../corpus/q_sign_flipped.alg");
pub const PQ_WRONG_EXCHANGE: &str = include_str!("../corpus/pq_wrong_exchange.alg");

/// `(file name, contents, expected to verify)`.
pub const ALL: [(&str, &str, bool); 5] = [
    ("classical.alg", CLASSICAL, true),
    ("q.alg", Q, true),
    ("pq.alg", PQ, true),
    ("q_sign_flipped.alg", Q_SIGN_FLIPPED, false),
    ("pq_wrong_exchange.alg", PQ_WRONG_EXCHANGE, false),
];
