//! Punctured simplex codes with (2, delta) locality over GF(q).

pub mod certify;
pub mod code;
pub mod constructions;
pub mod field;
pub mod geometry;
pub mod krawtchouk;
pub mod matrix_file;
pub mod report;
pub mod sweep;
