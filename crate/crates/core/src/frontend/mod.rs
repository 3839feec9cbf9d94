//! Program text to validated AST: tokenizer, parser, signature inference,
//! printing and JSON dumping.

pub mod json;
pub mod lexer;
pub mod parser;
pub mod pretty;
pub mod signatures;

pub use json::program_to_json;
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::{parse_program, parse_query};
pub use pretty::{canonical_program, program_to_string, Printer};
pub use signatures::{continuous_vars, infer_signatures};
