//! Parser and canonical pretty-printer for signatures, diagrams, and proof
//! scripts. Whitespace-insensitive; declarations end with `;`, `;` also
//! separates slices inside a composite, juxtaposition is tensor, `=>` types
//! 2-generators, `[_,_]` is the internal hom and `1` the empty word.

mod lexer;
mod parser;
mod printer;

pub use lexer::{LexError, SourceSpan, Token, TokenKind};
pub use parser::{
    parse_cell_text, parse_diagram, parse_script, parse_signature, DiagItem, DiagramFile,
    ParseError,
};
pub use printer::{
    print_binding, print_diagram, print_metaval, print_move, print_onecell, print_schema_uses,
    print_script, print_signature, print_slice, print_step, print_twocell, print_word,
};
