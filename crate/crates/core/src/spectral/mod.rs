//! Index bookkeeping and page assembly for the spectral sequences of the
//! knot-space discriminant.

pub mod assemble;
pub mod aux;
pub mod engine;
pub mod facts;
pub mod formulas;
pub mod symbols;
pub mod table;
pub mod value;

pub use assemble::{assemble, discrepancies, main_page, Mode};
pub use aux::{aux_e1, collapse_aux, Collapse, Inputs};
pub use facts::{Consumed, Facts, GeometricFact};
pub use formulas::Affine;
pub use symbols::{symbols_for, SymbolA};
pub use table::{Annotation, Entry, SSTable};
pub use value::Value;

use crate::cells::CellError;

#[derive(Debug, thiserror::Error)]
pub enum SpectralError {
    #[error("block {block} needs {input}")]
    MissingInput { block: String, input: String },
    #[error("block {block}: exact sequence leaves {details:?}")]
    Ambiguous { block: String, details: Vec<String> },
    #[error("differentials not determined: {0:?}")]
    Undetermined(Vec<String>),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Cell(#[from] CellError),
    #[error(transparent)]
    Engine(#[from] engine::EngineError),
}
