pub mod classify;
pub mod complement;
pub mod export;
pub mod geom;
pub mod mesh;
pub mod oracle;
pub mod pipeline;
pub mod reeb;
pub mod simplify;
