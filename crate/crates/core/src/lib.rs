pub mod linalg;
pub mod groups;
pub mod bar;
pub mod chern;
pub mod invariants;
pub mod ringmodel;
pub mod davis;
