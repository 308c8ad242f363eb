pub mod cases;
pub mod contraction;
pub mod error;
pub mod fixedpoint;
pub mod generators;
pub mod hyperspace;
pub mod maps;
pub mod numeric;
pub mod parse;
pub mod report;
pub mod setalg;
pub mod topology;
pub mod verdict;
