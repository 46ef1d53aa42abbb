pub mod cli;
pub mod coeffring;
pub mod expr;
pub mod fockoracle;
pub mod reduction;
pub mod screening;
pub mod superlie;
pub mod vertexcore;
