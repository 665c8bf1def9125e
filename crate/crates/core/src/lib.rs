pub mod bisim;
pub mod construct;
pub mod control;
pub mod decide;
pub mod formula;
pub mod frame;
pub mod io;
pub mod model;
pub mod worldset;
