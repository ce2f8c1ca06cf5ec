pub mod executive;
pub mod geometry;
pub mod kitchen;
pub mod library;
pub mod network;
pub mod par;
pub mod particles;
pub mod planner;
pub mod pmpnbp;
pub mod samplers;
pub mod scene;
pub mod schema;
pub mod sexpr;
