pub mod boxcat;
pub mod builtin;
pub mod cubeset;
pub mod error;
pub mod necklace;
pub mod pathcat;
pub mod limits;
pub mod posets;
pub mod rigidify;
pub mod sset;
pub mod verify;
pub mod vertex;

pub use error::{Error, Result};
pub use vertex::Vertex;
