pub mod field;
pub mod linalg;
pub mod modal;
pub mod composite;
pub mod nonclassical;
pub mod protocols;
pub mod registry;
