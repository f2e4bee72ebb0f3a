//! Weight systems: tensor data over a graded-commutative ring, evaluated on
//! closed graphs, labelled graphs and diagrams on circles.

mod check;
mod contract;
mod data;
mod rep;
mod ring;

pub use check::{check_data, CheckLine, Report};
pub use contract::{
    eval_circle, eval_circle_graph, eval_closed, eval_closed_graph, eval_marked, eval_marked_graph, MarkedTensor,
};
pub use data::{Flavor, Matrix, WeightData};
pub use rep::CircleRep;
pub use ring::{Elem, Ring};
