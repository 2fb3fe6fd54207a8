//! Graphviz output.

use std::fmt::Write as _;
use std::path::Path;

use crate::constructions::{BlowupGraph, EdgeLabel, PastedGraph};
use crate::error::Result;
use crate::graphcore::Graph;
use crate::kuhn_osthus::EdgeLayering;

pub trait ToDot {
    fn to_dot(&self) -> String;
}

fn render(g: &Graph, attrs: impl Fn(usize) -> Option<String>) -> String {
    let mut s = String::from("graph G {\n");
    for v in 0..g.n() {
        writeln!(s, "  {v};").unwrap();
    }
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        match attrs(i) {
            Some(a) => writeln!(s, "  {u} -- {v} [{a}];").unwrap(),
            None => writeln!(s, "  {u} -- {v};").unwrap(),
        }
    }
    s.push_str("}\n");
    s
}

impl ToDot for Graph {
    fn to_dot(&self) -> String {
        render(self, |_| None)
    }
}

impl ToDot for PastedGraph {
    fn to_dot(&self) -> String {
        render(&self.graph, |i| match self.labels[i] {
            EdgeLabel::Fat => Some("style=bold".into()),
            EdgeLabel::Thin => None,
            EdgeLabel::Base => Some("color=black".into()),
            EdgeLabel::Mirror => Some("color=gray40".into()),
            EdgeLabel::Connector => Some("style=dashed".into()),
        })
    }
}

impl ToDot for BlowupGraph {
    fn to_dot(&self) -> String {
        render(&self.graph, |_| None)
    }
}

impl ToDot for EdgeLayering {
    fn to_dot(&self) -> String {
        render(self.graph().graph(), |i| {
            Some(format!("label=\"L{}\"", self.layer_of(i)))
        })
    }
}

pub fn export_dot(object: &impl ToDot, path: &Path) -> Result<()> {
    std::fs::write(path, object.to_dot())?;
    Ok(())
}
