//! The tetrahedron JSON format: `{"vertices": [[x, y, z], ... ×4]}`.

use altitude_core::{Tetrahedron, Vec3};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TetraFile {
    vertices: [[f64; 3]; 4],
}

/// Reads a tetrahedron; vertex order in the file is vertex index order.
pub fn parse_tetrahedron(text: &str) -> Result<Tetrahedron, CliError> {
    let file: TetraFile = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    if file.vertices.iter().flatten().any(|c| !c.is_finite()) {
        return Err(CliError::Parse("vertex coordinates must be finite".into()));
    }
    Ok(Tetrahedron::new(file.vertices.map(Vec3::from_array))?)
}

/// Writes the vertices in the same format. Floats are printed in shortest
/// round-trip form, so parsing the output gives back identical bits.
pub fn serialize_tetrahedron(t: &Tetrahedron) -> String {
    let file = TetraFile {
        vertices: t.vertices().map(|v| v.to_array()),
    };
    serde_json::to_string(&file).expect("finite floats always serialize")
}
