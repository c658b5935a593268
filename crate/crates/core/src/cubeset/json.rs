use serde::{Deserialize, Serialize};

use crate::boxcat::{BoxMap, NormalForm};
use crate::error::{Error, Result};

use super::{CubeElement, CubicalComplex};

#[derive(Serialize, Deserialize)]
struct FaceJson {
    dim: usize,
    cell: usize,
    /// Normal form of the epimorphism, `"id"` for nondegenerate faces.
    map: String,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertices: Vec<String>,
    /// `cells[k-1][x]` lists the `2k` faces of the `k`-cell `x`.
    cells: Vec<Vec<Vec<FaceJson>>>,
}

impl CubicalComplex {
    pub fn to_json(&self) -> serde_json::Value {
        let cells = (1..=self.dim())
            .map(|k| {
                (0..self.count(k))
                    .map(|x| {
                        self.face_records(k, x)
                            .iter()
                            .map(|e| FaceJson {
                                dim: e.dim,
                                cell: e.cell,
                                map: e.epi.normal_form().to_string(),
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        serde_json::to_value(ComplexJson {
            vertices: self.vertex_names().to_vec(),
            cells,
        })
        .expect("serialisable")
    }

    /// Parses and checks the face records; the face identities are left to
    /// [`validate`](Self::validate).
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: ComplexJson = serde_json::from_value(v.clone())?;
        let mut c = CubicalComplex::new();
        for name in j.vertices {
            c.add_vertex(name);
        }
        for (k1, layer) in j.cells.into_iter().enumerate() {
            let k = k1 + 1;
            for faces in layer {
                let faces = faces
                    .into_iter()
                    .map(|f| {
                        let nf = NormalForm::parse(&f.map)?;
                        let epi = BoxMap::from_normal_form(k - 1, nf)?;
                        if epi.dst_dim() != f.dim {
                            return Err(Error::DimensionMismatch(format!(
                                "face map {} lands in [1]^{}, record says {}",
                                f.map,
                                epi.dst_dim(),
                                f.dim
                            )));
                        }
                        Ok(CubeElement {
                            dim: f.dim,
                            cell: f.cell,
                            epi,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                c.add_cell(k, faces)?;
            }
        }
        Ok(c)
    }
}
