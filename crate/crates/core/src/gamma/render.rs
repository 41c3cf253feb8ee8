use serde::{Deserialize, Serialize};

use super::{GammaElement, GammaError};
use crate::linalg::Matrix;
use crate::polyalg::{parse_rational, Label, PolyError};

/// Machine-readable form of an element: every value is the canonical text
/// rendering of a rational function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaDump {
    pub kind: String,
    pub labels: Vec<String>,
    pub omega: String,
    pub entries: Vec<Vec<String>>,
}

impl GammaElement {
    /// Bordered array: `ω | x_… ` header, then one `y_l | …` row per label.
    pub fn render(&self) -> String {
        let mut cells: Vec<Vec<String>> = Vec::with_capacity(self.len() + 1);
        let mut head = vec![self.omega().to_string()];
        head.extend(self.labels().iter().map(|l| format!("x_{l}")));
        cells.push(head);
        for (i, l) in self.labels().iter().enumerate() {
            let mut row = vec![format!("y_{l}")];
            row.extend(self.matrix().row(i).iter().map(|e| e.to_string()));
            cells.push(row);
        }
        let ncols = self.len() + 1;
        let widths: Vec<usize> = (0..ncols)
            .map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for r in &cells {
            let mut line = format!("{:<w$} |", r[0], w = widths[0]);
            for j in 1..ncols {
                line.push_str(&format!(" {:<w$}", r[j], w = widths[j]));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    pub fn dump(&self) -> GammaDump {
        GammaDump {
            kind: "gamma".into(),
            labels: self.labels().iter().map(|l| l.to_string()).collect(),
            omega: self.omega().to_string(),
            entries: (0..self.len())
                .map(|i| self.matrix().row(i).iter().map(|e| e.to_string()).collect())
                .collect(),
        }
    }

    pub fn from_dump(d: &GammaDump) -> Result<GammaElement, GammaError> {
        let labels = d
            .labels
            .iter()
            .map(|s| Label::new(s))
            .collect::<Result<Vec<_>, PolyError>>()?;
        let rows = d
            .entries
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        if rows.len() != labels.len() || rows.iter().any(|r| r.len() != labels.len()) {
            return Err(GammaError::SpecMismatch("dump entries do not match labels".into()));
        }
        let m = if labels.is_empty() {
            Matrix::zeros(0, 0)
        } else {
            Matrix::from_rows(rows)
        };
        GammaElement::new(labels, parse_rational(&d.omega)?, m)
    }
}
