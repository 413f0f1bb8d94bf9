use num::BigInt;
use std::fmt;

/// A computed (co)homology group: a vector-space dimension over a field,
/// or free rank plus invariant factors over Z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbelianGroup {
    VectorSpace { field: String, dim: usize },
    ZModule { free_rank: usize, torsion: Vec<BigInt> },
}

impl AbelianGroup {
    pub fn is_zero(&self) -> bool {
        match self {
            AbelianGroup::VectorSpace { dim, .. } => *dim == 0,
            AbelianGroup::ZModule { free_rank, torsion } => *free_rank == 0 && torsion.is_empty(),
        }
    }

    /// Dimension over a field; free rank over Z.
    pub fn free_dim(&self) -> usize {
        match self {
            AbelianGroup::VectorSpace { dim, .. } => *dim,
            AbelianGroup::ZModule { free_rank, .. } => *free_rank,
        }
    }

    pub fn torsion(&self) -> &[BigInt] {
        match self {
            AbelianGroup::VectorSpace { .. } => &[],
            AbelianGroup::ZModule { torsion, .. } => torsion,
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbelianGroup::VectorSpace { field, dim } => match dim {
                0 => write!(f, "0"),
                1 => write!(f, "{field}"),
                _ => write!(f, "{field}^{dim}"),
            },
            AbelianGroup::ZModule { free_rank, torsion } => {
                if *free_rank == 0 && torsion.is_empty() {
                    return write!(f, "0");
                }
                let mut parts = Vec::new();
                match free_rank {
                    0 => {}
                    1 => parts.push("Z".to_string()),
                    r => parts.push(format!("Z^{r}")),
                }
                for t in torsion {
                    parts.push(format!("Z/{t}"));
                }
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}
