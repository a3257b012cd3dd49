use alloc::format;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubgraphKind {
    Matching,
    Clique,
    Tree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chromatic {
    /// All edges share one color.
    Mono,
    /// Edges have pairwise distinct colors (rainbow).
    Hetero,
}

impl SubgraphKind {
    pub const ALL: [SubgraphKind; 3] = [SubgraphKind::Matching, SubgraphKind::Clique, SubgraphKind::Tree];

    pub fn as_str(self) -> &'static str {
        match self {
            SubgraphKind::Matching => "matching",
            SubgraphKind::Clique => "clique",
            SubgraphKind::Tree => "tree",
        }
    }
}

impl Chromatic {
    pub const ALL: [Chromatic; 2] = [Chromatic::Mono, Chromatic::Hetero];

    pub fn as_str(self) -> &'static str {
        match self {
            Chromatic::Mono => "mono",
            Chromatic::Hetero => "hetero",
        }
    }
}

/// Which subgraph property is asked for. `k` counts edges for matchings
/// and vertices for cliques and trees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PropertyQuery {
    pub kind: SubgraphKind,
    pub chromatic: Chromatic,
    pub k: usize,
}

impl PropertyQuery {
    pub fn new(kind: SubgraphKind, chromatic: Chromatic, k: usize) -> Self {
        PropertyQuery { kind, chromatic, k }
    }

    pub fn mono_matching(k: usize) -> Self {
        Self::new(SubgraphKind::Matching, Chromatic::Mono, k)
    }

    pub fn hetero_matching(k: usize) -> Self {
        Self::new(SubgraphKind::Matching, Chromatic::Hetero, k)
    }

    /// Largest admissible `k` on `n` vertices.
    pub fn max_k(kind: SubgraphKind, n: usize) -> usize {
        match kind {
            SubgraphKind::Matching => n / 2,
            SubgraphKind::Clique | SubgraphKind::Tree => n,
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let max = Self::max_k(self.kind, n);
        if self.k == 0 || self.k > max {
            return Err(Error::invalid(format!(
                "{} needs 1 <= k <= {max} on n = {n}, got k = {}",
                self.label(),
                self.k
            )));
        }
        Ok(())
    }

    /// Number of edges of one placement.
    pub fn edges_per_placement(&self) -> usize {
        match self.kind {
            SubgraphKind::Matching => self.k,
            SubgraphKind::Clique => self.k * self.k.saturating_sub(1) / 2,
            SubgraphKind::Tree => self.k.saturating_sub(1),
        }
    }

    /// `mono-matching`, `hetero-tree`, ...
    pub fn label(&self) -> PropertyLabel {
        PropertyLabel {
            kind: self.kind,
            chromatic: self.chromatic,
        }
    }
}

/// The `chromatic-kind` label without `k`, e.g. `mono-clique`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PropertyLabel {
    pub kind: SubgraphKind,
    pub chromatic: Chromatic,
}

impl PropertyLabel {
    pub fn all() -> impl Iterator<Item = PropertyLabel> {
        SubgraphKind::ALL.into_iter().flat_map(|kind| {
            Chromatic::ALL
                .into_iter()
                .map(move |chromatic| PropertyLabel { kind, chromatic })
        })
    }

    pub fn with_k(self, k: usize) -> PropertyQuery {
        PropertyQuery::new(self.kind, self.chromatic, k)
    }
}

impl fmt::Display for PropertyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.chromatic.as_str(), self.kind.as_str())
    }
}

impl FromStr for PropertyLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (c, k) = s
            .split_once('-')
            .ok_or_else(|| Error::invalid(format!("unknown property `{s}`")))?;
        let chromatic = match c {
            "mono" => Chromatic::Mono,
            "hetero" => Chromatic::Hetero,
            _ => return Err(Error::invalid(format!("unknown property `{s}`"))),
        };
        let kind = match k {
            "matching" => SubgraphKind::Matching,
            "clique" => SubgraphKind::Clique,
            "tree" => SubgraphKind::Tree,
            _ => return Err(Error::invalid(format!("unknown property `{s}`"))),
        };
        Ok(PropertyLabel { kind, chromatic })
    }
}
