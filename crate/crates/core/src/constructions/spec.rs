//! `key=value` construction specifications.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    build_biregular_bipartite, build_cycle_with_leaves, build_random_regular_girth, build_split_4regular,
    build_star, build_star_triangles_leaves, rooted_union, DEFAULT_MAX_ATTEMPTS,
};
use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Star,
    MultiStar,
    StarTrianglesLeaves,
    CycleWithLeaves,
    RandomRegular,
    BiregularBipartite,
    Split4regular,
    RootedUnion,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Star,
        Family::MultiStar,
        Family::StarTrianglesLeaves,
        Family::CycleWithLeaves,
        Family::RandomRegular,
        Family::BiregularBipartite,
        Family::Split4regular,
        Family::RootedUnion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Star => "star",
            Family::MultiStar => "multi_star",
            Family::StarTrianglesLeaves => "star_triangles_leaves",
            Family::CycleWithLeaves => "cycle_with_leaves",
            Family::RandomRegular => "random_regular",
            Family::BiregularBipartite => "biregular_bipartite",
            Family::Split4regular => "split_4regular",
            Family::RootedUnion => "rooted_union",
        }
    }

    /// Accepted keys; the first ones listed without defaults are required.
    fn keys(self) -> &'static [&'static str] {
        match self {
            Family::Star | Family::MultiStar => &["n", "k"],
            Family::StarTrianglesLeaves => &["n", "m"],
            Family::CycleWithLeaves => &["n", "cycle_len"],
            Family::RandomRegular => &["n", "d", "g_min", "seed", "max_attempts"],
            Family::BiregularBipartite => &["n", "g_min", "seed"],
            Family::Split4regular => &["n_base", "g_min", "seed"],
            Family::RootedUnion => &["n", "m", "copies", "leaves"],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family `{s}`")))
    }
}

/// A graph family with its integer parameters.
///
/// `rooted_union` glues `copies` stars of triangles and leaves (each with
/// `n` non-root vertices and `m` edges) and adds `leaves` root leaves.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub family: Family,
    pub params: BTreeMap<String, u64>,
}

/// A built construction; `root` is set for rooted families.
#[derive(Clone, Debug, PartialEq)]
pub struct Built {
    pub graph: Multigraph,
    pub root: Option<Vertex>,
}

impl ConstructionSpec {
    /// Parses whitespace-separated `key=value` tokens, one of them `family`.
    /// A `seed` token is optional; `fallback_seed` fills it in.
    pub fn parse(text: &str) -> Result<Self> {
        let mut family = None;
        let mut params = BTreeMap::new();
        for token in text.split_whitespace() {
            let (k, v) = token
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("expected key=value, got `{token}`")))?;
            if k == "family" {
                family = Some(v.parse::<Family>()?);
                continue;
            }
            let value = v
                .parse::<u64>()
                .map_err(|_| Error::InvalidParameter(format!("`{k}` needs a non-negative integer, got `{v}`")))?;
            if params.insert(k.to_string(), value).is_some() {
                return Err(Error::InvalidParameter(format!("`{k}` given twice")));
            }
        }
        let family = family.ok_or_else(|| Error::InvalidParameter("missing family=…".into()))?;
        if let Some(k) = params.keys().find(|k| !family.keys().contains(&k.as_str())) {
            return Err(Error::InvalidParameter(format!("`{k}` is not a parameter of {family}")));
        }
        Ok(ConstructionSpec { family, params })
    }

    fn get(&self, key: &str) -> Result<u64> {
        self.params
            .get(key)
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("{} needs `{key}`", self.family)))
    }

    fn get_or(&self, key: &str, default: u64) -> u64 {
        self.params.get(key).copied().unwrap_or(default)
    }

    fn size(&self, key: &str) -> Result<usize> {
        usize::try_from(self.get(key)?).map_err(|_| Error::InvalidParameter(format!("`{key}` too large")))
    }

    fn multiplicity(&self, default: u64) -> Result<u32> {
        u32::try_from(self.get_or("k", default)).map_err(|_| Error::InvalidParameter("`k` too large".into()))
    }

    /// Builds the graph; `seed` is used when the spec has none.
    pub fn build(&self, seed: u64) -> Result<Built> {
        let seed = self.get_or("seed", seed);
        let unrooted = |graph| Built { graph, root: None };
        let rooted = |r: crate::multigraph::RootedGraph| Built {
            root: Some(r.root()),
            graph: r.into_graph(),
        };
        Ok(match self.family {
            Family::Star => unrooted(build_star(self.size("n")?, self.multiplicity(1)?)?),
            Family::MultiStar => {
                self.get("k")?;
                unrooted(build_star(self.size("n")?, self.multiplicity(1)?)?)
            }
            Family::StarTrianglesLeaves => rooted(build_star_triangles_leaves(self.size("n")?, self.size("m")?)?),
            Family::CycleWithLeaves => unrooted(build_cycle_with_leaves(self.size("n")?, self.size("cycle_len")?)?),
            Family::RandomRegular => unrooted(build_random_regular_girth(
                self.size("n")?,
                self.size("d")?,
                self.get_or("g_min", 3) as usize,
                seed,
                self.get_or("max_attempts", DEFAULT_MAX_ATTEMPTS as u64) as usize,
            )?),
            Family::BiregularBipartite => unrooted(build_biregular_bipartite(
                self.size("n")?,
                seed,
                self.get_or("g_min", 4) as usize,
            )?),
            Family::Split4regular => unrooted(build_split_4regular(
                self.size("n_base")?,
                seed,
                self.get_or("g_min", 4) as usize,
            )?),
            Family::RootedUnion => {
                let part = build_star_triangles_leaves(self.size("n")?, self.size("m")?)?;
                let copies = self.get_or("copies", 1) as usize;
                if copies == 0 {
                    return Err(Error::InvalidParameter("copies must be at least 1".into()));
                }
                rooted(rooted_union(&vec![part; copies], self.get_or("leaves", 0) as usize)?)
            }
        })
    }
}

impl FromStr for ConstructionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstructionSpec::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::RootedGraph;
    use crate::resistance::{resistance_summary, rooted_summary};

    #[test]
    fn parses_and_builds_split() {
        let spec: ConstructionSpec = "family=split_4regular n_base=40 g_min=4 seed=42".parse().unwrap();
        assert_eq!(spec.family, Family::Split4regular);
        let built = spec.build(0).unwrap();
        assert_eq!(built.root, None);
        assert_eq!(built.graph.n_vertices(), 60);
        assert_eq!(built.graph.edge_count(), 100);
    }

    #[test]
    fn star_triangles_is_rooted() {
        let built = ConstructionSpec::parse("family=star_triangles_leaves n=100 m=130")
            .unwrap()
            .build(0)
            .unwrap();
        let r = RootedGraph::new(built.graph, built.root.unwrap()).unwrap();
        assert!((rooted_summary(&r).unwrap().b - 0.8).abs() < 1e-12);
    }

    #[test]
    fn star_default_multiplicity() {
        let built = ConstructionSpec::parse("family=star n=50").unwrap().build(0).unwrap();
        assert!((resistance_summary(&built.graph).unwrap().a - (2.0 - 2.0 / 50.0)).abs() < 1e-12);
    }

    #[test]
    fn rooted_union_counts() {
        let built = ConstructionSpec::parse("family=rooted_union n=6 m=9 copies=3 leaves=2")
            .unwrap()
            .build(0)
            .unwrap();
        assert_eq!(built.graph.n_vertices(), 21);
        assert_eq!(built.graph.edge_count(), 29);
    }

    #[test]
    fn rejects_bad_specs() {
        for bad in [
            "n=5",
            "family=nope n=5",
            "family=star n=five",
            "family=star n=5 n=6",
            "family=star n=5 d=3",
            "family=star n=5 k",
        ] {
            assert!(ConstructionSpec::parse(bad).is_err(), "{bad}");
        }
        assert!(ConstructionSpec::parse("family=multi_star n=5").unwrap().build(0).is_err());
        assert!(ConstructionSpec::parse("family=random_regular n=5 d=3").unwrap().build(0).is_err());
    }
}
