//! Graph families, rootings and tree-resistance computations.

pub mod ball;
pub mod combine;
pub mod families;
pub mod golden;
pub mod pipeline;
pub mod regular;
pub mod rooting;
pub mod spec;

pub use ball::{
    ball_resistances, extract_ball, regular_tree, regular_tree_resistance, rooted_tree_resistance, rooting_exceedance,
    tree_resistance, RootingFrequency, TreeBall,
};
pub use combine::{leaves_for_alpha, mix_with_leaves_to_alpha, rooted_union};
pub use families::{build_cycle_with_leaves, build_star, build_star_triangles_leaves};
pub use golden::{golden_recursion, GoldenValues};
pub use pipeline::{split_pipeline, SplitPipeline};
pub use regular::{
    build_bipartite_biregular, build_biregular_bipartite, build_random_regular_girth, build_split_4regular,
    moore_bound, DEFAULT_MAX_ATTEMPTS,
};
pub use rooting::{
    g_s, p_rooted, root_via_sinks, theorem64_best_p, theorem64_rooting, LocalRooting, PRooted, SinkRooting,
};
pub use spec::{Built, ConstructionSpec, Family};
