/// Resource limits for constructions and exhaustive searches.
///
/// Exceeding a cap is always reported as an error, never silently truncated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest group built from a table or recipe, and largest derived group
    /// (automorphism groups, quotients) materialized as a Cayley table.
    pub order: usize,
    /// Largest group order on which isomorphism and automorphism searches run.
    pub search_order: usize,
    /// Largest normalized map space scanned by a connecting-map or splitting search.
    pub sigma: u128,
    /// Largest cochain space enumerated by the brute-force cohomology path.
    pub cochain_enum: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            order: 512,
            search_order: 256,
            sigma: 10_000_000,
            cochain_enum: 1_000_000,
        }
    }
}

impl Caps {
    /// Caps raised for the opt-in heavy examples.
    pub fn heavy() -> Self {
        Caps {
            search_order: 512,
            ..Caps::default()
        }
    }
}
