pub mod numerics;
pub mod qseries;
pub mod quadforms;
pub mod weil;
pub mod completions;
pub mod traces;
pub mod identities;
pub mod cli;

/// Chapters of the book under `book/src`, compiled here so that their examples run as doctests.
pub mod book {
    #[doc = include_str!("../../../README.md")]
    pub mod readme {}
    #[doc = include_str!("../../../book/src/overview.md")]
    pub mod overview {}
    #[doc = include_str!("../../../book/src/numerics.md")]
    pub mod numerics {}
    #[doc = include_str!("../../../book/src/qseries.md")]
    pub mod qseries {}
    #[doc = include_str!("../../../book/src/quadforms.md")]
    pub mod quadforms {}
    #[doc = include_str!("../../../book/src/weil.md")]
    pub mod weil {}
    #[doc = include_str!("../../../book/src/completions.md")]
    pub mod completions {}
    #[doc = include_str!("../../../book/src/traces.md")]
    pub mod traces {}
    #[doc = include_str!("../../../book/src/identities.md")]
    pub mod identities {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
