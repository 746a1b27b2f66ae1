//! Compiles the guide's code snippets as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}
#[doc = include_str!("../../../book/src/tableaux.md")]
mod tableaux {}
#[doc = include_str!("../../../book/src/monomials.md")]
mod monomials {}
#[doc = include_str!("../../../book/src/plucker.md")]
mod plucker {}
#[doc = include_str!("../../../book/src/characters.md")]
mod characters {}
#[doc = include_str!("../../../book/src/cluster.md")]
mod cluster {}
#[doc = include_str!("../../../book/src/cli.md")]
mod cli {}
