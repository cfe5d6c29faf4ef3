//! Compiles every Rust snippet of the guide in `book/src` as a doctest.

macro_rules! chapter {
    ($name:ident, $file:literal) => {
        #[doc = include_str!(concat!("../../../book/src/", $file))]
        pub mod $name {}
    };
}

chapter!(introduction, "introduction.md");
chapter!(algebras, "algebras.md");
chapter!(bar_construction, "bar-construction.md");
chapter!(shuffle_product, "shuffle-product.md");
chapter!(tor, "tor.md");
chapter!(formality, "formality.md");
chapter!(input_and_cli, "input-and-cli.md");
