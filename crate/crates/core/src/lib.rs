pub mod cbp;
pub mod field;
pub mod ideal;
pub mod linalg;
pub mod poly;
pub mod problem;
pub mod quotient;
pub mod separator;

#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $file:literal) => {
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            pub struct $name;
        };
    }
    chapter!(Introduction, "introduction.md");
    chapter!(Fields, "fields.md");
    chapter!(Polynomials, "polynomials.md");
    chapter!(Ideals, "ideals.md");
    chapter!(Quotient, "quotient.md");
    chapter!(Cbp, "cbp.md");
    chapter!(Gorenstein, "gorenstein.md");
    chapter!(Separators, "separators.md");
    chapter!(Strict, "strict.md");
    chapter!(Cli, "cli.md");

    #[doc = include_str!("../../../README.md")]
    pub struct Readme;
}
