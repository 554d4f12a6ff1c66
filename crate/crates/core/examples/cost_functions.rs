// Building cost functions and moving them through the text format.

use advlab::costs::{build_additive, build_strong, build_subtractive, CostFunction, Rational};
use advlab::probkit::Domain;

fn main() -> advlab::Result<()> {
    let d = Domain::range(3)?;
    let eta = Rational::new(1, 3);

    let strong = build_strong(&d, eta)?;
    println!("strong, degree {}:\n{}", strong.degree(), strong.to_text());

    let (aug, sub) = build_subtractive(&d, eta)?;
    println!("subtractive on {:?}:\n{}", aug.labels(), sub.to_text());

    let (_, add) = build_additive(&d, eta)?;
    println!("additive:\n{}", add.to_text());

    let back = CostFunction::from_text(&strong.to_text())?;
    assert_eq!(back, strong);
    println!("text round trip ok");
    Ok(())
}
