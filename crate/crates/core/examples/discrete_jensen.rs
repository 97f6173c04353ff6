//! Jensen's inequality for convex functions on the integers.

use num_bigint::BigInt;
use num_rational::BigRational;

use kchains::centred::MkTable;
use kchains::jensen::{discrete_jensen_check, IntegerDistribution, TabulatedFunction};
use kchains::lattices::boolean_profile;

fn main() -> kchains::Result<()> {
    let table = MkTable::new(&boolean_profile(4), 2)?;
    let f = TabulatedFunction::new(0, table.values.iter().map(|v| BigInt::from(v.clone())).collect());
    let third = || BigRational::new(1.into(), 3.into());

    // Spread across the breakpoint at 6: strict.
    let d = IntegerDistribution::new([(4, third()), (6, third()), (8, third())])?;
    let r = discrete_jensen_check(&f, &d)?;
    println!("E[m_2(X)] = {} > m_2(6) = {}: {}", r.expected_value, r.value_at_mean, r.strict);

    // Inside one linear piece: equality, with its window.
    let d = IntegerDistribution::new([(7, third()), (8, third()), (9, third())])?;
    let r = discrete_jensen_check(&f, &d)?;
    println!("equality {} on window {:?}", !r.strict, r.equality_window);
    Ok(())
}
