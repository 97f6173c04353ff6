//! Compressing a level distribution towards the extremal one.

use kchains::compression::{compress_to_fixpoint, level_union_sweep, RankDistribution};
use kchains::lattices::boolean_profile;
use kchains::poset::RankSet;
use rand::SeedableRng;

fn main() -> kchains::Result<()> {
    let b3 = boolean_profile(3);
    let start = RankDistribution::characteristic(&b3, &RankSet::new([0, 3]))?;
    let t = compress_to_fixpoint(&b3, &start, 2)?;
    print!("{}", t.to_csv());
    for s in &t.strictness {
        println!("step {}: {} -> {}, w_2 drops by {}, strict {}", s.step, s.i, s.i_prime, s.decrease, s.strict);
    }
    println!("endpoint {:?}, form {:?}", t.endpoint.counts(), t.form);

    let b5 = boolean_profile(5);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let random = RankDistribution::random(&b5, &mut rng);
    let t = compress_to_fixpoint(&b5, &random, 3)?;
    println!("boolean:5 random start: {} steps, all checks {}", t.steps.len(), t.checks.all());

    let cases = level_union_sweep(&b5, 3)?;
    let strict = cases.iter().filter(|c| c.ck > c.mk).count();
    println!("boolean:5 level unions: {} of {} strictly above m_3", strict, cases.len());
    Ok(())
}
