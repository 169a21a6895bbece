//! Split column LSBs off a coefficient list and restore them from the ones
//! list alone.

use palqa::lsbswap::{encode_ones, join, regenerate, split_positions};

fn main() -> palqa::Result<()> {
    let xs: Vec<u8> = vec![0, 3, 4, 7, 7, 2, 1, 6, 5];
    let (high, plane) = split_positions(&xs);
    let ones = encode_ones(&plane);
    println!("columns  {xs:?}");
    println!("high     {high:?}");
    println!("ones     {:?} of {}", ones.indices, ones.total);
    let restored = join(&high, &regenerate(&ones)?)?;
    assert_eq!(restored, xs);
    println!("restored {restored:?}");
    Ok(())
}
