//! Serving every request of the gadget is possible exactly when the numbers
//! split into two halves of equal sum.

use twr::io::{generate_partition, has_equal_partition};
use twr::prelude::*;

fn main() -> Result<()> {
    let budget = OracleBudget::default().with_max_requests(10).with_max_nodes(9);
    for values in [vec![1, 2, 3], vec![1, 1, 4], vec![2, 3, 5, 4], vec![3, 3, 2, 2, 2]] {
        let instance = generate_partition(&values)?;
        let opt = brute_repairman(&instance, None, &budget)?;
        println!(
            "{values:?}: best profit {} of {}, equal split {}",
            opt.profit,
            instance.total_profit(),
            has_equal_partition(&values)
        );
    }
    Ok(())
}
