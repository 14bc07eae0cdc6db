//! The collapsing procedure: anti-particles sit at T, seeds in S slide left
//! to the first empty site. Also shown: the interval criterion that predicts
//! the outcome without running the procedure, the dual procedure, and the
//! boundary rule on a line window.
//!
//! Run with `cargo run --example collapsing`.

use tasep::collapse::{
    collapse_cycle, collapse_line_window_traced, dual_collapse_cycle, particle_criterion_cycle,
    Site, SitePair,
};

fn main() -> tasep::Result<()> {
    let n = 8;
    let pair = SitePair::new([1, 2, 5], [2, 6]);
    let state = collapse_cycle(&pair, n)?;
    println!("collapse S = {{1,2,5}}, T = {{2,6}} on Z_{n}: {state}");

    // the criterion agrees site by site
    for pos in 0..n as i64 {
        let predicted = particle_criterion_cycle(pos, &pair, n)?;
        assert_eq!(predicted, state.sites()[pos as usize] == Site::Particle);
    }
    println!("interval criterion matches at every site");

    // dual procedure: particles fixed, anti-particles slide right
    let dual = dual_collapse_cycle(&pair, n)?;
    println!("dual collapse of the same pair:       {dual}");

    // on a window of the line, a seed that runs off the left edge is dropped
    let window = SitePair::new([-2, -1, 0], [-1, 1]);
    let (state, placements) = collapse_line_window_traced(&window, -2, 2)?;
    println!("\nwindow [-2, 2], S = {{-2,-1,0}}, T = {{-1,1}}: {state}");
    for (seed, landing) in placements {
        match landing {
            Some(pos) => println!("  seed {seed:2} landed at {pos}"),
            None => println!("  seed {seed:2} dropped off the boundary"),
        }
    }
    Ok(())
}
