//! Runs the bundled scene corpus and prints one line per scene.

use widthlab::query::Options;
use widthlab::scenarios::{run_corpus, CORPUS_DIR};

fn main() -> widthlab::Result<()> {
    let report = run_corpus(CORPUS_DIR, &Options::default())?;
    for scene in &report.scenes {
        match scene {
            Ok(r) => println!("{r}"),
            Err((name, e)) => println!("ERROR {name}: {e}"),
        }
    }
    println!("all expectations met: {}", report.passed());
    Ok(())
}
