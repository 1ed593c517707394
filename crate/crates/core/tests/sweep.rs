#![cfg(feature = "parallel")]

use dendric::sweep::{map_parallel, map_sequential};
use dendric::{dendric_report, extension_graph, generate_language, return_words, systems, Word};

#[test]
fn parallel_and_sequential_sweeps_agree() {
    let lang = generate_language(&systems::thue_morse(), 48).unwrap();
    let words: Vec<&Word> = lang.factors_up_to(6).collect();
    let graphs = |w: &&Word| extension_graph(&lang, w).unwrap();
    assert_eq!(map_sequential(&words, graphs), map_parallel(&words, graphs));
    let returns = |w: &&Word| return_words(&lang, w).unwrap().returns;
    assert_eq!(
        map_sequential(&words, returns),
        map_parallel(&words, returns)
    );
}

#[test]
fn report_rows_keep_canonical_order() {
    let lang = generate_language(&systems::tribonacci(), 20).unwrap();
    let report = dendric_report(&lang, 6).unwrap();
    let listed: Vec<&Word> = report.rows.iter().map(|r| &r.graph.word).collect();
    let canonical: Vec<&Word> = lang.factors_up_to(6).collect();
    assert_eq!(listed, canonical);
}
