// Its own test binary: the variable is process-wide.

use cathom_cli::run;

#[test]
fn thread_count_must_parse() {
    std::env::set_var("CATHOM_THREADS", "many");
    let out = run(["cathom", "validate", concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/bz2.cat")]);
    std::env::remove_var("CATHOM_THREADS");
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("CATHOM_THREADS"), "{}", out.stderr);
}
