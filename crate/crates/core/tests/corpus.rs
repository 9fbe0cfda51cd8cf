use std::fs;
use std::path::PathBuf;

use tvcsp::io::{parse_expression, parse_instance, parse_structure, serialize_instance, serialize_structure};

fn corpus() -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus"].iter().collect()
}

#[test]
fn every_corpus_file_round_trips() {
    let mut files: Vec<PathBuf> = fs::read_dir(corpus())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    let mut structures = Vec::new();
    for f in files.iter().filter(|f| !f.to_string_lossy().contains(".instance.") && !f.to_string_lossy().contains(".expr.")) {
        let text = fs::read_to_string(f).unwrap();
        let parsed = parse_structure(&text).unwrap_or_else(|e| panic!("{}: {e}", f.display()));
        let again = parse_structure(&serialize_structure(&parsed.name, &parsed.structure)).unwrap();
        assert_eq!(again, parsed, "{}", f.display());
        structures.push(parsed.structure);
    }
    for f in files.iter().filter(|f| f.to_string_lossy().contains(".instance.")) {
        let text = fs::read_to_string(f).unwrap();
        let (s, inst) = structures
            .iter()
            .find_map(|s| parse_instance(&text, s).ok().map(|i| (s, i)))
            .unwrap_or_else(|| panic!("{}: no structure in the corpus fits", f.display()));
        assert_eq!(parse_instance(&serialize_instance(&inst), s).unwrap(), inst);
    }
    for f in files.iter().filter(|f| f.to_string_lossy().contains(".expr.")) {
        parse_expression(&fs::read_to_string(f).unwrap()).unwrap();
    }
}
