//! The JSON interchange format: parse a family document, build it, render
//! an analysis report, and round-trip a computed dual back to JSON.

use fusionframe::{parse_augmentation, AnalysisReport, FamilySpecDocument, TolerancePolicy};

fn main() {
    let tol = TolerancePolicy::default();

    let text = r#"{
        "name": "three lines",
        "dimension": 3,
        "subspaces": [
            { "span": [[1.0, 0.0, 0.0]] },
            { "span": [[1.0, 1.0, 0.0]] },
            { "weight": 1.0, "span": [[0.0, 0.0, 1.0]] }
        ]
    }"#;

    let doc = FamilySpecDocument::from_json(text).unwrap();
    let (family, locals) = doc.build(&tol).unwrap();
    println!(
        "members: {}, local frames attached: {}",
        family.len(),
        locals.is_some()
    );

    let report = AnalysisReport::for_family("three lines", &family, &tol);
    print!("{}", report.render_text());

    // Computed families serialize back into the same document shape.
    let dual = family.canonical_dual(&tol).unwrap();
    let round_trip = FamilySpecDocument::from_family(Some("canonical dual".into()), &dual, None);
    println!("{}", round_trip.to_json());

    // Augmentation files are a bare list with null for untouched members.
    let choice = parse_augmentation("[[0.0, 0.0, 1.0], null, null]", 3).unwrap();
    println!("augmentation entries: {}", choice.members().len());

    // Parse failures carry the position.
    match FamilySpecDocument::from_json("{ \"dimension\": 3, }") {
        Ok(_) => println!("unexpectedly parsed"),
        Err(e) => println!("parse error: {e}"),
    }
}
