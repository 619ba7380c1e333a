//! Reading and writing point sets and codes, and what a bad file reports.

use antipodal::io;

fn main() -> antipodal::Result<()> {
    let cube = io::parse_point_set(include_str!("data/cube3.json"))?;
    let text = io::write_point_set(&cube);
    assert_eq!(io::parse_point_set(&text)?, cube);
    print!("{text}");

    let code = io::parse_code(include_str!("data/code_3_3_2.json"))?;
    print!("{}", io::write_code(&code));

    for bad in [
        r#"{"dim": 2, "points": [["1/2", "x"]]}"#,
        r#"{"dim": 2, "points": [["1", "2", "3"]]}"#,
        "{\"dim\": 1,\n \"points\": [[\"0\"],\n",
        r#"{"b": 3, "k": 3, "m": 2, "words": [[1, 1], [1, 1]]}"#,
    ] {
        let err = if bad.contains("words") { io::parse_code(bad).err() } else { io::parse_point_set(bad).err() };
        println!("rejected: {}", err.map(|e| e.to_string()).unwrap_or_default());
    }
    Ok(())
}
