//! The command-line verbs driven in-process, with their exit statuses.

use antipodal::cli::run;

fn main() {
    let dir = std::env::temp_dir().join("antipodal-cli-tour");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let cube = dir.join("cube3.json");
    std::fs::write(&cube, include_str!("data/cube3.json")).expect("write");
    let cube = cube.to_string_lossy().into_owned();
    let saved = dir.join("rank2.json").to_string_lossy().into_owned();

    let calls: Vec<Vec<&str>> = vec![
        vec!["check-rank", "--k", "1", &cube],
        vec!["check-rank", "--k", "2", &cube],
        vec!["bounds", "--d", "3", "--k", "2"],
        vec!["--decimal", "gap", "--k", "2", "--d", "2", "--b", "3"],
        vec!["hash-search", "--b", "3", "--k", "3", "--m", "3"],
        vec!["hash-search", "--b", "4", "--k", "3", "--m", "4", "--budget", "100"],
        vec!["hash-random", "--b", "3", "--k", "3", "--m", "10", "--seed", "9"],
        vec!["discriminate", "--d", "2", "--k", "2", "--sample", "20", "--seed", "3"],
        vec!["check-rank", &cube],
    ];
    for args in calls {
        let out = run(std::iter::once("antipodal").chain(args.iter().copied()));
        let summary = serde_json::from_str::<serde_json::Value>(&out.stdout)
            .ok()
            .and_then(|v| v["summary"].as_str().map(String::from))
            .unwrap_or_else(|| out.stderr.lines().next().unwrap_or("").to_string());
        println!("[{}] {}\n      {summary}", out.status, args.join(" "));
        if args[..2] == ["check-rank", "--k"] && args[2] == "2" {
            std::fs::write(&saved, &out.stdout).expect("write report");
        }
    }
    let replay = run(["antipodal", "--verify", &saved, "check-rank", "--k", "2", &cube]);
    println!("[{}] replay of the saved k = 2 report", replay.status);
}
