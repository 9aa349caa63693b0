#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub const FIXTURES: [&str; 5] =
    ["affective-music-recommender", "driver-monitoring", "scene-narrator", "smart-camera", "student-proctoring"];

pub fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn fixture_path(name: &str) -> PathBuf {
    repo_root().join("fixtures").join(format!("{name}.ucc"))
}

pub fn golden(name: &str) -> String {
    let path = repo_root().join("crates/core/tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display())).replace("\r\n", "\n")
}

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn ucc<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    let out = Command::new(env!("CARGO_BIN_EXE_ucc"))
        .args(args)
        .env("UCC_NO_COLOR", "1")
        .output()
        .expect("ucc runs");
    Output {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

/// A working directory holding copies of the fixtures plus a few broken
/// cards, so commands that write an index never touch the repository.
pub struct Workspace {
    pub dir: tempfile::TempDir,
}

impl Workspace {
    pub fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        std::fs::create_dir(dir.path().join("corpus")).unwrap();
        std::fs::create_dir(dir.path().join("empty")).unwrap();
        std::fs::create_dir(dir.path().join("broken")).unwrap();
        for name in FIXTURES {
            std::fs::copy(fixture_path(name), dir.path().join(format!("corpus/{name}.ucc"))).unwrap();
        }
        let smart = std::fs::read_to_string(fixture_path("smart-camera")).unwrap();
        let dup = smart.replacen("title:", "title: Twice\ntitle:", 1);
        std::fs::write(dir.path().join("broken/duplicate-key.ucc"), dup).unwrap();
        std::fs::write(dir.path().join("broken/no-ai.ucc"), smart.replace("ai: yes", "ai: no")).unwrap();
        // Only a V4 warning: context of use over the word limit.
        let long = smart.replacen("context_of_use:", &format!("context_of_use:{}", " word".repeat(120)), 1);
        std::fs::write(dir.path().join("broken/warning-only.ucc"), long).unwrap();
        Workspace { dir }
    }

    pub fn path(&self, rel: &str) -> PathBuf {
        self.dir.path().join(rel)
    }
}

pub struct Scenario {
    pub name: &'static str,
    pub args: Vec<String>,
    pub code: i32,
    pub json: bool,
    pub stdout_has: Option<&'static str>,
}

fn s(name: &'static str, args: &[&str], code: i32, json: bool, stdout_has: Option<&'static str>) -> Scenario {
    Scenario { name, args: args.iter().map(|a| a.to_string()).collect(), code, json, stdout_has }
}

/// The scripted end-to-end suite: every subcommand, every exit code, and
/// every `--format json` output.
pub fn scenarios(ws: &Workspace) -> Vec<Scenario> {
    let p = |rel: &str| ws.path(rel).display().to_string();
    let (corpus, empty) = (p("corpus"), p("empty"));
    let scene = p("corpus/scene-narrator.ucc");
    let smart = p("corpus/smart-camera.ucc");
    let driver = p("corpus/driver-monitoring.ucc");
    let (dup, no_ai, warn) = (p("broken/duplicate-key.ucc"), p("broken/no-ai.ucc"), p("broken/warning-only.ucc"));
    let missing = p("missing.ucc");
    let new_card = p("new-card.ucc");
    let out_svg = p("out.svg");
    let bad_out = p("no-such-dir/out.svg");
    vec![
        s("init writes a scaffold", &["init", &new_card], 0, false, None),
        s("init refuses an existing file", &["init", &scene], 4, false, None),
        s("scaffold fails V2 only", &["validate", &new_card], 1, false, Some("V2 error")),
        s("validate clean fixture", &["validate", &scene], 0, false, Some("ok")),
        s("validate all fixtures, json", &["validate", &scene, &smart, &driver, "--format", "json"], 0, true, None),
        s("validate duplicate key", &["validate", &dup], 2, false, Some("P003")),
        s("validate duplicate key, json", &["validate", &dup, "--format", "json"], 2, true, Some("P003")),
        s("validate missing AI use case", &["validate", &no_ai], 1, false, Some("V2")),
        s("warnings alone pass", &["validate", &warn], 0, false, Some("V4 warning")),
        s("strict turns warnings into failure", &["validate", &warn, "--strict"], 1, false, Some("V4")),
        s("worst exit wins", &["validate", &scene, &no_ai, &dup], 2, false, None),
        s("validate unreadable file", &["validate", &missing], 4, false, None),
        s("validate needs a path", &["validate"], 3, false, None),
        s("assess scene narrator", &["assess", &scene], 0, false, Some("biometrics/remote-biometric-identification")),
        s("assess smart camera", &["assess", &smart], 0, false, Some("minimal")),
        s("assess json", &["assess", &scene, "--format", "json"], 0, true, Some("\"high\"")),
        s("assess invalid card", &["assess", &no_ai], 1, false, None),
        s("assess unparsable card", &["assess", &dup], 2, false, None),
        s("render svg", &["render", &scene], 0, false, Some("class=\"uc-ai\"")),
        s("render html to file", &["render", &driver, "--format", "html", "--out", &out_svg], 0, false, None),
        s("render invalid card", &["render", &no_ai], 1, false, None),
        s("render to unwritable path", &["render", &scene, "--out", &bad_out], 4, false, None),
        s("render unknown format", &["render", &scene, "--format", "pdf"], 3, false, None),
        s("stats over fixtures", &["stats", &corpus], 0, false, Some("high: 3")),
        s("stats json", &["stats", &corpus, "--format", "json"], 0, true, None),
        s("stats over empty directory", &["stats", &empty], 0, false, Some("total: 0")),
        s("stats over missing directory", &["stats", &p("nowhere")], 4, false, None),
        s("query by subarea", &["query", &corpus, "--area", "biometrics/remote-biometric-identification"], 0, false, Some("scene-narrator")),
        s("query json", &["query", &corpus, "--tier", "high", "--format", "json"], 0, true, None),
        s("query unknown area", &["query", &corpus, "--area", "astrology"], 3, false, None),
        s("query unknown tier", &["query", &corpus, "--tier", "unacceptable"], 3, false, None),
        s("export products", &["export", "vocab", "products"], 0, true, None),
        s("export areas", &["export", "vocab", "areas"], 0, true, None),
        s("export sdgs", &["export", "vocab", "sdgs"], 0, true, None),
        s("export card", &["export", "card", &scene], 0, true, Some("\"assessment\"")),
        s("export invalid card", &["export", "card", &no_ai], 1, true, Some("\"assessment\": null")),
        s("export unparsable card", &["export", "card", &dup], 2, false, None),
        s("export catalogue", &["export", "catalogue", &corpus], 0, true, Some("\"total\": 5")),
        s("help", &["--help"], 0, false, Some("Usage")),
        s("version", &["--version"], 0, false, None),
        s("unknown subcommand", &["frobnicate"], 3, false, None),
    ]
}

/// Run one scenario; `Err` describes the first broken expectation.
pub fn check(sc: &Scenario) -> Result<Output, String> {
    let out = ucc(&sc.args);
    if out.code != sc.code {
        return Err(format!("{}: exit {} (expected {})\nstderr: {}", sc.name, out.code, sc.code, out.stderr));
    }
    if sc.json {
        serde_json::from_str::<serde_json::Value>(&out.stdout)
            .map_err(|e| format!("{}: stdout is not JSON: {e}\n{}", sc.name, out.stdout))?;
    }
    if let Some(needle) = sc.stdout_has {
        if !out.stdout.contains(needle) {
            return Err(format!("{}: stdout lacks {needle:?}\n{}", sc.name, out.stdout));
        }
    }
    Ok(out)
}
