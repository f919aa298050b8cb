use std::io::Write;

use clap::Parser;

fn main() {
    let cli = fueter_cli::Cli::parse();
    let (code, report) = fueter_cli::execute(cli);
    let line = serde_json::to_string(&report).expect("report serializes");
    let mut stdout = std::io::stdout().lock();
    // a closed pipe downstream is not our error
    let _ = writeln!(stdout, "{line}");
    let _ = stdout.flush();
    std::process::exit(code);
}
