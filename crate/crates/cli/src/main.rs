use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let (json, timing) = asl_kit::output_flags(&argv);
    let (report, code) = asl_kit::run(&argv);
    let out = if json { report.to_json(timing) } else { report.to_text(timing) };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    if code == asl_kit::report::EXIT_USAGE && !json {
        let _ = std::io::stderr().write_all(out.as_bytes());
    } else {
        let _ = lock.write_all(out.as_bytes());
    }
    ExitCode::from(code as u8)
}
