use std::process::ExitCode;

fn main() -> ExitCode {
    // Rust ignores SIGPIPE by default, which turns a downstream reader
    // hanging up (`steerwig sweep | head`) into a println! panic. Restore
    // the default disposition so the process exits quietly like other
    // line-oriented tools.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    steerwig::cli::run(std::env::args_os())
}
