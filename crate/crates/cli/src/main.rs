fn main() {
    // behave like a filter: die quietly when the reader closes the pipe
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(flow_cli::run());
}
