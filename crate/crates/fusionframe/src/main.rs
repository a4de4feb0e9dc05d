fn main() {
    // Die quietly when a pipe consumer stops reading, like any Unix filter.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(fusionframe::cli::run());
}
