fn main() {
    // Die silently on a closed pipe (`solve ... | head`) instead of
    // panicking in println; Rust masks SIGPIPE by default.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(ecc_cover::cli::run(std::env::args()));
}
