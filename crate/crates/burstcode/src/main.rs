fn main() {
    // die quietly on a closed pipe (e.g. `burstcode ... | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(burstcode::cli::run());
}
