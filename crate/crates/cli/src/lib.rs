pub mod json;

pub fn run(_args: impl IntoIterator<Item = std::ffi::OsString>) -> i32 {
    // wired up after the core settles
    2
}
