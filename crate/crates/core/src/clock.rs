//! Wall-clock deadlines that degrade to "never expires" where no clock exists.

#[cfg(not(target_arch = "wasm32"))]
mod imp {
    use std::time::{Duration, Instant};

    #[derive(Clone, Copy, Debug)]
    pub struct Deadline(Instant);

    impl Deadline {
        pub fn after_millis(ms: u64) -> Self {
            Deadline(Instant::now() + Duration::from_millis(ms))
        }

        pub fn expired(&self) -> bool {
            Instant::now() >= self.0
        }
    }

    #[derive(Clone, Copy, Debug)]
    pub struct Stopwatch(Instant);

    impl Stopwatch {
        pub fn start() -> Self {
            Stopwatch(Instant::now())
        }

        pub fn elapsed_millis(&self) -> u64 {
            self.0.elapsed().as_millis() as u64
        }
    }
}

#[cfg(target_arch = "wasm32")]
mod imp {
    #[derive(Clone, Copy, Debug)]
    pub struct Deadline;

    impl Deadline {
        pub fn after_millis(_ms: u64) -> Self {
            Deadline
        }

        pub fn expired(&self) -> bool {
            false
        }
    }

    #[derive(Clone, Copy, Debug)]
    pub struct Stopwatch;

    impl Stopwatch {
        pub fn start() -> Self {
            Stopwatch
        }

        pub fn elapsed_millis(&self) -> u64 {
            0
        }
    }
}

pub use imp::{Deadline, Stopwatch};
