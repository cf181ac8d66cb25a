use std::sync::atomic::{AtomicU8, Ordering};

/// Which implementation of the vector operations the kernels run on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Hardware SIMD (SSSE3/SSE4.1 on x86-64).
    Native,
    /// Lane-by-lane scalar emulation.
    Emulated,
}

/// Environment variable that forces the emulated backend when set to `emulated`.
pub const BACKEND_ENV: &str = "VTRANS_BACKEND";

const UNSET: u8 = 0;
const NATIVE: u8 = 1;
const EMULATED: u8 = 2;

static ACTIVE: AtomicU8 = AtomicU8::new(UNSET);

impl Backend {
    pub fn native_available() -> bool {
        #[cfg(target_arch = "x86_64")]
        {
            super::Sse41::detect().is_some()
        }
        #[cfg(not(target_arch = "x86_64"))]
        {
            false
        }
    }

    /// Best backend for this machine, ignoring overrides.
    pub fn detect() -> Backend {
        if Self::native_available() {
            Backend::Native
        } else {
            Backend::Emulated
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Backend::Native => "native",
            Backend::Emulated => "emulated",
        }
    }

    /// Falls back to `Emulated` when native SIMD is not available.
    pub fn resolve(self) -> Backend {
        match self {
            Backend::Native if !Self::native_available() => Backend::Emulated,
            b => b,
        }
    }

    fn encode(self) -> u8 {
        match self {
            Backend::Native => NATIVE,
            Backend::Emulated => EMULATED,
        }
    }
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// The process-wide backend, selected on first use.
pub fn active_backend() -> Backend {
    match ACTIVE.load(Ordering::Relaxed) {
        NATIVE => Backend::Native,
        EMULATED => Backend::Emulated,
        _ => {
            let forced = std::env::var(BACKEND_ENV)
                .map(|v| v.eq_ignore_ascii_case("emulated"))
                .unwrap_or(false);
            let chosen = if forced { Backend::Emulated } else { Backend::detect() };
            // Another thread may have raced us; the first writer wins.
            match ACTIVE.compare_exchange(UNSET, chosen.encode(), Ordering::Relaxed, Ordering::Relaxed) {
                Ok(_) => chosen,
                Err(_) => active_backend(),
            }
        }
    }
}

/// Overrides the process-wide backend. Requests for `Native` on hardware
/// without support resolve to `Emulated`; the backend actually installed is
/// returned.
pub fn force_backend(backend: Backend) -> Backend {
    let b = backend.resolve();
    ACTIVE.store(b.encode(), Ordering::Relaxed);
    b
}

/// Clears any override so the next call to [`active_backend`] re-detects.
pub fn reset_backend() {
    ACTIVE.store(UNSET, Ordering::Relaxed);
}
