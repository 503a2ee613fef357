/// Environment variable overriding [`PieceBudget::default`].
pub const PIECE_BUDGET_ENV: &str = "SHARKLAB_PIECE_BUDGET";

/// Upper bound on the number of linear pieces (or enumerated branches) any
/// single iterate may produce. The default of one million is roughly the size
/// of the twentieth iterate of the tent map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PieceBudget(usize);

impl PieceBudget {
    pub const DEFAULT: usize = 1_000_000;

    pub fn new(pieces: usize) -> Self {
        PieceBudget(pieces.max(1))
    }

    pub fn pieces(self) -> usize {
        self.0
    }

    /// Reads [`PIECE_BUDGET_ENV`], falling back to the default when unset.
    pub fn from_env() -> Result<Self, crate::Error> {
        match std::env::var(PIECE_BUDGET_ENV) {
            Ok(raw) => raw
                .trim()
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .map(PieceBudget)
                .ok_or_else(|| {
                    crate::Error::parse(
                        PIECE_BUDGET_ENV,
                        format!("{raw:?} is not a positive integer"),
                    )
                }),
            Err(_) => Ok(PieceBudget::default()),
        }
    }
}

impl Default for PieceBudget {
    fn default() -> Self {
        PieceBudget(Self::DEFAULT)
    }
}
