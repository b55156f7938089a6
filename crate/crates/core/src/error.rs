// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A physical parameter violates its invariant.
    InvalidParameter { name: &'static str, reason: String },
    /// Argument outside the domain where the model is defined.
    Domain(String),
    /// Caller broke an operation precondition (e.g. unnormalized field).
    Precondition(String),
    /// Zero-contrast lattice: the stop band has zero width.
    DegenerateGap,
    /// Root finding, factorization or iteration failed.
    Numerical(String),
    /// Hilbert space larger than the configured cap.
    Resource { required: usize, cap: usize },
    /// Spectral fit could not be carried out.
    Fit(String),
    /// Feature narrower than the sampling grid.
    Resolution(String),
    /// Overlapping spectral features that cannot be separated.
    Ambiguous { candidates: Vec<f64> },
    /// Wraps an error with the pipeline stage that produced it.
    Context {
        context: String,
        source: alloc::boxed::Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: alloc::boxed::Box::new(self),
        }
    }

    /// Innermost error, with all context layers stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::Context { source, .. } => source.root(),
            e => e,
        }
    }

    /// True for errors that come from numerics rather than from inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self.root(),
            Error::Numerical(_)
                | Error::Fit(_)
                | Error::Resolution(_)
                | Error::Ambiguous { .. }
                | Error::Resource { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter { name, reason } => {
                write!(f, "invalid parameter `{name}`: {reason}")
            }
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Precondition(m) => write!(f, "precondition violated: {m}"),
            Error::DegenerateGap => {
                f.write_str("degenerate stop band: zero velocity contrast gives zero gap width")
            }
            Error::Numerical(m) => write!(f, "numerical error: {m}"),
            Error::Resource { required, cap } => {
                write!(
                    f,
                    "Hilbert dimension {required} exceeds the configured cap {cap}"
                )
            }
            Error::Fit(m) => write!(f, "fit error: {m}"),
            Error::Resolution(m) => write!(f, "resolution error: {m}"),
            Error::Ambiguous { candidates } => {
                f.write_str("overlapping dips, candidates at")?;
                for c in candidates {
                    write!(f, " {c:.6e} Hz")?;
                }
                Ok(())
            }
            Error::Context { context, source } => write!(f, "{context}: {source}"),
        }
    }
}

impl core::error::Error for Error {}
