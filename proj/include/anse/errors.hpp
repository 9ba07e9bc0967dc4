/// @file errors.hpp
/// @brief Error taxonomy for the solver, diagnostics, and harness layers.
///
/// Every failure mode that callers are expected to distinguish gets its own
/// type. The CLI maps these onto process exit codes (see tools/main.cpp):
/// monitor failures -> 2, non-finite state -> 3, I/O and input errors -> 4.

#ifndef ANSE_ERRORS_HPP
#define ANSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace anse {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A sine-basis field was handed wall samples that are not (numerically) zero.
class WallValueError : public Error {
  public:
    using Error::Error;
};

/// Two operands live on different grids (or incompatible resolutions).
class GridMismatch : public Error {
  public:
    using Error::Error;
};

/// A requested spectral band exceeds what the grid (after dealiasing) can hold.
class BandTooWide : public Error {
  public:
    using Error::Error;
};

/// An operation received a field in the wrong y-basis.
class BasisMismatch : public Error {
  public:
    using Error::Error;
};

/// A Neumann-type solve was given a right-hand side with nonzero mean.
class CompatibilityError : public Error {
  public:
    using Error::Error;
};

/// Advisory: the post-step velocity broke the advective CFL bound by 2x.
/// Recorded in the run manifest and mapped to a monitor failure; steps are
/// not rolled back.
class CflViolation : public Error {
  public:
    using Error::Error;
};

/// A NaN or infinity appeared in a state or tendency coefficient.
class NonFinite : public Error {
  public:
    using Error::Error;
};

/// Input text (JSON config, CSV) could not be parsed.
class ParseError : public Error {
  public:
    using Error::Error;
};

/// Parsed input is structurally valid but violates the schema or a precondition
/// (unknown keys, out-of-range values, missing required fields).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// A run directory lacks a required artifact (manifest, diagnostics table).
class MissingArtifact : public Error {
  public:
    using Error::Error;
};

/// A series handed to a fitting routine has too few usable points.
class DegenerateSeries : public Error {
  public:
    using Error::Error;
};

}  // namespace anse

#endif  // ANSE_ERRORS_HPP
