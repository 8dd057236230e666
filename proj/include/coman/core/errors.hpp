#pragma once

#include <stdexcept>
#include <string>

namespace coman {

/// Grasp point coincides with a goal: the projection direction is
/// undefined. Raised instead of silently returning 0, which would mimic
/// "no intent".
class DegenerateDirectionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Action began at or before the beep; no idle interval exists.
class EmptyIdleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Corpus cannot be built (too few trials per class, infeasible split, ...).
class CorpusError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Artifact file problems. `kind` distinguishes the pipeline exit codes.
class FormatError : public std::runtime_error {
public:
    enum class Kind { MissingInput, VersionMismatch, FingerprintMismatch, Malformed };

    FormatError(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Training failed to converge; message carries diagnostics.
class TrainingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace coman
