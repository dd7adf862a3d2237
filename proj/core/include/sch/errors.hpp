#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sch {

// Invalid configuration or violated precondition (bad key, inconsistent
// cross-field constraint, out-of-range argument).
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// A trajectory produced a non-finite coefficient. Carries enough context to
// name the offending path, step and mode in diagnostics.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(std::int64_t path, std::int64_t step, int mode, double t)
        : std::runtime_error("blow-up: non-finite coefficient in mode " + std::to_string(mode) +
                             " at step " + std::to_string(step) + " (t=" + std::to_string(t) +
                             "), path " + std::to_string(path)),
          path(path), step(step), mode(mode), t(t) {}

    std::int64_t path;
    std::int64_t step;
    int mode;  // 1-based
    double t;
};

// Too many excluded (non-finite) paths in a Monte Carlo run.
class ExclusionBudgetError : public std::runtime_error {
public:
    ExclusionBudgetError(std::int64_t excluded, std::int64_t total)
        : std::runtime_error("excluded " + std::to_string(excluded) + " of " + std::to_string(total) +
                             " paths (non-finite); exceeds the 1% budget -- reduce dt"),
          excluded(excluded), total(total) {}

    std::int64_t excluded;
    std::int64_t total;
};

// Log-log fit requested on degenerate data (zero/negative errors).
class DegenerateFitError : public std::runtime_error {
public:
    explicit DegenerateFitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sch
