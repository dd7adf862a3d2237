#pragma once

// Line-oriented `key = value` run configuration with dotted section prefixes.
// Unknown keys are errors: a typo never silently falls back to a default.
// Cross-field constraints are validated at parse time with messages naming
// both fields.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sch/dynamics.hpp"
#include "sch/experiments.hpp"
#include "sch/integrators.hpp"

namespace sch {

enum class ExperimentKind { Simulate, Convergence, Temporal, Moments, Lyapunov, Profile };

const char* experiment_name(ExperimentKind kind);
ExperimentKind parse_experiment(const std::string& name);

struct InitialConditionSpec {
    enum class Kind { Modes, Bump, GridFile };
    Kind kind = Kind::Modes;
    std::vector<std::pair<int, double>> modes;  // (j, amplitude)
    double center = 0.0, width = 0.0, amplitude = 0.0;
    std::string file;
};

// Builds the coefficient representation of the initial condition in `space`.
// Mode lists are exact; bump profiles and grid files are projected by
// quadrature (Dirichlet-compatible by construction or by projection).
SpectralField build_initial_field(const InitialConditionSpec& ic, const SpacePtr& space);

struct RunConfig {
    // equation block
    double L = 3.14159265358979323846;
    std::optional<Potential> potential = Potential::double_well();
    DiffusionSpec diffusion = DiffusionSpec::zero();
    InitialConditionSpec ic;

    // discretization block
    std::vector<int> Ns;           // one entry for single-resolution runs
    std::optional<int> N_ref;
    int mg_factor = 4;
    int k_factor = 4;
    double dt = 0.0;
    double T = 0.0;
    Scheme scheme = Scheme::ExpEuler;
    std::int64_t record_every = 0;  // 0 = auto (>= 65 snapshots)

    // experiment block
    ExperimentKind kind = ExperimentKind::Simulate;
    bool kind_explicit = false;  // experiment.kind present in the config text
    std::int64_t paths = 1;
    NormKind norm = NormKind::H;
    std::vector<double> lags;
    std::vector<double> gammas;
    double beta = 1.0;
    double c = 0.1;
    std::vector<std::string> quantities;  // moment quantity names

    // output block
    std::string out_dir = "out";

    // optional CI thresholds; violations exit with code 2
    std::optional<double> check_slope_max;
    std::optional<double> check_slope_min;
    std::optional<double> check_r2_min;

    std::uint64_t seed = 0;

    // runtime (CLI flags, not config keys)
    unsigned threads = 1;
    bool sup_error = false;
    bool gnuplot_stub = false;

    int max_N() const;
    // Noise mode count: k_factor * N_ref for coupled experiments, else
    // k_factor * N.
    int K() const;
    std::string canonical_text() const;  // config echo, stable key order
};

RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

// Kind-dependent requirements (N_ref for convergence, lags for temporal, ...).
// parse_config applies this for the configured kind; the CLI re-applies it
// after the subcommand selects the kind.
void validate_experiment_requirements(RunConfig& cfg);

}  // namespace sch
