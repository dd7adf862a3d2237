#include "sch/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "sch/csv.hpp"
#include "sch/errors.hpp"

namespace sch {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse '" + v + "' as a real number");
    }
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const std::int64_t x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse '" + v + "' as an integer");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const std::uint64_t x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse '" + v + "' as an unsigned integer");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("key '" + key + "': expected true/false, got '" + v + "'");
}

// Accepts "a, b, c" or "[a, b, c]".
std::vector<std::string> split_list(std::string v) {
    v = trim(v);
    if (!v.empty() && v.front() == '[') {
        if (v.back() != ']') throw ConfigError("unbalanced '[' in list value '" + v + "'");
        v = v.substr(1, v.size() - 2);
    }
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

class KeyMap {
public:
    explicit KeyMap(const std::string& text) {
        std::stringstream ss(text);
        std::string line;
        int lineno = 0;
        while (std::getline(ss, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value', got '" +
                                  line + "'");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
            if (entries_.count(key))
                throw ConfigError("config key '" + key + "' appears more than once");
            entries_[key] = value;
        }
    }

    std::optional<std::string> take(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        std::string v = it->second;
        entries_.erase(it);
        return v;
    }

    void reject_leftovers() const {
        if (entries_.empty()) return;
        std::string msg = "unknown config key(s):";
        for (const auto& [k, v] : entries_) msg += " '" + k + "'";
        throw ConfigError(msg);
    }

private:
    std::map<std::string, std::string> entries_;
};

}  // namespace

const char* experiment_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Simulate: return "simulate";
        case ExperimentKind::Convergence: return "convergence";
        case ExperimentKind::Temporal: return "temporal";
        case ExperimentKind::Moments: return "moments";
        case ExperimentKind::Lyapunov: return "lyapunov";
        case ExperimentKind::Profile: return "profile";
    }
    return "?";
}

ExperimentKind parse_experiment(const std::string& name) {
    if (name == "simulate") return ExperimentKind::Simulate;
    if (name == "convergence") return ExperimentKind::Convergence;
    if (name == "temporal") return ExperimentKind::Temporal;
    if (name == "moments") return ExperimentKind::Moments;
    if (name == "lyapunov") return ExperimentKind::Lyapunov;
    if (name == "profile") return ExperimentKind::Profile;
    throw ConfigError("unknown experiment kind '" + name + "'");
}

SpectralField build_initial_field(const InitialConditionSpec& ic, const SpacePtr& space) {
    switch (ic.kind) {
        case InitialConditionSpec::Kind::Modes: {
            SpectralField v = zero_field(space);
            for (const auto& [j, amp] : ic.modes) {
                if (j < 1 || j > space->modes())
                    throw ConfigError("initial condition mode j=" + std::to_string(j) +
                                      " outside [1, N=" + std::to_string(space->modes()) + "]");
                v.coeffs[j - 1] = amp;
            }
            return v;
        }
        case InitialConditionSpec::Kind::Bump: {
            if (!(ic.width > 0.0)) throw ConfigError("ic.width must be positive");
            if (!(ic.center - ic.width > 0.0 && ic.center + ic.width < space->length()))
                throw ConfigError("bump support [center-width, center+width] must lie inside (0, L)");
            PhysicalField u{space, std::vector<double>(space->grid_size(), 0.0)};
            for (int m = 0; m < space->grid_size(); ++m) {
                const double r = (space->grid()[m] - ic.center) / ic.width;
                if (std::abs(r) < 1.0) u.values[m] = ic.amplitude * std::exp(-1.0 / (1.0 - r * r));
            }
            return to_spectral(u, space->modes());
        }
        case InitialConditionSpec::Kind::GridFile: {
            std::ifstream in(ic.file);
            if (!in) throw ConfigError("cannot open initial-condition file '" + ic.file + "'");
            std::vector<double> vals;
            double x;
            while (in >> x) vals.push_back(x);
            if (static_cast<int>(vals.size()) != space->grid_size())
                throw ConfigError("initial-condition file '" + ic.file + "' holds " +
                                  std::to_string(vals.size()) + " values, grid expects M_g=" +
                                  std::to_string(space->grid_size()));
            PhysicalField u{space, std::move(vals)};
            return to_spectral(u, space->modes());
        }
    }
    throw ConfigError("unreachable initial-condition kind");
}

int RunConfig::max_N() const {
    int m = 0;
    for (int n : Ns) m = std::max(m, n);
    return m;
}

int RunConfig::K() const { return k_factor * (N_ref ? *N_ref : max_N()); }

RunConfig parse_config(const std::string& text) {
    KeyMap keys(text);
    RunConfig cfg;

    if (auto v = keys.take("equation.L")) {
        cfg.L = parse_double("equation.L", *v);
        if (!(cfg.L > 0.0)) throw ConfigError("equation.L must be positive");
    }
    std::string pot_kind = keys.take("equation.potential").value_or("double-well");
    if (pot_kind == "double-well") {
        cfg.potential = Potential::double_well();
    } else if (pot_kind == "none") {
        cfg.potential = std::nullopt;
    } else if (pot_kind == "custom") {
        double c[5] = {0, 0, 0, 0, 1};
        for (int i = 0; i <= 4; ++i) {
            const std::string key = "equation.c" + std::to_string(i);
            if (auto v = keys.take(key)) c[i] = parse_double(key, *v);
        }
        cfg.potential = Potential::quartic(c[4], c[3], c[2], c[1], c[0]);
    } else {
        throw ConfigError("equation.potential must be double-well, none or custom, got '" + pot_kind + "'");
    }

    const std::string diff_kind = keys.take("diffusion.kind").value_or("zero");
    double sigma = 1.0, alpha = 0.0;
    if (auto v = keys.take("diffusion.sigma")) sigma = parse_double("diffusion.sigma", *v);
    if (auto v = keys.take("diffusion.alpha")) {
        alpha = parse_double("diffusion.alpha", *v);
        if (!(alpha >= 0.0 && alpha < 1.0)) throw ConfigError("diffusion.alpha must lie in [0,1)");
    }
    if (diff_kind == "zero") cfg.diffusion = DiffusionSpec::zero();
    else if (diff_kind == "constant") cfg.diffusion = DiffusionSpec::constant(sigma);
    else if (diff_kind == "sublinear") cfg.diffusion = DiffusionSpec::sublinear_power(sigma, alpha);
    else throw ConfigError("diffusion.kind must be zero, constant or sublinear, got '" + diff_kind + "'");

    const std::string ic_kind = keys.take("equation.ic.kind").value_or("modes");
    if (ic_kind == "modes") {
        cfg.ic.kind = InitialConditionSpec::Kind::Modes;
        const std::string spec = keys.take("equation.ic.modes").value_or("1:1.0");
        for (const std::string& item : split_list(spec)) {
            const auto colon = item.find(':');
            if (colon == std::string::npos)
                throw ConfigError("equation.ic.modes entry '" + item + "' is not of the form j:amplitude");
            cfg.ic.modes.emplace_back(
                static_cast<int>(parse_int("equation.ic.modes", trim(item.substr(0, colon)))),
                parse_double("equation.ic.modes", trim(item.substr(colon + 1))));
        }
    } else if (ic_kind == "bump") {
        cfg.ic.kind = InitialConditionSpec::Kind::Bump;
        cfg.ic.center = parse_double("equation.ic.center", keys.take("equation.ic.center").value_or("0"));
        cfg.ic.width = parse_double("equation.ic.width", keys.take("equation.ic.width").value_or("0"));
        cfg.ic.amplitude =
            parse_double("equation.ic.amplitude", keys.take("equation.ic.amplitude").value_or("1.0"));
    } else if (ic_kind == "file") {
        cfg.ic.kind = InitialConditionSpec::Kind::GridFile;
        if (auto v = keys.take("equation.ic.file")) cfg.ic.file = *v;
        else throw ConfigError("equation.ic.kind = file requires equation.ic.file");
    } else {
        throw ConfigError("equation.ic.kind must be modes, bump or file, got '" + ic_kind + "'");
    }

    if (auto v = keys.take("galerkin.N")) {
        for (const std::string& item : split_list(*v)) {
            const int n = static_cast<int>(parse_int("galerkin.N", item));
            if (n < 1) throw ConfigError("galerkin.N entries must be >= 1");
            cfg.Ns.push_back(n);
        }
        if (cfg.Ns.empty()) throw ConfigError("galerkin.N is empty");
    } else {
        throw ConfigError("missing required key 'galerkin.N'");
    }
    if (auto v = keys.take("galerkin.N_ref")) cfg.N_ref = static_cast<int>(parse_int("galerkin.N_ref", *v));
    if (auto v = keys.take("galerkin.Mg_factor")) {
        cfg.mg_factor = static_cast<int>(parse_int("galerkin.Mg_factor", *v));
        if (cfg.mg_factor < 3)
            throw ConfigError("galerkin.Mg_factor must be >= 3 (dealiasing floor M_g >= 3N)");
    }
    if (auto v = keys.take("galerkin.K_factor")) {
        cfg.k_factor = static_cast<int>(parse_int("galerkin.K_factor", *v));
        if (cfg.k_factor < 1) throw ConfigError("galerkin.K_factor must be >= 1");
    }
    if (auto v = keys.take("galerkin.dt")) cfg.dt = parse_double("galerkin.dt", *v);
    else throw ConfigError("missing required key 'galerkin.dt'");
    if (auto v = keys.take("galerkin.T")) cfg.T = parse_double("galerkin.T", *v);
    else throw ConfigError("missing required key 'galerkin.T'");
    if (!(cfg.dt > 0.0)) throw ConfigError("galerkin.dt must be positive");
    if (!(cfg.T > 0.0)) throw ConfigError("galerkin.T must be positive");
    if (auto v = keys.take("galerkin.scheme")) {
        if (*v == "exp-euler") cfg.scheme = Scheme::ExpEuler;
        else if (*v == "semi-implicit") cfg.scheme = Scheme::SemiImplicit;
        else if (*v == "split-yz") cfg.scheme = Scheme::SplitYZ;
        else throw ConfigError("galerkin.scheme must be exp-euler, semi-implicit or split-yz, got '" + *v + "'");
    }
    if (auto v = keys.take("galerkin.record_every")) {
        cfg.record_every = parse_int("galerkin.record_every", *v);
        if (cfg.record_every < 1) throw ConfigError("galerkin.record_every must be >= 1");
    }
    if (auto v = keys.take("galerkin.tamed")) {
        if (parse_bool("galerkin.tamed", *v))
            throw ConfigError("galerkin.tamed = true is reserved for a future tamed-drift variant");
    }

    if (auto v = keys.take("experiment.kind")) {
        cfg.kind = parse_experiment(*v);
        cfg.kind_explicit = true;
    }
    if (auto v = keys.take("experiment.paths")) {
        cfg.paths = parse_int("experiment.paths", *v);
        if (cfg.paths < 1) throw ConfigError("experiment.paths must be >= 1");
    }
    if (auto v = keys.take("experiment.norm")) cfg.norm = parse_norm(*v);
    if (auto v = keys.take("experiment.lags"))
        for (const std::string& item : split_list(*v)) cfg.lags.push_back(parse_double("experiment.lags", item));
    if (auto v = keys.take("experiment.gammas"))
        for (const std::string& item : split_list(*v))
            cfg.gammas.push_back(parse_double("experiment.gammas", item));
    if (auto v = keys.take("experiment.beta")) cfg.beta = parse_double("experiment.beta", *v);
    if (auto v = keys.take("experiment.c")) cfg.c = parse_double("experiment.c", *v);
    if (auto v = keys.take("experiment.quantity"))
        for (const std::string& item : split_list(*v)) cfg.quantities.push_back(item);

    if (auto v = keys.take("output.dir")) cfg.out_dir = *v;
    if (auto v = keys.take("output.formats")) {
        if (*v != "csv") throw ConfigError("output.formats: only 'csv' is supported, got '" + *v + "'");
    }

    if (auto v = keys.take("check.slope_max")) cfg.check_slope_max = parse_double("check.slope_max", *v);
    if (auto v = keys.take("check.slope_min")) cfg.check_slope_min = parse_double("check.slope_min", *v);
    if (auto v = keys.take("check.r2_min")) cfg.check_r2_min = parse_double("check.r2_min", *v);

    if (auto v = keys.take("seed")) cfg.seed = parse_u64("seed", *v);

    keys.reject_leftovers();

    // Cross-field consistency.
    for (std::size_t i = 1; i < cfg.Ns.size(); ++i)
        if (cfg.Ns[i] <= cfg.Ns[i - 1]) throw ConfigError("galerkin.N list must be strictly increasing");
    if (cfg.N_ref && *cfg.N_ref <= cfg.max_N())
        throw ConfigError("galerkin.N_ref (" + std::to_string(*cfg.N_ref) +
                          ") must exceed every entry of galerkin.N (max " + std::to_string(cfg.max_N()) + ")");
    for (const std::string& q : cfg.quantities) MomentQuantity::parse(q);  // validate early
    validate_experiment_requirements(cfg);
    return cfg;
}

void validate_experiment_requirements(RunConfig& cfg) {
    if (cfg.kind == ExperimentKind::Convergence) {
        if (!cfg.N_ref) throw ConfigError("experiment.kind = convergence requires galerkin.N_ref");
        if (cfg.Ns.size() < 3)
            throw ConfigError("experiment.kind = convergence requires >= 3 entries in galerkin.N "
                              "(log-log fit needs three points)");
    }
    if (cfg.kind == ExperimentKind::Temporal && cfg.lags.size() < 3)
        throw ConfigError("experiment.kind = temporal requires >= 3 entries in experiment.lags");
    if (cfg.kind == ExperimentKind::Profile && cfg.gammas.empty())
        throw ConfigError("experiment.kind = profile requires experiment.gammas");
    if (cfg.kind == ExperimentKind::Moments && cfg.quantities.empty()) cfg.quantities = {"sup-H-2"};
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string RunConfig::canonical_text() const {
    std::ostringstream os;
    os << "equation.L = " << fmt_double(L) << "\n";
    if (potential) {
        os << "equation.potential = custom\n";
        for (int i = 0; i <= 4; ++i) os << "equation.c" << i << " = " << fmt_double(potential->c(i)) << "\n";
    } else {
        os << "equation.potential = none\n";
    }
    switch (diffusion.kind()) {
        case DiffusionSpec::Kind::Zero: os << "diffusion.kind = zero\n"; break;
        case DiffusionSpec::Kind::Constant:
            os << "diffusion.kind = constant\ndiffusion.sigma = " << fmt_double(diffusion.sigma()) << "\n";
            break;
        case DiffusionSpec::Kind::SublinearPower:
            os << "diffusion.kind = sublinear\ndiffusion.sigma = " << fmt_double(diffusion.sigma())
               << "\ndiffusion.alpha = " << fmt_double(diffusion.alpha()) << "\n";
            break;
    }
    switch (ic.kind) {
        case InitialConditionSpec::Kind::Modes: {
            os << "equation.ic.kind = modes\nequation.ic.modes = ";
            for (std::size_t i = 0; i < ic.modes.size(); ++i) {
                if (i) os << ", ";
                os << ic.modes[i].first << ":" << fmt_double(ic.modes[i].second);
            }
            os << "\n";
            break;
        }
        case InitialConditionSpec::Kind::Bump:
            os << "equation.ic.kind = bump\nequation.ic.center = " << fmt_double(ic.center)
               << "\nequation.ic.width = " << fmt_double(ic.width) << "\nequation.ic.amplitude = "
               << fmt_double(ic.amplitude) << "\n";
            break;
        case InitialConditionSpec::Kind::GridFile:
            os << "equation.ic.kind = file\nequation.ic.file = " << ic.file << "\n";
            break;
    }
    os << "galerkin.N = [";
    for (std::size_t i = 0; i < Ns.size(); ++i) os << (i ? ", " : "") << Ns[i];
    os << "]\n";
    if (N_ref) os << "galerkin.N_ref = " << *N_ref << "\n";
    os << "galerkin.Mg_factor = " << mg_factor << "\n";
    os << "galerkin.K_factor = " << k_factor << "\n";
    os << "galerkin.dt = " << fmt_double(dt) << "\n";
    os << "galerkin.T = " << fmt_double(T) << "\n";
    os << "galerkin.scheme = " << scheme_name(scheme) << "\n";
    if (record_every > 0) os << "galerkin.record_every = " << record_every << "\n";
    os << "experiment.kind = " << experiment_name(kind) << "\n";
    os << "experiment.paths = " << paths << "\n";
    os << "experiment.norm = " << norm_name(norm) << "\n";
    if (!lags.empty()) {
        os << "experiment.lags = [";
        for (std::size_t i = 0; i < lags.size(); ++i) os << (i ? ", " : "") << fmt_double(lags[i]);
        os << "]\n";
    }
    if (!gammas.empty()) {
        os << "experiment.gammas = [";
        for (std::size_t i = 0; i < gammas.size(); ++i) os << (i ? ", " : "") << fmt_double(gammas[i]);
        os << "]\n";
    }
    os << "experiment.beta = " << fmt_double(beta) << "\n";
    os << "experiment.c = " << fmt_double(c) << "\n";
    if (!quantities.empty()) {
        os << "experiment.quantity = [";
        for (std::size_t i = 0; i < quantities.size(); ++i) os << (i ? ", " : "") << quantities[i];
        os << "]\n";
    }
    os << "seed = " << seed << "\n";
    if (sup_error) os << "flag.sup_error = true\n";  // results-relevant CLI flag
    return os.str();
}

}  // namespace sch
