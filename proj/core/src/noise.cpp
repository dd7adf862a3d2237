#include "sch/noise.hpp"

#include <cmath>
#include <string>

#include "sch/errors.hpp"

namespace sch {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

// Philox4x32-10 round constants (Salmon et al., SC 2011).
constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

struct Block {
    std::uint32_t v[4];
};

inline void mul_hilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

inline Block philox4x32_10(Block ctr, std::uint32_t key0, std::uint32_t key1) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mul_hilo(kPhiloxM0, ctr.v[0], hi0, lo0);
        mul_hilo(kPhiloxM1, ctr.v[2], hi1, lo1);
        ctr = Block{{hi1 ^ ctr.v[1] ^ key0, lo1, hi0 ^ ctr.v[3] ^ key1, lo0}};
        key0 += kPhiloxW0;
        key1 += kPhiloxW1;
    }
    return ctr;
}

// 53 uniformly random bits mapped strictly inside (0, 1).
inline double to_open01(std::uint32_t lo, std::uint32_t hi) {
    const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Box-Muller pair for counter block b of (path, step).
inline void normal_pair(std::uint64_t seed, std::uint64_t path, std::uint64_t step, std::uint32_t block,
                        double& z0, double& z1) {
    Block ctr{{static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(step), block, 0x73636831u}};
    const Block r = philox4x32_10(ctr, static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32));
    const double u1 = to_open01(r.v[0], r.v[1]);
    const double u2 = to_open01(r.v[2], r.v[3]);
    const double rad = std::sqrt(-2.0 * std::log(u1));
    z0 = rad * std::cos(kTwoPi * u2);
    z1 = rad * std::sin(kTwoPi * u2);
}

}  // namespace

namespace detail {

double standard_normal_at(std::uint64_t seed, std::uint64_t path, std::uint64_t step, int k) {
    const std::uint32_t block = static_cast<std::uint32_t>((k - 1) / 2);
    double z0, z1;
    normal_pair(seed, path, step, block, z0, z1);
    return ((k - 1) % 2 == 0) ? z0 : z1;
}

}  // namespace detail

WienerIncrements sample_increments(const NoisePlan& plan, std::int64_t path, std::int64_t step) {
    WienerIncrements w;
    w.K = plan.K;
    w.dt = plan.dt;
    w.increments.resize(plan.K);
    sample_increments_into(plan, path, step, w.increments);
    return w;
}

void sample_increments_into(const NoisePlan& plan, std::int64_t path, std::int64_t step,
                            std::span<double> out) {
    if (path < 0 || path >= plan.paths)
        throw ConfigError("sample_increments: path " + std::to_string(path) + " outside [0, " +
                          std::to_string(plan.paths) + ")");
    if (step < 0 || step >= plan.steps)
        throw ConfigError("sample_increments: step " + std::to_string(step) + " outside [0, " +
                          std::to_string(plan.steps) + ")");
    if (static_cast<int>(out.size()) != plan.K)
        throw ConfigError("sample_increments: buffer size " + std::to_string(out.size()) +
                          " != K=" + std::to_string(plan.K));
    // counter layout carries 32 bits each for path and step
    if (path > 0xffffffffll || step > 0xffffffffll)
        throw ConfigError("sample_increments: path/step indices beyond the 32-bit counter range");
    const double root_dt = std::sqrt(plan.dt);
    const std::uint64_t p = static_cast<std::uint64_t>(path);
    const std::uint64_t s = static_cast<std::uint64_t>(step);
    const int blocks = (plan.K + 1) / 2;
    for (int b = 0; b < blocks; ++b) {
        double z0, z1;
        normal_pair(plan.master_seed, p, s, static_cast<std::uint32_t>(b), z0, z1);
        out[2 * b] = root_dt * z0;
        if (2 * b + 1 < plan.K) out[2 * b + 1] = root_dt * z1;
    }
}

WienerIncrements restrict_modes(const WienerIncrements& w, int K_prime) {
    if (K_prime < 0 || K_prime > w.K)
        throw ConfigError("restrict_modes: K'=" + std::to_string(K_prime) + " outside [0, K=" +
                          std::to_string(w.K) + "]");
    WienerIncrements out;
    out.K = K_prime;
    out.dt = w.dt;
    out.increments.assign(w.increments.begin(), w.increments.begin() + K_prime);
    return out;
}

}  // namespace sch
