#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace somato {

// Deterministic random stream. mt19937_64 output is fully specified by the
// standard; the uniform and normal mappings below avoid std::*_distribution,
// whose results differ between standard-library implementations. Seeded
// experiment runs therefore reproduce bit-for-bit on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on (0, 1], 53-bit resolution.
    double uniform() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; the paired draw is cached so each call
    // consumes either two uniforms or none.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace somato
