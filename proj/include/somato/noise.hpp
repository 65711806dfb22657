#pragma once

// Noise parameters shared by the remapping pipeline and the experiment
// harness.

#include <map>
#include <string>

namespace somato {

struct NoiseModel {
    // Proprioceptive afference: per-joint std overrides on top of a default.
    double afferent_std_rad = 0.0;
    std::map<std::string, double> afferent_std_overrides;
    double afferent_latency_ms = 0.0;

    // Weber fraction for triangulation distance cues: sigma = k * distance.
    double weber_k = 0.0;

    // Sensor noise on the somatic location, mm.
    double taxel_jitter_std_mm = 0.0;

    double afferent_std(const std::string& joint) const {
        const auto it = afferent_std_overrides.find(joint);
        return it == afferent_std_overrides.end() ? afferent_std_rad : it->second;
    }
};

}  // namespace somato
