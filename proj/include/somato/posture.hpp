#pragma once

// Short-term postural schema: a per-joint Gaussian posterior fusing noisy,
// delayed proprioceptive afference, efference copies and canonical-posture
// priors. Joints are independent scalars; fusion is the standard
// precision-weighted product of Gaussians.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "somato/errors.hpp"

namespace somato {

struct Gaussian {
    double mean = 0.0;
    double stddev = 0.0;  // must be > 0 wherever fused
};

// Canonical-posture prior; available instantly (latency 0).
struct PosturalPrior {
    std::map<std::string, Gaussian> joints;
};

struct ProprioceptiveCue {
    std::map<std::string, Gaussian> joints;
    double latency_ms = 0.0;
};

struct EfferenceCopy {
    std::map<std::string, Gaussian> joints;
    double latency_ms = 0.0;
};

struct JointEstimate {
    double mean = 0.0;
    double variance = 0.0;
    double precision = 0.0;  // sum of cue precisions, exact by construction
};

struct PosteriorPosture {
    std::map<std::string, JointEstimate> joints;
    double timestamp_ms = 0.0;
};

// Precision-weighted fusion of one joint's cues, in the order given
// (conventionally prior, afference, efference). A single cue passes through
// exactly: mean and variance are returned unchanged, not round-tripped
// through the precision sum.
inline JointEstimate fuse_cues(const std::vector<Gaussian>& cues) {
    if (cues.empty()) throw ModelError("cannot estimate: no prior and no arrived cues");
    for (const auto& c : cues) {
        if (!(c.stddev > 0.0)) throw ModelError("cue standard deviation must be > 0");
    }
    JointEstimate est;
    if (cues.size() == 1) {
        est.mean = cues[0].mean;
        est.variance = cues[0].stddev * cues[0].stddev;
        est.precision = 1.0 / est.variance;
        return est;
    }
    double precision = 0.0;
    double weighted_mean = 0.0;
    for (const auto& c : cues) {
        const double p = 1.0 / (c.stddev * c.stddev);
        precision += p;
        weighted_mean += p * c.mean;
    }
    est.precision = precision;
    est.variance = 1.0 / precision;
    est.mean = weighted_mean / precision;
    return est;
}

inline JointEstimate fuse_cues(const std::optional<Gaussian>& prior,
                               const std::vector<Gaussian>& arrived) {
    std::vector<Gaussian> cues;
    if (prior) cues.push_back(*prior);
    cues.insert(cues.end(), arrived.begin(), arrived.end());
    return fuse_cues(cues);
}

// Posterior over the joint configuration at time t. A cue contributes iff its
// latency <= t (inclusive); the prior is always available. With only the
// prior arrived the posterior equals the prior exactly.
inline PosteriorPosture estimate_posture_at(double t_ms, const PosturalPrior& prior,
                                            const ProprioceptiveCue& afference,
                                            const std::optional<EfferenceCopy>& efference =
                                                std::nullopt) {
    if (t_ms < 0.0) throw ModelError("query time must be >= 0 ms");
    const bool afference_arrived = afference.latency_ms <= t_ms;
    const bool efference_arrived = efference && efference->latency_ms <= t_ms;

    std::set<std::string> joint_ids;
    for (const auto& [id, g] : prior.joints) joint_ids.insert(id);
    if (afference_arrived)
        for (const auto& [id, g] : afference.joints) joint_ids.insert(id);
    if (efference_arrived)
        for (const auto& [id, g] : efference->joints) joint_ids.insert(id);

    PosteriorPosture posterior;
    posterior.timestamp_ms = t_ms;
    for (const auto& id : joint_ids) {
        std::vector<Gaussian> cues;
        if (const auto it = prior.joints.find(id); it != prior.joints.end())
            cues.push_back(it->second);
        if (afference_arrived)
            if (const auto it = afference.joints.find(id); it != afference.joints.end())
                cues.push_back(it->second);
        if (efference_arrived)
            if (const auto it = efference->joints.find(id); it != efference->joints.end())
                cues.push_back(it->second);
        posterior.joints[id] = fuse_cues(cues);
    }
    return posterior;
}

}  // namespace somato
