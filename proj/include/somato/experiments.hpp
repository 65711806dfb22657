#pragma once

// Monte Carlo replication of the somatoperception paradigms: tactile
// localization profiles, landmark-map distortions, tactile distance
// anisotropy with attenuation, and single-vs-triangulation model comparison.
//
// The simulator always carries two model pairs: the veridical pair generates
// ground truth and sensory cues, the stored (possibly distorted) pair drives
// the perceptual operations.
//
// Determinism: every stochastic quantity is drawn from a stream derived as
// scenario seed + sampling-unit index. The sampling unit is one record
// (trial-major: trial * n_probes + probe) for the tactile and distance
// tasks, and one trial for the landmark task, whose probes must share a
// posture sample so extent judgments stay coherent. The two variants of a
// model comparison consume identical prefixes of the same streams, so the
// comparison is paired.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "somato/body_model.hpp"
#include "somato/errors.hpp"
#include "somato/noise.hpp"
#include "somato/pipeline.hpp"
#include "somato/posture.hpp"
#include "somato/rng.hpp"

namespace somato {

enum class TaskKind {
    tactile_localization,
    landmark_localization,
    distance_perception,
    model_comparison,
};

inline const char* to_string(TaskKind t) {
    switch (t) {
        case TaskKind::tactile_localization: return "tactile-localization";
        case TaskKind::landmark_localization: return "landmark-localization";
        case TaskKind::distance_perception: return "distance-perception";
        case TaskKind::model_comparison: return "model-comparison";
    }
    return "?";
}

struct DistanceProbe {
    std::string id;  // defaults to "<a>-<b>" when loaded from config
    int taxel_a = 0;
    int taxel_b = 0;
    bool across = true;  // across (mediolateral) vs along (proximodistal)
};

// Landmark pair whose judged extent is reported as a ratio to its veridical
// extent ("length_index": knuckle -> fingertip, kind "length").
struct ExtentSpec {
    std::string id;
    std::string from;
    std::string to;
    std::string kind;  // "length" or "width"
};

struct Scenario {
    std::string id;

    BodySizeModel veridical_size;
    BodyShapeModel veridical_shape;
    BodySizeModel stored_size;
    BodyShapeModel stored_shape;

    NoiseModel noise;
    TaskKind task = TaskKind::tactile_localization;

    std::vector<int> taxel_probes;
    std::vector<std::string> landmark_probes;
    std::vector<DistanceProbe> pair_probes;
    std::vector<ExtentSpec> extents;

    int trials = 1;
    std::uint64_t seed = 0;
    ResponseMode mode = ResponseMode::pointing;
    RemapVariant variant = RemapVariant::single_landmark;
    double attenuation = 0.9;  // alpha in [0,1]; 1 = judgments fully veridical

    JointState posture;           // true posture; missing joints default to 0
    std::optional<PosturalPrior> prior;
    double query_time_ms = -1.0;  // < 0: query after every cue has arrived
};

struct TrialRecord {
    std::string probe;
    RemapVariant variant = RemapVariant::single_landmark;
    int trial = 0;
    Vec3 truth;
    Vec3 response;
    Vec3 error;  // response - truth
};

struct ProbeAggregate {
    std::string probe;
    RemapVariant variant = RemapVariant::single_landmark;
    bool has_u = false;
    double along_u = 0.0;        // along-segment coordinate, mm
    Vec3 constant_error;         // mean signed error
    double variable_error = 0.0; // 3-D dispersion of responses, mm
    int count = 0;
};

struct PairedProfilePoint {
    std::string probe;
    double along_u = 0.0;
    double ve_single = 0.0;
    double ve_triangulated = 0.0;
};

struct ExperimentReport {
    std::string scenario_id;
    TaskKind task = TaskKind::tactile_localization;
    RemapVariant variant = RemapVariant::single_landmark;
    ResponseMode mode = ResponseMode::pointing;
    std::uint64_t seed = 0;
    int trials = 0;
    double attenuation = 1.0;
    NoiseModel noise;

    std::vector<TrialRecord> records;
    std::vector<ProbeAggregate> aggregates;
    std::vector<PairedProfilePoint> paired_profile;  // model comparison only
    std::map<std::string, double> summary;
};

// --------------------------------------------------------------------------

namespace experiment_detail {

inline JointState resolved_posture(const BodySizeModel& size, const JointState& requested) {
    JointState state = default_posture(size);
    state.timestamp_ms = requested.timestamp_ms;
    for (const auto& [joint, angle] : requested.angles) {
        if (size.find_joint(joint) == nullptr)
            throw ConfigError("scenario posture names unknown joint '" + joint + "'");
        state.angles[joint] = angle;
    }
    return state;
}

// Perceived joint state: true angle plus afferent noise, one draw per noisy
// joint in chain order.
inline JointState sample_perceived_state(const BodySizeModel& size, const JointState& truth,
                                         const NoiseModel& noise, Rng& rng) {
    JointState perceived;
    perceived.timestamp_ms = truth.timestamp_ms;
    for (const auto& joint : size.joints) {
        const double angle = truth.angles.at(joint.id);
        const double std = noise.afferent_std(joint.id);
        perceived.angles[joint.id] = (std > 0.0) ? angle + std * rng.normal() : angle;
    }
    return perceived;
}

inline std::vector<ProbeAggregate> compute_aggregates(const std::vector<TrialRecord>& records) {
    struct Acc {
        Vec3 err_sum;
        Vec3 resp_sum;
        Vec3 resp_sq_sum;
        int n = 0;
    };
    std::vector<std::pair<std::pair<std::string, RemapVariant>, Acc>> groups;
    auto find = [&groups](const std::string& probe, RemapVariant v) -> Acc& {
        for (auto& [key, acc] : groups)
            if (key.first == probe && key.second == v) return acc;
        groups.push_back({{probe, v}, {}});
        return groups.back().second;
    };
    for (const auto& r : records) {
        Acc& acc = find(r.probe, r.variant);
        acc.err_sum += r.error;
        acc.resp_sum += r.response;
        acc.resp_sq_sum += Vec3{r.response.x * r.response.x, r.response.y * r.response.y,
                                r.response.z * r.response.z};
        acc.n += 1;
    }
    std::vector<ProbeAggregate> out;
    out.reserve(groups.size());
    for (const auto& [key, acc] : groups) {
        ProbeAggregate agg;
        agg.probe = key.first;
        agg.variant = key.second;
        agg.count = acc.n;
        const double inv = 1.0 / acc.n;
        agg.constant_error = acc.err_sum * inv;
        const Vec3 mean = acc.resp_sum * inv;
        const double var_x = std::max(0.0, acc.resp_sq_sum.x * inv - mean.x * mean.x);
        const double var_y = std::max(0.0, acc.resp_sq_sum.y * inv - mean.y * mean.y);
        const double var_z = std::max(0.0, acc.resp_sq_sum.z * inv - mean.z * mean.z);
        agg.variable_error = std::sqrt(var_x + var_y + var_z);
        out.push_back(agg);
    }
    return out;
}

struct ResolvedTaxelProbe {
    int id = 0;
    std::string link;
    Vec3 veridical_position;
    Vec3 stored_position;
};

inline std::vector<ResolvedTaxelProbe> resolve_taxel_probes(const Scenario& sc) {
    if (sc.taxel_probes.empty()) throw ConfigError("scenario has no taxel probes");
    std::vector<ResolvedTaxelProbe> probes;
    for (int id : sc.taxel_probes) {
        ResolvedTaxelProbe p;
        p.id = id;
        for (const auto& [link, patch] : sc.veridical_shape.patches) {
            if (const Taxel* t = patch.find_taxel(id)) {
                p.link = link;
                p.veridical_position = t->position;
            }
        }
        if (p.link.empty()) throw ConfigError("probe taxel " + std::to_string(id) + " not found");
        const Taxel* stored = sc.stored_shape.patches.at(p.link).find_taxel(id);
        if (stored == nullptr)
            throw ConfigError("probe taxel " + std::to_string(id) + " missing from stored shape");
        p.stored_position = stored->position;
        if (!probes.empty() && probes.front().link != p.link)
            throw ConfigError("probe taxels span patches '" + probes.front().link + "' and '" +
                              p.link + "'");
        probes.push_back(p);
    }
    return probes;
}

// Near-landmark vs mid-segment binning: outer sixths vs central third.
inline double mid_near_ratio(const std::vector<double>& u, const std::vector<double>& ve,
                             double length) {
    double mid_sum = 0.0, outer_sum = 0.0;
    int mid_n = 0, outer_n = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] >= length / 3.0 && u[i] <= 2.0 * length / 3.0) {
            mid_sum += ve[i];
            ++mid_n;
        } else if (u[i] <= length / 6.0 || u[i] >= 5.0 * length / 6.0) {
            outer_sum += ve[i];
            ++outer_n;
        }
    }
    if (mid_n == 0 || outer_n == 0) return 1.0;
    const double outer_mean = outer_sum / outer_n;
    if (outer_mean < 1e-12) return 1.0;  // zero-noise convention
    return (mid_sum / mid_n) / outer_mean;
}

struct TactileRun {
    std::vector<TrialRecord> records;
    std::map<std::string, double> probe_u;  // veridical along-segment coordinate
    double segment_length = 0.0;
    bool has_segment = false;
};

inline TactileRun run_tactile_trials(const Scenario& sc, RemapVariant variant) {
    const auto probes = resolve_taxel_probes(sc);
    const std::string& link = probes.front().link;
    const JointState truth_state = resolved_posture(sc.veridical_size, sc.posture);

    const FkResult veridical_fk = forward_kinematics(sc.veridical_size, truth_state);
    const Pose& veridical_pose = veridical_fk.link_poses.at(link);

    TactileRun run;
    const SkinPatch& veridical_patch = sc.veridical_shape.patches.at(link);
    std::optional<SegmentFrame> veridical_seg;
    if (!veridical_patch.proximal_landmark.empty() && !veridical_patch.distal_landmark.empty()) {
        veridical_seg = patch_segment(sc.veridical_size, veridical_patch, veridical_fk);
        run.segment_length = veridical_seg->length;
        run.has_segment = true;
    }
    if (variant == RemapVariant::triangulation && !veridical_seg)
        throw ConfigError("triangulation needs a proximal/distal landmark pair on patch '" + link +
                          "'");

    std::vector<Vec3> truths(probes.size());
    std::vector<double> u_true(probes.size(), 0.0);
    for (std::size_t i = 0; i < probes.size(); ++i) {
        truths[i] = veridical_pose.transform_point(probes[i].veridical_position);
        if (veridical_seg) {
            u_true[i] = (probes[i].veridical_position - veridical_seg->origin).dot(veridical_seg->axis);
            run.probe_u[std::to_string(probes[i].id)] = u_true[i];
        }
    }

    const SkinPatch& stored_patch = sc.stored_shape.patches.at(link);
    const std::size_t n_probes = probes.size();
    run.records.reserve(n_probes * sc.trials);

    for (int trial = 0; trial < sc.trials; ++trial) {
        for (std::size_t ip = 0; ip < n_probes; ++ip) {
            const std::uint64_t unit = static_cast<std::uint64_t>(trial) * n_probes + ip;
            Rng rng(sc.seed + unit);

            const JointState perceived =
                sample_perceived_state(sc.stored_size, truth_state, sc.noise, rng);
            Vec3 somatic = probes[ip].stored_position;
            if (sc.noise.taxel_jitter_std_mm > 0.0) {
                somatic += Vec3{rng.normal(), rng.normal(), rng.normal()} *
                           sc.noise.taxel_jitter_std_mm;
            }

            FkOptions opts;
            opts.clamp_to_limits = true;
            const FkResult perceived_fk = forward_kinematics(sc.stored_size, perceived, opts);
            const Pose& perceived_pose = perceived_fk.link_poses.at(link);

            Vec3 response;
            if (variant == RemapVariant::single_landmark) {
                response = perceived_pose.transform_point(somatic);
            } else {
                const DistanceCues cues =
                    sample_distance_cues(u_true[ip], veridical_seg->length, sc.noise.weber_k, rng);
                const SegmentFrame seg = patch_segment(sc.stored_size, stored_patch, perceived_fk);
                const Vec3 rel = somatic - seg.origin;
                const Vec3 perp = rel - seg.axis * rel.dot(seg.axis);
                const double u_hat = fuse_segment_position(cues, seg.length);
                response = perceived_pose.transform_point(seg.origin + seg.axis * u_hat + perp);
            }

            TrialRecord rec;
            rec.probe = std::to_string(probes[ip].id);
            rec.variant = variant;
            rec.trial = trial;
            rec.truth = truths[ip];
            rec.response = response;
            rec.error = response - truths[ip];
            run.records.push_back(rec);
        }
    }
    return run;
}

inline void check_common(const Scenario& sc) {
    if (sc.trials < 1) throw ConfigError("scenario trials must be >= 1");
    if (sc.attenuation < 0.0 || sc.attenuation > 1.0)
        throw ConfigError("scenario attenuation must lie in [0, 1]");
}

inline ExperimentReport report_shell(const Scenario& sc) {
    ExperimentReport rep;
    rep.scenario_id = sc.id;
    rep.task = sc.task;
    rep.variant = sc.variant;
    rep.mode = sc.mode;
    rep.seed = sc.seed;
    rep.trials = sc.trials;
    rep.attenuation = sc.attenuation;
    rep.noise = sc.noise;
    return rep;
}

inline void attach_u(std::vector<ProbeAggregate>& aggregates,
                     const std::map<std::string, double>& probe_u) {
    for (auto& agg : aggregates) {
        const auto it = probe_u.find(agg.probe);
        if (it != probe_u.end()) {
            agg.has_u = true;
            agg.along_u = it->second;
        }
    }
}

}  // namespace experiment_detail

// --------------------------------------------------------------------------

// Tactile localization: noisy remapping of touches on one patch; reports the
// along-segment variable-error profile and the mid/near VE ratio.
inline ExperimentReport run_tactile_localization(const Scenario& sc) {
    using namespace experiment_detail;
    check_common(sc);
    if (sc.task != TaskKind::tactile_localization)
        throw ConfigError("scenario task is not tactile-localization");

    TactileRun run = run_tactile_trials(sc, sc.variant);
    ExperimentReport rep = report_shell(sc);
    rep.records = std::move(run.records);
    rep.aggregates = compute_aggregates(rep.records);
    attach_u(rep.aggregates, run.probe_u);

    if (run.has_segment) {
        std::vector<double> u, ve;
        for (const auto& agg : rep.aggregates) {
            if (!agg.has_u) continue;
            u.push_back(agg.along_u);
            ve.push_back(agg.variable_error);
        }
        rep.summary["mid_near_ratio"] = mid_near_ratio(u, ve, run.segment_length);
        rep.summary["segment_length"] = run.segment_length;
    }
    return rep;
}

// Landmark localization: judged positions come from the stored model under
// the posture posterior; extents are reported as judged/veridical ratios.
inline ExperimentReport run_landmark_localization(const Scenario& sc) {
    using namespace experiment_detail;
    check_common(sc);
    if (sc.task != TaskKind::landmark_localization)
        throw ConfigError("scenario task is not landmark-localization");
    if (sc.landmark_probes.empty()) throw ConfigError("scenario has no landmark probes");

    for (const auto& lm : sc.landmark_probes) {
        if (!sc.veridical_size.landmarks.count(lm) || !sc.stored_size.landmarks.count(lm))
            throw ConfigError("probe landmark '" + lm + "' not found");
    }
    for (const auto& ext : sc.extents) {
        for (const auto& lm : {ext.from, ext.to}) {
            if (!sc.veridical_size.landmarks.count(lm) || !sc.stored_size.landmarks.count(lm))
                throw ConfigError("extent '" + ext.id + "' references unknown landmark '" + lm +
                                  "'");
        }
    }

    const JointState truth_state = resolved_posture(sc.veridical_size, sc.posture);
    const FkResult veridical_fk = forward_kinematics(sc.veridical_size, truth_state);

    std::map<std::string, Vec3> truths;
    for (const auto& lm : sc.landmark_probes)
        truths[lm] = landmark_position(sc.veridical_size, veridical_fk, lm);

    const double t_query =
        sc.query_time_ms >= 0.0 ? sc.query_time_ms : sc.noise.afferent_latency_ms;
    const bool afference_arrived = sc.noise.afferent_latency_ms <= t_query;

    ExperimentReport rep = report_shell(sc);
    rep.records.reserve(sc.landmark_probes.size() * sc.trials);
    std::map<std::string, double> judged_extent_sum;

    for (int trial = 0; trial < sc.trials; ++trial) {
        Rng rng(sc.seed + static_cast<std::uint64_t>(trial));

        // Per-joint posture posterior. A noiseless afferent observation is a
        // delta cue: it pins the posterior mean regardless of the prior.
        JointState posterior_mean;
        posterior_mean.timestamp_ms = t_query;
        for (const auto& joint : sc.stored_size.joints) {
            const double angle = truth_state.angles.at(joint.id);
            const double std = sc.noise.afferent_std(joint.id);
            std::vector<Gaussian> cues;
            if (sc.prior) {
                const auto it = sc.prior->joints.find(joint.id);
                if (it != sc.prior->joints.end()) cues.push_back(it->second);
            }
            if (afference_arrived && std <= 0.0) {
                posterior_mean.angles[joint.id] = angle;
                continue;
            }
            if (afference_arrived) cues.push_back({angle + std * rng.normal(), std});
            if (cues.empty())
                throw ModelError("cannot estimate joint '" + joint.id +
                                 "': no prior and afference has not arrived");
            posterior_mean.angles[joint.id] = fuse_cues(cues).mean;
        }

        FkOptions opts;
        opts.clamp_to_limits = true;
        const FkResult stored_fk = forward_kinematics(sc.stored_size, posterior_mean, opts);

        std::map<std::string, Vec3> responses;
        for (const auto& lm : sc.landmark_probes) {
            const Vec3 response = landmark_position(sc.stored_size, stored_fk, lm);
            responses[lm] = response;
            TrialRecord rec;
            rec.probe = lm;
            rec.variant = sc.variant;
            rec.trial = trial;
            rec.truth = truths.at(lm);
            rec.response = response;
            rec.error = response - rec.truth;
            rep.records.push_back(rec);
        }
        for (const auto& ext : sc.extents) {
            const Vec3 from = landmark_position(sc.stored_size, stored_fk, ext.from);
            const Vec3 to = landmark_position(sc.stored_size, stored_fk, ext.to);
            judged_extent_sum[ext.id] += (to - from).norm();
        }
    }

    rep.aggregates = experiment_detail::compute_aggregates(rep.records);

    double length_ratio_sum = 0.0, width_ratio_sum = 0.0;
    int length_n = 0, width_n = 0;
    for (const auto& ext : sc.extents) {
        const Vec3 v_from = landmark_position(sc.veridical_size, veridical_fk, ext.from);
        const Vec3 v_to = landmark_position(sc.veridical_size, veridical_fk, ext.to);
        const double veridical = (v_to - v_from).norm();
        if (veridical <= 0.0)
            throw ConfigError("extent '" + ext.id + "' has zero veridical length");
        const double ratio = judged_extent_sum.at(ext.id) / sc.trials / veridical;
        rep.summary["ratio_" + ext.id] = ratio;
        if (ext.kind == "length") {
            length_ratio_sum += ratio;
            ++length_n;
        } else if (ext.kind == "width") {
            width_ratio_sum += ratio;
            ++width_n;
        }
    }
    if (length_n > 0) rep.summary["length_ratio"] = length_ratio_sum / length_n;
    if (width_n > 0) rep.summary["width_ratio"] = width_ratio_sum / width_n;
    return rep;
}

// Distance perception: expressed distance interpolates between veridical and
// the stored-shape prediction with weight (1 - attenuation).
inline ExperimentReport run_distance_perception(const Scenario& sc) {
    using namespace experiment_detail;
    check_common(sc);
    if (sc.task != TaskKind::distance_perception)
        throw ConfigError("scenario task is not distance-perception");
    if (sc.pair_probes.empty()) throw ConfigError("scenario has no taxel-pair probes");

    struct ResolvedPair {
        const DistanceProbe* probe;
        Vec3 v_a, v_b, s_a, s_b;
    };
    std::vector<ResolvedPair> pairs;
    for (const auto& probe : sc.pair_probes) {
        std::string link_a, link_b;
        ResolvedPair rp{&probe, {}, {}, {}, {}};
        for (const auto& [link, patch] : sc.veridical_shape.patches) {
            if (const Taxel* t = patch.find_taxel(probe.taxel_a)) {
                link_a = link;
                rp.v_a = t->position;
            }
            if (const Taxel* t = patch.find_taxel(probe.taxel_b)) {
                link_b = link;
                rp.v_b = t->position;
            }
        }
        if (link_a.empty() || link_b.empty())
            throw ConfigError("pair '" + probe.id + "' references unknown taxels");
        if (link_a != link_b)
            throw ConfigError("pair '" + probe.id + "' spans patches '" + link_a + "' and '" +
                              link_b + "'");
        const SkinPatch& stored = sc.stored_shape.patches.at(link_a);
        rp.s_a = stored.find_taxel(probe.taxel_a)->position;
        rp.s_b = stored.find_taxel(probe.taxel_b)->position;
        pairs.push_back(rp);
    }

    ExperimentReport rep = report_shell(sc);
    rep.records.reserve(pairs.size() * sc.trials);
    double across_sum = 0.0, along_sum = 0.0;
    int across_n = 0, along_n = 0;

    for (int trial = 0; trial < sc.trials; ++trial) {
        for (std::size_t ip = 0; ip < pairs.size(); ++ip) {
            const std::uint64_t unit = static_cast<std::uint64_t>(trial) * pairs.size() + ip;
            Rng rng(sc.seed + unit);
            const ResolvedPair& rp = pairs[ip];

            Vec3 s_a = rp.s_a;
            Vec3 s_b = rp.s_b;
            if (sc.noise.taxel_jitter_std_mm > 0.0) {
                s_a += Vec3{rng.normal(), rng.normal(), rng.normal()} * sc.noise.taxel_jitter_std_mm;
                s_b += Vec3{rng.normal(), rng.normal(), rng.normal()} * sc.noise.taxel_jitter_std_mm;
            }
            const double veridical = (rp.v_b - rp.v_a).norm();
            const double stored = (s_b - s_a).norm();
            const double expressed = veridical + (1.0 - sc.attenuation) * (stored - veridical);

            if (rp.probe->across) {
                across_sum += expressed;
                ++across_n;
            } else {
                along_sum += expressed;
                ++along_n;
            }

            TrialRecord rec;
            rec.probe = rp.probe->id;
            rec.variant = sc.variant;
            rec.trial = trial;
            rec.truth = {veridical, 0.0, 0.0};
            rec.response = {expressed, 0.0, 0.0};
            rec.error = rec.response - rec.truth;
            rep.records.push_back(rec);
        }
    }

    rep.aggregates = compute_aggregates(rep.records);
    if (across_n > 0) rep.summary["mean_expressed_across"] = across_sum / across_n;
    if (along_n > 0) rep.summary["mean_expressed_along"] = along_sum / along_n;
    if (across_n > 0 && along_n > 0)
        rep.summary["anisotropy_index"] = (across_sum / across_n) / (along_sum / along_n);
    return rep;
}

// Both remapping variants on identical probe sets and per-unit seeds; the
// report carries the paired VE profiles and their difference.
inline ExperimentReport compare_remapping_models(const Scenario& sc) {
    using namespace experiment_detail;
    check_common(sc);
    if (sc.task != TaskKind::model_comparison)
        throw ConfigError("scenario task is not model-comparison");

    TactileRun single = run_tactile_trials(sc, RemapVariant::single_landmark);
    TactileRun tri = run_tactile_trials(sc, RemapVariant::triangulation);

    ExperimentReport rep = report_shell(sc);
    rep.records = single.records;
    rep.records.insert(rep.records.end(), tri.records.begin(), tri.records.end());
    rep.aggregates = compute_aggregates(rep.records);
    attach_u(rep.aggregates, single.probe_u);

    double max_pair_dist = 0.0;
    for (std::size_t i = 0; i < single.records.size(); ++i) {
        max_pair_dist = std::max(max_pair_dist,
                                 (tri.records[i].response - single.records[i].response).norm());
    }
    rep.summary["max_paired_response_distance"] = max_pair_dist;

    double ve_diff_sum = 0.0;
    int n_points = 0;
    for (const auto& agg : rep.aggregates) {
        if (agg.variant != RemapVariant::single_landmark) continue;
        for (const auto& other : rep.aggregates) {
            if (other.variant == RemapVariant::triangulation && other.probe == agg.probe) {
                PairedProfilePoint point;
                point.probe = agg.probe;
                point.along_u = agg.has_u ? agg.along_u : 0.0;
                point.ve_single = agg.variable_error;
                point.ve_triangulated = other.variable_error;
                rep.paired_profile.push_back(point);
                ve_diff_sum += other.variable_error - agg.variable_error;
                ++n_points;
            }
        }
    }
    if (n_points > 0) rep.summary["mean_ve_difference"] = ve_diff_sum / n_points;
    if (single.has_segment) rep.summary["segment_length"] = single.segment_length;
    return rep;
}

// Dispatch on the scenario's task.
inline ExperimentReport run_scenario(const Scenario& sc) {
    switch (sc.task) {
        case TaskKind::tactile_localization: return run_tactile_localization(sc);
        case TaskKind::landmark_localization: return run_landmark_localization(sc);
        case TaskKind::distance_perception: return run_distance_perception(sc);
        case TaskKind::model_comparison: return compare_remapping_models(sc);
    }
    throw ConfigError("unknown task");
}

}  // namespace somato
