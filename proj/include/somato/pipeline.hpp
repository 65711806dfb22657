#pragma once

// Perceptual processes over the body models: somatic localization of touch
// on the skin, forward kinematics of the stick figure, spatial localization
// of body landmarks, and spatial localization of touch under two competing
// remapping variants (single reference frame vs. triangulation between two
// landmarks bounding the touched segment).

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "somato/body_model.hpp"
#include "somato/errors.hpp"
#include "somato/geometry.hpp"
#include "somato/noise.hpp"
#include "somato/rng.hpp"

namespace somato {

struct JointState {
    std::map<std::string, double> angles;  // rad
    double timestamp_ms = 0.0;
};

struct TouchEvent {
    std::vector<std::pair<int, double>> active;  // (taxel id, intensity >= 0)
    double onset_ms = 0.0;
};

enum class ResponseMode { pointing, silhouette };
enum class RemapVariant { single_landmark, triangulation };

inline const char* to_string(ResponseMode m) {
    return m == ResponseMode::pointing ? "pointing" : "silhouette";
}
inline const char* to_string(RemapVariant v) {
    return v == RemapVariant::single_landmark ? "single" : "triangulation";
}

struct SomaticLocation {
    std::string link;
    Vec3 position;  // mm, in the patch link frame
};

struct LocalizationResult {
    SomaticLocation somatic;
    Vec3 spatial;  // mm, body-centred frame
    RemapVariant variant = RemapVariant::single_landmark;
    ResponseMode mode = ResponseMode::pointing;
};

// --------------------------------------------------------------------------
// Forward kinematics

struct FkOptions {
    bool default_missing_to_zero = false;
    bool clamp_to_limits = false;
};

struct FkResult {
    std::map<std::string, Pose> link_poses;  // body-centred frame, base included
    std::vector<std::string> defaulted_joints;
    std::vector<std::string> clamped_joints;
};

// Pose of every link frame in the body-centred base frame. Each joint
// contributes parent_pose * pre_transform * rotation(axis, angle).
inline FkResult forward_kinematics(const BodySizeModel& size, const JointState& state,
                                   const FkOptions& opts = {}) {
    FkResult result;
    result.link_poses[size.base_link] = Pose::identity();

    std::vector<const Joint*> pending;
    pending.reserve(size.joints.size());
    for (const auto& j : size.joints) pending.push_back(&j);

    bool progress = true;
    while (progress && !pending.empty()) {
        progress = false;
        for (auto it = pending.begin(); it != pending.end();) {
            const Joint* joint = *it;
            const auto parent = result.link_poses.find(joint->parent);
            if (parent == result.link_poses.end()) {
                ++it;
                continue;
            }
            double angle = 0.0;
            const auto a = state.angles.find(joint->id);
            if (a != state.angles.end()) {
                angle = a->second;
            } else if (opts.default_missing_to_zero) {
                result.defaulted_joints.push_back(joint->id);
            } else {
                throw ModelError("no angle for joint '" + joint->id + "' and defaulting disabled");
            }
            if (angle < joint->min_angle || angle > joint->max_angle) {
                if (opts.clamp_to_limits) {
                    angle = std::clamp(angle, joint->min_angle, joint->max_angle);
                    result.clamped_joints.push_back(joint->id);
                } else {
                    throw ModelError("angle for joint '" + joint->id + "' is outside limits");
                }
            }
            result.link_poses[joint->child] =
                parent->second * joint->pre_transform * Pose::from_axis_angle(joint->axis, angle);
            it = pending.erase(it);
            progress = true;
        }
    }
    if (!pending.empty())
        throw ModelError("joint '" + pending.front()->id + "' is unreachable from the base");
    return result;
}

inline JointState default_posture(const BodySizeModel& size) {
    JointState state;
    for (const auto& j : size.joints) state.angles[j.id] = 0.0;
    state.timestamp_ms = 0.0;
    return state;
}

inline Vec3 landmark_position(const BodySizeModel& size, const FkResult& fk,
                              const std::string& landmark) {
    const auto lm = size.landmarks.find(landmark);
    if (lm == size.landmarks.end()) throw ModelError("unknown landmark '" + landmark + "'");
    const auto pose = fk.link_poses.find(lm->second.link);
    if (pose == fk.link_poses.end())
        throw ModelError("landmark '" + landmark + "' link '" + lm->second.link + "' has no pose");
    return pose->second.transform_point(lm->second.offset);
}

inline Vec3 localize_landmark(const BodySizeModel& size, const JointState& state,
                              const std::string& landmark) {
    return landmark_position(size, forward_kinematics(size, state), landmark);
}

// --------------------------------------------------------------------------
// Somatic localization

namespace pipeline_detail {

// Intensity-weighted centroid of the active taxels' stored positions;
// rejects touches spanning more than one link.
inline SomaticLocation somatic_centroid(const TouchEvent& touch, const BodyShapeModel& shape) {
    if (touch.active.empty()) throw ModelError("touch event has no active taxels");

    SomaticLocation loc;
    Vec3 weighted_sum;
    double total_intensity = 0.0;
    for (const auto& [id, intensity] : touch.active) {
        if (intensity < 0.0)
            throw ModelError("taxel " + std::to_string(id) + " has negative intensity");
        const SkinPatch* home = nullptr;
        const Taxel* taxel = nullptr;
        for (const auto& [link, patch] : shape.patches) {
            if (const Taxel* t = patch.find_taxel(id)) {
                if (home != nullptr)
                    throw ModelError("taxel id " + std::to_string(id) +
                                     " is ambiguous across patches '" + home->link + "' and '" +
                                     link + "'");
                home = &patch;
                taxel = t;
            }
        }
        if (home == nullptr) throw ModelError("unknown taxel id " + std::to_string(id));
        if (!loc.link.empty() && loc.link != home->link)
            throw ModelError("touch spans links '" + loc.link + "' and '" + home->link + "'");
        loc.link = home->link;
        weighted_sum += taxel->position * intensity;
        total_intensity += intensity;
    }
    if (total_intensity <= 0.0) throw ModelError("touch intensities are all zero");
    loc.position = weighted_sum * (1.0 / total_intensity);
    return loc;
}

}  // namespace pipeline_detail

// Where on the skin the touch is: intensity-weighted centroid in the patch
// link frame. Silhouette mode adds the patch's constant bias; pointing mode
// reports the centroid unchanged.
inline SomaticLocation somatic_localization(const TouchEvent& touch, const BodyShapeModel& shape,
                                            ResponseMode mode) {
    SomaticLocation loc = pipeline_detail::somatic_centroid(touch, shape);
    if (mode == ResponseMode::silhouette)
        loc.position += shape.patches.at(loc.link).silhouette_bias;
    return loc;
}

// --------------------------------------------------------------------------
// Spatial localization of touch, variant A: single reference frame.
// spatial = pose(touched link) * somatic centroid. The silhouette bias never
// flows into the spatial output; it shifts only the somatic report.

inline LocalizationResult remap_touch_single(const TouchEvent& touch, const BodySizeModel& size,
                                             const BodyShapeModel& shape, const JointState& state,
                                             ResponseMode mode = ResponseMode::pointing) {
    const SomaticLocation raw = pipeline_detail::somatic_centroid(touch, shape);
    const FkResult fk = forward_kinematics(size, state);

    LocalizationResult result;
    result.somatic = somatic_localization(touch, shape, mode);
    result.spatial = fk.link_poses.at(raw.link).transform_point(raw.position);
    result.variant = RemapVariant::single_landmark;
    result.mode = mode;
    return result;
}

// --------------------------------------------------------------------------
// Spatial localization of touch, variant B: triangulation between the two
// landmarks bounding the touched segment.

// Segment between the patch's proximal and distal landmarks, expressed in the
// touched link's frame under the given FK solution.
struct SegmentFrame {
    Vec3 origin;  // proximal landmark, link frame
    Vec3 axis;    // unit vector, proximal -> distal
    double length = 0.0;
};

inline SegmentFrame patch_segment(const BodySizeModel& size, const SkinPatch& patch,
                                  const FkResult& fk) {
    if (patch.proximal_landmark.empty() || patch.distal_landmark.empty())
        throw ModelError("patch '" + patch.link + "' has no proximal/distal landmark pair");
    const Pose& link_pose = fk.link_poses.at(patch.link);
    const Vec3 prox = link_pose.inverse_transform_point(
        landmark_position(size, fk, patch.proximal_landmark));
    const Vec3 dist = link_pose.inverse_transform_point(
        landmark_position(size, fk, patch.distal_landmark));
    SegmentFrame seg;
    seg.origin = prox;
    const Vec3 d = dist - prox;
    seg.length = d.norm();
    if (seg.length <= 1e-12)
        throw ModelError("patch '" + patch.link + "' landmark segment is degenerate (length 0)");
    seg.axis = d * (1.0 / seg.length);
    return seg;
}

// Two distance cues to the bounding landmarks. Noise scales with the TRUE
// distances (sigma_i = k * |d_i|), not the sampled cues.
struct DistanceCues {
    double to_proximal = 0.0;  // measures u
    double to_distal = 0.0;    // measures L - u
    double sigma_proximal = 0.0;
    double sigma_distal = 0.0;
};

inline DistanceCues sample_distance_cues(double u_true, double length_true, double weber_k,
                                         Rng& rng) {
    DistanceCues cues;
    cues.sigma_proximal = weber_k * std::abs(u_true);
    cues.sigma_distal = weber_k * std::abs(length_true - u_true);
    cues.to_proximal = u_true;
    cues.to_distal = length_true - u_true;
    if (cues.sigma_proximal > 0.0) cues.to_proximal += cues.sigma_proximal * rng.normal();
    if (cues.sigma_distal > 0.0) cues.to_distal += cues.sigma_distal * rng.normal();
    return cues;
}

// Precision-weighted fusion of the two cues into an along-segment estimate.
// The variance floor keeps the weights finite at the segment endpoints, where
// cue noise vanishes.
inline double fuse_segment_position(const DistanceCues& cues, double perceived_length) {
    constexpr double kVarianceFloor = 1e-12;  // mm^2
    const double v1 = std::max(cues.sigma_proximal * cues.sigma_proximal, kVarianceFloor);
    const double v2 = std::max(cues.sigma_distal * cues.sigma_distal, kVarianceFloor);
    const double m1 = cues.to_proximal;
    const double m2 = perceived_length - cues.to_distal;
    return (m1 / v1 + m2 / v2) / (1.0 / v1 + 1.0 / v2);
}

// Triangulation with a single model pair: cues are generated from the same
// models that decode them (the stored = veridical case). The experiment
// harness drives the two halves with separate model pairs instead.
inline LocalizationResult remap_touch_triangulated(const TouchEvent& touch,
                                                   const BodySizeModel& size,
                                                   const BodyShapeModel& shape,
                                                   const JointState& state,
                                                   const NoiseModel& noise, std::uint64_t seed,
                                                   ResponseMode mode = ResponseMode::pointing) {
    const SomaticLocation raw = pipeline_detail::somatic_centroid(touch, shape);
    const FkResult fk = forward_kinematics(size, state);
    const SkinPatch& patch = shape.patches.at(raw.link);
    const SegmentFrame seg = patch_segment(size, patch, fk);

    const Vec3 rel = raw.position - seg.origin;
    const double u_true = rel.dot(seg.axis);
    const Vec3 perp = rel - seg.axis * u_true;

    Rng rng(seed);
    const DistanceCues cues = sample_distance_cues(u_true, seg.length, noise.weber_k, rng);
    const double u_hat = fuse_segment_position(cues, seg.length);

    LocalizationResult result;
    result.somatic = somatic_localization(touch, shape, mode);
    result.spatial = fk.link_poses.at(raw.link).transform_point(seg.origin + seg.axis * u_hat + perp);
    result.variant = RemapVariant::triangulation;
    result.mode = mode;
    return result;
}

}  // namespace somato
