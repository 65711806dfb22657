#pragma once

// Long-term body representations: the kinematic stick figure (body size),
// the per-link taxel point clouds (body shape), and parametric distortions
// of the stored model relative to the veridical body.

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "somato/errors.hpp"
#include "somato/geometry.hpp"

namespace somato {

struct Joint {
    std::string id;
    std::string parent;       // parent link id
    std::string child;        // child link id
    Vec3 axis{0.0, 0.0, 1.0};  // unit, in the joint frame
    Pose pre_transform;       // parent link frame -> joint frame at zero angle
    double min_angle = 0.0;   // rad; min <= 0 <= max so the canonical posture
    double max_angle = 0.0;   // is always admissible
};

struct Landmark {
    std::string link;
    Vec3 offset;  // mm, in the link frame
};

// Kinematic chain rooted at the body-centred base frame, with named landmark
// anchors ("wrist", "elbow", ...) addressable by the pipeline and the tasks.
struct BodySizeModel {
    std::string base_link;
    std::vector<Joint> joints;
    std::map<std::string, Landmark> landmarks;

    bool has_link(const std::string& id) const {
        if (id == base_link) return true;
        for (const auto& j : joints)
            if (j.child == id) return true;
        return false;
    }

    const Joint* find_joint(const std::string& id) const {
        for (const auto& j : joints)
            if (j.id == id) return &j;
        return nullptr;
    }
};

struct Taxel {
    int id = 0;
    Vec3 position;  // mm, in the patch link frame
};

struct GridLayout {
    int rows = 0;
    int cols = 0;
    double spacing_mm = 0.0;
};

// One skin region rigidly attached to a link. Taxel positions live in the
// link frame (the link's proximal joint frame, which is also the reference
// frame for single-landmark remapping). The optional landmark pair names the
// segment endpoints used by the triangulation variant.
struct SkinPatch {
    std::string link;
    std::vector<Taxel> taxels;
    std::optional<GridLayout> grid;
    Vec3 silhouette_bias;        // mm, skin frame; applied in silhouette mode only
    std::string proximal_landmark;
    std::string distal_landmark;

    const Taxel* find_taxel(int id) const {
        for (const auto& t : taxels)
            if (t.id == id) return &t;
        return nullptr;
    }
};

struct BodyShapeModel {
    std::map<std::string, SkinPatch> patches;  // keyed by link id
};

// Axis-aligned per-link scale factors in the link frame:
// proximodistal = x, mediolateral = y, normal = z.
struct AxisScale {
    double proximodistal = 1.0;
    double mediolateral = 1.0;
    double normal = 1.0;
};

struct DistortionMap {
    std::map<std::string, AxisScale> link_scales;   // keyed by link id
    std::map<std::string, Vec3> patch_biases;        // keyed by patch link id
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

namespace detail {

inline Vec3 scale_vec(const Vec3& v, const AxisScale& s) {
    return {v.x * s.proximodistal, v.y * s.mediolateral, v.z * s.normal};
}

inline AxisScale scale_for(const DistortionMap& d, const std::string& link) {
    const auto it = d.link_scales.find(link);
    return it == d.link_scales.end() ? AxisScale{} : it->second;
}

}  // namespace detail

// Produces the STORED model pair: joint translations, landmark offsets and
// taxel positions scaled per-axis in their link frames. Patch biases are
// recorded on the stored shape but applied only by silhouette-mode
// localization. Topology (joint tree, taxel ids, patch membership) is
// preserved exactly.
inline std::pair<BodySizeModel, BodyShapeModel> apply_distortion(const BodySizeModel& size,
                                                                 const BodyShapeModel& shape,
                                                                 const DistortionMap& d) {
    for (const auto& [link, s] : d.link_scales) {
        if (s.proximodistal <= 0.0 || s.mediolateral <= 0.0 || s.normal <= 0.0) {
            throw ModelError("distortion scale for link '" + link + "' must be > 0");
        }
    }

    BodySizeModel out_size = size;
    for (auto& joint : out_size.joints) {
        // The pre-transform translation is expressed in the parent link frame.
        joint.pre_transform.translation =
            detail::scale_vec(joint.pre_transform.translation, detail::scale_for(d, joint.parent));
    }
    for (auto& [name, lm] : out_size.landmarks) {
        lm.offset = detail::scale_vec(lm.offset, detail::scale_for(d, lm.link));
    }

    BodyShapeModel out_shape = shape;
    for (auto& [link, patch] : out_shape.patches) {
        const AxisScale s = detail::scale_for(d, link);
        for (auto& taxel : patch.taxels) taxel.position = detail::scale_vec(taxel.position, s);
        const auto bias = d.patch_biases.find(link);
        if (bias != d.patch_biases.end()) patch.silhouette_bias = bias->second;
    }
    return {std::move(out_size), std::move(out_shape)};
}

// Checks every type invariant; violations are returned as data, one line each
// naming the offending entity.
inline ValidationReport validate_model(const BodySizeModel& size, const BodyShapeModel& shape) {
    ValidationReport report;
    auto fail = [&report](const std::string& msg) { report.violations.push_back(msg); };

    if (size.base_link.empty()) fail("base link is empty");

    std::set<std::string> joint_ids;
    std::set<std::string> child_links;
    for (const auto& j : size.joints) {
        if (!joint_ids.insert(j.id).second) fail("duplicate joint id '" + j.id + "'");
        if (std::abs(j.axis.norm() - 1.0) > 1e-9)
            fail("joint '" + j.id + "' axis is not unit length");
        if (!(j.min_angle <= 0.0 && 0.0 <= j.max_angle))
            fail("joint '" + j.id + "' limits (" + std::to_string(j.min_angle) + ", " +
                 std::to_string(j.max_angle) + ") exclude the zero posture");
        if (j.child == size.base_link) fail("joint '" + j.id + "' re-enters the base link");
        if (!child_links.insert(j.child).second)
            fail("link '" + j.child + "' has more than one parent joint");
    }

    // Every link must be reachable from the base: walk joints whose parent is
    // already reachable until a fixpoint; leftovers are cycles or orphans.
    std::set<std::string> reachable{size.base_link};
    std::vector<const Joint*> pending;
    for (const auto& j : size.joints) pending.push_back(&j);
    bool progress = true;
    while (progress) {
        progress = false;
        for (auto it = pending.begin(); it != pending.end();) {
            if (reachable.count((*it)->parent)) {
                reachable.insert((*it)->child);
                it = pending.erase(it);
                progress = true;
            } else {
                ++it;
            }
        }
    }
    for (const Joint* j : pending)
        fail("joint '" + j->id + "' is unreachable from the base (cycle or dangling parent '" +
             j->parent + "')");

    for (const auto& [name, lm] : size.landmarks) {
        if (!size.has_link(lm.link))
            fail("landmark '" + name + "' references unknown link '" + lm.link + "'");
    }

    for (const auto& [link, patch] : shape.patches) {
        if (patch.link != link) fail("patch key '" + link + "' does not match its link field");
        if (!size.has_link(link)) fail("skin patch references unknown link '" + link + "'");
        if (patch.taxels.empty()) fail("skin patch on link '" + link + "' has no taxels");
        std::set<int> ids;
        for (const auto& t : patch.taxels) {
            if (!ids.insert(t.id).second)
                fail("duplicate taxel id " + std::to_string(t.id) + " in patch '" + link + "'");
        }
        for (const std::string& lm : {patch.proximal_landmark, patch.distal_landmark}) {
            if (!lm.empty() && !size.landmarks.count(lm))
                fail("patch '" + link + "' references unknown landmark '" + lm + "'");
        }
    }
    return report;
}

}  // namespace somato
