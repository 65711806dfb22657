#pragma once

// JSON body-spec loading. Schema (all positions in mm, angles in rad):
//
//   {
//     "links":    ["torso", ...],            // first entry is the base frame
//     "joints":   [{"id", "parent", "child", "axis": [x,y,z],
//                   "pre_transform": {"quat": [w,x,y,z], "xyz_mm": [x,y,z]},
//                   "limits_rad": [min, max]}, ...],
//     "landmarks": {"wrist": {"link", "xyz_mm"}, ...},
//     "skin_patches": [{"link",
//                       "grid": {"rows", "cols", "spacing_mm"}   // or
//                       "taxels": [{"id", "xyz_mm"}, ...],
//                       "proximal_landmark", "distal_landmark"}, ...],
//     "distortion": {"link_scales": {"<link>": {"proximodistal",
//                      "mediolateral", "normal"}},
//                    "patch_biases": {"<link>": [x,y,z]}}        // optional
//   }
//
// Grid patches lay taxels row-major, id = row*cols + col, at
//   x = spacing*(row + 0.5), y = spacing*(col - (cols-1)/2), z = 0,
// x running proximodistally from the link origin.
//
// Two specs ship embedded: "planar_arm" (3 revolute joints, 10x4 forearm
// grid) and "hand" (5 fingers, dorsum patch with matched across/along taxel
// pairs).

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "somato/body_model.hpp"
#include "somato/errors.hpp"

namespace somato {

using json = nlohmann::json;

struct BodyDocument {
    BodySizeModel size;
    BodyShapeModel shape;
    std::optional<DistortionMap> distortion;
};

namespace spec_detail {

inline const json& require_field(const json& j, const char* key, const std::string& ctx) {
    if (!j.is_object() || !j.contains(key))
        throw ConfigError("missing field '" + ctx + "." + key + "'");
    return j.at(key);
}

inline double get_number(const json& j, const std::string& ctx) {
    if (!j.is_number()) throw ConfigError("field '" + ctx + "' must be a number");
    return j.get<double>();
}

inline int get_int(const json& j, const std::string& ctx) {
    if (!j.is_number_integer()) throw ConfigError("field '" + ctx + "' must be an integer");
    return j.get<int>();
}

inline std::string get_string(const json& j, const std::string& ctx) {
    if (!j.is_string()) throw ConfigError("field '" + ctx + "' must be a string");
    return j.get<std::string>();
}

inline Vec3 get_vec3(const json& j, const std::string& ctx) {
    if (!j.is_array() || j.size() != 3)
        throw ConfigError("field '" + ctx + "' must be an array of 3 numbers");
    return {get_number(j[0], ctx + "[0]"), get_number(j[1], ctx + "[1]"),
            get_number(j[2], ctx + "[2]")};
}

inline Pose get_pre_transform(const json& j, const std::string& ctx) {
    Pose p;
    if (j.contains("xyz_mm")) p.translation = get_vec3(j.at("xyz_mm"), ctx + ".xyz_mm");
    if (j.contains("quat")) {
        const json& q = j.at("quat");
        if (!q.is_array() || q.size() != 4)
            throw ConfigError("field '" + ctx + ".quat' must be an array of 4 numbers");
        p.rotation = Rotation(get_number(q[0], ctx + ".quat[0]"), get_number(q[1], ctx + ".quat[1]"),
                              get_number(q[2], ctx + ".quat[2]"), get_number(q[3], ctx + ".quat[3]"));
    }
    return p;
}

inline std::vector<Taxel> grid_taxels(const GridLayout& g) {
    std::vector<Taxel> taxels;
    taxels.reserve(static_cast<std::size_t>(g.rows) * g.cols);
    for (int r = 0; r < g.rows; ++r) {
        for (int c = 0; c < g.cols; ++c) {
            Taxel t;
            t.id = r * g.cols + c;
            t.position = {g.spacing_mm * (r + 0.5),
                          g.spacing_mm * (c - 0.5 * (g.cols - 1)), 0.0};
            taxels.push_back(t);
        }
    }
    return taxels;
}

}  // namespace spec_detail

inline DistortionMap parse_distortion(const json& j, const std::string& ctx = "distortion") {
    using namespace spec_detail;
    DistortionMap d;
    if (j.contains("link_scales")) {
        for (const auto& [link, s] : j.at("link_scales").items()) {
            AxisScale scale;
            const std::string sctx = ctx + ".link_scales." + link;
            if (s.contains("proximodistal"))
                scale.proximodistal = get_number(s.at("proximodistal"), sctx + ".proximodistal");
            if (s.contains("mediolateral"))
                scale.mediolateral = get_number(s.at("mediolateral"), sctx + ".mediolateral");
            if (s.contains("normal")) scale.normal = get_number(s.at("normal"), sctx + ".normal");
            d.link_scales[link] = scale;
        }
    }
    if (j.contains("patch_biases")) {
        for (const auto& [link, b] : j.at("patch_biases").items()) {
            d.patch_biases[link] = spec_detail::get_vec3(b, ctx + ".patch_biases." + link);
        }
    }
    return d;
}

// Schema-level parse only; semantic invariants are checked by validate_model.
inline BodyDocument parse_body_document(const json& doc) {
    using namespace spec_detail;
    BodyDocument out;

    const json& links = require_field(doc, "links", "body");
    if (!links.is_array() || links.empty())
        throw ConfigError("field 'body.links' must be a non-empty array");
    out.size.base_link = get_string(links[0], "body.links[0]");

    const json& joints = require_field(doc, "joints", "body");
    if (!joints.is_array()) throw ConfigError("field 'body.joints' must be an array");
    for (std::size_t i = 0; i < joints.size(); ++i) {
        const std::string ctx = "body.joints[" + std::to_string(i) + "]";
        const json& jj = joints[i];
        Joint joint;
        joint.id = get_string(require_field(jj, "id", ctx), ctx + ".id");
        joint.parent = get_string(require_field(jj, "parent", ctx), ctx + ".parent");
        joint.child = get_string(require_field(jj, "child", ctx), ctx + ".child");
        joint.axis = get_vec3(require_field(jj, "axis", ctx), ctx + ".axis");
        if (jj.contains("pre_transform"))
            joint.pre_transform = get_pre_transform(jj.at("pre_transform"), ctx + ".pre_transform");
        const json& lim = require_field(jj, "limits_rad", ctx);
        if (!lim.is_array() || lim.size() != 2)
            throw ConfigError("field '" + ctx + ".limits_rad' must be [min, max]");
        joint.min_angle = get_number(lim[0], ctx + ".limits_rad[0]");
        joint.max_angle = get_number(lim[1], ctx + ".limits_rad[1]");
        out.size.joints.push_back(std::move(joint));
    }

    if (doc.contains("landmarks")) {
        for (const auto& [name, lj] : doc.at("landmarks").items()) {
            const std::string ctx = "body.landmarks." + name;
            Landmark lm;
            lm.link = get_string(require_field(lj, "link", ctx), ctx + ".link");
            lm.offset = get_vec3(require_field(lj, "xyz_mm", ctx), ctx + ".xyz_mm");
            out.size.landmarks[name] = std::move(lm);
        }
    }

    if (doc.contains("skin_patches")) {
        const json& patches = doc.at("skin_patches");
        if (!patches.is_array()) throw ConfigError("field 'body.skin_patches' must be an array");
        for (std::size_t i = 0; i < patches.size(); ++i) {
            const std::string ctx = "body.skin_patches[" + std::to_string(i) + "]";
            const json& pj = patches[i];
            SkinPatch patch;
            patch.link = get_string(require_field(pj, "link", ctx), ctx + ".link");
            if (pj.contains("grid")) {
                const json& gj = pj.at("grid");
                GridLayout g;
                g.rows = get_int(require_field(gj, "rows", ctx + ".grid"), ctx + ".grid.rows");
                g.cols = get_int(require_field(gj, "cols", ctx + ".grid"), ctx + ".grid.cols");
                g.spacing_mm =
                    get_number(require_field(gj, "spacing_mm", ctx + ".grid"), ctx + ".grid.spacing_mm");
                if (g.rows <= 0 || g.cols <= 0 || g.spacing_mm <= 0.0)
                    throw ConfigError("field '" + ctx + ".grid' must have positive rows, cols, spacing");
                patch.grid = g;
                patch.taxels = grid_taxels(g);
            } else if (pj.contains("taxels")) {
                const json& tj = pj.at("taxels");
                if (!tj.is_array()) throw ConfigError("field '" + ctx + ".taxels' must be an array");
                for (std::size_t k = 0; k < tj.size(); ++k) {
                    const std::string tctx = ctx + ".taxels[" + std::to_string(k) + "]";
                    Taxel t;
                    t.id = get_int(require_field(tj[k], "id", tctx), tctx + ".id");
                    t.position = get_vec3(require_field(tj[k], "xyz_mm", tctx), tctx + ".xyz_mm");
                    patch.taxels.push_back(t);
                }
            } else {
                throw ConfigError("field '" + ctx + "' needs either 'grid' or 'taxels'");
            }
            if (pj.contains("proximal_landmark"))
                patch.proximal_landmark =
                    get_string(pj.at("proximal_landmark"), ctx + ".proximal_landmark");
            if (pj.contains("distal_landmark"))
                patch.distal_landmark = get_string(pj.at("distal_landmark"), ctx + ".distal_landmark");
            out.shape.patches[patch.link] = std::move(patch);
        }
    }

    if (doc.contains("distortion")) out.distortion = parse_distortion(doc.at("distortion"));
    return out;
}

inline const char* embedded_body_spec(const std::string& name) {
    static const char* planar_arm = R"JSON({
  "links": ["torso", "upper_arm", "forearm", "hand"],
  "joints": [
    {"id": "shoulder", "parent": "torso", "child": "upper_arm",
     "axis": [0, 0, 1], "pre_transform": {"xyz_mm": [0, 0, 0]},
     "limits_rad": [-2.0944, 2.0944]},
    {"id": "elbow", "parent": "upper_arm", "child": "forearm",
     "axis": [0, 0, 1], "pre_transform": {"xyz_mm": [300, 0, 0]},
     "limits_rad": [-2.0944, 2.0944]},
    {"id": "wrist", "parent": "forearm", "child": "hand",
     "axis": [0, 0, 1], "pre_transform": {"xyz_mm": [250, 0, 0]},
     "limits_rad": [-1.5708, 1.5708]}
  ],
  "landmarks": {
    "shoulder": {"link": "upper_arm", "xyz_mm": [0, 0, 0]},
    "elbow": {"link": "forearm", "xyz_mm": [0, 0, 0]},
    "wrist": {"link": "hand", "xyz_mm": [0, 0, 0]}
  },
  "skin_patches": [
    {"link": "forearm",
     "grid": {"rows": 10, "cols": 4, "spacing_mm": 25.0},
     "proximal_landmark": "elbow", "distal_landmark": "wrist"}
  ]
})JSON";

    static const char* hand = R"JSON({
  "links": ["hand", "thumb", "index", "middle", "ring", "little"],
  "joints": [
    {"id": "knuckle_thumb", "parent": "hand", "child": "thumb",
     "axis": [0, 0, 1], "pre_transform": {"xyz_mm": [40, 45, 0]},
     "limits_rad": [-0.7854, 0.7854]},
    {"id": "knuckle_index", "parent": "hand", "child": "index",
     "axis": [0, 0, 1], "pre_transform": {"xyz_mm": [95, 30, 0]},
     "limits_rad": [-0.7854, 0.7854]},
    {"id": "knuckle_middle", "parent": "hand", "child": "middle",
     "axis": [0, 0, 1], "pre_transform": {"xyz_mm": [100, 10, 0]},
     "limits_rad": [-0.7854, 0.7854]},
    {"id": "knuckle_ring", "parent": "hand", "child": "ring",
     "axis": [0, 0, 1], "pre_transform": {"xyz_mm": [95, -12, 0]},
     "limits_rad": [-0.7854, 0.7854]},
    {"id": "knuckle_little", "parent": "hand", "child": "little",
     "axis": [0, 0, 1], "pre_transform": {"xyz_mm": [85, -34, 0]},
     "limits_rad": [-0.7854, 0.7854]}
  ],
  "landmarks": {
    "wrist_centre": {"link": "hand", "xyz_mm": [0, 0, 0]},
    "knuckle_thumb": {"link": "hand", "xyz_mm": [40, 45, 0]},
    "knuckle_index": {"link": "hand", "xyz_mm": [95, 30, 0]},
    "knuckle_middle": {"link": "hand", "xyz_mm": [100, 10, 0]},
    "knuckle_ring": {"link": "hand", "xyz_mm": [95, -12, 0]},
    "knuckle_little": {"link": "hand", "xyz_mm": [85, -34, 0]},
    "fingertip_thumb": {"link": "thumb", "xyz_mm": [50, 0, 0]},
    "fingertip_index": {"link": "index", "xyz_mm": [70, 0, 0]},
    "fingertip_middle": {"link": "middle", "xyz_mm": [78, 0, 0]},
    "fingertip_ring": {"link": "ring", "xyz_mm": [72, 0, 0]},
    "fingertip_little": {"link": "little", "xyz_mm": [56, 0, 0]},
    "hand_radial_edge": {"link": "hand", "xyz_mm": [90, 45, 0]},
    "hand_ulnar_edge": {"link": "hand", "xyz_mm": [90, -45, 0]}
  },
  "skin_patches": [
    {"link": "hand",
     "taxels": [
       {"id": 200, "xyz_mm": [60, 15, 0]},  {"id": 201, "xyz_mm": [60, -15, 0]},
       {"id": 202, "xyz_mm": [45, 0, 0]},   {"id": 203, "xyz_mm": [75, 0, 0]},
       {"id": 204, "xyz_mm": [50, 20, 0]},  {"id": 205, "xyz_mm": [50, -10, 0]},
       {"id": 206, "xyz_mm": [40, 10, 0]},  {"id": 207, "xyz_mm": [70, 10, 0]},
       {"id": 208, "xyz_mm": [70, 25, 0]},  {"id": 209, "xyz_mm": [70, -5, 0]},
       {"id": 210, "xyz_mm": [35, -20, 0]}, {"id": 211, "xyz_mm": [65, -20, 0]}
     ],
     "proximal_landmark": "wrist_centre", "distal_landmark": "knuckle_middle"}
  ]
})JSON";

    if (name == "planar_arm") return planar_arm;
    if (name == "hand") return hand;
    return nullptr;
}

// Accepts an embedded spec name ("planar_arm", "hand") or a file path.
inline BodyDocument read_body_document(const std::string& path_or_name) {
    const char* embedded = embedded_body_spec(path_or_name);
    std::string text;
    if (embedded != nullptr) {
        text = embedded;
    } else {
        std::ifstream in(path_or_name);
        if (!in) throw IoError("cannot open body spec '" + path_or_name + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("body spec '" + path_or_name + "' is not valid JSON: " + e.what());
    }
    return parse_body_document(doc);
}

// Parse + validate; throws ConfigError listing every violation.
inline std::pair<BodySizeModel, BodyShapeModel> load_body_spec(const json& doc) {
    BodyDocument parsed = parse_body_document(doc);
    const ValidationReport report = validate_model(parsed.size, parsed.shape);
    if (!report.ok()) {
        std::ostringstream msg;
        msg << "body spec is invalid:";
        for (const auto& v : report.violations) msg << "\n  " << v;
        throw ConfigError(msg.str());
    }
    return {std::move(parsed.size), std::move(parsed.shape)};
}

inline std::pair<BodySizeModel, BodyShapeModel> load_body_spec(const std::string& path_or_name) {
    BodyDocument parsed = read_body_document(path_or_name);
    const ValidationReport report = validate_model(parsed.size, parsed.shape);
    if (!report.ok()) {
        std::ostringstream msg;
        msg << "body spec '" << path_or_name << "' is invalid:";
        for (const auto& v : report.violations) msg << "\n  " << v;
        throw ConfigError(msg.str());
    }
    return {std::move(parsed.size), std::move(parsed.shape)};
}

}  // namespace somato
