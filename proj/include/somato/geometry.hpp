#pragma once

// Rigid-transform algebra shared by every frame change in the pipeline.
// Rotations are unit quaternions (canonical sign w >= 0, renormalized after
// every composition); poses carry a rotation plus a translation in
// millimetres.

#include <array>
#include <cmath>
#include <stdexcept>

namespace somato {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }

    constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    constexpr Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }

    Vec3 normalized() const {
        const double n = norm();
        if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
        return {x / n, y / n, z / n};
    }
};

inline constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

// Unit quaternion. Construction and composition renormalize and force the
// canonical sign so equal rotations compare equal componentwise.
class Rotation {
public:
    Rotation() = default;  // identity

    Rotation(double w, double x, double y, double z) { set(w, x, y, z); }

    static Rotation identity() { return {}; }

    // Axis is normalized here; angle in radians.
    static Rotation from_axis_angle(const Vec3& axis, double angle_rad) {
        const Vec3 a = axis.normalized();
        const double h = 0.5 * angle_rad;
        const double s = std::sin(h);
        return {std::cos(h), a.x * s, a.y * s, a.z * s};
    }

    double w() const { return w_; }
    double x() const { return x_; }
    double y() const { return y_; }
    double z() const { return z_; }

    double norm() const { return std::sqrt(w_ * w_ + x_ * x_ + y_ * y_ + z_ * z_); }

    // Hamilton product, renormalized.
    Rotation operator*(const Rotation& r) const {
        return {w_ * r.w_ - x_ * r.x_ - y_ * r.y_ - z_ * r.z_,
                w_ * r.x_ + x_ * r.w_ + y_ * r.z_ - z_ * r.y_,
                w_ * r.y_ - x_ * r.z_ + y_ * r.w_ + z_ * r.x_,
                w_ * r.z_ + x_ * r.y_ - y_ * r.x_ + z_ * r.w_};
    }

    Rotation inverse() const {
        Rotation r;
        r.w_ = w_;
        r.x_ = -x_;
        r.y_ = -y_;
        r.z_ = -z_;
        return r;  // conjugate of a unit quaternion, already normalized
    }

    Vec3 rotate(const Vec3& v) const {
        // v' = v + 2 w (q x v) + 2 q x (q x v)
        const Vec3 q{x_, y_, z_};
        const Vec3 t = q.cross(v);
        return v + 2.0 * w_ * t + 2.0 * q.cross(t);
    }

    std::array<std::array<double, 3>, 3> matrix() const {
        const double ww = w_ * w_, xx = x_ * x_, yy = y_ * y_, zz = z_ * z_;
        const double wx = w_ * x_, wy = w_ * y_, wz = w_ * z_;
        const double xy = x_ * y_, xz = x_ * z_, yz = y_ * z_;
        return {{{ww + xx - yy - zz, 2.0 * (xy - wz), 2.0 * (xz + wy)},
                 {2.0 * (xy + wz), ww - xx + yy - zz, 2.0 * (yz - wx)},
                 {2.0 * (xz - wy), 2.0 * (yz + wx), ww - xx - yy + zz}}};
    }

private:
    void set(double w, double x, double y, double z) {
        const double n = std::sqrt(w * w + x * x + y * y + z * z);
        if (n == 0.0) throw std::invalid_argument("zero-norm quaternion");
        const double sign = (w < 0.0) ? -1.0 : 1.0;
        w_ = sign * w / n;
        x_ = sign * x / n;
        y_ = sign * y / n;
        z_ = sign * z / n;
    }

    double w_ = 1.0;
    double x_ = 0.0;
    double y_ = 0.0;
    double z_ = 0.0;
};

// Rigid transform mapping points from its source frame into its target frame.
struct Pose {
    Rotation rotation;
    Vec3 translation;  // mm

    static Pose identity() { return {}; }

    static Pose from_translation(const Vec3& t) { return {Rotation::identity(), t}; }

    static Pose from_axis_angle(const Vec3& axis, double angle_rad, const Vec3& t = {}) {
        return {Rotation::from_axis_angle(axis, angle_rad), t};
    }

    // Composition: result maps from o's source frame into this pose's target
    // frame.
    Pose operator*(const Pose& o) const {
        return {rotation * o.rotation, translation + rotation.rotate(o.translation)};
    }

    Pose inverse() const {
        const Rotation inv = rotation.inverse();
        return {inv, -inv.rotate(translation)};
    }

    Vec3 transform_point(const Vec3& q) const { return rotation.rotate(q) + translation; }

    Vec3 inverse_transform_point(const Vec3& q) const {
        return rotation.inverse().rotate(q - translation);
    }
};

}  // namespace somato
