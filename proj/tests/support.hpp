#pragma once

#include "gclink/great_circle.hpp"
#include "gclink/quaternion.hpp"

#include <random>

namespace testing {

inline gclink::Quaternion random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    return gclink::Quaternion(g(rng), g(rng), g(rng), g(rng)).normalized();
}

inline gclink::Quaternion random_quat(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    return {g(rng), g(rng), g(rng), g(rng)};
}

inline gclink::PureUnit random_pure(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    return gclink::PureUnit::normalize(gclink::Vec3(g(rng), g(rng), g(rng)));
}

inline gclink::GreatCircle random_circle(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    gclink::Vec4 u, v;
    for (int k = 0; k < 4; ++k) {
        u[k] = g(rng);
        v[k] = g(rng);
    }
    return gclink::GreatCircle::span(u, v);
}

// Haar-random rotation of R^4 as a product of left and right unit multiplications.
inline gclink::Mat4 random_rotation(std::mt19937_64& rng) {
    const gclink::Quaternion l = random_unit(rng);
    const gclink::Quaternion r = random_unit(rng);
    gclink::Mat4 m;
    for (int c = 0; c < 4; ++c) {
        const gclink::Quaternion e = gclink::Quaternion::from_vec(gclink::Vec4::Unit(c));
        m.col(c) = (l * e * r).vec();
    }
    return m;
}

// Right i-fiber, i.e. {x e^{it}}, oriented by increasing t.
inline gclink::GreatCircle right_fiber(const gclink::Quaternion& x, const gclink::PureUnit& a) {
    return gclink::GreatCircle(x.vec(), (x * a.quat()).vec());
}

inline gclink::GreatCircle left_fiber(const gclink::Quaternion& x, const gclink::PureUnit& a) {
    return gclink::GreatCircle(x.vec(), (a.quat() * x).vec());
}

}  // namespace testing

namespace testing {

// The sign * n Hopf link: n fibers of the right-handed i-bundle, mirrored
// for sign -1.
inline gclink::GCLink hopf_link(int n, int sign = 1) {
    std::vector<gclink::GreatCircle> comps;
    for (int k = 0; k < n; ++k) {
        const double a = 0.15 + 1.2 * k / std::max(1, n - 1);
        comps.push_back(left_fiber(gclink::Quaternion(std::cos(a), 0, std::sin(a), 0), gclink::PureUnit::i()));
    }
    gclink::GCLink l(comps);
    return sign > 0 ? l : l.mirrored();
}

}  // namespace testing
