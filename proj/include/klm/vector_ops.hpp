#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace klm {

// Dense problem coordinates. All norms are Euclidean.
using Vector = std::vector<double>;

inline double dot(const Vector& a, const Vector& b) {
    assert(a.size() == b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double squared_norm(const Vector& a) { return dot(a, a); }

inline double norm(const Vector& a) { return std::sqrt(squared_norm(a)); }

// y += alpha * x
inline void axpy(double alpha, const Vector& x, Vector& y) {
    assert(x.size() == y.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline Vector scaled(const Vector& x, double alpha) {
    Vector y(x);
    for (double& v : y) v *= alpha;
    return y;
}

inline Vector add(const Vector& a, const Vector& b) {
    Vector y(a);
    axpy(1.0, b, y);
    return y;
}

inline Vector sub(const Vector& a, const Vector& b) {
    Vector y(a);
    axpy(-1.0, b, y);
    return y;
}

inline Vector zeros(std::size_t p) { return Vector(p, 0.0); }

inline Vector basis_vector(std::size_t p, std::size_t i) {
    Vector e(p, 0.0);
    assert(i < p);
    e[i] = 1.0;
    return e;
}

inline bool all_finite(const Vector& a) {
    for (double v : a)
        if (!std::isfinite(v)) return false;
    return true;
}

inline double distance(const Vector& a, const Vector& b) {
    assert(a.size() == b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace klm
