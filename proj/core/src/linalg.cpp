#include "cosinor/linalg.hpp"

#include "cosinor/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace cosinor {

Mat3 Mat3::identity() noexcept {
    Mat3 m;
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
}

Vec3 solve(const Mat3& a, const Vec3& b) {
    double scale = 0.0;
    for (double v : a.data) scale = std::max(scale, std::abs(v));
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw NumericalError("singular 3x3 system");
    }

    Mat3 m = a;
    Vec3 rhs = b;
    for (std::size_t col = 0; col < 3; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < 3; ++r) {
            if (std::abs(m(r, col)) > std::abs(m(pivot, col))) pivot = r;
        }
        if (std::abs(m(pivot, col)) < kSingularPivotRatio * scale) {
            throw NumericalError("singular 3x3 system");
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < 3; ++c) std::swap(m(col, c), m(pivot, c));
            std::swap(rhs[col], rhs[pivot]);
        }
        for (std::size_t r = col + 1; r < 3; ++r) {
            const double factor = m(r, col) / m(col, col);
            if (factor == 0.0) continue;
            for (std::size_t c = col; c < 3; ++c) m(r, c) -= factor * m(col, c);
            rhs[r] -= factor * rhs[col];
        }
    }

    Vec3 x{};
    for (std::size_t i = 3; i-- > 0;) {
        double s = rhs[i];
        for (std::size_t c = i + 1; c < 3; ++c) s -= m(i, c) * x[c];
        x[i] = s / m(i, i);
    }
    return x;
}

Mat3 inverse(const Mat3& a) {
    Mat3 inv;
    for (std::size_t c = 0; c < 3; ++c) {
        Vec3 e{};
        e[c] = 1.0;
        const Vec3 col = solve(a, e);
        for (std::size_t r = 0; r < 3; ++r) inv(r, c) = col[r];
    }
    return inv;
}

namespace {

double norm1(const Mat3& a) noexcept {
    double best = 0.0;
    for (std::size_t c = 0; c < 3; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < 3; ++r) s += std::abs(a(r, c));
        best = std::max(best, s);
    }
    return best;
}

}  // namespace

double condition_1norm(const Mat3& a) noexcept {
    try {
        return norm1(a) * norm1(inverse(a));
    } catch (const NumericalError&) {
        return std::numeric_limits<double>::infinity();
    }
}

Vec3 multiply(const Mat3& a, const Vec3& x) noexcept {
    Vec3 y{};
    for (std::size_t r = 0; r < 3; ++r) {
        y[r] = a(r, 0) * x[0] + a(r, 1) * x[1] + a(r, 2) * x[2];
    }
    return y;
}

double dot(const Vec3& x, const Vec3& y) noexcept {
    return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

double norm2(const Vec3& x) noexcept {
    return std::sqrt(dot(x, x));
}

bool is_symmetric(const Mat3& a, double tol) noexcept {
    return std::abs(a(0, 1) - a(1, 0)) <= tol && std::abs(a(0, 2) - a(2, 0)) <= tol &&
           std::abs(a(1, 2) - a(2, 1)) <= tol;
}

bool is_positive_definite(const Mat3& a) noexcept {
    Mat3 s;
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) s(r, c) = 0.5 * (a(r, c) + a(c, r));
    }
    const double d1 = s(0, 0);
    const double d2 = s(0, 0) * s(1, 1) - s(0, 1) * s(1, 0);
    const double d3 = s(0, 0) * (s(1, 1) * s(2, 2) - s(1, 2) * s(2, 1)) -
                      s(0, 1) * (s(1, 0) * s(2, 2) - s(1, 2) * s(2, 0)) +
                      s(0, 2) * (s(1, 0) * s(2, 1) - s(1, 1) * s(2, 0));
    return d1 > 0.0 && d2 > 0.0 && d3 > 0.0;
}

}  // namespace cosinor
