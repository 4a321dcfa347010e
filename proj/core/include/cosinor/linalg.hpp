#pragma once

// Dense 3x3 helpers for the cosinor normal equations.

#include <array>
#include <cstddef>

namespace cosinor {

using Vec3 = std::array<double, 3>;

struct Mat3 {
    std::array<double, 9> data{};

    [[nodiscard]] double& operator()(std::size_t r, std::size_t c) noexcept { return data[3 * r + c]; }
    [[nodiscard]] double operator()(std::size_t r, std::size_t c) const noexcept { return data[3 * r + c]; }

    [[nodiscard]] static Mat3 identity() noexcept;
};

// Pivot magnitude, relative to the largest matrix entry, below which a
// system is declared singular.
inline constexpr double kSingularPivotRatio = 1e-12;

// Gaussian elimination with partial pivoting. Throws NumericalError when the
// pivot ratio drops below kSingularPivotRatio.
[[nodiscard]] Vec3 solve(const Mat3& a, const Vec3& b);

// Inverse by solving against the unit vectors (same pivoting rule).
[[nodiscard]] Mat3 inverse(const Mat3& a);

// 1-norm condition number ||A||_1 ||A^-1||_1; +inf when singular.
[[nodiscard]] double condition_1norm(const Mat3& a) noexcept;

[[nodiscard]] Vec3 multiply(const Mat3& a, const Vec3& x) noexcept;
[[nodiscard]] double dot(const Vec3& x, const Vec3& y) noexcept;
[[nodiscard]] double norm2(const Vec3& x) noexcept;
[[nodiscard]] bool is_symmetric(const Mat3& a, double tol = 0.0) noexcept;
// Sylvester's criterion on the symmetric part.
[[nodiscard]] bool is_positive_definite(const Mat3& a) noexcept;

}  // namespace cosinor
