#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace flatlab {

/// 3-vector used for chart coordinates and embedded positions.
struct V3 {
    double x = 0.0, y = 0.0, z = 0.0;

    V3 operator+(const V3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    V3 operator-(const V3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    V3 operator*(double s) const { return {x * s, y * s, z * s}; }
};

inline double dot(const V3& a, const V3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const V3& a) { return std::sqrt(dot(a, a)); }
inline V3 cross(const V3& a, const V3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline V3 normalized(const V3& a) {
    double n = norm(a);
    if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
    return a * (1.0 / n);
}

/// Angle between two unit vectors, stable near 0 and pi.
double unit_angle(const V3& a, const V3& b);

/// Runs fn(i) for i in [0, n). Worker count <= 1 runs inline; results must
/// not depend on scheduling (callers reduce with order-independent ops).
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

/// FNV-1a 64-bit hash, used to stamp experiment rows with their config.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

/// Shortest-round-trip style formatting: %.17g gives bit-faithful doubles.
std::string format_double(double v);

/// Minimal CSV helpers (fields never contain commas or quotes here).
std::vector<std::string> split_csv_line(const std::string& line);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Fixed-order Gauss-Legendre quadrature of f over [a, b].
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int points = 8);

} // namespace flatlab
