#include "cyclic/polygon.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace cyclic::core {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double shoelace_area(const std::vector<double>& theta) {
    double twice = 0.0;
    const std::size_t n = theta.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t j = (k + 1) % n;
        twice += std::cos(theta[k]) * std::sin(theta[j]) -
                 std::cos(theta[j]) * std::sin(theta[k]);
    }
    return 0.5 * std::abs(twice);
}

} // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index) {
    std::uint64_t s = master_seed;
    std::uint64_t a = splitmix64(s);
    s = a ^ (stream_index * 0xD1B54A32D192ED03ULL + 0x8BB84B93962EACC9ULL);
    eng_.seed(splitmix64(s));
}

std::uint64_t RngStream::next_u64() { return eng_(); }

double RngStream::uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

std::uint32_t RngStream::below(std::uint32_t n) {
    return static_cast<std::uint32_t>(uniform() * n);
}

std::vector<double> gaps(const CentralAngles& angles) {
    const int n = angles.n;
    std::vector<double> g(n);
    for (int k = 0; k + 1 < n; ++k)
        g[k] = angles.theta[k + 1] - angles.theta[k];
    g[n - 1] = kTwoPi - angles.theta[n - 1] + angles.theta[0];
    return g;
}

CentralAngles sample_central_angles(int n, RngStream& rng) {
    if (n < 3)
        throw std::invalid_argument("sample_central_angles: n >= 3 required");
    CentralAngles out;
    out.n = n;
    out.theta.resize(n);
    for (;;) {
        for (double& t : out.theta)
            t = rng.uniform() * kTwoPi;
        std::sort(out.theta.begin(), out.theta.end());
        if (std::adjacent_find(out.theta.begin(), out.theta.end()) == out.theta.end())
            return out;
    }
}

PolygonMeasurements measure(const CentralAngles& angles) {
    const int n = angles.n;
    const auto& t = angles.theta;
    if (n < 3 || static_cast<int>(t.size()) != n)
        throw std::invalid_argument("measure: invalid CentralAngles");

    PolygonMeasurements m;
    const std::vector<double> g = gaps(angles);

    m.sides.resize(n);
    m.sides[0] = 2.0 * std::sin(0.5 * g[n - 1]); // s_1 spans the wraparound arc
    for (int k = 1; k < n; ++k)
        m.sides[k] = 2.0 * std::sin(0.5 * g[k - 1]);

    m.angles.resize(n);
    if (n == 4) {
        m.angles[0] = 0.5 * (t[1] - (t[3] - kTwoPi));
        m.angles[1] = 0.5 * (t[2] - t[0]);
        m.angles[2] = 0.5 * (t[3] - t[1]);
        m.angles[3] = 0.5 * ((t[0] + kTwoPi) - t[2]);
    } else {
        for (int k = 0; k < n; ++k)
            m.angles[k] = kPi - 0.5 * (g[(k + n - 1) % n] + g[k]);
    }

    m.perimeter = 0.0;
    for (double s : m.sides)
        m.perimeter += s;
    m.area = shoelace_area(t);

    if (n == 4) {
        auto dist = [&](int i, int j) {
            double dx = std::cos(t[i]) - std::cos(t[j]);
            double dy = std::sin(t[i]) - std::sin(t[j]);
            return std::hypot(dx, dy);
        };
        m.d1 = dist(1, 3);
        m.d2 = dist(0, 2);
        m.omega = 0.5 * (g[0] + g[2]);
        m.omega_min = std::min(m.omega, kPi - m.omega);
        assert(std::abs(m.area - 2.0 * std::sin(m.angles[1]) * std::sin(m.angles[2]) *
                                     std::sin(m.omega)) < 1e-9);
    } else if (n == 3) {
        assert(std::abs(m.area - 2.0 * std::sin(m.angles[0]) * std::sin(m.angles[1]) *
                                     std::sin(m.angles[0] + m.angles[1])) < 1e-9);
    }
    return m;
}

QuadAngles angles_from_sides(double a, double b, double c, double d) {
    if (!(a > 0.0 && b > 0.0 && c > 0.0 && d > 0.0))
        throw std::domain_error("angles_from_sides: sides must be positive");
    const double f1 = -a + b + c + d;
    const double f2 = a - b + c + d;
    const double f3 = a + b - c + d;
    const double f4 = a + b + c - d;
    if (!(f1 > 0.0 && f2 > 0.0 && f3 > 0.0 && f4 > 0.0))
        throw InfeasibleSidesError("angles_from_sides: sides violate the quadrilateral inequalities");
    QuadAngles q;
    q.alpha = 2.0 * std::atan(std::sqrt((f3 * f4) / (f1 * f2)));
    q.beta = 2.0 * std::atan(std::sqrt((f1 * f4) / (f2 * f3)));
    q.omega = 2.0 * std::atan(std::sqrt((f2 * f4) / (f1 * f3)));
    return q;
}

double third_side_triangle(double a, double b, Branch branch) {
    if (!(a > 0.0 && a <= 2.0 && b > 0.0 && b <= 2.0))
        throw std::domain_error("third_side_triangle: sides must lie in (0, 2]");
    const double pa = a * std::sqrt(4.0 - b * b);
    const double pb = b * std::sqrt(4.0 - a * a);
    return branch == Branch::plus ? 0.5 * (pa + pb) : 0.5 * std::abs(pa - pb);
}

} // namespace cyclic::core
