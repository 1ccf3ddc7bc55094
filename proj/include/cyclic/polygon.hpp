#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace cyclic::core {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Deterministic stream of uniforms keyed by (master_seed, stream_index).
// Distinct stream indices give independent, reproducible substreams, so
// parallel workers can draw without coordination.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t next_u64();
    double uniform();                 // [0, 1)
    std::uint32_t below(std::uint32_t n); // {0, ..., n-1}

private:
    std::mt19937_64 eng_;
};

// Strictly increasing vertex angles on the unit circle.
struct CentralAngles {
    int n = 0;
    std::vector<double> theta; // 0 <= theta[0] < ... < theta[n-1] < 2*pi
};

// Arc gaps g_k = theta_{k+1} - theta_k with wraparound for the last one.
// Positive, summing to 2*pi.
std::vector<double> gaps(const CentralAngles& angles);

struct PolygonMeasurements {
    std::vector<double> sides;  // s_k = 2 sin((theta_k - theta_{k-1}) / 2)
    std::vector<double> angles; // see measure() for the n = 4 labeling
    double d1 = 0.0;            // |v2 v4|, n = 4 only
    double d2 = 0.0;            // |v1 v3|, n = 4 only
    double omega = 0.0;         // (g1 + g3) / 2, n = 4 only
    double omega_min = 0.0;     // min(omega, pi - omega)
    double perimeter = 0.0;
    double area = 0.0;          // shoelace over (cos theta_k, sin theta_k)
};

// n independent Uniform[0, 2*pi) draws, sorted. Exact ties trigger a full
// resample so the strict ordering invariant never breaks.
CentralAngles sample_central_angles(int n, RngStream& rng);

// All derived geometry. For n = 4 the angle labeling is
// alpha_k = (theta_{k+1} - theta_{k-1}) / 2 (inscribed-angle convention,
// opposite angles supplementary); for other n the angles are the interior
// vertex angles, which sum to (n - 2) * pi.
PolygonMeasurements measure(const CentralAngles& angles);

struct QuadAngles {
    double alpha;
    double beta;
    double omega;
};

// Sides (a, b, c, d) are not realizable as a cyclic quadrilateral.
class InfeasibleSidesError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Tan-half-angle reconstruction for a cyclic quadrilateral with successive
// sides (a, b, c, d). Fed the sides as (s2, s3, s4, s1) it reproduces
// (alpha_2, alpha_3, omega) of measure(). Throws InfeasibleSidesError when
// any quadrilateral-inequality factor is non-positive.
QuadAngles angles_from_sides(double a, double b, double c, double d);

enum class Branch { plus, minus };

// Third side of a cyclic triangle from two sides; each branch occurs with
// probability 1/2 for uniform triangles.
double third_side_triangle(double a, double b, Branch branch);

} // namespace cyclic::core
