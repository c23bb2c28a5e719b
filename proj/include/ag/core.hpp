#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ag {

// Thrown for malformed external input (bad files, bad parameters,
// out-of-order frames). CLI maps this to exit code 1.
class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown when a caller breaks an API precondition. CLI maps this to
// exit code 2.
class contract_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// One marker coordinate in camera space, meters. Right-handed: z points
// out from the camera, y up, x right.
struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }

    friend bool operator==(const Point3&, const Point3&) = default;
};

// Euclidean distance between two observed markers.
// Both points must be finite; "never observed" is a tagged absence
// (std::optional) upstream, never a numeric sentinel here.
double distance(const Point3& a, const Point3& b);

// Euclidean distance between two feature vectors of equal dimension.
double distance(std::span<const double> a, std::span<const double> b);

// Squared distance, used by inner argmin scans.
double squared_distance(std::span<const double> a, std::span<const double> b);

// One frame of anonymous marker observations. Order carries no identity.
struct MarkerFrame {
    std::int64_t t = 0;
    std::vector<Point3> markers;
};

}  // namespace ag
