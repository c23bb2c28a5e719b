#include "ag/core.hpp"

namespace ag {

double distance(const Point3& a, const Point3& b) {
    if (!a.finite() || !b.finite())
        throw contract_error("distance: non-finite marker coordinate");
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw contract_error("distance: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double distance(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_distance(a, b));
}

}  // namespace ag
