#include "lvfront/geometry.hpp"

#include <algorithm>

namespace lvfront {

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
    const Point2 d = b - a;
    const double len2 = dot(d, d);
    double t = len2 > 0.0 ? dot(p - a, d) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return distance(p, a + t * d);
}

}  // namespace lvfront
