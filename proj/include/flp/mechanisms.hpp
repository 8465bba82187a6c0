#ifndef FLP_MECHANISMS_HPP
#define FLP_MECHANISMS_HPP

#include "flp/core.hpp"

namespace flp {

struct MechanismOutput {
    Point facility;
    std::size_t phantom_count{0};
    std::size_t augmented_size{0};
};

/// Coordinate median: the lower median of each coordinate independently.
/// Weights never enter the placement.
MechanismOutput cm(std::span<const Agent> agents);

/// Generalized coordinate median: cm over the union of the reports with a
/// constant multiset of phantom points.
MechanismOutput gcm(std::span<const Agent> agents, std::span<const Point> phantoms);

/// Coordinate median with prediction: gcm with floor(c*n) phantom copies
/// of the prediction. c = 0 reduces exactly to cm.
MechanismOutput cmp(std::span<const Agent> agents, const Point& prediction, double c);

/// Number of phantom copies cmp adds: floor(c*n), with a 1e-9 guard so
/// products like 0.7*10 that land a few ulps under an integer still floor
/// to it.
std::size_t cmp_phantom_count(std::size_t n, double c);

}  // namespace flp

#endif  // FLP_MECHANISMS_HPP
