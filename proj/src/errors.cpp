#include "soliton/errors.hpp"

#include <sstream>

namespace soliton {

std::string BallEscapeError::describe(Component which, double distance, double radius,
                                      int iteration) {
    std::ostringstream os;
    os << "iterate left the ball D_eps at iteration " << iteration << ": "
       << (which == Component::W ? "sup|w - c0|" : "sup|r^(1-alpha) v + c2|") << " = "
       << distance << " > c0/10 = " << radius;
    return os.str();
}

PositivityLossError::PositivityLossError(double r, double h)
    : SolverError("positivity lost during continuation at r = " + std::to_string(r) +
                  " (h = " + std::to_string(h) + ")"),
      r(r), h(h) {}

QuadratureError::QuadratureError(std::size_t node, double value)
    : SolitonError("non-finite integrand value " + std::to_string(value) + " at node " +
                   std::to_string(node)),
      node(node) {}

}  // namespace soliton
