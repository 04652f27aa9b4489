#include "aep/error.hpp"

#include <sstream>

namespace aep {

namespace {

std::string degeneracy_message(const std::vector<double>& point, double gap) {
    std::ostringstream os;
    os << "degenerate spectrum (gap " << gap << ") at parameter point (";
    for (std::size_t i = 0; i < point.size(); ++i) os << (i ? ", " : "") << point[i];
    os << ")";
    return os.str();
}

}  // namespace

DegeneracyEncountered::DegeneracyEncountered(std::vector<double> point, double gap)
    : Error(degeneracy_message(point, gap)), point_(std::move(point)), gap_(gap) {}

}  // namespace aep
