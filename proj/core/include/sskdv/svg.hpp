#pragma once

#include "sskdv/bifurcation.hpp"

#include <string>
#include <vector>

namespace sskdv::svg {

/// 1/p against a, with axes and tick marks. Deterministic output.
std::string plot_branch(const bifurcation::Branch& branch);

/// u against x over [-10, 10] with reference gridlines at u = 1 and x = 5.
std::string plot_profile(const std::vector<double>& x, const std::vector<double>& u);

} // namespace sskdv::svg
