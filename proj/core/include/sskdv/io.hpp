#pragma once

#include "sskdv/bifurcation.hpp"
#include "sskdv/profile.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace sskdv::io {

/// Profile serialization: a '#'-prefixed JSON header line followed by a CSV
/// table with columns x,u,u_x. Decimal text with 15 significant digits.
void save_profile(const profile::Profile& prof, double energy, std::ostream& os);

struct LoadedProfile {
    double a = 0.0, gamma = 0.0, p = 0.0;
    double eta = 0.0, energy = 0.0, residual_sup = 0.0;
    profile::TailCoefficients tails;
    std::vector<double> x, u, u_x;
};
LoadedProfile load_profile(std::istream& is);

/// Branch serialization: CSV columns a,p,gamma,eta,energy,u0,newton_iters.
void save_branch(const bifurcation::Branch& branch, std::ostream& os);

/// JSON sidecar carrying slope_at_zero and the solver configuration.
std::string branch_sidecar_json(const bifurcation::Branch& branch);

/// 15-significant-digit decimal formatting used by every emitter.
std::string format_number(double v);

} // namespace sskdv::io
