#include "sskdv/io.hpp"

#include "sskdv/errors.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace sskdv::io {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

void save_profile(const profile::Profile& prof, double energy, std::ostream& os) {
    os << "# {\"a\": " << format_number(prof.a) << ", \"gamma\": " << format_number(prof.gamma)
       << ", \"p\": " << format_number(prof.p) << ", \"eta\": " << format_number(prof.eta)
       << ", \"energy\": " << format_number(energy)
       << ", \"residual_sup\": " << format_number(prof.residual_sup)
       << ", \"c0\": " << format_number(prof.tails.c0)
       << ", \"c1\": " << format_number(prof.tails.c1)
       << ", \"d0\": " << format_number(prof.tails.d0)
       << ", \"d1\": " << format_number(prof.tails.d1) << "}\n";
    os << "x,u,u_x\n";
    for (std::size_t i = 0; i < prof.u.size(); ++i)
        os << format_number(prof.grid.x[i]) << ',' << format_number(prof.u[i]) << ','
           << format_number(prof.u_x[i]) << '\n';
}

namespace {

double json_field(const std::string& header, const std::string& key) {
    const std::string pat = "\"" + key + "\": ";
    const auto pos = header.find(pat);
    if (pos == std::string::npos)
        throw RangeError("io: profile header missing key " + key);
    return std::strtod(header.c_str() + pos + pat.size(), nullptr);
}

} // namespace

LoadedProfile load_profile(std::istream& is) {
    std::string header;
    if (!std::getline(is, header) || header.empty() || header[0] != '#')
        throw RangeError("io: missing profile JSON header line");
    LoadedProfile lp;
    lp.a = json_field(header, "a");
    lp.gamma = json_field(header, "gamma");
    lp.p = json_field(header, "p");
    lp.eta = json_field(header, "eta");
    lp.energy = json_field(header, "energy");
    lp.residual_sup = json_field(header, "residual_sup");
    lp.tails.c0 = json_field(header, "c0");
    lp.tails.c1 = json_field(header, "c1");
    lp.tails.d0 = json_field(header, "d0");
    lp.tails.d1 = json_field(header, "d1");

    std::string line;
    if (!std::getline(is, line) || line != "x,u,u_x")
        throw RangeError("io: expected the column header x,u,u_x");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        double x, u, ux;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &u, &ux) != 3)
            throw RangeError("io: malformed profile row: " + line);
        lp.x.push_back(x);
        lp.u.push_back(u);
        lp.u_x.push_back(ux);
    }
    return lp;
}

void save_branch(const bifurcation::Branch& branch, std::ostream& os) {
    os << "a,p,gamma,eta,energy,u0,newton_iters\n";
    for (const auto& bp : branch.points)
        os << format_number(bp.a) << ',' << format_number(bp.p) << ','
           << format_number(bp.gamma) << ',' << format_number(bp.eta) << ','
           << format_number(bp.energy) << ',' << format_number(bp.u0) << ','
           << bp.newton_iters << '\n';
}

std::string branch_sidecar_json(const bifurcation::Branch& branch) {
    std::ostringstream os;
    os << "{\n  \"slope_at_zero\": " << format_number(branch.slope_at_zero)
       << ",\n  \"complete\": " << (branch.complete ? "true" : "false")
       << ",\n  \"points\": " << branch.points.size() << ",\n  \"config\": {"
       << "\"newton_tol\": " << format_number(branch.config.newton_tol)
       << ", \"max_newton\": " << branch.config.max_newton
       << ", \"grid_n\": " << branch.config.grid_n
       << ", \"right_bound\": " << format_number(branch.config.right_bound)
       << ", \"beta\": " << format_number(branch.config.beta)
       << ", \"xi_left\": " << format_number(branch.config.xi_left) << "}\n}\n";
    return os.str();
}

} // namespace sskdv::io
