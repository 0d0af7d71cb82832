#include "sskdv/svg.hpp"

#include "sskdv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace sskdv::svg {

namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 500;
constexpr double kMarginL = 70.0, kMarginR = 25.0, kMarginT = 25.0, kMarginB = 55.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Frame {
    double x0, x1, y0, y1; // data ranges
    double px(double x) const {
        return kMarginL + (x - x0) / (x1 - x0) * (kWidth - kMarginL - kMarginR);
    }
    double py(double y) const {
        return kHeight - kMarginB - (y - y0) / (y1 - y0) * (kHeight - kMarginT - kMarginB);
    }
};

void header(std::ostringstream& os) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
       << "\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n"
       << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
}

void axis_line(std::ostringstream& os, double x1, double y1, double x2, double y2) {
    os << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2)
       << "\" y2=\"" << num(y2) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
}

void text(std::ostringstream& os, double x, double y, const std::string& s,
          const char* anchor = "middle") {
    os << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"14\" "
       << "font-family=\"sans-serif\" text-anchor=\"" << anchor << "\">" << s << "</text>\n";
}

std::vector<double> ticks(double lo, double hi, int target) {
    const double span = hi - lo;
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        if (mag * m >= raw) {
            step = mag * m;
            break;
        }
    }
    std::vector<double> out;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-12 * span; t += step)
        out.push_back(std::fabs(t) < 1e-12 * span ? 0.0 : t);
    return out;
}

} // namespace

std::string plot_branch(const bifurcation::Branch& branch) {
    if (branch.points.empty()) throw DomainError("svg: branch is empty");
    std::vector<double> as, invp;
    for (const auto& bp : branch.points) {
        as.push_back(bp.a);
        invp.push_back(1.0 / bp.p);
    }
    Frame fr;
    fr.x0 = 0.0;
    fr.x1 = std::max(*std::max_element(as.begin(), as.end()), 0.05);
    fr.y0 = 0.0;
    fr.y1 = std::max(0.3, *std::max_element(invp.begin(), invp.end()) * 1.1);

    std::ostringstream os;
    header(os);
    axis_line(os, fr.px(fr.x0), fr.py(fr.y0), fr.px(fr.x1), fr.py(fr.y0));
    axis_line(os, fr.px(fr.x0), fr.py(fr.y0), fr.px(fr.x0), fr.py(fr.y1));
    for (double t : ticks(fr.x0, fr.x1, 8)) {
        axis_line(os, fr.px(t), fr.py(fr.y0), fr.px(t), fr.py(fr.y0) + 5.0);
        text(os, fr.px(t), fr.py(fr.y0) + 20.0, num(t));
    }
    for (double t : ticks(fr.y0, fr.y1, 6)) {
        axis_line(os, fr.px(fr.x0) - 5.0, fr.py(t), fr.px(fr.x0), fr.py(t));
        text(os, fr.px(fr.x0) - 10.0, fr.py(t) + 5.0, num(t), "end");
    }
    text(os, fr.px(0.5 * (fr.x0 + fr.x1)), kHeight - 12.0, "a");
    text(os, 20.0, fr.py(0.5 * (fr.y0 + fr.y1)), "1/p", "middle");

    if (as.size() == 1) {
        os << "<circle cx=\"" << num(fr.px(as[0])) << "\" cy=\"" << num(fr.py(invp[0]))
           << "\" r=\"4\" fill=\"black\"/>\n";
    } else {
        os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < as.size(); ++i)
            os << num(fr.px(as[i])) << ',' << num(fr.py(invp[i])) << ' ';
        os << "\"/>\n";
        for (std::size_t i = 0; i < as.size(); ++i)
            os << "<circle cx=\"" << num(fr.px(as[i])) << "\" cy=\"" << num(fr.py(invp[i]))
               << "\" r=\"2.5\" fill=\"black\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string plot_profile(const std::vector<double>& x, const std::vector<double>& u) {
    if (x.size() != u.size() || x.size() < 2)
        throw DomainError("svg: profile needs at least two samples");
    Frame fr;
    fr.x0 = -10.0;
    fr.x1 = 10.0;
    fr.y0 = 0.0;
    double umax = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] >= fr.x0 && x[i] <= fr.x1) umax = std::max(umax, u[i]);
    if (umax == 0.0) throw DomainError("svg: profile has no samples in [-10, 10]");
    fr.y1 = std::max(1.35, 1.1 * umax);

    std::ostringstream os;
    header(os);
    // axes through the origin, as in the reference figures
    axis_line(os, fr.px(fr.x0), fr.py(0.0), fr.px(fr.x1), fr.py(0.0));
    axis_line(os, fr.px(0.0), fr.py(fr.y0), fr.px(0.0), fr.py(fr.y1));
    // reference marks at u = 1 and x = 5
    os << "<line x1=\"" << num(fr.px(fr.x0)) << "\" y1=\"" << num(fr.py(1.0)) << "\" x2=\""
       << num(fr.px(fr.x1)) << "\" y2=\"" << num(fr.py(1.0))
       << "\" stroke=\"#999999\" stroke-width=\"0.7\" stroke-dasharray=\"4 3\"/>\n";
    os << "<line x1=\"" << num(fr.px(5.0)) << "\" y1=\"" << num(fr.py(fr.y0)) << "\" x2=\""
       << num(fr.px(5.0)) << "\" y2=\"" << num(fr.py(fr.y1))
       << "\" stroke=\"#999999\" stroke-width=\"0.7\" stroke-dasharray=\"4 3\"/>\n";
    text(os, fr.px(0.0) - 10.0, fr.py(1.0) + 5.0, "1", "end");
    text(os, fr.px(5.0), fr.py(0.0) + 20.0, "5");
    text(os, fr.px(fr.x1) - 5.0, fr.py(0.0) - 8.0, "x", "end");
    text(os, fr.px(0.0) + 12.0, fr.py(fr.y1) + 14.0, "u", "start");

    os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < fr.x0 || x[i] > fr.x1) continue;
        os << num(fr.px(x[i])) << ',' << num(fr.py(u[i])) << ' ';
    }
    os << "\"/>\n</svg>\n";
    return os.str();
}

} // namespace sskdv::svg
