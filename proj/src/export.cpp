#include "ptorbit/export.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace ptorbit {

using nlohmann::json;

std::string format_double(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "t,x_re,x_im,p_re,p_im,H_re,H_im\n";
    for (const auto& s : traj.samples) {
        const Complex H = s.p * s.p + eval_V(traj.info.params, s.x);
        out << format_double(s.t) << ',' << format_double(s.x.real()) << ','
            << format_double(s.x.imag()) << ',' << format_double(s.p.real())
            << ',' << format_double(s.p.imag()) << ','
            << format_double(H.real()) << ',' << format_double(H.imag())
            << '\n';
    }
}

Trajectory read_trajectory_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "t,x_re,x_im,p_re,p_im,H_re,H_im") {
        throw std::runtime_error("trajectory CSV: unexpected header");
    }
    Trajectory traj;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double v[7];
        const char* p = line.data();
        const char* end = line.data() + line.size();
        for (int i = 0; i < 7; ++i) {
            const auto [next, ec] = std::from_chars(p, end, v[i]);
            if (ec != std::errc{}) {
                throw std::runtime_error("trajectory CSV: bad number");
            }
            p = next;
            if (i < 6) {
                if (p == end || *p != ',') {
                    throw std::runtime_error("trajectory CSV: bad row");
                }
                ++p;
            }
        }
        traj.samples.push_back({v[0], Complex(v[1], v[2]), Complex(v[3], v[4])});
    }
    return traj;
}

json complex_to_json(Complex z) {
    return json{{"re", z.real()}, {"im", z.imag()}};
}

json orbit_report_to_json(const OrbitReport& report) {
    json j;
    j["classification"] = to_string(report.classification);
    if (report.period) {
        j["period"] = *report.period;
    } else {
        j["period"] = nullptr;
    }
    j["closure_residual"] = report.closure_residual;
    j["x_imag_axis_symmetric"] = report.x_imag_axis_symmetric;
    j["p_real_axis_symmetric"] = report.p_real_axis_symmetric;
    j["x_symmetry_distance"] = report.x_symmetry_distance;
    j["p_symmetry_distance"] = report.p_symmetry_distance;
    return j;
}

json turning_points_to_json(const TurningPointSet& set,
                            const ScarfParams& params, Complex E) {
    json points = json::array();
    for (const auto& tp : set.points) {
        points.push_back(json{{"x", complex_to_json(tp.location)},
                              {"u_root", tp.u_root},
                              {"branch", tp.branch},
                              {"residual",
                               std::abs(E - eval_V(params, tp.location))}});
    }
    return json{{"energy", complex_to_json(E)},
                {"degenerate_root", set.degenerate_root},
                {"points", points}};
}

std::string turning_points_table(const TurningPointSet& set,
                                 const ScarfParams& params, Complex E) {
    std::ostringstream out;
    out << "  re(x)        im(x)        root branch |E-V|\n";
    out.setf(std::ios::fixed);
    out.precision(6);
    for (const auto& tp : set.points) {
        out.width(11);
        out << tp.location.real() << "  ";
        out.width(11);
        out << tp.location.imag() << "  " << tp.u_root << "    ";
        out.width(3);
        out << tp.branch << "    ";
        out.setf(std::ios::scientific, std::ios::floatfield);
        out.precision(2);
        out << std::abs(E - eval_V(params, tp.location)) << "\n";
        out.setf(std::ios::fixed, std::ios::floatfield);
        out.precision(6);
    }
    if (set.degenerate_root) out << "  (degenerate double root)\n";
    return out.str();
}

json energy_window_to_json(const EnergyWindow& window) {
    return json{{"lower", complex_to_json(window.lower)},
                {"upper", complex_to_json(window.upper)},
                {"kind", window.kind == EnergyWindow::Kind::RealInterval
                             ? "RealInterval"
                             : "ComplexConjugatePair"}};
}

json verify_report_to_json(const VerifyReport& report) {
    return json{{"eq8_max", report.eq8_max},
                {"eq9_max", report.eq9_max},
                {"bracket_plus_max", report.bracket_plus_max},
                {"bracket_minus_max", report.bracket_minus_max},
                {"bracket_pm_max", report.bracket_pm_max},
                {"canonical_residual", report.canonical_residual},
                {"product_max", report.product_max},
                {"skipped_samples", report.skipped_samples},
                {"pass", report.pass()}};
}

namespace {

struct Bounds {
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -std::numeric_limits<double>::infinity();
    double ymin = std::numeric_limits<double>::infinity();
    double ymax = -std::numeric_limits<double>::infinity();

    void add(double x, double y) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
};

std::pair<double, double> project(const TrajectorySample& s, PlotKind kind) {
    switch (kind) {
        case PlotKind::Orbit: return {s.x.real(), s.x.imag()};
        case PlotKind::Momentum: return {s.p.real(), s.p.imag()};
        case PlotKind::PhaseSpace: return {s.x.real(), s.p.real()};
    }
    return {0.0, 0.0};
}

const char* axis_labels(PlotKind kind, bool vertical) {
    switch (kind) {
        case PlotKind::Orbit: return vertical ? "Im x" : "Re x";
        case PlotKind::Momentum: return vertical ? "Im p" : "Re p";
        case PlotKind::PhaseSpace: return vertical ? "Re p" : "Re x";
    }
    return "";
}

constexpr const char* kPalette[] = {"#1f6fb4", "#c23b22", "#2f8f2f",
                                    "#8e5ba6", "#b8860b", "#3d8b8b"};

} // namespace

void write_svg(std::ostream& out, const std::vector<Trajectory>& curves,
               PlotKind kind, const std::string& title) {
    Bounds b;
    for (const auto& traj : curves) {
        for (const auto& s : traj.samples) {
            const auto [x, y] = project(s, kind);
            b.add(x, y);
        }
    }
    if (!(b.xmax >= b.xmin)) b = Bounds{0, 1, 0, 1};
    const double mx = 0.05 * std::max(b.xmax - b.xmin, 1e-12);
    const double my = 0.05 * std::max(b.ymax - b.ymin, 1e-12);
    b.xmin -= mx;
    b.xmax += mx;
    b.ymin -= my;
    b.ymax += my;

    const double W = 800.0, H = 600.0;
    auto sx = [&](double x) {
        return W * (x - b.xmin) / (b.xmax - b.xmin);
    };
    auto sy = [&](double y) {
        return H * (b.ymax - y) / (b.ymax - b.ymin); // SVG y grows downward
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 "
        << format_double(W) << " " << format_double(H) << "\">\n";
    // Axes through the origin when visible.
    if (b.xmin < 0.0 && b.xmax > 0.0) {
        out << "  <line x1=\"" << format_double(sx(0)) << "\" y1=\"0\" x2=\""
            << format_double(sx(0)) << "\" y2=\"" << format_double(H)
            << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    }
    if (b.ymin < 0.0 && b.ymax > 0.0) {
        out << "  <line x1=\"0\" y1=\"" << format_double(sy(0)) << "\" x2=\""
            << format_double(W) << "\" y2=\"" << format_double(sy(0))
            << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    }
    std::size_t color = 0;
    for (const auto& traj : curves) {
        out << "  <polyline fill=\"none\" stroke=\""
            << kPalette[color++ % (sizeof(kPalette) / sizeof(kPalette[0]))]
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < traj.samples.size(); ++i) {
            const auto [x, y] = project(traj.samples[i], kind);
            if (i) out << ' ';
            out << format_double(sx(x)) << ',' << format_double(sy(y));
        }
        out << "\"/>\n";
    }
    out << "  <text x=\"10\" y=\"20\" font-size=\"14\" fill=\"#333333\">"
        << title << "</text>\n";
    out << "  <text x=\"" << format_double(W - 60)
        << "\" y=\"" << format_double(H - 10)
        << "\" font-size=\"12\" fill=\"#333333\">" << axis_labels(kind, false)
        << "</text>\n";
    out << "  <text x=\"10\" y=\"40\" font-size=\"12\" fill=\"#333333\">"
        << axis_labels(kind, true) << "</text>\n";
    out << "</svg>\n";
}

} // namespace ptorbit
