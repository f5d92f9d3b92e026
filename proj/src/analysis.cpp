#include "ptorbit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ptorbit {

const char* to_string(OrbitReport::Classification c) {
    switch (c) {
        case OrbitReport::Classification::Closed: return "Closed";
        case OrbitReport::Classification::Open: return "Open";
        case OrbitReport::Classification::Undetermined: return "Undetermined";
    }
    return "?";
}

namespace {

double sample_gap(const Trajectory& traj) {
    return (traj.samples.back().t - traj.samples.front().t) /
           double(traj.samples.size() - 1);
}

// State-norm recurrence distance at integer shift m, capped at `cap` for
// early exit away from the dips.
double recurrence_at_shift(const Trajectory& traj, std::size_t m, double cap) {
    const auto& s = traj.samples;
    double worst = 0.0;
    for (std::size_t k = 0; k + m < s.size(); ++k) {
        const double d =
            std::abs(s[k + m].x - s[k].x) + std::abs(s[k + m].p - s[k].p);
        if (d > worst) {
            worst = d;
            if (worst >= cap) return cap;
        }
    }
    return worst;
}

// Same distance at a continuous shift, with linear interpolation between
// samples.
double recurrence_at(const Trajectory& traj, double T) {
    const auto& s = traj.samples;
    const double dt = sample_gap(traj);
    const double t0 = s.front().t;
    double worst = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double target = s[k].t + T;
        const double pos = (target - t0) / dt;
        const auto j = static_cast<std::size_t>(pos);
        if (pos < 0.0 || j + 1 >= s.size()) break;
        const double w = pos - double(j);
        const Complex x = (1.0 - w) * s[j].x + w * s[j + 1].x;
        const Complex p = (1.0 - w) * s[j].p + w * s[j + 1].p;
        worst = std::max(worst, std::abs(x - s[k].x) + std::abs(p - s[k].p));
    }
    return worst;
}

bool numerically_constant(const Trajectory& traj, double tol) {
    const auto& s = traj.samples;
    for (const auto& sample : s) {
        if (std::abs(sample.x - s[0].x) + std::abs(sample.p - s[0].p) >= tol) {
            return false;
        }
    }
    return true;
}

struct Point2 {
    double x, y;
};

double dist_point_segment(Point2 q, Point2 a, Point2 b) {
    const double vx = b.x - a.x, vy = b.y - a.y;
    const double wx = q.x - a.x, wy = q.y - a.y;
    const double vv = vx * vx + vy * vy;
    double t = vv > 0.0 ? (wx * vx + wy * vy) / vv : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double dx = q.x - (a.x + t * vx);
    const double dy = q.y - (a.y + t * vy);
    return std::hypot(dx, dy);
}

double dist_point_polyline(Point2 q, const std::vector<Point2>& poly) {
    double best = std::numeric_limits<double>::infinity();
    if (poly.size() == 1) return std::hypot(q.x - poly[0].x, q.y - poly[0].y);
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
        best = std::min(best, dist_point_segment(q, poly[i], poly[i + 1]));
    }
    return best;
}

// One-sided polyline distance, probing every `stride`-th vertex of a.
double directed_polyline_distance(const std::vector<Point2>& a,
                                  const std::vector<Point2>& b,
                                  std::size_t stride) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); i += stride) {
        worst = std::max(worst, dist_point_polyline(a[i], b));
    }
    return worst;
}

double hausdorff_distance(const std::vector<Point2>& a,
                          const std::vector<Point2>& b) {
    const std::size_t stride_a = std::max<std::size_t>(1, a.size() / 1500);
    const std::size_t stride_b = std::max<std::size_t>(1, b.size() / 1500);
    return std::max(directed_polyline_distance(a, b, stride_a),
                    directed_polyline_distance(b, a, stride_b));
}

std::vector<Point2> x_curve(const Trajectory& traj) {
    std::vector<Point2> out;
    out.reserve(traj.samples.size());
    for (const auto& s : traj.samples) {
        out.push_back({s.x.real(), s.x.imag()});
    }
    return out;
}

} // namespace

std::optional<double> detect_period(const Trajectory& traj, double tol) {
    const auto& s = traj.samples;
    if (s.size() < 8) {
        throw std::invalid_argument(
            "detect_period: trajectory too short to scan for recurrences");
    }
    const double dt = sample_gap(traj);
    if (numerically_constant(traj, tol)) {
        return dt; // degenerate; classify_orbit reports Undetermined
    }

    // The coarse dip can sit well above tol when the true period falls
    // between grid shifts and the state moves fast; zoom on every dip
    // below the cap and let the refined distance decide.
    const double cap = std::max(50.0 * tol, 1e-6);
    const std::size_t max_shift = s.size() / 2;
    double prev = recurrence_at_shift(traj, 1, cap);
    double here = recurrence_at_shift(traj, 2, cap);
    for (std::size_t m = 2; m + 1 <= max_shift; ++m) {
        const double next = recurrence_at_shift(traj, m + 1, cap);
        if (here < cap && here <= prev && here <= next) {
            // Local recurrence minimum below tolerance: zoom in.
            double lo = double(m - 1) * dt;
            double hi = double(m + 1) * dt;
            double best_T = double(m) * dt;
            double best_D = here;
            for (int level = 0; level < 3; ++level) {
                const int n_scan = 64;
                for (int i = 0; i <= n_scan; ++i) {
                    const double T = lo + (hi - lo) * double(i) / n_scan;
                    if (T <= 0.0) continue;
                    const double d = recurrence_at(traj, T);
                    if (d < best_D) {
                        best_D = d;
                        best_T = T;
                    }
                }
                const double width = (hi - lo) / n_scan;
                lo = best_T - width;
                hi = best_T + width;
            }
            if (best_D < tol) return best_T;
            // Not a genuine recurrence; keep scanning later shifts.
        }
        prev = here;
        here = next;
    }
    return std::nullopt;
}

OrbitReport classify_orbit(const Trajectory& traj, double tol) {
    OrbitReport report;
    if (traj.samples.size() < 8) {
        throw std::invalid_argument("classify_orbit: trajectory too short");
    }

    if (numerically_constant(traj, tol)) {
        report.classification = OrbitReport::Classification::Undetermined;
        report.closure_residual = recurrence_at_shift(
            traj, traj.samples.size() - 1, std::numeric_limits<double>::max());
    } else if (auto period = detect_period(traj, tol)) {
        report.classification = OrbitReport::Classification::Closed;
        report.period = period;
        report.closure_residual = recurrence_at(traj, *period);
    } else {
        report.classification = OrbitReport::Classification::Open;
        // Best recurrence found, for the record.
        double best = std::numeric_limits<double>::max();
        for (std::size_t m = 1; m <= traj.samples.size() / 2; ++m) {
            best = std::min(best, recurrence_at_shift(traj, m, best));
        }
        report.closure_residual = best;
    }

    // Set-level symmetry of the sampled curves.
    std::vector<Point2> x_set, x_reflected, p_set, p_conj;
    x_set.reserve(traj.samples.size());
    for (const auto& s : traj.samples) {
        x_set.push_back({s.x.real(), s.x.imag()});
        x_reflected.push_back({-s.x.real(), s.x.imag()}); // z -> -conj(z)
        p_set.push_back({s.p.real(), s.p.imag()});
        p_conj.push_back({s.p.real(), -s.p.imag()});
    }
    report.x_symmetry_distance = hausdorff_distance(x_set, x_reflected);
    report.p_symmetry_distance = hausdorff_distance(p_set, p_conj);
    report.x_imag_axis_symmetric = report.x_symmetry_distance < tol;
    report.p_real_axis_symmetric = report.p_symmetry_distance < tol;
    return report;
}

double min_orbit_separation(const Trajectory& a, const Trajectory& b) {
    const std::vector<Point2> pa = x_curve(a);
    const std::vector<Point2> pb = x_curve(b);
    if (pa.empty() || pb.empty()) {
        throw std::invalid_argument("min_orbit_separation: empty trajectory");
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : pa) best = std::min(best, dist_point_polyline(q, pb));
    for (const auto& q : pb) best = std::min(best, dist_point_polyline(q, pa));
    return best;
}

PairingReport turning_point_pairing(const TurningPointSet& tps, PTPhase phase,
                                    double tol) {
    (void)phase;
    const auto& pts = tps.points;
    PairingReport report;
    report.total_points = pts.size();
    if (pts.empty()) return report;

    std::vector<bool> used(pts.size(), false);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (used[i]) continue;
        const Complex want = -std::conj(pts[i].location);
        // A point on the imaginary axis is its own PT partner.
        if (std::abs(pts[i].location - want) < tol) {
            used[i] = true;
            report.pt_paired_points += 1;
            report.pt_pairs.emplace_back(i, i);
            continue;
        }
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(pts[j].location - want) < tol) {
                used[i] = used[j] = true;
                report.pt_paired_points += 2;
                report.pt_pairs.emplace_back(i, j);
                break;
            }
        }
    }
    report.pt_fraction =
        double(report.pt_paired_points) / double(report.total_points);
    report.fully_pt_paired = report.pt_paired_points == report.total_points;

    // Real parts pair in sign flips even when the PT pairing fails.
    std::vector<bool> re_used(pts.size(), false);
    std::size_t re_paired = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (re_used[i]) continue;
        const double re = pts[i].location.real();
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (re_used[j]) continue;
            if (std::abs(pts[j].location.real() + re) <
                1e-9 * (1.0 + std::abs(re))) {
                re_used[i] = re_used[j] = true;
                re_paired += 2;
                break;
            }
        }
    }
    report.re_paired_fraction = double(re_paired) / double(pts.size());

    // Quadruple signature of the four points nearest the real axis.
    if (pts.size() >= 4) {
        std::vector<Complex> nearest;
        nearest.reserve(pts.size());
        for (const auto& tp : pts) nearest.push_back(tp.location);
        std::sort(nearest.begin(), nearest.end(), [](Complex a, Complex b) {
            return std::abs(a.imag()) < std::abs(b.imag());
        });
        nearest.resize(4);
        std::vector<bool> q_used(4, false);
        std::size_t pairs = 0;
        for (std::size_t i = 0; i < 4; ++i) {
            if (q_used[i]) continue;
            for (std::size_t j = i + 1; j < 4; ++j) {
                if (q_used[j]) continue;
                const bool re_flip =
                    std::abs(nearest[j].real() + nearest[i].real()) <
                    1e-6 * (1.0 + std::abs(nearest[i].real()));
                const bool im_differs =
                    std::abs(nearest[j].imag() - nearest[i].imag()) > 1e-6;
                if (re_flip && im_differs) {
                    q_used[i] = q_used[j] = true;
                    ++pairs;
                    break;
                }
            }
        }
        report.broken_quadruple = pairs == 2 && !report.fully_pt_paired;
    }
    return report;
}

} // namespace ptorbit
