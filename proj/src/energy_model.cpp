#include "ehsn/energy_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace ehsn {

namespace {

constexpr double kShapeEps = 1e-12;

void check_shape(const std::vector<CurvePoint>& pts, std::size_t* peak_out) {
    if (pts.size() < 3) {
        throw CurveArityError("charge curve needs at least 3 points, got " +
                              std::to_string(pts.size()));
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        if (!std::isfinite(p.residual_fraction) || !std::isfinite(p.efficiency)) {
            throw DomainError("charge curve point " + std::to_string(i) + " is not finite");
        }
        if (p.residual_fraction < 0.0 || p.residual_fraction > 1.0) {
            throw CurveOrderError("residual fraction " + std::to_string(p.residual_fraction) +
                                  " outside [0,1] at point " + std::to_string(i));
        }
        if (p.efficiency < 0.0 || p.efficiency > 1.0) {
            throw DomainError("efficiency " + std::to_string(p.efficiency) +
                              " outside [0,1] at point " + std::to_string(i));
        }
        if (i > 0 && p.residual_fraction <= pts[i - 1].residual_fraction) {
            throw CurveOrderError("residual fractions must be strictly increasing (point " +
                                  std::to_string(i) + ")");
        }
    }
    // Concavity: second differences of efficiency over the knots.
    for (std::size_t i = 2; i < pts.size(); ++i) {
        double d2 = (pts[i].efficiency - pts[i - 1].efficiency) -
                    (pts[i - 1].efficiency - pts[i - 2].efficiency);
        if (d2 > kShapeEps) {
            throw CurveShapeError("efficiency table not concave at point " + std::to_string(i));
        }
    }
    std::size_t peak = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].efficiency > pts[peak].efficiency) peak = i;
    }
    if (peak == 0 || peak + 1 == pts.size()) {
        throw CurveShapeError("maximum efficiency must lie at an interior point");
    }
    *peak_out = peak;
}

} // namespace

ChargeCurve ChargeCurve::from_points(std::vector<CurvePoint> points) {
    std::size_t peak = 0;
    check_shape(points, &peak);
    return ChargeCurve(std::move(points), peak);
}

ChargeCurve fit_charge_curve(const std::vector<CurvePoint>& samples) {
    return ChargeCurve::from_points(samples);
}

double ChargeCurve::efficiency_at(double residual_fraction) const {
    if (!(residual_fraction >= 0.0 && residual_fraction <= 1.0)) {
        throw DomainError("residual fraction " + std::to_string(residual_fraction) +
                          " outside [0,1]");
    }
    if (residual_fraction <= points_.front().residual_fraction) {
        return points_.front().efficiency;
    }
    if (residual_fraction >= points_.back().residual_fraction) {
        return points_.back().efficiency;
    }
    auto it = std::upper_bound(points_.begin(), points_.end(), residual_fraction,
                               [](double x, const CurvePoint& p) { return x < p.residual_fraction; });
    const CurvePoint& hi = *it;
    const CurvePoint& lo = *(it - 1);
    if (residual_fraction == lo.residual_fraction) return lo.efficiency;
    double t = (residual_fraction - lo.residual_fraction) /
               (hi.residual_fraction - lo.residual_fraction);
    return std::lerp(lo.efficiency, hi.efficiency, t);
}

double efficiency_at(const ChargeCurve& curve, double residual_fraction) {
    return curve.efficiency_at(residual_fraction);
}

ChargeCurve ChargeCurve::parse(std::istream& in, const std::string& origin) {
    std::vector<CurvePoint> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double f, e;
        if (!(ls >> f)) continue; // blank or comment-only line
        if (!(ls >> e)) {
            throw ParseError(origin + ": expected `fraction efficiency` pair", lineno);
        }
        std::string extra;
        if (ls >> extra) {
            throw ParseError(origin + ": trailing token '" + extra + "'", lineno);
        }
        pts.push_back({f, e});
    }
    return from_points(std::move(pts));
}

ChargeCurve ChargeCurve::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open charge curve file: " + path);
    return parse(in, path);
}

const ChargeCurve& ChargeCurve::default_curve() {
    static const ChargeCurve curve = ChargeCurve::from_points({
        {0.00, 0.05},
        {0.15, 0.35},
        {0.30, 0.55},
        {0.50, 0.62},
        {0.70, 0.55},
        {0.85, 0.35},
        {1.00, 0.05},
    });
    return curve;
}

Battery Battery::make(double residual_j, double capacity_j, double dead_threshold_j) {
    if (!(capacity_j > 0.0) || !std::isfinite(capacity_j)) {
        throw DomainError("battery capacity must be positive");
    }
    if (residual_j < 0.0 || residual_j > capacity_j) {
        throw DomainError("battery residual outside [0, capacity]");
    }
    if (dead_threshold_j < 0.0 || dead_threshold_j >= capacity_j) {
        throw DomainError("dead threshold outside [0, capacity)");
    }
    return Battery{residual_j, capacity_j, dead_threshold_j};
}

double power_density_at(double tx_power_w, double distance_m, double directive_gain) {
    if (!(distance_m > 0.0)) {
        throw DomainError("distance must be positive, got " + std::to_string(distance_m));
    }
    if (tx_power_w < 0.0) {
        throw DomainError("transmit power must be non-negative");
    }
    if (directive_gain < 1.0) {
        throw DomainError("directive gain must be >= 1");
    }
    double d_cm = distance_m * 100.0;
    return tx_power_w * directive_gain / (4.0 * std::numbers::pi * d_cm * d_cm);
}

HarvestResult harvest(const Battery& battery, const ChargeCurve& curve,
                      const IncidentField& field, double duration_s, double step_s,
                      double sensitivity_floor_w_cm2) {
    if (duration_s < 0.0) throw DomainError("harvest duration must be non-negative");
    if (field.density_w_cm2 < 0.0) throw DomainError("incident density must be non-negative");
    if (!(field.aperture_cm2 > 0.0)) throw DomainError("aperture must be positive");

    HarvestResult out;
    out.battery = battery;
    if (duration_s == 0.0) return out;
    if (!(step_s > 0.0) || step_s > duration_s) {
        throw DomainError("integration step must satisfy 0 < step <= duration");
    }

    double incident_w = field.density_w_cm2 < sensitivity_floor_w_cm2
                            ? 0.0
                            : field.incident_power_w();
    if (incident_w == 0.0) return out;

    auto full_steps = static_cast<long long>(duration_s / step_s);
    double remainder = duration_s - static_cast<double>(full_steps) * step_s;
    if (remainder < 0.0) remainder = 0.0;

    double residual = battery.residual_j;
    const double capacity = battery.capacity_j;
    auto advance = [&](double dt) {
        double soc = std::clamp(residual / capacity, 0.0, 1.0);
        double delta = incident_w * curve.efficiency_at(soc) * dt;
        double next = residual + delta;
        if (next > capacity) {
            next = capacity;
            out.clamped = true;
        }
        out.harvested_j += next - residual;
        residual = next;
    };
    for (long long i = 0; i < full_steps; ++i) advance(step_s);
    if (remainder > 0.0) advance(remainder);

    out.battery.residual_j = residual;
    return out;
}

Battery consume(const Battery& battery, double amount_j) {
    if (amount_j < 0.0) throw DomainError("consume amount must be non-negative");
    Battery next = battery;
    next.residual_j = std::max(battery.residual_j - amount_j, 0.0);
    return next;
}

} // namespace ehsn
