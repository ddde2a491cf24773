#ifndef EHSN_ENERGY_MODEL_HPP
#define EHSN_ENERGY_MODEL_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "ehsn/errors.hpp"

namespace ehsn {

// Densities below this floor charge nothing (rectifier dead zone).
// 0.01 nW/cm^2 expressed in W/cm^2.
inline constexpr double kDefaultSensitivityFloorWCm2 = 1e-11;

struct CurvePoint {
    double residual_fraction; // state of charge in [0, 1]
    double efficiency;        // harvesting efficiency in [0, 1]
};

// Harvesting efficiency as a function of the battery's state of charge.
// The table must be concave (second differences of efficiency <= 0) with
// its maximum at an interior knot: charging is poor near empty and near
// full, best somewhere in between. Evaluation is piecewise linear, which
// keeps the interpolant inside the hull of the knots.
class ChargeCurve {
public:
    // Validates and builds a curve; throws CurveArityError (< 3 points),
    // CurveOrderError (fractions not strictly increasing in [0,1]) or
    // CurveShapeError (not concave / no interior maximum).
    static ChargeCurve from_points(std::vector<CurvePoint> points);

    // `residual_fraction efficiency` pairs, one per line, '#' comments.
    static ChargeCurve parse(std::istream& in, const std::string& origin);
    static ChargeCurve load(const std::string& path);

    // Built-in 7-knot table, peak efficiency at state of charge 0.5.
    static const ChargeCurve& default_curve();

    double efficiency_at(double residual_fraction) const;

    const std::vector<CurvePoint>& points() const { return points_; }
    std::size_t peak_index() const { return peak_index_; }

private:
    ChargeCurve(std::vector<CurvePoint> points, std::size_t peak_index)
        : points_(std::move(points)), peak_index_(peak_index) {}

    std::vector<CurvePoint> points_;
    std::size_t peak_index_;
};

// Free-function spelling used throughout the planner and the scheduler.
ChargeCurve fit_charge_curve(const std::vector<CurvePoint>& samples);
double efficiency_at(const ChargeCurve& curve, double residual_fraction);

struct Battery {
    double residual_j = 0.0;
    double capacity_j = 0.0;
    double dead_threshold_j = 0.0;

    bool alive() const { return residual_j >= dead_threshold_j; }
    double residual_fraction() const {
        return capacity_j > 0.0 ? residual_j / capacity_j : 0.0;
    }

    // Checked constructor: 0 <= residual <= capacity, 0 <= threshold < capacity.
    static Battery make(double residual_j, double capacity_j, double dead_threshold_j);
};

struct IncidentField {
    double density_w_cm2 = 0.0;  // incident power density
    double aperture_cm2 = 1.0;   // effective receiver antenna area
    std::string source_id;

    double incident_power_w() const { return density_w_cm2 * aperture_cm2; }
};

// Isotropic free-space spreading: tx_power * gain / (4 pi d_cm^2).
// 0.1 mW at 25 cm with gain 1 gives 12.73 nW/cm^2.
double power_density_at(double tx_power_w, double distance_m, double directive_gain = 1.0);

struct HarvestResult {
    double harvested_j = 0.0;
    Battery battery;
    bool clamped = false; // hit capacity at least once during integration
};

// Fixed-step integration of d(residual)/dt = density * aperture * eff(soc),
// clamped at capacity. The efficiency is re-evaluated each step, so the
// amount harvested depends on the consumption history (the feedback loop).
HarvestResult harvest(const Battery& battery, const ChargeCurve& curve,
                      const IncidentField& field, double duration_s, double step_s,
                      double sensitivity_floor_w_cm2 = kDefaultSensitivityFloorWCm2);

// Drain `amount_j`, floored at zero.
Battery consume(const Battery& battery, double amount_j);

} // namespace ehsn

#endif // EHSN_ENERGY_MODEL_HPP
