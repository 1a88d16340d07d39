#pragma once

#include "linerate/types.hpp"
#include "linerate/weather.hpp"

#include <utility>
#include <vector>

namespace linerate::thermal {

// Physical and electrical parameters of a conductor. Lengths in meters,
// resistance in ohm/m; mm and ohm/km inputs are converted at ingestion.
struct ConductorSpec {
  double outside_diameter = 30.42e-3;  // m
  double ac_resistance = 0.0804e-3;    // ohm/m at average conductor temperature
  double emissivity = 0.5;
  double absorptivity = 0.5;
  double max_surface_temp = 90.0;  // deg C
  double elevation = 0.0;          // m above sea level
  // Comparison toggle: use a linear (Ts - Ta) factor in the zero-wind
  // convection term instead of the 1.25 exponent.
  bool linear_natural_convection = false;
};

// KEPCO ACSR 480C parameters used for static-rating studies in South Korea.
ConductorSpec kepco_acsr480();

void validate(const ConductorSpec& spec);

struct AmbientConditions {
  double air_temp = 40.0;              // deg C
  double wind_speed = 0.5;             // m/s
  double wind_direction_factor = 1.0;  // in (0, 1]
  double effective_solar = 1000.0;     // W/m^2, irradiance * sin(incidence angle)
};

void validate(const AmbientConditions& amb);

struct AirProperties {
  double thermal_conductivity;  // W/(m K)
  double density;               // kg/m^3
  double dynamic_viscosity;     // kg/(m s)
};

// Air film properties at the given film temperature (deg C) and elevation (m).
// Polynomial fits; valid for film_temp in [-40, 200] and elevation in [0, 10000].
AirProperties air_properties(double film_temp, double elevation);

enum class ConvectionRegime { LowWind, HighWind, Natural };

const char* regime_name(ConvectionRegime regime);

struct HeatBalance {
  double q_convection;  // W/m, max of the three candidate terms
  double q_radiation;   // W/m
  double q_solar;       // W/m
  ConvectionRegime which_convection;
};

// Largest of the low-wind, high-wind, and natural convection loss terms.
std::pair<double, ConvectionRegime> convection_loss(const ConductorSpec& spec,
                                                    const AmbientConditions& amb);

double radiation_loss(const ConductorSpec& spec, double air_temp);

double solar_gain(const ConductorSpec& spec, const AmbientConditions& amb);

HeatBalance heat_balance(const ConductorSpec& spec, const AmbientConditions& amb);

// Steady-state allowable current I = sqrt((q_c + q_r - q_s) / R).
// Throws NoThermalHeadroom when solar gain exceeds total dissipation.
double ampacity(const ConductorSpec& spec, const AmbientConditions& amb);

struct SeriesAmpacity {
  Vector amps;                        // NaN where the hour had no thermal headroom
  std::vector<int> no_headroom_hours; // indices of NaN entries
};

// Element-wise ampacity over a weather series. Per-point wind defaults to
// base.wind_speed when the series has no wind data; solar and direction
// factor come from `base`.
SeriesAmpacity ampacity_series(const ConductorSpec& spec,
                               const weather::WeatherSeries& series,
                               const AmbientConditions& base);

}  // namespace linerate::thermal
