#include "linerate/thermal.hpp"

#include "linerate/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace linerate::thermal {

ConductorSpec kepco_acsr480() {
  ConductorSpec spec;
  spec.outside_diameter = 30.42e-3;
  spec.ac_resistance = 0.0804e-3;
  spec.emissivity = 0.5;
  spec.absorptivity = 0.5;
  spec.max_surface_temp = 90.0;
  spec.elevation = 0.0;
  return spec;
}

void validate(const ConductorSpec& spec) {
  if (!(spec.outside_diameter > 0))
    throw std::invalid_argument("conductor: outside_diameter must be > 0");
  if (!(spec.ac_resistance > 0))
    throw std::invalid_argument("conductor: ac_resistance must be > 0");
  if (!(spec.emissivity >= 0 && spec.emissivity <= 1))
    throw std::invalid_argument("conductor: emissivity must be in [0, 1]");
  if (!(spec.absorptivity >= 0 && spec.absorptivity <= 1))
    throw std::invalid_argument("conductor: absorptivity must be in [0, 1]");
  if (!(spec.max_surface_temp > -273.15))
    throw std::invalid_argument("conductor: max_surface_temp below absolute zero");
  if (!(spec.elevation >= 0))
    throw std::invalid_argument("conductor: elevation must be >= 0");
}

void validate(const AmbientConditions& amb) {
  if (!(amb.wind_speed >= 0))
    throw std::invalid_argument("ambient: wind_speed must be >= 0");
  if (!(amb.effective_solar >= 0))
    throw std::invalid_argument("ambient: effective_solar must be >= 0");
  if (!(amb.wind_direction_factor > 0 && amb.wind_direction_factor <= 1))
    throw std::invalid_argument("ambient: wind_direction_factor must be in (0, 1]");
  if (!(amb.air_temp >= -90 && amb.air_temp <= 90))
    throw std::invalid_argument("ambient: air_temp outside [-90, 90]");
}

AirProperties air_properties(double film_temp, double elevation) {
  if (!(film_temp >= -40.0 && film_temp <= 200.0))
    throw std::domain_error("air_properties: film temperature " +
                            std::to_string(film_temp) + " outside [-40, 200]");
  if (!(elevation >= 0.0 && elevation <= 10000.0))
    throw std::domain_error("air_properties: elevation outside [0, 10000] m");
  AirProperties p;
  p.thermal_conductivity =
      2.424e-2 + 7.477e-5 * film_temp - 4.407e-9 * film_temp * film_temp;
  p.density = (1.293 - 1.525e-4 * elevation + 6.379e-9 * elevation * elevation) /
              (1.0 + 0.00367 * film_temp);
  p.dynamic_viscosity =
      1.458e-6 * std::pow(film_temp + 273.0, 1.5) / (film_temp + 383.4);
  return p;
}

const char* regime_name(ConvectionRegime regime) {
  switch (regime) {
    case ConvectionRegime::LowWind: return "low-wind";
    case ConvectionRegime::HighWind: return "high-wind";
    case ConvectionRegime::Natural: return "natural";
  }
  return "?";
}

std::pair<double, ConvectionRegime> convection_loss(const ConductorSpec& spec,
                                                    const AmbientConditions& amb) {
  validate(spec);
  validate(amb);
  const double ts = spec.max_surface_temp;
  const double ta = amb.air_temp;
  if (ta > ts)
    throw std::invalid_argument("convection_loss: air temperature exceeds the "
                                "conductor surface temperature");

  const double film = 0.5 * (ts + ta);
  const AirProperties air = air_properties(film, spec.elevation);
  const double dt = ts - ta;
  const double reynolds =
      spec.outside_diameter * air.density * amb.wind_speed / air.dynamic_viscosity;

  const double q_low = amb.wind_direction_factor *
                       (1.01 + 1.35 * std::pow(reynolds, 0.52)) *
                       air.thermal_conductivity * dt;
  const double q_high = amb.wind_direction_factor * 0.754 * std::pow(reynolds, 0.6) *
                        air.thermal_conductivity * dt;
  const double dt_term =
      spec.linear_natural_convection ? dt : std::pow(dt, 1.25);
  const double q_nat = 3.645 * std::sqrt(air.density) *
                       std::pow(spec.outside_diameter, 0.75) * dt_term;

  double best = q_low;
  ConvectionRegime which = ConvectionRegime::LowWind;
  if (q_high > best) {
    best = q_high;
    which = ConvectionRegime::HighWind;
  }
  if (q_nat > best) {
    best = q_nat;
    which = ConvectionRegime::Natural;
  }
  return {best, which};
}

double radiation_loss(const ConductorSpec& spec, double air_temp) {
  validate(spec);
  const double ts = (spec.max_surface_temp + 273.0) / 100.0;
  const double ta = (air_temp + 273.0) / 100.0;
  const double ts2 = ts * ts;
  const double ta2 = ta * ta;
  return 17.8 * spec.outside_diameter * spec.emissivity * (ts2 * ts2 - ta2 * ta2);
}

double solar_gain(const ConductorSpec& spec, const AmbientConditions& amb) {
  // Projected area per unit length equals the outside diameter.
  return spec.absorptivity * amb.effective_solar * spec.outside_diameter;
}

HeatBalance heat_balance(const ConductorSpec& spec, const AmbientConditions& amb) {
  auto [q_c, which] = convection_loss(spec, amb);
  HeatBalance hb;
  hb.q_convection = q_c;
  hb.which_convection = which;
  hb.q_radiation = radiation_loss(spec, amb.air_temp);
  hb.q_solar = solar_gain(spec, amb);
  return hb;
}

double ampacity(const ConductorSpec& spec, const AmbientConditions& amb) {
  const HeatBalance hb = heat_balance(spec, amb);
  const double net = hb.q_convection + hb.q_radiation - hb.q_solar;
  if (net < 0)
    throw NoThermalHeadroom(
        "solar gain " + std::to_string(hb.q_solar) + " W/m exceeds dissipation " +
        std::to_string(hb.q_convection + hb.q_radiation) + " W/m at air temperature " +
        std::to_string(amb.air_temp) + " degC");
  return std::sqrt(net / spec.ac_resistance);
}

SeriesAmpacity ampacity_series(const ConductorSpec& spec,
                               const weather::WeatherSeries& series,
                               const AmbientConditions& base) {
  if (series.points.empty())
    throw std::invalid_argument("ampacity_series: empty weather series");
  SeriesAmpacity out;
  out.amps.resize(static_cast<Eigen::Index>(series.points.size()));
  for (size_t i = 0; i < series.points.size(); ++i) {
    AmbientConditions amb = base;
    amb.air_temp = series.points[i].air_temp;
    if (series.points[i].wind_speed) amb.wind_speed = *series.points[i].wind_speed;
    double value;
    if (amb.air_temp > spec.max_surface_temp) {
      // air hotter than the design surface temperature carries nothing;
      // marked rather than aborting the whole series
      value = std::numeric_limits<double>::quiet_NaN();
      out.no_headroom_hours.push_back(static_cast<int>(i));
    } else {
      try {
        value = ampacity(spec, amb);
      } catch (const NoThermalHeadroom&) {
        value = std::numeric_limits<double>::quiet_NaN();
        out.no_headroom_hours.push_back(static_cast<int>(i));
      }
    }
    out.amps[static_cast<Eigen::Index>(i)] = value;
  }
  return out;
}

}  // namespace linerate::thermal
