#pragma once

#include "linerate/types.hpp"

#include <string>
#include <vector>

namespace linerate::opf {

struct Bus {
  int id = 0;  // external number from the case file
  std::string label;
  double base_load_mw = 0.0;
};

struct Line {
  int from_bus = 0;  // index into NetworkCase::buses
  int to_bus = 0;
  double susceptance = 0.0;     // per-unit, 1/x; flow = susceptance * (theta_from - theta_to)
  double base_limit_mw = 0.0;
  std::string label;
};

// Operating cost a*P^2 + b*P + c in $/h with P in MW.
struct CostCurve {
  double quadratic = 0.0;  // $/MWh^2
  double linear = 0.0;     // $/MWh
  double constant = 0.0;   // $/h
  double eval(double p_mw) const {
    return (quadratic * p_mw + linear) * p_mw + constant;
  }
};

struct Generator {
  int bus = 0;  // index into NetworkCase::buses
  double p_min_mw = 0.0;
  double p_max_mw = 0.0;
  CostCurve cost;
  std::string label;
};

struct NetworkCase {
  std::string name;
  double base_mva = 100.0;
  int reference_bus = 0;  // index into buses
  std::vector<Bus> buses;
  std::vector<Line> lines;
  std::vector<Generator> generators;

  int bus_index(int external_id) const;  // -1 if unknown
  double total_base_load_mw() const;
};

// Connectivity, reference bus, generator ranges, positive limits, convex costs.
void validate(const NetworkCase& net);

// Reads a MATPOWER-style case (mpc.baseMVA / mpc.bus / mpc.gen / mpc.branch /
// mpc.gencost matrices). Out-of-service branches are skipped; bus numbering is
// remapped to dense indices. A sidecar `<case>.labels.json` next to the file
// supplies optional bus/line/generator labels.
NetworkCase load_matpower_case(const std::string& path);

}  // namespace linerate::opf
