#include "linerate/network.hpp"

#include "linerate/errors.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace linerate::opf {

int NetworkCase::bus_index(int external_id) const {
  for (size_t i = 0; i < buses.size(); ++i)
    if (buses[i].id == external_id) return static_cast<int>(i);
  return -1;
}

double NetworkCase::total_base_load_mw() const {
  double total = 0;
  for (const auto& b : buses) total += b.base_load_mw;
  return total;
}

void validate(const NetworkCase& net) {
  if (net.buses.empty()) throw std::invalid_argument("case has no buses");
  if (net.base_mva <= 0) throw std::invalid_argument("base MVA must be positive");
  if (net.reference_bus < 0 || net.reference_bus >= static_cast<int>(net.buses.size()))
    throw std::invalid_argument("reference bus index out of range");
  for (const auto& l : net.lines) {
    if (l.from_bus < 0 || l.from_bus >= static_cast<int>(net.buses.size()) ||
        l.to_bus < 0 || l.to_bus >= static_cast<int>(net.buses.size()))
      throw std::invalid_argument("line endpoint out of range: " + l.label);
    if (l.from_bus == l.to_bus)
      throw std::invalid_argument("line connects a bus to itself: " + l.label);
    if (!(l.susceptance > 0))
      throw std::invalid_argument("line susceptance must be positive: " + l.label);
    if (!(l.base_limit_mw > 0))
      throw std::invalid_argument("line base limit must be positive: " + l.label);
  }
  for (const auto& g : net.generators) {
    if (g.bus < 0 || g.bus >= static_cast<int>(net.buses.size()))
      throw std::invalid_argument("generator bus out of range: " + g.label);
    if (!(g.p_min_mw <= g.p_max_mw))
      throw std::invalid_argument("generator P_min exceeds P_max: " + g.label);
    if (g.cost.quadratic < 0)
      throw std::invalid_argument("generator cost curve is not convex: " + g.label);
  }
  for (const auto& b : net.buses)
    if (b.base_load_mw < 0)
      throw std::invalid_argument("negative base load at bus " + std::to_string(b.id));

  // Connected over in-service lines.
  std::vector<int> reached(net.buses.size(), 0);
  std::vector<int> stack = {net.reference_bus};
  reached[net.reference_bus] = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (const auto& l : net.lines) {
      int v = -1;
      if (l.from_bus == u) v = l.to_bus;
      if (l.to_bus == u) v = l.from_bus;
      if (v >= 0 && !reached[v]) {
        reached[v] = 1;
        stack.push_back(v);
      }
    }
  }
  for (size_t i = 0; i < net.buses.size(); ++i)
    if (!reached[i])
      throw std::invalid_argument("network is not connected: bus " +
                                  std::to_string(net.buses[i].id) +
                                  " unreachable from the reference bus");
}

namespace {

// Rows of one `mpc.<name> = [ ... ];` numeric matrix.
std::vector<std::vector<double>> read_matrix(const std::string& text,
                                             const std::string& name,
                                             const std::string& path) {
  const std::string key = "mpc." + name;
  size_t pos = text.find(key);
  while (pos != std::string::npos) {
    // exact table name: "mpc.gen" must not match "mpc.gencost"
    const size_t after = pos + key.size();
    if (after < text.size() && text[after] != ' ' && text[after] != '\t' &&
        text[after] != '=') {
      pos = text.find(key, pos + 1);
      continue;
    }
    size_t eq = text.find('=', pos);
    if (eq != std::string::npos) {
      size_t open = text.find_first_not_of(" \t\r\n", eq + 1);
      if (open != std::string::npos && text[open] == '[') {
        size_t close = text.find("];", open);
        if (close == std::string::npos)
          throw IoError(path + ": unterminated matrix " + key);
        std::vector<std::vector<double>> rows;
        std::istringstream body(text.substr(open + 1, close - open - 1));
        std::string line;
        while (std::getline(body, line)) {
          if (size_t c = line.find('%'); c != std::string::npos) line = line.substr(0, c);
          for (char& ch : line)
            if (ch == ';' || ch == ',' || ch == '\t') ch = ' ';
          std::istringstream cells(line);
          std::vector<double> row;
          double v;
          while (cells >> v) row.push_back(v);
          if (!row.empty()) rows.push_back(std::move(row));
        }
        return rows;
      }
    }
    pos = text.find(key, pos + 1);
  }
  throw IoError(path + ": matrix mpc." + name + " not found");
}

double read_base_mva(const std::string& text, const std::string& path) {
  size_t pos = text.find("mpc.baseMVA");
  if (pos == std::string::npos) throw IoError(path + ": mpc.baseMVA not found");
  size_t eq = text.find('=', pos);
  size_t semi = text.find(';', eq);
  if (eq == std::string::npos || semi == std::string::npos)
    throw IoError(path + ": malformed mpc.baseMVA");
  const std::string cell = text.substr(eq + 1, semi - eq - 1);
  std::istringstream in(cell);
  double v;
  if (!(in >> v)) throw IoError(path + ": malformed mpc.baseMVA");
  return v;
}

void apply_labels_sidecar(NetworkCase& net, const std::string& case_path) {
  std::filesystem::path sidecar(case_path);
  sidecar.replace_extension(".labels.json");
  if (!std::filesystem::exists(sidecar)) return;
  std::ifstream in(sidecar);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(sidecar.string() + ": " + e.what());
  }
  if (j.contains("name")) net.name = j["name"].get<std::string>();
  if (j.contains("bus_labels"))
    for (auto& [key, value] : j["bus_labels"].items()) {
      const int idx = net.bus_index(std::stoi(key));
      if (idx >= 0) net.buses[idx].label = value.get<std::string>();
    }
  if (j.contains("line_labels")) {
    const auto& labels = j["line_labels"];
    for (size_t i = 0; i < net.lines.size() && i < labels.size(); ++i)
      net.lines[i].label = labels[i].get<std::string>();
  }
  if (j.contains("generator_labels")) {
    const auto& labels = j["generator_labels"];
    for (size_t i = 0; i < net.generators.size() && i < labels.size(); ++i)
      net.generators[i].label = labels[i].get<std::string>();
  }
}

}  // namespace

NetworkCase load_matpower_case(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("case file not found: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  NetworkCase net;
  net.name = std::filesystem::path(path).stem().string();
  net.base_mva = read_base_mva(text, path);

  const auto bus_rows = read_matrix(text, "bus", path);
  const auto gen_rows = read_matrix(text, "gen", path);
  const auto branch_rows = read_matrix(text, "branch", path);
  const auto cost_rows = read_matrix(text, "gencost", path);

  std::map<int, int> index_of;
  int reference = -1;
  for (const auto& row : bus_rows) {
    if (row.size() < 13) throw IoError(path + ": bus row with fewer than 13 columns");
    Bus b;
    b.id = static_cast<int>(row[0]);
    b.base_load_mw = row[2];
    if (index_of.count(b.id)) throw IoError(path + ": duplicate bus id " + std::to_string(b.id));
    index_of[b.id] = static_cast<int>(net.buses.size());
    if (static_cast<int>(row[1]) == 3) {
      if (reference >= 0) throw IoError(path + ": more than one reference (type 3) bus");
      reference = index_of[b.id];
    }
    net.buses.push_back(b);
  }
  if (reference < 0) throw IoError(path + ": no reference (type 3) bus");
  net.reference_bus = reference;

  for (const auto& row : branch_rows) {
    if (row.size() < 11) throw IoError(path + ": branch row with fewer than 11 columns");
    if (row[10] == 0) continue;  // out of service
    Line l;
    auto from_it = index_of.find(static_cast<int>(row[0]));
    auto to_it = index_of.find(static_cast<int>(row[1]));
    if (from_it == index_of.end() || to_it == index_of.end())
      throw IoError(path + ": branch references unknown bus");
    l.from_bus = from_it->second;
    l.to_bus = to_it->second;
    const double x = row[3];
    if (!(x > 0)) throw IoError(path + ": branch with non-positive reactance");
    const double tap = row.size() > 8 && row[8] != 0 ? row[8] : 1.0;
    l.susceptance = 1.0 / (x * tap);
    l.base_limit_mw = row[5];  // rateA
    l.label = std::to_string(static_cast<int>(row[0])) + "-" +
              std::to_string(static_cast<int>(row[1]));
    net.lines.push_back(l);
  }

  if (gen_rows.size() != cost_rows.size())
    throw IoError(path + ": gen and gencost row counts differ");
  for (size_t i = 0; i < gen_rows.size(); ++i) {
    const auto& row = gen_rows[i];
    if (row.size() < 10) throw IoError(path + ": gen row with fewer than 10 columns");
    if (row.size() > 7 && row[7] == 0) continue;  // out of service
    Generator g;
    auto bus_it = index_of.find(static_cast<int>(row[0]));
    if (bus_it == index_of.end()) throw IoError(path + ": generator at unknown bus");
    g.bus = bus_it->second;
    g.p_max_mw = row[8];
    g.p_min_mw = row[9];
    const auto& cost = cost_rows[i];
    if (cost.size() < 4 || static_cast<int>(cost[0]) != 2)
      throw IoError(path + ": only polynomial (model 2) gencost rows are supported");
    const int ncoef = static_cast<int>(cost[3]);
    if (static_cast<size_t>(ncoef) + 4 > cost.size())
      throw IoError(path + ": gencost row shorter than its coefficient count");
    if (ncoef == 3) {
      g.cost = CostCurve{cost[4], cost[5], cost[6]};
    } else if (ncoef == 2) {
      g.cost = CostCurve{0.0, cost[4], cost[5]};
    } else if (ncoef == 1) {
      g.cost = CostCurve{0.0, 0.0, cost[4]};
    } else {
      throw IoError(path + ": unsupported gencost polynomial degree");
    }
    g.label = "gen" + std::to_string(net.generators.size() + 1) + "@" +
              std::to_string(static_cast<int>(row[0]));
    net.generators.push_back(g);
  }

  apply_labels_sidecar(net, path);
  validate(net);
  return net;
}

}  // namespace linerate::opf
