#ifndef BLASCHKE_IO_HPP
#define BLASCHKE_IO_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "blaschke/sequence_designer.hpp"
#include "blaschke/zero_sequence.hpp"

// File formats: zero-sequence CSV (columns delta,theta, header required)
// and the GrowthSpec JSON object.  All floating-point output is full
// round-trip decimal.

namespace blaschke::io {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_zeros_csv(const ZeroSequence& s, std::ostream& os) {
  os << "delta,theta\n";
  for (const auto& z : s.zeros) os << fmt(z.delta) << ',' << fmt(z.theta) << '\n';
}

inline void write_zeros_csv(const ZeroSequence& s, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  write_zeros_csv(s, os);
}

inline ZeroSequence read_zeros_csv(std::istream& is) {
  ZeroSequence s;
  std::string line;
  if (!std::getline(is, line) || line.rfind("delta,theta", 0) != 0)
    throw std::runtime_error("zero CSV: missing delta,theta header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("zero CSV: malformed row '" + line + "'");
    BoundaryPoint z{std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))};
    if (!valid(z)) throw std::runtime_error("zero CSV: point outside the open disk");
    s.zeros.push_back(z);
  }
  return s;
}

inline ZeroSequence read_zeros_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_zeros_csv(is);
}

// {"kind": "nodes"|"closed_form", "nodes": [[N, sigma], ...],
//  "form": {"name": "pow2_over_alpha"|"poly"|"log_sq", "alpha": a},
//  "beta": b}
inline GrowthSpec growth_spec_from_json(const nlohmann::json& j) {
  GrowthSpec g;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "nodes") {
    g.kind = GrowthKind::nodes;
    for (const auto& node : j.at("nodes"))
      g.nodes.emplace_back(node.at(0).get<int>(), node.at(1).get<double>());
  } else if (kind == "closed_form") {
    g.kind = GrowthKind::closed_form;
    const auto& form = j.at("form");
    const std::string name = form.at("name").get<std::string>();
    if (name == "pow2_over_alpha") {
      g.form = GrowthForm::pow2_over_alpha;
    } else if (name == "poly") {
      g.form = GrowthForm::poly;
    } else if (name == "log_sq") {
      g.form = GrowthForm::log_sq;
      g.n_min = 2;
    } else {
      throw std::runtime_error("GrowthSpec JSON: unknown form '" + name + "'");
    }
    if (form.contains("alpha")) g.alpha = form.at("alpha").get<double>();
    if (form.contains("n_min")) g.n_min = form.at("n_min").get<int>();
  } else {
    throw std::runtime_error("GrowthSpec JSON: unknown kind '" + kind + "'");
  }
  if (j.contains("beta")) g.beta = j.at("beta").get<double>();
  return g;
}

}  // namespace blaschke::io

#endif
