#include "bgkc/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>

#include "bgkc/errors.hpp"

namespace bgkc {

namespace {

using json = nlohmann::json;

class Reader {
 public:
  Reader(const json& j, std::string prefix, std::vector<std::string>& problems)
      : j_(j), prefix_(std::move(prefix)), problems_(problems) {}

  template <class T>
  void get(const char* key, T& into) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      into = j_.at(key).get<T>();
    } catch (const json::exception&) {
      problems_.push_back(prefix_ + key + ": expected " + expected<T>() + ", got " + j_.at(key).dump());
    }
  }

  void allow(const char* key) { seen_.insert(key); }

  void reject_unknown() {
    for (const auto& [key, _] : j_.items()) {
      if (!seen_.count(key)) problems_.push_back(prefix_ + key + ": unknown key");
    }
  }

 private:
  template <class T>
  static const char* expected() {
    if constexpr (std::is_same_v<T, bool>) return "a boolean";
    else if constexpr (std::is_same_v<T, int>) return "an integer";
    else if constexpr (std::is_same_v<T, double>) return "a number";
    else if constexpr (std::is_same_v<T, std::string>) return "a string";
    else return "a list of numbers";
  }

  const json& j_;
  std::string prefix_;
  std::vector<std::string>& problems_;
  std::set<std::string> seen_;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

}  // namespace

ScenarioConfig config_from_json(const json& j) {
  std::vector<std::string> problems;
  if (!j.is_object()) throw ValidationError({"top level: expected a JSON object"});

  ScenarioConfig c;
  Reader r(j, "", problems);
  std::string family = to_string(c.family);
  std::string coupling = to_string(c.coupling);
  r.get("scenario", family);
  r.get("name", c.name);
  r.get("u_plus", c.u_plus);
  r.get("eta", c.eta);
  r.get("bump_height", c.bump_height);
  r.get("bump_width", c.bump_width);
  r.get("shift", c.shift);
  r.get("L", c.velocity_half_width);
  r.get("n_xi", c.velocity_cells);
  r.get("x_min", c.x_min);
  r.get("x_max", c.x_max);
  r.get("n_x", c.space_cells);
  r.get("cfl", c.cfl);
  r.get("T", c.horizon);
  r.get("epsilons", c.epsilons);
  r.get("layer_y_max", c.layer_grid.y_max);
  r.get("layer_n_y", c.layer_grid.cells);
  r.get("tol_fix", c.tol_fix);
  r.get("max_iter", c.max_iter);
  r.get("tol_class", c.tol_class);
  r.get("tol_iface", c.tol_iface);
  r.get("cone_tol", c.cone_tol);
  r.get("contraction_slack", c.contraction_slack);
  r.get("stability_perturbation", c.stability_perturbation);
  r.get("coupling", coupling);
  r.get("sub_iterate", c.sub_iterate);
  if (j.contains("layer")) {
    if (!j.at("layer").is_object()) {
      problems.push_back("layer: expected an object");
    } else {
      Reader lr(j.at("layer"), "layer.", problems);
      lr.get("V", c.layer.flux);
      lr.get("incoming", c.layer.incoming);
      lr.get("value", c.layer.value);
      lr.get("extent", c.layer.extent);
      lr.reject_unknown();
    }
  }
  r.allow("layer");
  r.reject_unknown();

  try {
    c.family = family_from_string(family);
  } catch (const std::invalid_argument& e) {
    problems.push_back(std::string("scenario: ") + e.what());
  }
  if (coupling == "limit") {
    c.coupling = CouplingMode::limit;
  } else if (coupling == "naive") {
    c.coupling = CouplingMode::naive;
  } else {
    problems.push_back("coupling: expected \"limit\" or \"naive\", got \"" + coupling + "\"");
  }
  if (c.name == "scenario") c.name = family;

  if (!problems.empty()) throw ValidationError(std::move(problems));
  validate(c);
  return c;
}

void validate(const ScenarioConfig& c) {
  std::vector<std::string> p;
  auto require = [&](bool ok, const std::string& msg) {
    if (!ok) p.push_back(msg);
  };
  const double L = c.velocity_half_width;

  require(L > 0.0, "L: must be positive");
  require(c.velocity_cells >= 2 && c.velocity_cells % 2 == 0, "n_xi: must be even and >= 2");
  require(c.space_cells >= 2, "n_x: must be >= 2");
  require(c.x_min < 0.0 && c.x_max > 0.0, "x_min, x_max: the domain must contain x = 0 in its interior");
  if (c.x_min < 0.0 && c.x_max > 0.0 && c.space_cells >= 2) {
    const double k = -c.x_min * c.space_cells / (c.x_max - c.x_min);
    require(std::abs(k - std::round(k)) <= 1e-9, "n_x: x = 0 must fall on a cell edge");
  }
  require(c.cfl > 0.0 && c.cfl <= 1.0, "cfl: must lie in (0, 1]");
  require(c.horizon > 0.0, "T: must be positive");

  require(c.u_plus > 0.0 && c.u_plus < L, "u_plus: must lie in (0, L) with L = " + fmt(L));
  if (c.family == Family::shock) {
    require(c.eta > 0.0 && c.eta < c.u_plus, "eta: the shock family needs 0 < eta < u_plus");
  }
  if (c.family == Family::relaxation) {
    require(c.bump_height > 0.0 && c.bump_height <= 1.0, "bump_height: must lie in (0, 1]");
    require(c.bump_width >= 0.0 && c.bump_width <= c.u_plus, "bump_width: must lie in [0, u_plus]");
    require(c.u_plus + c.bump_width <= L, "bump_width: u_plus + bump_width must not exceed L");
  }
  require(c.shift > c.x_min && c.shift < c.x_max, "shift: must lie inside the domain");
  require(c.stability_perturbation >= 0.0, "stability_perturbation: must be >= 0");
  {
    double top = c.u_plus + c.stability_perturbation;
    if (c.family == Family::relaxation) top += c.bump_width;
    require(top < L || (c.family == Family::relaxation && top <= L),
            "stability_perturbation: the perturbed u_plus leaves the velocity range");
  }

  require(c.epsilons.size() >= 3, "epsilons: need at least three entries");
  bool positive = true;
  bool decreasing = true;
  for (std::size_t n = 0; n < c.epsilons.size(); ++n) {
    positive = positive && c.epsilons[n] > 0.0;
    if (n > 0) decreasing = decreasing && c.epsilons[n] < c.epsilons[n - 1];
  }
  require(positive, "epsilons: entries must be positive");
  require(decreasing, "epsilons: entries must strictly decrease");

  require(c.layer_grid.y_max > 0.0, "layer_y_max: must be positive");
  require(c.layer_grid.cells >= 1, "layer_n_y: must be >= 1");
  require(c.tol_fix > 0.0, "tol_fix: must be positive");
  require(c.max_iter >= 1, "max_iter: must be >= 1");
  require(c.tol_class > 0.0, "tol_class: must be positive");
  require(c.tol_iface >= 0.0, "tol_iface: must be >= 0 (0 selects 5 (dx + dt))");
  require(c.cone_tol >= 0.0, "cone_tol: must be >= 0");
  require(c.contraction_slack >= 0.0, "contraction_slack: must be >= 0");

  const auto& in = c.layer;
  require(in.flux >= 0.0 && in.flux <= 0.5 * L * L, "layer.V: must lie in [0, L^2/2]");
  if (in.incoming == "maxwellian") {
    require(in.value >= 0.0 && in.value <= L, "layer.value: maxwellian density must lie in [0, L]");
  } else if (in.incoming == "indicator") {
    require(in.value >= 0.0 && in.value <= 1.0, "layer.value: indicator height must lie in [0, 1]");
    require(in.extent >= 0.0 && in.extent <= L, "layer.extent: must lie in [0, L]");
  } else if (in.incoming != "zero") {
    p.push_back("layer.incoming: expected zero, maxwellian or indicator, got \"" + in.incoming + "\"");
  }
  if (p.empty()) {
    const double incoming_flux = flux_moment(layer_data(c).incoming);
    require(in.flux >= incoming_flux - c.tol_class * std::max(in.flux, 1.0),
            "layer.V: below the incoming flux " + fmt(incoming_flux) + " (outside the admissible cone)");
  }

  if (!p.empty()) throw ValidationError(std::move(p));
}

ScenarioConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError({"config: cannot open " + path.string()});
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError({"config: " + path.string() + " is not valid JSON (" + e.what() + ")"});
  }
  return config_from_json(j);
}

nlohmann::ordered_json to_json(const ScenarioConfig& c) {
  nlohmann::ordered_json j;
  j["scenario"] = to_string(c.family);
  j["name"] = c.name;
  j["u_plus"] = c.u_plus;
  j["eta"] = c.eta;
  j["bump_height"] = c.bump_height;
  j["bump_width"] = c.bump_width;
  j["shift"] = c.shift;
  j["L"] = c.velocity_half_width;
  j["n_xi"] = c.velocity_cells;
  j["x_min"] = c.x_min;
  j["x_max"] = c.x_max;
  j["n_x"] = c.space_cells;
  j["cfl"] = c.cfl;
  j["T"] = c.horizon;
  j["epsilons"] = c.epsilons;
  j["layer_y_max"] = c.layer_grid.y_max;
  j["layer_n_y"] = c.layer_grid.cells;
  j["tol_fix"] = c.tol_fix;
  j["max_iter"] = c.max_iter;
  j["tol_class"] = c.tol_class;
  j["tol_iface"] = c.tol_iface;
  j["cone_tol"] = c.cone_tol;
  j["contraction_slack"] = c.contraction_slack;
  j["stability_perturbation"] = c.stability_perturbation;
  j["coupling"] = to_string(c.coupling);
  j["sub_iterate"] = c.sub_iterate;
  j["layer"] = {{"V", c.layer.flux}, {"incoming", c.layer.incoming}, {"value", c.layer.value},
                {"extent", c.layer.extent}};
  return j;
}

std::string config_hash(const ScenarioConfig& c) {
  const std::string text = to_json(c).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace bgkc
