#include "bgkc/output.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#ifndef BGKC_VERSION
#define BGKC_VERSION "dev"
#endif

namespace bgkc {

const char* version() { return BGKC_VERSION; }

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns)
    : out_(path, std::ios::binary) {
  if (!out_) throw std::runtime_error("cannot write " + path.string());
  for (std::size_t n = 0; n < columns.size(); ++n) out_ << (n ? "," : "") << columns[n];
  out_ << '\n';
}

void CsvWriter::separator() {
  if (row_started_) out_ << ',';
  row_started_ = true;
}

CsvWriter& CsvWriter::cell(double x) {
  separator();
  out_ << format_number(x);
  return *this;
}

CsvWriter& CsvWriter::cell(const std::string& s) {
  separator();
  out_ << s;
  return *this;
}

void CsvWriter::end_row() {
  out_ << '\n';
  row_started_ = false;
}

void write_layer_csv(const std::filesystem::path& path, const LayerProfile& layer) {
  CsvWriter csv(path, {"y[stretched length]", "xi[velocity]", "F[1]"});
  const auto& f = layer.field;
  for (int k = 0; k < f.space().nodes(); ++k) {
    for (int j = 0; j < f.velocity().size(); ++j) {
      csv.cell(f.space().node(k)).cell(f.velocity().center(j)).cell(f(k, j)).end_row();
    }
  }
}

void write_kinetic_csv(const std::filesystem::path& path, const KineticField& f) {
  CsvWriter csv(path, {"t[time]", "x[length]", "xi[velocity]", "f[1]"});
  for (int i = 0; i < f.space().size(); ++i) {
    for (int j = 0; j < f.velocity().size(); ++j) {
      csv.cell(f.time()).cell(f.space().center(i)).cell(f.velocity().center(j)).cell(f(i, j)).end_row();
    }
  }
}

void write_fluid_csv(const std::filesystem::path& path, const FluidField& u) {
  CsvWriter csv(path, {"t[time]", "x[length]", "u[velocity]"});
  for (int i = 0; i < u.size(); ++i) csv.cell(u.time()).cell(u.space().center(i)).cell(u[i]).end_row();
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<InterfaceRecord>& trace) {
  CsvWriter csv(path, {"t[time]", "outgoing_flux[velocity^2]", "v[velocity]", "u_trace[velocity]",
                       "V[velocity^2]", "layer_class[-]", "back_flux_mass[velocity]",
                       "back_flux_flux[velocity^2]", "flux_mismatch[velocity^2]", "layer_iterations[count]"});
  for (const auto& r : trace) {
    csv.cell(r.t).cell(r.outgoing_flux).cell(r.v).cell(r.u_trace).cell(r.V);
    csv.cell(r.layer_class ? std::string(to_string(*r.layer_class)) : std::string("none"));
    csv.cell(r.back_flux_mass).cell(r.back_flux_flux).cell(r.flux_mismatch);
    csv.cell(static_cast<double>(r.layer_iterations)).end_row();
  }
}

void write_convergence_csv(const std::filesystem::path& path, const ConvergenceReport& r) {
  CsvWriter csv(path, {"eps[length]", "kinetic_error[length*velocity]", "fluid_error[length*velocity]",
                       "layer_error[length*velocity]", "swept_mass[velocity]", "trace_fluid_error[velocity]",
                       "trace_kinetic_error[velocity]"});
  for (const auto& e : r.rows) {
    csv.cell(e.eps).cell(e.kinetic).cell(e.fluid).cell(e.layer).cell(e.swept).cell(e.trace_fluid);
    csv.cell(e.trace_kinetic).end_row();
  }
}

void write_contraction_csv(const std::filesystem::path& path, const ContractionReport& r) {
  CsvWriter csv(path, {"t[time]", "distance[length*velocity]"});
  for (std::size_t n = 0; n < r.times.size(); ++n) csv.cell(r.times[n]).cell(r.distance[n]).end_row();
}

nlohmann::ordered_json to_json(const LayerProfile& layer) {
  const auto back = back_flux(layer);
  nlohmann::ordered_json j;
  j["units"] = {{"V", "velocity^2"}, {"u_infinity", "velocity"}, {"confinement", "stretched length*velocity"}};
  j["V"] = layer.data.flux;
  j["incoming_flux"] = flux_moment(positive_part(layer.data.incoming));
  j["classification"] = to_string(layer.classification);
  j["u_infinity"] = layer.u_infinity;
  j["back_flux_mass"] = density_moment(back);
  j["back_flux_flux"] = flux_moment(back);
  j["confinement"] = confinement_norm(layer);
  j["far_field_distance"] = l1_distance(layer.field.slice(layer.field.space().cells), layer.far_field);
  const auto& d = layer.diagnostics;
  j["diagnostics"] = {{"iterations", d.iterations},
                      {"last_change", d.last_change},
                      {"flux_residual", d.flux_residual},
                      {"back_flux_residual", d.back_flux_residual},
                      {"monotonicity_violation", d.monotonicity_violation}};
  return j;
}

nlohmann::ordered_json to_json(const ConvergenceReport& r) {
  nlohmann::ordered_json j;
  j["units"] = {{"errors", "length*velocity"}, {"swept", "velocity"}, {"eps", "length"}};
  j["scenario"] = r.scenario;
  j["family"] = to_string(r.family);
  j["limit_layer_class"] = to_string(r.limit_layer_class);
  j["comparison_window"] = r.comparison_window;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& e : r.rows) {
    rows.push_back({{"eps", e.eps},
                    {"kinetic", e.kinetic},
                    {"fluid", e.fluid},
                    {"layer", e.layer},
                    {"swept", e.swept},
                    {"trace_fluid", e.trace_fluid},
                    {"trace_kinetic", e.trace_kinetic}});
  }
  j["rows"] = rows;
  j["decreasing"] = {{"kinetic", r.kinetic_decreasing},
                     {"fluid", r.fluid_decreasing},
                     {"layer", r.layer_decreasing},
                     {"swept", r.swept_decreasing}};
  return j;
}

nlohmann::ordered_json to_json(const ContractionReport& r) {
  nlohmann::ordered_json j;
  j["units"] = {{"distance", "length*velocity"}};
  j["initial_distance"] = r.distance.empty() ? 0.0 : r.distance.front();
  j["final_distance"] = r.distance.empty() ? 0.0 : r.distance.back();
  j["worst_ratio"] = r.worst_ratio;
  j["slack"] = r.slack;
  j["contracts"] = r.contracts;
  return j;
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
  nlohmann::ordered_json j;
  j["scenario"] = m.scenario;
  j["subcommand"] = m.subcommand;
  j["config_hash"] = m.config_hash;
  j["version"] = m.version;
  j["status"] = m.failed ? "FAILED" : "OK";
  if (m.failed) j["message"] = m.message;
  j["grid"] = m.grid;
  j["outputs"] = m.outputs;
  nlohmann::ordered_json timings;
  for (const auto& [name, seconds] : m.timings) timings[name + "_s"] = seconds;
  j["timings"] = timings;
  write_json(path, j);
}

}  // namespace bgkc
