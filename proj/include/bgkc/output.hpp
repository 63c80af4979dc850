#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bgkc/coupling.hpp"
#include "bgkc/experiments.hpp"
#include "bgkc/milne_layer.hpp"

namespace bgkc {

const char* version();

/// Shortest round-trip representation.
std::string format_number(double x);

/// Comma-separated rows with a header line of "name[unit]" columns, LF endings.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns);

  CsvWriter& cell(double x);
  CsvWriter& cell(const std::string& s);
  void end_row();

 private:
  void separator();

  std::ofstream out_;
  bool row_started_ = false;
};

void write_layer_csv(const std::filesystem::path& path, const LayerProfile& layer);
void write_kinetic_csv(const std::filesystem::path& path, const KineticField& f);
void write_fluid_csv(const std::filesystem::path& path, const FluidField& u);
void write_trace_csv(const std::filesystem::path& path, const std::vector<InterfaceRecord>& trace);
void write_convergence_csv(const std::filesystem::path& path, const ConvergenceReport& r);
void write_contraction_csv(const std::filesystem::path& path, const ContractionReport& r);

nlohmann::ordered_json to_json(const LayerProfile& layer);
nlohmann::ordered_json to_json(const ConvergenceReport& r);
nlohmann::ordered_json to_json(const ContractionReport& r);

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j);

struct RunManifest {
  std::string scenario;
  std::string subcommand;
  std::string config_hash;
  std::string version;
  nlohmann::ordered_json grid;
  std::vector<std::string> outputs;
  std::vector<std::pair<std::string, double>> timings;  // seconds
  bool failed = false;
  std::string message;
};

void write_manifest(const std::filesystem::path& path, const RunManifest& m);

}  // namespace bgkc
