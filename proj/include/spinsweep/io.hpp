#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinsweep/common.hpp"

namespace spinsweep {

using Json = nlohmann::json;

/// Deterministic float formatting shared by every CSV column ("%.12g").
std::string format_double(double v);

/// Minimal RFC-4180-style CSV writer: header row first, quoting only when
/// a field contains a comma, quote or newline.
class CsvWriter {
  public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    void row(const std::vector<std::string>& fields);
    /// Convenience: formats doubles with format_double.
    void row_values(const std::vector<double>& values);

    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::size_t columns_ = 0;
};

/// Per-run JSON sidecar: command, resolved parameters, version, runtime,
/// validity flags raised, and the files the run produced.
struct RunManifest {
    std::string command;
    Json parameters = Json::object();
    std::vector<std::string> validity_flags;
    std::vector<std::string> outputs;
    std::vector<std::string> notes;
    double runtime_seconds = 0.0;

    void add_output(const std::filesystem::path& p) { outputs.push_back(p.filename().string()); }
    void write(const std::filesystem::path& path) const;
};

}  // namespace spinsweep
