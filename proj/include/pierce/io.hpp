#pragma once

// Output formats shared by the command-line tool: CSV with a config comment
// line and a mandatory header row, or one JSON object {config, data, summary}.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pierce/real.hpp"

namespace pierce {

inline constexpr const char* kVersion = "0.1.0";

/// Everything needed to reproduce a run; echoed into every output.
struct RunConfig {
  std::string subcommand;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 42;
  std::string format = "json";
  std::string out;  ///< empty: stdout
  long n_max = 0;
  long count = 0;
  long precision_bits = 128;
  long enum_cap = 1000000;
  long window = 10000;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["subcommand"] = subcommand;
    j["params"] = params;
    j["seed"] = seed;
    j["format"] = format;
    j["n_max"] = n_max;
    j["count"] = count;
    j["precision_bits"] = precision_bits;
    j["enum_cap"] = enum_cap;
    j["window"] = window;
    j["real_digits"] = 17;
    return j;
  }
};

/// Reals are written with 17 significant digits, which round-trips doubles.
inline std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// RFC 4180 quoting: fields with a comma, quote or line break are quoted and
/// inner quotes doubled.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const RunConfig& cfg, const std::vector<std::string>& header) : os_(os) {
    os_ << "# pierce-lab " << kVersion << " config=" << cfg.to_json().dump() << "\r\n";
    row(header);
  }
  void row(const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) os_ << (i ? "," : "") << csv_field(fields[i]);
    os_ << "\r\n";
  }

 private:
  std::ostream& os_;
};

inline void write_json(std::ostream& os, const RunConfig& cfg, const nlohmann::json& data,
                       const nlohmann::json& summary) {
  nlohmann::json j;
  j["config"] = cfg.to_json();
  j["config"]["version"] = kVersion;
  j["data"] = data;
  j["summary"] = summary;
  os << j.dump(2) << "\n";
}

}  // namespace pierce
