#include <algorithm>
#include <charconv>
#include <cmath>
#include <json.hpp>
#include <string>

#include "kgspec/cli.hpp"

namespace kgspec::cli {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

double to_double(std::string_view text) {
  const std::string s = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw UsageError("not a finite number: '" + s + "'");
  return v;
}

int to_int(std::string_view text) {
  const std::string s = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw UsageError("not an integer: '" + s + "'");
  }
  return v;
}

template <typename T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<double> parse_flux_sweep(std::string_view text) {
  const auto c1 = text.find(':');
  if (c1 == std::string_view::npos) return {to_double(text)};
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw UsageError("flux sweep must be start:stop:step");
  const double start = to_double(text.substr(0, c1));
  const double stop = to_double(text.substr(c1 + 1, c2 - c1 - 1));
  const double step = to_double(text.substr(c2 + 1));
  if (!(step > 0.0)) throw UsageError("flux sweep step must be positive");
  if (stop < start) throw UsageError("flux sweep is empty (stop < start)");
  const double span = (stop - start) / step;
  if (span > 1e7) throw UsageError("flux sweep has too many points");
  const auto count = static_cast<long>(std::floor(span + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

std::vector<int> parse_int_range(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) return {to_int(text)};
  const int lo = to_int(text.substr(0, dots));
  const int hi = to_int(text.substr(dots + 2));
  if (hi < lo) throw UsageError("integer range is empty (hi < lo)");
  if (static_cast<long>(hi) - lo > 100000) throw UsageError("integer range too large");
  std::vector<int> out;
  for (int v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(to_double(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Scenario parse_scenario(std::string_view text) {
  if (text == "free") return Scenario::Free;
  if (text == "coulomb") return Scenario::Coulomb;
  if (text == "ab") return Scenario::ABFlux;
  throw UsageError("unknown scenario '" + std::string(text) + "' (free|coulomb|ab)");
}

void RunConfig::normalize() {
  if (!(m > 0.0) || !std::isfinite(m)) throw UsageError("--m must be positive and finite");
  for (double v : {chi, b, q, detune}) {
    if (!std::isfinite(v)) throw UsageError("parameters must be finite");
  }
  if (fluxes.empty() || ls.empty() || ks.empty() || ns.empty()) {
    throw UsageError("sweep ranges must be non-empty");
  }
  for (double v : fluxes) {
    if (!std::isfinite(v)) throw UsageError("flux values must be finite");
  }
  for (double v : ks) {
    if (!std::isfinite(v)) throw UsageError("k values must be finite");
  }
  for (int n : ns) {
    if (n < 1) throw UsageError("--n values start at 1");
  }
  switch (scenario) {
    case Scenario::Free:
      b = 0.0;
      fluxes = {0.0};
      break;
    case Scenario::Coulomb:
      fluxes = {0.0};
      break;
    case Scenario::ABFlux:
      b = 0.0;
      break;
  }
  if (scenario == Scenario::ABFlux && q == 0.0) {
    throw UsageError("the flux scenario needs a nonzero charge --q");
  }
  sort_unique(fluxes);
  sort_unique(ls);
  sort_unique(ks);
  sort_unique(ns);
}

void apply_json_config(RunConfig& config, const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("config file must hold a JSON object");

  auto real_list = [](const nlohmann::json& v) {
    if (v.is_number()) return std::vector<double>{v.get<double>()};
    if (v.is_string()) return parse_real_list(v.get<std::string>());
    if (v.is_array()) return v.get<std::vector<double>>();
    throw UsageError("expected a number, list or string");
  };
  auto int_range = [](const nlohmann::json& v) {
    if (v.is_number_integer()) return std::vector<int>{v.get<int>()};
    if (v.is_string()) return parse_int_range(v.get<std::string>());
    if (v.is_array()) return v.get<std::vector<int>>();
    throw UsageError("expected an integer, list or range string");
  };

  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "scenario") {
        config.scenario = parse_scenario(value.get<std::string>());
      } else if (key == "m") {
        config.m = value.get<double>();
      } else if (key == "chi") {
        config.chi = value.get<double>();
      } else if (key == "b") {
        config.b = value.get<double>();
      } else if (key == "q") {
        config.q = value.get<double>();
      } else if (key == "flux") {
        config.fluxes = value.is_string() ? parse_flux_sweep(value.get<std::string>())
                                          : real_list(value);
      } else if (key == "l") {
        config.ls = int_range(value);
      } else if (key == "k") {
        config.ks = real_list(value);
      } else if (key == "n") {
        config.ns = int_range(value);
      } else if (key == "format") {
        const auto f = value.get<std::string>();
        if (f != "csv" && f != "json") throw UsageError("format must be csv or json");
        config.format = f == "csv" ? OutputFormat::Csv : OutputFormat::Json;
      } else if (key == "oracle") {
        config.oracle = value.get<bool>();
      } else if (key == "absolute_units") {
        config.absolute_units = value.get<bool>();
      } else if (key == "out") {
        config.out = value.get<std::string>();
      } else if (key == "threads") {
        config.threads = value.get<int>();
      } else {
        throw UsageError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad config value: ") + e.what());
  }
}

}  // namespace kgspec::cli
