#include "erasure_chi/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace erasure_chi {

namespace {

std::string formatNumber(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double scaled(double x, bool entropic, Units units) {
  return (entropic && units == Units::kBits) ? x / std::numbers::ln2 : x;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string plain(const Report::Field& f, Units units, const char* separator) {
  return std::visit(Overloaded{
                        [](std::monostate) { return std::string("null"); },
                        [](bool b) { return std::string(b ? "true" : "false"); },
                        [](std::int64_t i) { return std::to_string(i); },
                        [&](double d) { return formatNumber(scaled(d, f.entropic, units)); },
                        [](const std::string& s) { return s; },
                        [&](const std::vector<double>& v) {
                          std::string out;
                          for (std::size_t k = 0; k < v.size(); ++k) {
                            if (k) out += separator;
                            out += formatNumber(scaled(v[k], f.entropic, units));
                          }
                          return out;
                        },
                    },
                    f.value);
}

nlohmann::ordered_json jsonNumber(double x) {
  if (!std::isfinite(x)) return nullptr;
  return roundForReport(x);
}

std::string csvQuote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

double roundForReport(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(formatNumber(x).c_str(), nullptr);
}

void Report::write(std::ostream& out, Format format, Units units) const {
  switch (format) {
    case Format::kJson: {
      nlohmann::ordered_json doc = nlohmann::ordered_json::object();
      for (const auto& f : fields_) {
        doc[f.key] = std::visit(Overloaded{
                                    [](std::monostate) -> nlohmann::ordered_json { return nullptr; },
                                    [](bool b) -> nlohmann::ordered_json { return b; },
                                    [](std::int64_t i) -> nlohmann::ordered_json { return i; },
                                    [&](double d) -> nlohmann::ordered_json {
                                      return jsonNumber(scaled(d, f.entropic, units));
                                    },
                                    [](const std::string& s) -> nlohmann::ordered_json { return s; },
                                    [&](const std::vector<double>& v) -> nlohmann::ordered_json {
                                      auto arr = nlohmann::ordered_json::array();
                                      for (double x : v) arr.push_back(jsonNumber(scaled(x, f.entropic, units)));
                                      return arr;
                                    },
                                },
                                f.value);
      }
      out << doc.dump(2) << "\n";
      break;
    }
    case Format::kCsv:
      out << "key,value\n";
      for (const auto& f : fields_) out << csvQuote(f.key) << "," << csvQuote(plain(f, units, ";")) << "\n";
      break;
    case Format::kTable: {
      std::size_t width = 0;
      for (const auto& f : fields_) width = std::max(width, f.key.size());
      for (const auto& f : fields_) {
        std::string value = plain(f, units, ", ");
        if (std::holds_alternative<std::vector<double>>(f.value)) value = "[" + value + "]";
        out << f.key << std::string(width - f.key.size() + 2, ' ') << value << "\n";
      }
      break;
    }
  }
}

std::string Report::str(Format format, Units units) const {
  std::ostringstream os;
  write(os, format, units);
  return os.str();
}

}  // namespace erasure_chi
