#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace erasure_chi {

enum class Units { kNats, kBits };
enum class Format { kTable, kJson, kCsv };

/// Flat, ordered key/value report. Entropic fields are stored in nats and
/// converted to the requested units on output; numbers are printed with 12
/// significant digits.
class Report {
 public:
  using Value = std::variant<std::monostate, bool, std::int64_t, double, std::string, std::vector<double>>;

  struct Field {
    std::string key;
    Value value;
    bool entropic = false;
  };

  void add(std::string key, Value value) { fields_.push_back({std::move(key), std::move(value), false}); }
  /// Value in nats, rescaled to bits when requested.
  void addEntropy(std::string key, double nats) { fields_.push_back({std::move(key), nats, true}); }
  void addEntropies(std::string key, std::vector<double> nats) {
    fields_.push_back({std::move(key), std::move(nats), true});
  }

  const std::vector<Field>& fields() const noexcept { return fields_; }

  void write(std::ostream& out, Format format, Units units) const;
  std::string str(Format format, Units units) const;

 private:
  std::vector<Field> fields_;
};

/// Rounds to 12 significant digits.
double roundForReport(double x);

}  // namespace erasure_chi
