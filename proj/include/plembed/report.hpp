#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace plembed {

// Flat key-value result document. Formatting is fixed (17 significant digits
// for doubles), so identical runs emit byte-identical text.
class Report {
 public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, const char* value);
  void add(const std::string& key, double value);
  void add(const std::string& key, int value);
  void add(const std::string& key, std::int64_t value);
  void add(const std::string& key, bool value);
  void warn(const std::string& message);  // emitted as a `warning` line

  const std::vector<std::pair<std::string, std::string>>& lines() const {
    return lines_;
  }
  std::string text() const;  // one "key = value" line per entry

 private:
  std::vector<std::pair<std::string, std::string>> lines_;
};

// 17 significant digits, enough to reproduce any double exactly on read-back.
std::string format_double(double x);

// FNV-1a of a byte string, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

// Angle literals: "pi", "pi/K", "K*pi", or a plain radian count.
double parse_angle(const std::string& text);

}  // namespace plembed
