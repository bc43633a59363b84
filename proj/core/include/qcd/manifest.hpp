#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qcd {

/// Ordered `key = value` record of every parameter needed to reproduce an
/// output file. Keys keep insertion order; setting an existing key replaces
/// its value in place.
class Manifest {
 public:
  void set(std::string_view key, std::string value);
  void set(std::string_view key, double value);
  void set(std::string_view key, long long value);
  void set(std::string_view key, unsigned long long value);
  void set(std::string_view key, bool value);

  const std::string* find(std::string_view key) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  void write(std::ostream& out) const;
  void write(const std::filesystem::path& path) const;
  static Manifest parse(std::istream& in);

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace qcd
